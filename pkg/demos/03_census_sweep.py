"""A small census sweep.

Every valid parameter octuple (m, n, d; alpha, beta, gamma, delta, epsilon)
determines a covering of the quaternion hypermap with an abelian bicyclic
covering group of order m*n*d.  For each octuple the package constructs the
group by coset enumeration, verifies the predicted order, type and genus,
and computes branching and symmetry data.
"""

from collections import Counter

from quatcover.census import enumerate_census

records = enumerate_census(8)
print("valid octuples with m*n*d <= 8:", len(records))
print("all records consistent:", all(r.consistent for r in records))

print("\ngroup orders:", dict(sorted(Counter(r.group_order for r in records).items())))
print("genera:      ", dict(sorted(Counter(r.genus for r in records).items())))

counts = Counter()
for r in records:
    s = r.symmetry
    counts["reflexible"] += s.reflexible
    counts["symmetric"] += s.symmetric
    counts["self-Petrie"] += s.self_petrie
    counts["triply self-dual"] += s.triply_self_dual
    counts["completely self-dual"] += s.completely_self_dual
print("\nsymmetry flag counts:")
for name, k in counts.items():
    print(f"    {name:20s} {k:4d} / {len(records)}")

print("\na few sample records:")
for r in records[:3] + records[-2:]:
    o = r.octuple
    print(f"    {o.key()}  order {r.group_order:3d}  type {r.type}"
          f"  genus {r.genus:3d}  K {list(r.k_invariant_factors)}")
