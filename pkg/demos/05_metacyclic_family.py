"""Metacyclic groups from two intertwined cyclic subgroups.

For a prime p and exponents 0 <= d <= c <= a+d <= b+d the presentation

    u^(p^(a+c)) = v^(p^(b+c)) = 1,  u^(p^a) = v^(p^b),
    u^v = u^(1+p^(a+d)),  v^u = v^(1-p^(b+d))

defines a group of order p^(a+b+c) with cyclic derived subgroup of order
p^(c-d) and abelianization Z_(p^a) x Z_(p^(b+d)).  The package verifies all
three claims for each parameter chain.

Distinct chains do not always give distinct groups: the invariant vector
(order, derived order, abelianization, element-order census) collides for
some pairs, and each collision turns out to be a genuine isomorphism.
"""

import itertools

from quatcover.census import (
    MetacyclicParams,
    metacyclic_group,
    metacyclic_presentation,
    quaternion_presentation,
)
from quatcover.fpgroup import isomorphic_by_generator_search

reports = {}
for p in (2, 3):
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if d <= c <= a + d <= b + d:
            reports[(p, a, b, c, d)] = metacyclic_group(MetacyclicParams(p, a, b, c, d))
print("verified parameter chains:", len(reports))

q8 = reports[(2, 1, 1, 1, 0)]
print("(p,a,b,c,d) = (2,1,1,1,0) is the quaternion group:",
      isomorphic_by_generator_search(quaternion_presentation(), 8, q8.group))

by_vector = {}
for key, rep in reports.items():
    by_vector.setdefault(rep.invariant_vector(), []).append(key)
collisions = [keys for keys in by_vector.values() if len(keys) > 1]
print("invariant-vector collisions:", len(collisions))
for keys in collisions[:4]:
    first = reports[keys[0]]
    partners = []
    for other in keys[1:]:
        iso = isomorphic_by_generator_search(
            metacyclic_presentation(MetacyclicParams(*keys[0])),
            first.order, reports[other].group)
        partners.append((other, iso))
    print(f"    {keys[0]} (order {first.order}):")
    for other, iso in partners:
        print(f"        isomorphic to {other}: {iso}")
