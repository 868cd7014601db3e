"""Smooth coverings of the quaternion hypermap.

A covering is smooth when it branches nowhere: the orders of x, y and xy are
the same upstairs and downstairs.  Up to isomorphism there are exactly five
smooth coverings with m*n*d <= 4: the trivial one, three of genus 3 on
groups of order 16, and one of genus 5 on a group of order 32.

Note the order-32 cover: its Walsh bipartite graph is the twin-doubled
8-cycle C8[2K1] (every vertex of an 8-cycle blown up into two twins), which
is sometimes mistaken for the 4-dimensional hypercube.  The two graphs are
both 4-regular and bipartite on 8+8 vertices, but they differ already in
their closed 4-walk counts, and the doubled cycle has twin vertices while
the hypercube has none.
"""

from quatcover.census import build_covering, smooth_covers
from quatcover.hypermap import (
    hypercube_matrix,
    multiplicity_matrices_isomorphic,
    walsh_fingerprint,
)

records = smooth_covers(4)
print("smooth coverings with m*n*d <= 4:")
for r in records:
    o = r.octuple
    print(f"    {o.key()}  order {r.group_order:2d}  genus {r.genus}"
          f"  Walsh graph {r.fingerprint}")

big = next(r for r in records if r.group_order == 32)
walsh = walsh_fingerprint(build_covering(big.octuple).hypermap)


def closed_4_walks(matrix):
    # trace of (A A^T)^2 where A is the black-by-white multiplicity matrix
    nb = len(matrix)
    aat = [[sum(matrix[i][k] * matrix[j][k] for k in range(len(matrix[0])))
            for j in range(nb)] for i in range(nb)]
    return sum(sum(aat[i][j] * aat[j][i] for j in range(nb)) for i in range(nb))


print("\nclosed 4-walk count of the order-32 cover's Walsh graph:",
      closed_4_walks(walsh))
print("closed 4-walk count of the 4-dimensional hypercube:       ",
      closed_4_walks(hypercube_matrix(4)))
print("isomorphic to the hypercube:",
      multiplicity_matrices_isomorphic(walsh, hypercube_matrix(4)))
