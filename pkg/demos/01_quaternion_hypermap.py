"""The base object of the whole package: the quaternion hypermap.

The quaternion group of order 8 carries a regular hypermap of type (4, 4, 4)
and genus 2.  It is totally symmetric: every operation in the catalog
(transposition, the Petrie twists, the mirror, the order-6 rotation and the
order-3 triality) fixes its isomorphism class.
"""

from quatcover import operations as ops
from quatcover.census import quaternion_presentation
from quatcover.fpgroup import format_word
from quatcover.hypermap import fingerprint_name, hypermap_from_presentation, walsh_fingerprint

pres = quaternion_presentation()
print("presentation relators:")
for r in pres.relators:
    print("   ", format_word(r))

h = hypermap_from_presentation(pres)
print("group order:", h.order)
print("type:       ", h.type_of())
print("genus:      ", h.genus_of())
print("Walsh graph:", fingerprint_name(walsh_fingerprint(h)))

print("\ninvariance under the operation catalog:")
for name, s in {**ops.builtin_operations(), **ops.extra_operations()}.items():
    print(f"    {name:10s} fixes the class: {ops.is_invariant(h, s)}")
