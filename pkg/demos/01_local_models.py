"""
Local models y^2 = x^m
======================

Near a branch point, a node and a cusp the curve looks like ``y^2 = x^m``
with ``m = 1, 2, 3``.  Tracking the two roots once around the origin gives
``s1^m``; the Van Kampen relation of ``H^m`` is ``A = B``, ``[A, B] = 1``
or ``ABA = BAB``, and the resulting groups are Z, Z^2 and B_3.
"""

from vklab.braid import BraidWord, braids_equal
from vklab.monodromy import local_model
from vklab.presentation import abelianization, tietze_simplify, todd_coxeter
from vklab.tracker import LoopSpec, PlaneCurve, critical_x, track_braid
from vklab.vankampen import affine_presentation

for m in range(1, 6):
    curve = PlaneCurve.parse(f"y^2 - x^{m}")
    crit = critical_x(curve)
    word = track_braid(curve, LoopSpec.circle(0, 1))
    assert braids_equal(word, BraidWord(2, (1,) * m))
    fac = local_model(m)
    full = affine_presentation(fac)
    simp = tietze_simplify(full)
    print(f"m={m}  discriminant multiplicity {crit.multiplicities[0]}  braid {word}")
    if m <= 3:
        # shortcut relators exist only for branch points, nodes and cusps
        print(f"     shortcut relator {affine_presentation(fac, 'shortcut').relators[0]}")
    rels = ", ".join(str(r) for r in simp.relators) or "none"
    print(f"     simplified: {simp.generators} generators, relators {rels}")
    print(f"     abelianization {abelianization(full)}")

# The cusp group is B_3; killing the squares of its generators leaves S_3.
cusp = affine_presentation(local_model(3))
squares = cusp.with_relators([cusp.generator(1) ** 2, cusp.generator(2) ** 2])
print()
print("B_3 / <A^2, B^2> has", todd_coxeter(squares).index, "elements")
print("B_3 itself:", todd_coxeter(cusp, max_cosets=10_000).status)
