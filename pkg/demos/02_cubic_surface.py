"""
Braid monodromy of a cubic surface's branch curve
==================================================

A generic projection of a smooth cubic surface to the plane has a branch
curve of degree 6 with 6 cusps, and it is of torus type: ``f^3 + g^2 = 0``
with ``f`` a conic and ``g`` a cubic.  We pick small rational ``f`` and
``g``, track the fiber over a lasso around each critical value and
assemble the factorization, then feed it through Van Kampen and the
Galois-cover pipeline.

Run with ``--write`` to refresh the bundled data files.
"""

import cmath
import sys
from pathlib import Path

import sympy as sp

from vklab.braid import Permutation
from vklab.galois import SheetAssignment, format_sheets, galois_group
from vklab.monodromy import Factorization, SingularFactor, format_bmf, validate
from vklab.presentation import abelianization, tietze_simplify, verify_hom
from vklab.tracker import PlaneCurve, critical_x, track_lasso
from vklab.vankampen import affine_presentation, format_gp, projective_presentation

DATA = Path(__file__).resolve().parents[1] / "src" / "vklab" / "data"

x, y = sp.symbols("x y")
f = y**2 + x**2 - 1 + sp.Rational(1, 3) * x * y + sp.Rational(1, 5) * y
g = (y**3 + x**3 + sp.Rational(1, 2) * x * y**2 - sp.Rational(2, 3) * x**2 * y
     + sp.Rational(1, 4) * y - sp.Rational(1, 7) * x + sp.Rational(1, 3))
curve = PlaneCurve(sp.Poly(sp.expand(f**3 + g**2), x, y, domain="QQ"))

# The discriminant has degree 30 = 3*6 + 12: six cusps (f = g = 0, each
# a triple root) and twelve simple branch points.
crit = critical_x(curve)
print("critical values:", len(crit), "certified:", crit.certified)
print("multiplicities:", sorted(crit.multiplicities))

# Base point well below the critical values.  Straight segments from it are
# pairwise disjoint, so the lassos ordered by angle form a good geometric
# base; going right to left (increasing angle) makes the product the full
# twist.
base = -0.25 - 4j
points = sorted(crit.points, key=lambda z: cmath.phase(z - base))


def lasso_factor(z):
    gap = min(abs(z - w) for w in crit.points if w != z)
    approach, ring = track_lasso(curve, base, z, 0.3 * gap, max_step=1 / 200)
    return SingularFactor.from_lasso(approach, ring)


factors = tuple(lasso_factor(z) for z in points)
fac = Factorization(6, factors, "cubic surface branch curve")
print()
print("\n".join(validate(fac).lines()))

p = affine_presentation(fac)
print()
print("affine relators:", len(p.relators), " abelianization:", abelianization(p))
print("simplified:", tietze_simplify(p))
print("projective abelianization:", abelianization(projective_presentation(p, fac)))

# Sheets: every G_j goes to a transposition of S_3; take the first
# assignment that kills all relators and acts transitively.
transpositions = [Permutation.transposition(3, 1, 2), Permutation.transposition(3, 1, 3),
                  Permutation.transposition(3, 2, 3)]


def first_assignment():
    from itertools import product
    for images in product(transpositions, repeat=p.generators):
        hom = verify_hom(p, images)
        if hom.holds and hom.transitive:
            return SheetAssignment(3, images)
    raise RuntimeError("no transitive assignment")


sheets = first_assignment()
print()
print(format_sheets(sheets), end="")
cover = galois_group(p, sheets, 5000)
print("quotient order", cover.quotient_order, " image order", cover.image_order)
print(cover.verdict())

if "--write" in sys.argv:
    comments = [
        "Branch curve of a generic projection of a smooth cubic surface:",
        "  f^3 + g^2 = 0 with",
        f"  f = {str(f).replace('**', '^')}",
        f"  g = {str(g).replace('**', '^')}",
        "  lassos from base point -1/4 - 4i ordered by increasing angle",
        "Regenerate with demos/02_cubic_surface.py --write",
    ]
    (DATA / "cubic_surface.bmf").write_text(format_bmf(fac, comments))
    (DATA / "cubic.gp").write_text(format_gp(p))
    (DATA / "cubic.sheets").write_text(format_sheets(sheets))
    print("wrote", DATA)
