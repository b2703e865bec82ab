import cmath
import runpy
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from vklab.braid import BraidWord, braids_equal, permutation
from vklab.cli import bundled_path
from vklab.errors import ParseError, TrackingError
from vklab.monodromy import read_bmf
from vklab.tracker import (
    LoopSpec,
    PlaneCurve,
    critical_x,
    parse_complex,
    parse_loop,
    track_braid,
    track_lasso,
    track_segment,
)

ROOT = Path(__file__).resolve().parents[1]
SEXTIC_ISH = "y^3 - 3*x*y + x^3 - 2"


def root_permutation(curve, loop, samples=4000):
    """Fixed-step tracking with optimal assignment between samples; returns
    the slot permutation of the real-ordered fiber (slot i -> slot j)."""
    coeffs = curve.coefficient_polys()

    def roots(x):
        return np.roots([np.polyval(c, x) for c in coeffs])

    z0 = roots(loop.point(0.0))
    z = z0.copy()
    for k in range(1, samples + 1):
        new = roots(loop.point(k / samples))
        _, col = linear_sum_assignment(np.abs(z[:, None] - new[None, :]))
        z = new[col]
    slot = {i: r for r, i in enumerate(np.argsort(z0.real))}
    end = {i: r for r, i in enumerate(np.argsort(z.real))}
    # strand starting in slot s ends where root i went
    return {slot[i] + 1: int(np.argsort(np.argsort(z.real))[i]) + 1 for i in range(len(z0))}, end


# -- local models ----------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_local_model_words(m):
    c = PlaneCurve.parse(f"y^2 - x^{m}")
    w = track_braid(c, LoopSpec.circle(0, 1))
    assert braids_equal(w, BraidWord(2, (1,) * m))
    assert w == BraidWord(2, (1,) * m)


def test_clockwise_circle_inverts():
    c = PlaneCurve.parse("y^2 - x^3")
    loop = LoopSpec(1 + 0j, "circle", 0j, (), clockwise=True)
    assert braids_equal(track_braid(c, loop), BraidWord(2, (-1, -1, -1)))


def test_empty_loop_gives_empty_word():
    c = PlaneCurve.parse("y^2 - x")
    assert track_braid(c, LoopSpec.circle(5, 1)).letters == ()


def test_step_halving_invariance():
    c = PlaneCurve.parse(SEXTIC_ISH)
    loop = LoopSpec.circle(0, 3, -3j)
    coarse = track_braid(c, loop, max_step=1 / 8)
    fine = track_braid(c, loop, max_step=1 / 512)
    assert braids_equal(coarse, fine)


# -- critical values -----------------------------------------------------------

def test_critical_examples():
    crit = critical_x(PlaneCurve.parse("y^2 - x^3"))
    assert len(crit) == 1 and abs(crit.points[0]) < 1e-12 and crit.multiplicities == (3,)
    crit = critical_x(PlaneCurve.parse("y^2 - (x-1)*(x-2)*(x-3)"))
    assert crit.certified
    assert np.allclose(sorted(z.real for z in crit.points), [1, 2, 3])
    crit = critical_x(PlaneCurve.parse("y^2 - x^2*(x-1)"))
    assert sorted(crit.multiplicities) == [1, 2]


def test_nonreduced_curve_rejected():
    with pytest.raises(ValueError):
        critical_x(PlaneCurve.parse("(y-x)^2"))


def test_curve_validation():
    with pytest.raises(ValueError):
        PlaneCurve.parse("x*y^2 - 1")
    with pytest.raises(ParseError):
        PlaneCurve.parse("y^2 - z")
    with pytest.raises(ParseError):
        PlaneCurve.parse("y^2 -")
    assert PlaneCurve.parse("2*y^2 - x").degree == 2


# -- loops and composition -------------------------------------------------------

def test_big_circle_is_product_of_lassos():
    c = PlaneCurve.parse(SEXTIC_ISH)
    base = -3j
    crit = critical_x(c)
    big = track_braid(c, LoopSpec.circle(0, 3, base))
    prod = BraidWord(3)
    for z in sorted(crit.points, key=lambda z: cmath.phase(z - base)):
        gap = min(abs(z - w) for w in crit.points if w != z)
        a, r = track_lasso(c, base, z, 0.3 * gap)
        assert len(r.letters) == 1
        prod = prod * a * r * a.inverse()
    assert braids_equal(prod, big)


def test_polyline_lasso_matches_split_lasso():
    c = PlaneCurve.parse("y^2 - x*(x-1)")
    base = 0.3 - 1j
    a, r = track_lasso(c, base, 1, 0.25)
    whole = track_braid(c, LoopSpec.lasso(base, 1, 0.25, sides=64))
    assert braids_equal(whole, a * r * a.inverse())


@pytest.mark.parametrize("curve, loop", [
    (SEXTIC_ISH, LoopSpec.circle(0, 3, -3j)),
    (SEXTIC_ISH, LoopSpec.polyline([-3j, 1 - 1j, 1 + 1j, -1 + 1j])),
    ("y^3 - 3*y - x", LoopSpec.circle(2, 1, 2 - 1j)),
])
def test_permutation_matches_root_oracle(curve, loop):
    c = PlaneCurve.parse(curve)
    perm, _ = root_permutation(c, loop)
    got = permutation(track_braid(c, loop))
    assert {i: got(i) for i in perm} == perm


def test_segment_tracking():
    c = PlaneCurve.parse("y^3 - 3*y - x")
    w = track_segment(c, -3j, 3j)
    assert w.strands == 3
    with pytest.raises(ValueError):
        track_segment(c, -2 - 1j, -2 + 1j)


def test_loop_through_critical_value_rejected():
    c = PlaneCurve.parse("y^2 - x")
    with pytest.raises(ValueError):
        track_braid(c, LoopSpec.circle(1, 1))


def test_tie_at_base_point_raises_tracking_error():
    # y^2 = x at x = -1 has roots +-i with equal real parts
    c = PlaneCurve.parse("y^2 - x")
    with pytest.raises(TrackingError):
        track_braid(c, LoopSpec.circle(0, 1, -1))


def test_one_strand_rejected():
    with pytest.raises(ValueError):
        track_braid(PlaneCurve.parse("y - x"), LoopSpec.circle(0, 1), check_critical=False)


def test_loop_spec_validation():
    with pytest.raises(ValueError):
        LoopSpec.circle(0, 1, 2)
    with pytest.raises(ValueError):
        LoopSpec(0j, "circle", 0j)
    with pytest.raises(ValueError):
        LoopSpec(0j, "spiral")
    with pytest.raises(ValueError):
        LoopSpec.polyline([1])
    loop = LoopSpec.polyline([0, 1, 1j])
    assert loop.point(0) == 0 and loop.point(1.0) == 0
    assert abs(loop.distance_to(0.5 - 0.5j) - 0.5) < 1e-12


# -- parsing ---------------------------------------------------------------------

@pytest.mark.parametrize("text, value", [
    ("1", 1), ("-1/2", -0.5), ("i", 1j), ("2i", 2j), ("1+2i", 1 + 2j), ("1/2-i/3", 0.5 - 1j / 3),
])
def test_parse_complex(text, value):
    assert abs(parse_complex(text) - value) < 1e-15


def test_parse_complex_errors():
    with pytest.raises(ParseError):
        parse_complex("1+")


def test_parse_loop():
    loop = parse_loop(["circle", "u=1", "r=1"])
    assert loop.center == 0 and loop.base == 1
    loop = parse_loop(["circle", "u=2", "center=1"])
    assert loop.center == 1
    loop = parse_loop(["polyline", "1", "i", "-1"])
    assert loop.vertices == (1, 1j, -1)
    for bad in ([], ["circle"], ["circle", "u=1", "r=-1"], ["circle", "u=1", "q=2"], ["ellipse"]):
        with pytest.raises(ParseError):
            parse_loop(bad)


# -- the bundled cubic surface factorization ----------------------------------------

@pytest.mark.slow
def test_demo_regenerates_bundled_factorization(capsys):
    ns = runpy.run_path(str(ROOT / "demos" / "02_cubic_surface.py"), run_name="demo")
    capsys.readouterr()
    bundled = read_bmf(bundled_path("cubic_surface.bmf"))
    assert [f.kind for f in ns["fac"].factors] == [f.kind for f in bundled.factors]
    assert [f.word for f in ns["fac"].factors] == [f.word for f in bundled.factors]
