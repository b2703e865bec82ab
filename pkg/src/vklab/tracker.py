"""Numerical braid monodromy of plane curves.

The roots of ``p(x, y) = 0`` in ``y`` are followed along a loop in the
x-plane.  Strands are ordered by (real part, imaginary part); whenever two
neighbouring strands exchange real order a letter ``s_i^{+-1}`` is recorded:
``+1`` when the strand moving from position ``i+1`` to ``i`` passes above
(larger imaginary part).  This is the only floating-point module; the output
is an exact :class:`~vklab.braid.BraidWord`.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy as sp

from .braid import BraidWord
from .errors import ParseError, TrackingError

__all__ = [
    "PlaneCurve",
    "LoopSpec",
    "CriticalSet",
    "critical_x",
    "discriminant",
    "track_braid",
    "track_segment",
    "track_lasso",
    "parse_complex",
    "parse_loop",
]

X, Y = sp.symbols("x y")


@dataclass(frozen=True)
class PlaneCurve:
    """Curve ``p(x, y) = 0`` with rational coefficients, monic in ``y``."""

    poly: sp.Poly  # in y over QQ[x]

    def __post_init__(self):
        p = self.poly
        if p.degree(Y) < 1:
            raise ValueError("curve must have positive degree in y")
        lead = sp.Poly(p.as_expr(), Y).LC()
        if not sp.sympify(lead).is_number or lead == 0:
            raise ValueError("curve must be monic in y (constant leading coefficient)")
        if lead != 1:
            object.__setattr__(self, "poly", sp.Poly(sp.expand(p.as_expr() / lead), X, Y, domain="QQ"))

    @classmethod
    def parse(cls, text: str) -> "PlaneCurve":
        try:
            expr = sp.sympify(text.replace("^", "**"), locals={"x": X, "y": Y}, rational=True)
            if expr.free_symbols - {X, Y}:
                raise ParseError(f"curve {text!r} uses variables other than x, y")
            poly = sp.Poly(sp.expand(expr), X, Y, domain="QQ")
        except (sp.SympifyError, sp.PolynomialError, TypeError, SyntaxError) as exc:
            raise ParseError(f"cannot parse curve {text!r}: {exc}") from exc
        return cls(poly)

    @property
    def degree(self) -> int:
        return self.poly.degree(Y)

    def coefficient_polys(self) -> list[np.ndarray]:
        """Float coefficients in ``x`` (highest first) of ``y^m, ..., y^0``."""
        py = sp.Poly(self.poly.as_expr(), Y)
        out = []
        for k in range(self.degree, -1, -1):
            ck = sp.Poly(py.coeff_monomial(Y**k), X)
            out.append(np.array([complex(c) for c in ck.all_coeffs()]))
        return out

    def __str__(self) -> str:
        return str(self.poly.as_expr()).replace("**", "^")


class _Fiber:
    def __init__(self, curve: PlaneCurve):
        self.cps = curve.coefficient_polys()

    def __call__(self, x: complex) -> np.ndarray:
        coeffs = np.array([np.polyval(c, x) for c in self.cps])
        roots = np.roots(coeffs)
        # two Newton steps against the monic polynomial
        d = np.polyder(coeffs)
        for _ in range(2):
            f, fp = np.polyval(coeffs, roots), np.polyval(d, roots)
            ok = np.abs(fp) > 0
            roots = np.where(ok, roots - np.where(ok, f / np.where(ok, fp, 1), 0), roots)
        return roots


@dataclass(frozen=True)
class CriticalSet:
    """Critical values with certified isolation disks.

    ``multiplicities`` are the root multiplicities in the discriminant
    (1 for a simple branch point, 2 for a node, 3 for a cusp).
    """

    points: tuple[complex, ...]
    radii: tuple[float, ...]
    multiplicities: tuple[int, ...]
    certified: bool

    def __len__(self) -> int:
        return len(self.points)


def discriminant(c: PlaneCurve) -> sp.Poly:
    p = sp.Poly(c.poly.as_expr(), Y)
    res = sp.resultant(p.as_expr(), sp.diff(p.as_expr(), Y), Y)
    return sp.Poly(sp.expand(res), X, domain="QQ")


def critical_x(c: PlaneCurve) -> CriticalSet:
    """Roots of the discriminant of ``c`` in ``x``."""
    disc = discriminant(c)
    if disc.is_zero:
        raise ValueError("discriminant vanishes identically: curve is not reduced")
    pts, mults = [], []
    for factor, mult in sp.sqf_list(disc)[1]:
        coeffs = [complex(a) for a in factor.all_coeffs()]
        for r in np.roots(coeffs):
            pts.append(_polish(factor, complex(r)))
            mults.append(mult)
    order = sorted(range(len(pts)), key=lambda i: (round(pts[i].real, 12), round(pts[i].imag, 12)))
    pts = [pts[i] for i in order]
    mults = [mults[i] for i in order]
    sqf = sp.Poly(sp.quo(disc, sp.gcd(disc, disc.diff(X))), X)
    deg = sqf.degree()
    fc = [complex(a) for a in sqf.all_coeffs()]
    dfc = [complex(a) for a in sqf.diff(X).all_coeffs()]
    radii, certified = [], len(pts) == deg
    for i, z in enumerate(pts):
        gap = min((abs(z - w) for j, w in enumerate(pts) if j != i), default=math.inf)
        fz, dz = np.polyval(fc, z), np.polyval(dfc, z)
        incl = deg * abs(fz) / abs(dz) if dz != 0 else math.inf
        radii.append(float(incl))
        if not incl < gap / 2:
            certified = False
    return CriticalSet(tuple(pts), tuple(radii), tuple(mults), certified)


def _polish(factor: sp.Poly, z: complex) -> complex:
    coeffs = [complex(a) for a in factor.all_coeffs()]
    d = np.polyder(coeffs)
    for _ in range(5):
        fp = np.polyval(d, z)
        if fp == 0:
            break
        z = z - np.polyval(coeffs, z) / fp
    return complex(z)


# -- loops --------------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """Parse ``1``, ``-1/2``, ``i``, ``2i``, ``1+2i``, ``1/2-i/3`` style numbers."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    try:
        expr = sp.sympify(re.sub(r"(\d)i", r"\1*I", s).replace("i", "I"), rational=True)
        val = complex(sp.N(expr))
    except (sp.SympifyError, TypeError, SyntaxError) as exc:
        raise ParseError(f"cannot parse complex number {text!r}") from exc
    return val


@dataclass(frozen=True)
class LoopSpec:
    """Closed loop in the x-plane based at ``base``.

    ``kind == "circle"``: counterclockwise circle around ``center`` through
    ``base``.  ``kind == "polyline"``: the closed polygon through
    ``vertices`` (``vertices[0] == base``).
    """

    base: complex
    kind: str = "circle"
    center: complex = 0j
    vertices: tuple[complex, ...] = ()
    clockwise: bool = False

    def __post_init__(self):
        if self.kind == "circle":
            if abs(self.base - self.center) == 0:
                raise ValueError("degenerate circle")
        elif self.kind == "polyline":
            if len(self.vertices) < 2 or self.vertices[0] != self.base:
                raise ValueError("polyline needs >= 2 vertices starting at the base point")
        else:
            raise ValueError(f"unknown loop kind {self.kind!r}")

    @classmethod
    def circle(cls, center: complex, radius: float, base: complex | None = None) -> "LoopSpec":
        base = center + radius if base is None else base
        if not math.isclose(abs(base - center), radius, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError("base point must lie on the circle")
        return cls(base=complex(base), kind="circle", center=complex(center))

    @classmethod
    def polyline(cls, vertices: Sequence[complex]) -> "LoopSpec":
        vs = tuple(complex(v) for v in vertices)
        return cls(base=vs[0], kind="polyline", vertices=vs)

    @classmethod
    def lasso(cls, base: complex, target: complex, radius: float, sides: int = 32) -> "LoopSpec":
        """Go straight towards ``target``, circle it counterclockwise, return."""
        d = base - target
        start = target + radius * d / abs(d)
        ang0 = cmath.phase(d)
        ring = [target + radius * cmath.exp(1j * (ang0 + 2 * math.pi * k / sides)) for k in range(sides + 1)]
        ring[0] = ring[-1] = start
        return cls.polyline([base] + ring)

    def point(self, t: float) -> complex:
        if self.kind == "circle":
            if t >= 1.0:
                return self.base
            sign = -1 if self.clockwise else 1
            return self.center + (self.base - self.center) * cmath.exp(sign * 2j * math.pi * t)
        vs = self.vertices + (self.vertices[0],)
        if t >= 1.0:
            return self.base
        lengths = [abs(b - a) for a, b in zip(vs, vs[1:])]
        total = sum(lengths)
        s = t * total
        for a, b, ln in zip(vs, vs[1:], lengths):
            if s <= ln and ln > 0:
                return a + (b - a) * (s / ln)
            s -= ln
        return self.base

    def distance_to(self, z: complex) -> float:
        if self.kind == "circle":
            return abs(abs(z - self.center) - abs(self.base - self.center))
        vs = self.vertices + (self.vertices[0],)
        best = math.inf
        for a, b in zip(vs, vs[1:]):
            ab = b - a
            if ab == 0:
                best = min(best, abs(z - a))
                continue
            s = max(0.0, min(1.0, ((z - a) * ab.conjugate()).real / abs(ab) ** 2))
            best = min(best, abs(z - (a + s * ab)))
        return best


def parse_loop(tokens: Sequence[str]) -> LoopSpec:
    """``circle u=1 r=1 [center=0]`` or ``polyline v0 v1 v2 ...``."""
    if not tokens:
        raise ParseError("empty loop specification")
    kind, rest = tokens[0], tokens[1:]
    if kind == "circle":
        opts = {}
        for tok in rest:
            key, _, val = tok.partition("=")
            if key not in ("u", "r", "center") or not val:
                raise ParseError(f"bad circle option {tok!r}")
            opts[key] = parse_complex(val)
        if "u" not in opts:
            raise ParseError("circle needs u=<base point>")
        u = opts["u"]
        if "center" in opts:
            return LoopSpec.circle(opts["center"], abs(u - opts["center"]), u)
        r = opts.get("r", 1)
        if r.imag != 0 or r.real <= 0:
            raise ParseError("radius must be positive real")
        return LoopSpec.circle(u - r.real, r.real, u)
    if kind == "polyline":
        return LoopSpec.polyline([parse_complex(t) for t in rest])
    raise ParseError(f"unknown loop kind {kind!r}")


# -- tracking -----------------------------------------------------------------

def _order(z: np.ndarray) -> list[int]:
    return sorted(range(len(z)), key=lambda i: (z[i].real, z[i].imag))


def _min_gap(z: np.ndarray) -> float:
    d = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def _has_tie(z: np.ndarray) -> bool:
    re_ = np.sort(z.real)
    scale = 1.0 + float(np.max(np.abs(z)))
    return bool(np.any(np.diff(re_) < 1e-10 * scale))


def track_braid(
    c: PlaneCurve,
    loop: LoopSpec,
    tol: float = 1e-9,
    max_step: float = 1 / 64,
    check_critical: bool = True,
) -> BraidWord:
    """Braid traced by the fiber of ``c`` over ``loop``.

    A step is accepted only if every root moves less than a third of the
    minimal root gap at the previous sample, the matching is a bijection,
    no two roots tie in real part at the new sample and the real-order
    exchanges happen at distinct times; otherwise the step is halved.
    Raises :class:`TrackingError` when the step falls below ``tol``.
    """
    if check_critical:
        _check_clearance(c, loop.distance_to, tol)
    return _track(c, loop.point, tol, max_step)


def track_segment(
    c: PlaneCurve, start: complex, end: complex, tol: float = 1e-9, max_step: float = 1 / 64
) -> BraidWord:
    """Braid traced over the straight segment ``start -> end`` (an open path)."""
    seg = LoopSpec.polyline([start, end])
    _check_clearance(c, seg.distance_to, tol)
    return _track(c, lambda t: start + (end - start) * min(t, 1.0), tol, max_step)


def track_lasso(
    c: PlaneCurve, base: complex, target: complex, radius: float, tol: float = 1e-9, max_step: float = 1 / 64
) -> tuple[BraidWord, BraidWord]:
    """Approach and ring words of the lasso from ``base`` around ``target``.

    The lasso braid is ``approach * ring * approach^-1``; tracking the two
    parts separately keeps that shape exact.
    """
    d = base - target
    start = target + radius * d / abs(d)
    ring = LoopSpec.circle(target, radius, start)
    return track_segment(c, base, start, tol, max_step), track_braid(c, ring, tol, max_step)


def _check_clearance(c: PlaneCurve, distance, tol: float) -> None:
    crit = critical_x(c)
    for z, r in zip(crit.points, crit.radii):
        if distance(z) < r + tol:
            raise ValueError(f"path passes within {tol} of critical value {z:.6g}")


def _track(c: PlaneCurve, point, tol: float, max_step: float) -> BraidWord:
    m = c.degree
    if m < 2:
        raise ValueError("need at least two strands")
    fiber = _Fiber(c)
    x0 = point(0.0)
    z = fiber(x0)
    if _has_tie(z) or _min_gap(z) == 0:
        raise TrackingError("base fiber has roots with equal real parts; move the base point", x0)
    pos = _order(z)  # pos[slot] = strand sitting in slot
    letters: list[int] = []
    t, h = 0.0, max_step
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < tol:
            raise TrackingError(f"step underflow at x = {point(t):.6g}", point(t))
        t1 = 1.0 if h >= 1.0 - t else t + h
        step = _match(z, fiber(point(t1)))
        if step is None or _has_tie(step):
            h /= 2
            continue
        events = _exchanges(z, step, pos)
        if events is None:
            h /= 2
            continue
        letters.extend(events)
        z, t = step, t1
        h = min(2 * h, max_step)
    return BraidWord(m, tuple(letters))


def _match(z: np.ndarray, new: np.ndarray) -> np.ndarray | None:
    gap = _min_gap(z)
    d = np.abs(z[:, None] - new[None, :])
    idx = np.argmin(d, axis=1)
    if len(set(idx.tolist())) != len(z):
        return None
    if np.any(d[np.arange(len(z)), idx] >= gap / 3):
        return None
    return new[idx]


def _exchanges(z0: np.ndarray, z1: np.ndarray, pos: list[int]) -> list[int] | None:
    """Letters for the real-order exchanges along the straight step ``z0 -> z1``.

    Updates ``pos`` in place on success.
    """
    m = len(z0)
    events = []
    for i in range(m):
        for j in range(i + 1, m):
            a0, a1 = z0[i].real - z0[j].real, z1[i].real - z1[j].real
            if (a0 > 0) != (a1 > 0):
                s = a0 / (a0 - a1)
                events.append((s, i, j))
    if not events:
        return []
    events.sort()
    times = [e[0] for e in events]
    if any(b - a < 1e-12 for a, b in zip(times, times[1:])):
        return None
    work = list(pos)
    where = {s: k for k, s in enumerate(work)}
    out = []
    for s, i, j in events:
        pi, pj = where[i], where[j]
        if abs(pi - pj) != 1:
            return None
        lo = min(pi, pj)
        left, right = work[lo], work[lo + 1]  # right strand moves left
        im_left = z0[left].imag + s * (z1[left].imag - z0[left].imag)
        im_right = z0[right].imag + s * (z1[right].imag - z0[right].imag)
        if abs(im_left - im_right) < 1e-14:
            return None
        out.append(lo + 1 if im_right > im_left else -(lo + 1))
        work[lo], work[lo + 1] = right, left
        where[left], where[right] = lo + 1, lo
    pos[:] = work
    return out

