"""The quotient B~_n and the nilpotent B~_n-group G_0(n).

``G_0(n)`` is generated by ``u_1 .. u_{n-1}`` and a central involution
``tau`` with ``[u_i, u_j] = tau`` when ``|i - j| = 1`` and ``1`` otherwise.
Elements are kept in the normal form ``u_1^a_1 ... u_{n-1}^a_{n-1} tau^t``.

The frame generator ``X_k`` of B_n acts on the right by

    u_k     -> u_k tau
    u_i     -> u_i            |i - k| >= 2
    u_i     -> u_k u_i        |i - k| = 1

which is the ``"literal"`` action.  That case list does not satisfy the braid
relation ``X_k X_{k+1} X_k = X_{k+1} X_k X_{k+1}`` (already on exponent
vectors), so :func:`verify_action_well_defined` reports failures for it.
The ``"signed"`` variant replaces the lower neighbour rule by
``u_{k-1} -> u_k^-1 u_{k-1}``, a skew transvection that does satisfy the
braid relations; it is offered for comparison only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .braid import (
    BraidWord,
    HalfTwistPath,
    Permutation,
    classify_pair,
    commutator,
    exponent_sum,
    halftwist_to_word,
    permutation,
)
from .monodromy import orbits

__all__ = [
    "G0Element",
    "g0_multiply",
    "g0_invert",
    "theorem1_action",
    "act_on_generators",
    "Check",
    "CheckReport",
    "default_transversal_samples",
    "verify_action_well_defined",
    "default_quadrangles",
    "quadrangle_check",
    "prime_check",
    "TransversalRelationSet",
    "transversal_relations",
    "SemidirectElement",
    "SolvableSeriesReport",
    "solvable_series_report",
    "n9_relators",
    "generates_symmetric_group",
    "ACTION_VARIANTS",
]

ACTION_VARIANTS = ("literal", "signed")


@dataclass(frozen=True)
class G0Element:
    """``u_1^e_1 ... u_{n-1}^e_{n-1} tau^tau`` in G_0(n)."""

    n: int
    exponents: tuple[int, ...]
    tau: int = 0

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != self.n - 1:
            raise ValueError(f"G_0({self.n}) elements need {self.n - 1} exponents")
        if self.tau not in (0, 1):
            raise ValueError("tau bit must be 0 or 1")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def identity(cls, n: int) -> "G0Element":
        return cls(n, (0,) * (n - 1))

    @classmethod
    def u(cls, n: int, i: int, power: int = 1) -> "G0Element":
        e = [0] * (n - 1)
        e[i - 1] = power
        return cls(n, tuple(e))

    @classmethod
    def central(cls, n: int) -> "G0Element":
        return cls(n, (0,) * (n - 1), 1)

    def __mul__(self, other: "G0Element") -> "G0Element":
        return g0_multiply(self, other)

    def inverse(self) -> "G0Element":
        return g0_invert(self)

    def __pow__(self, k: int) -> "G0Element":
        base = self if k >= 0 else self.inverse()
        out, k = G0Element.identity(self.n), abs(k)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.tau == 0 and not any(self.exponents)

    def __str__(self) -> str:
        parts = [f"u{i}" if e == 1 else f"u{i}^{e}" for i, e in enumerate(self.exponents, 1) if e]
        if self.tau:
            parts.append("tau")
        return " ".join(parts) if parts else "1"


def _cocycle(a: Sequence[int], b: Sequence[int]) -> int:
    # moving u_j^{b_j} left past u_{j+1}^{a_{j+1}} costs tau^{a_{j+1} b_j}
    return sum(a[j + 1] * b[j] for j in range(len(a) - 1)) & 1


def g0_multiply(a: G0Element, b: G0Element) -> G0Element:
    if a.n != b.n:
        raise ValueError(f"G_0 parameter mismatch: {a.n} vs {b.n}")
    exps = tuple(x + y for x, y in zip(a.exponents, b.exponents))
    return G0Element(a.n, exps, (a.tau + b.tau + _cocycle(a.exponents, b.exponents)) & 1)


def g0_invert(a: G0Element) -> G0Element:
    e = a.exponents
    return G0Element(a.n, tuple(-x for x in e), (a.tau + _cocycle(e, e)) & 1)


def _letter_images(n: int, letter: int, variant: str) -> list[G0Element]:
    """Images of ``u_1 .. u_{n-1}`` under ``X_k^{+-1}``."""
    if variant not in ACTION_VARIANTS:
        raise ValueError(f"unknown action variant {variant!r}")
    k = abs(letter)
    u = lambda i, p=1: G0Element.u(n, i, p)  # noqa: E731
    tau = G0Element.central(n)
    ims = [u(i) for i in range(1, n)]
    ims[k - 1] = u(k) * tau
    upper, lower = k + 1, k - 1
    if letter > 0:
        if upper <= n - 1:
            ims[upper - 1] = u(k) * u(upper)
        if lower >= 1:
            ims[lower - 1] = u(k) * u(lower) if variant == "literal" else u(k, -1) * u(lower)
    else:
        # inverse automorphism of the positive letter
        if upper <= n - 1:
            ims[upper - 1] = u(k, -1) * u(upper) * tau
        if lower >= 1:
            ims[lower - 1] = u(k, -1) * u(lower) * tau if variant == "literal" else u(k) * u(lower) * tau
    return ims


def _apply_images(g: G0Element, ims: Sequence[G0Element]) -> G0Element:
    out = G0Element.central(g.n) if g.tau else G0Element.identity(g.n)
    for i, e in enumerate(g.exponents):
        if e:
            out = out * ims[i] ** e
    return out


def theorem1_action(w: BraidWord, g: G0Element, variant: str = "literal") -> G0Element:
    """Right action ``g_w`` of a frame word ``w`` on G_0(n) (``n`` = strands)."""
    if w.strands != g.n:
        raise ValueError(f"braid on {w.strands} strands acting on G_0({g.n})")
    for a in w.letters:
        g = _apply_images(g, _letter_images(g.n, a, variant))
    return g


def act_on_generators(w: BraidWord, n: int, variant: str = "literal") -> list[G0Element]:
    return [theorem1_action(w, G0Element.u(n, i), variant) for i in range(1, n)]


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""

    def __str__(self) -> str:
        s = f"check {self.name} {'PASS' if self.passed else 'FAIL'}"
        return s + (f" {self.witness}" if self.witness else "")


@dataclass
class CheckReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, witness: str = "") -> None:
        self.checks.append(Check(name, bool(passed), witness))

    def lines(self) -> list[str]:
        return [str(c) for c in self.checks]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _compare_words(n: int, u: BraidWord, v: BraidWord, variant: str) -> str:
    """Empty if ``u`` and ``v`` act alike on every ``u_i``, else a witness."""
    for i in range(1, n):
        g = G0Element.u(n, i)
        a, b = theorem1_action(u, g, variant), theorem1_action(v, g, variant)
        if a != b:
            return f"u{i}: ({u}) -> {a} but ({v}) -> {b}"
    return ""


def _acts_trivially(n: int, w: BraidWord, variant: str) -> str:
    for i in range(1, n):
        g = G0Element.u(n, i)
        img = theorem1_action(w, g, variant)
        if img != g:
            return f"u{i} -> {img}"
    return ""


def default_transversal_samples(n: int) -> list[tuple[HalfTwistPath, HalfTwistPath]]:
    """Transversal pairs ``H(k,k+2;s)`` / ``H(k+1,k+3;t)`` plus longer arcs."""
    out = []
    for k in range(1, n - 2):
        for s in "DU":
            for t in "DU":
                p, q = HalfTwistPath(n, k, k + 2, s), HalfTwistPath(n, k + 1, k + 3, t)
                if classify_pair(p, q).kind == "transversal":
                    out.append((p, q))
    for k in range(1, n - 4):
        p, q = HalfTwistPath(n, k, k + 3, "DD"), HalfTwistPath(n, k + 2, k + 5, "DD")
        if classify_pair(p, q).kind == "transversal":
            out.append((p, q))
    return out


def verify_action_well_defined(
    n: int = 9,
    samples: Iterable[tuple[HalfTwistPath, HalfTwistPath]] | None = None,
    variant: str = "literal",
) -> CheckReport:
    """Check that the frame action respects B_n relations and kills transversal commutators."""
    rep = CheckReport()
    for k in range(1, n - 1):
        l = k + 1
        u = BraidWord(n, (k, l, k))
        v = BraidWord(n, (l, k, l))
        wit = _compare_words(n, u, v, variant)
        rep.add(f"braid_relation_{k}_{l}", not wit, wit)
    for k, l in combinations(range(1, n), 2):
        if l - k >= 2:
            wit = _compare_words(n, BraidWord(n, (k, l)), BraidWord(n, (l, k)), variant)
            rep.add(f"far_commutation_{k}_{l}", not wit, wit)
    pairs = default_transversal_samples(n) if samples is None else list(samples)
    for p, q in pairs:
        cls = classify_pair(p, q)
        if cls.kind != "transversal":
            rep.add(f"transversal_{p}_{q}", False, f"pair classifies as {cls}")
            continue
        w = commutator(halftwist_to_word(p), halftwist_to_word(q))
        wit = _acts_trivially(n, w, variant)
        rep.add(f"transversal_commutator_{p}_{q}", not wit, wit)
    return rep


def default_quadrangles(n: int = 9) -> list[tuple[HalfTwistPath, ...]]:
    """Quadrangles on four consecutive punctures ``a < b < c < d``.

    Three sides are the segments ``ab``, ``bc``, ``cd``; the fourth joins
    ``a`` to ``d`` passing above (or below) ``b`` and ``c``.
    """
    out = []
    for a in range(1, n - 2):
        for tags in ("UU", "DD"):
            out.append((
                HalfTwistPath(n, a, a + 1, ""),
                HalfTwistPath(n, a + 1, a + 2, ""),
                HalfTwistPath(n, a + 2, a + 3, ""),
                HalfTwistPath(n, a, a + 3, tags),
            ))
    return out


def quadrangle_check(
    x1: HalfTwistPath,
    x2: HalfTwistPath,
    x3: HalfTwistPath,
    x4: HalfTwistPath,
    variant: str = "literal",
) -> CheckReport:
    """Necessary conditions for ``X1^2 X3^2 = X2^2 X4^2`` in B~_n.

    Raises ``ValueError`` unless consecutive sides are adjacent and opposite
    sides disjoint.
    """
    xs = (x1, x2, x3, x4)
    n = x1.strands
    for i in range(4):
        c = classify_pair(xs[i], xs[(i + 1) % 4])
        if c.kind != "adjacent":
            raise ValueError(f"not a quadrangle: sides {xs[i]} and {xs[(i + 1) % 4]} are {c}")
    for i in range(2):
        c = classify_pair(xs[i], xs[i + 2])
        if c.kind != "disjoint":
            raise ValueError(f"not a quadrangle: opposite sides {xs[i]} and {xs[i + 2]} are {c}")
    h = [halftwist_to_word(x) ** 2 for x in xs]
    w = (h[0] * h[2]) * (h[1] * h[3]).inverse()
    name = "_".join(str(x) for x in xs)
    rep = CheckReport()
    perm = permutation(w)
    rep.add(f"quadrangle_permutation {name}", perm.is_identity(), "" if perm.is_identity() else str(perm))
    es = exponent_sum(w)
    rep.add(f"quadrangle_exponent_sum {name}", es == 0, "" if es == 0 else str(es))
    wit = _acts_trivially(n, w, variant)
    rep.add(f"quadrangle_g0_action {name}", not wit, wit)
    return rep


def _is_central_involution(t: G0Element, variant: str) -> bool:
    n = t.n
    if not (t * t).is_identity():
        return False
    for i in range(1, n):
        u = G0Element.u(n, i)
        if u * t != t * u:
            return False
    for k in range(1, n):
        if theorem1_action(BraidWord(n, (k,)), t, variant) != t:
            return False
    return True


def prime_check(
    g: G0Element,
    x: HalfTwistPath | int,
    tau: G0Element,
    consecutive: Sequence[HalfTwistPath] | None = None,
    disjoint: Sequence[HalfTwistPath] | None = None,
    variant: str = "literal",
) -> CheckReport:
    """Evaluate the three prime-element identities for ``g`` supported on ``x``.

    ``x`` is a path or a frame index.  ``consecutive`` and ``disjoint``
    default to the frame half-twists adjacent to, respectively disjoint
    from, ``x``.  Raises ``ValueError`` if ``tau`` is not a central,
    action-invariant involution.
    """
    n = g.n
    if isinstance(x, int):
        x = HalfTwistPath.frame(n, x)
    if not _is_central_involution(tau, variant):
        raise ValueError(f"{tau} is not a central, invariant involution")
    frames = [HalfTwistPath.frame(n, k) for k in range(1, n)]
    if consecutive is None:
        consecutive = [f for f in frames if classify_pair(f, x).kind == "adjacent"]
    if disjoint is None:
        disjoint = [f for f in frames if classify_pair(f, x).kind == "disjoint"]
    X = halftwist_to_word(x)
    act = lambda w, h: theorem1_action(w, h, variant)  # noqa: E731
    rep = CheckReport()
    lhs, rhs = act(X.inverse(), g), g.inverse() * tau
    rep.add("prime_condition_1", lhs == rhs, "" if lhs == rhs else f"{lhs} != {rhs}")
    for y in consecutive:
        if classify_pair(x, y).kind != "adjacent":
            raise ValueError(f"{y} is not consecutive to {x}")
        Y = halftwist_to_word(y)
        lhs = act(X * Y * X.inverse(), g)
        rhs = act(X, g.inverse()) * act(X * Y.inverse(), g)
        rep.add(f"prime_condition_2 {y}", lhs == rhs, "" if lhs == rhs else f"{lhs} != {rhs}")
    for z in disjoint:
        if classify_pair(x, z).kind != "disjoint":
            raise ValueError(f"{z} is not disjoint from {x}")
        lhs = act(halftwist_to_word(z), g)
        rep.add(f"prime_condition_3 {z}", lhs == g, "" if lhs == g else f"{lhs} != {g}")
    return rep


@dataclass(frozen=True)
class TransversalRelationSet:
    strands: int
    relators: tuple[BraidWord, ...]
    pairs: tuple[tuple[HalfTwistPath, HalfTwistPath], ...] = ()


def transversal_relations(
    n: int, pairs: Iterable[tuple[HalfTwistPath, HalfTwistPath]]
) -> TransversalRelationSet:
    """Commutators ``[X, Y]`` for the supplied pairs that classify as transversal."""
    kept, rels = [], []
    for p, q in pairs:
        if p.strands != n or q.strands != n:
            raise ValueError("path on the wrong number of strands")
        if classify_pair(p, q).kind == "transversal":
            kept.append((p, q))
            rels.append(commutator(halftwist_to_word(p), halftwist_to_word(q)))
    return TransversalRelationSet(n, tuple(rels), tuple(kept))


# -- semidirect product B~_n x| G_0(n) -----------------------------------------

@dataclass(frozen=True)
class SemidirectElement:
    """``(b, g)`` with ``(b1, g1)(b2, g2) = (b1 b2, (g1)_{b2} g2)``.

    Equality is only semi-decided through :meth:`invariants`: distinct
    invariants prove the elements differ, equal invariants prove nothing.
    """

    braid: BraidWord
    module: G0Element
    variant: str = "literal"

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        g = theorem1_action(other.braid, self.module, self.variant) * other.module
        return SemidirectElement(self.braid * other.braid, g, self.variant)

    def invariants(self) -> tuple:
        n = self.module.n
        action = tuple(act_on_generators(self.braid, n, self.variant))
        return (permutation(self.braid), exponent_sum(self.braid), action, self.module)

    def maybe_equal(self, other: "SemidirectElement") -> bool:
        return self.invariants() == other.invariants()


def n9_relators(n: int = 9) -> list[SemidirectElement]:
    """``(X_i^-3, u_i^3)`` for each frame index: the relations ``u_i^3 = X_i^3``."""
    return [
        SemidirectElement(BraidWord(n, (-i, -i, -i)), G0Element.u(n, i, 3)) for i in range(1, n)
    ]


# -- solvable series record ---------------------------------------------------

@dataclass(frozen=True)
class SolvableSeriesReport:
    layers: tuple[tuple[str, str, bool], ...]  # (quotient, description, verified)

    def lines(self) -> list[str]:
        return [f"layer {q} = {d} {'VERIFIED' if v else 'RECORDED'}" for q, d, v in self.layers]


def generates_symmetric_group(perms: Sequence[Permutation]) -> bool:
    """Transpositions whose graph on ``1..n`` is connected generate S_n."""
    if not perms:
        return False
    n = perms[0].degree
    return all(p.is_transposition() for p in perms) and len(orbits(n, perms)) == 1


def solvable_series_report(n: int = 9, variant: str = "literal") -> SolvableSeriesReport:
    """Recorded layers of the series ``1 < H'_{9,0} < H_{9,0} < H_9 < G``.

    Only surjectivity onto S_9 and the central involution facts are checked.
    """
    frame_perms = [permutation(BraidWord(n, (k,))) for k in range(1, n)]
    psi = generates_symmetric_group(frame_perms)
    tau_ok = _is_central_involution(G0Element.central(n), variant)
    return SolvableSeriesReport(
        (
            ("G/H_9", f"S_{n}", psi),
            ("H_9/H_9,0", "Z", False),
            ("H_9,0/H'_9,0", f"(Z + Z/3)^{n - 1}", False),
            ("H'_9,0", "{1, c} = Z/2, c central (c = tau)", tau_ok),
        )
    )


def random_element(n: int, rng: random.Random, bound: int = 5) -> G0Element:
    return G0Element(n, tuple(rng.randint(-bound, bound) for _ in range(n - 1)), rng.randint(0, 1))
