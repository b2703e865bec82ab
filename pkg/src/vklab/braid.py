"""Braid groups B_n in Artin generators.

Conventions used throughout the package:

* ``s_i`` (``sigma_i``) acts on the free group ``<G_1..G_m>`` from the right:
  ``G_i -> G_{i+1}``, ``G_{i+1} -> G_{i+1} G_i G_{i+1}^-1``.  A word acts by
  composing its letters left to right.
* Permutations compose left to right as well, so ``permutation`` is a
  homomorphism for concatenation of braid words.
* A half-twist path ``H(a,b;tags)`` passes above (``U``) or below (``D``) each
  puncture strictly between ``a`` and ``b``; it becomes ``V s_a V^-1`` with
  ``V = s_{b-1}^{e_{b-1}} ... s_{a+1}^{e_{a+1}}``, ``e_k = +1`` below, ``-1`` above.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .word import FreeEndomorphism, FreeWord, format_letters, free_reduce, parse_letters

__all__ = [
    "BraidWord",
    "HalfTwistPath",
    "Permutation",
    "PairClass",
    "permutation",
    "exponent_sum",
    "full_twist",
    "halftwist_to_word",
    "artin_action",
    "braids_equal",
    "classify_pair",
    "commutator",
    "commutation_reduce",
]


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``1..degree`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        im = list(range(1, n + 1))
        im[i - 1], im[j - 1] = j, i
        return cls(tuple(im))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        im = list(range(1, n + 1))
        for cyc in cycles:
            for k, p in enumerate(cyc):
                if not 1 <= p <= n:
                    raise ValueError(f"point {p} outside 1..{n}")
                im[p - 1] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(im))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse cycle notation such as ``(1 2)(3 4)`` or ``()``."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+\s*)*\))+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [[int(t) for t in body.split()] for body in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(n, [c for c in cycles if c])

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``self`` first, then ``other``."""
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(1, self.degree + 1):
            if i in seen or self(i) == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def is_transposition(self) -> bool:
        c = self.cycles()
        return len(c) == 1 and len(c[0]) == 2

    def __str__(self) -> str:
        c = self.cycles()
        return "".join("(" + " ".join(map(str, cyc)) + ")" for cyc in c) if c else "()"


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators ``s_1 .. s_{n-1}`` of B_n.

    Only letterwise free cancellation is applied; this is not a normal form.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("a braid needs at least 2 strands")
        letters = tuple(int(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) >= self.strands:
                raise IndexError(f"generator s{abs(a)} out of range for B_{self.strands}")
        object.__setattr__(self, "letters", free_reduce(letters))

    @classmethod
    def parse(cls, text: str, strands: int) -> "BraidWord":
        return cls(strands, parse_letters(text, "s"))

    @classmethod
    def generator(cls, strands: int, i: int, exp: int = 1) -> "BraidWord":
        return cls(strands, (i if exp > 0 else -i,) * abs(exp))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError(f"strand mismatch: {self.strands} vs {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-a for a in reversed(self.letters)))

    def conjugate(self, by: "BraidWord") -> "BraidWord":
        """``by^-1 * self * by``."""
        return by.inverse() * self * by

    def __str__(self) -> str:
        return format_letters(self.letters, "s")

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, '{self}')"


_PATH = re.compile(r"^H\(\s*(\d+)\s*,\s*(\d+)\s*;\s*([UD]*)\s*\)$")


@dataclass(frozen=True)
class HalfTwistPath:
    """Simple path from puncture ``a`` to puncture ``b`` (``a < b``).

    ``tags[k]`` is ``'U'`` (above) or ``'D'`` (below) for puncture ``a+1+k``.
    """

    strands: int
    a: int
    b: int
    tags: str = ""

    def __post_init__(self):
        if not 1 <= self.a < self.b <= self.strands:
            raise ValueError(f"need 1 <= a < b <= {self.strands}, got ({self.a},{self.b})")
        if len(self.tags) != self.b - self.a - 1 or set(self.tags) - {"U", "D"}:
            raise ValueError(f"path ({self.a},{self.b}) needs {self.b - self.a - 1} U/D tags, got {self.tags!r}")

    @classmethod
    def parse(cls, text: str, strands: int) -> "HalfTwistPath":
        m = _PATH.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse half-twist path {text!r}")
        return cls(strands, int(m.group(1)), int(m.group(2)), m.group(3))

    @classmethod
    def frame(cls, strands: int, i: int) -> "HalfTwistPath":
        return cls(strands, i, i + 1, "")

    def side(self, k: int) -> str:
        return self.tags[k - self.a - 1]

    def __str__(self) -> str:
        return f"H({self.a},{self.b};{self.tags})"


def permutation(w: BraidWord) -> Permutation:
    """Image of ``w`` under B_n -> S_n, ``s_i -> (i i+1)``."""
    im = list(range(1, w.strands + 1))
    # im[p-1] = where the strand starting at p currently sits
    pos = list(range(w.strands + 1))  # pos[slot] = starting strand in that slot
    for a in w.letters:
        i = abs(a)
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    for slot in range(1, w.strands + 1):
        im[pos[slot] - 1] = slot
    return Permutation(tuple(im))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if a > 0 else -1 for a in w.letters)


def full_twist(n: int) -> BraidWord:
    """``(s_1 s_2 ... s_{n-1})^n``."""
    if n < 2:
        raise ValueError("full twist needs n >= 2")
    return BraidWord(n, tuple(range(1, n)) * n)


def halftwist_to_word(p: HalfTwistPath) -> BraidWord:
    v = conjugator(p)
    return v * BraidWord(p.strands, (p.a,)) * v.inverse()


def conjugator(p: HalfTwistPath) -> BraidWord:
    """``V`` with ``H(p) = V s_a V^-1``."""
    letters = []
    for k in range(p.b - 1, p.a, -1):
        letters.append(k if p.side(k) == "D" else -k)
    return BraidWord(p.strands, tuple(letters))


def commutator(x: BraidWord, y: BraidWord) -> BraidWord:
    """``X Y X^-1 Y^-1``."""
    return x * y * x.inverse() * y.inverse()


def commutation_reduce(w: BraidWord) -> BraidWord:
    """Cancel ``a ... a^-1`` pairs whose middle commutes with ``a``.

    Far generators commute (``s_i s_j = s_j s_i`` for ``|i - j| >= 2``), so
    this is free reduction in the partially commutative sense.  The
    result is equal to ``w`` in B_n and never longer.
    """
    letters = list(w.letters)
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(letters):
            for j in range(i + 1, len(letters)):
                b = letters[j]
                if b == -a:
                    del letters[j], letters[i]
                    changed = True
                    break
                if abs(abs(b) - abs(a)) < 2:
                    break
            if changed:
                break
    return BraidWord(w.strands, tuple(letters))


@lru_cache(maxsize=None)
def _letter_action(m: int, a: int) -> FreeEndomorphism:
    i = abs(a)
    ims = [FreeWord(m, (j,)) for j in range(1, m + 1)]
    if a > 0:
        ims[i - 1] = FreeWord(m, (i + 1,))
        ims[i] = FreeWord(m, (i + 1, i, -(i + 1)))
    else:
        ims[i] = FreeWord(m, (i,))
        ims[i - 1] = FreeWord(m, (-i, i + 1, i))
    return FreeEndomorphism(m, tuple(ims))


def artin_action(w: BraidWord, m: int | None = None) -> FreeEndomorphism:
    """Right action of ``w`` on the free group of rank ``m`` (default: strands)."""
    m = w.strands if m is None else m
    if m < w.strands:
        raise ValueError("free group rank smaller than strand count")
    e = FreeEndomorphism.identity(m)
    for a in w.letters:
        e = e.then(_letter_action(m, a))
    return e


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    """Exact equality in B_n via faithfulness of the Artin action."""
    if u.strands != v.strands:
        raise ValueError(f"strand mismatch: {u.strands} vs {v.strands}")
    if exponent_sum(u) != exponent_sum(v) or permutation(u) != permutation(v):
        return False
    # Burau images only ever prove inequality; they keep the exact test
    # from expanding the exponentially long images of unequal braids.
    for t in _BURAU_SAMPLES:
        if _burau(u, t) != _burau(v, t):
            return False
    return artin_action(u * v.inverse()).is_identity()


_BURAU_PRIME = (1 << 61) - 1
_BURAU_SAMPLES = (3, 1234567)


def _burau(w: BraidWord, t: int) -> tuple[tuple[int, ...], ...]:
    """Unreduced Burau matrix of ``w`` at ``t`` modulo a large prime."""
    p = _BURAU_PRIME
    ti = pow(t, -1, p)
    n = w.strands
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for a in w.letters:
        i = abs(a) - 1
        for r in rows:
            x, y = r[i], r[i + 1]
            if a > 0:  # right multiply by [[1-t, t], [1, 0]]
                r[i], r[i + 1] = ((1 - t) * x + y) % p, (t * x) % p
            else:  # by its inverse [[0, 1], [1/t, 1 - 1/t]]
                r[i], r[i + 1] = (ti * y) % p, (x + (1 - ti) * y) % p
    return tuple(tuple(r) for r in rows)


# -- pair classification ---------------------------------------------------

@dataclass(frozen=True)
class PairClass:
    """Result of :func:`classify_pair`; ``crossings`` counts interior meetings."""

    kind: str
    crossings: int = 0

    def __str__(self) -> str:
        return f"other({self.crossings})" if self.kind == "other" else self.kind


def _height(p: HalfTwistPath, x2: int) -> float:
    """Vertical position of the embedded arc at abscissa ``x2 / 2``.

    The arc is a semicircle over ``[a, b]`` on the side given by the tags; it
    meets the axis half way between two punctures where the side changes.
    """
    x = x2 / 2
    if x <= p.a or x >= p.b:
        return 0.0
    if not p.tags:
        return 0.0
    mag = math.sqrt((x - p.a) * (p.b - x))
    if x2 % 2 == 0:
        return mag if p.side(int(x)) == "U" else -mag
    lo, hi = int(math.floor(x)), int(math.ceil(x))
    sides = {p.side(k) for k in (lo, hi) if p.a < k < p.b}
    if len(sides) == 2:
        return 0.0
    return mag if sides.pop() == "U" else -mag


def _meetings(p: HalfTwistPath, q: HalfTwistPath) -> tuple[int, bool]:
    """Count interior meetings of the embedded arcs; flag tangential ones."""
    lo, hi = max(p.a, q.a), min(p.b, q.b)
    if lo > hi:
        return 0, False
    shared = {p.a, p.b} & {q.a, q.b}
    diffs = []
    for x2 in range(2 * lo, 2 * hi + 1):
        if x2 % 2 == 0 and x2 // 2 in shared:
            diffs.append(None)  # excluded: common endpoint
            continue
        d = _height(p, x2) - _height(q, x2)
        diffs.append(0 if abs(d) < 1e-12 else (1 if d > 0 else -1))
    events, tangential = 0, False
    k = 0
    prev = None  # last nonzero sign in the current segment
    while k < len(diffs):
        s = diffs[k]
        if s is None:
            prev = None
            k += 1
            continue
        if s == 0:
            j = k
            while j < len(diffs) and diffs[j] == 0:
                j += 1
            nxt = diffs[j] if j < len(diffs) else None
            events += 1
            if prev is None or nxt is None or prev == nxt:
                tangential = True
            prev = None
            k = j
            continue
        if prev is not None and s != prev:
            events += 1
        prev = s
        k += 1
    return events, tangential


def classify_pair(p: HalfTwistPath, q: HalfTwistPath) -> PairClass:
    """Classify two half-twist paths by their canonical planar embeddings."""
    if p.strands != q.strands:
        raise ValueError("strand mismatch")
    shared = len({p.a, p.b} & {q.a, q.b})
    if p == q:
        return PairClass("other", 0)
    events, tangential = _meetings(p, q)
    if tangential:
        return PairClass("other", events)
    if shared == 0 and events == 0:
        return PairClass("disjoint")
    if shared == 1 and events == 0:
        return PairClass("adjacent")
    if shared == 0 and events == 1:
        return PairClass("transversal", 1)
    return PairClass("other", events)
