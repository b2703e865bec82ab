"""Braid monodromy factorizations and their ``.bmf`` text format."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braid import (
    BraidWord,
    HalfTwistPath,
    Permutation,
    braids_equal,
    commutation_reduce,
    exponent_sum,
    full_twist,
    halftwist_to_word,
    permutation,
)
from .errors import ParseError

__all__ = [
    "SingularFactor",
    "Factorization",
    "ValidationReport",
    "local_model",
    "validate",
    "hurwitz_move",
    "inverse_hurwitz_move",
    "parse_bmf",
    "format_bmf",
    "read_bmf",
    "kind_for_power",
]

_KIND_POWER = {"branch": 1, "node": 2, "cusp": 3}


def kind_for_power(eps: int) -> str:
    for k, e in _KIND_POWER.items():
        if e == eps:
            return k
    return f"local_model({eps})"


def _power_of_kind(kind: str) -> int:
    if kind in _KIND_POWER:
        return _KIND_POWER[kind]
    m = re.fullmatch(r"local_model\((\d+)\)", kind)
    if not m:
        raise ValueError(f"unknown factor kind {kind!r}")
    return int(m.group(1))


@dataclass(frozen=True)
class SingularFactor:
    """One factor ``H^eps`` of a braid monodromy factorization.

    Exactly one of ``path`` and ``word`` is set; ``word`` holds a conjugated
    half-twist when no path is known.
    """

    power: int
    kind: str
    path: HalfTwistPath | None = None
    word: BraidWord | None = None

    def __post_init__(self):
        if (self.path is None) == (self.word is None):
            raise ValueError("give exactly one of path and word")
        if self.power < 1:
            raise ValueError("power must be positive")
        if _power_of_kind(self.kind) != self.power:
            raise ValueError(f"kind {self.kind} inconsistent with power {self.power}")

    @classmethod
    def from_lasso(cls, approach: BraidWord, ring: BraidWord) -> "SingularFactor":
        """Factor ``A s_i^eps A^-1`` from a tracked lasso.

        ``approach`` is the word of the path out to the small circle and
        ``ring`` the word of the circle itself, which must have the shape
        ``B s_i^eps B^-1`` (distant strands may swap and swap back).
        """
        letters = commutation_reduce(ring).letters
        k = 0
        while 2 * k + 1 < len(letters) and letters[k] == -letters[-1 - k]:
            k += 1
        core = letters[k:len(letters) - k]
        if not core or len(set(core)) != 1 or core[0] < 0:
            raise ValueError(f"ring braid {ring} is not a conjugated positive power of one generator")
        conj = approach * BraidWord(ring.strands, letters[:k])
        h = conj * BraidWord(ring.strands, (core[0],)) * conj.inverse()
        return cls(len(core), kind_for_power(len(core)), word=h)

    @property
    def strands(self) -> int:
        return self.path.strands if self.path is not None else self.word.strands

    def halftwist(self) -> BraidWord:
        return halftwist_to_word(self.path) if self.path is not None else self.word

    def braid(self) -> BraidWord:
        return self.halftwist() ** self.power

    def conjugated(self, by: BraidWord) -> "SingularFactor":
        """Factor ``by^-1 H by`` with the same power, stored as a word."""
        return SingularFactor(self.power, self.kind, word=self.halftwist().conjugate(by))

    def __str__(self) -> str:
        body = str(self.path) if self.path is not None else f"word: {self.word}"
        return f"factor {self.kind} {self.power} {body}"


@dataclass(frozen=True)
class Factorization:
    """Ordered factors ``phi(delta_1), ..., phi(delta_k)`` on ``strands`` strands."""

    strands: int
    factors: tuple[SingularFactor, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.strands != self.strands:
                raise ValueError(f"factor on {f.strands} strands in a {self.strands}-strand factorization")

    def __len__(self) -> int:
        return len(self.factors)

    def product(self) -> BraidWord:
        out = BraidWord(self.strands)
        for f in self.factors:
            out = out * f.braid()
        return out


def local_model(m: int) -> Factorization:
    """Monodromy of ``y^2 = x^m`` around the origin: ``H(1,2;)^m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    f = SingularFactor(m, kind_for_power(m), path=HalfTwistPath(2, 1, 2, ""))
    return Factorization(2, (f,), label=f"y^2 = x^{m}")


@dataclass(frozen=True)
class ValidationReport:
    product_is_full_twist: bool
    exponent_sum_expected: int
    exponent_sum_actual: int
    transitive: bool
    counts: tuple[tuple[str, int], ...]
    word_factor_problems: tuple[str, ...] = field(default=())

    def lines(self) -> list[str]:
        out = [
            f"product_is_full_twist {str(self.product_is_full_twist).lower()}",
            f"exponent_sum {self.exponent_sum_actual} expected {self.exponent_sum_expected}",
            f"transitive {str(self.transitive).lower()}",
        ]
        out += [f"count {k} {n}" for k, n in self.counts]
        out += [f"problem {p}" for p in self.word_factor_problems]
        return out


def orbits(n: int, perms: Iterable[Permutation]) -> list[set[int]]:
    parent = list(range(n + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for i in range(1, n + 1):
            a, b = find(i), find(p(i))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def validate(f: Factorization) -> ValidationReport:
    """Bookkeeping report; never raises on mathematically bad input."""
    m = f.strands
    problems = []
    for idx, fac in enumerate(f.factors, 1):
        if fac.word is not None:
            h = fac.word
            if not permutation(h).is_transposition():
                problems.append(f"{idx} permutation {permutation(h)} is not a transposition")
            if exponent_sum(h) != 1:
                problems.append(f"{idx} half-twist exponent sum {exponent_sum(h)} != 1")
    prod = f.product()
    counts = Counter(fac.kind for fac in f.factors)
    return ValidationReport(
        product_is_full_twist=braids_equal(prod, full_twist(m)),
        exponent_sum_expected=m * (m - 1),
        exponent_sum_actual=exponent_sum(prod),
        transitive=len(orbits(m, (permutation(fac.braid()) for fac in f.factors))) == 1,
        counts=tuple(sorted(counts.items())),
        word_factor_problems=tuple(problems),
    )


def _check_index(f: Factorization, i: int) -> None:
    if not 1 <= i < len(f.factors):
        raise IndexError(f"Hurwitz move index {i} outside 1..{len(f.factors) - 1}")


def hurwitz_move(f: Factorization, i: int) -> Factorization:
    """``(F_i, F_{i+1}) -> (F_{i+1}, F_{i+1}^-1 F_i F_{i+1})`` (1-based ``i``)."""
    _check_index(f, i)
    fs = list(f.factors)
    a, b = fs[i - 1], fs[i]
    fs[i - 1], fs[i] = b, a.conjugated(b.braid())
    return Factorization(f.strands, tuple(fs), f.label)


def inverse_hurwitz_move(f: Factorization, i: int) -> Factorization:
    """``(F_i, F_{i+1}) -> (F_i F_{i+1} F_i^-1, F_i)``."""
    _check_index(f, i)
    fs = list(f.factors)
    a, b = fs[i - 1], fs[i]
    fs[i - 1], fs[i] = b.conjugated(a.braid().inverse()), a
    return Factorization(f.strands, tuple(fs), f.label)


# -- .bmf files -------------------------------------------------------------

def parse_bmf(text: str, label: str = "") -> Factorization:
    strands = None
    factors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if strands is None:
                key, val = line.split()
                if key != "strands":
                    raise ValueError("first line must be 'strands <m>'")
                strands = int(val)
                continue
            head, kind, eps, body = line.split(None, 3)
            if head != "factor":
                raise ValueError(f"expected 'factor', got {head!r}")
            eps = int(eps)
            if body.startswith("word:"):
                fac = SingularFactor(eps, kind, word=BraidWord.parse(body[5:], strands))
            else:
                fac = SingularFactor(eps, kind, path=HalfTwistPath.parse(body, strands))
            factors.append(fac)
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if strands is None:
        raise ParseError("missing 'strands' line")
    return Factorization(strands, tuple(factors), label)


def format_bmf(f: Factorization, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"strands {f.strands}")
    lines += [str(fac) for fac in f.factors]
    return "\n".join(lines) + "\n"


def read_bmf(path) -> Factorization:
    with open(path) as fh:
        return parse_bmf(fh.read(), label=str(path))
