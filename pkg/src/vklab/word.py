"""Free groups of finite rank: reduced words and endomorphisms.

A letter is stored as a signed generator index: ``+i`` is ``x_i`` and ``-i``
is ``x_i^-1`` (indices are 1-based).  Words are always kept freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "FreeWord",
    "FreeEndomorphism",
    "reduce",
    "multiply",
    "invert",
    "cyclic_reduce",
    "apply",
    "parse_word",
    "format_letters",
    "parse_letters",
]


def _as_signed(letter) -> int:
    if isinstance(letter, tuple):
        index, exp = letter
        if exp not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {exp}")
        return index if exp == 1 else -index
    return int(letter)


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs of signed letters (stack based)."""
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_core(letters: Sequence[int]) -> tuple[int, ...]:
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return tuple(letters[i : j + 1])


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in the free group on ``x_1 .. x_rank``."""

    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        letters = tuple(_as_signed(a) for a in self.letters)
        for a in letters:
            if a == 0 or abs(a) > self.rank:
                raise IndexError(f"generator index {abs(a)} out of range 1..{self.rank}")
        object.__setattr__(self, "letters", free_reduce(letters))

    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, i: int, exp: int = 1) -> "FreeWord":
        return cls(rank, (i if exp > 0 else -i,) * abs(exp))

    @classmethod
    def parse(cls, text: str, rank: int, prefix: str = "x") -> "FreeWord":
        return cls(rank, parse_letters(text, prefix))

    def pairs(self) -> list[tuple[int, int]]:
        """Letters as ``(index, exponent)`` pairs."""
        return [(abs(a), 1 if a > 0 else -1) for a in self.letters]

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __pow__(self, k: int) -> "FreeWord":
        base = self if k >= 0 else invert(self)
        return FreeWord(self.rank, base.letters * abs(k))

    def inverse(self) -> "FreeWord":
        return invert(self)

    def exponent_vector(self) -> list[int]:
        v = [0] * self.rank
        for a in self.letters:
            v[abs(a) - 1] += 1 if a > 0 else -1
        return v

    def __str__(self) -> str:
        return format_letters(self.letters, "x")

    def __repr__(self) -> str:
        return f"FreeWord({self.rank}, '{self}')"


_TOKEN = re.compile(r"^([A-Za-z]+)(\d+)(\^(-?\d+))?$")


def parse_letters(text: str, prefix: str = "x") -> tuple[int, ...]:
    """Parse ``x1 x2^-1 x1`` (or ``s1 s2^-1`` with another prefix).

    ``^k`` for any nonzero integer is accepted and expanded.  An empty string
    or ``1`` is the identity.
    """
    text = text.strip()
    if text in ("", "1"):
        return ()
    out: list[int] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m or m.group(1) != prefix:
            raise ValueError(f"cannot parse letter {tok!r}")
        i = int(m.group(2))
        if i < 1:
            raise ValueError(f"generator index must be >= 1 in {tok!r}")
        k = int(m.group(4)) if m.group(4) is not None else 1
        if k == 0:
            raise ValueError(f"zero exponent in {tok!r}")
        out.extend([i if k > 0 else -i] * abs(k))
    return tuple(out)


def format_letters(letters: Sequence[int], prefix: str = "x") -> str:
    return " ".join(f"{prefix}{a}" if a > 0 else f"{prefix}{-a}^-1" for a in letters)


def parse_word(text: str, rank: int) -> FreeWord:
    return FreeWord.parse(text, rank)


def reduce(letters: Iterable, rank: int) -> FreeWord:
    """Freely reduce a raw sequence of letters (signed ints or (index, ±1) pairs)."""
    return FreeWord(rank, tuple(_as_signed(a) for a in letters))


def _check_rank(a: FreeWord, b: FreeWord) -> None:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")


def multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    _check_rank(a, b)
    return FreeWord(a.rank, a.letters + b.letters)


def invert(a: FreeWord) -> FreeWord:
    return FreeWord(a.rank, tuple(-x for x in reversed(a.letters)))


def cyclic_reduce(a: FreeWord) -> FreeWord:
    """Conjugate of ``a`` whose first and last letters do not cancel."""
    return FreeWord(a.rank, cyclic_core(a.letters))


@dataclass(frozen=True)
class FreeEndomorphism:
    """Endomorphism of a free group given by the images of its generators."""

    rank: int
    images: tuple[FreeWord, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.rank:
            raise ValueError("need one image per generator")
        for w in images:
            if w.rank != self.rank:
                raise ValueError("image rank differs from domain rank")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, rank: int) -> "FreeEndomorphism":
        return cls(rank, tuple(FreeWord.generator(rank, i) for i in range(1, rank + 1)))

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply(self, w)

    def then(self, other: "FreeEndomorphism") -> "FreeEndomorphism":
        """Apply ``self`` first, then ``other`` (right-action composition)."""
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        return FreeEndomorphism(self.rank, tuple(apply(other, w) for w in self.images))

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, 1))


def apply(e: FreeEndomorphism, w: FreeWord) -> FreeWord:
    """Substitute ``e``'s generator images into ``w`` and reduce."""
    if e.rank != w.rank:
        raise ValueError(f"rank mismatch: {e.rank} vs {w.rank}")
    images = [im.letters for im in e.images]
    inverses: dict[int, tuple[int, ...]] = {}
    out: list[int] = []
    for a in w.letters:
        if a > 0:
            seq = images[a - 1]
        else:
            seq = inverses.get(-a)
            if seq is None:
                seq = tuple(-x for x in reversed(images[-a - 1]))
                inverses[-a] = seq
        for x in seq:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return FreeWord(e.rank, tuple(out))
