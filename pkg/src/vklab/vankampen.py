"""Van Kampen presentations of plane curve complements from a factorization."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .braid import BraidWord, artin_action, conjugator
from .errors import ParseError, TransversalityError
from .monodromy import Factorization, SingularFactor, validate
from .word import FreeWord, apply, cyclic_core, free_reduce, parse_letters

__all__ = [
    "GroupPresentation",
    "affine_presentation",
    "projective_presentation",
    "shortcut_pair",
    "epsilon_relator",
    "parse_gp",
    "format_gp",
    "read_gp",
]


@dataclass(frozen=True)
class GroupPresentation:
    """``<x_1..x_g | relators>``; relators are freely and cyclically reduced.

    ``labels`` name the generators (default ``G1..Gg``).  ``not_minimal`` is
    set by simplification when it stopped on a limit.
    """

    generators: int
    relators: tuple[FreeWord, ...] = ()
    labels: tuple[str, ...] = ()
    not_minimal: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.generators < 0:
            raise ValueError("negative generator count")
        rels = []
        for r in self.relators:
            if self.generators == 0:
                raise ValueError("relators need at least one generator")
            letters = r.letters if isinstance(r, FreeWord) else tuple(r)
            core = cyclic_core(free_reduce(letters))
            if core:
                rels.append(FreeWord(self.generators, core))
        object.__setattr__(self, "relators", tuple(rels))
        labels = tuple(self.labels) or tuple(f"G{i}" for i in range(1, self.generators + 1))
        if len(labels) != self.generators:
            raise ValueError("one label per generator")
        object.__setattr__(self, "labels", labels)

    def generator(self, i: int) -> FreeWord:
        return FreeWord(self.generators, (i,))

    def with_relators(self, extra: Sequence[FreeWord]) -> "GroupPresentation":
        return GroupPresentation(self.generators, self.relators + tuple(extra), self.labels)

    def __str__(self) -> str:
        return format_gp(self).rstrip("\n")


def epsilon_relator(eps: int, a: FreeWord, b: FreeWord) -> FreeWord:
    """Relator forced by ``H^eps`` on the pair ``A, B``: ``A=B``, ``[A,B]``, ``ABA=BAB``."""
    ai, bi = a.inverse(), b.inverse()
    if eps == 1:
        return a * bi
    if eps == 2:
        return a * b * ai * bi
    if eps == 3:
        return a * b * a * bi * ai * bi
    raise ValueError("shortcut relators exist only for eps in {1, 2, 3}")


def shortcut_pair(path, m: int | None = None) -> tuple[FreeWord, FreeWord]:
    """Loops ``A`` (around ``a``) and ``B`` (around ``b``) for ``H(path)``.

    With ``H = V s_a V^-1`` the relations of ``H^eps`` are the image under
    the action of ``V^-1`` of those of ``s_a^eps``, so ``A = (G_a) V^-1`` and
    ``B = (G_{a+1}) V^-1``.
    """
    m = path.strands if m is None else m
    act = artin_action(conjugator(path).inverse(), m)
    return apply(act, FreeWord(m, (path.a,))), apply(act, FreeWord(m, (path.a + 1,)))


def _full_relators(fac: SingularFactor, m: int) -> list[FreeWord]:
    act = artin_action(fac.braid(), m)
    out = []
    for j in range(1, m + 1):
        r = act.images[j - 1] * FreeWord(m, (-j,))
        if r:
            out.append(r)
    return out


def affine_presentation(f: Factorization, mode: str = "full") -> GroupPresentation:
    """Presentation of pi_1(C^2 - S) on ``G_1..G_m``.

    ``full`` emits ``(G_j) beta * G_j^-1`` for every factor ``beta`` and every
    ``j``; ``shortcut`` emits the single relator of the cuspidal corollary per
    path-encoded factor with ``eps <= 3`` and falls back to ``full`` for the
    others (with a warning).
    """
    if mode not in ("full", "shortcut"):
        raise ValueError(f"unknown mode {mode!r}")
    m = f.strands
    rels: list[FreeWord] = []
    for idx, fac in enumerate(f.factors, 1):
        if mode == "shortcut":
            if fac.path is not None and fac.power <= 3:
                a, b = shortcut_pair(fac.path, m)
                rels.append(epsilon_relator(fac.power, a, b))
                continue
            warnings.warn(f"factor {idx} ({fac.kind}, word-encoded or eps>3): using full relators", stacklevel=2)
        rels.extend(_full_relators(fac, m))
    return GroupPresentation(m, tuple(rels))


def projective_presentation(p: GroupPresentation, f: Factorization) -> GroupPresentation:
    """Add ``G_m ... G_1`` to an affine presentation of ``f``.

    Refused with :class:`TransversalityError` unless the factorization
    multiplies to the full twist.
    """
    if p.generators != f.strands:
        raise ValueError("presentation does not come from this factorization")
    if not validate(f).product_is_full_twist:
        raise TransversalityError(
            "factorization product is not the full twist; the curve is not "
            "transversal to the line at infinity"
        )
    boundary = FreeWord(p.generators, tuple(range(p.generators, 0, -1)))
    return p.with_relators([boundary])


# -- .gp files --------------------------------------------------------------

def format_gp(p: GroupPresentation) -> str:
    lines = []
    if p.labels != tuple(f"G{i}" for i in range(1, p.generators + 1)):
        lines.append("# labels " + " ".join(p.labels))
    lines.append(f"generators {p.generators}")
    lines += [f"rel {r}" for r in p.relators]
    return "\n".join(lines) + "\n"


def parse_gp(text: str) -> GroupPresentation:
    g = None
    labels: tuple[str, ...] = ()
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("# labels"):
            labels = tuple(line.split()[2:])
            continue
        if not line or line.startswith("#"):
            continue
        try:
            key, _, rest = line.partition(" ")
            if key == "generators":
                g = int(rest)
            elif key == "rel":
                if g is None:
                    raise ValueError("'rel' before 'generators'")
                rels.append(FreeWord(g, parse_letters(rest)))
            else:
                raise ValueError(f"unknown keyword {key!r}")
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if g is None:
        raise ParseError("missing 'generators' line")
    try:
        return GroupPresentation(g, tuple(rels), labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_gp(path) -> GroupPresentation:
    with open(path) as fh:
        return parse_gp(fh.read())
