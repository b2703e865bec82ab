"""Fundamental group of the Galois cover attached to a branch curve.

For a generic projection of degree ``n`` the loops ``G_j`` map to
transpositions of the sheets, and the Galois cover has fundamental group

    ker( pi_1(C^2 - S) / <<G_j^2>>  ->  S_n ).

The pipeline adjoins the squares, checks by coset enumeration that the
quotient is finite, builds the coset table of the kernel from the
permutation images (cosets are the elements of the image group) and runs
Reidemeister-Schreier, Tietze simplification and abelianization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .braid import Permutation
from .errors import ParseError
from .presentation import (
    AbelianInvariants,
    CosetTable,
    abelianization,
    reidemeister_schreier,
    tietze_simplify,
    todd_coxeter,
    verify_hom,
)
from .vankampen import GroupPresentation
from .word import FreeWord

__all__ = [
    "SheetAssignment",
    "GaloisResult",
    "squares_quotient",
    "image_group",
    "kernel_coset_table",
    "galois_group",
    "parse_sheets",
    "format_sheets",
    "read_sheets",
]


@dataclass(frozen=True)
class SheetAssignment:
    """One transposition of ``S_degree`` per presentation generator."""

    degree: int
    images: tuple[Permutation, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"G{i}" for i in range(1, len(self.images) + 1)))
        if len(self.labels) != len(self.images):
            raise ValueError("one label per image")
        for lab, im in zip(self.labels, self.images):
            if im.degree != self.degree:
                raise ValueError(f"{lab}: permutation not in S_{self.degree}")
            if not im.is_transposition():
                raise ValueError(f"{lab}: {im} is not a transposition")

    def check(self, p: GroupPresentation) -> None:
        """Raise ``ValueError`` unless this is a transitive homomorphism from ``p``."""
        if len(self.images) != p.generators:
            raise ValueError(f"{len(self.images)} sheet images for {p.generators} generators")
        if self.labels != p.labels:
            raise ValueError(f"sheet labels {' '.join(self.labels)} do not match presentation labels")
        hom = verify_hom(p, self.images)
        if not hom.holds:
            raise ValueError(f"relators {list(hom.failing)} do not map to the identity")
        if not hom.transitive:
            raise ValueError("image of the assignment is not transitive")


def parse_sheets(text: str) -> SheetAssignment:
    """Lines ``sheet G1 (1 2)``; an optional ``degree n`` line fixes ``n``."""
    entries = []
    degree = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"sheet\s+(\S+)\s+(\(.*\))", line)
        d = re.fullmatch(r"degree\s+(\d+)", line)
        if d:
            degree = int(d.group(1))
        elif m:
            points = [int(k) for k in re.findall(r"\d+", m.group(2))]
            entries.append((lineno, m.group(1), m.group(2), points))
        else:
            raise ParseError(f"line {lineno}: expected 'sheet <label> (<i> <j>)'")
    if not entries:
        raise ParseError("no sheet lines")
    if degree is None:
        degree = max(max(pts, default=1) for *_, pts in entries)
    images, labels = [], []
    for lineno, lab, cyc, _ in entries:
        try:
            images.append(Permutation.parse(cyc, degree))
        except (ValueError, IndexError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        labels.append(lab)
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate sheet label")
    try:
        return SheetAssignment(degree, tuple(images), tuple(labels))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_sheets(a: SheetAssignment) -> str:
    lines = [f"degree {a.degree}"]
    lines += [f"sheet {lab} {im}" for lab, im in zip(a.labels, a.images)]
    return "\n".join(lines) + "\n"


def read_sheets(path) -> SheetAssignment:
    with open(path) as fh:
        return parse_sheets(fh.read())


def squares_quotient(p: GroupPresentation) -> GroupPresentation:
    """``p`` with every generator squared adjoined."""
    return p.with_relators([FreeWord(p.generators, (i, i)) for i in range(1, p.generators + 1)])


def image_group(images: Sequence[Permutation]) -> list[Permutation]:
    """Elements of ``<images>`` in breadth-first order from the identity."""
    n = images[0].degree
    ident = Permutation.identity(n)
    elements, seen = [ident], {ident}
    for g in elements:
        for s in images:
            h = g * s
            if h not in seen:
                seen.add(h)
                elements.append(h)
    return elements


def kernel_coset_table(q: GroupPresentation, images: Sequence[Permutation]) -> CosetTable:
    """Coset table of the kernel of ``x_i -> images[i]``.

    Cosets are the image elements with the right regular action; coset 0 is
    the identity.  The ``subgroup`` field is left empty because the kernel
    is described by the table rather than by generators.
    """
    elements = image_group(images)
    index = {g: k for k, g in enumerate(elements)}
    inverses = [s.inverse() for s in images]
    table = []
    for g in elements:
        row = []
        for s, si in zip(images, inverses):
            row += [index[g * s], index[g * si]]
        table.append(row)
    return CosetTable(q, (), table, "complete", len(elements))


@dataclass(frozen=True)
class GaloisResult:
    status: str  # "complete" or "indeterminate"
    image_order: int
    quotient_order: int | None = None
    kernel: GroupPresentation | None = None
    simplified: GroupPresentation | None = None
    abelian: AbelianInvariants | None = None

    @property
    def trivial(self) -> bool | None:
        """``True`` when the cover is simply connected, ``None`` if undecided."""
        if self.status != "complete":
            return None
        if self.simplified.generators == 0:
            return True
        if not self.abelian.is_trivial():
            return False
        return None

    def verdict(self) -> str:
        if self.status != "complete":
            return "pi1 cover: indeterminate"
        t = self.trivial
        if t:
            return "pi1 cover: trivial"
        if t is False:
            return f"pi1 cover: nontrivial (abelianization {self.abelian})"
        return "pi1 cover: perfect, presentation not reduced to the trivial group"

    def lines(self) -> list[str]:
        out = [f"status {self.status}", f"image_order {self.image_order}"]
        if self.quotient_order is not None:
            out.append(f"quotient_order {self.quotient_order}")
        if self.kernel is not None:
            out.append(f"kernel_schreier generators {self.kernel.generators} relators {len(self.kernel.relators)}")
            s = self.simplified
            out.append(f"kernel_simplified generators {s.generators} relators {len(s.relators)}")
            out += [f"kernel_rel {r}" for r in s.relators]
            out.append(f"kernel_abelianization {self.abelian}")
        out.append(self.verdict())
        return out


def galois_group(p: GroupPresentation, a: SheetAssignment, max_cosets: int = 100_000) -> GaloisResult:
    """Presentation and abelianization of the Galois cover's fundamental group.

    ``p`` is an affine presentation on ``G_1..G_m``.  Returns an
    ``indeterminate`` result when the quotient by the squares does not
    enumerate within ``max_cosets``.
    """
    a.check(p)
    q = squares_quotient(p)
    order = len(image_group(a.images))
    tc = todd_coxeter(q, (), max_cosets)
    if not tc.complete:
        return GaloisResult("indeterminate", order)
    table = kernel_coset_table(q, a.images)
    kernel = reidemeister_schreier(table)
    simplified = tietze_simplify(kernel)
    return GaloisResult("complete", order, tc.index, kernel, simplified, abelianization(simplified))
