"""Analysis of finite presentations.

Tietze simplification, abelian invariants via an exact Smith normal form,
Felsch-style Todd-Coxeter coset enumeration, Reidemeister-Schreier subgroup
presentations and checks of homomorphisms into symmetric groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .braid import Permutation
from .monodromy import orbits
from .vankampen import GroupPresentation
from .word import FreeWord, cyclic_core, free_reduce

__all__ = [
    "AbelianInvariants",
    "CosetTable",
    "HomCheck",
    "smith_invariants",
    "abelianization",
    "relator_matrix",
    "tietze_simplify",
    "todd_coxeter",
    "reidemeister_schreier",
    "verify_hom",
    "canonical_relator",
]


# -- Smith normal form ------------------------------------------------------

def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries ``d_1 | d_2 | ...`` of the Smith form.

    Pure Python integers, so entries never overflow.
    """
    a = [list(map(int, row)) for row in matrix]
    a = [row for row in a if any(row)]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if done:
                # divisibility: fold a non-multiple into the pivot row
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (t, t)
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | ... | d_k``, each ``>= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relator_matrix(p: GroupPresentation) -> list[list[int]]:
    return [r.exponent_vector() for r in p.relators]


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    diag = smith_invariants(relator_matrix(p))
    return AbelianInvariants(p.generators - len(diag), tuple(d for d in diag if d != 1))


# -- Tietze transformations ---------------------------------------------------

def canonical_relator(letters: Sequence[int]) -> tuple[int, ...]:
    """Least cyclic rotation of the word or its inverse (length-then-lex)."""
    w = tuple(letters)
    if not w:
        return w
    winv = tuple(-a for a in reversed(w))
    rots = [w[i:] + w[:i] for i in range(len(w))] + [winv[i:] + winv[:i] for i in range(len(w))]
    return min(rots, key=_lexkey)


def _lexkey(w: Sequence[int]):
    # x1 < x1^-1 < x2 < ...
    return tuple(2 * abs(a) - (a > 0) for a in w)


def _sortkey(w: Sequence[int]):
    return (len(w), _lexkey(w))


def _normalize(rels):
    seen = set()
    out = []
    for r in rels:
        c = cyclic_core(free_reduce(r))
        if not c:
            continue
        key = canonical_relator(c)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    out.sort(key=_sortkey)
    return out


def _substitute(rels, gen, image):
    inv = tuple(-a for a in reversed(image))
    out = []
    for r in rels:
        w = []
        for a in r:
            if a == gen:
                w.extend(image)
            elif a == -gen:
                w.extend(inv)
            else:
                w.append(a)
        out.append(free_reduce(w))
    return out


def _find_elimination(rels, max_length):
    """Shortest relator containing some generator exactly once."""
    total = sum(len(r) for r in rels)
    for r in rels:
        counts: dict[int, int] = {}
        for a in r:
            counts[abs(a)] = counts.get(abs(a), 0) + 1
        for g in sorted((g for g, c in counts.items() if c == 1), reverse=True):
            k = next(i for i, a in enumerate(r) if abs(a) == g)
            # r = u x^e v  =>  x^e = u^-1 v^-1  =>  x = (v u)^-e
            rest = r[k + 1 :] + r[:k]
            image = rest if r[k] < 0 else tuple(-a for a in reversed(rest))
            occurrences = sum(1 for s in rels for a in s if abs(a) == g) - 1
            if total + occurrences * (len(image) - 1) - len(r) > max_length:
                continue
            return r, g, image
    return None


def _shorten_once(rels):
    """Replace a long piece of one relator using another; strictly shortening."""
    for si, s in enumerate(rels):
        n = len(s)
        sinv = tuple(-a for a in reversed(s))
        variants = [s[i:] + s[:i] for i in range(n)] + [sinv[i:] + sinv[:i] for i in range(n)]
        for ti, t in enumerate(rels):
            if ti == si or len(t) < n // 2 + 1:
                continue
            m = len(t)
            doubled = t + t
            for k in range(n, n // 2, -1):
                if k > m:
                    continue
                for v in variants:
                    u = v[:k]
                    repl = tuple(-a for a in reversed(v[k:]))
                    for start in range(m):
                        if doubled[start : start + k] == u:
                            rotated = doubled[start : start + m]
                            new = repl + rotated[k:]
                            new = cyclic_core(free_reduce(new))
                            if len(new) < m:
                                out = list(rels)
                                out[ti] = new
                                return out
    return None


def tietze_simplify(
    p: GroupPresentation,
    max_rounds: int = 200,
    max_length: int = 20000,
    check: bool = False,
) -> GroupPresentation:
    """Simplify ``p`` to a presentation of an isomorphic group.

    Steps, repeated to a fixpoint: free and cyclic reduction, removal of
    duplicate relators up to cyclic permutation and inversion, elimination of
    a generator occurring exactly once in a relator (shortest relator first;
    within it the highest generator index), and strictly length-decreasing
    substitution of one relator's long piece into another.  ``not_minimal``
    is set when a limit stopped the process.  With ``check`` the abelian
    invariants are compared after every step.
    """
    g = p.generators
    labels = list(p.labels)
    rels = _normalize([r.letters for r in p.relators])
    ref = abelianization(p) if check else None
    hit_limit = False
    for _ in range(max_rounds):
        changed = False
        elim = _find_elimination(rels, max_length)
        if elim is not None:
            r, gen, image = elim
            rels = [s for s in rels if s is not r]
            rels = _substitute(rels, gen, image)
            # renumber generators above gen
            rels = [tuple(a - 1 if abs(a) > gen and a > 0 else a + 1 if abs(a) > gen else a for a in s) for s in rels]
            del labels[gen - 1]
            g -= 1
            rels = _normalize(rels)
            changed = True
        else:
            short = _shorten_once(rels)
            if short is not None:
                rels = _normalize(short)
                changed = True
            elif _find_elimination(rels, float("inf")) is not None:
                hit_limit = True
        if check and changed:
            cur = abelianization(GroupPresentation(g, tuple(FreeWord(g, r) for r in rels) if g else (), tuple(labels)))
            if cur != ref:
                raise AssertionError(f"abelianization changed: {ref} -> {cur}")
        if not changed:
            break
    else:
        hit_limit = True
    return GroupPresentation(
        g,
        tuple(FreeWord(g, r) for r in rels) if g else (),
        tuple(labels),
        not_minimal=hit_limit,
    )


# -- coset enumeration --------------------------------------------------------

def _columns(letters: Sequence[int]) -> list[int]:
    return [2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1 for a in letters]


@dataclass
class CosetTable:
    """Coset table of ``subgroup`` in the group of ``presentation``.

    ``table[c][col]`` is the coset reached from ``c`` by column ``col``;
    column ``2i`` is ``x_{i+1}`` and ``2i+1`` its inverse.  Coset 0 is the
    subgroup itself.  ``status`` is ``"complete"`` or ``"indeterminate"``.
    """

    presentation: GroupPresentation
    subgroup: tuple[FreeWord, ...]
    table: list[list[int]]
    status: str
    bound: int

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def index(self) -> int | None:
        return len(self.table) if self.complete else None

    def act(self, coset: int, w: FreeWord) -> int:
        for col in _columns(w.letters):
            coset = self.table[coset][col]
        return coset

    def to_tsv(self) -> str:
        names = []
        for lab in self.presentation.labels:
            names += [lab, lab + "^-1"]
        lines = ["coset\t" + "\t".join(names)]
        for c, row in enumerate(self.table, 1):
            lines.append(str(c) + "\t" + "\t".join("-" if d is None else str(d + 1) for d in row))
        return "\n".join(lines) + "\n"


class _Enumerator:
    def __init__(self, p: GroupPresentation, subgroup, max_cosets: int):
        self.ncols = 2 * p.generators
        self.max = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.deductions: list[tuple[int, int]] = []
        self.subgroup = [_columns(w.letters) for w in subgroup]
        # cyclic conjugates of relators and their inverses, keyed by first column
        self.conj: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in p.relators:
            cols = _columns(r.letters)
            inv = [c ^ 1 for c in reversed(cols)]
            for w in (cols, inv):
                for i in range(len(w)):
                    rot = tuple(w[i:] + w[:i])
                    if rot not in seen:
                        seen.add(rot)
                        self.conj[rot[0]].append(list(rot))

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def new_coset(self) -> int:
        if self.live >= self.max:
            raise OverflowError
        self.table.append([None] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def define(self, c: int, col: int) -> None:
        d = self.new_coset()
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        self.deductions.append((c, col))

    def scan(self, alpha: int, w: Sequence[int], fill: bool = False) -> None:
        t = self.table
        while True:
            f, i = alpha, 0
            b, j = alpha, len(w) - 1
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != alpha:
                    self.coincidence(f, alpha)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a, b = self.rep(k), self.rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        k = 0
        while k < len(queue):
            g = queue[k]
            k += 1
            for col in range(self.ncols):
                d = t[g][col]
                if d is None:
                    continue
                t[d][col ^ 1] = None
                mu, nu = self.rep(g), self.rep(d)
                if t[mu][col] is not None:
                    self.merge(nu, t[mu][col], queue)
                elif t[nu][col ^ 1] is not None:
                    self.merge(mu, t[nu][col ^ 1], queue)
                else:
                    t[mu][col] = nu
                    t[nu][col ^ 1] = mu
                    self.deductions.append((mu, col))

    def process_deductions(self) -> None:
        while self.deductions:
            c, col = self.deductions.pop()
            if not self.alive(c):
                continue
            for w in self.conj[col]:
                if not self.alive(c):
                    break
                self.scan(c, w)
            d = self.table[c][col] if self.alive(c) else None
            if d is not None and self.alive(d):
                for w in self.conj[col ^ 1]:
                    if not self.alive(d):
                        break
                    self.scan(d, w)
            for w in self.subgroup:
                self.scan(0, w)

    def run(self) -> bool:
        try:
            for w in self.subgroup:
                self.scan(0, w, fill=True)
                self.process_deductions()
            c = 0
            while c < len(self.table):
                if self.alive(c):
                    for col in range(self.ncols):
                        if self.alive(c) and self.table[c][col] is None:
                            self.define(c, col)
                            self.process_deductions()
                c += 1
        except OverflowError:
            return False
        return True

    def compact(self) -> list[list[int]]:
        live = [c for c in range(len(self.table)) if self.alive(c)]
        new = {c: i for i, c in enumerate(live)}
        return [[new[self.table[c][col]] for col in range(self.ncols)] for c in live]


def todd_coxeter(
    p: GroupPresentation,
    subgroup: Sequence[FreeWord] = (),
    max_cosets: int = 100_000,
) -> CosetTable:
    """Enumerate the cosets of ``<subgroup>`` in the group of ``p``.

    Felsch strategy: the first undefined entry (coset order, then column
    order) is defined and every deduction is scanned immediately against the
    relator conjugates beginning with that column, in relator list order.
    If the number of live cosets would exceed ``max_cosets`` the result is
    ``indeterminate``.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    sub = tuple(subgroup)
    for w in sub:
        if w.rank != p.generators:
            raise ValueError("subgroup word rank differs from presentation")
    if p.generators == 0:
        return CosetTable(p, sub, [[]], "complete", max_cosets)
    e = _Enumerator(p, sub, max_cosets)
    if e.run():
        return CosetTable(p, sub, e.compact(), "complete", max_cosets)
    return CosetTable(p, sub, [], "indeterminate", max_cosets)


# -- Reidemeister-Schreier ----------------------------------------------------

@dataclass
class SchreierData:
    """Spanning tree and Schreier generator numbering for a complete table."""

    tree: set[tuple[int, int]]  # (coset, positive generator index) edges in the tree
    generators: list[tuple[int, int]]  # Schreier generator k -> (coset, generator)
    number: dict[tuple[int, int], int] = field(default_factory=dict)


def schreier_data(t: CosetTable) -> SchreierData:
    n = len(t.table)
    ngen = t.presentation.generators
    seen = [False] * n
    seen[0] = True
    order = [0]
    tree = set()
    for c in order:
        for col in range(2 * ngen):
            d = t.table[c][col]
            if not seen[d]:
                seen[d] = True
                order.append(d)
                tree.add((c, col // 2 + 1) if col % 2 == 0 else (d, col // 2 + 1))
    gens = [(c, i) for c in range(n) for i in range(1, ngen + 1) if (c, i) not in tree]
    return SchreierData(tree, gens, {e: k for k, e in enumerate(gens, 1)})


def rewrite(t: CosetTable, data: SchreierData, letters: Sequence[int], start: int = 0) -> tuple[int, ...]:
    """Schreier-generator word for the path of ``letters`` from coset ``start``."""
    out = []
    c = start
    for a in letters:
        if a > 0:
            k = data.number.get((c, a))
            if k:
                out.append(k)
            c = t.table[c][2 * (a - 1)]
        else:
            d = t.table[c][2 * (-a - 1) + 1]
            k = data.number.get((d, -a))
            if k:
                out.append(-k)
            c = d
    return free_reduce(out)


def reidemeister_schreier(t: CosetTable) -> GroupPresentation:
    """Presentation of the subgroup on its Schreier generators.

    Generator ``k`` is the loop ``t_c x_i t_{c x_i}^-1`` for a non-tree edge
    ``(c, x_i)``; relators are every relator rewritten from every coset.
    """
    if not t.complete:
        raise ValueError("Reidemeister-Schreier needs a complete coset table")
    data = schreier_data(t)
    ng = len(data.generators)
    labels = tuple(f"{t.presentation.labels[i - 1]}@{c + 1}" for c, i in data.generators)
    if ng == 0:
        return GroupPresentation(0, (), ())
    rels = []
    for c in range(len(t.table)):
        for r in t.presentation.relators:
            w = rewrite(t, data, r.letters, c)
            if w:
                rels.append(FreeWord(ng, w))
    return GroupPresentation(ng, tuple(rels), labels)


# -- homomorphisms to S_n -----------------------------------------------------

@dataclass(frozen=True)
class HomCheck:
    holds: bool
    transitive: bool
    failing: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def evaluate(w: FreeWord, images: Sequence[Permutation]) -> Permutation:
    n = images[0].degree
    out = Permutation.identity(n)
    inv = {}
    for a in w.letters:
        if a > 0:
            out = out * images[a - 1]
        else:
            if -a not in inv:
                inv[-a] = images[-a - 1].inverse()
            out = out * inv[-a]
    return out


def verify_hom(p: GroupPresentation, images: Sequence[Permutation]) -> HomCheck:
    """Whether ``x_i -> images[i]`` kills every relator; also transitivity."""
    if len(images) != p.generators:
        raise ValueError("one image per generator required")
    if not images:
        return HomCheck(True, True)
    n = images[0].degree
    if any(im.degree != n for im in images):
        raise ValueError("images have different degrees")
    failing = tuple(k for k, r in enumerate(p.relators, 1) if not evaluate(r, images).is_identity())
    return HomCheck(not failing, len(orbits(n, images)) == 1, failing)
