"""Specialized generic matrices and the determinantal ideal families built on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence, Union

from .permcore import (
    Cell,
    PartialPermutation,
    Permutation,
    RankTable,
    essential_set,
    last_ascent,
    last_descent,
    rothe_diagram,
)
from .polyalg import (
    ONE,
    ZERO,
    GradingMap,
    Polynomial,
    TermOrder,
    Var,
    determinant,
    unit_vector,
    vsub,
)

PATCH = "PatchBminusG"
KL = "KLBminusG"
GMODB = "KLGmodBplus"
GENERIC = "Generic"

_CONVENTION_ALIASES = {
    "patch": PATCH,
    "kl": KL,
    "gmodb": GMODB,
    "generic": GENERIC,
    PATCH: PATCH,
    KL: KL,
    GMODB: GMODB,
    GENERIC: GENERIC,
}


def convention_name(c: str) -> str:
    try:
        return _CONVENTION_ALIASES[c]
    except KeyError:
        raise ValueError(f"unknown convention {c!r}") from None


class GenericMatrix:
    """n x n grid of constants and variables, with the permutation it came from."""

    def __init__(self, entries: Sequence[Sequence[Polynomial]], convention: str, v: Optional[Permutation] = None):
        self.entries: tuple[tuple[Polynomial, ...], ...] = tuple(tuple(row) for row in entries)
        self.n = len(self.entries)
        self.convention = convention
        self.v = v
        self._minors: dict = {}

    def entry(self, r: int, c: int) -> Polynomial:
        return self.entries[r - 1][c - 1]

    def variables(self) -> list[Var]:
        out = []
        for row in self.entries:
            for e in row:
                out.extend(sorted(e.variables()))
        return out

    def swap_columns(self, b: int) -> "GenericMatrix":
        rows = []
        for row in self.entries:
            row = list(row)
            row[b - 1], row[b] = row[b], row[b - 1]
            rows.append(row)
        return GenericMatrix(rows, self.convention, self.v)

    def map_entries(self, f: Callable[[Polynomial], Polynomial]) -> "GenericMatrix":
        return GenericMatrix([[f(e) for e in row] for row in self.entries], self.convention, self.v)

    def minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        key = (rows, cols)
        if key not in self._minors:
            self._minors[key] = determinant([[self.entry(r, c) for c in cols] for r in rows])
        return self._minors[key]

    def rows_text(self) -> list[list[str]]:
        out = []
        for row in self.entries:
            cells = []
            for e in row:
                if e.is_constant():
                    cells.append(str(e.constant_value()))
                else:
                    (v,) = e.variables()
                    cells.append(v.short())
            out.append(cells)
        return out

    def __str__(self) -> str:
        cells = self.rows_text()
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def build_matrix(v: Permutation, convention: str = PATCH) -> GenericMatrix:
    convention = convention_name(convention)
    n = v.n
    if convention == GENERIC:
        return GenericMatrix([[Polynomial.var(Var(i, j, "x")) for j in range(1, n + 1)] for i in range(1, n + 1)], GENERIC, v)
    sym = "z" if convention == PATCH else "x"
    grid: list[list[Optional[Polynomial]]] = [[None] * n for _ in range(n)]
    for i in range(1, n + 1):
        one_row = n - v(i) + 1 if convention == GMODB else v(i)
        grid[one_row - 1][i - 1] = ONE
        for r in range(one_row + 1, n + 1):
            grid[r - 1][i - 1] = ZERO
        if convention in (KL, GMODB):
            for a in range(i + 1, n + 1):
                grid[one_row - 1][a - 1] = ZERO
    for r in range(n):
        for c in range(n):
            if grid[r][c] is None:
                grid[r][c] = Polynomial.var(Var(r + 1, c + 1, sym))
    return GenericMatrix(grid, convention, v)


def y_variables(v: Permutation) -> list[Var]:
    """Variables z_{v(i),a} with a > i that are present in the patch matrix."""
    m = build_matrix(v, PATCH)
    present = set(m.variables())
    out = []
    for i in range(1, v.n + 1):
        for a in range(i + 1, v.n + 1):
            z = Var(v(i), a, "z")
            if z in present:
                out.append(z)
    return out


def _column_major(vars_: Iterable[Var]) -> list[Var]:
    return sorted(vars_, key=lambda x: (-x.col, x.row))


def term_order(v: Permutation, convention: str = PATCH) -> TermOrder:
    """Lex order: non-y block before y block, each by columns right to left, top to bottom."""
    convention = convention_name(convention)
    variables = build_matrix(v, convention).variables()
    if convention != PATCH:
        return TermOrder(_column_major(variables))
    ys = set(y_variables(v))
    xs = [x for x in variables if x not in ys]
    return TermOrder(_column_major(xs) + _column_major(ys))


def grading(v: Permutation, convention: str = PATCH) -> GradingMap:
    """Torus weights: e_{v^-1(i)} - e_j for B-minus matrices, e_{v(j)} - e_{n-i+1} for G/B-plus."""
    convention = convention_name(convention)
    n = v.n
    vinv = v.inverse()
    degs = {}
    for x in build_matrix(v, convention).variables():
        if convention == GMODB:
            degs[x] = vsub(unit_vector(v(x.col), n), unit_vector(n - x.row + 1, n))
        elif convention == GENERIC:
            degs[x] = vsub(unit_vector(x.row, n), unit_vector(x.col, n))
        else:
            degs[x] = vsub(unit_vector(vinv(x.row), n), unit_vector(x.col, n))
    return GradingMap(degs, n)


def z_max(v: Permutation, convention: str = PATCH) -> Optional[Var]:
    """Position (v(b+1), b), b the last descent (last ascent for G/B-plus)."""
    convention = convention_name(convention)
    if convention == GMODB:
        b = last_ascent(v)
        if b is None:
            return None
        return Var(v.n - v(b + 1) + 1, b, "x")
    b = last_descent(v)
    if b is None:
        return None
    return Var(v(b + 1), b, "z" if convention == PATCH else "x")


Provenance = tuple[Cell, tuple[int, ...], tuple[int, ...]]


@dataclass
class GeneratorSet:
    """Minors presenting an ideal, with where each came from.

    Every nonzero minor is kept (deduplicated up to sign). ``is_unit`` is
    set when one of them is a nonzero constant.
    """

    ambient: Optional[GenericMatrix]
    order: TermOrder
    generators: list[Polynomial]
    provenance: list[Provenance]
    label: str = ""

    @property
    def is_unit(self) -> bool:
        return any(g.is_unit() for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def ring(self) -> tuple[Var, ...]:
        return self.order.ranking

    def polys(self) -> list[Polynomial]:
        return list(self.generators)

    def variables(self) -> frozenset:
        out: set = set()
        for g in self.generators:
            out |= g.variables()
        return frozenset(out)

    def transformed(
        self,
        f: Callable[[Polynomial], Polynomial],
        order: Optional[TermOrder] = None,
        ambient: Optional[GenericMatrix] = None,
        label: Optional[str] = None,
    ) -> "GeneratorSet":
        gens, prov = _dedupe((f(g), p) for g, p in zip(self.generators, self.provenance))
        return GeneratorSet(ambient, order or self.order, gens, prov, self.label if label is None else label)

    def to_json(self, order: Optional[TermOrder] = None) -> dict:
        order = order or self.order
        return {
            "label": self.label,
            "unit": self.is_unit,
            "generators": [
                {
                    "poly": g.to_str(order),
                    "box": list(box),
                    "rows": list(rows),
                    "cols": list(cols),
                }
                for g, (box, rows, cols) in zip(self.generators, self.provenance)
            ],
        }

    def pretty(self) -> str:
        if self.is_unit:
            return "unit ideal"
        if self.is_zero:
            return "zero ideal"
        return "<" + ", ".join(g.to_str(self.order) for g in self.generators) + ">"


def _dedupe(items: Iterable[tuple[Polynomial, Provenance]]) -> tuple[list[Polynomial], list[Provenance]]:
    seen = set()
    gens, prov = [], []
    for g, p in items:
        if g.is_zero():
            continue
        key = g.normalized_sign()
        if key in seen:
            continue
        seen.add(key)
        gens.append(g)
        prov.append(p)
    return gens, prov


def _rank_source(w: Union[Permutation, PartialPermutation]) -> PartialPermutation:
    return w.matrix() if isinstance(w, Permutation) else w


def ideal_generators(
    m: GenericMatrix,
    w: Union[Permutation, PartialPermutation],
    essential_only: bool = True,
    order: Optional[TermOrder] = None,
    label: str = "",
) -> GeneratorSet:
    """Minors of size 1 + r_pq(w) in the north-west p x q block of ``m``."""
    pp = _rank_source(w)
    if pp.m > m.n or pp.n > m.n:
        raise ValueError("rank source larger than the matrix")
    ranks = RankTable(pp)
    if essential_only:
        boxes = sorted(essential_set(rothe_diagram(pp)))
    else:
        boxes = [(p, q) for p in range(1, pp.m + 1) for q in range(1, pp.n + 1)]
    items = []
    for p, q in boxes:
        t = ranks(p, q) + 1
        if t > min(p, q):
            continue
        for rows in combinations(range(1, p + 1), t):
            for cols in combinations(range(1, q + 1), t):
                items.append((m.minor(rows, cols), ((p, q), rows, cols)))
    gens, prov = _dedupe(items)
    if order is None:
        order = TermOrder(_column_major(m.variables()))
    return GeneratorSet(m, order, gens, prov, label)


def patch_ideal(v: Permutation, w: Permutation, essential_only: bool = True) -> GeneratorSet:
    return ideal_generators(build_matrix(v, PATCH), w, essential_only, term_order(v, PATCH), f"Q_{{{v},{w}}}")


def kl_ideal(v: Permutation, w: Permutation, essential_only: bool = True) -> GeneratorSet:
    return ideal_generators(build_matrix(v, KL), w, essential_only, term_order(v, KL), f"I_{{{v},{w}}}")


def flipped(w: Permutation) -> PartialPermutation:
    """Matrix of w read with rows counted from the bottom: ones at (n - w(i) + 1, i)."""
    n = w.n
    return PartialPermutation(n, n, frozenset((n - w(i) + 1, i) for i in range(1, n + 1)))


def gmodb_ideal(v: Permutation, w: Permutation, essential_only: bool = True) -> GeneratorSet:
    """Kazhdan-Lusztig ideal in the G/B-plus matrix; w's ranks are read from its flipped matrix."""
    return ideal_generators(build_matrix(v, GMODB), flipped(w), essential_only, term_order(v, GMODB), f"I^+_{{{v},{w}}}")


def schubert_ideal(w: Permutation, essential_only: bool = True) -> GeneratorSet:
    """Essential minors of a fully generic n x n matrix."""
    m = build_matrix(w, GENERIC)
    return ideal_generators(m, w, essential_only, term_order(w, GENERIC), f"I_{{{w}}}")


def family_ideal(v: Permutation, w: Permutation, family: str, essential_only: bool = True) -> GeneratorSet:
    family = family.lower()
    if family in ("patch", "q"):
        return patch_ideal(v, w, essential_only)
    if family in ("kl", "i"):
        return kl_ideal(v, w, essential_only)
    if family == "gmodb":
        return gmodb_ideal(v, w, essential_only)
    if family == "schubert":
        return schubert_ideal(w, essential_only)
    if family == "t":
        return t_ideal(v, w, "w")
    if family == "n":
        return t_ideal(v, w, "ws")
    raise ValueError(f"unknown family {family!r}")


def t_ideal(v: Permutation, w: Permutation, target: str = "w") -> GeneratorSet:
    """Essential minors of w (or w s_b) in the patch matrix of v with columns b, b+1 swapped."""
    b = last_descent(v)
    if b is None:
        raise ValueError(f"{v} has no descent; the T-ideal is undefined")
    if target not in ("w", "ws"):
        raise ValueError("target must be 'w' or 'ws'")
    src = w if target == "w" else w.times_simple(b)
    m = build_matrix(v, PATCH).swap_columns(b)
    vs = v.times_simple(b)
    return ideal_generators(m, src, True, term_order(v, PATCH), f"T_{{{vs},{src}}}")


def lift_var(x: Var, b: int) -> Var:
    if x.col == b:
        return Var(x.row, b + 1, x.sym)
    if x.col == b + 1:
        return Var(x.row, b, x.sym)
    return x


def lift_substitute(f: Polynomial, b: int) -> Polynomial:
    """Swap column indices b and b+1 in every variable."""
    return f.rename(lambda x: lift_var(x, b))


def lift_generators(gs: GeneratorSet, b: int) -> GeneratorSet:
    return gs.transformed(lambda f: lift_substitute(f, b), order=gs.order.renamed(lambda x: lift_var(x, b)))


def to_x(x: Var) -> Var:
    return x.relabel("x")


def to_z(x: Var) -> Var:
    return x.relabel("z")


def set_y_to_zero(f: Polynomial, v: Permutation) -> Polynomial:
    """Kill the y-variables of v and relabel z to x."""
    ys = {y: 0 for y in y_variables(v)}
    return f.substitute(ys).rename(to_x)


def kl_from_patch(gs: GeneratorSet, v: Permutation, label: Optional[str] = None) -> GeneratorSet:
    """Apply ``set_y_to_zero`` to every generator; the ring becomes x^(v)."""
    ys = {y: 0 for y in y_variables(v)}
    order = gs.order.restricted(x for x in gs.order.ranking if x not in ys).renamed(to_x)
    out = gs.transformed(lambda f: f.substitute(ys).rename(to_x), order=order, ambient=None)
    if label is not None:
        out.label = label
    return out


def l_ideal(v: Permutation, w: Permutation, target: str = "w") -> GeneratorSet:
    t = t_ideal(v, w, target)
    return kl_from_patch(t, v, "L" + t.label[1:])


def w_matrix(v: Permutation) -> GenericMatrix:
    """X^(v s_b) with x_{j,b+1} relabelled x_{j,b}; b the last descent of v."""
    b = last_descent(v)
    if b is None:
        raise ValueError(f"{v} has no descent")
    vs = v.times_simple(b)
    m = build_matrix(vs, KL)
    return m.map_entries(lambda e: e.rename(lambda x: Var(x.row, b, x.sym) if x.col == b + 1 else x))


def l_ideal_direct(v: Permutation, w: Permutation, target: str = "w") -> GeneratorSet:
    b = last_descent(v)
    src = w if target == "w" else w.times_simple(b)
    m = w_matrix(v)
    order = term_order(v, KL).restricted(m.variables())
    return ideal_generators(m, src, True, order, f"L'_{{{v.times_simple(b)},{src}}}")


@dataclass
class ZmaxSplit:
    y: Var
    pairs: list[tuple[Polynomial, Polynomial]] = field(default_factory=list)
    plain: list[Polynomial] = field(default_factory=list)

    @property
    def gs(self) -> list[Polynomial]:
        return [g for g, _ in self.pairs]


def split_by_zmax(gs: GeneratorSet, v_or_var: Union[Permutation, Var]) -> ZmaxSplit:
    y = v_or_var if isinstance(v_or_var, Var) else z_max(v_or_var)
    if y is None:
        raise ValueError("no z_max for the identity")
    out = ZmaxSplit(y)
    for f in gs.generators:
        d = f.degree_in(y)
        if d == 0:
            out.plain.append(f)
        elif d == 1:
            out.pairs.append((f.coefficient_of(y, 1), f.coefficient_of(y, 0)))
        else:
            raise ValueError(f"generator has degree {d} in {y}")
    return out


def strip_minors(v: Permutation, w: Permutation, row: int) -> GeneratorSet:
    """Minors of size 1 + rank of w in the row x b corner of the patch matrix,
    once with row v(b+1) removed and once with column b removed."""
    b = last_descent(v)
    if b is None:
        raise ValueError(f"{v} has no descent")
    if not (w(b) > w(b + 1)):
        raise ValueError(f"last descent {b} of v is not a descent of w")
    if (row, b) not in essential_set(rothe_diagram(w)):
        raise ValueError(f"({row},{b}) is not an essential box of w")
    a = v(b + 1)
    if row < a:
        raise ValueError(f"row {row} is smaller than v(b+1)={a}")
    m = build_matrix(v, PATCH)
    t = RankTable(w)(row, b) + 1
    items = []
    row_sets = [
        ([r for r in range(1, row + 1) if r != a], list(range(1, b + 1))),
        (list(range(1, row + 1)), list(range(1, b))),
    ]
    for rows_pool, cols_pool in row_sets:
        if t > min(len(rows_pool), len(cols_pool)):
            continue
        for rows in combinations(rows_pool, t):
            for cols in combinations(cols_pool, t):
                items.append((m.minor(rows, cols), ((row, b), rows, cols)))
    gens, prov = _dedupe(items)
    return GeneratorSet(m, term_order(v, PATCH), gens, prov, f"strip({row},{b})")


def embed_schubert(w: Permutation) -> tuple[Permutation, Permutation]:
    """(v, w x 1_n) with v(i) = i + n and v(i + n) = i."""
    n = w.n
    v = Permutation(tuple(range(n + 1, 2 * n + 1)) + tuple(range(1, n + 1)))
    return v, w.times_identity(n)
