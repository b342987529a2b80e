"""Permutation and diagram combinatorics.

Rows and columns are 1-indexed. The permutation matrix of ``w`` carries the
1 of column ``j`` in row ``w(j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

Cell = tuple[int, int]


@dataclass(frozen=True)
class Permutation:
    window: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(int(x) for x in self.window)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation window: {w}")
        object.__setattr__(self, "window", w)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse one-line notation, either ``34512`` or ``10,3,1,...``."""
        text = text.strip()
        if "," in text:
            parts = [p.strip() for p in text.split(",")]
            for pos, p in enumerate(parts):
                if not p.isdigit():
                    raise ValueError(f"bad entry {p!r} at position {pos + 1}")
            return cls(tuple(int(p) for p in parts))
        for pos, ch in enumerate(text):
            if not ch.isdigit():
                raise ValueError(f"bad character {ch!r} at position {pos + 1}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, b: int, n: int) -> "Permutation":
        w = list(range(1, n + 1))
        w[b - 1], w[b] = w[b], w[b - 1]
        return cls(tuple(w))

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, j: int) -> int:
        return self.window[j - 1]

    def __len__(self) -> int:
        return len(self.window)

    def __str__(self) -> str:
        if self.n > 9:
            return ",".join(map(str, self.window))
        return "".join(map(str, self.window))

    def __repr__(self) -> str:
        return f"Permutation({self})"

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for j, wj in enumerate(self.window, start=1):
            inv[wj - 1] = j
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(i) = self(other(i))."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def times_simple(self, b: int) -> "Permutation":
        """Right multiplication by s_b: swaps window positions b and b+1."""
        w = list(self.window)
        w[b - 1], w[b] = w[b], w[b - 1]
        return Permutation(tuple(w))

    def length(self) -> int:
        w = self.window
        return sum(1 for i, j in combinations(range(self.n), 2) if w[i] > w[j])

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.window, start=1))

    def matrix(self) -> "PartialPermutation":
        return PartialPermutation(self.n, self.n, frozenset((self(j), j) for j in range(1, self.n + 1)))

    def times_identity(self, k: int) -> "Permutation":
        """The block permutation w × 1_k."""
        return Permutation(self.window + tuple(range(self.n + 1, self.n + k + 1)))


@dataclass(frozen=True)
class PartialPermutation:
    m: int
    n: int
    ones: frozenset[Cell]

    def __post_init__(self) -> None:
        ones = frozenset(self.ones)
        rows = [r for r, _ in ones]
        cols = [c for _, c in ones]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("more than one 1 in a row or column")
        for r, c in ones:
            if not (1 <= r <= self.m and 1 <= c <= self.n):
                raise ValueError(f"cell {(r, c)} outside {self.m}x{self.n}")
        object.__setattr__(self, "ones", ones)


def as_partial(w: Permutation | PartialPermutation) -> PartialPermutation:
    return w.matrix() if isinstance(w, Permutation) else w


@dataclass(frozen=True)
class Diagram:
    m: int
    n: int
    boxes: frozenset[Cell]

    def __len__(self) -> int:
        return len(self.boxes)

    def sorted_boxes(self) -> list[Cell]:
        return sorted(self.boxes)

    def ascii(self, source: "Optional[Permutation | PartialPermutation]" = None) -> str:
        """Render boxes as ``#``, ones as ``o`` and their hooks as ``-``/``|``."""
        grid = [["." for _ in range(self.n)] for _ in range(self.m)]
        if source is not None:
            source = as_partial(source)
            for r, c in source.ones:
                for cc in range(c + 1, self.n + 1):
                    grid[r - 1][cc - 1] = "-"
                for rr in range(r + 1, self.m + 1):
                    grid[rr - 1][c - 1] = "+" if grid[rr - 1][c - 1] == "-" else "|"
            for r, c in source.ones:
                grid[r - 1][c - 1] = "o"
        for r, c in self.boxes:
            grid[r - 1][c - 1] = "#"
        return "\n".join(" ".join(row) for row in grid)


class RankTable:
    """r[p][q] = number of ones in the north-west p x q block (0 <= p, q)."""

    def __init__(self, w: Permutation | PartialPermutation):
        pp = as_partial(w)
        self.m, self.n = pp.m, pp.n
        r = [[0] * (self.n + 1) for _ in range(self.m + 1)]
        for p in range(1, self.m + 1):
            for q in range(1, self.n + 1):
                r[p][q] = r[p - 1][q] + r[p][q - 1] - r[p - 1][q - 1] + ((p, q) in pp.ones)
        self.r = r

    def __call__(self, p: int, q: int) -> int:
        return self.r[p][q]

    def rows(self) -> list[list[int]]:
        return [row[1:] for row in self.r[1:]]


def rank_table(w: Permutation | PartialPermutation) -> RankTable:
    return RankTable(w)


def rothe_diagram(w: Permutation | PartialPermutation) -> Diagram:
    pp = as_partial(w)
    row_of_col = {c: r for r, c in pp.ones}
    col_of_row = {r: c for r, c in pp.ones}
    boxes = set()
    for p in range(1, pp.m + 1):
        for q in range(1, pp.n + 1):
            # a 1 weakly north in column q, or weakly west in row p, kills the cell
            if q in row_of_col and row_of_col[q] <= p:
                continue
            if p in col_of_row and col_of_row[p] <= q:
                continue
            boxes.add((p, q))
    return Diagram(pp.m, pp.n, frozenset(boxes))


def essential_set(d: Diagram) -> frozenset[Cell]:
    return frozenset(
        (p, q) for p, q in d.boxes if (p, q + 1) not in d.boxes and (p + 1, q) not in d.boxes
    )


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """v <= w iff rank(v_{pxq}) >= rank(w_{pxq}) for every p, q."""
    if v.n != w.n:
        raise ValueError("permutations of different sizes")
    rv, rw = RankTable(v).r, RankTable(w).r
    return all(rv[p][q] >= rw[p][q] for p in range(1, v.n + 1) for q in range(1, v.n + 1))


def descents(w: Permutation) -> list[int]:
    return [i for i in range(1, w.n) if w(i) > w(i + 1)]


def ascents(w: Permutation) -> list[int]:
    return [i for i in range(1, w.n) if w(i) < w(i + 1)]


def last_descent(w: Permutation) -> Optional[int]:
    d = descents(w)
    return d[-1] if d else None


def last_ascent(w: Permutation) -> Optional[int]:
    a = ascents(w)
    return a[-1] if a else None


@dataclass(frozen=True)
class PatternTriple:
    positions: tuple[int, int, int]
    values: tuple[int, int, int]
    kind: str


_PATTERN_TESTS = {
    "321": lambda a, b, c: c < b < a,
    "231": lambda a, b, c: c < a < b,
    "132": lambda a, b, c: a < c < b,
}


def find_patterns(w: Permutation, kind: str) -> list[PatternTriple]:
    kind = str(kind)
    if kind not in _PATTERN_TESTS:
        raise ValueError(f"unsupported pattern {kind!r}")
    test = _PATTERN_TESTS[kind]
    out = []
    for pos in combinations(range(1, w.n + 1), 3):
        vals = tuple(w(i) for i in pos)
        if test(*vals):
            out.append(PatternTriple(pos, vals, kind))  # type: ignore[arg-type]
    return out


def avoids(w: Permutation, kind: str) -> bool:
    return not find_patterns(w, kind)


def diagram_move(w: Permutation, b: int) -> Diagram:
    """Diagram of w*s_b read off from D(w) for a descent b.

    Boxes of column b strictly below row w(b+1) move one column right, and
    the box at (w(b+1), b) disappears.
    """
    if not (1 <= b < w.n) or w(b) < w(b + 1):
        raise ValueError(f"{b} is not a descent of {w}")
    d = rothe_diagram(w)
    a = w(b + 1)
    out = set()
    for p, q in d.boxes:
        if q == b:
            if p == a:
                continue
            out.add((p, q + 1) if p > a else (p, q))
        else:
            out.add((p, q))
    return Diagram(d.m, d.n, frozenset(out))


def all_permutations(n: int) -> Iterator[Permutation]:
    from itertools import permutations

    for p in permutations(range(1, n + 1)):
        yield Permutation(p)


def reduced_word(w: Permutation) -> list[int]:
    """A reduced word s_{a1}...s_{ak} = w, by bubble sorting the window."""
    word: list[int] = []
    cur = w
    while True:
        d = descents(cur)
        if not d:
            break
        b = d[0]
        word.append(b)
        cur = cur.times_simple(b)
    return word[::-1]


def product_of_word(word: Iterable[int], n: int) -> Permutation:
    p = Permutation.identity(n)
    for b in word:
        p = p.times_simple(b)
    return p
