"""Exact integer polynomials, lexicographic term orders, gradings, determinants."""
from __future__ import annotations

from itertools import permutations
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence, Union


class Var(NamedTuple):
    row: int
    col: int
    sym: str = "z"

    def __str__(self) -> str:
        return f"{self.sym}_{{{self.row},{self.col}}}"

    def short(self) -> str:
        return f"{self.sym}{self.row}{self.col}" if self.row < 10 and self.col < 10 else str(self)

    def relabel(self, sym: str) -> "Var":
        return Var(self.row, self.col, sym)


# A monomial is a sorted tuple of (Var, exponent) with positive exponents.
Monomial = tuple

ONE_MONO: Monomial = ()


def mono(*pairs) -> Monomial:
    """Build a monomial from Vars or (Var, exp) pairs."""
    d: dict[Var, int] = {}
    for p in pairs:
        if isinstance(p, Var):
            d[p] = d.get(p, 0) + 1
        else:
            v, e = p
            d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for v, e in a:
        d[v] -= e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = max(d.get(v, 0), e)
    return tuple(sorted(d.items()))


def mono_vars(a: Monomial) -> frozenset:
    return frozenset(v for v, _ in a)


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_str(a: Monomial) -> str:
    if not a:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in a)


class Polynomial:
    """Sparse polynomial with integer coefficients; immutable by convention."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: Optional[int] = None

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, v: Var) -> "Polynomial":
        return cls({((v, 1),): 1})

    @classmethod
    def monomial(cls, m: Monomial, c: int = 1) -> "Polynomial":
        return cls({m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(ONE_MONO, 0)

    def is_unit(self) -> bool:
        return self.is_constant() and not self.is_zero()

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def __add__(self, other: "PolyLike") -> "Polynomial":
        other = as_poly(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return Polynomial(t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "PolyLike") -> "Polynomial":
        return self + (-as_poly(other))

    def __rsub__(self, other: "PolyLike") -> "Polynomial":
        return as_poly(other) - self

    def __mul__(self, other: "PolyLike") -> "Polynomial":
        other = as_poly(other)
        t: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Polynomial(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def substitute(self, mapping: Mapping[Var, "PolyLike"]) -> "Polynomial":
        """Replace variables by polynomials (or ints); unmapped ones stay."""
        out = Polynomial()
        cache: dict[Var, Polynomial] = {v: as_poly(p) for v, p in mapping.items()}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in cache:
                    term = term * (cache[v] ** e)
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial.monomial(tuple(rest))
            out = out + term
        return out

    def rename(self, f: Callable[[Var], Var]) -> "Polynomial":
        """Apply an injective variable renaming."""
        t: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            nm = mono(*[(f(v), e) for v, e in m])
            t[nm] = t.get(nm, 0) + c
        return Polynomial(t)

    def degree_in(self, v: Var) -> int:
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def coefficient_of(self, v: Var, k: int) -> "Polynomial":
        """Coefficient of v^k, as a polynomial free of v."""
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(v, 0) == k:
                d.pop(v, None)
                t[tuple(sorted(d.items()))] = c
        return Polynomial(t)

    def sort_key(self) -> tuple:
        return tuple(sorted((tuple((v, e) for v, e in m), c) for m, c in self.terms.items()))

    def normalized_sign(self) -> "Polynomial":
        """The representative of {f, -f} whose smallest-key term is positive."""
        if not self.terms:
            return self
        first = min(self.terms)
        return -self if self.terms[first] < 0 else self

    def to_str(self, order: Optional["TermOrder"] = None) -> str:
        if not self.terms:
            return "0"
        if order is not None:
            monos = sorted(self.terms, key=order.key, reverse=True)
        else:
            monos = sorted(self.terms, key=lambda m: (-mono_degree(m), m))
        parts = []
        for i, m in enumerate(monos):
            c = self.terms[m]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = mono_str(m) if m else str(a)
            if m and a != 1:
                body = f"{a}*{body}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_str()})"


PolyLike = Union[Polynomial, int, Var]


def as_poly(x: PolyLike) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Var):
        return Polynomial.var(x)
    if isinstance(x, int):
        return Polynomial.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Polynomial")


ZERO = Polynomial()
ONE = Polynomial.const(1)


class TermOrder:
    """Lexicographic order over an explicit variable ranking (highest first)."""

    def __init__(self, ranking: Sequence[Var]):
        self.ranking: tuple[Var, ...] = tuple(ranking)
        if len(set(self.ranking)) != len(self.ranking):
            raise ValueError("duplicate variable in ranking")
        self.index = {v: i for i, v in enumerate(self.ranking)}

    def __len__(self) -> int:
        return len(self.ranking)

    def __contains__(self, v: Var) -> bool:
        return v in self.index

    def key(self, m: Monomial) -> tuple[int, ...]:
        """Dense exponent vector in ranking order; tuple comparison is the order."""
        vec = [0] * len(self.ranking)
        for v, e in m:
            try:
                vec[self.index[v]] = e
            except KeyError:
                raise ValueError(f"variable {v} not in term order") from None
        return tuple(vec)

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def leading_monomial(self, f: Polynomial) -> Monomial:
        if f.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return max(f.terms, key=self.key)

    def leading_term(self, f: Polynomial) -> tuple[Monomial, int]:
        m = self.leading_monomial(f)
        return m, f.terms[m]

    def restricted(self, keep: Iterable[Var]) -> "TermOrder":
        keep = set(keep)
        return TermOrder([v for v in self.ranking if v in keep])

    def renamed(self, f: Callable[[Var], Var]) -> "TermOrder":
        return TermOrder([f(v) for v in self.ranking])

    def reversed(self) -> "TermOrder":
        return TermOrder(self.ranking[::-1])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TermOrder) and self.ranking == other.ranking

    def __hash__(self) -> int:
        return hash(self.ranking)

    def __repr__(self) -> str:
        return "TermOrder(" + " > ".join(v.short() for v in self.ranking) + ")"


Vector = tuple[int, ...]


def unit_vector(i: int, n: int) -> Vector:
    """e_i in Z^n, 1-indexed."""
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k: int, a: Vector) -> Vector:
    return tuple(k * x for x in a)


class GradingMap:
    """Variable degrees in Z^dim. ``standard`` gives every variable degree (1,)."""

    def __init__(self, degrees: Mapping[Var, Vector], dim: int):
        self.degrees = {v: tuple(d) for v, d in degrees.items()}
        self.dim = dim

    @classmethod
    def standard(cls, variables: Iterable[Var]) -> "GradingMap":
        return cls({v: (1,) for v in variables}, 1)

    def deg(self, v: Var) -> Vector:
        return self.degrees[v]

    def mono_deg(self, m: Monomial) -> Vector:
        out = (0,) * self.dim
        for v, e in m:
            out = vadd(out, vscale(e, self.degrees[v]))
        return out

    def restricted(self, keep: Iterable[Var]) -> "GradingMap":
        return GradingMap({v: self.degrees[v] for v in keep}, self.dim)

    def renamed(self, f: Callable[[Var], Var]) -> "GradingMap":
        return GradingMap({f(v): d for v, d in self.degrees.items()}, self.dim)


class Homogeneous(NamedTuple):
    degree: Vector


class Inhomogeneous(NamedTuple):
    pass


class ZeroPoly(NamedTuple):
    pass


def multidegree(f: Polynomial, grading: GradingMap):
    if f.is_zero():
        return ZeroPoly()
    degs = {grading.mono_deg(m) for m in f.terms}
    if len(degs) == 1:
        return Homogeneous(degs.pop())
    return Inhomogeneous()


def is_homogeneous_poly(f: Polynomial, grading: GradingMap) -> bool:
    return not isinstance(multidegree(f, grading), Inhomogeneous)


def determinant(m: Sequence[Sequence[PolyLike]]) -> Polynomial:
    """Cofactor expansion along the line with the most constant entries.

    Sub-determinants are memoized on their (row set, column set).
    """
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix is not square")
    if size == 0:
        return ONE
    grid = [[as_poly(x) for x in row] for row in m]
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial] = {}

    def score(entries: list[Polynomial]) -> tuple[int, int]:
        zeros = sum(1 for e in entries if e.is_zero())
        consts = sum(1 for e in entries if e.is_constant())
        return zeros, consts

    def det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        key = (rows, cols)
        if key in memo:
            return memo[key]
        k = len(rows)
        if k == 1:
            res = grid[rows[0]][cols[0]]
        elif k == 2:
            res = grid[rows[0]][cols[0]] * grid[rows[1]][cols[1]] - grid[rows[0]][cols[1]] * grid[rows[1]][cols[0]]
        else:
            best = None
            for i, r in enumerate(rows):
                s = score([grid[r][c] for c in cols])
                if best is None or s > best[0]:
                    best = (s, "row", i)
            for j, c in enumerate(cols):
                s = score([grid[r][c] for r in rows])
                if s > best[0]:
                    best = (s, "col", j)
            _, kind, idx = best
            res = ZERO
            if kind == "row":
                r = rows[idx]
                sub_rows = rows[:idx] + rows[idx + 1:]
                for j, c in enumerate(cols):
                    e = grid[r][c]
                    if e.is_zero():
                        continue
                    minor = det(sub_rows, cols[:j] + cols[j + 1:])
                    term = e * minor
                    res = res - term if (idx + j) % 2 else res + term
            else:
                c = cols[idx]
                sub_cols = cols[:idx] + cols[idx + 1:]
                for i, r in enumerate(rows):
                    e = grid[r][c]
                    if e.is_zero():
                        continue
                    minor = det(rows[:i] + rows[i + 1:], sub_cols)
                    term = e * minor
                    res = res - term if (idx + i) % 2 else res + term
        memo[key] = res
        return res

    return det(tuple(range(size)), tuple(range(size)))


def leibniz_determinant(m: Sequence[Sequence[PolyLike]]) -> Polynomial:
    """Signed sum over all permutations; used as an independent check."""
    size = len(m)
    grid = [[as_poly(x) for x in row] for row in m]
    total = ZERO
    for p in permutations(range(size)):
        inv = sum(1 for i in range(size) for j in range(i + 1, size) if p[i] > p[j])
        term = ONE
        for i in range(size):
            term = term * grid[i][p[i]]
            if term.is_zero():
                break
        total = total - term if inv % 2 else total + term
    return total


class LaurentKPolynomial:
    """Element of Z[t_1^{±1}, ..., t_n^{±1}] stored as exponent vector -> coefficient."""

    __slots__ = ("terms", "dim")

    def __init__(self, terms: Optional[Mapping[Vector, int]] = None, dim: int = 0):
        self.terms: dict[Vector, int] = {tuple(k): c for k, c in (terms or {}).items() if c}
        if terms and not dim:
            dim = len(next(iter(self.terms))) if self.terms else 0
        self.dim = dim

    @classmethod
    def one(cls, dim: int) -> "LaurentKPolynomial":
        return cls({(0,) * dim: 1}, dim)

    @classmethod
    def zero(cls, dim: int) -> "LaurentKPolynomial":
        return cls({}, dim)

    @classmethod
    def monomial(cls, e: Vector, c: int = 1) -> "LaurentKPolynomial":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def one_minus(cls, e: Vector) -> "LaurentKPolynomial":
        """1 - t^e."""
        return cls.one(len(e)) - cls.monomial(e)

    def __add__(self, other: "LaurentKPolynomial") -> "LaurentKPolynomial":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return LaurentKPolynomial(t, self.dim or other.dim)

    def __neg__(self) -> "LaurentKPolynomial":
        return LaurentKPolynomial({k: -c for k, c in self.terms.items()}, self.dim)

    def __sub__(self, other: "LaurentKPolynomial") -> "LaurentKPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["LaurentKPolynomial", int]) -> "LaurentKPolynomial":
        if isinstance(other, int):
            return LaurentKPolynomial({k: c * other for k, c in self.terms.items()}, self.dim)
        t: dict[Vector, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = vadd(k1, k2)
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentKPolynomial(t, self.dim or other.dim)

    __rmul__ = __mul__

    def shift(self, e: Vector) -> "LaurentKPolynomial":
        """Multiply by t^e."""
        return LaurentKPolynomial({vadd(k, e): c for k, c in self.terms.items()}, self.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentKPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> list:
        return [[list(k), c] for k, c in sorted(self.terms.items())]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kc: (sum(map(abs, kc[0])), kc[0])):
            mon = "*".join(
                f"t{i + 1}" if x == 1 else f"t{i + 1}^{x}" for i, x in enumerate(k) if x
            )
            if not mon:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mon}")
            elif c == -1:
                parts.append(f"-{mon}")
            else:
                parts.append(f"{c:+d}*{mon}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    def __repr__(self) -> str:
        return f"LaurentKPolynomial({self})"
