"""Multigraded K-polynomials, a brute-force Hilbert oracle, and the Kostant-Kumar recursion."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence, Union

import numpy as np
from scipy.optimize import linprog

from .groebner import MonomialIdeal, groebner_basis, initial_ideal, is_homogeneous
from .ideals import (
    GMODB,
    PATCH,
    GeneratorSet,
    gmodb_ideal,
    grading as torus_grading,
    kl_from_patch,
    kl_ideal,
    patch_ideal,
    t_ideal,
    z_max,
)
from .permcore import Permutation, last_ascent, last_descent
from .polyalg import (
    GradingMap,
    LaurentKPolynomial,
    Monomial,
    Polynomial,
    TermOrder,
    Var,
    mono_mul,
    vadd,
    vsub,
)

INCLUSION_EXCLUSION_CAP = 22
DEFAULT_BOUND = 6


class NonPositiveGrading(ValueError):
    pass


def positivity_weight(grading: GradingMap, variables: Optional[Sequence[Var]] = None) -> np.ndarray:
    """A real weight w with w . deg(x) >= 1 for every variable; proves the grading positive."""
    variables = list(variables if variables is not None else grading.degrees)
    if not variables:
        return np.zeros(grading.dim)
    a = np.array([grading.deg(x) for x in variables], dtype=float)
    res = linprog(
        c=np.zeros(grading.dim),
        A_ub=-a,
        b_ub=-np.ones(len(variables)),
        bounds=[(None, None)] * grading.dim,
        method="highs",
    )
    if res.status != 0:
        raise NonPositiveGrading("grading is not positive: some nonconstant monomial has degree 0")
    return res.x


def _deg_of(m: Monomial, grading: GradingMap) -> tuple:
    return grading.mono_deg(m)


def _kpoly_incl_excl(gens: list[Monomial], grading: GradingMap) -> LaurentKPolynomial:
    terms: dict = {}
    dim = grading.dim

    def rec(start: int, lcm: Monomial, sign: int) -> None:
        d = grading.mono_deg(lcm) if lcm else (0,) * dim
        terms[d] = terms.get(d, 0) + sign
        for i in range(start, len(gens)):
            dl = dict(lcm)
            for v, e in gens[i]:
                if dl.get(v, 0) < e:
                    dl[v] = e
            rec(i + 1, tuple(sorted(dl.items())), -sign)

    rec(0, (), 1)
    return LaurentKPolynomial(terms, dim)


def _kpoly_pivot(mi: MonomialIdeal, grading: GradingMap, memo: dict) -> LaurentKPolynomial:
    if mi in memo:
        return memo[mi]
    dim = grading.dim
    gens = mi.minimal_generators
    if mi.is_unit():
        out = LaurentKPolynomial.zero(dim)
    elif not gens:
        out = LaurentKPolynomial.one(dim)
    elif all(len(g) == 1 and g[0][1] == 1 for g in gens):
        out = LaurentKPolynomial.one(dim)
        for g in sorted(gens):
            out = out * LaurentKPolynomial.one_minus(grading.deg(g[0][0]))
    else:
        counts: dict = {}
        for g in gens:
            if len(g) > 1 or g[0][1] > 1:
                for v, _ in g:
                    counts[v] = counts.get(v, 0) + 1
        x = max(sorted(counts), key=lambda v: counts[v])
        plus = MonomialIdeal(list(gens) + [((x, 1),)])
        colon = mi.colon_var(x)
        out = _kpoly_pivot(plus, grading, memo) + _kpoly_pivot(colon, grading, memo).shift(grading.deg(x))
    memo[mi] = out
    return out


def kpoly_monomial(
    mi: MonomialIdeal, grading: GradingMap, method: str = "both", check_positive: bool = True
) -> LaurentKPolynomial:
    """K(R/mi) by inclusion-exclusion and by pivoting; the two must agree."""
    if check_positive:
        positivity_weight(grading, sorted(mi.variables()))
    gens = mi.sorted_generators()
    pivot = None
    if method in ("both", "pivot") or len(gens) > INCLUSION_EXCLUSION_CAP:
        pivot = _kpoly_pivot(mi, grading, {})
        if method == "pivot" or len(gens) > INCLUSION_EXCLUSION_CAP:
            return pivot
    incl = _kpoly_incl_excl(gens, grading)
    if pivot is not None and pivot != incl:
        raise RuntimeError(f"K-polynomial algorithms disagree on {mi}")
    return incl


class InhomogeneousIdeal(ValueError):
    pass


def kpoly_ideal(
    gens: Sequence[Polynomial],
    grading: GradingMap,
    order: TermOrder,
    second_order: Optional[TermOrder] = None,
    method: str = "pivot",
) -> LaurentKPolynomial:
    """K(R/I) from the initial ideal of a reduced Groebner basis.

    A second order (default: the reversed ranking) must give the same answer.
    """
    gens = [g for g in gens if not g.is_zero()]
    if any(g.is_unit() for g in gens):
        return LaurentKPolynomial.zero(grading.dim)
    if not is_homogeneous(gens, grading, order):
        raise InhomogeneousIdeal("ideal is not homogeneous for the grading")
    k1 = kpoly_monomial(initial_ideal(groebner_basis(gens, order)), grading, method)
    order2 = second_order or order.reversed()
    k2 = kpoly_monomial(initial_ideal(groebner_basis(gens, order2)), grading, method)
    if k1 != k2:
        raise RuntimeError("K-polynomial depends on the term order")
    return k1


def kpoly_of(gs: GeneratorSet, grading: GradingMap, method: str = "pivot") -> LaurentKPolynomial:
    if gs.is_unit:
        return LaurentKPolynomial.zero(grading.dim)
    return kpoly_ideal(gs.generators, grading, gs.order, method=method)


# Hilbert-function oracle ---------------------------------------------------


class _MonomialCounter:
    """Monomials of a given multidegree, via a positivity weight."""

    def __init__(self, variables: Sequence[Var], grading: GradingMap):
        self.variables = list(variables)
        self.grading = grading
        self.degs = [tuple(grading.deg(x)) for x in self.variables]
        self.weight = positivity_weight(grading, self.variables)
        self.wdeg = [float(np.dot(self.weight, d)) for d in self.degs]
        self._count = lru_cache(maxsize=None)(self._count_impl)

    def _w(self, e: tuple) -> float:
        return float(np.dot(self.weight, e)) if len(e) else 0.0

    def _count_impl(self, i: int, e: tuple) -> int:
        if i == len(self.variables):
            return 1 if not any(e) else 0
        total = 0
        d = self.degs[i]
        cur = e
        while self._w(cur) > -1e-9:
            total += self._count_impl(i + 1, cur)
            cur = vsub(cur, d)
        return total

    def count(self, e: tuple) -> int:
        return self._count(0, tuple(e))

    def monomials(self, e: tuple) -> list[Monomial]:
        out: list[Monomial] = []

        def rec(i: int, rem: tuple, acc: list) -> None:
            if i == len(self.variables):
                if not any(rem):
                    out.append(tuple(sorted(acc)))
                return
            k = 0
            cur = rem
            while self._w(cur) > -1e-9:
                rec(i + 1, cur, acc + ([(self.variables[i], k)] if k else []))
                k += 1
                cur = vsub(cur, self.degs[i])

        rec(0, tuple(e), [])
        return out


@dataclass
class HilbertSlice:
    grading: GradingMap
    bound: int
    counts: dict = field(default_factory=dict)


def _degrees_within(variables: Sequence[Var], grading: GradingMap, bound: int) -> set:
    zero = (0,) * grading.dim
    degs = {zero}
    for k in range(1, bound + 1):
        for combo in combinations_with_replacement(variables, k):
            d = zero
            for x in combo:
                d = vadd(d, grading.deg(x))
            degs.add(d)
    return degs


def _rank(rows: list[dict], cols: list) -> int:
    """Exact rank over Q of sparse rows."""
    index = {c: i for i, c in enumerate(cols)}
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for r, row in enumerate(rows):
        for m, c in row.items():
            mat[r][index[m]] = Fraction(c)
    rank = 0
    ncols = len(cols)
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / p
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def hilbert_slice(
    source: Union[MonomialIdeal, Sequence[Polynomial]],
    grading: GradingMap,
    bound: int,
    variables: Sequence[Var],
) -> HilbertSlice:
    """dim (R/I)_e for every e reached by a monomial of total degree <= bound.

    Each count covers all monomials of degree e, not only the short ones.
    For a monomial ideal the standard monomials are counted; for
    polynomial generators the span of m*g in degree e is ranked exactly.
    """
    counter = _MonomialCounter(variables, grading)
    out = HilbertSlice(grading, bound)
    for e in sorted(_degrees_within(variables, grading, bound)):
        monos = counter.monomials(e)
        if isinstance(source, MonomialIdeal):
            out.counts[e] = sum(1 for m in monos if not source.contains(m))
            continue
        gens = [g for g in source if not g.is_zero()]
        rows = []
        for g in gens:
            degs = {grading.mono_deg(m) for m in g.terms}
            if len(degs) != 1:
                raise InhomogeneousIdeal("hilbert_slice needs homogeneous generators")
            (dg,) = degs
            for m in counter.monomials(vsub(e, dg)):
                rows.append({mono_mul(mm, m): c for mm, c in g.terms.items()})
        out.counts[e] = len(monos) - (_rank(rows, monos) if rows else 0)
    return out


def series_coefficient(k: LaurentKPolynomial, grading: GradingMap, variables: Sequence[Var], e: tuple) -> int:
    """Coefficient of t^e in K / prod(1 - t^deg x)."""
    counter = _MonomialCounter(variables, grading)
    return sum(c * counter.count(vsub(e, d)) for d, c in k.terms.items())


def hilbert_value(mi: MonomialIdeal, counter: _MonomialCounter, e: tuple) -> int:
    return sum(1 for m in counter.monomials(e) if not mi.contains(m))


# Kostant-Kumar recursion ---------------------------------------------------


class PreconditionError(ValueError):
    pass


@dataclass
class KostantReport:
    v: str
    w: str
    convention: str
    b: int
    case: int
    shift: tuple
    lhs: LaurentKPolynomial
    rhs: LaurentKPolynomial
    holds: bool

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "w": self.w,
            "convention": self.convention,
            "b": self.b,
            "case": self.case,
            "shift": list(self.shift),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "holds": self.holds,
        }


def _three_term(kj: LaurentKPolynomial, kn: LaurentKPolynomial, e: tuple) -> LaurentKPolynomial:
    f = LaurentKPolynomial.one_minus(e)
    return kj + f * kn - f * kj


def verify_kostant(v: Permutation, w: Permutation, convention: str = "bminus", family: str = "patch") -> KostantReport:
    """Check the K-polynomial recursion at (v, w).

    ``bminus``: T-ideal form in the patch (or KL) ring of v, b the last descent.
    ``gmodb``: G/B-plus Kazhdan-Lusztig ideals, b the last ascent, each ideal in its own ring.
    """
    if convention in ("bminus", PATCH):
        b = last_descent(v)
        if b is None:
            raise PreconditionError(f"v = {v} has no descent")
        g = torus_grading(v, PATCH)
        vs = v.times_simple(b)
        e = g.deg(z_max(v))
        if family == "kl":
            kl_g = torus_grading(v, "kl")
            I = kl_ideal(v, w)
            J = kl_from_patch(t_ideal(v, w, "w"), v)
            N = kl_from_patch(t_ideal(v, w, "ws"), v)
            g = kl_g
        else:
            I = patch_ideal(v, w)
            J = t_ideal(v, w, "w")
            N = t_ideal(v, w, "ws")
        ki, kj = kpoly_of(I, g), kpoly_of(J, g)
        if w(b) < w(b + 1):
            return KostantReport(str(v), str(w), "bminus", b, 1, e, ki, kj, ki == kj)
        kn = kpoly_of(N, g)
        rhs = _three_term(kj, kn, e)
        return KostantReport(str(v), str(w), "bminus", b, 2, e, ki, rhs, ki == rhs)
    if convention in ("gmodb", GMODB):
        b = last_ascent(v)
        if b is None:
            raise PreconditionError(f"v = {v} has no ascent")
        vs = v.times_simple(b)
        I = gmodb_ideal(v, w)
        J = gmodb_ideal(vs, w)
        e = torus_grading(v, GMODB).deg(z_max(v, GMODB))
        ki = kpoly_of(I, torus_grading(v, GMODB))
        kj = kpoly_of(J, torus_grading(vs, GMODB))
        if w(b) > w(b + 1):
            return KostantReport(str(v), str(w), "gmodb", b, 1, e, ki, kj, ki == kj)
        N = gmodb_ideal(vs, w.times_simple(b))
        kn = kpoly_of(N, torus_grading(vs, GMODB))
        rhs = _three_term(kj, kn, e)
        return KostantReport(str(v), str(w), "gmodb", b, 2, e, ki, rhs, ki == rhs)
    raise ValueError(f"unknown convention {convention!r}")
