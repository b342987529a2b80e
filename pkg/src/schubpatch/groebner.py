"""Buchberger engine, normal forms, initial ideals, membership and equality.

Polynomials are converted to dense exponent tuples indexed by the term
order's ranking, so Python tuple comparison is exactly the lex order.
Arithmetic stays in the integers: reductions scale the dividend when a
leading coefficient does not divide, and results are made primitive.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence

from .polyalg import (
    ONE_MONO,
    GradingMap,
    Monomial,
    Polynomial,
    TermOrder,
    Var,
    is_homogeneous_poly,
    mono_divides,
    mono_mul,
    mono_str,
    mono_vars,
)

DEFAULT_PAIR_LIMIT = 200_000

Exp = tuple[int, ...]
Dense = dict  # Exp -> int


class PairLimitExceeded(RuntimeError):
    pass


def to_dense(f: Polynomial, order: TermOrder) -> Dense:
    return {order.key(m): c for m, c in f.terms.items()}


def from_dense(d: Dense, order: TermOrder) -> Polynomial:
    rk = order.ranking
    terms = {}
    for e, c in d.items():
        terms[tuple(sorted((rk[i], x) for i, x in enumerate(e) if x))] = c
    return Polynomial(terms)


def _divides(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _primitive(d: Dense) -> Dense:
    if not d:
        return d
    g = 0
    for c in d.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = d[max(d)]
    if lead < 0:
        g = -g
    if g == 1:
        return d
    return {m: c // g for m, c in d.items()}


class _Elem:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, terms: Dense):
        self.terms = terms
        self.lm = max(terms)
        self.lc = terms[self.lm]


def _sub_multiple(f: Dense, k: int, q: Exp, g: Dense) -> None:
    """f -= k * x^q * g, in place."""
    for gm, gc in g.items():
        mm = _add(gm, q)
        v = f.get(mm, 0) - k * gc
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def _reduce(f: Dense, basis: Sequence[_Elem]) -> Dense:
    """Remainder of f on division by basis; equal to the rational remainder up to a nonzero scalar."""
    f = dict(f)
    r: Dense = {}
    while f:
        m = max(f)
        c = f[m]
        for g in basis:
            if _divides(g.lm, m):
                q = _sub(m, g.lm)
                if c % g.lc == 0:
                    _sub_multiple(f, c // g.lc, q, g.terms)
                else:
                    d = gcd(c, g.lc)
                    a = g.lc // d
                    f = {mm: a * v for mm, v in f.items()}
                    r = {mm: a * v for mm, v in r.items()}
                    _sub_multiple(f, c // d, q, g.terms)
                break
        else:
            r[m] = c
            del f[m]
    return r


def _spoly(a: _Elem, b: _Elem) -> Dense:
    lcm = _lcm(a.lm, b.lm)
    d = gcd(a.lc, b.lc)
    ka, kb = b.lc // d, a.lc // d
    qa, qb = _sub(lcm, a.lm), _sub(lcm, b.lm)
    out: Dense = {}
    for m, c in a.terms.items():
        mm = _add(m, qa)
        out[mm] = out.get(mm, 0) + ka * c
    for m, c in b.terms.items():
        mm = _add(m, qb)
        v = out.get(mm, 0) - kb * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


@dataclass
class GroebnerBasis:
    order: TermOrder
    elements: list[Polynomial]
    certified: bool = True

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def leading_monomials(self) -> list[Monomial]:
        return [self.order.leading_monomial(g) for g in self.elements]

    def _dense(self) -> list[_Elem]:
        cached = getattr(self, "_cache", None)
        if cached is None:
            cached = [_Elem(to_dense(g, self.order)) for g in self.elements]
            self._cache = cached
        return cached

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.elements:
            return f
        return from_dense(_primitive(_reduce(to_dense(f, self.order), self._dense())), self.order)

    def contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        if not self.elements:
            return False
        return not _reduce(to_dense(f, self.order), self._dense())


@dataclass
class GBCheck:
    certified: bool
    n_spairs: int
    n_skipped: int
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "n_spairs": self.n_spairs,
            "n_skipped": self.n_skipped,
            "failures": self.failures,
        }


def _nonzero(gens: Iterable[Polynomial]) -> list[Polynomial]:
    return [g for g in gens if not g.is_zero()]


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: TermOrder) -> Polynomial:
    """Remainder of f modulo basis; the first divisor in list order wins.

    With non-unit leading coefficients the result is the rational remainder
    times a nonzero integer, made primitive.
    """
    basis = _nonzero(basis)
    if not basis:
        return f
    elems = [_Elem(to_dense(g, order)) for g in basis]
    return from_dense(_primitive(_reduce(to_dense(f, order), elems)), order)


def is_groebner(gens: Sequence[Polynomial], order: TermOrder, pair_limit: int = DEFAULT_PAIR_LIMIT) -> GBCheck:
    """Buchberger criterion with the product criterion as the only skip rule.

    Never adds elements: failures are reported with their remainders.
    """
    gens = _nonzero(gens)
    elems = [_Elem(to_dense(g, order)) for g in gens]
    n_pairs = skipped = 0
    failures = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            n_pairs += 1
            if n_pairs > pair_limit:
                raise PairLimitExceeded(f"more than {pair_limit} S-pairs")
            a, b = elems[i], elems[j]
            if _coprime(a.lm, b.lm):
                skipped += 1
                continue
            rem = _reduce(_spoly(a, b), elems)
            if rem:
                failures.append({
                    "pair": [i, j],
                    "remainder": from_dense(_primitive(rem), order).to_str(order),
                })
    return GBCheck(not failures, n_pairs, skipped, failures)


def _interreduce(elems: list[_Elem]) -> list[_Elem]:
    elems = sorted(elems, key=lambda e: e.lm)
    minimal: list[_Elem] = []
    for e in elems:
        if not any(_divides(g.lm, e.lm) for g in minimal):
            minimal = [g for g in minimal if not _divides(e.lm, g.lm)]
            minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        red = _primitive(_reduce(e.terms, others))
        out.append(_Elem(red))
    return sorted(out, key=lambda e: e.lm, reverse=True)


def buchberger(gens: Sequence[Polynomial], order: TermOrder, pair_limit: int = DEFAULT_PAIR_LIMIT) -> GroebnerBasis:
    """Reduced Groebner basis; primitive integer elements with positive leading coefficient."""
    gens = _nonzero(gens)
    if any(g.is_constant() for g in gens):
        return GroebnerBasis(order, [Polynomial.const(1)])
    elems: list[_Elem] = [_Elem(_primitive(to_dense(g, order))) for g in gens]
    heap: list = []

    def push(i: int, j: int) -> None:
        heapq.heappush(heap, (_lcm(elems[i].lm, elems[j].lm), i, j))

    for j in range(len(elems)):
        for i in range(j):
            push(i, j)
    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > pair_limit:
            raise PairLimitExceeded(f"more than {pair_limit} S-pairs")
        a, b = elems[i], elems[j]
        if _coprime(a.lm, b.lm):
            continue
        rem = _reduce(_spoly(a, b), elems)
        if not rem:
            continue
        elems.append(_Elem(_primitive(rem)))
        if not any(elems[-1].lm):
            return GroebnerBasis(order, [Polynomial.const(1)])
        k = len(elems) - 1
        for i2 in range(k):
            push(i2, k)
    reduced = _interreduce(elems)
    return GroebnerBasis(order, [from_dense(e.terms, order) for e in reduced])


_GB_CACHE: dict = {}
_GB_CACHE_MAX = 4096


def groebner_basis(gens: Sequence[Polynomial], order: TermOrder, pair_limit: int = DEFAULT_PAIR_LIMIT) -> GroebnerBasis:
    """Memoized ``buchberger``; keyed by the generator set and the order."""
    key = (frozenset(_nonzero(gens)), order)
    gb = _GB_CACHE.get(key)
    if gb is None:
        gb = buchberger(gens, order, pair_limit)
        if len(_GB_CACHE) >= _GB_CACHE_MAX:
            _GB_CACHE.clear()
        _GB_CACHE[key] = gb
    return gb


class MonomialIdeal:
    """Monomial ideal kept as its minimal generators."""

    __slots__ = ("minimal_generators",)

    def __init__(self, gens: Iterable[Monomial]):
        gens = sorted(set(gens), key=lambda m: (sum(e for _, e in m), m))
        minimal: list[Monomial] = []
        for m in gens:
            if not any(mono_divides(g, m) for g in minimal):
                minimal.append(m)
        self.minimal_generators: frozenset = frozenset(minimal)

    def is_unit(self) -> bool:
        return ONE_MONO in self.minimal_generators

    def is_zero(self) -> bool:
        return not self.minimal_generators

    def contains(self, m: Monomial) -> bool:
        return any(mono_divides(g, m) for g in self.minimal_generators)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.minimal_generators | other.minimal_generators)

    def times(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(mono_mul(g, m) for g in self.minimal_generators)

    def colon_var(self, v: Var) -> "MonomialIdeal":
        out = []
        for g in self.minimal_generators:
            d = dict(g)
            if v in d:
                d[v] -= 1
                if not d[v]:
                    del d[v]
            out.append(tuple(sorted(d.items())))
        return MonomialIdeal(out)

    def is_squarefree(self) -> bool:
        return all(e == 1 for g in self.minimal_generators for _, e in g)

    def variables(self) -> frozenset:
        out: set = set()
        for g in self.minimal_generators:
            out |= mono_vars(g)
        return frozenset(out)

    def rename(self, f) -> "MonomialIdeal":
        return MonomialIdeal(tuple(sorted((f(v), e) for v, e in g)) for g in self.minimal_generators)

    def sorted_generators(self) -> list[Monomial]:
        return sorted(self.minimal_generators, key=lambda m: (sum(e for _, e in m), m))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonomialIdeal) and self.minimal_generators == other.minimal_generators

    def __hash__(self) -> int:
        return hash(self.minimal_generators)

    def __str__(self) -> str:
        if self.is_unit():
            return "<1>"
        return "<" + ", ".join(mono_str(m) for m in self.sorted_generators()) + ">"

    def __repr__(self) -> str:
        return f"MonomialIdeal({self})"


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    if not gb.certified:
        raise ValueError("initial ideal requested from an uncertified basis")
    return MonomialIdeal(gb.leading_monomials())


def is_squarefree(mi: MonomialIdeal) -> bool:
    return mi.is_squarefree()


def ideal_contains(f_or_gens, gens_b: Sequence[Polynomial], order: TermOrder) -> bool:
    """Membership of a polynomial, or containment of a generated ideal."""
    gb = groebner_basis(gens_b, order)
    if isinstance(f_or_gens, Polynomial):
        return gb.contains(f_or_gens)
    return all(gb.contains(f) for f in f_or_gens)


def ideal_equal(gens_a: Sequence[Polynomial], gens_b: Sequence[Polynomial], order: TermOrder) -> bool:
    ga = groebner_basis(gens_a, order)
    gb = groebner_basis(gens_b, order)
    return set(ga.elements) == set(gb.elements)


def is_homogeneous(gens: Sequence[Polynomial], grading: GradingMap, order: Optional[TermOrder] = None) -> bool:
    """Homogeneity of the ideal generated by ``gens``.

    Generators are checked first. If one fails, the reduced Groebner basis
    decides: it is homogeneous exactly when the ideal is.
    """
    gens = _nonzero(gens)
    if all(is_homogeneous_poly(g, grading) for g in gens):
        return True
    if order is None:
        variables = sorted(set().union(*(g.variables() for g in gens)))
        order = TermOrder(variables)
    gb = groebner_basis(gens, order)
    return all(is_homogeneous_poly(g, grading) for g in gb.elements)
