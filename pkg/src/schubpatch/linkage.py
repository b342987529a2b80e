"""The last-descent recursion, Plucker identities, homogeneity verdicts, glicci chains."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .groebner import (
    MonomialIdeal,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    initial_ideal,
    is_homogeneous,
)
from .ideals import (
    PATCH,
    GeneratorSet,
    build_matrix,
    grading as torus_grading,
    kl_from_patch,
    kl_ideal,
    strip_minors,
    patch_ideal,
    lift_var,
    split_by_zmax,
    t_ideal,
    term_order,
    z_max,
)
from .kpoly import kpoly_ideal
from .permcore import (
    Permutation,
    RankTable,
    bruhat_leq,
    essential_set,
    find_patterns,
    last_descent,
    rothe_diagram,
)
from .polyalg import (
    GradingMap,
    LaurentKPolynomial,
    Polynomial,
    TermOrder,
    Var,
    determinant,
)


@dataclass
class RecursionStep:
    v: Permutation
    w: Permutation
    b: Optional[int]
    case: str
    I: GeneratorSet
    J: Optional[GeneratorSet]
    N: Optional[GeneratorSet]
    shift: Optional[tuple]
    y: Optional[Var]
    family: str = "patch"


def _kl_step_ideals(v: Permutation, w: Permutation, b: int):
    J = kl_from_patch(t_ideal(v, w, "w"), v, f"L_{{{v.times_simple(b)},{w}}}")
    N = kl_from_patch(t_ideal(v, w, "ws"), v, f"L_{{{v.times_simple(b)},{w.times_simple(b)}}}")
    return J, N


def family_ideal_ordered(v: Permutation, w: Permutation, kl: bool) -> GeneratorSet:
    """Q_{v,w}, or I_{v,w} ordered by the patch order restricted to x^(v)."""
    if not kl:
        return patch_ideal(v, w)
    I = kl_ideal(v, w)
    I.order = kl_from_patch(patch_ideal(v, w), v).order
    return I


def recursion_step(v: Permutation, w: Permutation, family: str = "patch") -> RecursionStep:
    kl = family == "kl"
    I = family_ideal_ordered(v, w, kl)
    if v.is_identity():
        return RecursionStep(v, w, None, "unit", I, None, None, None, None, family)
    b = last_descent(v)
    y = z_max(v, "kl" if kl else PATCH)
    shift = torus_grading(v, PATCH).deg(z_max(v, PATCH))
    if v.length() == 1:
        return RecursionStep(v, w, b, "base", I, None, None, shift, y, family)
    if w(b) < w(b + 1):
        if kl:
            J, _ = _kl_step_ideals(v, w, b)
        else:
            J = t_ideal(v, w, "w")
        return RecursionStep(v, w, b, "ascent", I, J, J, shift, y, family)
    if kl:
        J, N = _kl_step_ideals(v, w, b)
    else:
        J, N = t_ideal(v, w, "w"), t_ideal(v, w, "ws")
    return RecursionStep(v, w, b, "descent", I, J, N, shift, y, family)


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witnesses": self.witnesses}


@dataclass
class StepReport:
    v: str
    w: str
    case: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "w": self.w,
            "case": self.case,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _initial(gens: Sequence[Polynomial], order: TermOrder) -> MonomialIdeal:
    return initial_ideal(groebner_basis(gens, order))


def verify_step(s: RecursionStep) -> StepReport:
    order = s.I.order
    checks: list[Check] = []
    if s.case == "unit":
        expect_unit = not s.w.is_identity()
        checks.append(Check("identity gives unit ideal", s.I.is_unit == expect_unit))
        return StepReport(str(s.v), str(s.w), s.case, checks)
    if s.case == "base":
        trivial = s.I.is_unit or s.I.is_zero
        ok = True
        if not trivial:
            zbb = Var(s.b, s.b, "x" if s.family == "kl" else "z")
            ok = s.v == s.w and ideal_equal(s.I.generators, [Polynomial.var(zbb)], order)
        checks.append(Check("length one: v = w and ideal <z_bb>", ok))
        return StepReport(str(s.v), str(s.w), s.case, checks)
    if s.case == "ascent":
        checks.append(Check("Q = T", ideal_equal(s.I.generators, s.J.generators, order)))
        return StepReport(str(s.v), str(s.w), s.case, checks)

    I, J, N, y = s.I, s.J, s.N, s.y
    split = split_by_zmax(I, y)
    gs, hs = split.gs, split.plain
    checks.append(Check("J = <g, h>", ideal_equal(J.generators, gs + hs, order)))
    checks.append(Check("N = <h>", ideal_equal(N.generators, hs, order)))
    missing = [f.to_str(order) for f in N.generators if not (ideal_contains(f, I.generators, order) and ideal_contains(f, J.generators, order))]
    checks.append(Check("N in I and J", not missing, missing))
    bad = []
    Ngb = groebner_basis(N.generators, order)
    for (g1, r1), (g2, r2) in combinations(split.pairs, 2):
        yv = Polynomial.var(y)
        diff = g1 * (yv * g2 + r2) - (yv * g1 + r1) * g2
        if not Ngb.contains(diff):
            bad.append(diff.to_str(order))
    checks.append(Check("cross products in N", not bad, bad))
    inI, inJ, inN = _initial(I.generators, order), _initial(J.generators, order), _initial(N.generators, order)
    rhs = inN + inJ.times(((y, 1),))
    checks.append(Check("in(I) = in(N) + y in(J)", inI == rhs, [] if inI == rhs else [str(inI), str(rhs)]))
    a = s.v(s.b + 1)
    boxes = [(al, be) for al, be in sorted(essential_set(rothe_diagram(s.w))) if be == s.b and al >= a]
    failed = []
    for al, _ in boxes:
        na = strip_minors(s.v, s.w, al)
        if s.family == "kl":
            na = kl_from_patch(na, s.v)
        if not ideal_contains(na.generators, N.generators, order):
            failed.append([al, s.b])
    checks.append(Check("strip minors in N", not failed, failed or [[al, s.b] for al, _ in boxes]))
    if not failed:
        checks[-1].witnesses = [{"boxes": [[al, s.b] for al, _ in boxes]}]
    return StepReport(str(s.v), str(s.w), s.case, checks)


# Grassmann-Plucker ---------------------------------------------------------


def plucker_det(P: list[list[Polynomial]], cols: Sequence[int]) -> Polynomial:
    """Determinant of the columns of P taken in the given order (1-indexed)."""
    if len(set(cols)) < len(cols):
        return Polynomial()
    return determinant([[row[c - 1] for c in cols] for row in P])


def generic_plucker_matrix(k: int, m: int) -> list[list[Polynomial]]:
    """[M | I_k] with M a generic k x m matrix of variables p_{ij}."""
    return [
        [Polynomial.var(Var(i, j, "p")) for j in range(1, m + 1)]
        + [Polynomial.const(1 if r == i else 0) for r in range(1, k + 1)]
        for i in range(1, k + 1)
    ]


def plucker_sum(P: list[list[Polynomial]], i_seq: Sequence[int], j_seq: Sequence[int]) -> Polynomial:
    total = Polynomial()
    for l in range(1, len(j_seq) + 1):
        left = plucker_det(P, list(i_seq) + [j_seq[l - 1]])
        right = plucker_det(P, list(j_seq[: l - 1]) + list(j_seq[l:]))
        term = left * right
        total = total - term if l % 2 else total + term
    return total


def minor_to_plucker(M_rows: int, M_cols: int, p: Sequence[int], q: Sequence[int]) -> tuple[Polynomial, Polynomial]:
    """(M minor on rows p, cols q ; P-determinant on q followed by the complementary identity columns)."""
    P = generic_plucker_matrix(M_rows, M_cols)
    minor = determinant([[P[r - 1][c - 1] for c in q] for r in p])
    extra = [M_cols + r for r in range(1, M_rows + 1) if r not in p]
    return minor, plucker_det(P, list(q) + extra)


def plucker_verify(k: int, m: int, i_seq: Sequence[int], j_seq: Sequence[int], check_translation: bool = True) -> bool:
    """Sum_l (-1)^l P[i.., j_l] P[j.. without j_l] vanishes on [generic k x m | I_k]."""
    width = m + k
    if len(i_seq) != k - 1 or len(j_seq) != k + 1:
        raise ValueError("need k-1 indices i and k+1 indices j")
    if list(i_seq) != sorted(set(i_seq)) or list(j_seq) != sorted(set(j_seq)):
        raise ValueError("index sequences must be strictly increasing")
    if any(not 1 <= x <= width for x in list(i_seq) + list(j_seq)):
        raise ValueError(f"indices must lie in 1..{width}")
    P = generic_plucker_matrix(k, m)
    if not plucker_sum(P, i_seq, j_seq).is_zero():
        return False
    if check_translation:
        for size in range(1, min(k, m) + 1):
            for p in combinations(range(1, k + 1), size):
                for q in combinations(range(1, m + 1), size):
                    a, b = minor_to_plucker(k, m, p, q)
                    if a != b and a != -b:
                        return False
    return True


def cross_difference(v: Permutation, w: Permutation, row: int, row2: int, p: Sequence[int], q: Sequence[int], p2: Sequence[int], q2: Sequence[int]) -> Polynomial:
    """P[q, b+a, C] P[q', b, C'] - P[q, b, C] P[q', b+a, C'] on P = [Z_(row2 x b) | I].

    C, C' are the identity columns b+r with r outside p + {a}, p' + {a}.
    Each factor is a minor of the patch matrix up to sign; the literal minor
    difference f1 f2' - f2 f1' can carry the wrong relative sign.
    """
    b = last_descent(v)
    a = v(b + 1)
    k = row2
    m = build_matrix(v, PATCH)
    P = [[m.entry(r, c) for c in range(1, b + 1)] + [Polynomial.const(1 if r == s else 0) for s in range(1, k + 1)] for r in range(1, k + 1)]

    def rest(rows: Sequence[int]) -> list[int]:
        return [b + r for r in range(1, k + 1) if r not in set(rows) | {a}]

    f1 = plucker_det(P, list(q) + [b + a] + rest(p))
    f2 = plucker_det(P, list(q) + [b] + rest(p))
    g1 = plucker_det(P, list(q2) + [b + a] + rest(p2))
    g2 = plucker_det(P, list(q2) + [b] + rest(p2))
    return f1 * g2 - f2 * g1


def cross_minor_difference(v: Permutation, p: Sequence[int], q: Sequence[int], p2: Sequence[int], q2: Sequence[int]) -> Polynomial:
    """The same difference written with plain minors of the patch matrix."""
    b = last_descent(v)
    a = v(b + 1)
    m = build_matrix(v, PATCH)
    f1 = m.minor(tuple(p), tuple(q))
    f2 = m.minor(tuple(sorted(set(p) | {a})), tuple(q) + (b,))
    g1 = m.minor(tuple(p2), tuple(q2))
    g2 = m.minor(tuple(sorted(set(p2) | {a})), tuple(q2) + (b,))
    return f1 * g2 - f2 * g1


def cross_difference_memberships(v: Permutation, w: Permutation, row: int, row2: int) -> tuple[int, list]:
    """Check every difference for the box pair lies in the strip minors at (row, b) and (row2, b)."""
    b = last_descent(v)
    a = v(b + 1)
    ranks = RankTable(w)
    t, t2 = ranks(row, b) + 1, ranks(row2, b) + 1
    pool = [r for r in range(1, row + 1) if r != a]
    pool2 = [r for r in range(1, row2 + 1) if r != a]
    target = strip_minors(v, w, row).generators + strip_minors(v, w, row2).generators
    gb = groebner_basis(target, term_order(v, PATCH))
    checked, failures = 0, []
    for p in combinations(pool, t - 1):
        for q in combinations(range(1, b), t - 1):
            for p2 in combinations(pool2, t2 - 1):
                for q2 in combinations(range(1, b), t2 - 1):
                    d = cross_difference(v, w, row, row2, p, q, p2, q2)
                    checked += 1
                    if not gb.contains(d):
                        failures.append([list(p), list(q), list(p2), list(q2)])
    return checked, failures


# Homogeneity ---------------------------------------------------------------


@dataclass
class HomogeneityVerdict:
    applicable: bool
    direct_patch: bool = False
    direct_kl: bool = False
    patch_sufficient: bool = False
    kl_sufficient: bool = False
    witnesses: list = field(default_factory=list)

    @property
    def direct(self) -> bool:
        return self.direct_patch

    @property
    def sound(self) -> bool:
        return (not self.patch_sufficient or self.direct_patch) and (not self.kl_sufficient or self.direct_kl)

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "direct_patch": self.direct_patch,
            "direct_kl": self.direct_kl,
            "patch_sufficient": self.patch_sufficient,
            "kl_sufficient": self.kl_sufficient,
            "sound": self.sound,
            "witnesses": self.witnesses,
        }


def _ineq1_failures(v: Permutation, w: Permutation) -> list:
    vinv, winv = v.inverse(), w.inverse()
    out = []
    for a in find_patterns(v, "321"):
        for c in find_patterns(w, "132"):
            a2, c2, c3 = a.values[1], c.values[1], c.values[2]
            if not (c3 < a2 or winv(c2) < vinv(a2)):
                out.append({"ineq": 1, "v_pattern": list(a.values), "w_pattern": list(c.values)})
    return out


def _ineq2_failures(v: Permutation, w: Permutation) -> list:
    vinv, winv = v.inverse(), w.inverse()
    out = []
    for bp in find_patterns(v, "231"):
        for c in find_patterns(w, "132"):
            b1, c2, c3 = bp.values[0], c.values[1], c.values[2]
            if not (c3 < b1 or winv(c2) <= vinv(b1)):
                out.append({"ineq": 2, "v_pattern": list(bp.values), "w_pattern": list(c.values)})
    return out


def homogeneity_conditions(v: Permutation, w: Permutation) -> tuple[bool, bool, list]:
    """Sufficient pattern conditions for standard homogeneity of the patch and KL ideals."""
    w132 = not find_patterns(w, "132")
    v321 = not find_patterns(v, "321")
    v231 = not find_patterns(v, "231")
    f1 = _ineq1_failures(v, w)
    f2 = _ineq2_failures(v, w)
    patch = w132 or (v321 and v231) or (not f1 and not f2)
    kl = v321 or w132 or not f1
    return patch, kl, f1 + f2


def standard_grading(gs: GeneratorSet) -> GradingMap:
    return GradingMap.standard(gs.order.ranking)


def classify_homogeneity(v: Permutation, w: Permutation) -> HomogeneityVerdict:
    if not bruhat_leq(w, v):
        return HomogeneityVerdict(False)
    Q, I = patch_ideal(v, w), kl_ideal(v, w)
    dq = Q.is_unit or is_homogeneous(Q.generators, standard_grading(Q), Q.order)
    di = I.is_unit or is_homogeneous(I.generators, standard_grading(I), I.order)
    ps, ks, wit = homogeneity_conditions(v, w)
    return HomogeneityVerdict(True, dq, di, ps, ks, wit)


# Glicci chains -------------------------------------------------------------


@dataclass
class ChainStep:
    kind: str  # "biliaison", "identity", "add-indeterminate"
    v: str
    w: str
    b: int
    height: int
    witness_ok: Optional[bool] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "v": self.v, "w": self.w, "b": self.b, "height": self.height, "witness_ok": self.witness_ok}


@dataclass
class BiliaisonChain:
    v: str
    w: str
    family: str
    steps: list
    terminal: list  # variables generating the terminal ideal, in the ring of (v, w)
    assumptions: str = "N is assumed Cohen-Macaulay and generically Gorenstein; not re-verified"

    @property
    def terminal_is_linear(self) -> bool:
        return all(isinstance(x, Var) for x in self.terminal)

    @property
    def witnesses_ok(self) -> bool:
        return all(s.witness_ok is not False for s in self.steps)

    def terminal_strings(self) -> list[str]:
        return [x.short() for x in sorted(self.terminal, key=lambda x: (x.row, x.col))]

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "w": self.w,
            "family": self.family,
            "length": len(self.steps),
            "steps": [s.to_json() for s in self.steps],
            "terminal": self.terminal_strings(),
            "witnesses_ok": self.witnesses_ok,
            "assumptions": self.assumptions,
        }


class InhomogeneousChainInput(ValueError):
    pass


def _standard_kpoly(gens: Sequence[Polynomial], order: TermOrder) -> LaurentKPolynomial:
    return kpoly_ideal(gens, GradingMap.standard(order.ranking), order)


def _biliaison_witness(I: GeneratorSet, J: GeneratorSet, N: GeneratorSet, y: Var) -> bool:
    """Cross products in N, and K(I) = K(N) - t (K(N) - K(J)) in the standard grading."""
    order = I.order
    split = split_by_zmax(I, y)
    Ngb = groebner_basis(N.generators, order)
    yv = Polynomial.var(y)
    for (g1, r1), (g2, r2) in combinations(split.pairs, 2):
        if not Ngb.contains(g1 * (yv * g2 + r2) - (yv * g1 + r1) * g2):
            return False
    if J.is_unit:
        kj = LaurentKPolynomial.zero(1)
    else:
        kj = _standard_kpoly(J.generators, order)
    ki = LaurentKPolynomial.zero(1) if I.is_unit else _standard_kpoly(I.generators, order)
    kn = _standard_kpoly(N.generators, order)
    return ki == kn - (kn - kj).shift((1,))


def _contains_var(gs: GeneratorSet, y: Var) -> bool:
    return ideal_contains(Polynomial.var(y), gs.generators, gs.order)


def glicci_chain(v: Permutation, w: Permutation, family: str = "patch", check_witness: bool = True, _depth: int = 0) -> BiliaisonChain:
    """Walk the last-descent recursion down to an ideal generated by variables.

    Sub-chains live in the ring of (v s_b, .) and are mapped back through
    the column swap; the terminal is returned as a list of variables.
    """
    kl = family == "kl"
    I = family_ideal_ordered(v, w, kl)
    if _depth == 0:
        if I.is_unit or I.is_zero:
            raise ValueError("glicci_chain needs a nontrivial ideal")
        if not is_homogeneous(I.generators, standard_grading(I), I.order):
            raise InhomogeneousChainInput(f"ideal for ({v}, {w}) is not standardly homogeneous; see classify_homogeneity")
    if I.is_zero:
        return BiliaisonChain(str(v), str(w), family, [], [])
    b = last_descent(v)
    if b is None:
        raise ValueError(f"unexpected unit ideal at ({v}, {w})")
    y = z_max(v, "kl" if kl else PATCH)
    vs = v.times_simple(b)

    def lift(chain: BiliaisonChain) -> list:
        if kl:
            return [Var(x.row, b, x.sym) if x.col == b + 1 else x for x in chain.terminal]
        return [lift_var(x, b) for x in chain.terminal]

    if _contains_var(I, y):
        sub = glicci_chain(vs, w.times_simple(b), family, check_witness, _depth + 1)
        step = ChainStep("add-indeterminate", str(v), str(w), b, 0)
        return BiliaisonChain(str(v), str(w), family, [step] + sub.steps, lift(sub) + [y])
    if w(b) < w(b + 1):
        sub = glicci_chain(vs, w, family, check_witness, _depth + 1)
        step = ChainStep("identity", str(v), str(w), b, 0)
        return BiliaisonChain(str(v), str(w), family, [step] + sub.steps, lift(sub))
    ok = None
    if check_witness:
        if kl:
            J, N = _kl_step_ideals(v, w, b)
        else:
            J, N = t_ideal(v, w, "w"), t_ideal(v, w, "ws")
        ok = _biliaison_witness(I, J, N, y)
    sub = glicci_chain(vs, w, family, check_witness, _depth + 1)
    step = ChainStep("biliaison", str(v), str(w), b, 1, ok)
    return BiliaisonChain(str(v), str(w), family, [step] + sub.steps, lift(sub))


def schubert_terminal_formula(w: Permutation) -> list[Var]:
    """Variables x_{i, j - rank(w_{ixj})} over the boxes (i, j) of D(w)."""
    r = RankTable(w)
    return sorted({Var(i, j - r(i, j), "x") for i, j in rothe_diagram(w).boxes}, key=lambda x: (x.row, x.col))


def schubert_glicci(w: Permutation, check_witness: bool = True) -> BiliaisonChain:
    from .ideals import embed_schubert

    v, wx = embed_schubert(w)
    return glicci_chain(v, wx, "kl", check_witness)
