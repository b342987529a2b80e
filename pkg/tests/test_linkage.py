import pytest
from hypothesis import given, settings, strategies as st

from conftest import P
from helpers import det, displayed_subset_and_equal, z
from schubpatch.complexes import codimension, from_squarefree
from schubpatch.groebner import groebner_basis, ideal_contains, ideal_equal, initial_ideal
from schubpatch.ideals import build_matrix, patch_ideal, t_ideal
from schubpatch.linkage import (
    InhomogeneousChainInput,
    classify_homogeneity,
    cross_difference,
    cross_difference_memberships,
    cross_minor_difference,
    glicci_chain,
    homogeneity_conditions,
    minor_to_plucker,
    plucker_det,
    plucker_verify,
    recursion_step,
    schubert_glicci,
    schubert_terminal_formula,
    verify_step,
)
from schubpatch.permcore import all_permutations, bruhat_leq, last_descent
from schubpatch.polyalg import Polynomial


def test_ascent_step():
    s = recursion_step(P("34512"), P("12354"))
    assert s.case == "ascent"
    assert s.J is s.N
    assert ideal_equal(s.I.generators, s.J.generators, s.I.order)
    assert verify_step(s).passed


def test_descent_step_worked_case():
    s = recursion_step(P("34512"), P("14325"))
    assert s.case == "descent"
    J = [z(2, 1), z(2, 2), det([[z(1, 1), z(1, 2)], [1, z(3, 2)]])]
    N = [
        det([[z(1, 1), z(1, 2)], [z(2, 1), z(2, 2)]]),
        det([[z(1, 1), z(1, 2)], [1, z(3, 2)]]),
        det([[z(2, 1), z(2, 2)], [1, z(3, 2)]]),
    ]
    I = [
        N[0],
        det([[z(1, 1), z(1, 3)], [z(2, 1), z(2, 3)]]),
        det([[z(1, 2), z(1, 3)], [z(2, 2), z(2, 3)]]),
        N[1],
        N[2],
    ]
    assert displayed_subset_and_equal(s.I, I)
    assert ideal_equal(s.J.generators, J, s.I.order)
    assert displayed_subset_and_equal(s.N, N)
    assert verify_step(s).passed


def test_step_with_split_generators():
    rep = verify_step(recursion_step(P("45312"), P("12543")))
    assert rep.passed and len(rep.checks) == 6


def test_step_covers_both_boxes():
    rep = verify_step(recursion_step(P("654312"), P("136524")))
    assert rep.passed
    boxes = rep.checks[-1].witnesses[0]["boxes"]
    assert boxes == [[2, 4], [4, 4]]


def test_base_and_unit_steps():
    s = recursion_step(P("2134"), P("2134"))
    assert s.case == "base" and verify_step(s).passed
    s = recursion_step(P("1234"), P("2134"))
    assert s.case == "unit" and verify_step(s).passed


@pytest.mark.parametrize("family", ["patch", "kl"])
def test_every_descent_step_s4(family):
    for v in all_permutations(4):
        b = last_descent(v)
        if b is None:
            continue
        for w in all_permutations(4):
            if not bruhat_leq(w, v) or w(b) < w(b + 1) or v.length() == 1:
                continue
            rep = verify_step(recursion_step(v, w, family))
            assert rep.passed, rep.to_json()


def _codim(gs):
    if gs.is_unit:
        return float("inf")
    mi = initial_ideal(groebner_basis(gs.generators, gs.order))
    return codimension(from_squarefree(mi, gs.ring))


def test_codimensions_along_descent_steps():
    for v in all_permutations(4):
        b = last_descent(v)
        if b is None or v.length() == 1:
            continue
        for w in all_permutations(4):
            if not bruhat_leq(w, v) or w(b) < w(b + 1):
                continue
            s = recursion_step(v, w)
            if s.J.is_unit:
                continue
            assert _codim(s.I) == _codim(s.J) == _codim(s.N) + 1


def test_plucker_worked_rearrangement():
    m = build_matrix(P("654312"), "patch")
    rows = [[m.entry(r, c) for c in range(1, 5)] + [Polynomial.const(int(r == s)) for s in range(1, 5)] for r in range(1, 5)]
    Pd = lambda *c: plucker_det(rows, c)
    lhs = Pd(1, 5, 7, 8) * Pd(1, 2, 4, 6) - Pd(1, 4, 7, 8) * Pd(1, 2, 5, 6)
    rhs = -Pd(1, 2, 7, 8) * Pd(1, 4, 5, 6) + Pd(1, 6, 7, 8) * Pd(1, 2, 4, 5)
    assert (lhs - rhs).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_plucker_random(data):
    k = data.draw(st.integers(1, 3))
    m = data.draw(st.integers(1, 4))
    cols = list(range(1, m + k + 1))
    if len(cols) < k + 1:
        return
    i_seq = sorted(data.draw(st.lists(st.sampled_from(cols), min_size=k - 1, max_size=k - 1, unique=True)))
    j_seq = sorted(data.draw(st.lists(st.sampled_from(cols), min_size=k + 1, max_size=k + 1, unique=True)))
    assert plucker_verify(k, m, i_seq, j_seq, check_translation=False)


def test_plucker_input_validation():
    with pytest.raises(ValueError):
        plucker_verify(2, 2, [1, 2], [1, 2, 3])
    with pytest.raises(ValueError):
        plucker_verify(2, 2, [9], [1, 2, 3])


def test_minor_translation_up_to_sign():
    for p, q in [((1,), (2,)), ((2,), (1,)), ((1, 3), (1, 2)), ((2, 3), (2, 3))]:
        a, b = minor_to_plucker(3, 3, p, q)
        assert a == b or a == -b
    # the sign genuinely varies
    a, b = minor_to_plucker(3, 3, (2,), (1,))
    assert a == -b


def test_difference_membership():
    v, w = P("654312"), P("136524")
    checked, failures = cross_difference_memberships(v, w, 2, 4)
    assert checked == 27 and not failures


def test_difference_sign_matters():
    v, w = P("654312"), P("136524")
    from schubpatch.ideals import strip_minors

    target = strip_minors(v, w, 2).generators + strip_minors(v, w, 4).generators
    order = t_ideal(v, w).order
    plucker_form = cross_difference(v, w, 2, 4, [2], [1], [3, 4], [1, 2])
    minor_form = cross_minor_difference(v, [2], [1], [3, 4], [1, 2])
    assert ideal_contains(plucker_form, target, order)
    assert not ideal_contains(minor_form, target, order)


def test_homogeneity_worked_case():
    h = classify_homogeneity(P("4231"), P("2143"))
    assert not h.direct_patch and h.direct_kl
    assert not h.patch_sufficient and h.witnesses
    assert h.sound


def test_homogeneity_sound_s4():
    for v in all_permutations(4):
        for w in all_permutations(4):
            h = classify_homogeneity(v, w)
            assert h.sound, (str(v), str(w))
            if not h.applicable:
                assert not bruhat_leq(w, v)


def test_homogeneity_conditions_simple_cases():
    assert homogeneity_conditions(P("4321"), P("1234"))[0]  # w avoids 132
    assert homogeneity_conditions(P("1234"), P("1243"))[0]  # v avoids 321 and 231


def test_glicci_schubert_examples():
    assert schubert_glicci(P("2143")).terminal_strings() == ["x11", "x31"]
    ch = schubert_glicci(P("136524"), check_witness=False)
    assert ch.terminal_strings() == ["x21", "x22", "x23", "x41", "x42", "x51"]


def test_glicci_schubert_formula_s4():
    for w in all_permutations(4):
        if w.is_identity():
            continue
        ch = schubert_glicci(w)
        assert ch.terminal_is_linear and ch.witnesses_ok
        assert sorted(ch.terminal) == schubert_terminal_formula(w)


def test_glicci_rejects_inhomogeneous():
    with pytest.raises(InhomogeneousChainInput):
        glicci_chain(P("4231"), P("2143"))


def test_glicci_patch_s4():
    count = 0
    for v in all_permutations(4):
        for w in all_permutations(4):
            Q = patch_ideal(v, w)
            if Q.is_unit or Q.is_zero:
                continue
            try:
                ch = glicci_chain(v, w)
            except InhomogeneousChainInput:
                continue
            count += 1
            assert ch.terminal_is_linear and ch.witnesses_ok
            assert len(ch.terminal) == w.length()
    assert count > 100
