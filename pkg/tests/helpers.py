from schubpatch.groebner import ideal_equal
from schubpatch.polyalg import Polynomial, Var, determinant


def z(i, j):
    return Polynomial.var(Var(i, j, "z"))


def x(i, j):
    return Polynomial.var(Var(i, j, "x"))


def det(rows):
    return determinant(rows)


def contains_up_to_sign(generators, f) -> bool:
    return any(g == f or g == -f for g in generators)


def displayed_subset_and_equal(gs, displayed) -> bool:
    """Every displayed generator is one of ours up to sign, and the ideals agree."""
    missing = [f for f in displayed if not contains_up_to_sign(gs.generators, f)]
    assert not missing, f"not among generators: {[str(f) for f in missing]}"
    return ideal_equal(gs.generators, displayed, gs.order)
