import math
from functools import lru_cache
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from schubpatch.complexes import (
    SimplicialComplex,
    VertexBoundExceeded,
    codimension,
    from_squarefree,
    is_vertex_decomposable,
)
from schubpatch.groebner import MonomialIdeal
from schubpatch.polyalg import Var, mono

V = list(range(6))


def faces_of(facets):
    out = set()
    for f in facets:
        for k in range(len(f) + 1):
            out.update(frozenset(s) for s in combinations(sorted(f), k))
    return frozenset(out)


@lru_cache(maxsize=None)
def vd_oracle(faces: frozenset) -> bool:
    """Definition read literally on the face poset."""
    if not faces:
        return True
    facets = [f for f in faces if not any(f < g for g in faces)]
    if len({len(f) for f in facets}) > 1:
        return False
    if len(facets) == 1:
        return True
    dim = len(facets[0]) - 1
    verts = set().union(*faces)
    for s in verts:
        link = frozenset(t for t in faces if s not in t and (t | {s}) in faces)
        dele = frozenset(t for t in faces if s not in t)
        dl = max(len(t) for t in link) - 1
        dd = max(len(t) for t in dele) - 1
        if dd == dim and dl + 1 == dim and vd_oracle(link) and vd_oracle(dele):
            return True
    return False


nonfaces = st.lists(st.sets(st.sampled_from(V), min_size=1, max_size=3), max_size=6)


@given(nonfaces)
def test_facets_match_brute_force(nf):
    c = SimplicialComplex(V, nf)
    assert c.facets == c.brute_force_facets()


@given(nonfaces)
def test_vertex_decomposable_matches_definition(nf):
    c = SimplicialComplex(V, nf)
    assert is_vertex_decomposable(c) == vd_oracle(faces_of(c.facets))


@given(nonfaces, st.sampled_from(V))
def test_link_and_deletion(nf, s):
    c = SimplicialComplex(V, nf)
    if not c.is_face([s]):
        return
    link, dele = c.link_del(s)
    faces = faces_of(c.facets)
    assert faces_of(link.facets) == {t for t in faces if s not in t and (t | {s}) in faces}
    assert faces_of(dele.facets) == {t for t in faces if s not in t}


def test_graphs_vd_iff_connected():
    # a path is vertex decomposable, two disjoint edges are not
    path = SimplicialComplex([0, 1, 2, 3], [{0, 2}, {0, 3}, {1, 3}])
    assert is_vertex_decomposable(path)
    split = SimplicialComplex([0, 1, 2, 3], [{0, 2}, {0, 3}, {1, 2}, {1, 3}])
    assert split.dim() == 1 and split.is_pure()
    assert not is_vertex_decomposable(split)


def test_void_and_simplex():
    void = SimplicialComplex([0, 1], [set()])
    assert void.is_void() and void.dim() is None and is_vertex_decomposable(void)
    assert codimension(void) == math.inf
    simplex = SimplicialComplex([0, 1, 2], [])
    assert simplex.dim() == 2 and codimension(simplex) == 0 and is_vertex_decomposable(simplex)
    empty_face_only = SimplicialComplex([0, 1], [{0}, {1}])
    assert empty_face_only.dim() == -1 and is_vertex_decomposable(empty_face_only)


def test_boundary_of_simplex():
    c = SimplicialComplex([0, 1, 2, 3], [{0, 1, 2, 3}])
    assert c.dim() == 2 and is_vertex_decomposable(c)


def test_impure_is_not_vd():
    c = SimplicialComplex([0, 1, 2], [{0, 2}, {1, 2}])
    assert not c.is_pure() and not is_vertex_decomposable(c)


def test_from_squarefree():
    a, b, c = Var(1, 1), Var(1, 2), Var(2, 1)
    cx = from_squarefree(MonomialIdeal([mono(a, b)]), [a, b, c])
    assert sorted(map(sorted, cx.facets)) == [[a, c], [b, c]]
    assert codimension(cx) == 1
    with pytest.raises(ValueError):
        from_squarefree(MonomialIdeal([mono((a, 2))]), [a, b, c])
    with pytest.raises(ValueError):
        from_squarefree(MonomialIdeal([mono(a)]), [b, c])


def test_vertex_bound():
    c = SimplicialComplex(list(range(20)), [])
    with pytest.raises(VertexBoundExceeded):
        is_vertex_decomposable(c, vertex_bound=10)
