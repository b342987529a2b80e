"""Stanley-Reisner complexes of squarefree monomial ideals."""
from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

from .groebner import MonomialIdeal
from .polyalg import Var

DEFAULT_VERTEX_BOUND = 18


class VertexBoundExceeded(ValueError):
    pass


def _maximal(sets: Iterable[int]) -> frozenset:
    sets = sorted(set(sets), key=lambda s: -bin(s).count("1"))
    out: list[int] = []
    for s in sets:
        if not any(s & t == s for t in out):
            out.append(s)
    return frozenset(out)


def _facets_from_nonfaces(nvert: int, nonfaces: Sequence[int]) -> frozenset:
    """Maximal vertex sets containing no nonface, by branching on a violated nonface."""
    full = (1 << nvert) - 1
    if any(nf == 0 for nf in nonfaces):
        return frozenset()
    found: set[int] = set()
    seen: set[int] = set()
    stack = [full]
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        bad = next((nf for nf in nonfaces if nf & s == nf), None)
        if bad is None:
            found.add(s)
            continue
        x = bad
        while x:
            bit = x & -x
            stack.append(s & ~bit)
            x ^= bit
    return _maximal(found)


class SimplicialComplex:
    """Complex on an ordered vertex list, given by minimal nonfaces.

    A complex with the empty set as a nonface is void (no faces at all).
    """

    def __init__(self, vertices: Sequence, minimal_nonfaces: Iterable[Iterable]):
        self.vertices: tuple = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        masks = []
        for nf in minimal_nonfaces:
            m = 0
            for v in nf:
                m |= 1 << self._index[v]
            masks.append(m)
        # keep only inclusion-minimal nonfaces
        masks = sorted(set(masks), key=lambda s: bin(s).count("1"))
        minimal: list[int] = []
        for m in masks:
            if not any(k & m == k for k in minimal):
                minimal.append(m)
        self._nonfaces = tuple(minimal)
        self._facets: Optional[frozenset] = None

    @property
    def minimal_nonfaces(self) -> list[frozenset]:
        return [self._unmask(m) for m in self._nonfaces]

    def _unmask(self, m: int) -> frozenset:
        return frozenset(v for i, v in enumerate(self.vertices) if m >> i & 1)

    def facet_masks(self) -> frozenset:
        if self._facets is None:
            self._facets = _facets_from_nonfaces(len(self.vertices), self._nonfaces)
        return self._facets

    @property
    def facets(self) -> list[frozenset]:
        return sorted((self._unmask(m) for m in self.facet_masks()), key=lambda f: sorted(f))

    def is_void(self) -> bool:
        return not self.facet_masks()

    def dim(self) -> Optional[int]:
        """None for the void complex, -1 for the complex {∅}."""
        fs = self.facet_masks()
        if not fs:
            return None
        return max(bin(f).count("1") for f in fs) - 1

    def is_pure(self) -> bool:
        sizes = {bin(f).count("1") for f in self.facet_masks()}
        return len(sizes) <= 1

    def is_face(self, face: Iterable) -> bool:
        m = 0
        for v in face:
            m |= 1 << self._index[v]
        return not any(nf & m == nf for nf in self._nonfaces)

    def link_del(self, sigma) -> tuple["SimplicialComplex", "SimplicialComplex"]:
        """Link and deletion of a vertex, both on the remaining vertices."""
        if sigma not in self._index:
            raise ValueError(f"{sigma} is not a vertex")
        rest = [v for v in self.vertices if v != sigma]
        link_nf, del_nf = [], []
        for nf in self.minimal_nonfaces:
            if sigma in nf:
                link_nf.append(nf - {sigma})
            else:
                link_nf.append(nf)
                del_nf.append(nf)
        return SimplicialComplex(rest, link_nf), SimplicialComplex(rest, del_nf)

    def brute_force_facets(self) -> list[frozenset]:
        """Facets by scanning every vertex subset; for cross-checking only."""
        n = len(self.vertices)
        faces = [s for s in range(1 << n) if not any(nf & s == nf for nf in self._nonfaces)]
        return sorted((self._unmask(m) for m in _maximal(faces)), key=lambda f: sorted(f))


def from_squarefree(mi: MonomialIdeal, ambient_vars: Sequence[Var]) -> SimplicialComplex:
    if not mi.is_squarefree():
        raise ValueError("monomial ideal is not squarefree")
    extra = mi.variables() - set(ambient_vars)
    if extra:
        raise ValueError(f"generators use variables outside the ambient set: {sorted(extra)}")
    return SimplicialComplex(list(ambient_vars), [[v for v, _ in g] for g in mi.minimal_generators])


def _vd(facets: frozenset, memo: dict) -> bool:
    if facets in memo:
        return memo[facets]
    if len(facets) <= 1:
        # void complex, or a single simplex (including {∅})
        memo[facets] = True
        return True
    sizes = {bin(f).count("1") for f in facets}
    if len(sizes) > 1:
        memo[facets] = False
        return False
    verts = 0
    for f in facets:
        verts |= f
    result = False
    x = verts
    while x and not result:
        bit = x & -x
        x ^= bit
        link = frozenset(f & ~bit for f in facets if f & bit)
        dele = _maximal(f & ~bit for f in facets)
        # dim del must equal dim, i.e. some facet avoids the vertex
        if not any(not f & bit for f in facets):
            continue
        if _vd(link, memo) and _vd(dele, memo):
            result = True
    memo[facets] = result
    return result


_VD_MEMO: dict = {}


def is_vertex_decomposable(c: SimplicialComplex, vertex_bound: int = DEFAULT_VERTEX_BOUND) -> bool:
    """Pure, and a simplex, void, or split by a shedding vertex whose
    link and deletion are both vertex decomposable with
    dim = dim(del) = dim(link) + 1."""
    used = 0
    for f in c.facet_masks():
        used |= f
    if bin(used).count("1") > vertex_bound:
        raise VertexBoundExceeded(
            f"complex has {bin(used).count('1')} vertices, above the bound {vertex_bound}"
        )
    # Reindex onto the vertices actually used so memo keys are canonical.
    order = [i for i in range(len(c.vertices)) if used >> i & 1]
    remap = {old: new for new, old in enumerate(order)}
    facets = frozenset(
        sum(1 << remap[i] for i in range(len(c.vertices)) if f >> i & 1) for f in c.facet_masks()
    )
    if len(_VD_MEMO) > 200_000:
        _VD_MEMO.clear()
    return _vd(facets, _VD_MEMO)


def codimension(c: SimplicialComplex) -> float:
    """#vertices - (dim + 1); infinite for the void complex (unit ideal)."""
    d = c.dim()
    if d is None:
        return math.inf
    return len(c.vertices) - (d + 1)
