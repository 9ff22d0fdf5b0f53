"""Classifying maps from 1-cocycles and simplicial homotopies between them.

A normalized 1-cocycle (alpha, u) valued in a crossed module induces a
simplicial map from the nerve of the group to the Duskin nerve: edge labels
are alpha of interval products, triangle labels are u of the adjacent
products.  A coboundary witness with trivial twist turns into explicit
homotopy data on the prism (nerve x Delta^1); witnesses with a nontrivial
twist factor through the conjugation automorphism of the crossed module,
by either of two routes that are checked to agree cell by cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .crossed import (Cocycle1, CrossedModule, Witness1, cocycle_violations,
                      transform_cocycle)
from .errors import ResourceLimit
from .groups import FiniteGroup
from .nerves import (PseudofunctorSimplex, SimplicialMap, duskin_nerve,
                     ordinary_nerve, simplicial_map_violations)
from .simplicial import TruncatedSimplicialSet, prism, prism_end


def cocycle_to_simplicial_map(group: FiniteGroup, x: CrossedModule,
                              c: Cocycle1, n_trunc: int = 3,
                              source: TruncatedSimplicialSet | None = None,
                              target: TruncatedSimplicialSet | None = None
                              ) -> SimplicialMap:
    """The classifying map nerve(group) -> duskin_nerve(x) of a 1-cocycle.

    A chain (g_1, ..., g_k) goes to the simplex with
    alpha_{ij} = alpha(g_{i+1} ... g_j) and
    u_{ijk} = u(g_{i+1} ... g_j, g_{j+1} ... g_k).
    """
    bad = cocycle_violations(group, x, c)
    if bad:
        raise ValueError("not a normalized cocycle: " + bad[0])
    if source is None:
        source = ordinary_nerve(group, n_trunc)
    if target is None:
        target = duskin_nerve(x, n_trunc)
    n = group.order
    layers = []
    for k in range(source.N + 1):
        table = []
        for chain in source.simplices[k]:
            prods = {(i, j): group.prod(chain[i:j])
                     for i, j in combinations(range(k + 1), 2)}
            alpha = tuple(c.alpha[prods[(i, j)]]
                          for i, j in combinations(range(k + 1), 2))
            u = tuple(c.u[prods[(i, j)] * n + prods[(j, kk)]]
                      for i, j, kk in combinations(range(k + 1), 3))
            table.append(target.index_of(k, PseudofunctorSimplex(k, alpha, u)))
        layers.append(table)
    f = SimplicialMap(source, target, layers)
    bad = simplicial_map_violations(f)
    if bad:
        raise RuntimeError("cocycle data is not simplicial: " + bad[0])
    return f


# ---------------------------------------------------------------------------
# homotopies on the prism
# ---------------------------------------------------------------------------

@dataclass
class SimplicialHomotopy:
    """Levelwise data on source x Delta^1 connecting two simplicial maps.

    The time-0 end restricts to ``start``, the time-1 end to ``end``.
    """

    start: SimplicialMap
    end: SimplicialMap
    cylinder: TruncatedSimplicialSet
    layers: list[list[int]]

    def as_map(self) -> SimplicialMap:
        return SimplicialMap(self.cylinder, self.start.target, self.layers)


def homotopy_violations(h: SimplicialHomotopy) -> list[str]:
    """Simplicial-map check on the cylinder plus both end restrictions."""
    if h.start.target is not h.end.target and \
            h.start.target.counts() != h.end.target.counts():
        return ["the two maps have different targets"]
    bad = simplicial_map_violations(h.as_map())
    src = h.start.source
    for k in range(src.N + 1):
        for idx in range(src.count(k)):
            if h.layers[k][prism_end(h.cylinder, k, idx, True)] != \
                    h.start.layers[k][idx]:
                bad.append(f"time-0 end differs at level {k}, simplex {idx}")
            if h.layers[k][prism_end(h.cylinder, k, idx, False)] != \
                    h.end.layers[k][idx]:
                bad.append(f"time-1 end differs at level {k}, simplex {idx}")
    return bad


def _theta_simplex(group: FiniteGroup, x: CrossedModule, a: Cocycle1,
                   b: Cocycle1, w, chain, t: int) -> PseudofunctorSimplex:
    """The homotopy value on (chain, t): vertices below t sit at time 0."""
    k = len(chain)
    n = group.order
    h = x.hgroup
    prods = {(i, j): group.prod(chain[i:j])
             for i, j in combinations(range(k + 1), 2)}
    alpha = []
    for i, j in combinations(range(k + 1), 2):
        p = prods[(i, j)]
        alpha.append(b.alpha[p] if i >= t else a.alpha[p])
    u = []
    for i, j, kk in combinations(range(k + 1), 3):
        p, q = prods[(i, j)], prods[(j, kk)]
        if i >= t:
            u.append(b.u[p * n + q])
        elif j >= t:
            u.append(h.op(x.act(a.alpha[p], w[q]), a.u[p * n + q]))
        else:
            u.append(a.u[p * n + q])
    return PseudofunctorSimplex(k, tuple(alpha), tuple(u))


def coboundary_to_homotopy(group: FiniteGroup, x: CrossedModule,
                           a: Cocycle1, b: Cocycle1, wit: Witness1,
                           n_trunc: int = 3,
                           source: TruncatedSimplicialSet | None = None,
                           target: TruncatedSimplicialSet | None = None
                           ) -> SimplicialHomotopy:
    """Homotopy between the classifying maps of two cohomologous cocycles.

    Requires a twist-free witness (gamma = identity); the witness is checked
    against the compositor identity before anything is built, and the
    resulting prism data is verified exhaustively within the truncation.
    """
    if wit.gamma != x.ggroup.identity:
        raise ValueError("witness has a nontrivial twist; factor it through "
                         "the conjugation automorphism first")
    _check_witness(group, x, a, b, wit)
    fa = cocycle_to_simplicial_map(group, x, a, n_trunc, source, target)
    fb = cocycle_to_simplicial_map(group, x, b, n_trunc,
                                   fa.source, fa.target)
    cyl = prism(fa.source)
    layers = []
    for k in range(cyl.N + 1):
        table = []
        for idx, t in cyl.simplices[k]:
            s = _theta_simplex(group, x, a, b, wit.w,
                               fa.source.simplices[k][idx], t)
            table.append(fa.target.index_of(k, s))
        layers.append(table)
    hom = SimplicialHomotopy(fa, fb, cyl, layers)
    bad = homotopy_violations(hom)
    if bad:
        raise RuntimeError("homotopy data fails verification: " + bad[0])
    return hom


def _check_witness(group: FiniteGroup, x: CrossedModule, a: Cocycle1,
                   b: Cocycle1, wit: Witness1) -> None:
    """Reject witnesses whose transformation misses b, naming the failure."""
    got = transform_cocycle(group, x, a, wit.gamma, wit.w)
    n = group.order
    for g in group.elements():
        if got.alpha[g] != b.alpha[g]:
            raise ValueError(f"witness fails the edge identity at {g}")
    for g in group.elements():
        for hh in group.elements():
            if got.u[g * n + hh] != b.u[g * n + hh]:
                raise ValueError(
                    "witness fails the compositor associativity identity at "
                    f"({g}, {hh})")


# ---------------------------------------------------------------------------
# twisted witnesses: factor through the conjugation automorphism
# ---------------------------------------------------------------------------

def conjugation_nerve_map(x: CrossedModule, gamma: int,
                          dusk: TruncatedSimplicialSet) -> SimplicialMap:
    """Automorphism of the Duskin nerve induced by conjugation by gamma."""
    g = x.ggroup
    layers = []
    for k in range(dusk.N + 1):
        table = []
        for s in dusk.simplices[k]:
            alpha = tuple(g.conj(gamma, v) for v in s.alpha)
            u = tuple(x.act(gamma, v) for v in s.u)
            table.append(dusk.index_of(
                k, PseudofunctorSimplex(k, alpha, u)))
        layers.append(table)
    return SimplicialMap(dusk, dusk, layers)


def compose_maps(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    layers = [[outer.layers[k][v] for v in inner.layers[k]]
              for k in range(inner.source.N + 1)]
    return SimplicialMap(inner.source, outer.target, layers)


def outer_witness_homotopy(group: FiniteGroup, x: CrossedModule,
                           a: Cocycle1, b: Cocycle1, wit: Witness1,
                           n_trunc: int = 3
                           ) -> tuple[SimplicialMap, SimplicialHomotopy]:
    """Homotopy data for a twisted witness, via two agreeing factorizations.

    Returns (conj, H) where conj is the nerve automorphism of the twist and
    H runs from conj o (map of a) to the map of b.  Route one rewrites the
    witness as conjugation followed by a twist-free witness from the
    conjugated cocycle; route two applies a twist-free witness first and
    conjugates the resulting homotopy.  Both routes are built and must agree
    on every prism cell.
    """
    g, h = x.ggroup, x.hgroup
    gamma = wit.gamma
    _check_witness(group, x, a, b, wit)
    ones = (h.identity,) * group.order
    conj_a = transform_cocycle(group, x, a, gamma, ones)
    wit_inner = Witness1(g.identity, wit.w)
    route1 = coboundary_to_homotopy(group, x, conj_a, b, wit_inner, n_trunc)
    conj = conjugation_nerve_map(x, gamma, route1.start.target)

    gi = g.inv[gamma]
    w_back = tuple(x.act(gi, v) for v in wit.w)
    mid = transform_cocycle(group, x, a, g.identity, w_back)
    route2_inner = coboundary_to_homotopy(
        group, x, a, mid, Witness1(g.identity, w_back), n_trunc,
        route1.start.source, route1.start.target)
    lifted = [[conj.layers[k][v] for v in route2_inner.layers[k]]
              for k in range(route2_inner.cylinder.N + 1)]
    if lifted != route1.layers:
        raise RuntimeError(
            "the two factorizations of the twisted witness disagree")
    fa = cocycle_to_simplicial_map(group, x, a, n_trunc,
                                   route1.start.source, route1.start.target)
    start = compose_maps(conj, fa)
    if start.layers != route1.start.layers:
        raise RuntimeError("conjugated start map mismatch")
    return conj, route1


# ---------------------------------------------------------------------------
# exhaustive homotopy search
# ---------------------------------------------------------------------------

def find_simplicial_homotopy(f: SimplicialMap, g: SimplicialMap,
                             budget: int = 10 ** 7
                             ) -> SimplicialHomotopy | None:
    """Search all prism fillings from f to g; None if none exists.

    Levels are filled in ascending order.  Faces of a level-k cell live at
    level k-1 and are already assigned, so each cell's candidate set is
    computed independently; degeneracy images are forced outright.  The
    search branches only over nondegenerate interior cells.
    """
    if f.source is not g.source and f.source.counts() != g.source.counts():
        raise ValueError("maps must share their source")
    if f.target is not g.target and f.target.counts() != g.target.counts():
        raise ValueError("maps must share their target")
    src, tgt = f.source, f.target
    cyl = prism(src)
    assign: list[list[int | None]] = [
        [None] * cyl.count(k) for k in range(cyl.N + 1)]
    for k in range(src.N + 1):
        for idx in range(src.count(k)):
            assign[k][prism_end(cyl, k, idx, True)] = f.layers[k][idx]
            assign[k][prism_end(cyl, k, idx, False)] = g.layers[k][idx]

    tries = 0

    def fill(k: int) -> bool:
        nonlocal tries
        if k > cyl.N:
            return True
        forced: dict[int, int] = {}
        if k >= 1:
            for i in range(k):
                for low, high in enumerate(cyl.degen[k - 1][i]):
                    if assign[k - 1][low] is None:
                        continue
                    want = tgt.degen[k - 1][i][assign[k - 1][low]]
                    if forced.setdefault(high, want) != want:
                        return False
        free: list[int] = []
        options: list[list[int]] = []
        saved = list(assign[k])
        for pos in range(cyl.count(k)):
            fixed = assign[k][pos]
            want = forced.get(pos)
            if fixed is None and want is not None:
                assign[k][pos] = fixed = want
            elif fixed is not None and want is not None and want != fixed:
                assign[k] = saved
                return False
            if fixed is not None:
                if not _faces_ok(cyl, tgt, assign, k, pos, fixed):
                    assign[k] = saved
                    return False
                continue
            cands = [v for v in range(tgt.count(k))
                     if _faces_ok(cyl, tgt, assign, k, pos, v)]
            if not cands:
                assign[k] = saved
                return False
            free.append(pos)
            options.append(cands)
        total = 1
        for c in options:
            total *= len(c)
            if total > budget:
                raise ResourceLimit(f"homotopy search at level {k}",
                                    total, budget)
        for combo in product(*options):
            tries += 1
            if tries > budget:
                raise ResourceLimit("homotopy search candidates",
                                    tries, budget)
            for pos, v in zip(free, combo):
                assign[k][pos] = v
            if fill(k + 1):
                return True
        assign[k] = saved
        return False

    if not fill(1 if cyl.N >= 1 else 0):
        return None
    layers = [[v for v in level] for level in assign]
    hom = SimplicialHomotopy(f, g, cyl, layers)
    bad = homotopy_violations(hom)
    if bad:
        raise RuntimeError("search produced invalid data: " + bad[0])
    return hom


def _faces_ok(cyl, tgt, assign, k: int, pos: int, val: int) -> bool:
    if k == 0:
        return True
    for i in range(k + 1):
        low = assign[k - 1][cyl.face[k][i][pos]]
        if low is not None and tgt.face[k][i][val] != low:
            return False
    return True
