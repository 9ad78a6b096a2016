"""Graphs with an ordered partition of the vertex set into possibly empty
parts.

Objects keep their full edge set (edges may run between parts); the outer
faces delete an outer part and pass to the induced subgraph on the remaining
vertices, the inner faces merge adjacent parts without touching edges.  The
vertex set is always {0..m-1}; deletions compress labels order-preservingly,
which keeps the face maps strictly simplicial.  Canonical forms are computed
by exhaustive minimization over relabellings (fine at <= 4 vertices).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product as iproduct

from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..simplicial import SimpMap, TruncSimpGrpd, product_simplicial
from .sets import _perm_compose, _perm_inverse, _restrict_perm


def _edge_universe(m: int):
    return tuple((u, v) for u in range(m) for v in range(u, m))


@lru_cache(maxsize=None)
def _graphs(m: int):
    universe = _edge_universe(m)
    out = []
    for r in range(len(universe) + 1):
        for edges in combinations(universe, r):
            out.append(tuple(edges))
    return tuple(out)


def _apply_perm_edges(edges, pi):
    return tuple(
        sorted(
            (min(pi[u], pi[v]), max(pi[u], pi[v]))
            for (u, v) in edges
        )
    )


@lru_cache(maxsize=None)
def _graph_canon(obj):
    m, edges, lay = obj
    best = None
    for pi in permutations(range(m)):
        inv = _perm_inverse(pi)
        cand = (
            m,
            _apply_perm_edges(edges, pi),
            tuple(lay[inv[j]] for j in range(m)),
        )
        if best is None or cand < best:
            best = cand
    return best if best is not None else (0, (), ())


@lru_cache(maxsize=None)
def _graph_isos(x, y):
    m, ex, lx = x
    my, ey, ly = y
    if m != my or len(ex) != len(ey) or sorted(lx) != sorted(ly):
        return ()
    eyset = set(ey)
    out = []
    for pi in permutations(range(m)):
        if all(ly[pi[e]] == lx[e] for e in range(m)) and all(
            (min(pi[u], pi[v]), max(pi[u], pi[v])) in eyset for (u, v) in ex
        ):
            out.append(pi)
    return tuple(out)


def _g_level(k: int, bound: int) -> FiniteGroupoid:
    objects = []
    for m in range(bound + 1):
        for edges in _graphs(m):
            for lay in iproduct(range(1, k + 1), repeat=m):
                objects.append((m, edges, lay))
    return FiniteGroupoid(
        f"G_{k}",
        objects,
        _graph_isos,
        _perm_compose,
        _perm_inverse,
        lambda x: tuple(range(x[0])),
        grade=lambda x: x[0],
        canon_key=_graph_canon,
    )


def _g_face_omap(k, i, obj):
    m, edges, lay = obj
    if 0 < i < k:
        return (m, edges, tuple(l if l <= i else l - 1 for l in lay))
    drop = 1 if i == 0 else k
    keep = [e for e in range(m) if lay[e] != drop]
    pos = {e: p for p, e in enumerate(keep)}
    new_edges = tuple(
        sorted((pos[u], pos[v]) for (u, v) in edges if u in pos and v in pos)
    )
    shift = 1 if i == 0 else 0
    return (len(keep), new_edges, tuple(lay[e] - shift for e in keep))


def _g_face_amap(k, i, x, y, pi):
    if 0 < i < k:
        return pi
    drop = 1 if i == 0 else k
    keep_x = [e for e in range(x[0]) if x[2][e] != drop]
    keep_y = [e for e in range(y[0]) if y[2][e] != drop]
    return _restrict_perm(pi, keep_x, keep_y)


def _g_degen_omap(k, i, obj):
    m, edges, lay = obj
    return (m, edges, tuple(l if l <= i else l + 1 for l in lay))


def graphs_G(max_vertices: int, N: int) -> TruncSimpGrpd:
    """Graphs graded by vertex count, with ordered vertex partitions per
    level and the disjoint-union monoidal map."""
    levels = tuple(_g_level(k, max_vertices) for k in range(N + 1))
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, n=n, i=i: _g_face_omap(n, i, obj),
                lambda x, y, d, n=n, i=i: _g_face_amap(n, i, x, y, d),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, n=n, i=i: _g_degen_omap(n, i, obj),
                lambda x, y, d: d,
                name=f"s_{i}",
            )
    X = TruncSimpGrpd(
        "graphs",
        N,
        levels,
        faces,
        degens,
        max_vertices,
        key_renderer=render_graph_key,
    )
    X.monoidal = _g_monoidal(X)
    X.unit_key = (0, (), ())
    return X


def _g_monoidal(X: TruncSimpGrpd) -> SimpMap:
    P = product_simplicial(X, X, grade_bound=X.grade_bound)

    def omap(pair):
        (m1, e1, l1), (m2, e2, l2) = pair
        edges = e1 + tuple((m1 + u, m1 + v) for (u, v) in e2)
        return (m1 + m2, tuple(sorted(edges)), l1 + l2)

    def amap(xs, ys, ds):
        pi1, pi2 = ds
        m1 = xs[0][0]
        return pi1 + tuple(m1 + v for v in pi2)

    comps = tuple(
        GroupoidFunctor(P.level(n), X.level(n), omap, amap, name="mu")
        for n in range(X.N + 1)
    )
    return SimpMap("mu[graphs]", P, X, comps)


def render_graph_key(key) -> str:
    """Rendering ``m:uv,uv`` of a graph iso class, e.g. K2 is ``2:01``."""
    m, edges, _ = key
    return f"{m}:" + ",".join(f"{u}{v}" for (u, v) in edges)
