"""Rooted forests with admissible layerings.

A level-k object is a labelled rooted forest on {0..m-1} together with a
layer assignment into {1..k} that weakly increases from root to leaf.  The
simplicial structure counts cuts from the leaf side: d_0 deletes the leafmost
layer, d_k deletes the root layer (whose complement becomes a forest of
crowns), and the inner faces merge adjacent layers.  With this orientation
the pair of outer faces of a 2-layered forest is (crown part, root part),
the classical cut coproduct.

Deleted labels are closed up by the unique order-preserving relabelling onto
an initial segment, which is what makes the face maps strictly simplicial.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product as iproduct

from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..simplicial import SimpMap, TruncSimpGrpd, product_simplicial
from .sets import _perm_compose, _perm_inverse, _restrict_perm


@lru_cache(maxsize=None)
def _labeled_forests(m: int):
    """All acyclic parent tuples on {0..m-1} (-1 marks a root)."""
    out = []
    for parents in iproduct(range(-1, m), repeat=m):
        if any(parents[e] == e for e in range(m)):
            continue
        ok = True
        for e in range(m):
            seen = set()
            cur = e
            while cur != -1:
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                cur = parents[cur]
            if not ok:
                break
        if ok:
            out.append(parents)
    return tuple(out)


def _layerings(parents, k: int):
    m = len(parents)
    out = []
    for lay in iproduct(range(1, k + 1), repeat=m):
        if all(parents[e] == -1 or lay[e] >= lay[parents[e]] for e in range(m)):
            out.append(lay)
    return out


@lru_cache(maxsize=None)
def _forest_canon(obj):
    m, parents, lay = obj
    children: dict = {e: [] for e in range(m)}
    roots = []
    for e in range(m):
        if parents[e] == -1:
            roots.append(e)
        else:
            children[parents[e]].append(e)

    def enc(e):
        return (lay[e], tuple(sorted(enc(c) for c in children[e])))

    return tuple(sorted(enc(r) for r in roots))


@lru_cache(maxsize=None)
def _forest_isos(x, y):
    m, px, lx = x
    my, py, ly = y
    if m != my or sorted(lx) != sorted(ly):
        return ()
    out = []
    for pi in permutations(range(m)):
        if all(ly[pi[e]] == lx[e] for e in range(m)) and all(
            (py[pi[e]] == -1) if px[e] == -1 else (py[pi[e]] == pi[px[e]])
            for e in range(m)
        ):
            out.append(pi)
    return tuple(out)


def _h_level(k: int, bound: int) -> FiniteGroupoid:
    objects = []
    for m in range(bound + 1):
        for parents in _labeled_forests(m):
            for lay in _layerings(parents, k):
                objects.append((m, parents, lay))
    return FiniteGroupoid(
        f"H_{k}",
        objects,
        _forest_isos,
        _perm_compose,
        _perm_inverse,
        lambda x: tuple(range(x[0])),
        grade=lambda x: x[0],
        canon_key=_forest_canon,
    )


def _delete_layer(obj, layer_value: int, shift: bool):
    m, parents, lay = obj
    keep = [e for e in range(m) if lay[e] != layer_value]
    pos = {e: p for p, e in enumerate(keep)}
    new_parents = tuple(
        -1 if parents[e] == -1 or parents[e] not in pos else pos[parents[e]]
        for e in keep
    )
    new_lay = tuple(lay[e] - (1 if shift else 0) for e in keep)
    return (len(keep), new_parents, new_lay)


def _h_face_omap(k, i, obj):
    m, parents, lay = obj
    if i == 0:
        # delete the leafmost layer; survivors are closed under parents
        return _delete_layer(obj, k, shift=False)
    if i == k:
        # delete the root layer; orphaned nodes become roots
        return _delete_layer(obj, 1, shift=True)
    t = k - i
    return (m, parents, tuple(l if l <= t else l - 1 for l in lay))


def _h_face_amap(k, i, x, y, pi):
    if 0 < i < k:
        return pi
    drop = k if i == 0 else 1
    keep_x = [e for e in range(x[0]) if x[2][e] != drop]
    keep_y = [e for e in range(y[0]) if y[2][e] != drop]
    return _restrict_perm(pi, keep_x, keep_y)


def _h_degen_omap(k, i, obj):
    m, parents, lay = obj
    t = k - i
    return (m, parents, tuple(l if l <= t else l + 1 for l in lay))


def forests_H(max_nodes: int, N: int) -> TruncSimpGrpd:
    """Forests with admissible cuts, graded by node count; ships the
    disjoint-union monoidal map."""
    levels = tuple(_h_level(k, max_nodes) for k in range(N + 1))
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, n=n, i=i: _h_face_omap(n, i, obj),
                lambda x, y, d, n=n, i=i: _h_face_amap(n, i, x, y, d),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, n=n, i=i: _h_degen_omap(n, i, obj),
                lambda x, y, d: d,
                name=f"s_{i}",
            )
    X = TruncSimpGrpd(
        "forests",
        N,
        levels,
        faces,
        degens,
        max_nodes,
        key_renderer=render_forest_key,
    )
    X.monoidal = _h_monoidal(X)
    X.unit_key = ()
    return X


def _h_monoidal(X: TruncSimpGrpd) -> SimpMap:
    P = product_simplicial(X, X, grade_bound=X.grade_bound)

    def omap(pair):
        (m1, p1, l1), (m2, p2, l2) = pair
        parents = p1 + tuple(-1 if p == -1 else m1 + p for p in p2)
        return (m1 + m2, parents, l1 + l2)

    def amap(xs, ys, ds):
        pi1, pi2 = ds
        m1 = xs[0][0]
        return pi1 + tuple(m1 + v for v in pi2)

    comps = tuple(
        GroupoidFunctor(P.level(n), X.level(n), omap, amap, name="mu")
        for n in range(X.N + 1)
    )
    return SimpMap("mu[forests]", P, X, comps)


def _render_tree(t) -> str:
    return "(" + "".join(_render_tree(c) for c in t[1]) + ")"


def render_forest_key(key) -> str:
    """Nested-parenthesis rendering of a forest iso class; '0' is empty."""
    return "".join(_render_tree(t) for t in key) or "0"
