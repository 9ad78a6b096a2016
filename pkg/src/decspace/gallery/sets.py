"""Layered finite sets (the binomial family), strings of monotone injections,
and the decalage comparison between the two.

A level-k object of the binomial family is a finite set {0..m-1} with a layer
assignment into {1..k}; merging adjacent layers, deleting an outer layer (with
canonical order-compression of the surviving labels) and inserting an empty
layer give strictly simplicial structure maps.  Iso classes are layer-size
tuples and automorphisms are layer-preserving permutations, so this is the
monoidal nerve of finite sets under disjoint union in a strict skeletal
presentation.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product as iproduct

from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..simplicial import SimpMap, TruncSimpGrpd, dec, product_simplicial


def _perm_compose(g, f):
    return tuple(g[v] for v in f)


def _perm_inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _restrict_perm(pi, keep_src, keep_tgt):
    pos = {e: i for i, e in enumerate(keep_tgt)}
    return tuple(pos[pi[e]] for e in keep_src)


# ---------------------------------------------------------------------------
# layered finite sets


@lru_cache(maxsize=None)
def _layered_isos(x, y):
    """All layer-preserving bijections between two layered sets."""
    m, lx = x
    my, ly = y
    if m != my or sorted(lx) != sorted(ly):
        return ()
    by_layer_x: dict = {}
    by_layer_y: dict = {}
    for e in range(m):
        by_layer_x.setdefault(lx[e], []).append(e)
    for e in range(m):
        by_layer_y.setdefault(ly[e], []).append(e)
    if {k: len(v) for k, v in by_layer_x.items()} != {
        k: len(v) for k, v in by_layer_y.items()
    }:
        return ()
    layers = sorted(by_layer_x)
    out = [dict()]
    for lay in layers:
        src, tgt = by_layer_x[lay], by_layer_y[lay]
        new = []
        for base in out:
            for assignment in permutations(tgt):
                d = dict(base)
                d.update(zip(src, assignment))
                new.append(d)
        out = new
    return tuple(tuple(d[e] for e in range(m)) for d in out)


def _b_level(k: int, bound: int) -> FiniteGroupoid:
    objects = []
    for m in range(bound + 1):
        for layers in iproduct(range(1, k + 1), repeat=m):
            objects.append((m, layers))
    return FiniteGroupoid(
        f"B_{k}",
        objects,
        _layered_isos,
        _perm_compose,
        _perm_inverse,
        lambda x: tuple(range(x[0])),
        grade=lambda x: x[0],
        canon_key=lambda x, k=k: tuple(x[1].count(j) for j in range(1, k + 1)),
    )


def _b_face_omap(k, i, obj):
    m, layers = obj
    if 0 < i < k:
        return (m, tuple(l if l <= i else l - 1 for l in layers))
    drop = 1 if i == 0 else k
    keep = [e for e in range(m) if layers[e] != drop]
    shift = 1 if i == 0 else 0
    return (len(keep), tuple(layers[e] - shift for e in keep))


def _b_face_amap(k, i, x, y, pi):
    if 0 < i < k:
        return pi
    drop = 1 if i == 0 else k
    keep_x = [e for e in range(x[0]) if x[1][e] != drop]
    keep_y = [e for e in range(y[0]) if y[1][e] != drop]
    return _restrict_perm(pi, keep_x, keep_y)


def _b_degen_omap(k, i, obj):
    m, layers = obj
    return (m, tuple(l if l <= i else l + 1 for l in layers))


def binomial_B(max_size: int, N: int) -> TruncSimpGrpd:
    """The binomial family: finite sets graded by size, layered per level.

    Ships the disjoint-union monoidal map (shift-relabelled union, which is
    strictly natural) and canonical keys equal to layer-size tuples.
    """
    levels = tuple(_b_level(k, max_size) for k in range(N + 1))
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, n=n, i=i: _b_face_omap(n, i, obj),
                lambda x, y, d, n=n, i=i: _b_face_amap(n, i, x, y, d),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, n=n, i=i: _b_degen_omap(n, i, obj),
                lambda x, y, d: d,
                name=f"s_{i}",
            )
    X = TruncSimpGrpd(
        "binomial",
        N,
        levels,
        faces,
        degens,
        max_size,
        key_renderer=lambda key: str(key[0]) if len(key) == 1 else str(key),
    )
    X.monoidal = _b_monoidal(X)
    X.unit_key = (0,)
    return X


def _b_monoidal(X: TruncSimpGrpd) -> SimpMap:
    P = product_simplicial(X, X, grade_bound=X.grade_bound)

    def omap(pair):
        (m1, l1), (m2, l2) = pair
        return (m1 + m2, l1 + l2)

    def amap(xs, ys, ds):
        p1, p2 = ds
        m1 = xs[0][0]
        return p1 + tuple(m1 + v for v in p2)

    comps = tuple(
        GroupoidFunctor(P.level(n), X.level(n), omap, amap, name="mu")
        for n in range(X.N + 1)
    )
    return SimpMap("mu[binomial]", P, X, comps)


# ---------------------------------------------------------------------------
# strings of monotone injections


@lru_cache(maxsize=None)
def _string_isos(x, y):
    """Commuting ladders of bijections between two injection strings."""
    sa, fx = x
    sb, fy = y
    if sa != sb:
        return ()
    k = len(sa) - 1
    results = []

    def rec(j, phis):
        if j > k:
            results.append(tuple(phis))
            return
        a = sa[j]
        if j == 0:
            for p in permutations(range(a)):
                rec(1, [p])
            return
        f, g = fx[j - 1], fy[j - 1]
        prev = phis[-1]
        det = {}
        for e in range(sa[j - 1]):
            det[f[e]] = g[prev[e]]
        free_src = [v for v in range(a) if v not in det]
        free_tgt = [v for v in range(a) if v not in set(det.values())]
        for assignment in permutations(free_tgt):
            phi = list(range(a))
            for v, w in det.items():
                phi[v] = w
            for v, w in zip(free_src, assignment):
                phi[v] = w
            rec(j + 1, phis + [tuple(phi)])

    rec(0, [])
    return tuple(results)


def _tuple_compose(g, f):
    return tuple(_perm_compose(a, b) for a, b in zip(g, f))


def _tuple_inverse(d):
    return tuple(_perm_inverse(a) for a in d)


def _i_level(k: int, bound: int) -> FiniteGroupoid:
    objects = []

    def rec(sizes, maps):
        if len(sizes) == k + 1:
            objects.append((tuple(sizes), tuple(maps)))
            return
        a = sizes[-1]
        for b in range(a, bound + 1):
            for img in combinations(range(b), a):
                rec(sizes + [b], maps + [tuple(img)])

    for a0 in range(bound + 1):
        rec([a0], [])
    return FiniteGroupoid(
        f"I_{k}",
        objects,
        _string_isos,
        _tuple_compose,
        _tuple_inverse,
        lambda x: tuple(tuple(range(a)) for a in x[0]),
        grade=lambda x: x[0][-1],
        canon_key=lambda x: x[0],
    )


def _inj_compose(g, f):
    return tuple(g[v] for v in f)


def _i_face_omap(k, i, obj):
    sizes, maps = obj
    if i == 0:
        return (sizes[1:], maps[1:])
    if i == k:
        return (sizes[:-1], maps[:-1])
    merged = _inj_compose(maps[i], maps[i - 1])
    return (
        sizes[:i] + sizes[i + 1 :],
        maps[: i - 1] + (merged,) + maps[i + 1 :],
    )


def _i_face_amap(k, i, x, y, phis):
    return phis[:i] + phis[i + 1 :]


def _i_degen_omap(k, i, obj):
    sizes, maps = obj
    ident = tuple(range(sizes[i]))
    return (
        sizes[: i + 1] + sizes[i:],
        maps[:i] + (ident,) + maps[i:],
    )


def _i_degen_amap(k, i, x, y, phis):
    return phis[: i + 1] + phis[i:]


def _string_space(name: str, bound: int, N: int, discrete: bool) -> TruncSimpGrpd:
    if discrete:
        levels = tuple(_oi_level(k, bound) for k in range(N + 1))
    else:
        levels = tuple(_i_level(k, bound) for k in range(N + 1))
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, n=n, i=i: _i_face_omap(n, i, obj),
                (lambda x, y, d: ())
                if discrete
                else (lambda x, y, d, n=n, i=i: _i_face_amap(n, i, x, y, d)),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, n=n, i=i: _i_degen_omap(n, i, obj),
                (lambda x, y, d: ())
                if discrete
                else (lambda x, y, d, n=n, i=i: _i_degen_amap(n, i, x, y, d)),
                name=f"s_{i}",
            )
    return TruncSimpGrpd(
        name,
        N,
        levels,
        faces,
        degens,
        bound,
        key_renderer=lambda key: (
            f"{key[0]}->{key[1]}" if len(key) == 2 else str(key)
        ),
    )


def _oi_level(k: int, bound: int) -> FiniteGroupoid:
    base = _i_level(k, bound)
    return FiniteGroupoid(
        f"OI_{k}",
        base.objects,
        lambda x, y: ((),) if x == y else (),
        lambda g, f: (),
        lambda d: (),
        lambda x: (),
        grade=base.grade,
        canon_key=lambda x: x,
    )


def _i_monoidal(X: TruncSimpGrpd) -> SimpMap:
    P = product_simplicial(X, X, grade_bound=X.grade_bound)

    def omap(pair):
        (sa, fa), (sb, fb) = pair
        sizes = tuple(a + b for a, b in zip(sa, sb))
        maps = tuple(
            tuple(f[e] for e in range(sa[j])) + tuple(sa[j + 1] + g[e] for e in range(sb[j]))
            for j, (f, g) in enumerate(zip(fa, fb))
        )
        return (sizes, maps)

    def amap(xs, ys, ds):
        (sa, _), _ = xs
        p, q = ds
        return tuple(
            phi + tuple(sa[j] + v for v in psi)
            for j, (phi, psi) in enumerate(zip(p, q))
        )

    comps = tuple(
        GroupoidFunctor(P.level(n), X.level(n), omap, amap, name="mu")
        for n in range(X.N + 1)
    )
    return SimpMap("mu[injections]", P, X, comps)


def injections_I(max_size: int, N: int):
    """Strings of monotone injections between ordinals, with all commuting
    ladders of bijections as morphisms (an equivalent strict skeleton of the
    fat nerve of finite sets and injections).

    Returns (space, dec_equivalence) where the second component is the strict
    levelwise equivalence from the bottom decalage of the binomial family,
    sending a layered set to its flag of layer-prefix subsets.
    """
    I = _string_space("injections", max_size, N, discrete=False)
    I.monoidal = _i_monoidal(I)
    I.unit_key = (0, 0)
    B_plus = binomial_B(max_size, N + 1)
    DecB, _ = dec(B_plus, "bottom")

    def omap_level(j):
        def omap(obj):
            m, layers = obj
            subsets = [
                [e for e in range(m) if layers[e] <= t + 1] for t in range(j + 1)
            ]
            sizes = tuple(len(s) for s in subsets)
            maps = []
            for t in range(1, j + 1):
                pos = {e: p for p, e in enumerate(subsets[t])}
                maps.append(tuple(pos[e] for e in subsets[t - 1]))
            return (sizes, tuple(maps))

        return omap

    def amap_level(j):
        def amap(x, y, pi):
            mx, lx = x
            my, ly = y
            phis = []
            for t in range(j + 1):
                sx = [e for e in range(mx) if lx[e] <= t + 1]
                sy = [e for e in range(my) if ly[e] <= t + 1]
                pos = {e: p for p, e in enumerate(sy)}
                phis.append(tuple(pos[pi[e]] for e in sx))
            return tuple(phis)

        return amap

    comps = tuple(
        GroupoidFunctor(DecB.level(j), I.level(j), omap_level(j), amap_level(j), name="flag")
        for j in range(N + 1)
    )
    equiv = SimpMap("flag[DecBot(binomial)->injections]", DecB, I, comps)
    return I, equiv


def oi_space(max_size: int, N: int) -> TruncSimpGrpd:
    """Strings of monotone injections with only identity morphisms (the fat
    nerve of ordered sets and monotone injections is discrete)."""
    return _string_space("ordered-injections", max_size, N, discrete=True)


def oi_to_i(max_size: int, N: int) -> SimpMap:
    """The forgetful map from ordered injection strings to injection strings."""
    OI = oi_space(max_size, N)
    I, _ = injections_I(max_size, N)

    def amap_level(k):
        def amap(x, y, d):
            return tuple(tuple(range(a)) for a in x[0])

        return amap

    comps = tuple(
        GroupoidFunctor(OI.level(k), I.level(k), lambda x: x, amap_level(k), name="forget")
        for k in range(N + 1)
    )
    return SimpMap("forget[OI->I]", OI, I, comps)
