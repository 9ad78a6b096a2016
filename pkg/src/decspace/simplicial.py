"""Truncated strict simplicial groupoids and the pullback axiom checkers.

A ``TruncSimpGrpd`` holds levels X_0..X_N with strict face and degeneracy
functors.  All checkers report relative to the truncation level and grade
bound; a report never claims an unconditional statement.

Squares are instantiated from simplex-category data (:mod:`decspace.delta`)
and decided by the fibrewise pullback test in :mod:`decspace.groupoids`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import delta
from .delta import DeltaMap, DeltaSquare
from .errors import LevelOutOfRange, NonCommutingSquare, TruncationMismatch
from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSquare,
    compose_functors,
    functors_equal,
    homotopy_fibre,
    identity_functor,
    is_equivalence,
    is_pullback_square,
    iso_classes,
    product_functor,
    product_list,
    terminal_groupoid,
)
from .report import CheckReport


@dataclass
class TruncSimpGrpd:
    """Levels X_0..X_N with strict face/degeneracy functors.

    ``faces[(n, i)]``: X_n -> X_{n-1} for 0 <= i <= n <= N;
    ``degens[(n, i)]``: X_n -> X_{n+1} for 0 <= i <= n < N.
    Optional monoidal data (a SimpMap from the product and the key of the
    unit basis element) is attached by the gallery constructors.
    """

    name: str
    N: int
    levels: tuple[FiniteGroupoid, ...]
    faces: dict
    degens: dict
    grade_bound: int
    key_renderer: object = None
    monoidal: object = None
    unit_key: object = None

    def level(self, n: int) -> FiniteGroupoid:
        if not 0 <= n <= self.N:
            raise LevelOutOfRange(f"level {n} outside truncation 0..{self.N}")
        return self.levels[n]

    def face(self, n: int, i: int) -> GroupoidFunctor:
        if not (1 <= n <= self.N and 0 <= i <= n):
            raise LevelOutOfRange(f"face d_{i} at level {n} out of range")
        return self.faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> GroupoidFunctor:
        if not (0 <= n < self.N and 0 <= i <= n):
            raise LevelOutOfRange(f"degeneracy s_{i} at level {n} out of range")
        return self.degens[(n, i)]

    def render_key(self, key) -> str:
        if self.key_renderer is not None:
            return self.key_renderer(key)
        return str(key)


@dataclass
class SimpMap:
    """Strictly natural map of truncated simplicial groupoids (same level)."""

    name: str
    source: TruncSimpGrpd
    target: TruncSimpGrpd
    components: tuple[GroupoidFunctor, ...]

    def __post_init__(self):
        if self.source.N != self.target.N:
            raise TruncationMismatch(
                f"{self.name}: source level {self.source.N} != target level {self.target.N}"
            )

    def component(self, n: int) -> GroupoidFunctor:
        return self.components[n]

    def naturality_defect(self) -> str | None:
        """None if strictly natural with every face and degeneracy."""
        X, Y = self.source, self.target
        for n in range(1, X.N + 1):
            for i in range(n + 1):
                lhs = compose_functors(self.components[n - 1], X.face(n, i))
                rhs = compose_functors(Y.face(n, i), self.components[n])
                defect = functors_equal(lhs, rhs)
                if defect is not None:
                    return f"naturality fails on d_{i} at level {n}: {defect}"
        for n in range(X.N):
            for i in range(n + 1):
                lhs = compose_functors(self.components[n + 1], X.degeneracy(n, i))
                rhs = compose_functors(Y.degeneracy(n, i), self.components[n])
                defect = functors_equal(lhs, rhs)
                if defect is not None:
                    return f"naturality fails on s_{i} at level {n}: {defect}"
        return None


def identity_simp_map(X: TruncSimpGrpd) -> SimpMap:
    return SimpMap("id", X, X, tuple(identity_functor(L) for L in X.levels))


def compose_simp_maps(G: SimpMap, F: SimpMap, name: str = "") -> SimpMap:
    return SimpMap(
        name or f"{G.name}.{F.name}",
        F.source,
        G.target,
        tuple(
            compose_functors(g, f) for g, f in zip(G.components, F.components)
        ),
    )


# ---------------------------------------------------------------------------
# validation and evaluation


def validate_simplicial(X: TruncSimpGrpd) -> CheckReport:
    """Verify all simplicial identities and grade conditions strictly.

    Functor equality is checked on all objects and on a generating family of
    arrows, which suffices because both sides are functors.
    """
    report = CheckReport("validate_simplicial", X.name, X.N, X.grade_bound)

    def eq(desc, F, G):
        defect = functors_equal(F, G)
        report.record(desc, defect is None, defect)

    for n in range(2, X.N + 1):
        for j in range(n + 1):
            for i in range(j):
                eq(
                    f"d_{i} d_{j} = d_{j-1} d_{i} at level {n}",
                    compose_functors(X.face(n - 1, i), X.face(n, j)),
                    compose_functors(X.face(n - 1, j - 1), X.face(n, i)),
                )
    for n in range(X.N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                eq(
                    f"s_{i} s_{j} = s_{j+1} s_{i} at level {n}",
                    compose_functors(X.degeneracy(n + 1, i), X.degeneracy(n, j)),
                    compose_functors(X.degeneracy(n + 1, j + 1), X.degeneracy(n, i)),
                )
    for n in range(X.N):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = compose_functors(X.face(n + 1, i), X.degeneracy(n, j))
                if i == j or i == j + 1:
                    eq(f"d_{i} s_{j} = id at level {n}", lhs, identity_functor(X.level(n)))
                elif i < j:
                    eq(
                        f"d_{i} s_{j} = s_{j-1} d_{i} at level {n}",
                        lhs,
                        compose_functors(X.degeneracy(n - 1, j - 1), X.face(n, i)),
                    )
                else:
                    eq(
                        f"d_{i} s_{j} = s_{j} d_{i-1} at level {n}",
                        lhs,
                        compose_functors(X.degeneracy(n - 1, j), X.face(n, i - 1)),
                    )

    bad = None
    for n in range(1, X.N + 1):
        for i in range(n + 1):
            F = X.face(n, i)
            for x in F.source.objects:
                gx, gy = F.source.grade(x), F.target.grade(F.obj(x))
                if gy > gx:
                    bad = f"face d_{i} at level {n} raises grade at {x!r}"
                    break
                if 0 < i < n and gy != gx:
                    bad = f"inner face d_{i} at level {n} not grade-preserving at {x!r}"
                    break
            if bad:
                break
        if bad:
            break
    report.record("faces grade-compatible", bad is None, bad)

    bad = None
    for n in range(X.N):
        for i in range(n + 1):
            F = X.degeneracy(n, i)
            for x in F.source.objects:
                if F.target.grade(F.obj(x)) != F.source.grade(x):
                    bad = f"degeneracy s_{i} at level {n} changes grade at {x!r}"
                    break
            if bad:
                break
        if bad:
            break
    report.record("degeneracies grade-preserving", bad is None, bad)

    bad = None
    for L in X.levels:
        for x in L.objects:
            if L.grade(x) > X.grade_bound:
                bad = f"object {x!r} exceeds grade bound"
                break
        if bad:
            break
    report.record("grade bound", bad is None, bad)
    return report


def evaluate(X: TruncSimpGrpd, f: DeltaMap) -> GroupoidFunctor:
    """The contravariant action X(f): X_cod -> X_dom for any monotone map.

    Composes the generator images; strictness makes the result independent of
    the chosen decomposition.
    """
    if f.dom > X.N or f.cod > X.N:
        raise LevelOutOfRange(f"{f} does not fit in truncation 0..{X.N}")
    out = identity_functor(X.level(f.cod))
    for gen in reversed(delta.generator_decomposition(f)):
        if gen.cod == gen.dom + 1:      # coface d^i at [gen.cod]
            missing = next(v for v in range(gen.cod + 1) if v not in set(gen.images))
            out = compose_functors(X.face(gen.cod, missing), out)
        else:                           # codegeneracy s^j onto [gen.cod]
            rep = next(j for j in range(gen.dom) if gen(j) == gen(j + 1))
            out = compose_functors(X.degeneracy(gen.cod, rep), out)
    out.name = f"X({f})"
    return out


# ---------------------------------------------------------------------------
# squares


def _instantiate(X: TruncSimpGrpd, dsq: DeltaSquare) -> GroupoidSquare:
    """Apply X to a commuting square in the simplex category.

    The cone of the groupoid square is the level at the square's pushout
    corner; contravariance swaps the roles of the four sides.
    """
    return GroupoidSquare(
        top=evaluate(X, dsq.right),
        left=evaluate(X, dsq.bottom),
        right=evaluate(X, dsq.top),
        bottom=evaluate(X, dsq.left),
        desc=dsq.desc,
    )


def _square_desc(X: TruncSimpGrpd, dsq: DeltaSquare) -> str:
    d = dsq.right.cod
    return (
        f"X{d} -> X{dsq.right.dom} over X{dsq.top.dom} "
        f"[{dsq.desc or 'square'}: active {dsq.left}, inert {dsq.top}]"
    )


def _run_squares(
    X: TruncSimpGrpd, check: str, squares: list[DeltaSquare], glue_bound: int | None = None
) -> CheckReport:
    report = CheckReport(check, X.name, X.N, X.grade_bound)
    for dsq in squares:
        desc = _square_desc(X, dsq)
        try:
            ok, wit = is_pullback_square(_instantiate(X, dsq), glue_bound=glue_bound)
        except NonCommutingSquare as exc:
            ok, wit = False, f"square does not commute: {exc}"
        report.record(desc, ok, wit)
    return report


def check_segal(X: TruncSimpGrpd) -> CheckReport:
    """Pullback test for the outer-face squares characterizing Segal objects.

    Both legs of a Segal square delete grade, so the pullback is compared at
    the space's grade bound (glued objects over the bound are not required).
    """
    return _run_squares(X, "segal", delta.segal_axiom_squares(X.N), glue_bound=X.grade_bound)


def check_decomposition(X: TruncSimpGrpd) -> CheckReport:
    """Pullback test for all active-inert pushout squares within truncation."""
    return _run_squares(X, "decomposition", delta.decomposition_axiom_squares(X.N))


def segal_power(X: TruncSimpGrpd, r: int, grade_bound: int | None = None) -> FiniteGroupoid:
    """The iterated pullback X_1 x_{X_0} ... x_{X_0} X_1 with r factors.

    Objects are ((a_1..a_r), (sigma_1..sigma_{r-1})) with
    sigma_i: d_0(a_i) -> d_1(a_{i+1}) an arrow of X_0.  With a grade bound,
    only strings whose would-be glued object fits under the bound are kept
    (grades add along the string and overlaps sit in X_0, so the glued grade
    is the alternating sum below).
    """
    X1, X0 = X.level(1), X.level(0)
    d0, d1 = X.face(1, 0), X.face(1, 1)

    objects = []

    def glue_grade(edges):
        total = sum(X1.grade(a) for a in edges)
        total -= sum(X0.grade(d0.obj(a)) for a in edges[:-1])
        return total

    def extend(edges, sigmas):
        if len(edges) == r:
            if grade_bound is None or glue_grade(edges) <= grade_bound:
                objects.append((edges, sigmas))
            return
        for a in X1.objects:
            if not edges:
                extend((a,), ())
            else:
                prev = edges[-1]
                for s in X0.hom(d0.obj(prev), d1.obj(a)):
                    extend(edges + (a,), sigmas + (s,))

    extend((), ())

    def hom(o1, o2):
        (e1, s1), (e2, s2) = o1, o2
        parts = [X1.hom(a, b) for a, b in zip(e1, e2)]
        if any(not p for p in parts):
            return ()
        out = []

        def rec(prefix):
            i = len(prefix)
            if i == r:
                out.append(tuple(prefix))
                return
            for g in parts[i]:
                if i > 0:
                    lhs = X0.compose(s2[i - 1], d0.arr(e1[i - 1], e2[i - 1], prefix[-1]))
                    rhs = X0.compose(d1.arr(e1[i], e2[i], g), s1[i - 1])
                    if lhs != rhs:
                        continue
                rec(prefix + [g])

        rec([])
        return tuple(out)

    return FiniteGroupoid(
        f"SegalPower({X.name},{r})",
        objects,
        hom,
        lambda g, f: tuple(X1.compose(a, b) for a, b in zip(g, f)),
        lambda d: tuple(X1.inverse(a) for a in d),
        lambda o: tuple(X1.identity(a) for a in o[0]),
        grade=lambda o: max((X1.grade(a) for a in o[0]), default=0),
        bucket_key=lambda o: tuple(X1.bucket_key(a) for a in o[0]),
    )


def _edge_inclusions(X: TruncSimpGrpd, r: int) -> list[GroupoidFunctor]:
    return [evaluate(X, DeltaMap(1, r, (i - 1, i))) for i in range(1, r + 1)]


def segal_comparison(X: TruncSimpGrpd, r: int, W: FiniteGroupoid) -> GroupoidFunctor:
    """X_r -> segal_power(X, r); connecting arrows are identities since the
    simplicial identities hold strictly."""
    edges = _edge_inclusions(X, r)
    X0 = X.level(0)
    d0 = X.face(1, 0)

    def omap(x):
        es = tuple(e.obj(x) for e in edges)
        sigmas = tuple(X0.identity(d0.obj(es[i])) for i in range(r - 1))
        return (es, sigmas)

    def amap(x, y, d):
        return tuple(e.arr(x, y, d) for e in edges)

    return GroupoidFunctor(X.level(r), W, omap, amap, name=f"segal-cmp-{r}")


def check_segal_direct(X: TruncSimpGrpd, r: int) -> bool:
    """Equivalence test of the r-fold Segal comparison functor (r <= 3)."""
    if not 1 <= r <= X.N:
        raise LevelOutOfRange(f"r={r} outside truncation")
    if r == 1:
        return True
    W = segal_power(X, r, grade_bound=X.grade_bound)
    ok, _ = is_equivalence(segal_comparison(X, r, W))
    return ok


def check_decomposition_active(X: TruncSimpGrpd) -> CheckReport:
    """The active-map pullback criterion: for every active g: [n] -> [m]
    within truncation, the square  X_m -> prod X_{m_i}  over  X_n -> prod X_1
    is a pullback.  Agrees with check_decomposition.

    Product corners are never materialized: fibres of a product functor over
    a component point are products of component fibres.
    """
    if X.N < 1:
        raise LevelOutOfRange("need at least one level")
    report = CheckReport("decomposition-active", X.name, X.N, X.grade_bound)
    for data in delta.active_map_squares(X.N):
        g = data.g
        n, m = g.dom, g.cod
        desc = f"X{m} -> prod(X{','.join(str(w.dom) for w in data.windows)}) over X{n} [active {g}]"
        left = evaluate(X, g)
        windows = [evaluate(X, w) for w in data.windows]
        edges = [evaluate(X, e) for e in data.edges]
        splits = [evaluate(X, s) for s in data.splits]
        Xn = X.level(n)
        buckets: dict = {}
        for a in X.level(m).objects:
            buckets.setdefault(Xn.bucket_key(left.obj(a)), []).append(a)
        verdict, witness = True, None
        for cls in iso_classes(Xn):
            xbar = cls.rep
            fib_a = homotopy_fibre(left, xbar, candidates=buckets.get(Xn.bucket_key(xbar), ()))
            comp_fibs = [
                homotopy_fibre(splits[i], edges[i].obj(xbar)) for i in range(n)
            ]
            fib_y = product_list(comp_fibs, name="prod-fibre")

            def omap(o, xb=xbar):
                a, tau = o
                la = left.obj(a)
                return tuple(
                    (windows[i].obj(a), edges[i].arr(la, xb, tau)) for i in range(n)
                )

            def amap(o1, o2, d):
                return tuple(windows[i].arr(o1[0], o2[0], d) for i in range(n))

            phi = GroupoidFunctor(fib_a, fib_y, omap, amap, name="active-fibre-cmp")
            ok, wit = is_equivalence(phi)
            if not ok:
                verdict, witness = False, f"fibre over {xbar!r}: {wit}"
                break
        report.record(desc, verdict, witness)
    return report


def check_cartesian(F: SimpMap, maps: list[DeltaMap]) -> CheckReport:
    """Naturality squares of F on the listed simplex maps are pullbacks."""
    X, Y = F.source, F.target
    report = CheckReport(f"cartesian[{F.name}]", X.name, X.N, X.grade_bound)
    for dm in maps:
        if dm.dom > X.N or dm.cod > X.N:
            raise LevelOutOfRange(f"{dm} outside truncation")
        desc = f"naturality of {F.name} on {dm}"
        sq = GroupoidSquare(
            top=F.component(dm.cod),
            left=evaluate(X, dm),
            right=evaluate(Y, dm),
            bottom=F.component(dm.dom),
            desc=desc,
        )
        try:
            ok, wit = is_pullback_square(sq)
        except NonCommutingSquare as exc:
            ok, wit = False, f"square does not commute: {exc}"
        report.record(desc, ok, wit)
    return report


def _unique_active(n: int) -> DeltaMap:
    if n == 0:
        return DeltaMap(1, 0, (0, 0))
    return DeltaMap(1, n, (0, n))


def check_culf(F: SimpMap) -> CheckReport:
    """Cartesian on all active maps.

    When both source and target pass the decomposition check, the single
    naturality square on the active map [1] -> [2] suffices and the shortcut
    is recorded; otherwise every active map [1] -> [n] in the truncation is
    checked.
    """
    X, Y = F.source, F.target
    fast = False
    if X.N >= 2:
        fast = check_decomposition(X).passed and check_decomposition(Y).passed
    if fast:
        report = check_cartesian(F, [delta.coface(1, 2)])
        report.check = f"culf[{F.name}]"
        report.note = "shortcut: both sides pass decomposition; only the [1]->[2] square checked"
        return report
    report = check_cartesian(F, [_unique_active(n) for n in range(X.N + 1)])
    report.check = f"culf[{F.name}]"
    report.note = "full path: all active maps [1]->[n] within truncation"
    return report


def check_conservative(F: SimpMap) -> CheckReport:
    """Cartesian on all degeneracy maps within truncation."""
    maps = [
        delta.codegeneracy(i, n)
        for n in range(F.source.N)
        for i in range(n + 1)
    ]
    report = check_cartesian(F, maps)
    report.check = f"conservative[{F.name}]"
    return report


def check_ulf(F: SimpMap) -> CheckReport:
    """Cartesian on all active (inner) face maps within truncation."""
    maps = [
        delta.coface(i, n)
        for n in range(2, F.source.N + 1)
        for i in range(1, n)
    ]
    report = check_cartesian(F, maps)
    report.check = f"ulf[{F.name}]"
    return report


def check_fibration(F: SimpMap, side: str = "bottom") -> CheckReport:
    """Cartesian on every bottom (resp. top) face map within truncation."""
    if side == "bottom":
        maps = [delta.coface(0, n) for n in range(1, F.source.N + 1)]
    elif side == "top":
        maps = [delta.coface(n, n) for n in range(1, F.source.N + 1)]
    else:
        raise ValueError("side must be 'bottom' or 'top'")
    report = check_cartesian(F, maps)
    report.check = f"{side}-fibration[{F.name}]"
    return report


def check_relatively_segal(F: SimpMap) -> CheckReport:
    """For 2 <= n <= N, the square comparing the Segal maps of source and
    target is a pullback."""
    X, Y = F.source, F.target
    if X.N < 2:
        raise LevelOutOfRange("relative Segal check needs two levels")
    report = CheckReport(f"relatively-segal[{F.name}]", X.name, X.N, X.grade_bound)
    X1, X0 = X.level(1), X.level(0)
    Y1, Y0 = Y.level(1), Y.level(0)
    dx0, dx1 = X.face(1, 0), X.face(1, 1)
    dy0, dy1 = Y.face(1, 0), Y.face(1, 1)
    F1, F0 = F.component(1), F.component(0)

    for n in range(2, X.N + 1):
        edges_x = _edge_inclusions(X, n)
        edges_y = _edge_inclusions(Y, n)
        Fn = F.component(n)
        desc = f"X{n} -> Segal power over Y{n} (n={n})"
        verdict, witness = True, None
        for cls in iso_classes(Y.level(n)):
            ybar = cls.rep
            ys = [e.obj(ybar) for e in edges_y]
            fib_a = homotopy_fibre(Fn, ybar)

            # fibre of the induced map between iterated pullbacks over the
            # comparison point of ybar (identity connecting arrows)
            cands = [list(homotopy_fibre(F1, y).objects) for y in ys]
            wobjects = []

            def build(i, edges_acc, conns_acc, taus_acc):
                if i == n:
                    glue = sum(X1.grade(a) for a in edges_acc) - sum(
                        X0.grade(dx0.obj(a)) for a in edges_acc[:-1]
                    )
                    if glue <= X.grade_bound:
                        wobjects.append((tuple(edges_acc), tuple(conns_acc), tuple(taus_acc)))
                    return
                for (a, tau) in cands[i]:
                    if i == 0:
                        build(1, [a], [], [tau])
                        continue
                    prev_a, prev_tau = edges_acc[-1], taus_acc[-1]
                    want = Y0.compose(
                        Y0.inverse(dy1.arr(F1.obj(a), ys[i], tau)),
                        dy0.arr(F1.obj(prev_a), ys[i - 1], prev_tau),
                    )
                    for c in X0.hom(dx0.obj(prev_a), dx1.obj(a)):
                        if F0.arr(dx0.obj(prev_a), dx1.obj(a), c) == want:
                            build(i + 1, edges_acc + [a], conns_acc + [c], taus_acc + [tau])

            build(0, [], [], [])

            def whom(o1, o2):
                e1, c1, t1 = o1
                e2, c2, t2 = o2
                parts = [
                    tuple(
                        g
                        for g in X1.hom(a, b)
                        if Y1.compose(t2[i], F1.arr(a, b, g)) == t1[i]
                    )
                    for i, (a, b) in enumerate(zip(e1, e2))
                ]
                if any(not p for p in parts):
                    return ()
                out = []

                def rec(prefix):
                    i = len(prefix)
                    if i == n:
                        out.append(tuple(prefix))
                        return
                    for g in parts[i]:
                        if i > 0:
                            lhs = X0.compose(c2[i - 1], dx0.arr(e1[i - 1], e2[i - 1], prefix[-1]))
                            rhs = X0.compose(dx1.arr(e1[i], e2[i], g), c1[i - 1])
                            if lhs != rhs:
                                continue
                        rec(prefix + [g])

                rec([])
                return tuple(out)

            fib_w = FiniteGroupoid(
                "rel-segal-fibre",
                wobjects,
                whom,
                lambda g, f: tuple(X1.compose(a, b) for a, b in zip(g, f)),
                lambda d: tuple(X1.inverse(a) for a in d),
                lambda o: tuple(X1.identity(a) for a in o[0]),
                bucket_key=lambda o: tuple(X1.bucket_key(a) for a in o[0]),
            )

            def omap(o, yb=ybar):
                x, tau = o
                es = tuple(e.obj(x) for e in edges_x)
                conns = tuple(X0.identity(dx0.obj(es[i])) for i in range(n - 1))
                taus = tuple(
                    edges_y[i].arr(Fn.obj(x), yb, tau) for i in range(n)
                )
                return (es, conns, taus)

            def amap(o1, o2, d):
                return tuple(edges_x[i].arr(o1[0], o2[0], d) for i in range(n))

            ok, wit = is_equivalence(
                GroupoidFunctor(fib_a, fib_w, omap, amap, name="rel-segal-cmp")
            )
            if not ok:
                verdict, witness = False, f"fibre over {ybar!r}: {wit}"
                break
        report.record(desc, verdict, witness)
    return report


# ---------------------------------------------------------------------------
# decalage


def truncate(X: TruncSimpGrpd, M: int) -> TruncSimpGrpd:
    if M > X.N:
        raise LevelOutOfRange(f"cannot extend truncation {X.N} to {M}")
    return TruncSimpGrpd(
        X.name,
        M,
        X.levels[: M + 1],
        {k: v for k, v in X.faces.items() if k[0] <= M},
        {k: v for k, v in X.degens.items() if k[0] < M},
        X.grade_bound,
        key_renderer=X.key_renderer,
    )


def dec(X: TruncSimpGrpd, side: str = "bottom") -> tuple[TruncSimpGrpd, SimpMap]:
    """Decalage: delete X_0 and shift everything one place down.

    For the bottom flavour the deleted bottom face maps become the dec map
    back to X; for the top flavour the deleted top face maps do.
    """
    if X.N < 1:
        raise LevelOutOfRange("decalage needs at least one level")
    M = X.N - 1
    levels = X.levels[1:]
    faces = {}
    degens = {}
    if side == "bottom":
        for n in range(1, M + 1):
            for i in range(n + 1):
                faces[(n, i)] = X.face(n + 1, i + 1)
        for n in range(M):
            for i in range(n + 1):
                degens[(n, i)] = X.degeneracy(n + 1, i + 1)
        comps = tuple(X.face(k + 1, 0) for k in range(M + 1))
        name = f"DecBot({X.name})"
    elif side == "top":
        for n in range(1, M + 1):
            for i in range(n + 1):
                faces[(n, i)] = X.face(n + 1, i)
        for n in range(M):
            for i in range(n + 1):
                degens[(n, i)] = X.degeneracy(n + 1, i)
        comps = tuple(X.face(k + 1, k + 1) for k in range(M + 1))
        name = f"DecTop({X.name})"
    else:
        raise ValueError("side must be 'bottom' or 'top'")
    Y = TruncSimpGrpd(name, M, levels, faces, degens, X.grade_bound,
                      key_renderer=X.key_renderer)
    dec_map = SimpMap(f"dec-{side}[{X.name}]", Y, truncate(X, M), comps)
    return Y, dec_map


def dec_of_map(F: SimpMap, side: str = "bottom") -> SimpMap:
    """The induced map between the decalages of source and target."""
    src, _ = dec(F.source, side)
    tgt, _ = dec(F.target, side)
    return SimpMap(
        f"dec-{side}[{F.name}]",
        src,
        tgt,
        tuple(F.components[k + 1] for k in range(src.N + 1)),
    )


def check_decalage(X: TruncSimpGrpd) -> CheckReport:
    """Four-way characterization of the decomposition property via decalage.

    (a) the pushout-square check; (b) both decalages Segal and both dec maps
    cartesian on active maps; (c) same with conservativity only; (d) same
    with the two degeneracy squares.  The four verdicts agree for honest
    simplicial groupoids; the agreement record makes that testable.
    """
    if X.N < 3:
        raise LevelOutOfRange("decalage characterization needs three levels")
    report = CheckReport("decalage-characterization", X.name, X.N, X.grade_bound)

    verdict_a = check_decomposition(X).passed

    def safe(thunk):
        try:
            return thunk().passed
        except NonCommutingSquare:
            return False

    dec_b, map_b = dec(X, "bottom")
    dec_t, map_t = dec(X, "top")
    segal_both = safe(lambda: check_segal(dec_b)) and safe(lambda: check_segal(dec_t))
    verdict_b = segal_both and safe(lambda: check_culf(map_b)) and safe(lambda: check_culf(map_t))
    verdict_c = (
        segal_both
        and safe(lambda: check_conservative(map_b))
        and safe(lambda: check_conservative(map_t))
    )
    degeneracy_squares = delta.decomposition_axiom_squares(2)
    verdict_d = segal_both and _run_squares(X, "degeneracy-squares", degeneracy_squares).passed

    report.record("(a) pushout squares", verdict_a)
    report.record("(b) decalages Segal + dec maps cartesian on active maps", verdict_b)
    report.record("(c) decalages Segal + dec maps conservative", verdict_c)
    report.record("(d) decalages Segal + degeneracy squares", verdict_d)
    agree = len({verdict_a, verdict_b, verdict_c, verdict_d}) == 1
    report.record(
        "four-way agreement",
        agree,
        None if agree else f"verdicts differ: {verdict_a, verdict_b, verdict_c, verdict_d}",
    )
    return report


def check_extra_pullbacks(X: TruncSimpGrpd) -> CheckReport:
    """Degeneracy/face and degeneracy/degeneracy squares that are pullbacks
    for every space passing the decomposition check."""
    report = CheckReport("extra-pullbacks", X.name, X.N, X.grade_bound)
    pre = check_decomposition(X).passed
    if not pre:
        report.record(
            "precondition: decomposition check", False, "precondition unmet"
        )
        return report
    report.record("precondition: decomposition check", True)

    def run(desc, top, left, right, bottom):
        sq = GroupoidSquare(top=top, left=left, right=right, bottom=bottom, desc=desc)
        try:
            ok, wit = is_pullback_square(sq)
        except NonCommutingSquare as exc:
            ok, wit = False, str(exc)
        report.record(desc, ok, wit)

    for n in range(X.N - 1):
        # s_i against d_j, first index regime i < j
        for i in range(n + 1):
            for j in range(i + 1, n + 2):
                run(
                    f"s_{i}/d_{j} square at level {n + 1} (i<j)",
                    X.face(n + 1, j),
                    X.degeneracy(n + 1, i),
                    X.degeneracy(n, i),
                    X.face(n + 2, j + 1),
                )
        # s_{i+1} against d_j, second regime j <= i
        for i in range(n + 1):
            for j in range(i + 1):
                run(
                    f"s_{i+1}/d_{j} square at level {n + 1} (j<=i)",
                    X.face(n + 1, j),
                    X.degeneracy(n + 1, i + 1),
                    X.degeneracy(n, i),
                    X.face(n + 2, j),
                )
        # s_i against s_{j-1}
        for i in range(n + 1):
            for j in range(i + 1, n + 2):
                run(
                    f"s_{i}/s_{j-1} square at level {n} (i<j)",
                    X.degeneracy(n, j - 1),
                    X.degeneracy(n, i),
                    X.degeneracy(n + 1, i),
                    X.degeneracy(n + 1, j),
                )
    return report


# ---------------------------------------------------------------------------
# products, terminal space, corruptions


def product_simplicial(X: TruncSimpGrpd, Y: TruncSimpGrpd, grade_bound: int | None = None) -> TruncSimpGrpd:
    """Levelwise product with componentwise structure maps; grade adds.

    When a grade bound is given, pairs over the bound are dropped; structure
    maps stay within the bound because faces never raise grade.
    """
    if X.N != Y.N:
        raise TruncationMismatch("product needs equal truncation levels")
    bound = grade_bound if grade_bound is not None else X.grade_bound + Y.grade_bound
    levels = tuple(
        product_list([X.level(n), Y.level(n)], grade_bound=bound, name=f"({X.name}x{Y.name})_{n}")
        for n in range(X.N + 1)
    )
    faces = {}
    degens = {}
    for n in range(1, X.N + 1):
        for i in range(n + 1):
            faces[(n, i)] = product_functor(
                [X.face(n, i), Y.face(n, i)], levels[n], levels[n - 1], name=f"d_{i}"
            )
    for n in range(X.N):
        for i in range(n + 1):
            degens[(n, i)] = product_functor(
                [X.degeneracy(n, i), Y.degeneracy(n, i)], levels[n], levels[n + 1], name=f"s_{i}"
            )
    renderer = None
    if X.key_renderer is not None and Y.key_renderer is not None:
        renderer = lambda k: f"({X.render_key(k[0])},{Y.render_key(k[1])})"
    return TruncSimpGrpd(
        f"{X.name}x{Y.name}", X.N, levels, faces, degens, bound, key_renderer=renderer
    )


def terminal_space(N: int) -> TruncSimpGrpd:
    """The one-point simplicial groupoid."""
    pt = terminal_groupoid()
    levels = tuple(pt for _ in range(N + 1))
    ident = identity_functor(pt)
    faces = {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): ident for n in range(N) for i in range(n + 1)}
    return TruncSimpGrpd("1", N, levels, faces, degens, 0, key_renderer=str)


def constant_map_to_point(X: TruncSimpGrpd) -> SimpMap:
    T = terminal_space(X.N)
    comps = tuple(
        GroupoidFunctor(X.level(n), T.level(n), lambda x: "*", lambda x, y, d: (), name="const")
        for n in range(X.N + 1)
    )
    return SimpMap(f"const[{X.name}]", X, T, comps)


def _swap_functor(L: FiniteGroupoid, x, y, iso) -> GroupoidFunctor:
    """Auto-functor of L exchanging the isomorphic objects x and y along iso."""
    inv = L.inverse(iso)

    def omap(z):
        if z == x:
            return y
        if z == y:
            return x
        return z

    def w(z):
        if z == x:
            return iso
        if z == y:
            return inv
        return L.identity(z)

    def amap(a, b, d):
        return L.compose(w(b), L.compose(d, L.inverse(w(a))))

    return GroupoidFunctor(L, L, omap, amap, name="swap")


def corrupted_variant(X: TruncSimpGrpd, seed: int, kind: str = "inner-face") -> tuple[TruncSimpGrpd, str]:
    """Deterministically perturbed copy of X for negative controls.

    The default corrupts an inner face functor by a constant replacement:
    inner faces feed every checker family (the pushout squares directly, the
    decalage characterizations through the Segal squares of the two
    decalages), which is what makes perturbed instances usable as agreement
    controls.  ``kind='swap'`` instead postcomposes a face with a swap of two
    isomorphic objects, which breaks strictness without changing any
    homotopy-invariant quantity.
    """
    rng = random.Random(seed)
    new_faces = dict(X.faces)
    if kind == "swap":
        n = rng.randrange(1, X.N + 1)
        i = rng.randrange(0, n + 1)
        target = X.level(n - 1)
        for cls in iso_classes(target):
            if len(cls.members) >= 2:
                x, y = cls.members[0], cls.members[1]
                swap = _swap_functor(target, x, y, target.some_iso(x, y))
                new_faces[(n, i)] = compose_functors(swap, X.face(n, i), name=f"swap.d_{i}")
                desc = f"face d_{i} at level {n} postcomposed with a swap"
                break
        else:
            raise ValueError("no isomorphic object pair available for a swap")
    else:
        inner = [(n, i) for n in range(2, X.N + 1) for i in range(1, n)]
        n, i = inner[rng.randrange(len(inner))]
        target = X.level(n - 1)
        c = max(target.objects, key=lambda o: (target.grade(o), repr(o)))
        new_faces[(n, i)] = GroupoidFunctor(
            X.level(n), target, lambda x: c, lambda a, b, d: target.identity(c), name="const"
        )
        desc = f"inner face d_{i} at level {n} replaced by a constant functor"
    return (
        TruncSimpGrpd(
            f"{X.name}~corrupt{seed}",
            X.N,
            X.levels,
            new_faces,
            dict(X.degens),
            X.grade_bound,
            key_renderer=X.key_renderer,
        ),
        desc,
    )
