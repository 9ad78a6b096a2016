"""Exact-sequence staircases over a finite field.

A level-n object is a triangular grid of skeletal spaces A_{ij} = F_q^{d_ij}
(0 <= i <= j <= n, zero on the diagonal) with injective horizontal and
surjective vertical elementary maps, commuting squares, and image = kernel
exactness for every i < j < k.  Because the whole staircase is stored, every
structure map is plain reindexing along a simplex-category map (faces erase
all entries containing an index, degeneracies duplicate a row and column with
identity maps), which is strictly functorial on the nose.

Enumeration is exhaustive and meant for total dimension <= 2 at q in {2, 3}
(dimension 3 works but is slow; the Hall-number routines use a direct count
instead of this groupoid).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .. import delta
from ..groupoids import FiniteGroupoid, GroupoidFunctor
from ..linalg_fq import (
    all_matrices,
    check_field,
    eye,
    factor_through,
    general_linear,
    image_key,
    injective_matrices,
    is_injective,
    is_invertible,
    kernel_basis,
    mat_inv,
    mat_mul,
    rank,
    span_key,
)
from ..simplicial import SimpMap, TruncSimpGrpd, dec


def _dim(obj, i, j):
    return obj[1][i][j - i]


def _h(obj, i, j):
    return obj[2][i][j - i]


def _v(obj, i, j):
    return obj[3][i][j - i - 1]


def _mul(a, b, rows, mid, cols, q):
    if rows == 0:
        return ()
    if mid == 0 or cols == 0:
        return tuple((0,) * cols for _ in range(rows))
    return mat_mul(a, b, q)


def _row_comp(obj, i, j1, j2, q):
    cur = eye(_dim(obj, i, j1))
    for j in range(j1, j2):
        cur = _mul(_h(obj, i, j), cur, _dim(obj, i, j + 1), _dim(obj, i, j), _dim(obj, i, j1), q)
    return cur


def _col_comp(obj, i1, i2, j, q):
    cur = eye(_dim(obj, i1, j))
    for i in range(i1, i2):
        cur = _mul(_v(obj, i, j), cur, _dim(obj, i + 1, j), _dim(obj, i, j), _dim(obj, i1, j), q)
    return cur


def _gap_validate(obj, q) -> bool:
    n = obj[0]
    for i in range(n + 1):
        if _dim(obj, i, i) != 0:
            return False
    for i in range(n):
        for j in range(i, n):
            if not is_injective(_h(obj, i, j), q) and _dim(obj, i, j) > 0:
                return False
    for i in range(n):
        for j in range(i + 1, n + 1):
            v = _v(obj, i, j)
            if rank(v, q) != _dim(obj, i + 1, j):
                return False
    # elementary squares commute
    for i in range(n):
        for j in range(i + 1, n):
            lhs = _mul(_v(obj, i, j + 1), _h(obj, i, j), _dim(obj, i + 1, j + 1), _dim(obj, i, j + 1), _dim(obj, i, j), q)
            rhs = _mul(_h(obj, i + 1, j), _v(obj, i, j), _dim(obj, i + 1, j + 1), _dim(obj, i + 1, j), _dim(obj, i, j), q)
            if lhs != rhs:
                return False
    # image = kernel for every i < j < k
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                path_h = _row_comp(obj, i, j, k, q)
                path_v = _col_comp(obj, i, j, k, q)
                img = image_key(path_h, q) if _dim(obj, i, j) else ()
                ker = _kernel_key(path_v, _dim(obj, j, k), _dim(obj, i, k), q)
                if img != ker:
                    return False
    return True


def _kernel_key(v, rows, cols, q):
    """Canonical span of the kernel of v, robust at zero shapes."""
    if cols == 0:
        return ()
    if rows == 0:
        return span_key(eye(cols), q)
    return span_key(kernel_basis(v, q), q)


def _compositions(n, bound):
    if n == 0:
        yield ()
        return
    for head in range(bound + 1):
        for tail in _compositions(n - 1, bound - head):
            yield (head,) + tail


def _assemble_objects(n, cs, q):
    """All staircases with layer dimensions cs, built row by row."""
    pref = [0]
    for c in cs:
        pref.append(pref[-1] + c)
    dims = tuple(
        tuple(pref[j] - pref[i] for j in range(i, n + 1)) for i in range(n + 1)
    )

    def dim(i, j):
        return dims[i][j - i]

    row0_choices = [[tuple(() for _ in range(dim(0, 1)))]]
    for j in range(1, n):
        row0_choices.append(list(injective_matrices(dim(0, j + 1), dim(0, j), q)))

    out = []

    def row_comp_partial(row_h, i, j1, j2):
        cur = eye(dim(i, j1))
        for j in range(j1, j2):
            cur = _mul(row_h[j - i], cur, dim(i, j + 1), dim(i, j), dim(i, j1), q)
        return cur

    def build_rows(h_rows, v_rows, i):
        # h_rows holds rows 0..min(i, n-1); v_rows holds rows < i
        if i == n:
            obj = (n, dims, tuple(tuple(r) for r in h_rows), tuple(tuple(r) for r in v_rows))
            if _gap_validate(obj, q):
                out.append(obj)
            return

        def choose_v(j, vs):
            if j > n:
                if i + 1 < n:
                    # derive the next row of horizontal maps through the
                    # surjections just chosen
                    h_next = []
                    for jj in range(i + 1, n):
                        upper = _mul(
                            vs[jj + 1 - i - 1],
                            h_rows[i][jj - i],
                            dim(i + 1, jj + 1),
                            dim(i, jj + 1),
                            dim(i, jj),
                            q,
                        )
                        g = factor_through(vs[jj - i - 1], upper, q)
                        if g is None:
                            return
                        h_next.append(g)
                    build_rows(h_rows + [h_next], v_rows + [vs], i + 1)
                else:
                    build_rows(h_rows, v_rows + [vs], i + 1)
                return
            if j == i + 1:
                choose_v(j + 1, vs + [()])
                return
            target_kernel = (
                image_key(row_comp_partial(h_rows[i], i, i + 1, j), q)
                if dim(i, i + 1)
                else ()
            )
            r, c = dim(i + 1, j), dim(i, j)
            for v in all_matrices(r, c, q):
                if rank(v, q) != r:
                    continue
                if _kernel_key(v, r, c, q) == target_kernel:
                    choose_v(j + 1, vs + [v])

        choose_v(i + 1, [])

    for hs in iproduct(*row0_choices):
        build_rows([list(hs)], [], 0)
    return out


def _v_level_objects(n, bound, q):
    if n == 0:
        return [(0, ((0,),), (), ())]
    objects = []
    for cs in _compositions(n, bound):
        objects.extend(_assemble_objects(n, cs, q))
    return objects


@lru_cache(maxsize=None)
def _gap_isos(q, x, y):
    """Commuting tuples of invertible matrices between two staircases."""
    n = x[0]
    if x[1] != y[1]:
        return ()
    dims = x[1]

    def dim(i, j):
        return dims[i][j - i]

    out = []

    def extend_row0(j, gs):
        # gs: chosen g_{0,1..j-1}
        if j > n:
            propagate(gs)
            return
        for g in general_linear(dim(0, j), q):
            if j > 1:
                lhs = _mul(g, _h(x, 0, j - 1), dim(0, j), dim(0, j - 1), dim(0, j - 1), q)
                rhs = _mul(_h(y, 0, j - 1), gs[-1], dim(0, j), dim(0, j - 1), dim(0, j - 1), q)
                if lhs != rhs:
                    continue
            extend_row0(j + 1, gs + [g])

    def propagate(row0):
        rows = [row0]
        for i in range(1, n):
            prev = rows[-1]
            cur = []
            for j in range(i + 1, n + 1):
                g = factor_through(
                    _v(x, i - 1, j),
                    _mul(_v(y, i - 1, j), prev[j - i], dim(i, j), dim(i - 1, j), dim(i - 1, j), q),
                    q,
                )
                if g is None or not is_invertible(g, q):
                    return
                cur.append(g)
            for j in range(i + 1, n):
                lhs = _mul(cur[j - i], _h(x, i, j), dim(i, j + 1), dim(i, j), dim(i, j), q)
                rhs = _mul(_h(y, i, j), cur[j - i - 1], dim(i, j + 1), dim(i, j), dim(i, j), q)
                if lhs != rhs:
                    return
            rows.append(cur)
        out.append(tuple(tuple(r) for r in rows))

    if n == 0:
        return ((),)
    extend_row0(1, [])
    return tuple(out)


def _g_entry(gs, i, j):
    return gs[i][j - i - 1]


def _gap_compose(q):
    def compose(g, f):
        # entrywise product; mat_mul handles the empty (0 x 0) entries
        return tuple(
            tuple(mat_mul(a, b, q) for a, b in zip(rg, rf))
            for rg, rf in zip(g, f)
        )

    return compose


def _gap_identity(obj):
    n = obj[0]
    return tuple(
        tuple(eye(_dim(obj, i, j)) for j in range(i + 1, n + 1)) for i in range(n)
    )


def _gap_inverse(q):
    def inverse(gs):
        return tuple(
            tuple(mat_inv(m, q) if m else m for m in row) for row in gs
        )

    return inverse


def _reindex_obj(obj, dmap, q):
    m = dmap.dom
    dims = tuple(
        tuple(_dim(obj, dmap(a), dmap(b)) for b in range(a, m + 1)) for a in range(m + 1)
    )
    hs = tuple(
        tuple(_row_comp(obj, dmap(a), dmap(b), dmap(b + 1), q) for b in range(a, m))
        for a in range(m)
    )
    vs = tuple(
        tuple(_col_comp(obj, dmap(a), dmap(a + 1), dmap(b), q) for b in range(a + 1, m + 1))
        for a in range(m)
    )
    return (m, dims, hs, vs)


def _reindex_arr(gs, dmap, obj_src):
    m = dmap.dom
    out = []
    for a in range(m):
        row = []
        for b in range(a + 1, m + 1):
            if dmap(a) < dmap(b):
                row.append(_g_entry(gs, dmap(a), dmap(b)))
            else:
                row.append(())
        out.append(tuple(row))
    return tuple(out)


def vect_S(q: int, max_total_dim: int, N: int) -> TruncSimpGrpd:
    """Exact-sequence staircases over F_q, graded by total dimension."""
    check_field(q)
    levels = []
    for n in range(N + 1):
        objs = _v_level_objects(n, max_total_dim, q)
        levels.append(
            FiniteGroupoid(
                f"V_{n}",
                objs,
                lambda x, y, q=q: _gap_isos(q, x, y),
                _gap_compose(q),
                _gap_inverse(q),
                _gap_identity,
                grade=lambda x: x[1][0][-1],
                canon_key=lambda x: x[1],
            )
        )
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            dm = delta.coface(i, n)
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, dm=dm, q=q: _reindex_obj(obj, dm, q),
                lambda x, y, d, dm=dm: _reindex_arr(d, dm, x),
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            dm = delta.codegeneracy(i, n)
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, dm=dm, q=q: _reindex_obj(obj, dm, q),
                lambda x, y, d, dm=dm: _reindex_arr(d, dm, x),
                name=f"s_{i}",
            )
    return TruncSimpGrpd(
        f"vect(q={q})",
        N,
        tuple(levels),
        faces,
        degens,
        max_total_dim,
        key_renderer=lambda key: str(key[0][-1]),
    )


# ---------------------------------------------------------------------------
# the fat nerve of injective maps, and the bottom-decalage comparison


@lru_cache(maxsize=None)
def _mono_isos(q, x, y):
    da, ma = x
    db, mb = y
    if da != db:
        return ()
    k = len(da) - 1
    out = []

    def rec(j, phis):
        if j > k:
            out.append(tuple(phis))
            return
        for g in general_linear(da[j], q):
            if j > 0:
                lhs = _mul(g, ma[j - 1], da[j], da[j - 1], da[j - 1], q)
                rhs = _mul(mb[j - 1], phis[-1], da[j], da[j - 1], da[j - 1], q)
                if lhs != rhs:
                    continue
            rec(j + 1, phis + [g])

    rec(0, [])
    return tuple(out)


def mono_nerve(q: int, bound: int, N: int) -> TruncSimpGrpd:
    """Strings of injective linear maps between skeletal F_q spaces, with
    commuting ladders of invertible matrices as morphisms."""
    check_field(q)
    levels = []
    for k in range(N + 1):
        objects = []

        def rec(dims, mats):
            if len(dims) == k + 1:
                objects.append((tuple(dims), tuple(mats)))
                return
            a = dims[-1]
            for b in range(a, bound + 1):
                for mat in injective_matrices(b, a, q):
                    rec(dims + [b], mats + [mat])

        for a0 in range(bound + 1):
            rec([a0], [])
        levels.append(
            FiniteGroupoid(
                f"mono_{k}",
                objects,
                lambda x, y, q=q: _mono_isos(q, x, y),
                lambda g, f, q=q: tuple(mat_mul(a, b, q) if a and a[0] else a for a, b in zip(g, f)),
                lambda d, q=q: tuple(mat_inv(a, q) if a else a for a in d),
                lambda x: tuple(eye(a) for a in x[0]),
                grade=lambda x: x[0][-1],
                canon_key=lambda x: x[0],
            )
        )

    def face_omap(n, i, obj):
        dims, mats = obj
        if i == 0:
            return (dims[1:], mats[1:])
        if i == n:
            return (dims[:-1], mats[:-1])
        merged = _mul(mats[i], mats[i - 1], dims[i + 1], dims[i], dims[i - 1], q)
        return (dims[:i] + dims[i + 1 :], mats[: i - 1] + (merged,) + mats[i + 1 :])

    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n - 1],
                lambda obj, n=n, i=i: face_omap(n, i, obj),
                lambda x, y, d, i=i: d[:i] + d[i + 1 :],
                name=f"d_{i}",
            )
    for n in range(N):
        for i in range(n + 1):
            degens[(n, i)] = GroupoidFunctor(
                levels[n],
                levels[n + 1],
                lambda obj, i=i: (
                    obj[0][: i + 1] + obj[0][i:],
                    obj[1][:i] + (eye(obj[0][i]),) + obj[1][i:],
                ),
                lambda x, y, d, i=i: d[: i + 1] + d[i:],
                name=f"s_{i}",
            )
    return TruncSimpGrpd(
        f"mono(q={q})",
        N,
        tuple(levels),
        faces,
        degens,
        bound,
        key_renderer=lambda key: "<=".join(str(d) for d in key),
    )


def mono_projection(q: int, bound: int, N: int) -> SimpMap:
    """The bottom-row projection from the bottom decalage of the staircase
    family to the nerve of injective maps; a strict levelwise equivalence."""
    V = vect_S(q, bound, N + 1)
    DecV, _ = dec(V, "bottom")
    nerve = mono_nerve(q, bound, N)

    def omap(obj):
        n = obj[0]
        dims = tuple(_dim(obj, 0, j) for j in range(1, n + 1))
        mats = tuple(_h(obj, 0, j) for j in range(1, n))
        return (dims, mats)

    def amap(x, y, gs):
        n = x[0]
        return tuple(_g_entry(gs, 0, j) for j in range(1, n + 1))

    comps = tuple(
        GroupoidFunctor(DecV.level(k), nerve.level(k), omap, amap, name="bottom-row")
        for k in range(N + 1)
    )
    return SimpMap(f"bottom-row[vect(q={q})]", DecV, nerve, comps)
