import random
from fractions import Fraction

import pytest

from decspace.errors import NonCommutingSquare, ObjectNotFound, TargetMismatch
from decspace.groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSquare,
    discrete_groupoid,
    group_as_groupoid,
    groupoid_cardinality,
    homotopy_fibre,
    homotopy_pullback,
    identity_functor,
    indiscrete_groupoid,
    is_equivalence,
    is_pullback_square,
    iso_classes,
    name_functor,
    product,
    terminal_groupoid,
    validate_groupoid,
)


def z2():
    return group_as_groupoid("BZ2", (0, 1), lambda a, b: (a + b) % 2, lambda a: a, 0)


def perm_groupoid(max_size):
    """Disjoint union of skeletal finite sets with bijections."""
    from itertools import permutations

    return FiniteGroupoid(
        "perms",
        tuple(range(max_size + 1)),
        lambda x, y: tuple(permutations(range(x))) if x == y else (),
        lambda g, f: tuple(g[v] for v in f),
        lambda d: tuple(sorted(range(len(d)), key=lambda i: d[i])),
        lambda x: tuple(range(x)),
        grade=lambda x: x,
        canon_key=lambda x: x,
    )


def arrow_category():
    """Two objects with one non-invertible arrow between them."""
    hom_table = {
        ("a", "a"): ("id_a",),
        ("b", "b"): ("id_b",),
        ("a", "b"): ("f",),
    }
    compose = {
        ("id_a", "id_a"): "id_a",
        ("id_b", "id_b"): "id_b",
        ("f", "id_a"): "f",
        ("id_b", "f"): "f",
    }
    return FiniteGroupoid.from_arrow_table(
        "arrow-cat",
        ("a", "b"),
        hom_table,
        lambda g, f: compose[(g, f)],
        lambda d: {"id_a": "id_a", "id_b": "id_b"}.get(d),
        lambda x: f"id_{x}",
    )


def test_validate_terminal():
    assert validate_groupoid(terminal_groupoid()).passed


def test_validate_z2():
    assert validate_groupoid(z2()).passed


def test_validate_arrow_category_fails_groupoid_condition():
    rep = validate_groupoid(arrow_category())
    assert not rep.passed
    bad = rep.first_failure()
    assert bad.desc == "groupoid condition"


def test_iso_classes_terminal():
    table = iso_classes(terminal_groupoid())
    assert len(table) == 1 and table.classes[0].aut_order == 1


def test_iso_classes_z2():
    table = iso_classes(z2())
    assert len(table) == 1 and table.classes[0].aut_order == 2


def test_iso_classes_indiscrete():
    table = iso_classes(indiscrete_groupoid("E2", ("x", "y")))
    assert len(table) == 1 and table.classes[0].aut_order == 1


def test_cardinality_z2():
    assert groupoid_cardinality(z2()) == Fraction(1, 2)


def test_cardinality_indiscrete():
    assert groupoid_cardinality(indiscrete_groupoid("E2", ("x", "y"))) == 1


def test_cardinality_symmetric_groups():
    # sizes 0..3 with bijections: 1 + 1 + 1/2 + 1/6
    assert groupoid_cardinality(perm_groupoid(3)) == Fraction(8, 3)


def test_product_unit_law():
    G = z2()
    P = product(G, terminal_groupoid())
    ok, _ = is_equivalence(
        GroupoidFunctor(G, P, lambda x: (x, "*"), lambda x, y, d: (d, ()), name="unit")
    )
    assert ok


def test_product_z2_z2():
    P = product(z2(), z2())
    table = iso_classes(P)
    assert len(table) == 1 and table.classes[0].aut_order == 4


def test_product_cardinality_multiplicative():
    rng = random.Random(7)
    pool = [z2(), terminal_groupoid(), perm_groupoid(2), indiscrete_groupoid("E2", (0, 1)),
            discrete_groupoid("D3", (0, 1, 2))]
    for _ in range(10):
        G = rng.choice(pool)
        H = rng.choice(pool)
        assert groupoid_cardinality(product(G, H)) == groupoid_cardinality(
            G
        ) * groupoid_cardinality(H)


def test_pullback_of_identities():
    S = perm_groupoid(2)
    ident = identity_functor(S)
    P, _, _ = homotopy_pullback(ident, ident)
    # equivalent to S: compare class count and automorphism orders
    tp = iso_classes(P)
    ts = iso_classes(S)
    assert len(tp) == len(ts)
    assert sorted(c.aut_order for c in tp) == sorted(c.aut_order for c in ts)


def test_pullback_point_over_z2():
    G = z2()
    nm = name_functor(G, "*")
    P, _, _ = homotopy_pullback(nm, nm)
    table = iso_classes(P)
    assert len(table) == 2
    assert all(c.aut_order == 1 for c in table)
    assert groupoid_cardinality(P) == 2


def test_pullback_over_terminal_is_product():
    G, H = z2(), perm_groupoid(2)
    T = terminal_groupoid()
    p = GroupoidFunctor(G, T, lambda x: "*", lambda x, y, d: (), name="!")
    q = GroupoidFunctor(H, T, lambda x: "*", lambda x, y, d: (), name="!")
    P, _, _ = homotopy_pullback(p, q)
    assert groupoid_cardinality(P) == groupoid_cardinality(product(G, H))


def test_pullback_target_mismatch():
    with pytest.raises(TargetMismatch):
        homotopy_pullback(identity_functor(z2()), identity_functor(terminal_groupoid()))


def test_fibre_of_identity_contractible():
    S = perm_groupoid(2)
    fib = homotopy_fibre(identity_functor(S), 2)
    table = iso_classes(fib)
    assert len(table) == 1 and table.classes[0].aut_order == 1


def test_fibre_point_over_z2():
    fib = homotopy_fibre(name_functor(z2(), "*"), "*")
    assert groupoid_cardinality(fib) == 2


def test_fibre_object_not_found():
    with pytest.raises(ObjectNotFound):
        homotopy_fibre(identity_functor(z2()), "nope")


def test_fibre_of_binomial_inner_face(binomial3):
    # ordered splittings of a 2-element set: 4 classes, trivial automorphisms
    d1 = binomial3.face(2, 1)
    two = (2, (1, 1))
    fib = homotopy_fibre(d1, two)
    table = iso_classes(fib)
    assert len(table) == 4
    assert all(c.aut_order == 1 for c in table)


def test_is_equivalence_identity():
    ok, _ = is_equivalence(identity_functor(z2()))
    assert ok


def test_is_equivalence_skeleton_inclusion():
    E = indiscrete_groupoid("E2", ("x", "y"))
    pt = terminal_groupoid()
    F = GroupoidFunctor(pt, E, lambda _: "x", lambda x, y, d: ("x", "x"), name="incl")
    ok, _ = is_equivalence(F)
    assert ok


def test_is_equivalence_z2_to_point_fails():
    F = GroupoidFunctor(z2(), terminal_groupoid(), lambda x: "*", lambda x, y, d: (), name="!")
    ok, wit = is_equivalence(F)
    assert not ok
    assert "hom-set sizes differ" in wit


def _square(top, left, right, bottom, desc=""):
    return GroupoidSquare(top=top, left=left, right=right, bottom=bottom, desc=desc)


def test_identity_sides_square_is_pullback():
    G = z2()
    ident = identity_functor(G)
    sq = _square(ident, ident, ident, ident)
    ok, _ = is_pullback_square(sq)
    assert ok


def test_noncommuting_square_raises():
    E = discrete_groupoid("D2", (0, 1))
    ident = identity_functor(E)
    swap = GroupoidFunctor(E, E, lambda x: 1 - x, lambda x, y, d: (), name="swap")
    with pytest.raises(NonCommutingSquare):
        is_pullback_square(_square(ident, ident, ident, swap))


def test_segal_square_of_chain_nerve(chain_nerve):
    X = chain_nerve
    sq = _square(
        X.face(2, 0), X.face(2, 2), X.face(1, 1), X.face(1, 0), desc="nerve Segal"
    )
    ok, _ = is_pullback_square(sq)
    assert ok


def test_forest_segal_square_fails(forests3):
    H = forests3
    sq = _square(H.face(2, 0), H.face(2, 2), H.face(1, 1), H.face(1, 0))
    ok, wit = is_pullback_square(sq, glue_bound=H.grade_bound)
    assert not ok


def test_fibrewise_agrees_with_literal(binomial3, forests3, chain_nerve):
    squares = []
    for X in (binomial3, chain_nerve):
        squares.append(
            _square(X.face(2, 0), X.face(2, 2), X.face(1, 1), X.face(1, 0))
        )
        squares.append(
            _square(X.degeneracy(1, 1), X.face(1, 0), X.face(2, 0), X.degeneracy(0, 0))
        )
    H = forests3
    squares.append(_square(H.face(2, 0), H.face(2, 2), H.face(1, 1), H.face(1, 0)))
    for sq in squares:
        for bound in (None, 3):
            fib = is_pullback_square(sq, method="fibrewise", glue_bound=bound)[0]
            lit = is_pullback_square(sq, method="literal", glue_bound=bound)[0]
            assert fib == lit


def test_cardinality_invariant_under_equivalence():
    E = indiscrete_groupoid("E2", ("x", "y"))
    pt = terminal_groupoid()
    F = GroupoidFunctor(pt, E, lambda _: "x", lambda x, y, d: ("x", "x"))
    ok, _ = is_equivalence(F)
    assert ok
    assert groupoid_cardinality(pt) == groupoid_cardinality(E)


def test_pullback_symmetric_up_to_equivalence(binomial3):
    d1 = binomial3.face(2, 1)
    d0 = binomial3.face(1, 0)
    P1, _, _ = homotopy_pullback(d1, d1)
    P2, _, _ = homotopy_pullback(d1, d1)
    swap = GroupoidFunctor(
        P1, P2, lambda o: (o[1], o[0], binomial3.level(1).inverse(o[2])),
        lambda o1, o2, d: (d[1], d[0]), name="swap"
    )
    ok, _ = is_equivalence(swap)
    assert ok


def test_homotopy_sum_decomposition(binomial3, forests3):
    # total cardinality equals the fibre cardinalities weighted by 1/|Aut|
    for X, n, i in ((binomial3, 2, 1), (forests3, 1, 0), (forests3, 2, 2)):
        F = X.face(n, i)
        S = F.target
        total = Fraction(0)
        for cls in iso_classes(S):
            total += groupoid_cardinality(homotopy_fibre(F, cls.rep)) / cls.aut_order
        assert total == groupoid_cardinality(F.source)


def test_prism_law(binomial3, forests3):
    # outer rectangle and right square pullbacks imply the left square is
    # one: built from vertically pasted active-inert pushout squares, whose
    # images strictly commute
    from decspace import delta
    from decspace.simplicial import _instantiate

    rng = random.Random(11)
    cases = []
    for _ in range(40):
        n = rng.randrange(0, 2)
        k1 = rng.randrange(0, 3)
        g1s = list(delta.all_active_maps(n, k1))
        if not g1s:
            continue
        g1 = rng.choice(g1s)
        k2 = rng.randrange(0, 3)
        g2s = list(delta.all_active_maps(k1, k2))
        if not g2s:
            continue
        g2 = rng.choice(g2s)
        m = rng.randrange(n, n + 2)
        iners = [f for f in delta.all_maps(n, m) if delta.is_inert(f)]
        if not iners:
            continue
        i = rng.choice(iners)
        sq_a = delta.pushout_active_inert(g1, i)
        sq_b = delta.pushout_active_inert(g2, sq_a.bottom)
        outer = delta.DeltaSquare(
            top=i,
            left=delta.compose(g2, g1),
            right=delta.compose(sq_b.right, sq_a.right),
            bottom=sq_b.bottom,
        )
        if sq_b.right.cod <= 3:
            cases.append((sq_a, sq_b, outer))
    assert len(cases) >= 10
    checked = 0
    for X in (binomial3, forests3):
        for sq_a, sq_b, outer in cases[:12]:
            right_ok, _ = is_pullback_square(_instantiate(X, sq_a))
            outer_ok, _ = is_pullback_square(_instantiate(X, outer))
            if right_ok and outer_ok:
                left_ok, wit = is_pullback_square(_instantiate(X, sq_b))
                assert left_ok, wit
                checked += 1
    assert checked >= 10
