import random

import pytest

from decspace import delta
from decspace.errors import LevelOutOfRange
from decspace.gallery import (
    binomial_B,
    forests_H,
    injections_I,
    oi_to_i,
)
from decspace.groupoids import GroupoidFunctor, is_equivalence
from decspace.simplicial import (
    SimpMap,
    check_cartesian,
    check_conservative,
    check_culf,
    check_decalage,
    check_decomposition,
    check_decomposition_active,
    check_extra_pullbacks,
    check_fibration,
    check_relatively_segal,
    check_segal,
    check_segal_direct,
    check_ulf,
    constant_map_to_point,
    corrupted_variant,
    dec,
    dec_of_map,
    evaluate,
    identity_simp_map,
    product_simplicial,
    terminal_space,
    validate_simplicial,
)


def test_validate_families(binomial3, forests3, graphs3, vect22, chain_nerve):
    for X in (binomial3, forests3, graphs3, vect22, chain_nerve):
        rep = validate_simplicial(X)
        assert rep.passed, rep.first_failure()


def test_validate_corrupted_names_identity(forests3):
    Xc, _ = corrupted_variant(forests3, 1)
    rep = validate_simplicial(Xc)
    assert not rep.passed
    assert "=" in rep.first_failure().desc  # a named simplicial identity


def test_evaluate_identity(binomial3):
    F = evaluate(binomial3, delta.identity(2))
    for x in binomial3.level(2).objects:
        assert F.obj(x) == x


def test_evaluate_composite_matches_pointwise(binomial3):
    f = delta.compose(delta.codegeneracy(0, 1), delta.coface(1, 2))  # id on [1]
    F = evaluate(binomial3, f)
    for x in binomial3.level(1).objects:
        assert F.obj(x) == x


def test_evaluate_decomposition_independent(binomial3, forests3):
    # X(g . f) == X(f) . X(g) for random composable pairs
    rng = random.Random(3)
    for X in (binomial3, forests3):
        for _ in range(20):
            a, b, c = (rng.randrange(0, X.N + 1) for _ in range(3))
            fs = list(delta.all_maps(a, b))
            gs = list(delta.all_maps(b, c))
            if not fs or not gs:
                continue
            f, g = rng.choice(fs), rng.choice(gs)
            lhs = evaluate(X, delta.compose(g, f))
            rhs_outer = evaluate(X, g)
            rhs_inner = evaluate(X, f)
            for x in X.level(c).objects:
                assert lhs.obj(x) == rhs_inner.obj(rhs_outer.obj(x))
            for (s, t, d) in list(X.level(c).arrows())[:40]:
                assert lhs.arr(s, t, d) == rhs_inner.arr(
                    rhs_outer.obj(s), rhs_outer.obj(t), rhs_outer.arr(s, t, d)
                )


def test_segal_verdicts(binomial3, forests3, graphs3, vect22, chain_nerve, injections3):
    assert check_segal(chain_nerve).passed
    assert check_segal(binomial3).passed
    assert check_segal(injections3[0]).passed
    assert not check_segal(forests3).passed
    assert not check_segal(graphs3).passed
    assert not check_segal(vect22).passed


def test_forests_segal_witness_is_lowest_square(forests3):
    rep = check_segal(forests3)
    assert not rep.squares[0].passed  # the n=1 square over level 0


def test_decomposition_verdicts(binomial3, forests3, graphs3, vect22, chain_nerve):
    for X in (binomial3, forests3, graphs3, vect22, chain_nerve):
        assert check_decomposition(X).passed


def test_decomposition_corrupted_fails(forests3):
    Xc, _ = corrupted_variant(forests3, 0)
    assert not check_decomposition(Xc).passed


def test_segal_implies_decomposition(binomial3, chain_nerve, injections3):
    for X in (binomial3, chain_nerve, injections3[0]):
        assert check_segal(X).passed
        assert check_decomposition(X).passed


def test_active_criterion_agrees(binomial3, forests3, graphs3, chain_nerve):
    for X in (binomial3, forests3, graphs3, chain_nerve):
        assert check_decomposition_active(X).passed == check_decomposition(X).passed


def test_segal_direct_cross_check(binomial3, forests3, graphs3, chain_nerve):
    for X in (binomial3, forests3, graphs3, chain_nerve):
        square_verdict = check_segal(X).passed
        direct = all(check_segal_direct(X, r) for r in (1, 2, 3))
        assert direct == square_verdict
    with pytest.raises(LevelOutOfRange):
        check_segal_direct(binomial3, 9)


def test_check_cartesian_identity(binomial3):
    F = identity_simp_map(binomial3)
    maps = [delta.coface(1, 2), delta.codegeneracy(0, 1)]
    assert check_cartesian(F, maps).passed


def test_projection_not_cartesian_on_inner_face():
    H = forests_H(2, 3)
    P = product_simplicial(H, H, grade_bound=2)
    comps = tuple(
        GroupoidFunctor(P.level(n), H.level(n), lambda o: o[0], lambda x, y, d: d[0])
        for n in range(4)
    )
    F = SimpMap("pr1", P, H, comps)
    assert not check_cartesian(F, [delta.coface(1, 2)]).passed


def test_dec_maps_culf(binomial3, forests3):
    for X in (binomial3, forests3):
        for side in ("bottom", "top"):
            Y, dmap = dec(X, side)
            assert check_segal(Y).passed
            assert check_culf(dmap).passed
            assert check_conservative(dmap).passed
            assert check_ulf(dmap).passed


def test_dec_map_cartesian_on_all_active_maps(binomial3):
    _, dmap = dec(binomial3, "bottom")
    maps = [
        f
        for a in range(3)
        for b in range(3)
        for f in delta.all_active_maps(a, b)
    ]
    assert check_cartesian(dmap, maps).passed


def test_oi_to_i_culf_and_fibrations():
    F = oi_to_i(3, 3)
    assert check_culf(F).passed
    # the forgetful map is a right fibration (orders restrict along
    # injections) but not a left one
    assert check_fibration(F, "bottom").passed
    assert not check_fibration(F, "top").passed


def test_oi_level_zero_not_equivalence():
    F = oi_to_i(2, 2)
    ok, wit = is_equivalence(F.component(0))
    assert not ok
    assert "hom-set sizes differ" in wit


def test_diagonal_not_culf():
    H = forests_H(2, 3)
    P = product_simplicial(H, H, grade_bound=4)
    comps = tuple(
        GroupoidFunctor(H.level(n), P.level(n), lambda x: (x, x), lambda x, y, d: (d, d))
        for n in range(4)
    )
    F = SimpMap("diag", H, P, comps)
    assert not check_culf(F).passed


def test_constant_map_not_conservative():
    H = forests_H(2, 2)
    F = constant_map_to_point(H)
    rep = check_conservative(F)
    assert not rep.passed


def test_ulf_implies_conservative_on_gallery(binomial3, forests3):
    for X in (binomial3, forests3):
        for side in ("bottom", "top"):
            _, dmap = dec(X, side)
            if check_ulf(dmap).passed:
                assert check_conservative(dmap).passed
    mu = forests_H(2, 3).monoidal
    if check_ulf(mu).passed:
        assert check_conservative(mu).passed


def test_dec_of_culf_is_right_fibration():
    B = binomial_B(3, 3)
    mu = B.monoidal
    decmu = dec_of_map(mu, "bottom")
    assert check_fibration(decmu, "bottom").passed


def test_relatively_segal():
    B = binomial_B(2, 3)
    assert check_relatively_segal(identity_simp_map(B)).passed
    I, equiv = injections_I(2, 3)
    assert check_relatively_segal(equiv).passed
    H = forests_H(2, 2)
    assert check_relatively_segal(identity_simp_map(H)).passed
    assert not check_relatively_segal(constant_map_to_point(H)).passed


def test_dec_validates_and_level_error(binomial3):
    for side in ("bottom", "top"):
        Y, _ = dec(binomial3, side)
        assert validate_simplicial(Y).passed
    with pytest.raises(LevelOutOfRange):
        dec(terminal_space(0), "bottom")


def test_decalage_characterization(binomial3, forests3):
    for X in (binomial3, forests3):
        rep = check_decalage(X)
        assert rep.passed
        assert rep.squares[-1].desc == "four-way agreement"
    with pytest.raises(LevelOutOfRange):
        check_decalage(binomial_B(2, 2))


def test_decalage_negative_controls(binomial3):
    for seed in range(3):
        Xc, _ = corrupted_variant(binomial3, seed)
        rep = check_decalage(Xc)
        verdicts = [r.passed for r in rep.squares[:4]]
        assert verdicts == [False] * 4
        assert rep.squares[4].passed  # agreement


def test_extra_pullbacks(binomial3, forests3):
    for X in (binomial3, forests3):
        rep = check_extra_pullbacks(X)
        assert rep.passed and len(rep.squares) > 1


def test_extra_pullbacks_precondition(forests3):
    Xc, _ = corrupted_variant(forests3, 0)
    rep = check_extra_pullbacks(Xc)
    assert not rep.passed
    assert rep.squares[0].witness == "precondition unmet"


def test_product_simplicial(binomial3):
    T = terminal_space(3)
    P = product_simplicial(binomial3, T, grade_bound=3)
    for n in range(4):
        assert len(P.level(n).objects) == len(binomial3.level(n).objects)
    H2 = forests_H(2, 2)
    PP = product_simplicial(H2, H2, grade_bound=2)
    assert validate_simplicial(PP).passed
    assert check_decomposition(PP).passed


def test_culf_pullback_transfer(binomial3):
    # a gallery map cartesian on active maps into a decomposition space has a
    # decomposition source
    mu = binomial3.monoidal
    rep = check_culf(mu)
    assert rep.passed
    assert check_decomposition(mu.source).passed
