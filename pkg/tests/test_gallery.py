import pytest

from decspace.errors import NotAPoset, UnsupportedField
from decspace.gallery import (
    FinCat,
    binomial_B,
    fat_nerve,
    forests_H,
    graphs_G,
    group_category,
    injections_I,
    mono_nerve,
    mono_projection,
    nerve_of_poset,
    oi_space,
    oi_to_i,
    poset_category,
    vect_S,
)
from decspace.gallery.posets import PosetSpec, chain_poset
from decspace.groupoids import is_equivalence, iso_classes, validate_groupoid
from decspace.simplicial import (
    check_culf,
    check_decomposition,
    check_segal,
    dec,
    validate_simplicial,
)


def test_every_constructor_validates(binomial3, forests3, graphs3, vect22, chain_nerve):
    spaces = [
        binomial3,
        forests3,
        graphs3,
        vect22,
        chain_nerve,
        injections_I(2, 3)[0],
        oi_space(2, 3),
        mono_nerve(2, 2, 2),
    ]
    for X in spaces:
        assert validate_simplicial(X).passed, X.name


def test_level_groupoids_satisfy_axioms():
    # full groupoid axioms by enumeration, at small size
    spaces = [binomial_B(2, 2), forests_H(2, 2), graphs_G(2, 2), vect_S(2, 1, 2)]
    for X in spaces:
        for n in range(X.N + 1):
            rep = validate_groupoid(X.level(n))
            assert rep.passed, (X.name, n, rep.first_failure())


def test_canonicalization_soundness(binomial3, forests3, graphs3, vect22):
    # equal canonical keys exactly when an isomorphism exists
    for X in (binomial3, forests3, graphs3, vect22):
        for n in (1, 2):
            L = X.level(n)
            objs = L.objects[:120]
            for x in objs:
                for y in objs:
                    same = L.canon_key(x) == L.canon_key(y)
                    assert same == (L.some_iso(x, y) is not None)


def test_poset_nerve_counts(chain_nerve):
    assert len(chain_nerve.level(2).objects) == 10
    antichain = nerve_of_poset(PosetSpec.from_relations(("a", "b"), ()), 3)
    for n in range(4):
        assert len(antichain.level(n).objects) == 2


def test_poset_file_roundtrip(tmp_path):
    path = tmp_path / "chain3.txt"
    path.write_text("# a chain\n0 < 1\n1 < 2\n\n")
    spec = PosetSpec.from_file(path)
    X = nerve_of_poset(spec, 2)
    assert len(X.level(0).objects) == 3
    bad = tmp_path / "cycle.txt"
    bad.write_text("a < b\nb < a\n")
    with pytest.raises(NotAPoset):
        nerve_of_poset(PosetSpec.from_file(bad), 2)


def test_fat_nerve_of_poset_matches_ordinary_nerve():
    spec = chain_poset(2)
    cat = poset_category(spec)
    fat = fat_nerve(cat, 3)
    ordinary = nerve_of_poset(spec, 3)
    for n in range(4):
        assert len(fat.level(n).objects) == len(ordinary.level(n).objects)
        ok, _ = is_equivalence(
            _counting_functor(fat.level(n), ordinary.level(n))
        )
    assert check_segal(fat).passed


def _counting_functor(A, B):
    from decspace.groupoids import GroupoidFunctor

    pairing = dict(zip(sorted(A.objects, key=repr), sorted(B.objects, key=repr)))
    return GroupoidFunctor(A, B, lambda x: pairing[x], lambda x, y, d: (), name="count")


def test_fat_nerve_one_object_group():
    cat = group_category("Z3", (0, 1, 2), lambda a, b: (a + b) % 3, 0)
    X = fat_nerve(cat, 3)
    table = iso_classes(X.level(1))
    assert len(table) == 1
    assert table.classes[0].aut_order == 3
    assert check_segal(X).passed


def test_injections_matches_generic_fat_nerve():
    # the monotone-string skeleton is levelwise equivalent to the fat nerve
    # of the category of all injections, at a small bound
    arrows = {}
    compose = {}
    identities = {}
    objects = (0, 1, 2)
    from itertools import permutations

    def injections(a, b):
        out = []
        for img in permutations(range(b), a):
            out.append(("inj", a, b, img))
        return out

    hom = {}
    for a in objects:
        for b in objects:
            maps = injections(a, b)
            if maps:
                hom[(a, b)] = tuple(maps)
    for (a, b), fs in hom.items():
        for f in fs:
            for (c, d), gs in hom.items():
                if c != b:
                    continue
                for g in gs:
                    comp = ("inj", a, d, tuple(g[3][v] for v in f[3]))
                    compose[(g, f)] = comp
    for a in objects:
        identities[a] = ("inj", a, a, tuple(range(a)))
    cat = FinCat("inj<=2", objects, hom, compose, identities)
    generic = fat_nerve(cat, 2)
    I, _ = injections_I(2, 2)
    for n in range(3):
        GA, GB = generic.level(n), I.level(n)
        ta, tb = iso_classes(GA), iso_classes(GB)
        assert sorted(c.aut_order for c in ta) == sorted(c.aut_order for c in tb)
        assert len(ta) == len(tb)


def test_binomial_level_one(binomial4):
    b = iso_classes(binomial4.level(1))
    assert [c.aut_order for c in b] == [1, 1, 2, 6, 24]


def test_forests_level_zero(forests3):
    assert len(forests3.level(0).objects) == 1


def test_injections_class_count():
    I, _ = injections_I(2, 2)
    table = iso_classes(I.level(1))
    # domain-size/codomain-size pairs with 0 <= a <= b <= 2
    assert {c.key for c in table} == {(a, b) for b in range(3) for a in range(b + 1)}


def test_monoidal_maps_culf(binomial3, graphs3):
    H = forests_H(2, 3)
    I = injections_I(2, 3)[0]
    for X in (binomial3, H, graphs3, I):
        rep = check_culf(X.monoidal)
        assert rep.passed, X.name


def test_oi_to_i_naturality():
    F = oi_to_i(2, 3)
    assert F.naturality_defect() is None


def test_dec_equivalence_naturality_and_levelwise():
    I, equiv = injections_I(3, 3)
    assert equiv.naturality_defect() is None
    for k in range(4):
        ok, wit = is_equivalence(equiv.component(k))
        assert ok, wit


def test_vect_classes(vect22):
    table = iso_classes(vect22.level(1))
    assert [c.aut_order for c in table] == [1, 1, 6]
    assert check_decomposition(vect22).passed
    assert not check_segal(vect22).passed


def test_vect_unsupported_field():
    with pytest.raises(UnsupportedField):
        vect_S(5, 2, 2)


def test_mono_projection_levelwise_equivalence():
    proj = mono_projection(2, 2, 2)
    assert proj.naturality_defect() is None
    for k in range(3):
        ok, wit = is_equivalence(proj.component(k))
        assert ok, wit


def test_dec_top_forests_segal():
    H = forests_H(3, 3)
    Y, dmap = dec(H, "top")
    assert check_segal(Y).passed
    assert check_culf(dmap).passed
