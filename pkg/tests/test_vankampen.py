import warnings
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from vklab.braid import HalfTwistPath, Permutation, artin_action
from vklab.cli import bundled_path
from vklab.errors import ParseError, TransversalityError
from vklab.monodromy import Factorization, SingularFactor, hurwitz_move, local_model, read_bmf
from vklab.presentation import abelianization, tietze_simplify, verify_hom
from vklab.vankampen import (
    GroupPresentation,
    affine_presentation,
    epsilon_relator,
    format_gp,
    parse_gp,
    projective_presentation,
    shortcut_pair,
)
from vklab.word import FreeWord, apply

W = FreeWord.parse


def test_shortcut_local_models():
    expected = {1: ["x1 x2^-1"], 2: ["x1 x2 x1^-1 x2^-1"], 3: ["x1 x2 x1 x2^-1 x1^-1 x2^-1"]}
    for m, rels in expected.items():
        p = affine_presentation(local_model(m), "shortcut")
        assert [str(r) for r in p.relators] == rels


def test_full_mode_cusp_is_the_braid_group():
    p = affine_presentation(local_model(3))
    assert p.generators == 2 and len(p.relators) == 2
    s = tietze_simplify(p)
    assert s.generators == 2 and [str(r) for r in s.relators] == ["x1 x2 x1 x2^-1 x1^-1 x2^-1"]


def test_full_relators_are_action_minus_identity():
    f = local_model(2)
    act = artin_action(f.factors[0].braid())
    p = affine_presentation(f)
    expect = [act.images[j] * FreeWord(2, (-(j + 1),)) for j in range(2)]
    assert p == GroupPresentation(2, tuple(expect))


def test_shortcut_pair_for_a_conjugated_path():
    a, b = shortcut_pair(HalfTwistPath(3, 1, 3, "D"))
    assert (str(a), str(b)) == ("x1", "x2^-1 x3 x2")


def test_epsilon_relator_bounds():
    a, b = FreeWord(2, (1,)), FreeWord(2, (2,))
    with pytest.raises(ValueError):
        epsilon_relator(4, a, b)


def test_shortcut_falls_back_for_words_and_high_powers():
    f = Factorization(2, (SingularFactor(4, "local_model(4)", path=HalfTwistPath(2, 1, 2, "")),))
    with pytest.warns(UserWarning):
        p = affine_presentation(f, "shortcut")
    assert p == affine_presentation(f, "full")
    with pytest.raises(ValueError):
        affine_presentation(f, "nonsense")


@pytest.mark.parametrize("name", ["branch.bmf", "node.bmf", "cusp.bmf", "cubic_surface.bmf"])
def test_modes_agree_on_abelianization(name):
    f = read_bmf(bundled_path(name))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        short = affine_presentation(f, "shortcut")
    assert abelianization(short) == abelianization(affine_presentation(f, "full"))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_modes_simplify_to_the_same_shape(m):
    full = tietze_simplify(affine_presentation(local_model(m)))
    short = tietze_simplify(affine_presentation(local_model(m), "shortcut"))
    assert (full.generators, len(full.relators)) == (short.generators, len(short.relators))


def test_relators_are_fixed_by_reapplying_the_factor():
    f = read_bmf(bundled_path("cubic_surface.bmf"))
    p = affine_presentation(f)
    extra = []
    for fac in f.factors[:4]:
        act = artin_action(fac.braid())
        extra += [apply(act, r) for r in p.relators[:10]]
    assert abelianization(p.with_relators(extra)) == abelianization(p)


def test_projective():
    p = affine_presentation(local_model(2))
    q = projective_presentation(p, local_model(2))
    assert str(q.relators[-1]) == "x2 x1"
    assert str(abelianization(q)) == "Z"
    assert tietze_simplify(q).generators == 1
    with pytest.raises(TransversalityError):
        projective_presentation(affine_presentation(local_model(3)), local_model(3))
    f = read_bmf(bundled_path("cubic_surface.bmf"))
    assert str(abelianization(projective_presentation(affine_presentation(f), f))) == "Z/6"


@given(st.lists(st.integers(1, 17), max_size=4))
def test_hurwitz_invariance_of_abelianization(moves):
    f = read_bmf(bundled_path("cubic_surface.bmf"))
    for i in moves:
        f = hurwitz_move(f, i)
    assert str(abelianization(affine_presentation(f))) == "Z"


def test_presentation_normalizes_relators():
    p = GroupPresentation(2, (W("x1 x2 x1^-1", 2), FreeWord(2, (1, -1))))
    assert [str(r) for r in p.relators] == ["x2"]
    assert p.labels == ("G1", "G2")
    with pytest.raises(ValueError):
        GroupPresentation(2, (), ("a",))


def test_gp_roundtrip():
    p = GroupPresentation(2, (W("x1 x2 x1 x2^-1 x1^-1 x2^-1", 2),))
    text = format_gp(p)
    assert text == "generators 2\nrel x1 x2 x1 x2^-1 x1^-1 x2^-1\n"
    assert parse_gp(text) == p
    labelled = GroupPresentation(1, (), ("G1@2",))
    assert parse_gp(format_gp(labelled)).labels == ("G1@2",)


@pytest.mark.parametrize("text", ["rel x1\n", "generators 2\nrel x3\n", "generators two\n", "gens 2\n", ""])
def test_gp_errors(text):
    with pytest.raises(ParseError):
        parse_gp(text)


def _paths(n):
    for a in range(1, n):
        for b in range(a + 1, n + 1):
            for tags in product("UD", repeat=b - a - 1):
                yield HalfTwistPath(n, a, b, "".join(tags))


def test_shortcut_and_full_admit_the_same_maps_to_s3():
    # two presentations of the same group have the same homomorphisms to S_3
    s3 = [Permutation.identity(3)]
    s3 += [Permutation.parse(c, 3) for c in ("(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)")]
    for n in (3, 4):
        for path in _paths(n):
            for eps in (1, 2, 3):
                fac = Factorization(n, (SingularFactor(eps, ("branch", "node", "cusp")[eps - 1], path=path),))
                full = affine_presentation(fac)
                short = affine_presentation(fac, "shortcut")
                for ims in product(s3, repeat=n):
                    assert verify_hom(full, ims).holds == verify_hom(short, ims).holds, (path, eps, ims)
