import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vklab.braid import BraidWord, HalfTwistPath, halftwist_to_word
from vklab.btilde import (
    ACTION_VARIANTS,
    G0Element,
    SemidirectElement,
    act_on_generators,
    default_quadrangles,
    default_transversal_samples,
    g0_invert,
    g0_multiply,
    generates_symmetric_group,
    n9_relators,
    prime_check,
    quadrangle_check,
    solvable_series_report,
    theorem1_action,
    transversal_relations,
    verify_action_well_defined,
)
from vklab.braid import Permutation

N = 9
H = HalfTwistPath.parse
u = lambda i, p=1: G0Element.u(N, i, p)  # noqa: E731
TAU = G0Element.central(N)
ONE = G0Element.identity(N)


# -- oracles -----------------------------------------------------------------------

def letters(g):
    """Expand a normal form into a list of signed generator letters."""
    out = []
    for i, e in enumerate(g.exponents, 1):
        out += [i if e > 0 else -i] * abs(e)
    return out, g.tau


def bubble_product(*gs):
    """Multiply by concatenating letters and bubble-sorting them into
    ascending index order, paying one tau per swap of neighbouring indices."""
    word, tau = [], 0
    for g in gs:
        w, t = letters(g)
        word += w
        tau ^= t
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            a, b = word[k], word[k + 1]
            if abs(a) > abs(b):
                word[k], word[k + 1] = b, a
                tau ^= int(abs(abs(a) - abs(b)) == 1)
                changed = True
    exps = [0] * (N - 1)
    for a in word:
        exps[abs(a) - 1] += 1 if a > 0 else -1
    return G0Element(N, tuple(exps), tau)


def case_matrix(k, variant="literal"):
    """Action of X_k on exponent vectors (columns are images of u_i), read
    off the case list directly."""
    m = np.eye(N - 1, dtype=int)
    if k + 1 <= N - 1:
        m[k - 1, k] = 1
    if k - 1 >= 1:
        m[k - 1, k - 2] = 1 if variant == "literal" else -1
    return m


def word_matrix(w, variant="literal"):
    m = np.eye(N - 1, dtype=int)
    for a in w.letters:
        c = case_matrix(abs(a), variant)
        if a < 0:
            c = np.rint(np.linalg.inv(c)).astype(int)
        m = c @ m
    return m


elements = st.builds(
    lambda e, t: G0Element(N, tuple(e), t),
    st.lists(st.integers(-4, 4), min_size=N - 1, max_size=N - 1),
    st.integers(0, 1),
)


# -- G_0 algebra ----------------------------------------------------------------

def test_commutator_table():
    for i, j in product(range(1, N), repeat=2):
        c = u(i) * u(j) * u(i).inverse() * u(j).inverse()
        assert c == (TAU if abs(i - j) == 1 else ONE), (i, j)


def test_g0_examples():
    assert u(1) * u(2) == u(2) * u(1) * TAU
    assert (u(1) * u(2)) * (u(2) * u(1)) == G0Element(N, (2, 2) + (0,) * 6, 0)
    assert u(1) * u(3) == u(3) * u(1)
    assert str(u(3) * TAU) == "u3 tau" and str(ONE) == "1"


def test_associativity_on_random_triples():
    rng = random.Random(7)
    rand = lambda: G0Element(N, tuple(rng.randint(-5, 5) for _ in range(N - 1)), rng.randint(0, 1))  # noqa: E731
    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)


@given(elements, elements)
def test_multiply_matches_bubble_oracle(a, b):
    assert g0_multiply(a, b) == bubble_product(a, b)


@given(elements)
def test_tau_central_and_inverse(a):
    assert a * TAU == TAU * a
    assert (a * g0_invert(a)).is_identity() and (g0_invert(a) * a).is_identity()
    assert a ** 3 == a * a * a and a ** -2 == (a * a).inverse()


def test_tau_is_involution():
    assert (TAU * TAU).is_identity() and not TAU.is_identity()


def test_g0_errors():
    with pytest.raises(ValueError):
        g0_multiply(G0Element.u(4, 1), u(1))
    with pytest.raises(ValueError):
        G0Element(N, (0,) * 8, 2)
    with pytest.raises(ValueError):
        G0Element(N, (0,) * 7)


# -- the action --------------------------------------------------------------------

def test_action_case_list():
    X = lambda *a: BraidWord(N, a)  # noqa: E731
    assert theorem1_action(X(3), u(3)) == u(3) * TAU
    assert theorem1_action(X(7), u(3)) == u(3)
    assert theorem1_action(X(4), u(3)) == u(4) * u(3)
    assert theorem1_action(X(2), u(3)) == u(2) * u(3)
    assert theorem1_action(X(2), u(1), "signed") == u(2, -1) * u(1)
    with pytest.raises(ValueError):
        theorem1_action(BraidWord(4, (1,)), u(1))
    with pytest.raises(ValueError):
        theorem1_action(X(1), u(1), "other")


@pytest.mark.parametrize("variant", ACTION_VARIANTS)
@given(k=st.integers(1, N - 1), a=elements, b=elements)
def test_letters_are_automorphisms(variant, k, a, b):
    for s in (k, -k):
        w = BraidWord(N, (s,))
        act = lambda g: theorem1_action(w, g, variant)  # noqa: E731
        assert act(a * b) == act(a) * act(b)
        assert theorem1_action(w.inverse(), act(a), variant) == a


@pytest.mark.parametrize("variant", ACTION_VARIANTS)
def test_exponent_action_matches_case_list(variant):
    for k in range(1, N):
        for w in (BraidWord(N, (k,)), BraidWord(N, (-k,))):
            ims = act_on_generators(w, N, variant)
            got = np.array([g.exponents for g in ims]).T
            assert (got == word_matrix(w, variant)).all(), (k, variant)


def test_literal_braid_relation_fails_on_exponents():
    # the case-list matrices themselves violate X1 X2 X1 = X2 X1 X2
    assert not (word_matrix(BraidWord(N, (1, 2, 1))) == word_matrix(BraidWord(N, (2, 1, 2)))).all()
    rep = verify_action_well_defined(N)
    names = {c.name for c in rep.failures()}
    assert "braid_relation_1_2" in names
    assert not rep.passed
    fail = next(c for c in rep.checks if c.name == "braid_relation_1_2")
    assert str(fail).startswith("check braid_relation_1_2 FAIL u1:")


def test_far_commutation_holds_for_both_variants():
    for v in ACTION_VARIANTS:
        rep = verify_action_well_defined(N, samples=[], variant=v)
        assert all(c.passed for c in rep.checks if c.name.startswith("far_commutation"))
        assert "far_commutation_1_5" in {c.name for c in rep.checks}


def test_signed_variant_satisfies_artin_relations_only():
    rep = verify_action_well_defined(N, variant="signed")
    assert all(c.passed for c in rep.checks if not c.name.startswith("transversal"))
    assert any(c.name.startswith("transversal") for c in rep.failures())


@pytest.mark.parametrize("variant", ACTION_VARIANTS)
def test_all_relations_hold_mod_two(variant):
    # reduced to exponent vectors mod 2 every sampled relation acts trivially
    rep = verify_action_well_defined(N, variant=variant)
    words = [BraidWord(N, (k, k + 1, k, -(k + 1), -k, -(k + 1))) for k in range(1, N - 1)]
    words += [BraidWord(N, (k, l, -k, -l)) for k in range(1, N) for l in range(k + 2, N)]
    for p, q in default_transversal_samples(N):
        x, y = halftwist_to_word(p), halftwist_to_word(q)
        words.append(x * y * x.inverse() * y.inverse())
    assert len(words) == len(rep.checks)
    for w in words:
        assert (word_matrix(w, variant) % 2 == np.eye(N - 1, dtype=int)).all()


def test_transversal_samples_classify():
    samples = default_transversal_samples(N)
    assert samples and transversal_relations(N, samples).pairs == tuple(samples)


# -- quadrangles -------------------------------------------------------------------

def test_default_quadrangles_satisfy_permutation_and_exponent_conditions():
    quads = default_quadrangles(N)
    assert len(quads) == 12
    for q in quads:
        rep = quadrangle_check(*q)
        by = {c.name.split()[0]: c for c in rep.checks}
        assert by["quadrangle_permutation"].passed
        assert by["quadrangle_exponent_sum"].passed
        # the G_0 action of w is evaluated and reported, whatever it is
        assert "quadrangle_g0_action" in by


def test_quadrangle_g0_verdict_matches_matrix_oracle():
    for q in default_quadrangles(N):
        h = [halftwist_to_word(x) ** 2 for x in q]
        w = h[0] * h[2] * (h[1] * h[3]).inverse()
        rep = quadrangle_check(*q)
        g0 = next(c for c in rep.checks if c.name.startswith("quadrangle_g0_action"))
        if not (word_matrix(w) == np.eye(N - 1, dtype=int)).all():
            assert not g0.passed


def test_quadrangle_precondition():
    s = H("H(1,2;)", N)
    with pytest.raises(ValueError):
        quadrangle_check(s, s, s, s)
    with pytest.raises(ValueError):
        quadrangle_check(H("H(1,2;)", N), H("H(2,3;)", N), H("H(1,3;D)", N), H("H(1,3;U)", N))


# -- prime elements ------------------------------------------------------------

def test_prime_check_on_u3():
    rep = prime_check(u(3), 3, TAU)
    c1 = next(c for c in rep.checks if c.name == "prime_condition_1")
    expect = theorem1_action(BraidWord(N, (-3,)), u(3)) == u(3).inverse() * TAU
    assert c1.passed == expect
    assert sum(c.name.startswith("prime_condition_2") for c in rep.checks) == 2
    assert sum(c.name.startswith("prime_condition_3") for c in rep.checks) == 5


def test_prime_check_identity_element():
    rep = prime_check(ONE, 3, TAU)
    c1 = next(c for c in rep.checks if c.name == "prime_condition_1")
    assert not c1.passed
    assert all(c.passed for c in rep.checks if c.name.startswith("prime_condition_3"))
    assert prime_check(ONE, 3, ONE).passed


def test_tau_is_fixed_by_every_frame_letter():
    for k in range(1, N):
        for s in (k, -k):
            assert theorem1_action(BraidWord(N, (s,)), TAU) == TAU


def test_prime_check_rejects_bad_tau():
    with pytest.raises(ValueError):
        prime_check(u(3), 3, u(1))
    with pytest.raises(ValueError):
        prime_check(u(3), 3, TAU, disjoint=[H("H(3,4;)", N)])


# -- transversal relations and the semidirect product -------------------------

def test_transversal_relation_examples():
    assert len(transversal_relations(N, [(H("H(1,3;D)", N), H("H(2,4;D)", N))]).relators) == 1
    assert transversal_relations(N, [(H("H(1,2;)", N), H("H(2,3;)", N))]).relators == ()
    assert transversal_relations(N, [(H("H(1,2;)", N), H("H(3,4;)", N))]).relators == ()
    with pytest.raises(ValueError):
        transversal_relations(N, [(H("H(1,2;)", 4), H("H(2,3;)", 4))])


def test_semidirect_product():
    a = SemidirectElement(BraidWord(N, (1,)), u(1))
    b = SemidirectElement(BraidWord(N, (2,)), u(2))
    ab = a * b
    assert ab.braid == BraidWord(N, (1, 2))
    assert ab.module == theorem1_action(BraidWord(N, (2,)), u(1)) * u(2)
    assert not ab.maybe_equal(b * a)
    rels = n9_relators(N)
    assert len(rels) == 8 and rels[2].module == u(3, 3)


def test_series_report():
    rep = solvable_series_report(N)
    flags = {q: v for q, _, v in rep.layers}
    assert flags["G/H_9"] and flags["H'_9,0"]
    assert not flags["H_9/H_9,0"]
    assert rep.lines()[0] == "layer G/H_9 = S_9 VERIFIED"
    assert not generates_symmetric_group([Permutation.parse("(1 2)", 3)])
