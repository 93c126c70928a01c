import functools
import itertools

import pytest
from hypothesis import given, strategies as st

from coideal_atlas.freealg import Bicharacter, FreeElement, psi, skew_bracket, u_bracket
from coideal_atlas.nichols import (
    CanonicalElement,
    PBWMonomial,
    Subalgebra,
    coideal_check,
    deconcat,
    differential_closure_check,
    faithfulness_row,
    member,
    multidegrees_upto,
    omega,
    pbw_decompose,
    pbw_monomials,
    psi_from_element,
    shuffle_product,
    subalgebra_basis,
    theorem26_span_check,
    word_order_key,
)
from coideal_atlas.rootdata import GenDesc, build_RT, enumerate_theta, pbw_generators
from coideal_atlas.suites import descriptors

from strategies import homogeneous

BC = {n: Bicharacter.one_parameter(n) for n in range(1, 5)}
br = skew_bracket


def X(bc, i):
    return FreeElement.letter(bc, i)


# omega -------------------------------------------------------------------

def test_omega_of_letter():
    bc = BC[3]
    assert omega(X(bc, 2)).terms == {(2,): bc.ring.one}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_omega_kills_serre_relations(n):
    bc = BC[n]
    for i in range(1, n):
        a, b = X(bc, i), X(bc, i + 1)
        assert omega(br(a, br(a, b))).is_zero()
        assert omega(br(br(a, b), b)).is_zero()
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            assert omega(br(X(bc, i), X(bc, j))).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_omega_injective_on_single_brackets(n):
    bc = BC[n]
    for i in range(1, n):
        assert not omega(br(X(bc, i), X(bc, i + 1))).is_zero()


@given(homogeneous(BC[3]), homogeneous(BC[3]))
def test_omega_multiplicative(u, v):
    assert omega(u * v) == shuffle_product(omega(u), omega(v))


def test_shuffle_of_letters():
    bc = BC[3]
    for i, j in itertools.product(range(1, 4), repeat=2):
        got = shuffle_product(omega(X(bc, i)), omega(X(bc, j)))
        exp = CanonicalElement(bc, {(i, j): bc.ring.one}) + CanonicalElement(bc, {(j, i): bc.p(j, i).inverse()})
        assert got == exp


@given(homogeneous(BC[3]))
def test_shuffle_unit(u):
    c = omega(u)
    one = CanonicalElement.one(BC[3])
    assert shuffle_product(c, one) == c == shuffle_product(one, c)


# deconcatenation ---------------------------------------------------------

def test_deconcat_single_letter():
    bc = BC[2]
    legs = deconcat(omega(X(bc, 1)))
    assert [(l.terms, r) for l, r in legs] == [({(1,): bc.ring.one}, ()), ({(): bc.ring.one}, (1,))]


@given(st.lists(st.integers(1, 3), max_size=5))
def test_deconcat_split_count(w):
    bc = BC[3]
    c = CanonicalElement(bc, {tuple(w): bc.ring.one})
    assert len(deconcat(c)) == len(w) + 1


@pytest.mark.parametrize("g", list(descriptors(4)))
def test_first_derivatives_of_psi(g):
    bc = BC[4]
    rights = {r[0] for left, r in deconcat(omega(psi(bc, g))) if len(r) == 1}
    assert rights <= {i + 1 for i in g.s_circle()}
    # a piece start survives unless the piece is one letter with more to its right
    pieces = g.pieces()
    assert rights == {a for a, b in pieces if a < b or (a, b) == pieces[-1]}


# PBW basis ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def kostant(d):
    """Number of multisets of positive roots [k:m] summing to d."""
    if not any(d):
        return 1
    n = len(d)
    roots = [(k, m) for k in range(n) for m in range(k, n)]

    @functools.lru_cache(maxsize=None)
    def count(rest, idx):
        if not any(rest):
            return 1
        if idx == len(roots):
            return 0
        k, m = roots[idx]
        total = 0
        cur = list(rest)
        while True:
            total += count(tuple(cur), idx + 1)
            if min(cur[k : m + 1]) == 0:
                break
            for j in range(k, m + 1):
                cur[j] -= 1
        return total

    return count(tuple(d), 0)


def test_pbw_monomials_example():
    mons = pbw_monomials((1, 1, 0))
    assert {str(m) for m in mons} == {"u[1,2]", "u[2,2]*u[1,1]"}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pbw_count_is_kostant(n):
    for d in multidegrees_upto(n, 5):
        assert len(pbw_monomials(d)) == kostant(d)


@pytest.mark.parametrize("n", [2, 3])
def test_faithfulness_small(n):
    for d in multidegrees_upto(n, 4):
        row = faithfulness_row(BC[n], d)
        assert row.ok and row.pbw_count == kostant(d)


def test_pbw_decompose_super_letter():
    bc = BC[3]
    for k in range(1, 4):
        for m in range(k, 4):
            coords = pbw_decompose(u_bracket(bc, k, m))
            assert coords == {PBWMonomial((((k, m), 1),)): bc.ring.one}


@pytest.mark.parametrize("g", [g for g in descriptors(3) if g.s])
def test_pbw_decompose_psi_leading(g):
    coords = pbw_decompose(psi(BC[3], g))
    lead = PBWMonomial((((g.k, g.m), 1),))
    assert lead in coords
    top = word_order_key(range(g.k, g.m + 1))
    for mon in coords:
        if mon != lead:
            word = [a for (k, m), e in mon.factors for _ in range(e) for a in range(k, m + 1)]
            assert word_order_key(word) < top


# subalgebras -------------------------------------------------------------

def test_member_of_own_span():
    bc = BC[3]
    u = psi(bc, GenDesc(1, 3, {2}))
    assert member(u, [u])
    assert not member(X(bc, 1), [u])


def test_staircase_degree_111_component():
    bc = BC[3]
    p = build_RT((3, 2, 1))
    gens = [psi(bc, g) for g in pbw_generators(p)]
    basis = subalgebra_basis(gens, (1, 1, 1))
    assert len(basis) == 1
    A = Subalgebra(gens)
    assert A.contains(psi(bc, GenDesc(1, 3, {3})))


@pytest.mark.parametrize("theta", [(3, 1, 1), (3, 1, 0), (2, 1, 1), (1, 2, 0)])
def test_membership_matches_roots(theta):
    bc = BC[3]
    p = build_RT(theta)
    A = Subalgebra([psi(bc, g) for g in pbw_generators(p)], bc)
    for k in range(1, 4):
        for m in range(k, 4):
            assert A.contains(psi(bc, GenDesc(k, m, p.T_set(k)))) == p.in_T(k, m), (k, m)


def test_coideal_examples():
    bc = BC[2]
    bad = coideal_check([FreeElement.word(bc, (1, 2))], bound=4)
    assert not bad.ok
    assert bad.counterexample["right_leg"] == "x1"
    for i in (1, 2):
        assert coideal_check([X(bc, i)], bound=4).ok


def test_coideal_all_rank3_low_degree():
    bc = BC[3]
    for th in enumerate_theta(3):
        gens = [psi(bc, g) for g in pbw_generators(build_RT(th))]
        assert coideal_check(gens, bound=4).ok, th.theta


def test_differential_closure_examples():
    assert differential_closure_check(build_RT((3, 1, 0))).ok
    assert differential_closure_check(build_RT((0, 0, 0))).ok


def test_theorem26_examples():
    bc = BC[3]
    for g in (GenDesc(1, 2), GenDesc(1, 3, {2}), GenDesc(2, 2)):
        assert theorem26_span_check(bc, g).ok


# reconstruction of Psi ---------------------------------------------------

@pytest.mark.parametrize("g", list(descriptors(3)))
def test_psi_from_psi(g):
    bc = BC[3]
    got, _, verdict = psi_from_element(psi(bc, g))
    assert got == g and verdict.ok


def test_psi_from_mixed_element():
    bc = BC[3]
    c = u_bracket(bc, 1, 3) + (u_bracket(bc, 2, 3) * X(bc, 1)).scale(3)
    g, P, verdict = psi_from_element(c)
    assert g == GenDesc(1, 3, {1})
    assert verdict.ok
    g, _, _ = psi_from_element(u_bracket(bc, 2, 3))
    assert g == GenDesc(2, 3)
