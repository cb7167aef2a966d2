import itertools

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from helpers import polynomials, with_subgroup
from lgmirror.errors import NotDiagonalSubgroup, NotNormalized, ParseError
from lgmirror.groups import (DiagonalGroup, DiagonalSymmetry, GroupElement, OrbifoldGroup,
                             Permutation, centralizer_H, commutator_subgroup, dual_group,
                             dual_group_bruteforce, enumerate_sigma, gdiag, jw, jw_group, sl_group)
from lgmirror.io import parse_group_spec
from lgmirror.poly import parse_polynomial, transpose

PROPS = settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
FERMAT = parse_polynomial("x1^4+x2^4+x3^4+x4^6")


def ds(*xs):
    return DiagonalSymmetry.from_fractions([str(x) for x in xs])


def same(H1, H2):
    return H1.issubgroup(H2) and H2.issubgroup(H1)


def test_gdiag_orders():
    assert gdiag(parse_polynomial("x1^4*x2 + x2^5*x3 + x3^3*x4 + x4^2")).order == 120
    assert gdiag(parse_polynomial("x1^3*x2+x2^3*x3+x3^3*x4+x4^3*x5+x5^3*x6+x6^3*x1")).order == 728


def test_dual_of_jw_is_sl_of_order_32():
    HT = dual_group(FERMAT, jw_group(FERMAT))
    printed = DiagonalGroup.generated_by([ds("1/4", 0, "-1/4", 0), ds(0, "1/4", "-1/4", 0),
                                          ds(0, 0, "1/2", "1/2")], 4)
    assert HT.order == 32
    assert same(HT, printed)
    assert same(HT, sl_group(FERMAT))


def test_jw_is_the_weight_vector():
    assert jw(FERMAT) == ds("1/4", "1/4", "1/4", "1/6")


def test_membership_and_reduction():
    H = sl_group(FERMAT)
    assert ds("1/4", "1/4", "1/2", 0) in H
    assert ds("1/4", 0, 0, 0) not in H
    lam = ds("3/4", "1/4", 0, 0)
    assert H.reduce(lam) == H.reduce(lam + ds("1/4", 0, "3/4", 0))


def test_coset_representatives_partition_the_group():
    D = gdiag(FERMAT)
    H = sl_group(FERMAT)
    reps = D.coset_representatives(H)
    assert len(reps) * H.order == D.order
    assert len({H.reduce(r) for r in reps}) == len(reps)


def test_commutator_and_centralizer_for_three_cycle():
    sigma = Permutation.from_cycles("(1 2 3)", 4)
    H = sl_group(FERMAT)
    J = commutator_subgroup(H, sigma)
    assert J.order == 16
    assert same(J, DiagonalGroup.generated_by([ds("1/4", 0, "-1/4", 0), ds(0, "1/4", "-1/4", 0)], 4))
    C = centralizer_H(H, sigma)
    assert all(lam.permute(sigma) == lam for lam in C.elements())
    assert C.order == H.order // J.order


def test_semidirect_product_laws():
    s = Permutation.from_cycles("(1 2 3)", 4)
    a = GroupElement(s, ds("1/4", 0, "3/4", 0))
    b = GroupElement(s.inverse(), ds(0, 0, "1/2", "1/2"))
    c = GroupElement.diagonal(jw(FERMAT))
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == GroupElement.identity(4)
    assert a.conjugate(b) == b.inverse() * a * b
    assert GroupElement.from_dict(a.to_dict()) == a


def test_orbifold_group_rejects_non_normalizing_s():
    W = parse_polynomial("x1^3+x2^3+x3^3")
    H = DiagonalGroup.generated_by([ds("1/3", 0, 0)], 3)
    with pytest.raises(NotNormalized):
        OrbifoldGroup(W, [Permutation.from_cycles("(1 2)", 3)], H)


def test_orbifold_group_rejects_foreign_diagonal():
    W = parse_polynomial("x1^3+x2^3")
    with pytest.raises(NotDiagonalSubgroup):
        dual_group(W, DiagonalGroup.generated_by([ds("1/2", 0)], 2))


def test_group_spec_tokens():
    G = parse_group_spec({"diag_generators": ["jW"], "perm_generators": ["(1 2 3)"]}, FERMAT)
    assert G.order == 36
    G2 = parse_group_spec({"diag_generators": ["SLW"]}, FERMAT)
    assert G2.H.order == 32 and len(G2.S) == 1
    G3 = parse_group_spec({"diag_generators": ["Gdiag"]}, FERMAT)
    assert G3.order == 384
    with pytest.raises(ParseError):
        parse_group_spec({"diag_generators": ["JW"]}, FERMAT)
    with pytest.raises(ParseError):
        parse_group_spec({"generators": []}, FERMAT)


def test_enumerate_sigma_loop_rotations():
    W = parse_polynomial("x1^2*x2 + x2^2*x3 + x3^2*x4 + x4^2*x1")
    got = {str(s) for s in enumerate_sigma(W)}
    assert got == {"(1)(2)(3)(4)", "(1 2 3 4)", "(1 3)(2 4)", "(1 4 3 2)"}


# -- oracles and properties -------------------------------------------------

@settings(max_examples=60, deadline=None, suppress_health_check=list(HealthCheck))
@given(with_subgroup(max_n=4, max_exp=4))
def test_dual_group_against_bruteforce(pair):
    W, H = pair
    assert same(dual_group(W, H), dual_group_bruteforce(W, H))


@PROPS
@given(with_subgroup())
def test_dual_is_an_involution_and_orders_multiply(pair):
    W, H = pair
    HT = dual_group(W, H)
    assert same(dual_group(transpose(W), HT), H)
    assert H.order * HT.order == gdiag(W).order
    assert gdiag(W).order == gdiag(transpose(W)).order == W.det


@PROPS
@given(with_subgroup())
def test_dual_reverses_inclusion(pair):
    W, H = pair
    big = H.join(jw_group(W))
    assert dual_group(W, big).issubgroup(dual_group(W, H))
    assert same(dual_group(W, jw_group(W)), sl_group(transpose(W)))


@settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
@given(polynomials(max_n=6, max_exp=3))
def test_enumerate_sigma_against_bruteforce(W):
    N = W.n_vars
    rows = set(W.matrix)
    brute = set()
    for p in itertools.permutations(range(N)):
        moved = {tuple(r[p.index(j)] for j in range(N)) for r in W.matrix}
        if moved == rows:
            brute.add(Permutation(p))
    assert set(enumerate_sigma(W)) == brute


@PROPS
@given(with_subgroup(max_n=6, max_exp=4), st.data())
def test_centralizer_and_commutator_orders(pair, data):
    W, H = pair
    perms = enumerate_sigma(W)
    sigma = data.draw(st.sampled_from(perms))
    Hs = H
    for k in range(1, sigma.order()):
        s = sigma
        for _ in range(k - 1):
            s = s * sigma
        Hs = Hs.join(DiagonalGroup.generated_by([g.permute(s) for g in H.generators()], W.n_vars))
    J = commutator_subgroup(Hs, sigma)
    C = centralizer_H(Hs, sigma)
    assert J.order * C.order == Hs.order
    assert J.issubgroup(Hs)
