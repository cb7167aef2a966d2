"""Acceptance criteria, one check per criterion.

Each check prints a single ``criterion N: PASS|FAIL`` line.  Checks that
cannot pass on the published values are left failing; the analysis of each
such case lives in the decisions ledger.  Run directly with
``python tests/test_acceptance.py`` for the summary alone.
"""
from __future__ import annotations

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import prime_order_family  # noqa: E402
from lgmirror.groups import (DiagonalGroup, DiagonalSymmetry, GroupElement,  # noqa: E402
                             OrbifoldGroup, Permutation, diag_generators, dual_group, gdiag, jw,
                             jw_group, sl_group)
from lgmirror.mirror import (dsc_check, equivariant_phi, krawitz_candidates,  # noqa: E402
                             krawitz_pair, verify_mirror)
from lgmirror.orbits import FiberKey, projected_dimensions  # noqa: E402
from lgmirror.poly import milnor_number, parse_polynomial, transpose  # noqa: E402
from lgmirror.sectors import SectorBasisElement, bidegree, sector_basis  # noqa: E402

LIMIT = 60.0
F = Fraction
FERMAT = parse_polynomial("x1^4+x2^4+x3^4+x4^6")
CHAIN = parse_polynomial("x1^4*x2 + x2^5*x3 + x3^3*x4 + x4^2")
LOOP6 = parse_polynomial("x1^3*x2+x2^3*x3+x3^3*x4+x4^3*x5+x5^3*x6+x6^3*x1")


def ds(*xs):
    return DiagonalSymmetry.from_fractions([str(x) for x in xs])


def perm(text, n):
    return Permutation.from_cycles(text, n)


def bd(p, q):
    return (F(p), F(q))


# -- criterion 1 ----------------------------------------------------------------

def criterion_1():
    w = CHAIN.weights
    mu = milnor_number(CHAIN)
    ok = w == (F(5, 24), F(1, 6), F(1, 6), F(1, 2)) and mu == 95
    return ok, "weights %s, mu %d" % (",".join(map(str, w)), mu)


# -- criterion 2 ----------------------------------------------------------------

def criterion_2():
    a, b = gdiag(CHAIN).order, gdiag(LOOP6).order
    HT = dual_group(FERMAT, jw_group(FERMAT))
    printed = DiagonalGroup.generated_by([ds("1/4", 0, "-1/4", 0), ds(0, "1/4", "-1/4", 0),
                                          ds(0, 0, "1/2", "1/2")], 4)
    same = HT.issubgroup(printed) and printed.issubgroup(HT)
    ok = a == 120 and b == 728 and HT.order == 32 and same
    return ok, "|Gdiag| %d and %d, |H^T| %d, generators match: %s" % (a, b, HT.order, same)


# -- criterion 3 ----------------------------------------------------------------

# one entry per shaded group of the printed mirror table (its G-orbit rows)
TABLE_ONE_PRINTED = {
    bd(0, 0): 1, bd("1/3", "1/3"): 1, bd("2/3", "2/3"): 1, bd("1/2", "1/2"): 2,
    bd("5/12", "7/12"): 1, bd("7/12", "5/12"): 1, bd("3/4", "7/4"): 1, bd("7/4", "3/4"): 1,
    bd("5/6", "5/6"): 2, bd("11/12", "11/12"): 3, bd(1, 1): 2, bd("13/12", "13/12"): 6,
    bd("7/6", "7/6"): 2, bd("5/4", "5/4"): 2, bd("4/3", "4/3"): 3, bd("3/2", "3/2"): 1,
    bd("5/3", "5/3"): 2, bd("11/6", "11/6"): 1,
}


def criterion_3():
    S = [perm("(1 2 3)", 4)]
    A = projected_dimensions(FERMAT, OrbifoldGroup(FERMAT, S, jw_group(FERMAT)), "A").as_pairs()
    B = projected_dimensions(FERMAT, OrbifoldGroup(FERMAT, S, sl_group(FERMAT)), "B").as_pairs()
    equal = A == B
    missing = sorted(set(TABLE_ONE_PRINTED) - set(A))
    extra = sorted(set(A) - set(TABLE_ONE_PRINTED))
    wrong = sorted(k for k in set(A) & set(TABLE_ONE_PRINTED) if A[k] != TABLE_ONE_PRINTED[k])
    ok = equal and A == TABLE_ONE_PRINTED
    fmt = lambda ks: " ".join("(%s,%s)" % k for k in ks) or "none"
    return ok, ("A and B tables equal: %s (total %d); absent: %s; unlisted: %s; dims differ at: %s"
                % (equal, sum(A.values()), fmt(missing), fmt(extra), fmt(wrong)))


# -- criterion 4 ----------------------------------------------------------------

def _b(permtext, diag, mono):
    return SectorBasisElement(tuple(mono), GroupElement(perm(permtext, 4), ds(*diag)))


Z4 = [0, 0, 0, 0]
H_ONE = ["1/2", "1/2", "1/2", "1/2"]
LISTED_ROWS = [
    (_b("", Z4, [0, 0, 0, 0]), bd(0, 0)),
    (_b("", Z4, [1, 1, 1, 1]), bd("11/12", "11/12")),
    (_b("", Z4, [2, 2, 2, 2]), bd("11/6", "11/6")),
    (_b("", Z4, [1, 1, 1, 3]), bd("4/3", "4/3")),
    (_b("", Z4, [2, 2, 2, 4]), bd("13/12", "13/12")),
    (_b("", Z4, [2, 2, 2, 0]), bd("3/2", "3/2")),
    (_b("", Z4, [0, 0, 0, 2]), bd("1/3", "1/3")),
    (_b("", Z4, [0, 0, 0, 4]), bd("2/3", "2/3")),
    (_b("", H_ONE, Z4), bd("13/12", "13/12")),
]
for _d in (["1/2", "3/4", "1/4", "1/2"], ["1/4", "1/2", "3/4", "1/2"], ["3/4", "1/4", "1/2", "1/2"],
           ["3/4", "1/2", "1/4", "1/2"], ["1/4", "3/4", "1/2", "1/2"], ["1/2", "1/4", "3/4", "1/2"]):
    LISTED_ROWS.append((_b("", _d, Z4), bd("13/12", "13/12")))
for _m, _pair in ((1, ("5/12", "7/12")), (3, ("3/4", "7/4"))):
    for _d in (["1/4", "1/4", "1/2", 0], ["1/4", "1/2", "1/4", 0], ["1/2", "1/4", "1/4", 0]):
        LISTED_ROWS.append((_b("", _d, [0, 0, 0, _m]), bd(*_pair)))
for _m, _pair in ((1, ("7/12", "5/12")), (3, ("7/4", "3/4"))):
    for _d in (["3/4", "3/4", "1/2", 0], ["3/4", "1/2", "3/4", 0], ["1/2", "3/4", "3/4", 0]):
        LISTED_ROWS.append((_b("", _d, [0, 0, 0, _m]), bd(*_pair)))
for _p in ("(1 2 3)", "(1 3 2)"):
    for _m, _pair in (((0, 0), ("1/2", "1/2")), ((1, 1), ("11/12", "11/12")),
                      ((1, 3), ("5/4", "5/4")), ((2, 0), (1, 1)), ((2, 2), ("4/3", "4/3")),
                      ((2, 4), ("5/3", "5/3")), ((0, 2), ("5/6", "5/6")), ((0, 4), ("7/6", "7/6"))):
        LISTED_ROWS.append((_b(_p, Z4, _m), bd(*_pair)))
        LISTED_ROWS.append((_b(_p, ["1/4", 0, "3/4", 0], _m), bd(*_pair)))
    LISTED_ROWS.append((_b(_p, [0, 0, "1/2", "1/2"], (0, 0)), bd("13/12", "13/12")))
    LISTED_ROWS.append((_b(_p, ["1/4", 0, "1/4", "1/2"], (0, 0)), bd("13/12", "13/12")))


def criterion_4():
    bad = []
    for b, want in LISTED_ROWS:
        got = bidegree(FERMAT, b, "B")
        if (got.left, got.right) != want:
            bad.append("%s gives %s, listed (%s,%s)" % (b, got, *want))
    return not bad, "%d of %d listed rows agree%s" % (
        len(LISTED_ROWS) - len(bad), len(LISTED_ROWS), "; " + "; ".join(bad) if bad else "")


# -- criterion 5 ----------------------------------------------------------------

def _diag(lam, mono=None):
    return SectorBasisElement(tuple(mono or (0,) * lam.n), GroupElement.diagonal(lam))


KRAWITZ_MODELS = [FERMAT, CHAIN, parse_polynomial("x1^2*x2 + x2^3*x3 + x3^2*x1"),
                  parse_polynomial("x1^3*x2 + x2^2 + x3^5"), parse_polynomial("x1^2*x2 + x2^2*x1")]


def criterion_5():
    z4 = DiagonalSymmetry.zero(4)
    worked = [
        krawitz_pair(FERMAT, _diag(jw(FERMAT))) == _diag(z4),
        krawitz_pair(FERMAT, _diag(jw(FERMAT) * 5)) == _diag(z4, (0, 0, 0, 4)),
        krawitz_pair(LOOP6, _diag(diag_generators(LOOP6)[3] * 91))
        == _diag(DiagonalSymmetry.zero(6), (2, 1, 2, 1, 2, 1)),
    ]
    total = exchanged = equal = 0
    for W in KRAWITZ_MODELS:
        WT = transpose(W)
        for lam in gdiag(W).elements():
            for b in sector_basis(W, GroupElement.diagonal(lam)):
                for a2, m2 in krawitz_candidates(W, lam, b.monomial):
                    A = bidegree(W, b, "A")
                    B = bidegree(WT, SectorBasisElement(m2, GroupElement.diagonal(a2)), "B")
                    total += 1
                    exchanged += (A.left, A.right) == (B.right, B.left)
                    equal += A == B
    ok = all(worked) and exchanged == total
    return ok, ("worked correspondences %d/3; A-bidegree equals exchanged B-bidegree on %d of %d "
                "pairs (equals it unexchanged on %d)" % (sum(worked), exchanged, total, equal))


# -- criterion 6 ----------------------------------------------------------------

def _cubic_pair():
    W = parse_polynomial("x1^3+x2^3")
    return W, OrbifoldGroup(W, [perm("(1 2)", 2)], gdiag(W))


def _six_cubics():
    W = parse_polynomial("+".join("x%d^3" % i for i in range(1, 7)))
    return W, OrbifoldGroup(W, [perm("(1 2 3)", 6), perm("(4 5 6)", 6)], jw_group(W))


def _nine(e, gens, alpha, mono):
    W = parse_polynomial("+".join("x%d^%d" % (i, e) for i in range(1, 10)))
    sig = perm("(1 2 3)(4 5 6)(7 8 9)", 9)
    tau = perm("(1 4 7)(2 5 8)(3 6 9)", 9)
    return W, OrbifoldGroup(W, [sig, tau], DiagonalGroup.generated_by(gens, 9)), \
        FiberKey(sig, ds(*alpha), mono)


def criterion_6():
    parts = []
    W, G = _cubic_pair()
    res = dsc_check(W, G)
    hit = [w for w in res["witnesses"] if w["side"] == "B" and w["element"]["monomial"] == [0, 0]
           and w["element"]["sector"]["perm"] == "(1)(2)" and w["scalar"] == "1/2"]
    parts.append(("volume form of swapped cubics in E by sign -1", bool(hit)))

    W, G = _six_cubics()
    r = verify_mirror(W, G)
    d = r.first_difference
    gap = d is not None and (d["dim_A"], d["dim_B"]) == (1, 3)
    parts.append(("six cubics: DSC fails", not r.dsc["passed"]))
    parts.append(("six cubics: tables differ 3 vs 1 (verdict %s, first difference %s)"
                  % (r.verdict, d), gap))

    gens = [ds(*["1/3"] * 3 + [0] * 6), ds(*[0] * 3 + ["1/3"] * 3 + [0] * 3),
            ds(*[0] * 6 + ["1/3"] * 3)]
    W, G, c = _nine(6, gens, (0, 0, 0), (2, 2, 2))
    phi = equivariant_phi(W, G, fibers=[c])
    parts.append(("nine sextics: Phi found with %d matched" % phi["matched_orbits"],
                  phi["passed"] and phi["matched_orbits"] == 27))

    W, G, c = _nine(9, [ds(*"1/9 1/9 1/9 4/9 4/9 4/9 7/9 7/9 7/9".split())],
                    ("1/3", "1/3", "1/3"), (0, 0, 0))
    phi = equivariant_phi(W, G, fibers=[c])
    ok = False
    if not phi["passed"]:
        w = phi["witnesses"][0]
        ok = (sorted(x["orbit_size"] for x in w["fiber_action_A"]) == [3]
              and sorted(x["orbit_size"] for x in w["fiber_action_B"]) == [1, 1, 1])
    parts.append(("nine nonics: no Phi, 3-cycle against trivial action", ok))
    return all(p for _, p in parts), "; ".join("%s: %s" % (t, "ok" if p else "FAILED")
                                               for t, p in parts)


# -- criterion 7 ----------------------------------------------------------------

def criterion_7():
    import test_groups
    import test_orbits
    import test_poly
    import test_sectors
    suites = [
        ("BC^T = I = CB^T, A_s B = B A, B^T A_s = A B^T", test_sectors.test_cycle_matrices),
        ("(W^T)^s = (W^s)^T", test_poly.test_transpose_commutes_with_reduction),
        ("age(g) + age(g^-1) = N - N_g", test_sectors.test_age_of_inverse),
        ("(H^T)^T = H, |H||H^T| = |Gdiag|", test_groups.test_dual_is_an_involution_and_orders_multiply),
        ("bidegree invariance", test_orbits.test_bidegree_invariant_under_dot_action),
        ("fiber orbit count", test_orbits.test_fiber_orbit_count_matches_kernel_over_commutator),
        ("centralizer route", test_orbits.test_projected_dimensions_agree_with_centralizer_route),
    ]
    failed = []
    for name, fn in suites:
        try:
            fn()
        except Exception as exc:  # hypothesis re-raises the falsifying example
            failed.append("%s (%s)" % (name, type(exc).__name__))
    return not failed, "%d suites of 200 cases%s" % (
        len(suites), "; failed: " + ", ".join(failed) if failed else ", all passing")


# -- criterion 8 ----------------------------------------------------------------

def criterion_8():
    family = prime_order_family(24)
    orders = sorted({len(G.S) for _, G in family})
    bad = [str(W) for W, G in family if verify_mirror(W, G).verdict != "isomorphic"]
    return not bad and len(family) >= 20, "%d pairs with |S| in %s; not isomorphic: %s" % (
        len(family), orders, ", ".join(bad) or "none")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


def evaluate(fn):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    if dt >= LIMIT:
        ok, detail = False, detail + "; over the time limit"
    line = "criterion %s: %s (%.1fs) %s" % (fn.__name__.split("_")[1], "PASS" if ok else "FAIL",
                                           dt, detail)
    return ok, line


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn, capsys):
    ok, line = evaluate(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
