"""Random invertible polynomials and orbifold groups for the property suites."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from lgmirror.groups import (DiagonalGroup, DiagonalSymmetry, OrbifoldGroup,
                             close_permutations, diag_generators, enumerate_sigma, gdiag, jw)
from lgmirror.poly import InvertiblePolynomial


def atom_rows(kind, exps, offset, N):
    """Exponent rows of one atom placed on variables offset..offset+len(exps)-1."""
    k = len(exps)
    rows = []
    for i, a in enumerate(exps):
        row = [0] * N
        row[offset + i] = a
        if kind == "chain" and i < k - 1:
            row[offset + i + 1] = 1
        if kind == "loop":
            row[offset + (i + 1) % k] = 1
        rows.append(row)
    return rows


def build(atoms) -> InvertiblePolynomial:
    N = sum(len(e) for _, e in atoms)
    rows, off = [], 0
    for kind, exps in atoms:
        rows += atom_rows(kind, exps, off, N)
        off += len(exps)
    return InvertiblePolynomial.from_matrix(rows)


@st.composite
def atom_lists(draw, max_n=8, max_exp=5):
    """Atoms with N <= max_n; one atom is often repeated so that W has permutation symmetries."""
    atoms, n = [], 0
    while n < max_n:
        room = max_n - n
        kind = draw(st.sampled_from(["fermat", "chain", "loop"] if room >= 2 else ["fermat"]))
        size = 1 if kind == "fermat" else draw(st.integers(2, min(3, room)))
        exps = tuple(draw(st.lists(st.integers(2, max_exp), min_size=size, max_size=size)))
        if kind == "loop" and draw(st.booleans()):
            exps = (exps[0],) * size
        copies = draw(st.integers(1, max(1, room // size)))
        copies = min(copies, 3)
        atoms += [(kind, exps)] * copies
        n += size * copies
        if not draw(st.booleans()):
            break
    return atoms


def polynomials(max_n=8, max_exp=5):
    return atom_lists(max_n, max_exp).map(build)


@st.composite
def orbifolds(draw, max_n=4, max_exp=3, max_gdiag=400):
    """(W, G) with S generated by one or two symmetries and H normalized by S."""
    W = draw(polynomials(max_n, max_exp).filter(lambda W: gdiag(W).order <= max_gdiag))
    perms = enumerate_sigma(W)
    gens = draw(st.lists(st.sampled_from(perms), max_size=2))
    S = close_permutations(gens, W.n_vars)
    D = gdiag(W)
    elems = list(D.elements())
    picks = draw(st.lists(st.sampled_from(elems), max_size=2))
    if draw(st.booleans()):
        picks.append(jw(W))
    H = DiagonalGroup.generated_by([lam.permute(s) for lam in picks for s in S], W.n_vars)
    return W, OrbifoldGroup(W, gens, H)


def prime_order_family(count=24, seed=2024):
    """Pairs (W, G) with S cyclic of order 3, 5 or 7 normalizing H."""
    rng = random.Random(seed)
    shapes = [
        (3, lambda: [("fermat", (rng.choice([2, 3, 4]),))] * 3 + rng.choice([[], [("fermat", (2,))]])),
        (3, lambda: [("loop", (rng.choice([2, 3]),) * 3)]),
        (3, lambda: [("chain", (2, 2))] * 3),
        (3, lambda: [("loop", (2, 2))] * 3),
        (5, lambda: [("fermat", (rng.choice([2, 3]),))] * 5),
        (5, lambda: [("loop", (2,) * 5)]),
        (7, lambda: [("fermat", (2,))] * 7),
        (7, lambda: [("loop", (2,) * 7)]),
    ]
    out = []
    i = 0
    while len(out) < count:
        p, make = shapes[i % len(shapes)]
        i += 1
        W = build(make())
        sigma = _cyclic_symmetry(W, p)
        S = close_permutations([sigma], W.n_vars)
        D = list(gdiag(W).elements())
        picks = [rng.choice(D) for _ in range(rng.randint(0, 2))]
        if rng.random() < 0.5:
            picks.append(jw(W))
        H = DiagonalGroup.generated_by([lam.permute(s) for lam in picks for s in S], W.n_vars)
        out.append((W, OrbifoldGroup(W, [sigma], H)))
    return out


def _cyclic_symmetry(W, p):
    """A symmetry of order p moving every variable of the first p-fold block."""
    for s in enumerate_sigma(W):
        if s.order() == p and sum(1 for i in range(W.n_vars) if s.images[i] != i) >= p:
            return s
    raise ValueError("no symmetry of order %d" % p)


def random_element(draw, W):
    """A uniformly drawn integer combination of the standard generators of G^diag."""
    out = DiagonalSymmetry.zero(W.n_vars)
    for g in diag_generators(W):
        out = out + g * draw(st.integers(0, g.den - 1))
    return out


@st.composite
def with_subgroup(draw, max_n=8, max_exp=5):
    """(W, H) with H generated by up to three random diagonal symmetries."""
    W = draw(polynomials(max_n, max_exp))
    gens = [random_element(draw, W) for _ in range(draw(st.integers(0, 3)))]
    return W, DiagonalGroup.generated_by(gens, W.n_vars)
