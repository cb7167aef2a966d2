"""The dot and star actions, fibers over W^sigma, and projected dimensions.

Basis elements of the unprojected state space are grouped by fibers
c = [m; alpha] over W^sigma: B_c = {[m; sigma lambda] : beta_sigma(lambda) = alpha}.
H acts on B_c by conjugating sectors, and its orbits are the cosets of
[H, sigma] inside beta_sigma^{-1}(alpha).  Everything below works with
those cosets directly, so large diagonal groups are never enumerated.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import NotInGroup, SizeLimitExceeded
from .exact import fmt, mod1
from .groups import (DiagonalSymmetry, GroupElement, OrbifoldGroup, Permutation, commutator_matrix)
from .poly import InvertiblePolynomial, milnor_number, reduce_W_sigma
from .sectors import (Bidegree, SectorBasisElement, age_j, apply_to_vector, b_matrix, beta,
                      bidegree, f_vector, fiber_monomials, sector_basis, special_cycles)


# -- actions on single basis elements ----------------------------------------

def _inversions_odd(seq) -> bool:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return inv % 2 == 1


def dot_action(b: SectorBasisElement, h: GroupElement, G=None):
    """b.h = exp(2 pi i scalar) * b', with b' = b * h in sector h^{-1} g h.

    For each special cycle m of g' = h^{-1} g h, h maps f_{m,g'} to
    c_m f_{n,g}, and then z_{n,g}.h = c_m z_{m,g'}.  The monomial and the
    volume form pick up these scalars; reordering the volume form costs a
    sign (1/2 in Q/Z) when the induced cycle map is odd.
    """
    if G is not None and h not in G:
        raise NotInGroup("%s is not in the group" % h)
    g = b.sector
    g2 = g.conjugate(h)
    r = g.perm.cycle_index()
    cyc = g.perm.cycles()
    F2 = special_cycles(g2)
    mono = [0] * len(g2.perm.cycles())
    scalar = Fraction(0)
    targets = []
    for m in F2:
        v = apply_to_vector(h, f_vector(g2, m))
        n = r[next(iter(v))]
        c = v[cyc[n][0]]
        a = b.monomial[n]
        mono[m] = a
        scalar += (a + 1) * c
        targets.append(n)
    if _inversions_odd(targets):
        scalar += Fraction(1, 2)
    return mod1(scalar), SectorBasisElement(tuple(mono), g2)


def star_action(b: SectorBasisElement, h: GroupElement, G=None) -> SectorBasisElement:
    return dot_action(b, h, G)[1]


def dot_action_closed_form(b: SectorBasisElement, h: GroupElement):
    """The same action from the explicit coefficient of z_{n, sigma lambda}.

    Writing h = (pi mu)^{-1} and sigma_bar = pi sigma pi^{-1}, choose l with
    pi(s(n)) = sigma_bar^l(s_bar(P(n))).  Then z_n picks up
    -mu_{sigma^{-l}(s(n))} + sum_{i=1..l} lambda_{sigma^{-i}(s(n))} and moves
    to index P(n) of the conjugate sector.
    """
    g = b.sector
    sigma, lam = g.perm, g.diag
    pm = h.inverse()
    pi, mu = pm.perm, pm.diag
    g2 = pm * g * h
    sbar = g2.perm
    rbar = sbar.cycle_index()
    cyc_bar = sbar.cycles()
    sinv = sigma.inverse()
    mono = [0] * len(cyc_bar)
    scalar = Fraction(0)
    targets = []
    for n in special_cycles(g):
        s = sigma.cycles()[n][0]
        P = rbar[pi.images[s]]
        start = cyc_bar[P][0]
        ell = 0
        j = start
        while j != pi.images[s]:
            j = sbar.images[j]
            ell += 1
        idx = s
        for _ in range(ell):
            idx = sinv.images[idx]
        coef = -mu[idx]
        idx = s
        for _ in range(ell):
            idx = sinv.images[idx]
            coef += lam[idx]
        a = b.monomial[n]
        mono[P] = a
        scalar += (a + 1) * coef
        targets.append(P)
    if _inversions_odd(targets):
        scalar += Fraction(1, 2)
    return mod1(scalar), SectorBasisElement(tuple(mono), g2)


def cycle_map(sigma: Permutation, pi: Permutation):
    """For sigma' = pi^{-1} sigma pi, Q[k'] = cycle of sigma containing pi(s'(k'))."""
    sp = pi.inverse() * sigma * pi
    r = sigma.cycle_index()
    return sp, [r[pi.images[c[0]]] for c in sp.cycles()]


# -- fibers ------------------------------------------------------------------

@dataclass(frozen=True)
class FiberKey:
    """c = [m; alpha] over W^sigma, an element of C_sigma."""
    sigma: Permutation
    alpha: DiagonalSymmetry
    monomial: tuple

    def star(self, pi: Permutation) -> "FiberKey":
        sp, Q = cycle_map(self.sigma, pi)
        return FiberKey(sp, DiagonalSymmetry([self.alpha.num[q] for q in Q], self.alpha.den),
                        tuple(self.monomial[q] for q in Q))

    def sort_key(self):
        return (self.sigma.images, self.alpha.entries, self.monomial)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def to_dict(self):
        return {"sigma": str(self.sigma), "monomial": list(self.monomial),
                "alpha": self.alpha.to_strings()}

    def __str__(self):
        parts = []
        for k, e in enumerate(self.monomial):
            if e == 1:
                parts.append("z%d" % (k + 1))
            elif e:
                parts.append("z%d^%d" % (k + 1, e))
        return "[%s; %s] over %s" % ("*".join(parts) or "1", self.alpha, self.sigma)


@dataclass
class SigmaData:
    sigma: Permutation
    Ws: InvertiblePolynomial
    B: list
    K: object        # H cap ker beta_sigma
    J: object        # [H, sigma]
    CH: object       # C_H(sigma)
    CS: list         # C_S(sigma) minus the identity
    lambda_reps: list  # representatives of H / K

    @property
    def orbits_per_fiber(self) -> int:
        return self.K.order // self.J.order


@dataclass(frozen=True)
class HOrbit:
    """The H-star orbit of [m; sigma lambda], keyed by the coset lambda + [H, sigma]."""
    sigma: Permutation
    coset: DiagonalSymmetry
    monomial: tuple

    def representative(self) -> SectorBasisElement:
        return SectorBasisElement(self.monomial, GroupElement(self.sigma, self.coset))

    def sort_key(self):
        return (self.sigma.images, self.coset.entries, self.monomial)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return str(self.representative())


class OrbifoldModel:
    """Fiber-level structure of the unprojected state space of (W, G = S x| H)."""

    def __init__(self, W: InvertiblePolynomial, G: OrbifoldGroup):
        self.W = W
        self.G = G
        self.H = G.H
        self._sigma = {}
        self._e_cache = {}

    @cached_property
    def agej(self):
        return age_j(self.W)

    def sigma_data(self, sigma: Permutation) -> SigmaData:
        sd = self._sigma.get(sigma)
        if sd is None:
            H = self.H
            B = b_matrix(sigma)
            K = H.kernel(B)
            C = commutator_matrix(sigma)
            J = H.image(C)
            CH = H.kernel(C)
            CS = [p for p in self.G.S if not p.is_identity() and p * sigma == sigma * p]
            sd = SigmaData(sigma, reduce_W_sigma(self.W, sigma), B, K, J, CH, CS,
                           H.coset_representatives(K))
            self._sigma[sigma] = sd
        return sd

    # fibers and orbits
    def fibers(self, sigma: Permutation):
        """All c in C_sigma with B_c nonempty, each with one lambda in beta^{-1}(alpha)."""
        sd = self.sigma_data(sigma)
        out = []
        for lam0 in sd.lambda_reps:
            alpha = beta(sigma, lam0)
            for m in fiber_monomials(sd.Ws, alpha):
                out.append((FiberKey(sigma, alpha, m), lam0))
        return out

    def base_point(self, c: FiberKey):
        """Some lambda in H with beta_sigma(lambda) = alpha, or None when B_c is empty."""
        sd = self.sigma_data(c.sigma)
        return self.H.preimage_element(sd.B, c.alpha)

    def fiber_orbits(self, c: FiberKey, lam0=None) -> list:
        """The H-star orbits in B_c."""
        sd = self.sigma_data(c.sigma)
        if lam0 is None:
            lam0 = self.base_point(c)
            if lam0 is None:
                return []
        out = []
        for kappa in sd.K.coset_representatives(sd.J):
            out.append(self.orbit_of(c.sigma, lam0 + kappa, c.monomial))
        return sorted(out)

    def orbit_of(self, sigma, lam, monomial) -> HOrbit:
        sd = self.sigma_data(sigma)
        return HOrbit(sigma, sd.J.reduce(lam), tuple(monomial))

    def orbit_of_element(self, b: SectorBasisElement) -> HOrbit:
        return self.orbit_of(b.sector.perm, b.sector.diag, b.monomial)

    def fiber_of(self, o: HOrbit) -> FiberKey:
        return FiberKey(o.sigma, beta(o.sigma, o.coset), o.monomial)

    def star_orbit(self, o: HOrbit, pi: Permutation) -> HOrbit:
        b2 = star_action(o.representative(), GroupElement.permutation(pi))
        return self.orbit_of_element(b2)

    # E / R
    def scaling_witness(self, o: HOrbit):
        """None if the orbit lies in R; otherwise (h, scalar) with b * h = b, scalar != 0."""
        if o in self._e_cache:
            return self._e_cache[o]
        sd = self.sigma_data(o.sigma)
        b = o.representative()
        F = special_cycles(b.sector)
        cyc = o.sigma.cycles()
        out = None
        for mu in sd.CH.generators():
            s = mod1(sum(((o.monomial[k] + 1) * mu[cyc[k][0]] for k in F), Fraction(0)))
            if s:
                out = (GroupElement.diagonal(mu), s)
                break
        if out is None:
            lam = o.coset
            C = commutator_matrix(o.sigma)
            for pi in sd.CS:
                delta = lam - lam.permute(pi)
                mu = self.H.preimage_element(C, delta)
                if mu is None:
                    continue
                h = GroupElement(pi, mu)
                s, b2 = dot_action(b, h)
                assert b2.sector == b.sector
                if b2.monomial == b.monomial and s:
                    out = (h, s)
                    break
        self._e_cache[o] = out
        return out

    def in_R(self, o: HOrbit) -> bool:
        return self.scaling_witness(o) is None

    def diagonal_scaler(self, c: FiberKey):
        """Some mu in C_H(sigma) scaling the elements of B_c, or None."""
        sd = self.sigma_data(c.sigma)
        F = [k for k, a in enumerate(c.alpha.num) if a == 0]
        cyc = c.sigma.cycles()
        for mu in sd.CH.generators():
            s = mod1(sum(((c.monomial[k] + 1) * mu[cyc[k][0]] for k in F), Fraction(0)))
            if s:
                return mu, s
        return None

    def orbit_bidegree(self, o: HOrbit, model: str) -> Bidegree:
        return bidegree(self.W, o.representative(), model)

    # whole space
    def estimated_orbits(self) -> int:
        total = 0
        for s in self.G.S:
            sd = self.sigma_data(s)
            total += (self.H.order // sd.J.order) * milnor_number(sd.Ws)
        return total

    def all_orbits(self, cap: int | None = None) -> list:
        cap = self.G.cap if cap is None else cap
        if self.estimated_orbits() > cap:
            raise SizeLimitExceeded("about %d H-orbits exceeds the cap %d"
                                    % (self.estimated_orbits(), cap))
        out = []
        for s in self.G.S:
            for c, lam0 in self.fibers(s):
                out.extend(self.fiber_orbits(c, lam0))
        return out

    def g_orbits(self, orbits=None) -> list:
        """Partition H-orbits into G-orbits (S acts on H-orbits)."""
        orbits = self.all_orbits() if orbits is None else orbits
        parent = {o: o for o in orbits}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for o in orbits:
            for pi in self.G.perm_generators:
                o2 = self.star_orbit(o, pi)
                a, b = find(o), find(o2)
                if a != b:
                    if b < a:
                        a, b = b, a
                    parent[b] = a
        groups = defaultdict(list)
        for o in orbits:
            groups[find(o)].append(o)
        return [sorted(v) for _, v in sorted(groups.items())]


# -- graded dimensions ---------------------------------------------------------

class GradedDimensions(dict):
    """Bidegree -> dimension, serialized sorted by (left, right)."""

    def to_list(self):
        return [{"bidegree": bd.to_list(), "dim": d} for bd, d in sorted(self.items()) if d]

    @classmethod
    def from_list(cls, items):
        out = cls()
        for it in items:
            left, right = (Fraction(x) for x in it["bidegree"])
            out[Bidegree(left, right)] = int(it["dim"])
        return out

    def total(self) -> int:
        return sum(self.values())

    def support(self) -> set:
        return {bd for bd, d in self.items() if d}

    def as_pairs(self) -> dict:
        return {(bd.left, bd.right): d for bd, d in self.items() if d}

    def format_table(self) -> str:
        lines = ["bidegree            dim"]
        for bd, d in sorted(self.items()):
            if d:
                lines.append("%-20s%d" % ("(%s, %s)" % (fmt(bd.left), fmt(bd.right)), d))
        return "\n".join(lines)


def projected_dimensions(W: InvertiblePolynomial, G: OrbifoldGroup, model: str = "A",
                         method: str = "orbits") -> GradedDimensions:
    """Dimensions of the G-invariant state space by bidegree.

    ``orbits`` counts G-star orbits inside R; ``centralizer`` sums, over
    conjugacy class representatives g, the C_G(g)-invariants of sector g.
    """
    if method == "centralizer":
        return centralizer_dimensions(W, G, model)
    model_obj = OrbifoldModel(W, G)
    out = GradedDimensions()
    for orbit in model_obj.g_orbits():
        rep = orbit[0]
        if model_obj.in_R(rep):
            bd = model_obj.orbit_bidegree(rep, model)
            out[bd] = out.get(bd, 0) + 1
    return out


def centralizer_dimensions(W: InvertiblePolynomial, G: OrbifoldGroup, model: str = "A"):
    elems = sorted(G.elements())
    gens = G.generators()
    seen = set()
    out = GradedDimensions()
    for g in elems:
        if g in seen:
            continue
        cls = {g}
        stack = [g]
        while stack:
            x = stack.pop()
            for h in gens:
                y = x.conjugate(h)
                if y not in cls:
                    cls.add(y)
                    stack.append(y)
        seen |= cls
        cent = [h for h in elems if h * g == g * h]
        basis = sector_basis(W, g)
        remaining = set(basis)
        for b in basis:
            if b not in remaining:
                continue
            orbit = {b}
            trivial = True
            for h in cent:
                s, b2 = dot_action(b, h)
                orbit.add(b2)
                if b2 == b and s:
                    trivial = False
            remaining -= orbit
            if trivial:
                bd = bidegree(W, b, model)
                out[bd] = out.get(bd, 0) + 1
    return out


# -- explicit bases (small groups) -------------------------------------------

@dataclass
class UnprojectedBasis:
    by_sigma: dict = field(default_factory=dict)  # sigma -> list of (FiberKey, [members])

    def members(self):
        for fibers in self.by_sigma.values():
            for _, mem in fibers:
                yield from mem

    def __len__(self):
        return sum(len(m) for fibers in self.by_sigma.values() for _, m in fibers)


def build_unprojected_basis(W: InvertiblePolynomial, G: OrbifoldGroup) -> UnprojectedBasis:
    if G.order > G.cap:
        raise SizeLimitExceeded("|G| = %d exceeds the cap %d" % (G.order, G.cap))
    model = OrbifoldModel(W, G)
    out = UnprojectedBasis()
    for s in G.S:
        sd = model.sigma_data(s)
        kernel = list(sd.K.elements())
        fibers = []
        for c, lam0 in model.fibers(s):
            mem = [SectorBasisElement(c.monomial, GroupElement(s, lam0 + k)) for k in kernel]
            fibers.append((c, sorted(mem)))
        out.by_sigma[s] = fibers
    return out


def split_E_R(basis: UnprojectedBasis, W: InvertiblePolynomial, G: OrbifoldGroup,
              exhaustive: bool = False):
    """E: elements fixed by some h under star with a nonzero scalar; R: the rest."""
    E, R = set(), set()
    if exhaustive:
        elems = list(G.elements())
        for b in basis.members():
            if any(b2 == b and s for s, b2 in (dot_action(b, h) for h in elems)):
                E.add(b)
            else:
                R.add(b)
        return E, R
    model = OrbifoldModel(W, G)
    for b in basis.members():
        (R if model.in_R(model.orbit_of_element(b)) else E).add(b)
    return E, R


def orbit_set(elements, actors):
    """Orbits of a finite set under the star action of the given group elements."""
    elements = list(elements)
    index = {b: i for i, b in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in elements:
        for h in actors:
            b2 = star_action(b, h)
            a, c = find(index[b]), find(index[b2])
            if a != c:
                parent[max(a, c)] = min(a, c)
    groups = defaultdict(list)
    for b in elements:
        groups[find(index[b])].append(b)
    return [sorted(v) for _, v in sorted(groups.items())]
