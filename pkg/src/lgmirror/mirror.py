"""Krawitz mirror map, the nonabelian dual, and the DSC / equivariant-Phi checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import LoopEvenAmbiguity, NoSolution, SearchLimitExceeded, SizeLimitExceeded
from .exact import fmt, mod1
from .groups import (DiagonalSymmetry, GroupElement, OrbifoldGroup, commutator_matrix,
                     dual_group)
from .orbits import FiberKey, GradedDimensions, OrbifoldModel, projected_dimensions
from .poly import InvertiblePolynomial, kreuzer_basis, reduce_W_sigma, restrict, transpose
from .sectors import SectorBasisElement, b_matrix

DEFAULT_PHI_CAP = math.factorial(8)


# -- the diagonal Krawitz map -------------------------------------------------

def krawitz_candidates(W: InvertiblePolynomial, alpha: DiagonalSymmetry, monomial) -> list:
    """All [m'; alpha'] over W^T matched with [m; alpha] over W.

    alpha' = sum_{i in F_alpha} (m_i + 1) rho'_i, where rho'_i (row i of A^{-1})
    generate the diagonal group of W^T, and m' runs over the Milnor basis of
    (W^T)_{alpha'} subject to sum_{j in F_alpha'} (m'_j + 1) rho_j = alpha.
    The equation splits over atoms; only even loops give two solutions.
    """
    N = W.n_vars
    inv = W.inverse_matrix
    F = [i for i in range(N) if alpha.num[i] == 0]
    ap = [Fraction(0)] * N
    for i in F:
        for j in range(N):
            ap[j] += (monomial[i] + 1) * inv[i][j]
    alpha2 = DiagonalSymmetry.from_fractions([mod1(x) for x in ap])
    WT = transpose(W)
    per_atom = []
    for atom in W.atoms:
        I = atom.indices
        Fp = sorted(j for j in I if alpha2.num[j] == 0)
        target = [alpha[i] for i in I]
        if not Fp:
            per_atom.append([()] if not any(target) else [])
            continue
        R = restrict(WT, Fp)
        found = []
        for m in kreuzer_basis(R):
            vals = [mod1(sum(((e + 1) * inv[i][j] for j, e in zip(Fp, m)), Fraction(0))) for i in I]
            if vals == target:
                found.append(tuple(zip(Fp, m)))
        per_atom.append(found)
    out = [()]
    for opts in per_atom:
        out = [a + b for a in out for b in opts]
    results = []
    for assignment in out:
        v = [0] * N
        for j, e in assignment:
            v[j] = e
        results.append((alpha2, tuple(v)))
    return sorted(results, key=lambda t: t[1])


def krawitz_pair(Wsigma: InvertiblePolynomial, c: SectorBasisElement) -> SectorBasisElement:
    """The Krawitz partner of c = [m; alpha] (alpha diagonal) over Wsigma^T."""
    if not c.sector.is_diagonal():
        raise ValueError("krawitz_pair expects a diagonal sector")
    cands = krawitz_candidates(Wsigma, c.sector.diag, c.monomial)
    if not cands:
        raise NoSolution("no Krawitz partner for %s" % c)
    mk = [SectorBasisElement(m, GroupElement.diagonal(a)) for a, m in cands]
    if len(mk) > 1:
        raise LoopEvenAmbiguity("%s has %d Krawitz partners" % (c, len(mk)), mk)
    return mk[0]


def nonabelian_dual(W: InvertiblePolynomial, G: OrbifoldGroup):
    """(W^T, S x| H^T)."""
    WT = transpose(W)
    return WT, OrbifoldGroup(WT, G.perm_generators, dual_group(W, G.H), G.cap)


# -- report ------------------------------------------------------------------

@dataclass
class MirrorReport:
    dual_pair: dict
    scope: str
    dsc: dict
    orbit_counts: list
    phi: dict
    tables: dict
    verdict: str
    first_difference: dict | None = None
    ambiguous_blocks: list = field(default_factory=list)
    local_tables: list = field(default_factory=list)
    theorem_consistent: bool | None = None

    def to_dict(self) -> dict:
        return {
            "dual_pair": self.dual_pair,
            "scope": self.scope,
            "dsc": self.dsc,
            "orbit_counts": self.orbit_counts,
            "phi": self.phi,
            "tables": self.tables,
            "verdict": self.verdict,
            "first_difference": self.first_difference,
            "ambiguous_blocks": self.ambiguous_blocks,
            "local_tables": self.local_tables,
            "theorem_consistent": self.theorem_consistent,
        }


# -- fiber blocks ---------------------------------------------------------------

@dataclass
class Side:
    """Data for one side of a block: fiber labels, H-orbits, the R-part."""
    fibers: list
    orbits: dict      # FiberKey -> list of HOrbit (all of B_c)
    r_orbits: list    # HOrbits in R over all fibers of the block
    e_witness: dict   # FiberKey -> (orbit, h, scalar) for some E element

    def count(self):
        return len(self.r_orbits)


@dataclass
class Block:
    a: Side
    b: Side

    @property
    def key(self):
        return min(self.a.fibers)

    @property
    def ambiguous(self):
        return len(self.a.fibers) > 1 or len(self.b.fibers) > 1


class MirrorAnalysis:
    """Shared state for the mirror checks of (W, G) against (W^T, G^vee)."""

    def __init__(self, W: InvertiblePolynomial, G: OrbifoldGroup):
        self.W = W
        self.G = G
        self.WT, self.GT = nonabelian_dual(W, G)
        self.MA = OrbifoldModel(W, G)
        self.MB = OrbifoldModel(self.WT, self.GT)
        self.S = list(G.S)

    # Krawitz on fiber labels
    def partners(self, c: FiberKey, side: str) -> list:
        Wbase = self.W if side == "A" else self.WT
        Ws = reduce_W_sigma(Wbase, c.sigma)
        return [FiberKey(c.sigma, a, m) for a, m in krawitz_candidates(Ws, c.alpha, c.monomial)]

    def model(self, side):
        return self.MA if side == "A" else self.MB

    def fiber_data(self, c: FiberKey, side: str):
        M = self.model(side)
        orbits = M.fiber_orbits(c)
        r, ew = [], None
        for o in orbits:
            w = M.scaling_witness(o)
            if w is None:
                r.append(o)
            elif ew is None:
                ew = (o, w[0], w[1])
        return orbits, r, ew

    def component(self, seed: FiberKey, side: str):
        """The block containing a fiber label: closure under the Krawitz relation."""
        todo = [(side, seed)]
        seen = {(side, seed)}
        while todo:
            s, c = todo.pop()
            other = "B" if s == "A" else "A"
            for p in self.partners(c, s):
                if (other, p) not in seen:
                    seen.add((other, p))
                    todo.append((other, p))
        A = sorted(c for s, c in seen if s == "A")
        B = sorted(c for s, c in seen if s == "B")
        return A, B

    def make_block(self, A, B) -> Block:
        sides = []
        for side, labels in (("A", A), ("B", B)):
            orbits, r, ew = {}, [], {}
            for c in labels:
                o, rr, w = self.fiber_data(c, side)
                orbits[c] = o
                r.extend(rr)
                if w is not None:
                    ew[c] = w
            sides.append(Side(list(labels), orbits, sorted(r), ew))
        return Block(*sides)

    def all_blocks(self, cap=None) -> list:
        cap = self.G.cap if cap is None else cap
        for M in (self.MA, self.MB):
            est = M.estimated_orbits()
            if est > cap:
                raise SizeLimitExceeded("about %d H-orbits exceeds the cap %d" % (est, cap))
        done = set()
        blocks = []
        for side, M in (("A", self.MA), ("B", self.MB)):
            for s in M.G.S:
                for c, _ in M.fibers(s):
                    if (side, c) in done:
                        continue
                    A, B = self.component(c, side)
                    done.update(("A", x) for x in A)
                    done.update(("B", x) for x in B)
                    blocks.append(self.make_block(A, B))
        return sorted(blocks, key=lambda b: b.key)

    def blocks_for(self, seeds) -> list:
        """Blocks in the S-orbits of the blocks of the given A-side labels."""
        out = {}
        for seed in seeds:
            for pi in self.S:
                c = seed.star(pi)
                if any(c in b.a.fibers for b in out.values()):
                    continue
                A, B = self.component(c, "A")
                out[A[0]] = self.make_block(A, B)
        return sorted(out.values(), key=lambda b: b.key)


# -- individual checks ------------------------------------------------------------

def _dsc_side(an: MirrorAnalysis, block: Block, side: str) -> list:
    M = an.model(side)
    S_ = block.a if side == "A" else block.b
    other = block.b if side == "A" else block.a
    fails = []
    for c, (orbit, h, scalar) in sorted(S_.e_witness.items()):
        diag = M.diagonal_scaler(c)
        if diag is None:
            fails.append({
                "side": side,
                "fiber": c.to_dict(),
                "element": orbit.representative().to_dict(),
                "scaler": h.to_dict(),
                "scalar": fmt(scalar),
                "partner_nonempty": any(other.orbits.get(p) for p in other.fibers),
            })
    return fails


def dsc_from_blocks(an: MirrorAnalysis, blocks) -> dict:
    fails = []
    for bl in blocks:
        fails += _dsc_side(an, bl, "A") + _dsc_side(an, bl, "B")
    return {"passed": not fails, "witnesses": fails}


def orbit_counts_from_blocks(blocks) -> list:
    out = []
    for bl in blocks:
        if not bl.a.r_orbits and not bl.b.r_orbits:
            continue
        out.append({
            "fibers_A": [c.to_dict() for c in bl.a.fibers],
            "fibers_B": [c.to_dict() for c in bl.b.fibers],
            "count_A": bl.a.count(),
            "count_B": bl.b.count(),
            "match": bl.a.count() == bl.b.count(),
        })
    return out


def _subgroup_class(K: frozenset, group: list) -> tuple:
    """Canonical label of the conjugacy class of K inside ``group``."""
    best = None
    for t in group:
        ti = t.inverse()
        conj = tuple(sorted((ti * k * t).images for k in K))
        if best is None or conj < best:
            best = conj
    return best


def _permutation_action(points, stab_group, act):
    """Orbits of ``stab_group`` on ``points`` with the point stabilizers."""
    pset = set(points)
    seen = set()
    orbits = []
    for x in sorted(points):
        if x in seen:
            continue
        orb = {x}
        stab = []
        for s in stab_group:
            y = act(x, s)
            if y not in pset:
                raise AssertionError("action leaves the point set")
            orb.add(y)
            if y == x:
                stab.append(s)
        seen |= orb
        orbits.append((x, sorted(orb), frozenset(stab)))
    return orbits


def _stabilizer(an: MirrorAnalysis, block: Block) -> list:
    A = set(block.a.fibers)
    return [pi for pi in an.S if {c.star(pi) for c in A} == A]


def match_structural(xs, ys, stab, act_a, act_b):
    """An S_c-equivariant bijection by matching stabilizer classes, or None.

    Two finite S_c-sets are isomorphic iff they have the same multiset of
    conjugacy classes of point stabilizers; the map x0 * s -> y0 * s is
    well defined once Stab(x0) = Stab(y0).
    """
    oa = _permutation_action(xs, stab, act_a)
    ob = _permutation_action(ys, stab, act_b)
    ca = sorted(_subgroup_class(k, stab) for _, _, k in oa)
    cb = sorted(_subgroup_class(k, stab) for _, _, k in ob)
    if ca != cb:
        return None, oa, ob
    used = [False] * len(ob)
    phi = {}
    for x0, _, K in oa:
        cls = _subgroup_class(K, stab)
        for idx, (y0, orb, K2) in enumerate(ob):
            if used[idx] or _subgroup_class(K2, stab) != cls:
                continue
            y1 = next(y for y in orb
                      if frozenset(s for s in stab if act_b(y, s) == y) == K)
            for s in stab:
                phi[act_a(x0, s)] = act_b(y1, s)
            used[idx] = True
            break
    return phi, oa, ob


def match_exhaustive(xs, ys, stab, act_a, act_b, cap=DEFAULT_PHI_CAP):
    """First equivariant bijection in lexicographic search order, or None."""
    if len(xs) != len(ys):
        return None
    if math.factorial(len(xs)) > cap:
        raise SearchLimitExceeded("%d! bijections exceed the search cap %d" % (len(xs), cap))
    xs = sorted(xs)
    ys = sorted(ys)
    gens = [s for s in stab if not s.is_identity()]
    ta = {(x, i): act_a(x, s) for x in xs for i, s in enumerate(gens)}
    tb = {(y, i): act_b(y, s) for y in ys for i, s in enumerate(gens)}
    phi = {}
    used = set()

    def consistent(x):
        y = phi[x]
        for i in range(len(gens)):
            x2 = ta[(x, i)]
            if x2 in phi and phi[x2] != tb[(y, i)]:
                return False
            for x3 in phi:
                if ta[(x3, i)] == x and tb[(phi[x3], i)] != y:
                    return False
        return True

    def rec(k):
        if k == len(xs):
            return True
        x = xs[k]
        for y in ys:
            if y in used:
                continue
            phi[x] = y
            used.add(y)
            if consistent(x) and rec(k + 1):
                return True
            del phi[x]
            used.discard(y)
        return False

    return dict(phi) if rec(0) else None


def _describe_action(oa) -> list:
    return [{"representative": str(x), "orbit_size": len(orb),
             "stabilizer": sorted(str(s) for s in K)} for x, orb, K in oa]


def phi_from_blocks(an: MirrorAnalysis, blocks, cap: int = DEFAULT_PHI_CAP,
                    method: str = "auto") -> dict:
    """Search for an S-equivariant Phi, one S-orbit of blocks at a time."""
    index = {}
    for i, bl in enumerate(blocks):
        for c in bl.a.fibers:
            index[c] = i
    done = set()
    matched = 0
    witnesses = []
    local = []
    for i, bl in enumerate(blocks):
        if i in done:
            continue
        orbit_ids = {index.get(bl.a.fibers[0].star(pi), None) for pi in an.S}
        done |= {j for j in orbit_ids if j is not None}
        if not bl.a.r_orbits and not bl.b.r_orbits:
            continue
        stab = _stabilizer(an, bl)
        act_a = lambda o, s: an.MA.star_orbit(o, s)
        act_b = lambda o, s: an.MB.star_orbit(o, s)
        xs, ys = bl.a.r_orbits, bl.b.r_orbits
        oa = _permutation_action(xs, stab, act_a)
        ob = _permutation_action(ys, stab, act_b)
        local.append(_local_table(an, bl, oa, ob))
        phi = None
        if len(xs) == len(ys):
            use_exh = method == "exhaustive" or (
                method == "auto" and math.factorial(len(xs)) <= cap)
            if use_exh:
                phi = match_exhaustive(xs, ys, stab, act_a, act_b, cap)
            else:
                phi = match_structural(xs, ys, stab, act_a, act_b)[0]
        if phi is None:
            all_a = [o for c in bl.a.fibers for o in bl.a.orbits[c]]
            all_b = [o for c in bl.b.fibers for o in bl.b.orbits[c]]
            witnesses.append({
                "block": [c.to_dict() for c in bl.a.fibers],
                "partner": [c.to_dict() for c in bl.b.fibers],
                "reason": ("no equivariant bijection" if len(xs) == len(ys)
                           else "orbit counts in R differ"),
                "count_A": len(xs),
                "count_B": len(ys),
                "stabilizer_of_fiber": sorted(str(s) for s in stab),
                "action_A": _describe_action(oa),
                "action_B": _describe_action(ob),
                "fiber_action_A": _describe_action(_permutation_action(all_a, stab, act_a)),
                "fiber_action_B": _describe_action(_permutation_action(all_b, stab, act_b)),
            })
        else:
            matched += len(phi)
    return {"passed": not witnesses, "matched_orbits": matched, "witnesses": witnesses,
            "local": local}


def _local_table(an, bl, oa, ob) -> dict:
    ta, tb = GradedDimensions(), GradedDimensions()
    for x, _, _ in oa:
        bd = an.MA.orbit_bidegree(x, "A")
        ta[bd] = ta.get(bd, 0) + 1
    for y, _, _ in ob:
        bd = an.MB.orbit_bidegree(y, "B")
        tb[bd] = tb.get(bd, 0) + 1
    return {"block": [c.to_dict() for c in bl.a.fibers], "A": ta.to_list(), "B": tb.to_list()}


# -- public entry points -------------------------------------------------------------

def _analysis(W, G, fibers):
    an = MirrorAnalysis(W, G)
    blocks = an.blocks_for(fibers) if fibers is not None else an.all_blocks()
    return an, blocks


def dsc_check(W: InvertiblePolynomial, G: OrbifoldGroup, fibers=None) -> dict:
    an, blocks = _analysis(W, G, fibers)
    return dsc_from_blocks(an, blocks)


def orbit_count_check(W: InvertiblePolynomial, G: OrbifoldGroup, fibers=None) -> list:
    an, blocks = _analysis(W, G, fibers)
    return orbit_counts_from_blocks(blocks)


def equivariant_phi(W: InvertiblePolynomial, G: OrbifoldGroup, fibers=None,
                    cap: int = DEFAULT_PHI_CAP, method: str = "auto") -> dict:
    an, blocks = _analysis(W, G, fibers)
    return phi_from_blocks(an, blocks, cap, method)


def _cyclic_prime_order(S: list):
    n = len(S)
    if n < 3 or n % 2 == 0 or any(n % p == 0 for p in range(3, int(n ** 0.5) + 1, 2)):
        return False
    return True  # a group of prime order is cyclic


def trivial_fiber_action_hypothesis(G: OrbifoldGroup) -> dict:
    """[H,tau] cap ker beta_sigma <= [H,sigma] for all commuting sigma, tau in S."""
    H = G.H
    for sigma in G.S:
        J = H.image(commutator_matrix(sigma))
        K = H.kernel(b_matrix(sigma))
        for tau in G.S:
            if tau * sigma != sigma * tau:
                continue
            Jt = H.image(commutator_matrix(tau))
            inter = Jt.intersect(K)
            for mu in inter.generators():
                if mu not in J:
                    return {"holds": False, "sigma": str(sigma), "tau": str(tau),
                            "witness": mu.to_strings()}
    return {"holds": True}


def prime_order_shortcut(W: InvertiblePolynomial, G: OrbifoldGroup) -> dict:
    return {"applicable": _cyclic_prime_order(G.S), "order_S": len(G.S),
            "trivial_fiber_action": trivial_fiber_action_hypothesis(G)}


def verify_mirror(W: InvertiblePolynomial, G: OrbifoldGroup, fibers=None,
                  cap_phi: int = DEFAULT_PHI_CAP, phi_method: str = "auto") -> MirrorReport:
    """Run every check and compare the A-model of (W, G) with the B-model of the dual.

    With ``fibers`` (A-side labels) the checks are restricted to the S-orbits
    of those fibers; the full tables are still attempted and the verdict is
    "undetermined" when they exceed the group-size cap.
    """
    an, blocks = _analysis(W, G, fibers)
    dsc = dsc_from_blocks(an, blocks)
    counts = orbit_counts_from_blocks(blocks)
    phi = phi_from_blocks(an, blocks, cap_phi, phi_method)
    local = phi.pop("local")
    try:
        ta = projected_dimensions(W, G, "A")
        tb = projected_dimensions(an.WT, an.GT, "B")
    except SizeLimitExceeded:
        ta = tb = None
    first = None
    if ta is None:
        verdict = "undetermined"
    elif ta.as_pairs() == tb.as_pairs():
        verdict = "isomorphic"
    else:
        verdict = "mismatch"
        for bd in sorted(ta.support() | tb.support()):
            if ta.get(bd, 0) != tb.get(bd, 0):
                first = {"bidegree": bd.to_list(), "dim_A": ta.get(bd, 0), "dim_B": tb.get(bd, 0)}
                break
    consistent = None
    if fibers is None and ta is not None:
        consistent = (not (dsc["passed"] and phi["passed"])) or verdict == "isomorphic"
    return MirrorReport(
        dual_pair={"polynomial": str(an.WT), "group": an.GT.describe()},
        scope="all fibers" if fibers is None else "fibers",
        dsc=dsc,
        orbit_counts=counts,
        phi=phi,
        tables={"A": ta.to_list() if ta is not None else None,
                "B": tb.to_list() if tb is not None else None},
        verdict=verdict,
        first_difference=first,
        ambiguous_blocks=[[c.to_dict() for c in bl.a.fibers] + [c.to_dict() for c in bl.b.fibers]
                          for bl in blocks if bl.ambiguous],
        local_tables=local,
        theorem_consistent=consistent,
    )
