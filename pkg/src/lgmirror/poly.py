"""Invertible polynomials: parsing, atoms, weights, transposes, Milnor bases."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import DegenerateWeights, NotASymmetry, NotInvertible, ParseError
from .exact import determinant, mat_inverse, mat_vec, transpose as mat_transpose

Monomial = tuple  # exponent vector of nonnegative ints


@dataclass(frozen=True)
class Atom:
    """One summand of the atomic decomposition.

    ``indices`` are 0-based.  A chain is listed from its head (the variable
    no other monomial points to) down to its Fermat-like tail; a loop starts
    at its smallest index and follows the pointers.
    """
    kind: str
    indices: tuple
    exponents: tuple

    def __str__(self):
        return "%s(%s)" % (self.kind.capitalize(), ",".join(map(str, self.exponents)))


@dataclass(frozen=True)
class InvertiblePolynomial:
    """W = sum_i x_i^{a_i} x_{p(i)} stored as its exponent matrix.

    Row i of ``matrix`` is the exponent vector of the monomial led by x_i.
    Construct through :func:`parse_polynomial` or :meth:`from_matrix`, both
    of which validate the atomic structure.
    """
    matrix: tuple

    @classmethod
    def from_matrix(cls, rows) -> "InvertiblePolynomial":
        M = tuple(tuple(int(a) for a in row) for row in rows)
        W = cls(M)
        W.atoms  # validates
        return W

    @property
    def n_vars(self) -> int:
        return len(self.matrix)

    @property
    def monomials(self) -> list:
        return [tuple(r) for r in self.matrix]

    @cached_property
    def pointers(self) -> tuple:
        """pointer[i] = j if monomial i is x_i^a x_j, else None."""
        N = self.n_vars
        out = []
        for i, row in enumerate(self.matrix):
            if len(row) != N:
                raise NotInvertible("exponent matrix is not square")
            if row[i] < 2:
                raise NotInvertible("monomial %d must lead with x%d^a, a >= 2" % (i + 1, i + 1))
            others = [j for j in range(N) if j != i and row[j]]
            if not others:
                out.append(None)
            elif len(others) == 1 and row[others[0]] == 1:
                out.append(others[0])
            else:
                raise NotInvertible("monomial %d is not of the form x_i^a x_j" % (i + 1))
        return tuple(out)

    @cached_property
    def atoms(self) -> tuple:
        ptr = self.pointers
        N = self.n_vars
        indeg = [0] * N
        for j in ptr:
            if j is not None:
                indeg[j] += 1
        if any(d > 1 for d in indeg):
            raise NotInvertible("two monomials point at the same variable")
        seen = [False] * N
        atoms = []
        for head in range(N):
            if indeg[head] == 0:
                path = [head]
                while ptr[path[-1]] is not None:
                    path.append(ptr[path[-1]])
                for i in path:
                    seen[i] = True
                kind = "fermat" if len(path) == 1 else "chain"
                atoms.append(Atom(kind, tuple(path), tuple(self.matrix[i][i] for i in path)))
        for start in range(N):
            if not seen[start]:
                cyc = [start]
                while ptr[cyc[-1]] != start:
                    cyc.append(ptr[cyc[-1]])
                for i in cyc:
                    seen[i] = True
                atoms.append(Atom("loop", tuple(cyc), tuple(self.matrix[i][i] for i in cyc)))
        atoms.sort(key=lambda a: min(a.indices))
        return tuple(atoms)

    @cached_property
    def inverse_matrix(self):
        inv = mat_inverse(self.matrix)
        if inv is None:
            raise DegenerateWeights("exponent matrix is singular")
        return inv

    @cached_property
    def weights(self) -> tuple:
        q = tuple(sum(row) for row in self.inverse_matrix)
        if any(x <= 0 for x in q):
            raise DegenerateWeights("weights must be positive")
        return q

    @cached_property
    def det(self) -> int:
        return abs(int(determinant(self.matrix)))

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(W: InvertiblePolynomial, var: str = "x") -> str:
    terms = []
    for row in W.matrix:
        factors = []
        for j, e in enumerate(row):
            if e == 1:
                factors.append("%s%d" % (var, j + 1))
            elif e:
                factors.append("%s%d^%d" % (var, j + 1, e))
        terms.append("*".join(factors))
    return " + ".join(terms)


_TERM_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, relabel: bool = False) -> InvertiblePolynomial:
    """Parse e.g. "x1^4*x2 + x2^5*x3 + x3^3*x4 + x4^2".

    Monomials are reordered so that monomial i leads with x_i.  With
    ``relabel`` the variable indices that occur are compressed to 1..N.
    """
    src = "".join(str(text).split())
    if not src:
        raise ParseError("empty polynomial")
    terms = []
    for raw in src.split("+"):
        if not raw:
            raise ParseError("empty term in %r" % text)
        exps = {}
        factors = raw.split("*")
        if len(factors) > 2:
            raise ParseError("term %r has more than two factors" % raw)
        for f in factors:
            m = _TERM_FACTOR.match(f)
            if not m:
                raise ParseError("cannot parse factor %r" % f)
            idx = int(m.group(1))
            if idx < 1:
                raise ParseError("variables are 1-based: %r" % f)
            e = int(m.group(2)) if m.group(2) is not None else 1
            if e < 1:
                raise ParseError("exponent must be positive in %r" % f)
            exps[idx] = exps.get(idx, 0) + e
        terms.append(exps)
    used = sorted({i for t in terms for i in t})
    if relabel:
        ren = {v: k + 1 for k, v in enumerate(used)}
        terms = [{ren[i]: e for i, e in t.items()} for t in terms]
        used = list(range(1, len(used) + 1))
    N = max(used)
    if used != list(range(1, N + 1)):
        raise NotInvertible("variables must be x1..xN without gaps")
    if len(terms) != N:
        raise NotInvertible("%d monomials in %d variables" % (len(terms), N))
    rows = [None] * N
    for t in terms:
        leads = [i for i, e in t.items() if e >= 2]
        if len(t) == 2 and sorted(t.values())[0] != 1:
            raise NotInvertible("term %r is not of the form x_i^a x_j" % t)
        if len(leads) != 1:
            raise NotInvertible("term %r has no unique leading variable" % t)
        lead = leads[0] - 1
        if rows[lead] is not None:
            raise NotInvertible("x%d leads two monomials" % (lead + 1))
        row = [0] * N
        for i, e in t.items():
            row[i - 1] = e
        rows[lead] = row
    return InvertiblePolynomial.from_matrix(rows)


def exponent_matrix(W: InvertiblePolynomial) -> list:
    return [list(r) for r in W.matrix]


def weights(W: InvertiblePolynomial) -> tuple:
    return W.weights


def transpose(W: InvertiblePolynomial) -> InvertiblePolynomial:
    return InvertiblePolynomial.from_matrix(mat_transpose(W.matrix))


def milnor_number(W: InvertiblePolynomial) -> int:
    mu = Fraction(1)
    for q in W.weights:
        mu *= 1 / q - 1
    assert mu.denominator == 1
    return int(mu)


def _atom_basis(atom: Atom) -> list:
    a = atom.exponents
    n = len(a)
    if atom.kind == "fermat":
        return [(r,) for r in range(a[0] - 1)]
    if atom.kind == "loop":
        return list(itertools.product(*[range(x) for x in a]))
    out = set()
    for k in range(n // 2 + 1):
        prefix = []
        for t in range(k):
            prefix += [a[2 * t] - 1, 0]
        rest = [range(a[2 * k] - 1)] if 2 * k < n else []
        rest += [range(x) for x in a[2 * k + 1:]]
        for tail in itertools.product(*rest):
            out.add(tuple(prefix) + tuple(tail))
    return sorted(out)


def kreuzer_basis(W: InvertiblePolynomial) -> list:
    """Monomial basis of the Milnor ring, as sorted exponent vectors."""
    return list(_kreuzer_cached(W))


@lru_cache(maxsize=4096)
def _kreuzer_cached(W: InvertiblePolynomial) -> tuple:
    N = W.n_vars
    parts = [(atom.indices, _atom_basis(atom)) for atom in W.atoms]
    out = []
    for combo in itertools.product(*[b for _, b in parts]):
        v = [0] * N
        for (idx, _), exps in zip(parts, combo):
            for i, e in zip(idx, exps):
                v[i] = e
        out.append(tuple(v))
    out.sort()
    return tuple(out)


def restrict(W: InvertiblePolynomial, keep: Sequence[int]) -> InvertiblePolynomial | None:
    """The summands of W supported on the variables ``keep`` (0-based).

    Returns None when ``keep`` is empty.  The kept monomials must not point
    outside ``keep`` (true for the fixed locus of any diagonal symmetry).
    """
    keep = sorted(keep)
    if not keep:
        return None
    pos = {v: k for k, v in enumerate(keep)}
    rows = []
    for i in keep:
        row = W.matrix[i]
        if any(row[j] and j not in pos for j in range(W.n_vars)):
            raise NotASymmetry("fixed variables do not carry a summand of W")
        rows.append([row[j] for j in keep])
    return InvertiblePolynomial.from_matrix(rows)


def is_permutation_symmetry(W: InvertiblePolynomial, sigma) -> bool:
    """[sigma] A = A [sigma], i.e. A[sigma(i)][sigma(j)] == A[i][j]."""
    s = sigma.images
    A = W.matrix
    N = W.n_vars
    if len(s) != N:
        return False
    return all(A[s[i]][s[j]] == A[i][j] for i in range(N) for j in range(N))


def reduce_W_sigma(W: InvertiblePolynomial, sigma) -> InvertiblePolynomial:
    """W^sigma: one monomial per cycle, variables collapsed cycle-wise."""
    if not is_permutation_symmetry(W, sigma):
        raise NotASymmetry("%s is not a symmetry of %s" % (sigma, W))
    return _reduce_cached(W, sigma)


@lru_cache(maxsize=4096)
def _reduce_cached(W, sigma):
    cycles = sigma.cycles()
    r = sigma.cycle_index()
    rows = []
    for cyc in cycles:
        row = [0] * len(cycles)
        for j, e in enumerate(W.matrix[cyc[0]]):
            row[r[j]] += e
        rows.append(row)
    return InvertiblePolynomial.from_matrix(rows)


def check_quasihomogeneous(W: InvertiblePolynomial) -> bool:
    return all(x == 1 for x in mat_vec(W.matrix, W.weights))
