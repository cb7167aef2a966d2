"""Reading polynomials and group specification files."""
from __future__ import annotations

import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ParseError
from .groups import (DEFAULT_GROUP_CAP, DiagonalGroup, DiagonalSymmetry, OrbifoldGroup, Permutation,
                     gdiag, jw, sl_group)
from .poly import InvertiblePolynomial, parse_polynomial

SHORTHANDS = ("jW", "Gdiag", "SLW")


def read_polynomial(arg: str, relabel: bool = False) -> InvertiblePolynomial:
    """A polynomial given inline or as a path to a file containing it."""
    text = arg
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = " ".join(line.split("#", 1)[0] for line in fh)
    return parse_polynomial(text, relabel=relabel)


def parse_group_spec(data: dict, W: InvertiblePolynomial, cap: int = DEFAULT_GROUP_CAP) -> OrbifoldGroup:
    """Build S x| H from a mapping with ``diag_generators`` and ``perm_generators``.

    Diagonal generators are lists of rationals or one of the tokens jW, Gdiag,
    SLW; an empty list of diagonal generators means the trivial group.
    """
    N = W.n_vars
    unknown = set(data) - {"diag_generators", "perm_generators"}
    if unknown:
        raise ParseError("unknown keys in group spec: %s" % ", ".join(sorted(unknown)))
    groups = []
    gens = []
    for item in data.get("diag_generators", []):
        if isinstance(item, str):
            if item == "jW":
                gens.append(jw(W))
            elif item == "Gdiag":
                groups.append(gdiag(W))
            elif item == "SLW":
                groups.append(sl_group(W))
            else:
                raise ParseError("unknown group token %r (expected one of %s)"
                                 % (item, ", ".join(SHORTHANDS)))
            continue
        if not isinstance(item, list) or len(item) != N:
            raise ParseError("diagonal generator %r must list %d rationals" % (item, N))
        try:
            gens.append(DiagonalSymmetry.from_fractions([str(x) for x in item]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational in %r: %s" % (item, exc)) from None
    H = DiagonalGroup.generated_by(gens, N)
    for extra in groups:
        H = H.join(extra)
    perms = []
    for text in data.get("perm_generators", []):
        if not isinstance(text, str):
            raise ParseError("permutation generators are cycle strings, got %r" % (text,))
        perms.append(Permutation.from_cycles(text, N))
    return OrbifoldGroup(W, perms, H, cap)


def read_group(path: str, W: InvertiblePolynomial, cap: int = DEFAULT_GROUP_CAP) -> OrbifoldGroup:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ParseError("cannot read group file %s: %s" % (path, exc.strerror)) from None
    except tomllib.TOMLDecodeError as exc:
        raise ParseError("bad group file %s: %s" % (path, exc)) from None
    return parse_group_spec(data, W, cap)
