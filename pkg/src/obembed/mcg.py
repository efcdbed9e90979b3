"""Dehn twist words and their action on page homology.

A twist along a curve c acts on H1 by the transvection

    x  |->  x + e * <x, [c]> * [c]

for a twist power e.  Words are read with the rightmost letter acting
first, so the action of a word is the left-to-right product of the
letter matrices.

The same transvection rule drives the relative bookkeeping for arcs:
pushing an arc r through a twist changes its closure defect by
e * (<r, c> + <v, [c]>) * [c], where v is the defect accumulated so
far.  The defect of a word along arc i is the class of (word(r_i) -
r_i), the quantity the boundary filling of an open book kills.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .intlinalg import IntMatrix

_LETTER_RE = re.compile(r"^t\(([A-Za-z][A-Za-z0-9_]*)\)(?:\^(-?\d+))?$")


class WordSyntaxError(ValueError):
    """Raised on malformed twist-word text."""


@dataclass(frozen=True)
class TwistWord:
    """An ordered word of (curve_name, exponent) letters.

    Zero exponents are dropped on construction; the word is otherwise
    kept letter-for-letter (words with equal matrices are not merged).
    """

    letters: tuple = ()

    def __post_init__(self):
        cleaned = []
        for name, exp in self.letters:
            exp = int(exp)
            if exp != 0:
                cleaned.append((str(name), exp))
        object.__setattr__(self, "letters", tuple(cleaned))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_empty(self):
        return not self.letters

    def concat(self, other):
        return TwistWord(self.letters + other.letters)

    def inverse(self):
        return TwistWord(tuple((name, -exp) for name, exp in reversed(self.letters)))

    def curve_names(self):
        return tuple(dict.fromkeys(name for name, _ in self.letters))

    def rename(self, mapping):
        return TwistWord(tuple((mapping.get(name, name), exp)
                               for name, exp in self.letters))


def parse_word(text):
    """Parse whitespace-separated letters like ``t(a1) t(b1)^-1``."""
    word = []
    for token in text.split():
        m = _LETTER_RE.match(token)
        if not m:
            raise WordSyntaxError(f"bad twist letter {token!r} "
                                  "(expected t(<name>) with optional ^<int>)")
        word.append((m.group(1), int(m.group(2) or 1)))
    return TwistWord(tuple(word))


def format_word(word):
    parts = []
    for name, exp in word:
        parts.append(f"t({name})" if exp == 1 else f"t({name})^{exp}")
    return " ".join(parts)


def twist_matrix(curve, sign, basis):
    """Transvection matrix of a twist power along a configured curve.

    With c the curve's class and J the pairing, this is
    I + sign * c (Jc)^T; it is unimodular and preserves the pairing.
    """
    if sign == 0:
        return IntMatrix.identity(basis.rank)
    c = curve.homology_class
    rank = basis.rank
    if len(c) != rank:
        raise ValueError(f"curve {curve.name}: class dimension {len(c)} != {rank}")
    jc = basis.pairing.apply(c)
    rows = [[(1 if i == k else 0) + sign * c[i] * jc[k] for k in range(rank)]
            for i in range(rank)]
    return IntMatrix(rank, rank, rows)


def word_action(word, cfg, basis=None):
    """Homology action of a word; rightmost letter acts first."""
    basis = basis or cfg.basis()
    result = IntMatrix.identity(basis.rank)
    for name, exp in word:
        result = result * twist_matrix(cfg.curve(name), exp, basis)
    return result


def arc_defect(word, arc_index, cfg, arcs, basis=None):
    """Defect class of a word along arc ``arc_index`` (1-based).

    Letters are processed in action order (right to left); on letter
    (c, e) the running defect v picks up e*(<r,c> + <v,[c]>)*[c].
    """
    basis = basis or cfg.basis()
    if arcs.count == 0:
        raise IndexError("surface has a single boundary component, no arcs exist")
    if not 1 <= arc_index <= arcs.count:
        raise IndexError(f"arc index {arc_index} out of range 1..{arcs.count}")
    v = basis.zero()
    for name, exp in reversed(word.letters):
        curve = cfg.curve(name)
        cls = curve.homology_class
        t = arcs.intersection(arc_index, curve) + basis.pair(v, cls)
        coeff = exp * t
        v = tuple(a + coeff * b for a, b in zip(v, cls))
    return v


@dataclass(frozen=True)
class RelationCheck:
    name: str
    kind: str
    passed: bool


@dataclass(frozen=True)
class RelationReport:
    surface: object
    checks: tuple

    @property
    def all_pass(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def relation_report(cfg, basis=None):
    """Exact matrix checks of the standard mapping-class relations.

    For every configured pair: the braid relation when the classes
    pair to +-1, commutation when they pair to 0.  When the surface
    has genus, also (T_a1 T_b1)^6 = identity, the order-six element
    of the genus-one block.
    """
    basis = basis or cfg.basis()
    checks = []
    curves = list(cfg.curves)
    mats = {c.name: twist_matrix(c, 1, basis) for c in curves}
    for idx, c in enumerate(curves):
        for d in curves[idx + 1:]:
            p = basis.pair(c.homology_class, d.homology_class)
            tc, td = mats[c.name], mats[d.name]
            if p == 0:
                ok = tc * td == td * tc
                checks.append(RelationCheck(f"commute({c.name},{d.name})",
                                            "commutation", ok))
            elif p in (1, -1):
                ok = tc * td * tc == td * tc * td
                checks.append(RelationCheck(f"braid({c.name},{d.name})", "braid", ok))
    if cfg.surface.genus >= 1 and cfg.has_curve("a1") and cfg.has_curve("b1"):
        prod = mats["a1"] * mats["b1"]
        power = IntMatrix.identity(basis.rank)
        for _ in range(6):
            power = power * prod
        checks.append(RelationCheck("order6(a1,b1)", "order6", power.is_identity()))
    return RelationReport(cfg.surface, tuple(checks))
