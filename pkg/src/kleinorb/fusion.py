"""Fusion ring of the Z2-orbifolds L(k,0)^<sigma_r> and the simple-current lift.

Labels are ``U(i,s)`` for the untwisted modules L(k,i)^{sigma_r,s} and
``T(i,s)`` for the twisted ones.  All structure constants are 0 or 1, so a
fusion product is a set of labels.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

UNTWISTED = "untwisted"
TWISTED = "twisted"
SECTORS = (UNTWISTED, TWISTED)
SIGNS = ("+", "-")


class UnsupportedSectorError(ValueError):
    """Raised for twisted x twisted products, which have no rule here."""


class LabelSyntaxError(ValueError):
    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


@dataclass(frozen=True)
class Z2FusionLabel:
    sector: str
    i: int
    sign: str

    def __post_init__(self):
        if self.sector not in SECTORS:
            raise ValueError(f"unknown sector {self.sector!r}")
        if self.sign not in SIGNS:
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.i < 0:
            raise ValueError("index must be nonnegative")

    @property
    def twisted(self) -> bool:
        return self.sector == TWISTED

    def sort_key(self) -> tuple:
        return (SECTORS.index(self.sector), self.i, SIGNS.index(self.sign))

    def __lt__(self, other: Z2FusionLabel) -> bool:
        return self.sort_key() < other.sort_key()

    def flipped(self) -> Z2FusionLabel:
        return Z2FusionLabel(self.sector, self.i, flip(self.sign))

    def __str__(self):
        return f"{'T' if self.twisted else 'U'}({self.i},{self.sign})"


def U(i: int, sign: str = "+") -> Z2FusionLabel:
    return Z2FusionLabel(UNTWISTED, i, sign)


def T(i: int, sign: str = "+") -> Z2FusionLabel:
    return Z2FusionLabel(TWISTED, i, sign)


def all_labels(k: int) -> list[Z2FusionLabel]:
    return sorted(Z2FusionLabel(sec, i, s) for sec in SECTORS for i in range(k + 1) for s in SIGNS)


_LABEL_RE = re.compile(r"([UT])\((\d+),([+-])\)")


def parse_label(text: str, k: int | None = None) -> Z2FusionLabel:
    """Parse ``U(i,s)`` or ``T(i,s)``; errors carry the offending position."""
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s:
        raise LabelSyntaxError(text, 0, "empty label")
    if s[0] not in "UT":
        raise LabelSyntaxError(text, offset, "expected 'U' or 'T'")
    if len(s) < 2 or s[1] != "(":
        raise LabelSyntaxError(text, offset + 1, "expected '('")
    pos = 2
    while pos < len(s) and s[pos].isdigit():
        pos += 1
    if pos == 2:
        raise LabelSyntaxError(text, offset + pos, "expected a nonnegative integer")
    if pos >= len(s) or s[pos] != ",":
        raise LabelSyntaxError(text, offset + pos, "expected ','")
    if pos + 1 >= len(s) or s[pos + 1] not in "+-":
        raise LabelSyntaxError(text, offset + pos + 1, "expected '+' or '-'")
    if pos + 2 >= len(s) or s[pos + 2] != ")":
        raise LabelSyntaxError(text, offset + pos + 2, "expected ')'")
    if pos + 3 != len(s):
        raise LabelSyntaxError(text, offset + pos + 3, "trailing characters")
    m = _LABEL_RE.fullmatch(s)
    assert m is not None
    lab = Z2FusionLabel(TWISTED if m[1] == "T" else UNTWISTED, int(m[2]), m[3])
    if k is not None and lab.i > k:
        raise LabelSyntaxError(text, offset + 2, f"index {lab.i} exceeds level {k}")
    return lab


def flip(sign: str) -> str:
    return "-" if sign == "+" else "+"


def sign_rule(i: int, j: int, l: int, base: str = "+") -> str:
    """sign(i,j,l)^base: ``base`` when i+j-l is divisible by 4, its flip otherwise."""
    if (i + j + l) % 2:
        raise ValueError(f"i+j+l must be even, got {i}+{j}+{l}")
    if base not in SIGNS:
        raise ValueError(base)
    return base if (i + j - l) % 4 == 0 else flip(base)


def channels(i: int, j: int, k: int) -> range:
    """Admissible l: |i-j| <= l <= i+j, i+j+l even, i+j+l <= 2k."""
    return range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2)


class FusionSum(frozenset):
    """A set of labels; every multiplicity is 0 or 1."""

    def sorted(self) -> list[Z2FusionLabel]:
        return sorted(self)

    def __str__(self):
        return " + ".join(str(x) for x in self.sorted()) or "0"


def _check(label: Z2FusionLabel, k: int) -> None:
    if label.i > k:
        raise ValueError(f"{label} is out of range for level {k}")


def fuse(a: Z2FusionLabel, b: Z2FusionLabel, k: int) -> FusionSum:
    """a x b.  Untwisted x twisted is taken in either order."""
    _check(a, k)
    _check(b, k)
    if a.twisted and b.twisted:
        raise UnsupportedSectorError(f"no fusion rule for {a} x {b}")
    if a.twisted:
        a, b = b, a
    base = b.sign if a.sign == "+" else flip(b.sign)
    return FusionSum(
        Z2FusionLabel(b.sector, l, sign_rule(a.i, b.i, l, base)) for l in channels(a.i, b.i, k)
    )


class FusionMultiset(dict):
    """Multiset of labels, used when products of sums may repeat a label."""

    def __hash__(self):
        return hash(frozenset(self.items()))


def _times(x: dict, b: Z2FusionLabel, k: int, left: bool) -> FusionMultiset:
    out: dict = {}
    for a, n in x.items():
        for c in fuse(a, b, k) if left else fuse(b, a, k):
            out[c] = out.get(c, 0) + n
    return FusionMultiset(out)


@dataclass
class RingReport:
    k: int
    commutative: bool
    associative: bool
    unit: Z2FusionLabel | None
    simple_currents: list[Z2FusionLabel]
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.commutative and self.associative and self.unit is not None

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "commutative": self.commutative,
            "associative": self.associative,
            "unit": str(self.unit) if self.unit else None,
            "simple_currents": [str(x) for x in self.simple_currents],
            "counterexample": self.counterexample,
        }


def verify_ring(k: int) -> RingReport:
    """Exhaustive commutativity, associativity and unit checks on the supported sectors."""
    labels = all_labels(k)
    commutative = True
    counter = None
    for a, b in itertools.combinations_with_replacement(labels, 2):
        if a.twisted and b.twisted:
            continue
        if fuse(a, b, k) != fuse(b, a, k):
            commutative = False
            counter = counter or f"{a} x {b}"
    associative = True
    for a, b, c in itertools.product(labels, repeat=3):
        if sum(x.twisted for x in (a, b, c)) > 1:
            continue
        left = _times(FusionMultiset({x: 1 for x in fuse(a, b, k)}), c, k, left=True)
        right = _times(FusionMultiset({x: 1 for x in fuse(b, c, k)}), a, k, left=False)
        if dict(left) != dict(right):
            associative = False
            counter = counter or f"({a} x {b}) x {c}"
    unit = None
    for u in labels:
        if all(fuse(u, x, k) == FusionSum({x}) for x in labels if not (u.twisted and x.twisted)):
            unit = u
            break
    return RingReport(k, commutative, associative, unit, simple_currents(k), counter)


def simple_currents(k: int) -> list[Z2FusionLabel]:
    """Labels whose product with every label it can be fused with is a single label."""
    labels = all_labels(k)
    out = []
    for a in labels:
        partners = [x for x in labels if not (a.twisted and x.twisted)]
        if all(len(fuse(a, x, k)) == 1 for x in partners):
            out.append(a)
    return out


def fusion_table(k: int) -> list[dict]:
    """Every supported product, rows in canonical label order."""
    rows = []
    labels = all_labels(k)
    for a in labels:
        for b in labels:
            if a.twisted and b.twisted:
                continue
            rows.append({"a": str(a), "b": str(b), "product": [str(x) for x in fuse(a, b, k).sorted()]})
    return rows


# --- weights and the simple-current lift ------------------------------------------


def lowest_weight(label: Z2FusionLabel, k: int) -> Fraction:
    """Lowest conformal weight of the Z2-orbifold module."""
    i = label.i
    if not label.twisted:
        if i == 0 and label.sign == "-":
            return Fraction(1)
        return Fraction(i * (i + 2), 4 * (k + 2))
    base = Fraction(i * (i - k), 4 * (k + 2)) + Fraction(k, 16)
    return base if label.sign == "+" else base + Fraction(1, 2)


def canonical(label: Z2FusionLabel, k: int) -> Z2FusionLabel:
    """Twisted modules on L(k,i) and L(k,k-i) coincide; keep the smaller index."""
    if label.twisted and label.i > k - label.i:
        return Z2FusionLabel(TWISTED, k - label.i, label.sign)
    return label


class LiftKind(str, Enum):
    NONSPLIT_PAIR = "nonsplit-pair"
    SPLIT = "split"
    NOT_LIFTABLE = "not-liftable"


@dataclass(frozen=True)
class LiftResult:
    label: Z2FusionLabel
    kind: LiftKind
    partner: Z2FusionLabel
    weight_gap: Fraction

    def to_json(self) -> dict:
        return {
            "label": str(self.label),
            "kind": self.kind.value,
            "partner": str(self.partner),
            "weight_gap": f"{self.weight_gap.numerator}/{self.weight_gap.denominator}"
            if self.weight_gap.denominator != 1
            else str(self.weight_gap.numerator),
        }


def extension_lift(m: int, label: Z2FusionLabel) -> LiftResult:
    """How ``label`` behaves under the simple current J = U(2m,+) of L(2m,0)^<sigma_1>."""
    k = 2 * m
    _check(label, k)
    (partner,) = fuse(U(k, "+"), label, k)
    partner = canonical(partner, k)
    own = canonical(label, k)
    gap = lowest_weight(partner, k) - lowest_weight(own, k)
    if partner == own:
        kind = LiftKind.SPLIT
    elif gap.denominator == 1:
        kind = LiftKind.NONSPLIT_PAIR
    else:
        kind = LiftKind.NOT_LIFTABLE
    return LiftResult(label, kind, partner, gap)
