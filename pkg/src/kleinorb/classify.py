"""Irreducible modules of L(k,0)^K and of the commutant built on L(2m,0).

Each module gets a :class:`ModuleDescriptor` with exact lowest weight, the
dimension of its lowest weight space and a description of a generating
lowest-weight vector.  :func:`cross_check` recomputes the weights and
dimensions from the engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .affine import isotypic_at_degree
from .fusion import LiftKind, T, U, extension_lift
from .scalars import format_rational
from .twisted import TwistedComponentLabel, twisted_component_dims

TAGS = ("+", "-")


# --- labels ---------------------------------------------------------------------


@dataclass(frozen=True)
class UntwistedOdd:
    i: int

    def name(self, k: int) -> str:
        return f"L({k},{self.i})^+"

    sector = "untwisted"


@dataclass(frozen=True)
class UntwistedEven:
    i: int
    j: int

    def name(self, k: int) -> str:
        return f"L({k},{self.i})^{{({self.j})}}"

    sector = "untwisted"


@dataclass(frozen=True)
class Twisted:
    r: int
    i: int
    tag: str

    def name(self, k: int) -> str:
        return f"bar-L({k},{self.i})^{{sigma_{self.r},{self.tag}}}"

    @property
    def sector(self) -> str:
        return f"sigma_{self.r}"


@dataclass(frozen=True)
class TwistedMid:
    r: int
    j: int

    def name(self, k: int) -> str:
        return f"bar-L({k},{k // 2})^{{sigma_{self.r},({self.j})}}"

    @property
    def sector(self) -> str:
        return f"sigma_{self.r}"


KModuleLabel = Union[UntwistedOdd, UntwistedEven, Twisted, TwistedMid]


def validate(label: KModuleLabel, k: int) -> None:
    if k < 1:
        raise ValueError(f"level must be positive, got {k}")
    if isinstance(label, UntwistedOdd):
        ok = label.i % 2 == 1 and 1 <= label.i <= k
    elif isinstance(label, UntwistedEven):
        ok = label.i % 2 == 0 and 0 <= label.i <= k and 0 <= label.j <= 3
    elif isinstance(label, Twisted):
        ok = label.r in (1, 2, 3) and 0 <= 2 * label.i < k and label.tag in TAGS
    elif isinstance(label, TwistedMid):
        ok = k % 2 == 0 and label.r in (1, 2, 3) and 0 <= label.j <= 3
    else:
        raise TypeError(f"not a module label: {label!r}")
    if not ok:
        raise ValueError(f"{label!r} is not a valid label at level {k}")


@dataclass(frozen=True)
class ModuleDescriptor:
    label: KModuleLabel
    k: int
    lowest_weight: Fraction
    top_dim: int
    generator: str

    @property
    def name(self) -> str:
        return self.label.name(self.k)

    @property
    def sector(self) -> str:
        return self.label.sector

    def to_json(self) -> dict:
        return {
            "label": self.name,
            "sector": self.sector,
            "weight": format_rational(self.lowest_weight),
            "top_dim": self.top_dim,
            "generator": self.generator,
        }


# --- closed formulas ----------------------------------------------------------------


def untwisted_weight(k: int, i: int) -> Fraction:
    return Fraction(i * (i + 2), 4 * (k + 2))


def twisted_base_weight(k: int, i: int) -> Fraction:
    return Fraction(i * (i - k), 4 * (k + 2)) + Fraction(k, 16)


def top_level_characters(i: int) -> tuple[int, int, int, int]:
    """Multiplicity of each Klein character on L(i alpha/2), i even.

    phi(sigma_1) is (-1)^j on v^{i,j} and phi(sigma_2) swaps v^{i,j} and v^{i,i-j}.
    """
    if i % 2:
        raise ValueError("the Klein action on L(i alpha/2) is linear only for even i")
    counts = [0, 0, 0, 0]
    for j in range(i // 2 + 1):
        odd = j % 2
        if 2 * j == i:
            counts[2 * odd] += 1
        else:
            counts[2 * odd] += 1
            counts[2 * odd + 1] += 1
    return tuple(counts)


def _v(i: int, j: int) -> str:
    return f"v^{{{i},{j}}}"


def descriptor(label: KModuleLabel, k: int) -> ModuleDescriptor:
    validate(label, k)
    if isinstance(label, UntwistedOdd):
        i = label.i
        return ModuleDescriptor(label, k, untwisted_weight(k, i), (i + 1) // 2, _v(i, i))
    if isinstance(label, UntwistedEven):
        i, j = label.i, label.j
        top = top_level_characters(i)[j]
        if top:
            if i == 0:
                gen = "1"
            elif i == 2:
                gen = (f"{_v(2, 0)}+{_v(2, 2)}", f"{_v(2, 0)}-{_v(2, 2)}", _v(2, 1))[j]
            else:
                gen = (
                    f"{_v(i, 0)}+{_v(i, i)}",
                    f"{_v(i, 0)}-{_v(i, i)}",
                    f"{_v(i, 1)}+{_v(i, i - 1)}",
                    f"{_v(i, 1)}-{_v(i, i - 1)}",
                )[j]
            return ModuleDescriptor(label, k, untwisted_weight(k, i), top, gen)
        if i == 0:
            gen = ("1", "h(-1)1", "(e+f)(-1)1", "(e-f)(-1)1")[j]
            return ModuleDescriptor(label, k, Fraction(1), 1, gen)
        # i = 2, j = 3: the character first occurs one degree up
        return ModuleDescriptor(
            label, k, Fraction(k + 4, k + 2), 1 if k == 2 else 3, f"h(-1){_v(2, 1)}"
        )
    if isinstance(label, Twisted):
        r, i = label.r, label.i
        base = twisted_base_weight(k, i)
        v = f"v^{{{r},{i},{i}}}"
        if label.tag == "+":
            return ModuleDescriptor(label, k, base, 1, v)
        # f_{-1/2} v and e_{-1/2} v; the latter vanishes only for i = 0
        return ModuleDescriptor(
            label, k, base + Fraction(1, 2), 2 if i else 1, f"f^({r})_{{-1/2}}{v}"
        )
    r, j, half = label.r, label.j, k // 2
    base = Fraction(k, 8 * (k + 2))
    v = f"v^{{{r},{half},{half}}}"
    weights = (base, base + 1, base + Fraction(1, 2), base + Fraction(1, 2))
    tops = (1, 1 if k == 2 else 2, 1, 1)
    gens = (v, f"h^({r})(-1){v}", f"(e^({r})+f^({r}))_{{-1/2}}{v}", f"(e^({r})-f^({r}))_{{-1/2}}{v}")
    return ModuleDescriptor(label, k, weights[j], tops[j], gens[j])


# --- the K-orbifold list -------------------------------------------------------------


def orbifold_labels(k: int) -> list[KModuleLabel]:
    if k < 1:
        raise ValueError(f"level must be positive, got {k}")
    labels: list[KModuleLabel] = []
    for i in range(k + 1):
        if i % 2:
            labels.append(UntwistedOdd(i))
        else:
            labels.extend(UntwistedEven(i, j) for j in range(4))
    for r in (1, 2, 3):
        for i in range((k + 1) // 2):
            labels.extend(Twisted(r, i, tag) for tag in TAGS)
        if k % 2 == 0:
            labels.extend(TwistedMid(r, j) for j in range(4))
    return labels


def classify_orbifold(k: int) -> list[ModuleDescriptor]:
    """All irreducible L(k,0)^K-modules up to equivalence."""
    return [descriptor(lab, k) for lab in orbifold_labels(k)]


def expected_count(k: int) -> int:
    return 11 * (k + 1) // 2 if k % 2 else (11 * k + 32) // 2


# --- the commutant --------------------------------------------------------------------


@dataclass(frozen=True)
class NonsplitPair:
    i: int
    j: int

    def name(self, k: int) -> str:
        return f"L({k},{self.i})^{{({self.j})}}+L({k},{k - self.i})^{{({self.j})}}"

    sector = "untwisted"
    family = "nonsplit"


@dataclass(frozen=True)
class Split:
    """One of the two modules (M)^+ and (M)^- into which M splits."""

    base: KModuleLabel
    pm: str

    def name(self, k: int) -> str:
        return f"({self.base.name(k)})^{self.pm}"

    @property
    def sector(self) -> str:
        return self.base.sector

    @property
    def family(self) -> str:
        if isinstance(self.base, UntwistedEven):
            return "split-untwisted"
        if isinstance(self.base, Twisted):
            return "split-twisted"
        return "split-twisted-mid"


@dataclass(frozen=True)
class OrbifoldModule:
    """Commutant module for odd m: an L(2m,0)^K-module verbatim."""

    base: KModuleLabel

    def name(self, k: int) -> str:
        return self.base.name(k)

    @property
    def sector(self) -> str:
        return self.base.sector

    family = "orbifold"


CommutantLabel = Union[OrbifoldModule, NonsplitPair, Split]


@dataclass(frozen=True)
class CommutantEntry:
    m: int
    label: CommutantLabel
    descriptor: ModuleDescriptor = field(compare=False)

    def to_json(self) -> dict:
        out = self.descriptor.to_json()
        out["label"] = self.label.name(2 * self.m)
        out["family"] = self.label.family
        return out


def _pair_descriptor(m: int, label: NonsplitPair) -> ModuleDescriptor:
    k = 2 * m
    parts = [descriptor(UntwistedEven(i, label.j), k) for i in (label.i, k - label.i)]
    low = min(p.lowest_weight for p in parts)
    lowest = [p for p in parts if p.lowest_weight == low]
    return ModuleDescriptor(
        UntwistedEven(label.i, label.j),
        k,
        low,
        sum(p.top_dim for p in lowest),
        " and ".join(p.generator for p in lowest),
    )


def _sign_halves(sign: str) -> tuple[int, int]:
    """Isotypic tags (j) contained in the sigma_1-eigenspace with the given sign."""
    return (0, 1) if sign == "+" else (2, 3)


def _entry(m: int, label: CommutantLabel) -> CommutantEntry:
    k = 2 * m
    if isinstance(label, NonsplitPair):
        return CommutantEntry(m, label, _pair_descriptor(m, label))
    return CommutantEntry(m, label, descriptor(label.base, k))


def classify_commutant(m: int) -> list[CommutantEntry]:
    """Irreducible modules of the commutant, realized through L(2m,0)^K.

    For even m the list is assembled from :func:`extension_lift` applied to the
    Z2-orbifold labels at level 2m; the K-refinement of each lifted
    sigma_1-module is then read off from the sigma_1 sign.
    """
    if m < 4:
        raise ValueError(f"need m >= 4, got {m}")
    k = 2 * m
    if m % 2:
        return [_entry(m, OrbifoldModule(lab)) for lab in orbifold_labels(k)]
    labels: list[CommutantLabel] = []
    for i in range(0, m + 1, 2):
        for sign in TAGS:
            res = extension_lift(m, U(i, sign))
            js = _sign_halves(sign)
            if res.kind is LiftKind.NONSPLIT_PAIR:
                labels.extend(NonsplitPair(i, j) for j in js)
            elif res.kind is LiftKind.SPLIT:
                labels.extend(Split(UntwistedEven(i, j), pm) for j in js for pm in TAGS)
    twisted: list[CommutantLabel] = []
    for i in range(0, m + 1):
        for sign in TAGS:
            res = extension_lift(m, T(i, sign))
            if res.kind is not LiftKind.SPLIT:
                continue
            for r in (1, 2, 3):
                if 2 * i == k:
                    twisted.extend(Split(TwistedMid(r, j), pm) for j in _sign_halves(sign) for pm in TAGS)
                else:
                    twisted.extend(Split(Twisted(r, i, sign), pm) for pm in TAGS)
    labels.extend(sorted(twisted, key=_twisted_order))
    return [_entry(m, lab) for lab in labels]


def _twisted_order(label: Split) -> tuple:
    base = label.base
    if isinstance(base, Twisted):
        return (base.r, 0, base.i, TAGS.index(base.tag), TAGS.index(label.pm))
    return (base.r, 1, 0, base.j, TAGS.index(label.pm))


def listed_commutant_labels(m: int) -> set:
    """The even-m list exactly as enumerated in the classification statement."""
    if m % 2 or m < 4:
        raise ValueError("the listed form applies to even m >= 4")
    out: set = set()
    evens = range(0, m - 1, 2)
    out |= {NonsplitPair(i, j) for i in evens for j in range(4)}
    out |= {Split(UntwistedEven(m, j), pm) for j in range(4) for pm in TAGS}
    out |= {Split(Twisted(r, i, t), pm) for r in (1, 2, 3) for i in evens for t in TAGS for pm in TAGS}
    out |= {Split(TwistedMid(r, j), pm) for r in (1, 2, 3) for j in range(4) for pm in TAGS}
    return out


def commutant_discrepancies(m: int) -> dict[str, list[str]]:
    """Labels on which the lift engine and the listed classification disagree."""
    k = 2 * m
    built = {e.label for e in classify_commutant(m)}
    listed = listed_commutant_labels(m)
    return {
        "engine_only": sorted(x.name(k) for x in built - listed),
        "listed_only": sorted(x.name(k) for x in listed - built),
    }


def expected_commutant_count(m: int) -> int:
    return 11 * m + 16 if m % 2 else 8 * m + 32


# --- cross-check against the engines ----------------------------------------------------


@dataclass
class CrossCheckReport:
    k: int
    D: int
    confirmed: list[str]
    mismatches: list[dict]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "D": self.D,
            "confirmed": len(self.confirmed),
            "mismatches": self.mismatches,
        }


def _untwisted_top(k: int, i: int, tag: str, D: int) -> tuple[Fraction, int] | None:
    for d in range(D + 1):
        n = isotypic_at_degree(k, i, d)[tag]
        if n:
            return untwisted_weight(k, i) + d, n
    return None


def cross_check(k: int, D: int) -> CrossCheckReport:
    """Recompute every descriptor's lowest weight and top dimension.

    Untwisted modules use the Klein-isotypic split of L(k,i) through degree D.
    Twisted modules use twisted component tables at untwisted depth
    ``min(D, 2)``, which already contains every twisted lowest weight space.
    """
    confirmed: list[str] = []
    mismatches: list[dict] = []
    tables: dict[tuple[int, int], dict] = {}
    depth = min(D, 2)
    for desc in classify_orbifold(k):
        lab = desc.label
        if isinstance(lab, UntwistedOdd):
            found = _untwisted_top(k, lab.i, "+", D)
        elif isinstance(lab, UntwistedEven):
            found = _untwisted_top(k, lab.i, f"chi{lab.j}", D)
        else:
            i = lab.i if isinstance(lab, Twisted) else k // 2
            key = (i, lab.r)
            if key not in tables:
                tables[key] = twisted_component_dims(k, i, lab.r, depth)
            tag = lab.tag if isinstance(lab, Twisted) else f"({lab.j})"
            cells = tables[key][TwistedComponentLabel(k, i, lab.r, tag)]
            found = (min(cells), cells[min(cells)]) if cells else None
        if found == (desc.lowest_weight, desc.top_dim):
            confirmed.append(desc.name)
        else:
            mismatches.append(
                {
                    "label": desc.name,
                    "expected": [format_rational(desc.lowest_weight), desc.top_dim],
                    "engine": None if found is None else [format_rational(found[0]), found[1]],
                }
            )
    return CrossCheckReport(k, D, confirmed, mismatches)
