"""Free fermions psi_{ij}(r), 1 <= i <= m, 1 <= j <= 3, and level-2m affine sl2.

A Fock state is a bitmask over creation labels.  The label of
``psi_{ij}(-p/2)`` (p odd, positive) sits at slot
``((p-1)//2)*3m + (j-1)*m + (i-1)``, so slots increase with (p, j, i).  A state
is the product of its creation operators in increasing slot order applied to
the vacuum; moving an operator to its slot costs the sign of the number of
occupied slots below it.

Mode indices are stored doubled (``r2 = 2r``) to stay in integers.  Operators
act on arbitrary finite states without truncation, so every identity checked on
the states of degree <= D is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .scalars import I, GaussRational

# the bilinears w^a = sum_r psi_{r,b} psi_{r,c}, as ordered component pairs
W_PAIRS = {"w1": (2, 3), "w2": (1, 3), "w3": (1, 2)}
# h = 2i w1, e = i w2 - w3, f = i w2 + w3
SL2_IN_W = {
    "h": {"w1": 2 * I},
    "e": {"w2": I, "w3": -1},
    "f": {"w2": I, "w3": 1},
}
OPERATORS = tuple(W_PAIRS) + tuple(SL2_IN_W)


@dataclass(frozen=True)
class FockSpace:
    m: int

    def slot(self, i: int, j: int, p: int) -> int:
        """Slot of psi_{ij}(-p/2); ``p`` is a positive odd integer."""
        if p <= 0 or p % 2 == 0:
            raise ValueError(f"creation index must be a positive odd half-unit, got {p}/2")
        if not (1 <= i <= self.m and 1 <= j <= 3):
            raise ValueError(f"no fermion psi_{{{i},{j}}} for m={self.m}")
        return ((p - 1) // 2) * 3 * self.m + (j - 1) * self.m + (i - 1)

    def label(self, slot: int) -> tuple[int, int, int]:
        block, rest = divmod(slot, 3 * self.m)
        j, i = divmod(rest, self.m)
        return i + 1, j + 1, 2 * block + 1

    def degree2(self, mask: int) -> int:
        """Twice the degree of a basis state."""
        total = 0
        while mask:
            low = mask & -mask
            total += self.label(low.bit_length() - 1)[2]
            mask ^= low
        return total

    def states(self, D) -> list[int]:
        """All basis states of degree <= D, sorted by (degree, mask)."""
        D2 = int(2 * Fraction(D))
        slots = [self.slot(i, j, p) for p in range(1, D2 + 1, 2) for j in (1, 2, 3) for i in range(1, self.m + 1)]
        out = [0]
        # grow by adding slots in increasing order
        frontier = [(0, -1, 0)]
        while frontier:
            mask, last, deg2 = frontier.pop()
            for s in slots:
                if s <= last:
                    continue
                d = deg2 + self.label(s)[2]
                if d <= D2:
                    out.append(mask | 1 << s)
                    frontier.append((mask | 1 << s, s, d))
        return sorted(out, key=lambda x: (self.degree2(x), x))

    def describe(self, mask: int) -> str:
        if not mask:
            return "|0>"
        parts = []
        slot = 0
        while mask >> slot:
            if mask >> slot & 1:
                i, j, p = self.label(slot)
                parts.append(f"psi_{{{i},{j}}}(-{p}/2)")
            slot += 1
        return "".join(parts) + "|0>"


def _sign_below(mask: int, slot: int) -> int:
    return -1 if bin(mask & ((1 << slot) - 1)).count("1") % 2 else 1


def apply_psi(space: FockSpace, i: int, j: int, r, mask: int) -> tuple[int, int] | None:
    """psi_{ij}(r) on a basis state: ``(sign, new_mask)`` or ``None`` for zero."""
    r = Fraction(r)
    if r.denominator != 2:
        raise ValueError(f"fermion modes live in 1/2 + Z, got {r}")
    return _apply_psi2(space, i, j, int(2 * r), mask)


def _apply_psi2(space: FockSpace, i: int, j: int, r2: int, mask: int):
    slot = space.slot(i, j, abs(r2))
    bit = 1 << slot
    if r2 < 0:
        if mask & bit:
            return None
        return _sign_below(mask, slot), mask | bit
    if not mask & bit:
        return None
    return _sign_below(mask, slot), mask ^ bit


Vector = dict  # {mask: coefficient}


def _add(acc: dict, key, val) -> None:
    nv = acc.get(key, 0) + val
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def apply_psi_vector(space: FockSpace, i: int, j: int, r2: int, vec: Vector) -> Vector:
    out: dict = {}
    for mask, c in vec.items():
        res = _apply_psi2(space, i, j, r2, mask)
        if res:
            _add(out, res[1], c * res[0])
    return out


def _present(space: FockSpace, mask: int) -> list[tuple[int, int, int]]:
    out = []
    slot = 0
    while mask >> slot:
        if mask >> slot & 1:
            out.append(space.label(slot))
        slot += 1
    return out


@lru_cache(maxsize=None)
def _bilinear_on_state(space: FockSpace, a: int, b: int, n: int, mask: int) -> tuple:
    """sum_i sum_r psi_{i,a}(r) psi_{i,b}(n-r) on a basis state, a != b.

    Different components anticommute, so no normal-ordering correction is
    needed.  Only finitely many r contribute: those hitting an occupied
    label and those with both factors creating.
    """
    n2 = 2 * n
    present = _present(space, mask)
    out: dict = {}
    for i in range(1, space.m + 1):
        cands = set(range(n2 + 1, 0, 2)) if n2 < 0 else set()
        for ii, j, p in present:
            if ii != i:
                continue
            if j == a:
                cands.add(p)
            if j == b:
                cands.add(n2 - p)
        for r2 in cands:
            s2 = n2 - r2
            first = _apply_psi2(space, i, b, s2, mask)
            if first is None:
                continue
            second = _apply_psi2(space, i, a, r2, first[1])
            if second is None:
                continue
            _add(out, second[1], first[0] * second[0])
    return tuple(sorted(out.items()))


def bilinear_mode(space: FockSpace, op: str, n: int, vec: Vector) -> Vector:
    """The mode ``op(n)`` for op in w1, w2, w3, h, e, f applied to ``vec``."""
    if op in W_PAIRS:
        a, b = W_PAIRS[op]
        out: dict = {}
        for mask, c in vec.items():
            for key, val in _bilinear_on_state(space, a, b, n, mask):
                _add(out, key, c * val)
        return out
    if op in SL2_IN_W:
        out = {}
        for w, coeff in SL2_IN_W[op].items():
            for key, val in bilinear_mode(space, w, n, vec).items():
                _add(out, key, coeff * val)
        return out
    raise ValueError(f"unknown operator {op!r}")


def _to_gauss(vec: Vector) -> dict:
    return {k: GaussRational(v) if not isinstance(v, GaussRational) else v for k, v in vec.items() if v}


def _combine(*terms: tuple) -> Vector:
    out: dict = {}
    for coeff, vec in terms:
        for key, val in vec.items():
            _add(out, key, coeff * val)
    return out


def commutator(space: FockSpace, x: str, s: int, y: str, t: int, vec: Vector) -> Vector:
    xy = bilinear_mode(space, x, s, bilinear_mode(space, y, t, vec))
    yx = bilinear_mode(space, y, t, bilinear_mode(space, x, s, vec))
    return _combine((1, xy), (-1, yx))


# --- reports ------------------------------------------------------------------------


@dataclass
class RelationResult:
    relation: str
    ok: bool
    counterexample: str | None = None

    def to_json(self) -> dict:
        return {"relation": self.relation, "ok": self.ok, "counterexample": self.counterexample}


@dataclass
class FermionReport:
    m: int
    D: object
    results: list[RelationResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def first_failure(self) -> RelationResult | None:
        return next((r for r in self.results if not r.ok), None)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "D": str(self.D),
            "ok": self.ok,
            "relations": [r.to_json() for r in self.results],
        }


def _check_on_states(space: FockSpace, name: str, states, lhs, rhs) -> RelationResult:
    for mask in states:
        vec = {mask: 1}
        if _to_gauss(lhs(vec)) != _to_gauss(rhs(vec)):
            return RelationResult(name, False, space.describe(mask))
    return RelationResult(name, True)


def _scaled(c, vec: Vector) -> Vector:
    return {k: c * v for k, v in vec.items()} if c else {}


# structure of affine sl2: [x(s), y(t)] = sum coeff * z(s+t) + s delta_{s+t,0} <x,y> k
_SL2_BRACKETS = {
    ("h", "e"): ({"e": 2}, 0),
    ("h", "f"): ({"f": -2}, 0),
    ("e", "f"): ({"h": 1}, 1),
    ("h", "h"): ({}, 2),
    ("e", "e"): ({}, 0),
    ("f", "f"): ({}, 0),
}


def check_level(m: int, D=2, modes=range(-1, 2), level: int | None = None) -> FermionReport:
    """Affine sl2 relations at level ``level`` (default 2m) on every state of degree <= D.

    Brackets of h, e, f are bilinear in brackets of the w-modes, so the nine
    integer commutators [w_a(s), w_b(t)] are computed once per state and mode
    pair and then combined with the Gaussian coefficients of h, e, f.
    """
    space = FockSpace(m)
    k = 2 * m if level is None else level
    states = space.states(D)
    report = FermionReport(m, D)
    failures: dict[str, str] = {}
    names = []
    for (x, y) in _SL2_BRACKETS:
        for s, t in itertools.product(modes, repeat=2):
            names.append((x, s, y, t))
    for s, t in itertools.product(modes, repeat=2):
        for mask in states:
            vec = {mask: 1}
            wc = {(a, b): commutator(space, a, s, b, t, vec) for a in W_PAIRS for b in W_PAIRS}
            wn = {a: bilinear_mode(space, a, s + t, vec) for a in W_PAIRS}
            for (x, y), (terms, pairing) in _SL2_BRACKETS.items():
                name = f"[{x}({s}),{y}({t})]"
                if name in failures:
                    continue
                lhs = _combine(
                    *(
                        (cx * cy, wc[(a, b)])
                        for a, cx in SL2_IN_W[x].items()
                        for b, cy in SL2_IN_W[y].items()
                    )
                )
                parts = [(c * cw, wn[w]) for z, c in terms.items() for w, cw in SL2_IN_W[z].items()]
                if pairing and s + t == 0:
                    parts.append((s * pairing * k, vec))
                if _to_gauss(lhs) != _to_gauss(_combine(*parts)):
                    failures[name] = space.describe(mask)
    for x, s, y, t in names:
        name = f"[{x}({s}),{y}({t})]"
        report.results.append(RelationResult(name, name not in failures, failures.get(name)))
    return report


def check_w_algebra(m: int, D=2) -> FermionReport:
    """[w1,w2]=w3, [w2,w3]=w1, [w3,w1]=w2 for zero modes on states of degree <= D."""
    space = FockSpace(m)
    states = space.states(D)
    report = FermionReport(m, D)
    for x, y, z in (("w1", "w2", "w3"), ("w2", "w3", "w1"), ("w3", "w1", "w2")):
        report.results.append(
            _check_on_states(
                space,
                f"[{x}(0),{y}(0)]={z}(0)",
                states,
                lambda v, x=x, y=y: commutator(space, x, 0, y, 0, v),
                lambda v, z=z: bilinear_mode(space, z, 0, v),
            )
        )
    return report


def check_anticommutation(m: int, D=2, max_r2: int = 5) -> FermionReport:
    """{psi_a(r), psi_b(s)} = delta_{ab} delta_{r+s,0} for |r|, |s| <= max_r2/2."""
    space = FockSpace(m)
    states = space.states(D)
    ops = [(i, j, r2) for i in range(1, m + 1) for j in (1, 2, 3) for p in range(1, max_r2 + 1, 2) for r2 in (p, -p)]
    report = FermionReport(m, D)
    bad = None
    count = 0
    for x, y in itertools.combinations_with_replacement(ops, 2):
        delta = 1 if (x[0], x[1]) == (y[0], y[1]) and x[2] + y[2] == 0 else 0
        for mask in states:
            vec = {mask: 1}
            xy = apply_psi_vector(space, *x, apply_psi_vector(space, *y, vec))
            yx = apply_psi_vector(space, *y, apply_psi_vector(space, *x, vec))
            total = _combine((1, xy), (1, yx))
            if total != _scaled(delta, vec):
                bad = (x, y, mask)
                break
        count += 1
        if bad:
            break
    if bad:
        (x, y, mask) = bad
        name = f"{{psi_{{{x[0]},{x[1]}}}({x[2]}/2), psi_{{{y[0]},{y[1]}}}({y[2]}/2)}}"
        report.results.append(RelationResult(name, False, space.describe(mask)))
    else:
        report.results.append(RelationResult(f"anticommutators of {count} mode pairs", True))
    return report


def degree_one_vector(space: FockSpace, op: str) -> Vector:
    """op(-1) applied to the vacuum."""
    return bilinear_mode(space, op, -1, {0: 1})


def sigma_prime(space: FockSpace, s: int, vec: Vector) -> Vector:
    """sigma'_s: a sign for each fermion whose component index is ``s``."""
    out = {}
    for mask, c in vec.items():
        n = sum(1 for _, j, _ in _present(space, mask) if j == s)
        out[mask] = -c if n % 2 else c
    return out


def k_action_check(m: int) -> FermionReport:
    """sigma'_1, sigma'_2 agree with sigma_1, sigma_2 on h, e, f; sigma'_3 fixes w3."""
    space = FockSpace(m)
    vecs = {op: _to_gauss(degree_one_vector(space, op)) for op in ("h", "e", "f", "w3")}
    expected = {
        (1, "h"): ("h", 1),
        (1, "e"): ("e", -1),
        (1, "f"): ("f", -1),
        (2, "h"): ("h", -1),
        (2, "e"): ("f", 1),
        (2, "f"): ("e", 1),
        (3, "w3"): ("w3", 1),
    }
    report = FermionReport(m, 1)
    for (s, op), (target, sign) in expected.items():
        got = _to_gauss(sigma_prime(space, s, vecs[op]))
        want = _to_gauss(_scaled(sign, vecs[target]))
        name = f"sigma'_{s}({op}) = {'-' if sign < 0 else ''}{target}"
        report.results.append(RelationResult(name, got == want, None if got == want else space.describe(next(iter(got)))))
    return report


def verify_fermion(m: int = 4, D=2) -> FermionReport:
    """All fermionic checks in one report."""
    report = FermionReport(m, D)
    for part in (check_anticommutation(m, D), check_w_algebra(m, D), check_level(m, D), k_action_check(m)):
        report.results.extend(part.results)
    return report
