"""sigma_r-twisted modules realized on the untwisted spaces L(k,i).

The twisted module attached to L(k,i) is the same vector space with twisted
conformal weight ``d + q/4 + k/16``, where ``d`` is the untwisted weight and
``q`` the h^(r)-charge, and with twisted modes given by the dictionary
``e_n = e(n+1/2)``, ``f_n = f(n-1/2)``, ``h_0 = h(0) + k/2``.  Nothing new is
materialized; every quantity is a regrading of untwisted data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .affine import (
    E,
    F,
    H,
    Mode,
    _BRACKET,
    _PAIRING,
    block_rank,
    commutator,
    degree_space,
    operator_matrix,
    verma,
)
from .sl2 import GENERATORS, KLEIN, KleinElement, triple

QUARTET_TAGS = ("(0)", "(1)", "(2)", "(3)")


def conformal_weight(k: int, i: int) -> Fraction:
    """Lowest weight i(i+2)/(4(k+2)) of L(k,i)."""
    return Fraction(i * (i + 2), 4 * (k + 2))


def twisted_weight(k: int, i: int, d, q: int) -> Fraction:
    """Twisted weight of a vector of untwisted weight ``d`` and h^(r)-charge ``q``."""
    return Fraction(d) + Fraction(q, 4) + Fraction(k, 16)


def twisted_lowest_weight(k: int, i: int) -> Fraction:
    return Fraction(i * (i - k), 4 * (k + 2)) + Fraction(k, 16)


def twisted_mode(a: str, n, k: int) -> tuple[Mode, Fraction]:
    """Untwisted expression ``(mode, scalar)`` for the twisted mode ``a_n``.

    The scalar is the multiple of the identity added to the mode; it is
    nonzero only for ``h_0 = h(0) + k/2``.
    """
    n = Fraction(n)
    if a == "h":
        if n.denominator != 1:
            raise ValueError(f"h_n needs integral n, got {n}")
        return Mode("h", int(n)), (Fraction(k, 2) if n == 0 else Fraction(0))
    if a in ("e", "f"):
        if n.denominator != 2:
            raise ValueError(f"{a}_n needs n in 1/2 + Z, got {n}")
        shift = Fraction(1, 2) if a == "e" else Fraction(-1, 2)
        return Mode(a, int(n + shift)), Fraction(0)
    raise ValueError(f"unknown generator {a!r}")


def twisted_bracket_via_dictionary(a: str, m, b: str, n, k: int):
    """[a_m, b_n] computed by translating both modes and commuting untwisted modes.

    Returns ``({Mode: coeff}, scalar)`` with the twisted ``h_0`` expanded.
    """
    x, _ = twisted_mode(a, m, k)
    y, _ = twisted_mode(b, n, k)
    modes, central = commutator(x, y, k)
    return modes, Fraction(central)


def twisted_bracket_borcherds(a: str, m, b: str, n, k: int):
    """[a_m, b_n] from the twisted commutator formula with period 2.

    Uses (a_0 b) = [a,b] and (a_1 b) = <a,b> k 1; the result's ``h_p`` modes
    are then expanded through :func:`twisted_mode`.
    """
    m, n = Fraction(m), Fraction(n)
    ga, gb = GENERATORS.index(a), GENERATORS.index(b)
    modes: dict = {}
    scalar = Fraction(0)
    for gc, c in _BRACKET.get((ga, gb), ()):
        md, s = twisted_mode(GENERATORS[gc], m + n, k)
        modes[md] = modes.get(md, 0) + c
        scalar += c * s
    pair = _PAIRING.get((ga, gb), 0)
    if pair and m + n == 0:
        # binom(m, 1) (a_1 b)_{m+n-1}, and 1_{-1} = id
        scalar += m * pair * k
    return {md: c for md, c in modes.items() if c}, scalar


def stabilizer(k: int, i: int, r: int) -> tuple[KleinElement, ...]:
    """Subgroup of K fixing the sigma_r-twisted module built on L(k,i)."""
    if r not in (1, 2, 3):
        raise ValueError(r)
    if k % 2 == 0 and 2 * i == k:
        return KLEIN
    return (KleinElement(0), KleinElement(r))


def h0_top_eigenvalue(k: int, i: int) -> int | Fraction:
    """Eigenvalue of the twisted h_0 on v^{i,i}: -i + k/2."""
    return Fraction(k, 2) - i


# --- h^(r)-charge spectra ---------------------------------------------------------


def adapted_charge_dims(k: int, i: int, d: int, r: int) -> dict[int, int]:
    """Multiplicities of h^(r)(0) eigenvalues on the degree-``d`` piece of L(k,i).

    r = 1 reads Gram ranks directly.  For r = 2, 3 the operator h^(r)(0) is
    built on the standard PBW basis and multiplicities come from
    ``rank(G) - rank(G (X - lambda))``.
    """
    mod = verma(k, i)
    if r == 1:
        return {q: n for q in mod.charges(d) if (n := block_rank(k, i, d, q))}
    basis, g = degree_space(k, i, d)
    hr = triple(r)[0]
    images = [mod.act_element(hr, 0, {b: 1}) for b in basis]
    x = operator_matrix(images, basis)
    total = linalg.rank(g)
    out = {}
    seen = 0
    for lam in mod.charges(d):
        if seen == total:
            break
        shifted = linalg.sub(x, linalg.scale(linalg.identity(len(basis)), lam))
        mult = total - linalg.rank(linalg.matmul(g, shifted))
        if mult:
            out[lam] = mult
            seen += mult
    return out


def twisted_cells(k: int, i: int, r: int, D: int) -> dict[Fraction, int]:
    """Dimensions of twisted weight spaces, keyed by offset above v^{r,i,i}.

    Only offsets ``t`` with ``2t <= D`` are complete at untwisted depth ``D``
    and only those are reported.
    """
    cells: dict[Fraction, int] = {}
    for d in range(D + 1):
        for q, n in adapted_charge_dims(k, i, d, r).items():
            t = d + Fraction(q + i, 4)
            if 2 * t <= D:
                cells[t] = cells.get(t, 0) + n
    return dict(sorted(cells.items()))


# --- the i = k/2 Klein action ------------------------------------------------------


def _mid_phi2_image(k: int, i: int, basis_vec: tuple) -> dict:
    """phi(sigma_2) on the sigma_1-twisted module at i = k/2.

    Fixes v^{i,i}; conjugation sends e(m) -> f(m-1), f(m) -> e(m+1),
    h(n) -> -h(n) - k delta_{n,0}.
    """
    mod = verma(k, i)
    mono, j = basis_vec
    vec: dict = {((), i): Fraction(1, factorial(i - j))}
    # v^{i,j} = e(0)^{i-j} v^{i,i} / (i-j)!  and  e(0) -> f(-1)
    for _ in range(i - j):
        vec = mod.act((-1, F), vec)
    for n, g in reversed(mono):
        if g == E:
            vec = mod.act((n - 1, F), vec)
        elif g == F:
            vec = mod.act((n + 1, E), vec)
        else:
            vec = {key: -c for key, c in mod.act((n, H), vec).items()}
    return vec


def _cell_basis(k: int, i: int, t: Fraction) -> list[tuple]:
    mod = verma(k, i)
    out = []
    for d in range(int(2 * t) + 1):
        q4 = 4 * (t - d) - i
        if q4.denominator != 1:
            continue
        q = int(q4)
        if abs(q) <= i + 2 * d:
            out.extend(mod.basis(d, q))
    return out


def _cell_gram(k: int, i: int, basis: list[tuple]) -> list[list]:
    mod = verma(k, i)
    n = len(basis)
    g = linalg.zeros(n, n)
    for s in range(n):
        for t in range(s, n):
            a, b = basis[s], basis[t]
            if sum(m for m, _ in a[0]) != sum(m for m, _ in b[0]) or mod.charge(*a) != mod.charge(*b):
                continue
            val = mod.form(a, b)
            g[s][t] = g[t][s] = val
    return g


@dataclass(frozen=True)
class MidCell:
    offset: Fraction
    plus: int
    minus: int
    total: int
    involutive: bool


def mid_cell_split(k: int, t: Fraction) -> MidCell:
    """Split the offset-``t`` cell of the sigma_1-twisted L(k,k/2) by phi(sigma_2)."""
    if k % 2:
        raise ValueError("mid-point twisted modules need even k")
    i = k // 2
    basis = _cell_basis(k, i, t)
    if not basis:
        return MidCell(t, 0, 0, 0, True)
    g = _cell_gram(k, i, basis)
    m = operator_matrix([_mid_phi2_image(k, i, b) for b in basis], basis)
    n = len(basis)
    ident = linalg.identity(n)
    involutive = linalg.is_zero(linalg.matmul(g, linalg.sub(linalg.matmul(m, m), ident)))
    plus = linalg.rank(linalg.matmul(g, linalg.add(ident, m)))
    minus = linalg.rank(linalg.matmul(g, linalg.sub(ident, m)))
    return MidCell(t, plus, minus, linalg.rank(g), involutive)


# --- component tables --------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TwistedComponentLabel:
    k: int
    i: int
    r: int
    tag: str

    def __post_init__(self):
        mid = self.k % 2 == 0 and 2 * self.i == self.k
        if self.tag in QUARTET_TAGS and not mid:
            raise ValueError("quartet tags need even k and i = k/2")
        if self.tag not in QUARTET_TAGS + ("+", "-"):
            raise ValueError(f"bad tag {self.tag!r}")

    def __str__(self):
        return f"bar-L({self.k},{self.i})^{{sigma_{self.r},{self.tag}}}"


def twisted_component_dims(k: int, i: int, r: int, D: int) -> dict[TwistedComponentLabel, dict[Fraction, int]]:
    """Twisted weight -> dimension for each irreducible component.

    Keys of the inner tables are absolute twisted conformal weights.  For
    ``i != k/2`` the components are the integral and half-integral offsets
    (generated by v^{r,i,i} and f^(r)_{-1/2} v^{r,i,i}).  At ``i = k/2`` each is
    split further by phi(sigma_2); that split is computed in the sigma_1 picture
    and transported to r = 2, 3 by the inner automorphism relating the triples.
    """
    if not 0 <= i <= k:
        raise ValueError("need 0 <= i <= k")
    base = twisted_lowest_weight(k, i)
    cells = twisted_cells(k, i, r, D)
    mid = k % 2 == 0 and 2 * i == k
    out: dict[TwistedComponentLabel, dict[Fraction, int]] = {}
    if not mid:
        for tag in ("+", "-"):
            out[TwistedComponentLabel(k, i, r, tag)] = {}
        for t, n in cells.items():
            tag = "+" if t.denominator == 1 else "-"
            out[TwistedComponentLabel(k, i, r, tag)][base + t] = n
        return out
    for tag in QUARTET_TAGS:
        out[TwistedComponentLabel(k, i, r, tag)] = {}
    for t, n in cells.items():
        split = mid_cell_split(k, t)
        if split.total != n:
            raise ArithmeticError(f"cell size mismatch at offset {t}: {split.total} vs {n}")
        even = t.denominator == 1
        plus_tag, minus_tag = ("(0)", "(1)") if even else ("(2)", "(3)")
        if split.plus:
            out[TwistedComponentLabel(k, i, r, plus_tag)][base + t] = split.plus
        if split.minus:
            out[TwistedComponentLabel(k, i, r, minus_tag)][base + t] = split.minus
    return out


def lowest_weights(table: dict[TwistedComponentLabel, dict[Fraction, int]]) -> dict[str, Fraction]:
    return {lab.tag: min(cells) for lab, cells in table.items() if cells}


def orbit_partner(k: int, i: int) -> int:
    """Twisted modules built on L(k,i) and L(k,k-i) agree as orbifold modules."""
    return k - i
