"""sl2, its three adapted triples, the Klein four-group and the phi-maps.

The standard basis of the (i+1)-dimensional module L(i alpha/2) is
``v^{i,j}``, ``0 <= j <= i``, with::

    h v^{i,j} = (i-2j) v^{i,j}
    e v^{i,j} = (i-j+1) v^{i,j-1}
    f v^{i,j} = (j+1) v^{i,j+1}

Vectors in the r-adapted bases ``v^{r,i,j}`` obey the same formulas for the
triple ``(h^(r), e^(r), f^(r))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .scalars import I, GaussRational, to_gauss

GENERATORS = ("h", "e", "f")


@dataclass(frozen=True)
class Sl2Element:
    """``h*h + e*e + f*f`` in the standard basis."""

    h: object = 0
    e: object = 0
    f: object = 0

    def coeffs(self) -> tuple:
        return (self.h, self.e, self.f)

    def __add__(self, other: Sl2Element) -> Sl2Element:
        return Sl2Element(self.h + other.h, self.e + other.e, self.f + other.f)

    def __sub__(self, other: Sl2Element) -> Sl2Element:
        return Sl2Element(self.h - other.h, self.e - other.e, self.f - other.f)

    def __neg__(self) -> Sl2Element:
        return Sl2Element(-self.h, -self.e, -self.f)

    def __mul__(self, c) -> Sl2Element:
        return Sl2Element(c * self.h, c * self.e, c * self.f)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Sl2Element):
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs(), other.coeffs()))

    def __hash__(self):
        return hash(self.coeffs())


H = Sl2Element(1, 0, 0)
E = Sl2Element(0, 1, 0)
F = Sl2Element(0, 0, 1)
BASIS = {"h": H, "e": E, "f": F}


def bracket(a: Sl2Element, b: Sl2Element) -> Sl2Element:
    """Lie bracket from [h,e]=2e, [h,f]=-2f, [e,f]=h."""
    return Sl2Element(
        a.e * b.f - a.f * b.e,
        2 * (a.h * b.e - a.e * b.h),
        -2 * (a.h * b.f - a.f * b.h),
    )


def killing(a: Sl2Element, b: Sl2Element):
    """Normalized invariant form: <h,h> = 2, <e,f> = 1."""
    return 2 * a.h * b.h + a.e * b.f + a.f * b.e


def is_sl2_triple(h: Sl2Element, e: Sl2Element, f: Sl2Element) -> bool:
    return bracket(h, e) == 2 * e and bracket(h, f) == -2 * f and bracket(e, f) == h


def triple(r: int) -> tuple[Sl2Element, Sl2Element, Sl2Element]:
    """The sl2-triple adapted to sigma_r."""
    half = Fraction(1, 2)
    if r == 1:
        return H, E, F
    if r == 2:
        return (
            Sl2Element(0, 1, 1),
            Sl2Element(half, -half, half),
            Sl2Element(half, half, -half),
        )
    if r == 3:
        return (
            Sl2Element(0, I, -I),
            Sl2Element(I * half, half, half),
            Sl2Element(-I * half, half, half),
        )
    raise ValueError(f"triple index must be 1, 2 or 3, got {r}")


# --- Klein four-group ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class KleinElement:
    r: int

    def __post_init__(self):
        if self.r not in (0, 1, 2, 3):
            raise ValueError(f"Klein element index must be in 0..3, got {self.r}")

    def __mul__(self, other: KleinElement) -> KleinElement:
        return KleinElement(self.r ^ other.r)

    def __str__(self):
        return f"sigma_{self.r}"


KLEIN = tuple(KleinElement(r) for r in range(4))

# characters chi_0..chi_3 evaluated on sigma_0..sigma_3
CHARACTER_TABLE = (
    (1, 1, 1, 1),
    (1, 1, -1, -1),
    (1, -1, 1, -1),
    (1, -1, -1, 1),
)


def character_of(s1: int, s2: int) -> int:
    """Index l of the character with chi_l(sigma_1) = s1, chi_l(sigma_2) = s2."""
    for idx, row in enumerate(CHARACTER_TABLE):
        if row[1] == s1 and row[2] == s2:
            return idx
    raise ValueError((s1, s2))


def sigma(r, a: Sl2Element) -> Sl2Element:
    """Action of sigma_r on sl2."""
    r = r.r if isinstance(r, KleinElement) else r
    if r == 0:
        return a
    if r == 1:
        return Sl2Element(a.h, -a.e, -a.f)
    if r == 2:
        return Sl2Element(-a.h, a.f, a.e)
    if r == 3:
        return sigma(1, sigma(2, a))
    raise ValueError(r)


def sigma_generator(r: int, g: str) -> list[tuple[str, int]]:
    """sigma_r of a basis element, as (generator, sign) pairs; all signed permutations."""
    img = sigma(r, BASIS[g])
    return [(name, c) for name, c in zip(GENERATORS, img.coeffs()) if c]


# --- finite-dimensional modules -----------------------------------------------


@dataclass(frozen=True)
class FinModuleVector:
    """Vector of L(i alpha/2) with coefficients on v^{i,0..i} (or v^{r,i,0..i})."""

    i: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        bad = [j for j in self.coefficients if not 0 <= j <= self.i]
        if bad:
            raise ValueError(f"basis index out of range 0..{self.i}: {bad}")

    def as_list(self) -> list:
        return [self.coefficients.get(j, 0) for j in range(self.i + 1)]

    @classmethod
    def from_list(cls, i: int, values) -> FinModuleVector:
        return cls(i, {j: c for j, c in enumerate(values) if c})

    def __eq__(self, other):
        if not isinstance(other, FinModuleVector):
            return NotImplemented
        return self.i == other.i and self.as_list() == other.as_list()

    def __hash__(self):
        return hash((self.i, tuple(self.as_list())))


def generator_matrix(g: str, i: int) -> list[list]:
    """Matrix of h, e or f acting on the standard basis of L(i alpha/2)."""
    m = linalg.zeros(i + 1, i + 1)
    for j in range(i + 1):
        if g == "h":
            m[j][j] = i - 2 * j
        elif g == "e":
            if j >= 1:
                m[j - 1][j] = i - j + 1
        elif g == "f":
            if j < i:
                m[j + 1][j] = j + 1
        else:
            raise ValueError(g)
    return m


def element_matrix(a: Sl2Element, i: int) -> list[list]:
    out = linalg.zeros(i + 1, i + 1)
    for g, c in zip(GENERATORS, a.coeffs()):
        if c:
            out = linalg.add(out, linalg.scale(generator_matrix(g, i), c))
    return out


def _triple_coordinates(a: Sl2Element, r: int) -> tuple:
    """Coordinates of ``a`` in the basis (h^(r), e^(r), f^(r))."""
    if r == 1:
        return a.coeffs()
    t = triple(r)
    m = [[t[c].coeffs()[row] for c in range(3)] for row in range(3)]
    inv = linalg.inverse([[to_gauss(x) for x in row] for row in m])
    return tuple(linalg.matvec(inv, list(a.coeffs())))


def zero_mode_act(a: Sl2Element, v: FinModuleVector, r: int = 1) -> FinModuleVector:
    """a(0) v, with v given on the r-adapted basis v^{r,i,j}."""
    coords = _triple_coordinates(a, r)
    m = linalg.zeros(v.i + 1, v.i + 1)
    for g, c in zip(GENERATORS, coords):
        if c:
            m = linalg.add(m, linalg.scale(generator_matrix(g, v.i), c))
    return FinModuleVector.from_list(v.i, linalg.matvec(m, v.as_list()))


def top_vector(r: int, i: int) -> list:
    """v^{r,i,i} on the standard basis."""
    if r == 1:
        return [1 if j == i else 0 for j in range(i + 1)]
    if r == 2:
        return [(-1) ** j for j in range(i + 1)]
    if r == 3:
        return [I**j for j in range(i + 1)]
    raise ValueError(r)


def triple_basis(r: int, i: int) -> list[list]:
    """Matrix whose column j is v^{r,i,j} written on the standard basis."""
    er = element_matrix(triple(r)[1], i)
    cols = [None] * (i + 1)
    cols[i] = top_vector(r, i)
    for j in range(i, 0, -1):
        img = linalg.matvec(er, cols[j])
        cols[j - 1] = [Fraction(1, i - j + 1) * x for x in img]
    return linalg.transpose(cols)


def phi(r, i: int) -> list[list]:
    """Matrix of phi(sigma_r) on the standard basis of L(i alpha/2)."""
    r = r.r if isinstance(r, KleinElement) else r
    m = linalg.zeros(i + 1, i + 1)
    for j in range(i + 1):
        if r == 0:
            m[j][j] = 1
        elif r == 1:
            m[j][j] = (-1) ** j
        elif r == 2:
            m[i - j][j] = 1
        elif r == 3:
            m[i - j][j] = (-1) ** (i - j)
        else:
            raise ValueError(r)
    return m


def phi_image(r: int, i: int, j: int) -> tuple[int, int]:
    """phi(sigma_r) v^{i,j} = sign * v^{i,j'}; returns (j', sign)."""
    if r == 0:
        return j, 1
    if r == 1:
        return j, (-1) ** j
    if r == 2:
        return i - j, 1
    if r == 3:
        return i - j, (-1) ** (i - j)
    raise ValueError(r)
