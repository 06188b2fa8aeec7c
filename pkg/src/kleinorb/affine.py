"""Generalized Verma modules of affine sl2 and their irreducible quotients.

A vector of the generalized Verma module induced from L(i alpha/2) at level
``k`` is a linear combination of PBW monomials in creation modes applied to a
top vector ``v^{i,j}``.  Monomials are stored as sorted tuples of
``(n, g)`` pairs with ``g`` the generator index (0=h, 1=e, 2=f); sorting puts
the most negative mode on the left and breaks ties h < e < f.

Graded dimensions of the irreducible L(k,i) are ranks of the contravariant
form restricted to each (degree, h-charge) weight space.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, NamedTuple

from . import linalg
from .cache import RankCache, default_cache
from .sl2 import GENERATORS, Sl2Element, character_of, phi_image, triple

H, E, F = 0, 1, 2
CHARGE = (0, 2, -2)
ADJOINT = (H, F, E)

# [a, b] = sum c * g  and  <a, b>
_BRACKET = {
    (H, E): ((E, 2),),
    (E, H): ((E, -2),),
    (H, F): ((F, -2),),
    (F, H): ((F, 2),),
    (E, F): ((H, 1),),
    (F, E): ((H, -1),),
}
_PAIRING = {(H, H): 2, (E, F): 1, (F, E): 1}


class Mode(NamedTuple):
    """The operator ``generator(n)``; it has degree ``-n``."""

    generator: str
    n: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, GENERATORS.index(self.generator))

    @property
    def degree(self) -> int:
        return -self.n

    def __str__(self):
        return f"{self.generator}({self.n})"


def mode(g: str, n: int) -> tuple[int, int]:
    return (n, GENERATORS.index(g))


def commutator(x, y, k):
    """``[a(m), b(n)]`` as ``({Mode: coeff}, central scalar)``.

    ``x`` and ``y`` may be :class:`Mode` objects or raw ``(n, g)`` keys.
    """
    xn, xg = x.key if isinstance(x, Mode) else x
    yn, yg = y.key if isinstance(y, Mode) else y
    modes = {
        Mode(GENERATORS[g], xn + yn): c for g, c in _BRACKET.get((xg, yg), ())
    }
    central = xn * _PAIRING.get((xg, yg), 0) * k if xn + yn == 0 else 0
    return modes, central


def monomial_str(mono: tuple, j: int) -> str:
    body = "".join(f"{GENERATORS[g]}({n})" for n, g in mono)
    return f"{body}v[{j}]"


def _add_into(acc: dict, src: dict, c) -> None:
    for key, val in src.items():
        nv = acc.get(key, 0) + c * val
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)


class GeneralizedVerma:
    """Induced module U(affine sl2) (x) L(i alpha/2) at level ``k``.

    Integer structure constants keep all action coefficients integral; the
    memo tables make repeated normal-ordering cheap.
    """

    def __init__(self, k: int, i: int):
        if k < 1:
            raise ValueError(f"level must be positive, got {k}")
        if not 0 <= i:
            raise ValueError(f"top index must be nonnegative, got {i}")
        self.k = k
        self.i = i
        self._memo: dict = {}
        self._monos: dict[int, list[tuple]] = {0: [()]}
        self._lock = threading.Lock()

    # --- action --------------------------------------------------------------

    def apply(self, x: tuple[int, int], mono: tuple, j: int) -> dict:
        """``x`` applied to the basis vector ``mono v^{i,j}``, in PBW form."""
        key = (x, mono, j)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._apply(x, mono, j)
        self._memo[key] = res
        return res

    def _apply(self, x, mono, j) -> dict:
        n, g = x
        i = self.i
        if not mono:
            if n < 0:
                return {((x,), j): 1}
            if n > 0:
                return {}
            if g == H:
                c = i - 2 * j
                return {((), j): c} if c else {}
            if g == E:
                return {((), j - 1): i - j + 1} if j >= 1 else {}
            return {((), j + 1): j + 1} if j < i else {}
        y = mono[0]
        if n < 0 and x <= y:
            return {((x,) + mono, j): 1}
        rest = mono[1:]
        out: dict = {}
        # x y R = y (x R) + [x, y] R
        for (m2, j2), c in self.apply(x, rest, j).items():
            _add_into(out, self.apply(y, m2, j2), c)
        yn, yg = y
        for gc, cc in _BRACKET.get((g, yg), ()):
            _add_into(out, self.apply((n + yn, gc), rest, j), cc)
        if n + yn == 0:
            pair = _PAIRING.get((g, yg), 0)
            if pair:
                _add_into(out, {(rest, j): 1}, n * pair * self.k)
        return out

    def act(self, x, vec: dict) -> dict:
        """Apply a mode (``Mode`` or ``(n, g)``) to a vector ``{(mono, j): coeff}``."""
        if isinstance(x, Mode):
            x = x.key
        out: dict = {}
        for (mono, j), c in vec.items():
            _add_into(out, self.apply(x, mono, j), c)
        return out

    def act_element(self, a: Sl2Element, n: int, vec: dict) -> dict:
        """``a(n)`` for a general sl2 element ``a``."""
        out: dict = {}
        for g, c in enumerate(a.coeffs()):
            if c:
                _add_into(out, self.act((n, g), vec), c)
        return out

    # --- bases ---------------------------------------------------------------

    def monomials(self, d: int) -> list[tuple]:
        """All sorted creation monomials of total degree ``d``."""
        if d in self._monos:
            return self._monos[d]
        out = []

        def rec(remaining: int, max_key: tuple, acc: list):
            if remaining == 0:
                out.append(tuple(acc))
                return
            # next mode must be >= previous one in the sort order
            for n in range(-remaining, 0):
                for g in (H, E, F):
                    key = (n, g)
                    if max_key is not None and key < max_key:
                        continue
                    acc.append(key)
                    rec(remaining + n, key, acc)
                    acc.pop()

        rec(d, None, [])
        self._monos[d] = sorted(out)
        return self._monos[d]

    def charge(self, mono: tuple, j: int) -> int:
        return sum(CHARGE[g] for _, g in mono) + self.i - 2 * j

    def basis(self, d: int, q: int | None = None) -> list[tuple]:
        """PBW basis of the degree-``d`` space, restricted to h-charge ``q`` if given."""
        out = []
        for mono in self.monomials(d):
            c0 = sum(CHARGE[g] for _, g in mono)
            for j in range(self.i + 1):
                if q is None or c0 + self.i - 2 * j == q:
                    out.append((mono, j))
        return out

    def charges(self, d: int) -> list[int]:
        top = self.i + 2 * d
        return list(range(-top, top + 1, 2))

    # --- contravariant form -------------------------------------------------

    def top_norm(self, j: int) -> int:
        return comb(self.i, j)

    def lower(self, mono: tuple, vec: dict) -> dict:
        """Apply the adjoint of ``mono`` to ``vec`` (leftmost factor first)."""
        for n, g in mono:
            vec = self.act((-n, ADJOINT[g]), vec)
            if not vec:
                break
        return vec

    def form(self, a: tuple, b: tuple) -> int:
        """``<mono_a v^{i,ja}, mono_b v^{i,jb}>``."""
        mono_a, ja = a
        res = self.lower(mono_a, {b: 1})
        return res.get(((), ja), 0) * self.top_norm(ja)

    def gram(self, basis: list[tuple]) -> list[list[int]]:
        n = len(basis)
        g = linalg.zeros(n, n)
        for s in range(n):
            mono_a, ja = basis[s]
            for t in range(s, n):
                res = self.lower(mono_a, {basis[t]: 1})
                val = res.get(((), ja), 0) * self.top_norm(ja)
                g[s][t] = val
                g[t][s] = val
        return g

    def pair_vectors(self, u: dict, w: dict):
        """Bilinear pairing of two arbitrary vectors."""
        total = 0
        for a, ca in u.items():
            for b, cb in w.items():
                val = self.form(a, b)
                if val:
                    total = total + ca * cb * val
        return total


@lru_cache(maxsize=None)
def verma(k: int, i: int) -> GeneralizedVerma:
    return GeneralizedVerma(k, i)


# --- vector wrapper -------------------------------------------------------------


@dataclass
class PBWVector:
    """A vector of the generalized Verma module at level ``k`` on L(i alpha/2)."""

    k: int
    i: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def top(cls, k: int, i: int, j: int) -> PBWVector:
        return cls(k, i, {((), j): 1})

    def module(self) -> GeneralizedVerma:
        return verma(self.k, self.i)

    def apply(self, x) -> PBWVector:
        return PBWVector(self.k, self.i, self.module().act(x, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: PBWVector) -> PBWVector:
        out = dict(self.terms)
        _add_into(out, other.terms, 1)
        return PBWVector(self.k, self.i, out)

    def __sub__(self, other: PBWVector) -> PBWVector:
        out = dict(self.terms)
        _add_into(out, other.terms, -1)
        return PBWVector(self.k, self.i, out)

    def __rmul__(self, c) -> PBWVector:
        return PBWVector(self.k, self.i, {key: c * v for key, v in self.terms.items() if v and c})

    def __eq__(self, other):
        if not isinstance(other, PBWVector):
            return NotImplemented
        return (self.k, self.i) == (other.k, other.i) and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{monomial_str(m, j)}" for (m, j), c in sorted(self.terms.items()))


def act(x, v: PBWVector) -> PBWVector:
    return v.apply(x)


# --- Gram blocks and graded dimensions ------------------------------------------


@dataclass(frozen=True)
class GramBlock:
    k: int
    i: int
    d: int
    q: int
    basis: tuple
    matrix: tuple

    @property
    def size(self) -> int:
        return len(self.basis)

    def rank(self) -> int:
        return linalg.rank([list(r) for r in self.matrix])


def gram_block(k: int, i: int, d: int, q: int) -> GramBlock:
    if d < 0:
        raise ValueError("degree must be nonnegative")
    mod = verma(k, i)
    basis = mod.basis(d, q)
    mat = mod.gram(basis)
    return GramBlock(k, i, d, q, tuple(basis), tuple(tuple(r) for r in mat))


def block_rank(k: int, i: int, d: int, q: int, cache: RankCache | None = None) -> int:
    if (q - i) % 2:
        return 0
    cache = cache if cache is not None else default_cache()
    if cache is not None:
        hit = cache.get(k, i, d, q)
        if hit is not None:
            return hit
    r = gram_block(k, i, d, q).rank()
    if cache is not None:
        cache.put(k, i, d, q, r)
    return r


def _check_integrable(k: int, i: int) -> None:
    if k < 1:
        raise ValueError(f"level must be positive, got {k}")
    if not 0 <= i <= k:
        raise ValueError(f"L({k},{i}) is not integrable: need 0 <= i <= k")


def irreducible_graded_dims(k: int, i: int, D: int, cache: RankCache | None = None) -> dict:
    """``{(d, q): dim L(k,i)_(d,q)}`` for ``0 <= d <= D``; zero entries omitted."""
    _check_integrable(k, i)
    out = {}
    mod = verma(k, i)
    for d in range(D + 1):
        for q in mod.charges(d):
            r = block_rank(k, i, d, q, cache)
            if r:
                out[(d, q)] = r
    return out


def degree_totals(dims: dict, D: int) -> list[int]:
    tot = [0] * (D + 1)
    for (d, _), n in dims.items():
        tot[d] += n
    return tot


# --- Klein-group action on the induced module ----------------------------------


def _sigma_mode(r: int, key: tuple) -> tuple[tuple, int]:
    n, g = key
    if r == 1:
        return key, (1 if g == H else -1)
    if r == 2:
        return (n, (H, F, E)[g]), (-1 if g == H else 1)
    raise ValueError(r)


def klein_image(k: int, i: int, r: int, basis_vec: tuple) -> dict:
    """Phi(sigma_r) on a PBW basis vector: sigma_r on modes, phi(sigma_r) on the top.

    sigma_3 is computed as the composite sigma_1 sigma_2.
    """
    mod = verma(k, i)
    mono, j = basis_vec
    if r == 0:
        return {basis_vec: 1}
    if r == 3:
        out: dict = {}
        for v, c in klein_image(k, i, 2, basis_vec).items():
            _add_into(out, klein_image(k, i, 1, v), c)
        return out
    if r == 1:
        sign = (-1) ** sum(1 for _, g in mono if g != H)
        jj, s = phi_image(1, i, j)
        return {(mono, jj): sign * s}
    jj, s = phi_image(2, i, j)
    vec = {((), jj): s}
    for x in reversed(mono):
        y, sgn = _sigma_mode(2, x)
        vec = {key: sgn * c for key, c in mod.act(y, vec).items()}
    return vec


def operator_matrix(images: list[dict], basis: list[tuple]) -> list[list]:
    """Columns are the images, expressed on ``basis``."""
    index = {b: n for n, b in enumerate(basis)}
    m = linalg.zeros(len(basis), len(images))
    for col, img in enumerate(images):
        for key, c in img.items():
            m[index[key]][col] = c
    return m


def degree_space(k: int, i: int, d: int) -> tuple[list[tuple], list[list[int]]]:
    """Full degree-``d`` PBW basis (all charges) and its block-diagonal Gram matrix."""
    mod = verma(k, i)
    basis: list[tuple] = []
    blocks = []
    for q in mod.charges(d):
        b = mod.basis(d, q)
        if b:
            blocks.append((len(basis), mod.gram(b)))
            basis.extend(b)
    n = len(basis)
    g = linalg.zeros(n, n)
    for off, blk in blocks:
        for s, row in enumerate(blk):
            g[off + s][off : off + len(row)] = row
    return basis, g


def klein_matrix(k: int, i: int, d: int, r: int, basis: list[tuple] | None = None) -> list[list]:
    if basis is None:
        basis = verma(k, i).basis(d)
    return operator_matrix([klein_image(k, i, r, b) for b in basis], basis)


def _projector(mats: list[list[list]], signs: list[int], n: int) -> list[list]:
    p = linalg.identity(n)
    for m, s in zip(mats, signs):
        p = linalg.matmul(p, linalg.add(linalg.identity(n), linalg.scale(m, s)))
    return p


ISOTYPIC_LABELS = ("chi0", "chi1", "chi2", "chi3")


def isotypic_at_degree(k: int, i: int, d: int) -> dict[str, int]:
    """Klein-isotypic dimensions of the degree-``d`` piece of L(k,i).

    Keys are 'chi0'..'chi3' for even ``i`` and the sigma_1 eigenvalues '+', '-'
    for odd ``i``, where the action is only projective.
    """
    _check_integrable(k, i)
    basis, g = degree_space(k, i, d)
    n = len(basis)
    phi1 = klein_matrix(k, i, d, 1, basis)
    if i % 2:
        return {
            tag: linalg.rank(linalg.matmul(g, _projector([phi1], [s], n))) if n else 0
            for s, tag in ((1, "+"), (-1, "-"))
        }
    phi2 = klein_matrix(k, i, d, 2, basis)
    out = {}
    for s1 in (1, -1):
        for s2 in (1, -1):
            label = ISOTYPIC_LABELS[character_of(s1, s2)]
            p = _projector([phi1, phi2], [s1, s2], n)
            out[label] = linalg.rank(linalg.matmul(g, p)) if n else 0
    return dict(sorted(out.items()))


def k_isotypic_dims(k: int, i: int, D: int) -> dict:
    """``{(d, tag): dim}`` for ``0 <= d <= D``; tags as in :func:`isotypic_at_degree`."""
    return {(d, tag): n for d in range(D + 1) for tag, n in isotypic_at_degree(k, i, d).items()}


def radical_basis(g: list[list]) -> list[list]:
    return linalg.nullspace(g, len(g))


def klein_preserves_radical(k: int, i: int, d: int, r: int) -> bool:
    basis, g = degree_space(k, i, d)
    if not basis:
        return True
    m = klein_matrix(k, i, d, r, basis)
    rad = radical_basis(g)
    if not rad:
        return True
    return linalg.is_zero(linalg.matmul(g, linalg.matmul(m, linalg.transpose(rad))))


# --- generator-set check for the Z2 orbifolds -----------------------------------


class IncrementalSpan:
    """Row-echelon accumulator that reports whether a vector is new."""

    def __init__(self):
        self.rows: list[tuple[int, list]] = []

    def add(self, v: list) -> bool:
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        piv = next((n for n, c in enumerate(v) if c), None)
        if piv is None:
            return False
        inv = 1 / Fraction(v[piv]) if isinstance(v[piv], int) else 1 / v[piv]
        v = [a * inv for a in v]
        new_rows = []
        for p, row in self.rows:
            c = row[piv]
            if c:
                row = [a - c * b for a, b in zip(row, v)]
            new_rows.append((p, row))
        new_rows.append((piv, v))
        self.rows = new_rows
        return True

    def __len__(self):
        return len(self.rows)


def _vector_degree(vec: dict) -> int:
    mono, _ = next(iter(vec))
    return -sum(n for n, _ in mono)


def _quadratic_mode(mod: GeneralizedVerma, a: Sl2Element, n: int, vec: dict) -> dict:
    """n-th mode of the field for ``a(-1)^2 1``, valid when a(m) commute and <a,a> = 0."""
    if not vec:
        return {}
    deg = _vector_degree(vec)
    out: dict = {}
    for b in range(n - 1 - deg, deg + 1):
        first = mod.act_element(a, b, vec)
        if first:
            _add_into(out, mod.act_element(a, n - 1 - b, first), 1)
    return out


def sugawara_mode(mod: GeneralizedVerma, p: int, vec: dict) -> dict:
    """L(p) = 1/(2(k+2)) sum_b :x(b) x*(p-b):, with x* the dual basis under <,>."""
    if not vec:
        return {}
    deg = _vector_degree(vec)
    out: dict = {}
    pairs = ((H, H, Fraction(1, 2)), (E, F, 1), (F, E, 1))
    for b in range(p - deg, deg + 1):
        c = p - b
        for x, y, w in pairs:
            if b < 0:
                img = mod.act((b, x), mod.act((c, y), vec))
            else:
                img = mod.act((c, y), mod.act((b, x), vec))
            _add_into(out, img, w)
    scale = Fraction(1, 2 * (mod.k + 2))
    return {key: v * scale for key, v in out.items()}


@dataclass
class GeneratorReport:
    k: int
    r: int
    D: int
    fixed: bool
    fixed_dims: list[int]
    generated_dims: list[int]

    @property
    def ok(self) -> bool:
        return self.fixed and self.fixed_dims == self.generated_dims


def fixed_subspace_dims(k: int, i: int, r: int, D: int) -> list[int]:
    """Dimensions of the sigma_r-fixed subspace of L(k,i) by degree."""
    dims = []
    for d in range(D + 1):
        basis, g = degree_space(k, i, d)
        n = len(basis)
        mats = {1: [klein_matrix(k, i, d, 1, basis)], 2: [klein_matrix(k, i, d, 2, basis)]}
        mats[3] = [linalg.matmul(mats[1][0], mats[2][0])]
        p = _projector(mats[r], [1], n)
        dims.append(linalg.rank(linalg.matmul(g, p)))
    return dims


def _split_by_degree(vec: dict) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for (mono, j), c in vec.items():
        d = -sum(n for n, _ in mono)
        out.setdefault(d, {})[(mono, j)] = c
    return out


def verify_fixed_generators(
    k: int, r: int, D: int, slack: int = 2, with_conformal: bool = False
) -> GeneratorReport:
    """Check that h^(r)(-1)1, e^(r)(-1)^2 1, f^(r)(-1)^2 1 generate L(k,0)^<sigma_r> up to degree D.

    The closure under generator modes is computed through degree ``D + slack``
    because some low-degree vectors are only reached by descending from above.
    ``with_conformal`` adds the Sugawara vector to the generating set.
    """
    if r not in (1, 2, 3):
        raise ValueError(r)
    top = D + slack
    mod = verma(k, 0)
    hr, er, fr = triple(r)
    vac = {((), 0): 1}
    gens = [
        mod.act_element(hr, -1, vac),
        _quadratic_mode(mod, er, -1, vac),
        _quadratic_mode(mod, fr, -1, vac),
    ]
    spaces = [degree_space(k, 0, d) for d in range(top + 1)]
    mats = []
    for d, (basis, _) in enumerate(spaces[: D + 1]):
        m1 = klein_matrix(k, 0, d, 1, basis)
        m2 = klein_matrix(k, 0, d, 2, basis)
        mats.append({1: m1, 2: m2, 3: linalg.matmul(m1, m2)})

    def coords(d, vec):
        basis = spaces[d][0]
        index = {b: n for n, b in enumerate(basis)}
        v = [0] * len(basis)
        for key, c in vec.items():
            v[index[key]] = c
        return v

    fixed = True
    for gvec in gens:
        for d, part in _split_by_degree(gvec).items():
            v = coords(d, part)
            img = linalg.matvec(mats[d][r], v)
            if any(a != b for a, b in zip(img, v)):
                fixed = False

    def apply_generator(idx, n, vec):
        if idx == 0:
            return mod.act_element(hr, n, vec)
        if idx == 3:
            return sugawara_mode(mod, n - 1, vec)
        return _quadratic_mode(mod, (er, fr)[idx - 1], n, vec)

    weights = ((0, 1), (1, 2), (2, 2)) + (((3, 2),) if with_conformal else ())

    spans = [IncrementalSpan() for _ in range(top + 1)]
    queue = []

    def offer(vec):
        for d, part in _split_by_degree(vec).items():
            if d > top:
                continue
            q = linalg.matvec(spaces[d][1], coords(d, part))
            if spans[d].add(q):
                queue.append((d, part))

    offer(vac)
    while queue:
        d, vec = queue.pop()
        for idx, wt in weights:
            for target in range(top + 1):
                n = d + wt - 1 - target
                img = apply_generator(idx, n, vec)
                if img:
                    offer(img)
    generated = [len(s) for s in spans[: D + 1]]
    return GeneratorReport(k, r, D, fixed, fixed_subspace_dims(k, 0, r, D), generated)
