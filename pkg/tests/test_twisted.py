from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from kleinorb import twisted
from kleinorb.affine import H, Mode, verma
from kleinorb.sl2 import KLEIN, KleinElement
from oracles import weyl_kac_dims

half = Fraction(1, 2)


def regraded_oracle(k: int, i: int, D: int) -> dict:
    """Twisted cells from the Weyl-Kac character: offset d + (q+i)/4."""
    cells: dict = {}
    for (d, q), n in weyl_kac_dims(k, i, D).items():
        t = d + Fraction(q + i, 4)
        if 2 * t <= D:
            cells[t] = cells.get(t, 0) + n
    return dict(sorted(cells.items()))


@pytest.mark.parametrize(
    "a, n, expected",
    [
        ("e", half, (Mode("e", 1), 0)),
        ("e", -half, (Mode("e", 0), 0)),
        ("f", half, (Mode("f", 0), 0)),
        ("f", -3 * half, (Mode("f", -2), 0)),
        ("h", 0, (Mode("h", 0), Fraction(3, 2))),
        ("h", -2, (Mode("h", -2), 0)),
    ],
)
def test_mode_dictionary(a, n, expected):
    assert twisted.twisted_mode(a, n, 3) == expected


@pytest.mark.parametrize("a, n", [("e", 1), ("f", 0), ("h", half), ("x", 0)])
def test_mode_dictionary_rejects(a, n):
    with pytest.raises(ValueError):
        twisted.twisted_mode(a, n, 2)


def _grid(a):
    return [Fraction(x) for x in (-1, 0, 1)] if a == "h" else [half * s for s in (-3, -1, 1, 3)]


@pytest.mark.parametrize("k", [1, 2, 5])
@pytest.mark.parametrize("a, b", list(itertools.product("hef", repeat=2)))
def test_dictionary_matches_twisted_commutator(k, a, b):
    for m, n in itertools.product(_grid(a), _grid(b)):
        assert twisted.twisted_bracket_via_dictionary(a, m, b, n, k) == twisted.twisted_bracket_borcherds(
            a, m, b, n, k
        ), (a, m, b, n)


def test_e_f_bracket_example():
    modes, scalar = twisted.twisted_bracket_borcherds("e", half, "f", -half, 4)
    # h_0 + k/2 from the bracket plus m k = 2 from the central term
    assert modes == {Mode("h", 0): 1}
    assert scalar == 2 + 2


@pytest.mark.parametrize(
    "k, i, r, expected",
    [
        (4, 2, 1, KLEIN),
        (4, 2, 3, KLEIN),
        (4, 1, 2, (KleinElement(0), KleinElement(2))),
        (3, 1, 1, (KleinElement(0), KleinElement(1))),
        (2, 0, 3, (KleinElement(0), KleinElement(3))),
    ],
)
def test_stabilizer(k, i, r, expected):
    assert twisted.stabilizer(k, i, r) == expected


@pytest.mark.parametrize("k, i", [(k, i) for k in range(1, 5) for i in range(k + 1)])
def test_h0_on_top_vector(k, i):
    mod = verma(k, i)
    top = {((), i): 1}
    mode, shift = twisted.twisted_mode("h", 0, k)
    image = mod.act(mode.key, top)
    assert mode.key == (0, H)
    assert set(image) <= {((), i)}
    assert image.get(((), i), 0) + shift == twisted.h0_top_eigenvalue(k, i)


@pytest.mark.parametrize("k", range(1, 9))
def test_lowest_weight_symmetric(k):
    for i in range(k + 1):
        assert twisted.twisted_lowest_weight(k, i) == twisted.twisted_lowest_weight(k, twisted.orbit_partner(k, i))


@pytest.mark.parametrize("k", range(1, 9))
def test_orbit_symmetry_of_cells(k):
    for i in range(k // 2 + 1):
        assert twisted.twisted_cells(k, i, 1, 2) == twisted.twisted_cells(k, k - i, 1, 2)


@pytest.mark.parametrize("k, i", [(k, i) for k in range(1, 5) for i in range(k + 1)])
def test_cells_match_character_oracle(k, i):
    assert twisted.twisted_cells(k, i, 1, 3) == regraded_oracle(k, i, 3)


@pytest.mark.parametrize("k, i", [(1, 0), (1, 1), (2, 1), (3, 2), (4, 2)])
@pytest.mark.parametrize("r", [2, 3])
def test_cells_independent_of_triple(k, i, r):
    assert twisted.twisted_cells(k, i, r, 2) == twisted.twisted_cells(k, i, 1, 2)


@pytest.mark.parametrize("k", [2, 4])
@pytest.mark.parametrize("t", [Fraction(0), half, Fraction(1)])
def test_mid_split_is_an_involution(k, t):
    cell = twisted.mid_cell_split(k, t)
    assert cell.involutive
    assert cell.plus + cell.minus == cell.total


def test_mid_split_needs_even_level():
    with pytest.raises(ValueError):
        twisted.mid_cell_split(3, Fraction(0))


@pytest.mark.parametrize("k, top", [(2, 1), (4, 2), (6, 2)])
def test_mid_quartet_first_integral_excited(k, top):
    table = twisted.twisted_component_dims(k, k // 2, 1, 2)
    lab = twisted.TwistedComponentLabel(k, k // 2, 1, "(1)")
    cells = table[lab]
    assert cells[min(cells)] == top


@pytest.mark.parametrize("k, i", [(3, 1), (4, 1), (5, 2)])
def test_minus_top_dim(k, i):
    table = twisted.twisted_component_dims(k, i, 1, 2)
    minus = table[twisted.TwistedComponentLabel(k, i, 1, "-")]
    plus = table[twisted.TwistedComponentLabel(k, i, 1, "+")]
    assert plus[min(plus)] == 1
    assert minus[min(minus)] == 2
    assert min(minus) - min(plus) == half


def test_component_label_validation():
    with pytest.raises(ValueError):
        twisted.TwistedComponentLabel(3, 1, 1, "(0)")
    with pytest.raises(ValueError):
        twisted.TwistedComponentLabel(4, 1, 1, "?")
    assert str(twisted.TwistedComponentLabel(4, 2, 3, "(2)")) == "bar-L(4,2)^{sigma_3,(2)}"


def test_components_cover_cells():
    k, i = 4, 2
    cells = twisted.twisted_cells(k, i, 2, 2)
    table = twisted.twisted_component_dims(k, i, 2, 2)
    base = twisted.twisted_lowest_weight(k, i)
    merged: dict = {}
    for comp in table.values():
        for w, n in comp.items():
            merged[w - base] = merged.get(w - base, 0) + n
    assert merged == cells
