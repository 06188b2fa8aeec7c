from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kleinorb import fusion
from kleinorb.fusion import FusionSum, LabelSyntaxError, LiftKind, T, U


@pytest.mark.parametrize(
    "i, j, l, base, expected",
    [(1, 1, 0, "+", "-"), (1, 1, 2, "+", "+"), (2, 2, 0, "+", "+"), (3, 1, 2, "-", "+"), (0, 4, 4, "-", "-")],
)
def test_sign_rule(i, j, l, base, expected):
    assert fusion.sign_rule(i, j, l, base) == expected


def test_sign_rule_parity():
    with pytest.raises(ValueError):
        fusion.sign_rule(1, 0, 0)


@pytest.mark.parametrize(
    "i, j, k, expected",
    [(1, 1, 2, [0, 2]), (2, 2, 2, [0]), (2, 2, 4, [0, 2, 4]), (3, 2, 3, [1]), (3, 2, 5, [1, 3, 5]), (0, 3, 3, [3])],
)
def test_channels(i, j, k, expected):
    assert list(fusion.channels(i, j, k)) == expected


def test_example_product():
    assert str(fusion.fuse(U(1), U(1), 2)) == "U(0,-) + U(2,+)"


@pytest.mark.parametrize("k", range(1, 7))
def test_vacuum_is_unit(k):
    for x in fusion.all_labels(k):
        assert fusion.fuse(U(0), x, k) == FusionSum({x})


@pytest.mark.parametrize("k", range(1, 7))
def test_current_on_twisted(k):
    for i in range(k + 1):
        (y,) = fusion.fuse(U(k), T(i), k)
        assert y == T(k - i, fusion.sign_rule(k, i, k - i))


def test_twisted_twisted_unsupported():
    with pytest.raises(fusion.UnsupportedSectorError):
        fusion.fuse(T(0), T(1), 2)


def test_twisted_left_factor():
    assert fusion.fuse(T(1), U(1), 2) == fusion.fuse(U(1), T(1), 2)


def test_out_of_range():
    with pytest.raises(ValueError):
        fusion.fuse(U(3), U(0), 2)


@pytest.mark.parametrize("k", range(1, 7))
def test_sign_flip_law(k):
    """Flipping one factor's sign flips every sign in the product."""
    for a, b in itertools.product(fusion.all_labels(k), repeat=2):
        if a.twisted and b.twisted:
            continue
        flipped = FusionSum(x.flipped() for x in fusion.fuse(a, b, k))
        assert fusion.fuse(a.flipped(), b, k) == flipped


@pytest.mark.parametrize("k", range(1, 7))
def test_simple_currents(k):
    currents = set(fusion.simple_currents(k))
    assert {U(0, "+"), U(0, "-"), U(k, "+"), U(k, "-")} <= currents
    assert all(c.i in (0, k) for c in currents)


@pytest.mark.parametrize("k", range(1, 7))
def test_ring_report(k):
    rep = fusion.verify_ring(k)
    assert rep.ok
    assert rep.to_json()["unit"] == "U(0,+)"


@pytest.mark.parametrize("k", range(1, 7))
def test_fusion_dimensions_are_quantum_dimension_compatible(k):
    """Untwisted product sizes follow the sl2 level-k fusion rules."""
    for i, j in itertools.product(range(k + 1), repeat=2):
        assert len(fusion.fuse(U(i), U(j), k)) == len(range(abs(i - j), min(i + j, 2 * k - i - j) + 1, 2))


def test_fusion_table_rows():
    table = fusion.fusion_table(1)
    assert len(table) == 8 * 8 - 4 * 4
    assert table[0] == {"a": "U(0,+)", "b": "U(0,+)", "product": ["U(0,+)"]}


@pytest.mark.parametrize(
    "text, expected",
    [("U(0,+)", U(0, "+")), ("T(12,-)", T(12, "-")), ("  U(3,-) ", U(3, "-"))],
)
def test_parse_label(text, expected):
    assert fusion.parse_label(text) == expected


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("X(1,+)", 0),
        ("U1,+)", 1),
        ("U(,+)", 2),
        ("U(1;+)", 3),
        ("U(1,*)", 4),
        ("U(1,+", 5),
        ("U(1,+)x", 6),
        (" U(12,+]", 7),
    ],
)
def test_parse_label_errors(text, position):
    with pytest.raises(LabelSyntaxError) as info:
        fusion.parse_label(text)
    assert info.value.position == position


def test_parse_label_level_bound():
    with pytest.raises(LabelSyntaxError):
        fusion.parse_label("U(5,+)", k=4)


@given(st.sampled_from(["U", "T"]), st.integers(0, 99), st.sampled_from("+-"))
def test_parse_round_trip(kind, i, sign):
    lab = (U if kind == "U" else T)(i, sign)
    assert fusion.parse_label(str(lab)) == lab


@pytest.mark.parametrize(
    "label, kind, partner",
    [
        (U(2, "+"), LiftKind.NONSPLIT_PAIR, U(6, "+")),
        (U(1, "+"), LiftKind.NOT_LIFTABLE, U(7, "-")),
        (U(4, "+"), LiftKind.SPLIT, U(4, "+")),
        (U(4, "-"), LiftKind.SPLIT, U(4, "-")),
        (T(4, "+"), LiftKind.SPLIT, T(4, "+")),
        (T(4, "-"), LiftKind.SPLIT, T(4, "-")),
    ],
)
def test_extension_lift_examples(label, kind, partner):
    res = fusion.extension_lift(4, label)
    assert res.kind is kind
    assert res.partner == partner


def test_not_liftable_gap():
    res = fusion.extension_lift(4, U(1, "+"))
    assert res.weight_gap.denominator == 2
    assert res.to_json()["weight_gap"] == "3/2"


@pytest.mark.parametrize("m", [4, 6, 8])
def test_twisted_lift_parity(m):
    for i in range(2 * m + 1):
        for sign in "+-":
            res = fusion.extension_lift(m, T(i, sign))
            expected = LiftKind.SPLIT if i % 2 == 0 else LiftKind.NOT_LIFTABLE
            assert res.kind is expected, (m, i, sign)


def test_lowest_weight_values():
    assert fusion.lowest_weight(U(0, "-"), 2) == 1
    assert fusion.lowest_weight(U(1, "+"), 2) == Fraction(3, 16)
    assert fusion.lowest_weight(T(0, "-"), 2) == Fraction(1, 8) + Fraction(1, 2)
