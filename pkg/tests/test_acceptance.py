"""Acceptance criteria 1-10.  Each test enforces its own wall-clock budget."""

from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from kleinorb import affine, classify, fermions, fusion, linalg, sl2, twisted
from kleinorb.fusion import LiftKind, U
from oracles import level_one_lattice_dims, totals, weyl_kac_dims


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


# --- 1 ----------------------------------------------------------------------------------


@pytest.mark.criterion(1)
def test_orbifold_module_counts(cold):
    with budget(1):
        counts = {k: len(classify.classify_orbifold(k)) for k in range(1, 7)}
    for k in (1, 3, 5):
        assert counts[k] == 11 * (k + 1) // 2
    for k in (2, 4, 6):
        assert counts[k] == (11 * k + 32) // 2
    assert counts[1] == 11 and counts[2] == 27


# --- 2 ----------------------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_commutant_module_counts(cold):
    with budget(1):
        counts = {m: len(classify.classify_commutant(m)) for m in (4, 5, 6, 7)}
    assert counts[5] == 11 * 5 + 16
    assert counts[7] == 11 * 7 + 16
    assert counts[4] == 8 * 4 + 32
    assert counts[6] == 8 * 6 + 32 == 80


# --- 3 ----------------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_level_one_vacuum_graded_dims(cold):
    with budget(30):
        dims = affine.irreducible_graded_dims(1, 0, 3)
    assert affine.degree_totals(dims, 3) == [1, 3, 4, 7]
    assert dims == level_one_lattice_dims(0, 3)
    assert dims == weyl_kac_dims(1, 0, 3)
    assert totals(level_one_lattice_dims(0, 3), 3) == [1, 3, 4, 7]


# --- 4 ----------------------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_klein_isotypic_split(cold):
    with budget(60):
        degree_one = {k: affine.k_isotypic_dims(k, 0, 1) for k in range(1, 5)}
        top = affine.k_isotypic_dims(4, 4, 0)
    for k, iso in degree_one.items():
        got = tuple(iso[(1, tag)] for tag in affine.ISOTYPIC_LABELS)
        assert got == (0, 1, 1, 1), k
    assert tuple(top[(0, tag)] for tag in affine.ISOTYPIC_LABELS) == (2, 1, 1, 1)


# --- 5 ----------------------------------------------------------------------------------


@pytest.mark.criterion(5)
def test_twisted_lowest_weights(cold):
    seen = 0
    with budget(60):
        for k in range(1, 5):
            for i in range(k + 1):
                expected = Fraction(i * (i - k), 4 * (k + 2)) + Fraction(k, 16)
                for r in (1, 2, 3):
                    table = twisted.twisted_component_dims(k, i, r, 2)
                    lows = twisted.lowest_weights(table)
                    assert min(lows.values()) == expected, (k, i, r)
                    offsets = {tag: w - expected for tag, w in lows.items()}
                    if 2 * i == k:
                        assert offsets == {
                            "(0)": 0,
                            "(1)": 1,
                            "(2)": Fraction(1, 2),
                            "(3)": Fraction(1, 2),
                        }, (k, i, r)
                    else:
                        assert offsets == {"+": 0, "-": Fraction(1, 2)}, (k, i, r)
                    seen += 1
    assert seen == sum(3 * (k + 1) for k in range(1, 5))


# --- 6 ----------------------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_fusion_ring(cold):
    with budget(10):
        reports = {k: fusion.verify_ring(k) for k in range(1, 7)}
        for k, rep in reports.items():
            assert rep.commutative and rep.associative, rep.counterexample
            assert rep.unit == U(0, "+")

            j = U(k, "+")
            assert fusion.fuse(j, j, k) == fusion.FusionSum({U(0, "-" if k % 2 else "+")})
            for x in fusion.all_labels(k):
                (y,) = fusion.fuse(j, x, k)
                (z,) = fusion.fuse(j, y, k)
                # on indices J always acts as the involution i -> k - i
                assert y.i == k - x.i and y.sector == x.sector
                # on full labels J x J = U(0,-) makes J of order four for odd k
                assert z == (x.flipped() if k % 2 else x)


# --- 7 ----------------------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_extension_lift_m4(cold):
    m, k = 4, 8
    with budget(5):
        lifts = {lab: fusion.extension_lift(m, lab) for lab in fusion.all_labels(k)}
        entries = classify.classify_commutant(m)
    for lab, res in lifts.items():
        if lab.twisted:
            continue
        if lab.i % 2:
            assert res.kind is LiftKind.NOT_LIFTABLE, lab
            assert res.weight_gap.denominator == 2, lab
        elif lab.i == m:
            assert res.kind is LiftKind.SPLIT, lab
        else:
            assert res.kind is LiftKind.NONSPLIT_PAIR, lab
            assert res.partner.i == 2 * m - lab.i
    assert len(entries) == 8 * 4 + 32 == 64


# --- 8 ----------------------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_cocycle_and_zero_mode_intertwining(cold):
    with budget(1):
        for i in range(9):
            p1, p2, p3 = (sl2.phi(r, i) for r in (1, 2, 3))
            sign = (-1) ** i
            assert linalg.equal(linalg.matmul(p2, p1), linalg.scale(linalg.matmul(p1, p2), sign))
            assert linalg.equal(linalg.matmul(p1, p2), p3)
            for r in range(4):
                p = sl2.phi(r, i)
                for g in sl2.BASIS.values():
                    lhs = linalg.matmul(p, sl2.element_matrix(g, i))
                    rhs = linalg.matmul(sl2.element_matrix(sl2.sigma(r, g), i), p)
                    assert linalg.equal(lhs, rhs), (i, r, g)


# --- 9 ----------------------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_fermion_lab(cold):
    m, D = 4, 2
    with budget(120):
        report = fermions.verify_fermion(m, D)
        space = fermions.FockSpace(m)
        states = space.states(D)
        for mask in states:
            v = {mask: 1}
            ef = fermions.commutator(space, "e", 1, "f", -1, v)
            want = fermions._combine((1, fermions.bilinear_mode(space, "h", 0, v)), (8, v))
            assert fermions._to_gauss(ef) == fermions._to_gauss(want), space.describe(mask)
            hh = fermions.commutator(space, "h", 1, "h", -1, v)
            assert fermions._to_gauss(hh) == fermions._to_gauss({mask: 16}), space.describe(mask)
    assert report.ok, report.first_failure()
    names = {r.relation for r in report.results}
    assert "[e(1),f(-1)]" in names and "[h(1),h(-1)]" in names
    assert any(n.startswith("[w1(0),w2(0)]") for n in names)
    assert any(n.startswith("sigma'_1") for n in names) and any(n.startswith("sigma'_2") for n in names)


# --- 10 ---------------------------------------------------------------------------------

_GENERATOR_CASES = [
    pytest.param(k, r, marks=[] if k == 1 else [
        pytest.mark.xfail(
            strict=True,
            reason=(
                "at k=2 the fixed algebra of sigma_r is V_{Z gamma} (x) L_Vir(1/2,0); the three "
                "listed generators only reach V_{Z gamma}: dims (1,1,4,5) against (1,1,5,7)"
            ),
        )
    ], id=f"k{k}-r{r}")
    for k in (1, 2)
    for r in (1, 2, 3)
]


@pytest.mark.criterion(10)
@pytest.mark.parametrize("k, r", _GENERATOR_CASES)
def test_fixed_point_generators(cold, k, r):
    with budget(120):
        rep = affine.verify_fixed_generators(k, r, 3)
    assert rep.fixed
    assert rep.ok, (rep.fixed_dims, rep.generated_dims)
