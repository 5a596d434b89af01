from __future__ import annotations

import time

import numpy as np
import pytest

from kerdock_design.f2linalg import BitMatrix, rank
from kerdock_design.gf2m import make_context
from kerdock_design.kerdock_codes import (DGMatrixSet, Z4Codeword, codeword, dg_closure_violations,
                                          dg_matrix, gray_map, kerdock_difference_violations,
                                          kerdock_matrix, lee_weight, closed_form_distribution,
                                          weight_distribution)
from kerdock_design.mub import QuaternaryPhaseVector, inner_product

M3_DIST = {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}
M5_DIST = {0: 1, 28: 1984, 32: 126, 36: 1984, 64: 1}
M7_DIST = {0: 1, 120: 32512, 128: 510, 136: 32512, 256: 1}


def test_dg_matrix_zero_and_range():
    ctx = make_context(5)
    assert dg_matrix(ctx, 1, (0, 0)).is_zero()
    with pytest.raises(ValueError):
        dg_matrix(ctx, 3, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        dg_matrix(ctx, 1, (1,))


@pytest.mark.parametrize("m", range(1, 9))
def test_kerdock_matrices_nonsingular(m):
    ctx = make_context(m)
    for z in range(1, ctx.order):
        P = kerdock_matrix(ctx, z)
        assert P.is_symmetric()
        assert rank(P) == m


def test_dg_rank_bound(rng):
    ctx = make_context(5)
    S = DGMatrixSet(ctx, 1)
    for _ in range(100):
        k = int(rng.integers(1, len(S)))
        P = S[k]
        assert P.is_symmetric() and rank(P) >= 3


def test_dg_rank_histograms():
    ctx = make_context(5)
    assert DGMatrixSet(ctx, 1).rank_histogram() == {0: 1, 3: 155, 4: 496, 5: 372}


@pytest.mark.parametrize("m,r", [(2, 0), (3, 0), (3, 1), (4, 1)])
def test_dg_closure(m, r):
    assert dg_closure_violations(make_context(m), r) == 0


@pytest.mark.parametrize("m", range(1, 9))
def test_kerdock_difference_property(m):
    assert kerdock_difference_violations(make_context(m)) == 0


def test_codeword_examples():
    ctx = make_context(3)
    zero = BitMatrix.zeros(3, 3)
    assert not codeword(ctx, zero, 0, 0).entries.any()
    twos = codeword(ctx, zero, 0, 2)
    assert (twos.entries == 2).all()
    assert gray_map(twos).weight() == 16
    assert lee_weight(twos) == 16
    P = kerdock_matrix(ctx, ctx.alpha_power(1))
    Pi = P.to_array().astype(int)
    c = codeword(ctx, P, 0, 0)
    for x in range(8):
        xv = np.array([(x >> j) & 1 for j in range(3)])
        assert c.entries[x] == (xv @ Pi @ xv) % 4
    with pytest.raises(ValueError):
        codeword(ctx, BitMatrix.from_strings(["010", "000", "000"]), 0, 0)


def test_gray_map_examples(rng):
    assert gray_map(Z4Codeword(np.zeros(4, dtype=int))).bits == 0
    g = gray_map(Z4Codeword(np.array([2])))
    assert str(g) == "11"
    assert [str(gray_map(Z4Codeword(np.array([v])))) for v in range(4)] == ["00", "01", "11", "10"]
    assert lee_weight(Z4Codeword(np.zeros(8, dtype=int))) == 0
    for _ in range(1000):
        c = Z4Codeword(rng.integers(0, 4, 16))
        assert lee_weight(c) == gray_map(c).weight()


def test_gray_isometry_and_phase_form(rng):
    N = 16
    for _ in range(300):
        u = Z4Codeword(rng.integers(0, 4, N))
        v = Z4Codeword(rng.integers(0, 4, N))
        dH = (gray_map(u) + gray_map(v)).weight()
        assert lee_weight(u - v) == dH
        ip = inner_product(QuaternaryPhaseVector(u.entries), QuaternaryPhaseVector(v.entries))
        # |i^u - i^v|^2 summed = 2N - 2 Re<u, v>
        assert 2 * N - 2 * ip.re == 2 * dH


def test_closed_form_distribution():
    assert closed_form_distribution(3) == M3_DIST
    assert closed_form_distribution(5) == M5_DIST
    assert closed_form_distribution(7) == M7_DIST
    with pytest.raises(ValueError):
        closed_form_distribution(4)


@pytest.mark.parametrize("m,expected", [(3, M3_DIST), (5, M5_DIST)])
def test_weight_distribution_small(m, expected):
    wd = weight_distribution(make_context(m))
    assert wd.counts == expected
    assert wd.is_symmetric()
    assert wd.total == 1 << (2 * m + 2)


def test_weight_distribution_m7_fast():
    t0 = time.perf_counter()
    wd = weight_distribution(make_context(7))
    assert wd.counts == M7_DIST
    assert time.perf_counter() - t0 < 10


def test_weight_distribution_dg_m3_r1():
    wd = weight_distribution(make_context(3), 1)
    assert wd.total == 1 << 11
    assert wd.is_symmetric()


def test_weight_distribution_even_m_reports():
    wd = weight_distribution(make_context(4))
    assert wd.total == 1 << 10 and wd.is_symmetric()


def test_weight_distribution_size_bound():
    with pytest.raises(ValueError):
        weight_distribution(make_context(9), 2)
