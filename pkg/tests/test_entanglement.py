import csv
from math import log
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunvbs.entanglement import (BlockSpectrum, UnsupportedBlockLength, _geometric_closed_form,
                                 block_overlap_functional, block_spectrum_exact,
                                 block_spectrum_from_transfer, block_spectrum_oracle,
                                 entropy_report, finite_geometric_per_block,
                                 geometric_entanglement_per_block, geometric_from_functional,
                                 optimize_product_blocks, renyi, von_neumann)
from sunvbs.state import (build_dense_vbs, build_dense_vbs_periodic, project_boundaries,
                          reduced_density)
from sunvbs.transfer import correlation_length

DATA = Path(__file__).parent / "data" / "aklt_n2.csv"


def unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_block_n2_L1():
    s = block_spectrum_exact(2, 1)
    assert s.lambda_singlet == 0
    assert abs(s.lambda_adjoint - 1 / 3) < 1e-16
    assert s.multiplicities == (1, 3)


def test_block_n2_L2():
    s = block_spectrum_exact(2, 2)
    assert abs(s.lambda_singlet - 1 / 3) < 1e-16
    assert abs(s.lambda_adjoint - 2 / 9) < 1e-16
    num = block_spectrum_from_transfer(2, 2)
    assert np.max(np.abs(num - [1 / 3, 2 / 9, 2 / 9, 2 / 9])) < 1e-12


@settings(max_examples=60)
@given(st.integers(2, 6), st.integers(1, 64))
def test_block_unit_trace_and_positivity(n, L):
    s = block_spectrum_exact(n, L)
    assert abs(s.lambda_singlet + (n * n - 1) * s.lambda_adjoint - 1) < 1e-14
    assert s.lambda_singlet >= 0 and s.lambda_adjoint >= 0
    assert s.multiplicities == (1, n * n - 1)
    assert len(s.eigenvalues()) == n * n


@pytest.mark.parametrize("n", range(2, 6))
def test_block_equivalence_with_transfer(n):
    for L in range(1, 11):
        exact = np.sort(block_spectrum_exact(n, L).eigenvalues())[::-1]
        assert np.max(np.abs(block_spectrum_from_transfer(n, L) - exact)) < 1e-12


def test_p_sign_handling():
    assert block_spectrum_exact(2, 3).p < 0 < block_spectrum_exact(2, 4).p
    p = block_spectrum_exact(3, 5).p
    assert abs(p - (-1) ** 5 * np.exp(-5 / correlation_length(3))) < 1e-16


def test_block_rejects_bad_L():
    with pytest.raises(ValueError):
        BlockSpectrum(2, 0)


def test_entropy_examples():
    assert abs(von_neumann(block_spectrum_exact(2, 1)) - log(3)) < 1e-12
    assert abs(renyi(block_spectrum_exact(2, 2), 2) - log(27 / 7)) < 1e-12
    assert abs(log(27 / 7) - 1.349927) < 1e-6


@pytest.mark.parametrize("n", range(2, 6))
def test_entropy_saturation(n):
    s = block_spectrum_exact(n, 40)
    assert abs(von_neumann(s) - 2 * log(n)) < 1e-10
    for a in (0.5, 2, 3):
        assert abs(renyi(s, a) - 2 * log(n)) < 1e-10


def test_renyi_errors_and_alpha_one():
    s = block_spectrum_exact(3, 2)
    with pytest.raises(ValueError):
        renyi(s, 0)
    with pytest.raises(ValueError):
        renyi(s, -1)
    assert renyi(s, 1) == von_neumann(s)


@settings(max_examples=50)
@given(st.integers(2, 6), st.integers(1, 30))
def test_renyi_limit_and_monotone(n, L):
    s = block_spectrum_exact(n, L)
    assert abs(renyi(s, 1 + 1e-7) - von_neumann(s)) < 1e-6
    alphas = [0.3, 0.7, 1.0, 1.5, 2, 3, 7, 20]
    vals = [renyi(s, a) for a in alphas]
    assert all(x >= y - 1e-13 for x, y in zip(vals, vals[1:]))


@settings(max_examples=50)
@given(st.integers(2, 6), st.integers(2, 40))
def test_saturation_envelope(n, L):
    s = block_spectrum_exact(n, L)
    p = abs(s.p)
    bound = 2 * (n * n - 1) * p * (1 + abs(log(p)))
    # a few ulps of 2 log n on top of the analytic bound
    assert abs(von_neumann(s) - 2 * log(n)) <= bound + 8 * np.finfo(float).eps * 2 * log(n)


def test_aklt_regression_table():
    with open(DATA) as fh:
        for row in csv.DictReader(fh):
            L = int(row["L"])
            s = block_spectrum_exact(2, L)
            assert abs(s.lambda_singlet - float(row["lambda_singlet"])) < 1e-15
            assert abs(s.lambda_adjoint - float(row["lambda_adjoint"])) < 1e-15
            assert abs(von_neumann(s) - float(row["S_vn"])) < 1e-12
            assert abs(renyi(s, 2) - float(row["S_renyi_2"])) < 1e-12
            assert abs(renyi(s, 3) - float(row["S_renyi_3"])) < 1e-12
            if row["E"]:
                assert abs(geometric_entanglement_per_block(2, L) - float(row["E"])) < 1e-12


def test_entropy_report():
    rep = entropy_report(2, 2)
    assert abs(rep.geometric_per_block - log(9 / 5)) < 1e-14
    assert set(rep.renyi) == {2, 3}
    assert entropy_report(2, 3).geometric_per_block is None


def test_geometric_n2_L2():
    assert abs(geometric_entanglement_per_block(2, 2) - log(9 / 5)) < 1e-15
    assert abs(geometric_entanglement_per_block(2, 2) - 0.587787) < 1e-6


@pytest.mark.parametrize("L", [1, 3, 7, 0, -2])
def test_geometric_odd_rejected(L):
    with pytest.raises(UnsupportedBlockLength, match="odd|even"):
        geometric_entanglement_per_block(2, L)


@pytest.mark.parametrize("n", range(2, 6))
def test_geometric_saturation(n):
    assert abs(geometric_entanglement_per_block(n, 40) - log(n)) < 1e-8
    vals = [geometric_entanglement_per_block(n, L) for L in range(2, 41, 2)]
    assert all(a < b or b == log(n) for a, b in zip(vals, vals[1:]))


def test_geometric_linear_regime():
    # formula continued to real L: E ~ log(n/(n-1)) + L/xi_c while (n-1) e^{-L/xi} >> 1
    n = 10**4
    xi = correlation_length(n)
    for L in (0.01, 0.02, 0.04):
        e = _geometric_closed_form(n, np.exp(-L / xi))
        assert abs(e - (log(n / (n - 1)) + L / xi)) < 5e-3 * L / xi


def test_overlap_functional_n2_L2():
    rng = np.random.default_rng(0)
    for _ in range(5):
        assert abs(block_overlap_functional(2, 2, unit(rng, 2)) - 5 / 16) < 1e-15


@pytest.mark.parametrize("n,L", [(2, 2), (2, 5), (3, 4), (4, 3), (5, 6)])
def test_overlap_functional_constant(n, L):
    rng = np.random.default_rng(n * 100 + L)
    vals = [block_overlap_functional(n, L, unit(rng, n)) for _ in range(100)]
    assert np.std(vals, ddof=1) <= 1e-12
    closed = (1 - 1 / n**2) ** L / n + (-1 / n**2) ** L * (1 - 1 / n)
    assert abs(vals[0] - closed) < 1e-14


@pytest.mark.parametrize("n", range(2, 6))
def test_overlap_pipeline(n):
    rng = np.random.default_rng(n)
    for L in range(2, 21, 2):
        assert abs(geometric_from_functional(n, L, unit(rng, n))
                   - geometric_entanglement_per_block(n, L)) < 1e-12


def test_overlap_functional_rejects_non_unit():
    with pytest.raises(ValueError):
        block_overlap_functional(2, 2, np.array([1.0, 1.0]))


def test_optimizer_single_block():
    s = project_boundaries(build_dense_vbs(2, 4), np.array([1, 0]), np.array([0, 1]))
    ov, vecs, _ = optimize_product_blocks(s, 4)
    assert abs(ov - 1) < 1e-12
    assert len(vecs) == 1


def test_optimizer_monotone():
    rng = np.random.default_rng(5)
    s = project_boundaries(build_dense_vbs(2, 6), unit(rng, 2), unit(rng, 2))
    for seed in range(10):
        _, _, hist = optimize_product_blocks(s, 2, seed=seed)
        assert all(b >= a - 1e-14 for a, b in zip(hist, hist[1:]))


def test_optimizer_errors():
    with pytest.raises(ValueError):
        optimize_product_blocks(build_dense_vbs(2, 4), 2)
    with pytest.raises(ValueError):
        optimize_product_blocks(build_dense_vbs_periodic(2, 5), 2)


def test_optimizer_periodic_close_to_thermodynamic():
    ov, _, _ = optimize_product_blocks(build_dense_vbs_periodic(2, 8), 2, seed=0)
    ref = geometric_entanglement_per_block(2, 2)
    assert abs(-log(ov) / 4 - ref) / ref < 0.15


@pytest.mark.xfail(strict=True, reason="open chain with projected random boundaries gives "
                   "E ~ 0.42 at N=8, about 28% below the thermodynamic 0.5878")
def test_optimizer_open_projected_within_15_percent():
    ref = geometric_entanglement_per_block(2, 2)
    assert abs(finite_geometric_per_block(2, 8, 2, seed=0) - ref) / ref < 0.15


def test_oracle_whole_chain_trace():
    ev = block_spectrum_oracle(2, 3, 3, 0)
    assert abs(ev.sum() - 1) < 1e-12


def test_oracle_centered_block():
    ev = block_spectrum_oracle(2, 8, 2, 3)
    assert np.max(np.abs(ev - [1 / 3, 2 / 9, 2 / 9, 2 / 9])) <= 0.05


def test_oracle_exact_with_traced_boundaries():
    # tracing a boundary qunit feeds the dominant eigenvector into the chain,
    # so there is no finite-buffer correction at all
    exact = np.sort(block_spectrum_exact(2, 2).eigenvalues())[::-1]
    for d in range(0, 4):
        ev = block_spectrum_oracle(2, 2 + 2 * d, 2, d)
        assert np.max(np.abs(ev - exact)) < 1e-13


@pytest.mark.xfail(strict=True, reason="with boundary qunits traced the deviation is at "
                   "round-off for every buffer, so the per-buffer ratio is noise")
def test_oracle_convergence_ratio():
    exact = np.sort(block_spectrum_exact(2, 2).eigenvalues())[::-1]
    devs = [np.max(np.abs(block_spectrum_oracle(2, 2 + 2 * d, 2, d) - exact)) for d in (1, 2, 3)]
    for a, b in zip(devs, devs[1:]):
        assert 2 <= a / b <= 4.5


def test_oracle_fixed_boundary_convergence():
    # fixing the boundary qunits instead injects subleading modes that die off
    exact = np.sort(block_spectrum_exact(2, 2).eigenvalues())[::-1]
    rng = np.random.default_rng(1)
    left, right = unit(rng, 2), unit(rng, 2)
    devs = []
    for d in range(1, 5):
        s = project_boundaries(build_dense_vbs(2, 2 + 2 * d), left, right)
        ev = np.sort(np.linalg.eigvalsh(reduced_density(s, (d + 1, d + 2))))[::-1][:4]
        devs.append(np.max(np.abs(ev - exact)))
    assert all(b < a for a, b in zip(devs, devs[1:]))
    assert devs[2] <= 0.05


def test_oracle_range():
    with pytest.raises(ValueError):
        block_spectrum_oracle(2, 4, 2, 3)
