from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import eigvalsh

from diagonal_toolbox.cli.oracles import schur_horn_roundtrip
from diagonal_toolbox.construct import (Realization, block_diagonal, compose_realizations, dump_matrix,
                                        infmove_build, jacobi_eigenvalues, loglem_index, loss_chain,
                                        noloss_chain, offdiag_move, one_neg_build, realization_tolerance,
                                        schur_horn_build, schur_horn_realization, tbound_build, verify_realization)
from diagonal_toolbox.seqcore import ExtendedSequence, GeometricTail
from diagonal_toolbox.settings import Settings

HALF = Fraction(1, 2)


def geometric_window(first, n):
    return [Fraction(first) / 2 ** k for k in range(n)]


def test_offdiag_move_diagonal_start():
    E = np.diag([3.0, 1.0])
    basis, move = offdiag_move(E, 0, 1, 2.0)
    M = basis.T @ E @ basis
    assert move.alpha == pytest.approx(0.5)
    assert M[0, 0] == pytest.approx(2.0)
    assert M[1, 1] == pytest.approx(2.0)
    assert np.allclose(basis.T @ basis, np.eye(2))


def test_offdiag_move_with_coupling():
    E = np.array([[2.0, 1.0], [1.0, 0.0]])
    basis, _ = offdiag_move(E, 0, 1, 1.5)
    M = basis.T @ E @ basis
    assert M[0, 0] == pytest.approx(1.5)
    assert np.trace(M) == pytest.approx(2.0)


def test_offdiag_move_rejects_bad_targets():
    with pytest.raises(ValueError):
        offdiag_move(np.diag([2.0, 0.0]), 0, 1, 3.0)
    with pytest.raises(ValueError):
        offdiag_move(np.diag([1.0, 1.0]), 0, 1, 1.0)


def test_jacobi_matches_scipy():
    rng = np.random.default_rng(1)
    for n in (2, 5, 12):
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2
        assert np.allclose(jacobi_eigenvalues(a), eigvalsh(a)[::-1], atol=1e-10)
    assert np.allclose(jacobi_eigenvalues([[2.0, 1.0], [1.0, 2.0]]), [3.0, 1.0])
    with pytest.raises(ValueError):
        jacobi_eigenvalues([[1.0, 2.0], [0.0, 1.0]])


@pytest.mark.parametrize("lam, d", [
    ([3, 1], [2, 2]),
    ([2, 1, 0], [1, 1, 1]),
    ([3, 2, 1], [1, 2, 3]),
    ([5, "1/2", -1, "-3/2"], [1, "1/2", "1/2", 1]),
])
def test_schur_horn_realizes(lam, d):
    matrix = schur_horn_build(lam, d)
    expected = sorted((float(Fraction(x)) for x in lam), reverse=True)
    assert np.allclose(np.diag(matrix), [float(Fraction(x)) for x in d], atol=1e-12)
    assert np.allclose(eigvalsh(matrix)[::-1], expected, atol=1e-12)
    realization = schur_horn_realization(lam, d)
    assert verify_realization(realization.matrix, realization.eigenvalues, realization.diagonal).ok


def test_schur_horn_rejects_non_majorized():
    with pytest.raises(ValueError, match="n=1"):
        schur_horn_build([1, 1], [2, 0])
    with pytest.raises(ValueError, match="traces differ"):
        schur_horn_build([2, 1], [1, 1])


def test_tbound_geometric_window():
    n = 200
    trace = tbound_build(geometric_window(1, n), geometric_window(HALF, n), 1, n)
    assert trace.exact_residual == -Fraction(1, 2 ** 200)
    assert abs(trace.residual_entry + 2.0 ** -200) < 1e-10
    assert trace.max_error < 1e-10
    assert trace.chain.orthogonality_residual() < 1e-10
    assert trace.ok
    assert all(alpha == Fraction(1, 4) for alpha in trace.alphas)


def test_tbound_single_step():
    trace = tbound_build([1], [HALF], HALF)
    assert trace.alphas == (Fraction(1, 3),)
    assert np.allclose(trace.achieved_diagonal, [0.5, 0.0])
    assert trace.to_json()["exact_residual"] == "0"


def test_tbound_realization_is_verified():
    n = 10
    trace = tbound_build(geometric_window(1, n), geometric_window(HALF, n), 1, n)
    realization = trace.realization()
    assert verify_realization(realization.matrix, realization.eigenvalues, realization.diagonal).ok


def test_tbound_errors_and_growth_warning():
    with pytest.raises(ValueError):
        tbound_build([1], [HALF], 0)
    with pytest.raises(ValueError):
        tbound_build([HALF], [1], 1)
    with pytest.raises(ValueError):
        tbound_build([1], [0], HALF)
    with pytest.warns(UserWarning, match="growth bound"):
        tbound_build(geometric_window(1, 5), geometric_window(HALF, 5), 1, c=1)


def test_infmove_targets_and_residual():
    trace = infmove_build(2, [HALF, Fraction(1, 4), Fraction(1, 8)], Fraction(1, 4))
    assert trace.target == [Fraction(1, 8), Fraction(1, 16), Fraction(1, 32), Fraction(29, 32)]
    assert trace.exact_residual == Fraction(29, 32)
    assert trace.parameters["limit_entry"] == Fraction(7, 8)
    assert trace.max_error < 1e-12
    assert trace.trace_defect < 1e-12
    assert trace.ok
    assert trace.to_json()["ok"]


def test_infmove_reduces_epsilon():
    trace = infmove_build(2, [HALF], 1)
    assert trace.parameters["epsilon"] == Fraction(3, 4)
    assert trace.parameters["limit_entry"] == Fraction(3, 4)
    assert infmove_build(2, [HALF], Fraction(99, 100)).parameters["epsilon"] == Fraction(99, 100)
    with pytest.raises(ValueError):
        infmove_build(1, [HALF, HALF], Fraction(1, 4))


def test_noloss_chain_distances():
    result = noloss_chain(5, [Fraction(1, 4)] * 4)
    assert result.certificate == Fraction(4, 3)
    assert result.max_deviation < 1e-12
    assert np.linalg.norm(result.limit) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        noloss_chain(2, [1])


def test_loss_chain_keeps_trace():
    chain = loss_chain([-1.0, 1.0, 0.5], [0.25, 0.5])
    assert np.sum(chain.diagonal()) == pytest.approx(0.5)
    assert chain.completeness == 0.375


def test_loglem_index():
    t = [1, HALF, Fraction(1, 4), Fraction(1, 8)]
    assert loglem_index(t, Fraction(5, 2)) == 3
    assert loglem_index(t, 5) is None
    with pytest.raises(ValueError):
        loglem_index([1, 2], 1)


def test_one_neg_build():
    lam = ExtendedSequence((), GeometricTail(1, HALF))
    d = ExtendedSequence((), GeometricTail(HALF, HALF))
    plan, trace = one_neg_build(lam, d, 20)
    assert plan.ok, plan.failed
    assert trace.parameters["n0"] == 1
    assert trace.parameters["alpha"] == Fraction(1, 4)
    assert trace.max_error < 1e-10
    assert trace.ok


def test_compose_and_dump(tmp_path):
    first = schur_horn_realization([3, 1], [2, 2])
    second = Realization(np.array([[1.0]]), (1,), (1,))
    composed = compose_realizations([first, second])
    assert composed.matrix.shape == (3, 3)
    assert composed.eigenvalues == (3, 1, 1)
    assert verify_realization(composed.matrix, composed.eigenvalues, composed.diagonal).ok
    assert block_diagonal([np.eye(2), 2.0]).shape == (3, 3)

    dump_matrix(composed.matrix, tmp_path / "m.txt", "text")
    rows = (tmp_path / "m.txt").read_text().splitlines()
    assert len(rows) == 3 and len(rows[0].split()) == 3
    with pytest.raises(ValueError):
        compose_realizations([])
    with pytest.raises(ValueError):
        verify_realization(np.eye(2), [1], [1, 1])


@pytest.mark.parametrize("n", range(2, 13))
def test_schur_horn_roundtrip_sweep(n):
    report = schur_horn_roundtrip(seed=n, dim=n, trials=100)
    assert report.ok, report.violations[:3]
    assert report.statistics["max_residual"] < 1e-9


def test_realization_tolerance_follows_settings():
    assert realization_tolerance([3, -1]) == pytest.approx(6e-12)
    assert realization_tolerance([HALF]) == pytest.approx(1e-12)
    loose = Settings(tolerance="1/1000")
    assert realization_tolerance([2, 1, 1], loose) == pytest.approx(6e-3)

    matrix = np.array([[1.0, 1e-6], [1e-6, 1.0]])
    assert not verify_realization(matrix, [1, 1], [1, 1]).ok
    assert verify_realization(matrix, [1, 1], [1, 1], settings=loose).ok
    assert verify_realization(matrix, [1, 1], [1, 1], tolerance=1e-5).ok


def test_build_trace_reports_tolerance():
    trace = tbound_build([1], [HALF], HALF, settings=Settings(tolerance="1/1000"))
    assert trace.tolerance == pytest.approx(2e-3)
    assert trace.ok
    assert trace.to_json()["tolerance"] == pytest.approx(2e-3)
