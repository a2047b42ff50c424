import pytest

from hgtoda import hgf, toda
from hgtoda.chars import AlphaParams, Partition
from hgtoda.hgf import SlicePoint


def test_classify():
    assert toda.classify((1, 1, 1, 1), 2, 3).kind == toda.CaseKind.CASE11
    assert toda.classify((2, 1, 1), 1, 0).kind == toda.CaseKind.CASE1N
    assert toda.classify((2, 2), 0, 1).kind == toda.CaseKind.CASENN
    with pytest.raises(ValueError, match="swap"):
        toda.classify((2, 1, 1), 0, 1)
    with pytest.raises(ValueError):
        toda.classify((2, 2), 1, 1)


def test_seed_conventions_are_fixed():
    conv = toda.seed_conventions()
    assert conv["Case1N"]["sign"] == -1
    assert conv["Case1N"]["exponent"] == "-m(m+1)"
    assert conv["CaseNN"]["sign"] == 1
    assert conv["CaseNN"]["exponent"] == "-m(m+1)"


def _gauss_seq(**kw):
    pr = hgf.make_preset("gauss", a=0.4, b=0.5, c=1.3)
    return pr, toda.TauSequence(pr.partition, pr.alpha, 2, 3, **kw)


def test_tau_factors_multiply_to_tau():
    pr, seq = _gauss_seq(m_range=(-1, 1))
    x = SlicePoint(pr.partition, [0.05, 1.0, 2.3, -1.4])
    f = seq.factors(0, x)
    assert abs(f["C_m"] * f["t_m"] * f["g_m"] * f["F"] - seq.tau(0, x)) < 1e-14 * abs(seq.tau(0, x))
    assert f["C_m"] == 1


@pytest.mark.parametrize("m", [-1, 0, 1])
def test_gauss_tau_solves_bilinear_equation(m):
    pr, seq = _gauss_seq(m_range=(-2, 2))
    x = SlicePoint(pr.partition, [0.05, 1.0, 2.3, -1.4])
    assert toda.thde_residual(seq, m, x) < 1e-9
    assert toda.backlund_roundtrip(seq, m, x) < 1e-9


def test_outside_validated_range():
    pr, seq = _gauss_seq(m_range=(0, 0))
    x = SlicePoint(pr.partition, [0.05, 1.0, 2.3, -1.4])
    with pytest.raises(ValueError, match="outside the validated range"):
        toda.thde_residual(seq, 0, x)


def test_resonance_reports_offending_m():
    P = Partition((1, 1, 1, 1))
    with pytest.warns(UserWarning, match="integer"):
        al = AlphaParams.from_flat(P, [-1.2, -0.3, 0.5, -1.0])
    with pytest.raises(toda.ResonanceError, match="m = "):
        toda.TauSequence(P, al, 2, 3, m_range=(-1, 1))


def test_seed_solution_residual():
    P = Partition((2, 2))
    case = toda.classify(P, 0, 1)
    a, b = toda.seed_parameters(case, AlphaParams.from_flat(P, [0.7, 1, -2.7, 1]))
    s = toda.SeedSolution(case, a, b, A=1.3)
    for m in range(-3, 4):
        assert toda.seed_thde_residual(s, m, [1.0, 0.8, -0.5, 0.6]) < 1e-9
