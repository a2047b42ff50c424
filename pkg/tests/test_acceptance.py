"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with the worst measured residual
relative to its threshold.  Run with ``pytest -s`` or directly as a script
to see the lines.
"""

import math
import sys

import pytest

from hgtoda import cli, toda, verify

SEED = 7
_capsys = None
_cache: dict[str, list] = {}


@pytest.fixture(autouse=True)
def _console(capsys):
    global _capsys
    _capsys = capsys
    yield


def _checks(suite: str) -> list[verify.Check]:
    if suite not in _cache:
        _cache[suite] = verify.run_suites([suite], SEED)
    return _cache[suite]


def _ratio(c: verify.Check) -> float:
    if not math.isfinite(c.residual):
        return math.inf
    if c.threshold == 0:
        return 0.0 if c.residual == 0 else math.inf
    return c.residual / c.threshold


def _report(number: int, title: str, checks: list[verify.Check]) -> bool:
    ok = bool(checks) and all(c.passed for c in checks)
    worst = max(checks, key=_ratio)
    failing = [c.id for c in checks if not c.passed]
    line = (f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}: {len(checks)} checks, "
            f"worst {worst.id} residual {worst.residual:.3e} <= {worst.threshold:.0e}")
    if failing:
        line += f"; failing: {', '.join(failing[:5])}"
    with _capsys.disabled():
        print(line)
    return ok


def _select(suite: str, prefixes=None) -> list[verify.Check]:
    cs = _checks(suite)
    if prefixes:
        cs = [c for c in cs if c.id.split("/")[1] in prefixes]
    return cs


def test_criterion_01_jet_kernel():
    assert _report(1, "jet ring, inverse, transcendental and finite-difference identities", _select("jets"))


def test_criterion_02_series_duality():
    assert _report(2, "theta/psi series identities and character homomorphism", _select("series"))


def test_criterion_03_classical_oracles():
    cs = _select("oracles", {"gauss", "kummer"})
    assert len(cs) == 10
    assert _report(3, "Gauss and Kummer presets vs Beta-normalized series", cs)


def test_criterion_04_covariance():
    cs = _select("covariance")
    assert len(cs) == 50
    assert _report(4, "covariance under near-identity Jordan elements", cs)


def test_criterion_05_contiguity():
    cs = _select("contiguity")
    assert len(cs) == 12 + 6 + 2
    assert _report(5, "contiguity for every ordered block pair", cs)


def test_criterion_06_reduced_systems():
    assert _report(6, "reduced systems annihilate presets; operator identities", _select("reduced"))


def test_criterion_07_laplace_engine():
    assert _report(7, "Laplace engine vs closed forms, invariant recurrences, 2d Toda", _select("laplace"))


def test_criterion_08_seed_solutions():
    cs = _select("seeds")
    exps = {c.detail.get("exponent") for c in cs if c.id.startswith("seeds/CaseNN") or
            c.id.startswith("seeds/Case1N")}
    assert len(exps) == 1, f"seed exponent not unique: {exps}"
    assert _report(8, f"seed solutions solve the bilinear equation (E(m) = {exps.pop()})", cs)


def test_criterion_09_tau_sequences():
    cs = _select("tau", None)
    cs = [c for c in cs if "/thde/" in c.id or "/roundtrip/" in c.id]
    assert len(cs) == 3 * 3 * (5 + 4)
    assert _report(9, "tau sequences on Gauss, Kummer, Bessel; Backlund roundtrip", cs)


def test_criterion_10_determinism(tmp_path):
    outs = []
    for k in range(2):
        target = tmp_path / f"run{k}.json"
        code = cli.main(["verify", "--suite", "all", "--seed", str(SEED), "--out", str(target)])
        assert code == 0
        outs.append(target.read_bytes())
    same = outs[0] == outs[1]
    check = verify.Check("determinism/verify-all-seed7", "determinism", 0.0 if same else math.inf, 0.0)
    assert _report(10, "two verify runs give byte-identical reports", [check])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
