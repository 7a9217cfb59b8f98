"""Acceptance criteria at their stated tolerances; one PASS/FAIL line each."""

import pytest

from phasecat.verify import (DEFAULT_SEED, check_cat_oracle, check_compass, check_degenerate,
                             check_global_sanity, check_kerr_coefficients, check_kho, check_lindblad_solution,
                             check_normal_form, check_signatures)


def report(capsys, result):
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


def test_ac1_cat_matches_fock_oracle(capsys):
    report(capsys, check_cat_oracle(seed=DEFAULT_SEED))


def test_ac2_normal_form_spectrum(capsys):
    report(capsys, check_normal_form(seed=DEFAULT_SEED))


def test_ac3_equal_covariances_give_linear_fringes(capsys):
    report(capsys, check_degenerate(seed=DEFAULT_SEED))


def test_ac4_covariance_evolution(capsys):
    report(capsys, check_lindblad_solution(seed=DEFAULT_SEED))


def test_ac5_signatures_preserved(capsys):
    report(capsys, check_signatures())


def test_ac6_kerr_coefficients(capsys):
    report(capsys, check_kerr_coefficients())


def test_ac7_compass_state(capsys):
    report(capsys, check_compass())


def test_ac8_kicked_oscillator_swarm(capsys):
    report(capsys, check_kho())


def test_ac9_global_sanity(capsys):
    report(capsys, check_global_sanity(seed=DEFAULT_SEED))


@pytest.mark.parametrize("seed", [1, 2])
def test_ac1_other_seeds(capsys, seed):
    res = check_cat_oracle(seed=seed, count=3)
    assert res.passed, res.line()
