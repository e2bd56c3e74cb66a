"""Smoke tests for the Python bindings: a few frozen closed-form values and
round trips through the main entry points."""

import math

import pytest

import cavsim


def std_params(g=3.0, gamma_s=1.0, delta=0.0):
    return cavsim.CavityParams(g=g, kappa=1.0, gamma_s=gamma_s, delta=delta)


def test_reflection_coefficient_frozen_values():
    # Empty cavity on resonance: full pi phase flip.
    r0 = cavsim.reflection_coefficient(0.0, cavsim.AtomLabel.g0, std_params())
    assert abs(r0 - (-1.0)) < 1e-12

    # Coupled atom, g=3, gamma_s=1, kappa=1 at omega=0: exactly 35/37.
    r1 = cavsim.reflection_coefficient(0.0, cavsim.AtomLabel.g1, std_params())
    assert abs(r1 - 35.0 / 37.0) < 1e-12

    # Lossless coupled cavity reflects with no phase at line center.
    r_lossless = cavsim.reflection_coefficient(
        0.0, cavsim.AtomLabel.g1, std_params(gamma_s=0.0)
    )
    assert abs(r_lossless - 1.0) < 1e-12


def test_reflect_matches_narrowband_oracle():
    params = std_params()
    grid = cavsim.default_reflection_grid(params, 240.0)
    pulse = cavsim.make_gaussian_pulse(240.0, grid)
    assert abs(cavsim.squared_norm(pulse) - 1.0) < 1e-12

    res = cavsim.reflect(pulse, cavsim.AtomLabel.g1, params)
    p_narrow = 1.0 - abs(cavsim.reflection_coefficient(0.0, cavsim.AtomLabel.g1, params)) ** 2
    assert res.loss_prob == pytest.approx(p_narrow, abs=2e-4)
    assert res.residual_excitation < 1e-6

    spec = cavsim.reflect_spectral(pulse, cavsim.AtomLabel.g1, params)
    assert spec.loss_prob == pytest.approx(res.loss_prob, abs=1e-4)


def test_empty_cavity_phase_flip():
    params = std_params(g=0.0, gamma_s=0.0)
    grid = cavsim.default_reflection_grid(params, 120.0)
    pulse = cavsim.make_gaussian_pulse(120.0, grid)
    res = cavsim.reflect(pulse, cavsim.AtomLabel.g0, params)
    assert abs(abs(res.conditional_phase) - math.pi) < 1e-3
    assert res.loss_prob < 1e-8


def test_two_photon_gate_ideal():
    params = std_params()
    grid = cavsim.default_reflection_grid(params, 240.0)
    pulse = cavsim.make_gaussian_pulse(240.0, grid)
    s = 1.0 / math.sqrt(2.0)
    report, lost = cavsim.two_photon_gate(
        s, s, s, s, pulse, params, cavsim.GateMode.ideal
    )
    assert report.fidelity == pytest.approx(1.0, abs=1e-12)
    assert report.success_prob == pytest.approx(1.0, abs=1e-12)
    assert lost == 0.0
    phases = dict(report.phases)
    assert phases["hh"] == pytest.approx(math.pi, abs=1e-9)
    assert phases["vv"] == pytest.approx(0.0, abs=1e-9)


def test_qnd_photon_number_truth_table():
    params = std_params(gamma_s=0.0)
    grid = cavsim.default_reflection_grid(params, 120.0)
    pulse = cavsim.make_gaussian_pulse(120.0, grid)
    outcomes = dict(
        cavsim.qnd_photon_number(1.0, 0.0, pulse, params, cavsim.GateMode.ideal)
    )
    assert outcomes["0"] == pytest.approx(1.0, abs=1e-12)
    assert outcomes["1"] == pytest.approx(0.0, abs=1e-12)


def test_atom_photon_gate_fidelity_high_for_long_pulse():
    result = cavsim.atom_photon_gate_fidelity(std_params(), 240.0)
    assert 0.998 <= result.conditional_fidelity <= 1.0
