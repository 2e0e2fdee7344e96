import random

import numpy as np
import pytest

from diffspec.gf2m import GF2m
from diffspec.powerfn import (
    PowerFunction,
    delta,
    delta_via_normalization,
    derivative_table,
    differential_uniformity,
    is_permutation_exponent,
    solution_set,
    spectrum_brute,
)


@pytest.fixture(scope="module")
def f16():
    return GF2m(4)


@pytest.fixture(scope="module")
def f256():
    return GF2m(8)


def naive_spectrum(f):
    """Independent oracle: per-b counting with the scalar evaluator only."""
    order = f.field.order
    image = [f.eval(x ^ 1) ^ f.eval(x) for x in range(order)]
    hist = {}
    for b in range(order):
        c = image.count(b)
        hist[c] = hist.get(c, 0) + 1
    return hist


# -- derivative tables ---------------------------------------------------------

def test_linear_exponents_have_constant_derivative(f16):
    assert set(derivative_table(PowerFunction(f16, 1)).tolist()) == {1}
    assert set(derivative_table(PowerFunction(f16, 2)).tolist()) == {1}


def test_derivative_pairing_symmetry(f16, f256):
    for fld, d in ((f16, 13), (f256, 83), (f256, 7)):
        img = derivative_table(PowerFunction(fld, d))
        xs = np.arange(fld.order)
        assert np.array_equal(img[xs ^ 1], img)


def test_image_table_matches_scalar_eval(f256):
    f = PowerFunction(f256, 83)
    table = f.image_table()
    for x in range(f256.order):
        assert int(table[x]) == f.eval(x)


def test_exponent_reporting(f16):
    assert PowerFunction(f16, 0).reported_exponent == 0
    assert PowerFunction(f16, 13).reported_exponent == 13
    assert PowerFunction(f16, 15).reported_exponent == 15   # not 0: 0^15 = 0
    assert PowerFunction(f16, 30).reported_exponent == 15
    assert PowerFunction(f16, 16).reported_exponent == 1
    with pytest.raises(ValueError):
        PowerFunction(f16, -1)


def test_zero_exponent_convention(f16):
    assert PowerFunction(f16, 0).image_table().tolist() == [1] * 16


# -- delta ----------------------------------------------------------------------

def test_delta_family_fixed_counts(make_params):
    for n in (1, 2):
        p = make_params(n)
        f = p.power_function()
        assert delta(f, 1, 1) == p.q * p.q
        assert delta(f, 1, 0) == 0


def test_delta_linear(f16):
    assert delta(PowerFunction(f16, 1), 1, 1) == 16


def test_delta_rejects_zero_difference(f16):
    with pytest.raises(ValueError):
        delta(PowerFunction(f16, 13), 0, 1)
    with pytest.raises(ValueError):
        delta_via_normalization(PowerFunction(f16, 13), 0, 1)


def test_delta_even_and_totals(f16):
    for d in (3, 7, 13):
        f = PowerFunction(f16, d)
        counts = [delta(f, 1, b) for b in range(16)]
        assert all(c % 2 == 0 for c in counts)
        assert sum(counts) == 16


def test_delta_normalization_exhaustive_m4(f16):
    f = PowerFunction(f16, 13)
    for a in range(1, 16):
        for b in range(16):
            assert delta(f, a, b) == delta_via_normalization(f, a, b)


@pytest.mark.parametrize("m,d", [(8, 83), (12, 583)])
def test_delta_normalization_sampled(m, d):
    fld = GF2m(m)
    f = PowerFunction(fld, d)
    rng = random.Random(d)
    for _ in range(1000):
        a = rng.randrange(1, fld.order)
        b = rng.randrange(fld.order)
        assert delta(f, a, b) == delta_via_normalization(f, a, b)


def test_delta_normalization_identity_cases(f16):
    f = PowerFunction(f16, 13)
    assert delta_via_normalization(f, 3, 0) == delta(f, 1, 0)
    assert delta_via_normalization(f, 1, 5) == delta(f, 1, 5)


def test_solution_set_sizes(f16):
    f = PowerFunction(f16, 13)
    for b in range(16):
        sols = solution_set(f, b)
        assert len(sols) == delta(f, 1, b)
        for x in sols:
            assert f.eval(x ^ 1) ^ f.eval(x) == b


# -- spectra ---------------------------------------------------------------------

def test_spectrum_frozen_values(f16, f256):
    assert spectrum_brute(PowerFunction(f16, 13)).entries == {0: 9, 2: 6, 4: 1}
    assert spectrum_brute(PowerFunction(f16, 3)).entries == {0: 8, 2: 8}
    assert spectrum_brute(PowerFunction(f256, 83)).entries == {0: 155, 2: 96, 12: 4, 16: 1}
    for fld in (f16, f256):
        assert spectrum_brute(PowerFunction(fld, 2)).entries == {0: fld.order - 1, fld.order: 1}


def test_spectrum_against_naive_oracle(f16):
    for d in (3, 7, 13, 5):
        assert spectrum_brute(PowerFunction(f16, d)).entries == naive_spectrum(PowerFunction(f16, d))


def test_spectrum_sum_identities(f16, f256):
    for fld, d in ((f16, 13), (f16, 3), (f256, 83), (f256, 7)):
        s = spectrum_brute(PowerFunction(fld, d))
        assert s.count_total() == fld.order
        assert s.solution_total() == fld.order


def test_spectrum_modulus_independence():
    a = spectrum_brute(PowerFunction(GF2m(8, 0x11B), 83))
    b = spectrum_brute(PowerFunction(GF2m(8, 0x11D), 83))
    assert a.entries == b.entries


def test_differential_uniformity(f16, make_params):
    assert differential_uniformity(make_params(2).power_function()) == 16
    assert differential_uniformity(PowerFunction(f16, 3)) == 2   # Gold, APN
    assert differential_uniformity(PowerFunction(f16, 1)) == 16


def test_permutation_exponent_predicate():
    assert is_permutation_exponent(13, 4)
    assert not is_permutation_exponent(3, 4)
    for n in range(1, 9):
        d = (1 << 3 * n) + (1 << 2 * n) + (1 << n) - 1
        assert is_permutation_exponent(d, 4 * n)


def test_permutation_derivative_never_hits_zero(f16, f256):
    for fld, d in ((f16, 13), (f256, 83)):
        assert is_permutation_exponent(d, fld.degree)
        assert delta(PowerFunction(fld, d), 1, 0) == 0
        assert 0 not in derivative_table(PowerFunction(fld, d))


def test_spectrum_json_shape(f256):
    payload = spectrum_brute(PowerFunction(f256, 83)).to_json_dict()
    assert set(payload) == {"m", "d", "poly", "spectrum", "uniformity"}
    assert payload["poly"] == "0x11b"
    keys = [int(k) for k in payload["spectrum"]]
    assert keys == sorted(keys)
    assert payload["uniformity"] == 16
