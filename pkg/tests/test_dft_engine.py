"""Tests for the arbitrary-length FFT, decimation views, selection, Goertzel."""

import subprocess
import sys

import numpy as np
import pytest

from certfft import (
    DivisibilityError,
    OpCounter,
    Signal,
    SparseSpec,
    Spectrum,
    butterfly_model,
    decimate,
    decimated_view,
    dft_naive,
    fft_any,
    goertzel_mag,
    synthesize,
    top_k_select,
)
from certfft import _kernels_numba, _kernels_numpy


def random_signal(rng, n):
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n))


def toy_signal():
    return synthesize(SparseSpec(16, ((3, 5 + 0j), (11, 3 + 0j))))


class TestFftAny:
    def test_length_one(self):
        x = Signal(np.array([2.5 - 1j]))
        np.testing.assert_array_equal(fft_any(x).coeffs, x.samples)

    def test_matches_naive_all_small_lengths(self):
        rng = np.random.default_rng(1)
        for n in range(1, 129):
            x = random_signal(rng, n)
            ref = dft_naive(x).coeffs
            got = fft_any(x).coeffs
            scale = max(np.max(np.abs(ref)), 1e-30)
            np.testing.assert_allclose(got, ref, rtol=0, atol=1e-9 * scale)

    @pytest.mark.parametrize("n", [256, 667, 1073, 1081])
    def test_matches_naive_awkward_lengths(self, n):
        rng = np.random.default_rng(n)
        x = random_signal(rng, n)
        ref = dft_naive(x).coeffs
        got = fft_any(x).coeffs
        scale = np.max(np.abs(ref))
        np.testing.assert_allclose(got, ref, rtol=0, atol=1e-9 * scale)

    def test_charges_butterfly_model(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 16, 667):
            ops = OpCounter()
            fft_any(random_signal(rng, n), ops)
            assert ops.fft_butterflies == butterfly_model(n)
            assert ops.total == ops.fft_butterflies


class TestDecimate:
    def test_picks_every_dth_sample(self):
        x = Signal(np.arange(16, dtype=complex))
        got = decimate(x, 4)
        np.testing.assert_array_equal(got.samples, np.array([0, 4, 8, 12], dtype=complex))

    def test_stride_one_is_identity(self):
        x = toy_signal()
        np.testing.assert_array_equal(decimate(x, 1).samples, x.samples)

    def test_non_dividing_stride_rejected(self):
        with pytest.raises(DivisibilityError):
            decimate(toy_signal(), 3)


class TestDecimatedView:
    def test_toy_view_modulus_4(self):
        view = decimated_view(toy_signal(), 4, 4)
        assert view.exact and view.stride == 4
        assert view.residues == (3,)
        assert abs(view.selected[0][1] - 2.0) < 1e-12

    def test_toy_view_modulus_3_folded(self):
        view = decimated_view(toy_signal(), 3, 4)
        assert not view.exact and view.stride is None
        assert view.residues == (0, 2)

    def test_toy_view_modulus_5_folded(self):
        view = decimated_view(toy_signal(), 5, 4)
        assert view.residues == (3, 1)

    def test_zero_signal_selects_nothing(self):
        x = Signal(np.zeros(12, dtype=complex))
        for m in (1, 2, 3, 4, 6, 12):
            assert decimated_view(x, m, 4).selected == ()

    def test_folded_equals_exact_when_divisible(self):
        # both routes compute (m/N) * sum of aliased full-spectrum bins
        rng = np.random.default_rng(8)
        x = random_signal(rng, 60)
        full = dft_naive(x).coeffs
        for m in (2, 3, 5, 6, 10, 30):
            view = decimated_view(x, m, 5)
            fold = full.reshape(-1, m).sum(axis=0) * (m / 60)
            scale = max(np.max(np.abs(fold)), 1e-30)
            np.testing.assert_allclose(view.spectrum, fold, rtol=0, atol=1e-9 * scale)

    def test_selected_ordering_invariant(self):
        rng = np.random.default_rng(9)
        x = random_signal(rng, 210)
        view = decimated_view(x, 21, 8)
        mags = [m for _, m in view.selected]
        assert mags == sorted(mags, reverse=True)
        assert len({r for r, _ in view.selected}) == len(view.selected)
        assert all(m > 0 for m in mags)


class TestTopKSelect:
    def test_zero_bins_excluded(self):
        spec = Spectrum(np.array([0, 0, 0, 2], dtype=complex))
        assert top_k_select(spec, 4) == [(3, 2.0)]

    def test_tie_break_by_lower_index(self):
        spec = Spectrum(np.ones(4, dtype=complex))
        assert top_k_select(spec, 2) == [(0, 1.0), (1, 1.0)]

    def test_count_zero(self):
        spec = Spectrum(np.ones(4, dtype=complex))
        assert top_k_select(spec, 0) == []

    def test_floor_is_relative_to_peak(self):
        spec = Spectrum(np.array([1e-15, 1.0, 0.5], dtype=complex))
        assert top_k_select(spec, 3) == [(1, 1.0), (2, 0.5)]

    def test_deterministic(self):
        rng = np.random.default_rng(10)
        spec = Spectrum(rng.standard_normal(50) + 1j * rng.standard_normal(50))
        assert top_k_select(spec, 7) == top_k_select(spec, 7)


class TestGoertzel:
    def test_toy_bins(self):
        x = toy_signal()
        assert abs(goertzel_mag(x, 3) - 5.0) < 1e-9
        assert abs(goertzel_mag(x, 11) - 3.0) < 1e-9

    def test_impulse_is_flat(self):
        x = Signal(np.array([1.0] + [0.0] * 7, dtype=complex))
        for f in range(8):
            assert abs(goertzel_mag(x, f) - 1.0) < 1e-12

    def test_out_of_range_bin_rejected(self):
        x = toy_signal()
        with pytest.raises(ValueError):
            goertzel_mag(x, 16)
        with pytest.raises(ValueError):
            goertzel_mag(x, -1)

    def test_matches_naive_bins(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = int(rng.integers(1, 257))
            x = random_signal(rng, n)
            f = int(rng.integers(0, n))
            expect = abs(dft_naive(x).coeffs[f])
            assert abs(goertzel_mag(x, f) - expect) <= 1e-9 * max(expect, 1e-12)

    def test_matches_naive_every_bin(self):
        rng = np.random.default_rng(15)
        x = random_signal(rng, 60)
        expect = np.abs(dft_naive(x).coeffs)
        for f in range(60):
            assert abs(goertzel_mag(x, f) - expect[f]) <= 1e-9 * expect[f]

    def test_charges_n_per_call(self):
        x = toy_signal()
        ops = OpCounter()
        goertzel_mag(x, 3, ops)
        goertzel_mag(x, 11, ops)
        assert ops.goertzel_iterations == 32


class TestAliasingIdentity:
    def test_decimation_folds_spectrum(self):
        # d * X_d[r] == sum of full bins congruent to r (mod m)
        rng = np.random.default_rng(12)
        for n in (12, 16, 60):
            x = random_signal(rng, n)
            full = dft_naive(x).coeffs
            scale = np.max(np.abs(full))
            for m in (m for m in range(1, n + 1) if n % m == 0):
                d = n // m
                dec = fft_any(decimate(x, d)).coeffs
                folded = full.reshape(d, m).sum(axis=0)
                np.testing.assert_allclose(
                    d * dec, folded, rtol=0, atol=1e-9 * scale
                )


class TestBackends:
    def test_radix2_kernels_agree(self):
        rng = np.random.default_rng(13)
        for n in (1, 2, 8, 64, 1024):
            a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            got_nb = _kernels_numba.radix2_fft_inplace(a.astype(complex).copy())
            got_np = _kernels_numpy.radix2_fft_inplace(a.astype(complex).copy())
            np.testing.assert_allclose(got_nb, got_np, rtol=0, atol=1e-9 * n)

    def test_goertzel_kernels_agree(self):
        rng = np.random.default_rng(14)
        x = rng.standard_normal(200) + 1j * rng.standard_normal(200)
        for f in (0, 1, 57, 100, 199):
            a = _kernels_numba.goertzel_mag(x.astype(complex), f)
            b = _kernels_numpy.goertzel_mag(x.astype(complex), f)
            assert abs(a - b) < 1e-9 * max(abs(a), 1.0)

    def test_env_flag_selects_numpy_backend(self):
        import os

        code = "import certfft; print(certfft.backend_name())"
        env = dict(os.environ, CERTFFT_BACKEND="numpy")
        out = subprocess.run(
            [sys.executable, "-c", code],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == "numpy"
