"""Tests for modular arithmetic, Garner reconstruction, and gated candidates."""

import math
from itertools import product

import numpy as np
import pytest

from certfft import (
    ConfigurationError,
    ModuliConfig,
    NoInverseError,
    OpCounter,
    affine_coeffs,
    alias_expand,
    garner2,
    gate_candidates,
    mod_inverse,
)


class TestModInverse:
    def test_identity(self):
        assert mod_inverse(1, 7) == 1

    def test_known_value(self):
        assert mod_inverse(10, 21) == 19
        assert (10 * 19) % 21 == 1

    def test_no_inverse(self):
        with pytest.raises(NoInverseError):
            mod_inverse(4, 6)

    def test_small_modulus_rejected(self):
        with pytest.raises(ValueError):
            mod_inverse(3, 1)

    def test_random_inverses_verify(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            m = int(rng.integers(2, 10_000))
            a = int(rng.integers(1, m))
            if math.gcd(a, m) != 1:
                continue
            t = mod_inverse(a, m)
            assert 1 <= t < m and (a * t) % m == 1


class TestGarner2:
    def test_toy_class_base(self):
        assert garner2(3, 0, 4, 3) == 3

    def test_toy_second_class(self):
        assert garner2(3, 2, 4, 3) == 11

    def test_zero_pair(self):
        assert garner2(0, 0, 7, 9) == 0

    def test_residue_out_of_range(self):
        with pytest.raises(ValueError):
            garner2(4, 0, 4, 3)
        with pytest.raises(ValueError):
            garner2(0, -1, 4, 3)

    def test_non_coprime_rejected(self):
        with pytest.raises(NoInverseError):
            garner2(1, 1, 6, 9)

    def test_product_limit_enforced(self):
        with pytest.raises(ValueError):
            garner2(0, 0, 2**32, 2**32 + 1)

    def test_exhaustive_small_moduli(self):
        # congruences hold and the map is a bijection onto [0, m1*m2)
        for m1 in range(1, 13):
            for m2 in range(1, 13):
                if math.gcd(m1, m2) != 1:
                    continue
                seen = set()
                for r1, r2 in product(range(m1), range(m2)):
                    f = garner2(r1, r2, m1, m2)
                    assert 0 <= f < m1 * m2
                    assert f % m1 == r1 and f % m2 == r2
                    seen.add(f)
                assert len(seen) == m1 * m2


def cfg_toy():
    return ModuliConfig(4, 3, 5, 16)


def cfg_degenerate():
    return ModuliConfig(10, 21, 6, 210)


class TestModuliConfig:
    def test_toy_flags(self):
        cfg = cfg_toy()
        assert cfg.product == 12
        assert cfg.strides == (4, None, None)
        assert cfg.pairwise_coprime and not cfg.vulnerable

    def test_degenerate_flags(self):
        cfg = cfg_degenerate()
        assert cfg.strides == (21, 10, 35)
        assert cfg.vulnerable and not cfg.pairwise_coprime

    def test_monte_carlo_case_flags(self):
        cfg = ModuliConfig(15, 77, 21, 1155)
        assert cfg.vulnerable and not cfg.pairwise_coprime
        assert cfg.strides == (77, 15, 55)

    def test_non_coprime_m1_m2_rejected(self):
        with pytest.raises(ConfigurationError):
            ModuliConfig(6, 9, 5, 90)

    def test_view1_modulus_must_divide(self):
        with pytest.raises(ConfigurationError):
            ModuliConfig(5, 3, 4, 16)

    def test_modulus_exceeding_n_rejected(self):
        with pytest.raises(ConfigurationError):
            ModuliConfig(4, 3, 17, 16)

    def test_product_limit(self):
        big = 2**33
        with pytest.raises(ConfigurationError):
            ModuliConfig(big, big + 1, 4, big * (big + 1))


class TestAffineCoeffs:
    def test_small_degenerate_values(self):
        co = affine_coeffs(cfg_degenerate())
        assert (co.gamma, co.v, co.u) == (19, 4, 3)

    def test_u_plus_v_is_one(self):
        for cfg in (cfg_toy(), cfg_degenerate(), ModuliConfig(15, 77, 21, 1155)):
            co = affine_coeffs(cfg)
            assert (co.u + co.v) % cfg.m3 == 1

    def test_exhaustive_identity_small(self):
        cfg = cfg_degenerate()
        co = affine_coeffs(cfg)
        for r1, r2 in product(range(10), range(21)):
            lhs = garner2(r1, r2, 10, 21) % 6
            assert lhs == (co.u * r1 + co.v * r2) % 6

    def test_sampled_identity_large(self):
        cfg = ModuliConfig(1081, 1073, 667, 1081 * 1073)
        co = affine_coeffs(cfg)
        assert (1081 * co.gamma) % 1073 == 1
        rng = np.random.default_rng(42)
        for _ in range(10_000):
            r1 = int(rng.integers(0, 1081))
            r2 = int(rng.integers(0, 1073))
            assert garner2(r1, r2, 1081, 1073) % 667 == (co.u * r1 + co.v * r2) % 667

    def test_prime_construction_structure(self):
        # m3 = g1*g2: u is (1 mod g1, 0 mod g2); v is (0 mod g1, 1 mod g2)
        for g1, g2, m1p, m2p in ((2, 3, 5, 7), (23, 29, 47, 37)):
            cfg = ModuliConfig(g1 * m1p, g2 * m2p, g1 * g2, g1 * m1p * g2 * m2p)
            co = affine_coeffs(cfg)
            assert co.u % g1 == 1 and co.u % g2 == 0
            assert co.v % g1 == 0 and co.v % g2 == 1


class TestAliasExpand:
    def test_toy_base_has_two_aliases(self):
        assert alias_expand(3, 12, 16) == [3, 15]

    def test_toy_second_base_single(self):
        assert alias_expand(11, 12, 16) == [11]

    def test_full_range_modulus(self):
        assert alias_expand(0, 16, 16) == [0]

    def test_base_beyond_n_is_empty(self):
        assert alias_expand(15, 16, 12) == []

    def test_count_formula(self):
        for f_base, big_m, n in ((3, 12, 16), (0, 5, 23), (4, 5, 23), (7, 100, 10)):
            got = alias_expand(f_base, big_m, n)
            if f_base < n:
                assert len(got) == 1 + (n - 1 - f_base) // big_m
            else:
                assert got == []

    def test_bad_base_rejected(self):
        with pytest.raises(ValueError):
            alias_expand(12, 12, 16)


class TestGateCandidates:
    def test_toy_gating(self):
        cfg = cfg_toy()
        r1 = [(3, 2.0)]
        r2 = [(0, 0.9375), (2, 0.5625)]
        r3 = [(3, 1.5625), (1, 0.9375)]
        got = gate_candidates(r1, r2, r3, cfg)
        assert [c.freq for c in got.candidates] == [3, 11]
        assert got.survivors_prededup == 2
        # alias 15 of the (3, 0) pair fails the gate: 15 mod 5 = 0 not in R3
        assert 15 not in [c.freq for c in got.candidates]
        assert got.candidates[0].est_magnitude == pytest.approx(0.9375)
        assert got.candidates[1].est_magnitude == pytest.approx(0.5625)

    def test_empty_gate_set_blocks_everything(self):
        cfg = cfg_toy()
        got = gate_candidates([(3, 2.0)], [(0, 1.0)], [], cfg)
        assert got.candidates == () and got.survivors_prededup == 0

    def test_degenerate_all_pairs_pass(self):
        cfg = cfg_degenerate()
        r1 = [(r, 1.0) for r in (0, 2, 4, 6)]
        r2 = [(r, 1.0) for r in (0, 18, 15, 12)]
        r3 = [(0, 1.0)]
        got = gate_candidates(r1, r2, r3, cfg)
        assert got.survivors_prededup == 16
        assert len(got.candidates) == 16
        assert all(c.freq % 6 == 0 for c in got.candidates)

    def test_candidates_sorted_and_sound(self):
        cfg = cfg_degenerate()
        r1 = [(r, 1.0) for r in (0, 2, 4, 6)]
        r2 = [(r, 1.0) for r in (0, 18, 15, 12)]
        r3 = [(0, 1.0)]
        got = gate_candidates(r1, r2, r3, cfg)
        freqs = [c.freq for c in got.candidates]
        assert freqs == sorted(freqs)
        for c in got.candidates:
            assert c.freq % cfg.m1 == c.source[0]
            assert c.freq % cfg.m2 == c.source[1]
            assert c.freq % cfg.m3 in {0}

    def test_residue_out_of_range_rejected(self):
        cfg = cfg_toy()
        with pytest.raises(ValueError):
            gate_candidates([(4, 1.0)], [(0, 1.0)], [(0, 1.0)], cfg)

    def test_pair_ops_counted(self):
        cfg = cfg_toy()
        ops = OpCounter()
        gate_candidates(
            [(3, 2.0)], [(0, 0.9), (2, 0.5)], [(3, 1.5)], cfg, ops
        )
        assert ops.crt_pair_ops == 2

    def test_alias_admission_counts_separately(self):
        # with an all-accepting gate, both aliases of one pair are admitted
        cfg = cfg_toy()
        r3 = [(r, 1.0) for r in range(5)]
        got = gate_candidates([(3, 2.0)], [(0, 1.0)], r3, cfg)
        assert got.survivors_prededup == 2
        assert [c.freq for c in got.candidates] == [3, 15]

    def test_random_sets_output_is_sound(self):
        # every candidate is a gated alias of the Garner image of its source
        rng = np.random.default_rng(33)
        cfg = ModuliConfig(12, 35, 10, 840)
        for _ in range(20):
            r1 = [(int(r), 1.0) for r in rng.choice(12, 4, replace=False)]
            r2 = [(int(r), 1.0) for r in rng.choice(35, 4, replace=False)]
            r3 = [(int(r), 1.0) for r in rng.choice(10, 3, replace=False)]
            accept = {r for r, _ in r3}
            got = gate_candidates(r1, r2, r3, cfg)
            assert got.survivors_prededup == len(got.candidates)
            for c in got.candidates:
                assert 0 <= c.freq < cfg.n
                assert c.freq % cfg.m1 == c.source[0]
                assert c.freq % cfg.m2 == c.source[1]
                assert c.freq % cfg.m3 in accept
                base = garner2(c.source[0], c.source[1], cfg.m1, cfg.m2)
                assert c.freq % cfg.product == base
