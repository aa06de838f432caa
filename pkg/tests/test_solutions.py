import cmath
import warnings

import numpy as np
import pytest

from gharmonics import (
    AliasWarning,
    BadSampleCount,
    CircleSamples,
    DivisorNearZero,
    ModeCoefficient,
    Params,
    SolutionSeries,
    decompose_circle,
    eval_P,
    eval_solution,
    eval_theta,
    extract_coefficients,
    fejer_reconstruct,
    mode_value,
    modes_from_taylor,
)
from gharmonics.solutions import circle_points, sample_circle

from conftest import rand_complex, rand_params

TOL = 1e-16


def random_solution(rng, n_modes=6, max_m=10, bound=1.0):
    p = rand_params(rng, bound)
    ms = rng.choice(np.arange(-max_m, max_m + 1), n_modes, replace=False)
    return SolutionSeries(p, tuple(ModeCoefficient(int(m), rand_complex(rng, 1.0)) for m in ms))


class TestModeValue:
    def test_constant_mode_at_origin(self):
        assert mode_value(Params(1, 2, 3), 0, 1, 0) == 1

    @pytest.mark.parametrize("m", [0, 1, 3, 7])
    def test_laplace_monomials(self, m):
        z = 0.3 - 0.4j
        assert mode_value(Params(), m, 2j, z) == pytest.approx(2j * z**m, rel=1e-15)
        assert mode_value(Params(), -m, 2j, z) == pytest.approx(2j * z.conjugate() ** m, rel=1e-15)

    def test_helmholtz_mode(self):
        r, m, z = 1.5 - 0.5j, 3, 0.2 + 0.55j
        expected = eval_theta(m, r * abs(z) ** 2) * z**m
        assert mode_value(Params(0, 0, r), m, 1, z) == pytest.approx(expected, rel=1e-14)

    def test_negative_mode_uses_swapped_parameters(self):
        p = Params(0.3, -1.2 + 0.4j, 0.7j)
        z = 0.4 + 0.1j
        expected = 0.5 * eval_P(Params(p.t, p.s, p.r), 4, abs(z) ** 2) * z.conjugate() ** 4
        assert mode_value(p, -4, 0.5, z) == pytest.approx(expected, rel=1e-15)

    def test_conjugation(self, rng):
        for _ in range(40):
            p = rand_params(rng, 2)
            m = int(rng.integers(1, 12))
            k = rand_complex(rng, 2)
            z = rand_complex(rng, 0.95)
            lhs = mode_value(p, -m, k, z)
            q = Params(p.t.conjugate(), p.s.conjugate(), p.r.conjugate())
            rhs = mode_value(q, m, k.conjugate(), z).conjugate()
            assert abs(lhs - rhs) < 10 * TOL * max(1.0, abs(lhs)) * 10

    def test_rotation_covariance(self, rng):
        for _ in range(40):
            p = rand_params(rng, 2)
            m = int(rng.integers(-10, 11))
            z = rand_complex(rng, 0.9)
            theta = 2 * np.pi * rng.random()
            k = rand_complex(rng)
            rotated = mode_value(p, m, k, cmath.exp(1j * theta) * z)
            assert abs(rotated - cmath.exp(1j * m * theta) * mode_value(p, m, k, z)) < 1e-14


class TestSeries:
    def test_empty(self):
        assert eval_solution(SolutionSeries(Params(1, 1, 1)), 0.3j) == 0

    def test_single_mode(self):
        p = Params(0.2, 0.1, -0.4)
        sol = SolutionSeries(p, (ModeCoefficient(3, 1 - 1j),))
        assert eval_solution(sol, 0.5 + 0.2j) == mode_value(p, 3, 1 - 1j, 0.5 + 0.2j)

    def test_real_part(self):
        sol = SolutionSeries(Params(), ((1, 1), (-1, 1)))
        z = 0.3 - 0.7j
        assert eval_solution(sol, z) == pytest.approx(2 * z.real, abs=1e-16)

    def test_duplicate_modes_rejected(self):
        with pytest.raises(ValueError):
            SolutionSeries(Params(), ((1, 1), (1, 2)))

    def test_linearity(self, rng):
        for _ in range(10):
            a = random_solution(rng)
            b = SolutionSeries(a.params, tuple(ModeCoefficient(mc.m + 0, rand_complex(rng)) for mc in random_solution(rng).modes))
            zs = np.array([rand_complex(rng, 0.9) for _ in range(8)])
            lhs = eval_solution(a + b, zs)
            rhs = eval_solution(a, zs) + eval_solution(b, zs)
            assert np.max(np.abs(lhs - rhs)) < 1e-14

    def test_declared_bound(self):
        sol = SolutionSeries(Params(), ((0, 1), (5, 30)))
        sol.check_bounds(B=1, rho0=0.5)
        with pytest.raises(ValueError):
            sol.check_bounds(B=1, rho0=0.9)
        assert ModeCoefficient(-3, 8).within_bound(1, 0.5)


class TestTaylor:
    def test_constant(self):
        sol = modes_from_taylor(Params(1, 0, 0), [2.5])
        assert sol.coefficients() == {0: 2.5}

    def test_first_and_second_order(self):
        assert modes_from_taylor(Params(), [0, 1]).coefficients()[1] == 1
        assert modes_from_taylor(Params(), [0, 0, 6]).coefficients()[2] == 3

    def test_negative_side(self):
        coeffs = modes_from_taylor(Params(), [1], [4, 12]).coefficients()
        assert coeffs[-1] == 4 and coeffs[-2] == 6

    def test_rebuild_from_derivatives(self):
        p = Params(0.4, -0.1j, 0.3)
        sol = SolutionSeries(p, ((0, 1.0), (1, 0.5j), (2, -0.25), (-1, 0.7), (-3, 0.2j)))
        rebuilt = modes_from_taylor(p, [1.0, 0.5j, -0.25 * 2], [0.7, 0, 0.2j * 6])
        zs = np.array([0.1, 0.3j, -0.5 + 0.2j])
        expected = eval_solution(sol, zs)
        assert np.max(np.abs(eval_solution(rebuilt, zs) - expected)) < 1e-15


def test_small_radius_limit_gives_coefficients(rng):
    sol = random_solution(rng, n_modes=5, max_m=4)
    want = sol.coefficients()
    for rho in (1e-2, 5e-3):
        c = decompose_circle(sample_circle(lambda z: eval_solution(sol, z), rho, 16))
        for m, k in want.items():
            # radial factor is 1 + O(rho^2)
            assert abs(c[m] / rho ** abs(m) - k) < 10 * rho**2


class TestDecompose:
    def test_constant(self):
        c = decompose_circle(CircleSamples(0.5, np.ones(16)))
        assert c[0] == pytest.approx(1)
        assert all(abs(v) < 1e-15 for m, v in c.items() if m)

    def test_identity_function(self):
        rho = 0.6
        c = decompose_circle(sample_circle(lambda z: z, rho, 64))
        assert abs(c[1] - rho) < 1e-12
        assert all(abs(v) < 1e-12 for m, v in c.items() if m != 1)
        assert set(c) == set(range(-31, 32))

    def test_single_mode(self):
        p = Params(0.5, 0.2, -1)
        rho, m0, k = 0.5, 3, 0.4 - 0.3j
        c = decompose_circle(sample_circle(lambda z: mode_value(p, m0, k, z), rho, 32))
        assert abs(c[m0] - k * eval_P(p, m0, rho**2) * rho**m0) < 1e-15

    def test_bad_count(self):
        with pytest.raises(BadSampleCount):
            CircleSamples(0.5, np.ones(12))
        with pytest.raises(ValueError):
            CircleSamples(1.0, np.ones(8))


class TestExtract:
    def test_round_trip(self, rng):
        for _ in range(10):
            sol = random_solution(rng, n_modes=8, max_m=12)
            got = extract_coefficients(lambda z: eval_solution(sol, z), sol.params, range(-12, 13))
            want = sol.coefficients()
            for mc in got:
                assert abs(mc.k - want.get(mc.m, 0)) < 1e-10

    def test_zero_sampler(self):
        got = extract_coefficients(lambda z: np.zeros_like(z), Params(1, 1, 1), range(-4, 5))
        assert all(mc.k == 0 for mc in got)

    def test_real_part_under_laplace(self):
        got = {mc.m: mc.k for mc in extract_coefficients(lambda z: np.real(z), Params(), range(-5, 6), N=64)}
        assert abs(got[1] - 0.5) < 1e-14 and abs(got[-1] - 0.5) < 1e-14
        assert all(abs(k) < 1e-14 for m, k in got.items() if abs(m) != 1)

    def test_scalar_sampler_is_accepted(self):
        got = extract_coefficients(lambda z: complex(z) ** 2, Params(), [2], N=16)
        assert abs(got[0].k - 1) < 1e-14

    def test_alias_warning(self):
        with pytest.warns(AliasWarning):
            extract_coefficients(lambda z: z, Params(), [8], N=16)

    def test_divisor_floor(self):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AliasWarning)
            with pytest.raises(DivisorNearZero):
                extract_coefficients(lambda z: z, Params(), [1100], rho=0.5, N=16)

    def test_larger_rho_for_high_modes(self, rng):
        # high modes lose accuracy like eps / rho^|m|; a larger radius restores it
        p = rand_params(rng)
        sol = SolutionSeries(p, ((40, 1.0), (-35, 0.5j), (0, 2.0)))
        got = {mc.m: mc.k for mc in extract_coefficients(lambda z: eval_solution(sol, z), p, [40, -35, 0], rho=0.9)}
        assert abs(got[40] - 1.0) < 1e-10 and abs(got[-35] - 0.5j) < 1e-10


class TestFejer:
    @pytest.mark.parametrize("N", [0, 1, 5, 20])
    def test_constant(self, N):
        assert fejer_reconstruct(lambda rho, th: np.ones_like(th), N, 0.3 + 0.1j) == pytest.approx(1)

    @pytest.mark.parametrize("N, weight", [(1, 0.5), (9, 0.9)])
    def test_identity_weights(self, N, weight):
        z = 0.4 - 0.2j
        got = fejer_reconstruct(lambda rho, th: rho * np.exp(1j * th), N, z)
        assert got == pytest.approx(weight * z, abs=1e-15)

    def test_converges_to_solution(self, rng):
        sol = SolutionSeries(rand_params(rng), ((0, 1.0), (2, 0.5 - 0.5j), (-3, 0.8j)))

        def polar(rho, theta):
            return eval_solution(sol, rho * np.exp(1j * np.asarray(theta)))

        for _ in range(5):
            z = rand_complex(rng, 0.5)
            assert abs(fejer_reconstruct(polar, 255, z) - eval_solution(sol, z)) < 1e-2

    def test_origin(self):
        assert fejer_reconstruct(lambda rho, th: 3 + rho * np.exp(1j * th), 4, 0) == pytest.approx(3)
