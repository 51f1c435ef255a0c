import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import loggamma

from mp_spectra.errors import DomainError
from mp_spectra.specfun import (
    hyp2f1_terminating,
    laguerre,
    laguerre_sequence,
    ln_gamma_complex,
    ln_gamma_real,
    pochhammer,
)


class TestLnGammaReal:
    def test_integer_points(self):
        assert ln_gamma_real(1.0) == 0.0
        assert ln_gamma_real(2.0) == 0.0
        assert ln_gamma_real(5.0) == pytest.approx(math.log(math.factorial(4)), rel=1e-15)

    @pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            ln_gamma_real(x)

    def test_recurrence(self):
        for x in np.geomspace(0.5, 100, 60):
            lhs = math.exp(ln_gamma_real(x + 1))
            rhs = x * math.exp(ln_gamma_real(x))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_large_argument(self):
        for x in (1e3, 1e5, 1e6):
            ref = float(loggamma(x).real)
            assert ln_gamma_real(x) == pytest.approx(ref, rel=1e-13)


class TestLnGammaComplex:
    def test_one(self):
        assert ln_gamma_complex(1 + 0j) == pytest.approx(0j, abs=1e-15)

    def test_half(self):
        v = ln_gamma_complex(0.5 + 0j)
        assert v.real == pytest.approx(0.5 * math.log(math.pi), abs=1e-14)
        assert v.imag == 0.0

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.0])
    def test_modulus_identity(self, z):
        lg = ln_gamma_complex(complex(1.0, z))
        assert math.exp(2 * lg.real) == pytest.approx(math.pi * z / math.sinh(math.pi * z), rel=1e-12)

    def test_modulus_identity_dense(self):
        z = np.linspace(1e-3, 10, 400)
        lg = ln_gamma_complex(1 + 1j * z)
        ref = np.pi * z / np.sinh(np.pi * z)
        assert np.max(np.abs(np.exp(2 * lg.real) / ref - 1)) < 1e-12

    def test_real_axis_matches_real_routine(self):
        for x in np.geomspace(0.05, 200, 80):
            assert ln_gamma_complex(complex(x, 0.0)).real == pytest.approx(ln_gamma_real(x), abs=1e-12, rel=1e-12)

    def test_against_scipy_grid(self):
        re = np.array([0.05, 0.3, 0.5, 1.0, 1.1, 3.1, 10.0, 100.0])
        im = np.array([-30.0, -1.0, 0.0, 0.1, 1.0, 5.0, 10.0, 50.0])
        w = re[:, None] + 1j * im[None, :]
        diff = ln_gamma_complex(w) - loggamma(w)
        assert np.max(np.abs(diff)) < 1e-12

    def test_conjugate_symmetry(self):
        w = np.array([1.1 + 0.7j, 3.1 + 2.0j, 0.2 + 5.0j])
        np.testing.assert_allclose(ln_gamma_complex(w.conj()), np.conj(ln_gamma_complex(w)), atol=1e-15)

    def test_branch_is_continuous(self):
        # Im lnΓ(1+iz) decreases past -π without wrapping
        z = np.linspace(0, 40, 4001)
        im = ln_gamma_complex(1 + 1j * z).imag
        assert np.max(np.abs(np.diff(im))) < 0.05
        assert im.max() > 2 * math.pi

    @pytest.mark.parametrize("w", [0j, -1 + 0j, -0.5 + 1j, complex("nan")])
    def test_domain(self, w):
        with pytest.raises(DomainError):
            ln_gamma_complex(w)


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(7.3, 0) == 1.0
        assert pochhammer(3, 4) == 360
        assert pochhammer(-3, 5) == 0.0

    @given(st.floats(-50, 50, allow_nan=False), st.integers(0, 40))
    def test_step_is_exact(self, a, n):
        assert pochhammer(a, n + 1) == pochhammer(a, n) * (a + n)

    def test_negative_integer_matches_falling_factorial(self):
        # (-N)_n = (-1)^n N!/(N-n)!
        N = 8
        for n in range(N + 1):
            assert pochhammer(-N, n) == (-1) ** n * math.factorial(N) // math.factorial(N - n)


def _hyp2f1_bruteforce(n, b, c, x):
    # exact Σ_k (-n)_k (b)_k / (c)_k x^k / k! with explicit products
    total = Fraction(0)
    for k in range(n + 1):
        num = math.prod(Fraction(-n + j) * (Fraction(b) + j) for j in range(k))
        den = math.prod(Fraction(c) + j for j in range(k)) * math.factorial(k)
        total += Fraction(num) / den * Fraction(x) ** k
    return total


class TestHyp2F1:
    def test_degree_zero(self):
        assert hyp2f1_terminating(0, 3 + 1j, 0.2, 5.0) == 1.0

    def test_degree_one(self):
        b, c, x = 1.5 + 0.5j, 2.2, 0.3 - 0.1j
        assert hyp2f1_terminating(1, b, c, x) == pytest.approx(1 - b / c * x, abs=1e-15)

    def test_bruteforce_example(self):
        assert _hyp2f1_bruteforce(3, 2, 4, Fraction(1, 2)) == Fraction(9, 20)
        assert hyp2f1_terminating(3, 2, 4, 0.5) == pytest.approx(0.45, abs=1e-15)

    @pytest.mark.parametrize("n,b,c,x", [(5, 1.25, 2.5, 0.75), (12, -3.5, 0.5, -1.5), (7, 2, 4.5, 2.0)])
    def test_bruteforce_real(self, n, b, c, x):
        ref = float(_hyp2f1_bruteforce(n, b, c, x))
        assert hyp2f1_terminating(n, b, c, x).real == pytest.approx(ref, rel=1e-12, abs=1e-14)
        assert hyp2f1_terminating(n, b, c, x, exact=True).real == pytest.approx(ref, rel=1e-15, abs=1e-300)

    @given(
        st.integers(0, 25),
        st.floats(-5, 5, allow_nan=False),
        st.floats(0.1, 5, allow_nan=False),
        st.floats(-2, 2, allow_nan=False),
    )
    def test_real_inputs_give_zero_imaginary_part(self, n, b, c, x):
        assert hyp2f1_terminating(n, b, c, x).imag == 0.0

    def test_negative_integer_denominator_cancels(self):
        # 2F1(-n,-m;-N|x) with n <= N
        N = 6
        for n in range(N + 1):
            for m in range(N + 1):
                ref = float(_hyp2f1_bruteforce_krawtchouk(n, m, N, Fraction(10, 3)))
                got = hyp2f1_terminating(n, -m, -N, 10 / 3).real
                assert got == pytest.approx(ref, rel=1e-12, abs=1e-12)

    def test_uncancelled_pole(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(4, 0.5, -2, 0.1)
        with pytest.raises(DomainError):
            hyp2f1_terminating(4, 0.5, -2, 0.1, exact=True)

    def test_early_termination_via_b(self):
        # b = -1 stops after the linear term even though c = -1 would later vanish
        assert hyp2f1_terminating(5, -1, -1, 0.5) == pytest.approx(1 - 5 * 0.5, abs=1e-15)

    def test_exact_matches_float_when_well_conditioned(self):
        args = (9, 1.1 + 0.4j, 2.2, 0.3 + 0.2j)
        assert hyp2f1_terminating(*args, exact=True) == pytest.approx(hyp2f1_terminating(*args), abs=1e-14)


def _hyp2f1_bruteforce_krawtchouk(n, m, N, x):
    total = Fraction(0)
    for k in range(min(n, m) + 1):
        ratio = math.prod((Fraction(-n + j, -N + j) for j in range(k)), start=Fraction(1))
        total += ratio * math.prod(Fraction(-m + j) for j in range(k)) / math.factorial(k) * x**k
    return total


class TestLaguerre:
    def test_low_degrees(self):
        assert laguerre(0, 0.3, 7.0) == 1.0
        assert laguerre(1, 0.3, 2.0) == pytest.approx(-0.7, abs=1e-15)

    def test_explicit_series(self):
        n, nu, y = 4, 0.3, 1.5
        ref = math.fsum(
            (-1) ** k
            * math.gamma(n + nu + 1)
            / (math.gamma(n - k + 1) * math.gamma(nu + k + 1))
            * y**k
            / math.factorial(k)
            for k in range(n + 1)
        )
        assert laguerre(n, nu, y) == pytest.approx(ref, rel=1e-13)

    @pytest.mark.parametrize("nu,y", [(0.3, 0.5), (0.3, 15.0), (2.1, 40.0), (-0.5, 3.0)])
    def test_recurrence_residual(self, nu, y):
        L = laguerre_sequence(201, nu, y)
        for n in range(1, 200):
            res = (n + 1) * L[n + 1] - (2 * n + nu + 1 - y) * L[n] + (n + nu) * L[n - 1]
            assert abs(res) <= 1e-10 * max(1.0, abs(L[n]))

    def test_vectorized(self):
        y = np.linspace(0, 10, 7)
        np.testing.assert_array_equal(laguerre_sequence(5, 0.3, y)[3], [laguerre(3, 0.3, v) for v in y])

    def test_domain(self):
        with pytest.raises(DomainError):
            laguerre(3, -1.0, 1.0)
