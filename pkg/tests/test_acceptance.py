"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import json
import math
import time
from pathlib import Path

import numpy as np

from mp_spectra.errors import DomainError
from mp_spectra.linalg import sym_eigensolve
from mp_spectra.polys import (
    KrawtchoukParams,
    MeixnerParams,
    MPParams,
    gram_continuous,
    gram_discrete_krawtchouk,
    gram_discrete_meixner,
    krawtchouk_recursion_residual,
    krawtchouk_sequence,
    meixner_eval,
    meixner_recursion_residual,
    mp_asymptotic,
    mp_eval_hypergeometric,
    mp_eval_recursion,
    mp_scattering,
)
from mp_spectra.reference import REFERENCE_EIGENVALUES
from mp_spectra.specfun import ln_gamma_complex
from mp_spectra.system import (
    REFERENCE_PARAMS,
    PhysicalParams,
    analytic_spectrum,
    build_J_flat,
    build_Omega,
    coefficient_residual,
    default_grid,
    expansion_coefficients,
    numerical_spectrum,
    wavefunction,
)

SNAPSHOTS = Path(__file__).parent / "data" / "wavefunction_snapshots.json"


def test_reference_table_reproduction(acceptance):
    start = time.perf_counter()
    spectra = {N: numerical_spectrum(REFERENCE_PARAMS, N).eigenvalues for N in (10, 20, 50)}
    elapsed = time.perf_counter() - start
    parts, ok = [], elapsed < 1.0
    for N, vals in spectra.items():
        dev = np.abs(vals - np.array(REFERENCE_EIGENVALUES[N]))
        above = int(np.sum(dev > 1e-8))
        ok &= above == 0
        parts.append(f"N={N} max|dev|={dev.max():.2e} ({above}/{N} above 1e-8)")
    acceptance("1 reference eigenvalue table", ok, "; ".join(parts) + f"; {elapsed:.3f}s")
    assert ok


def test_gamma_identity(acceptance):
    z = np.array([0.1, 0.5, 1.0, 2.0, 5.0, 10.0])
    lhs = np.exp(2 * ln_gamma_complex(1 + 1j * z).real)
    err = float(np.max(np.abs(lhs / (np.pi * z / np.sinh(np.pi * z)) - 1)))
    ok = err <= 1e-12
    acceptance("2 |Gamma(1+iz)|^2 identity", ok, f"max rel err {err:.2e}")
    assert ok


def test_continuous_orthogonality(acceptance):
    start = time.perf_counter()
    devs = [gram_continuous(MPParams(1.1, t), 10).max_deviation for t in (math.pi / 4, math.pi / 3, 2 * math.pi / 3)]
    elapsed = time.perf_counter() - start
    ok = max(devs) <= 1e-8 and elapsed < 5.0
    acceptance("3 continuous Gram", ok, f"max|G-I| {max(devs):.2e}; {elapsed:.3f}s")
    assert ok


def test_dual_path(acceptance):
    worst = 0.0
    zs = np.array([-1.0, 0.5, 2.0])
    for mu in (0.5, 1.1, 3.1):
        for theta in (math.pi / 4, math.pi / 2, 2 * math.pi / 3):
            p = MPParams(mu, theta)
            rec = mp_eval_recursion(p, zs, 15)
            for j, z in enumerate(zs):
                for n in range(16):
                    hyp = mp_eval_hypergeometric(p, float(z), n)
                    worst = max(worst, abs(hyp - rec[n, j]) / max(1.0, abs(rec[n, j])))
    ok = worst <= 1e-10
    acceptance("4 hypergeometric vs recursion", ok, f"max rel diff {worst:.2e}")
    assert ok


def test_discrete_orthogonality(acceptance):
    m = gram_discrete_meixner(MeixnerParams(1.1, 0.4), 8)
    k = gram_discrete_krawtchouk(KrawtchoukParams(8, 0.3))
    ok = m.max_deviation <= 1e-10 and k.max_deviation <= 1e-12
    acceptance(
        "5 discrete Gram",
        ok,
        f"Meixner {m.max_deviation:.2e} (tail {m.error_bound:.1e}); Krawtchouk {k.max_deviation:.2e}",
    )
    assert ok


def test_recursion_residuals(acceptance):
    mp = MeixnerParams(1.1, 0.4)
    r_meixner = float(np.max(meixner_recursion_residual(mp, 3, meixner_eval(mp, 3, 10))))
    kp = KrawtchoukParams(8, 0.3)
    r_krawtchouk = max(float(np.max(krawtchouk_recursion_residual(kp, m, krawtchouk_sequence(kp, m)))) for m in range(9))
    r_coeffs = 0.0
    positives = [v for v in REFERENCE_EIGENVALUES[10] if v > 0]
    positives += [float(v) for v in numerical_spectrum(REFERENCE_PARAMS, 10).eigenvalues if v > 0]
    for eps in positives:
        P = expansion_coefficients(REFERENCE_PARAMS, eps, 10)
        r_coeffs = max(r_coeffs, float(np.max(coefficient_residual(REFERENCE_PARAMS, eps, P))))
    ok = r_meixner <= 1e-10 and r_krawtchouk <= 1e-12 and r_coeffs <= 1e-12
    acceptance("6 recursion residuals", ok, f"Meixner {r_meixner:.2e}; Krawtchouk {r_krawtchouk:.2e}; coefficients {r_coeffs:.2e}")
    assert ok


def test_asymptotics(acceptance):
    p = MPParams(1.1, math.pi / 3)
    ok, parts = True, []
    for z in (0.5, 1.0):
        amp, _ = mp_scattering(p, z)
        P = mp_eval_recursion(p, z, 10_064)
        err = {}
        for n0 in (1000, 10_000):
            ns = np.arange(n0, n0 + 64)
            err[n0] = float(np.max(np.abs(P[ns] - mp_asymptotic(p, z, ns)))) / (amp * n0**-0.5)
        ok &= err[10_000] <= 1e-2 and err[10_000] < err[1000]
        parts.append(f"z={z}: {err[1000]:.2e} -> {err[10_000]:.2e}")
    acceptance("7 large-degree asymptotics", ok, "; ".join(parts))
    assert ok


def test_eigensolver_properties(acceptance):
    worst_res, worst_def, worst_trace = 0.0, 0.0, 0.0
    for N in (10, 20, 50):
        H, O = build_J_flat(REFERENCE_PARAMS, N), build_Omega(REFERENCE_PARAMS, N)
        r = numerical_spectrum(REFERENCE_PARAMS, N)
        worst_res = max(worst_res, float(np.max(r.residual_norms)) / H.norm_inf())
        worst_def = max(worst_def, r.b_orthogonality_defect)
        for A in (H, O):
            s = sym_eigensolve(A)
            total = math.fsum(A.diag)
            worst_trace = max(worst_trace, abs(math.fsum(s.eigenvalues) - total) / abs(total))
    ok = worst_res <= 1e-10 and worst_def <= 1e-10 and worst_trace <= 1e-10
    acceptance(
        "8 eigensolver properties",
        ok,
        f"residual/|J| {worst_res:.2e}; B-defect {worst_def:.2e}; trace rel {worst_trace:.2e}",
    )
    assert ok


def test_analytic_spectrum(acceptance):
    pp = PhysicalParams(0.1, 0.2, 2.1, 0.3)
    E = analytic_spectrum(pp, 10)
    slope = float(np.max(np.abs(np.diff(np.log(E)) - 2.0)))
    e0 = abs(E[0] / (0.005 * math.exp(0.4)) - 1)
    ok = slope <= 1e-14 and e0 <= 1e-14
    acceptance("9 analytic spectrum", ok, f"slope err {slope:.1e}; E_0 rel err {e0:.1e}")
    assert ok


def test_wavefunction_contract(acceptance):
    pp = REFERENCE_PARAMS
    x = default_grid(pp)
    refused = 0
    negatives = [v for v in REFERENCE_EIGENVALUES[10] if v <= 0]
    for eps in negatives:
        try:
            wavefunction(pp, eps, 10, x)
        except DomainError:
            refused += 1
    props = True
    for eps in [v for v in REFERENCE_EIGENVALUES[10] if v > 0]:
        wf = wavefunction(pp, eps, 10, x)
        props &= bool(np.all(np.isfinite(wf.psi)))
        props &= abs(float(np.trapezoid(wf.psi**2, x)) - 1) <= 1e-12
        props &= wf.psi[0] == 0.0
    snaps = json.loads(SNAPSHOTS.read_text())
    matched = 0
    for snap in snaps.values():
        grid = default_grid(pp) if snap["grid"] == "default" else np.linspace(0.0, 40.0, 401)
        runs = [
            [float(v).hex() for v in wavefunction(pp, snap["epsilon"], snap["N"], grid).psi] for _ in range(2)
        ]
        matched += runs[0] == runs[1] == snap["psi"]
    ok = refused == len(negatives) and props and matched == len(snaps)
    acceptance(
        "10 wavefunction contract",
        ok,
        f"refused {refused}/{len(negatives)} negative; properties {'ok' if props else 'violated'}; "
        f"snapshots {matched}/{len(snaps)} bit-identical",
    )
    assert ok
