"""Acceptance criteria, one test per criterion, each printing PASS/FAIL.

Criteria 3 and 4 are implemented exactly as stated and are expected to
fail: their stated window/signal fixtures do not admit the stated
tolerances on truncated grids (divergent pair-admissibility constant for
criterion 3; irreducible near-zero-frequency truncation loss for
criterion 4).  The working reconstruction machinery is demonstrated by
the admissible-pair round trips in test_frst.py / test_frwt.py.
"""

import time

import numpy as np
import pytest
from scipy.integrate import quad

import fracspec as fs
from fracspec.asymptotics import (
    check_rez1,
    check_te1_hypotheses,
    check_te3,
    check_te4,
    check_te5,
    check_teab1,
    delta_fixture,
    log_sqrt_abs_fixture,
    sqrt_abs_fixture,
)
from fracspec.cli import run as cli_run
from fracspec.distributions import DistributionDescriptor as DD, ScaleSequence
from fracspec.frst import (
    frst_reconstruct,
    positive_log_xi_axis,
    symmetric_log_xi_axis,
)
from fracspec.frwt import frst_frwt_bridge, frwt_reconstruct, frwt_synthesis
from fracspec.windows import seminorm_rho, seminorm_sigma


def report(num, ok, detail):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


class TestAcceptance:
    def test_01_frft_gaussian_at_half_pi(self):
        t0 = time.time()
        sig = fs.gaussian_signal(1.0, 1024, 12.0)
        xi = np.linspace(-6, 6, 481)
        out = fs.frft(fs.make_frac_param(np.pi / 2), sig, xi)
        err = float(np.max(np.abs(out - np.exp(-xi ** 2 / 2))))
        elapsed = time.time() - t0
        ok = err <= 1e-6 and elapsed < 5.0
        assert report(1, ok, f"max abs err {err:.2e} (tol 1e-6), {elapsed:.2f}s"), err

    def test_02_frft_semigroup(self):
        p1 = fs.make_frac_param(np.pi / 6)
        p2 = fs.make_frac_param(np.pi / 3)
        devs = {}
        for n in (2048, 4096):
            sig = fs.gaussian_signal(1.0, n, 12.0)
            devs[n] = fs.frft_compose_check(p1, p2, sig).deviation
        ok_tol = devs[2048] <= 1e-4
        at_floor = devs[2048] <= 1e-12
        ok_shrink = devs[4096] <= devs[2048] / 2 or at_floor
        detail = (f"dev(2048) {devs[2048]:.2e} (tol 1e-4); dev(4096) {devs[4096]:.2e}"
                  + ("; shrink clause vacuous: both at double-precision floor"
                     if at_floor else ""))
        assert report(2, ok_tol and ok_shrink, detail)

    def test_03_frst_reconstruction_as_stated(self):
        # Gaussian f, Hermite wavelet g = psi, alpha = pi/3.  The constant
        # C_{g,psi,c2} = integral |g_hat(c2(w-1))|^2 dw/|w| has a nonzero
        # integrand at w = 0 (|g_hat(-c2)|^2 = c2^2 exp(-c2^2) ~ 0.35), so it
        # diverges logarithmically and no reconstruction tolerance can hold.
        t0 = time.time()
        p = fs.make_frac_param(np.pi / 3)
        g = fs.hermite_wavelet_window()
        sig = fs.gaussian_signal(1.0, 1024, 12.0)
        x = np.linspace(-8, 8, 128)
        xi = symmetric_log_xi_axis(2.0 ** -3, 2.0 ** 3, 96)
        try:
            rep = frst_reconstruct(p, g, g, sig, x, xi)
            ok = rep.rel_l2 <= 1e-3
            detail = f"rel L2 {rep.rel_l2:.3e} (tol 1e-3)"
        except fs.DivergentAdmissibility as exc:
            ok = False
            # diagnostic: force a truncated constant (|w| >= xi_floor) and
            # measure what the stated fixture actually delivers
            def integrand(w):
                arg = p.c2 * (w - 1.0)
                v = g.ft(np.array([arg]))[0]
                return (v * np.conj(v)).real / abs(w)
            c_trunc = (quad(integrand, 2.0 ** -6, 30, limit=300)[0]
                       + quad(integrand, -30, -(2.0 ** -6), limit=300)[0])
            rep = frst_reconstruct(p, g, g, sig, x, xi,
                                   constant_override=c_trunc)
            detail = (f"C_{{g,psi,c2}} divergent as stated ({exc.__class__.__name__}); "
                      f"truncated-constant diagnostic gives rel L2 {rep.rel_l2:.3f} "
                      f"vs tol 1e-3 in {time.time() - t0:.1f}s; see decisions ledger; "
                      f"admissible-pair demos pass in test_frst.py")
        if not report(3, ok, detail):
            pytest.fail(f"criterion 3 unattainable as stated: {detail}")

    def test_04_frwt_inversion_as_stated(self):
        # Mexican-hat C_g matches the oracle value 1.0; the Gaussian round
        # trip at the stated tolerance does not: the chirped signal keeps
        # O(1) spectral mass near zero frequency, which a truncated scale
        # axis cannot represent (multiplier -> 0 as |omega| -> 0).
        p = fs.make_frac_param(np.pi / 3)
        g = fs.mexican_hat_window()
        adm = fs.admissibility_cg(g)
        cg_ok = abs(adm.value - 1.0) <= 1e-6
        sig = fs.gaussian_signal(1.0, 2304, 12.0)  # dt under the sampling guard
        x = np.linspace(-8, 8, 128)
        xi = positive_log_xi_axis(2.0 ** -4, 2.0 ** 4, 96)
        rep = frwt_reconstruct(p, g, sig, x, xi)
        rec_ok = rep.rel_l2 <= 1e-3
        detail = (f"C_g = {adm.value:.8f} (oracle 1.0, tol 1e-6): "
                  f"{'ok' if cg_ok else 'FAIL'}; rel L2 {rep.rel_l2:.3f} vs tol 1e-3; "
                  f"band-passed demos pass in test_frwt.py")
        if not report(4, cg_ok and rec_ok, detail):
            assert cg_ok, detail
            pytest.fail(f"criterion 4 reconstruction unattainable as stated: {detail}")

    def test_05_bridge_identity(self):
        g = fs.hermite_wavelet_window()
        pts = [(a, b) for a in np.linspace(-2, 2, 8)
               for b in np.linspace(0.5, 4, 8)]
        sig = fs.gaussian_signal(1.0, 1024, 12.0)
        worst_sig = 0.0
        for alpha in (np.pi / 6, np.pi / 3):
            p = fs.make_frac_param(alpha)
            worst_sig = max(worst_sig,
                            frst_frwt_bridge(p, g, sig, pts).max_rel_deviation)
        p = fs.make_frac_param(np.pi / 3)
        delta_dev = frst_frwt_bridge(p, g, DD.delta(), pts).max_rel_deviation
        ok = worst_sig <= 1e-6 and delta_dev <= 1e-12
        assert report(5, ok, f"signal dev {worst_sig:.2e} (tol 1e-6), "
                             f"delta dev {delta_dev:.2e} (tol 1e-12)")

    def test_06_abelian_exponents(self):
        t0 = time.time()
        p = fs.make_frac_param(np.pi / 3)
        hermite = fs.hermite_wavelet_window()
        mexican = fs.mexican_hat_window()
        cases = [
            ("rez1", check_rez1, hermite, lambda m: m),
            ("teab1", check_teab1, hermite, lambda m: m + 2),
            ("te3", check_te3, hermite, lambda m: m + 0.5),
            ("te4", check_te4, hermite, lambda m: m + 1.5),
            ("te5", check_te5, mexican, lambda m: m),
        ]
        lines = []
        ok = True
        for fixture in (delta_fixture(), sqrt_abs_fixture()):
            for name, checker, win, expect in cases:
                rep = checker(p, win, fixture)
                ok = ok and rep.verdict == "pass"
                lines.append(f"{name}[{fixture.label}] slope "
                             f"{np.nanmax(np.abs(rep.fitted_exponent - expect(fixture.m))):.3f} "
                             f"ratio {rep.max_ratio_deviation:.4f}")
        elapsed = time.time() - t0
        ok = ok and elapsed < 600
        assert report(6, ok, f"{'; '.join(lines)}; {elapsed:.0f}s (< 600s)")

    def test_07_slowly_varying_robustness(self):
        # fixture with a genuine |ln eps| factor; dividing by L restores the
        # pure-power exponents on all five checkers (slope-only verdicts,
        # deep sequence: log corrections die like 1/|ln eps|)
        p = fs.make_frac_param(np.pi / 3)
        hermite = fs.hermite_wavelet_window()
        mexican = fs.mexican_hat_window()
        deep = ScaleSequence(tuple(2.0 ** -k for k in range(6, 21)))
        fixture = log_sqrt_abs_fixture()
        cases = [
            ("rez1", check_rez1, hermite, fixture.m),
            ("teab1", check_teab1, hermite, fixture.m + 2),
            ("te3", check_te3, hermite, fixture.m + 0.5),
            ("te4", check_te4, hermite, fixture.m + 1.5),
            ("te5", check_te5, mexican, fixture.m),
        ]
        devs = []
        ok = True
        for name, checker, win, expected in cases:
            rep = checker(p, win, fixture, seq=deep, ratio_tol=None)
            dev = float(np.nanmax(np.abs(rep.fitted_exponent - expected)))
            devs.append(f"{name} {dev:.3f}")
            ok = ok and dev <= 0.05
        assert report(7, ok, f"slope deviations vs 0.05: {'; '.join(devs)}")

    def test_08_tauberian_hypotheses(self):
        p = fs.make_frac_param(np.pi / 3)
        rep = check_te1_hypotheses(p, fs.hermite_wavelet_window(), DD.delta(),
                                   m=-1.0, r=2, s=2.0)
        ok = (rep.verdict == "pass" and rep.all_converged and rep.bound_feasible
              and np.isfinite(rep.bound_constant))
        assert report(8, ok, f"(i) Cauchy {rep.converged_cells}/{rep.total_cells}; "
                             f"(ii) finite D = {rep.bound_constant:.4g}")

    def test_09_continuity_bound(self):
        p = fs.make_frac_param(np.pi / 3)
        g = fs.mexican_hat_window()
        x = np.linspace(-6, 6, 161)
        xi = positive_log_xi_axis(2.0 ** -4, 2.0 ** 2, 96)
        t = np.linspace(-8, 8, 801)
        h = t[1] - t[0]
        ratios = []
        for a, b in ((0, 0), (1, 0), (0, 1), (2, 1), (1, 2)):
            vals = (x[:, None] ** a) * (xi[None, :] ** b) * np.exp(
                -x[:, None] ** 2 - (xi[None, :] - 1.5) ** 2) + 0j
            F = fs.TFGrid(x, xi, vals, {})
            s = frwt_synthesis(p, g, F, t)
            ds = (s[2:] - s[:-2]) / (2 * h)
            for k, n in ((0, 0), (1, 0), (0, 1), (1, 1)):
                lhs = float(np.max(np.abs((t[1:-1] if n else t) ** k
                                          * (ds if n else s))))
                rhs = sum(seminorm_sigma(F, 0, 0, k, k + n2).value
                          * seminorm_rho(g, k + n2, n1).value
                          for n1 in range(n + 1) for n2 in (n - n1,))
                ratios.append(lhs / rhs)
        K = max(ratios)
        ok = np.isfinite(K)
        assert report(9, ok, f"bound constant K = {K:.3f} over 5 grids x 4 (k,n)")

    def test_10_cli_determinism(self, tmp_path):
        args = ["frst", "--alpha", "1.0471975511965976", "--window", "hermite1",
                "--input", '{"gaussian": {"width": 1}, "N": 512, "T": 8}',
                "--x=-4:4:33", "--xi", "0.5:4:12"]
        for tag in ("a", "b"):
            assert cli_run(args + ["--output", str(tmp_path / tag)]) == 0
        same_csv = (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        same_meta = ((tmp_path / "a.meta.json").read_bytes()
                     == (tmp_path / "b.meta.json").read_bytes())
        assert report(10, same_csv and same_meta,
                      "repeated runs byte-identical (CSV + meta JSON)")
