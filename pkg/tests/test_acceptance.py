"""Acceptance suite: one test per criterion, each reporting PASS or FAIL.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
line per criterion.
"""

import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from agewise import (
    Exponential,
    ExpWeibullMixture,
    Gamma,
    InverseWeibull,
    Kumaraswamy,
    Lomax,
    Weibull,
    bfr_moment_bound,
    catalog_hazard,
    catalog_model,
    classify_shape,
    convolve,
    dus,
    dus_ew,
    empirical_ttt,
    fit_mle,
    gdus,
    mixture,
    olcay_crosscheck,
    preservation_report,
    sample,
    scaled_ttt,
    turning_points,
)
from agewise.fixtures import (
    DUS_EW_ALPHAS,
    DUS_EW_LAMBDAS,
    SHAPE_CLAIMS,
    bathtub_model,
    bfr_fixtures,
    dus_ew_lattice_map,
    fixture_models,
)


def scaled_error(a, b):
    """Absolute error below 1, relative above (hazards can reach 1e6)."""
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def quantile_grid(model, n=100):
    return np.linspace(model.quantile(0.001), model.quantile(0.999), n)


def test_criterion_01_dus_combinator_fidelity(record_criterion):
    t0 = time.perf_counter()
    cases = [("dus-exponential", {"theta": th}, dus(Exponential(th)), None) for th in (0.5, 1.0, 2.0)]
    for a, b in ((0.5, 1.0), (2.0, 0.5), (3.0, 2.0)):
        cases.append(("dus-lomax", {"alpha": a, "beta": b}, dus(Lomax(a, b)), None))
        cases.append(("dus-inverse-weibull", {"alpha": a, "beta": b}, dus(InverseWeibull(a, b)), "corrected"))
        cases.append(("dus-kumaraswamy", {"alpha": a, "beta": b}, dus(Kumaraswamy(a, b)), None))
    for a, lam, k in ((0.5, 1.0, 2.0), (2.0, 0.5, 1.5), (3.0, 2.0, 0.7)):
        cases.append(("gdus-weibull", {"alpha": a, "lambda": lam, "k": k}, gdus(Weibull(lam, k), a), None))
    worst = 0.0
    for name, params, model, variant in cases:
        x = quantile_grid(model)
        worst = max(worst, scaled_error(model.hazard(x), catalog_hazard(name, params, x, variant=variant)))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 1.0
    record_criterion(1, ok, f"sup error {worst:.2e} (< 1e-10) over {len(cases)} models, {elapsed:.2f} s (< 1 s)")
    assert ok


def test_criterion_02_dus_ew(record_criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for a, lam in ((0.5, 1.0), (2.0, 0.5), (3.0, 2.0)):
        m, ref = dus_ew(a, lam), dus(ExpWeibullMixture(a, lam))
        x = quantile_grid(ref)
        for attr in ("pdf", "cdf", "sf", "hazard"):
            worst = max(worst, scaled_error(getattr(m, attr)(x), getattr(ref, attr)(x)))
    worst_one = 0.0
    for lam in (0.25, 1.0, 4.0):
        m, ref = dus_ew(1.0, lam), dus(Exponential(lam))
        x = quantile_grid(ref)
        for attr in ("pdf", "cdf", "sf", "hazard"):
            worst_one = max(worst_one, scaled_error(getattr(m, attr)(x), getattr(ref, attr)(x)))
    pinned = dus_ew_lattice_map()
    fresh = {(a, lam): classify_shape(dus_ew(a, lam)).label for a in DUS_EW_ALPHAS for lam in DUS_EW_LAMBDAS}
    labels = set(fresh.values())
    elapsed = time.perf_counter() - t0
    ok = (worst < 1e-10 and worst_one < 1e-12 and fresh == pinned
          and {"IFR", "DFR", "UBFR"} <= labels and elapsed < 30.0)
    mismatched = sorted(k for k in pinned if fresh[k] != pinned[k])
    record_criterion(2, ok, f"vs mixture {worst:.1e}, alpha=1 {worst_one:.1e}, labels {sorted(labels)}, "
                            f"lattice mismatches {mismatched}, {elapsed:.2f} s")
    assert ok


def test_criterion_03_shape_claims(record_criterion):
    t0 = time.perf_counter()
    failures = []
    for name, params, accepted in SHAPE_CLAIMS:
        label = classify_shape(catalog_model(name, params)).label
        if label not in accepted:
            failures.append(f"{name}{params}->{label}")
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60.0
    record_criterion(3, ok, f"{len(SHAPE_CLAIMS) - len(failures)}/{len(SHAPE_CLAIMS)} claims hold, "
                            f"{elapsed:.2f} s; failing: {failures}")
    assert ok


def test_criterion_04_ttt_oracles(record_criterion):
    t0 = time.perf_counter()
    exp_curve = scaled_ttt(Exponential(1.0))
    exp_err = float(np.max(np.abs(exp_curve.phi - exp_curve.p)))
    d2_inc = np.diff(scaled_ttt(Weibull(1.0, 2.0)).phi, 2)
    d2_dec = np.diff(scaled_ttt(Weibull(1.0, 0.5)).phi, 2)
    concave = bool(np.all(d2_inc <= 1e-12))
    convex = bool(np.all(d2_dec >= -1e-12))
    emp = empirical_ttt(sample(Exponential(1.0), 100_000, seed=2024))
    emp_dist = float(np.max(np.abs(emp.phi - emp.p)))
    elapsed = time.perf_counter() - t0
    ok = exp_curve.p.size == 257 and exp_err < 1e-8 and concave and convex and emp_dist < 0.02 and elapsed < 10.0
    record_criterion(4, ok, f"exponential {exp_err:.1e} (< 1e-8), weibull(2) concave {concave}, "
                            f"weibull(0.5) convex {convex}, empirical {emp_dist:.4f} (< 0.02), {elapsed:.2f} s")
    assert ok


def test_criterion_05_preservation(record_criterion):
    t0 = time.perf_counter()
    conv = convolve(Gamma(2.0, 1.0), Gamma(3.0, 1.0))
    t = np.linspace(0.0, 30.0, 3001)[1:]
    cdf_err = float(np.max(np.abs(conv.cdf(t) - stats.gamma(5.0).cdf(t))))
    ifr_conv = preservation_report("IFR", "convolution").cell("IFR", "convolution")
    dfr_mix = preservation_report("DFR", "mixture").cell("DFR", "mixture")
    witness = classify_shape(mixture([Exponential(1.0), Exponential(5.0)], [0.5, 0.5])).label
    elapsed = time.perf_counter() - t0
    ok = (cdf_err < 2e-5 and ifr_conv.verdict == "confirmed-preserve"
          and dfr_mix.verdict == "confirmed-preserve" and witness == "DFR" and elapsed < 60.0)
    record_criterion(5, ok, f"gamma cdf {cdf_err:.1e} (< 2e-5), IFR/conv {ifr_conv.verdict} "
                            f"({ifr_conv.applicable} fixtures), DFR/mix {dfr_mix.verdict} "
                            f"({dfr_mix.applicable} fixtures), exp mixture {witness}, {elapsed:.2f} s")
    assert ok


def test_criterion_06_turning_point_dominance(record_criterion):
    t0 = time.perf_counter()
    violations = []
    models = fixture_models()
    for name, model in models.items():
        nh, ne = turning_points(model)
        if nh > ne:
            violations.append(f"{name}: {nh}>{ne}")
    elapsed = time.perf_counter() - t0
    ok = not violations and elapsed < 30.0
    record_criterion(6, ok, f"{len(models)} fixtures, violations {violations}, {elapsed:.2f} s")
    assert ok


def test_criterion_07_olcay(record_criterion):
    t0 = time.perf_counter()
    model = bathtub_model(1.0)
    bfr = olcay_crosscheck(model)
    expo = olcay_crosscheck(Exponential(1.0))
    elapsed = time.perf_counter() - t0
    ok = (bfr.hazard_label == "BFR" and bfr.h0 > bfr.inverse_mean and bfr.expected_mrl == "UBFR"
          and bfr.status == "pass" and expo.status == "boundary" and elapsed < 10.0)
    record_criterion(7, ok, f"bathtub h(0)={bfr.h0:.3f} > 1/mu={bfr.inverse_mean:.3f}, MRL {bfr.observed_mrl} "
                            f"({bfr.status}); exponential {expo.status}; {elapsed:.2f} s")
    assert ok


def test_criterion_08_bfr_moment_bound(record_criterion):
    results = [(name, k, bfr_moment_bound(m, k)) for name, m in bfr_fixtures().items() for k in (1, 2)]
    broken = [f"{n} k={k}: {r.moment:.4g} > {r.bound:.4g}" for n, k, r in results if r.status != "holds"]
    eq = [bfr_moment_bound(Exponential(th), k) for th in (0.5, 2.0) for k in (1, 2)]
    eq_err = max(abs(r.moment - r.bound) / r.bound for r in eq)
    ok = not broken and eq_err < 1e-6 and all(r.status == "equality" for r in eq)
    record_criterion(8, ok, f"{len(results)} bathtub checks, broken {broken}; exponential equality {eq_err:.1e} (< 1e-6)")
    assert ok


def test_criterion_09_inference(record_criterion):
    t0 = time.perf_counter()
    x = sample(Exponential(1.7), 2000, seed=11)
    theta = fit_mle("exponential", x).params["theta"]
    closed = x.size / x.sum()
    exp_rel = abs(theta - closed) / closed
    truth = {"alpha": 2.0, "lambda": 1.0}
    fit = fit_mle("dus-ew", sample(dus_ew(2.0, 1.0), 5000, seed=7), seed=0)
    rel = {k: abs(fit.params[k] - v) / v for k, v in truth.items()}
    elapsed = time.perf_counter() - t0
    ok = exp_rel < 1e-6 and max(rel.values()) < 0.10 and elapsed < 120.0
    record_criterion(9, ok, f"exponential MLE rel {exp_rel:.1e} (< 1e-6); dus-ew(2,1) estimate "
                            f"({fit.params['alpha']:.4f}, {fit.params['lambda']:.4f}), worst rel "
                            f"{max(rel.values()):.3f} (< 0.10); {elapsed:.2f} s")
    assert ok


def _cli(args, cwd):
    env = dict(os.environ, PYTHONHASHSEED="random")
    return subprocess.run([sys.executable, "-m", "agewise.cli", *args], cwd=cwd, env=env,
                          capture_output=True, check=True)


def _outputs(workdir: Path) -> dict:
    workdir.mkdir()
    _cli(["sample", "--model", "dus-ew:alpha=2,lambda=1", "--n", "500", "--seed", "5", "--out", "draws.csv"], workdir)
    _cli(["fit", "--family", "dus-ew", "--data", "draws.csv", "--seed", "3", "--out", "fit.json"], workdir)
    _cli(["ttt", "--data", "draws.csv", "--out", "ttt.csv", "--report", "ttt.json"], workdir)
    _cli(["classify", "--model", "weibull:lambda=1,k=0.5", "--out", "hazard.csv", "--report", "shape.json"], workdir)
    _cli(["preserve", "--class", "IFR", "--operation", "mixture", "--out", "table.csv"], workdir)
    return {p.name: p.read_bytes() for p in sorted(workdir.iterdir())}


def test_criterion_10_determinism(record_criterion, tmp_path):
    first = _outputs(tmp_path / "run1")
    second = _outputs(tmp_path / "run2")
    differing = sorted(k for k in first if first[k] != second.get(k))
    ok = set(first) == set(second) and not differing and len(first) == 7
    record_criterion(10, ok, f"{len(first)} CSV/JSON files compared byte for byte, differing {differing}")
    assert ok
