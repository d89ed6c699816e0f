"""Acceptance criteria, one test and one PASS/FAIL line each.

Tolerances are fixed here and never loosened to make a run pass:
|W| and cutoff agreement 1e-40, rho checks 1e-45, integrality 1e-25,
Gamma identities 1e-45, conjugate-curve |L| 1e-40.
"""

import csv
import random
import time
import warnings
from fractions import Fraction

import mpmath
import pytest

from conftest import ACCEPTANCE_QS, cached_compute, cached_rhos, record_criterion
from gross_sha.anchor import anchor_report
from gross_sha.classgroup import dirichlet_h, enumerate_class_group
from gross_sha.cli import main
from gross_sha.numerics import PrecisionContext, gamma, pi, sum_log_gamma
from gross_sha.period_sha import m_exponent
from gross_sha.pipeline import compute
from gross_sha.quadfield import coprime, ideal_mul, prime_above, primes_up_to
from gross_sha.verify import census

P = PrecisionContext(50)
TOL_W = mpmath.mpf(10) ** -40
TOL_RHO = mpmath.mpf(10) ** -45
TOL_INT = mpmath.mpf(10) ** -25
TOL_GAMMA = mpmath.mpf(10) ** -45
TOL_CONJ = mpmath.mpf(10) ** -40


def test_criterion_1_census():
    t0 = time.perf_counter()
    n, rows = census(4663)
    dt = time.perf_counter() - t0
    ok = n == 18 and dt < 60
    record_criterion(1, "census q <= 4663, q = 7 mod 8, r > 1", ok, f"count={n}, expected 18, {dt:.1f}s")
    assert ok


def test_criterion_2_class_numbers():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for q in primes_up_to(2000):
        if q <= 3 or q % 4 != 3:
            continue
        count += 1
        h = enumerate_class_group(q).h
        twice_m = (q - 1) // 2 - h
        if h != dirichlet_h(q) or h % 2 == 0 or twice_m < 0 or twice_m % 2:
            bad.append(q)
        else:
            m_exponent(q, h)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    record_criterion(2, "h = Dirichlet h, h odd, m integral, 3 < q <= 2000", ok, f"{count} primes, mismatches={bad}, {dt:.1f}s")
    assert ok


def _random_ideals(R, n, rng):
    primes = [P_ for ell in primes_up_to(150) for P_ in prime_above(R.params, ell)[1] if coprime(P_, R.conductor)]
    out = []
    for _ in range(n):
        I = R.params.unit_ideal()
        for _ in range(rng.randint(1, 3)):
            I = ideal_mul(I, rng.choice(primes))
        out.append(I)
    return out


def test_criterion_3_internal_consistency():
    t0 = time.perf_counter()
    worst_w = worst_cut = worst_norm = worst_mult = mpmath.mpf(0)
    for q in ACCEPTANCE_QS:
        res = cached_compute(q)
        for cand in res.candidates:
            worst_w = max(worst_w, cand.lseries.max_unitarity_residual())
            worst_cut = max(worst_cut, cand.lseries.max_cutoff_residual())
        rng = random.Random(q)
        for R in cached_rhos(q):
            ideals = _random_ideals(R, 200, rng)
            with R.ctx.activate():
                for a in ideals:
                    worst_norm = max(worst_norm, abs(abs(R(a)) ** 2 - a.norm()) / a.norm())
                for a, b in zip(ideals, ideals[1:] + ideals[:1]):
                    ab = ideal_mul(a, b)
                    worst_mult = max(worst_mult, abs(R(ab) - R(a) * R(b)) / mpmath.sqrt(ab.norm()))
    dt = time.perf_counter() - t0
    ok = worst_w < TOL_W and worst_cut < TOL_W and worst_norm < TOL_RHO and worst_mult < TOL_RHO and dt < 600
    detail = (
        f"max ||W|-1|={mpmath.nstr(worst_w, 3)}, max cutoff diff={mpmath.nstr(worst_cut, 3)}, "
        f"max rel |rho|^2-N={mpmath.nstr(worst_norm, 3)}, max rel rho(ab)-rho(a)rho(b)={mpmath.nstr(worst_mult, 3)}, {dt:.0f}s"
    )
    record_criterion(3, "character and L consistency on the 12-q set", ok, detail)
    assert ok


def test_criterion_4_positivity():
    vals = {}
    for q in ACCEPTANCE_QS:
        for cand in cached_compute(q).candidates:
            vals[(q, cand.rho.epsilon.ident)] = cand.lseries.product
    bad = [k for k, v in vals.items() if not v > 0]
    smallest = min(vals.values())
    ok = not bad
    record_criterion(4, "L(E/H,1) > 0 on the 12-q set", ok, f"{len(vals)} values, min={mpmath.nstr(smallest, 8)}, nonpositive={bad}")
    assert ok


def test_criterion_5_integrality():
    bad, summary = [], []
    for q in ACCEPTANCE_QS:
        res = cached_compute(q)
        rep = res.report
        if not (rep.sha_rounded > 0 and rep.abs_error < TOL_INT):
            bad.append(q)
        summary.append(f"{q}:{rep.sha_rounded}")
    # the selected eps for q = 3 mod 8 must not depend on the run
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        unstable = [q for q in ACCEPTANCE_QS if q % 8 == 3 and compute(q, P).report.epsilon_id != cached_compute(q).report.epsilon_id]
    worst = max(cached_compute(q).report.abs_error for q in ACCEPTANCE_QS)
    ok = not bad and not unstable
    record_criterion(
        5,
        "analytic #Sha within 1e-25 of a positive integer",
        ok,
        f"{' '.join(summary)}; max error={mpmath.nstr(worst, 3)}; failing={bad}; unstable eps={unstable}",
    )
    assert ok


def test_criterion_6_anchor():
    t0 = time.perf_counter()
    problems, notes = [], []
    for q in (7, 11, 19, 43):
        rep = anchor_report(q, 500, P)
        for sign, m in rep.matches.items():
            # zero mismatches: every prime row agrees for the selected eps
            sel = rep.selected[sign]
            mismatches = sum(1 for _, a, traces in m.rows if traces[sel] != a)
            if m.n_primes < 10 or mismatches:
                problems.append(f"{q}/{sign}")
            notes.append(f"{q}/{sign}: eps={sel}, {m.n_primes} prime ideals")
        if q % 8 == 3:
            with P.activate():
                diff = abs(rep.abs_L["upper"] - rep.abs_L["lower"])
            if not diff < TOL_CONJ:
                problems.append(f"{q} |L| differs by {mpmath.nstr(diff, 3)}")
    dt = time.perf_counter() - t0
    ok = not problems and dt < 60
    record_criterion(6, "point counts match rho traces; conjugate curves share |L|", ok, "; ".join(notes) + f"; {dt:.1f}s; problems={problems}")
    assert ok


def test_criterion_7_gamma_identities():
    worst = mpmath.mpf(0)
    with P.activate():
        for x in (Fraction(1, 7), Fraction(2, 11), Fraction(5, 23), Fraction(1, 2)):
            xf = mpmath.mpf(x.numerator) / x.denominator
            refl = gamma(x, P) * gamma(1 - x, P) / (pi(P) / mpmath.sin(pi(P) * xf)) - 1
            dup = gamma(x, P) * gamma(x + Fraction(1, 2), P) / (2 ** (1 - 2 * xf) * mpmath.sqrt(pi(P)) * gamma(2 * x, P)) - 1
            worst = max(worst, abs(refl), abs(dup))
        for q in (7, 11, 23):
            prod = mpmath.exp(sum_log_gamma([Fraction(c, q) for c in range(1, q)], P))
            worst = max(worst, abs(prod / ((2 * pi(P)) ** (mpmath.mpf(q - 1) / 2) / mpmath.sqrt(q)) - 1))
    ok = worst < TOL_GAMMA
    record_criterion(7, "Gamma reflection, duplication and Gauss product", ok, f"max relative error={mpmath.nstr(worst, 3)}")
    assert ok


def test_criterion_8_determinism(tmp_path):
    t0 = time.perf_counter()
    a, b = tmp_path / "jobs1.csv", tmp_path / "jobs8.csv"
    ra = main(["table", "--mod8", "7", "--qmax", "200", "--jobs", "1", "--out", str(a)])
    rb = main(["table", "--mod8", "7", "--qmax", "200", "--jobs", "8", "--out", str(b)])
    dt = time.perf_counter() - t0
    same = a.read_bytes() == b.read_bytes()
    nrows = len(a.read_text().splitlines()) - 1
    ok = ra == 0 and rb == 0 and same and nrows > 0 and dt < 600
    record_criterion(8, "table --mod8 7 --qmax 200: --jobs 1 and --jobs 8 CSV bytes identical", ok, f"{nrows} rows, identical={same}, {dt:.0f}s")
    assert ok


@pytest.mark.slow
def test_criterion_9_stretch_sweep(tmp_path, request):
    if not request.config.getoption("--run-stretch"):
        record_criterion(9, "stretch sweep --mod8 7 --qmax 4663 (not gating)", "SKIP", "skipped; enable with --run-stretch")
        pytest.skip("stretch sweep takes hours on one core; pass --run-stretch")
    out = tmp_path / "stretch.csv"
    code = main(["table", "--mod8", "7", "--qmax", "4663", "--out", str(out)])
    rows = list(csv.DictReader(out.read_text().splitlines()))
    expected = sum(1 for q in primes_up_to(4663) if q % 8 == 7)
    bad = [r["q"] for r in rows if not (int(r["sha_rounded"]) > 0 and mpmath.mpf(r["abs_error"]) < TOL_INT)]
    ok = code == 0 and len(rows) == expected and not bad
    record_criterion(9, "stretch sweep --mod8 7 --qmax 4663 (not gating)", ok, f"{len(rows)}/{expected} rows, failing={bad}")
    assert ok
