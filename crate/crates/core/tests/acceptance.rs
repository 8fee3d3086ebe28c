//! One PASS/FAIL line per acceptance criterion, each with its time budget.
//! Criteria run sequentially in a single test so timings are not skewed by
//! other tests sharing the machine.

use std::io::Write as _;
use std::process::Command;
use std::time::{Duration, Instant};

use g2cert::bigcell::homogeneity_certificate;
use g2cert::g2::NbarCoords;
use g2cert::levi::conj_zm;
use g2cert::nbar::{lemma_certificate, nbar_mul, KappaBox, LemmaConfig};
use g2cert::ring::{int, rat, Prime};
use g2cert::stability::{build_ledger, net_factor, UnitAssumption};
use g2cert::suite::{registry, run_check, Status, SuiteConfig};
use g2cert::{RatNCoords, Result};

struct Line {
    id: u32,
    name: &'static str,
    budget: Duration,
    pass: bool,
    elapsed: Duration,
    detail: String,
}

/// Runs the named suite checks; the criterion needs each to pass.
fn checks(ids: &[&str]) -> Result<(bool, String)> {
    let cfg = SuiteConfig {
        seed: 7,
        ..SuiteConfig::default()
    };
    let mut ok = true;
    let mut detail = Vec::new();
    for id in ids {
        let c = registry()
            .iter()
            .find(|c| c.id == *id)
            .unwrap_or_else(|| panic!("no check {id}"));
        let r = run_check(c, &cfg);
        ok &= r.status == Status::Pass;
        detail.push(format!("{id}: {}", r.detail));
    }
    Ok((ok, detail.join(" | ")))
}

fn run(lines: &mut Vec<Line>, id: u32, name: &'static str, budget_s: u64, f: impl FnOnce() -> Result<(bool, String)>) {
    let start = Instant::now();
    let (pass, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    lines.push(Line {
        id,
        name,
        budget,
        pass: pass && elapsed < budget,
        elapsed,
        detail,
    });
}

fn criterion_9() -> Result<(bool, String)> {
    let p = Prime::new(5)?;
    let cert = lemma_certificate(&LemmaConfig::new(p, 1, 6, 10_000, 7)?)?;

    // A witness that κ = 1 is not closed: y10 = y11' = 1/p puts z21 at valuation -2.
    let y = NbarCoords::from_array([rat(1, 5), int(0), int(0), int(0), int(0)]);
    let yp = NbarCoords::from_array([int(0), rat(1, 5), int(0), int(0), int(0)]);
    let b1 = KappaBox::new(1, p)?;
    let escapes =
        b1.bounds.contains(&y, p) && b1.bounds.contains(&yp, p) && !b1.bounds.contains(&nbar_mul(&y, &yp)?, p);

    // N̄ coordinates carry the negated roots of N, so their Z_M weights are minus those of N.
    let scaled = conj_zm(
        &int(2),
        &RatNCoords::from_array([int(1), int(1), int(1), int(1), int(1)]),
    )?;
    let n_weights: Vec<i64> = scaled.to_array().iter().map(|v| v.numer().bits() as i64 - 1).collect();
    let oracle: Vec<i64> = n_weights.iter().map(|w| -w).collect();

    let s = &cert.soundness;
    let pass = cert.passed()
        && cert.minimal_certified_kappa == Some(2)
        && escapes
        && cert.zm_weights.to_vec() == oracle
        && s.samples == 10_000
        && s.violations == 0
        && s.matrix_mismatches == 0;
    Ok((
        pass,
        format!(
            "minimal κ {:?} (κ = 1 escapes: {escapes}), Z_M weights {:?} against {:?}, {} samples, {} violations, {} matrix cross-checks",
            cert.minimal_certified_kappa, cert.zm_weights, oracle, s.samples, s.violations, s.matrix_cross_checks
        ),
    ))
}

fn criterion_10() -> Result<(bool, String)> {
    let (suite_ok, detail) = checks(&["stability.ledger", "stability.net_factor"])?;
    let ledger = build_ledger(Some(homogeneity_certificate()?))?;
    let net = net_factor(&ledger, UnitAssumption { t_is_unit: true });
    let t = &net.e_t_abs;
    let pass = suite_ok
        && net.e_omega_pi == 2
        && net.e_omega == 2
        && t.constant == int(0)
        && t.s_coeff == int(0)
        && build_ledger(None).is_err();
    Ok((
        pass,
        format!(
            "(e_ω_π, e_ω, |t|) = ({}, {}, {t}); {detail}",
            net.e_omega_pi, net.e_omega
        ),
    ))
}

fn criterion_11() -> Result<(bool, String)> {
    let g2 = env!("CARGO_BIN_EXE_g2");
    let once = || {
        Command::new(g2)
            .args(["verify", "all", "--seed", "7"])
            .output()
            .expect("g2 runs")
    };
    let (a, b) = (once(), once());
    let pass = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    Ok((
        pass,
        format!(
            "{} bytes, exit {:?}/{:?}, identical: {}",
            a.stdout.len(),
            a.status.code(),
            b.status.code(),
            a.stdout == b.stdout
        ),
    ))
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    run(&mut lines, 1, "realization integrity", 1, || checks(&["lie.closure"]));
    run(&mut lines, 2, "Weyl table", 1, || {
        checks(&["weyl.table", "weyl.displayed_reps"])
    });
    run(&mut lines, 3, "form invariance", 1, || {
        checks(&["weyl.form_invariance"])
    });
    run(&mut lines, 4, "conjugation laws", 1, || {
        checks(&["levi.conj_um", "levi.conj_zm"])
    });
    run(&mut lines, 5, "measure certificates", 1, || {
        checks(&["levi.jacobian.domain_d", "levi.jacobian.domain_d0"])
    });
    run(&mut lines, 6, "big-cell certificate", 30, || {
        checks(&["bigcell.reconstruction", "bigcell.solver_oracle", "bigcell.x_alpha"])
    });
    run(&mut lines, 7, "homogeneity certificate", 5, || {
        checks(&["bigcell.homogeneity"])
    });
    run(&mut lines, 8, "N-bar group law", 60, || {
        checks(&["nbar.group_law", "nbar.associativity"])
    });
    run(&mut lines, 9, "N-bar_κ closure certificate", 60, criterion_9);
    run(&mut lines, 10, "stability audit", 1, criterion_10);
    run(&mut lines, 11, "determinism", 120, criterion_11);

    // written to the stderr handle directly so the lines show even when output is captured
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err);
    for l in &lines {
        let _ = writeln!(
            err,
            "{} criterion {:>2} {:<28} {:>8.3}s / {:>3}s  {}",
            if l.pass { "PASS" } else { "FAIL" },
            l.id,
            l.name,
            l.elapsed.as_secs_f64(),
            l.budget.as_secs(),
            l.detail
        );
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
