//! Acceptance gate: one test per acceptance criterion, each printing a
//! single pass/fail line (run with `--nocapture` to see them; the cargo
//! per-test ok/FAILED line carries the same information).
//!
//! Every check here is exact; runtime expectations are asserted where
//! the criterion states one.

use cmsing::poly::MultiPoly;
use cmsing::scalar::Rat;
use cmsing::varieties::Kind;
use cmsing::{Status, VerificationReport};
use std::time::Instant;

fn conclude(criterion: &str, reports: &[VerificationReport], started: Instant, budget_secs: u64) {
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let elapsed = started.elapsed();
    let ok = failed == 0 && elapsed.as_secs() < budget_secs;
    println!(
        "{}: {} ({} checks, {} failed, {:.1?} < {}s)",
        criterion,
        if ok { "PASS" } else { "FAIL" },
        checks,
        failed,
        elapsed,
        budget_secs
    );
    for r in reports {
        for c in r.checks.iter().filter(|c| c.status == Status::Fail) {
            eprintln!("  failed: {} — {}", c.name, c.detail);
        }
    }
    assert!(ok, "{}: {} failed checks in {:.1?}", criterion, failed, elapsed);
}

#[test]
fn criterion_01_identity_suite() {
    let t = Instant::now();
    let mut reports = Vec::new();
    for d in 4..=10 {
        for kind in [Kind::Q, Kind::Y] {
            reports.push(cmsing::varieties::verify_presentation_on_invariants(kind, d));
        }
        reports.push(cmsing::varieties::verify_blowup_relations(d));
        reports.push(cmsing::varieties::verify_chart_y0(d));
        reports.push(cmsing::varieties::verify_z_specializes_to_q(d));
        reports.push(cmsing::varieties::verify_orbit_representatives(d));
        reports.push(cmsing::varieties::verify_phi_immersion(d));
        reports.push(cmsing::varieties::verify_fiber_identity(d));
        if d % 2 == 0 {
            reports.push(cmsing::varieties::verify_singular_locus(d));
        }
    }
    conclude("criterion 01 (identity suite, d in [4,10])", &reports, t, 120);
}

#[test]
fn criterion_02_invariance_suite() {
    let t = Instant::now();
    let reports: Vec<_> = (4..=10).map(cmsing::dihedral::verify_invariance).collect();
    conclude("criterion 02 (invariance over the cyclotomic field)", &reports, t, 120);
}

#[test]
fn criterion_03_psi_suite() {
    let t = Instant::now();
    let reports = vec![cmsing::dihedral::verify_psi(50)];
    conclude("criterion 03 (recurrence family to order 50)", &reports, t, 120);
}

#[test]
fn criterion_04_smoothness_certificates() {
    let t = Instant::now();
    let mut reports = Vec::new();
    for d in 4..=8 {
        for r in 1..d {
            reports.push(cmsing::varieties::verify_chart_yr_smooth(d, r, 500_000));
        }
    }
    // a skipped certificate is not acceptable here: the criterion wants
    // the basis to reach (1) for every chart
    let skipped: usize = reports.iter().map(|r| r.skipped).sum();
    assert_eq!(skipped, 0, "smoothness certificates must complete");
    conclude("criterion 04 (chart smoothness certificates)", &reports, t, 300);
}

#[test]
fn criterion_05_completion_substitution() {
    let t = Instant::now();
    let reports: Vec<_> = (4..=6)
        .map(|d| cmsing::varieties::verify_completion_substitution(d, 8))
        .collect();
    conclude("criterion 05 (completion substitution, N = 8)", &reports, t, 120);
}

#[test]
fn criterion_06_sl3_suite() {
    let t = Instant::now();
    let mut reports = vec![
        cmsing::sl2rep::sl3_embedding_check(),
        cmsing::sl2rep::sosp_check(),
    ];
    for d in 4..=6 {
        reports.push(cmsing::sl2rep::verify_module_structure(
            d,
            5,
            cmsing::sl2rep::TRIAL_SEED,
        ));
    }
    conclude("criterion 06 (special linear rank-3 suite)", &reports, t, 120);
}

#[test]
fn criterion_07_hilbert_suite() {
    let t = Instant::now();
    let mut reports = Vec::new();
    for d in 4..=7u32 {
        reports.push(cmsing::hilbert::verify_hilbert(d, std::cmp::max(2 * d as u64, 12)));
    }
    // oracle: the d = 4 coefficient sequence starts 1, 0, 8, 0, 27
    let c = cmsing::hilbert::series_coefficients(4, 4);
    assert_eq!(
        c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        ["1", "0", "8", "0", "27"]
    );
    for d in 4..=10 {
        reports.push(cmsing::hilbert::verify_fiber_algebra(d));
    }
    conclude("criterion 07 (graded dimensions and fiber algebra)", &reports, t, 600);
}

#[test]
fn criterion_08_quiver_suite() {
    let t = Instant::now();
    let reports: Vec<_> = (4..=8).map(cmsing::quiver::verify_quiver).collect();
    conclude("criterion 08 (quiver root data and leaves)", &reports, t, 120);
}

#[test]
fn criterion_09_slodowy_suite() {
    let t = Instant::now();
    let reports: Vec<_> = (4..=9)
        .map(|d| cmsing::slodowy::verify_slice_geometry(d, 2))
        .collect();
    // skips are tolerated only on the regular-point search
    for r in &reports {
        for c in r.checks.iter().filter(|c| c.status == Status::SkippedBudget) {
            assert!(
                c.name.contains("smooth-at-regular-point"),
                "unexpected skip: {}",
                c.name
            );
        }
    }
    conclude("criterion 09 (slice triple and Jacobian ranks)", &reports, t, 120);
}

#[test]
fn criterion_10_determinism() {
    let t = Instant::now();
    // two consecutive `all` runs with the same config are byte-identical;
    // a reduced sweep keeps the double run at desk scale without touching
    // any source of randomness (everything is seeded)
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "d_max=5\nheavy_d_max=5\nhilbert_d_max=4\npsi_n=12\n").unwrap();
    let run = || {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_cmsing"))
            .arg("all")
            .arg("--config")
            .arg(&cfg)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    let second = run();
    let ok = first == second && !first.is_empty();
    println!(
        "criterion 10 (determinism): {} ({} report bytes, {:.1?})",
        if ok { "PASS" } else { "FAIL" },
        first.len(),
        t.elapsed()
    );
    assert!(ok, "reports differ between consecutive runs");
}

#[test]
fn criterion_11_negative_controls() {
    let t = Instant::now();
    // (a) every suite embeds at least one corrupted-input check and the
    // corruption is detected (the control check passes)
    let sample: Vec<VerificationReport> = vec![
        cmsing::varieties::verify_presentation_on_invariants(Kind::Y, 5),
        cmsing::dihedral::verify_invariance(5),
        cmsing::dihedral::verify_psi(12),
        cmsing::sl2rep::verify_module_structure(5, 3, cmsing::sl2rep::TRIAL_SEED),
        cmsing::hilbert::verify_hilbert(4, 8),
        cmsing::hilbert::verify_fiber_algebra(5),
        cmsing::quiver::verify_sigma(5),
        cmsing::slodowy::verify_slice_geometry(5, 2),
    ];
    for r in &sample {
        let control = r
            .checks
            .iter()
            .find(|c| c.name.contains("negative-control"))
            .unwrap_or_else(|| panic!("suite {} has no negative control", r.suite));
        assert_eq!(control.status, Status::Pass, "{}", control.name);
    }
    // (b) a corrupted input produces an actual Fail status with a
    // nonzero witness when pushed through the verification machinery:
    // perturb one blowup-chart relation and substitute the invariant
    // model into it
    let pres = cmsing::varieties::presentation(Kind::Q, 5).unwrap();
    let rel = pres.quadratic[0].1.clone();
    let corrupted = rel.add(&MultiPoly::var(&pres.vars, "q").pow(5));
    let mut report = VerificationReport::new(
        "corrupted-input",
        serde_json::json!({ "d": 5, "perturbation": "q^5" }),
    );
    let bundle: cmsing::dihedral::InvariantBundle<Rat> = cmsing::dihedral::invariant_bundle(5);
    let mut binding = std::collections::BTreeMap::new();
    binding.insert("q".to_string(), bundle.q.clone());
    binding.insert("Q".to_string(), bundle.big_q.clone());
    binding.insert("e".to_string(), bundle.e.clone());
    for i in 0..=5usize {
        binding.insert(format!("a{}", i), bundle.a[i].clone());
    }
    let residual = corrupted.substitute(&binding).unwrap();
    report.push(cmsing::report::CheckResult::from_bool(
        "corrupted-relation-vanishes",
        residual.is_zero(),
        format!("residual has {} terms", residual.terms().count()),
    ));
    assert_eq!(report.failed, 1, "corruption must register as a failure");
    assert!(report.checks[0].detail.contains("terms"));
    assert!(!residual.is_zero());
    println!(
        "criterion 11 (negative controls): PASS ({} suites with controls, corrupted input failed as required, {:.1?})",
        sample.len(),
        t.elapsed()
    );
}
