//! Acceptance suite. Each test prints one PASS/FAIL line; `summary` prints all
//! of them together.
//!
//! Run with `cargo test -p homsphere --test acceptance -- --nocapture`.

use homsphere::verify::{self, CriterionReport, DEFAULT_SEED};

fn check(report: CriterionReport) {
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_lambda1_closed_forms() {
    check(verify::criterion_1(DEFAULT_SEED));
}

#[test]
fn criterion_02_casimir_oracle() {
    check(verify::criterion_2());
}

#[test]
fn criterion_03_gershgorin_containment() {
    check(verify::criterion_3(DEFAULT_SEED));
}

#[test]
fn criterion_04_tridiagonal_split() {
    check(verify::criterion_4(DEFAULT_SEED));
}

#[test]
fn criterion_05_berger_spectra() {
    check(verify::criterion_5(DEFAULT_SEED));
}

#[test]
fn criterion_06_four_bc_index() {
    check(verify::criterion_6(DEFAULT_SEED));
}

#[test]
fn criterion_07_diameter_estimates() {
    check(verify::criterion_7(DEFAULT_SEED));
}

#[test]
fn criterion_08_products() {
    check(verify::criterion_8());
}

#[test]
fn criterion_09_rigidity() {
    check(verify::criterion_9(DEFAULT_SEED));
}

#[test]
fn criterion_10_yamabe_gap() {
    check(verify::criterion_10(DEFAULT_SEED));
}

#[test]
fn criterion_11_weyl_law() {
    check(verify::criterion_11());
}

#[test]
fn index_growth_is_unbounded() {
    let seq = verify::index_growth_demo().unwrap();
    let line: Vec<String> = seq
        .iter()
        .map(|(a, j)| format!("a={a:.3}: μ_{j}"))
        .collect();
    println!(
        "[INFO] index of a²+b²+c² with b = c = 1: {}",
        line.join(", ")
    );
    assert!(seq.windows(2).all(|w| w[0].1 <= w[1].1));
    assert!(seq.last().unwrap().1 > seq.first().unwrap().1);
}

#[test]
fn summary() {
    let reports = verify::run_all(DEFAULT_SEED);
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u32> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    println!(
        "{}/{} criteria passed",
        reports.len() - failed.len(),
        reports.len()
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
