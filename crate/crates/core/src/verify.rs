//! Acceptance suite: numerical checks of every closed-form result against the
//! eigenvalue pipeline, at fixed tolerances and with seeded sampling.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::casimir::{casimir_matrix, casimir_matrix_oracle, gershgorin, IrrepBlock};
use crate::eigensolve::{eigen_block, eigenvalues};
use crate::geometry::{
    berger_lambda1_diam2_extrema, diameter, lambda1_diam2, lambda1_diam2_cap, product_estimate,
    scalar_curvature, yamabe_gap, ProductSpec, BOUND_REL_SLACK,
};
use crate::metric::{normalize_triple, GroupKind, MetricClass, MetricTriple, Settings};
use crate::rigidity::{invariants, isospectral_check, recover_triple, IsospectralVerdict};
use crate::spectrum::{
    berger_spectrum_up_to, fundamental_index_sequence, lambda1_closed, mu_index_of, spectrum_up_to,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
const PI2: f64 = PI * PI;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: u32, title: &str, failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(first) => format!("{summary}; {} failure(s), first: {first}", failures.len()),
        };
        CriterionReport {
            id,
            title: title.to_string(),
            passed: failures.is_empty(),
            detail,
        }
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{tag}] criterion {:>2}: {}: {}",
            self.id, self.title, self.detail
        )
    }
}

/// Seeded source of parameter triples, each parameter log-uniform in
/// `[0.1, 10]`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn parameter(&mut self) -> f64 {
        let (lo, hi) = (0.1f64.ln(), 10f64.ln());
        (lo + (hi - lo) * self.rng.random::<f64>()).exp()
    }

    pub fn triple(&mut self) -> MetricTriple {
        let (a, b, c) = (self.parameter(), self.parameter(), self.parameter());
        normalize_triple(a, b, c).expect("sampled parameters are positive")
    }

    pub fn triples(&mut self, n: usize) -> Vec<MetricTriple> {
        (0..n).map(|_| self.triple()).collect()
    }

    /// Triple on the `SU(2)` boundary `a² = 3(b²+c²)`.
    pub fn boundary_triple(&mut self) -> MetricTriple {
        let (b, c) = (self.parameter(), self.parameter());
        normalize_triple((3.0 * (b * b + c * c)).sqrt(), b, c).unwrap()
    }

    /// `g_(b,b,c)` with `b > c`.
    pub fn equal_ab_triple(&mut self) -> MetricTriple {
        let (x, y) = (self.parameter(), self.parameter());
        normalize_triple(x.max(y), x.max(y), x.min(y)).unwrap()
    }

    pub fn round_triple(&mut self) -> MetricTriple {
        MetricTriple::round(self.parameter()).unwrap()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

/// Random triples plus the pinned samples for `g`: boundary triples on
/// `SU(2)`, `a = b` and round triples on `SO(3)`.
fn samples_with_pins(s: &mut Sampler, g: GroupKind, n: usize, pins: usize) -> Vec<MetricTriple> {
    let mut v = s.triples(n);
    for i in 0..pins {
        v.push(match g {
            GroupKind::Su2 if i % 10 == 9 => s.round_triple(),
            GroupKind::Su2 => s.boundary_triple(),
            GroupKind::So3 if i % 2 == 0 => s.equal_ab_triple(),
            GroupKind::So3 => s.round_triple(),
        });
    }
    v
}

/// Smallest positive eigenvalue of the truncated spectrum against the closed
/// forms.
pub fn criterion_1(seed: u64) -> CriterionReport {
    let settings = Settings::default();
    let mut s = Sampler::new(seed);
    let mut failures = Vec::new();
    let mut max_err: f64 = 0.0;
    let mut sevens = 0;
    let mut count = 0;
    for g in [GroupKind::Su2, GroupKind::So3] {
        for t in samples_with_pins(&mut s, g, 1000, 50) {
            count += 1;
            let want = lambda1_closed(&t, g);
            let table = match spectrum_up_to(1.01 * want.value, &t, g, &settings) {
                Ok(tab) => tab,
                Err(e) => {
                    failures.push(format!("{t} {g}: {e}"));
                    continue;
                }
            };
            let Some(got) = table.fundamental() else {
                failures.push(format!("{t} {g}: no positive eigenvalue"));
                continue;
            };
            let err = rel_err(got.value, want.value);
            max_err = max_err.max(err);
            if got.multiplicity == 7 {
                sevens += 1;
            }
            if err > 1e-9 || got.multiplicity != want.multiplicity {
                failures.push(format!(
                    "{t} {g}: numeric ({}, {}) vs closed ({}, {})",
                    got.value, got.multiplicity, want.value, want.multiplicity
                ));
            }
        }
    }
    CriterionReport::new(
        1,
        "closed-form λ₁ vs numeric spectrum",
        &failures,
        format!("{count} triples, max rel err {max_err:.2e}, {sevens} with multiplicity 7"),
    )
}

/// Casimir matrix against the generator oracle, bitwise.
pub fn criterion_2() -> CriterionReport {
    let mut failures = Vec::new();
    let mut count = 0;
    let mut triples = Vec::new();
    for a in 1..=5 {
        for b in 1..=a {
            for c in 1..=b {
                triples.push(normalize_triple(a as f64, b as f64, c as f64).unwrap());
            }
        }
    }
    for t in &triples {
        for k in 0..=20 {
            count += 1;
            match casimir_matrix_oracle(k, t) {
                Ok(o) if o == casimir_matrix(k, t) => {}
                Ok(_) => failures.push(format!("{t} k={k}: entries differ")),
                Err(e) => failures.push(format!("{t} k={k}: {e}")),
            }
        }
    }
    CriterionReport::new(
        2,
        "Casimir matrix equals generator oracle",
        &failures,
        format!(
            "{count} matrices over {} integer triples, k ≤ 20",
            triples.len()
        ),
    )
}

/// Block eigenvalues lie above the lower envelopes and inside the Gershgorin
/// union.
pub fn criterion_3(seed: u64) -> CriterionReport {
    let settings = Settings::default();
    let mut s = Sampler::new(seed ^ 3);
    let mut failures = Vec::new();
    let mut count = 0;
    for t in s.triples(100) {
        for k in 0..=50 {
            let vals = match eigen_block(k, &t, settings.solver_tol) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{t} k={k}: {e}"));
                    continue;
                }
            };
            let gi = gershgorin(k, &t);
            for &x in vals.values() {
                count += 1;
                let slack = (settings.solver_tol + BOUND_REL_SLACK) * x.abs().max(1.0);
                if x < gi.lower_envelope - slack {
                    failures.push(format!(
                        "{t} k={k}: {x} below 2kb²+k²c² = {}",
                        gi.lower_envelope
                    ));
                }
                if let Some(odd) = gi.odd_envelope {
                    if x < odd - slack {
                        failures.push(format!("{t} k={k}: {x} below odd envelope {odd}"));
                    }
                }
                if !gi.contains(x, slack) {
                    failures.push(format!("{t} k={k}: {x} outside Gershgorin union"));
                }
            }
        }
    }
    CriterionReport::new(
        3,
        "Gershgorin containment",
        &failures,
        format!("{count} eigenvalues, 100 triples, k ≤ 50"),
    )
}

/// Eigenvalues of a general real matrix via the Schur form, sorted.
fn dense_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Even/odd tridiagonal blocks against a dense eigensolver on the unsplit
/// matrix.
pub fn criterion_4(seed: u64) -> CriterionReport {
    let tol = Settings::default().solver_tol;
    let mut s = Sampler::new(seed ^ 4);
    let mut failures = Vec::new();
    let mut max_err: f64 = 0.0;
    let mut count = 0;
    for t in s.triples(100) {
        for k in 0..=12 {
            count += 1;
            let block = match IrrepBlock::build(k, &t) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("{t} k={k}: {e}"));
                    continue;
                }
            };
            let split = eigenvalues(&block.even_block, tol).and_then(|e| {
                eigenvalues(&block.odd_block, tol).map(|o| {
                    let mut v = e.into_vec();
                    v.extend(o.into_vec());
                    v.sort_by(f64::total_cmp);
                    v
                })
            });
            let split = match split {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{t} k={k}: {e}"));
                    continue;
                }
            };
            let dense = dense_eigenvalues(&block.dense);
            if dense.len() != split.len() {
                failures.push(format!(
                    "{t} k={k}: {} vs {} eigenvalues",
                    split.len(),
                    dense.len()
                ));
                continue;
            }
            for (x, y) in split.iter().zip(&dense) {
                let err = (x - y).abs() / y.abs().max(1.0);
                max_err = max_err.max(err);
                if err > 1e-9 {
                    failures.push(format!("{t} k={k}: split {x} vs dense {y}"));
                }
            }
        }
    }
    CriterionReport::new(
        4,
        "tridiagonal split matches dense eigensolver",
        &failures,
        format!("{count} blocks, k ≤ 12, max rel err {max_err:.2e}"),
    )
}

/// Berger spectra from the closed form against the pipeline and the round
/// spectrum.
pub fn criterion_5(seed: u64) -> CriterionReport {
    let settings = Settings::default();
    let mut s = Sampler::new(seed ^ 5);
    let mut failures = Vec::new();
    let mut exact = 0;
    let mut round = 0;
    for g in [GroupKind::Su2, GroupKind::So3] {
        for _ in 0..50 {
            let (x, y) = (s.parameter(), s.parameter());
            let (a, b) = (x.max(y), x.min(y));
            let lambda_max = 10.0 * (a * a + 2.0 * b * b);
            let t = normalize_triple(a, b, b).unwrap();
            let check = berger_spectrum_up_to(lambda_max, a, b, g, &settings)
                .and_then(|bt| spectrum_up_to(lambda_max, &t, g, &settings).map(|nt| (bt, nt)));
            match check {
                Ok((bt, nt)) if bt.entries == nt.entries => exact += 1,
                Ok(_) => failures.push(format!("{t} {g}: Berger table differs from pipeline")),
                Err(e) => failures.push(format!("{t} {g}: {e}")),
            }

            // A Berger table at a = b must be the round spectrum k(k+2)b², (k+1)².
            let lambda_max = 200.0 * b * b;
            match berger_spectrum_up_to(lambda_max, b, b, g, &settings) {
                Ok(bt) => {
                    let expected: Vec<(f64, u64)> = (0..)
                        .filter(|&k| g.admits(k))
                        .map(|k| ((k * (k + 2)) as f64 * b * b, ((k + 1) * (k + 1)) as u64))
                        .take_while(|&(v, _)| v <= lambda_max)
                        .collect();
                    let ok = bt.entries.len() == expected.len()
                        && bt.entries.iter().zip(&expected).all(|(e, &(v, m))| {
                            e.multiplicity == m && (e.value - v).abs() <= 1e-14 * v.max(1.0)
                        });
                    if ok {
                        round += 1;
                    } else {
                        failures.push(format!("round b={b} {g}: table differs from k(k+2)b²"));
                    }
                }
                Err(e) => failures.push(format!("round b={b} {g}: {e}")),
            }
        }
    }
    CriterionReport::new(
        5,
        "Berger spectra",
        &failures,
        format!("{exact} tables identical to pipeline, {round} round tables match k(k+2)·(k+1)²"),
    )
}

/// `4(b²+c²)` is the first or second distinct positive eigenvalue on `SU(2)`.
pub fn criterion_6(seed: u64) -> CriterionReport {
    let settings = Settings::default();
    let mut s = Sampler::new(seed ^ 6);
    let mut failures = Vec::new();
    let mut hist = [0usize; 2];
    for t in s.triples(1000) {
        let (_, b2, c2) = t.squares();
        let target = 4.0 * (b2 + c2);
        let r = spectrum_up_to(1.001 * target, &t, GroupKind::Su2, &settings)
            .and_then(|tab| mu_index_of(target, &tab, settings.cluster_rel_tol));
        match r {
            Ok(j @ 1..=2) => hist[j - 1] += 1,
            Ok(j) => failures.push(format!("{t}: index {j}")),
            Err(e) => failures.push(format!("{t}: {e}")),
        }
    }
    CriterionReport::new(
        6,
        "4(b²+c²) is μ₁ or μ₂",
        &failures,
        format!("1000 triples: {} at μ₁, {} at μ₂", hist[0], hist[1]),
    )
}

/// Diameter bounds and `λ₁·diam²` estimates.
pub fn criterion_7(seed: u64) -> CriterionReport {
    let mut s = Sampler::new(seed ^ 7);
    let mut failures = Vec::new();

    for scale in [0.1, 0.5, 1.0, 3.0, 10.0] {
        let t = MetricTriple::round(scale).unwrap();
        match lambda1_diam2(&t, GroupKind::Su2) {
            Ok(iv) if iv.is_point() && rel_err(iv.lo, 3.0 * PI2) <= 1e-12 => {}
            Ok(iv) => failures.push(format!("round {scale}: λ₁·diam² = {iv:?}")),
            Err(e) => failures.push(format!("round {scale}: {e}")),
        }
    }

    let ext = berger_lambda1_diam2_extrema();
    let min_want = (1.0 + 3f64.sqrt() / 2.0) * PI2;
    if (ext.min - min_want).abs() > 1e-9 {
        failures.push(format!("Berger minimum {} vs {min_want}", ext.min));
    }
    if (ext.max - 3.0 * PI2).abs() > 1e-9 {
        failures.push(format!("Berger maximum {} vs {}", ext.max, 3.0 * PI2));
    }

    let mut count = 0;
    for g in [GroupKind::Su2, GroupKind::So3] {
        for t in samples_with_pins(&mut s, g, 1000, 50) {
            count += 1;
            let b = t.b();
            let d = diameter(&t, g);
            let l1 = lambda1_closed(&t, g).value;
            let slack = 1.0 + BOUND_REL_SLACK;
            match lambda1_diam2(&t, g) {
                Ok(iv) => {
                    if !(iv.lo > PI2) || iv.hi > lambda1_diam2_cap(g) * PI2 * slack {
                        failures.push(format!("{t} {g}: λ₁·diam² in {iv:?}"));
                    }
                }
                Err(e) => failures.push(format!("{t} {g}: {e}")),
            }
            if d.lower > d.upper {
                failures.push(format!("{t} {g}: diameter bounds inverted"));
            }
            let (diam_ok, l1_ok) = match g {
                GroupKind::Su2 => (
                    d.lower > PI / (2.0 * b) && d.upper <= PI / b * slack,
                    l1 > 2.0 * b * b && l1 <= 8.0 * b * b * slack,
                ),
                GroupKind::So3 => (
                    d.lower * slack >= PI / (2.0 * b) && d.upper < 3f64.sqrt() * PI / (2.0 * b),
                    l1 > 4.0 * b * b && l1 <= 8.0 * b * b * slack,
                ),
            };
            if !diam_ok {
                failures.push(format!("{t} {g}: diameter bounds {d:?} vs b = {b}"));
            }
            if !l1_ok {
                failures.push(format!("{t} {g}: λ₁ = {l1} vs b = {b}"));
            }
        }
    }
    CriterionReport::new(
        7,
        "diameter and λ₁·diam² estimates",
        &failures,
        format!(
            "round 3π² ok at 5 scales; Berger min {:.12}π², max {:.12}π²; {count} sampled triples",
            ext.min / PI2,
            ext.max / PI2
        ),
    )
}

/// Round products `SU(2)ⁿ`.
pub fn criterion_8() -> CriterionReport {
    let mut failures = Vec::new();
    let round = MetricTriple::round(1.0).unwrap();
    for n in 1..=5 {
        let p = ProductSpec {
            su2_factors: vec![round; n],
            so3_factors: vec![],
        };
        match product_estimate(&p) {
            Ok(e) => {
                let want = 3.0 * n as f64 * PI2;
                if !e.product.is_point() || rel_err(e.product.lo, want) > 1e-12 {
                    failures.push(format!("n={n}: product {:?} vs {want}", e.product));
                }
                if !(e.product.lo > PI2 && e.product.hi <= e.cap * PI2) {
                    failures.push(format!("n={n}: outside (π², {}π²]", e.cap));
                }
            }
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    CriterionReport::new(
        8,
        "product estimate",
        &failures,
        "n = 1..5 round factors give 3nπ²".into(),
    )
}

/// Metric recovery from invariants, and isospectrality of random pairs.
pub fn criterion_9(seed: u64) -> CriterionReport {
    let settings = Settings::default();
    let mut s = Sampler::new(seed ^ 9);
    let mut failures = Vec::new();
    let mut mults = std::collections::BTreeMap::new();
    let mut max_err: f64 = 0.0;
    for g in [GroupKind::Su2, GroupKind::So3] {
        for t in samples_with_pins(&mut s, g, 1000, 50) {
            let inv = invariants(&t, g);
            *mults.entry((g.name(), inv.mult1)).or_insert(0usize) += 1;
            match recover_triple(&inv, g) {
                Ok(r) => {
                    let err = r
                        .as_array()
                        .iter()
                        .zip(t.as_array())
                        .map(|(x, y)| rel_err(*x, y))
                        .fold(0.0, f64::max);
                    max_err = max_err.max(err);
                    if err > 1e-8 {
                        failures.push(format!("{t} {g}: recovered {r}"));
                    }
                }
                Err(e) => failures.push(format!("{t} {g}: {e}")),
            }
        }
    }

    let mut isometric = 0;
    for i in 0..200 {
        let g = if i % 2 == 0 {
            GroupKind::Su2
        } else {
            GroupKind::So3
        };
        let t1 = s.triple();
        let t2 = if i % 5 == 0 {
            // Same metric, parameters permuted.
            let [a, b, c] = t1.as_array();
            normalize_triple(c, a, b).unwrap()
        } else {
            s.triple()
        };
        let lambda_max = 1.1
            * lambda1_closed(&t1, g)
                .value
                .max(lambda1_closed(&t2, g).value);
        match isospectral_check(&t1, &t2, g, lambda_max, 1e-9, &settings) {
            Ok(IsospectralVerdict::Isometric) => {
                isometric += 1;
                if t1 != t2 {
                    failures.push(format!("{t1} vs {t2} {g}: reported isometric"));
                }
            }
            Ok(_) if t1 == t2 => failures.push(format!("{t1} {g}: equal triples not isometric")),
            Ok(_) => {}
            Err(e) => failures.push(format!("{t1} vs {t2} {g}: {e}")),
        }
    }
    let regimes: Vec<String> = mults
        .iter()
        .map(|((g, m), n)| format!("{g}/{m}: {n}"))
        .collect();
    CriterionReport::new(
        9,
        "rigidity round-trip and isospectrality",
        &failures,
        format!(
            "max rel err {max_err:.2e}; multiplicities [{}]; {isometric}/200 pairs isometric",
            regimes.join(", ")
        ),
    )
}

/// `λ₁ − Scal/2` positivity.
pub fn criterion_10(seed: u64) -> CriterionReport {
    let mut s = Sampler::new(seed ^ 10);
    let mut failures = Vec::new();
    let mut min_su2 = f64::INFINITY;
    let mut min_so3 = f64::INFINITY;
    for scale in [0.1, 0.7, 1.0, 2.5, 10.0] {
        let t = MetricTriple::round(scale).unwrap();
        let gap = yamabe_gap(&t, GroupKind::Su2);
        if gap.abs() >= 1e-12 {
            failures.push(format!("round {scale}: gap {gap}"));
        }
    }
    for g in [GroupKind::Su2, GroupKind::So3] {
        for t in samples_with_pins(&mut s, g, 1000, 50) {
            let gap = yamabe_gap(&t, g);
            let scal = scalar_curvature(&t);
            match g {
                GroupKind::Su2 => {
                    if t.class() == MetricClass::Round {
                        continue;
                    }
                    min_su2 = min_su2.min(gap);
                    if !(gap >= 0.0 && gap > 1e-6 * scal) {
                        failures.push(format!("{t} su2: gap {gap}, Scal {scal}"));
                    }
                }
                GroupKind::So3 => {
                    min_so3 = min_so3.min(gap);
                    if !(gap > 0.0) {
                        failures.push(format!("{t} so3: gap {gap}"));
                    }
                }
            }
        }
    }
    CriterionReport::new(
        10,
        "Yamabe gap",
        &failures,
        format!(
            "round gaps zero; min non-round SU(2) gap {min_su2:.3e}, min SO(3) gap {min_so3:.3e}"
        ),
    )
}

/// Counting function of the unit sphere against the Weyl asymptotics.
pub fn criterion_11() -> CriterionReport {
    let lambda_max = 4000.0;
    let t = MetricTriple::round(1.0).unwrap();
    let mut failures = Vec::new();
    let mut summary = String::new();
    match spectrum_up_to(lambda_max, &t, GroupKind::Su2, &Settings::default()) {
        Ok(tab) => {
            let n = tab.counting(lambda_max) as f64;
            let vol = crate::geometry::volume(&t, GroupKind::Su2);
            let weyl = vol * lambda_max.powf(1.5) / (6.0 * PI2);
            let err = rel_err(n, weyl);
            summary = format!(
                "N(4000) = {n}, Weyl {weyl:.1}, rel diff {:.2}%",
                100.0 * err
            );
            if err > 0.05 {
                failures.push(summary.clone());
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    CriterionReport::new(11, "Weyl law volume normalisation", &failures, summary)
}

/// Index of `a²+b²+c²` among the distinct eigenvalues as `a` grows with
/// `b = c = 1`. Informational: the index is expected to grow.
pub fn index_growth_demo() -> crate::Result<Vec<(f64, usize)>> {
    let a_values = [1.0, SQRT_2, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0];
    fundamental_index_sequence(1.0, 1.0, &a_values, &Settings::default())
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(seed),
        criterion_2(),
        criterion_3(seed),
        criterion_4(seed),
        criterion_5(seed),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(),
        criterion_9(seed),
        criterion_10(seed),
        criterion_11(),
    ]
}
