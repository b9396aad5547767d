//! Truncated spectra of `(G, g_(a,b,c))` and the closed-form results about
//! their bottom.
//!
//! The spectrum is the union over irreducible representations `π_k` (all `k`
//! for `SU(2)`, even `k` for `SO(3)`) of the eigenvalues of `π_k(−C)`, each
//! repeated `k+1` times. Every eigenvalue of `π_k(−C)` is at least
//! `2kb² + k²c²`, which is what makes a finite truncation complete.

use serde::Serialize;

use crate::eigensolve::eigen_block;
use crate::error::{Error, Result};
use crate::metric::{
    normalize_triple, values_coincide, ClusterMerge, EigenPair, GroupKind, MetricTriple, Settings,
    SpectrumTable, DEFAULT_CLUSTER_REL_TOL,
};

/// Which closed form gives the fundamental tone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Lambda1Regime {
    /// `a² < 3(b²+c²)`: `λ₁ = a²+b²+c²` with multiplicity 4.
    SumDominates,
    /// `a² = 3(b²+c²)`: both candidates coincide, multiplicity 7.
    Boundary,
    /// `a² > 3(b²+c²)`: `λ₁ = 4(b²+c²)` with multiplicity 3.
    FourBC,
    /// `SO(3)`: always `4(b²+c²)`.
    SO3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lambda1Result {
    pub value: f64,
    pub multiplicity: u64,
    pub regime: Lambda1Regime,
}

/// `ν_{k,j}(a, b) = a²(k−2j)² + 2b²((2j+1)k − 2j²)`, the `j`-th diagonal entry
/// of `π_k(−C_(a,b,b))`.
pub fn berger_eigenvalue(k: usize, j: usize, a: f64, b: f64) -> f64 {
    let kf = k as f64;
    let jf = j as f64;
    let w = kf - 2.0 * jf;
    a * a * w * w + 2.0 * b * b * ((2.0 * jf + 1.0) * kf - 2.0 * jf * jf)
}

/// Smallest positive eigenvalue and its multiplicity from the closed forms.
///
/// Coincidences (the `SU(2)` boundary `a² = 3(b²+c²)`, and `a = b` or
/// `a = b = c` on `SO(3)`) are decided with the same relative tolerance the
/// numerical pipeline uses to cluster eigenvalues.
pub fn lambda1_closed(t: &MetricTriple, g: GroupKind) -> Lambda1Result {
    lambda1_closed_with(t, g, DEFAULT_CLUSTER_REL_TOL)
}

pub fn lambda1_closed_with(t: &MetricTriple, g: GroupKind, rel_tol: f64) -> Lambda1Result {
    let (a2, b2, c2) = t.squares();
    let four_bc = 4.0 * (b2 + c2);
    match g {
        GroupKind::Su2 => {
            let sum = a2 + b2 + c2;
            if values_coincide(sum, four_bc, rel_tol) {
                Lambda1Result {
                    value: sum.min(four_bc),
                    multiplicity: 7,
                    regime: Lambda1Regime::Boundary,
                }
            } else if sum < four_bc {
                Lambda1Result {
                    value: sum,
                    multiplicity: 4,
                    regime: Lambda1Regime::SumDominates,
                }
            } else {
                Lambda1Result {
                    value: four_bc,
                    multiplicity: 3,
                    regime: Lambda1Regime::FourBC,
                }
            }
        }
        GroupKind::So3 => {
            let four_ac = 4.0 * (a2 + c2);
            let four_ab = 4.0 * (a2 + b2);
            let multiplicity = if !values_coincide(four_bc, four_ac, rel_tol) {
                3
            } else if values_coincide(four_bc, four_ab, rel_tol) {
                9
            } else {
                6
            };
            Lambda1Result {
                value: four_bc,
                multiplicity,
                regime: Lambda1Regime::SO3,
            }
        }
    }
}

/// Largest `K` with `2Kb² + K²c² ≤ Λ` (largest even such `K` on `SO(3)`).
/// Representations beyond `K` contribute nothing `≤ Λ`.
pub fn k_cutoff(lambda_max: f64, t: &MetricTriple, g: GroupKind, cap: usize) -> Result<usize> {
    if !(lambda_max > 0.0) || !lambda_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "truncation bound must be positive and finite, got {lambda_max}"
        )));
    }
    let (_, b2, c2) = t.squares();
    let bound = |k: f64| 2.0 * k * b2 + k * k * c2;
    // Positive root of c²K² + 2b²K − Λ, in the cancellation-free form.
    let estimate = lambda_max / (b2 + (b2 * b2 + c2 * lambda_max).sqrt());
    if !estimate.is_finite() || estimate > (cap + 1) as f64 {
        return Err(Error::CutoffTooLarge {
            required: if estimate.is_finite() {
                estimate as usize
            } else {
                usize::MAX
            },
            cap,
        });
    }
    let mut k = estimate.max(0.0).floor() as usize;
    while bound((k + 1) as f64) <= lambda_max {
        k += 1;
    }
    while k > 0 && bound(k as f64) > lambda_max {
        k -= 1;
    }
    if g == GroupKind::So3 {
        k -= k % 2;
    }
    if k > cap {
        return Err(Error::CutoffTooLarge { required: k, cap });
    }
    Ok(k)
}

/// Clusters raw `(value, k)` eigenvalues, each carrying multiplicity `k+1`.
fn assemble(
    mut raw: Vec<(f64, usize)>,
    lambda_max: f64,
    t: &MetricTriple,
    g: GroupKind,
    k_max: usize,
    settings: &Settings,
) -> SpectrumTable {
    raw.retain(|&(v, _)| v <= lambda_max);
    raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut entries: Vec<EigenPair> = Vec::new();
    let mut merges = Vec::new();
    for (value, k) in raw {
        let mult = k as u64 + 1;
        match entries.last_mut() {
            Some(last) if values_coincide(last.value, value, settings.cluster_rel_tol) => {
                if value - last.value > settings.merge_warn_rel_tol * last.value.abs().max(1.0) {
                    merges.push(ClusterMerge {
                        kept: last.value,
                        merged: value,
                    });
                }
                last.multiplicity += mult;
                if !last.k_sources.contains(&(k as u32)) {
                    last.k_sources.push(k as u32);
                }
            }
            _ => entries.push(EigenPair {
                value,
                multiplicity: mult,
                k_sources: vec![k as u32],
            }),
        }
    }
    for e in &mut entries {
        e.k_sources.sort_unstable();
    }
    SpectrumTable {
        entries,
        truncation_bound: lambda_max,
        group: g,
        triple: *t,
        k_max,
        near_degenerate_merges: merges,
    }
}

/// All distinct eigenvalues `≤ Λ` with multiplicities.
pub fn spectrum_up_to(
    lambda_max: f64,
    t: &MetricTriple,
    g: GroupKind,
    settings: &Settings,
) -> Result<SpectrumTable> {
    let k_max = k_cutoff(lambda_max, t, g, settings.k_cap)?;
    let mut raw = Vec::new();
    for k in (0..=k_max).filter(|&k| g.admits(k)) {
        let list = eigen_block(k, t, settings.solver_tol)?;
        raw.extend(list.values().iter().map(|&v| (v, k)));
    }
    Ok(assemble(raw, lambda_max, t, g, k_max, settings))
}

/// Spectrum of the Berger metric `g_(a,b,b)` assembled from `ν_{k,j}(a, b)`
/// alone, without any eigensolver.
pub fn berger_spectrum_up_to(
    lambda_max: f64,
    a: f64,
    b: f64,
    g: GroupKind,
    settings: &Settings,
) -> Result<SpectrumTable> {
    let t = normalize_triple(a, b, b)?;
    let k_max = k_cutoff(lambda_max, &t, g, settings.k_cap)?;
    let raw = (0..=k_max)
        .filter(|&k| g.admits(k))
        .flat_map(|k| (0..=k).map(move |j| (berger_eigenvalue(k, j, a, b), k)))
        .collect();
    Ok(assemble(raw, lambda_max, &t, g, k_max, settings))
}

/// Position `j ≥ 1` of `value` among the distinct positive eigenvalues
/// `μ₁ < μ₂ < …` of the table.
pub fn mu_index_of(value: f64, table: &SpectrumTable, rel_tol: f64) -> Result<usize> {
    table
        .positive()
        .iter()
        .position(|e| (e.value - value).abs() <= rel_tol * value.abs().max(1.0))
        .map(|i| i + 1)
        .ok_or(Error::NotFound(value))
}

/// Eigenvalues of `π₀`, `π₁` and `π₂`, which are available in closed form for
/// every triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowIrrepEigenvalues {
    pub pi0: [f64; 1],
    pub pi1: [f64; 2],
    /// `4(b²+c²) ≤ 4(a²+c²) ≤ 4(a²+b²)`.
    pub pi2: [f64; 3],
}

pub fn low_irrep_eigenvalues(t: &MetricTriple) -> LowIrrepEigenvalues {
    let (a2, b2, c2) = t.squares();
    let s = a2 + b2 + c2;
    LowIrrepEigenvalues {
        pi0: [0.0],
        pi1: [s, s],
        pi2: [4.0 * (b2 + c2), 4.0 * (a2 + c2), 4.0 * (a2 + b2)],
    }
}

/// For fixed `b ≥ c`, the index `j(a)` with `μ_{j(a)} = a² + b² + c²` on
/// `SU(2)`, evaluated at each `a` in `a_values` (each must satisfy `a ≥ b`).
/// The index grows without bound as `a → ∞`.
pub fn fundamental_index_sequence(
    b: f64,
    c: f64,
    a_values: &[f64],
    settings: &Settings,
) -> Result<Vec<(f64, usize)>> {
    a_values
        .iter()
        .map(|&a| {
            if a < b || b < c {
                return Err(Error::InvalidArgument(format!(
                    "need a >= b >= c, got ({a}, {b}, {c})"
                )));
            }
            let t = normalize_triple(a, b, c)?;
            let target = a * a + b * b + c * c;
            let table = spectrum_up_to(target, &t, GroupKind::Su2, settings)?;
            Ok((a, mu_index_of(target, &table, settings.cluster_rel_tol)?))
        })
        .collect()
}
