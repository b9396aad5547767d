//! Domain types shared by every other module.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters `(a, b, c)` of the left-invariant metric making
/// `{aX₁, bX₂, cX₃}` orthonormal, stored in canonical order `a ≥ b ≥ c > 0`.
///
/// Permuting the parameters does not change the isometry class, so every
/// constructor sorts descending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricTriple {
    a: f64,
    b: f64,
    c: f64,
}

impl MetricTriple {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        normalize_triple(a, b, c)
    }

    /// The round metric `g_(s,s,s)` of constant sectional curvature `1/s²`.
    pub fn round(s: f64) -> Result<Self> {
        normalize_triple(s, s, s)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `(a², b², c²)`.
    pub fn squares(&self) -> (f64, f64, f64) {
        (self.a * self.a, self.b * self.b, self.c * self.c)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// `a·b·c`; the volume depends on the metric only through this product.
    pub fn volume_param(&self) -> f64 {
        self.a * self.b * self.c
    }

    /// Multiplies every parameter by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        normalize_triple(self.a * s, self.b * s, self.c * s)
    }

    pub fn class(&self) -> MetricClass {
        classify(self)
    }

    /// True when the two triples agree parameter-wise within `rel_tol`.
    pub fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .all(|(x, y)| (x - y).abs() <= rel_tol * x.abs().max(y.abs()))
    }
}

impl fmt::Display for MetricTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Sorts `(a, b, c)` descending, rejecting non-finite or non-positive input.
pub fn normalize_triple(a: f64, b: f64, c: f64) -> Result<MetricTriple> {
    let mut v = [a, b, c];
    if v.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(Error::NonPositiveParameter(a, b, c));
    }
    v.sort_by(|x, y| y.total_cmp(x));
    Ok(MetricTriple {
        a: v[0],
        b: v[1],
        c: v[2],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MetricClass {
    /// `a = b = c`.
    Round,
    /// `a = b > c`.
    BergerAB,
    /// `a > b = c`.
    BergerBC,
    Generic,
}

impl MetricClass {
    pub fn is_berger(self) -> bool {
        !matches!(self, MetricClass::Generic)
    }
}

/// Exact comparison of the stored values. Inputs that should count as Berger
/// despite rounding noise have to be rounded by the caller first.
pub fn classify(t: &MetricTriple) -> MetricClass {
    match (t.a == t.b, t.b == t.c) {
        (true, true) => MetricClass::Round,
        (true, false) => MetricClass::BergerAB,
        (false, true) => MetricClass::BergerBC,
        (false, false) => MetricClass::Generic,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    #[serde(rename = "su2")]
    Su2,
    #[serde(rename = "so3")]
    So3,
}

impl GroupKind {
    /// Whether the irreducible representation `π_k` descends to this group.
    pub fn admits(self, k: usize) -> bool {
        match self {
            GroupKind::Su2 => true,
            GroupKind::So3 => k.is_multiple_of(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Su2 => "su2",
            GroupKind::So3 => "so3",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su2" | "su(2)" => Ok(GroupKind::Su2),
            "so3" | "so(3)" => Ok(GroupKind::So3),
            other => Err(Error::InvalidArgument(format!("unknown group '{other}'"))),
        }
    }
}

/// A distinct eigenvalue of the Laplacian with its multiplicity, plus the
/// irreducible representations `π_k` it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub value: f64,
    pub multiplicity: u64,
    pub k_sources: Vec<u32>,
}

/// A pair of computed eigenvalues merged into one cluster although their gap
/// exceeded the near-degeneracy warning threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterMerge {
    pub kept: f64,
    pub merged: f64,
}

/// Distinct eigenvalues `0 = μ₀ < μ₁ < …` up to the truncation bound `Λ`,
/// complete below `Λ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTable {
    pub entries: Vec<EigenPair>,
    pub truncation_bound: f64,
    pub group: GroupKind,
    pub triple: MetricTriple,
    pub k_max: usize,
    pub near_degenerate_merges: Vec<ClusterMerge>,
}

impl SpectrumTable {
    /// Entries with strictly positive value, i.e. `(μ_j, m_j)` for `j ≥ 1`.
    pub fn positive(&self) -> &[EigenPair] {
        self.entries
            .split_first()
            .map(|(_, rest)| rest)
            .unwrap_or_default()
    }

    /// Smallest positive eigenvalue, if the table reaches it.
    pub fn fundamental(&self) -> Option<&EigenPair> {
        self.positive().first()
    }

    /// Eigenvalue counting function `N(x)`: the number of eigenvalues `≤ x`
    /// counted with multiplicity (the constant functions included).
    pub fn counting(&self, x: f64) -> u64 {
        self.entries
            .iter()
            .take_while(|e| e.value <= x)
            .map(|e| e.multiplicity)
            .sum()
    }

    /// Same distinct values (within `rel_tol`) and identical multiplicities.
    pub fn matches(&self, other: &SpectrumTable, rel_tol: f64) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(x, y)| {
                x.multiplicity == y.multiplicity
                    && (x.value - y.value).abs() <= rel_tol * x.value.abs().max(1.0)
            })
    }
}

/// The spectral fingerprint that determines a left-invariant metric up to
/// isometry: volume parameter `abc`, scalar curvature, `λ₁` and its
/// multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralInvariants {
    pub vol_param: f64,
    pub scal: f64,
    pub lambda1: f64,
    pub mult1: u64,
}

/// Numerical knobs shared by the spectrum pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    /// Relative bisection tolerance for tridiagonal eigenvalues.
    pub solver_tol: f64,
    /// Two eigenvalues `x ≤ y` are one when `y − x ≤ cluster_rel_tol·max(1, x)`.
    pub cluster_rel_tol: f64,
    /// Merges with a gap above this (relative) threshold are reported.
    pub merge_warn_rel_tol: f64,
    /// Hard cap on the largest representation label `k`.
    pub k_cap: usize,
}

pub const DEFAULT_SOLVER_TOL: f64 = 1e-12;
pub const DEFAULT_CLUSTER_REL_TOL: f64 = 1e-8;
pub const DEFAULT_MERGE_WARN_REL_TOL: f64 = 1e-10;
pub const DEFAULT_K_CAP: usize = 10_000;

impl Default for Settings {
    fn default() -> Self {
        Settings {
            solver_tol: DEFAULT_SOLVER_TOL,
            cluster_rel_tol: DEFAULT_CLUSTER_REL_TOL,
            merge_warn_rel_tol: DEFAULT_MERGE_WARN_REL_TOL,
            k_cap: DEFAULT_K_CAP,
        }
    }
}

/// The clustering rule used for multiplicities, shared with the closed forms so
/// that both agree on which eigenvalues coincide.
pub(crate) fn values_coincide(x: f64, y: f64, rel_tol: f64) -> bool {
    (x - y).abs() <= rel_tol * x.abs().min(y.abs()).max(1.0)
}
