//! The metric is determined by its spectrum: volume, scalar curvature, `λ₁`
//! and the multiplicity of `λ₁` already pin down `(a, b, c)`.
//!
//! Recovery goes through elementary symmetric functions. When `λ₁ = a²+b²+c²`
//! (multiplicity 4 or 7 on `SU(2)`) the squares `a², b², c²` are the roots of
//! a cubic whose coefficients follow from the invariants. When
//! `λ₁ = 4(b²+c²)` the pair `b² + c²`, `bc = abc/a` reduces the scalar
//! curvature to a quartic in `a²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::scalar_curvature;
use crate::metric::{
    normalize_triple, EigenPair, GroupKind, MetricTriple, Settings, SpectralInvariants,
};
use crate::poly::Polynomial;
use crate::spectrum::{lambda1_closed, spectrum_up_to};

/// Relative residual allowed when re-deriving the invariants of a recovered
/// triple.
pub const RECOVERY_REL_TOL: f64 = 1e-6;

/// Quantities within this many rounding units of zero are taken as zero.
const SNAP_ULPS: f64 = 64.0;

pub fn invariants(t: &MetricTriple, g: GroupKind) -> SpectralInvariants {
    let l1 = lambda1_closed(t, g);
    SpectralInvariants {
        vol_param: t.volume_param(),
        scal: scalar_curvature(t),
        lambda1: l1.value,
        mult1: l1.multiplicity,
    }
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::InconsistentInvariants(msg.into())
}

/// The metric with the given invariants.
pub fn recover_triple(inv: &SpectralInvariants, g: GroupKind) -> Result<MetricTriple> {
    let SpectralInvariants {
        vol_param,
        scal,
        lambda1,
        mult1,
    } = *inv;
    if !(vol_param > 0.0 && lambda1 > 0.0)
        || !vol_param.is_finite()
        || !lambda1.is_finite()
        || !scal.is_finite()
    {
        return Err(inconsistent(format!(
            "volume parameter and λ₁ must be positive and finite, got {vol_param}, {lambda1}"
        )));
    }
    let t = match (g, mult1) {
        (GroupKind::Su2, 4 | 7) => recover_from_cubic(vol_param, scal, lambda1)?,
        (GroupKind::Su2, 3) | (GroupKind::So3, 3 | 6) => {
            recover_from_quartic(vol_param, scal, lambda1)?
        }
        (GroupKind::So3, 9) => MetricTriple::round((lambda1 / 8.0).sqrt())?,
        _ => {
            return Err(inconsistent(format!(
                "multiplicity {mult1} does not occur for λ₁ on {g}"
            )))
        }
    };
    validate(&t, g, inv)?;
    Ok(t)
}

/// `a², b², c²` as the roots of `u³ − σ₁u² + σ₂u − σ₃`.
fn recover_from_cubic(v: f64, scal: f64, lambda1: f64) -> Result<MetricTriple> {
    let s1 = lambda1;
    let s3 = v * v;
    let quartic_sum = (4.0 * s1 - scal) * s3 / 2.0;
    let s2_sq = quartic_sum + 2.0 * s3 * s1;
    if !(s2_sq > 0.0) {
        return Err(inconsistent("σ₂² is not positive"));
    }
    let s2 = s2_sq.sqrt();
    let cubic = Polynomial::new(vec![-s3, s2, -s1, 1.0]);
    let mut squares = Vec::with_capacity(3);
    for r in cubic.real_roots() {
        if !(r.value > 0.0) {
            return Err(inconsistent(format!(
                "non-positive root {} of the cubic",
                r.value
            )));
        }
        squares.extend(std::iter::repeat_n(r.value, r.multiplicity));
    }
    if squares.len() != 3 {
        return Err(inconsistent("the cubic does not have three real roots"));
    }
    let [x, y, z] = [squares[0].sqrt(), squares[1].sqrt(), squares[2].sqrt()];
    normalize_triple(x, y, z)
}

/// The quartic `s²u⁴ − 4V²u³ + ((Scal − 4s)V²/2)u² + V⁴` in `u = a²`, where
/// `s = b² + c²` and `V = abc`.
pub fn a_quartic(v: f64, scal: f64, s: f64) -> Polynomial {
    let v2 = v * v;
    Polynomial::new(vec![
        v2 * v2,
        0.0,
        (scal - 4.0 * s) * v2 / 2.0,
        -4.0 * v2,
        s * s,
    ])
}

fn recover_from_quartic(v: f64, scal: f64, lambda1: f64) -> Result<MetricTriple> {
    let s = lambda1 / 4.0;
    // The other positive roots belong to parameters below the geometric mean
    // (abc)^(1/3), while a is the largest parameter.
    let u = a_quartic(v, scal, s)
        .real_roots()
        .into_iter()
        .map(|r| r.value)
        .rfind(|&u| u > 0.0)
        .ok_or_else(|| inconsistent("the quartic in a² has no positive root"))?;
    let a = u.sqrt();
    let p = v / a;
    let sum_sq = s + 2.0 * p;
    let mut diff_sq = s - 2.0 * p;
    if diff_sq.abs() <= SNAP_ULPS * f64::EPSILON * s {
        diff_sq = 0.0;
    }
    if diff_sq < 0.0 {
        return Err(inconsistent(format!("(b − c)² = {diff_sq} is negative")));
    }
    let plus = sum_sq.sqrt();
    let minus = diff_sq.sqrt();
    normalize_triple(a, 0.5 * (plus + minus), 0.5 * (plus - minus))
        .map_err(|_| inconsistent("recovered parameters are not positive"))
}

fn validate(t: &MetricTriple, g: GroupKind, want: &SpectralInvariants) -> Result<()> {
    let got = invariants(t, g);
    let rel = |x: f64, y: f64, scale: f64| (x - y).abs() <= RECOVERY_REL_TOL * scale;
    let scal_scale = want.scal.abs().max(4.0 * want.lambda1);
    if got.mult1 != want.mult1
        || !rel(got.vol_param, want.vol_param, want.vol_param)
        || !rel(got.lambda1, want.lambda1, want.lambda1)
        || !rel(got.scal, want.scal, scal_scale)
    {
        return Err(inconsistent(format!(
            "recovered {t} has invariants {got:?}, expected {want:?}"
        )));
    }
    Ok(())
}

/// `s²u³ + a²(b²−c²)²u² − b⁴c⁴u − a²b⁴c⁴` with `s = b²+c²`, a cubic in
/// `u = t²`. It has a single positive root, and its square root lies below
/// `(abc)^(1/3)`.
pub fn auxiliary_polynomial(t: &MetricTriple) -> Polynomial {
    let (a2, b2, c2) = t.squares();
    let s = b2 + c2;
    let q = b2 * b2 * c2 * c2;
    let d = b2 - c2;
    Polynomial::new(vec![-a2 * q, -q, a2 * d * d, s * s])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IsospectralVerdict {
    /// Truncated spectra agree and the recovered metrics coincide.
    Isometric,
    /// First distinct eigenvalue `μ_index` (`index = 0` is the constant) at
    /// which the tables differ; `None` when one table has no such entry.
    DistinctSpectra {
        index: usize,
        left: Option<EigenPair>,
        right: Option<EigenPair>,
    },
    /// Truncated spectra agree but the metrics recovered from them do not:
    /// the truncation is too short to decide.
    Undecided,
}

/// Compares the spectra of two metrics up to `Λ` within relative `tol`.
pub fn isospectral_check(
    t1: &MetricTriple,
    t2: &MetricTriple,
    g: GroupKind,
    lambda_max: f64,
    tol: f64,
    settings: &Settings,
) -> Result<IsospectralVerdict> {
    let l1 = lambda1_closed(t1, g).value.max(lambda1_closed(t2, g).value);
    if !(lambda_max >= 1.1 * l1) {
        return Err(Error::InvalidArgument(format!(
            "truncation bound {lambda_max} must be at least 1.1·λ₁ = {}",
            1.1 * l1
        )));
    }
    let left = spectrum_up_to(lambda_max, t1, g, settings)?;
    let right = spectrum_up_to(lambda_max, t2, g, settings)?;
    let n = left.entries.len().max(right.entries.len());
    for index in 0..n {
        let x = left.entries.get(index);
        let y = right.entries.get(index);
        let same = match (x, y) {
            (Some(x), Some(y)) => {
                x.multiplicity == y.multiplicity
                    && (x.value - y.value).abs() <= tol * x.value.abs().max(1.0)
            }
            _ => false,
        };
        if !same {
            return Ok(IsospectralVerdict::DistinctSpectra {
                index,
                left: x.cloned(),
                right: y.cloned(),
            });
        }
    }
    let r1 = recover_triple(&invariants(t1, g), g)?;
    let r2 = recover_triple(&invariants(t2, g), g)?;
    Ok(if r1.approx_eq(&r2, tol.max(1e-8)) {
        IsospectralVerdict::Isometric
    } else {
        IsospectralVerdict::Undecided
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(a: f64, b: f64, c: f64) -> MetricTriple {
        normalize_triple(a, b, c).unwrap()
    }

    fn round_trip(t: MetricTriple, g: GroupKind) {
        let r = recover_triple(&invariants(&t, g), g).unwrap();
        assert!(r.approx_eq(&t, 1e-12), "{t} -> {r} on {g}");
    }

    #[test]
    fn invariants_examples() {
        let i = invariants(&triple(1.0, 1.0, 1.0), GroupKind::Su2);
        assert_eq!(
            (i.vol_param, i.scal, i.lambda1, i.mult1),
            (1.0, 6.0, 3.0, 4)
        );
        let t = triple(3.0, 1.0, 1.0);
        let i = invariants(&t, GroupKind::Su2);
        assert_eq!((i.vol_param, i.lambda1, i.mult1), (3.0, 8.0, 3));
        assert_eq!(i.scal, scalar_curvature(&t));
        let i = invariants(&triple(1.0, 1.0, 1.0), GroupKind::So3);
        assert_eq!(
            (i.vol_param, i.scal, i.lambda1, i.mult1),
            (1.0, 6.0, 8.0, 9)
        );
    }

    #[test]
    fn round_trips() {
        round_trip(triple(2.0, 1.0, 1.0), GroupKind::Su2);
        round_trip(triple(3.0, 1.0, 1.0), GroupKind::Su2);
        round_trip(triple(3.0, 2.0, 1.0), GroupKind::Su2);
        round_trip(triple(6f64.sqrt(), 1.0, 1.0), GroupKind::Su2);
        round_trip(triple(3.0, 2.0, 1.0), GroupKind::So3);
        round_trip(triple(2.0, 2.0, 1.0), GroupKind::So3);
        round_trip(triple(1.3, 1.3, 1.3), GroupKind::So3);
    }

    #[test]
    fn round_sphere_from_invariants() {
        let inv = SpectralInvariants {
            vol_param: 1.0,
            scal: 6.0,
            lambda1: 3.0,
            mult1: 4,
        };
        assert_eq!(
            recover_triple(&inv, GroupKind::Su2).unwrap().as_array(),
            [1.0; 3]
        );
    }

    #[test]
    fn inconsistent_invariants_rejected() {
        let inv = SpectralInvariants {
            vol_param: 1.0,
            scal: 6.0,
            lambda1: 3.0,
            mult1: 3,
        };
        assert!(matches!(
            recover_triple(&inv, GroupKind::Su2),
            Err(Error::InconsistentInvariants(_))
        ));
        let inv = SpectralInvariants { mult1: 5, ..inv };
        assert!(recover_triple(&inv, GroupKind::Su2).is_err());
    }

    #[test]
    fn auxiliary_root_below_geometric_mean() {
        for t in [
            triple(3.0, 1.0, 1.0),
            triple(4.0, 2.0, 0.5),
            triple(1.0, 1.0, 1.0),
        ] {
            let roots: Vec<f64> = auxiliary_polynomial(&t)
                .real_roots()
                .into_iter()
                .map(|r| r.value)
                .filter(|&u| u > 0.0)
                .collect();
            assert_eq!(roots.len(), 1);
            assert!(roots[0].sqrt() < t.volume_param().cbrt());
        }
    }

    #[test]
    fn isospectral_examples() {
        let s = Settings::default();
        let t = triple(3.0, 2.0, 1.0);
        assert_eq!(
            isospectral_check(&t, &t, GroupKind::Su2, 40.0, 1e-9, &s).unwrap(),
            IsospectralVerdict::Isometric
        );
        let p = triple(1.0, 1.0, 2.0);
        assert_eq!(
            isospectral_check(&triple(2.0, 1.0, 1.0), &p, GroupKind::Su2, 20.0, 1e-9, &s).unwrap(),
            IsospectralVerdict::Isometric
        );
        match isospectral_check(
            &triple(2.0, 1.0, 1.0),
            &triple(2.0001, 1.0, 1.0),
            GroupKind::Su2,
            20.0,
            1e-9,
            &s,
        )
        .unwrap()
        {
            IsospectralVerdict::DistinctSpectra { index, left, .. } => {
                assert_eq!(index, 1);
                assert_eq!(left.unwrap().value, 6.0);
            }
            v => panic!("unexpected {v:?}"),
        }
        assert!(isospectral_check(&t, &t, GroupKind::Su2, 10.0, 1e-9, &s).is_err());
    }
}
