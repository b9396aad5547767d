//! Sturm-sequence bisection for real symmetric tridiagonal matrices.
//!
//! Only eigenvalues are computed. Each one is bracketed independently inside
//! the Gershgorin hull of its block, so the result is always sorted and every
//! value is certified to lie within the requested tolerance.

use serde::Serialize;

use crate::casimir::{IrrepBlock, TridiagBlock};
use crate::error::{Error, Result};
use crate::metric::MetricTriple;
use crate::spectrum::berger_eigenvalue;

/// Iteration budget per eigenvalue.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Eigenvalues of one matrix, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenList {
    values: Vec<f64>,
}

impl EigenList {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        EigenList { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    fn merge(self, other: EigenList) -> EigenList {
        let mut values = self.values;
        values.extend(other.values);
        EigenList::from_unsorted(values)
    }
}

/// Zero-pivot guard `2⁻⁵²·‖T‖∞`, floored so an all-zero block still works.
fn pivot_guard(t: &TridiagBlock) -> f64 {
    f64::EPSILON * t.inf_norm().max(f64::MIN_POSITIVE)
}

fn count_below(t: &TridiagBlock, x: f64, guard: f64) -> usize {
    let diag = t.diag();
    let off = t.offdiag();
    let mut count = 0;
    let mut d = 0.0;
    for i in 0..diag.len() {
        d = if i == 0 {
            diag[0] - x
        } else {
            (diag[i] - x) - off[i - 1] * off[i - 1] / d
        };
        // A vanishing pivot is pushed to the positive side: the shift then
        // sits just below x, so an eigenvalue equal to x is not counted.
        if d == 0.0 {
            d = guard;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of eigenvalues of `t` strictly less than `x`.
pub fn sturm_count(t: &TridiagBlock, x: f64) -> usize {
    count_below(t, x, pivot_guard(t))
}

/// Bracket that contains every eigenvalue with room to spare: the Gershgorin
/// hull widened by a few rounding units.
pub fn bracket(t: &TridiagBlock) -> (f64, f64) {
    let (lo, hi) = t.gershgorin_hull();
    let pad = 4.0 * f64::EPSILON * (t.len() as f64 + 1.0) * lo.abs().max(hi.abs()).max(1.0);
    (lo - pad, hi + pad)
}

/// All eigenvalues of `t`; each is bisected until its bracket is narrower than
/// `tol·max(1, |midpoint|)`.
pub fn eigenvalues(t: &TridiagBlock, tol: f64) -> Result<EigenList> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let n = t.len();
    if n == 0 {
        return Ok(EigenList { values: vec![] });
    }
    let guard = pivot_guard(t);
    let (lo0, hi0) = bracket(t);
    let mut values = Vec::with_capacity(n);
    let mut lo = lo0;
    for index in 0..n {
        // Eigenvalues come out ascending, so the previous one is a valid
        // lower end for the next bracket.
        let mut a = lo;
        let mut b = hi0;
        let mut steps = 0;
        loop {
            let mid = 0.5 * (a + b);
            if b - a < tol * mid.abs().max(1.0) {
                break;
            }
            if mid <= a || mid >= b {
                // Interval cannot shrink any further in floating point.
                break;
            }
            if steps == MAX_BISECTION_STEPS {
                return Err(Error::NonConvergence {
                    index,
                    iterations: steps,
                });
            }
            if count_below(t, mid, guard) > index {
                b = mid;
            } else {
                a = mid;
            }
            steps += 1;
        }
        values.push(0.5 * (a + b));
        lo = a;
    }
    Ok(EigenList { values })
}

/// Eigenvalues of `π_k(−C_t)`.
///
/// Berger triples with `b = c` have a diagonal Casimir matrix; the closed-form
/// entries `ν_{k,j}(a, b)` are returned directly without touching the solver.
pub fn eigen_block(k: usize, t: &MetricTriple, tol: f64) -> Result<EigenList> {
    if k == 0 {
        return Ok(EigenList { values: vec![0.0] });
    }
    if uses_closed_form(t) {
        let values = (0..=k)
            .map(|j| berger_eigenvalue(k, j, t.a(), t.b()))
            .collect();
        return Ok(EigenList::from_unsorted(values));
    }
    let block = IrrepBlock::build(k, t)?;
    let even = eigenvalues(&block.even_block, tol)?;
    let odd = eigenvalues(&block.odd_block, tol)?;
    Ok(even.merge(odd))
}

/// Whether `eigen_block` takes the closed-form path for this triple.
pub fn uses_closed_form(t: &MetricTriple) -> bool {
    t.b() == t.c()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::normalize_triple;

    fn block(diag: &[f64], off: &[f64]) -> TridiagBlock {
        TridiagBlock::new(diag.to_vec(), off.to_vec()).unwrap()
    }

    #[test]
    fn sturm_count_diagonal() {
        assert_eq!(
            sturm_count(&TridiagBlock::diagonal(vec![1.0, 2.0, 3.0]), 2.5),
            2
        );
        assert_eq!(sturm_count(&TridiagBlock::diagonal(vec![5.0]), 5.0), 0);
        assert_eq!(sturm_count(&TridiagBlock::diagonal(vec![3.0, 3.0]), 3.0), 0);
    }

    #[test]
    fn sturm_count_two_by_two() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let t = block(&[2.0, 2.0], &[1.0]);
        assert_eq!(sturm_count(&t, 2.0), 1);
        assert_eq!(sturm_count(&t, 0.999), 0);
        assert_eq!(sturm_count(&t, 3.001), 2);
    }

    #[test]
    fn sturm_count_reaches_n_past_hull() {
        let t = block(&[4.0, -1.0, 2.5, 0.0], &[1.0, -2.0, 0.5]);
        let (lo, hi) = bracket(&t);
        assert_eq!(sturm_count(&t, lo), 0);
        assert_eq!(sturm_count(&t, hi), 4);
    }

    #[test]
    fn eigenvalues_doubled_round_irrep() {
        let ev = eigenvalues(&TridiagBlock::diagonal(vec![3.0, 3.0]), 1e-12).unwrap();
        for v in ev.values() {
            assert!((v - 3.0).abs() < 1e-11);
        }
    }

    #[test]
    fn eigenvalues_k2_even_block() {
        let t = normalize_triple(2.0, 1.3, 0.6).unwrap();
        let (a2, b2, c2) = t.squares();
        let b = IrrepBlock::build(2, &t).unwrap();
        let even = eigenvalues(&b.even_block, 1e-13).unwrap();
        let expected = [4.0 * (a2 + c2), 4.0 * (a2 + b2)];
        for (v, e) in even.values().iter().zip(expected) {
            assert!((v - e).abs() < 1e-11 * e, "{v} vs {e}");
        }
        let odd = eigenvalues(&b.odd_block, 1e-13).unwrap();
        assert!((odd.values()[0] - 4.0 * (b2 + c2)).abs() < 1e-11);
    }

    #[test]
    fn eigenvalues_rejects_bad_tolerance() {
        let t = TridiagBlock::diagonal(vec![1.0]);
        assert!(eigenvalues(&t, 0.0).is_err());
        assert!(eigenvalues(&t, f64::NAN).is_err());
    }

    #[test]
    fn eigen_block_low_irreps() {
        let t = normalize_triple(3.0, 1.0, 1.0).unwrap();
        assert_eq!(
            eigen_block(2, &t, 1e-12).unwrap().values(),
            &[8.0, 40.0, 40.0]
        );
        assert_eq!(eigen_block(0, &t, 1e-12).unwrap().values(), &[0.0]);
        let g = normalize_triple(3.0, 2.0, 1.0).unwrap();
        let v = eigen_block(1, &g, 1e-12).unwrap();
        for x in v.values() {
            assert!((x - 14.0).abs() < 1e-10);
        }
    }

    #[test]
    fn eigen_block_berger_is_closed_form() {
        let t = normalize_triple(2.7, 1.1, 1.1).unwrap();
        assert!(uses_closed_form(&t));
        let k = 7;
        let v = eigen_block(k, &t, 1e-12).unwrap();
        let expected =
            EigenList::from_unsorted((0..=k).map(|j| berger_eigenvalue(k, j, 2.7, 1.1)).collect());
        assert_eq!(v, expected);
    }
}
