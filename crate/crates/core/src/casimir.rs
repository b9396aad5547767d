//! Matrices of `π_k(−C_(a,b,c))` in the monomial basis `P_l = z^l w^{k−l}`.
//!
//! The operator only couples `P_l` with `P_{l±2}`, so after a diagonal
//! similarity it splits into two symmetric tridiagonal blocks, one on the
//! even-indexed monomials and one on the odd-indexed ones.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::MetricTriple;

/// Relative threshold for the symmetry and sparsity-pattern guards.
const STRUCTURE_REL_TOL: f64 = 1e-12;

/// Matrices of `π_k(X₁)`, `π_k(X₂)`, `π_k(X₃)` in the basis `P₀, …, P_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrices {
    pub x1: DMatrix<Complex64>,
    pub x2: DMatrix<Complex64>,
    pub x3: DMatrix<Complex64>,
}

/// Action of the first-order generators on homogeneous polynomials of degree
/// `k`: `X₁·P_l = (k−2l)i P_l`, `X₂·P_l = −l P_{l−1} + (k−l) P_{l+1}` and
/// `X₃·P_l = −li P_{l−1} − (k−l)i P_{l+1}`. Column `l` holds the image of `P_l`.
pub fn generator_matrices(k: usize) -> GeneratorMatrices {
    let n = k + 1;
    let i = Complex64::i();
    let mut x1 = DMatrix::zeros(n, n);
    let mut x2 = DMatrix::zeros(n, n);
    let mut x3 = DMatrix::zeros(n, n);
    for l in 0..n {
        let lf = l as f64;
        let kl = (k - l) as f64;
        x1[(l, l)] = i * (k as f64 - 2.0 * lf);
        if l > 0 {
            x2[(l - 1, l)] = Complex64::from(-lf);
            x3[(l - 1, l)] = -i * lf;
        }
        if l < k {
            x2[(l + 1, l)] = Complex64::from(kl);
            x3[(l + 1, l)] = -i * kl;
        }
    }
    GeneratorMatrices { x1, x2, x3 }
}

/// Dense matrix of `π_k(−C_(a,b,c))` in the basis `P₀, …, P_k`.
///
/// With 1-based column `j` (image of `P_{j−1}`):
///
/// - `[j, j] = (k−2(j−1))² a² + ((2j−1)k − 2(j−1)²)(b² + c²)`
/// - `[j−2, j] = −(j−2)(j−1)(b² − c²)`
/// - `[j+2, j] = −(k−j)(k+1−j)(b² − c²)`
///
/// The off-diagonal sign is the one produced by the generator action (see
/// [`casimir_matrix_oracle`]); it does not affect the eigenvalues.
pub fn casimir_matrix(k: usize, t: &MetricTriple) -> DMatrix<f64> {
    let (a2, b2, c2) = t.squares();
    let n = k + 1;
    let kf = k as f64;
    let mut m = DMatrix::zeros(n, n);
    for l in 0..n {
        let lf = l as f64;
        let w = kf - 2.0 * lf;
        m[(l, l)] = w * w * a2 + ((2.0 * lf + 1.0) * kf - 2.0 * lf * lf) * (b2 + c2);
        if l >= 2 {
            m[(l - 2, l)] = -(lf * (lf - 1.0)) * (b2 - c2);
        }
        if l + 2 <= k {
            let r = (k - l) as f64;
            m[(l + 2, l)] = -(r * (r - 1.0)) * (b2 - c2);
        }
    }
    m
}

/// Independent route to the Casimir matrix: `−(a²M₁² + b²M₂² + c²M₃²)` from
/// [`generator_matrices`], in complex arithmetic.
pub fn casimir_matrix_oracle(k: usize, t: &MetricTriple) -> Result<DMatrix<f64>> {
    let (a2, b2, c2) = t.squares();
    let g = generator_matrices(k);
    let x1sq = &g.x1 * &g.x1;
    let x2sq = &g.x2 * &g.x2;
    let x3sq = &g.x3 * &g.x3;
    let full =
        -(x1sq * Complex64::from(a2) + x2sq * Complex64::from(b2) + x3sq * Complex64::from(c2));
    let n = k + 1;
    let mut out = DMatrix::zeros(n, n);
    for col in 0..n {
        for row in 0..n {
            let z = full[(row, col)];
            if z.im != 0.0 {
                return Err(Error::ImaginaryResidue {
                    k,
                    row,
                    col,
                    residue: z.im,
                });
            }
            out[(row, col)] = z.re;
        }
    }
    Ok(out)
}

/// Conjugates by `D = diag(sqrt(C(k, l)))`, returning `D⁻¹·M·D`, which is
/// symmetric for matrices with the Casimir sparsity pattern.
///
/// The binomial weights enter only through adjacent ratios
/// `d_l/d_{l−1} = sqrt((k−l+1)/l)`, so large `k` cannot overflow.
pub fn symmetrize(dense: &DMatrix<f64>, k: usize) -> Result<DMatrix<f64>> {
    let n = k + 1;
    if dense.nrows() != n || dense.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "expected a {n}x{n} matrix for k = {k}, got {}x{}",
            dense.nrows(),
            dense.ncols()
        )));
    }
    let ratio = |l: usize| ((k - l + 1) as f64 / l as f64).sqrt();
    let mut s = dense.clone();
    for l in 2..n {
        // d_l / d_{l-2}
        let w = ratio(l) * ratio(l - 1);
        s[(l - 2, l)] = dense[(l - 2, l)] * w;
        s[(l, l - 2)] = dense[(l, l - 2)] / w;
    }
    let scale = s.amax();
    let residue = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (s[(i, j)] - s[(j, i)]).abs())
        .fold(0.0, f64::max);
    if residue > STRUCTURE_REL_TOL * scale {
        return Err(Error::AsymmetryResidue { k, residue });
    }
    for l in 2..n {
        let avg = 0.5 * (s[(l - 2, l)] + s[(l, l - 2)]);
        s[(l - 2, l)] = avg;
        s[(l, l - 2)] = avg;
    }
    Ok(s)
}

/// Real symmetric tridiagonal matrix stored by its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagBlock {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagBlock {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if offdiag.len() + 1 != diag.len().max(1) || (diag.is_empty() && !offdiag.is_empty()) {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal block with {} diagonal entries needs {} off-diagonal entries, got {}",
                diag.len(),
                diag.len().saturating_sub(1),
                offdiag.len()
            )));
        }
        Ok(TridiagBlock { diag, offdiag })
    }

    pub fn diagonal(diag: Vec<f64>) -> Self {
        let offdiag = vec![0.0; diag.len().saturating_sub(1)];
        TridiagBlock { diag, offdiag }
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Gershgorin radius of row `i`.
    pub fn radius(&self, i: usize) -> f64 {
        let left = if i > 0 {
            self.offdiag[i - 1].abs()
        } else {
            0.0
        };
        let right = self.offdiag.get(i).map_or(0.0, |e| e.abs());
        left + right
    }

    /// `[min_i (T_ii − r_i), max_i (T_ii + r_i)]`.
    pub fn gershgorin_hull(&self) -> (f64, f64) {
        (0..self.len()).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = self.radius(i);
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.len())
            .map(|i| self.diag[i].abs() + self.radius(i))
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.offdiag[i];
                m[(i + 1, i)] = self.offdiag[i];
            }
        }
        m
    }
}

/// Splits a symmetric matrix supported on `|i−j| ∈ {0, 2}` into the
/// tridiagonal blocks on even indices `{P₀, P₂, …}` and odd indices
/// `{P₁, P₃, …}`.
pub fn tridiagonal_split(sym: &DMatrix<f64>, k: usize) -> Result<(TridiagBlock, TridiagBlock)> {
    let n = k + 1;
    if sym.nrows() != n || sym.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "expected a {n}x{n} matrix for k = {k}"
        )));
    }
    let threshold = STRUCTURE_REL_TOL * sym.amax();
    for i in 0..n {
        for j in 0..n {
            let d = i.abs_diff(j);
            if d != 0 && d != 2 && sym[(i, j)].abs() > threshold {
                return Err(Error::PatternViolation { k, row: i, col: j });
            }
        }
    }
    let block = |start: usize| {
        let idx: Vec<usize> = (start..n).step_by(2).collect();
        let diag = idx.iter().map(|&i| sym[(i, i)]).collect();
        let offdiag = idx.windows(2).map(|w| sym[(w[0], w[1])]).collect();
        TridiagBlock { diag, offdiag }
    };
    Ok((block(0), block(1)))
}

/// Casimir matrix of `π_k` together with its symmetrized tridiagonal split.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepBlock {
    pub k: usize,
    pub dense: DMatrix<f64>,
    pub even_block: TridiagBlock,
    pub odd_block: TridiagBlock,
}

impl IrrepBlock {
    pub fn build(k: usize, t: &MetricTriple) -> Result<Self> {
        let dense = casimir_matrix(k, t);
        let sym = symmetrize(&dense, k)?;
        let (even_block, odd_block) = tridiagonal_split(&sym, k)?;
        Ok(IrrepBlock {
            k,
            dense,
            even_block,
            odd_block,
        })
    }
}

/// Column-wise Gershgorin intervals `[α(k,j), β(k,j)]` of the unsymmetrized
/// Casimir matrix, with the closed-form lower envelopes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GershgorinIntervals {
    pub k: usize,
    /// `(α(k,j), β(k,j))` for `j = 1, …, k+1`.
    pub intervals: Vec<(f64, f64)>,
    /// `2kb² + k²c²`.
    pub lower_envelope: f64,
    /// `a² + (2k−1)b² + k²c²`, only for odd `k`.
    pub odd_envelope: Option<f64>,
}

impl GershgorinIntervals {
    pub fn alpha(&self, j: usize) -> f64 {
        self.intervals[j - 1].0
    }

    pub fn beta(&self, j: usize) -> f64 {
        self.intervals[j - 1].1
    }

    /// Whether `x` lies in the union of the intervals widened by `slack`.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.intervals
            .iter()
            .any(|&(lo, hi)| x >= lo - slack && x <= hi + slack)
    }

    /// The best eigenvalue lower bound available for this `k`.
    pub fn lower_bound(&self) -> f64 {
        self.odd_envelope
            .map_or(self.lower_envelope, |o| o.max(self.lower_envelope))
    }
}

/// Gershgorin data for canonical `t`, where `b² − c² ≥ 0` keeps every radius
/// nonnegative without absolute values.
pub fn gershgorin(k: usize, t: &MetricTriple) -> GershgorinIntervals {
    let (a2, b2, c2) = t.squares();
    let kf = k as f64;
    let intervals = (1..=k + 1)
        .map(|j| {
            let jf = j as f64;
            let w = kf - 2.0 * (jf - 1.0);
            let diag = w * w * a2 + ((2.0 * jf - 1.0) * kf - 2.0 * (jf - 1.0).powi(2)) * (b2 + c2);
            let above = if j >= 3 { (jf - 2.0) * (jf - 1.0) } else { 0.0 };
            let below = if j + 2 <= k + 1 {
                (kf - jf) * (kf + 1.0 - jf)
            } else {
                0.0
            };
            let radius = (above + below) * (b2 - c2);
            (diag - radius, diag + radius)
        })
        .collect();
    let lower_envelope = 2.0 * kf * b2 + kf * kf * c2;
    let odd_envelope = (k % 2 == 1).then_some(a2 + (2.0 * kf - 1.0) * b2 + kf * kf * c2);
    GershgorinIntervals {
        k,
        intervals,
        lower_envelope,
        odd_envelope,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::normalize_triple;

    fn triple(a: f64, b: f64, c: f64) -> MetricTriple {
        normalize_triple(a, b, c).unwrap()
    }

    #[test]
    fn generators_trivial_and_spin_half() {
        let g = generator_matrices(0);
        for m in [&g.x1, &g.x2, &g.x3] {
            assert_eq!(m.shape(), (1, 1));
            assert_eq!(m[(0, 0)], Complex64::from(0.0));
        }
        let g = generator_matrices(1);
        assert_eq!(g.x1[(0, 0)], Complex64::i());
        assert_eq!(g.x1[(1, 1)], -Complex64::i());
        assert_eq!(g.x1[(0, 1)], Complex64::from(0.0));
    }

    #[test]
    fn generator_x2_column_for_p1_at_k2() {
        // X₂·P₁ = −1·P₀ + 1·P₂ at k = 2.
        let g = generator_matrices(2);
        let col: Vec<Complex64> = g.x2.column(1).iter().copied().collect();
        assert_eq!(
            col,
            vec![
                Complex64::from(-1.0),
                Complex64::from(0.0),
                Complex64::from(1.0)
            ]
        );
    }

    #[test]
    fn generators_satisfy_commutation_relations() {
        // [X₁, X₂] = 2X₃ is inherited by any representation.
        for k in 0..6 {
            let g = generator_matrices(k);
            let comm = &g.x1 * &g.x2 - &g.x2 * &g.x1;
            let two_x3 = &g.x3 * Complex64::from(2.0);
            assert_eq!(comm, two_x3, "k = {k}");
        }
    }

    #[test]
    fn casimir_small_irreps() {
        let t = triple(3.0, 2.0, 1.0);
        assert_eq!(casimir_matrix(0, &t), DMatrix::from_element(1, 1, 0.0));
        let m1 = casimir_matrix(1, &t);
        assert_eq!(m1, DMatrix::from_diagonal_element(2, 2, 14.0));

        let (a2, b2, c2) = t.squares();
        let m2 = casimir_matrix(2, &t);
        let corner = -(2.0 * b2 - 2.0 * c2);
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[
                4.0 * a2 + 2.0 * b2 + 2.0 * c2,
                0.0,
                corner,
                0.0,
                4.0 * b2 + 4.0 * c2,
                0.0,
                corner,
                0.0,
                4.0 * a2 + 2.0 * b2 + 2.0 * c2,
            ],
        );
        assert_eq!(m2, expected);
    }

    #[test]
    fn oracle_matches_on_round_and_berger() {
        let round = triple(1.0, 1.0, 1.0);
        assert_eq!(
            casimir_matrix_oracle(1, &round).unwrap(),
            DMatrix::from_diagonal_element(2, 2, 3.0)
        );
        assert_eq!(
            casimir_matrix_oracle(2, &round).unwrap(),
            DMatrix::from_diagonal_element(3, 3, 8.0)
        );
        let t = triple(2.0, 1.0, 1.0);
        assert_eq!(casimir_matrix_oracle(3, &t).unwrap(), casimir_matrix(3, &t));
    }

    #[test]
    fn oracle_matches_integer_triples_exactly() {
        for (a, b, c) in [(3.0, 2.0, 1.0), (5.0, 3.0, 2.0), (4.0, 4.0, 1.0)] {
            let t = triple(a, b, c);
            for k in 0..=12 {
                assert_eq!(casimir_matrix_oracle(k, &t).unwrap(), casimir_matrix(k, &t));
            }
        }
    }

    #[test]
    fn symmetrize_low_k_is_identity() {
        let t = triple(2.0, 1.3, 0.4);
        for k in 0..=2 {
            let m = casimir_matrix(k, &t);
            assert_eq!(symmetrize(&m, k).unwrap(), m);
        }
    }

    #[test]
    fn symmetrize_k4_entry() {
        // (1,3) entry in 1-based indexing couples P₀ and P₂ (l = 2):
        // sqrt(M₁₃·M₃₁) with M₁₃ = −2(b²−c²), M₃₁ = −12(b²−c²).
        let t = triple(2.0, 1.0, 0.5);
        let (_, b2, c2) = t.squares();
        let m = casimir_matrix(4, &t);
        assert_eq!(m[(0, 2)], -2.0 * (b2 - c2));
        assert_eq!(m[(2, 0)], -12.0 * (b2 - c2));
        let s = symmetrize(&m, 4).unwrap();
        let expected = -(m[(0, 2)] * m[(2, 0)]).sqrt();
        assert!((s[(0, 2)] - expected).abs() < 1e-13);
        assert!((&s - s.transpose()).amax() == 0.0);
    }

    #[test]
    fn symmetrize_berger_is_identity() {
        let t = triple(3.0, 1.5, 1.5);
        for k in [3, 7, 10] {
            let m = casimir_matrix(k, &t);
            for i in 0..=k {
                for j in (0..=k).filter(|&j| j != i) {
                    assert_eq!(m[(i, j)], 0.0);
                }
            }
            assert_eq!(symmetrize(&m, k).unwrap(), m);
        }
    }

    #[test]
    fn symmetrize_rejects_asymmetric_input() {
        let t = triple(2.0, 1.0, 0.5);
        let mut m = casimir_matrix(4, &t);
        m[(0, 2)] *= 2.0;
        assert!(matches!(
            symmetrize(&m, 4),
            Err(Error::AsymmetryResidue { k: 4, .. })
        ));
    }

    #[test]
    fn split_sizes_and_values() {
        let t = triple(2.0, 1.0, 0.5);
        let (b2, c2) = (t.b() * t.b(), t.c() * t.c());
        let s2 = symmetrize(&casimir_matrix(2, &t), 2).unwrap();
        let (even, odd) = tridiagonal_split(&s2, 2).unwrap();
        assert_eq!((even.len(), odd.len()), (2, 1));
        assert_eq!(odd.diag(), &[4.0 * b2 + 4.0 * c2]);

        let s1 = symmetrize(&casimir_matrix(1, &t), 1).unwrap();
        let (even, odd) = tridiagonal_split(&s1, 1).unwrap();
        assert_eq!(even.diag(), &[5.25]);
        assert_eq!(odd.diag(), &[5.25]);

        let s5 = symmetrize(&casimir_matrix(5, &t), 5).unwrap();
        let (even, odd) = tridiagonal_split(&s5, 5).unwrap();
        assert_eq!((even.len(), odd.len()), (3, 3));
    }

    #[test]
    fn split_rejects_pattern_violation() {
        let mut m = DMatrix::from_diagonal_element(3, 3, 1.0);
        m[(0, 1)] = 0.5;
        m[(1, 0)] = 0.5;
        assert!(matches!(
            tridiagonal_split(&m, 2),
            Err(Error::PatternViolation { .. })
        ));
    }

    #[test]
    fn gershgorin_cases() {
        let t = triple(2.0, 1.3, 0.7);
        let g1 = gershgorin(1, &t);
        let s = 4.0 + 1.69 + 0.49;
        for j in 1..=2 {
            assert!((g1.alpha(j) - s).abs() < 1e-14);
            assert!((g1.beta(j) - s).abs() < 1e-14);
        }
        let g2 = gershgorin(2, &t);
        let (_, b2, c2) = t.squares();
        assert!((g2.alpha(2) - (4.0 * b2 + 4.0 * c2)).abs() < 1e-14);
        assert!((g2.alpha(2) - g2.lower_envelope).abs() < 1e-14);

        let berger = triple(2.0, 1.0, 1.0);
        let g3 = gershgorin(3, &berger);
        let m = casimir_matrix(3, &berger);
        for j in 1..=4 {
            assert_eq!(g3.alpha(j), g3.beta(j));
            assert_eq!(g3.alpha(j), m[(j - 1, j - 1)]);
        }
    }

    #[test]
    fn gershgorin_alpha_closed_form() {
        // α(k,j) = (k+2−2j)²(a²−b²) + 2kb² + k²c².
        let t = triple(2.5, 1.2, 0.3);
        let (a2, b2, c2) = t.squares();
        for k in 1..9usize {
            let g = gershgorin(k, &t);
            for j in 1..=k + 1 {
                let w = k as f64 + 2.0 - 2.0 * j as f64;
                let closed = w * w * (a2 - b2) + 2.0 * k as f64 * b2 + (k * k) as f64 * c2;
                assert!((g.alpha(j) - closed).abs() < 1e-12 * closed.abs().max(1.0));
            }
        }
    }
}
