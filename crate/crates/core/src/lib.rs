//! Laplace–Beltrami spectra of homogeneous metrics on the 3-sphere and on
//! real projective 3-space.
//!
//! Every homogeneous metric on `S³ ≅ SU(2)` or `P³(ℝ) ≅ SO(3)` is isometric to
//! a left-invariant metric `g_(a,b,c)` for which `{aX₁, bX₂, cX₃}` is
//! orthonormal. The spectrum of the Laplacian decomposes over the irreducible
//! representations `π_k` of `SU(2)` (even `k` only for `SO(3)`); each
//! representation contributes the eigenvalues of a `(k+1)×(k+1)` Casimir
//! matrix, each repeated `k+1` times.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric`]: parameter triples, group tags and spectrum containers.
//! - [`casimir`]: Casimir matrices, generator oracle, symmetrization,
//!   tridiagonal split and Gershgorin intervals.
//! - [`eigensolve`]: Sturm-sequence bisection for symmetric tridiagonal blocks.
//! - [`spectrum`]: truncated spectra, closed-form fundamental tones and Berger
//!   spectra.
//! - [`geometry`]: scalar curvature, volume, diameters and `λ₁·diam²` bounds.
//! - [`rigidity`]: spectral invariants and recovery of the metric from them.
//! - [`verify`]: the acceptance suite, shared by the CLI and the test target.

// `!(x > 0.0)` is used on purpose so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod casimir;
pub mod eigensolve;
mod error;
pub mod geometry;
pub mod metric;
pub mod poly;
pub mod rigidity;
pub mod spectrum;
pub mod verify;

pub use casimir::{GershgorinIntervals, IrrepBlock, TridiagBlock};
pub use eigensolve::EigenList;
pub use error::{Error, Result};
pub use geometry::{DiamBounds, Interval, ProductSpec};
pub use metric::{
    classify, normalize_triple, EigenPair, GroupKind, MetricClass, MetricTriple, Settings,
    SpectralInvariants, SpectrumTable,
};
pub use rigidity::IsospectralVerdict;
pub use spectrum::{Lambda1Regime, Lambda1Result};
