//! Scalar curvature, volume, diameters and the `λ₁·diam²` estimates.
//!
//! Diameters are known exactly for Berger metrics. For generic triples the
//! diameter is only bracketed, using that `g_(a,b,c)` grows when a parameter
//! shrinks: `g_(a,b,b) ≤ g_(a,b,c) ≤ g_(b,b,c)` for `a ≥ b ≥ c`.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{classify, GroupKind, MetricClass, MetricTriple};
use crate::spectrum::lambda1_closed;

/// Relative rounding slack allowed when a bound is attained.
pub const BOUND_REL_SLACK: f64 = 1e-12;

const PI2: f64 = PI * PI;

/// `4(a²+b²+c²) − 2(b²c²/a² + a²c²/b² + a²b²/c²)`, the same on `SU(2)` and
/// `SO(3)`.
pub fn scalar_curvature(t: &MetricTriple) -> f64 {
    let (a2, b2, c2) = t.squares();
    4.0 * (a2 + b2 + c2) - 2.0 * (b2 * c2 / a2 + a2 * c2 / b2 + a2 * b2 / c2)
}

/// Riemannian volume, normalised so that `g_(1,1,1)` is the unit sphere.
pub fn volume(t: &MetricTriple, g: GroupKind) -> f64 {
    let v = t.volume_param();
    match g {
        GroupKind::Su2 => 2.0 * PI2 / v,
        GroupKind::So3 => PI2 / v,
    }
}

/// Diameter, exact or bracketed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiamBounds {
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<f64>,
}

impl DiamBounds {
    pub fn exact(d: f64) -> Self {
        DiamBounds {
            lower: d,
            upper: d,
            exact: Some(d),
        }
    }

    pub fn bracket(lower: f64, upper: f64) -> Self {
        DiamBounds {
            lower,
            upper,
            exact: None,
        }
    }

    /// `[lower², upper²]`.
    pub fn squared(&self) -> Interval {
        Interval {
            lo: self.lower * self.lower,
            hi: self.upper * self.upper,
        }
    }
}

/// Closed real interval; `lo == hi` for a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn scale(&self, s: f64) -> Interval {
        Interval {
            lo: self.lo * s,
            hi: self.hi * s,
        }
    }
}

/// Diameter of the Berger metric `g_(a,b,b)` on `SU(2)`, `a ≥ b`.
fn su2_berger_bc(a: f64, b: f64) -> f64 {
    if a == b {
        PI / b
    } else if 2.0 * b * b >= a * a {
        PI / a
    } else {
        PI / (2.0 * b * (1.0 - b * b / (a * a)).sqrt())
    }
}

/// Diameter of `g_(b,b,c)` on `SO(3)`, `b ≥ c`.
fn so3_berger_ab(b: f64, c: f64) -> f64 {
    if 2.0 * c * c >= b * b {
        PI / (2.0 * c)
    } else {
        (PI / b) * (1.0 + 1.0 / (4.0 * (c * c / (b * b) - 1.0))).sqrt()
    }
}

/// Exact diameter for Berger triples, `None` for generic ones.
pub fn berger_diameter(t: &MetricTriple, g: GroupKind) -> Option<f64> {
    let (a, b, c) = (t.a(), t.b(), t.c());
    match (classify(t), g) {
        (MetricClass::Generic, _) => None,
        (MetricClass::Round | MetricClass::BergerAB, GroupKind::Su2) => Some(PI / b),
        (MetricClass::BergerBC, GroupKind::Su2) => Some(su2_berger_bc(a, b)),
        (MetricClass::BergerBC, GroupKind::So3) => Some(PI / (2.0 * b)),
        (MetricClass::Round | MetricClass::BergerAB, GroupKind::So3) => Some(so3_berger_ab(b, c)),
    }
}

pub fn diameter(t: &MetricTriple, g: GroupKind) -> DiamBounds {
    if let Some(d) = berger_diameter(t, g) {
        return DiamBounds::exact(d);
    }
    let (a, b, c) = (t.a(), t.b(), t.c());
    match g {
        GroupKind::Su2 => DiamBounds::bracket(su2_berger_bc(a, b), PI / b),
        GroupKind::So3 => DiamBounds::bracket(PI / (2.0 * b), so3_berger_ab(b, c)),
    }
}

/// Upper end of the `λ₁·diam²` range, in units of `π²`.
pub fn lambda1_diam2_cap(g: GroupKind) -> f64 {
    match g {
        GroupKind::Su2 => 8.0,
        GroupKind::So3 => 9.0 - 4.0 * SQRT_2,
    }
}

fn check_range(iv: Interval, lower: f64, upper: f64) -> Result<Interval> {
    let slack = BOUND_REL_SLACK * upper;
    if iv.lo <= lower || iv.hi > upper + slack {
        return Err(Error::BoundViolation {
            lower: iv.lo,
            upper: iv.hi,
            bound_lower: lower,
            bound_upper: upper,
        });
    }
    Ok(iv)
}

/// `λ₁ · [diam_lower², diam_upper²]`, checked against
/// `π² < λ₁·diam² ≤ 8π²` (`SU(2)`) or `≤ (9−4√2)π²` (`SO(3)`).
pub fn lambda1_diam2(t: &MetricTriple, g: GroupKind) -> Result<Interval> {
    let l1 = lambda1_closed(t, g).value;
    let iv = diameter(t, g).squared().scale(l1);
    check_range(iv, PI2, lambda1_diam2_cap(g) * PI2)
}

/// One Berger family on `SU(2)`, parametrised by a single ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BergerFamily {
    /// `g_(1,1,r)`, `0 < r ≤ 1`.
    EqualAB,
    /// `g_(s,1,1)`, `1 ≤ s² ≤ 2`.
    EqualBCNear,
    /// `g_(s,1,1)`, `2 ≤ s² ≤ 6`.
    EqualBCMid,
    /// `g_(s,1,1)`, `s² ≥ 6`.
    EqualBCFar,
}

impl BergerFamily {
    pub const ALL: [BergerFamily; 4] = [
        BergerFamily::EqualAB,
        BergerFamily::EqualBCNear,
        BergerFamily::EqualBCMid,
        BergerFamily::EqualBCFar,
    ];

    /// Parameter range `[lo, hi]` and whether each end is attained.
    fn range(self) -> (f64, f64, bool, bool) {
        match self {
            BergerFamily::EqualAB => (1e-6, 1.0, false, true),
            BergerFamily::EqualBCNear => (1.0, SQRT_2, true, true),
            BergerFamily::EqualBCMid => (SQRT_2, 6f64.sqrt(), true, true),
            BergerFamily::EqualBCFar => (6f64.sqrt(), 1e6, true, false),
        }
    }

    fn triple(self, p: f64) -> MetricTriple {
        let r = match self {
            BergerFamily::EqualAB => MetricTriple::new(1.0, 1.0, p),
            _ => MetricTriple::new(p, 1.0, 1.0),
        };
        r.expect("family parameters are positive")
    }

    /// `λ₁·diam²` at parameter `p`.
    pub fn value(self, p: f64) -> f64 {
        let t = self.triple(p);
        lambda1_closed(&t, GroupKind::Su2).value
            * berger_diameter(&t, GroupKind::Su2).unwrap().powi(2)
    }
}

/// Extremes of `λ₁·diam²` over one Berger family. `inf_attained` is false
/// when the infimum is only approached at an open end of the range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyExtrema {
    pub family: BergerFamily,
    pub inf: f64,
    pub argmin: f64,
    pub inf_attained: bool,
    pub sup: f64,
    pub argmax: f64,
    pub sup_attained: bool,
}

/// Extremes of `λ₁·diam²` over all Berger metrics on `SU(2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BergerExtrema {
    pub families: Vec<FamilyExtrema>,
    pub min: f64,
    pub argmin: MetricTriple,
    pub max: f64,
    pub argmax: MetricTriple,
}

const SWEEP_POINTS: usize = 2000;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Location of the minimum of `f` over `[lo, hi]`: grid sweep (geometric on
/// wide ranges), then golden-section refinement around the best grid point.
fn sweep_min(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let geometric = hi / lo > 100.0;
    let node = |i: usize| {
        let s = i as f64 / SWEEP_POINTS as f64;
        if geometric {
            lo * (hi / lo).powf(s)
        } else {
            lo + (hi - lo) * s
        }
    };
    let best = (0..=SWEEP_POINTS)
        .min_by(|&i, &j| f(node(i)).total_cmp(&f(node(j))))
        .unwrap();
    if best == 0 || best == SWEEP_POINTS {
        return node(best);
    }
    let x = golden_min(f, node(best - 1), node(best + 1));
    if f(x) < f(node(best)) {
        x
    } else {
        node(best)
    }
}

fn family_extrema(family: BergerFamily) -> FamilyExtrema {
    let (lo, hi, lo_closed, hi_closed) = family.range();
    let f = |p: f64| family.value(p);
    let argmin = sweep_min(&f, lo, hi);
    let argmax = sweep_min(&|p: f64| -f(p), lo, hi);
    let attained = |p: f64| (p != lo || lo_closed) && (p != hi || hi_closed);
    FamilyExtrema {
        family,
        inf: f(argmin),
        argmin,
        inf_attained: attained(argmin),
        sup: f(argmax),
        argmax,
        sup_attained: attained(argmax),
    }
}

/// Sweeps the Berger families and reports the extremes of `λ₁·diam²`.
pub fn berger_lambda1_diam2_extrema() -> BergerExtrema {
    let families: Vec<FamilyExtrema> = BergerFamily::ALL
        .iter()
        .map(|&f| family_extrema(f))
        .collect();
    let lo = families
        .iter()
        .min_by(|x, y| x.inf.total_cmp(&y.inf))
        .unwrap();
    let hi = families
        .iter()
        .max_by(|x, y| x.sup.total_cmp(&y.sup))
        .unwrap();
    BergerExtrema {
        min: lo.inf,
        argmin: lo.family.triple(lo.argmin),
        max: hi.sup,
        argmax: hi.family.triple(hi.argmax),
        families,
    }
}

/// Riemannian product of left-invariant factors on `SU(2)` and `SO(3)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ProductSpec {
    pub su2_factors: Vec<MetricTriple>,
    pub so3_factors: Vec<MetricTriple>,
}

impl ProductSpec {
    fn factors(&self) -> impl Iterator<Item = (&MetricTriple, GroupKind)> {
        self.su2_factors
            .iter()
            .map(|t| (t, GroupKind::Su2))
            .chain(self.so3_factors.iter().map(|t| (t, GroupKind::So3)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductEstimate {
    pub lambda1: f64,
    pub diam2: Interval,
    pub product: Interval,
    /// `8m + 6n`: the product lies in `(π², cap·π²]`.
    pub cap: f64,
}

/// `λ₁` of a product is the least factor `λ₁`; `diam²` is the sum of the
/// factor `diam²`.
pub fn product_estimate(p: &ProductSpec) -> Result<ProductEstimate> {
    if p.su2_factors.is_empty() && p.so3_factors.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let mut lambda1 = f64::INFINITY;
    let mut diam2 = Interval::point(0.0);
    for (t, g) in p.factors() {
        lambda1 = lambda1.min(lambda1_closed(t, g).value);
        let d = diameter(t, g).squared();
        diam2.lo += d.lo;
        diam2.hi += d.hi;
    }
    let cap = 8.0 * p.su2_factors.len() as f64 + 6.0 * p.so3_factors.len() as f64;
    let product = check_range(diam2.scale(lambda1), PI2, cap * PI2)?;
    Ok(ProductEstimate {
        lambda1,
        diam2,
        product,
        cap,
    })
}

/// `λ₁ − Scal/2`.
pub fn yamabe_gap(t: &MetricTriple, g: GroupKind) -> f64 {
    lambda1_closed(t, g).value - scalar_curvature(t) / 2.0
}
