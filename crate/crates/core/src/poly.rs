//! Real roots of low-degree real polynomials.
//!
//! Roots are isolated recursively: the critical points of `p` (the real roots
//! of `p'`) cut the line into intervals on which `p` is monotone, so each
//! interval with a sign change holds exactly one simple root, found by
//! safeguarded Newton iteration. A critical point where `p` vanishes to
//! rounding accuracy is a multiple root; it is located as a simple root of a
//! derivative, which keeps repeated roots accurate to working precision.

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// A real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: usize,
}

/// Values of `p` below `ZERO_SLACK` times the evaluation error bound count as
/// zero.
const ZERO_SLACK: f64 = 64.0;

impl Polynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ |c_i| |x|^i`, which bounds the rounding error of [`Self::eval`].
    fn magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    fn is_zero_at(&self, x: f64) -> bool {
        self.eval(x).abs() <= ZERO_SLACK * f64::EPSILON * self.magnitude(x)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Cauchy bound: every root satisfies `|x| ≤ 1 + max |c_i / c_n|`.
    pub fn root_bound(&self) -> f64 {
        let lead = *self.coeffs.last().unwrap();
        1.0 + self.coeffs[..self.degree()]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max)
    }

    /// All real roots, ascending, with multiplicities.
    pub fn real_roots(&self) -> Vec<Root> {
        let n = self.degree();
        if n == 0 {
            return vec![];
        }
        if n == 1 {
            return vec![Root {
                value: -self.coeffs[0] / self.coeffs[1],
                multiplicity: 1,
            }];
        }
        let bound = self.root_bound();
        let crit = self.derivative().real_roots();
        let mut roots = Vec::new();
        let mut knots: Vec<(f64, usize)> = vec![(-bound, 0)];
        for c in &crit {
            if c.value > -bound && c.value < bound {
                knots.push((c.value, c.multiplicity));
            }
        }
        knots.push((bound, 0));

        let mut prev_is_root = false;
        for w in knots.windows(2) {
            let (x0, _) = w[0];
            let (x1, m1) = w[1];
            let right_is_root = m1 > 0 && self.is_zero_at(x1);
            if !prev_is_root && !right_is_root {
                if let Some(r) = self.bracketed_root(x0, x1) {
                    roots.push(Root {
                        value: r,
                        multiplicity: 1,
                    });
                }
            }
            if right_is_root {
                roots.push(Root {
                    value: x1,
                    multiplicity: m1 + 1,
                });
            }
            prev_is_root = right_is_root;
        }
        roots
    }

    /// The simple root in `[lo, hi]` if `p` changes sign there.
    fn bracketed_root(&self, mut lo: f64, mut hi: f64) -> Option<f64> {
        let mut flo = self.eval(lo);
        let fhi = self.eval(hi);
        if flo == 0.0 {
            return Some(lo);
        }
        if fhi == 0.0 {
            return Some(hi);
        }
        if flo.signum() == fhi.signum() {
            return None;
        }
        let dp = self.derivative();
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let fx = self.eval(x);
            if fx == 0.0 {
                return Some(x);
            }
            if fx.signum() == flo.signum() {
                lo = x;
                flo = fx;
            } else {
                hi = x;
            }
            let d = dp.eval(x);
            let newton = x - fx / d;
            let next = if d != 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if next == x || hi - lo <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                return Some(next);
            }
            x = next;
        }
        Some(x)
    }
}
