use crate::{Error, Result};

/// A maximal monotone graph on ℝ with a closed-form resolvent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarGraph {
    /// `∂|·|`: `−1` for `x < 0`, `[−1, 1]` at `0`, `1` for `x > 0`.
    AbsSubdifferential,
    /// Relay with levels `lower ≤ upper`: the subdifferential of
    /// `x ↦ lower·x` (x < 0), `upper·x` (x > 0).
    Relay { lower: f64, upper: f64 },
    /// Inverse of the unit-slope saturation `clamp(·, −limit, limit)`:
    /// `{x}` inside, vertical half-lines at `±limit`.
    SaturationInverse { limit: f64 },
    /// Normal cone of `[lower, upper]`.
    IndicatorInterval { lower: f64, upper: f64 },
    /// `x ↦ slope·x` with `slope ≥ 0`.
    LinearSlope { slope: f64 },
}

impl ScalarGraph {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ScalarGraph::AbsSubdifferential => true,
            ScalarGraph::Relay { lower, upper } => lower.is_finite() && upper.is_finite() && lower <= upper,
            ScalarGraph::SaturationInverse { limit } => limit.is_finite() && limit > 0.0,
            ScalarGraph::IndicatorInterval { lower, upper } => !lower.is_nan() && !upper.is_nan() && lower <= upper,
            ScalarGraph::LinearSlope { slope } => slope.is_finite() && slope >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid scalar graph {self:?}")))
        }
    }

    /// `(lower, upper)` of the closed domain.
    pub fn domain(&self) -> (f64, f64) {
        match *self {
            ScalarGraph::SaturationInverse { limit } => (-limit, limit),
            ScalarGraph::IndicatorInterval { lower, upper } => (lower, upper),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// The value set `F(x)` as a closed interval, `None` outside the domain.
    pub fn values(&self, x: f64) -> Option<(f64, f64)> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        Some(match *self {
            ScalarGraph::AbsSubdifferential => relay_values(-1.0, 1.0, x),
            ScalarGraph::Relay { lower, upper } => relay_values(lower, upper, x),
            ScalarGraph::SaturationInverse { limit } => {
                if x >= limit {
                    (limit, f64::INFINITY)
                } else if x <= -limit {
                    (f64::NEG_INFINITY, -limit)
                } else {
                    (x, x)
                }
            }
            ScalarGraph::IndicatorInterval { lower, upper } => {
                let l = if x <= lower { f64::NEG_INFINITY } else { 0.0 };
                let u = if x >= upper { f64::INFINITY } else { 0.0 };
                (l, u)
            }
            ScalarGraph::LinearSlope { slope } => (slope * x, slope * x),
        })
    }

    /// `(1 + λF)⁻¹(x)`.
    pub fn resolvent(&self, lambda: f64, x: f64) -> f64 {
        match *self {
            ScalarGraph::AbsSubdifferential => relay_resolvent(-1.0, 1.0, lambda, x),
            ScalarGraph::Relay { lower, upper } => relay_resolvent(lower, upper, lambda, x),
            ScalarGraph::SaturationInverse { limit } => (x / (1.0 + lambda)).clamp(-limit, limit),
            ScalarGraph::IndicatorInterval { lower, upper } => x.max(lower).min(upper),
            ScalarGraph::LinearSlope { slope } => x / (1.0 + lambda * slope),
        }
    }

    /// Least-norm element of `F(x)`.
    pub fn minimal_section(&self, x: f64) -> Option<f64> {
        self.values(x).map(|(lo, hi)| 0.0_f64.max(lo).min(hi))
    }

    /// Distance from `y` to `F(x)`, or the resolvent-consistency defect
    /// `|J₁(x + y) − x|` when `x` lies outside the domain.
    pub fn residual(&self, x: f64, y: f64) -> f64 {
        match self.values(x) {
            Some((lo, hi)) => (lo - y).max(y - hi).max(0.0),
            None => (self.resolvent(1.0, x + y) - x).abs(),
        }
    }
}

fn relay_values(lower: f64, upper: f64, x: f64) -> (f64, f64) {
    if x > 0.0 {
        (upper, upper)
    } else if x < 0.0 {
        (lower, lower)
    } else {
        (lower, upper)
    }
}

fn relay_resolvent(lower: f64, upper: f64, lambda: f64, x: f64) -> f64 {
    if x > lambda * upper {
        x - lambda * upper
    } else if x < lambda * lower {
        x - lambda * lower
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_threshold() {
        let g = ScalarGraph::AbsSubdifferential;
        assert_eq!(g.resolvent(1.0, 3.0), 2.0);
        assert_eq!(g.resolvent(1.0, -0.5), 0.0);
        assert_eq!(g.resolvent(0.25, 0.5), 0.25);
    }

    #[test]
    fn residual_examples() {
        let g = ScalarGraph::AbsSubdifferential;
        assert_eq!(g.residual(0.5, 1.0), 0.0);
        assert_eq!(g.residual(0.0, 0.5), 0.0);
        assert_eq!(g.residual(1.0, 2.0), 1.0);
    }

    #[test]
    fn saturation_inverse_graph() {
        let g = ScalarGraph::SaturationInverse { limit: 1.0 };
        assert_eq!(g.resolvent(1.0, 1.0), 0.5);
        assert_eq!(g.resolvent(1.0, 5.0), 1.0);
        assert_eq!(g.values(1.0), Some((1.0, f64::INFINITY)));
        assert_eq!(g.values(2.0), None);
        assert_eq!(g.minimal_section(-1.0), Some(-1.0));
        // 5 − 1 = 4 ∈ F(1)
        assert_eq!(g.residual(1.0, 4.0), 0.0);
    }

    #[test]
    fn indicator_and_slope() {
        let g = ScalarGraph::IndicatorInterval { lower: 0.0, upper: 1.0 };
        assert_eq!(g.resolvent(5.0, 2.0), 1.0);
        assert_eq!(g.minimal_section(0.5), Some(0.0));
        assert_eq!(g.values(0.0), Some((f64::NEG_INFINITY, 0.0)));
        let s = ScalarGraph::LinearSlope { slope: 1.0 };
        assert!((s.resolvent(0.1, 1.0) - 1.0 / 1.1).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(ScalarGraph::Relay { lower: 1.0, upper: 0.0 }.validate().is_err());
        assert!(ScalarGraph::LinearSlope { slope: -1.0 }.validate().is_err());
        assert!(ScalarGraph::SaturationInverse { limit: 0.0 }.validate().is_err());
        assert!(ScalarGraph::IndicatorInterval { lower: 0.0, upper: 0.0 }.validate().is_ok());
    }
}
