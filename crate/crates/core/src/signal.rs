//! Piecewise-linear time signals used for inputs, moving sets and
//! the declared domain-motion function.

use crate::linalg::Vector;
use crate::{Error, Result};

/// A vector-valued signal on a time interval.
///
/// Evaluation outside the knot range holds the end values.
#[derive(Debug, Clone, PartialEq)]
pub enum Signal {
    Constant(Vector),
    PiecewiseLinear { times: Vec<f64>, values: Vec<Vector> },
}

impl Signal {
    pub fn constant(value: Vector) -> Self {
        Signal::Constant(value)
    }

    pub fn zero(dim: usize) -> Self {
        Signal::Constant(Vector::zeros(dim))
    }

    pub fn piecewise_linear(knots: Vec<(f64, Vector)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidArgument("signal needs at least one knot".into()));
        }
        let dim = knots[0].1.len();
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidArgument(format!(
                    "signal knots must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some((_, v)) = knots.iter().find(|(_, v)| v.len() != dim) {
            return Err(Error::dim("signal knot", dim, v.len()));
        }
        if knots.iter().any(|(t, v)| !t.is_finite() || v.iter().any(|x| !x.is_finite())) {
            return Err(Error::InvalidArgument("signal knots must be finite".into()));
        }
        let (times, values) = knots.into_iter().unzip();
        Ok(Signal::PiecewiseLinear { times, values })
    }

    /// Scalar piecewise-linear signal from `(t, value)` pairs.
    pub fn scalar(knots: &[(f64, f64)]) -> Result<Self> {
        Signal::piecewise_linear(
            knots
                .iter()
                .map(|&(t, v)| (t, Vector::from_element(1, v)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        match self {
            Signal::Constant(v) => v.len(),
            Signal::PiecewiseLinear { values, .. } => values[0].len(),
        }
    }

    pub fn eval(&self, t: f64) -> Vector {
        match self {
            Signal::Constant(v) => v.clone(),
            Signal::PiecewiseLinear { times, values } => {
                let k = times.partition_point(|&s| s <= t);
                if k == 0 {
                    values[0].clone()
                } else if k == times.len() {
                    values[k - 1].clone()
                } else {
                    let (t0, t1) = (times[k - 1], times[k]);
                    let w = (t - t0) / (t1 - t0);
                    &values[k - 1] * (1.0 - w) + &values[k] * w
                }
            }
        }
    }

    pub fn eval_scalar(&self, t: f64) -> f64 {
        self.eval(t)[0]
    }

    /// Knot times (empty for constants).
    pub fn knot_times(&self) -> &[f64] {
        match self {
            Signal::Constant(_) => &[],
            Signal::PiecewiseLinear { times, .. } => times,
        }
    }

    /// Exact `∫ₛᵗ |v̇(τ)| dτ` for `s ≤ t`.
    pub fn variation(&self, s: f64, t: f64) -> f64 {
        let Signal::PiecewiseLinear { times, .. } = self else {
            return 0.0;
        };
        let (s, t) = if s <= t { (s, t) } else { (t, s) };
        let mut pts = vec![s];
        pts.extend(times.iter().copied().filter(|&k| k > s && k < t));
        pts.push(t);
        pts.windows(2)
            .map(|w| (self.eval(w[1]) - self.eval(w[0])).norm())
            .sum()
    }

    /// Exact `∫ₛᵗ v(τ) dτ`.
    pub fn integral(&self, s: f64, t: f64) -> Vector {
        match self {
            Signal::Constant(v) => v * (t - s),
            Signal::PiecewiseLinear { times, .. } => {
                let (lo, hi, sign) = if s <= t { (s, t, 1.0) } else { (t, s, -1.0) };
                let mut pts = vec![lo];
                pts.extend(times.iter().copied().filter(|&k| k > lo && k < hi));
                pts.push(hi);
                let mut acc = Vector::zeros(self.dim());
                for w in pts.windows(2) {
                    acc += (self.eval(w[0]) + self.eval(w[1])) * (0.5 * (w[1] - w[0]));
                }
                acc * sign
            }
        }
    }

    /// True when every component is nondecreasing in time.
    pub fn is_nondecreasing(&self) -> bool {
        match self {
            Signal::Constant(_) => true,
            Signal::PiecewiseLinear { values, .. } => values
                .windows(2)
                .all(|w| w[1].iter().zip(w[0].iter()).all(|(b, a)| b >= a)),
        }
    }

    /// Knot list view, constants reported as a single knot at `t = 0`.
    pub fn knots(&self) -> Vec<(f64, Vector)> {
        match self {
            Signal::Constant(v) => vec![(0.0, v.clone())],
            Signal::PiecewiseLinear { times, values } => {
                times.iter().copied().zip(values.iter().cloned()).collect()
            }
        }
    }
}
