//! Scenario files (JSON) and the built-in scenario library.
//!
//! ```json
//! {
//!   "name": "sweeping_interval",
//!   "horizon": 2.0,
//!   "x0": [1.0],
//!   "operator": { "kind": "sweeping_box", "lower": [0.0], "upper": [2.0],
//!                 "shift": { "knots": [[0.0, [0.0]], [2.0, [2.0]]] } },
//!   "lipschitz_f": null, "input_u": null, "signal_v": null,
//!   "phi": [[0.0, 0.0], [2.0, 2.0]], "sigma": 0.0
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::geometry::{ConvexSet, MovingSet};
use crate::linalg::{self, Matrix, Vector};
use crate::operators::{AffineMap, OperatorSpec, ScalarGraph};
use crate::passivity::{build_lcs_operator, hypothesis_report, HypothesisReport, LcsSystem};
use crate::signal::Signal;
use crate::timestepper::{BoundCertificate, Partition};
use crate::{Error, Result};

/// Number of intervals of the grid on which the LCS gate is evaluated.
pub const GATE_INTERVALS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalDescription {
    Constant(Vec<f64>),
    /// `[[t, [values…]], …]`, strictly increasing in `t`.
    Knots(Vec<(f64, Vec<f64>)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphDescription {
    Abs,
    Relay { lower: f64, upper: f64 },
    SaturationInverse { limit: f64 },
    IndicatorInterval { lower: f64, upper: f64 },
    LinearSlope { slope: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OperatorDescription {
    SweepingBox {
        lower: Vec<f64>,
        upper: Vec<f64>,
        #[serde(default)]
        shift: Option<SignalDescription>,
        #[serde(default)]
        lower_offset: Option<SignalDescription>,
        #[serde(default)]
        upper_offset: Option<SignalDescription>,
    },
    ScalarGraphDiag {
        graphs: Vec<GraphDescription>,
    },
    Lcs {
        a: Vec<Vec<f64>>,
        b: Vec<Vec<f64>>,
        c: Vec<Vec<f64>>,
        d: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDescription {
    pub matrix: Vec<Vec<f64>>,
    pub offset: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub horizon: f64,
    pub x0: Vec<f64>,
    pub operator: OperatorDescription,
    #[serde(default)]
    pub lipschitz_f: Option<AffineDescription>,
    #[serde(default)]
    pub input_u: Option<SignalDescription>,
    #[serde(default)]
    pub signal_v: Option<SignalDescription>,
    /// Declared domain-motion function as `[[t, φ(t)], …]`.
    #[serde(default)]
    pub phi: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    pub sigma: Option<f64>,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Scenario { .. } => e,
        other => Error::Scenario {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

fn invalid(path: &str, message: impl Into<String>) -> Error {
    Error::Scenario {
        path: path.to_string(),
        message: message.into(),
    }
}

impl SignalDescription {
    pub fn to_signal(&self) -> Result<Signal> {
        match self {
            SignalDescription::Constant(v) => {
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidArgument("signal values must be finite".into()));
                }
                Ok(Signal::constant(Vector::from_vec(v.clone())))
            }
            SignalDescription::Knots(k) => {
                Signal::piecewise_linear(k.iter().map(|(t, v)| (*t, Vector::from_vec(v.clone()))).collect())
            }
        }
    }

    pub fn from_signal(s: &Signal) -> Self {
        match s {
            Signal::Constant(v) => SignalDescription::Constant(v.as_slice().to_vec()),
            Signal::PiecewiseLinear { .. } => {
                SignalDescription::Knots(s.knots().into_iter().map(|(t, v)| (t, v.as_slice().to_vec())).collect())
            }
        }
    }
}

impl GraphDescription {
    pub fn to_graph(&self) -> ScalarGraph {
        match *self {
            GraphDescription::Abs => ScalarGraph::AbsSubdifferential,
            GraphDescription::Relay { lower, upper } => ScalarGraph::Relay { lower, upper },
            GraphDescription::SaturationInverse { limit } => ScalarGraph::SaturationInverse { limit },
            GraphDescription::IndicatorInterval { lower, upper } => ScalarGraph::IndicatorInterval { lower, upper },
            GraphDescription::LinearSlope { slope } => ScalarGraph::LinearSlope { slope },
        }
    }
}

fn to_matrix(path: &str, rows: &[Vec<f64>], nrows: usize, ncols: usize) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(invalid(path, format!("expected {nrows} rows, found {}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
        return Err(invalid(&format!("{path}[{i}]"), format!("expected {ncols} columns, found {}", r.len())));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(invalid(path, "entries must be finite"));
    }
    Ok(linalg::matrix_from_rows(rows, ncols).expect("shape checked"))
}

fn signal_at(path: &str, s: &SignalDescription, dim: usize) -> Result<Signal> {
    let sig = s.to_signal().map_err(|e| at(path, e))?;
    if sig.dim() != dim {
        return Err(invalid(path, format!("expected dimension {dim}, found {}", sig.dim())));
    }
    Ok(sig)
}

impl Scenario {
    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    pub fn x0_vector(&self) -> Vector {
        Vector::from_vec(self.x0.clone())
    }

    /// Schema-level checks that do not need the operator to be built.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(invalid("name", "must not be empty"));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(invalid("horizon", format!("must be positive and finite, got {}", self.horizon)));
        }
        let n = self.dim();
        if n == 0 {
            return Err(invalid("x0", "must not be empty"));
        }
        if self.x0.iter().any(|x| !x.is_finite()) {
            return Err(invalid("x0", "entries must be finite"));
        }
        if let Some(sigma) = self.sigma {
            if !(sigma >= 0.0 && sigma.is_finite()) {
                return Err(invalid("sigma", "must be nonnegative and finite"));
            }
        }
        if let Some(phi) = &self.phi {
            let sig = Signal::scalar(phi).map_err(|e| at("phi", e))?;
            if !sig.is_nondecreasing() {
                return Err(invalid("phi", "must be nondecreasing"));
            }
        }
        if let Some(f) = &self.lipschitz_f {
            to_matrix("lipschitz_f.matrix", &f.matrix, n, n)?;
            if f.offset.len() != n {
                return Err(invalid("lipschitz_f.offset", format!("expected length {n}, found {}", f.offset.len())));
            }
        }
        if let Some(u) = &self.input_u {
            signal_at("input_u", u, n)?;
        }
        match &self.operator {
            OperatorDescription::SweepingBox {
                lower,
                upper,
                shift,
                lower_offset,
                upper_offset,
            } => {
                if lower.len() != n {
                    return Err(invalid("operator.lower", format!("expected length {n}, found {}", lower.len())));
                }
                if upper.len() != n {
                    return Err(invalid("operator.upper", format!("expected length {n}, found {}", upper.len())));
                }
                for (key, s) in [("operator.shift", shift), ("operator.lower_offset", lower_offset), ("operator.upper_offset", upper_offset)] {
                    if let Some(s) = s {
                        signal_at(key, s, n)?;
                    }
                }
                if self.signal_v.is_some() {
                    return Err(invalid("signal_v", "only used by lcs operators"));
                }
            }
            OperatorDescription::ScalarGraphDiag { graphs } => {
                if graphs.len() != n {
                    return Err(invalid("operator.graphs", format!("expected {n} graphs, found {}", graphs.len())));
                }
                for (i, g) in graphs.iter().enumerate() {
                    g.to_graph().validate().map_err(|e| at(&format!("operator.graphs[{i}]"), e))?;
                }
                if self.signal_v.is_some() {
                    return Err(invalid("signal_v", "only used by lcs operators"));
                }
            }
            OperatorDescription::Lcs { a, b, c, d } => {
                let m = d.len();
                to_matrix("operator.a", a, n, n)?;
                to_matrix("operator.b", b, n, m)?;
                to_matrix("operator.c", c, m, n)?;
                to_matrix("operator.d", d, m, m)?;
                if let Some(v) = &self.signal_v {
                    signal_at("signal_v", v, m)?;
                }
            }
        }
        Ok(())
    }

    /// The grid on which the LCS hypotheses are checked: a uniform grid
    /// plus every knot of `v` inside the horizon.
    pub fn gate_grid(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = (0..=GATE_INTERVALS)
            .map(|i| self.horizon * i as f64 / GATE_INTERVALS as f64)
            .collect();
        if let Some(Ok(v)) = self.signal_v.as_ref().map(SignalDescription::to_signal) {
            ts.extend(v.knot_times().iter().copied().filter(|&t| t > 0.0 && t < self.horizon));
        }
        ts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        ts.dedup();
        ts
    }

    /// The linear complementarity system, for `lcs` operators.
    pub fn lcs_system(&self) -> Option<Result<LcsSystem>> {
        let OperatorDescription::Lcs { a, b, c, d } = &self.operator else {
            return None;
        };
        Some((|| {
            self.validate()?;
            let n = self.dim();
            let m = d.len();
            let v = match &self.signal_v {
                Some(v) => signal_at("signal_v", v, m)?,
                None => Signal::zero(m),
            };
            LcsSystem::new(
                to_matrix("operator.a", a, n, n)?,
                to_matrix("operator.b", b, n, m)?,
                to_matrix("operator.c", c, m, n)?,
                to_matrix("operator.d", d, m, m)?,
                v,
            )
        })())
    }

    /// The hypothesis report of an `lcs` scenario on its gate grid.
    pub fn hypothesis_report(&self) -> Option<Result<HypothesisReport>> {
        self.lcs_system()
            .map(|sys| sys.map(|sys| hypothesis_report(&sys, &self.gate_grid())))
    }

    /// Builds the operator, applying the hypothesis gate for LCS relations.
    pub fn operator(&self) -> Result<OperatorSpec> {
        self.validate()?;
        let n = self.dim();
        let mut op = match &self.operator {
            OperatorDescription::SweepingBox {
                lower,
                upper,
                shift,
                lower_offset,
                upper_offset,
            } => {
                let base = ConvexSet::boxed(Vector::from_vec(lower.clone()), Vector::from_vec(upper.clone()))
                    .map_err(|e| at("operator", e))?;
                let sig = |key: &str, s: &Option<SignalDescription>| s.as_ref().map(|s| signal_at(key, s, n)).transpose();
                let set = MovingSet::new(
                    base,
                    sig("operator.shift", shift)?,
                    sig("operator.lower_offset", lower_offset)?,
                    sig("operator.upper_offset", upper_offset)?,
                )
                .map_err(|e| at("operator", e))?;
                OperatorSpec::normal_cone(set)
            }
            OperatorDescription::ScalarGraphDiag { graphs } => {
                OperatorSpec::scalar_diag(graphs.iter().map(GraphDescription::to_graph).collect())?
            }
            OperatorDescription::Lcs { .. } => {
                let sys = self.lcs_system().expect("lcs operator")?;
                build_lcs_operator(sys, &self.gate_grid())?
            }
        };
        if let Some(f) = &self.lipschitz_f {
            let g = to_matrix("lipschitz_f.matrix", &f.matrix, n, n)?;
            op = op.with_lipschitz(AffineMap::new(g, Vector::from_vec(f.offset.clone()))?)?;
        }
        if let Some(u) = &self.input_u {
            op = op.with_input(signal_at("input_u", u, n)?)?;
        }
        Ok(op)
    }

    pub fn phi_signal(&self) -> Option<Result<Signal>> {
        self.phi.as_ref().map(|k| Signal::scalar(k))
    }

    /// The bound certificate for the declared `φ` and `σ`.
    pub fn bound_certificate(&self) -> Result<BoundCertificate> {
        let (Some(phi), Some(sigma)) = (self.phi_signal(), self.sigma) else {
            return Err(Error::InvalidArgument(format!(
                "scenario `{}` declares no phi/sigma; no certificate is available",
                self.name
            )));
        };
        BoundCertificate::new(self.x0_vector().norm(), phi?, sigma, self.horizon)
    }

    /// A uniform partition of `[0, T]` with step `h`.
    pub fn partition(&self, h: f64) -> Result<Partition> {
        Partition::uniform(self.horizon, h)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }
}

/// Parses, validates and gate-checks a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Scenario {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    scenario.validate()?;
    scenario.operator()?;
    Ok(scenario)
}

pub const BUILTIN_NAMES: [&str; 6] = [
    "example1_ramp",
    "example1_paper_v",
    "sweeping_interval",
    "gradient_flow",
    "relay_feedback",
    "diode_bridge",
];

fn example1(name: &str, horizon: f64, v: Vec<(f64, Vec<f64>)>) -> Scenario {
    Scenario {
        name: name.into(),
        horizon,
        x0: vec![1.0],
        operator: OperatorDescription::Lcs {
            a: vec![vec![0.0]],
            b: vec![vec![0.0, 1.0]],
            c: vec![vec![0.0], vec![1.0]],
            d: vec![vec![0.0, 1.0], vec![-1.0, 0.0]],
        },
        lipschitz_f: None,
        input_u: None,
        signal_v: Some(SignalDescription::Knots(v)),
        phi: None,
        sigma: None,
    }
}

/// A built-in scenario by name.
pub fn builtin(name: &str) -> Option<Scenario> {
    Some(match name {
        "example1_ramp" => example1(
            name,
            1.0,
            vec![(0.0, vec![0.0, 0.0]), (1.0, vec![-1.0, 0.0])],
        ),
        "example1_paper_v" => example1(
            name,
            2.0,
            vec![(0.0, vec![0.0, 0.0]), (0.5, vec![0.0, 0.0]), (1.5, vec![-1.0, 0.0])],
        ),
        "sweeping_interval" => Scenario {
            name: name.into(),
            horizon: 2.0,
            x0: vec![1.0],
            operator: OperatorDescription::SweepingBox {
                lower: vec![0.0],
                upper: vec![2.0],
                shift: Some(SignalDescription::Knots(vec![(0.0, vec![0.0]), (2.0, vec![2.0])])),
                lower_offset: None,
                upper_offset: None,
            },
            lipschitz_f: None,
            input_u: None,
            signal_v: None,
            phi: Some(vec![(0.0, 0.0), (2.0, 2.0)]),
            sigma: Some(0.0),
        },
        "gradient_flow" => Scenario {
            name: name.into(),
            horizon: 1.0,
            x0: vec![1.0],
            operator: OperatorDescription::ScalarGraphDiag {
                graphs: vec![GraphDescription::LinearSlope { slope: 1.0 }],
            },
            lipschitz_f: None,
            input_u: None,
            signal_v: None,
            // static domain; |F⁰(x)| = |x| ≤ 1·(1 + |x|)
            phi: Some(vec![(0.0, 0.0), (1.0, 0.0)]),
            sigma: Some(1.0),
        },
        "relay_feedback" => Scenario {
            name: name.into(),
            horizon: 5.0,
            x0: vec![1.0, -0.5],
            operator: OperatorDescription::ScalarGraphDiag {
                graphs: vec![
                    GraphDescription::Relay { lower: -1.0, upper: 1.0 },
                    GraphDescription::Relay { lower: -0.5, upper: 0.5 },
                ],
            },
            lipschitz_f: Some(AffineDescription {
                matrix: vec![vec![0.0, 1.0], vec![-1.0, 0.0]],
                offset: vec![0.0, 0.0],
            }),
            input_u: None,
            signal_v: None,
            phi: None,
            sigma: None,
        },
        "diode_bridge" => Scenario {
            name: name.into(),
            horizon: 5.0,
            x0: vec![1.0, 0.0],
            operator: OperatorDescription::Lcs {
                a: vec![vec![0.0, -1.0], vec![1.0, 0.0]],
                b: vec![vec![0.0, 0.0, -1.0, 1.0], vec![0.0, 0.0, 0.0, 0.0]],
                c: vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![-1.0, 0.0], vec![1.0, 0.0]],
                d: vec![
                    vec![1.0, 1.0, -1.0, 0.0],
                    vec![1.0, 1.0, 0.0, -1.0],
                    vec![1.0, 0.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0, 0.0],
                ],
            },
            lipschitz_f: None,
            input_u: None,
            signal_v: Some(SignalDescription::Constant(vec![0.0; 4])),
            phi: None,
            sigma: None,
        },
        _ => return None,
    })
}

/// Parses and validates a scenario without building its operator, so that
/// systems refused by the hypothesis gate can still be inspected.
pub fn load_unchecked(spec: &str) -> Result<Scenario> {
    let path = std::path::Path::new(spec);
    let s = if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Scenario {
            path: e.path().to_string(),
            message: e.into_inner().to_string(),
        })?
    } else {
        builtin(spec).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "`{spec}` is neither a file nor a built-in scenario ({})",
                BUILTIN_NAMES.join(", ")
            ))
        })?
    };
    s.validate()?;
    Ok(s)
}

/// Loads a scenario from a file path, or by built-in name when no such
/// file exists, and applies the hypothesis gate.
pub fn load(spec: &str) -> Result<Scenario> {
    let s = load_unchecked(spec)?;
    s.operator()?;
    Ok(s)
}
