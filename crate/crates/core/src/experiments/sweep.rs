//! Parameter sweeps over uniform layer angles.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{build_variational_circuit, uniform_thetas, Circuit, Phases, Topology};
use crate::entanglement::{closed_form, entanglement_schmidt_oracle};
use crate::error::{Error, Result};
use crate::measurement::estimate_entanglement_of_state;
use crate::state::{GateAngle, StateVector};

/// Registers up to this size run sweep points in parallel, one state each.
/// Larger registers run points one after another in a single reused buffer.
const PARALLEL_POINTS_MAX_QUBITS: usize = 14;

/// Which uniform layer angle the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweptParameter {
    /// Rotation angle of every qubit in the given layer (0-based).
    Theta(usize),
    /// Phase of every edge in the given layer (0-based).
    Phi(usize),
}

/// Inclusive grid `start, start + step, ...` up to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl SweepRange {
    /// `floor((end - start) / step) + 1`, tolerant to rounding in the quotient.
    pub fn point_count(&self) -> usize {
        ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.point_count())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let finite = self.start.is_finite() && self.end.is_finite() && self.step.is_finite();
        if !finite || self.step <= 0.0 || self.start >= self.end {
            return Err(Error::Config(format!(
                "sweep range needs start < end and step > 0, got {:?}",
                self
            )));
        }
        Ok(())
    }
}

/// Analytic curve evaluated at the swept value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormCurve {
    /// [`closed_form::qgan_k1`] with all three angles equal to the swept value.
    QganK1Equal,
    /// [`closed_form::qgan_k2_equal`].
    QganK2Equal,
    /// [`closed_form::phi_k1`].
    PhiK1,
}

impl ClosedFormCurve {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ClosedFormCurve::QganK1Equal => closed_form::qgan_k1(x, x, x).value(),
            ClosedFormCurve::QganK2Equal => closed_form::qgan_k2_equal(x).value(),
            ClosedFormCurve::PhiK1 => closed_form::phi_k1(x).value(),
        }
    }
}

/// Expression reported for sweeps that have no admissible closed form here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportedCurve {
    /// [`closed_form::reported_theta0_k2`].
    Theta0K2,
    /// [`closed_form::reported_phi1_k2`].
    Phi1K2,
}

impl ReportedCurve {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ReportedCurve::Theta0K2 => closed_form::reported_theta0_k2(x),
            ReportedCurve::Phi1K2 => closed_form::reported_phi1_k2(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format `{other}`"))),
        }
    }
}

/// A sweep: circuit template, uniform per-layer bindings, the swept selector and grid.
///
/// JSON form (as accepted by `--config`):
///
/// ```json
/// {
///   "name": "fig5b",
///   "n_qubits": 3, "depth": 2, "topology": { "kind": "chain" },
///   "thetas": [1.5707963267948966, 0.0], "phis": [3.141592653589793, 3.141592653589793],
///   "swept": { "theta": 1 },
///   "range": { "start": 0.0, "end": 6.283185307179586, "step": 0.09817477042468103 },
///   "qubit": 1, "shots": 1024, "seed": 0,
///   "closed_form": "qgan_k2_equal"
/// }
/// ```
///
/// `thetas[j]` and `phis[j]` bind layer `j`; the swept entry is overwritten at
/// each grid point. `shots: null` disables sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub n_qubits: usize,
    pub depth: usize,
    #[serde(default)]
    pub topology: Topology,
    pub thetas: Vec<GateAngle>,
    pub phis: Vec<GateAngle>,
    pub swept: SweptParameter,
    pub range: SweepRange,
    pub qubit: usize,
    #[serde(default)]
    pub shots: Option<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub closed_form: Option<ClosedFormCurve>,
    #[serde(default)]
    pub reported_formula: Option<ReportedCurve>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_name() -> String {
    "custom".into()
}

/// Named sweeps reproducing the studied figure settings.
pub const PRESETS: [&str; 5] = ["fig5a", "fig5b", "fig5c", "fig6a", "fig6b"];

/// Step of every preset grid.
pub const PRESET_STEP: f64 = PI / 32.0;

impl SweepConfig {
    /// Preset by name on a 3-qubit chain with target qubit 1 and all entangling
    /// phases `pi` unless swept.
    ///
    /// * `fig5a`: one layer, `theta_{i,0} = theta` over `[0, 2 pi]`.
    /// * `fig5b`: two layers, `theta_{i,0} = pi/2`, `theta_{i,1} = theta_1` over `[0, 2 pi]`.
    /// * `fig5c`: two layers, `theta_{i,0} = theta_0` over `[0, 2 pi]`, `theta_{i,1} = pi/2`.
    /// * `fig6a`: one layer, `theta_{i,0} = pi/2`, first-layer phase `phi` over `[0, 4 pi]`.
    /// * `fig6b`: two layers, `theta_{i,0} = theta_{i,1} = pi/2`, first-layer phase
    ///   `phi_1` over `[0, 4 pi]`, second-layer phase `pi`.
    pub fn preset(name: &str) -> Result<Self> {
        let two_pi = SweepRange {
            start: 0.0,
            end: 2.0 * PI,
            step: PRESET_STEP,
        };
        let four_pi = SweepRange {
            start: 0.0,
            end: 4.0 * PI,
            step: PRESET_STEP,
        };
        let base = |depth, thetas: Vec<f64>, phis: Vec<f64>, swept, range| SweepConfig {
            name: name.to_string(),
            n_qubits: 3,
            depth,
            topology: Topology::Chain,
            thetas,
            phis,
            swept,
            range,
            qubit: 1,
            shots: None,
            seed: 0,
            closed_form: None,
            reported_formula: None,
            output: None,
            format: OutputFormat::Csv,
        };
        let config = match name {
            "fig5a" => SweepConfig {
                closed_form: Some(ClosedFormCurve::QganK1Equal),
                ..base(1, vec![0.0], vec![PI], SweptParameter::Theta(0), two_pi)
            },
            "fig5b" => SweepConfig {
                closed_form: Some(ClosedFormCurve::QganK2Equal),
                ..base(
                    2,
                    vec![FRAC_PI_2, 0.0],
                    vec![PI, PI],
                    SweptParameter::Theta(1),
                    two_pi,
                )
            },
            "fig5c" => SweepConfig {
                reported_formula: Some(ReportedCurve::Theta0K2),
                ..base(
                    2,
                    vec![0.0, FRAC_PI_2],
                    vec![PI, PI],
                    SweptParameter::Theta(0),
                    two_pi,
                )
            },
            "fig6a" => SweepConfig {
                closed_form: Some(ClosedFormCurve::PhiK1),
                ..base(
                    1,
                    vec![FRAC_PI_2],
                    vec![0.0],
                    SweptParameter::Phi(0),
                    four_pi,
                )
            },
            "fig6b" => SweepConfig {
                reported_formula: Some(ReportedCurve::Phi1K2),
                ..base(
                    2,
                    vec![FRAC_PI_2, FRAC_PI_2],
                    vec![0.0, PI],
                    SweptParameter::Phi(0),
                    four_pi,
                )
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown preset `{other}`; expected one of {}",
                    PRESETS.join(", ")
                )))
            }
        };
        Ok(config)
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        crate::error::parse_json(text, origin)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if self.thetas.len() != self.depth || self.phis.len() != self.depth {
            return Err(Error::Config(format!(
                "thetas and phis need one value per layer ({}), got {} and {}",
                self.depth,
                self.thetas.len(),
                self.phis.len()
            )));
        }
        let layer = match self.swept {
            SweptParameter::Theta(j) | SweptParameter::Phi(j) => j,
        };
        if layer >= self.depth {
            return Err(Error::Config(format!(
                "swept layer {layer} does not exist in a depth-{} circuit",
                self.depth
            )));
        }
        if self.qubit >= self.n_qubits {
            return Err(Error::Config(format!(
                "target qubit {} out of range for {} qubits",
                self.qubit, self.n_qubits
            )));
        }
        if self.shots == Some(0) {
            return Err(Error::Config("shots must be positive".into()));
        }
        Ok(())
    }

    /// Circuit with the swept parameter bound to `value`.
    pub fn circuit_at(&self, value: f64) -> Result<Circuit> {
        let mut thetas = self.thetas.clone();
        let mut phis = self.phis.clone();
        match self.swept {
            SweptParameter::Theta(j) => thetas[j] = value,
            SweptParameter::Phi(j) => phis[j] = value,
        }
        build_variational_circuit(
            self.n_qubits,
            self.depth,
            &uniform_thetas(self.n_qubits, &thetas),
            &Phases::PerLayer(phis),
            &self.topology,
        )
    }
}

/// One grid point. Optional fields are absent when not requested or undefined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub param: f64,
    pub e_closed: Option<f64>,
    pub e_exact: f64,
    pub e_sampled: Option<f64>,
    pub stderr: Option<f64>,
    pub e_paper_formula: Option<f64>,
    pub paper_formula_deviation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub name: String,
    pub qubit: usize,
    pub shots: Option<u64>,
    pub seed: u64,
    pub points: Vec<SweepPoint>,
}

/// Twelve significant digits in scientific notation.
pub fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

impl SweepResult {
    pub fn has_reported_formula(&self) -> bool {
        self.points.iter().any(|p| p.e_paper_formula.is_some())
    }

    /// CSV with header `param,e_closed,e_exact,e_sampled,stderr`, plus
    /// `e_paper_formula,paper_formula_deviation` when a reported curve is attached.
    /// Missing values are empty fields.
    pub fn to_csv(&self) -> String {
        let extra = self.has_reported_formula();
        let mut out = String::from("param,e_closed,e_exact,e_sampled,stderr");
        if extra {
            out.push_str(",e_paper_formula,paper_formula_deviation");
        }
        out.push('\n');
        let opt = |x: Option<f64>| x.map(format_sig12).unwrap_or_default();
        for p in &self.points {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                format_sig12(p.param),
                opt(p.e_closed),
                format_sig12(p.e_exact),
                opt(p.e_sampled),
                opt(p.stderr)
            );
            if extra {
                let _ = write!(
                    out,
                    ",{},{}",
                    opt(p.e_paper_formula),
                    opt(p.paper_formula_deviation)
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep result serializes")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        std::fs::write(path, self.render(format)).map_err(|e| Error::io(path, e))
    }

    pub fn max_closed_form_deviation(&self) -> Option<f64> {
        self.points
            .iter()
            .filter_map(|p| p.e_closed.map(|c| (c - p.e_exact).abs()))
            .reduce(f64::max)
    }
}

fn evaluate_point(
    config: &SweepConfig,
    index: usize,
    value: f64,
    buffer: &mut StateVector,
) -> Result<SweepPoint> {
    config.circuit_at(value)?.run_into(buffer)?;
    let e_exact = entanglement_schmidt_oracle(buffer, config.qubit)?.value();
    let sampled = match config.shots {
        // Each point draws from its own block of three consecutive seeds.
        Some(shots) => Some(estimate_entanglement_of_state(
            buffer,
            config.qubit,
            shots,
            config.seed.wrapping_add(3 * index as u64),
        )?),
        None => None,
    };
    let e_paper_formula = config.reported_formula.map(|f| f.eval(value));
    Ok(SweepPoint {
        param: value,
        e_closed: config.closed_form.map(|f| f.eval(value)),
        e_exact,
        e_sampled: sampled.map(|s| s.value),
        stderr: sampled.map(|s| s.std_error),
        e_paper_formula,
        paper_formula_deviation: e_paper_formula.map(|r| (r - e_exact).abs()),
    })
}

/// Evaluates every grid point and, when `config.output` is set, writes the result there.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let values = config.range.values();
    let points = if config.n_qubits <= PARALLEL_POINTS_MAX_QUBITS {
        values
            .par_iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut buffer = StateVector::zero(config.n_qubits)?;
                evaluate_point(config, i, x, &mut buffer)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut buffer = StateVector::zero(config.n_qubits)?;
        values
            .iter()
            .enumerate()
            .map(|(i, &x)| evaluate_point(config, i, x, &mut buffer))
            .collect::<Result<Vec<_>>>()?
    };
    let result = SweepResult {
        name: config.name.clone(),
        qubit: config.qubit,
        shots: config.shots,
        seed: config.seed,
        points,
    };
    if let Some(path) = &config.output {
        result.write(path, config.format)?;
    }
    Ok(result)
}
