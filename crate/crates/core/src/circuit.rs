//! The layered RY / controlled-phase circuit family and its JSON description.
//!
//! A circuit of depth `k` on `n` qubits runs, for each layer `j` in order, one
//! `RY(theta[i][j])` on every qubit `i` followed by a block of controlled-phase
//! gates on the layer's entangling edges. Angles are stored qubit-major:
//! `thetas[i][j]` is the rotation of qubit `i` in layer `j`.

use std::collections::{BTreeMap, HashSet};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{GateAngle, StateVector};

/// One controlled-phase gate `CP(phi)` between qubits `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglingEdge {
    pub a: usize,
    pub b: usize,
    pub phi: GateAngle,
}

/// Rotation column plus entangling block.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    thetas: Vec<GateAngle>,
    edges: Vec<EntanglingEdge>,
}

impl Layer {
    pub fn new(
        n_qubits: usize,
        thetas: Vec<GateAngle>,
        edges: Vec<EntanglingEdge>,
    ) -> Result<Self> {
        if thetas.len() != n_qubits {
            return Err(Error::Config(format!(
                "layer has {} rotation angles for {n_qubits} qubits",
                thetas.len()
            )));
        }
        validate_pairs(n_qubits, edges.iter().map(|e| (e.a, e.b)))?;
        Ok(Self { thetas, edges })
    }

    pub fn thetas(&self) -> &[GateAngle] {
        &self.thetas
    }

    pub fn edges(&self) -> &[EntanglingEdge] {
        &self.edges
    }

    /// Applies this layer's gates to `state` in place.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        for (qubit, &theta) in self.thetas.iter().enumerate() {
            state.apply_ry(qubit, theta)?;
        }
        for edge in &self.edges {
            state.apply_cp(edge.a, edge.b, edge.phi)?;
        }
        Ok(())
    }
}

fn validate_pairs(n_qubits: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<()> {
    let mut seen = HashSet::new();
    for (a, b) in pairs {
        if a == b {
            return Err(Error::Index(format!("edge ({a}, {b}) is a self-loop")));
        }
        if a >= n_qubits || b >= n_qubits {
            return Err(Error::Index(format!(
                "edge ({a}, {b}) out of range for {n_qubits} qubits"
            )));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::Config(format!("edge ({a}, {b}) appears twice")));
        }
    }
    Ok(())
}

/// A variational circuit: `n_qubits` plus an ordered list of layers.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(n_qubits: usize, layers: Vec<Layer>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Size("circuit needs at least one qubit".into()));
        }
        for (j, layer) in layers.iter().enumerate() {
            if layer.thetas.len() != n_qubits {
                return Err(Error::Config(format!(
                    "layer {j} has {} angles for {n_qubits} qubits",
                    layer.thetas.len()
                )));
            }
            validate_pairs(n_qubits, layer.edges.iter().map(|e| (e.a, e.b)))?;
        }
        Ok(Self { n_qubits, layers })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Executes the circuit on a fresh `|0...0>` register.
    pub fn run(&self) -> Result<StateVector> {
        let mut state = StateVector::zero(self.n_qubits)?;
        self.apply_layers(&mut state)?;
        Ok(state)
    }

    /// Resets `state` to `|0...0>` and executes the circuit on it, reusing its buffer.
    pub fn run_into(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::Size(format!(
                "buffer has {} qubits, circuit needs {}",
                state.n_qubits(),
                self.n_qubits
            )));
        }
        state.reset_zero();
        self.apply_layers(state)
    }

    fn apply_layers(&self, state: &mut StateVector) -> Result<()> {
        self.layers.iter().try_for_each(|layer| layer.apply(state))
    }
}

/// Edge pattern of the entangling block, identical in every layer.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    /// `(i, i + 1)` for `i = 0..n-1`.
    #[default]
    Chain,
    /// `(center, i)` for every other qubit `i`, in increasing `i`.
    Star {
        center: usize,
    },
    /// Every pair `(i, j)` with `i < j`, lexicographic.
    Complete,
    Explicit {
        edges: Vec<(usize, usize)>,
    },
}

impl Topology {
    /// Ordered edge list for an `n_qubits` register.
    pub fn edges(&self, n_qubits: usize) -> Result<Vec<(usize, usize)>> {
        let edges: Vec<(usize, usize)> = match self {
            Topology::Chain => (1..n_qubits).map(|i| (i - 1, i)).collect(),
            Topology::Star { center } => {
                if *center >= n_qubits {
                    return Err(Error::Index(format!(
                        "star center {center} out of range for {n_qubits} qubits"
                    )));
                }
                (0..n_qubits)
                    .filter(|i| i != center)
                    .map(|i| (*center, i))
                    .collect()
            }
            Topology::Complete => (0..n_qubits)
                .flat_map(|i| (i + 1..n_qubits).map(move |j| (i, j)))
                .collect(),
            Topology::Explicit { edges } => edges.clone(),
        };
        validate_pairs(n_qubits, edges.iter().copied())?;
        Ok(edges)
    }
}

/// Controlled-phase angles for every edge of every layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Phases {
    /// One angle everywhere.
    Uniform(GateAngle),
    /// One angle per layer, shared by that layer's edges.
    PerLayer(Vec<GateAngle>),
    /// `per_edge[j][e]` is the angle of edge `e` in layer `j`.
    PerEdge(Vec<Vec<GateAngle>>),
}

impl Phases {
    fn resolve(&self, depth: usize, n_edges: usize) -> Result<Vec<Vec<GateAngle>>> {
        match self {
            Phases::Uniform(phi) => Ok(vec![vec![*phi; n_edges]; depth]),
            Phases::PerLayer(per_layer) => {
                if per_layer.len() != depth {
                    return Err(Error::Config(format!(
                        "{} per-layer phases for depth {depth}",
                        per_layer.len()
                    )));
                }
                Ok(per_layer.iter().map(|phi| vec![*phi; n_edges]).collect())
            }
            Phases::PerEdge(table) => {
                if table.len() != depth || table.iter().any(|row| row.len() != n_edges) {
                    return Err(Error::Config(format!(
                        "per-edge phases must be {depth} layers x {n_edges} edges"
                    )));
                }
                Ok(table.clone())
            }
        }
    }
}

/// Builds the depth-`depth` circuit with `thetas[i][j]` rotations and phases on
/// the edges generated by `topology`.
pub fn build_variational_circuit(
    n_qubits: usize,
    depth: usize,
    thetas: &[Vec<GateAngle>],
    phis: &Phases,
    topology: &Topology,
) -> Result<Circuit> {
    if n_qubits == 0 {
        return Err(Error::Size("circuit needs at least one qubit".into()));
    }
    let empty_ok = depth == 0 && thetas.is_empty();
    if !empty_ok && (thetas.len() != n_qubits || thetas.iter().any(|row| row.len() != depth)) {
        return Err(Error::Config(format!(
            "thetas must be {n_qubits} qubits x {depth} layers"
        )));
    }
    let pairs = topology.edges(n_qubits)?;
    let phase_table = phis.resolve(depth, pairs.len())?;
    let layers = (0..depth)
        .map(|j| {
            let column = thetas.iter().map(|row| row[j]).collect();
            let edges = pairs
                .iter()
                .zip(&phase_table[j])
                .map(|(&(a, b), &phi)| EntanglingEdge { a, b, phi })
                .collect();
            Layer::new(n_qubits, column, edges)
        })
        .collect::<Result<Vec<_>>>()?;
    Circuit::new(n_qubits, layers)
}

/// Chain topology with every phase fixed at `pi` (all CZ gates).
pub fn build_qgan_circuit(
    n_qubits: usize,
    depth: usize,
    thetas: &[Vec<GateAngle>],
) -> Result<Circuit> {
    build_variational_circuit(
        n_qubits,
        depth,
        thetas,
        &Phases::Uniform(PI),
        &Topology::Chain,
    )
}

/// `n x k` angle matrix with value `per_layer[j]` in every row of column `j`.
pub fn uniform_thetas(n_qubits: usize, per_layer: &[GateAngle]) -> Vec<Vec<GateAngle>> {
    vec![per_layer.to_vec(); n_qubits]
}

/// JSON circuit description.
///
/// ```json
/// {
///   "n_qubits": 3,
///   "depth": 2,
///   "topology": { "kind": "chain" },
///   "thetas": [[1.5707963267948966, 0.3], [1.5707963267948966, 0.3], [1.5707963267948966, 0.3]],
///   "phis": [3.141592653589793, 3.141592653589793]
/// }
/// ```
///
/// `topology.kind` is one of `chain`, `star` (with `center`), `complete` or
/// `explicit` (with `edges: [[a, b], ...]`); it defaults to `chain`. `thetas`
/// is qubit-major, `n_qubits` rows of `depth` angles. `phis` is a number
/// (uniform), an array of `depth` numbers (per layer), or an object mapping
/// `"a-b"` edge keys to arrays of `depth` angles (per edge).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSpec {
    pub n_qubits: usize,
    pub depth: usize,
    #[serde(default)]
    pub topology: Topology,
    pub thetas: Vec<Vec<GateAngle>>,
    pub phis: PhaseSpec,
}

/// Serialized form of [`Phases`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhaseSpec {
    Uniform(GateAngle),
    PerLayer(Vec<GateAngle>),
    PerEdge(BTreeMap<String, Vec<GateAngle>>),
}

fn edge_key(a: usize, b: usize) -> String {
    format!("{a}-{b}")
}

impl CircuitSpec {
    /// Parses a JSON description; `origin` names the source in diagnostics.
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        crate::error::parse_json(text, origin)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit spec serializes")
    }

    fn phases(&self) -> Result<Phases> {
        Ok(match &self.phis {
            PhaseSpec::Uniform(phi) => Phases::Uniform(*phi),
            PhaseSpec::PerLayer(v) => Phases::PerLayer(v.clone()),
            PhaseSpec::PerEdge(map) => {
                let pairs = self.topology.edges(self.n_qubits)?;
                let mut columns = Vec::with_capacity(pairs.len());
                let mut used = 0;
                for &(a, b) in &pairs {
                    let values = map
                        .get(&edge_key(a, b))
                        .or_else(|| map.get(&edge_key(b, a)))
                        .ok_or_else(|| {
                            Error::Config(format!("phis has no entry for edge {a}-{b}"))
                        })?;
                    if values.len() != self.depth {
                        return Err(Error::Config(format!(
                            "phis[\"{a}-{b}\"] has {} values for depth {}",
                            values.len(),
                            self.depth
                        )));
                    }
                    columns.push(values);
                    used += 1;
                }
                if used != map.len() {
                    return Err(Error::Config(
                        "phis names edges outside the topology".into(),
                    ));
                }
                Phases::PerEdge(
                    (0..self.depth)
                        .map(|j| columns.iter().map(|col| col[j]).collect())
                        .collect(),
                )
            }
        })
    }

    pub fn build(&self) -> Result<Circuit> {
        build_variational_circuit(
            self.n_qubits,
            self.depth,
            &self.thetas,
            &self.phases()?,
            &self.topology,
        )
    }
}
