//! Graph states: undirected graphs lowered to one-layer circuits, and the
//! vertex-degree entanglement formula checked against simulation.
//!
//! The graph state of `G` is `prod_{(a,b) in E} CP_ab(phi) prod_i RY_i(theta) |0...0>`.
//! For a vertex `l` of degree `n_l` only the neighbours' rotations reach the
//! off-diagonal element of the reduced density matrix. Each neighbour in
//! `cos(theta/2)|0> + sin(theta/2)|1>` multiplies it by
//! `cos^2(theta/2) + sin^2(theta/2) e^{i phi}`, whose squared modulus is
//! `1 - sin^2 theta sin^2(phi/2)`, while `<sigma_z> = cos theta` is untouched.
//! For one edge this gives
//! `E = 1/2 - 1/2 sqrt(sin^2 theta (1 - sin^2(phi/2) sin^2 theta) + cos^2 theta)`.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::circuit::{Circuit, EntanglingEdge, Layer};
use crate::entanglement::{closed_form, entanglement_schmidt_oracle};
use crate::error::{Error, Result};
use crate::measurement::seeded_rng;
use crate::state::{GateAngle, DEFAULT_MAX_QUBITS};

/// Simple undirected graph on vertices `0..n_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as `(min, max)` in the given order.
    pub fn new(n_vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::Size("graph needs at least one vertex".into()));
        }
        let mut seen = HashSet::new();
        let mut stored = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Index(format!("self-loop at vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::Index(format!(
                    "edge ({a}, {b}) out of range for {n_vertices} vertices"
                )));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::Config(format!("duplicate edge ({a}, {b})")));
            }
            stored.push(key);
        }
        Ok(Self {
            n_vertices,
            edges: stored,
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Size(format!("a cycle needs 3 vertices, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn star(n: usize, center: usize) -> Result<Self> {
        Self::new(n, (0..n).filter(|&i| i != center).map(|i| (center, i)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// Each pair `i < j` becomes an edge with probability `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
        let mut rng = seeded_rng(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, vertex: usize) -> Result<usize> {
        if vertex >= self.n_vertices {
            return Err(Error::Index(format!(
                "vertex {vertex} out of range for {} vertices",
                self.n_vertices
            )));
        }
        Ok(self
            .edges
            .iter()
            .filter(|(a, b)| *a == vertex || *b == vertex)
            .count())
    }

    /// Parses the edge-list format: a header line `n <count>` followed by one
    /// `a b` pair per line. Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str, origin: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse {
            origin: origin.to_string(),
            message: format!("line {line}: {message}"),
        };
        let mut n_vertices = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (n_vertices, fields.as_slice()) {
                (None, ["n", count]) => {
                    let count = count
                        .parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("vertex count `{count}`: {e}")))?;
                    n_vertices = Some(count);
                }
                (None, _) => {
                    return Err(parse_err(
                        line_no,
                        format!("expected header `n <count>`, found `{line}`"),
                    ))
                }
                (Some(_), [a, b]) => {
                    let a = a
                        .parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("vertex `{a}`: {e}")))?;
                    let b = b
                        .parse::<usize>()
                        .map_err(|e| parse_err(line_no, format!("vertex `{b}`: {e}")))?;
                    edges.push((line_no, a, b));
                }
                (Some(_), _) => {
                    return Err(parse_err(
                        line_no,
                        format!("expected `a b`, found `{line}`"),
                    ))
                }
            }
        }
        let n = n_vertices.ok_or_else(|| parse_err(0, "missing header `n <count>`".into()))?;
        // Validate edge by edge so a failure can name its line.
        let mut graph = Self::new(n, std::iter::empty())?;
        for (line_no, a, b) in edges {
            let mut all = graph.edges.clone();
            all.push((a, b));
            graph = Self::new(n, all).map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        Ok(graph)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text, &path.display().to_string())
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n_vertices);
        for (a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

/// One-layer circuit with `RY(theta)` on every vertex and `CP(phi)` on every edge.
pub fn graph_to_circuit(graph: &Graph, theta: GateAngle, phi: GateAngle) -> Result<Circuit> {
    let edges = graph
        .edges
        .iter()
        .map(|&(a, b)| EntanglingEdge { a, b, phi })
        .collect();
    let layer = Layer::new(graph.n_vertices, vec![theta; graph.n_vertices], edges)?;
    Circuit::new(graph.n_vertices, vec![layer])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexRecord {
    pub vertex: usize,
    pub degree: usize,
    pub e_closed_form: f64,
    pub e_simulated: f64,
    pub abs_difference: f64,
}

/// Degree formula against simulation, one record per vertex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexEntanglementReport {
    pub theta: f64,
    pub phi: f64,
    pub records: Vec<VertexRecord>,
}

impl VertexEntanglementReport {
    pub fn max_abs_difference(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.abs_difference)
            .fold(0.0, f64::max)
    }
}

/// Simulates the graph state and compares every vertex's entanglement with the
/// degree formula.
pub fn verify_degree_formula(
    graph: &Graph,
    theta: GateAngle,
    phi: GateAngle,
) -> Result<VertexEntanglementReport> {
    if graph.n_vertices > DEFAULT_MAX_QUBITS {
        return Err(Error::Size(format!(
            "{} vertices exceed the {DEFAULT_MAX_QUBITS}-qubit cap",
            graph.n_vertices
        )));
    }
    let state = graph_to_circuit(graph, theta, phi)?.run()?;
    let records = (0..graph.n_vertices)
        .map(|vertex| {
            let degree = graph.degree(vertex)?;
            let e_closed_form = closed_form::graph(theta, phi, degree as u32).value();
            let e_simulated = entanglement_schmidt_oracle(&state, vertex)?.value();
            Ok(VertexRecord {
                vertex,
                degree,
                e_closed_form,
                e_simulated,
                abs_difference: (e_closed_form - e_simulated).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexEntanglementReport {
        theta,
        phi,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_qgan_circuit, uniform_thetas};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn degrees() {
        let g = Graph::path(3).unwrap();
        assert_eq!(g.degree(1).unwrap(), 2);
        assert_eq!(g.degree(0).unwrap(), 1);
        let isolated = Graph::new(2, []).unwrap();
        assert_eq!(isolated.degree(1).unwrap(), 0);
        assert!(matches!(g.degree(3), Err(Error::Index(_))));
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::cycle(4).unwrap().edges().len(), 4);
        assert_eq!(Graph::complete(5).unwrap().edges().len(), 10);
    }

    #[test]
    fn lowering() {
        let theta = 0.8;
        let from_graph = graph_to_circuit(&Graph::path(3).unwrap(), theta, PI).unwrap();
        let chain = build_qgan_circuit(3, 1, &uniform_thetas(3, &[theta])).unwrap();
        assert_eq!(from_graph, chain);

        let star = graph_to_circuit(&Graph::star(4, 0).unwrap(), 0.3, PI).unwrap();
        let pairs: Vec<_> = star.layers()[0]
            .edges()
            .iter()
            .map(|e| (e.a, e.b))
            .collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3)]);

        let empty = Graph::new(4, []).unwrap();
        let report = verify_degree_formula(&empty, 1.2, PI).unwrap();
        assert!(report
            .records
            .iter()
            .all(|r| r.e_simulated < 1e-12 && r.e_closed_form == 0.0));
    }

    #[test]
    fn path_at_half_pi() {
        let report = verify_degree_formula(&Graph::path(3).unwrap(), FRAC_PI_2, PI).unwrap();
        let degrees: Vec<_> = report.records.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![1, 2, 1]);
        for r in &report.records {
            assert!((r.e_closed_form - 0.5).abs() < 1e-15);
            assert!((r.e_simulated - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_phase_is_separable() {
        let report = verify_degree_formula(&Graph::complete(5).unwrap(), 1.1, 0.0).unwrap();
        assert!(report
            .records
            .iter()
            .all(|r| r.e_simulated < 1e-12 && r.e_closed_form < 1e-15));
    }

    #[test]
    fn single_edge_hand_computation() {
        let (theta, phi) = (PI / 3.0, FRAC_PI_2);
        let s2 = theta.sin().powi(2);
        let hand =
            0.5 - 0.5 * (s2 * (1.0 - (phi / 2.0).sin().powi(2) * s2) + theta.cos().powi(2)).sqrt();
        let report = verify_degree_formula(&Graph::path(2).unwrap(), theta, phi).unwrap();
        for r in &report.records {
            assert!((r.e_closed_form - hand).abs() < 1e-15);
            assert!((r.e_simulated - hand).abs() < 1e-10);
        }
    }

    #[test]
    fn degree_limit() {
        let theta: f64 = 0.7;
        let limit = 0.5 * (1.0 - theta.cos().abs());
        let mut prev = 0.0;
        for degree in 0..200 {
            let e = closed_form::graph(theta, PI, degree).value();
            assert!(e >= prev - 1e-15);
            prev = e;
        }
        assert!((prev - limit).abs() < 1e-12);
    }

    #[test]
    fn edge_list_format() {
        let text = "# triangle plus pendant\nn 4\n0 1\n1 2\n\n2 0\n2 3  # pendant\n";
        let g = Graph::parse_edge_list(text, "inline").unwrap();
        assert_eq!(g.n_vertices(), 4);
        assert_eq!(g.degree(2).unwrap(), 3);
        assert_eq!(
            Graph::parse_edge_list(&g.to_edge_list(), "again").unwrap(),
            g
        );

        let err = Graph::parse_edge_list("n 3\n0 1\n1 x\n", "bad")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = Graph::parse_edge_list("n 3\n0 1\n1 0\n", "bad")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3") && err.contains("duplicate"), "{err}");
        assert!(Graph::parse_edge_list("0 1\n", "bad").is_err());
        assert!(Graph::parse_edge_list("", "bad").is_err());
    }
}
