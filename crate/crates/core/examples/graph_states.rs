//! Graph states: the entanglement of a vertex depends only on its degree.
//!
//! cargo run --example graph_states

use varent::graphs::{verify_degree_formula, Graph};

fn main() -> varent::Result<()> {
    let (theta, phi) = (1.1, 2.4);
    let graphs = [
        ("path", Graph::path(6)?),
        ("cycle", Graph::cycle(6)?),
        ("star", Graph::star(6, 0)?),
        ("complete", Graph::complete(6)?),
        ("random", Graph::random(6, 0.5, 3)?),
    ];
    for (name, graph) in &graphs {
        let report = verify_degree_formula(graph, theta, phi)?;
        let per_vertex: Vec<String> = report
            .records
            .iter()
            .map(|r| format!("d{}={:.6}", r.degree, r.e_simulated))
            .collect();
        println!(
            "{name:>8}: {}  max |sim - formula| = {:.1e}",
            per_vertex.join(" "),
            report.max_abs_difference()
        );
    }

    let from_text = Graph::parse_edge_list(
        "# triangle with a tail\nn 4\n0 1\n1 2\n2 0\n2 3\n",
        "inline",
    )?;
    print!("edge list round trip:\n{}", from_text.to_edge_list());
    Ok(())
}
