//! Runs the built-in parameter sweeps and prints a coarse view of each curve.
//! Full CSV output comes from `varent sweep --preset <name>`.
//!
//! cargo run --example figure_sweeps

use varent::experiments::{run_sweep, SweepConfig, PRESETS};

fn main() -> varent::Result<()> {
    for name in PRESETS {
        let mut config = SweepConfig::preset(name)?;
        config.shots = Some(4096);
        let result = run_sweep(&config)?;
        println!("{name}: {} points", result.points.len());
        for p in result.points.iter().step_by(8) {
            let closed = p.e_closed.map_or("-".to_string(), |e| format!("{e:.4}"));
            let printed = p
                .e_paper_formula
                .map_or(String::new(), |e| format!("  printed {e:+.4}"));
            println!(
                "  x = {:6.3}  exact {:.4}  closed {closed:>6}  sampled {:.4} +- {:.4}{printed}",
                p.param,
                p.e_exact,
                p.e_sampled.unwrap(),
                p.stderr.unwrap()
            );
        }
    }
    Ok(())
}
