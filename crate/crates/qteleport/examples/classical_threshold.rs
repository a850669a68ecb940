//! The classical fidelity limit 2/3 and where noisy teleportation crosses
//! it: with a strongly damped input, the deterministic protocol stays
//! genuinely quantum only for the mildest Bob noise, while the
//! postselected protocol beats 2/3 across almost the whole range.
//!
//! Run with:
//! ```sh
//! cargo run --release --example classical_threshold
//! ```

use std::f64::consts::PI;

use qteleport::noise::{Arrangement, NoiseKind, NoiseSpec, ProbAxis};
use qteleport::optimizer::{optimize, threshold_crossings, SearchConfig, Target};
use qteleport::CLASSICAL_FIDELITY_LIMIT;

fn main() {
    let base = Arrangement::new(
        NoiseSpec::new(NoiseKind::AmplitudeDamping, 0.8).unwrap(),
        NoiseSpec::none(),
        NoiseSpec::new(NoiseKind::PhaseFlip, 0.0).unwrap(),
    );

    // The extended measurement-angle range reaches the mirror protocol
    // family, which restores the quantum advantage beyond p_B = 1/2.
    let det_cfg = SearchConfig {
        phi_range: (0.0, PI),
        ..SearchConfig::default()
    };
    let psi_cfg = SearchConfig {
        phi_range: (0.0, PI),
        target: Target::Outcome(4),
        ..SearchConfig::default()
    };

    println!("input damped at p_I = 0.8, phase flip of strength p_B on Bob:");
    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "p_B", "deterministic", "postselected", "success"
    );
    for k in 0..=10 {
        let p_b = k as f64 / 10.0;
        let arr = ProbAxis::Bob.with_p(&base, p_b);
        let det = optimize(&arr, &det_cfg).unwrap();
        let psi = optimize(&arr, &psi_cfg).unwrap();
        let mark = |v: f64| if v > CLASSICAL_FIDELITY_LIMIT { '*' } else { ' ' };
        println!(
            "{p_b:>6.2} {:>13.6}{} {:>13.6}{} {:>10.4}",
            det.value,
            mark(det.value),
            psi.value,
            mark(psi.value),
            psi.success
        );
    }
    println!("(* = above the classical limit 2/3)");

    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let det_crossings = threshold_crossings(&base, ProbAxis::Bob, &det_cfg, &grid).unwrap();
    println!("\ndeterministic curve crosses 2/3 at:");
    for c in &det_crossings {
        println!("  p_B = {:.4} ({:?})", c.p, c.side);
    }

    // A cleaner closed-form check: depolarizing on Bob alone has
    // <F> = 1 - p/2, crossing 2/3 at exactly p = 2/3.
    let dep = Arrangement::new(
        NoiseSpec::none(),
        NoiseSpec::none(),
        NoiseSpec::new(NoiseKind::Depolarizing, 0.0).unwrap(),
    );
    let crossings =
        threshold_crossings(&dep, ProbAxis::Bob, &SearchConfig::default(), &grid).unwrap();
    println!(
        "\ndepolarizing-on-Bob deterministic crossing: p = {:.4} (exact: 2/3)",
        crossings[0].p
    );
}
