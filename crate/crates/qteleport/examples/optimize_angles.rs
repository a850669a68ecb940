//! Maximizing the averaged fidelity over the channel angle theta and the
//! measurement angle phi.
//!
//! With amplitude damping on the input qubit, the best channel is *not*
//! maximally entangled, and postselecting a single outcome beats the
//! deterministic protocol.
//!
//! Run with:
//! ```sh
//! cargo run --release --example optimize_angles
//! ```

use std::f64::consts::FRAC_PI_4;

use qteleport::noise::{Arrangement, NoiseKind, NoiseSpec};
use qteleport::optimizer::{classify, optimize, SearchConfig, Target};
use qteleport::protocol::outcome_label;

fn main() {
    // Strongly damped input, mildly damped Bob qubit.
    let arr = Arrangement::new(
        NoiseSpec::new(NoiseKind::AmplitudeDamping, 0.8).unwrap(),
        NoiseSpec::none(),
        NoiseSpec::new(NoiseKind::AmplitudeDamping, 0.25).unwrap(),
    );
    println!("arrangement {arr}\n");

    println!(
        "{:>10} {:>12} {:>10} {:>10} {:>10} {:>12}",
        "target", "fidelity", "success", "theta*", "phi*", "concurrence"
    );
    let det = optimize(&arr, &SearchConfig::for_arrangement(&arr)).unwrap();
    println!(
        "{:>10} {:>12.8} {:>10.6} {:>10.5} {:>10.5} {:>12.5}",
        "det",
        det.value,
        det.success,
        det.theta_star,
        det.phi_star,
        qteleport::protocol::channel_concurrence(det.theta_star)
    );
    for j in 1..=4 {
        let cfg = SearchConfig::for_arrangement(&arr).with_target(Target::Outcome(j));
        let r = optimize(&arr, &cfg).unwrap();
        println!(
            "{:>10} {:>12.8} {:>10.6} {:>10.5} {:>10.5} {:>12.5}",
            format!("{} ({})", j, outcome_label(j)),
            r.value,
            r.success,
            r.theta_star,
            r.phi_star,
            qteleport::protocol::channel_concurrence(r.theta_star)
        );
    }

    let classification = classify(&arr, &SearchConfig::for_arrangement(&arr)).unwrap();
    let (best_j, best_value) = classification.improving_outcome().expect("improves");
    println!(
        "\npostselecting outcome {best_j} lifts the fidelity from {:.6} to {:.6} \
         (+{:.4}), with theta* {:.4} away from maximal entanglement.",
        classification.deterministic.value,
        best_value,
        best_value - classification.deterministic.value,
        (classification.per_outcome[best_j - 1].as_ref().unwrap().theta_star - FRAC_PI_4).abs()
    );
}
