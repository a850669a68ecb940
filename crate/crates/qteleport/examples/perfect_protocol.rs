//! The baseline: teleporting through a maximally entangled pair with a
//! standard Bell measurement and no noise is deterministic and perfect.
//!
//! Run with:
//! ```sh
//! cargo run --example perfect_protocol
//! ```

use qteleport::ensemble::{average, QuadratureGrid};
use qteleport::noise::Arrangement;
use qteleport::protocol::{self, ChannelParams, InputState};

fn main() {
    let params = ChannelParams::standard(); // theta = phi = pi/4
    let arr = Arrangement::noiseless();

    // A few concrete inputs, run one at a time.
    println!("single runs (u = |alpha|^2, gamma = relative phase):");
    for (u, gamma) in [(1.0, 0.0), (0.5, 0.0), (0.3, 2.1), (0.85, 4.4)] {
        let input = InputState::new(u, gamma).unwrap();
        let outcomes = protocol::run(&input, &params, &arr).unwrap();
        print!("  u={u:.2} gamma={gamma:.1}:");
        for o in &outcomes {
            print!(
                "  Q{}={:.4} F{}={:.4}",
                o.j,
                o.probability,
                o.j,
                o.fidelity.unwrap()
            );
        }
        println!();
    }

    // The Haar average over all inputs tells the same story.
    let report = average(&params, &arr, &QuadratureGrid::default()).unwrap();
    println!("\nHaar averages:");
    for j in 1..=4 {
        println!(
            "  outcome {} ({}): success {:.6}, efficiency {:.6}",
            j,
            protocol::outcome_label(j),
            report.qbar[j - 1],
            report.fbar[j - 1].unwrap()
        );
    }
    println!("  deterministic average fidelity: {:.6}", report.f_det);

    assert!((report.f_det - 1.0).abs() < 1e-12);
    println!("\nevery outcome fires with probability 1/4 and fidelity 1.");
}
