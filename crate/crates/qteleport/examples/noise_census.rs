//! The full noise census: all 16 noise-kind pairs of each of the three
//! scenarios, classified as improved (some postselected outcome beats the
//! optimal deterministic protocol through an entangled channel) or
//! coincident.
//!
//! Expect 4 / 7 / 6 improved cases in scenarios 1 / 2 / 3, seventeen in
//! all, each involving amplitude damping somewhere.
//!
//! This runs a few thousand optimizations; a couple of minutes in
//! release mode.
//!
//! ```sh
//! cargo run --release --example noise_census
//! ```

use std::time::Instant;

use qteleport::sweep::{run_census, CensusOptions};

fn main() {
    let opts = CensusOptions::default();
    println!(
        "classifying 48 cases at probability levels {:?} per free axis...",
        opts.levels
    );
    let start = Instant::now();
    let report = run_census(&opts).unwrap();
    println!("done in {:.0?}\n", start.elapsed());

    let mut current = 0;
    for case in &report.cases {
        if case.scenario.number() != current {
            current = case.scenario.number();
            println!("scenario {current}:");
        }
        let verdict = if case.improved { "IMPROVED" } else { "coincident" };
        let best = case
            .evaluations
            .iter()
            .filter_map(|e| {
                e.classification.improving_outcome().map(|(j, v)| {
                    (j, v - e.classification.deterministic.value)
                })
            })
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        match best {
            Some((j, gain)) => {
                println!("  {:11} {verdict} (outcome {j}, best gain {gain:+.4})", case.code())
            }
            None => println!("  {:11} {verdict}", case.code()),
        }
    }

    println!(
        "\nimproved per scenario: {} / {} / {} (total {})",
        report.improved_counts[0],
        report.improved_counts[1],
        report.improved_counts[2],
        report.total_improved()
    );
    for case in &report.cases {
        if case.improved {
            assert!(case.has_amplitude_damping());
        }
    }
    println!("every improved case involves amplitude damping on some qubit.");
}
