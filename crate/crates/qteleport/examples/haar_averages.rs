//! Haar-averaged success rates and efficiencies for noise on Bob's qubit,
//! compared against the closed forms these channels admit at the standard
//! protocol angles: depolarizing gives <F> = 1 - p/2, the flip channels
//! give 1 - 2p/3.
//!
//! Run with:
//! ```sh
//! cargo run --example haar_averages
//! ```

use qteleport::ensemble::{average, QuadratureGrid};
use qteleport::noise::{Arrangement, NoiseKind, NoiseSpec};
use qteleport::protocol::ChannelParams;

fn main() {
    let grid = QuadratureGrid::default();
    let params = ChannelParams::standard();

    for (kind, closed_form, label) in [
        (NoiseKind::Depolarizing, &(|p: f64| 1.0 - 0.5 * p) as &dyn Fn(f64) -> f64, "1 - p/2"),
        (NoiseKind::PhaseFlip, &|p: f64| 1.0 - 2.0 * p / 3.0, "1 - 2p/3"),
        (NoiseKind::BitFlip, &|p: f64| 1.0 - 2.0 * p / 3.0, "1 - 2p/3"),
    ] {
        println!("{kind} on Bob's qubit (closed form {label}):");
        println!("{:>6} {:>14} {:>14} {:>10}", "p", "measured <F>", "closed form", "|diff|");
        for k in 0..=5 {
            let p = k as f64 / 5.0;
            let arr = Arrangement::new(
                NoiseSpec::none(),
                NoiseSpec::none(),
                NoiseSpec::new(kind, p).unwrap(),
            );
            let report = average(&params, &arr, &grid).unwrap();
            let expect = closed_form(p);
            println!(
                "{p:>6.2} {:>14.10} {expect:>14.10} {:>10.1e}",
                report.f_det,
                (report.f_det - expect).abs()
            );
        }
        println!();
    }

    // With noise on Bob only, the success rates stay uniform: Alice's
    // side never notices.
    let arr = Arrangement::new(
        NoiseSpec::none(),
        NoiseSpec::none(),
        NoiseSpec::new(NoiseKind::AmplitudeDamping, 0.6).unwrap(),
    );
    let report = average(&params, &arr, &grid).unwrap();
    println!("success rates with damping on Bob only: {:?}", report.qbar);
}
