//! The four noise channels and their Kraus operators: bit flip, phase
//! flip, depolarizing and amplitude damping, each trace preserving, each
//! acting independently on one qubit of the protocol.
//!
//! Run with:
//! ```sh
//! cargo run --example kraus_channels
//! ```

use qteleport::noise::{apply_single, kraus_set, NoiseKind, NoiseSpec};
use qteleport::qlin::ComplexMatrix;

fn print_matrix(label: &str, m: &ComplexMatrix) {
    println!("  {label}:");
    for i in 0..m.rows() {
        print!("    ");
        for j in 0..m.cols() {
            let z = m[(i, j)];
            if z.im.abs() < 1e-12 {
                print!("{:>8.4} ", z.re);
            } else {
                print!("{:>8.4}{:+.4}i ", z.re, z.im);
            }
        }
        println!();
    }
}

fn main() {
    let p = 0.3;
    for kind in NoiseKind::ALL {
        let spec = NoiseSpec::new(kind, p).unwrap();
        let ops = kraus_set(spec);
        println!("{kind} at p = {p}: {} Kraus operators", ops.len());
        for (i, op) in ops.iter().enumerate() {
            print_matrix(&format!("E{}", i + 1), op);
        }
        // Trace preservation: sum E†E = identity.
        let mut sum = ComplexMatrix::zeros(2, 2);
        for op in &ops {
            sum = sum.add(&op.adjoint().mul(op));
        }
        let defect = sum.max_abs_diff(&ComplexMatrix::identity(2));
        println!("  completeness defect: {defect:.2e}\n");
    }

    // Full-strength showcases: |+><+| through each channel at p = 1.
    let plus = qteleport::protocol::InputState::new(0.5, 0.0).unwrap().density();
    println!("|+><+| through each channel at p = 1:");
    for kind in NoiseKind::ALL {
        let out = apply_single(NoiseSpec::new(kind, 1.0).unwrap(), &plus).unwrap();
        print_matrix(&kind.to_string(), &out);
    }
    println!("\nbit flip leaves |+> alone, depolarizing mixes it, damping resets to |0>.");
}
