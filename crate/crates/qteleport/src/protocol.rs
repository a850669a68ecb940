//! A single teleportation run for a fixed input state: joint state, noise,
//! generalized Bell measurement, Bob's correction and per-outcome fidelity.
//!
//! The pipeline follows the density-matrix form of the protocol. Alice and
//! Bob share the partially entangled pair `cosθ|00> + sinθ|11>`; Alice
//! measures her two qubits in the generalized Bell basis parameterized by
//! φ; Bob applies a fixed Pauli correction per outcome. Both angles are
//! free parameters to optimize over.

use num_complex::Complex64;
use rand::Rng;

use crate::noise::{self, Arrangement};
use crate::qlin::{self, ComplexMatrix, Ket};
use crate::{Error, Result};

/// Outcomes with probability below this floor are reported as "never
/// occurs": their conditional state and fidelity stay undefined instead of
/// dividing through by (numerically) zero.
pub const OUTCOME_FLOOR: f64 = 1e-14;

/// Pure input qubit `sqrt(u)|0> + sqrt(1-u) e^{i gamma}|1>`, parameterized
/// by the population `u = α²` and the relative phase `gamma`. These two
/// coordinates make the uniform input-state measure a constant density
/// `1/2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    u: f64,
    gamma: f64,
}

impl InputState {
    pub fn new(u: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::InvalidParameter(format!("u = {u} outside [0, 1]")));
        }
        if !(0.0..=2.0 * std::f64::consts::PI + 1e-12).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} outside [0, 2pi]"
            )));
        }
        Ok(InputState { u, gamma })
    }

    /// Uniform (Haar) sample: `u ~ U[0,1]`, `gamma ~ U[0, 2pi)`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        InputState {
            u: rng.gen::<f64>(),
            gamma: rng.gen::<f64>() * 2.0 * std::f64::consts::PI,
        }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// State vector `α|0> + β e^{i gamma}|1>`.
    pub fn ket(&self) -> Ket {
        let alpha = self.u.sqrt();
        let beta = (1.0 - self.u).sqrt();
        Ket::from_vec(vec![
            Complex64::new(alpha, 0.0),
            Complex64::from_polar(beta, self.gamma),
        ])
    }

    /// Density matrix of the pure input.
    pub fn density(&self) -> ComplexMatrix {
        self.ket().outer()
    }
}

/// The two protocol angles: `theta` sets the entanglement of the shared
/// pair, `phi` the measurement basis.
///
/// The nominal protocol lives in `[0, π/2]`. Angles up to π stay valid:
/// beyond π/2 the second coefficient of the pair (or of the measurement
/// basis) changes sign, which reaches the mirror families of conditional
/// protocols that the sign-definite quadrant cannot express.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    pub theta: f64,
    pub phi: f64,
}

impl ChannelParams {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let pi = std::f64::consts::PI;
        for (name, v) in [("theta", theta), ("phi", phi)] {
            if !(0.0..=pi + 1e-12).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {v} outside [0, pi]"
                )));
            }
        }
        Ok(ChannelParams { theta, phi })
    }

    /// Maximally entangled channel measured in the standard Bell basis.
    pub fn standard() -> Self {
        ChannelParams {
            theta: std::f64::consts::FRAC_PI_4,
            phi: std::f64::consts::FRAC_PI_4,
        }
    }

    /// State vector of the noiseless shared pair `cosθ|00> + sinθ|11>`.
    pub fn channel_ket(&self) -> Ket {
        Ket::from_vec(vec![
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(self.theta.sin(), 0.0),
        ])
    }
}

/// Entanglement (concurrence) of the noiseless pair: `sin 2θ` on the
/// nominal quadrant, zero at θ = 0 and π/2, one at θ = π/4. The absolute
/// value keeps the measure non-negative on the extended domain.
pub fn channel_concurrence(theta: f64) -> f64 {
    (2.0 * theta).sin().abs()
}

/// Member `j` of the generalized Bell basis:
///
/// ```text
/// |B1> = cosφ|00> + sinφ|11>      |B2> = sinφ|00> - cosφ|11>
/// |B3> = cosφ|01> + sinφ|10>      |B4> = sinφ|01> - cosφ|10>
/// ```
///
/// The four kets are orthonormal for every φ; φ = π/4 recovers the
/// standard Bell states Φ+, Φ-, Ψ+, Ψ-.
pub fn bell_ket(j: usize, phi: f64) -> Result<Ket> {
    let (c, s) = (phi.cos(), phi.sin());
    let z = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let amps = match j {
        1 => vec![re(c), z, z, re(s)],
        2 => vec![re(s), z, z, re(-c)],
        3 => vec![z, re(c), re(s), z],
        4 => vec![z, re(s), re(-c), z],
        _ => return Err(Error::OutcomeIndex(j)),
    };
    Ok(Ket::from_vec(amps))
}

/// Conventional label for outcome `j` at φ = π/4.
pub fn outcome_label(j: usize) -> &'static str {
    match j {
        1 => "Phi+",
        2 => "Phi-",
        3 => "Psi+",
        4 => "Psi-",
        _ => "?",
    }
}

/// Bob's fixed correction for outcome `j`:
/// `U1 = 1, U2 = σz, U3 = σx, U4 = σz σx`.
pub fn correction_unitary(j: usize) -> Result<ComplexMatrix> {
    match j {
        1 => Ok(ComplexMatrix::identity(2)),
        2 => Ok(qlin::pauli_z()),
        3 => Ok(qlin::pauli_x()),
        4 => Ok(qlin::pauli_z().mul(&qlin::pauli_x())),
        _ => Err(Error::OutcomeIndex(j)),
    }
}

/// Everything the protocol produces for one measurement outcome.
///
/// `bob_state` and `fidelity` are `None` when the outcome probability is
/// below [`OUTCOME_FLOOR`] and the conditional state is undefined.
#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    /// Outcome index, 1..=4.
    pub j: usize,
    /// Probability `Q_j` that Alice measures this outcome.
    pub probability: f64,
    /// Bob's corrected conditional state.
    pub bob_state: Option<ComplexMatrix>,
    /// Overlap of Bob's state with the original pure input.
    pub fidelity: Option<f64>,
}

/// Runs the full pipeline for one input state: builds the joint state,
/// applies the noise arrangement, projects on each generalized Bell
/// outcome, traces out Alice and applies Bob's correction.
pub fn run(
    input: &InputState,
    params: &ChannelParams,
    arr: &Arrangement,
) -> Result<[ProtocolOutcome; 4]> {
    let rho = qlin::tensor(&input.density(), &params.channel_ket().outer());
    let noisy = noise::apply_arrangement(arr, &rho)?;
    let psi = input.ket();

    let mut outcomes = Vec::with_capacity(4);
    for j in 1..=4 {
        let projector = qlin::tensor(&bell_ket(j, params.phi)?.outer(), &ComplexMatrix::identity(2));
        let sandwiched = projector.mul(&noisy).mul(&projector);
        let unnormalized = qlin::partial_trace_12(&sandwiched)?;
        let q = unnormalized.trace().re;
        if q < OUTCOME_FLOOR {
            outcomes.push(ProtocolOutcome {
                j,
                probability: q.max(0.0),
                bob_state: None,
                fidelity: None,
            });
            continue;
        }
        let u = correction_unitary(j)?;
        let bob = u.mul(&unnormalized.scale_re(1.0 / q)).mul(&u.adjoint());
        let fidelity = psi.expectation(&bob).re;
        outcomes.push(ProtocolOutcome {
            j,
            probability: q,
            bob_state: Some(bob),
            fidelity: Some(fidelity),
        });
    }
    Ok(outcomes.try_into().expect("exactly four outcomes"))
}

/// Precomputed pipeline for one `(params, arrangement)` pair, for sweeps
/// that evaluate many input states.
///
/// The noise acts independently per qubit, so the noisy joint state
/// factors as `N_I(rho_in) ⊗ (N_A ⊗ N_B)(rho_ch)`; the channel factor and
/// the measurement data are computed once. `evaluate` agrees with [`run`]
/// to roundoff (see the tests) and is pure, so one evaluator can be shared
/// by many worker threads.
#[derive(Debug, Clone)]
pub struct Evaluator {
    input_kraus: Vec<ComplexMatrix>,
    noisy_channel: ComplexMatrix,
    bells: [Ket; 4],
    corrections: [ComplexMatrix; 4],
}

impl Evaluator {
    pub fn new(params: &ChannelParams, arr: &Arrangement) -> Result<Self> {
        let rho_ch = params.channel_ket().outer();
        let mut noisy_channel = noise::apply_on_qubit(&rho_ch, &noise::kraus_set(arr.alice), 0, 2);
        noisy_channel = noise::apply_on_qubit(&noisy_channel, &noise::kraus_set(arr.bob), 1, 2);
        let bells = [
            bell_ket(1, params.phi)?,
            bell_ket(2, params.phi)?,
            bell_ket(3, params.phi)?,
            bell_ket(4, params.phi)?,
        ];
        let corrections = [
            correction_unitary(1)?,
            correction_unitary(2)?,
            correction_unitary(3)?,
            correction_unitary(4)?,
        ];
        Ok(Evaluator {
            input_kraus: noise::kraus_set(arr.input),
            noisy_channel,
            bells,
            corrections,
        })
    }

    /// Unnormalized conditional 2x2 operator on Bob's qubit for outcome
    /// index `idx`, as a stack-allocated row-major block:
    /// `N[m, n] = sum b*_{q1 q2} b_{q1' q2'} rho_in[q1, q1']
    ///            rho_ch[(q2 m), (q2' n)]`.
    fn conditional_block(&self, idx: usize, noisy_in: &[Complex64; 4]) -> [Complex64; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let bell = &self.bells[idx];
        let mut cond = [zero; 4];
        for q1 in 0..2 {
            for q2 in 0..2 {
                let bl = bell.amplitude(2 * q1 + q2).conj();
                if bl == zero {
                    continue;
                }
                for q1p in 0..2 {
                    for q2p in 0..2 {
                        let br = bell.amplitude(2 * q1p + q2p);
                        if br == zero {
                            continue;
                        }
                        let w = bl * br * noisy_in[2 * q1 + q1p];
                        for m in 0..2 {
                            for n in 0..2 {
                                cond[2 * m + n] +=
                                    w * self.noisy_channel[(2 * q2 + m, 2 * q2p + n)];
                            }
                        }
                    }
                }
            }
        }
        cond
    }

    /// Input density matrix after its own noise channel, as a flat block.
    fn noisy_input_block(&self, input: &InputState) -> [Complex64; 4] {
        let zero = Complex64::new(0.0, 0.0);
        let alpha = Complex64::new(input.u.sqrt(), 0.0);
        let beta = Complex64::from_polar((1.0 - input.u).sqrt(), input.gamma);
        let rho = [
            alpha * alpha.conj(),
            alpha * beta.conj(),
            beta * alpha.conj(),
            beta * beta.conj(),
        ];
        let mut out = [zero; 4];
        for k in &self.input_kraus {
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = zero;
                    for a in 0..2 {
                        for b in 0..2 {
                            acc += k[(i, a)] * rho[2 * a + b] * k[(j, b)].conj();
                        }
                    }
                    out[2 * i + j] += acc;
                }
            }
        }
        out
    }

    /// Per-outcome probability and fidelity without materializing Bob's
    /// state; this is the inner loop of every average and every optimizer
    /// step.
    pub fn probabilities_and_fidelities(&self, input: &InputState) -> [(f64, Option<f64>); 4] {
        let noisy_in = self.noisy_input_block(input);
        let psi = input.ket();
        let (a, b) = (psi.amplitude(0), psi.amplitude(1));

        std::array::from_fn(|idx| {
            let cond = self.conditional_block(idx, &noisy_in);
            let q = (cond[0] + cond[3]).re;
            if q < OUTCOME_FLOOR {
                return (q.max(0.0), None);
            }
            // F = <psi| U (N/q) U† |psi> = <chi| N |chi> / q with
            // chi = U† psi.
            let u = &self.corrections[idx];
            let chi0 = u[(0, 0)].conj() * a + u[(1, 0)].conj() * b;
            let chi1 = u[(0, 1)].conj() * a + u[(1, 1)].conj() * b;
            let num = chi0.conj() * (cond[0] * chi0 + cond[1] * chi1)
                + chi1.conj() * (cond[2] * chi0 + cond[3] * chi1);
            (q, Some(num.re / q))
        })
    }

    /// Per-outcome probabilities, fidelities and Bob states for one input
    /// state; agrees with [`run`].
    pub fn evaluate(&self, input: &InputState) -> [ProtocolOutcome; 4] {
        let noisy_in = self.noisy_input_block(input);
        let psi = input.ket();

        std::array::from_fn(|idx| {
            let j = idx + 1;
            let cond = self.conditional_block(idx, &noisy_in);
            let q = (cond[0] + cond[3]).re;
            if q < OUTCOME_FLOOR {
                return ProtocolOutcome {
                    j,
                    probability: q.max(0.0),
                    bob_state: None,
                    fidelity: None,
                };
            }
            let unnormalized = ComplexMatrix::from_vec(2, 2, cond.to_vec());
            let u = &self.corrections[idx];
            let bob = u.mul(&unnormalized.scale_re(1.0 / q)).mul(&u.adjoint());
            let fidelity = psi.expectation(&bob).re;
            ProtocolOutcome {
                j,
                probability: q,
                bob_state: Some(bob),
                fidelity: Some(fidelity),
            }
        })
    }
}
