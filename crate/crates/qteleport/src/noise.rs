//! Kraus-operator noise channels and their independent action on the three
//! protocol qubits (input, Alice's channel half, Bob's channel half).
//!
//! Every channel is trace preserving: its operators satisfy
//! `sum_j E_j† E_j = 1`, and a state evolves as `rho -> sum_j E_j rho E_j†`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::qlin::{self, ComplexMatrix};
use crate::{Error, Result};

/// The supported single-qubit noise channels. `None` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    None,
    BitFlip,
    PhaseFlip,
    Depolarizing,
    AmplitudeDamping,
}

impl NoiseKind {
    /// The four non-trivial channels, in a fixed order.
    pub const ALL: [NoiseKind; 4] = [
        NoiseKind::BitFlip,
        NoiseKind::PhaseFlip,
        NoiseKind::Depolarizing,
        NoiseKind::AmplitudeDamping,
    ];

    /// Short code used in arrangement strings and CSV output.
    pub fn code(self) -> &'static str {
        match self {
            NoiseKind::None => "NONE",
            NoiseKind::BitFlip => "BF",
            NoiseKind::PhaseFlip => "PF",
            NoiseKind::Depolarizing => "D",
            NoiseKind::AmplitudeDamping => "AD",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NONE" => Ok(NoiseKind::None),
            "BF" => Ok(NoiseKind::BitFlip),
            "PF" => Ok(NoiseKind::PhaseFlip),
            "D" => Ok(NoiseKind::Depolarizing),
            "AD" => Ok(NoiseKind::AmplitudeDamping),
            other => Err(Error::BadNoiseCode(other.to_string())),
        }
    }
}

/// One channel applied to one qubit: a kind plus the probability `p` that
/// the noise has acted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub p: f64,
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(NoiseSpec { kind, p })
    }

    /// The identity channel.
    pub fn none() -> Self {
        NoiseSpec {
            kind: NoiseKind::None,
            p: 0.0,
        }
    }
}

/// Kraus operators of the channel, each 2x2, with
/// `sum E† E = 1` by construction.
pub fn kraus_set(spec: NoiseSpec) -> Vec<ComplexMatrix> {
    let p = spec.p;
    match spec.kind {
        NoiseKind::None => vec![ComplexMatrix::identity(2)],
        NoiseKind::BitFlip => vec![
            ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt()),
            qlin::pauli_x().scale_re(p.sqrt()),
        ],
        NoiseKind::PhaseFlip => vec![
            ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt()),
            qlin::pauli_z().scale_re(p.sqrt()),
        ],
        NoiseKind::Depolarizing => vec![
            ComplexMatrix::identity(2).scale_re((1.0 - 0.75 * p).sqrt()),
            qlin::pauli_x().scale_re((0.25 * p).sqrt()),
            qlin::pauli_y().scale_re((0.25 * p).sqrt()),
            qlin::pauli_z().scale_re((0.25 * p).sqrt()),
        ],
        NoiseKind::AmplitudeDamping => vec![
            ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - p).sqrt()]),
            ComplexMatrix::from_real(2, 2, &[0.0, p.sqrt(), 0.0, 0.0]),
        ],
    }
}

/// Applies the channel's Kraus operators to the qubit at `pos` (counted
/// from the most significant bit) of a `2^n`-dimensional operator.
///
/// Used internally for both the single-qubit action and the three-qubit
/// composite; channels on disjoint qubits commute, so applying them in
/// sequence equals the full sum over tensor-product Kraus combinations.
pub(crate) fn apply_on_qubit(
    rho: &ComplexMatrix,
    kraus: &[ComplexMatrix],
    pos: usize,
    n_qubits: usize,
) -> ComplexMatrix {
    let dim = 1usize << n_qubits;
    debug_assert_eq!((rho.rows(), rho.cols()), (dim, dim));
    let shift = n_qubits - 1 - pos;
    let mask = 1usize << shift;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        for i in 0..dim {
            let bi = (i & mask) >> shift;
            for j in 0..dim {
                let bj = (j & mask) >> shift;
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..2 {
                    let ka = k[(bi, a)];
                    if ka == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let ia = (i & !mask) | (a << shift);
                    for b in 0..2 {
                        let kb = k[(bj, b)].conj();
                        if kb == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let jb = (j & !mask) | (b << shift);
                        acc += ka * rho[(ia, jb)] * kb;
                    }
                }
                out[(i, j)] += acc;
            }
        }
    }
    out
}

/// Action of a single channel on a one-qubit density matrix.
pub fn apply_single(spec: NoiseSpec, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if (rho.rows(), rho.cols()) != (2, 2) {
        return Err(Error::dims(
            "apply_single",
            "2x2",
            format!("{}x{}", rho.rows(), rho.cols()),
        ));
    }
    rho.check_density(1e-10)?;
    Ok(apply_on_qubit(rho, &kraus_set(spec), 0, 1))
}

/// Which noise acts on each of the three qubits. Qubit order is fixed as
/// (input, Alice's channel half, Bob's channel half).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrangement {
    pub input: NoiseSpec,
    pub alice: NoiseSpec,
    pub bob: NoiseSpec,
}

impl Arrangement {
    pub fn new(input: NoiseSpec, alice: NoiseSpec, bob: NoiseSpec) -> Self {
        Arrangement { input, alice, bob }
    }

    /// Fully noiseless arrangement.
    pub fn noiseless() -> Self {
        Arrangement {
            input: NoiseSpec::none(),
            alice: NoiseSpec::none(),
            bob: NoiseSpec::none(),
        }
    }

    /// Kind triple as a comma-joined code, e.g. `"AD,NONE,PF"`.
    /// Probabilities are not part of the code.
    pub fn code(&self) -> String {
        format!("{},{},{}", self.input.kind, self.alice.kind, self.bob.kind)
    }

    /// Parses a kind triple such as `"AD,NONE,PF"`; all probabilities are
    /// set to zero and must be bound separately.
    pub fn parse_code(code: &str) -> Result<Self> {
        let parts: Vec<&str> = code.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::BadArrangementCode(code.to_string()));
        }
        let kind = |s: &str| -> Result<NoiseKind> {
            s.parse()
                .map_err(|_| Error::BadArrangementCode(code.to_string()))
        };
        Ok(Arrangement {
            input: NoiseSpec {
                kind: kind(parts[0])?,
                p: 0.0,
            },
            alice: NoiseSpec {
                kind: kind(parts[1])?,
                p: 0.0,
            },
            bob: NoiseSpec {
                kind: kind(parts[2])?,
                p: 0.0,
            },
        })
    }

    pub fn specs(&self) -> [NoiseSpec; 3] {
        [self.input, self.alice, self.bob]
    }

    /// True when any qubit is subjected to amplitude damping.
    pub fn has_amplitude_damping(&self) -> bool {
        self.specs()
            .iter()
            .any(|s| s.kind == NoiseKind::AmplitudeDamping)
    }

    /// True when both halves of the entangled channel suffer amplitude
    /// damping; this is the regime with degenerate zero-success optima.
    pub fn channel_is_amplitude_damped(&self) -> bool {
        self.alice.kind == NoiseKind::AmplitudeDamping && self.bob.kind == NoiseKind::AmplitudeDamping
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({}),{}({}),{}({})",
            self.input.kind, self.input.p, self.alice.kind, self.alice.p, self.bob.kind, self.bob.p
        )
    }
}

/// Composite action of the arrangement on the 8x8 three-qubit state:
/// the sum over all Kraus combinations
/// `(E_i ⊗ F_j ⊗ G_k) rho (E_i ⊗ F_j ⊗ G_k)†`,
/// computed one qubit at a time.
pub fn apply_arrangement(arr: &Arrangement, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    if (rho.rows(), rho.cols()) != (8, 8) {
        return Err(Error::dims(
            "apply_arrangement",
            "8x8",
            format!("{}x{}", rho.rows(), rho.cols()),
        ));
    }
    let mut state = rho.clone();
    for (pos, spec) in arr.specs().into_iter().enumerate() {
        if spec.kind == NoiseKind::None {
            continue;
        }
        state = apply_on_qubit(&state, &kraus_set(spec), pos, 3);
    }
    Ok(state)
}

/// An axis along which a probability sweep can move, together with the
/// per-scenario bindings (`Channel` sets Alice and Bob equal, `AliceSide`
/// sets input and Alice equal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbAxis {
    Input,
    Alice,
    Bob,
    /// Both halves of the entangled channel: p_A = p_B = p.
    Channel,
    /// Both qubits on Alice's side: p_I = p_A = p.
    AliceSide,
}

impl ProbAxis {
    /// Returns `arr` with the axis probability set to `p`.
    pub fn with_p(self, arr: &Arrangement, p: f64) -> Arrangement {
        let mut out = *arr;
        match self {
            ProbAxis::Input => out.input.p = p,
            ProbAxis::Alice => out.alice.p = p,
            ProbAxis::Bob => out.bob.p = p,
            ProbAxis::Channel => {
                out.alice.p = p;
                out.bob.p = p;
            }
            ProbAxis::AliceSide => {
                out.input.p = p;
                out.alice.p = p;
            }
        }
        out
    }
}

impl fmt::Display for ProbAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProbAxis::Input => "pI",
            ProbAxis::Alice => "pA",
            ProbAxis::Bob => "pB",
            ProbAxis::Channel => "p=pA=pB",
            ProbAxis::AliceSide => "p=pI=pA",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlin::{partial_trace_12, tensor, Ket, TOL};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn spec(kind: NoiseKind, p: f64) -> NoiseSpec {
        NoiseSpec::new(kind, p).unwrap()
    }

    fn completeness_defect(ops: &[ComplexMatrix]) -> f64 {
        let mut acc = ComplexMatrix::zeros(2, 2);
        for e in ops {
            acc = acc.add(&e.adjoint().mul(e));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(2))
    }

    #[test]
    fn kraus_set_shapes_match_definitions() {
        let p = 0.37;
        let bf = kraus_set(spec(NoiseKind::BitFlip, p));
        assert_eq!(bf.len(), 2);
        assert!(bf[0]
            .max_abs_diff(&ComplexMatrix::identity(2).scale_re((1.0 - p).sqrt()))
            == 0.0);
        assert!(bf[1].max_abs_diff(&qlin::pauli_x().scale_re(p.sqrt())) == 0.0);

        let ad = kraus_set(spec(NoiseKind::AmplitudeDamping, p));
        assert_eq!(ad.len(), 2);
        assert!((ad[0][(1, 1)].re - (1.0 - p).sqrt()).abs() < TOL);
        assert!((ad[1][(0, 1)].re - p.sqrt()).abs() < TOL);
        assert_eq!(ad[1][(1, 0)].re, 0.0);

        let none = kraus_set(spec(NoiseKind::None, 0.9));
        assert_eq!(none.len(), 1);
        assert!(none[0].max_abs_diff(&ComplexMatrix::identity(2)) == 0.0);

        for s in [
            spec(NoiseKind::BitFlip, p),
            spec(NoiseKind::Depolarizing, p),
        ] {
            let n = kraus_set(s).len();
            assert!((1..=4).contains(&n));
        }
    }

    #[test]
    fn kraus_sets_trace_preserving_for_random_p() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let p: f64 = rng.gen();
            for kind in NoiseKind::ALL {
                let defect = completeness_defect(&kraus_set(spec(kind, p)));
                assert!(defect < TOL, "{kind} at p={p}: defect {defect:e}");
            }
        }
        assert!(completeness_defect(&kraus_set(NoiseSpec::none())) < TOL);
    }

    fn random_density_2x2(rng: &mut StdRng) -> ComplexMatrix {
        // rho = A A† / tr(A A†) is always a valid density matrix.
        let entries: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let a = ComplexMatrix::from_vec(2, 2, entries);
        let m = a.mul(&a.adjoint());
        let tr = m.trace().re;
        m.scale_re(1.0 / tr)
    }

    #[test]
    fn bit_flip_at_full_strength_flips() {
        let rho0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let got = apply_single(spec(NoiseKind::BitFlip, 1.0), &rho0).unwrap();
        let rho1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        assert!(got.max_abs_diff(&rho1) < TOL);
    }

    #[test]
    fn depolarizing_at_full_strength_mixes() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let rho = random_density_2x2(&mut rng);
            let got = apply_single(spec(NoiseKind::Depolarizing, 1.0), &rho).unwrap();
            let mixed = ComplexMatrix::identity(2).scale_re(0.5);
            assert!(got.max_abs_diff(&mixed) < TOL);
        }
    }

    #[test]
    fn amplitude_damping_at_full_strength_resets() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..10 {
            let rho = random_density_2x2(&mut rng);
            let got = apply_single(spec(NoiseKind::AmplitudeDamping, 1.0), &rho).unwrap();
            let ground = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
            assert!(got.max_abs_diff(&ground) < TOL);
        }
    }

    #[test]
    fn apply_single_outputs_density_matrices() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..20 {
            let rho = random_density_2x2(&mut rng);
            let p: f64 = rng.gen();
            for kind in NoiseKind::ALL {
                let out = apply_single(spec(kind, p), &rho).unwrap();
                out.check_density(1e-10).unwrap();
            }
        }
    }

    #[test]
    fn apply_single_rejects_garbage() {
        let not_density = ComplexMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(apply_single(spec(NoiseKind::BitFlip, 0.5), &not_density).is_err());
        let wrong_shape = ComplexMatrix::identity(4);
        assert!(matches!(
            apply_single(spec(NoiseKind::BitFlip, 0.5), &wrong_shape),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn arrangement_all_none_is_identity() {
        let mut rng = StdRng::seed_from_u64(19);
        let rho = {
            let a = random_density_2x2(&mut rng);
            let b = random_density_2x2(&mut rng);
            let c = random_density_2x2(&mut rng);
            tensor(&tensor(&a, &b), &c)
        };
        let got = apply_arrangement(&Arrangement::noiseless(), &rho).unwrap();
        assert!(got.max_abs_diff(&rho) == 0.0);
    }

    #[test]
    fn full_depolarizing_on_bob_factorizes() {
        // Noise (None, None, D@1) acting on rho_in ⊗ |B1^theta><B1^theta|
        // yields rho_in ⊗ diag(cos²θ, sin²θ) ⊗ 1/2, by hand expansion.
        let theta = std::f64::consts::FRAC_PI_3;
        let (c, s) = (theta.cos(), theta.sin());
        let mut rng = StdRng::seed_from_u64(23);
        let rho_in = random_density_2x2(&mut rng);
        let b1 = Ket::from_vec(vec![
            Complex64::new(c, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ]);
        let rho = tensor(&rho_in, &b1.outer());
        let arr = Arrangement::new(
            NoiseSpec::none(),
            NoiseSpec::none(),
            spec(NoiseKind::Depolarizing, 1.0),
        );
        let got = apply_arrangement(&arr, &rho).unwrap();

        let alice_marginal = ComplexMatrix::from_real(2, 2, &[c * c, 0.0, 0.0, s * s]);
        let mixed = ComplexMatrix::identity(2).scale_re(0.5);
        let expect = tensor(&rho_in, &tensor(&alice_marginal, &mixed));
        assert!(got.max_abs_diff(&expect) < TOL);

        // Bob's marginal is maximally mixed and trace is preserved.
        let bob = partial_trace_12(&got).unwrap();
        assert!(bob.max_abs_diff(&mixed) < TOL);
        assert!((got.trace().re - 1.0).abs() < TOL);
    }

    #[test]
    fn full_damping_on_input_resets_first_qubit() {
        let mut rng = StdRng::seed_from_u64(29);
        let rho_in = random_density_2x2(&mut rng);
        let (c, s) = (0.9f64.cos(), 0.9f64.sin());
        let b1 = Ket::from_vec(vec![
            Complex64::new(c, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(s, 0.0),
        ]);
        let rho_ch = b1.outer();
        let rho = tensor(&rho_in, &rho_ch);
        let arr = Arrangement::new(
            spec(NoiseKind::AmplitudeDamping, 1.0),
            NoiseSpec::none(),
            NoiseSpec::none(),
        );
        let got = apply_arrangement(&arr, &rho).unwrap();
        let ground = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert!(got.max_abs_diff(&tensor(&ground, &rho_ch)) < TOL);
    }

    /// Reference route: the literal triple sum over tensor-product Kraus
    /// operators, straight from the composite-noise definition.
    fn apply_arrangement_triple_sum(arr: &Arrangement, rho: &ComplexMatrix) -> ComplexMatrix {
        let sets = [
            kraus_set(arr.input),
            kraus_set(arr.alice),
            kraus_set(arr.bob),
        ];
        let mut out = ComplexMatrix::zeros(8, 8);
        for e in &sets[0] {
            for f in &sets[1] {
                for g in &sets[2] {
                    let op = tensor(&tensor(e, f), g);
                    out = out.add(&op.mul(rho).mul(&op.adjoint()));
                }
            }
        }
        out
    }

    fn random_density_8x8(rng: &mut StdRng) -> ComplexMatrix {
        let entries: Vec<Complex64> = (0..64)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let a = ComplexMatrix::from_vec(8, 8, entries);
        let m = a.mul(&a.adjoint());
        let tr = m.trace().re;
        m.scale_re(1.0 / tr)
    }

    #[test]
    fn staged_application_matches_triple_sum() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..10 {
            let rho = random_density_8x8(&mut rng);
            let arr = Arrangement::new(
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
            );
            let fast = apply_arrangement(&arr, &rho).unwrap();
            let reference = apply_arrangement_triple_sum(&arr, &rho);
            assert!(fast.max_abs_diff(&reference) < TOL);
            assert!((fast.trace().re - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn arrangement_factorizes_over_product_states() {
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..10 {
            let (a, b, c) = (
                random_density_2x2(&mut rng),
                random_density_2x2(&mut rng),
                random_density_2x2(&mut rng),
            );
            let arr = Arrangement::new(
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
                spec(NoiseKind::ALL[rng.gen_range(0..4)], rng.gen()),
            );
            let joint = apply_arrangement(&arr, &tensor(&tensor(&a, &b), &c)).unwrap();
            let factored = tensor(
                &tensor(
                    &apply_single(arr.input, &a).unwrap(),
                    &apply_single(arr.alice, &b).unwrap(),
                ),
                &apply_single(arr.bob, &c).unwrap(),
            );
            assert!(joint.max_abs_diff(&factored) < TOL);
        }
    }

    #[test]
    fn channels_are_completely_positive_on_entangled_states() {
        // Apply each channel to one half of a random two-qubit pure state
        // and check the output spectrum stays non-negative.
        let mut rng = StdRng::seed_from_u64(41);
        for kind in NoiseKind::ALL {
            for _ in 0..5 {
                let amps: Vec<Complex64> = (0..4)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                let k = Ket::from_vec(amps.into_iter().map(|a| a / norm).collect());
                let rho = k.outer();
                let out = apply_on_qubit(&rho, &kraus_set(spec(kind, rng.gen())), 0, 2);
                let eigs = out.eigenvalues_hermitian().unwrap();
                assert!(eigs.iter().all(|&e| e >= -1e-10), "{kind}: {eigs:?}");
            }
        }
    }

    #[test]
    fn arrangement_codes_round_trip() {
        let arr = Arrangement::new(
            spec(NoiseKind::AmplitudeDamping, 0.8),
            NoiseSpec::none(),
            spec(NoiseKind::PhaseFlip, 0.3),
        );
        assert_eq!(arr.code(), "AD,NONE,PF");
        let parsed = Arrangement::parse_code("AD,NONE,PF").unwrap();
        assert_eq!(parsed.input.kind, NoiseKind::AmplitudeDamping);
        assert_eq!(parsed.alice.kind, NoiseKind::None);
        assert_eq!(parsed.bob.kind, NoiseKind::PhaseFlip);
        assert!(Arrangement::parse_code("AD,NONE").is_err());
        assert!(Arrangement::parse_code("AD,XX,PF").is_err());
    }

    #[test]
    fn prob_axis_bindings() {
        let base = Arrangement::parse_code("PF,AD,AD").unwrap();
        let bound = ProbAxis::Channel.with_p(&base, 0.3);
        assert_eq!(bound.alice.p, 0.3);
        assert_eq!(bound.bob.p, 0.3);
        assert_eq!(bound.input.p, 0.0);
        let bound = ProbAxis::AliceSide.with_p(&base, 0.7);
        assert_eq!(bound.input.p, 0.7);
        assert_eq!(bound.alice.p, 0.7);
    }

    #[test]
    fn noise_spec_validates_probability() {
        assert!(NoiseSpec::new(NoiseKind::BitFlip, 1.2).is_err());
        assert!(NoiseSpec::new(NoiseKind::BitFlip, -0.1).is_err());
    }

    proptest! {
        #[test]
        fn completeness_holds_for_any_p(p in 0.0f64..=1.0) {
            for kind in NoiseKind::ALL {
                prop_assert!(completeness_defect(&kraus_set(spec(kind, p))) < TOL);
            }
        }
    }
}
