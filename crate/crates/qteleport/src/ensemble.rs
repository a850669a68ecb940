//! Averages over a uniform (Haar) distribution of input states.
//!
//! With the input written as `sqrt(u)|0> + sqrt(1-u) e^{i gamma}|1>`, the
//! uniform measure is the constant density `1/2π` over
//! `(u, gamma) ∈ [0,1] × [0,2π)`. Three quantities are produced per
//! configuration `(θ, φ, arrangement)`:
//!
//! - the success rate `Qbar_j = ∬ (1/2π) Q_j du dγ` of postselecting
//!   outcome `j`,
//! - the postselected efficiency
//!   `Fbar_j = ∬ F_j Q_j du dγ / ∬ Q_j du dγ`, and
//! - the deterministic benchmark `F_det = Σ_j ∬ (1/2π) Q_j F_j du dγ`,
//!   i.e. the average fidelity when every outcome is accepted.
//!
//! After the γ-average the integrands are polynomials of degree ≤ 2 in
//! `u`, and the γ-dependence is a trigonometric polynomial of degree ≤ 2,
//! so the default 6-point Gauss–Legendre × 8-point uniform grid is exact
//! to roundoff. A seeded Monte-Carlo estimator over the same measure
//! serves as an independent oracle.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::noise::Arrangement;
use crate::protocol::{ChannelParams, Evaluator, InputState};
use crate::{Error, Result};

/// Default floor below which an averaged success rate is treated as zero
/// and the corresponding efficiency as undefined. Matches the eight-digit
/// precision used when hunting zero-success degenerate optima.
pub const AVERAGE_FLOOR: f64 = 1e-8;

/// Product quadrature rule for the input-state measure: Gauss–Legendre in
/// `u` on [0, 1] times a uniform rule in `gamma` on [0, 2π).
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    u_nodes: Vec<(f64, f64)>,
    gamma_count: usize,
    q_floor: f64,
}

impl QuadratureGrid {
    /// `u_order`-point Gauss–Legendre in `u` times `gamma_count` uniform
    /// points in `gamma`.
    pub fn new(u_order: usize, gamma_count: usize) -> Self {
        assert!(u_order >= 1 && gamma_count >= 1);
        QuadratureGrid {
            u_nodes: gauss_legendre_unit(u_order),
            gamma_count,
            q_floor: AVERAGE_FLOOR,
        }
    }

    /// Same nodes, different undefined-efficiency floor.
    pub fn with_floor(mut self, q_floor: f64) -> Self {
        self.q_floor = q_floor;
        self
    }

    /// Nodes and weights in `u`; the weights sum to one.
    pub fn u_nodes(&self) -> &[(f64, f64)] {
        &self.u_nodes
    }

    pub fn gamma_count(&self) -> usize {
        self.gamma_count
    }

    pub fn q_floor(&self) -> f64 {
        self.q_floor
    }

    /// Equally spaced phase nodes on [0, 2π).
    pub fn gamma_nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.gamma_count;
        (0..n).map(move |k| 2.0 * std::f64::consts::PI * k as f64 / n as f64)
    }
}

impl Default for QuadratureGrid {
    /// 6-point Gauss–Legendre × 8 phases: strictly more than the exactness
    /// class requires, at 48 protocol runs per average.
    fn default() -> Self {
        QuadratureGrid::new(6, 8)
    }
}

/// Gauss–Legendre nodes and weights mapped to [0, 1]; weights sum to 1.
/// Newton iteration on the Legendre recurrence, good to machine precision
/// for the small orders used here.
fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut nodes = Vec::with_capacity(n);
    for i in 1..=n {
        // Chebyshev-like initial guess for the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes.push((0.5 * (x + 1.0), 0.5 * w));
    }
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    nodes
}

/// Legendre polynomial `P_n(x)` and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Haar-averaged protocol performance at a fixed configuration.
#[derive(Debug, Clone)]
pub struct AverageReport {
    pub arrangement: Arrangement,
    pub params: ChannelParams,
    /// Success rate per outcome; sums to one.
    pub qbar: [f64; 4],
    /// Postselected efficiency per outcome; `None` when the success rate
    /// is below the grid floor.
    pub fbar: [Option<f64>; 4],
    /// Deterministic benchmark: average fidelity accepting all outcomes.
    pub f_det: f64,
}

impl AverageReport {
    /// `Σ_{j in S} Qbar_j` and the combined postselected efficiency for an
    /// accepted outcome set.
    pub fn postselect(&self, outcomes: &[usize]) -> Result<(f64, f64)> {
        average_postselected(self, outcomes)
    }
}

/// Quadrature evaluation of the three averaged quantities.
pub fn average(params: &ChannelParams, arr: &Arrangement, grid: &QuadratureGrid) -> Result<AverageReport> {
    let eval = Evaluator::new(params, arr)?;
    let inv_gamma = 1.0 / grid.gamma_count() as f64;

    let mut qbar = [0.0f64; 4];
    let mut qf = [0.0f64; 4];
    for &(u, w_u) in grid.u_nodes() {
        for gamma in grid.gamma_nodes() {
            let weight = w_u * inv_gamma;
            let input = InputState::new(u, gamma)?;
            for (idx, &(q, f)) in eval.probabilities_and_fidelities(&input).iter().enumerate() {
                qbar[idx] += weight * q;
                if let Some(f) = f {
                    qf[idx] += weight * q * f;
                }
            }
        }
    }

    let fbar = std::array::from_fn(|idx| {
        if qbar[idx] >= grid.q_floor() {
            Some(qf[idx] / qbar[idx])
        } else {
            None
        }
    });
    Ok(AverageReport {
        arrangement: *arr,
        params: *params,
        qbar,
        fbar,
        f_det: qf.iter().sum(),
    })
}

/// Combined success rate and efficiency when accepting every outcome in
/// `outcomes` (1-based indices).
pub fn average_postselected(report: &AverageReport, outcomes: &[usize]) -> Result<(f64, f64)> {
    if outcomes.is_empty() {
        return Err(Error::EmptySelection);
    }
    let mut success = 0.0;
    let mut weighted = 0.0;
    for &j in outcomes {
        if !(1..=4).contains(&j) {
            return Err(Error::OutcomeIndex(j));
        }
        success += report.qbar[j - 1];
        // Outcomes with undefined efficiency have success below the floor
        // and contribute nothing measurable.
        weighted += report.qbar[j - 1] * report.fbar[j - 1].unwrap_or(0.0);
    }
    if success < AVERAGE_FLOOR {
        return Err(Error::ZeroSuccess);
    }
    Ok((success, weighted / success))
}

/// Monte-Carlo estimate of an [`AverageReport`] with standard errors.
#[derive(Debug, Clone)]
pub struct MonteCarloReport {
    pub arrangement: Arrangement,
    pub params: ChannelParams,
    pub samples: usize,
    pub seed: u64,
    pub qbar: [f64; 4],
    pub qbar_se: [f64; 4],
    /// Ratio estimate of each postselected efficiency with its
    /// delta-method standard error; `None` when the estimated success rate
    /// is below the average floor.
    pub fbar: [Option<f64>; 4],
    pub fbar_se: [Option<f64>; 4],
    pub f_det: f64,
    pub f_det_se: f64,
}

/// Independent sampling oracle for [`average`]: draws
/// `u ~ U[0,1], gamma ~ U[0,2π)` from a seeded generator and estimates
/// every averaged quantity empirically, through the plain single-run
/// pipeline rather than the quadrature evaluator.
pub fn monte_carlo_average(
    params: &ChannelParams,
    arr: &Arrangement,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<InputState> = (0..samples).map(|_| InputState::random(&mut rng)).collect();

    // Per-sample moments: q_j, (q f)_j, squares and cross terms needed for
    // the delta-method errors, plus the all-outcome fidelity sum.
    #[derive(Clone, Default)]
    struct Acc {
        q: [f64; 4],
        qq: [f64; 4],
        qf: [f64; 4],
        qfqf: [f64; 4],
        q_qf: [f64; 4],
        det: f64,
        det2: f64,
        n: usize,
    }

    impl Acc {
        fn merge(mut self, other: &Acc) -> Acc {
            for i in 0..4 {
                self.q[i] += other.q[i];
                self.qq[i] += other.qq[i];
                self.qf[i] += other.qf[i];
                self.qfqf[i] += other.qfqf[i];
                self.q_qf[i] += other.q_qf[i];
            }
            self.det += other.det;
            self.det2 += other.det2;
            self.n += other.n;
            self
        }
    }

    // Fixed chunking plus an ordered fold keeps the reduction identical
    // for any worker count.
    let partials: Vec<Acc> = inputs
        .par_chunks(1024)
        .map(|chunk| {
            let mut acc = Acc::default();
            for input in chunk {
                let outcomes = crate::protocol::run(input, params, arr).expect("valid inputs");
                let mut det = 0.0;
                for (i, o) in outcomes.iter().enumerate() {
                    let q = o.probability;
                    let qf = q * o.fidelity.unwrap_or(0.0);
                    acc.q[i] += q;
                    acc.qq[i] += q * q;
                    acc.qf[i] += qf;
                    acc.qfqf[i] += qf * qf;
                    acc.q_qf[i] += q * qf;
                    det += qf;
                }
                acc.det += det;
                acc.det2 += det * det;
                acc.n += 1;
            }
            acc
        })
        .collect();
    let acc = partials.iter().fold(Acc::default(), |a, b| a.merge(b));

    let n = acc.n as f64;
    let mut qbar = [0.0; 4];
    let mut qbar_se = [0.0; 4];
    let mut fbar = [None; 4];
    let mut fbar_se = [None; 4];
    for i in 0..4 {
        let mean_q = acc.q[i] / n;
        let var_q = (acc.qq[i] / n - mean_q * mean_q).max(0.0);
        qbar[i] = mean_q;
        qbar_se[i] = (var_q / n).sqrt();

        if mean_q >= AVERAGE_FLOOR {
            let mean_qf = acc.qf[i] / n;
            let r = mean_qf / mean_q;
            let var_qf = (acc.qfqf[i] / n - mean_qf * mean_qf).max(0.0);
            let cov = acc.q_qf[i] / n - mean_q * mean_qf;
            // Var(qf - r q) / (n mean_q²), the delta-method error of the
            // ratio estimator.
            let var_resid = (var_qf + r * r * var_q - 2.0 * r * cov).max(0.0);
            fbar[i] = Some(r);
            fbar_se[i] = Some((var_resid / n).sqrt() / mean_q);
        }
    }
    let f_det = acc.det / n;
    let var_det = (acc.det2 / n - f_det * f_det).max(0.0);

    Ok(MonteCarloReport {
        arrangement: *arr,
        params: *params,
        samples,
        seed,
        qbar,
        qbar_se,
        fbar,
        fbar_se,
        f_det,
        f_det_se: (var_det / n).sqrt(),
    })
}
