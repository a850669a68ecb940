//! Scenario sweeps, the 48-case noise census and CSV output.
//!
//! Three scenarios fix how the per-qubit noise probabilities are bound:
//!
//! 1. noise on the input qubit and on Bob's channel half (`p_I`, `p_B`
//!    free, Alice's half noiseless);
//! 2. the same noise on both channel halves (`p_A = p_B = p`, `p_I`
//!    free);
//! 3. the same noise on both of Alice's qubits (`p_I = p_A = p`, `p_B`
//!    free).
//!
//! A sweep moves one free axis across a grid, optimizes every requested
//! target at each point and renders the results as rows of a fixed CSV
//! schema. The census classifies all 16 noise-kind pairs of every scenario
//! as improved/coincident at a set of representative probability levels.

use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::ensemble::{self, AverageReport, QuadratureGrid};
use crate::noise::{Arrangement, NoiseKind, NoiseSpec, ProbAxis};
use crate::optimizer::{self, Classification, OptResult, SearchConfig, Target};
use crate::protocol::channel_concurrence;
use crate::{Error, Result, CLASSICAL_FIDELITY_LIMIT};

/// CSV schema shared by sweeps and the census dump.
pub const CSV_HEADER: [&str; 13] = [
    "scenario",
    "arrangement",
    "p_I",
    "p_A",
    "p_B",
    "target",
    "theta_star",
    "phi_star",
    "fidelity",
    "success",
    "concurrence",
    "above_classical",
    "status",
];

/// The three probability-binding patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Input and Bob noisy, Alice's channel half clean.
    InputAndBob,
    /// Both channel halves suffer the same noise for the same time.
    SharedChannel,
    /// Both of Alice's qubits suffer the same noise for the same time.
    AliceSide,
}

impl Scenario {
    pub fn from_number(n: u8) -> Result<Self> {
        match n {
            1 => Ok(Scenario::InputAndBob),
            2 => Ok(Scenario::SharedChannel),
            3 => Ok(Scenario::AliceSide),
            other => Err(Error::InvalidParameter(format!(
                "scenario {other} (expected 1, 2 or 3)"
            ))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Scenario::InputAndBob => 1,
            Scenario::SharedChannel => 2,
            Scenario::AliceSide => 3,
        }
    }

    /// The two independently tunable probability axes.
    pub fn free_axes(self) -> [ProbAxis; 2] {
        match self {
            Scenario::InputAndBob => [ProbAxis::Input, ProbAxis::Bob],
            Scenario::SharedChannel => [ProbAxis::Input, ProbAxis::Channel],
            Scenario::AliceSide => [ProbAxis::AliceSide, ProbAxis::Bob],
        }
    }

    /// Places the two noise kinds with all probabilities zero. `kind_a`
    /// is the input-side noise (input qubit, plus Alice's channel half in
    /// scenario 3); `kind_b` is the partner noise (Bob's half, plus
    /// Alice's half in scenario 2).
    pub fn base_arrangement(self, kind_a: NoiseKind, kind_b: NoiseKind) -> Arrangement {
        let s = |kind| NoiseSpec { kind, p: 0.0 };
        match self {
            Scenario::InputAndBob => Arrangement::new(s(kind_a), NoiseSpec::none(), s(kind_b)),
            Scenario::SharedChannel => Arrangement::new(s(kind_a), s(kind_b), s(kind_b)),
            Scenario::AliceSide => Arrangement::new(s(kind_a), s(kind_a), s(kind_b)),
        }
    }
}

/// One scenario sweep: two noise kinds, one axis fixed, the other swept
/// over a grid.
#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub scenario: Scenario,
    pub kind_a: NoiseKind,
    pub kind_b: NoiseKind,
    pub fixed_axis: ProbAxis,
    pub fixed_p: f64,
    pub sweep_axis: ProbAxis,
    pub grid: Vec<f64>,
}

impl ScenarioSpec {
    pub fn new(
        scenario: Scenario,
        kind_a: NoiseKind,
        kind_b: NoiseKind,
        fixed_axis: ProbAxis,
        fixed_p: f64,
        sweep_axis: ProbAxis,
        grid: Vec<f64>,
    ) -> Result<Self> {
        let axes = scenario.free_axes();
        if !axes.contains(&sweep_axis) || !axes.contains(&fixed_axis) || sweep_axis == fixed_axis {
            return Err(Error::InvalidParameter(format!(
                "scenario {} binds axes {} and {}; got fixed {fixed_axis}, sweep {sweep_axis}",
                scenario.number(),
                axes[0],
                axes[1]
            )));
        }
        if !(0.0..=1.0).contains(&fixed_p) {
            return Err(Error::InvalidProbability(fixed_p));
        }
        if grid.is_empty() || grid.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::InvalidParameter("sweep grid outside [0, 1]".into()));
        }
        Ok(ScenarioSpec {
            scenario,
            kind_a,
            kind_b,
            fixed_axis,
            fixed_p,
            sweep_axis,
            grid,
        })
    }

    /// Arrangement at one sweep position.
    pub fn arrangement_at(&self, p: f64) -> Arrangement {
        let base = self.scenario.base_arrangement(self.kind_a, self.kind_b);
        let fixed = self.fixed_axis.with_p(&base, self.fixed_p);
        self.sweep_axis.with_p(&fixed, p)
    }
}

/// Search settings shared by every point of a sweep or census; angle
/// ranges default to the per-arrangement rule unless overridden.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub theta_range: Option<(f64, f64)>,
    pub phi_range: Option<(f64, f64)>,
    pub coarse_grid: (usize, usize),
    pub refine_iters: usize,
    pub q_min: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        let base = SearchConfig::default();
        SearchOptions {
            theta_range: None,
            phi_range: None,
            coarse_grid: base.coarse_grid,
            refine_iters: base.refine_iters,
            q_min: base.q_min,
        }
    }
}

impl SearchOptions {
    pub fn config_for(&self, arr: &Arrangement, target: Target) -> SearchConfig {
        let mut cfg = SearchConfig::for_arrangement(arr);
        if let Some(r) = self.theta_range {
            cfg.theta_range = r;
        }
        if let Some(r) = self.phi_range {
            cfg.phi_range = r;
        }
        cfg.coarse_grid = self.coarse_grid;
        cfg.refine_iters = self.refine_iters;
        cfg.q_min = self.q_min;
        cfg.target = target;
        cfg
    }
}

/// Whether a sweep point produced a usable optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Infeasible,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Infeasible => "infeasible",
        }
    }
}

/// One CSV row: a (sweep point, target) pair with its optimum.
///
/// Numeric fields are quantized to 12 significant digits at construction,
/// so serializing and re-parsing a row reproduces it bit for bit.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub scenario: u8,
    pub arrangement: String,
    pub p_input: f64,
    pub p_alice: f64,
    pub p_bob: f64,
    pub target: Target,
    pub theta_star: f64,
    pub phi_star: f64,
    pub fidelity: f64,
    pub success: f64,
    pub concurrence: f64,
    pub above_classical: bool,
    pub status: RowStatus,
}

/// Rounds to 12 significant digits; the CSV serialization of the result
/// parses back to the identical `f64`.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

impl SweepRow {
    fn from_result(
        scenario: u8,
        arr: &Arrangement,
        target: &Target,
        result: std::result::Result<&OptResult, ()>,
    ) -> SweepRow {
        match result {
            Ok(r) => SweepRow {
                scenario,
                arrangement: arr.code(),
                p_input: sig12(arr.input.p),
                p_alice: sig12(arr.alice.p),
                p_bob: sig12(arr.bob.p),
                target: target.clone(),
                theta_star: sig12(r.theta_star),
                phi_star: sig12(r.phi_star),
                fidelity: sig12(r.value),
                success: sig12(r.success),
                concurrence: sig12(channel_concurrence(r.theta_star)),
                above_classical: r.value > CLASSICAL_FIDELITY_LIMIT,
                status: RowStatus::Ok,
            },
            Err(()) => SweepRow {
                scenario,
                arrangement: arr.code(),
                p_input: sig12(arr.input.p),
                p_alice: sig12(arr.alice.p),
                p_bob: sig12(arr.bob.p),
                target: target.clone(),
                theta_star: f64::NAN,
                phi_star: f64::NAN,
                fidelity: f64::NAN,
                success: f64::NAN,
                concurrence: f64::NAN,
                above_classical: false,
                status: RowStatus::Infeasible,
            },
        }
    }

    fn to_record(&self) -> [String; 13] {
        [
            self.scenario.to_string(),
            self.arrangement.clone(),
            fmt12(self.p_input),
            fmt12(self.p_alice),
            fmt12(self.p_bob),
            self.target.to_string(),
            fmt12(self.theta_star),
            fmt12(self.phi_star),
            fmt12(self.fidelity),
            fmt12(self.success),
            fmt12(self.concurrence),
            self.above_classical.to_string(),
            self.status.as_str().to_string(),
        ]
    }

    fn from_record(record: &csv::StringRecord) -> Result<SweepRow> {
        if record.len() != CSV_HEADER.len() {
            return Err(Error::Malformed {
                what: "csv row",
                detail: format!("{} fields, expected {}", record.len(), CSV_HEADER.len()),
            });
        }
        let field = |i: usize| record.get(i).unwrap_or("");
        let num = |i: usize| -> Result<f64> {
            field(i).parse().map_err(|_| Error::Malformed {
                what: "csv number",
                detail: field(i).to_string(),
            })
        };
        Ok(SweepRow {
            scenario: field(0).parse().map_err(|_| Error::Malformed {
                what: "csv scenario",
                detail: field(0).to_string(),
            })?,
            arrangement: field(1).to_string(),
            p_input: num(2)?,
            p_alice: num(3)?,
            p_bob: num(4)?,
            target: field(5).parse()?,
            theta_star: num(6)?,
            phi_star: num(7)?,
            fidelity: num(8)?,
            success: num(9)?,
            concurrence: num(10)?,
            above_classical: match field(11) {
                "true" => true,
                "false" => false,
                other => {
                    return Err(Error::Malformed {
                        what: "csv boolean",
                        detail: other.to_string(),
                    })
                }
            },
            status: match field(12) {
                "ok" => RowStatus::Ok,
                "infeasible" => RowStatus::Infeasible,
                other => {
                    return Err(Error::Malformed {
                        what: "csv status",
                        detail: other.to_string(),
                    })
                }
            },
        })
    }

    /// Bitwise equality, treating NaN as equal to NaN.
    pub fn same_as(&self, other: &SweepRow) -> bool {
        let eq = |a: f64, b: f64| a.to_bits() == b.to_bits();
        self.scenario == other.scenario
            && self.arrangement == other.arrangement
            && eq(self.p_input, other.p_input)
            && eq(self.p_alice, other.p_alice)
            && eq(self.p_bob, other.p_bob)
            && self.target == other.target
            && eq(self.theta_star, other.theta_star)
            && eq(self.phi_star, other.phi_star)
            && eq(self.fidelity, other.fidelity)
            && eq(self.success, other.success)
            && eq(self.concurrence, other.concurrence)
            && self.above_classical == other.above_classical
            && self.status == other.status
    }
}

/// Optimizes every `(sweep point, target)` pair. Points run in parallel;
/// rows come back in canonical order (grid order outer, targets inner).
/// Infeasible points are recorded, not dropped.
pub fn run_sweep(
    spec: &ScenarioSpec,
    opts: &SearchOptions,
    targets: &[Target],
) -> Result<Vec<SweepRow>> {
    if targets.is_empty() {
        return Err(Error::InvalidParameter("no targets requested".into()));
    }
    let points: Vec<Arrangement> = spec.grid.iter().map(|&p| spec.arrangement_at(p)).collect();
    let rows: Vec<Vec<SweepRow>> = points
        .par_iter()
        .map(|arr| {
            targets
                .iter()
                .map(|target| {
                    match optimizer::optimize(arr, &opts.config_for(arr, target.clone())) {
                        Ok(r) => Ok(SweepRow::from_result(
                            spec.scenario.number(),
                            arr,
                            target,
                            Ok(&r),
                        )),
                        Err(Error::Infeasible) => Ok(SweepRow::from_result(
                            spec.scenario.number(),
                            arr,
                            target,
                            Err(()),
                        )),
                        Err(e) => Err(e),
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// Evaluation of all four outcomes at a fixed configuration, plus the
/// combined figures for one postselection set.
#[derive(Debug, Clone)]
pub struct FixedEvaluation {
    pub report: AverageReport,
    pub selection: Vec<usize>,
    pub success: f64,
    pub efficiency: f64,
}

/// Evaluates all four outcomes at a user-fixed `(θ, φ)` and combines the
/// chosen postselection set.
pub fn run_fixed_eval(
    arr: &Arrangement,
    theta: f64,
    phi: f64,
    selection: &[usize],
) -> Result<FixedEvaluation> {
    let params = crate::protocol::ChannelParams::new(theta, phi)?;
    let report = ensemble::average(&params, arr, &QuadratureGrid::default())?;
    let (success, efficiency) = ensemble::average_postselected(&report, selection)?;
    Ok(FixedEvaluation {
        report,
        selection: selection.to_vec(),
        success,
        efficiency,
    })
}

/// Census settings: representative probability levels per free axis, and
/// the shared search options.
#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub levels: Vec<f64>,
    pub search: SearchOptions,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            levels: vec![0.25, 0.5, 0.75],
            search: SearchOptions::default(),
        }
    }
}

/// Classification of one noise-kind pair at one probability level.
#[derive(Debug, Clone)]
pub struct CensusEvaluation {
    pub arrangement: Arrangement,
    pub classification: Classification,
}

/// One of the 48 cases: a scenario plus a noise-kind pair, classified at
/// every probability-level combination.
#[derive(Debug, Clone)]
pub struct CensusCase {
    pub scenario: Scenario,
    pub kind_a: NoiseKind,
    pub kind_b: NoiseKind,
    pub evaluations: Vec<CensusEvaluation>,
    /// True when any level combination shows a probabilistic improvement.
    pub improved: bool,
}

impl CensusCase {
    /// Kind triple of this case, e.g. `"AD,NONE,PF"`.
    pub fn code(&self) -> String {
        self.scenario.base_arrangement(self.kind_a, self.kind_b).code()
    }

    /// True when amplitude damping acts on at least one qubit.
    pub fn has_amplitude_damping(&self) -> bool {
        self.scenario
            .base_arrangement(self.kind_a, self.kind_b)
            .has_amplitude_damping()
    }
}

/// Full classification of the 48 noise cases.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub cases: Vec<CensusCase>,
    /// Improved-case count per scenario (index 0 = scenario 1).
    pub improved_counts: [usize; 3],
}

impl CensusReport {
    pub fn total_improved(&self) -> usize {
        self.improved_counts.iter().sum()
    }

    /// Flattens the census into the standard row schema, one row per
    /// (case, level combination, target).
    pub fn rows(&self) -> Vec<SweepRow> {
        let mut rows = Vec::new();
        for case in &self.cases {
            let n = case.scenario.number();
            for eval in &case.evaluations {
                let arr = &eval.arrangement;
                rows.push(SweepRow::from_result(
                    n,
                    arr,
                    &Target::Deterministic,
                    Ok(&eval.classification.deterministic),
                ));
                for (idx, opt) in eval.classification.per_outcome.iter().enumerate() {
                    let target = Target::Outcome(idx + 1);
                    rows.push(SweepRow::from_result(
                        n,
                        arr,
                        &target,
                        opt.as_ref().ok_or(()),
                    ));
                }
            }
        }
        rows
    }
}

/// Classifies every scenario × noise-kind pair at every level combination
/// of `opts.levels` on the scenario's two free axes. 48 cases in all; a
/// case counts as improved when any level combination is.
pub fn run_census(opts: &CensusOptions) -> Result<CensusReport> {
    let scenarios = [
        Scenario::InputAndBob,
        Scenario::SharedChannel,
        Scenario::AliceSide,
    ];

    // One work unit per (case, level pair); flattened for the thread pool,
    // reassembled in order afterwards.
    struct Unit {
        case_idx: usize,
        arrangement: Arrangement,
    }
    let mut case_keys = Vec::new();
    let mut units = Vec::new();
    for &scenario in &scenarios {
        for &kind_a in &NoiseKind::ALL {
            for &kind_b in &NoiseKind::ALL {
                let case_idx = case_keys.len();
                case_keys.push((scenario, kind_a, kind_b));
                let [axis_a, axis_b] = scenario.free_axes();
                let base = scenario.base_arrangement(kind_a, kind_b);
                for &pa in &opts.levels {
                    for &pb in &opts.levels {
                        let arrangement = axis_b.with_p(&axis_a.with_p(&base, pa), pb);
                        units.push(Unit {
                            case_idx,
                            arrangement,
                        });
                    }
                }
            }
        }
    }

    let classified: Vec<CensusEvaluation> = units
        .par_iter()
        .map(|unit| {
            let cfg = opts
                .search
                .config_for(&unit.arrangement, Target::Deterministic);
            optimizer::classify(&unit.arrangement, &cfg).map(|classification| CensusEvaluation {
                arrangement: unit.arrangement,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cases: Vec<CensusCase> = case_keys
        .into_iter()
        .map(|(scenario, kind_a, kind_b)| CensusCase {
            scenario,
            kind_a,
            kind_b,
            evaluations: Vec::new(),
            improved: false,
        })
        .collect();
    for (unit, eval) in units.iter().zip(classified) {
        cases[unit.case_idx].improved |= eval.classification.improved;
        cases[unit.case_idx].evaluations.push(eval);
    }

    let mut improved_counts = [0usize; 3];
    for case in &cases {
        if case.improved {
            improved_counts[(case.scenario.number() - 1) as usize] += 1;
        }
    }
    Ok(CensusReport {
        cases,
        improved_counts,
    })
}

/// Writes `#`-prefixed config comments, the column header and one record
/// per row to any writer.
pub fn write_csv_to<W: Write>(mut out: W, comments: &[String], rows: &[SweepRow]) -> Result<()> {
    for line in comments {
        writeln!(out, "# {line}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.to_record())?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes rows atomically: the file appears under its final name only
/// when complete.
pub fn write_csv(path: &Path, comments: &[String], rows: &[SweepRow]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_csv_to(tmp.as_file_mut(), comments, rows)?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Reads rows back from a file produced by [`write_csv`]; comment lines
/// are skipped.
pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .from_path(path)?;
    let mut rows = Vec::new();
    for record in reader.records() {
        rows.push(SweepRow::from_record(&record?)?);
    }
    Ok(rows)
}
