//! Library side of the `epicheck` command: parsing, running checks and
//! generating fixtures.

pub mod input;
pub mod output;

use std::time::Instant;

use epicheck::essential::EssentialError;
use epicheck::exactla::rank;
use epicheck::fundamental::{collinearity_partition, FundamentalError};
use epicheck::oracle::{generate_degenerate, generate_scene, project, DegenerateKind, OracleError};
use epicheck::{
    build_data_matrices, exists_essential, exists_fundamental_with, Correspondence, Existence, FundamentalOptions,
    Witness,
};
use rayon::prelude::*;
use thiserror::Error;

use input::{InputDocument, Mode, Options};
use output::{EssentialReport, FundamentalReport, InstanceReport, OutputDocument, SCHEMA};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("instance {index}: {message}")]
    Invariant { index: usize, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Invariant { .. } => 3,
        }
    }
}

fn invariant(index: usize, message: impl Into<String>) -> CliError {
    CliError::Invariant { index, message: message.into() }
}

fn fundamental_failure(index: usize, e: FundamentalError) -> CliError {
    invariant(index, format!("fundamental check failed: {e}"))
}

fn essential_failure(index: usize, e: EssentialError) -> CliError {
    invariant(index, format!("essential check failed: {e}"))
}

/// Runs the checks on one instance and re-validates every witness before
/// reporting it.
pub fn check_instance(
    index: usize,
    corrs: &[Correspondence],
    mode: Mode,
    opts: Options,
) -> Result<InstanceReport, CliError> {
    let start = Instant::now();
    let data = build_data_matrices(corrs);
    let rank_z = rank(&data.z);
    let mut fundamental = None;
    if mode.fundamental() {
        let v = exists_fundamental_with(&data.z, FundamentalOptions { early_exit_rank4: opts.early_exit_rank4 })
            .map_err(|e| fundamental_failure(index, e))?;
        match (&v.witness, v.exists) {
            (Some(w), true) if !(w.satisfies_epipolar(&data.z) && w.has_rank_two()) => {
                return Err(invariant(index, "fundamental witness does not verify"));
            }
            (None, true) => return Err(invariant(index, "positive fundamental verdict without a witness")),
            _ => {}
        }
        let split = collinearity_partition(&data.x, &data.y);
        if let Some(s) = &split {
            let f = s.matrix();
            if rank(&f) != 1 || !Witness::Exact(f).satisfies_epipolar(&data.z) {
                return Err(invariant(index, "rank-one split does not verify"));
            }
        }
        fundamental = Some(FundamentalReport::new(&v, split.as_ref(), opts.emit_witness));
    }
    let mut essential = None;
    if mode.essential() {
        let v = exists_essential(&data.z).map_err(|e| essential_failure(index, e))?;
        if let Some(w) = &v.witness {
            if !(w.satisfies_epipolar(&data.z) && w.is_essential()) {
                return Err(invariant(index, "essential witness does not verify"));
            }
        }
        if v.real_exists == Existence::Yes && v.complex_exists != Existence::Yes {
            return Err(invariant(index, "real essential matrix without a complex one"));
        }
        essential = Some(EssentialReport::new(&v, opts.emit_witness));
    }
    Ok(InstanceReport {
        index,
        m: corrs.len(),
        rank_z,
        fundamental,
        essential,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Checks every instance of the document, in parallel, keeping input order.
pub fn run(doc: &InputDocument, mode: Mode) -> Result<OutputDocument, CliError> {
    let instances = doc
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, corrs)| check_instance(i, corrs, mode, doc.options))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OutputDocument { schema: SCHEMA.to_string(), mode, instances })
}

/// Fixture kinds accepted by `gen --degenerate`.
pub const DEGENERATE_KINDS: [&str; 4] = ["collinear_split", "repeated_point", "homography_related", "rank_deficient"];

/// `rank_deficient` takes its target rank from `rank`; `collinear_split`
/// puts the first half of the first-image points on one line.
pub fn degenerate_kind(name: &str, m: usize, rank: usize) -> Result<DegenerateKind, CliError> {
    Ok(match name {
        "collinear_split" => DegenerateKind::CollinearSplit { tau: (0..m.div_ceil(2)).collect() },
        "repeated_point" => DegenerateKind::RepeatedPoint,
        "homography_related" => DegenerateKind::HomographyRelated { related: m },
        "rank_deficient" => DegenerateKind::RankDeficientTarget { rank },
        other => {
            return Err(CliError::Usage(format!(
                "unknown degenerate kind `{other}` (expected one of {})",
                DEGENERATE_KINDS.join(", ")
            )))
        }
    })
}

fn oracle_failure(e: OracleError) -> CliError {
    CliError::Usage(e.to_string())
}

pub enum GenRequest<'a> {
    Scene { calibrated: bool },
    Degenerate { kind: &'a str, rank: usize },
}

/// A fixture file in the input format.
pub fn generate(request: &GenRequest, m: usize, seed: u64) -> Result<String, CliError> {
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let (header, corrs) = match request {
        GenRequest::Scene { calibrated } => {
            let scene = generate_scene(m, *calibrated, seed).map_err(oracle_failure)?;
            let kind = if *calibrated { "calibrated" } else { "uncalibrated" };
            (format!("# {kind} scene, m = {m}, seed = {seed}\n"), project(&scene).map_err(oracle_failure)?)
        }
        GenRequest::Degenerate { kind, rank } => {
            let k = degenerate_kind(kind, m, *rank)?;
            (
                format!("# degenerate {kind}, m = {m}, seed = {seed}\n"),
                generate_degenerate(&k, m, seed).map_err(oracle_failure)?,
            )
        }
    };
    Ok(header + &input::write_instance(&corrs))
}
