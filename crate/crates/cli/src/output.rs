//! Output schema `epicheck/1`.
//!
//! Numbers that come out of exact arithmetic are strings (`"-5/12"`), so
//! nothing is rounded. The JSON document is
//!
//! ```text
//! {
//!   "schema": "epicheck/1",
//!   "mode": "fundamental" | "essential" | "both",
//!   "instances": [{
//!     "index": 0,                      // position in the input file
//!     "m": 7,                          // number of correspondences
//!     "rank_z": 7,
//!     "fundamental": null | {
//!       "exists": bool,
//!       "reason": "KernelAllRankOne" | ...,
//!       "cube_form": null | ["1", "5"],
//!       "rank_one_split": null | {
//!         "tau": [0, 2],               // first-image points on x_line
//!         "x_line": [a, b, c],         // the others' second-image points
//!         "y_line": [a, b, c]          // lie on y_line
//!       },
//!       "witness": null | Witness
//!     },
//!     "essential": null | {
//!       "complex_exists": "yes" | "no" | "unknown",
//!       "real_exists": "yes" | "no" | "unknown",
//!       "real_count": null | 0,
//!       "trace": ["..."],
//!       "witness": null | Witness
//!     },
//!     "elapsed_ms": 1.25
//!   }]
//! }
//! ```
//!
//! A `Witness` is either `{"kind": "exact", "entries": [9 rationals]}`, row
//! major, or an algebraic matrix whose entries are polynomials in a real
//! root `α`:
//!
//! ```text
//! {"kind": "algebraic",
//!  "defining": [c0, c1, ...],          // α is a root, coefficients low to high
//!  "root_interval": [lo, hi],          // isolates α among the real roots
//!  "entries": [[c0, c1, ...], ...],    // nine polynomials in α
//!  "enclosure": [[lo, hi], ...],       // decimal intervals, rounded outward
//!  "radius": "1e-20"}                  // largest half-width of the enclosure
//! ```
//!
//! Witnesses are included only when requested.

use epicheck::fundamental::CollinearityWitness;
use epicheck::rational::to_decimal_directed;
use epicheck::univariate::UniPoly;
use epicheck::{EssentialVerdict, Existence, FundamentalVerdict, Rational, Witness};
use serde::{Deserialize, Serialize};

use crate::input::Mode;

pub const SCHEMA: &str = "epicheck/1";

/// Digits after the point in decimal enclosures.
pub const ENCLOSURE_DIGITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema: String,
    pub mode: Mode,
    pub instances: Vec<InstanceReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub m: usize,
    pub rank_z: usize,
    pub fundamental: Option<FundamentalReport>,
    pub essential: Option<EssentialReport>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalReport {
    pub exists: bool,
    pub reason: String,
    pub cube_form: Option<Vec<String>>,
    /// A rank-one kernel member `y_line · x_lineᵀ`, when one exists.
    pub rank_one_split: Option<SplitReport>,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitReport {
    pub tau: Vec<usize>,
    pub x_line: Vec<String>,
    pub y_line: Vec<String>,
}

impl SplitReport {
    pub fn new(w: &CollinearityWitness) -> Self {
        Self { tau: w.tau.clone(), x_line: strings(&w.v), y_line: strings(&w.u) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialReport {
    pub complex_exists: String,
    pub real_exists: String,
    pub real_count: Option<usize>,
    pub trace: Vec<String>,
    pub witness: Option<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessReport {
    Exact {
        entries: Vec<String>,
    },
    Algebraic {
        defining: Vec<String>,
        root_interval: [String; 2],
        entries: Vec<Vec<String>>,
        enclosure: Vec<[String; 2]>,
        radius: String,
    },
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn poly_strings(p: &UniPoly) -> Vec<String> {
    strings(p.coeffs())
}

impl WitnessReport {
    pub fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::Exact(m) => WitnessReport::Exact { entries: strings(m.data()) },
            Witness::Algebraic(a) => {
                let two = Rational::from_integer(2.into());
                let radius = w.enclosure().iter().map(|(lo, hi)| (hi - lo) / &two).max().unwrap_or_default();
                WitnessReport::Algebraic {
                    defining: poly_strings(a.root.defining()),
                    root_interval: [a.root.lo().to_string(), a.root.hi().to_string()],
                    entries: a.entries.iter().map(poly_strings).collect(),
                    enclosure: w.decimal_enclosure(ENCLOSURE_DIGITS).into_iter().map(|(lo, hi)| [lo, hi]).collect(),
                    radius: to_decimal_directed(&radius, ENCLOSURE_DIGITS, false),
                }
            }
        }
    }
}

impl FundamentalReport {
    pub fn new(v: &FundamentalVerdict, split: Option<&CollinearityWitness>, with_witness: bool) -> Self {
        Self {
            exists: v.exists,
            reason: v.reason.as_str().to_string(),
            cube_form: v.cube_form.as_ref().map(|b| strings(b.coeffs())),
            rank_one_split: split.map(SplitReport::new),
            witness: v.witness.as_ref().filter(|_| with_witness).map(WitnessReport::from_witness),
        }
    }
}

impl EssentialReport {
    pub fn new(v: &EssentialVerdict, with_witness: bool) -> Self {
        let word = |e: Existence| e.to_string();
        Self {
            complex_exists: word(v.complex_exists),
            real_exists: word(v.real_exists),
            real_count: v.real_count,
            trace: v.trace.clone(),
            witness: v.witness.as_ref().filter(|_| with_witness).map(WitnessReport::from_witness),
        }
    }
}

fn render_witness(out: &mut String, w: &WitnessReport) {
    match w {
        WitnessReport::Exact { entries } => {
            for row in entries.chunks(3) {
                out.push_str(&format!("      [{}]\n", row.join(", ")));
            }
        }
        WitnessReport::Algebraic { defining, root_interval, enclosure, radius, .. } => {
            out.push_str(&format!(
                "      root of [{}] in [{}, {}], radius {radius}\n",
                defining.join(", "),
                root_interval[0],
                root_interval[1]
            ));
            for row in enclosure.chunks(3) {
                let cells: Vec<String> = row.iter().map(|[lo, hi]| format!("[{lo}, {hi}]")).collect();
                out.push_str(&format!("      {}\n", cells.join(" ")));
            }
        }
    }
}

/// Plain-text rendering, one block per instance. Timing is left out so the
/// text is reproducible.
pub fn render_text(doc: &OutputDocument) -> String {
    let mut out = String::new();
    for inst in &doc.instances {
        out.push_str(&format!("instance {}: m = {}, rank(Z) = {}\n", inst.index, inst.m, inst.rank_z));
        if let Some(f) = &inst.fundamental {
            out.push_str(&format!("  fundamental: exists = {}, reason = {}", f.exists, f.reason));
            if let Some(b) = &f.cube_form {
                out.push_str(&format!(", cube form = ({})", b.join(", ")));
            }
            out.push('\n');
            if let Some(s) = &f.rank_one_split {
                let tau: Vec<String> = s.tau.iter().map(ToString::to_string).collect();
                out.push_str(&format!(
                    "    rank-one split: tau = {{{}}}, x line = ({}), y line = ({})\n",
                    tau.join(", "),
                    s.x_line.join(", "),
                    s.y_line.join(", ")
                ));
            }
            if let Some(w) = &f.witness {
                out.push_str("    witness:\n");
                render_witness(&mut out, w);
            }
        }
        if let Some(e) = &inst.essential {
            out.push_str(&format!("  essential: complex = {}, real = {}", e.complex_exists, e.real_exists));
            if let Some(c) = e.real_count {
                out.push_str(&format!(", real solutions = {c}"));
            }
            out.push('\n');
            for t in &e.trace {
                out.push_str(&format!("    trace: {t}\n"));
            }
            if let Some(w) = &e.witness {
                out.push_str("    witness:\n");
                render_witness(&mut out, w);
            }
        }
    }
    out
}
