//! Parser for the correspondence file format.
//!
//! ```text
//! # comment
//! mode essential
//! option witness
//! 3 0   2 0
//! 9 1/2 5 0.25
//! ---
//! 1 2   3 4
//! ```
//!
//! Each record is `x1 x2 y1 y2`: four exact literals (integer, `p/q` or
//! finite decimal). `---` starts a new instance. `mode` and `option`
//! directives apply to the whole file and may appear anywhere.

use std::fmt;
use std::str::FromStr;

use epicheck::rational::parse_rational;
use epicheck::Correspondence;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fundamental,
    Essential,
    #[default]
    Both,
}

impl Mode {
    pub fn fundamental(self) -> bool {
        self != Mode::Essential
    }

    pub fn essential(self) -> bool {
        self != Mode::Fundamental
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fundamental" => Ok(Mode::Fundamental),
            "essential" => Ok(Mode::Essential),
            "both" => Ok(Mode::Both),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Fundamental => "fundamental",
            Mode::Essential => "essential",
            Mode::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub early_exit_rank4: bool,
    pub emit_witness: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub instances: Vec<Vec<Correspondence>>,
    /// Set only when the file has a `mode` directive.
    pub mode: Option<Mode>,
    pub options: Options,
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, col, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    let mut doc = InputDocument::default();
    let mut current = Vec::new();
    let mut last_line = 0;
    let mut separator_at = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, first)) = toks.first() else { continue };
        match first {
            "---" => {
                if toks.len() > 1 {
                    return Err(parse_error(line_no, toks[1].0, "unexpected text after `---`"));
                }
                if current.is_empty() {
                    return Err(parse_error(line_no, col, "instance has no correspondences"));
                }
                doc.instances.push(std::mem::take(&mut current));
                separator_at = Some(line_no);
            }
            "mode" => {
                let [_, (vcol, value)] = toks[..] else {
                    return Err(parse_error(line_no, col, "expected `mode fundamental|essential|both`"));
                };
                doc.mode = Some(value.parse().map_err(|e| parse_error(line_no, vcol, e))?);
            }
            "option" => {
                let [_, (vcol, value)] = toks[..] else {
                    return Err(parse_error(line_no, col, "expected `option early_exit_rank4|witness`"));
                };
                match value {
                    "early_exit_rank4" => doc.options.early_exit_rank4 = true,
                    "witness" => doc.options.emit_witness = true,
                    other => return Err(parse_error(line_no, vcol, format!("unknown option `{other}`"))),
                }
            }
            _ => {
                if toks.len() != 4 {
                    let col = toks.get(4).map_or(col, |t| t.0);
                    return Err(parse_error(line_no, col, format!("expected 4 numbers, found {}", toks.len())));
                }
                let mut vals = Vec::with_capacity(4);
                for &(c, t) in &toks {
                    vals.push(parse_rational(t).map_err(|e| parse_error(line_no, c, e.to_string()))?);
                }
                let [x1, x2, y1, y2]: [_; 4] = vals.try_into().expect("four values");
                current.push(Correspondence::new([x1, x2], [y1, y2]));
            }
        }
    }
    if current.is_empty() {
        return Err(match separator_at {
            Some(line) => parse_error(line, 1, "trailing `---` without a following instance"),
            None => parse_error(last_line.max(1), 1, "no correspondences"),
        });
    }
    doc.instances.push(current);
    Ok(doc)
}

/// Renders correspondences in the input format, one instance.
pub fn write_instance(corrs: &[Correspondence]) -> String {
    corrs.iter().map(|c| format!("{} {} {} {}\n", c.x[0], c.x[1], c.y[0], c.y[1])).collect()
}
