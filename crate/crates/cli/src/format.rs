//! The cubeset interchange format: one JSON document per translate set.
//!
//! ```json
//! {"dim": 2, "mode": "periodic", "period": [2, 2],
//!  "offsets": [["0", "0"], ["1", "1/2"]]}
//! ```
//!
//! Rationals are strings `"p/q"` with the `/q` omitted when the
//! denominator is one.  `period` is present exactly in periodic mode.
//! Offsets are canonicalized on read (reduced into the period box and
//! sorted); inputs that collapse to duplicate translates are rejected.

use anyhow::{bail, Context, Result};
use cubespec_core::{Point, Rational, TranslateSet};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Finite,
    Periodic,
}

#[derive(Serialize, Deserialize)]
struct Document {
    dim: usize,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<Vec<u64>>,
    offsets: Vec<Vec<String>>,
}

/// Renders a set as a single-line JSON document (suitable for JSONL
/// streams).
pub fn to_json(set: &TranslateSet) -> String {
    let doc = Document {
        dim: set.dim(),
        mode: if set.is_periodic() {
            Mode::Periodic
        } else {
            Mode::Finite
        },
        period: set.period().map(<[u64]>::to_vec),
        offsets: set
            .offsets()
            .iter()
            .map(|p| p.coords().iter().map(Rational::to_string).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("cubeset documents are always serializable")
}

/// Parses one cubeset document.
pub fn from_json(text: &str) -> Result<TranslateSet> {
    let doc: Document = serde_json::from_str(text).context("malformed cubeset document")?;
    let mut offsets = Vec::with_capacity(doc.offsets.len());
    for (i, coords) in doc.offsets.iter().enumerate() {
        let mut point = Vec::with_capacity(coords.len());
        for c in coords {
            point.push(
                c.parse::<Rational>()
                    .with_context(|| format!("offset {i}: bad rational {c:?}"))?,
            );
        }
        offsets.push(Point::new(point));
    }
    let set = match (doc.mode, doc.period) {
        (Mode::Finite, None) => TranslateSet::finite(doc.dim, offsets),
        (Mode::Finite, Some(_)) => bail!("finite mode must not carry a period"),
        (Mode::Periodic, Some(period)) => TranslateSet::periodic(doc.dim, period, offsets),
        (Mode::Periodic, None) => bail!("periodic mode requires a period"),
    };
    set.map_err(|e| anyhow::anyhow!("invalid cubeset: {e}"))
}

/// Reads the single cubeset document in `path`.
pub fn read_set(path: &Path) -> Result<TranslateSet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Reads a file holding either one cubeset document or a JSONL stream of
/// them (as emitted by `enumerate`), in file order.
pub fn read_sets(path: &Path) -> Result<Vec<TranslateSet>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(single) = from_json(&text) {
        return Ok(vec![single]);
    }
    let mut sets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        sets.push(
            from_json(line)
                .with_context(|| format!("parsing {} line {}", path.display(), lineno + 1))?,
        );
    }
    if sets.is_empty() {
        bail!("{}: no cubeset documents found", path.display());
    }
    Ok(sets)
}

/// Writes one cubeset document (single line plus trailing newline).
pub fn write_set(path: &Path, set: &TranslateSet) -> Result<()> {
    fs::write(path, to_json(set) + "\n").with_context(|| format!("writing {}", path.display()))
}

/// Parses a samples file: a JSON array of points, each a list of rational
/// strings, e.g. `[["1/2", "1/2"], ["3/10", "0"]]`.
pub fn parse_samples(text: &str, dim: usize) -> Result<Vec<Point>> {
    let raw: Vec<Vec<String>> = serde_json::from_str(text).context("malformed samples file")?;
    let mut samples = Vec::with_capacity(raw.len());
    for (i, coords) in raw.iter().enumerate() {
        if coords.len() != dim {
            bail!("sample {i} has {} coordinates, expected {dim}", coords.len());
        }
        let mut point = Vec::with_capacity(dim);
        for c in coords {
            point.push(
                c.parse::<Rational>()
                    .with_context(|| format!("sample {i}: bad rational {c:?}"))?,
            );
        }
        samples.push(Point::new(point));
    }
    Ok(samples)
}
