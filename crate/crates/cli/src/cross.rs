//! The duality cross-check: decide tiling and spectrum status
//! independently and require the verdicts to agree.
//!
//! A set tiles exactly when it is a spectrum, so over any family of inputs
//! the two oracles must agree on every single one; a certified
//! disagreement is treated as a bug, not a discovery, and surfaces as exit
//! code 2 in the CLI.

use anyhow::Result;
use cubespec_core::analysis::{
    check_orthogonality, spectrum_verdict, CompletenessReport, SpectrumVerdict, ViolationReport,
};
use cubespec_core::tiling::{check_tiling, TilingVerdict};
use cubespec_core::{Point, Rational, TranslateSet};
use rayon::prelude::*;

/// Verdicts of both oracles for one set, plus the evidence behind them.
#[derive(Clone, PartialEq, Debug)]
pub struct CrossCheckResult {
    pub id: String,
    pub tiling: TilingVerdict,
    pub spectrum: SpectrumVerdict,
    /// `tiling == Tiles` if and only if `spectrum == LikelySpectrum`.
    pub agreement: bool,
    pub completeness: Vec<CompletenessReport>,
    pub violations: ViolationReport,
}

/// Multipliers for the fixed sample grid; all odd, hence invertible mod
/// the grid denominator.
const SAMPLE_STEPS: [i64; 8] = [27, 41, 11, 53, 3, 19, 61, 37];
const SAMPLE_DENOM: i64 = 64;
const SAMPLE_COUNT: i64 = 12;

/// The deterministic default sample set: a fixed rational grid (a
/// Kronecker-style sequence with denominator 64) plus, when the tiling
/// oracle produced a hole, that hole's cell center — so a non-tiling is
/// probed exactly where its completeness sum must fall short.
pub fn default_samples(dim: usize, tiling: &TilingVerdict) -> Vec<Point> {
    let mut samples = Vec::new();
    for k in 1..=SAMPLE_COUNT {
        let coords = (0..dim)
            .map(|j| Rational::new(k * SAMPLE_STEPS[j % SAMPLE_STEPS.len()], SAMPLE_DENOM).fract())
            .collect();
        samples.push(Point::new(coords));
    }
    if let TilingVerdict::Hole { cell } = tiling {
        samples.push(cell.clone());
    }
    samples
}

/// Runs both oracles on one periodic set.
///
/// `samples` overrides the default sample grid when given.  Errors are
/// propagated (finite sets, grid budget); verdicts — including negative
/// ones — are results, not errors.
pub fn cross_check(
    id: &str,
    set: &TranslateSet,
    samples: Option<&[Point]>,
    cutoff: u32,
    eps: f64,
) -> Result<CrossCheckResult> {
    let tiling = check_tiling(set)?;
    let owned;
    let samples = match samples {
        Some(s) => s,
        None => {
            owned = default_samples(set.dim(), &tiling);
            &owned
        }
    };
    let violations = check_orthogonality(set, &set.verification_window())?;
    let outcome = spectrum_verdict(set, samples, cutoff, eps)?;
    let agreement = (tiling == TilingVerdict::Tiles)
        == (outcome.verdict == SpectrumVerdict::LikelySpectrum);
    Ok(CrossCheckResult {
        id: id.to_string(),
        tiling,
        spectrum: outcome.verdict,
        agreement,
        completeness: outcome.reports,
        violations,
    })
}

/// Cross-checks many sets on a parallel pool; results come back in input
/// order regardless of completion order.
pub fn cross_check_many(
    inputs: &[(String, TranslateSet)],
    cutoff: u32,
    eps: f64,
) -> Vec<Result<CrossCheckResult>> {
    inputs
        .par_iter()
        .map(|(id, set)| cross_check(id, set, None, cutoff, eps))
        .collect()
}
