//! Plain-text and CSV rendering of verdicts and reports.
//!
//! The text forms are stable output contracts:
//! tiling verdicts print as `TILES`, `OVERLAP at <cell>: <t> | <u>`, or
//! `HOLE at <cell>`; violating pairs print as `pair: t | u`; completeness
//! reports serialize to CSV rows `x,n,partial_sum,tail_bound,verdict`
//! with sums at 17 significant digits.

use cubespec_core::analysis::{
    CompletenessReport, CompletenessVerdict, NotSpectrumWitness, SpectrumVerdict,
    ViolationReport,
};
use cubespec_core::tiling::TilingVerdict;
use cubespec_core::Point;
use std::fmt::Write as _;

/// One-line rendering of a tiling verdict.
pub fn tiling_line(v: &TilingVerdict) -> String {
    match v {
        TilingVerdict::Tiles => "TILES".to_string(),
        TilingVerdict::Overlap {
            cell,
            first,
            second,
        } => format!("OVERLAP at {cell}: {first} | {second}"),
        TilingVerdict::Hole { cell } => format!("HOLE at {cell}"),
    }
}

/// One `pair: t | u` line per violating pair, in report order.
pub fn violation_lines(report: &ViolationReport) -> Vec<String> {
    report
        .pairs
        .iter()
        .map(|(t, u)| format!("pair: {t} | {u}"))
        .collect()
}

/// One-line rendering of a spectrum verdict.
pub fn spectrum_line(v: &SpectrumVerdict) -> String {
    match v {
        SpectrumVerdict::LikelySpectrum => "LIKELY-SPECTRUM".to_string(),
        SpectrumVerdict::NotSpectrum(NotSpectrumWitness::NonOrthogonalPair {
            first,
            second,
        }) => {
            format!("NOT-SPECTRUM: pair: {first} | {second}")
        }
        SpectrumVerdict::NotSpectrum(NotSpectrumWitness::Deficit { sample, deficit }) => {
            format!("NOT-SPECTRUM: deficit >= {deficit:.6} at {sample}")
        }
    }
}

fn verdict_cell(v: &CompletenessVerdict) -> String {
    match v {
        CompletenessVerdict::CompleteWithin(eps) => format!("complete_within({eps})"),
        CompletenessVerdict::DeficitAtLeast(delta) => format!("deficit_at_least({delta})"),
    }
}

fn point_cell(p: &Point) -> String {
    let mut out = String::new();
    for (i, c) in p.coords().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{c}");
    }
    out
}

pub const COMPLETENESS_CSV_HEADER: &str = "x,n,partial_sum,tail_bound,verdict";

/// One CSV row per completeness report; the sample point is a
/// space-separated list of rationals so the row stays comma-clean.
pub fn completeness_csv_row(r: &CompletenessReport) -> String {
    format!(
        "{},{},{:.16e},{:.16e},{}",
        point_cell(&r.sample),
        r.cutoff,
        r.partial_sum,
        r.tail_bound,
        verdict_cell(&r.verdict)
    )
}

/// Human-oriented one-liner for a completeness report.
pub fn completeness_line(r: &CompletenessReport) -> String {
    format!(
        "x={} n={} partial={:.12} tail<={:.3e} {}",
        r.sample,
        r.cutoff,
        r.partial_sum,
        r.tail_bound,
        verdict_cell(&r.verdict)
    )
}
