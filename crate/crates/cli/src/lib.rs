//! Command-line companion to `cubespec-core`: cubeset file I/O,
//! deterministic generators, report rendering, and the tiling/spectrum
//! duality cross-check.

#![forbid(unsafe_code)]

pub mod cross;
pub mod format;
pub mod gen;
pub mod report;
