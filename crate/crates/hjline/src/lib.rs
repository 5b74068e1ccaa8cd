//! Colorings of the combinatorial cube [m]^n and the interval structure of
//! monochromatic combinatorial lines.
//!
//! The library builds the contraction-based weight coloring of [3]^n over
//! Z_r, enumerates line templates together with the minimal interval
//! decomposition of their wildcard sets, and runs exhaustive desk-scale
//! scans: for odd r and canonical weights, no monochromatic line has a
//! wildcard set that splits into fewer than r intervals, and every scan
//! checks this mechanically. The boundary-pair algebra that proves the
//! bound is exposed in [`claim`] and cross-checked against direct
//! evaluation. The `hj` binary fronts everything on the command line.

pub mod claim;
pub mod coloring;
pub mod error;
pub mod lines;
pub mod search;
pub mod words;

pub use coloring::{canonical_weights, even_r_coloring, ColoringSpec, WeightVector};
pub use error::{Error, Result};
pub use lines::{IntervalDecomposition, LineTemplate, Symbol};
pub use search::{
    decide_all_colorings, min_n_with_mono_line, pigeonhole_line, scan, verify_even_remark,
    verify_theorem, OracleOptions, OracleOutcome, ScanOptions, SearchReport, Verdict,
};
pub use words::Word;
