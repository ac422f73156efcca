//! Orchestration: parameter checks, the certificate ledger and report output.

mod certify;
mod params;
mod report;

pub use certify::*;
pub use params::*;
pub use report::*;
