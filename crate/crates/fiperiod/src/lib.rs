//! IO, file formats and range-evaluation driver for the fiperiod toolkit.
//! The exact algebra lives in `fiperiod-core`; this crate adds the JSON
//! module-spec / shape / table formats, CSV series, and the CLI plumbing.

pub mod eval;
pub mod modspec;
pub mod series;
pub mod shape;
pub mod table;
