//! File formats, the run ledger, a rayon worker pool and the `qmms`
//! command-line interface on top of `qmms-core`.

pub mod cli;
pub mod format;
pub mod ledger;
pub mod pool;
