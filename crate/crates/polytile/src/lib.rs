//! File formats, tables and the command line for polytile.

pub mod cli;
pub mod error;
pub mod off;
pub mod table;
pub mod typefile;

pub use error::{IoError, Result};
pub use off::{parse_off, read_off, write_off, OffMesh};
pub use polytile_core as core;
pub use typefile::{read_type, write_type};
