//! File formats, instance generators and sweeps on top of `lotcert-core`.

pub use lotcert_core as core;

pub mod formats;
pub mod gen;
pub mod render;
pub mod sweep;
