//! Standard-library companion to `skewbisub`: JSON instance and result
//! formats, verification routines, and the `skewbisub` command line.

pub mod app;
pub mod format;
pub mod verify;

pub use app::{run, Outcome};
