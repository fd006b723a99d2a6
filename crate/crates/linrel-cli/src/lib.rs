//! Library half of the `linrel` binary: document parsing, random instance
//! generation, and the verification harness. Kept as a library so the
//! integration tests can drive the suites directly.

pub mod document;
pub mod harness;
pub mod sample;
