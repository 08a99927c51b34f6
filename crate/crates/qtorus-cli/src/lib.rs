//! Frontend plumbing for the `qtorus` binary: JSON formats, command
//! implementations, and the embedded selftest corpus. Lives in a library
//! target so integration tests can exercise the exported types directly.

pub mod formats;
pub mod ops;
pub mod selftest;
