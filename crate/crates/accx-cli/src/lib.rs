//! Std-side runtime for the accx engine: a scoped-thread executor, file IO
//! for the text and binary graph formats, report serialization, and oracle
//! verification. The `accx` binary drives all of it.

pub mod exec;
pub mod io;
pub mod report;
pub mod verify;
