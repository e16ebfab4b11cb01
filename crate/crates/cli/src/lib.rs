//! Config documents, the word grammar, DOT export, report rendering and the
//! command dispatch behind the `liftspace` binary.

pub mod app;
pub mod config;
pub mod dot;
pub mod report;
pub mod word;
