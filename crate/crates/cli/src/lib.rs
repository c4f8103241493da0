//! Command-line front end: parsing of job inputs, report types that
//! serialize to JSON, and the structural check suite.

pub mod checks;
pub mod job;
pub mod report;
