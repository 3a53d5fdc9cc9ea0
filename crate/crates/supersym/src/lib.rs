pub mod input;
pub mod json;
pub mod suites;
