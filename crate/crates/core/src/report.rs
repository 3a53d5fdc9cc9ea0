//! Outcome of a verification, one per check and sector.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Display;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub key: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub check: String,
    pub sector: String,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn new(check: impl Into<String>, sector: impl Display) -> Self {
        Report {
            check: check.into(),
            sector: sector.to_string(),
            status: Status::Pass,
            mismatches: Vec::new(),
        }
    }

    /// Records a failure when `lhs != rhs`.
    pub fn expect_eq<T: PartialEq + Display>(&mut self, key: impl Display, lhs: &T, rhs: &T) {
        if lhs != rhs {
            self.fail(key, lhs, rhs);
        }
    }

    pub fn fail(&mut self, key: impl Display, lhs: impl Display, rhs: impl Display) {
        self.status = Status::Fail;
        self.mismatches.push(Mismatch {
            key: key.to_string(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// True when every report passed.
pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}
