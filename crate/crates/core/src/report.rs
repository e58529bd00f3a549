//! Verification records, written as JSON lines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::Interval;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Dyer,
    StandardHcd,
    Congettura,
    Em0,
    StrongDs,
    Bologna,
    Product,
    CosimpleDh,
    HwBijection,
    LemmaPaths,
}

impl CheckKind {
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Dyer,
        CheckKind::StandardHcd,
        CheckKind::Congettura,
        CheckKind::Em0,
        CheckKind::StrongDs,
        CheckKind::Bologna,
        CheckKind::Product,
        CheckKind::CosimpleDh,
        CheckKind::HwBijection,
        CheckKind::LemmaPaths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Dyer => "dyer",
            CheckKind::StandardHcd => "standard-hcd",
            CheckKind::Congettura => "congettura",
            CheckKind::Em0 => "em0",
            CheckKind::StrongDs => "strong-ds",
            CheckKind::Bologna => "bologna",
            CheckKind::Product => "product",
            CheckKind::CosimpleDh => "cosimple-dh",
            CheckKind::HwBijection => "hw-bijection",
            CheckKind::LemmaPaths => "lemma-paths",
        }
    }

    /// Checks backed by conjectures report `FINDING` rather than `FAIL`.
    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            CheckKind::Congettura | CheckKind::Em0 | CheckKind::StrongDs | CheckKind::HwBijection
        )
    }

    /// Checks comparing pairs of decompositions; exhaustive sweeps are limited
    /// to smaller ranks for these.
    pub fn is_pairwise(self) -> bool {
        !matches!(self, CheckKind::Dyer | CheckKind::StandardHcd)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A conjecture-backed statement failed: a research result, not a bug.
    Finding,
    /// Hypotheses or preconditions did not hold.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Finding => "FINDING",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: CheckKind,
    pub n: usize,
    pub u: Permutation,
    pub v: Permutation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Permutation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2: Option<Permutation>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Record {
    pub fn new(check: CheckKind, iv: &Interval, status: Status) -> Self {
        Self {
            check,
            n: iv.n(),
            u: iv.u(),
            v: iv.v(),
            z: None,
            z2: None,
            status,
            ms: None,
            kind: None,
            detail: None,
        }
    }

    pub fn with_pair(mut self, z: Option<Permutation>, z2: Option<Permutation>) -> Self {
        self.z = z;
        self.z2 = z2;
        self
    }

    pub fn with_kind(mut self, kind: &str) -> Self {
        self.kind = Some(kind.to_string());
        self
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// `Pass` when `ok`, otherwise `Finding` or `Fail` depending on the check.
pub(crate) fn verdict(check: CheckKind, ok: bool) -> Status {
    match (ok, check.is_conjecture()) {
        (true, _) => Status::Pass,
        (false, true) => Status::Finding,
        (false, false) => Status::Fail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_shape() {
        let iv = Interval::new("1234".parse().unwrap(), "4321".parse().unwrap()).unwrap();
        let r = Record::new(CheckKind::StrongDs, &iv, Status::Pass)
            .with_pair(Some("1324".parse().unwrap()), Some("2143".parse().unwrap()));
        let mut r2 = r.clone();
        r2.ms = Some(12);
        assert_eq!(
            r2.to_json_line(),
            r#"{"check":"strong-ds","n":4,"u":"1234","v":"4321","z":"1324","z2":"2143","status":"PASS","ms":12}"#
        );
        let back: Record = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn check_names_round_trip() {
        for c in CheckKind::ALL {
            assert_eq!(c.name().parse::<CheckKind>().unwrap(), c);
            assert_eq!(
                serde_json::to_string(&c).unwrap(),
                format!("\"{}\"", c.name())
            );
        }
        assert!("nope".parse::<CheckKind>().is_err());
        assert_eq!(verdict(CheckKind::Em0, false), Status::Finding);
        assert_eq!(verdict(CheckKind::Bologna, false), Status::Fail);
    }
}
