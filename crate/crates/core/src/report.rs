//! Check records and the verification report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::module::RightModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Undecided,
}

/// One verified statement about one subject.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Descriptive claim tag, e.g. `counit-iso-iff-perp`.
    pub claim: String,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(claim: &str, subject: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            claim: claim.to_string(),
            subject: subject.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn undecided(claim: &str, subject: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { claim: claim.to_string(), subject: subject.into(), status: Status::Undecided, detail: detail.into() }
    }

    /// A check from a fallible computation: errors become failures, except
    /// `Undecided` which stays undecided.
    pub fn from_result(claim: &str, subject: impl Into<String>, r: crate::Result<(bool, String)>) -> Check {
        let subject = subject.into();
        match r {
            Ok((ok, detail)) => Check::new(claim, subject, ok, detail),
            Err(crate::Error::Undecided(why)) => Check::undecided(claim, subject, why),
            Err(e) => Check::new(claim, subject, false, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn count(checks: &[Check], status: Status) -> usize {
    checks.iter().filter(|c| c.status == status).count()
}

/// A named module used as a test subject.
#[derive(Clone, Debug)]
pub struct Probe {
    pub name: String,
    pub module: RightModule,
}

impl Probe {
    pub fn new(name: impl Into<String>, module: RightModule) -> Probe {
        Probe { name: name.into(), module }
    }
}

/// Bumped whenever the JSON layout of [`VerificationReport`] changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// `claim/subject`, with `#k` appended to repeated pairs.
    pub id: String,
    pub claim: String,
    pub subject: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub total: usize,
}

/// Machine-readable outcome of one command run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    /// SHA-256 of the input file, hex.
    pub input_digest: String,
    pub seed: u64,
    pub parameters: BTreeMap<String, String>,
    pub summary: Summary,
    pub records: Vec<Record>,
    /// Wall time per phase in microseconds; only present when requested,
    /// since it breaks bit-identical output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

pub fn digest(input: &[u8]) -> String {
    let hash = Sha256::digest(input);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

impl VerificationReport {
    pub fn new(
        command: &str,
        input: &[u8],
        seed: u64,
        parameters: BTreeMap<String, String>,
        checks: Vec<Check>,
    ) -> VerificationReport {
        let mut records: Vec<Record> = checks
            .into_iter()
            .map(|c| Record {
                id: format!("{}/{}", c.claim, c.subject),
                claim: c.claim,
                subject: c.subject,
                status: c.status,
                detail: c.detail,
            })
            .collect();
        records.sort_by(|a, b| (&a.id, a.status, &a.detail).cmp(&(&b.id, b.status, &b.detail)));
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for r in &mut records {
            let k = seen.entry(r.id.clone()).or_insert(0);
            *k += 1;
            if *k > 1 {
                r.id = format!("{}#{}", r.id, *k);
            }
        }
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let summary = summarize(&records);
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input_digest: digest(input),
            seed,
            parameters,
            summary,
            records,
            timings_us: None,
        }
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> std::result::Result<VerificationReport, String> {
        let r: VerificationReport = serde_json::from_str(s).map_err(|e| e.to_string())?;
        r.validate()?;
        Ok(r)
    }

    /// Schema version, unique sorted ids and summary counts.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(format!("schema version {} (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if self.records.windows(2).any(|w| w[0].id >= w[1].id) {
            return Err("record ids are not strictly sorted".into());
        }
        let s = summarize(&self.records);
        if s != self.summary {
            return Err(format!("summary {:?} does not match the records {:?}", self.summary, s));
        }
        if self.input_digest.len() != 64 || !self.input_digest.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err("input digest is not a SHA-256 hex string".into());
        }
        Ok(())
    }

    /// One line per non-passing record, then the counts.
    pub fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => continue,
                Status::Fail => "FAIL",
                Status::Undecided => "UNDECIDED",
            };
            out.push_str(&format!("{tag:<9} {}  {}\n", r.id, r.detail));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} checks, {} passed, {} failed, {} undecided\n",
            self.command, s.total, s.pass, s.fail, s.undecided
        ));
        out
    }
}

fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary { total: records.len(), ..Summary::default() };
    for r in records {
        match r.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::Undecided => s.undecided += 1,
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        let checks = vec![
            Check::new("b", "x", true, ""),
            Check::new("a", "x", false, "bad"),
            Check::undecided("b", "x", "bound 3 exhausted"),
        ];
        VerificationReport::new("test", b"input", 7, BTreeMap::new(), checks)
    }

    #[test]
    fn ids_are_sorted_and_unique() {
        let r = sample();
        let ids: Vec<&str> = r.records.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["a/x", "b/x", "b/x#2"]);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, undecided: 1, total: 3 });
        assert!(r.failed());
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), r.to_json());
        let mut broken = r.clone();
        broken.summary.pass = 3;
        assert!(VerificationReport::from_json(&broken.to_json()).is_err());
    }

    #[test]
    fn digest_tracks_every_byte() {
        assert_ne!(digest(b"input"), digest(b"inpuu"));
        assert_eq!(digest(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
