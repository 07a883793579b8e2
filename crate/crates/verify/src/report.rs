//! Verification reports and their JSON, CSV and text renderings.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    NotApplicable,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Code or curve parameters in the CodeSpec layout.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct InstanceSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub q: u32,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<(String, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
}

impl InstanceSpec {
    pub fn curve(q: u32, m: u32) -> Self {
        InstanceSpec { q, m, ..Default::default() }
    }

    pub fn short(&self) -> String {
        let mut parts = vec![format!("q={}", self.q), format!("m={}", self.m)];
        if let Some(f) = &self.family {
            parts.insert(0, f.clone());
        }
        if let Some(d) = self.d {
            parts.push(format!("d={d}"));
        }
        if let Some(e) = &self.e {
            let list: Vec<String> = e.iter().map(|(p, k)| format!("{p}:{k}")).collect();
            parts.push(format!("E=[{}]", list.join("; ")));
        }
        for (k, v) in [("r", self.r), ("a", self.a), ("b", self.b)] {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        }
        if let Some(p) = &self.p {
            parts.push(format!("P={p}"));
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub claim: String,
    pub instance: InstanceSpec,
    pub claimed: String,
    pub computed: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub witness: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Txt,
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "suite", "claim", "family", "q", "m", "d", "E", "r", "a", "b", "P", "claimed", "computed", "verdict",
        "runtime_ms", "witness",
    ])
    .expect("in-memory write");
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in reports {
        let i = &r.instance;
        let e = i
            .e
            .as_ref()
            .map(|e| e.iter().map(|(p, k)| format!("{p}:{k}")).collect::<Vec<_>>().join("; "))
            .unwrap_or_default();
        w.write_record([
            r.suite.clone(),
            r.claim.clone(),
            i.family.clone().unwrap_or_default(),
            i.q.to_string(),
            i.m.to_string(),
            opt(i.d),
            e,
            opt(i.r),
            opt(i.a),
            opt(i.b),
            i.p.clone().unwrap_or_default(),
            r.claimed.clone(),
            r.computed.clone(),
            r.verdict.to_string(),
            r.runtime_ms.map(|t| t.to_string()).unwrap_or_default(),
            r.witness.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn to_txt(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "[{}] {} ({}): claimed {}; computed {}",
            r.verdict,
            r.claim,
            r.instance.short(),
            r.claimed,
            r.computed
        ));
        if let Some(t) = r.runtime_ms {
            s.push_str(&format!(" [{t} ms]"));
        }
        s.push('\n');
    }
    s
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => to_json(reports),
        Format::Csv => to_csv(reports),
        Format::Txt => to_txt(reports),
    }
}

/// 2 when any claim mismatches, else 0.
pub fn exit_status(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Mismatch) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport {
            suite: "curve".into(),
            claim: "curve:points".into(),
            instance: InstanceSpec { d: Some(1), ..InstanceSpec::curve(5, 3) },
            claimed: "66".into(),
            computed: "66".into(),
            verdict: Verdict::Match,
            runtime_ms: None,
            witness: serde_json::json!({"b": 1, "a": [1, 2]}),
        }
    }

    #[test]
    fn json_field_names_and_round_trip() {
        let r = vec![sample()];
        let text = to_json(&r);
        assert!(text.contains("\"verdict\": \"match\""));
        assert!(!text.contains("runtime_ms"));
        assert!(!text.contains("\"E\""));
        // object keys come out sorted
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        let back: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_value(Verdict::NotApplicable).unwrap(), "not-applicable");
    }

    #[test]
    fn csv_has_one_row_per_report() {
        let text = to_csv(&[sample(), sample()]);
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 2);
        assert_eq!(&rows[0][13], "match");
        assert_eq!(&rows[0][15], r#"{"a":[1,2],"b":1}"#);
    }

    #[test]
    fn exit_codes() {
        let mut r = vec![sample()];
        assert_eq!(exit_status(&r), 0);
        r.push(VerificationReport { verdict: Verdict::Skipped, ..sample() });
        assert_eq!(exit_status(&r), 0);
        r.push(VerificationReport { verdict: Verdict::Mismatch, ..sample() });
        assert_eq!(exit_status(&r), 2);
    }
}
