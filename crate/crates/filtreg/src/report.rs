//! Machine-readable experiment reports.
//!
//! JSON is written by hand with a fixed field order so that identical
//! configurations and seeds give byte-identical reports. Integers beyond
//! 2^53 are serialized as decimal strings to protect consumers that read
//! JSON numbers as doubles.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

/// 2^53, the largest integer magnitude a JSON double survives.
const SAFE_JSON_INT: i64 = 9_007_199_254_740_992;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    /// computed quantity (`None` encodes vanishing / minus infinity)
    pub computed: Option<BigInt>,
    pub bound: Option<BigInt>,
    pub status: CheckStatus,
    pub reason: Option<String>,
}

impl CheckResult {
    pub fn skip(id: &str, reason: &str) -> CheckResult {
        CheckResult {
            id: id.to_string(),
            computed: None,
            bound: None,
            status: CheckStatus::Skip,
            reason: Some(reason.to_string()),
        }
    }

    /// Pass iff `computed ≤ bound`, with a vanishing computed value
    /// passing trivially.
    pub fn le(id: &str, computed: Option<BigInt>, bound: BigInt) -> CheckResult {
        let status = match &computed {
            None => CheckStatus::Pass,
            Some(c) if *c <= bound => CheckStatus::Pass,
            Some(_) => CheckStatus::Fail,
        };
        CheckResult {
            id: id.to_string(),
            computed,
            bound: Some(bound),
            status,
            reason: None,
        }
    }

    /// Identity-style check: `violations` failing degrees against zero.
    pub fn identity(id: &str, violations: i64) -> CheckResult {
        CheckResult {
            id: id.to_string(),
            computed: Some(BigInt::from(violations)),
            bound: Some(BigInt::from(0)),
            status: if violations == 0 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            reason: None,
        }
    }

    /// Equality check `computed == expected`.
    pub fn eq(id: &str, computed: BigInt, expected: BigInt) -> CheckResult {
        let status = if computed == expected {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            id: id.to_string(),
            computed: Some(computed),
            bound: Some(expected),
            status,
            reason: None,
        }
    }
}

/// Fiber-cone block of the invariants.
#[derive(Debug, Clone)]
pub struct FiberInvariants {
    pub dim: usize,
    pub reg: Option<i64>,
    pub a0: Option<i64>,
    pub e: Vec<BigInt>,
    pub r_scaled: usize,
}

#[derive(Debug, Clone)]
pub struct Invariants {
    pub d: usize,
    pub r: usize,
    pub l_ai: i64,
    pub e_im: i64,
    pub hdeg_i: i64,
    pub hdeg_m: i64,
    pub reg_m: i64,
    pub i_m: i64,
    pub mu_m: i64,
    pub delta: Option<i64>,
    pub l_mqm: Option<i64>,
    pub h0_len: i64,
    pub depth_positive: bool,
    pub cohen_macaulay: bool,
    pub reg_g: Option<i64>,
    pub geom_g: Option<i64>,
    pub a: Vec<Option<i64>>,
    pub e_coeffs: Vec<BigInt>,
    pub postulation: i64,
    pub dims_g: Vec<usize>,
    pub fiber: Option<FiberInvariants>,
}

#[derive(Debug, Clone, Default)]
pub struct Provenance {
    pub seed: u64,
    pub retries: BTreeMap<String, u32>,
    pub timings_ms: BTreeMap<String, u128>,
    /// informational observations that are never pass/fail
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub name: String,
    pub config_text: String,
    pub invariants: Invariants,
    pub checks: Vec<CheckResult>,
    pub provenance: Provenance,
}

impl InvariantReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn to_json(&self, with_timings: bool) -> String {
        let mut w = JsonWriter::new();
        w.open();
        w.str_field("name", &self.name);
        w.str_field("config", &self.config_text);
        w.raw_field("invariants", &self.invariants_json());
        let checks: Vec<String> = self.checks.iter().map(check_json).collect();
        w.raw_field("checks", &format!("[{}]", checks.join(",")));
        w.raw_field("provenance", &self.provenance_json(with_timings));
        w.close();
        w.out
    }

    fn invariants_json(&self) -> String {
        let inv = &self.invariants;
        let mut w = JsonWriter::new();
        w.open();
        w.int_field("d", inv.d as i64);
        w.int_field("r", inv.r as i64);
        w.int_field("lAI", inv.l_ai);
        w.int_field("eIM", inv.e_im);
        w.int_field("hdegI", inv.hdeg_i);
        w.int_field("hdegM", inv.hdeg_m);
        w.int_field("regM", inv.reg_m);
        w.int_field("iM", inv.i_m);
        w.int_field("muM", inv.mu_m);
        w.opt_field("delta", inv.delta);
        w.opt_field("lMQM", inv.l_mqm);
        w.int_field("h0Length", inv.h0_len);
        w.bool_field("depthPositive", inv.depth_positive);
        w.bool_field("cohenMacaulay", inv.cohen_macaulay);
        w.opt_field("regG", inv.reg_g);
        w.opt_field("geomG", inv.geom_g);
        let a: Vec<String> = inv.a.iter().map(|v| opt_json(*v)).collect();
        w.raw_field("a", &format!("[{}]", a.join(",")));
        let e: Vec<String> = inv.e_coeffs.iter().map(big_json).collect();
        w.raw_field("e", &format!("[{}]", e.join(",")));
        w.int_field("postulation", inv.postulation);
        let dims: Vec<String> = inv.dims_g.iter().map(|v| v.to_string()).collect();
        w.raw_field("dimsG", &format!("[{}]", dims.join(",")));
        match &inv.fiber {
            None => w.raw_field("fiber", "null"),
            Some(f) => {
                let mut fw = JsonWriter::new();
                fw.open();
                fw.int_field("dim", f.dim as i64);
                fw.opt_field("regF", f.reg);
                fw.opt_field("a0F", f.a0);
                let ef: Vec<String> = f.e.iter().map(big_json).collect();
                fw.raw_field("eF", &format!("[{}]", ef.join(",")));
                fw.int_field("rScaled", f.r_scaled as i64);
                fw.close();
                w.raw_field("fiber", &fw.out);
            }
        }
        w.close();
        w.out
    }

    fn provenance_json(&self, with_timings: bool) -> String {
        let mut w = JsonWriter::new();
        w.open();
        w.int_field("seed", self.provenance.seed as i64);
        let retries: Vec<String> = self
            .provenance
            .retries
            .iter()
            .map(|(k, v)| format!("{}:{}", json_string(k), v))
            .collect();
        w.raw_field("retries", &format!("{{{}}}", retries.join(",")));
        let notes: Vec<String> = self
            .provenance
            .notes
            .iter()
            .map(|n| json_string(n))
            .collect();
        w.raw_field("notes", &format!("[{}]", notes.join(",")));
        if with_timings {
            let timings: Vec<String> = self
                .provenance
                .timings_ms
                .iter()
                .map(|(k, v)| format!("{}:{}", json_string(k), v))
                .collect();
            w.raw_field("timingsMs", &format!("{{{}}}", timings.join(",")));
        }
        w.close();
        w.out
    }

    /// One CSV row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                csv_escape(&self.name),
                csv_escape(&c.id),
                c.computed
                    .as_ref()
                    .map_or("-inf".to_string(), |v| v.to_string()),
                c.bound.as_ref().map_or(String::new(), |v| v.to_string()),
                c.status.as_str(),
                csv_escape(c.reason.as_deref().unwrap_or("")),
            );
        }
        out
    }
}

pub const CSV_HEADER: &str = "instance,check,computed,bound,status,reason";

fn check_json(c: &CheckResult) -> String {
    let mut w = JsonWriter::new();
    w.open();
    w.str_field("id", &c.id);
    w.raw_field(
        "computed",
        &c.computed.as_ref().map_or("null".into(), big_json),
    );
    w.raw_field("bound", &c.bound.as_ref().map_or("null".into(), big_json));
    w.str_field("status", c.status.as_str());
    match &c.reason {
        Some(rsn) => w.str_field("reason", rsn),
        None => w.raw_field("reason", "null"),
    }
    w.close();
    w.out
}

fn opt_json(v: Option<i64>) -> String {
    v.map_or("null".to_string(), |x| x.to_string())
}

fn big_json(v: &BigInt) -> String {
    if v.magnitude().bits() <= 53 && *v <= BigInt::from(SAFE_JSON_INT) && *v >= -BigInt::from(SAFE_JSON_INT)
    {
        v.to_string()
    } else {
        format!("\"{v}\"")
    }
}

struct JsonWriter {
    out: String,
    first: bool,
}

impl JsonWriter {
    fn new() -> JsonWriter {
        JsonWriter {
            out: String::new(),
            first: true,
        }
    }

    fn open(&mut self) {
        self.out.push('{');
    }

    fn close(&mut self) {
        self.out.push('}');
    }

    fn sep(&mut self) {
        if self.first {
            self.first = false;
        } else {
            self.out.push(',');
        }
    }

    fn str_field(&mut self, key: &str, value: &str) {
        self.sep();
        let _ = write!(self.out, "{}:{}", json_string(key), json_string(value));
    }

    fn int_field(&mut self, key: &str, value: i64) {
        self.sep();
        let _ = write!(self.out, "{}:{}", json_string(key), value);
    }

    fn bool_field(&mut self, key: &str, value: bool) {
        self.sep();
        let _ = write!(self.out, "{}:{}", json_string(key), value);
    }

    fn opt_field(&mut self, key: &str, value: Option<i64>) {
        self.sep();
        let _ = write!(self.out, "{}:{}", json_string(key), opt_json(value));
    }

    fn raw_field(&mut self, key: &str, value: &str) {
        self.sep();
        let _ = write!(self.out, "{}:{}", json_string(key), value);
    }
}

pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings_past_2_53() {
        assert_eq!(big_json(&BigInt::from(12)), "12");
        assert_eq!(big_json(&BigInt::from(-(1i64 << 52))), "-4503599627370496");
        let huge = BigInt::from(10).pow(71);
        assert!(big_json(&huge).starts_with('"'));
    }

    #[test]
    fn check_serialization() {
        let c = CheckResult::le("A3.i", Some(BigInt::from(1)), BigInt::from(1));
        assert_eq!(c.status, CheckStatus::Pass);
        let s = check_json(&c);
        assert!(s.contains("\"id\":\"A3.i\""));
        assert!(s.contains("\"status\":\"pass\""));
        let f = CheckResult::le("A3.i", Some(BigInt::from(2)), BigInt::from(1));
        assert_eq!(f.status, CheckStatus::Fail);
        let none = CheckResult::le("F1.a0", None, BigInt::from(0));
        assert_eq!(none.status, CheckStatus::Pass);
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_string("a\"b\\c\nd"), "\"a\\\"b\\\\c\\nd\"");
    }
}
