//! Experiment configuration: a line-oriented key/value format with
//! bracketed (optionally nested) lists, so configs stay trivially
//! parseable from any language.
//!
//! ```text
//! name = tight-d1
//! characteristic = 32003
//! variables = [x, y]
//! J = ["x^2", "x*y"]
//! I = ["x", "y"]
//! filtration = adic            # or: chain = [["1"], ["x","y"], ...]
//! q = ["x", "y"]               # optional
//! checks = [A3, Singh]         # optional filter, default all
//! seed = 42
//! cutoffCap = 64
//! retries = 5
//! ```

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationSpec {
    Adic,
    /// Generator lists for the chain ideals `U_0, U_1, …, U_c`.
    Chain(Vec<Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub name: String,
    pub characteristic: u64,
    pub variables: Vec<String>,
    pub j_gens: Vec<String>,
    pub i_gens: Vec<String>,
    pub filtration: FiltrationSpec,
    pub q_gens: Option<Vec<String>>,
    /// check-id filter; `None` means all applicable
    pub checks: Option<Vec<String>>,
    pub seed: u64,
    pub cutoff_cap: i64,
    pub retries: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            name: "experiment".into(),
            characteristic: crate::ring::DEFAULT_CHARACTERISTIC,
            variables: vec!["x".into(), "y".into()],
            j_gens: Vec::new(),
            i_gens: Vec::new(),
            filtration: FiltrationSpec::Adic,
            q_gens: None,
            checks: None,
            seed: 42,
            cutoff_cap: 64,
            retries: 5,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, String> {
        let mut cfg = ExperimentConfig::default();
        let mut saw_i = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim().to_string();
            if line.is_empty() {
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(format!("line {}: expected `key = value`", lineno + 1));
            };
            let key = line[..eq].trim();
            let value = line[eq + 1..].trim();
            match key {
                "name" => cfg.name = value.to_string(),
                "characteristic" => {
                    cfg.characteristic = value
                        .parse()
                        .map_err(|_| format!("line {}: bad characteristic", lineno + 1))?
                }
                "variables" => cfg.variables = parse_flat_list(value, lineno)?,
                "J" => cfg.j_gens = parse_flat_list(value, lineno)?,
                "I" => {
                    cfg.i_gens = parse_flat_list(value, lineno)?;
                    saw_i = true;
                }
                "q" => cfg.q_gens = Some(parse_flat_list(value, lineno)?),
                "checks" => cfg.checks = Some(parse_flat_list(value, lineno)?),
                "filtration" => {
                    if value == "adic" {
                        cfg.filtration = FiltrationSpec::Adic;
                    } else {
                        return Err(format!(
                            "line {}: filtration must be `adic` (or give a `chain`)",
                            lineno + 1
                        ));
                    }
                }
                "chain" => cfg.filtration = FiltrationSpec::Chain(parse_nested_list(value, lineno)?),
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| format!("line {}: bad seed", lineno + 1))?
                }
                "cutoffCap" => {
                    cfg.cutoff_cap = value
                        .parse()
                        .map_err(|_| format!("line {}: bad cutoffCap", lineno + 1))?
                }
                "retries" => {
                    cfg.retries = value
                        .parse()
                        .map_err(|_| format!("line {}: bad retries", lineno + 1))?
                }
                other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
            }
        }
        if cfg.variables.is_empty() {
            return Err("no variables declared".into());
        }
        if !saw_i || cfg.i_gens.is_empty() {
            return Err("the ideal I must be given with at least one generator".into());
        }
        Ok(cfg)
    }

    /// Canonical config text, used to embed the configuration into reports
    /// so they are re-runnable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "characteristic = {}", self.characteristic);
        let _ = writeln!(out, "variables = [{}]", self.variables.join(", "));
        let _ = writeln!(out, "J = [{}]", quote_list(&self.j_gens));
        let _ = writeln!(out, "I = [{}]", quote_list(&self.i_gens));
        match &self.filtration {
            FiltrationSpec::Adic => {
                let _ = writeln!(out, "filtration = adic");
            }
            FiltrationSpec::Chain(chain) => {
                let parts: Vec<String> =
                    chain.iter().map(|u| format!("[{}]", quote_list(u))).collect();
                let _ = writeln!(out, "chain = [{}]", parts.join(", "));
            }
        }
        if let Some(q) = &self.q_gens {
            let _ = writeln!(out, "q = [{}]", quote_list(q));
        }
        if let Some(checks) = &self.checks {
            let _ = writeln!(out, "checks = [{}]", checks.join(", "));
        }
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "cutoffCap = {}", self.cutoff_cap);
        let _ = writeln!(out, "retries = {}", self.retries);
        out
    }
}

fn quote_list(items: &[String]) -> String {
    items
        .iter()
        .map(|s| format!("\"{s}\""))
        .collect::<Vec<_>>()
        .join(", ")
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits a `[a, "b c", d]` list into items; either quoted or bare.
fn parse_flat_list(value: &str, lineno: usize) -> Result<Vec<String>, String> {
    let inner = unwrap_brackets(value, lineno)?;
    split_top_level(inner)
        .into_iter()
        .map(|item| {
            let item = item.trim();
            Ok(unquote(item).to_string())
        })
        .filter(|r: &Result<String, String>| r.as_ref().map_or(true, |s| !s.is_empty()))
        .collect()
}

/// Parses `[["1"], ["x","y"]]` style one-level nesting.
fn parse_nested_list(value: &str, lineno: usize) -> Result<Vec<Vec<String>>, String> {
    let inner = unwrap_brackets(value, lineno)?;
    let mut out = Vec::new();
    for item in split_top_level(inner) {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        out.push(parse_flat_list(item, lineno)?);
    }
    if out.is_empty() {
        return Err(format!("line {}: empty chain", lineno + 1));
    }
    Ok(out)
}

fn unwrap_brackets(value: &str, lineno: usize) -> Result<&str, String> {
    let v = value.trim();
    if !v.starts_with('[') || !v.ends_with(']') {
        return Err(format!("line {}: expected a bracketed list", lineno + 1));
    }
    Ok(&v[1..v.len() - 1])
}

fn split_top_level(inner: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut in_quote = false;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '[' if !in_quote => depth += 1,
            ']' if !in_quote => depth = depth.saturating_sub(1),
            ',' if !in_quote && depth == 0 => {
                out.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&inner[start..]);
    out
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2 && s.starts_with('"') && s.ends_with('"') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let text = r#"
# an instance
name = demo
characteristic = 32003
variables = [x, y]
J = ["x^2", "x*y"]
I = ["x", "y"]
chain = [["1"], ["x","y"], ["x^3","x*y","y^3"]]
q = ["x", "y"]
seed = 7
cutoffCap = 32
retries = 3
"#;
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.name, "demo");
        assert_eq!(cfg.variables, vec!["x", "y"]);
        assert_eq!(cfg.j_gens, vec!["x^2", "x*y"]);
        match &cfg.filtration {
            FiltrationSpec::Chain(c) => {
                assert_eq!(c.len(), 3);
                assert_eq!(c[2], vec!["x^3", "x*y", "y^3"]);
            }
            _ => panic!("expected a chain"),
        }
        let reparsed = ExperimentConfig::parse(&cfg.to_text()).unwrap();
        assert_eq!(cfg, reparsed);
    }

    #[test]
    fn adic_default_and_errors() {
        let cfg = ExperimentConfig::parse("variables = [x]\nI = [\"x^2\"]\n").unwrap();
        assert_eq!(cfg.filtration, FiltrationSpec::Adic);
        assert_eq!(cfg.seed, 42);
        assert!(ExperimentConfig::parse("variables = [x]\n").is_err());
        assert!(ExperimentConfig::parse("variables = [x]\nI = [x]\nbogus = 1\n").is_err());
        assert!(ExperimentConfig::parse("variables = [x]\nI = [x]\nfiltration = other\n").is_err());
    }
}
