//! The built-in instance corpus: rings, ideals and filtrations spanning
//! dimensions 0 to 3, positive and zero depth, adic and non-adic chains,
//! equigenerated and mixed ideals, classical and generalized fiber cones.

use std::sync::mpsc;
use std::thread;

use crate::config::{ExperimentConfig, FiltrationSpec};
use crate::harness::{run_experiment, HarnessError};
use crate::report::InvariantReport;

/// Instance name paired with its run outcome.
pub type CorpusResult = (String, Result<InvariantReport, HarnessError>);

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn base(name: &str, vars: &[&str], j: &[&str], i: &[&str]) -> ExperimentConfig {
    ExperimentConfig {
        name: name.into(),
        variables: strings(vars),
        j_gens: strings(j),
        i_gens: strings(i),
        ..ExperimentConfig::default()
    }
}

fn with_q(mut cfg: ExperimentConfig, q: &[&str]) -> ExperimentConfig {
    cfg.q_gens = Some(strings(q));
    cfg
}

fn with_chain(mut cfg: ExperimentConfig, chain: &[&[&str]]) -> ExperimentConfig {
    cfg.filtration = FiltrationSpec::Chain(chain.iter().map(|u| strings(u)).collect());
    cfg
}

/// All regular corpus instances. The tight instance `J = (x², xy), I = m`
/// realizes the main local bound with equality.
pub fn corpus() -> Vec<ExperimentConfig> {
    let m2 = ["x", "y"];
    let m3 = ["x", "y", "z"];
    vec![
        // d = 1
        with_q(base("tight-d1-socle", &["x", "y"], &["x^2", "x*y"], &m2), &m2),
        with_q(
            with_chain(
                base("nonadic-d1", &["x", "y"], &["x^2", "x*y"], &["x^2", "y^2"]),
                &[&["1"], &["x", "y"]],
            ),
            &m2,
        ),
        with_q(base("depth0-d1-fat", &["x", "y"], &["x^3", "x*y"], &m2), &m2),
        with_q(base("line-d1", &["x", "y"], &["y^2"], &m2), &m2),
        // d = 2
        with_q(
            base("regseq-d2-classical", &["x", "y"], &[], &["x^2", "y^2"]),
            &m2,
        ),
        with_q(
            with_chain(
                base("scaled-d2", &["x", "y"], &[], &["x^2", "y^2"]),
                &[&["1"], &["x", "y"]],
            ),
            &m2,
        ),
        with_q(base("ambient-m-d2", &["x", "y"], &[], &m2), &m2),
        with_q(
            base("ambient-m2-d2", &["x", "y"], &[], &["x^2", "x*y", "y^2"]),
            &m2,
        ),
        with_q(
            base("ambient-m2-alias-d2", &["x", "y"], &[], &["y^2", "x^2", "x*y"]),
            &m2,
        ),
        with_q(
            base("depth0-d2-plane", &["x", "y", "z"], &["x^2", "x*y", "x*z"], &m3),
            &m3,
        ),
        with_q(
            base("mixed-d2-local", &["x", "y"], &[], &["x^2", "x*y", "y^3"]),
            &m2,
        ),
        // d = 3
        with_q(base("affine-d3", &["x", "y", "z"], &[], &m3), &m3),
        with_q(
            base("mixed-d3", &["x", "y", "z"], &[], &["x", "y", "z^2"]),
            &m3,
        ),
        // d = 0 oracle instances
        base("oracle-d0-xy", &["x", "y"], &["x^2", "y^2"], &m2),
        base("oracle-d0-m2", &["x", "y"], &["x^2", "x*y", "y^2"], &m2),
        base("koszul-d0-3v", &["x", "y", "z"], &["x", "y", "z"], &m3),
    ]
}

/// A deliberately corrupted fixture: the chain `{A, (x², y²)}` with
/// `I = m` violates the filtration condition at index 0. Only run when the
/// filter asks for it.
pub fn corrupt_fixture() -> ExperimentConfig {
    with_chain(
        base("corrupt-not-good", &["x", "y"], &[], &["x", "y"]),
        &[&["1"], &["x^2", "y^2"]],
    )
}

#[derive(Debug)]
pub struct CorpusSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub errors: Vec<(String, HarnessError)>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.fail == 0 && self.errors.is_empty()
    }
}

/// Runs the corpus with up to `jobs` instances in parallel. The filter
/// restricts which checks run (by id prefix or family tag); the corrupt
/// fixture joins only when the filter mentions it.
pub fn run_corpus(filter: Option<&str>, seed: u64, jobs: usize) -> (Vec<CorpusResult>, CorpusSummary) {
    let mut configs = corpus();
    if let Some(f) = filter {
        let f_lower = f.to_lowercase();
        if f_lower.contains("corrupt") {
            configs = vec![corrupt_fixture()];
        } else {
            for cfg in &mut configs {
                cfg.checks = Some(vec![f.to_string()]);
            }
        }
    }
    for cfg in &mut configs {
        // derive a per-instance seed so instances stay independent
        cfg.seed = seed ^ name_hash(&cfg.name);
    }
    let results = run_parallel(configs, jobs.max(1));
    let mut summary = CorpusSummary {
        pass: 0,
        fail: 0,
        skip: 0,
        errors: Vec::new(),
    };
    for (name, res) in &results {
        match res {
            Ok(report) => {
                let (p, f, s) = crate::harness::tally(&report.checks);
                summary.pass += p;
                summary.fail += f;
                summary.skip += s;
            }
            Err(e) => summary.errors.push((name.clone(), e.clone())),
        }
    }
    (results, summary)
}

fn name_hash(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

fn run_parallel(configs: Vec<ExperimentConfig>, jobs: usize) -> Vec<CorpusResult> {
    let total = configs.len();
    let (tx, rx) = mpsc::channel();
    thread::scope(|scope| {
        for chunk in configs.chunks(total.div_ceil(jobs)) {
            let tx = tx.clone();
            let chunk: Vec<ExperimentConfig> = chunk.to_vec();
            scope.spawn(move || {
                for cfg in chunk {
                    let name = cfg.name.clone();
                    let res = run_experiment(&cfg);
                    let _ = tx.send((name, res));
                }
            });
        }
        drop(tx);
    });
    let mut results: Vec<CorpusResult> = rx.iter().collect();
    // deterministic output order regardless of scheduling
    results.sort_by(|a, b| a.0.cmp(&b.0));
    results
}
