//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use exgl::group::{elementary_generators, enumerate_closure, gl_generators, Gl};
use exgl::harness::{run_suite, Report, SuiteConfig};
use exgl::witness::compare_ideals;
use exgl::{Elem, Ideal, Ring};

const SEED: u64 = 20_240_611;

type Criterion = (&'static str, fn() -> Outcome, u64);

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    /// Runs a suite and requires every check to pass.
    fn suite(&mut self, name: &str, config: SuiteConfig) -> Option<Report> {
        match run_suite(name, &config) {
            Ok(report) => {
                if !report.passed {
                    self.require(false, format!("{name} on {}:\n{}", config.ring, report.summary()));
                }
                Some(report)
            }
            Err(e) => {
                self.require(false, format!("{name} on {}: {e}", config.ring));
                None
            }
        }
    }
}

fn count(report: &Report, check: &str, key: &str) -> u64 {
    report
        .checks
        .iter()
        .find(|c| c.name == check)
        .and_then(|c| c.counts.get(key).copied())
        .unwrap_or_else(|| panic!("report {} lacks {check}.{key}", report.suite))
}

const TEST_RINGS: [&str; 4] = ["Z/2", "Z/4", "Z/6", "UT(2,Z/2)"];

fn relations() -> Outcome {
    let mut o = Outcome::new();
    for ring in TEST_RINGS {
        for n in [3, 4] {
            if let Some(r) = o.suite("relations", SuiteConfig::new(ring, n)) {
                let total = count(&r, "relations", "r1") + count(&r, "relations", "r2") + count(&r, "relations", "r3");
                o.require(total > 0, format!("no relation instances for {ring} n={n}"));
            }
        }
    }
    o
}

fn idempotents() -> Outcome {
    let mut o = Outcome::new();
    for ring in TEST_RINGS {
        if let Some(r) = o.suite("idempotents", SuiteConfig::new(ring, 3).with_seed(SEED).with_samples(200)) {
            let order = exgl::ring::parse_ring_spec(ring).unwrap().order() as u64;
            let trials = |name: &str| r.checks.iter().find(|c| c.name == name).unwrap().trials;
            o.require(trials("pairs") == order, format!("{ring}: pairs cover every element"));
            o.require(trials("triples") == 200, format!("{ring}: 200 compositions"));
        }
    }
    o
}

fn normality() -> Outcome {
    let mut o = Outcome::new();
    let z4 = SuiteConfig::new("Z/4", 3).with_ideal(&[2]).with_seed(SEED).with_samples(100);
    if let Some(r) = o.suite("normality", z4) {
        let max = count(&r, "conjugated-transvection", "max-letters");
        o.require(max <= 27, format!("Z/4 letters {max} <= 27"));
        o.require(r.checks[0].trials == 100 * 6 * 2, "Z/4: every (i, j) and x in (2)");
        o.note(format!("Z/4 max letters {max}"));
    }
    let ut = SuiteConfig::new("UT(2,Z/2)", 3).with_ideal(&[5]).with_seed(SEED).with_samples(50);
    if let Some(r) = o.suite("normality", ut) {
        let max = count(&r, "conjugated-transvection", "max-letters");
        o.require(max <= 27, format!("UT(2,Z/2) letters {max} <= 27"));
        o.require(max > 0, "UT(2,Z/2) words are nontrivial");
        o.note(format!("UT(2,Z/2) max letters {max}"));
    }
    o
}

/// `det = 1` over `Z/4` for all `4^9` matrices, by the cofactor formula.
fn special_linear_count_z4() -> usize {
    let mut count = 0;
    for code in 0..(1u32 << 18) {
        let e = |k: u32| ((code >> (2 * k)) & 3) as i64;
        let (a, b, c, d, f, g, h, i, j) = (e(0), e(1), e(2), e(3), e(4), e(5), e(6), e(7), e(8));
        let det = a * (f * j - g * i) - b * (d * j - g * h) + c * (d * i - f * h);
        if det.rem_euclid(4) == 1 {
            count += 1;
        }
    }
    count
}

fn commutator_formula() -> Outcome {
    let mut o = Outcome::new();
    let config = SuiteConfig::new("Z/4", 3).with_ideal(&[2]).with_seed(SEED).with_samples(100);
    if let Some(r) = o.suite("commutator-formula", config) {
        let order = count(&r, "commutator-closure", "relative-order");
        o.require(order == 256, format!("E_3(Z/4, (2)) has order {order}"));
        o.require(r.checks[2].trials == 100, "100 factorizations");
    }
    let gl = Gl::new(Ring::modular(4).unwrap(), 3).unwrap();
    let e = enumerate_closure(&gl, &elementary_generators(&gl).unwrap(), 1 << 18).unwrap();
    let all = enumerate_closure(&gl, &gl_generators(&gl).unwrap(), 1 << 18).unwrap();
    let sl = special_linear_count_z4();
    o.require(e.len() == sl, format!("|E_3(Z/4)| = {} vs |SL_3(Z/4)| = {sl}", e.len()));
    o.require(all.len() == 86016, format!("|GL_3(Z/4)| = {}", all.len()));
    o.note(format!("|E_3(Z/4)| = {}, |GL_3(Z/4)| = {}", e.len(), all.len()));
    o
}

fn reduction() -> Outcome {
    let mut o = Outcome::new();
    if let Some(r) = o.suite("reduction", SuiteConfig::new("Z/2", 3).with_seed(SEED).with_samples(50)) {
        for k in 1..=3u64 {
            let name = format!("chain-length-{k}");
            let c = r.checks.iter().find(|c| c.name == name).unwrap();
            o.require(c.trials == 50 && c.counts["factors"] == 1 << k, format!("{name}: 50 chains of 2^{k}"));
        }
    }
    o
}

fn extraction() -> Outcome {
    let mut o = Outcome::new();
    if let Some(r) = o.suite("extraction", SuiteConfig::new("Z/4", 3).with_seed(SEED).with_samples(50)) {
        let (eight, entry, diag) = (
            count(&r, "eight", "max-factors"),
            count(&r, "entry", "max-factors"),
            count(&r, "diagonal", "max-factors"),
        );
        o.require(eight == 8, format!("eight emits {eight}"));
        o.require(entry <= 40, format!("entry {entry} <= 40"));
        o.require(diag <= 120, format!("diagonal {diag} <= 120"));
        o.note(format!("max factors 8 / {entry} / {diag}"));
    }
    o
}

fn sandwich() -> Outcome {
    let mut o = Outcome::new();
    if let Some(r) = o.suite("sandwich", SuiteConfig::new("Z/4", 3).with_seed(SEED).with_samples(25)) {
        o.require(r.checks[0].trials == 25, "25 classifications");
        o.note(format!("{} witnesses", count(&r, "classify", "witnesses")));
    }
    let r = Ring::modular(4).unwrap();
    let gl = Gl::new(r.clone(), 3).unwrap();
    let zero = Ideal::zero(&r);
    let two = Ideal::generated(&r, &[Elem(2)]).unwrap();
    for (a, b) in [(&zero, &two), (&two, &zero)] {
        match compare_ideals(&gl, a, std::slice::from_ref(b)) {
            Ok(ev) => o.require(ev[0].distinguished(), "(0) and (2) are distinguished"),
            Err(e) => o.require(false, e.to_string()),
        }
    }
    o
}

fn congruence() -> Outcome {
    let mut o = Outcome::new();
    if let Some(r) = o.suite("congruence", SuiteConfig::new("Z/2", 3).with_seed(SEED)) {
        o.require(count(&r, "center-preimage", "exhaustive") == 1, "GL_3(Z/2) exhaustive");
        o.require(count(&r, "center-preimage", "elements") == 168, "all 168 elements of GL_3(Z/2)");
    }
    if let Some(r) = o.suite("congruence", SuiteConfig::new("Z/4", 3).with_seed(SEED).with_samples(500)) {
        o.require(count(&r, "center-preimage", "elements") == 500, "500 elements of GL_3(Z/4)");
    }
    o
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("relations", relations, 60),
        ("orthogonal idempotents", idempotents, 60),
        ("conjugated transvections", normality, 300),
        ("commutator formula", commutator_formula, 600),
        ("reduction counts", reduction, 600),
        ("extraction counts", extraction, 300),
        ("sandwich soundness", sandwich, 600),
        ("congruence oracle", congruence, 600),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        o.require(elapsed < Duration::from_secs(*limit), format!("runtime {elapsed:?} under {limit}s"));
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {} ({name}) in {:.2?}", k + 1, elapsed);
        for note in &o.notes {
            println!("    {note}");
        }
        failed += usize::from(!o.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
