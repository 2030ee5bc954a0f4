//! Batch verification suites.
//!
//! A suite is a deterministic function of its [`SuiteConfig`]: trials run in a
//! fixed order from a single seeded [`Sampler`], and reports contain no timings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::sample::Sampler;
use crate::error::{Error, Result};
use crate::factor::{factor_congruence_commutator, factor_conjugated_transvection};
use crate::group::{
    check_relations, elementary_generators, enumerate_closure, gl_generators, ideal_elementary_generators,
    normal_closure, CenterOracle, Gl, InvertibleMatrix, Matrix, Subgroup, DEFAULT_GROUP_CAP,
};
use crate::ring::{
    all_ideals, nicholson_idempotent, orthogonal_decomposition, parse_ring_spec, verify_ring_axioms, Elem,
    Ideal, Ring, DEFAULT_ELEMENT_CAP,
};
use crate::witness::{
    classify, compare_ideals, cross_check_level, expand_reduction, extract_diagonal, extract_entry,
    extract_transvection_8, LevelSource, ReductionPair,
};

pub const SUITES: &[&str] = &[
    "relations",
    "idempotents",
    "normality",
    "commutator-formula",
    "sandwich",
    "reduction",
    "extraction",
    "congruence",
];

/// Ideal lattices are enumerated only for rings up to this order.
const LATTICE_ORDER: u32 = 16;

/// Groups with at most this many candidate matrices are checked exhaustively.
const EXHAUSTIVE_MATRICES: u64 = 1 << 12;

/// Letters per random word in reduction chains.
const CHAIN_WORD_LEN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub ring: String,
    pub n: usize,
    /// Generators of the ideal as element indices; empty for the zero ideal.
    pub ideal: Vec<u32>,
    pub seed: u64,
    pub samples: usize,
    /// Largest group any suite may enumerate.
    pub cap: usize,
}

impl SuiteConfig {
    pub fn new(ring: &str, n: usize) -> SuiteConfig {
        SuiteConfig {
            ring: ring.to_string(),
            n,
            ideal: Vec::new(),
            seed: 1,
            samples: 100,
            cap: DEFAULT_GROUP_CAP,
        }
    }

    pub fn with_ideal(mut self, gens: &[u32]) -> SuiteConfig {
        self.ideal = gens.to_vec();
        self
    }

    pub fn with_seed(mut self, seed: u64) -> SuiteConfig {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> SuiteConfig {
        self.samples = samples;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> SuiteConfig {
        self.cap = cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub trials: u64,
    pub counts: BTreeMap<String, u64>,
    /// Inputs of the first failing trial.
    pub counterexample: Option<Value>,
}

impl Check {
    fn new(name: &str) -> Check {
        Check {
            name: name.to_string(),
            passed: true,
            trials: 0,
            counts: BTreeMap::new(),
            counterexample: None,
        }
    }

    fn trial(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.trials += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(payload());
        }
    }

    /// Records the outcome of a fallible trial; an error is a failure.
    fn attempt(&mut self, outcome: Result<bool>, payload: impl FnOnce() -> Value) {
        match outcome {
            Ok(ok) => self.trial(ok, payload),
            Err(e) => {
                let mut p = payload();
                p["error"] = json!(e.to_string());
                self.trial(false, || p);
            }
        }
    }

    fn set(&mut self, key: &str, v: u64) {
        self.counts.insert(key.to_string(), v);
    }

    fn max(&mut self, key: &str, v: u64) {
        let e = self.counts.entry(key.to_string()).or_insert(0);
        *e = (*e).max(v);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str, config: &SuiteConfig, checks: Vec<Check>) -> Report {
        Report {
            suite: suite.to_string(),
            config: config.clone(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    /// One line for the suite and one per check.
    pub fn summary(&self) -> String {
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let mut out = format!(
            "suite {} on {} n={}: {}\n",
            self.suite,
            self.config.ring,
            self.config.n,
            verdict(self.passed)
        );
        for c in &self.checks {
            let counts: Vec<String> = c.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("  {}: {} ({} trials", c.name, verdict(c.passed), c.trials));
            if !counts.is_empty() {
                out.push_str(&format!("; {}", counts.join(", ")));
            }
            out.push_str(")\n");
            if let Some(p) = &c.counterexample {
                out.push_str(&format!("    counterexample: {p}\n"));
            }
        }
        out
    }
}

struct Context<'a> {
    config: &'a SuiteConfig,
    gl: Gl,
    ideal: Ideal,
    rng: Sampler,
}

impl Context<'_> {
    fn ring(&self) -> &Ring {
        self.gl.ring()
    }

    /// Self-contained reproduction data for a trial on `sigma`.
    fn payload(&self, sigma: &Matrix, extra: Value) -> Value {
        let mut p = json!({
            "ring": self.config.ring,
            "n": self.config.n,
            "ideal": self.config.ideal,
            "sigma": sigma,
        });
        if let (Value::Object(base), Value::Object(more)) = (&mut p, extra) {
            base.extend(more);
        }
        p
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::Usage(format!("unknown suite `{name}`; expected one of {}", SUITES.join(", "))));
    }
    let ring = parse_ring_spec(&config.ring)?;
    let gens = config
        .ideal
        .iter()
        .map(|&x| ring.check(Elem(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut cx = Context {
        config,
        gl: Gl::new(ring.clone(), config.n)?,
        ideal: Ideal::generated(&ring, &gens)?,
        rng: Sampler::new(config.seed),
    };
    let checks = match name {
        "relations" => relations(&cx)?,
        "idempotents" => idempotents(&mut cx)?,
        "normality" => normality(&mut cx)?,
        "commutator-formula" => commutator_formula(&mut cx)?,
        "sandwich" => sandwich(&mut cx)?,
        "reduction" => reduction(&mut cx)?,
        "extraction" => extraction(&mut cx)?,
        "congruence" => congruence(&mut cx)?,
        _ => unreachable!(),
    };
    Ok(Report::new(name, config, checks))
}

fn relations(cx: &Context) -> Result<Vec<Check>> {
    let mut axioms = Check::new("ring-axioms");
    let ar = verify_ring_axioms(cx.ring(), DEFAULT_ELEMENT_CAP)?;
    axioms.trial(ar.passed(), || json!({ "ring": cx.config.ring, "violation": ar.violation }));

    let rep = check_relations(&cx.gl)?;
    let mut rel = Check::new("relations");
    rel.trial(rep.passed(), || {
        json!({ "ring": cx.config.ring, "n": cx.config.n, "failure": rep.failure })
    });
    rel.trials = rep.checked.iter().sum();
    for (k, name) in ["r1", "r2", "r3"].iter().enumerate() {
        rel.set(name, rep.checked[k]);
    }
    Ok(vec![axioms, rel])
}

/// Idempotency, orthogonality, sum one and `e_i = x_i r_i`, checked directly.
fn decomposition_holds(r: &Ring, xs: &[Elem]) -> Result<bool> {
    let d = orthogonal_decomposition(r, xs)?;
    let es = &d.idempotents;
    let ok = es.len() == xs.len()
        && r.sum(es.iter().copied()) == r.one()
        && es.iter().all(|&e| r.mul(e, e) == e)
        && (0..es.len()).all(|a| (0..es.len()).all(|b| a == b || r.mul(es[a], es[b]) == r.zero()))
        && xs.iter().zip(&d.witnesses).zip(es).all(|((&x, &w), &e)| r.mul(x, w) == e);
    Ok(ok)
}

fn idempotents(cx: &mut Context) -> Result<Vec<Check>> {
    let r = cx.ring().clone();
    let mut single = Check::new("exchange-idempotent");
    let mut pairs = Check::new("pairs");
    for x in r.elements() {
        let payload = || json!({ "ring": cx.config.ring, "x": x });
        single.attempt(
            nicholson_idempotent(&r, x).map(|w| {
                r.is_idempotent(w.idempotent)
                    && r.mul(x, w.left) == w.idempotent
                    && r.sub(r.one(), w.idempotent) == r.mul(r.sub(r.one(), x), w.right)
            }),
            payload,
        );
        pairs.attempt(decomposition_holds(&r, &[x, r.sub(r.one(), x)]), payload);
    }
    let mut triples = Check::new("triples");
    for _ in 0..cx.config.samples {
        let (a, b) = (cx.rng.elem(&r), cx.rng.elem(&r));
        let xs = [a, b, r.sub(r.sub(r.one(), a), b)];
        triples.attempt(decomposition_holds(&r, &xs), || json!({ "ring": cx.config.ring, "xs": xs }));
    }
    Ok(vec![single, pairs, triples])
}

fn normality(cx: &mut Context) -> Result<Vec<Check>> {
    let (gl, n) = (&cx.gl, cx.config.n);
    let r = gl.ring();
    let bound = (4 * n * n - 3 * n) as u64;
    let mut check = Check::new("conjugated-transvection");
    check.set("letter-bound", bound);
    check.set("max-letters", 0);
    for sigma in cx.rng.gl(gl, cx.config.samples)? {
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for &x in cx.ideal.elements() {
                    let outcome = factor_conjugated_transvection(gl, &sigma, i, j, x, &cx.ideal).and_then(|w| {
                        let expanded = w.expand(r);
                        let target = gl.conj(gl.transvection(i, j, x)?.matrix(), &sigma);
                        let letters = expanded.len() as u64;
                        check.max("max-letters", letters);
                        Ok(gl.eval_word(&expanded)?.matrix() == &target
                            && letters <= bound
                            && w.first_base_outside(&cx.ideal).is_none())
                    });
                    check.attempt(outcome, || {
                        cx.payload(sigma.matrix(), json!({ "i": i + 1, "j": j + 1, "x": x }))
                    });
                }
            }
        }
    }
    Ok(vec![check])
}

/// `E_n(R, I)` as the `E_n(R)`-normal closure of `E_n(I)`.
fn relative_group(gl: &Gl, ideal: &Ideal, cap: usize) -> Result<Subgroup> {
    normal_closure(gl, &ideal_elementary_generators(gl, ideal)?, &elementary_generators(gl)?, cap)
}

fn commutator_formula(cx: &mut Context) -> Result<Vec<Check>> {
    let gl = cx.gl.clone();
    let r = gl.ring().clone();
    let cap = cx.config.cap;
    let e_gens = elementary_generators(&gl)?;
    let rel_gens = crate::group::relative_generators(&gl, &cx.ideal)?;
    let relative = relative_group(&gl, &cx.ideal, cap)?;

    let mut closure = Check::new("commutator-closure");
    let mut comms: Vec<InvertibleMatrix> = Vec::new();
    for g in &e_gens {
        for h in &rel_gens {
            let c = gl.commutator(g, h);
            if !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let generated = enumerate_closure(&gl, &comms, cap)?;
    let normal = normal_closure(&gl, &comms, &e_gens, cap)?;
    closure.set("relative-order", relative.len() as u64);
    closure.set("commutator-closure-order", generated.len() as u64);
    closure.set("commutator-normal-closure-order", normal.len() as u64);
    closure.trial(generated == relative && normal == relative, || {
        json!({ "ring": cx.config.ring, "n": cx.config.n, "ideal": cx.config.ideal })
    });

    let mut converse = Check::new("commutators-land-in-relative");
    let mut formula = Check::new("commutator-factorization");
    formula.set("max-factors", 0);
    let sigmas = cx.rng.congruence(&gl, &cx.ideal, cx.config.samples)?;
    for sigma in &sigmas {
        let g = gl.eval_word(&cx.rng.word(&gl, CHAIN_WORD_LEN))?;
        let c = gl.commutator(&g, sigma);
        converse.trial(relative.contains(c.matrix()), || {
            cx.payload(sigma.matrix(), json!({ "g": g.matrix() }))
        });

        let (i, j) = cx.rng.pair(gl.degree());
        let x = cx.rng.elem(&r);
        let outcome = factor_congruence_commutator(&gl, sigma, i, j, x, &cx.ideal).and_then(|w| {
            let target = gl.commutator(&gl.transvection(i, j, x)?, sigma);
            formula.max("max-factors", w.len() as u64);
            Ok(gl.eval_relative(&w)? == target
                && w.first_base_outside(&cx.ideal).is_none()
                && relative.contains(target.matrix()))
        });
        formula.attempt(outcome, || {
            cx.payload(sigma.matrix(), json!({ "i": i + 1, "j": j + 1, "x": x }))
        });
    }
    Ok(vec![closure, converse, formula])
}

/// The ideals to compare against: the whole lattice for small rings.
fn comparison_ideals(r: &Ring, config_ideal: &Ideal) -> Result<Vec<Ideal>> {
    if r.order() <= LATTICE_ORDER {
        return all_ideals(r, LATTICE_ORDER);
    }
    let mut out = vec![Ideal::zero(r), Ideal::whole(r)];
    if !out.contains(config_ideal) {
        out.push(config_ideal.clone());
    }
    Ok(out)
}

fn sandwich(cx: &mut Context) -> Result<Vec<Check>> {
    let gl = cx.gl.clone();
    let r = gl.ring().clone();
    let mut sound = Check::new("classify");
    sound.set("max-witness-factors", 0);
    sound.set("witnesses", 0);
    let mut cross = Check::new("level-cross-check");
    let sigmas = cx.rng.gl(&gl, cx.config.samples)?;
    for (t, sigma) in sigmas.iter().enumerate() {
        let outcome = classify(&gl, std::slice::from_ref(sigma)).and_then(|cert| {
            cert.verify(&gl)?;
            let level = gl.level_ideal(sigma.matrix())?;
            let values: Vec<Elem> = cert.lower_witnesses.iter().map(|w| w.value).collect();
            let covered = Ideal::generated(&r, &values)? == level;
            let positions = cert.lower_witnesses.len() == values.iter().collect::<std::collections::BTreeSet<_>>().len()
                * gl.degree()
                * (gl.degree() - 1);
            let mut ok = cert.ideal == level && gl.congruence_member(sigma.matrix(), &level) && covered && positions;
            for w in &cert.lower_witnesses {
                sound.max("max-witness-factors", w.product.len() as u64);
                let target = gl.transvection(w.position.0, w.position.1, w.value)?;
                ok &= w.product.eval(&gl)? == target;
            }
            *sound.counts.get_mut("witnesses").expect("initialised") += cert.lower_witnesses.len() as u64;
            if t == 0 {
                let mut cert = cert;
                cross_check_level(&gl, &mut cert, cx.config.cap)?;
                if let LevelSource::Enumerated { order, equal } = cert.level_source {
                    cross.set("closure-order", order as u64);
                    cross.trial(equal, || cx.payload(sigma.matrix(), json!({})));
                }
            }
            Ok(ok)
        });
        sound.attempt(outcome, || cx.payload(sigma.matrix(), json!({})));
    }

    let mut unique = Check::new("uniqueness");
    let ideals = comparison_ideals(&r, &cx.ideal)?;
    unique.set("ideals", ideals.len() as u64);
    for a in &ideals {
        for ev in compare_ideals(&gl, a, &ideals)? {
            unique.trial(ev.distinguished() != ev.equal, || {
                json!({ "ring": cx.config.ring, "n": cx.config.n, "ideal": a, "other": ev.other })
            });
        }
    }
    Ok(vec![sound, cross, unique])
}

fn reduction(cx: &mut Context) -> Result<Vec<Check>> {
    let gl = cx.gl.clone();
    let mut checks = Vec::new();
    for k in 1..=3usize {
        let mut check = Check::new(&format!("chain-length-{k}"));
        check.set("factors", 1 << k);
        for _ in 0..cx.config.samples {
            let a1 = cx.rng.word(&gl, CHAIN_WORD_LEN);
            let b1 = cx.rng.gl(&gl, 1)?.remove(0);
            let gs: Vec<_> = (0..k).map(|_| cx.rng.word(&gl, CHAIN_WORD_LEN)).collect();
            let outcome = expand_reduction(&gl, &a1, &b1, &gs).and_then(|ex| {
                let mut pair = ReductionPair {
                    a: gl.eval_word(&a1)?,
                    b: b1.clone(),
                };
                for g in &gs {
                    let g = gl.eval_word(g)?;
                    pair = ReductionPair {
                        a: gl.commutator(&pair.a.inv(), &g),
                        b: gl.commutator(&g, &pair.b),
                    };
                }
                Ok(ex.product.len() == 1 << k
                    && ex.product.eval(&gl)? == gl.mul_inv(&pair.a, &pair.b)
                    && ex.chain.last() == Some(&pair))
            });
            check.attempt(outcome, || {
                cx.payload(b1.matrix(), json!({ "a1": a1, "gs": gs }))
            });
        }
        checks.push(check);
    }
    Ok(checks)
}

fn extraction(cx: &mut Context) -> Result<Vec<Check>> {
    let gl = cx.gl.clone();
    let r = gl.ring().clone();
    let n = gl.degree();
    let mut eight = Check::new("eight");
    let mut entry = Check::new("entry");
    let mut diagonal = Check::new("diagonal");
    entry.set("bound", (16 * n - 8) as u64);
    diagonal.set("bound", (48 * n - 24) as u64);
    for check in [&mut eight, &mut entry, &mut diagonal] {
        check.set("max-factors", 0);
    }
    for sigma in cx.rng.gl(&gl, cx.config.samples)? {
        let s = |a: usize, b: usize| sigma.entry(a, b);

        let i = cx.rng.index(n);
        let j = cx.rng.index(n);
        let mut xs: Vec<Elem> = (0..n).map(|_| cx.rng.elem(&r)).collect();
        xs[j] = r.one();
        let row = r.sum((0..n).map(|p| r.mul(s(i, p), xs[p])));
        let annihilators: Vec<Elem> = r.elements().filter(|&y| r.mul(y, row) == r.zero()).collect();
        let y = cx.rng.pick(&annihilators);
        let kl = cx.rng.pair(n);
        let (a, b) = (cx.rng.elem(&r), cx.rng.elem(&r));
        let outcome = extract_transvection_8(&gl, &sigma, i, j, &xs, y, kl, a, b).and_then(|p| {
            eight.max("max-factors", p.len() as u64);
            let target = gl.transvection(kl.0, kl.1, r.product_of([a, y, xs[i], b]))?;
            Ok(p.len() == 8 && p.eval(&gl)? == target)
        });
        eight.attempt(outcome, || {
            cx.payload(
                sigma.matrix(),
                json!({ "i": i + 1, "j": j + 1, "xs": xs, "y": y, "k": kl.0 + 1, "l": kl.1 + 1, "a": a, "b": b }),
            )
        });

        let (i, j) = cx.rng.pair(n);
        let kl = cx.rng.pair(n);
        let (a, b, c) = (cx.rng.elem(&r), cx.rng.elem(&r), cx.rng.elem(&r));
        let payload = || {
            cx.payload(
                sigma.matrix(),
                json!({ "i": i + 1, "j": j + 1, "k": kl.0 + 1, "l": kl.1 + 1, "a": a, "b": b, "c": c }),
            )
        };
        let outcome = extract_entry(&gl, &sigma, i, j, kl, a, b).and_then(|p| {
            entry.max("max-factors", p.len() as u64);
            let target = gl.transvection(kl.0, kl.1, r.product_of([a, s(i, j), b]))?;
            Ok(p.len() <= 16 * n - 8 && p.eval(&gl)? == target)
        });
        entry.attempt(outcome, payload);
        let outcome = extract_diagonal(&gl, &sigma, i, j, kl, a, b, c).and_then(|p| {
            diagonal.max("max-factors", p.len() as u64);
            let inner = r.sub(r.mul(c, s(i, i)), r.mul(s(j, j), c));
            let target = gl.transvection(kl.0, kl.1, r.product_of([a, inner, b]))?;
            Ok(p.len() <= 48 * n - 24 && p.eval(&gl)? == target)
        });
        diagonal.attempt(outcome, payload);
    }
    Ok(vec![eight, entry, diagonal])
}

fn congruence(cx: &mut Context) -> Result<Vec<Check>> {
    let gl = cx.gl.clone();
    let r = gl.ring().clone();
    let n = gl.degree() as u32;
    let exhaustive = (r.order() as u64).checked_pow(n * n).is_some_and(|c| c <= EXHAUSTIVE_MATRICES);
    let elements: Vec<Matrix> = if exhaustive {
        enumerate_closure(&gl, &gl_generators(&gl)?, cx.config.cap)?.elements().to_vec()
    } else {
        cx.rng
            .gl(&gl, cx.config.samples)?
            .into_iter()
            .map(|s| s.matrix().clone())
            .collect()
    };
    let ideals = comparison_ideals(&r, &cx.ideal)?;
    let mut check = Check::new("center-preimage");
    check.set("elements", elements.len() as u64);
    check.set("ideals", ideals.len() as u64);
    check.set("exhaustive", exhaustive as u64);
    for ideal in &ideals {
        let oracle = CenterOracle::new(&gl, ideal)?;
        for m in &elements {
            check.trial(oracle.is_member(m) == gl.congruence_member(m, ideal), || {
                cx.payload(m, json!({ "ideal": ideal }))
            });
        }
    }
    Ok(vec![check])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        let c = SuiteConfig::new("Z/2", 3);
        assert!(matches!(run_suite("nope", &c), Err(Error::Usage(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let c = SuiteConfig::new("Z/4", 3).with_ideal(&[2]).with_samples(3);
        for name in ["normality", "extraction", "reduction"] {
            let a = serde_json::to_string(&run_suite(name, &c).unwrap()).unwrap();
            let b = serde_json::to_string(&run_suite(name, &c).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn relations_pass_over_z4() {
        let rep = run_suite("relations", &SuiteConfig::new("Z/4", 3)).unwrap();
        assert!(rep.passed, "{}", rep.summary());
    }

    #[test]
    fn idempotents_pass_over_z6() {
        let rep = run_suite("idempotents", &SuiteConfig::new("Z/6", 3).with_samples(50)).unwrap();
        assert!(rep.passed, "{}", rep.summary());
    }

    #[test]
    fn failing_trial_keeps_its_inputs() {
        let mut c = Check::new("x");
        c.trial(true, || json!(null));
        c.trial(false, || json!({ "k": 1 }));
        c.trial(false, || json!({ "k": 2 }));
        assert!(!c.passed);
        assert_eq!(c.trials, 3);
        assert_eq!(c.counterexample, Some(json!({ "k": 1 })));
    }
}
