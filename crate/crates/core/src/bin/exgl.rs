use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use exgl::factor::{factor_congruence_commutator, factor_conjugated_transvection, factor_rank_one, factor_unimodular};
use exgl::group::{
    elementary_generators, enumerate_closure, gl_generators, ideal_elementary_generators, normal_closure,
    relative_generators, Gl, GroupWord, InvertibleMatrix, Matrix, DEFAULT_GROUP_CAP,
};
use exgl::harness::{run_suite, sample_congruence, sample_gl, Sampler, SuiteConfig};
use exgl::ring::{all_ideals, parse_ring_spec};
use exgl::witness::{
    classify, compare_ideals, cross_check_level, expand_reduction, extract_diagonal, extract_entry,
    extract_transvection_8,
};
use exgl::{Elem, Error, Ideal, Result};

/// `println!` that exits quietly when standard output is closed.
macro_rules! out {
    ($($arg:tt)*) => {
        line(format_args!($($arg)*))
    };
}

fn line(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("exgl: {e}");
        std::process::exit(1);
    }
}

/// Exact computations with elementary subgroups of GL_n over finite rings.
///
/// Indices on the command line are 1-based; ring elements are given by their
/// index in the ring's canonical order. Matrices are JSON nested arrays and
/// words JSON arrays of {i, j, x, exp}.
#[derive(Parser)]
#[command(name = "exgl", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ring spec: Z/<m>, Prod(..), Mat(<k>,..), UT(<k>,..) or Table(<path>).
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Matrix degree.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Ideal generators, comma separated; omitted means the zero ideal.
    #[arg(long, global = true, value_delimiter = ',')]
    ideal: Vec<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Largest group that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
    /// Write the full JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor into conjugates of I-elementary transvections.
    #[command(subcommand)]
    Factor(FactorCmd),
    /// Express a transvection as a product of conjugates of sigma.
    #[command(subcommand)]
    Extract(ExtractCmd),
    /// Sandwich certificate for the group normally generated by matrices.
    Classify(ClassifyArgs),
    /// Expand a simultaneous reduction chain.
    Reduce(ReduceArgs),
    /// Run a verification suite.
    Suite { name: String },
    /// Enumerate a group and print its order.
    Enumerate {
        /// elementary, ideal, relative or gl.
        group: String,
    },
}

#[derive(Subcommand)]
enum FactorCmd {
    /// e + uv with vu = 0 and v_j = 0.
    RankOne {
        #[arg(long, value_delimiter = ',')]
        u: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u32>,
        #[arg(long)]
        j: usize,
    },
    /// e + uxv for a unimodular row v with vw = 1 and vu = 0.
    Unimodular {
        #[arg(long, value_delimiter = ',')]
        u: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<u32>,
        #[arg(long)]
        x: u32,
    },
    /// t_ij(x)^sigma; sigma is sampled from --seed when omitted.
    ConjTransvection(TransvectionArgs),
    /// [t_ij(x), sigma] for sigma in C_n(R, I); sampled when omitted.
    Commutator(TransvectionArgs),
}

#[derive(Args)]
struct TransvectionArgs {
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
    #[arg(long)]
    x: u32,
}

#[derive(Args)]
struct Target {
    /// Sampled from --seed when omitted.
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long, default_value_t = 1)]
    b: u32,
}

#[derive(Subcommand)]
enum ExtractCmd {
    /// t_kl(a y x_i b) from 8 conjugates, given x_j = 1 and y (sigma_i* xs) = 0.
    Eight {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_delimiter = ',')]
        xs: Vec<u32>,
        #[arg(long)]
        y: u32,
    },
    /// t_kl(a sigma_ij b).
    Entry {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    /// t_kl(a (c sigma_ii - sigma_jj c) b).
    Diagonal {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        c: u32,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// JSON array of matrices; --samples random matrices when omitted.
    #[arg(long)]
    generators: Option<String>,
    /// Compare the level ideal against every ideal of a ring of order <= 16.
    #[arg(long)]
    compare: bool,
    /// Compare with the level over the enumerated normal closure.
    #[arg(long)]
    enumerate: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// JSON word for a_1; random when omitted.
    #[arg(long)]
    a1: Option<String>,
    /// JSON matrix for b_1; random when omitted.
    #[arg(long)]
    b1: Option<String>,
    /// JSON array of words g_1, ..., g_k.
    #[arg(long)]
    gs: Option<String>,
    /// Chain length for random g_i when --gs is omitted.
    #[arg(long, default_value_t = 2)]
    steps: usize,
}

struct Env {
    ring_spec: String,
    gl: Gl,
    ideal: Ideal,
    global: Global,
}

impl Env {
    fn new(global: Global) -> Result<Env> {
        let ring_spec = global.ring.clone().ok_or_else(|| Error::Usage("--ring is required".into()))?;
        let n = global.n.ok_or_else(|| Error::Usage("--n is required".into()))?;
        let ring = parse_ring_spec(&ring_spec)?;
        let gens = global
            .ideal
            .iter()
            .map(|&x| ring.check(Elem(x)))
            .collect::<Result<Vec<_>>>()?;
        let ideal = Ideal::generated(&ring, &gens)?;
        Ok(Env {
            ring_spec,
            gl: Gl::new(ring, n)?,
            ideal,
            global,
        })
    }

    fn elem(&self, x: u32) -> Result<Elem> {
        self.gl.ring().check(Elem(x))
    }

    fn elems(&self, xs: &[u32]) -> Result<Vec<Elem>> {
        xs.iter().map(|&x| self.elem(x)).collect()
    }

    fn index(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.gl.degree() {
            return Err(Error::Usage(format!("index {k} outside 1..={}", self.gl.degree())));
        }
        Ok(k - 1)
    }

    fn matrix(&self, text: &str) -> Result<InvertibleMatrix> {
        let m: Matrix = serde_json::from_str(text)?;
        self.gl.check(&m)?;
        self.gl.invert(&m)
    }

    fn sigma(&self, text: &Option<String>) -> Result<InvertibleMatrix> {
        match text {
            Some(t) => self.matrix(t),
            None => Ok(sample_gl(&self.gl, self.global.seed, 1)?.remove(0)),
        }
    }

    /// Prints or writes `value`, then the evaluation verdict.
    fn emit(&self, value: &impl Serialize, ok: bool) -> Result<bool> {
        let text = serde_json::to_string_pretty(value)?;
        match &self.global.out {
            Some(path) => {
                std::fs::write(path, text + "\n")?;
                out!("wrote {}", path.display());
            }
            None => out!("{text}"),
        }
        out!("eval-check: {}", if ok { "ok" } else { "FAILED" });
        Ok(ok)
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Command::Suite { name } = &cli.command {
        return suite(name, cli.global);
    }
    let env = Env::new(cli.global)?;
    match cli.command {
        Command::Factor(cmd) => factor(&env, cmd),
        Command::Extract(cmd) => extract(&env, cmd),
        Command::Classify(args) => classify_cmd(&env, args),
        Command::Reduce(args) => reduce(&env, args),
        Command::Enumerate { group } => enumerate(&env, &group),
        Command::Suite { .. } => unreachable!(),
    }
}

fn suite(name: &str, g: Global) -> Result<bool> {
    let ring = g.ring.ok_or_else(|| Error::Usage("--ring is required".into()))?;
    let n = g.n.ok_or_else(|| Error::Usage("--n is required".into()))?;
    let config = SuiteConfig::new(&ring, n)
        .with_ideal(&g.ideal)
        .with_seed(g.seed)
        .with_samples(g.samples)
        .with_cap(g.cap);
    let report = run_suite(name, &config)?;
    out!("{}", report.summary().trim_end());
    if let Some(path) = &g.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
        out!("report written to {}", path.display());
    }
    Ok(report.passed)
}

fn factor(env: &Env, cmd: FactorCmd) -> Result<bool> {
    let gl = &env.gl;
    let (word, target) = match cmd {
        FactorCmd::RankOne { u, v, j } => {
            let (u, v) = (env.elems(&u)?, env.elems(&v)?);
            let w = factor_rank_one(gl, &u, &v, env.index(j)?, &env.ideal)?;
            (w, gl.add(&gl.identity(), &gl.outer(&u, &v)))
        }
        FactorCmd::Unimodular { u, v, w, x } => {
            let (u, v, w, x) = (env.elems(&u)?, env.elems(&v)?, env.elems(&w)?, env.elem(x)?);
            let word = factor_unimodular(gl, &u, &v, &w, x, &env.ideal)?;
            (word, gl.add(&gl.identity(), &gl.scale_left_outer(&u, x, &v)))
        }
        FactorCmd::ConjTransvection(a) => {
            let sigma = env.sigma(&a.sigma)?;
            let (i, j, x) = (env.index(a.i)?, env.index(a.j)?, env.elem(a.x)?);
            let w = factor_conjugated_transvection(gl, &sigma, i, j, x, &env.ideal)?;
            (w, gl.conj(gl.transvection(i, j, x)?.matrix(), &sigma))
        }
        FactorCmd::Commutator(a) => {
            let sigma = match &a.sigma {
                Some(t) => env.matrix(t)?,
                None => sample_congruence(gl, &env.ideal, env.global.seed, 1)?.remove(0),
            };
            let (i, j, x) = (env.index(a.i)?, env.index(a.j)?, env.elem(a.x)?);
            let w = factor_congruence_commutator(gl, &sigma, i, j, x, &env.ideal)?;
            (w, gl.commutator(&gl.transvection(i, j, x)?, &sigma).matrix().clone())
        }
    };
    let expanded = word.expand(gl.ring());
    let ok = gl.eval_relative(&word)?.matrix() == &target
        && gl.eval_word(&expanded)?.matrix() == &target
        && word.first_base_outside(&env.ideal).is_none();
    out!("factors: {}, expanded letters: {}", word.len(), expanded.len());
    env.emit(&json!({ "target": target, "word": word, "expanded": expanded }), ok)
}

fn extract(env: &Env, cmd: ExtractCmd) -> Result<bool> {
    let gl = &env.gl;
    let r = gl.ring();
    let (product, target, sigma) = match cmd {
        ExtractCmd::Eight { target, i, j, xs, y } => {
            let sigma = env.sigma(&target.sigma)?;
            let (i, j, k, l) = (env.index(i)?, env.index(j)?, env.index(target.k)?, env.index(target.l)?);
            let (xs, y, a, b) = (env.elems(&xs)?, env.elem(y)?, env.elem(target.a)?, env.elem(target.b)?);
            let p = extract_transvection_8(gl, &sigma, i, j, &xs, y, (k, l), a, b)?;
            let value = r.product_of([a, y, xs[i], b]);
            (p, gl.transvection(k, l, value)?, sigma)
        }
        ExtractCmd::Entry { target, i, j } => {
            let sigma = env.sigma(&target.sigma)?;
            let (i, j, k, l) = (env.index(i)?, env.index(j)?, env.index(target.k)?, env.index(target.l)?);
            let (a, b) = (env.elem(target.a)?, env.elem(target.b)?);
            let p = extract_entry(gl, &sigma, i, j, (k, l), a, b)?;
            let value = r.product_of([a, sigma.entry(i, j), b]);
            (p, gl.transvection(k, l, value)?, sigma)
        }
        ExtractCmd::Diagonal { target, i, j, c } => {
            let sigma = env.sigma(&target.sigma)?;
            let (i, j, k, l) = (env.index(i)?, env.index(j)?, env.index(target.k)?, env.index(target.l)?);
            let (a, b, c) = (env.elem(target.a)?, env.elem(target.b)?, env.elem(c)?);
            let p = extract_diagonal(gl, &sigma, i, j, (k, l), a, b, c)?;
            let inner = r.sub(r.mul(c, sigma.entry(i, i)), r.mul(sigma.entry(j, j), c));
            (p, gl.transvection(k, l, r.product_of([a, inner, b]))?, sigma)
        }
    };
    let ok = product.sigma == sigma && product.eval(gl)? == target;
    out!("conjugates: {}", product.len());
    env.emit(&json!({ "target": target.matrix(), "product": product }), ok)
}

fn classify_cmd(env: &Env, args: ClassifyArgs) -> Result<bool> {
    let gl = &env.gl;
    let generators = match &args.generators {
        Some(text) => {
            let ms: Vec<Matrix> = serde_json::from_str(text)?;
            ms.iter()
                .map(|m| gl.check(m).and_then(|_| gl.invert(m)))
                .collect::<Result<Vec<_>>>()?
        }
        None => sample_gl(gl, env.global.seed, env.global.samples)?,
    };
    let mut cert = classify(gl, &generators)?;
    if args.enumerate {
        cross_check_level(gl, &mut cert, env.global.cap)?;
    }
    let uniqueness = if args.compare {
        let ideals = all_ideals(gl.ring(), 16)?;
        Some(compare_ideals(gl, &cert.ideal, &ideals)?)
    } else {
        None
    };
    let ok = cert.verify(gl).is_ok()
        && uniqueness
            .as_ref()
            .is_none_or(|ev| ev.iter().all(|e| e.distinguished() != e.equal));
    out!(
        "ring {} n={}: level ideal {:?}, {} witnesses",
        env.ring_spec,
        gl.degree(),
        cert.ideal.elements().iter().map(|e| e.0).collect::<Vec<_>>(),
        cert.lower_witnesses.len()
    );
    env.emit(&json!({ "certificate": cert, "uniqueness": uniqueness }), ok)
}

fn reduce(env: &Env, args: ReduceArgs) -> Result<bool> {
    let gl = &env.gl;
    let mut rng = Sampler::new(env.global.seed);
    let a1: GroupWord = match &args.a1 {
        Some(t) => serde_json::from_str(t)?,
        None => rng.word(gl, 4),
    };
    let b1 = match &args.b1 {
        Some(t) => env.matrix(t)?,
        None => rng.gl(gl, 1)?.remove(0),
    };
    let gs: Vec<GroupWord> = match &args.gs {
        Some(t) => serde_json::from_str(t)?,
        None => (0..args.steps).map(|_| rng.word(gl, 4)).collect(),
    };
    let ex = expand_reduction(gl, &a1, &b1, &gs)?;
    let last = ex.chain.last().expect("chain starts with the initial pair");
    let ok = ex.product.len() == 1 << gs.len() && ex.product.eval(gl)? == gl.mul_inv(&last.a, &last.b);
    out!("steps: {}, conjugates: {}", gs.len(), ex.product.len());
    env.emit(&json!({ "a1": a1, "gs": gs, "expansion": ex }), ok)
}

fn enumerate(env: &Env, group: &str) -> Result<bool> {
    let gl = &env.gl;
    let cap = env.global.cap;
    let h = match group {
        "elementary" => enumerate_closure(gl, &elementary_generators(gl)?, cap)?,
        "ideal" => enumerate_closure(gl, &ideal_elementary_generators(gl, &env.ideal)?, cap)?,
        "relative" => {
            let by = elementary_generators(gl)?;
            let h = normal_closure(gl, &ideal_elementary_generators(gl, &env.ideal)?, &by, cap)?;
            let direct = enumerate_closure(gl, &relative_generators(gl, &env.ideal)?, cap)?;
            out!("closure of the conjugates t_ij(x)^t_kl(y): order {}", direct.len());
            h
        }
        "gl" => enumerate_closure(gl, &gl_generators(gl)?, cap)?,
        other => {
            return Err(Error::Usage(format!(
                "unknown group `{other}`; expected elementary, ideal, relative or gl"
            )))
        }
    };
    out!("{group} group over {} n={}: order {}", env.ring_spec, gl.degree(), h.len());
    if let Some(path) = &env.global.out {
        let payload = json!({ "group": group, "ring": env.ring_spec, "n": gl.degree(), "order": h.len(), "elements": h.elements() });
        std::fs::write(path, serde_json::to_string_pretty(&payload)? + "\n")?;
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e @ Error::Usage(_)) => {
            eprintln!("exgl: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("exgl: {e}");
            ExitCode::FAILURE
        }
    }
}
