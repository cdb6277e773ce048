//! Command-line interface.
//!
//! Exit status: 0 on success or PASS, 1 when a check fails or a violation
//! is found, 2 on usage and input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use qmms_core::algebra::{gaussian, Rational};
use qmms_core::extremal::{
    bad_config_bound, count_badly_meeting, find_bad_configurations, is_bad_configuration, max_delta, table_rows,
    theorem_certificate, verify_lemma_bounds, LemmaOutcome, LemmaParams,
};
use qmms_core::geometry::Grassmannian;
use qmms_core::scheme::{distance_one_coefficient, distance_one_sum, eigencheck, valency};
use qmms_core::search::{
    exhaustive_min_with, heuristic_min, verify_conjecture, ConjectureConfig, ExhaustiveOptions, HeuristicConfig,
    Regime, SearchMode, Verdict,
};
use qmms_core::weights::weight_vector;
use qmms_core::{GeometryContext, Subspace, SubspaceIndex, WeightFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::format;
use crate::ledger::{Entry, LedgerWriter};
use crate::pool::{RayonPool, WORKERS_ENV};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Heuristic,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Heuristic => SearchMode::Heuristic,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qmms", version, about = "Nonnegative k-subspaces of sum-zero weightings of PG(n-1, q)")]
pub struct Cli {
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 0)]
    pub workers: usize,
    /// Irreducible polynomial for F_q, constant term first, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Vec<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gaussian coefficient [n over k]_q.
    Gauss { n: i64, k: i64, q: u64 },
    /// k-subspaces of F_q^n as JSON lines of reduced row echelon bases.
    Enumerate {
        n: usize,
        k: usize,
        q: u64,
        #[arg(long)]
        count_only: bool,
    },
    /// Weight vector on k-subspaces of a weighting file.
    WeightEval {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Checks A_i b = λ_i b on random sum-zero weightings.
    EigenCheck {
        n: usize,
        k: usize,
        q: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Which clause of the main theorem covers (n, k, q).
    Bounds { n: u64, k: u64, q: u64 },
    /// Field-size thresholds and dimension bounds of the theorem, x = 2..6.
    Tables,
    /// Counts subspaces meeting a bad configuration badly against the bound.
    BadConfig {
        n: usize,
        k: usize,
        q: u64,
        /// Comma separated k-subspace ids; sampled at random when omitted.
        #[arg(long, value_delimiter = ',')]
        config: Option<Vec<u64>>,
        /// Size of sampled configurations.
        #[arg(long, default_value_t = 2)]
        x: usize,
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Smallest realizable family of nonnegative k-subspaces.
    SearchMin {
        n: usize,
        k: usize,
        q: u64,
        #[arg(long, value_enum, default_value_t = Mode::Heuristic)]
        mode: Mode,
        /// Largest family size examined by the exhaustive search.
        #[arg(long)]
        cap: Option<usize>,
        /// Families (exhaustive) or LP calls (heuristic).
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        /// Writes the witness weighting of the best family.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Disables the spread pre-filter of the exhaustive search.
        #[arg(long)]
        no_spread_filter: bool,
    },
    /// Evaluates the conjectured minimum at (n, k, q).
    VerifyConjecture {
        n: usize,
        k: usize,
        q: u64,
        #[arg(long, value_enum, default_value_t = Mode::Heuristic)]
        mode: Mode,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        ledger: Option<PathBuf>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Runs the counting-lemma checks on constructed and random weightings.
    VerifyLemmas {
        n: usize,
        k: usize,
        q: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        x: usize,
        /// The constant c, as an integer or a fraction; defaults to the
        /// theorem's value.
        #[arg(long)]
        c: Option<String>,
    },
    /// Dual weighting g(H) = sum of f over the points of H.
    Dualize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Diagnostics go to `err`.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

struct Env<'a> {
    cli: &'a Cli,
}

impl Env<'_> {
    fn ctx(&self, n: usize, q: u64) -> Result<GeometryContext> {
        let field = format::field(q, &self.cli.modulus)?;
        Ok(GeometryContext::new(n, field)?)
    }

    fn index(&self, n: usize, k: usize, q: u64) -> Result<SubspaceIndex> {
        Ok(SubspaceIndex::new(Arc::new(self.ctx(n, q)?), k)?)
    }

    fn pool(&self) -> Result<RayonPool> {
        RayonPool::new(self.cli.workers)
    }

    fn format(&self, default: OutputFormat) -> OutputFormat {
        self.cli.format.unwrap_or(default)
    }

    /// Independent stream `stream` of the run's generator.
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cli.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    let env = Env { cli };
    match &cli.command {
        Command::Gauss { n, k, q } => gauss(&env, *n, *k, *q, out),
        Command::Enumerate { n, k, q, count_only } => enumerate(&env, *n, *k, *q, *count_only, out),
        Command::WeightEval { file, k } => weight_eval(&env, file, *k, out),
        Command::EigenCheck { n, k, q, trials } => eigen_check(&env, *n, *k, *q, *trials, out),
        Command::Bounds { n, k, q } => bounds(&env, *n, *k, *q, out),
        Command::Tables => tables(&env, out),
        Command::BadConfig { n, k, q, config, x, samples } => bad_config(&env, *n, *k, *q, config.as_deref(), *x, *samples, out),
        Command::SearchMin { n, k, q, mode, cap, budget, ledger, witness, no_spread_filter } => {
            let opts = SearchArgs { mode: *mode, cap: *cap, budget: *budget, spread_filter: !no_spread_filter };
            search_min(&env, *n, *k, *q, &opts, ledger.as_deref(), witness.as_deref(), out)
        }
        Command::VerifyConjecture { n, k, q, mode, budget, ledger, witness } => {
            conjecture(&env, *n, *k, *q, *mode, *budget, ledger.as_deref(), witness.as_deref(), out)
        }
        Command::VerifyLemmas { n, k, q, trials, x, c } => verify_lemmas(&env, *n, *k, *q, *trials, *x, c.as_deref(), out),
        Command::Dualize { file, out: path } => dualize(file, path.as_deref(), out),
    }
}

fn gauss(env: &Env, n: i64, k: i64, q: u64, out: &mut dyn Write) -> Result<Status> {
    let value = gaussian(n, k, q)?;
    match env.format(OutputFormat::Text) {
        OutputFormat::Text => writeln!(out, "{value}")?,
        OutputFormat::Csv => writeln!(out, "n,k,q,value\n{n},{k},{q},{value}")?,
        OutputFormat::Json => writeln!(out, "{}", json!({ "n": n, "k": k, "q": q, "value": value.to_string() }))?,
    }
    Ok(Status::Pass)
}

fn rref_rows(s: &Subspace) -> Vec<Vec<u16>> {
    s.rows().map(<[u16]>::to_vec).collect()
}

fn enumerate(env: &Env, n: usize, k: usize, q: u64, count_only: bool, out: &mut dyn Write) -> Result<Status> {
    let ctx = env.ctx(n, q)?;
    let grass = Grassmannian::new(&ctx, k)?;
    if count_only {
        match env.format(OutputFormat::Text) {
            OutputFormat::Json => writeln!(out, "{}", json!({ "n": n, "k": k, "q": q, "count": grass.len() }))?,
            _ => writeln!(out, "{}", grass.len())?,
        }
        return Ok(Status::Pass);
    }
    let mut result = Ok(());
    grass.for_each(|id, s| {
        if result.is_ok() {
            result = writeln!(out, "{}", json!({ "id": id, "rref": rref_rows(s) }));
        }
    });
    result?;
    Ok(Status::Pass)
}

fn weight_eval(env: &Env, file: &Path, k: usize, out: &mut dyn Write) -> Result<Status> {
    let w = format::read(file)?;
    let index = SubspaceIndex::new(Arc::new(w.ctx), k)?;
    let b = weight_vector(&index, &w.f);
    let count = b.nonneg_count();
    match env.format(OutputFormat::Csv) {
        OutputFormat::Json => {
            let weights: Vec<String> = b.values().iter().map(ToString::to_string).collect();
            writeln!(out, "{}", json!({ "k": k, "weights": weights, "nonnegative": b.nonneg_ids(), "nonnegative_count": count }))?;
        }
        _ => {
            writeln!(out, "subspace,weight,nonnegative")?;
            for (id, v) in b.values().iter().enumerate() {
                writeln!(out, "{id},{v},{}", !v.is_negative())?;
            }
            writeln!(out, "nonnegative_count,{count}")?;
        }
    }
    Ok(Status::Pass)
}

fn eigen_check(env: &Env, n: usize, k: usize, q: u64, trials: usize, out: &mut dyn Write) -> Result<Status> {
    let index = env.index(n, k, q)?;
    let mut rng = env.rng(1);
    let mut failures = vec![0usize; k + 1];
    let mut eigenvalues = Vec::new();
    let coefficient = Rational::from_integer(distance_one_coefficient(n, k, q));
    let mut distance_one_ok = true;
    for trial in 0..trials {
        let f = WeightFunction::random(index.ctx(), &mut rng, 100, 20);
        let b = weight_vector(&index, &f);
        let checks = eigencheck(&index, &b)?;
        for c in &checks {
            if !c.passed() {
                failures[c.i] += 1;
            }
        }
        if trial == 0 {
            eigenvalues = checks.into_iter().map(|c| c.eigenvalue).collect();
        }
        if k >= 1 && trial < 3 {
            let c = trial % index.len();
            distance_one_ok &= distance_one_sum(&index, c, &b) == &coefficient * b.get(c);
        }
    }
    if trials == 0 {
        eigenvalues = (0..=k).map(|i| qmms_core::scheme::eigenvalue(n, k, q, i)).collect();
    }
    let all = failures.iter().all(|&f| f == 0) && distance_one_ok;
    match env.format(OutputFormat::Text) {
        OutputFormat::Json => {
            let rows: Vec<_> = eigenvalues
                .iter()
                .enumerate()
                .map(|(i, l)| json!({ "i": i, "eigenvalue": l.to_string(), "valency": valency(n, k, q, i).to_string(), "failures": failures[i] }))
                .collect();
            writeln!(out, "{}", json!({ "n": n, "k": k, "q": q, "trials": trials, "eigenvalues": rows, "distance_one": distance_one_ok, "status": pass(all) }))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "i,eigenvalue,valency,trials,status")?;
            for (i, l) in eigenvalues.iter().enumerate() {
                writeln!(out, "{i},{l},{},{trials},{}", valency(n, k, q, i), pass(failures[i] == 0))?;
            }
        }
        OutputFormat::Text => {
            for (i, l) in eigenvalues.iter().enumerate() {
                writeln!(out, "i={i} eigenvalue={l} valency={} {}", valency(n, k, q, i), pass(failures[i] == 0))?;
            }
            writeln!(out, "distance-one sum coefficient={coefficient} {}", pass(distance_one_ok))?;
            writeln!(out, "{}", pass(all))?;
        }
    }
    Ok(Status::from_ok(all))
}

fn bounds(env: &Env, n: u64, k: u64, q: u64, out: &mut dyn Write) -> Result<Status> {
    let cert = theorem_certificate(n, k, q);
    let conditions: Vec<_> = cert.conditions.iter().map(|(c, ok)| json!({ "condition": c, "holds": ok })).collect();
    match env.format(OutputFormat::Json) {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json!({ "n": n, "k": k, "q": q, "clause": cert.clause.label(), "x": cert.x, "conditions": conditions }))?
        )?,
        OutputFormat::Csv => {
            writeln!(out, "condition,holds")?;
            for (c, ok) in &cert.conditions {
                writeln!(out, "\"{c}\",{ok}")?;
            }
        }
        OutputFormat::Text => {
            writeln!(out, "clause {} x={}", cert.clause.label(), cert.x.map_or("-".into(), |x| x.to_string()))?;
            for (c, ok) in &cert.conditions {
                writeln!(out, "  [{}] {c}", if *ok { "x" } else { " " })?;
            }
        }
    }
    Ok(Status::Pass)
}

fn tables(env: &Env, out: &mut dyn Write) -> Result<Status> {
    let rows = table_rows();
    match env.format(OutputFormat::Csv) {
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| json!({ "x": r.x, "clause_a_q": r.clause_a_q.to_string(), "n_bound": r.n_bound, "clause_b_q": r.clause_b_q.to_string(), "k_bound": r.k_bound }))
                .collect();
            writeln!(out, "{}", serde_json::Value::from(rows))?;
        }
        _ => {
            writeln!(out, "x,clause_a_q,n_bound,clause_b_q,k_bound")?;
            for r in rows {
                writeln!(out, "{},{},{},{},{}", r.x, r.clause_a_q, r.n_bound, r.clause_b_q, r.k_bound)?;
            }
        }
    }
    Ok(Status::Pass)
}

#[allow(clippy::too_many_arguments)]
fn bad_config(
    env: &Env,
    n: usize,
    k: usize,
    q: u64,
    config: Option<&[u64]>,
    x: usize,
    samples: usize,
    out: &mut dyn Write,
) -> Result<Status> {
    let ctx = env.ctx(n, q)?;
    let grass = Grassmannian::new(&ctx, k)?;
    let configs: Vec<Vec<Subspace>> = match config {
        Some(ids) => {
            if let Some(&bad) = ids.iter().find(|&&id| id >= grass.len()) {
                bail!("subspace id {bad} out of range 0..{}", grass.len());
            }
            let ys: Vec<Subspace> = ids.iter().map(|&id| grass.unrank(id)).collect();
            if !is_bad_configuration(&ctx, &ys) {
                bail!("subspaces {ids:?} do not form a bad configuration");
            }
            vec![ys]
        }
        None => find_bad_configurations(&ctx, k, x, samples, 50 * samples.max(1), &mut env.rng(2))?,
    };
    let size = configs.first().map_or(x, Vec::len);
    let delta = max_delta(size, n, k).ok_or_else(|| anyhow!("no admissible delta for x = {size}, n = {n}, k = {k}"))?;
    let bound = bad_config_bound(size, n, k, q, delta)?;
    let pool = env.pool()?;
    let mut all = true;
    let mut rows = Vec::new();
    for ys in &configs {
        let count = count_badly_meeting(&ctx, ys, k, &pool)?;
        let ok = Rational::from_integer(BigInt::from(count)) <= bound;
        all &= ok;
        let ids: Vec<u64> = ys.iter().map(|s| grass.rank(s)).collect();
        rows.push((ids, count, ok));
    }
    match env.format(OutputFormat::Text) {
        OutputFormat::Json => {
            let rows: Vec<_> =
                rows.iter().map(|(ids, count, ok)| json!({ "config": ids, "count": count, "status": pass(*ok) })).collect();
            writeln!(out, "{}", json!({ "n": n, "k": k, "q": q, "x": size, "delta": delta, "bound": bound.to_string(), "configurations": rows }))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "config,x,delta,count,bound,status")?;
            for (ids, count, ok) in &rows {
                let ids: Vec<String> = ids.iter().map(u64::to_string).collect();
                writeln!(out, "{},{size},{delta},{count},{bound},{}", ids.join(" "), pass(*ok))?;
            }
        }
        OutputFormat::Text => {
            writeln!(out, "x={size} delta={delta} bound={bound} (~{:.1})", bound.to_f64().unwrap_or(f64::NAN))?;
            for (ids, count, ok) in &rows {
                writeln!(out, "config={ids:?} count={count} {}", pass(*ok))?;
            }
            if rows.is_empty() {
                writeln!(out, "no bad configuration of size {x} found")?;
            }
        }
    }
    Ok(Status::from_ok(all))
}

struct SearchArgs {
    mode: Mode,
    cap: Option<usize>,
    budget: Option<u128>,
    spread_filter: bool,
}

/// The conjectured minimum at (n, k, q).
fn claimed_min(n: usize, k: usize, q: u64) -> Result<usize> {
    let regime = Regime::of(n, k).ok_or_else(|| anyhow!("need 0 < k < n (n = {n}, k = {k})"))?;
    let value = match regime {
        Regime::A => gaussian(n as i64 - 1, k as i64, q)?,
        _ => gaussian(n as i64 - 1, k as i64 - 1, q)?,
    };
    value.to_usize().ok_or_else(|| anyhow!("claimed minimum {value} is too large"))
}

fn open_ledger(path: Option<&Path>) -> Result<Option<LedgerWriter>> {
    path.map(|p| LedgerWriter::create(p).with_context(|| format!("creating ledger {}", p.display()))).transpose()
}

#[allow(clippy::too_many_arguments)]
fn search_min(
    env: &Env,
    n: usize,
    k: usize,
    q: u64,
    args: &SearchArgs,
    ledger: Option<&Path>,
    witness: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status> {
    let index = env.index(n, k, q)?;
    let pool = env.pool()?;
    let mut log = open_ledger(ledger)?;
    let cap = match args.cap {
        Some(c) => c,
        None => claimed_min(n, k, q)?,
    };
    let budget = args.budget.unwrap_or(match args.mode {
        Mode::Exhaustive => 50_000_000,
        Mode::Heuristic => 2000,
    });
    if let Some(w) = log.as_mut() {
        w.write(Entry::Run {
            command: "search-min".into(),
            n,
            k,
            q: index.q(),
            seed: env.cli.seed,
            mode: format!("{:?}", args.mode).to_lowercase(),
            budget: budget.to_string(),
            cap: (args.mode == Mode::Exhaustive).then_some(cap),
        })?;
    }
    let (min, lp_calls, best) = match args.mode {
        Mode::Exhaustive => {
            let options = ExhaustiveOptions { cap, budget, spread_filter: args.spread_filter };
            let report = exhaustive_min_with(&index, &options, &pool)?;
            if let Some(w) = log.as_mut() {
                for s in &report.sizes {
                    w.write(Entry::from(s))?;
                }
            }
            let lp: u64 = report.sizes.iter().map(|s| s.lp_calls).sum();
            let best = report.representatives.first().cloned();
            (report.min, lp as usize, best)
        }
        Mode::Heuristic => {
            let budget = usize::try_from(budget).context("heuristic budget too large")?;
            let config = HeuristicConfig::new(budget, env.cli.seed);
            let mut io_error = None;
            let report = heuristic_min(&index, &config, &pool, |r| {
                if let (Some(w), None) = (log.as_mut(), &io_error) {
                    if let Err(e) = w.write(Entry::from(r)) {
                        io_error = Some(e);
                    }
                }
            })?;
            if let Some(e) = io_error {
                return Err(e.into());
            }
            (Some(report.best_count), report.lp_calls, Some((report.best, report.witness)))
        }
    };
    if let Some(w) = log.as_mut() {
        w.write(Entry::Result { min })?;
    }
    if let (Some(path), Some((_, f))) = (witness, &best) {
        format::write(path, index.ctx(), f)?;
    }
    let members = best.as_ref().map(|(family, _)| family.members().to_vec());
    match env.format(OutputFormat::Text) {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            json!({ "n": n, "k": k, "q": q, "mode": format!("{:?}", args.mode).to_lowercase(), "min": min, "lp_calls": lp_calls, "best": members })
        )?,
        OutputFormat::Csv => writeln!(
            out,
            "n,k,q,mode,min,lp_calls\n{n},{k},{q},{:?},{},{lp_calls}",
            args.mode,
            min.map_or(String::new(), |m| m.to_string())
        )?,
        OutputFormat::Text => match (min, members) {
            (Some(m), Some(members)) => writeln!(out, "minimum {m} after {lp_calls} LP calls; family {members:?}")?,
            _ => writeln!(out, "no realizable family of size at most {cap} ({lp_calls} LP calls)")?,
        },
    }
    Ok(Status::Pass)
}

#[allow(clippy::too_many_arguments)]
fn conjecture(
    env: &Env,
    n: usize,
    k: usize,
    q: u64,
    mode: Mode,
    budget: Option<u128>,
    ledger: Option<&Path>,
    witness: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status> {
    let index = env.index(n, k, q)?;
    let pool = env.pool()?;
    let mut config = ConjectureConfig::new(mode.into(), env.cli.seed);
    if let Some(b) = budget {
        match mode {
            Mode::Exhaustive => config.family_budget = b,
            Mode::Heuristic => config.heuristic.budget = usize::try_from(b).context("heuristic budget too large")?,
        }
    }
    let mut log = open_ledger(ledger)?;
    if let Some(w) = log.as_mut() {
        w.write(Entry::Run {
            command: "verify-conjecture".into(),
            n,
            k,
            q: index.q(),
            seed: env.cli.seed,
            mode: format!("{mode:?}").to_lowercase(),
            budget: budget.map_or(String::from("default"), |b| b.to_string()),
            cap: None,
        })?;
    }
    let mut io_error = None;
    let report = verify_conjecture(&index, &config, &pool, |r| {
        if let (Some(w), None) = (log.as_mut(), &io_error) {
            if let Err(e) = w.write(Entry::from(r)) {
                io_error = Some(e);
            }
        }
    })?;
    if let Some(e) = io_error {
        return Err(e.into());
    }
    if let Some(w) = log.as_mut() {
        if let Some(ex) = &report.exhaustive {
            for s in &ex.sizes {
                w.write(Entry::from(s))?;
            }
        }
        w.write(Entry::Result { min: Some(report.best_count) })?;
    }
    if let Some(path) = witness {
        let f = match &report.verdict {
            Verdict::Refuted { witness, .. } => witness,
            _ => &report.witness,
        };
        format::write(path, index.ctx(), f)?;
    }
    match env.format(OutputFormat::Text) {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            json!({
                "n": n, "k": k, "q": q,
                "regime": report.regime.label(),
                "claimed_min": report.claimed_min,
                "example_count": report.example_count,
                "best_count": report.best_count,
                "best": report.best.members(),
                "verdict": report.verdict.label(),
                "notes": report.notes,
            })
        )?,
        OutputFormat::Csv => writeln!(
            out,
            "n,k,q,regime,claimed_min,example_count,best_count,verdict\n{n},{k},{q},{},{},{},{},{}",
            report.regime.label(),
            report.claimed_min,
            report.example_count,
            report.best_count,
            report.verdict.label()
        )?,
        OutputFormat::Text => {
            writeln!(out, "(n, k, q) = ({n}, {k}, {q}), regime ({})", report.regime.label())?;
            writeln!(out, "claimed minimum {}", report.claimed_min)?;
            for note in &report.notes {
                writeln!(out, "  {note}")?;
            }
            writeln!(out, "best {} : {:?}", report.best_count, report.best.members())?;
            writeln!(out, "{}", report.verdict.label())?;
        }
    }
    Ok(Status::from_ok(!matches!(report.verdict, Verdict::Refuted { .. })))
}

fn parse_rational(text: &str) -> Result<Rational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().with_context(|| format!("bad numerator in {text:?}"))?;
    let den: BigInt = den.parse().with_context(|| format!("bad denominator in {text:?}"))?;
    if den == BigInt::from(0) {
        bail!("zero denominator in {text:?}");
    }
    Ok(Rational::new(num, den))
}

#[allow(clippy::too_many_arguments)]
fn verify_lemmas(
    env: &Env,
    n: usize,
    k: usize,
    q: u64,
    trials: usize,
    x: usize,
    c: Option<&str>,
    out: &mut dyn Write,
) -> Result<Status> {
    let index = env.index(n, k, q)?;
    let ctx = index.ctx();
    let mut params = LemmaParams::theorem(x, q);
    if let Some(c) = c {
        params = params.with_c(parse_rational(c)?);
    }
    let mut weightings = vec![("pencil".to_string(), WeightFunction::point_pencil(ctx, 0))];
    if n >= 2 {
        let hyperplane = Grassmannian::new(ctx, n - 1)?.unrank(0);
        weightings.push(("hyperplane".to_string(), WeightFunction::hyperplane_example(ctx, &hyperplane)?));
    }
    let mut rng = env.rng(3);
    for t in 0..trials {
        weightings.push((format!("random-{t}"), WeightFunction::random(ctx, &mut rng, 60, 12)));
    }
    let mut all = true;
    let mut rows = Vec::new();
    for (name, f) in &weightings {
        for check in verify_lemma_bounds(&index, f, &params) {
            let (status, detail) = match &check.outcome {
                LemmaOutcome::Holds { checked } => ("PASS", format!("{checked} checked")),
                LemmaOutcome::Skipped(why) => ("SKIP", why.clone()),
                LemmaOutcome::Violated(why) => ("FAIL", why.clone()),
            };
            all &= !check.is_violation();
            rows.push((name.clone(), check.lemma, status, detail));
        }
    }
    match env.format(OutputFormat::Text) {
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(w, l, s, d)| json!({ "weighting": w, "lemma": l, "status": s, "detail": d }))
                .collect();
            writeln!(out, "{}", json!({ "n": n, "k": k, "q": q, "x": x, "c": params.c.to_string(), "checks": rows, "status": pass(all) }))?;
        }
        OutputFormat::Csv => {
            writeln!(out, "weighting,lemma,status,detail")?;
            for (w, l, s, d) in &rows {
                writeln!(out, "{w},{l},{s},\"{}\"", d.replace('"', "'"))?;
            }
        }
        OutputFormat::Text => {
            for (w, l, s, d) in &rows {
                writeln!(out, "{s} {w}: {l} ({d})")?;
            }
            writeln!(out, "{}", pass(all))?;
        }
    }
    Ok(Status::from_ok(all))
}

fn dualize(file: &Path, path: Option<&Path>, out: &mut dyn Write) -> Result<Status> {
    let w = format::read(file)?;
    let g = w.f.dual_transform(&w.ctx);
    match path {
        Some(p) => format::write(p, &w.ctx, &g)?,
        None => out.write_all(format::to_string(&w.ctx, &g).as_bytes())?,
    }
    Ok(Status::Pass)
}
