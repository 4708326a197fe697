//! Command line: argument grammar and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use incalg_core::autgroup::{decompose, enumerate_automorphisms, enumerate_automorphisms_with_witnesses, EnumerationLimits};
use incalg_core::cartprod::{boolean_local_by_definition, boolean_local_check, recover_family, PermutationMatcher, SetMap};
use incalg_core::localcheck::{self, VerdictScope};
use incalg_core::tailalg::{self, TailVector};
use incalg_core::{AutDecomposition, Error as CoreError, FiElement, IncidenceAlgebra, LinearMap, Poset, ProbeOutcome, Ring, RingElem};

use crate::format::{self, FormatError};
use crate::report::{yes_no, OutputFormat, Report};

#[derive(Debug, Parser)]
#[command(name = "incalg", version, about = "Automorphisms and local automorphisms of finitary incidence algebras")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Seed for randomized analyses.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Trial budget for randomized analyses.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Posets.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Automorphisms of FI(P).
    #[command(subcommand)]
    Aut(AutCmd),
    /// Local automorphisms of FI(P).
    #[command(subcommand)]
    Local(LocalCmd),
    /// The product algebra R^P.
    #[command(subcommand)]
    Pi(PiCmd),
    /// Eventually constant sequences and the shift map.
    #[command(subcommand)]
    Tail(TailCmd),
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Validate a poset file and print its structure.
    Check {
        #[arg(long)]
        poset: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Coefficient ring: Z<n>, GF(<q>) or Z.
    #[arg(long)]
    pub ring: String,
    /// Poset file.
    #[arg(long)]
    pub poset: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum AutCmd {
    /// List every automorphism with a generating triple.
    Enumerate {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Split an automorphism into order lift, Schur and inner factors.
    Decompose {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Linear map file.
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum LocalCmd {
    /// Find every n-local linear map and compare with Aut.
    Sweep {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Test one map against probe tuples.
    Probe {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Probe every n-multiset of elements instead of sampling.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum PiCmd {
    /// Endomorphisms of R^P.
    #[command(subcommand)]
    Endo(PiEndoCmd),
    /// The power-set model over Z2.
    #[command(subcommand)]
    Bool(PiBoolCmd),
}

#[derive(Debug, Subcommand)]
pub enum PiEndoCmd {
    /// Read the family A_x from an endomorphism and decide if it is induced.
    Recover {
        #[arg(long)]
        ring: String,
        /// Product map file.
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum PiBoolCmd {
    /// Compare the cardinality test with the definition of local automorphism.
    Check {
        /// Set map file; omit together with --sweep.
        #[arg(long, required_unless_present = "sweep")]
        map: Option<PathBuf>,
        /// Compare on all set maps (or --trials random ones) instead.
        #[arg(long, conflicts_with = "map")]
        sweep: bool,
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TailCmd {
    /// Show the shift map, its missing preimage and the permutations.
    Demo {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Additional tail vector `[s0,...,sk | t]` to push through the map.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Produce a permutation agreeing with the shift map on a tuple.
    Nlocal {
        #[arg(long)]
        ring: String,
        /// Tuple members; random tuples are drawn when none are given.
        #[arg(long = "tuple")]
        tuple: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 6)]
        max_prefix: usize,
    },
}

/// An error ending the run with exit code 2.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub hint: &'static str,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let hint = match &e {
            CoreError::InvalidRingSpec(_) => "ring specs look like Z4, GF(9) or Z",
            CoreError::DecomposableRing { .. } => "use a prime power modulus such as Z4 or Z9",
            CoreError::NotEnumerable(_) => "this analysis enumerates the ring; use a finite ring",
            CoreError::SizeGuard { .. } => "use a smaller poset or ring, or a --trials budget where offered",
            CoreError::UnsupportedRing { .. } => "pick a ring the analysis supports",
            _ => "check the input files against the formats in the README",
        };
        Failure { message: e.to_string(), hint }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure { message: e.to_string(), hint: "see the file formats section of the README" }
    }
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { message: format!("{}: {e}", path.display()), hint: "check the file path" })
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    format::parse_poset(&read(path)?)?.map_err(|e| Failure {
        message: format!("{}: {e}", path.display()),
        hint: "the covers must generate a partial order; run `incalg poset check`",
    })
}

fn load_algebra(args: &AlgebraArgs, report: &mut Report) -> Result<IncidenceAlgebra, Failure> {
    let ring = Ring::parse(&args.ring)?;
    let poset = load_poset(&args.poset)?;
    report.ring = Some(ring.to_string());
    report.poset = Some(format::poset_fingerprint(&poset));
    Ok(IncidenceAlgebra::new(ring, poset))
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.verdict == Some(false) {
                1
            } else {
                0
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            let _ = writeln!(err, "hint: {}", f.hint);
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let seed = cli.seed;
    match &cli.verb {
        Verb::Poset(PosetCmd::Check { poset }) => poset_check(poset, seed),
        Verb::Aut(AutCmd::Enumerate { alg }) => aut_enumerate(alg, seed),
        Verb::Aut(AutCmd::Decompose { alg, map }) => aut_decompose(alg, map, seed),
        Verb::Local(LocalCmd::Sweep { alg, n }) => local_sweep(alg, *n, seed),
        Verb::Local(LocalCmd::Probe { alg, map, n, exhaustive }) => local_probe(alg, map, *n, *exhaustive, seed, cli.trials),
        Verb::Pi(PiCmd::Endo(PiEndoCmd::Recover { ring, map })) => pi_endo_recover(ring, map, seed),
        Verb::Pi(PiCmd::Bool(PiBoolCmd::Check { map, sweep, points })) => match map {
            Some(m) if !sweep => pi_bool_check(m, seed),
            _ => pi_bool_sweep(*points, seed, cli.trials),
        },
        Verb::Tail(TailCmd::Demo { ring, m, vector }) => tail_demo(ring, *m, vector.as_deref(), seed),
        Verb::Tail(TailCmd::Nlocal { ring, tuple, max_size, max_prefix }) => {
            tail_nlocal(ring, tuple, *max_size, *max_prefix, seed, cli.trials)
        }
    }
}

fn poset_check(path: &Path, seed: u64) -> Outcome {
    let mut r = Report::new("poset check", seed);
    let poset = match format::parse_poset(&read(path)?)? {
        Ok(p) => p,
        Err(e) => {
            r.line(format!("invalid: {e}"));
            r.set("valid", false);
            r.set("reason", e.to_string());
            r.verdict = Some(false);
            return Ok(r);
        }
    };
    r.poset = Some(format::poset_fingerprint(&poset));
    let label = |x: usize| poset.label(x).to_string();
    let covers: Vec<String> = poset.covers().iter().map(|&(x, y)| format!("{}<{}", label(x), label(y))).collect();
    let heights: Vec<String> = (0..poset.len()).map(|x| format!("{}:{}", label(x), poset.heights()[x])).collect();
    r.line(format!("elements: {}", poset.len()));
    r.line(format!("comparable pairs: {}", poset.pairs().len()));
    r.line(format!("covers: {}", covers.join(" ")));
    r.line(format!("heights: {}", heights.join(" ")));
    r.line(format!("longest chain: {}", poset.longest_chain()));
    let auts = poset.order_automorphisms()?;
    r.line(format!("order automorphisms: {}", auts.len()));
    let mut aut_json = Vec::new();
    for (k, rho) in auts.iter().enumerate() {
        let maps: Vec<String> = (0..poset.len()).map(|x| format!("{}->{}", label(x), label(rho.apply(x)))).collect();
        r.line(format!("  #{k}: {}", maps.join(" ")));
        aut_json.push(Value::from((0..poset.len()).map(|x| json!([label(x), label(rho.apply(x))])).collect::<Vec<_>>()));
    }
    r.line("valid: yes");
    r.set("valid", true);
    r.set("elements", poset.labels().to_vec());
    r.set("covers", poset.covers().iter().map(|&(x, y)| json!([label(x), label(y)])).collect::<Vec<_>>());
    r.set("heights", (0..poset.len()).map(|x| json!([label(x), poset.heights()[x]])).collect::<Vec<_>>());
    r.set("comparable_pairs", poset.pairs().len());
    r.set("longest_chain", poset.longest_chain());
    r.set("order_automorphisms", aut_json);
    r.verdict = Some(true);
    Ok(r)
}

fn element_json(alg: &IncidenceAlgebra, a: &FiElement) -> Value {
    let p = alg.poset();
    a.support()
        .map(|(i, c)| {
            let (x, y) = p.pairs()[i];
            json!([p.label(x), p.label(y), c.value()])
        })
        .collect::<Vec<_>>()
        .into()
}

fn decomposition_json(alg: &IncidenceAlgebra, d: &AutDecomposition) -> Value {
    let p = alg.poset();
    let rho: Vec<Value> = (0..p.len()).map(|x| json!([p.label(x), p.label(d.rho.apply(x))])).collect();
    let sigma: Vec<Value> = p
        .covers()
        .iter()
        .zip(d.sigma.cover_values(alg))
        .map(|(&(x, y), v)| json!([p.label(x), p.label(y), v.value()]))
        .collect();
    json!({ "rho": rho, "sigma": sigma, "f": element_json(alg, &d.f) })
}

fn aut_enumerate(args: &AlgebraArgs, seed: u64) -> Outcome {
    let mut r = Report::new("aut enumerate", seed);
    let alg = load_algebra(args, &mut r)?;
    let auts = enumerate_automorphisms_with_witnesses(&alg, EnumerationLimits::default())?;
    r.line(format!("automorphisms: {}", auts.len()));
    for (k, (_, d)) in auts.iter().enumerate() {
        r.line(format!("aut #{k}:"));
        r.block(&format::write_decomposition(&alg, d));
    }
    r.set("count", auts.len());
    r.set("automorphisms", auts.iter().map(|(_, d)| decomposition_json(&alg, d)).collect::<Vec<_>>());
    Ok(r)
}

fn load_map(alg: &IncidenceAlgebra, path: &Path) -> Result<LinearMap, Failure> {
    Ok(format::parse_map(alg, &read(path)?)?)
}

fn aut_decompose(args: &AlgebraArgs, map: &Path, seed: u64) -> Outcome {
    let mut r = Report::new("aut decompose", seed);
    let alg = load_algebra(args, &mut r)?;
    let phi = load_map(&alg, map)?;
    match decompose(&alg, &phi) {
        Ok(d) => {
            r.block(&format::write_decomposition(&alg, &d));
            let back = d.to_map(&alg)?;
            let equal = alg.map_equals(&back, &phi);
            r.line(format!("recomposed map equals input: {}", yes_no(equal)));
            r.set("automorphism", true);
            r.set("decomposition", decomposition_json(&alg, &d));
            r.set("recomposed_equal", equal);
            r.verdict = Some(equal);
        }
        Err(CoreError::Decomposition { step, detail }) => {
            r.line(format!("not an automorphism: step {step}: {detail}"));
            r.set("automorphism", false);
            r.set("failed_step", step);
            r.set("reason", detail);
            r.verdict = Some(false);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn power_string(q: u64, e: usize) -> String {
    match q.checked_pow(e as u32) {
        Some(v) => v.to_string(),
        None => format!("{q}^{e}"),
    }
}

/// Element-count cap for searches that tabulate every element.
const ELEMENT_LIMIT: u64 = 1 << 12;

fn local_sweep(args: &AlgebraArgs, n: usize, seed: u64) -> Outcome {
    let mut r = Report::new("local sweep", seed);
    let alg = load_algebra(args, &mut r)?;
    let q = alg.ring().order().ok_or_else(|| CoreError::NotEnumerable(alg.ring().to_string()))?;
    let auts = enumerate_automorphisms(&alg, EnumerationLimits::default())?;
    let local = localcheck::search_local_maps(&alg, n, &auts, ELEMENT_LIMIT)?;
    let equals = local == auts;
    let total = power_string(q, alg.dim() * alg.dim());
    r.line(format!("local automorphisms: {} of {total} linear maps; equals Aut: {}", local.len(), yes_no(equals)));
    r.set("n", n);
    r.set("linear_maps", total);
    r.set("local_maps", local.len());
    r.set("automorphisms", auts.len());
    r.set("equals_aut", equals);
    r.verdict = Some(equals);
    Ok(r)
}

const DEFAULT_PROBE_TRIALS: usize = 200;

fn local_probe(args: &AlgebraArgs, map: &Path, n: usize, exhaustive: bool, seed: u64, trials: Option<usize>) -> Outcome {
    let mut r = Report::new("local probe", seed);
    let alg = load_algebra(args, &mut r)?;
    let eta = load_map(&alg, map)?;
    let auts = enumerate_automorphisms(&alg, EnumerationLimits::default())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = if exhaustive {
        localcheck::check_exhaustive(&alg, &eta, n, &auts)?
    } else {
        localcheck::check_sampled(&alg, &eta, n, &auts, trials.unwrap_or(DEFAULT_PROBE_TRIALS), &mut rng)?
    };
    let basics = localcheck::basic_properties(&alg, &eta, ELEMENT_LIMIT, 64, &mut rng)?;
    let mut probes = Vec::with_capacity(report.outcomes.len());
    for (id, o) in report.outcomes.iter().enumerate() {
        match o {
            ProbeOutcome::Matched { aut } => {
                r.line(format!("probe {id}: matched aut #{aut}"));
                probes.push(json!({ "id": id, "matched_aut": aut }));
            }
            ProbeOutcome::NoMatch => {
                r.line(format!("probe {id}: NO MATCH"));
                probes.push(json!({ "id": id, "matched_aut": null }));
            }
        }
    }
    let scope = match report.scope {
        VerdictScope::Exhaustive => "exhaustive".to_string(),
        VerdictScope::Sampled { trials } => format!("sampled, {trials} probes"),
        VerdictScope::Listed => "listed".to_string(),
    };
    r.line(format!("injective: {}", yes_no(basics.injective)));
    r.line(format!("preserves idempotents: {}", yes_no(basics.preserves_idempotents)));
    r.line(format!("preserves primitive idempotents: {}", yes_no(basics.preserves_primitive_idempotents)));
    r.line(format!("{n}-local ({scope}): {}", yes_no(report.verdict)));
    r.set("n", n);
    r.set("scope", scope);
    r.set("probes", probes);
    r.set("injective", basics.injective);
    r.set("preserves_idempotents", basics.preserves_idempotents);
    r.set("preserves_primitive_idempotents", basics.preserves_primitive_idempotents);
    r.set("local", report.verdict);
    r.verdict = Some(report.verdict);
    Ok(r)
}

fn pi_endo_recover(ring: &str, map: &Path, seed: u64) -> Outcome {
    let mut r = Report::new("pi endo recover", seed);
    let ring = Ring::parse(ring)?;
    r.ring = Some(ring.to_string());
    let (labels, eta) = format::parse_pi_map(&ring, &read(map)?)?;
    match recover_family(&ring, &eta) {
        Ok(rec) => {
            r.line("family:");
            let mut fam = Vec::new();
            for (x, set) in rec.family.sets().iter().enumerate() {
                r.line(format!("  {} -> {}", labels[x], format::write_subset(&labels, set)));
                fam.push(json!([labels[x], set.iter().map(|&z| labels[z].clone()).collect::<Vec<_>>()]));
            }
            r.line(format!("sets cover P: {}", yes_no(rec.covers_all)));
            r.line(format!("induced: {}", yes_no(rec.induced)));
            r.set("endomorphism", true);
            r.set("family", fam);
            r.set("covers_all", rec.covers_all);
            r.set("induced", rec.induced);
            r.verdict = Some(rec.induced);
        }
        Err(e @ (CoreError::NotEndomorphism(_) | CoreError::OverlappingFamily { .. })) => {
            r.line(format!("endomorphism: no ({e})"));
            r.set("endomorphism", false);
            r.set("reason", e.to_string());
            r.verdict = Some(false);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn z2() -> Ring {
    Ring::parse("Z2").expect("Z2 parses")
}

fn pi_bool_check(map: &Path, seed: u64) -> Outcome {
    let mut r = Report::new("pi bool check", seed);
    let ring = z2();
    r.ring = Some(ring.to_string());
    let (_, eta) = format::parse_set_map(&read(map)?)?;
    let by_cardinality = boolean_local_check(&ring, &eta)?;
    let by_definition = boolean_local_by_definition(&ring, &eta)?;
    r.line(format!("cardinality conditions: {}", yes_no(by_cardinality)));
    r.line(format!("matched by permutations: {}", yes_no(by_definition)));
    r.line(format!("local automorphism: {}", yes_no(by_definition)));
    r.set("cardinality_conditions", by_cardinality);
    r.set("by_definition", by_definition);
    r.set("agree", by_cardinality == by_definition);
    r.verdict = Some(by_definition && by_cardinality == by_definition);
    Ok(r)
}

fn pi_bool_sweep(points: usize, seed: u64, trials: Option<usize>) -> Outcome {
    let mut r = Report::new("pi bool check", seed);
    let ring = z2();
    r.ring = Some(ring.to_string());
    let matcher = PermutationMatcher::new(points)?;
    let mut disagreements = 0u64;
    let mut locals = 0u64;
    let mut compare = |m: &SetMap| -> Result<(), Failure> {
        let fast = boolean_local_check(&ring, m)?;
        let slow = matcher.is_local(m);
        disagreements += u64::from(fast != slow);
        locals += u64::from(slow);
        Ok(())
    };
    let (compared, scope) = match trials {
        None => {
            let total = SetMap::count(points).filter(|_| points <= 3).ok_or(CoreError::SizeGuard {
                what: "set maps (points)",
                size: points as u64,
                limit: 3,
            })?;
            for i in 0..total {
                compare(&SetMap::at(points, i))?;
            }
            (total, "exhaustive".to_string())
        }
        Some(t) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let size = 1u32 << points;
            for _ in 0..t {
                let images: Vec<u32> = (0..size).map(|_| rng.gen_range(0..size)).collect();
                let m = SetMap::new(points, images)?;
                compare(&m)?;
            }
            (t as u64, format!("sampled, {t} maps"))
        }
    };
    r.line(format!("set maps compared ({scope}): {compared}"));
    r.line(format!("local automorphisms: {locals}"));
    r.line(format!("disagreements: {disagreements}"));
    r.set("points", points);
    r.set("scope", scope);
    r.set("compared", compared);
    r.set("local", locals);
    r.set("disagreements", disagreements);
    r.verdict = Some(disagreements == 0);
    Ok(r)
}

fn parse_tail(ring: &Ring, s: &str) -> Result<TailVector, Failure> {
    let v: TailVector = s
        .parse()
        .map_err(|e: CoreError| Failure { message: e.to_string(), hint: "write tail vectors as `[s0,...,sk | t]`" })?;
    v.check(ring)?;
    Ok(v)
}

fn tail_demo(ring: &str, m: usize, vector: Option<&str>, seed: u64) -> Outcome {
    let mut r = Report::new("tail demo", seed);
    let ring = Ring::parse(ring)?;
    r.ring = Some(ring.to_string());
    let mut shown = vec![TailVector::one(), TailVector::unit_vector(0)];
    if let Some(v) = vector {
        shown.push(parse_tail(&ring, v)?);
    }
    let mut images = Vec::new();
    for a in &shown {
        let img = tailalg::eta(a);
        r.line(format!("eta({a}) = {img}"));
        let pre = match tailalg::preimage(a) {
            Ok(x) => {
                r.line(format!("preimage of {a}: {x}"));
                Value::from(x.to_string())
            }
            Err(why) => {
                r.line(format!("preimage of {a}: none ({why})"));
                Value::Null
            }
        };
        images.push(json!({ "vector": a.to_string(), "image": img.to_string(), "preimage": pre }));
    }
    let e0_missing = tailalg::preimage(&TailVector::unit_vector(0)).is_err();
    r.line(format!("eta surjective: {}", yes_no(!e0_missing)));
    let literal = tailalg::literal_example_map(m);
    let missed = literal.missed_point();
    r.line(format!(
        "literal permutation for m = {m}: {literal}; bijection: {}; misses: {}",
        yes_no(literal.is_bijective()),
        missed.map_or("-".to_string(), |y| y.to_string())
    ));
    let cycle = tailalg::witness_permutation(m);
    r.line(format!("witness permutation for m = {m}: {cycle}"));
    r.set("vectors", images);
    r.set("surjective", !e0_missing);
    r.set("literal_bijective", literal.is_bijective());
    r.set("literal_missed", missed);
    r.set("witness", cycle.to_string());
    r.verdict = Some(e0_missing);
    Ok(r)
}

const DEFAULT_TAIL_TRIALS: usize = 1000;

fn random_tail<R: Rng>(ring: &Ring, rng: &mut R, max_prefix: usize) -> TailVector {
    let elems = ring.elements().expect("finite ring");
    let len = rng.gen_range(0..=max_prefix);
    let prefix: Vec<RingElem> = (0..len).map(|_| elems[rng.gen_range(0..elems.len())]).collect();
    TailVector::new(prefix, elems[rng.gen_range(0..elems.len())])
}

fn tail_nlocal(ring: &str, tuple: &[String], max_size: usize, max_prefix: usize, seed: u64, trials: Option<usize>) -> Outcome {
    let mut r = Report::new("tail nlocal", seed);
    let ring = Ring::parse(ring)?;
    r.ring = Some(ring.to_string());
    if !tuple.is_empty() {
        let members: Vec<TailVector> = tuple.iter().map(|s| parse_tail(&ring, s)).collect::<Result<_, _>>()?;
        return Ok(match tailalg::verify_n_local(&members) {
            Ok(rho) => {
                r.line(format!("permutation: {rho}"));
                for a in &members {
                    r.line(format!("eta({a}) = rho^({a}) = {}", rho.transport(a)));
                }
                r.line(format!("agrees on all {} members: yes", members.len()));
                r.set("permutation", rho.to_string());
                r.set("agrees", true);
                r.verdict = Some(true);
                r
            }
            Err(e) => {
                r.line(format!("discrepancy: {e}"));
                r.set("agrees", false);
                r.set("reason", e.to_string());
                r.verdict = Some(false);
                r
            }
        });
    }
    if ring.order().is_none() {
        return Err(CoreError::NotEnumerable(ring.to_string()).into());
    }
    if max_size == 0 {
        return Err(Failure { message: "--max-size must be positive".into(), hint: "tuples need at least one member" });
    }
    let trials = trials.unwrap_or(DEFAULT_TAIL_TRIALS);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verified = 0usize;
    for _ in 0..trials {
        let size = rng.gen_range(1..=max_size);
        let members: Vec<TailVector> = (0..size).map(|_| random_tail(&ring, &mut rng, max_prefix)).collect();
        if let Ok(rho) = tailalg::verify_n_local(&members) {
            if members.iter().all(|a| rho.transport(a) == tailalg::eta(a)) {
                verified += 1;
            }
        }
    }
    let e0_missing = tailalg::preimage(&TailVector::unit_vector(0)).is_err();
    r.line(format!("random tuples verified: {verified} of {trials}"));
    r.line(format!("e_0 outside the image: {}", yes_no(e0_missing)));
    r.set("trials", trials);
    r.set("verified", verified);
    r.set("e0_outside_image", e0_missing);
    r.verdict = Some(verified == trials && e0_missing);
    Ok(r)
}
