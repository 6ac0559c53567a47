//! Command-line front end. Exit codes: 0 pass, 1 mathematical failure,
//! 2 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bsequence::{reduced_ideal_basis, BSequenceProblem, VerificationReport};
use crate::combinat::subsets_colex;
use crate::error::{Error, Result};
use crate::free_mod::Vector;
use crate::groebner::krull_dim;
use crate::hilbert::{hilbert_from_groebner, quotient_numerator};
use crate::koszul::{b_pairs, differential, e_module, generate_a, generate_b, koszul_module, KoszulSpace, KoszulVector};
use crate::manifest::{parse_module_spec, spec_module, spec_nvars, IdealFile, Manifest, MapFile, ModuleFile};
use crate::poly::PolyRing;
use crate::resolution::{cohomology_pattern, hilbert_numerator, numerical_conditions, resolve_ideal};
use crate::scalar::{Fp, Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u32),
}

fn parse_field(s: &str) -> std::result::Result<FieldChoice, String> {
    match s {
        "q" | "Q" => Ok(FieldChoice::Rationals),
        _ => {
            let p = s.strip_prefix("p:").ok_or_else(|| format!("expected `q` or `p:PRIME`, got `{s}`"))?;
            p.parse::<u32>().map(FieldChoice::Prime).map_err(|_| format!("bad prime `{p}`"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KoszulKind {
    /// Matrix of the differential `∂_s`.
    #[value(name = "d")]
    D,
    /// Generators of `E_s = Im ∂_s`.
    #[value(name = "E")]
    E,
    /// The functional family `𝒜` in `K*_{t+1}`.
    #[value(name = "A")]
    A,
    /// The functional family `ℬ` in `K*_{n-1}`.
    #[value(name = "B")]
    B,
}

#[derive(Debug, Parser)]
#[command(name = "bourbaki", version, about = "Verify b-sequences and assemble long Bourbaki sequences")]
pub struct Cli {
    /// Coefficient field: `q` or `p:PRIME`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldChoice,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print intermediate data.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check conditions (a) and (b), the rank identity and, if requested, non-triviality.
    Verify {
        manifest: PathBuf,
        /// Also decide non-triviality (two summands only).
        #[arg(long)]
        nontriviality: bool,
    },
    /// Assemble the sequence, extract the ideal and write the artifacts.
    Assemble {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print Koszul data.
    Koszul {
        #[arg(value_enum)]
        kind: KoszulKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Ext pattern of a module: `E(n,s,shift)+…`, `free(n,d…)` or a module file.
    Cohomology { spec: String },
    /// Hilbert data of an ideal file.
    Hilbert {
        ideal: PathBuf,
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
    /// The three codimension-3 numerical conditions.
    Numcheck {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        t: i64,
        #[arg(long, default_value_t = 0)]
        d: i64,
        #[arg(long, conflicts_with = "solve_c")]
        c: Option<i64>,
        #[arg(long)]
        solve_c: bool,
        #[arg(long, num_args = 0.., value_delimiter = ',', allow_negative_numbers = true)]
        a: Vec<i64>,
        #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        b: Vec<i64>,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidProblem(_) | Error::Precondition(_) | Error::Assembly(_) => 1,
        _ => 2,
    }
}

struct Outcome {
    text: String,
    json: serde_json::Value,
    pass: bool,
}

fn outcome(text: String, json: impl Serialize, pass: bool) -> Outcome {
    Outcome { text, json: serde_json::to_value(json).expect("report serializes"), pass }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    let res = match cli.field {
        FieldChoice::Rationals => dispatch::<Rat>(&cli, &|n| Ok(PolyRing::rationals(n))),
        FieldChoice::Prime(p) => dispatch::<Fp>(&cli, &move |n| PolyRing::prime(n, p)),
    };
    match res {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json")),
            };
            if o.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

type RingFor<'a, S> = &'a dyn Fn(usize) -> Result<PolyRing<S>>;

fn dispatch<S: Scalar>(cli: &Cli, ring: RingFor<'_, S>) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { manifest, nontriviality } => cmd_verify(manifest, *nontriviality, cli.verbose, ring),
        Command::Assemble { manifest, out } => cmd_assemble(manifest, out.as_deref(), ring),
        Command::Koszul { kind, n, s, t } => cmd_koszul(*kind, *n, *s, *t, ring),
        Command::Cohomology { spec } => cmd_cohomology(spec, ring),
        Command::Hilbert { ideal, window } => cmd_hilbert(ideal, *window, ring),
        Command::Numcheck { n, t, d, c, solve_c, a, b } => {
            if c.is_none() && !solve_c {
                return Err(Error::Manifest("numcheck needs --c or --solve-c".into()));
            }
            let rep = numerical_conditions(*n, *t, c.unwrap_or(0), *d, a, b, *solve_c);
            let mut text = String::new();
            let _ = writeln!(text, "c = {}{}", rep.c, if rep.c_inferred { " (from condition 2)" } else { "" });
            let _ = writeln!(text, "condition 1: q = {}, expected {}: {}", rep.q, rep.q_expected, verdict(rep.condition1));
            let _ = writeln!(text, "condition 2: {} = {}: {}", rep.lhs2, rep.rhs2, verdict(rep.condition2));
            let _ = writeln!(text, "condition 3: {} = {}: {}", rep.lhs3, rep.rhs3, verdict(rep.condition3));
            let pass = rep.all_hold();
            Ok(outcome(text, rep, pass))
        }
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn load_problem<S: Scalar>(path: &Path, ring: RingFor<'_, S>) -> Result<(Manifest, BSequenceProblem<S>)> {
    let m = Manifest::load(path)?;
    let p = m.problem(ring(m.n)?)?;
    Ok((m, p))
}

fn verification_text(rep: &VerificationReport) -> String {
    let mut s = String::new();
    for (name, cond) in [("condition (a)", &rep.condition_a), ("condition (b)", &rep.condition_b)] {
        let _ = writeln!(s, "{name}: {}", verdict(cond.holds));
        for c in &cond.checks {
            let _ = write!(s, "  {}: {}", c.name, verdict(c.holds));
            if let Some(w) = &c.witness {
                let _ = write!(s, " (witness {w})");
            }
            let _ = writeln!(s);
        }
    }
    let r = &rep.ranks;
    let _ = writeln!(s, "rank identity: rank F = {}, expected {}: {}", r.rank_f, r.expected_rank_f, verdict(r.holds));
    let _ = writeln!(
        s,
        "rank additivity: rank Ker ψ = {}, rank M = {}: {}",
        r.rank_kernel_psi,
        r.rank_m,
        verdict(r.additivity)
    );
    if let Some(nt) = &rep.nontriviality {
        let mixed: Vec<String> = nt.mixed_betas.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(
            s,
            "non-triviality: {} (mixed beta: {})",
            if nt.non_trivial { "non-trivial" } else { "trivial" },
            if mixed.is_empty() { "none".into() } else { mixed.join(", ") }
        );
    }
    if !rep.beta_minimal {
        let _ = writeln!(s, "note: beta is not a minimal generating set of its span");
    }
    let _ = writeln!(s, "result: {}", if rep.passed { "PASS" } else { "FAIL" });
    s
}

fn cmd_verify<S: Scalar>(path: &Path, nontriviality: bool, verbose: bool, ring: RingFor<'_, S>) -> Result<Outcome> {
    let (m, p) = load_problem(path, ring)?;
    let rep = p.verify(nontriviality || m.nontriviality)?;
    let pass = rep.passed && rep.nontriviality.as_ref().map_or(true, |n| n.non_trivial);
    let mut text = String::new();
    if verbose {
        let _ = writeln!(text, "U = {}, G = {}, F = {}, c = {}", p.u, p.g_module(), p.f.source(), p.c);
        for i in 0..p.q() {
            let _ = writeln!(text, "beta_{} = {}", i + 1, p.beta_koszul(i)?);
        }
        let row = Vector::new(p.phi.matrix()[0].clone());
        let _ = writeln!(text, "phi = {}", KoszulVector::from_vector(&p.space.transposed(), p.ring, &row)?);
    }
    text.push_str(&verification_text(&rep));
    Ok(outcome(text, &rep, pass))
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("json");
    fs::write(dir.join(name), text + "\n").map_err(|e| Error::Manifest(format!("cannot write {name}: {e}")))
}

fn cmd_assemble<S: Scalar>(path: &Path, out: Option<&Path>, ring: RingFor<'_, S>) -> Result<Outcome> {
    let (_, p) = load_problem(path, ring)?;
    let seq = p.assemble()?;
    let rep = seq.report();
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::Manifest(format!("cannot create {}: {e}", dir.display())))?;
        for (k, f) in seq.f_maps.iter().enumerate() {
            write_json(dir, &format!("f{}.json", k + 2), &MapFile::from_map(f))?;
        }
        write_json(dir, "g.json", &MapFile::from_map(&seq.g))?;
        write_json(dir, "phi.json", &MapFile::from_map(&seq.phi))?;
        write_json(dir, "ideal.json", &IdealFile::from_polys(seq.n, &seq.ideal_basis))?;
        let res: Vec<MapFile> = seq.resolution.maps().iter().map(MapFile::from_map).collect();
        write_json(dir, "resolution.json", &res)?;
        let min: Vec<MapFile> = seq.minimal.maps().iter().map(MapFile::from_map).collect();
        write_json(dir, "minimal_resolution.json", &min)?;
        write_json(dir, "report.json", &rep)?;
        fs::write(dir.join("betti.txt"), seq.betti.to_string()).map_err(|e| Error::Manifest(e.to_string()))?;
    }
    let mut s = String::new();
    let _ = writeln!(s, "ideal ({} generators, reduced Gröbner basis):", rep.ideal.len());
    for g in &rep.ideal {
        let _ = writeln!(s, "  {g}");
    }
    let _ = writeln!(s, "shift c = {}", rep.c);
    let _ = writeln!(s, "exactness audit: {}", verdict(rep.exactness.passed()));
    let _ = writeln!(s, "sequence audit: {}", verdict(rep.sequence.holds));
    let _ = writeln!(s, "Q(t) = {}", rep.numerator);
    let _ = writeln!(s, "Q matches Gröbner series: {}", verdict(rep.q_matches_gb));
    let qv: Vec<&str> = rep.q_vanishing.iter().map(|b| if *b { "true" } else { "false" }).collect();
    let _ = writeln!(s, "q_vanishing: [{}]", qv.join(", "));
    let _ = writeln!(s, "codim: {} (Krull), {} (numerator)", rep.codim, rep.codim_from_q);
    let _ = write!(s, "betti:\n{}", rep.betti);
    if let Some(num) = &rep.numerical {
        let _ = writeln!(
            s,
            "numerical conditions (c = {} from condition 2): {} {} {}",
            num.c,
            verdict(num.condition1),
            verdict(num.condition2),
            verdict(num.condition3)
        );
    }
    let pass = rep.exactness.passed()
        && rep.sequence.holds
        && rep.q_matches_gb
        && rep.numerical.as_ref().map_or(true, |n| n.all_hold());
    Ok(outcome(s, &rep, pass))
}

#[derive(Serialize)]
struct Labeled {
    name: String,
    value: String,
}

fn cmd_koszul<S: Scalar>(
    kind: KoszulKind,
    n: usize,
    s: Option<usize>,
    t: Option<usize>,
    ring: RingFor<'_, S>,
) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::Range("n must be positive".into()));
    }
    let r = ring(n)?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::Manifest(format!("this request needs --{flag}")));
    let mut text = String::new();
    match kind {
        KoszulKind::D => {
            let s = need(s, "s")?;
            let d = differential(r, s)?;
            let src = koszul_module(n, s);
            let tgt = koszul_module(n, s - 1);
            let _ = writeln!(text, "d_{s}: {} -> {}", src, tgt);
            let cols: Vec<String> = (0..src.rank()).map(|j| src.label(j)).collect();
            let _ = writeln!(text, "{:>12} {}", "", cols.join(" "));
            for i in 0..tgt.rank() {
                let row: Vec<String> = (0..src.rank()).map(|j| format!("{:>w$}", d.entry(i, j).to_string(), w = cols[j].len())).collect();
                let _ = writeln!(text, "{:>12} {}", tgt.label(i), row.join(" "));
            }
            Ok(outcome(text, MapFile::from_map(&d), true))
        }
        KoszulKind::E => {
            let s = need(s, "s")?;
            let e = e_module(r, s, 0)?;
            let space = KoszulSpace::primal(n, s - 1)?;
            let mut items = Vec::new();
            let _ = writeln!(text, "E_{s} = Im d_{s} in K_{}, rank {}", s - 1, e.rank());
            for (sub, g) in subsets_colex(n, s).iter().zip(e.submodule.gens()) {
                let v = KoszulVector::from_vector(&space, r, g)?;
                let name = format!("d(e{sub:?})").replace(' ', "");
                let _ = writeln!(text, "  {name} = {v}");
                items.push(Labeled { name, value: v.to_string() });
            }
            let _ = writeln!(text, "relations: {} (columns of d_{})", e.module.relations.len(), s + 1);
            Ok(outcome(text, items, true))
        }
        KoszulKind::A => {
            let t = need(t, "t")?;
            let fam = generate_a(r, t)?;
            let mut items = Vec::new();
            for (k, (v, l)) in fam.iter().zip(subsets_colex(n, n - t)).enumerate() {
                let name = format!("A{}", k + 1);
                let _ = writeln!(text, "{name} = {v}    (L = {l:?})");
                items.push(Labeled { name, value: v.to_string() });
            }
            Ok(outcome(text, items, true))
        }
        KoszulKind::B => {
            let fam = generate_b(r)?;
            let mut items = Vec::new();
            for (v, (i, j)) in fam.iter().zip(b_pairs(n)) {
                let name = format!("B[{i},{j}]");
                let _ = writeln!(text, "{name} = {v}");
                items.push(Labeled { name, value: v.to_string() });
            }
            Ok(outcome(text, items, true))
        }
    }
}

fn cmd_cohomology<S: Scalar>(spec: &str, ring: RingFor<'_, S>) -> Result<Outcome> {
    let path = Path::new(spec);
    let (m, n) = if spec.ends_with(".json") || path.is_file() {
        let f = ModuleFile::load(path)?;
        (f.module(ring(f.n)?)?, f.n)
    } else {
        let terms = parse_module_spec(spec)?;
        let n = spec_nvars(&terms);
        (spec_module(ring(n)?, &terms)?, n)
    };
    let pat = cohomology_pattern(&m, n + 1)?;
    let mut text = String::new();
    let _ = writeln!(text, "Ext^j(M, S(-{n})) for j >= 1 (dual to local cohomology H^(n-j)):");
    let higher = pat.higher();
    if higher.is_empty() {
        let _ = writeln!(text, "  (none)");
    }
    for e in higher {
        let dims = match &e.finite_length {
            Some(v) => v.iter().map(|(d, c)| format!("{c}@{d}")).collect::<Vec<_>>().join(" "),
            None => "infinite length".into(),
        };
        let total = e.total_dimension.as_ref().map_or("-".to_string(), |t| t.to_string());
        let _ = writeln!(
            text,
            "  j = {}  H^{}  finite length: {}  dim: {}  graded: {}",
            e.j,
            e.local_index,
            e.finite_length.is_some(),
            total,
            dims
        );
    }
    Ok(outcome(text, &pat, true))
}

#[derive(Serialize)]
struct HilbertReport {
    generators: Vec<String>,
    numerator: String,
    from_groebner: Vec<String>,
    from_resolution: Vec<String>,
    consistent: bool,
    betti: crate::resolution::BettiTable,
    krull_dim: i64,
    codim: i64,
    q_vanishing: Vec<bool>,
}

fn cmd_hilbert<S: Scalar>(path: &Path, window: i64, ring: RingFor<'_, S>) -> Result<Outcome> {
    if window < 0 {
        return Err(Error::Range("window must be nonnegative".into()));
    }
    let f = IdealFile::load(path)?;
    let r = ring(f.n)?;
    let ideal = f.ideal(r)?;
    let gb = reduced_ideal_basis(&ideal);
    let res = resolve_ideal(&ideal)?;
    let q = hilbert_numerator(&res.complex);
    let direct = hilbert_from_groebner(&ideal, window);
    let from_res = q.values(0, window);
    let consistent = direct == from_res && q == quotient_numerator(&ideal);
    let kd = krull_dim(&ideal);
    let rep = HilbertReport {
        generators: gb.iter().map(|p| p.to_string()).collect(),
        numerator: q.to_string(),
        from_groebner: direct.iter().map(|v| v.to_string()).collect(),
        from_resolution: from_res.iter().map(|v| v.to_string()).collect(),
        consistent,
        betti: res.betti.clone(),
        krull_dim: kd,
        codim: f.n as i64 - kd,
        q_vanishing: q.q_vanishing(q.q.vanishing_order_at_one().unwrap_or(0) + 1),
    };
    let mut s = String::new();
    let _ = writeln!(s, "reduced Gröbner basis: {}", rep.generators.join(", "));
    let _ = writeln!(s, "Q(t) = {}", rep.numerator);
    let _ = writeln!(s, "H(d), d = 0..{window}: {}", rep.from_groebner.join(" "));
    let _ = writeln!(s, "resolution and Gröbner agree: {}", verdict(consistent));
    let _ = writeln!(s, "dim S/I = {}, codim = {}", rep.krull_dim, rep.codim);
    let _ = write!(s, "betti:\n{}", rep.betti);
    Ok(outcome(s, &rep, consistent))
}
