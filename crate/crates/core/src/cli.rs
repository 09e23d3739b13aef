//! `sortstat` command line: verification runs, single statistics, joint
//! distributions, bijections and enumeration.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bicolored::{self, BicoloredMatching, ColorVector};
use crate::dyck::{enumerate_dyck, enumerate_weights, parse_list, DyckPath, RestrictionSequence, WeightVector};
use crate::error::{Error, Result};
use crate::matching::{self, Matching};
use crate::perm::{self, Permutation};
use crate::poly::{Monomial, Polynomial, Var};
use crate::signed::{self, write_signed_transposition, SignedPermutation};
use crate::verify::{self, Bases, Fault, VerifyConfig, CATALOGUE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sortstat", version, about = "Sorting-index statistics and exhaustive identity checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run identity checks (all of them unless --check is given).
    Verify(VerifyArgs),
    /// List the registered checks.
    Checks,
    /// Compute one statistic of one object.
    Stat(StatArgs),
    /// Joint distribution of statistics over a restricted class, as a polynomial.
    Dist(DistArgs),
    /// Apply a bijection and check that it round-trips.
    Map(MapArgs),
    /// List every object of a class.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check id; repeat to select several.
    #[arg(long = "check", value_name = "ID")]
    pub checks: Vec<String>,
    /// Largest size n, overriding each check's default and SORTSTAT_MAX_N.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Bases for base-dependent identities.
    #[arg(long, default_value = "all")]
    pub bases: Bases,
    /// Report elapsed time per check.
    #[arg(long)]
    pub timings: bool,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Permutations (S_r)
    Perm,
    /// Signed permutations (B_r)
    Sperm,
    /// Even signed permutations (D_n(r))
    Dperm,
    /// Dyck paths
    Dyck,
    /// Weight vectors of D(r)
    Weights,
    /// Matchings of type D(r)
    Matching,
    /// Bicolored matchings of type D(r)
    Bimatching,
    /// Bicolored matchings of type D(r) with an even number of blue edges
    BimatchingEven,
}

#[derive(Debug, Args)]
pub struct StatArgs {
    pub family: Family,
    #[arg(allow_hyphen_values = true)]
    pub object: String,
    pub statistic: String,
    /// Base object for relative statistics.
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
    /// Restriction sequence for restricted sorting indices (default n,...,n).
    #[arg(long)]
    pub r: Option<String>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub family: Family,
    #[arg(long)]
    pub r: String,
    /// Comma-separated statistics, each optionally `var=name`. Unbound
    /// numbers take q, t, p, s in order; unbound sets take t_i then s_i.
    #[arg(long)]
    pub stats: String,
    #[arg(long, allow_hyphen_values = true)]
    pub base: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bijection {
    #[value(name = "f_r")]
    FR,
    #[value(name = "g_r")]
    GR,
    Phi1,
    Phi2,
    Varphi1,
    Varphi2,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    pub bijection: Bijection,
    /// f_r/g_r: a permutation. varphi1: PATH W. varphi2: PATH W EPS.
    /// phi1: W. phi2: W EPS. With --inverse: a matching.
    #[arg(allow_hyphen_values = true, required = true)]
    pub args: Vec<String>,
    #[arg(long)]
    pub r: Option<String>,
    /// Base matching for phi1/phi2.
    #[arg(long)]
    pub base: Option<String>,
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub family: Family,
    #[arg(long)]
    pub r: Option<String>,
    /// Size, for Dyck paths or the unrestricted classes.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Parses `argv` (including the program name), runs it and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let fmt = cli.format;
    let emit = |out: &mut dyn Write, text: String, value: Value| {
        let line = match fmt {
            Format::Text => text,
            Format::Json => serde_json::to_string_pretty(&value).expect("json"),
        };
        writeln!(out, "{line}").map_err(|e| Error::Parse(e.to_string()))
    };
    match &cli.command {
        Command::Verify(a) => {
            let mut cfg = VerifyConfig::from_env()?;
            if a.max_n.is_some() {
                cfg.max_n = a.max_n;
            }
            cfg.bases = a.bases;
            cfg.timings = a.timings;
            cfg.threads = a.threads;
            cfg.fault = a.inject_fault;
            let report = verify::run_checks(&a.checks, &cfg)?;
            emit(out, report.to_string(), serde_json::to_value(&report).expect("json"))?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Checks => {
            let text = CATALOGUE
                .iter()
                .map(|c| format!("{:<24} n<={} {}", c.id, c.default_max_n, c.statement))
                .collect::<Vec<_>>()
                .join("\n");
            let value = CATALOGUE
                .iter()
                .map(|c| json!({ "id": c.id, "module": c.module, "default_max_n": c.default_max_n, "all_bases": c.quantified, "statement": c.statement }))
                .collect();
            emit(out, text, Value::Array(value))?;
            Ok(EXIT_OK)
        }
        Command::Stat(a) => {
            let object = Object::parse(a.family, &a.object)?;
            let ctx = Context::new(a.family, a.base.as_deref(), a.r.as_deref())?;
            let v = evaluate(&object, &a.statistic, &ctx)?;
            emit(out, v.text(), v.json())?;
            Ok(EXIT_OK)
        }
        Command::Dist(a) => {
            let r: RestrictionSequence = a.r.parse()?;
            let ctx = Context::new(a.family, a.base.as_deref(), Some(&a.r))?;
            let stats = parse_stat_bindings(&a.stats)?;
            let mut poly = Polynomial::zero();
            for object in class(a.family, &r)? {
                let mut m = Monomial::one();
                let (mut scalars, mut sets) = (0, 0);
                for (var, name) in &stats {
                    match evaluate(&object, name, &ctx)? {
                        StatValue::Int(e) => {
                            let v = match var {
                                Some(v) => scalar_var(v)?,
                                None => *[Var::Q, Var::T, Var::P, Var::S].get(scalars).ok_or_else(too_many)?,
                            };
                            scalars += 1;
                            m.mul_var(v, e as u32);
                        }
                        StatValue::Set(members) => {
                            let family: fn(usize) -> Var = match var.as_deref() {
                                Some("t") => Var::t,
                                Some("s") => Var::s,
                                Some(v) => return Err(Error::Parse(format!("sets bind to t or s, not {v:?}"))),
                                None => *[Var::t as fn(usize) -> Var, Var::s].get(sets).ok_or_else(too_many)?,
                            };
                            sets += 1;
                            m = m.times_each(members, family);
                        }
                        StatValue::Text(..) => return Err(Error::Parse(format!("{name} is not a number or a set"))),
                    }
                }
                poly.add_term(m, 1);
            }
            emit(out, poly.to_string(), serde_json::to_value(&poly).expect("json"))?;
            Ok(EXIT_OK)
        }
        Command::Map(a) => {
            let (input, output, ok) = map(a)?;
            let text = if ok { output.clone() } else { format!("{output}\nround trip FAILED") };
            emit(out, text, json!({ "input": input, "output": output, "roundtrip": ok }))?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Enumerate(a) => {
            let r = match (&a.r, a.n) {
                (Some(r), _) => r.parse()?,
                (None, Some(n)) => RestrictionSequence::full(n),
                (None, None) => return Err(Error::Parse("enumerate needs --r or --n".into())),
            };
            let items: Vec<String> = match a.family {
                Family::Dyck => enumerate_dyck(a.n.unwrap_or(r.len())).map(|d| d.to_string()).collect(),
                Family::Weights => enumerate_weights(&DyckPath::from_restriction(&r)).map(|w| w.to_string()).collect(),
                f => class(f, &r)?.iter().map(Object::to_string).collect(),
            };
            emit(out, items.join("\n"), json!(items))?;
            Ok(EXIT_OK)
        }
    }
}

fn too_many() -> Error {
    Error::Parse("too many statistics of one kind; bind them with var=name".into())
}

fn scalar_var(name: &str) -> Result<Var> {
    match name {
        "q" => Ok(Var::Q),
        "t" => Ok(Var::T),
        "p" => Ok(Var::P),
        "s" => Ok(Var::S),
        _ => name.parse().map_err(|_| Error::Parse(format!("unknown variable {name:?}"))),
    }
}

fn parse_stat_bindings(s: &str) -> Result<Vec<(Option<String>, String)>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x.split_once('=') {
            Some((v, n)) => Ok((Some(v.trim().to_string()), n.trim().to_string())),
            None => Ok((None, x.to_string())),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Perm(Permutation),
    Signed(SignedPermutation),
    Dyck(DyckPath),
    Matching(Matching),
    Bicolored(BicoloredMatching),
}

impl Object {
    pub fn parse(family: Family, s: &str) -> Result<Object> {
        Ok(match family {
            Family::Perm => Object::Perm(s.parse()?),
            Family::Sperm => Object::Signed(s.parse()?),
            Family::Dperm => {
                let p: SignedPermutation = s.parse()?;
                p.require_type_d()?;
                Object::Signed(p)
            }
            Family::Dyck => Object::Dyck(s.parse()?),
            Family::Weights => return Err(Error::Parse("weight vectors have no statistics".into())),
            Family::Matching => Object::Matching(s.parse()?),
            Family::Bimatching | Family::BimatchingEven => Object::Bicolored(s.parse()?),
        })
    }
}

impl std::fmt::Display for Object {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Object::Perm(p) => p.fmt(f),
            Object::Signed(p) => p.fmt(f),
            Object::Dyck(d) => d.fmt(f),
            Object::Matching(m) => m.fmt(f),
            Object::Bicolored(m) => m.fmt(f),
        }
    }
}

fn class(family: Family, r: &RestrictionSequence) -> Result<Vec<Object>> {
    let d = DyckPath::from_restriction(r);
    Ok(match family {
        Family::Perm => perm::enumerate_sr(r).into_iter().map(Object::Perm).collect(),
        Family::Sperm => signed::enumerate_br(r).into_iter().map(Object::Signed).collect(),
        Family::Dperm => signed::enumerate_dr(r).into_iter().map(Object::Signed).collect(),
        Family::Matching => matching::enumerate_matchings(&d).map(Object::Matching).collect(),
        Family::Bimatching => bicolored::enumerate_bicolored(&d).map(Object::Bicolored).collect(),
        Family::BimatchingEven => bicolored::enumerate_bicolored_even(&d).map(Object::Bicolored).collect(),
        Family::Dyck | Family::Weights => return Err(Error::Parse("no statistics on this family".into())),
    })
}

/// Base object and restriction for relative statistics.
pub struct Context {
    base: Option<Object>,
    r: Option<RestrictionSequence>,
}

impl Context {
    pub fn new(family: Family, base: Option<&str>, r: Option<&str>) -> Result<Context> {
        let base = base.map(|b| Object::parse(family, b)).transpose()?;
        let r = r.map(str::parse).transpose()?;
        Ok(Context { base, r })
    }

    fn r(&self, n: usize) -> RestrictionSequence {
        self.r.clone().unwrap_or_else(|| RestrictionSequence::full(n))
    }

    fn perm_base(&self, n: usize) -> Result<Permutation> {
        match &self.base {
            Some(Object::Perm(p)) => Ok(p.clone()),
            None => Ok(Permutation::identity(n)),
            Some(o) => Err(Error::Parse(format!("base {o} is not a permutation"))),
        }
    }

    fn signed_base(&self, n: usize) -> Result<SignedPermutation> {
        match &self.base {
            Some(Object::Signed(p)) => Ok(p.clone()),
            None => Ok(SignedPermutation::identity(n)),
            Some(o) => Err(Error::Parse(format!("base {o} is not a signed permutation"))),
        }
    }

    fn matching_base(&self, d: &DyckPath) -> Result<Matching> {
        match &self.base {
            Some(Object::Matching(m)) => Ok(m.clone()),
            None => Ok(Matching::nonnesting(d)),
            Some(o) => Err(Error::Parse(format!("base {o} is not a matching"))),
        }
    }

    fn bicolored_base(&self, d: &DyckPath) -> Result<BicoloredMatching> {
        match &self.base {
            Some(Object::Bicolored(m)) => Ok(m.clone()),
            None => Ok(BicoloredMatching::all_red(Matching::nonnesting(d))),
            Some(o) => Err(Error::Parse(format!("base {o} is not a bicolored matching"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatValue {
    Int(usize),
    Set(Vec<usize>),
    Text(String, Value),
}

impl StatValue {
    fn set<K>(s: crate::sets::IndexSet<K>) -> StatValue {
        StatValue::Set(s.to_vec())
    }

    pub fn text(&self) -> String {
        match self {
            StatValue::Int(x) => x.to_string(),
            StatValue::Set(xs) => format!("{{{}}}", xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
            StatValue::Text(t, _) => t.clone(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            StatValue::Int(x) => json!(x),
            StatValue::Set(xs) => json!(xs),
            StatValue::Text(_, v) => v.clone(),
        }
    }
}

fn unknown(object: &Object, name: &str) -> Error {
    let family = match object {
        Object::Perm(_) => "perm",
        Object::Signed(_) => "sperm",
        Object::Dyck(_) => "dyck",
        Object::Matching(_) => "matching",
        Object::Bicolored(_) => "bimatching",
    };
    Error::Parse(format!("unknown {family} statistic {name:?}"))
}

/// Evaluates a named statistic; a trailing `'` may also be written `p`.
pub fn evaluate(object: &Object, name: &str, ctx: &Context) -> Result<StatValue> {
    use StatValue::{Int, Text};
    let key = name.replace('\'', "p");
    Ok(match object {
        Object::Perm(s) => {
            let n = s.n();
            let rel = || -> Result<Permutation> { s.compose(&ctx.perm_base(n)?.inverse()) };
            match key.as_str() {
                "inv" => Int(s.inv()),
                "maj" => Int(s.maj()),
                "sor" => Int(s.sor()),
                "cyc" => Int(s.cyc()),
                "rlmin" => Int(s.rlminl_set().len()),
                "Cyc" => StatValue::set(s.cyc_min_set()),
                "Rlminl" => StatValue::set(s.rlminl_set()),
                "Lrmaxp" => StatValue::set(s.lrmaxp_set()),
                "inverse" => Text(s.inverse().to_string(), json!(s.inverse())),
                "factorization" => {
                    let f = s.sor_factorization();
                    Text(f.iter().map(|(i, j)| format!("({i} {j})")).collect(), json!(f))
                }
                "sorr" => Int(perm::sor_r(s, &ctx.perm_base(n)?, &ctx.r(n))?),
                "cycRel" => Int(rel()?.cyc()),
                "CycRel" => StatValue::set(rel()?.cyc_min_set()),
                _ => return Err(unknown(object, name)),
            }
        }
        Object::Signed(s) => {
            let n = s.n();
            let rel = || -> Result<SignedPermutation> { s.compose(&ctx.signed_base(n)?.inverse()) };
            let factors = |f: Vec<signed::SignedTransposition>| {
                Text(f.iter().map(write_signed_transposition).collect(), json!(f))
            };
            match key.as_str() {
                "N" => Int(s.neg_count()),
                "invB" => Int(s.inv_b()),
                "nminB" => Int(s.nmin_b()),
                "sorB" => Int(s.sor_b()),
                "lB" => Int(s.refl_length_b()),
                "invD" => Int(s.inv_d()?),
                "sorD" => Int(s.sor_d()?),
                "Prlminl" => StatValue::set(s.prlminl_set()),
                "Prlminlp" => StatValue::set(s.prlminl_prime_set()),
                "Cyc0" => StatValue::set(s.cyc0_set()),
                "Cyc1" => StatValue::set(s.cyc1_set()),
                "Cyc0p" => StatValue::set(s.cyc01_prime_sets().0),
                "Cyc1p" => StatValue::set(s.cyc01_prime_sets().1),
                "inverse" => Text(s.inverse().to_string(), json!(s.inverse())),
                "factorizationB" => factors(s.sor_b_factorization()),
                "factorizationD" => factors(s.sor_d_factorization()?),
                "sorrB" => Int(signed::sor_r_b(s, &ctx.signed_base(n)?, &ctx.r(n))?),
                "sorrD" => Int(signed::sor_r_d(s, &ctx.signed_base(n)?, &ctx.r(n))?),
                "lBRel" => Int(rel()?.refl_length_b()),
                "Cyc0Rel" => StatValue::set(rel()?.cyc0_set()),
                "Cyc1Rel" => StatValue::set(rel()?.cyc1_set()),
                "Cyc0pRel" => StatValue::set(rel()?.cyc01_prime_sets().0),
                "Cyc1pRel" => StatValue::set(rel()?.cyc01_prime_sets().1),
                _ => return Err(unknown(object, name)),
            }
        }
        Object::Dyck(d) => match key.as_str() {
            "semilength" => Int(d.semilength()),
            "heights" => Text(format!("{:?}", d.height_sequence()), json!(d.height_sequence())),
            "falls" => Text(format!("{:?}", d.fall_heights()), json!(d.fall_heights())),
            "restriction" => Text(d.restriction().to_string(), json!(d.restriction().as_slice())),
            "weights" => Int(d.height_sequence().iter().product()),
            _ => return Err(unknown(object, name)),
        },
        Object::Matching(m) => {
            let d = m.type_of();
            let rel = m.arc_relations();
            match key.as_str() {
                "cr" => Int(rel.cr),
                "ne" => Int(rel.ne),
                "al" => Int(rel.al),
                "Long" => StatValue::set(m.long_set()),
                "Short" => StatValue::set(m.short_set()),
                "Left" => StatValue::set(m.left_set()),
                "type" => Text(d.to_string(), json!(d)),
                "sor" => Int(matching::sor(m, &ctx.matching_base(&d)?)?),
                "cyc" => Int(matching::cyc(m, &ctx.matching_base(&d)?)?),
                "Cyc" => StatValue::set(matching::cyc_set(m, &ctx.matching_base(&d)?)?),
                "perm" => {
                    let p = perm::f_r_inv(m, &d.restriction())?;
                    Text(p.to_string(), json!(p))
                }
                _ => return Err(unknown(object, name)),
            }
        }
        Object::Bicolored(m) => {
            let d = m.type_of();
            let c = m.refined_counts();
            let base = || ctx.bicolored_base(&d);
            match key.as_str() {
                "crr" => Int(c.cr_red),
                "crb" => Int(c.cr_blue),
                "ner" => Int(c.ne_red),
                "neb" => Int(c.ne_blue),
                "alr" => Int(c.al_red),
                "alb" => Int(c.al_blue),
                "b" => Int(c.blue),
                "mix" => Int(m.mix()),
                "mixp" => Int(m.mix_prime()),
                "Longr" => StatValue::set(m.longr_set()),
                "Longrp" => StatValue::set(m.longr_prime_set()),
                "type" => Text(d.to_string(), json!(d)),
                "sor" => Int(bicolored::sor_bicolored(m, &base()?)?),
                "sorp" => Int(bicolored::sor_prime(m, &base()?)?),
                "Cyc0" => StatValue::set(bicolored::cyc01_sets(m, &base()?)?.0),
                "Cyc1" => StatValue::set(bicolored::cyc01_sets(m, &base()?)?.1),
                "Cyc0p" => StatValue::set(bicolored::cyc01_prime_sets(m, &base()?)?.0),
                "Cyc1p" => StatValue::set(bicolored::cyc01_prime_sets(m, &base()?)?.1),
                "perm" => {
                    let p = signed::g_r_inv(m, &d.restriction())?;
                    Text(p.to_string(), json!(p))
                }
                _ => return Err(unknown(object, name)),
            }
        }
    })
}

fn weights(s: &str, d: &DyckPath) -> Result<WeightVector> {
    WeightVector::new(parse_list(s)?, &d.height_sequence())
}

fn colors(s: &str, n: usize) -> Result<ColorVector> {
    let eps = ColorVector::new(parse_list(s)?.into_iter().map(|x| x as u8).collect())?;
    if eps.len() != n {
        return Err(Error::ColorLength { got: eps.len(), expected: n });
    }
    Ok(eps)
}

/// Returns `(input, output, round trip held)`.
fn map(a: &MapArgs) -> Result<(String, String, bool)> {
    let arg = |i: usize| -> Result<&str> {
        a.args.get(i).map(String::as_str).ok_or_else(|| Error::Parse(format!("{:?} needs more arguments", a.bijection)))
    };
    let r = || -> Result<RestrictionSequence> {
        a.r.as_deref().ok_or_else(|| Error::Parse("--r is required".into()))?.parse()
    };
    let base = || -> Result<&str> { a.base.as_deref().ok_or_else(|| Error::Parse("--base is required".into())) };
    let input = a.args.join(" ");
    Ok(match (a.bijection, a.inverse) {
        (Bijection::FR, false) => {
            let (s, r): (Permutation, _) = (arg(0)?.parse()?, r()?);
            let m = perm::f_r(&s, &r)?;
            (input, m.to_string(), perm::f_r_inv(&m, &r)? == s)
        }
        (Bijection::FR, true) => {
            let (m, r): (Matching, _) = (arg(0)?.parse()?, r()?);
            let s = perm::f_r_inv(&m, &r)?;
            (input, s.to_string(), perm::f_r(&s, &r)? == m)
        }
        (Bijection::GR, false) => {
            let (s, r): (SignedPermutation, _) = (arg(0)?.parse()?, r()?);
            let m = signed::g_r(&s, &r)?;
            (input, m.to_string(), signed::g_r_inv(&m, &r)? == s)
        }
        (Bijection::GR, true) => {
            let (m, r): (BicoloredMatching, _) = (arg(0)?.parse()?, r()?);
            let s = signed::g_r_inv(&m, &r)?;
            (input, s.to_string(), signed::g_r(&s, &r)? == m)
        }
        (Bijection::Varphi1, false) => {
            let d: DyckPath = arg(0)?.parse()?;
            let w = weights(arg(1)?, &d)?;
            let m = matching::varphi1(&d, &w)?;
            (input, m.to_string(), matching::varphi1_inv(&m) == (d, w))
        }
        (Bijection::Varphi1, true) => {
            let m: Matching = arg(0)?.parse()?;
            let (d, w) = matching::varphi1_inv(&m);
            let ok = matching::varphi1(&d, &w)? == m;
            (input, format!("{d} {w}"), ok)
        }
        (Bijection::Varphi2, false) => {
            let d: DyckPath = arg(0)?.parse()?;
            let (w, eps) = (weights(arg(1)?, &d)?, colors(arg(2)?, d.semilength())?);
            let m = bicolored::varphi2(&d, &w, &eps)?;
            (input, m.to_string(), bicolored::varphi2_inv(&m) == (d, w, eps))
        }
        (Bijection::Varphi2, true) => {
            let m: BicoloredMatching = arg(0)?.parse()?;
            let (d, w, eps) = bicolored::varphi2_inv(&m);
            let ok = bicolored::varphi2(&d, &w, &eps)? == m;
            (input, format!("{d} {w} {eps}"), ok)
        }
        (Bijection::Phi1, false) => {
            let m0: Matching = base()?.parse()?;
            let w = weights(arg(0)?, &m0.type_of())?;
            let m = matching::phi1(&m0, &w)?;
            (input, m.to_string(), matching::phi1_inv(&m0, &m)? == w)
        }
        (Bijection::Phi1, true) => {
            let (m0, m): (Matching, Matching) = (base()?.parse()?, arg(0)?.parse()?);
            let w = matching::phi1_inv(&m0, &m)?;
            (input, w.to_string(), matching::phi1(&m0, &w)? == m)
        }
        (Bijection::Phi2, false) => {
            let m0: BicoloredMatching = base()?.parse()?;
            let w = weights(arg(0)?, &m0.type_of())?;
            let eps = colors(arg(1)?, m0.n())?;
            let m = bicolored::phi2(&m0, &w, &eps)?;
            (input, m.to_string(), bicolored::phi2_inv(&m0, &m)? == (w, eps))
        }
        (Bijection::Phi2, true) => {
            let (m0, m): (BicoloredMatching, BicoloredMatching) = (base()?.parse()?, arg(0)?.parse()?);
            let (w, eps) = bicolored::phi2_inv(&m0, &m)?;
            (input, format!("{w} {eps}"), bicolored::phi2(&m0, &w, &eps)? == m)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("sortstat").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn stat_examples() {
        assert_eq!(run_str(&["stat", "perm", "6571342", "sor"]), (0, "16\n".into(), String::new()));
        assert_eq!(run_str(&["stat", "sperm", "-5,1,3,-4,-2", "sorB"]).1, "13\n");
        assert_eq!(run_str(&["stat", "perm", "6571342", "factorization"]).1, "(2 3)(1 4)(2 5)(1 6)(3 7)\n");
        assert_eq!(run_str(&["stat", "sperm", "-5,1,3,-4,-2", "factorizationB"]).1, "(1 2)(-4 4)(-1 5)\n");
        assert_eq!(run_str(&["stat", "sperm", "-3,-9,-5,-7,1,-6,-4,8,2", "Cyc0"]).1, "{1,4,8}\n");
        assert_eq!(run_str(&["--format", "json", "stat", "perm", "6571342", "Rlminl"]).1.split_whitespace().collect::<String>(), "[1,2]");
    }

    #[test]
    fn relative_stats_use_base() {
        assert_eq!(run_str(&["stat", "perm", "213", "sorr", "--base", "132", "--r", "2,3,3"]).0, 0);
        assert_eq!(run_str(&["stat", "matching", "1-4,2-3", "sor", "--base", "1-3,2-4"]).1, "1\n");
    }

    #[test]
    fn dist_prints_polynomials() {
        let (code, out, _) = run_str(&["dist", "perm", "--r", "3,3,3", "--stats", "sor,cyc"]);
        assert_eq!(code, 0);
        let want = crate::formulas::sn(3).to_string();
        assert_eq!(out.trim(), want);
        let (_, out, _) = run_str(&["dist", "perm", "--r", "2,3,3", "--stats", "t=cycRel", "--base", "213"]);
        assert_eq!(out.trim(), crate::formulas::lasthm(&"2,3,3".parse().unwrap()).to_string());
    }

    #[test]
    fn map_round_trips() {
        let (code, out, _) = run_str(&["map", "phi1", "--base", "1-3,2-4", "1,2"]);
        assert_eq!((code, out.as_str()), (0, "1-4,2-3\n"));
        let (code, out, _) = run_str(&["map", "f_r", "--r", "3,3,3", "231"]);
        assert_eq!(code, 0);
        let (code, back, _) = run_str(&["map", "f_r", "--r", "3,3,3", "--inverse", out.trim()]);
        assert_eq!((code, back.as_str()), (0, "231\n"));
    }

    #[test]
    fn enumerate_lists_classes() {
        let (_, out, _) = run_str(&["enumerate", "dyck", "--n", "3"]);
        assert_eq!(out.lines().count(), 5);
        let (_, out, _) = run_str(&["enumerate", "dperm", "--n", "3"]);
        assert_eq!(out.lines().count(), 24);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["verify", "--check", "LASTHM", "--max-n", "4"]).0, 0);
        assert_eq!(run_str(&["verify", "--check", "PETB", "--max-n", "2", "--inject-fault", "sorb-sign-cost"]).0, 1);
        assert_eq!(run_str(&["verify", "--check", "NOPE"]).0, 2);
        assert_eq!(run_str(&["stat", "perm", "1134", "sor"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
