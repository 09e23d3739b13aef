//! Exhaustive verification of every identity at small sizes.
//!
//! Each check enumerates all objects of each size `n` up to a bound, computes
//! both sides exactly, and keeps the first counterexample with everything
//! needed to replay it from the command line.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bicolored::{self, BicoloredMatching, ColorVector};
use crate::dyck::{catalan, enumerate_dyck, enumerate_weights, DyckPath, RestrictionSequence, WeightVector};
use crate::error::{Error, Result};
use crate::formulas;
use crate::matching::{self, Matching};
use crate::perm::{self, enumerate_sn, enumerate_sr, Permutation};
use crate::poly::{distribution, Monomial, Polynomial, Var};
use crate::sets::{IndexSet, Letters, OpenerRanks};
use crate::signed::{self, enumerate_bn, enumerate_br, enumerate_dn, enumerate_dr, SignedPermutation};

pub const MAX_N_ENV: &str = "SORTSTAT_MAX_N";

/// Which bases `M_0` / `σ_0` a base-dependent identity is checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bases {
    /// Every base of the right type.
    #[default]
    All,
    /// The nonnesting matching or the identity permutation only.
    Canonical,
}

impl FromStr for Bases {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Bases::All),
            "canonical" => Ok(Bases::Canonical),
            _ => Err(Error::Parse(format!("bases must be `all` or `canonical`, got {s:?}"))),
        }
    }
}

/// Deliberate defects used to confirm that the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Matching sort counts over the closed interval `[M_0(o_k), M_k(o_k)]`
    /// instead of its complement when `M_k(o_k) > M_0(o_k)`.
    SorWrapCase,
    /// Type-B sorting index without the `-χ(i < 0)` correction.
    SorBSignCost,
}

impl FromStr for Fault {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sor-wrap-case" => Ok(Fault::SorWrapCase),
            "sorb-sign-cost" => Ok(Fault::SorBSignCost),
            _ => Err(Error::Parse(format!("unknown fault {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    /// Overrides every check's default bound.
    pub max_n: Option<usize>,
    pub bases: Bases,
    pub fault: Option<Fault>,
    /// Adds `elapsed_ms` to each result; off by default so reports are stable.
    pub timings: bool,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

impl VerifyConfig {
    /// Default configuration with `max_n` taken from `SORTSTAT_MAX_N` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = VerifyConfig::default();
        if let Ok(v) = std::env::var(MAX_N_ENV) {
            let n = v.trim().parse().map_err(|_| Error::Parse(format!("{MAX_N_ENV}={v:?} is not a number")))?;
            cfg.max_n = Some(n);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub max_n: usize,
    pub instances: u64,
    /// `per_n[n]` instances at size `n`.
    pub per_n: Vec<u64>,
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {:<24} n<={} instances={}", c.id, c.max_n, c.instances)?;
            if let Some(ms) = c.elapsed_ms {
                write!(f, " {ms}ms")?;
            }
            writeln!(f)?;
            if let Some(cx) = &c.counterexample {
                writeln!(f, "  counterexample: {cx}")?;
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type CheckFn = fn(&mut Ctx, usize);

pub struct CheckInfo {
    pub id: &'static str,
    pub module: &'static str,
    pub statement: &'static str,
    pub min_n: usize,
    pub default_max_n: usize,
    /// Quantifies over bases, so `--bases` applies.
    pub quantified: bool,
    run: CheckFn,
}

macro_rules! check {
    ($id:literal, $module:literal, $min:literal ..= $max:literal, $q:literal, $run:ident, $stmt:literal) => {
        CheckInfo {
            id: $id,
            module: $module,
            statement: $stmt,
            min_n: $min,
            default_max_n: $max,
            quantified: $q,
            run: $run,
        }
    };
}

pub static CATALOGUE: &[CheckInfo] = &[
    check!("DYCK-HEIGHTS", "dyck", 0..=6, false, dyck_heights, "rise heights and fall heights agree as multisets"),
    check!("DYCK-RESTRICTION", "dyck", 0..=6, false, dyck_restriction, "r -> D(r) -> r round-trips and fall k has height r_k - k + 1"),
    check!("DYCK-CATALAN", "dyck", 0..=6, false, dyck_catalan, "Catalan(n) distinct valid Dyck paths"),
    check!("DYCK-WEIGHTS", "dyck", 0..=6, false, dyck_weights, "a path has prod h_k weight vectors"),
    check!("VARPHI1-BIJECTION", "matchings", 0..=5, false, varphi1_bijection, "varphi1 is a bijection onto M_n(D)"),
    check!("PHI1-BIJECTION", "matchings", 0..=4, true, phi1_bijection, "phi1 is a bijection onto M_n(D) for every base"),
    check!("THM1", "matchings", 0..=5, false, thm1, "sum p^cr q^ne prod_Left s prod_Long t over M_n(D)"),
    check!("PROP1", "matchings", 0..=5, false, prop1, "Short(varphi1(w)) = Rlminl(2-w_1, ..., n+1-w_n)"),
    check!("PHI1-PROPERTIES", "matchings", 0..=4, true, phi1_properties, "phi1: sor = sum (w_k - 1), Cyc = {w_k = 1}, Short = Rlminl for the nonnesting base"),
    check!("EQHM", "matchings", 0..=4, true, eqhm, "sum q^sor(M,M0) prod_Cyc t = prod (t_k + q + ... + q^{h_k-1})"),
    check!("MULTISET-SOR-NE", "matchings", 0..=5, false, multiset_sor_ne, "{(sor, Cyc, Short)} = {(ne, Long, Short)} for the nonnesting base"),
    check!("SORT-INTERMEDIATE-TYPES", "matchings", 0..=4, true, sort_intermediate_types, "every intermediate matching of the sort has type D"),
    check!("THMSIGNED", "bicolored", 0..=4, false, thmsigned, "eight-variable bicolored product over M^(2)_n(D)"),
    check!("CORB", "bicolored", 0..=5, false, corb, "sum q^mix prod_Longr t = prod (t_k + q[h_k-1] + q^{2k-h_k}[h_k])"),
    check!("VARPHI2-BIJECTION", "bicolored", 0..=4, false, varphi2_bijection, "varphi2 is a bijection onto M^(2)_n(D)"),
    check!("PHI2-PROPERTIES", "bicolored", 0..=4, true, phi2_properties, "phi2: bijection, sor formula, Cyc0 = {(1,0)}, Cyc1 = {(h,1)}"),
    check!("BICOLORED-ODDEVEN", "bicolored", 0..=4, true, bicolored_oddeven, "sum q^sor prod_Cyc0 t prod_Cyc1 s over bicolored matchings"),
    check!("BICOLORED-SOR-MIX", "bicolored", 0..=4, true, bicolored_sor_mix, "(sor, Cyc0) and (mix, Longr) are equidistributed"),
    check!("BICOLORED-ALLRED", "bicolored", 0..=4, true, bicolored_allred, "bicolored sor of an all-red matching is its sor"),
    check!("THMSIGNED-EVEN", "bicolored", 0..=4, false, thmsigned_even, "six-variable product over even bicolored matchings with Longr'"),
    check!("DMIX", "bicolored", 0..=4, false, dmix, "sum q^mix' prod_Longr' t over even bicolored matchings"),
    check!("SORPRIME-LEMMA", "bicolored", 0..=4, true, sorprime_lemma, "sor' of an even phi2 image is sum_{k>=2} (w_k + eps_k(2k-1-h_k) - 1)"),
    check!("DCYC", "bicolored", 0..=4, true, dcyc, "sum q^sor' prod_Cyc0' t prod_Cyc1' s over even bicolored matchings"),
    check!("TRANSPORT-A", "permutations", 0..=5, false, transport_a, "f_r: ne = inv, Long = Rlminl, Short = Lrmaxp"),
    check!("RLMIN-R", "permutations", 0..=5, false, rlmin_r, "sum over S_r of q^inv prod_Rlminl t and q^inv t^rlmin"),
    check!("SORR-LEMMA", "permutations", 0..=5, false, sorr_lemma, "sor_r(sigma, id) = sor(sigma)"),
    check!("SORR-TRANSPORT", "permutations", 0..=4, true, sorr_transport, "sum a_k = sor(f_r sigma, f_r sigma0) and Cyc(sigma sigma0^-1) = Cyc(M, M0)"),
    check!("PERMCOR", "permutations", 0..=4, true, permcor, "sum q^sor_r prod_Cyc(sigma sigma0^-1) t = prod (t_i + q + ... + q^{h_i-1})"),
    check!("TRIPLES", "permutations", 0..=5, false, triples, "{(inv, Rlminl, Lrmaxp)} = {(sor, Cyc, Lrmaxp)} over S_r"),
    check!("LASTHM", "permutations", 0..=4, true, lasthm, "sum t^cyc(sigma sigma0^-1) = prod (t + r_k - k) for every sigma0"),
    check!("ROOK", "polynomials", 0..=5, false, rook, "prod (t + r_k - k) = sum rooks_{n-k} (t-1)...(t-k)"),
    check!("SN", "permutations", 0..=6, false, sn, "sum over S_n of q^sor t^cyc = t(t+q)...(t+q+...+q^{n-1})"),
    check!("BW", "permutations", 0..=6, false, bw, "inv and maj with Rlminl give t_1(t_2+q)...(t_n+q+...+q^{n-1})"),
    check!("SOR-FACTORIZATION", "permutations", 0..=5, false, sor_factorization, "selection-sort transpositions multiply to sigma"),
    check!("SORB-FACTORIZATION", "permutations", 0..=4, false, sorb_factorization, "type-B and type-D sort transpositions multiply to sigma"),
    check!("TRANSPORT-B", "permutations", 0..=4, false, transport_b, "g_r: mix = inv_B, Longr = Prlminl, nmin_B = n - prlmin"),
    check!("SORRB-LEMMA", "permutations", 0..=4, false, sorrb_lemma, "sor_r(sigma, id) = sor_B(sigma) on B_r"),
    check!("SORRB-TRANSPORT", "permutations", 0..=4, true, sorrb_transport, "sum b_k = sor(g_r sigma, g_r sigma0) with matching Cyc0, Cyc1"),
    check!("ODDEVEN", "permutations", 0..=4, true, oddeven, "sum over B_r of q^sor_r prod_Cyc0 t prod_Cyc1 s"),
    check!("NMIN-SOR", "permutations", 0..=4, true, nmin_sor, "sum over B_r of q^sor_r t^l'_B = prod (1 + q[h_k-1]t + q^{2k-h_k}[h_k]t)"),
    check!("PRLMIN-B", "permutations", 0..=4, true, prlmin_b, "(sor_r, Cyc0) and (inv_B, Prlminl) both give the mix product"),
    check!("INVB-NMIN", "permutations", 0..=4, true, invb_nmin, "(inv_B, nmin_B) and (sor_r, l'_B) are equidistributed on B_r"),
    check!("PETB", "permutations", 0..=4, false, petb, "(sor_B, l'_B) and (inv_B, nmin_B) give prod (1 + t[2i] - t)"),
    check!("REFL-LENGTH", "permutations", 0..=4, false, refl_length, "l'_B = n - cyc0 equals the reflection length"),
    check!("TRANSPORT-D", "permutations", 0..=4, false, transport_d, "g_r on D_n(r): mix' = inv_D = inv_B - N, Longr' = Prlminl'"),
    check!("PETD", "permutations", 1..=5, false, petd, "sor_D and inv_D give [n]_q prod [2i]_q over D_n"),
    check!("DR-INV", "permutations", 0..=4, false, dr_inv, "sum over D_n(r) of q^inv_D prod_Prlminl' t"),
    check!("DR-SOR", "permutations", 0..=4, true, dr_sor, "sum over D_n(r) of q^sor_D prod_Cyc0' t prod_Cyc1' s"),
    check!("DR-EQUI", "permutations", 0..=4, true, dr_equi, "(sor_D, Cyc0') and (inv_D, Prlminl') are equidistributed on D_n(r)"),
    check!("DFULL", "permutations", 1..=5, false, dfull, "inv_D/Prlminl' and sor_D/Cyc0' over D_n give prod (t_i + q[i-1] + q^{i-1}[i])"),
    check!("RHS-SPECIALIZATION", "polynomials", 0..=5, false, rhs_specialization, "product formulas agree under their stated specializations"),
];

pub fn check_info(id: &str) -> Option<&'static CheckInfo> {
    CATALOGUE.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

pub fn check_ids() -> Vec<&'static str> {
    CATALOGUE.iter().map(|c| c.id).collect()
}

/// Runs the named checks (all of them if `ids` is empty) in catalogue order.
pub fn run_checks<S: AsRef<str>>(ids: &[S], cfg: &VerifyConfig) -> Result<Report> {
    let selected: Vec<&'static CheckInfo> = if ids.is_empty() {
        CATALOGUE.iter().collect()
    } else {
        let mut wanted = Vec::new();
        for id in ids {
            let info = check_info(id.as_ref()).ok_or_else(|| Error::UnknownCheck(id.as_ref().to_string()))?;
            if !wanted.iter().any(|w: &&CheckInfo| w.id == info.id) {
                wanted.push(info);
            }
        }
        wanted.sort_by_key(|w| CATALOGUE.iter().position(|c| c.id == w.id));
        wanted
    };
    let threads = match cfg.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    }
    .min(selected.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; selected.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(info) = selected.get(i) else { break };
                let result = run_one(info, cfg);
                results.lock().expect("no worker panicked")[i] = Some(result);
            });
        }
    });
    let checks = results.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every check ran")).collect();
    Ok(Report { checks })
}

pub fn run_check(id: &str, cfg: &VerifyConfig) -> Result<CheckResult> {
    let info = check_info(id).ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    Ok(run_one(info, cfg))
}

fn run_one(info: &CheckInfo, cfg: &VerifyConfig) -> CheckResult {
    let max_n = cfg.max_n.unwrap_or(info.default_max_n);
    let start = Instant::now();
    let mut ctx = Ctx { cfg, n: 0, per_n: vec![0; max_n + 1], counterexample: None };
    for n in info.min_n..=max_n {
        ctx.n = n;
        (info.run)(&mut ctx, n);
    }
    CheckResult {
        id: info.id.to_string(),
        status: if ctx.counterexample.is_none() { Status::Pass } else { Status::Fail },
        max_n,
        instances: ctx.per_n.iter().sum(),
        per_n: ctx.per_n,
        counterexample: ctx.counterexample,
        elapsed_ms: cfg.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

struct Ctx<'a> {
    cfg: &'a VerifyConfig,
    n: usize,
    per_n: Vec<u64>,
    counterexample: Option<Value>,
}

impl Ctx<'_> {
    fn tick(&mut self, count: usize) {
        self.per_n[self.n] += count as u64;
    }

    fn expect(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        if !ok && self.counterexample.is_none() {
            let mut v = detail();
            if let Value::Object(map) = &mut v {
                map.insert("n".into(), json!(self.n));
            }
            self.counterexample = Some(v);
        }
    }

    fn expect_poly(&mut self, lhs: &Polynomial, rhs: &Polynomial, detail: impl FnOnce() -> Value) {
        self.expect(lhs == rhs, || {
            let mut v = detail();
            if let Value::Object(map) = &mut v {
                map.insert("lhs".into(), json!(lhs));
                map.insert("rhs".into(), json!(rhs));
            }
            v
        });
    }

    fn matching_bases(&self, d: &DyckPath) -> Vec<Matching> {
        match self.cfg.bases {
            Bases::All => matching::enumerate_matchings(d).collect(),
            Bases::Canonical => vec![Matching::nonnesting(d)],
        }
    }

    fn red_bases(&self, d: &DyckPath) -> Vec<BicoloredMatching> {
        self.matching_bases(d).into_iter().map(BicoloredMatching::all_red).collect()
    }

    fn perm_bases(&self, r: &RestrictionSequence) -> Vec<Permutation> {
        match self.cfg.bases {
            Bases::All => enumerate_sr(r),
            Bases::Canonical => vec![Permutation::identity(r.len())],
        }
    }

    fn signed_bases(&self, r: &RestrictionSequence) -> Vec<SignedPermutation> {
        self.perm_bases(r).iter().map(SignedPermutation::from).collect()
    }

    /// `sor(M, M_0)`, honoring [`Fault::SorWrapCase`].
    fn msor(&self, m: &Matching, m0: &Matching) -> usize {
        let trace = matching::sort_matching(m, m0).expect("same type");
        if self.cfg.fault != Some(Fault::SorWrapCase) {
            return trace.sor();
        }
        (1..=m.n())
            .map(|k| {
                let mk = trace.state(k);
                let o = m0.opener(k);
                let (cur, target) = (mk.mate(o), m0.mate(o));
                if cur > target {
                    m0.closers().iter().filter(|&&c| c > o && m0.mate(c) < o && target <= c && c <= cur).count()
                } else {
                    trace.steps[k - 1]
                }
            })
            .sum()
    }

    /// `sor_B`, honoring [`Fault::SorBSignCost`].
    fn sor_b(&self, s: &SignedPermutation) -> usize {
        if self.cfg.fault == Some(Fault::SorBSignCost) {
            s.sor_b_factorization().iter().map(|&(i, j)| (j as i32 - i) as usize).sum()
        } else {
            s.sor_b()
        }
    }
}

fn q(e: usize) -> Monomial {
    Monomial::one().times(Var::Q, e as u32)
}

fn qt(a: usize, b: usize) -> Monomial {
    q(a).times(Var::T, b as u32)
}

fn ts(m: Monomial, t: impl IntoIterator<Item = usize>) -> Monomial {
    m.times_each(t, Var::t)
}

fn tss(m: Monomial, t: impl IntoIterator<Item = usize>, s: impl IntoIterator<Item = usize>) -> Monomial {
    m.times_each(t, Var::t).times_each(s, Var::s)
}

fn dist_cmd(family: &str, r: &RestrictionSequence, stats: &str, base: Option<String>) -> String {
    let mut cmd = format!("sortstat dist {family} --r {r} --stats {stats}");
    if let Some(b) = base {
        cmd.push_str(&format!(" --base {b}"));
    }
    cmd
}

fn path_detail(d: &DyckPath) -> Value {
    json!({ "path": d.to_string(), "r": d.restriction().as_slice() })
}

/// `Rlminl` of a word: letters strictly smaller than every later letter.
fn rlminl_word(word: &[usize]) -> IndexSet<Letters> {
    (0..word.len()).filter(|&i| word[i + 1..].iter().all(|&x| word[i] < x)).map(|i| word[i]).collect()
}

fn rise_sets(w: &WeightVector, pred: impl Fn(usize, usize) -> bool) -> IndexSet<OpenerRanks> {
    (1..=w.len()).filter(|&k| pred(k, w.get(k))).collect()
}

// ---- Dyck paths ----

fn dyck_heights(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        cx.tick(1);
        let mut a = d.height_sequence();
        let mut b = d.fall_heights();
        a.sort_unstable();
        b.sort_unstable();
        cx.expect(a == b, || json!({ "path": d.to_string(), "rises": d.height_sequence(), "falls": d.fall_heights() }));
    }
}

fn dyck_restriction(cx: &mut Ctx, n: usize) {
    let all = RestrictionSequence::enumerate(n);
    cx.expect(all.len() as u64 == catalan(n), || json!({ "count": all.len(), "catalan": catalan(n) }));
    for r in all {
        cx.tick(1);
        let d = DyckPath::from_restriction(&r);
        let want: Vec<usize> = (1..=n).map(|k| r.get(k) - k + 1).collect();
        cx.expect(d.restriction() == r && d.fall_heights() == want, || {
            json!({ "r": r.as_slice(), "path": d.to_string(), "falls": d.fall_heights() })
        });
    }
}

fn dyck_catalan(cx: &mut Ctx, n: usize) {
    let paths: Vec<DyckPath> = enumerate_dyck(n).collect();
    cx.tick(paths.len());
    let distinct: BTreeSet<&DyckPath> = paths.iter().collect();
    let valid = paths.iter().all(|d| DyckPath::new(d.steps().to_vec()).is_ok() && d.semilength() == n);
    cx.expect(paths.len() as u64 == catalan(n) && distinct.len() == paths.len() && valid, || {
        json!({ "count": paths.len(), "distinct": distinct.len(), "catalan": catalan(n) })
    });
}

fn dyck_weights(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let h = d.height_sequence();
        let ws: Vec<WeightVector> = enumerate_weights(&d).collect();
        cx.tick(ws.len());
        let distinct: BTreeSet<&WeightVector> = ws.iter().collect();
        let valid = ws.iter().all(|w| WeightVector::new(w.as_slice().to_vec(), &h).is_ok());
        let want: usize = h.iter().product();
        cx.expect(ws.len() == want && distinct.len() == want && valid, || {
            json!({ "path": d.to_string(), "count": ws.len(), "product": want })
        });
    }
}

// ---- matchings ----

fn varphi1_bijection(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let mut seen = BTreeSet::new();
        for w in enumerate_weights(&d) {
            cx.tick(1);
            let m = matching::varphi1(&d, &w).expect("compatible weights");
            let back = matching::varphi1_inv(&m);
            cx.expect(m.type_of() == d && back == (d.clone(), w.clone()), || {
                json!({ "path": d.to_string(), "w": w.as_slice(), "matching": m, "replay": format!("sortstat map varphi1 {d} {w}") })
            });
            seen.insert(m);
        }
        let size = matching::enumerate_matchings(&d).count();
        cx.expect(seen.len() == size, || json!({ "path": d.to_string(), "images": seen.len(), "matchings": size }));
    }
}

fn phi1_bijection(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let size = matching::enumerate_matchings(&d).count();
        for m0 in cx.matching_bases(&d) {
            let mut seen = BTreeSet::new();
            for w in enumerate_weights(&d) {
                cx.tick(1);
                let m = matching::phi1(&m0, &w).expect("compatible weights");
                let back = matching::phi1_inv(&m0, &m).expect("same type");
                cx.expect(back == w, || {
                    json!({ "base": m0, "w": w.as_slice(), "matching": m, "replay": format!("sortstat map phi1 --base {m0} {w}") })
                });
                seen.insert(m);
            }
            cx.expect(seen.len() == size, || json!({ "base": m0, "images": seen.len(), "matchings": size }));
        }
    }
}

fn thm1(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<Matching> = matching::enumerate_matchings(&d).collect();
        cx.tick(ms.len());
        let lhs = distribution(&ms, |m| {
            let rel = m.arc_relations();
            Monomial::one()
                .times(Var::P, rel.cr as u32)
                .times(Var::Q, rel.ne as u32)
                .times_each(m.left_set().iter(), Var::s)
                .times_each(m.long_set().iter(), Var::t)
        });
        let rhs = formulas::thm1(&d.height_sequence());
        cx.expect_poly(&lhs, &rhs, || {
            let mut v = path_detail(&d);
            v["replay"] = json!(dist_cmd("matching", &d.restriction(), "cr,ne,Left,Long", None));
            v
        });
    }
}

fn prop1(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        for w in enumerate_weights(&d) {
            cx.tick(1);
            let m = matching::varphi1(&d, &w).expect("compatible weights");
            let want = rlminl_word(&w.shifted_word());
            cx.expect(m.short_set().relabel() == want, || {
                json!({ "path": d.to_string(), "w": w.as_slice(), "matching": m, "short": m.short_set(), "rlminl": want })
            });
        }
    }
}

fn phi1_properties(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let nonnesting = Matching::nonnesting(&d);
        for m0 in cx.matching_bases(&d) {
            for w in enumerate_weights(&d) {
                cx.tick(1);
                let m = matching::phi1(&m0, &w).expect("compatible weights");
                let sor = cx.msor(&m, &m0);
                let want_sor: usize = w.as_slice().iter().map(|x| x - 1).sum();
                let cyc = matching::cyc_set(&m, &m0).expect("same type");
                let want_cyc = rise_sets(&w, |_, wk| wk == 1);
                let short_ok = m0 != nonnesting || m.short_set().relabel() == rlminl_word(&w.shifted_word());
                cx.expect(sor == want_sor && cyc == want_cyc && short_ok, || {
                    json!({
                        "base": m0, "w": w.as_slice(), "matching": m,
                        "sor": sor, "expected_sor": want_sor, "cyc": cyc, "expected_cyc": want_cyc,
                        "replay": format!("sortstat stat matching {m} sor --base {m0}"),
                    })
                });
            }
        }
    }
}

fn eqhm(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<Matching> = matching::enumerate_matchings(&d).collect();
        let rhs = formulas::eqhm(&d.height_sequence());
        for m0 in cx.matching_bases(&d) {
            cx.tick(ms.len());
            let lhs = distribution(&ms, |m| ts(q(cx.msor(m, &m0)), matching::cyc_set(m, &m0).expect("same type").iter()));
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "path": d.to_string(), "base": m0, "replay": dist_cmd("matching", &d.restriction(), "sor,Cyc", Some(m0.to_string())) })
            });
        }
    }
}

fn multiset_sor_ne(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let m0 = Matching::nonnesting(&d);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for m in matching::enumerate_matchings(&d) {
            cx.tick(1);
            let short = m.short_set();
            left.push((cx.msor(&m, &m0), matching::cyc_set(&m, &m0).expect("same type"), short));
            right.push((m.ne(), m.long_set(), short));
        }
        left.sort();
        right.sort();
        cx.expect(left == right, || json!({ "path": d.to_string(), "sor_cyc_short": left, "ne_long_short": right }));
    }
}

fn sort_intermediate_types(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        for m0 in cx.matching_bases(&d) {
            for m in matching::enumerate_matchings(&d) {
                cx.tick(1);
                let t = matching::sort_matching(&m, &m0).expect("same type");
                let ok = t.states.iter().all(|s| s.type_of() == d) && (n == 0 || (t.states[n - 1] == m && t.states[0] == m0));
                cx.expect(ok, || json!({ "base": m0, "matching": m, "states": t.states }));
            }
        }
    }
}

// ---- bicolored matchings ----

fn refined_monomial(m: &BicoloredMatching, with_p: bool) -> Monomial {
    let r = m.refined_counts();
    let mut mono = Monomial::one()
        .times(Var::qn(1), r.ne_red as u32)
        .times(Var::qn(2), r.ne_blue as u32)
        .times(Var::qn(3), r.cr_red as u32)
        .times(Var::qn(4), r.cr_blue as u32)
        .times(Var::qn(5), r.al_red as u32)
        .times(Var::qn(6), r.al_blue as u32);
    if with_p {
        mono.mul_var(Var::P, r.blue as u32);
    }
    mono
}

fn thmsigned(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored(&d).collect();
        cx.tick(ms.len());
        let lhs = distribution(&ms, |m| ts(refined_monomial(m, true), m.longr_set().iter()));
        cx.expect_poly(&lhs, &formulas::thm_signed(&d.height_sequence()), || path_detail(&d));
    }
}

fn corb(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored(&d).collect();
        cx.tick(ms.len());
        let lhs = distribution(&ms, |m| ts(q(m.mix()), m.longr_set().iter()));
        cx.expect_poly(&lhs, &formulas::corb(&d.height_sequence()), || {
            let mut v = path_detail(&d);
            v["replay"] = json!(dist_cmd("bimatching", &d.restriction(), "mix,Longr", None));
            v
        });
    }
}

fn varphi2_bijection(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let mut seen = BTreeSet::new();
        for w in enumerate_weights(&d) {
            for eps in ColorVector::enumerate(n) {
                cx.tick(1);
                let m = bicolored::varphi2(&d, &w, &eps).expect("compatible input");
                let back = bicolored::varphi2_inv(&m);
                cx.expect(m.type_of() == d && back == (d.clone(), w.clone(), eps.clone()), || {
                    json!({ "path": d.to_string(), "w": w.as_slice(), "eps": eps, "matching": m })
                });
                seen.insert(m);
            }
        }
        let size = bicolored::enumerate_bicolored(&d).count();
        cx.expect(seen.len() == size, || json!({ "path": d.to_string(), "images": seen.len(), "matchings": size }));
    }
}

fn phi2_properties(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let h = d.height_sequence();
        let size = bicolored::enumerate_bicolored(&d).count();
        for m0 in cx.red_bases(&d) {
            let mut seen = BTreeSet::new();
            for w in enumerate_weights(&d) {
                for eps in ColorVector::enumerate(n) {
                    cx.tick(1);
                    let m = bicolored::phi2(&m0, &w, &eps).expect("compatible input");
                    let sor = bicolored::sor_bicolored(&m, &m0).expect("same type");
                    let want: usize =
                        (1..=n).map(|k| w.get(k) + eps.get(k).bit() as usize * (2 * k - h[k - 1]) - 1).sum();
                    let (c0, c1) = bicolored::cyc01_sets(&m, &m0).expect("same type");
                    let w0 = (1..=n).filter(|&k| w.get(k) == 1 && !eps.get(k).is_blue()).collect();
                    let w1 = (1..=n).filter(|&k| w.get(k) == h[k - 1] && eps.get(k).is_blue()).collect();
                    let back = bicolored::phi2_inv(&m0, &m).expect("same type");
                    cx.expect(sor == want && c0 == w0 && c1 == w1 && back == (w.clone(), eps.clone()), || {
                        json!({
                            "base": m0, "w": w.as_slice(), "eps": eps, "matching": m, "sor": sor, "expected_sor": want,
                            "cyc0": c0, "cyc1": c1, "replay": format!("sortstat map phi2 --base {m0} {w} {eps}"),
                        })
                    });
                    seen.insert(m);
                }
            }
            cx.expect(seen.len() == size, || json!({ "base": m0, "images": seen.len(), "matchings": size }));
        }
    }
}

fn bicolored_oddeven(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored(&d).collect();
        let rhs = formulas::oddeven(&d.height_sequence());
        for m0 in cx.red_bases(&d) {
            cx.tick(ms.len());
            let lhs = distribution(&ms, |m| {
                let (c0, c1) = bicolored::cyc01_sets(m, &m0).expect("same type");
                tss(q(bicolored::sor_bicolored(m, &m0).expect("same type")), c0.iter(), c1.iter())
            });
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "path": d.to_string(), "base": m0, "replay": dist_cmd("bimatching", &d.restriction(), "sor,Cyc0,Cyc1", Some(m0.to_string())) })
            });
        }
    }
}

fn bicolored_sor_mix(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored(&d).collect();
        let rhs = distribution(&ms, |m| ts(q(m.mix()), m.longr_set().iter()));
        for m0 in cx.red_bases(&d) {
            cx.tick(ms.len());
            let lhs = distribution(&ms, |m| {
                let (c0, _) = bicolored::cyc01_sets(m, &m0).expect("same type");
                ts(q(bicolored::sor_bicolored(m, &m0).expect("same type")), c0.iter())
            });
            cx.expect_poly(&lhs, &rhs, || json!({ "path": d.to_string(), "base": m0 }));
        }
    }
}

fn bicolored_allred(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        for m0 in cx.matching_bases(&d) {
            let red0 = BicoloredMatching::all_red(m0.clone());
            for m in matching::enumerate_matchings(&d) {
                cx.tick(1);
                let got = bicolored::sor_bicolored(&BicoloredMatching::all_red(m.clone()), &red0).expect("same type");
                let want = cx.msor(&m, &m0);
                cx.expect(got == want, || json!({ "base": m0, "matching": m, "bicolored_sor": got, "sor": want }));
            }
        }
    }
}

fn thmsigned_even(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored_even(&d).collect();
        cx.tick(ms.len());
        let lhs = distribution(&ms, |m| ts(refined_monomial(m, false), m.longr_prime_set().iter()));
        cx.expect_poly(&lhs, &formulas::thm_signed_even(&d.height_sequence()), || path_detail(&d));
    }
}

fn dmix(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored_even(&d).collect();
        cx.tick(ms.len());
        let lhs = distribution(&ms, |m| ts(q(m.mix_prime()), m.longr_prime_set().iter()));
        cx.expect_poly(&lhs, &formulas::dmix(&d.height_sequence()), || {
            let mut v = path_detail(&d);
            v["replay"] = json!(dist_cmd("bimatching-even", &d.restriction(), "mix',Longr'", None));
            v
        });
    }
}

fn sorprime_lemma(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let h = d.height_sequence();
        let even = bicolored::enumerate_bicolored_even(&d).count();
        for m0 in cx.red_bases(&d) {
            let mut images = 0;
            for w in enumerate_weights(&d) {
                for eps in ColorVector::enumerate(n) {
                    let m = bicolored::phi2(&m0, &w, &eps).expect("compatible input");
                    if m.blue_count() % 2 == 1 {
                        continue;
                    }
                    cx.tick(1);
                    images += 1;
                    let got = bicolored::sor_prime(&m, &m0).expect("same type");
                    let want: usize =
                        (2..=n).map(|k| w.get(k) + eps.get(k).bit() as usize * (2 * k - 1 - h[k - 1]) - 1).sum();
                    cx.expect(got == want, || {
                        json!({ "base": m0, "w": w.as_slice(), "eps": eps, "matching": m, "sor_prime": got, "expected": want })
                    });
                }
            }
            cx.expect(images == even, || json!({ "base": m0, "even_images": images, "even_matchings": even }));
        }
    }
}

fn dcyc(cx: &mut Ctx, n: usize) {
    for d in enumerate_dyck(n) {
        let ms: Vec<BicoloredMatching> = bicolored::enumerate_bicolored_even(&d).collect();
        let rhs = formulas::dcyc(&d.height_sequence());
        for m0 in cx.red_bases(&d) {
            cx.tick(ms.len());
            let lhs = distribution(&ms, |m| {
                let (c0, c1) = bicolored::cyc01_prime_sets(m, &m0).expect("same type");
                tss(q(bicolored::sor_prime(m, &m0).expect("same type")), c0.iter(), c1.iter())
            });
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "path": d.to_string(), "base": m0, "replay": dist_cmd("bimatching-even", &d.restriction(), "sor',Cyc0',Cyc1'", Some(m0.to_string())) })
            });
        }
    }
}

// ---- type A ----

fn transport_a(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        let size = matching::enumerate_matchings(&DyckPath::from_restriction(&r)).count();
        cx.expect(class.len() == size, || json!({ "r": r.as_slice(), "class": class.len(), "matchings": size }));
        for s in class {
            cx.tick(1);
            let m = perm::f_r(&s, &r).expect("member of S_r");
            let ok = perm::f_r_inv(&m, &r).as_ref() == Ok(&s)
                && m.ne() == s.inv()
                && m.long_set().relabel::<Letters>() == s.rlminl_set()
                && m.short_set().relabel() == s.lrmaxp_set();
            cx.expect(ok, || json!({ "r": r.as_slice(), "sigma": s, "matching": m, "replay": format!("sortstat map f_r --r {r} {s}") }));
        }
    }
}

fn rlmin_r(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        cx.tick(class.len());
        let h = DyckPath::from_restriction(&r).height_sequence();
        let lhs = distribution(&class, |s| ts(q(s.inv()), s.rlminl_set().iter()));
        cx.expect_poly(&lhs, &formulas::eqhm(&h), || {
            json!({ "r": r.as_slice(), "replay": dist_cmd("perm", &r, "inv,Rlminl", None) })
        });
        let lhs = distribution(&class, |s| qt(s.inv(), s.rlminl_set().len()));
        cx.expect_poly(&lhs, &formulas::rlmin_r(&r), || {
            json!({ "r": r.as_slice(), "replay": dist_cmd("perm", &r, "inv,rlmin", None) })
        });
    }
}

fn sorr_lemma(cx: &mut Ctx, n: usize) {
    let id = Permutation::identity(n);
    for r in RestrictionSequence::enumerate(n) {
        for s in enumerate_sr(&r) {
            cx.tick(1);
            let got = perm::sor_r(&s, &id, &r).expect("members of S_r");
            cx.expect(got == s.sor(), || json!({ "r": r.as_slice(), "sigma": s, "sor_r": got, "sor": s.sor() }));
        }
    }
}

fn sorr_transport(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        for s0 in cx.perm_bases(&r) {
            let m0 = perm::f_r(&s0, &r).expect("member of S_r");
            let inv0 = s0.inverse();
            for s in &class {
                cx.tick(1);
                let m = perm::f_r(s, &r).expect("member of S_r");
                let got = perm::sor_r(s, &s0, &r).expect("members of S_r");
                let want = cx.msor(&m, &m0);
                let cyc = s.compose(&inv0).expect("same length").cyc_min_set();
                let mcyc = matching::cyc_set(&m, &m0).expect("same type");
                cx.expect(got == want && cyc.relabel() == mcyc, || {
                    json!({
                        "r": r.as_slice(), "sigma": s, "base": s0, "sor_r": got, "matching_sor": want,
                        "replay": format!("sortstat stat perm {s} sorr --base {s0} --r {r}"),
                    })
                });
            }
        }
    }
}

fn permcor(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        let rhs = formulas::eqhm(&DyckPath::from_restriction(&r).height_sequence());
        for s0 in cx.perm_bases(&r) {
            cx.tick(class.len());
            let inv0 = s0.inverse();
            let lhs = distribution(&class, |s| {
                let cyc = s.compose(&inv0).expect("same length").cyc_min_set();
                ts(q(perm::sor_r(s, &s0, &r).expect("members of S_r")), cyc.iter())
            });
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("perm", &r, "sorr,CycRel", Some(s0.to_string())) })
            });
        }
        let plain = distribution(&class, |s| ts(q(s.sor()), s.cyc_min_set().iter()));
        cx.expect_poly(&plain, &rhs, || json!({ "r": r.as_slice(), "replay": dist_cmd("perm", &r, "sor,Cyc", None) }));
        let a = distribution(&class, |s| qt(s.sor(), s.cyc()));
        let b = distribution(&class, |s| qt(s.inv(), s.rlminl_set().len()));
        cx.expect_poly(&a, &b, || json!({ "r": r.as_slice(), "pair": "(sor, cyc) vs (inv, rlmin)" }));
    }
}

fn triples(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        cx.tick(class.len());
        let mut a: Vec<_> = class.iter().map(|s| (s.inv(), s.rlminl_set(), s.lrmaxp_set())).collect();
        let mut b: Vec<_> = class.iter().map(|s| (s.sor(), s.cyc_min_set(), s.lrmaxp_set())).collect();
        a.sort();
        b.sort();
        cx.expect(a == b, || json!({ "r": r.as_slice(), "inv_rlminl_lrmaxp": a, "sor_cyc_lrmaxp": b }));
    }
}

/// `σ_0 = 143265` and `σ = 231546` lie in `S_{(4,4,4,6,6,6)}` but `σσ_0^{-1}` does not.
pub fn non_closure_witness() -> (Permutation, Permutation, Permutation, bool) {
    let r = RestrictionSequence::new(vec![4, 4, 4, 6, 6, 6]).expect("valid restriction");
    let s0: Permutation = "143265".parse().expect("permutation");
    let s: Permutation = "231546".parse().expect("permutation");
    let prod = s.compose(&s0.inverse()).expect("same length");
    let holds = s0.is_in_class(&r) && s.is_in_class(&r) && !prod.is_in_class(&r);
    (s0, s, prod, holds)
}

fn lasthm(cx: &mut Ctx, n: usize) {
    if n == 0 {
        let (s0, s, prod, holds) = non_closure_witness();
        cx.expect(holds && prod.to_string() == "251364", || {
            json!({ "base": s0, "sigma": s, "product": prod, "r": [4, 4, 4, 6, 6, 6] })
        });
    }
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_sr(&r);
        let rhs = formulas::lasthm(&r);
        for s0 in cx.perm_bases(&r) {
            cx.tick(class.len());
            let inv0 = s0.inverse();
            let lhs = distribution(&class, |s| Monomial::one().times(Var::T, s.compose(&inv0).expect("same length").cyc() as u32));
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("perm", &r, "t=cycRel", Some(s0.to_string())) })
            });
        }
    }
}

fn rook(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        cx.tick(1);
        let (a, b) = (formulas::lasthm(&r), formulas::rook(&r));
        cx.expect_poly(&a, &b, || json!({ "r": r.as_slice(), "rook_counts": formulas::rook_counts(&r) }));
    }
}

fn sn(cx: &mut Ctx, n: usize) {
    let all = enumerate_sn(n);
    cx.tick(all.len());
    let lhs = distribution(&all, |s| qt(s.sor(), s.cyc()));
    let r = RestrictionSequence::full(n);
    cx.expect_poly(&lhs, &formulas::sn(n), || json!({ "replay": dist_cmd("perm", &r, "sor,cyc", None) }));
}

fn bw(cx: &mut Ctx, n: usize) {
    let all = enumerate_sn(n);
    cx.tick(all.len());
    let rhs = formulas::bw(n);
    let r = RestrictionSequence::full(n);
    let inv = distribution(&all, |s| ts(q(s.inv()), s.rlminl_set().iter()));
    cx.expect_poly(&inv, &rhs, || json!({ "replay": dist_cmd("perm", &r, "inv,Rlminl", None) }));
    let maj = distribution(&all, |s| ts(q(s.maj()), s.rlminl_set().iter()));
    cx.expect_poly(&maj, &rhs, || json!({ "replay": dist_cmd("perm", &r, "maj,Rlminl", None) }));
}

fn sor_factorization(cx: &mut Ctx, n: usize) {
    for s in enumerate_sn(n) {
        cx.tick(1);
        let f = s.sor_factorization();
        let prod = f.iter().fold(Permutation::identity(n), |acc, &(i, j)| {
            acc.compose(&Permutation::transposition(n, i, j)).expect("same length")
        });
        let shape = f.iter().all(|&(i, j)| i < j) && f.windows(2).all(|w| w[0].1 < w[1].1);
        let total: usize = f.iter().map(|&(i, j)| j - i).sum();
        cx.expect(prod == s && shape && total == s.sor(), || {
            json!({ "sigma": s, "factorization": f, "replay": format!("sortstat stat perm {s} factorization") })
        });
    }
}

fn sorb_factorization(cx: &mut Ctx, n: usize) {
    let recompose = |f: &[signed::SignedTransposition]| {
        f.iter().fold(SignedPermutation::identity(n), |acc, &t| {
            acc.compose(&SignedPermutation::transposition(n, t)).expect("same length")
        })
    };
    for s in enumerate_bn(n) {
        cx.tick(1);
        let f = s.sor_b_factorization();
        let shape = f.iter().all(|&(i, j)| i < j as i32 && i != 0) && f.windows(2).all(|w| w[0].1 < w[1].1);
        let total: usize = f.iter().map(|&(i, j)| (j as i32 - i - i32::from(i < 0)) as usize).sum();
        cx.expect(recompose(&f) == s && shape && total == cx.sor_b(&s), || {
            json!({ "sigma": s, "factorization": f, "replay": format!("sortstat stat sperm {s} factorizationB") })
        });
        if s.is_type_d() {
            let f = s.sor_d_factorization().expect("type D");
            let shape = f.iter().all(|&(i, j)| j > 1 && i.unsigned_abs() as usize != j) && f.windows(2).all(|w| w[0].1 <= w[1].1);
            let total: usize = f.iter().map(|&(i, j)| (j as i32 - i - 2 * i32::from(i < 0)) as usize).sum();
            cx.expect(recompose(&f) == s && shape && Ok(total) == s.sor_d(), || {
                json!({ "sigma": s, "factorization": f, "replay": format!("sortstat stat sperm {s} factorizationD") })
            });
        }
    }
}

// ---- type B ----

fn transport_b(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        let size = bicolored::enumerate_bicolored(&DyckPath::from_restriction(&r)).count();
        cx.expect(class.len() == size, || json!({ "r": r.as_slice(), "class": class.len(), "matchings": size }));
        for s in class {
            cx.tick(1);
            let m = signed::g_r(&s, &r).expect("member of B_r");
            let ok = signed::g_r_inv(&m, &r).as_ref() == Ok(&s)
                && m.mix() == s.inv_b()
                && m.blue_count() == s.neg_count()
                && m.longr_set().relabel::<Letters>() == s.prlminl_set()
                && s.nmin_b() == n - s.prlminl_set().len();
            cx.expect(ok, || json!({ "r": r.as_slice(), "sigma": s, "matching": m, "replay": format!("sortstat map g_r --r {r} {s}") }));
        }
    }
}

fn sorrb_lemma(cx: &mut Ctx, n: usize) {
    let id = SignedPermutation::identity(n);
    for r in RestrictionSequence::enumerate(n) {
        for s in enumerate_br(&r) {
            cx.tick(1);
            let got = signed::sor_r_b(&s, &id, &r).expect("members of B_r");
            let want = cx.sor_b(&s);
            cx.expect(got == want, || {
                json!({ "r": r.as_slice(), "sigma": s, "sor_r": got, "sor_b": want, "replay": format!("sortstat stat sperm {s} sorB") })
            });
        }
    }
}

fn sorrb_transport(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        for s0 in cx.signed_bases(&r) {
            let m0 = signed::g_r(&s0, &r).expect("member of B_r");
            let inv0 = s0.inverse();
            for s in &class {
                cx.tick(1);
                let m = signed::g_r(s, &r).expect("member of B_r");
                let got = signed::sor_r_b(s, &s0, &r).expect("members of B_r");
                let want = bicolored::sor_bicolored(&m, &m0).expect("same type");
                let rel = s.compose(&inv0).expect("same length");
                let (c0, c1) = bicolored::cyc01_sets(&m, &m0).expect("same type");
                cx.expect(got == want && rel.cyc0_set() == c0.relabel() && rel.cyc1_set() == c1.relabel(), || {
                    json!({
                        "r": r.as_slice(), "sigma": s, "base": s0, "sor_r": got, "matching_sor": want,
                        "replay": format!("sortstat stat sperm {s} sorrB --base {s0} --r {r}"),
                    })
                });
            }
        }
    }
}

/// Runs `f` for every base with the class and the relative permutations `σσ_0^{-1}`.
fn for_signed_bases(
    cx: &mut Ctx,
    r: &RestrictionSequence,
    class: &[SignedPermutation],
    mut f: impl FnMut(&mut Ctx, &SignedPermutation, &[(SignedPermutation, signed::SignedSortTrace)]),
) {
    for s0 in cx.signed_bases(r) {
        cx.tick(class.len());
        let inv0 = s0.inverse();
        let rows: Vec<_> = class
            .iter()
            .map(|s| {
                let rel = s.compose(&inv0).expect("same length");
                (rel, signed::sort_restricted_b(s, &s0, r).expect("members of B_r"))
            })
            .collect();
        f(cx, &s0, &rows);
    }
}

fn oddeven(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        let rhs = formulas::oddeven(&DyckPath::from_restriction(&r).height_sequence());
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| tss(q(t.sor()), rel.cyc0_set().iter(), rel.cyc1_set().iter()));
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("sperm", &r, "sorrB,Cyc0Rel,Cyc1Rel", Some(s0.to_string())) })
            });
        });
    }
}

fn nmin_sor(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        let rhs = formulas::nmin(&DyckPath::from_restriction(&r).height_sequence());
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| qt(t.sor(), rel.refl_length_b()));
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("sperm", &r, "sorrB,lBRel", Some(s0.to_string())) })
            });
        });
    }
}

fn prlmin_b(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        let rhs = formulas::corb(&DyckPath::from_restriction(&r).height_sequence());
        let inv = distribution(&class, |s| ts(q(s.inv_b()), s.prlminl_set().iter()));
        cx.expect_poly(&inv, &rhs, || json!({ "r": r.as_slice(), "replay": dist_cmd("sperm", &r, "invB,Prlminl", None) }));
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| ts(q(t.sor()), rel.cyc0_set().iter()));
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("sperm", &r, "sorrB,Cyc0Rel", Some(s0.to_string())) })
            });
        });
    }
}

fn invb_nmin(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_br(&r);
        let rhs = distribution(&class, |s| qt(s.inv_b(), s.nmin_b()));
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| qt(t.sor(), rel.refl_length_b()));
            cx.expect_poly(&lhs, &rhs, || json!({ "r": r.as_slice(), "base": s0 }));
        });
    }
}

fn petb(cx: &mut Ctx, n: usize) {
    let all = enumerate_bn(n);
    cx.tick(all.len());
    let rhs = formulas::petb(n);
    let r = RestrictionSequence::full(n);
    let sor = distribution(&all, |s| qt(cx.sor_b(s), s.refl_length_b()));
    cx.expect_poly(&sor, &rhs, || json!({ "replay": dist_cmd("sperm", &r, "sorB,lB", None) }));
    let inv = distribution(&all, |s| qt(s.inv_b(), s.nmin_b()));
    cx.expect_poly(&inv, &rhs, || json!({ "replay": dist_cmd("sperm", &r, "invB,nminB", None) }));
}

fn refl_length(cx: &mut Ctx, n: usize) {
    let mut reflections = Vec::new();
    for j in 1..=n {
        for i in 1..j {
            reflections.push(SignedPermutation::transposition(n, (i as i32, j)));
            reflections.push(SignedPermutation::transposition(n, (-(i as i32), j)));
        }
        reflections.push(SignedPermutation::transposition(n, (-(j as i32), j)));
    }
    let mut dist: HashMap<SignedPermutation, usize> = HashMap::new();
    let mut queue = VecDeque::from([SignedPermutation::identity(n)]);
    dist.insert(SignedPermutation::identity(n), 0);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        for t in &reflections {
            let next = s.compose(t).expect("same length");
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    for s in enumerate_bn(n) {
        cx.tick(1);
        let want = dist.get(&s).copied();
        cx.expect(want == Some(s.refl_length_b()), || {
            json!({ "sigma": s, "n_minus_cyc0": s.refl_length_b(), "reflection_length": want })
        });
    }
}

// ---- type D ----

fn transport_d(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_dr(&r);
        let size = bicolored::enumerate_bicolored_even(&DyckPath::from_restriction(&r)).count();
        cx.expect(class.len() == size, || json!({ "r": r.as_slice(), "class": class.len(), "matchings": size }));
        for s in class {
            cx.tick(1);
            let m = signed::g_r(&s, &r).expect("member of D_n(r)");
            let inv_d = s.inv_d().expect("type D");
            let ok = m.mix_prime() == inv_d
                && inv_d == s.inv_b() - s.neg_count()
                && m.blue_count().is_multiple_of(2)
                && m.longr_prime_set().relabel::<Letters>() == s.prlminl_prime_set();
            cx.expect(ok, || json!({ "r": r.as_slice(), "sigma": s, "matching": m }));
        }
    }
}

fn petd(cx: &mut Ctx, n: usize) {
    let all = enumerate_dn(n);
    cx.tick(all.len());
    let rhs = formulas::petd(n);
    let r = RestrictionSequence::full(n);
    let sor = distribution(&all, |s| q(s.sor_d().expect("type D")));
    cx.expect_poly(&sor, &rhs, || json!({ "replay": dist_cmd("dperm", &r, "sorD", None) }));
    let inv = distribution(&all, |s| q(s.inv_d().expect("type D")));
    cx.expect_poly(&inv, &rhs, || json!({ "replay": dist_cmd("dperm", &r, "invD", None) }));
}

fn dr_inv(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_dr(&r);
        cx.tick(class.len());
        let lhs = distribution(&class, |s| ts(q(s.inv_d().expect("type D")), s.prlminl_prime_set().iter()));
        let rhs = formulas::dmix(&DyckPath::from_restriction(&r).height_sequence());
        cx.expect_poly(&lhs, &rhs, || json!({ "r": r.as_slice(), "replay": dist_cmd("dperm", &r, "invD,Prlminl'", None) }));
    }
}

/// `σ_0` ranges over positive members of `D_n(r)`. The sorting index is the
/// restricted `sor'` (the type-D analogue of `sor_r`); for the identity base
/// the literal `sor_D(σσ_0^{-1})` is checked as well.
fn dr_sor(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_dr(&r);
        let rhs = formulas::dcyc(&DyckPath::from_restriction(&r).height_sequence());
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| {
                let (c0, c1) = rel.cyc01_prime_sets();
                tss(q(t.sor_d()), c0.iter(), c1.iter())
            });
            cx.expect_poly(&lhs, &rhs, || {
                json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("dperm", &r, "sorrD,Cyc0'Rel,Cyc1'Rel", Some(s0.to_string())) })
            });
            if s0.is_positive() && s0.abs_perm().is_identity() {
                let literal = distribution(rows, |(rel, _)| {
                    let (c0, c1) = rel.cyc01_prime_sets();
                    tss(q(rel.sor_d().expect("type D")), c0.iter(), c1.iter())
                });
                cx.expect_poly(&literal, &rhs, || {
                    json!({ "r": r.as_slice(), "base": s0, "replay": dist_cmd("dperm", &r, "sorD,Cyc0',Cyc1'", None) })
                });
            }
        });
    }
}

/// First `(r, σ_0)` for which reading the type-D sorting index literally as
/// `sor_D(σσ_0^{-1})` breaks the cycle identity on `D_n(r)`, searching `n <= max_n`.
pub fn literal_type_d_failure(max_n: usize) -> Option<(RestrictionSequence, Permutation)> {
    for n in 1..=max_n {
        for r in RestrictionSequence::enumerate(n) {
            let class = enumerate_dr(&r);
            let rhs = formulas::dcyc(&DyckPath::from_restriction(&r).height_sequence());
            for s0 in enumerate_sr(&r) {
                let inv0 = SignedPermutation::from(&s0).inverse();
                let lhs = distribution(&class, |s| {
                    let rel = s.compose(&inv0).expect("same length");
                    let (c0, c1) = rel.cyc01_prime_sets();
                    tss(q(rel.sor_d().expect("type D")), c0.iter(), c1.iter())
                });
                if lhs != rhs {
                    return Some((r, s0));
                }
            }
        }
    }
    None
}

fn dr_equi(cx: &mut Ctx, n: usize) {
    for r in RestrictionSequence::enumerate(n) {
        let class = enumerate_dr(&r);
        let rhs = distribution(&class, |s| ts(q(s.inv_d().expect("type D")), s.prlminl_prime_set().iter()));
        for_signed_bases(cx, &r, &class, |cx, s0, rows| {
            let lhs = distribution(rows, |(rel, t)| ts(q(t.sor_d()), rel.cyc01_prime_sets().0.iter()));
            cx.expect_poly(&lhs, &rhs, || json!({ "r": r.as_slice(), "base": s0 }));
            if s0.abs_perm().is_identity() {
                let literal = distribution(rows, |(rel, _)| ts(q(rel.sor_d().expect("type D")), rel.cyc01_prime_sets().0.iter()));
                cx.expect_poly(&literal, &rhs, || json!({ "r": r.as_slice(), "base": s0, "literal": true }));
            }
        });
    }
}

fn dfull(cx: &mut Ctx, n: usize) {
    let all = enumerate_dn(n);
    cx.tick(all.len());
    let rhs = formulas::dfull(n);
    let r = RestrictionSequence::full(n);
    let inv = distribution(&all, |s| ts(q(s.inv_d().expect("type D")), s.prlminl_prime_set().iter()));
    cx.expect_poly(&inv, &rhs, || json!({ "replay": dist_cmd("dperm", &r, "invD,Prlminl'", None) }));
    let sor = distribution(&all, |s| ts(q(s.sor_d().expect("type D")), s.cyc01_prime_sets().0.iter()));
    cx.expect_poly(&sor, &rhs, || json!({ "replay": dist_cmd("dperm", &r, "sorD,Cyc0'", None) }));
}

// ---- polynomials ----

fn rhs_specialization(cx: &mut Ctx, n: usize) {
    let stair: Vec<usize> = (1..=n).collect();
    let to_t = |v: Var| matches!(v, Var::Ti(_)).then(|| Polynomial::var(Var::T));
    let pairs = [
        ("F-SN", formulas::sn(n), "F-EQHM(1..n) with t_i -> t", formulas::eqhm(&stair).substitute(to_t)),
        ("F-BW", formulas::bw(n), "F-EQHM(1..n)", formulas::eqhm(&stair)),
        ("F-PETB", formulas::petb(n), "F-NMIN(1..n)", formulas::nmin(&stair)),
        ("F-DFULL", formulas::dfull(n), "F-DMIX(1..n)", formulas::dmix(&stair)),
    ];
    for (a, pa, b, pb) in pairs {
        cx.tick(1);
        cx.expect_poly(&pa, &pb, || json!({ "left": a, "right": b }));
    }
    let mix = |v: Var| match v {
        Var::Qn(1) | Var::Qn(2) | Var::P => Some(Polynomial::var(Var::Q)),
        Var::Qn(4) | Var::Qn(6) => Some(Polynomial::var(Var::Q).pow(2)),
        Var::Qn(3) | Var::Qn(5) => Some(Polynomial::one()),
        _ => None,
    };
    for d in enumerate_dyck(n) {
        cx.tick(1);
        let h = d.height_sequence();
        cx.expect_poly(&formulas::thm_signed(&h).substitute(mix), &formulas::corb(&h), || {
            json!({ "path": d.to_string(), "left": "F-THMSIGNED specialized", "right": "F-CORB" })
        });
        cx.expect_poly(&formulas::thm_signed_even(&h).substitute(mix), &formulas::dmix(&h), || {
            json!({ "path": d.to_string(), "left": "F-THMSIGNED-EVEN specialized", "right": "F-DMIX" })
        });
        cx.expect_poly(&formulas::eqhm(&h).substitute(to_t), &formulas::rlmin_r(&d.restriction()), || {
            json!({ "path": d.to_string(), "left": "F-EQHM with t_i -> t", "right": "F-RLMIN-R" })
        });
    }
}
