//! Exact sparse multivariate polynomials with integer coefficients.
//!
//! The variable universe is fixed: `q`, `p`, `q1..q6`, `t`, `s`, and the
//! indexed families `t_i`, `s_i`. Terms are kept in a `BTreeMap`, so
//! iteration, display and JSON output are canonical.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    P,
    /// `q1..q6` of the bicolored refinement.
    Qn(u8),
    T,
    S,
    /// `t_i`
    Ti(u16),
    /// `s_i`
    Si(u16),
}

impl Var {
    pub fn t(i: usize) -> Var {
        Var::Ti(i as u16)
    }

    pub fn s(i: usize) -> Var {
        Var::Si(i as u16)
    }

    pub fn qn(i: usize) -> Var {
        assert!((1..=6).contains(&i));
        Var::Qn(i as u8)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Q => write!(f, "q"),
            Var::P => write!(f, "p"),
            Var::Qn(i) => write!(f, "q{i}"),
            Var::T => write!(f, "t"),
            Var::S => write!(f, "s"),
            Var::Ti(i) => write!(f, "t{i}"),
            Var::Si(i) => write!(f, "s{i}"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var, Error> {
        let bad = || Error::Parse(format!("unknown variable {s:?}"));
        let (head, tail) = s.split_at(s.len().min(1));
        let tail = tail.trim_start_matches('_');
        match (head, tail) {
            ("q", "") => Ok(Var::Q),
            ("p", "") => Ok(Var::P),
            ("t", "") => Ok(Var::T),
            ("s", "") => Ok(Var::S),
            ("q", i) => match i.parse::<u8>() {
                Ok(i @ 1..=6) => Ok(Var::Qn(i)),
                _ => Err(bad()),
            },
            ("t", i) => i.parse::<u16>().ok().filter(|&i| i >= 1).map(Var::Ti).ok_or_else(bad),
            ("s", i) => i.parse::<u16>().ok().filter(|&i| i >= 1).map(Var::Si).ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

/// A product of variable powers; exponents are always positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.binary_search_by(|(x, _)| x.cmp(&v)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    /// Multiplies in `v^e`.
    pub fn mul_var(&mut self, v: Var, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by(|(x, _)| x.cmp(&v)) {
            Ok(i) => self.0[i].1 += e,
            Err(i) => self.0.insert(i, (v, e)),
        }
    }

    /// Builder form of [`Monomial::mul_var`].
    pub fn times(mut self, v: Var, e: u32) -> Self {
        self.mul_var(v, e);
        self
    }

    /// Multiplies in `∏_{i ∈ set} family(i)`.
    pub fn times_each(mut self, set: impl IntoIterator<Item = usize>, family: fn(usize) -> Var) -> Self {
        for i in set {
            self.mul_var(family(i), 1);
        }
        self
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(v, e) in &other.0 {
            out.mul_var(v, e);
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Polynomial::monomial(Monomial::var(v), 1)
    }

    pub fn monomial(m: Monomial, c: i64) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Sum of all coefficients (the value at every variable = 1).
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Replaces each variable `v` for which `f(v)` is `Some` by that polynomial.
    pub fn substitute(&self, f: impl Fn(Var) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, &c) in &self.terms {
            let mut term = Polynomial::constant(c);
            for &(v, e) in m.factors() {
                let factor = f(v).unwrap_or_else(|| Polynomial::var(v));
                term = &term * &factor.pow(e);
            }
            out += &term;
        }
        out
    }

    /// `1 + q + ... + q^{m-1}`; `[0]_q = 0`.
    pub fn q_integer(m: usize) -> Polynomial {
        Polynomial::geometric(Var::Q, 0, m)
    }

    /// `v^lo + v^{lo+1} + ... + v^{lo+count-1}`
    pub fn geometric(v: Var, lo: u32, count: usize) -> Polynomial {
        let mut p = Polynomial::zero();
        for e in 0..count as u32 {
            p.add_term(Monomial::one().times(v, lo + e), 1);
        }
        p
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        factors.into_iter().fold(Polynomial::one(), |acc, f| &acc * f)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, &c) in &rhs.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        *self += &rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(a.mul(b), x.checked_mul(y).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, &c)) in self.terms.iter().enumerate() {
            let (sign, abs) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (abs, m.is_one()) {
                (1, false) => write!(f, "{m}")?,
                (_, true) => write!(f, "{abs}")?,
                _ => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    vars: BTreeMap<String, u32>,
    coef: i64,
}

impl Serialize for Polynomial {
    /// `[{"vars": {"q": 2, "t1": 1}, "coef": 3}, ...]` in canonical term order.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(m, &c)| {
            let vars = m.factors().iter().map(|(v, e)| (v.to_string(), *e)).collect();
            TermJson { vars, coef: c }
        }))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(deserializer)?;
        let mut p = Polynomial::zero();
        for t in raw {
            let mut m = Monomial::one();
            for (name, e) in t.vars {
                m.mul_var(name.parse().map_err(D::Error::custom)?, e);
            }
            p.add_term(m, t.coef);
        }
        Ok(p)
    }
}

/// Generating function `Σ_x monomial(x)` over a collection of objects.
pub fn distribution<I, F>(objects: I, mut monomial: F) -> Polynomial
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Monomial,
{
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
    for x in objects {
        *acc.entry(monomial(x)).or_insert(0) += 1;
    }
    let mut p = Polynomial::zero();
    for (m, c) in acc {
        p.add_term(m, c);
    }
    p
}

/// Named scalar and set statistics of one object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StatProfile {
    pub scalars: Vec<(String, u32)>,
    pub sets: Vec<(String, Vec<usize>)>,
}

impl StatProfile {
    pub fn new() -> Self {
        StatProfile { scalars: Vec::new(), sets: Vec::new() }
    }

    pub fn scalar(mut self, name: &str, value: u32) -> Self {
        self.scalars.push((name.to_string(), value));
        self
    }

    pub fn set(mut self, name: &str, members: impl IntoIterator<Item = usize>) -> Self {
        self.sets.push((name.to_string(), members.into_iter().collect()));
        self
    }

    /// Scalars become powers of `q`, `t`, `p`, `s` in that order; sets become
    /// `∏ t_i` then `∏ s_i`.
    pub fn monomial(&self) -> Monomial {
        const SCALAR_VARS: [Var; 4] = [Var::Q, Var::T, Var::P, Var::S];
        const SET_VARS: [fn(usize) -> Var; 2] = [Var::t, Var::s];
        assert!(self.scalars.len() <= SCALAR_VARS.len() && self.sets.len() <= SET_VARS.len());
        let mut m = Monomial::one();
        for ((_, e), v) in self.scalars.iter().zip(SCALAR_VARS) {
            m.mul_var(v, *e);
        }
        for ((_, members), family) in self.sets.iter().zip(SET_VARS) {
            m = m.times_each(members.iter().copied(), family);
        }
        m
    }
}

impl Default for StatProfile {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Polynomial {
        Polynomial::var(Var::Q)
    }
    fn t() -> Polynomial {
        Polynomial::var(Var::T)
    }

    #[test]
    fn ring_examples() {
        let one_q = &Polynomial::one() + &q();
        let sq = &one_q * &one_q;
        let expected = Polynomial::one() + (&Polynomial::constant(2) * &q()) + q().pow(2);
        assert_eq!(sq, expected);
        assert!((&sq * &Polynomial::zero()).is_zero());
        // (t+q)(t+q+q^2): six partial products, tq appears twice
        // = t^2 + 2tq + tq^2 + q^2 + q^3
        let a = &t() + &q();
        let b = &(&t() + &q()) + &q().pow(2);
        let prod = &a * &b;
        assert_eq!(prod.num_terms(), 5);
        assert_eq!(prod.coefficient(&Monomial::one().times(Var::Q, 1).times(Var::T, 1)), 2);
        assert_eq!(prod.coefficient_sum(), 6);
    }

    #[test]
    fn q_integers() {
        assert!(Polynomial::q_integer(0).is_zero());
        assert_eq!(Polynomial::q_integer(1), Polynomial::one());
        assert_eq!(Polynomial::q_integer(2), &Polynomial::one() + &q());
        let prod = &Polynomial::q_integer(3) * &Polynomial::q_integer(2);
        let expected: Polynomial = serde_json::from_str(
            r#"[{"vars":{},"coef":1},{"vars":{"q":1},"coef":2},{"vars":{"q":2},"coef":2},{"vars":{"q":3},"coef":1}]"#,
        )
        .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn json_shape() {
        let p = Polynomial::monomial(Monomial::one().times(Var::Q, 2).times(Var::t(1), 1), 3);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"[{"vars":{"q":2,"t1":1},"coef":3}]"#);
        assert_eq!(p.to_string(), "3*q^2*t1");
        assert_eq!(serde_json::to_string(&Polynomial::zero()).unwrap(), "[]");
    }

    #[test]
    fn variable_names() {
        for v in [Var::Q, Var::P, Var::qn(3), Var::T, Var::S, Var::t(12), Var::s(2)] {
            assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
        }
        assert_eq!("t_3".parse::<Var>().unwrap(), Var::t(3));
        assert!("q7".parse::<Var>().is_err());
        assert!("x".parse::<Var>().is_err());
        assert!("t0".parse::<Var>().is_err());
    }

    #[test]
    fn substitution() {
        // q1 -> q, q4 -> q^2
        let p = &Polynomial::var(Var::qn(1)) * &Polynomial::var(Var::qn(4));
        let s = p.substitute(|v| match v {
            Var::Qn(1) => Some(q()),
            Var::Qn(4) => Some(q().pow(2)),
            _ => None,
        });
        assert_eq!(s, q().pow(3));
    }

    #[test]
    fn profile_monomial() {
        let prof = StatProfile::new().scalar("inv", 2).set("Rlminl", [1, 3]);
        assert_eq!(prof.monomial(), Monomial::one().times(Var::Q, 2).times(Var::t(1), 1).times(Var::t(3), 1));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = prop_oneof![Just(Var::Q), Just(Var::T), Just(Var::t(1)), Just(Var::s(2))];
        let mono = prop::collection::vec((var, 1u32..3), 0..3)
            .prop_map(|fs| fs.into_iter().fold(Monomial::one(), |m, (v, e)| m.times(v, e)));
        prop::collection::vec((mono, -3i64..4), 0..5).prop_map(|ts| {
            let mut p = Polynomial::zero();
            for (m, c) in ts {
                p.add_term(m, c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(a.terms().all(|(_, c)| c != 0));
        }

        #[test]
        fn json_roundtrip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), a);
        }

        #[test]
        fn distribution_ignores_order(mut xs in prop::collection::vec(0u32..4, 0..12)) {
            let f = |x: &u32| Monomial::one().times(Var::Q, *x);
            let a = distribution(xs.iter(), f);
            xs.reverse();
            prop_assert_eq!(distribution(xs.iter(), f), a);
        }
    }
}
