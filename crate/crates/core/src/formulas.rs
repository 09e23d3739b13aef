//! Closed-form right-hand sides of the generating-function identities, and
//! rook numbers of Ferrers boards.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dyck::{DyckPath, RestrictionSequence};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Var};

/// Every product formula that a check compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Formula {
    /// `∏ (t_k p^{h_k-1} + p^{h_k-2} q + ... + s_k q^{h_k-1})`
    Thm1,
    /// `∏ (t_k + q + ... + q^{h_k-1})`
    EqHm,
    /// `∏_{k<=n} (t + q + ... + q^{k-1})`
    Sn,
    /// `∏_{k<=n} (t_k + q + ... + q^{k-1})`
    Bw,
    /// Eight-variable bicolored product.
    ThmSigned,
    /// The same product over even colorings, without `p` and the first factor.
    ThmSignedEven,
    /// `∏ (t_k + q[h_k-1]_q + q^{2k-h_k}[h_k]_q)`
    CorB,
    /// `∏ (t_k + (q + q^{2k-h_k})[h_k-1]_q + s_k q^{2k-1})`
    OddEven,
    /// `∏ (1 + q[h_k-1]_q t + q^{2k-h_k}[h_k]_q t)`
    Nmin,
    /// `∏_{i<=n} (1 + t[2i]_q - t)`
    PetB,
    /// `[n]_q ∏_{i<n} [2i]_q`
    PetD,
    /// `∏ (t + r_k - k)`
    LastHm,
    /// `Σ_k rooks_{n-k} (t-1)(t-2)...(t-k)`
    Rook,
    /// `∏_{i>=2} (t_i + q[h_i-1]_q + q^{2i-h_i-1}[h_i]_q)`
    DMix,
    /// `∏_{i>=2} (t_i + (q + q^{2i-h_i-1})[h_i-1]_q + q^{2i-2} s_i)`
    DCyc,
    /// `∏_{2<=i<=n} (t_i + q[i-1]_q + q^{i-1}[i]_q)`
    DFull,
    /// `∏ (t + q + ... + q^{r_k-k})`
    RlminR,
}

impl Formula {
    pub const ALL: [Formula; 17] = [
        Formula::Thm1,
        Formula::EqHm,
        Formula::Sn,
        Formula::Bw,
        Formula::ThmSigned,
        Formula::ThmSignedEven,
        Formula::CorB,
        Formula::OddEven,
        Formula::Nmin,
        Formula::PetB,
        Formula::PetD,
        Formula::LastHm,
        Formula::Rook,
        Formula::DMix,
        Formula::DCyc,
        Formula::DFull,
        Formula::RlminR,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Thm1 => "F-THM1",
            Formula::EqHm => "F-EQHM",
            Formula::Sn => "F-SN",
            Formula::Bw => "F-BW",
            Formula::ThmSigned => "F-THMSIGNED",
            Formula::ThmSignedEven => "F-THMSIGNED-EVEN",
            Formula::CorB => "F-CORB",
            Formula::OddEven => "F-ODDEVEN",
            Formula::Nmin => "F-NMIN",
            Formula::PetB => "F-PETB",
            Formula::PetD => "F-PETD",
            Formula::LastHm => "F-LASTHM",
            Formula::Rook => "F-ROOK",
            Formula::DMix => "F-DMIX",
            Formula::DCyc => "F-DCYC",
            Formula::DFull => "F-DFULL",
            Formula::RlminR => "F-RLMIN-R",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        let key = up.strip_prefix("F-").unwrap_or(&up);
        Formula::ALL
            .into_iter()
            .find(|f| &f.id()[2..] == key)
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

/// Inputs for [`build_rhs`]. Formulas indexed by a height sequence read `h`;
/// the ones stated for a restriction need `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhsParams {
    pub n: usize,
    pub heights: Vec<usize>,
    pub restriction: Option<RestrictionSequence>,
}

impl RhsParams {
    /// The full board: `r = (n, ..., n)`, `h = (1, ..., n)`.
    pub fn from_n(n: usize) -> Self {
        RhsParams::from_restriction(&RestrictionSequence::full(n))
    }

    pub fn from_path(d: &DyckPath) -> Self {
        RhsParams { n: d.semilength(), heights: d.height_sequence(), restriction: Some(d.restriction()) }
    }

    pub fn from_restriction(r: &RestrictionSequence) -> Self {
        RhsParams::from_path(&DyckPath::from_restriction(r))
    }
}

pub fn build_rhs(formula: Formula, params: &RhsParams) -> Result<Polynomial> {
    let h = &params.heights;
    let r = || params.restriction.as_ref().ok_or_else(|| Error::MissingParameter(formula.id().into(), "r"));
    Ok(match formula {
        Formula::Thm1 => thm1(h),
        Formula::EqHm => eqhm(h),
        Formula::Sn => sn(params.n),
        Formula::Bw => bw(params.n),
        Formula::ThmSigned => thm_signed(h),
        Formula::ThmSignedEven => thm_signed_even(h),
        Formula::CorB => corb(h),
        Formula::OddEven => oddeven(h),
        Formula::Nmin => nmin(h),
        Formula::PetB => petb(params.n),
        Formula::PetD => petd(params.n),
        Formula::LastHm => lasthm(r()?),
        Formula::Rook => rook(r()?),
        Formula::DMix => dmix(h),
        Formula::DCyc => dcyc(h),
        Formula::DFull => dfull(params.n),
        Formula::RlminR => rlmin_r(r()?),
    })
}

fn q() -> Polynomial {
    Polynomial::var(Var::Q)
}

fn t() -> Polynomial {
    Polynomial::var(Var::T)
}

fn qpow(e: usize) -> Polynomial {
    q().pow(e as u32)
}

/// `q + q^2 + ... + q^{m-1}`
fn q_tail(m: usize) -> Polynomial {
    Polynomial::geometric(Var::Q, 1, m.saturating_sub(1))
}

pub fn thm1(h: &[usize]) -> Polynomial {
    (1..=h.len())
        .map(|k| {
            let hk = h[k - 1];
            (1..=hk)
                .map(|w| {
                    let mut m = Monomial::one().times(Var::P, (hk - w) as u32).times(Var::Q, (w - 1) as u32);
                    if w == 1 {
                        m.mul_var(Var::t(k), 1);
                    }
                    if w == hk {
                        m.mul_var(Var::s(k), 1);
                    }
                    Polynomial::monomial(m, 1)
                })
                .sum()
        })
        .product()
}

pub fn eqhm(h: &[usize]) -> Polynomial {
    (1..=h.len()).map(|k| Polynomial::var(Var::t(k)) + q_tail(h[k - 1])).product()
}

pub fn sn(n: usize) -> Polynomial {
    (1..=n).map(|k| t() + q_tail(k)).product()
}

pub fn bw(n: usize) -> Polynomial {
    eqhm(&(1..=n).collect::<Vec<_>>())
}

pub fn thm_signed(h: &[usize]) -> Polynomial {
    signed_product(h, 1, true)
}

pub fn thm_signed_even(h: &[usize]) -> Polynomial {
    signed_product(h, 2, false)
}

fn signed_product(h: &[usize], from: usize, with_p: bool) -> Polynomial {
    (from..=h.len())
        .map(|i| {
            let hi = h[i - 1];
            (1..=hi)
                .map(|k| {
                    let mut red = Monomial::one()
                        .times(Var::qn(1), (k - 1) as u32)
                        .times(Var::qn(3), (hi - k) as u32)
                        .times(Var::qn(5), (i - hi) as u32);
                    if k == 1 {
                        red.mul_var(Var::t(i), 1);
                    }
                    let blue = Monomial::one()
                        .times(Var::qn(2), (hi - k) as u32)
                        .times(Var::qn(4), (k - 1) as u32)
                        .times(Var::qn(6), (i - hi) as u32)
                        .times(Var::P, u32::from(with_p));
                    Polynomial::monomial(red, 1) + Polynomial::monomial(blue, 1)
                })
                .sum()
        })
        .product()
}

pub fn corb(h: &[usize]) -> Polynomial {
    (1..=h.len())
        .map(|k| {
            let hk = h[k - 1];
            Polynomial::var(Var::t(k)) + q_tail(hk) + qpow(2 * k - hk) * Polynomial::q_integer(hk)
        })
        .product()
}

pub fn oddeven(h: &[usize]) -> Polynomial {
    (1..=h.len())
        .map(|k| {
            let hk = h[k - 1];
            Polynomial::var(Var::t(k))
                + (q() + qpow(2 * k - hk)) * Polynomial::q_integer(hk - 1)
                + Polynomial::var(Var::s(k)) * qpow(2 * k - 1)
        })
        .product()
}

pub fn nmin(h: &[usize]) -> Polynomial {
    (1..=h.len())
        .map(|k| {
            let hk = h[k - 1];
            Polynomial::one() + (q_tail(hk) + qpow(2 * k - hk) * Polynomial::q_integer(hk)) * t()
        })
        .product()
}

pub fn petb(n: usize) -> Polynomial {
    (1..=n).map(|i| Polynomial::one() + t() * Polynomial::q_integer(2 * i) - t()).product()
}

pub fn petd(n: usize) -> Polynomial {
    Polynomial::q_integer(n) * (1..n).map(|i| Polynomial::q_integer(2 * i)).product()
}

pub fn lasthm(r: &RestrictionSequence) -> Polynomial {
    (1..=r.len()).map(|k| t() + Polynomial::constant((r.get(k) - k) as i64)).product()
}

pub fn rook(r: &RestrictionSequence) -> Polynomial {
    let n = r.len();
    let counts = rook_counts(r);
    (0..=n)
        .map(|k| {
            let falling: Polynomial = (1..=k).map(|j| t() - Polynomial::constant(j as i64)).product();
            Polynomial::constant(counts[n - k] as i64) * falling
        })
        .sum()
}

pub fn dmix(h: &[usize]) -> Polynomial {
    (2..=h.len())
        .map(|i| {
            let hi = h[i - 1];
            Polynomial::var(Var::t(i)) + q_tail(hi) + qpow(2 * i - hi - 1) * Polynomial::q_integer(hi)
        })
        .product()
}

pub fn dcyc(h: &[usize]) -> Polynomial {
    (2..=h.len())
        .map(|i| {
            let hi = h[i - 1];
            Polynomial::var(Var::t(i))
                + (q() + qpow(2 * i - hi - 1)) * Polynomial::q_integer(hi - 1)
                + qpow(2 * i - 2) * Polynomial::var(Var::s(i))
        })
        .product()
}

pub fn dfull(n: usize) -> Polynomial {
    (2..=n)
        .map(|i| Polynomial::var(Var::t(i)) + q_tail(i) + qpow(i - 1) * Polynomial::q_integer(i))
        .product()
}

pub fn rlmin_r(r: &RestrictionSequence) -> Polynomial {
    (1..=r.len()).map(|k| t() + q_tail(r.get(k) - k + 1)).product()
}

/// `counts[k]` is the number of placements of `k` non-attacking rooks on the
/// board whose row `i` has cells `1..=r_i`.
pub fn rook_counts(r: &RestrictionSequence) -> Vec<u64> {
    fn go(rows: &[usize], used: &mut Vec<bool>, placed: usize, counts: &mut [u64]) {
        let Some((&len, rest)) = rows.split_first() else {
            counts[placed] += 1;
            return;
        };
        go(rest, used, placed, counts);
        for c in 1..=len {
            if !used[c] {
                used[c] = true;
                go(rest, used, placed + 1, counts);
                used[c] = false;
            }
        }
    }
    let n = r.len();
    let mut counts = vec![0; n + 1];
    go(r.as_slice(), &mut vec![false; n + 1], 0, &mut counts);
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[usize]) -> RestrictionSequence {
        RestrictionSequence::new(v.to_vec()).unwrap()
    }

    fn tq(a: u32, b: u32) -> Polynomial {
        Polynomial::monomial(Monomial::one().times(Var::T, a).times(Var::Q, b), 1)
    }

    #[test]
    fn small_values() {
        assert_eq!(sn(2), tq(2, 0) + tq(1, 1));
        assert_eq!(petb(1), Polynomial::one() + tq(1, 1));
        assert_eq!(sn(0), Polynomial::one());
        let s1 = Monomial::one().times(Var::t(1), 1).times(Var::s(1), 1);
        assert_eq!(thm1(&[1]), Polynomial::monomial(s1, 1));
        // h = (1, 2): t_1 s_1 (t_2 p + s_2 q)
        let m = |v: &[(Var, u32)]| Polynomial::monomial(v.iter().fold(Monomial::one(), |m, &(x, e)| m.times(x, e)), 1);
        let want = m(&[(Var::t(1), 1), (Var::s(1), 1)]) * (m(&[(Var::t(2), 1), (Var::P, 1)]) + m(&[(Var::s(2), 1), (Var::Q, 1)]));
        assert_eq!(thm1(&[1, 2]), want);
        assert_eq!(petd(2), Polynomial::q_integer(2) * Polynomial::q_integer(2));
    }

    #[test]
    fn rook_numbers() {
        assert_eq!(rook_counts(&r(&[1])), vec![1, 1]);
        assert_eq!(rook_counts(&r(&[1, 2])), vec![1, 3, 1]);
        for n in 0..=5 {
            let c = rook_counts(&RestrictionSequence::full(n));
            for k in 0..=n {
                let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
                let fact: u64 = (1..=k as u64).product();
                assert_eq!(c[k], binom * binom * fact);
            }
        }
    }

    #[test]
    fn rook_polynomial_equals_last_product() {
        for n in 0..=5 {
            for rr in RestrictionSequence::enumerate(n) {
                assert_eq!(rook(&rr), lasthm(&rr), "{rr}");
            }
        }
    }

    #[test]
    fn stirling_full_board() {
        for n in 0..=6 {
            let rising: Polynomial = (0..n).map(|i| t() + Polynomial::constant(i as i64)).product();
            assert_eq!(lasthm(&RestrictionSequence::full(n)), rising);
        }
    }

    #[test]
    fn specializations_agree() {
        let to_t = |v: Var| matches!(v, Var::Ti(_)).then(|| Polynomial::var(Var::T));
        for n in 0..=6 {
            let stair: Vec<usize> = (1..=n).collect();
            assert_eq!(bw(n), eqhm(&stair));
            assert_eq!(sn(n), eqhm(&stair).substitute(to_t));
            assert_eq!(nmin(&stair), petb(n));
            assert_eq!(dmix(&stair), dfull(n));
            let classic: Polynomial =
                (1..n).map(|i| (Polynomial::one() + qpow(i)) * Polynomial::q_integer(i + 1)).product();
            // [0]_q = 0 makes the literal n = 0 value vanish
            if n > 0 {
                assert_eq!(petd(n), classic);
            }
        }
        let spec = |v: Var| match v {
            Var::Qn(1) | Var::Qn(2) | Var::P => Some(q()),
            Var::Qn(4) | Var::Qn(6) => Some(qpow(2)),
            Var::Qn(3) | Var::Qn(5) => Some(Polynomial::one()),
            _ => None,
        };
        for n in 0..=4 {
            for d in crate::dyck::enumerate_dyck(n) {
                let h = d.height_sequence();
                assert_eq!(thm_signed(&h).substitute(spec), corb(&h));
                assert_eq!(thm_signed_even(&h).substitute(spec), dmix(&h));
                let rr = d.restriction();
                let to_t = |v: Var| matches!(v, Var::Ti(_)).then(|| Polynomial::var(Var::T));
                assert_eq!(eqhm(&h).substitute(to_t), rlmin_r(&rr));
            }
        }
    }

    #[test]
    fn dispatch() {
        assert_eq!("f-sn".parse::<Formula>().unwrap(), Formula::Sn);
        assert_eq!("RLMIN-R".parse::<Formula>().unwrap(), Formula::RlminR);
        assert!("F-NOPE".parse::<Formula>().is_err());
        let p = RhsParams::from_n(3);
        assert_eq!(build_rhs(Formula::Sn, &p).unwrap(), sn(3));
        let no_r = RhsParams { n: 2, heights: vec![1, 2], restriction: None };
        assert!(build_rhs(Formula::LastHm, &no_r).is_err());
        for f in Formula::ALL {
            assert_eq!(f.id().parse::<Formula>().unwrap(), f);
            build_rhs(f, &p).unwrap();
        }
    }
}
