//! Signed permutations (types B and D) in window notation with
//! `σ(-i) = -σ(i)`, their statistics, selection sorts, and the transport
//! `g_r` onto bicolored matchings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bicolored::{BicoloredMatching, Color};
use crate::dyck::{DyckPath, RestrictionSequence};
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::perm::{enumerate_sr, Permutation};
use crate::sets::{IndexSet, Letters, Places};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedPermutation {
    window: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCycle {
    /// Starts at the entry of smallest absolute value. For an unbalanced
    /// cycle this is the first half `a_1..a_k` of `(a_1..a_k, -a_1..-a_k)`.
    pub elements: Vec<i32>,
    pub balanced: bool,
}

/// A transposition `(i j)` with `i < j`, `j > 0`; a negative `i` also swaps
/// `-i` with `-j`, and `i = -j` negates the entry at `j`.
pub type SignedTransposition = (i32, usize);

impl SignedPermutation {
    pub fn new(window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(format!("{window:?} is not a signed permutation of 1..={n}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { window: (1..=n as i32).collect() }
    }

    /// `σ` with the sign of position `k` flipped when bit `k - 1` of `mask` is set.
    pub fn with_signs(p: &Permutation, mask: u64) -> Self {
        let window = p
            .window()
            .iter()
            .enumerate()
            .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i32) } else { v as i32 })
            .collect();
        SignedPermutation { window }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// `σ(i)` for `i` in `±1..=±n`.
    pub fn at(&self, i: i32) -> i32 {
        if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    fn set(&mut self, i: i32, v: i32) {
        if i > 0 {
            self.window[i as usize - 1] = v;
        } else {
            self.window[(-i) as usize - 1] = -v;
        }
    }

    /// Signed position `l` with `σ(l) = v`.
    pub fn position_of(&self, v: i32) -> i32 {
        let a = v.abs();
        for (i, &x) in self.window.iter().enumerate() {
            if x == v {
                return i as i32 + 1;
            }
            if x == -v && x.abs() == a {
                return -(i as i32 + 1);
            }
        }
        panic!("{v} is not a value of {self}")
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            if v > 0 {
                inv[v as usize - 1] = pos;
            } else {
                inv[(-v) as usize - 1] = -pos;
            }
        }
        SignedPermutation { window: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        Ok(SignedPermutation { window: other.window.iter().map(|&j| self.at(j)).collect() })
    }

    /// `N(σ)`: number of negative entries.
    pub fn neg_count(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }

    pub fn is_positive(&self) -> bool {
        self.neg_count() == 0
    }

    /// Even number of negative entries.
    pub fn is_type_d(&self) -> bool {
        self.neg_count().is_multiple_of(2)
    }

    pub fn abs_perm(&self) -> Permutation {
        Permutation::new(self.window.iter().map(|v| v.unsigned_abs() as usize).collect())
            .expect("absolute values form a permutation")
    }

    pub fn to_unsigned(&self) -> Result<Permutation> {
        if self.is_positive() {
            Ok(self.abs_perm())
        } else {
            Err(Error::SignedNotAllowed(self.to_string(), "expected a permutation without signs"))
        }
    }

    /// `|σ(k)| <= r_k` for all `k`.
    pub fn is_in_class(&self, r: &RestrictionSequence) -> bool {
        r.len() == self.n() && (1..=self.n()).all(|k| self.window[k - 1].unsigned_abs() as usize <= r.get(k))
    }

    fn require_class(&self, r: &RestrictionSequence) -> Result<()> {
        if self.is_in_class(r) {
            Ok(())
        } else {
            Err(Error::NotInClass { perm: self.to_string(), r: r.as_slice().to_vec() })
        }
    }

    pub fn require_type_d(&self) -> Result<()> {
        if self.is_type_d() {
            Ok(())
        } else {
            Err(Error::SignedNotAllowed(self.to_string(), "type D needs an even number of negative entries"))
        }
    }

    fn pair_inversions(&self) -> usize {
        let w = &self.window;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                c += usize::from(w[i] > w[j]) + usize::from(-w[i] > w[j]);
            }
        }
        c
    }

    /// `inv_B`
    pub fn inv_b(&self) -> usize {
        self.pair_inversions() + self.neg_count()
    }

    /// `inv_D`; rejects an odd number of negative entries.
    pub fn inv_d(&self) -> Result<usize> {
        self.require_type_d()?;
        Ok(self.pair_inversions())
    }

    /// `nmin_B`
    pub fn nmin_b(&self) -> usize {
        let w = &self.window;
        let dominated = (0..w.len()).filter(|&i| w[i + 1..].iter().any(|&x| w[i] > x.abs())).count();
        dominated + self.neg_count()
    }

    fn prlmin_positions(&self) -> impl Iterator<Item = usize> + '_ {
        let w = &self.window;
        (0..w.len()).filter(move |&i| w[i] > 0 && w[i + 1..].iter().all(|&x| w[i] < x.abs())).map(|i| i + 1)
    }

    /// Positive right-to-left minimum letters.
    pub fn prlminl_set(&self) -> IndexSet<Letters> {
        self.prlmin_positions().map(|k| self.window[k - 1] as usize).collect()
    }

    /// Places of the positive right-to-left minima.
    pub fn prlmin_places(&self) -> IndexSet<Places> {
        self.prlmin_positions().collect()
    }

    /// Positive right-to-left minimum letters other than 1.
    pub fn prlminl_prime_set(&self) -> IndexSet<Letters> {
        self.prlminl_set().without_one()
    }

    pub fn signed_cycles(&self) -> Vec<SignedCycle> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as i32 {
            if seen[start as usize] {
                continue;
            }
            let mut elements = Vec::new();
            let mut v = start;
            let balanced = loop {
                seen[v.unsigned_abs() as usize] = true;
                elements.push(v);
                v = self.at(v);
                if v == start {
                    break true;
                }
                if v == -start {
                    break false;
                }
            };
            out.push(SignedCycle { elements, balanced });
        }
        out
    }

    /// `Cyc_0`: minimal absolute values of the balanced cycles.
    pub fn cyc0_set(&self) -> IndexSet<Letters> {
        self.signed_cycles().iter().filter(|c| c.balanced).map(|c| c.elements[0] as usize).collect()
    }

    /// `Cyc_1`: minimal absolute values of the unbalanced cycles.
    pub fn cyc1_set(&self) -> IndexSet<Letters> {
        self.signed_cycles().iter().filter(|c| !c.balanced).map(|c| c.elements[0] as usize).collect()
    }

    /// `(Cyc_0 \ {1}, Cyc_1 \ {1})`
    pub fn cyc01_prime_sets(&self) -> (IndexSet<Letters>, IndexSet<Letters>) {
        (self.cyc0_set().without_one(), self.cyc1_set().without_one())
    }

    /// Reflection length `ℓ'_B = n - cyc_0`.
    pub fn refl_length_b(&self) -> usize {
        self.n() - self.cyc0_set().len()
    }

    fn swap_positions(&mut self, l: i32, m: i32) {
        let a = self.at(l);
        let b = self.at(m);
        self.set(l, b);
        self.set(m, a);
    }

    /// Factorization `(i_1 j_1)...(i_k j_k)` with `0 < j_1 < ... < j_k`, read
    /// off the type-B selection sort placing `n, n-1, ..., 1`.
    pub fn sor_b_factorization(&self) -> Vec<SignedTransposition> {
        let mut cur = self.clone();
        let mut steps = Vec::new();
        for k in (1..=self.n()).rev() {
            let l = cur.position_of(k as i32);
            if l != k as i32 {
                cur.swap_positions(l, k as i32);
                steps.push((l, k));
            }
        }
        steps.reverse();
        steps
    }

    /// `Σ (j_s - i_s - χ(i_s < 0))`
    pub fn sor_b(&self) -> usize {
        self.sor_b_factorization().iter().map(|&(i, j)| (j as i32 - i - i32::from(i < 0)) as usize).sum()
    }

    /// Type-D factorization: the selection sort for `k = n, ..., 2` with only
    /// type-D reflections. Moving `k` from place `-k` takes `(1 k)` then
    /// `(-1 k)`, so both share `j = k`. The sign of 1 is then forced.
    pub fn sor_d_factorization(&self) -> Result<Vec<SignedTransposition>> {
        self.require_type_d()?;
        let mut cur = self.clone();
        let mut steps = Vec::new();
        for k in (2..=self.n()).rev() {
            let kk = k as i32;
            let l = cur.position_of(kk);
            if l == -kk {
                cur.swap_positions(1, kk);
                cur.swap_positions(-1, kk);
                steps.push((1, k));
                steps.push((-1, k));
            } else if l != kk {
                cur.swap_positions(l, kk);
                steps.push((l, k));
            }
        }
        debug_assert!(cur.window.first().is_none_or(|&v| v == 1));
        steps.reverse();
        Ok(steps)
    }

    /// `Σ (j_s - i_s - 2 χ(i_s < 0))`
    pub fn sor_d(&self) -> Result<usize> {
        Ok(self
            .sor_d_factorization()?
            .iter()
            .map(|&(i, j)| (j as i32 - i - 2 * i32::from(i < 0)) as usize)
            .sum())
    }

    /// The signed permutation of a single transposition.
    pub fn transposition(n: usize, t: SignedTransposition) -> SignedPermutation {
        let mut s = SignedPermutation::identity(n);
        s.swap_positions(t.0, t.1 as i32);
        s
    }
}

pub fn write_signed_transposition(t: &SignedTransposition) -> String {
    format!("({} {})", t.0, t.1)
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({self})")
    }
}

impl fmt::Display for SignedPermutation {
    /// `-5,1,3,-4,-2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Accepts `-5,1,3,-4,-2`, `[-5,1,3,-4,-2]` or the compact `-513-4-2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        let bad = || Error::Parse(format!("cannot parse signed permutation {s:?}"));
        let window: Vec<i32> = if s.is_empty() {
            Vec::new()
        } else if s.contains(',') || s.contains(char::is_whitespace) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            let mut out = Vec::new();
            let mut neg = false;
            for c in s.chars() {
                match c {
                    '-' if !neg => neg = true,
                    d if d.is_ascii_digit() => {
                        let v = d.to_digit(10).unwrap() as i32;
                        out.push(if neg { -v } else { v });
                        neg = false;
                    }
                    _ => return Err(bad()),
                }
            }
            if neg {
                return Err(bad());
            }
            out
        };
        SignedPermutation::new(window)
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        SignedPermutation::new(v)
    }
}

impl From<SignedPermutation> for Vec<i32> {
    fn from(p: SignedPermutation) -> Vec<i32> {
        p.window
    }
}

impl From<&Permutation> for SignedPermutation {
    fn from(p: &Permutation) -> Self {
        SignedPermutation::with_signs(p, 0)
    }
}

/// `B_r`: each member of `S_r` in lexicographic order with its `2^n` sign
/// patterns (bit `k - 1` negates position `k`).
pub fn enumerate_br(r: &RestrictionSequence) -> Vec<SignedPermutation> {
    let n = r.len();
    enumerate_sr(r)
        .iter()
        .flat_map(|p| (0..1u64 << n).map(move |mask| SignedPermutation::with_signs(p, mask)))
        .collect()
}

/// `D_n(r)`: members of `B_r` with an even number of negative entries.
pub fn enumerate_dr(r: &RestrictionSequence) -> Vec<SignedPermutation> {
    enumerate_br(r).into_iter().filter(SignedPermutation::is_type_d).collect()
}

pub fn enumerate_bn(n: usize) -> Vec<SignedPermutation> {
    enumerate_br(&RestrictionSequence::full(n))
}

pub fn enumerate_dn(n: usize) -> Vec<SignedPermutation> {
    enumerate_dr(&RestrictionSequence::full(n))
}

/// Selection sort of `σ` toward a positive `σ_0` with the per-letter cost `b_k`.
#[derive(Debug, Clone)]
pub struct SignedSortTrace {
    /// `states[k - 1]` is `σ_k`.
    pub states: Vec<SignedPermutation>,
    /// `steps[k - 1]` is `b_k`.
    pub steps: Vec<usize>,
    /// `negative[k - 1]`: `k` sat at a negative place of `σ_k`.
    pub negative: Vec<bool>,
}

impl SignedSortTrace {
    pub fn sor(&self) -> usize {
        self.steps.iter().sum()
    }

    /// `Σ_{k >= 2} (b_k - [k at a negative place])`
    pub fn sor_d(&self) -> usize {
        (2..=self.steps.len()).map(|k| self.steps[k - 1] - usize::from(self.negative[k - 1])).sum()
    }
}

pub fn sort_restricted_b(
    sigma: &SignedPermutation,
    sigma0: &SignedPermutation,
    r: &RestrictionSequence,
) -> Result<SignedSortTrace> {
    sigma.require_class(r)?;
    sigma0.require_class(r)?;
    if !sigma0.is_positive() {
        return Err(Error::SignedNotAllowed(sigma0.to_string(), "the base must have only positive entries"));
    }
    let n = sigma.n();
    let target = sigma0.inverse();
    let mut cur = sigma.clone();
    let mut states = vec![sigma.clone(); n];
    let mut steps = vec![0; n];
    let mut negative = vec![false; n];
    for k in (1..=n).rev() {
        states[k - 1] = cur.clone();
        let l = cur.position_of(k as i32);
        let m = target.at(k as i32);
        negative[k - 1] = l < 0;
        let kk = k as i32;
        let inside = |lo: i32, hi: i32| (lo..=hi).filter(|&i| sigma0.at(i) < kk).count();
        let outside = |lo: i32, hi: i32| {
            (1..=n as i32)
                .filter(|&i| r.get(i as usize) >= k && !(lo < i && i < hi) && sigma0.at(i) < kk)
                .count()
        };
        let blue = 2 * k - 1;
        steps[k - 1] = if l == m {
            0
        } else if 0 < l && l < m {
            inside(l, m)
        } else if l > m {
            outside(m, l)
        } else if l == -m {
            blue
        } else if -l < m {
            blue - inside(-l, m)
        } else {
            blue - outside(m, -l)
        };
        if l != m {
            cur.swap_positions(l, m);
        }
    }
    debug_assert_eq!(cur, *sigma0);
    Ok(SignedSortTrace { states, steps, negative })
}

/// `sor_r(σ, σ_0) = Σ b_k` for a positive base `σ_0`.
pub fn sor_r_b(sigma: &SignedPermutation, sigma0: &SignedPermutation, r: &RestrictionSequence) -> Result<usize> {
    Ok(sort_restricted_b(sigma, sigma0, r)?.sor())
}

/// Type-D analogue of [`sor_r_b`] for `σ, σ_0 ∈ D_n(r)`: the bicolored
/// `sor'` of `(g_r(σ), g_r(σ_0))`. Agrees with `sor_D(σ)` when `σ_0 = id`.
pub fn sor_r_d(sigma: &SignedPermutation, sigma0: &SignedPermutation, r: &RestrictionSequence) -> Result<usize> {
    sigma.require_type_d()?;
    Ok(sort_restricted_b(sigma, sigma0, r)?.sor_d())
}

/// Edges `o_{|σ(k)|} · c_k`, blue exactly when `σ(k) < 0`.
pub fn g_r(sigma: &SignedPermutation, r: &RestrictionSequence) -> Result<BicoloredMatching> {
    sigma.require_class(r)?;
    let skeleton = Matching::nonnesting(&DyckPath::from_restriction(r));
    let n = sigma.n();
    let edges: Vec<(usize, usize)> =
        (1..=n).map(|k| (skeleton.opener(sigma.window[k - 1].unsigned_abs() as usize), skeleton.closer(k))).collect();
    let base = Matching::from_edges(&edges)?;
    let mut colors = vec![Color::Red; n];
    for &v in sigma.window.iter().filter(|&&v| v < 0) {
        colors[(-v) as usize - 1] = Color::Blue;
    }
    BicoloredMatching::new(base, colors)
}

/// Inverse of [`g_r`].
pub fn g_r_inv(m: &BicoloredMatching, r: &RestrictionSequence) -> Result<SignedPermutation> {
    let base = m.base();
    let d = DyckPath::from_restriction(r);
    if base.type_of() != d {
        return Err(Error::TypeMismatch(base.type_of().to_string(), d.to_string()));
    }
    let window = (1..=m.n())
        .map(|k| {
            let rank = base.opener_rank(base.mate(base.closer(k))).expect("mate of a closer is an opener");
            if m.color_at(rank).is_blue() {
                -(rank as i32)
            } else {
                rank as i32
            }
        })
        .collect();
    Ok(SignedPermutation { window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicolored;
    use crate::poly::{Polynomial, Var};
    use std::collections::{HashMap, VecDeque};

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }
    fn r(v: &[usize]) -> RestrictionSequence {
        RestrictionSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn parse_forms() {
        let s = sp("-5,1,3,-4,-2");
        assert_eq!(s, sp("-513-4-2"));
        assert_eq!(s, sp("[-5, 1, 3, -4, -2]"));
        assert_eq!(s.to_string(), "-5,1,3,-4,-2");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[-5,1,3,-4,-2]");
        assert!("1,-1".parse::<SignedPermutation>().is_err());
        assert!("1-".parse::<SignedPermutation>().is_err());
        assert_eq!(s.at(-1), 5);
        assert_eq!(s.position_of(5), -1);
        assert_eq!(s.position_of(-4), 4);
    }

    #[test]
    fn composition_and_inverse() {
        for s in enumerate_bn(3) {
            let id = SignedPermutation::identity(3);
            assert_eq!(s.compose(&s.inverse()).unwrap(), id);
            assert_eq!(s.inverse().compose(&s).unwrap(), id);
            for i in 1..=3 {
                assert_eq!(s.at(-i), -s.at(i));
            }
        }
    }

    #[test]
    fn type_b_statistics() {
        let id = SignedPermutation::identity(4);
        assert_eq!((id.inv_b(), id.nmin_b(), id.neg_count()), (0, 0, 0));
        assert_eq!(id.prlminl_set().to_vec(), vec![1, 2, 3, 4]);
        let m1 = sp("-1");
        assert_eq!((m1.neg_count(), m1.inv_b(), m1.nmin_b()), (1, 1, 1));
        assert!(m1.prlminl_set().is_empty());
        // 3̄1 2: letters 1 and 2 are positive right-to-left minima
        let x = sp("-3,1,2");
        assert_eq!(x.prlminl_set().to_vec(), vec![1, 2]);
        assert_eq!(x.prlmin_places().to_vec(), vec![2, 3]);
        assert_eq!(sp("2,-1").prlminl_set().to_vec(), Vec::<usize>::new());
        assert_eq!(sp("3,1,2").prlminl_prime_set().to_vec(), vec![2]);
        for s in enumerate_bn(4) {
            assert_eq!(s.nmin_b(), s.n() - s.prlminl_set().len(), "{s}");
        }
    }

    #[test]
    fn cycle_example() {
        // window rebuilt from the decomposition (1 -3 5)(2 -9 -2 9)(4 -7)(6 -6)(8)
        let s = sp("-3,-9,-5,-7,1,-6,-4,8,2");
        let cycles = s.signed_cycles();
        assert_eq!(cycles.len(), 5);
        assert_eq!(cycles[0], SignedCycle { elements: vec![1, -3, 5], balanced: true });
        assert_eq!(cycles[1], SignedCycle { elements: vec![2, -9], balanced: false });
        assert_eq!(s.cyc0_set().to_vec(), vec![1, 4, 8]);
        assert_eq!(s.cyc1_set().to_vec(), vec![2, 6]);
        // with -8 in place 8 the fixed point becomes the unbalanced (8 -8)
        let literal = sp("-3,-9,-5,-7,1,-6,-4,-8,2");
        assert_eq!(literal.cyc0_set().to_vec(), vec![1, 4]);
        assert_eq!(literal.cyc1_set().to_vec(), vec![2, 6, 8]);
        let id = SignedPermutation::identity(3);
        assert_eq!(id.cyc0_set().to_vec(), vec![1, 2, 3]);
        assert_eq!(id.refl_length_b(), 0);
        assert_eq!(sp("-1").cyc1_set().to_vec(), vec![1]);
        assert_eq!(sp("-1").refl_length_b(), 1);
    }

    /// Breadth-first distance from the identity using every reflection
    /// `(i j)`, `(-i j)` with `i < j` and `(-i i)`.
    fn reflection_lengths(n: usize) -> HashMap<SignedPermutation, usize> {
        let mut refl = Vec::new();
        for j in 1..=n {
            for i in 1..j {
                refl.push(SignedPermutation::transposition(n, (i as i32, j)));
                refl.push(SignedPermutation::transposition(n, (-(i as i32), j)));
            }
            refl.push(SignedPermutation::transposition(n, (-(j as i32), j)));
        }
        let mut dist = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(SignedPermutation::identity(n), 0);
        queue.push_back(SignedPermutation::identity(n));
        while let Some(s) = queue.pop_front() {
            let d = dist[&s];
            for t in &refl {
                let next = s.compose(t).unwrap();
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    #[test]
    fn reflection_length_matches_search() {
        for n in 1..=4 {
            let dist = reflection_lengths(n);
            assert_eq!(dist.len(), (1..=n).product::<usize>() << n);
            for (s, d) in dist {
                assert_eq!(s.refl_length_b(), d, "{s}");
            }
        }
    }

    #[test]
    fn sor_b_example() {
        let s = sp("-5,1,3,-4,-2");
        assert_eq!(s.sor_b_factorization(), vec![(1, 2), (-4, 4), (-1, 5)]);
        assert_eq!(s.sor_b(), 13);
        assert_eq!(SignedPermutation::identity(4).sor_b(), 0);
        assert_eq!(sp("-1").sor_b_factorization(), vec![(-1, 1)]);
        assert_eq!(sp("-1").sor_b(), 1);
    }

    #[test]
    fn factorizations_recompose() {
        for n in 0..=4 {
            for s in enumerate_bn(n) {
                let f = s.sor_b_factorization();
                let mut prod = SignedPermutation::identity(n);
                for &t in &f {
                    prod = prod.compose(&SignedPermutation::transposition(n, t)).unwrap();
                }
                assert_eq!(prod, s);
                assert!(f.windows(2).all(|w| w[0].1 < w[1].1));
                assert!(f.iter().all(|&(i, j)| i < j as i32 && i != 0));
                if s.is_type_d() {
                    let f = s.sor_d_factorization().unwrap();
                    assert!(f.iter().all(|&(i, j)| j > 1 && i.unsigned_abs() as usize != j));
                    assert!(f.windows(2).all(|w| w[0].1 <= w[1].1));
                    let mut prod = SignedPermutation::identity(n);
                    for &t in &f {
                        prod = prod.compose(&SignedPermutation::transposition(n, t)).unwrap();
                    }
                    assert_eq!(prod, s);
                }
            }
        }
    }

    fn q_dist(values: impl Iterator<Item = usize>) -> Polynomial {
        let mut p = Polynomial::zero();
        for v in values {
            p += Polynomial::var(Var::Q).pow(v as u32);
        }
        p
    }

    #[test]
    fn classical_type_b_and_d_distributions() {
        for n in 1..=4 {
            let bn = enumerate_bn(n);
            let want: Polynomial = (1..=n).map(|i| Polynomial::q_integer(2 * i)).product();
            assert_eq!(q_dist(bn.iter().map(|s| s.inv_b())), want);
            assert_eq!(q_dist(bn.iter().map(|s| s.sor_b())), want);
            let dn = enumerate_dn(n);
            assert_eq!(dn.len(), (1..=n).product::<usize>() << (n - 1));
            let want_d = Polynomial::q_integer(n) * (1..n).map(|i| Polynomial::q_integer(2 * i)).product::<Polynomial>();
            assert_eq!(q_dist(dn.iter().map(|s| s.inv_d().unwrap())), want_d);
            assert_eq!(q_dist(dn.iter().map(|s| s.sor_d().unwrap())), want_d);
        }
        assert!(sp("-1,2").inv_d().is_err());
        assert_eq!(sp("-2,-1").inv_d().unwrap(), sp("-2,-1").inv_b() - 2);
    }

    #[test]
    fn class_enumeration() {
        let rr = r(&[2, 2, 3]);
        assert_eq!(enumerate_br(&rr).len(), 8 * enumerate_sr(&rr).len());
        assert_eq!(enumerate_dr(&rr).len(), 4 * enumerate_sr(&rr).len());
        assert_eq!(enumerate_bn(4).len(), 384);
    }

    #[test]
    fn transport_g_r() {
        assert_eq!(g_r(&sp("-1"), &r(&[1])).unwrap().to_string(), "1-2b");
        for n in 0..=4 {
            for rr in RestrictionSequence::enumerate(n) {
                for s in enumerate_br(&rr) {
                    let m = g_r(&s, &rr).unwrap();
                    assert_eq!(g_r_inv(&m, &rr).unwrap(), s);
                    assert_eq!(m.mix(), s.inv_b(), "{s}");
                    assert_eq!(m.longr_set().relabel::<Letters>(), s.prlminl_set());
                    if s.is_positive() {
                        assert_eq!(m.base(), &crate::perm::f_r(&s.abs_perm(), &rr).unwrap());
                    }
                    if s.is_type_d() {
                        assert_eq!(m.mix_prime(), s.inv_d().unwrap());
                        assert_eq!(m.longr_prime_set().relabel::<Letters>(), s.prlminl_prime_set());
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_sort_matches_bicolored_sort() {
        for n in 0..=3 {
            for rr in RestrictionSequence::enumerate(n) {
                let class = enumerate_br(&rr);
                for s0 in class.iter().filter(|s| s.is_positive()) {
                    let m0 = g_r(s0, &rr).unwrap();
                    for s in &class {
                        let m = g_r(s, &rr).unwrap();
                        let t = sort_restricted_b(s, s0, &rr).unwrap();
                        let mt = bicolored::sort_bicolored(&m, &m0).unwrap();
                        assert_eq!(t.steps, mt.steps, "{s} {s0} {rr}");
                        assert_eq!(t.sor_d(), mt.sor_prime());
                        let rel = s.compose(&s0.inverse()).unwrap();
                        let (c0, c1) = bicolored::cyc01_sets(&m, &m0).unwrap();
                        assert_eq!((rel.cyc0_set(), rel.cyc1_set()), (c0.relabel(), c1.relabel()), "{s} {s0}");
                    }
                }
                for s in &class {
                    let id = SignedPermutation::identity(n);
                    assert_eq!(sor_r_b(s, &id, &rr).unwrap(), s.sor_b());
                    if s.is_type_d() {
                        assert_eq!(sor_r_d(s, &id, &rr).unwrap(), s.sor_d().unwrap());
                    }
                }
            }
        }
        assert!(sort_restricted_b(&sp("1"), &sp("-1"), &r(&[1])).is_err());
    }

    #[test]
    fn b_k_cases() {
        let rr = RestrictionSequence::full(3);
        let id = SignedPermutation::identity(3);
        // l = m
        assert_eq!(sort_restricted_b(&id, &id, &rr).unwrap().steps[2], 0);
        // 0 < l < m
        assert_eq!(sort_restricted_b(&sp("3,1,2"), &id, &rr).unwrap().steps[2], 2);
        // l = -m
        assert_eq!(sort_restricted_b(&sp("1,2,-3"), &id, &rr).unwrap().steps[2], 5);
        // 0 > l > -m
        assert_eq!(sort_restricted_b(&sp("-3,1,2"), &id, &rr).unwrap().steps[2], 5 - 2);
        // l > m and l < -m need a base with σ_0^{-1}(k) < k
        let s0 = sp("3,1,2");
        let t = sort_restricted_b(&sp("1,2,3"), &s0, &rr).unwrap();
        // l = 3 > m = 1: i ∉ (1, 3) with σ_0(i) < 3 is {2, 3}... i = 1 has σ_0(1) = 3
        assert_eq!(t.steps[2], 1);
        let t = sort_restricted_b(&sp("1,2,-3"), &s0, &rr).unwrap();
        assert_eq!(t.steps[2], 5 - 1);
    }
}
