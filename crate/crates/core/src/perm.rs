//! Permutations of `[n]` in window notation, the restricted classes `S_r`,
//! and the transport `f_r` onto matchings of type `D(r)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyck::{parse_list, DyckPath, RestrictionSequence};
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::sets::{IndexSet, Letters, Places};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    window: Vec<usize>,
}

impl Permutation {
    pub fn new(window: Vec<usize>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{window:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { window })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { window: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[usize] {
        &self.window
    }

    /// `σ(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.window.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { window: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        Ok(Permutation { window: other.window.iter().map(|&j| self.at(j)).collect() })
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `σ(k) <= r_k` for all `k`.
    pub fn is_in_class(&self, r: &RestrictionSequence) -> bool {
        r.len() == self.n() && (1..=self.n()).all(|k| self.at(k) <= r.get(k))
    }

    pub(crate) fn require_class(&self, r: &RestrictionSequence) -> Result<()> {
        if self.is_in_class(r) {
            Ok(())
        } else {
            Err(Error::NotInClass { perm: self.to_string(), r: r.as_slice().to_vec() })
        }
    }

    pub fn inv(&self) -> usize {
        let w = &self.window;
        (0..w.len()).map(|i| w[i + 1..].iter().filter(|&&b| b < w[i]).count()).sum()
    }

    pub fn maj(&self) -> usize {
        self.window.windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i + 1).sum()
    }

    /// Cycles, each starting at its minimal letter, ordered by that letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.at(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cyc(&self) -> usize {
        self.cycles().len()
    }

    /// `Cyc`: minimal letters of the cycles.
    pub fn cyc_min_set(&self) -> IndexSet<Letters> {
        self.cycles().iter().map(|c| c[0]).collect()
    }

    /// `Rlminl`: letters smaller than every letter to their right.
    pub fn rlminl_set(&self) -> IndexSet<Letters> {
        let mut out = IndexSet::empty();
        let mut min = usize::MAX;
        for &v in self.window.iter().rev() {
            if v < min {
                out.insert(v);
                min = v;
            }
        }
        out
    }

    /// `Lrmaxp`: places holding a letter larger than every letter to the left.
    pub fn lrmaxp_set(&self) -> IndexSet<Places> {
        let mut out = IndexSet::empty();
        let mut max = 0;
        for (i, &v) in self.window.iter().enumerate() {
            if v > max {
                out.insert(i + 1);
                max = v;
            }
        }
        out
    }

    /// Transpositions `(i j)` with `i < j` and increasing `j` whose product is
    /// `σ`, read off Straight Selection Sort.
    pub fn sor_factorization(&self) -> Vec<(usize, usize)> {
        let mut w = self.window.clone();
        let mut pos = self.inverse().window;
        let mut steps = Vec::new();
        for k in (1..=w.len()).rev() {
            let l = pos[k - 1];
            if l != k {
                let displaced = w[k - 1];
                w.swap(l - 1, k - 1);
                pos[displaced - 1] = l;
                pos[k - 1] = k;
                steps.push((l, k));
            }
        }
        steps.reverse();
        steps
    }

    /// Total distance travelled under Straight Selection Sort.
    pub fn sor(&self) -> usize {
        self.sor_factorization().iter().map(|&(i, j)| j - i).sum()
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut w: Vec<usize> = (1..=n).collect();
        w.swap(i - 1, j - 1);
        Permutation { window: w }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// `6571342` when every letter is a single digit, `10,2,...` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.window {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_list(s)?)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.window
    }
}

/// `S_r` in lexicographic order of windows.
pub fn enumerate_sr(r: &RestrictionSequence) -> Vec<Permutation> {
    fn go(r: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let k = cur.len();
        if k == r.len() {
            out.push(Permutation { window: cur.clone() });
            return;
        }
        for v in 1..=r[k] {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(r, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(r.as_slice(), &mut vec![false; r.len() + 1], &mut Vec::new(), &mut out);
    out
}

/// `S_n`
pub fn enumerate_sn(n: usize) -> Vec<Permutation> {
    enumerate_sr(&RestrictionSequence::full(n))
}

/// Selection sort of `σ` toward `σ_0` with the per-letter cost `a_k`.
#[derive(Debug, Clone)]
pub struct RestrictedSortTrace {
    /// `states[k - 1]` is `σ_k`.
    pub states: Vec<Permutation>,
    /// `steps[k - 1]` is `a_k`.
    pub steps: Vec<usize>,
}

impl RestrictedSortTrace {
    pub fn sor(&self) -> usize {
        self.steps.iter().sum()
    }
}

/// Places `n, n-1, ...` at `σ_0^{-1}(n), σ_0^{-1}(n-1), ...` and records `a_k`.
pub fn sort_restricted(
    sigma: &Permutation,
    sigma0: &Permutation,
    r: &RestrictionSequence,
) -> Result<RestrictedSortTrace> {
    sigma.require_class(r)?;
    sigma0.require_class(r)?;
    let n = sigma.n();
    let target = sigma0.inverse();
    let mut cur = sigma.clone();
    let mut pos = sigma.inverse();
    let mut states = vec![sigma.clone(); n];
    let mut steps = vec![0; n];
    for k in (1..=n).rev() {
        states[k - 1] = cur.clone();
        let l = pos.at(k);
        let m = target.at(k);
        let below = |i: usize| sigma0.at(i) < k;
        steps[k - 1] = if l < m {
            (l..=m).filter(|&i| below(i)).count()
        } else if l == m {
            0
        } else {
            (1..=n).filter(|&i| r.get(i) >= k && !(m < i && i < l) && below(i)).count()
        };
        if l != m {
            let displaced = cur.at(m);
            cur.window.swap(l - 1, m - 1);
            pos.window[displaced - 1] = l;
            pos.window[k - 1] = m;
        }
    }
    debug_assert_eq!(cur, *sigma0);
    Ok(RestrictedSortTrace { states, steps })
}

/// `sor_r(σ, σ_0) = Σ a_k`
pub fn sor_r(sigma: &Permutation, sigma0: &Permutation, r: &RestrictionSequence) -> Result<usize> {
    Ok(sort_restricted(sigma, sigma0, r)?.sor())
}

/// The matching of type `D(r)` with edges `o_{σ(k)} · c_k`.
pub fn f_r(sigma: &Permutation, r: &RestrictionSequence) -> Result<Matching> {
    sigma.require_class(r)?;
    let d = DyckPath::from_restriction(r);
    let skeleton = Matching::nonnesting(&d);
    let edges: Vec<(usize, usize)> =
        (1..=sigma.n()).map(|k| (skeleton.opener(sigma.at(k)), skeleton.closer(k))).collect();
    Matching::from_edges(&edges)
}

/// Inverse of [`f_r`]: `σ(k)` is the opener rank of the mate of `c_k`.
pub fn f_r_inv(m: &Matching, r: &RestrictionSequence) -> Result<Permutation> {
    let d = DyckPath::from_restriction(r);
    if m.type_of() != d {
        return Err(Error::TypeMismatch(m.type_of().to_string(), d.to_string()));
    }
    let window = (1..=m.n())
        .map(|k| m.opener_rank(m.mate(m.closer(k))).expect("mate of a closer is an opener"))
        .collect();
    Ok(Permutation { window })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }
    fn r(v: &[usize]) -> RestrictionSequence {
        RestrictionSequence::new(v.to_vec()).unwrap()
    }

    fn inv_oracle(w: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..w.len() {
            for j in 0..w.len() {
                if i < j && w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("6571342").to_string(), "6571342");
        assert_eq!(p("[2,1]").window(), &[2, 1]);
        assert!("122".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert_eq!(serde_json::to_string(&p("231")).unwrap(), "[2,3,1]");
    }

    #[test]
    fn basic_statistics() {
        let id = Permutation::identity(4);
        assert_eq!((id.inv(), id.maj(), id.cyc()), (0, 0, 4));
        assert_eq!(id.rlminl_set().to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(id.lrmaxp_set().to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(p("231546").inv(), 3);
        assert_eq!(p("6571342").inv(), inv_oracle(&[6, 5, 7, 1, 3, 4, 2]));
        assert_eq!(p("6571342").inv(), 15);
        assert_eq!(p("3142").maj(), 1 + 3);
        assert_eq!(p("3142").rlminl_set().to_vec(), vec![1, 2]);
        assert_eq!(p("3142").lrmaxp_set().to_vec(), vec![1, 3]);
        assert_eq!(p("2314").cycles(), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(p("2314").cyc_min_set().to_vec(), vec![1, 4]);
        for s in enumerate_sn(5) {
            assert_eq!(s.inv(), inv_oracle(s.window()));
        }
    }

    #[test]
    fn sorting_index_example() {
        let s = p("6571342");
        assert_eq!(s.sor_factorization(), vec![(2, 3), (1, 4), (2, 5), (1, 6), (3, 7)]);
        assert_eq!(s.sor(), 16);
        assert!(Permutation::identity(5).sor_factorization().is_empty());
        assert_eq!(p("21").sor_factorization(), vec![(1, 2)]);
        assert_eq!(p("21").sor(), 1);
    }

    #[test]
    fn factorization_recomposes() {
        for n in 0..=5 {
            for s in enumerate_sn(n) {
                let f = s.sor_factorization();
                let mut prod = Permutation::identity(n);
                for &(i, j) in &f {
                    prod = prod.compose(&Permutation::transposition(n, i, j)).unwrap();
                }
                assert_eq!(prod, s);
                assert!(f.iter().all(|&(i, j)| i < j));
                assert!(f.windows(2).all(|w| w[0].1 < w[1].1));
            }
        }
    }

    #[test]
    fn class_enumeration() {
        assert_eq!(enumerate_sr(&r(&[1, 2, 3])), vec![Permutation::identity(3)]);
        assert_eq!(enumerate_sn(4).len(), 24);
        let big = r(&[4, 4, 4, 6, 6, 6]);
        let members = enumerate_sr(&big);
        assert!(members.contains(&p("143265")));
        assert!(members.contains(&p("231546")));
        let prod = p("231546").compose(&p("143265").inverse()).unwrap();
        assert_eq!(prod, p("251364"));
        assert!(!prod.is_in_class(&big));
        // rook count: product of (r_k - k + 1)
        assert_eq!(members.len(), 4 * 3 * 2 * 3 * 2 * 1);
        let all = enumerate_sn(5);
        for rr in RestrictionSequence::enumerate(5) {
            let brute: Vec<_> = all.iter().filter(|s| s.is_in_class(&rr)).cloned().collect();
            assert_eq!(enumerate_sr(&rr), brute);
        }
    }

    #[test]
    fn transport_f_r() {
        let rr = r(&[2, 2, 3]);
        let m = f_r(&p("213"), &rr).unwrap();
        // D = UUDDUD: o = (1, 2, 5), c = (3, 4, 6)
        assert_eq!(m.edges(), vec![(1, 4), (2, 3), (5, 6)]);
        assert_eq!(f_r(&Permutation::identity(3), &rr).unwrap(), Matching::nonnesting(&"UUDDUD".parse().unwrap()));
        assert!(f_r(&p("312"), &rr).is_err());
        for n in 0..=5 {
            for rr in RestrictionSequence::enumerate(n) {
                for s in enumerate_sr(&rr) {
                    let m = f_r(&s, &rr).unwrap();
                    assert_eq!(f_r_inv(&m, &rr).unwrap(), s);
                    assert_eq!(m.ne(), s.inv());
                    assert_eq!(m.long_set().relabel::<Letters>(), s.rlminl_set());
                    assert_eq!(m.short_set().relabel::<Places>(), s.lrmaxp_set());
                }
            }
        }
    }

    #[test]
    fn restricted_sort_matches_matching_sort() {
        let rr = r(&[2, 3, 3]);
        let want = matching::sor(&f_r(&p("213"), &rr).unwrap(), &f_r(&p("132"), &rr).unwrap()).unwrap();
        assert_eq!(sor_r(&p("213"), &p("132"), &rr).unwrap(), want);
        for n in 0..=4 {
            for rr in RestrictionSequence::enumerate(n) {
                let class = enumerate_sr(&rr);
                for s0 in &class {
                    let m0 = f_r(s0, &rr).unwrap();
                    for s in &class {
                        let m = f_r(s, &rr).unwrap();
                        let t = sort_restricted(s, s0, &rr).unwrap();
                        let mt = matching::sort_matching(&m, &m0).unwrap();
                        assert_eq!(t.steps, mt.steps, "{s} {s0} {rr}");
                        let cyc = s.compose(&s0.inverse()).unwrap().cyc_min_set();
                        assert_eq!(cyc.relabel(), matching::cyc_set(&m, &m0).unwrap());
                    }
                    assert_eq!(sor_r(s0, s0, &rr).unwrap(), 0);
                }
                for s in &class {
                    assert_eq!(sor_r(s, &Permutation::identity(n), &rr).unwrap(), s.sor());
                }
            }
        }
    }
}
