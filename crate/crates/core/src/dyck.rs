//! Dyck paths, their rise heights, restriction sequences and weight vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

/// A lattice path of `n` rises and `n` falls that never goes below the axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, s) in steps.iter().enumerate() {
            height += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if height < 0 {
                return Err(Error::InvalidDyckPath(format!("goes below the axis at step {}", i + 1)));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyckPath(format!("ends at height {height}")));
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// `U^n D^n`
    pub fn staircase(n: usize) -> Self {
        let mut steps = vec![Step::Up; n];
        steps.resize(2 * n, Step::Down);
        DyckPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Positions (1-based) of the rises, i.e. the openers of any matching of this type.
    pub fn rise_positions(&self) -> Vec<usize> {
        self.positions(Step::Up)
    }

    /// Positions (1-based) of the falls.
    pub fn fall_positions(&self) -> Vec<usize> {
        self.positions(Step::Down)
    }

    fn positions(&self, which: Step) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == which)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Height of the right endpoint of each rise, left to right.
    pub fn height_sequence(&self) -> Vec<usize> {
        let mut y = 0;
        let mut h = Vec::with_capacity(self.semilength());
        for s in &self.steps {
            match s {
                Step::Up => {
                    y += 1;
                    h.push(y);
                }
                Step::Down => y -= 1,
            }
        }
        h
    }

    /// Height of the upper endpoint of each fall, left to right.
    pub fn fall_heights(&self) -> Vec<usize> {
        let mut y = 0;
        let mut f = Vec::with_capacity(self.semilength());
        for s in &self.steps {
            match s {
                Step::Up => y += 1,
                Step::Down => {
                    f.push(y);
                    y -= 1;
                }
            }
        }
        f
    }

    /// The path whose `k`-th fall is preceded by exactly `r_k` rises.
    pub fn from_restriction(r: &RestrictionSequence) -> Self {
        let n = r.len();
        let mut steps = Vec::with_capacity(2 * n);
        let mut rises = 0;
        for &rk in r.as_slice() {
            while rises < rk {
                steps.push(Step::Up);
                rises += 1;
            }
            steps.push(Step::Down);
        }
        DyckPath { steps }
    }

    /// Number of rises before each fall; inverse of [`DyckPath::from_restriction`].
    pub fn restriction(&self) -> RestrictionSequence {
        let mut rises = 0;
        let mut r = Vec::with_capacity(self.semilength());
        for s in &self.steps {
            match s {
                Step::Up => rises += 1,
                Step::Down => r.push(rises),
            }
        }
        RestrictionSequence(r)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::Up),
                'D' | 'd' => Ok(Step::Down),
                other => Err(Error::InvalidDyckPath(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A nondecreasing sequence `k <= r_k <= n`: the row lengths of a Ferrers board
/// that admits `n` non-attacking rooks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct RestrictionSequence(Vec<usize>);

impl RestrictionSequence {
    pub fn new(r: Vec<usize>) -> Result<Self> {
        let n = r.len();
        for (i, &rk) in r.iter().enumerate() {
            if rk > n {
                return Err(Error::InvalidRestriction { r, reason: "entry exceeds n" });
            }
            if rk < i + 1 {
                return Err(Error::InvalidRestriction { r, reason: "r_k < k leaves no placements" });
            }
            if i > 0 && r[i - 1] > rk {
                return Err(Error::InvalidRestriction { r, reason: "not nondecreasing" });
            }
        }
        Ok(RestrictionSequence(r))
    }

    /// `(n, n, ..., n)`: the unrestricted board.
    pub fn full(n: usize) -> Self {
        RestrictionSequence(vec![n; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `r_k`, 1-based.
    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// Every valid sequence of length `n`, in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<RestrictionSequence> {
        fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<RestrictionSequence>) {
            let k = cur.len() + 1;
            if k > n {
                out.push(RestrictionSequence(cur.clone()));
                return;
            }
            let lo = cur.last().copied().unwrap_or(1).max(k);
            for v in lo..=n {
                cur.push(v);
                go(n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for RestrictionSequence {
    type Error = Error;
    fn try_from(r: Vec<usize>) -> Result<Self> {
        RestrictionSequence::new(r)
    }
}

impl From<RestrictionSequence> for Vec<usize> {
    fn from(r: RestrictionSequence) -> Self {
        r.0
    }
}

impl fmt::Display for RestrictionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for RestrictionSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RestrictionSequence::new(parse_list(s)?)
    }
}

/// Weights `1 <= w_k <= h_k` attached to the rises of a Dyck path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<usize>);

impl WeightVector {
    pub fn new(w: Vec<usize>, heights: &[usize]) -> Result<Self> {
        let ok = w.len() == heights.len() && w.iter().zip(heights).all(|(&wk, &hk)| (1..=hk).contains(&wk));
        if ok {
            Ok(WeightVector(w))
        } else {
            Err(Error::IncompatibleWeights { w, h: heights.to_vec() })
        }
    }

    pub(crate) fn from_vec_unchecked(w: Vec<usize>) -> Self {
        WeightVector(w)
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `w_k`, 1-based.
    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// The word `(2 - w_1, 3 - w_2, ..., n + 1 - w_n)`.
    pub fn shifted_word(&self) -> Vec<usize> {
        self.0.iter().enumerate().map(|(i, &w)| i + 2 - w).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Parses `"1,2,3"`, `"[1, 2, 3]"` or `"123"` (single digits only).
pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.contains(' ') {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
            .collect()
    }
}

/// All Dyck paths of semilength `n` in lexicographic order with `U < D`.
pub fn enumerate_dyck(n: usize) -> DyckPaths {
    DyckPaths { next: Some(DyckPath::staircase(n)) }
}

pub struct DyckPaths {
    next: Option<DyckPath>,
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(current)
    }
}

// Rightmost U that can become D while staying nonnegative; the suffix is then
// refilled as U...UD...D, which is the smallest completion.
fn successor(path: &DyckPath) -> Option<DyckPath> {
    let steps = &path.steps;
    let n = path.semilength();
    let mut prefix_height = vec![0i64; steps.len() + 1];
    for (i, s) in steps.iter().enumerate() {
        prefix_height[i + 1] = prefix_height[i] + if *s == Step::Up { 1 } else { -1 };
    }
    for i in (0..steps.len()).rev() {
        if steps[i] == Step::Up && prefix_height[i] >= 1 {
            let mut next = steps[..i].to_vec();
            next.push(Step::Down);
            let ups_used = next.iter().filter(|&&s| s == Step::Up).count();
            next.extend(std::iter::repeat_n(Step::Up, n - ups_used));
            next.resize(2 * n, Step::Down);
            return Some(DyckPath { steps: next });
        }
    }
    None
}

/// All weight vectors of `path` in lexicographic order (last entry fastest).
pub fn enumerate_weights(path: &DyckPath) -> Weights {
    let heights = path.height_sequence();
    let n = heights.len();
    Weights { heights, next: Some(vec![1; n]) }
}

pub struct Weights {
    heights: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Weights {
    type Item = WeightVector;

    fn next(&mut self) -> Option<WeightVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if succ[i] < self.heights[i] {
                succ[i] += 1;
                break Some(succ);
            }
            succ[i] = 1;
        };
        Some(WeightVector(current))
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    // Independent tracer: walk the string, record y after every U.
    fn trace_rise_heights(s: &str) -> Vec<usize> {
        let mut y = 0i32;
        let mut out = vec![];
        for c in s.chars() {
            if c == 'U' {
                y += 1;
                out.push(y as usize);
            } else {
                y -= 1;
            }
        }
        out
    }

    fn trace_fall_heights(s: &str) -> Vec<usize> {
        let mut y = 0i32;
        let mut out = vec![];
        for c in s.chars() {
            if c == 'U' {
                y += 1;
            } else {
                out.push(y as usize);
                y -= 1;
            }
        }
        out
    }

    #[test]
    fn rejects_invalid_paths() {
        assert!("DU".parse::<DyckPath>().is_err());
        assert!("UUD".parse::<DyckPath>().is_err());
        assert!("UXD".parse::<DyckPath>().is_err());
        assert_eq!(p("").semilength(), 0);
    }

    #[test]
    fn height_sequence_examples() {
        assert_eq!(trace_rise_heights("UUDDUD"), vec![1, 2, 1]);
        assert_eq!(p("UUDDUD").height_sequence(), vec![1, 2, 1]);
        assert_eq!(DyckPath::staircase(4).height_sequence(), vec![1, 2, 3, 4]);
        // h_{k+1} = h_k + 1 - (#falls between rise k and k+1) reconstructs this string
        assert_eq!(p("UUUDUDUUDDDD").height_sequence(), vec![1, 2, 3, 3, 3, 4]);
    }

    #[test]
    fn fall_height_examples() {
        assert_eq!(DyckPath::staircase(3).fall_heights(), vec![3, 2, 1]);
        assert_eq!(trace_fall_heights("UUDDUD"), vec![2, 1, 1]);
        assert_eq!(p("UUDDUD").fall_heights(), vec![2, 1, 1]);
        let r = RestrictionSequence::new(vec![2, 2, 3]).unwrap();
        assert_eq!(DyckPath::from_restriction(&r).fall_heights(), vec![2, 1, 1]);
    }

    // Brute-force oracle: scan all paths for the one whose k-th fall has r_k rises before it.
    fn restriction_oracle(r: &[usize]) -> String {
        enumerate_all_strings(r.len())
            .into_iter()
            .find(|s| {
                let mut rises = 0;
                let mut seen = vec![];
                for c in s.chars() {
                    if c == 'U' {
                        rises += 1
                    } else {
                        seen.push(rises)
                    }
                }
                seen == r
            })
            .unwrap()
    }

    fn enumerate_all_strings(n: usize) -> Vec<String> {
        (0..1u32 << (2 * n))
            .map(|mask| (0..2 * n).map(|i| if mask >> (2 * n - 1 - i) & 1 == 0 { 'U' } else { 'D' }).collect::<String>())
            .filter(|s| s.parse::<DyckPath>().is_ok())
            .collect()
    }

    #[test]
    fn restriction_examples() {
        let r = |v: Vec<usize>| RestrictionSequence::new(v).unwrap();
        assert_eq!(DyckPath::from_restriction(&r(vec![3, 3, 3])), DyckPath::staircase(3));
        assert_eq!(restriction_oracle(&[1, 2, 3]), "UDUDUD");
        assert_eq!(DyckPath::from_restriction(&r(vec![1, 2, 3])).to_string(), "UDUDUD");
        assert_eq!(restriction_oracle(&[2, 2, 3]), "UUDDUD");
        assert_eq!(DyckPath::from_restriction(&r(vec![2, 2, 3])).to_string(), "UUDDUD");
        assert_eq!(p("UDUDUD").restriction().as_slice(), &[1, 2, 3]);
        assert_eq!(p("UUUDDD").restriction().as_slice(), &[3, 3, 3]);
        assert_eq!(p("UUDDUD").restriction().as_slice(), &[2, 2, 3]);
    }

    #[test]
    fn restriction_validation() {
        assert!(RestrictionSequence::new(vec![1, 1]).is_err());
        assert!(RestrictionSequence::new(vec![2, 1]).is_err());
        assert!(RestrictionSequence::new(vec![3, 3]).is_err());
        assert!(RestrictionSequence::new(vec![]).is_ok());
        assert!("2,2,3".parse::<RestrictionSequence>().is_ok());
        assert!(serde_json::from_str::<RestrictionSequence>("[2,1]").is_err());
    }

    #[test]
    fn restriction_sequences_are_counted_by_catalan() {
        for n in 0..=6 {
            assert_eq!(RestrictionSequence::enumerate(n).len() as u64, catalan(n));
        }
        assert_eq!(RestrictionSequence::enumerate(4).len(), 14);
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_dyck(0).count(), 1);
        assert_eq!(enumerate_dyck(0).next().unwrap(), DyckPath::empty());
        assert_eq!(enumerate_dyck(3).count(), 5);
        assert_eq!(enumerate_dyck(5).count(), 42);
        for n in 0..=6 {
            let paths: Vec<String> = enumerate_dyck(n).map(|d| d.to_string()).collect();
            assert_eq!(paths, enumerate_all_strings(n), "n={n}");
        }
    }

    #[test]
    fn weight_enumeration() {
        let ws: Vec<Vec<usize>> = enumerate_weights(&p("UD")).map(|w| w.0).collect();
        assert_eq!(ws, vec![vec![1]]);
        let ws: Vec<Vec<usize>> = enumerate_weights(&p("UUDD")).map(|w| w.0).collect();
        assert_eq!(ws, vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(enumerate_weights(&DyckPath::staircase(3)).count(), 6);
        assert_eq!(enumerate_weights(&DyckPath::empty()).count(), 1);
    }

    #[test]
    fn dyck_invariants_up_to_six() {
        for n in 0..=6 {
            for d in enumerate_dyck(n) {
                let mut h = d.height_sequence();
                let mut f = d.fall_heights();
                h.sort();
                f.sort();
                assert_eq!(h, f, "{d}");
                let prod: usize = d.height_sequence().iter().product();
                assert_eq!(enumerate_weights(&d).count(), prod);
                let r = d.restriction();
                assert!(RestrictionSequence::new(r.as_slice().to_vec()).is_ok());
                assert_eq!(DyckPath::from_restriction(&r), d);
                for (k, fh) in d.fall_heights().iter().enumerate() {
                    assert_eq!(*fh, r.get(k + 1) - (k + 1) + 1);
                }
            }
        }
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![1, 3], &[1, 2]).is_err());
        assert!(WeightVector::new(vec![1], &[1, 2]).is_err());
        assert_eq!(WeightVector::new(vec![1, 2], &[1, 2]).unwrap().shifted_word(), vec![1, 1]);
    }
}
