//! Matchings whose edges are colored red or blue.
//!
//! Colors are bits (red = 0, blue = 1) so that recoloring during the sort and
//! the color sums along alternating paths are plain XORs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyck::{DyckPath, WeightVector};
use crate::error::{Error, Result};
use crate::matching::{self, candidates, follow_alternating, sor_step_count, Matching};
use crate::sets::{IndexSet, OpenerRanks};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red = 0,
    Blue = 1,
}

impl Color {
    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(b: u8) -> Color {
        if b & 1 == 0 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    pub fn is_blue(self) -> bool {
        self == Color::Blue
    }
}

impl std::ops::BitXor for Color {
    type Output = Color;
    fn bitxor(self, rhs: Color) -> Color {
        Color::from_bit(self.bit() ^ rhs.bit())
    }
}

/// `(ε_1, ..., ε_n)` with `ε_k = 0` for a red rise and `1` for a blue one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorVector(Vec<u8>);

impl ColorVector {
    pub fn new(eps: Vec<u8>) -> Result<Self> {
        if let Some(bad) = eps.iter().find(|&&e| e > 1) {
            return Err(Error::Parse(format!("color bit {bad} is not 0 or 1")));
        }
        Ok(ColorVector(eps))
    }

    pub fn zeros(n: usize) -> Self {
        ColorVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ε_k`, 1-based.
    pub fn get(&self, k: usize) -> Color {
        Color::from_bit(self.0[k - 1])
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// All `2^n` vectors in lexicographic order.
    pub fn enumerate(n: usize) -> impl Iterator<Item = ColorVector> {
        (0..1u64 << n).map(move |mask| ColorVector((0..n).map(|i| ((mask >> (n - 1 - i)) & 1) as u8).collect()))
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::dyck::write_list(f, &self.0)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BicoloredMatching {
    base: Matching,
    // colors[k - 1] is the color of the edge at o_k
    colors: Vec<Color>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RefinedCounts {
    pub cr_red: usize,
    pub cr_blue: usize,
    pub ne_red: usize,
    pub ne_blue: usize,
    pub al_red: usize,
    pub al_blue: usize,
    pub blue: usize,
}

impl BicoloredMatching {
    /// `colors[k - 1]` colors the edge at opener `o_k`.
    pub fn new(base: Matching, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != base.n() {
            return Err(Error::ColorLength { got: colors.len(), expected: base.n() });
        }
        Ok(BicoloredMatching { base, colors })
    }

    pub fn all_red(base: Matching) -> Self {
        let n = base.n();
        BicoloredMatching { base, colors: vec![Color::Red; n] }
    }

    pub fn base(&self) -> &Matching {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of the edge at opener rank `k`.
    pub fn color_at(&self, k: usize) -> Color {
        self.colors[k - 1]
    }

    /// `col(v, M)`: color of the edge incident with vertex `v`.
    pub fn col(&self, v: usize) -> Color {
        let o = v.min(self.base.mate(v));
        self.colors[self.base.opener_rank(o).expect("smaller endpoint is an opener") - 1]
    }

    pub fn blue_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_blue()).count()
    }

    pub fn is_all_red(&self) -> bool {
        self.blue_count() == 0
    }

    /// Edges `(o, c, color)` sorted by opener.
    pub fn edges(&self) -> Vec<(usize, usize, Color)> {
        self.base.edges().into_iter().zip(&self.colors).map(|((o, c), &col)| (o, c, col)).collect()
    }

    pub fn type_of(&self) -> DyckPath {
        self.base.type_of()
    }

    /// Relations counted by the color of the right (larger-opener) arc.
    pub fn refined_counts(&self) -> RefinedCounts {
        let edges = self.edges();
        let mut r = RefinedCounts { blue: self.blue_count(), ..Default::default() };
        for (i, &(_, b, _)) in edges.iter().enumerate() {
            for &(c, d, right) in &edges[i + 1..] {
                let blue = right.is_blue();
                let slot = if b < c {
                    if blue { &mut r.al_blue } else { &mut r.al_red }
                } else if d < b {
                    if blue { &mut r.ne_blue } else { &mut r.ne_red }
                } else if blue {
                    &mut r.cr_blue
                } else {
                    &mut r.cr_red
                };
                *slot += 1;
            }
        }
        r
    }

    /// `ne + 2 cr_{*b} + 2 al_{*b} + b`
    pub fn mix(&self) -> usize {
        self.mix_prime() + self.blue_count()
    }

    /// `ne + 2 cr_{*b} + 2 al_{*b}`
    pub fn mix_prime(&self) -> usize {
        let r = self.refined_counts();
        r.ne_red + r.ne_blue + 2 * r.cr_blue + 2 * r.al_blue
    }

    /// Opener ranks of red edges not nested within any other edge.
    pub fn longr_set(&self) -> IndexSet<OpenerRanks> {
        (1..=self.n())
            .filter(|&k| !self.color_at(k).is_blue() && self.base.nestings_as_right_arc(k) == 0)
            .collect()
    }

    /// `Longr \ {1}`
    pub fn longr_prime_set(&self) -> IndexSet<OpenerRanks> {
        self.longr_set().without_one()
    }
}

impl fmt::Debug for BicoloredMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BicoloredMatching({self})")
    }
}

impl fmt::Display for BicoloredMatching {
    /// `1-4r,2-3b`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, c, col)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{o}-{c}{}", if col.is_blue() { 'b' } else { 'r' })?;
        }
        Ok(())
    }
}

impl FromStr for BicoloredMatching {
    type Err = Error;

    /// Accepts `1-4r,2-3b` (missing suffix means red) or the JSON form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') || s.starts_with('[') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let mut edges = Vec::new();
        if !s.is_empty() {
            for e in s.split(',') {
                let e = e.trim();
                let (body, color) = match e.chars().last() {
                    Some('b') | Some('B') => (&e[..e.len() - 1], Color::Blue),
                    Some('r') | Some('R') => (&e[..e.len() - 1], Color::Red),
                    _ => (e, Color::Red),
                };
                let (a, b) = body.split_once('-').ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
                let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
                let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
                edges.push((a.min(b), a.max(b), color));
            }
        }
        from_colored_edges(edges)
    }
}

fn from_colored_edges(mut edges: Vec<(usize, usize, Color)>) -> Result<BicoloredMatching> {
    let base = Matching::from_edges(&edges.iter().map(|&(a, b, _)| (a, b)).collect::<Vec<_>>())?;
    for e in &mut edges {
        if e.0 > e.1 {
            std::mem::swap(&mut e.0, &mut e.1);
        }
    }
    edges.sort();
    let colors = edges.into_iter().map(|(_, _, c)| c).collect();
    BicoloredMatching::new(base, colors)
}

#[derive(Serialize, Deserialize)]
struct BicoloredJson {
    edges: Vec<(usize, usize, String)>,
}

impl Serialize for BicoloredMatching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges = self
            .edges()
            .into_iter()
            .map(|(o, c, col)| (o, c, if col.is_blue() { "b" } else { "r" }.to_string()))
            .collect();
        BicoloredJson { edges }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BicoloredMatching {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BicoloredJson::deserialize(deserializer)?;
        let edges = raw
            .edges
            .into_iter()
            .map(|(a, b, c)| match c.as_str() {
                "r" => Ok((a, b, Color::Red)),
                "b" => Ok((a, b, Color::Blue)),
                other => Err(serde::de::Error::custom(format!("unknown color {other:?}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        from_colored_edges(edges).map_err(serde::de::Error::custom)
    }
}

/// Connects openers right to left: a red `o_k` takes the `w_k`-th free closer
/// to its right counted from the right, a blue one the `(h_k - w_k + 1)`-st.
pub fn varphi2(d: &DyckPath, w: &WeightVector, eps: &ColorVector) -> Result<BicoloredMatching> {
    let h = d.height_sequence();
    WeightVector::new(w.as_slice().to_vec(), &h)?;
    if eps.len() != h.len() {
        return Err(Error::ColorLength { got: eps.len(), expected: h.len() });
    }
    let flipped: Vec<usize> = (1..=h.len())
        .map(|k| if eps.get(k).is_blue() { h[k - 1] - w.get(k) + 1 } else { w.get(k) })
        .collect();
    let base = matching::varphi1(d, &WeightVector::from_vec_unchecked(flipped))?;
    let colors = (1..=h.len()).map(|k| eps.get(k)).collect();
    BicoloredMatching::new(base, colors)
}

/// Inverse of [`varphi2`]: a red edge at `o_k` is the right arc of `w_k - 1`
/// nestings, a blue one of `h_k - w_k`.
pub fn varphi2_inv(m: &BicoloredMatching) -> (DyckPath, WeightVector, ColorVector) {
    let d = m.type_of();
    let h = d.height_sequence();
    let mut w = Vec::with_capacity(m.n());
    let mut eps = Vec::with_capacity(m.n());
    for k in 1..=m.n() {
        let nest = m.base.nestings_as_right_arc(k);
        let col = m.color_at(k);
        eps.push(col.bit());
        w.push(if col.is_blue() { h[k - 1] - nest } else { nest + 1 });
    }
    (d, WeightVector::from_vec_unchecked(w), ColorVector(eps))
}

/// Sorting trace with recoloring.
#[derive(Debug, Clone)]
pub struct BicoloredSortTrace {
    /// `states[k - 1]` is `M_k`.
    pub states: Vec<BicoloredMatching>,
    /// `steps[k - 1]` is `sor_k(M, M_0)`.
    pub steps: Vec<usize>,
    /// `processed[k - 1]` is `col(o_k, M_k)`.
    pub processed: Vec<Color>,
}

impl BicoloredSortTrace {
    pub fn sor(&self) -> usize {
        self.steps.iter().sum()
    }

    /// `Σ_{k >= 2} sor'_k`, where a blue step counts one less.
    pub fn sor_prime(&self) -> usize {
        (2..=self.steps.len()).map(|k| self.steps[k - 1] - self.processed[k - 1].bit() as usize).sum()
    }

    pub fn state(&self, k: usize) -> &BicoloredMatching {
        &self.states[k - 1]
    }
}

fn require_base(m: &BicoloredMatching, m0: &BicoloredMatching) -> Result<()> {
    m.base.require_same_type(&m0.base)?;
    if !m0.is_all_red() {
        return Err(Error::BaseNotRed);
    }
    Ok(())
}

/// Sorts `m` toward the all-red `m0`, recoloring the two swapped edges by the
/// color of the edge being processed.
pub fn sort_bicolored(m: &BicoloredMatching, m0: &BicoloredMatching) -> Result<BicoloredSortTrace> {
    require_base(m, m0)?;
    let n = m.n();
    let mut states = vec![m.clone(); n];
    let mut steps = vec![0; n];
    let mut processed = vec![Color::Red; n];
    let mut cur = m.clone();
    for k in (1..=n).rev() {
        states[k - 1] = cur.clone();
        let o = cur.base.opener(k);
        let here = cur.base.mate(o);
        let target = m0.base.mate(o);
        let col = cur.color_at(k);
        processed[k - 1] = col;
        let count = sor_step_count(&m0.base, o, here, target);
        steps[k - 1] = if col.is_blue() { 2 * k - 1 - count } else { count };
        if here == target {
            cur.colors[k - 1] = Color::Red;
        } else {
            let other = cur.base.mate(target);
            let other_rank = cur.base.opener_rank(other).expect("M_k(M_0(o_k)) is an opener");
            cur.base = cur.base.reconnect(o, target);
            cur.colors[k - 1] = Color::Red;
            cur.colors[other_rank - 1] = cur.colors[other_rank - 1] ^ col;
        }
    }
    debug_assert!(n == 0 || cur == *m0);
    Ok(BicoloredSortTrace { states, steps, processed })
}

/// `sor(M, M_0)` for bicolored `M` and all-red `M_0`.
pub fn sor_bicolored(m: &BicoloredMatching, m0: &BicoloredMatching) -> Result<usize> {
    Ok(sort_bicolored(m, m0)?.sor())
}

/// `sor'(M, M_0)`
pub fn sor_prime(m: &BicoloredMatching, m0: &BicoloredMatching) -> Result<usize> {
    Ok(sort_bicolored(m, m0)?.sor_prime())
}

/// `(Cyc_0, Cyc_1)`: minimal-opener ranks of the cycles of `(M, M_0)` with an
/// even, respectively odd, number of blue edges.
pub fn cyc01_sets(
    m: &BicoloredMatching,
    m0: &BicoloredMatching,
) -> Result<(IndexSet<OpenerRanks>, IndexSet<OpenerRanks>)> {
    require_base(m, m0)?;
    let mut even = IndexSet::empty();
    let mut odd = IndexSet::empty();
    for cycle in matching::cycles(&m.base, &m0.base)? {
        // cycle alternates v, M(v), M_0(M(v)), ...: M-edges start at even indices
        let blue = cycle.chunks(2).filter(|e| m.col(e[0]).is_blue()).count();
        let k = m.base.opener_rank(cycle[0]).expect("cycle minimum is an opener");
        if blue % 2 == 0 {
            even.insert(k);
        } else {
            odd.insert(k);
        }
    }
    Ok((even, odd))
}

/// `(Cyc_0 \ {1}, Cyc_1 \ {1})`
pub fn cyc01_prime_sets(
    m: &BicoloredMatching,
    m0: &BicoloredMatching,
) -> Result<(IndexSet<OpenerRanks>, IndexSet<OpenerRanks>)> {
    let (a, b) = cyc01_sets(m, m0)?;
    Ok((a.without_one(), b.without_one()))
}

/// The bijection `(w, ε) -> M` relative to the all-red base `m0` with
/// `sor(M, M_0) = Σ (w_k + ε_k (2k - h_k) - 1)`.
pub fn phi2(m0: &BicoloredMatching, w: &WeightVector, eps: &ColorVector) -> Result<BicoloredMatching> {
    if !m0.is_all_red() {
        return Err(Error::BaseNotRed);
    }
    let base0 = &m0.base;
    let h = base0.type_of().height_sequence();
    WeightVector::new(w.as_slice().to_vec(), &h)?;
    if eps.len() != h.len() {
        return Err(Error::ColorLength { got: eps.len(), expected: h.len() });
    }
    let n = base0.n();
    let mut upper = vec![0; 2 * n];
    let mut upper_color = vec![Color::Red; 2 * n + 1];
    for k in (1..=n).rev() {
        let o = base0.opener(k);
        let e = eps.get(k);
        let pick = if e.is_blue() { h[k - 1] - w.get(k) + 1 } else { w.get(k) };
        let first_choice = candidates(base0, k)[pick - 1];
        let (c, traversed) = follow_alternating(&upper, base0, first_choice);
        let color = traversed.iter().fold(e, |acc, &t| acc ^ upper_color[t]);
        upper[o - 1] = c;
        upper[c - 1] = o;
        upper_color[o] = color;
    }
    let base = Matching::from_partner_unchecked(upper);
    let colors = base.openers().iter().map(|&o| upper_color[o]).collect();
    BicoloredMatching::new(base, colors)
}

/// `ε_k = col(o_k, M_k)`, `w_k = sor_k + 1 - ε_k (2k - h_k)`.
pub fn phi2_inv(m0: &BicoloredMatching, m: &BicoloredMatching) -> Result<(WeightVector, ColorVector)> {
    let trace = sort_bicolored(m, m0)?;
    let h = m0.type_of().height_sequence();
    let mut w = Vec::with_capacity(m.n());
    let mut eps = Vec::with_capacity(m.n());
    for k in 1..=m.n() {
        let col = trace.processed[k - 1];
        eps.push(col.bit());
        let s = trace.steps[k - 1] + 1;
        w.push(if col.is_blue() { s + h[k - 1] - 2 * k } else { s });
    }
    Ok((WeightVector::from_vec_unchecked(w), ColorVector(eps)))
}

/// All bicolored matchings of type `d`: each matching of type `d` with its
/// colorings in lexicographic order (first opener most significant).
pub fn enumerate_bicolored(d: &DyckPath) -> impl Iterator<Item = BicoloredMatching> + '_ {
    let n = d.semilength();
    matching::enumerate_matchings(d).flat_map(move |m| {
        ColorVector::enumerate(n).map(move |eps| BicoloredMatching {
            base: m.clone(),
            colors: eps.0.iter().map(|&b| Color::from_bit(b)).collect(),
        })
    })
}

/// Bicolored matchings of type `d` with an even number of blue edges.
pub fn enumerate_bicolored_even(d: &DyckPath) -> impl Iterator<Item = BicoloredMatching> + '_ {
    enumerate_bicolored(d).filter(|m| m.blue_count() % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::{enumerate_dyck, enumerate_weights};

    fn bm(s: &str) -> BicoloredMatching {
        s.parse().unwrap()
    }
    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }
    fn w(v: &[usize]) -> WeightVector {
        WeightVector::from_vec_unchecked(v.to_vec())
    }
    fn e(v: &[u8]) -> ColorVector {
        ColorVector(v.to_vec())
    }

    #[test]
    fn parsing_and_json() {
        let x = bm("1-4r,2-3b");
        assert_eq!(x.to_string(), "1-4r,2-3b");
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"edges":[[1,4,"r"],[2,3,"b"]]}"#);
        assert_eq!(bm(r#"{"edges":[[2,3,"b"],[1,4,"r"]]}"#), x);
        assert!(r#"{"edges":[[1,2,"g"]]}"#.parse::<BicoloredMatching>().is_err());
        assert_eq!(x.col(3), Color::Blue);
        assert_eq!(x.col(4), Color::Red);
    }

    #[test]
    fn refined_count_examples() {
        let r = bm("1-4r,2-3r").refined_counts();
        assert_eq!((r.cr_blue, r.ne_blue, r.al_blue, r.blue), (0, 0, 0, 0));
        let r = bm("1-4r,2-3b").refined_counts();
        assert_eq!(r, RefinedCounts { ne_blue: 1, blue: 1, ..Default::default() });
        let r = bm("1-3b,2-4r").refined_counts();
        assert_eq!(r, RefinedCounts { cr_red: 1, blue: 1, ..Default::default() });
    }

    #[test]
    fn mix_examples() {
        assert_eq!(bm("1-4r,2-3r").mix(), 1);
        assert_eq!(bm("1-4r,2-3b").mix(), 2);
        assert_eq!(bm("1-3b,2-4b").mix(), 4);
        for x in enumerate_bicolored(&d("UUUDDD")) {
            assert_eq!(x.mix(), x.mix_prime() + x.blue_count());
        }
    }

    #[test]
    fn longr_examples() {
        assert_eq!(bm("1-3r,2-4r").longr_set().to_vec(), vec![1, 2]);
        assert_eq!(bm("1-4r,2-3r").longr_set().to_vec(), vec![1]);
        assert!(bm("1-4r,2-3r").longr_prime_set().is_empty());
        assert!(bm("1-4b,2-3r").longr_set().is_empty());
    }

    #[test]
    fn varphi2_examples() {
        let dd = d("UUDD");
        assert_eq!(varphi2(&dd, &w(&[1, 2]), &e(&[0, 0])).unwrap(), bm("1-4r,2-3r"));
        assert_eq!(varphi2(&dd, &w(&[1, 1]), &e(&[0, 1])).unwrap(), bm("1-4r,2-3b"));
        assert_eq!(varphi2_inv(&bm("1-4r,2-3b")), (dd.clone(), w(&[1, 1]), e(&[0, 1])));
        assert_eq!(varphi2_inv(&bm("1-4r,2-3r")), (dd.clone(), w(&[1, 2]), e(&[0, 0])));
        assert_eq!(varphi2_inv(&bm("1-2b")), (d("UD"), w(&[1]), e(&[1])));
        for n in 0..=4 {
            for dd in enumerate_dyck(n) {
                for wv in enumerate_weights(&dd) {
                    for eps in ColorVector::enumerate(n) {
                        let x = varphi2(&dd, &wv, &eps).unwrap();
                        assert_eq!(varphi2_inv(&x), (dd.clone(), wv.clone(), eps));
                    }
                }
            }
        }
    }

    #[test]
    fn sort_examples() {
        let m0 = bm("1-2r");
        let t = sort_bicolored(&bm("1-2b"), &m0).unwrap();
        assert_eq!(t.processed, vec![Color::Blue]);
        // count over [2, 2] with M_0(c) < 1 is empty; blue gives 2*1 - 1 - 0
        assert_eq!(t.steps, vec![1]);
        assert_eq!(sor_bicolored(&bm("1-2b"), &m0).unwrap(), 1);
        assert!(sort_bicolored(&bm("1-2r"), &bm("1-2b")).is_err());
        let (c0, c1) = cyc01_sets(&bm("1-2b"), &m0).unwrap();
        assert!(c0.is_empty());
        assert_eq!(c1.to_vec(), vec![1]);
    }

    #[test]
    fn sort_reaches_red_base() {
        for n in 0..=3 {
            for dd in enumerate_dyck(n) {
                for base in matching::enumerate_matchings(&dd) {
                    let m0 = BicoloredMatching::all_red(base);
                    for x in enumerate_bicolored(&dd) {
                        let t = sort_bicolored(&x, &m0).unwrap();
                        if n > 0 {
                            // one more step from M_1 lands on M_0
                            let mut last = t.state(1).clone();
                            let o = last.base.opener(1);
                            assert_eq!(last.base.mate(o), m0.base.mate(o));
                            last.colors[0] = Color::Red;
                            assert_eq!(last, m0);
                        }
                        let (c0, c1) = cyc01_sets(&x, &m0).unwrap();
                        assert!(c0.is_disjoint(&c1));
                        assert_eq!(c0.union(&c1), matching::cyc_set(&x.base, &m0.base).unwrap());
                        if x.is_all_red() {
                            assert_eq!(t.sor(), matching::sor(&x.base, &m0.base).unwrap());
                            if n > 0 {
                                assert_eq!(t.steps[0], 0);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi2_examples() {
        let m0 = bm("1-3r,2-4r");
        assert_eq!(phi2(&m0, &w(&[1, 2]), &e(&[0, 0])).unwrap(), bm("1-4r,2-3r"));
        assert_eq!(phi2(&m0, &w(&[1, 1]), &e(&[0, 0])).unwrap(), m0);
        let one = bm("1-2r");
        let x = phi2(&one, &w(&[1]), &e(&[1])).unwrap();
        assert_eq!(x, bm("1-2b"));
        assert_eq!(sor_bicolored(&x, &one).unwrap(), 1);
        assert_eq!(phi2_inv(&one, &x).unwrap(), (w(&[1]), e(&[1])));
        assert!(phi2(&bm("1-2b"), &w(&[1]), &e(&[0])).is_err());
    }

    #[test]
    fn phi2_properties_exhaustive() {
        for n in 0..=4 {
            for dd in enumerate_dyck(n) {
                let h = dd.height_sequence();
                for base in matching::enumerate_matchings(&dd) {
                    let m0 = BicoloredMatching::all_red(base);
                    let mut seen = std::collections::BTreeSet::new();
                    for wv in enumerate_weights(&dd) {
                        for eps in ColorVector::enumerate(n) {
                            let x = phi2(&m0, &wv, &eps).unwrap();
                            let t = sort_bicolored(&x, &m0).unwrap();
                            let expect: usize = (1..=n)
                                .map(|k| wv.get(k) + eps.get(k).bit() as usize * (2 * k - h[k - 1]) - 1)
                                .sum();
                            assert_eq!(t.sor(), expect, "{x} w={wv} eps={eps}");
                            let (c0, c1) = cyc01_sets(&x, &m0).unwrap();
                            let want0: IndexSet<OpenerRanks> =
                                (1..=n).filter(|&k| wv.get(k) == 1 && !eps.get(k).is_blue()).collect();
                            let want1: IndexSet<OpenerRanks> =
                                (1..=n).filter(|&k| wv.get(k) == h[k - 1] && eps.get(k).is_blue()).collect();
                            assert_eq!((c0, c1), (want0, want1));
                            assert_eq!(phi2_inv(&m0, &x).unwrap(), (wv.clone(), eps.clone()));
                            seen.insert(x);
                        }
                    }
                    assert_eq!(seen.len(), enumerate_bicolored(&dd).count());
                }
            }
        }
    }

    #[test]
    fn sor_prime_examples() {
        let m0 = BicoloredMatching::all_red(Matching::nonnesting(&d("UUDD")));
        let x = bm("1-3b,2-4b");
        let t = sort_bicolored(&x, &m0).unwrap();
        assert_eq!(t.sor_prime(), t.steps[1] - 1);
        let red = bm("1-4r,2-3r");
        assert_eq!(sor_prime(&red, &m0).unwrap(), sor_bicolored(&red, &m0).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_bicolored(&d("UD")).count(), 2);
        assert_eq!(enumerate_bicolored_even(&d("UD")).count(), 1);
        assert_eq!(enumerate_bicolored(&d("UUDD")).count(), 8);
    }
}
