//! Perfect matchings on `[2n]`: crossings, nestings and alignments, the
//! weighted-Dyck-path bijection, and sorting a matching toward a base
//! matching of the same type.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyck::{enumerate_weights, DyckPath, Step, WeightVector};
use crate::error::{Error, Result};
use crate::sets::{CloserRanks, IndexSet, OpenerRanks};

/// A fixed-point-free involution on `1..=2n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    // partner[v - 1] is the vertex matched with v
    partner: Vec<usize>,
    openers: Vec<usize>,
    closers: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ArcRelationCounts {
    pub cr: usize,
    pub ne: usize,
    pub al: usize,
}

impl Matching {
    /// Builds a matching from its partner array, `partner[v - 1] = M(v)`.
    pub fn from_partner(partner: Vec<usize>) -> Result<Self> {
        let len = partner.len();
        if !len.is_multiple_of(2) {
            return Err(Error::InvalidMatching(format!("odd number of vertices {len}")));
        }
        for (i, &w) in partner.iter().enumerate() {
            let v = i + 1;
            if w == 0 || w > len {
                return Err(Error::InvalidMatching(format!("vertex {v} matched to {w}, outside 1..={len}")));
            }
            if w == v {
                return Err(Error::InvalidMatching(format!("vertex {v} is a fixed point")));
            }
            if partner[w - 1] != v {
                return Err(Error::InvalidMatching(format!("{v} -> {w} but {w} -> {}", partner[w - 1])));
            }
        }
        Ok(Self::from_partner_unchecked(partner))
    }

    pub(crate) fn from_partner_unchecked(partner: Vec<usize>) -> Self {
        let mut openers = Vec::with_capacity(partner.len() / 2);
        let mut closers = Vec::with_capacity(partner.len() / 2);
        for (i, &w) in partner.iter().enumerate() {
            if w > i + 1 {
                openers.push(i + 1);
            } else {
                closers.push(i + 1);
            }
        }
        Matching { partner, openers, closers }
    }

    /// Builds a matching from its arcs; each pair may be given in either order.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        let len = 2 * edges.len();
        let mut partner = vec![0; len];
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > len {
                    return Err(Error::InvalidMatching(format!("vertex {v} outside 1..={len}")));
                }
                if partner[v - 1] != 0 {
                    return Err(Error::InvalidMatching(format!("vertex {v} used twice")));
                }
            }
            if a == b {
                return Err(Error::InvalidMatching(format!("loop at {a}")));
            }
            partner[a - 1] = b;
            partner[b - 1] = a;
        }
        Matching::from_partner(partner)
    }

    /// Number of arcs.
    pub fn n(&self) -> usize {
        self.openers.len()
    }

    /// `M(v)`
    pub fn mate(&self, v: usize) -> usize {
        self.partner[v - 1]
    }

    pub fn openers(&self) -> &[usize] {
        &self.openers
    }

    pub fn closers(&self) -> &[usize] {
        &self.closers
    }

    /// `o_k`, 1-based.
    pub fn opener(&self, k: usize) -> usize {
        self.openers[k - 1]
    }

    /// `c_k`, 1-based.
    pub fn closer(&self, k: usize) -> usize {
        self.closers[k - 1]
    }

    pub fn is_opener(&self, v: usize) -> bool {
        self.mate(v) > v
    }

    /// `k` such that `v = o_k`.
    pub fn opener_rank(&self, v: usize) -> Option<usize> {
        self.openers.binary_search(&v).ok().map(|i| i + 1)
    }

    /// `k` such that `v = c_k`.
    pub fn closer_rank(&self, v: usize) -> Option<usize> {
        self.closers.binary_search(&v).ok().map(|i| i + 1)
    }

    /// Arcs `(o, c)` sorted by opener.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.openers.iter().map(|&o| (o, self.mate(o))).collect()
    }

    pub fn partner_array(&self) -> &[usize] {
        &self.partner
    }

    /// The Dyck path with a rise at every opener and a fall at every closer.
    pub fn type_of(&self) -> DyckPath {
        let steps = self
            .partner
            .iter()
            .enumerate()
            .map(|(i, &w)| if w > i + 1 { Step::Up } else { Step::Down })
            .collect();
        DyckPath::new(steps).expect("opener/closer pattern of a matching is a Dyck path")
    }

    pub fn same_type(&self, other: &Matching) -> bool {
        self.openers == other.openers && self.closers == other.closers
    }

    pub(crate) fn require_same_type(&self, other: &Matching) -> Result<()> {
        if self.same_type(other) {
            Ok(())
        } else {
            Err(Error::TypeMismatch(self.type_of().to_string(), other.type_of().to_string()))
        }
    }

    /// The unique nonnesting matching of type `d`: edges `o_k · c_k`.
    pub fn nonnesting(d: &DyckPath) -> Matching {
        let mut partner = vec![0; d.steps().len()];
        for (o, c) in d.rise_positions().into_iter().zip(d.fall_positions()) {
            partner[o - 1] = c;
            partner[c - 1] = o;
        }
        Matching::from_partner_unchecked(partner)
    }

    pub fn arc_relations(&self) -> ArcRelationCounts {
        let edges = self.edges();
        let mut counts = ArcRelationCounts::default();
        for (i, &(_, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                // a < c since edges are sorted by opener
                if b < c {
                    counts.al += 1;
                } else if d < b {
                    counts.ne += 1;
                } else {
                    counts.cr += 1;
                }
            }
        }
        counts
    }

    pub fn ne(&self) -> usize {
        self.arc_relations().ne
    }

    /// Number of nestings in which the arc at `o_k` is the inner (right) arc.
    pub fn nestings_as_right_arc(&self, k: usize) -> usize {
        let o = self.opener(k);
        let c = self.mate(o);
        self.openers[..k - 1].iter().filter(|&&a| self.mate(a) > c).count()
    }

    /// Number of crossings in which the arc at `o_k` is the right arc.
    pub fn crossings_as_right_arc(&self, k: usize) -> usize {
        let o = self.opener(k);
        let c = self.mate(o);
        self.openers[..k - 1].iter().filter(|&&a| (o..c).contains(&self.mate(a))).count()
    }

    /// `{k : o_k · M(o_k) is not the right arc of a nesting}`
    pub fn long_set(&self) -> IndexSet<OpenerRanks> {
        (1..=self.n()).filter(|&k| self.nestings_as_right_arc(k) == 0).collect()
    }

    /// `{k : M(c_k) · c_k is not the left arc of a nesting}`
    pub fn short_set(&self) -> IndexSet<CloserRanks> {
        (1..=self.n())
            .filter(|&k| {
                let c = self.closer(k);
                let o = self.mate(c);
                !self.openers.iter().any(|&a| a > o && self.mate(a) < c)
            })
            .collect()
    }

    /// `{k : o_k · M(o_k) is not the right arc of a crossing}`
    pub fn left_set(&self) -> IndexSet<OpenerRanks> {
        (1..=self.n()).filter(|&k| self.crossings_as_right_arc(k) == 0).collect()
    }

    /// Returns a copy with the arcs `o·M(o)` and `M(t)·t` replaced by `o·t` and `M(t)·M(o)`.
    pub(crate) fn reconnect(&self, o: usize, target: usize) -> Matching {
        let mut partner = self.partner.clone();
        let old = self.mate(o);
        let other = self.mate(target);
        partner[o - 1] = target;
        partner[target - 1] = o;
        partner[other - 1] = old;
        partner[old - 1] = other;
        Matching::from_partner_unchecked(partner)
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({self})")
    }
}

impl fmt::Display for Matching {
    /// `1-4,2-3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, c)) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{o}-{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Accepts `1-4,2-3` or the JSON form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') || s.starts_with('[') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        if s.is_empty() {
            return Matching::from_edges(&[]);
        }
        let edges = s
            .split(',')
            .map(|e| {
                let (a, b) = e.split_once('-').ok_or_else(|| Error::Parse(format!("bad edge {e:?}")))?;
                let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {a:?}")))?;
                let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad vertex {b:?}")))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        Matching::from_edges(&edges)
    }
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    #[serde(default)]
    n: Option<usize>,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatchingJson { n: Some(self.n()), edges: self.edges() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatchingJson::deserialize(deserializer)?;
        if let Some(n) = raw.n {
            if n != raw.edges.len() {
                return Err(serde::de::Error::custom(format!("n = {n} but {} edges", raw.edges.len())));
            }
        }
        Matching::from_edges(&raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Connects openers right to left; `o_k` takes the `w_k`-th still-free closer
/// to its right, counting from the right.
pub fn varphi1(d: &DyckPath, w: &WeightVector) -> Result<Matching> {
    let h = d.height_sequence();
    WeightVector::new(w.as_slice().to_vec(), &h)?;
    let openers = d.rise_positions();
    let mut partner = vec![0; d.steps().len()];
    let mut free: Vec<usize> = d.fall_positions();
    free.reverse();
    for k in (1..=d.semilength()).rev() {
        let o = openers[k - 1];
        let available: Vec<usize> = free.iter().copied().filter(|&c| c > o).collect();
        debug_assert_eq!(available.len(), h[k - 1]);
        let c = available[w.get(k) - 1];
        partner[o - 1] = c;
        partner[c - 1] = o;
        free.retain(|&x| x != c);
    }
    Ok(Matching::from_partner_unchecked(partner))
}

/// `w_k = 1 + #{nestings with o_k · M(o_k) as the right arc}`.
pub fn varphi1_inv(m: &Matching) -> (DyckPath, WeightVector) {
    let w = (1..=m.n()).map(|k| 1 + m.nestings_as_right_arc(k)).collect();
    (m.type_of(), WeightVector::from_vec_unchecked(w))
}

/// All matchings of type `d`, in the order of their weight vectors under `varphi1`.
pub fn enumerate_matchings(d: &DyckPath) -> impl Iterator<Item = Matching> + '_ {
    enumerate_weights(d).map(move |w| varphi1(d, &w).expect("enumerated weights are compatible"))
}

/// The intermediate matchings `M_n, ..., M_1` produced by sorting `M` toward
/// `M_0`, and the per-step sorting indices.
#[derive(Debug, Clone)]
pub struct SortTrace {
    /// `states[k - 1]` is `M_k`; `M_n` is the input.
    pub states: Vec<Matching>,
    /// `steps[k - 1]` is `sor_k(M, M_0)`.
    pub steps: Vec<usize>,
}

impl SortTrace {
    pub fn sor(&self) -> usize {
        self.steps.iter().sum()
    }

    /// `M_k`
    pub fn state(&self, k: usize) -> &Matching {
        &self.states[k - 1]
    }
}

/// `#{c closer : c > o_k, M_0(c) < o_k}` restricted to the closed interval
/// `[current, target]` when `current <= target`, and to the complement of the
/// open interval `(target, current)` otherwise.
pub(crate) fn sor_step_count(m0: &Matching, o: usize, current: usize, target: usize) -> usize {
    m0.closers()
        .iter()
        .filter(|&&c| c > o && m0.mate(c) < o)
        .filter(|&&c| {
            if current <= target {
                (current..=target).contains(&c)
            } else {
                !(target + 1..current).contains(&c)
            }
        })
        .count()
}

/// Sorts `m` toward `m0` from the rightmost opener down.
pub fn sort_matching(m: &Matching, m0: &Matching) -> Result<SortTrace> {
    m.require_same_type(m0)?;
    let n = m.n();
    let mut states = vec![m.clone(); n];
    let mut steps = vec![0; n];
    let mut current = m.clone();
    for k in (1..=n).rev() {
        states[k - 1] = current.clone();
        let o = current.opener(k);
        let here = current.mate(o);
        let target = m0.mate(o);
        steps[k - 1] = sor_step_count(m0, o, here, target);
        if here != target {
            current = current.reconnect(o, target);
        }
    }
    debug_assert!(n == 0 || current == *m0);
    Ok(SortTrace { states, steps })
}

/// `sor(M, M_0)`
pub fn sor(m: &Matching, m0: &Matching) -> Result<usize> {
    Ok(sort_matching(m, m0)?.sor())
}

/// Vertex lists of the cycles of the graph `(M, M_0)`, each starting at its
/// minimal vertex and continuing along `M`; cycles ordered by that minimum.
pub fn cycles(m: &Matching, m0: &Matching) -> Result<Vec<Vec<usize>>> {
    m.require_same_type(m0)?;
    let len = 2 * m.n();
    let mut seen = vec![false; len + 1];
    let mut out = Vec::new();
    for start in 1..=len {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        loop {
            seen[v] = true;
            cycle.push(v);
            let u = m.mate(v);
            seen[u] = true;
            cycle.push(u);
            v = m0.mate(u);
            if v == start {
                break;
            }
        }
        out.push(cycle);
    }
    Ok(out)
}

/// `cyc(M, M_0)`
pub fn cyc(m: &Matching, m0: &Matching) -> Result<usize> {
    Ok(cycles(m, m0)?.len())
}

/// Ranks `k` such that `o_k` is the minimal vertex of its cycle in `(M, M_0)`.
pub fn cyc_set(m: &Matching, m0: &Matching) -> Result<IndexSet<OpenerRanks>> {
    Ok(cycles(m, m0)?
        .iter()
        .map(|c| m.opener_rank(c[0]).expect("cycle minimum is an opener"))
        .collect())
}

/// Candidates for `o_k` against base `m0`: closers `c > o_k` with
/// `M_0(c) <= o_k`, listed from `M_0(o_k)` going cyclically to the left.
pub(crate) fn candidates(m0: &Matching, k: usize) -> Vec<usize> {
    let o = m0.opener(k);
    let mut cands: Vec<usize> = m0.closers().iter().copied().filter(|&c| c > o && m0.mate(c) <= o).collect();
    cands.sort_unstable_by(|a, b| b.cmp(a));
    let start = cands.iter().position(|&c| c == m0.mate(o)).expect("M_0(o_k) is a candidate");
    cands.rotate_left(start);
    cands
}

/// From `start`, alternate partial-matching arcs and `M_0` arcs until reaching a
/// closer not yet used by `upper`. Returns that closer and the openers whose
/// upper arcs were traversed.
pub(crate) fn follow_alternating(upper: &[usize], m0: &Matching, start: usize) -> (usize, Vec<usize>) {
    let mut c = start;
    let mut traversed = Vec::new();
    let mut visited = vec![false; upper.len() + 1];
    while upper[c - 1] != 0 {
        assert!(!visited[c], "alternating path revisited closer {c}");
        visited[c] = true;
        let o = upper[c - 1];
        traversed.push(o);
        c = m0.mate(o);
    }
    (c, traversed)
}

/// The bijection from weight vectors to matchings of the type of `m0` under
/// which `sor(phi1(w), M_0) = Σ (w_k - 1)` and `Cyc = {k : w_k = 1}`.
pub fn phi1(m0: &Matching, w: &WeightVector) -> Result<Matching> {
    let d = m0.type_of();
    WeightVector::new(w.as_slice().to_vec(), &d.height_sequence())?;
    let mut upper = vec![0; 2 * m0.n()];
    for k in (1..=m0.n()).rev() {
        let o = m0.opener(k);
        let first_choice = candidates(m0, k)[w.get(k) - 1];
        let (c, _) = follow_alternating(&upper, m0, first_choice);
        upper[o - 1] = c;
        upper[c - 1] = o;
    }
    Ok(Matching::from_partner_unchecked(upper))
}

/// `w_k = sor_k(M, M_0) + 1`
pub fn phi1_inv(m0: &Matching, m: &Matching) -> Result<WeightVector> {
    let trace = sort_matching(m, m0)?;
    Ok(WeightVector::from_vec_unchecked(trace.steps.iter().map(|s| s + 1).collect()))
}
