//! Finite partial orders, forbidden-suborder witness search, and
//! quasi-order collapse.
//!
//! A [`Poset`] stores the strict relation `<` of a labeled partial order on
//! elements `0..n`; the reflexive `<=` and the element-id order used as a
//! tiebreak are derived on demand. The two witness searches look for the two
//! four-element suborders that obstruct interval representability: a pair of
//! disjoint two-chains, and a three-chain plus an incomparable element.

use crate::bitrel::BitMatrix;
use crate::textio::{content_lines, parse_num, ParseError};
use thiserror::Error;

/// A finite strict partial order on elements `0..n`.
///
/// Invariants (established at construction): irreflexive, transitive,
/// antisymmetric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poset {
    n: usize,
    lt: BitMatrix,
    // transpose of `lt`; row p is the strict down-set of p
    gt: BitMatrix,
}

/// The closure of the input pairs would relate some element to itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation has a cycle: {}", render_cycle(.cycle))]
pub struct CycleError {
    /// One offending cycle, as a sequence of elements each related to the next.
    pub cycle: Vec<u32>,
}

fn render_cycle(cycle: &[u32]) -> String {
    let mut s = String::new();
    for p in cycle {
        s.push_str(&p.to_string());
        s.push_str(" < ");
    }
    s.push_str(&cycle[0].to_string());
    s
}

impl Poset {
    /// The poset on `n` elements with no relations.
    pub fn antichain(n: usize) -> Poset {
        Poset {
            n,
            lt: BitMatrix::new(n),
            gt: BitMatrix::new(n),
        }
    }

    /// Builds the poset whose strict order is the transitive closure of
    /// `pairs`. Non-transitive input is fine; a cycle is not.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> Result<Poset, CycleError> {
        let mut lt = BitMatrix::new(n);
        for &(p, q) in pairs {
            assert!((p as usize) < n && (q as usize) < n, "pair out of range");
            lt.set(p as usize, q as usize, true);
        }
        lt.transitive_close();
        for p in 0..n {
            if lt.get(p, p) {
                return Err(CycleError {
                    cycle: find_cycle(n, pairs, p as u32),
                });
            }
        }
        let gt = lt.transpose();
        Ok(Poset { n, lt, gt })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Strict order: `p < q`.
    #[inline]
    pub fn lt(&self, p: u32, q: u32) -> bool {
        self.lt.get(p as usize, q as usize)
    }

    /// Reflexive order: `p <= q`.
    #[inline]
    pub fn le(&self, p: u32, q: u32) -> bool {
        p == q || self.lt(p, q)
    }

    #[inline]
    pub fn incomparable(&self, p: u32, q: u32) -> bool {
        p != q && !self.lt(p, q) && !self.lt(q, p)
    }

    /// Strict upward closure `{q : p < q}`, ascending.
    pub fn up_set(&self, p: u32) -> Vec<u32> {
        self.lt.row_ones(p as usize)
    }

    /// Strict downward closure `{q : q < p}`, ascending.
    pub fn down_set(&self, p: u32) -> Vec<u32> {
        self.gt.row_ones(p as usize)
    }

    /// `up(p) ⊆ up(q)`.
    #[inline]
    pub fn up_subset(&self, p: u32, q: u32) -> bool {
        self.lt.row_subset(p as usize, q as usize)
    }

    /// `down(p) ⊆ down(q)`.
    #[inline]
    pub fn down_subset(&self, p: u32, q: u32) -> bool {
        self.gt.row_subset(p as usize, q as usize)
    }

    #[inline]
    pub fn up_eq(&self, p: u32, q: u32) -> bool {
        self.lt.row_eq(p as usize, q as usize)
    }

    #[inline]
    pub fn down_eq(&self, p: u32, q: u32) -> bool {
        self.gt.row_eq(p as usize, q as usize)
    }

    /// All strict pairs `(p, q)` with `p < q`, lexicographic.
    pub fn strict_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for p in 0..self.n as u32 {
            for q in self.up_set(p) {
                out.push((p, q));
            }
        }
        out
    }

    /// The restriction of the order to elements `0..m`.
    pub fn prefix(&self, m: usize) -> Poset {
        assert!(m <= self.n);
        let mut lt = BitMatrix::new(m);
        for p in 0..m {
            for q in 0..m {
                if self.lt.get(p, q) {
                    lt.set(p, q, true);
                }
            }
        }
        let gt = lt.transpose();
        Poset { n: m, lt, gt }
    }

    /// Extends the poset by one element whose strict down-set is `below` and
    /// strict up-set is `above`, exactly as given. The caller promises the
    /// result is transitively closed; this is checked and reported.
    pub(crate) fn extend(&self, below: &[u32], above: &[u32]) -> Result<Poset, ExtendError> {
        let new = self.n as u32;
        for &p in below.iter().chain(above) {
            assert!(p < new, "related element out of range");
        }
        for &p in below {
            if above.contains(&p) {
                return Err(ExtendError::BothSides(p));
            }
            // everything under p must also be listed below the new element
            if let Some(&r) = self.down_set(p).iter().find(|r| !below.contains(r)) {
                return Err(ExtendError::MissingBelow(r, p));
            }
        }
        for &q in above {
            if let Some(&r) = self.up_set(q).iter().find(|r| !above.contains(r)) {
                return Err(ExtendError::MissingAbove(r, q));
            }
        }
        for &p in below {
            for &q in above {
                if !self.lt(p, q) {
                    return Err(ExtendError::MissingThrough(p, q));
                }
            }
        }
        let mut lt = BitMatrix::new(self.n + 1);
        for p in 0..self.n {
            for q in self.up_set(p as u32) {
                lt.set(p, q as usize, true);
            }
        }
        for &p in below {
            lt.set(p as usize, new as usize, true);
        }
        for &q in above {
            lt.set(new as usize, q as usize, true);
        }
        let gt = lt.transpose();
        Ok(Poset {
            n: self.n + 1,
            lt,
            gt,
        })
    }
}

/// Why a one-element extension was rejected as not transitively closed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("element {0} listed both below and above the new element")]
    BothSides(u32),
    #[error("{0} < {1} in the prefix but {0} is not listed below the new element")]
    MissingBelow(u32, u32),
    #[error("{0} > {1} in the prefix but {0} is not listed above the new element")]
    MissingAbove(u32, u32),
    #[error("closure would force {0} < {1}, which the prefix does not have")]
    MissingThrough(u32, u32),
}

// Reconstructs a cycle through `start` in the raw pair graph.
fn find_cycle(n: usize, pairs: &[(u32, u32)], start: u32) -> Vec<u32> {
    let mut succ = vec![Vec::new(); n];
    for &(p, q) in pairs {
        succ[p as usize].push(q);
    }
    // BFS back to `start`
    let mut pred: Vec<Option<u32>> = vec![None; n];
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for &q in &succ[p as usize] {
            if q == start {
                let mut cycle = vec![start];
                let mut cur = p;
                while cur != start {
                    cycle.push(cur);
                    cur = pred[cur as usize].expect("BFS predecessor");
                }
                cycle.reverse();
                // reversed walk lists start last; rotate so it leads
                let shift = cycle.len() - 1;
                cycle.rotate_left(shift);
                return cycle;
            }
            if pred[q as usize].is_none() && q != start {
                pred[q as usize] = Some(p);
                queue.push_back(q);
            }
        }
    }
    unreachable!("closure found a cycle the pair graph does not have")
}

/// Which four-element obstruction a [`Witness4`] exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Two disjoint two-chains `p0 < q0`, `p1 < q1`.
    TwoPlusTwo,
    /// A three-chain `p0 < p1 < p2` plus `q` incomparable to its ends.
    ThreePlusOne,
}

/// Four elements witnessing a forbidden suborder, in role order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness4 {
    pub kind: WitnessKind,
    pub elems: [u32; 4],
}

impl Witness4 {
    /// Re-evaluates the defining violation against `poset`.
    pub fn verify(&self, poset: &Poset) -> bool {
        let [a, b, c, d] = self.elems;
        match self.kind {
            WitnessKind::TwoPlusTwo => {
                poset.lt(a, b) && poset.lt(c, d) && !poset.le(a, d) && !poset.le(c, b)
            }
            WitnessKind::ThreePlusOne => {
                poset.lt(a, b) && poset.lt(b, c) && !poset.le(a, d) && !poset.le(d, c)
            }
        }
    }
}

impl std::fmt::Display for Witness4 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.kind {
            WitnessKind::TwoPlusTwo => "2+2",
            WitnessKind::ThreePlusOne => "3+1",
        };
        let [a, b, c, d] = self.elems;
        write!(f, "{tag} ({a},{b},{c},{d})")
    }
}

impl Poset {
    /// Finds the lexicographically least `(p0, q0, p1, q1)` with
    /// `p0 < q0`, `p1 < q1`, `p0 !<= q1`, `p1 !<= q0`, if any.
    pub fn find_two_plus_two(&self) -> Option<Witness4> {
        // cheap existence test first: witnesses exist iff some pair of
        // up-sets (equivalently down-sets) is inclusion-incomparable
        if self.two_plus_two_free_quick() {
            return None;
        }
        let n = self.n as u32;
        for p0 in 0..n {
            for q0 in 0..n {
                if !self.lt(p0, q0) {
                    continue;
                }
                for p1 in 0..n {
                    for q1 in 0..n {
                        if self.lt(p1, q1) && !self.le(p0, q1) && !self.le(p1, q0) {
                            return Some(Witness4 {
                                kind: WitnessKind::TwoPlusTwo,
                                elems: [p0, q0, p1, q1],
                            });
                        }
                    }
                }
            }
        }
        unreachable!("quick test and exhaustive scan disagree on 2+2");
    }

    /// Finds the lexicographically least `(p0, p1, p2, q)` with
    /// `p0 < p1 < p2`, `p0 !<= q`, `q !<= p2`, if any.
    pub fn find_three_plus_one(&self) -> Option<Witness4> {
        if self.three_plus_one_free_quick() {
            return None;
        }
        let n = self.n as u32;
        for p0 in 0..n {
            for p1 in 0..n {
                if !self.lt(p0, p1) {
                    continue;
                }
                for p2 in 0..n {
                    if !self.lt(p1, p2) {
                        continue;
                    }
                    for q in 0..n {
                        if !self.le(p0, q) && !self.le(q, p2) {
                            return Some(Witness4 {
                                kind: WitnessKind::ThreePlusOne,
                                elems: [p0, p1, p2, q],
                            });
                        }
                    }
                }
            }
        }
        unreachable!("quick test and exhaustive scan disagree on 3+1");
    }

    fn two_plus_two_free_quick(&self) -> bool {
        for p in 0..self.n as u32 {
            for q in p + 1..self.n as u32 {
                if !self.up_subset(p, q) && !self.up_subset(q, p) {
                    return false;
                }
            }
        }
        true
    }

    fn three_plus_one_free_quick(&self) -> bool {
        for p in 0..self.n as u32 {
            for q in 0..self.n as u32 {
                if !self.down_subset(p, q) && !self.up_subset(p, q) {
                    return false;
                }
            }
        }
        true
    }
}

/// A finite quasi-order: reflexive, transitive, not necessarily antisymmetric.
#[derive(Clone, Debug)]
pub struct QuasiOrder {
    n: usize,
    leq: BitMatrix,
}

impl QuasiOrder {
    /// Builds the reflexive-transitive closure of the given pairs. Cannot
    /// fail: equivalence cycles are legal in a quasi-order.
    pub fn from_pairs(n: usize, pairs: &[(u32, u32)]) -> QuasiOrder {
        let mut leq = BitMatrix::new(n);
        for p in 0..n {
            leq.set(p, p, true);
        }
        for &(p, q) in pairs {
            assert!((p as usize) < n && (q as usize) < n, "pair out of range");
            leq.set(p as usize, q as usize, true);
        }
        leq.transitive_close();
        QuasiOrder { n, leq }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn le(&self, p: u32, q: u32) -> bool {
        self.leq.get(p as usize, q as usize)
    }

    pub fn equiv(&self, p: u32, q: u32) -> bool {
        self.le(p, q) && self.le(q, p)
    }
}

/// Result of collapsing a quasi-order's equivalence classes.
#[derive(Clone, Debug)]
pub struct Collapsed {
    /// Tokens that are the least element of their class, ascending.
    pub representatives: Vec<u32>,
    /// `map[p]` is the least token equivalent to `p`.
    pub map: Vec<u32>,
    /// The induced partial order; element `i` stands for `representatives[i]`.
    pub order: Poset,
}

/// Collapses each equivalence class of `q` to its least member.
///
/// The returned map is order-preserving, surjective onto the
/// representatives, and the identity on them.
pub fn collapse_quasi_order(q: &QuasiOrder) -> Collapsed {
    let n = q.len() as u32;
    let mut map = Vec::with_capacity(q.len());
    for p in 0..n {
        let least = (0..p).find(|&r| q.equiv(r, p)).unwrap_or(p);
        map.push(least);
    }
    let representatives: Vec<u32> = (0..n).filter(|&p| map[p as usize] == p).collect();
    let index_of: std::collections::HashMap<u32, u32> = representatives
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let mut pairs = Vec::new();
    for &a in &representatives {
        for &b in &representatives {
            if a != b && q.le(a, b) && !q.le(b, a) {
                pairs.push((index_of[&a], index_of[&b]));
            }
        }
    }
    let order = Poset::from_pairs(representatives.len(), &pairs)
        .expect("strict part of a quasi-order on representatives is acyclic");
    Collapsed {
        representatives,
        map,
        order,
    }
}

/// Parses the poset text format:
///
/// ```text
/// poset <name>
/// elements <n>
/// rel <p> <q>
/// ```
///
/// `rel` lines are strict pairs, closed transitively by the constructor;
/// `#` begins a comment line. Out-of-range ids are rejected.
pub fn parse_poset(text: &str) -> Result<(String, Poset), ParseError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected `poset <name>`"))?;
    let name = header
        .strip_prefix("poset ")
        .ok_or_else(|| ParseError::new(ln, "expected `poset <name>`"))?
        .trim()
        .to_string();
    let (ln, counts) = lines
        .next()
        .ok_or_else(|| ParseError::new(ln, "expected `elements <n>`"))?;
    let n: usize = match counts.strip_prefix("elements ") {
        Some(rest) => parse_num(ln, rest.trim(), "element count")?,
        None => return Err(ParseError::new(ln, "expected `elements <n>`")),
    };
    let mut pairs = Vec::new();
    let mut last_line = ln;
    for (ln, line) in lines {
        last_line = ln;
        let rest = line
            .strip_prefix("rel ")
            .ok_or_else(|| ParseError::new(ln, "expected `rel <p> <q>`"))?;
        let mut it = rest.split_whitespace();
        let p: u32 = parse_num(ln, it.next().unwrap_or(""), "element id")?;
        let q: u32 = parse_num(ln, it.next().unwrap_or(""), "element id")?;
        if it.next().is_some() {
            return Err(ParseError::new(ln, "trailing tokens after `rel <p> <q>`"));
        }
        if p as usize >= n || q as usize >= n {
            return Err(ParseError::new(
                ln,
                format!("element id out of range (n = {n})"),
            ));
        }
        pairs.push((p, q));
    }
    let poset = Poset::from_pairs(n, &pairs)
        .map_err(|e| ParseError::new(last_line, format!("{e}")))?;
    Ok((name, poset))
}

/// Renders a poset in the text format, listing every strict pair.
pub fn render_poset(name: &str, poset: &Poset) -> String {
    let mut out = format!("poset {name}\nelements {}\n", poset.len());
    for (p, q) in poset.strict_pairs() {
        out.push_str(&format!("rel {p} {q}\n"));
    }
    out
}
