//! Representation validators, and the independent brute-force oracles that
//! ground the two characterization theorems at small sizes.
//!
//! The validators check exactly the conditions they are flagged with and
//! report every violation they find. The oracles share no code with the
//! token-order constructions: they search endpoint assignments exhaustively
//! over a carrier of `2n` positions, which suffices because a representation
//! on `2n` distinct endpoints exists whenever any does.

use crate::poset::Poset;
use crate::transforms::{ClosedRep, SetRep};
use thiserror::Error;

/// A named representation condition.
///
/// Endpoint form: `c1` ordered endpoints, `c2` interval precedence matches
/// the poset, `c3` no two elements share both endpoints, `c4` all endpoints
/// pairwise distinct, `c5` left endpoints sort like right endpoints.
/// Set form: `i1` sets nonempty and convex, `i2` set precedence matches the
/// poset, `i3` sets pairwise distinct, `i4` containment implies equality.
/// On quasi-order carriers, endpoint "equality" means carrier equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cond {
    I1,
    I2,
    I3,
    I4,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl Cond {
    pub const ALL: [Cond; 9] = [
        Cond::I1,
        Cond::I2,
        Cond::I3,
        Cond::I4,
        Cond::C1,
        Cond::C2,
        Cond::C3,
        Cond::C4,
        Cond::C5,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Cond::I1 => "i1",
            Cond::I2 => "i2",
            Cond::I3 => "i3",
            Cond::I4 => "i4",
            Cond::C1 => "c1",
            Cond::C2 => "c2",
            Cond::C3 => "c3",
            Cond::C4 => "c4",
            Cond::C5 => "c5",
        }
    }

    pub fn parse(s: &str) -> Option<Cond> {
        Cond::ALL.into_iter().find(|c| c.label() == s)
    }
}

impl std::fmt::Display for Cond {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Parses a comma-separated flag list like `c1,c2,c4`.
pub fn parse_flags(s: &str) -> Result<Vec<Cond>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Cond::parse(t).ok_or_else(|| format!("unknown condition `{t}`")))
        .collect()
}

/// One condition failure, with the elements (and carrier points) involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cond: Cond,
    pub elements: Vec<u32>,
    pub points: Vec<u32>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} elements {:?}", self.cond, self.elements)?;
        if !self.points.is_empty() {
            write!(f, " points {:?}", self.points)?;
        }
        Ok(())
    }
}

/// Outcome of a verification run: ok iff no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, cond: Cond) -> bool {
        self.violations.iter().any(|v| v.cond == cond)
    }

    fn push(&mut self, cond: Cond, elements: Vec<u32>, points: Vec<u32>) {
        self.violations.push(Violation {
            cond,
            elements,
            points,
        });
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        let rendered: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "violations: {}", rendered.join("; "))
    }
}

/// Checks the flagged endpoint conditions of `r` against `p`. The `c2`
/// equivalence is checked in both directions over all ordered pairs.
pub fn verify_closed_rep(p: &Poset, r: &ClosedRep, flags: &[Cond]) -> VerifyReport {
    assert_eq!(r.element_count(), p.len(), "endpoint maps must be total");
    let n = p.len() as u32;
    let c = &r.carrier;
    let mut report = VerifyReport::default();
    for cond in flags {
        match cond {
            Cond::C1 => {
                for e in 0..n {
                    if !c.le(r.f0[e as usize], r.f1[e as usize]) {
                        report.push(Cond::C1, vec![e], vec![r.f0[e as usize], r.f1[e as usize]]);
                    }
                }
            }
            Cond::C2 => {
                for a in 0..n {
                    for b in 0..n {
                        let order = p.lt(a, b);
                        let separated = c.lt(r.f1[a as usize], r.f0[b as usize]);
                        if order != separated {
                            report.push(Cond::C2, vec![a, b], vec![]);
                        }
                    }
                }
            }
            Cond::C3 => {
                for a in 0..n {
                    for b in a + 1..n {
                        if c.equiv(r.f0[a as usize], r.f0[b as usize])
                            && c.equiv(r.f1[a as usize], r.f1[b as usize])
                        {
                            report.push(Cond::C3, vec![a, b], vec![]);
                        }
                    }
                }
            }
            Cond::C4 => {
                // all 2n endpoint values pairwise inequivalent
                let endpoints: Vec<u32> = (0..n)
                    .flat_map(|e| [r.f0[e as usize], r.f1[e as usize]])
                    .collect();
                for i in 0..endpoints.len() {
                    for j in i + 1..endpoints.len() {
                        if c.equiv(endpoints[i], endpoints[j]) {
                            report.push(
                                Cond::C4,
                                vec![i as u32 / 2, j as u32 / 2],
                                vec![endpoints[i], endpoints[j]],
                            );
                        }
                    }
                }
            }
            Cond::C5 => {
                for a in 0..n {
                    for b in 0..n {
                        let left = c.lt(r.f0[a as usize], r.f0[b as usize]);
                        let right = c.lt(r.f1[a as usize], r.f1[b as usize]);
                        if left != right {
                            report.push(Cond::C5, vec![a, b], vec![]);
                        }
                    }
                }
            }
            _ => panic!("{cond} is not a closed-representation condition"),
        }
    }
    report
}

/// Checks the flagged set conditions of `r` against `p`. Convexity for `i1`
/// is decided by scanning the carrier.
pub fn verify_interval_rep(p: &Poset, r: &SetRep, flags: &[Cond]) -> VerifyReport {
    assert_eq!(r.element_count(), p.len(), "one set per element");
    let n = p.len() as u32;
    let c = &r.carrier;
    // block span of each set, for the pairwise conditions
    let spans: Vec<Option<(usize, usize)>> = r
        .sets
        .iter()
        .map(|set| {
            let blocks: Vec<usize> = set.iter().map(|&x| c.block_index(x)).collect();
            Some((*blocks.iter().min()?, *blocks.iter().max()?))
        })
        .collect();
    let mut report = VerifyReport::default();
    for cond in flags {
        match cond {
            Cond::I1 => {
                for e in 0..n {
                    let set = &r.sets[e as usize];
                    if set.is_empty() {
                        report.push(Cond::I1, vec![e], vec![]);
                        continue;
                    }
                    // convexity: any carrier point strictly between two
                    // members must be a member
                    let (lo, hi) = spans[e as usize].unwrap();
                    for x in 0..c.point_count() as u32 {
                        let b = c.block_index(x);
                        if lo < b && b < hi && !r.contains(e, x) {
                            report.push(Cond::I1, vec![e], vec![x]);
                        }
                    }
                }
            }
            Cond::I2 => {
                for a in 0..n {
                    for b in 0..n {
                        let (Some(sa), Some(sb)) = (spans[a as usize], spans[b as usize]) else {
                            continue; // emptiness is an i1 matter
                        };
                        let order = p.lt(a, b);
                        let precedes = sa.1 < sb.0;
                        if order != precedes {
                            report.push(Cond::I2, vec![a, b], vec![]);
                        }
                    }
                }
            }
            Cond::I3 => {
                for a in 0..n {
                    for b in a + 1..n {
                        if r.sets[a as usize] == r.sets[b as usize] {
                            report.push(Cond::I3, vec![a, b], vec![]);
                        }
                    }
                }
            }
            Cond::I4 => {
                for a in 0..n {
                    for b in 0..n {
                        if a != b
                            && subset(&r.sets[a as usize], &r.sets[b as usize])
                            && r.sets[a as usize] != r.sets[b as usize]
                        {
                            report.push(Cond::I4, vec![a, b], vec![]);
                        }
                    }
                }
            }
            _ => panic!("{cond} is not a set-representation condition"),
        }
    }
    report
}

// both sorted ascending
fn subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut bi = b.iter();
    'outer: for x in a {
        for y in bi.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Input exceeds the exhaustive-search bound.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{n} elements exceeds the exhaustive bound of {max}")]
pub struct TooLarge {
    pub n: usize,
    pub max: usize,
}

const ORACLE_MAX: usize = 6;
const ENUMERATE_MAX: usize = 5;

/// Decides interval-orderhood by exhaustive endpoint search: true iff some
/// assignment of pairs `f0(p) <= f1(p)` into positions `0..2n` satisfies
/// `c1` and `c2`. Independent of the token-order constructions.
pub fn oracle_is_interval_order(p: &Poset) -> Result<bool, TooLarge> {
    endpoint_search(p, false)
}

/// As [`oracle_is_interval_order`], additionally requiring `c5`.
pub fn oracle_is_proper_interval_order(p: &Poset) -> Result<bool, TooLarge> {
    endpoint_search(p, true)
}

fn endpoint_search(p: &Poset, proper: bool) -> Result<bool, TooLarge> {
    let n = p.len();
    if n > ORACLE_MAX {
        return Err(TooLarge { n, max: ORACLE_MAX });
    }
    let positions = (2 * n) as u32;
    let mut f0 = vec![0u32; n];
    let mut f1 = vec![0u32; n];
    fn assign(
        p: &Poset,
        proper: bool,
        positions: u32,
        e: usize,
        f0: &mut [u32],
        f1: &mut [u32],
    ) -> bool {
        if e == f0.len() {
            return true;
        }
        for a in 0..positions {
            for b in a..positions {
                f0[e] = a;
                f1[e] = b;
                let consistent = (0..e).all(|d| {
                    let fwd = p.lt(d as u32, e as u32) == (f1[d] < f0[e]);
                    let bwd = p.lt(e as u32, d as u32) == (f1[e] < f0[d]);
                    let prop = !proper || f0[e].cmp(&f0[d]) == f1[e].cmp(&f1[d]);
                    fwd && bwd && prop
                });
                if consistent && assign(p, proper, positions, e + 1, f0, f1) {
                    return true;
                }
            }
        }
        false
    }
    Ok(assign(p, proper, positions, 0, &mut f0, &mut f1))
}

/// Streams every labeled poset on `n` elements (every transitive,
/// antisymmetric, irreflexive relation), in a fixed order.
pub fn enumerate_posets(n: usize) -> Result<PosetIter, TooLarge> {
    if n > ENUMERATE_MAX {
        return Err(TooLarge {
            n,
            max: ENUMERATE_MAX,
        });
    }
    let pairs = (0..n as u32)
        .flat_map(|i| (i + 1..n as u32).map(move |j| (i, j)))
        .collect();
    Ok(PosetIter {
        n,
        pairs,
        digits: None,
        done: false,
    })
}

/// Iterator over labeled posets; see [`enumerate_posets`].
pub struct PosetIter {
    n: usize,
    pairs: Vec<(u32, u32)>,
    // base-3 odometer: one digit per unordered pair
    // (0 incomparable, 1 forward, 2 backward); None before the first step
    digits: Option<Vec<u8>>,
    done: bool,
}

impl Iterator for PosetIter {
    type Item = Poset;

    fn next(&mut self) -> Option<Poset> {
        while !self.done {
            let digits = match &mut self.digits {
                None => self.digits.insert(vec![0; self.pairs.len()]),
                Some(digits) => {
                    let mut i = digits.len();
                    loop {
                        if i == 0 {
                            self.done = true;
                            break;
                        }
                        i -= 1;
                        if digits[i] < 2 {
                            digits[i] += 1;
                            break;
                        }
                        digits[i] = 0;
                    }
                    if self.done {
                        return None;
                    }
                    digits
                }
            };
            let mut rel = Vec::new();
            for (digit, &(i, j)) in digits.iter().zip(&self.pairs) {
                match digit {
                    1 => rel.push((i, j)),
                    2 => rel.push((j, i)),
                    _ => {}
                }
            }
            // keep only assignments that are already transitive (and hence
            // acyclic): the closure must add nothing
            if let Ok(poset) = Poset::from_pairs(self.n, &rel) {
                if poset.strict_pairs().len() == rel.len() {
                    return Some(poset);
                }
            }
        }
        None
    }
}
