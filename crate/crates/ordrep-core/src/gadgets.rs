//! Block-structured counterexample posets built from a pair of injections,
//! and the extractors that read a range-separating set back out of any
//! sufficiently strong representation.
//!
//! A gadget is a stack of blocks `P_0 < P_1 < ... < P_{K-1}` (everything in
//! an earlier block below everything in a later one). Inside block `k` the
//! named elements `a_k` and `b_k` are wired to an indexed family according
//! to where the injections `f` and `g` hit; for every valid table the result
//! avoids the forbidden suborders, and the extractor for the matching
//! representation kind puts every f-hit block into the output set and keeps
//! every g-hit block out of it.
//!
//! The families are infinite in the source construction; here they are
//! truncated to `K` blocks and `N` family indices, and a hit only counts as
//! installed when the elements its clauses mention exist within the bound.

use crate::poset::Poset;
use crate::textio::{content_lines, parse_num, ParseError};
use crate::transforms::{ClosedRep, InvalidInputRep, SetRep};
use crate::verify::{verify_closed_rep, verify_interval_rep, Cond};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A pair of finite partial injections with disjoint ranges, as tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FGTable {
    f: BTreeMap<u32, u32>,
    g: BTreeMap<u32, u32>,
}

/// The table is not a pair of injections with disjoint ranges.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BadTable {
    #[error("{which} maps {n} twice")]
    DuplicateEntry { which: char, n: u32 },
    #[error("{which} is not injective: {n} and {m} both map to {k}")]
    NotInjective { which: char, n: u32, m: u32, k: u32 },
    #[error("ranges intersect at {k}")]
    RangeOverlap { k: u32 },
}

impl FGTable {
    pub fn new(f_pairs: &[(u32, u32)], g_pairs: &[(u32, u32)]) -> Result<FGTable, BadTable> {
        let mut table = FGTable::default();
        for (which, pairs) in [('f', f_pairs), ('g', g_pairs)] {
            for &(n, k) in pairs {
                let map = if which == 'f' {
                    &mut table.f
                } else {
                    &mut table.g
                };
                if map.insert(n, k).is_some() {
                    return Err(BadTable::DuplicateEntry { which, n });
                }
            }
            let map = if which == 'f' { &table.f } else { &table.g };
            let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
            for (&n, &k) in map {
                if let Some(&m) = seen.get(&k) {
                    return Err(BadTable::NotInjective { which, n, m, k });
                }
                seen.insert(k, n);
            }
        }
        for k in table.f.values() {
            if table.g.values().any(|k2| k2 == k) {
                return Err(BadTable::RangeOverlap { k: *k });
            }
        }
        Ok(table)
    }

    pub fn f_of(&self, n: u32) -> Option<u32> {
        self.f.get(&n).copied()
    }

    pub fn g_of(&self, n: u32) -> Option<u32> {
        self.g.get(&n).copied()
    }

    // hits (n, k) with k < blocks and n below the index bound
    fn hits(map: &BTreeMap<u32, u32>, blocks: u32, max_index: u32) -> Vec<(u32, u32)> {
        map.iter()
            .filter(|&(&n, &k)| n < max_index && k < blocks)
            .map(|(&n, &k)| (n, k))
            .collect()
    }
}

/// Parses the table format: one `f <n> <k>` or `g <n> <k>` line per entry.
pub fn parse_fg_table(text: &str) -> Result<FGTable, ParseError> {
    let mut f_pairs = Vec::new();
    let mut g_pairs = Vec::new();
    for (ln, line) in content_lines(text) {
        let mut it = line.split_whitespace();
        let which = it.next().unwrap_or("");
        let n = parse_num(ln, it.next().unwrap_or(""), "index")?;
        let k = parse_num(ln, it.next().unwrap_or(""), "block")?;
        if it.next().is_some() {
            return Err(ParseError::new(ln, "trailing tokens"));
        }
        match which {
            "f" => f_pairs.push((n, k)),
            "g" => g_pairs.push((n, k)),
            other => {
                return Err(ParseError::new(
                    ln,
                    format!("expected `f` or `g`, found `{other}`"),
                ))
            }
        }
    }
    FGTable::new(&f_pairs, &g_pairs).map_err(|e| ParseError::new(1, e.to_string()))
}

pub fn render_fg_table(t: &FGTable) -> String {
    let mut out = String::new();
    for (n, k) in &t.f {
        out.push_str(&format!("f {n} {k}\n"));
    }
    for (n, k) in &t.g {
        out.push_str(&format!("g {n} {k}\n"));
    }
    out
}

/// Which gadget family a [`GadgetPoset`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetKind {
    Rev1,
    Rev2,
    Rev3,
}

impl GadgetKind {
    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::Rev1 => "rev1",
            GadgetKind::Rev2 => "rev2",
            GadgetKind::Rev3 => "rev3",
        }
    }

    fn block_size(self, indices: u32) -> u32 {
        match self {
            GadgetKind::Rev1 | GadgetKind::Rev3 => indices + 2,
            GadgetKind::Rev2 => indices + 3,
        }
    }
}

/// What an element of a gadget block is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    A { block: u32 },
    B { block: u32 },
    /// The third named element of a rev2 block.
    C { block: u32 },
    /// Member `index` of the block's indexed family.
    Indexed { block: u32, index: u32 },
}

/// A truncated gadget poset with its role labels and installed hits.
#[derive(Clone, Debug)]
pub struct GadgetPoset {
    pub kind: GadgetKind,
    pub base: Poset,
    pub blocks: u32,
    pub indices: u32,
    /// f-hits `(n, k)` whose clauses were fully installed.
    pub f_hits: Vec<(u32, u32)>,
    /// g-hits `(n, k)` whose clauses were fully installed.
    pub g_hits: Vec<(u32, u32)>,
}

impl GadgetPoset {
    fn block_size(&self) -> u32 {
        self.kind.block_size(self.indices)
    }

    pub fn a(&self, k: u32) -> u32 {
        k * self.block_size()
    }

    pub fn b(&self, k: u32) -> u32 {
        k * self.block_size() + 1
    }

    /// rev2's third named element.
    pub fn c(&self, k: u32) -> u32 {
        assert_eq!(self.kind, GadgetKind::Rev2);
        k * self.block_size() + 2
    }

    /// Member `n` of block `k`'s indexed family.
    pub fn indexed(&self, k: u32, n: u32) -> u32 {
        assert!(n < self.indices);
        let named = match self.kind {
            GadgetKind::Rev2 => 3,
            _ => 2,
        };
        k * self.block_size() + named + n
    }

    pub fn role_of(&self, id: u32) -> Role {
        let size = self.block_size();
        let (block, off) = (id / size, id % size);
        match (self.kind, off) {
            (_, 0) => Role::A { block },
            (_, 1) => Role::B { block },
            (GadgetKind::Rev2, 2) => Role::C { block },
            (GadgetKind::Rev2, _) => Role::Indexed {
                block,
                index: off - 3,
            },
            (_, _) => Role::Indexed {
                block,
                index: off - 2,
            },
        }
    }

    /// Human-readable role name of an element.
    pub fn label(&self, id: u32) -> String {
        match self.role_of(id) {
            Role::A { block } => format!("a_{block}"),
            Role::B { block } => format!("b_{block}"),
            Role::C { block } => format!("c_{block}"),
            Role::Indexed { block, index } => match self.kind {
                GadgetKind::Rev2 => format!("d^{index}_{block}"),
                _ => format!("c^{index}_{block}"),
            },
        }
    }

    pub fn f_hit_blocks(&self) -> BTreeSet<u32> {
        self.f_hits.iter().map(|&(_, k)| k).collect()
    }

    pub fn g_hit_blocks(&self) -> BTreeSet<u32> {
        self.g_hits.iter().map(|&(_, k)| k).collect()
    }
}

fn cross_block_pairs(blocks: u32, size: u32, pairs: &mut Vec<(u32, u32)>) {
    // adjacent blocks suffice, the closure stacks them
    for k in 0..blocks.saturating_sub(1) {
        for p in 0..size {
            for q in 0..size {
                pairs.push((k * size + p, (k + 1) * size + q));
            }
        }
    }
}

/// Gadget that forces any 1-1 set representation to reveal a separator:
/// `P_k = {a_k, b_k} ∪ {c^n_k}`, with `c^n_k < a_k < c^{n+1}_k` on an f-hit
/// and `c^n_k < b_k < c^{n+1}_k` on a g-hit. A hit needs `c^{n+1}_k`, so it
/// is installed only when `n + 1 < N`.
pub fn gadget_rev1(t: &FGTable, blocks: u32, indices: u32) -> GadgetPoset {
    assert!(blocks >= 1 && indices >= 1);
    let size = indices + 2;
    let mut pairs = Vec::new();
    cross_block_pairs(blocks, size, &mut pairs);
    let max_index = indices.saturating_sub(1); // a hit needs index n+1 to exist
    let f_hits = FGTable::hits(&t.f, blocks, max_index);
    let g_hits = FGTable::hits(&t.g, blocks, max_index);
    let named = |k: u32, off: u32| k * size + off;
    for &(n, k) in &f_hits {
        pairs.push((named(k, 2 + n), named(k, 0)));
        pairs.push((named(k, 0), named(k, 2 + n + 1)));
    }
    for &(n, k) in &g_hits {
        pairs.push((named(k, 2 + n), named(k, 1)));
        pairs.push((named(k, 1), named(k, 2 + n + 1)));
    }
    let base =
        Poset::from_pairs((blocks * size) as usize, &pairs).expect("gadget relations are acyclic");
    GadgetPoset {
        kind: GadgetKind::Rev1,
        base,
        blocks,
        indices,
        f_hits,
        g_hits,
    }
}

/// Gadget for closed representations: `P_k = {a_k, b_k, c_k} ∪ {d^n_k}` with
/// `c_k < b_k`, the whole trio below every unhit `d^n_k`, and a hit pulling
/// its `d^n_k` below all the others while detaching it from `b_k` (f-hit) or
/// `a_k` (g-hit).
pub fn gadget_rev2(t: &FGTable, blocks: u32, indices: u32) -> GadgetPoset {
    assert!(blocks >= 1 && indices >= 1);
    let size = indices + 3;
    let mut pairs = Vec::new();
    cross_block_pairs(blocks, size, &mut pairs);
    let f_hits = FGTable::hits(&t.f, blocks, indices);
    let g_hits = FGTable::hits(&t.g, blocks, indices);
    let named = |k: u32, off: u32| k * size + off;
    let (a, b, c, d) = (0u32, 1u32, 2u32, 3u32);
    for k in 0..blocks {
        pairs.push((named(k, c), named(k, b)));
        // at most one hit per block: the ranges of f and g are disjoint
        let hit = f_hits
            .iter()
            .map(|&(n, bk)| (n, bk, 'f'))
            .chain(g_hits.iter().map(|&(n, bk)| (n, bk, 'g')))
            .find(|&(_, bk, _)| bk == k);
        let unhit: Vec<u32> = (0..indices)
            .filter(|&n| hit.is_none_or(|(h, _, _)| h != n))
            .collect();
        // unhit family members form a chain in index order
        for w in unhit.windows(2) {
            pairs.push((named(k, d + w[0]), named(k, d + w[1])));
        }
        if let Some(&first) = unhit.first() {
            for named_el in [a, b, c] {
                pairs.push((named(k, named_el), named(k, d + first)));
            }
        }
        if let Some((n, _, which)) = hit {
            let lower = if which == 'f' { a } else { b };
            pairs.push((named(k, lower), named(k, d + n)));
            pairs.push((named(k, c), named(k, d + n)));
            if let Some(&first) = unhit.first() {
                pairs.push((named(k, d + n), named(k, d + first)));
            }
        }
    }
    let base =
        Poset::from_pairs((blocks * size) as usize, &pairs).expect("gadget relations are acyclic");
    GadgetPoset {
        kind: GadgetKind::Rev2,
        base,
        blocks,
        indices,
        f_hits,
        g_hits,
    }
}

/// Gadget for proper representations, together with its explicit closed
/// representation on the carrier `0..3K`:
///
/// ```text
/// a_k -> (3k+1, 3k+1)        b_k -> (3k, 3k+2)
/// c^n_k -> (3k+2 on an f-hit, else 3k;  3k on a g-hit, else 3k+2)
/// ```
///
/// The poset relates `a_k < c^n_k` on an f-hit and `c^n_k < a_k` on a g-hit.
pub fn gadget_rev3(t: &FGTable, blocks: u32, indices: u32) -> (GadgetPoset, ClosedRep) {
    assert!(blocks >= 1 && indices >= 1);
    let size = indices + 2;
    let mut pairs = Vec::new();
    cross_block_pairs(blocks, size, &mut pairs);
    let f_hits = FGTable::hits(&t.f, blocks, indices);
    let g_hits = FGTable::hits(&t.g, blocks, indices);
    let named = |k: u32, off: u32| k * size + off;
    for &(n, k) in &f_hits {
        pairs.push((named(k, 0), named(k, 2 + n)));
    }
    for &(n, k) in &g_hits {
        pairs.push((named(k, 2 + n), named(k, 0)));
    }
    let base =
        Poset::from_pairs((blocks * size) as usize, &pairs).expect("gadget relations are acyclic");
    let gp = GadgetPoset {
        kind: GadgetKind::Rev3,
        base,
        blocks,
        indices,
        f_hits,
        g_hits,
    };
    let mut f0 = vec![0u32; gp.base.len()];
    let mut f1 = vec![0u32; gp.base.len()];
    for k in 0..blocks {
        f0[gp.a(k) as usize] = 3 * k + 1;
        f1[gp.a(k) as usize] = 3 * k + 1;
        f0[gp.b(k) as usize] = 3 * k;
        f1[gp.b(k) as usize] = 3 * k + 2;
        for n in 0..indices {
            let id = gp.indexed(k, n) as usize;
            f0[id] = if t.f_of(n) == Some(k) { 3 * k + 2 } else { 3 * k };
            f1[id] = if t.g_of(n) == Some(k) { 3 * k } else { 3 * k + 2 };
        }
    }
    let rep = ClosedRep {
        carrier: crate::conjoint::LinearQuasiOrder::chain(3 * blocks as usize),
        f0,
        f1,
    };
    (gp, rep)
}

/// Reads the separator out of a 1-1 set representation of a rev1 gadget:
/// `X = {k : F(a_k) ⊆ F(b_k)}`.
pub fn extract_separator_rev1(
    gp: &GadgetPoset,
    r: &SetRep,
) -> Result<BTreeSet<u32>, InvalidInputRep> {
    assert_eq!(gp.kind, GadgetKind::Rev1);
    let report = verify_interval_rep(&gp.base, r, &[Cond::I1, Cond::I2, Cond::I3]);
    if !report.ok() {
        return Err(InvalidInputRep { report });
    }
    Ok((0..gp.blocks)
        .filter(|&k| is_subset(&r.sets[gp.a(k) as usize], &r.sets[gp.b(k) as usize]))
        .collect())
}

/// Reads the separator out of a closed representation of a rev2 gadget:
/// `X = {k : f1(a_k) <= f1(b_k)}`.
pub fn extract_separator_rev2(
    gp: &GadgetPoset,
    r: &ClosedRep,
) -> Result<BTreeSet<u32>, InvalidInputRep> {
    assert_eq!(gp.kind, GadgetKind::Rev2);
    let report = verify_closed_rep(&gp.base, r, &[Cond::C1, Cond::C2]);
    if !report.ok() {
        return Err(InvalidInputRep { report });
    }
    Ok((0..gp.blocks)
        .filter(|&k| r.carrier.le(r.f1[gp.a(k) as usize], r.f1[gp.b(k) as usize]))
        .collect())
}

/// Reads the separator out of a proper closed representation of a rev3
/// gadget: `X = {k : f1(a_k) < f1(b_k)}`. The input must satisfy `c5`; the
/// explicit representation emitted by [`gadget_rev3`] does not.
pub fn extract_separator_rev3(
    gp: &GadgetPoset,
    r: &ClosedRep,
) -> Result<BTreeSet<u32>, InvalidInputRep> {
    assert_eq!(gp.kind, GadgetKind::Rev3);
    let report = verify_closed_rep(&gp.base, r, &[Cond::C1, Cond::C2, Cond::C5]);
    if !report.ok() {
        return Err(InvalidInputRep { report });
    }
    Ok((0..gp.blocks)
        .filter(|&k| r.carrier.lt(r.f1[gp.a(k) as usize], r.f1[gp.b(k) as usize]))
        .collect())
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjoint::{
        finite_distinguishing_representation, finite_proper_distinguishing_representation,
    };
    use crate::transforms::closed_to_setvalued;

    fn table(f: &[(u32, u32)], g: &[(u32, u32)]) -> FGTable {
        FGTable::new(f, g).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(FGTable::new(&[(0, 0), (1, 1)], &[(0, 2)]).is_ok());
        assert!(matches!(
            FGTable::new(&[(0, 0), (0, 1)], &[]),
            Err(BadTable::DuplicateEntry { which: 'f', n: 0 })
        ));
        assert!(matches!(
            FGTable::new(&[(0, 3), (1, 3)], &[]),
            Err(BadTable::NotInjective { .. })
        ));
        assert!(matches!(
            FGTable::new(&[(0, 1)], &[(5, 1)]),
            Err(BadTable::RangeOverlap { k: 1 })
        ));
    }

    #[test]
    fn table_format() {
        let t = table(&[(0, 0), (2, 4)], &[(1, 3)]);
        let text = render_fg_table(&t);
        assert_eq!(parse_fg_table(&text).unwrap(), t);
        assert!(parse_fg_table("h 0 0\n").is_err());
        assert!(parse_fg_table("f 0 0\ng 1 0\n").is_err());
    }

    #[test]
    fn rev1_empty_block_is_an_antichain() {
        let gp = gadget_rev1(&FGTable::default(), 1, 2);
        assert_eq!(gp.base.len(), 4);
        for p in 0..4 {
            for q in 0..4 {
                assert!(p == q || gp.base.incomparable(p, q));
            }
        }
    }

    #[test]
    fn rev1_f_hit_wires_the_chain() {
        let gp = gadget_rev1(&table(&[(0, 0)], &[]), 1, 2);
        let (a, b, c0, c1) = (gp.a(0), gp.b(0), gp.indexed(0, 0), gp.indexed(0, 1));
        assert!(gp.base.lt(c0, a) && gp.base.lt(a, c1) && gp.base.lt(c0, c1));
        for x in [a, c0, c1] {
            assert!(gp.base.incomparable(b, x));
        }
        assert_eq!(gp.f_hits, vec![(0, 0)]);
    }

    #[test]
    fn rev1_hit_at_last_index_is_not_installed() {
        let gp = gadget_rev1(&table(&[(1, 0)], &[]), 1, 2);
        assert!(gp.f_hits.is_empty());
        assert!(gp.base.incomparable(gp.a(0), gp.indexed(0, 1)));
    }

    #[test]
    fn rev2_examples() {
        let gp = gadget_rev2(&FGTable::default(), 1, 1);
        let (a, b, c, d0) = (gp.a(0), gp.b(0), gp.c(0), gp.indexed(0, 0));
        assert!(gp.base.lt(c, b));
        assert!(gp.base.lt(a, d0) && gp.base.lt(b, d0) && gp.base.lt(c, d0));
        assert!(gp.base.incomparable(a, b) && gp.base.incomparable(a, c));

        let gp = gadget_rev2(&table(&[(0, 0)], &[]), 1, 2);
        let (a, b, c) = (gp.a(0), gp.b(0), gp.c(0));
        let (d0, d1) = (gp.indexed(0, 0), gp.indexed(0, 1));
        assert!(gp.base.lt(a, d0) && gp.base.lt(c, d0) && gp.base.lt(d0, d1));
        assert!(gp.base.incomparable(b, d0));
        assert!(gp.base.lt(b, d1));
    }

    #[test]
    fn rev3_rep_values() {
        let (gp, rep) = gadget_rev3(&table(&[(0, 0)], &[(0, 1)]), 2, 2);
        // block 0: f-hit at n=0
        assert_eq!((rep.f0[gp.a(0) as usize], rep.f1[gp.a(0) as usize]), (1, 1));
        assert_eq!((rep.f0[gp.b(0) as usize], rep.f1[gp.b(0) as usize]), (0, 2));
        let c00 = gp.indexed(0, 0) as usize;
        assert_eq!((rep.f0[c00], rep.f1[c00]), (2, 2));
        let c10 = gp.indexed(0, 1) as usize;
        assert_eq!((rep.f0[c10], rep.f1[c10]), (0, 2));
        // block 1: g-hit at n=0
        let c01 = gp.indexed(1, 0) as usize;
        assert_eq!((rep.f0[c01], rep.f1[c01]), (3, 3));
        assert!(verify_closed_rep(&gp.base, &rep, &[Cond::C1, Cond::C2]).ok());
    }

    fn all_tables(blocks: u32, indices: u32) -> Vec<FGTable> {
        // every assignment of each index to a block or to nothing, per map
        let choices = blocks + 1;
        let mut singles = Vec::new();
        for code in 0..choices.pow(indices) {
            let mut rest = code;
            let mut pairs = Vec::new();
            for n in 0..indices {
                let c = rest % choices;
                rest /= choices;
                if c > 0 {
                    pairs.push((n, c - 1));
                }
            }
            singles.push(pairs);
        }
        let mut tables = Vec::new();
        for f in &singles {
            for g in &singles {
                if let Ok(t) = FGTable::new(f, g) {
                    tables.push(t);
                }
            }
        }
        tables
    }

    #[test]
    fn gadgets_avoid_forbidden_suborders_exhaustively() {
        for blocks in 1..=3u32 {
            for indices in 1..=3u32 {
                for t in all_tables(blocks, indices) {
                    let g1 = gadget_rev1(&t, blocks, indices);
                    assert!(g1.base.find_two_plus_two().is_none(), "rev1 {t:?}");
                    let g2 = gadget_rev2(&t, blocks, indices);
                    assert!(g2.base.find_two_plus_two().is_none(), "rev2 {t:?}");
                    let (g3, rep) = gadget_rev3(&t, blocks, indices);
                    assert!(g3.base.find_two_plus_two().is_none(), "rev3 {t:?}");
                    assert!(g3.base.find_three_plus_one().is_none(), "rev3 {t:?}");
                    assert!(verify_closed_rep(&g3.base, &rep, &[Cond::C1, Cond::C2]).ok());
                }
            }
        }
    }

    #[test]
    fn rev2_gadgets_have_distinguishable_closures() {
        // the 1-1 criterion: distinct elements differ in up-set or down-set
        for t in all_tables(2, 2) {
            let gp = gadget_rev2(&t, 2, 2);
            let n = gp.base.len() as u32;
            for p in 0..n {
                for q in p + 1..n {
                    assert!(!gp.base.up_eq(p, q) || !gp.base.down_eq(p, q));
                }
            }
        }
    }

    #[test]
    fn separation_through_the_pipelines() {
        let t = table(&[(0, 0)], &[(0, 1)]);

        let g1 = gadget_rev1(&t, 2, 2);
        let rep = closed_to_setvalued(&finite_distinguishing_representation(&g1.base).unwrap());
        let x = extract_separator_rev1(&g1, &rep).unwrap();
        assert!(x.contains(&0) && !x.contains(&1));

        let g2 = gadget_rev2(&t, 2, 2);
        let rep = finite_distinguishing_representation(&g2.base).unwrap();
        let x = extract_separator_rev2(&g2, &rep).unwrap();
        assert!(x.contains(&0) && !x.contains(&1));

        let (g3, _) = gadget_rev3(&t, 2, 2);
        let rep = finite_proper_distinguishing_representation(&g3.base).unwrap();
        let x = extract_separator_rev3(&g3, &rep).unwrap();
        assert!(x.contains(&0) && !x.contains(&1));
    }

    #[test]
    fn extractors_are_total_on_empty_tables() {
        let t = FGTable::default();
        let g1 = gadget_rev1(&t, 1, 1);
        let rep = closed_to_setvalued(&finite_distinguishing_representation(&g1.base).unwrap());
        extract_separator_rev1(&g1, &rep).unwrap();

        let g2 = gadget_rev2(&t, 1, 1);
        let rep = finite_distinguishing_representation(&g2.base).unwrap();
        let x = extract_separator_rev2(&g2, &rep).unwrap();
        assert!(x.is_subset(&BTreeSet::from([0])));

        let (g3, _) = gadget_rev3(&t, 1, 1);
        let rep = finite_proper_distinguishing_representation(&g3.base).unwrap();
        extract_separator_rev3(&g3, &rep).unwrap();
    }

    #[test]
    fn extractors_reject_invalid_reps() {
        let t = table(&[(0, 0)], &[]);
        let g1 = gadget_rev1(&t, 1, 2);
        let mut rep =
            closed_to_setvalued(&finite_distinguishing_representation(&g1.base).unwrap());
        rep.sets[g1.b(0) as usize] = rep.sets[g1.a(0) as usize].clone();
        let err = extract_separator_rev1(&g1, &rep).unwrap_err();
        assert!(err.report.has(Cond::I3) || err.report.has(Cond::I2));

        let g2 = gadget_rev2(&t, 1, 2);
        let mut rep = finite_distinguishing_representation(&g2.base).unwrap();
        rep.f0[0] = 0;
        rep.f1[0] = rep.carrier.point_count() as u32 - 1;
        assert!(extract_separator_rev2(&g2, &rep)
            .unwrap_err()
            .report
            .has(Cond::C2));
    }

    #[test]
    fn explicit_rev3_rep_is_not_proper() {
        let (gp, rep) = gadget_rev3(&table(&[], &[(0, 0)]), 1, 1);
        let err = extract_separator_rev3(&gp, &rep).unwrap_err();
        assert!(err.report.has(Cond::C5));
        assert!(!err.report.has(Cond::C1) && !err.report.has(Cond::C2));
    }

    #[test]
    fn roles_and_labels() {
        let gp = gadget_rev2(&FGTable::default(), 2, 2);
        assert_eq!(gp.role_of(gp.c(1)), Role::C { block: 1 });
        assert_eq!(gp.label(gp.indexed(1, 0)), "d^0_1");
        let gp = gadget_rev1(&FGTable::default(), 1, 2);
        assert_eq!(gp.label(gp.indexed(0, 1)), "c^1_0");
        assert_eq!(gp.label(gp.a(0)), "a_0");
    }
}
