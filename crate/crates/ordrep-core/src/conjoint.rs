//! Linear quasi-orders on signed element tokens, and the finite
//! representation constructions built on them.
//!
//! For a poset on `n` elements the token set has `2n` members: `p-` and `p+`
//! for each element `p`. Two relations are built clause-by-clause from
//! up-set/down-set inclusions; whenever the poset is free of the forbidden
//! suborders they are linear quasi-orders, and reading each token's position
//! in a compatible linearization yields a closed interval representation
//! with all endpoints distinct.

use crate::bitrel::BitMatrix;
use crate::poset::{Poset, Witness4};
use crate::textio::{content_lines, parse_num, ParseError};
use crate::transforms::ClosedRep;
use thiserror::Error;

/// Endpoint sign of a [`Token`]: `Minus` marks the left endpoint token `p-`,
/// `Plus` the right endpoint token `p+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

/// A signed element: `p-` or `p+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token {
    pub element: u32,
    pub sign: Sign,
}

impl Token {
    pub fn minus(element: u32) -> Token {
        Token {
            element,
            sign: Sign::Minus,
        }
    }

    pub fn plus(element: u32) -> Token {
        Token {
            element,
            sign: Sign::Plus,
        }
    }

    /// Point id of this token in the `2n`-point universe: `2e` for `e-`,
    /// `2e + 1` for `e+`. Ascending ids order tokens by element, minus first.
    pub fn index(self) -> u32 {
        2 * self.element
            + match self.sign {
                Sign::Minus => 0,
                Sign::Plus => 1,
            }
    }

    pub fn from_index(idx: u32) -> Token {
        Token {
            element: idx / 2,
            sign: if idx % 2 == 0 { Sign::Minus } else { Sign::Plus },
        }
    }
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self.sign {
            Sign::Minus => '-',
            Sign::Plus => '+',
        };
        write!(f, "{}{}", self.element, s)
    }
}

/// A raw binary relation on the `2n` tokens of an `n`-element poset.
#[derive(Clone, Debug)]
pub struct TokenRelation {
    elements: usize,
    rel: BitMatrix,
}

impl TokenRelation {
    pub fn element_count(&self) -> usize {
        self.elements
    }

    pub fn token_count(&self) -> usize {
        2 * self.elements
    }

    pub fn holds(&self, a: Token, b: Token) -> bool {
        self.rel.get(a.index() as usize, b.index() as usize)
    }
}

/// An ordered partition of points `0..m`: earlier blocks are strictly
/// below later ones, points sharing a block are equivalent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearQuasiOrder {
    blocks: Vec<Vec<u32>>,
    block_of: Vec<u32>,
}

/// The block list handed to [`LinearQuasiOrder::from_blocks`] is not an
/// ordered partition of `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed block partition: {0}")]
pub struct BlockError(pub String);

impl LinearQuasiOrder {
    /// Builds an order from blocks listed bottom-up. Block contents are
    /// canonicalized to ascending point order.
    pub fn from_blocks(points: usize, blocks: Vec<Vec<u32>>) -> Result<Self, BlockError> {
        let mut block_of = vec![u32::MAX; points];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(BlockError(format!("block {i} is empty")));
            }
            for &x in block {
                if x as usize >= points {
                    return Err(BlockError(format!("point {x} out of range (m = {points})")));
                }
                if block_of[x as usize] != u32::MAX {
                    return Err(BlockError(format!("point {x} appears twice")));
                }
                block_of[x as usize] = i as u32;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == u32::MAX) {
            return Err(BlockError(format!("point {x} missing from the partition")));
        }
        let mut blocks = blocks;
        for block in &mut blocks {
            block.sort_unstable();
        }
        Ok(LinearQuasiOrder { blocks, block_of })
    }

    /// The strict chain `0 < 1 < ... < m-1`.
    pub fn chain(points: usize) -> Self {
        LinearQuasiOrder {
            blocks: (0..points as u32).map(|x| vec![x]).collect(),
            block_of: (0..points as u32).collect(),
        }
    }

    pub fn point_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    #[inline]
    pub fn block_index(&self, x: u32) -> usize {
        self.block_of[x as usize] as usize
    }

    #[inline]
    pub fn le(&self, x: u32, y: u32) -> bool {
        self.block_of[x as usize] <= self.block_of[y as usize]
    }

    #[inline]
    pub fn lt(&self, x: u32, y: u32) -> bool {
        self.block_of[x as usize] < self.block_of[y as usize]
    }

    #[inline]
    pub fn equiv(&self, x: u32, y: u32) -> bool {
        self.block_of[x as usize] == self.block_of[y as usize]
    }

    /// Block-level comparison; `Equal` means equivalent, not identical.
    pub fn cmp_points(&self, x: u32, y: u32) -> std::cmp::Ordering {
        self.block_of[x as usize].cmp(&self.block_of[y as usize])
    }

    /// True when every block is a singleton, i.e. the order is total.
    pub fn is_strict(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// The points bottom-up, blocks flattened in canonical order.
    pub fn as_sequence(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().flatten().copied()
    }
}

/// The computed token relation is not a linear quasi-order; the poset
/// contains two disjoint two-chains, and here is one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("token relation is not linear; poset contains {witness}")]
pub struct NotLinearError {
    pub witness: Witness4,
}

fn up_strict_superset(p: &Poset, a: u32, b: u32) -> bool {
    p.up_subset(b, a) && !p.up_eq(a, b)
}

fn down_strict_subset(p: &Poset, a: u32, b: u32) -> bool {
    p.down_subset(a, b) && !p.down_eq(a, b)
}

/// The token relation built from up-set/down-set inclusions:
///
/// * `p+ <= q+` iff `up(p) ⊇ up(q)`
/// * `p- <= q-` iff `down(p) ⊆ down(q)`
/// * `p+ <= q-` iff `p < q`
/// * `p- <= q+` iff `not q < p`
pub fn conjoint_relation(p: &Poset) -> TokenRelation {
    token_relation(p, |p, a, b| p.up_subset(b, a), |p, a, b| p.down_subset(a, b))
}

/// The refinement that breaks same-closure ties by the opposite closure:
///
/// * `p+ <= q+` iff `up(p) ⊋ up(q)`, or `up(p) = up(q)` and `down(p) ⊆ down(q)`
/// * `p- <= q-` iff `down(p) ⊊ down(q)`, or `down(p) = down(q)` and `up(p) ⊇ up(q)`
///
/// with the two cross-sign clauses unchanged.
pub fn proper_conjoint_relation(p: &Poset) -> TokenRelation {
    token_relation(
        p,
        |p, a, b| up_strict_superset(p, a, b) || (p.up_eq(a, b) && p.down_subset(a, b)),
        |p, a, b| down_strict_subset(p, a, b) || (p.down_eq(a, b) && p.up_subset(b, a)),
    )
}

fn token_relation(
    p: &Poset,
    plus_plus: impl Fn(&Poset, u32, u32) -> bool,
    minus_minus: impl Fn(&Poset, u32, u32) -> bool,
) -> TokenRelation {
    let n = p.len();
    let mut rel = BitMatrix::new(2 * n);
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let (ap, am) = (
                Token::plus(a).index() as usize,
                Token::minus(a).index() as usize,
            );
            let (bp, bm) = (
                Token::plus(b).index() as usize,
                Token::minus(b).index() as usize,
            );
            rel.set(ap, bp, plus_plus(p, a, b));
            rel.set(am, bm, minus_minus(p, a, b));
            rel.set(ap, bm, p.lt(a, b));
            rel.set(am, bp, !p.lt(b, a));
        }
    }
    TokenRelation { elements: n, rel }
}

/// Validates linearity of a token relation and extracts its blocks.
fn relation_blocks(p: &Poset, t: &TokenRelation) -> Result<LinearQuasiOrder, NotLinearError> {
    let m = t.token_count();
    let not_linear = || NotLinearError {
        witness: p
            .find_two_plus_two()
            .expect("token relation is linear on every 2+2-free poset"),
    };
    for x in 0..m {
        for y in x..m {
            if !t.rel.get(x, y) && !t.rel.get(y, x) {
                return Err(not_linear());
            }
        }
    }
    if t.rel.transitivity_gap().is_some() {
        return Err(not_linear());
    }
    // rank each token by how many tokens sit at or below it; equivalent
    // tokens get equal ranks, strictly ordered ones distinct ranks
    let mut rank = vec![0u32; m];
    for x in 0..m {
        for y in t.rel.row_ones(x) {
            rank[y as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_by_key(|&x| (rank[x as usize], x));
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for x in order {
        match blocks.last_mut() {
            Some(last) if rank[last[0] as usize] == rank[x as usize] => last.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    Ok(LinearQuasiOrder::from_blocks(m, blocks).expect("ranking partitions the tokens"))
}

/// Token order of [`conjoint_relation`], as blocks. Linear exactly when the
/// poset has no two disjoint two-chains; otherwise the error carries a
/// witness.
pub fn conjoint(p: &Poset) -> Result<LinearQuasiOrder, NotLinearError> {
    relation_blocks(p, &conjoint_relation(p))
}

/// Token order of [`proper_conjoint_relation`], as blocks.
pub fn proper_conjoint(p: &Poset) -> Result<LinearQuasiOrder, NotLinearError> {
    relation_blocks(p, &proper_conjoint_relation(p))
}

/// Refines a linear quasi-order to a total order, keeping strict relations
/// and ordering each block internally by ascending point id.
///
/// With `proper_pairing` the input must pair its plus blocks with its minus
/// blocks the way the refined token order does; the id tiebreak then orders
/// paired blocks consistently, which is asserted here rather than re-derived.
pub fn compatible_linearization(q: &LinearQuasiOrder, proper_pairing: bool) -> LinearQuasiOrder {
    let lin = compatible_linearization_with(q, |block| block.sort_unstable());
    if proper_pairing {
        assert!(
            paired_blocks_consistent(&lin),
            "id tiebreak broke the block pairing; the input did not pair its blocks"
        );
    }
    lin
}

/// Linearization with a caller-supplied within-block ordering. The id
/// tiebreak of [`compatible_linearization`] is the normative default; this
/// hook exists for experiments.
pub fn compatible_linearization_with(
    q: &LinearQuasiOrder,
    mut tiebreak: impl FnMut(&mut Vec<u32>),
) -> LinearQuasiOrder {
    let mut blocks = Vec::with_capacity(q.point_count());
    for block in q.blocks() {
        let mut b = block.clone();
        tiebreak(&mut b);
        blocks.extend(b.into_iter().map(|x| vec![x]));
    }
    LinearQuasiOrder::from_blocks(q.point_count(), blocks)
        .expect("refining a partition yields a partition")
}

// In a strict token order: positions of p-, q- must sort the same way as
// positions of p+, q+ for every pair of elements.
fn paired_blocks_consistent(lin: &LinearQuasiOrder) -> bool {
    let n = lin.point_count() / 2;
    for p in 0..n as u32 {
        for q in p + 1..n as u32 {
            let minus = lin.cmp_points(Token::minus(p).index(), Token::minus(q).index());
            let plus = lin.cmp_points(Token::plus(p).index(), Token::plus(q).index());
            if minus != plus {
                return false;
            }
        }
    }
    true
}

/// Streams every total order refining `q`: the product of within-block
/// permutations, in a fixed order (per-block permutations lexicographic,
/// last block varying fastest), truncated at `limit`.
pub fn enumerate_compatible_linearizations(
    q: &LinearQuasiOrder,
    limit: usize,
) -> impl Iterator<Item = LinearQuasiOrder> + '_ {
    LinearizationIter {
        q,
        perms: q.blocks().to_vec(),
        done: false,
        remaining: limit,
    }
}

struct LinearizationIter<'a> {
    q: &'a LinearQuasiOrder,
    perms: Vec<Vec<u32>>,
    done: bool,
    remaining: usize,
}

impl Iterator for LinearizationIter<'_> {
    type Item = LinearQuasiOrder;

    fn next(&mut self) -> Option<LinearQuasiOrder> {
        if self.done || self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let blocks = self.perms.iter().flatten().map(|&x| vec![x]).collect();
        let item = LinearQuasiOrder::from_blocks(self.q.point_count(), blocks)
            .expect("permuted partition stays a partition");
        // odometer over per-block permutations, last block fastest
        let mut i = self.perms.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if next_permutation(&mut self.perms[i]) {
                break;
            }
            self.perms[i].sort_unstable();
        }
        Some(item)
    }
}

fn next_permutation(arr: &mut [u32]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// The requested representation does not exist; a forbidden suborder is
/// returned as evidence.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("poset contains {0}")]
    Contains2Plus2(Witness4),
    #[error("poset contains {0}")]
    Contains3Plus1(Witness4),
}

/// Closed representation with all `2n` endpoints pairwise distinct, read off
/// a compatible linearization of the conjoint token order. Exists iff the
/// poset has no two disjoint two-chains.
pub fn finite_distinguishing_representation(p: &Poset) -> Result<ClosedRep, RepError> {
    if let Some(w) = p.find_two_plus_two() {
        return Err(RepError::Contains2Plus2(w));
    }
    let q = conjoint(p).expect("conjoint of a 2+2-free poset is linear");
    Ok(rep_from_linearization(p, &compatible_linearization(&q, false)))
}

/// Proper variant over the refined token order; additionally requires the
/// three-chain-plus-one suborder to be absent.
pub fn finite_proper_distinguishing_representation(p: &Poset) -> Result<ClosedRep, RepError> {
    if let Some(w) = p.find_two_plus_two() {
        return Err(RepError::Contains2Plus2(w));
    }
    if let Some(w) = p.find_three_plus_one() {
        return Err(RepError::Contains3Plus1(w));
    }
    let q = proper_conjoint(p).expect("proper conjoint of a 2+2-free poset is linear");
    Ok(rep_from_linearization(p, &compatible_linearization(&q, true)))
}

fn rep_from_linearization(p: &Poset, lin: &LinearQuasiOrder) -> ClosedRep {
    let n = p.len();
    let mut position = vec![0u32; 2 * n];
    for (i, x) in lin.as_sequence().enumerate() {
        position[x as usize] = i as u32;
    }
    let f0 = (0..n as u32)
        .map(|e| position[Token::minus(e).index() as usize])
        .collect();
    let f1 = (0..n as u32)
        .map(|e| position[Token::plus(e).index() as usize])
        .collect();
    ClosedRep {
        carrier: LinearQuasiOrder::chain(2 * n),
        f0,
        f1,
    }
}

/// Checks the neighbor pattern of the unrefined token order: every
/// non-minimum minus token has an immediate predecessor block holding a plus
/// token of a different element, and dually for plus tokens. The refined
/// order does not satisfy this in general.
pub fn has_opposite_sign_neighbors(q: &LinearQuasiOrder) -> bool {
    let blocks = q.blocks();
    for (i, block) in blocks.iter().enumerate() {
        for &x in block {
            let t = Token::from_index(x);
            let ok = match t.sign {
                Sign::Minus => {
                    i == 0
                        || blocks[i - 1].iter().any(|&y| {
                            let u = Token::from_index(y);
                            u.sign == Sign::Plus && u.element != t.element
                        })
                }
                Sign::Plus => {
                    i + 1 == blocks.len()
                        || blocks[i + 1].iter().any(|&y| {
                            let u = Token::from_index(y);
                            u.sign == Sign::Minus && u.element != t.element
                        })
                }
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Renders a token order as a single line, e.g. `0- 1- | 0+ 1+`.
pub fn render_token_order(q: &LinearQuasiOrder) -> String {
    q.blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|&x| Token::from_index(x).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Parses the [`render_token_order`] format. The token universe is inferred
/// from the highest element id; both tokens of every element up to it must
/// be present.
pub fn parse_token_order(text: &str) -> Result<LinearQuasiOrder, ParseError> {
    let mut lines = content_lines(text);
    let (ln, line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected a token order line"))?;
    if lines.next().is_some() {
        return Err(ParseError::new(ln + 1, "expected a single line"));
    }
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for chunk in line.split('|') {
        let mut block = Vec::new();
        for tok in chunk.split_whitespace() {
            let sign_ch = tok.chars().next_back().unwrap();
            let id = &tok[..tok.len() - sign_ch.len_utf8()];
            let element: u32 = parse_num(ln, id, "element id")?;
            let sign = match sign_ch {
                '-' => Sign::Minus,
                '+' => Sign::Plus,
                other => {
                    return Err(ParseError::new(ln, format!("bad token sign `{other}`")));
                }
            };
            block.push(Token { element, sign }.index());
        }
        if block.is_empty() {
            return Err(ParseError::new(ln, "empty block"));
        }
        blocks.push(block);
    }
    let points = blocks
        .iter()
        .flatten()
        .map(|&x| x as usize + 1)
        .max()
        .unwrap_or(0)
        .next_multiple_of(2);
    LinearQuasiOrder::from_blocks(points, blocks).map_err(|e| ParseError::new(ln, e.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{enumerate_posets, verify_closed_rep, Cond};

    fn chain2() -> Poset {
        Poset::from_pairs(2, &[(0, 1)]).unwrap()
    }

    fn two_plus_one() -> Poset {
        Poset::from_pairs(3, &[(0, 1)]).unwrap()
    }

    #[test]
    fn conjoint_chain() {
        let q = conjoint(&chain2()).unwrap();
        // 0- | 0+ | 1- | 1+
        assert_eq!(q.blocks(), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn conjoint_antichain() {
        let q = conjoint(&Poset::antichain(2)).unwrap();
        // 0- 1- | 0+ 1+
        assert_eq!(q.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(render_token_order(&q), "0- 1- | 0+ 1+");
    }

    #[test]
    fn conjoint_rejects_two_plus_two() {
        let n4 = Poset::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
        let err = conjoint(&n4).unwrap_err();
        assert_eq!(err.witness.elems, [0, 1, 2, 3]);
    }

    #[test]
    fn proper_conjoint_two_plus_one_is_the_strict_chain() {
        let q = proper_conjoint(&two_plus_one()).unwrap();
        // p- r- p+ q- r+ q+ with p=0, q=1, r=2
        let expected: Vec<u32> = [
            Token::minus(0),
            Token::minus(2),
            Token::plus(0),
            Token::minus(1),
            Token::plus(2),
            Token::plus(1),
        ]
        .iter()
        .map(|t| t.index())
        .collect();
        assert!(q.is_strict());
        assert_eq!(q.as_sequence().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn proper_conjoint_matches_conjoint_on_extremes() {
        let a2 = Poset::antichain(2);
        assert_eq!(proper_conjoint(&a2).unwrap(), conjoint(&a2).unwrap());
        assert_eq!(
            proper_conjoint(&chain2()).unwrap(),
            conjoint(&chain2()).unwrap()
        );
    }

    #[test]
    fn linearization_uses_id_tiebreak() {
        let q = conjoint(&Poset::antichain(2)).unwrap();
        let lin = compatible_linearization(&q, false);
        let seq: Vec<Token> = lin.as_sequence().map(Token::from_index).collect();
        assert_eq!(
            seq,
            vec![
                Token::minus(0),
                Token::minus(1),
                Token::plus(0),
                Token::plus(1)
            ]
        );
    }

    #[test]
    fn linearization_fixes_strict_orders() {
        let q = proper_conjoint(&two_plus_one()).unwrap();
        assert_eq!(compatible_linearization(&q, true), q);
        let singleton = LinearQuasiOrder::chain(4);
        assert_eq!(compatible_linearization(&singleton, false), singleton);
    }

    #[test]
    fn enumeration_counts() {
        let one_block = LinearQuasiOrder::from_blocks(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(
            enumerate_compatible_linearizations(&one_block, 100).count(),
            2
        );
        let a2 = conjoint(&Poset::antichain(2)).unwrap();
        let all: Vec<_> = enumerate_compatible_linearizations(&a2, 100).collect();
        assert_eq!(all.len(), 4);
        // every yielded order refines the strict part
        for lin in &all {
            assert!(lin.is_strict());
            for x in 0..4 {
                for y in 0..4 {
                    if a2.lt(x, y) {
                        assert!(lin.lt(x, y));
                    }
                }
            }
        }
        let strict = LinearQuasiOrder::chain(3);
        assert_eq!(enumerate_compatible_linearizations(&strict, 100).count(), 1);
        assert_eq!(enumerate_compatible_linearizations(&a2, 3).count(), 3);
    }

    #[test]
    fn distinguishing_rep_examples() {
        let rep = finite_distinguishing_representation(&chain2()).unwrap();
        assert_eq!((rep.f0[0], rep.f1[0]), (0, 1));
        assert_eq!((rep.f0[1], rep.f1[1]), (2, 3));

        let single = finite_distinguishing_representation(&Poset::antichain(1)).unwrap();
        assert_eq!((single.f0[0], single.f1[0]), (0, 1));

        let a2 = finite_distinguishing_representation(&Poset::antichain(2)).unwrap();
        assert_eq!((a2.f0[0], a2.f1[0]), (0, 2));
        assert_eq!((a2.f0[1], a2.f1[1]), (1, 3));
    }

    #[test]
    fn proper_rep_examples() {
        let rep = finite_proper_distinguishing_representation(&two_plus_one()).unwrap();
        assert_eq!((rep.f0[0], rep.f1[0]), (0, 2)); // p
        assert_eq!((rep.f0[2], rep.f1[2]), (1, 4)); // r
        assert_eq!((rep.f0[1], rep.f1[1]), (3, 5)); // q

        let a2 = finite_proper_distinguishing_representation(&Poset::antichain(2)).unwrap();
        assert_eq!((a2.f0[0], a2.f1[0]), (0, 2));
        assert_eq!((a2.f0[1], a2.f1[1]), (1, 3));

        let v3 = Poset::from_pairs(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            finite_proper_distinguishing_representation(&v3),
            Err(RepError::Contains3Plus1(_))
        ));
    }

    #[test]
    fn minus_strictly_below_plus_everywhere() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                if p.find_two_plus_two().is_some() {
                    continue;
                }
                for q in [conjoint(&p), proper_conjoint(&p)] {
                    let q = q.unwrap();
                    for e in 0..n as u32 {
                        assert!(q.lt(Token::minus(e).index(), Token::plus(e).index()));
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_are_single_signed() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                if p.find_two_plus_two().is_some() {
                    continue;
                }
                for q in [conjoint(&p).unwrap(), proper_conjoint(&p).unwrap()] {
                    for block in q.blocks() {
                        let sign = Token::from_index(block[0]).sign;
                        assert!(block.iter().all(|&x| Token::from_index(x).sign == sign));
                    }
                }
            }
        }
    }

    #[test]
    fn neighbor_pattern_holds_for_conjoint_only() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                if p.find_two_plus_two().is_some() {
                    continue;
                }
                assert!(has_opposite_sign_neighbors(&conjoint(&p).unwrap()));
            }
        }
        // the refined order breaks the pattern on the 2⊕1 poset: the block
        // below r- = 2- holds p- = 0-, a minus token
        let q = proper_conjoint(&two_plus_one()).unwrap();
        assert!(!has_opposite_sign_neighbors(&q));
        let r_minus_block = q.block_index(Token::minus(2).index());
        assert_eq!(q.blocks()[r_minus_block - 1], vec![Token::minus(0).index()]);
    }

    #[test]
    fn refined_relation_is_contained_in_the_plain_one() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                let plain = conjoint_relation(&p);
                let refined = proper_conjoint_relation(&p);
                for x in 0..2 * n as u32 {
                    for y in 0..2 * n as u32 {
                        let (a, b) = (Token::from_index(x), Token::from_index(y));
                        assert!(!refined.holds(a, b) || plain.holds(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn refined_equivalence_pairs_plus_with_minus() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                let r = proper_conjoint_relation(&p);
                for a in 0..n as u32 {
                    for b in 0..n as u32 {
                        let plus_eq = r.holds(Token::plus(a), Token::plus(b))
                            && r.holds(Token::plus(b), Token::plus(a));
                        let minus_eq = r.holds(Token::minus(a), Token::minus(b))
                            && r.holds(Token::minus(b), Token::minus(a));
                        let same_closures = p.up_eq(a, b) && p.down_eq(a, b);
                        assert_eq!(plus_eq, same_closures);
                        assert_eq!(minus_eq, same_closures);
                    }
                }
            }
        }
    }

    #[test]
    fn reps_verify() {
        for n in 1..=5 {
            for p in enumerate_posets(n).unwrap() {
                if p.find_two_plus_two().is_some() {
                    continue;
                }
                let rep = finite_distinguishing_representation(&p).unwrap();
                assert!(verify_closed_rep(&p, &rep, &[Cond::C3, Cond::C4]).ok());
                if p.find_three_plus_one().is_none() {
                    let rep = finite_proper_distinguishing_representation(&p).unwrap();
                    assert!(verify_closed_rep(
                        &p,
                        &rep,
                        &[Cond::C1, Cond::C2, Cond::C4, Cond::C5]
                    )
                    .ok());
                }
            }
        }
    }

    #[test]
    fn token_order_format_roundtrip() {
        let q = conjoint(&two_plus_one()).unwrap();
        let line = render_token_order(&q);
        assert_eq!(parse_token_order(&line).unwrap(), q);
        assert!(parse_token_order("0- 1*").is_err());
        assert!(parse_token_order("0- | | 0+").is_err());
    }
}
