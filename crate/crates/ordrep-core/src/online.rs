//! Stage-by-stage interval representation of a poset revealed one element
//! at a time.
//!
//! At stage `s` the carrier holds one token `x_n^k` per element index `n`
//! (1-based) and signed stage `k` with `n <= |k| <= s`; the tokens `x_n^{-s}`
//! and `x_n^{s}` of the current stage are the working endpoints of element
//! `n`'s interval, and earlier tokens are frozen history. Three conditions
//! are maintained after every add:
//!
//! 1. the top layer `{x_n^{±s}}` is ordered exactly like the token order of
//!    the revealed prefix (the plain one, or the refined one in proper mode);
//! 2. stages nest: `x_n^{-s} < x_n^{-s+1}` and `x_n^{s-1} < x_n^{s}`;
//! 3. no older token sits in the half-open gaps those nesting steps open.
//!
//! Together these make every answered comparison stable for the rest of the
//! run, and make interval membership decidable by a bounded lookup: `x_m^k`
//! belongs to element `n`'s interval iff `x_n^{-t} <= x_m^k <= x_n^t` for
//! `t = max(|k|, n)`.
//!
//! Insertion works by giving every equivalence class of the new stage's
//! token order an anchor gap in the previous carrier. A class holding tokens
//! of previously revealed elements anchors to the old block those elements'
//! stage-(s-1) tokens share (plus classes right after it, minus classes
//! right before it); the two classes holding only the new element's tokens
//! borrow the anchor of their neighbor class. Classes that share a gap land
//! in token-order position, which reproduces the splitting chains: when an
//! old class is split by the new element, its lower part, the new element's
//! opposite token, and its upper part come out adjacent in exactly that
//! order.

use crate::conjoint::{conjoint, proper_conjoint, LinearQuasiOrder, Sign, Token};
use crate::poset::{ExtendError, Poset, Witness4};
use crate::transforms::SetRep;
use std::collections::HashMap;
use thiserror::Error;

/// Which token order drives the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Plain token order; guards against two disjoint two-chains only.
    Plain,
    /// Refined token order; additionally guards against a three-chain plus
    /// an incomparable element, and yields proper snapshots.
    Proper,
}

/// Carrier token `x_n^k`: element index `n >= 1`, signed stage `k` with
/// `|k| >= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XToken {
    pub element: u32,
    pub stage: i32,
}

impl XToken {
    pub fn new(element: u32, stage: i32) -> XToken {
        let t = XToken { element, stage };
        assert!(t.well_formed(), "token x_{element}^{stage} is malformed");
        t
    }

    pub fn well_formed(&self) -> bool {
        self.element >= 1 && self.stage.unsigned_abs() >= self.element
    }

    pub fn abs_stage(&self) -> u32 {
        self.stage.unsigned_abs()
    }
}

impl std::fmt::Display for XToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x_{}^{}", self.element, self.stage)
    }
}

/// Relations of a newly revealed element to the existing prefix, as 1-based
/// element indices. `below` lists the elements under the new one, `above`
/// the elements over it; both must already be transitively closed against
/// the prefix.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NewRelations {
    pub below: Vec<u32>,
    pub above: Vec<u32>,
}

impl NewRelations {
    pub fn empty() -> NewRelations {
        NewRelations::default()
    }
}

/// Why an online operation was refused. Witness element ids are 0-based
/// prefix ids (element index minus one).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OnlineError {
    #[error("prefix would contain {0}")]
    TwoPlusTwo(Witness4),
    #[error("prefix would contain {0}")]
    ThreePlusOne(Witness4),
    #[error("relations not closed: {0}")]
    RelationNotClosed(ExtendError),
    #[error("element reference {0} out of range")]
    BadElementRef(u32),
    #[error("unknown token {0}")]
    UnknownToken(XToken),
    #[error("query needs stage {needed}, state is at stage {have}")]
    StageTooLow { needed: u32, have: u32 },
    #[error("stage limit {0} reached")]
    StageLimitExceeded(u32),
    #[error("state is empty")]
    EmptyState,
}

pub const DEFAULT_STAGE_LIMIT: u32 = 256;

/// The evolving carrier order. A value type: [`StagedState::add`] returns
/// the next state and leaves the current one untouched.
#[derive(Clone, Debug)]
pub struct StagedState {
    mode: Mode,
    stage_limit: u32,
    stage: u32,
    prefix: Poset,
    blocks: Vec<Vec<XToken>>,
    position: HashMap<XToken, u32>,
}

impl StagedState {
    pub fn new(mode: Mode) -> StagedState {
        StagedState::with_stage_limit(mode, DEFAULT_STAGE_LIMIT)
    }

    pub fn with_stage_limit(mode: Mode, stage_limit: u32) -> StagedState {
        StagedState {
            mode,
            stage_limit,
            stage: 0,
            prefix: Poset::antichain(0),
            blocks: Vec::new(),
            position: HashMap::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    /// The revealed poset; element index `n` is id `n - 1`.
    pub fn prefix(&self) -> &Poset {
        &self.prefix
    }

    /// The carrier order, bottom-up; tokens within a block are equivalent.
    pub fn blocks(&self) -> &[Vec<XToken>] {
        &self.blocks
    }

    pub fn token_count(&self) -> usize {
        self.position.len()
    }

    fn token_order(&self, p: &Poset) -> LinearQuasiOrder {
        match self.mode {
            Mode::Plain => conjoint(p),
            Mode::Proper => proper_conjoint(p),
        }
        .expect("prefix is gated before the token order is built")
    }

    /// Reveals the next element. The new state is at stage `s + 1`; this
    /// state remains valid and unchanged.
    pub fn add(&self, rels: &NewRelations) -> Result<StagedState, OnlineError> {
        let new_stage = self.stage + 1;
        if new_stage > self.stage_limit {
            return Err(OnlineError::StageLimitExceeded(self.stage_limit));
        }
        let to_ids = |refs: &[u32]| -> Result<Vec<u32>, OnlineError> {
            let mut ids = Vec::with_capacity(refs.len());
            for &n in refs {
                if n < 1 || n > self.stage {
                    return Err(OnlineError::BadElementRef(n));
                }
                ids.push(n - 1);
            }
            ids.sort_unstable();
            ids.dedup();
            Ok(ids)
        };
        let below = to_ids(&rels.below)?;
        let above = to_ids(&rels.above)?;
        let prefix = self
            .prefix
            .extend(&below, &above)
            .map_err(OnlineError::RelationNotClosed)?;
        if let Some(w) = prefix.find_two_plus_two() {
            return Err(OnlineError::TwoPlusTwo(w));
        }
        if self.mode == Mode::Proper {
            if let Some(w) = prefix.find_three_plus_one() {
                return Err(OnlineError::ThreePlusOne(w));
            }
        }

        let order = self.token_order(&prefix);
        let class_count = order.block_count();
        // anchor of each token class: the gap index in the old block
        // sequence it must be inserted into (gap g = just before old block g)
        let mut anchors: Vec<Option<usize>> = vec![None; class_count];
        for (i, class) in order.blocks().iter().enumerate() {
            let mut anchor: Option<usize> = None;
            for &t in class {
                let token = Token::from_index(t);
                if token.element as usize == prefix.len() - 1 {
                    continue; // the new element's token has no old anchor
                }
                let old = XToken {
                    element: token.element + 1,
                    stage: match token.sign {
                        Sign::Plus => self.stage as i32,
                        Sign::Minus => -(self.stage as i32),
                    },
                };
                let block = self.position[&old] as usize;
                // plus tokens insert above their old block, minus below
                let gap = match token.sign {
                    Sign::Plus => block + 1,
                    Sign::Minus => block,
                };
                assert!(
                    anchor.is_none() || anchor == Some(gap),
                    "tokens equivalent at the new stage were not equivalent before"
                );
                anchor = Some(gap);
            }
            anchors[i] = anchor;
        }
        // the new element's own classes borrow the neighbor's anchor: its
        // minus token follows the class below, its plus token the class above
        for i in 0..class_count {
            if anchors[i].is_some() {
                continue;
            }
            let class = &order.blocks()[i];
            assert_eq!(class.len(), 1, "new-element tokens pair with old classes only");
            let sign = Token::from_index(class[0]).sign;
            anchors[i] = Some(match sign {
                Sign::Minus if i == 0 => 0,
                Sign::Minus => anchors[i - 1].expect("class below the new minus token is anchored"),
                Sign::Plus if i + 1 == class_count => self.blocks.len(),
                Sign::Plus => anchors[i + 1].expect("class above the new plus token is anchored"),
            });
        }
        let anchors: Vec<usize> = anchors.into_iter().map(Option::unwrap).collect();
        assert!(
            anchors.windows(2).all(|w| w[0] <= w[1]),
            "class anchors must follow the token order"
        );

        // weave the new classes into the old sequence
        let as_xtokens = |class: &[u32]| -> Vec<XToken> {
            let mut tokens: Vec<XToken> = class
                .iter()
                .map(|&t| {
                    let token = Token::from_index(t);
                    XToken {
                        element: token.element + 1,
                        stage: match token.sign {
                            Sign::Plus => new_stage as i32,
                            Sign::Minus => -(new_stage as i32),
                        },
                    }
                })
                .collect();
            tokens.sort_unstable();
            tokens
        };
        let mut blocks = Vec::with_capacity(self.blocks.len() + class_count);
        let mut class = 0;
        for gap in 0..=self.blocks.len() {
            while class < class_count && anchors[class] == gap {
                blocks.push(as_xtokens(&order.blocks()[class]));
                class += 1;
            }
            if gap < self.blocks.len() {
                blocks.push(self.blocks[gap].clone());
            }
        }
        let mut position = HashMap::with_capacity(self.position.len() + 2 * new_stage as usize);
        for (i, block) in blocks.iter().enumerate() {
            for &t in block {
                position.insert(t, i as u32);
            }
        }
        let next = StagedState {
            mode: self.mode,
            stage_limit: self.stage_limit,
            stage: new_stage,
            prefix,
            blocks,
            position,
        };
        debug_assert_eq!(next.check_invariants(), Ok(()));
        Ok(next)
    }

    fn require_known(&self, t: XToken) -> Result<u32, OnlineError> {
        if !t.well_formed() {
            return Err(OnlineError::UnknownToken(t));
        }
        self.position
            .get(&t)
            .copied()
            .ok_or(OnlineError::UnknownToken(t))
    }

    /// Carrier comparison of two tokens. Stable: the answer never changes
    /// at later stages.
    pub fn compare(&self, a: XToken, b: XToken) -> Result<std::cmp::Ordering, OnlineError> {
        let pa = self.require_known(a)?;
        let pb = self.require_known(b)?;
        Ok(pa.cmp(&pb))
    }

    /// Does `token` belong to element `n`'s interval? Decided by the bounded
    /// lookup at stage `t = max(|k|, n)`, which must already be revealed.
    pub fn member(&self, n: u32, token: XToken) -> Result<bool, OnlineError> {
        if n < 1 {
            return Err(OnlineError::BadElementRef(n));
        }
        let t = token.abs_stage().max(n);
        if t > self.stage {
            return Err(OnlineError::StageTooLow {
                needed: t,
                have: self.stage,
            });
        }
        let pos = self.require_known(token)?;
        let lo = self.position[&XToken::new(n, -(t as i32))];
        let hi = self.position[&XToken::new(n, t as i32)];
        Ok(lo <= pos && pos <= hi)
    }

    /// Materializes the current carrier and intervals as a finite set
    /// representation over point ids, with the revealed prefix poset.
    /// Points number the tokens in `(element, stage)` order.
    pub fn snapshot_setrep(&self) -> Result<(Poset, SetRep), OnlineError> {
        if self.stage == 0 {
            return Err(OnlineError::EmptyState);
        }
        let tokens = self.token_listing();
        let point_of: HashMap<XToken, u32> = tokens
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i as u32))
            .collect();
        let blocks = self
            .blocks
            .iter()
            .map(|block| block.iter().map(|t| point_of[t]).collect())
            .collect();
        let carrier = LinearQuasiOrder::from_blocks(tokens.len(), blocks)
            .expect("carrier blocks partition the tokens");
        let sets = (1..=self.stage)
            .map(|n| {
                tokens
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| self.member(n, t).expect("snapshot tokens are known"))
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();
        Ok((
            self.prefix.clone(),
            SetRep {
                carrier,
                sets,
            },
        ))
    }

    /// All live tokens in `(element, stage)` order.
    pub fn token_listing(&self) -> Vec<XToken> {
        let mut tokens: Vec<XToken> = self.position.keys().copied().collect();
        tokens.sort_unstable();
        tokens
    }

    /// Re-derives the three stage conditions from scratch; `Err` describes
    /// the first failure found. Cheap enough to run after every add in
    /// tests, skipped in release builds.
    pub fn check_invariants(&self) -> Result<(), String> {
        let s = self.stage;
        if s == 0 {
            return if self.blocks.is_empty() {
                Ok(())
            } else {
                Err("stage 0 must be empty".into())
            };
        }
        // blocks are intact and single-stage
        for block in &self.blocks {
            if block.is_empty() {
                return Err("empty block".into());
            }
            if block.iter().any(|t| t.abs_stage() != block[0].abs_stage()) {
                return Err(format!("mixed-stage block {block:?}"));
            }
        }
        // (1) top layer matches the prefix token order
        let order = self.token_order(&self.prefix);
        for a in 0..2 * s {
            for b in 0..2 * s {
                let (ta, tb) = (Token::from_index(a), Token::from_index(b));
                let xa = self.top_token(ta, s);
                let xb = self.top_token(tb, s);
                let in_order = order.le(a, b);
                let in_carrier = self.position[&xa] <= self.position[&xb];
                if in_order != in_carrier {
                    return Err(format!("top layer misplaces {xa} vs {xb}"));
                }
            }
        }
        // (2) nesting
        for n in 1..s {
            for (lo, hi) in [
                (XToken::new(n, -(s as i32)), XToken::new(n, -(s as i32) + 1)),
                (XToken::new(n, s as i32 - 1), XToken::new(n, s as i32)),
            ] {
                if self.position[&lo] >= self.position[&hi] {
                    return Err(format!("nesting broken: {lo} !< {hi}"));
                }
            }
        }
        // (3) no old token inside the new half-open gaps
        for n in 1..s {
            let lo_new = self.position[&XToken::new(n, -(s as i32))];
            let lo_old = self.position[&XToken::new(n, -(s as i32) + 1)];
            let hi_old = self.position[&XToken::new(n, s as i32 - 1)];
            let hi_new = self.position[&XToken::new(n, s as i32)];
            for (&y, &pos) in &self.position {
                if y.abs_stage() >= s {
                    continue;
                }
                if (lo_new <= pos && pos < lo_old) || (hi_old < pos && pos <= hi_new) {
                    return Err(format!("old token {y} sits in a stage-{s} gap of element {n}"));
                }
            }
        }
        Ok(())
    }

    fn top_token(&self, t: Token, s: u32) -> XToken {
        XToken {
            element: t.element + 1,
            stage: match t.sign {
                Sign::Plus => s as i32,
                Sign::Minus => -(s as i32),
            },
        }
    }
}
