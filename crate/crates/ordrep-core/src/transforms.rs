//! Closed and set-valued interval representations, and the constructions
//! that convert between them.
//!
//! A [`ClosedRep`] gives every element a pair of endpoint points in a
//! carrier order; a [`SetRep`] gives every element a set of carrier points
//! directly. The conditions a representation may satisfy are named `c1..c5`
//! (endpoint form) and `i1..i4` (set form) throughout; see the `verify`
//! module for their exact statements.

use crate::conjoint::{LinearQuasiOrder, Sign, Token};
use crate::poset::Poset;
use crate::textio::{content_lines, parse_num, ParseError};
use crate::verify::{verify_closed_rep, verify_interval_rep, Cond, VerifyReport};
use std::cmp::Ordering;
use thiserror::Error;

/// Interval representation by endpoint maps: element `p` is the interval
/// from point `f0[p]` to point `f1[p]` of the carrier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedRep {
    pub carrier: LinearQuasiOrder,
    pub f0: Vec<u32>,
    pub f1: Vec<u32>,
}

impl ClosedRep {
    pub fn element_count(&self) -> usize {
        self.f0.len()
    }
}

/// Interval representation by explicit point sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetRep {
    pub carrier: LinearQuasiOrder,
    /// `sets[p]` is `F(p)`, ascending point ids.
    pub sets: Vec<Vec<u32>>,
}

impl SetRep {
    pub fn element_count(&self) -> usize {
        self.sets.len()
    }

    pub fn contains(&self, p: u32, point: u32) -> bool {
        self.sets[p as usize].binary_search(&point).is_ok()
    }
}

/// The input representation failed verification; the report lists the
/// violated conditions.
#[derive(Debug, Clone, Error)]
#[error("input representation invalid: {report}")]
pub struct InvalidInputRep {
    pub report: VerifyReport,
}

/// Expands endpoint pairs into explicit point sets:
/// `F(p) = {x : f0(p) <= x <= f1(p)}`.
pub fn closed_to_setvalued(r: &ClosedRep) -> SetRep {
    let m = r.carrier.point_count() as u32;
    let sets = (0..r.element_count())
        .map(|p| {
            (0..m)
                .filter(|&x| r.carrier.le(r.f0[p], x) && r.carrier.le(x, r.f1[p]))
                .collect()
        })
        .collect();
    SetRep {
        carrier: r.carrier.clone(),
        sets,
    }
}

/// Rebuilds a `c1`/`c2` representation into one with all `2n` endpoints
/// pairwise distinct, by ordering the token set so that each `p+` lands
/// just above `f1(p)` and each `p-` just below `f0(p)`, with id tiebreaks:
///
/// * `p+ <= q+` iff `f1(p) < f1(q)`, or equivalent and `p <= q`
/// * `p- <= q-` iff `f0(p) < f0(q)`, or equivalent and `p <= q`
/// * `p+ <= q-` iff `f1(p) < f0(q)`
/// * `p- <= q+` iff `f0(p) <= f1(q)`
///
/// Carrier points outside the endpoint range carry no information and are
/// dropped.
pub fn closed_to_distinguishing(p: &Poset, r: &ClosedRep) -> Result<ClosedRep, InvalidInputRep> {
    assert_eq!(r.element_count(), p.len(), "representation size mismatch");
    let report = verify_closed_rep(p, r, &[Cond::C1, Cond::C2]);
    if !report.ok() {
        return Err(InvalidInputRep { report });
    }
    let carrier = &r.carrier;
    let cmp = |&x: &u32, &y: &u32| -> Ordering {
        if x == y {
            return Ordering::Equal;
        }
        let (a, b) = (Token::from_index(x), Token::from_index(y));
        let (ae, be) = (a.element as usize, b.element as usize);
        match (a.sign, b.sign) {
            (Sign::Plus, Sign::Plus) => carrier
                .cmp_points(r.f1[ae], r.f1[be])
                .then(a.element.cmp(&b.element)),
            (Sign::Minus, Sign::Minus) => carrier
                .cmp_points(r.f0[ae], r.f0[be])
                .then(a.element.cmp(&b.element)),
            (Sign::Plus, Sign::Minus) => {
                if carrier.lt(r.f1[ae], r.f0[be]) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Sign::Minus, Sign::Plus) => {
                if carrier.le(r.f0[ae], r.f1[be]) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    };
    Ok(rep_from_sorted_tokens(p.len(), cmp))
}

/// Evaluates the separation formula on a set representation: every point of
/// `F(p) \ F(q)` strictly precedes every point of `F(q)`. On valid proper
/// 1-1 representations this coincides with its existential twin (either
/// `p = q` or some point of `F(p) \ F(q)` precedes some point of `F(q)`).
pub fn phi(r: &SetRep, p: u32, q: u32) -> bool {
    let fq = &r.sets[q as usize];
    let Some(&min_q) = fq.iter().min_by_key(|&&y| r.carrier.block_index(y)) else {
        return true;
    };
    r.sets[p as usize]
        .iter()
        .filter(|&&x| !r.contains(q, x))
        .all(|&x| r.carrier.lt(x, min_q))
}

/// Builds a closed representation from a proper 1-1 set representation by
/// ordering the tokens with [`phi`]:
///
/// * `p+ <= q+` iff `phi(p, q)`, and the same for `p- <= q-`
/// * `p+ <= q-` iff `p < q`
/// * `p- <= q+` iff `not q < p`
///
/// The output satisfies `c1`, `c2`, `c5`, and also `c4`.
pub fn proper_11_to_closed(p: &Poset, r: &SetRep) -> Result<ClosedRep, InvalidInputRep> {
    assert_eq!(r.element_count(), p.len(), "representation size mismatch");
    let report = verify_interval_rep(p, r, &[Cond::I1, Cond::I2, Cond::I3, Cond::I4]);
    if !report.ok() {
        return Err(InvalidInputRep { report });
    }
    let cmp = |&x: &u32, &y: &u32| -> Ordering {
        if x == y {
            return Ordering::Equal;
        }
        let (a, b) = (Token::from_index(x), Token::from_index(y));
        match (a.sign, b.sign) {
            (Sign::Plus, Sign::Plus) | (Sign::Minus, Sign::Minus) => {
                if phi(r, a.element, b.element) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Sign::Plus, Sign::Minus) => {
                if p.lt(a.element, b.element) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Sign::Minus, Sign::Plus) => {
                if !p.lt(b.element, a.element) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    };
    Ok(rep_from_sorted_tokens(p.len(), cmp))
}

fn rep_from_sorted_tokens(n: usize, cmp: impl Fn(&u32, &u32) -> Ordering) -> ClosedRep {
    let mut tokens: Vec<u32> = (0..2 * n as u32).collect();
    tokens.sort_by(cmp);
    let mut position = vec![0u32; 2 * n];
    for (i, &x) in tokens.iter().enumerate() {
        position[x as usize] = i as u32;
    }
    ClosedRep {
        carrier: LinearQuasiOrder::chain(2 * n),
        f0: (0..n as u32)
            .map(|e| position[Token::minus(e).index() as usize])
            .collect(),
        f1: (0..n as u32)
            .map(|e| position[Token::plus(e).index() as usize])
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// text formats

enum RepBody {
    Closed(Vec<(u32, u32, u32)>),
    Set(Vec<(u32, Vec<u32>)>),
}

fn parse_rep_common(text: &str) -> Result<(LinearQuasiOrder, RepBody), ParseError> {
    let mut lines = content_lines(text).peekable();
    let (ln, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty input, expected `carrier <m>`"))?;
    let m: usize = match header.strip_prefix("carrier ") {
        Some(rest) => parse_num(ln, rest.trim(), "carrier size")?,
        None => return Err(ParseError::new(ln, "expected `carrier <m>`")),
    };
    let mut blocks = Vec::new();
    while let Some(&(_, line)) = lines.peek() {
        if line.starts_with("iv ") || line.starts_with("set ") {
            break;
        }
        let (ln, line) = lines.next().unwrap();
        let mut block = Vec::new();
        for tok in line.split_whitespace() {
            block.push(parse_num(ln, tok, "point id")?);
        }
        blocks.push(block);
        let _ = ln;
    }
    let carrier = LinearQuasiOrder::from_blocks(m, blocks)
        .map_err(|e| ParseError::new(1, format!("carrier: {}", e.0)))?;
    let mut body: Option<RepBody> = None;
    for (ln, line) in lines {
        if let Some(rest) = line.strip_prefix("iv ") {
            let body = body.get_or_insert(RepBody::Closed(Vec::new()));
            let RepBody::Closed(rows) = body else {
                return Err(ParseError::new(ln, "`iv` line in a set representation"));
            };
            let mut it = rest.split_whitespace();
            let p = parse_num(ln, it.next().unwrap_or(""), "element id")?;
            let a = parse_num(ln, it.next().unwrap_or(""), "point id")?;
            let b = parse_num(ln, it.next().unwrap_or(""), "point id")?;
            if it.next().is_some() {
                return Err(ParseError::new(ln, "trailing tokens on `iv` line"));
            }
            rows.push((p, a, b));
        } else if let Some(rest) = line.strip_prefix("set ") {
            let body = body.get_or_insert(RepBody::Set(Vec::new()));
            let RepBody::Set(rows) = body else {
                return Err(ParseError::new(ln, "`set` line in a closed representation"));
            };
            let mut it = rest.split_whitespace();
            let p = parse_num(ln, it.next().unwrap_or(""), "element id")?;
            let mut points = Vec::new();
            for tok in it {
                points.push(parse_num(ln, tok, "point id")?);
            }
            rows.push((p, points));
        } else {
            return Err(ParseError::new(ln, "expected `iv` or `set` line"));
        }
    }
    let body = body.ok_or_else(|| ParseError::new(1, "no `iv` or `set` lines"))?;
    Ok((carrier, body))
}

fn element_rows<T>(rows: Vec<(u32, T)>) -> Result<Vec<T>, ParseError> {
    let n = rows.len();
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    for (p, row) in rows {
        let slot = out
            .get_mut(p as usize)
            .ok_or_else(|| ParseError::new(1, format!("element {p} out of range (n = {n})")))?;
        if slot.is_some() {
            return Err(ParseError::new(1, format!("element {p} listed twice")));
        }
        *slot = Some(row);
    }
    Ok(out.into_iter().map(|r| r.unwrap()).collect())
}

/// Parses the closed representation format: `carrier <m>`, one line of point
/// ids per carrier block (bottom-up), then one `iv <p> <f0> <f1>` line per
/// element.
pub fn parse_closed_rep(text: &str) -> Result<ClosedRep, ParseError> {
    let (carrier, body) = parse_rep_common(text)?;
    let RepBody::Closed(rows) = body else {
        return Err(ParseError::new(1, "expected `iv` lines, found `set`"));
    };
    let m = carrier.point_count() as u32;
    for &(_, a, b) in &rows {
        if a >= m || b >= m {
            return Err(ParseError::new(1, format!("endpoint out of range (m = {m})")));
        }
    }
    let rows = element_rows(rows.into_iter().map(|(p, a, b)| (p, (a, b))).collect())?;
    Ok(ClosedRep {
        carrier,
        f0: rows.iter().map(|&(a, _)| a).collect(),
        f1: rows.iter().map(|&(_, b)| b).collect(),
    })
}

/// Parses the set representation format: `carrier <m>`, block lines, then
/// one `set <p> <points...>` line per element.
pub fn parse_set_rep(text: &str) -> Result<SetRep, ParseError> {
    let (carrier, body) = parse_rep_common(text)?;
    let RepBody::Set(rows) = body else {
        return Err(ParseError::new(1, "expected `set` lines, found `iv`"));
    };
    let m = carrier.point_count() as u32;
    for (_, points) in &rows {
        if points.iter().any(|&x| x >= m) {
            return Err(ParseError::new(1, format!("point out of range (m = {m})")));
        }
    }
    let mut sets = element_rows(rows)?;
    for set in &mut sets {
        set.sort_unstable();
        set.dedup();
    }
    Ok(SetRep { carrier, sets })
}

pub fn render_closed_rep(r: &ClosedRep) -> String {
    let mut out = render_carrier(&r.carrier);
    for p in 0..r.element_count() {
        out.push_str(&format!("iv {p} {} {}\n", r.f0[p], r.f1[p]));
    }
    out
}

pub fn render_set_rep(r: &SetRep) -> String {
    let mut out = render_carrier(&r.carrier);
    for (p, set) in r.sets.iter().enumerate() {
        out.push_str(&format!("set {p}"));
        for x in set {
            out.push_str(&format!(" {x}"));
        }
        out.push('\n');
    }
    out
}

fn render_carrier(c: &LinearQuasiOrder) -> String {
    let mut out = format!("carrier {}\n", c.point_count());
    for block in c.blocks() {
        let line = block
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}
