//! Interval representations of finite and incrementally revealed partial
//! orders: recognizers for the two forbidden four-element suborders,
//! token-order constructions of distinguishing and proper representations,
//! representation transforms, an online stage-by-stage construction, the
//! block-structured separation gadgets, and exhaustive small-case oracles
//! for cross-checking all of it.

mod bitrel;

pub mod conjoint;
pub mod gadgets;
pub mod online;
pub mod poset;
pub mod textio;
pub mod transforms;
pub mod verify;

pub use conjoint::{
    compatible_linearization, conjoint, enumerate_compatible_linearizations,
    finite_distinguishing_representation, finite_proper_distinguishing_representation,
    proper_conjoint, LinearQuasiOrder, Sign, Token,
};
pub use poset::{collapse_quasi_order, Poset, QuasiOrder, Witness4, WitnessKind};
pub use textio::ParseError;
pub use transforms::{
    closed_to_distinguishing, closed_to_setvalued, phi, proper_11_to_closed, ClosedRep, SetRep,
};
pub use verify::{
    enumerate_posets, oracle_is_interval_order, oracle_is_proper_interval_order,
    verify_closed_rep, verify_interval_rep, Cond, VerifyReport,
};
