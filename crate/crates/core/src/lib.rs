//! One-sorted incidence planes as Kripke frames.
//!
//! A two-sorted point/line geometry can be folded into a single carrier
//! by tracking whether the incidence relation is iterated an even or odd
//! number of times. This crate implements that view at desk scale:
//! frames and the conditions O1-O5/O4' that carve out quasi-1-planes,
//! 1-planes, and their projective/elliptic split; the matching modal
//! machinery (the logics 12g and 8f, scheme/frame-condition
//! correspondence, bounded satisfiability search); bounded morphisms
//! between sorts with the two-sorted preimage construction; least and
//! sort-splitting filtrations; the step-by-step construction of elliptic
//! planes; and generators for projective planes over prime fields,
//! polarity graphs, and windmill graphs.

pub mod construction;
pub mod enumerate;
pub mod error;
pub mod filtration;
pub mod formula;
pub mod frame;
pub mod generators;
pub mod io;
pub mod logics;
pub mod morphism;
pub mod relation;
pub mod semantics;

pub use error::{Error, Result};
pub use formula::{parse, subformulas, Formula, ModalOp, Modality};
pub use frame::{
    check_o, check_p, classify, compose, i2_partition, is_connected, symmetric_closure,
    FrameClassification, FrameKind, OCondition, OneFrame, PCondition, TwoFrame,
};
pub use logics::{Logic, SchemeParams};
pub use morphism::{plus, split_preimage, Carrier, Morphism};
pub use semantics::{
    sat_search, satisfies, true_in_model, truth_set, valid_in_frame, Model, SatResult,
    SatStatus, SearchCaps,
};
