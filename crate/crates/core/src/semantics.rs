//! Models on one-sorted frames, the satisfaction relation, frame
//! validity by exhaustive valuation search, and bounded satisfiability
//! search over frames enumerated up to isomorphism.

use crate::enumerate::{canonical_directed_frames, canonical_symmetric_frames};
use crate::error::{Error, Result};
use crate::formula::{subformulas, Formula};
use crate::frame::{compose, is_connected, is_quasi_1_plane, OneFrame};
use crate::logics::Logic;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

/// A model: a frame plus a valuation. Variables absent from the map are
/// false everywhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Model {
    frame: OneFrame,
    valuation: BTreeMap<String, BTreeSet<usize>>,
}

impl Model {
    pub fn new(
        frame: OneFrame,
        valuation: BTreeMap<String, BTreeSet<usize>>,
    ) -> Result<Model> {
        for worlds in valuation.values() {
            for &v in worlds {
                if v >= frame.n() {
                    return Err(Error::ValuationOutOfRange { v, n: frame.n() });
                }
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn frame(&self) -> &OneFrame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    pub fn holds_at(&self, var: &str, world: usize) -> bool {
        self.valuation.get(var).is_some_and(|s| s.contains(&world))
    }
}

/// The inductive truth relation, evaluated by direct recursion.
pub fn satisfies(model: &Model, world: usize, f: &Formula) -> Result<bool> {
    if world >= model.frame.n() {
        return Err(Error::VertexOutOfRange { v: world, n: model.frame.n() });
    }
    Ok(eval_rec(model, world, f))
}

fn eval_rec(model: &Model, world: usize, f: &Formula) -> bool {
    match f {
        Formula::Var(p) => model.holds_at(p, world),
        Formula::Not(g) => !eval_rec(model, world, g),
        Formula::And(l, r) => eval_rec(model, world, l) && eval_rec(model, world, r),
        Formula::Box(g) => model
            .frame
            .successors(world)
            .into_iter()
            .all(|b| eval_rec(model, b, g)),
        Formula::Dia(g) => model
            .frame
            .successors(world)
            .into_iter()
            .any(|b| eval_rec(model, b, g)),
    }
}

/// Truth sets of every subformula, computed bottom-up; the last entry is
/// the truth set of `f` itself. This is the dynamic-programming evaluator
/// paired with [`satisfies`].
pub fn truth_sets(model: &Model, f: &Formula) -> Vec<Vec<bool>> {
    let subs = subformulas(f);
    truth_sets_over(model, &subs)
}

/// Truth sets for an explicit subformula-closed, post-ordered list.
pub fn truth_sets_over(model: &Model, subs: &[Formula]) -> Vec<Vec<bool>> {
    let n = model.frame.n();
    let index = |g: &Formula| subs.iter().position(|h| h == g).expect("subformula-closed list");
    let mut sets: Vec<Vec<bool>> = Vec::with_capacity(subs.len());
    for g in subs {
        let set = match g {
            Formula::Var(p) => (0..n).map(|a| model.holds_at(p, a)).collect(),
            Formula::Not(h) => {
                let inner = &sets[index(h)];
                (0..n).map(|a| !inner[a]).collect()
            }
            Formula::And(l, r) => {
                let ls = &sets[index(l)];
                let rs = &sets[index(r)];
                (0..n).map(|a| ls[a] && rs[a]).collect()
            }
            Formula::Box(h) => {
                let inner = &sets[index(h)];
                (0..n)
                    .map(|a| model.frame.successors(a).into_iter().all(|b| inner[b]))
                    .collect()
            }
            Formula::Dia(h) => {
                let inner = &sets[index(h)];
                (0..n)
                    .map(|a| model.frame.successors(a).into_iter().any(|b| inner[b]))
                    .collect()
            }
        };
        sets.push(set);
    }
    sets
}

/// Truth set of `f` alone, via the dynamic-programming evaluator.
pub fn truth_set(model: &Model, f: &Formula) -> Vec<bool> {
    truth_sets(model, f).pop().unwrap()
}

/// True at every world.
pub fn true_in_model(model: &Model, f: &Formula) -> bool {
    truth_set(model, f).into_iter().all(|b| b)
}

/// Outcome of a validity check, with a falsifying model and world when
/// the formula is not valid.
#[derive(Clone, Debug)]
pub struct Validity {
    pub valid: bool,
    pub countermodel: Option<(Model, usize)>,
}

pub const DEFAULT_VALUATION_CAP: u128 = 1 << 24;

/// Whether `f` is true in every model on the frame, by exhausting all
/// valuations of the variables occurring in `f` (truth depends on no
/// others). Valuations are enumerated in binary-counter order, so the
/// countermodel returned for an invalid formula is deterministic.
pub fn valid_in_frame(frame: &OneFrame, f: &Formula) -> Result<Validity> {
    valid_in_frame_capped(frame, f, DEFAULT_VALUATION_CAP)
}

pub fn valid_in_frame_capped(frame: &OneFrame, f: &Formula, cap: u128) -> Result<Validity> {
    let vars = f.vars();
    let n = frame.n();
    let bits = vars.len() * n;
    if bits >= 128 || (1u128 << bits) > cap {
        return Err(Error::ValuationCap {
            space: if bits >= 128 { u128::MAX } else { 1 << bits },
            cap,
        });
    }
    let subs = subformulas(f);
    let mut assignment: u128 = 0;
    let total: u128 = 1 << bits;
    while assignment < total {
        let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        for (i, var) in vars.iter().enumerate() {
            let worlds: BTreeSet<usize> = (0..n)
                .filter(|w| assignment >> (i * n + w) & 1 == 1)
                .collect();
            valuation.insert(var.clone(), worlds);
        }
        let model = Model::new(frame.clone(), valuation)?;
        let set = truth_sets_over(&model, &subs).pop().unwrap();
        if let Some(world) = set.iter().position(|&b| !b) {
            return Ok(Validity { valid: false, countermodel: Some((model, world)) });
        }
        assignment += 1;
    }
    Ok(Validity { valid: true, countermodel: None })
}

// ---------------------------------------------------------------------------
// Bounded satisfiability search
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SatStatus {
    Sat,
    Unsat,
    Unknown,
}

/// Caps for the frame search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchCaps {
    pub max_frame_size: usize,
    pub max_frames: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_limit: Option<Duration>,
}

impl Default for SearchCaps {
    fn default() -> SearchCaps {
        SearchCaps { max_frame_size: 4, max_frames: 200_000, time_limit: None }
    }
}

/// Result of a bounded satisfiability search. `status` is `Unsat` only
/// when every connected frame of the logic's class has been exhausted up
/// to `exact_bound`; short of that the search answers `Unknown`, never a
/// guess. For a formula with no modal operators truth is world-local and
/// the one-vertex loop frame belongs to every class searched, so the
/// bound collapses to 1; otherwise it is the filtration bound 2^|phi|
/// (2^(|phi|+1) for 12g, whose quotients may need both sorts).
#[derive(Clone, Debug)]
pub struct SatResult {
    pub status: SatStatus,
    pub witness: Option<(Model, usize)>,
    pub explored_max_size: usize,
    pub explored_frames: usize,
    pub exact_bound: u128,
    pub phi_size: usize,
    pub caps: SearchCaps,
}

fn frames_of_size(logic: Logic, n: usize) -> Vec<OneFrame> {
    match logic {
        Logic::K => canonical_directed_frames(n)
            .into_iter()
            .filter(is_connected_ref)
            .collect(),
        Logic::L12g => canonical_symmetric_frames(n)
            .into_iter()
            .filter(|f| is_quasi_1_plane(f) && is_connected(f))
            .collect(),
        Logic::L8f => canonical_symmetric_frames(n)
            .into_iter()
            .filter(|f| {
                if !is_quasi_1_plane(f) || !is_connected(f) {
                    return false;
                }
                // Elliptic iff I^3 is reflexive on connected quasi-1-planes.
                let i3 = compose(f, 3);
                (0..f.n()).any(|a| i3.get(a, a))
            })
            .collect(),
    }
}

fn is_connected_ref(f: &OneFrame) -> bool {
    is_connected(f)
}

/// Search for a model of `f` on connected frames of the logic's class,
/// in increasing size, frames in canonical-code order, valuations in
/// binary-counter order; the first witness found is deterministic.
pub fn sat_search(f: &Formula, logic: Logic, caps: &SearchCaps) -> SatResult {
    let phi = subformulas(f);
    let phi_size = phi.len();
    let exact_bound: u128 = if f.modal_depth() == 0 {
        1
    } else {
        match logic {
            Logic::L12g => 1u128 << (phi_size + 1).min(127),
            Logic::K | Logic::L8f => 1u128 << phi_size.min(127),
        }
    };
    let vars = f.vars();
    let started = Instant::now();
    let mut explored_frames = 0usize;
    let mut explored_max_size = 0usize;

    let out_of_time = |start: &Instant| match caps.time_limit {
        Some(limit) => start.elapsed() > limit,
        None => false,
    };

    // Valuation assignments are packed into a u64, which bounds the
    // frame sizes searchable for a given variable count; the enumerable
    // universe bounds them further.
    let valuation_size_limit = if vars.is_empty() { usize::MAX } else { 63 / vars.len() };
    let universe_limit = match logic {
        Logic::K => crate::enumerate::MAX_DIRECTED_ENUM,
        Logic::L12g | Logic::L8f => crate::enumerate::MAX_SYMMETRIC_ENUM,
    };
    let size_limit = caps
        .max_frame_size
        .min(universe_limit)
        .min(valuation_size_limit);
    for size in 1..=size_limit {
        if (size as u128) > exact_bound {
            break;
        }
        for frame in frames_of_size(logic, size) {
            if explored_frames >= caps.max_frames || out_of_time(&started) {
                return SatResult {
                    status: SatStatus::Unknown,
                    witness: None,
                    explored_max_size,
                    explored_frames,
                    exact_bound,
                    phi_size,
                    caps: caps.clone(),
                };
            }
            explored_frames += 1;
            if let Some((model, world)) = find_satisfying_valuation(&frame, &phi, &vars) {
                return SatResult {
                    status: SatStatus::Sat,
                    witness: Some((model, world)),
                    explored_max_size: size,
                    explored_frames,
                    exact_bound,
                    phi_size,
                    caps: caps.clone(),
                };
            }
        }
        explored_max_size = size;
    }

    let status = if (explored_max_size as u128) >= exact_bound {
        SatStatus::Unsat
    } else {
        SatStatus::Unknown
    };
    SatResult {
        status,
        witness: None,
        explored_max_size,
        explored_frames,
        exact_bound,
        phi_size,
        caps: caps.clone(),
    }
}

fn find_satisfying_valuation(
    frame: &OneFrame,
    phi: &[Formula],
    vars: &[String],
) -> Option<(Model, usize)> {
    let n = frame.n();
    let bits = vars.len() * n;
    if bits >= 64 {
        return None;
    }
    for assignment in 0u64..1 << bits {
        let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        for (i, var) in vars.iter().enumerate() {
            let worlds: BTreeSet<usize> = (0..n)
                .filter(|w| assignment >> (i * n + w) & 1 == 1)
                .collect();
            valuation.insert(var.clone(), worlds);
        }
        let model = Model::new(frame.clone(), valuation).expect("valuation in range");
        let set = truth_sets_over(&model, phi).pop().unwrap();
        if let Some(world) = set.iter().position(|&b| b) {
            return Some((model, world));
        }
    }
    None
}
