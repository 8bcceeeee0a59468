//! Finite quotients of models through a subformula set: the least
//! filtration, and the sort-splitting variant for projective sources
//! that filtrates the two I^2-classes separately.

use crate::error::{Error, Result};
use crate::formula::{subformulas, Formula};
use crate::frame::{check_o, classify, is_connected, OCondition, OneFrame, FrameClassification};
use crate::relation::Relation;
use crate::semantics::{truth_sets_over, Model};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationMode {
    Least,
    ProjectiveSplit,
}

/// A filtration of `source` through the subformula set of a formula.
/// `classes[a]` is the quotient world of `a`; class ids are assigned in
/// first-occurrence order of the truth-bitmask (and sort, in split mode),
/// so quotients are deterministic.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub source: Model,
    pub phi: Vec<Formula>,
    pub classes: Vec<usize>,
    pub quotient: Model,
    pub mode: FiltrationMode,
}

/// Filtrate `model` through the subformulas of `f`.
///
/// In `Least` mode the whole carrier is quotiented by agreement on the
/// subformula set. `ProjectiveSplit` requires a connected quasi-1-plane
/// source with exactly two I^2-classes (the class of vertex 0 acting as
/// the points); the two sorts are quotiented separately, so vertices are
/// identified only within their own class. In both modes two quotient
/// worlds are related iff some pair of their members is, and a variable
/// in the subformula set is true at a class iff it is true at one of its
/// members; variables outside the set are false everywhere.
pub fn filtrate(model: &Model, f: &Formula, mode: FiltrationMode) -> Result<Filtration> {
    let phi = subformulas(f);
    if phi.len() > 64 {
        return Err(Error::PhiTooLarge(phi.len()));
    }
    let n = model.frame().n();
    let truth = truth_sets_over(model, &phi);
    let masks: Vec<u64> = (0..n)
        .map(|a| {
            phi.iter()
                .enumerate()
                .fold(0u64, |acc, (i, _)| acc | ((truth[i][a] as u64) << i))
        })
        .collect();

    // Sort of each vertex: always 0 in least mode; the I^2-class index
    // (points first) in split mode.
    let sorts: Vec<usize> = match mode {
        FiltrationMode::Least => vec![0; n],
        FiltrationMode::ProjectiveSplit => {
            if let Some(failure) = crate::frame::quasi_failure(model.frame()) {
                return Err(Error::NotQuasi(failure));
            }
            if !is_connected(model.frame()) {
                return Err(Error::NotConnected);
            }
            let classes = crate::frame::i2_partition(model.frame())?;
            if classes.len() != 2 {
                return Err(Error::SplitClassCount(classes.len()));
            }
            let mut sorts = vec![0; n];
            for &v in &classes[1] {
                sorts[v] = 1;
            }
            sorts
        }
    };

    let mut class_ids: BTreeMap<(usize, u64), usize> = BTreeMap::new();
    let mut classes = vec![0usize; n];
    for a in 0..n {
        let key = (sorts[a], masks[a]);
        let next = class_ids.len();
        let id = *class_ids.entry(key).or_insert(next);
        classes[a] = id;
    }
    let num_classes = class_ids.len();

    let mut rel = Relation::empty(num_classes);
    for (a, b) in model.frame().edges() {
        rel.set(classes[a], classes[b], true);
    }
    let quotient_frame = OneFrame::from_relation(rel);

    let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for g in &phi {
        if let Formula::Var(p) = g {
            let worlds: BTreeSet<usize> = (0..n)
                .filter(|&a| model.holds_at(p, a))
                .map(|a| classes[a])
                .collect();
            valuation.insert(p.clone(), worlds);
        }
    }
    let quotient = Model::new(quotient_frame, valuation)?;

    let filt = Filtration { source: model.clone(), phi, classes, quotient, mode };
    audit_filtration_clauses(&filt, &truth);
    Ok(filt)
}

/// The defining clauses: the class map is a homomorphism; related
/// classes transfer boxed members of phi forwards and diamond members
/// backwards; the quotient valuation is the image of the source one.
#[allow(clippy::needless_range_loop)]
fn audit_filtration_clauses(filt: &Filtration, truth: &[Vec<bool>]) {
    let model = &filt.source;
    let n = model.frame().n();
    let q = filt.quotient.frame();
    for (a, b) in model.frame().edges() {
        assert!(
            q.has_edge(filt.classes[a], filt.classes[b]),
            "class map must be a homomorphism"
        );
    }
    for (i, g) in filt.phi.iter().enumerate() {
        match g {
            Formula::Box(inner) => {
                let ii = filt.phi.iter().position(|h| h == inner.as_ref()).unwrap();
                for a in 0..n {
                    if !truth[i][a] {
                        continue;
                    }
                    for b in 0..n {
                        if q.has_edge(filt.classes[a], filt.classes[b]) {
                            assert!(
                                truth[ii][b],
                                "boxed formulas must transfer along quotient edges"
                            );
                        }
                    }
                }
            }
            Formula::Dia(inner) => {
                let ii = filt.phi.iter().position(|h| h == inner.as_ref()).unwrap();
                for b in 0..n {
                    if !truth[ii][b] {
                        continue;
                    }
                    for a in 0..n {
                        if q.has_edge(filt.classes[a], filt.classes[b]) {
                            assert!(
                                truth[i][a],
                                "diamond formulas must transfer back along quotient edges"
                            );
                        }
                    }
                }
            }
            Formula::Var(p) => {
                let image: BTreeSet<usize> = (0..n)
                    .filter(|&a| model.holds_at(p, a))
                    .map(|a| filt.classes[a])
                    .collect();
                let quotient_val: BTreeSet<usize> = (0..filt.quotient.frame().n())
                    .filter(|&c| filt.quotient.holds_at(p, c))
                    .collect();
                assert_eq!(image, quotient_val, "quotient valuation must be the image");
            }
            _ => {}
        }
    }
}

/// A subformula/world pair where source and quotient truth disagree.
#[derive(Clone, Debug)]
pub struct FiltrationViolation {
    pub formula: Formula,
    pub world: usize,
}

/// Check that every subformula holds at a source world iff it holds at
/// that world's class in the quotient.
pub fn verify_filtration_theorem(filt: &Filtration) -> Option<FiltrationViolation> {
    let source_truth = truth_sets_over(&filt.source, &filt.phi);
    let quotient_truth = truth_sets_over(&filt.quotient, &filt.phi);
    for (i, g) in filt.phi.iter().enumerate() {
        for a in 0..filt.source.frame().n() {
            if source_truth[i][a] != quotient_truth[i][filt.classes[a]] {
                return Some(FiltrationViolation { formula: g.clone(), world: a });
            }
        }
    }
    None
}

/// Classify the quotient frame, asserting the properties the source
/// guarantees: a least filtration of a symmetric O5 source stays
/// symmetric with O5; a split filtration is serial and symmetric,
/// satisfies O1, and keeps the two sorts as its only I^2-classes.
pub fn audit_quotient_logic(filt: &Filtration) -> Result<FrameClassification> {
    if let Some(failure) = crate::frame::quasi_failure(filt.source.frame()) {
        return Err(Error::NotQuasi(failure));
    }
    let q = filt.quotient.frame();
    match filt.mode {
        FiltrationMode::Least => {
            if check_o(filt.source.frame(), OCondition::O5).holds {
                assert!(q.is_symmetric(), "least filtration must preserve symmetry");
                assert!(
                    check_o(q, OCondition::O5).holds,
                    "least filtration must preserve O5"
                );
            }
        }
        FiltrationMode::ProjectiveSplit => {
            assert!(q.is_serial(), "split filtration must preserve seriality");
            assert!(q.is_symmetric(), "split filtration must preserve symmetry");
            assert!(check_o(q, OCondition::O1).holds, "split filtration must satisfy O1");
            let classes = crate::frame::i2_partition(q)?;
            assert_eq!(classes.len(), 2, "split quotient must keep two I^2-classes");
            // The two I^2-classes are exactly the images of the sorts:
            // edges only ever cross them.
            for (a, b) in q.edges() {
                assert_ne!(
                    classes.iter().position(|c| c.contains(&a)),
                    classes.iter().position(|c| c.contains(&b)),
                    "split quotient edges must cross the two sorts"
                );
            }
        }
    }
    Ok(classify(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::frame::FrameKind;
    use crate::generators::{gen_pg2, gen_polarity_graph};
    use crate::morphism::plus;
    use crate::semantics::satisfies;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn model(frame: OneFrame, val: &[(&str, &[usize])]) -> Model {
        let valuation = val
            .iter()
            .map(|(p, ws)| (p.to_string(), ws.iter().copied().collect()))
            .collect();
        Model::new(frame, valuation).unwrap()
    }

    #[test]
    fn least_filtration_of_two_chain() {
        let m = model(OneFrame::symmetric(2, &[(0, 1)]).unwrap(), &[("p", &[1])]);
        let f = parse("<>p").unwrap();
        let filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
        assert_eq!(filt.phi.len(), 2);
        assert!(filt.quotient.frame().n() <= 4);
        assert!(verify_filtration_theorem(&filt).is_none());
    }

    #[test]
    fn all_worlds_agreeing_collapse_to_one_class() {
        let m = model(OneFrame::symmetric(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), &[]);
        let f = parse("p").unwrap();
        let filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
        assert_eq!(filt.quotient.frame().n(), 1);
        assert_eq!(filt.quotient.frame().edges(), vec![(0, 0)]);
        assert!(verify_filtration_theorem(&filt).is_none());
    }

    #[test]
    fn split_filtration_of_fano_plus_respects_sorts() {
        let frame = plus(&gen_pg2(2).unwrap());
        let m = model(frame, &[("p", &[0, 3, 9])]);
        let f = parse("[](p -> <>p)").unwrap();
        let filt = filtrate(&m, &f, FiltrationMode::ProjectiveSplit).unwrap();
        let bound = 1usize << (filt.phi.len() + 1);
        assert!(filt.quotient.frame().n() <= bound);
        assert!(verify_filtration_theorem(&filt).is_none());
        let c = audit_quotient_logic(&filt).unwrap();
        assert_eq!(c.kind, FrameKind::QuasiProjective);
    }

    #[test]
    fn corrupted_quotient_fails_verification() {
        let m = model(OneFrame::symmetric(2, &[(0, 1)]).unwrap(), &[("p", &[1])]);
        let f = parse("<>p").unwrap();
        let mut filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
        // Remove every quotient edge.
        let q = filt.quotient.frame().n();
        filt.quotient = Model::new(
            OneFrame::new(q, &[]).unwrap(),
            filt.quotient.valuation().clone(),
        )
        .unwrap();
        let violation = verify_filtration_theorem(&filt);
        assert!(violation.is_some());
    }

    #[test]
    fn split_mode_refuses_elliptic_sources() {
        let m = model(gen_polarity_graph(2).unwrap(), &[]);
        let f = parse("p").unwrap();
        assert!(matches!(
            filtrate(&m, &f, FiltrationMode::ProjectiveSplit),
            Err(Error::SplitClassCount(1))
        ));
    }

    #[test]
    fn least_mode_on_elliptic_sources_keeps_o5() {
        for src in [
            OneFrame::new(1, &[(0, 0)]).unwrap(),
            OneFrame::symmetric(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
            gen_polarity_graph(2).unwrap(),
        ] {
            let m = model(src, &[("p", &[0])]);
            let f = parse("[]p -> <>p").unwrap();
            let filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
            let c = audit_quotient_logic(&filt).unwrap();
            assert_eq!(c.kind, FrameKind::QuasiElliptic);
            assert!(verify_filtration_theorem(&filt).is_none());
        }
    }

    #[test]
    fn degenerate_two_chain_splits_projectively() {
        let m = model(OneFrame::symmetric(2, &[(0, 1)]).unwrap(), &[("p", &[0])]);
        let f = parse("p").unwrap();
        let filt = filtrate(&m, &f, FiltrationMode::ProjectiveSplit).unwrap();
        let c = audit_quotient_logic(&filt).unwrap();
        assert_eq!(c.kind, FrameKind::QuasiProjective);
    }

    fn random_formula(rng: &mut StdRng, depth: usize) -> Formula {
        if depth == 0 || rng.random_bool(0.3) {
            return Formula::var(if rng.random_bool(0.5) { "p" } else { "q" });
        }
        match rng.random_range(0..4) {
            0 => Formula::not(random_formula(rng, depth - 1)),
            1 => Formula::and(
                random_formula(rng, depth - 1),
                random_formula(rng, depth - 1),
            ),
            2 => Formula::bx(random_formula(rng, depth - 1)),
            _ => Formula::dia(random_formula(rng, depth - 1)),
        }
    }

    #[test]
    fn filtration_theorem_on_random_instances() {
        let mut rng = StdRng::seed_from_u64(2024);
        for _ in 0..100 {
            let n = rng.random_range(1..=8);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if rng.random_bool(0.4) {
                        edges.push((a, b));
                    }
                }
            }
            let frame = OneFrame::new(n, &edges).unwrap();
            let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
            for var in ["p", "q"] {
                let worlds: BTreeSet<usize> =
                    (0..n).filter(|_| rng.random_bool(0.5)).collect();
                valuation.insert(var.to_string(), worlds);
            }
            let m = Model::new(frame, valuation).unwrap();
            let f = random_formula(&mut rng, 3);
            let filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
            assert!(filt.quotient.frame().n() <= 1 << filt.phi.len());
            assert!(verify_filtration_theorem(&filt).is_none(), "formula {f}");
            // Spot-check agreement through the class map as well.
            for a in 0..m.frame().n() {
                assert_eq!(
                    satisfies(&m, a, &f).unwrap(),
                    satisfies(&filt.quotient, filt.classes[a], &f).unwrap()
                );
            }
        }
    }

    #[test]
    fn least_filtration_preserves_seriality_and_symmetry() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.random_range(1..=6);
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a..n {
                    if rng.random_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            let frame = OneFrame::symmetric(n, &edges).unwrap();
            if !frame.is_serial() {
                continue;
            }
            let m = model(frame, &[("p", &[0])]);
            let f = parse("<>p & p").unwrap();
            let filt = filtrate(&m, &f, FiltrationMode::Least).unwrap();
            assert!(filt.quotient.frame().is_serial());
            assert!(filt.quotient.frame().is_symmetric());
        }
    }
}
