//! Homomorphisms and bounded morphisms between one- and two-sorted
//! frames; the carrier-merging `plus` construction; the two-sorted
//! preimage of a connected quasi-1-plane; point-generated subframes; and
//! model pullback along a bounded morphism.
//!
//! Constructions audit their own claims with `check_morphism` before
//! returning rather than trusting the theory.

use crate::error::{Error, Result};
use crate::frame::{is_connected, OneFrame, PCondition, TwoFrame};
use crate::semantics::Model;
use std::collections::{BTreeMap, BTreeSet};

/// A frame of either sort. Two-sorted carriers are indexed with points
/// first and lines after.
#[derive(Clone, PartialEq, Debug)]
pub enum Carrier {
    One(OneFrame),
    Two(TwoFrame),
}

impl Carrier {
    pub fn size(&self) -> usize {
        match self {
            Carrier::One(f) => f.n(),
            Carrier::Two(f) => f.carrier_size(),
        }
    }

    fn points_len(&self) -> usize {
        match self {
            Carrier::One(f) => f.n(),
            Carrier::Two(f) => f.points().len(),
        }
    }

    /// Edges over carrier indices: `I` itself for one-sorted frames, and
    /// the point-to-line incidences for two-sorted ones.
    fn edges(&self) -> Vec<(usize, usize)> {
        match self {
            Carrier::One(f) => f.edges(),
            Carrier::Two(f) => {
                let np = f.points().len();
                f.incidence().iter().map(|&(p, l)| (p, np + l)).collect()
            }
        }
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        match self {
            Carrier::One(f) => f.has_edge(a, b),
            Carrier::Two(f) => {
                let np = f.points().len();
                a < np && b >= np && f.incident(a, b - np)
            }
        }
    }
}

/// A vertex map between frames. For two-sorted sources the domain is the
/// combined carrier, points first.
#[derive(Clone, PartialEq, Debug)]
pub struct Morphism {
    source: Carrier,
    target: Carrier,
    map: Vec<usize>,
}

/// How thoroughly to check a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MorphismLevel {
    Homomorphism,
    Bounded,
}

/// A concrete violation of one of the morphism conditions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MorphismViolation {
    /// Edge (a, b) whose image is not an edge.
    Forth(usize, usize),
    /// `theta(a) I' b'` with no witness `b`, `a I b`, `theta(b) = b'`.
    Back1(usize, usize),
    /// `a' I' theta(b)` with no witness `a`, `a I b`, `theta(a) = a'`.
    Back2(usize, usize),
}

impl std::fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MorphismViolation::Forth(a, b) => write!(f, "forth fails at edge ({a},{b})"),
            MorphismViolation::Back1(a, b) => write!(f, "B1 fails at ({a},{b})"),
            MorphismViolation::Back2(a, b) => write!(f, "B2 fails at ({a},{b})"),
        }
    }
}

impl Morphism {
    /// Build and validate totality, ranges, and (for two-sorted pairs)
    /// sort preservation. One-sorted sources with two-sorted targets are
    /// rejected.
    pub fn new(source: Carrier, target: Carrier, map: Vec<usize>) -> Result<Morphism> {
        if matches!((&source, &target), (Carrier::One(_), Carrier::Two(_))) {
            return Err(Error::SortMismatch);
        }
        if map.len() != source.size() {
            return Err(Error::MapNotTotal { expected: source.size(), got: map.len() });
        }
        for (src, &img) in map.iter().enumerate() {
            if img >= target.size() {
                return Err(Error::MapOutOfRange { src, img });
            }
        }
        if let (Carrier::Two(_), Carrier::Two(_)) = (&source, &target) {
            let sp = source.points_len();
            let tp = target.points_len();
            for (src, &img) in map.iter().enumerate() {
                if (src < sp) != (img < tp) {
                    return Err(Error::MapSortViolation { src, img });
                }
            }
        }
        Ok(Morphism { source, target, map })
    }

    pub fn source(&self) -> &Carrier {
        &self.source
    }

    pub fn target(&self) -> &Carrier {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }
}

/// Check the forth condition, and for `Bounded` the back conditions with
/// the quantifier ranges matching the sort pair:
/// 1-frame to 1-frame: B1 over all of X and X';
/// 2-frame to 2-frame: B1 over P and L', B2 over P' and L;
/// 2-frame to 1-frame: B1 over P and X', B2 over X' and L.
pub fn check_morphism(m: &Morphism, level: MorphismLevel) -> Option<MorphismViolation> {
    for (a, b) in m.source.edges() {
        if !m.target.has_edge(m.map[a], m.map[b]) {
            return Some(MorphismViolation::Forth(a, b));
        }
    }
    if level == MorphismLevel::Homomorphism {
        return None;
    }
    let b1_domain: Vec<usize> = (0..m.source.points_len()).collect();
    // Targets of B1: lines for a two-sorted target, everything otherwise.
    let (b1_range, b2_range): (Vec<usize>, Vec<usize>) = match &m.target {
        Carrier::One(f) => ((0..f.n()).collect(), (0..f.n()).collect()),
        Carrier::Two(f) => {
            let np = f.points().len();
            ((np..np + f.lines().len()).collect(), (0..np).collect())
        }
    };
    for &a in &b1_domain {
        for &b_img in &b1_range {
            if m.target.has_edge(m.map[a], b_img) {
                let witnessed = (0..m.source.size())
                    .any(|b| m.source.has_edge(a, b) && m.map[b] == b_img);
                if !witnessed {
                    return Some(MorphismViolation::Back1(a, b_img));
                }
            }
        }
    }
    // B2 applies only to two-sorted sources.
    if let Carrier::Two(src) = &m.source {
        let np = src.points().len();
        let lines: Vec<usize> = (np..np + src.lines().len()).collect();
        for &a_img in &b2_range {
            for &b in &lines {
                if m.target.has_edge(a_img, m.map[b]) {
                    let witnessed = (0..m.source.size())
                        .any(|a| m.source.has_edge(a, b) && m.map[a] == a_img);
                    if !witnessed {
                        return Some(MorphismViolation::Back2(a_img, b));
                    }
                }
            }
        }
    }
    None
}

pub fn is_bounded(m: &Morphism) -> bool {
    check_morphism(m, MorphismLevel::Bounded).is_none()
}

pub fn is_surjective(m: &Morphism) -> bool {
    let covered: BTreeSet<usize> = m.map.iter().copied().collect();
    covered.len() == m.target.size()
}

/// Compose two bounded morphisms; the preconditions (frames match, both
/// bounded) are checked, and the composite is re-audited rather than
/// assumed bounded.
pub fn compose_morphisms(outer: &Morphism, inner: &Morphism) -> Result<Morphism> {
    if inner.target != outer.source {
        return Err(Error::ComposeMismatch);
    }
    if let Some(v) = check_morphism(inner, MorphismLevel::Bounded) {
        return Err(Error::NotBounded(format!("inner: {v}")));
    }
    if let Some(v) = check_morphism(outer, MorphismLevel::Bounded) {
        return Err(Error::NotBounded(format!("outer: {v}")));
    }
    let map: Vec<usize> = inner.map.iter().map(|&v| outer.map[v]).collect();
    let composite = Morphism::new(inner.source.clone(), outer.target.clone(), map)?;
    assert!(
        is_bounded(&composite),
        "composite of bounded morphisms must be bounded"
    );
    Ok(composite)
}

/// The one-sorted frame on `P ∪ L` (points first) whose relation is the
/// symmetric closure of the incidence relation.
pub fn plus(frame: &TwoFrame) -> OneFrame {
    let np = frame.points().len();
    let n = frame.carrier_size();
    let edges: Vec<(usize, usize)> = frame
        .incidence()
        .iter()
        .flat_map(|&(p, l)| [(p, np + l), (np + l, p)])
        .collect();
    OneFrame::new(n, &edges).expect("carrier within limits")
}

/// Re-type a bounded two-to-one morphism with symmetric target as a
/// one-to-one morphism from `plus` of its source, re-verifying the
/// bounded conditions.
pub fn lift_2to1(m: &Morphism) -> Result<Morphism> {
    let (src, tgt) = match (&m.source, &m.target) {
        (Carrier::Two(s), Carrier::One(t)) => (s, t),
        _ => return Err(Error::SortMismatch),
    };
    if !tgt.is_symmetric() {
        return Err(Error::NotBounded("target relation is not symmetric".into()));
    }
    if let Some(v) = check_morphism(m, MorphismLevel::Bounded) {
        return Err(Error::NotBounded(v.to_string()));
    }
    let lifted = Morphism::new(
        Carrier::One(plus(src)),
        Carrier::One(tgt.clone()),
        m.map.clone(),
    )?;
    assert!(is_bounded(&lifted), "lift of a bounded 2-to-1 morphism must be bounded");
    Ok(lifted)
}

/// Write a connected quasi-1-plane as the bounded morphic image of a
/// quasi-2-plane.
///
/// With two I^2-classes the points are `I^2(a)` and the lines `I^3(a)`
/// for the least vertex `a`, with the identity map; with one class the
/// carrier is doubled into a point copy and a line copy with the
/// projection. The output is audited: Q1, Q2, and a surjective bounded
/// two-to-one morphism.
pub fn split_preimage(frame: &OneFrame) -> Result<(TwoFrame, Morphism)> {
    if let Some(failure) = crate::frame::quasi_failure(frame) {
        return Err(Error::NotQuasi(failure));
    }
    if !is_connected(frame) {
        return Err(Error::NotConnected);
    }
    let classes = crate::frame::i2_partition(frame)?;
    let (two, morphism) = match classes.len() {
        1 => {
            let n = frame.n();
            let points: Vec<String> = (0..n).map(|v| format!("p{v}")).collect();
            let lines: Vec<String> = (0..n).map(|v| format!("l{v}")).collect();
            let inc: Vec<(usize, usize)> = frame.edges();
            let two = TwoFrame::new(points, lines, &inc)?;
            let map: Vec<usize> = (0..n).chain(0..n).collect();
            let m = Morphism::new(
                Carrier::Two(two.clone()),
                Carrier::One(frame.clone()),
                map,
            )?;
            (two, m)
        }
        2 => {
            // The class containing vertex 0 is I^2(0); the other is I^3(0).
            let point_class: Vec<usize> = classes[0].clone();
            let line_class: Vec<usize> = classes[1].clone();
            let points: Vec<String> = point_class.iter().map(|v| v.to_string()).collect();
            let lines: Vec<String> = line_class.iter().map(|v| v.to_string()).collect();
            let mut inc = Vec::new();
            for (pi, &pv) in point_class.iter().enumerate() {
                for (li, &lv) in line_class.iter().enumerate() {
                    if frame.has_edge(pv, lv) {
                        inc.push((pi, li));
                    }
                }
            }
            let two = TwoFrame::new(points, lines, &inc)?;
            let map: Vec<usize> =
                point_class.iter().chain(line_class.iter()).copied().collect();
            let m = Morphism::new(
                Carrier::Two(two.clone()),
                Carrier::One(frame.clone()),
                map,
            )?;
            (two, m)
        }
        k => return Err(Error::SplitClassCount(k)),
    };
    assert!(
        crate::frame::check_p(&two, PCondition::Q1).holds,
        "split preimage must satisfy Q1"
    );
    assert!(
        crate::frame::check_p(&two, PCondition::Q2).holds,
        "split preimage must satisfy Q2"
    );
    assert!(is_bounded(&morphism), "split preimage map must be bounded");
    assert!(is_surjective(&morphism), "split preimage map must be surjective");
    Ok((two, morphism))
}

/// The smallest inner subframe containing `a`: carrier
/// `{b : a I^n b, n >= 0}` with the restricted relation, plus the
/// inclusion morphism (audited bounded; the result is connected).
pub fn point_generated(frame: &OneFrame, a: usize) -> Result<(OneFrame, Morphism)> {
    if a >= frame.n() {
        return Err(Error::VertexOutOfRange { v: a, n: frame.n() });
    }
    let mut seen = vec![false; frame.n()];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for b in frame.successors(v) {
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    let carrier: Vec<usize> = (0..frame.n()).filter(|&v| seen[v]).collect();
    let index_of: BTreeMap<usize, usize> =
        carrier.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for &v in &carrier {
        for b in frame.successors(v) {
            edges.push((index_of[&v], index_of[&b]));
        }
    }
    let sub = OneFrame::new(carrier.len(), &edges)?;
    let inclusion = Morphism::new(
        Carrier::One(sub.clone()),
        Carrier::One(frame.clone()),
        carrier,
    )?;
    assert!(is_bounded(&inclusion), "inclusion of an inner subframe must be bounded");
    assert!(is_connected(&sub), "point-generated frames must be connected");
    Ok((sub, inclusion))
}

/// Pull a model on the target of a bounded one-to-one morphism back to
/// its source: `V'(p)` is the preimage of `V(p)`. Truth at `a` in the
/// result matches truth at `theta(a)` in the original for every formula.
pub fn pull_back_model(m: &Morphism, model: &Model) -> Result<Model> {
    let (src, tgt) = match (&m.source, &m.target) {
        (Carrier::One(s), Carrier::One(t)) => (s, t),
        _ => return Err(Error::SortMismatch),
    };
    if model.frame() != tgt {
        return Err(Error::InvalidInput(
            "model frame differs from the morphism target".into(),
        ));
    }
    if let Some(v) = check_morphism(m, MorphismLevel::Bounded) {
        return Err(Error::NotBounded(v.to_string()));
    }
    let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (p, worlds) in model.valuation() {
        let pre: BTreeSet<usize> =
            (0..src.n()).filter(|&a| worlds.contains(&m.map[a])).collect();
        valuation.insert(p.clone(), pre);
    }
    Model::new(src.clone(), valuation)
}
