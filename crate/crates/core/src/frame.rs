//! One- and two-sorted frames, the incidence conditions O1-O5 and O4',
//! the projective-plane axioms P1-P3 and quasi-plane axioms Q1-Q2, and
//! frame classification.

use crate::error::{Error, QuasiFailure, Result};
use crate::relation::Relation;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Default cap on frame sizes; constructors reject anything larger.
pub const DEFAULT_MAX_VERTICES: usize = 4096;

/// A one-sorted frame `(X, I)` with `X = {0..n-1}`. Loops are permitted
/// and `I` need not be symmetric.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneFrame {
    rel: Relation,
}

impl OneFrame {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<OneFrame> {
        OneFrame::with_limit(n, edges, DEFAULT_MAX_VERTICES)
    }

    pub fn with_limit(n: usize, edges: &[(usize, usize)], max: usize) -> Result<OneFrame> {
        if n > max {
            return Err(Error::FrameTooLarge { n, max });
        }
        let mut rel = Relation::empty(n);
        for &(a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { v: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            rel.set(a, b, true);
        }
        Ok(OneFrame { rel })
    }

    /// Build from an undirected edge list: every pair is added in both
    /// directions.
    pub fn symmetric(n: usize, edges: &[(usize, usize)]) -> Result<OneFrame> {
        let doubled: Vec<(usize, usize)> = edges
            .iter()
            .flat_map(|&(a, b)| [(a, b), (b, a)])
            .collect();
        OneFrame::new(n, &doubled)
    }

    pub fn from_relation(rel: Relation) -> OneFrame {
        OneFrame { rel }
    }

    pub fn n(&self) -> usize {
        self.rel.n()
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rel.get(a, b)
    }

    pub fn successors(&self, a: usize) -> Vec<usize> {
        self.rel.successors(a)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rel.pairs()
    }

    /// Directed edges with `a <= b`, for symmetric frames a compact listing.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.rel.pairs().into_iter().filter(|&(a, b)| a <= b).collect()
    }

    pub fn is_serial(&self) -> bool {
        self.rel.is_serial()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rel.is_symmetric()
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n()).all(|a| !self.rel.get(a, a))
    }
}

/// `I^k`, the k-fold relational composition; `compose(f, 0)` is the
/// identity relation.
pub fn compose(frame: &OneFrame, k: usize) -> Relation {
    frame.rel.power(k)
}

/// The frame `(X, I ∪ I˘)` on the same carrier.
pub fn symmetric_closure(frame: &OneFrame) -> OneFrame {
    OneFrame { rel: frame.rel.union(&frame.rel.transpose()) }
}

/// Whether any two vertices are joined by a path in `I ∪ I˘`. A single
/// vertex with no edges counts as connected.
pub fn is_connected(frame: &OneFrame) -> bool {
    let n = frame.n();
    if n == 0 {
        return true;
    }
    let sym = symmetric_closure(frame);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in sym.successors(a) {
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// The one-sorted frame conditions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum OCondition {
    O1,
    O2,
    O3,
    O4,
    #[serde(rename = "O4'")]
    O4Prime,
    O5,
}

impl fmt::Display for OCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OCondition::O1 => "O1",
            OCondition::O2 => "O2",
            OCondition::O3 => "O3",
            OCondition::O4 => "O4",
            OCondition::O4Prime => "O4'",
            OCondition::O5 => "O5",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for OCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<OCondition> {
        match s {
            "O1" | "o1" => Ok(OCondition::O1),
            "O2" | "o2" => Ok(OCondition::O2),
            "O3" | "o3" => Ok(OCondition::O3),
            "O4" | "o4" => Ok(OCondition::O4),
            "O4'" | "o4'" | "O4p" | "o4p" => Ok(OCondition::O4Prime),
            "O5" | "o5" => Ok(OCondition::O5),
            _ => Err(Error::InvalidInput(format!("unknown condition {s:?}"))),
        }
    }
}

/// Outcome of evaluating a quantified frame condition. For universal
/// conditions (O1, O2, O3, O5) `evidence` is a counterexample tuple when
/// the condition fails; for existential ones (O4, O4') it is a witness
/// tuple when the condition holds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub evidence: Option<Vec<usize>>,
}

impl ConditionCheck {
    fn pass() -> ConditionCheck {
        ConditionCheck { holds: true, evidence: None }
    }

    fn fail(evidence: Vec<usize>) -> ConditionCheck {
        ConditionCheck { holds: false, evidence: Some(evidence) }
    }

    fn witness(evidence: Vec<usize>) -> ConditionCheck {
        ConditionCheck { holds: true, evidence: Some(evidence) }
    }

    fn not_found() -> ConditionCheck {
        ConditionCheck { holds: false, evidence: None }
    }
}

/// Evaluate a one-sorted frame condition literally, as quantified.
pub fn check_o(frame: &OneFrame, cond: OCondition) -> ConditionCheck {
    let n = frame.n();
    match cond {
        // For all a, b: a I^4 b implies a I^2 b.
        OCondition::O1 => {
            let i2 = compose(frame, 2);
            let i4 = compose(frame, 4);
            for a in 0..n {
                for b in 0..n {
                    if i4.get(a, b) && !i2.get(a, b) {
                        return ConditionCheck::fail(vec![a, b]);
                    }
                }
            }
            ConditionCheck::pass()
        }
        // For all a, b: a I^2 b or a I^3 b.
        OCondition::O2 => {
            let i2 = compose(frame, 2);
            let i3 = compose(frame, 3);
            for a in 0..n {
                for b in 0..n {
                    if !i2.get(a, b) && !i3.get(a, b) {
                        return ConditionCheck::fail(vec![a, b]);
                    }
                }
            }
            ConditionCheck::pass()
        }
        // No proper 4-cycles: a I b I c I d I a implies a = c or b = d.
        OCondition::O3 => {
            for a in 0..n {
                for b in frame.successors(a) {
                    for c in frame.successors(b) {
                        if c == a {
                            continue;
                        }
                        for d in frame.successors(c) {
                            if d != b && frame.has_edge(d, a) {
                                return ConditionCheck::fail(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
            ConditionCheck::pass()
        }
        // There exist a,b,c,d,e,f with a I b I c I d and e I f, a not
        // incident with d, and none of a,b,c,d incident with e or f.
        OCondition::O4 => {
            let clear = |x: usize, e: usize, f: usize| {
                !frame.has_edge(x, e) && !frame.has_edge(x, f)
            };
            for a in 0..n {
                for b in frame.successors(a) {
                    for c in frame.successors(b) {
                        for d in frame.successors(c) {
                            if frame.has_edge(a, d) {
                                continue;
                            }
                            for e in 0..n {
                                for f in frame.successors(e) {
                                    if clear(a, e, f)
                                        && clear(b, e, f)
                                        && clear(c, e, f)
                                        && clear(d, e, f)
                                    {
                                        return ConditionCheck::witness(vec![a, b, c, d, e, f]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            ConditionCheck::not_found()
        }
        // There exist a,b,c,d with a I b I c, a != c, b != d, and neither
        // a I c nor b I d.
        OCondition::O4Prime => {
            for a in 0..n {
                for b in frame.successors(a) {
                    for c in frame.successors(b) {
                        if a == c || frame.has_edge(a, c) {
                            continue;
                        }
                        for d in 0..n {
                            if d != b && !frame.has_edge(b, d) {
                                return ConditionCheck::witness(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
            ConditionCheck::not_found()
        }
        // For all a, b: a I^2 b.
        OCondition::O5 => {
            let i2 = compose(frame, 2);
            for a in 0..n {
                for b in 0..n {
                    if !i2.get(a, b) {
                        return ConditionCheck::fail(vec![a, b]);
                    }
                }
            }
            ConditionCheck::pass()
        }
    }
}

/// Check serial + symmetric + O1, reporting the first failure.
pub fn quasi_failure(frame: &OneFrame) -> Option<QuasiFailure> {
    for a in 0..frame.n() {
        if frame.successors(a).is_empty() {
            return Some(QuasiFailure::NotSerial(a));
        }
    }
    for a in 0..frame.n() {
        for b in 0..frame.n() {
            if frame.has_edge(a, b) && !frame.has_edge(b, a) {
                return Some(QuasiFailure::NotSymmetric(a, b));
            }
        }
    }
    let o1 = check_o(frame, OCondition::O1);
    if !o1.holds {
        let ev = o1.evidence.unwrap();
        return Some(QuasiFailure::O1Fails(ev[0], ev[1]));
    }
    None
}

pub fn is_quasi_1_plane(frame: &OneFrame) -> bool {
    quasi_failure(frame).is_none()
}

/// The I^2-equivalence classes of a quasi-1-plane, in first-occurrence
/// order. On a connected quasi-1-plane there are one or two classes,
/// namely `I^2(a)` and `I^3(a)` for any vertex `a`.
pub fn i2_partition(frame: &OneFrame) -> Result<Vec<Vec<usize>>> {
    if let Some(failure) = quasi_failure(frame) {
        return Err(Error::NotQuasi(failure));
    }
    let i2 = compose(frame, 2);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; frame.n()];
    for a in 0..frame.n() {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..frame.n()).filter(|&b| i2.get(a, b)).collect();
        let id = classes.len();
        for &b in &members {
            class_of[b] = id;
        }
        classes.push(members);
    }
    Ok(classes)
}

/// How a frame sits in the quasi-1-plane taxonomy. `NotQuasi` covers
/// frames failing seriality, symmetry, or O1, and also the disconnected
/// quasi frames whose I^2-class count is neither one nor two (the
/// projective/elliptic split is defined through the class count).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    NotQuasi,
    QuasiProjective,
    QuasiElliptic,
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FrameKind::NotQuasi => "not-quasi",
            FrameKind::QuasiProjective => "quasi-projective",
            FrameKind::QuasiElliptic => "quasi-elliptic",
        };
        write!(f, "{s}")
    }
}

/// Everything `classify` reports about a one-sorted frame.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct FrameClassification {
    pub is_serial: bool,
    pub is_symmetric: bool,
    pub is_irreflexive: bool,
    /// O1, O2, O3, O4, O4', O5 in order.
    pub satisfies: Vec<(OCondition, bool)>,
    /// Present when the frame is a quasi-1-plane.
    pub i2_classes: Option<Vec<Vec<usize>>>,
    pub kind: FrameKind,
    /// O1 and O2 and O3.
    pub is_plane: bool,
    /// O4' for quasi-elliptic frames, O4 otherwise.
    pub is_nondegenerate: bool,
}

impl FrameClassification {
    pub fn satisfies(&self, cond: OCondition) -> bool {
        self.satisfies.iter().find(|(c, _)| *c == cond).map(|(_, v)| *v).unwrap()
    }
}

pub fn classify(frame: &OneFrame) -> FrameClassification {
    let conds = [
        OCondition::O1,
        OCondition::O2,
        OCondition::O3,
        OCondition::O4,
        OCondition::O4Prime,
        OCondition::O5,
    ];
    let satisfies: Vec<(OCondition, bool)> =
        conds.iter().map(|&c| (c, check_o(frame, c).holds)).collect();
    let get = |c: OCondition| satisfies.iter().find(|(x, _)| *x == c).unwrap().1;

    let i2_classes = i2_partition(frame).ok();
    let kind = match &i2_classes {
        Some(classes) if classes.len() == 1 => FrameKind::QuasiElliptic,
        Some(classes) if classes.len() == 2 => FrameKind::QuasiProjective,
        _ => FrameKind::NotQuasi,
    };
    let is_plane = get(OCondition::O1) && get(OCondition::O2) && get(OCondition::O3);
    let is_nondegenerate = if kind == FrameKind::QuasiElliptic {
        get(OCondition::O4Prime)
    } else {
        get(OCondition::O4)
    };
    FrameClassification {
        is_serial: frame.is_serial(),
        is_symmetric: frame.is_symmetric(),
        is_irreflexive: frame.is_irreflexive(),
        satisfies,
        i2_classes,
        kind,
        is_plane,
        is_nondegenerate,
    }
}

// ---------------------------------------------------------------------------
// Two-sorted frames
// ---------------------------------------------------------------------------

/// A two-sorted frame `(P, L, I)` with labeled points and lines and
/// `I ⊆ P × L`. Labels must be pairwise distinct across both sorts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoFrame {
    points: Vec<String>,
    lines: Vec<String>,
    /// Pairs of (point index, line index).
    inc: BTreeSet<(usize, usize)>,
}

impl TwoFrame {
    pub fn new(
        points: Vec<String>,
        lines: Vec<String>,
        incidence: &[(usize, usize)],
    ) -> Result<TwoFrame> {
        let mut seen = BTreeSet::new();
        for label in points.iter().chain(lines.iter()) {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let mut inc = BTreeSet::new();
        for &(p, l) in incidence {
            if p >= points.len() {
                return Err(Error::VertexOutOfRange { v: p, n: points.len() });
            }
            if l >= lines.len() {
                return Err(Error::VertexOutOfRange { v: l, n: lines.len() });
            }
            inc.insert((p, l));
        }
        Ok(TwoFrame { points, lines, inc })
    }

    pub fn from_labels(
        points: Vec<String>,
        lines: Vec<String>,
        incidence: &[(String, String)],
    ) -> Result<TwoFrame> {
        let pidx = |s: &String| points.iter().position(|p| p == s);
        let lidx = |s: &String| lines.iter().position(|l| l == s);
        let mut pairs = Vec::new();
        for (p, l) in incidence {
            let pi = pidx(p).ok_or_else(|| Error::UnknownLabel(p.clone()))?;
            let li = lidx(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            pairs.push((pi, li));
        }
        TwoFrame::new(points, lines, &pairs)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn incidence(&self) -> &BTreeSet<(usize, usize)> {
        &self.inc
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.inc.contains(&(p, l))
    }

    /// Lines through point `p`.
    pub fn pencil(&self, p: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.incident(p, l)).collect()
    }

    /// Points on line `l`.
    pub fn range(&self, l: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&p| self.incident(p, l)).collect()
    }

    /// Size of the combined carrier `P ∪ L`.
    pub fn carrier_size(&self) -> usize {
        self.points.len() + self.lines.len()
    }
}

/// Two-sorted frame conditions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum PCondition {
    P1,
    P2,
    P3,
    Q1,
    Q2,
}

impl fmt::Display for PCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PCondition::P1 => "P1",
            PCondition::P2 => "P2",
            PCondition::P3 => "P3",
            PCondition::Q1 => "Q1",
            PCondition::Q2 => "Q2",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for PCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<PCondition> {
        match s {
            "P1" | "p1" => Ok(PCondition::P1),
            "P2" | "p2" => Ok(PCondition::P2),
            "P3" | "p3" => Ok(PCondition::P3),
            "Q1" | "q1" => Ok(PCondition::Q1),
            "Q2" | "q2" => Ok(PCondition::Q2),
            _ => Err(Error::InvalidInput(format!("unknown condition {s:?}"))),
        }
    }
}

/// Like [`ConditionCheck`] but with label evidence: a counterexample for
/// failed universals (P1, P2, Q1, Q2), a witness for P3 when it holds.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConditionCheck2 {
    pub holds: bool,
    pub evidence: Option<Vec<String>>,
}

/// Evaluate a two-sorted condition literally. P1/P2 quantify over distinct
/// pairs; Q1/Q2 over all pairs, equal ones included.
pub fn check_p(frame: &TwoFrame, cond: PCondition) -> ConditionCheck2 {
    let np = frame.points().len();
    let nl = frame.lines().len();
    let plabel = |p: usize| frame.points()[p].clone();
    let llabel = |l: usize| frame.lines()[l].clone();
    match cond {
        PCondition::P1 => {
            for a in 0..np {
                for b in a + 1..np {
                    let common =
                        (0..nl).filter(|&l| frame.incident(a, l) && frame.incident(b, l)).count();
                    if common != 1 {
                        return ConditionCheck2 {
                            holds: false,
                            evidence: Some(vec![plabel(a), plabel(b)]),
                        };
                    }
                }
            }
            ConditionCheck2 { holds: true, evidence: None }
        }
        PCondition::P2 => {
            for a in 0..nl {
                for b in a + 1..nl {
                    let common =
                        (0..np).filter(|&p| frame.incident(p, a) && frame.incident(p, b)).count();
                    if common != 1 {
                        return ConditionCheck2 {
                            holds: false,
                            evidence: Some(vec![llabel(a), llabel(b)]),
                        };
                    }
                }
            }
            ConditionCheck2 { holds: true, evidence: None }
        }
        PCondition::P3 => {
            // A quadrangle: four points, no three collinear.
            let collinear = |x: usize, y: usize, z: usize| {
                (0..nl).any(|l| frame.incident(x, l) && frame.incident(y, l) && frame.incident(z, l))
            };
            for a in 0..np {
                for b in a + 1..np {
                    for c in b + 1..np {
                        if collinear(a, b, c) {
                            continue;
                        }
                        for d in c + 1..np {
                            if !collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d) {
                                return ConditionCheck2 {
                                    holds: true,
                                    evidence: Some(vec![
                                        plabel(a),
                                        plabel(b),
                                        plabel(c),
                                        plabel(d),
                                    ]),
                                };
                            }
                        }
                    }
                }
            }
            ConditionCheck2 { holds: false, evidence: None }
        }
        PCondition::Q1 => {
            for a in 0..np {
                for b in 0..np {
                    if !(0..nl).any(|l| frame.incident(a, l) && frame.incident(b, l)) {
                        return ConditionCheck2 {
                            holds: false,
                            evidence: Some(vec![plabel(a), plabel(b)]),
                        };
                    }
                }
            }
            ConditionCheck2 { holds: true, evidence: None }
        }
        PCondition::Q2 => {
            for a in 0..nl {
                for b in 0..nl {
                    if !(0..np).any(|p| frame.incident(p, a) && frame.incident(p, b)) {
                        return ConditionCheck2 {
                            holds: false,
                            evidence: Some(vec![llabel(a), llabel(b)]),
                        };
                    }
                }
            }
            ConditionCheck2 { holds: true, evidence: None }
        }
    }
}

pub fn is_projective_plane(frame: &TwoFrame) -> bool {
    check_p(frame, PCondition::P1).holds
        && check_p(frame, PCondition::P2).holds
        && check_p(frame, PCondition::P3).holds
}

pub fn is_quasi_2_plane(frame: &TwoFrame) -> bool {
    check_p(frame, PCondition::Q1).holds && check_p(frame, PCondition::Q2).holds
}
