//! Axiom schemes, the correspondence between instances of the scheme
//! `<>^m []^n phi -> []^p <>^q phi` and its first-order frame condition,
//! the logics 12g and 8f, and a semi-decision procedure for counting
//! non-equivalent modalities over a frame corpus.

use crate::enumerate::quasi_1_planes_up_to;
use crate::error::{Error, Result};
use crate::formula::{iterate, Formula, ModalOp, Modality};
use crate::frame::{check_o, compose, is_connected, is_quasi_1_plane, OCondition, OneFrame};
use crate::generators::{gen_f0, gen_pg2, gen_polarity_graph, gen_windmill};
use crate::morphism::plus;
use crate::semantics::{valid_in_frame, Validity};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Parameters of the scheme `<>^m []^n phi -> []^p <>^q phi`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SchemeParams {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl SchemeParams {
    pub fn new(m: usize, n: usize, p: usize, q: usize) -> SchemeParams {
        SchemeParams { m, n, p, q }
    }
}

/// The single-variable instance of the scheme at the given parameters,
/// over the variable `p0`.
pub fn scheme_instance(params: SchemeParams) -> Formula {
    let v = Formula::var("p0");
    let lhs = iterate(ModalOp::Dia, params.m, iterate(ModalOp::Box, params.n, v.clone()));
    let rhs = iterate(ModalOp::Box, params.p, iterate(ModalOp::Dia, params.q, v));
    Formula::imp(lhs, rhs)
}

/// The first-order frame condition matching the scheme: for all a, b, c
/// with `a I^m b` and `a I^p c`, there is a d with `b I^n d` and
/// `c I^q d`.
pub fn g_prime_condition(frame: &OneFrame, params: SchemeParams) -> bool {
    let im = compose(frame, params.m);
    let ip = compose(frame, params.p);
    let in_ = compose(frame, params.n);
    let iq = compose(frame, params.q);
    let n = frame.n();
    for a in 0..n {
        for b in 0..n {
            if !im.get(a, b) {
                continue;
            }
            for c in 0..n {
                if !ip.get(a, c) {
                    continue;
                }
                let found = (0..n).any(|d| in_.get(b, d) && iq.get(c, d));
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// A frame on which scheme validity and the frame condition disagreed
/// (there should never be one).
#[derive(Clone, Debug)]
pub struct Divergence {
    pub frame: OneFrame,
    pub scheme_valid: bool,
    pub condition_holds: bool,
}

#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub params: SchemeParams,
    pub frames_checked: usize,
    pub divergences: Vec<Divergence>,
}

/// Check `valid_in_frame(instance) <=> condition` on every frame of the
/// corpus.
pub fn correspondence_test(
    corpus: &[OneFrame],
    params: SchemeParams,
) -> Result<CorrespondenceReport> {
    let instance = scheme_instance(params);
    let mut divergences = Vec::new();
    for frame in corpus {
        let Validity { valid, .. } = valid_in_frame(frame, &instance)?;
        let condition = g_prime_condition(frame, params);
        if valid != condition {
            divergences.push(Divergence {
                frame: frame.clone(),
                scheme_valid: valid,
                condition_holds: condition,
            });
        }
    }
    Ok(CorrespondenceReport { params, frames_checked: corpus.len(), divergences })
}

// ---------------------------------------------------------------------------
// Logics
// ---------------------------------------------------------------------------

/// The three logics: K, 12g (KDB + the scheme []^2 phi -> []^4 phi), and
/// 8f (12g plus []^3 phi -> phi).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Logic {
    K,
    #[serde(rename = "12g")]
    L12g,
    #[serde(rename = "8f")]
    L8f,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Logic::K => "K",
            Logic::L12g => "12g",
            Logic::L8f => "8f",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Logic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Logic> {
        match s {
            "K" | "k" => Ok(Logic::K),
            "12g" => Ok(Logic::L12g),
            "8f" => Ok(Logic::L8f),
            _ => Err(Error::InvalidInput(format!("unknown logic {s:?}"))),
        }
    }
}

pub const D_PARAMS: SchemeParams = SchemeParams { m: 0, n: 1, p: 0, q: 1 };
pub const B_PARAMS: SchemeParams = SchemeParams { m: 1, n: 1, p: 0, q: 0 };
pub const FOUR_SQUARED_PARAMS: SchemeParams = SchemeParams { m: 0, n: 2, p: 4, q: 0 };
pub const T3_PARAMS: SchemeParams = SchemeParams { m: 0, n: 3, p: 0, q: 0 };

/// The K axiom instance over distinct variables p0, p1:
/// `[](p0 -> p1) -> ([]p0 -> []p1)`.
pub fn k_axiom() -> Formula {
    let p0 = Formula::var("p0");
    let p1 = Formula::var("p1");
    Formula::imp(
        Formula::bx(Formula::imp(p0.clone(), p1.clone())),
        Formula::imp(Formula::bx(p0), Formula::bx(p1)),
    )
}

/// The single-variable K instance `[](p0 -> p0) -> ([]p0 -> []p0)`.
/// Scheme validity equals single-instance validity (frame validity is
/// closed under substitution), and one variable keeps the valuation
/// space linear in the frame size.
pub fn k_axiom_single_var() -> Formula {
    let p0 = Formula::var("p0");
    Formula::imp(
        Formula::bx(Formula::imp(p0.clone(), p0.clone())),
        Formula::imp(Formula::bx(p0.clone()), Formula::bx(p0)),
    )
}

/// Named single-variable axiom instances of a logic.
pub fn axioms(logic: Logic) -> Vec<(&'static str, Formula)> {
    let mut out = vec![("K", k_axiom_single_var())];
    if matches!(logic, Logic::L12g | Logic::L8f) {
        out.push(("D", scheme_instance(D_PARAMS)));
        out.push(("B", scheme_instance(B_PARAMS)));
        out.push(("4^2", scheme_instance(FOUR_SQUARED_PARAMS)));
    }
    if logic == Logic::L8f {
        out.push(("T^3", scheme_instance(T3_PARAMS)));
    }
    out
}

/// Whether every axiom instance of the logic is valid in the frame.
pub fn validates_logic(frame: &OneFrame, logic: Logic) -> Result<bool> {
    for (_, axiom) in axioms(logic) {
        if !valid_in_frame(frame, &axiom)?.valid {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On a connected quasi-1-plane, ellipticity is equivalent to `I^3`
/// being reflexive, which is equivalent to a single vertex with
/// `a I^3 a`. Returns that test, asserting agreement with the class
/// count.
pub fn classify_elliptic_via_t3(frame: &OneFrame) -> Result<bool> {
    if let Some(failure) = crate::frame::quasi_failure(frame) {
        return Err(Error::NotQuasi(failure));
    }
    if !is_connected(frame) {
        return Err(Error::NotConnected);
    }
    let i3 = compose(frame, 3);
    let has_i3_loop = (0..frame.n()).any(|a| i3.get(a, a));
    let classes = crate::frame::i2_partition(frame)?;
    assert_eq!(
        has_i3_loop,
        classes.len() == 1,
        "I^3 reflexivity must match the I^2-class count on connected quasi-1-planes"
    );
    Ok(has_i3_loop)
}

// ---------------------------------------------------------------------------
// Modalities
// ---------------------------------------------------------------------------

/// Reduce every maximal same-symbol run of length >= 4 by steps of two
/// (I^n = I^(n+2) for n >= 2 on quasi-1-planes), so runs end at length
/// 2 or 3 with their parity intact. Idempotent.
pub fn normalize_modality(m: &Modality) -> Modality {
    let mut out: Vec<ModalOp> = Vec::new();
    let word = m.word();
    let mut i = 0;
    while i < word.len() {
        let op = word[i];
        let mut run = 0;
        while i < word.len() && word[i] == op {
            run += 1;
            i += 1;
        }
        let reduced = if run >= 4 { 2 + run % 2 } else { run };
        out.extend(std::iter::repeat_n(op, reduced));
    }
    Modality::new(out).expect("nonempty input stays nonempty")
}

/// All modalities of length 1..=max_len, shortest first, box before dia.
pub fn all_modalities(max_len: usize) -> Vec<Modality> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for code in 0u32..1 << len {
            let word: Vec<ModalOp> = (0..len)
                .map(|i| {
                    if code >> (len - 1 - i) & 1 == 0 {
                        ModalOp::Box
                    } else {
                        ModalOp::Dia
                    }
                })
                .collect();
            out.push(Modality::new(word).unwrap());
        }
    }
    out
}

/// Truth set of `M p` at every world, for valuation `val` of p, computed
/// by stepping through the word right to left.
fn modality_truth_set(frame: &OneFrame, word: &[ModalOp], val: &[bool]) -> Vec<bool> {
    let n = frame.n();
    let mut t: Vec<bool> = val.to_vec();
    for op in word.iter().rev() {
        t = (0..n)
            .map(|a| {
                let succ = frame.successors(a);
                match op {
                    ModalOp::Box => succ.iter().all(|&b| t[b]),
                    ModalOp::Dia => succ.iter().any(|&b| t[b]),
                }
            })
            .collect();
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationEvidence {
    pub left: String,
    pub right: String,
    /// Index into the corpus.
    pub frame_index: usize,
    /// Worlds where p is true.
    pub valuation: Vec<usize>,
    pub world: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MergeBasis {
    /// Same normal form; equality holds on every quasi-1-plane.
    NormalForm,
    /// No separating frame/valuation/world within the caps.
    NoSeparatorFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct MergeEvidence {
    pub left: String,
    pub right: String,
    pub basis: MergeBasis,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModalityClass {
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModalityClassReport {
    pub max_len: usize,
    pub corpus_size: usize,
    pub skipped_frames: usize,
    pub classes: Vec<ModalityClass>,
    /// One entry per adjacent pair merged into the same class.
    pub merges: Vec<MergeEvidence>,
    /// One entry per pair of distinct classes.
    pub separations: Vec<SeparationEvidence>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ModalityCaps {
    /// Frames with more vertices than this are skipped (and counted).
    pub max_frame_vertices: usize,
}

impl Default for ModalityCaps {
    fn default() -> ModalityCaps {
        ModalityCaps { max_frame_vertices: 14 }
    }
}

/// Group the modalities of length <= max_len by their truth behaviour
/// over the corpus: two modalities land in the same class when no corpus
/// frame, valuation, and world tells them apart. Classes are exact
/// semantic equivalence over the corpus; agreement with the logic is a
/// semi-decision, so each merged pair carries its basis (normal-form
/// identity is sound on all quasi-1-planes, failure to separate is a
/// conjecture) and each pair of classes carries a concrete separator.
pub fn modality_classes(
    max_len: usize,
    corpus: &[OneFrame],
    caps: &ModalityCaps,
) -> ModalityClassReport {
    let modalities = all_modalities(max_len);
    let usable: Vec<(usize, &OneFrame)> = corpus
        .iter()
        .enumerate()
        .filter(|(_, f)| f.n() <= caps.max_frame_vertices && f.n() < 64)
        .collect();
    let skipped_frames = corpus.len() - usable.len();

    // Signatures: concatenated truth sets over every (frame, valuation).
    let mut signatures: Vec<Vec<bool>> = vec![Vec::new(); modalities.len()];
    for &(_, frame) in &usable {
        let n = frame.n();
        for assignment in 0u64..1 << n {
            let val: Vec<bool> = (0..n).map(|w| assignment >> w & 1 == 1).collect();
            for (mi, m) in modalities.iter().enumerate() {
                signatures[mi].extend(modality_truth_set(frame, m.word(), &val));
            }
        }
    }

    let mut groups: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for (mi, sig) in signatures.iter().enumerate() {
        groups.entry(sig.clone()).or_default().push(mi);
    }
    let mut class_indices: Vec<Vec<usize>> = groups.into_values().collect();
    // Classes ordered by their least member (length, then word order).
    class_indices.sort_by_key(|members| members[0]);

    let mut classes = Vec::new();
    let mut merges = Vec::new();
    for members in &class_indices {
        let rep = &modalities[members[0]];
        classes.push(ModalityClass {
            representative: rep.to_string(),
            members: members.iter().map(|&mi| modalities[mi].to_string()).collect(),
        });
        for pair in members.windows(2) {
            let (a, b) = (&modalities[pair[0]], &modalities[pair[1]]);
            let basis = if normalize_modality(a) == normalize_modality(b) {
                MergeBasis::NormalForm
            } else {
                MergeBasis::NoSeparatorFound
            };
            merges.push(MergeEvidence {
                left: a.to_string(),
                right: b.to_string(),
                basis,
            });
        }
    }

    // A separator for each pair of classes: the first frame, valuation,
    // world (in corpus/counter/index order) where the representatives
    // differ.
    let mut separations = Vec::new();
    for i in 0..class_indices.len() {
        for j in i + 1..class_indices.len() {
            let a = &modalities[class_indices[i][0]];
            let b = &modalities[class_indices[j][0]];
            if let Some(ev) = find_separator(&usable, a, b) {
                separations.push(ev);
            }
        }
    }

    ModalityClassReport {
        max_len,
        corpus_size: corpus.len(),
        skipped_frames,
        classes,
        merges,
        separations,
    }
}

fn find_separator(
    usable: &[(usize, &OneFrame)],
    a: &Modality,
    b: &Modality,
) -> Option<SeparationEvidence> {
    for &(index, frame) in usable {
        let n = frame.n();
        for assignment in 0u64..1 << n {
            let val: Vec<bool> = (0..n).map(|w| assignment >> w & 1 == 1).collect();
            let ta = modality_truth_set(frame, a.word(), &val);
            let tb = modality_truth_set(frame, b.word(), &val);
            if let Some(world) = (0..n).find(|&w| ta[w] != tb[w]) {
                return Some(SeparationEvidence {
                    left: a.to_string(),
                    right: b.to_string(),
                    frame_index: index,
                    valuation: (0..n).filter(|&w| val[w]).collect(),
                    world,
                });
            }
        }
    }
    None
}

/// The separation corpus for a logic: every quasi-1-plane with at most
/// `size_cap` vertices (one per isomorphism class) plus the generated
/// fixtures, restricted to elliptic frames for 8f. For K the modality
/// question is not posed here.
pub fn standard_corpus(logic: Logic, size_cap: usize) -> Vec<OneFrame> {
    let enumerated = quasi_1_planes_up_to(size_cap);
    let mut fixtures: Vec<OneFrame> = vec![gen_f0(), plus(&gen_pg2(2).unwrap())];
    fixtures.push(gen_polarity_graph(2).unwrap());
    fixtures.push(gen_polarity_graph(3).unwrap());
    for k in 1..=3 {
        fixtures.push(gen_windmill(k).unwrap());
    }
    let mut corpus: Vec<OneFrame> = enumerated;
    corpus.extend(fixtures);
    match logic {
        Logic::L8f => corpus
            .into_iter()
            .filter(|f| f.is_symmetric() && check_o(f, OCondition::O5).holds)
            .collect(),
        _ => corpus.into_iter().filter(is_quasi_ref).collect(),
    }
}

fn is_quasi_ref(f: &OneFrame) -> bool {
    is_quasi_1_plane(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_directed_frames;
    use crate::formula::parse;
    use crate::generators::QuasiKind;

    #[test]
    fn scheme_instances_match_the_named_axioms() {
        assert_eq!(scheme_instance(D_PARAMS), parse("[]p0 -> <>p0").unwrap());
        assert_eq!(scheme_instance(B_PARAMS), parse("<>[]p0 -> p0").unwrap());
        assert_eq!(
            scheme_instance(FOUR_SQUARED_PARAMS),
            parse("[][]p0 -> [][][][]p0").unwrap()
        );
        assert_eq!(scheme_instance(T3_PARAMS), parse("[][][]p0 -> p0").unwrap());
    }

    #[test]
    fn g_prime_special_cases_on_small_frames() {
        for n in 1..=4usize {
            for frame in canonical_directed_frames(n) {
                assert_eq!(
                    g_prime_condition(&frame, D_PARAMS),
                    frame.is_serial(),
                    "D-condition vs seriality on {frame:?}"
                );
                assert_eq!(
                    g_prime_condition(&frame, B_PARAMS),
                    frame.is_symmetric(),
                    "B-condition vs symmetry on {frame:?}"
                );
                assert_eq!(
                    g_prime_condition(&frame, FOUR_SQUARED_PARAMS),
                    check_o(&frame, OCondition::O1).holds,
                    "4^2-condition vs O1 on {frame:?}"
                );
            }
        }
    }

    #[test]
    fn correspondence_on_loop_frame() {
        let lp = OneFrame::new(1, &[(0, 0)]).unwrap();
        let report = correspondence_test(
            &[lp],
            SchemeParams::new(1, 1, 1, 1),
        )
        .unwrap();
        assert!(report.divergences.is_empty());
    }

    #[test]
    fn axioms_tables() {
        assert_eq!(axioms(Logic::K).len(), 1);
        let names: Vec<&str> = axioms(Logic::L12g).iter().map(|(n, _)| *n).collect();
        assert_eq!(names, vec!["K", "D", "B", "4^2"]);
        let names8: Vec<&str> = axioms(Logic::L8f).iter().map(|(n, _)| *n).collect();
        assert_eq!(names8, vec!["K", "D", "B", "4^2", "T^3"]);
    }

    #[test]
    fn fano_plus_validates_12g_but_not_8f() {
        let f = plus(&gen_pg2(2).unwrap());
        assert!(validates_logic(&f, Logic::L12g).unwrap());
        assert!(!validates_logic(&f, Logic::L8f).unwrap());
    }

    #[test]
    fn polarity_graph_validates_8f() {
        let f = gen_polarity_graph(2).unwrap();
        assert!(validates_logic(&f, Logic::L8f).unwrap());
    }

    #[test]
    fn two_chain_validates_12g() {
        let f = OneFrame::symmetric(2, &[(0, 1)]).unwrap();
        assert!(validates_logic(&f, Logic::L12g).unwrap());
    }

    #[test]
    fn elliptic_detection_via_i3_loops() {
        let k3 = OneFrame::symmetric(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(classify_elliptic_via_t3(&k3).unwrap());
        let fano_plus = plus(&gen_pg2(2).unwrap());
        assert!(!classify_elliptic_via_t3(&fano_plus).unwrap());
        let lp = OneFrame::new(1, &[(0, 0)]).unwrap();
        assert!(classify_elliptic_via_t3(&lp).unwrap());
        let not_quasi = OneFrame::new(2, &[(0, 1)]).unwrap();
        assert!(classify_elliptic_via_t3(&not_quasi).is_err());
    }

    fn modality(s: &str) -> Modality {
        let word: Vec<ModalOp> = s
            .chars()
            .map(|c| if c == 'B' { ModalOp::Box } else { ModalOp::Dia })
            .collect();
        Modality::new(word).unwrap()
    }

    #[test]
    fn normalization_reduces_long_runs() {
        assert_eq!(normalize_modality(&modality("DDDD")), modality("DD"));
        assert_eq!(normalize_modality(&modality("BBBBB")), modality("BBB"));
        assert_eq!(normalize_modality(&modality("DBD")), modality("DBD"));
        assert_eq!(normalize_modality(&modality("BDDDDDB")), modality("BDDDB"));
        assert_eq!(normalize_modality(&modality("BDDDDB")), modality("BDDB"));
        let m = modality("BBBBBBBB");
        assert_eq!(normalize_modality(&normalize_modality(&m)), normalize_modality(&m));
    }

    #[test]
    fn normalization_preserves_validity_on_quasi_corpus() {
        // Truth-set comparison over every valuation of every
        // quasi-1-plane with at most 6 vertices, plus a spot check of
        // the formula-level equivalence on the small corpus.
        let corpus = quasi_1_planes_up_to(6);
        for m in all_modalities(6) {
            let norm = normalize_modality(&m);
            if norm == m {
                continue;
            }
            for frame in &corpus {
                let n = frame.n();
                for assignment in 0u64..1 << n {
                    let val: Vec<bool> = (0..n).map(|w| assignment >> w & 1 == 1).collect();
                    assert_eq!(
                        modality_truth_set(frame, m.word(), &val),
                        modality_truth_set(frame, norm.word(), &val),
                        "{m} vs {norm} differ on {frame:?} under {val:?}"
                    );
                }
            }
        }
        let p = Formula::var("p");
        let small = quasi_1_planes_up_to(3);
        for m in all_modalities(5) {
            let norm = normalize_modality(&m);
            if norm == m {
                continue;
            }
            let equiv = Formula::iff(m.apply(p.clone()), norm.apply(p.clone()));
            for frame in &small {
                assert!(valid_in_frame(frame, &equiv).unwrap().valid);
            }
        }
    }

    #[test]
    fn dia_and_box_are_separated() {
        let corpus = standard_corpus(Logic::L12g, 3);
        let report = modality_classes(1, &corpus, &ModalityCaps::default());
        assert_eq!(report.classes.len(), 2);
        assert_eq!(report.separations.len(), 1);
    }

    #[test]
    fn normalization_merges_show_up_as_normal_form_merges() {
        let corpus = standard_corpus(Logic::L12g, 4);
        let report = modality_classes(4, &corpus, &ModalityCaps::default());
        // <><> and <><><><> are identified by I^4 = I^2.
        let target = ("<><>".to_string(), "<><><><>".to_string());
        let found = report.classes.iter().any(|c| {
            c.members.contains(&target.0) && c.members.contains(&target.1)
        });
        assert!(found, "run reduction should merge <><> with <><><><>");
    }

    #[test]
    fn quasi_corpus_stabilizes_at_twelve_classes_small() {
        // Already at size cap 4 the corpus separates all twelve classes.
        let corpus = standard_corpus(Logic::L12g, 4);
        let at4 = modality_classes(4, &corpus, &ModalityCaps::default());
        let at5 = modality_classes(5, &corpus, &ModalityCaps::default());
        assert_eq!(at4.classes.len(), 12);
        assert_eq!(at5.classes.len(), 12);
    }

    #[test]
    fn elliptic_corpus_has_eight_classes_small() {
        let corpus = standard_corpus(Logic::L8f, 4);
        let at4 = modality_classes(4, &corpus, &ModalityCaps::default());
        let at5 = modality_classes(5, &corpus, &ModalityCaps::default());
        assert_eq!(at4.classes.len(), 8);
        assert_eq!(at5.classes.len(), 8);
    }

    #[test]
    fn validates_12g_iff_quasi_exhaustive_up_to_4() {
        for n in 1..=4usize {
            for frame in crate::enumerate::canonical_directed_frames(n) {
                let validates = validates_logic(&frame, Logic::L12g).unwrap();
                assert_eq!(
                    validates,
                    is_quasi_1_plane(&frame),
                    "D+B+4^2 validity must match quasi-1-planehood on {frame:?}"
                );
            }
        }
    }

    #[test]
    fn twelve_g_axioms_valid_down_the_chain() {
        // Quasi, connected quasi, 1-plane, projective, non-degenerate.
        let mut corpus = vec![
            crate::generators::gen_random_quasi(5, QuasiKind::Elliptic, 11).unwrap(),
            crate::generators::gen_random_quasi(5, QuasiKind::Projective, 11).unwrap(),
            gen_f0(),
            gen_polarity_graph(2).unwrap(),
            plus(&gen_pg2(2).unwrap()),
        ];
        corpus.extend(quasi_1_planes_up_to(3));
        for frame in &corpus {
            assert!(validates_logic(frame, Logic::L12g).unwrap(), "12g fails on {frame:?}");
        }
    }

    #[test]
    fn two_variable_k_instance_valid_on_all_small_frames() {
        let k = k_axiom();
        for n in 1..=3usize {
            for frame in canonical_directed_frames(n) {
                assert!(valid_in_frame(&frame, &k).unwrap().valid);
            }
        }
    }
}
