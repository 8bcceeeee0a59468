//! Enumeration of small frames up to isomorphism by orderly generation.
//!
//! A frame's code packs its adjacency bits in a column-block reading
//! order (all bits touching vertex j come after all bits among vertices
//! below j), earlier bits most significant. A frame is canonical when its
//! code is lexicographically minimal over all vertex permutations. With
//! this reading order the induced subframe on the first k vertices of a
//! canonical frame is itself canonical, so extending canonical frames by
//! one vertex in all possible ways and keeping the canonical results
//! enumerates every isomorphism class exactly once.

use crate::frame::OneFrame;
use crate::relation::Relation;

pub const MAX_ENUM_VERTICES: usize = 7;

/// Class counts explode quickly; these are the largest sizes whose full
/// levels are generatable in reasonable time (directed frames number
/// ~292k at 5 vertices and ~97M at 6; symmetric ones ~5k at 6 and ~79k
/// at 7, but the 7-vertex level needs 5040 permutations per candidate).
pub const MAX_DIRECTED_ENUM: usize = 5;
pub const MAX_SYMMETRIC_ENUM: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Reading order for directed frames on n vertices: for each j, the bits
/// (i,j) and (j,i) for i < j, then (j,j). Returns (row, col) pairs.
fn directed_order(n: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..j {
            order.push((i, j));
            order.push((j, i));
        }
        order.push((j, j));
    }
    order
}

/// Reading order for symmetric frames: for each j, the bits {i,j} for
/// i < j, then the loop {j,j}.
fn symmetric_order(n: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(n * (n + 1) / 2);
    for j in 0..n {
        for i in 0..j {
            order.push((i, j));
        }
        order.push((j, j));
    }
    order
}

fn code_of(rel: &Relation, order: &[(usize, usize)], perm: Option<&[usize]>) -> u64 {
    debug_assert!(order.len() <= 64);
    let mut code = 0u64;
    for (t, &(a, b)) in order.iter().enumerate() {
        let bit = match perm {
            // The relabeled frame has an edge (a,b) iff the original has
            // (perm[a], perm[b]).
            Some(p) => rel.get(p[a], p[b]),
            None => rel.get(a, b),
        };
        if bit {
            code |= 1 << (63 - t);
        }
    }
    code
}

fn min_code(rel: &Relation, order: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| code_of(rel, order, Some(p)))
        .min()
        .unwrap()
}

fn frame_from_code(n: usize, code: u64, order: &[(usize, usize)], symmetric: bool) -> OneFrame {
    let mut rel = Relation::empty(n);
    for (t, &(a, b)) in order.iter().enumerate() {
        if code >> (63 - t) & 1 == 1 {
            rel.set(a, b, true);
            if symmetric {
                rel.set(b, a, true);
            }
        }
    }
    OneFrame::from_relation(rel)
}

/// Whether the frame's own code equals the minimum over all relabelings.
pub fn is_canonical(frame: &OneFrame) -> bool {
    let n = frame.n();
    assert!(n <= MAX_ENUM_VERTICES);
    let order = if frame.is_symmetric() {
        symmetric_order(n)
    } else {
        directed_order(n)
    };
    let perms = permutations(n);
    code_of(frame.relation(), &order, None) == min_code(frame.relation(), &order, &perms)
}

/// Canonical representative of the frame's isomorphism class.
pub fn canonical_form(frame: &OneFrame) -> OneFrame {
    let n = frame.n();
    assert!(n <= MAX_ENUM_VERTICES);
    let symmetric = frame.is_symmetric();
    let order = if symmetric { symmetric_order(n) } else { directed_order(n) };
    let perms = permutations(n);
    let code = min_code(frame.relation(), &order, &perms);
    frame_from_code(n, code, &order, symmetric)
}

fn orderly_level(
    n: usize,
    parents: &[u64],
    symmetric: bool,
) -> Vec<u64> {
    let order = if symmetric { symmetric_order(n) } else { directed_order(n) };
    let prev_order = if symmetric { symmetric_order(n - 1) } else { directed_order(n - 1) };
    let new_bits = order.len() - prev_order.len();
    let perms = permutations(n);
    let mut level = Vec::new();
    for &pcode in parents {
        let parent = if n > 1 {
            frame_from_code(n - 1, pcode, &prev_order, symmetric)
        } else {
            OneFrame::new(0, &[]).unwrap()
        };
        for ext in 0u64..1 << new_bits {
            let mut rel = Relation::empty(n);
            for &(a, b) in parent.relation().pairs().iter() {
                rel.set(a, b, true);
            }
            for t in 0..new_bits {
                if ext >> (new_bits - 1 - t) & 1 == 1 {
                    let (a, b) = order[prev_order.len() + t];
                    rel.set(a, b, true);
                    if symmetric {
                        rel.set(b, a, true);
                    }
                }
            }
            let code = code_of(&rel, &order, None);
            if code == min_code(&rel, &order, &perms) {
                level.push(code);
            }
        }
    }
    level.sort_unstable();
    level.dedup();
    level
}

fn canonical_frames(n: usize, symmetric: bool) -> Vec<OneFrame> {
    assert!(n <= MAX_ENUM_VERTICES, "enumeration supports at most {MAX_ENUM_VERTICES} vertices");
    let mut parents: Vec<u64> = vec![0];
    let mut codes = Vec::new();
    for k in 1..=n {
        codes = orderly_level(k, &parents, symmetric);
        parents = codes.clone();
    }
    let order = if symmetric { symmetric_order(n) } else { directed_order(n) };
    codes
        .into_iter()
        .map(|code| frame_from_code(n, code, &order, symmetric))
        .collect()
}

/// All directed frames (loops allowed) on exactly n vertices, one per
/// isomorphism class, sorted by canonical code.
pub fn canonical_directed_frames(n: usize) -> Vec<OneFrame> {
    assert!(n <= MAX_DIRECTED_ENUM, "directed enumeration supports at most {MAX_DIRECTED_ENUM} vertices");
    canonical_frames(n, false)
}

/// All symmetric frames (loops allowed) on exactly n vertices, one per
/// isomorphism class, sorted by canonical code.
pub fn canonical_symmetric_frames(n: usize) -> Vec<OneFrame> {
    assert!(n <= MAX_SYMMETRIC_ENUM, "symmetric enumeration supports at most {MAX_SYMMETRIC_ENUM} vertices");
    canonical_frames(n, true)
}

/// Symmetric canonical frames of sizes 1..=max that are quasi-1-planes;
/// sizes above the enumeration limit are silently clamped.
pub fn quasi_1_planes_up_to(max: usize) -> Vec<OneFrame> {
    let mut out = Vec::new();
    for n in 1..=max.min(MAX_SYMMETRIC_ENUM) {
        for f in canonical_symmetric_frames(n) {
            if crate::frame::is_quasi_1_plane(&f) {
                out.push(f);
            }
        }
    }
    out
}
