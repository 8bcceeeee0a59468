//! Fixture factories: finite projective planes over prime fields, their
//! polarity graphs, windmill (friendship) graphs, the 4-path, and seeded
//! random quasi-1-planes for property tests.

use crate::error::{Error, Result};
use crate::frame::{
    check_o, check_p, is_connected,quasi_failure, OCondition, OneFrame, PCondition, TwoFrame,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIME_CAP: u64 = 13;

fn check_prime(p: u64) -> Result<()> {
    if p < 2 || (2..p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(p));
    }
    if p > PRIME_CAP {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

/// Nonzero triples over GF(p) normalized so the first nonzero coordinate
/// is 1, in lexicographic order. These are the points (and the lines) of
/// PG(2, p); there are p^2 + p + 1 of them.
pub fn normalized_triples(p: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let v = [x, y, z];
                if v == [0, 0, 0] {
                    continue;
                }
                let first = *v.iter().find(|&&c| c != 0).unwrap();
                if first == 1 {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn dot(p: u64, a: &[u64; 3], b: &[u64; 3]) -> u64 {
    (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % p
}

fn triple_label(prefix: &str, t: &[u64; 3]) -> String {
    // Coordinates are separated: above p = 9 they have several digits.
    format!("{prefix}{}:{}:{}", t[0], t[1], t[2])
}

/// The projective plane PG(2, p) over the prime field of order p, as a
/// two-sorted frame. Point labels are `p<xyz>` and line labels `l<xyz>`
/// over the normalized coordinates; incidence is a zero dot product.
pub fn gen_pg2(p: u64) -> Result<TwoFrame> {
    check_prime(p)?;
    let triples = normalized_triples(p);
    let m = triples.len();
    debug_assert_eq!(m as u64, p * p + p + 1);
    let points: Vec<String> = triples.iter().map(|t| triple_label("p", t)).collect();
    let lines: Vec<String> = triples.iter().map(|t| triple_label("l", t)).collect();
    let mut inc = Vec::new();
    for (i, pt) in triples.iter().enumerate() {
        for (j, ln) in triples.iter().enumerate() {
            if dot(p, pt, ln) == 0 {
                inc.push((i, j));
            }
        }
    }
    let frame = TwoFrame::new(points, lines, &inc)?;
    debug_assert_eq!(frame.range(0).len() as u64, p + 1);
    assert!(check_p(&frame, PCondition::P1).holds, "PG(2,{p}) failed P1");
    assert!(check_p(&frame, PCondition::P2).holds, "PG(2,{p}) failed P2");
    assert!(check_p(&frame, PCondition::P3).holds, "PG(2,{p}) failed P3");
    Ok(frame)
}

/// The polarity graph of PG(2, p): vertices are the points, `a I b` iff
/// `a · b = 0`. Absolute points (on their own polar) carry loops; there
/// are exactly p + 1 of them. The result is an elliptic 1-plane
/// (O5 and O3 hold), audited before returning.
pub fn gen_polarity_graph(p: u64) -> Result<OneFrame> {
    check_prime(p)?;
    let triples = normalized_triples(p);
    let m = triples.len();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in 0..m {
            if dot(p, &triples[a], &triples[b]) == 0 {
                edges.push((a, b));
            }
        }
    }
    let frame = OneFrame::new(m, &edges)?;
    assert!(check_o(&frame, OCondition::O5).holds, "polarity graph of PG(2,{p}) failed O5");
    assert!(check_o(&frame, OCondition::O3).holds, "polarity graph of PG(2,{p}) failed O3");
    let loops = (0..m).filter(|&a| frame.has_edge(a, a)).count() as u64;
    assert_eq!(loops, p + 1, "polarity graph of PG(2,{p}) has {loops} absolute points");
    Ok(frame)
}

/// The windmill (friendship) graph with k triangles sharing the hub
/// vertex 0: 2k + 1 vertices, no loops.
pub fn gen_windmill(k: usize) -> Result<OneFrame> {
    if k == 0 {
        return Err(Error::ZeroWindmill);
    }
    let n = 2 * k + 1;
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((0, i));
    }
    for t in 0..k {
        edges.push((2 * t + 1, 2 * t + 2));
    }
    OneFrame::symmetric(n, &edges)
}

/// The 4-path `v0 - v1 - v2 - v3` with no other edges.
pub fn gen_f0() -> OneFrame {
    OneFrame::symmetric(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
}

/// Which I^2-class count a random quasi-1-plane should have.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QuasiKind {
    /// One I^2-class.
    Elliptic,
    /// Two I^2-classes.
    Projective,
}

const SAMPLER_BUDGET: usize = 20_000;
const SAMPLER_SIZE_CAP: usize = 12;

/// Rejection-sample a connected quasi-1-plane of the given size and kind,
/// deterministically under `seed`. Proposals are Bernoulli edge draws
/// (bipartite cross edges for the projective kind); every accepted sample
/// is re-audited from scratch: symmetric, serial, O1, connected, and the
/// requested I^2-class count.
pub fn gen_random_quasi(size: usize, kind: QuasiKind, seed: u64) -> Result<OneFrame> {
    if size > SAMPLER_SIZE_CAP {
        return Err(Error::SizeTooLarge(size));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLER_BUDGET {
        let frame = match kind {
            QuasiKind::Elliptic => propose_elliptic(size, &mut rng),
            QuasiKind::Projective => propose_projective(size, &mut rng),
        };
        if quasi_failure(&frame).is_some() || !is_connected(&frame) {
            continue;
        }
        let classes = crate::frame::i2_partition(&frame).expect("audited quasi");
        let want = match kind {
            QuasiKind::Elliptic => 1,
            QuasiKind::Projective => 2,
        };
        if classes.len() == want {
            return Ok(frame);
        }
    }
    Err(Error::BudgetExhausted { attempts: SAMPLER_BUDGET })
}

fn propose_elliptic(n: usize, rng: &mut ChaCha8Rng) -> OneFrame {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            let prob = if i == j { 0.25 } else { 0.5 };
            if rng.random_bool(prob) {
                edges.push((i, j));
            }
        }
    }
    OneFrame::symmetric(n, &edges).unwrap()
}

fn propose_projective(n: usize, rng: &mut ChaCha8Rng) -> OneFrame {
    // Loops force both endpoints of an edge into the same class, so
    // projective proposals are loop-free and bipartite.
    let side: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if side[i] != side[j] && rng.random_bool(0.5) {
                edges.push((i, j));
            }
        }
    }
    OneFrame::symmetric(n, &edges).unwrap()
}
