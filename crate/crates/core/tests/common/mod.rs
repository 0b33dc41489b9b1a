#![allow(dead_code)]

use orbij::gen::{random_connected_multigraph, random_weights};
use orbij::{BijectionTable, Caps, Graph, OrientedMatroid, Signature, SignatureSide, WeightVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph(seed: u64, max_vertices: usize, max_edges: usize) -> Graph {
    random_connected_multigraph(&mut rng(seed), 1..=max_vertices, 1..=max_edges)
}

pub fn matroid(g: &Graph) -> OrientedMatroid {
    OrientedMatroid::from_graph(g, &Caps::default()).unwrap()
}

pub fn weight_pair(n: usize, seed: u64) -> (WeightVector, WeightVector) {
    let mut r = rng(seed ^ 0x5eed);
    (random_weights(&mut r, n), random_weights(&mut r, n))
}

pub fn signatures(m: &OrientedMatroid, seed: u64) -> (Signature, Signature) {
    let (w, w_star) = weight_pair(m.element_count(), seed);
    let s = Signature::from_weights(m, &w, SignatureSide::Circuit).unwrap();
    let t = Signature::from_weights(m, &w_star, SignatureSide::Cocircuit).unwrap();
    (s, t)
}

pub fn table(m: &OrientedMatroid, seed: u64) -> BijectionTable {
    let (s, t) = signatures(m, seed);
    BijectionTable::build(m, &s, &t).unwrap()
}

/// Every vector in `{0,±1}^n`.
pub fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..3usize.pow(n as u32)).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = (k % 3) as i64 - 1;
                k /= 3;
                d
            })
            .collect()
    })
}
