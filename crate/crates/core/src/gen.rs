//! Seeded random instances: connected multigraphs with loops and parallel
//! edges, and rational weight vectors.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::linalg::Rational;
use crate::signature::WeightVector;

/// A connected multigraph with a vertex count drawn from `vertices` and
/// an edge count drawn from `edges` (raised to `vertices - 1` if needed).
pub fn random_connected_multigraph(
    rng: &mut impl Rng,
    vertices: RangeInclusive<usize>,
    edges: RangeInclusive<usize>,
) -> Graph {
    let v = rng.gen_range(vertices).max(1);
    let target = rng.gen_range(edges).max(v - 1);
    let mut list = Vec::with_capacity(target);
    let oriented = |rng: &mut _, a: usize, b: usize| {
        if Rng::gen_bool(rng, 0.5) {
            (a, b)
        } else {
            (b, a)
        }
    };
    for i in 1..v {
        let parent = rng.gen_range(0..i);
        list.push(oriented(rng, parent, i));
    }
    while list.len() < target {
        let roll: f64 = rng.gen();
        let e = if roll < 0.12 {
            let a = rng.gen_range(0..v);
            (a, a)
        } else if roll < 0.3 && !list.is_empty() {
            let &(a, b) = list.choose(rng).expect("nonempty");
            oriented(rng, a, b)
        } else {
            (rng.gen_range(0..v), rng.gen_range(0..v))
        };
        list.push(e);
    }
    list.shuffle(rng);
    Graph::connected(v, list).expect("spanning tree keeps the graph connected")
}

/// Entries `a/b` with `|a| ≤ 30`, `1 ≤ b ≤ 9`.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> WeightVector {
    WeightVector(
        (0..n)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-30..=30)), BigInt::from(rng.gen_range(1..=9))))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graphs_are_connected_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (mut loops, mut parallels) = (0, 0);
        for _ in 0..200 {
            let g = random_connected_multigraph(&mut rng, 1..=6, 3..=10);
            assert!(g.is_connected());
            assert!((3..=10).contains(&g.edge_count()));
            loops += (0..g.edge_count()).any(|e| g.is_loop(e)) as usize;
            let mut norm: Vec<_> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            norm.sort();
            parallels += norm.windows(2).any(|w| w[0] == w[1] && w[0].0 != w[0].1) as usize;
        }
        assert!(loops > 20 && parallels > 20, "{loops} {parallels}");
    }

    #[test]
    fn deterministic() {
        let a = random_connected_multigraph(&mut ChaCha8Rng::seed_from_u64(9), 2..=5, 3..=8);
        let b = random_connected_multigraph(&mut ChaCha8Rng::seed_from_u64(9), 2..=5, 3..=8);
        assert_eq!(a, b);
        let w = random_weights(&mut ChaCha8Rng::seed_from_u64(9), 4);
        assert_eq!(w, random_weights(&mut ChaCha8Rng::seed_from_u64(9), 4));
    }
}
