//! Cycle, cocycle and cycle-cocycle reversal: compatible representatives,
//! class decompositions and class partitions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oriented::OrientedMatroid;
use crate::signature::{Signature, SignatureSide};
use crate::signed::{full_mask, Orientation, Side, SignedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReversalKind {
    Cycle,
    Cocycle,
    CycleCocycle,
}

impl ReversalKind {
    pub const ALL: [ReversalKind; 3] = [ReversalKind::Cycle, ReversalKind::Cocycle, ReversalKind::CycleCocycle];

    pub fn name(self) -> &'static str {
        match self {
            ReversalKind::Cycle => "cycle",
            ReversalKind::Cocycle => "cocycle",
            ReversalKind::CycleCocycle => "cycle-cocycle",
        }
    }
}

/// `o` is recovered from `representative` by reversing every listed piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub representative: Orientation,
    pub cycles: Vec<SignedSet>,
    pub cocycles: Vec<SignedSet>,
}

impl ClassDecomposition {
    /// Union of the cycle supports and union of the cocycle supports.
    pub fn supports(&self) -> (u64, u64) {
        let u = |v: &[SignedSet]| v.iter().fold(0, |a, c| a | c.support().0);
        (u(&self.cycles), u(&self.cocycles))
    }
}

fn expect_side(s: &Signature, side: SignatureSide) -> Result<()> {
    if s.side() != side {
        return Err(Error::InvalidSignature(format!("expected a {} signature", side.name())));
    }
    Ok(())
}

fn guard(m: &OrientedMatroid) -> u64 {
    full_mask(m.element_count()).saturating_add(1)
}

/// Reverse non-chosen directed vectors until none is left, picking among the
/// current violations with `pick`.
fn reverse_until_compatible(
    m: &OrientedMatroid,
    mut o: Orientation,
    s: &Signature,
    mut pick: impl FnMut(&[SignedSet]) -> usize,
) -> Result<Orientation> {
    for _ in 0..=guard(m) {
        let bad: Vec<SignedSet> = s.choices().iter().map(|c| c.neg()).filter(|c| c.is_in(o)).collect();
        if bad.is_empty() {
            return Ok(o);
        }
        let v = bad[pick(&bad)];
        o = o.flip(v.support());
    }
    Err(Error::InvariantViolation(format!(
        "{} reversals did not terminate within 2^n steps; is the signature acyclic?",
        s.side().name()
    )))
}

/// The unique σ-compatible orientation in the cycle reversal class of `o`.
/// Reverses the lowest non-chosen directed circuit first.
pub fn sigma_representative(m: &OrientedMatroid, o: Orientation, sigma: &Signature) -> Result<Orientation> {
    expect_side(sigma, SignatureSide::Circuit)?;
    reverse_until_compatible(m, o, sigma, |_| 0)
}

/// The unique σ*-compatible orientation in the cocycle reversal class of `o`.
pub fn sigma_star_representative(m: &OrientedMatroid, o: Orientation, sigma_star: &Signature) -> Result<Orientation> {
    expect_side(sigma_star, SignatureSide::Cocircuit)?;
    reverse_until_compatible(m, o, sigma_star, |_| 0)
}

/// As the two functions above, with the reversal schedule chosen by `pick`.
pub fn representative_with_schedule(
    m: &OrientedMatroid,
    o: Orientation,
    s: &Signature,
    pick: impl FnMut(&[SignedSet]) -> usize,
) -> Result<Orientation> {
    reverse_until_compatible(m, o, s, pick)
}

/// The unique (σ,σ*)-compatible orientation in the cycle-cocycle class of `o`.
pub fn compatible_representative(
    m: &OrientedMatroid,
    mut o: Orientation,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<Orientation> {
    for _ in 0..=guard(m) {
        if sigma.is_compatible(o) && sigma_star.is_compatible(o) {
            return Ok(o);
        }
        o = sigma_representative(m, o, sigma)?;
        o = sigma_star_representative(m, o, sigma_star)?;
    }
    Err(Error::InvariantViolation("joint reversal schedule did not reach a fixed point".into()))
}

/// Write `o` as `O^cp` with disjoint directed cycles and cocycles of `O^cp`
/// reversed.
pub fn compatible_decomposition(
    m: &OrientedMatroid,
    o: Orientation,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<ClassDecomposition> {
    let rep = compatible_representative(m, o, sigma, sigma_star)?;
    if rep == o {
        return Ok(ClassDecomposition { representative: rep, cycles: Vec::new(), cocycles: Vec::new() });
    }
    let n = m.element_count();
    let d: Vec<i64> = (0..n).map(|e| rep.get(e) as i64 - o.get(e) as i64).collect();
    let bug = |what: &str| Error::InvariantViolation(format!("{what} for {o}"));
    let (c, cs) = m.split_kernel_image(&d).map_err(|_| bug("non-integral split"))?;
    let c = c.to_signed_set().ok_or_else(|| bug("cycle part is not a {0,±1} vector"))?;
    let cs = cs.to_signed_set().ok_or_else(|| bug("cocycle part is not a {0,±1} vector"))?;
    if !c.support().intersection(cs.support()).is_empty() {
        return Err(bug("cycle and cocycle parts overlap"));
    }
    let cycles = m.decompose_set(c, Side::Kernel);
    let cocycles = m.decompose_set(cs, Side::Image);
    if cycles.iter().chain(&cocycles).any(|v| !v.is_in(rep)) {
        return Err(bug("decomposition piece not contained in the representative"));
    }
    Ok(ClassDecomposition { representative: rep, cycles, cocycles })
}

fn class_key(m: &OrientedMatroid, o: Orientation, kind: ReversalKind) -> Vec<BigInt> {
    let dots = |list: &[SignedSet]| -> Vec<BigInt> {
        list.iter()
            .map(|c| BigInt::from((c.plus & o.bits()).count_ones() as i64 - (c.minus & o.bits()).count_ones() as i64))
            .collect()
    };
    match kind {
        // o1 - o2 in the kernel iff orthogonal to a spanning set of the image
        ReversalKind::Cycle => dots(m.image_basis()),
        ReversalKind::Cocycle => dots(m.kernel_basis()),
        // both projections of o1 - o2 integral
        ReversalKind::CycleCocycle => {
            let (num, den) = m.projector();
            num.iter()
                .map(|row| {
                    let s: BigInt = (0..m.element_count()).filter(|&e| o.get(e)).map(|e| &row[e]).sum();
                    s.mod_floor(den)
                })
                .collect()
        }
    }
}

/// Same class under the given reversal relation.
///
/// Cycle: difference in the kernel. Cocycle: difference in the row space.
/// Cycle-cocycle: difference in the integer kernel plus the integer row space.
pub fn same_class(m: &OrientedMatroid, o1: Orientation, o2: Orientation, kind: ReversalKind) -> bool {
    class_key(m, o1, kind) == class_key(m, o2, kind)
}

/// Partition all `2^n` orientations; classes sorted by smallest member.
pub fn enumerate_classes(m: &OrientedMatroid, kind: ReversalKind) -> Vec<Vec<Orientation>> {
    let mut by_key: BTreeMap<Vec<BigInt>, Vec<Orientation>> = BTreeMap::new();
    for o in Orientation::all(m.element_count()) {
        by_key.entry(class_key(m, o, kind)).or_default().push(o);
    }
    let mut classes: Vec<Vec<Orientation>> = by_key.into_values().collect();
    classes.sort_by_key(|c| c[0].bits());
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::Graph;
    use crate::signature::WeightVector;
    use crate::signed::reverse;

    fn om(g: &Graph) -> OrientedMatroid {
        OrientedMatroid::from_graph(g, &Caps::default()).unwrap()
    }

    fn v(entries: &[i64]) -> SignedSet {
        SignedSet::from_entries(entries).unwrap()
    }

    fn sigs(m: &OrientedMatroid, wc: &[i64], wk: &[i64]) -> (Signature, Signature) {
        (
            Signature::from_weights(m, &WeightVector::from_ints(wc), SignatureSide::Circuit).unwrap(),
            Signature::from_weights(m, &WeightVector::from_ints(wk), SignatureSide::Cocircuit).unwrap(),
        )
    }

    #[test]
    fn reverse_examples() {
        let refo = Orientation::reference(3);
        assert_eq!(reverse(refo, v(&[1, 1, 1])).unwrap(), Orientation::from_bits(0, 3));
        assert_eq!(reverse(refo, SignedSet::ZERO).unwrap(), refo);
        assert_eq!(reverse(Orientation::reference(1), v(&[1])).unwrap(), Orientation::from_bits(0, 1));
        assert_eq!(reverse(refo, v(&[-1, 0, 0])), Err(Error::NotInOrientation));
    }

    #[test]
    fn triangle_representatives() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        let anti = Orientation::from_bits(0, 3);
        assert_eq!(sigma_representative(&m, anti, &s).unwrap(), Orientation::reference(3));
        assert_eq!(sigma_representative(&m, Orientation::reference(3), &s).unwrap(), Orientation::reference(3));

        let refo = Orientation::reference(3);
        let got = sigma_star_representative(&m, refo, &t).unwrap();
        // oracle: the unique σ*-compatible member of the cocycle class
        let class: Vec<_> = Orientation::all(3).filter(|&x| m.in_image(&diff(x, refo))).collect();
        let compatible: Vec<_> = class.into_iter().filter(|&x| t.is_compatible(x)).collect();
        assert_eq!(compatible, vec![got]);

        let d = compatible_decomposition(&m, anti, &s, &t).unwrap();
        assert_eq!(d.representative, refo);
        assert_eq!(d.cycles, vec![v(&[1, 1, 1])]);
        assert!(d.cocycles.is_empty());
    }

    fn diff(a: Orientation, b: Orientation) -> Vec<i64> {
        (0..a.len()).map(|e| a.get(e) as i64 - b.get(e) as i64).collect()
    }

    #[test]
    fn single_edge_representatives() {
        let m = om(&Graph::new(2, vec![(1, 0)]).unwrap());
        let (s, t) = sigs(&m, &[1], &[1]);
        let (fwd, back) = (Orientation::reference(1), Orientation::from_bits(0, 1));
        for o in [fwd, back] {
            assert_eq!(sigma_representative(&m, o, &s).unwrap(), o);
        }
        assert_eq!(sigma_star_representative(&m, back, &t).unwrap(), fwd);
        let d = compatible_decomposition(&m, back, &s, &t).unwrap();
        assert_eq!(d, ClassDecomposition { representative: fwd, cycles: vec![], cocycles: vec![v(&[1])] });
        let d = compatible_decomposition(&m, fwd, &s, &t).unwrap();
        assert_eq!(d, ClassDecomposition { representative: fwd, cycles: vec![], cocycles: vec![] });
    }

    #[test]
    fn triangle_class_counts() {
        let m = om(&Graph::triangle());
        let cc = enumerate_classes(&m, ReversalKind::CycleCocycle);
        let mut sizes: Vec<usize> = cc.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3, 3]);
        assert_eq!(enumerate_classes(&m, ReversalKind::Cycle).len(), 7);
        assert_eq!(enumerate_classes(&m, ReversalKind::Cocycle).len(), 4);
        let refo = Orientation::reference(3);
        let anti = Orientation::from_bits(0, 3);
        assert!(same_class(&m, refo, anti, ReversalKind::Cycle));
        assert!(!same_class(&m, refo, anti, ReversalKind::Cocycle));
        for kind in ReversalKind::ALL {
            assert!(same_class(&m, refo, refo, kind));
        }
    }

    #[test]
    fn single_edge_classes() {
        let m = om(&Graph::new(2, vec![(1, 0)]).unwrap());
        assert_eq!(enumerate_classes(&m, ReversalKind::Cycle).len(), 2);
        assert_eq!(enumerate_classes(&m, ReversalKind::Cocycle).len(), 1);
        assert_eq!(enumerate_classes(&m, ReversalKind::CycleCocycle).len(), 1);
    }

    #[test]
    fn representatives_agree_with_lattice_classes() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (1, 1), (3, 2)]).unwrap();
        let m = om(&g);
        let n = m.element_count();
        let (s, t) = sigs(&m, &[3, -1, 2, 5, -4, 1, 7], &[-2, 1, 4, -3, 6, 1, 2]);
        for o1 in Orientation::all(n) {
            let r1 = compatible_representative(&m, o1, &s, &t).unwrap();
            assert!(same_class(&m, o1, r1, ReversalKind::CycleCocycle));
            let d = compatible_decomposition(&m, o1, &s, &t).unwrap();
            let total = d.cycles.iter().chain(&d.cocycles).fold(SignedSet::ZERO, |a, &c| a.disjoint_sum(c).unwrap());
            assert_eq!(reverse(d.representative, total).unwrap(), o1);
            if s.is_compatible(o1) {
                assert!(d.cycles.is_empty());
            }
            if t.is_compatible(o1) {
                assert!(d.cocycles.is_empty());
            }
            for o2 in Orientation::all(n).step_by(5) {
                let r2 = compatible_representative(&m, o2, &s, &t).unwrap();
                assert_eq!(r1 == r2, same_class(&m, o1, o2, ReversalKind::CycleCocycle));
            }
        }
    }

    #[test]
    fn wrong_side_is_rejected() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        assert!(sigma_representative(&m, Orientation::reference(3), &t).is_err());
        assert!(sigma_star_representative(&m, Orientation::reference(3), &s).is_err());
    }

    #[test]
    fn cyclic_signature_hits_the_guard() {
        let m = om(&Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap());
        let s =
            Signature::explicit(&m, SignatureSide::Circuit, &[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[-1, 0, 1])]).unwrap();
        let mut any_err = false;
        for o in Orientation::all(3) {
            any_err |= sigma_representative(&m, o, &s).is_err();
        }
        assert!(any_err);
    }
}
