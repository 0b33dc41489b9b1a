//! The maps `g` (bases to compatible orientations), its extension `φ` to all
//! orientations, the dual `φ* = E ∖ φ`, and their local restrictions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oriented::OrientedMatroid;
use crate::reversal::compatible_decomposition;
use crate::signature::{check_pair, Signature};
use crate::signed::{full_mask, EdgeSet, Orientation, PartialOrientation, SignedSet};

/// Which row of the counting table an orientation falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Specialization {
    /// σ- and σ*-compatible; `φ(O)` is a basis.
    Basis,
    /// σ-compatible only; `φ(O)` is independent.
    Forest,
    /// σ*-compatible only; `φ(O)` is spanning.
    ConnectedSpanning,
    General,
}

impl Specialization {
    pub fn name(self) -> &'static str {
        match self {
            Specialization::Basis => "basis",
            Specialization::Forest => "forest",
            Specialization::ConnectedSpanning => "connected-spanning",
            Specialization::General => "general",
        }
    }

    fn of(sigma_ok: bool, star_ok: bool) -> Self {
        match (sigma_ok, star_ok) {
            (true, true) => Specialization::Basis,
            (true, false) => Specialization::Forest,
            (false, true) => Specialization::ConnectedSpanning,
            (false, false) => Specialization::General,
        }
    }

    pub fn is_forest(self) -> bool {
        matches!(self, Specialization::Basis | Specialization::Forest)
    }

    pub fn is_spanning(self) -> bool {
        matches!(self, Specialization::Basis | Specialization::ConnectedSpanning)
    }
}

/// Orient `e ∉ b` as in `σ(C(b,e))` and `e ∈ b` as in `σ*(C*(b,e))`.
pub fn g(m: &OrientedMatroid, b: EdgeSet, sigma: &Signature, sigma_star: &Signature) -> Result<Orientation> {
    let n = m.element_count();
    let mut bits = 0u64;
    for e in 0..n {
        let (v, s) = if b.contains(e) {
            (m.fundamental_cocircuit(b, e, true)?, sigma_star)
        } else {
            (m.fundamental_circuit(b, e, true)?, sigma)
        };
        let chosen = s
            .chosen(m, v.support())
            .ok_or_else(|| Error::InvalidSignature("signature does not match the matroid".into()))?;
        if chosen.entry(e) > 0 {
            bits |= 1 << e;
        }
    }
    let o = Orientation::from_bits(bits, n);
    if !sigma.is_compatible(o) || !sigma_star.is_compatible(o) {
        return Err(Error::InvariantViolation(format!("g({b}) = {o} is not compatible")));
    }
    Ok(o)
}

/// The basis `b` with `g(b) = o`, by scanning all bases.
pub fn g_inverse(m: &OrientedMatroid, o: Orientation, sigma: &Signature, sigma_star: &Signature) -> Result<EdgeSet> {
    if !sigma.is_compatible(o) || !sigma_star.is_compatible(o) {
        return Err(Error::NotCompatible(o));
    }
    for &b in m.bases() {
        if g(m, b, sigma, sigma_star)? == o {
            return Ok(b);
        }
    }
    Err(Error::InvariantViolation(format!("compatible orientation {o} is not g of any basis")))
}

/// `φ(O) = g⁻¹(O^cp) ∪ (cycle supports) ∖ (cocycle supports)`.
pub fn phi(m: &OrientedMatroid, o: Orientation, sigma: &Signature, sigma_star: &Signature) -> Result<EdgeSet> {
    let d = compatible_decomposition(m, o, sigma, sigma_star)?;
    let t = g_inverse(m, d.representative, sigma, sigma_star)?;
    let (cyc, cocyc) = d.supports();
    Ok(EdgeSet((t.0 | cyc) & !cocyc))
}

/// The full forward table of `φ` for one `(matroid, σ, σ*)`, with inverse
/// lookups. Frozen after construction.
#[derive(Clone, Debug)]
pub struct BijectionTable {
    n: usize,
    sigma: Signature,
    sigma_star: Signature,
    forward: Vec<EdgeSet>,
    inverse: Vec<Option<Orientation>>,
    tags: Vec<Specialization>,
    g_of_basis: Vec<(EdgeSet, Orientation)>,
    g_inv: HashMap<u64, EdgeSet>,
}

impl BijectionTable {
    /// Requires both signatures to be acyclic.
    pub fn build(m: &OrientedMatroid, sigma: &Signature, sigma_star: &Signature) -> Result<Self> {
        check_pair(m, sigma, sigma_star)?;
        let n = m.element_count();
        let g_of_basis: Vec<(EdgeSet, Orientation)> =
            m.bases().iter().map(|&b| Ok((b, g(m, b, sigma, sigma_star)?))).collect::<Result<_>>()?;
        let g_inv: HashMap<u64, EdgeSet> = g_of_basis.iter().map(|&(b, o)| (o.bits(), b)).collect();
        if g_inv.len() != g_of_basis.len() {
            return Err(Error::InvariantViolation("g is not injective".into()));
        }
        let rows: Vec<(EdgeSet, Specialization)> = (0..1u64 << n)
            .into_par_iter()
            .map(|bits| {
                let o = Orientation::from_bits(bits, n);
                let d = compatible_decomposition(m, o, sigma, sigma_star)?;
                let t = *g_inv.get(&d.representative.bits()).ok_or_else(|| {
                    Error::InvariantViolation(format!("representative {} has no basis", d.representative))
                })?;
                let (cyc, cocyc) = d.supports();
                let s = EdgeSet((t.0 | cyc) & !cocyc);
                let tag = Specialization::of(d.cycles.is_empty(), d.cocycles.is_empty());
                check_tag(m, o, s, tag, sigma, sigma_star)?;
                Ok((s, tag))
            })
            .collect::<Result<_>>()?;
        let (forward, tags): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        let mut table = BijectionTable {
            n,
            sigma: sigma.clone(),
            sigma_star: sigma_star.clone(),
            forward,
            inverse: Vec::new(),
            tags,
            g_of_basis,
            g_inv,
        };
        table.rebuild_inverse();
        Ok(table)
    }

    fn rebuild_inverse(&mut self) {
        let mut inverse = vec![None; 1 << self.n];
        for (bits, s) in self.forward.iter().enumerate() {
            inverse[s.0 as usize] = Some(Orientation::from_bits(bits as u64, self.n));
        }
        self.inverse = inverse;
    }

    pub fn element_count(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &Signature {
        &self.sigma
    }

    pub fn sigma_star(&self) -> &Signature {
        &self.sigma_star
    }

    /// `φ(O)` for every orientation, indexed by `O.bits()`.
    pub fn forward(&self) -> &[EdgeSet] {
        &self.forward
    }

    /// `φ*(O) = E ∖ φ(O)` for every orientation.
    pub fn dual_forward(&self) -> Vec<EdgeSet> {
        self.forward.iter().map(|s| s.complement(self.n)).collect()
    }

    pub fn phi(&self, o: Orientation) -> EdgeSet {
        self.forward[o.bits() as usize]
    }

    pub fn phi_star(&self, o: Orientation) -> EdgeSet {
        self.phi(o).complement(self.n)
    }

    pub fn phi_inverse(&self, s: EdgeSet) -> Result<Orientation> {
        self.inverse.get(s.0 as usize).copied().flatten().ok_or(Error::TableIncomplete(s))
    }

    pub fn specialization(&self, o: Orientation) -> Specialization {
        self.tags[o.bits() as usize]
    }

    /// `(b, g(b))` for every basis, in basis order.
    pub fn g_pairs(&self) -> &[(EdgeSet, Orientation)] {
        &self.g_of_basis
    }

    pub fn g_inverse(&self, o: Orientation) -> Result<EdgeSet> {
        if !self.sigma.is_compatible(o) || !self.sigma_star.is_compatible(o) {
            return Err(Error::NotCompatible(o));
        }
        self.g_inv
            .get(&o.bits())
            .copied()
            .ok_or_else(|| Error::InvariantViolation(format!("compatible orientation {o} missing from the g table")))
    }

    /// Restriction of `φ` to orientations extending `op`: maps the forward
    /// bits on `E ∖ P` to `φ(O) ∖ P`.
    pub fn local_phi(&self, op: &PartialOrientation) -> Result<Vec<(EdgeSet, EdgeSet)>> {
        let (p, fwd) = op.masks();
        self.check_mask(p)?;
        let rest = EdgeSet(full_mask(self.n) & !p);
        Ok(rest
            .subsets()
            .map(|x| {
                let o = Orientation::from_bits(fwd | x.0, self.n);
                (x, self.phi(o).difference(EdgeSet(p)))
            })
            .collect())
    }

    /// Restriction of `φ⁻¹` to subgraphs containing `ec` and avoiding `ed`:
    /// maps `h ⊆ E ∖ (ec ∪ ed)` to the forward bits of `φ⁻¹(h ∪ ec)` on
    /// `E ∖ (ec ∪ ed)`.
    pub fn local_phi_inverse(&self, ec: EdgeSet, ed: EdgeSet) -> Result<Vec<(EdgeSet, EdgeSet)>> {
        if !ec.intersection(ed).is_empty() {
            return Err(Error::InvalidArgument("ec and ed must be disjoint".into()));
        }
        self.check_mask(ec.0 | ed.0)?;
        let rest = ec.union(ed).complement(self.n);
        rest.subsets().map(|h| Ok((h, self.phi_inverse(h.union(ec))?.forward_set().intersection(rest)))).collect()
    }

    fn check_mask(&self, mask: u64) -> Result<()> {
        if mask & !full_mask(self.n) != 0 {
            return Err(Error::InvalidArgument(format!("elements outside 0..{}", self.n)));
        }
        Ok(())
    }

    /// Swap the images of two orientations. Only for exercising the
    /// verification suites on a broken table.
    #[doc(hidden)]
    pub fn swap_entries_for_testing(&mut self, a: Orientation, b: Orientation) {
        self.forward.swap(a.bits() as usize, b.bits() as usize);
        self.rebuild_inverse();
    }
}

fn check_tag(
    m: &OrientedMatroid,
    o: Orientation,
    s: EdgeSet,
    tag: Specialization,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<()> {
    let by_compat = Specialization::of(sigma.is_compatible(o), sigma_star.is_compatible(o));
    let by_matroid = Specialization::of(m.is_independent(s), m.is_spanning(s));
    if tag != by_compat || tag != by_matroid {
        return Err(Error::InvariantViolation(format!(
            "{o}: decomposition says {}, compatibility says {}, φ(O) = {s} is {}",
            tag.name(),
            by_compat.name(),
            by_matroid.name()
        )));
    }
    Ok(())
}

/// Tag `o` by compatibility and check that `φ(o)` has the matching matroid
/// type (independent, spanning, basis).
pub fn classify_specialization(
    m: &OrientedMatroid,
    o: Orientation,
    sigma: &Signature,
    sigma_star: &Signature,
) -> Result<Specialization> {
    let tag = Specialization::of(sigma.is_compatible(o), sigma_star.is_compatible(o));
    check_tag(m, o, phi(m, o, sigma, sigma_star)?, tag, sigma, sigma_star)?;
    Ok(tag)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    n: usize,
    matrix: Option<Vec<Vec<i64>>>,
    edges: Option<Vec<(usize, usize)>>,
    sigma: Vec<SignedSet>,
    sigma_star: Vec<SignedSet>,
}

/// Tables keyed by the exact content of `(matroid, σ, σ*)`.
#[derive(Default)]
pub struct TableCache {
    tables: Mutex<HashMap<CacheKey, Arc<BijectionTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_build(
        &self,
        m: &OrientedMatroid,
        sigma: &Signature,
        sigma_star: &Signature,
    ) -> Result<Arc<BijectionTable>> {
        let key = CacheKey {
            n: m.element_count(),
            matrix: m.rep().map(|r| r.matrix().to_vec()),
            edges: m.graph().map(|g| g.edges().to_vec()),
            sigma: sigma.choices().to_vec(),
            sigma_star: sigma_star.choices().to_vec(),
        };
        if let Some(t) = self.tables.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(BijectionTable::build(m, sigma, sigma_star)?);
        self.tables.lock().expect("cache lock").insert(key, Arc::clone(&t));
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.tables.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::Graph;
    use crate::signature::{SignatureSide, WeightVector};

    fn om(g: &Graph) -> OrientedMatroid {
        OrientedMatroid::from_graph(g, &Caps::default()).unwrap()
    }

    fn sigs(m: &OrientedMatroid, wc: &[i64], wk: &[i64]) -> (Signature, Signature) {
        (
            Signature::from_weights(m, &WeightVector::from_ints(wc), SignatureSide::Circuit).unwrap(),
            Signature::from_weights(m, &WeightVector::from_ints(wk), SignatureSide::Cocircuit).unwrap(),
        )
    }

    fn set(ix: &[usize]) -> EdgeSet {
        EdgeSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn g_on_small_graphs() {
        let m = om(&Graph::new(2, vec![(1, 0)]).unwrap());
        let (s, t) = sigs(&m, &[1], &[1]);
        assert_eq!(g(&m, set(&[0]), &s, &t).unwrap(), Orientation::reference(1));
        assert_eq!(g_inverse(&m, Orientation::reference(1), &s, &t).unwrap(), set(&[0]));

        let m = om(&Graph::new(2, vec![(0, 1), (0, 1)]).unwrap());
        let s = Signature::explicit(&m, SignatureSide::Circuit, &[SignedSet::from_entries(&[-1, 1]).unwrap()]).unwrap();
        let t =
            Signature::explicit(&m, SignatureSide::Cocircuit, &[SignedSet::from_entries(&[1, 1]).unwrap()]).unwrap();
        assert_eq!(g(&m, set(&[0]), &s, &t).unwrap(), Orientation::from_bools(&[true, true]));
    }

    #[test]
    fn triangle_table() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        let table = BijectionTable::build(&m, &s, &t).unwrap();
        let images: Vec<Orientation> = table.g_pairs().iter().map(|p| p.1).collect();
        let compatible: Vec<Orientation> =
            Orientation::all(3).filter(|&o| s.is_compatible(o) && t.is_compatible(o)).collect();
        assert_eq!(compatible.len(), 3);
        for o in &compatible {
            assert!(images.contains(o));
            assert!(m.is_basis(table.g_inverse(*o).unwrap()));
        }
        let mut seen: Vec<EdgeSet> = table.forward().to_vec();
        seen.sort();
        let mut want: Vec<EdgeSet> = EdgeSet::full(3).subsets().collect();
        want.sort();
        assert_eq!(seen, want);

        let anti = Orientation::from_bits(0, 3);
        assert_eq!(table.phi(anti), EdgeSet::full(3));
        assert_eq!(phi(&m, anti, &s, &t).unwrap(), EdgeSet::full(3));
        assert_eq!(table.phi_inverse(EdgeSet::full(3)).unwrap(), anti);
        for o in Orientation::all(3) {
            assert_eq!(table.phi_inverse(table.phi(o)).unwrap(), o);
            assert_eq!(table.phi_star(o), EdgeSet::full(3).difference(table.phi(o)));
            assert_eq!(classify_specialization(&m, o, &s, &t).unwrap(), table.specialization(o));
        }
        let count = |f: fn(Specialization) -> bool| Orientation::all(3).filter(|&o| f(table.specialization(o))).count();
        assert_eq!(count(Specialization::is_forest), 7);
        assert_eq!(count(Specialization::is_spanning), 4);
        for o in compatible {
            assert_eq!(table.phi_star(o).len(), 1);
        }
        assert_eq!(table.g_inverse(anti), Err(Error::NotCompatible(anti)));
    }

    #[test]
    fn single_edge_phi() {
        let m = om(&Graph::new(2, vec![(1, 0)]).unwrap());
        let (s, t) = sigs(&m, &[1], &[1]);
        let table = BijectionTable::build(&m, &s, &t).unwrap();
        let back = Orientation::from_bits(0, 1);
        assert_eq!(table.phi(back), EdgeSet::EMPTY);
        assert_eq!(table.phi_star(back), set(&[0]));
    }

    #[test]
    fn local_maps() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        let table = BijectionTable::build(&m, &s, &t).unwrap();
        let all = table.local_phi(&PartialOrientation::new()).unwrap();
        assert!(all.iter().all(|&(x, y)| table.phi(Orientation::from_bits(x.0, 3)) == y));
        let full = PartialOrientation::restrict(Orientation::reference(3), EdgeSet::full(3));
        assert_eq!(table.local_phi(&full).unwrap(), vec![(EdgeSet::EMPTY, EdgeSet::EMPTY)]);
        for dir in [true, false] {
            let p = PartialOrientation::new().with(2, dir);
            let mut images: Vec<EdgeSet> = table.local_phi(&p).unwrap().into_iter().map(|x| x.1).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), 4);
        }
        let inv = table.local_phi_inverse(set(&[0]), set(&[1])).unwrap();
        assert_eq!(inv.len(), 2);
        assert_ne!(inv[0].1, inv[1].1);
        assert_eq!(table.local_phi_inverse(set(&[0, 1]), set(&[2])).unwrap().len(), 1);
        assert!(table.local_phi_inverse(set(&[0]), set(&[0])).is_err());
        let everything = table.local_phi_inverse(EdgeSet::EMPTY, EdgeSet::EMPTY).unwrap();
        assert!(everything.iter().all(|&(h, o)| table.phi_inverse(h).unwrap().forward_set() == o));
    }

    #[test]
    fn corrupted_table_loses_inverse_entries() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        let mut table = BijectionTable::build(&m, &s, &t).unwrap();
        let (a, b) = (Orientation::from_bits(0, 3), Orientation::from_bits(1, 3));
        let (pa, pb) = (table.phi(a), table.phi(b));
        table.swap_entries_for_testing(a, b);
        assert_eq!(table.phi(a), pb);
        assert_eq!(table.phi_inverse(pa).unwrap(), b);
    }

    #[test]
    fn cache_reuses_tables() {
        let m = om(&Graph::triangle());
        let (s, t) = sigs(&m, &[1, 1, 1], &[1, -2, 0]);
        let cache = TableCache::new();
        let a = cache.get_or_build(&m, &s, &t).unwrap();
        let b = cache.get_or_build(&m, &s, &t).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let (s2, t2) = sigs(&m, &[1, 1, 1], &[-1, 2, 0]);
        cache.get_or_build(&m, &s2, &t2).unwrap();
        assert_eq!(cache.len(), 2);
    }

    #[test]
    fn non_acyclic_signature_is_rejected() {
        let m = om(&Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap());
        let v = |e: &[i64]| SignedSet::from_entries(e).unwrap();
        let s =
            Signature::explicit(&m, SignatureSide::Circuit, &[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[-1, 0, 1])]).unwrap();
        let t = Signature::from_weights(&m, &WeightVector::from_ints(&[1, 2, 4]), SignatureSide::Cocircuit).unwrap();
        assert_eq!(BijectionTable::build(&m, &s, &t).unwrap_err(), Error::NotAcyclic);
    }
}
