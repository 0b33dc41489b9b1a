//! Precomputed oriented-matroid data for a graph or a regular matroid:
//! ranks of all subsets, signed circuits and cocircuits, bases, and the two
//! search subroutines (3-painting and conformal decomposition).

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::caps::{ensure_cap, Caps};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{primitive_integer, to_unit_entries, RatMatrix, Rational};
use crate::matroid::{graph_to_rep, RegularMatroidRep};
use crate::signed::{full_mask, EdgeSet, Orientation, PartialOrientation, Side, SignedSet, SignedVector};

/// Result of the 3-painting search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Painting {
    Cycle(SignedSet),
    Cocycle(SignedSet),
}

impl Painting {
    pub fn vector(self) -> SignedSet {
        match self {
            Painting::Cycle(v) | Painting::Cocycle(v) => v,
        }
    }
}

/// A regular matroid with a fixed totally unimodular representation, or the
/// all-loops matroid of a one-vertex graph, together with every signed
/// circuit, signed cocircuit and basis.
///
/// Circuits and cocircuits are stored once per `±` pair as the canonical
/// representative, sorted by support mask.
#[derive(Clone, Debug)]
pub struct OrientedMatroid {
    n: usize,
    rank: usize,
    rep: Option<RegularMatroidRep>,
    graph: Option<Graph>,
    ranks: Vec<u8>,
    circuits: Vec<SignedSet>,
    cocircuits: Vec<SignedSet>,
    circuit_index: HashMap<u64, usize>,
    cocircuit_index: HashMap<u64, usize>,
    bases: Vec<EdgeSet>,
    kernel_basis: Vec<SignedSet>,
    image_basis: Vec<SignedSet>,
    /// Orthogonal projector onto the row space as `numerators / denominator`.
    projector: (Vec<Vec<BigInt>>, BigInt),
    caps: Caps,
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn invmod(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

/// Ranks of all `2^n` column subsets.
///
/// Every minor of a totally unimodular matrix is `0` or `±1`, so the rank over
/// `GF(p)` equals the rank over the rationals.
fn rank_table(rep: &RegularMatroidRep) -> Vec<u8> {
    let n = rep.element_count();
    let cols: Vec<Vec<u64>> =
        (0..n).map(|e| rep.column(e).iter().map(|&x| if x < 0 { P - 1 } else { x as u64 }).collect()).collect();
    let mut table = vec![0u8; 1 << n];
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();

    fn reduce(basis: &[(usize, Vec<u64>)], mut v: Vec<u64>) -> Option<(usize, Vec<u64>)> {
        for (p, b) in basis {
            let f = v[*p];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = (*x + P - mulmod(f, y)) % P;
                }
            }
        }
        let p = v.iter().position(|&x| x != 0)?;
        let inv = invmod(v[p]);
        v.iter_mut().for_each(|x| *x = mulmod(*x, inv));
        Some((p, v))
    }

    fn dfs(mask: usize, next: usize, cols: &[Vec<u64>], basis: &mut Vec<(usize, Vec<u64>)>, table: &mut [u8]) {
        table[mask] = basis.len() as u8;
        for e in next..cols.len() {
            match reduce(basis, cols[e].clone()) {
                Some(red) => {
                    basis.push(red);
                    dfs(mask | 1 << e, e + 1, cols, basis, table);
                    basis.pop();
                }
                None => dfs(mask | 1 << e, e + 1, cols, basis, table),
            }
        }
    }

    dfs(0, 0, &cols, &mut basis, &mut table);
    table
}

fn unit_vector(v: &[Rational], what: &str) -> Result<Vec<i64>> {
    to_unit_entries(&primitive_integer(v))
        .ok_or_else(|| Error::InvariantViolation(format!("{what} is not a {{0,±1}} vector")))
}

impl OrientedMatroid {
    /// Build from a connected graph. A one-vertex graph becomes the all-loops
    /// matroid of rank 0.
    pub fn from_graph(g: &Graph, caps: &Caps) -> Result<Self> {
        ensure_cap("ground set size", g.edge_count(), caps.circuit_elements)?;
        let mut m = match graph_to_rep(g) {
            Ok(rep) => Self::from_rep(rep, caps)?,
            Err(Error::TrivialGraph) => Self::all_loops(g.edge_count(), caps),
            Err(e) => return Err(e),
        };
        m.graph = Some(g.clone());
        Ok(m)
    }

    /// Build from a matrix representation (no graph structure attached).
    pub fn from_rep(rep: RegularMatroidRep, caps: &Caps) -> Result<Self> {
        let n = rep.element_count();
        ensure_cap("ground set size", n, caps.circuit_elements)?;
        let r = rep.rank();
        let ranks = rank_table(&rep);
        let full = full_mask(n);

        let mut circuits = Vec::new();
        let mut cocircuits = Vec::new();
        let mut bases = Vec::new();
        for s in 1..=full {
            let k = s.count_ones() as usize;
            let rk = ranks[s as usize] as usize;
            if rk == k && k == r {
                bases.push(EdgeSet(s));
            }
            let set = EdgeSet(s);
            if rk + 1 == k && set.iter().all(|e| ranks[(s & !(1 << e)) as usize] as usize == rk) {
                circuits.push(Self::circuit_vector(&rep, set)?);
            }
            let h = full & !s;
            if ranks[h as usize] as usize + 1 == r && set.iter().all(|e| ranks[(h | 1 << e) as usize] as usize == r) {
                cocircuits.push(Self::cocircuit_vector(&rep, set)?);
            }
        }
        if r == 0 {
            bases.push(EdgeSet::EMPTY);
        }

        let projector = Self::image_projector(&rep);
        let mut m = OrientedMatroid {
            n,
            rank: r,
            rep: Some(rep),
            graph: None,
            ranks,
            circuits,
            cocircuits,
            circuit_index: HashMap::new(),
            cocircuit_index: HashMap::new(),
            bases,
            kernel_basis: Vec::new(),
            image_basis: Vec::new(),
            projector,
            caps: *caps,
        };
        m.finish();
        Ok(m)
    }

    fn all_loops(n: usize, caps: &Caps) -> Self {
        let mut m = OrientedMatroid {
            n,
            rank: 0,
            rep: None,
            graph: None,
            ranks: vec![0; 1 << n],
            circuits: (0..n).map(|e| SignedSet::new(EdgeSet::singleton(e), EdgeSet::EMPTY)).collect(),
            cocircuits: Vec::new(),
            circuit_index: HashMap::new(),
            cocircuit_index: HashMap::new(),
            bases: vec![EdgeSet::EMPTY],
            kernel_basis: Vec::new(),
            image_basis: Vec::new(),
            projector: (vec![vec![BigInt::zero(); n]; n], BigInt::from(1)),
            caps: *caps,
        };
        m.finish();
        m
    }

    fn finish(&mut self) {
        self.circuits.sort_by_key(|c| c.support().0);
        self.cocircuits.sort_by_key(|c| c.support().0);
        self.circuit_index = self.circuits.iter().enumerate().map(|(i, c)| (c.support().0, i)).collect();
        self.cocircuit_index = self.cocircuits.iter().enumerate().map(|(i, c)| (c.support().0, i)).collect();
        let b = self.bases[0];
        let comp = b.complement(self.n);
        self.kernel_basis = comp.iter().map(|e| self.fundamental_circuit(b, e, true).expect("basis")).collect();
        self.image_basis = b.iter().map(|e| self.fundamental_cocircuit(b, e, true).expect("basis")).collect();
    }

    fn circuit_vector(rep: &RegularMatroidRep, s: EdgeSet) -> Result<SignedSet> {
        let idx = s.to_vec();
        let cols: Vec<Vec<i64>> = idx.iter().map(|&e| rep.column(e)).collect();
        let refs: Vec<&[i64]> = cols.iter().map(Vec::as_slice).collect();
        let ker = RatMatrix::from_int_columns(rep.rank(), &refs).kernel_basis();
        if ker.len() != 1 {
            return Err(Error::InvariantViolation(format!("circuit {s} has kernel dimension {}", ker.len())));
        }
        let local = unit_vector(&ker[0], "circuit")?;
        let mut entries = vec![0i64; rep.element_count()];
        for (&e, x) in idx.iter().zip(local) {
            entries[e] = x;
        }
        Ok(SignedSet::from_entries(&entries).expect("unit entries").canonical())
    }

    fn cocircuit_vector(rep: &RegularMatroidRep, s: EdgeSet) -> Result<SignedSet> {
        let n = rep.element_count();
        let h = s.complement(n);
        let r = rep.rank();
        // rows of `m` are the columns in the hyperplane; its kernel is the left kernel of A_H
        let mut m = RatMatrix::zeros(h.len(), r);
        for (i, e) in h.iter().enumerate() {
            for (j, x) in rep.column(e).into_iter().enumerate() {
                m[(i, j)] = Rational::from_integer(x.into());
            }
        }
        let ker = m.kernel_basis();
        if ker.len() != 1 {
            return Err(Error::InvariantViolation(format!("cocircuit {s} has cokernel dimension {}", ker.len())));
        }
        let y = &ker[0];
        let v: Vec<Rational> = (0..n)
            .map(|e| {
                rep.column(e)
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (&a, b)| acc + b * Rational::from_integer(a.into()))
            })
            .collect();
        let entries = unit_vector(&v, "cocircuit")?;
        let out = SignedSet::from_entries(&entries).expect("unit entries");
        if out.support() != s {
            return Err(Error::InvariantViolation(format!("cocircuit support mismatch at {s}")));
        }
        Ok(out.canonical())
    }

    fn image_projector(rep: &RegularMatroidRep) -> (Vec<Vec<BigInt>>, BigInt) {
        let a = RatMatrix::from_int_rows(rep.matrix());
        let at = a.transpose();
        let gram_inv = a.mul(&at).inverse().expect("full row rank");
        let p = at.mul(&gram_inv).mul(&a);
        let n = rep.element_count();
        let den = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(BigInt::from(1), |l, (i, j)| num_integer::Integer::lcm(&l, p[(i, j)].denom()));
        let num = (0..n)
            .map(|i| (0..n).map(|j| (&p[(i, j)] * Rational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        (num, den)
    }

    pub fn element_count(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rep(&self) -> Option<&RegularMatroidRep> {
        self.rep.as_ref()
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    /// Orthogonal projector onto the row space as `(numerators, denominator)`.
    pub fn projector(&self) -> (&[Vec<BigInt>], &BigInt) {
        (&self.projector.0, &self.projector.1)
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn ground_set(&self) -> EdgeSet {
        EdgeSet::full(self.n)
    }

    /// Same matroid with the graph structure dropped, so every search takes
    /// the matrix path.
    pub fn without_graph(&self) -> Self {
        OrientedMatroid { graph: None, ..self.clone() }
    }

    pub fn rank_of(&self, s: EdgeSet) -> usize {
        self.ranks[s.0 as usize] as usize
    }

    pub fn is_independent(&self, s: EdgeSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn is_spanning(&self, s: EdgeSet) -> bool {
        self.rank_of(s) == self.rank
    }

    pub fn is_basis(&self, s: EdgeSet) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }

    /// Canonical signed circuits, sorted by support mask.
    pub fn circuits(&self) -> &[SignedSet] {
        &self.circuits
    }

    /// Canonical signed cocircuits, sorted by support mask.
    pub fn cocircuits(&self) -> &[SignedSet] {
        &self.cocircuits
    }

    pub fn circuit_position(&self, support: EdgeSet) -> Option<usize> {
        self.circuit_index.get(&support.0).copied()
    }

    pub fn cocircuit_position(&self, support: EdgeSet) -> Option<usize> {
        self.cocircuit_index.get(&support.0).copied()
    }

    /// Bases sorted by mask.
    pub fn bases(&self) -> &[EdgeSet] {
        &self.bases
    }

    /// Fundamental circuits of the first basis: a lattice basis of the kernel.
    pub fn kernel_basis(&self) -> &[SignedSet] {
        &self.kernel_basis
    }

    /// Fundamental cocircuits of the first basis: a lattice basis of the image.
    pub fn image_basis(&self) -> &[SignedSet] {
        &self.image_basis
    }

    pub fn enumerate_signed_circuits(&self) -> Vec<SignedVector> {
        self.circuits.iter().map(|c| c.to_vector(self.n, Side::Kernel)).collect()
    }

    pub fn enumerate_signed_cocircuits(&self) -> Vec<SignedVector> {
        self.cocircuits.iter().map(|c| c.to_vector(self.n, Side::Image)).collect()
    }

    fn check_basis(&self, b: EdgeSet) -> Result<()> {
        if b.0 & !full_mask(self.n) != 0 || !self.is_basis(b) {
            return Err(Error::NotABasis(b));
        }
        Ok(())
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.n {
            return Err(Error::InvalidArgument(format!("element {e} outside 0..{}", self.n)));
        }
        Ok(())
    }

    /// The signed circuit in `b ∪ {e}` whose entry at `e` is `+1` when
    /// `forward` holds and `-1` otherwise.
    pub fn fundamental_circuit(&self, b: EdgeSet, e: usize, forward: bool) -> Result<SignedSet> {
        self.check_element(e)?;
        self.check_basis(b)?;
        if b.contains(e) {
            return Err(Error::ElementInBasis(e));
        }
        let support =
            b.iter().filter(|&f| self.is_basis(b.without(f).with(e))).fold(EdgeSet::singleton(e), EdgeSet::with);
        let c = self.circuits[self.circuit_position(support).expect("fundamental circuit is a circuit")];
        Ok(c.signed(c.entry(e) * if forward { 1 } else { -1 }))
    }

    /// The signed cocircuit in `(E ∖ b) ∪ {e}` with entry `±1` at `e` per `forward`.
    pub fn fundamental_cocircuit(&self, b: EdgeSet, e: usize, forward: bool) -> Result<SignedSet> {
        self.check_element(e)?;
        self.check_basis(b)?;
        if !b.contains(e) {
            return Err(Error::ElementNotInBasis(e));
        }
        let support = b
            .complement(self.n)
            .iter()
            .filter(|&f| self.is_basis(b.without(e).with(f)))
            .fold(EdgeSet::singleton(e), EdgeSet::with);
        let c = self.cocircuits[self.cocircuit_position(support).expect("fundamental cocircuit is a cocircuit")];
        Ok(c.signed(c.entry(e) * if forward { 1 } else { -1 }))
    }

    /// Signed circuits contained in `o`.
    pub fn directed_circuits_in(&self, o: Orientation) -> Vec<SignedSet> {
        Self::contained(&self.circuits, o)
    }

    /// Signed cocircuits contained in `o`.
    pub fn directed_cocircuits_in(&self, o: Orientation) -> Vec<SignedSet> {
        Self::contained(&self.cocircuits, o)
    }

    fn contained(list: &[SignedSet], o: Orientation) -> Vec<SignedSet> {
        list.iter()
            .filter_map(|&c| {
                if c.is_in(o) {
                    Some(c)
                } else if c.neg().is_in(o) {
                    Some(c.neg())
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn in_kernel(&self, v: &[i64]) -> bool {
        self.image_basis.iter().all(|c| dot_int(*c, v) == 0)
    }

    pub fn in_image(&self, v: &[i64]) -> bool {
        self.kernel_basis.iter().all(|c| dot_int(*c, v) == 0)
    }

    /// Find a signed circuit through `e` that agrees with `p`, avoids `ed`
    /// and may use `ec` in either direction, or else a signed cocircuit
    /// through `e` that agrees with `p`, avoids `ec` and may use `ed`.
    ///
    /// `supp(p)`, `ec`, `ed` must partition the ground set and `e ∈ supp(p)`.
    pub fn three_painting(&self, p: &PartialOrientation, ec: EdgeSet, ed: EdgeSet, e: usize) -> Result<Painting> {
        let (support, forward) = p.masks();
        let full = full_mask(self.n);
        if support & ec.0 != 0 || support & ed.0 != 0 || ec.0 & ed.0 != 0 || (support | ec.0 | ed.0) != full {
            return Err(Error::InvalidArgument("supp(p), ec and ed must partition the ground set".into()));
        }
        if support >> e & 1 == 0 {
            return Err(Error::InvalidArgument(format!("element {e} is not in supp(p)")));
        }
        let out = match &self.graph {
            Some(g) => paint_graph(g, support, forward, ec.0, e),
            None => self.paint_matroid(support, forward, ec.0, ed.0, e)?,
        };
        debug_assert!(out.vector().support().contains(e));
        debug_assert!(out.vector().conforms_to(support, forward));
        Ok(out)
    }

    fn paint_matroid(&self, support: u64, forward: u64, ec: u64, ed: u64, e: usize) -> Result<Painting> {
        let dir = if forward >> e & 1 == 1 { 1 } else { -1 };
        let pick = |list: &[SignedSet], avoid: u64| {
            list.iter()
                .filter(|c| c.support().contains(e) && c.support().0 & avoid == 0)
                .map(|c| c.signed(c.entry(e) * dir))
                .find(|c| c.conforms_to(support, forward))
        };
        if let Some(c) = pick(&self.circuits, ed) {
            return Ok(Painting::Cycle(c));
        }
        if let Some(c) = pick(&self.cocircuits, ec) {
            return Ok(Painting::Cocycle(c));
        }
        Err(Error::InvariantViolation(format!("3-painting found nothing through element {e}")))
    }

    /// Write a `{0,±1}` kernel (or image) vector as a sum of sign-conforming
    /// signed circuits (or cocircuits) with pairwise disjoint supports.
    pub fn conformal_decompose(&self, v: &SignedVector) -> Result<Vec<SignedSet>> {
        if v.entries.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: v.entries.len() });
        }
        let s = v.to_signed_set().ok_or_else(|| Error::InvalidArgument("entries must be 0, 1 or -1".into()))?;
        match v.side {
            Side::Kernel if !self.in_kernel(&v.entries) => return Err(Error::NotInSubspace("kernel")),
            Side::Image if !self.in_image(&v.entries) => return Err(Error::NotInSubspace("image")),
            Side::Free => return Err(Error::InvalidArgument("side must be kernel or image".into())),
            _ => {}
        }
        Ok(self.decompose_set(s, v.side))
    }

    /// `s` must lie in the subspace named by `side`.
    pub(crate) fn decompose_set(&self, mut s: SignedSet, side: Side) -> Vec<SignedSet> {
        let mut pieces = Vec::new();
        while let Some(e) = s.support().first() {
            let rest = s.support().complement(self.n);
            let p = PartialOrientation::restrict(Orientation::from_bits(s.plus, self.n), s.support());
            let (ec, ed) = match side {
                Side::Kernel => (EdgeSet::EMPTY, rest),
                _ => (rest, EdgeSet::EMPTY),
            };
            let piece = match (self.three_painting(&p, ec, ed, e).expect("valid partition"), side) {
                (Painting::Cycle(c), Side::Kernel) | (Painting::Cocycle(c), Side::Image) => c,
                _ => unreachable!("a conforming piece of the other side is not orthogonal to s"),
            };
            s = SignedSet { plus: s.plus & !piece.plus, minus: s.minus & !piece.minus };
            pieces.push(piece);
        }
        pieces
    }

    /// Split `d` as `c + c*` with `c` in the kernel and `c*` in the row
    /// space. Errors when either part is not integral.
    pub fn split_kernel_image(&self, d: &[i64]) -> Result<(SignedVector, SignedVector)> {
        if d.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: d.len() });
        }
        let (num, den) = &self.projector;
        let mut image = Vec::with_capacity(self.n);
        for row in num {
            let acc: BigInt = row.iter().zip(d).filter(|(_, &x)| x != 0).map(|(a, &x)| a * x).sum();
            if !(&acc % den).is_zero() {
                return Err(Error::NotSameClass);
            }
            image.push((acc / den).to_i64().ok_or(Error::NotSameClass)?);
        }
        let kernel: Vec<i64> = d.iter().zip(&image).map(|(a, b)| a - b).collect();
        Ok((SignedVector::new(kernel, Side::Kernel), SignedVector::new(image, Side::Image)))
    }
}

fn dot_int(c: SignedSet, v: &[i64]) -> i64 {
    v.iter().enumerate().map(|(e, &x)| c.entry(e) * x).sum()
}

/// Reachability search on the graph. The arc of `e` runs `a → b`; search from
/// `b` along arcs of `p` and edges of `ec` in either direction.
fn paint_graph(g: &Graph, support: u64, forward: u64, ec: u64, e: usize) -> Painting {
    let n = g.edge_count();
    let fwd = |f: usize| forward >> f & 1 == 1;
    let (t, h) = g.edge(e);
    let (a, b) = if fwd(e) { (t, h) } else { (h, t) };
    let sign_of = |f: usize, from: usize| if g.edge(f).0 == from { 1 } else { -1 };
    if a == b {
        return Painting::Cycle(SignedSet::from_orientation(Orientation::from_bits(forward, n), EdgeSet::singleton(e)));
    }

    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for f in 0..n {
        let (ft, fh) = g.edge(f);
        if f == e || ft == fh {
            continue;
        }
        if ec >> f & 1 == 1 {
            adj[ft].push((fh, f));
            adj[fh].push((ft, f));
        } else if support >> f & 1 == 1 {
            let (x, y) = if fwd(f) { (ft, fh) } else { (fh, ft) };
            adj[x].push((y, f));
        }
    }
    let mut via: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[b] = true;
    let mut queue = VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        for &(y, f) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, f));
                queue.push_back(y);
            }
        }
    }

    if seen[a] {
        let mut entries = vec![0i64; n];
        entries[e] = if fwd(e) { 1 } else { -1 };
        let mut y = a;
        while let Some((x, f)) = via[y] {
            entries[f] = sign_of(f, x);
            y = x;
        }
        return Painting::Cycle(SignedSet::from_entries(&entries).expect("unit"));
    }

    // X: component of G[V∖W] holding a; Y: component of G[V∖X] holding b
    let component = |start: usize, allowed: &dyn Fn(usize) -> bool| {
        let mut inside = vec![false; g.vertex_count()];
        inside[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(ft, fh) in g.edges() {
                let y = if ft == x {
                    fh
                } else if fh == x {
                    ft
                } else {
                    continue;
                };
                if allowed(y) && !inside[y] {
                    inside[y] = true;
                    stack.push(y);
                }
            }
        }
        inside
    };
    let x_side = component(a, &|v| !seen[v]);
    let y_side = component(b, &|v| !x_side[v]);
    let mut entries = vec![0i64; n];
    for (f, &(ft, fh)) in g.edges().iter().enumerate() {
        entries[f] = y_side[fh] as i64 - y_side[ft] as i64;
    }
    Painting::Cocycle(SignedSet::from_entries(&entries).expect("unit"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn om(g: &Graph) -> OrientedMatroid {
        OrientedMatroid::from_graph(g, &Caps::default()).unwrap()
    }

    fn v(entries: &[i64]) -> SignedSet {
        SignedSet::from_entries(entries).unwrap()
    }

    fn set(ix: &[usize]) -> EdgeSet {
        EdgeSet::from_indices(ix.iter().copied())
    }

    fn single_edge() -> Graph {
        Graph::new(2, vec![(1, 0)]).unwrap()
    }

    fn parallel() -> Graph {
        Graph::new(2, vec![(0, 1), (0, 1)]).unwrap()
    }

    fn triangle_bridge() -> Graph {
        let mut edges = Graph::triangle().edges().to_vec();
        edges.push((2, 3));
        Graph::new(4, edges).unwrap()
    }

    #[test]
    fn triangle_circuits_cocircuits_bases() {
        let m = om(&Graph::triangle());
        assert_eq!(m.circuits(), &[v(&[1, 1, 1])]);
        let mut co: Vec<_> = m.cocircuits().to_vec();
        co.sort();
        let mut want = vec![v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[1, 0, -1])];
        want.sort();
        assert_eq!(co, want);
        assert_eq!(m.bases(), &[set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]);
        let d = m.rep().unwrap();
        assert_eq!(d.apply(&[1, 1, 1]), vec![0, 0]);
    }

    #[test]
    fn small_graph_enumerations() {
        let m = om(&single_edge());
        assert!(m.circuits().is_empty());
        assert_eq!(m.cocircuits(), &[v(&[1])]);
        assert_eq!(m.bases(), &[set(&[0])]);
        let m = om(&parallel());
        assert_eq!(m.circuits(), &[v(&[1, -1])]);
        assert_eq!(m.cocircuits(), &[v(&[1, 1])]);
        assert_eq!(m.bases(), &[set(&[0]), set(&[1])]);
    }

    #[test]
    fn one_vertex_graph_is_all_loops() {
        let g = Graph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let m = om(&g);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.circuits(), &[v(&[1]), v(&[0, 1])]);
        assert!(m.cocircuits().is_empty());
        assert_eq!(m.bases(), &[EdgeSet::EMPTY]);
        let (c, cs) = m.split_kernel_image(&[1, -1]).unwrap();
        assert_eq!((c.entries, cs.entries), (vec![1, -1], vec![0, 0]));
    }

    #[test]
    fn fundamental_vectors() {
        let m = om(&Graph::triangle());
        assert_eq!(m.fundamental_circuit(set(&[0, 1]), 2, true).unwrap(), v(&[1, 1, 1]));
        assert_eq!(m.fundamental_circuit(set(&[0, 1]), 2, false).unwrap(), v(&[-1, -1, -1]));
        assert_eq!(m.fundamental_cocircuit(set(&[0, 1]), 0, true).unwrap(), v(&[1, 0, -1]));
        assert_eq!(m.fundamental_circuit(set(&[0, 1]), 0, true), Err(Error::ElementInBasis(0)));
        assert_eq!(m.fundamental_cocircuit(set(&[0, 1]), 2, true), Err(Error::ElementNotInBasis(2)));
        assert_eq!(m.fundamental_circuit(set(&[0]), 2, true), Err(Error::NotABasis(set(&[0]))));

        let m = om(&parallel());
        assert_eq!(m.fundamental_circuit(set(&[0]), 1, true).unwrap(), v(&[-1, 1]));
        assert_eq!(m.fundamental_cocircuit(set(&[0]), 0, true).unwrap(), v(&[1, 1]));
        let m = om(&single_edge());
        assert_eq!(m.fundamental_cocircuit(set(&[0]), 0, true).unwrap(), v(&[1]));
    }

    #[test]
    fn loop_fundamental_circuit_is_unit() {
        let mut edges = Graph::triangle().edges().to_vec();
        edges.push((1, 1));
        let m = om(&Graph::new(3, edges).unwrap());
        assert_eq!(m.fundamental_circuit(set(&[0, 1]), 3, true).unwrap(), v(&[0, 0, 0, 1]));
    }

    #[test]
    fn fundamental_circuit_matches_rational_solve() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let m = om(&g);
        let a = m.rep().unwrap().clone();
        for &b in m.bases() {
            let bcols: Vec<Vec<i64>> = b.iter().map(|f| a.column(f)).collect();
            let refs: Vec<&[i64]> = bcols.iter().map(Vec::as_slice).collect();
            let ab = RatMatrix::from_int_columns(a.rank(), &refs);
            for e in b.complement(6).iter() {
                let rhs: Vec<Rational> = a.column(e).iter().map(|&x| -Rational::from_integer(x.into())).collect();
                let x = ab.solve(&rhs).unwrap();
                let mut want = vec![0i64; 6];
                want[e] = 1;
                for (f, val) in b.iter().zip(x) {
                    want[f] = val.to_integer().try_into().unwrap();
                }
                assert_eq!(m.fundamental_circuit(b, e, true).unwrap().to_entries(6), want);
            }
        }
    }

    #[test]
    fn three_painting_examples() {
        let m = om(&Graph::triangle());
        let p = PartialOrientation::new().with(0, true);
        let got = m.three_painting(&p, set(&[1, 2]), EdgeSet::EMPTY, 0).unwrap();
        assert_eq!(got, Painting::Cycle(v(&[1, 1, 1])));
        let full = PartialOrientation::restrict(Orientation::reference(3), m.ground_set());
        assert_eq!(m.three_painting(&full, EdgeSet::EMPTY, EdgeSet::EMPTY, 0).unwrap(), Painting::Cycle(v(&[1, 1, 1])));
        let m = om(&single_edge());
        let p = PartialOrientation::new().with(0, true);
        assert_eq!(m.three_painting(&p, EdgeSet::EMPTY, EdgeSet::EMPTY, 0).unwrap(), Painting::Cocycle(v(&[1])));
        assert!(matches!(
            m.three_painting(&PartialOrientation::new(), set(&[0]), EdgeSet::EMPTY, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn conformal_examples() {
        let m = om(&Graph::triangle());
        let got = m.conformal_decompose(&SignedVector::new(vec![1, 1, 1], Side::Kernel)).unwrap();
        assert_eq!(got, vec![v(&[1, 1, 1])]);
        let m = om(&triangle_bridge());
        let got = m.conformal_decompose(&SignedVector::new(vec![0, 0, 0, 1], Side::Image)).unwrap();
        assert_eq!(got, vec![v(&[0, 0, 0, 1])]);
        assert_eq!(
            m.conformal_decompose(&SignedVector::new(vec![1, 0, 0, 0], Side::Kernel)),
            Err(Error::NotInSubspace("kernel"))
        );
    }

    #[test]
    fn bowtie_decomposes_into_its_two_triangles() {
        // two directed triangles sharing vertex 0
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        for m in [om(&g), om(&g).without_graph()] {
            let pieces = m.conformal_decompose(&SignedVector::new(vec![1; 6], Side::Kernel)).unwrap();
            // oracle: the only pair of disjoint enumerated circuits covering E
            let mut pairs = Vec::new();
            for (i, &c) in m.circuits().iter().enumerate() {
                for &d in &m.circuits()[i + 1..] {
                    if c.disjoint_sum(d).map(|s| s.support()) == Some(m.ground_set()) {
                        pairs.push(vec![c, d]);
                    }
                }
            }
            let mut sorted = pieces.clone();
            sorted.sort();
            assert_eq!(pairs, vec![sorted]);
        }
    }

    #[test]
    fn split_examples() {
        let m = om(&Graph::triangle());
        let (c, cs) = m.split_kernel_image(&[1, 1, 1]).unwrap();
        assert_eq!((c.entries, cs.entries), (vec![1, 1, 1], vec![0, 0, 0]));
        let (c, cs) = m.split_kernel_image(&[1, -1, 0]).unwrap();
        assert_eq!((c.entries, cs.entries), (vec![0, 0, 0], vec![1, -1, 0]));
        assert_eq!(m.split_kernel_image(&[1, 0, 0]), Err(Error::NotSameClass));
        let m = om(&triangle_bridge());
        let (c, cs) = m.split_kernel_image(&[1, 1, 1, -1]).unwrap();
        assert_eq!((c.entries, cs.entries), (vec![1, 1, 1, 0], vec![0, 0, 0, -1]));
    }

    #[test]
    fn circuits_are_orthogonal_to_cocircuits() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3), (2, 2), (0, 1)]).unwrap();
        let m = om(&g);
        for &c in m.circuits() {
            assert!(m.rep().unwrap().apply(&c.to_entries(8)).iter().all(|&x| x == 0));
            for &d in m.cocircuits() {
                assert_eq!(c.dot(d), 0);
            }
        }
    }

    #[test]
    fn r10_bases_match_cauchy_binet() {
        let r10 = RegularMatroidRep::r10();
        let m = OrientedMatroid::from_rep(r10.clone(), &Caps::default()).unwrap();
        // Cauchy-Binet: det(A Aᵀ) = Σ det(A_B)², and each squared minor is 0 or 1
        let a = r10.matrix();
        let gram: Vec<Vec<i64>> =
            (0..5).map(|i| (0..5).map(|j| (0..10).map(|k| a[i][k] * a[j][k]).sum()).collect()).collect();
        assert_eq!(BigInt::from(m.bases().len()), crate::linalg::determinant(&gram));
        assert_eq!(m.bases().len(), 162);
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps { circuit_elements: 2, ..Caps::default() };
        assert!(matches!(OrientedMatroid::from_graph(&Graph::triangle(), &caps), Err(Error::CapExceeded { .. })));
    }
}
