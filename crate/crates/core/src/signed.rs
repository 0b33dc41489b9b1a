//! Bitset-backed value types: element subsets, orientations, partial
//! orientations and signed {0,±1} vectors.
//!
//! Ground sets are indexed `0..n` with `n <= 64`; every set is a `u64` mask.
//! An orientation stores bit `e` set when element `e` agrees with the
//! reference direction, so the reference orientation is the all-ones vertex of
//! the cube `{0,1}^E`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 64;

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the ground set `E`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u64);

/// A basis of the matroid (a spanning tree in the graph case).
pub type Basis = EdgeSet;
/// A spanning subgraph, identified with its edge set.
pub type SpanningSubgraph = EdgeSet;

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn full(n: usize) -> Self {
        EdgeSet(full_mask(n))
    }

    pub fn singleton(e: usize) -> Self {
        EdgeSet(1 << e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        EdgeSet(it.into_iter().fold(0, |m, e| m | (1 << e)))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        EdgeSet(self.0 | 1 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        EdgeSet(self.0 & !(1 << e))
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        EdgeSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Self) -> Self {
        EdgeSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Self) -> Self {
        EdgeSet(self.0 & !o.0)
    }

    #[inline]
    pub fn symmetric_difference(self, o: Self) -> Self {
        EdgeSet(self.0 ^ o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    /// Complement inside a ground set of size `n`.
    pub fn complement(self, n: usize) -> Self {
        EdgeSet(!self.0 & full_mask(n))
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let e = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(e)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(EdgeSet(s))
        })
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for EdgeSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&e) = v.iter().find(|&&e| e >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!("element index {e} out of range")));
        }
        Ok(EdgeSet::from_indices(v))
    }
}

/// An orientation: a vertex of the cube `{0,1}^E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    bits: u64,
    len: usize,
}

impl Orientation {
    pub fn from_bits(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_ELEMENTS);
        Orientation { bits: bits & full_mask(len), len }
    }

    /// The reference orientation (every element agrees with its reference arc).
    pub fn reference(len: usize) -> Self {
        Orientation::from_bits(u64::MAX, len)
    }

    pub fn from_bools(signs: &[bool]) -> Self {
        let bits = signs.iter().enumerate().fold(0u64, |m, (e, &s)| if s { m | 1 << e } else { m });
        Orientation::from_bits(bits, signs.len())
    }

    pub fn to_bools(self) -> Vec<bool> {
        (0..self.len).map(|e| self.get(e)).collect()
    }

    /// Every orientation of an `n`-element ground set, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Orientation> {
        (0..1u64 << n).map(move |b| Orientation::from_bits(b, n))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(self, e: usize) -> bool {
        self.bits >> e & 1 == 1
    }

    /// The set of reference-agreeing elements.
    #[inline]
    pub fn forward_set(self) -> EdgeSet {
        EdgeSet(self.bits)
    }

    /// Reverse every element in `s`.
    #[inline]
    pub fn flip(self, s: EdgeSet) -> Self {
        Orientation::from_bits(self.bits ^ s.0, self.len)
    }

    /// Set of elements on which the two orientations disagree.
    #[inline]
    pub fn disagreement(self, o: Orientation) -> EdgeSet {
        EdgeSet(self.bits ^ o.bits)
    }

    /// Does this orientation extend the given partial orientation?
    pub fn extends(self, p: &PartialOrientation) -> bool {
        let (sup, fwd) = p.masks();
        (self.bits & sup) == fwd
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for e in 0..self.len {
            if e > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(e) as u8)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (0..self.len).map(|e| self.get(e) as u8).collect::<Vec<_>>().serialize(s)
    }
}

/// An assignment of directions to a subset `P` of the ground set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialOrientation {
    pub assignment: BTreeMap<usize, bool>,
}

impl PartialOrientation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Restriction of `o` to `support`.
    pub fn restrict(o: Orientation, support: EdgeSet) -> Self {
        PartialOrientation { assignment: support.iter().map(|e| (e, o.get(e))).collect() }
    }

    pub fn with(mut self, e: usize, forward: bool) -> Self {
        self.assignment.insert(e, forward);
        self
    }

    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_indices(self.assignment.keys().copied())
    }

    pub fn get(&self, e: usize) -> Option<bool> {
        self.assignment.get(&e).copied()
    }

    /// `(support mask, forward mask)`.
    pub fn masks(&self) -> (u64, u64) {
        self.assignment.iter().fold((0, 0), |(s, f), (&e, &d)| (s | 1 << e, if d { f | 1 << e } else { f }))
    }
}

/// Which of the two orthogonal subspaces a vector is declared to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Kernel,
    Image,
    Free,
}

/// A general integer vector with a side tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedVector {
    pub entries: Vec<i64>,
    pub side: Side,
}

impl SignedVector {
    pub fn new(entries: Vec<i64>, side: Side) -> Self {
        SignedVector { entries, side }
    }

    pub fn zero(n: usize, side: Side) -> Self {
        SignedVector { entries: vec![0; n], side }
    }

    pub fn support(&self) -> EdgeSet {
        EdgeSet::from_indices(self.entries.iter().enumerate().filter(|(_, &x)| x != 0).map(|(e, _)| e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Compact form when every entry is in `{0,±1}`.
    pub fn to_signed_set(&self) -> Option<SignedSet> {
        SignedSet::from_entries(&self.entries)
    }
}

/// A `{0,±1}` vector stored as a pair of disjoint masks.
///
/// Signed circuits and cocircuits (directed cycles and cocycles in the graph
/// case), and disjoint sums of them, all live here.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSet {
    pub plus: u64,
    pub minus: u64,
}

impl SignedSet {
    pub const ZERO: SignedSet = SignedSet { plus: 0, minus: 0 };

    pub fn new(plus: EdgeSet, minus: EdgeSet) -> Self {
        debug_assert_eq!(plus.0 & minus.0, 0);
        SignedSet { plus: plus.0, minus: minus.0 }
    }

    pub fn from_entries(entries: &[i64]) -> Option<Self> {
        if entries.len() > MAX_ELEMENTS {
            return None;
        }
        let mut s = SignedSet::ZERO;
        for (e, &x) in entries.iter().enumerate() {
            match x {
                0 => {}
                1 => s.plus |= 1 << e,
                -1 => s.minus |= 1 << e,
                _ => return None,
            }
        }
        Some(s)
    }

    /// The arcs an orientation uses on the elements of `support`.
    pub fn from_orientation(o: Orientation, support: EdgeSet) -> Self {
        SignedSet { plus: o.bits() & support.0, minus: !o.bits() & support.0 }
    }

    #[inline]
    pub fn support(self) -> EdgeSet {
        EdgeSet(self.plus | self.minus)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.plus | self.minus == 0
    }

    #[inline]
    pub fn entry(self, e: usize) -> i64 {
        (self.plus >> e & 1) as i64 - (self.minus >> e & 1) as i64
    }

    #[inline]
    pub fn neg(self) -> Self {
        SignedSet { plus: self.minus, minus: self.plus }
    }

    /// `self` with sign `s` (`+1` keeps, `-1` negates).
    #[inline]
    pub fn signed(self, s: i64) -> Self {
        if s < 0 {
            self.neg()
        } else {
            self
        }
    }

    /// Is every arc of this vector an arc of `o`?
    #[inline]
    pub fn is_in(self, o: Orientation) -> bool {
        self.plus & !o.bits() == 0 && self.minus & o.bits() == 0
    }

    /// Does the vector agree with the partial orientation wherever both are defined?
    #[inline]
    pub fn conforms_to(self, support: u64, forward: u64) -> bool {
        self.plus & support & !forward == 0 && self.minus & support & forward == 0
    }

    /// Lowest-index nonzero entry is `+1`.
    #[inline]
    pub fn is_canonical(self) -> bool {
        let s = self.plus | self.minus;
        s == 0 || self.plus & (s & s.wrapping_neg()) != 0
    }

    #[inline]
    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.neg()
        }
    }

    /// Standard inner product.
    #[inline]
    pub fn dot(self, o: SignedSet) -> i64 {
        ((self.plus & o.plus).count_ones() + (self.minus & o.minus).count_ones()) as i64
            - ((self.plus & o.minus).count_ones() + (self.minus & o.plus).count_ones()) as i64
    }

    pub fn to_entries(self, n: usize) -> Vec<i64> {
        (0..n).map(|e| self.entry(e)).collect()
    }

    pub fn to_vector(self, n: usize, side: Side) -> SignedVector {
        SignedVector::new(self.to_entries(n), side)
    }

    /// Sum of two vectors with disjoint supports.
    pub fn disjoint_sum(self, o: SignedSet) -> Option<SignedSet> {
        (self.support().intersection(o.support()).is_empty())
            .then_some(SignedSet { plus: self.plus | o.plus, minus: self.minus | o.minus })
    }
}

impl fmt::Debug for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = 64 - (self.plus | self.minus).leading_zeros() as usize;
        write!(f, "[")?;
        for e in 0..top {
            if e > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.entry(e))?;
        }
        write!(f, "]")
    }
}

/// Reverse the arcs of `v` in `o`; `v` must be contained in `o`.
pub fn reverse(o: Orientation, v: SignedSet) -> Result<Orientation> {
    if !v.is_in(o) {
        return Err(Error::NotInOrientation);
    }
    Ok(o.flip(v.support()))
}
