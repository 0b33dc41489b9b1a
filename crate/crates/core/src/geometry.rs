//! Finite certificates for the cube decomposition and the zonotope counts:
//! half-open cells, point location, subset-indexed polynomials and a
//! lattice-point counter for dilated zonotopes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bijection::BijectionTable;
use crate::caps::ensure_cap;
use crate::error::{Error, Result};
use crate::fm::{project, Ineq};
use crate::linalg::{RatMatrix, Rational};
use crate::oriented::OrientedMatroid;
use crate::signed::{EdgeSet, Orientation};

/// `hoc(O, S)`: coordinates outside `S` equal the anchor; a coordinate in `S`
/// ranges over `(0,1]` when the anchor is `1` and over `[0,1)` when it is `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfOpenCell {
    pub anchor: Orientation,
    pub generating_set: EdgeSet,
}

impl HalfOpenCell {
    pub fn new(anchor: Orientation, generating_set: EdgeSet) -> Self {
        HalfOpenCell { anchor, generating_set }
    }

    pub fn dimension(&self) -> usize {
        self.generating_set.len()
    }
}

/// A point of `[0,1]^E` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Rational64>,
    ones: u64,
    interior: u64,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational64>) -> Result<Self> {
        if coords.len() > crate::signed::MAX_ELEMENTS {
            return Err(Error::InvalidArgument("too many coordinates".into()));
        }
        let (mut ones, mut interior) = (0u64, 0u64);
        for (e, x) in coords.iter().enumerate() {
            if x.is_negative() || *x > Rational64::one() {
                return Err(Error::InvalidArgument(format!("coordinate {e} = {x} is outside [0,1]")));
            }
            if x.is_one() {
                ones |= 1 << e;
            } else if !x.is_zero() {
                interior |= 1 << e;
            }
        }
        Ok(RationalPoint { coords, ones, interior })
    }

    pub fn lattice(o: Orientation) -> Self {
        let coords = (0..o.len()).map(|e| Rational64::from_integer(o.get(e) as i64)).collect();
        RationalPoint::new(coords).expect("0/1 point")
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinates equal to 1.
    pub fn ones(&self) -> EdgeSet {
        EdgeSet(self.ones)
    }

    /// Coordinates strictly between 0 and 1.
    pub fn interior(&self) -> EdgeSet {
        EdgeSet(self.interior)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn cell_contains(c: &HalfOpenCell, p: &RationalPoint) -> bool {
    let n = p.len();
    let anchor = c.anchor.bits();
    let s = c.generating_set.0;
    (0..n).all(|e| {
        let a = anchor >> e & 1 == 1;
        let x = &p.coords[e];
        if s >> e & 1 == 0 {
            *x == Rational64::from_integer(a as i64)
        } else if a {
            x.is_positive()
        } else {
            *x < Rational64::one()
        }
    })
}

/// Every anchor `O` with `p ∈ hoc(O, map[O])`. Only anchors agreeing with
/// `p` on its integral coordinates can qualify, and for those the cell
/// contains `p` exactly when every fractional coordinate lies in `map[O]`.
pub fn covering_anchors(map: &[EdgeSet], p: &RationalPoint) -> Vec<Orientation> {
    let n = p.len();
    let frac = p.interior();
    frac.subsets()
        .map(|x| Orientation::from_bits(p.ones | x.0, n))
        .filter(|o| frac.is_subset(map[o.bits() as usize]))
        .collect()
}

/// The unique anchor whose cell holds `p`.
pub fn locate_point(table: &BijectionTable, p: &RationalPoint) -> Result<Orientation> {
    locate_in_map(table.forward(), p)
}

pub fn locate_in_map(map: &[EdgeSet], p: &RationalPoint) -> Result<Orientation> {
    let found = covering_anchors(map, p);
    match found.as_slice() {
        [o] => Ok(*o),
        _ => Err(Error::DecompositionViolated(p.to_string(), found.len())),
    }
}

/// A random point with coordinates `k/d`, `d ∈ {2,3,5,7}`, `0 ≤ k ≤ d`.
pub fn random_point(rng: &mut impl Rng, n: usize) -> RationalPoint {
    const DENOMS: [i64; 4] = [2, 3, 5, 7];
    let coords = (0..n)
        .map(|_| {
            let d = DENOMS[rng.gen_range(0..DENOMS.len())];
            Rational64::new(rng.gen_range(0..=d), d)
        })
        .collect();
    RationalPoint::new(coords).expect("in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeReport {
    pub seed: u64,
    pub pairs_checked: u64,
    /// First pair `O1 ≠ O2` with no `e` such that `O1(e) ≠ O2(e)` and
    /// `e ∈ S(O1) △ S(O2)`.
    pub separation_violation: Option<(Orientation, Orientation)>,
    pub samples: usize,
    pub uncovered: usize,
    pub multiply_covered: usize,
    pub first_bad_point: Option<String>,
    pub passed: bool,
}

impl CubeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "separation_violation": self.separation_violation.map(|(a, b)| [a.to_string(), b.to_string()]),
            "samples": self.samples,
            "uncovered": self.uncovered,
            "multiply_covered": self.multiply_covered,
            "first_bad_point": self.first_bad_point,
            "passed": self.passed,
        })
    }
}

/// Check that the cells `hoc(O, map[O])` tile `[0,1]^E`: exactly through the
/// pairwise separation condition, and by locating `samples` random points.
pub fn verify_cube_decomposition(map: &[EdgeSet], n: usize, samples: usize, seed: u64) -> Result<CubeReport> {
    if map.len() != 1usize << n {
        return Err(Error::LengthMismatch { expected: 1 << n, actual: map.len() });
    }
    let mut separation_violation = None;
    let mut pairs_checked = 0u64;
    'outer: for a in 0..map.len() {
        for b in a + 1..map.len() {
            pairs_checked += 1;
            if (a ^ b) as u64 & (map[a].0 ^ map[b].0) == 0 {
                separation_violation = Some((Orientation::from_bits(a as u64, n), Orientation::from_bits(b as u64, n)));
                break 'outer;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut uncovered, mut multiply_covered, mut first_bad_point) = (0, 0, None);
    for _ in 0..samples {
        let p = random_point(&mut rng, n);
        let k = covering_anchors(map, &p).len();
        if k != 1 {
            if k == 0 {
                uncovered += 1;
            } else {
                multiply_covered += 1;
            }
            first_bad_point.get_or_insert_with(|| p.to_string());
        }
    }
    let passed = separation_violation.is_none() && uncovered == 0 && multiply_covered == 0;
    Ok(CubeReport {
        seed,
        pairs_checked,
        separation_violation,
        samples,
        uncovered,
        multiply_covered,
        first_bad_point,
        passed,
    })
}

/// A polynomial of degree at most one in each variable, as a map from the
/// monomial's variable set to its coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    terms: BTreeMap<EdgeSet, BigInt>,
}

impl MultilinearPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// `Π_e (1 + q_e)`: every subset with coefficient 1.
    pub fn product_of_one_plus(n: usize) -> Self {
        EdgeSet::full(n).subsets().collect()
    }

    pub fn add_monomial(&mut self, s: EdgeSet, c: BigInt) {
        let entry = self.terms.entry(s).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn coefficient(&self, s: EdgeSet) -> BigInt {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<EdgeSet, BigInt> {
        &self.terms
    }

    /// Number of nonzero monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &MultilinearPolynomial) -> MultilinearPolynomial {
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_monomial(*s, -c.clone());
        }
        out
    }

    pub fn eval(&self, q: &[u64]) -> BigInt {
        self.terms.iter().map(|(s, c)| s.iter().fold(c.clone(), |acc, e| acc * q[e])).sum()
    }

    /// `[{"subset": [...], "coeff": k}, ...]` in subset order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(s, c)| {
                    let coeff = c.to_i64().map_or_else(|| json!(c.to_string()), |x| json!(x));
                    json!({"subset": s.to_vec(), "coeff": coeff})
                })
                .collect(),
        )
    }
}

impl FromIterator<EdgeSet> for MultilinearPolynomial {
    fn from_iter<I: IntoIterator<Item = EdgeSet>>(it: I) -> Self {
        let mut p = MultilinearPolynomial::new();
        for s in it {
            p.add_monomial(s, BigInt::one());
        }
        p
    }
}

/// `Σ_F Π_{e∈F} q_e` over independent sets `F`.
pub fn ehrhart_from_independent_sets(m: &OrientedMatroid) -> MultilinearPolynomial {
    m.ground_set().subsets().filter(|&s| m.is_independent(s)).collect()
}

/// `Σ_S Π_{e∈S} q_e` over spanning sets `S`.
pub fn spanning_set_polynomial(m: &OrientedMatroid) -> MultilinearPolynomial {
    m.ground_set().subsets().filter(|&s| m.is_spanning(s)).collect()
}

/// `Σ_O Π_{e∈map[O]} q_e`.
pub fn ehrhart_from_map(map: &[EdgeSet]) -> MultilinearPolynomial {
    map.iter().copied().collect()
}

pub fn ehrhart_from_phi(table: &BijectionTable) -> MultilinearPolynomial {
    ehrhart_from_map(table.forward())
}

/// The sum of `ehrhart_from_phi` restricted to σ-compatible orientations.
pub fn sigma_restricted_sum(table: &BijectionTable) -> MultilinearPolynomial {
    Orientation::all(table.element_count()).filter(|&o| table.sigma().is_compatible(o)).map(|o| table.phi(o)).collect()
}

/// The sum of `ehrhart_from_phi` restricted to σ*-compatible orientations.
pub fn sigma_star_restricted_sum(table: &BijectionTable) -> MultilinearPolynomial {
    Orientation::all(table.element_count())
        .filter(|&o| table.sigma_star().is_compatible(o))
        .map(|o| table.phi(o))
        .collect()
}

/// Lattice points of `{A t : 0 ≤ t ≤ q}` by box enumeration.
///
/// The membership test is the projection of `{(t, x, q) : A t = x, 0 ≤ t ≤ q}`
/// onto `(x, q)`, computed once by Fourier–Motzkin elimination of `t`.
#[derive(Clone, Debug)]
pub struct ZonotopeCounter {
    rank: usize,
    n: usize,
    matrix: Vec<Vec<i64>>,
    /// `a·x + b·q + c ≥ 0` with integer `a`, `b`, `c`.
    rows: Vec<(Vec<i64>, Vec<i64>, i64)>,
    box_cap: usize,
}

impl ZonotopeCounter {
    pub fn new(m: &OrientedMatroid) -> Result<Self> {
        let caps = m.caps();
        ensure_cap("zonotope rank", m.rank(), caps.zonotope_rank)?;
        let n = m.element_count();
        let r = m.rank();
        let Some(rep) = m.rep() else {
            return Ok(ZonotopeCounter {
                rank: 0,
                n,
                matrix: Vec::new(),
                rows: Vec::new(),
                box_cap: caps.zonotope_box,
            });
        };
        let basis = m.bases()[0].to_vec();
        let nonbasis = m.bases()[0].complement(n).to_vec();
        let cols: Vec<Vec<i64>> = basis.iter().map(|&e| rep.column(e)).collect();
        let refs: Vec<&[i64]> = cols.iter().map(Vec::as_slice).collect();
        let inv = RatMatrix::from_int_columns(r, &refs).inverse().expect("basis columns are independent");

        // variables: t_N (n - r), then x (r), then q (n)
        let k = nonbasis.len();
        let width = k + r + n;
        let x_at = |i: usize| k + i;
        let q_at = |e: usize| k + r + e;
        let int = |v: &Rational| v.to_integer();
        let mut rows = Vec::new();
        let mut push = |coeffs: Vec<BigInt>| {
            let id = rows.len();
            rows.push(Ineq::new(coeffs, Rational::zero(), id));
        };
        for (j, &e) in nonbasis.iter().enumerate() {
            let mut lo = vec![BigInt::zero(); width];
            lo[j] = BigInt::one();
            push(lo);
            let mut hi = vec![BigInt::zero(); width];
            hi[j] = -BigInt::one();
            hi[q_at(e)] = BigInt::one();
            push(hi);
        }
        for (bi, &e) in basis.iter().enumerate() {
            // t_e = Σ_l inv[bi][l] x_l - Σ_j (inv · A_N)[bi][j] t_j
            let mut expr = vec![BigInt::zero(); width];
            for l in 0..r {
                expr[x_at(l)] = int(&inv[(bi, l)]);
            }
            for (j, &f) in nonbasis.iter().enumerate() {
                let col = rep.column(f);
                let s: BigInt = (0..r).map(|l| int(&inv[(bi, l)]) * col[l]).sum();
                expr[j] = -s;
            }
            let mut hi: Vec<BigInt> = expr.iter().map(|c| -c).collect();
            hi[q_at(e)] += BigInt::one();
            push(expr);
            push(hi);
        }
        let vars: Vec<usize> = (0..k).collect();
        let projected = project(rows, &vars, caps.fm_constraints)?
            .ok_or_else(|| Error::InvariantViolation("zonotope system infeasible".into()))?;
        let to_i64 = |b: &BigInt| b.to_i64().ok_or_else(|| Error::InvariantViolation("coefficient overflow".into()));
        let rows = projected
            .iter()
            .map(|q| {
                let den = q.constant.denom().clone();
                let scale = |c: &BigInt| to_i64(&(c * &den));
                let a = q.coeffs[k..k + r].iter().map(scale).collect::<Result<Vec<_>>>()?;
                let b = q.coeffs[k + r..].iter().map(scale).collect::<Result<Vec<_>>>()?;
                Ok((a, b, to_i64(q.constant.numer())?))
            })
            .collect::<Result<_>>()?;
        Ok(ZonotopeCounter { rank: r, n, matrix: rep.matrix().to_vec(), rows, box_cap: caps.zonotope_box })
    }

    /// Number of inequalities describing the projection.
    pub fn facet_rows(&self) -> usize {
        self.rows.len()
    }

    /// Lattice points of the `q`-dilate.
    pub fn count(&self, q: &[u64]) -> Result<u64> {
        if q.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, actual: q.len() });
        }
        if q.contains(&0) {
            return Err(Error::InvalidArgument("dilation entries must be positive".into()));
        }
        if self.rank == 0 {
            return Ok(1);
        }
        let r = self.rank;
        let q: Vec<i64> = q.iter().map(|&x| x as i64).collect();
        let bounds: Vec<(i64, i64)> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&q).fold((0, 0), |(lo, hi), (&a, &qe)| (lo + qe * a.min(0), hi + qe * a.max(0))))
            .collect();
        let size: u128 = bounds.iter().map(|(lo, hi)| (hi - lo + 1) as u128).product();
        ensure_cap("zonotope bounding box", size.min(usize::MAX as u128) as usize, self.box_cap)?;
        let rows: Vec<(&[i64], i64)> = self
            .rows
            .iter()
            .map(|(a, b, c)| (a.as_slice(), c + b.iter().zip(&q).map(|(x, y)| x * y).sum::<i64>()))
            .collect();

        let mut count = 0u64;
        let mut x = vec![0i64; r];
        let outer: u128 = bounds[..r - 1].iter().map(|(lo, hi)| (hi - lo + 1) as u128).product();
        for idx in 0..outer {
            let mut rem = idx;
            for i in 0..r - 1 {
                let w = (bounds[i].1 - bounds[i].0 + 1) as u128;
                x[i] = bounds[i].0 + (rem % w) as i64;
                rem /= w;
            }
            let (mut lo, mut hi) = bounds[r - 1];
            for (a, d) in &rows {
                let rest: i64 = d + a[..r - 1].iter().zip(&x).map(|(u, v)| u * v).sum::<i64>();
                let c = a[r - 1];
                // c · x_last + rest ≥ 0
                if c > 0 {
                    lo = lo.max(div_ceil(-rest, c));
                } else if c < 0 {
                    hi = hi.min(div_floor(rest, -c));
                } else if rest < 0 {
                    hi = lo - 1;
                }
                if hi < lo {
                    break;
                }
            }
            if hi >= lo {
                count += (hi - lo + 1) as u64;
            }
        }
        Ok(count)
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// One-shot form of [`ZonotopeCounter::count`].
pub fn count_dilated_zonotope_lattice_points(m: &OrientedMatroid, q: &[u64]) -> Result<u64> {
    ZonotopeCounter::new(m)?.count(q)
}
