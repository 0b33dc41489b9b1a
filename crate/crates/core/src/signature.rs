//! Circuit and cocircuit signatures: one chosen sign per support.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::caps::ensure_cap;
use crate::error::{Error, Result};
use crate::fm::{feasible_point, Ineq};
use crate::linalg::Rational;
use crate::oriented::OrientedMatroid;
use crate::signed::{EdgeSet, Orientation, SignedSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignatureSide {
    Circuit,
    Cocircuit,
}

impl SignatureSide {
    pub fn name(self) -> &'static str {
        match self {
            SignatureSide::Circuit => "circuit",
            SignatureSide::Cocircuit => "cocircuit",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "circuit" => Ok(SignatureSide::Circuit),
            "cocircuit" => Ok(SignatureSide::Cocircuit),
            other => Err(Error::InvalidSignature(format!("unknown side {other:?}"))),
        }
    }
}

/// A rational weight per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn from_ints(w: &[i64]) -> Self {
        WeightVector(w.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, v: SignedSet) -> Rational {
        v.support().iter().fold(
            Rational::zero(),
            |acc, e| {
                if v.entry(e) > 0 {
                    acc + &self.0[e]
                } else {
                    acc - &self.0[e]
                }
            },
        )
    }

    /// `K·D·w + (2^(n-1), …, 2, 1)` with `D` the common denominator and
    /// `K = 2^n`. Keeps every strict sign of `w` on `{0,±1}` vectors and
    /// breaks each tie toward the vector whose lowest-index entry is `+1`.
    pub fn lexicographic_augmentation(&self) -> WeightVector {
        let n = self.0.len();
        let den = self.0.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let k = BigInt::one() << n;
        WeightVector(
            self.0
                .iter()
                .enumerate()
                .map(|(e, x)| {
                    let scaled = (x * Rational::from_integer(&den * &k)).to_integer();
                    Rational::from_integer(scaled + (BigInt::one() << (n - 1 - e)))
                })
                .collect(),
        )
    }

    fn parse_entry(v: &Value) -> Result<Rational> {
        match v {
            Value::Number(x) => x
                .as_i64()
                .map(|i| Rational::from_integer(i.into()))
                .ok_or_else(|| Error::Parse(format!("weight {x} is not an integer or a/b string"))),
            Value::String(s) => parse_rational(s),
            other => Err(Error::Parse(format!("bad weight {other}"))),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl FromStr for WeightVector {
    type Err = Error;

    /// Comma-separated rationals such as `1,-2/3,5`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(WeightVector(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<_>>().map(WeightVector)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Weights(WeightVector),
    Explicit,
}

/// One signed circuit (or cocircuit) per support.
///
/// `choices[i]` is `±` the `i`-th canonical circuit (or cocircuit) of the
/// matroid it was built for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    side: SignatureSide,
    choices: Vec<SignedSet>,
    provenance: Provenance,
}

fn supports(m: &OrientedMatroid, side: SignatureSide) -> &[SignedSet] {
    match side {
        SignatureSide::Circuit => m.circuits(),
        SignatureSide::Cocircuit => m.cocircuits(),
    }
}

impl Signature {
    pub fn side(&self) -> SignatureSide {
        self.side
    }

    pub fn choices(&self) -> &[SignedSet] {
        &self.choices
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Choose per support the sign with positive weight. A tie takes the
    /// canonical representative and the result must then pass
    /// [`is_acyclic`].
    pub fn from_weights(m: &OrientedMatroid, w: &WeightVector, side: SignatureSide) -> Result<Self> {
        if w.len() != m.element_count() {
            return Err(Error::LengthMismatch { expected: m.element_count(), actual: w.len() });
        }
        let mut tied = false;
        let choices = supports(m, side)
            .iter()
            .map(|&c| {
                let d = w.dot(c);
                if d.is_negative() {
                    c.neg()
                } else {
                    tied |= d.is_zero();
                    c
                }
            })
            .collect();
        let sig = Signature { side, choices, provenance: Provenance::Weights(w.clone()) };
        if tied && is_acyclic(m, &sig)?.is_none() {
            return Err(Error::NonGenericWeights { suggestion: format!("[{}]", w.lexicographic_augmentation()) });
        }
        Ok(sig)
    }

    /// An explicit choice; `choices` may list the supports in any order but
    /// must cover each exactly once.
    pub fn explicit(m: &OrientedMatroid, side: SignatureSide, choices: &[SignedSet]) -> Result<Self> {
        let list = supports(m, side);
        let mut aligned: Vec<Option<SignedSet>> = vec![None; list.len()];
        for &c in choices {
            let pos = match side {
                SignatureSide::Circuit => m.circuit_position(c.support()),
                SignatureSide::Cocircuit => m.cocircuit_position(c.support()),
            }
            .ok_or_else(|| Error::InvalidSignature(format!("{} is not a {} support", c.support(), side.name())))?;
            if c != list[pos] && c != list[pos].neg() {
                return Err(Error::InvalidSignature(format!("signs {c:?} do not form a signed {}", side.name())));
            }
            if aligned[pos].replace(c).is_some() {
                return Err(Error::InvalidSignature(format!("support {} chosen twice", c.support())));
            }
        }
        if let Some(i) = aligned.iter().position(Option::is_none) {
            return Err(Error::InvalidSignature(format!("support {} has no choice", list[i].support())));
        }
        Ok(Signature {
            side,
            choices: aligned.into_iter().map(Option::unwrap).collect(),
            provenance: Provenance::Explicit,
        })
    }

    /// `{"side": ..., "weights": [...]}` or `{"side": ..., "explicit": [{"support": [...], "signs": [...]}]}`.
    pub fn from_json(m: &OrientedMatroid, text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let side = SignatureSide::parse(
            doc.get("side").and_then(Value::as_str).ok_or_else(|| Error::Parse("missing \"side\"".into()))?,
        )?;
        if let Some(ws) = doc.get("weights") {
            let ws = ws.as_array().ok_or_else(|| Error::Parse("\"weights\" must be a list".into()))?;
            let w = WeightVector(ws.iter().map(WeightVector::parse_entry).collect::<Result<_>>()?);
            return Self::from_weights(m, &w, side);
        }
        let items = doc
            .get("explicit")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected \"weights\" or \"explicit\"".into()))?;
        let mut choices = Vec::new();
        for item in items {
            let support: Vec<usize> = serde_json::from_value(item.get("support").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("support: {e}")))?;
            let signs: Vec<i64> = serde_json::from_value(item.get("signs").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Parse(format!("signs: {e}")))?;
            if support.len() != signs.len() {
                return Err(Error::LengthMismatch { expected: support.len(), actual: signs.len() });
            }
            let mut s = SignedSet::ZERO;
            for (&e, &x) in support.iter().zip(&signs) {
                if e >= m.element_count() || s.support().contains(e) {
                    return Err(Error::InvalidSignature(format!("bad element {e} in support")));
                }
                match x {
                    1 => s.plus |= 1 << e,
                    -1 => s.minus |= 1 << e,
                    _ => return Err(Error::InvalidSignature(format!("sign {x} is not ±1"))),
                }
            }
            choices.push(s);
        }
        Self::explicit(m, side, &choices)
    }

    pub fn to_json(&self) -> Value {
        match &self.provenance {
            Provenance::Weights(w) => json!({
                "side": self.side.name(),
                "weights": w.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
            Provenance::Explicit => json!({
                "side": self.side.name(),
                "explicit": self.choices.iter().map(|c| {
                    let support = c.support().to_vec();
                    let signs: Vec<i64> = support.iter().map(|&e| c.entry(e)).collect();
                    json!({"support": support, "signs": signs})
                }).collect::<Vec<_>>(),
            }),
        }
    }

    /// The chosen vector on `support`, if it is one.
    pub fn chosen(&self, m: &OrientedMatroid, support: EdgeSet) -> Option<SignedSet> {
        let pos = match self.side {
            SignatureSide::Circuit => m.circuit_position(support),
            SignatureSide::Cocircuit => m.cocircuit_position(support),
        }?;
        self.choices.get(pos).copied()
    }

    /// Does the signature choose `v`?
    pub fn contains(&self, m: &OrientedMatroid, v: SignedSet) -> bool {
        self.chosen(m, v.support()) == Some(v)
    }

    /// The first (lowest support) vector in `o` that is not chosen.
    pub fn first_violation(&self, o: Orientation) -> Option<SignedSet> {
        self.choices.iter().map(|c| c.neg()).find(|c| c.is_in(o))
    }

    /// Every directed circuit (cocircuit) in `o` is chosen.
    pub fn is_compatible(&self, o: Orientation) -> bool {
        self.first_violation(o).is_none()
    }

    fn check_for(&self, m: &OrientedMatroid) -> Result<()> {
        let list = supports(m, self.side);
        if list.len() != self.choices.len() || list.iter().zip(&self.choices).any(|(c, d)| c.support() != d.support()) {
            return Err(Error::InvalidSignature(format!(
                "{} signature was built for a different matroid",
                self.side.name()
            )));
        }
        Ok(())
    }
}

/// A weight vector strictly positive on every chosen vector, if one exists.
///
/// A weight-induced signature returns its own weights, or their
/// lexicographic augmentation when ties were broken. Anything else is decided
/// exactly by [`acyclicity_by_elimination`].
pub fn is_acyclic(m: &OrientedMatroid, s: &Signature) -> Result<Option<WeightVector>> {
    s.check_for(m)?;
    if let Provenance::Weights(w) = &s.provenance {
        let separates = |v: &WeightVector| s.choices.iter().all(|&c| v.dot(c).is_positive());
        if separates(w) {
            return Ok(Some(w.clone()));
        }
        let lex = w.lexicographic_augmentation();
        if separates(&lex) {
            return Ok(Some(lex));
        }
    }
    acyclicity_by_elimination(m, s)
}

/// Decide `∃w: ⟨w, σ(C)⟩ ≥ 1 ∀C` by Fourier–Motzkin elimination. By scaling
/// this is the same as strict positivity.
pub fn acyclicity_by_elimination(m: &OrientedMatroid, s: &Signature) -> Result<Option<WeightVector>> {
    s.check_for(m)?;
    ensure_cap("signature supports", s.choices.len(), m.caps().signature_supports)?;
    let n = m.element_count();
    let rows = s
        .choices
        .iter()
        .enumerate()
        .map(|(i, c)| Ineq::new(c.to_entries(n).into_iter().map(BigInt::from).collect(), -Rational::one(), i))
        .collect();
    Ok(feasible_point(rows, n, m.caps().fm_constraints)?.map(WeightVector))
}

/// Both signatures are acyclic and match the matroid; returns the side-checked pair.
pub fn check_pair(m: &OrientedMatroid, sigma: &Signature, sigma_star: &Signature) -> Result<()> {
    if sigma.side != SignatureSide::Circuit || sigma_star.side != SignatureSide::Cocircuit {
        return Err(Error::InvalidSignature("expected a circuit and a cocircuit signature".into()));
    }
    for s in [sigma, sigma_star] {
        if is_acyclic(m, s)?.is_none() {
            return Err(Error::NotAcyclic);
        }
    }
    Ok(())
}

/// Default weights `2^e` on circuits and `2^(n-1-e)` on cocircuits. Both are
/// generic: distinct powers of two never cancel on a `{0,±1}` vector.
pub fn default_weights(n: usize) -> (WeightVector, WeightVector) {
    let pow = |k: usize| Rational::from_integer(BigInt::one() << k);
    (WeightVector((0..n).map(pow).collect()), WeightVector((0..n).map(|e| pow(n - 1 - e)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::Graph;

    fn om(g: &Graph) -> OrientedMatroid {
        OrientedMatroid::from_graph(g, &Caps::default()).unwrap()
    }

    fn v(entries: &[i64]) -> SignedSet {
        SignedSet::from_entries(entries).unwrap()
    }

    fn theta() -> Graph {
        Graph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn triangle_weight_signatures() {
        let m = om(&Graph::triangle());
        let s = Signature::from_weights(&m, &WeightVector::from_ints(&[1, 1, 1]), SignatureSide::Circuit).unwrap();
        assert_eq!(s.choices(), &[v(&[1, 1, 1])]);
        let s = Signature::from_weights(&m, &WeightVector::from_ints(&[1, -2, 0]), SignatureSide::Cocircuit).unwrap();
        assert_eq!(s.chosen(&m, EdgeSet::from_indices([0, 1])), Some(v(&[1, -1, 0])));
        assert_eq!(s.chosen(&m, EdgeSet::from_indices([1, 2])), Some(v(&[0, -1, 1])));
        assert_eq!(s.chosen(&m, EdgeSet::from_indices([0, 2])), Some(v(&[1, 0, -1])));
        assert!(is_acyclic(&m, &s).unwrap().is_some());
        assert!(acyclicity_by_elimination(&m, &s).unwrap().is_some());
    }

    #[test]
    fn single_edge_cocircuit_signature() {
        let m = om(&Graph::new(2, vec![(1, 0)]).unwrap());
        let s = Signature::from_weights(&m, &WeightVector::from_ints(&[1]), SignatureSide::Cocircuit).unwrap();
        assert_eq!(s.choices(), &[v(&[1])]);
    }

    #[test]
    fn explicit_single_support_is_acyclic() {
        let m = om(&Graph::triangle());
        for c in [v(&[1, 1, 1]), v(&[-1, -1, -1])] {
            let s = Signature::explicit(&m, SignatureSide::Circuit, &[c]).unwrap();
            let w = is_acyclic(&m, &s).unwrap().unwrap();
            assert!(w.dot(c).is_positive());
        }
    }

    #[test]
    fn cyclic_theta_signature_is_not_acyclic() {
        let m = om(&theta());
        let choices = [v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[-1, 0, 1])];
        let sum: Vec<i64> = (0..3).map(|e| choices.iter().map(|c| c.entry(e)).sum()).collect();
        assert_eq!(sum, vec![0, 0, 0]);
        let s = Signature::explicit(&m, SignatureSide::Circuit, &choices).unwrap();
        assert_eq!(is_acyclic(&m, &s).unwrap(), None);
    }

    #[test]
    fn ties_resolve_or_report() {
        let m = om(&theta());
        // zero weights: ties everywhere, canonical picks (1,-1,0),(1,0,-1),(0,1,-1), which is acyclic
        let s = Signature::from_weights(&m, &WeightVector::from_ints(&[0, 0, 0]), SignatureSide::Circuit).unwrap();
        assert_eq!(s.choices(), &[v(&[1, -1, 0]), v(&[1, 0, -1]), v(&[0, 1, -1])]);
        assert!(matches!(s.provenance(), Provenance::Weights(_)));
        assert!(is_acyclic(&m, &s).unwrap().is_some());
    }

    #[test]
    fn tie_breaking_agrees_with_augmented_weights() {
        // the canonical tie-break is what the augmented (generic) weight
        // induces, so weight-induced signatures are always acyclic
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 0), (2, 0)]).unwrap();
        let m = om(&g);
        for code in 0..3usize.pow(5) {
            let w: Vec<i64> = (0..5).map(|e| (code / 3usize.pow(e as u32) % 3) as i64 - 1).collect();
            let w = WeightVector::from_ints(&w);
            for side in [SignatureSide::Circuit, SignatureSide::Cocircuit] {
                let a = Signature::from_weights(&m, &w, side).unwrap();
                let b = Signature::from_weights(&m, &w.lexicographic_augmentation(), side).unwrap();
                assert_eq!(a.choices(), b.choices());
                assert!(acyclicity_by_elimination(&m, &a).unwrap().is_some());
            }
        }
    }

    #[test]
    fn augmentation_is_generic_and_matches_tie_break() {
        let m = om(&theta());
        let w = WeightVector::from_ints(&[0, 0, 0]);
        let aug = w.lexicographic_augmentation();
        let a = Signature::from_weights(&m, &w, SignatureSide::Circuit).unwrap();
        let b = Signature::from_weights(&m, &aug, SignatureSide::Circuit).unwrap();
        assert_eq!(a.choices(), b.choices());
        assert!(b.choices().iter().all(|&c| aug.dot(c).is_positive()));
    }

    #[test]
    fn compatibility_examples() {
        let m = om(&Graph::triangle());
        let s = Signature::from_weights(&m, &WeightVector::from_ints(&[1, 1, 1]), SignatureSide::Circuit).unwrap();
        assert!(s.is_compatible(Orientation::reference(3)));
        assert!(!s.is_compatible(Orientation::from_bits(0, 3)));
        // an acyclic orientation is compatible with any circuit signature
        let acyclic = Orientation::from_bools(&[true, true, false]);
        assert!(m.directed_circuits_in(acyclic).is_empty());
        for c in [v(&[1, 1, 1]), v(&[-1, -1, -1])] {
            assert!(Signature::explicit(&m, SignatureSide::Circuit, &[c]).unwrap().is_compatible(acyclic));
        }
        let m = om(&Graph::new(2, vec![(0, 1), (0, 1)]).unwrap());
        let opposite = Orientation::from_bools(&[true, false]);
        assert_eq!(m.directed_circuits_in(opposite), vec![v(&[1, -1])]);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let m = om(&Graph::triangle());
        let s = Signature::from_json(&m, r#"{"side":"cocircuit","weights":[1,"-2",0]}"#).unwrap();
        assert_eq!(s.chosen(&m, EdgeSet::from_indices([0, 1])), Some(v(&[1, -1, 0])));
        let s = Signature::from_json(&m, r#"{"side":"circuit","explicit":[{"support":[0,1,2],"signs":[-1,-1,-1]}]}"#)
            .unwrap();
        assert_eq!(s.choices(), &[v(&[-1, -1, -1])]);
        assert_eq!(Signature::from_json(&m, &s.to_json().to_string()).unwrap(), s);
        assert!(matches!(
            Signature::from_json(&m, r#"{"side":"circuit","explicit":[]}"#),
            Err(Error::InvalidSignature(_))
        ));
        assert!(matches!(
            Signature::from_json(&m, r#"{"side":"circuit","explicit":[{"support":[0,1],"signs":[1,1]}]}"#),
            Err(Error::InvalidSignature(_))
        ));
        assert!(matches!(Signature::from_json(&m, r#"{"side":"x","weights":[]}"#), Err(Error::InvalidSignature(_))));
    }

    #[test]
    fn parses_weight_strings() {
        let w: WeightVector = "1, -2/3,5".parse().unwrap();
        assert_eq!(w.0[1], Rational::new((-2).into(), 3.into()));
        assert!("1/0".parse::<WeightVector>().is_err());
        assert_eq!(w.to_string(), "1,-2/3,5");
    }

    #[test]
    fn default_weights_are_generic() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0), (0, 1), (1, 1), (2, 1)]).unwrap();
        let m = om(&g);
        let (wc, wk) = default_weights(6);
        let s = Signature::from_weights(&m, &wc, SignatureSide::Circuit).unwrap();
        let t = Signature::from_weights(&m, &wk, SignatureSide::Cocircuit).unwrap();
        assert!(s.choices().iter().all(|&c| wc.dot(c).is_positive()));
        assert!(t.choices().iter().all(|&c| wk.dot(c).is_positive()));
        check_pair(&m, &s, &t).unwrap();
    }
}
