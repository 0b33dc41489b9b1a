//! Brute-force ground truth that never consults signatures: Tutte
//! evaluations, subgraph classification, bijection audits and reversal
//! closures.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Display;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::bijection::BijectionTable;
use crate::caps::{ensure_cap, Caps};
use crate::error::Result;
use crate::geometry::verify_cube_decomposition;
use crate::graph::{Graph, UnionFind};
use crate::oriented::OrientedMatroid;
use crate::reversal::ReversalKind;
use crate::signed::{reverse, EdgeSet, Orientation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TutteEvaluation {
    pub x: i64,
    pub y: i64,
    pub value: BigInt,
}

type EdgeList = Vec<(u8, u8)>;

struct Tutte {
    x: BigInt,
    y: BigInt,
    memo: HashMap<EdgeList, BigInt>,
}

impl Tutte {
    fn eval(&mut self, edges: EdgeList) -> BigInt {
        let loops = edges.iter().filter(|(a, b)| a == b).count();
        let rest: EdgeList = edges.into_iter().filter(|(a, b)| a != b).collect();
        let factor = num_traits::pow(self.y.clone(), loops);
        if rest.is_empty() {
            return factor;
        }
        let key = canonical(&rest);
        if let Some(v) = self.memo.get(&key) {
            return factor * v;
        }
        let (u, v) = key[0];
        let others = &key[1..];
        let contracted: EdgeList =
            others.iter().map(|&(a, b)| (if a == v { u } else { a }, if b == v { u } else { b })).collect();
        let vertices = key.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) as usize + 1;
        let mut uf = UnionFind::new(vertices);
        for &(a, b) in others {
            uf.union(a as usize, b as usize);
        }
        let value = if uf.find(u as usize) == uf.find(v as usize) {
            self.eval(others.to_vec()) + self.eval(contracted)
        } else {
            let c = self.eval(contracted);
            c * &self.x
        };
        self.memo.insert(key, value.clone());
        factor * value
    }
}

/// Relabel non-isolated vertices by (degree, sorted neighbour degrees) and
/// sort the normalized edges. The result is a graph isomorphic to the input.
fn canonical(edges: &[(u8, u8)]) -> EdgeList {
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().map_or(0, |m| m as usize + 1);
    let mut deg = vec![0usize; n];
    for &(a, b) in edges {
        deg[a as usize] += 1;
        deg[b as usize] += 1;
    }
    let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
        .map(|v| {
            let mut nb: Vec<usize> = edges
                .iter()
                .filter_map(|&(a, b)| match (a as usize == v, b as usize == v) {
                    (true, _) => Some(deg[b as usize]),
                    (_, true) => Some(deg[a as usize]),
                    _ => None,
                })
                .collect();
            nb.sort_unstable();
            (deg[v], nb, v)
        })
        .collect();
    sig.sort_by(|p, q| q.0.cmp(&p.0).then_with(|| q.1.cmp(&p.1)).then(p.2.cmp(&q.2)));
    let mut label = vec![0u8; n];
    for (i, (_, _, v)) in sig.iter().enumerate() {
        label[*v] = i as u8;
    }
    let mut out: EdgeList = edges
        .iter()
        .map(|&(a, b)| {
            let (a, b) = (label[a as usize], label[b as usize]);
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

/// `T_G(x, y)` by deletion–contraction with loop and bridge base cases.
pub fn tutte(g: &Graph, x: i64, y: i64, caps: &Caps) -> Result<BigInt> {
    ensure_cap("edges for the Tutte oracle", g.edge_count(), caps.tutte_edges)?;
    let edges = g.edges().iter().map(|&(a, b)| (a as u8, b as u8)).collect();
    let mut t = Tutte { x: x.into(), y: y.into(), memo: HashMap::new() };
    Ok(t.eval(edges))
}

/// `T(1,1)`, `T(2,1)`, `T(1,2)`, `T(2,2)`.
pub fn table_one_evaluations(g: &Graph, caps: &Caps) -> Result<[TutteEvaluation; 4]> {
    let at = |x, y| Ok(TutteEvaluation { x, y, value: tutte(g, x, y, caps)? });
    Ok([at(1, 1)?, at(2, 1)?, at(1, 2)?, at(2, 2)?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsetClass {
    /// Acyclic and connected spanning.
    Tree,
    Forest,
    ConnectedSpanning,
    Neither,
}

impl SubsetClass {
    pub fn is_forest(self) -> bool {
        matches!(self, SubsetClass::Tree | SubsetClass::Forest)
    }

    pub fn is_connected_spanning(self) -> bool {
        matches!(self, SubsetClass::Tree | SubsetClass::ConnectedSpanning)
    }
}

pub fn classify_subset(g: &Graph, s: EdgeSet) -> SubsetClass {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut acyclic = true;
    for e in s.iter() {
        let (a, b) = g.edge(e);
        acyclic &= uf.union(a, b);
    }
    match (acyclic, uf.count() == 1) {
        (true, true) => SubsetClass::Tree,
        (true, false) => SubsetClass::Forest,
        (false, true) => SubsetClass::ConnectedSpanning,
        (false, false) => SubsetClass::Neither,
    }
}

/// Basis, independent-set, spanning-set and subset counts by enumeration;
/// the matroid stand-ins for `T(1,1)`, `T(2,1)`, `T(1,2)`, `T(2,2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetCounts {
    pub bases: u64,
    pub independent: u64,
    pub spanning: u64,
    pub subsets: u64,
}

impl SubsetCounts {
    pub fn of_matroid(m: &OrientedMatroid) -> Self {
        let mut c = SubsetCounts { bases: 0, independent: 0, spanning: 0, subsets: 0 };
        for s in m.ground_set().subsets() {
            let (i, sp) = (m.is_independent(s), m.is_spanning(s));
            c.bases += (i && sp) as u64;
            c.independent += i as u64;
            c.spanning += sp as u64;
            c.subsets += 1;
        }
        c
    }

    pub fn of_graph(g: &Graph) -> Self {
        let mut c = SubsetCounts { bases: 0, independent: 0, spanning: 0, subsets: 0 };
        for s in g.all_edges().subsets() {
            let k = classify_subset(g, s);
            c.bases += (k == SubsetClass::Tree) as u64;
            c.independent += k.is_forest() as u64;
            c.spanning += k.is_connected_spanning() as u64;
            c.subsets += 1;
        }
        c
    }

    pub fn from_tutte(t: &[TutteEvaluation; 4]) -> Self {
        let v = |i: usize| u64::try_from(&t[i].value).expect("count fits in u64");
        SubsetCounts { bases: v(0), independent: v(1), spanning: v(2), subsets: v(3) }
    }

    /// Counts of `Basis`, forest-side, spanning-side and all rows of a table.
    pub fn of_table(table: &BijectionTable) -> Self {
        let mut c = SubsetCounts { bases: 0, independent: 0, spanning: 0, subsets: 0 };
        for o in Orientation::all(table.element_count()) {
            let k = table.specialization(o);
            c.bases += k.is_forest() as u64 & k.is_spanning() as u64;
            c.independent += k.is_forest() as u64;
            c.spanning += k.is_spanning() as u64;
            c.subsets += 1;
        }
        c
    }

    pub fn to_json(&self) -> Value {
        json!({"bases": self.bases, "independent": self.independent, "spanning": self.spanning, "subsets": self.subsets})
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub domain_size: usize,
    pub codomain_size: usize,
    /// Two domain elements with a common image, and that image.
    pub collision: Option<(String, String, String)>,
    /// A domain element whose image lies outside the codomain.
    pub outside: Option<(String, String)>,
    /// A codomain element with no preimage.
    pub missing: Option<String>,
    pub passed: bool,
}

impl AuditReport {
    pub fn to_json(&self) -> Value {
        json!({
            "domain_size": self.domain_size,
            "codomain_size": self.codomain_size,
            "collision": self.collision.as_ref().map(|(a, b, c)| [a, b, c]),
            "outside": self.outside.as_ref().map(|(a, b)| [a, b]),
            "missing": self.missing,
            "passed": self.passed,
        })
    }
}

/// Checks that `f` maps `domain` injectively onto `codomain`.
pub fn audit_bijection<D, C, F>(domain: &[D], f: F, codomain: &[C]) -> AuditReport
where
    D: Display,
    C: Display + Ord,
    F: Fn(&D) -> C,
{
    let mut seen: BTreeMap<C, &D> = BTreeMap::new();
    let targets: BTreeMap<&C, ()> = codomain.iter().map(|c| (c, ())).collect();
    let mut r = AuditReport { domain_size: domain.len(), codomain_size: codomain.len(), ..Default::default() };
    for d in domain {
        let c = f(d);
        if r.outside.is_none() && !targets.contains_key(&c) {
            r.outside = Some((d.to_string(), c.to_string()));
        }
        if let Some(prev) = seen.get(&c) {
            if r.collision.is_none() {
                r.collision = Some((prev.to_string(), d.to_string(), c.to_string()));
            }
        } else {
            seen.insert(c, d);
        }
    }
    r.missing = codomain.iter().find(|c| !seen.contains_key(*c)).map(ToString::to_string);
    r.passed = r.collision.is_none() && r.outside.is_none() && r.missing.is_none();
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableAudit {
    pub bijection: AuditReport,
    pub separation_violation: Option<(Orientation, Orientation)>,
    pub passed: bool,
}

/// `φ` over all orientations onto all subsets, plus the pairwise separation
/// condition.
pub fn audit_table(table: &BijectionTable) -> Result<TableAudit> {
    let n = table.element_count();
    let domain: Vec<Orientation> = Orientation::all(n).collect();
    let codomain: Vec<EdgeSet> = EdgeSet::full(n).subsets().collect();
    let bijection = audit_bijection(&domain, |&o| table.phi(o), &codomain);
    let separation_violation = verify_cube_decomposition(table.forward(), n, 0, 0)?.separation_violation;
    let passed = bijection.passed && separation_violation.is_none();
    Ok(TableAudit { bijection, separation_violation, passed })
}

/// Orbits under reversing one directed circuit or cocircuit at a time,
/// members sorted and classes ordered by smallest member.
pub fn reversal_closure_classes(m: &OrientedMatroid, kind: ReversalKind) -> Result<Vec<Vec<Orientation>>> {
    let n = m.element_count();
    ensure_cap("elements for the reversal closure", n, m.caps().circuit_elements)?;
    let mut class_of = vec![usize::MAX; 1 << n];
    let mut classes = Vec::new();
    for start in Orientation::all(n) {
        if class_of[start.bits() as usize] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class_of[start.bits() as usize] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(o) = queue.pop_front() {
            let mut moves = Vec::new();
            if kind != ReversalKind::Cocycle {
                moves.extend(m.directed_circuits_in(o));
            }
            if kind != ReversalKind::Cycle {
                moves.extend(m.directed_cocircuits_in(o));
            }
            for v in moves {
                let next = reverse(o, v)?;
                if class_of[next.bits() as usize] == usize::MAX {
                    class_of[next.bits() as usize] = id;
                    members.push(next);
                    queue.push_back(next);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    Ok(classes)
}

/// `T(x, y)` summed over subsets by rank: `Σ_S (x−1)^{r−r(S)} (y−1)^{|S|−r(S)}`.
/// Only used to cross-check the deletion–contraction recursion.
pub fn tutte_by_rank_expansion(m: &OrientedMatroid, x: i64, y: i64) -> BigInt {
    let r = m.rank();
    let (x1, y1) = (BigInt::from(x - 1), BigInt::from(y - 1));
    m.ground_set()
        .subsets()
        .map(|s| {
            let rs = m.rank_of(s);
            num_traits::pow(x1.clone(), r - rs) * num_traits::pow(y1.clone(), s.len() - rs)
        })
        .fold(BigInt::zero(), |a, b| a + b)
}
