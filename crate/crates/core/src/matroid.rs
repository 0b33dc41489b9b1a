//! Totally unimodular representations of regular matroids.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::caps::{ensure_cap, Caps};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{determinant, RatMatrix};
use crate::signed::MAX_ELEMENTS;

/// A full-row-rank totally unimodular `r × n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularMatroidRep {
    matrix: Vec<Vec<i64>>,
    rank: usize,
    element_count: usize,
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    matrix: Vec<Vec<i64>>,
}

impl RegularMatroidRep {
    /// Validate entries, full row rank and total unimodularity.
    pub fn new(matrix: Vec<Vec<i64>>, caps: &Caps) -> Result<Self> {
        let rep = Self::trusted(matrix)?;
        if !check_totally_unimodular(&rep.matrix, caps.tu_size)? {
            return Err(Error::NotTotallyUnimodular);
        }
        Ok(rep)
    }

    /// Validate entries and rank but take total unimodularity on trust.
    pub fn trusted(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let rows = matrix.len();
        if rows == 0 {
            return Err(Error::InvalidMatrix("matrix has no rows".into()));
        }
        let n = matrix[0].len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("rows have different lengths".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidMatrix(format!("at most {MAX_ELEMENTS} columns supported")));
        }
        if matrix.iter().flatten().any(|x| !(-1..=1).contains(x)) {
            return Err(Error::InvalidMatrix("entries must be 0, 1 or -1".into()));
        }
        let rank = RatMatrix::from_int_rows(&matrix).rank();
        if rank != rows {
            return Err(Error::NotFullRank { rank, rows });
        }
        Ok(RegularMatroidRep { matrix, rank, element_count: n })
    }

    pub fn from_json(text: &str, caps: &Caps) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(doc.matrix, caps)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixDoc { matrix: self.matrix.clone() }).expect("serializes")
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element_count(&self) -> usize {
        self.element_count
    }

    pub fn column(&self, e: usize) -> Vec<i64> {
        self.matrix.iter().map(|r| r[e]).collect()
    }

    /// `A · v` for an integer vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// The standard 5 × 10 totally unimodular representation of R10.
    pub fn r10() -> Self {
        let mut m = vec![vec![0i64; 10]; 5];
        for i in 0..5 {
            m[i][i] = 1;
            m[i][5 + i] = -1;
            m[i][5 + (i + 1) % 5] = 1;
            m[i][5 + (i + 4) % 5] = 1;
        }
        Self::trusted(m).expect("R10 has full rank")
    }
}

/// The incidence matrix of the reference orientation with the last vertex row
/// removed: `+1` where the vertex is the head of a non-loop arc, `-1` where it
/// is the tail.
pub fn graph_to_rep(g: &Graph) -> Result<RegularMatroidRep> {
    if g.vertex_count() == 1 {
        return Err(Error::TrivialGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = g.vertex_count() - 1;
    let mut m = vec![vec![0i64; g.edge_count()]; r];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        if t == h {
            continue;
        }
        if h < r {
            m[h][e] = 1;
        }
        if t < r {
            m[t][e] = -1;
        }
    }
    // incidence matrices of digraphs are totally unimodular
    RegularMatroidRep::trusted(m)
}

/// Do all square minors lie in `{0, ±1}`? Exhaustive, with exact determinants.
pub fn check_totally_unimodular(m: &[Vec<i64>], cap: usize) -> Result<bool> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().flatten().any(|x| !(-1..=1).contains(x)) {
        return Ok(false);
    }
    let k_max = rows.min(cols);
    ensure_cap("TU check size min(rows, cols)", k_max, cap)?;
    for k in 2..=k_max {
        for rs in Combinations::new(rows, k) {
            for cs in Combinations::new(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                if determinant(&sub).abs() > One::one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, cur: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.cur.take()?;
        let k = cur.len();
        let mut nxt = cur.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if nxt[i] < self.n - k + i {
                nxt[i] += 1;
                for j in i + 1..k {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.cur = Some(nxt);
                break;
            }
        }
        Some(cur)
    }
}
