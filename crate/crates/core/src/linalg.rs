//! Exact linear algebra over the rationals and the integers.
//!
//! Nothing here touches floating point. Dense row-major matrices of
//! [`BigRational`] with reduced row echelon form, kernels, solves and an
//! integer Bareiss determinant for minor checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|row| row.iter().map(|&x| rat(x))).collect();
        RatMatrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given integer vectors (all of length `rows`).
    pub fn from_int_columns(rows: usize, cols: &[&[i64]]) -> Self {
        let mut m = RatMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = rat(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = RatMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let x = &self[(r, j)] * &inv;
                self[(r, j)] = x;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let x = &f * &self[(r, j)];
                        self[(i, j)] -= x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Scale a nonzero rational vector to the primitive integer vector on the same
/// ray (entries coprime, direction preserved).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Narrow a primitive integer vector to `{0,±1}` entries, if it is one.
pub fn to_unit_entries(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| match x.to_i64() {
            Some(y @ -1..=1) => Some(y),
            _ => None,
        })
        .collect()
}

/// Exact determinant by fraction-free Bareiss elimination.
///
/// Runs in `i128` with checked arithmetic and restarts in [`BigInt`] on
/// overflow, so the result is always exact.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let small: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_i128(small) {
        Some(d) => BigInt::from(d),
        None => {
            let big = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_big(big)
        }
    }
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Is `x` an integer? Returns it if so.
pub fn as_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_unit_or_zero(x: &BigInt) -> bool {
    x.abs() <= BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_of_triangle_incidence() {
        let d = RatMatrix::from_int_rows(&[vec![1, -1, 0], vec![0, 1, -1]]);
        assert_eq!(d.rank(), 2);
        let k = d.kernel_basis();
        assert_eq!(k.len(), 1);
        let p = primitive_integer(&k[0]);
        assert_eq!(to_unit_entries(&p).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[vec![1, 1], vec![-1, 1]]), BigInt::from(2));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]), BigInt::zero());
        assert_eq!(determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), BigInt::from(6));
    }

    #[test]
    fn determinant_overflow_falls_back_to_bigint() {
        let big = 1i64 << 62;
        let m = vec![vec![big, 1], vec![1, big]];
        let expected = BigInt::from(big) * BigInt::from(big) - BigInt::one();
        assert_eq!(determinant(&m), expected);
    }

    #[test]
    fn solve_and_inverse() {
        let a = RatMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]);
        let x = a.solve(&[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::from_int_rows(&[vec![1, 0], vec![0, 1]]));
        let singular = RatMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[rat(1), rat(0)]).is_none());
    }
}
