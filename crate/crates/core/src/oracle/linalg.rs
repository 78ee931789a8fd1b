//! Dense exact matrices over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        QMat {
            rows: r,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = QMat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Q) {
        let cell = &mut self.data[i * self.cols + j];
        *cell += x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pr = m.get(r, j);
                    if pr.is_zero() {
                        continue;
                    }
                    let x = m.get(i, j) - &f * pr;
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if let Some(r) = integer_rank(self) {
            return r;
        }
        self.rref().1.len()
    }

    /// A basis of the null space, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = b` for a matrix `x`, assuming a solution exists and
    /// `self` has full column rank.
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, b.rows);
        let n = self.cols;
        let mut aug = QMat::zeros(self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, n + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) || pivots.len() < n {
            return None;
        }
        let mut x = QMat::zeros(n, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, n + j).clone());
            }
        }
        Some(x)
    }
}

/// Rank of a set of vectors of equal length.
pub fn span_rank(len: usize, vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    QMat::from_rows(vectors.to_vec(), len).rank()
}

/// Fraction-free Bareiss elimination over `i128`; `None` on overflow or when
/// a row cannot be scaled into machine integers.
fn integer_rank(m: &QMat) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut l = BigInt::one();
        for j in 0..m.cols {
            let d = m.get(i, j).denom();
            if !d.is_one() {
                l = l.lcm(d);
            }
        }
        let mut row = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            let x = m.get(i, j);
            let v = x.numer() * (&l / x.denom());
            if v.abs() > BigInt::from(1_i64 << 40) {
                return None;
            }
            row.push(v.to_i128()?);
        }
        a.push(row);
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let piv = a[rank][c];
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below {
            let f = row[c];
            for j in c + 1..cols {
                let x = row[j].checked_mul(piv)?;
                let y = f.checked_mul(pivot_row[j])?;
                let v = x.checked_sub(y)?;
                row[j] = v / prev;
            }
            row[c] = 0;
        }
        prev = piv;
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = QMat::from_rows(
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(0), q(1), q(1)],
            ],
            3,
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().1.len(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn fractional_rank_matches_rref() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let m = QMat::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), q(2)]], 2);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_identity() {
        let a = QMat::from_rows(
            vec![vec![q(1), q(0)], vec![q(1), q(1)], vec![q(0), q(1)]],
            2,
        );
        let x = QMat::from_rows(vec![vec![q(3)], vec![q(-2)]], 1);
        let b = a.mul(&x);
        assert_eq!(a.solve(&b).unwrap(), x);
    }

    #[test]
    fn bareiss_agrees_with_rref() {
        for seed in 0..50u64 {
            let mut s = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let mut next = || {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                ((s >> 33) % 5) as i64 - 2
            };
            let rows: Vec<Vec<Q>> = (0..5)
                .map(|_| (0..6).map(|_| q(next())).collect())
                .collect();
            let m = QMat::from_rows(rows, 6);
            assert_eq!(integer_rank(&m).unwrap(), m.rref().1.len());
        }
    }
}
