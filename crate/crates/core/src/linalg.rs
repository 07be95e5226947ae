//! Dense exact matrices over ℚ: products, fraction-free elimination,
//! determinants, kernels and inverses.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Q;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, t: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = t.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m.data[i * c + j] = v.clone();
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

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, t: &Q) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * t).collect() }
    }

    /// Product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for (o, b) in orow.iter_mut().zip(other.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| primitive_integer(self.row(r))).collect()
    }

    /// Determinant by Bareiss elimination on integer-scaled rows.
    pub fn det(&self) -> Q {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Q::one();
        }
        // Track the row scalings used to clear denominators.
        let mut scale = Q::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row = self.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= Q::from_integer(l.clone());
            a.push(row.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect());
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return Q::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Q::from_integer(sign * &a[n - 1][n - 1]) / scale
    }

    /// Fraction-free row echelon form with primitive rows; returns the
    /// reduced rows and the pivot columns.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut a = self.integer_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let piv = &top[r];
            for row in rest.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let g = piv[c].gcd(&row[c]);
                let f1 = &piv[c] / &g;
                let f2 = &row[c] / &g;
                for j in c..self.cols {
                    row[j] = &row[j] * &f1 - &piv[j] * &f2;
                }
                make_primitive(row);
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (rows, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (row, &pc) in rows.iter().zip(&pivots).rev() {
                let mut s = Q::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s += Q::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -s / Q::from_integer(row[pc].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse by Gauss–Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Q>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut inv: Vec<Vec<Q>> =
            (0..n).map(|r| (0..n).map(|c| if r == c { Q::one() } else { Q::zero() }).collect()).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let pinv = a[c][c].recip();
            for j in 0..n {
                a[c][j] *= &pinv;
                inv[c][j] *= &pinv;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..n {
                    if !a[c][j].is_zero() {
                        let t = &f * &a[c][j];
                        a[r][j] -= t;
                    }
                    if !inv[c][j].is_zero() {
                        let t = &f * &inv[c][j];
                        inv[r][j] -= t;
                    }
                }
            }
        }
        Some(Self::from_rows(inv))
    }

    /// Some solution of Mx = b, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (rows, pivots) = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &pc) in rows.iter().zip(&pivots).rev() {
            let mut s = Q::from_integer(row[self.cols].clone());
            for j in pc + 1..self.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s -= Q::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[pc] = s / Q::from_integer(row[pc].clone());
        }
        Some(x)
    }
}

fn primitive_integer(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = row.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    make_primitive(&mut v);
    v
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
}

/// Reduced row echelon basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let (rows, pivots) = m.echelon();
    // Back-substitute to reach the reduced form with unit pivots.
    let mut out: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|c| Q::from_integer(c.clone())).collect()).collect();
    for i in (0..out.len()).rev() {
        let p = pivots[i];
        let inv = out[i][p].recip();
        for c in out[i].iter_mut() {
            *c *= &inv;
        }
        for k in 0..i {
            if out[k][p].is_zero() {
                continue;
            }
            let f = out[k][p].clone();
            let (head, tail) = out.split_at_mut(i);
            for (a, b) in head[k].iter_mut().zip(&tail[0]) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| Q::from_integer(c.into())).collect()).collect())
    }

    /// Laplace expansion, an independent determinant.
    fn laplace(a: &Matrix) -> Q {
        let n = a.rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut s = Q::zero();
        for j in 0..n {
            let minor = Matrix::from_rows(
                (1..n).map(|r| (0..n).filter(|&c| c != j).map(|c| a.get(r, c).clone()).collect()).collect(),
            );
            let t = a.get(0, j) * laplace(&minor);
            if j % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
        }
        s
    }

    #[test]
    fn det_matches_laplace() {
        let a = m(&[&[2, -1, 0, 3], &[1, 4, -2, 0], &[0, 0, 5, 1], &[-3, 2, 1, 1]]);
        assert_eq!(a.det(), laplace(&a));
        let h = Matrix::from_rows(vec![
            vec![Q::new(1.into(), 2.into()), Q::new(1.into(), 3.into())],
            vec![Q::new(1.into(), 3.into()), Q::new(1.into(), 4.into())],
        ]);
        assert_eq!(h.det(), laplace(&h));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), Q::from_integer((-1).into()));
        assert!(m(&[&[1, 2], &[2, 4]]).det().is_zero());
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1, 0], &[0, 1, -1], &[1, 0, 3]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        let b: Vec<Q> = [1, 2, 3].iter().map(|&c| Q::from_integer(c.into())).collect();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[Q::one(), Q::zero()]).is_none());
    }

    #[test]
    fn span_basis_is_reduced() {
        let v = m(&[&[1, 2, 3], &[2, 4, 7], &[3, 6, 10]]);
        let b = span_basis(&(0..3).map(|r| v.row(r).to_vec()).collect::<Vec<_>>());
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], vec![Q::one(), Q::from_integer(2.into()), Q::zero()]);
    }
}
