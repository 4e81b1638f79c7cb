//! Dense exact matrices over the integers and rationals.
//!
//! Everything here is unbounded-precision; there is no floating point
//! anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IMat {
    nrows: usize,
    ncols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IMat { nrows, ncols, data: vec![BigInt::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows > 0 { rows[0].len() } else { 0 };
        let mut m = Self::zero(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = if nrows > 0 { rows[0].len() } else { 0 };
        let mut m = Self::zero(nrows, ncols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, x) in r.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.nrows {
            for j in 0..i {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut m = IMat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.ncols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<BigInt>]) -> IMat {
        let mut m = IMat::zero(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for i in 0..nrows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn to_rational(&self) -> QMat {
        let mut m = QMat::zero(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m[(i, j)] = BigRational::from_integer(self[(i, j)].clone());
            }
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    /// Smith normal form with accumulated unimodular transforms:
    /// `u * self * v = d` with `d` diagonal, each entry dividing the next.
    pub fn snf(&self) -> Snf {
        let mut d = self.clone();
        let m = self.nrows;
        let n = self.ncols;
        let mut u = IMat::identity(m);
        let mut uinv = IMat::identity(m);
        let mut v = IMat::identity(n);
        let mut vinv = IMat::identity(n);

        let swap_rows = |d: &mut IMat, u: &mut IMat, uinv: &mut IMat, i: usize, j: usize| {
            for c in 0..d.ncols {
                d.data.swap(i * d.ncols + c, j * d.ncols + c);
            }
            for c in 0..u.ncols {
                u.data.swap(i * u.ncols + c, j * u.ncols + c);
            }
            // uinv picks up the inverse op on the right: swap columns i, j
            for r in 0..uinv.nrows {
                uinv.data.swap(r * uinv.ncols + i, r * uinv.ncols + j);
            }
        };
        let swap_cols = |d: &mut IMat, v: &mut IMat, vinv: &mut IMat, i: usize, j: usize| {
            for r in 0..d.nrows {
                d.data.swap(r * d.ncols + i, r * d.ncols + j);
            }
            for r in 0..v.nrows {
                v.data.swap(r * v.ncols + i, r * v.ncols + j);
            }
            for c in 0..vinv.ncols {
                vinv.data.swap(i * vinv.ncols + c, j * vinv.ncols + c);
            }
        };
        // row[i] += q * row[j]
        let add_row = |d: &mut IMat, u: &mut IMat, uinv: &mut IMat, i: usize, j: usize, q: &BigInt| {
            for c in 0..d.ncols {
                let t = q * &d[(j, c)];
                d[(i, c)] += t;
            }
            for c in 0..u.ncols {
                let t = q * &u[(j, c)];
                u[(i, c)] += t;
            }
            // inverse: col[j] -= q * col[i]
            for r in 0..uinv.nrows {
                let t = q * &uinv[(r, i)];
                uinv[(r, j)] -= t;
            }
        };
        let add_col = |d: &mut IMat, v: &mut IMat, vinv: &mut IMat, i: usize, j: usize, q: &BigInt| {
            for r in 0..d.nrows {
                let t = q * &d[(r, j)];
                d[(r, i)] += t;
            }
            for r in 0..v.nrows {
                let t = q * &v[(r, j)];
                v[(r, i)] += t;
            }
            // inverse: row[j] -= q * row[i]
            for c in 0..vinv.ncols {
                let t = q * &vinv[(i, c)];
                vinv[(j, c)] -= t;
            }
        };
        let negate_row = |d: &mut IMat, u: &mut IMat, uinv: &mut IMat, i: usize| {
            for c in 0..d.ncols {
                let t = -d[(i, c)].clone();
                d[(i, c)] = t;
            }
            for c in 0..u.ncols {
                let t = -u[(i, c)].clone();
                u[(i, c)] = t;
            }
            for r in 0..uinv.nrows {
                let t = -uinv[(r, i)].clone();
                uinv[(r, i)] = t;
            }
        };

        let rank_bound = m.min(n);
        let mut t = 0;
        while t < rank_bound {
            // minimal-absolute-value pivot in the trailing submatrix
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !d[(i, j)].is_zero() {
                        let better = match pivot {
                            None => true,
                            Some((pi, pj)) => d[(i, j)].abs() < d[(pi, pj)].abs(),
                        };
                        if better {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != t {
                swap_rows(&mut d, &mut u, &mut uinv, t, pi);
            }
            if pj != t {
                swap_cols(&mut d, &mut v, &mut vinv, t, pj);
            }
            // clear row and column t
            let mut clean = true;
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = -(&d[(i, t)] / &d[(t, t)]);
                    if !q.is_zero() {
                        add_row(&mut d, &mut u, &mut uinv, i, t, &q);
                    }
                    if !d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = -(&d[(t, j)] / &d[(t, t)]);
                    if !q.is_zero() {
                        add_col(&mut d, &mut v, &mut vinv, j, t, &q);
                    }
                    if !d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue; // smaller remainders exist; repick pivot
            }
            // enforce the divisibility chain
            let mut fixed = true;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        add_row(&mut d, &mut u, &mut uinv, t, i, &one);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                continue;
            }
            if d[(t, t)].is_negative() {
                negate_row(&mut d, &mut u, &mut uinv, t);
            }
            t += 1;
        }
        Snf { d, u, uinv, v, vinv }
    }

    /// Basis (as columns) of the integer kernel `{x : self * x = 0}`.
    /// The result is a saturated sublattice of Z^ncols.
    pub fn kernel(&self) -> IMat {
        let snf = self.snf();
        let mut cols = Vec::new();
        for j in 0..self.ncols {
            let zero_diag = j >= self.nrows || snf.d[(j, j)].is_zero();
            if zero_diag {
                cols.push(snf.v.column(j));
            }
        }
        IMat::from_columns(self.ncols, &cols)
    }

    /// Basis (as columns) of the lattice spanned by the columns of `self`.
    pub fn column_lattice_basis(&self) -> IMat {
        let snf = self.snf();
        let mut cols = Vec::new();
        for j in 0..self.nrows.min(self.ncols) {
            if snf.d[(j, j)].is_zero() {
                break;
            }
            let c = snf.uinv.column(j);
            cols.push(c.iter().map(|x| x * &snf.d[(j, j)]).collect());
        }
        IMat::from_columns(self.nrows, &cols)
    }

    pub fn rank(&self) -> usize {
        let snf = self.snf();
        (0..self.nrows.min(self.ncols)).take_while(|&j| !snf.d[(j, j)].is_zero()).count()
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.ncols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation: `u * a * v = d`.
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub uinv: IMat,
    pub v: IMat,
    pub vinv: IMat,
}

impl Snf {
    /// Nontrivial invariant factors (diagonal entries > 1).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    nrows: usize,
    ncols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        QMat { nrows, ncols, data: vec![BigRational::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn from_columns(nrows: usize, cols: &[Vec<BigRational>]) -> QMat {
        let mut m = QMat::zero(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for i in 0..nrows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.nrows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut m = QMat::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    m[(i, j)] += prod;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.ncols, v.len());
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert!(self.nrows == self.ncols);
        let n = self.nrows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let t = a[(col, j)].clone();
                    a[(col, j)] = a[(pivot, j)].clone();
                    a[(pivot, j)] = t;
                    let t = inv[(col, j)].clone();
                    inv[(col, j)] = inv[(pivot, j)].clone();
                    inv[(pivot, j)] = t;
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i != col && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..n {
                        let t = &f * &a[(col, j)];
                        a[(i, j)] -= t;
                        let t = &f * &inv[(col, j)];
                        inv[(i, j)] -= t;
                    }
                }
            }
        }
        Some(inv)
    }

    /// Solve self * x = b exactly (any shape); `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.nrows);
        let m = self.nrows;
        let n = self.ncols;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let piv = (row..m).find(|&i| !a[(i, col)].is_zero());
            let Some(piv) = piv else { continue };
            if piv != row {
                for j in 0..n {
                    let t = a[(row, j)].clone();
                    a[(row, j)] = a[(piv, j)].clone();
                    a[(piv, j)] = t;
                }
                rhs.swap(row, piv);
            }
            let p = a[(row, col)].clone();
            for j in 0..n {
                a[(row, j)] = &a[(row, j)] / &p;
            }
            rhs[row] = &rhs[row] / &p;
            for i in 0..m {
                if i != row && !a[(i, col)].is_zero() {
                    let f = a[(i, col)].clone();
                    for j in 0..n {
                        let t = &f * &a[(row, j)];
                        a[(i, j)] -= t;
                    }
                    let t = &f * &rhs[row];
                    rhs[i] -= t;
                }
            }
            pivot_cols.push((row, col));
            row += 1;
            if row == m {
                break;
            }
        }
        for i in row..m {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); n];
        for (r, c) in pivot_cols {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IMat> {
        if !self.is_integral() {
            return None;
        }
        let mut m = IMat::zero(self.nrows, self.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                m[(i, j)] = self[(i, j)].to_integer();
            }
        }
        Some(m)
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.ncols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.ncols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IMat) {
        let s = a.snf();
        let lhs = s.u.mul(a).mul(&s.v);
        assert_eq!(lhs, s.d);
        assert_eq!(s.u.mul(&s.uinv), IMat::identity(a.nrows()));
        assert_eq!(s.v.mul(&s.vinv), IMat::identity(a.ncols()));
        // divisibility chain
        let n = a.nrows().min(a.ncols());
        for i in 1..n {
            if !s.d[(i, i)].is_zero() {
                assert!(!s.d[(i - 1, i - 1)].is_zero());
                assert!((&s.d[(i, i)] % &s.d[(i - 1, i - 1)]).is_zero());
            }
        }
    }

    #[test]
    fn snf_small() {
        check_snf(&IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]));
        check_snf(&IMat::from_rows(&[vec![0, 1], vec![1, 0]]));
        check_snf(&IMat::from_rows(&[vec![2, 0], vec![0, 2], vec![1, 1]]));
        check_snf(&IMat::from_rows(&[vec![0, 0], vec![0, 0]]));
    }

    #[test]
    fn snf_known_invariants() {
        let a = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = a.snf();
        let diag: Vec<i64> = (0..3).map(|i| i64::try_from(&s.d[(i, i)]).unwrap()).collect();
        assert_eq!(diag, vec![2, 2, 156]);
    }

    #[test]
    fn det_bareiss() {
        let a = IMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.det(), BigInt::from(-1));
        let b = IMat::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(b.det(), BigInt::from(3));
        let c = IMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(c.det(), BigInt::zero());
    }

    #[test]
    fn kernel_basic() {
        let a = IMat::from_rows(&[vec![1, 2, 3]]);
        let k = a.kernel();
        assert_eq!(k.ncols(), 2);
        for j in 0..2 {
            let col = k.column(j);
            let prod: BigInt = (0..3).map(|i| &a[(0, i)] * &col[i]).sum();
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn column_lattice() {
        // columns (2,0) and (1,1) span index-2 sublattice of Z^2
        let a = IMat::from_rows(&[vec![2, 1], vec![0, 1]]);
        let b = a.column_lattice_basis();
        assert_eq!(b.ncols(), 2);
        assert_eq!(b.det().abs(), BigInt::from(2));
    }

    #[test]
    fn qmat_inverse() {
        let a = IMat::from_rows(&[vec![2, 1], vec![1, 1]]).to_rational();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
    }
}
