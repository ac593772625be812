use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::{Field, Ring};
use crate::{Error, Result};

/// A dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    /// The principal submatrix on the given row/column indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(ring.zero(), |acc, l| {
                ring.add(&acc, &ring.mul(self.get(i, l), other.get(l, j)))
            })
        }))
    }
}

/// Determinant over a field by Gaussian elimination. The 0x0 determinant is 1.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !field.is_zero(&a[r * n + c])) else {
            return Ok(field.zero());
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = field.neg(&det);
        }
        let pivot = a[c * n + c].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).expect("non-zero pivot");
        for r in c + 1..n {
            if field.is_zero(&a[r * n + c]) {
                continue;
            }
            let factor = field.mul(&a[r * n + c], &inv);
            for j in c + 1..n {
                let t = field.mul(&factor, &a[c * n + j]);
                a[r * n + j] = field.sub(&a[r * n + j], &t);
            }
        }
    }
    Ok(det)
}

/// Exact integer determinant by fraction-free Bareiss elimination, in
/// 128-bit arithmetic with an arbitrary-precision fallback on overflow.
pub fn determinant_exact_int(m: &Matrix<i64>) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", m.rows, m.cols)));
    }
    match bareiss_i128(m) {
        Some(d) => Ok(BigInt::from(d)),
        None => Ok(bareiss_big(m)),
    }
}

fn bareiss_i128(m: &Matrix<i64>) -> Option<i128> {
    let n = m.rows;
    let mut a: Vec<i128> = m.data.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(a[i * n + k].checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    if n == 0 {
        return Some(1);
    }
    Some(sign * a[n * n - 1])
}

fn bareiss_big(m: &Matrix<i64>) -> BigInt {
    let n = m.rows;
    let mut a: Vec<BigInt> = m.data.iter().map(|&x| BigInt::from(x)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = pivot;
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * a[n * n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gf2k, Integers, Zp};
    use rand::Rng;

    fn cofactor<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
        let n = m.rows();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = ring.mul(m.get(0, j), &cofactor(ring, &minor));
            acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }

    #[test]
    fn examples() {
        let z5 = Zp::new(5).unwrap();
        let id = Matrix::from_fn(3, 3, |i, j| u64::from(i == j));
        assert_eq!(determinant(&z5, &id).unwrap(), 1);
        let f = Gf2k::new(3).unwrap();
        let swap = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(determinant(&f, &swap).unwrap(), 1);
        let lap = Matrix::from_rows(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(determinant_exact_int(&lap).unwrap(), BigInt::from(3));
        let empty: Matrix<i64> = Matrix::from_rows(vec![]).unwrap();
        assert_eq!(determinant_exact_int(&empty).unwrap(), BigInt::one());
        assert_eq!(determinant(&z5, &Matrix::filled(0, 0, 0u64)).unwrap(), 1);
        assert!(determinant(&z5, &Matrix::filled(2, 3, 0u64)).is_err());
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let mut rng = crate::Seed(11).rng();
        let z7 = Zp::new(7).unwrap();
        let gf = Gf2k::new(5).unwrap();
        for _ in 0..200 {
            let n = rng.random_range(0..=5);
            let m = Matrix::from_fn(n, n, |_, _| rng.random_range(0..7u64));
            assert_eq!(determinant(&z7, &m).unwrap(), cofactor(&z7, &m));
            let g = Matrix::from_fn(n, n, |_, _| gf.random(&mut rng));
            assert_eq!(determinant(&gf, &g).unwrap(), cofactor(&gf, &g));
            let i = Matrix::from_fn(n, n, |_, _| rng.random_range(-3..=3i64));
            assert_eq!(determinant_exact_int(&i).unwrap(), cofactor(&Integers, &i.map(|&x| BigInt::from(x))));
        }
    }

    #[test]
    fn bigint_fallback() {
        let n = 8;
        let m = Matrix::from_fn(n, n, |i, j| if i == j { i64::MAX / 2 } else { (i * j) as i64 });
        let big = bareiss_big(&m);
        assert_eq!(determinant_exact_int(&m).unwrap(), big);
        assert_eq!(big, cofactor(&Integers, &m.map(|&x| BigInt::from(x))));
    }
}
