//! Small fixed-capacity coordinate vectors.
//!
//! Every geometric object in the crate lives in at most nine coordinates
//! (hyperboloid model of `H^8`), so vectors are stored inline and are `Copy`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// Largest supported hyperbolic dimension.
pub const MAX_DIM: usize = 8;
/// Smallest supported hyperbolic dimension.
pub const MIN_DIM: usize = 2;

const CAP: usize = MAX_DIM + 1;

/// A real vector with up to `MAX_DIM + 1` coordinates.
///
/// When used as hyperboloid coordinates the last entry is the time-like
/// component (the coefficient of the apex `e`).
#[derive(Clone, Copy, PartialEq)]
pub struct Vector {
    len: u8,
    c: [f64; CAP],
}

impl Vector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= CAP, "vector length {len} exceeds capacity {CAP}");
        Self {
            len: len as u8,
            c: [0.0; CAP],
        }
    }

    pub fn from_slice(s: &[f64]) -> Self {
        let mut v = Self::zeros(s.len());
        v.c[..s.len()].copy_from_slice(s);
        v
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.c[i] = 1.0;
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.len()]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        let n = self.len();
        &mut self.c[..n]
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.as_slice().to_vec()
    }

    /// Euclidean inner product.
    #[inline]
    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.len, other.len);
        let mut s = 0.0;
        for i in 0..self.len() {
            s += self.c[i] * other.c[i];
        }
        s
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Lorentz form `ts - <x0, y0>` with the last coordinate as time.
    #[inline]
    pub fn lorentz(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.len, other.len);
        let n = self.len() - 1;
        let mut s = self.c[n] * other.c[n];
        for i in 0..n {
            s -= self.c[i] * other.c[i];
        }
        s
    }

    /// The last (time-like) coordinate.
    #[inline]
    pub fn time(&self) -> f64 {
        self.c[self.len() - 1]
    }

    /// All but the last coordinate.
    #[inline]
    pub fn space(&self) -> Self {
        let mut v = *self;
        v.len -= 1;
        v.c[v.len()] = 0.0;
        v
    }

    /// Appends one coordinate.
    #[inline]
    pub fn push(&self, x: f64) -> Self {
        let mut v = *self;
        v.c[v.len()] = x;
        v.len += 1;
        v
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    /// `self + s * other`
    #[inline]
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        let mut v = *self;
        for i in 0..self.len() {
            v.c[i] += s * other.c[i];
        }
        v
    }

    /// Lexicographic comparison, used for deterministic tie breaking.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self.as_slice().iter().zip(other.as_slice()) {
            match a.total_cmp(b) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    #[inline]
    fn index(&self, i: usize) -> &f64 {
        debug_assert!(i < self.len());
        &self.c[i]
    }
}

impl IndexMut<usize> for Vector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        debug_assert!(i < self.len());
        &mut self.c[i]
    }
}

impl Add for Vector {
    type Output = Vector;
    #[inline]
    fn add(mut self, rhs: Vector) -> Vector {
        self += rhs;
        self
    }
}

impl AddAssign for Vector {
    #[inline]
    fn add_assign(&mut self, rhs: Vector) {
        debug_assert_eq!(self.len, rhs.len);
        for i in 0..self.len() {
            self.c[i] += rhs.c[i];
        }
    }
}

impl Sub for Vector {
    type Output = Vector;
    #[inline]
    fn sub(mut self, rhs: Vector) -> Vector {
        self -= rhs;
        self
    }
}

impl SubAssign for Vector {
    #[inline]
    fn sub_assign(&mut self, rhs: Vector) {
        debug_assert_eq!(self.len, rhs.len);
        for i in 0..self.len() {
            self.c[i] -= rhs.c[i];
        }
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    #[inline]
    fn mul(mut self, s: f64) -> Vector {
        for i in 0..self.len() {
            self.c[i] *= s;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    #[inline]
    fn neg(self) -> Vector {
        self * -1.0
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` for (numerically) singular matrices.
pub(crate) fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()))
        .max(1e-300);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-13 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentz_form_of_apex_is_one() {
        let e = Vector::from_slice(&[0.0, 0.0, 1.0]);
        assert_eq!(e.lorentz(&e), 1.0);
    }

    #[test]
    fn space_and_push_are_inverse() {
        let v = Vector::from_slice(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(v.space().push(4.0), v);
        assert_eq!(v.space().len(), 3);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(a, vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve_linear(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 2.0]).is_none());
    }
}
