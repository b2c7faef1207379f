//! Atkin–Lehner operators `w_k` for `k ∥ m`.

use serde::{Deserialize, Serialize};

use super::NSClass;
use crate::arith::{ext_gcd, gcd};
use crate::error::{Error, Result};
use crate::forms::Mat2;

/// `w_k` on `A_m`, given by a matrix `[[kx, y], [mz, kw]]` of determinant `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtkinLehnerOp {
    pub m: i64,
    pub k: i64,
    pub matrix: Mat2<i64>,
}

impl AtkinLehnerOp {
    /// Builds the matrix from `k·u − (m/k)·v = 1`, taking
    /// `[[k·u, 1], [m·v, k]]`; `w_1` uses the identity matrix.
    pub fn new(m: i64, k: i64) -> Result<Self> {
        if m < 1 || k < 1 || m % k != 0 || gcd(k, m / k) != 1 {
            return Err(Error::InvalidAtkinLehner(format!(
                "k = {k} is not an exact divisor of m = {m}"
            )));
        }
        if k == 1 {
            return Ok(Self {
                m,
                k,
                matrix: Mat2::identity(),
            });
        }
        let (_, u, t) = ext_gcd(k, m / k);
        let v = -t;
        let matrix = Mat2::new(k * u, 1, m * v, k);
        Ok(Self { m, k, matrix })
    }

    fn validate(&self) -> Result<()> {
        let Mat2 { p, q: _, r, s } = self.matrix;
        let k = self.k;
        let ok = self.m % k == 0
            && gcd(k, self.m / k) == 1
            && p % k == 0
            && s % k == 0
            && r % self.m == 0
            && self.matrix.det()? == k;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidAtkinLehner(format!(
                "{:?} for k = {k}, m = {}",
                self.matrix, self.m
            )))
        }
    }
}

/// `w_k(L)`: the class with `q = (1/k)·(q_L∘W)`. Defined up to `Γ₀(m)`.
pub fn atkin_lehner(op: &AtkinLehnerOp, l: &NSClass) -> Result<NSClass> {
    op.validate()?;
    if op.m != l.m {
        return Err(Error::SurfaceMismatch(op.m, l.m));
    }
    let q = l.q()?.transform(&op.matrix)?;
    let q = q
        .divide(op.k)
        .ok_or_else(|| Error::InvalidAtkinLehner(format!("{q} is not divisible by {}", op.k)))?;
    NSClass::from_form(&q, l.m)
}
