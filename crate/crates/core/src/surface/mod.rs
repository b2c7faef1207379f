//! The Néron–Severi lattice of `A_m`.
//!
//! A class `L = a·h + b·X_λ + c·v` is stored by its coordinates. The pairing
//! has `h·v = 1`, `h² = v² = 0`, `X_λ² = −2m` and `X_λ` orthogonal to `h`
//! and `v`, so `L·L = 2(ac − b²m)`. The degree form of `L` on `Hom(E, A_m)`
//! is `q_L = [am, −2bm, c]`, and `L ↦ q_L` identifies `NS(A_m)` with the forms
//! `[A, B, C]` satisfying `m | A` and `2m | B`.

mod atkin;
mod elliptic;
mod psi;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{Mat2, QuadForm};
use crate::gamma0;
use crate::scalar::Coeff;
use crate::Form;

pub use atkin::{atkin_lehner, AtkinLehnerOp};
pub use elliptic::{
    classify, elliptic_class_count, is_smooth, is_very_ample, min_elliptic_intersection,
    min_elliptic_intersection_capped, product_decompositions, EllipticClass, OrbitTag,
    VeryAmpleCheck,
};
pub use psi::{matrix_content, psi, psi_fiber_size, PsiImage};

/// The class `a·h + b·X_λ + c·v` on `A_m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NSClass {
    pub m: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Debug for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; m={})", self.a, self.b, self.c, self.m)
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn require_m(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "surface type m = {m} must be positive"
        )));
    }
    Ok(())
}

impl NSClass {
    pub fn new(m: i64, a: i64, b: i64, c: i64) -> Self {
        Self { m, a, b, c }
    }

    /// `L₁·L₂ = a₁c₂ + c₁a₂ − 2m·b₁b₂`.
    pub fn intersect(&self, other: &Self) -> Result<i64> {
        if self.m != other.m {
            return Err(Error::SurfaceMismatch(self.m, other.m));
        }
        let t1 = self.a.mul_c(other.c)?;
        let t2 = self.c.mul_c(other.a)?;
        let t3 = self.m.mul_c(2)?.mul_c(self.b)?.mul_c(other.b)?;
        t1.add_c(t2)?.sub_c(t3)
    }

    /// `½ L·L = ac − b²m`.
    pub fn degree(&self) -> Result<i64> {
        self.a
            .mul_c(self.c)?
            .sub_c(self.b.mul_c(self.b)?.mul_c(self.m)?)
    }

    pub fn is_ample(&self) -> bool {
        self.a > 0 && self.c > 0 && self.degree().is_ok_and(|d| d > 0)
    }

    pub fn require_ample(&self) -> Result<()> {
        if self.is_ample() {
            Ok(())
        } else {
            Err(Error::NotAmple(self.to_string()))
        }
    }

    pub fn is_indivisible(&self) -> bool {
        crate::arith::gcd(crate::arith::gcd(self.a, self.b), self.c) == 1
    }

    /// `q_L = [am, −2bm, c]`.
    pub fn q(&self) -> Result<Form> {
        Ok(QuadForm::new(
            self.a.mul_c(self.m)?,
            self.b.mul_c(self.m)?.mul_c(-2)?,
            self.c,
        ))
    }

    /// `q_L^k = [a·m/k, −2bm, c·k]`, the degree form on `Hom(E_k, A_m)`.
    pub fn q_k(&self, k: i64) -> Result<Form> {
        if k < 1 || self.m % k != 0 {
            return Err(Error::NotADivisor { k, m: self.m });
        }
        Ok(QuadForm::new(
            self.a.mul_c(self.m / k)?,
            self.b.mul_c(self.m)?.mul_c(-2)?,
            self.c.mul_c(k)?,
        ))
    }

    /// The class `L` with `q_L = q`.
    pub fn from_form(q: &Form, m: i64) -> Result<Self> {
        require_m(m)?;
        if q.a % m != 0 || q.b % (2 * m) != 0 {
            return Err(Error::NotInVm {
                form: q.to_string(),
                m,
            });
        }
        Ok(Self::new(m, q.a / m, -q.b / (2 * m), q.c))
    }

    /// The class `L'` with `q_{L'} = q_L∘γ` for `γ ∈ Γ₀(m)`.
    pub fn act(&self, g: &Mat2<i64>) -> Result<Self> {
        if !gamma0::contains(self.m, g) {
            return Err(Error::Domain(format!("{g:?} is not in Γ₀({})", self.m)));
        }
        Self::from_form(&self.q()?.transform(g)?, self.m)
    }
}

/// Free-function form of [`NSClass::intersect`].
pub fn intersect(l1: &NSClass, l2: &NSClass) -> Result<i64> {
    l1.intersect(l2)
}

/// Free-function form of [`NSClass::degree`].
pub fn degree(l: &NSClass) -> Result<i64> {
    l.degree()
}

/// Free-function form of [`NSClass::q`].
pub fn q_of(l: &NSClass) -> Result<Form> {
    l.q()
}

/// Free-function form of [`NSClass::q_k`].
pub fn q_of_k(l: &NSClass, k: i64) -> Result<Form> {
    l.q_k(k)
}

/// Free-function form of [`NSClass::from_form`].
pub fn ns_of_form(q: &Form, m: i64) -> Result<NSClass> {
    NSClass::from_form(q, m)
}
