//! Integral binary quadratic forms `[a, b, c] = ax² + bxy + cy²`.
//!
//! Positive definite forms only. Forms act on column vectors, and a 2×2
//! matrix `M = [[p, q], [r, s]]` transforms `f` into `f∘M`, the form
//! `(x, y) ↦ f(px + qy, rx + sy)`.

mod bilinear;
mod classgroup;
mod extend;
mod represent;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

pub use bilinear::{
    bilinear_class_count, bilinear_two_torsion_count, is_matrix_primitive, matrix_primitive_classes,
};
pub use classgroup::{
    ambiguous_classes, class_number, compose, gl2_class_number, is_two_torsion_group,
    reduced_forms, two_torsion_count, validate_discriminant, ClassGroupTable,
};
pub use extend::{extend_class, kernel_size};
pub use represent::{automorphisms, equivalent, representations, vectors_up_to, Representation};

/// The form `ax² + bxy + cy²`. Serializes as the triple `[a, b, c]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[T; 3]", into = "[T; 3]")]
#[serde(bound = "T: Coeff")]
pub struct QuadForm<T: Coeff> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Coeff> From<[T; 3]> for QuadForm<T> {
    fn from([a, b, c]: [T; 3]) -> Self {
        Self { a, b, c }
    }
}

impl<T: Coeff> From<QuadForm<T>> for [T; 3] {
    fn from(f: QuadForm<T>) -> Self {
        [f.a, f.b, f.c]
    }
}

impl<T: Coeff> fmt::Debug for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl<T: Coeff> fmt::Display for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<T: Coeff> QuadForm<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    /// `b² − 4ac`, checked.
    pub fn discriminant(&self) -> Result<T> {
        let bb = self.b.mul_c(self.b)?;
        let ac4 = self.a.mul_c(self.c)?.mul_c(T::of(4))?;
        bb.sub_c(ac4)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > T::zero() && self.discriminant().is_ok_and(|d| d < T::zero())
    }

    pub fn require_positive_definite(&self) -> Result<()> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(Error::NotPositiveDefinite(self.to_string()))
        }
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> T {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == T::one()
    }

    pub fn eval(&self, x: T, y: T) -> Result<T> {
        let t1 = self.a.mul_c(x)?.mul_c(x)?;
        let t2 = self.b.mul_c(x)?.mul_c(y)?;
        let t3 = self.c.mul_c(y)?.mul_c(y)?;
        t1.add_c(t2)?.add_c(t3)
    }

    /// The form `f∘M`.
    pub fn transform(&self, m: &Mat2<T>) -> Result<Self> {
        let a = self.eval(m.p, m.r)?;
        let c = self.eval(m.q, m.s)?;
        let two = T::of(2);
        let b1 = two.mul_c(self.a)?.mul_c(m.p)?.mul_c(m.q)?;
        let b2 = self.b.mul_c(m.p.mul_c(m.s)?.add_c(m.q.mul_c(m.r)?)?)?;
        let b3 = two.mul_c(self.c)?.mul_c(m.r)?.mul_c(m.s)?;
        Ok(Self::new(a, b1.add_c(b2)?.add_c(b3)?, c))
    }

    pub fn scale(&self, k: T) -> Result<Self> {
        Ok(Self::new(
            self.a.mul_c(k)?,
            self.b.mul_c(k)?,
            self.c.mul_c(k)?,
        ))
    }

    /// Exact division of every coefficient; `None` unless `k` divides all three.
    pub fn divide(&self, k: T) -> Option<Self> {
        if k.is_zero()
            || !(self.a % k).is_zero()
            || !(self.b % k).is_zero()
            || !(self.c % k).is_zero()
        {
            return None;
        }
        Some(Self::new(self.a / k, self.b / k, self.c / k))
    }

    /// The inverse class representative `[a, −b, c]`.
    pub fn opposite(&self) -> Self {
        Self::new(self.a, -self.b, self.c)
    }

    /// Gauss reduced: `−a < b ≤ a ≤ c`, with `b ≥ 0` when `a = c`.
    pub fn is_reduced(&self) -> bool {
        -self.a < self.b
            && self.b <= self.a
            && self.a <= self.c
            && !(self.a == self.c && self.b < T::zero())
    }

    /// The principal form of discriminant `d`.
    pub fn principal(d: T) -> Result<Self> {
        validate_discriminant(d)?;
        let b = if d.is_odd() { T::one() } else { T::zero() };
        let c = b.mul_c(b)?.sub_c(d)? / T::of(4);
        Ok(Self::new(T::one(), b, c))
    }

    pub fn to_i64(&self) -> Result<QuadForm<i64>> {
        Ok(QuadForm::new(
            i64::narrow(self.a.wide())?,
            i64::narrow(self.b.wide())?,
            i64::narrow(self.c.wide())?,
        ))
    }
}

/// An integer 2×2 matrix `[[p, q], [r, s]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Coeff")]
pub struct Mat2<T: Coeff> {
    pub p: T,
    pub q: T,
    pub r: T,
    pub s: T,
}

impl<T: Coeff> fmt::Debug for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

impl<T: Coeff> Mat2<T> {
    pub fn new(p: T, q: T, r: T, s: T) -> Self {
        Self { p, q, r, s }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> Result<T> {
        self.p.mul_c(self.s)?.sub_c(self.q.mul_c(self.r)?)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let e = |x: T, y: T, z: T, w: T| -> Result<T> { x.mul_c(y)?.add_c(z.mul_c(w)?) };
        Ok(Self::new(
            e(self.p, o.p, self.q, o.r)?,
            e(self.p, o.q, self.q, o.s)?,
            e(self.r, o.p, self.s, o.r)?,
            e(self.r, o.q, self.s, o.s)?,
        ))
    }

    /// `M · (x, y)ᵀ`.
    pub fn apply(&self, x: T, y: T) -> Result<(T, T)> {
        Ok((
            self.p.mul_c(x)?.add_c(self.q.mul_c(y)?)?,
            self.r.mul_c(x)?.add_c(self.s.mul_c(y)?)?,
        ))
    }

    /// Inverse of a determinant ±1 matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det()?;
        if d.abs() != T::one() {
            return Err(Error::Domain(format!("matrix {self:?} is not unimodular")));
        }
        Ok(Self::new(self.s * d, -self.q * d, -self.r * d, self.p * d))
    }
}

/// Equivalence relation used to compare forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Equivalence {
    /// Proper equivalence, determinant +1.
    Sl2,
    /// Determinant ±1.
    Gl2,
    /// Determinant ±1 with lower-left entry divisible by the level.
    Gamma0(i64),
}

/// The mode under which a [`FormClass`] is canonicalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassMode {
    Sl2,
    Gl2,
}

/// Reduce a positive definite form, returning the reduced form `g` and a
/// determinant +1 matrix `M` with `f∘M = g`.
pub fn reduce<T: Coeff>(f: &QuadForm<T>) -> Result<(QuadForm<T>, Mat2<T>)> {
    f.require_positive_definite()?;
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    let mut m = Mat2::identity();
    let swap = Mat2::new(T::zero(), -T::one(), T::one(), T::zero());
    loop {
        if b > a || b <= -a {
            let two_a = a.mul_c(T::of(2))?;
            let k = (a - b).div_floor(&two_a);
            // f(x + ky, y) = [a, b + 2ak, f(k, 1)]
            let nc = QuadForm::new(a, b, c).eval(k, T::one())?;
            b = b.add_c(two_a.mul_c(k)?)?;
            c = nc;
            m = m.mul(&Mat2::new(T::one(), k, T::zero(), T::one()))?;
        }
        if a > c || (a == c && b < T::zero()) {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            m = m.mul(&swap)?;
            continue;
        }
        break;
    }
    Ok((QuadForm::new(a, b, c), m))
}

/// A class of positive definite forms, stored by its reduced representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound = "T: Coeff")]
pub struct FormClass<T: Coeff> {
    pub canonical: QuadForm<T>,
    pub disc: T,
    pub mode: ClassMode,
}

impl<T: Coeff> FormClass<T> {
    pub fn sl2(f: &QuadForm<T>) -> Result<Self> {
        let (g, _) = reduce(f)?;
        Ok(Self {
            canonical: g,
            disc: g.discriminant()?,
            mode: ClassMode::Sl2,
        })
    }

    /// GL2 canonical representative: the reduced form with `b ≥ 0`.
    pub fn gl2(f: &QuadForm<T>) -> Result<Self> {
        let (mut g, _) = reduce(f)?;
        if g.b < T::zero() {
            g = g.opposite();
        }
        Ok(Self {
            canonical: g,
            disc: g.discriminant()?,
            mode: ClassMode::Gl2,
        })
    }

    pub fn to_gl2(&self) -> Self {
        let mut g = self.canonical;
        if g.b < T::zero() {
            g = g.opposite();
        }
        Self {
            canonical: g,
            disc: self.disc,
            mode: ClassMode::Gl2,
        }
    }

    /// Whether the class is 2-torsion in its class group. For a form that is
    /// `t` times a primitive form, the primitive part is tested.
    pub fn is_two_torsion(&self) -> bool {
        let t = self.canonical.content();
        let f = self.canonical.divide(t).expect("content divides");
        f.b.is_zero() || f.a == f.b || f.a == f.c
    }
}
