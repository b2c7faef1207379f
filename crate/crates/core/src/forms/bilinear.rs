use std::ops::ControlFlow;

use super::{class_number, reduced_forms, two_torsion_count, FormClass, QuadForm};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// `[A, 2B, C]` with `gcd(A, B, C) = 1`: the associated symmetric bilinear
/// form is primitive.
pub fn is_matrix_primitive<T: Coeff>(f: &QuadForm<T>) -> bool {
    f.b.is_even() && f.a.gcd(&(f.b / T::of(2))).gcd(&f.c) == T::one()
}

fn require_positive(d: i64) -> Result<()> {
    if d <= 0 {
        return Err(Error::Domain(format!("determinant {d} must be positive")));
    }
    Ok(())
}

/// `H(D)`: GL2-classes of primitive symmetric bilinear forms of determinant
/// `D`, i.e. matrix-primitive forms of discriminant `−4D`.
pub fn bilinear_class_count(d: i64) -> Result<u64> {
    require_positive(d)?;
    let mut twice = class_number(-4 * d)? + two_torsion_count(-4 * d)?;
    if d % 4 == 3 {
        twice += class_number(-d)? + two_torsion_count(-d)?;
    }
    Ok(twice / 2)
}

/// `H₂(D)`: those of the `H(D)` classes that are 2-torsion.
pub fn bilinear_two_torsion_count(d: i64) -> Result<u64> {
    require_positive(d)?;
    let mut n = two_torsion_count(-4 * d)?;
    if d % 4 == 3 {
        n += two_torsion_count(-d)?;
    }
    Ok(n)
}

/// The GL2-classes of matrix-primitive forms of discriminant `−4D`, by direct
/// enumeration of reduced forms.
pub fn matrix_primitive_classes(d: i64) -> Result<Vec<FormClass<i64>>> {
    require_positive(d)?;
    let mut out = Vec::new();
    reduced_forms(-4 * d, false, |f| {
        if f.b >= 0 && is_matrix_primitive(&f) {
            out.push(FormClass::gl2(&f).expect("reduced forms are positive definite"));
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
