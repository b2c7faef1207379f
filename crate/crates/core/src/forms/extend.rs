use super::{reduce, validate_discriminant, vectors_up_to, FormClass, Mat2, QuadForm};
use crate::arith::{ext_gcd, factorize, kronecker_prime};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// The image of the class of `h` (discriminant `g²D`) under the natural map
/// `e_g: Cl(g²D) → Cl(D)`. A representative `[n, b, c]` of `h` with
/// `g² | n` is located by scanning primitively represented values; then
/// `g | b` and the image is the class of `[n/g², b/g, c]`.
pub fn extend_class<T: Coeff>(h: &QuadForm<T>, g: T) -> Result<FormClass<T>> {
    h.require_positive_definite()?;
    if g < T::one() {
        return Err(Error::Domain(format!(
            "extension index {g} must be positive"
        )));
    }
    if !h.is_primitive() {
        return Err(Error::Imprimitive(h.to_string()));
    }
    let big = h.discriminant()?;
    let g2 = g.mul_c(g)?;
    if !(big % g2).is_zero() {
        return Err(Error::InvalidDiscriminant((big / g2).wide()));
    }
    let d = big / g2;
    validate_discriminant(d)?;
    if g == T::one() {
        return FormClass::sl2(h);
    }
    let (h, _) = reduce(h)?;
    let mut bound = h.c.mul_c(g2)?;
    loop {
        for v in vectors_up_to(&h, bound)? {
            if !v.primitive || !(v.value % g2).is_zero() {
                continue;
            }
            let (x, y) = (i64::narrow(v.x.wide())?, i64::narrow(v.y.wide())?);
            let (_, s, t) = ext_gcd(x, y);
            let m = Mat2::new(v.x, -T::of(t), v.y, T::of(s));
            let moved = h.transform(&m)?;
            debug_assert_eq!(moved.a, v.value);
            debug_assert!((moved.b % g).is_zero());
            let q = QuadForm::new(moved.a / g2, moved.b / g, moved.c);
            if q.is_primitive() {
                return FormClass::sl2(&q);
            }
        }
        bound = bound.mul_c(T::of(2))?;
    }
}

/// The common fiber size of `e_g: Cl(g²D) → Cl(D)`:
/// `g / [O_D^× : O_{g²D}^×] · ∏_{p | g} (1 − (D|p)/p)`.
pub fn kernel_size(d: i64, g: i64) -> Result<i64> {
    validate_discriminant(d)?;
    if g < 1 {
        return Err(Error::Domain(format!(
            "extension index {g} must be positive"
        )));
    }
    let mut num = g;
    let mut den = 1i64;
    for (p, _) in factorize(g) {
        num = num
            .checked_mul(p - kronecker_prime(d, p))
            .ok_or(Error::Overflow)?;
        den *= p;
    }
    if g > 1 {
        den *= match d {
            -4 => 2,
            -3 => 3,
            _ => 1,
        };
    }
    if num % den != 0 {
        return Err(Error::Domain(format!(
            "kernel size for D = {d}, g = {g} is not integral"
        )));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::forms::{class_number, compose, ClassGroupTable};

    fn f(a: i64, b: i64, c: i64) -> QuadForm<i64> {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn kernel_size_examples() {
        assert_eq!(kernel_size(-20, 1).unwrap(), 1);
        assert_eq!(kernel_size(-20, 2).unwrap(), 2);
        assert_eq!(kernel_size(-4, 3).unwrap(), 2);
        assert_eq!(kernel_size(-3, 2).unwrap(), 1);
        assert_eq!(kernel_size(-7, 2).unwrap(), 1);
    }

    #[test]
    fn extend_examples() {
        let id = extend_class(&f(1, 0, 20), 2).unwrap();
        assert_eq!(id.canonical, f(1, 0, 5));
        let img = extend_class(&f(3, 2, 7), 2).unwrap();
        assert_eq!(img.disc, -20);
        // [3,2,7] ∘ [3,2,7] must map to the square of the image
        let sq = compose(&f(3, 2, 7), &f(3, 2, 7)).unwrap();
        let lhs = extend_class(&sq, 2).unwrap().canonical;
        let rhs = compose(&img.canonical, &img.canonical).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extend_minus_80_fibers() {
        let t = ClassGroupTable::build(-80i64).unwrap();
        let mut fibers: HashMap<QuadForm<i64>, usize> = HashMap::new();
        for c in &t.classes {
            *fibers
                .entry(extend_class(&c.canonical, 2).unwrap().canonical)
                .or_default() += 1;
        }
        assert_eq!(fibers.len() as u64, class_number(-20i64).unwrap());
        assert!(fibers
            .values()
            .all(|&n| n as i64 == kernel_size(-20, 2).unwrap()));
    }

    #[test]
    fn extend_errors() {
        assert!(extend_class(&f(1, 0, 5), 2).is_err());
        assert!(extend_class(&f(2, 0, 10), 2).is_err());
    }
}
