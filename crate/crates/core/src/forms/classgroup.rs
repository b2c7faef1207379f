use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{reduce, ClassMode, FormClass, QuadForm};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Accepts `D < 0` with `D ≡ 0, 1 (mod 4)`.
pub fn validate_discriminant<T: Coeff>(d: T) -> Result<()> {
    let r = d.mod_floor(&T::of(4));
    if d < T::zero() && (r.is_zero() || r == T::one()) {
        Ok(())
    } else {
        Err(Error::InvalidDiscriminant(d.wide()))
    }
}

/// Visit every reduced positive definite form of discriminant `d` in
/// increasing `(a, b)` order. With `primitive_only` the imprimitive ones
/// are skipped. The visitor may stop the scan early.
pub fn reduced_forms<T, F>(d: T, primitive_only: bool, mut visit: F) -> Result<()>
where
    T: Coeff,
    F: FnMut(QuadForm<T>) -> ControlFlow<()>,
{
    validate_discriminant(d)?;
    let abs_d = -d;
    let parity = d.mod_floor(&T::of(2));
    let mut a = T::one();
    while a.mul_c(a)?.mul_c(T::of(3))? <= abs_d {
        let four_a = a.mul_c(T::of(4))?;
        let mut b = -a + T::one();
        if b.mod_floor(&T::of(2)) != parity {
            b = b + T::one();
        }
        while b <= a {
            let num = b.mul_c(b)?.sub_c(d)?;
            if (num % four_a).is_zero() {
                let c = num / four_a;
                let ok = c >= a && !(b < T::zero() && a == c);
                let f = QuadForm::new(a, b, c);
                if ok && (!primitive_only || f.is_primitive()) && visit(f).is_break() {
                    return Ok(());
                }
            }
            b = b + T::of(2);
        }
        a = a + T::one();
    }
    Ok(())
}

/// `h(D)`: the number of SL2-classes of primitive forms of discriminant `D`.
pub fn class_number<T: Coeff>(d: T) -> Result<u64> {
    let mut n = 0u64;
    reduced_forms(d, true, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// `h⁺(D)`: GL2-classes, i.e. classes up to inversion.
pub fn gl2_class_number<T: Coeff>(d: T) -> Result<u64> {
    Ok((class_number(d)? + two_torsion_count(d)?) / 2)
}

/// `#Cl(D)[2] = 2^(μ−1)` from the genus count of `D`.
pub fn two_torsion_count<T: Coeff>(d: T) -> Result<u64> {
    validate_discriminant(d)?;
    let d = i64::narrow(d.wide())?;
    let odd_primes = |n: i64| factorize(n).iter().filter(|&&(p, _)| p != 2).count() as u32;
    let mu = if d % 2 != 0 {
        odd_primes(d)
    } else {
        let n = -d / 4;
        let r = odd_primes(n);
        match (n % 4, n % 8) {
            (3, _) => r,
            (1, _) | (2, _) => r + 1,
            (_, 4) => r + 1,
            _ => r + 2,
        }
    };
    Ok(1u64 << (mu - 1))
}

/// The 2-torsion classes: reduced primitive forms with `b = 0`, `a = b` or `a = c`.
pub fn ambiguous_classes<T: Coeff>(d: T) -> Result<Vec<FormClass<T>>> {
    let mut out = Vec::new();
    reduced_forms(d, true, |f| {
        if f.b.is_zero() || f.a == f.b || f.a == f.c {
            out.push(FormClass {
                canonical: f,
                disc: d,
                mode: ClassMode::Sl2,
            });
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Whether every class of discriminant `d` is 2-torsion. Stops at the first
/// non-ambiguous reduced form.
pub fn is_two_torsion_group<T: Coeff>(d: T) -> Result<bool> {
    let mut all = true;
    reduced_forms(d, true, |f| {
        if f.b.is_zero() || f.a == f.b || f.a == f.c {
            ControlFlow::Continue(())
        } else {
            all = false;
            ControlFlow::Break(())
        }
    })?;
    Ok(all)
}

/// Gauss product of two primitive forms of equal discriminant, returned
/// reduced. Dirichlet's method, arranged as in Cohen's composition
/// algorithm: `e = gcd(a₁, a₂, (b₁+b₂)/2)` and the middle coefficient solves
/// `B ≡ b₁ (2a₁/e)`, `B ≡ b₂ (2a₂/e)`, `B² ≡ D (4a₁a₂/e²)`.
pub fn compose<T: Coeff>(f: &QuadForm<T>, g: &QuadForm<T>) -> Result<QuadForm<T>> {
    f.require_positive_definite()?;
    g.require_positive_definite()?;
    let d = f.discriminant()?;
    let dg = g.discriminant()?;
    if d != dg {
        return Err(Error::DiscriminantMismatch(d.wide(), dg.wide()));
    }
    for h in [f, g] {
        if !h.is_primitive() {
            return Err(Error::Imprimitive(h.to_string()));
        }
    }
    let (f1, f2) = if f.a > g.a { (g, f) } else { (f, g) };
    let (a1, b1) = (f1.a, f1.b);
    let (a2, b2, c2) = (f2.a, f2.b, f2.c);
    let s = b1.add_c(b2)? / T::of(2);
    let n = b2 - s;

    let (y1, dd) = if (a2 % a1).is_zero() {
        (T::zero(), a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if (s % dd).is_zero() {
        (T::zero(), -T::one(), dd)
    } else {
        let e = s.extended_gcd(&dd);
        let (g, x, y) = if e.gcd < T::zero() {
            (-e.gcd, -e.x, -e.y)
        } else {
            (e.gcd, e.x, e.y)
        };
        (x, -y, g)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = y1.mul_c(y2)?.mul_c(n)?.sub_c(x2.mul_c(c2)?)?.mod_floor(&v1);
    let b3 = b2.add_c(T::of(2).mul_c(v2)?.mul_c(r)?)?;
    let a3 = v1.mul_c(v2)?;
    let num = b3.mul_c(b3)?.sub_c(d)?;
    let den = a3.mul_c(T::of(4))?;
    debug_assert!((num % den).is_zero());
    let c3 = num / den;
    Ok(reduce(&QuadForm::new(a3, b3, c3))?.0)
}

/// All SL2-classes of one discriminant with their composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "T: Coeff")]
pub struct ClassGroupTable<T: Coeff> {
    pub disc: T,
    pub classes: Vec<FormClass<T>>,
    pub identity_index: usize,
    pub compose_table: Vec<Vec<usize>>,
}

impl<T: Coeff> ClassGroupTable<T> {
    pub fn build(d: T) -> Result<Self> {
        let mut forms = Vec::new();
        reduced_forms(d, true, |f| {
            forms.push(f);
            ControlFlow::Continue(())
        })?;
        let index: HashMap<QuadForm<T>, usize> =
            forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let identity = QuadForm::principal(d)?;
        let identity_index = index[&identity];
        let mut compose_table = vec![vec![0; forms.len()]; forms.len()];
        for (i, f) in forms.iter().enumerate() {
            for (j, g) in forms.iter().enumerate().skip(i) {
                let k = index[&compose(f, g)?];
                compose_table[i][j] = k;
                compose_table[j][i] = k;
            }
        }
        let classes = forms
            .into_iter()
            .map(|f| FormClass {
                canonical: f,
                disc: d,
                mode: ClassMode::Sl2,
            })
            .collect();
        Ok(Self {
            disc: d,
            classes,
            identity_index,
            compose_table,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn index_of(&self, f: &QuadForm<T>) -> Option<usize> {
        let (g, _) = reduce(f).ok()?;
        self.classes.iter().position(|c| c.canonical == g)
    }

    pub fn inverse(&self, i: usize) -> usize {
        (0..self.len())
            .find(|&j| self.compose_table[i][j] == self.identity_index)
            .expect("every class has an inverse")
    }

    pub fn order(&self, i: usize) -> usize {
        let mut k = i;
        let mut n = 1;
        while k != self.identity_index {
            k = self.compose_table[k][i];
            n += 1;
        }
        n
    }
}
