//! The map `Ψ_{m,d}` from ample classes of squarefree degree `d` to
//! GL2-classes of matrix-primitive forms, and the sizes of its fibers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::NSClass;
use crate::arith::{gcd, is_squarefree};
use crate::error::{Error, Result};
use crate::forms::{automorphisms, is_matrix_primitive, reduce, Equivalence, FormClass};
use crate::gamma0;
use crate::Form;

/// `Ψ(L)`: the matrix content `g` of `q_L` and the GL2-class of `q_L/g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PsiImage {
    pub g: i64,
    pub class: FormClass<i64>,
}

/// `gcd(A, B/2, C)` for a form `[A, B, C]` with `B` even.
pub fn matrix_content(q: &Form) -> i64 {
    gcd(gcd(q.a, q.b / 2), q.c)
}

pub fn psi(l: &NSClass) -> Result<PsiImage> {
    l.require_ample()?;
    let d = l.degree()?;
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let q = l.q()?;
    let g = matrix_content(&q);
    let class = FormClass::gl2(&q.divide(g).expect("content divides"))?;
    Ok(PsiImage { g, class })
}

/// A form in `V_n` that is GL2-equivalent to `q`, found among `q∘γ` for
/// coset representatives `γ` of `Γ₀(n)` (membership in `V_n` is
/// `Γ₀(n)`-invariant, so one representative per coset suffices).
fn representative_in_vn(q: &Form, n: i64) -> Result<Option<Form>> {
    for g in gamma0::coset_reps(n)? {
        let h = q.transform(&g)?;
        if h.a % n == 0 && h.b % (2 * n) == 0 {
            return Ok(Some(h));
        }
    }
    Ok(None)
}

/// The number of `Aut(A_m)`-orbits of ample degree `d` classes with
/// `Ψ = (g, class)`: the double cosets `Aut(q) \ Γ₀(m/g) / Γ₀(m)`, with `q`
/// a representative of the class lying in `V_{m/g}`. Left cosets of `Γ₀(m)`
/// inside `Γ₀(m/g)` are the points `(p : r)` of `P¹(Z/m)` with `m/g | r`.
pub fn psi_fiber_size(m: i64, d: i64, g: i64, class: &Form) -> Result<i64> {
    if m < 1 || d < 1 || g < 1 || m % g != 0 || d % g != 0 {
        return Err(Error::Domain(format!(
            "need g | gcd(m, d), got m={m} d={d} g={g}"
        )));
    }
    if !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    let disc = -4 * m * d / (g * g);
    if class.discriminant()? != disc || !is_matrix_primitive(class) {
        return Err(Error::Domain(format!(
            "{class} is not a matrix-primitive form of discriminant {disc}"
        )));
    }
    let n = m / g;
    let (q, _) = reduce(class)?;
    let Some(q0) = representative_in_vn(&q, n)? else {
        return Ok(0);
    };
    let aut = automorphisms(&q0, Equivalence::Gamma0(n))?;
    let cosets: Vec<(i64, i64)> = gamma0::points(m)?
        .into_iter()
        .filter(|&(_, r)| r % n == 0)
        .collect();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &(p, r) in &cosets {
        if seen.contains(&(p, r)) {
            continue;
        }
        orbits += 1;
        for a in &aut {
            let (x, y) = a.apply(p, r)?;
            seen.insert(gamma0::normalize(m, x, y));
        }
    }
    Ok(orbits)
}
