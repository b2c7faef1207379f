use serde::{Deserialize, Serialize};

use super::{reduce, Equivalence, Mat2, QuadForm};
use crate::error::{Error, Result};
use crate::scalar::{isqrt, Coeff};

/// A vector `(x, y)` together with the value `f(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Coeff")]
pub struct Representation<T: Coeff> {
    pub x: T,
    pub y: T,
    pub value: T,
    /// `gcd(x, y) = 1`.
    pub primitive: bool,
}

/// Scan a reduced form `g` for vectors with value in `lo..=hi`. Uses
/// `4a·g(x, y) = (2ax + by)² + |D|y²`.
fn scan_reduced<T: Coeff>(g: &QuadForm<T>, lo: T, hi: T, out: &mut Vec<(T, T, T)>) -> Result<()> {
    let abs_d = -g.discriminant()?;
    let four_a = g.a.mul_c(T::of(4))?;
    let two_a = g.a.mul_c(T::of(2))?;
    let cap = four_a.mul_c(hi)?;
    let y_max = isqrt(cap / abs_d);
    let mut y = -y_max;
    while y <= y_max {
        let t = cap.sub_c(abs_d.mul_c(y)?.mul_c(y)?)?;
        if t >= T::zero() {
            let s = isqrt(t);
            let by = g.b.mul_c(y)?;
            let x_lo = (-s - by).div_ceil(&two_a);
            let x_hi = (s - by).div_floor(&two_a);
            let mut x = x_lo;
            while x <= x_hi {
                let v = g.eval(x, y)?;
                if v >= lo && v <= hi {
                    out.push((x, y, v));
                }
                x = x + T::one();
            }
        }
        y = y + T::one();
    }
    Ok(())
}

fn collect<T: Coeff>(
    f: &QuadForm<T>,
    lo: T,
    hi: T,
    with_zero: bool,
) -> Result<Vec<Representation<T>>> {
    f.require_positive_definite()?;
    if hi < T::zero() {
        return Ok(Vec::new());
    }
    let (g, m) = reduce(f)?;
    let mut raw = Vec::new();
    scan_reduced(&g, lo, hi, &mut raw)?;
    let mut out = Vec::with_capacity(raw.len());
    for (x, y, value) in raw {
        if x.is_zero() && y.is_zero() && !with_zero {
            continue;
        }
        let (x, y) = m.apply(x, y)?;
        out.push(Representation {
            x,
            y,
            value,
            primitive: x.gcd(&y) == T::one(),
        });
    }
    out.sort_by_key(|p| (p.value, p.x, p.y));
    Ok(out)
}

/// All `(x, y)` with `f(x, y) = n`, in increasing `(x, y)` order.
pub fn representations<T: Coeff>(f: &QuadForm<T>, n: T) -> Result<Vec<Representation<T>>> {
    collect(f, n, n, true)
}

/// All nonzero `(x, y)` with `f(x, y) ≤ bound`, sorted by value.
pub fn vectors_up_to<T: Coeff>(f: &QuadForm<T>, bound: T) -> Result<Vec<Representation<T>>> {
    collect(f, T::one(), bound, false)
}

/// Every `X` of determinant ±1 with `f∘X = g`, for reduced `f`, `g`.
/// The columns of `X` represent `g.a` and `g.c` by `f`.
fn transforms_between_reduced<T: Coeff>(f: &QuadForm<T>, g: &QuadForm<T>) -> Result<Vec<Mat2<T>>> {
    let mut first = Vec::new();
    scan_reduced(f, g.a, g.a, &mut first)?;
    let mut second = Vec::new();
    scan_reduced(f, g.c, g.c, &mut second)?;
    let mut out = Vec::new();
    for &(p, r, _) in &first {
        for &(q, s, _) in &second {
            let m = Mat2::new(p, q, r, s);
            if m.det()?.abs() == T::one() && f.transform(&m)? == *g {
                out.push(m);
            }
        }
    }
    Ok(out)
}

fn admissible<T: Coeff>(m: &Mat2<T>, mode: Equivalence) -> Result<bool> {
    Ok(match mode {
        Equivalence::Sl2 => m.det()? == T::one(),
        Equivalence::Gl2 => true,
        Equivalence::Gamma0(level) => (m.r % T::of(level)).is_zero(),
    })
}

/// Every transform `γ` of determinant ±1 with `f∘γ = g`. The set is a coset
/// of the finite group `Aut(f)`, found by reducing both forms and matching
/// representation vectors of the reduced ones.
fn all_transforms<T: Coeff>(f: &QuadForm<T>, g: &QuadForm<T>) -> Result<Vec<Mat2<T>>> {
    f.require_positive_definite()?;
    g.require_positive_definite()?;
    let (df, dg) = (f.discriminant()?, g.discriminant()?);
    if df != dg {
        return Err(Error::DiscriminantMismatch(df.wide(), dg.wide()));
    }
    let (fr, mf) = reduce(f)?;
    let (gr, mg) = reduce(g)?;
    let mg_inv = mg.inverse_unimodular()?;
    transforms_between_reduced(&fr, &gr)?
        .into_iter()
        .map(|x| mf.mul(&x)?.mul(&mg_inv))
        .collect()
}

/// A transform of the requested kind carrying `f` to `g`, if one exists.
pub fn equivalent<T: Coeff>(
    f: &QuadForm<T>,
    g: &QuadForm<T>,
    mode: Equivalence,
) -> Result<Option<Mat2<T>>> {
    if let Equivalence::Gamma0(level) = mode {
        if level < 1 {
            return Err(Error::Domain(format!("level {level} must be positive")));
        }
    }
    for m in all_transforms(f, g)? {
        if admissible(&m, mode)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The stabilizer of `f` in the group named by `mode`.
pub fn automorphisms<T: Coeff>(f: &QuadForm<T>, mode: Equivalence) -> Result<Vec<Mat2<T>>> {
    let mut out = Vec::new();
    for m in all_transforms(f, f)? {
        if admissible(&m, mode)? {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(a: i64, b: i64, c: i64) -> QuadForm<i64> {
        QuadForm::new(a, b, c)
    }

    fn brute(g: &QuadForm<i64>, n: i64, box_: i64) -> Vec<(i64, i64)> {
        let mut v = Vec::new();
        for x in -box_..=box_ {
            for y in -box_..=box_ {
                if g.eval(x, y).unwrap() == n {
                    v.push((x, y));
                }
            }
        }
        v.sort();
        v
    }

    fn pairs(r: &[Representation<i64>]) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = r.iter().map(|r| (r.x, r.y)).collect();
        v.sort();
        v
    }

    #[test]
    fn representation_examples() {
        assert_eq!(
            pairs(&representations(&f(1, 0, 1), 0).unwrap()),
            vec![(0, 0)]
        );
        assert_eq!(
            pairs(&representations(&f(1, 0, 5), 5).unwrap()),
            vec![(0, -1), (0, 1)]
        );
        assert!(representations(&f(2, 2, 3), 1).unwrap().is_empty());
        let r = representations(&f(1, 0, 1), 25).unwrap();
        assert_eq!(r.len(), 12);
        assert_eq!(r.iter().filter(|r| r.primitive).count(), 8);
    }

    #[test]
    fn representations_match_box_scan() {
        // forms with small coefficients have all solutions of f = n ≤ 30
        // inside a box of radius 30
        for g in [
            f(1, 0, 1),
            f(2, 2, 3),
            f(3, 2, 7),
            f(5, 4, 2),
            f(7, -13, 9),
            f(2, 1, 3),
        ] {
            for n in 0..30 {
                assert_eq!(
                    pairs(&representations(&g, n).unwrap()),
                    brute(&g, n, 30),
                    "{g} {n}"
                );
            }
        }
    }

    #[test]
    fn vectors_up_to_counts() {
        let g = f(10, 9, 3);
        let v = vectors_up_to(&g, 40).unwrap();
        let mut expect = 0;
        for n in 1..=40 {
            expect += brute(&g, n, 40).len();
        }
        assert_eq!(v.len(), expect);
        assert!(v.windows(2).all(|w| w[0].value <= w[1].value));
    }

    #[test]
    fn equivalent_examples() {
        let g = f(2, 2, 3);
        for mode in [Equivalence::Sl2, Equivalence::Gl2, Equivalence::Gamma0(5)] {
            assert!(equivalent(&g, &g, mode).unwrap().is_some());
        }
        let (p, q) = (f(1, 0, 14), f(14, 0, 1));
        let m = equivalent(&p, &q, Equivalence::Sl2).unwrap().unwrap();
        assert_eq!(m.det().unwrap(), 1);
        assert_eq!(p.transform(&m).unwrap(), q);
        let m = equivalent(&p, &q, Equivalence::Gl2).unwrap().unwrap();
        assert_eq!(p.transform(&m).unwrap(), q);
        assert!(equivalent(&f(2, 0, 7), &f(1, 0, 14), Equivalence::Gl2)
            .unwrap()
            .is_none());
        assert!(matches!(
            equivalent(&f(1, 0, 1), &f(1, 0, 2), Equivalence::Gl2),
            Err(Error::DiscriminantMismatch(-4, -8))
        ));
    }

    #[test]
    fn inverse_classes_are_gl2_but_not_sl2() {
        let (p, q) = (f(2, 1, 3), f(2, -1, 3));
        assert!(equivalent(&p, &q, Equivalence::Sl2).unwrap().is_none());
        let m = equivalent(&p, &q, Equivalence::Gl2).unwrap().unwrap();
        assert_eq!(m.det().unwrap(), -1);
    }

    #[test]
    fn gamma0_equivalence() {
        // [2,0,1] and [1,0,2] are swapped by the antidiagonal matrix, which
        // is not in Γ₀(2); no other transform between them is either.
        assert!(equivalent(&f(2, 0, 1), &f(1, 0, 2), Equivalence::Gl2)
            .unwrap()
            .is_some());
        assert!(equivalent(&f(2, 0, 1), &f(1, 0, 2), Equivalence::Gamma0(2))
            .unwrap()
            .is_none());
        let m = equivalent(&f(2, 0, 1), &f(2, 4, 3), Equivalence::Gamma0(2))
            .unwrap()
            .unwrap();
        assert_eq!(m.r % 2, 0);
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(
            automorphisms(&f(1, 0, 1), Equivalence::Gl2).unwrap().len(),
            8
        );
        assert_eq!(
            automorphisms(&f(1, 0, 1), Equivalence::Sl2).unwrap().len(),
            4
        );
        assert_eq!(
            automorphisms(&f(1, 1, 1), Equivalence::Gl2).unwrap().len(),
            12
        );
        assert_eq!(
            automorphisms(&f(1, 1, 1), Equivalence::Sl2).unwrap().len(),
            6
        );
        assert_eq!(
            automorphisms(&f(2, 1, 3), Equivalence::Gl2).unwrap().len(),
            2
        );
        assert_eq!(
            automorphisms(&f(1, 0, 5), Equivalence::Gl2).unwrap().len(),
            4
        );
        // Aut([1,0,1]) ∩ Γ₀(2) is the diagonal sign group
        assert_eq!(
            automorphisms(&f(1, 0, 1), Equivalence::Gamma0(2))
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn sl2_equivalence_agrees_with_reduction() {
        let mut forms = Vec::new();
        for a in 1..=12i64 {
            for b in -12..=12i64 {
                for c in a..=12i64 {
                    let g = f(a, b, c);
                    if g.is_positive_definite() {
                        forms.push(g);
                    }
                }
            }
        }
        for p in &forms {
            for q in forms
                .iter()
                .filter(|q| q.discriminant().unwrap() == p.discriminant().unwrap())
            {
                let same = reduce(p).unwrap().0 == reduce(q).unwrap().0;
                let w = equivalent(p, q, Equivalence::Sl2).unwrap();
                assert_eq!(w.is_some(), same, "{p} {q}");
                if let Some(m) = w {
                    assert_eq!(p.transform(&m).unwrap(), *q);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduce_preserves_value_counts(a in 1i64..40, b in -60i64..60, c in 1i64..40) {
            let g = f(a, b, c);
            prop_assume!(g.is_positive_definite());
            let r = reduce(&g).unwrap().0;
            for n in 1..25 {
                prop_assert_eq!(
                    representations(&g, n).unwrap().len(),
                    representations(&r, n).unwrap().len()
                );
            }
        }

        #[test]
        fn equivalence_witness_is_valid(a in 1i64..50, b in -50i64..50, c in 1i64..50, k in -5i64..5, l in -5i64..5) {
            let g = f(a, b, c);
            prop_assume!(g.is_positive_definite());
            let m = Mat2::new(1, k, 0, 1).mul(&Mat2::new(1, 0, l, 1)).unwrap();
            let h = g.transform(&m).unwrap();
            let w = equivalent(&g, &h, Equivalence::Sl2).unwrap().unwrap();
            prop_assert_eq!(g.transform(&w).unwrap(), h);
        }
    }
}
