//! The congruence subgroup `Γ₀(m)` of determinant ±1 matrices with lower-left
//! entry divisible by `m`, and its cosets in `GL2(Z)`.
//!
//! A left coset `γΓ₀(m)` is determined by the first column of `γ` read as a
//! point of the projective line `P¹(Z/m)`, so cosets are indexed by
//! normalized points `(p : r)`.

use crate::arith::{ext_gcd, factorize, gcd};
use crate::error::{Error, Result};
use crate::forms::Mat2;

fn require_level(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain(format!("level {m} must be positive")));
    }
    Ok(())
}

pub fn contains(m: i64, g: &Mat2<i64>) -> bool {
    g.r % m == 0 && g.det().is_ok_and(|d| d.abs() == 1)
}

/// `[GL2(Z) : Γ₀(m)] = m ∏_{p | m} (1 + 1/p)`.
pub fn index(m: i64) -> Result<i64> {
    require_level(m)?;
    Ok(factorize(m)
        .iter()
        .fold(m, |acc, &(p, _)| acc / p * (p + 1)))
}

fn units(m: i64) -> Vec<i64> {
    (0..m).filter(|&u| gcd(u, m) == 1).collect()
}

/// Smallest representative of `(p : r)` under scaling by units mod `m`.
pub fn normalize(m: i64, p: i64, r: i64) -> (i64, i64) {
    if m == 1 {
        return (0, 0);
    }
    units(m)
        .into_iter()
        .map(|u| ((u * p).rem_euclid(m), (u * r).rem_euclid(m)))
        .min()
        .expect("1 is a unit")
}

/// The points of `P¹(Z/m)` in normalized form, sorted.
pub fn points(m: i64) -> Result<Vec<(i64, i64)>> {
    require_level(m)?;
    if m == 1 {
        return Ok(vec![(0, 0)]);
    }
    let us = units(m);
    let n = m as usize;
    let mut seen = vec![false; n * n];
    let mut pts = Vec::new();
    for p in 0..m {
        for r in 0..m {
            if seen[p as usize * n + r as usize] || gcd(gcd(p, r), m) != 1 {
                continue;
            }
            pts.push((p, r));
            for &u in &us {
                seen[((u * p) % m) as usize * n + ((u * r) % m) as usize] = true;
            }
        }
    }
    Ok(pts)
}

/// A determinant 1 matrix whose first column reduces to `(p : r)` mod `m`.
pub fn lift(m: i64, p: i64, r: i64) -> Result<Mat2<i64>> {
    require_level(m)?;
    if m == 1 {
        return Ok(Mat2::identity());
    }
    if gcd(gcd(p, r), m) != 1 {
        return Err(Error::Domain(format!(
            "({p} : {r}) is not a point of P¹(Z/{m})"
        )));
    }
    let r = if r.rem_euclid(m) == 0 {
        m
    } else {
        r.rem_euclid(m)
    };
    let p0 = p.rem_euclid(m);
    let p = (0..)
        .map(|k| p0 + k * m)
        .find(|&x| gcd(x, r) == 1)
        .expect("a coprime lift exists");
    let (_, s, t) = ext_gcd(p, r);
    Ok(Mat2::new(p, -t, r, s))
}

/// One matrix per left coset `γΓ₀(m)` of `GL2(Z)`, in the order of [`points`].
pub fn coset_reps(m: i64) -> Result<Vec<Mat2<i64>>> {
    points(m)?.into_iter().map(|(p, r)| lift(m, p, r)).collect()
}

/// The coset of `γ`, as the normalized first column.
pub fn coset_of(m: i64, g: &Mat2<i64>) -> (i64, i64) {
    normalize(m, g.p, g.r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_point_count() {
        for m in 1..=60 {
            assert_eq!(points(m).unwrap().len() as i64, index(m).unwrap(), "m={m}");
        }
        assert_eq!(index(2).unwrap(), 3);
        assert_eq!(index(4).unwrap(), 6);
        assert_eq!(index(6).unwrap(), 12);
    }

    #[test]
    fn coset_reps_are_distinct_cosets() {
        for m in 1..=30 {
            let reps = coset_reps(m).unwrap();
            for (i, g) in reps.iter().enumerate() {
                assert_eq!(g.det().unwrap(), 1);
                for h in &reps[i + 1..] {
                    // g⁻¹h ∉ Γ₀(m)
                    let q = g.inverse_unimodular().unwrap().mul(h).unwrap();
                    assert!(!contains(m, &q), "m={m} {g:?} {h:?}");
                }
            }
        }
    }

    #[test]
    fn coset_of_is_right_invariant() {
        let m = 12;
        let delta = Mat2::new(5, 3, 12, 7);
        assert!(contains(m, &delta));
        for g in coset_reps(m).unwrap() {
            let gd = g.mul(&delta).unwrap();
            assert_eq!(coset_of(m, &g), coset_of(m, &gd));
        }
    }
}
