//! Elliptic curves on `A_m` and the Reider-type smoothness and very
//! ampleness tests.
//!
//! The curve `E_{x,y}` is the image of `P ↦ (xP, yλ(P))` for coprime
//! `(x, y)`; with `k = gcd(x, m)` its class is `(x²/k, xy/k, y²·m/k)` and
//! `E_{x,y}·L = q_L(y, x)/k`.

use serde::{Deserialize, Serialize};

use super::NSClass;
use crate::arith::{divisors, euler_phi, gcd};
use crate::error::{Error, Result};
use crate::forms::vectors_up_to;

/// The elliptic curve `E_{x,y}` on `A_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EllipticClass {
    pub m: i64,
    pub x: i64,
    pub y: i64,
    pub k: i64,
}

impl EllipticClass {
    pub fn new(m: i64, x: i64, y: i64) -> Result<Self> {
        if m < 1 || gcd(x, y) != 1 {
            return Err(Error::Domain(format!(
                "E_({x},{y}) needs coprime (x, y) and m ≥ 1"
            )));
        }
        Ok(Self {
            m,
            x,
            y,
            k: gcd(x, m),
        })
    }

    pub fn class(&self) -> Result<NSClass> {
        let Self { m, x, y, k } = *self;
        Ok(NSClass::new(
            m,
            x * x / k,
            x * y / k,
            y.checked_mul(y)
                .and_then(|v| v.checked_mul(m / k))
                .ok_or(Error::Overflow)?,
        ))
    }
}

/// `min_E E·L` over elliptic curves, searching vectors of `q_L` up to
/// `t·m` for `t = 1, 2, 4, …` until a curve with `E·L ≤ t` appears. Any curve
/// outside the scanned range has `E·L > t`, so the minimum is exact.
pub fn min_elliptic_intersection(l: &NSClass) -> Result<i64> {
    let mut t = 1;
    loop {
        if let Some(v) = scan(l, t)? {
            if v <= t {
                return Ok(v);
            }
        }
        t = t.checked_mul(2).ok_or(Error::Overflow)?;
    }
}

/// `min(min_E E·L, cap)`: only curves with `E·L < cap` are searched for.
pub fn min_elliptic_intersection_capped(l: &NSClass, cap: i64) -> Result<i64> {
    if cap <= 1 {
        l.require_ample()?;
        return Ok(cap);
    }
    Ok(scan(l, cap - 1)?.map_or(cap, |v| v.min(cap)))
}

/// Smallest `E·L` among curves whose vector has `q_L ≤ t·m`.
fn scan(l: &NSClass, t: i64) -> Result<Option<i64>> {
    l.require_ample()?;
    let q = l.q()?;
    let bound = t.checked_mul(l.m).ok_or(Error::Overflow)?;
    let mut best: Option<i64> = None;
    for v in vectors_up_to(&q, bound)? {
        if !v.primitive {
            continue;
        }
        // v = (y, x) in the curve's coordinates
        let e = v.value / gcd(v.y, l.m);
        best = Some(best.map_or(e, |b| b.min(e)));
    }
    Ok(best)
}

/// Orbit tag from the Reider criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitTag {
    Nonsmooth,
    SmoothMerelyAmple,
    VeryAmple,
}

impl OrbitTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            OrbitTag::Nonsmooth => "nonsmooth",
            OrbitTag::SmoothMerelyAmple => "smooth_merely_ample",
            OrbitTag::VeryAmple => "very_ample",
        }
    }
}

/// Smooth iff no elliptic curve meets `L` once.
pub fn is_smooth(l: &NSClass) -> Result<bool> {
    Ok(min_elliptic_intersection_capped(l, 2)? >= 2)
}

/// Result of the very ampleness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeryAmpleCheck {
    pub answer: bool,
    /// Set when the degree is below 5, where no abelian surface embeds in
    /// `P^{d−1}` and the answer is false regardless of curves.
    pub degree_below_five: bool,
}

/// Very ample iff `deg L ≥ 5` and every elliptic curve meets `L` at least
/// three times.
pub fn is_very_ample(l: &NSClass) -> Result<VeryAmpleCheck> {
    l.require_ample()?;
    if l.degree()? < 5 {
        return Ok(VeryAmpleCheck {
            answer: false,
            degree_below_five: true,
        });
    }
    Ok(VeryAmpleCheck {
        answer: min_elliptic_intersection_capped(l, 3)? >= 3,
        degree_below_five: false,
    })
}

pub fn classify(l: &NSClass) -> Result<OrbitTag> {
    let min = min_elliptic_intersection_capped(l, 3)?;
    Ok(match min {
        1 => OrbitTag::Nonsmooth,
        2 => OrbitTag::SmoothMerelyAmple,
        _ if l.degree()? < 5 => OrbitTag::SmoothMerelyAmple,
        _ => OrbitTag::VeryAmple,
    })
}

/// Classes of elliptic curves on `A_m` up to automorphisms:
/// `Σ_{k | m} max(1, φ(gcd(k, m/k))/2)`.
pub fn elliptic_class_count(m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "surface type m = {m} must be positive"
        )));
    }
    Ok(divisors(m)
        .into_iter()
        .map(|k| (euler_phi(gcd(k, m / k)) / 2).max(1))
        .sum())
}

/// The `k | m` with `gcd(k, m/k) = 1`, giving `A_m ≅ E_k × E_{m/k}`.
pub fn product_decompositions(m: i64) -> Result<Vec<i64>> {
    if m < 1 {
        return Err(Error::Domain(format!(
            "surface type m = {m} must be positive"
        )));
    }
    Ok(divisors(m)
        .into_iter()
        .filter(|&k| gcd(k, m / k) == 1)
        .collect())
}
