//! Brute-force orbit enumeration and the formula-versus-enumeration harness.
//!
//! Ample classes of degree `d` on `A_m` correspond to positive definite forms
//! in `V_m` of discriminant `−4md`, and `Aut(A_m)`-orbits to `Γ₀(m)`-classes
//! of such forms. Inside one GL2-class with reduced form `f`, the forms are
//! `f∘γ`, and `f∘γ` depends up to `Γ₀(m)` only on the coset `γΓ₀(m)`. So the
//! orbits are found by running over the finitely many cosets for every
//! reduced form and merging `Γ₀(m)`-equivalent results.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{divisors, ext_gcd, gcd, is_prime, is_squarefree, omega};
use crate::counting::{
    count_nonsmooth, count_very_ample, dprime_formula, exists_smooth, exists_very_ample,
    in_formula_regime, polcount_formula,
};
use crate::error::{Error, Result};
use crate::forms::{
    compose, equivalent, extend_class, matrix_primitive_classes, reduced_forms, vectors_up_to,
    Equivalence, FormClass, Mat2, QuadForm,
};
use crate::gamma0;
use crate::surface::{
    atkin_lehner, classify, elliptic_class_count, min_elliptic_intersection_capped,
    product_decompositions, psi, psi_fiber_size, AtkinLehnerOp, NSClass, OrbitTag, PsiImage,
};
use crate::Form;

/// Largest `m·d` accepted by [`enumerate_orbits`].
pub const ORBIT_GUARD: i64 = 10_000;

/// One `Aut(A_m)`-orbit of ample classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: NSClass,
    pub tag: OrbitTag,
    /// `min E·L` over elliptic curves, capped at 3.
    pub min_intersection: i64,
    pub psi_image: Option<PsiImage>,
    #[serde(skip)]
    key: Form,
}

impl Orbit {
    /// The reduced GL2 representative of `q_L`.
    pub fn gl2_key(&self) -> Form {
        self.key
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub m: i64,
    pub d: i64,
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    pub fn total(&self) -> i64 {
        self.orbits.len() as i64
    }

    pub fn count(&self, tag: OrbitTag) -> i64 {
        self.orbits.iter().filter(|o| o.tag == tag).count() as i64
    }

    pub fn nonsmooth(&self) -> i64 {
        self.count(OrbitTag::Nonsmooth)
    }

    pub fn smooth(&self) -> i64 {
        self.total() - self.nonsmooth()
    }

    pub fn very_ample(&self) -> i64 {
        self.count(OrbitTag::VeryAmple)
    }

    pub fn smooth_merely_ample(&self) -> i64 {
        self.count(OrbitTag::SmoothMerelyAmple)
    }

    /// Index of the orbit containing `l`, if any.
    pub fn locate(&self, l: &NSClass) -> Result<Option<usize>> {
        if l.m != self.m || !l.is_ample() || l.degree()? != self.d {
            return Ok(None);
        }
        let q = l.q()?;
        let key = FormClass::gl2(&q)?.canonical;
        for (i, o) in self.orbits.iter().enumerate() {
            if o.key == key
                && equivalent(&o.representative.q()?, &q, Equivalence::Gamma0(self.m))?.is_some()
            {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

fn in_vm(q: &Form, m: i64) -> bool {
    q.a % m == 0 && q.b % (2 * m) == 0
}

/// One determinant 1 matrix per coset of `Γ₀(m)` in `GL2(Z)`, each with a
/// first column `u` of smallest possible `f(u)` in its coset.
fn short_coset_reps(f: &Form, m: i64) -> Result<Vec<Mat2<i64>>> {
    let needed = gamma0::index(m)? as usize;
    let mut best: BTreeMap<(i64, i64), (i64, i64)> = BTreeMap::new();
    let mut bound = f.c.max(1);
    while best.len() < needed {
        for v in vectors_up_to(f, bound)? {
            if v.primitive {
                best.entry(gamma0::normalize(m, v.x, v.y))
                    .or_insert((v.x, v.y));
            }
        }
        bound = bound.checked_mul(2).ok_or(Error::Overflow)?;
    }
    Ok(best
        .into_values()
        .map(|(x, y)| {
            let (_, s, t) = ext_gcd(x, y);
            Mat2::new(x, -t, y, s)
        })
        .collect())
}

/// Move `[A, B, C]` by an upper unipotent matrix so that `−A < B ≤ A`.
fn shrink(q: &Form) -> Result<Form> {
    let two_a = 2 * q.a;
    let t = (q.a - q.b).div_euclid(two_a);
    q.transform(&Mat2::new(1, t, 0, 1))
}

fn make_orbit(l: NSClass, key: Form) -> Result<Orbit> {
    let d = l.degree()?;
    Ok(Orbit {
        representative: l,
        tag: classify(&l)?,
        min_intersection: min_elliptic_intersection_capped(&l, 3)?,
        psi_image: if is_squarefree(d) {
            Some(psi(&l)?)
        } else {
            None
        },
        key,
    })
}

/// All `Aut(A_m)`-orbits of ample classes of degree `d`.
pub fn enumerate_orbits(m: i64, d: i64) -> Result<OrbitReport> {
    if m < 1 || d < 1 {
        return Err(Error::Domain(format!(
            "m = {m} and d = {d} must be positive"
        )));
    }
    if m.checked_mul(d).is_none_or(|md| md > ORBIT_GUARD) {
        return Err(Error::Guard(format!("m·d = {m}·{d} exceeds {ORBIT_GUARD}")));
    }
    let mut classes = Vec::new();
    reduced_forms(-4 * m * d, false, |f| {
        if f.b >= 0 && f.b % 2 == 0 {
            classes.push(f);
        }
        ControlFlow::Continue(())
    })?;
    let mut orbits = Vec::new();
    for f in classes {
        let mut reps: Vec<Form> = Vec::new();
        for g in short_coset_reps(&f, m)? {
            let h = f.transform(&g)?;
            if !in_vm(&h, m) {
                continue;
            }
            let h = shrink(&h)?;
            let mut seen = false;
            for r in &reps {
                if equivalent(r, &h, Equivalence::Gamma0(m))?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                reps.push(h);
            }
        }
        for h in reps {
            orbits.push(make_orbit(NSClass::from_form(&h, m)?, f)?);
        }
    }
    orbits.sort_by_key(|o| {
        let l = o.representative;
        (o.tag, l.a, l.c, l.b)
    });
    Ok(OrbitReport { m, d, orbits })
}

/// Outcome of scanning all classes with `1 ≤ a ≤ B`, `|b| ≤ B` at two
/// bounds `B` and `2B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Saturation {
    pub bound: i64,
    pub scanned: usize,
    pub unmatched: usize,
    pub orbits_hit: usize,
    pub orbits_hit_doubled: usize,
    pub pass: bool,
}

/// `2·max(a, |b|)` over the representatives.
pub fn default_saturation_bound(report: &OrbitReport) -> i64 {
    2 * report
        .orbits
        .iter()
        .map(|o| o.representative.a.max(o.representative.b.abs()))
        .max()
        .unwrap_or(1)
}

fn scan_classes(report: &OrbitReport, bound: i64) -> Result<(usize, usize, BTreeSet<usize>)> {
    let (m, d) = (report.m, report.d);
    let mut scanned = 0;
    let mut unmatched = 0;
    let mut hits = BTreeSet::new();
    for a in 1..=bound {
        for b in -bound..=bound {
            let num = d + b * b * m;
            if num % a != 0 {
                continue;
            }
            let l = NSClass::new(m, a, b, num / a);
            scanned += 1;
            match report.locate(&l)? {
                Some(i) => {
                    hits.insert(i);
                }
                None => unmatched += 1,
            }
        }
    }
    Ok((scanned, unmatched, hits))
}

/// Every scanned class must lie in a listed orbit, and doubling the scan
/// bound must not reach new orbits.
pub fn saturation_check(report: &OrbitReport, bound: i64) -> Result<Saturation> {
    let (s1, u1, h1) = scan_classes(report, bound)?;
    let (s2, u2, h2) = scan_classes(report, 2 * bound)?;
    Ok(Saturation {
        bound,
        scanned: s1 + s2,
        unmatched: u1 + u2,
        orbits_hit: h1.len(),
        orbits_hit_doubled: h2.len(),
        pass: u1 == 0 && u2 == 0 && h1 == h2,
    })
}

/// Orbits of determinant ±1 `Γ₀(m)` on `P¹(Q)`. A cusp `γ(∞)` determines the
/// coset `Γ₀(m)γ` up to the stabilizer of `∞` on the right, so the orbits are
/// those of `(c, d) ↦ (c, c + d), (−c, d), (c, −d)` on bottom rows in `P¹(Z/m)`.
pub fn cusp_orbits(m: i64) -> Result<i64> {
    let pts = gamma0::points(m)?;
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &start in &pts {
        if seen.contains(&start) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen.insert(start);
        while let Some((c, d)) = stack.pop() {
            for (x, y) in [(c, c + d), (-c, d), (c, -d)] {
                let n = gamma0::normalize(m, x, y);
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
    }
    Ok(orbits)
}

/// One comparison between a closed formula and the enumeration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub m: i64,
    /// 0 for checks that depend on `m` only.
    pub d: i64,
    pub check: String,
    pub formula: Value,
    pub oracle: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub cells: Vec<Cell>,
    pub all_pass: bool,
}

struct Cells(Vec<Cell>);

impl Cells {
    fn push(&mut self, m: i64, d: i64, check: &str, formula: Value, oracle: Value) {
        let pass = formula == oracle;
        self.0.push(Cell {
            m,
            d,
            check: check.to_string(),
            formula,
            oracle,
            pass,
        });
    }
}

/// The class of `f_k = (1/g)[k, 0, (m/k)d]` with `g = gcd(k, d)`.
pub fn f_k_class(m: i64, d: i64, k: i64) -> Result<FormClass<i64>> {
    let g = gcd(k, d);
    FormClass::gl2(&QuadForm::new(k / g, 0, (m / k) * d / g))
}

/// `e_g(Ψ(L))·[f_k]` as a GL2 class, for `q_L` primitive.
pub fn equivariance_prediction(l: &NSClass, k: i64) -> Result<FormClass<i64>> {
    let image = psi(l)?;
    let g = gcd(k, l.degree()?);
    let e = extend_class(&image.class.canonical, g)?;
    let fk = f_k_class(l.m, l.degree()?, k)?;
    FormClass::gl2(&compose(&e.canonical, &fk.canonical)?)
}

fn two_torsion_image(o: &Orbit) -> bool {
    o.psi_image.is_some_and(|p| p.class.is_two_torsion())
}

fn odd_prime_part(d: i64) -> Option<i64> {
    if is_prime(d) && d > 2 {
        Some(d)
    } else if d % 2 == 0 && is_prime(d / 2) && d / 2 > 2 {
        Some(d / 2)
    } else {
        None
    }
}

/// Checks for one `(m, d)` cell.
pub fn verify_cell(m: i64, d: i64) -> Result<Vec<Cell>> {
    let r = enumerate_orbits(m, d)?;
    let mut cells = Cells(Vec::new());
    let sq = is_squarefree(d);
    let coprime = gcd(m, d) == 1;

    cells.push(
        m,
        d,
        "nonsmooth",
        json!(count_nonsmooth(m, d)?),
        json!(r.nonsmooth()),
    );
    if in_formula_regime(m, d) {
        let n = polcount_formula(m, d)?;
        cells.push(m, d, "polcount", json!(n), json!(r.total()));
        cells.push(
            m,
            d,
            "smooth",
            json!(n - count_nonsmooth(m, d)?),
            json!(r.smooth()),
        );
    }
    if (d == 1 || is_prime(d)) && coprime {
        cells.push(
            m,
            d,
            "dprime",
            json!(dprime_formula(m, d)?),
            json!(r.smooth()),
        );
    }
    if d >= 5 && is_prime(d) && coprime {
        cells.push(
            m,
            d,
            "vacount",
            json!(count_very_ample(m, d)?),
            json!(r.very_ample()),
        );
    }
    cells.push(
        m,
        d,
        "exists_smooth",
        json!(exists_smooth(m, d)?.answer),
        json!(r.smooth() > 0),
    );
    if d >= 5 {
        cells.push(
            m,
            d,
            "exists_very_ample",
            json!(exists_very_ample(m, d)?.answer),
            json!(r.very_ample() > 0),
        );
    }
    if d >= 5 && odd_prime_part(d).is_some() && (d % 2 == 1 || m % 2 == 1) {
        let merely: Vec<_> = r
            .orbits
            .iter()
            .filter(|o| o.tag != OrbitTag::VeryAmple)
            .collect();
        let two = merely.iter().filter(|o| two_torsion_image(o)).count();
        cells.push(m, d, "merely_two_torsion", json!(merely.len()), json!(two));
    }
    if d >= 5 && d % 2 == 1 && sq {
        let expect = if m % 2 == 1 || m % 8 == 0 {
            1i64 << omega(m)
        } else {
            0
        };
        let name = match (m % 2, m % 8) {
            (1, _) => "oddm",
            (_, 0) => "divby8",
            _ => "mevennot8",
        };
        cells.push(m, d, name, json!(expect), json!(r.smooth_merely_ample()));
    }
    if sq {
        let decomps = product_decompositions(m)?;
        let mut tried = 0;
        let mut held = 0;
        for o in &r.orbits {
            let l = o.representative;
            if !l.q()?.is_primitive() {
                continue;
            }
            for &k in &decomps {
                tried += 1;
                let w = atkin_lehner(&AtkinLehnerOp::new(m, k)?, &l)?;
                let image = psi(&w)?;
                if image.g == gcd(k, d) && image.class == equivariance_prediction(&l, k)? {
                    held += 1;
                }
            }
        }
        cells.push(m, d, "equivariance", json!(tried), json!(held));
    }
    if sq && coprime && (m * d) % 4 != 3 {
        let mut tried = 0;
        let mut held = 0;
        for o in &r.orbits {
            let l = o.representative;
            let image = psi(&l)?;
            for k in product_decompositions(m)? {
                tried += 1;
                let w = atkin_lehner(&AtkinLehnerOp::new(m, k)?, &l)?;
                let Some(j) = r.locate(&w)? else { continue };
                let target = r.orbits[j].psi_image.expect("squarefree degree").class;
                let fk = f_k_class(m, d, k)?;
                let predicted = FormClass::gl2(&compose(&image.class.canonical, &fk.canonical)?)?;
                if target == predicted {
                    held += 1;
                }
            }
        }
        cells.push(m, d, "diagram", json!(tried), json!(held));
    }
    if sq && coprime {
        let expected: BTreeSet<Form> = product_decompositions(m)?
            .into_iter()
            .map(|k| f_k_class(m, d, k).map(|c| c.canonical))
            .collect::<Result<_>>()?;
        let found: BTreeSet<Form> = r
            .orbits
            .iter()
            .filter(|o| o.tag == OrbitTag::Nonsmooth)
            .map(|o| o.psi_image.expect("squarefree degree").class.canonical)
            .collect();
        cells.push(m, d, "nonsmooth_images", json!(expected), json!(found));
    }
    if sq {
        let mut by_image: BTreeMap<(i64, Form), i64> = BTreeMap::new();
        for o in &r.orbits {
            let p = o.psi_image.expect("squarefree degree");
            *by_image.entry((p.g, p.class.canonical)).or_default() += 1;
        }
        let mut predicted = Vec::new();
        for &(g, class) in by_image.keys() {
            predicted.push(psi_fiber_size(m, d, g, &class)?);
        }
        let measured: Vec<i64> = by_image.values().copied().collect();
        cells.push(m, d, "fiber_sizes", json!(predicted), json!(measured));

        let mut sum = 0;
        for g in divisors(gcd(m, d)) {
            for c in matrix_primitive_classes(m * d / (g * g))? {
                sum += psi_fiber_size(m, d, g, &c.canonical)?;
            }
        }
        cells.push(m, d, "fiber_sum", json!(sum), json!(r.total()));
    }
    let sat = saturation_check(&r, default_saturation_bound(&r))?;
    cells.push(
        m,
        d,
        "saturation",
        json!({"unmatched": 0, "orbits_hit_doubled": sat.orbits_hit}),
        json!({"unmatched": sat.unmatched, "orbits_hit_doubled": sat.orbits_hit_doubled}),
    );
    Ok(cells.0)
}

/// Every formula-versus-enumeration check for `m ≤ m_max`, `d ≤ d_max`, plus
/// the elliptic curve count against cusp orbits for each `m`.
pub fn verify(m_max: i64, d_max: i64) -> Result<VerifyReport> {
    if m_max < 1 || d_max < 1 {
        return Err(Error::Domain("bounds must be positive".into()));
    }
    if m_max.checked_mul(d_max).is_none_or(|x| x > ORBIT_GUARD) {
        return Err(Error::Guard(format!("m_max·d_max exceeds {ORBIT_GUARD}")));
    }
    let mut cells = Vec::new();
    for m in 1..=m_max {
        let mut c = Cells(Vec::new());
        c.push(
            m,
            0,
            "cusps",
            json!(elliptic_class_count(m)?),
            json!(cusp_orbits(m)?),
        );
        cells.extend(c.0);
        for d in 1..=d_max {
            cells.extend(verify_cell(m, d)?);
        }
    }
    let all_pass = cells.iter().all(|c| c.pass);
    Ok(VerifyReport { cells, all_pass })
}
