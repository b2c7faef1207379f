use nslattice::arith::{factorize, gcd};
use nslattice::forms::{
    bilinear_class_count, bilinear_two_torsion_count, class_number, compose, equivalent,
    gl2_class_number, reduce, reduced_forms, two_torsion_count, validate_discriminant,
    ClassGroupTable,
};
use nslattice::{Equivalence, Form, FormClass, Matrix, WideForm};
use proptest::prelude::*;

fn valid(n: i64) -> bool {
    validate_discriminant(-n).is_ok()
}

/// Number of odd prime divisors plus the 2-adic genus characters of `D`.
fn genus_characters(d: i64) -> u32 {
    let n = -d;
    let odd = factorize(n).iter().filter(|&&(p, _)| p > 2).count() as u32;
    if n % 4 != 0 {
        return odd;
    }
    let k = n / 4;
    odd + match k % 8 {
        3 | 7 => 0,
        1 | 2 | 5 | 6 => 1,
        4 => 1,
        0 => 2,
        _ => unreachable!(),
    }
}

#[test]
fn two_torsion_follows_genus_count() {
    for n in (3..=5000).filter(|&n| valid(n)) {
        let mu = genus_characters(-n);
        let expect = if mu == 0 { 1 } else { 1u64 << (mu - 1) };
        assert_eq!(two_torsion_count(-n).unwrap(), expect, "D={}", -n);
    }
}

#[test]
fn known_class_numbers() {
    for (d, h) in [
        (-3i64, 1),
        (-4, 1),
        (-23, 3),
        (-47, 5),
        (-71, 7),
        (-56, 4),
        (-84, 4),
        (-163, 1),
        (-420, 8),
    ] {
        assert_eq!(class_number(d).unwrap(), h, "D={d}");
    }
    assert_eq!(gl2_class_number(-23i64).unwrap(), 2);
    assert_eq!(gl2_class_number(-56i64).unwrap(), 3);
}

#[test]
fn gl2_classes_pair_inverses() {
    for n in (3..=3000).filter(|&n| valid(n)) {
        let h = class_number(-n).unwrap();
        let h2 = two_torsion_count(-n).unwrap();
        assert_eq!(gl2_class_number(-n).unwrap() * 2, h + h2, "D={}", -n);
    }
}

#[test]
fn class_groups_are_abelian_groups() {
    for n in (3..=700).filter(|&n| valid(n)) {
        let t = ClassGroupTable::build(-n).unwrap();
        let len = t.len();
        for i in 0..len {
            assert_eq!(t.compose_table[i][t.identity_index], i);
            assert_eq!(t.compose_table[i][t.inverse(i)], t.identity_index);
            assert_eq!(len % t.order(i), 0);
            for j in 0..len {
                assert_eq!(t.compose_table[i][j], t.compose_table[j][i]);
            }
        }
    }
}

#[test]
fn bilinear_counts_small() {
    // disc −4: [1,0,1]; disc −8: [1,0,2]; disc −12: [1,0,3], [2,2,2]
    assert_eq!(bilinear_class_count(1).unwrap(), 1);
    assert_eq!(bilinear_class_count(2).unwrap(), 1);
    assert_eq!(bilinear_class_count(3).unwrap(), 2);
    assert_eq!(bilinear_two_torsion_count(3).unwrap(), 2);
    // disc −20: [1,0,5], [2,2,3]
    assert_eq!(bilinear_class_count(5).unwrap(), 2);
    assert_eq!(bilinear_two_torsion_count(5).unwrap(), 2);
    // disc −92: [1,0,23], [3,±2,8], [2,2,12], [4,±2,6]
    assert_eq!(bilinear_class_count(23).unwrap(), 4);
    assert_eq!(bilinear_two_torsion_count(23).unwrap(), 2);
}

#[test]
fn wide_and_narrow_agree() {
    for n in (3..=400).filter(|&n| valid(n)) {
        assert_eq!(
            class_number(-n).unwrap(),
            class_number(-(n as i128)).unwrap()
        );
        let mut narrow = Vec::new();
        reduced_forms(-n, true, |f| {
            narrow.push(f);
            std::ops::ControlFlow::Continue(())
        })
        .unwrap();
        let mut wide: Vec<WideForm> = Vec::new();
        reduced_forms(-(n as i128), true, |f| {
            wide.push(f);
            std::ops::ControlFlow::Continue(())
        })
        .unwrap();
        let widened: Vec<Form> = wide.iter().map(|f| f.to_i64().unwrap()).collect();
        assert_eq!(narrow, widened);
    }
}

fn positive_form() -> impl Strategy<Value = Form> {
    (1i64..60, -60i64..60, 1i64..60)
        .prop_filter("positive definite", |&(a, b, c)| b * b < 4 * a * c)
        .prop_map(|(a, b, c)| Form::new(a, b, c))
}

fn unimodular() -> impl Strategy<Value = Matrix> {
    (-6i64..=6, -6i64..=6)
        .prop_filter("coprime", |&(p, r)| gcd(p, r) == 1)
        .prop_map(|(p, r)| {
            let (_, s, t) = nslattice::arith::ext_gcd(p, r);
            Matrix::new(p, -t, r, s)
        })
}

proptest! {
    #[test]
    fn reduction_is_canonical(f in positive_form(), g in unimodular()) {
        let moved = f.transform(&g).unwrap();
        let (r1, m1) = reduce(&f).unwrap();
        let (r2, _) = reduce(&moved).unwrap();
        prop_assert!(r1.is_reduced());
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(f.transform(&m1).unwrap(), r1);
        prop_assert_eq!(r1.discriminant().unwrap(), f.discriminant().unwrap());
    }

    #[test]
    fn equivalence_witness_is_valid(f in positive_form(), g in unimodular()) {
        let moved = f.transform(&g).unwrap();
        let w = equivalent(&f, &moved, Equivalence::Sl2).unwrap().expect("equivalent");
        prop_assert_eq!(w.det().unwrap(), 1);
        prop_assert_eq!(f.transform(&w).unwrap(), moved);
        let flip = Matrix::new(1, 0, 0, -1);
        let mirrored = moved.transform(&flip).unwrap();
        prop_assert!(equivalent(&f, &mirrored, Equivalence::Gl2).unwrap().is_some());
    }

    #[test]
    fn composition_is_well_defined_on_classes(
        f in positive_form(),
        g1 in unimodular(),
        g2 in unimodular(),
    ) {
        prop_assume!(f.is_primitive());
        let sq = compose(&f, &f).unwrap();
        let other = compose(&f.transform(&g1).unwrap(), &f.transform(&g2).unwrap()).unwrap();
        prop_assert_eq!(FormClass::sl2(&sq).unwrap(), FormClass::sl2(&other).unwrap());
        let inv = compose(&f, &f.opposite()).unwrap();
        prop_assert_eq!(inv, Form::principal(f.discriminant().unwrap()).unwrap());
    }
}
