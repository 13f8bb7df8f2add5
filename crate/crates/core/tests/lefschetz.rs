use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grassmann_core::lefschetz::{
    apply_adams, fpp_classification, lefschetz_number, AdamsEndo, FppStatus, DEFAULT_M_RANGE,
};
use grassmann_core::partitions::{binomial, partitions_of_weight_in_box};
use grassmann_core::rational::Rational;
use grassmann_core::ring::{GrassElement, RingContext};

/// `sum_lambda m^|lambda|` over the box, straight from the enumeration.
fn lefschetz_by_enumeration(m: i64, k: usize, n: usize) -> BigInt {
    (0..=(k * n) as u64)
        .map(|d| {
            BigInt::from(partitions_of_weight_in_box(d, k, n).len()) * BigInt::from(m).pow(d as u32)
        })
        .sum()
}

#[test]
fn antipodal_lefschetz_number_has_a_closed_form() {
    for k in 1..=12usize {
        for n in 1..=12usize {
            let ctx = RingContext::new(k, n).unwrap();
            let l = lefschetz_number(-1, ctx);
            if k <= 8 && n <= 8 {
                assert_eq!(l, lefschetz_by_enumeration(-1, k, n), "k={k} n={n}");
            }
            if (k * n) % 2 == 1 {
                assert!(l.is_zero());
            } else {
                let expected = binomial(((k + n) / 2) as u64, (k / 2) as u64);
                assert_eq!(l, BigInt::from(expected), "k={k} n={n}");
            }
        }
    }
}

#[test]
fn summation_matches_enumeration_for_several_degrees() {
    for k in 1..=6usize {
        for n in 1..=6usize {
            let ctx = RingContext::new(k, n).unwrap();
            for m in [-3, -2, 2, 3] {
                assert_eq!(lefschetz_number(m, ctx), lefschetz_by_enumeration(m, k, n));
            }
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, ctx: RingContext) -> GrassElement {
    let basis = ctx.basis();
    let mut x = GrassElement::zero(ctx);
    for _ in 0..3 {
        let lambda = basis[rng.gen_range(0..basis.len())].clone();
        let c = Rational::new(
            rng.gen_range(-6i64..=6).into(),
            rng.gen_range(1i64..=3).into(),
        );
        x = x
            .add(&GrassElement::schur(ctx, lambda).unwrap().scale(&c))
            .unwrap();
    }
    x
}

#[test]
fn adams_maps_are_ring_endomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 1..=4usize {
        for n in 1..=4usize {
            let ctx = RingContext::new(k, n).unwrap();
            for _ in 0..5 {
                let x = random_element(&mut rng, ctx);
                let y = random_element(&mut rng, ctx);
                for m in -3..=3i64 {
                    let lhs = apply_adams(&x.cup(&y).unwrap(), m);
                    let rhs = apply_adams(&x, m).cup(&apply_adams(&y, m)).unwrap();
                    assert_eq!(lhs, rhs, "k={k} n={n} m={m}");
                    assert_eq!(AdamsEndo::new(m).apply(&x), apply_adams(&x, m));
                }
                assert_eq!(apply_adams(&x, 1), x);
            }
            let c1 = GrassElement::chern(ctx, 1).unwrap();
            assert_eq!(
                apply_adams(&c1, 5),
                c1.scale(&Rational::from_integer(5.into()))
            );
        }
    }
}

#[test]
fn verdicts_never_leave_the_classified_range() {
    for k in 1..=8usize {
        for n in 1..=40usize {
            let v = fpp_classification(k, n, DEFAULT_M_RANGE);
            let classified = if k <= 3 {
                n > k
            } else {
                n >= 2 * k * k - k - 1
            };
            match v.status {
                FppStatus::OutsideClassifiedRange => assert!(!classified),
                FppStatus::Fpp => assert!(classified && (k * n) % 2 == 0),
                FppStatus::NoFpp => {
                    assert!(classified && (k * n) % 2 == 1);
                    let at_minus_one = v.lefschetz_table.iter().find(|(m, _)| *m == -1).unwrap();
                    assert!(at_minus_one.1.is_zero());
                }
            }
        }
    }
}
