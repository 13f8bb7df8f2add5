use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use grassmann_core::linalg::rank;
use grassmann_core::partitions::{ExponentVector, Partition};
use grassmann_core::poly::{dual_class_closed, total_chern_class, FreeClass};
use grassmann_core::rational::{int, Rational};
use grassmann_core::ring::{
    expand_in_schur_basis, giambelli, reduce, GrassElement, RingContext, SchurClass,
};

/// Determinant by Gaussian elimination over Q.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= &m[col][col];
        let pivot = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let f = &row[col] / &pivot[col];
            for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                *x -= &f * p;
            }
        }
    }
    d
}

fn rpow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `s_lambda(x)` as a ratio of alternants; `x` must have distinct entries.
fn schur_by_bialternant(lambda: &Partition, x: &[Rational]) -> Rational {
    let k = x.len();
    if lambda.len() > k {
        return Rational::zero();
    }
    let alt = |shift: &dyn Fn(usize) -> u32| {
        det(x
            .iter()
            .map(|xi| {
                (0..k)
                    .map(|j| rpow(xi, shift(j) + (k - 1 - j) as u32))
                    .collect()
            })
            .collect())
    };
    alt(&|j| lambda.part(j)) / alt(&|_| 0)
}

fn elementary(x: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for xi in x {
        let mut next = vec![Rational::zero(); e.len() + 1];
        for (j, ej) in e.iter().enumerate() {
            next[j] += ej;
            next[j + 1] += ej * xi;
        }
        e = next;
    }
    e
}

fn random_poly(rng: &mut ChaCha8Rng, k: usize, max_weight: u64, terms: usize) -> FreeClass {
    let mut p = FreeClass::zero(k);
    for _ in 0..terms {
        let w = rng.gen_range(0..=max_weight);
        let monos = ExponentVector::all_of_weight(w, k);
        let alpha = monos[rng.gen_range(0..monos.len())].clone();
        let c = Rational::new(
            rng.gen_range(-5i64..=5).into(),
            rng.gen_range(1i64..=3).into(),
        );
        p = p.add(&FreeClass::monomial(k, alpha, c)).unwrap();
    }
    p
}

#[test]
fn schur_expansion_in_lambda_k_matches_bialternant_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=4usize {
        for _ in 0..15 {
            let p = random_poly(&mut rng, k, 7, 5);
            let expansion = expand_in_schur_basis(&p, None);
            for _ in 0..3 {
                let mut x: Vec<Rational> = Vec::new();
                while x.len() < k {
                    let v = Rational::new(
                        rng.gen_range(-12i64..=12).into(),
                        rng.gen_range(1i64..=4).into(),
                    );
                    if !x.contains(&v) {
                        x.push(v);
                    }
                }
                let e = elementary(&x);
                let direct = p.evaluate_at_values(&e[1..]).unwrap();
                let via_schur: Rational = expansion
                    .iter()
                    .map(|(lambda, c)| c * schur_by_bialternant(lambda, &x))
                    .sum();
                assert_eq!(direct, via_schur, "k={k} p={p}");
            }
        }
    }
}

#[test]
fn width_prune_only_drops_wide_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 1..=4usize {
        for n in 1..=5usize {
            let p = random_poly(&mut rng, k, 8, 6);
            let full = expand_in_schur_basis(&p, None);
            let boxed = expand_in_schur_basis(&p, Some(n));
            let expected: Vec<_> = full
                .iter()
                .filter(|(l, _)| l.part(0) as usize <= n)
                .collect();
            assert_eq!(boxed.iter().collect::<Vec<_>>(), expected);
            assert!(full.keys().all(|l| l.len() <= k));
        }
    }
}

#[test]
fn whitney_identity_holds_in_the_quotient() {
    for k in 1..=5usize {
        for n in (k + 1)..=8usize {
            let ctx = RingContext::new(k, n).unwrap();
            let dual_total = (0..=n).fold(FreeClass::zero(k), |acc, i| {
                acc.add(&dual_class_closed(i, k)).unwrap()
            });
            let prod = total_chern_class(k).mul(&dual_total).unwrap();
            for j in 1..=(n + k) as u64 {
                assert!(
                    reduce(&prod.homogeneous_component(j), ctx)
                        .unwrap()
                        .is_zero(),
                    "k={k} n={n} j={j}"
                );
            }
        }
    }
}

#[test]
fn giambelli_round_trip() {
    for k in 1..=5usize {
        for n in 1..=5usize {
            let ctx = RingContext::new(k, n).unwrap();
            for lambda in ctx.basis() {
                let g = giambelli(&lambda, k).unwrap();
                assert_eq!(
                    reduce(&g, ctx).unwrap(),
                    SchurClass::basis(ctx, lambda.clone()).unwrap(),
                    "{lambda}"
                );
            }
        }
    }
}

#[test]
fn reduction_is_a_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for k in 1..=4usize {
        for n in 1..=4usize {
            let ctx = RingContext::new(k, n).unwrap();
            let basis: Vec<GrassElement> = ctx
                .basis()
                .into_iter()
                .map(|l| GrassElement::schur(ctx, l).unwrap())
                .collect();
            for _ in 0..4 {
                let p = random_poly(&mut rng, k, 6, 4);
                let q = random_poly(&mut rng, k, 6, 4);
                let direct = reduce(&p.mul(&q).unwrap(), ctx).unwrap();
                let schur_side = reduce(&p, ctx)
                    .unwrap()
                    .mul(&reduce(&q, ctx).unwrap())
                    .unwrap();
                assert_eq!(direct, schur_side, "k={k} n={n}");

                let x = GrassElement::from_free(ctx, p.mul(&q).unwrap()).unwrap();
                let y = GrassElement::from_free(ctx, p.clone())
                    .unwrap()
                    .cup(&GrassElement::from_free(ctx, q.clone()).unwrap())
                    .unwrap();
                for b in &basis {
                    assert_eq!(x.pairing(b).unwrap(), y.pairing(b).unwrap());
                }
            }
        }
    }
}

#[test]
fn reduction_is_injective_below_degree_n() {
    for k in 1..=5usize {
        for n in 1..=7usize {
            let ctx = RingContext::new(k, n).unwrap();
            for q in 0..=n as u64 {
                let monos = ExponentVector::all_of_weight(q, k);
                let basis: Vec<Partition> =
                    ctx.basis().into_iter().filter(|l| l.size() == q).collect();
                let rows: Vec<Vec<Rational>> = monos
                    .iter()
                    .map(|a| {
                        let r = reduce(&FreeClass::monomial(k, a.clone(), int(1)), ctx).unwrap();
                        basis.iter().map(|l| r.coeff(l)).collect()
                    })
                    .collect();
                assert_eq!(rank(rows), monos.len(), "k={k} n={n} q={q}");
            }
        }
    }
}

#[test]
fn top_class_integrates_to_one_and_others_to_zero() {
    for k in 1..=3usize {
        for n in 1..=3usize {
            let ctx = RingContext::new(k, n).unwrap();
            for lambda in ctx.basis() {
                let x = GrassElement::schur(ctx, lambda.clone()).unwrap();
                let expected = if lambda == Partition::rectangle(k, n) {
                    1
                } else {
                    0
                };
                assert_eq!(x.integrate(), int(expected));
            }
        }
    }
}

#[test]
fn multiplication_order_does_not_matter() {
    let ctx = RingContext::new(3, 4).unwrap();
    let a = GrassElement::chern(ctx, 1).unwrap();
    let b = GrassElement::chern(ctx, 2).unwrap();
    let c = GrassElement::dual(ctx, 3);
    let left = a.cup(&b).unwrap().cup(&c).unwrap();
    let right = c.cup(&b).unwrap().cup(&a).unwrap();
    assert_eq!(left, right);
    assert_eq!(left.reduced(), right.reduced());
}
