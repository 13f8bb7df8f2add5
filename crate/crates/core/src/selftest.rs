//! Desk-scale invariant sweep used by the `selftest` command.

use num_bigint::BigInt;

use crate::lefschetz::{lefschetz_number, proposition_check, DEFAULT_M_RANGE};
use crate::obstruction::{case2iii_check, case2iv_check, nontrivial_intersection_report};
use crate::partitions::{binomial, box_partition_counts, partitions_of_weight_in_box};
use crate::poly::{dual_class_closed, dual_class_recursive, total_chern_class, FreeClass};
use crate::ring::{giambelli, reduce, GrassElement, RingContext, SchurClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: Vec<String>, checked: usize) -> CheckResult {
    CheckResult {
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} cases")
        } else {
            format!(
                "{} of {checked} failed; first: {}",
                failures.len(),
                failures[0]
            )
        },
    }
}

fn closed_matches_recursive() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=5 {
        for i in 0..=10 {
            count += 1;
            if dual_class_closed(i, k) != dual_class_recursive(i, k) {
                failures.push(format!("k={k} i={i}"));
            }
        }
    }
    check("dual classes: closed form = recursion", failures, count)
}

fn ideal_relations() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=4 {
        for n in (k + 1)..=6 {
            let ctx = RingContext::new(k, n).unwrap();
            for j in 1..=k {
                count += 1;
                if !reduce(&dual_class_closed(n + j, k), ctx).unwrap().is_zero() {
                    failures.push(format!("k={k} n={n} j={j}"));
                }
            }
        }
    }
    check("ideal generators reduce to zero", failures, count)
}

fn whitney() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=3 {
        for n in (k + 1)..=5 {
            let ctx = RingContext::new(k, n).unwrap();
            let dual_total = (0..=n).fold(FreeClass::zero(k), |acc, i| {
                acc.add(&dual_class_closed(i, k)).unwrap()
            });
            let prod = total_chern_class(k).mul(&dual_total).unwrap();
            for j in 1..=(n + k) {
                count += 1;
                if !reduce(&prod.homogeneous_component(j as u64), ctx)
                    .unwrap()
                    .is_zero()
                {
                    failures.push(format!("k={k} n={n} j={j}"));
                }
            }
        }
    }
    check("c * cbar = 1 in the quotient", failures, count)
}

fn betti_and_pairing() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=3 {
        for n in 1..=3 {
            let ctx = RingContext::new(k, n).unwrap();
            count += 1;
            let counts = box_partition_counts(k, n);
            let total: num_bigint::BigUint = counts.iter().sum();
            if total != binomial((k + n) as u64, k as u64) {
                failures.push(format!("betti total k={k} n={n}"));
            }
            for (i, c) in counts.iter().enumerate() {
                if *c != partitions_of_weight_in_box(i as u64, k, n).len().into() {
                    failures.push(format!("betti k={k} n={n} i={i}"));
                }
            }
            for lambda in ctx.basis() {
                let dual = lambda.complement(k, n).unwrap();
                let x = GrassElement::schur(ctx, lambda.clone()).unwrap();
                for mu in ctx.basis() {
                    if lambda.size() + mu.size() != ctx.top_degree() {
                        continue;
                    }
                    let y = GrassElement::schur(ctx, mu.clone()).unwrap();
                    let expected = if mu == dual { 1 } else { 0 };
                    if x.pairing(&y).unwrap() != BigInt::from(expected).into() {
                        failures.push(format!("pairing k={k} n={n} {lambda} {mu}"));
                    }
                }
            }
        }
    }
    check("betti numbers and Poincare duality", failures, count)
}

fn giambelli_round_trip() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=3 {
        for n in 1..=3 {
            let ctx = RingContext::new(k, n).unwrap();
            for lambda in ctx.basis() {
                count += 1;
                let g = giambelli(&lambda, k).unwrap();
                if reduce(&g, ctx).unwrap() != SchurClass::basis(ctx, lambda.clone()).unwrap() {
                    failures.push(format!("k={k} n={n} {lambda}"));
                }
            }
        }
    }
    check("giambelli reduces to its schur class", failures, count)
}

fn lefschetz() -> CheckResult {
    let report = proposition_check(8, 8, DEFAULT_M_RANGE);
    let mut failures: Vec<String> = report
        .counterexamples
        .iter()
        .map(|c| format!("k={} n={} m={} L={}", c.k, c.n, c.m, c.lefschetz))
        .collect();
    for k in 1..=8 {
        for n in 1..=8 {
            let ctx = RingContext::new(k, n).unwrap();
            if lefschetz_number(1, ctx) != BigInt::from(binomial((k + n) as u64, k as u64)) {
                failures.push(format!("euler k={k} n={n}"));
            }
            if lefschetz_number(0, ctx) != BigInt::from(1) {
                failures.push(format!("L(0) k={k} n={n}"));
            }
        }
    }
    check(
        "Lefschetz zero iff m=-1 and kn odd",
        failures,
        report.cells_checked,
    )
}

fn certificates() -> CheckResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 2..=6 {
        for n in (k + 1)..=14 {
            count += 1;
            match nontrivial_intersection_report(k, n) {
                Ok(c) => {
                    if let Err(e) = c.verify() {
                        failures.push(format!("k={k} n={n}: {e}"));
                    }
                }
                Err(e) => failures.push(format!("k={k} n={n}: {e}")),
            }
        }
    }
    for c in [case2iii_check(20), case2iv_check(20)] {
        count += 1;
        if let Err(e) = c.verify() {
            failures.push(format!("{}: {e}", c.case));
        }
    }
    check("intersection certificates verify", failures, count)
}

/// Runs every check; a failing check does not stop the others.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        closed_matches_recursive(),
        ideal_relations(),
        whitney(),
        betti_and_pairing(),
        giambelli_round_trip(),
        lefschetz(),
        certificates(),
    ]
}
