use grassmann_core::obstruction::{
    case2iii_system, case2iv_system, dispatch_case, nontrivial_intersection_report, CaseTag,
    ProductSystem,
};
use grassmann_core::partitions::ExponentVector;
use grassmann_core::poly::dual_class_closed;
use num_traits::Signed;

/// Every integer tuple in `[-B, B]^vars`, with `B` the largest magnitude.
fn naive_solutions(sys: &ProductSystem) -> Vec<Vec<i64>> {
    let bound = sys
        .equations
        .iter()
        .map(|e| e.magnitude as i64)
        .max()
        .unwrap();
    let idx = |name: &str| sys.unknowns.iter().position(|u| *u == name).unwrap();
    let eqs: Vec<(usize, usize, i64)> = sys
        .equations
        .iter()
        .map(|e| (idx(e.left), idx(e.right), e.magnitude as i64))
        .collect();
    let vars = sys.unknowns.len();
    let width = (2 * bound + 1) as u64;
    let mut found = Vec::new();
    for code in 0..width.pow(vars as u32) {
        let mut c = code;
        let values: Vec<i64> = (0..vars)
            .map(|_| {
                let v = (c % width) as i64 - bound;
                c /= width;
                v
            })
            .collect();
        if eqs
            .iter()
            .all(|&(a, b, m)| (values[a] * values[b]).abs() == m)
        {
            found.push(values);
        }
    }
    found
}

#[test]
fn product_systems_agree_with_naive_search() {
    for (sys, l) in [
        (case2iii_system(2), 2),
        (case2iii_system(4), 4),
        (case2iv_system(1), 1),
        (case2iv_system(3), 3),
    ] {
        let naive = naive_solutions(&sys);
        let solver = sys.solve();
        assert_eq!(naive.len(), solver.solutions.len(), "l={l}");
        assert!(naive.is_empty(), "l={l}: {naive:?}");
    }
}

#[test]
fn equation_magnitudes_come_from_the_dual_class() {
    for l in 1..=9u32 {
        let sys = if l % 2 == 0 {
            case2iii_system(l)
        } else {
            case2iv_system(l)
        };
        let cbar = dual_class_closed((3 * l + 4) as usize, 4);
        for e in &sys.equations {
            let c = cbar
                .coeff(&ExponentVector::new(e.monomial.clone()))
                .unwrap();
            assert_eq!(
                c.abs(),
                grassmann_core::rational::int(e.magnitude as i64),
                "l={l} {:?}",
                e.monomial
            );
        }
    }
}

#[test]
fn dispatch_partitions_the_hypothesis_range() {
    for k in 2..=9usize {
        for n in (k + 1)..=40usize {
            let case = dispatch_case(k, n).unwrap();
            let (l, r) = (n / (k - 1), n % (k - 1));
            let expected = if k <= 3 {
                CaseTag::Case1
            } else if r != 1 {
                CaseTag::Case2i
            } else if k > 4 {
                CaseTag::Case2ii
            } else if (l - 1) % 2 == 0 {
                CaseTag::Case2iii
            } else {
                CaseTag::Case2iv
            };
            assert_eq!(case, expected, "k={k} n={n}");
        }
    }
}

#[test]
fn certificates_verify_and_serialize_beyond_the_acceptance_range() {
    for k in 2..=8usize {
        for n in (k + 1)..=26usize {
            let cert = nontrivial_intersection_report(k, n).unwrap();
            cert.verify().unwrap_or_else(|e| panic!("k={k} n={n}: {e}"));
            let json = cert.to_json();
            assert_eq!(json["k"], k);
            assert_eq!(json["n"], n);
            assert_eq!(json["case"], cert.case.to_string());
            assert!(json["assumptions"]
                .as_array()
                .is_some_and(|a| !a.is_empty()));
        }
    }
}

#[test]
fn corrupted_certificates_fail_verification() {
    let good = nontrivial_intersection_report(6, 16).unwrap();
    let mut wrong_coeff = good.clone();
    wrong_coeff.coefficient = Some(grassmann_core::rational::int(-12));
    assert!(wrong_coeff.verify().is_err());

    let mut wrong_case = good.clone();
    wrong_case.case = CaseTag::Case2i;
    assert!(wrong_case.verify().is_err());

    let mut no_witness = nontrivial_intersection_report(3, 5).unwrap();
    no_witness.witness = None;
    no_witness.coefficient = None;
    assert!(no_witness.verify().is_err());
}
