//! Adams endomorphisms of `H*(G(k,n); Q)`, their Lefschetz numbers, and
//! fixed point property verdicts over the range where every graded
//! endomorphism is known to be of Adams type.
//!
//! Only Adams endomorphisms are modelled. Graded endomorphisms with
//! `h(c_1) = 0` that are not of this form are not representable here.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::partitions::box_partition_counts;
use crate::rational::Rational;
use crate::ring::{GrassElement, RingContext};

/// The endomorphism acting on `H^{2i}` as multiplication by `degree^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdamsEndo {
    pub degree: i64,
}

impl AdamsEndo {
    pub fn new(degree: i64) -> Self {
        Self { degree }
    }

    pub fn apply(&self, x: &GrassElement) -> GrassElement {
        apply_adams(x, self.degree)
    }

    pub fn lefschetz_number(&self, ctx: RingContext) -> BigInt {
        lefschetz_number(self.degree, ctx)
    }
}

pub fn apply_adams(x: &GrassElement, m: i64) -> GrassElement {
    x.scale_by_weight(&Rational::from_integer(BigInt::from(m)))
}

/// Betti numbers `b_0, b_2, ..., b_{2kn}` indexed by complex degree.
pub fn betti_numbers(ctx: RingContext) -> Vec<BigUint> {
    box_partition_counts(ctx.k(), ctx.n())
}

/// `sum_i m^i b_{2i}`: the trace of the degree-`m` Adams map summed over
/// even degrees (odd cohomology vanishes).
pub fn lefschetz_number(m: i64, ctx: RingContext) -> BigInt {
    let m = BigInt::from(m);
    let mut power = BigInt::one();
    let mut total = BigInt::zero();
    for b in betti_numbers(ctx) {
        total += &power * BigInt::from(b);
        power *= &m;
    }
    total
}

/// `(k <= 3 and n > k) or (k > 3 and n >= 2k^2 - k - 1)`.
pub fn in_classified_range(k: usize, n: usize) -> bool {
    if k <= 3 {
        n > k
    } else {
        n >= 2 * k * k - k - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FppStatus {
    #[serde(rename = "FPP")]
    Fpp,
    #[serde(rename = "NoFPP")]
    NoFpp,
    OutsideClassifiedRange,
}

impl FppStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            FppStatus::Fpp => "FPP",
            FppStatus::NoFpp => "NoFPP",
            FppStatus::OutsideClassifiedRange => "OutsideClassifiedRange",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FppVerdict {
    pub k: usize,
    pub n: usize,
    pub status: FppStatus,
    /// `(m, L(m))` for each `m` of the requested window.
    #[serde(serialize_with = "serialize_table")]
    pub lefschetz_table: Vec<(i64, BigInt)>,
    pub range_rule: String,
}

fn serialize_table<S: serde::Serializer>(
    table: &[(i64, BigInt)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(table.len()))?;
    for (m, l) in table {
        seq.serialize_element(&serde_json::json!({"m": m, "lefschetz": l.to_string()}))?;
    }
    seq.end()
}

pub const DEFAULT_M_RANGE: RangeInclusive<i64> = -5..=5;

pub fn fpp_classification(k: usize, n: usize, m_range: RangeInclusive<i64>) -> FppVerdict {
    let ctx = RingContext::new(k, n).expect("k, n >= 1");
    let lefschetz_table = m_range.map(|m| (m, lefschetz_number(m, ctx))).collect();
    let (status, range_rule) = if !in_classified_range(k, n) {
        (
            FppStatus::OutsideClassifiedRange,
            if k <= 3 {
                format!("outside: k={k} <= 3 requires n > k")
            } else {
                format!(
                    "outside: k={k} > 3 requires n >= 2k^2-k-1 = {}",
                    2 * k * k - k - 1
                )
            },
        )
    } else {
        let rule = if k <= 3 {
            "GH3-Thm1: k <= 3, n > k; all endomorphisms Adams; FPP iff kn even"
        } else {
            "GH3-Thm1: k > 3, n >= 2k^2-k-1; all endomorphisms Adams; FPP iff kn even"
        };
        let status = if (k * n).is_multiple_of(2) {
            FppStatus::Fpp
        } else {
            FppStatus::NoFpp
        };
        (status, rule.to_string())
    };
    FppVerdict {
        k,
        n,
        status,
        lefschetz_table,
        range_rule,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub k: usize,
    pub n: usize,
    pub m: i64,
    pub lefschetz: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub cells_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl PropositionReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `L(m) = 0 <=> (m = -1 and kn odd)` over the whole grid.
pub fn proposition_check(
    k_max: usize,
    n_max: usize,
    m_range: RangeInclusive<i64>,
) -> PropositionReport {
    let mut cells_checked = 0;
    let mut counterexamples = Vec::new();
    for k in 1..=k_max {
        for n in 1..=n_max {
            let ctx = RingContext::new(k, n).expect("k, n >= 1");
            for m in m_range.clone() {
                cells_checked += 1;
                let l = lefschetz_number(m, ctx);
                let predicted_zero = m == -1 && (k * n) % 2 == 1;
                if l.is_zero() != predicted_zero {
                    counterexamples.push(Counterexample {
                        k,
                        n,
                        m,
                        lefschetz: l.to_string(),
                    });
                }
            }
        }
    }
    PropositionReport {
        cells_checked,
        counterexamples,
    }
}

pub const SWEEP_CSV_HEADER: &str = "k,n,m,lefschetz,kn_parity,in_classified_range,verdict";

/// One CSV row per `(k, n, m)` cell in lexicographic order.
pub fn sweep_csv(k_max: usize, n_max: usize, m_range: RangeInclusive<i64>) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for k in 1..=k_max {
        for n in 1..=n_max {
            let verdict = fpp_classification(k, n, m_range.clone());
            let parity = if (k * n) % 2 == 0 { "even" } else { "odd" };
            for (m, l) in &verdict.lefschetz_table {
                let _ = writeln!(
                    out,
                    "{k},{n},{m},{l},{parity},{},{}",
                    in_classified_range(k, n),
                    verdict.status.as_str()
                );
            }
        }
    }
    out
}
