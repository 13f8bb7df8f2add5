//! Graded polynomial arithmetic in `Q[c_1, ..., c_k]` and the dual Chern
//! classes `cbar_i`, the graded pieces of the formal inverse of
//! `1 + c_1 + ... + c_k`.
//!
//! # Text rendering
//!
//! [`FreeClass`] implements `Display` with a fixed format:
//!
//! * the zero polynomial is `0`;
//! * terms appear in descending canonical (graded revlex) order;
//! * a monomial is `c1^a1*c2^a2*...`, omitting zero exponents and writing
//!   `ci` for a unit exponent;
//! * a coefficient is `num` or `num/den` (reduced, positive denominator)
//!   joined to its monomial by `*`; a unit coefficient is omitted;
//! * later terms are joined by ` + ` or ` - `;
//! * a negative leading term is written `-<num>[/<den>]*<monomial>` with the
//!   magnitude always spelled out, so `-1*c1^2` and never `-c1^2`. This keeps
//!   the output parseable by the expression grammar, where unary minus binds
//!   tighter than `^`.
//!
//! For example `cbar_3` with `k = 2` renders as `-1*c1^3 + 2*c1*c2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::ExponentVector;
use crate::rational::{self, Rational};

/// A polynomial in the Chern generators `c_1, ..., c_k` with rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeClass {
    ambient_k: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl FreeClass {
    pub fn zero(k: usize) -> Self {
        Self {
            ambient_k: k,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, rational::one())
    }

    pub fn constant(k: usize, c: Rational) -> Self {
        Self::monomial(k, ExponentVector::zero(k), c)
    }

    /// The generator `c_i`; zero when `i > k` and one when `i = 0`.
    pub fn generator(k: usize, i: usize) -> Self {
        match i {
            0 => Self::one(k),
            i if i > k => Self::zero(k),
            i => Self::monomial(k, ExponentVector::unit(k, i), rational::one()),
        }
    }

    pub fn monomial(k: usize, alpha: ExponentVector, c: Rational) -> Self {
        assert_eq!(alpha.ambient_k(), k, "exponent vector length must equal k");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Self {
            ambient_k: k,
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut out = Self::zero(k);
        for (alpha, c) in terms {
            if alpha.ambient_k() != k {
                return Err(Error::AmbientMismatch {
                    left: k,
                    right: alpha.ambient_k(),
                });
            }
            out.add_term(alpha, c);
        }
        Ok(out)
    }

    pub fn ambient_k(&self) -> usize {
        self.ambient_k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter().rev()
    }

    fn add_term(&mut self, alpha: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_k != other.ambient_k {
            return Err(Error::AmbientMismatch {
                left: self.ambient_k,
                right: other.ambient_k,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.ambient_k);
        }
        Self {
            ambient_k: self.ambient_k,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_truncated(other, None)
    }

    /// Product keeping only terms of weight at most `max_weight`.
    pub fn mul_truncated(&self, other: &Self, max_weight: Option<u64>) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = Self::zero(self.ambient_k);
        for (a, x) in &self.terms {
            let wa = a.weight();
            for (b, y) in &other.terms {
                if let Some(max) = max_weight {
                    if wa + b.weight() > max {
                        continue;
                    }
                }
                out.add_term(a.add(b), x * y);
            }
        }
        Ok(out)
    }

    /// Coefficient of `c^alpha`, zero if absent.
    pub fn coeff(&self, alpha: &ExponentVector) -> Result<Rational> {
        if alpha.ambient_k() != self.ambient_k {
            return Err(Error::AmbientMismatch {
                left: self.ambient_k,
                right: alpha.ambient_k(),
            });
        }
        Ok(self
            .terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(rational::zero))
    }

    /// The terms of weight exactly `q`.
    pub fn homogeneous_component(&self, q: u64) -> Self {
        Self {
            ambient_k: self.ambient_k,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.weight() == q)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of weight above `max_weight`.
    pub fn truncate_above(&self, max_weight: u64) -> Self {
        Self {
            ambient_k: self.ambient_k,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.weight() <= max_weight)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut weights = self.terms.keys().map(ExponentVector::weight);
        match weights.next() {
            None => true,
            Some(w) => weights.all(|x| x == w),
        }
    }

    /// Largest weight present, `None` for zero.
    pub fn max_weight(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::weight).max()
    }

    /// Multiplies each weight-`i` term by `s^i`.
    pub fn scale_by_weight(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.ambient_k);
        for (a, c) in &self.terms {
            let factor = num_traits::pow(s.clone(), a.weight() as usize);
            out.add_term(a.clone(), c * factor);
        }
        out
    }

    /// Substitutes `c_i := values[i-1]`.
    pub fn evaluate_at_values(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.ambient_k {
            return Err(Error::AmbientMismatch {
                left: self.ambient_k,
                right: values.len(),
            });
        }
        let mut total = rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (v, &a) in values.iter().zip(alpha.entries()) {
                if a > 0 {
                    term *= num_traits::pow(v.clone(), a as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_truncated(e, None)
    }

    /// `self^e`, dropping terms above `max_weight` at every step.
    pub fn pow_truncated(&self, mut e: u32, max_weight: Option<u64>) -> Self {
        let trunc = |p: Self| match max_weight {
            Some(w) => p.truncate_above(w),
            None => p,
        };
        let mut base = trunc(self.clone());
        let mut acc = Self::one(self.ambient_k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, max_weight).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, max_weight).unwrap();
            }
        }
        acc
    }
}

fn monomial_string(alpha: &ExponentVector) -> String {
    alpha
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            if a == 1 {
                format!("c{}", i + 1)
            } else {
                format!("c{}^{}", i + 1, a)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for FreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (alpha, c)) in self.terms().enumerate() {
            let magnitude = rational::to_compact_string(&c.abs());
            let mono = monomial_string(alpha);
            let negative = c.is_negative();
            let body = if mono.is_empty() {
                magnitude
            } else if c.abs().is_one() && !(idx == 0 && negative) {
                mono
            } else {
                format!("{magnitude}*{mono}")
            };
            match (idx, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn dual_cache() -> &'static Mutex<HashMap<usize, Vec<FreeClass>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<FreeClass>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `cbar_j` via `cbar_j = -sum_{i=1}^{j} c_i cbar_{j-i}` with `c_i = 0` for
/// `i > k` and `cbar_0 = 1`. Results are memoized per `(j, k)`.
pub fn dual_class_recursive(j: usize, k: usize) -> FreeClass {
    let mut cache = dual_cache().lock().unwrap_or_else(|e| e.into_inner());
    let seq = cache.entry(k).or_insert_with(|| vec![FreeClass::one(k)]);
    while seq.len() <= j {
        let m = seq.len();
        let mut next = FreeClass::zero(k);
        for i in 1..=m.min(k) {
            let prod = FreeClass::generator(k, i).mul(&seq[m - i]).unwrap();
            next = next.sub(&prod).unwrap();
        }
        seq.push(next);
    }
    seq[j].clone()
}

/// `cbar_j` for a possibly negative index; zero below zero.
pub fn dual_class_signed(j: i64, k: usize) -> FreeClass {
    if j < 0 {
        FreeClass::zero(k)
    } else {
        dual_class_recursive(j as usize, k)
    }
}

/// The closed form `cbar_i = sum_{weight(a) = i} (-1)^{size(a)} size(a)!/a! c^a`.
pub fn dual_class_closed(i: usize, k: usize) -> FreeClass {
    let mut out = FreeClass::zero(k);
    for alpha in ExponentVector::all_of_weight(i as u64, k) {
        let mut c = Rational::from_integer(BigInt::from(alpha.multinomial()));
        if alpha.size() % 2 == 1 {
            c = -c;
        }
        out.terms.insert(alpha, c);
    }
    out
}

/// The total Chern class `1 + c_1 + ... + c_k`.
pub fn total_chern_class(k: usize) -> FreeClass {
    (0..=k).fold(FreeClass::zero(k), |acc, i| {
        acc.add(&FreeClass::generator(k, i)).unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn c(k: usize, i: usize) -> FreeClass {
        FreeClass::generator(k, i)
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn add_examples() {
        let p = c(2, 1).mul(&c(2, 1)).unwrap().sub(&c(2, 2)).unwrap();
        assert_eq!(p.add(&FreeClass::zero(2)).unwrap(), p);
        assert!(c(2, 1).add(&c(2, 1).neg()).unwrap().is_zero());
        assert_eq!(p.add(&c(2, 2)).unwrap(), c(2, 1).pow(2));
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        assert_eq!(
            c(2, 1).add(&c(3, 1)),
            Err(Error::AmbientMismatch { left: 2, right: 3 })
        );
        assert!(c(2, 1).mul(&c(3, 1)).is_err());
        assert!(c(2, 1).coeff(&ev(&[1, 0, 0])).is_err());
        assert!(c(2, 1).evaluate_at_values(&[int(1)]).is_err());
    }

    #[test]
    fn mul_examples() {
        let p = c(2, 1).mul(&c(2, 2)).unwrap();
        assert_eq!(p.coeff(&ev(&[1, 1])).unwrap(), int(1));
        assert_eq!(p.max_weight(), Some(3));

        let one = FreeClass::one(1);
        let lhs = one.add(&c(1, 1)).unwrap();
        let rhs = one.sub(&c(1, 1)).unwrap();
        let expected = one.sub(&c(1, 1).pow(2)).unwrap();
        assert_eq!(lhs.mul(&rhs).unwrap(), expected);
    }

    #[test]
    fn low_degree_inverse_relations() {
        let k = 2;
        let cbar1 = c(k, 1).neg();
        let cbar2 = c(k, 1).pow(2).sub(&c(k, 2)).unwrap();
        let left = total_chern_class(k);
        let right = FreeClass::one(k).add(&cbar1).unwrap().add(&cbar2).unwrap();
        let prod = left.mul(&right).unwrap();
        assert!(prod.homogeneous_component(1).is_zero());
        assert!(prod.homogeneous_component(2).is_zero());
        assert_eq!(prod.homogeneous_component(0), FreeClass::one(k));
    }

    #[test]
    fn recursive_base_cases() {
        for k in 1..=5 {
            assert_eq!(dual_class_recursive(0, k), FreeClass::one(k));
            assert_eq!(dual_class_recursive(1, k), c(k, 1).neg());
        }
        for k in 2..=5 {
            let expected = c(k, 1).pow(2).sub(&c(k, 2)).unwrap();
            assert_eq!(dual_class_recursive(2, k), expected);
        }
        let expected = c(2, 1)
            .pow(3)
            .neg()
            .add(&c(2, 1).mul(&c(2, 2)).unwrap().scale(&int(2)))
            .unwrap();
        assert_eq!(dual_class_recursive(3, 2), expected);
        assert_eq!(dual_class_signed(-2, 3), FreeClass::zero(3));
    }

    #[test]
    fn closed_form_examples() {
        for k in 2..=6 {
            assert_eq!(
                dual_class_closed(2, k),
                c(k, 1).pow(2).sub(&c(k, 2)).unwrap()
            );
        }
        let d = dual_class_closed(3, 2);
        assert_eq!(d.coeff(&ev(&[3, 0])).unwrap(), int(-1));
        assert_eq!(d.coeff(&ev(&[1, 1])).unwrap(), int(2));
        assert_eq!(d.num_terms(), 2);
        for n in 0..10u32 {
            let mut alpha = vec![0u32; 3];
            alpha[0] = n;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                dual_class_closed(n as usize, 3).coeff(&ev(&alpha)).unwrap(),
                int(sign)
            );
        }
    }

    #[test]
    fn case_four_coefficients() {
        for l in 1..=6u32 {
            let d = dual_class_closed(3 * l as usize + 4, 4);
            let theta = d.coeff(&ev(&[0, 0, l, 1])).unwrap();
            assert_eq!(theta.abs(), int(l as i64 + 1));
            let gamma = d.coeff(&ev(&[1, 0, l + 1, 0])).unwrap();
            assert_eq!(gamma.abs(), int(l as i64 + 2));
        }
    }

    #[test]
    fn evaluate_examples() {
        let p = c(2, 1).pow(2).sub(&c(2, 2)).unwrap();
        assert_eq!(p.evaluate_at_values(&[int(2), int(1)]).unwrap(), int(3));
        assert_eq!(
            FreeClass::zero(3)
                .evaluate_at_values(&[int(5), int(1), int(2)])
                .unwrap(),
            int(0)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(FreeClass::zero(2).to_string(), "0");
        assert_eq!(dual_class_closed(2, 2).to_string(), "c1^2 - c2");
        assert_eq!(dual_class_closed(3, 2).to_string(), "-1*c1^3 + 2*c1*c2");
        assert_eq!(dual_class_closed(1, 3).to_string(), "-1*c1");
        let half = Rational::new(BigInt::from(-3), BigInt::from(2));
        let p = FreeClass::one(2).add(&c(2, 2).scale(&half)).unwrap();
        assert_eq!(p.to_string(), "-3/2*c2 + 1");
    }

    #[test]
    fn scale_by_weight_matches_adams_action() {
        let p = c(3, 1).mul(&c(3, 2)).unwrap();
        assert_eq!(p.scale_by_weight(&int(2)), p.scale(&int(8)));
    }

    #[test]
    fn truncated_power() {
        let p = total_chern_class(2);
        let full = p.pow(4);
        let cut = p.pow_truncated(4, Some(3));
        assert_eq!(full.truncate_above(3), cut);
    }
}
