//! The cohomology ring `H*(G(k,n); Q)` in its Schur basis.
//!
//! Polynomials in the Chern classes are reduced by iterated elementary Pieri
//! multiplication starting from `sigma_empty`, since `c_i = sigma_{1^i}`.
//! Two prunes apply to each new partition:
//!
//! * more than `k` rows: `e_i` of `k` variables kills these Schur functions,
//!   so this prune is an identity already in `Lambda_k`;
//! * a first part above `n`: this is the quotient relation of the
//!   Grassmannian. [`expand_in_schur_basis`] can switch it off to work in
//!   `Lambda_k` itself.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{ExponentVector, Partition};
use crate::poly::{dual_class_closed, FreeClass};
use crate::rational::{self, Rational};

/// Which Grassmannian: `G(k, n)`, the `k`-planes in `C^{k+n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingContext {
    k: usize,
    n: usize,
}

impl RingContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidContext { k, n });
        }
        Ok(Self { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Complex dimension `kn`.
    pub fn top_degree(&self) -> u64 {
        (self.k * self.n) as u64
    }

    pub fn top_class(&self) -> Partition {
        Partition::rectangle(self.k, self.n)
    }

    /// Every basis partition, grouped by degree and lex-descending within a degree.
    pub fn basis(&self) -> Vec<Partition> {
        (0..=self.top_degree())
            .flat_map(|i| crate::partitions::partitions_of_weight_in_box(i, self.k, self.n))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::ContextMismatch {
                left: (self.k, self.n),
                right: (other.k, other.n),
            });
        }
        Ok(())
    }
}

pub type SchurTerms = BTreeMap<Partition, Rational>;

/// Partitions `mu` such that `mu / lambda` is a vertical strip of `size`
/// boxes, with at most `max_rows` rows and, if given, `mu_1 <= max_width`.
pub fn vertical_strips(
    lambda: &Partition,
    size: usize,
    max_rows: usize,
    max_width: Option<usize>,
) -> Vec<Partition> {
    if lambda.len() > max_rows || size > max_rows {
        return Vec::new();
    }
    let base: Vec<u32> = (0..max_rows).map(|r| lambda.part(r)).collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; max_rows];

    fn rec(
        row: usize,
        left: usize,
        base: &[u32],
        chosen: &mut [bool],
        max_width: Option<usize>,
        out: &mut Vec<Partition>,
    ) {
        if left == 0 {
            let parts = base
                .iter()
                .zip(chosen.iter())
                .map(|(&p, &c)| p + c as u32)
                .collect();
            out.push(Partition::from_sorted_unchecked(parts));
            return;
        }
        if row == base.len() || base.len() - row < left {
            return;
        }
        let can_add = if row == 0 {
            max_width.is_none_or(|w| (base[0] as usize) < w)
        } else {
            chosen[row - 1] || base[row - 1] > base[row]
        };
        if can_add {
            chosen[row] = true;
            rec(row + 1, left - 1, base, chosen, max_width, out);
            chosen[row] = false;
        }
        rec(row + 1, left, base, chosen, max_width, out);
    }

    rec(0, size, &base, &mut chosen, max_width, &mut out);
    out
}

fn pieri_terms(
    terms: &SchurTerms,
    i: usize,
    max_rows: usize,
    max_width: Option<usize>,
) -> SchurTerms {
    let mut out = SchurTerms::new();
    for (lambda, c) in terms {
        for mu in vertical_strips(lambda, i, max_rows, max_width) {
            let slot = out.entry(mu).or_insert_with(rational::zero);
            *slot += c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

type MonomialCache = HashMap<(usize, Option<usize>), HashMap<ExponentVector, Arc<SchurTerms>>>;

fn monomial_cache() -> &'static Mutex<MonomialCache> {
    static CACHE: OnceLock<Mutex<MonomialCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Schur expansion of `c^alpha`, multiplying by the `e_i` factors in
/// decreasing `i`. Memoized per `(k, width)` along the chain of prefixes.
fn expand_monomial(alpha: &ExponentVector, max_width: Option<usize>) -> Arc<SchurTerms> {
    let k = alpha.ambient_k();
    if let Some(w) = max_width {
        if alpha.weight() > (k * w) as u64 {
            return Arc::new(SchurTerms::new());
        }
    }
    let mut guard = monomial_cache().lock().unwrap_or_else(|e| e.into_inner());
    let cache = guard.entry((k, max_width)).or_default();

    // Strip the smallest-index factor repeatedly until a cached prefix is found.
    let mut chain: Vec<(ExponentVector, usize)> = Vec::new();
    let mut cur = alpha.clone();
    let mut found = loop {
        if let Some(hit) = cache.get(&cur) {
            break hit.clone();
        }
        if cur.is_zero() {
            let mut t = SchurTerms::new();
            t.insert(Partition::empty(), rational::one());
            let t = Arc::new(t);
            cache.insert(cur.clone(), t.clone());
            break t;
        }
        let i = (1..=k).find(|&i| cur.exponent(i) > 0).unwrap();
        let prev = cur.checked_sub_unit(i).unwrap();
        chain.push((cur, i));
        cur = prev;
    };
    while let Some((target, i)) = chain.pop() {
        found = Arc::new(pieri_terms(&found, i, k, max_width));
        cache.insert(target, found.clone());
    }
    found
}

/// Expands a polynomial in the Schur basis of `Lambda_k`, additionally
/// truncating to width `max_width` when given (the Grassmannian quotient).
pub fn expand_in_schur_basis(p: &FreeClass, max_width: Option<usize>) -> SchurTerms {
    let mut out = SchurTerms::new();
    for (alpha, c) in p.terms() {
        for (lambda, d) in expand_monomial(alpha, max_width).iter() {
            let slot = out.entry(lambda.clone()).or_insert_with(rational::zero);
            *slot += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// An element of `H*(G(k,n); Q)` in the Schur basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurClass {
    ctx: RingContext,
    terms: SchurTerms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SchurTermRecord {
    partition: Vec<u32>,
    coeff: String,
}

impl SchurClass {
    pub fn zero(ctx: RingContext) -> Self {
        Self {
            ctx,
            terms: SchurTerms::new(),
        }
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::basis(ctx, Partition::empty()).unwrap()
    }

    /// The Schubert class `sigma_lambda`.
    pub fn basis(ctx: RingContext, lambda: Partition) -> Result<Self> {
        if !lambda.fits_box(ctx.k, ctx.n) {
            return Err(Error::PartitionOutsideBox {
                partition: lambda.parts().to_vec(),
                k: ctx.k,
                n: ctx.n,
            });
        }
        let mut terms = SchurTerms::new();
        terms.insert(lambda, rational::one());
        Ok(Self { ctx, terms })
    }

    pub fn from_terms<I>(ctx: RingContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, Rational)>,
    {
        let mut out = Self::zero(ctx);
        for (lambda, c) in terms {
            let basis = Self::basis(ctx, lambda)?;
            out = out.add(&basis.scale(&c))?;
        }
        Ok(out)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographically descending partition order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(rational::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (lambda, c) in &other.terms {
            let slot = terms.entry(lambda.clone()).or_insert_with(rational::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Self {
            ctx: self.ctx,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.ctx);
        }
        Self {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(l, c)| (l.clone(), c * s)).collect(),
        }
    }

    /// Multiplies each `sigma_lambda` by `s^|lambda|`.
    pub fn scale_by_weight(&self, s: &Rational) -> Self {
        let mut terms = SchurTerms::new();
        for (l, c) in &self.terms {
            let v = c * num_traits::pow(s.clone(), l.size() as usize);
            if !v.is_zero() {
                terms.insert(l.clone(), v);
            }
        }
        Self {
            ctx: self.ctx,
            terms,
        }
    }

    /// Product computed entirely in the Schur basis: the second factor is
    /// rewritten through its Giambelli determinant and applied by Pieri.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let width = Some(self.ctx.n);
        let mut out = SchurTerms::new();
        for (mu, b) in &other.terms {
            let g = giambelli(mu, self.ctx.k)?;
            for (alpha, a) in g.terms() {
                let mut cur = self.terms.clone();
                for i in (1..=self.ctx.k).rev() {
                    for _ in 0..alpha.exponent(i) {
                        cur = pieri_terms(&cur, i, self.ctx.k, width);
                    }
                }
                for (lambda, c) in cur {
                    let slot = out.entry(lambda).or_insert_with(rational::zero);
                    *slot += c * a * b;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self {
            ctx: self.ctx,
            terms: out,
        })
    }

    /// JSON array of `{"partition":[..],"coeff":"num/den"}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<SchurTermRecord> = self
            .terms()
            .map(|(l, c)| SchurTermRecord {
                partition: l.parts().to_vec(),
                coeff: rational::to_fraction_string(c),
            })
            .collect();
        serde_json::to_value(records).expect("schur records serialize")
    }

    pub fn from_json(ctx: RingContext, value: &serde_json::Value) -> Result<Self> {
        let records: Vec<SchurTermRecord> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let lambda = Partition::new(r.partition)?;
            let c = rational::parse_rational(&r.coeff)
                .ok_or_else(|| Error::Malformed(format!("bad coefficient {:?}", r.coeff)))?;
            terms.push((lambda, c));
        }
        Self::from_terms(ctx, terms)
    }

    /// Text form `c*sigma[l1,l2] + ...`, parseable as an expression.
    pub fn to_source(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (lambda, c)) in self.terms().enumerate() {
            let gen = format!(
                "sigma[{}]",
                if lambda.is_empty() {
                    "0".to_string()
                } else {
                    lambda
                        .parts()
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                }
            );
            let negative = *c < rational::zero();
            let mag = rational::to_compact_string(&if negative { -c.clone() } else { c.clone() });
            let body = if mag == "1" && !(idx == 0 && negative) {
                gen
            } else {
                format!("{mag}*{gen}")
            };
            match (idx, negative) {
                (0, false) => s.push_str(&body),
                (0, true) => {
                    s.push('-');
                    s.push_str(&body);
                }
                (_, false) => {
                    s.push_str(" + ");
                    s.push_str(&body);
                }
                (_, true) => {
                    s.push_str(" - ");
                    s.push_str(&body);
                }
            }
        }
        s
    }
}

/// Multiplies by `c_i = sigma_{1^i}` via the elementary Pieri rule.
pub fn pieri_e(s: &SchurClass, i: usize) -> Result<SchurClass> {
    if i == 0 || i > s.ctx.k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: s.ctx.k,
        });
    }
    Ok(SchurClass {
        ctx: s.ctx,
        terms: pieri_terms(&s.terms, i, s.ctx.k, Some(s.ctx.n)),
    })
}

/// The image of a free polynomial in `H*(G(k,n); Q)`.
pub fn reduce(p: &FreeClass, ctx: RingContext) -> Result<SchurClass> {
    if p.ambient_k() != ctx.k {
        return Err(Error::AmbientMismatch {
            left: ctx.k,
            right: p.ambient_k(),
        });
    }
    Ok(SchurClass {
        ctx,
        terms: expand_in_schur_basis(p, Some(ctx.n)),
    })
}

/// Dual Jacobi–Trudi determinant `det(c_{lambda'_i - i + j})`.
pub fn giambelli(lambda: &Partition, k: usize) -> Result<FreeClass> {
    if lambda.len() > k {
        return Err(Error::PartitionTooWide {
            partition: lambda.parts().to_vec(),
            k,
        });
    }
    let conj = lambda.conjugate();
    let m = conj.len();
    let entry = |row: usize, col: usize| -> FreeClass {
        let idx = conj.part(row) as i64 - row as i64 + col as i64;
        if idx < 0 {
            FreeClass::zero(k)
        } else {
            FreeClass::generator(k, idx as usize)
        }
    };
    // Row-by-row Laplace expansion memoized on the set of used columns.
    let mut layer: HashMap<u32, FreeClass> = HashMap::new();
    layer.insert(0, FreeClass::one(k));
    for row in 0..m {
        let mut next: HashMap<u32, FreeClass> = HashMap::new();
        for (mask, acc) in &layer {
            for col in 0..m {
                if mask & (1 << col) != 0 {
                    continue;
                }
                let e = entry(row, col);
                if e.is_zero() {
                    continue;
                }
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = acc.mul(&e)?;
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let slot = next
                    .entry(mask | (1 << col))
                    .or_insert_with(|| FreeClass::zero(k));
                *slot = slot.add(&term)?;
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    let full = if m == 0 { 0 } else { (1u32 << m) - 1 };
    Ok(layer.remove(&full).unwrap_or_else(|| FreeClass::zero(k)))
}

/// A class carried both as a free polynomial (cheap products) and, on
/// demand, as its canonical Schur expansion.
#[derive(Debug, Clone)]
pub struct GrassElement {
    ctx: RingContext,
    free: FreeClass,
    reduced: OnceLock<SchurClass>,
}

impl PartialEq for GrassElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.reduced() == other.reduced()
    }
}

impl Eq for GrassElement {}

impl GrassElement {
    /// Wraps a polynomial; terms above the top degree are dropped since
    /// they vanish in the quotient.
    pub fn from_free(ctx: RingContext, free: FreeClass) -> Result<Self> {
        if free.ambient_k() != ctx.k {
            return Err(Error::AmbientMismatch {
                left: ctx.k,
                right: free.ambient_k(),
            });
        }
        Ok(Self {
            ctx,
            free: free.truncate_above(ctx.top_degree()),
            reduced: OnceLock::new(),
        })
    }

    pub fn from_schur(s: SchurClass) -> Result<Self> {
        let ctx = s.ctx;
        let mut free = FreeClass::zero(ctx.k);
        for (lambda, c) in s.terms() {
            free = free.add(&giambelli(lambda, ctx.k)?.scale(c))?;
        }
        let reduced = OnceLock::new();
        let _ = reduced.set(s);
        Ok(Self { ctx, free, reduced })
    }

    pub fn zero(ctx: RingContext) -> Self {
        Self::from_free(ctx, FreeClass::zero(ctx.k)).unwrap()
    }

    pub fn one(ctx: RingContext) -> Self {
        Self::constant(ctx, rational::one())
    }

    pub fn constant(ctx: RingContext, c: Rational) -> Self {
        Self::from_free(ctx, FreeClass::constant(ctx.k, c)).unwrap()
    }

    pub fn integer(ctx: RingContext, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    /// `c_i`, for `1 <= i <= k`.
    pub fn chern(ctx: RingContext, i: usize) -> Result<Self> {
        if i == 0 || i > ctx.k {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: ctx.k,
            });
        }
        Self::from_free(ctx, FreeClass::generator(ctx.k, i))
    }

    /// `cbar_i` from the closed formula. Classes above the top degree are zero.
    pub fn dual(ctx: RingContext, i: usize) -> Self {
        if i as u64 > ctx.top_degree() {
            return Self::zero(ctx);
        }
        Self::from_free(ctx, dual_class_closed(i, ctx.k)).unwrap()
    }

    /// `sigma_lambda`, with its Giambelli polynomial as free representative.
    pub fn schur(ctx: RingContext, lambda: Partition) -> Result<Self> {
        Self::from_schur(SchurClass::basis(ctx, lambda)?)
    }

    pub fn context(&self) -> RingContext {
        self.ctx
    }

    pub fn free(&self) -> &FreeClass {
        &self.free
    }

    pub fn reduced(&self) -> &SchurClass {
        self.reduced.get_or_init(|| {
            reduce(&self.free, self.ctx).expect("free representative matches its context")
        })
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        Self::from_free(self.ctx, self.free.add(&other.free)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        Self::from_free(self.ctx, self.free.sub(&other.free)?)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let out = Self::from_free(self.ctx, self.free.scale(s)).unwrap();
        if let Some(r) = self.reduced.get() {
            let _ = out.reduced.set(r.scale(s));
        }
        out
    }

    /// Multiplies the degree-`i` part by `s^i`.
    pub fn scale_by_weight(&self, s: &Rational) -> Self {
        let out = Self::from_free(self.ctx, self.free.scale_by_weight(s)).unwrap();
        if let Some(r) = self.reduced.get() {
            let _ = out.reduced.set(r.scale_by_weight(s));
        }
        out
    }

    pub fn cup(&self, other: &Self) -> Result<Self> {
        self.ctx.check(&other.ctx)?;
        let prod = self
            .free
            .mul_truncated(&other.free, Some(self.ctx.top_degree()))?;
        Self::from_free(self.ctx, prod)
    }

    pub fn pow(&self, e: u32) -> Self {
        let p = self.free.pow_truncated(e, Some(self.ctx.top_degree()));
        Self::from_free(self.ctx, p).unwrap()
    }

    /// Coefficient of the top class `sigma_{(n^k)}`.
    pub fn integrate(&self) -> Rational {
        self.reduced().coeff(&self.ctx.top_class())
    }

    /// Poincaré pairing `integrate(x cup y)`.
    pub fn pairing(&self, other: &Self) -> Result<Rational> {
        Ok(self.cup(other)?.integrate())
    }
}
