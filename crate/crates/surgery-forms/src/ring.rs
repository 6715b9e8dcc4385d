//! Exact arithmetic in the Laurent polynomial ring `Z[z1^±1, …, zk^±1]`,
//! the integral group ring of the free abelian group of rank `k`.
//!
//! Polynomials are sparse maps from exponent vectors to nonzero integer
//! coefficients. The map is ordered lexicographically, so equality is
//! structural and serialization is deterministic. `k = 0` is allowed and
//! gives the ring of integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Number of Laurent variables of a ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RingContext {
    pub vars: usize,
}

impl RingContext {
    pub fn new(vars: usize) -> Self {
        RingContext { vars }
    }
}

/// Exponent vector of a monomial `z1^{i1} … zk^{ik}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn zero(vars: usize) -> Self {
        MultiIndex(vec![0; vars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn neg(&self) -> Self {
        MultiIndex(self.0.iter().map(|&e| -e).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Max-norm of the exponent vector.
    pub fn sup_norm(&self) -> u64 {
        self.0.iter().map(|&e| e.unsigned_abs()).max().unwrap_or(0)
    }

    /// Sign of the first nonzero coordinate; 0 for the zero index.
    pub fn leading_sign(&self) -> i32 {
        for &e in &self.0 {
            if e > 0 {
                return 1;
            }
            if e < 0 {
                return -1;
            }
        }
        0
    }
}

/// Element of `Z[Z^k]` in canonical form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        LaurentPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex::zero(vars), c.into());
        p
    }

    /// The monomial `c * z^e`.
    pub fn monomial(vars: usize, exps: &[i64], c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars, "exponent vector length must equal vars");
        let mut p = Self::zero(vars);
        p.add_term(MultiIndex(exps.to_vec()), c.into());
        p
    }

    /// The generator `z_{i+1}` (0-based `i`).
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut exps = vec![0i64; vars];
        exps[i] = 1;
        Self::monomial(vars, &exps, 1)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn context(&self) -> RingContext {
        RingContext::new(self.vars)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.is_zero() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient at an exponent vector (zero if absent).
    pub fn coeff(&self, e: &MultiIndex) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c * z^e`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, e: MultiIndex, c: BigInt) {
        debug_assert_eq!(e.len(), self.vars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ContextMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    /// The bar involution: every group element goes to its inverse,
    /// i.e. every exponent vector is negated.
    pub fn involute(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.neg(), c.clone());
        }
        out
    }

    /// Augmentation: evaluate every variable at 1.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The order `o(a)`: the largest sup-norm of an exponent vector.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.keys().map(MultiIndex::sup_norm).max().unwrap())
    }

    /// Unit test for `Z[Z^k]`: the units are exactly `±z^i`.
    /// Returns the sign and exponent vector on success.
    pub fn is_unit(&self) -> Option<(i8, MultiIndex)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, e.clone()))
        } else if (-c).is_one() {
            Some((-1, e.clone()))
        } else {
            None
        }
    }

    /// Re-embeds into a ring with `new_vars` variables, sending `z_i`
    /// to `z_{i+offset}`.
    pub fn embed(&self, new_vars: usize, offset: usize) -> Self {
        assert!(self.vars + offset <= new_vars);
        let mut out = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; new_vars];
            exps[offset..offset + self.vars].copy_from_slice(&e.0);
            out.terms.insert(MultiIndex(exps), c.clone());
        }
        out
    }

    /// Exact division in the Laurent ring. Returns `None` when `self`
    /// is not a multiple of `divisor`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.vars, divisor.vars);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.vars));
        }
        // Shift both operands into the ordinary polynomial ring. The
        // per-variable minimum exponent of a product is the sum of the
        // factors' minima, so an exact Laurent quotient shifts back
        // with no negative exponents left over.
        let shift_a = self.min_exps();
        let shift_b = divisor.min_exps();
        let a = self.shifted(&shift_a.neg());
        let b = divisor.shifted(&shift_b.neg());

        let mut rem = a;
        let mut quot = Self::zero(self.vars);
        let (lead_e, lead_c) = b.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
            let qe = re.sub(&lead_e);
            if qe.0.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(self.vars, &qe.0, qc);
            rem = rem.checked_sub(&term.checked_mul(&b).unwrap()).unwrap();
            quot = quot.checked_add(&term).unwrap();
        }
        Some(quot.shifted(&shift_a.sub(&shift_b)))
    }

    /// Componentwise minimum exponent over the support (zero poly: all 0).
    fn min_exps(&self) -> MultiIndex {
        let mut m = vec![i64::MAX; self.vars];
        for e in self.terms.keys() {
            for (slot, &x) in m.iter_mut().zip(&e.0) {
                *slot = (*slot).min(x);
            }
        }
        MultiIndex(m.into_iter().map(|x| if x == i64::MAX { 0 } else { x }).collect())
    }

    fn shifted(&self, by: &MultiIndex) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.add(by), c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.0.iter().enumerate() {
                if x == 1 {
                    factors.push(format!("z{}", i + 1));
                } else if x != 0 {
                    factors.push(format!("z{}^{}", i + 1, x));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

// JSON schema: {"k": int, "terms": [{"e": [int…], "c": int}…]},
// terms sorted lexicographically by "e" (the BTreeMap order).
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a LaurentPoly);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.terms.len()))?;
                for (e, c) in &self.0.terms {
                    seq.serialize_element(&TermRepr {
                        e: e.0.clone(),
                        c: bigint_to_number(c),
                    })?;
                }
                seq.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("k", &self.vars)?;
        map.serialize_entry("terms", &Terms(self))?;
        map.end()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: Vec<i64>,
    c: serde_json::Number,
}

#[derive(Deserialize)]
struct PolyRepr {
    k: usize,
    terms: Vec<TermRepr>,
}

pub(crate) fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&c.to_string()).expect("integer is a valid JSON number")
}

pub(crate) fn number_to_bigint(n: &serde_json::Number) -> Option<BigInt> {
    BigInt::from_str(&n.to_string()).ok()
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero(repr.k);
        for t in repr.terms {
            if t.e.len() != repr.k {
                return Err(D::Error::custom("exponent vector length must equal k"));
            }
            let c = number_to_bigint(&t.c)
                .ok_or_else(|| D::Error::custom("coefficient must be an integer"))?;
            p.add_term(MultiIndex(t.e), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zp(pairs: &[(&[i64], i64)], vars: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in pairs {
            p.add_term(MultiIndex(e.to_vec()), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn additive_inverse_cancels() {
        let z1 = LaurentPoly::var(2, 0);
        assert!(z1.checked_add(&z1.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_merges_terms() {
        let a = zp(&[(&[0, 0], 1), (&[1, 0], 1)], 2);
        let b = zp(&[(&[1, 0], 1)], 2);
        let expect = zp(&[(&[0, 0], 1), (&[1, 0], 2)], 2);
        assert_eq!(a.checked_add(&b).unwrap(), expect);
    }

    #[test]
    fn add_example_from_det_identity() {
        let a = zp(&[(&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1)], 2);
        let b = zp(&[(&[1, 0], 1), (&[0, 1], 1)], 2);
        assert_eq!(a.checked_add(&b).unwrap(), zp(&[(&[1, 1], 1)], 2));
    }

    #[test]
    fn det_alpha_identity_entrywise() {
        // (1 - z1)(1 - z2) - (z1 z2 - z1 - z2) = 1
        let one_minus_z1 = zp(&[(&[0, 0], 1), (&[1, 0], -1)], 2);
        let one_minus_z2 = zp(&[(&[0, 0], 1), (&[0, 1], -1)], 2);
        let cross = zp(&[(&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1)], 2);
        let det = one_minus_z1
            .checked_mul(&one_minus_z2)
            .unwrap()
            .checked_sub(&cross)
            .unwrap();
        assert!(det.is_one());
    }

    #[test]
    fn unit_pair_multiplies_to_one() {
        let z1 = LaurentPoly::var(1, 0);
        let z1inv = LaurentPoly::monomial(1, &[-1], 1);
        assert!(z1.checked_mul(&z1inv).unwrap().is_one());
    }

    #[test]
    fn involute_fixed_and_forced() {
        assert_eq!(LaurentPoly::one(3).involute(), LaurentPoly::one(3));
        let a = zp(&[(&[1, 0], 1), (&[0, -1], 2)], 2);
        let expect = zp(&[(&[-1, 0], 1), (&[0, 1], 2)], 2);
        assert_eq!(a.involute(), expect);
    }

    #[test]
    fn augment_examples() {
        let a = zp(&[(&[1, 1], 1), (&[1, 0], -1), (&[0, 1], -1)], 2);
        assert_eq!(a.augment(), BigInt::from(-1));
        let b = zp(&[(&[0], 1), (&[1], -1)], 1);
        assert_eq!(b.augment(), BigInt::zero());
    }

    #[test]
    fn order_examples() {
        let a = zp(&[(&[2, -3], 1), (&[1, 0], 1)], 2);
        assert_eq!(a.order().unwrap(), 3);
        assert_eq!(LaurentPoly::one(2).order().unwrap(), 0);
        assert!(matches!(
            LaurentPoly::zero(2).order(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn unit_detection() {
        let u = zp(&[(&[1, -1], -1)], 2);
        let (sign, e) = u.is_unit().unwrap();
        assert_eq!(sign, -1);
        assert_eq!(e, MultiIndex(vec![1, -1]));
        assert!(zp(&[(&[0, 0], 1), (&[1, 0], -1)], 2).is_unit().is_none());
        assert!(LaurentPoly::zero(2).is_unit().is_none());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn exact_div_roundtrip() {
        let a = zp(&[(&[0, 0], 1), (&[1, 0], -1)], 2);
        let b = zp(&[(&[-1, 2], 3), (&[0, 0], 2)], 2);
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        let not_multiple = prod.checked_add(&LaurentPoly::one(2)).unwrap();
        assert!(not_multiple.exact_div(&a).is_none());
    }

    #[test]
    fn json_roundtrip_and_term_order() {
        let a = zp(&[(&[1, -1], -3), (&[0, 0], 5), (&[-2, 4], 7)], 2);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"k\":2,\"terms\":[{\"e\":[-2,4]"));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn display_form() {
        let a = zp(&[(&[1, 0], -1), (&[0, 0], 1)], 2);
        assert_eq!(a.to_string(), "1 - z1");
        let b = zp(&[(&[2, -3], 4)], 2);
        assert_eq!(b.to_string(), "4*z1^2*z2^-3");
    }

    prop_compose! {
        fn arb_poly(vars: usize)(
            terms in prop::collection::vec(
                (prop::collection::vec(-3i64..=3, vars), -9i64..=9),
                0..6,
            )
        ) -> LaurentPoly {
            let mut p = LaurentPoly::zero(vars);
            for (e, c) in terms {
                p.add_term(MultiIndex(e), BigInt::from(c));
            }
            p
        }
    }

    proptest! {
        #[test]
        fn involution_laws(a in arb_poly(2), b in arb_poly(2)) {
            let ab = a.checked_mul(&b).unwrap();
            prop_assert_eq!(ab.involute(), a.involute().checked_mul(&b.involute()).unwrap());
            prop_assert_eq!(
                a.checked_add(&b).unwrap().involute(),
                a.involute().checked_add(&b.involute()).unwrap()
            );
            prop_assert_eq!(a.involute().involute(), a.clone());
            prop_assert_eq!(a.involute().augment(), a.augment());
        }

        #[test]
        fn ring_axioms(a in arb_poly(2), b in arb_poly(2), c in arb_poly(2)) {
            let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
            let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let rhs = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(
                a.checked_mul(&b).unwrap(),
                b.checked_mul(&a).unwrap()
            );
        }

        #[test]
        fn augment_is_a_homomorphism(a in arb_poly(2), b in arb_poly(2)) {
            prop_assert_eq!(
                a.checked_mul(&b).unwrap().augment(),
                a.augment() * b.augment()
            );
        }

        #[test]
        fn order_bounds(a in arb_poly(2), b in arb_poly(2)) {
            prop_assert_eq!(a.involute().is_zero(), a.is_zero());
            if !a.is_zero() {
                prop_assert_eq!(a.involute().order().unwrap(), a.order().unwrap());
            }
            let prod = a.checked_mul(&b).unwrap();
            if !prod.is_zero() {
                prop_assert!(prod.order().unwrap() <= a.order().unwrap() + b.order().unwrap());
            }
            let sum = a.checked_add(&b).unwrap();
            if !sum.is_zero() && !a.is_zero() && !b.is_zero() {
                prop_assert!(sum.order().unwrap() <= a.order().unwrap().max(b.order().unwrap()));
            }
        }

        #[test]
        fn exact_div_of_products(a in arb_poly(2), b in arb_poly(2)) {
            if !b.is_zero() {
                let prod = a.checked_mul(&b).unwrap();
                prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
            }
        }
    }
}
