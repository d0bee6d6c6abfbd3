//! Real algebraic numbers with decidable sign and exact arithmetic.
//!
//! A value is a residue `rep` in `Q[x]/(q)` read at the context's
//! isolated root `lambda`. The zero test is `gcd(rep, q)` followed by a
//! root count over the isolating interval; nonzero signs come from
//! interval evaluation with refinement. Comparison across different
//! contexts is also exact: both values are roots of resultant-style
//! characteristic polynomials, and a shared-root test decides equality
//! while interval refinement decides strict order.

use super::context::AlgebraicContext;
use super::poly::{RatInterval, RatPoly, SturmChain};
use super::AlgebraError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An exact real number: a residue polynomial evaluated at the
/// context's isolated root.
#[derive(Clone)]
pub struct RealAlgebraic {
    ctx: Arc<AlgebraicContext>,
    rep: RatPoly,
}

impl RealAlgebraic {
    /// Wraps a representative, reducing it modulo the context modulus.
    pub fn new(ctx: Arc<AlgebraicContext>, rep: RatPoly) -> Self {
        let rep = ctx.reduce(&rep);
        RealAlgebraic { ctx, rep }
    }

    /// The isolated root itself.
    pub fn lambda(ctx: &Arc<AlgebraicContext>) -> Self {
        Self::new(ctx.clone(), RatPoly::x())
    }

    /// A rational constant inside an existing context.
    pub fn constant(ctx: &Arc<AlgebraicContext>, c: BigRational) -> Self {
        Self::new(ctx.clone(), RatPoly::constant(c))
    }

    pub fn zero(ctx: &Arc<AlgebraicContext>) -> Self {
        Self::constant(ctx, BigRational::zero())
    }

    pub fn one(ctx: &Arc<AlgebraicContext>) -> Self {
        Self::constant(ctx, BigRational::one())
    }

    /// A plain rational as a value in the shared rational context.
    pub fn rational(r: BigRational) -> Self {
        Self::constant(&AlgebraicContext::rational_zero(), r)
    }

    pub fn context(&self) -> &Arc<AlgebraicContext> {
        &self.ctx
    }

    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    /// The exact rational value, when the representative or the context
    /// forces one.
    pub fn known_rational(&self) -> Option<BigRational> {
        if self.ctx.rational_root().is_some() || self.rep.degree() == 0 {
            Some(self.rep.constant_term())
        } else {
            None
        }
    }

    /// Whether both values live over the same root, so the in-context
    /// arithmetic applies. `cross_cmp` compares across contexts.
    pub fn compatible_with(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_root(&other.ctx)
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.compatible_with(other),
            "values from different algebraic contexts; use cross_cmp for comparisons"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        Self::new(self.ctx.clone(), self.rep.add(&other.rep))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        Self::new(self.ctx.clone(), self.rep.sub(&other.rep))
    }

    pub fn neg(&self) -> Self {
        RealAlgebraic { ctx: self.ctx.clone(), rep: self.rep.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        Self::new(self.ctx.clone(), self.rep.mul(&other.rep))
    }

    pub fn add_rational(&self, c: &BigRational) -> Self {
        Self::new(self.ctx.clone(), self.rep.add(&RatPoly::constant(c.clone())))
    }

    pub fn sub_rational(&self, c: &BigRational) -> Self {
        self.add_rational(&-c.clone())
    }

    pub fn mul_rational(&self, c: &BigRational) -> Self {
        RealAlgebraic { ctx: self.ctx.clone(), rep: self.rep.scale(c) }
    }

    /// Whether the value is exactly zero: `rep(lambda) = 0` iff
    /// `gcd(rep, q)` has its single candidate root inside the isolating
    /// interval.
    pub fn is_zero(&self) -> bool {
        if self.rep.is_zero() {
            return true;
        }
        if let Some(r) = self.known_rational() {
            return r.is_zero();
        }
        let g = self.rep.gcd(self.ctx.modulus());
        if g.degree() == 0 {
            return false;
        }
        let iv = self.ctx.interval();
        SturmChain::new(&g).count_roots_half_open(&iv.lo, &iv.hi) == 1
    }

    /// Exact sign: -1, 0, or +1.
    pub fn sign(&self) -> i8 {
        if let Some(r) = self.known_rational() {
            return rational_sign(&r);
        }
        if self.is_zero() {
            return 0;
        }
        loop {
            let img = self.rep.eval_interval(&self.ctx.interval());
            if img.lo.is_positive() {
                return 1;
            }
            if img.hi.is_negative() {
                return -1;
            }
            self.ctx.refine();
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Sign of `self - c`.
    pub fn cmp_rational(&self, c: &BigRational) -> Ordering {
        match self.sub_rational(c).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Multiplicative inverse read at the root.
    ///
    /// The quotient ring may have zero divisors, but any representative
    /// that is nonzero at the root is invertible along the factor of the
    /// modulus that vanishes there.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        if let Some(r) = self.known_rational() {
            if r.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            return Ok(Self::constant(&self.ctx, BigRational::one() / r));
        }
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let q = self.ctx.modulus();
        let g = self.rep.gcd(q);
        // The root lies on q / g: it is not a root of g because rep is
        // nonzero at it. rep and q/g are coprime since q is squarefree.
        let h = if g.degree() == 0 { q.clone() } else { q.div_rem(&g).0 };
        let (unit, u, _) = self.rep.extended_gcd(&h);
        debug_assert_eq!(unit, RatPoly::one());
        Ok(Self::new(self.ctx.clone(), u))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.invert()?))
    }

    /// A rational enclosure no wider than `eps`.
    pub fn enclosure(&self, eps: &BigRational) -> RatInterval {
        if let Some(r) = self.known_rational() {
            return RatInterval::point(r);
        }
        loop {
            let img = self.rep.eval_interval(&self.ctx.interval());
            if &img.width() < eps {
                return img;
            }
            self.ctx.refine();
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.known_rational() {
            return r.floor().to_integer();
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let img = self.enclosure(&half);
        // The enclosure is narrower than 1/2, so the floor is either
        // floor(hi) or one less; one exact sign settles it.
        let cand = img.hi.floor();
        if self.sub_rational(&cand).sign() >= 0 {
            cand.to_integer()
        } else {
            cand.to_integer() - BigInt::one()
        }
    }

    /// Decimal rendering with `digits` places, rounded half to even.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self.mul_rational(&BigRational::from(scale.clone()));
        let f = scaled.floor();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let frac_minus_half = scaled
            .sub_rational(&BigRational::from(f.clone()))
            .sub_rational(&half);
        let k = match frac_minus_half.sign() {
            -1 => f,
            1 => f + BigInt::one(),
            _ => {
                // Exactly halfway: take the even neighbor.
                if (&f % BigInt::from(2)).is_zero() {
                    f
                } else {
                    f + BigInt::one()
                }
            }
        };
        let neg = k.is_negative();
        let mag = k.magnitude();
        let scale_mag = scale.magnitude();
        let ip = mag / scale_mag;
        let fp = mag % scale_mag;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{}{}", sign, ip)
        } else {
            format!("{}{}.{:0>width$}", sign, ip, fp.to_string(), width = digits)
        }
    }

    /// Total order across arbitrary contexts.
    ///
    /// Equal values in different contexts are recognized exactly: both
    /// are eigenvalues of their multiplication matrices, so a shared
    /// root of the two characteristic polynomials certifies equality
    /// once interval refinement pins each value to a single root.
    pub fn cross_cmp(&self, other: &Self) -> Ordering {
        if self.compatible_with(other) {
            let diff = RealAlgebraic { ctx: self.ctx.clone(), rep: self.rep.sub(&other.rep) };
            return match diff.sign() {
                -1 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            };
        }
        match (self.known_rational(), other.known_rational()) {
            (Some(a), Some(b)) => return a.cmp(&b),
            (Some(a), None) => return other.cmp_rational(&a).reverse(),
            (None, Some(b)) => return self.cmp_rational(&b),
            (None, None) => {}
        }

        let pa = value_charpoly(&self.rep, self.ctx.modulus());
        let pb = value_charpoly(&other.rep, other.ctx.modulus());
        let shared = pa.gcd(&pb).squarefree();
        let maybe_equal = shared.degree() >= 1
            && self.poly_at_value(&shared).is_zero()
            && other.poly_at_value(&shared).is_zero();

        if !maybe_equal {
            // Distinct values: refinement must separate the enclosures.
            loop {
                let ia = self.rep.eval_interval(&self.ctx.interval());
                let ib = other.rep.eval_interval(&other.ctx.interval());
                if ia.disjoint_from(&ib) {
                    return if ia.hi < ib.lo { Ordering::Less } else { Ordering::Greater };
                }
                self.ctx.refine();
                other.ctx.refine();
            }
        }

        // Both values are roots of `shared`. They are equal exactly when
        // a root of `shared` lies in the overlap while each enclosure
        // holds a single root.
        let chain = SturmChain::new(&shared);
        loop {
            let ia = self.rep.eval_interval(&self.ctx.interval());
            let ib = other.rep.eval_interval(&other.ctx.interval());
            if ia.disjoint_from(&ib) {
                return if ia.hi < ib.lo { Ordering::Less } else { Ordering::Greater };
            }
            if chain.count_roots_closed(&ia.lo, &ia.hi) == 1
                && chain.count_roots_closed(&ib.lo, &ib.hi) == 1
            {
                if let Some(overlap) = ia.intersect(&ib) {
                    if chain.count_roots_closed(&overlap.lo, &overlap.hi) >= 1 {
                        return Ordering::Equal;
                    }
                }
            }
            self.ctx.refine();
            other.ctx.refine();
        }
    }

    /// Evaluates a rational polynomial at this value, inside this
    /// context.
    fn poly_at_value(&self, p: &RatPoly) -> RealAlgebraic {
        let mut acc = RatPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.ctx.reduce(&acc.mul(&self.rep).add(&RatPoly::constant(c.clone())));
        }
        RealAlgebraic { ctx: self.ctx.clone(), rep: acc }
    }

    /// Reparseable exact encoding: modulus, isolating interval, and
    /// representative, all as exact rational strings.
    pub fn exact_repr(&self) -> ExactRepr {
        let iv = self.ctx.interval();
        ExactRepr {
            modulus: self.ctx.modulus().coeffs().iter().map(|c| c.to_string()).collect(),
            lo: iv.lo.to_string(),
            hi: iv.hi.to_string(),
            rep: self.rep.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Rebuilds a value from its exact encoding.
    pub fn from_exact_repr(repr: &ExactRepr) -> Result<Self, AlgebraError> {
        let parse = |s: &str| BigRational::from_str(s).map_err(|_| AlgebraError::BadEncoding);
        let mut modulus = Vec::with_capacity(repr.modulus.len());
        for s in &repr.modulus {
            modulus.push(parse(s)?);
        }
        let mut rep = Vec::with_capacity(repr.rep.len());
        for s in &repr.rep {
            rep.push(parse(s)?);
        }
        let lo = parse(&repr.lo)?;
        let hi = parse(&repr.hi)?;
        let modulus = RatPoly::new(modulus);
        let ctx = if lo == hi {
            AlgebraicContext::for_rational(lo)
        } else {
            AlgebraicContext::new(&modulus.to_int_primitive(), lo, hi)?
        };
        Ok(Self::new(ctx, RatPoly::new(rep)))
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.known_rational() {
            Some(r) => write!(f, "{}", r),
            None => write!(f, "{}", self.rep),
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.rep, self.ctx)
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cross_cmp(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cross_cmp(other)
    }
}

fn rational_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// Characteristic polynomial of multiplication by `rep` on `Q[x]/(q)`.
/// The value `rep(lambda)` is one of its roots for every root `lambda`
/// of `q`.
fn value_charpoly(rep: &RatPoly, q: &RatPoly) -> RatPoly {
    let n = q.degree();
    let mut cols = Vec::with_capacity(n);
    let mut cur = rep.rem(q);
    let x = RatPoly::x();
    for _ in 0..n {
        let mut col = cur.coeffs().to_vec();
        col.resize(n, BigRational::zero());
        cols.push(col);
        cur = cur.mul(&x).rem(q);
    }
    let m: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
    charpoly_rational(&m)
}

/// Faddeev-LeVerrier over the rationals.
fn charpoly_rational(m: &[Vec<BigRational>]) -> RatPoly {
    let n = m.len();
    if n == 0 {
        return RatPoly::one();
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = m.to_vec();
    for k in 1..=n {
        if k > 1 {
            let c = coeffs[n - k + 1].clone();
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &c;
            }
            let mut next = vec![vec![BigRational::zero(); n]; n];
            for i in 0..n {
                for l in 0..n {
                    if m[i][l].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        next[i][j] += &m[i][l] * &mk[l][j];
                    }
                }
            }
            mk = next;
        }
        let tr: BigRational = (0..n).map(|i| mk[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigRational::from(BigInt::from(k));
    }
    RatPoly::new(coeffs)
}

/// The rational with the smallest denominator strictly between two
/// values, from any contexts. Among integers the one closest to zero
/// wins.
pub fn rational_between(
    a: &RealAlgebraic,
    b: &RealAlgebraic,
) -> Result<BigRational, AlgebraError> {
    if a.cross_cmp(b) != Ordering::Less {
        return Err(AlgebraError::EmptyInterval);
    }
    // Integer fast path: floor(a)+1 is the least integer above a.
    let n0 = a.floor() + BigInt::one();
    if b.sub_rational(&BigRational::from(n0.clone())).sign() > 0 {
        let hi = -(b.neg().floor()) - BigInt::one(); // greatest integer below b
        let pick = if n0.is_positive() {
            n0
        } else if hi.is_negative() {
            hi
        } else {
            BigInt::zero()
        };
        return Ok(BigRational::from(pick));
    }
    // No integer inside: walk the mediant tree over the unit interval
    // after translating by floor(a). The first fraction that falls
    // strictly inside has the smallest denominator of any candidate.
    let f = BigRational::from(a.floor());
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::zero());
    loop {
        let mn = &ln + &rn;
        let md = &ld + &rd;
        let cand = &f + BigRational::new(mn.clone(), md.clone());
        if a.sub_rational(&cand).sign() >= 0 {
            ln = mn;
            ld = md;
        } else if b.sub_rational(&cand).sign() <= 0 {
            rn = mn;
            rd = md;
        } else {
            return Ok(cand);
        }
    }
}

/// Exact serialized form of a value: every field is a rational in
/// lowest terms, so `parse(format(v))` reproduces `v` bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRepr {
    /// Monic modulus coefficients, lowest degree first.
    pub modulus: Vec<String>,
    /// Isolating interval; `lo == hi` marks a rational root.
    pub lo: String,
    pub hi: String,
    /// Representative coefficients, lowest degree first.
    pub rep: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::big_rat;
    use crate::algebra::IntPoly;

    fn golden_ctx() -> Arc<AlgebraicContext> {
        crate::algebra::isolate_perron_root(&IntPoly::from_i64(&[-1, -1, 1])).unwrap()
    }

    /// Modulus (x^2 - x - 1)(x + 2): reducible, so the quotient has zero
    /// divisors, but the golden root is still isolated.
    fn reducible_ctx() -> Arc<AlgebraicContext> {
        let q = IntPoly::from_i64(&[-1, -1, 1]).mul(&IntPoly::from_i64(&[2, 1]));
        AlgebraicContext::new(&q, big_rat(1, 1), big_rat(2, 1)).unwrap()
    }

    #[test]
    fn golden_root_satisfies_its_equation() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        let expr = l.mul(&l).sub(&l).sub_rational(&big_rat(1, 1));
        assert!(expr.is_zero());
        assert_eq!(expr.sign(), 0);
    }

    #[test]
    fn signs_bracket_the_root() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        assert_eq!(l.sub_rational(&big_rat(1, 1)).sign(), 1);
        assert_eq!(l.sub_rational(&big_rat(2, 1)).sign(), -1);
        assert_eq!(l.sub_rational(&big_rat(8, 5)).sign(), 1);
        assert_eq!(l.sub_rational(&big_rat(13, 8)).sign(), -1);
    }

    #[test]
    fn zero_test_sees_through_reducible_modulus() {
        let ctx = reducible_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        // x^2 - x - 1 is not the zero residue, but vanishes at the root.
        let a = l.mul(&l).sub(&l).sub_rational(&big_rat(1, 1));
        assert!(!a.rep().is_zero());
        assert!(a.is_zero());
        // x + 2 vanishes only at -2, which is outside the interval.
        let b = l.add_rational(&big_rat(2, 1));
        assert!(!b.is_zero());
        assert_eq!(b.sign(), 1);
        // Their product is the modulus, the literal zero residue.
        assert!(a.mul(&b).rep().is_zero());
    }

    #[test]
    fn ring_identities() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        let a = l.mul_rational(&big_rat(3, 2)).sub_rational(&big_rat(1, 3));
        let b = l.add_rational(&big_rat(2, 1));
        let c = l.mul(&l).neg();
        let left = a.add(&b).mul(&c);
        let right = a.mul(&c).add(&b.mul(&c));
        assert!(left.sub(&right).is_zero());
        assert!(a.sub(&a).is_zero());
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn inverse_of_golden_root() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        // 1/phi = phi - 1.
        let inv = l.invert().unwrap();
        assert!(inv.sub(&l.sub_rational(&big_rat(1, 1))).is_zero());
        assert!(l.mul(&inv).sub_rational(&big_rat(1, 1)).is_zero());
    }

    #[test]
    fn inverse_with_zero_divisors_present() {
        let ctx = reducible_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        let v = l.add_rational(&big_rat(2, 1)); // phi + 2, a zero divisor's partner
        let inv = v.invert().unwrap();
        assert!(v.mul(&inv).sub_rational(&big_rat(1, 1)).is_zero());
        // A residue that vanishes at the root has no inverse.
        let z = l.mul(&l).sub(&l).sub_rational(&big_rat(1, 1));
        assert!(matches!(z.invert(), Err(AlgebraError::DivisionByZero)));
    }

    #[test]
    fn rational_fast_path() {
        let two = RealAlgebraic::rational(big_rat(2, 1));
        let third = RealAlgebraic::rational(big_rat(1, 3));
        assert_eq!(two.known_rational(), Some(big_rat(2, 1)));
        assert_eq!(two.mul(&third).known_rational(), Some(big_rat(2, 3)));
        assert_eq!(two.sign(), 1);
        assert_eq!(third.sub(&two).sign(), -1);
        assert_eq!(two.invert().unwrap().known_rational(), Some(big_rat(1, 2)));
    }

    #[test]
    fn floor_of_assorted_values() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        assert_eq!(l.floor(), BigInt::from(1));
        assert_eq!(l.neg().floor(), BigInt::from(-2));
        assert_eq!(RealAlgebraic::rational(big_rat(7, 2)).floor(), BigInt::from(3));
        assert_eq!(RealAlgebraic::rational(big_rat(-7, 2)).floor(), BigInt::from(-4));
        assert_eq!(RealAlgebraic::rational(big_rat(3, 1)).floor(), BigInt::from(3));
        // 2 phi - phi^2 = phi - 1 in (0, 1).
        let v = l.mul_rational(&big_rat(2, 1)).sub(&l.mul(&l));
        assert_eq!(v.floor(), BigInt::zero());
    }

    #[test]
    fn floor_of_hidden_integer() {
        // In the reducible context phi^2 - phi stays a degree-2 residue
        // whose value is exactly 1.
        let ctx = reducible_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        let v = l.mul(&l).sub(&l);
        assert_eq!(v.rep().degree(), 2);
        assert_eq!(v.floor(), BigInt::one());
    }

    #[test]
    fn decimal_rendering() {
        let ctx = golden_ctx();
        let l = RealAlgebraic::lambda(&ctx);
        assert_eq!(l.to_decimal(12), "1.618033988750");
        assert_eq!(l.to_decimal(5), "1.61803");
        assert_eq!(l.neg().to_decimal(3), "-1.618");
        assert_eq!(RealAlgebraic::rational(big_rat(1, 3)).to_decimal(5), "0.33333");
        assert_eq!(RealAlgebraic::rational(big_rat(2, 3)).to_decimal(4), "0.6667");
    }

    #[test]
    fn decimal_rounds_half_to_even() {
        let r = |n, d| RealAlgebraic::rational(big_rat(n, d));
        assert_eq!(r(1, 2).to_decimal(0), "0");
        assert_eq!(r(3, 2).to_decimal(0), "2");
        assert_eq!(r(5, 2).to_decimal(0), "2");
        assert_eq!(r(7, 2).to_decimal(0), "4");
        assert_eq!(r(-1, 2).to_decimal(0), "0");
        assert_eq!(r(-3, 2).to_decimal(0), "-2");
        assert_eq!(r(1, 8).to_decimal(2), "0.12");
        assert_eq!(r(3, 8).to_decimal(2), "0.38");
    }

    #[test]
    fn cross_comparison_recognizes_equal_values() {
        // phi - 1 in Q[x]/(x^2-x-1) equals mu - 2 in Q[x]/(x^2-3x+1),
        // where mu = phi^2 is the larger root of the second modulus.
        let a = RealAlgebraic::lambda(&golden_ctx()).sub_rational(&big_rat(1, 1));
        let ctx2 =
            AlgebraicContext::new(&IntPoly::from_i64(&[1, -3, 1]), big_rat(2, 1), big_rat(3, 1))
                .unwrap();
        let b = RealAlgebraic::lambda(&ctx2).sub_rational(&big_rat(2, 1));
        assert_eq!(a.cross_cmp(&b), Ordering::Equal);
        assert_eq!(b.cross_cmp(&a), Ordering::Equal);
        assert!(a == b);
    }

    #[test]
    fn cross_comparison_orders_unequal_values() {
        let phi = RealAlgebraic::lambda(&golden_ctx());
        let ctx2 =
            AlgebraicContext::new(&IntPoly::from_i64(&[1, -3, 1]), big_rat(2, 1), big_rat(3, 1))
                .unwrap();
        let mu = RealAlgebraic::lambda(&ctx2);
        assert_eq!(phi.cross_cmp(&mu), Ordering::Less);
        assert_eq!(mu.cross_cmp(&phi), Ordering::Greater);
        let two = RealAlgebraic::rational(big_rat(2, 1));
        assert_eq!(two.cross_cmp(&phi), Ordering::Greater);
        assert_eq!(phi.cross_cmp(&two), Ordering::Less);
        assert_eq!(
            RealAlgebraic::rational(big_rat(1, 2))
                .cross_cmp(&RealAlgebraic::rational(big_rat(1, 3))),
            Ordering::Greater
        );
    }

    #[test]
    fn ordering_trait_sorts_across_contexts() {
        let phi = RealAlgebraic::lambda(&golden_ctx());
        let mut vals = vec![
            phi.clone(),
            RealAlgebraic::rational(big_rat(3, 1)),
            phi.sub_rational(&big_rat(1, 1)),
            RealAlgebraic::rational(big_rat(0, 1)),
        ];
        vals.sort();
        let shown: Vec<String> = vals.iter().map(|v| v.to_decimal(2)).collect();
        assert_eq!(shown, vec!["0.00", "0.62", "1.62", "3.00"]);
    }

    #[test]
    fn rational_between_frozen_cases() {
        let r = |n, d| RealAlgebraic::rational(big_rat(n, d));
        assert_eq!(rational_between(&r(1, 3), &r(2, 3)).unwrap(), big_rat(1, 2));
        assert_eq!(rational_between(&r(0, 1), &r(1, 1)).unwrap(), big_rat(1, 2));
        // Between (sqrt5 - 1)/2 and 1 the simplest rational is 2/3.
        let inv_phi = RealAlgebraic::lambda(&golden_ctx()).sub_rational(&big_rat(1, 1));
        assert_eq!(rational_between(&inv_phi, &r(1, 1)).unwrap(), big_rat(2, 3));
    }

    #[test]
    fn rational_between_prefers_small_integers() {
        let r = |n, d| RealAlgebraic::rational(big_rat(n, d));
        assert_eq!(rational_between(&r(3, 2), &r(7, 2)).unwrap(), big_rat(2, 1));
        assert_eq!(rational_between(&r(-5, 2), &r(5, 2)).unwrap(), big_rat(0, 1));
        assert_eq!(rational_between(&r(-7, 2), &r(-3, 2)).unwrap(), big_rat(-2, 1));
        assert_eq!(rational_between(&r(-9, 1), &r(9, 1)).unwrap(), big_rat(0, 1));
    }

    #[test]
    fn rational_between_rejects_empty_intervals() {
        let r = |n, d| RealAlgebraic::rational(big_rat(n, d));
        assert!(matches!(
            rational_between(&r(2, 3), &r(1, 3)),
            Err(AlgebraError::EmptyInterval)
        ));
        assert!(matches!(
            rational_between(&r(1, 2), &r(1, 2)),
            Err(AlgebraError::EmptyInterval)
        ));
    }

    #[test]
    fn rational_between_minimizes_denominator() {
        // Brute-force check: no rational with a smaller denominator fits
        // strictly inside.
        let cases = [
            (big_rat(2, 7), big_rat(3, 7)),
            (big_rat(5, 13), big_rat(6, 13)),
            (big_rat(-3, 5), big_rat(-2, 5)),
            (big_rat(17, 12), big_rat(29, 20)),
            (big_rat(99, 100), big_rat(100, 99)),
        ];
        for (a, b) in cases {
            let got = rational_between(
                &RealAlgebraic::rational(a.clone()),
                &RealAlgebraic::rational(b.clone()),
            )
            .unwrap();
            assert!(a < got && got < b, "{} not inside ({}, {})", got, a, b);
            let qmax = got.denom().clone();
            let mut q = BigInt::one();
            while q < qmax {
                // Any p/q inside would need floor(a q) + 1 < b q.
                let p = (a.clone() * BigRational::from(q.clone())).floor() + BigRational::one();
                assert!(
                    p >= b.clone() * BigRational::from(q.clone()),
                    "denominator {} beats {} in ({}, {})",
                    q,
                    got,
                    a,
                    b
                );
                q += BigInt::one();
            }
        }
    }

    #[test]
    fn exact_repr_roundtrip() {
        let phi = RealAlgebraic::lambda(&golden_ctx());
        let v = phi.mul_rational(&big_rat(2, 3)).add_rational(&big_rat(1, 7));
        let repr = v.exact_repr();
        let back = RealAlgebraic::from_exact_repr(&repr).unwrap();
        assert!(v == back);

        let r = RealAlgebraic::rational(big_rat(-5, 3));
        let back = RealAlgebraic::from_exact_repr(&r.exact_repr()).unwrap();
        assert!(r == back);

        let json = serde_json::to_string(&repr).unwrap();
        let reparsed: ExactRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(repr, reparsed);
    }

    #[test]
    fn exact_repr_rejects_garbage() {
        let repr = ExactRepr {
            modulus: vec!["not-a-number".into()],
            lo: "0".into(),
            hi: "1".into(),
            rep: vec!["1".into()],
        };
        assert!(matches!(
            RealAlgebraic::from_exact_repr(&repr),
            Err(AlgebraError::BadEncoding)
        ));
    }
}
