//! Dense univariate polynomials over the integers and rationals, plus
//! Sturm chains and rational interval arithmetic.
//!
//! Coefficients are stored lowest degree first with no trailing zeros;
//! the zero polynomial is the empty coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Writes `coeffs` (lowest degree first) as a human-readable polynomial
/// in `x`, highest degree term first.
fn fmt_poly<T>(coeffs: &[T], f: &mut fmt::Formatter<'_>) -> fmt::Result
where
    T: Zero + One + Signed + fmt::Display + Clone + PartialEq,
{
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        if i == 0 || !mag.is_one() {
            write!(f, "{}", mag)?;
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{}", i)?,
        }
    }
    Ok(())
}

/// A polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients, lowest degree first.
    /// Trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content and normalizes the leading coefficient to
    /// be positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

/// A polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Constant term, zero for the zero polynomial.
    pub fn constant_term(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation over a closed interval; the result interval
    /// contains `p(t)` for every `t` in the input interval.
    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::point(BigRational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(c);
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::new(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division by a nonzero divisor: `self = q * d + r` with
    /// `deg r < deg d`.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dlead = d.leading().unwrap().clone();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &dlead;
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let delta = &q * dc;
                rem[i - dd + j] -= delta;
            }
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Leading coefficient scaled to 1; zero stays zero.
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let inv = BigRational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g`
    /// and `g` monic (or zero when both inputs are zero).
    pub fn extended_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = RatPoly::one();
        let mut u1 = RatPoly::zero();
        let mut v0 = RatPoly::zero();
        let mut v1 = RatPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let nu = u0.sub(&q.mul(&u1));
            let nv = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = nu;
            v0 = v1;
            v1 = nv;
        }
        match r0.leading() {
            None => (RatPoly::zero(), RatPoly::zero(), RatPoly::zero()),
            Some(l) => {
                let inv = BigRational::one() / l;
                (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
            }
        }
    }

    /// Clears denominators and the content; positive leading coefficient.
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        IntPoly::new(ints).primitive_part()
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, f)
    }
}

/// A Sturm chain with sign-variation root counting.
///
/// Chain members are rescaled by positive constants to keep coefficients
/// small; this preserves every sign pattern the counts depend on.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain of `p`. Root counts are exact when `p` is
    /// squarefree.
    pub fn new(p: &RatPoly) -> Self {
        let mut seq = Vec::new();
        let p0 = positive_rescale(p);
        if p0.is_zero() {
            return SturmChain { seq };
        }
        seq.push(p0.clone());
        let mut prev = p0;
        let mut cur = positive_rescale(&p.derivative());
        while !cur.is_zero() {
            seq.push(cur.clone());
            let r = positive_rescale(&prev.rem(&cur).neg());
            prev = cur;
            cur = r;
        }
        SturmChain { seq }
    }

    /// Number of sign changes in the chain evaluated at `x`, zeros
    /// skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0usize;
        let mut last: Option<bool> = None;
        for p in &self.seq {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            if let Some(l) = last {
                if l != neg {
                    count += 1;
                }
            }
            last = Some(neg);
        }
        count
    }

    /// Number of real roots of the squarefree base polynomial in the
    /// half-open interval `(a, b]`, for `a <= b`.
    pub fn count_roots_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        debug_assert!(a <= b);
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Root count over the closed interval `[a, b]`.
    pub fn count_roots_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = if self.seq.is_empty() {
            false
        } else {
            self.seq[0].eval(a).is_zero()
        };
        self.count_roots_half_open(a, b) + usize::from(at_a)
    }
}

/// Rescales by a positive rational so coefficients are coprime integers.
/// The zero polynomial is returned unchanged.
fn positive_rescale(p: &RatPoly) -> RatPoly {
    if p.is_zero() {
        return RatPoly::zero();
    }
    let ip = p.to_int_primitive();
    let mut q = ip.to_rat();
    // to_int_primitive flips negative leading coefficients; flip back.
    if p.leading().unwrap().is_negative() {
        q = q.neg();
    }
    q
}

/// A closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add_scalar(&self, c: &BigRational) -> RatInterval {
        RatInterval { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        RatInterval { lo, hi }
    }

    /// True when the intervals share no point.
    pub fn disjoint_from(&self, other: &RatInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    /// Intersection, when nonempty.
    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo <= hi {
            Some(RatInterval { lo, hi })
        } else {
            None
        }
    }
}

#[cfg(test)]
pub(crate) fn big_rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
