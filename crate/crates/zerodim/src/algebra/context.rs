//! Contexts: a squarefree modulus together with one isolated real root.
//!
//! Every [`crate::algebra::RealAlgebraic`] carries a shared context. The
//! context knows how to reduce polynomials modulo the modulus, how to
//! count modulus roots in an interval, and how to shrink its isolating
//! interval. Intervals follow a half-open convention: the root `lambda`
//! satisfies `lo < lambda <= hi`, and Sturm counts over `(a, b]` are
//! `V(a) - V(b)`. Bisection then keeps exactly one endpoint
//! configuration valid with no special cases when a midpoint lands on a
//! root.

use super::poly::{IntPoly, RatInterval, RatPoly, SturmChain};
use super::AlgebraError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, Mutex};

/// The quotient ring `Q[x]/(modulus)` evaluated at one isolated real
/// root.
///
/// The modulus is squarefree but deliberately not factored, so the
/// quotient may contain zero divisors; they are harmless because every
/// decision evaluates at the isolated root. When the root is rational
/// the modulus is linear and all arithmetic short-circuits to rational
/// arithmetic.
pub struct AlgebraicContext {
    /// Monic squarefree modulus.
    modulus: RatPoly,
    /// Sturm chain of the modulus; unused when the root is rational.
    sturm: SturmChain,
    /// Exact root when the modulus is linear.
    rational: Option<BigRational>,
    /// Isolating interval `(lo, hi]`; a point interval for rational
    /// roots. Only ever shrinks.
    interval: Mutex<RatInterval>,
}

impl AlgebraicContext {
    /// Builds a context from an integer modulus and an interval
    /// `(lo, hi]` that must contain exactly one of its roots.
    pub fn new(
        modulus: &IntPoly,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Arc<Self>, AlgebraError> {
        if modulus.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let m = modulus.to_rat().monic();
        if m.gcd(&m.derivative()).degree() != 0 {
            return Err(AlgebraError::NotSquarefree);
        }
        if lo >= hi {
            return Err(AlgebraError::BadRootInterval);
        }
        let sturm = SturmChain::new(&m);
        if sturm.count_roots_half_open(&lo, &hi) != 1 {
            return Err(AlgebraError::BadRootInterval);
        }
        if m.eval(&hi).is_zero() {
            // The single root in (lo, hi] is hi itself.
            return Ok(Self::for_rational(hi));
        }
        let rational = if m.degree() == 1 {
            Some(-m.constant_term())
        } else {
            None
        };
        Ok(Arc::new(AlgebraicContext {
            sturm,
            rational,
            interval: Mutex::new(RatInterval::new(lo, hi)),
            modulus: m,
        }))
    }

    /// Context whose root is the given rational, with linear modulus
    /// `x - r`.
    pub fn for_rational(r: BigRational) -> Arc<Self> {
        let m = RatPoly::new(vec![-r.clone(), BigRational::one()]);
        Arc::new(AlgebraicContext {
            sturm: SturmChain::new(&m),
            modulus: m,
            interval: Mutex::new(RatInterval::point(r.clone())),
            rational: Some(r),
        })
    }

    /// Context for plain rational arithmetic, rooted at zero.
    pub fn rational_zero() -> Arc<Self> {
        Self::for_rational(BigRational::zero())
    }

    /// Monic squarefree modulus.
    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    /// Primitive integer rendering of the modulus.
    pub fn modulus_int(&self) -> IntPoly {
        self.modulus.to_int_primitive()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    /// The exact root when it is rational.
    pub fn rational_root(&self) -> Option<&BigRational> {
        self.rational.as_ref()
    }

    /// Current isolating interval.
    pub fn interval(&self) -> RatInterval {
        self.interval.lock().unwrap().clone()
    }

    /// One bisection step on the isolating interval. No-op for rational
    /// roots.
    pub fn refine(&self) {
        if self.rational.is_some() {
            return;
        }
        let mut iv = self.interval.lock().unwrap();
        let two = BigRational::from(BigInt::from(2));
        let mid = (&iv.lo + &iv.hi) / two;
        if self.sturm.count_roots_half_open(&mid, &iv.hi) == 1 {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }

    /// Shrinks the isolating interval until its width is below `eps`.
    pub fn refine_below(&self, eps: &BigRational) {
        debug_assert!(eps.is_positive());
        while &self.interval().width() >= eps {
            self.refine();
        }
    }

    /// Number of modulus roots in `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sturm.count_roots_half_open(a, b)
    }

    /// Reduction modulo the modulus; for linear moduli this is
    /// evaluation at the root.
    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        p.rem(&self.modulus)
    }

    /// Whether two contexts describe the same root of the same modulus.
    ///
    /// Two isolating intervals for roots of one squarefree polynomial
    /// pick the same root exactly when their hull still contains a
    /// single root.
    pub fn same_root(&self, other: &Self) -> bool {
        match (&self.rational, &other.rational) {
            (Some(a), Some(b)) => a == b,
            (None, None) => {
                if self.modulus != other.modulus {
                    return false;
                }
                let hull = self.interval().hull(&other.interval());
                self.sturm.count_roots_half_open(&hull.lo, &hull.hi) == 1
            }
            _ => false,
        }
    }
}

impl fmt::Display for AlgebraicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rational {
            Some(r) => write!(f, "x = {}", r),
            None => {
                let iv = self.interval();
                write!(f, "root of {} in ({}, {}]", self.modulus_int(), iv.lo, iv.hi)
            }
        }
    }
}

impl fmt::Debug for AlgebraicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recurrence. All divisions are exact over the integers.
pub fn characteristic_polynomial(m: &[Vec<BigInt>]) -> Result<IntPoly, AlgebraError> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(AlgebraError::NonSquareMatrix);
        }
    }
    if n == 0 {
        return Ok(IntPoly::from_i64(&[1]));
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // mk starts as M; step k adds c_{n-k} then premultiplies by M.
    let mut mk = m.to_vec();
    for k in 1..=n {
        if k > 1 {
            let c = coeffs[n - k + 1].clone();
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &c;
            }
            mk = mat_mul(m, &mk);
        }
        let tr: BigInt = (0..n).map(|i| mk[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    Ok(IntPoly::new(coeffs))
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Squarefree part `p / gcd(p, p')` as a primitive integer polynomial.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(p.to_rat().squarefree().to_int_primitive())
}

/// Isolates the largest real root of `p`, which must be positive, and
/// returns a context rooted there.
///
/// For the characteristic polynomial of a primitive nonnegative integer
/// matrix the largest real root is the dominant (Perron) eigenvalue.
/// When `p` is monic an exactly-integer root is recognized during
/// bisection and the context collapses to rational arithmetic.
pub fn isolate_perron_root(p: &IntPoly) -> Result<Arc<AlgebraicContext>, AlgebraError> {
    let sf = squarefree_part(p)?;
    if sf.degree() == 0 {
        return Err(AlgebraError::NoPerronRoot);
    }
    if sf.degree() == 1 {
        let c = &sf.coeffs()[0];
        let l = &sf.coeffs()[1];
        let r = BigRational::new(-c.clone(), l.clone());
        if r.is_positive() {
            return Ok(AlgebraicContext::for_rational(r));
        }
        return Err(AlgebraError::NoPerronRoot);
    }

    let sf_rat = sf.to_rat().monic();
    let chain = SturmChain::new(&sf_rat);

    // Cauchy bound, rounded up to an integer so every bisection endpoint
    // stays dyadic.
    let lead = sf.leading().unwrap().magnitude().clone();
    let mut max_ratio = BigInt::zero();
    for c in &sf.coeffs()[..sf.degree()] {
        let q = (c.magnitude() + &lead - 1u32) / &lead; // ceil(|c| / lead)
        let q = BigInt::from(q);
        if q > max_ratio {
            max_ratio = q;
        }
    }
    let bound = BigRational::from(max_ratio + BigInt::one());

    let mut lo = BigRational::zero();
    let mut hi = bound;
    if chain.count_roots_half_open(&lo, &hi) == 0 {
        return Err(AlgebraError::NoPerronRoot);
    }

    // Bisect toward the rightmost root. Keep going below width 1 so a
    // monic modulus can reveal an integer root (for monic integer
    // polynomials every rational root is an integer).
    let monic = sf.is_monic();
    let one = BigRational::one();
    let two = BigRational::from(BigInt::from(2));
    loop {
        let n_roots = chain.count_roots_half_open(&lo, &hi);
        if n_roots == 1 {
            let width = &hi - &lo;
            if !monic {
                break;
            }
            if width < one {
                let cand = hi.floor();
                if cand > lo && sf_rat.eval(&cand).is_zero() {
                    return Ok(AlgebraicContext::for_rational(cand));
                }
                // At most one integer fits in an interval narrower than
                // one; it is not a root, so the root is irrational.
                break;
            }
        }
        let mid = (&lo + &hi) / &two;
        if chain.count_roots_half_open(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    AlgebraicContext::new(&sf, lo, hi)
}
