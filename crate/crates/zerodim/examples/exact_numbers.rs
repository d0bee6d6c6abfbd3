//! Exact arithmetic with real algebraic numbers: no floats ever touch
//! a comparison. Values live in Q[x]/(q) evaluated at an isolated
//! root; signs come from Sturm chains and interval refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use zerodim::algebra::{isolate_perron_root, rational_between, IntPoly, RealAlgebraic};

fn main() {
    // The golden ratio as the dominant root of x^2 - x - 1.
    let q = IntPoly::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
    let ctx = isolate_perron_root(&q).expect("primitive characteristic polynomial");
    let l = RealAlgebraic::lambda(&ctx);
    println!("lambda               = {}", l.to_decimal(12));

    // lambda^2 - lambda - 1 is exactly zero, not merely small.
    let square = l.mul(&l);
    let residue = square.sub(&l).sub_rational(&BigRational::from_integer(BigInt::from(1)));
    println!("lambda^2 - lambda- 1 = {} (sign {})", residue.to_decimal(12), residue.sign());
    assert!(residue.is_zero());

    // 1/lambda = lambda - 1: inversion is exact in the quotient ring.
    let inv = l.invert().expect("lambda is invertible");
    let lm1 = l.sub_rational(&BigRational::from_integer(BigInt::from(1)));
    println!("1/lambda             = {}", inv.to_decimal(12));
    assert!(inv.sub(&lm1).is_zero());

    // Ordering across different contexts: sqrt5 = 2*lambda - 1 in this
    // ring, compared against plain rationals from another context.
    let sqrt5 = l.mul_rational(&BigRational::from_integer(BigInt::from(2)))
        .sub_rational(&BigRational::from_integer(BigInt::from(1)));
    let nine_quarters = RealAlgebraic::rational(BigRational::new(
        BigInt::from(9),
        BigInt::from(4),
    ));
    println!(
        "sqrt5 vs 9/4         : {:?}",
        sqrt5.cross_cmp(&nine_quarters)
    );

    // A rational strictly between two algebraic numbers, chosen with
    // the smallest denominator.
    let between = rational_between(&lm1, &l).expect("nonempty interval");
    println!("between lambda-1, lambda: {}", between);

    // Twelve-digit decimals round half to even and are reproducible.
    println!("lambda to 5 digits   = {}", l.to_decimal(5));
}
