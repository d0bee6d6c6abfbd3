//! The comparability relation: A is comparable to B when the measure
//! of A - B has one sign under every invariant measure. On a single
//! minimal component every pair of clopen sets is comparable; the
//! exhaustive scan proves it for a whole window level.

use std::sync::Arc;
use zerodim::clopen::MeasureVector;
use zerodim::compare::{compare_measure_vectors, verify_total_comparability};
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let tm = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "tm",
            Substitution::new(&[('a', "ab"), ('b', "ba")]).unwrap(),
        )
        .unwrap(),
    ));

    // 1/3 vs 1/6: strictly above under the unique measure.
    let ab = ClopenSet::parse(&tm, "tm:0:ab").unwrap();
    let aa = ClopenSet::parse(&tm, "tm:0:aa").unwrap();
    let v = zerodim::compare::compare(&ab, &aa).unwrap();
    println!("[ab] {} [aa]  ({})", v.kind.symbol(), v.kind.code());
    println!("  difference {}", v.difference);

    // Every pair over a window: 2^p(L) sets, all pairs compared.
    let fib = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "fib",
            Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
        )
        .unwrap(),
    ));
    let report = verify_total_comparability(&fib, 3, 1_000_000);
    println!(
        "fibonacci L=3: {} sets, {} pairs, {} incomparable",
        report.sets, report.pairs, report.incomparable
    );
    assert_eq!(report.incomparable, 0);

    // Abstract measure vectors can be compared directly. (1/2, 1/3)
    // vs (1/2, 2/3) mixes a tie with a strict drop: incomparable both
    // ways.
    let rat = |n, d| num_rational::BigRational::new(
        num_bigint::BigInt::from(n),
        num_bigint::BigInt::from(d),
    );
    let v1 = MeasureVector::from_rationals(&[rat(1, 2), rat(1, 3)]);
    let v2 = MeasureVector::from_rationals(&[rat(1, 2), rat(2, 3)]);
    let fwd = compare_measure_vectors(&v1, &v2).unwrap();
    let back = compare_measure_vectors(&v2, &v1).unwrap();
    println!("(1/2,1/3) vs (1/2,2/3): {} and {}", fwd.kind.code(), back.kind.code());
    if let Some((i, j)) = fwd.witness_indices {
        println!("  witnessed by entries {} and {}", i, j);
    }
}
