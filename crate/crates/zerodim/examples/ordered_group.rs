//! The value group: integer combinations of clopen indicators up to
//! functions of zero integral. Classes are decided by exact integral
//! vectors; the cone is pointed, and nonnegative classes admit
//! explicitly nonnegative representatives.

use std::sync::Arc;
use zerodim::group::{check_pointed, find_nonneg_representative, GroupElement, SignClass};
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let space = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "fib",
            Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
        )
        .unwrap(),
    ));

    // The order unit integrates to 1 against every measure.
    let unit = GroupElement::order_unit(&space);
    println!("order unit : {}", unit);

    // Different representatives of one class are equal: [a] and
    // [aa] + [ab] have the same integrals.
    let a = GroupElement::from_clopen(&ClopenSet::parse(&space, "fib:0:a").unwrap());
    let split = GroupElement::from_clopen(&ClopenSet::parse(&space, "fib:0:aa|ab").unwrap());
    println!("[a] class  : {}", a);
    println!("same class : {}", a == split);

    // States evaluate classes against each measure.
    let tau = a.state_evaluate(0).unwrap();
    println!("tau([a])   = {} (= lambda - 1)", tau.to_decimal(12));

    // 2[a] - 1 has integral 2(lambda-1) - 1 = sqrt5 - 2 > 0: in the
    // cone although the obvious representative takes the value -1 on
    // [b].
    let g = a.scale_by_integer(2).sub(&unit).unwrap();
    println!("2[a] - 1   : {}", g);
    assert_eq!(g.classify_sign(), SignClass::Positive);

    // A representative with nonnegative coefficients exists at window
    // 2: the indicator of [aa].
    let h = find_nonneg_representative(&g, 4).unwrap().expect("within bounds");
    println!("nonneg rep : {}", h);
    let (_, len, coeffs) = h.piece(0);
    assert!(coeffs.values().all(|&c| c >= 0));
    println!("  window {}  coeffs {:?}", len, coeffs);

    // The cone is pointed: no nonzero class is nonnegative together
    // with its negation. Randomized mirror check, seeded.
    let report = check_pointed(&space, 200);
    println!(
        "pointedness: {} samples, {} violations",
        report.samples, report.violations
    );
}
