//! The stepwise sign decision: to show sum of [a_i] minus sum of [b_j]
//! is nonnegative, repeatedly certify a prefix of the positives as a
//! single indicator class and absorb one negative into it. Every
//! certificate is an explicit clopen set, checked exactly.

use std::sync::Arc;
use zerodim::group::{
    indicator_membership, order_membership_check, sign_procedure, Decomposition,
    GroupElement, SignOutcome,
};
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let space = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "fib",
            Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
        )
        .unwrap(),
    ));

    // Is X - [a] >= 0? The procedure certifies X - [a] as the class of
    // [b] and consumes the negative: POSITIVE in one step.
    let d = Decomposition::new(
        &space,
        vec![ClopenSet::full(&space)],
        vec![ClopenSet::parse(&space, "fib:0:a").unwrap()],
    )
    .unwrap();
    let report = sign_procedure(&d, 3);
    for step in &report.steps {
        println!(
            "step {}: prefix {} is the class of {}",
            step.step, step.prefix_len, step.witness
        );
    }
    match report.outcome {
        SignOutcome::Positive => println!("outcome: POSITIVE"),
        ref other => println!("outcome: {:?}", other),
    }

    // The certificates come from indicator-class membership: which
    // clopen set has the same integrals as a given element? Subset
    // sums over word frequencies, searched window by window.
    let g = GroupElement::from_clopen(&ClopenSet::parse(&space, "fib:0:a").unwrap())
        .scale_by_integer(2)
        .sub(&GroupElement::order_unit(&space))
        .unwrap();
    let m = indicator_membership(&g, 3);
    println!(
        "2[a] - 1 is the class of {}",
        m.witness().expect("hit at window 2")
    );

    // On one minimal component the order and membership agree: A >= B
    // exactly when [A] - [B] is an indicator class.
    let full = ClopenSet::full(&space);
    let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
    let r = order_membership_check(&full, &a, 3).unwrap();
    println!(
        "X vs [a]: {}  difference class: {}",
        r.verdict.kind.code(),
        match r.forward.witness() {
            Some(c) => format!("YES, witness {}", c),
            None => "not certified".to_string(),
        }
    );
}
