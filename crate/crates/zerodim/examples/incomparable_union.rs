//! Two minimal components give two ergodic measures, and the order on
//! clopen classes stops being total: sets supported on different
//! components are incomparable, and a scaled indicator splits the
//! measures with both strict signs.

use std::sync::Arc;
use zerodim::compare::find_incomparable;
use zerodim::group::{check_total_order, witness_nontotal};
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let space = Arc::new(
        SystemSpace::new(vec![
            SubshiftComponent::new(
                "fib",
                Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
            )
            .unwrap(),
            SubshiftComponent::new(
                "tm",
                Substitution::new(&[('a', "ab"), ('b', "ba")]).unwrap(),
            )
            .unwrap(),
        ])
        .unwrap(),
    );

    // The first incomparable pair among window-1 sets.
    let w = find_incomparable(&space, 1).expect("two measures force one");
    println!("incomparable: {}  vs  {}", w.first, w.second);
    println!("  signs {:?}", w.verdict.signs);

    // The same failure seen in the value group: an element whose
    // integral vector carries both strict signs.
    let report = check_total_order(&space, 1, 1, 10_000);
    let g = report.witness.expect("a union is never totally ordered");
    println!("group witness: {}", g);

    // And constructively from one clopen set: full Fibonacci component
    // has measures (1, 0); scaling by the mediant 1/2 of the spread
    // gives integrals (1, -1).
    let full_fib = ClopenSet::parse(&space, "fib:*").unwrap();
    let h = witness_nontotal(&full_fib).unwrap();
    println!("from fib:*   : {}", h);
    println!("  sign class {}", h.classify_sign());
}
