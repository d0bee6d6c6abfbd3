//! Clopen sets as windowed word traces: Boolean algebra, refinement,
//! shifts, and exact measure vectors. Equality is decided by refining
//! both sides to a common window, never numerically.

use std::sync::Arc;
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let space = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "fib",
            Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
        )
        .unwrap(),
    ));

    // Cylinders parse from `component:offset:words` notation.
    let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
    let b = ClopenSet::parse(&space, "fib:0:b").unwrap();
    println!("[a] = {}   measure {}", a, a.measure_vector());
    println!("[b] = {}   measure {}", b, b.measure_vector());

    // Boolean algebra is exact; complements collapse to the canonical
    // form on printing.
    println!("[a] union [b]      = {}", a.union(&b).unwrap());
    println!("[a] intersect [b]  = {}", a.intersect(&b).unwrap());
    println!("complement of [a]  = {}", a.complement());

    // The same set over different windows: [a] equals [aa] union [ab],
    // decided by refinement to the hull window.
    let split = ClopenSet::parse(&space, "fib:0:aa|ab").unwrap();
    println!("[a] == [aa]|[ab]   : {}", a == split);

    // Windows can sit anywhere; intersection aligns them. A point with
    // a at 0 and b at -1 shows the word ba starting at -1.
    let b_before = ClopenSet::parse(&space, "fib:-1:b").unwrap();
    let meet = a.intersect(&b_before).unwrap();
    println!("[a]_0 meet [b]_-1  = {}", meet);

    // Shifts translate windows and preserve every measure.
    let shifted = meet.shift_image(3);
    println!("shifted by 3       = {}", shifted);
    println!(
        "measures agree     : {}",
        meet.measure_vector()
            .sub(&shifted.measure_vector())
            .unwrap()
            .signs()
            .iter()
            .all(|&s| s == 0)
    );

    // Inadmissible words are rejected at construction: bb never occurs
    // in the Fibonacci subshift.
    match ClopenSet::parse(&space, "fib:0:bb") {
        Err(e) => println!("fib:0:bb rejected  : {}", e),
        Ok(_) => unreachable!("bb is not a Fibonacci word"),
    }
}
