//! Substitution components and their unique ergodic measures: word
//! frequencies come from the Perron eigenvector of the block matrix,
//! exactly, and empirical counts in a long iterate agree.

use zerodim::{Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let fib = SubshiftComponent::new(
        "fib",
        Substitution::new(&[('a', "ab"), ('b', "a")]).unwrap(),
    )
    .unwrap();
    let tm = SubshiftComponent::new(
        "tm",
        Substitution::new(&[('a', "ab"), ('b', "ba")]).unwrap(),
    )
    .unwrap();

    for comp in [&fib, &tm] {
        println!("component {}:", comp.name());
        for n in 1..=3 {
            println!("  {} words of length {}", comp.complexity(n), n);
        }
        for (word, freq) in comp.frequencies(2).iter() {
            println!("  freq({}) = {}  ({})", word, freq.to_decimal(12), freq);
        }
    }

    // Frequencies are exact: for Fibonacci, freq(a) = lambda - 1 where
    // lambda is the golden ratio. Check against letter counts in a
    // long iterate of the substitution.
    let word = fib.substitution().iterate("a", 20);
    let a_count = word.chars().filter(|&c| c == 'a').count();
    let empirical = a_count as f64 / word.len() as f64;
    let exact = fib.frequency_of("a").unwrap();
    println!(
        "fib sigma^20(a): {} letters, empirical freq(a) = {:.12}",
        word.len(),
        empirical
    );
    println!("exact freq(a)             = {}", exact.to_decimal(12));

    // Both components in one space: one ergodic measure per component,
    // so measure vectors have two entries.
    let space = std::sync::Arc::new(SystemSpace::new(vec![fib, tm]).unwrap());
    let full = zerodim::ClopenSet::full(&space);
    println!("union full-set measures   = {}", full.measure_vector());
}
