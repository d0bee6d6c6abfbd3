//! Comparison of clopen sets under every ergodic measure at once.
//!
//! Two sets compare strictly only when every measure separates them the
//! same way; a mix of strict and tied entries already counts as
//! incomparable, matching the strict order on the value group.

use crate::clopen::{ClopenError, ClopenSet, MeasureVector};
use crate::systems::SystemSpace;
use std::fmt;
use std::sync::Arc;

/// Outcome of comparing two sets measure by measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Equal,
    StrictlyAbove,
    StrictlyBelow,
    Incomparable,
}

impl VerdictKind {
    /// Short relation symbol for tabular output.
    pub fn symbol(&self) -> &'static str {
        match self {
            VerdictKind::Equal => "=",
            VerdictKind::StrictlyAbove => ">",
            VerdictKind::StrictlyBelow => "<",
            VerdictKind::Incomparable => "||",
        }
    }

    /// Stable machine code for structured output.
    pub fn code(&self) -> &'static str {
        match self {
            VerdictKind::Equal => "EQ",
            VerdictKind::StrictlyAbove => "GEQ_STRICT",
            VerdictKind::StrictlyBelow => "LEQ_STRICT",
            VerdictKind::Incomparable => "INCOMPARABLE",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self {
            VerdictKind::Equal => "equal",
            VerdictKind::StrictlyAbove => "strictly above",
            VerdictKind::StrictlyBelow => "strictly below",
            VerdictKind::Incomparable => "incomparable",
        };
        write!(f, "{}", word)
    }
}

/// A comparison verdict with its evidence: both measure vectors, their
/// entrywise difference, its exact signs, and for incomparable pairs
/// the two measure indices that clash.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub signs: Vec<i8>,
    pub witness_indices: Option<(usize, usize)>,
    pub left: MeasureVector,
    pub right: MeasureVector,
    pub difference: MeasureVector,
}

fn classify(signs: &[i8]) -> VerdictKind {
    if signs.iter().all(|&s| s == 0) {
        VerdictKind::Equal
    } else if signs.iter().all(|&s| s == 1) {
        VerdictKind::StrictlyAbove
    } else if signs.iter().all(|&s| s == -1) {
        VerdictKind::StrictlyBelow
    } else {
        VerdictKind::Incomparable
    }
}

/// For an incomparable sign vector, the indices that clash: an
/// opposite-strict pair when one exists, otherwise a strict entry next
/// to a tied one.
fn clash_indices(signs: &[i8]) -> (usize, usize) {
    let first_of = |wanted: i8| signs.iter().position(|&s| s == wanted);
    match (first_of(1), first_of(-1)) {
        (Some(p), Some(n)) => (p, n),
        _ => {
            let strict = signs.iter().position(|&s| s != 0).expect("some strict entry");
            let tied = signs.iter().position(|&s| s == 0).expect("some tied entry");
            (strict, tied)
        }
    }
}

/// Compares two measure vectors entry by entry.
pub fn compare_measure_vectors(
    a: &MeasureVector,
    b: &MeasureVector,
) -> Result<Verdict, ClopenError> {
    let difference = a.sub(b)?;
    let signs = difference.signs();
    let kind = classify(&signs);
    let witness_indices = (kind == VerdictKind::Incomparable).then(|| clash_indices(&signs));
    Ok(Verdict {
        kind,
        signs,
        witness_indices,
        left: a.clone(),
        right: b.clone(),
        difference,
    })
}

/// Compares two clopen sets of one space by their measure vectors.
pub fn compare(a: &ClopenSet, b: &ClopenSet) -> Result<Verdict, ClopenError> {
    if !a.same_space_as(b) {
        return Err(ClopenError::SpaceMismatch);
    }
    compare_measure_vectors(&a.measure_vector(), &b.measure_vector())
}

/// A pair of sets no measure ordering reconciles.
#[derive(Clone, Debug)]
pub struct IncomparableWitness {
    pub first: ClopenSet,
    pub second: ClopenSet,
    pub verdict: Verdict,
}

/// All single-component unions of window-`n` cylinders at offset 0,
/// components in declaration order, `n` ascending, word subsets in
/// ascending bitmask order over the sorted word list. Exponential in
/// the word counts, so keep `max_len` small.
fn candidates(space: &Arc<SystemSpace>, max_len: usize) -> Vec<ClopenSet> {
    let mut out = Vec::new();
    for comp in space.components() {
        for n in 1..=max_len {
            let words: Vec<String> = comp.language(n).iter().cloned().collect();
            assert!(words.len() < 24, "candidate enumeration needs a small window");
            for mask in 1u32..(1u32 << words.len()) {
                let subset = words
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, w)| w.clone())
                    .collect();
                out.push(
                    ClopenSet::from_words(space, comp.name(), 0, &subset)
                        .expect("component names come from the space"),
                );
            }
        }
    }
    out
}

/// Searches candidate pairs for an incomparable one. Pairs where some
/// measure strictly rises and another strictly falls are preferred;
/// strict-and-tied mixes are kept only as a fallback.
pub fn find_incomparable(
    space: &Arc<SystemSpace>,
    max_len: usize,
) -> Option<IncomparableWitness> {
    let cands = candidates(space, max_len);
    let mut fallback = None;
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            let verdict = compare(&cands[i], &cands[j]).expect("candidates share the space");
            if verdict.kind != VerdictKind::Incomparable {
                continue;
            }
            let witness = IncomparableWitness {
                first: cands[i].clone(),
                second: cands[j].clone(),
                verdict: verdict.clone(),
            };
            if verdict.signs.contains(&1) && verdict.signs.contains(&-1) {
                return Some(witness);
            }
            if fallback.is_none() {
                fallback = Some(witness);
            }
        }
    }
    fallback
}

/// Tally of an exhaustive pairwise comparability scan.
#[derive(Debug)]
pub struct ComparabilityReport {
    pub sets: usize,
    pub pairs: usize,
    pub incomparable: usize,
    pub capped: bool,
    pub first_incomparable: Option<IncomparableWitness>,
}

/// Every clopen set over the window `[0, max_len)`: one word subset per
/// component, encoded as one global bitmask over the concatenated
/// sorted word lists. Falls back to evenly spaced masks when the count
/// exceeds `budget`.
fn window_sets(space: &Arc<SystemSpace>, max_len: usize, budget: usize) -> (Vec<ClopenSet>, bool) {
    let mut layout = Vec::new();
    let mut total_bits = 0usize;
    for comp in space.components() {
        let words: Vec<String> = comp.language(max_len).iter().cloned().collect();
        total_bits += words.len();
        layout.push((comp.name().to_string(), words));
    }
    assert!(total_bits <= 96, "window too wide to enumerate");
    let total: u128 = 1u128 << total_bits;
    let capped = total > budget as u128;
    let count = if capped { budget } else { total as usize };
    let mut sets = Vec::with_capacity(count);
    for k in 0..count {
        let mask = if capped { k as u128 * total / budget as u128 } else { k as u128 };
        let mut set = ClopenSet::empty(space);
        let mut bit = 0;
        for (name, words) in &layout {
            let subset: std::collections::BTreeSet<String> = words
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (bit + i) & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect();
            bit += words.len();
            if !subset.is_empty() {
                let piece = ClopenSet::from_words(space, name, 0, &subset)
                    .expect("window words are admissible");
                set = set.union(&piece).expect("same space");
            }
        }
        sets.push(set);
    }
    (sets, capped)
}

/// Compares every pair of window-`max_len` clopen sets and counts the
/// incomparable ones; `budget` caps how many sets are enumerated.
pub fn verify_total_comparability(
    space: &Arc<SystemSpace>,
    max_len: usize,
    budget: usize,
) -> ComparabilityReport {
    let (sets, capped) = window_sets(space, max_len, budget);
    let mut report = ComparabilityReport {
        sets: sets.len(),
        pairs: 0,
        incomparable: 0,
        capped,
        first_incomparable: None,
    };
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            report.pairs += 1;
            let verdict = compare(&sets[i], &sets[j]).expect("sets share the space");
            if verdict.kind == VerdictKind::Incomparable {
                report.incomparable += 1;
                if report.first_incomparable.is_none() {
                    report.first_incomparable = Some(IncomparableWitness {
                        first: sets[i].clone(),
                        second: sets[j].clone(),
                        verdict,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::big_rat;
    use crate::systems::tests::{fibonacci, thue_morse};

    fn union_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::new(vec![fibonacci(), thue_morse()]).unwrap())
    }

    fn fib_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::single(fibonacci()))
    }

    #[test]
    fn single_component_comparisons() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let aa = ClopenSet::parse(&space, "fib:0:aa").unwrap();
        let split = ClopenSet::parse(&space, "fib:0:aa|ab").unwrap();
        assert_eq!(compare(&aa, &a).unwrap().kind, VerdictKind::StrictlyBelow);
        assert_eq!(compare(&a, &aa).unwrap().kind, VerdictKind::StrictlyAbove);
        assert_eq!(compare(&a, &split).unwrap().kind, VerdictKind::Equal);
    }

    #[test]
    fn letters_of_different_components_are_incomparable() {
        let space = union_space();
        let fa = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let ta = ClopenSet::parse(&space, "tm:0:a").unwrap();
        let verdict = compare(&fa, &ta).unwrap();
        assert_eq!(verdict.kind, VerdictKind::Incomparable);
        assert_eq!(verdict.signs, vec![1, -1]);
        assert_eq!(verdict.witness_indices, Some((0, 1)));
    }

    #[test]
    fn strict_and_tied_mix_is_incomparable() {
        let v = MeasureVector::from_rationals(&[big_rat(1, 2), big_rat(1, 3)]);
        let w = MeasureVector::from_rationals(&[big_rat(1, 2), big_rat(2, 3)]);
        let vw = compare_measure_vectors(&v, &w).unwrap();
        let wv = compare_measure_vectors(&w, &v).unwrap();
        assert_eq!(vw.kind, VerdictKind::Incomparable);
        assert_eq!(wv.kind, VerdictKind::Incomparable);
        assert_eq!(vw.signs, vec![0, -1]);
        assert_eq!(wv.signs, vec![0, 1]);
        // No opposite-strict pair exists, so the clash pairs the strict
        // entry with the tied one.
        assert_eq!(vw.witness_indices, Some((1, 0)));
    }

    #[test]
    fn fibonacci_alone_is_totally_comparable() {
        let space = fib_space();
        assert!(find_incomparable(&space, 3).is_none());
        let report = verify_total_comparability(&space, 3, 4096);
        // Four window-3 words give 16 sets and 120 unordered pairs.
        assert_eq!(report.sets, 16);
        assert_eq!(report.pairs, 120);
        assert_eq!(report.incomparable, 0);
        assert!(!report.capped);
    }

    #[test]
    fn budget_caps_the_enumeration() {
        let space = fib_space();
        let report = verify_total_comparability(&space, 3, 8);
        assert!(report.capped);
        assert_eq!(report.sets, 8);
        assert_eq!(report.incomparable, 0);
    }

    #[test]
    fn union_scan_counts_incomparable_pairs() {
        let space = union_space();
        let report = verify_total_comparability(&space, 1, 4096);
        assert_eq!(report.sets, 16);
        assert!(report.incomparable >= 1);
        assert!(report.first_incomparable.is_some());
    }

    #[test]
    fn antisymmetry_and_symmetry_of_verdicts() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let aa = ClopenSet::parse(&space, "fib:0:aa").unwrap();
        assert_eq!(compare(&a, &aa).unwrap().kind, VerdictKind::StrictlyAbove);
        assert_eq!(compare(&aa, &a).unwrap().kind, VerdictKind::StrictlyBelow);
        assert_eq!(compare(&a, &a).unwrap().kind, VerdictKind::Equal);
        // Verdict survives shifting both sides equally.
        let v = compare(&a.shift_image(3), &aa.shift_image(3)).unwrap();
        assert_eq!(v.kind, VerdictKind::StrictlyAbove);
    }

    #[test]
    fn union_space_yields_opposite_strict_pair() {
        let space = union_space();
        let witness = find_incomparable(&space, 1).expect("the union has incomparable pairs");
        assert!(witness.verdict.signs.contains(&1));
        assert!(witness.verdict.signs.contains(&-1));
        // The scan order lands on the two letter cylinders first.
        assert_eq!(witness.first.format(), "fib:0:a");
        assert_eq!(witness.second.format(), "tm:0:a");
    }

    #[test]
    fn mismatched_inputs_error() {
        let fib_only = fib_space();
        let both = union_space();
        let a = ClopenSet::full(&fib_only);
        let b = ClopenSet::full(&both);
        assert!(matches!(compare(&a, &b), Err(ClopenError::SpaceMismatch)));
        let v = MeasureVector::from_rationals(&[big_rat(1, 2)]);
        let w = MeasureVector::from_rationals(&[big_rat(1, 2), big_rat(1, 3)]);
        assert!(matches!(
            compare_measure_vectors(&v, &w),
            Err(ClopenError::LengthMismatch)
        ));
    }
}
