//! The value group of integer clopen combinations, its positive cone,
//! and the constructive order machinery: sign classification, the
//! stepwise sign decision for indicator sums, membership in the set of
//! clopen indicator classes, nonnegative representatives, and
//! witnesses against totality.
//!
//! An element is an integer step function f = Σ m_w·χ_{[w]} taken up
//! to functions whose integral vanishes against every invariant
//! measure. With one ergodic measure per component, the class of f is
//! determined by its integral vector; equality and sign questions are
//! decided on integrals, while each element still carries a concrete
//! representative for the searches that need one.

use crate::algebra::{rational_between, RealAlgebraic};
use crate::clopen::ClopenSet;
use crate::compare::{compare, Verdict, VerdictKind};
use crate::systems::{SubshiftComponent, SystemSpace};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// Errors from group construction and the order procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Operands belong to different spaces.
    SpaceMismatch,
    /// A measure index outside the space.
    IndexOutOfRange,
    /// All measure entries equal where a strict spread is needed.
    MeasureSpreadRequired,
    /// The element is neither zero nor in the positive cone.
    NotNonnegative,
    /// An operation that needs a single minimal component.
    MinimalityRequired,
    /// A decomposition entry with zero measure everywhere.
    ZeroSummand,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::SpaceMismatch => write!(f, "group elements live in different spaces"),
            GroupError::IndexOutOfRange => write!(f, "no measure with that index"),
            GroupError::MeasureSpreadRequired => {
                write!(f, "measure spread required: all entries are equal")
            }
            GroupError::NotNonnegative => {
                write!(f, "element must classify ZERO or POSITIVE")
            }
            GroupError::MinimalityRequired => {
                write!(f, "a single minimal component is required")
            }
            GroupError::ZeroSummand => {
                write!(f, "decomposition entries must have nonzero measure")
            }
        }
    }
}

impl std::error::Error for GroupError {}

/// Exact sign of an element against every measure at once.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignClass {
    Zero,
    Positive,
    Negative,
    Neither,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self {
            SignClass::Zero => "ZERO",
            SignClass::Positive => "POSITIVE",
            SignClass::Negative => "NEGATIVE",
            SignClass::Neither => "NEITHER",
        };
        write!(f, "{}", word)
    }
}

/// One component's share of a representative: a window and an integer
/// coefficient per word. Length zero with a coefficient on the empty
/// word is that multiple of the full component indicator.
#[derive(Clone, Debug)]
struct ComponentFunction {
    offset: i64,
    len: usize,
    coeffs: BTreeMap<String, i64>,
}

impl ComponentFunction {
    fn zero() -> Self {
        ComponentFunction { offset: 0, len: 0, coeffs: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn window_end(&self) -> i64 {
        self.offset + self.len as i64
    }
}

fn normalize_function(offset: i64, len: usize, mut coeffs: BTreeMap<String, i64>) -> ComponentFunction {
    coeffs.retain(|_, c| *c != 0);
    if coeffs.is_empty() {
        return ComponentFunction::zero();
    }
    ComponentFunction { offset, len, coeffs }
}

/// Coefficients of `piece` re-expressed over `[offset, offset+len)`,
/// which must contain the piece's window.
fn refine_coeffs(
    comp: &Arc<SubshiftComponent>,
    piece: &ComponentFunction,
    offset: i64,
    len: usize,
) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    if piece.is_zero() {
        return out;
    }
    if piece.len == 0 {
        let c = *piece.coeffs.get("").expect("constant piece");
        if len == 0 {
            out.insert(String::new(), c);
        } else {
            for w in comp.language(len).iter() {
                out.insert(w.clone(), c);
            }
        }
        return out;
    }
    assert!(
        offset <= piece.offset && offset + len as i64 >= piece.window_end(),
        "refinement window must contain the piece window"
    );
    let skip = (piece.offset - offset) as usize;
    for w in comp.language(len).iter() {
        let chars: Vec<char> = w.chars().collect();
        let sub: String = chars[skip..skip + piece.len].iter().collect();
        if let Some(c) = piece.coeffs.get(&sub) {
            *out.entry(w.clone()).or_insert(0) += c;
        }
    }
    out
}

/// Integral of one piece against its own component's measure.
fn piece_integral(comp: &Arc<SubshiftComponent>, piece: &ComponentFunction) -> RealAlgebraic {
    let ctx = comp.context();
    if piece.is_zero() {
        return RealAlgebraic::zero(&ctx);
    }
    if piece.len == 0 {
        let c = *piece.coeffs.get("").expect("constant piece");
        return RealAlgebraic::constant(&ctx, BigRational::from_integer(BigInt::from(c)));
    }
    let freqs = comp.frequencies(piece.len);
    let mut acc = RealAlgebraic::zero(&ctx);
    for (w, c) in &piece.coeffs {
        let term = freqs[w].mul_rational(&BigRational::from_integer(BigInt::from(*c)));
        acc = acc.add(&term);
    }
    acc
}

/// An element of the value group: a representative step function plus
/// its exact integral vector, one entry per ergodic measure.
#[derive(Clone)]
pub struct GroupElement {
    space: Arc<SystemSpace>,
    pieces: Vec<ComponentFunction>,
    integrals: Vec<RealAlgebraic>,
}

fn assemble(space: &Arc<SystemSpace>, raw: Vec<(i64, usize, BTreeMap<String, i64>)>) -> GroupElement {
    let pieces: Vec<ComponentFunction> = raw
        .into_iter()
        .map(|(offset, len, coeffs)| normalize_function(offset, len, coeffs))
        .collect();
    let integrals = space
        .components()
        .iter()
        .zip(&pieces)
        .map(|(comp, piece)| piece_integral(comp, piece))
        .collect();
    GroupElement { space: space.clone(), pieces, integrals }
}

impl GroupElement {
    pub fn zero(space: &Arc<SystemSpace>) -> Self {
        assemble(space, vec![(0, 0, BTreeMap::new()); space.components().len()])
    }

    /// The class of the constant function 1, the order unit.
    pub fn order_unit(space: &Arc<SystemSpace>) -> Self {
        Self::from_clopen(&ClopenSet::full(space))
    }

    /// The class of a clopen indicator.
    pub fn from_clopen(set: &ClopenSet) -> Self {
        let raw = (0..set.space().components().len())
            .map(|i| {
                let (offset, len, words) = set.trace_parts(i);
                let coeffs = words.iter().map(|w| (w.clone(), 1)).collect();
                (offset, len, coeffs)
            })
            .collect();
        assemble(set.space(), raw)
    }

    pub fn space(&self) -> &Arc<SystemSpace> {
        &self.space
    }

    /// The exact integral vector, one entry per ergodic measure.
    pub fn integrals(&self) -> &[RealAlgebraic] {
        &self.integrals
    }

    /// The value of the `i`-th state: the `i`-th integral entry.
    pub fn state_evaluate(&self, i: usize) -> Result<RealAlgebraic, GroupError> {
        self.integrals.get(i).cloned().ok_or(GroupError::IndexOutOfRange)
    }

    /// One component's representative: window and coefficient map.
    pub fn piece(&self, comp_idx: usize) -> (i64, usize, &BTreeMap<String, i64>) {
        let p = &self.pieces[comp_idx];
        (p.offset, p.len, &p.coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if !crate::clopen::spaces_match(&self.space, &other.space) {
            return Err(GroupError::SpaceMismatch);
        }
        let raw = self
            .space
            .components()
            .iter()
            .enumerate()
            .map(|(i, comp)| {
                let a = &self.pieces[i];
                let b = &other.pieces[i];
                let mut lo = i64::MAX;
                let mut hi = i64::MIN;
                for p in [a, b] {
                    if p.len > 0 && !p.is_zero() {
                        lo = lo.min(p.offset);
                        hi = hi.max(p.window_end());
                    }
                }
                let (offset, len) = if lo > hi { (0, 0) } else { (lo, (hi - lo) as usize) };
                let mut coeffs = refine_coeffs(comp, a, offset, len);
                for (w, c) in refine_coeffs(comp, b, offset, len) {
                    *coeffs.entry(w).or_insert(0) += c;
                }
                (offset, len, coeffs)
            })
            .collect();
        Ok(assemble(&self.space, raw))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.scale_by_integer(-1)
    }

    pub fn scale_by_integer(&self, k: i64) -> Self {
        let raw = self
            .pieces
            .iter()
            .map(|p| {
                let coeffs = p.coeffs.iter().map(|(w, c)| (w.clone(), c * k)).collect();
                (p.offset, p.len, coeffs)
            })
            .collect();
        assemble(&self.space, raw)
    }

    pub fn is_zero(&self) -> bool {
        self.integrals.iter().all(|e| e.sign() == 0)
    }

    /// Cone classification from the exact integral signs. Each
    /// component carries a single ergodic measure, so within one
    /// component a class with nonnegative integral contains a
    /// nonnegative function, and over a disjoint union the cone splits
    /// componentwise; the integral signs therefore decide membership.
    pub fn classify_sign(&self) -> SignClass {
        let mut any_pos = false;
        let mut any_neg = false;
        for e in &self.integrals {
            match e.sign() {
                1 => any_pos = true,
                -1 => any_neg = true,
                _ => {}
            }
        }
        match (any_pos, any_neg) {
            (false, false) => SignClass::Zero,
            (true, false) => SignClass::Positive,
            (false, true) => SignClass::Negative,
            (true, true) => SignClass::Neither,
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        crate::clopen::spaces_match(&self.space, &other.space)
            && self
                .integrals
                .iter()
                .zip(&other.integrals)
                .all(|(a, b)| a.sub(b).sign() == 0)
    }
}

impl Eq for GroupElement {}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut chunks = Vec::new();
        for (comp, p) in self.space.components().iter().zip(&self.pieces) {
            if p.is_zero() {
                continue;
            }
            if p.len == 0 {
                chunks.push(format!("{}:*x{}", comp.name(), p.coeffs[""]));
            } else {
                for (w, c) in &p.coeffs {
                    chunks.push(format!("{}:{}:{}x{}", comp.name(), p.offset, w, c));
                }
            }
        }
        if chunks.is_empty() {
            chunks.push("0".to_string());
        }
        let decimals: Vec<String> =
            self.integrals.iter().map(|e| e.to_decimal(12)).collect();
        write!(f, "{} | integrals ({})", chunks.join(" + "), decimals.join(", "))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A sum of indicator classes minus another, the input shape of the
/// sign procedure. Multiplicities are encoded by repeating a set.
#[derive(Clone, Debug)]
pub struct Decomposition {
    space: Arc<SystemSpace>,
    positives: Vec<ClopenSet>,
    negatives: Vec<ClopenSet>,
}

impl Decomposition {
    pub fn new(
        space: &Arc<SystemSpace>,
        positives: Vec<ClopenSet>,
        negatives: Vec<ClopenSet>,
    ) -> Result<Self, GroupError> {
        for s in positives.iter().chain(&negatives) {
            if !crate::clopen::spaces_match(s.space(), space) {
                return Err(GroupError::SpaceMismatch);
            }
            if s.measure_vector().signs().iter().all(|&x| x == 0) {
                return Err(GroupError::ZeroSummand);
            }
        }
        Ok(Decomposition { space: space.clone(), positives, negatives })
    }

    pub fn space(&self) -> &Arc<SystemSpace> {
        &self.space
    }

    pub fn positives(&self) -> &[ClopenSet] {
        &self.positives
    }

    pub fn negatives(&self) -> &[ClopenSet] {
        &self.negatives
    }

    /// The represented element Σ[χ_a] − Σ[χ_b].
    pub fn element(&self) -> GroupElement {
        let mut acc = GroupElement::zero(&self.space);
        for a in &self.positives {
            acc = acc.add(&GroupElement::from_clopen(a)).expect("one space");
        }
        for b in &self.negatives {
            acc = acc.sub(&GroupElement::from_clopen(b)).expect("one space");
        }
        acc
    }
}

/// Outcome of the membership search among clopen indicator classes.
#[derive(Clone, Debug)]
pub enum IndicatorMembership {
    /// A clopen set whose measure vector equals the requested
    /// integrals.
    Yes(ClopenSet),
    /// Impossible: some integral is negative or exceeds 1.
    No,
    /// Exhausted the level bound without a hit; membership undecided.
    Unknown,
}

impl IndicatorMembership {
    pub fn witness(&self) -> Option<&ClopenSet> {
        match self {
            IndicatorMembership::Yes(c) => Some(c),
            _ => None,
        }
    }
}

/// Least-bitmask subset of `vals` summing exactly to `target`, by
/// meet-in-the-middle over exact rationals.
fn rational_subset_hit(vals: &[BigRational], target: &BigRational) -> Option<u64> {
    let k = vals.len();
    let h = k / 2;
    let mut low: BTreeMap<BigRational, u64> = BTreeMap::new();
    for mask in 0..(1u64 << h) {
        let mut sum = BigRational::from_integer(BigInt::from(0));
        for (i, v) in vals[..h].iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum += v;
            }
        }
        low.entry(sum).or_insert(mask);
    }
    for high_mask in 0..(1u64 << (k - h)) {
        let mut sum = BigRational::from_integer(BigInt::from(0));
        for (i, v) in vals[h..].iter().enumerate() {
            if high_mask >> i & 1 == 1 {
                sum += v;
            }
        }
        let need = target - &sum;
        if let Some(low_mask) = low.get(&need) {
            let mask = high_mask << h | low_mask;
            if mask != 0 {
                return Some(mask);
            }
        }
    }
    None
}

/// Least-bitmask subset summing exactly to `target`, by depth-first
/// search over exact algebraic values with interval pruning. Values
/// in a quotient ring with zero divisors have no canonical key, so
/// sums are compared by sign rather than hashed.
fn algebraic_subset_hit(vals: &[RealAlgebraic], target: &RealAlgebraic) -> Option<u64> {
    let k = vals.len();
    // prefix[p] = sum of vals[0..p], the most anything below p can add.
    let mut prefix = Vec::with_capacity(k + 1);
    let mut acc = target.sub(target);
    prefix.push(acc.clone());
    for v in vals {
        acc = acc.add(v);
        prefix.push(acc.clone());
    }
    fn rec(
        vals: &[RealAlgebraic],
        prefix: &[RealAlgebraic],
        p: usize,
        r: &RealAlgebraic,
        mask: u64,
    ) -> Option<u64> {
        if r.sign() < 0 {
            return None;
        }
        if p == 0 {
            return if r.sign() == 0 { Some(mask) } else { None };
        }
        if r.sub(&prefix[p]).sign() > 0 {
            return None;
        }
        // Bit p-1 off first keeps the first hit the least mask.
        if let Some(m) = rec(vals, prefix, p - 1, r, mask) {
            return Some(m);
        }
        rec(vals, prefix, p - 1, &r.sub(&vals[p - 1]), mask | 1 << (p - 1))
    }
    rec(vals, prefix.as_slice(), k, target, 0).filter(|m| *m != 0)
}

/// One component's subset hit: the set of words at some window length
/// `1..=level` whose frequencies sum exactly to `target`.
fn component_subset_hit(
    space: &Arc<SystemSpace>,
    comp: &Arc<SubshiftComponent>,
    target: &RealAlgebraic,
    level: usize,
) -> Option<ClopenSet> {
    for n in 1..=level {
        let words: Vec<String> = comp.language(n).iter().cloned().collect();
        assert!(words.len() <= 60, "window too wide for subset search");
        let freqs = comp.frequencies(n);
        let mask = if comp.context().rational_root().is_some() {
            let vals: Vec<BigRational> = words
                .iter()
                .map(|w| freqs[w].known_rational().expect("rational context"))
                .collect();
            let t = target.known_rational().expect("rational context");
            rational_subset_hit(&vals, &t)
        } else {
            let vals: Vec<RealAlgebraic> = words.iter().map(|w| freqs[w].clone()).collect();
            algebraic_subset_hit(&vals, target)
        };
        if let Some(mask) = mask {
            let subset: BTreeSet<String> = words
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| w.clone())
                .collect();
            let set = ClopenSet::from_words(space, comp.name(), 0, &subset)
                .expect("language words are admissible");
            return Some(set);
        }
    }
    None
}

/// Decides whether `g` is the class of a clopen indicator, searching
/// windows up to `level` per component. `No` is only returned on
/// analytically impossible integral vectors; an exhausted search is
/// `Unknown`.
pub fn indicator_membership(g: &GroupElement, level: usize) -> IndicatorMembership {
    let one = BigRational::from_integer(BigInt::from(1));
    for t in g.integrals() {
        if t.sign() < 0 || t.sub_rational(&one).sign() > 0 {
            return IndicatorMembership::No;
        }
    }
    let space = g.space();
    let mut witness = ClopenSet::empty(space);
    for (i, comp) in space.components().iter().enumerate() {
        let t = &g.integrals()[i];
        if t.sign() == 0 {
            continue;
        }
        match component_subset_hit(space, comp, t, level) {
            Some(piece) => witness = witness.union(&piece).expect("one space"),
            None => return IndicatorMembership::Unknown,
        }
    }
    let mv = witness.measure_vector();
    for (e, t) in mv.entries().iter().zip(g.integrals()) {
        assert!(e.sub(t).sign() == 0, "witness measures must equal the integrals");
    }
    IndicatorMembership::Yes(witness)
}

/// Outcome of the stepwise sign decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignOutcome {
    Positive,
    Negative,
    Stuck { step: usize, reason: String },
}

/// One successful replacement step: the prefix length whose partial
/// sum was certified as an indicator class, and its witness.
#[derive(Clone, Debug)]
pub struct SignStep {
    pub step: usize,
    pub prefix_len: usize,
    pub witness: ClopenSet,
}

#[derive(Debug)]
pub struct SignReport {
    pub outcome: SignOutcome,
    pub steps: Vec<SignStep>,
}

/// Stepwise sign decision for Σ[χ_a] − Σ[χ_b]. At step j, if the
/// remaining positives minus b_j classify nonpositive the whole
/// element is nonpositive; otherwise the least prefix of the positives
/// whose partial sum (minus b_j) is certified as a nonzero indicator
/// class replaces that prefix, and b_j is consumed. Consuming every
/// negative proves the element nonnegative. An uncertified step ends
/// in `Stuck`, never a silent wrong answer.
pub fn sign_procedure(d: &Decomposition, level: usize) -> SignReport {
    let mut pos: Vec<ClopenSet> = d.positives().to_vec();
    let mut steps = Vec::new();
    for (j, b) in d.negatives().iter().enumerate() {
        let step = j + 1;
        let minus_b = GroupElement::from_clopen(b).negate();
        let mut total = minus_b.clone();
        for a in &pos {
            total = total.add(&GroupElement::from_clopen(a)).expect("one space");
        }
        if matches!(total.classify_sign(), SignClass::Zero | SignClass::Negative) {
            return SignReport { outcome: SignOutcome::Negative, steps };
        }
        let mut acc = minus_b;
        let mut chosen = None;
        let mut log = Vec::new();
        for k in 1..=pos.len() {
            acc = acc.add(&GroupElement::from_clopen(&pos[k - 1])).expect("one space");
            if acc.is_zero() {
                log.push(format!("prefix {}: zero class", k));
                continue;
            }
            match indicator_membership(&acc, level) {
                IndicatorMembership::Yes(c) => {
                    chosen = Some((k, c));
                    break;
                }
                IndicatorMembership::No => log.push(format!("prefix {}: impossible", k)),
                IndicatorMembership::Unknown => {
                    log.push(format!("prefix {}: unresolved at level {}", k, level))
                }
            }
        }
        match chosen {
            Some((k, c)) => {
                steps.push(SignStep { step, prefix_len: k, witness: c.clone() });
                let mut next = vec![c];
                next.extend(pos.iter().skip(k).cloned());
                pos = next;
            }
            None => {
                return SignReport {
                    outcome: SignOutcome::Stuck { step, reason: log.join("; ") },
                    steps,
                }
            }
        }
    }
    SignReport { outcome: SignOutcome::Positive, steps }
}

/// A nonnegative step function with the same integral vector as `g`,
/// searched per component over windows up to `level` with exact
/// coefficient caps. `None` means none within bounds, not a disproof.
pub fn find_nonneg_representative(
    g: &GroupElement,
    level: usize,
) -> Result<Option<GroupElement>, GroupError> {
    if !matches!(g.classify_sign(), SignClass::Zero | SignClass::Positive) {
        return Err(GroupError::NotNonnegative);
    }
    let space = g.space();
    let mut raw = Vec::new();
    for (i, comp) in space.components().iter().enumerate() {
        let t = &g.integrals()[i];
        if t.sign() == 0 {
            raw.push((0, 0, BTreeMap::new()));
            continue;
        }
        let mut found = None;
        for n in 1..=level {
            if let Some(coeffs) = nonneg_combination(comp, t, n) {
                found = Some((n, coeffs));
                break;
            }
        }
        match found {
            Some((n, coeffs)) => raw.push((0, n, coeffs)),
            None => return Ok(None),
        }
    }
    let h = assemble(space, raw);
    assert!(h == *g, "representative must keep the integral vector");
    Ok(Some(h))
}

/// Nonnegative integer coefficients over `language(n)` whose weighted
/// frequency sum is exactly `target`; lexicographically least in word
/// order, with a node budget.
fn nonneg_combination(
    comp: &Arc<SubshiftComponent>,
    target: &RealAlgebraic,
    n: usize,
) -> Option<BTreeMap<String, i64>> {
    let words: Vec<String> = comp.language(n).iter().cloned().collect();
    let freqs = comp.frequencies(n);
    let vals: Vec<RealAlgebraic> = words.iter().map(|w| freqs[w].clone()).collect();
    let mut fuel: u64 = 200_000;
    let mut chosen = vec![0i64; words.len()];
    fn rec(
        vals: &[RealAlgebraic],
        i: usize,
        r: &RealAlgebraic,
        chosen: &mut Vec<i64>,
        fuel: &mut u64,
    ) -> bool {
        if *fuel == 0 {
            return false;
        }
        *fuel -= 1;
        if i == vals.len() {
            return r.sign() == 0;
        }
        let cap_big = r.div(&vals[i]).expect("frequencies are nonzero").floor();
        let cap = i64::try_from(cap_big).expect("coefficient cap fits a machine integer");
        for c in 0..=cap {
            chosen[i] = c;
            let rest = r.sub(&vals[i].mul_rational(&BigRational::from_integer(BigInt::from(c))));
            if rec(vals, i + 1, &rest, chosen, fuel) {
                return true;
            }
        }
        chosen[i] = 0;
        false
    }
    if rec(&vals, 0, target, &mut chosen, &mut fuel) {
        let coeffs = words
            .into_iter()
            .zip(chosen)
            .filter(|(_, c)| *c != 0)
            .collect();
        Some(coeffs)
    } else {
        None
    }
}

/// An element that is neither nonnegative nor nonpositive, built from
/// a set whose measures disagree: with n/m strictly between the least
/// and greatest measure, m·[χ_A] − n·[χ_X] has integrals of both
/// strict signs.
pub fn witness_nontotal(a: &ClopenSet) -> Result<GroupElement, GroupError> {
    let v = a.measure_vector();
    let mut lo = v.entries()[0].clone();
    let mut hi = lo.clone();
    for e in &v.entries()[1..] {
        if e.cross_cmp(&lo) == std::cmp::Ordering::Less {
            lo = e.clone();
        }
        if e.cross_cmp(&hi) == std::cmp::Ordering::Greater {
            hi = e.clone();
        }
    }
    if lo.cross_cmp(&hi) == std::cmp::Ordering::Equal {
        return Err(GroupError::MeasureSpreadRequired);
    }
    let r = rational_between(&lo, &hi).expect("strict spread");
    let m = i64::try_from(r.denom().clone()).expect("scale fits a machine integer");
    let n = i64::try_from(r.numer().clone()).expect("scale fits a machine integer");
    let g = GroupElement::from_clopen(a)
        .scale_by_integer(m)
        .sub(&GroupElement::order_unit(a.space()).scale_by_integer(n))
        .expect("one space");
    assert!(g.classify_sign() == SignClass::Neither, "witness must split the measures");
    Ok(g)
}

/// Tally of a randomized cone pointedness check.
#[derive(Debug)]
pub struct PointednessReport {
    pub samples: usize,
    pub violations: usize,
    pub zero: usize,
    pub positive: usize,
    pub negative: usize,
    pub neither: usize,
}

fn random_element(space: &Arc<SystemSpace>, rng: &mut ChaCha8Rng) -> GroupElement {
    let raw = space
        .components()
        .iter()
        .map(|comp| {
            let n = rng.gen_range(1..=2usize);
            let coeffs = comp
                .language(n)
                .iter()
                .map(|w| (w.clone(), rng.gen_range(-3..=3i64)))
                .collect();
            (0, n, coeffs)
        })
        .collect();
    assemble(space, raw)
}

/// Samples elements and checks that no nonzero element lands in the
/// cone together with its negation, and that strict signs mirror.
pub fn check_pointed(space: &Arc<SystemSpace>, samples: usize) -> PointednessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a3e_9f12_0c44_d7a1);
    let mut report = PointednessReport {
        samples,
        violations: 0,
        zero: 0,
        positive: 0,
        negative: 0,
        neither: 0,
    };
    for _ in 0..samples {
        let g = random_element(space, &mut rng);
        let s = g.classify_sign();
        let t = g.negate().classify_sign();
        match s {
            SignClass::Zero => report.zero += 1,
            SignClass::Positive => report.positive += 1,
            SignClass::Negative => report.negative += 1,
            SignClass::Neither => report.neither += 1,
        }
        let mirror_ok = match s {
            SignClass::Zero => t == SignClass::Zero && g.is_zero(),
            SignClass::Positive => t == SignClass::Negative,
            SignClass::Negative => t == SignClass::Positive,
            SignClass::Neither => t == SignClass::Neither,
        };
        let both_nonneg = matches!(s, SignClass::Zero | SignClass::Positive)
            && matches!(t, SignClass::Zero | SignClass::Positive)
            && !g.is_zero();
        if !mirror_ok || both_nonneg {
            report.violations += 1;
        }
    }
    report
}

/// Outcome of the bounded enumeration for order totality.
#[derive(Debug)]
pub struct TotalOrderReport {
    pub enumerated: usize,
    pub exhausted: bool,
    pub witness: Option<GroupElement>,
}

/// Enumerates elements with coefficients in `[-coeff_bound,
/// coeff_bound]` over windows up to `max_len` and returns the first
/// whose sign class is NEITHER, if any. On a one-component space no
/// witness can exist.
pub fn check_total_order(
    space: &Arc<SystemSpace>,
    coeff_bound: i64,
    max_len: usize,
    budget: usize,
) -> TotalOrderReport {
    let mut enumerated = 0usize;
    for n in 1..=max_len {
        let mut layout: Vec<(usize, String)> = Vec::new();
        for (i, comp) in space.components().iter().enumerate() {
            for w in comp.language(n).iter() {
                layout.push((i, w.clone()));
            }
        }
        let mut digits = vec![-coeff_bound; layout.len()];
        loop {
            if digits.iter().any(|&c| c != 0) {
                if enumerated >= budget {
                    return TotalOrderReport { enumerated, exhausted: false, witness: None };
                }
                enumerated += 1;
                let mut raw: Vec<(i64, usize, BTreeMap<String, i64>)> =
                    vec![(0, n, BTreeMap::new()); space.components().len()];
                for ((i, w), &c) in layout.iter().zip(&digits) {
                    if c != 0 {
                        raw[*i].2.insert(w.clone(), c);
                    }
                }
                let g = assemble(space, raw);
                if g.classify_sign() == SignClass::Neither {
                    return TotalOrderReport { enumerated, exhausted: false, witness: Some(g) };
                }
            }
            // Odometer step, last digit fastest.
            let mut pos = layout.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if digits[pos] < coeff_bound {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = -coeff_bound;
            }
            if pos == 0 && digits[0] == -coeff_bound {
                break;
            }
        }
    }
    TotalOrderReport { enumerated, exhausted: true, witness: None }
}

/// Report tying the order relation between two clopen sets to
/// indicator-class membership of their difference on a one-component
/// space.
#[derive(Debug)]
pub struct OrderMembershipReport {
    pub verdict: Verdict,
    pub forward: IndicatorMembership,
    pub reverse: Option<IndicatorMembership>,
}

/// On a single minimal component: compares A and B, then searches the
/// difference class among clopen indicators. When A fails to dominate,
/// the forward membership can never certify, and the reverse
/// difference is searched instead.
pub fn order_membership_check(
    a: &ClopenSet,
    b: &ClopenSet,
    level: usize,
) -> Result<OrderMembershipReport, GroupError> {
    if a.space().components().len() != 1 {
        return Err(GroupError::MinimalityRequired);
    }
    let verdict = compare(a, b).map_err(|_| GroupError::SpaceMismatch)?;
    let g = GroupElement::from_clopen(a).sub(&GroupElement::from_clopen(b))?;
    let forward = indicator_membership(&g, level);
    let holds = matches!(verdict.kind, VerdictKind::Equal | VerdictKind::StrictlyAbove);
    if holds {
        Ok(OrderMembershipReport { verdict, forward, reverse: None })
    } else {
        assert!(
            forward.witness().is_none(),
            "membership cannot certify when the order fails"
        );
        let reverse = indicator_membership(&g.negate(), level);
        Ok(OrderMembershipReport { verdict, forward, reverse: Some(reverse) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::big_rat;
    use crate::systems::tests::{fibonacci, thue_morse};
    use crate::systems::Substitution;

    fn fib_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::single(fibonacci()))
    }

    fn tm_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::single(thue_morse()))
    }

    fn union_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::new(vec![fibonacci(), thue_morse()]).unwrap())
    }

    fn tm_twice_space() -> Arc<SystemSpace> {
        let sub = Substitution::new(&[('a', "ab"), ('b', "ba")]).unwrap();
        let one = SubshiftComponent::new("one", sub.clone()).unwrap();
        let two = SubshiftComponent::new("two", sub).unwrap();
        Arc::new(SystemSpace::new(vec![one, two]).unwrap())
    }

    fn set(space: &Arc<SystemSpace>, text: &str) -> ClopenSet {
        ClopenSet::parse(space, text).unwrap()
    }

    #[test]
    fn order_unit_and_zero() {
        let space = union_space();
        let unit = GroupElement::order_unit(&space);
        for i in 0..2 {
            let v = unit.state_evaluate(i).unwrap();
            assert!(v.sub_rational(&big_rat(1, 1)).sign() == 0);
        }
        assert!(unit.state_evaluate(2).is_err());
        assert!(GroupElement::from_clopen(&ClopenSet::empty(&space)).is_zero());
        assert_eq!(GroupElement::zero(&space).classify_sign(), SignClass::Zero);
    }

    #[test]
    fn states_are_additive() {
        let space = fib_space();
        let g = GroupElement::from_clopen(&set(&space, "fib:0:a"));
        let h = GroupElement::from_clopen(&set(&space, "fib:0:ba"));
        let sum = g.add(&h).unwrap();
        let lhs = sum.state_evaluate(0).unwrap();
        let rhs = g.state_evaluate(0).unwrap().add(&h.state_evaluate(0).unwrap());
        assert!(lhs.sub(&rhs).sign() == 0);
        // Fibonacci letter class evaluates to the letter frequency.
        let l = RealAlgebraic::lambda(&space.components()[0].context());
        assert!(g.state_evaluate(0).unwrap().sub(&l.sub_rational(&big_rat(1, 1))).sign() == 0);
    }

    #[test]
    fn quotient_identifies_equal_integrals() {
        let tm = tm_space();
        let ab = GroupElement::from_clopen(&set(&tm, "tm:0:ab"));
        let ba = GroupElement::from_clopen(&set(&tm, "tm:0:ba"));
        assert_eq!(ab, ba);
        assert!(ab.sub(&ba).unwrap().is_zero());

        // Different representatives of one class stay interchangeable.
        let fib = fib_space();
        let a = GroupElement::from_clopen(&set(&fib, "fib:0:a"));
        let split = GroupElement::from_clopen(&set(&fib, "fib:0:aa|ab"));
        assert_eq!(a, split);
        let bump = GroupElement::from_clopen(&set(&fib, "fib:0:b"));
        assert_eq!(a.add(&bump).unwrap(), split.add(&bump).unwrap());
        assert_eq!(a.scale_by_integer(-7), split.scale_by_integer(-7));
        assert_eq!(a.classify_sign(), split.classify_sign());
    }

    #[test]
    fn sign_classification() {
        let space = union_space();
        let full_fib = GroupElement::from_clopen(&set(&space, "fib:*"));
        let g = full_fib.scale_by_integer(2).sub(&GroupElement::order_unit(&space)).unwrap();
        assert_eq!(g.classify_sign(), SignClass::Neither);
        assert!(g.integrals()[0].sub_rational(&big_rat(1, 1)).sign() == 0);
        assert!(g.integrals()[1].sub_rational(&big_rat(-1, 1)).sign() == 0);

        let fib = fib_space();
        let a2 = GroupElement::from_clopen(&set(&fib, "fib:0:a")).scale_by_integer(2);
        let pos = a2.sub(&GroupElement::order_unit(&fib)).unwrap();
        assert_eq!(pos.classify_sign(), SignClass::Positive);
        assert_eq!(pos.negate().classify_sign(), SignClass::Negative);
    }

    #[test]
    fn pointedness_samples_clean() {
        for space in [fib_space(), union_space()] {
            let report = check_pointed(&space, 60);
            assert_eq!(report.violations, 0);
            assert_eq!(
                report.zero + report.positive + report.negative + report.neither,
                report.samples
            );
        }
    }

    #[test]
    fn total_order_on_one_component_is_total() {
        let report = check_total_order(&fib_space(), 3, 2, 100_000);
        assert!(report.witness.is_none());
        assert!(report.exhausted);
        assert!(report.enumerated > 0);
    }

    #[test]
    fn total_order_witnesses_on_unions() {
        for space in [union_space(), tm_twice_space()] {
            let report = check_total_order(&space, 1, 1, 100_000);
            let witness = report.witness.expect("a union must break totality");
            assert_eq!(witness.classify_sign(), SignClass::Neither);
        }
    }

    #[test]
    fn nontotality_witness_has_forced_integrals() {
        let space = union_space();
        let g = witness_nontotal(&set(&space, "fib:*")).unwrap();
        assert!(g.integrals()[0].sub_rational(&big_rat(1, 1)).sign() == 0);
        assert!(g.integrals()[1].sub_rational(&big_rat(-1, 1)).sign() == 0);
        assert_eq!(g.classify_sign(), SignClass::Neither);

        // Vector (1/3, 2/3) forces the midpoint 1/2 and signs (-,+).
        let twice = tm_twice_space();
        let a = set(&twice, "one:0:ab + two:0:ab|ba");
        let g2 = witness_nontotal(&a).unwrap();
        assert!(g2.integrals()[0].sub_rational(&big_rat(-1, 3)).sign() == 0);
        assert!(g2.integrals()[1].sub_rational(&big_rat(1, 3)).sign() == 0);

        assert!(matches!(
            witness_nontotal(&ClopenSet::full(&space)),
            Err(GroupError::MeasureSpreadRequired)
        ));
    }

    #[test]
    fn indicator_membership_cases() {
        let fib = fib_space();
        // Complement identity: X - [a] is the class of [b].
        let g = GroupElement::order_unit(&fib)
            .sub(&GroupElement::from_clopen(&set(&fib, "fib:0:a")))
            .unwrap();
        let m = indicator_membership(&g, 3);
        assert_eq!(m.witness().unwrap().format(), "fib:0:b");

        // Negative entries and entries above one are impossible.
        let neg = GroupElement::from_clopen(&set(&fib, "fib:0:a")).negate();
        assert!(matches!(indicator_membership(&neg, 3), IndicatorMembership::No));
        let two = GroupElement::order_unit(&fib).scale_by_integer(2);
        assert!(matches!(indicator_membership(&two, 3), IndicatorMembership::No));

        // The zero class is the empty indicator.
        let z = GroupElement::zero(&fib);
        assert!(indicator_membership(&z, 3).witness().unwrap().is_empty());

        // Algebraic subset search: 2[a] - X has the measure of [aa].
        let g2 = GroupElement::from_clopen(&set(&fib, "fib:0:a"))
            .scale_by_integer(2)
            .sub(&GroupElement::order_unit(&fib))
            .unwrap();
        let m2 = indicator_membership(&g2, 3);
        assert_eq!(m2.witness().unwrap().format(), "fib:0:aa");

        // Rational subset search in one step at window two.
        let tm = tm_space();
        let g3 = GroupElement::from_clopen(&set(&tm, "tm:0:ab"))
            .sub(&GroupElement::from_clopen(&set(&tm, "tm:0:aa")))
            .unwrap();
        let m3 = indicator_membership(&g3, 2);
        assert_eq!(m3.witness().unwrap().format(), "tm:0:aa");

        // Too small a level leaves membership unresolved.
        let g4 = GroupElement::from_clopen(&set(&fib, "fib:0:a"))
            .scale_by_integer(3)
            .sub(&GroupElement::order_unit(&fib))
            .unwrap();
        assert!(matches!(indicator_membership(&g4, 1), IndicatorMembership::Unknown));
    }

    #[test]
    fn sign_procedure_worked_trace() {
        let fib = fib_space();
        let d = Decomposition::new(
            &fib,
            vec![ClopenSet::full(&fib)],
            vec![set(&fib, "fib:0:a")],
        )
        .unwrap();
        let report = sign_procedure(&d, 3);
        assert_eq!(report.outcome, SignOutcome::Positive);
        assert_eq!(report.steps.len(), 1);
        assert_eq!(report.steps[0].prefix_len, 1);
        assert_eq!(report.steps[0].witness.format(), "fib:0:b");
    }

    #[test]
    fn sign_procedure_negative_and_stuck() {
        let fib = fib_space();
        let d = Decomposition::new(
            &fib,
            vec![set(&fib, "fib:0:aa")],
            vec![set(&fib, "fib:0:a")],
        )
        .unwrap();
        let report = sign_procedure(&d, 3);
        assert_eq!(report.outcome, SignOutcome::Negative);
        assert!(report.steps.is_empty());

        let space = union_space();
        let d2 = Decomposition::new(
            &space,
            vec![set(&space, "fib:*")],
            vec![set(&space, "tm:*")],
        )
        .unwrap();
        let report2 = sign_procedure(&d2, 2);
        match report2.outcome {
            SignOutcome::Stuck { step, ref reason } => {
                assert_eq!(step, 1);
                assert!(reason.contains("impossible"));
            }
            ref other => panic!("expected STUCK, got {:?}", other),
        }
    }

    #[test]
    fn sign_procedure_agrees_with_classification() {
        let fib = fib_space();
        let cases = [
            (vec!["fib:0:a"], vec!["fib:0:aa"]),
            (vec!["fib:0:a", "fib:0:b"], vec!["fib:0:ab"]),
            (vec!["fib:0:aa"], vec!["fib:0:b"]),
        ];
        for (pos, neg) in cases {
            let d = Decomposition::new(
                &fib,
                pos.iter().map(|t| set(&fib, t)).collect(),
                neg.iter().map(|t| set(&fib, t)).collect(),
            )
            .unwrap();
            let sign = d.element().classify_sign();
            match sign_procedure(&d, 6).outcome {
                SignOutcome::Positive => {
                    assert!(matches!(sign, SignClass::Zero | SignClass::Positive))
                }
                SignOutcome::Negative => {
                    assert!(matches!(sign, SignClass::Zero | SignClass::Negative))
                }
                SignOutcome::Stuck { .. } => {}
            }
        }
    }

    #[test]
    fn nonneg_representative_search() {
        let fib = fib_space();
        let g = GroupElement::from_clopen(&set(&fib, "fib:0:a"))
            .scale_by_integer(2)
            .sub(&GroupElement::order_unit(&fib))
            .unwrap();
        let h = find_nonneg_representative(&g, 4).unwrap().expect("within bounds");
        assert!(h == g);
        let (offset, len, coeffs) = h.piece(0);
        assert_eq!((offset, len), (0, 2));
        assert!(coeffs.values().all(|&c| c >= 0));
        assert_eq!(coeffs.get("aa"), Some(&1));

        // A clopen class is its own nonnegative representative.
        let a = GroupElement::from_clopen(&set(&fib, "fib:0:a"));
        let ha = find_nonneg_representative(&a, 2).unwrap().expect("within bounds");
        assert!(ha == a);
        assert!(ha.piece(0).2.values().all(|&c| c >= 0));

        let z = GroupElement::zero(&fib);
        assert!(find_nonneg_representative(&z, 2).unwrap().expect("zero") == z);

        assert!(matches!(
            find_nonneg_representative(&a.negate(), 2),
            Err(GroupError::NotNonnegative)
        ));
    }

    #[test]
    fn order_membership_reports() {
        let fib = fib_space();
        let r1 = order_membership_check(&ClopenSet::full(&fib), &set(&fib, "fib:0:a"), 3).unwrap();
        assert_eq!(r1.verdict.kind, VerdictKind::StrictlyAbove);
        assert_eq!(r1.forward.witness().unwrap().format(), "fib:0:b");
        assert!(r1.reverse.is_none());

        let tm = tm_space();
        let r2 = order_membership_check(&set(&tm, "tm:0:ab"), &set(&tm, "tm:0:ba"), 2).unwrap();
        assert_eq!(r2.verdict.kind, VerdictKind::Equal);
        assert!(r2.forward.witness().unwrap().is_empty());

        let r3 = order_membership_check(&set(&tm, "tm:0:aa"), &set(&tm, "tm:0:ab"), 4).unwrap();
        assert_eq!(r3.verdict.kind, VerdictKind::StrictlyBelow);
        assert!(matches!(r3.forward, IndicatorMembership::No));
        let back = r3.reverse.as_ref().unwrap().witness().unwrap();
        let m = back.measure_vector();
        assert!(m.entries()[0].sub_rational(&big_rat(1, 6)).sign() == 0);

        let space = union_space();
        assert!(matches!(
            order_membership_check(&ClopenSet::full(&space), &set(&space, "fib:0:a"), 2),
            Err(GroupError::MinimalityRequired)
        ));
    }

    #[test]
    fn decomposition_validation() {
        let fib = fib_space();
        assert!(matches!(
            Decomposition::new(&fib, vec![ClopenSet::empty(&fib)], vec![]),
            Err(GroupError::ZeroSummand)
        ));
        let other = union_space();
        assert!(matches!(
            Decomposition::new(&fib, vec![ClopenSet::full(&other)], vec![]),
            Err(GroupError::SpaceMismatch)
        ));
        let d = Decomposition::new(
            &fib,
            vec![set(&fib, "fib:0:a"), set(&fib, "fib:0:b")],
            vec![],
        )
        .unwrap();
        assert!(d.element() == GroupElement::order_unit(&fib));
        assert_eq!(sign_procedure(&d, 2).outcome, SignOutcome::Positive);
    }
}
