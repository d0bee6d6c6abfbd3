//! Clopen subsets of a space as windowed cylinder sets, plus their
//! measure vectors.
//!
//! Per component, a clopen set is stored as a trace: a window
//! `[offset, offset+len)` and the set of language words of length `len`
//! whose cylinder lies in the set. The window `len = 0` encodes the two
//! trivial traces: word set `{""}` is the whole component, the empty
//! word set is the empty trace. Any two traces refine to a common
//! window, which makes Boolean operations and equality exact.
//!
//! The text form writes one chunk per nonempty component trace, joined
//! by `+`: `name:offset:word|word|...`, with `name:*` for a full
//! component, the literal `empty` for the empty set, and a leading `~`
//! complementing the whole expression. Complements are evaluated at
//! parse time, so formatting never emits `~`. Constructors reject words
//! outside the component language; internal operations keep word sets
//! inside the language on their own.

use crate::algebra::RealAlgebraic;
use crate::systems::{SubshiftComponent, SystemSpace};
use num_rational::BigRational;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Errors from clopen-set construction, parsing, and measure vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClopenError {
    /// Operands belong to different spaces.
    SpaceMismatch,
    /// A chunk names a component outside the space.
    UnknownComponent(String),
    /// A word that the component language does not contain.
    InadmissibleWord { word: String, component: String },
    /// A refinement window that does not contain the current one.
    WindowTooSmall,
    /// Malformed set notation.
    BadSyntax { input: String, reason: String },
    /// Measure vectors of different lengths.
    LengthMismatch,
    /// Measure vector entries from incompatible contexts.
    ContextMismatch,
}

impl fmt::Display for ClopenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClopenError::SpaceMismatch => write!(f, "clopen sets live in different spaces"),
            ClopenError::UnknownComponent(name) => write!(f, "no component named '{}'", name),
            ClopenError::InadmissibleWord { word, component } => {
                write!(f, "'{}' is not in the language of component '{}'", word, component)
            }
            ClopenError::WindowTooSmall => {
                write!(f, "refinement window must contain the current window")
            }
            ClopenError::BadSyntax { input, reason } => {
                write!(f, "bad set notation '{}': {}", input, reason)
            }
            ClopenError::LengthMismatch => write!(f, "measure vectors have different lengths"),
            ClopenError::ContextMismatch => {
                write!(f, "measure entries from incompatible contexts")
            }
        }
    }
}

impl std::error::Error for ClopenError {}

/// One component's share of a clopen set.
#[derive(Clone, Debug)]
struct ComponentTrace {
    offset: i64,
    len: usize,
    words: BTreeSet<String>,
}

impl ComponentTrace {
    fn empty() -> Self {
        ComponentTrace { offset: 0, len: 0, words: BTreeSet::new() }
    }

    fn full() -> Self {
        ComponentTrace { offset: 0, len: 0, words: [String::new()].into_iter().collect() }
    }

    fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn is_full(&self) -> bool {
        self.len == 0 && !self.words.is_empty()
    }

    fn window_end(&self) -> i64 {
        self.offset + self.len as i64
    }
}

/// A clopen subset of a space, closed under the Boolean operations and
/// the shift.
#[derive(Clone)]
pub struct ClopenSet {
    space: Arc<SystemSpace>,
    traces: Vec<ComponentTrace>,
}

pub(crate) fn spaces_match(a: &Arc<SystemSpace>, b: &Arc<SystemSpace>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.components().len() == b.components().len()
            && a.components().iter().zip(b.components()).all(|(x, y)| {
                x.name() == y.name() && x.substitution() == y.substitution()
            }))
}

/// Word set of `trace` refined to the window `[offset, offset+len)`,
/// which must contain the trace's own window.
fn refine_trace(
    comp: &Arc<SubshiftComponent>,
    trace: &ComponentTrace,
    offset: i64,
    len: usize,
) -> BTreeSet<String> {
    if trace.is_empty() {
        return BTreeSet::new();
    }
    if trace.is_full() {
        if len == 0 {
            return [String::new()].into_iter().collect();
        }
        return comp.language(len).as_ref().clone();
    }
    assert!(
        offset <= trace.offset && offset + len as i64 >= trace.window_end(),
        "refinement window must contain the trace window"
    );
    let skip = (trace.offset - offset) as usize;
    comp.language(len)
        .iter()
        .filter(|w| {
            let chars: Vec<char> = w.chars().collect();
            let sub: String = chars[skip..skip + trace.len].iter().collect();
            trace.words.contains(&sub)
        })
        .cloned()
        .collect()
}

/// Collapses trivial word sets back to the zero-length encoding.
fn normalize_trace(
    comp: &Arc<SubshiftComponent>,
    offset: i64,
    len: usize,
    words: BTreeSet<String>,
) -> ComponentTrace {
    if len == 0 || words.is_empty() {
        return if words.is_empty() { ComponentTrace::empty() } else { ComponentTrace::full() };
    }
    if words.len() == comp.language(len).len() {
        return ComponentTrace::full();
    }
    ComponentTrace { offset, len, words }
}

impl ClopenSet {
    pub fn empty(space: &Arc<SystemSpace>) -> Self {
        ClopenSet {
            space: space.clone(),
            traces: vec![ComponentTrace::empty(); space.components().len()],
        }
    }

    pub fn full(space: &Arc<SystemSpace>) -> Self {
        ClopenSet {
            space: space.clone(),
            traces: vec![ComponentTrace::full(); space.components().len()],
        }
    }

    /// The whole body of one component.
    pub fn full_component(space: &Arc<SystemSpace>, name: &str) -> Result<Self, ClopenError> {
        let idx = space
            .index_of(name)
            .map_err(|_| ClopenError::UnknownComponent(name.to_string()))?;
        let mut out = Self::empty(space);
        out.traces[idx] = ComponentTrace::full();
        Ok(out)
    }

    /// The cylinder `{x : x[offset .. offset+|word|) = word}` inside one
    /// component. Words outside the language are rejected; the empty
    /// word names the length-zero window, so its cylinder is the full
    /// component.
    pub fn cylinder(
        space: &Arc<SystemSpace>,
        name: &str,
        offset: i64,
        word: &str,
    ) -> Result<Self, ClopenError> {
        let mut words = BTreeSet::new();
        words.insert(word.to_string());
        Self::from_words(space, name, offset, &words)
    }

    /// A union of cylinders at one offset inside one component. Every
    /// word must be admissible for its length.
    pub fn from_words(
        space: &Arc<SystemSpace>,
        name: &str,
        offset: i64,
        words: &BTreeSet<String>,
    ) -> Result<Self, ClopenError> {
        let idx = space
            .index_of(name)
            .map_err(|_| ClopenError::UnknownComponent(name.to_string()))?;
        let comp = &space.components()[idx];
        let mut out = Self::empty(space);
        let mut by_len: std::collections::BTreeMap<usize, BTreeSet<String>> = Default::default();
        for w in words {
            let len = w.chars().count();
            if len > 0 && !comp.language(len).contains(w) {
                return Err(ClopenError::InadmissibleWord {
                    word: w.clone(),
                    component: name.to_string(),
                });
            }
            by_len.entry(len).or_default().insert(w.clone());
        }
        for (len, ws) in by_len {
            let piece = if len == 0 {
                ComponentTrace::full()
            } else {
                normalize_trace(comp, offset, len, ws)
            };
            let mut single = Self::empty(space);
            single.traces[idx] = piece;
            out = out.union(&single).expect("same space");
        }
        Ok(out)
    }

    /// The same set re-expressed over the window `[offset, offset+len)`
    /// in every component; the window must contain every trace window.
    /// The result keeps the explicit word sets rather than collapsing
    /// trivial traces.
    pub fn refine_to_window(&self, offset: i64, len: usize) -> Result<Self, ClopenError> {
        let end = offset + len as i64;
        let mut traces = Vec::with_capacity(self.traces.len());
        for (comp, t) in self.space.components().iter().zip(&self.traces) {
            if t.len > 0 && (offset > t.offset || end < t.window_end()) {
                return Err(ClopenError::WindowTooSmall);
            }
            let words = refine_trace(comp, t, offset, len);
            traces.push(ComponentTrace { offset, len, words });
        }
        Ok(ClopenSet { space: self.space.clone(), traces })
    }

    pub fn space(&self) -> &Arc<SystemSpace> {
        &self.space
    }

    /// Whether both sets live in the same space, pointer or structural.
    pub fn same_space_as(&self, other: &Self) -> bool {
        spaces_match(&self.space, &other.space)
    }

    /// The trace window and word set of one component, for callers that
    /// walk the representation directly.
    pub fn trace_parts(&self, comp_idx: usize) -> (i64, usize, &BTreeSet<String>) {
        let t = &self.traces[comp_idx];
        (t.offset, t.len, &t.words)
    }

    /// The component's word set refined to `[offset, offset+len)`. The
    /// window must contain the trace's own window.
    pub fn words_at(&self, comp_idx: usize, offset: i64, len: usize) -> BTreeSet<String> {
        refine_trace(&self.space.components()[comp_idx], &self.traces[comp_idx], offset, len)
    }

    pub fn is_empty(&self) -> bool {
        self.traces.iter().all(|t| t.is_empty())
    }

    pub fn is_full(&self) -> bool {
        self.space
            .components()
            .iter()
            .zip(&self.traces)
            .all(|(comp, t)| {
                t.is_full() || (t.len > 0 && t.words.len() == comp.language(t.len).len())
            })
    }

    fn binary_op(
        &self,
        other: &Self,
        f: impl Fn(&BTreeSet<String>, &BTreeSet<String>) -> BTreeSet<String>,
    ) -> Result<Self, ClopenError> {
        if !spaces_match(&self.space, &other.space) {
            return Err(ClopenError::SpaceMismatch);
        }
        let mut traces = Vec::with_capacity(self.traces.len());
        for (i, comp) in self.space.components().iter().enumerate() {
            let a = &self.traces[i];
            let b = &other.traces[i];
            // Hull window over the nontrivial traces.
            let mut lo = i64::MAX;
            let mut hi = i64::MIN;
            for t in [a, b] {
                if t.len > 0 {
                    lo = lo.min(t.offset);
                    hi = hi.max(t.window_end());
                }
            }
            let (offset, len) = if lo > hi { (0, 0) } else { (lo, (hi - lo) as usize) };
            let wa = refine_trace(comp, a, offset, len);
            let wb = refine_trace(comp, b, offset, len);
            traces.push(normalize_trace(comp, offset, len, f(&wa, &wb)));
        }
        Ok(ClopenSet { space: self.space.clone(), traces })
    }

    pub fn union(&self, other: &Self) -> Result<Self, ClopenError> {
        self.binary_op(other, |a, b| a.union(b).cloned().collect())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ClopenError> {
        self.binary_op(other, |a, b| a.intersection(b).cloned().collect())
    }

    pub fn difference(&self, other: &Self) -> Result<Self, ClopenError> {
        self.intersect(&other.complement())
    }

    pub fn complement(&self) -> Self {
        let traces = self
            .space
            .components()
            .iter()
            .zip(&self.traces)
            .map(|(comp, t)| {
                if t.is_empty() {
                    return ComponentTrace::full();
                }
                if t.is_full() {
                    return ComponentTrace::empty();
                }
                let rest: BTreeSet<String> = comp
                    .language(t.len)
                    .iter()
                    .filter(|w| !t.words.contains(*w))
                    .cloned()
                    .collect();
                normalize_trace(comp, t.offset, t.len, rest)
            })
            .collect();
        ClopenSet { space: self.space.clone(), traces }
    }

    /// Image under the `n`-th power of the shift; windows move left by
    /// `n`.
    pub fn shift_image(&self, n: i64) -> Self {
        let traces = self
            .traces
            .iter()
            .map(|t| {
                if t.len == 0 {
                    t.clone()
                } else {
                    ComponentTrace { offset: t.offset - n, len: t.len, words: t.words.clone() }
                }
            })
            .collect();
        ClopenSet { space: self.space.clone(), traces }
    }

    pub fn subset_of(&self, other: &Self) -> Result<bool, ClopenError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Measure under each ergodic measure, in component order. Entries
    /// live in each component's own algebraic context.
    pub fn measure_vector(&self) -> MeasureVector {
        let entries = self
            .space
            .components()
            .iter()
            .zip(&self.traces)
            .map(|(comp, t)| {
                let ctx = comp.context();
                if t.is_empty() {
                    return RealAlgebraic::zero(&ctx);
                }
                if t.is_full() {
                    return RealAlgebraic::one(&ctx);
                }
                let freqs = comp.frequencies(t.len);
                t.words
                    .iter()
                    .fold(RealAlgebraic::zero(&ctx), |acc, w| acc.add(&freqs[w]))
            })
            .collect();
        MeasureVector { entries }
    }

    /// Canonical text form; `parse` reads it back to an equal set.
    pub fn format(&self) -> String {
        if self.is_empty() {
            return "empty".to_string();
        }
        let mut chunks = Vec::new();
        for (comp, t) in self.space.components().iter().zip(&self.traces) {
            if t.is_empty() {
                continue;
            }
            let full = t.is_full() || t.words.len() == comp.language(t.len).len();
            if full {
                chunks.push(format!("{}:*", comp.name()));
            } else {
                let words: Vec<&str> = t.words.iter().map(|w| w.as_str()).collect();
                chunks.push(format!("{}:{}:{}", comp.name(), t.offset, words.join("|")));
            }
        }
        chunks.join(" + ")
    }

    /// Parses set notation against a space.
    pub fn parse(space: &Arc<SystemSpace>, input: &str) -> Result<Self, ClopenError> {
        let bad = |reason: &str| ClopenError::BadSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let text = input.trim();
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        if text == "empty" {
            return Ok(Self::empty(space));
        }
        let (negate, body) = match text.strip_prefix('~') {
            Some(rest) => (true, rest.trim()),
            None => (false, text),
        };
        if body.is_empty() {
            return Err(bad("nothing after '~'"));
        }
        let mut acc = Self::empty(space);
        for chunk in body.split('+') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(bad("empty chunk between '+' separators"));
            }
            let mut parts = chunk.splitn(3, ':');
            let name = parts.next().unwrap_or("").trim();
            let Some(second) = parts.next().map(str::trim) else {
                return Err(bad("chunk needs 'name:*' or 'name:offset:words'"));
            };
            if second == "*" {
                if parts.next().is_some() {
                    return Err(bad("'name:*' takes nothing further"));
                }
                acc = acc.union(&Self::full_component(space, name)?)?;
                continue;
            }
            let offset: i64 =
                second.parse().map_err(|_| bad("offset must be an integer"))?;
            let Some(word_part) = parts.next().map(str::trim) else {
                return Err(bad("chunk needs a word list after the offset"));
            };
            // `name:offset:*` is the full component too; the offset is
            // immaterial for the whole set.
            if word_part == "*" {
                acc = acc.union(&Self::full_component(space, name)?)?;
                continue;
            }
            let mut words = BTreeSet::new();
            for w in word_part.split('|') {
                let w = w.trim();
                if w.is_empty() {
                    return Err(bad("empty word in word list"));
                }
                words.insert(w.to_string());
            }
            acc = acc.union(&Self::from_words(space, name, offset, &words)?)?;
        }
        Ok(if negate { acc.complement() } else { acc })
    }
}

impl PartialEq for ClopenSet {
    fn eq(&self, other: &Self) -> bool {
        if !spaces_match(&self.space, &other.space) {
            return false;
        }
        match self.difference(other) {
            Ok(d) => d.is_empty() && other.difference(self).map(|d| d.is_empty()).unwrap_or(false),
            Err(_) => false,
        }
    }
}

impl Eq for ClopenSet {}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format())
    }
}

/// The value of each ergodic measure on one set, in component order.
#[derive(Clone, Debug)]
pub struct MeasureVector {
    entries: Vec<RealAlgebraic>,
}

impl MeasureVector {
    pub fn new(entries: Vec<RealAlgebraic>) -> Self {
        MeasureVector { entries }
    }

    /// A vector of plain rationals, all in the shared rational context.
    pub fn from_rationals(values: &[BigRational]) -> Self {
        MeasureVector {
            entries: values.iter().map(|r| RealAlgebraic::rational(r.clone())).collect(),
        }
    }

    pub fn entries(&self) -> &[RealAlgebraic] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entrywise difference; entries must pair up within one context.
    pub fn sub(&self, other: &Self) -> Result<MeasureVector, ClopenError> {
        if self.len() != other.len() {
            return Err(ClopenError::LengthMismatch);
        }
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.compatible_with(b) {
                return Err(ClopenError::ContextMismatch);
            }
            out.push(a.sub(b));
        }
        Ok(MeasureVector { entries: out })
    }

    /// Exact sign of every entry.
    pub fn signs(&self) -> Vec<i8> {
        self.entries.iter().map(|e| e.sign()).collect()
    }
}

impl fmt::Display for MeasureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
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
    fn format_and_parse_roundtrip() {
        let space = union_space();
        for text in [
            "empty",
            "fib:*",
            "fib:0:a",
            "fib:-1:ab|ba",
            "fib:* + tm:0:ab",
            "fib:2:aab + tm:*",
        ] {
            let set = ClopenSet::parse(&space, text).unwrap();
            let reparsed = ClopenSet::parse(&space, &set.format()).unwrap();
            assert_eq!(set, reparsed, "through {}", text);
        }
        // Canonical formatting is stable.
        let a = ClopenSet::parse(&space, "fib:0:ab|aa").unwrap();
        assert_eq!(a.format(), "fib:0:aa|ab");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let space = union_space();
        for text in ["", "fib", "fib:x:aa", "fib:*:junk", "fib:0:", "fib:0:a| b |", "+", "nope:*"] {
            assert!(ClopenSet::parse(&space, text).is_err(), "accepted {:?}", text);
        }
    }

    #[test]
    fn boolean_algebra_laws() {
        let space = union_space();
        let a = ClopenSet::parse(&space, "fib:0:aa + tm:0:ab|ba").unwrap();
        let b = ClopenSet::parse(&space, "fib:1:ab + tm:*").unwrap();
        assert_eq!(a.union(&a).unwrap(), a);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.union(&a.complement()).unwrap(), ClopenSet::full(&space));
        assert!(a.intersect(&a.complement()).unwrap().is_empty());
        // De Morgan.
        assert_eq!(
            a.union(&b).unwrap().complement(),
            a.complement().intersect(&b.complement()).unwrap()
        );
        assert_eq!(ClopenSet::empty(&space).complement(), ClopenSet::full(&space));
    }

    #[test]
    fn refinement_equates_different_windows() {
        let space = fib_space();
        // [a] at 0 is the union of the length-2 cylinders starting with a.
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let aa_ab = ClopenSet::parse(&space, "fib:0:aa|ab").unwrap();
        assert_eq!(a, aa_ab);
        assert!(ClopenSet::parse(&space, "fib:0:aa").unwrap().subset_of(&a).unwrap());
        assert!(!a.subset_of(&ClopenSet::parse(&space, "fib:0:aa").unwrap()).unwrap());
    }

    #[test]
    fn inadmissible_words_are_rejected() {
        let space = fib_space();
        assert!(matches!(
            ClopenSet::cylinder(&space, "fib", 0, "bb"),
            Err(ClopenError::InadmissibleWord { .. })
        ));
        assert!(matches!(
            ClopenSet::parse(&space, "fib:0:zz"),
            Err(ClopenError::InadmissibleWord { .. })
        ));
        assert!(ClopenSet::parse(&space, "fib:0:ab|ba").is_ok());
        // The empty word is the length-zero window, so its cylinder is
        // the whole component.
        assert!(ClopenSet::cylinder(&space, "fib", 0, "").unwrap().is_full());
    }

    #[test]
    fn refine_to_window_preserves_the_set() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let refined = a.refine_to_window(0, 2).unwrap();
        let expect: BTreeSet<String> = ["aa", "ab"].iter().map(|s| s.to_string()).collect();
        assert_eq!(refined.trace_parts(0), (0, 2, &expect));
        assert_eq!(refined, a);
        assert_eq!(
            a.measure_vector().sub(&refined.measure_vector()).unwrap().signs(),
            vec![0]
        );
        // Full component keeps its whole language at the new window and
        // still formats canonically.
        let full = ClopenSet::full(&space).refine_to_window(0, 1).unwrap();
        assert_eq!(full.trace_parts(0).2.len(), 2);
        assert!(full.is_full());
        assert_eq!(full.format(), "fib:*");
        // Windows that fail to contain the trace are rejected.
        assert!(matches!(
            a.refine_to_window(1, 3),
            Err(ClopenError::WindowTooSmall)
        ));
    }

    #[test]
    fn intersection_across_offsets() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let b_before = ClopenSet::parse(&space, "fib:-1:b").unwrap();
        let meet = a.intersect(&b_before).unwrap();
        assert_eq!(meet, ClopenSet::parse(&space, "fib:-1:ba").unwrap());
    }

    #[test]
    fn measures_stay_in_the_unit_interval() {
        let space = union_space();
        for text in ["fib:0:aa|ba + tm:1:ab", "fib:*", "empty", "~tm:0:bb"] {
            let m = ClopenSet::parse(&space, text).unwrap().measure_vector();
            for e in m.entries() {
                assert!(e.sign() >= 0);
                let complement_side = RealAlgebraic::one(e.context()).sub(e);
                assert!(complement_side.sign() >= 0);
            }
        }
    }

    #[test]
    fn complement_spans_other_components() {
        let space = union_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        assert_eq!(a.complement().format(), "fib:0:b + tm:*");
        let again = ClopenSet::parse(&space, "~fib:0:a").unwrap();
        assert_eq!(again, a.complement());
    }

    #[test]
    fn shift_moves_windows() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:ab").unwrap();
        assert_eq!(a.shift_image(1), ClopenSet::parse(&space, "fib:-1:ab").unwrap());
        assert_eq!(a.shift_image(-2), ClopenSet::parse(&space, "fib:2:ab").unwrap());
        assert_eq!(a.shift_image(3).shift_image(-3), a);
        // Full and empty sets are shift-invariant.
        assert_eq!(ClopenSet::full(&space).shift_image(5), ClopenSet::full(&space));
    }

    #[test]
    fn measures_are_shift_invariant_and_additive() {
        let space = union_space();
        let a = ClopenSet::parse(&space, "fib:0:aa + tm:0:ab").unwrap();
        let b = ClopenSet::parse(&space, "fib:1:ab + tm:0:ba|bb").unwrap();
        let ma = a.measure_vector();
        let shifted = a.shift_image(4).measure_vector();
        assert_eq!(ma.sub(&shifted).unwrap().signs(), vec![0, 0]);
        // mu(A) + mu(B) = mu(A u B) + mu(A n B), per ergodic measure.
        let lhs = |i: usize| ma.entries()[i].add(&b.measure_vector().entries()[i]);
        let union_plus_meet = |i: usize| {
            a.union(&b)
                .unwrap()
                .measure_vector()
                .entries()[i]
                .add(&a.intersect(&b).unwrap().measure_vector().entries()[i])
        };
        for i in 0..2 {
            assert!(lhs(i).sub(&union_plus_meet(i)).is_zero());
        }
    }

    #[test]
    fn measure_values_match_frequencies() {
        let space = union_space();
        let ctx = space.components()[0].context();
        let l = RealAlgebraic::lambda(&ctx);
        let m = ClopenSet::parse(&space, "fib:0:a").unwrap().measure_vector();
        // mu_fib([a]) = lambda - 1, mu_tm([a] in fib) = 0.
        assert!(m.entries()[0].sub(&l.sub_rational(&big_rat(1, 1))).is_zero());
        assert_eq!(m.entries()[1].sign(), 0);
        let full = ClopenSet::full(&space).measure_vector();
        assert_eq!(full.signs(), vec![1, 1]);
        assert!(full.entries()[0].sub_rational(&big_rat(1, 1)).is_zero());
    }

    #[test]
    fn words_at_refines_for_external_walkers() {
        let space = fib_space();
        let a = ClopenSet::parse(&space, "fib:0:a").unwrap();
        let words = a.words_at(0, 0, 3);
        // All length-3 language words starting with a.
        let expect: BTreeSet<String> =
            ["aab", "aba"].iter().map(|s| s.to_string()).collect();
        assert_eq!(words, expect);
        let (off, len, _) = a.trace_parts(0);
        assert_eq!((off, len), (0, 1));
    }

    #[test]
    fn operations_reject_space_mixups() {
        let fib_only = fib_space();
        let both = union_space();
        let a = ClopenSet::full(&fib_only);
        let b = ClopenSet::full(&both);
        assert!(matches!(a.union(&b), Err(ClopenError::SpaceMismatch)));
        assert!(a != b);
        // Structurally identical spaces interoperate.
        let fib_again = fib_space();
        let c = ClopenSet::full(&fib_again);
        assert_eq!(a, c);
    }

    #[test]
    fn measure_vector_arithmetic() {
        let v = MeasureVector::from_rationals(&[big_rat(1, 2), big_rat(1, 3)]);
        let w = MeasureVector::from_rationals(&[big_rat(1, 2), big_rat(2, 3)]);
        assert_eq!(v.sub(&w).unwrap().signs(), vec![0, -1]);
        assert_eq!(w.sub(&v).unwrap().signs(), vec![0, 1]);
        let short = MeasureVector::from_rationals(&[big_rat(1, 2)]);
        assert!(matches!(v.sub(&short), Err(ClopenError::LengthMismatch)));
    }
}
