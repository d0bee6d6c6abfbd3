//! Finite piecewise-shift bijections between clopen sets: a partition
//! of the source into clopen pieces, each translated by a power of the
//! shift, with pairwise disjoint images inside the target. Verification
//! is exact clopen algebra; the search is a bounded exact-cover
//! backtracker and "none within bounds" is an outcome, never a
//! disproof.

use crate::clopen::{spaces_match, ClopenSet};
use std::collections::BTreeMap;
use std::fmt;

/// What a map is checked or searched for: landing inside the target,
/// or onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    Embedding,
    Equivalence,
}

impl fmt::Display for MapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapMode::Embedding => write!(f, "embedding"),
            MapMode::Equivalence => write!(f, "equivalence"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfError {
    /// Source, target, and pieces must share one space.
    SpaceMismatch,
}

impl fmt::Display for HopfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfError::SpaceMismatch => write!(f, "map sets live in different spaces"),
        }
    }
}

impl std::error::Error for HopfError {}

/// The first violated condition of a map check, in the fixed order the
/// conditions are tested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseViolation {
    EmptyPiece { index: usize },
    OverlappingPieces { first: usize, second: usize },
    SourceNotCovered,
    OverlappingImages { first: usize, second: usize },
    ImageOutsideTarget { index: usize },
    TargetNotCovered,
}

impl fmt::Display for ClauseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseViolation::EmptyPiece { index } => {
                write!(f, "piece {} is empty", index)
            }
            ClauseViolation::OverlappingPieces { first, second } => {
                write!(f, "pieces {} and {} overlap", first, second)
            }
            ClauseViolation::SourceNotCovered => {
                write!(f, "pieces do not partition the source")
            }
            ClauseViolation::OverlappingImages { first, second } => {
                write!(f, "images of pieces {} and {} overlap", first, second)
            }
            ClauseViolation::ImageOutsideTarget { index } => {
                write!(f, "image of piece {} leaves the target", index)
            }
            ClauseViolation::TargetNotCovered => {
                write!(f, "images do not cover the target")
            }
        }
    }
}

#[derive(Debug)]
pub struct VerifyReport {
    pub valid: bool,
    pub violation: Option<ClauseViolation>,
}

/// A finite piecewise-shift map: pieces partition the source, piece
/// `(P, n)` is carried to its shift image under n steps, and the
/// images sit disjointly inside the target.
#[derive(Clone, Debug)]
pub struct HopfMap {
    source: ClopenSet,
    target: ClopenSet,
    pieces: Vec<(ClopenSet, i64)>,
}

impl HopfMap {
    pub fn new(
        source: ClopenSet,
        target: ClopenSet,
        pieces: Vec<(ClopenSet, i64)>,
    ) -> Result<Self, HopfError> {
        let space = source.space();
        if !spaces_match(space, target.space())
            || pieces.iter().any(|(p, _)| !spaces_match(space, p.space()))
        {
            return Err(HopfError::SpaceMismatch);
        }
        Ok(HopfMap { source, target, pieces })
    }

    pub fn source(&self) -> &ClopenSet {
        &self.source
    }

    pub fn target(&self) -> &ClopenSet {
        &self.target
    }

    pub fn pieces(&self) -> &[(ClopenSet, i64)] {
        &self.pieces
    }

    /// The serialized form: canonical set notation plus shift, one pair
    /// per piece. Parsing each notation back and rebuilding the map
    /// round-trips.
    pub fn piece_notation(&self) -> Vec<(String, i64)> {
        self.pieces.iter().map(|(p, n)| (p.format(), *n)).collect()
    }

    /// Exact check of the map conditions, in order: pieces nonempty,
    /// pieces pairwise disjoint, pieces cover the source, images
    /// pairwise disjoint, images inside the target, and for an
    /// equivalence, images cover the target. Reports the first
    /// violation.
    pub fn verify(&self, mode: MapMode) -> VerifyReport {
        let fail = |violation| VerifyReport { valid: false, violation: Some(violation) };
        for (i, (p, _)) in self.pieces.iter().enumerate() {
            if p.is_empty() {
                return fail(ClauseViolation::EmptyPiece { index: i });
            }
        }
        for i in 0..self.pieces.len() {
            for j in i + 1..self.pieces.len() {
                let overlap = self.pieces[i].0.intersect(&self.pieces[j].0).expect("one space");
                if !overlap.is_empty() {
                    return fail(ClauseViolation::OverlappingPieces { first: i, second: j });
                }
            }
        }
        let mut union = ClopenSet::empty(self.source.space());
        for (p, _) in &self.pieces {
            union = union.union(p).expect("one space");
        }
        if union != self.source {
            return fail(ClauseViolation::SourceNotCovered);
        }
        let images: Vec<ClopenSet> =
            self.pieces.iter().map(|(p, n)| p.shift_image(*n)).collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                let overlap = images[i].intersect(&images[j]).expect("one space");
                if !overlap.is_empty() {
                    return fail(ClauseViolation::OverlappingImages { first: i, second: j });
                }
            }
        }
        for (i, img) in images.iter().enumerate() {
            if !img.subset_of(&self.target).expect("one space") {
                return fail(ClauseViolation::ImageOutsideTarget { index: i });
            }
        }
        if mode == MapMode::Equivalence {
            let mut covered = ClopenSet::empty(self.target.space());
            for img in &images {
                covered = covered.union(img).expect("one space");
            }
            if covered != self.target {
                return fail(ClauseViolation::TargetNotCovered);
            }
        }
        VerifyReport { valid: true, violation: None }
    }
}

/// First measure entry ruling the map out before any search: an
/// embedding needs target measure at least source measure everywhere,
/// an equivalence needs equality. Shifts preserve every measure, so
/// these are necessary.
pub fn measure_obstruction(
    source: &ClopenSet,
    target: &ClopenSet,
    mode: MapMode,
) -> Option<usize> {
    let diff = target
        .measure_vector()
        .sub(&source.measure_vector())
        .expect("one space");
    diff.signs().iter().position(|&s| match mode {
        MapMode::Embedding => s < 0,
        MapMode::Equivalence => s != 0,
    })
}

struct PieceCand {
    comp: usize,
    word: String,
    set: ClopenSet,
    candidates: Vec<i64>,
}

fn dfs(
    pieces: &[PieceCand],
    target: &ClopenSet,
    mode: MapMode,
    k: usize,
    acc: &ClopenSet,
    chosen: &mut Vec<i64>,
) -> bool {
    if k == pieces.len() {
        return match mode {
            MapMode::Embedding => true,
            MapMode::Equivalence => acc == target,
        };
    }
    for &n in &pieces[k].candidates {
        let img = pieces[k].set.shift_image(n);
        if img.intersect(acc).expect("one space").is_empty() {
            let next = acc.union(&img).expect("one space");
            chosen.push(n);
            if dfs(pieces, target, mode, k + 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn search(
    source: &ClopenSet,
    target: &ClopenSet,
    shift_bound: i64,
    level: usize,
    mode: MapMode,
) -> Option<HopfMap> {
    if !source.same_space_as(target) || measure_obstruction(source, target, mode).is_some() {
        return None;
    }
    let space = source.space();
    // Smaller translations first keeps the identity assignment first.
    let mut shifts: Vec<i64> = (-shift_bound..=shift_bound).collect();
    shifts.sort_by_key(|n| (n.abs(), *n));
    let mut pieces = Vec::new();
    for (i, comp) in space.components().iter().enumerate() {
        let (t_off, t_len, _) = source.trace_parts(i);
        let len = level.max(t_len).max(1);
        let offset = if t_len > 0 { t_off } else { 0 };
        for word in source.words_at(i, offset, len) {
            let set = ClopenSet::cylinder(space, comp.name(), offset, &word)
                .expect("refined words are admissible");
            let candidates: Vec<i64> = shifts
                .iter()
                .copied()
                .filter(|&n| set.shift_image(n).subset_of(target).expect("one space"))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            pieces.push(PieceCand { comp: i, word, set, candidates });
        }
    }
    pieces.sort_by(|a, b| {
        (a.candidates.len(), a.comp, &a.word).cmp(&(b.candidates.len(), b.comp, &b.word))
    });
    let mut chosen = Vec::new();
    if !dfs(&pieces, target, mode, 0, &ClopenSet::empty(space), &mut chosen) {
        return None;
    }
    // Pieces sharing a shift merge into one, so a solution that is a
    // refinement of a coarser map comes back in the coarse form.
    let mut grouped: BTreeMap<i64, ClopenSet> = BTreeMap::new();
    for (piece, n) in pieces.iter().zip(chosen) {
        grouped
            .entry(n)
            .and_modify(|s| *s = s.union(&piece.set).expect("one space"))
            .or_insert_with(|| piece.set.clone());
    }
    let merged: Vec<(ClopenSet, i64)> = grouped.into_iter().map(|(n, s)| (s, n)).collect();
    Some(
        HopfMap::new(source.clone(), target.clone(), merged)
            .expect("search stays in one space"),
    )
}

/// Searches for a piecewise-shift map carrying the source into the
/// target: source pieces are the level-`level` cylinder refinement,
/// shifts range over `|n| <= shift_bound`. Deterministic; `None` means
/// none within these bounds.
pub fn search_embedding(
    source: &ClopenSet,
    target: &ClopenSet,
    shift_bound: i64,
    level: usize,
) -> Option<HopfMap> {
    search(source, target, shift_bound, level, MapMode::Embedding)
}

/// As [`search_embedding`], with the images required to partition the
/// target exactly.
pub fn search_equivalence(
    source: &ClopenSet,
    target: &ClopenSet,
    shift_bound: i64,
    level: usize,
) -> Option<HopfMap> {
    search(source, target, shift_bound, level, MapMode::Equivalence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::tests::{fibonacci, thue_morse};
    use crate::systems::SystemSpace;
    use std::sync::Arc;

    fn tm_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::single(thue_morse()))
    }

    fn fib_space() -> Arc<SystemSpace> {
        Arc::new(SystemSpace::single(fibonacci()))
    }

    fn set(space: &Arc<SystemSpace>, text: &str) -> ClopenSet {
        ClopenSet::parse(space, text).unwrap()
    }

    #[test]
    fn identity_and_single_shift_maps() {
        let space = tm_space();
        let b = set(&space, "tm:0:ab");
        let identity = HopfMap::new(b.clone(), b.clone(), vec![(b.clone(), 0)]).unwrap();
        assert!(identity.verify(MapMode::Equivalence).valid);

        let image = b.shift_image(1);
        let one_step = HopfMap::new(b.clone(), image, vec![(b.clone(), 1)]).unwrap();
        assert!(one_step.verify(MapMode::Equivalence).valid);
    }

    #[test]
    fn two_piece_map_between_cylinders() {
        let space = tm_space();
        let map = HopfMap::new(
            set(&space, "tm:0:ba"),
            set(&space, "tm:0:ab"),
            vec![(set(&space, "tm:0:bab"), 1), (set(&space, "tm:0:baab"), 2)],
        )
        .unwrap();
        let report = map.verify(MapMode::Equivalence);
        assert!(report.valid, "violation: {:?}", report.violation);

        // A verified equivalence forces equal measure vectors.
        let diff = map
            .target()
            .measure_vector()
            .sub(&map.source().measure_vector())
            .unwrap();
        assert!(diff.signs().iter().all(|&s| s == 0));
    }

    #[test]
    fn verify_reports_first_violation() {
        let space = tm_space();
        let b = set(&space, "tm:0:ba");
        let a = set(&space, "tm:0:ab");

        let empty_piece = HopfMap::new(
            b.clone(),
            a.clone(),
            vec![(ClopenSet::empty(&space), 0)],
        )
        .unwrap();
        assert_eq!(
            empty_piece.verify(MapMode::Embedding).violation,
            Some(ClauseViolation::EmptyPiece { index: 0 })
        );

        let overlapping = HopfMap::new(
            b.clone(),
            a.clone(),
            vec![(b.clone(), 1), (set(&space, "tm:0:bab"), 1)],
        )
        .unwrap();
        assert_eq!(
            overlapping.verify(MapMode::Embedding).violation,
            Some(ClauseViolation::OverlappingPieces { first: 0, second: 1 })
        );

        let partial = HopfMap::new(
            b.clone(),
            a.clone(),
            vec![(set(&space, "tm:0:bab"), 1)],
        )
        .unwrap();
        assert_eq!(
            partial.verify(MapMode::Embedding).violation,
            Some(ClauseViolation::SourceNotCovered)
        );

        let outside = HopfMap::new(b.clone(), a.clone(), vec![(b.clone(), 0)]).unwrap();
        assert_eq!(
            outside.verify(MapMode::Embedding).violation,
            Some(ClauseViolation::ImageOutsideTarget { index: 0 })
        );

        // Landing inside without covering: fine as an embedding, a
        // violation as an equivalence.
        let sub = set(&space, "tm:0:bab");
        let into = HopfMap::new(sub.clone(), a.clone(), vec![(sub.clone(), 1)]).unwrap();
        assert!(into.verify(MapMode::Embedding).valid);
        assert_eq!(
            into.verify(MapMode::Equivalence).violation,
            Some(ClauseViolation::TargetNotCovered)
        );
    }

    #[test]
    fn search_finds_identity_first() {
        let space = tm_space();
        let b = set(&space, "tm:0:ab");
        let map = search_equivalence(&b, &b, 1, 3).expect("identity within bounds");
        assert_eq!(map.pieces().len(), 1);
        assert_eq!(map.pieces()[0].1, 0);
        assert_eq!(map.pieces()[0].0, b);
        assert!(map.verify(MapMode::Equivalence).valid);
    }

    #[test]
    fn search_rediscovers_the_two_piece_map() {
        let space = tm_space();
        let map = search_equivalence(
            &set(&space, "tm:0:ba"),
            &set(&space, "tm:0:ab"),
            2,
            4,
        )
        .expect("within bounds");
        assert!(map.verify(MapMode::Equivalence).valid);
        assert_eq!(map.pieces().len(), 2);
        assert_eq!(map.pieces()[0].1, 1);
        assert_eq!(map.pieces()[0].0, set(&space, "tm:0:bab"));
        assert_eq!(map.pieces()[1].1, 2);
        assert_eq!(map.pieces()[1].0, set(&space, "tm:0:baab"));
    }

    #[test]
    fn measure_obstruction_stops_oversized_sources() {
        let space = tm_space();
        let ab = set(&space, "tm:0:ab");
        let aa = set(&space, "tm:0:aa");
        assert_eq!(measure_obstruction(&ab, &aa, MapMode::Embedding), Some(0));
        assert!(search_embedding(&ab, &aa, 5, 5).is_none());

        // The small set embeds the other way, one piece one step.
        let map = search_embedding(&aa, &ab, 2, 2).expect("within bounds");
        assert!(map.verify(MapMode::Embedding).valid);
        assert_eq!(map.pieces().len(), 1);
        assert_eq!(map.pieces()[0].1, 1);
        let diff = map
            .target()
            .measure_vector()
            .sub(&map.source().measure_vector())
            .unwrap();
        assert!(diff.signs().iter().all(|&s| s >= 0));
    }

    #[test]
    fn equal_measure_search_is_verified_if_found() {
        let space = fib_space();
        let ab = set(&space, "fib:0:ab");
        let ba = set(&space, "fib:0:ba");
        assert_eq!(measure_obstruction(&ab, &ba, MapMode::Equivalence), None);
        if let Some(map) = search_equivalence(&ab, &ba, 2, 5) {
            assert!(map.verify(MapMode::Equivalence).valid);
        }
    }

    #[test]
    fn verified_maps_survive_piece_refinement() {
        let space = tm_space();
        let map = HopfMap::new(
            set(&space, "tm:0:ba"),
            set(&space, "tm:0:ab"),
            vec![(set(&space, "tm:0:bab"), 1), (set(&space, "tm:0:baab"), 2)],
        )
        .unwrap();
        let mut split = Vec::new();
        for (piece, n) in map.pieces() {
            let (off, len, _) = piece.trace_parts(0);
            for word in piece.words_at(0, off, len + 1) {
                split.push((
                    ClopenSet::cylinder(&space, "tm", off, &word).unwrap(),
                    *n,
                ));
            }
        }
        let refined = HopfMap::new(map.source().clone(), map.target().clone(), split).unwrap();
        assert!(refined.verify(MapMode::Equivalence).valid);
    }

    #[test]
    fn notation_round_trips() {
        let space = tm_space();
        let map = HopfMap::new(
            set(&space, "tm:0:ba"),
            set(&space, "tm:0:ab"),
            vec![(set(&space, "tm:0:bab"), 1), (set(&space, "tm:0:baab"), 2)],
        )
        .unwrap();
        let parts = map.piece_notation();
        let rebuilt_pieces: Vec<(ClopenSet, i64)> = parts
            .iter()
            .map(|(text, n)| (set(&space, text), *n))
            .collect();
        let rebuilt = HopfMap::new(
            map.source().clone(),
            map.target().clone(),
            rebuilt_pieces,
        )
        .unwrap();
        assert!(rebuilt.verify(MapMode::Equivalence).valid);
        for ((p, n), (q, m)) in map.pieces().iter().zip(rebuilt.pieces()) {
            assert_eq!(p, q);
            assert_eq!(n, m);
        }

        let elsewhere = fib_space();
        assert!(matches!(
            HopfMap::new(
                set(&elsewhere, "fib:0:a"),
                set(&space, "tm:0:ab"),
                vec![]
            ),
            Err(HopfError::SpaceMismatch)
        ));
    }
}
