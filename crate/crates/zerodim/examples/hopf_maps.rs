//! Finite piecewise-shift maps between clopen sets: each piece of a
//! clopen partition of the source moves by one fixed power of the
//! shift, images disjoint inside the target. Verification is exact;
//! the search is bounded exact cover.

use std::sync::Arc;
use zerodim::hopf::{measure_obstruction, search_embedding, search_equivalence, HopfMap, MapMode};
use zerodim::{ClopenSet, Substitution, SubshiftComponent, SystemSpace};

fn main() {
    let space = Arc::new(SystemSpace::single(
        SubshiftComponent::new(
            "tm",
            Substitution::new(&[('a', "ab"), ('b', "ba")]).unwrap(),
        )
        .unwrap(),
    ));
    let set = |t: &str| ClopenSet::parse(&space, t).unwrap();

    // [ba] and [ab] both have measure 1/3. The two-piece map sends
    // [bab] one step and [baab] two steps; the images [bab]_-1 and
    // [baab]_-2 are disjoint and cover [ab].
    let map = HopfMap::new(
        set("tm:0:ba"),
        set("tm:0:ab"),
        vec![(set("tm:0:bab"), 1), (set("tm:0:baab"), 2)],
    )
    .unwrap();
    let report = map.verify(MapMode::Equivalence);
    println!("two-piece map verifies: {}", report.valid);

    // The bounded search rediscovers it from scratch: refine [ba] into
    // level-4 cylinders, try shifts up to 2, merge pieces that share a
    // shift.
    let found = search_equivalence(&set("tm:0:ba"), &set("tm:0:ab"), 2, 4)
        .expect("within bounds");
    for (notation, shift) in found.piece_notation() {
        println!("  piece {}  shift {}", notation, shift);
    }
    assert!(found.verify(MapMode::Equivalence).valid);
    assert_eq!(found.pieces()[0].0, set("tm:0:bab"));

    // Embeddings cannot grow measure: [ab] (1/3) never embeds into
    // [aa] (1/6), and the obstruction is reported before any search.
    let from = set("tm:0:ab");
    let into = set("tm:0:aa");
    println!(
        "embed [ab] into [aa]: obstruction at measure {:?}, search {:?}",
        measure_obstruction(&from, &into, MapMode::Embedding),
        search_embedding(&from, &into, 5, 5).map(|_| ())
    );

    // The other direction works with a single piece shifted once.
    let small = search_embedding(&into, &from, 2, 2).expect("one piece suffices");
    for (notation, shift) in small.piece_notation() {
        println!("  [aa] into [ab]: piece {}  shift {}", notation, shift);
    }
}
