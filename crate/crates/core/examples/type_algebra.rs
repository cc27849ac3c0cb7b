//! Disjoint types: Specker words, depth, opposites and concatenation.

use hm_forge::ordinal::Ordinal;
use hm_forge::types::{realize, specker_type, type_of, DisjointType};

fn main() {
    let t = specker_type(5, 2).unwrap();
    println!("t^5_2 = {t}, depth {}", t.depth());

    for n in 3..=6 {
        let depths: Vec<usize> = (1..n).map(|s| specker_type(n, s).unwrap().depth()).collect();
        println!("depth(t^{n}_s) for s = 1..{}: {depths:?}", n - 1);
    }

    // the type of two finite sets of ordinals
    let a: Vec<Ordinal> = ["0", "w", "w*2+1"].iter().map(|s| s.parse().unwrap()).collect();
    let b: Vec<Ordinal> = ["3", "w+5", "w*3"].iter().map(|s| s.parse().unwrap()).collect();
    let ab = type_of(&a, &b).unwrap();
    println!("type(a, b) = {ab}, type(b, a) = {}", type_of(&b, &a).unwrap());
    assert_eq!(type_of(&b, &a).unwrap(), ab.opposite());

    let (x, y) = realize(&ab);
    println!("canonical realization: {x:?} / {y:?}");

    let joined = ab.concat(&"01".parse::<DisjointType>().unwrap());
    println!("{ab} ++ 01 = {joined} (width {})", joined.width());

    let by_depth = DisjointType::all_of_width(4).fold([0usize; 4], |mut acc, t| {
        acc[t.depth()] += 1;
        acc
    });
    println!("types of width 4 by depth: {by_depth:?}");
}
