//! Disjoint type guessing: a positive control on engineered ladders, then a
//! total coloring built from poset conditions that no pair guesses.

use hm_forge::csequence::LadderSystem;
use hm_forge::guessing::{
    antibuild, check_guessing, compatible, depth_headroom, random_condition, validate_condition, PosetCondition, TypeSequence,
};
use hm_forge::ordinal::{Ordinal, Universe};
use hm_forge::types::specker_type;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn main() {
    // ω and ω·2 get the ladders {0,1,3} and {2,4,5}, of type t^3_1
    let u = Universe::new(8, 6).unwrap();
    let ladders = LadderSystem::rich(&u, &[vec![o("0"), o("1"), o("3")], vec![o("2"), o("4"), o("5")]]).unwrap();
    let types = TypeSequence::constant(specker_type(3, 1).unwrap(), 1);
    let w = check_guessing(&ladders, &types, &|_| 0).unwrap().unwrap();
    println!("constant coloring is guessed by {} < {} ({})", w.alpha, w.beta, w.realized);

    let u = Universe::new(16, 8).unwrap();
    let ladders = LadderSystem::seeded(&u, 2);
    let deep = TypeSequence::new((0..40).map(|k| specker_type(7, 1 + k % 3).unwrap()).collect());
    println!("{:?}", depth_headroom(&ladders, &deep));

    let total = antibuild(&PosetCondition::new([o("2")], []), &ladders, &deep).unwrap();
    println!("antibuild colors {} limits", total.f.len());
    println!("{}", serde_json::to_string(&total).unwrap());
    let f = |a: &Ordinal| total.f[a];
    println!("guessed: {:?}", check_guessing(&ladders, &deep, &f).unwrap());

    let p = random_condition(&ladders, &deep, 1, 5).unwrap();
    let q = random_condition(&ladders, &deep, 2, 5).unwrap();
    println!(
        "random conditions valid: {} {}, compatible: {}",
        validate_condition(&p, &ladders, &deep).unwrap().is_ok(),
        validate_condition(&q, &ladders, &deep).unwrap().is_ok(),
        compatible(&p, &q, &ladders, &deep).unwrap()
    );
}
