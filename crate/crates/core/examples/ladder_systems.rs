//! Ladder systems on the limits of `ω·M`: canonical, seeded and rich.

use hm_forge::csequence::LadderSystem;
use hm_forge::ordinal::{enum_below, Ordinal, Universe};

fn show(name: &str, l: &LadderSystem) {
    println!("{name}:");
    for (alpha, prefix) in l.iter().take(4) {
        let entries: Vec<String> = prefix.iter().map(ToString::to_string).collect();
        println!("  C_{alpha} = {}", entries.join(", "));
    }
}

fn main() {
    let u = Universe::new(12, 6).unwrap();
    println!("universe below {} with {} limits", u.bound(), u.limit_count());

    show("canonical", &LadderSystem::canonical(&u));
    show("seeded(1)", &LadderSystem::seeded(&u, 1));

    let family: Vec<Vec<Ordinal>> = vec![
        ["0", "1", "3"].iter().map(|s| s.parse().unwrap()).collect(),
        ["2", "4", "5"].iter().map(|s| s.parse().unwrap()).collect(),
    ];
    let rich = LadderSystem::rich(&u, &family).unwrap();
    show("rich", &rich);

    let seeded = LadderSystem::seeded(&u, 1);
    let json = seeded.to_json();
    assert_eq!(LadderSystem::from_json(&json).unwrap(), seeded);
    println!("seeded ladders serialize to {} bytes of JSON", json.len());

    // the enumeration e_β of the ordinals below a limit
    let beta: Ordinal = "w*3".parse().unwrap();
    let first: Vec<String> = (0..8).map(|i| enum_below(&beta, i).unwrap().to_string()).collect();
    println!("e_{beta}(0..8) = {}", first.join(", "));
}
