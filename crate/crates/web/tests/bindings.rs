//! The demo page's three operations through the native build.

use rtfactor_web::{character, circles, link_summary};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn kinks_change_the_bracket_but_not_jones() {
    let plain = parse(&link_summary("B2:1,1,1", 0, 4).unwrap());
    let kinked = parse(&link_summary("B2:1,1,1", 2, 4).unwrap());
    assert_eq!(plain["jones"], "t + t^{3} - t^{4}");
    assert_eq!(plain["jones"], kinked["jones"]);
    assert_ne!(plain["bracket"], kinked["bracket"]);
    assert_eq!(kinked["writhe"], 5);
}

#[test]
fn sliding_circle_unlinks_past_the_rim() {
    let linked = parse(&circles(1.0, 256, 0).unwrap());
    let apart = parse(&circles(2.5, 256, 0).unwrap());
    assert!((linked["linking"].as_f64().unwrap().abs() - 1.0).abs() < 1e-3);
    assert!(apart["linking"].as_f64().unwrap().abs() < 1e-3);
}

#[test]
fn twisted_framings_self_link_by_their_twist_count() {
    for k in -2..=2 {
        let v = parse(&circles(2.5, 512, k).unwrap());
        let sl = v["self_linking"].as_f64().unwrap();
        assert!((sl - k as f64).abs() < 1e-2, "k = {k}: {sl}");
    }
}

#[test]
fn character_sides_agree_for_each_menu_algebra() {
    for (alg, x) in [
        ("sl2", "1,0,0"),
        ("sl3", "1,2,0,0,0,0,0,0"),
        ("sl4", "1,2,3,0,0,0,0,0,0,0,0,0,0,0,0"),
    ] {
        let v = parse(&character(alg, x, 6).unwrap());
        assert_eq!(v["holds"], true, "{alg}");
        assert_eq!(v["lhs"], v["rhs"]);
    }
}

#[test]
fn bad_inputs_are_reported() {
    assert!(link_summary("B2:3", 0, 4).is_err());
    assert!(circles(0.0, 64, 0).is_err());
    assert!(character("sl2", "1,x,0", 4).is_err());
}
