//! Example polytopes shipped with the crate.

use crate::polytope::{parse_hrep, HRep};

/// `(name, JSON document)` for the verification suite.
pub const SUITE: [(&str, &str); 9] = [
    ("delta2", include_str!("../polytopes/delta2.json")),
    ("delta3", include_str!("../polytopes/delta3.json")),
    ("delta4", include_str!("../polytopes/delta4.json")),
    ("square", include_str!("../polytopes/square.json")),
    ("cube", include_str!("../polytopes/cube.json")),
    ("tesseract", include_str!("../polytopes/tesseract.json")),
    ("rectangle", include_str!("../polytopes/rectangle.json")),
    ("trapezoid", include_str!("../polytopes/trapezoid.json")),
    ("prism", include_str!("../polytopes/prism.json")),
];

pub const INTERVAL: &str = include_str!("../polytopes/interval.json");

pub fn load(name: &str) -> Option<HRep> {
    let doc = match name {
        "interval" => INTERVAL,
        _ => SUITE.iter().find(|(n, _)| *n == name)?.1,
    };
    Some(parse_hrep(doc).expect("bundled polytopes are valid"))
}

/// The nine suite polytopes, parsed.
pub fn suite() -> Vec<(&'static str, HRep)> {
    SUITE
        .iter()
        .map(|(n, doc)| (*n, parse_hrep(doc).expect("bundled polytopes are valid")))
        .collect()
}
