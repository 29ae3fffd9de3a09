//! Built-in workspaces.

pub const SECTION4: &str = include_str!("../fixtures/section4.rht");
pub const NONFORMAL: &str = include_str!("../fixtures/nonformal.rht");
pub const THOM: &str = include_str!("../fixtures/thom.rht");

pub const NAMES: [&str; 3] = ["section4", "nonformal", "thom"];

pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "section4" => Some(SECTION4),
        "nonformal" => Some(NONFORMAL),
        "thom" => Some(THOM),
        _ => None,
    }
}
