//! Embedded data tables with an environment override.
//!
//! Every table ships inside the binary via `include_str!`. Setting
//! `GQPRIM_DATA_DIR` redirects lookups to `<dir>/<file>` at runtime, which is
//! how alternative tables can be swapped in without rebuilding.

use std::borrow::Cow;
use std::fs;
use std::path::Path;

/// Environment variable naming a directory that overrides the embedded tables.
pub const DATA_DIR_ENV: &str = "GQPRIM_DATA_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("sporadic.txt", include_str!("../data/sporadic.txt")),
    ("claims.txt", include_str!("../data/claims.txt")),
    ("m11_deg11.txt", include_str!("../data/m11_deg11.txt")),
    ("j1_deg266.txt", include_str!("../data/j1_deg266.txt")),
    ("scenarios.txt", include_str!("../data/scenarios.txt")),
];

/// Returns the contents of a named data file, honouring `GQPRIM_DATA_DIR`.
///
/// Panics if the name is unknown: data files are part of the crate contract,
/// so a missing name is a programming error, not a runtime condition.
pub fn load(name: &str) -> Cow<'static, str> {
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        let path = Path::new(&dir).join(name);
        if let Ok(text) = fs::read_to_string(&path) {
            return Cow::Owned(text);
        }
    }
    for (n, text) in EMBEDDED {
        if *n == name {
            return Cow::Borrowed(text);
        }
    }
    panic!("unknown data file {name:?}");
}

/// Iterates the non-comment, non-empty lines of a data file.
pub fn records(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}
