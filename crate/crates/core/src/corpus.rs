//! Bundled example systems.
//!
//! | name           | contents                                                   |
//! |----------------|------------------------------------------------------------|
//! | `fig1`         | a filled square: u and v run concurrently                  |
//! | `fig2`         | two u·v paths whose ends are not past-similar              |
//! | `fig3`         | `fig2` with crossing edges; fibrant, ends past-similar     |
//! | `fig4`         | non-transitive past-similarity                             |
//! | `fig5a`        | top row of the pushout square (`fig5_a`, `fig5_x`, `top`)  |
//! | `fig5b`        | bottom row (`fig5_b`, `fig5_y`, `bottom`)                  |
//! | `fig5`         | the whole square with maps `top`, `left`, `right`, `bottom`|
//! | `m0`, `m1`     | `P(uv) ∨ P(u)` and `P(uv)`, not bisimilar                  |
//! | `erratum`      | a one-to-one inclusion adding a parallel u edge            |
//! | `fig2_to_fig3` | the inclusion of `fig2` into `fig3`                        |
//! | `codiagonal`   | `P(u) ∨ P(u) → P(u)`                                       |

use crate::error::{Error, Result};
use crate::text::{parse, Document};

const ENTRIES: &[(&str, &str)] = &[
    ("fig1", include_str!("../corpus/fig1.hdts")),
    ("fig2", include_str!("../corpus/fig2.hdts")),
    ("fig3", include_str!("../corpus/fig3.hdts")),
    ("fig4", include_str!("../corpus/fig4.hdts")),
    ("fig5a", include_str!("../corpus/fig5a.hdts")),
    ("fig5b", include_str!("../corpus/fig5b.hdts")),
    ("fig5", include_str!("../corpus/fig5.hdts")),
    ("m0", include_str!("../corpus/m0.hdts")),
    ("m1", include_str!("../corpus/m1.hdts")),
    ("erratum", include_str!("../corpus/erratum.hdts")),
    ("fig2_to_fig3", include_str!("../corpus/fig2_to_fig3.hdts")),
    ("codiagonal", include_str!("../corpus/codiagonal.hdts")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Result<Document> {
    parse(source(name).ok_or_else(|| Error::UnknownBlock(name.to_string()))?)
}
