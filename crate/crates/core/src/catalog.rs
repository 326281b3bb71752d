//! Built-in morphisms.
//!
//! Avoidance claims are recorded as metadata about the infinite fixed point.
//! They come from the literature and are only ever checked here on finite
//! prefixes.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Threshold};
use crate::morphism::Morphism;
use crate::word::Letter;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub morphism: Morphism,
    /// The fixed point from `seed` avoids these powers.
    pub avoids: Threshold,
    pub seed: Letter,
    pub provenance: &'static str,
}

pub const THUE_MORSE: [&str; 2] = ["01", "10"];

/// Rampersad's binary morphism.
pub const RAMPERSAD: [&str; 2] = ["0110100110110010110", "1001011001001101001"];

/// Dejean's ternary morphism, letters renamed so that every image is a palindrome.
pub const DEJEAN: [&str; 3] = ["0120212012102120210", "1201020120210201021", "2012101201021012102"];

pub const QUATERNARY: [&str; 4] = ["01312021310", "12023132021", "23130203132", "30201310203"];

/// Ternary 31-uniform alternative to Dejean's morphism with `0` fixed at the center of its image.
pub const TERNARY_CENTERED: [&str; 3] = [
    "0121021201020120210201021201210",
    "1202102012101201021012102012021",
    "2010210120212012102120210120102",
];

pub const NAMES: [&str; 6] = ["mu", "f", "g", "g3", "h", "alpha"];

fn exp(p: u64, q: u64) -> Exponent {
    Exponent::new(p, q).expect("positive literal")
}

fn build() -> Vec<CatalogEntry> {
    let endo = |images: &[&str]| Morphism::from_images(images).expect("catalog images are well formed");
    let g = endo(&DEJEAN);
    let g3 = g.compose(&g.compose(&g).expect("same alphabet")).expect("same alphabet");
    vec![
        CatalogEntry {
            name: "mu",
            morphism: endo(&THUE_MORSE),
            avoids: Threshold::above(exp(2, 1)),
            seed: 0,
            provenance: "Thue-Morse morphism; its fixed point is overlap-free (Thue 1912)",
        },
        CatalogEntry {
            name: "f",
            morphism: endo(&RAMPERSAD),
            avoids: Threshold::above(exp(7, 3)),
            seed: 0,
            provenance: "Rampersad's 19-uniform morphism; fixed point avoids 7/3+-powers (Rampersad 2004)",
        },
        CatalogEntry {
            name: "g",
            morphism: g,
            avoids: Threshold::above(exp(7, 4)),
            seed: 0,
            provenance: "Dejean's 19-uniform morphism up to renaming; iterates avoid 7/4+-powers (Dejean 1972)",
        },
        CatalogEntry {
            name: "g3",
            morphism: g3,
            avoids: Threshold::above(exp(7, 4)),
            seed: 0,
            provenance: "third power of g; 6859-uniform, same fixed point as g",
        },
        CatalogEntry {
            name: "h",
            morphism: endo(&QUATERNARY),
            avoids: Threshold::above(exp(3, 2)),
            seed: 0,
            provenance: "11-uniform quaternary morphism; 3/2+-freeness established by an automatic (Walnut) proof",
        },
        CatalogEntry {
            name: "alpha",
            morphism: endo(&TERNARY_CENTERED),
            avoids: Threshold::above(exp(7, 4)),
            seed: 0,
            provenance: "31-uniform ternary morphism; fixed point claimed to avoid 7/4+-powers",
        },
    ]
}

pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Usage(format!("unknown morphism {name:?}; built-in names are {}", NAMES.join(", "))))
}

/// The morphism registered under `name`. Panics on unknown names.
pub fn morphism(name: &str) -> &'static Morphism {
    &lookup(name).expect("built-in morphism name").morphism
}
