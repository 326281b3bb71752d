//! Morphisms on words, their iteration and fixed points.
//!
//! Text format, one rule per line, `#` starting a comment and whitespace
//! ignored everywhere:
//!
//! ```text
//! # Thue-Morse
//! 0 -> 01
//! 1 -> 10
//! ```
//!
//! The alphabet is inferred as one more than the largest letter seen, and
//! every letter of it needs exactly one rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{self, Letter, Word, MAX_ALPHABET};

/// Default upper bound on the length of a materialized iterate.
pub const DEFAULT_LENGTH_CAP: usize = 100_000_000;

/// A morphism from words over `0..source` to words over `0..target`, with
/// `source` the number of images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    images: Vec<Word>,
    target: usize,
}

impl Morphism {
    pub fn new(images: Vec<Word>, target: usize) -> Result<Self> {
        word::check_alphabet(target)?;
        word::check_alphabet(images.len())?;
        for (letter, image) in images.iter().enumerate() {
            if image.is_empty() {
                return Err(Error::InvalidMorphism(format!("image of {} is empty", word::render_letter(letter as Letter))));
            }
            if let Some(&bad) = image.iter().find(|&&l| l as usize >= target) {
                return Err(Error::InvalidMorphism(format!(
                    "image of {} uses letter {} outside the target alphabet of size {target}",
                    word::render_letter(letter as Letter),
                    word::render_letter(bad),
                )));
            }
        }
        Ok(Morphism { images, target })
    }

    /// An endomorphism from rendered images, one per letter in order.
    pub fn from_images(images: &[&str]) -> Result<Self> {
        let k = images.len();
        let images = images.iter().map(|s| Word::parse(s, k)).collect::<Result<Vec<_>>>()?;
        Morphism::new(images, k)
    }

    pub fn identity(k: usize) -> Result<Self> {
        word::check_alphabet(k)?;
        Morphism::new((0..k as Letter).map(|a| Word::from_raw(vec![a])).collect(), k)
    }

    pub fn source_alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn target_alphabet(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> Result<&Word> {
        self.images.get(a as usize).ok_or(Error::LetterOutOfRange {
            letter: a,
            position: 0,
            alphabet: self.source_alphabet(),
        })
    }

    pub fn is_endomorphism(&self) -> bool {
        self.target <= self.source_alphabet()
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::new();
        for (position, &a) in w.iter().enumerate() {
            let image = self.images.get(a as usize).ok_or(Error::LetterOutOfRange {
                letter: a,
                position,
                alphabet: self.source_alphabet(),
            })?;
            out.extend_from_slice(image);
        }
        Ok(Word::from_raw(out))
    }

    /// `h^n(seed)`, refusing results longer than [`DEFAULT_LENGTH_CAP`].
    pub fn iterate(&self, seed: &[Letter], n: usize) -> Result<Word> {
        self.iterate_capped(seed, n, DEFAULT_LENGTH_CAP)
    }

    pub fn iterate_capped(&self, seed: &[Letter], n: usize, cap: usize) -> Result<Word> {
        self.require_endomorphism()?;
        let needed = self.iterate_len(seed, n)?;
        if needed > cap as u128 {
            return Err(Error::LengthCap { needed, cap });
        }
        let mut w = Word::new(seed.to_vec(), self.source_alphabet())?;
        for _ in 0..n {
            w = self.apply(&w)?;
        }
        Ok(w)
    }

    /// `|h^n(seed)|`, saturating at `u128::MAX`.
    pub fn iterate_len(&self, seed: &[Letter], n: usize) -> Result<u128> {
        self.require_endomorphism()?;
        Word::new(seed.to_vec(), self.source_alphabet())?;
        let table = self.length_table(n);
        Ok(seed.iter().fold(0u128, |acc, &a| acc.saturating_add(table[n][a as usize])))
    }

    /// `table[d][a] = |h^d(a)|`, saturating.
    fn length_table(&self, depth: usize) -> Vec<Vec<u128>> {
        let mut table = vec![vec![1u128; self.source_alphabet()]];
        for d in 1..=depth {
            let prev = &table[d - 1];
            let row = self
                .images
                .iter()
                .map(|img| img.iter().fold(0u128, |acc, &c| acc.saturating_add(prev[c as usize])))
                .collect();
            table.push(row);
        }
        table
    }

    /// The letters `[start, start + len)` of `h^depth(a)`, expanding only the
    /// part of the derivation tree that covers the range.
    pub fn iterate_slice(&self, a: Letter, depth: usize, start: usize, len: usize) -> Result<Word> {
        self.require_endomorphism()?;
        self.image(a)?;
        let table = self.length_table(depth);
        let total = table[depth][a as usize];
        let end = start as u128 + len as u128;
        if end > total {
            return Err(Error::FactorRange { start, len, word_len: total.min(usize::MAX as u128) as usize });
        }
        let mut out = Vec::with_capacity(len);
        if len > 0 {
            self.expand_range(&table, a, depth, start as u128, end, &mut out);
        }
        Ok(Word::from_raw(out))
    }

    fn expand_range(&self, table: &[Vec<u128>], a: Letter, depth: usize, lo: u128, hi: u128, out: &mut Vec<Letter>) {
        if depth == 0 {
            out.push(a);
            return;
        }
        let mut offset = 0u128;
        for &c in self.images[a as usize].iter() {
            let l = table[depth - 1][c as usize];
            if offset + l > lo && offset < hi {
                let from = lo.max(offset) - offset;
                let to = hi.min(offset + l) - offset;
                self.expand_range(table, c, depth - 1, from, to, out);
            }
            offset = offset.saturating_add(l);
            if offset >= hi {
                break;
            }
        }
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(format!(
                "not an endomorphism: images use {} letters but only {} have rules",
                self.target,
                self.source_alphabet()
            )))
        }
    }

    /// The common image length, if all images have the same length.
    pub fn is_uniform(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|img| img.len() == k).then_some(k)
    }

    pub fn is_palindromic(&self) -> bool {
        self.images.iter().all(|img| img.is_palindrome())
    }

    /// `h(a) = a x` with `h(x)` nonempty.
    pub fn is_prolongable(&self, a: Letter) -> bool {
        let Some(image) = self.images.get(a as usize) else {
            return false;
        };
        if image.len() < 2 || image[0] != a {
            return false;
        }
        match self.apply(&image[1..]) {
            Ok(tail) => !tail.is_empty(),
            Err(_) => false,
        }
    }

    /// Streams the fixed point `h^ω(a)`.
    pub fn fixed_point(&self, a: Letter) -> Result<FixedPoint<'_>> {
        if !self.is_prolongable(a) {
            return Err(Error::NotProlongable(a));
        }
        Ok(FixedPoint { morphism: self, buffer: self.images[a as usize].to_vec(), expanded: 1, emitted: 0 })
    }

    /// The first `n` letters of `h^ω(a)`.
    pub fn fixed_point_prefix(&self, a: Letter, n: usize) -> Result<Word> {
        let mut fp = self.fixed_point(a)?;
        fp.fill(n);
        fp.buffer.truncate(n);
        Ok(Word::from_raw(fp.buffer))
    }

    /// `x` such that `h(a) = reverse(x) a x`, if any.
    pub fn center_decomposition(&self, a: Letter) -> Option<Word> {
        let image = self.images.get(a as usize)?;
        let mid = image.len() / 2;
        if image.len() % 2 == 1 && image[mid] == a && image.is_palindrome() {
            Some(Word::from_raw(image[mid + 1..].to_vec()))
        } else {
            None
        }
    }

    /// `self ∘ inner`: each letter `a` maps to `self(inner(a))`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target > self.source_alphabet() {
            return Err(Error::InvalidMorphism(format!(
                "cannot compose: inner images use {} letters, outer has rules for {}",
                inner.target,
                self.source_alphabet()
            )));
        }
        let images = inner.images.iter().map(|img| self.apply(img)).collect::<Result<Vec<_>>>()?;
        Morphism::new(images, self.target)
    }
}

/// Lazy expansion of a fixed point: the output buffer is its own input
/// queue, since `h^ω(a) = h(h^ω(a))`.
#[derive(Clone, Debug)]
pub struct FixedPoint<'a> {
    morphism: &'a Morphism,
    buffer: Vec<Letter>,
    expanded: usize,
    emitted: usize,
}

impl FixedPoint<'_> {
    fn fill(&mut self, n: usize) {
        while self.buffer.len() < n {
            let next = self.buffer[self.expanded];
            self.buffer.extend_from_slice(&self.morphism.images[next as usize]);
            self.expanded += 1;
        }
    }
}

impl Iterator for FixedPoint<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        self.fill(self.emitted + 1);
        self.emitted += 1;
        Some(self.buffer[self.emitted - 1])
    }
}

impl fmt::Display for Morphism {
    /// Renders the rule-per-line text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, image) in self.images.iter().enumerate() {
            writeln!(f, "{} -> {}", word::render_letter(a as Letter), image)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.images.iter().enumerate().map(|(a, img)| (word::render_letter(a as Letter), img.render())))
            .finish()
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut rules: Vec<Option<Vec<Letter>>> = Vec::new();
        let mut max_letter: Option<Letter> = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            if compact.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::InvalidMorphism(format!("line {}: {msg}", lineno + 1));
            let (lhs, rhs) = compact.split_once("->").ok_or_else(|| bad("expected `<letter> -> <image>`"))?;
            let mut lhs_chars = lhs.chars();
            let (Some(c), None) = (lhs_chars.next(), lhs_chars.next()) else {
                return Err(bad("left-hand side must be a single letter"));
            };
            let a = word::parse_letter(c, 0).map_err(|e| bad(&e.to_string()))?;
            if rhs.is_empty() {
                return Err(bad("empty image"));
            }
            let image = rhs
                .chars()
                .enumerate()
                .map(|(i, c)| word::parse_letter(c, i))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad(&e.to_string()))?;
            let line_max = image.iter().copied().chain([a]).max();
            max_letter = max_letter.max(line_max);
            if rules.len() <= a as usize {
                rules.resize(a as usize + 1, None);
            }
            if rules[a as usize].is_some() {
                return Err(bad(&format!("duplicate rule for {c}")));
            }
            rules[a as usize] = Some(image);
        }
        let k = max_letter.map(|m| m as usize + 1).ok_or_else(|| Error::InvalidMorphism("no rules".into()))?;
        debug_assert!(k <= MAX_ALPHABET);
        rules.resize(k, None);
        let images = rules
            .into_iter()
            .enumerate()
            .map(|(a, img)| {
                img.map(Word::from_raw).ok_or_else(|| {
                    Error::InvalidMorphism(format!("no rule for letter {} of the alphabet", word::render_letter(a as Letter)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(images, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse_inferred(s).unwrap()
    }

    fn mu() -> Morphism {
        Morphism::from_images(&["01", "10"]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert!(Morphism::from_images(&["01", ""]).is_err());
        assert!(Morphism::from_images(&["02", "1"]).is_err());
        assert!(Morphism::new(vec![], 2).is_err());
        let m = Morphism::new(vec![w("012")], 3).unwrap();
        assert!(!m.is_endomorphism());
        assert!(m.iterate(&[0], 1).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(mu().apply(&w("0")).unwrap(), w("01"));
        assert_eq!(mu().apply(&[]).unwrap(), Word::empty());
        assert_eq!(mu().apply(&w("01")).unwrap(), w("0110"));
        assert!(mu().apply(&w("012")).is_err());
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(mu().iterate(&w("0"), 2).unwrap(), w("0110"));
        assert_eq!(mu().iterate(&w("0"), 0).unwrap(), w("0"));
        assert_eq!(mu().iterate(&w("0"), 3).unwrap(), w("01101001"));
        assert_eq!(mu().iterate_len(&w("0"), 200).unwrap(), u128::MAX);
        assert!(matches!(mu().iterate(&w("0"), 40), Err(Error::LengthCap { .. })));
        assert!(matches!(mu().iterate_capped(&w("0"), 4, 15), Err(Error::LengthCap { needed: 16, cap: 15 })));
    }

    #[test]
    fn structural_predicates() {
        let non_uniform = Morphism::from_images(&["0", "01"]).unwrap();
        assert_eq!(non_uniform.is_uniform(), None);
        assert_eq!(mu().is_uniform(), Some(2));
        assert!(!mu().is_palindromic());
        assert!(mu().is_prolongable(0));
        assert!(mu().is_prolongable(1));
        assert!(!mu().is_prolongable(2));
        assert!(!Morphism::from_images(&["10", "1"]).unwrap().is_prolongable(0));
        assert!(!non_uniform.is_prolongable(0));
    }

    #[test]
    fn fixed_points() {
        assert_eq!(mu().fixed_point_prefix(0, 8).unwrap(), w("01101001"));
        assert_eq!(mu().fixed_point_prefix(0, 0).unwrap(), Word::empty());
        assert_eq!(mu().fixed_point_prefix(1, 4).unwrap(), w("1001"));
        let streamed: Vec<Letter> = mu().fixed_point(0).unwrap().take(64).collect();
        assert_eq!(streamed, mu().iterate(&w("0"), 6).unwrap().letters());
        assert_eq!(
            Morphism::from_images(&["10", "1"]).unwrap().fixed_point_prefix(0, 3),
            Err(Error::NotProlongable(0))
        );
        // non-uniform prolongable morphism (Fibonacci)
        let fib = Morphism::from_images(&["01", "0"]).unwrap();
        assert_eq!(fib.fixed_point_prefix(0, 13).unwrap(), w("0100101001001"));
    }

    #[test]
    fn slices_match_full_iterates() {
        let fib = Morphism::from_images(&["01", "0"]).unwrap();
        for m in [mu(), fib] {
            for depth in 0..7 {
                let full = m.iterate(&[0], depth).unwrap();
                for start in 0..full.len() {
                    for len in 0..=full.len() - start {
                        assert_eq!(m.iterate_slice(0, depth, start, len).unwrap(), full.factor(start, len).unwrap());
                    }
                }
                assert!(m.iterate_slice(0, depth, full.len(), 1).is_err());
            }
        }
    }

    #[test]
    fn center_decompositions() {
        assert_eq!(Morphism::from_images(&["111", "0"]).unwrap().center_decomposition(0), None);
        assert_eq!(Morphism::from_images(&["1001", "0"]).unwrap().center_decomposition(0), None);
        assert_eq!(Morphism::from_images(&["101", "0"]).unwrap().center_decomposition(0), Some(w("1")));
        let m = Morphism::from_images(&["10201", "1", "121"]).unwrap();
        assert_eq!(m.center_decomposition(0), None);
        assert_eq!(m.center_decomposition(2), Some(w("1")));
        assert_eq!(m.center_decomposition(1), Some(Word::empty()));
        assert_eq!(m.center_decomposition(7), None);
    }

    #[test]
    fn composition() {
        let mm = mu().compose(&mu()).unwrap();
        assert_eq!(mm.images(), &[w("0110"), w("1001")]);
        let id = Morphism::identity(2).unwrap();
        assert_eq!(id.compose(&mu()).unwrap(), mu());
        assert_eq!(mu().compose(&id).unwrap(), mu());
        let wide = Morphism::from_images(&["01", "12", "20"]).unwrap();
        assert!(mu().compose(&wide).is_err());
    }

    #[test]
    fn text_format() {
        let text = "# Thue-Morse\n 0 -> 01   # first\n\n1->1 0\n";
        assert_eq!(text.parse::<Morphism>().unwrap(), mu());
        assert_eq!(mu().to_string().parse::<Morphism>().unwrap(), mu());
        for bad in ["", "# nothing", "0 -> 01\n0 -> 10", "0 -> \n1 -> 1", "0 -> 02\n1 -> 1", "01 -> 0", "0 => 1", "A -> 0"] {
            assert!(bad.parse::<Morphism>().is_err(), "{bad:?}");
        }
    }

    fn arb_morphism() -> impl Strategy<Value = Morphism> {
        (2usize..=3).prop_flat_map(|k| {
            prop::collection::vec(prop::collection::vec(0..k as Letter, 1..4), k)
                .prop_map(move |imgs| Morphism::new(imgs.into_iter().map(Word::from_raw).collect(), k).unwrap())
        })
    }

    proptest! {
        #[test]
        fn compose_respects_apply(h1 in arb_morphism(), h2 in arb_morphism(), seed in prop::collection::vec(0u8..2, 0..8)) {
            prop_assume!(h2.target_alphabet() <= h1.source_alphabet());
            let c = h1.compose(&h2).unwrap();
            prop_assert_eq!(c.apply(&seed).unwrap(), h1.apply(&h2.apply(&seed).unwrap()).unwrap());
        }

        #[test]
        fn fixed_point_prefixes_nest(n in 0usize..300, m in 0usize..300) {
            let (n, m) = (n.min(m), n.max(m));
            let a = mu().fixed_point_prefix(0, n).unwrap();
            let b = mu().fixed_point_prefix(0, m).unwrap();
            prop_assert_eq!(&b[..n], &a[..]);
        }

        #[test]
        fn text_round_trip(h in arb_morphism()) {
            // every letter appears as a left-hand side, so the inferred alphabet covers the images
            prop_assert_eq!(h.to_string().parse::<Morphism>().unwrap(), h);
        }
    }

    #[test]
    fn iterate_len_matches_uniform_power() {
        let m = Morphism::from_images(&["012", "120", "201"]).unwrap();
        for n in 0..8 {
            assert_eq!(m.iterate(&[0], n).unwrap().len(), 3usize.pow(n as u32));
        }
    }
}
