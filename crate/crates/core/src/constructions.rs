//! Palindromes of minimal critical exponent, and the symmetric families
//! built from palindromic morphisms.
//!
//! Odd-length palindromes are produced by cutting the central `ℓ` letters out
//! of an iterate of a palindromic uniform morphism: `f` for binary (7/3),
//! `g` for ternary (7/4), `h` for four or more letters (3/2). Below the
//! lengths those constructions cover, the result comes from exhaustive search.

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::morphism::{Morphism, DEFAULT_LENGTH_CAP};
use crate::par::Execution;
use crate::repetitions::critical_exponent_with;
use crate::verification::{min_cexp_over_palindromes_with, DEFAULT_BUDGET};
use crate::word::{check_alphabet, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// Central slice of `morphism^depth(0)` with `trim` letters removed from each end.
    TrimmedMorphic { morphism: String, depth: usize, trim: usize },
    /// Lexicographically least of all minimal palindromes, listed in `witnesses`.
    ExhaustiveSearch { witnesses: Vec<Word> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPalindromeResult {
    pub word: Word,
    pub critical_exponent: Exponent,
    pub provenance: Provenance,
    /// Whether `critical_exponent` was recomputed from `word`.
    pub verified: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ConstructOptions {
    /// Recompute the critical exponent of the result (`O(ℓ^2)`).
    pub verify: bool,
    pub exec: Execution,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { verify: true, exec: Execution::default() }
    }
}

/// Smallest odd length from which the morphic construction applies, its
/// morphism name and the critical exponent it attains.
pub fn morphic_regime(k: usize) -> (usize, &'static str, Exponent) {
    match k {
        2 => (7, "f", Exponent::new(7, 3).unwrap()),
        3 => (17, "g", Exponent::new(7, 4).unwrap()),
        _ => (3, "h", Exponent::new(3, 2).unwrap()),
    }
}

/// Removes `t` letters from each end of an odd-length palindrome.
pub fn trim(w: &Word, t: usize) -> Result<Word> {
    if w.len().is_multiple_of(2) || !w.is_palindrome() {
        return Err(Error::Usage(format!("trim needs an odd-length palindrome, got {w}")));
    }
    central(w, t)
}

fn central(w: &Word, t: usize) -> Result<Word> {
    if t.checked_mul(2).is_none_or(|tt| tt >= w.len()) {
        return Err(Error::Usage(format!("cannot trim {t} letters from each end of a word of length {}", w.len())));
    }
    w.factor(t, w.len() - 2 * t)
}

/// Smallest `depth` with `|h^depth(a)| >= len`, or `None` if the iterates stop growing first.
fn depth_reaching(h: &Morphism, a: Letter, len: usize) -> Result<Option<usize>> {
    let mut depth = 0;
    let mut prev = 0u128;
    loop {
        let have = h.iterate_len(&[a], depth)?;
        if have >= len as u128 {
            return Ok(Some(depth));
        }
        if have == prev {
            return Ok(None);
        }
        prev = have;
        depth += 1;
    }
}

/// Central `len` letters of `h^depth(a)` for the smallest sufficient depth.
fn central_slice(h: &Morphism, a: Letter, len: usize) -> Result<(Word, usize, usize)> {
    if len > DEFAULT_LENGTH_CAP {
        return Err(Error::LengthCap { needed: len as u128, cap: DEFAULT_LENGTH_CAP });
    }
    let depth = depth_reaching(h, a, len)?
        .ok_or_else(|| Error::Usage(format!("iterates of the morphism on {a} never reach length {len}")))?;
    let total = h.iterate_len(&[a], depth)? as usize;
    let t = (total - len) / 2;
    Ok((h.iterate_slice(a, depth, t, len)?, depth, t))
}

pub fn minimal_palindrome(k: usize, len: usize) -> Result<MinimalPalindromeResult> {
    minimal_palindrome_with(k, len, ConstructOptions::default())
}

/// A palindrome of odd length `len` over `k` letters with the least possible
/// critical exponent.
pub fn minimal_palindrome_with(k: usize, len: usize, opts: ConstructOptions) -> Result<MinimalPalindromeResult> {
    check_alphabet(k)?;
    if k < 2 {
        return Err(Error::Usage("alphabet size must be at least 2".into()));
    }
    if len.is_multiple_of(2) {
        return Err(Error::Usage(format!("length {len} is even; even lengths are served by even_palindrome")));
    }
    let (threshold, name, claimed) = morphic_regime(k);
    let result = if len >= threshold {
        let (word, depth, trim) = central_slice(catalog::morphism(name), 0, len)?;
        MinimalPalindromeResult {
            word,
            critical_exponent: claimed,
            provenance: Provenance::TrimmedMorphic { morphism: name.to_string(), depth, trim },
            verified: false,
        }
    } else {
        let cert = min_cexp_over_palindromes_with(k, len, DEFAULT_BUDGET, opts.exec)?;
        let minimum = cert.minimum.expect("enumeration of a nonempty length is nonempty");
        MinimalPalindromeResult {
            word: cert.witnesses[0].clone(),
            critical_exponent: minimum,
            provenance: Provenance::ExhaustiveSearch { witnesses: cert.witnesses },
            verified: true,
        }
    };
    finish(result, opts)
}

fn finish(mut result: MinimalPalindromeResult, opts: ConstructOptions) -> Result<MinimalPalindromeResult> {
    if opts.verify && !result.verified {
        let actual = critical_exponent_with(&result.word, opts.exec)?.value;
        if actual != result.critical_exponent {
            return Err(Error::Verification(format!(
                "constructed word has critical exponent {actual}, expected {}",
                result.critical_exponent
            )));
        }
        result.verified = true;
    }
    Ok(result)
}

pub fn even_palindrome(k: usize, len: usize) -> Result<MinimalPalindromeResult> {
    even_palindrome_with(k, len, ConstructOptions::default())
}

/// A palindrome of even length `len` with critical exponent 2, cut from the
/// center of `mu^(2n)(0)`.
pub fn even_palindrome_with(k: usize, len: usize, opts: ConstructOptions) -> Result<MinimalPalindromeResult> {
    check_alphabet(k)?;
    if k < 2 {
        return Err(Error::Usage("alphabet size must be at least 2".into()));
    }
    if len < 2 || len % 2 == 1 {
        return Err(Error::Usage(format!("even_palindrome needs an even length >= 2, got {len}")));
    }
    let mu = catalog::morphism("mu");
    let mut depth = 2;
    while (1u128 << depth) < len as u128 {
        depth += 2;
    }
    let total = 1usize << depth;
    let t = (total - len) / 2;
    let word = mu.iterate_slice(0, depth, t, len)?;
    let result = MinimalPalindromeResult {
        word,
        critical_exponent: Exponent::new(2, 1).unwrap(),
        provenance: Provenance::TrimmedMorphic { morphism: "mu".into(), depth, trim: t },
        verified: false,
    };
    finish(result, opts)
}

/// Any palindrome of the requested length: odd lengths via
/// [`minimal_palindrome_with`], even ones via [`even_palindrome_with`].
pub fn construct(k: usize, len: usize, opts: ConstructOptions) -> Result<MinimalPalindromeResult> {
    if len % 2 == 1 {
        minimal_palindrome_with(k, len, opts)
    } else {
        even_palindrome_with(k, len, opts)
    }
}

/// `mu^(2n)(0) 010 mu^(2n)(0)`.
pub fn thue_morse_sandwich(n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::Usage("thue_morse_sandwich needs n >= 1".into()));
    }
    let mu = catalog::morphism("mu");
    let half = mu.iterate(&[0], 2 * n)?;
    let needed = 2 * half.len() as u128 + 3;
    if needed > DEFAULT_LENGTH_CAP as u128 {
        return Err(Error::LengthCap { needed, cap: DEFAULT_LENGTH_CAP });
    }
    Ok(Word::concat([&half, &Word::parse("010", 2)?, &half]))
}

fn require_center(h: &Morphism, a: Letter) -> Result<()> {
    if h.is_palindromic() && h.center_decomposition(a).is_some() {
        Ok(())
    } else {
        Err(Error::NotCenterPreserving(a))
    }
}

/// The letters at offsets `-r..=r` around the fixed center `a` of the
/// bi-infinite word generated by a center-preserving palindromic morphism.
pub fn central_window(h: &Morphism, a: Letter, r: usize) -> Result<Word> {
    require_center(h, a)?;
    let len = r.checked_mul(2).and_then(|d| d.checked_add(1)).ok_or(Error::LengthCap {
        needed: 2 * r as u128 + 1,
        cap: DEFAULT_LENGTH_CAP,
    })?;
    Ok(central_slice(h, a, len)?.0)
}

/// Same window read from `h^depth(a)`; fails if that iterate is too short.
pub fn central_window_at_depth(h: &Morphism, a: Letter, r: usize, depth: usize) -> Result<Word> {
    require_center(h, a)?;
    let total = h.iterate_len(&[a], depth)?;
    let len = 2 * r as u128 + 1;
    if total < len {
        return Err(Error::Usage(format!("iterate at depth {depth} has only {total} letters")));
    }
    let start = ((total - len) / 2) as usize;
    h.iterate_slice(a, depth, start, len as usize)
}
