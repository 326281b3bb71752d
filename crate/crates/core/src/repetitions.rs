//! Periodicity kernel: smallest periods, exponents, critical exponents and
//! power scanning.
//!
//! [`critical_exponent`] runs a failure-function pass over every suffix, which
//! yields the smallest period of every factor in `O(n^2)` total. Freeness
//! tests and [`scan_powers`] instead walk periods: for a fixed period `q` a
//! factor with period `q` is a run of positions `i` with `w[i] == w[i + q]`,
//! and a run long enough to matter must cover a sampled position, so only
//! every `m`-th position is probed before extending.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{Exponent, Threshold};
use crate::par::{self, Execution};
use crate::word::Letter;

/// A repetition witness: the factor `w[start..start + length]` has period `period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerOccurrence {
    pub start: usize,
    pub length: usize,
    pub period: usize,
    pub exponent: Exponent,
}

impl PowerOccurrence {
    pub(crate) fn new(start: usize, length: usize, period: usize) -> Self {
        PowerOccurrence { start, length, period, exponent: Exponent::ratio(length, period) }
    }

    pub fn end(&self) -> usize {
        self.start + self.length
    }

    pub fn factor<'a>(&self, w: &'a [Letter]) -> &'a [Letter] {
        &w[self.start..self.end()]
    }
}

/// Critical exponent of a word together with a factor attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CexpReport {
    pub value: Exponent,
    pub witness: PowerOccurrence,
}

/// Which exponents [`scan_powers`] reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    AtLeast,
    Exactly,
}

/// `border[i]` is the length of the longest proper border of `s[..=i]`.
pub fn border_array(s: &[Letter]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    fill_borders(s, &mut border);
    border
}

fn fill_borders(s: &[Letter], border: &mut [usize]) {
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        border[i] = if s[i] == s[b] { b + 1 } else { 0 };
    }
}

pub fn smallest_period(w: &[Letter]) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(w.len() - border_array(w)[w.len() - 1])
}

/// `|w| / smallest_period(w)` in lowest terms.
pub fn exponent(w: &[Letter]) -> Result<Exponent> {
    Ok(Exponent::ratio(w.len(), smallest_period(w)?))
}

pub fn critical_exponent(w: &[Letter]) -> Result<CexpReport> {
    critical_exponent_with(w, Execution::default())
}

/// Like [`critical_exponent`] with an explicit execution strategy.
///
/// Among factors of maximal exponent the witness has the smallest start,
/// then the smallest period.
pub fn critical_exponent_with(w: &[Letter], exec: Execution) -> Result<CexpReport> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let best = par::map_reduce(
        exec,
        0..w.len(),
        None,
        |start| Some(best_from(w, start)),
        |a, b| match (a, b) {
            (Some(a), Some(b)) => Some(if beats(&b, &a) { b } else { a }),
            (a, None) => a,
            (None, b) => b,
        },
    );
    let witness = best.expect("nonempty word has a factor");
    Ok(CexpReport { value: witness.exponent, witness })
}

/// Strict preference order used by the witness tie-break.
fn beats(x: &PowerOccurrence, y: &PowerOccurrence) -> bool {
    x.exponent
        .cmp(&y.exponent)
        .then(y.start.cmp(&x.start))
        .then(y.period.cmp(&x.period))
        .is_gt()
}

/// Best factor starting at `start`, via the failure function of the suffix.
fn best_from(w: &[Letter], start: usize) -> PowerOccurrence {
    let s = &w[start..];
    let mut border = vec![0usize; s.len()];
    fill_borders(s, &mut border);
    let (mut best_len, mut best_per) = (1usize, 1usize);
    for (i, &b) in border.iter().enumerate().skip(1) {
        let len = i + 1;
        let per = len - b;
        // len/per > best_len/best_per; equal exponents keep the shorter period
        if (len as u128) * (best_per as u128) > (best_len as u128) * (per as u128) {
            best_len = len;
            best_per = per;
        }
    }
    PowerOccurrence::new(start, best_len, best_per)
}

fn trivial_violation(threshold: &Threshold) -> bool {
    // every single letter is a 1-power
    threshold.is_violated_by(Exponent::ONE)
}

/// Visits, left to right, every maximal run of positions `i` with
/// `w[i] == w[i + q]` spanning at least `min_matches` positions, as `(lo, hi)`
/// with the factor being `w[lo..hi + q]`. Stops when `visit` returns false.
fn runs_with_period(w: &[Letter], q: usize, min_matches: usize, mut visit: impl FnMut(usize, usize) -> bool) {
    debug_assert!(min_matches > 0);
    let n = w.len();
    if q >= n {
        return;
    }
    let positions = n - q;
    let mut probe = min_matches - 1;
    while probe < positions {
        if w[probe] != w[probe + q] {
            probe += min_matches;
            continue;
        }
        let mut lo = probe;
        while lo > 0 && w[lo - 1] == w[lo - 1 + q] {
            lo -= 1;
        }
        let mut hi = probe + 1;
        while hi < positions && w[hi] == w[hi + q] {
            hi += 1;
        }
        if hi - lo >= min_matches && !visit(lo, hi) {
            return;
        }
        // hi is a mismatch (or the end); the next run starts after it
        let next = hi + 1;
        let aligned = next + (min_matches - 1) - next % min_matches;
        probe = aligned.max(probe + min_matches);
    }
}

/// Minimum number of matches `w[i] == w[i + q]` a violating factor of period `q` needs,
/// or `None` if no factor of `w` with period `q` can violate.
fn min_matches(threshold: &Threshold, q: usize, n: usize) -> Option<usize> {
    let len = threshold.min_violating_len(q);
    (len <= n as u128).then(|| len as usize - q)
}

/// First violating factor, searching periods in increasing order.
///
/// The returned occurrence is a maximal run whose period is its smallest period.
pub fn find_violation(w: &[Letter], threshold: Threshold) -> Result<Option<PowerOccurrence>> {
    find_violation_with(w, threshold, Execution::default())
}

pub fn find_violation_with(w: &[Letter], threshold: Threshold, exec: Execution) -> Result<Option<PowerOccurrence>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if trivial_violation(&threshold) {
        return Ok(Some(PowerOccurrence::new(0, 1, 1)));
    }
    let n = w.len();
    Ok(par::find_map_first(exec, 1..n, |q| {
        let need = min_matches(&threshold, q, n)?;
        let mut found = None;
        runs_with_period(w, q, need, |lo, hi| {
            found = Some(PowerOccurrence::new(lo, hi - lo + q, q));
            false
        });
        found
    }))
}

pub fn is_free(w: &[Letter], threshold: Threshold) -> Result<bool> {
    Ok(find_violation(w, threshold)?.is_none())
}

/// True iff `w` has no factor of exponent `>= alpha`.
pub fn is_alpha_free(w: &[Letter], alpha: Exponent) -> Result<bool> {
    is_free(w, Threshold::at_least(alpha))
}

/// True iff `w` has no factor of exponent `> alpha`.
pub fn is_alpha_plus_free(w: &[Letter], alpha: Exponent) -> Result<bool> {
    is_free(w, Threshold::above(alpha))
}

pub fn scan_powers(w: &[Letter], alpha: Exponent, mode: MatchMode) -> Result<Vec<PowerOccurrence>> {
    scan_powers_with(w, alpha, mode, Execution::default())
}

/// Every maximal occurrence of a power of exponent `>= alpha` (or `== alpha`)
/// whose length exceeds its period.
///
/// An occurrence is reported with its smallest period `q` and is maximal:
/// extending it by one letter on either side breaks period `q`. Results are
/// sorted by start, then length.
pub fn scan_powers_with(w: &[Letter], alpha: Exponent, mode: MatchMode, exec: Execution) -> Result<Vec<PowerOccurrence>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let threshold = Threshold::at_least(alpha);
    let keep = |occ: &PowerOccurrence| match mode {
        MatchMode::AtLeast => occ.exponent >= alpha,
        MatchMode::Exactly => occ.exponent == alpha,
    };
    let mut found: Vec<PowerOccurrence> = par::map_collect(exec, 1..n, |q| {
        let mut out = Vec::new();
        // only proper repetitions (length > period) are reported
        let Some(need) = min_matches(&threshold, q, n).map(|m| m.max(1)) else {
            return out;
        };
        runs_with_period(w, q, need, |lo, hi| {
            let occ = PowerOccurrence::new(lo, hi - lo + q, q);
            if keep(&occ) && smallest_period(occ.factor(w)).ok() == Some(q) {
                out.push(occ);
            }
            true
        });
        out
    })
    .into_iter()
    .flatten()
    .collect();
    found.sort_by_key(|o| (o.start, o.length));
    Ok(found)
}
