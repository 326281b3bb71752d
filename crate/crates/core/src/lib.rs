//! Exact critical exponents of finite words, palindromes of minimal critical
//! exponent over every alphabet size, and brute-force certificates for the
//! finite claims behind them.
//!
//! ```
//! use critpal_core::{critical_exponent, minimal_palindrome, Word};
//!
//! let w = Word::parse("0110110", 2).unwrap();
//! assert_eq!(critical_exponent(&w).unwrap().value.to_string(), "7/3");
//!
//! let p = minimal_palindrome(3, 21).unwrap();
//! assert!(p.word.is_palindrome());
//! assert_eq!(p.critical_exponent.to_string(), "7/4");
//! ```

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod exponent;
pub mod morphism;
pub mod par;
pub mod repetitions;
pub mod verification;
pub mod word;

pub use catalog::{CatalogEntry, NAMES as CATALOG_NAMES};
pub use constructions::{
    central_window, construct, even_palindrome, minimal_palindrome, thue_morse_sandwich, trim, ConstructOptions,
    MinimalPalindromeResult, Provenance,
};
pub use error::{Error, ErrorKind, Result};
pub use exponent::{Exponent, Threshold};
pub use morphism::Morphism;
pub use par::Execution;
pub use repetitions::{
    critical_exponent, exponent, find_violation, is_alpha_free, is_alpha_plus_free, scan_powers, smallest_period,
    CexpReport, MatchMode, PowerOccurrence,
};
pub use verification::{
    enumerate_palindromes, min_cexp_over_palindromes, naive_cexp, verify_proposition, Certificate, VerifyOptions,
};
pub use word::{Letter, Word};
