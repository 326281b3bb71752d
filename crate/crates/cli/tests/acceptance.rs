//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails. All checks are exact.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use critpal_core::catalog;
use critpal_core::constructions::trim;
use critpal_core::repetitions::{critical_exponent, is_alpha_plus_free, scan_powers, MatchMode};
use critpal_core::{Certificate, Exponent, MinimalPalindromeResult, Word};

type Outcome = Result<(), String>;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("critpal").chain(args.iter().copied());
    let code = critpal::run(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn certificate(args: &[&str]) -> Result<Certificate, String> {
    let mut full = vec!["--format", "json", "verify"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    let cert: Certificate = serde_json::from_str(&out).map_err(|e| format!("{e}: {out}"))?;
    if code != 0 || !cert.passed {
        return Err(format!("exit {code}:\n{}", cert.to_text()));
    }
    Ok(cert)
}

fn e(s: &str) -> Exponent {
    s.parse().unwrap()
}

fn w(s: &str) -> Word {
    Word::parse_inferred(s).unwrap()
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    if took < limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn construct_sweep(k: usize, lengths: impl Iterator<Item = usize>, expected: Exponent, limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for len in lengths {
        let (code, out) = run(&["--format", "json", "construct", "-k", &k.to_string(), "--length", &len.to_string()]);
        check(code == 0, || format!("k={k} len={len}: exit {code}: {out}"))?;
        let r: MinimalPalindromeResult = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        check(r.word.len() == len && r.word.is_palindrome(), || format!("k={k} len={len}: not a palindrome of that length"))?;
        check(r.verified && r.critical_exponent == expected, || format!("k={k} len={len}: reported {}", r.critical_exponent))?;
        let recomputed = critical_exponent(&r.word).unwrap().value;
        check(recomputed == expected, || format!("k={k} len={len}: recomputed {recomputed}"))?;
        count += 1;
    }
    check(count > 0, || "empty sweep".into())?;
    within(start, limit)
}

fn c1_binary_seven() -> Outcome {
    let start = Instant::now();
    let cert = certificate(&["binary-7"])?;
    check(cert.search_space == 16, || format!("space {}", cert.search_space))?;
    check(cert.minimum == Some(e("7/3")), || format!("minimum {:?}", cert.minimum))?;
    check(cert.witnesses == [w("0110110"), w("1001001")], || format!("witnesses {:?}", cert.witnesses))?;
    within(start, Duration::from_secs(1))
}

fn c2_ternary_seventeen() -> Outcome {
    let start = Instant::now();
    let cert = certificate(&["--sequential", "ternary-17"])?;
    check(cert.search_space == 19683, || format!("space {}", cert.search_space))?;
    check(cert.minimum == Some(e("7/4")), || format!("minimum {:?}", cert.minimum))?;
    let base = w("01210120102101210");
    let perms: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut images: Vec<Word> = perms.iter().map(|p| base.recode(p).unwrap()).collect();
    images.sort();
    images.dedup();
    check(images.len() == 6, || "renamings not distinct".into())?;
    check(cert.witnesses == images, || format!("witnesses {:?}", cert.witnesses))?;
    within(start, Duration::from_secs(30))
}

fn c3_binary_sweep() -> Outcome {
    construct_sweep(2, (7..=2001).step_by(2), e("7/3"), Duration::from_secs(60))
}

fn c4_ternary_and_quaternary_sweeps() -> Outcome {
    construct_sweep(3, (17..=2001).step_by(2), e("7/4"), Duration::from_secs(60))?;
    construct_sweep(4, (3..=2001).step_by(2), e("3/2"), Duration::from_secs(60))
}

fn c5_even_sweep() -> Outcome {
    construct_sweep(2, (2..=1024).step_by(2), e("2"), Duration::from_secs(60))
}

fn c6_catalog_structure() -> Outcome {
    let start = Instant::now();
    let expect = [("f", 19, true), ("g", 19, true), ("h", 11, true), ("alpha", 31, true), ("mu", 2, false), ("g3", 6859, true)];
    for (name, k, pal) in expect {
        let m = catalog::morphism(name);
        check(m.is_uniform() == Some(k), || format!("{name}: uniform {:?}", m.is_uniform()))?;
        check(m.is_palindromic() == pal, || format!("{name}: palindromic {}", m.is_palindromic()))?;
    }
    within(start, Duration::from_secs(1))
}

fn c7_center_decompositions() -> Outcome {
    let cert = certificate(&["centers"])?;
    let x = |name: &str| catalog::morphism(name).center_decomposition(0).map(|w| w.render());
    check(x("f").as_deref() == Some("110010110"), || format!("f: {:?}", x("f")))?;
    check(x("h").as_deref() == Some("21310"), || format!("h: {:?}", x("h")))?;
    check(x("alpha").as_deref() == Some("210201021201210"), || format!("alpha: {:?}", x("alpha")))?;
    check(x("g").is_none(), || "g has a center decomposition".into())?;
    check(x("g3").is_some(), || "g3 has no center decomposition".into())?;
    check(cert.witnesses.len() == 3, || format!("{:?}", cert.witnesses))
}

fn c8_prefix_freeness() -> Outcome {
    for (name, morphism, threshold) in [
        ("f-prefix-free", "f", "7/3"),
        ("g-prefix-free", "g", "7/4"),
        ("alpha-prefix-free", "alpha", "7/4"),
        ("h-prefix-free", "h", "3/2"),
        ("mu-prefix-free", "mu", "2"),
    ] {
        let start = Instant::now();
        let cert = certificate(&[name, "--prefix", "100000"])?;
        check(cert.search_space == 100_000, || format!("{name}: space {}", cert.search_space))?;
        within(start, Duration::from_secs(30))?;
        // same claim straight through the library
        let start = Instant::now();
        let prefix = catalog::morphism(morphism).fixed_point_prefix(0, 100_000).unwrap();
        check(is_alpha_plus_free(&prefix, e(threshold)).unwrap(), || format!("{morphism}: library check failed"))?;
        within(start, Duration::from_secs(30))?;
    }
    Ok(())
}

fn c9_thue_morse_sandwich() -> Outcome {
    let start = Instant::now();
    let cert = certificate(&["tm-sandwich", "--prefix", "4"])?;
    check(cert.witnesses == [w("1001001")], || format!("{:?}", cert.witnesses))?;
    check(cert.notes.iter().filter(|n| n.contains("1 maximal 7/3-power(s)")).count() == 4, || format!("{:?}", cert.notes))?;
    within(start, Duration::from_secs(5))
}

fn c10_power_lengths() -> Outcome {
    let start = Instant::now();
    certificate(&["h-power-lengths"])?;
    let prefix = catalog::morphism("h").fixed_point_prefix(0, 14_641).unwrap();
    let occurrences = scan_powers(&prefix, e("3/2"), MatchMode::Exactly).unwrap();
    check(!occurrences.is_empty(), || "no 3/2-powers found".into())?;
    let in_family = |len: usize| {
        let mut scale = 1;
        while scale * 3 <= len {
            if len.is_multiple_of(scale) && matches!(len / scale, 3 | 6 | 9 | 12) {
                return true;
            }
            scale *= 11;
        }
        false
    };
    for occ in &occurrences {
        check(in_family(occ.length), || format!("length {} at {}", occ.length, occ.start))?;
    }
    within(start, Duration::from_secs(10))
}

fn c11_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cert = certificate(&["oracle-equivalence"])?;
    check(cert.search_space == 1000, || format!("space {}", cert.search_space))?;
    check(cert.witnesses.is_empty(), || format!("mismatches {:?}", cert.witnesses))?;
    within(start, Duration::from_secs(10))
}

fn c12_property_suite() -> Outcome {
    certificate(&["lemma-palindromic"])?;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let perms: [[u8; 4]; 4] = [[1, 0, 2, 3], [2, 3, 0, 1], [3, 2, 1, 0], [1, 2, 3, 0]];
    for round in 0..500 {
        let k = [2u8, 3, 4][round % 3];
        let len = rng.gen_range(1..=100);
        let word = Word::new((0..len).map(|_| rng.gen_range(0..k)).collect(), k as usize).unwrap();
        let c = critical_exponent(&word).unwrap().value;
        check(critical_exponent(&word.reverse()).unwrap().value == c, || format!("reversal changed cexp of {word}"))?;
        for p in &perms {
            let coded = word.recode(p).unwrap();
            check(critical_exponent(&coded).unwrap().value == c, || format!("coding changed cexp of {word}"))?;
        }
    }
    for name in ["f", "g", "h", "alpha"] {
        let base = catalog::morphism(name).iterate(&[0], 2).unwrap();
        let mut prev = critical_exponent(&base).unwrap().value;
        for t in (1..base.len() / 2).step_by(5) {
            let c = critical_exponent(&trim(&base, t).unwrap()).unwrap().value;
            check(c <= prev, || format!("{name}: trimming {t} raised cexp to {c}"))?;
            prev = c;
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("binary length-7 palindromes: minimum 7/3, witnesses 0110110 and 1001001", c1_binary_seven),
        ("ternary length-17 palindromes: minimum 7/4, six renamings", c2_ternary_seventeen),
        ("binary odd lengths 7..=2001: critical exponent 7/3", c3_binary_sweep),
        ("ternary odd 17..=2001 at 7/4, quaternary odd 3..=2001 at 3/2", c4_ternary_and_quaternary_sweeps),
        ("binary even lengths 2..=1024: critical exponent 2", c5_even_sweep),
        ("catalog uniformity and palindromicity", c6_catalog_structure),
        ("center decompositions of f, h, alpha, g, g3", c7_center_decompositions),
        ("10^5-letter fixed-point prefixes avoid their powers", c8_prefix_freeness),
        ("Thue-Morse sandwiches n=1..4: single centered 7/3-power", c9_thue_morse_sandwich),
        ("maximal 3/2-powers of h have lengths {3,6,9,12}*11^i", c10_power_lengths),
        ("fast critical exponent equals naive oracle on 1000 words", c11_oracle_equivalence),
        ("property suite: lemma, reversal, trimming, codings", c12_property_suite),
    ];
    let mut stdout = std::io::stdout();
    let mut failed = Vec::new();
    for (i, (desc, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let _ = writeln!(stdout, "{status} [{:>2}] {desc} ({:.2?})", i + 1, start.elapsed());
        if let Err(msg) = outcome {
            let _ = writeln!(stdout, "       {msg}");
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
