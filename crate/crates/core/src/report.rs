//! Rational approximations `2^(k+1)/α_k` of π, their certified digit counts,
//! and the text/JSON/b-file renderings used by the command line.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{iv_sub, DyadicInterval};
use crate::pi::{certify_pi, insert_point, pi_digits};
use crate::sequences::{alpha_direct, build_table, SequenceTable, TableMode};
use crate::{bfile, Limits};

/// Digits rendered past the last correct one.
const CONTINUATION_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxReport {
    pub k: u64,
    /// `2^(k+1)`.
    pub numerator: BigInt,
    pub alpha: BigInt,
    pub gamma: u64,
    /// Leading decimal digits (integer digit included) shared with π.
    pub correct_decimal_digits: usize,
    /// Truncated decimal expansion of `2^(k+1)/α_k`, a few digits past the
    /// first one that differs from π.
    pub decimal_rendering: String,
    /// Enclosure of `2^(k+1)/α_k - π`; strictly positive.
    pub ratio_minus_pi_bound: DyadicInterval,
}

impl ApproxReport {
    /// The rendering up to and including the last correct digit.
    pub fn correct_prefix(&self) -> &str {
        &self.decimal_rendering[..char_index(self.correct_decimal_digits)]
    }

    /// The rendered digits after the correct prefix.
    pub fn continuation(&self) -> &str {
        &self.decimal_rendering[char_index(self.correct_decimal_digits)..]
    }
}

/// Byte offset after `digits` digits of a `"d.ddd"` string (the point is
/// counted with the integer digit).
fn char_index(digits: usize) -> usize {
    if digits == 0 {
        0
    } else {
        digits + 1
    }
}

/// First `n` digits of `num/den` (one integer digit assumed), truncated.
fn ratio_digits(num: &BigInt, den: &BigInt, n: usize) -> String {
    let scale: BigInt = BigInt::from(10u32).pow((n - 1) as u32);
    insert_point(&(num * scale).div_floor(den).to_string())
}

fn digits_only(s: &str) -> impl Iterator<Item = char> + '_ {
    s.chars().filter(|c| c.is_ascii_digit())
}

pub fn approx_report(k: u64, limits: &Limits) -> Result<ApproxReport> {
    let entry = alpha_direct(k, limits)?;
    let numerator = BigInt::one() << (k + 1);

    let mut n = 16usize;
    let correct = loop {
        let ratio = ratio_digits(&numerator, &entry.alpha, n);
        let pi = pi_digits(n, limits)?;
        if let Some(i) = digits_only(&ratio).zip(digits_only(&pi)).position(|(a, b)| a != b) {
            break i;
        }
        n *= 2;
    };

    let decimal_rendering = ratio_digits(&numerator, &entry.alpha, correct + 1 + CONTINUATION_DIGITS);
    let p = 64 + 4 * (correct as u64 + CONTINUATION_DIGITS as u64);
    let ratio = DyadicInterval::from_ratio(&numerator, &entry.alpha, p)?;
    let ratio_minus_pi_bound = iv_sub(&ratio, &certify_pi(p, limits)?.interval);

    Ok(ApproxReport {
        k,
        numerator,
        gamma: entry.gamma,
        alpha: entry.alpha,
        correct_decimal_digits: correct,
        decimal_rendering,
        ratio_minus_pi_bound,
    })
}

/// A maximal stretch of indices over which `α_{k+1} = 2α_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRun {
    pub k_start: u64,
    pub k_end: u64,
    /// `2^(k+1)/α_k` in lowest terms, shared by the whole run.
    pub numerator: BigInt,
    pub denominator: BigInt,
    /// Whether every ratio in the run reduced to the same fraction.
    pub invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioInvarianceReport {
    pub runs: Vec<RatioRun>,
    /// Last index of each run except the final one.
    pub boundaries: Vec<u64>,
    /// The indices in range with `⌊2β_k⌋ = 1`, excluding `k_hi`.
    pub odd_step_indices: Vec<u64>,
}

impl RatioInvarianceReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.invariant) && self.boundaries == self.odd_step_indices
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.runs {
            let _ = writeln!(
                out,
                "run k={}..={} ratio={}/{} {}",
                r.k_start,
                r.k_end,
                r.numerator,
                r.denominator,
                if r.invariant { "PASS" } else { "FAIL" }
            );
        }
        let _ = writeln!(out, "boundaries {:?}", self.boundaries);
        out
    }
}

fn reduced_ratio(k: u64, alpha: &BigInt) -> (BigInt, BigInt) {
    let num = BigInt::one() << (k + 1);
    let g = num.gcd(alpha);
    (num / &g, alpha / g)
}

/// Splits `k_lo..=k_hi` into maximal runs where `α` doubles and checks that
/// `2^(k+1)/α_k` is the same exact rational throughout each run.
pub fn ratio_invariance_check(k_lo: u64, k_hi: u64, limits: &Limits) -> Result<RatioInvarianceReport> {
    if k_lo == 0 || k_lo >= k_hi {
        return Err(Error::InvalidArgument(format!(
            "ratio range needs 1 ≤ k_lo < k_hi, got {k_lo}..{k_hi}"
        )));
    }
    let table = build_table(k_hi, TableMode::RecurrenceWithSpotChecks, limits)?;
    Ok(ratio_invariance_in(&table, k_lo, k_hi))
}

pub fn ratio_invariance_in(table: &SequenceTable, k_lo: u64, k_hi: u64) -> RatioInvarianceReport {
    let entry = |k: u64| table.get(k).expect("range within table");
    let mut runs = Vec::new();
    let mut boundaries = Vec::new();
    let mut start = k_lo;
    for k in k_lo..=k_hi {
        let ends_here = k == k_hi || entry(k + 1).alpha != (&entry(k).alpha << 1u32);
        if !ends_here {
            continue;
        }
        let (numerator, denominator) = reduced_ratio(start, &entry(start).alpha);
        let invariant = (start..=k).all(|j| reduced_ratio(j, &entry(j).alpha) == (numerator.clone(), denominator.clone()));
        runs.push(RatioRun {
            k_start: start,
            k_end: k,
            numerator,
            denominator,
            invariant,
        });
        if k != k_hi {
            boundaries.push(k);
        }
        start = k + 1;
    }
    let odd_step_indices = (k_lo..k_hi).filter(|&k| entry(k).twice_beta_floor == 1).collect();
    RatioInvarianceReport {
        runs,
        boundaries,
        odd_step_indices,
    }
}

/// `751587968840192313983` → `751,587,968,840,192,313,983`.
pub fn group_thousands(n: &BigInt) -> String {
    let s = n.to_string();
    let (sign, digits) = match s.strip_prefix('-') {
        Some(d) => ("-", d),
        None => ("", s.as_str()),
    };
    let mut out = String::from(sign);
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(c);
    }
    out
}

fn list(values: impl IntoIterator<Item = String>) -> String {
    let items: Vec<String> = values.into_iter().collect();
    format!("{{{}, ...}}", items.join(","))
}

/// The sequence listings for `k = 1..=10` and the two approximation blocks
/// for `k = 70..=74` and `k = 75..=77`.
pub fn paper_tables(limits: &Limits) -> Result<String> {
    let table = build_table(77, TableMode::RecurrenceWithSpotChecks, limits)?;
    let first = table.prefix(10);
    let mut out = String::new();

    let _ = writeln!(out, "{{k}}             = {}", list((1..=10).map(|k: u64| k.to_string())));
    let _ = writeln!(out, "{{alpha_k}}       = {}", list(first.alphas().iter().map(|a| a.to_string())));
    let _ = writeln!(out, "{{gamma_k}}       = {}", list(first.gammas().iter().map(|g| g.to_string())));
    let _ = writeln!(
        out,
        "{{alpha_gamma_k}} = {}",
        list(first.alpha_gammas().iter().map(|a| a.to_string()))
    );

    for (k_lo, k_hi, shown) in [(70u64, 74u64, 8usize), (75, 77, 7)] {
        out.push('\n');
        let previous = table.get(k_lo - 1).expect("k_lo > 1");
        let head = table.get(k_lo).expect("in table");
        if head.alpha == (&previous.alpha << 1u32) + 1u32 {
            let _ = writeln!(out, "alpha_{k_lo} = 2 alpha_{} + 1", k_lo - 1);
        }
        let gamma = head.gamma;
        for k in k_lo..=k_hi {
            let e = table.get(k).expect("in table");
            let factor = k - gamma;
            let relation = if factor == 0 {
                format!("alpha_gamma_{gamma}")
            } else {
                format!("{} alpha_gamma_{gamma}", 1u64 << factor)
            };
            let _ = writeln!(out, "alpha_{k} = {relation} = {}", group_thousands(&e.alpha));
        }

        let ratios: Vec<String> = (k_lo..=k_hi)
            .rev()
            .map(|k| format!("2^{}/alpha_{k}", k + 1))
            .chain(std::iter::once(format!("2^(gamma_{k_lo}+1)/alpha_gamma_{k_lo}")))
            .collect();
        let report = approx_report(k_lo, limits)?;
        let invariance = ratio_invariance_in(&table, k_lo, k_hi);
        if !invariance.passed() || invariance.runs.len() != 1 {
            return Err(Error::CertificateMismatch(format!(
                "ratios for k={k_lo}..={k_hi} are not a single invariant run"
            )));
        }
        let _ = writeln!(out, "{}", ratios.join(" = "));
        let _ = writeln!(
            out,
            "  = {} {}... ({} correct digits of pi)",
            report.correct_prefix(),
            &report.continuation()[..shown],
            report.correct_decimal_digits
        );
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJsonEntry {
    pub k: u64,
    /// Decimal string; values outgrow every fixed-width numeric type.
    pub alpha: String,
    pub gamma: u64,
    /// Lower bound on `β_k`, rounded down to [`BETA_JSON_DIGITS`] decimals.
    pub beta_lo: String,
    /// Upper bound on `β_k`, rounded up.
    pub beta_hi: String,
    pub odd: bool,
}

pub const BETA_JSON_DIGITS: usize = 24;

pub fn table_json_entries(table: &SequenceTable) -> Vec<TableJsonEntry> {
    table
        .entries()
        .iter()
        .map(|e| {
            let (beta_lo, beta_hi) = e.beta.to_decimal_bounds(BETA_JSON_DIGITS);
            TableJsonEntry {
                k: e.k,
                alpha: e.alpha.to_string(),
                gamma: e.gamma,
                beta_lo,
                beta_hi,
                odd: e.alpha_is_odd,
            }
        })
        .collect()
}

pub fn table_json(table: &SequenceTable) -> String {
    serde_json::to_string_pretty(&table_json_entries(table)).expect("plain data serializes")
}

/// Whitespace-separated `k alpha gamma parity` lines.
pub fn table_text(table: &SequenceTable) -> String {
    let mut out = String::new();
    for e in table.entries() {
        let parity = if e.alpha_is_odd { "odd" } else { "even" };
        let _ = writeln!(out, "{} {} {} {}", e.k, e.alpha, e.gamma, parity);
    }
    out
}

pub fn export_bfile(table: &SequenceTable, path: &Path) -> Result<()> {
    bfile::write_bfile(table.entries(), path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::cross_check_reference;
    use crate::Dyadic;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn approx_k70() {
        let r = approx_report(70, &limits()).unwrap();
        assert_eq!(r.correct_decimal_digits, 22);
        assert_eq!(r.correct_prefix(), "3.141592653589793238462");
        assert!(r.continuation().starts_with("80398052"), "{}", r.continuation());
        assert_eq!(r.numerator, BigInt::one() << 71u32);
        assert_eq!(r.gamma, 70);
        assert!(r.ratio_minus_pi_bound.lo() > Dyadic::zero());
    }

    #[test]
    fn approx_k75() {
        let r = approx_report(75, &limits()).unwrap();
        assert_eq!(r.correct_decimal_digits, 23);
        assert_eq!(r.correct_prefix(), "3.1415926535897932384626");
        assert!(r.continuation().starts_with("7335739"));
    }

    #[test]
    fn approx_k1() {
        let r = approx_report(1, &limits()).unwrap();
        assert_eq!(r.alpha, BigInt::one());
        assert_eq!(r.correct_decimal_digits, 0);
        assert!(r.decimal_rendering.starts_with("4.000"));
        assert_eq!(r.correct_prefix(), "");
    }

    #[test]
    fn rendering_differs_right_after_the_correct_prefix() {
        for k in [5u64, 20, 33, 64] {
            let r = approx_report(k, &limits()).unwrap();
            let pi = pi_digits(r.correct_decimal_digits + 1, &limits()).unwrap();
            let n = char_index(r.correct_decimal_digits);
            assert_eq!(&r.decimal_rendering[..n], &pi[..n], "k={k}");
            assert_ne!(&r.decimal_rendering[n..n + 1], &pi[n..n + 1], "k={k}");
        }
    }

    #[test]
    fn invariance_70_74() {
        let r = ratio_invariance_check(70, 74, &limits()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.runs.len(), 1);
        assert_eq!(r.runs[0].numerator, BigInt::one() << 71u32);
        assert_eq!(r.runs[0].denominator, "751587968840192313983".parse::<BigInt>().unwrap());
        assert!(r.boundaries.is_empty());
    }

    #[test]
    fn invariance_75_77() {
        let r = ratio_invariance_check(75, 77, &limits()).unwrap();
        assert!(r.passed());
        assert_eq!(r.runs.len(), 1);
        assert_eq!(r.runs[0].numerator, BigInt::one() << 76u32);
    }

    #[test]
    fn invariance_across_a_boundary() {
        // α_1..α_10 = 1,2,5,10,20,40,81,162,325,651: odd steps after k=2, 6, 8, 9
        let r = ratio_invariance_check(1, 10, &limits()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.boundaries, vec![2, 6, 8, 9]);
        // 8..=8 and 9..=9 are runs of length one
        assert!(r.runs.iter().any(|run| run.k_start == 9 && run.k_end == 9));
        assert!(ratio_invariance_check(5, 5, &limits()).is_err());
    }

    #[test]
    fn thousands_grouping() {
        assert_eq!(group_thousands(&"751587968840192313983".parse().unwrap()), "751,587,968,840,192,313,983");
        assert_eq!(group_thousands(&BigInt::from(999)), "999");
        assert_eq!(group_thousands(&BigInt::from(1000)), "1,000");
        assert_eq!(group_thousands(&BigInt::from(-1234567)), "-1,234,567");
    }

    #[test]
    fn paper_tables_contain_published_tokens() {
        let text = paper_tables(&limits()).unwrap();
        for token in [
            "{1,2,5,10,20,40,81,162,325,651, ...}",
            "{1,1,3,3,3,3,7,7,9,10, ...}",
            "{1,1,5,5,5,5,81,81,325,651, ...}",
            "751,587,968,840,192,313,983",
            "1,503,175,937,680,384,627,966",
            "3,006,351,875,360,769,255,932",
            "6,012,703,750,721,538,511,864",
            "12,025,407,501,443,077,023,728",
            "24,050,815,002,886,154,047,457",
            "48,101,630,005,772,308,094,914",
            "96,203,260,011,544,616,189,828",
            "3.141592653589793238462 80398052...",
            "3.1415926535897932384626 7335739...",
            "alpha_75 = 2 alpha_74 + 1",
            "(22 correct digits of pi)",
            "(23 correct digits of pi)",
        ] {
            assert!(text.contains(token), "missing {token:?} in\n{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let t = build_table(12, TableMode::DirectEveryK, &limits()).unwrap();
        let json = table_json(&t);
        let back: Vec<TableJsonEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table_json_entries(&t));
        assert_eq!(back[6].alpha, "81");
        assert!(back[6].odd);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(value[0]["alpha"].is_string());
        // decimal bounds are outward: lo·10^24 ≤ β.lo·10^24 and β.hi·10^24 ≤ hi·10^24
        let scaled = |s: &str| s.replace('.', "").parse::<BigInt>().unwrap();
        let pow10: BigInt = BigInt::from(10u32).pow(BETA_JSON_DIGITS as u32);
        for (json, e) in back.iter().zip(t.entries()) {
            let p = e.beta.precision();
            assert!((scaled(&json.beta_lo) << p) <= e.beta.lo_mantissa() * &pow10);
            assert!((scaled(&json.beta_hi) << p) >= e.beta.hi_mantissa() * &pow10);
        }
    }

    #[test]
    fn bfile_export_and_reimport() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alpha.txt");
        let t = build_table(3, TableMode::DirectEveryK, &limits()).unwrap();
        export_bfile(&t, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "1 1\n2 2\n3 5\n");

        let big = build_table(50, TableMode::RecurrenceWithSpotChecks, &limits()).unwrap();
        export_bfile(&big, &path).unwrap();
        let reference = bfile::read_bfile(&path).unwrap();
        assert!(cross_check_reference(&big, &reference).passed());

        export_bfile(&t.prefix(0), &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "");

        let err = export_bfile(&t, &dir.path().join("missing/alpha.txt")).unwrap_err();
        assert!(err.to_string().contains("missing/alpha.txt"));
    }
}
