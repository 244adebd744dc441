//! Pruning functions on binary case indices.
//!
//! A case is a nonnegative integer read as an `n`-digit binary string
//! (bit positions numbered from 0 at the right). The pruning function
//! `P_l` takes the binary representation of `m >= 1`, zeroes out
//! everything strictly to the right of the `l`-th zero from the right
//! (the representation is conceptually padded with zeros to the left,
//! so that zero always exists), and then subtracts one, clamping at 0.
//!
//! Two independent implementations exist: the bitwise one here, and a
//! string-based reference that lives in the test suites and serves as
//! the oracle for this one.

use crate::error::Error;

/// Widest supported case index; keeps every value and sweep inside u64.
pub const MAX_WIDTH: u8 = 62;

/// Largest digit count accepted by [`verify_prefix_lemmas`].
pub const MAX_PREFIX_SWEEP_DIGITS: u32 = 24;

/// A sign case: an unsigned value together with the bit width `n` of the
/// enumeration it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseIndex {
    value: u64,
    width: u8,
}

impl CaseIndex {
    /// Build a case index, checking `1 <= width <= 62` and `value < 2^width`.
    pub fn new(value: u64, width: u8) -> Result<Self, Error> {
        if !(1..=MAX_WIDTH).contains(&width) {
            return Err(Error::WidthOutOfRange {
                width,
                max: MAX_WIDTH,
            });
        }
        if value >> width != 0 {
            return Err(Error::ValueTooWide { value, width });
        }
        Ok(CaseIndex { value, width })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> u8 {
        self.width
    }

    /// The zero-padded `width`-digit binary string of the value.
    pub fn bits(self) -> String {
        format!("{:0>1$b}", self.value, self.width as usize)
    }
}

/// The level `l >= 1` of a pruning function `P_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PruneLevel(u32);

impl PruneLevel {
    pub const ONE: PruneLevel = PruneLevel(1);
    pub const TWO: PruneLevel = PruneLevel(2);

    pub fn new(level: u32) -> Result<Self, Error> {
        if level < 1 {
            return Err(Error::LevelTooSmall);
        }
        Ok(PruneLevel(level))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for PruneLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bit position of the `level`-th zero of `value`, counting zeros upward
/// from bit 0 and treating all bits above the top set bit as zeros.
///
/// Positions at or above 64 refer to the conceptual left padding.
pub fn nth_zero_from_right(value: u64, level: PruneLevel) -> u32 {
    let level = level.get();
    let low_zeros = (!value).count_ones();
    if level > low_zeros {
        // The first `low_zeros` zeros sit below bit 64; the rest are padding.
        return 64 + (level - low_zeros - 1);
    }
    let mut zeros = !value;
    for _ in 1..level {
        zeros &= zeros - 1;
    }
    zeros.trailing_zeros()
}

/// Bitwise core of the pruning function on a raw value.
///
/// Callers must pass `value >= 1`; the checked public entry point is
/// [`prune`].
pub(crate) fn prune_value(value: u64, level: PruneLevel) -> u64 {
    debug_assert!(value >= 1);
    let z = nth_zero_from_right(value, level);
    if z >= 64 {
        // Everything below the padding zero is cleared, nothing remains.
        return 0;
    }
    let kept = value & !((1u64 << z) - 1);
    kept.saturating_sub(1)
}

/// The pruning function `P_l(m)` for `m >= 1`.
///
/// The result keeps the width of `m` (it is always strictly smaller).
pub fn prune(m: CaseIndex, ell: PruneLevel) -> Result<CaseIndex, Error> {
    if m.value == 0 {
        return Err(Error::ZeroCase);
    }
    let value = prune_value(m.value, ell);
    debug_assert!(value < m.value);
    Ok(CaseIndex {
        value,
        width: m.width,
    })
}

/// True iff the `k`-digit zero-padded binary representation of `m`
/// starts with `prefix`.
pub fn has_prefix(m: u64, k: u32, prefix: &str) -> Result<bool, Error> {
    if !prefix.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::MalformedPrefix);
    }
    if prefix.len() as u32 > k {
        return Err(Error::PrefixTooLong { k });
    }
    if k < 64 && m >> k != 0 {
        return Err(Error::ValueTooWide {
            value: m,
            width: k as u8,
        });
    }
    // Compare the prefix digits against the top digits of the k-digit string.
    for (i, b) in prefix.bytes().enumerate() {
        let pos = k - 1 - i as u32;
        let bit = if pos >= 64 { 0 } else { (m >> pos) & 1 };
        if bit != u64::from(b - b'0') {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The four binary-prefix facts checked by [`verify_prefix_lemmas`], named
/// by the prefix they claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrefixLemma {
    /// `k >= 1` digits, `2^(k-1) <= m < 2^k` starts with "1".
    LeadingOne,
    /// `k >= 2` digits, `2^(k-1) <= m <= 2^k - 2^(k-2) - 1` starts with "10".
    LeadingOneZero,
    /// `k >= 3` digits, `2^k - 2^(k-2) - 2^(k-3) <= m <= 2^k - 2^(k-2) - 1`
    /// starts with "101".
    LeadingOneZeroOne,
    /// `k >= 3` digits, `2^(k-1) <= m <= 2^k - 2^(k-2) - 2^(k-3) - 1`
    /// starts with "100".
    LeadingOneZeroZero,
}

impl PrefixLemma {
    pub const ALL: [PrefixLemma; 4] = [
        PrefixLemma::LeadingOne,
        PrefixLemma::LeadingOneZero,
        PrefixLemma::LeadingOneZeroOne,
        PrefixLemma::LeadingOneZeroZero,
    ];

    /// The claimed prefix.
    pub fn prefix(self) -> &'static str {
        match self {
            PrefixLemma::LeadingOne => "1",
            PrefixLemma::LeadingOneZero => "10",
            PrefixLemma::LeadingOneZeroOne => "101",
            PrefixLemma::LeadingOneZeroZero => "100",
        }
    }

    /// Smallest digit count the claim is stated for.
    pub fn min_k(self) -> u32 {
        match self {
            PrefixLemma::LeadingOne => 1,
            PrefixLemma::LeadingOneZero => 2,
            PrefixLemma::LeadingOneZeroOne | PrefixLemma::LeadingOneZeroZero => 3,
        }
    }

    /// Inclusive value interval the claim covers at digit count `k`.
    ///
    /// Requires `k >= self.min_k()`.
    pub fn interval(self, k: u32) -> (u64, u64) {
        assert!(k >= self.min_k(), "interval undefined below min_k");
        let p = |e: u32| 1u64 << e;
        match self {
            PrefixLemma::LeadingOne => (p(k - 1), p(k) - 1),
            PrefixLemma::LeadingOneZero => (p(k - 1), p(k) - p(k - 2) - 1),
            PrefixLemma::LeadingOneZeroOne => {
                (p(k) - p(k - 2) - p(k - 3), p(k) - p(k - 2) - 1)
            }
            PrefixLemma::LeadingOneZeroZero => (p(k - 1), p(k) - p(k - 2) - p(k - 3) - 1),
        }
    }
}

impl std::fmt::Display for PrefixLemma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "leading-{}", self.prefix())
    }
}

/// Result of sweeping one prefix claim over every digit count up to `k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: PrefixLemma,
    /// Number of `(k, m)` pairs checked; zero means the range was empty.
    pub cases_checked: u64,
    /// First failing `(k, m)` pair, if any.
    pub counterexample: Option<(u32, u64)>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Report for [`verify_prefix_lemmas`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixLemmaReport {
    pub k_max: u32,
    pub checks: Vec<LemmaCheck>,
}

impl PrefixLemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(LemmaCheck::passed)
    }
}

/// Exhaustively check the four prefix claims for every digit count up to
/// `k_max` (capped at [`MAX_PREFIX_SWEEP_DIGITS`]).
pub fn verify_prefix_lemmas(k_max: u32) -> Result<PrefixLemmaReport, Error> {
    if k_max > MAX_PREFIX_SWEEP_DIGITS {
        return Err(Error::DigitBudget {
            k: k_max,
            max: MAX_PREFIX_SWEEP_DIGITS,
        });
    }
    let mut checks = Vec::with_capacity(PrefixLemma::ALL.len());
    for lemma in PrefixLemma::ALL {
        let mut cases_checked = 0u64;
        let mut counterexample = None;
        'sweep: for k in lemma.min_k()..=k_max {
            let (lo, hi) = lemma.interval(k);
            for m in lo..=hi {
                cases_checked += 1;
                if !has_prefix(m, k, lemma.prefix())? {
                    counterexample = Some((k, m));
                    break 'sweep;
                }
            }
        }
        checks.push(LemmaCheck {
            lemma,
            cases_checked,
            counterexample,
        });
    }
    Ok(PrefixLemmaReport { k_max, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn case(value: u64, width: u8) -> CaseIndex {
        CaseIndex::new(value, width).unwrap()
    }

    /// String-based reading of the pruning definition, used as the oracle
    /// for the bitwise implementation: build the padded digit string, find
    /// the l-th zero from the right, clear everything to its right, parse,
    /// subtract one, clamp at zero.
    fn prune_reference(value: u64, level: u32) -> u64 {
        assert!(value >= 1 && level >= 1);
        let width = 64 - value.leading_zeros() as usize + level as usize;
        let mut digits: Vec<u8> = format!("{value:0>width$b}").into_bytes();
        let mut seen = 0;
        let mut pos = None;
        for i in (0..digits.len()).rev() {
            if digits[i] == b'0' {
                seen += 1;
                if seen == level {
                    pos = Some(i);
                    break;
                }
            }
        }
        let i = pos.expect("padding provides enough zeros");
        for d in &mut digits[i + 1..] {
            *d = b'0';
        }
        let rewritten = u64::from_str_radix(std::str::from_utf8(&digits).unwrap(), 2).unwrap();
        rewritten.saturating_sub(1)
    }

    #[test]
    fn prune_worked_examples() {
        assert_eq!(prune(case(23, 5), PruneLevel::ONE).unwrap().value(), 15);
        assert_eq!(prune(case(23, 5), PruneLevel::TWO).unwrap().value(), 0);
        assert_eq!(prune(case(6, 3), PruneLevel::ONE).unwrap().value(), 5);
        assert_eq!(prune(case(4, 3), PruneLevel::TWO).unwrap().value(), 3);
        assert_eq!(
            prune(case(5, 3), PruneLevel::new(3).unwrap()).unwrap().value(),
            0
        );
    }

    #[test]
    fn prune_all_ones_collapses_to_zero() {
        for k in 1..=24u8 {
            let top = (1u64 << k) - 1;
            for level in 1..=4u32 {
                let got = prune(case(top, k.max(2)), PruneLevel::new(level).unwrap()).unwrap();
                assert_eq!(got.value(), 0, "k={k} level={level}");
            }
        }
    }

    #[test]
    fn prune_rejects_zero_and_level_zero() {
        assert_eq!(
            prune(case(0, 3), PruneLevel::ONE).unwrap_err(),
            Error::ZeroCase
        );
        assert_eq!(PruneLevel::new(0).unwrap_err(), Error::LevelTooSmall);
    }

    #[test]
    fn case_index_validation() {
        assert!(CaseIndex::new(7, 3).is_ok());
        assert_eq!(
            CaseIndex::new(8, 3).unwrap_err(),
            Error::ValueTooWide { value: 8, width: 3 }
        );
        assert!(matches!(
            CaseIndex::new(1, 0).unwrap_err(),
            Error::WidthOutOfRange { .. }
        ));
        assert!(matches!(
            CaseIndex::new(1, 63).unwrap_err(),
            Error::WidthOutOfRange { .. }
        ));
        assert_eq!(case(5, 5).bits(), "00101");
    }

    #[test]
    fn bitwise_matches_string_reference_exhaustively() {
        for level in 1..=3u32 {
            let ell = PruneLevel::new(level).unwrap();
            for m in 1..(1u64 << 16) {
                assert_eq!(
                    prune_value(m, ell),
                    prune_reference(m, level),
                    "m={m} level={level}"
                );
            }
        }
    }

    #[test]
    fn strict_decrease_and_level_monotonicity() {
        let levels: Vec<PruneLevel> = (1..=3).map(|l| PruneLevel::new(l).unwrap()).collect();
        for m in 1..(1u64 << 24) {
            let mut prev = None;
            for &ell in &levels {
                let p = prune_value(m, ell);
                assert!(p < m, "strict decrease failed at m={m} level={ell}");
                if let Some(prev) = prev {
                    assert!(p <= prev, "level monotonicity failed at m={m} level={ell}");
                }
                prev = Some(p);
            }
        }
    }

    #[test]
    fn nth_zero_positions() {
        // 23 = 10111: zeros at positions 3, 5, 6, ...
        assert_eq!(nth_zero_from_right(23, PruneLevel::ONE), 3);
        assert_eq!(nth_zero_from_right(23, PruneLevel::TWO), 5);
        assert_eq!(nth_zero_from_right(23, PruneLevel::new(3).unwrap()), 6);
        // All 64 low bits set: every zero is padding.
        assert_eq!(nth_zero_from_right(u64::MAX, PruneLevel::ONE), 64);
        assert_eq!(nth_zero_from_right(u64::MAX, PruneLevel::new(5).unwrap()), 68);
    }

    #[test]
    fn has_prefix_worked_examples() {
        assert!(has_prefix(8, 4, "100").unwrap());
        assert!(has_prefix(10, 4, "101").unwrap());
        assert!(has_prefix(0, 4, "0").unwrap());
        assert!(!has_prefix(8, 4, "101").unwrap());
    }

    #[test]
    fn has_prefix_domain_errors() {
        assert_eq!(
            has_prefix(16, 4, "1").unwrap_err(),
            Error::ValueTooWide {
                value: 16,
                width: 4
            }
        );
        assert_eq!(
            has_prefix(3, 2, "101").unwrap_err(),
            Error::PrefixTooLong { k: 2 }
        );
        assert_eq!(has_prefix(3, 4, "1x").unwrap_err(), Error::MalformedPrefix);
    }

    #[test]
    fn has_prefix_agrees_with_string_formatting() {
        for k in 1..=12u32 {
            for m in 0..(1u64 << k) {
                let s = format!("{m:0>width$b}", width = k as usize);
                // Every prefix of the true string, plus the same strings with
                // the last digit flipped, exercises both verdicts.
                for len in 1..=k as usize {
                    let p = &s[..len];
                    assert!(has_prefix(m, k, p).unwrap(), "m={m} k={k} p={p}");
                    let mut flipped = p.to_string().into_bytes();
                    let last = flipped.len() - 1;
                    flipped[last] ^= 1;
                    let q = String::from_utf8(flipped).unwrap();
                    assert_eq!(
                        has_prefix(m, k, &q).unwrap(),
                        s.starts_with(&q),
                        "m={m} k={k} q={q}"
                    );
                }
            }
        }
    }

    #[test]
    fn prefix_lemmas_small_and_full_sweeps() {
        let report = verify_prefix_lemmas(4).unwrap();
        assert!(report.all_passed());
        assert_eq!(
            PrefixLemma::LeadingOneZero.interval(4),
            (8, 11),
            "the k=4 interval for the \"10\" claim is exactly 8..=11"
        );

        let report = verify_prefix_lemmas(16).unwrap();
        assert!(report.all_passed());

        // Below their minimum digit counts the other claims are vacuous.
        let report = verify_prefix_lemmas(1).unwrap();
        assert!(report.all_passed());
        for check in &report.checks {
            match check.lemma {
                PrefixLemma::LeadingOne => assert_eq!(check.cases_checked, 1),
                _ => assert_eq!(check.cases_checked, 0),
            }
        }
    }

    #[test]
    fn prefix_lemma_budget() {
        assert_eq!(
            verify_prefix_lemmas(25).unwrap_err(),
            Error::DigitBudget { k: 25, max: 24 }
        );
    }

    proptest! {
        /// The bitwise prune agrees with the string reference on values and
        /// levels well beyond the exhaustive window.
        #[test]
        fn prune_matches_reference(value in 1u64..(1 << 62), level in 1u32..70) {
            let ell = PruneLevel::new(level).unwrap();
            prop_assert_eq!(prune_value(value, ell), prune_reference(value, level));
        }

        #[test]
        fn prune_is_strictly_decreasing(value in 1u64..(1 << 62), level in 1u32..70) {
            let ell = PruneLevel::new(level).unwrap();
            prop_assert!(prune_value(value, ell) < value);
        }
    }
}
