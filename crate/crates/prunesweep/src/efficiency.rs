//! The prune-driven case sweep and its efficiency accounting.
//!
//! The sweep starts at case `2^n - 1` and walks downward: a case with a
//! solution is followed by its predecessor, a case without one is followed
//! by its pruned image. The counting form records `(R, C)`: how many checked
//! cases were in the solution set, and how many cases were checked at all.
//! A set is *valid* when the sweep finds every member (`R = |S|`).
//!
//! Exhaustive enumeration over all subsets (capped at small widths) is the
//! independent oracle for the worst-case ratio bounds established by the
//! graph reduction in [`crate::prunegraph`].

use crate::bitcase::{prune_value, CaseIndex, PruneLevel, MAX_WIDTH};
use crate::error::Error;

/// Largest width accepted by the exhaustive subset sweeps; `n = 5` would
/// already mean `2^31` subsets.
pub const MAX_EXHAUSTIVE_WIDTH: u8 = 4;

/// Largest width for which a solution set can be materialized (the dense
/// membership bitmask for width `n` takes `2^n` bits).
pub const MAX_SET_WIDTH: u8 = 24;

/// A nonempty set of cases with solutions, drawn from `{1, ..., 2^n - 1}`.
///
/// Stored as a dense bitmask over the case values so membership is O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    n: u8,
    words: Vec<u64>,
    len: u64,
}

impl SolutionSet {
    pub fn new(n: u8, members: impl IntoIterator<Item = u64>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::WidthTooSmall { width: n, min: 2 });
        }
        if n > MAX_SET_WIDTH {
            return Err(Error::WidthOutOfRange {
                width: n,
                max: MAX_SET_WIDTH,
            });
        }
        let universe = 1u64 << n;
        let mut words = vec![0u64; (universe as usize).div_ceil(64)];
        let mut len = 0u64;
        for v in members {
            if v == 0 || v >= universe {
                return Err(Error::MemberOutOfRange { value: v, n });
            }
            let (w, b) = ((v / 64) as usize, v % 64);
            if words[w] >> b & 1 == 0 {
                words[w] |= 1 << b;
                len += 1;
            }
        }
        if len == 0 {
            return Err(Error::EmptySolutionSet);
        }
        Ok(SolutionSet { n, words, len })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// `|S|`.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn contains(&self, v: u64) -> bool {
        if v >= 1u64 << self.n {
            return false;
        }
        self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }
}

impl std::fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of one counting run: the pair `(R, C)` plus the checked cases in
/// order and, for each, whether it was in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// `R`: cases checked that were in the set.
    pub required: u64,
    /// `C`: total cases checked.
    pub checked: u64,
    /// Every case that entered the loop body, in check order.
    pub trace: Vec<CaseIndex>,
    /// Per trace entry: was the case in the set.
    pub hits: Vec<bool>,
}

impl RunOutcome {
    /// Width of the enumeration this run walked over.
    pub fn width(&self) -> u8 {
        debug_assert!(!self.trace.is_empty());
        self.trace[0].width()
    }

    /// The exact ratio `C / R`; `None` when nothing was found.
    pub fn ratio(&self) -> Option<Ratio> {
        (self.required > 0).then(|| Ratio::new(self.checked, self.required))
    }
}

/// A `(R, C)` pair rewritten against a candidate ratio `f` as
/// `C = f * R + p`; `p` is the par number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParNumber {
    pub f: u64,
    pub p: i64,
}

/// Par number of an outcome at candidate ratio `f >= 1`: `p = C - f * R`.
pub fn par_number(outcome: &RunOutcome, f: u64) -> Result<ParNumber, Error> {
    if f < 1 {
        return Err(Error::ParRatioTooSmall);
    }
    let p = outcome.checked as i128 - f as i128 * outcome.required as i128;
    let p = i64::try_from(p).map_err(|_| Error::Overflow { what: "par number" })?;
    Ok(ParNumber { f, p })
}

/// An exact nonnegative rational, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    /// Reduced `num / den`; panics when `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    /// True iff the ratio equals the integer `v`.
    pub fn is_integer(self, v: u64) -> bool {
        self.den == 1 && self.num == v
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Cross-multiplication in u128 cannot overflow for u64 operands.
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Failure of a sweep driven by a fallible oracle.
#[derive(Debug)]
pub enum SweepError<E> {
    /// The sweep could not start.
    Setup(Error),
    /// The oracle failed; the sweep stopped at this case.
    Oracle { case: CaseIndex, source: E },
}

impl<E: std::fmt::Display> std::fmt::Display for SweepError<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepError::Setup(e) => write!(f, "sweep setup failed: {e}"),
            SweepError::Oracle { case, source } => write!(
                f,
                "oracle failed at case {} (width {}): {source}",
                case.value(),
                case.width()
            ),
        }
    }
}

impl<E: std::error::Error + 'static> std::error::Error for SweepError<E> {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SweepError::Setup(e) => Some(e),
            SweepError::Oracle { source, .. } => Some(source),
        }
    }
}

fn check_sweep_width(n: u8) -> Result<(), Error> {
    if n < 2 {
        return Err(Error::WidthTooSmall { width: n, min: 2 });
    }
    if n > MAX_WIDTH {
        return Err(Error::WidthOutOfRange {
            width: n,
            max: MAX_WIDTH,
        });
    }
    Ok(())
}

/// Run the pruned sweep over `{2^n - 1, ...}` against a fallible oracle,
/// returning every checked case with its verdict, in check order.
///
/// Case 0 is never queried. An oracle failure aborts the sweep and surfaces
/// the case at which it happened.
pub fn try_run_prune_sweep<E>(
    n: u8,
    ell: PruneLevel,
    mut oracle: impl FnMut(CaseIndex) -> Result<bool, E>,
) -> Result<Vec<(CaseIndex, bool)>, SweepError<E>> {
    check_sweep_width(n).map_err(SweepError::Setup)?;
    let mut out = Vec::new();
    let mut j = (1u64 << n) - 1;
    while j > 0 {
        let case = CaseIndex::new(j, n).expect("j stays below 2^n");
        let hit = match oracle(case) {
            Ok(hit) => hit,
            Err(source) => return Err(SweepError::Oracle { case, source }),
        };
        out.push((case, hit));
        j = if hit { j - 1 } else { prune_value(j, ell) };
        debug_assert!(j < case.value(), "sweep must strictly descend");
    }
    Ok(out)
}

/// Infallible form of [`try_run_prune_sweep`].
pub fn run_prune_sweep(
    n: u8,
    ell: PruneLevel,
    mut oracle: impl FnMut(CaseIndex) -> bool,
) -> Result<Vec<(CaseIndex, bool)>, Error> {
    try_run_prune_sweep(n, ell, |case| Ok::<bool, std::convert::Infallible>(oracle(case)))
        .map_err(|e| match e {
            SweepError::Setup(e) => e,
            SweepError::Oracle { .. } => unreachable!("oracle is infallible"),
        })
}

/// Core loop shared by the set-driven entry points; membership is a closure
/// over raw values so the exhaustive sweeps can run straight off bitmasks.
fn run_raw(n: u8, ell: PruneLevel, mut in_set: impl FnMut(u64) -> bool) -> (u64, u64, Vec<u64>, Vec<bool>) {
    let mut j = (1u64 << n) - 1;
    let (mut required, mut checked) = (0u64, 0u64);
    let mut trace = Vec::new();
    let mut hits = Vec::new();
    while j > 0 {
        checked += 1;
        let hit = in_set(j);
        trace.push(j);
        hits.push(hit);
        let next = if hit { j - 1 } else { prune_value(j, ell) };
        if hit {
            required += 1;
        }
        debug_assert!(next < j, "sweep must strictly descend");
        j = next;
    }
    (required, checked, trace, hits)
}

/// The counting algorithm: run the pruned sweep over `S` and report
/// `(R, C)` together with the full trace.
///
/// Every nonempty set is a legal input; validity is a separate judgment.
pub fn run_efficiency(n: u8, ell: PruneLevel, s: &SolutionSet) -> Result<RunOutcome, Error> {
    check_sweep_width(n)?;
    if s.n() != n {
        return Err(Error::WidthMismatch {
            set: s.n(),
            requested: n,
        });
    }
    let (required, checked, trace, hits) = run_raw(n, ell, |j| s.contains(j));
    let trace = trace
        .into_iter()
        .map(|v| CaseIndex::new(v, n).expect("trace values fit the width"))
        .collect();
    Ok(RunOutcome {
        required,
        checked,
        trace,
        hits,
    })
}

/// True iff the sweep finds every member of `S`, i.e. `R = |S|`.
pub fn is_valid(n: u8, ell: PruneLevel, s: &SolutionSet) -> Result<bool, Error> {
    Ok(run_efficiency(n, ell, s)?.required == s.len())
}

fn check_exhaustive_width(n: u8) -> Result<(), Error> {
    check_sweep_width(n)?;
    if n > MAX_EXHAUSTIVE_WIDTH {
        return Err(Error::EnumerationBudget {
            n,
            max: MAX_EXHAUSTIVE_WIDTH,
        });
    }
    Ok(())
}

/// Run the counting loop directly on a compressed subset mask, where bit
/// `v - 1` encodes membership of case `v`. Returns `(R, C)` only.
fn run_compressed(n: u8, ell: PruneLevel, mask: u64) -> (u64, u64) {
    let mut j = (1u64 << n) - 1;
    let (mut required, mut checked) = (0u64, 0u64);
    while j > 0 {
        checked += 1;
        if mask >> (j - 1) & 1 == 1 {
            required += 1;
            j -= 1;
        } else {
            j = prune_value(j, ell);
        }
    }
    (required, checked)
}

fn set_from_compressed(n: u8, mask: u64) -> SolutionSet {
    let members = (1..1u64 << n).filter(|v| mask >> (v - 1) & 1 == 1);
    SolutionSet::new(n, members).expect("compressed mask is nonempty and in range")
}

/// Lazy exhaustive enumeration of the valid sets at width `n`, in ascending
/// order of the member-set bitmask, each paired with its run outcome.
pub fn enumerate_valid_sets(
    n: u8,
    ell: PruneLevel,
) -> Result<impl Iterator<Item = (SolutionSet, RunOutcome)>, Error> {
    check_exhaustive_width(n)?;
    let end = 1u64 << ((1u64 << n) - 1);
    Ok((1..end).filter_map(move |mask| {
        let (required, _) = run_compressed(n, ell, mask);
        if required != mask.count_ones() as u64 {
            return None;
        }
        let set = set_from_compressed(n, mask);
        let outcome = run_efficiency(n, ell, &set).expect("set was built for this width");
        Some((set, outcome))
    }))
}

/// Eager form of [`enumerate_valid_sets`]; `jobs > 1` partitions the subset
/// space across threads. The result is identical for any job count.
pub fn collect_valid_sets(
    n: u8,
    ell: PruneLevel,
    jobs: usize,
) -> Result<Vec<(SolutionSet, RunOutcome)>, Error> {
    check_exhaustive_width(n)?;
    let end = 1u64 << ((1u64 << n) - 1);
    let chunks = split_range(1, end, jobs);
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || {
                    let mut found = Vec::new();
                    for mask in lo..hi {
                        let (required, _) = run_compressed(n, ell, mask);
                        if required == mask.count_ones() as u64 {
                            found.push(mask);
                        }
                    }
                    found
                })
            })
            .collect();
        for handle in handles {
            for mask in handle.join().expect("enumeration worker panicked") {
                let set = set_from_compressed(n, mask);
                let outcome = run_efficiency(n, ell, &set).expect("set was built for this width");
                out.push((set, outcome));
            }
        }
    });
    Ok(out)
}

/// Maximum of `C / R` over all valid sets at width `n`, with the witness
/// attaining it (ties broken toward the smallest member-set bitmask).
pub fn max_ratio_bruteforce(
    n: u8,
    ell: PruneLevel,
    jobs: usize,
) -> Result<(Ratio, SolutionSet), Error> {
    check_exhaustive_width(n)?;
    let end = 1u64 << ((1u64 << n) - 1);
    let chunks = split_range(1, end, jobs);
    let mut best: Option<(Ratio, u64)> = None;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || {
                    let mut best: Option<(Ratio, u64)> = None;
                    for mask in lo..hi {
                        let (required, checked) = run_compressed(n, ell, mask);
                        if required != mask.count_ones() as u64 {
                            continue;
                        }
                        let ratio = Ratio::new(checked, required);
                        // Strict improvement keeps the earliest (smallest) mask.
                        if best.is_none_or(|(r, _)| ratio > r) {
                            best = Some((ratio, mask));
                        }
                    }
                    best
                })
            })
            .collect();
        for handle in handles {
            if let Some((ratio, mask)) = handle.join().expect("enumeration worker panicked") {
                if best.is_none_or(|(r, _)| ratio > r) {
                    best = Some((ratio, mask));
                }
            }
        }
    });
    let (ratio, mask) = best.expect("the full set is always valid");
    Ok((ratio, set_from_compressed(n, mask)))
}

/// Contiguous chunks covering `[lo, hi)`, deterministic for a given count.
fn split_range(lo: u64, hi: u64, jobs: usize) -> Vec<(u64, u64)> {
    let jobs = jobs.max(1) as u64;
    let total = hi.saturating_sub(lo);
    let per = total.div_ceil(jobs).max(1);
    let mut out = Vec::new();
    let mut start = lo;
    while start < hi {
        let stop = (start + per).min(hi);
        out.push((start, stop));
        start = stop;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u8, members: &[u64]) -> SolutionSet {
        SolutionSet::new(n, members.iter().copied()).unwrap()
    }

    fn values(trace: &[CaseIndex]) -> Vec<u64> {
        trace.iter().map(|c| c.value()).collect()
    }

    #[test]
    fn sweep_worked_examples() {
        let got = run_prune_sweep(3, PruneLevel::ONE, |c| [6, 7].contains(&c.value())).unwrap();
        let got: Vec<(u64, bool)> = got.into_iter().map(|(c, h)| (c.value(), h)).collect();
        assert_eq!(got, vec![(7, true), (6, true), (5, false), (3, false)]);

        let got = run_prune_sweep(2, PruneLevel::ONE, |_| true).unwrap();
        let got: Vec<(u64, bool)> = got.into_iter().map(|(c, h)| (c.value(), h)).collect();
        assert_eq!(got, vec![(3, true), (2, true), (1, true)]);

        let got = run_prune_sweep(3, PruneLevel::TWO, |c| [6, 7].contains(&c.value())).unwrap();
        let got: Vec<(u64, bool)> = got.into_iter().map(|(c, h)| (c.value(), h)).collect();
        assert_eq!(got, vec![(7, true), (6, true), (5, false)]);
    }

    #[test]
    fn fallible_sweep_surfaces_the_failing_case() {
        let err = try_run_prune_sweep(3, PruneLevel::ONE, |c| {
            if c.value() == 5 {
                Err("solver fell over")
            } else {
                Ok(c.value() >= 6)
            }
        })
        .unwrap_err();
        match err {
            SweepError::Oracle { case, source } => {
                assert_eq!(case.value(), 5);
                assert_eq!(source, "solver fell over");
            }
            SweepError::Setup(_) => panic!("expected an oracle failure"),
        }
    }

    #[test]
    fn efficiency_worked_examples() {
        let out = run_efficiency(3, PruneLevel::ONE, &set(3, &[6, 7])).unwrap();
        assert_eq!((out.required, out.checked), (2, 4));
        assert_eq!(values(&out.trace), vec![7, 6, 5, 3]);
        assert_eq!(out.hits, vec![true, true, false, false]);

        let out = run_efficiency(3, PruneLevel::TWO, &set(3, &[6, 7])).unwrap();
        assert_eq!((out.required, out.checked), (2, 3));
        assert_eq!(values(&out.trace), vec![7, 6, 5]);

        let out = run_efficiency(3, PruneLevel::ONE, &set(3, &[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!((out.required, out.checked), (7, 7));

        let out = run_efficiency(3, PruneLevel::ONE, &set(3, &[7])).unwrap();
        assert_eq!((out.required, out.checked), (1, 4));
        assert_eq!(values(&out.trace), vec![7, 6, 5, 3]);
    }

    #[test]
    fn validity_worked_examples() {
        assert!(is_valid(3, PruneLevel::ONE, &set(3, &[6, 7])).unwrap());
        // 4 is never checked: the trace runs 7, 6, 5, 3 and stops.
        assert!(!is_valid(3, PruneLevel::ONE, &set(3, &[4])).unwrap());
        // Any set missing the top case is judged on the first check.
        assert!(!is_valid(3, PruneLevel::ONE, &set(3, &[5, 6])).unwrap());
    }

    #[test]
    fn enumeration_at_width_two() {
        let found: Vec<(Vec<u64>, (u64, u64))> = enumerate_valid_sets(2, PruneLevel::ONE)
            .unwrap()
            .map(|(s, o)| (s.members().collect(), (o.required, o.checked)))
            .collect();
        assert_eq!(
            found,
            vec![
                (vec![3], (1, 3)),
                (vec![1, 3], (2, 3)),
                (vec![2, 3], (2, 3)),
                (vec![1, 2, 3], (3, 3)),
            ]
        );
    }

    #[test]
    fn every_valid_set_contains_the_top_case() {
        for n in 2..=4u8 {
            let top = (1u64 << n) - 1;
            for level in [PruneLevel::ONE, PruneLevel::TWO] {
                for (s, _) in enumerate_valid_sets(n, level).unwrap() {
                    assert!(s.contains(top), "n={n} level={level} set={s}");
                }
            }
        }
    }

    #[test]
    fn enumeration_budget() {
        assert_eq!(
            enumerate_valid_sets(5, PruneLevel::ONE).err(),
            Some(Error::EnumerationBudget { n: 5, max: 4 })
        );
        assert_eq!(
            max_ratio_bruteforce(5, PruneLevel::ONE, 1).err(),
            Some(Error::EnumerationBudget { n: 5, max: 4 })
        );
    }

    #[test]
    fn max_ratio_worked_examples() {
        let (ratio, witness) = max_ratio_bruteforce(3, PruneLevel::ONE, 1).unwrap();
        assert!(ratio.is_integer(4));
        assert_eq!(witness.members().collect::<Vec<_>>(), vec![7]);

        let (ratio, _) = max_ratio_bruteforce(3, PruneLevel::TWO, 1).unwrap();
        assert!(ratio.is_integer(2));

        let (ratio, witness) = max_ratio_bruteforce(2, PruneLevel::ONE, 1).unwrap();
        assert!(ratio.is_integer(3));
        assert_eq!(witness.members().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn collection_is_identical_for_any_job_count() {
        for n in 2..=4u8 {
            for level in [PruneLevel::ONE, PruneLevel::TWO] {
                let sequential = collect_valid_sets(n, level, 1).unwrap();
                for jobs in [2, 3, 8] {
                    assert_eq!(sequential, collect_valid_sets(n, level, jobs).unwrap());
                    assert_eq!(
                        max_ratio_bruteforce(n, level, 1).unwrap(),
                        max_ratio_bruteforce(n, level, jobs).unwrap()
                    );
                }
                let lazy: Vec<_> = enumerate_valid_sets(n, level).unwrap().collect();
                assert_eq!(sequential, lazy);
            }
        }
    }

    #[test]
    fn par_number_worked_examples() {
        let out = run_efficiency(3, PruneLevel::ONE, &set(3, &[6, 7])).unwrap();
        assert_eq!(par_number(&out, 4).unwrap(), ParNumber { f: 4, p: -4 });

        let out = run_efficiency(3, PruneLevel::TWO, &set(3, &[6, 7])).unwrap();
        assert_eq!(par_number(&out, 2).unwrap(), ParNumber { f: 2, p: -1 });

        let out = run_efficiency(3, PruneLevel::ONE, &set(3, &[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(par_number(&out, 1).unwrap(), ParNumber { f: 1, p: 0 });

        assert_eq!(par_number(&out, 0).unwrap_err(), Error::ParRatioTooSmall);
    }

    #[test]
    fn solution_set_validation() {
        assert_eq!(
            SolutionSet::new(3, [0]).unwrap_err(),
            Error::MemberOutOfRange { value: 0, n: 3 }
        );
        assert_eq!(
            SolutionSet::new(3, [8]).unwrap_err(),
            Error::MemberOutOfRange { value: 8, n: 3 }
        );
        assert_eq!(
            SolutionSet::new(3, []).unwrap_err(),
            Error::EmptySolutionSet
        );
        assert_eq!(
            run_efficiency(4, PruneLevel::ONE, &set(3, &[7])).unwrap_err(),
            Error::WidthMismatch { set: 3, requested: 4 }
        );
        // Duplicates collapse.
        assert_eq!(set(3, &[6, 6, 7]).len(), 2);
        assert_eq!(set(3, &[6, 7]).to_string(), "{6,7}");
    }

    #[test]
    fn ratio_ordering_and_reduction() {
        assert_eq!(Ratio::new(4, 2), Ratio::new(2, 1));
        assert!(Ratio::new(3, 1) > Ratio::new(5, 2));
        assert!(Ratio::new(7, 3) < Ratio::new(12, 5));
        assert_eq!(Ratio::new(6, 4).to_string(), "3/2");
    }
}
