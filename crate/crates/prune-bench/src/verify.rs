//! The `verify` subcommand: sweeps every mechanically checkable claim and
//! reports one row per check.

use prunesweep::bitcase::{verify_prefix_lemmas, PruneLevel};
use prunesweep::efficiency::{
    collect_valid_sets, max_ratio_bruteforce, par_number, Ratio,
};
use prunesweep::prunegraph::{
    build_gk, build_joined, count_paths, max_weight_path, minimal_f, path_to_solution_set,
    run_to_path, verify_structure, Proposition,
};
use prunesweep::Error;

/// Which claims to sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    /// The binary-prefix facts, exhaustively per digit count.
    Lemmas,
    /// The recursive box structure of the blocks.
    Structure,
    /// Maximum-weight-path values for blocks and joined graphs.
    Theorems,
    /// Brute-force worst-case ratio bounds over all subsets.
    Bounds,
    /// The run/path correspondence.
    Bijection,
    /// Everything above at its default ranges.
    All,
}

/// One verification row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

impl Check {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            detail: detail.into(),
            passed: true,
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            detail: detail.into(),
            passed: false,
        }
    }
}

pub struct VerifyOptions {
    pub levels: Vec<PruneLevel>,
    pub k_max: Option<u8>,
    pub n_max: Option<u8>,
    pub jobs: usize,
    pub verbose: bool,
}

pub fn run_scope(scope: Scope, opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    match scope {
        Scope::Lemmas => checks.extend(check_lemmas(opts)?),
        Scope::Structure => checks.extend(check_structure(opts)?),
        Scope::Theorems => checks.extend(check_theorems(opts)?),
        Scope::Bounds => checks.extend(check_bounds(opts)?),
        Scope::Bijection => checks.extend(check_bijection(opts)?),
        Scope::All => {
            checks.extend(check_lemmas(opts)?);
            checks.extend(check_structure(opts)?);
            checks.extend(check_theorems(opts)?);
            checks.extend(check_bounds(opts)?);
            checks.extend(check_bijection(opts)?);
        }
    }
    Ok(checks)
}

fn check_lemmas(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let k_max = opts.k_max.map_or(16, u32::from);
    let report = verify_prefix_lemmas(k_max)?;
    Ok(report
        .checks
        .iter()
        .map(|check| {
            let name = format!("prefix lemma {}", check.lemma);
            match check.counterexample {
                None => {
                    let detail = if check.cases_checked == 0 {
                        format!("vacuous below k = {}", check.lemma.min_k())
                    } else {
                        format!("k <= {k_max}, {} cases", check.cases_checked)
                    };
                    Check::pass(name, detail)
                }
                Some((k, m)) => Check::fail(name, format!("counterexample at k={k}, m={m}")),
            }
        })
        .collect())
}

fn check_structure(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let k_max = opts.k_max.unwrap_or(12);
    let mut checks = Vec::new();
    for &ell in &opts.levels {
        for rule in Proposition::ALL {
            let Some(min) = rule.min_k(ell) else {
                continue;
            };
            if min > k_max {
                continue;
            }
            let mut failure = None;
            for k in min..=k_max {
                let check = verify_structure(k, ell, rule)?;
                if opts.verbose {
                    eprintln!(
                        "structure {rule} level {ell} k={k}: {}",
                        if check.passed() { "ok" } else { "FAILED" }
                    );
                }
                if !check.passed() {
                    failure = Some(format!(
                        "k={k}: {} edges missing, {} unexpected",
                        check.missing.len(),
                        check.unexpected.len()
                    ));
                    break;
                }
            }
            let name = format!("structure {rule} (level {ell})");
            checks.push(match failure {
                None => Check::pass(name, format!("k = {min}..={k_max}")),
                Some(detail) => Check::fail(name, detail),
            });
        }
    }
    Ok(checks)
}

fn check_theorems(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let n_max = opts.n_max.unwrap_or(16);
    let mut checks = Vec::new();
    for &ell in &opts.levels {
        let block_blue = |k: u8| match ell.get() {
            1 => -(k as i64),
            _ => -1,
        };
        let bound = |n: u8| match ell.get() {
            1 => n as u64 + 1,
            _ => 2,
        };

        let row = |name: String,
                       sweep: &mut dyn FnMut(u8) -> Result<Option<String>, Error>|
         -> Result<Check, Error> {
            for x in 2..=n_max {
                if let Some(detail) = sweep(x)? {
                    return Ok(Check::fail(name.clone(), detail));
                }
                if opts.verbose {
                    eprintln!("{name}: {x} ok");
                }
            }
            Ok(Check::pass(name, format!("2..={n_max}")))
        };

        checks.push(row(
            format!("block max weight is zero (level {ell})"),
            &mut |k| {
                let g = build_gk(k, ell, block_blue(k))?;
                let w = max_weight_path(&g, 0, (1 << k) - 1)?.weight();
                Ok((w != Some(0)).then(|| format!("k={k}: weight {w:?}")))
            },
        )?);
        checks.push(row(
            format!("joined max weight is zero (level {ell})"),
            &mut |n| {
                let g = build_joined(n, ell, -(bound(n) as i64 - 1))?;
                let w = max_weight_path(&g, 0, (1 << n) - 1)?.weight();
                Ok((w != Some(0)).then(|| format!("n={n}: weight {w:?}")))
            },
        )?);
        checks.push(row(
            format!("joined max weight past the bound is negative (level {ell})"),
            &mut |n| {
                let g = build_joined(n, ell, -(bound(n) as i64))?;
                let w = max_weight_path(&g, 0, (1 << n) - 1)?.weight();
                Ok((w.is_none_or(|w| w >= 0)).then(|| format!("n={n}: weight {w:?}")))
            },
        )?);
        checks.push(row(
            format!("minimal sustainable ratio equals the bound (level {ell})"),
            &mut |n| {
                let got = minimal_f(n, ell, bound(n) + 16)?;
                Ok((got != Some(bound(n))).then(|| format!("n={n}: got {got:?}")))
            },
        )?);
    }
    Ok(checks)
}

fn check_bounds(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let n_max = opts.n_max.unwrap_or(4);
    let mut checks = Vec::new();
    for &ell in &opts.levels {
        let bound = |n: u8| match ell.get() {
            1 => n as u64 + 1,
            _ => 2,
        };

        let mut ratio_fail = None;
        let mut extraneous_fail = None;
        let mut top_fail = None;
        for n in 2..=n_max {
            let (ratio, witness) = max_ratio_bruteforce(n, ell, opts.jobs)?;
            if opts.verbose {
                eprintln!("bounds level {ell} n={n}: max ratio {ratio} at {witness}");
            }
            if ratio != Ratio::new(bound(n), 1) {
                ratio_fail = Some(format!("n={n}: max ratio {ratio} at {witness}"));
                break;
            }
            let top = (1u64 << n) - 1;
            for (s, outcome) in collect_valid_sets(n, ell, opts.jobs)? {
                let extraneous = outcome.checked - outcome.required;
                let cap = match ell.get() {
                    1 => n as u64 * s.len(),
                    _ => s.len(),
                };
                if extraneous > cap && extraneous_fail.is_none() {
                    extraneous_fail = Some(format!("n={n} set {s}: {extraneous} > {cap}"));
                }
                if !s.contains(top) && top_fail.is_none() {
                    top_fail = Some(format!("n={n} set {s} misses {top}"));
                }
            }
        }
        let detail = format!("n = 2..={n_max}, all subsets");
        checks.push(match ratio_fail {
            None => Check::pass(
                format!("worst-case ratio equals the bound (level {ell})"),
                detail.clone(),
            ),
            Some(d) => Check::fail(format!("worst-case ratio equals the bound (level {ell})"), d),
        });
        checks.push(match extraneous_fail {
            None => Check::pass(
                format!("extraneous checks stay bounded (level {ell})"),
                detail.clone(),
            ),
            Some(d) => Check::fail(format!("extraneous checks stay bounded (level {ell})"), d),
        });
        checks.push(match top_fail {
            None => Check::pass(
                format!("every valid set contains the top case (level {ell})"),
                detail,
            ),
            Some(d) => Check::fail(
                format!("every valid set contains the top case (level {ell})"),
                d,
            ),
        });
    }
    Ok(checks)
}

fn check_bijection(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let n_max = opts.n_max.unwrap_or(4);
    let mut checks = Vec::new();
    for &ell in &opts.levels {
        let mut count_fail = None;
        let mut trip_fail = None;
        for n in 2..=n_max {
            let top = (1u64 << n) - 1;
            let valid = collect_valid_sets(n, ell, opts.jobs)?;
            let g = build_joined(n, ell, -1)?;
            let paths = count_paths(&g, 0, top)?;
            if opts.verbose {
                eprintln!(
                    "bijection level {ell} n={n}: {} valid sets, {paths} paths",
                    valid.len()
                );
            }
            if paths != valid.len() as u128 && count_fail.is_none() {
                count_fail = Some(format!("n={n}: {} sets vs {paths} paths", valid.len()));
            }
            for (s, outcome) in &valid {
                let trip = run_to_path(outcome, ell)
                    .and_then(|path| {
                        for f in [2, n as u64 + 1] {
                            if path.weight(-(f as i64 - 1)) != par_number(outcome, f)?.p {
                                return Err(Error::InvalidPath {
                                    reason: "path weight disagrees with the par number",
                                });
                            }
                        }
                        path_to_solution_set(&path, n, ell)
                    });
                match trip {
                    Ok(back) if back == *s => {}
                    Ok(back) => {
                        trip_fail.get_or_insert(format!("n={n}: {s} came back as {back}"));
                    }
                    Err(e) => {
                        trip_fail.get_or_insert(format!("n={n} set {s}: {e}"));
                    }
                }
            }
        }
        let detail = format!("n = 2..={n_max}");
        checks.push(match count_fail {
            None => Check::pass(
                format!("path count equals valid-set count (level {ell})"),
                detail.clone(),
            ),
            Some(d) => Check::fail(
                format!("path count equals valid-set count (level {ell})"),
                d,
            ),
        });
        checks.push(match trip_fail {
            None => Check::pass(
                format!("run/path round trip is the identity (level {ell})"),
                detail,
            ),
            Some(d) => Check::fail(
                format!("run/path round trip is the identity (level {ell})"),
                d,
            ),
        });
    }
    Ok(checks)
}
