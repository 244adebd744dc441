//! Cross-module properties: the exhaustive enumeration oracle against the
//! graph reduction, the two worked theorems, and the structural claims over
//! their full desk-scale ranges.

use prunesweep::bitcase::PruneLevel;
use prunesweep::efficiency::{
    enumerate_valid_sets, par_number, run_efficiency, run_prune_sweep, SolutionSet,
};
use prunesweep::prunegraph::{
    box_bounds, build_gk, build_joined, count_paths, max_weight_path, minimal_f,
    path_to_solution_set, run_to_path, BoxId, Proposition, verify_structure,
};

const BOTH_LEVELS: [PruneLevel; 2] = [PruneLevel::ONE, PruneLevel::TWO];

/// All nonempty subsets of `{1, ..., 2^n - 1}` for small `n`.
fn all_subsets(n: u8) -> impl Iterator<Item = SolutionSet> {
    let end = 1u64 << ((1u64 << n) - 1);
    (1..end).map(move |mask| {
        let members = (1..1u64 << n).filter(move |v| mask >> (v - 1) & 1 == 1);
        SolutionSet::new(n, members).unwrap()
    })
}

#[test]
fn oracle_sweep_and_counting_run_agree_on_every_subset() {
    for n in 2..=4u8 {
        for ell in BOTH_LEVELS {
            for s in all_subsets(n) {
                let outcome = run_efficiency(n, ell, &s).unwrap();
                let sweep = run_prune_sweep(n, ell, |c| s.contains(c.value())).unwrap();
                let from_sweep: Vec<(u64, bool)> =
                    sweep.into_iter().map(|(c, h)| (c.value(), h)).collect();
                let from_run: Vec<(u64, bool)> = outcome
                    .trace
                    .iter()
                    .map(|c| c.value())
                    .zip(outcome.hits.iter().copied())
                    .collect();
                assert_eq!(from_sweep, from_run, "n={n} level={ell} set={s}");
                assert_eq!(outcome.checked as usize, outcome.trace.len());
                assert!(outcome
                    .trace
                    .windows(2)
                    .all(|w| w[1].value() < w[0].value()));
            }
        }
    }
}

#[test]
fn every_valid_set_contains_the_top_case() {
    for n in 2..=4u8 {
        let top = (1u64 << n) - 1;
        for ell in BOTH_LEVELS {
            for (s, _) in enumerate_valid_sets(n, ell).unwrap() {
                assert!(s.contains(top), "n={n} level={ell} set={s}");
            }
        }
    }
}

#[test]
fn worst_case_bounds_hold_with_equality_attained() {
    for n in 2..=4u8 {
        for (ell, f) in [(PruneLevel::ONE, n as u64 + 1), (PruneLevel::TWO, 2)] {
            let mut attained = false;
            for (s, outcome) in enumerate_valid_sets(n, ell).unwrap() {
                let par = par_number(&outcome, f).unwrap();
                assert!(par.p <= 0, "n={n} level={ell} set={s} p={}", par.p);
                attained |= par.p == 0;
            }
            assert!(attained, "bound must be tight at n={n} level={ell}");
        }
    }
}

#[test]
fn extraneous_case_counts_stay_bounded() {
    for n in 2..=4u8 {
        for (s, outcome) in enumerate_valid_sets(n, PruneLevel::ONE).unwrap() {
            let extraneous = outcome.checked - outcome.required;
            assert!(extraneous <= n as u64 * s.len(), "n={n} set={s}");
        }
        for (s, outcome) in enumerate_valid_sets(n, PruneLevel::TWO).unwrap() {
            let extraneous = outcome.checked - outcome.required;
            assert!(extraneous <= s.len(), "n={n} set={s}");
        }
    }
}

#[test]
fn deeper_pruning_never_checks_more_cases() {
    // On sets valid under both levels, the level-2 run checks at most as
    // many cases as the level-1 run.
    for n in 2..=4u8 {
        let level_one: std::collections::BTreeMap<String, u64> =
            enumerate_valid_sets(n, PruneLevel::ONE)
                .unwrap()
                .map(|(s, o)| (s.to_string(), o.checked))
                .collect();
        for (s, outcome) in enumerate_valid_sets(n, PruneLevel::TWO).unwrap() {
            if let Some(&checked_one) = level_one.get(&s.to_string()) {
                assert!(outcome.checked <= checked_one, "n={n} set={s}");
            }
        }
    }
}

#[test]
fn block_theorems_hold_up_to_width_sixteen() {
    for k in 2..=16u8 {
        let top = (1u64 << k) - 1;
        let g = build_gk(k, PruneLevel::ONE, -(k as i64)).unwrap();
        assert_eq!(
            max_weight_path(&g, 0, top).unwrap().weight(),
            Some(0),
            "level 1, k={k}"
        );
        let g = build_gk(k, PruneLevel::TWO, -1).unwrap();
        assert_eq!(
            max_weight_path(&g, 0, top).unwrap().weight(),
            Some(0),
            "level 2, k={k}"
        );
    }
}

#[test]
fn joined_corollaries_hold_up_to_width_sixteen() {
    for n in 2..=16u8 {
        let top = (1u64 << n) - 1;

        let g = build_joined(n, PruneLevel::ONE, -(n as i64)).unwrap();
        assert_eq!(max_weight_path(&g, 0, top).unwrap().weight(), Some(0));
        let g = build_joined(n, PruneLevel::ONE, -(n as i64) - 1).unwrap();
        assert!(max_weight_path(&g, 0, top).unwrap().weight().unwrap() < 0);

        let g = build_joined(n, PruneLevel::TWO, -1).unwrap();
        assert_eq!(max_weight_path(&g, 0, top).unwrap().weight(), Some(0));
        let g = build_joined(n, PruneLevel::TWO, -2).unwrap();
        assert!(max_weight_path(&g, 0, top).unwrap().weight().unwrap() < 0);
    }
}

#[test]
fn runs_and_paths_are_in_bijection() {
    for n in 2..=4u8 {
        let top = (1u64 << n) - 1;
        for ell in BOTH_LEVELS {
            let valid: Vec<_> = enumerate_valid_sets(n, ell).unwrap().collect();

            let g = build_joined(n, ell, -1).unwrap();
            assert_eq!(
                count_paths(&g, 0, top).unwrap(),
                valid.len() as u128,
                "n={n} level={ell}"
            );

            let mut seen = std::collections::BTreeSet::new();
            for (s, outcome) in &valid {
                let path = run_to_path(outcome, ell).unwrap();
                // Round trip: the path reads back as exactly this set.
                let back = path_to_solution_set(&path, n, ell).unwrap();
                assert_eq!(&back, s, "n={n} level={ell}");
                // Path weight equals the par number at both candidate ratios.
                for f in [2u64, n as u64 + 1] {
                    assert_eq!(
                        path.weight(-(f as i64 - 1)),
                        par_number(outcome, f).unwrap().p,
                        "n={n} level={ell} set={s} f={f}"
                    );
                }
                seen.insert(format!("{path}"));
            }
            // Distinct sets map to distinct paths.
            assert_eq!(seen.len(), valid.len());
        }
    }
}

#[test]
fn structural_claims_hold_up_to_k_twelve() {
    for ell in BOTH_LEVELS {
        for rule in Proposition::ALL {
            let Some(min) = rule.min_k(ell) else {
                continue;
            };
            for k in min..=12u8 {
                let check = verify_structure(k, ell, rule).unwrap();
                assert!(
                    check.passed(),
                    "rule {rule} failed at level {ell}, k={k}: missing {:?}, unexpected {:?}",
                    check.missing,
                    check.unexpected
                );
            }
        }
    }
}

#[test]
fn minimal_ratio_matches_the_proven_bounds() {
    for n in 2..=12u8 {
        assert_eq!(
            minimal_f(n, PruneLevel::ONE, 64).unwrap(),
            Some(n as u64 + 1),
            "n={n}"
        );
        assert_eq!(minimal_f(n, PruneLevel::TWO, 64).unwrap(), Some(2), "n={n}");
    }
}

#[test]
fn box_intervals_partition_every_block() {
    for (ell, k_min) in [(PruneLevel::ONE, 3u8), (PruneLevel::TWO, 4u8)] {
        for k in k_min..=16 {
            let bounds = box_bounds(k, ell).unwrap();
            let b1 = bounds.range(BoxId::B1).unwrap();
            assert_eq!(b1.top, (1u64 << k) - 1);
            assert_eq!(bounds.ranges().last().unwrap().bottom, (1u64 << (k - 1)) - 1);
            for pair in bounds.ranges().windows(2) {
                assert_eq!(pair[1].top + 1, pair[0].bottom, "level={ell} k={k}");
            }
        }
    }
}
