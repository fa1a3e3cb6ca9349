//! Verification suites: each one sweeps a corpus of families and confirms
//! an invariant or bound on every member, reporting check and violation
//! counts. The corpora mix exhaustive small-dimension enumeration,
//! constructed candidates, and seeded random families, so a violation
//! anywhere is reproducible from the suite name and seed alone.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{verify_gap_bounds, verify_interpolation, GridSpec};
use crate::bounds::{
    self, chain_monotone, distance_two_bound, even_power_bound, kkl_exact, kleitman_threshold,
    kleitman_west_bound, odd_power_bound, pair_class_bound, rank_bound_check, threshold_facts,
    trivial_bound, weight_edge_bound, EllCase,
};
use crate::compress::{ell_x, is_down_set, is_left_compressed, normalize, rank_sum};
use crate::construct::{hamming_ball, kw_layer, kw_star, odd_tight, subcube};
use crate::error::{Error, Result};
use crate::solver::{
    for_each_down_set, for_each_lcd, solve_compressed, verify_harper_small, SolverBudget,
};
use crate::vertex::{
    check_regularity_identity, distance_histogram, edge_decomposition, edges_within, VertexFamily,
};

/// Every suite, in the order `run_all` executes them.
pub const SUITE_NAMES: [&str; 12] = [
    "regularity-identity",
    "compression",
    "rank-identity",
    "weight-bound",
    "large-elements",
    "threshold-facts",
    "bounds-validity",
    "kkl",
    "kleitman-threshold",
    "harper-small",
    "pair-classes",
    "analytic",
];

/// Outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: u64,
    pub violations: u64,
    pub pass: bool,
    /// Seed of the random corpus, for suites that use one.
    pub seed: Option<u64>,
    pub notes: String,
}

#[derive(Clone, Default)]
struct Tally {
    checks: u64,
    violations: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally::default()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checks += other.checks;
        self.violations += other.violations;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn into_report(self, suite: &'static str, seed: Option<u64>, notes: String) -> SuiteReport {
        let notes = match &self.first {
            Some(sample) => format!("first violation: {sample}"),
            None => notes,
        };
        SuiteReport {
            suite,
            checks: self.checks,
            violations: self.violations,
            pass: self.violations == 0 && self.checks > 0,
            seed,
            notes,
        }
    }
}

fn sample_family(rng: &mut ChaCha8Rng, max_dim: u32, max_size: u64) -> VertexFamily {
    let n = rng.gen_range(2..=max_dim);
    let cube = 1u64 << n;
    let m = rng.gen_range(2..=max_size.min(cube));
    let bits: Vec<u32> = if m * 3 >= cube {
        let mut all: Vec<u32> = (0..cube as u32).collect();
        for i in 0..m as usize {
            let j = rng.gen_range(i..cube as usize);
            all.swap(i, j);
        }
        all.truncate(m as usize);
        all
    } else {
        let mut seen = std::collections::BTreeSet::new();
        while (seen.len() as u64) < m {
            seen.insert(rng.gen_range(0..cube) as u32);
        }
        seen.into_iter().collect()
    };
    VertexFamily::from_bits(n, bits).expect("sampled members are distinct and in range")
}

fn sample_layer_family(rng: &mut ChaCha8Rng, max_dim: u32, max_size: u64) -> VertexFamily {
    let n = rng.gen_range(4..=max_dim);
    let k = rng.gen_range(1..n);
    let layer = kw_layer(n, k).expect("layer parameters are in range");
    let avail = layer.len() as u64;
    let m = rng.gen_range(2..=max_size.min(avail));
    let all: Vec<u32> = layer.iter().map(|v| v.bits()).collect();
    let mut idx: Vec<usize> = (0..all.len()).collect();
    for i in 0..m as usize {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }
    let bits: Vec<u32> = idx[..m as usize].iter().map(|&i| all[i]).collect();
    VertexFamily::from_bits(n, bits).expect("sampled members are distinct")
}

/// The seeded random corpus: `count` families of dimension 2..=max_dim and
/// size 2..=max_size, members drawn uniformly without replacement. The same
/// seed always yields the same corpus.
pub fn random_families(seed: u64, count: usize, max_dim: u32, max_size: u64) -> Vec<VertexFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| sample_family(&mut rng, max_dim, max_size))
        .collect()
}

/// Seeded random subsets of single weight layers, for the intra-layer bound.
pub fn random_layer_families(
    seed: u64,
    count: usize,
    max_dim: u32,
    max_size: u64,
) -> Vec<VertexFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| sample_layer_family(&mut rng, max_dim.max(4), max_size))
        .collect()
}

fn all_subsets_of_cube(n: u32) -> impl Iterator<Item = VertexFamily> {
    let verts = 1u32 << n;
    (0u64..(1u64 << verts)).map(move |mask| {
        let bits = (0..verts).filter(move |b| mask >> b & 1 == 1);
        VertexFamily::from_bits(n, bits).expect("subset members are distinct")
    })
}

fn suite_regularity_identity(seed: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for fam in all_subsets_of_cube(3) {
        for r in 1..=3 {
            tally.check(check_regularity_identity(&fam, r)?, || {
                format!("2e+boundary != deg*m on {} at r={r}", fam.to_json())
            });
        }
    }
    let constructed = [
        hamming_ball(8, 2)?,
        odd_tight(8, 3)?,
        kw_layer(8, 4)?,
        kw_star(9, 4, 2)?,
        subcube(10, 5)?,
    ];
    for fam in &constructed {
        for r in [1, 2, 3] {
            tally.check(check_regularity_identity(fam, r)?, || {
                format!("2e+boundary != deg*m on a constructed family at r={r}")
            });
        }
    }
    for fam in random_families(seed, 300, 12, 512) {
        for r in 1..=3u32.min(fam.dim()) {
            tally.check(check_regularity_identity(&fam, r)?, || {
                format!("2e+boundary != deg*m on {} at r={r}", fam.to_json())
            });
        }
    }
    Ok(tally.into_report(
        "regularity-identity",
        Some(seed),
        "all subsets of the 3-cube, constructed families, 300 random families".into(),
    ))
}

fn normalization_checks(tally: &mut Tally, fam: &VertexFamily, r: u32) -> Result<()> {
    let before = edges_within(fam, r)?;
    let (norm, trace) = normalize(fam, r)?;
    let label = || format!("normalize({}, {r})", fam.to_json());
    tally.check(norm.len() == fam.len(), || {
        format!("{} changed size", label())
    });
    tally.check(is_down_set(&norm) && is_left_compressed(&norm), || {
        format!("{} is not a normal form", label())
    });
    tally.check(trace.rank_sums_strictly_decrease(), || {
        format!("{} has a non-decreasing rank step", label())
    });
    tally.check(trace.edges_never_decrease(), || {
        format!("{} lost edges along the trace", label())
    });
    tally.check(edges_within(&norm, r)? >= before, || {
        format!("{} lost edges overall", label())
    });
    let (again, second) = normalize(&norm, r)?;
    tally.check(again == norm && second.steps.is_empty(), || {
        format!("{} is not idempotent", label())
    });
    Ok(())
}

fn suite_compression(seed: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for fam in all_subsets_of_cube(3) {
        for r in 1..=3 {
            normalization_checks(&mut tally, &fam, r)?;
        }
    }
    for (i, fam) in random_families(seed, 200, 8, 64).into_iter().enumerate() {
        let r = 1 + (i as u32) % fam.dim().min(4);
        normalization_checks(&mut tally, &fam, r)?;
    }
    Ok(tally.into_report(
        "compression",
        Some(seed),
        "all subsets of the 3-cube at every radius, 200 random families".into(),
    ))
}

fn suite_rank_identity(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 1..=5 {
        for_each_lcd(n, None, budget, &mut |fam| {
            if fam.len() >= 2 {
                tally.check(edges_within(fam, 2.min(n))? == rank_sum(fam), || {
                    format!("edges at distance <=2 != rank sum on {}", fam.to_json())
                });
            }
            Ok(())
        })?;
    }
    Ok(tally.into_report(
        "rank-identity",
        None,
        "every left-compressed down-set of dimension <= 5".into(),
    ))
}

fn suite_weight_bound(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 1..=5 {
        for_each_down_set(n, None, budget, &mut |fam| {
            if !fam.is_empty() {
                let cap = bounds::floor_log2(fam.len() as u128);
                let max_weight = fam.iter().map(|v| v.weight()).max().unwrap_or(0);
                tally.check(max_weight <= cap, || {
                    format!("member weight above floor(log2 m) in {}", fam.to_json())
                });
            }
            Ok(())
        })?;
    }
    Ok(tally.into_report(
        "weight-bound",
        None,
        "every down-set of dimension <= 5".into(),
    ))
}

fn suite_large_elements(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 2..=6 {
        for_each_lcd(n, None, budget, &mut |fam| {
            if fam.len() >= 2 {
                let m = fam.len() as u128;
                let b = bounds::beta(m, n)? as u32;
                let l = bounds::ell(m, n)?;
                let worst = fam
                    .iter()
                    .map(|v| ell_x(v, b).map(u64::from))
                    .collect::<Result<Vec<u64>>>()?
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                tally.check(worst <= l, || {
                    format!("more than ell large elements in {}", fam.to_json())
                });
            }
            Ok(())
        })?;
    }
    Ok(tally.into_report(
        "large-elements",
        None,
        "every left-compressed down-set of dimension 2..=6".into(),
    ))
}

/// Dimensions 2..=4096: every power of two and its neighbors.
fn dimension_grid() -> Vec<u32> {
    let mut out = std::collections::BTreeSet::new();
    for p in 1..=12u32 {
        let base = 1u32 << p;
        for n in [base - 1, base, base + 1] {
            if (2..=4096).contains(&n) {
                out.insert(n);
            }
        }
    }
    out.into_iter().collect()
}

/// About fifty sizes per dimension, log-spaced over 2..=2^min(n,126).
fn size_grid(n: u32) -> Vec<u128> {
    let cap_exp = n.min(126);
    let mut out = std::collections::BTreeSet::new();
    out.insert(2u128);
    out.insert(3u128);
    out.insert(1u128 << cap_exp);
    out.insert((1u128 << cap_exp) - 1);
    for i in 0..50u32 {
        let e = 1.0 + (cap_exp as f64 - 1.0) * i as f64 / 49.0;
        let m = 2f64.powf(e) as u128;
        out.insert(m.clamp(2, 1u128 << cap_exp));
    }
    out.into_iter().collect()
}

fn suite_threshold_facts() -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in dimension_grid() {
        for m in size_grid(n) {
            tally.check(threshold_facts(m, n)?.all_hold(), || {
                format!("a threshold fact fails at m={m}, n={n}")
            });
            let mut t = 1u32;
            while t <= 126 && (1u128 << t) <= m {
                tally.check(chain_monotone(m, n, t)?, || {
                    format!("class chain not monotone at m={m}, n={n}, t={t}")
                });
                t *= 2;
            }
        }
    }
    Ok(tally.into_report(
        "threshold-facts",
        None,
        "dimensions 2..4096 near powers of two, ~50 log-spaced sizes each".into(),
    ))
}

/// Every closed-form bound that applies to `fam`, against exact counts for
/// every radius at once via the distance histogram.
fn bound_domination_checks(tally: &mut Tally, fam: &VertexFamily) -> Result<()> {
    let n = fam.dim();
    let m = fam.len() as u128;
    if m < 2 {
        return Ok(());
    }
    let hist = distance_histogram(fam);
    let mut edges_up_to = vec![0u64; hist.len()];
    for r in 1..hist.len() {
        edges_up_to[r] = edges_up_to[r - 1] + hist[r];
    }
    let label = |what: &str, r: u32| format!("{what} bound fails at n={n}, m={m}, r={r}");
    tally.check(edges_up_to[1] as u128 <= weight_edge_bound(m)?, || {
        label("weight-edge", 1)
    });
    if m < 1u128 << n {
        let bound = distance_two_bound(m, n)?.bound;
        tally.check(edges_up_to[2.min(n as usize)] as f64 <= bound, || {
            label("distance-two", 2)
        });
    }
    for t in 1..=(n / 2) {
        if (1u128 << t) > m {
            break;
        }
        let r = 2 * t;
        let bound = even_power_bound(m, n, t)?.bound;
        tally.check(edges_up_to[r as usize] as f64 <= bound, || {
            label("even-power", r)
        });
        if r < n {
            let bound = odd_power_bound(m, n, t)?.bound;
            tally.check(edges_up_to[(r + 1) as usize] as f64 <= bound, || {
                label("odd-power", r + 1)
            });
        }
    }
    for r in 1..=n {
        tally.check(
            edges_up_to[r as usize] as f64 <= trivial_bound(m, n, r)?,
            || label("trivial", r),
        );
    }
    Ok(())
}

fn suite_bounds_validity(seed: u64, budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for fam in all_subsets_of_cube(4) {
        bound_domination_checks(&mut tally, &fam)?;
    }
    for n in 4..=6 {
        for_each_lcd(n, None, budget, &mut |fam| {
            bound_domination_checks(&mut tally, fam)?;
            // the rank cap needs log m < n, which only the full cube misses
            if fam.len() >= 2 && (fam.len() as u128) < 1u128 << n {
                tally.check(rank_bound_check(fam)?, || {
                    format!("rank above n*ell' in {}", fam.to_json())
                });
            }
            Ok(())
        })?;
    }
    let families = random_families(seed, 10_000, 16, 512);
    let tallies: Vec<Result<Tally>> = families
        .par_iter()
        .map(|fam| {
            let mut local = Tally::new();
            bound_domination_checks(&mut local, fam)?;
            Ok(local)
        })
        .collect();
    for local in tallies {
        tally.absorb(local?);
    }
    for fam in random_layer_families(seed, 500, 16, 512) {
        let bound = kleitman_west_bound(fam.len() as u128, fam.dim())?.bound;
        tally.check(edges_within(&fam, 2)? as f64 <= bound, || {
            format!(
                "single-layer bound fails at n={}, m={}",
                fam.dim(),
                fam.len()
            )
        });
    }
    for n in 4..=12u32 {
        let k = n / 2;
        for s in 0..=k.min(3) {
            let fam = kw_star(n, k, s)?;
            if fam.len() < 2 || fam.len() as u128 >= 1u128 << n {
                continue;
            }
            let bound = kleitman_west_bound(fam.len() as u128, n)?.bound;
            tally.check(edges_within(&fam, 2)? as f64 <= bound, || {
                format!("single-layer bound fails on the star family at n={n}, s={s}")
            });
        }
    }
    Ok(tally.into_report(
        "bounds-validity",
        Some(seed),
        "all subsets of the 4-cube, all compressed down-sets to dimension 6, \
         10000 random families, 500 random layer families"
            .into(),
    ))
}

fn suite_kkl(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 2..=12u32 {
        let half = subcube(n, n - 1)?;
        let hist = distance_histogram(&half);
        let mut edges = 0u64;
        for r in 1..=n {
            edges += hist[r as usize];
            tally.check(kkl_exact(n, r)? == edges as u128, || {
                format!("half-cube count mismatch at n={n}, r={r}")
            });
        }
    }
    for n in 2..=4u32 {
        for r in 1..=n {
            let solved = solve_compressed(n, 1 << (n - 1), r, budget)?;
            tally.check(solved.value as u128 == kkl_exact(n, r)?, || {
                format!("solver disagrees with the half-cube formula at n={n}, r={r}")
            });
        }
    }
    Ok(tally.into_report(
        "kkl",
        None,
        "half-cube formula vs direct counts to n=12, vs the solver to n=4".into(),
    ))
}

fn suite_kleitman_threshold(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 2..=12u32 {
        for r in (2..=n.min(8)).step_by(2) {
            let threshold = kleitman_threshold(n, r)?;
            let ball = hamming_ball(n, r / 2)?;
            tally.check(ball.len() as u128 == threshold, || {
                format!("ball size != threshold at n={n}, r={r}")
            });
            let m = ball.len() as u64;
            tally.check(edges_within(&ball, r)? == m * (m - 1) / 2, || {
                format!("ball of radius {} is not complete at r={r}", r / 2)
            });
        }
    }
    for (n, r) in [(3u32, 2u32), (4, 2), (5, 2), (5, 4)] {
        let m = kleitman_threshold(n, r)? as u64 + 1;
        let solved = solve_compressed(n, m, r, budget)?;
        tally.check(solved.value < m * (m - 1) / 2, || {
            format!("first size above the threshold is still complete at n={n}, r={r}")
        });
    }
    Ok(tally.into_report(
        "kleitman-threshold",
        None,
        "ball completeness to n=12, strictness above the threshold to n=5".into(),
    ))
}

fn suite_harper_small() -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 2..=4 {
        tally.check(verify_harper_small(n)?, || {
            format!("an initial segment misses the minimum boundary at n={n}")
        });
    }
    Ok(tally.into_report(
        "harper-small",
        None,
        "all subsets of dimensions 2..4 against initial segments".into(),
    ))
}

fn pair_class_checks(tally: &mut Tally, fam: &VertexFamily) -> Result<()> {
    let n = fam.dim();
    let m = fam.len() as u128;
    if m < 2 {
        return Ok(());
    }
    let beta = bounds::beta(m, n)? as u32;
    let members: Vec<(u32, u32, u32)> = fam
        .iter()
        .map(|v| Ok((v.bits(), v.weight(), ell_x(v, beta)?)))
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<(u32, u32, bool), u64> = BTreeMap::new();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            // orient the pair as {x, y} with |x| >= |y|, ties by the
            // large-element statistic so equal weights never land above
            let (x, y) = if (members[i].1, members[i].2) >= (members[j].1, members[j].2) {
                (members[i], members[j])
            } else {
                (members[j], members[i])
            };
            let b = (x.0 & !y.0).count_ones();
            let a = (y.0 & !x.0).count_ones();
            let above = y.2 > x.2;
            *counts.entry((b, a, above)).or_insert(0) += 1;
        }
    }
    let total: u64 = counts.values().sum();
    let pairs = (m as u64) * (m as u64 - 1) / 2;
    tally.check(total == pairs, || {
        format!(
            "pair classes do not partition the pairs of {}",
            fam.to_json()
        )
    });
    let decomposition = edge_decomposition(fam, n)?;
    for (&(b, a, above), &count) in &counts {
        let split = counts.get(&(b, a, !above)).copied().unwrap_or(0);
        tally.check(count + split == decomposition.count(b, a), || {
            format!("class ({b},{a}) split disagrees with the decomposition")
        });
        let case = if above {
            EllCase::YAboveX
        } else {
            EllCase::YAtMostX
        };
        let bound = pair_class_bound(b, a, m, n, case)?;
        tally.check(count as f64 <= bound, || {
            format!(
                "class ({b},{a},{case:?}) count {count} above bound {bound} on {}",
                fam.to_json()
            )
        });
    }
    Ok(())
}

fn suite_pair_classes(budget: &SolverBudget) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    for n in 2..=6 {
        for_each_lcd(n, None, budget, &mut |fam| {
            pair_class_checks(&mut tally, fam)
        })?;
    }
    Ok(tally.into_report(
        "pair-classes",
        None,
        "every left-compressed down-set of dimension 2..=6".into(),
    ))
}

fn suite_analytic() -> Result<SuiteReport> {
    let mut tally = Tally::new();
    let gap = verify_gap_bounds(&GridSpec::default_gap())?;
    tally.check(gap.pass, || {
        format!("gap sweep fails with margin {}", gap.worst_margin)
    });
    let interp = verify_interpolation(&GridSpec::default_interp())?;
    tally.check(interp.pass, || {
        format!(
            "interpolation sweep fails with margin {}",
            interp.worst_margin
        )
    });
    Ok(tally.into_report(
        "analytic",
        None,
        format!(
            "gap worst margin {:.3e} over {} points, interpolation worst margin {:.3e} over {} points",
            gap.worst_margin, gap.points_checked, interp.worst_margin, interp.points_checked
        ),
    ))
}

/// Runs one suite by name.
pub fn run_suite(name: &str, seed: u64, budget: &SolverBudget) -> Result<SuiteReport> {
    match name {
        "regularity-identity" => suite_regularity_identity(seed),
        "compression" => suite_compression(seed),
        "rank-identity" => suite_rank_identity(budget),
        "weight-bound" => suite_weight_bound(budget),
        "large-elements" => suite_large_elements(budget),
        "threshold-facts" => suite_threshold_facts(),
        "bounds-validity" => suite_bounds_validity(seed, budget),
        "kkl" => suite_kkl(budget),
        "kleitman-threshold" => suite_kleitman_threshold(budget),
        "harper-small" => suite_harper_small(),
        "pair-classes" => suite_pair_classes(budget),
        "analytic" => suite_analytic(),
        other => Err(Error::invalid(format!(
            "unknown suite '{other}'; available: {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Runs every suite in declaration order.
pub fn run_all(seed: u64, budget: &SolverBudget) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, seed, budget))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str) -> SuiteReport {
        let report = run_suite(name, 0xC0FFEE, &SolverBudget::default()).unwrap();
        assert_eq!(report.suite, name);
        assert_eq!(report.violations, 0, "{}", report.notes);
        assert!(report.pass);
        report
    }

    #[test]
    fn regularity_suite_passes() {
        let report = run("regularity-identity");
        assert!(report.checks > 768);
        assert_eq!(report.seed, Some(0xC0FFEE));
    }

    #[test]
    fn compression_suite_passes() {
        let report = run("compression");
        // six checks per (family, radius) over 256 subsets and 3 radii
        assert!(report.checks >= 6 * 256 * 3);
    }

    #[test]
    fn rank_identity_suite_counts_compressed_down_sets() {
        let report = run("rank-identity");
        // families of size >= 2 among the 3+5+10+27+119 compressed down-sets
        assert_eq!(report.checks, 164 - 2 * 5);
    }

    #[test]
    fn weight_bound_suite_counts_down_sets() {
        let report = run("weight-bound");
        // nonempty down-sets: (3+6+20+168+7581) minus one empty set per n
        assert_eq!(report.checks, 7778 - 5);
    }

    #[test]
    fn large_elements_suite_passes() {
        let report = run("large-elements");
        // compressed down-sets of size >= 2: counts 5, 10, 27, 119, 1173
        // minus the empty set and the singleton for each dimension
        assert_eq!(report.checks, (5 + 10 + 27 + 119 + 1173) - 2 * 5);
    }

    #[test]
    fn threshold_facts_suite_passes() {
        let report = run("threshold-facts");
        assert!(report.checks > 1_000);
    }

    #[test]
    fn bounds_validity_suite_passes() {
        let report = run("bounds-validity");
        assert!(report.checks > 100_000);
    }

    #[test]
    fn structural_suites_pass() {
        run("kkl");
        run("kleitman-threshold");
        run("harper-small");
    }

    #[test]
    fn pair_classes_suite_passes() {
        let report = run("pair-classes");
        assert!(report.checks > 1_000);
    }

    #[test]
    fn analytic_suite_passes() {
        let report = run("analytic");
        assert_eq!(report.checks, 2);
        assert!(report.notes.contains("worst margin"));
    }

    #[test]
    fn unknown_suite_is_invalid() {
        assert!(matches!(
            run_suite("nope", 0, &SolverBudget::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn run_all_covers_every_suite() {
        let reports = run_all(7, &SolverBudget::default()).unwrap();
        assert_eq!(reports.len(), SUITE_NAMES.len());
        for (report, name) in reports.iter().zip(SUITE_NAMES) {
            assert_eq!(report.suite, name);
            assert!(report.pass, "{}: {}", report.suite, report.notes);
        }
        let doc: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&reports).unwrap()).unwrap();
        assert_eq!(doc.as_array().unwrap().len(), 12);
        assert_eq!(doc[0]["suite"], "regularity-identity");
        assert!(doc[0]["seed"].is_u64());
        assert_eq!(doc[11]["pass"], true);
    }
}
