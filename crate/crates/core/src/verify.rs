//! Verification suites comparing independent routes to the same objects.
//! Each suite returns a [`Report`]; a suite passes when it records no
//! failures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{
    build_word_sequence, concatenated_word, dims_check, is_reduced, FlagType, WordBlock,
};
use crate::characters::{
    decompose_chi, euler_characteristic, kostka_foulkes_charge, lemma31_weights,
};
use crate::error::Result;
use crate::kostka::{tabulate, KostkaEngine, PairFilter};
use crate::multipartition::{enumerate_multipartitions, Multipartition};
use crate::poly::TPoly;
use crate::pseudoroots::{
    box_points, partition_function_series_oracle, Grading, PartitionFunction, PseudorootSystem,
};
use crate::AlphaVec;

pub const DEFAULT_SEED: u64 = 0x6b73_686f_6a69;

/// Failures beyond this many are counted but not listed.
const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }

    pub fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}: {status} ({} checks", self.suite, self.checks)?;
        if self.failure_count > 0 {
            write!(f, ", {} failures", self.failure_count)?;
        }
        write!(f, ")")?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        for msg in &self.failures {
            write!(f, "\n  mismatch: {msg}")?;
        }
        for msg in &self.notes {
            write!(f, "\n  note: {msg}")?;
        }
        Ok(())
    }
}

/// `r = 1`: the Weyl-sum polynomial against the charge generating function
/// for all partitions `λ ≥ μ` of every size up to `max_size`, with `N` equal
/// to the size.
pub fn charge_suite(max_size: usize) -> Result<Report> {
    let mut report = Report::new("charge");
    for size in 0..=max_size {
        let n = size.max(1);
        let engine = KostkaEngine::new(1, n);
        let parts = enumerate_multipartitions(1, n, size as i64);
        for lambda in &parts {
            for mu in &parts {
                if !lambda.dominates(mu)? {
                    continue;
                }
                let weyl = engine.kostka_single(lambda, mu)?;
                let l: Vec<usize> = lambda.component(0).iter().map(|&p| p as usize).collect();
                let m: Vec<usize> = mu.component(0).iter().map(|&p| p as usize).collect();
                let charge = kostka_foulkes_charge(&l, &m);
                report.check(weyl == charge, || {
                    format!("λ={lambda} μ={mu}: weyl sum {weyl}, charge {charge}")
                });
            }
        }
    }
    Ok(report)
}

/// Canonical-bundle weights for `1 ≤ r, N ≤ max`: the root sum against the
/// double product and the closed forms, and SL-triviality of `w`.
pub fn lemma31_suite(max: usize) -> Report {
    let mut report = Report::new("lemma31");
    let mut quoted_mismatch = Vec::new();
    for r in 1..=max {
        for n in 1..=max {
            let cw = lemma31_weights(r, n);
            report.check(cw.w1 == cw.w1_product, || {
                format!("r={r} N={n}: w1 {:?} vs product {:?}", cw.w1, cw.w1_product)
            });
            report.check(cw.closed_forms_hold(), || {
                format!("r={r} N={n}: closed forms fail, w = {:?}", cw.w)
            });
            report.check(cw.sl_trivial, || {
                format!("r={r} N={n}: w = {:?} not SL-trivial", cw.w)
            });
            if !cw.quoted_forms_hold() {
                quoted_mismatch.push(format!("({r},{n})"));
            }
        }
    }
    if !quoted_mismatch.is_empty() {
        report.note(format!(
            "w = Σ_k (e_rk - e_r(k-1)+1); the form with the last factor inverted differs for (r,N) in {}",
            quoted_mismatch.join(" ")
        ));
    }
    report
}

/// The memoized partition function against coefficients of the truncated
/// generating product, over the box `0 ≤ α_i ≤ bound`, both truncated at
/// `max_degree`.
pub fn lemma32_suite(max_r: usize, max_n: usize, bound: i64, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("lemma32");
    for r in 1..=max_r {
        for n in 1..=max_n {
            let system = PseudorootSystem::build(r, n);
            let oracle = partition_function_series_oracle(&system, bound, max_degree)?;
            let pf = PartitionFunction::new(system.clone(), Grading::Colored);
            for point in box_points(system.rank(), bound) {
                let alpha = AlphaVec(point);
                let value = pf.eval(&alpha)?.truncate(max_degree);
                let expected = &oracle[&alpha];
                report.check(&value == expected, || {
                    format!("r={r} N={n} α={:?}: {value} vs series {expected}", alpha.0)
                });
            }
        }
    }
    Ok(report)
}

/// Sums of at most `max_count` pseudoroot weights `e_m - e_n`.
fn root_sums(system: &PseudorootSystem, max_count: u32) -> BTreeSet<Vec<i64>> {
    fn go(
        roots: &[(usize, usize)],
        start: usize,
        left: u32,
        cur: &mut Vec<i64>,
        out: &mut BTreeSet<Vec<i64>>,
    ) {
        out.insert(cur.clone());
        if left == 0 {
            return;
        }
        for (i, &(m, n)) in roots.iter().enumerate().skip(start) {
            cur[m - 1] += 1;
            cur[n - 1] -= 1;
            go(roots, i, left - 1, cur, out);
            cur[m - 1] -= 1;
            cur[n - 1] += 1;
        }
    }
    let roots: Vec<(usize, usize)> = system.roots().iter().map(|p| (p.m, p.n)).collect();
    let mut out = BTreeSet::new();
    go(
        &roots,
        0,
        max_count,
        &mut vec![0; system.r() * system.n()],
        &mut out,
    );
    out
}

/// Every `λ` that can carry a term of `t`-degree at most `max_degree`:
/// `λ + ρ` must be a per-component rearrangement of `μ + ρ + v` for a sum `v`
/// of at most `max_degree` pseudoroot weights.
pub fn candidate_lambdas(mu: &Multipartition, max_degree: u32) -> BTreeSet<Multipartition> {
    let (r, n) = (mu.r(), mu.n());
    let system = PseudorootSystem::build(r, n);
    let base: Vec<i64> = mu
        .add(&Multipartition::rho(r, n))
        .expect("same shape")
        .interleave();
    let rho = Multipartition::rho(r, n).interleave();
    let mut out = BTreeSet::new();
    for v in root_sums(&system, max_degree) {
        let shifted: Vec<i64> = base.iter().zip(&v).map(|(a, b)| a + b).collect();
        let mut rows: Vec<Vec<i64>> = (0..r)
            .map(|s| (0..n).map(|j| shifted[r * j + s]).collect())
            .collect();
        let mut regular = true;
        for row in rows.iter_mut() {
            row.sort_unstable_by(|a, b| b.cmp(a));
            regular &= row.windows(2).all(|w| w[0] > w[1]);
        }
        if !regular {
            continue;
        }
        let interleaved: Vec<i64> = (0..r * n)
            .map(|idx| rows[idx % r][idx / r] - rho[idx])
            .collect();
        out.insert(Multipartition::from_interleaved(r, n, &interleaved).expect("sorted rows"));
    }
    out
}

/// Decomposition of the Euler characteristic of `O(μ)` through degree
/// `max_degree` against the truncated Weyl-sum polynomials.
pub fn cor33_suite(mu: &Multipartition, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("cor33");
    let euler = euler_characteristic(mu, max_degree)?;
    let parts = decompose_chi(&euler)?;
    let candidates = candidate_lambdas(mu, max_degree);
    let engine = KostkaEngine::new(mu.r(), mu.n());
    for lambda in parts.keys() {
        report.check(candidates.contains(lambda), || {
            format!("μ={mu}: χ^{lambda} occurs outside the candidate set")
        });
    }
    let zero = TPoly::zero(mu.r());
    for lambda in &candidates {
        let expected = engine.kostka(lambda, mu)?.poly.truncate(max_degree);
        let got = parts.get(lambda).unwrap_or(&zero);
        report.check(got == &expected, || {
            format!("μ={mu} λ={lambda}: euler gives {got}, weyl sum {expected}")
        });
    }
    report.note(format!(
        "μ={mu} D={max_degree}: {} characters, {} candidates",
        parts.len(),
        candidates.len()
    ));
    Ok(report)
}

/// Triangularity, positivity and diagonal specialization, gathered in one
/// pass over all ordered pairs.
#[derive(Clone, Debug, Serialize)]
pub struct PropertySweep {
    pub triangularity: Report,
    pub positivity: Report,
    pub specialization: Report,
}

struct PairFacts {
    lambda: Multipartition,
    mu: Multipartition,
    dominates: bool,
    poly: TPoly,
    single: TPoly,
}

/// All ordered pairs with `r ≤ max_r`, total size `≤ max_size`, and
/// `N = max(size, 1)`.
pub fn property_sweep(max_r: usize, max_size: usize, threads: usize) -> Result<PropertySweep> {
    let mut tri = Report::new("triangularity");
    let mut pos = Report::new("positivity");
    let mut spec = Report::new("specialization");
    let mut vanishing = 0u64;
    for r in 1..=max_r {
        for size in 0..=max_size {
            let n = size.max(1);
            let facts = tabulate(
                r,
                n,
                size as i64,
                PairFilter::All,
                threads,
                |engine, l, m| {
                    Ok(PairFacts {
                        lambda: l.clone(),
                        mu: m.clone(),
                        dominates: l.dominates(m)?,
                        poly: engine.kostka(l, m)?.poly,
                        single: engine.kostka_single(l, m)?,
                    })
                },
            )?;
            for f in facts {
                let (l, m, k) = (&f.lambda, &f.mu, &f.poly);
                tri.check(k.is_zero() || f.dominates, || {
                    format!("λ={l} μ={m} not comparable but K = {k}")
                });
                if !f.dominates && k.is_zero() {
                    vanishing += 1;
                }
                let delta = if l == m { 1 } else { 0 };
                tri.check(k.constant_term() == delta.into(), || {
                    format!("λ={l} μ={m}: K(0) = {}", k.constant_term())
                });
                if l == m {
                    tri.check(k.is_one(), || format!("K_λλ = {k} for λ={l}"));
                }
                pos.check(k.is_nonnegative(), || {
                    format!("λ={l} μ={m}: negative terms {:?}", k.negative_terms())
                });
                let diag = k.specialize_diagonal();
                spec.check(diag == f.single, || {
                    format!("λ={l} μ={m}: diagonal {diag}, single-variable {}", f.single)
                });
            }
        }
    }
    tri.note(format!("{vanishing} non-dominant pairs, all with K = 0"));
    Ok(PropertySweep {
        triangularity: tri,
        positivity: pos,
        specialization: spec,
    })
}

/// One verified flag type, for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct WordCheck {
    pub flag_type: FlagType,
    pub blocks: Vec<WordBlock>,
    pub blocks_reduced: bool,
    pub concatenation_reduced: bool,
}

pub fn check_flag_type(ft: &FlagType) -> Result<WordCheck> {
    let d = ft.total_dim();
    let blocks = build_word_sequence(ft)?;
    let blocks_reduced = blocks
        .iter()
        .all(|b| is_reduced(d, &b.word) && b.word.len() == b.expected_length());
    let concatenation_reduced = is_reduced(d, &concatenated_word(&blocks));
    Ok(WordCheck {
        flag_type: ft.clone(),
        blocks,
        blocks_reduced,
        concatenation_reduced,
    })
}

/// `count` random admissible flag types (`d ≤ max_d`, length `≤ max_len`),
/// the standard types for `r, N ≤ max_standard`, and the dimension count for
/// `r, N ≤ max_dims`.
pub fn words_suite(
    seed: u64,
    count: usize,
    max_d: usize,
    max_len: usize,
    max_standard: usize,
    max_dims: usize,
) -> Result<Report> {
    let mut report = Report::new("words");
    report.seed = Some(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut types = Vec::new();
    let mut rejected = 0;
    for _ in 0..count {
        let (ft, rej) = FlagType::random_admissible(&mut rng, max_d, max_len);
        rejected += rej;
        types.push(ft);
    }
    for r in 1..=max_standard {
        for n in 1..=max_standard {
            if r * n >= 2 {
                types.push(FlagType::standard(r, n));
            }
        }
    }
    let mut concatenations = 0;
    for ft in &types {
        let wc = check_flag_type(ft)?;
        report.check(wc.blocks_reduced, || {
            format!("{ft:?}: a block is not reduced")
        });
        concatenations += usize::from(wc.concatenation_reduced);
    }
    for r in 1..=max_dims {
        for n in 1..=max_dims {
            let dc = dims_check(r, n);
            report.check(dc.holds(), || format!("{dc:?}"));
        }
    }
    report.note(format!(
        "{} flag types ({rejected} random draws rejected as inadmissible); full concatenation reduced for {concatenations}",
        types.len()
    ));
    Ok(report)
}

/// `K` on `N` and on `N + 1` (zero-padded) for every dominant pair of the
/// given shape and size; returns the pairs where they differ.
pub fn compare_padding(
    r: usize,
    n: usize,
    total: i64,
) -> Result<BTreeMap<(Multipartition, Multipartition), (TPoly, TPoly)>> {
    let small = KostkaEngine::new(r, n);
    let big = KostkaEngine::new(r, n + 1);
    let parts = enumerate_multipartitions(r, n, total);
    let mut out = BTreeMap::new();
    for l in &parts {
        for m in &parts {
            if !l.dominates(m)? {
                continue;
            }
            let a = small.kostka(l, m)?.poly;
            let b = big.kostka(&l.pad_to(n + 1)?, &m.pad_to(n + 1)?)?.poly;
            if a != b {
                out.insert((l.clone(), m.clone()), (a, b));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn small_suites_pass() {
        assert!(charge_suite(4).unwrap().passed());
        assert!(lemma31_suite(3).passed());
        assert!(lemma32_suite(2, 2, 2, 3).unwrap().passed());
        assert!(cor33_suite(&mp("1,1"), 2).unwrap().passed());
        assert!(words_suite(DEFAULT_SEED, 5, 6, 4, 2, 3).unwrap().passed());
    }

    #[test]
    fn candidates_cover_the_generalized_lambda() {
        let c = candidate_lambdas(&mp("1,1"), 2);
        assert!(c.contains(&mp("1,1")));
        assert!(c.contains(&mp("2,0")));
        assert!(c.contains(&mp("3,-1")));
    }

    #[test]
    fn sweep_small() {
        let s = property_sweep(2, 3, 2).unwrap();
        assert!(s.triangularity.passed());
        assert!(s.positivity.passed());
        assert!(s.specialization.passed());
    }

    #[test]
    fn report_lists_failures() {
        let mut r = Report::new("x");
        r.check(true, || unreachable!());
        r.check(false, || "bad".into());
        assert!(!r.passed());
        assert!(r.to_string().contains("mismatch: bad"));
    }
}
