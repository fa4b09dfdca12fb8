//! Kostka–Shoji polynomials through the alternating Weyl-group sum
//!
//! ```text
//! K_{λμ}(t_1..t_r) = Σ_{σ ∈ S_N^r} sign(σ) · L^{σ(λ+ρ) - ρ - μ}(t_1..t_r)
//! ```
//!
//! with `ρ = (N, ..., 1)` in every component. The sum is enumerated as a
//! depth-first search over interleaved positions: at each position the
//! running prefix sum of `σ(λ+ρ) - ρ - μ` is a coordinate of the alpha
//! vector, and a negative value kills the whole subtree because `L` vanishes
//! off the positive cone.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multipartition::{enumerate_multipartitions, signed_weyl_images, Multipartition};
use crate::poly::TPoly;
use crate::pseudoroots::{Grading, PartitionFunction, PseudorootSystem};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KostkaMeta {
    /// Weyl-group elements that survived pruning and reached an `L` call.
    pub weyl_terms: u64,
    pub l_lookups: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostkaResult {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub poly: TPoly,
    pub meta: KostkaMeta,
}

/// Evaluator for one shape `(r, N)`, holding memoized partition functions
/// for both gradings.
pub struct KostkaEngine {
    r: usize,
    n: usize,
    rho: Multipartition,
    colored: PartitionFunction,
    single: PartitionFunction,
}

impl KostkaEngine {
    pub fn new(r: usize, n: usize) -> Self {
        let system = PseudorootSystem::build(r, n);
        KostkaEngine {
            r,
            n,
            rho: Multipartition::rho(r, n),
            colored: PartitionFunction::new(system.clone(), Grading::Colored),
            single: PartitionFunction::new(system, Grading::Single),
        }
    }

    /// Same shape, empty memo tables.
    pub fn fresh(&self) -> Self {
        KostkaEngine {
            r: self.r,
            n: self.n,
            rho: self.rho.clone(),
            colored: self.colored.fresh(),
            single: self.single.fresh(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, lambda: &Multipartition, mu: &Multipartition) -> Result<()> {
        lambda.check_shape(mu)?;
        if lambda.r() != self.r || lambda.n() != self.n {
            return Err(Error::ShapeMismatch {
                r1: lambda.r(),
                n1: lambda.n(),
                r2: self.r,
                n2: self.n,
            });
        }
        if lambda.total() != mu.total() {
            return Err(Error::TotalMismatch(lambda.total(), mu.total()));
        }
        Ok(())
    }

    /// `K_{λμ}(t_1, ..., t_r)`.
    pub fn kostka(&self, lambda: &Multipartition, mu: &Multipartition) -> Result<KostkaResult> {
        self.check(lambda, mu)?;
        let start = Instant::now();
        let before = self.colored.lookups();
        let (poly, weyl_terms) = self.weyl_sum(lambda, mu, &self.colored)?;
        Ok(KostkaResult {
            lambda: lambda.clone(),
            mu: mu.clone(),
            poly,
            meta: KostkaMeta {
                weyl_terms,
                l_lookups: self.colored.lookups() - before,
                elapsed: start.elapsed(),
            },
        })
    }

    /// `K_{λμ}(t)`, evaluated with the uncolored partition function rather
    /// than by specializing [`KostkaEngine::kostka`].
    pub fn kostka_single(&self, lambda: &Multipartition, mu: &Multipartition) -> Result<TPoly> {
        self.check(lambda, mu)?;
        Ok(self.weyl_sum(lambda, mu, &self.single)?.0)
    }

    /// Plain enumeration of all `(N!)^r` Weyl images, no pruning.
    pub fn kostka_unpruned(&self, lambda: &Multipartition, mu: &Multipartition) -> Result<TPoly> {
        self.check(lambda, mu)?;
        let shifted = lambda.add(&self.rho)?.interleave();
        let rho = self.rho.interleave();
        let mu = mu.interleave();
        let mut acc = TPoly::zero(self.r);
        for (sign, image) in signed_weyl_images(self.r, self.n, &shifted) {
            let mut alpha = Vec::with_capacity(image.len() - 1);
            let mut sum = 0;
            for p in 0..image.len() - 1 {
                sum += image[p] - rho[p] - mu[p];
                alpha.push(sum);
            }
            acc.add_scaled(&self.colored.eval_coords(&alpha), sign)?;
        }
        Ok(acc)
    }

    fn weyl_sum(
        &self,
        lambda: &Multipartition,
        mu: &Multipartition,
        pf: &PartitionFunction,
    ) -> Result<(TPoly, u64)> {
        let shifted = lambda.add(&self.rho)?;
        let target: Vec<i64> = self
            .rho
            .interleave()
            .iter()
            .zip(mu.interleave())
            .map(|(a, b)| a + b)
            .collect();
        let mut search = WeylSearch {
            r: self.r,
            values: shifted.rows().to_vec(),
            target,
            used: vec![vec![false; self.n]; self.r],
            alpha: vec![0; self.r * self.n - 1],
            pf,
            acc: TPoly::zero(pf.nvars()),
            terms: 0,
        };
        search.descend(0, 0, 1);
        Ok((search.acc, search.terms))
    }
}

struct WeylSearch<'a> {
    r: usize,
    /// Per-component entries of `λ + ρ`.
    values: Vec<Vec<i64>>,
    /// Interleaved `ρ + μ`.
    target: Vec<i64>,
    used: Vec<Vec<bool>>,
    alpha: Vec<i64>,
    pf: &'a PartitionFunction,
    acc: TPoly,
    terms: u64,
}

impl WeylSearch<'_> {
    fn descend(&mut self, pos: usize, sum: i64, sign: i32) {
        let len = self.target.len();
        if pos == len {
            debug_assert_eq!(sum, 0, "totals must cancel");
            self.terms += 1;
            let l = self.pf.eval_coords(&self.alpha);
            self.acc.add_scaled(&l, sign).expect("same grading");
            return;
        }
        let s = pos % self.r;
        let n = self.values[s].len();
        for idx in 0..n {
            if self.used[s][idx] {
                continue;
            }
            let next = sum + self.values[s][idx] - self.target[pos];
            if pos + 1 < len && next < 0 {
                continue;
            }
            // indices already placed in this component that exceed idx
            let inversions = (idx + 1..n).filter(|&k| self.used[s][k]).count();
            let sign = if inversions % 2 == 0 { sign } else { -sign };
            self.used[s][idx] = true;
            if pos + 1 < len {
                self.alpha[pos] = next;
            }
            self.descend(pos + 1, next, sign);
            self.used[s][idx] = false;
        }
    }
}

/// `K_{λμ}(t_1, ..., t_r)` with a one-off engine.
pub fn kostka(lambda: &Multipartition, mu: &Multipartition) -> Result<KostkaResult> {
    lambda.check_shape(mu)?;
    KostkaEngine::new(lambda.r(), lambda.n()).kostka(lambda, mu)
}

/// `K_{λμ}(t)` with a one-off engine.
pub fn kostka_single(lambda: &Multipartition, mu: &Multipartition) -> Result<TPoly> {
    lambda.check_shape(mu)?;
    KostkaEngine::new(lambda.r(), lambda.n()).kostka_single(lambda, mu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub poly: TPoly,
}

impl TableRow {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
            "poly": self.poly.to_json(),
        })
    }

    pub fn to_csv_line(&self) -> String {
        format!("\"{}\",\"{}\",{}", self.lambda, self.mu, self.poly)
    }
}

/// Which ordered pairs a table covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairFilter {
    /// Only `λ ≥ μ`.
    Dominant,
    /// Every ordered pair of equal total.
    All,
}

/// Evaluates `f` on every selected pair of multipartitions of shape
/// `(r, n)` and size `total`, on a pool of `threads` workers. Output is
/// sorted by `(λ, μ)` regardless of the thread count.
pub fn tabulate<T, F>(
    r: usize,
    n: usize,
    total: i64,
    filter: PairFilter,
    threads: usize,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&KostkaEngine, &Multipartition, &Multipartition) -> Result<T> + Sync,
{
    let parts = enumerate_multipartitions(r, n, total);
    let mut pairs = Vec::new();
    for lambda in &parts {
        for mu in &parts {
            if filter == PairFilter::All || lambda.dominates(mu)? {
                pairs.push((lambda.clone(), mu.clone()));
            }
        }
    }
    pairs.sort();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
    let template = KostkaEngine::new(r, n);
    pool.install(|| {
        pairs
            .par_iter()
            .map_init(|| template.fresh(), |engine, (l, m)| f(engine, l, m))
            .collect()
    })
}

/// `λ ≥ μ ↦ K_{λμ}` over all multipartitions of shape `(r, n)` and size
/// `total`.
pub fn kostka_table(r: usize, n: usize, total: i64, threads: usize) -> Result<Vec<TableRow>> {
    tabulate(
        r,
        n,
        total,
        PairFilter::Dominant,
        threads,
        |engine, l, m| {
            Ok(TableRow {
                lambda: l.clone(),
                mu: m.clone(),
                poly: engine.kostka(l, m)?.poly,
            })
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn t1(exps: &[(u32, i64)]) -> TPoly {
        TPoly::from_terms(1, exps.iter().map(|&(e, c)| (vec![e], c))).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(kostka(&mp("2,0"), &mp("1,1")).unwrap().poly, t1(&[(1, 1)]));
        assert_eq!(
            kostka(&mp("2,1,0"), &mp("1,1,1")).unwrap().poly,
            t1(&[(1, 1), (2, 1)])
        );
        assert_eq!(
            kostka(&mp("1|0"), &mp("0|1")).unwrap().poly,
            TPoly::var(2, 1)
        );
        assert_eq!(
            kostka(&mp("2|0"), &mp("0|2")).unwrap().poly,
            TPoly::monomial(vec![2, 0], 1)
        );
    }

    #[test]
    fn diagonal_entries_are_one() {
        for s in ["1,0|1,0", "3,1,0|2,0,0", "2,2|0,-1", "0,0,0"] {
            let l = mp(s);
            assert!(kostka(&l, &l).unwrap().poly.is_one(), "{s}");
        }
        assert!(kostka_single(&mp("1,0|1,0"), &mp("1,0|1,0"))
            .unwrap()
            .is_one());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            kostka(&mp("2,0"), &mp("1,0")),
            Err(Error::TotalMismatch(2, 1))
        ));
        assert!(matches!(
            kostka(&mp("2,0"), &mp("1|1")),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn pruned_matches_unpruned() {
        for (r, n, total) in [(1, 3, 3), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let engine = KostkaEngine::new(r, n);
            let parts = enumerate_multipartitions(r, n, total);
            for l in &parts {
                for m in &parts {
                    assert_eq!(
                        engine.kostka(l, m).unwrap().poly,
                        engine.kostka_unpruned(l, m).unwrap(),
                        "{l} / {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn generalized_entries() {
        // λ = (3,-1) ≥ μ = (1,1): only α = 2δ_1 survives
        assert_eq!(kostka(&mp("3,-1"), &mp("1,1")).unwrap().poly, t1(&[(2, 1)]));
    }

    #[test]
    fn table_examples() {
        let rows = kostka_table(1, 2, 2, 1).unwrap();
        let got: Vec<(String, String, String)> = rows
            .iter()
            .map(|r| (r.lambda.to_string(), r.mu.to_string(), r.poly.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("1,1".into(), "1,1".into(), "1".into()),
                ("2,0".into(), "1,1".into(), "t".into()),
                ("2,0".into(), "2,0".into(), "1".into()),
            ]
        );

        let rows = kostka_table(2, 1, 0, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].poly.is_one());

        let rows = kostka_table(2, 1, 1, 2).unwrap();
        let got: Vec<String> = rows
            .iter()
            .map(|r| format!("{} {} {}", r.lambda, r.mu, r.poly))
            .collect();
        assert_eq!(got, vec!["0|1 0|1 1", "1|0 0|1 t1", "1|0 1|0 1"]);
    }

    #[test]
    fn meta_counts() {
        let res = kostka(&mp("2,1,0"), &mp("1,1,1")).unwrap();
        assert!(res.meta.weyl_terms >= 1 && res.meta.weyl_terms <= 6);
        assert_eq!(res.meta.l_lookups, res.meta.weyl_terms);
    }
}
