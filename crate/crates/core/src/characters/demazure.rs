//! Demazure operators and the Euler characteristic of `O(μ)` on the
//! vector bundle with fiber `n_r`, decomposed into irreducible characters.
//!
//! Variables are interleaved: `x_j^(s)` sits at (0-based) index
//! `r(j-1) + s - 1`, so component `s` owns indices `s-1, s-1+r, ...`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::characters::tableau::schur_character;
use crate::error::{Error, Result};
use crate::kostka::KostkaEngine;
use crate::laurent::GradedLaurent;
use crate::multipartition::Multipartition;
use crate::poly::TPoly;
use crate::pseudoroots::PseudorootSystem;

/// `χ^λ`: the product over components of the Schur character with lowest
/// weight `-λ^(s)`, in that component's interleaved variables. The result
/// carries `r` (unused) `t` variables so it combines with graded series.
pub fn chi(lambda: &Multipartition) -> GradedLaurent {
    let (r, n) = (lambda.r(), lambda.n());
    let mut out = GradedLaurent::one(r * n, r);
    for s in 0..r {
        let local = schur_character(lambda.component(s), true);
        let placed = GradedLaurent::from_terms(
            r * n,
            r,
            None,
            local.terms().map(|(_, x, c)| {
                let mut y = vec![0; r * n];
                for (j, &e) in x.iter().enumerate() {
                    y[r * j + s] = e;
                }
                (vec![0; r], y, c.clone())
            }),
        );
        out = out.try_mul(&placed).expect("same shape");
    }
    out
}

/// `π_i f = (x_a f - x_b s_i f) / (x_a - x_b)` where `x_a, x_b` are the
/// `i`-th and `(i+1)`-th variables of `component` (both 1-based) and `s_i`
/// swaps them. The number of components is `f.r()`.
///
/// On a monomial `x_a^p x_b^q` the quotient is a telescoped sum:
/// `x_a^q x_b^q h_{p-q}(x_a, x_b)` for `p ≥ q`, zero for `p = q - 1`, and
/// `-x_a^{p+1} x_b^{p+1} h_{q-p-2}(x_a, x_b)` for `p < q - 1`.
pub fn demazure_pi(f: &GradedLaurent, component: usize, i: usize) -> GradedLaurent {
    let r = f.r();
    let n = f.nx() / r;
    assert!(component >= 1 && component <= r, "component out of range");
    assert!(i >= 1 && i < n, "Demazure index out of range");
    let a = r * (i - 1) + component - 1;
    let b = a + r;

    let mut out = GradedLaurent::zero(f.nx(), r);
    if let Some(d) = f.truncation() {
        out = out.with_truncation(d);
    }
    for (t, x, c) in f.terms() {
        let (p, q) = (x[a], x[b]);
        let (low, span, sign) = if p >= q {
            (q, p - q, 1)
        } else if p == q - 1 {
            continue;
        } else {
            (p + 1, q - p - 2, -1)
        };
        for j in 0..=span {
            let mut y = x.clone();
            y[a] = low + j;
            y[b] = low + span - j;
            let coeff: BigInt = if sign > 0 { c.clone() } else { -c };
            out.add_term(t.clone(), y, coeff);
        }
    }
    out
}

/// Staircase reduced word `1; 2 1; 3 2 1; ...` of the longest element of
/// `S_n`.
pub fn staircase_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|k| (1..=k).rev()).collect()
}

/// Applies `π` along `word` (rightmost letter first) in one component.
pub fn demazure_word(f: &GradedLaurent, component: usize, word: &[usize]) -> GradedLaurent {
    word.iter()
        .rev()
        .fold(f.clone(), |acc, &i| demazure_pi(&acc, component, i))
}

/// The full Demazure symmetrizer `π_{w_0}` in every component.
pub fn symmetrize(f: &GradedLaurent) -> GradedLaurent {
    let r = f.r();
    let word = staircase_word(f.nx() / r);
    (1..=r).fold(f.clone(), |acc, s| demazure_word(&acc, s, &word))
}

/// Per-component reversal `x_j^(s) ↔ x_{N+1-j}^(s)` as an index map.
fn reversal(r: usize, n: usize) -> Vec<usize> {
    (0..r * n)
        .map(|idx| {
            let (j, s) = (idx / r, idx % r);
            r * (n - 1 - j) + s
        })
        .collect()
}

/// The integrand before symmetrization: the fiber character
/// `∏ (x_j^(s))^{-μ_j^(s)}` times the truncated character of `Sym n_r^∨`,
/// `∏ (1 - t_{color} x_m^{-1} x_n)^{-1}`.
pub fn integrand(mu: &Multipartition, max_degree: u32) -> Result<GradedLaurent> {
    let (r, n) = (mu.r(), mu.n());
    let fiber: Vec<i64> = mu.interleave().iter().map(|e| -e).collect();
    let mut f = GradedLaurent::monomial(fiber, vec![0; r], 1).with_truncation(max_degree);
    for root in PseudorootSystem::build(r, n).roots() {
        let mut xw = vec![0; r * n];
        xw[root.m - 1] -= 1;
        xw[root.n - 1] += 1;
        f = f.geom_inverse_factor(&xw, root.color)?;
    }
    Ok(f)
}

fn euler_uncalibrated(mu: &Multipartition, max_degree: u32) -> Result<GradedLaurent> {
    let f = integrand(mu, max_degree)?;
    // The integrand is written in lowest-weight form; the reversal turns the
    // symmetrizer below into its lowest-weight counterpart.
    let reflected = f.permute_x(&reversal(mu.r(), mu.n()));
    Ok(symmetrize(&reflected))
}

/// Equivariant Euler characteristic of `O(μ)` on the total space, through
/// `t`-degree `max_degree`. Checks the calibration anchors before returning.
pub fn euler_characteristic(mu: &Multipartition, max_degree: u32) -> Result<GradedLaurent> {
    calibration()?;
    let zeroth = euler_uncalibrated(mu, 0)?;
    if zeroth != chi(mu).with_truncation(0) {
        return Err(Error::Calibration(format!(
            "degree-0 part for {mu} is {zeroth}, not its character"
        )));
    }
    euler_uncalibrated(mu, max_degree)
}

/// Anchors fixing the orientation conventions: the degree-0 part of the
/// Euler characteristic of `O(1,1)` for `r = 1, N = 2` is `χ^{(1,1)}`, and its
/// decomposition through degree 2 agrees with the Weyl-sum polynomials.
pub fn calibration() -> Result<()> {
    static RESULT: OnceLock<Result<()>> = OnceLock::new();
    RESULT
        .get_or_init(|| {
            let mu: Multipartition = "1,1".parse()?;
            let zeroth = euler_uncalibrated(&mu, 0)?;
            if zeroth != chi(&mu).with_truncation(0) {
                return Err(Error::Calibration(format!("degree 0 gave {zeroth}")));
            }
            let full = euler_uncalibrated(&mu, 2)?;
            let parts = decompose_chi(&full)?;
            let engine = KostkaEngine::new(1, 2);
            let mut expected = BTreeMap::new();
            for lambda in ["1,1", "2,0", "3,-1"] {
                let lambda: Multipartition = lambda.parse()?;
                expected.insert(lambda.clone(), engine.kostka(&lambda, &mu)?.poly);
            }
            if parts != expected {
                return Err(Error::Calibration(format!(
                    "decomposition {parts:?} does not match {expected:?}"
                )));
            }
            Ok(())
        })
        .clone()
}

/// Writes a per-component symmetric `f` as `Σ_λ c_λ(t) χ^λ`.
///
/// The antidominant monomial `x^{-λ}` with `λ` lexicographically largest is
/// the lowest weight of a character occurring in `f`, with coefficient
/// exactly `c_λ`; it is peeled off and the search repeats.
pub fn decompose_chi(f: &GradedLaurent) -> Result<BTreeMap<Multipartition, TPoly>> {
    let r = f.r();
    if r == 0 || !f.nx().is_multiple_of(r) {
        return Err(Error::NotACharacter);
    }
    let n = f.nx() / r;
    let cap = f.len() + 1;
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    for _ in 0..cap {
        if rest.is_zero() {
            return Ok(out);
        }
        let top = rest
            .terms()
            .filter(|(_, x, _)| is_antidominant(x, r, n))
            .map(|(_, x, _)| {
                let neg: Vec<i64> = x.iter().map(|e| -e).collect();
                Multipartition::from_interleaved(r, n, &neg).expect("antidominant")
            })
            .max()
            .ok_or(Error::NotACharacter)?;
        let lowest: Vec<i64> = top.interleave().iter().map(|e| -e).collect();
        let coeff = TPoly::from_terms(
            r,
            rest.terms()
                .filter(|(_, x, _)| **x == lowest)
                .map(|(t, _, c)| (t.clone(), c.clone())),
        )?;
        let piece = chi(&top).mul_tpoly(&coeff)?;
        rest = rest.try_sub(&piece)?;
        out.insert(top, coeff);
    }
    if rest.is_zero() {
        Ok(out)
    } else {
        Err(Error::PeelingCap(cap))
    }
}

/// Every component's exponents weakly increase.
fn is_antidominant(x: &[i64], r: usize, n: usize) -> bool {
    (0..r).all(|s| (1..n).all(|j| x[r * (j - 1) + s] <= x[r * j + s]))
}

/// Degree-`max_degree` truncation of `Σ_λ K_{λμ} χ^λ` over the given `λ`.
pub fn expected_euler(
    engine: &KostkaEngine,
    lambdas: &[Multipartition],
    mu: &Multipartition,
    max_degree: u32,
) -> Result<GradedLaurent> {
    let (r, n) = (mu.r(), mu.n());
    let mut out = GradedLaurent::zero(r * n, r).with_truncation(max_degree);
    for lambda in lambdas {
        let k = engine.kostka(lambda, mu)?.poly.truncate(max_degree);
        out = out.try_add(&chi(lambda).mul_tpoly(&k)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn lp(nx: usize, r: usize, terms: &[(&[u32], &[i64], i64)]) -> GradedLaurent {
        GradedLaurent::from_terms(
            nx,
            r,
            None,
            terms
                .iter()
                .map(|(t, x, c)| (t.to_vec(), x.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&Multipartition::zero(2, 2)), GradedLaurent::one(4, 2));
        assert_eq!(chi(&mp("1|0")), lp(2, 2, &[(&[0, 0], &[-1, 0], 1)]));
        assert_eq!(
            chi(&mp("1,0")),
            lp(2, 1, &[(&[0], &[-1, 0], 1), (&[0], &[0, -1], 1)])
        );
        // second component uses the odd interleaved slots
        assert_eq!(
            chi(&mp("0,0|1,0")),
            lp(
                4,
                2,
                &[(&[0, 0], &[0, -1, 0, 0], 1), (&[0, 0], &[0, 0, 0, -1], 1)]
            )
        );
    }

    #[test]
    fn demazure_examples() {
        let one = GradedLaurent::one(2, 1);
        assert_eq!(demazure_pi(&one, 1, 1), one);
        let x1 = lp(2, 1, &[(&[0], &[1, 0], 1)]);
        let x2 = lp(2, 1, &[(&[0], &[0, 1], 1)]);
        assert_eq!(demazure_pi(&x1, 1, 1), x1.try_add(&x2).unwrap());
        assert!(demazure_pi(&x2, 1, 1).is_zero());
        // p < q - 1: (x1 x2^2 - x2 x1^2)/(x1 - x2) = -x1 x2
        let f = lp(2, 1, &[(&[0], &[0, 2], 1)]);
        assert_eq!(demazure_pi(&f, 1, 1), lp(2, 1, &[(&[0], &[1, 1], -1)]));
    }

    #[test]
    fn staircase() {
        assert_eq!(staircase_word(1), Vec::<usize>::new());
        assert_eq!(staircase_word(3), vec![1, 2, 1]);
        assert_eq!(staircase_word(4).len(), 6);
    }

    #[test]
    fn calibration_anchors_hold() {
        calibration().unwrap();
    }

    #[test]
    fn degree_zero_is_the_character() {
        for s in ["1,1", "0,0|1,0", "2,1,0", "1,0|0,0"] {
            let mu = mp(s);
            let e = euler_characteristic(&mu, 0).unwrap();
            assert_eq!(e, chi(&mu).with_truncation(0), "{s}");
        }
    }

    #[test]
    fn euler_examples() {
        let mu = mp("1,1");
        let e = euler_characteristic(&mu, 2).unwrap();
        let parts = decompose_chi(&e).unwrap();
        assert_eq!(parts[&mp("1,1")], TPoly::one(1));
        assert_eq!(parts[&mp("2,0")], TPoly::var(1, 1));
        // the generalized λ = (3,-1) contributes at degree 2
        assert_eq!(parts[&mp("3,-1")], TPoly::monomial(vec![2], 1));
        assert_eq!(parts.len(), 3);

        let mu = mp("0|1");
        let e = euler_characteristic(&mu, 1).unwrap();
        let expected = chi(&mu)
            .try_add(&chi(&mp("1|0")).mul_tpoly(&TPoly::var(2, 1)).unwrap())
            .unwrap()
            .with_truncation(1);
        assert_eq!(e, expected);
    }

    #[test]
    fn decompose_examples() {
        let l = mp("2,1|1,0");
        let parts = decompose_chi(&chi(&l)).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts[&l].is_one());

        let f = chi(&mp("1,1"))
            .try_add(&chi(&mp("2,0")).mul_tpoly(&TPoly::var(1, 1)).unwrap())
            .unwrap();
        let parts = decompose_chi(&f).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[&mp("1,1")].is_one());
        assert_eq!(parts[&mp("2,0")], TPoly::var(1, 1));
    }

    #[test]
    fn decompose_rejects_non_symmetric() {
        let f = lp(2, 1, &[(&[0], &[1, 0], 1)]);
        assert_eq!(decompose_chi(&f), Err(Error::NotACharacter));
    }
}
