//! Semistandard tableaux and Schur characters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::laurent::GradedLaurent;

/// A filling of a Young diagram (English notation) by `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    pub shape: Vec<usize>,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|row| row.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .enumerate()
                .all(|(c, &below)| pair[0].get(c).is_some_and(|&above| above < below))
        });
        rows_ok && cols_ok
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// `content[i]` counts the entries equal to `i + 1`.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for &e in self.rows.iter().flatten() {
            c[e - 1] += 1;
        }
        c
    }
}

fn strip_zeros(shape: &[usize]) -> Vec<usize> {
    shape.iter().copied().take_while(|&p| p > 0).collect()
}

/// All semistandard tableaux of `shape` with entries in `1..=n`. When
/// `content` is given, only those with exactly `content[i]` entries `i + 1`.
pub fn semistandard_tableaux(shape: &[usize], n: usize, content: Option<&[usize]>) -> Vec<Tableau> {
    let shape = strip_zeros(shape);
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| (0..len).map(move |j| (i, j)))
        .collect();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut remaining: Vec<usize> = match content {
        Some(c) => {
            let mut c = c.to_vec();
            c.resize(n, 0);
            c
        }
        None => vec![usize::MAX; n],
    };
    let mut out = Vec::new();
    fill(&cells, 0, n, &mut rows, &mut remaining, &shape, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    n: usize,
    rows: &mut Vec<Vec<usize>>,
    remaining: &mut Vec<usize>,
    shape: &[usize],
    out: &mut Vec<Tableau>,
) {
    if k == cells.len() {
        if remaining.iter().all(|&c| c == 0 || c == usize::MAX) {
            out.push(Tableau {
                shape: shape.to_vec(),
                rows: rows.clone(),
            });
        }
        return;
    }
    let (i, j) = cells[k];
    let lo_row = if j > 0 { rows[i][j - 1] } else { 1 };
    let lo_col = if i > 0 { rows[i - 1][j] + 1 } else { 1 };
    for e in lo_row.max(lo_col)..=n {
        if remaining[e - 1] == 0 {
            continue;
        }
        if remaining[e - 1] != usize::MAX {
            remaining[e - 1] -= 1;
        }
        rows[i][j] = e;
        fill(cells, k + 1, n, rows, remaining, shape, out);
        if remaining[e - 1] != usize::MAX {
            remaining[e - 1] += 1;
        }
    }
    rows[i][j] = 0;
}

/// The Schur character of a weakly decreasing integer vector of length `n`
/// in variables `x_1..x_n` (no `t` variables). Negative entries are handled
/// by shifting to a partition and dividing by a power of `x_1 ⋯ x_n`. With
/// `inverted`, every variable is replaced by its inverse, giving the
/// character with lowest weight `-λ`.
pub fn schur_character(lambda: &[i64], inverted: bool) -> GradedLaurent {
    let n = lambda.len();
    let shift = lambda.iter().copied().min().unwrap_or(0).min(0);
    let shape: Vec<usize> = lambda.iter().map(|&p| (p - shift) as usize).collect();
    let mut counts: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for t in semistandard_tableaux(&shape, n, None) {
        let mut x: Vec<i64> = t.content(n).iter().map(|&c| c as i64 + shift).collect();
        if inverted {
            x.iter_mut().for_each(|e| *e = -*e);
        }
        *counts.entry(x).or_default() += BigInt::one();
    }
    GradedLaurent::from_terms(n, 0, None, counts.into_iter().map(|(x, c)| (vec![], x, c)))
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka_number(lambda: &[usize], mu: &[usize]) -> usize {
    let n = mu.len().max(1);
    semistandard_tableaux(lambda, n, Some(mu)).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(&[i64], i64)]) -> GradedLaurent {
        let n = terms[0].0.len();
        GradedLaurent::from_terms(
            n,
            0,
            None,
            terms
                .iter()
                .map(|(x, c)| (vec![], x.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn schur_examples() {
        assert_eq!(
            schur_character(&[1, 0], false),
            lp(&[(&[1, 0], 1), (&[0, 1], 1)])
        );
        assert_eq!(schur_character(&[1, 1], false), lp(&[(&[1, 1], 1)]));
        assert_eq!(
            schur_character(&[2, 0], false),
            lp(&[(&[2, 0], 1), (&[1, 1], 1), (&[0, 2], 1)])
        );
    }

    #[test]
    fn schur_negative_and_inverted() {
        assert_eq!(
            schur_character(&[1, 0], true),
            lp(&[(&[-1, 0], 1), (&[0, -1], 1)])
        );
        // (0,-2) is (2,0) divided by (x1 x2)^2
        assert_eq!(
            schur_character(&[0, -2], false),
            lp(&[(&[0, -2], 1), (&[-1, -1], 1), (&[-2, 0], 1)])
        );
    }

    #[test]
    fn pieri_check() {
        for n in 2..=4 {
            let mut one = vec![0; n];
            one[0] = 1;
            let s1 = schur_character(&one, false);
            let mut two = vec![0; n];
            two[0] = 2;
            let mut eleven = vec![0; n];
            eleven[0] = 1;
            eleven[1] = 1;
            let lhs = s1.try_mul(&s1).unwrap();
            let rhs = schur_character(&two, false)
                .try_add(&schur_character(&eleven, false))
                .unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn tableau_counts() {
        // standard Young tableaux of shape (3,2) number 5
        assert_eq!(kostka_number(&[3, 2], &[1, 1, 1, 1, 1]), 5);
        assert_eq!(kostka_number(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(kostka_number(&[2], &[1, 1]), 1);
        assert_eq!(kostka_number(&[1, 1], &[2]), 0);
        // too many rows for the alphabet
        assert!(semistandard_tableaux(&[1, 1, 1], 2, None).is_empty());
        for t in semistandard_tableaux(&[3, 2, 1], 3, None) {
            assert!(t.is_semistandard());
        }
    }
}
