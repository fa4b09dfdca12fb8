//! The Lascoux–Schützenberger charge statistic and the classical
//! Kostka–Foulkes polynomials it generates.

use crate::characters::tableau::semistandard_tableaux;
use crate::poly::TPoly;

/// Charge of a word whose content is a partition (at least as many 1s as 2s,
/// and so on).
///
/// Standard subwords are peeled off one at a time: scanning leftwards and
/// cyclically from the right end, pick a 1, then a 2, and so on. The index
/// of the letter `k + 1` equals that of `k`, plus one if the scan had to
/// wrap around to find it. The charge is the sum of all indices.
pub fn charge(word: &[usize]) -> u32 {
    let len = word.len();
    let mut used = vec![false; len];
    let mut total = 0u32;
    while used.iter().any(|u| !u) {
        let mut pos = len;
        let mut index = 0u32;
        let mut letter = 1;
        loop {
            let found = (1..=len)
                .map(|step| (pos + len - step) % len)
                .find(|&p| !used[p] && word[p] == letter);
            let Some(p) = found else { break };
            if letter > 1 && p > pos {
                index += 1;
            }
            total += index;
            used[p] = true;
            pos = p;
            letter += 1;
        }
        if letter == 1 {
            // no 1 left: the content was not a partition
            break;
        }
    }
    total
}

/// `K_{λμ}(t) = Σ_T t^{charge(T)}` over semistandard tableaux of shape `λ`
/// and content `μ`. Trailing zeros in either argument are ignored.
pub fn kostka_foulkes_charge(lambda: &[usize], mu: &[usize]) -> TPoly {
    let mu: Vec<usize> = mu.iter().copied().take_while(|&m| m > 0).collect();
    let lambda_size: usize = lambda.iter().sum();
    if lambda_size != mu.iter().sum::<usize>() {
        return TPoly::zero(1);
    }
    let n = mu.len().max(1);
    let mut out = TPoly::zero(1);
    for t in semistandard_tableaux(lambda, n, Some(&mu)) {
        out.add_term(vec![charge(&t.reading_word())], 1.into());
    }
    out
}
