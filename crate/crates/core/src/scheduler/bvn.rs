//! Integer Birkhoff-von Neumann decomposition.
//!
//! A matrix with equal row and column sums always has a perfect matching on
//! its support (Hall's condition), so it peels into permutations held for
//! integer durations. The matching is found by augmenting paths with
//! ascending vertex scans; after each subtraction only the pairs whose entry
//! dropped to zero are re-matched.

use thiserror::Error;

use super::augment::AugmentedMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvnTerm {
    /// `perm[i]` is the output matched to input `i`.
    pub perm: Vec<usize>,
    pub duration: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvnDecomposition {
    pub m: usize,
    pub terms: Vec<BvnTerm>,
}

impl BvnDecomposition {
    pub fn total_duration(&self) -> u64 {
        self.terms.iter().map(|t| t.duration).sum()
    }

    /// `sum_q q * Pi_q` as a row-major matrix.
    pub fn reconstruct(&self) -> Vec<u64> {
        let m = self.m;
        let mut out = vec![0u64; m * m];
        for t in &self.terms {
            for (i, &j) in t.perm.iter().enumerate() {
                out[i * m + j] += t.duration;
            }
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("no perfect matching on the support; matrix rows/columns are not balanced")]
    NoPerfectMatching,
}

struct Matcher<'a> {
    m: usize,
    support: &'a [u64],
    match_of_out: Vec<usize>,
    match_of_in: Vec<usize>,
    seen: Vec<bool>,
}

impl Matcher<'_> {
    fn try_augment(&mut self, i: usize) -> bool {
        for j in 0..self.m {
            if self.support[i * self.m + j] == 0 || self.seen[j] {
                continue;
            }
            self.seen[j] = true;
            let holder = self.match_of_out[j];
            if holder == usize::MAX || self.try_augment(holder) {
                self.match_of_out[j] = i;
                self.match_of_in[i] = j;
                return true;
            }
        }
        false
    }
}

pub fn bvn_decompose(a: &AugmentedMatrix) -> Result<BvnDecomposition, DecompositionError> {
    decompose_balanced(a.m, &a.augmented)
}

/// Decomposes any nonnegative integer matrix with equal row and column sums.
pub fn decompose_balanced(m: usize, matrix: &[u64]) -> Result<BvnDecomposition, DecompositionError> {
    let mut rest = matrix.to_vec();
    let mut terms = Vec::new();
    let mut match_of_in = vec![usize::MAX; m];
    let mut match_of_out = vec![usize::MAX; m];
    while rest.iter().any(|&v| v > 0) {
        for i in 0..m {
            let j = match_of_in[i];
            if j != usize::MAX && rest[i * m + j] == 0 {
                match_of_in[i] = usize::MAX;
                match_of_out[j] = usize::MAX;
            }
        }
        let mut matcher = Matcher {
            m,
            support: &rest,
            match_of_out,
            match_of_in,
            seen: vec![false; m],
        };
        for i in 0..m {
            if matcher.match_of_in[i] == usize::MAX {
                matcher.seen.iter_mut().for_each(|s| *s = false);
                if !matcher.try_augment(i) {
                    return Err(DecompositionError::NoPerfectMatching);
                }
            }
        }
        match_of_in = matcher.match_of_in;
        match_of_out = matcher.match_of_out;
        let q = (0..m)
            .map(|i| rest[i * m + match_of_in[i]])
            .min()
            .unwrap_or(0);
        for i in 0..m {
            rest[i * m + match_of_in[i]] -= q;
        }
        terms.push(BvnTerm {
            perm: match_of_in.clone(),
            duration: q,
        });
    }
    Ok(BvnDecomposition { m, terms })
}
