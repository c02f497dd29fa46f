//! Padding a demand matrix to equal row and column sums.

use crate::model::load_of;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedMatrix {
    pub m: usize,
    pub base: Vec<u64>,
    pub augmented: Vec<u64>,
    /// Common row and column sum of `augmented`; equals the load of `base`.
    pub rho: u64,
}

impl AugmentedMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.augmented[i * self.m + j]
    }

    /// Checks the equal-sum and domination invariants.
    pub fn is_consistent(&self) -> bool {
        let m = self.m;
        if self.base.iter().zip(&self.augmented).any(|(b, a)| a < b) {
            return false;
        }
        (0..m).all(|i| (0..m).map(|j| self.augmented[i * m + j]).sum::<u64>() == self.rho)
            && (0..m).all(|j| (0..m).map(|i| self.augmented[i * m + j]).sum::<u64>() == self.rho)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Augmentation {
    Standard,
    Balanced,
}

pub fn augment_with(m: usize, demand: &[u64], how: Augmentation) -> AugmentedMatrix {
    match how {
        Augmentation::Standard => augment(m, demand),
        Augmentation::Balanced => balanced_augment(m, demand),
    }
}

fn first_min(v: &[u64]) -> usize {
    let mut best = 0;
    for (idx, &x) in v.iter().enumerate() {
        if x < v[best] {
            best = idx;
        }
    }
    best
}

/// Fills `matrix` up to row/column sums `rho`: repeatedly tops up the
/// (lowest-index) minimum row and minimum column at their crossing cell.
fn fill_to(m: usize, matrix: &mut [u64], rho: u64) {
    let mut rows: Vec<u64> = (0..m).map(|i| matrix[i * m..(i + 1) * m].iter().sum()).collect();
    let mut cols: Vec<u64> = (0..m).map(|j| (0..m).map(|i| matrix[i * m + j]).sum()).collect();
    loop {
        let i = first_min(&rows);
        let j = first_min(&cols);
        if rows[i].min(cols[j]) >= rho {
            break;
        }
        let p = (rho - rows[i]).min(rho - cols[j]);
        matrix[i * m + j] += p;
        rows[i] += p;
        cols[j] += p;
    }
}

/// Standard augmentation.
pub fn augment(m: usize, demand: &[u64]) -> AugmentedMatrix {
    let rho = load_of(m, demand);
    let mut augmented = demand.to_vec();
    fill_to(m, &mut augmented, rho);
    AugmentedMatrix {
        m,
        base: demand.to_vec(),
        augmented,
        rho,
    }
}

/// Balanced augmentation: first spread each row deficit `p_i` over columns in
/// proportion to their deficits `q_j` (`floor(p_i q_j / delta)`), then finish
/// with the standard fill.
pub fn balanced_augment(m: usize, demand: &[u64]) -> AugmentedMatrix {
    let rho = load_of(m, demand);
    let rows: Vec<u64> = (0..m).map(|i| demand[i * m..(i + 1) * m].iter().sum()).collect();
    let cols: Vec<u64> = (0..m).map(|j| (0..m).map(|i| demand[i * m + j]).sum()).collect();
    let total: u64 = rows.iter().sum();
    let delta = m as u64 * rho - total;
    let mut augmented = demand.to_vec();
    if delta > 0 {
        for i in 0..m {
            let p = (rho - rows[i]) as u128;
            if p == 0 {
                continue;
            }
            for j in 0..m {
                let q = (rho - cols[j]) as u128;
                augmented[i * m + j] += (p * q / delta as u128) as u64;
            }
        }
    }
    fill_to(m, &mut augmented, rho);
    AugmentedMatrix {
        m,
        base: demand.to_vec(),
        augmented,
        rho,
    }
}
