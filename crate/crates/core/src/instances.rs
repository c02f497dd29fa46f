//! Instance generators: random synthetic coflows, release times, the
//! diagonal/spread pair, and the adversarial families for greedy orderings.
//!
//! All randomness comes from `ChaCha8Rng` seeded with `seed_from_u64`, so an
//! instance is a pure function of its parameters and seed.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{ModelError, UnknownTag};
use crate::model::{CoflowMatrix, Instance, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Density {
    /// `m` nonzero flows per coflow.
    Sparse,
    /// All `m^2` flows nonzero.
    Dense,
    /// Uniform on `m..=m^2` flows.
    Uniform,
}

impl Density {
    pub const ALL: [Density; 3] = [Density::Sparse, Density::Dense, Density::Uniform];

    pub fn name(self) -> &'static str {
        match self {
            Density::Sparse => "sparse",
            Density::Dense => "dense",
            Density::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Density {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sparse" => Ok(Density::Sparse),
            "dense" => Ok(Density::Dense),
            "uniform" => Ok(Density::Uniform),
            _ => Err(UnknownTag {
                kind: "density",
                value: s.to_string(),
            }),
        }
    }
}

pub const MAX_FLOW_SIZE: u64 = 100;

/// `n` coflows on `m` ports with flow sizes uniform on `1..=100`, unit weights
/// and zero releases.
pub fn generate_synthetic(
    m: usize,
    n: usize,
    density: Density,
    seed: u64,
) -> Result<Instance, ModelError> {
    if m == 0 {
        return Err(ModelError::ZeroPorts);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = m * m;
    let mut coflows = Vec::with_capacity(n);
    for k in 0..n {
        let flows = match density {
            Density::Sparse => m,
            Density::Dense => cells,
            Density::Uniform => rng.gen_range(m..=cells),
        };
        let mut demand = vec![0u64; cells];
        for cell in sample(&mut rng, cells, flows) {
            demand[cell] = rng.gen_range(1..=MAX_FLOW_SIZE);
        }
        coflows.push(CoflowMatrix::new(k + 1, m, demand, Rational::from_integer(1), 0)?);
    }
    Instance::new(m, coflows, format!("synthetic m={m} n={n} density={density} seed={seed}"))
}

/// Assigns weights as a random permutation of `1..=n`.
pub fn with_permutation_weights(instance: &Instance, seed: u64) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<i128> = (1..=instance.len() as i128).collect();
    weights.shuffle(&mut rng);
    let mut next = weights.into_iter();
    let out = instance.map_coflows(|c| {
        c.clone()
            .with_weight(Rational::from_integer(next.next().expect("one weight per coflow")))
    })?;
    Ok(out.with_label(format!("{} weights=perm:{seed}", instance.label())))
}

/// Releases as cumulative sums of gaps drawn uniformly from `lo..=hi`, in
/// instance order. The first coflow is released at its own gap.
pub fn with_release_gaps(
    instance: &Instance,
    lo: u64,
    hi: u64,
    seed: u64,
) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = 0u64;
    let out = instance.map_coflows(|c| {
        r += if hi == 0 { 0 } else { rng.gen_range(lo..=hi) };
        Ok(c.clone().with_release(r))
    })?;
    Ok(out.with_label(format!("{} gaps={lo}..{hi}:{seed}", instance.label())))
}

/// Releases with gaps uniform on `0..=upper`; `upper = 0` gives zero releases.
pub fn with_release_times(instance: &Instance, upper: u64, seed: u64) -> Result<Instance, ModelError> {
    with_release_gaps(instance, 0, upper, seed)
}

/// Default general-release regime: gaps uniform on `1..=100`.
pub fn with_default_releases(instance: &Instance, seed: u64) -> Result<Instance, ModelError> {
    with_release_gaps(instance, 1, 100, seed)
}

/// Moves each input's row sum onto the diagonal.
pub fn diagonalize(instance: &Instance) -> Result<Instance, ModelError> {
    let m = instance.ports();
    let out = instance.map_coflows(|c| {
        let mut demand = vec![0u64; m * m];
        for (i, row) in c.loads().input_loads.iter().enumerate() {
            demand[i * m + i] = *row;
        }
        CoflowMatrix::new(c.id(), m, demand, c.weight(), c.release())
    })?;
    Ok(out.with_label(format!("{} diagonal", instance.label())))
}

/// Random non-diagonal coflows with the same row and column sums as the
/// diagonal input.
pub fn spread_diagonal(diagonal: &Instance, seed: u64) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    spread_diagonal_with(diagonal, |rows, cols| {
        (
            *rows.choose(&mut rng).expect("row deficit"),
            *cols.choose(&mut rng).expect("column deficit"),
        )
    })
    .map(|i| i.with_label(format!("{} spread:{seed}", diagonal.label())))
}

/// As [`spread_diagonal`], with `pick(rows, cols)` choosing `(i*, j*)` among
/// the rows and columns that still have a deficit.
pub fn spread_diagonal_with<F>(diagonal: &Instance, mut pick: F) -> Result<Instance, ModelError>
where
    F: FnMut(&[usize], &[usize]) -> (usize, usize),
{
    let m = diagonal.ports();
    diagonal.map_coflows(|c| {
        let target: Vec<u64> = (0..m).map(|i| c.get(i, i)).collect();
        let total: u64 = target.iter().sum();
        let mut out = vec![0u64; m * m];
        let mut rows = vec![0u64; m];
        let mut cols = vec![0u64; m];
        let mut placed = 0;
        while placed < total {
            let short_rows: Vec<usize> = (0..m).filter(|&i| rows[i] < target[i]).collect();
            let short_cols: Vec<usize> = (0..m).filter(|&j| cols[j] < target[j]).collect();
            let (i, j) = pick(&short_rows, &short_cols);
            let p = (target[i] - rows[i]).min(target[j] - cols[j]);
            out[i * m + j] += p;
            rows[i] += p;
            cols[j] += p;
            placed += p;
        }
        CoflowMatrix::new(c.id(), m, out, c.weight(), c.release())
    })
}

fn repeat(rows: &[Vec<u64>], count: usize, coflows: &mut Vec<CoflowMatrix>) -> Result<(), ModelError> {
    for _ in 0..count {
        coflows.push(CoflowMatrix::from_rows(coflows.len() + 1, rows)?);
    }
    Ok(())
}

fn scaled(n: usize, a: f64) -> usize {
    (a * n as f64).floor() as usize
}

/// First adversarial family: single-port coflows of size 10 and all-port
/// coflows of size 9, on which total-demand ordering beats load ordering.
pub fn example1_family(m: usize, n: usize, a: f64) -> Result<Instance, ModelError> {
    if m == 0 {
        return Err(ModelError::ZeroPorts);
    }
    let mut coflows = Vec::new();
    if m == 2 {
        repeat(&[vec![10, 0], vec![0, 0]], n, &mut coflows)?;
        repeat(&[vec![0, 0], vec![0, 10]], n, &mut coflows)?;
        repeat(&[vec![9, 0], vec![0, 9]], scaled(n, a), &mut coflows)?;
    } else {
        for j in 0..m {
            let rows: Vec<Vec<u64>> = (0..m)
                .map(|_| (0..m).map(|c| if c == j { 10 } else { 0 }).collect())
                .collect();
            repeat(&rows, n, &mut coflows)?;
        }
        repeat(&vec![vec![9; m]; m], scaled(n, a), &mut coflows)?;
    }
    Instance::new(m, coflows, format!("example1 m={m} n={n} a={a}"))
}

/// Second adversarial family, on which bottleneck-completion ordering beats
/// total-demand ordering.
pub fn example2_family(m: usize, n: usize, a: f64) -> Result<Instance, ModelError> {
    if m == 0 {
        return Err(ModelError::ZeroPorts);
    }
    let mut coflows = Vec::new();
    for i in 1..m {
        let rows: Vec<Vec<u64>> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| match (r, c) {
                        (0, 0) => 1,
                        _ if r == i && c == i => 10,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        repeat(&rows, n, &mut coflows)?;
    }
    let mut big = vec![vec![0; m]; m];
    big[0][0] = 10;
    repeat(&big, scaled(n, a), &mut coflows)?;
    Instance::new(m, coflows, format!("example2 m={m} n={n} a={a}"))
}

/// Limit ratio of the first family for `m` ports.
pub fn example1_limit(m: usize, a: f64) -> f64 {
    let m = m as f64;
    (a * a + 2.0 * m * a + m) / (a * a + 2.0 * a + m)
}

/// Limit ratio of the second family for `m` ports.
pub fn example2_limit(m: usize, a: f64) -> f64 {
    let k = m as f64 - 1.0;
    (a * a + 2.0 * k * a) / (a * a + k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_and_dense_flow_counts() {
        let i = generate_synthetic(16, 20, Density::Sparse, 7).unwrap();
        assert!(i.coflows().iter().all(|c| c.flows().count() == 16));
        let i = generate_synthetic(4, 20, Density::Dense, 7).unwrap();
        assert!(i.coflows().iter().all(|c| c.flows().count() == 16
            && c.flows().all(|(_, _, v)| (1..=100).contains(&v))));
        let i = generate_synthetic(4, 50, Density::Uniform, 7).unwrap();
        assert!(i.coflows().iter().all(|c| (4..=16).contains(&c.flows().count())));
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a = generate_synthetic(5, 10, Density::Uniform, 42).unwrap();
        let b = generate_synthetic(5, 10, Density::Uniform, 42).unwrap();
        let c = generate_synthetic(5, 10, Density::Uniform, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn releases_are_cumulative() {
        let base = generate_synthetic(3, 30, Density::Sparse, 1).unwrap();
        let zero = with_release_times(&base, 0, 9).unwrap();
        assert!(zero.zero_release());
        let r = with_default_releases(&base, 9).unwrap();
        let rel: Vec<u64> = r.coflows().iter().map(|c| c.release()).collect();
        assert!(rel.windows(2).all(|w| w[1] > w[0]));
        assert!(rel[0] >= 1);
    }

    #[test]
    fn diagonalize_row_sums() {
        let c = CoflowMatrix::from_rows(1, &[vec![1, 2], vec![0, 3]]).unwrap();
        let i = Instance::new(2, vec![c], "x").unwrap();
        let d = diagonalize(&i).unwrap();
        assert_eq!(d.coflow(0).demand(), &[3, 0, 0, 3]);
        assert_eq!(diagonalize(&d).unwrap().coflows(), d.coflows());
    }

    #[test]
    fn spread_with_forced_pick() {
        let c = CoflowMatrix::from_rows(1, &[vec![10, 0], vec![0, 10]]).unwrap();
        let i = Instance::new(2, vec![c], "x").unwrap();
        let s = spread_diagonal_with(&i, |rows, cols| (rows[0], *cols.last().unwrap())).unwrap();
        assert_eq!(s.coflow(0).demand(), &[0, 10, 10, 0]);
        let one = Instance::new(1, vec![CoflowMatrix::from_rows(1, &[vec![4]]).unwrap()], "").unwrap();
        assert_eq!(spread_diagonal(&one, 3).unwrap().coflows(), one.coflows());
    }

    #[test]
    fn spread_preserves_sums() {
        let base = generate_synthetic(6, 20, Density::Uniform, 11).unwrap();
        let d = diagonalize(&base).unwrap();
        let s = spread_diagonal(&d, 5).unwrap();
        for (x, y) in d.coflows().iter().zip(s.coflows()) {
            assert_eq!(x.loads(), y.loads());
        }
    }

    #[test]
    fn family_sizes_and_limits() {
        let e1 = example1_family(2, 10, 2f64.sqrt()).unwrap();
        assert_eq!(e1.len(), 10 + 10 + 14);
        let e2 = example2_family(2, 10, 1.618).unwrap();
        assert_eq!(e2.len(), 10 + 16);
        assert_eq!(e2.coflow(0).demand(), &[1, 0, 0, 10]);
        assert!((example1_limit(2, 2f64.sqrt()) - 2f64.sqrt()).abs() < 1e-12);
        let phi = (5f64.sqrt() + 1.0) / 2.0;
        assert!((example2_limit(2, phi) - phi).abs() < 1e-12);
        assert!((example1_limit(9, 3.0) - 3.0).abs() < 1e-12);
        let e1m = example1_family(3, 2, 1.0).unwrap();
        assert_eq!(e1m.len(), 3 * 2 + 2);
        assert_eq!(e1m.coflow(0).demand(), &[10, 0, 0, 10, 0, 0, 10, 0, 0]);
    }
}
