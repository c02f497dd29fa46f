use std::str::FromStr;

use anyhow::{Context, Result};
use coflow::instances::{
    generate_synthetic, with_default_releases, with_permutation_weights, with_release_times, Density,
};
use coflow::Instance;

use crate::config::{CorpusConfig, Layout, Releases};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub index: usize,
    /// `None` for instances read from files.
    pub density: Option<Density>,
    pub instance: Instance,
}

impl CorpusEntry {
    pub fn density_name(&self) -> &'static str {
        self.density.map_or("file", Density::name)
    }
}

/// Seed of the `index`-th instance in a corpus seeded with `base`.
pub fn instance_seed(base: u64, index: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

pub fn apply_releases(instance: &Instance, releases: Releases, seed: u64) -> Result<Instance> {
    Ok(match releases {
        Releases::Zero => instance.clone(),
        Releases::Default => with_default_releases(instance, seed)?,
        Releases::Upper(u) => with_release_times(instance, u, seed)?,
    })
}

pub fn synthetic(cfg: &CorpusConfig, index: usize, density: Density) -> Result<Instance> {
    let seed = instance_seed(cfg.seed, index);
    let mut inst = generate_synthetic(cfg.m, cfg.coflows, density, seed)?;
    match cfg.weights.as_str() {
        "equal" => {}
        "permutation" => inst = with_permutation_weights(&inst, seed ^ 0x5757)?,
        other => anyhow::bail!("unknown weight scheme '{other}' (equal | permutation)"),
    }
    let releases = Releases::from_str(&cfg.releases)?;
    apply_releases(&inst, releases, instance_seed(cfg.release_seed, index))
}

pub fn build_corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusEntry>> {
    if !cfg.files.is_empty() {
        return cfg
            .files
            .iter()
            .enumerate()
            .map(|(index, path)| {
                let instance = coflow::io::read_instance(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(CorpusEntry {
                    index,
                    density: None,
                    instance,
                })
            })
            .collect();
    }
    let layout = Layout::from_str(&cfg.layout)?;
    (0..cfg.instances)
        .map(|index| {
            let density = layout.density_of(index);
            Ok(CorpusEntry {
                index,
                density: Some(density),
                instance: synthetic(cfg, index, density)?,
            })
        })
        .collect()
}
