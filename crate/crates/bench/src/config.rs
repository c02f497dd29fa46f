//! Experiment configuration.
//!
//! A TOML file with one section per concern; every key is optional and
//! falls back to the defaults below.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use coflow::instances::Density;
use coflow::{Case, Rule};
use serde::{Deserialize, Serialize};

pub const DEFAULT_CONFIG: &str = r#"[corpus]
m = 16                # ports
coflows = 160         # coflows per instance
instances = 30
layout = "mixed"      # mixed (5 sparse, 5 dense, rest uniform) | sparse | dense | uniform
seed = 1
weights = "equal"     # equal | permutation
releases = "zero"     # zero | default (gaps 1..100) | upper=U (gaps 0..U)
release_seed = 1000
files = []            # instance CSVs; when set, replaces the generated corpus

[grid]
rules = ["FIFO", "STPT", "SMPT", "SMCT", "ECT", "LP"]
cases = ["a", "b", "c", "d", "e"]
anchor_rule = "LP"
anchor_case = "c"
lower_bound = true    # interval-LP bound column

[sweep]
uppers = [0, 25, 50, 100, 200, 400, 800, 1600]
samples = 250
density = "sparse"
case = "c"
reference = "LP"

[online]
releases = "default"
rules = ["FIFO", "STPT", "SMPT", "SMCT", "ECT", "LP"]

[matching]
rules = ["FIFO", "STPT", "SMPT", "SMCT", "ECT", "LP"]
case = "e"
spread_seed = 7

[run]
threads = 0           # 0 = one per core
timings = false       # write <out>.timings.csv
"#;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub corpus: CorpusConfig,
    pub grid: GridConfig,
    pub sweep: SweepConfig,
    pub online: OnlineConfig,
    pub matching: MatchingConfig,
    pub run: RunConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            corpus: CorpusConfig::default(),
            grid: GridConfig::default(),
            sweep: SweepConfig::default(),
            online: OnlineConfig::default(),
            matching: MatchingConfig::default(),
            run: RunConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct CorpusConfig {
    pub m: usize,
    pub coflows: usize,
    pub instances: usize,
    pub layout: String,
    pub seed: u64,
    pub weights: String,
    pub releases: String,
    pub release_seed: u64,
    pub files: Vec<PathBuf>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            m: 16,
            coflows: 160,
            instances: 30,
            layout: "mixed".into(),
            seed: 1,
            weights: "equal".into(),
            releases: "zero".into(),
            release_seed: 1000,
            files: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub rules: Vec<String>,
    pub cases: Vec<String>,
    pub anchor_rule: String,
    pub anchor_case: String,
    pub lower_bound: bool,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            rules: all_rules(),
            cases: Case::ALL.iter().map(|c| c.name().to_string()).collect(),
            anchor_rule: "LP".into(),
            anchor_case: "c".into(),
            lower_bound: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub uppers: Vec<u64>,
    pub samples: usize,
    pub density: String,
    pub case: String,
    pub reference: String,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            uppers: vec![0, 25, 50, 100, 200, 400, 800, 1600],
            samples: 250,
            density: "sparse".into(),
            case: "c".into(),
            reference: "LP".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct OnlineConfig {
    pub releases: String,
    pub rules: Vec<String>,
}

impl Default for OnlineConfig {
    fn default() -> Self {
        OnlineConfig {
            releases: "default".into(),
            rules: all_rules(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct MatchingConfig {
    pub rules: Vec<String>,
    pub case: String,
    pub spread_seed: u64,
}

impl Default for MatchingConfig {
    fn default() -> Self {
        MatchingConfig {
            rules: all_rules(),
            case: "e".into(),
            spread_seed: 7,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub threads: usize,
    pub timings: bool,
}

fn all_rules() -> Vec<String> {
    Rule::ALL.iter().map(|r| r.name().to_string()).collect()
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

pub fn parse_rules(names: &[String]) -> Result<Vec<Rule>> {
    names.iter().map(|s| Ok(Rule::from_str(s)?)).collect()
}

pub fn parse_cases(names: &[String]) -> Result<Vec<Case>> {
    names.iter().map(|s| Ok(Case::from_str(s)?)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Releases {
    Zero,
    /// Gaps uniform on `1..=100`.
    Default,
    /// Gaps uniform on `0..=U`.
    Upper(u64),
}

impl FromStr for Releases {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" => Ok(Releases::Zero),
            "default" => Ok(Releases::Default),
            _ => match s.strip_prefix("upper=") {
                Some(u) => Ok(Releases::Upper(u.parse().with_context(|| format!("bad upper in '{s}'"))?)),
                None => bail!("unknown release regime '{s}' (zero | default | upper=U)"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Instances 1-5 sparse, 6-10 dense, the rest uniform.
    Mixed,
    Only(Density),
}

impl Layout {
    pub fn density_of(self, index: usize) -> Density {
        match self {
            Layout::Mixed if index < 5 => Density::Sparse,
            Layout::Mixed if index < 10 => Density::Dense,
            Layout::Mixed => Density::Uniform,
            Layout::Only(d) => d,
        }
    }
}

impl FromStr for Layout {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("mixed") {
            return Ok(Layout::Mixed);
        }
        Ok(Layout::Only(Density::from_str(s)?))
    }
}
