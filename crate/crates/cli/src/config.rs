//! Run configuration: JSON file plus flag overrides, validated into a
//! ready-to-run plan.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use cowreath::casimir::EtaAssignment;
use cowreath::clifford::{CliffordParams, Params};
use cowreath::report::Strategy;
use cowreath::scalar::{parse_param_name, ParamName, Scalar};
use cowreath::setcombin::SubsetIndex;
use cowreath::suites::SUITE_NAMES;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Zero,
    Alpha,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Zero => "zero",
            Family::Alpha => "alpha",
            Family::Custom => "custom",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Rt,
    Rth,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rt => "rt",
            Mode::Rth => "rth",
        })
    }
}

/// Shape of the JSON config file; every field optional, flags override.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub family: Option<String>,
    pub mode: Option<String>,
    pub strategy: Option<StrategyConfig>,
    pub suites: Option<Vec<String>>,
    pub params: Option<BTreeMap<String, String>>,
    pub eta: Option<BTreeMap<String, String>>,
    pub mu: Option<String>,
    pub out: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyConfig {
    Symbolic,
    Random(Vec<u64>),
}

/// A validated run plan.
pub struct RunConfig {
    pub n: usize,
    pub family: Family,
    pub mode: Mode,
    pub strategy: Strategy,
    pub suites: Vec<String>,
    pub params: Params,
    pub eta: EtaAssignment,
    pub mu: Scalar,
    pub out: Option<PathBuf>,
    pub no_timestamp: bool,
}

pub struct Overrides {
    pub n: Option<usize>,
    pub family: Option<String>,
    pub mode: Option<String>,
    pub suites: Vec<String>,
    pub seeds: Vec<u64>,
    pub symbolic: bool,
    pub out: Option<PathBuf>,
    pub no_timestamp: bool,
}

/// The largest `n` for which the cowreath-axiom sweep is tractable.
pub const COWREATH_SUITE_MAX_N: usize = 3;
/// Symbolic evaluation beyond this defaults to randomized specialization.
pub const SYMBOLIC_DEFAULT_MAX_N: usize = 3;
const DEFAULT_SEEDS: [u64; 3] = [1, 2, 3];

pub fn resolve(file: FileConfig, flags: Overrides) -> Result<RunConfig> {
    let n = flags.n.or(file.n).unwrap_or(1);
    if !(1..=16).contains(&n) {
        bail!("n must satisfy 1 ≤ n ≤ 16, got {n}");
    }

    let family = match flags
        .family
        .or(file.family)
        .unwrap_or_else(|| "alpha".into())
        .as_str()
    {
        "zero" => Family::Zero,
        "alpha" => Family::Alpha,
        "custom" => Family::Custom,
        other => bail!("unknown family `{other}` (expected zero | alpha | custom)"),
    };
    let mode = match flags.mode.or(file.mode).unwrap_or_else(|| "rt".into()).as_str() {
        "rt" => Mode::Rt,
        "rth" => Mode::Rth,
        other => bail!("unknown mode `{other}` (expected rt | rth)"),
    };
    if mode == Mode::Rth && family != Family::Alpha {
        bail!(
            "mode rth requires family alpha: the {family} family admits no h-separable \
             right-trivial table ((t_{{1,∅}})² must equal 1)"
        );
    }

    let strategy = if flags.symbolic {
        if n > SYMBOLIC_DEFAULT_MAX_N {
            eprintln!(
                "warning: symbolic evaluation forced at n = {n}; this may be very slow \
                 (default switches to randomized specialization above n = {SYMBOLIC_DEFAULT_MAX_N})"
            );
        }
        Strategy::Symbolic
    } else if !flags.seeds.is_empty() {
        Strategy::Random(flags.seeds.clone())
    } else {
        match file.strategy {
            Some(StrategyConfig::Symbolic) => {
                if n > SYMBOLIC_DEFAULT_MAX_N {
                    bail!(
                        "strategy symbolic is permitted only for n ≤ {SYMBOLIC_DEFAULT_MAX_N};                          pass --symbolic to override (warn-and-proceed)"
                    );
                }
                Strategy::Symbolic
            }
            Some(StrategyConfig::Random(seeds)) if !seeds.is_empty() => Strategy::Random(seeds),
            Some(StrategyConfig::Random(_)) => bail!("strategy.random requires at least one seed"),
            None => {
                if n <= SYMBOLIC_DEFAULT_MAX_N {
                    Strategy::Symbolic
                } else {
                    Strategy::Random(DEFAULT_SEEDS.to_vec())
                }
            }
        }
    };

    let suites = if !flags.suites.is_empty() {
        flags.suites
    } else if let Some(s) = file.suites {
        s
    } else {
        let casimir = match mode {
            Mode::Rt => "casimir-rt",
            Mode::Rth => "casimir-rth",
        };
        let mut defaults = vec!["lemmas".into(), "hopf".into(), "comodule".into()];
        if n <= COWREATH_SUITE_MAX_N {
            defaults.push("cowreath".into());
        }
        defaults.push(casimir.into());
        defaults
    };
    for s in &suites {
        if !SUITE_NAMES.contains(&s.as_str()) {
            bail!("unknown suite `{s}` (expected one of {SUITE_NAMES:?})");
        }
        if s == "cowreath" && n > COWREATH_SUITE_MAX_N {
            bail!("the cowreath suite is limited to n ≤ {COWREATH_SUITE_MAX_N} (symbolic cost)");
        }
        if s == "casimir-rth" && mode != Mode::Rth {
            bail!("the casimir-rth suite requires mode rth");
        }
    }

    let params = match family {
        Family::Zero => CliffordParams::zero_family(n),
        Family::Alpha => match mode {
            Mode::Rt => CliffordParams::alpha_family(n),
            Mode::Rth => CliffordParams::rth_family(n),
        },
        Family::Custom => custom_params(n, file.params.as_ref().unwrap_or(&BTreeMap::new()))?,
    };

    let mut eta = match family {
        Family::Alpha => EtaAssignment::constrained(),
        _ => EtaAssignment::free(),
    };
    if let Some(entries) = &file.eta {
        for (key, expr) in entries {
            let s = parse_subset(key).with_context(|| format!("bad η key `{key}`"))?;
            if s.is_empty() || s.contains(0) {
                bail!("η keys must be nonempty subsets of {{1..n}}, got `{key}`");
            }
            if family == Family::Alpha && s.len() % 2 == 1 {
                bail!(
                    "η_{s} has odd cardinality: in the alpha family odd values are \
                     derived, only even-cardinality η may be supplied"
                );
            }
            let value = Scalar::parse(expr)
                .map_err(|e| anyhow!("bad η value for `{key}`: {e}"))?;
            eta.insert(s, value);
        }
    }

    let mu = match &file.mu {
        Some(expr) => Scalar::parse(expr).map_err(|e| anyhow!("bad μ expression: {e}"))?,
        None => match family {
            Family::Zero => Scalar::one(),
            _ => Scalar::param(ParamName::Mu),
        },
    };

    Ok(RunConfig {
        n,
        family,
        mode,
        strategy,
        suites,
        params,
        eta,
        mu,
        out: flags.out.or(file.out),
        no_timestamp: flags.no_timestamp,
    })
}

fn custom_params(n: usize, entries: &BTreeMap<String, String>) -> Result<Params> {
    let mut alpha = Scalar::param(ParamName::Alpha);
    let mut beta: Vec<Scalar> = (1..=n as u8).map(|i| Scalar::param(ParamName::Beta(i))).collect();
    let mut gamma: Vec<Scalar> =
        (1..=n as u8).map(|i| Scalar::param(ParamName::Gamma(i))).collect();
    let mut lambda: BTreeMap<(u8, u8), Scalar> = (1..=n as u8)
        .flat_map(|i| (i + 1..=n as u8).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), Scalar::param(ParamName::lambda(i, j))))
        .collect();
    for (key, expr) in entries {
        let value = Scalar::parse(expr)
            .map_err(|e| anyhow!("bad value for parameter `{key}`: {e}"))?;
        let name =
            parse_param_name(key).ok_or_else(|| anyhow!("unknown parameter key `{key}`"))?;
        match name {
            ParamName::Alpha => alpha = value,
            ParamName::Beta(i) if (1..=n as u8).contains(&i) => {
                beta[i as usize - 1] = value;
            }
            ParamName::Gamma(i) if (1..=n as u8).contains(&i) => {
                gamma[i as usize - 1] = value;
            }
            ParamName::Lambda(i, j) if j as usize <= n => {
                lambda.insert((i, j), value);
            }
            other => bail!("parameter `{other}` is out of range for n = {n}"),
        }
    }
    Ok(CliffordParams::new(n, alpha, beta, gamma, lambda))
}

/// Parses `{2,3,5,8}`, `2,3,5,8`, or whitespace-separated digits.
pub fn parse_subset(input: &str) -> Result<SubsetIndex> {
    let trimmed = input.trim().trim_start_matches('{').trim_end_matches('}');
    let mut elems: Vec<u8> = Vec::new();
    for part in trimmed.split([',', ' ']) {
        let p = part.trim();
        if p.is_empty() {
            continue;
        }
        elems.push(p.parse().with_context(|| format!("bad element `{p}`"))?);
    }
    elems.sort_unstable();
    SubsetIndex::new(&elems).map_err(|e| anyhow!("{e}"))
}
