//! Experiment configuration and the space/operator descriptor grammar.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde::Deserialize;

use korovkin_core::library::parse_function;
use korovkin_core::norms::YoungFunction;
use korovkin_core::{BoundFlavor, Domain, FunctionHandle, OperatorFamily, SpaceSpec};

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// The on-disk experiment manifest. Every field is optional; command-line
/// flags take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub functions: Vec<String>,
    #[serde(default)]
    pub spaces: Vec<String>,
    pub operator: Option<String>,
    #[serde(default)]
    pub n_values: Vec<usize>,
    pub flavor: Option<String>,
    /// Grid resolution of the norm kernels.
    pub resolution: Option<usize>,
    /// Starting grid of the modulus estimator and sampled sup norms.
    pub modulus_resolution: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub plot: Option<PathBuf>,
    #[serde(default)]
    pub strict: bool,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

pub fn parse_operator(desc: &str) -> Result<OperatorFamily> {
    match desc.trim().to_ascii_lowercase().as_str() {
        "kantorovich" | "k" => Ok(OperatorFamily::Kantorovich),
        "fejer" | "fejér" | "f" => Ok(OperatorFamily::Fejer),
        other => bail!("unknown operator '{other}' (expected kantorovich or fejer)"),
    }
}

pub fn parse_flavor(desc: &str) -> Result<BoundFlavor> {
    BoundFlavor::parse(desc).map_err(|e| anyhow!("{e}"))
}

/// Maps the algebraic flavors onto their periodic twins for trigonometric
/// operators, so `--flavor shisha-mond` works with either family.
pub fn flavor_for(flavor: BoundFlavor, family: &OperatorFamily) -> BoundFlavor {
    let trig = family.domain() == Domain::Circle;
    match (flavor, trig) {
        (BoundFlavor::ShishaMond, true) => BoundFlavor::TrigShishaMond,
        (BoundFlavor::DeVore, true) => BoundFlavor::TrigDeVore,
        (BoundFlavor::TrigShishaMond, false) => BoundFlavor::ShishaMond,
        (BoundFlavor::TrigDeVore, false) => BoundFlavor::DeVore,
        (f, _) => f,
    }
}

pub fn parse_fn(desc: &str, domain: Domain) -> Result<FunctionHandle> {
    let f = parse_function(desc, domain).map_err(|e| anyhow!("function '{desc}': {e}"))?;
    Ok(f)
}

fn number(key: &str, value: &str) -> Result<f64> {
    value.trim().parse::<f64>().map_err(|_| anyhow!("cannot parse {key}='{value}' as a number"))
}

/// Splits `k1=v1,k2=v2,...`; a `w=` entry swallows the remainder of the
/// string so that weight descriptors may contain commas.
fn key_values(args: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut rest = args.trim();
    while !rest.is_empty() {
        let (key, tail) = rest.split_once('=').ok_or_else(|| anyhow!("expected key=value in '{rest}'"))?;
        let key = key.trim().to_ascii_lowercase();
        if key == "w" {
            out.push((key, tail.to_string()));
            break;
        }
        let (value, next) = tail.split_once(',').unwrap_or((tail, ""));
        out.push((key, value.to_string()));
        rest = next.trim();
    }
    Ok(out)
}

struct Args {
    kv: Vec<(String, String)>,
    used: Vec<bool>,
}

impl Args {
    fn new(s: &str) -> Result<Self> {
        let kv = key_values(s)?;
        let used = vec![false; kv.len()];
        Ok(Self { kv, used })
    }

    fn raw(&mut self, key: &str) -> Option<String> {
        let i = self.kv.iter().position(|(k, _)| k == key)?;
        self.used[i] = true;
        Some(self.kv[i].1.clone())
    }

    fn num(&mut self, key: &str) -> Result<f64> {
        let v = self.raw(key).ok_or_else(|| anyhow!("missing parameter '{key}'"))?;
        number(key, &v)
    }

    fn weight(&mut self) -> Result<FunctionHandle> {
        let w = self.raw("w").ok_or_else(|| anyhow!("missing weight 'w='"))?;
        parse_fn(&w, Domain::Unit)
    }

    fn finish(self, desc: &str) -> Result<()> {
        if let Some(i) = self.used.iter().position(|u| !u) {
            bail!("unexpected parameter '{}' in space '{desc}'", self.kv[i].0);
        }
        Ok(())
    }
}

fn young(desc: &str) -> Result<YoungFunction> {
    let d = desc.trim().to_ascii_lowercase();
    if d == "exp" {
        return Ok(YoungFunction::exponential());
    }
    let p = d.strip_prefix("pow").ok_or_else(|| anyhow!("unknown Young function '{desc}' (expected powP or exp)"))?;
    Ok(YoungFunction::power(number("phi", p.trim_start_matches(':'))?))
}

/// Parses a space descriptor such as `lp:p=2`, `morrey:p=2,p0=3` or
/// `wlp:p=2,w=pow:0.5` onto `domain`.
pub fn parse_space(desc: &str, domain: Domain) -> Result<SpaceSpec> {
    let trimmed = desc.trim();
    let (head, rest) = trimmed.split_once(':').unwrap_or((trimmed, ""));
    let head = head.to_ascii_lowercase();
    let space = if head == "varlp" {
        ensure!(!rest.trim().is_empty(), "varlp needs an exponent function, e.g. varlp:pp:;1.5,1");
        SpaceSpec::variable_lp(parse_fn(rest, Domain::Unit)?)
    } else {
        let mut a = Args::new(rest)?;
        let s = match head.as_str() {
            "sup" | "linf" => SpaceSpec::sup(),
            "l1" => SpaceSpec::lp(1.0),
            "l2" => SpaceSpec::lp(2.0),
            "lp" => SpaceSpec::lp(a.num("p")?),
            "wlp" => {
                let p = a.num("p")?;
                SpaceSpec::weighted_lp(p, a.weight()?)
            }
            "grand" => SpaceSpec::grand_lp(a.num("p")?),
            "wgrand" => {
                let p = a.num("p")?;
                SpaceSpec::weighted_grand_lp(p, a.weight()?)
            }
            "orlicz" => {
                let phi = a.raw("phi").ok_or_else(|| anyhow!("orlicz needs phi=powP or phi=exp"))?;
                SpaceSpec::orlicz(young(&phi)?)
            }
            "morrey" => SpaceSpec::morrey(a.num("p")?, a.num("p0")?),
            "wmorrey" => {
                let (p, p0) = (a.num("p")?, a.num("p0")?);
                SpaceSpec::weighted_morrey(p, p0, a.weight()?)
            }
            "smallmorrey" => SpaceSpec::small_morrey(a.num("p")?, a.num("lambda")?),
            "weakmp" => SpaceSpec::weak_mp(a.num("p")?),
            other => bail!("unknown space '{other}'"),
        };
        a.finish(desc)?;
        s
    };
    let space = space.on_domain(domain);
    space.validate().map_err(|e| anyhow!("space '{desc}': {e}"))?;
    Ok(space)
}
