//! Command-line arguments and the job configuration derived from them.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kummer_core::arith::FieldSpec;
use kummer_core::census::DEFAULT_BUDGET;
use kummer_core::dl::DEFAULT_TERM_BUDGET;
use kummer_core::engine::{CoverSpec, LiftKind, Precision};

use crate::expr;

#[derive(Parser, Debug)]
#[command(name = "kummer", version, about = "Cohomology and zeta functions of cyclic covers of the punctured line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for cached results.
    #[arg(long, global = true, env = "KUMMER_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Characteristic polynomials, point counts and the zeta function.
    Zeta(ZetaArgs),
    /// Frobenius matrices and Euler data of selected eigenspaces.
    Eigenspaces(EigenArgs),
    /// Places, exponents and residues of the logarithmic crystals.
    Profile(CoverArgs),
    /// Point counts and character sums by enumeration.
    Count(CountArgs),
    /// Deligne-Lusztig data for GL_{d+1}(F_q).
    Dl(DlArgs),
    /// Runs every consistency check, on one cover or on a built-in suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CoverArgs {
    /// Characteristic of the base field F_q, q = p^a.
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    /// Order of the cover; must divide q - 1.
    #[arg(long)]
    pub t: u64,
    /// Polynomial expression in x, coefficients reduced mod p.
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    pub pi: Option<String>,
    /// JSON coefficient list, ascending; entries are integers or
    /// coefficient lists in the field generator.
    #[arg(long)]
    pub coeffs: Option<String>,
    /// Target p-adic precision, or "auto".
    #[arg(long, default_value = "auto")]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = Lift::Teichmuller)]
    pub lift: Lift,
}

#[derive(Args, Debug, Clone)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
}

#[derive(Args, Debug, Clone)]
pub struct EigenArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    /// Eigenspaces to compute (default: every general-position j).
    #[arg(long, value_delimiter = ',')]
    pub j: Vec<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[command(flatten)]
    pub cover: CoverArgs,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// Maximum number of field elements enumerated per extension.
    #[arg(long, env = "KUMMER_COUNT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone)]
pub struct DlArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub q: u64,
    /// Also run the symbolic identities and, for d = 1, the curve bridge.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    /// Maximum number of terms in any symbolic expansion.
    #[arg(long, env = "KUMMER_TERM_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
    pub term_budget: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, requires_all = ["t"])]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub a: usize,
    #[arg(long, requires = "p")]
    pub t: Option<u64>,
    /// Check this cover instead of the built-in suite.
    #[arg(long, requires = "p", conflicts_with = "coeffs")]
    pub pi: Option<String>,
    #[arg(long, requires = "p")]
    pub coeffs: Option<String>,
    #[arg(long, default_value = "auto")]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = Lift::Teichmuller)]
    pub lift: Lift,
    /// Largest extension degree for trace comparisons.
    #[arg(long, default_value_t = 2)]
    pub n_max: usize,
    #[arg(long, env = "KUMMER_COUNT_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrecisionArg(pub Option<u32>);

impl FromStr for PrecisionArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(PrecisionArg(None));
        }
        match s.parse::<u32>() {
            Ok(n) if n > 0 => Ok(PrecisionArg(Some(n))),
            _ => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
        }
    }
}

impl PrecisionArg {
    pub fn to_core(self) -> Precision {
        self.0.map_or(Precision::Auto, Precision::Fixed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lift {
    Teichmuller,
    Naive,
}

impl Lift {
    pub fn to_core(self) -> LiftKind {
        match self {
            Lift::Teichmuller => LiftKind::Teichmuller,
            Lift::Naive => LiftKind::Naive,
        }
    }
}

/// Everything a job depends on, in one flat serializable record.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: String,
    pub p: Option<u64>,
    pub a: Option<usize>,
    pub t: Option<u64>,
    pub pi: Option<String>,
    pub coeffs: Option<String>,
    pub precision: PrecisionArg,
    pub lift: Option<Lift>,
    pub n_max: Option<usize>,
    pub j: Vec<u64>,
    pub d: Option<usize>,
    pub q: Option<u64>,
    pub verify: bool,
    pub count_budget: Option<u64>,
    pub term_budget: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let g = &cli.global;
        let mut job =
            JobConfig { cache_dir: g.cache_dir.clone(), out: g.out.clone(), threads: g.threads, ..Default::default() };
        let cover = |job: &mut JobConfig, c: &CoverArgs| {
            job.p = Some(c.p);
            job.a = Some(c.a);
            job.t = Some(c.t);
            job.pi = c.pi.clone();
            job.coeffs = c.coeffs.clone();
            job.precision = c.precision;
            job.lift = Some(c.lift);
        };
        match &cli.command {
            Command::Zeta(z) => {
                job.command = "zeta".into();
                cover(&mut job, &z.cover);
                job.n_max = Some(z.n_max);
            }
            Command::Eigenspaces(e) => {
                job.command = "eigenspaces".into();
                cover(&mut job, &e.cover);
                job.j = e.j.clone();
            }
            Command::Profile(c) => {
                job.command = "profile".into();
                cover(&mut job, c);
            }
            Command::Count(c) => {
                job.command = "count".into();
                cover(&mut job, &c.cover);
                job.n_max = Some(c.n_max);
                job.count_budget = Some(c.budget);
            }
            Command::Dl(d) => {
                job.command = "dl".into();
                job.d = Some(d.d);
                job.q = Some(d.q);
                job.verify = d.verify;
                job.n_max = Some(d.n_max);
                job.term_budget = Some(d.term_budget);
            }
            Command::Verify(v) => {
                job.command = "verify".into();
                if let (Some(p), Some(t)) = (v.p, v.t) {
                    job.p = Some(p);
                    job.a = Some(v.a);
                    job.t = Some(t);
                    job.pi = v.pi.clone();
                    job.coeffs = v.coeffs.clone();
                    job.precision = v.precision;
                    job.lift = Some(v.lift);
                }
                job.n_max = Some(v.n_max);
                job.count_budget = Some(v.budget);
            }
        }
        job
    }

    pub fn has_cover(&self) -> bool {
        self.p.is_some() && self.t.is_some()
    }

    pub fn field(&self) -> Result<FieldSpec, String> {
        let p = self.p.ok_or("missing --p")?;
        FieldSpec::new(p, self.a.unwrap_or(1)).map_err(|e| e.to_string())
    }

    /// `Pi` as field coefficients, ascending, trailing zeros removed.
    pub fn pi_coefficients(&self, k: &FieldSpec) -> Result<Vec<Vec<u32>>, String> {
        let elems = if let Some(s) = &self.pi {
            expr::parse_mod(s, k.p()).map_err(|e| e.to_string())?.iter().map(|&c| k.from_u64(c)).collect::<Vec<_>>()
        } else if let Some(s) = &self.coeffs {
            let raw: Vec<CoeffIn> = serde_json::from_str(s).map_err(|e| format!("malformed coefficient list: {e}"))?;
            raw.iter()
                .map(|c| match c {
                    CoeffIn::Int(n) => k.from_i64(*n),
                    CoeffIn::Elem(v) => k.element(v),
                })
                .collect()
        } else {
            return Err("missing --pi or --coeffs".into());
        };
        let mut out: Vec<Vec<u32>> = elems.iter().map(|e| k.coeffs(e).to_vec()).collect();
        while out.last().is_some_and(|c| c.iter().all(|&x| x == 0)) {
            out.pop();
        }
        Ok(out)
    }

    pub fn cover(&self) -> Result<CoverSpec, String> {
        let k = self.field()?;
        let pi = self
            .pi_coefficients(&k)?
            .iter()
            .map(|c| k.from_coeffs(&c.iter().map(|&x| x as u64).collect::<Vec<_>>()))
            .collect();
        let t = self.t.ok_or("missing --t")?;
        Ok(CoverSpec::new(&k, t, pi)
            .map_err(|e| e.to_string())?
            .with_precision(self.precision.to_core())
            .with_lift(self.lift.unwrap_or(Lift::Teichmuller).to_core()))
    }

    /// The fields that determine the report, with `Pi` in canonical form.
    pub fn canonical(&self) -> Result<serde_json::Value, String> {
        let pi = if self.has_cover() { Some(self.pi_coefficients(&self.field()?)?) } else { None };
        Ok(serde_json::json!({
            "command": self.command,
            "p": self.p,
            "a": self.a,
            "t": self.t,
            "pi": pi,
            "precision": self.precision,
            "lift": self.lift,
            "n_max": self.n_max,
            "j": self.j,
            "d": self.d,
            "q": self.q,
            "verify": self.verify,
        }))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffIn {
    Int(i64),
    Elem(Vec<i64>),
}
