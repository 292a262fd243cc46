//! The `rankcrit` command line: formula evaluation, brute-force verification
//! suites, tables and censuses.
//!
//! Everything written to stdout depends only on the arguments, never on
//! thread count or wall clock. Timings go to stderr.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::budget::{parse_budget, Budget, BUDGET_ENV};
use crate::codes::formulas::{
    asymptotic_constants, class_count_formula, density_3x3_formula, gamma, kantor_lowerbound,
    mrd_lowerbound_formula, scaled_3x3,
};
use crate::codes::{density_bruteforce, hejar_identity_check, Kind};
use crate::critical::{self, AvgRegime, Prop52Case};
use crate::error::{Error, Result};
use crate::gf::{field_pair, Field};
use crate::qcomb::{self, rat_int, to_f64, Comparison, Rounding};
use crate::restricted::{self, HermitianVariant};
use crate::semifield::{aut_group_size_bruteforce, all_twisted_specs, classify, twisted_code};

#[derive(Parser, Debug)]
#[command(name = "rankcrit", version, about = "Exact densities of rank-metric codes and the Critical Problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Maximum number of enumeration steps (accepts 1e9 style values)
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget: Option<String>,
    /// Worker threads
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Significant digits for floats
    #[arg(long, global = true, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a closed form (`formula list` shows them all)
    Formula {
        name: String,
        #[command(flatten)]
        params: Params,
    },
    /// Compare formulas against exhaustive enumeration
    Verify { suite: String },
    /// Print a CSV table
    Table {
        name: String,
        /// Single value or inclusive range such as 3..7
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        kind: Option<Kind>,
        #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
        rounding: RoundingArg,
    },
    /// Density of a matrix space by enumerating all k-dimensional subspaces
    Density {
        #[arg(long)]
        n: usize,
        /// Columns (defaults to n)
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "full")]
        kind: Kind,
    },
    /// Equivalence classes of twisted-field codes over F_{q^n}
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Truncate,
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Line,
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Validated,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    /// N, k fixed and ℓ ~ q^s
    Q,
    /// N = mn, k = mk', ℓ ~ ℓ'q^{mr}
    M,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Params {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long = "N")]
    pub big_n: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub rho: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    pub i: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub j: Option<i64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Number of factors in the truncated product
    #[arg(long)]
    pub terms: Option<u64>,
    /// ℓ' in the m-large regime
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long, value_enum)]
    pub regime: Option<RegimeArg>,
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

impl Params {
    fn given(&self) -> BTreeMap<&'static str, Value> {
        let mut out = BTreeMap::new();
        let mut put = |k: &'static str, v: Option<Value>| {
            if let Some(v) = v {
                out.insert(k, v);
            }
        };
        put("q", self.q.map(Value::from));
        put("n", self.n.map(Value::from));
        put("m", self.m.map(Value::from));
        put("k", self.k.map(Value::from));
        put("d", self.d.map(Value::from));
        put("N", self.big_n.map(Value::from));
        put("l", self.l.map(Value::from));
        put("rho", self.rho.map(Value::from));
        put("i", self.i.map(Value::from));
        put("j", self.j.map(Value::from));
        put("r", self.r.map(Value::from));
        put("s", self.s.map(Value::from));
        put("kind", self.kind.map(|k| Value::from(k.to_string())));
        put("case", self.case.map(|c| Value::from(format!("{c:?}").to_lowercase())));
        put("variant", self.variant.map(|c| Value::from(format!("{c:?}").to_lowercase())));
        put("terms", self.terms.map(Value::from));
        put("ratio", self.ratio.map(Value::from));
        put("regime", self.regime.map(|c| Value::from(format!("{c:?}").to_lowercase())));
        out
    }

    fn u(&self, name: &str) -> Result<u64> {
        let v = match name {
            "q" => self.q,
            "n" => self.n,
            "m" => self.m,
            "k" => self.k,
            "d" => self.d,
            "N" => self.big_n,
            "l" => self.l,
            "rho" => self.rho,
            "r" => self.r,
            "s" => self.s,
            "terms" => self.terms,
            "i" | "j" => {
                let x = if name == "i" { self.i } else { self.j };
                return match x {
                    Some(v) if v >= 0 => Ok(v as u64),
                    Some(_) => usage(format!("--{name} must be nonnegative here")),
                    None => usage(format!("missing --{name}")),
                };
            }
            _ => unreachable!("unknown parameter {name}"),
        };
        v.map_or_else(|| usage(format!("missing --{name}")), Ok)
    }

    fn kind(&self) -> Result<Kind> {
        self.kind.map_or_else(|| usage("missing --kind"), Ok)
    }
}

/// The value of a formula: an exact number, a float, or a structured report.
#[derive(Debug, Clone, Default)]
pub struct Evaluated {
    pub exact: Option<BigRational>,
    pub float: Option<f64>,
    pub detail: Option<Value>,
}

impl Evaluated {
    fn exact(r: BigRational) -> Self {
        Evaluated { float: Some(to_f64(&r)), exact: Some(r), detail: None }
    }

    fn int(n: BigUint) -> Self {
        Self::exact(rat_int(n))
    }

    fn float(x: f64) -> Self {
        Evaluated { float: Some(x), ..Default::default() }
    }

    fn detail(v: Value) -> Self {
        Evaluated { detail: Some(v), ..Default::default() }
    }

    fn with_detail(mut self, v: Value) -> Self {
        self.detail = Some(v);
        self
    }
}

type FormulaFn = fn(&Params, &Budget) -> Result<Evaluated>;

/// name, accepted parameters (a trailing `?` marks optional ones), summary
pub struct FormulaEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub about: &'static str,
    eval: FormulaFn,
}

macro_rules! entry {
    ($name:expr, [$($p:expr),*], $about:expr, $f:expr) => {
        FormulaEntry { name: $name, params: &[$($p),*], about: $about, eval: $f }
    };
}

fn to_json(v: impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn case_of(p: &Params) -> Result<Prop52Case> {
    match p.case {
        Some(CaseArg::Line) => Ok(Prop52Case::Line),
        Some(CaseArg::Independent) => Ok(Prop52Case::Independent),
        None => usage("missing --case"),
    }
}

pub fn formulas() -> Vec<FormulaEntry> {
    vec![
        entry!("density3x3", ["q"], "density of full-rank MRD codes in F_q^{3x3}", |p, _| {
            Ok(Evaluated::exact(density_3x3_formula(p.u("q")?)?))
        }),
        entry!("scaled-3x3", ["q"], "q^3 times the 3x3 density", |p, _| Ok(Evaluated::float(scaled_3x3(p.u("q")?)?))),
        entry!("mrd-lowerbound", ["n", "q"], "lower bound on the full-rank MRD density", |p, _| {
            let lb = mrd_lowerbound_formula(p.u("n")?, p.u("q")?)?;
            Ok(Evaluated::exact(lb.density).with_detail(json!({ "count": lb.count.to_string() })))
        }),
        entry!("kantor", ["n"], "lower bound on the MRD count over F_2 for composite n", |p, _| {
            Ok(Evaluated::int(kantor_lowerbound(p.u("n")?)?))
        }),
        entry!("gamma", ["n"], "prime factors with multiplicity", |p, _| {
            Ok(Evaluated::int(BigUint::from(gamma(p.u("n")?))))
        }),
        entry!("asymptotic", ["n", "d", "m", "q"], "q- and m-asymptotic constants", |p, _| {
            Ok(Evaluated::detail(to_json(asymptotic_constants(p.u("n")?, p.u("d")?, p.u("m")?, p.u("q")?)?)))
        }),
        entry!("class-count", ["n", "q"], "equivalence classes of twisted-field codes", |p, _| {
            Ok(Evaluated::int(class_count_formula(p.u("n")?, p.u("q")?)?))
        }),
        entry!("qbinom", ["i", "j", "q"], "Gaussian binomial", |p, _| {
            let (i, j) = (p.i.ok_or(Error::InvalidArgument("missing --i".into()))?, p.j.ok_or(Error::InvalidArgument("missing --j".into()))?);
            Ok(Evaluated::int(qcomb::qbinom(i, j, p.u("q")?)))
        }),
        entry!("gl-order", ["n", "q"], "|GL_n(q)|", |p, _| Ok(Evaluated::int(qcomb::gl_order(p.u("n")?, p.u("q")?)))),
        entry!("ball-size", ["n", "m", "r", "q"], "matrices of rank at most r", |p, _| {
            Ok(Evaluated::int(qcomb::ball_size(p.u("n")?, p.u("m")?, p.u("r")?, p.u("q")?)?))
        }),
        entry!("pointset-size", ["n", "m", "r", "q"], "projective points of rank at most r", |p, _| {
            Ok(Evaluated::int(qcomb::pointset_size(p.u("n")?, p.u("m")?, p.u("r")?, p.u("q")?)?))
        }),
        entry!("pi-q", ["q", "n?"], "pi(q, n), or its limit with a certified error", |p, _| {
            let q = p.u("q")?;
            match p.n {
                Some(n) => Ok(Evaluated::exact(qcomb::pi_q(q, n))),
                None => {
                    let c = qcomb::pi_q_inf(q, 1e-12)?;
                    Ok(Evaluated::float(c.value).with_detail(to_json(c)))
                }
            }
        }),
        entry!("alt-exp-sum", ["m"], "sum of (-1)^i/i! for i <= m", |p, _| Ok(Evaluated::exact(qcomb::alt_exp_sum(p.u("m")?)))),
        entry!("comparison", ["q", "terms?"], "certified margin of the product inequality", |p, _| {
            let c = qcomb::comparison_inequality_check(p.u("q")?, p.terms.unwrap_or(64))?;
            let m = match c {
                Comparison::Holds { margin } | Comparison::Inconclusive { margin } => margin,
            };
            Ok(Evaluated::float(m).with_detail(to_json(c)))
        }),
        entry!("avg", ["N", "k", "l", "q"], "average density over point sets of size l", |p, _| {
            Ok(Evaluated::exact(critical::avg_density_formula(p.u("N")?, p.u("k")?, p.u("l")?, p.u("q")?)?))
        }),
        entry!("avg-rank", ["N", "k", "l", "rho", "q"], "average density over point sets of size l and rank rho", |p, _| {
            Ok(Evaluated::exact(critical::avg_density_rank_formula(p.u("N")?, p.u("k")?, p.u("l")?, p.u("rho")?, p.u("q")?)?))
        }),
        entry!("lambda", ["N", "s", "l", "rho", "q"], "point sets of size l and rank rho avoiding a fixed s-space", |p, _| {
            Ok(Evaluated::int(critical::lambda(p.u("N")?, p.u("s")?, p.u("l")?, p.u("rho")?, p.u("q")?)?))
        }),
        entry!("avg-asymptotic", ["regime", "N", "k", "s?", "r?", "ratio?", "q", "m?"], "limit expression of the average density", |p, _| {
            let regime = match p.regime {
                Some(RegimeArg::Q) => AvgRegime::QLarge { n: p.u("N")?, k: p.u("k")?, s: p.u("s")? },
                Some(RegimeArg::M) => AvgRegime::MLarge {
                    n: p.u("N")?,
                    k_prime: p.u("k")?,
                    r: p.u("r")?,
                    ell_prime: p.ratio.ok_or(Error::InvalidArgument("missing --ratio".into()))?,
                },
                None => return usage("missing --regime"),
            };
            Ok(Evaluated::float(critical::avg_asymptotics(regime, p.u("q")?, p.m.unwrap_or(1))?))
        }),
        entry!("ball-avg-limit", ["n", "d", "q", "regime"], "limiting average density for rank balls", |p, _| {
            let q_large = match p.regime {
                Some(r) => r == RegimeArg::Q,
                None => return usage("missing --regime"),
            };
            Ok(Evaluated::float(critical::ball_avg_limit(p.u("n")?, p.u("d")?, p.u("q")?, q_large)?))
        }),
        entry!("prop52", ["N", "i", "q", "case"], "hyperplane density of i collinear or independent points", |p, _| {
            Ok(Evaluated::exact(critical::prop52_formula(p.u("N")?, p.u("i")?, p.u("q")?, case_of(p)?)?))
        }),
        entry!("mds-arc", ["N", "l", "q"], "hyperplane density of an arc", |p, _| {
            Ok(Evaluated::exact(critical::mds_arc_density(p.u("N")?, p.u("l")?, p.u("q")?)?))
        }),
        entry!("alt-factorial-sum", ["N"], "sum of (-1)^j/j! for j < N", |p, _| Ok(Evaluated::float(critical::alt_factorial_sum(p.u("N")?)))),
        entry!("example511", ["N", "l", "q"], "hyperplane density of the arc-plus-point construction", |p, _| {
            Ok(Evaluated::exact(critical::example511_density(p.u("N")?, p.u("l")?, p.u("q")?)?))
        }),
        entry!("difference", ["N", "l", "q"], "arc density minus the construction's density", |p, _| {
            Ok(Evaluated::exact(critical::difference_term(p.u("N")?, p.u("l")?, p.u("q")?)?))
        }),
        entry!("rank-count", ["kind", "n", "m?", "i", "q", "variant?"], "matrices of rank i in a matrix space", |p, _| {
            let (kind, n, i, q) = (p.kind()?, p.u("n")?, p.u("i")?, p.u("q")?);
            let v = match (kind, p.variant) {
                (Kind::Full, _) => qcomb::rank_count_full(n, p.m.unwrap_or(n), i, q),
                (Kind::Hermitian, Some(VariantArg::Printed)) => restricted::rank_count_hermitian(n, i, q, HermitianVariant::Printed)?,
                _ => restricted::rank_count(kind, n, i, q)?,
            };
            Ok(Evaluated::int(v))
        }),
        entry!("dim-bound", ["kind", "n", "d"], "largest dimension of a code with minimum distance d", |p, _| {
            Ok(Evaluated::int(BigUint::from(restricted::dim_bound(p.kind()?, p.u("n")?, p.u("d")?)?)))
        }),
        entry!("ball-exponent", ["kind", "n", "r"], "q-exponent of the rank-r ball size", |p, _| {
            let e = restricted::ball_asymptotic_exponent(p.kind()?, p.u("n")?, p.u("r")?)?;
            Ok(Evaluated::exact(qcomb::rat_i(e)))
        }),
        entry!("sparseness", ["kind", "n", "k", "d", "q"], "q-exponent bounding the restricted density", |p, _| {
            let s = restricted::sparseness_exponent(p.kind()?, p.u("n")?, p.u("k")?, p.u("d")?, p.u("q")?)?;
            Ok(Evaluated::detail(to_json(s)))
        }),
        entry!("density-2dim", ["n", "q"], "density of 2-dimensional full-rank codes (enumerates s_q(n))", |p, b| {
            Ok(Evaluated::exact(restricted::density_2dim_formula(p.u("n")?, p.u("q")?, b)?))
        }),
        entry!("tensor-ratio", ["r", "n", "q"], "ratio of the transposed densities", |p, _| {
            Ok(Evaluated::exact(restricted::tensor_ratio(p.u("r")?, p.u("n")?, p.u("q")?)?))
        }),
    ]
}

pub fn evaluate(name: &str, p: &Params, budget: &Budget) -> Result<Evaluated> {
    let table = formulas();
    let Some(e) = table.iter().find(|e| e.name == name) else {
        return usage(format!("unknown formula `{name}`"));
    };
    for k in p.given().keys() {
        if !e.params.iter().any(|a| a.trim_end_matches('?') == *k) {
            return usage(format!("`{name}` does not take --{k}"));
        }
    }
    if let Some(q) = p.q {
        crate::gf::PrimePower::from_q(q)?;
    }
    (e.eval)(p, budget)
}

/// `x` with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if e < -4 || e >= digits as i32 {
        format!("{:.*e}", digits - 1, x)
    } else {
        format!("{:.*}", (digits as i32 - 1 - e).max(0) as usize, x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED(budget)",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

pub const SUITES: [&str; 6] = ["hejar", "mrd192", "lambda", "carlitz", "tensor", "cw-bridge"];

struct Runner<'a> {
    budget: Budget,
    checks: Vec<Check>,
    log: &'a mut dyn Write,
}

impl Runner<'_> {
    fn run(&mut self, suite: &'static str, name: impl Into<String>, f: impl FnOnce(&Budget) -> Result<(bool, String)>) {
        let name = name.into();
        let start = Instant::now();
        let (status, detail) = match f(&self.budget) {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(e @ Error::BudgetExceeded { .. }) => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        let _ = writeln!(self.log, "{suite} {name}: {status} in {:.3}s", start.elapsed().as_secs_f64());
        self.checks.push(Check { suite, name, status, detail });
    }
}

fn eq_detail(a: &impl std::fmt::Display, b: &impl std::fmt::Display, same: bool) -> (bool, String) {
    (same, format!("{a} {} {b}", if same { "=" } else { "!=" }))
}

fn suite_hejar(r: &mut Runner) {
    for (m, q) in [(2usize, 2u64), (2, 3), (3, 2)] {
        r.run("hejar", format!("m={m} q={q}"), |b| {
            let c = hejar_identity_check(m, q, b)?;
            Ok(eq_detail(&c.lhs, &c.rhs, c.holds))
        });
    }
}

fn suite_mrd192(r: &mut Runner) {
    r.run("mrd192", "3x3 k=3 d=3 q=2", |b| {
        let bf = density_bruteforce(3, 3, 3, 3, 2, b)?;
        let f = density_3x3_formula(2)? * rat_int(qcomb::qbinom(9, 3, 2));
        let lb = mrd_lowerbound_formula(3, 2)?.count;
        let c = rat_int(bf.count.clone());
        let ok = c == f && c == lb;
        Ok((ok, format!("{} {} {f} {} {lb}", bf.count, if c == f { "=" } else { "!=" }, if c == lb { "=" } else { "!=" })))
    });
}

fn suite_lambda(r: &mut Runner) {
    for (q, n_max, ell_max) in [(2u64, 4u64, 5u64), (3, 3, 4)] {
        for n in 2..=n_max {
            r.run("lambda", format!("q={q} N={n} l<={ell_max}"), |b| {
                let mut checked = 0;
                for rho in 2..=n {
                    let top = ((q.pow(rho as u32) - 1) / (q - 1)).min(ell_max);
                    for ell in rho..=top {
                        for s in 0..=n {
                            let want = critical::lambda(n, s, ell, rho, q)?;
                            let got = critical::lambda_exhaustive(n as usize, s as usize, ell as usize, rho as usize, q, b)?;
                            if want != got {
                                return Ok((false, format!("s={s} l={ell} rho={rho}: {want} != {got}")));
                            }
                            checked += 1;
                        }
                    }
                }
                Ok((true, format!("{checked} values agree")))
            });
        }
    }
}

fn suite_carlitz(r: &mut Runner) {
    let grid = [
        (Kind::Symmetric, 3u64),
        (Kind::Alternating, 3),
        (Kind::Hermitian, 2),
    ];
    for (kind, n_max) in grid {
        for q in [2u64, 3] {
            for n in 1..=n_max {
                r.run("carlitz", format!("{kind} n={n} q={q}"), |b| {
                    let got = restricted::rank_stratification_exhaustive(kind, n as usize, q, b)?;
                    let want = (0..=n).map(|i| restricted::rank_count(kind, n, i, q)).collect::<Result<Vec<_>>>()?;
                    let total: BigUint = want.iter().sum();
                    let sum_ok = total == qcomb::qpow(q, restricted::ambient_dim(kind, n));
                    let join = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    let ok = got == want && sum_ok;
                    Ok((ok, format!("[{}] {} [{}]", join(&want), if got == want { "=" } else { "!=" }, join(&got))))
                });
            }
        }
    }
    r.run("carlitz", "hermitian variant q=2 n=1 i=1", |b| {
        let printed = restricted::rank_count_hermitian(1, 1, 2, HermitianVariant::Printed)?;
        let validated = restricted::rank_count_hermitian(1, 1, 2, HermitianVariant::Validated)?;
        let got = restricted::rank_stratification_exhaustive(Kind::Hermitian, 1, 2, b)?;
        let ok = got[1] == validated && printed != validated;
        Ok((ok, format!("validated sign used: enumerated {} = validated {validated}, printed sign gives {printed}", got[1])))
    });
}

fn suite_tensor(r: &mut Runner) {
    for (rr, n, q) in [(1usize, 2usize, 2u64), (1, 2, 3), (2, 3, 2)] {
        r.run("tensor", format!("r={rr} n={n} q={q}"), |b| {
            let f = restricted::tensor_ratio(rr as u64, n as u64, q)?;
            let bf = restricted::tensor_ratio_bruteforce(rr, n, q, b)?;
            Ok(eq_detail(&f, &bf, f == bf))
        });
    }
}

fn suite_cw_bridge(r: &mut Runner) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for q in [2u64, 3] {
        let f = Arc::new(Field::from_q(q).expect("small prime"));
        for n in 2..=4usize {
            let mut all = critical::projective_points(&f, n);
            let ell = (n + 1).min(all.len());
            // first shuffle whose leading ell points span F_q^N
            let p = loop {
                all.shuffle(&mut rng);
                let p = critical::PointSet::new(f.clone(), n, &all[..ell]).expect("valid points");
                if p.span_dim() == n {
                    break p;
                }
            };
            r.run("cw-bridge", format!("q={q} N={n} l={ell} random"), move |b| {
                let code = critical::code_from_pointset(&p)?;
                let w = code.hyperplane_density(b)?;
                let d = critical::delta_bruteforce(n - 1, &p, b)?;
                Ok(eq_detail(&w, &d, w == d))
            });
        }
    }
    for (n, ell, q) in [(3usize, 4usize, 3u64), (3, 5, 4), (4, 5, 4), (3, 6, 5)] {
        r.run("cw-bridge", format!("arc N={n} l={ell} q={q}"), |b| {
            let f = Arc::new(Field::from_q(q)?);
            let p = critical::moment_curve_arc(f, n, ell)?;
            let code = critical::code_from_pointset(&p)?;
            let w = code.hyperplane_density(b)?;
            let formula = critical::mds_arc_density(n as u64, ell as u64, q)?;
            let d = critical::delta_bruteforce(n - 1, &p, b)?;
            let ok = critical::is_arc(&p) && w == formula && d == formula;
            Ok((ok, format!("{formula} {} {w} {} {d}", if w == formula { "=" } else { "!=" }, if d == formula { "=" } else { "!=" })))
        });
    }
}

pub fn verify(suite: &str, budget: Budget, log: &mut dyn Write) -> Result<Vec<Check>> {
    let suites: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        _ => return usage(format!("unknown suite `{suite}`; expected one of {} or all", SUITES.join(", "))),
    };
    let mut r = Runner { budget, checks: Vec::new(), log };
    for s in suites {
        match s {
            "hejar" => suite_hejar(&mut r),
            "mrd192" => suite_mrd192(&mut r),
            "lambda" => suite_lambda(&mut r),
            "carlitz" => suite_carlitz(&mut r),
            "tensor" => suite_tensor(&mut r),
            "cw-bridge" => suite_cw_bridge(&mut r),
            _ => unreachable!(),
        }
    }
    Ok(r.checks)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_checks(suite: &str, checks: &[Check], format: Format) -> String {
    let count = |st: Status| checks.iter().filter(|c| c.status == st).count();
    let (p, f, s) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    match format {
        Format::Json => {
            let arr: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "suite": c.suite, "name": c.name, "status": c.status.to_string(), "detail": c.detail }))
                .collect();
            let v = json!({
                "suite": suite,
                "check": arr,
                "summary": { "pass": p, "fail": f, "skipped": s },
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("suite,name,status,detail\n");
            for c in checks {
                out.push_str(&format!("{},{},{},{}\n", c.suite, csv_field(&c.name), c.status, csv_field(&c.detail)));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in checks {
                out.push_str(&format!("{:<15} {:<10} {:<34} {}\n", c.status.to_string(), c.suite, c.name, c.detail));
            }
            out.push_str(&format!("{p} passed, {f} failed, {s} skipped\n"));
            out
        }
    }
}

fn render_formula(name: &str, p: &Params, e: &Evaluated, format: Format, digits: usize) -> String {
    let exact = e.exact.as_ref().map(|r| r.to_string());
    let float = e.float.map(|x| fmt_sig(x, digits));
    match format {
        Format::Json => {
            let mut v = json!({ "formula": name, "params": p.given() });
            if let Some(x) = &exact {
                v["exact"] = json!(x);
            }
            if let Some(x) = e.float {
                v["float"] = json!(x);
                v["float_display"] = json!(float);
            }
            if let Some(d) = &e.detail {
                v["detail"] = d.clone();
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let detail = e.detail.as_ref().map(|d| d.to_string()).unwrap_or_default();
            format!(
                "formula,exact,float,detail\n{},{},{},{}\n",
                name,
                exact.unwrap_or_default(),
                float.unwrap_or_default(),
                csv_field(&detail)
            )
        }
        Format::Text => {
            let mut out = match (&exact, &float) {
                (Some(x), Some(f)) if e.exact.as_ref().is_some_and(|r| r.is_integer()) && x.len() <= 15 => format!("{x}\n"),
                (Some(x), Some(f)) => format!("{x} ({f})\n"),
                (None, Some(f)) => format!("{f}\n"),
                _ => String::new(),
            };
            if let Some(d) = &e.detail {
                out.push_str(&(serde_json::to_string_pretty(d).expect("json") + "\n"));
            }
            out
        }
    }
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::InvalidArgument(format!("bad range `{s}`")));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return usage(format!("empty range `{s}`"));
            }
            Ok(a..=b)
        }
        None => {
            let a = parse(s)?;
            Ok(a..=a)
        }
    }
}

fn rows_to(format: Format, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            serde_json::to_string_pretty(&arr).expect("json") + "\n"
        }
        _ => {
            let mut out = header.join(",") + "\n";
            for r in rows {
                out.push_str(&r.iter().map(|x| csv_field(x)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            out
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn table(name: &str, n: Option<&str>, q: Option<u64>, kind: Option<Kind>, rounding: RoundingArg, budget: &Budget, format: Format, digits: usize) -> Result<String> {
    match name {
        "critical-example" => {
            let mode = match rounding {
                RoundingArg::Truncate => Rounding::Truncate,
                RoundingArg::Nearest => Rounding::Nearest,
            };
            let rows = critical::critical_example_table(mode)?;
            Ok(match format {
                Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
                _ => critical::table_csv(&rows),
            })
        }
        "mrd-bounds" => {
            let q = q.unwrap_or(2);
            let range = parse_range(n.unwrap_or("3..7"))?;
            let mut rows = Vec::new();
            for n in range {
                let lb = mrd_lowerbound_formula(n, q)?;
                let a = asymptotic_constants(n, n, n, q)?;
                let dens = to_f64(&lb.density);
                let log_q = if dens > 0.0 { dens.ln() / (q as f64).ln() } else { f64::NEG_INFINITY };
                rows.push(vec![
                    n.to_string(),
                    q.to_string(),
                    if lb.count.is_integer() { lb.count.to_string() } else { fmt_sig(to_f64(&lb.count), digits) },
                    fmt_sig(dens, digits),
                    fmt_sig(log_q, digits),
                    a.full_rank_lower_exponent.map_or(String::new(), |e| e.to_string()),
                    a.mrd_upper_exponent.to_string(),
                ]);
            }
            Ok(rows_to(format, &["n", "q", "count_lower", "density_lower", "log_q_density_lower", "lower_exponent", "upper_exponent"], rows))
        }
        "rank-strata" => {
            let kind = kind.map_or_else(|| usage("missing --kind"), Ok)?;
            let q = q.map_or_else(|| usage("missing --q"), Ok)?;
            let n = *parse_range(n.ok_or(Error::InvalidArgument("missing --n".into()))?)?.start();
            let enumerated = match restricted::rank_stratification_exhaustive(kind, n as usize, q, budget) {
                Ok(v) => Some(v),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let rows = restricted::rank_strata(kind, n, q)?
                .into_iter()
                .map(|r| {
                    let e = enumerated.as_ref().map_or("skipped".to_string(), |v| v[r.i as usize].to_string());
                    vec![r.i.to_string(), r.printed, r.count, e]
                })
                .collect();
            Ok(rows_to(format, &["i", "printed_formula", "validated_formula", "enumerated"], rows))
        }
        _ => usage(format!("unknown table `{name}`; expected critical-example, mrd-bounds or rank-strata")),
    }
}

fn census(q: u64, n: u32, budget: &Budget, format: Format) -> Result<String> {
    let (_, ext) = field_pair(q, n)?;
    let specs = all_twisted_specs(&ext);
    let codes = specs.iter().map(|s| twisted_code(s, ext.clone())).collect::<Result<Vec<_>>>()?;
    let labels = classify(&codes, budget)?;
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut aut = Vec::with_capacity(classes);
    for c in 0..classes {
        let rep = labels.iter().position(|&l| l == c).expect("label used");
        aut.push(aut_group_size_bruteforce(&codes[rep], budget)?);
    }
    let rows: Vec<Value> = specs
        .iter()
        .zip(&labels)
        .map(|(s, &l)| {
            json!({
                "q": s.q, "n": s.n, "i": s.i, "j": s.j, "l": s.l, "c_coords": s.c_coords,
                "class": l, "c0_by_criterion": s.equiv_to_c0_predicate(), "aut_size": aut[l].to_string(),
            })
        })
        .collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("json") + "\n",
        _ => {
            let mut out = String::from("q,n,i,j,l,c_coords,class,c0_by_criterion,aut_size\n");
            for (s, &l) in specs.iter().zip(&labels) {
                let c = s.c_coords.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                out.push_str(&format!("{},{},{},{},{},{},{},{},{}\n", s.q, s.n, s.i, s.j, s.l, c, l, s.equiv_to_c0_predicate(), aut[l]));
            }
            out
        }
    })
}

fn list_formulas(format: Format) -> String {
    let rows = formulas()
        .iter()
        .map(|e| vec![e.name.to_string(), e.params.iter().map(|p| format!("--{p}")).collect::<Vec<_>>().join(" "), e.about.to_string()])
        .collect();
    rows_to(format, &["name", "params", "about"], rows)
}

/// Runs the CLI and returns the exit code: 0 success, 1 a verification
/// failed, 2 bad usage (including a budget too small for the request).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let budget = match cli.budget.as_deref().map(parse_budget).transpose() {
        Ok(b) => b.map_or_else(Budget::default, Budget::new),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let mut log: Vec<u8> = Vec::new();
    let result: Result<(String, i32)> = pool.install(|| match &cli.command {
        Command::Formula { name, .. } if name == "list" => Ok((list_formulas(cli.format), 0)),
        Command::Formula { name, params } => {
            let e = evaluate(name, params, &budget)?;
            Ok((render_formula(name, params, &e, cli.format, cli.precision), 0))
        }
        Command::Verify { suite } => {
            let checks = verify(suite, budget, &mut log)?;
            let failed = checks.iter().any(|c| c.status == Status::Fail);
            Ok((render_checks(suite, &checks, cli.format), failed as i32))
        }
        Command::Table { name, n, q, kind, rounding } => {
            Ok((table(name, n.as_deref(), *q, *kind, *rounding, &budget, cli.format, cli.precision)?, 0))
        }
        Command::Density { n, m, k, d, q, kind } => {
            let res = match kind {
                Kind::Full => density_bruteforce(*n, m.unwrap_or(*n), *k, *d, *q, &budget)?,
                _ if m.is_some_and(|m| m != *n) => return usage("restricted spaces are square"),
                _ => restricted::restricted_density_bruteforce(*kind, *n, *k, *d, *q, &budget)?,
            };
            let _ = writeln!(log, "density: {} ms", res.elapsed_ms);
            let v = res.to_json_stable();
            let out = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
                Format::Csv => {
                    let obj = v.as_object().expect("object");
                    let keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
                    let vals: Vec<String> = obj.values().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect();
                    format!("{}\n{}\n", keys.join(","), vals.join(","))
                }
                Format::Text => {
                    let f = fmt_sig(to_f64(&res.density), cli.precision);
                    format!("{} of {} subspaces: {} ({f})\n", res.count, res.total, res.density)
                }
            };
            Ok((out, 0))
        }
        Command::Census { q, n } => Ok((census(*q, *n, &budget, cli.format)?, 0)),
    });
    let _ = stderr.write_all(&log);
    match result {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
