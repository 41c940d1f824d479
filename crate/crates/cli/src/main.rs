use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chowlab::charney::{alternating_probe, cd, tangent_secant, CdMethod};
use chowlab::check::{check_suites, CheckOptions, Fault, Suite};
use chowlab::chow::{basis_monomial_oracle, delta_series, hilbert, Method};
use chowlab::exactalg::BiPoly;
use chowlab::flats::{build_explicit, FamilySpec, Kind};
use chowlab::ordercx::conjecture_check;
use chowlab::permstat::DEFAULT_ENUM_BOUND;
use chowlab::qeuler::{egf_identity_check, q_eulerian_by_definition, q_eulerian_by_recurrence};
use chowlab::Error;

/// Exact Hilbert series and Charney–Davis quantities of Chow rings of
/// uniform and finite vector space matroids.
#[derive(Parser, Debug)]
#[command(name = "chowlab", version)]
struct Cli {
    /// Largest permutation size any enumeration may reach.
    #[arg(long, global = true, env = "CHOWLAB_NMAX", default_value_t = DEFAULT_ENUM_BOUND)]
    bound: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Uniform,
    Vector,
}

impl Family {
    fn kind(self) -> Kind {
        match self {
            Family::Uniform => Kind::Uniform,
            Family::Vector => Kind::VectorSpace,
        }
    }
}

#[derive(Args, Debug)]
struct SpecArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<FamilySpec, Error> {
        FamilySpec::new(self.family.kind(), self.n, self.r)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum HilbertMethod {
    Chain,
    Recurrence,
    Closed,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CdMethodArg {
    Direct,
    Chain,
    Det,
    Qsecant,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EulerMethod {
    Recurrence,
    Definition,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert series of the Chow ring.
    Hilbert {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = HilbertMethod::Chain)]
        method: HilbertMethod,
        /// Prime field order for the explicit vector space lattice (oracle only).
        #[arg(long)]
        p: Option<u32>,
    },
    /// Charney–Davis quantity H(A, -1), signed unless --unsigned.
    Cd {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = CdMethodArg::Direct)]
        method: CdMethodArg,
        #[arg(long)]
        unsigned: bool,
    },
    /// The maj-exc q-Eulerian polynomial A_n(q, t).
    Qeulerian {
        #[arg(long)]
        n: usize,
        /// Specialize q = 1.
        #[arg(long)]
        q1: bool,
        #[arg(long, value_enum, default_value_t = EulerMethod::Recurrence)]
        method: EulerMethod,
        /// Also verify the q-exponential generating function through x^n.
        #[arg(long)]
        egf: bool,
        /// Series truncation order for --egf (default 2n+2).
        #[arg(long)]
        order: Option<usize>,
    },
    /// q-tangent-secant numbers E_0..E_n.
    Secant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q1: bool,
        /// Also compare with sums over alternating permutations.
        #[arg(long)]
        probe: bool,
    },
    /// Kernel series H(M_(r+1)) - H(M_r) as a permutation sum.
    Delta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        q1: bool,
    },
    /// Order complex h-polynomial of L(U(n, r)) against Chow ring series.
    Conjecture {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// Cross-validation suites.
    Check {
        /// `all` or a comma-separated list of suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        /// Perturb the chain-sum route for VectorSpace(nmax, nmax).
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    ok: bool,
}

impl Output {
    fn poly(p: &BiPoly, meta: Value) -> Output {
        let mut json = meta;
        json["poly"] = serde_json::to_value(p).expect("polynomials serialize");
        Output {
            text: format!("{p}\n"),
            json,
            csv: Some(p.to_csv()),
            ok: true,
        }
    }
}

fn family_name(spec: &FamilySpec) -> &'static str {
    match spec.kind {
        Kind::Uniform => "uniform",
        Kind::VectorSpace => "vector",
    }
}

fn spec_meta(spec: &FamilySpec) -> Value {
    json!({"family": family_name(spec), "n": spec.n, "r": spec.r})
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Hilbert { spec, method, p } => {
            let spec = spec.spec()?;
            if p.is_some() && *method != HilbertMethod::Oracle {
                return Err(Failure::Usage(
                    "--p is only valid with --method oracle".into(),
                ));
            }
            let (poly, name) = match method {
                HilbertMethod::Oracle => {
                    if spec.kind == Kind::VectorSpace && p.is_none() {
                        return Err(Failure::Usage(
                            "--method oracle with the vector family needs --p".into(),
                        ));
                    }
                    if spec.kind == Kind::Uniform && p.is_some() {
                        return Err(Failure::Usage(
                            "--p applies only to the vector family".into(),
                        ));
                    }
                    let lat = build_explicit(&spec, *p)?;
                    (basis_monomial_oracle(&lat)?.to_bipoly(), "oracle")
                }
                HilbertMethod::Chain => (hilbert(&spec, Method::Chain, cli.bound)?, "chain"),
                HilbertMethod::Recurrence => {
                    (hilbert(&spec, Method::Recurrence, cli.bound)?, "recurrence")
                }
                HilbertMethod::Closed => (hilbert(&spec, Method::Closed, cli.bound)?, "closed"),
            };
            let mut meta = spec_meta(&spec);
            meta["method"] = json!(name);
            if let Some(p) = p {
                meta["p"] = json!(p);
            }
            Ok(Output::poly(&poly, meta))
        }
        Command::Cd {
            spec,
            method,
            unsigned,
        } => {
            let spec = spec.spec()?;
            let (m, name) = match method {
                CdMethodArg::Direct => (CdMethod::Direct, "direct"),
                CdMethodArg::Chain => (CdMethod::Chain, "chain"),
                CdMethodArg::Det => (CdMethod::Determinant, "det"),
                CdMethodArg::Qsecant => (CdMethod::QSecant, "qsecant"),
            };
            let res = cd(&spec, m)?;
            let shown = if *unsigned {
                &res.unsigned
            } else {
                &res.signed
            };
            let mut json = spec_meta(&spec);
            json["method"] = json!(name);
            json["unsigned"] = serde_json::to_value(&res.unsigned).unwrap();
            json["signed"] = serde_json::to_value(&res.signed).unwrap();
            json["parity"] = json!(res.parity);
            Ok(Output {
                text: format!("{shown}\n"),
                json,
                csv: Some(shown.to_csv()),
                ok: true,
            })
        }
        Command::Qeulerian {
            n,
            q1,
            method,
            egf,
            order,
        } => {
            let mut poly = match method {
                EulerMethod::Recurrence => q_eulerian_by_recurrence(*n),
                EulerMethod::Definition => q_eulerian_by_definition(*n, cli.bound)?,
            };
            if *q1 {
                poly = poly.eval_q(&1.into());
            }
            let mut out = Output::poly(&poly, json!({"n": n, "q1": q1}));
            if *egf {
                let order = order.unwrap_or(2 * n + 2);
                let ok = egf_identity_check(*n, order)?;
                out.json["egf_identity"] = json!(ok);
                let _ = writeln!(
                    out.text,
                    "generating function identity through x^{n}: {}",
                    verdict(ok)
                );
                out.ok = ok;
            }
            Ok(out)
        }
        Command::Secant { n, q1, probe } => {
            let table = tangent_secant(*n)?;
            let mut text = String::new();
            let mut csv = String::from("n,q,coefficient\n");
            let mut entries = Vec::new();
            for (k, e) in table.entries.iter().enumerate() {
                let e = if *q1 { e.eval_q(&1.into()) } else { e.clone() };
                let _ = writeln!(text, "E_{k} = {e}");
                for (m, c) in e.terms() {
                    let _ = writeln!(csv, "{k},{},{c}", m.q);
                }
                entries.push(serde_json::to_value(&e).unwrap());
            }
            let mut json = json!({"n": n, "q1": q1, "entries": entries});
            if *probe {
                let reports = (0..=*n)
                    .map(|k| alternating_probe(k, cli.bound))
                    .collect::<Result<Vec<_>, _>>()?;
                for rep in &reports {
                    let _ = writeln!(
                        text,
                        "alternating n={}: up-down {} (equal {}, up to sign {}); down-up {} (equal {}, up to sign {})",
                        rep.n,
                        rep.up_down,
                        rep.up_down_equal,
                        rep.up_down_equal_up_to_sign,
                        rep.down_up,
                        rep.down_up_equal,
                        rep.down_up_equal_up_to_sign
                    );
                }
                json["alternating"] = serde_json::to_value(&reports).unwrap();
            }
            Ok(Output {
                text,
                json,
                csv: Some(csv),
                ok: true,
            })
        }
        Command::Delta { n, r, q1 } => {
            let mut poly = delta_series(*n, *r, cli.bound)?;
            if *q1 {
                poly = poly.eval_q(&1.into());
            }
            Ok(Output::poly(&poly, json!({"n": n, "r": r, "q1": q1})))
        }
        Command::Conjecture { n, r } => {
            let rep = conjecture_check(*n, *r)?;
            let text = format!(
                "lhs = {}\nrhs = {}\nequal = {}\nreversed lhs = {} (t^2 * reversed lhs = rhs: {})\nfull-lattice reading = {} (agrees {})\nf-vector routes agree = {}\nbivariate identity at n={}: {} (with reversed h: {})\n",
                rep.lhs,
                rep.rhs,
                rep.equal,
                rep.lhs_reversed,
                rep.t2_lhs_reversed_equal,
                rep.lhs_full_lattice,
                rep.readings_agree,
                rep.fvector_routes_agree.map_or("not checked".to_string(), |b| b.to_string()),
                rep.bivariate.n,
                rep.bivariate.equal,
                rep.bivariate.equal_reversed
            );
            let ok = rep.fvector_routes_agree != Some(false);
            Ok(Output {
                text,
                json: serde_json::to_value(&rep).unwrap(),
                csv: None,
                ok,
            })
        }
        Command::Check {
            suite,
            nmax,
            inject_fault,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite
                    .split(',')
                    .map(|s| s.trim().parse::<Suite>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| Failure::Usage(e.to_string()))?
            };
            let mut opts = CheckOptions::new(*nmax);
            opts.bound = cli.bound;
            if *inject_fault && *nmax >= 1 {
                opts.fault = Some(Fault {
                    spec: FamilySpec::vector_space(*nmax, *nmax)?,
                });
            }
            let report = check_suites(&suites, &opts);
            let mut text = String::new();
            let _ = writeln!(text, "{:<14} {:>7}  result", "suite", "checks");
            for s in &report.suites {
                let _ = writeln!(
                    text,
                    "{:<14} {:>7}  {}",
                    s.suite.name(),
                    s.checks,
                    verdict(s.passed)
                );
                for f in &s.failures {
                    let _ = writeln!(text, "    {f}");
                }
            }
            let _ = writeln!(text, "overall: {}", verdict(report.passed));
            let mut csv = String::from("suite,checks,passed\n");
            for s in &report.suites {
                let _ = writeln!(csv, "{},{},{}", s.suite.name(), s.checks, s.passed);
            }
            Ok(Output {
                text,
                json: serde_json::to_value(&report).unwrap(),
                csv: Some(csv),
                ok: report.passed,
            })
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Csv => match &out.csv {
                    Some(csv) => print!("{csv}"),
                    None => {
                        eprintln!("error: csv output is not available for this command");
                        return ExitCode::from(2);
                    }
                },
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) => 2,
                Error::Resource(_) => 3,
                Error::Invariant(_) => 1,
            })
        }
    }
}
