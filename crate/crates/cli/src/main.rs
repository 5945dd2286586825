use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use peakalg::algebra::fmt_rational;
use peakalg::element::Element;
use peakalg::expr::{self, format_tensor, tensor_to_json, AlgebraKind, Expr, Tag};
use peakalg::freealg::{atoms_from_totals, hilbert_odd, GradedAlphabet};
use peakalg::verify::{Report, Suite};

#[derive(Parser)]
#[command(name = "peakalg", version, about = "Exact computations with shuffle-basis quasisymmetric functions, theta maps and peak algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite an expression in another basis of the same algebra.
    Expand {
        #[arg(long)]
        to: TagArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two elements, in the basis of the first.
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Coproduct, with both legs in the basis of the input.
    Comul {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Antipode, in the basis of the input.
    Antipode {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Apply the theta map of QSym, Sym or NSym.
    Theta {
        #[arg(long)]
        algebra: Option<AlgebraArg>,
        /// Basis of the output (defaults to the input basis).
        #[arg(long)]
        basis: Option<TagArg>,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Evaluate the canonical character of QSym (Sym through its embedding).
    Zeta {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Pair NSym with QSym, or Sym with Sym.
    Pair {
        #[arg(allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
    },
    /// Odd Hilbert series of an alphabet, degrees 0..=N.
    Hilbert {
        #[arg(long)]
        alphabet: AlphabetArg,
        #[arg(long)]
        max_degree: usize,
    },
    /// Generator counts per degree 1..=N, from an alphabet or from totals.
    Atoms {
        #[arg(long, conflicts_with = "totals", required_unless_present = "totals")]
        alphabet: Option<AlphabetArg>,
        /// Comma- or space-separated totals starting with 1.
        #[arg(long)]
        totals: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Run a verification suite (or `all`).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy)]
struct TagArg(Tag);

impl FromStr for TagArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(TagArg).map_err(|e: expr::ExprError| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Qsym,
    Sym,
    Nsym,
}

impl AlgebraArg {
    fn kind(self) -> AlgebraKind {
        match self {
            AlgebraArg::Qsym => AlgebraKind::QSym,
            AlgebraArg::Sym => AlgebraKind::Sym,
            AlgebraArg::Nsym => AlgebraKind::NSym,
        }
    }
}

#[derive(Clone)]
enum AlphabetArg {
    Permutations,
    NCSym,
    File(PathBuf),
}

impl FromStr for AlphabetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "v-perms" => Ok(AlphabetArg::Permutations),
            "ncsym" => Ok(AlphabetArg::NCSym),
            _ => s
                .strip_prefix("file:")
                .map(|p| AlphabetArg::File(PathBuf::from(p)))
                .ok_or_else(|| format!("unknown alphabet {s:?}; expected v-perms, ncsym or file:PATH")),
        }
    }
}

impl AlphabetArg {
    fn name(&self) -> String {
        match self {
            AlphabetArg::Permutations => "v-perms".into(),
            AlphabetArg::NCSym => "ncsym".into(),
            AlphabetArg::File(p) => format!("file:{}", p.display()),
        }
    }

    fn load(&self, max_degree: usize) -> Result<GradedAlphabet, Failure> {
        let a = match self {
            AlphabetArg::Permutations => GradedAlphabet::permutation_atoms(max_degree),
            AlphabetArg::NCSym => GradedAlphabet::ncsym(max_degree),
            AlphabetArg::File(p) => GradedAlphabet::from_file(p),
        };
        a.map_err(|e| Failure::Usage(e.to_string()))
    }
}

enum Failure {
    Usage(String),
    Verification,
}

fn element(text: &str, default: Tag) -> Result<Element, Failure> {
    let e: Expr = expr::parse(text).map_err(|e| Failure::Usage(format!("cannot parse {text:?}: {e}")))?;
    Ok(e.to_element(default))
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn print_element(x: &Element, json: bool) {
    let e = x.to_expr();
    if json {
        println!("{}", e.to_json(x.tag()));
    } else {
        println!("{e}");
    }
}

fn print_scalar(v: &peakalg::Rational, json: bool) {
    if json {
        println!("{}", json!({ "value": fmt_rational(v) }));
    } else {
        println!("{}", fmt_rational(v));
    }
}

fn print_series(label: &str, name: &str, values: &[BigInt], json: bool) {
    let text: Vec<String> = values.iter().map(BigInt::to_string).collect();
    if json {
        println!("{}", json!({ label: name, "values": text }));
    } else {
        println!("{}", text.join(" "));
    }
}

fn report_json(r: &Report) -> serde_json::Value {
    json!({
        "suite": r.suite,
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "cases": c.cases,
            "failures": c.failures,
            "counterexample": c.counterexample,
        })).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Expand { to, expr } => {
            let x = element(&expr, to.0)?;
            print_element(&x.convert(to.0).map_err(usage)?, json);
        }
        Command::Mul { x, y } => {
            let x = element(&x, Tag::M)?;
            let y = element(&y, x.tag())?;
            print_element(&x.mul(&y).map_err(usage)?, json);
        }
        Command::Comul { x } => {
            let (tag, t) = element(&x, Tag::M)?.comul();
            if json {
                println!("{}", tensor_to_json(tag, &t));
            } else {
                println!("{}", format_tensor(tag, &t));
            }
        }
        Command::Antipode { x } => print_element(&element(&x, Tag::M)?.antipode(), json),
        Command::Theta { algebra, basis, x } => {
            let default = basis.map(|b| b.0).unwrap_or(match algebra.map(AlgebraArg::kind) {
                Some(AlgebraKind::Sym) => Tag::P,
                Some(AlgebraKind::NSym) => Tag::SD,
                _ => Tag::S,
            });
            let x = element(&x, default)?;
            if let Some(a) = algebra {
                if a.kind() != x.kind() {
                    return Err(Failure::Usage(format!("expression lives in {}, not {}", x.kind(), a.kind())));
                }
            }
            let image = x.theta();
            let image = match basis {
                Some(b) => image.convert(b.0).map_err(usage)?,
                None => image,
            };
            print_element(&image, json);
        }
        Command::Zeta { x } => print_scalar(&element(&x, Tag::M)?.zeta().map_err(usage)?, json),
        Command::Pair { u, v } => {
            let u = element(&u, Tag::SD)?;
            let v = element(&v, Tag::S)?;
            print_scalar(&u.pair(&v).map_err(usage)?, json);
        }
        Command::Hilbert { alphabet, max_degree } => {
            let a = alphabet.load(max_degree)?;
            print_series("alphabet", &alphabet.name(), &hilbert_odd(&a, max_degree), json);
        }
        Command::Atoms { alphabet, totals, max_degree } => match (alphabet, totals) {
            (Some(alphabet), _) => {
                let a = alphabet.load(max_degree)?;
                let counts: Vec<BigInt> = (1..=max_degree).map(|d| BigInt::from(a.count(d))).collect();
                print_series("alphabet", &alphabet.name(), &counts, json);
            }
            (None, Some(totals)) => {
                let values = totals
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<BigInt>().map_err(|_| Failure::Usage(format!("bad total {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if values.first() != Some(&BigInt::from(1)) {
                    return Err(Failure::Usage("totals must start with 1".into()));
                }
                print_series("totals", &totals, &atoms_from_totals(&values), json);
            }
            (None, None) => unreachable!("clap requires one of the two"),
        },
        Command::Verify { suite, max_degree } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(Failure::Usage)?]
            };
            let reports: Vec<Report> = suites.into_iter().map(|s| s.run(max_degree)).collect();
            if json {
                let docs: Vec<_> = reports.iter().map(report_json).collect();
                println!("{}", serde_json::Value::Array(docs));
            } else {
                for r in &reports {
                    print!("{r}");
                }
            }
            if !reports.iter().all(Report::passed) {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
