use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use equisingular::connections::{classify_beta, connection_from_json, verdict, ConnectionError};
use equisingular::expansional::{frame_coefficient, product_integral_oracle, universal_frame, GradedKernel};
use equisingular::flat_bundles::{intertwines, morphism_check, BundleError, BundleObject, Morphism};
use equisingular::free_graded::NCSeries;
use equisingular::hopf_characters::{
    antipode_inverse, birkhoff, convolve, is_pole_only, is_regular, Character, CharacterJson, HopfPresentation,
    RootedTrees, ShuffleHopf,
};
use equisingular::scalar_series::{to_f64, LaurentSeries};

const MAX_TRUNC: u32 = 12;

#[derive(Parser)]
#[command(name = "equi", version, about = "Birkhoff decompositions, universal frames and equisingular connections")]
struct Cli {
    /// Truncation degree N, 1..=12.
    #[arg(long, global = true, env = "EQUI_TRUNC", default_value_t = 6)]
    trunc: u32,

    /// Output format; csv is only available for `frame`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Universal singular frame coefficients for all words of degree <= order.
    Frame {
        #[arg(long)]
        order: u32,
        /// Also cross-check against a product integral with this many steps.
        #[arg(long)]
        oracle_steps: Option<usize>,
    },
    /// Birkhoff decomposition of a character file.
    Birkhoff {
        input: PathBuf,
        /// Write the negative part here.
        #[arg(long)]
        minus: Option<PathBuf>,
        /// Write the positive part here.
        #[arg(long)]
        plus: Option<PathBuf>,
    },
    /// Flatness, equisingularity and monodromy of a connection file.
    Verify { input: PathBuf },
    /// The class β of a flat equisingular connection.
    Classify { input: PathBuf },
    /// Whether a linear map is a morphism between two bundle objects.
    Morphism { source: PathBuf, target: PathBuf, map: PathBuf },
}

enum Failure {
    Usage(String),
    Parse(String),
    Internal(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Internal(_) => 4,
            Failure::Verification(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Internal(m) | Failure::Verification(m) => m,
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Outcome<()> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a JSON value cannot fail");
    s.push('\n');
    s
}

fn check_trunc(trunc: u32, what: &str) -> Outcome<()> {
    if trunc == 0 || trunc > MAX_TRUNC {
        return Err(Failure::Usage(format!("{what} {trunc} outside 1..={MAX_TRUNC}")));
    }
    Ok(())
}

fn cmd_frame(cli: &Cli, order: u32, oracle_steps: Option<usize>) -> Outcome<String> {
    check_trunc(cli.trunc, "truncation")?;
    if order == 0 || order > cli.trunc {
        return Err(Failure::Usage(format!("order {order} outside 1..={} (raise --trunc for more)", cli.trunc)));
    }
    let (table, _) = universal_frame(order);
    if let Some(steps) = oracle_steps {
        if steps == 0 {
            return Err(Failure::Usage("--oracle-steps must be positive".into()));
        }
        let beta = (1..=order).fold(NCSeries::zero(order), |acc, n| &acc + &NCSeries::generator(order, n));
        let kernel = GradedKernel::power(beta, LaurentSeries::one());
        let num = product_integral_oracle(&kernel, 1.0, &|_| 0.0, 0.0, 1.0, steps)
            .map_err(|e| Failure::Internal(e.to_string()))?;
        let worst = table
            .rows
            .iter()
            .map(|r| (num.coeff(&r.word) - to_f64(&frame_coefficient(&r.word))).abs())
            .fold(0.0, f64::max);
        eprintln!("oracle: max deviation {worst:.3e} over {} words with {steps} steps", table.rows.len());
        if worst > 1e-4 {
            return Err(Failure::Internal(format!("frame disagrees with the product integral by {worst:.3e}")));
        }
    }
    Ok(match cli.format {
        Format::Csv => table.to_csv(),
        Format::Json => pretty(&table.to_json()),
    })
}

fn decompose<P: HopfPresentation>(p: &P, v: &Value) -> Outcome<(Value, Value, Value)> {
    let phi = Character::from_json(p, v).map_err(|e| Failure::Parse(e.to_string()))?;
    let internal = |e: equisingular::hopf_characters::HopfError| Failure::Internal(e.to_string());
    let (minus, plus) = birkhoff(p, &phi).map_err(internal)?;
    let back = convolve(p, &antipode_inverse(p, &minus).map_err(internal)?, &plus).map_err(internal)?;
    if !back.agrees(&phi) {
        return Err(Failure::Internal("inverse(minus) * plus does not reproduce the input".into()));
    }
    if !is_pole_only(&minus) || !is_regular(&plus) {
        return Err(Failure::Internal("Birkhoff factors violate their pole conditions".into()));
    }
    let report = json!({
        "presentation": p.name(),
        "trunc": p.trunc(),
        "reconstructed": "exact",
        "minus_pole_only": true,
        "plus_regular": true,
    });
    Ok((minus.to_json(), plus.to_json(), report))
}

fn cmd_birkhoff(input: &Path, minus_path: Option<&Path>, plus_path: Option<&Path>) -> Outcome<String> {
    let v = read_json(input)?;
    let header = CharacterJson::parse(&v).map_err(|e| Failure::Parse(e.to_string()))?;
    check_trunc(header.trunc, "character truncation")?;
    let (minus, plus, report) = match header.presentation.as_str() {
        "shuffle" => decompose(&ShuffleHopf::new(header.trunc), &v)?,
        "rooted_trees" => decompose(&RootedTrees::new(header.trunc), &v)?,
        other => return Err(Failure::Parse(format!("unknown presentation {other:?}"))),
    };
    let mut out = json!({"report": report});
    match minus_path {
        Some(p) => write_text(p, &pretty(&minus))?,
        None => out["minus"] = minus,
    }
    match plus_path {
        Some(p) => write_text(p, &pretty(&plus))?,
        None => out["plus"] = plus,
    }
    Ok(pretty(&out))
}

fn load_connection(input: &Path) -> Outcome<equisingular::connections::InvariantConnection<NCSeries<LaurentSeries>>> {
    let v = read_json(input)?;
    let omega = connection_from_json(&v).map_err(|e| Failure::Parse(e.to_string()))?;
    check_trunc(omega.a.trunc(), "connection truncation")?;
    Ok(omega)
}

fn cmd_verify(input: &Path) -> Outcome<String> {
    let omega = load_connection(input)?;
    let v = verdict(&omega).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(pretty(&v.to_json()))
}

fn cmd_classify(input: &Path) -> Outcome<String> {
    let omega = load_connection(input)?;
    match classify_beta(&omega) {
        Ok(beta) => Ok(pretty(&beta.to_json())),
        Err(e @ (ConnectionError::NotFlat | ConnectionError::NotEquisingular | ConnectionError::Obstructed { .. })) => {
            Err(Failure::Verification(e.to_string()))
        }
        Err(e) => Err(Failure::Internal(e.to_string())),
    }
}

fn cmd_morphism(source: &Path, target: &Path, map: &Path) -> Outcome<String> {
    let parse = |e: BundleError| Failure::Parse(e.to_string());
    let a = BundleObject::from_json(&read_json(source)?).map_err(parse)?;
    let b = BundleObject::from_json(&read_json(target)?).map_err(parse)?;
    let t = Morphism::from_json(&read_json(map)?, a.space(), b.space()).map_err(parse)?;
    let ok = match morphism_check(&a, &b, &t) {
        Ok(ok) => ok,
        Err(e @ BundleError::NotDegreeCompatible { .. }) => return Err(Failure::Parse(e.to_string())),
        Err(e) => return Err(Failure::Internal(e.to_string())),
    };
    if ok != intertwines(&a, &b, &t) {
        return Err(Failure::Internal("W-equivalence and intertwining disagree".into()));
    }
    Ok(pretty(&json!({"morphism": ok})))
}

fn run(cli: &Cli) -> Outcome<String> {
    check_trunc(cli.trunc, "truncation")?;
    if cli.format == Format::Csv && !matches!(cli.command, Command::Frame { .. }) {
        return Err(Failure::Usage("csv output is only available for frame".into()));
    }
    match &cli.command {
        Command::Frame { order, oracle_steps } => cmd_frame(cli, *order, *oracle_steps),
        Command::Birkhoff { input, minus, plus } => cmd_birkhoff(input, minus.as_deref(), plus.as_deref()),
        Command::Verify { input } => cmd_verify(input),
        Command::Classify { input } => cmd_classify(input),
        Command::Morphism { source, target, map } => cmd_morphism(source, target, map),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| match &cli.out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("equi: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
