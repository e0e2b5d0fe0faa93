//! `maxjordan`: counts of maximal Jordan blocks from a model of the special fiber.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxjordan::criteria::{
    curve_nu_03, load_h1, load_hyperresolution, singular_nu_c, singular_nu_c_upper, theorem3_nu, theorem4_check,
    CriteriaError, Theorem4Scope,
};
use maxjordan::eigen_complex::{
    build_b_complex, build_c_complex, compute_report, load_atlas, nu_vectors, CechComplex, EigenError, EigenvalueSpec,
    JordanReport, RowSource, TrivializationAtlas,
};
use maxjordan::snc_model::{load_model, DegenerationModel, ModelError};
use maxjordan::spectrum::{parse_exponent, parse_exponent_list, spectrum_homogeneous, spectrum_yomdin, Exponent};

#[derive(Parser)]
#[command(
    name = "maxjordan",
    version,
    about = "Maximal Jordan blocks of local monodromy from an SNC model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model, and optionally an atlas and H1 data against it.
    Validate(ModelArgs),
    /// List the orders of eigenvalues that can occur, with J(λ).
    Orders(ModelArgs),
    /// Dimensions and cohomology of C or B.
    Complex(ComplexArgs),
    /// ν^j = dim H^j B.
    Nu(EigenArgs),
    /// ν_c^j, the kernel of restriction to the horizontal divisors.
    Nuc(EigenArgs),
    /// All ν and ν_c rows, extended to the upper degrees by duality.
    Report(EigenArgs),
    /// ν from the dimensions of B alone, for a compactified isolated singularity.
    Theorem3(EigenArgs),
    /// Whether H1 data forces B = C.
    Theorem4(Theorem4Args),
    /// The two-count formula for plane curves.
    Curve03(Curve03Args),
    /// ν_c for a singular total space from a hyperresolution file.
    SingularNuc(SingularArgs),
    /// Spectrum of a homogeneous polynomial or of its Yomdin deformation.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct ModelArgs {
    model: PathBuf,
    #[arg(long)]
    atlas: Option<PathBuf>,
    #[arg(long)]
    h1: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Stratum,
    Union,
}

#[derive(Args)]
struct EigenArgs {
    model: PathBuf,
    #[arg(long)]
    atlas: Option<PathBuf>,
    /// `all`, an order `d`, or `d:a` for λ = exp(2πi a/d).
    #[arg(long, default_value = "all")]
    lambda: String,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args)]
struct ComplexArgs {
    #[command(flatten)]
    eigen: EigenArgs,
    #[arg(long, value_enum, default_value = "c")]
    kind: Kind,
}

#[derive(Args)]
struct Theorem4Args {
    model: PathBuf,
    #[arg(long)]
    h1: PathBuf,
    #[arg(long, default_value = "all")]
    lambda: String,
    #[arg(long, value_enum, default_value = "stratum")]
    scope: Scope,
}

#[derive(Args)]
struct Curve03Args {
    model: PathBuf,
    #[arg(long, default_value = "all")]
    lambda: String,
}

#[derive(Args)]
struct SingularArgs {
    hyperresolution: PathBuf,
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
    /// Yomdin deformation by h^{d+k}.
    #[arg(long)]
    k: Option<i64>,
    /// Comma-separated spectral numbers of the transversal singularities.
    #[arg(long, conflicts_with = "alphas_file")]
    alphas: Option<String>,
    /// JSON list of spectral numbers, as numbers or "p/q" strings.
    #[arg(long)]
    alphas_file: Option<PathBuf>,
    /// Subtract 1 from every exponent.
    #[arg(long)]
    shift: bool,
}

enum Failure {
    Input(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Inconsistent(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Inconsistent(m) => m,
        }
    }
}

fn located(path: &Path, message: String) -> String {
    let p = path.display().to_string();
    if message.contains(&p) {
        message
    } else {
        format!("{p}: {message}")
    }
}

fn model_failure(path: &Path, e: ModelError) -> Failure {
    Failure::Input(located(path, e.to_string()))
}

fn eigen_failure(path: &Path, e: EigenError) -> Failure {
    let m = located(path, e.to_string());
    if e.is_inconsistency() {
        Failure::Inconsistent(m)
    } else {
        Failure::Input(m)
    }
}

fn criteria_failure(path: &Path, e: CriteriaError) -> Failure {
    let m = located(path, e.to_string());
    if e.is_inconsistency() {
        Failure::Inconsistent(m)
    } else {
        Failure::Input(m)
    }
}

type Outcome = Result<String, Failure>;

fn open_model(path: &Path) -> Result<DegenerationModel, Failure> {
    load_model(path).map_err(|e| model_failure(path, e))
}

fn open_atlas(path: Option<&Path>, model: &DegenerationModel) -> Result<TrivializationAtlas, Failure> {
    let Some(path) = path else {
        return Ok(TrivializationAtlas::canonical());
    };
    let atlas = load_atlas(path).map_err(|e| eigen_failure(path, e))?;
    atlas.validate(model).map_err(|e| eigen_failure(path, e))?;
    Ok(atlas)
}

enum Selection {
    All,
    Order(u32),
    One(u32, u32),
}

fn parse_lambda(s: &str) -> Result<Selection, Failure> {
    let bad = || Failure::Input(format!("--lambda: expected 'all', 'd' or 'd:a', got '{s}'"));
    if s == "all" {
        return Ok(Selection::All);
    }
    match s.split_once(':') {
        Some((d, a)) => Ok(Selection::One(
            d.parse().map_err(|_| bad())?,
            a.parse().map_err(|_| bad())?,
        )),
        None => Ok(Selection::Order(s.parse().map_err(|_| bad())?)),
    }
}

/// Eigenvalues selected by `--lambda`. With `all`, orders at which the model
/// is incomplete or the atlas has no block are skipped with a note on stderr.
fn select(
    model: &DegenerationModel,
    atlas: Option<&TrivializationAtlas>,
    lambda: &str,
) -> Result<Vec<EigenvalueSpec>, Failure> {
    let spec = |d, a| EigenvalueSpec::new(d, a).map_err(|e| Failure::Input(format!("--lambda: {e}")));
    match parse_lambda(lambda)? {
        Selection::One(d, a) => Ok(vec![spec(d, a)?]),
        Selection::Order(d) => {
            spec(d, 1)?;
            Ok(EigenvalueSpec::of_order(d))
        }
        Selection::All => {
            let mut out = Vec::new();
            for d in model.lambda_orders() {
                if !model.is_complete(d) {
                    eprintln!("note: skipping order {d}: the model does not list every stratum it needs");
                    continue;
                }
                if let Some(a) = atlas {
                    if !a.has_order(d) {
                        eprintln!("note: skipping order {d}: the atlas has no block for it");
                        continue;
                    }
                }
                out.extend(EigenvalueSpec::of_order(d));
            }
            Ok(out)
        }
    }
}

fn orders_of(eigens: &[EigenvalueSpec]) -> Vec<u32> {
    let mut out: Vec<u32> = eigens.iter().map(|e| e.d()).collect();
    out.dedup();
    out
}

fn degrees(n: usize, degree: Option<usize>) -> Result<Vec<usize>, Failure> {
    match degree {
        Some(j) if j > n => Err(Failure::Input(format!("--degree {j} is out of range [0, {n}]"))),
        Some(j) => Ok(vec![j]),
        None => Ok((0..=n).collect()),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn validate(args: &ModelArgs) -> Outcome {
    let model = open_model(&args.model)?;
    let mut out = format!(
        "{}: ok ({} vertical, {} strata, {} horizontal, n = {})\n",
        args.model.display(),
        model.vertical().len(),
        model.strata().len(),
        model.horizontal().len(),
        model.n()
    );
    for d in model.lambda_orders() {
        if let Err(e) = model.check_complete(d) {
            let _ = writeln!(out, "  order {d}: not computable: {e}");
        }
    }
    if let Some(path) = &args.atlas {
        let atlas = open_atlas(Some(path), &model)?;
        let orders: Vec<String> = atlas.orders().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}: ok (orders {})", path.display(), orders.join(" "));
    }
    if let Some(path) = &args.h1 {
        let h1 = load_h1(path).map_err(|e| criteria_failure(path, e))?;
        for key in h1.keys() {
            let known = model.strata().position(key).is_some() || key == "union" || key.starts_with("union:");
            if !known {
                return Err(Failure::Input(format!("{}: unknown stratum '{key}'", path.display())));
            }
        }
        let _ = writeln!(out, "{}: ok ({} entries)", path.display(), h1.len());
    }
    Ok(out)
}

fn orders(args: &ModelArgs) -> Outcome {
    let model = open_model(&args.model)?;
    let mut out = String::from("d\tcomplete\tJ\n");
    for d in model.lambda_orders() {
        let j: Vec<String> = model.j_set_ids(d).into_iter().collect();
        let _ = writeln!(
            out,
            "{d}\t{}\t{}",
            if model.is_complete(d) { "yes" } else { "no" },
            j.join(",")
        );
    }
    Ok(out)
}

fn complex(args: &ComplexArgs) -> Outcome {
    let e = &args.eigen;
    let model = open_model(&e.model)?;
    let atlas = match args.kind {
        Kind::B => Some(open_atlas(e.atlas.as_deref(), &model)?),
        Kind::C => None,
    };
    let eigens = select(&model, atlas.as_ref(), &e.lambda)?;
    let mut built: Vec<(EigenvalueSpec, CechComplex)> = Vec::new();
    for eigen in eigens {
        let c = match &atlas {
            None => build_c_complex(&model, eigen.d()),
            Some(a) => build_b_complex(&model, eigen.d(), a, eigen.a()),
        }
        .map_err(|err| eigen_failure(&e.model, err))?;
        built.push((eigen, c));
    }
    let kind = match args.kind {
        Kind::C => "C",
        Kind::B => "B",
    };
    let js = degrees(model.n(), e.degree)?;
    let mut out = String::new();
    match e.format {
        Format::Tsv => {
            out.push_str("d\ta\tkind\tj\tdim\tcohomology\n");
            for (eigen, c) in &built {
                let h = c.cohomology_dims();
                for &j in &js {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{kind}\t{j}\t{}\t{}",
                        eigen.d(),
                        eigen.a(),
                        c.dims()[j],
                        h[j]
                    );
                }
            }
        }
        Format::Pretty => {
            for (eigen, c) in &built {
                let _ = writeln!(out, "{kind}(λ = ζ_{}^{})", eigen.d(), eigen.a());
                let _ = writeln!(out, "  dims        {}", join(&c.dims()));
                let _ = writeln!(out, "  cohomology  {}", join(&c.cohomology_dims()));
                for &j in &js {
                    let _ = writeln!(out, "  basis^{j}     {}", c.basis(j).join(" "));
                }
            }
        }
    }
    Ok(out)
}

fn nu_table(args: &EigenArgs, compact: bool) -> Outcome {
    let model = open_model(&args.model)?;
    let atlas = open_atlas(args.atlas.as_deref(), &model)?;
    let eigens = select(&model, Some(&atlas), &args.lambda)?;
    let js = degrees(model.n(), args.degree)?;
    let mut rows = Vec::new();
    for eigen in eigens {
        let (nu, nu_c) = nu_vectors(&model, &atlas, eigen).map_err(|e| eigen_failure(&args.model, e))?;
        rows.push((eigen, if compact { nu_c } else { nu }));
    }
    let name = if compact { "nu_c" } else { "nu" };
    let mut out = String::new();
    match args.format {
        Format::Tsv => {
            let _ = writeln!(out, "d\ta\tj\t{name}");
            for (eigen, v) in &rows {
                for &j in &js {
                    let _ = writeln!(out, "{}\t{}\t{j}\t{}", eigen.d(), eigen.a(), v[j]);
                }
            }
        }
        Format::Pretty => {
            for (eigen, v) in &rows {
                let picked: Vec<usize> = js.iter().map(|&j| v[j]).collect();
                let _ = writeln!(out, "λ = ζ_{}^{}: {name} = {}", eigen.d(), eigen.a(), join(&picked));
            }
        }
    }
    Ok(out)
}

fn report(args: &EigenArgs) -> Outcome {
    let model = open_model(&args.model)?;
    let atlas = open_atlas(args.atlas.as_deref(), &model)?;
    let eigens = select(&model, Some(&atlas), &args.lambda)?;
    let report = compute_report(&model, &atlas, &orders_of(&eigens)).map_err(|e| eigen_failure(&args.model, e))?;
    if let Some(j) = args.degree {
        if j > 2 * model.n() {
            return Err(Failure::Input(format!(
                "--degree {j} is out of range [0, {}]",
                2 * model.n()
            )));
        }
    }
    let one = match parse_lambda(&args.lambda)? {
        Selection::One(d, a) => Some((d, a)),
        _ => None,
    };
    let mut filtered = JordanReport::new(report.n());
    for r in report.rows() {
        if one.is_none_or(|(d, a)| (r.d, r.a) == (d, a)) && args.degree.is_none_or(|j| r.j == j) {
            filtered.insert(*r);
        }
    }
    let report = filtered;
    Ok(match args.format {
        Format::Tsv => report.to_tsv(),
        Format::Pretty => report.to_pretty(),
    })
}

fn theorem3(args: &EigenArgs) -> Outcome {
    let model = open_model(&args.model)?;
    let atlas = open_atlas(args.atlas.as_deref(), &model)?;
    let eigens = select(&model, Some(&atlas), &args.lambda)?;
    let js = degrees(model.n(), args.degree)?;
    let mut out = String::from("d\ta\tj\tnu\tsource\n");
    for eigen in eigens {
        let nu = theorem3_nu(&model, &atlas, eigen.d(), eigen.a()).map_err(|e| criteria_failure(&args.model, e))?;
        for &j in &js {
            let _ = writeln!(
                out,
                "{}\t{}\t{j}\t{}\t{}",
                eigen.d(),
                eigen.a(),
                nu[j],
                RowSource::Theorem3.as_str()
            );
        }
    }
    Ok(out)
}

fn theorem4(args: &Theorem4Args) -> Outcome {
    let model = open_model(&args.model)?;
    let h1 = load_h1(&args.h1).map_err(|e| criteria_failure(&args.h1, e))?;
    let scope = match args.scope {
        Scope::Stratum => Theorem4Scope::PerStratum,
        Scope::Union => Theorem4Scope::Union,
    };
    let eigens = select(&model, None, &args.lambda)?;
    let mut out = String::new();
    for d in orders_of(&eigens) {
        model.check_complete(d).map_err(|e| model_failure(&args.model, e))?;
        let v = theorem4_check(&model, d, &h1, scope).map_err(|e| criteria_failure(&args.h1, e))?;
        let equal: Vec<String> = v
            .degree_equal
            .iter()
            .map(|&b| if b { "yes" } else { "no" }.to_string())
            .collect();
        let _ = writeln!(
            out,
            "order {d}: B^j = C^j for j = 0..{}: {}; B = C as complexes: {}",
            model.n(),
            equal.join(" "),
            if v.complex_equal { "yes" } else { "not established" }
        );
        for (target, ok) in &v.targets {
            let _ = writeln!(
                out,
                "  {target}\t{}",
                if *ok { "Hom(H1, Z/d) = 0" } else { "Hom(H1, Z/d) != 0" }
            );
        }
    }
    Ok(out)
}

fn curve03(args: &Curve03Args) -> Outcome {
    let model = open_model(&args.model)?;
    let orders: Vec<u32> = match parse_lambda(&args.lambda)? {
        Selection::All => model.lambda_orders().into_iter().filter(|&d| d > 1).collect(),
        Selection::Order(d) | Selection::One(d, _) => vec![d],
    };
    let mut out = String::from("d\tpairs\tisolated\tnu1\n");
    for d in orders {
        let c = curve_nu_03(&model, d).map_err(|e| criteria_failure(&args.model, e))?;
        if !c.is_reliable() {
            for (x, y) in &c.multi_point_pairs {
                eprintln!(
                    "warning: order {d}: '{x}' and '{y}' meet in more than one point; the pair count undercounts C^1"
                );
            }
        }
        let _ = writeln!(out, "{d}\t{}\t{}\t{}", c.pairs, c.isolated, c.value);
    }
    Ok(out)
}

fn singular(args: &SingularArgs) -> Outcome {
    let path = &args.hyperresolution;
    let input = load_hyperresolution(path).map_err(|e| criteria_failure(path, e))?;
    let eigens = match parse_lambda(&args.lambda)? {
        Selection::All => return Err(Failure::Input("--lambda: singular-nuc needs 'd' or 'd:a'".into())),
        Selection::Order(d) => EigenvalueSpec::of_order(d),
        Selection::One(d, a) => {
            vec![EigenvalueSpec::new(d, a).map_err(|e| Failure::Input(format!("--lambda: {e}")))?]
        }
    };
    let js = degrees(input.x0.n(), args.degree)?;
    let mut out = String::from("d\ta\tj\tnu_c\tupper\n");
    for eigen in eigens {
        for &j in &js {
            let lower = singular_nu_c(&input, eigen.d(), eigen.a(), j).map_err(|e| criteria_failure(path, e))?;
            let upper = singular_nu_c_upper(&input, eigen.d(), eigen.a(), j).map_err(|e| criteria_failure(path, e))?;
            let _ = writeln!(out, "{}\t{}\t{j}\t{lower}\t{upper}", eigen.d(), eigen.a());
        }
    }
    Ok(out)
}

fn read_alphas(path: &Path) -> Result<Vec<Exponent>, Failure> {
    let fail = |m: String| Failure::Input(format!("{}: {m}", path.display()));
    let text = std::fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let values: Vec<serde_json::Value> = serde_json::from_str(&text).map_err(|e| fail(e.to_string()))?;
    values
        .iter()
        .map(|v| {
            let s = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(fail(format!("expected a number or \"p/q\", got {other}"))),
            };
            parse_exponent(&s).map_err(|e| fail(e.to_string()))
        })
        .collect()
}

fn spectrum(args: &SpectrumArgs) -> Outcome {
    let alphas = match (&args.alphas, &args.alphas_file) {
        (Some(s), _) => parse_exponent_list(s).map_err(|e| Failure::Input(format!("--alphas: {e}")))?,
        (None, Some(p)) => read_alphas(p)?,
        (None, None) => Vec::new(),
    };
    let sp = match args.k {
        None => spectrum_homogeneous(args.n, args.d, &alphas),
        Some(k) => spectrum_yomdin(args.n, args.d, k, &alphas),
    }
    .map_err(|e| Failure::Input(e.to_string()))?;
    let sp = if args.shift {
        sp.shift(-Exponent::from_integer(1))
    } else {
        sp
    };
    Ok(sp.to_tsv())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate(a) => validate(a),
        Command::Orders(a) => orders(a),
        Command::Complex(a) => complex(a),
        Command::Nu(a) => nu_table(a, false),
        Command::Nuc(a) => nu_table(a, true),
        Command::Report(a) => report(a),
        Command::Theorem3(a) => theorem3(a),
        Command::Theorem4(a) => theorem4(a),
        Command::Curve03(a) => curve03(a),
        Command::SingularNuc(a) => singular(a),
        Command::Spectrum(a) => spectrum(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message().replace('\n', " "));
            ExitCode::from(f.code())
        }
    }
}
