use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vbfcodes::codes::{
    build_code, contains_all_one, parameters, weight_distribution_enum, weight_distribution_walsh,
    CodeSpec, LinearCode,
};
use vbfcodes::gf2m::{self, FieldSpec};
use vbfcodes::theory::{self, ZeroConvention};
use vbfcodes::vecfun::{self, VectorialFunction};
use vbfcodes::verify::{self, Target, VerifyParams};

/// Binary linear codes from vectorial Boolean functions.
#[derive(Parser)]
#[command(name = "vbfcodes", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite field information.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Properties and spectra of vectorial functions.
    #[command(name = "fn", subcommand)]
    Function(FnCmd),
    /// Build a code and compute its weight distribution.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Check a closed-form statement against direct computation.
    Verify(VerifyArgs),
    /// Write artifacts to disk.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus, generator order and trace data of GF(2^m).
    Show {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        modulus: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum FnCmd {
    /// Nonlinearity, PN/AB flags and the extended Walsh spectrum.
    Props {
        #[command(flatten)]
        f: FnArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Walsh spectrum of one component.
    Walsh {
        #[command(flatten)]
        f: FnArgs,
        /// Component selector (an element of the output field).
        #[arg(long, default_value = "1")]
        lambda: String,
        /// List every value rather than only the value counts.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Full code from the support of a component.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Hyperplane subcode.
    Subcode {
        #[command(flatten)]
        spec: SpecArgs,
        /// Hyperplane normal u; defaults to lambda^(-1) when Tr(1) = 1.
        #[arg(long)]
        normal: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Generator matrix, one row of 0/1 per line (text) or JSON.
    Gm {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        normal: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Function value table as JSON, importable with `--fn <path>`.
    Table {
        #[command(flatten)]
        f: FnArgs,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct FnArgs {
    /// Descriptor (gold:5:1, kasami:7:2, welch:7, niho:9, power:9:19, mm:4,
    /// id:5) or the path of an exported JSON table.
    #[arg(long = "fn", value_name = "FUNCTION")]
    function: String,
    /// Alternative primitive modulus for power functions.
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Args)]
struct SpecArgs {
    #[command(flatten)]
    f: FnArgs,
    #[arg(long, default_value = "1")]
    lambda: String,
    /// Selector offset a in Tr(a x).
    #[arg(long, default_value = "0")]
    a: String,
    /// Selector constant.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    c: u8,
    /// Skip the Walsh-route cross-check.
    #[arg(long)]
    no_walsh: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Target name, e.g. table2, theorem9, lemma11, example1, kloosterman.
    target: String,
    /// Degrees: "7", "5,7,9", "1..15".
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    lambda: Option<u32>,
    #[arg(long = "fn", value_name = "FUNCTION")]
    function: Option<String>,
    /// Cap on the number of selectors swept per function.
    #[arg(long)]
    sample: Option<usize>,
    /// Reading of x = 0 in the Kloosterman pair counts.
    #[arg(long, value_enum, default_value_t = Convention::InverseAsZero)]
    convention: Convention,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    InverseAsZero,
    Exclude,
}

#[derive(Clone, Copy, Default, ValueEnum, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<vbfcodes::Error> for Failure {
    fn from(e: vbfcodes::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(out: &Output, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> Outcome {
    let mut body = match out.format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&json()).expect("json values serialize"),
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &out.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load_function(args: &FnArgs) -> Result<VectorialFunction, Failure> {
    let path = Path::new(&args.function);
    let f = if args.function.ends_with(".json") || path.is_file() {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        VectorialFunction::from_json(&text)?
    } else {
        vecfun::parse_descriptor(&args.function)?
    };
    match &args.modulus {
        None => Ok(f),
        Some(modulus) => {
            let d = theory::power_exponent(&f)
                .map_err(|_| Failure::Usage("--modulus applies only to power functions".into()))?;
            let field = FieldSpec::new(f.m(), gf2m::parse_modulus(modulus)?)?;
            Ok(vecfun::power_function_in(field, d)?)
        }
    }
}

fn parse_m_list(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::Usage(format!("cannot read degree list {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn field_show(m: u32, modulus: Option<&str>, out: &Output) -> Outcome {
    let k = match modulus {
        Some(p) => FieldSpec::new(m, gf2m::parse_modulus(p)?)?,
        None => FieldSpec::with_default_modulus(m)?,
    };
    let trace_one: Vec<u32> = (0..m).filter(|&i| k.abs_trace(1 << i) == 1).collect();
    emit(
        out,
        || {
            format!(
                "GF(2^{m})\nmodulus: {:#x} ({})\nsize: {}\ngenerator: a = {} of order {}\nTr(1) = {}\nbasis elements x^i with Tr(x^i) = 1: {:?}\n",
                k.modulus(),
                k.modulus_string(),
                k.size(),
                k.generator(),
                k.group_order(),
                k.abs_trace(1),
                trace_one
            )
        },
        || {
            json!({
                "m": m,
                "modulus": format!("{:#x}", k.modulus()),
                "polynomial": k.modulus_string(),
                "size": k.size(),
                "generator": k.generator(),
                "order": k.group_order(),
                "trace_of_one": k.abs_trace(1),
                "trace_one_basis": trace_one,
            })
        },
    )
}

fn fn_props(args: &FnArgs, out: &Output) -> Outcome {
    let f = load_function(args)?;
    let nl = f.nonlinearity()?;
    let ab = f.m() == f.s() && f.m() % 2 == 1 && f.is_almost_bent()?;
    let pn = f.all_components_bent()?;
    let ew = f.extended_walsh_spectrum()?;
    emit(
        out,
        || {
            let spectrum: Vec<String> = ew.iter().map(|(w, n)| format!("{w}:{n}")).collect();
            format!(
                "function: {}\nm = {}, s = {}\nbijective: {}\nnonlinearity: {nl}\nperfect nonlinear: {pn}\nalmost bent: {ab}\nextended Walsh spectrum (|W|:count): {}\n",
                args.function,
                f.m(),
                f.s(),
                f.is_bijective(),
                spectrum.join(" ")
            )
        },
        || {
            json!({
                "function": args.function,
                "m": f.m(),
                "s": f.s(),
                "bijective": f.is_bijective(),
                "nonlinearity": nl,
                "perfect_nonlinear": pn,
                "almost_bent": ab,
                "extended_walsh_spectrum": ew.iter().map(|(w, n)| json!({"w": w, "count": n})).collect::<Vec<_>>(),
            })
        },
    )
}

fn fn_walsh(args: &FnArgs, lambda: &str, full: bool, out: &Output) -> Outcome {
    let f = load_function(args)?;
    let lambda = f.output_field().parse_element(lambda)?;
    let g = f.component(lambda)?;
    let spectrum = g.walsh_full();
    let counts = spectrum.value_counts();
    emit(
        out,
        || {
            let mut s = format!("component lambda = {lambda} of {}\n", args.function);
            s.push_str(&format!("weight: {}\nnonlinearity: {}\n", g.weight(), g.nonlinearity()));
            for (v, n) in &counts {
                s.push_str(&format!("W = {v}: {n}\n"));
            }
            if full {
                for (a, v) in spectrum.values().iter().enumerate() {
                    s.push_str(&format!("{a} {v}\n"));
                }
            }
            s
        },
        || {
            let mut v = json!({
                "function": args.function,
                "lambda": lambda,
                "weight": g.weight(),
                "nonlinearity": g.nonlinearity(),
                "counts": counts.iter().map(|(v, n)| json!({"value": v, "count": n})).collect::<Vec<_>>(),
            });
            if full {
                v["values"] = json!(spectrum.values());
            }
            v
        },
    )
}

fn make_spec<'a>(f: &'a VectorialFunction, args: &SpecArgs, normal: Option<&str>, subcode: bool) -> Result<CodeSpec<'a>, Failure> {
    let lambda = f.output_field().parse_element(&args.lambda)?;
    let a = f.input_field().parse_element(&args.a)?;
    let spec = CodeSpec::new(f, lambda).offset(a, args.c == 1);
    let spec = match (subcode, normal) {
        (_, Some(u)) => spec.subcode(f.output_field().parse_element(u)?),
        (true, None) => spec.subcode_default()?,
        (false, None) => spec,
    };
    spec.validate()?;
    Ok(spec)
}

fn labelled_code(spec: &CodeSpec, label: &str) -> Result<LinearCode, Failure> {
    let mut code = build_code(spec)?;
    code.set_label(label);
    Ok(code)
}

fn code_report(args: &SpecArgs, normal: Option<&str>, subcode: bool, out: &Output) -> Outcome {
    let f = load_function(&args.f)?;
    let spec = make_spec(&f, args, normal, subcode)?;
    let code = labelled_code(&spec, &args.f.function)?;
    let wd = weight_distribution_enum(&code)?;
    let params = parameters(&code, &wd);
    let walsh = if args.no_walsh || code.dimension() != spec.full_rank() {
        None
    } else {
        Some(weight_distribution_walsh(&spec)? == wd)
    };
    let all_one = contains_all_one(&code);
    let header = code.header().cloned();
    let result = emit(
        out,
        || {
            let mut s = String::new();
            if let Some(h) = &header {
                s.push_str(&format!("{h}\n"));
            }
            s.push_str(&format!("{params}\n{}\n", wd.enumerator_string()));
            s.push_str(&format!("contains all-one word: {all_one}\n"));
            if code.dimension() != spec.full_rank() {
                s.push_str(&format!(
                    "note: dimension {} is below {}, the codeword map is not injective\n",
                    code.dimension(),
                    spec.full_rank()
                ));
            }
            if let Some(ok) = walsh {
                s.push_str(&format!("Walsh route agrees: {ok}\n"));
            }
            s
        },
        || {
            json!({
                "header": header,
                "parameters": params,
                "distribution": wd.to_json(),
                "enumerator": wd.enumerator_string(),
                "contains_all_one": all_one,
                "walsh_route_agrees": walsh,
            })
        },
    );
    result?;
    match walsh {
        Some(false) => Err(Failure::Mismatch),
        _ => Ok(()),
    }
}

fn export_gm(args: &SpecArgs, normal: Option<&str>, out: &Output) -> Outcome {
    let f = load_function(&args.f)?;
    let spec = make_spec(&f, args, normal, false)?;
    let code = labelled_code(&spec, &args.f.function)?;
    emit(out, || code.generator_text(), || code.generator_json())
}

fn export_table(args: &FnArgs, out: &Output) -> Outcome {
    let f = load_function(args)?;
    // The table is JSON in both formats.
    emit(out, || f.to_json(), || serde_json::from_str(&f.to_json()).expect("tables serialize"))
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let target: Target = args.target.parse()?;
    let params = VerifyParams {
        m: args.m.as_deref().map(parse_m_list).transpose()?,
        i: args.i,
        lambda: args.lambda,
        function: args.function.clone(),
        sample: args.sample,
        convention: match args.convention {
            Convention::InverseAsZero => ZeroConvention::InverseAsZero,
            Convention::Exclude => ZeroConvention::Exclude,
        },
    };
    let report = verify::verify(target, &params)?;
    emit(&args.out, || report.summary(), || serde_json::to_value(&report).expect("reports serialize"))?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Field(FieldCmd::Show { m, modulus, out }) => field_show(m, modulus.as_deref(), &out),
        Command::Function(FnCmd::Props { f, out }) => fn_props(&f, &out),
        Command::Function(FnCmd::Walsh { f, lambda, full, out }) => fn_walsh(&f, &lambda, full, &out),
        Command::Code(CodeCmd::Build { spec, out }) => code_report(&spec, None, false, &out),
        Command::Code(CodeCmd::Subcode { spec, normal, out }) => code_report(&spec, normal.as_deref(), true, &out),
        Command::Verify(args) => run_verify(&args),
        Command::Export(ExportCmd::Gm { spec, normal, out }) => export_gm(&spec, normal.as_deref(), &out),
        Command::Export(ExportCmd::Table { f, out }) => export_table(&f, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
