use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fiperiod::eval::{dim_cap_from_env, eval_range, What};
use fiperiod::modspec;
use fiperiod::series::{parse_csv, write_csv, ReportJson};
use fiperiod::shape::parse_shape;

use fiperiod_core::bounds::{
    filtered_bounds, resolution_finals, resolution_pages, vector_finals, vector_pages, CoverShape,
    Finals, PageCell,
};
use fiperiod_core::fimod::{DimensionSeries, FIPresentation};
use fiperiod_core::oracle;
use fiperiod_core::period::{check_divides_bound, check_power_of_p, detect_period};

#[derive(Parser)]
#[command(
    name = "fiperiod",
    version,
    about = "Exact symmetric-group cohomology dimensions for finitely presented FI-modules, \
             period detection, and the recursive period/stability bound calculators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a module over a level range: dimensions, H^0 or H^1
    Eval(EvalArgs),
    /// Period/stability bounds for a single cover
    Bound(BoundArgs),
    /// Run the page recursion over a resolution shape
    ResolveBound(ResolveArgs),
    /// Detect the eventual period of a series
    Period(PeriodArgs),
    /// Emit a closed-form reference series as CSV
    Oracle(OracleArgs),
}

#[derive(clap::Args)]
struct EvalArgs {
    /// Module spec JSON file
    #[arg(long, conflicts_with = "builtin")]
    spec: Option<PathBuf>,
    /// Built-in module: intro-kernel | example1
    #[arg(long)]
    builtin: Option<String>,
    /// Generator degree for --builtin example1
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long, value_enum, default_value = "dims")]
    what: WhatArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Dims,
    H0,
    H1,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Ordered cover degrees, e.g. "0,5"
    #[arg(long)]
    cover: String,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    t: u64,
}

#[derive(clap::Args)]
struct ResolveArgs {
    /// Resolution shape JSON file
    #[arg(long)]
    shape: PathBuf,
    #[arg(long)]
    t: u64,
    /// Pages to report (finals always use pages through t+2)
    #[arg(long)]
    r_max: Option<usize>,
}

#[derive(clap::Args)]
struct PeriodArgs {
    /// Series CSV file with n,value rows
    #[arg(long, conflicts_with = "oracle")]
    input: Option<PathBuf>,
    /// Oracle name: example1 | intro_kernel | sphere_h1 | trivial_h1
    #[arg(long)]
    oracle: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, default_value_t = 3)]
    min_margin: u64,
    /// Exit with code 4 when no period is confirmed
    #[arg(long)]
    strict: bool,
    /// Cover degrees for the divisibility verdict, e.g. "0,5"
    #[arg(long)]
    cover: Option<String>,
    #[arg(long, default_value_t = 0)]
    t: u64,
}

#[derive(clap::Args)]
struct OracleArgs {
    /// example1 | intro_kernel | sphere_h1 | trivial_h1
    #[arg(long)]
    name: String,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
}

enum CliError {
    Parse(String),
    Infeasible(String),
    Inconclusive,
}

impl From<modspec::SpecError> for CliError {
    fn from(e: modspec::SpecError) -> CliError {
        CliError::Parse(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn parse_cover(text: &str, p: u64) -> Result<CoverShape, CliError> {
    let degrees = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<Vec<u64>, _>>()
        .map_err(|e| CliError::Parse(format!("bad cover {text:?}: {e}")))?;
    CoverShape::new(p, degrees).map_err(|e| CliError::Parse(e.to_string()))
}

fn load_presentation(
    spec: &Option<PathBuf>,
    builtin: &Option<String>,
    d: Option<usize>,
) -> Result<FIPresentation, CliError> {
    match (spec, builtin) {
        (Some(path), None) => Ok(modspec::parse_module_spec(&read_file(path)?)?),
        (None, Some(name)) => Ok(modspec::builtin(name, d)?),
        _ => Err(CliError::Parse(
            "give exactly one of --spec FILE or --builtin NAME".into(),
        )),
    }
}

fn oracle_series(
    name: &str,
    d: Option<usize>,
    p: Option<u64>,
    from: Option<usize>,
    to: Option<usize>,
) -> Result<DimensionSeries, CliError> {
    let bad = |e: oracle::OracleError| CliError::Parse(e.to_string());
    match name {
        "example1" => {
            let d =
                d.ok_or_else(|| CliError::Parse("oracle example1 needs --d".into()))?;
            oracle::example1_series(d, from.unwrap_or(d), to.unwrap_or(200)).map_err(bad)
        }
        "intro_kernel" | "intro-kernel" => Ok(oracle::intro_kernel_h0_series(
            from.unwrap_or(1),
            to.unwrap_or(100),
        )),
        "sphere_h1" | "sphere-h1" => {
            let p = p.ok_or_else(|| CliError::Parse("oracle sphere_h1 needs --p".into()))?;
            oracle::sphere_h1_series(p, from.unwrap_or(1), to.unwrap_or(20 * p as usize))
                .map_err(bad)
        }
        "trivial_h1" | "trivial-h1" => {
            let p = p.ok_or_else(|| CliError::Parse("oracle trivial_h1 needs --p".into()))?;
            oracle::trivial_h1_series(p, from.unwrap_or(1), to.unwrap_or(50)).map_err(bad)
        }
        other => Err(CliError::Parse(format!(
            "unknown oracle {other:?}; available: example1, intro_kernel, sphere_h1, trivial_h1"
        ))),
    }
}

#[derive(Serialize)]
struct EvalRowJson {
    n: usize,
    value: u64,
}

#[derive(Serialize)]
struct EvalJson {
    schema_version: u32,
    rows: Vec<EvalRowJson>,
}

fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    if args.from > args.to {
        return Err(CliError::Parse("empty range: --from exceeds --to".into()));
    }
    let pres = load_presentation(&args.spec, &args.builtin, args.d)?;
    let what = match args.what {
        WhatArg::Dims => What::Dims,
        WhatArg::H0 => What::H0,
        WhatArg::H1 => What::H1,
    };
    let rows = eval_range(&pres, args.from, args.to, what, dim_cap_from_env())
        .map_err(|e| CliError::Infeasible(e.to_string()))?;
    match args.format {
        Format::Csv => print!("{}", write_csv(&rows)),
        Format::Json => {
            let out = EvalJson {
                schema_version: 1,
                rows: rows
                    .into_iter()
                    .map(|(n, value)| EvalRowJson { n, value })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundJson {
    schema_version: u32,
    p: u64,
    cover: Vec<u64>,
    t: u64,
    exponent: u64,
    /// p^exponent when it fits u64.
    period: Option<u64>,
    stable_range: u64,
}

fn cmd_bound(args: &BoundArgs) -> Result<(), CliError> {
    let cover = parse_cover(&args.cover, args.p)?;
    let fb = filtered_bounds(&cover, args.t);
    let out = BoundJson {
        schema_version: 1,
        p: args.p,
        cover: cover.degrees().to_vec(),
        t: args.t,
        exponent: fb.exponent,
        period: u32::try_from(fb.exponent)
            .ok()
            .and_then(|e| args.p.checked_pow(e)),
        stable_range: fb.stable_range,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

#[derive(Serialize)]
struct CellJson {
    x: usize,
    y: usize,
    m: u64,
    sd: u64,
    n: u64,
}

#[derive(Serialize)]
struct PageJson {
    r: usize,
    cells: Vec<CellJson>,
}

#[derive(Serialize)]
struct ResolveJson {
    schema_version: u32,
    t: u64,
    mode: &'static str,
    m_inf: u64,
    sd_inf: u64,
    period: Option<u64>,
    /// Largest supplied exactness onset; the stable range is
    /// max(sd_inf, onset) and stays conditional while this is null.
    onset: Option<u64>,
    pages: Vec<PageJson>,
}

fn cell_json(c: &PageCell) -> CellJson {
    CellJson {
        x: c.x,
        y: c.y,
        m: c.m,
        sd: c.sd,
        n: c.n,
    }
}

fn cmd_resolve_bound(args: &ResolveArgs) -> Result<(), CliError> {
    let shape =
        parse_shape(&read_file(&args.shape)?).map_err(|e| CliError::Parse(e.to_string()))?;
    let t = args.t;
    let r_max = args.r_max.unwrap_or(t as usize + 2);
    let scalar = shape.is_scalar();
    let (finals, pages): (Finals, Vec<PageJson>) = if scalar {
        let finals = resolution_finals(&shape, t).map_err(|e| CliError::Parse(e.to_string()))?;
        let pages = resolution_pages(&shape, t, r_max)
            .map_err(|e| CliError::Parse(e.to_string()))?
            .iter()
            .map(|p| PageJson {
                r: p.r,
                cells: p.cells.iter().map(cell_json).collect(),
            })
            .collect();
        (finals, pages)
    } else {
        let finals = vector_finals(&shape, t).map_err(|e| CliError::Parse(e.to_string()))?;
        let mut pages: Vec<PageJson> = (1..=r_max)
            .map(|r| PageJson {
                r,
                cells: Vec::new(),
            })
            .collect();
        for x in 0..shape.columns.len().min(t as usize + 1) {
            let y = t as usize - x;
            let cells =
                vector_pages(&shape, x, y, r_max).map_err(|e| CliError::Parse(e.to_string()))?;
            for (i, c) in cells.iter().enumerate() {
                pages[i].cells.push(cell_json(c));
            }
        }
        (finals, pages)
    };
    let out = ResolveJson {
        schema_version: 1,
        t,
        mode: if scalar { "scalar" } else { "vector" },
        m_inf: finals.m_inf,
        sd_inf: finals.sd_inf,
        period: u32::try_from(finals.m_inf)
            .ok()
            .and_then(|e| shape.p.checked_pow(e)),
        onset: finals.onset,
        pages,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

fn cmd_period(args: &PeriodArgs) -> Result<(), CliError> {
    let series = match (&args.input, &args.oracle) {
        (Some(path), None) => {
            parse_csv(&read_file(path)?).map_err(|e| CliError::Parse(e.to_string()))?
        }
        (None, Some(name)) => oracle_series(name, args.d, args.p, args.from, args.to)?,
        _ => {
            return Err(CliError::Parse(
                "give exactly one of --input FILE or --oracle NAME".into(),
            ))
        }
    };
    let report =
        detect_period(&series, args.min_margin).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut out = ReportJson::new(&report, args.min_margin);
    if report.period.is_some() {
        if let Some(p) = args.p {
            out.p = Some(p);
            out.power_of_p = Some(check_power_of_p(&report, p));
            if let Some(cover_text) = &args.cover {
                let cover = parse_cover(cover_text, p)?;
                let fb = filtered_bounds(&cover, args.t);
                out.cover = Some(cover.degrees().to_vec());
                out.bound_exponent = Some(fb.exponent);
                out.divides_bound = Some(check_divides_bound(&report, p, fb.exponent));
            }
        }
    }
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    if args.strict && report.period.is_none() {
        return Err(CliError::Inconclusive);
    }
    Ok(())
}

fn cmd_oracle(args: &OracleArgs) -> Result<(), CliError> {
    let series = oracle_series(&args.name, args.d, args.p, args.from, args.to)?;
    let rows: Vec<(usize, u64)> = series
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| (series.start + i, v))
        .collect();
    print!("{}", write_csv(&rows));
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Bound(args) => cmd_bound(args),
        Cmd::ResolveBound(args) => cmd_resolve_bound(args),
        Cmd::Period(args) => cmd_period(args),
        Cmd::Oracle(args) => cmd_oracle(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Inconclusive) => {
            eprintln!("error: no period confirmed within the window");
            ExitCode::from(4)
        }
    }
}
