use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use weil_core::descent::{build_f1, build_fprime1, weil_descent_system, DescentContext};
use weil_core::falldeg::{default_cap, last_fall_degree_with, FallOptions, FallProfile};
use weil_core::gf::make_field;
use weil_core::harness::{
    default_config, gen_linearized, gen_random_system, instance_rng, run_campaign, to_csv, to_json,
    Campaign, ExperimentConfig, Summary,
};
use weil_core::linsys::{
    brute_force_solve, solve_structured, InvariantSubspace, LinearizedSystemJson, SearchOptions,
};
use weil_core::poly::format::SystemFile;
use weil_core::poly::{Level, MonomialOrder, PolySystem, Ring};
use weil_core::upoly::UniPoly;

#[derive(Parser)]
#[command(name = "weil", version, about = "Weil descent, last fall degrees and linearized solving over finite fields")]
struct Cli {
    /// Campaign configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for result files; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Exit 0 even when some rows are inconclusive.
    #[arg(long, global = true)]
    allow_inconclusive: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    #[value(name = "Fprime")]
    Fprime,
    #[value(name = "Fprime1")]
    Fprime1,
    #[value(name = "F1")]
    F1,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Grevlex,
    Grlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignArg {
    Thm11,
    Thm26,
    Solver,
    Example,
}

impl From<CampaignArg> for Campaign {
    fn from(c: CampaignArg) -> Campaign {
        match c {
            CampaignArg::Thm11 => Campaign::Thm11,
            CampaignArg::Thm26 => Campaign::Thm26,
            CampaignArg::Solver => Campaign::Solver,
            CampaignArg::Example => Campaign::Example,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Weil descent of a system file.
    Descend {
        system: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Fprime)]
        emit: Emit,
        /// Basis of k over k' as a JSON list of coefficient digit lists.
        #[arg(long)]
        basis: Option<String>,
        /// Write polynomials as text instead of term lists.
        #[arg(long)]
        text: bool,
    },
    /// Last fall degree of a system file.
    Lastfall {
        system: PathBuf,
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
    },
    /// Solve a linearized system over a Frobenius-invariant subspace.
    SolveLinearized {
        system: PathBuf,
        /// Use the brute-force kernel instead of the structured solver.
        #[arg(long)]
        oracle: bool,
        /// Run both solvers and report whether they agree.
        #[arg(long)]
        compare: bool,
        /// f_W as raw coefficient list, lowest degree first (overrides the file).
        #[arg(long, value_delimiter = ',')]
        fw: Option<Vec<u32>>,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(value_enum)]
        campaign: CampaignArg,
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Generate a random system.
    Gen {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Number of polynomials (defaults to m).
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 4)]
        terms: usize,
        /// Generate a linearized system; `degree` must be a power of q.
        #[arg(long)]
        linearized: bool,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(out: Option<&Path>, name: &str, content: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            let nl = if content.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{content}{nl}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

fn system_out(sys: &PolySystem, text: bool) -> Result<String> {
    let file = if text { SystemFile::from_system_text(sys) } else { SystemFile::from_system(sys) };
    Ok(serde_json::to_string_pretty(&file)?)
}

fn descend(cli: &Cli, system: &Path, emit: Emit, basis: Option<&str>, text: bool) -> Result<ExitCode> {
    let file: SystemFile = read_json(system)?;
    let sys = file.to_system()?;
    let field = sys.ring().field().clone();
    let basis = basis
        .map(|b| -> Result<Vec<_>> {
            let digits: Vec<Vec<u32>> = serde_json::from_str(b).context("parsing --basis")?;
            Ok(digits.iter().map(|d| field.from_flat_digits(d)).collect::<weil_core::error::Result<_>>()?)
        })
        .transpose()?;
    let ctx = DescentContext::new(sys.ring(), basis)?;
    let result = match emit {
        Emit::Fprime => weil_descent_system(&sys, &ctx)?,
        Emit::Fprime1 => build_fprime1(&sys, &ctx)?,
        Emit::F1 => build_f1(&sys)?,
    };
    let name = match emit {
        Emit::Fprime => "Fprime.json",
        Emit::Fprime1 => "Fprime1.json",
        Emit::F1 => "F1.json",
    };
    write_out(cli.out.as_deref(), name, &system_out(&result, text)?)?;
    Ok(ExitCode::SUCCESS)
}

fn profile_csv(p: &FallProfile) -> String {
    let mut out = String::from("degree,dim_V,dim_V_cap_lower,dim_prev,fall\n");
    for r in &p.records {
        out.push_str(&format!("{},{},{},{},{}\n", r.degree, r.dim_v, r.dim_v_cap_lower, r.dim_prev, r.fall));
    }
    out
}

fn lastfall(cli: &Cli, system: &Path, cap: Option<u32>, certify: bool, order: Order) -> Result<ExitCode> {
    let file: SystemFile = read_json(system)?;
    let sys = file.to_system()?;
    let q = sys.ring().field().q();
    let cap = cap.unwrap_or_else(|| default_cap(q, sys.degree().max(1), sys.ring().nvars()));
    let order = match order {
        Order::Grevlex => MonomialOrder::GrevLex,
        Order::Grlex => MonomialOrder::GrLex,
    };
    let profile = last_fall_degree_with(&sys, &FallOptions { certify, order, ..FallOptions::new(cap) })?;
    let json = serde_json::to_string_pretty(&profile)?;
    let csv = profile_csv(&profile);
    match (&cli.out, cli.format) {
        (Some(dir), _) => {
            write_out(Some(dir), "profile.json", &json)?;
            write_out(Some(dir), "profile.csv", &csv)?;
        }
        (None, Format::Json) => println!("{json}"),
        (None, Format::Csv) => print!("{csv}"),
    }
    if certify && !profile.is_certified() && !cli.allow_inconclusive {
        eprintln!("cap {cap} reached before certification");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn solve(cli: &Cli, system: &Path, oracle: bool, compare: bool, fw: Option<Vec<u32>>) -> Result<ExitCode> {
    let file: LinearizedSystemJson = read_json(system)?;
    let (sys, file_fw) = file.to_system()?;
    let field = sys.field().clone();
    let fw = fw.map(|raw| UniPoly::from_raw(&raw)).or(file_fw);
    let w = match fw {
        Some(f) => InvariantSubspace::from_fw(&f, &field)?,
        None => InvariantSubspace::whole(&field)?,
    };
    let opts = SearchOptions { seed: cli.seed.unwrap_or(0), ..SearchOptions::default() };
    let mut code = ExitCode::SUCCESS;
    let value = if compare {
        let brute = brute_force_solve(&sys, &w);
        match solve_structured(&sys, &w, &opts) {
            Ok(s) => {
                let equal = s.same_subspace(&brute, &field);
                if !equal {
                    code = ExitCode::from(1);
                }
                serde_json::json!({
                    "structured": s.to_json(&field),
                    "oracle": brute.to_json(&field),
                    "equal": equal,
                })
            }
            Err(weil_core::error::Error::NotReducible) => serde_json::json!({
                "structured": null,
                "oracle": brute.to_json(&field),
                "equal": null,
                "detail": "system is not reducible; structured solver not applicable",
            }),
            Err(e) => return Err(e.into()),
        }
    } else if oracle {
        serde_json::to_value(brute_force_solve(&sys, &w).to_json(&field))?
    } else {
        serde_json::to_value(solve_structured(&sys, &w, &opts)?.to_json(&field))?
    };
    write_out(cli.out.as_deref(), "solution.json", &serde_json::to_string_pretty(&value)?)?;
    Ok(code)
}

fn verify(cli: &Cli, campaign: Campaign, instances: Option<usize>) -> Result<ExitCode> {
    let mut cfg: ExperimentConfig = match &cli.config {
        Some(path) => read_json(path)?,
        None => default_config(campaign, cli.seed.unwrap_or(1)),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(n) = instances {
        cfg.instances = n;
    }
    let run = run_campaign(campaign, &cfg)?;
    let (name, body) = match cli.format {
        Format::Csv => (format!("{}.csv", campaign.name()), to_csv(&run.rows)),
        Format::Json => (format!("{}.json", campaign.name()), to_json(&run.rows)),
    };
    write_out(cli.out.as_deref(), &name, &body)?;
    if let Some(dir) = &cli.out {
        write_out(Some(dir), &format!("{}_timings.csv", campaign.name()), &run.timings_csv())?;
    }
    let s = Summary::of(&run.rows);
    eprintln!(
        "{}: {} rows, {} pass, {} fail, {} inconclusive",
        campaign.name(),
        s.total(),
        s.pass,
        s.fail,
        s.inconclusive
    );
    let ok = s.fail == 0 && (s.inconclusive == 0 || cli.allow_inconclusive);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[allow(clippy::too_many_arguments)]
fn gen(
    cli: &Cli,
    p: u32,
    e: usize,
    n: usize,
    m: usize,
    degree: u32,
    count: Option<usize>,
    terms: usize,
    linearized: bool,
) -> Result<ExitCode> {
    let seed = cli.seed.ok_or_else(|| anyhow!("gen needs --seed"))?;
    let field = make_field(p, e, n, None, None)?;
    let mut rng = instance_rng(seed, 0);
    let count = count.unwrap_or(m);
    let body = if linearized {
        let sys = gen_linearized(&field, m, degree, count, &mut rng)?;
        serde_json::to_string_pretty(&LinearizedSystemJson::from_system(&sys, None))?
    } else {
        if m == 0 {
            bail!("m must be at least 1");
        }
        let ring = Ring::with_indexed_vars(field, Level::K, "X", m);
        system_out(&gen_random_system(&ring, degree, count, terms, &mut rng)?, false)?
    };
    write_out(cli.out.as_deref(), "system.json", &body)?;
    Ok(ExitCode::SUCCESS)
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Descend { system, emit, basis, text } => descend(cli, system, *emit, basis.as_deref(), *text),
        Cmd::Lastfall { system, cap, certify, order } => lastfall(cli, system, *cap, *certify, *order),
        Cmd::SolveLinearized { system, oracle, compare, fw } => solve(cli, system, *oracle, *compare, fw.clone()),
        Cmd::Verify { campaign, instances } => verify(cli, (*campaign).into(), *instances),
        Cmd::Gen { p, e, n, m, degree, count, terms, linearized } => {
            gen(cli, *p, *e, *n, *m, *degree, *count, *terms, *linearized)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
