mod render;

use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nlb_core::analysis::{
    classical_value, exact_distribution, impossibility_search, resource_count, verify_winning, Budget, Report,
    SeedPolicy,
};
use nlb_core::strategies::{check_compatible, StrategyId};
use nlb_core::{Game, Limits};

#[derive(Parser)]
#[command(
    name = "nlb",
    version,
    about = "Non-local box protocols: verification, values, distributions, searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a strategy wins a game on every checked run.
    Verify(RunArgs),
    /// Classical value of a game over deterministic strategies.
    Value(RunArgs),
    /// Exact output distribution of a strategy on every promised input.
    Dist(RunArgs),
    /// Search every single-NLB or NLB-free strategy for a perfect one.
    Search {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "1nlb")]
        budget: Budget,
    },
    /// NLB uses and communicated bits of one run.
    Resources(RunArgs),
    /// Registered games and strategies.
    List {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    game: Option<String>,
    #[arg(long)]
    strategy: Option<String>,
    /// `exhaustive` or `sample:<K>`.
    #[arg(long, default_value = "exhaustive")]
    seeds: SeedsArg,
    #[arg(long)]
    rng_seed: Option<u64>,
    #[arg(long, default_value_t = Limits::default().max_seed_bits)]
    max_seed_bits: u32,
    #[arg(long, default_value_t = Limits::default().max_search)]
    max_search: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy)]
enum SeedsArg {
    Exhaustive,
    Sample(usize),
}

impl FromStr for SeedsArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            None if s == "exhaustive" => Ok(SeedsArg::Exhaustive),
            Some(("sample", k)) => match k.parse() {
                Ok(k) if k > 0 => Ok(SeedsArg::Sample(k)),
                _ => Err(format!("bad sample size `{k}`")),
            },
            _ => Err(format!("expected `exhaustive` or `sample:<K>`, got `{s}`")),
        }
    }
}

/// Everything one command needs, with ids resolved.
struct RunConfig {
    game: Option<Game>,
    strategy: Option<StrategyId>,
    policy: SeedPolicy,
    limits: Limits,
    format: Format,
}

impl RunConfig {
    fn from_args(args: &RunArgs) -> anyhow::Result<Self> {
        let game = args.game.as_deref().map(str::parse::<Game>).transpose()?;
        let strategy = args.strategy.as_deref().map(str::parse::<StrategyId>).transpose()?;
        let policy = match (args.seeds, args.rng_seed) {
            (SeedsArg::Exhaustive, _) => SeedPolicy::Exhaustive,
            (SeedsArg::Sample(k), Some(rng_seed)) => SeedPolicy::Sample { k, rng_seed },
            (SeedsArg::Sample(_), None) => bail!("--rng-seed is required with --seeds sample:<K>"),
        };
        let limits = Limits {
            max_seed_bits: args.max_seed_bits,
            max_search: args.max_search,
            ..Limits::default()
        };
        Ok(RunConfig {
            game,
            strategy,
            policy,
            limits,
            format: args.format,
        })
    }

    fn game(&self) -> anyhow::Result<Game> {
        self.game.context("--game is required")
    }

    fn strategy(&self) -> anyhow::Result<StrategyId> {
        self.strategy.context("--strategy is required")
    }

    fn policy_label(&self) -> String {
        match self.policy {
            SeedPolicy::Exhaustive => "exhaustive".to_owned(),
            SeedPolicy::Sample { k, rng_seed } => format!("sample:{k},rng-seed={rng_seed}"),
        }
    }
}

fn cmd_verify(cfg: &RunConfig) -> anyhow::Result<(Report, u8)> {
    let (game, id) = (cfg.game()?, cfg.strategy()?);
    let r = verify_winning(&id.build()?, &game, cfg.policy, &cfg.limits)?;
    let code = if r.pass { 0 } else { 2 };
    Ok((Report::verify(&game, &id.to_string(), &cfg.policy_label(), &r), code))
}

fn cmd_value(cfg: &RunConfig) -> anyhow::Result<Report> {
    let game = cfg.game()?;
    Ok(Report::value(&game, &classical_value(&game, &cfg.limits)?))
}

fn cmd_dist(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (game, id) = (cfg.game()?, cfg.strategy()?);
    let d = exact_distribution(&id.build()?, &game, &cfg.limits)?;
    Ok(Report::dist(&game, &id.to_string(), &d, &cfg.limits)?)
}

fn cmd_search(cfg: &RunConfig, budget: Budget) -> anyhow::Result<Report> {
    let game = cfg.game()?;
    Ok(Report::search(
        &game,
        &impossibility_search(&game, budget, &cfg.limits)?,
    ))
}

fn cmd_resources(cfg: &RunConfig) -> anyhow::Result<Report> {
    let id = cfg.strategy()?;
    let game = cfg.game.unwrap_or_else(|| id.native_game());
    let s = id.build()?;
    check_compatible(&s, &game)?;
    Ok(Report::resources(&game, &id.to_string(), resource_count(&s)?))
}

fn cmd_list(format: Format) -> String {
    match format {
        Format::Json => {
            let strategies: Vec<_> = StrategyId::REGISTRY
                .iter()
                .map(|(id, about)| serde_json::json!({"id": id, "description": about}))
                .collect();
            let value = serde_json::json!({"games": render::GAMES, "strategies": strategies});
            serde_json::to_string_pretty(&value).expect("registry serializes")
        }
        Format::Md => render::list_md(),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let started = Instant::now();
    let args = match &cli.command {
        Command::List { format } => {
            emit(&format!("{}\n", cmd_list(*format)))?;
            return Ok(0);
        }
        Command::Verify(a) | Command::Value(a) | Command::Dist(a) | Command::Resources(a) => a,
        Command::Search { run, .. } => run,
    };
    let cfg = RunConfig::from_args(args)?;
    let (mut report, code) = match &cli.command {
        Command::Verify(_) => cmd_verify(&cfg)?,
        Command::Value(_) => (cmd_value(&cfg)?, 0),
        Command::Dist(_) => (cmd_dist(&cfg)?, 0),
        Command::Search { budget, .. } => (cmd_search(&cfg, *budget)?, 0),
        Command::Resources(_) => (cmd_resources(&cfg)?, 0),
        Command::List { .. } => unreachable!(),
    };
    report.runtime_ms = started.elapsed().as_millis() as u64;
    let text = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
        Format::Md => render::report_md(&report),
    };
    emit(&text)?;
    Ok(code)
}

/// Writes to stdout. A closed pipe is not an error.
fn emit(text: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("NLB_MAX_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("NLB_MAX_THREADS=`{v}` is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
