use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harness::{
    replay_any, run_match, run_tournament, stats_report, AnyRecord, BotKind, ClockSpec, GameId,
    HarnessError, MatchConfig, TournamentConfig, DEFAULT_WORK_NANOS,
};

#[derive(Parser)]
#[command(
    name = "rtmm",
    version,
    about = "Play, tabulate and replay real-time minimax matches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one match and print its result.
    Match(MatchArgs),
    /// Play a round robin and print the win/tie/loss table.
    Tournament(TournamentArgs),
    /// Summarize search telemetry from match logs.
    Stats(StatsArgs),
    /// Re-run a match log and check that it reaches the logged result.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ClockKind {
    /// Deterministic: each node expansion costs --work-ns nanoseconds.
    Work,
    /// Real time.
    Wall,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    game: GameId,
    /// Cycle limit; defaults to 5000 for battlecity and 15000 for microrts.
    #[arg(long)]
    max_cycles: Option<u64>,
    /// Thinking time per cycle for search bots, in milliseconds.
    #[arg(long, default_value_t = 15)]
    budget_ms: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ClockKind::Work)]
    clock: ClockKind,
    #[arg(long, default_value_t = DEFAULT_WORK_NANOS)]
    work_ns: u64,
    #[arg(long, default_value_t = 50)]
    cycles_per_second: u64,
}

impl Common {
    fn clock(&self) -> ClockSpec {
        match self.clock {
            ClockKind::Wall => ClockSpec::Wall,
            ClockKind::Work => ClockSpec::Work {
                nanos_per_expansion: self.work_ns,
            },
        }
    }
}

#[derive(Args)]
struct MatchArgs {
    #[command(flatten)]
    common: Common,
    /// Map (battlecity) or scenario (microrts).
    #[arg(long, alias = "scenario")]
    map: String,
    #[arg(long)]
    max_bot: BotKind,
    #[arg(long)]
    min_bot: BotKind,
    /// Write the match log here, one JSON record per line.
    #[arg(long)]
    replay_out: Option<PathBuf>,
}

#[derive(Args)]
struct TournamentArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated maps or scenarios; all of the game's by default.
    #[arg(long, value_delimiter = ',')]
    maps: Vec<String>,
    #[arg(long, default_value_t = 10)]
    reps: u32,
    /// Comma-separated bots; the game's four by default.
    #[arg(long, value_delimiter = ',')]
    bots: Vec<BotKind>,
    /// Directory for table.csv, table.txt and the match logs.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Match log files, or directories of them.
    #[arg(long = "in", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    /// Write the report as CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Match(a) => play(a),
        Command::Tournament(a) => tournament(a),
        Command::Stats(a) => stats(a),
        Command::Replay(a) => replay(a),
    };
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}

fn play(a: MatchArgs) -> Result<ExitCode, HarnessError> {
    let c = &a.common;
    let mut config = MatchConfig::new(c.game, &a.map, a.max_bot, a.min_bot, c.seed);
    config.max_cycles = c.max_cycles.unwrap_or(c.game.default_max_cycles());
    config.budget_ms = c.budget_ms;
    config.cycles_per_second = c.cycles_per_second;
    config.clock = c.clock();
    let record = run_match(&config)?;
    let r = record.result();
    println!(
        "{} on {}: {} (max) vs {} (min) -> {:?} at cycle {} ({:?})",
        config.game, config.map, config.max_bot, config.min_bot, r.outcome, r.final_cycle, r.end
    );
    if let Some(path) = a.replay_out {
        std::fs::write(path, record.to_jsonl())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn tournament(a: TournamentArgs) -> Result<ExitCode, HarnessError> {
    let c = &a.common;
    let maps: Vec<&str> = if a.maps.is_empty() {
        c.game.maps()
    } else {
        a.maps.iter().map(String::as_str).collect()
    };
    let bots = if a.bots.is_empty() {
        c.game.bots().to_vec()
    } else {
        a.bots.clone()
    };
    let mut config = TournamentConfig::new(c.game, &maps, a.reps, &bots, c.seed);
    config.max_cycles = c.max_cycles.unwrap_or(c.game.default_max_cycles());
    config.budget_ms = c.budget_ms;
    config.cycles_per_second = c.cycles_per_second;
    config.clock = c.clock();
    let logs = a.out.as_ref().map(|d| d.join("matches"));
    let t = run_tournament(&config, logs.as_deref())?;
    print!("{}", t.table.to_text());
    if let Some(dir) = &a.out {
        std::fs::write(dir.join("table.csv"), t.table.to_csv())?;
        std::fs::write(dir.join("table.txt"), t.table.to_text())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn collect_logs(path: &Path, out: &mut Vec<PathBuf>) -> Result<(), HarnessError> {
    if path.is_dir() {
        let mut entries: Vec<PathBuf> = std::fs::read_dir(path)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()?;
        entries.sort();
        for e in entries {
            if e.is_dir() || e.extension().is_some_and(|x| x == "jsonl") {
                collect_logs(&e, out)?;
            }
        }
    } else if path.exists() {
        out.push(path.to_path_buf());
    } else {
        return Err(HarnessError::Config(format!(
            "no such file {}",
            path.display()
        )));
    }
    Ok(())
}

fn read_record(path: &Path) -> Result<AnyRecord, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    AnyRecord::from_jsonl(&text)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))
}

fn stats(a: StatsArgs) -> Result<ExitCode, HarnessError> {
    let mut files = Vec::new();
    for p in &a.inputs {
        collect_logs(p, &mut files)?;
    }
    let summaries = files
        .iter()
        .map(|f| read_record(f).map(|r| r.summary()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = stats_report(&summaries);
    print!("{}", report.to_text());
    if let Some(out) = a.out {
        std::fs::write(out, report.to_csv())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn replay(a: ReplayArgs) -> Result<ExitCode, HarnessError> {
    let record = read_record(&a.input)?;
    let replayed = replay_any(&record)?;
    let logged = record.result();
    println!(
        "replayed: {:?} at cycle {}; logged: {:?} at cycle {}",
        replayed.outcome, replayed.final_cycle, logged.outcome, logged.final_cycle
    );
    if &replayed == logged {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("replay does not match the log");
        Ok(ExitCode::FAILURE)
    }
}
