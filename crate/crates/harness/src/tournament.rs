//! Round-robin tournaments and their win/tie/loss tables.

use std::fmt::{self, Write as _};
use std::path::Path;

use rayon::prelude::*;
use rtmm_core::{GameOutcome, Player};
use serde::{Deserialize, Serialize};

use crate::controller::ClockSpec;
use crate::error::HarnessError;
use crate::game::{BotKind, GameId};
use crate::record::{MatchConfig, MatchSummary};
use crate::runner::{derive_seed, run_match};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TournamentConfig {
    pub game: GameId,
    pub maps: Vec<String>,
    /// Games per pairing and map.
    pub reps: u32,
    pub bots: Vec<BotKind>,
    pub seed: u64,
    pub max_cycles: u64,
    pub budget_ms: u64,
    pub cycles_per_second: u64,
    pub clock: ClockSpec,
}

impl TournamentConfig {
    pub fn new(game: GameId, maps: &[&str], reps: u32, bots: &[BotKind], seed: u64) -> Self {
        TournamentConfig {
            game,
            maps: maps.iter().map(|m| m.to_string()).collect(),
            reps,
            bots: bots.to_vec(),
            seed,
            max_cycles: game.default_max_cycles(),
            budget_ms: 15,
            cycles_per_second: rtmm_core::CYCLES_PER_SECOND,
            clock: ClockSpec::default(),
        }
    }

    /// Every game to play, in table order.
    ///
    /// Each unordered pair of bots (a bot with itself included) meets `reps`
    /// times on every map. Sides swap from one repetition to the next, the
    /// lower-indexed bot starting as MAX.
    pub fn schedule(&self) -> Result<Vec<ScheduledGame>, HarnessError> {
        if self.bots.is_empty() || self.maps.is_empty() || self.reps == 0 {
            return Err(HarnessError::Config(
                "a tournament needs at least one bot, one map and one repetition".into(),
            ));
        }
        let mut games = Vec::new();
        for i in 0..self.bots.len() {
            for j in i..self.bots.len() {
                for map in &self.maps {
                    for rep in 0..self.reps {
                        let swap = rep % 2 == 1;
                        let (max, min) = if swap { (i, j) } else { (j, i) };
                        let mut config = MatchConfig::new(
                            self.game,
                            map,
                            self.bots[max],
                            self.bots[min],
                            derive_seed(self.seed, games.len() as u64),
                        );
                        config.max_cycles = self.max_cycles;
                        config.budget_ms = self.budget_ms;
                        config.cycles_per_second = self.cycles_per_second;
                        config.clock = self.clock;
                        config.validate()?;
                        games.push(ScheduledGame {
                            row: i,
                            col: j,
                            col_side: if swap { Player::Min } else { Player::Max },
                            config,
                        });
                    }
                }
            }
        }
        Ok(games)
    }
}

/// One scheduled game: `col` is the bot whose result goes in the table cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduledGame {
    pub row: usize,
    pub col: usize,
    pub col_side: Player,
    pub config: MatchConfig,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wtl {
    pub wins: u32,
    pub ties: u32,
    pub losses: u32,
}

impl Wtl {
    pub fn games(self) -> u32 {
        self.wins + self.ties + self.losses
    }

    pub fn add(&mut self, outcome: GameOutcome, side: Player) {
        match outcome.winner() {
            Some(p) if p == side => self.wins += 1,
            Some(_) => self.losses += 1,
            None => self.ties += 1,
        }
    }

    pub fn flipped(self) -> Wtl {
        Wtl {
            wins: self.losses,
            ties: self.ties,
            losses: self.wins,
        }
    }
}

impl std::ops::AddAssign for Wtl {
    fn add_assign(&mut self, o: Wtl) {
        self.wins += o.wins;
        self.ties += o.ties;
        self.losses += o.losses;
    }
}

impl fmt::Display for Wtl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.wins, self.ties, self.losses)
    }
}

/// `cells[r][c]` is bot `c`'s record against bot `r`; `totals[c]` sums column `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TournamentTable {
    pub bots: Vec<BotKind>,
    pub cells: Vec<Vec<Wtl>>,
    pub totals: Vec<Wtl>,
}

impl TournamentTable {
    pub fn tally(bots: &[BotKind], games: &[ScheduledGame], results: &[MatchSummary]) -> Self {
        let n = bots.len();
        let mut cells = vec![vec![Wtl::default(); n]; n];
        for (g, r) in games.iter().zip(results) {
            let mut w = Wtl::default();
            w.add(r.result.outcome, g.col_side);
            cells[g.row][g.col] += w;
            if g.row != g.col {
                cells[g.col][g.row] += w.flipped();
            }
        }
        let mut totals = vec![Wtl::default(); n];
        for row in &cells {
            for (t, &c) in totals.iter_mut().zip(row) {
                *t += c;
            }
        }
        TournamentTable {
            bots: bots.to_vec(),
            cells,
            totals,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("row");
        for b in &self.bots {
            write!(out, ",{}", b.label()).unwrap();
        }
        out.push('\n');
        let rows = self.bots.iter().map(|b| b.label()).zip(&self.cells);
        for (label, cells) in rows.chain(std::iter::once(("total", &self.totals))) {
            out.push_str(label);
            for c in cells {
                write!(out, ",{c}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text table, one column per bot.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        rows.push(
            std::iter::once(String::new())
                .chain(self.bots.iter().map(|b| b.label().to_string()))
                .collect(),
        );
        for (b, cells) in self.bots.iter().zip(&self.cells) {
            rows.push(
                std::iter::once(b.label().to_string())
                    .chain(cells.iter().map(|c| c.to_string()))
                    .collect(),
            );
        }
        rows.push(
            std::iter::once("total".to_string())
                .chain(self.totals.iter().map(|c| c.to_string()))
                .collect(),
        );
        align(&rows)
    }
}

pub(crate) fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub struct Tournament {
    pub table: TournamentTable,
    pub games: Vec<ScheduledGame>,
    pub results: Vec<MatchSummary>,
}

/// Plays the whole schedule, in parallel. When `logs` is given, each match log
/// is written there as `NNNN.jsonl` in schedule order.
pub fn run_tournament(
    config: &TournamentConfig,
    logs: Option<&Path>,
) -> Result<Tournament, HarnessError> {
    let games = config.schedule()?;
    if let Some(dir) = logs {
        std::fs::create_dir_all(dir)?;
    }
    let results = games
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            let record = run_match(&g.config)?;
            if let Some(dir) = logs {
                std::fs::write(dir.join(format!("{k:04}.jsonl")), record.to_jsonl())?;
            }
            Ok(record.summary())
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(Tournament {
        table: TournamentTable::tally(&config.bots, &games, &results),
        games,
        results,
    })
}
