//! Running bots against each other.
//!
//! A [`Controller`] is polled once per game cycle. [`run_match`] plays one
//! game and returns its full log, which [`replay_any`] can check against the
//! rules. [`run_tournament`] plays a round robin and tallies a win/tie/loss
//! table; [`stats_report`] summarizes the search telemetry of a set of
//! matches. The `rtmm` binary exposes all of this on the command line.

mod controller;
mod error;
mod game;
mod record;
mod runner;
mod stats;
mod tournament;

pub use controller::{
    ClockSpec, Controller, ControllerError, RtmmController, Scripted, Telemetry, DEFAULT_WORK_NANOS,
};
pub use error::HarnessError;
pub use game::{controller, BotKind, Game, GameId, Scorer};
pub use record::{
    AnyRecord, CycleRecord, EndReason, MatchConfig, MatchRecord, MatchResult, MatchSummary,
};
pub use runner::{derive_seed, play, play_with, replay, replay_any, run_match};
pub use stats::{domain_of, stats_report, DomainStats, StatsReport};
pub use tournament::{
    run_tournament, ScheduledGame, Tournament, TournamentConfig, TournamentTable, Wtl,
};
