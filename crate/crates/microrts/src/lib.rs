//! A small deterministic real-time strategy game on a grid, for real-time
//! search.
//!
//! Six unit types: workers gather from mines and put up buildings, bases
//! train workers, barracks train light and heavy combat units. Every order
//! takes a fixed number of cycles. A player with no units left loses.

mod bots;
mod rules;
mod scenario;
pub mod units;

pub use bots::{categorize, rush_bot, stochastic_bot, Category, STOCHASTIC_WEIGHTS};
pub use rules::{Busy, Dir, MicroRts, MrAction, MrKind, MrState, Pos, Unit, WIN_SCORE};
pub use scenario::{Scenario, ScenarioError, ScenarioKind};
pub use units::UnitKind;

/// Five minutes of game time at 50 cycles per second; longer games are ties.
pub const MAX_CYCLES: u64 = 15_000;

pub type Session = rtmm_core::Session64<MicroRts>;
