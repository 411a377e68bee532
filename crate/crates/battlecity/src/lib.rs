//! BattleCity for real-time search: one tank and one base per side on a grid
//! with solid and destructible walls.
//!
//! A side loses when its tank or its base is destroyed; if both sides lose
//! something in the same cycle the game is drawn. Tanks move one cell per
//! 16-cycle order and may fire once per 8 cycles; bullets fly one cell per
//! cycle. Moving and firing are separate channels, so a player issues up to
//! two orders at once.

mod bots;
mod map;
mod rules;

pub use bots::{astar, base_in_line_of_fire, follow_step, follower_bot, random_bot};
pub use map::{Cell, Dir, Map, MapError, Pos};
pub use rules::{
    Base, BattleCity, BcAction, BcKind, BcState, Bullet, Busy, Channel, Tank, FIRE_CYCLES,
    MOVE_CYCLES, NO_ACTION_CYCLES, WIN_SCORE,
};

/// Match length after which a game counts as a tie.
pub const MAX_CYCLES: u64 = 5_000;

pub type Session = rtmm_core::Session64<BattleCity>;
