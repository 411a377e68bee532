//! Real-time minimax search for games with durative, simultaneous actions.
//!
//! Games implement [`GameModel`]; the search in [`search`] opens trees up to a
//! game-time cutoff and [`SearchSession`] wraps it in interruptible iterative
//! deepening. Search values are generic over [`Score`]; the aliases below fix
//! them to `f64`, which is what the bundled games and harness use.

pub mod clock;
pub mod model;
pub mod oracle;
pub mod score;
pub mod search;
pub mod toy;

pub use clock::{SearchClock, TickClock, WallClock, WorkClock};
pub use model::{
    cross_product, BasicAction, Evaluator, GameClock, GameModel, GameOutcome, ModelError,
    Perspective, Player, PlayerAction, SidedEval, UnitId, Until, CYCLES_PER_SECOND,
    DEFAULT_SIMULATION_CAP,
};
pub use score::Score;
pub use search::{
    next_cutoff, rrtmm, rtmm, rtmm_alphabeta, SearchError, SearchResult, SearchSession,
    SearchStats, SearchVariant, SessionConfig, SessionStatus,
};

/// Default search value type.
pub type Value = f64;
pub type Result64<A> = SearchResult<A, f64>;
pub type Session64<M> = SearchSession<M, f64>;
pub type Result32<A> = SearchResult<A, f32>;
pub type Session32<M> = SearchSession<M, f32>;
