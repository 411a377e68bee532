//! Real-time minimax (RTMM) and its alpha-beta and randomized variants.
//!
//! The tree is opened up to a game-time cutoff rather than a depth. Each node
//! is one of three kinds:
//!
//! * a MAX node when MAX has a ready unit, expanding all MAX player-actions;
//! * otherwise a MIN node when MIN has a ready unit;
//! * otherwise a simulation node, whose single child is the state reached by
//!   running the game up to the cutoff.
//!
//! When both players can act, MAX is expanded first (max-min ordering). The
//! randomized variant flips a coin at such nodes below the root to choose
//! between max-min and min-max.

mod session;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use std::time::Duration;
use thiserror::Error;

pub use session::{SearchSession, SessionConfig, SessionStatus};

use crate::clock::{SearchClock, CHECK_INTERVAL};
use crate::model::{Evaluator, GameClock, GameModel, ModelError, Player, PlayerAction, Until};
use crate::score::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchVariant {
    /// Plain RTMM, no pruning.
    Plain,
    /// RTMM with alpha-beta pruning.
    AlphaBeta,
    /// Alpha-beta RTMM with randomized ordering at simultaneous nodes.
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SearchError {
    #[error("cutoff {t_max} is earlier than the state's time {now}")]
    CutoffInPast { t_max: GameClock, now: GameClock },
    #[error("empty search window: alpha must be below beta")]
    EmptyWindow,
    #[error("search root is not a state where MAX can act")]
    NotDecisionPoint,
    #[error("search interrupted by its time budget")]
    Interrupted,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Counters collected over one complete search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves_total: u64,
    /// Leaves reached because the cutoff time was hit (the game had not ended).
    pub leaves_cutoff: u64,
    /// Earliest next-decision time over cutoff leaves.
    pub t_minus: Option<GameClock>,
    /// Latest next-decision time over cutoff leaves.
    pub t_plus: Option<GameClock>,
    /// Largest `time(leaf) - time(root)`, in cycles.
    pub max_lookahead: u64,
    pub max_branching: u64,
    pub min_branching: Option<u64>,
    /// Simultaneous nodes expanded max-first / min-first.
    pub max_first: u64,
    pub min_first: u64,
}

impl SearchStats {
    fn record_branching(&mut self, n: usize) {
        let n = n as u64;
        self.max_branching = self.max_branching.max(n);
        self.min_branching = Some(self.min_branching.map_or(n, |m| m.min(n)));
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult<A, V> {
    pub value: V,
    /// Best MAX player-action at the root, when the root is a MAX node.
    pub best_action: Option<PlayerAction<A>>,
    /// Position of `best_action` in the root's enumeration order.
    pub best_index: Option<usize>,
    pub cutoff: GameClock,
    pub stats: SearchStats,
}

/// Cutoff for the next iterative-deepening iteration: `t⁻ + epsilon`.
///
/// Returns `None` when no leaf was cut off by time, i.e. every branch of the
/// tree already reaches the end of the game and deeper iterations add nothing.
pub fn next_cutoff<A, V>(result: &SearchResult<A, V>, epsilon: u64) -> Option<GameClock> {
    if result.stats.leaves_cutoff == 0 {
        return None;
    }
    result.stats.t_minus.map(|t| t + epsilon)
}

/// Plain RTMM to cutoff `t_max`.
pub fn rtmm<M, E, V>(
    model: &M,
    eval: &E,
    s: &M::State,
    t_max: GameClock,
) -> Result<SearchResult<M::Action, V>, SearchError>
where
    M: GameModel,
    E: Evaluator<M::State, V>,
    V: Score,
{
    Searcher::new(model, eval, SearchVariant::Plain, t_max).run(s, V::lowest(), V::highest())
}

/// RTMM with fail-soft alpha-beta pruning inside the window `(alpha, beta)`.
pub fn rtmm_alphabeta<M, E, V>(
    model: &M,
    eval: &E,
    s: &M::State,
    t_max: GameClock,
    alpha: V,
    beta: V,
) -> Result<SearchResult<M::Action, V>, SearchError>
where
    M: GameModel,
    E: Evaluator<M::State, V>,
    V: Score,
{
    Searcher::new(model, eval, SearchVariant::AlphaBeta, t_max).run(s, alpha, beta)
}

/// Alpha-beta RTMM where each non-root simultaneous node is expanded min-first
/// with probability `min_first_probability`, drawn from `rng`.
#[allow(clippy::too_many_arguments)]
pub fn rrtmm<M, E, V, R>(
    model: &M,
    eval: &E,
    s: &M::State,
    t_max: GameClock,
    alpha: V,
    beta: V,
    rng: &mut R,
    min_first_probability: f64,
) -> Result<SearchResult<M::Action, V>, SearchError>
where
    M: GameModel,
    E: Evaluator<M::State, V>,
    V: Score,
    R: RngCore,
{
    Searcher::new(model, eval, SearchVariant::Randomized, t_max)
        .with_coin(rng, min_first_probability)
        .run(s, alpha, beta)
}

struct Coin<'r> {
    rng: &'r mut dyn RngCore,
    min_first_probability: f64,
}

struct Deadline<'c> {
    clock: &'c dyn SearchClock,
    at: Duration,
}

pub(crate) struct Searcher<'a, M: GameModel, E, V> {
    model: &'a M,
    eval: &'a E,
    variant: SearchVariant,
    t_max: GameClock,
    root_time: GameClock,
    stats: SearchStats,
    coin: Option<Coin<'a>>,
    deadline: Option<Deadline<'a>>,
    unbilled: u64,
    best: Option<(usize, PlayerAction<M::Action>)>,
    _value: std::marker::PhantomData<V>,
}

impl<'a, M, E, V> Searcher<'a, M, E, V>
where
    M: GameModel,
    E: Evaluator<M::State, V>,
    V: Score,
{
    pub(crate) fn new(model: &'a M, eval: &'a E, variant: SearchVariant, t_max: GameClock) -> Self {
        Searcher {
            model,
            eval,
            variant,
            t_max,
            root_time: GameClock::ZERO,
            stats: SearchStats::default(),
            coin: None,
            deadline: None,
            unbilled: 0,
            best: None,
            _value: std::marker::PhantomData,
        }
    }

    pub(crate) fn with_deadline(mut self, clock: &'a dyn SearchClock, at: Duration) -> Self {
        self.deadline = Some(Deadline { clock, at });
        self
    }

    pub(crate) fn with_coin(
        mut self,
        rng: &'a mut dyn RngCore,
        min_first_probability: f64,
    ) -> Self {
        self.coin = Some(Coin {
            rng,
            min_first_probability,
        });
        self
    }

    pub(crate) fn run(
        mut self,
        s: &M::State,
        alpha: V,
        beta: V,
    ) -> Result<SearchResult<M::Action, V>, SearchError> {
        let now = self.model.clock(s);
        if self.t_max < now {
            return Err(SearchError::CutoffInPast {
                t_max: self.t_max,
                now,
            });
        }
        if alpha.partial_cmp(&beta) != Some(std::cmp::Ordering::Less) {
            return Err(SearchError::EmptyWindow);
        }
        self.root_time = now;
        let outcome = self.node(s, alpha, beta, true);
        if let Some(d) = &self.deadline {
            d.clock.charge(self.unbilled);
        }
        let value = outcome?;
        let (best_index, best_action) = match self.best.take() {
            Some((i, a)) => (Some(i), Some(a)),
            None => (None, None),
        };
        Ok(SearchResult {
            value,
            best_action,
            best_index,
            cutoff: self.t_max,
            stats: self.stats,
        })
    }

    fn tick(&mut self) -> Result<(), SearchError> {
        self.stats.nodes += 1;
        self.unbilled += 1;
        if self.unbilled >= CHECK_INTERVAL {
            if let Some(d) = &self.deadline {
                d.clock.charge(self.unbilled);
                self.unbilled = 0;
                if d.clock.now() >= d.at {
                    return Err(SearchError::Interrupted);
                }
            }
        }
        Ok(())
    }

    fn leaf(&mut self, s: &M::State, now: GameClock, game_over: bool) -> Result<V, SearchError> {
        let st = &mut self.stats;
        st.leaves_total += 1;
        st.max_lookahead = st.max_lookahead.max(now - self.root_time);
        if !game_over {
            st.leaves_cutoff += 1;
            let next = self.model.next_decision_time(s)?;
            st.t_minus = Some(st.t_minus.map_or(next, |t| t.min(next)));
            st.t_plus = Some(st.t_plus.map_or(next, |t| t.max(next)));
        }
        Ok(self.eval.evaluate(s))
    }

    fn node(&mut self, s: &M::State, alpha: V, beta: V, root: bool) -> Result<V, SearchError> {
        self.tick()?;
        let now = self.model.clock(s);
        let game_over = self.model.winner(s).is_over();
        if now >= self.t_max || game_over {
            return self.leaf(s, now, game_over);
        }

        let max_ready = self.model.can_act(s, Player::Max);
        let min_ready = self.model.can_act(s, Player::Min);
        let mover = match (max_ready, min_ready) {
            (true, true) => {
                let min_first = !root
                    && match &mut self.coin {
                        Some(c) => c.rng.gen_bool(c.min_first_probability),
                        None => false,
                    };
                if min_first {
                    self.stats.min_first += 1;
                    Player::Min
                } else {
                    self.stats.max_first += 1;
                    Player::Max
                }
            }
            (true, false) => Player::Max,
            (false, true) => Player::Min,
            (false, false) => {
                let next = self.model.simulate(s, Until::Cycle(self.t_max))?;
                return self.node(&next, alpha, beta, false);
            }
        };

        let actions = self.model.player_actions(s, mover);
        self.stats.record_branching(actions.len());
        let prune = self.variant != SearchVariant::Plain;
        let (mut alpha, mut beta) = (alpha, beta);

        match mover {
            Player::Max => {
                let mut best = V::lowest();
                for (i, a) in actions.iter().enumerate() {
                    let child = self.model.issue(s, a, Player::Max)?;
                    let v = self.node(&child, alpha, beta, false)?;
                    if v > best || (root && self.best.is_none()) {
                        best = best.max_of(v);
                        if root {
                            self.best = Some((i, a.clone()));
                        }
                    }
                    if prune {
                        alpha = alpha.max_of(best);
                        if alpha >= beta {
                            break;
                        }
                    }
                }
                Ok(best)
            }
            Player::Min => {
                let mut best = V::highest();
                for a in &actions {
                    let child = self.model.issue(s, a, Player::Min)?;
                    let v = self.node(&child, alpha, beta, false)?;
                    best = best.min_of(v);
                    if prune {
                        beta = beta.min_of(best);
                        if alpha >= beta {
                            break;
                        }
                    }
                }
                Ok(best)
            }
        }
    }
}
