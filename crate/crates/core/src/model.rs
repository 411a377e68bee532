//! The real-time game contract shared by the search and every concrete game.
//!
//! A game is a set of immutable state values plus the functions that move
//! between them. Time is an integer game-cycle counter attached to each state.
//! Players give orders to individual units (basic-actions); everything one
//! player orders at the same instant forms a [`PlayerAction`]. Issuing orders
//! never advances time; only [`GameModel::simulate`] does.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::score::Score;

/// Game cycles per second of game time. Only used when reporting.
pub const CYCLES_PER_SECOND: u64 = 50;

/// Hard upper bound on the number of cycles a single `simulate` call may run.
pub const DEFAULT_SIMULATION_CAP: u64 = 1_000_000;

/// Integer time stamp, in game cycles.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct GameClock(pub u64);

impl GameClock {
    pub const ZERO: GameClock = GameClock(0);

    pub fn cycles(self) -> u64 {
        self.0
    }

    pub fn seconds(self, cycles_per_second: u64) -> f64 {
        self.0 as f64 / cycles_per_second as f64
    }
}

impl Add<u64> for GameClock {
    type Output = GameClock;

    fn add(self, rhs: u64) -> GameClock {
        GameClock(self.0 + rhs)
    }
}

impl Sub for GameClock {
    type Output = u64;

    fn sub(self, rhs: GameClock) -> u64 {
        self.0.saturating_sub(rhs.0)
    }
}

impl Display for GameClock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}cy", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Max, Player::Min];

    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Max => 0,
            Player::Min => 1,
        }
    }
}

impl Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Max => "max",
            Player::Min => "min",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GameOutcome {
    MaxWins,
    MinWins,
    Draw,
    Ongoing,
}

impl GameOutcome {
    pub fn is_over(self) -> bool {
        self != GameOutcome::Ongoing
    }

    pub fn winner(self) -> Option<Player> {
        match self {
            GameOutcome::MaxWins => Some(Player::Max),
            GameOutcome::MinWins => Some(Player::Min),
            _ => None,
        }
    }

    /// The same outcome seen with the two players' roles exchanged.
    pub fn swapped(self) -> GameOutcome {
        match self {
            GameOutcome::MaxWins => GameOutcome::MinWins,
            GameOutcome::MinWins => GameOutcome::MaxWins,
            other => other,
        }
    }

    pub fn won_by(p: Player) -> GameOutcome {
        match p {
            Player::Max => GameOutcome::MaxWins,
            Player::Min => GameOutcome::MinWins,
        }
    }
}

pub type UnitId = u32;

/// An order for exactly one unit.
pub trait BasicAction: Clone + Eq + Hash + Debug + Send + Sync {
    fn unit(&self) -> UnitId;
}

/// Everything one player orders at one instant, at most one order per unit.
///
/// The empty player-action is legal and means "nothing can be issued"; it is
/// distinct from a set of explicit no-action orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlayerAction<A>(Vec<A>);

impl<A> PlayerAction<A> {
    pub fn empty() -> Self {
        PlayerAction(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, A> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[A] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<A> {
        self.0
    }
}

impl<A: BasicAction> PlayerAction<A> {
    /// Builds a player-action, rejecting two orders for the same unit.
    pub fn new(actions: Vec<A>) -> Result<Self, ModelError> {
        for (i, a) in actions.iter().enumerate() {
            if actions[..i].iter().any(|b| b.unit() == a.unit()) {
                return Err(ModelError::IllegalAction(format!(
                    "unit {} ordered twice",
                    a.unit()
                )));
            }
        }
        Ok(PlayerAction(actions))
    }

    pub fn single(a: A) -> Self {
        PlayerAction(vec![a])
    }
}

impl<'a, A> IntoIterator for &'a PlayerAction<A> {
    type Item = &'a A;
    type IntoIter = std::slice::Iter<'a, A>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Enumerates every combination taking one option from each unit's list.
///
/// The first unit varies slowest, so the order is lexicographic in the input
/// order. An empty `per_unit` yields `{∅}`.
pub fn cross_product<A: Clone>(per_unit: &[Vec<A>]) -> Vec<PlayerAction<A>> {
    if per_unit.iter().any(|opts| opts.is_empty()) {
        return vec![PlayerAction(Vec::new())];
    }
    let total: usize = per_unit.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; per_unit.len()];
    loop {
        out.push(PlayerAction(
            idx.iter()
                .zip(per_unit)
                .map(|(&i, opts)| opts[i].clone())
                .collect(),
        ));
        let mut k = per_unit.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_unit[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Upper time bound for [`GameModel::simulate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Until {
    Cycle(GameClock),
    Unbounded,
}

impl Until {
    pub fn reached(self, t: GameClock) -> bool {
        match self {
            Until::Cycle(limit) => t >= limit,
            Until::Unbounded => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("illegal action: {0}")]
    IllegalAction(String),
    #[error("cannot simulate backwards from {now} to {until}")]
    ClockRegression { now: GameClock, until: GameClock },
    #[error("simulation ran {0} cycles without reaching a decision point or the end of the game")]
    SimulationCap(u64),
    #[error("action not applicable in this state: {0}")]
    NotApplicable(String),
    #[error("game contract violated: {0}")]
    ContractViolation(String),
}

/// The real-time game contract.
///
/// Implementations must be deterministic: equal states and equal orders give
/// equal successors. `player_actions` never returns an empty collection; it
/// returns `{∅}` exactly when `can_act` is false.
pub trait GameModel {
    type State: Clone + Eq + Hash + Debug + Send + Sync;
    type Action: BasicAction;

    fn clock(&self, s: &Self::State) -> GameClock;

    /// True when `p` has at least one unit ready for a new order.
    fn can_act(&self, s: &Self::State, p: Player) -> bool;

    fn player_actions(&self, s: &Self::State, p: Player) -> Vec<PlayerAction<Self::Action>>;

    /// Gives the orders in `action` to `p`'s units. Never advances time.
    fn issue(
        &self,
        s: &Self::State,
        action: &PlayerAction<Self::Action>,
        p: Player,
    ) -> Result<Self::State, ModelError>;

    /// Runs the game until a player can act, the game ends, or `until` is reached.
    fn simulate(&self, s: &Self::State, until: Until) -> Result<Self::State, ModelError>;

    /// Remaining cycles of `a`, either executing in `s` or freshly issuable there.
    fn eta(&self, a: &Self::Action, s: &Self::State) -> Result<u64, ModelError>;

    fn winner(&self, s: &Self::State) -> GameOutcome;

    /// Length of the shortest basic-action in the game, in cycles.
    fn shortest_action(&self) -> u64;

    /// A player-action giving every ready unit of `p` an explicit no-action.
    fn idle_action(&self, s: &Self::State, p: Player) -> PlayerAction<Self::Action>;

    /// Time of `simulate(s, Until::Unbounded)`. Games may override this with
    /// something cheaper when they can compute it without stepping.
    fn next_decision_time(&self, s: &Self::State) -> Result<GameClock, ModelError> {
        Ok(self.clock(&self.simulate(s, Until::Unbounded)?))
    }
}

impl<M: GameModel + ?Sized> GameModel for &M {
    type State = M::State;
    type Action = M::Action;

    fn clock(&self, s: &Self::State) -> GameClock {
        (**self).clock(s)
    }

    fn can_act(&self, s: &Self::State, p: Player) -> bool {
        (**self).can_act(s, p)
    }

    fn player_actions(&self, s: &Self::State, p: Player) -> Vec<PlayerAction<Self::Action>> {
        (**self).player_actions(s, p)
    }

    fn issue(
        &self,
        s: &Self::State,
        action: &PlayerAction<Self::Action>,
        p: Player,
    ) -> Result<Self::State, ModelError> {
        (**self).issue(s, action, p)
    }

    fn simulate(&self, s: &Self::State, until: Until) -> Result<Self::State, ModelError> {
        (**self).simulate(s, until)
    }

    fn eta(&self, a: &Self::Action, s: &Self::State) -> Result<u64, ModelError> {
        (**self).eta(a, s)
    }

    fn winner(&self, s: &Self::State) -> GameOutcome {
        (**self).winner(s)
    }

    fn shortest_action(&self) -> u64 {
        (**self).shortest_action()
    }

    fn idle_action(&self, s: &Self::State, p: Player) -> PlayerAction<Self::Action> {
        (**self).idle_action(s, p)
    }

    fn next_decision_time(&self, s: &Self::State) -> Result<GameClock, ModelError> {
        (**self).next_decision_time(s)
    }
}

/// State evaluation; positive numbers favor MAX.
pub trait Evaluator<S, V: Score> {
    fn evaluate(&self, s: &S) -> V;
}

impl<S, V: Score, F: Fn(&S) -> V> Evaluator<S, V> for F {
    fn evaluate(&self, s: &S) -> V {
        self(s)
    }
}

/// Views a game from one side: with `side == Player::Min` the two players
/// exchange roles, so a MAX-only search plays MIN.
#[derive(Clone, Debug)]
pub struct Perspective<M> {
    pub inner: M,
    pub side: Player,
}

impl<M> Perspective<M> {
    pub fn new(inner: M, side: Player) -> Self {
        Perspective { inner, side }
    }

    fn map(&self, p: Player) -> Player {
        match self.side {
            Player::Max => p,
            Player::Min => p.opponent(),
        }
    }
}

impl<M: GameModel> GameModel for Perspective<M> {
    type State = M::State;
    type Action = M::Action;

    fn clock(&self, s: &Self::State) -> GameClock {
        self.inner.clock(s)
    }

    fn can_act(&self, s: &Self::State, p: Player) -> bool {
        self.inner.can_act(s, self.map(p))
    }

    fn player_actions(&self, s: &Self::State, p: Player) -> Vec<PlayerAction<Self::Action>> {
        self.inner.player_actions(s, self.map(p))
    }

    fn issue(
        &self,
        s: &Self::State,
        action: &PlayerAction<Self::Action>,
        p: Player,
    ) -> Result<Self::State, ModelError> {
        self.inner.issue(s, action, self.map(p))
    }

    fn simulate(&self, s: &Self::State, until: Until) -> Result<Self::State, ModelError> {
        self.inner.simulate(s, until)
    }

    fn eta(&self, a: &Self::Action, s: &Self::State) -> Result<u64, ModelError> {
        self.inner.eta(a, s)
    }

    fn winner(&self, s: &Self::State) -> GameOutcome {
        match self.side {
            Player::Max => self.inner.winner(s),
            Player::Min => self.inner.winner(s).swapped(),
        }
    }

    fn shortest_action(&self) -> u64 {
        self.inner.shortest_action()
    }

    fn idle_action(&self, s: &Self::State, p: Player) -> PlayerAction<Self::Action> {
        self.inner.idle_action(s, self.map(p))
    }

    fn next_decision_time(&self, s: &Self::State) -> Result<GameClock, ModelError> {
        self.inner.next_decision_time(s)
    }
}

/// Evaluator seen from one side; negated when `side == Player::Min`.
#[derive(Clone, Debug)]
pub struct SidedEval<E> {
    pub inner: E,
    pub side: Player,
}

impl<S, V: Score, E: Evaluator<S, V>> Evaluator<S, V> for SidedEval<E> {
    fn evaluate(&self, s: &S) -> V {
        let v = self.inner.evaluate(s);
        match self.side {
            Player::Max => v,
            Player::Min => -v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq, Hash)]
    struct Order(UnitId, u8);

    impl BasicAction for Order {
        fn unit(&self) -> UnitId {
            self.0
        }
    }

    // Brute force: all index tuples via counting in mixed radix.
    fn brute_force(per_unit: &[Vec<Order>]) -> Vec<Vec<Order>> {
        let mut all = vec![vec![]];
        for opts in per_unit {
            let mut next = Vec::new();
            for prefix in &all {
                for o in opts {
                    let mut p: Vec<Order> = prefix.clone();
                    p.push(o.clone());
                    next.push(p);
                }
            }
            all = next;
        }
        all
    }

    #[test]
    fn two_units_three_options_give_nine() {
        let per_unit: Vec<Vec<Order>> = (0..2)
            .map(|u| (0..3).map(|k| Order(u, k)).collect())
            .collect();
        let got: Vec<Vec<Order>> = cross_product(&per_unit)
            .into_iter()
            .map(PlayerAction::into_vec)
            .collect();
        let expected = brute_force(&per_unit);
        assert_eq!(expected.len(), 9);
        assert_eq!(got, expected);
    }

    #[test]
    fn no_ready_units_gives_only_the_empty_action() {
        let got = cross_product::<Order>(&[]);
        assert_eq!(got, vec![PlayerAction::empty()]);
        assert!(got[0].is_empty());
    }

    #[test]
    fn duplicate_unit_is_rejected() {
        assert!(PlayerAction::new(vec![Order(1, 0), Order(1, 1)]).is_err());
        assert!(PlayerAction::new(vec![Order(1, 0), Order(2, 1)]).is_ok());
    }

    #[test]
    fn outcome_swap_round_trips() {
        for o in [
            GameOutcome::MaxWins,
            GameOutcome::MinWins,
            GameOutcome::Draw,
            GameOutcome::Ongoing,
        ] {
            assert_eq!(o.swapped().swapped(), o);
        }
        assert_eq!(GameOutcome::won_by(Player::Min), GameOutcome::MinWins);
    }

    #[test]
    fn clock_arithmetic() {
        let t = GameClock(100) + 8;
        assert_eq!(t, GameClock(108));
        assert_eq!(t - GameClock(100), 8);
        assert_eq!(GameClock(72).seconds(CYCLES_PER_SECOND), 1.44);
    }
}
