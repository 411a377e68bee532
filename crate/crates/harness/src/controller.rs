//! Per-cycle controllers: scripted bots and the search-driven player.

use std::marker::PhantomData;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtmm_core::{
    GameModel, ModelError, Perspective, Player, PlayerAction, SearchClock, SearchError,
    SearchVariant, Session64, SessionConfig, SidedEval, Until, WallClock, WorkClock,
    CYCLES_PER_SECOND,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Game, Scorer};

/// Nanoseconds charged per node expansion by the default deterministic clock.
pub const DEFAULT_WORK_NANOS: u64 = 1_000;

#[derive(Debug, Error)]
pub enum ControllerError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A bot, called once per game cycle with the current state.
pub trait Controller<G: GameModel>: Send {
    /// Orders to issue this cycle, if any. `budget` bounds the thinking time.
    fn on_cycle(
        &mut self,
        game: &G,
        s: &G::State,
        budget: Duration,
    ) -> Result<Option<PlayerAction<G::Action>>, ControllerError>;

    /// Search figures for the decision made in the last call, if it made one.
    fn take_telemetry(&mut self) -> Option<Telemetry> {
        None
    }
}

/// Acts through a plain function whenever its side can act.
pub struct Scripted<G, F> {
    side: Player,
    policy: F,
    _game: PhantomData<fn(&G)>,
}

impl<G, F> Scripted<G, F> {
    pub fn new(side: Player, policy: F) -> Self {
        Scripted {
            side,
            policy,
            _game: PhantomData,
        }
    }
}

impl<G, F> Controller<G> for Scripted<G, F>
where
    G: GameModel,
    F: FnMut(&G, &G::State, Player) -> PlayerAction<G::Action> + Send,
{
    fn on_cycle(
        &mut self,
        game: &G,
        s: &G::State,
        _budget: Duration,
    ) -> Result<Option<PlayerAction<G::Action>>, ControllerError> {
        Ok(game
            .can_act(s, self.side)
            .then(|| (self.policy)(game, s, self.side)))
    }
}

/// Source of search time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClockSpec {
    /// Real elapsed time. Matches are not reproducible.
    Wall,
    /// A fixed charge per node expansion. Matches are reproducible.
    Work { nanos_per_expansion: u64 },
}

impl Default for ClockSpec {
    fn default() -> Self {
        ClockSpec::Work {
            nanos_per_expansion: DEFAULT_WORK_NANOS,
        }
    }
}

impl ClockSpec {
    fn build(self) -> Box<dyn SearchClock + Send> {
        match self {
            ClockSpec::Wall => Box::new(WallClock::new()),
            ClockSpec::Work {
                nanos_per_expansion,
            } => Box::new(WorkClock::new(nanos_per_expansion)),
        }
    }
}

/// Figures for one search tree, taken when its action is played.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Telemetry {
    pub player: Player,
    /// Game time of the tree's root.
    pub root_cycle: u64,
    /// Clock time spent on the tree, over all the cycles it was worked on.
    pub search_ms: f64,
    pub iterations: u32,
    /// Cutoff of the last finished iteration, if any.
    pub cutoff: Option<u64>,
    pub nodes: u64,
    pub leaves: u64,
    pub min_branching: u64,
    pub max_branching: u64,
    pub lookahead_cycles: u64,
    pub lookahead_s: f64,
}

type View<G> = Perspective<G>;

/// Real-time minimax player.
///
/// Each cycle it looks at the state the game will be in when its side next
/// gets to act. If it will not act there, it does nothing. Otherwise it keeps
/// searching from that future state, and hands over the best action of the
/// last finished iteration once the future has arrived. A tree whose root no
/// longer matches the future (the opponent gave new orders) is thrown away.
pub struct RtmmController<G: Game> {
    view: View<G>,
    eval: SidedEval<Scorer<G>>,
    variant: SearchVariant,
    clock: Box<dyn SearchClock + Send>,
    seeds: ChaCha8Rng,
    session: Option<Session64<View<G>>>,
    root_branching: u64,
    telemetry: Option<Telemetry>,
}

impl<G: Game> RtmmController<G> {
    pub fn new(game: G, side: Player, variant: SearchVariant, seed: u64, clock: ClockSpec) -> Self {
        RtmmController {
            eval: SidedEval {
                inner: Scorer(game.clone()),
                side,
            },
            view: Perspective::new(game, side),
            variant,
            clock: clock.build(),
            seeds: ChaCha8Rng::seed_from_u64(seed),
            session: None,
            root_branching: 0,
            telemetry: None,
        }
    }

    pub fn side(&self) -> Player {
        self.view.side
    }

    /// The tree being worked on, if any.
    pub fn session(&self) -> Option<&Session64<View<G>>> {
        self.session.as_ref()
    }

    fn report(&self, session: &Session64<View<G>>) -> Telemetry {
        let root = self.view.clock(session.root()).cycles();
        let done = session.last_complete();
        let stats = done.map(|r| r.stats.clone()).unwrap_or_default();
        let lookahead = stats.max_lookahead;
        Telemetry {
            player: self.view.side,
            root_cycle: root,
            search_ms: session.time_spent().as_secs_f64() * 1e3,
            iterations: session.iterations(),
            cutoff: done.map(|r| r.cutoff.cycles()),
            nodes: stats.nodes,
            leaves: stats.leaves_total,
            min_branching: stats
                .min_branching
                .map_or(self.root_branching, |b| b.min(self.root_branching)),
            max_branching: stats.max_branching.max(self.root_branching),
            lookahead_cycles: lookahead,
            lookahead_s: lookahead as f64 / CYCLES_PER_SECOND as f64,
        }
    }
}

impl<G: Game> Controller<G> for RtmmController<G> {
    fn on_cycle(
        &mut self,
        _game: &G,
        s: &G::State,
        budget: Duration,
    ) -> Result<Option<PlayerAction<G::Action>>, ControllerError> {
        let view = &self.view;
        let next = view.simulate(s, Until::Unbounded)?;
        if view.winner(&next).is_over() || !view.can_act(&next, Player::Max) {
            self.session = None;
            return Ok(None);
        }
        if self.session.as_ref().is_none_or(|t| t.root() != &next) {
            self.root_branching = view.player_actions(&next, Player::Max).len() as u64;
            let config = SessionConfig::new(self.variant, view.shortest_action(), self.seeds.gen());
            self.session = Some(Session64::new(view, next, config)?);
        }
        let session = self.session.as_mut().expect("session just ensured");
        session.step(view, &self.eval, budget, &&*self.clock)?;
        if !view.can_act(s, Player::Max) {
            return Ok(None);
        }
        let session = self.session.take().expect("session just ensured");
        let action = session
            .best_action()
            .cloned()
            .unwrap_or_else(|| view.idle_action(s, Player::Max));
        self.telemetry = Some(self.report(&session));
        Ok(Some(action))
    }

    fn take_telemetry(&mut self) -> Option<Telemetry> {
        self.telemetry.take()
    }
}
