//! Interruptible, resumable iterative deepening.
//!
//! A session is anchored at a state where MAX can act. Each step runs
//! iterations at growing cutoffs until its budget runs out. An iteration cut
//! short by the budget is thrown away and rerun from scratch on the next step,
//! so `last_complete` always holds a fully finished search.

use std::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{next_cutoff, SearchError, SearchResult, SearchVariant, Searcher};
use crate::clock::SearchClock;
use crate::model::{Evaluator, GameClock, GameModel, Player, PlayerAction};
use crate::score::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SessionStatus {
    /// More iterations can run.
    Ready,
    /// The last step ran out of budget; stepping again resumes.
    Exhausted,
    /// Nothing left to search: the game is over or the whole tree is opened.
    Terminal,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SessionConfig {
    pub variant: SearchVariant,
    /// Cutoff increment; the length of the game's shortest basic-action.
    pub epsilon: u64,
    pub seed: u64,
    /// Chance of a min-first expansion at a simultaneous node (randomized variant only).
    pub min_first_probability: f64,
}

impl SessionConfig {
    pub fn new(variant: SearchVariant, epsilon: u64, seed: u64) -> Self {
        SessionConfig {
            variant,
            epsilon,
            seed,
            min_first_probability: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchSession<M: GameModel, V> {
    root: M::State,
    cutoff: GameClock,
    last_complete: Option<SearchResult<M::Action, V>>,
    config: SessionConfig,
    status: SessionStatus,
    iterations: u32,
    spent: Duration,
}

impl<M: GameModel, V: Score> SearchSession<M, V> {
    pub fn new(model: &M, root: M::State, config: SessionConfig) -> Result<Self, SearchError> {
        let now = model.clock(&root);
        let status = if model.winner(&root).is_over() {
            SessionStatus::Terminal
        } else if model.can_act(&root, Player::Max) {
            SessionStatus::Ready
        } else {
            return Err(SearchError::NotDecisionPoint);
        };
        Ok(SearchSession {
            root,
            cutoff: now + config.epsilon,
            last_complete: None,
            config,
            status,
            iterations: 0,
            spent: Duration::ZERO,
        })
    }

    pub fn root(&self) -> &M::State {
        &self.root
    }

    pub fn cutoff(&self) -> GameClock {
        self.cutoff
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn last_complete(&self) -> Option<&SearchResult<M::Action, V>> {
        self.last_complete.as_ref()
    }

    /// Completed iterations so far.
    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// Clock time consumed by all steps so far.
    pub fn time_spent(&self) -> Duration {
        self.spent
    }

    /// Root MAX player-action of the last completed iteration.
    pub fn best_action(&self) -> Option<&PlayerAction<M::Action>> {
        self.last_complete.as_ref()?.best_action.as_ref()
    }

    /// Runs iterations until `budget` of `clock` time is used up.
    pub fn step<E, C>(
        &mut self,
        model: &M,
        eval: &E,
        budget: Duration,
        clock: &C,
    ) -> Result<SessionStatus, SearchError>
    where
        E: Evaluator<M::State, V>,
        C: SearchClock,
    {
        if self.status == SessionStatus::Terminal {
            return Ok(self.status);
        }
        let mut start = None;
        loop {
            let now = clock.now();
            let start = *start.get_or_insert(now);
            if now - start >= budget {
                self.spent += now - start;
                self.status = SessionStatus::Exhausted;
                return Ok(self.status);
            }
            match self.iterate(
                model,
                eval,
                Some((clock as &dyn SearchClock, start + budget)),
            ) {
                Ok(()) => {
                    if self.status == SessionStatus::Terminal {
                        self.spent += clock.now() - start;
                        return Ok(self.status);
                    }
                }
                Err(SearchError::Interrupted) => {
                    self.spent += clock.now() - start;
                    self.status = SessionStatus::Exhausted;
                    return Ok(self.status);
                }
                Err(e) => return Err(e),
            }
        }
    }

    /// Runs exactly one iteration at the current cutoff, without a budget.
    pub fn advance<E>(&mut self, model: &M, eval: &E) -> Result<SessionStatus, SearchError>
    where
        E: Evaluator<M::State, V>,
    {
        if self.status != SessionStatus::Terminal {
            self.iterate(model, eval, None)?;
        }
        Ok(self.status)
    }

    fn iterate<E>(
        &mut self,
        model: &M,
        eval: &E,
        deadline: Option<(&dyn SearchClock, Duration)>,
    ) -> Result<(), SearchError>
    where
        E: Evaluator<M::State, V>,
    {
        let mut searcher = Searcher::new(model, eval, self.config.variant, self.cutoff);
        if let Some((clock, at)) = deadline {
            searcher = searcher.with_deadline(clock, at);
        }
        let result = match self.config.variant {
            SearchVariant::Plain | SearchVariant::AlphaBeta => {
                searcher.run(&self.root, V::lowest(), V::highest())?
            }
            SearchVariant::Randomized => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
                searcher
                    .with_coin(&mut rng, self.config.min_first_probability)
                    .run(&self.root, V::lowest(), V::highest())?
            }
        };
        self.iterations += 1;
        match next_cutoff(&result, self.config.epsilon) {
            Some(t) => {
                self.cutoff = t.max(self.cutoff + 1);
                self.status = SessionStatus::Ready;
            }
            None => self.status = SessionStatus::Terminal,
        }
        self.last_complete = Some(result);
        Ok(())
    }
}
