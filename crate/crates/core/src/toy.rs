//! A tiny real-time game used as a test fixture.
//!
//! Every unit picks from a handful of durative actions. When an action
//! completes, its owner scores `gain` minus the `guard` of whatever the
//! opposing units are executing at that moment. The game ends at a fixed time
//! or when the score reaches `target` in either direction; the evaluation is
//! the score itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::model::{
    cross_product, BasicAction, GameClock, GameModel, GameOutcome, ModelError, Player,
    PlayerAction, UnitId, Until,
};
use crate::score::{self, Score};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToyAction {
    pub duration: u64,
    pub gain: i64,
    pub guard: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToyUnit {
    pub owner: Player,
    pub actions: Vec<ToyAction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ToyOrder {
    pub unit: UnitId,
    pub action: u8,
}

impl BasicAction for ToyOrder {
    fn unit(&self) -> UnitId {
        self.unit
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToyState {
    pub clock: GameClock,
    /// Per unit: executing action index and cycles left.
    pub busy: Vec<Option<(u8, u64)>>,
    pub score: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyGame {
    pub units: Vec<ToyUnit>,
    pub end: GameClock,
    pub target: i64,
}

impl ToyGame {
    /// One unit per side, two actions each.
    pub fn two_by_two() -> Self {
        let acts = vec![
            ToyAction {
                duration: 2,
                gain: 3,
                guard: 0,
            },
            ToyAction {
                duration: 2,
                gain: 1,
                guard: 2,
            },
        ];
        ToyGame {
            units: vec![
                ToyUnit {
                    owner: Player::Max,
                    actions: acts.clone(),
                },
                ToyUnit {
                    owner: Player::Min,
                    actions: acts,
                },
            ],
            end: GameClock(1_000),
            target: 1_000,
        }
    }

    /// Random instance with `per_side` units per player and 2..=`max_actions`
    /// actions per unit, durations in 2..=`max_duration`.
    pub fn random(seed: u64, per_side: usize, max_actions: usize, max_duration: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut units = Vec::new();
        for owner in Player::BOTH {
            for _ in 0..per_side {
                let n = rng.gen_range(2..=max_actions);
                let actions = (0..n)
                    .map(|_| ToyAction {
                        duration: rng.gen_range(2..=max_duration.max(2)),
                        gain: rng.gen_range(0..=4),
                        guard: rng.gen_range(0..=3),
                    })
                    .collect();
                units.push(ToyUnit { owner, actions });
            }
        }
        ToyGame {
            units,
            end: GameClock(rng.gen_range(10..=40)),
            target: rng.gen_range(6..=20),
        }
    }

    pub fn initial(&self) -> ToyState {
        ToyState {
            clock: GameClock::ZERO,
            busy: vec![None; self.units.len()],
            score: 0,
        }
    }

    pub fn evaluate<V: Score>(&self, s: &ToyState) -> V {
        score::from_i64(s.score)
    }

    fn ready_units(&self, s: &ToyState, p: Player) -> impl Iterator<Item = usize> + '_ {
        let busy = s.busy.clone();
        (0..self.units.len()).filter(move |&u| self.units[u].owner == p && busy[u].is_none())
    }

    fn advance(&self, s: &mut ToyState, cycles: u64) {
        s.clock = s.clock + cycles;
        for b in s.busy.iter_mut().flatten() {
            b.1 -= cycles;
        }
        let done: Vec<usize> = (0..s.busy.len())
            .filter(|&u| matches!(s.busy[u], Some((_, 0))))
            .collect();
        for &u in &done {
            let (a, _) = s.busy[u].unwrap();
            let owner = self.units[u].owner;
            let guard: i64 = s
                .busy
                .iter()
                .enumerate()
                .filter(|&(v, _)| self.units[v].owner != owner)
                .filter_map(|(v, b)| b.map(|(k, _)| self.units[v].actions[k as usize].guard))
                .sum();
            let delta = self.units[u].actions[a as usize].gain - guard;
            s.score += if owner == Player::Max { delta } else { -delta };
        }
        for u in done {
            s.busy[u] = None;
        }
    }
}

impl GameModel for ToyGame {
    type State = ToyState;
    type Action = ToyOrder;

    fn clock(&self, s: &ToyState) -> GameClock {
        s.clock
    }

    fn can_act(&self, s: &ToyState, p: Player) -> bool {
        !self.winner(s).is_over() && self.ready_units(s, p).next().is_some()
    }

    fn player_actions(&self, s: &ToyState, p: Player) -> Vec<PlayerAction<ToyOrder>> {
        if !self.can_act(s, p) {
            return vec![PlayerAction::empty()];
        }
        let per_unit: Vec<Vec<ToyOrder>> = self
            .ready_units(s, p)
            .map(|u| {
                (0..self.units[u].actions.len())
                    .map(|a| ToyOrder {
                        unit: u as UnitId,
                        action: a as u8,
                    })
                    .collect()
            })
            .collect();
        cross_product(&per_unit)
    }

    fn issue(
        &self,
        s: &ToyState,
        action: &PlayerAction<ToyOrder>,
        p: Player,
    ) -> Result<ToyState, ModelError> {
        let mut next = s.clone();
        for o in action {
            let u = o.unit as usize;
            let unit = self
                .units
                .get(u)
                .ok_or_else(|| ModelError::IllegalAction(format!("no unit {u}")))?;
            if unit.owner != p || next.busy[u].is_some() || o.action as usize >= unit.actions.len()
            {
                return Err(ModelError::IllegalAction(format!("{o:?} for {p}")));
            }
            next.busy[u] = Some((o.action, unit.actions[o.action as usize].duration));
        }
        Ok(next)
    }

    fn simulate(&self, s: &ToyState, until: Until) -> Result<ToyState, ModelError> {
        if let Until::Cycle(t) = until {
            if t < s.clock {
                return Err(ModelError::ClockRegression {
                    now: s.clock,
                    until: t,
                });
            }
        }
        let mut next = s.clone();
        loop {
            if self.winner(&next).is_over()
                || until.reached(next.clock)
                || Player::BOTH.iter().any(|&p| self.can_act(&next, p))
            {
                return Ok(next);
            }
            let soonest = next.busy.iter().flatten().map(|b| b.1).min().unwrap_or(1);
            let mut step = soonest.min(self.end - next.clock);
            if let Until::Cycle(t) = until {
                step = step.min(t - next.clock);
            }
            self.advance(&mut next, step.max(1));
        }
    }

    fn eta(&self, a: &ToyOrder, s: &ToyState) -> Result<u64, ModelError> {
        let u = a.unit as usize;
        match s.busy.get(u) {
            Some(Some((k, left))) if *k == a.action => Ok(*left),
            Some(None) => self.units[u]
                .actions
                .get(a.action as usize)
                .map(|x| x.duration)
                .ok_or_else(|| ModelError::NotApplicable(format!("{a:?}"))),
            _ => Err(ModelError::NotApplicable(format!("{a:?}"))),
        }
    }

    fn winner(&self, s: &ToyState) -> GameOutcome {
        if s.clock < self.end && s.score.abs() < self.target {
            GameOutcome::Ongoing
        } else if s.score > 0 {
            GameOutcome::MaxWins
        } else if s.score < 0 {
            GameOutcome::MinWins
        } else {
            GameOutcome::Draw
        }
    }

    fn shortest_action(&self) -> u64 {
        self.units
            .iter()
            .flat_map(|u| u.actions.iter().map(|a| a.duration))
            .min()
            .unwrap_or(1)
    }

    fn idle_action(&self, s: &ToyState, p: Player) -> PlayerAction<ToyOrder> {
        self.player_actions(s, p).swap_remove(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_players_start_ready() {
        let g = ToyGame::two_by_two();
        let s = g.initial();
        assert!(g.can_act(&s, Player::Max) && g.can_act(&s, Player::Min));
        assert_eq!(g.player_actions(&s, Player::Max).len(), 2);
    }

    #[test]
    fn guard_reduces_gain() {
        let g = ToyGame::two_by_two();
        let s = g.initial();
        let attack = PlayerAction::single(ToyOrder { unit: 0, action: 0 });
        let guard = PlayerAction::single(ToyOrder { unit: 1, action: 1 });
        let s = g.issue(&s, &attack, Player::Max).unwrap();
        let s = g.issue(&s, &guard, Player::Min).unwrap();
        let s = g.simulate(&s, Until::Unbounded).unwrap();
        assert_eq!(s.clock, GameClock(2));
        // Both complete together: MAX scores 3 - 2, MIN scores 1 - 0.
        assert_eq!(s.score, 0);
    }

    #[test]
    fn simulate_respects_cutoff() {
        let g = ToyGame::two_by_two();
        let s = g.initial();
        let s = g
            .issue(&s, &g.idle_action(&s, Player::Max), Player::Max)
            .unwrap();
        let s = g
            .issue(&s, &g.idle_action(&s, Player::Min), Player::Min)
            .unwrap();
        let half = g.simulate(&s, Until::Cycle(GameClock(1))).unwrap();
        assert_eq!(half.clock, GameClock(1));
        assert_eq!(g.eta(&ToyOrder { unit: 0, action: 0 }, &half), Ok(1));
        assert!(g.simulate(&half, Until::Cycle(GameClock(0))).is_err());
    }
}
