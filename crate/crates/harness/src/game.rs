//! The two bundled games behind one interface, plus bot names.

use std::fmt;
use std::str::FromStr;

use battlecity::{BattleCity, Map};
use microrts::{MicroRts, Scenario, ScenarioKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtmm_core::{Evaluator, GameModel, Player, SearchVariant};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::controller::{ClockSpec, Controller, RtmmController, Scripted};
use crate::error::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameId {
    BattleCity,
    MicroRts,
}

impl GameId {
    pub const ALL: [GameId; 2] = [GameId::BattleCity, GameId::MicroRts];

    pub fn name(self) -> &'static str {
        match self {
            GameId::BattleCity => "battlecity",
            GameId::MicroRts => "microrts",
        }
    }

    /// Map or scenario names accepted by this game.
    pub fn maps(self) -> Vec<&'static str> {
        match self {
            GameId::BattleCity => Map::bundled_names().collect(),
            GameId::MicroRts => ScenarioKind::ALL.iter().map(|k| k.name()).collect(),
        }
    }

    /// Cycle limit after which a match is scored as a draw.
    pub fn default_max_cycles(self) -> u64 {
        match self {
            GameId::BattleCity => battlecity::MAX_CYCLES,
            GameId::MicroRts => microrts::MAX_CYCLES,
        }
    }

    pub fn bots(self) -> &'static [BotKind] {
        match self {
            GameId::BattleCity => &[
                BotKind::Random,
                BotKind::Follower,
                BotKind::Rtmm,
                BotKind::Rrtmm,
            ],
            GameId::MicroRts => &[
                BotKind::Stochastic,
                BotKind::Rush,
                BotKind::Rtmm,
                BotKind::Rrtmm,
            ],
        }
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GameId::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown game {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BotKind {
    Random,
    Follower,
    Stochastic,
    Rush,
    Rtmm,
    Rrtmm,
}

impl BotKind {
    pub const ALL: [BotKind; 6] = [
        BotKind::Random,
        BotKind::Follower,
        BotKind::Stochastic,
        BotKind::Rush,
        BotKind::Rtmm,
        BotKind::Rrtmm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BotKind::Random => "random",
            BotKind::Follower => "follower",
            BotKind::Stochastic => "stochastic",
            BotKind::Rush => "rush",
            BotKind::Rtmm => "rtmm",
            BotKind::Rrtmm => "rrtmm",
        }
    }

    /// Display name used in tables.
    pub fn label(self) -> &'static str {
        match self {
            BotKind::Random => "Random",
            BotKind::Follower => "Follower",
            BotKind::Stochastic => "Stochastic",
            BotKind::Rush => "Rush",
            BotKind::Rtmm => "RTMM",
            BotKind::Rrtmm => "RRTMM",
        }
    }
}

impl fmt::Display for BotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BotKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BotKind::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| HarnessError::Config(format!("unknown bot {s:?}")))
    }
}

/// What the harness needs from a game on top of [`GameModel`].
pub trait Game:
    GameModel<Action: Serialize + DeserializeOwned + Send> + Clone + Send + Sync + 'static
{
    const ID: GameId;

    fn load(map: &str) -> Result<Self, HarnessError>;

    fn start(&self) -> Self::State;

    /// Heuristic value from MAX's point of view.
    fn score(&self, s: &Self::State) -> f64;

    /// Scripted bot for `side`, or `None` when `bot` does not play this game.
    fn scripted(&self, bot: BotKind, side: Player, seed: u64) -> Option<Box<dyn Controller<Self>>>;
}

/// Builds any bot for `side`; search bots draw their settings from `clock`.
pub fn controller<G: Game>(
    game: &G,
    bot: BotKind,
    side: Player,
    seed: u64,
    clock: ClockSpec,
) -> Result<Box<dyn Controller<G>>, HarnessError> {
    let variant = match bot {
        BotKind::Rtmm => SearchVariant::AlphaBeta,
        BotKind::Rrtmm => SearchVariant::Randomized,
        _ => {
            return game
                .scripted(bot, side, seed)
                .ok_or_else(|| HarnessError::Config(format!("bot {bot} does not play {}", G::ID)))
        }
    };
    Ok(Box::new(RtmmController::new(
        game.clone(),
        side,
        variant,
        seed,
        jitter(clock, seed),
    )))
}

/// Scales a work clock's cost per expansion by a seed-dependent factor in
/// [0.75, 1.25), standing in for the timing noise of a real machine so that
/// repeated games between deterministic bots are not all identical.
fn jitter(clock: ClockSpec, seed: u64) -> ClockSpec {
    match clock {
        ClockSpec::Work {
            nanos_per_expansion,
        } => ClockSpec::Work {
            nanos_per_expansion: nanos_per_expansion * (768 + (seed >> 32) % 512) / 1024,
        },
        ClockSpec::Wall => ClockSpec::Wall,
    }
}

/// [`Game::score`] as a search evaluator.
#[derive(Clone, Debug)]
pub struct Scorer<G>(pub G);

impl<G: Game> Evaluator<G::State, f64> for Scorer<G> {
    fn evaluate(&self, s: &G::State) -> f64 {
        self.0.score(s)
    }
}

impl Game for BattleCity {
    const ID: GameId = GameId::BattleCity;

    fn load(map: &str) -> Result<Self, HarnessError> {
        Map::by_name(map)
            .map(BattleCity::new)
            .map_err(|e| HarnessError::Config(e.to_string()))
    }

    fn start(&self) -> Self::State {
        self.initial()
    }

    fn score(&self, s: &Self::State) -> f64 {
        self.evaluate(s)
    }

    fn scripted(&self, bot: BotKind, side: Player, seed: u64) -> Option<Box<dyn Controller<Self>>> {
        match bot {
            BotKind::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Some(Box::new(Scripted::new(
                    side,
                    move |g: &BattleCity, s: &_, p| battlecity::random_bot(g, s, p, &mut rng),
                )))
            }
            BotKind::Follower => Some(Box::new(Scripted::new(side, battlecity::follower_bot))),
            _ => None,
        }
    }
}

impl Game for MicroRts {
    const ID: GameId = GameId::MicroRts;

    fn load(map: &str) -> Result<Self, HarnessError> {
        Scenario::by_name(map)
            .map(MicroRts::new)
            .map_err(|e| HarnessError::Config(e.to_string()))
    }

    fn start(&self) -> Self::State {
        self.initial()
    }

    fn score(&self, s: &Self::State) -> f64 {
        self.evaluate(s)
    }

    fn scripted(&self, bot: BotKind, side: Player, seed: u64) -> Option<Box<dyn Controller<Self>>> {
        match bot {
            BotKind::Stochastic => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Some(Box::new(Scripted::new(
                    side,
                    move |g: &MicroRts, s: &_, p| microrts::stochastic_bot(g, s, p, &mut rng),
                )))
            }
            BotKind::Rush => Some(Box::new(Scripted::new(side, microrts::rush_bot))),
            _ => None,
        }
    }
}
