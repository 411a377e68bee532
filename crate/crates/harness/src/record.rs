//! Match configuration and the line-delimited JSON match log.

use battlecity::BcAction;
use microrts::MrAction;
use rtmm_core::{GameOutcome, Player, PlayerAction};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::controller::{ClockSpec, Telemetry};
use crate::error::HarnessError;
use crate::game::{BotKind, GameId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchConfig {
    pub game: GameId,
    /// Map (BattleCity) or scenario (microRTS) name.
    pub map: String,
    pub max_bot: BotKind,
    pub min_bot: BotKind,
    /// The match is a draw once this many cycles have been played.
    pub max_cycles: u64,
    /// Thinking time per cycle for search bots.
    pub budget_ms: u64,
    pub seed: u64,
    /// Only used to express game time in seconds.
    pub cycles_per_second: u64,
    pub clock: ClockSpec,
}

impl MatchConfig {
    pub fn new(game: GameId, map: &str, max_bot: BotKind, min_bot: BotKind, seed: u64) -> Self {
        MatchConfig {
            game,
            map: map.to_string(),
            max_bot,
            min_bot,
            max_cycles: game.default_max_cycles(),
            budget_ms: 15,
            seed,
            cycles_per_second: rtmm_core::CYCLES_PER_SECOND,
            clock: ClockSpec::default(),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.max_cycles == 0 {
            return bad("max_cycles must be positive".into());
        }
        if self.cycles_per_second == 0 {
            return bad("cycles_per_second must be positive".into());
        }
        if !self.game.maps().contains(&self.map.as_str()) {
            return bad(format!(
                "{} has no map {:?}; known: {}",
                self.game,
                self.map,
                self.game.maps().join(", ")
            ));
        }
        for bot in [self.max_bot, self.min_bot] {
            if !self.game.bots().contains(&bot) {
                return bad(format!("bot {bot} does not play {}", self.game));
            }
        }
        Ok(())
    }
}

/// Everything issued in one cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "A: DeserializeOwned"))]
pub struct CycleRecord<A> {
    pub cycle: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<PlayerAction<A>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<PlayerAction<A>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub telemetry: Vec<Telemetry>,
}

impl<A> CycleRecord<A> {
    pub fn action(&self, p: Player) -> Option<&PlayerAction<A>> {
        match p {
            Player::Max => self.max.as_ref(),
            Player::Min => self.min.as_ref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EndReason {
    /// The rules decided the game.
    Decided,
    /// Cycle limit reached.
    CycleLimit,
    /// A controller failed or gave an illegal order.
    Forfeit { player: Player, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub outcome: GameOutcome,
    /// Game time when the match stopped.
    pub final_cycle: u64,
    pub end: EndReason,
}

/// Full log of a match: its configuration, every cycle, and the result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "A: DeserializeOwned"))]
pub struct MatchRecord<A> {
    pub config: MatchConfig,
    pub cycles: Vec<CycleRecord<A>>,
    pub result: MatchResult,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
#[serde(bound(deserialize = "A: DeserializeOwned"))]
enum Line<A> {
    Header(MatchConfig),
    Cycle(CycleRecord<A>),
    Footer(MatchResult),
}

impl<A: Clone + Serialize + DeserializeOwned> MatchRecord<A> {
    /// One JSON object per line: a header, one line per cycle, a footer.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let mut push = |line: &Line<A>| {
            out.push_str(&serde_json::to_string(line).expect("records serialize"));
            out.push('\n');
        };
        push(&Line::Header(self.config.clone()));
        for c in &self.cycles {
            push(&Line::Cycle(c.clone()));
        }
        push(&Line::Footer(self.result.clone()));
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self, HarnessError> {
        let mut config = None;
        let mut cycles = Vec::new();
        let mut result = None;
        for (n, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let parsed: Line<A> = serde_json::from_str(line)
                .map_err(|e| HarnessError::Record(format!("line {}: {e}", n + 1)))?;
            match parsed {
                Line::Header(c) if config.is_none() => config = Some(c),
                Line::Cycle(c) if config.is_some() && result.is_none() => cycles.push(c),
                Line::Footer(r) if config.is_some() && result.is_none() => result = Some(r),
                _ => {
                    return Err(HarnessError::Record(format!(
                        "line {}: out of place",
                        n + 1
                    )))
                }
            }
        }
        Ok(MatchRecord {
            config: config.ok_or_else(|| HarnessError::Record("missing header".into()))?,
            cycles,
            result: result.ok_or_else(|| HarnessError::Record("missing footer".into()))?,
        })
    }

    /// Telemetry of every search in the match, in order.
    pub fn telemetry(&self) -> impl Iterator<Item = &Telemetry> {
        self.cycles.iter().flat_map(|c| &c.telemetry)
    }
}

/// A match log of either game.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyRecord {
    BattleCity(MatchRecord<BcAction>),
    MicroRts(MatchRecord<MrAction>),
}

impl AnyRecord {
    pub fn config(&self) -> &MatchConfig {
        match self {
            AnyRecord::BattleCity(r) => &r.config,
            AnyRecord::MicroRts(r) => &r.config,
        }
    }

    pub fn result(&self) -> &MatchResult {
        match self {
            AnyRecord::BattleCity(r) => &r.result,
            AnyRecord::MicroRts(r) => &r.result,
        }
    }

    pub fn telemetry(&self) -> Vec<Telemetry> {
        match self {
            AnyRecord::BattleCity(r) => r.telemetry().cloned().collect(),
            AnyRecord::MicroRts(r) => r.telemetry().cloned().collect(),
        }
    }

    pub fn to_jsonl(&self) -> String {
        match self {
            AnyRecord::BattleCity(r) => r.to_jsonl(),
            AnyRecord::MicroRts(r) => r.to_jsonl(),
        }
    }

    /// Parses a log, picking the action type from the header's game.
    pub fn from_jsonl(text: &str) -> Result<Self, HarnessError> {
        #[derive(Deserialize)]
        struct Peek {
            game: GameId,
        }
        let first = text
            .lines()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| HarnessError::Record("empty record".into()))?;
        let peek: Peek = serde_json::from_str(first)
            .map_err(|e| HarnessError::Record(format!("line 1: {e}")))?;
        Ok(match peek.game {
            GameId::BattleCity => AnyRecord::BattleCity(MatchRecord::from_jsonl(text)?),
            GameId::MicroRts => AnyRecord::MicroRts(MatchRecord::from_jsonl(text)?),
        })
    }

    pub fn summary(&self) -> MatchSummary {
        MatchSummary {
            config: self.config().clone(),
            result: self.result().clone(),
            telemetry: self.telemetry(),
        }
    }
}

/// A match without its per-cycle log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchSummary {
    pub config: MatchConfig,
    pub result: MatchResult,
    pub telemetry: Vec<Telemetry>,
}
