//! Match loop and replay.

use std::time::Duration;

use battlecity::BattleCity;
use microrts::MicroRts;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtmm_core::{GameClock, GameOutcome, Player, PlayerAction, Until};

use crate::controller::Controller;
use crate::error::HarnessError;
use crate::game::{controller, Game, GameId};
use crate::record::{AnyRecord, CycleRecord, EndReason, MatchConfig, MatchRecord, MatchResult};

/// Independent seed number `stream` drawn from `seed`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

/// Plays one match of either game.
pub fn run_match(config: &MatchConfig) -> Result<AnyRecord, HarnessError> {
    config.validate()?;
    Ok(match config.game {
        GameId::BattleCity => AnyRecord::BattleCity(play(&BattleCity::load(&config.map)?, config)?),
        GameId::MicroRts => AnyRecord::MicroRts(play(&MicroRts::load(&config.map)?, config)?),
    })
}

/// Plays one match of `game`.
///
/// Each cycle both controllers see the same state. Their orders are then
/// issued, MAX first, and the game advances by one cycle. A player that can
/// still act after its controller had its say gets an explicit no-action, so
/// time always moves. A controller that errors or gives an illegal order
/// forfeits.
pub fn play<G: Game>(
    game: &G,
    config: &MatchConfig,
) -> Result<MatchRecord<G::Action>, HarnessError> {
    config.validate()?;
    let bots = [
        controller(
            game,
            config.max_bot,
            Player::Max,
            derive_seed(config.seed, 1),
            config.clock,
        )?,
        controller(
            game,
            config.min_bot,
            Player::Min,
            derive_seed(config.seed, 2),
            config.clock,
        )?,
    ];
    play_with(game, config, bots)
}

/// [`play`] with the two controllers supplied by the caller, MAX first. The
/// bot names in `config` are only recorded.
pub fn play_with<G: Game>(
    game: &G,
    config: &MatchConfig,
    mut bots: [Box<dyn Controller<G>>; 2],
) -> Result<MatchRecord<G::Action>, HarnessError> {
    let budget = Duration::from_millis(config.budget_ms);
    let mut s = game.start();
    let mut cycles = Vec::new();
    let forfeit = |player: Player, reason: String, t: GameClock| MatchResult {
        outcome: GameOutcome::won_by(player.opponent()),
        final_cycle: t.cycles(),
        end: EndReason::Forfeit { player, reason },
    };
    let result = loop {
        let t = game.clock(&s);
        let outcome = game.winner(&s);
        if outcome.is_over() {
            break MatchResult {
                outcome,
                final_cycle: t.cycles(),
                end: EndReason::Decided,
            };
        }
        if t.cycles() >= config.max_cycles {
            break MatchResult {
                outcome: GameOutcome::Draw,
                final_cycle: t.cycles(),
                end: EndReason::CycleLimit,
            };
        }
        let mut record = CycleRecord {
            cycle: t.cycles(),
            max: None,
            min: None,
            telemetry: Vec::new(),
        };
        let mut orders: [Option<PlayerAction<G::Action>>; 2] = [None, None];
        let mut failed = None;
        for p in Player::BOTH {
            let bot = &mut bots[p.index()];
            match bot.on_cycle(game, &s, budget) {
                Ok(a) => orders[p.index()] = a,
                Err(e) => {
                    failed = Some((p, e.to_string()));
                    break;
                }
            }
            if let Some(mut tel) = bot.take_telemetry() {
                tel.lookahead_s = tel.lookahead_cycles as f64 / config.cycles_per_second as f64;
                record.telemetry.push(tel);
            }
        }
        if let Some((p, reason)) = failed {
            cycles.push(record);
            break forfeit(p, reason, t);
        }
        for p in Player::BOTH {
            let Some(a) = orders[p.index()].take() else {
                continue;
            };
            match game.issue(&s, &a, p) {
                Ok(next) => s = next,
                Err(e) => {
                    failed = Some((p, e.to_string()));
                    break;
                }
            }
            *slot(&mut record, p) = Some(a);
        }
        if let Some((p, reason)) = failed {
            cycles.push(record);
            break forfeit(p, reason, t);
        }
        for p in Player::BOTH {
            if game.can_act(&s, p) {
                let idle = game.idle_action(&s, p);
                s = game.issue(&s, &idle, p)?;
                let entry = slot(&mut record, p);
                *entry = Some(merge(entry.take(), idle));
            }
        }
        cycles.push(record);
        s = game.simulate(&s, Until::Cycle(t + 1))?;
    };
    Ok(MatchRecord {
        config: config.clone(),
        cycles,
        result,
    })
}

fn slot<A>(record: &mut CycleRecord<A>, p: Player) -> &mut Option<PlayerAction<A>> {
    match p {
        Player::Max => &mut record.max,
        Player::Min => &mut record.min,
    }
}

fn merge<A: rtmm_core::BasicAction>(
    first: Option<PlayerAction<A>>,
    extra: PlayerAction<A>,
) -> PlayerAction<A> {
    match first {
        None => extra,
        Some(a) => {
            let mut all = a.into_vec();
            all.extend(extra.into_vec());
            PlayerAction::new(all).expect("idle orders only cover units left without one")
        }
    }
}

/// Replays a log against the rules and returns the result it leads to.
///
/// A forfeit cannot be re-derived from the rules alone; for such logs the
/// replay checks that every order up to the forfeit cycle is legal and then
/// reports the logged result.
pub fn replay<G: Game>(
    game: &G,
    record: &MatchRecord<G::Action>,
) -> Result<MatchResult, HarnessError> {
    let mut s = game.start();
    let forfeit_at = match &record.result.end {
        EndReason::Forfeit { .. } => Some(record.result.final_cycle),
        _ => None,
    };
    for c in &record.cycles {
        let t = game.clock(&s);
        if t.cycles() != c.cycle {
            return Err(HarnessError::Record(format!(
                "log has cycle {} where the game is at {t}",
                c.cycle
            )));
        }
        if forfeit_at == Some(c.cycle) {
            return Ok(record.result.clone());
        }
        for p in Player::BOTH {
            if let Some(a) = c.action(p) {
                s = game.issue(&s, a, p)?;
            }
        }
        s = game.simulate(&s, Until::Cycle(t + 1))?;
    }
    let t = game.clock(&s).cycles();
    let outcome = game.winner(&s);
    Ok(if outcome.is_over() {
        MatchResult {
            outcome,
            final_cycle: t,
            end: EndReason::Decided,
        }
    } else if t >= record.config.max_cycles {
        MatchResult {
            outcome: GameOutcome::Draw,
            final_cycle: t,
            end: EndReason::CycleLimit,
        }
    } else {
        return Err(HarnessError::Record(format!(
            "log stops at cycle {t} in an open game"
        )));
    })
}

/// Replays a log of either game.
pub fn replay_any(record: &AnyRecord) -> Result<MatchResult, HarnessError> {
    let config = record.config();
    match record {
        AnyRecord::BattleCity(r) => replay(&BattleCity::load(&config.map)?, r),
        AnyRecord::MicroRts(r) => replay(&MicroRts::load(&config.map)?, r),
    }
}
