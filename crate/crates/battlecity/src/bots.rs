//! The two scripted opponents: Random and Follower.
//!
//! Both fire whenever their fire channel is ready, unless their own base sits
//! on the bullet's path (checked from where the tank will be and which way it
//! will face once this cycle's move has started).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::Rng;
use rtmm_core::{Player, PlayerAction};

use crate::map::{Cell, Dir, Pos};
use crate::rules::{BattleCity, BcAction, BcKind, BcState, Channel};

/// True when a bullet leaving `from` towards `facing` would reach `p`'s own
/// base before any wall or the edge of the map.
pub fn base_in_line_of_fire(
    game: &BattleCity,
    s: &BcState,
    p: Player,
    from: Pos,
    facing: Dir,
) -> bool {
    let base = s.base(p);
    let mut at = from.step(facing);
    while game.cell(s, at) == Some(Cell::Empty) {
        if base.alive && at == base.pos {
            return true;
        }
        at = at.step(facing);
    }
    false
}

fn with_fire(
    game: &BattleCity,
    s: &BcState,
    p: Player,
    mv: Option<Dir>,
    mut orders: Vec<BcAction>,
) -> PlayerAction<BcAction> {
    let tank = s.tank(p);
    if tank.ready(Channel::Fire) {
        let (pos, facing) = match mv {
            Some(d) if tank.ready(Channel::Move) => (game.move_target(s, p, d), d),
            _ => (tank.pos, tank.facing),
        };
        let kind = if base_in_line_of_fire(game, s, p, pos, facing) {
            BcKind::NoFire
        } else {
            BcKind::Fire
        };
        orders.push(BcAction::new(p, kind));
    }
    PlayerAction::new(orders).expect("one order per channel")
}

/// Moves in a uniformly random direction and fires when it is safe.
pub fn random_bot<R: Rng + ?Sized>(
    game: &BattleCity,
    s: &BcState,
    p: Player,
    rng: &mut R,
) -> PlayerAction<BcAction> {
    let tank = s.tank(p);
    let mut orders = Vec::with_capacity(2);
    let mut mv = None;
    if tank.ready(Channel::Move) {
        let d = Dir::ALL[rng.gen_range(0..4)];
        orders.push(BcAction::new(p, BcKind::Move(d)));
        mv = Some(d);
    }
    with_fire(game, s, p, mv, orders)
}

/// Heads along a shortest path to whichever enemy target (tank or base) is
/// closer by path length, and fires when it is safe. Destructible walls count
/// as obstacles; when no target is reachable the tank stays put.
pub fn follower_bot(game: &BattleCity, s: &BcState, p: Player) -> PlayerAction<BcAction> {
    let tank = s.tank(p);
    let mut orders = Vec::with_capacity(2);
    let mut mv = None;
    if tank.ready(Channel::Move) {
        let kind = match follow_step(game, s, p) {
            Some(d) => {
                mv = Some(d);
                BcKind::Move(d)
            }
            None => BcKind::NoMove,
        };
        orders.push(BcAction::new(p, kind));
    }
    with_fire(game, s, p, mv, orders)
}

/// First step of the follower's path, if any target is reachable.
pub fn follow_step(game: &BattleCity, s: &BcState, p: Player) -> Option<Dir> {
    let from = s.tank(p).pos;
    let enemy = p.opponent();
    let targets = [s.tank(enemy).pos, s.base(enemy).pos];
    let (goal, dist) = targets
        .iter()
        .filter_map(|&g| astar(game, s, from, g).map(|d| (g, d)))
        .min_by_key(|&(_, d)| d)?;
    Dir::ALL.into_iter().find(|&d| {
        let next = from.step(d);
        next == goal
            || (passable(game, s, next, goal) && astar(game, s, next, goal) == Some(dist - 1))
    })
}

/// Tanks are ignored when pathing; bases only count as the goal.
fn passable(game: &BattleCity, s: &BcState, at: Pos, goal: Pos) -> bool {
    at == goal || (game.cell(s, at) == Some(Cell::Empty) && s.bases.iter().all(|b| b.pos != at))
}

/// Length of a shortest 4-connected path from `from` to `goal`, with
/// Manhattan distance as the heuristic.
pub fn astar(game: &BattleCity, s: &BcState, from: Pos, goal: Pos) -> Option<u32> {
    let map = game.map();
    let mut best = vec![u32::MAX; map.width * map.height];
    let mut open = BinaryHeap::new();
    best[map.index(from)] = 0;
    open.push(Reverse((from.manhattan(goal), 0u32, from)));
    while let Some(Reverse((_, g, at))) = open.pop() {
        if at == goal {
            return Some(g);
        }
        if g > best[map.index(at)] {
            continue;
        }
        for d in Dir::ALL {
            let next = at.step(d);
            if !map.in_bounds(next) || !passable(game, s, next, goal) {
                continue;
            }
            let k = map.index(next);
            if g + 1 < best[k] {
                best[k] = g + 1;
                open.push(Reverse((g + 1 + next.manhattan(goal), g + 1, next)));
            }
        }
    }
    None
}
