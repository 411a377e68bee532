//! Scripted opponents: Stochastic and Rush.

use rand::Rng;
use rtmm_core::{Player, PlayerAction};

use crate::rules::{Dir, MicroRts, MrAction, MrKind, MrState, Pos, Unit};
use crate::units::UnitKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Attack,
    /// Training or building.
    Produce,
    /// A move that brings the unit closer to the nearest enemy.
    Advance,
    Other,
}

/// Relative weights the stochastic bot gives each non-empty category.
pub const STOCHASTIC_WEIGHTS: [(Category, u32); 4] = [
    (Category::Attack, 5),
    (Category::Produce, 3),
    (Category::Advance, 2),
    (Category::Other, 1),
];

fn nearest_enemy(s: &MrState, u: &Unit) -> Option<Pos> {
    let foe = u.owner?.opponent();
    s.owned(foe)
        .min_by_key(|e| (e.pos.manhattan(u.pos), e.id))
        .map(|e| e.pos)
}

pub fn categorize(s: &MrState, u: &Unit, kind: MrKind) -> Category {
    match kind {
        MrKind::Attack(_) => Category::Attack,
        MrKind::Build(..) | MrKind::Train(..) => Category::Produce,
        MrKind::Move(d) => match nearest_enemy(s, u) {
            Some(e) if u.pos.step(d).manhattan(e) < u.pos.manhattan(e) => Category::Advance,
            _ => Category::Other,
        },
        _ => Category::Other,
    }
}

/// Per idle unit: picks a category by weight among those with at least one
/// available order, then an order uniformly within it.
pub fn stochastic_bot<R: Rng + ?Sized>(
    game: &MicroRts,
    s: &MrState,
    p: Player,
    rng: &mut R,
) -> PlayerAction<MrAction> {
    let mut orders = Vec::new();
    for u in s.owned(p).filter(|u| u.idle()) {
        let options = game.unit_actions(s, u);
        let groups: Vec<(u32, Vec<MrKind>)> = STOCHASTIC_WEIGHTS
            .iter()
            .map(|&(c, w)| {
                (
                    w,
                    options
                        .iter()
                        .copied()
                        .filter(|&k| categorize(s, u, k) == c)
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|(_, g)| !g.is_empty())
            .collect();
        let total: u32 = groups.iter().map(|g| g.0).sum();
        let mut roll = rng.gen_range(0..total);
        let group = groups
            .iter()
            .find(|(w, _)| {
                if roll < *w {
                    true
                } else {
                    roll -= w;
                    false
                }
            })
            .map(|g| &g.1)
            .expect("roll falls in some group");
        let kind = group[rng.gen_range(0..group.len())];
        orders.push(MrAction { unit: u.id, kind });
    }
    PlayerAction::new(orders).expect("one order per unit")
}

/// Free neighbour that brings `u` strictly closer to `target`, first in
/// up/down/left/right order among the best.
fn step_toward(game: &MicroRts, s: &MrState, u: &Unit, target: Pos) -> Option<MrKind> {
    let here = u.pos.manhattan(target);
    Dir::ALL
        .iter()
        .filter(|&&d| game.free(s, u.pos.step(d)))
        .map(|&d| (u.pos.step(d).manhattan(target), d))
        .filter(|&(dist, _)| dist < here)
        .min_by_key(|&(dist, _)| dist)
        .map(|(_, d)| MrKind::Move(d))
}

fn nearest(s: &MrState, u: &Unit, what: impl Fn(&Unit) -> bool) -> Option<Pos> {
    s.units
        .iter()
        .filter(|t| what(t))
        .min_by_key(|t| (t.pos.manhattan(u.pos), t.id))
        .map(|t| t.pos)
}

/// Light rush: the worker gathers, a barracks goes up as soon as it is
/// affordable, the barracks keeps training light units, and every combat
/// unit walks at the nearest enemy and hits it. Workers hit adjacent enemies
/// first. A base only trains a worker when the side has none.
pub fn rush_bot(game: &MicroRts, s: &MrState, p: Player) -> PlayerAction<MrAction> {
    let mut budget = s.resources[p.index()];
    let mut barracks_planned = s.owned(p).any(|u| {
        u.kind == UnitKind::Barracks
            || matches!(u.busy, Some(b) if matches!(b.kind, MrKind::Build(UnitKind::Barracks, _)))
    });
    let has_worker = s.owned(p).any(|u| {
        u.kind == UnitKind::Worker
            || matches!(u.busy, Some(b) if matches!(b.kind, MrKind::Train(UnitKind::Worker, _)))
    });
    let mut orders = Vec::new();
    for u in s.owned(p).filter(|u| u.idle()) {
        let options = game.unit_actions(s, u);
        let first = |f: &dyn Fn(&MrKind) -> bool| options.iter().copied().find(|k| f(k));
        let kind = match u.kind {
            UnitKind::Worker if first(&|k| matches!(k, MrKind::Attack(_))).is_some() => {
                first(&|k| matches!(k, MrKind::Attack(_)))
            }
            UnitKind::Worker if u.carry > 0 => {
                first(&|k| matches!(k, MrKind::Return(_))).or_else(|| {
                    nearest(s, u, |t| t.kind == UnitKind::Base && t.owner == Some(p))
                        .and_then(|b| step_toward(game, s, u, b))
                })
            }
            UnitKind::Worker => {
                let build = (!barracks_planned && budget >= UnitKind::Barracks.cost())
                    .then(|| first(&|k| matches!(k, MrKind::Build(UnitKind::Barracks, _))))
                    .flatten();
                if build.is_some() {
                    barracks_planned = true;
                    budget -= UnitKind::Barracks.cost();
                    build
                } else {
                    first(&|k| matches!(k, MrKind::Harvest(_))).or_else(|| {
                        nearest(s, u, |t| t.kind == UnitKind::Mine)
                            .and_then(|m| step_toward(game, s, u, m))
                    })
                }
            }
            UnitKind::Barracks if budget >= UnitKind::Light.cost() => {
                let train = first(&|k| matches!(k, MrKind::Train(UnitKind::Light, _)));
                if train.is_some() {
                    budget -= UnitKind::Light.cost();
                }
                train
            }
            UnitKind::Base if !has_worker && budget >= UnitKind::Worker.cost() => {
                let train = first(&|k| matches!(k, MrKind::Train(UnitKind::Worker, _)));
                if train.is_some() {
                    budget -= UnitKind::Worker.cost();
                }
                train
            }
            UnitKind::Light | UnitKind::Heavy => first(&|k| matches!(k, MrKind::Attack(_)))
                .or_else(|| nearest_enemy(s, u).and_then(|e| step_toward(game, s, u, e))),
            _ => None,
        };
        orders.push(MrAction {
            unit: u.id,
            kind: kind.unwrap_or(MrKind::NoAction),
        });
    }
    PlayerAction::new(orders).expect("one order per unit")
}
