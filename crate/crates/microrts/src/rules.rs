//! State, orders and dynamics.
//!
//! Every order runs for a fixed number of cycles. Moves take effect in the
//! first cycle, and so does paying for a building or a trained unit (refunded
//! if the producer dies or the target cell is taken). Attacks, harvesting,
//! returning resources and the appearance of a produced unit all happen on
//! completion. Several orders starting or completing in the same
//! cycle are handled in ascending unit id.

use std::sync::Arc;

use rtmm_core::{
    cross_product, score, BasicAction, GameClock, GameModel, GameOutcome, ModelError, Player,
    PlayerAction, Score, UnitId, Until, DEFAULT_SIMULATION_CAP,
};
use serde::{Deserialize, Serialize};

use crate::scenario::Scenario;
use crate::units::*;

/// Magnitude of a decided game in the evaluation, before the time discount.
pub const WIN_SCORE: i64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Pos { x, y }
    }

    pub fn step(self, d: Dir) -> Pos {
        let (dx, dy) = d.delta();
        Pos::new(self.x + dx, self.y + dy)
    }

    pub fn manhattan(self, o: Pos) -> u32 {
        self.x.abs_diff(o.x) + self.y.abs_diff(o.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::Up, Dir::Down, Dir::Left, Dir::Right];

    /// Direction order used when listing `p`'s options: `ALL` for MAX, its
    /// point reflection for MIN, so mirrored positions list mirrored orders.
    pub fn order(p: Player) -> [Dir; 4] {
        match p {
            Player::Max => Dir::ALL,
            Player::Min => [Dir::Down, Dir::Up, Dir::Right, Dir::Left],
        }
    }

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::Up => (0, -1),
            Dir::Down => (0, 1),
            Dir::Left => (-1, 0),
            Dir::Right => (1, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MrKind {
    Move(Dir),
    /// Hits whatever enemy occupies the cell when the attack completes.
    Attack(Dir),
    Harvest(Dir),
    Return(Dir),
    /// A worker putting up a building.
    Build(UnitKind, Dir),
    /// A building training a unit.
    Train(UnitKind, Dir),
    NoAction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MrAction {
    pub unit: UnitId,
    pub kind: MrKind,
}

impl BasicAction for MrAction {
    fn unit(&self) -> UnitId {
        self.unit
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Busy {
    pub kind: MrKind,
    pub left: u64,
    pub started: bool,
    /// Production only: whether the cost was paid when the order started.
    pub funded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    pub id: UnitId,
    pub owner: Option<Player>,
    pub kind: UnitKind,
    pub pos: Pos,
    pub hp: i32,
    pub carry: i64,
    pub busy: Option<Busy>,
}

impl Unit {
    pub fn idle(&self) -> bool {
        self.owner.is_some() && self.busy.is_none()
    }
}

/// Game state. Units are kept in ascending id order. The per-player ledgers
/// satisfy `resources + carried + spent + lost == start + harvested`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MrState {
    pub clock: GameClock,
    pub units: Vec<Unit>,
    pub resources: [i64; 2],
    /// Paid for production, net of refunds.
    pub spent: [i64; 2],
    pub harvested: [i64; 2],
    /// Carried by workers when they died.
    pub lost: [i64; 2],
    pub next_id: UnitId,
}

impl MrState {
    pub fn unit(&self, id: UnitId) -> Option<&Unit> {
        self.units
            .binary_search_by_key(&id, |u| u.id)
            .ok()
            .map(|i| &self.units[i])
    }

    pub fn unit_at(&self, p: Pos) -> Option<&Unit> {
        self.units.iter().find(|u| u.pos == p)
    }

    pub fn owned(&self, p: Player) -> impl Iterator<Item = &Unit> + '_ {
        self.units.iter().filter(move |u| u.owner == Some(p))
    }

    /// Resources held by workers of `p`.
    pub fn carried(&self, p: Player) -> i64 {
        self.owned(p).map(|u| u.carry).sum()
    }
}

#[derive(Clone, Debug)]
pub struct MicroRts {
    scenario: Arc<Scenario>,
    no_action: u64,
    cap: u64,
}

impl MicroRts {
    pub fn new(scenario: Scenario) -> Self {
        MicroRts {
            scenario: Arc::new(scenario),
            no_action: NO_ACTION_CYCLES,
            cap: DEFAULT_SIMULATION_CAP,
        }
    }

    pub fn with_no_action(mut self, cycles: u64) -> Self {
        assert!(cycles > 0, "no-action must take time");
        self.no_action = cycles;
        self
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn initial(&self) -> MrState {
        let sc = &self.scenario;
        let units = sc
            .units
            .iter()
            .enumerate()
            .map(|(i, &(owner, kind, pos))| Unit {
                id: i as UnitId,
                owner,
                kind,
                pos,
                hp: kind.max_hp(),
                carry: 0,
                busy: None,
            })
            .collect::<Vec<_>>();
        MrState {
            clock: GameClock::ZERO,
            next_id: units.len() as UnitId,
            units,
            resources: sc.resources,
            spent: [0; 2],
            harvested: [0; 2],
            lost: [0; 2],
        }
    }

    pub fn in_bounds(&self, p: Pos) -> bool {
        let sc = &self.scenario;
        p.x >= 0 && p.y >= 0 && (p.x as usize) < sc.width && (p.y as usize) < sc.height
    }

    /// In bounds, not a wall, not occupied.
    pub fn free(&self, s: &MrState, p: Pos) -> bool {
        self.in_bounds(p)
            && !self.scenario.walls[p.y as usize * self.scenario.width + p.x as usize]
            && s.unit_at(p).is_none()
    }

    pub fn duration(&self, u: &Unit, kind: MrKind) -> u64 {
        match kind {
            MrKind::Move(_) => u.kind.move_cycles().unwrap_or(self.no_action),
            MrKind::Attack(_) => ATTACK_CYCLES,
            MrKind::Harvest(_) => HARVEST_CYCLES,
            MrKind::Return(_) => RETURN_CYCLES,
            MrKind::Build(k, _) | MrKind::Train(k, _) => u.kind.produce_cycles(k),
            MrKind::NoAction => self.no_action,
        }
    }

    /// Orders `u` could start now, no-action last, directions in
    /// `Dir::order(owner)`. Empty when `u` is busy or a mine.
    pub fn unit_actions(&self, s: &MrState, u: &Unit) -> Vec<MrKind> {
        let Some(owner) = u.owner else {
            return Vec::new();
        };
        if u.busy.is_some() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let dirs = Dir::order(owner);
        let free: Vec<(Dir, bool)> = dirs
            .iter()
            .map(|&d| (d, self.free(s, u.pos.step(d))))
            .collect();
        if u.kind.move_cycles().is_some() {
            out.extend(free.iter().filter(|f| f.1).map(|f| MrKind::Move(f.0)));
        }
        for d in dirs {
            let Some(t) = s.unit_at(u.pos.step(d)) else {
                continue;
            };
            if u.kind.can_attack() && t.owner == Some(owner.opponent()) {
                out.push(MrKind::Attack(d));
            }
            if u.kind == UnitKind::Worker {
                if t.kind == UnitKind::Mine && u.carry == 0 {
                    out.push(MrKind::Harvest(d));
                }
                if t.kind == UnitKind::Base && t.owner == Some(owner) && u.carry > 0 {
                    out.push(MrKind::Return(d));
                }
            }
        }
        for &k in u.kind.produces() {
            if s.resources[owner.index()] < k.cost() {
                continue;
            }
            for &(d, open) in &free {
                if open {
                    out.push(if u.kind == UnitKind::Worker {
                        MrKind::Build(k, d)
                    } else {
                        MrKind::Train(k, d)
                    });
                }
            }
        }
        out.push(MrKind::NoAction);
        out
    }

    /// Unit values of MAX minus those of MIN; decided games are worth
    /// `±(WIN_SCORE - time)`.
    pub fn evaluate<V: Score>(&self, s: &MrState) -> V {
        let t = s.clock.cycles() as i64;
        let v = match self.winner(s) {
            GameOutcome::MaxWins => WIN_SCORE - t,
            GameOutcome::MinWins => t - WIN_SCORE,
            GameOutcome::Draw => 0,
            GameOutcome::Ongoing => {
                let worth = |p| s.owned(p).map(|u| u.kind.cost()).sum::<i64>();
                worth(Player::Max) - worth(Player::Min)
            }
        };
        score::from_i64(v)
    }

    fn cycle(&self, s: &mut MrState) {
        for i in 0..s.units.len() {
            let u = s.units[i];
            let Some(mut b) = u.busy else { continue };
            if b.started {
                continue;
            }
            b.started = true;
            match b.kind {
                MrKind::Move(d) => {
                    let to = u.pos.step(d);
                    if self.free(s, to) {
                        s.units[i].pos = to;
                    }
                }
                MrKind::Build(k, _) | MrKind::Train(k, _) => {
                    let p = u.owner.expect("owned producer").index();
                    b.funded = s.resources[p] >= k.cost();
                    if b.funded {
                        s.resources[p] -= k.cost();
                        s.spent[p] += k.cost();
                    }
                }
                _ => {}
            }
            s.units[i].busy = Some(b);
        }

        for u in s.units.iter_mut() {
            if let Some(b) = u.busy.as_mut() {
                b.left -= 1;
            }
        }

        for i in 0..s.units.len() {
            let u = s.units[i];
            let Some(b) = u.busy.filter(|b| b.left == 0) else {
                continue;
            };
            s.units[i].busy = None;
            let owner = u.owner.expect("only owned units take orders");
            let p = owner.index();
            match b.kind {
                MrKind::Attack(d) => {
                    let at = u.pos.step(d);
                    if let Some(t) = s
                        .units
                        .iter_mut()
                        .find(|t| t.pos == at && t.owner == Some(owner.opponent()))
                    {
                        t.hp -= u.kind.damage();
                    }
                }
                MrKind::Harvest(d) => {
                    let mine = s
                        .unit_at(u.pos.step(d))
                        .is_some_and(|t| t.kind == UnitKind::Mine);
                    if mine && u.carry == 0 {
                        s.units[i].carry = 1;
                        s.harvested[p] += 1;
                    }
                }
                MrKind::Return(d) => {
                    let base = s
                        .unit_at(u.pos.step(d))
                        .is_some_and(|t| t.kind == UnitKind::Base && t.owner == u.owner);
                    if base {
                        s.resources[p] += u.carry;
                        s.units[i].carry = 0;
                    }
                }
                MrKind::Build(k, d) | MrKind::Train(k, d) if b.funded => {
                    let at = u.pos.step(d);
                    if self.free(s, at) {
                        let id = s.next_id;
                        s.next_id += 1;
                        s.units.push(Unit {
                            id,
                            owner: u.owner,
                            kind: k,
                            pos: at,
                            hp: k.max_hp(),
                            carry: 0,
                            busy: None,
                        });
                    } else {
                        s.resources[p] += k.cost();
                        s.spent[p] -= k.cost();
                    }
                }
                _ => {}
            }
        }

        let (lost, resources, spent) = (&mut s.lost, &mut s.resources, &mut s.spent);
        s.units.retain(|u| {
            if u.hp > 0 {
                return true;
            }
            if let Some(o) = u.owner {
                lost[o.index()] += u.carry;
                // Production dies with its producer and the reservation is released.
                if let Some(Busy {
                    kind: MrKind::Build(k, _) | MrKind::Train(k, _),
                    funded: true,
                    ..
                }) = u.busy
                {
                    resources[o.index()] += k.cost();
                    spent[o.index()] -= k.cost();
                }
            }
            false
        });
        s.clock = s.clock + 1;
    }

    /// Cycles in which only timers run: no order is about to start.
    fn quiet_span(&self, s: &MrState) -> u64 {
        let mut span = u64::MAX;
        for b in s.units.iter().filter_map(|u| u.busy) {
            if !b.started {
                return 1;
            }
            span = span.min(b.left);
        }
        if span == u64::MAX {
            1
        } else {
            span
        }
    }
}

impl GameModel for MicroRts {
    type State = MrState;
    type Action = MrAction;

    fn clock(&self, s: &MrState) -> GameClock {
        s.clock
    }

    fn can_act(&self, s: &MrState, p: Player) -> bool {
        !self.winner(s).is_over() && s.owned(p).any(|u| u.busy.is_none())
    }

    fn player_actions(&self, s: &MrState, p: Player) -> Vec<PlayerAction<MrAction>> {
        if !self.can_act(s, p) {
            return vec![PlayerAction::empty()];
        }
        let per_unit: Vec<Vec<MrAction>> = s
            .owned(p)
            .filter(|u| u.busy.is_none())
            .map(|u| {
                self.unit_actions(s, u)
                    .into_iter()
                    .map(|kind| MrAction { unit: u.id, kind })
                    .collect()
            })
            .collect();
        cross_product(&per_unit)
    }

    fn issue(
        &self,
        s: &MrState,
        action: &PlayerAction<MrAction>,
        p: Player,
    ) -> Result<MrState, ModelError> {
        if !action.is_empty() && self.winner(s).is_over() {
            return Err(ModelError::IllegalAction("the game is over".into()));
        }
        let mut next = s.clone();
        for a in action {
            let i = next
                .units
                .binary_search_by_key(&a.unit, |u| u.id)
                .map_err(|_| ModelError::IllegalAction(format!("no unit {}", a.unit)))?;
            let u = next.units[i];
            if u.owner != Some(p) || !self.unit_actions(s, &u).contains(&a.kind) {
                return Err(ModelError::IllegalAction(format!("{a:?} for {p}")));
            }
            next.units[i].busy = Some(Busy {
                kind: a.kind,
                left: self.duration(&u, a.kind),
                started: false,
                funded: false,
            });
        }
        Ok(next)
    }

    fn simulate(&self, s: &MrState, until: Until) -> Result<MrState, ModelError> {
        if let Until::Cycle(t) = until {
            if t < s.clock {
                return Err(ModelError::ClockRegression {
                    now: s.clock,
                    until: t,
                });
            }
        }
        let start = s.clock;
        let mut next = s.clone();
        loop {
            if self.winner(&next).is_over()
                || until.reached(next.clock)
                || Player::BOTH.iter().any(|&p| self.can_act(&next, p))
            {
                return Ok(next);
            }
            if next.clock - start >= self.cap {
                return Err(ModelError::SimulationCap(self.cap));
            }
            let mut span = self.quiet_span(&next).min(self.cap - (next.clock - start));
            if let Until::Cycle(t) = until {
                span = span.min(t - next.clock);
            }
            if span > 1 {
                for b in next.units.iter_mut().filter_map(|u| u.busy.as_mut()) {
                    b.left -= span - 1;
                }
                next.clock = next.clock + (span - 1);
            }
            self.cycle(&mut next);
        }
    }

    fn eta(&self, a: &MrAction, s: &MrState) -> Result<u64, ModelError> {
        let u = s
            .unit(a.unit)
            .ok_or_else(|| ModelError::NotApplicable(format!("no unit {}", a.unit)))?;
        match u.busy {
            Some(b) if b.kind == a.kind => Ok(b.left),
            None if self.unit_actions(s, u).contains(&a.kind) => Ok(self.duration(u, a.kind)),
            _ => Err(ModelError::NotApplicable(format!("{a:?}"))),
        }
    }

    fn winner(&self, s: &MrState) -> GameOutcome {
        let alive = |p| s.owned(p).next().is_some();
        match (alive(Player::Max), alive(Player::Min)) {
            (true, true) => GameOutcome::Ongoing,
            (false, false) => GameOutcome::Draw,
            (true, false) => GameOutcome::MaxWins,
            (false, true) => GameOutcome::MinWins,
        }
    }

    fn shortest_action(&self) -> u64 {
        ATTACK_CYCLES.min(self.no_action)
    }

    fn idle_action(&self, s: &MrState, p: Player) -> PlayerAction<MrAction> {
        if !self.can_act(s, p) {
            return PlayerAction::empty();
        }
        PlayerAction::new(
            s.owned(p)
                .filter(|u| u.busy.is_none())
                .map(|u| MrAction {
                    unit: u.id,
                    kind: MrKind::NoAction,
                })
                .collect(),
        )
        .expect("one order per unit")
    }
}
