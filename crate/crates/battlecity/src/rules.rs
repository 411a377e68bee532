//! Game state, orders and the cycle-by-cycle dynamics.
//!
//! Each tank is two units: a move channel (unit `2 * player`) and a fire
//! channel (unit `2 * player + 1`). Within one cycle the game resolves, in
//! order: moves that start this cycle (by ascending unit id), tanks standing
//! on a bullet, new bullets, bullet flight, and finally the channel timers.

use std::sync::Arc;

use rtmm_core::{
    cross_product, score, BasicAction, GameClock, GameModel, GameOutcome, ModelError, Player,
    PlayerAction, Score, UnitId, Until, DEFAULT_SIMULATION_CAP,
};
use serde::{Deserialize, Serialize};

use crate::map::{Cell, Dir, Map, Pos};

pub const MOVE_CYCLES: u64 = 16;
pub const FIRE_CYCLES: u64 = 8;
pub const NO_ACTION_CYCLES: u64 = 8;
/// Magnitude of a decided game in the evaluation, before the time discount.
pub const WIN_SCORE: i64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    Move,
    Fire,
}

impl Channel {
    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BcKind {
    Move(Dir),
    Fire,
    NoMove,
    NoFire,
}

impl BcKind {
    pub const MOVE_OPTIONS: [BcKind; 5] = [
        BcKind::Move(Dir::Up),
        BcKind::Move(Dir::Down),
        BcKind::Move(Dir::Left),
        BcKind::Move(Dir::Right),
        BcKind::NoMove,
    ];
    pub const FIRE_OPTIONS: [BcKind; 2] = [BcKind::Fire, BcKind::NoFire];

    pub fn channel(self) -> Channel {
        match self {
            BcKind::Move(_) | BcKind::NoMove => Channel::Move,
            BcKind::Fire | BcKind::NoFire => Channel::Fire,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BcAction {
    pub unit: UnitId,
    pub kind: BcKind,
}

impl BcAction {
    pub fn new(p: Player, kind: BcKind) -> Self {
        BcAction {
            unit: (p.index() * 2 + kind.channel().slot()) as UnitId,
            kind,
        }
    }

    pub fn player(&self) -> Player {
        if self.unit / 2 == 0 {
            Player::Max
        } else {
            Player::Min
        }
    }
}

impl BasicAction for BcAction {
    fn unit(&self) -> UnitId {
        self.unit
    }
}

/// An order being executed on one channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Busy {
    pub kind: BcKind,
    pub left: u64,
    /// False until the first cycle after the order was issued has run.
    pub started: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tank {
    pub pos: Pos,
    pub facing: Dir,
    pub alive: bool,
    /// Indexed by `Channel`.
    pub channels: [Option<Busy>; 2],
}

impl Tank {
    pub fn ready(&self, c: Channel) -> bool {
        self.alive && self.channels[c.slot()].is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Base {
    pub pos: Pos,
    pub alive: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bullet {
    pub pos: Pos,
    pub dir: Dir,
    pub owner: Player,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BcState {
    pub clock: GameClock,
    /// Terrain; shared between states until a wall is destroyed.
    pub cells: Arc<Vec<Cell>>,
    pub tanks: [Tank; 2],
    pub bases: [Base; 2],
    pub bullets: Vec<Bullet>,
}

impl BcState {
    pub fn tank(&self, p: Player) -> &Tank {
        &self.tanks[p.index()]
    }

    pub fn base(&self, p: Player) -> &Base {
        &self.bases[p.index()]
    }
}

#[derive(Clone, Debug)]
pub struct BattleCity {
    map: Arc<Map>,
    no_action: u64,
    cap: u64,
}

impl BattleCity {
    pub fn new(map: Map) -> Self {
        BattleCity {
            map: Arc::new(map),
            no_action: NO_ACTION_CYCLES,
            cap: DEFAULT_SIMULATION_CAP,
        }
    }

    /// Overrides the duration of the two no-action orders.
    pub fn with_no_action(mut self, cycles: u64) -> Self {
        assert!(cycles > 0, "no-action must take time");
        self.no_action = cycles;
        self
    }

    pub fn with_simulation_cap(mut self, cycles: u64) -> Self {
        self.cap = cycles;
        self
    }

    pub fn map(&self) -> &Map {
        &self.map
    }

    pub fn duration(&self, kind: BcKind) -> u64 {
        match kind {
            BcKind::Move(_) => MOVE_CYCLES,
            BcKind::Fire => FIRE_CYCLES,
            BcKind::NoMove | BcKind::NoFire => self.no_action,
        }
    }

    pub fn initial(&self) -> BcState {
        let m = &self.map;
        let tank = |p: Player| {
            let pos = m.tanks[p.index()];
            let enemy = m.bases[p.opponent().index()];
            Tank {
                pos,
                facing: if enemy.y < pos.y { Dir::Up } else { Dir::Down },
                alive: true,
                channels: [None; 2],
            }
        };
        let base = |p: Player| Base {
            pos: m.bases[p.index()],
            alive: true,
        };
        BcState {
            clock: GameClock::ZERO,
            cells: Arc::new(m.cells.clone()),
            tanks: [tank(Player::Max), tank(Player::Min)],
            bases: [base(Player::Max), base(Player::Min)],
            bullets: Vec::new(),
        }
    }

    pub fn cell(&self, s: &BcState, p: Pos) -> Option<Cell> {
        self.map.in_bounds(p).then(|| s.cells[self.map.index(p)])
    }

    /// Whether a tank may enter `p`, ignoring other tanks.
    pub fn open_ground(&self, s: &BcState, p: Pos) -> bool {
        self.cell(s, p) == Some(Cell::Empty) && s.bases.iter().all(|b| b.pos != p)
    }

    /// Where `p`'s tank ends up if it starts moving `d` now.
    pub fn move_target(&self, s: &BcState, p: Player, d: Dir) -> Pos {
        let tank = s.tank(p);
        let to = tank.pos.step(d);
        let other = s.tank(p.opponent());
        if self.open_ground(s, to) && !(other.alive && other.pos == to) {
            to
        } else {
            tank.pos
        }
    }

    /// Score from MAX's side: decided games are worth `±(WIN_SCORE - time)`,
    /// otherwise the enemy tank's distance to MAX's base minus MAX's tank
    /// distance to the enemy base.
    pub fn evaluate<V: Score>(&self, s: &BcState) -> V {
        let t = s.clock.cycles() as i64;
        let v = match self.winner(s) {
            GameOutcome::MaxWins => WIN_SCORE - t,
            GameOutcome::MinWins => t - WIN_SCORE,
            GameOutcome::Draw => 0,
            GameOutcome::Ongoing => {
                let (max, min) = (Player::Max, Player::Min);
                s.tank(min).pos.manhattan(s.base(max).pos) as i64
                    - s.tank(max).pos.manhattan(s.base(min).pos) as i64
            }
        };
        score::from_i64(v)
    }

    /// Runs exactly one game cycle.
    fn cycle(&self, s: &mut BcState) {
        let mut firing = [false; 2];
        for p in Player::BOTH {
            let i = p.index();
            if !s.tanks[i].alive {
                continue;
            }
            if let Some(b) = s.tanks[i].channels[Channel::Fire.slot()].as_mut() {
                if !b.started {
                    b.started = true;
                    firing[i] = b.kind == BcKind::Fire;
                }
            }
            let Some(b) = s.tanks[i].channels[Channel::Move.slot()] else {
                continue;
            };
            if b.started {
                continue;
            }
            if let BcKind::Move(d) = b.kind {
                s.tanks[i].pos = self.move_target(s, p, d);
                s.tanks[i].facing = d;
            }
            s.tanks[i].channels[Channel::Move.slot()]
                .as_mut()
                .unwrap()
                .started = true;
        }

        for tank in s.tanks.iter_mut().filter(|t| t.alive) {
            let before = s.bullets.len();
            s.bullets.retain(|b| b.pos != tank.pos);
            if s.bullets.len() < before {
                tank.alive = false;
            }
        }

        for p in Player::BOTH {
            let tank = s.tanks[p.index()];
            if firing[p.index()] && tank.alive {
                s.bullets.push(Bullet {
                    pos: tank.pos,
                    dir: tank.facing,
                    owner: p,
                });
            }
        }

        self.fly(s);

        for tank in s.tanks.iter_mut() {
            for ch in tank.channels.iter_mut() {
                if let Some(b) = ch {
                    b.left -= 1;
                    if b.left == 0 {
                        *ch = None;
                    }
                }
            }
        }
        s.clock = s.clock + 1;
    }

    /// Moves every bullet one cell and resolves what it hits.
    fn fly(&self, s: &mut BcState) {
        if s.bullets.is_empty() {
            return;
        }
        let from: Vec<Pos> = s.bullets.iter().map(|b| b.pos).collect();
        let to: Vec<Pos> = s.bullets.iter().map(|b| b.pos.step(b.dir)).collect();
        let n = from.len();
        let mut gone = vec![false; n];
        for i in 0..n {
            match self.cell(s, to[i]) {
                None | Some(Cell::Solid) => gone[i] = true,
                Some(Cell::Brick) => {
                    let k = self.map.index(to[i]);
                    Arc::make_mut(&mut s.cells)[k] = Cell::Empty;
                    gone[i] = true;
                }
                Some(Cell::Empty) => {}
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gone[i] || gone[j] {
                    continue;
                }
                if to[i] == to[j] || (to[i] == from[j] && to[j] == from[i]) {
                    gone[i] = true;
                    gone[j] = true;
                }
            }
        }
        for i in 0..n {
            if gone[i] {
                continue;
            }
            if let Some(t) = s.tanks.iter_mut().find(|t| t.alive && t.pos == to[i]) {
                t.alive = false;
                gone[i] = true;
            } else if let Some(b) = s.bases.iter_mut().find(|b| b.alive && b.pos == to[i]) {
                b.alive = false;
                gone[i] = true;
            }
        }
        let mut k = 0;
        s.bullets.retain_mut(|b| {
            let keep = !gone[k];
            b.pos = to[k];
            k += 1;
            keep
        });
    }

    /// Cycles that can be skipped at once: nothing but timers change while
    /// no bullet is in flight and every order has already taken effect.
    fn quiet_span(&self, s: &BcState) -> u64 {
        if !s.bullets.is_empty() {
            return 1;
        }
        let mut span = u64::MAX;
        for b in s
            .tanks
            .iter()
            .filter(|t| t.alive)
            .flat_map(|t| t.channels.iter().flatten())
        {
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

impl GameModel for BattleCity {
    type State = BcState;
    type Action = BcAction;

    fn clock(&self, s: &BcState) -> GameClock {
        s.clock
    }

    fn can_act(&self, s: &BcState, p: Player) -> bool {
        let t = s.tank(p);
        !self.winner(s).is_over() && (t.ready(Channel::Move) || t.ready(Channel::Fire))
    }

    fn player_actions(&self, s: &BcState, p: Player) -> Vec<PlayerAction<BcAction>> {
        if !self.can_act(s, p) {
            return vec![PlayerAction::empty()];
        }
        let t = s.tank(p);
        let mut per_unit = Vec::with_capacity(2);
        if t.ready(Channel::Move) {
            per_unit.push(
                BcKind::MOVE_OPTIONS
                    .iter()
                    .map(|&k| BcAction::new(p, k))
                    .collect(),
            );
        }
        if t.ready(Channel::Fire) {
            per_unit.push(
                BcKind::FIRE_OPTIONS
                    .iter()
                    .map(|&k| BcAction::new(p, k))
                    .collect(),
            );
        }
        cross_product(&per_unit)
    }

    fn issue(
        &self,
        s: &BcState,
        action: &PlayerAction<BcAction>,
        p: Player,
    ) -> Result<BcState, ModelError> {
        let mut next = s.clone();
        for a in action {
            let c = a.kind.channel();
            if a.player() != p || a.unit as usize % 2 != c.slot() {
                return Err(ModelError::IllegalAction(format!(
                    "{a:?} is not an order for {p}"
                )));
            }
            if self.winner(s).is_over() || !next.tanks[p.index()].ready(c) {
                return Err(ModelError::IllegalAction(format!(
                    "{a:?}: channel not ready"
                )));
            }
            next.tanks[p.index()].channels[c.slot()] = Some(Busy {
                kind: a.kind,
                left: self.duration(a.kind),
                started: false,
            });
        }
        Ok(next)
    }

    fn simulate(&self, s: &BcState, until: Until) -> Result<BcState, ModelError> {
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
                for b in next.tanks.iter_mut().flat_map(|t| t.channels.iter_mut()) {
                    if let Some(x) = b {
                        x.left -= span;
                        if x.left == 0 {
                            *b = None;
                        }
                    }
                }
                next.clock = next.clock + span;
            } else {
                self.cycle(&mut next);
            }
        }
    }

    fn eta(&self, a: &BcAction, s: &BcState) -> Result<u64, ModelError> {
        let t = s.tank(a.player());
        match t.channels[a.kind.channel().slot()] {
            Some(b) if b.kind == a.kind => Ok(b.left),
            None if t.alive => Ok(self.duration(a.kind)),
            _ => Err(ModelError::NotApplicable(format!("{a:?}"))),
        }
    }

    fn winner(&self, s: &BcState) -> GameOutcome {
        let lost = |p: Player| !s.tank(p).alive || !s.base(p).alive;
        match (lost(Player::Max), lost(Player::Min)) {
            (false, false) => GameOutcome::Ongoing,
            (true, true) => GameOutcome::Draw,
            (true, false) => GameOutcome::MinWins,
            (false, true) => GameOutcome::MaxWins,
        }
    }

    fn shortest_action(&self) -> u64 {
        FIRE_CYCLES.min(self.no_action)
    }

    fn idle_action(&self, s: &BcState, p: Player) -> PlayerAction<BcAction> {
        if !self.can_act(s, p) {
            return PlayerAction::empty();
        }
        let t = s.tank(p);
        let mut v = Vec::new();
        if t.ready(Channel::Move) {
            v.push(BcAction::new(p, BcKind::NoMove));
        }
        if t.ready(Channel::Fire) {
            v.push(BcAction::new(p, BcKind::NoFire));
        }
        PlayerAction::new(v).expect("one order per channel")
    }
}
