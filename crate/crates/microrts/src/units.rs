//! Unit types and their numbers.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UnitKind {
    Worker,
    Base,
    Barracks,
    Light,
    Heavy,
    /// Neutral resource source; never owned, never destroyed.
    Mine,
}

/// Cycles of the explicit no-action order.
pub const NO_ACTION_CYCLES: u64 = 10;
/// Cycles a worker spends on either building.
pub const BUILD_CYCLES: u64 = 100;
pub const HARVEST_CYCLES: u64 = 20;
pub const RETURN_CYCLES: u64 = 10;
pub const ATTACK_CYCLES: u64 = 5;

impl UnitKind {
    pub fn cost(self) -> i64 {
        match self {
            UnitKind::Worker => 1,
            UnitKind::Light => 2,
            UnitKind::Heavy => 3,
            UnitKind::Base => 10,
            UnitKind::Barracks => 5,
            UnitKind::Mine => 0,
        }
    }

    pub fn max_hp(self) -> i32 {
        match self {
            UnitKind::Worker => 1,
            UnitKind::Light => 4,
            UnitKind::Heavy => 8,
            UnitKind::Base => 10,
            UnitKind::Barracks => 4,
            UnitKind::Mine => i32::MAX,
        }
    }

    pub fn damage(self) -> i32 {
        match self {
            UnitKind::Worker => 1,
            UnitKind::Light => 2,
            UnitKind::Heavy => 4,
            _ => 0,
        }
    }

    /// Cycles per one-cell move; `None` for buildings and mines.
    pub fn move_cycles(self) -> Option<u64> {
        match self {
            UnitKind::Worker => Some(10),
            UnitKind::Light => Some(8),
            UnitKind::Heavy => Some(12),
            _ => None,
        }
    }

    pub fn can_attack(self) -> bool {
        self.damage() > 0
    }

    /// Unit types this one can train (buildings) or build (workers).
    pub fn produces(self) -> &'static [UnitKind] {
        match self {
            UnitKind::Base => &[UnitKind::Worker],
            UnitKind::Barracks => &[UnitKind::Light, UnitKind::Heavy],
            UnitKind::Worker => &[UnitKind::Base, UnitKind::Barracks],
            _ => &[],
        }
    }

    /// Cycles for this unit to train `what`, or for a worker to build it.
    pub fn produce_cycles(self, what: UnitKind) -> u64 {
        match (self, what) {
            (UnitKind::Worker, _) => BUILD_CYCLES,
            (_, UnitKind::Worker) => 100,
            (_, UnitKind::Light) => 80,
            (_, UnitKind::Heavy) => 120,
            _ => unreachable!("{self:?} cannot produce {what:?}"),
        }
    }

    pub fn letter(self) -> char {
        match self {
            UnitKind::Worker => 'w',
            UnitKind::Base => 'b',
            UnitKind::Barracks => 'k',
            UnitKind::Light => 'l',
            UnitKind::Heavy => 'h',
            UnitKind::Mine => 'm',
        }
    }
}
