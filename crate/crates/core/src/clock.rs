//! Time sources for budgeted search.
//!
//! The search reads the clock before every iteration and once every
//! [`CHECK_INTERVAL`] node expansions. It also reports the work it did through
//! [`SearchClock::charge`], which lets a clock derive time from work instead of
//! from the wall.

use std::cell::Cell;
use std::time::{Duration, Instant};

/// Node expansions between two deadline checks inside the recursion.
pub const CHECK_INTERVAL: u64 = 256;

pub trait SearchClock {
    fn now(&self) -> Duration;

    /// Called with the number of node expansions done since the last charge.
    fn charge(&self, _expansions: u64) {}
}

impl<C: SearchClock + ?Sized> SearchClock for &C {
    fn now(&self) -> Duration {
        (**self).now()
    }

    fn charge(&self, expansions: u64) {
        (**self).charge(expansions)
    }
}

/// Real elapsed time.
#[derive(Clone, Debug)]
pub struct WallClock {
    origin: Instant,
}

impl WallClock {
    pub fn new() -> Self {
        WallClock {
            origin: Instant::now(),
        }
    }
}

impl Default for WallClock {
    fn default() -> Self {
        Self::new()
    }
}

impl SearchClock for WallClock {
    fn now(&self) -> Duration {
        self.origin.elapsed()
    }
}

/// Deterministic clock where time is a fixed cost per node expansion.
///
/// Searches driven by this clock are reproducible bit for bit, which the
/// match harness relies on for replayable tournaments.
#[derive(Clone, Debug)]
pub struct WorkClock {
    nanos_per_expansion: u64,
    spent: Cell<u64>,
}

impl WorkClock {
    pub fn new(nanos_per_expansion: u64) -> Self {
        WorkClock {
            nanos_per_expansion,
            spent: Cell::new(0),
        }
    }

    pub fn expansions(&self) -> u64 {
        self.spent.get()
    }
}

impl SearchClock for WorkClock {
    fn now(&self) -> Duration {
        Duration::from_nanos(self.spent.get().saturating_mul(self.nanos_per_expansion))
    }

    fn charge(&self, expansions: u64) {
        self.spent.set(self.spent.get() + expansions);
    }
}

/// Mock clock that advances by a fixed tick on every read and ignores work.
#[derive(Clone, Debug)]
pub struct TickClock {
    tick: Duration,
    reads: Cell<u32>,
}

impl TickClock {
    pub fn new(tick: Duration) -> Self {
        TickClock {
            tick,
            reads: Cell::new(0),
        }
    }
}

impl SearchClock for TickClock {
    fn now(&self) -> Duration {
        let n = self.reads.get();
        self.reads.set(n + 1);
        self.tick * n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn work_clock_counts_expansions() {
        let c = WorkClock::new(1_000);
        assert_eq!(c.now(), Duration::ZERO);
        c.charge(256);
        c.charge(44);
        assert_eq!(c.expansions(), 300);
        assert_eq!(c.now(), Duration::from_micros(300));
    }

    #[test]
    fn tick_clock_advances_per_read() {
        let c = TickClock::new(Duration::from_millis(1));
        assert_eq!(c.now(), Duration::ZERO);
        assert_eq!(c.now(), Duration::from_millis(1));
        c.charge(10_000);
        assert_eq!(c.now(), Duration::from_millis(2));
    }
}
