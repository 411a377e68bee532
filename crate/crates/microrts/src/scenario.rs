//! Scenario text format and the two bundled scenarios.
//!
//! A scenario is a rectangular grid: `.` empty, `#` wall, `M` mine, and unit
//! letters `w` worker, `b` base, `k` barracks, `l` light, `h` heavy, upper
//! case for MAX and lower case for MIN. An optional first line
//! `resources <max> <min>` sets the starting stockpiles (default 0).

use std::fmt;
use std::str::FromStr;

use rtmm_core::Player;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rules::Pos;
use crate::units::UnitKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    /// 8x8, two light and two heavy units per side, no economy.
    Melee,
    /// 8x8, one worker, one base and 5 resources per side, two mines.
    Full,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 2] = [ScenarioKind::Melee, ScenarioKind::Full];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Melee => "melee",
            ScenarioKind::Full => "full",
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ScenarioError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario has no grid")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown scenario character {ch:?} at row {row}, column {col}")]
    UnknownChar { ch: char, row: usize, col: usize },
    #[error("bad resources line: {0:?}")]
    BadHeader(String),
    #[error("player {0} starts without units")]
    NoUnits(Player),
    #[error("no scenario named {0:?}")]
    UnknownName(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub name: String,
    pub width: usize,
    pub height: usize,
    /// Row-major.
    pub walls: Vec<bool>,
    /// Starting units in reading order; that order fixes their ids.
    pub units: Vec<(Option<Player>, UnitKind, Pos)>,
    pub resources: [i64; 2],
}

impl Scenario {
    pub fn parse(name: &str, text: &str) -> Result<Scenario, ScenarioError> {
        let mut lines = text
            .lines()
            .map(str::trim_end)
            .filter(|l| !l.is_empty())
            .peekable();
        let mut resources = [0; 2];
        if let Some(head) = lines.next_if(|l| l.starts_with("resources")) {
            let nums: Vec<i64> = head
                .split_whitespace()
                .skip(1)
                .map(|x| {
                    x.parse()
                        .map_err(|_| ScenarioError::BadHeader(head.to_string()))
                })
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 || nums.iter().any(|&n| n < 0) {
                return Err(ScenarioError::BadHeader(head.to_string()));
            }
            resources = [nums[0], nums[1]];
        }
        let rows: Vec<&str> = lines.collect();
        let width = rows.first().ok_or(ScenarioError::Empty)?.chars().count();
        let mut walls = Vec::with_capacity(width * rows.len());
        let mut units = Vec::new();
        for (row, line) in rows.iter().enumerate() {
            let found = line.chars().count();
            if found != width {
                return Err(ScenarioError::Ragged {
                    row,
                    expected: width,
                    found,
                });
            }
            for (col, ch) in line.chars().enumerate() {
                walls.push(ch == '#');
                if ch == '#' || ch == '.' {
                    continue;
                }
                let pos = Pos::new(col as i32, row as i32);
                let kind = match ch.to_ascii_lowercase() {
                    'w' => UnitKind::Worker,
                    'b' => UnitKind::Base,
                    'k' => UnitKind::Barracks,
                    'l' => UnitKind::Light,
                    'h' => UnitKind::Heavy,
                    'm' if ch == 'M' => UnitKind::Mine,
                    _ => return Err(ScenarioError::UnknownChar { ch, row, col }),
                };
                let owner = match (kind, ch.is_ascii_uppercase()) {
                    (UnitKind::Mine, _) => None,
                    (_, true) => Some(Player::Max),
                    (_, false) => Some(Player::Min),
                };
                units.push((owner, kind, pos));
            }
        }
        for p in Player::BOTH {
            if !units.iter().any(|u| u.0 == Some(p)) {
                return Err(ScenarioError::NoUnits(p));
            }
        }
        Ok(Scenario {
            name: name.to_string(),
            width,
            height: rows.len(),
            walls,
            units,
            resources,
        })
    }

    pub fn make(kind: ScenarioKind) -> Scenario {
        let text = match kind {
            ScenarioKind::Melee => include_str!("../scenarios/melee.txt"),
            ScenarioKind::Full => include_str!("../scenarios/full.txt"),
        };
        Scenario::parse(kind.name(), text).expect("bundled scenario parses")
    }

    pub fn by_name(name: &str) -> Result<Scenario, ScenarioError> {
        Ok(Scenario::make(name.parse()?))
    }
}
