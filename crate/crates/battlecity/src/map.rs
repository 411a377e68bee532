//! Grid geometry and the text map format.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Empty,
    /// Stops bullets, never destroyed.
    Solid,
    /// Destroyed by the first bullet that hits it.
    Brick,
}

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

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Screen directions; `y` grows downwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dir {
    Up,
    Down,
    Left,
    Right,
}

impl Dir {
    /// Also the tie-break order used by the scripted bots.
    pub const ALL: [Dir; 4] = [Dir::Up, Dir::Down, Dir::Left, Dir::Right];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Dir::Up => (0, -1),
            Dir::Down => (0, 1),
            Dir::Left => (-1, 0),
            Dir::Right => (1, 0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map is empty")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown map character {ch:?} at row {row}, column {col}")]
    UnknownChar { ch: char, row: usize, col: usize },
    #[error("map has no {0:?} marker")]
    Missing(char),
    #[error("map has more than one {0:?} marker")]
    Duplicate(char),
    #[error("no bundled map named {0:?}")]
    UnknownName(String),
}

/// A static layout: terrain plus starting tank and base positions, indexed
/// by `Player::index()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Map {
    pub name: String,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<Cell>,
    pub tanks: [Pos; 2],
    pub bases: [Pos; 2],
}

const BUNDLED: [(&str, &str); 6] = [
    ("corridors", include_str!("../maps/corridors.txt")),
    ("bunkers", include_str!("../maps/bunkers.txt")),
    ("crossfire", include_str!("../maps/crossfire.txt")),
    ("labyrinth", include_str!("../maps/labyrinth.txt")),
    ("fortress", include_str!("../maps/fortress.txt")),
    ("open", include_str!("../maps/open.txt")),
];

impl Map {
    /// Parses the text format: `#` solid wall, `%` destructible wall, `.`
    /// empty, `A`/`a` MAX tank/base, `B`/`b` MIN tank/base.
    pub fn parse(name: &str, text: &str) -> Result<Map, MapError> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim_end)
            .filter(|l| !l.is_empty())
            .collect();
        let width = rows.first().ok_or(MapError::Empty)?.chars().count();
        let mut cells = Vec::with_capacity(width * rows.len());
        let mut markers: [Option<Pos>; 4] = [None; 4];
        for (row, line) in rows.iter().enumerate() {
            let found = line.chars().count();
            if found != width {
                return Err(MapError::Ragged {
                    row,
                    expected: width,
                    found,
                });
            }
            for (col, ch) in line.chars().enumerate() {
                let cell = match ch {
                    '.' | 'A' | 'a' | 'B' | 'b' => Cell::Empty,
                    '#' => Cell::Solid,
                    '%' => Cell::Brick,
                    _ => return Err(MapError::UnknownChar { ch, row, col }),
                };
                if let Some(k) = "AaBb".find(ch) {
                    if markers[k].is_some() {
                        return Err(MapError::Duplicate(ch));
                    }
                    markers[k] = Some(Pos::new(col as i32, row as i32));
                }
                cells.push(cell);
            }
        }
        let get = |k: usize| markers[k].ok_or(MapError::Missing("AaBb".as_bytes()[k] as char));
        Ok(Map {
            name: name.to_string(),
            width,
            height: rows.len(),
            cells,
            tanks: [get(0)?, get(2)?],
            bases: [get(1)?, get(3)?],
        })
    }

    /// The six maps shipped with the crate.
    pub fn bundled() -> Vec<Map> {
        BUNDLED
            .iter()
            .map(|(n, t)| Map::parse(n, t).expect("bundled map parses"))
            .collect()
    }

    pub fn bundled_names() -> impl Iterator<Item = &'static str> {
        BUNDLED.iter().map(|(n, _)| *n)
    }

    pub fn by_name(name: &str) -> Result<Map, MapError> {
        let (n, t) = BUNDLED
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| MapError::UnknownName(name.to_string()))?;
        Map::parse(n, t)
    }

    pub fn in_bounds(&self, p: Pos) -> bool {
        p.x >= 0 && p.y >= 0 && (p.x as usize) < self.width && (p.y as usize) < self.height
    }

    /// Row-major cell index; `p` must be in bounds.
    pub fn index(&self, p: Pos) -> usize {
        p.y as usize * self.width + p.x as usize
    }
}
