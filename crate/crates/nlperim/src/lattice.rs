//! Polyominoes on the integer lattice: canonical forms, strip extraction,
//! shape classification, and the canonical shape families (squares,
//! quasi-squares, rectangles, each with an optional protuberance).

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Center of a unit square on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }
}

/// Strip direction. Horizontal strips live inside rows, vertical strips
/// inside columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Maximal run of contiguous cells within one row or column.
///
/// `anchor` is the lexicographically least covered cell; the run extends
/// `length` cells along the orientation axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strip {
    pub orientation: Orientation,
    pub anchor: Cell,
    pub length: u32,
}

impl Strip {
    /// Cells covered by the strip, in axis order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (dx, dy) = match self.orientation {
            Orientation::Horizontal => (1, 0),
            Orientation::Vertical => (0, 1),
        };
        (0..self.length as i32).map(move |k| Cell::new(self.anchor.x + k * dx, self.anchor.y + k * dy))
    }
}

/// Mutually exclusive shape classes.
///
/// `Concave` means some bounding-box row or column meets the polyomino in
/// two or more strips. A convex polyomino is `CrossConvex` when it contains
/// both a full-height column and a full-width row of its bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeClass {
    Disconnected,
    Concave,
    ConvexNotCross,
    CrossConvex,
}

/// Inclusive bounding box of a polyomino.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub min_x: i32,
    pub max_x: i32,
    pub min_y: i32,
    pub max_y: i32,
}

impl BoundingBox {
    pub fn width(&self) -> u32 {
        (self.max_x - self.min_x + 1) as u32
    }
    pub fn height(&self) -> u32 {
        (self.max_y - self.min_y + 1) as u32
    }
}

/// A finite nonempty set of lattice cells, stored sorted and in canonical
/// translation (min x = min y = 0). Not necessarily connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Polyomino {
    cells: Vec<Cell>,
}

impl Polyomino {
    /// Builds a polyomino from arbitrary cells; duplicates are merged and the
    /// result is translated so that min x = min y = 0.
    pub fn new<I: IntoIterator<Item = Cell>>(cells: I) -> Result<Self> {
        let mut v: Vec<Cell> = cells.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptyPolyomino);
        }
        v.sort_unstable();
        v.dedup();
        let min_x = v.iter().map(|c| c.x).min().unwrap();
        let min_y = v.iter().map(|c| c.y).min().unwrap();
        for c in &mut v {
            c.x -= min_x;
            c.y -= min_y;
        }
        v.sort_unstable();
        Ok(Polyomino { cells: v })
    }

    pub fn from_coords<I: IntoIterator<Item = (i32, i32)>>(coords: I) -> Result<Self> {
        Self::new(coords.into_iter().map(|(x, y)| Cell::new(x, y)))
    }

    pub fn area(&self) -> u32 {
        self.cells.len() as u32
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn cell_set(&self) -> HashSet<Cell> {
        self.cells.iter().copied().collect()
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let min_x = self.cells.iter().map(|c| c.x).min().unwrap();
        let max_x = self.cells.iter().map(|c| c.x).max().unwrap();
        let min_y = self.cells.iter().map(|c| c.y).min().unwrap();
        let max_y = self.cells.iter().map(|c| c.y).max().unwrap();
        BoundingBox { min_x, max_x, min_y, max_y }
    }

    /// Canonical translate of an arbitrary cell set. The constructor already
    /// canonicalizes, so this is idempotent.
    pub fn canonicalize(&self) -> Polyomino {
        self.clone()
    }

    /// Maximal strips grouped by row (horizontal) or column (vertical), in
    /// lexicographic order of (line, start).
    pub fn strips(&self, orientation: Orientation) -> Vec<Strip> {
        let mut keyed: Vec<(i32, i32)> = self
            .cells
            .iter()
            .map(|c| match orientation {
                Orientation::Horizontal => (c.y, c.x),
                Orientation::Vertical => (c.x, c.y),
            })
            .collect();
        keyed.sort_unstable();
        let mut out = Vec::new();
        let mut run_start: Option<(i32, i32)> = None;
        let mut run_len = 0u32;
        let mut prev: Option<(i32, i32)> = None;
        for (line, pos) in keyed {
            match prev {
                Some((pl, pp)) if pl == line && pos == pp + 1 => {
                    run_len += 1;
                }
                _ => {
                    if let Some((sl, sp)) = run_start {
                        out.push(make_strip(orientation, sl, sp, run_len));
                    }
                    run_start = Some((line, pos));
                    run_len = 1;
                }
            }
            prev = Some((line, pos));
        }
        if let Some((sl, sp)) = run_start {
            out.push(make_strip(orientation, sl, sp, run_len));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let set = self.cell_set();
        let mut seen = HashSet::with_capacity(self.cells.len());
        let mut stack = vec![self.cells[0]];
        seen.insert(self.cells[0]);
        while let Some(c) = stack.pop() {
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let n = Cell::new(c.x + dx, c.y + dy);
                if set.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == self.cells.len()
    }

    /// Classifies into one of the four mutually exclusive shape classes.
    pub fn classify(&self) -> ShapeClass {
        if !self.is_connected() {
            return ShapeClass::Disconnected;
        }
        let bb = self.bounding_box();
        let h = self.strips(Orientation::Horizontal);
        let v = self.strips(Orientation::Vertical);
        let rows = bb.height() as usize;
        let cols = bb.width() as usize;
        if h.len() > rows || v.len() > cols {
            return ShapeClass::Concave;
        }
        // convex: exactly one strip per occupied line; cross-convex needs a
        // full-width row and a full-height column
        let full_row = h.iter().any(|s| s.length == bb.width());
        let full_col = v.iter().any(|s| s.length == bb.height());
        if full_row && full_col {
            ShapeClass::CrossConvex
        } else {
            ShapeClass::ConvexNotCross
        }
    }

    /// Orbit under the 8 symmetries of the square, each canonicalized,
    /// deduplicated and sorted.
    pub fn symmetries(&self) -> Vec<Polyomino> {
        let mut out: Vec<Polyomino> = TRANSFORMS
            .iter()
            .map(|f| {
                Polyomino::new(self.cells.iter().map(|c| {
                    let (x, y) = f(c.x, c.y);
                    Cell::new(x, y)
                }))
                .expect("orbit of a nonempty polyomino is nonempty")
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Least element of the dihedral orbit; equal for congruent polyominoes.
    pub fn congruence_class(&self) -> Polyomino {
        self.symmetries().into_iter().next().unwrap()
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Vec<Cell> {
        self.cells.iter().map(|c| Cell::new(c.x + dx, c.y + dy)).collect()
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_grid_string(self))
    }
}

type Xform = fn(i32, i32) -> (i32, i32);
static TRANSFORMS: [Xform; 8] = [
    |x, y| (x, y),
    |x, y| (-x, y),
    |x, y| (x, -y),
    |x, y| (-x, -y),
    |x, y| (y, x),
    |x, y| (-y, x),
    |x, y| (y, -x),
    |x, y| (-y, -x),
];

fn make_strip(orientation: Orientation, line: i32, start: i32, length: u32) -> Strip {
    let anchor = match orientation {
        Orientation::Horizontal => Cell::new(start, line),
        Orientation::Vertical => Cell::new(line, start),
    };
    Strip { orientation, anchor, length }
}

/// Which side of the rectangle carries the protuberance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProtuberanceSide {
    /// Along a side of length `a` (the short side); the protuberance extends
    /// the `b` dimension.
    Shorter,
    /// Along a side of length `b`; the protuberance extends the `a` dimension.
    Longer,
}

/// Canonical shape family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeFamily {
    Square(u32),
    /// Sides l and l+1.
    QuasiSquare(u32),
    /// Sides a <= b.
    Rect(u32, u32),
}

/// Symbolic description of a rectangle-based shape with an optional flush
/// 1-wide protuberance of length `protuberance` on the given side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub family: ShapeFamily,
    pub protuberance: u32,
    pub side: ProtuberanceSide,
}

impl ShapeSpec {
    pub fn square(l: u32, k: u32) -> Self {
        ShapeSpec { family: ShapeFamily::Square(l), protuberance: k, side: ProtuberanceSide::Shorter }
    }

    pub fn quasi_square(l: u32, k: u32) -> Self {
        ShapeSpec { family: ShapeFamily::QuasiSquare(l), protuberance: k, side: ProtuberanceSide::Shorter }
    }

    pub fn rect(a: u32, b: u32, k: u32, side: ProtuberanceSide) -> Self {
        ShapeSpec { family: ShapeFamily::Rect(a, b), protuberance: k, side }
    }

    /// Rectangle sides (a, b) with a <= b.
    pub fn sides(&self) -> (u32, u32) {
        match self.family {
            ShapeFamily::Square(l) => (l, l),
            ShapeFamily::QuasiSquare(l) => (l, l + 1),
            ShapeFamily::Rect(a, b) => (a, b),
        }
    }

    pub fn area(&self) -> u32 {
        let (a, b) = self.sides();
        a * b + self.protuberance
    }

    /// Classical perimeter: 2(a + b) plus 2 when a protuberance is present.
    pub fn classical_perimeter(&self) -> u32 {
        let (a, b) = self.sides();
        2 * (a + b) + if self.protuberance > 0 { 2 } else { 0 }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.sides();
        if a < 1 || b < a {
            return Err(Error::InvalidShapeSpec(format!("sides ({a}, {b}) must satisfy 1 <= a <= b")));
        }
        let k = self.protuberance;
        if k > 0 {
            let limit = match self.side {
                ProtuberanceSide::Shorter => a,
                ProtuberanceSide::Longer => b,
            };
            if k > limit - 1 {
                return Err(Error::InvalidShapeSpec(format!(
                    "protuberance {k} too long for side of length {limit}"
                )));
            }
        }
        Ok(())
    }

    /// Canonical polyomino: corner-flush protuberance (offset 0).
    pub fn realize(&self) -> Result<Polyomino> {
        self.realize_with_offset(0)
    }

    /// The nonlocal perimeter is invariant under the placement offset of the
    /// protuberance along its side; the offset is exposed so this can be
    /// checked numerically.
    pub fn realize_with_offset(&self, offset: u32) -> Result<Polyomino> {
        self.validate()?;
        let (a, b) = self.sides();
        let k = self.protuberance;
        // height a (rows), width b (columns)
        let mut cells = Vec::with_capacity((a * b + k) as usize);
        for y in 0..a as i32 {
            for x in 0..b as i32 {
                cells.push(Cell::new(x, y));
            }
        }
        if k > 0 {
            let (side_len, extent) = match self.side {
                ProtuberanceSide::Shorter => (a, k),
                ProtuberanceSide::Longer => (b, k),
            };
            if offset + extent > side_len {
                return Err(Error::InvalidShapeSpec(format!(
                    "offset {offset} pushes the protuberance past the side of length {side_len}"
                )));
            }
            match self.side {
                ProtuberanceSide::Shorter => {
                    // new column east of the body
                    for j in 0..k as i32 {
                        cells.push(Cell::new(b as i32, offset as i32 + j));
                    }
                }
                ProtuberanceSide::Longer => {
                    // new row north of the body
                    for j in 0..k as i32 {
                        cells.push(Cell::new(offset as i32 + j, a as i32));
                    }
                }
            }
        }
        Polyomino::new(cells)
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.sides();
        let name = match self.family {
            ShapeFamily::Square(l) => format!("square({l})"),
            ShapeFamily::QuasiSquare(l) => format!("quasi-square({l}x{})", l + 1),
            ShapeFamily::Rect(..) => format!("rect({a}x{b})"),
        };
        if self.protuberance > 0 {
            let side = match self.side {
                ProtuberanceSide::Shorter => "short",
                ProtuberanceSide::Longer => "long",
            };
            write!(f, "{name}+{}p/{side}", self.protuberance)
        } else {
            f.write_str(&name)
        }
    }
}

/// Reads a polyomino from text. Two formats, auto-detected by the first
/// non-blank character: '#' or '.' selects the ASCII grid ('#' = cell,
/// rows top to bottom), anything else selects one "x y" pair per line.
pub fn parse_polyomino(input: &str) -> Result<Polyomino> {
    let first = input.chars().find(|c| !c.is_whitespace());
    match first {
        None => Err(Error::EmptyPolyomino),
        Some('#') | Some('.') => parse_grid(input),
        Some(_) => parse_pairs(input),
    }
}

fn parse_grid(input: &str) -> Result<Polyomino> {
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    let nrows = lines.len() as i32;
    let mut cells = Vec::new();
    for (row, line) in lines.iter().enumerate() {
        for (col, ch) in line.trim_end().chars().enumerate() {
            match ch {
                '#' => cells.push(Cell::new(col as i32, nrows - 1 - row as i32)),
                '.' | ' ' => {}
                other => return Err(Error::Parse(format!("unexpected grid character {other:?}"))),
            }
        }
    }
    Polyomino::new(cells)
}

fn parse_pairs(input: &str) -> Result<Polyomino> {
    let mut cells = Vec::new();
    for (ln, line) in input.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut it = t.split_whitespace();
        let x = it
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing x", ln + 1)))?
            .parse::<i32>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
        let y = it
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing y", ln + 1)))?
            .parse::<i32>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("line {}: trailing tokens", ln + 1)));
        }
        cells.push(Cell::new(x, y));
    }
    Polyomino::new(cells)
}

/// One "x y" pair per line, sorted.
pub fn to_coord_string(p: &Polyomino) -> String {
    let mut s = String::new();
    for c in p.cells() {
        s.push_str(&format!("{} {}\n", c.x, c.y));
    }
    s
}

/// ASCII grid, rows top to bottom.
pub fn to_grid_string(p: &Polyomino) -> String {
    let bb = p.bounding_box();
    let mut s = String::new();
    for y in (bb.min_y..=bb.max_y).rev() {
        for x in bb.min_x..=bb.max_x {
            s.push(if p.contains(Cell::new(x, y)) { '#' } else { '.' });
        }
        s.push('\n');
    }
    s
}
