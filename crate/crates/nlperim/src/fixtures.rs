//! Reference shapes shared by the test suites.

use crate::lattice::Polyomino;

/// Area-25 convex polyomino with classical perimeter 24 whose combined strip
/// profile is {1, 3x5, 5x3, 6x2, 7}: one length-7 strip, two of length 6,
/// three of length 5, five of length 3 and one single cell. Its nonlocal
/// perimeter therefore expands as
/// 24 z(L,1) + 22 (z(L,2)+z(L,3)) + 12 (z(L,4)+z(L,5)) + 6 z(L,6) + 2 z(L,7).
pub fn area25_sample() -> Polyomino {
    let mut cells = Vec::new();
    for x in 0..3 {
        for y in 0..5 {
            cells.push((x, y));
        }
    }
    for x in 3..6 {
        for y in 2..5 {
            cells.push((x, y));
        }
    }
    cells.push((6, 3));
    Polyomino::from_coords(cells).unwrap()
}

/// Cross-convex staircase with single-chain nested rows [5, 4, 2]; the
/// row-alignment passes of the cross-convex reduction preserve its column
/// multiset, hence its nonlocal perimeter.
pub fn staircase_sample() -> Polyomino {
    let mut cells = Vec::new();
    for x in 0..5 {
        cells.push((x, 0));
    }
    for x in 0..4 {
        cells.push((x, 1));
    }
    for x in 1..3 {
        cells.push((x, 2));
    }
    Polyomino::from_coords(cells).unwrap()
}
