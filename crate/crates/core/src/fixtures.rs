//! Small reference rectangles shared by tests, benches and the CLI suite.

use crate::latin::LatinRectangle;

/// The 3x7 rectangle built from the seven-point plane with the cycle
/// `(1 3 5 7 2 4 6)` and starting line `{1, 2, 4}`, shifted to 0-based symbols.
pub fn fano_3x7() -> LatinRectangle {
    const ONE_BASED: [[u32; 7]; 3] = [
        [1, 3, 5, 7, 2, 4, 6],
        [2, 4, 6, 1, 3, 5, 7],
        [4, 6, 1, 3, 5, 7, 2],
    ];
    let grid: Vec<Vec<u32>> = ONE_BASED
        .iter()
        .map(|r| r.iter().map(|&s| s - 1).collect())
        .collect();
    LatinRectangle::from_grid(&grid).expect("fixture is latin")
}

/// `[[0,1,2],[1,2,0]]`: every pair of columns shares a symbol.
pub fn triangle_2x3() -> LatinRectangle {
    LatinRectangle::from_grid(&[vec![0, 1, 2], vec![1, 2, 0]]).expect("fixture is latin")
}
