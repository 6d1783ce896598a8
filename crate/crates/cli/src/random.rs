use rand::seq::SliceRandom;
use rand::Rng;
use rainbow_core::LatinRectangle;

/// Random `rows x cols` latin rectangle over symbols `0..palette`, filling
/// cells row-major with a uniformly chosen legal symbol.
///
/// A cell has at most `rows + cols - 2` conflicting neighbours, so any
/// `palette >= rows + cols - 1` always succeeds.
pub fn random_latin<R: Rng>(rng: &mut R, rows: usize, cols: usize, palette: u32) -> LatinRectangle {
    assert!(rows >= 1 && cols >= 1, "empty rectangle");
    assert!(palette as usize + 1 >= rows + cols, "palette too small to fill greedily");
    let mut cells = vec![0u32; rows * cols];
    let mut legal = Vec::with_capacity(palette as usize);
    for i in 0..rows {
        for j in 0..cols {
            legal.clear();
            legal.extend((0..palette).filter(|&s| {
                (0..j).all(|c| cells[i * cols + c] != s) && (0..i).all(|r| cells[r * cols + j] != s)
            }));
            cells[i * cols + j] = *legal.choose(rng).expect("palette large enough");
        }
    }
    LatinRectangle::from_cells(rows, cols, cells).expect("filled with legal symbols")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_and_latin() {
        let a = random_latin(&mut ChaCha8Rng::seed_from_u64(7), 4, 6, 9);
        let b = random_latin(&mut ChaCha8Rng::seed_from_u64(7), 4, 6, 9);
        assert_eq!(a, b);
        assert!(a.max_symbol() < 9);
    }
}
