//! Published tables checked by `--expect-paper`.

/// Rooted catalog: number of members by size of `H`, sizes `0..=14`.
pub const ROOTED_SIZES: [usize; 15] = [1, 0, 1, 2, 6, 14, 42, 107, 190, 194, 136, 68, 27, 4, 2];
pub const ROOTED_TOTAL: usize = 794;
pub const ROOTED_MAXIMAL: usize = 48;

/// Mavericks by order, orders `9..=19`.
pub const MAVERICK_ORDERS: [usize; 11] = [13, 629, 1304, 1237, 775, 408, 221, 107, 42, 13, 3];
pub const MAVERICK_TOTAL: usize = 4752;

/// Twisted mavericks by order, orders `10..=19`.
pub const TWISTED_ORDERS: [usize; 10] = [48, 133, 220, 236, 210, 162, 96, 40, 13, 3];
pub const TWISTED_TOTAL: usize = 1161;

/// Compares a histogram indexed from 0 against a table starting at `first`.
pub fn histogram_matches(histogram: &[usize], first: usize, table: &[usize]) -> bool {
    let mut expected = vec![0; first];
    expected.extend_from_slice(table);
    let trimmed: Vec<usize> = {
        let mut h = histogram.to_vec();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    };
    trimmed == expected
}
