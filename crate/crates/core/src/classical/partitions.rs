//! Brute-force set-partition counting, used as ground truth for the
//! Stirling recurrences. Deliberately shares no code with them.

use crate::error::{Error, Result};

pub const MAX_DISTINGUISHED: usize = 3;
pub const MAX_ELEMENTS: usize = 11;

/// Number of partitions of `{1, …, n + r}` into `k + r` nonempty blocks in
/// which the elements `1, …, r` all land in different blocks. `r = 0` is
/// plain S_2(n, k).
///
/// Every such partition is visited once, so the enumeration is bounded to
/// `r ≤ 3` and `n + r ≤ 11`.
pub fn oracle_partitions(n: usize, k: usize, r: usize) -> Result<u64> {
    if r > MAX_DISTINGUISHED || n + r > MAX_ELEMENTS {
        return Err(Error::BoundExceeded(format!(
            "partition enumeration needs r <= {MAX_DISTINGUISHED} and n + r <= {MAX_ELEMENTS}, got n = {n}, r = {r}"
        )));
    }
    let mut count = 0u64;
    // Restricted growth string: the distinguished elements open blocks
    // 0..r, the free ones join an open block or open the next one.
    let mut blocks = vec![0usize; n];
    enumerate(&mut blocks, 0, r, k + r, &mut count);
    Ok(count)
}

fn enumerate(assignment: &mut [usize], pos: usize, open: usize, target: usize, count: &mut u64) {
    let remaining = assignment.len() - pos;
    if open > target || open + remaining < target {
        return;
    }
    if remaining == 0 {
        *count += 1;
        return;
    }
    for block in 0..=open {
        assignment[pos] = block;
        let next_open = if block == open { open + 1 } else { open };
        enumerate(assignment, pos + 1, next_open, target, count);
    }
}
