//! Oracles shared by the integration tests. Nothing here calls into the
//! library's enumeration or binomial code.

#![allow(dead_code)]

/// p(n) for 0..=max by Euler's pentagonal-number recurrence.
pub fn partition_counts_pentagonal(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for m in 1..=max {
        let mut total = 0i64;
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                total += sign * p[m - g2];
            }
            k += 1;
        }
        p[m] = total;
    }
    p.into_iter().map(|v| v as u64).collect()
}

/// Rows 0..=max of Pascal's triangle by the additive recurrence.
pub fn pascal(max: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for m in 1..=max {
        let prev = &rows[m - 1];
        let mut row = vec![1u128; m + 1];
        for k in 1..m {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}
