//! Exhaustive search for all biracks of order at most three.

use crate::birack::{first_violation, BirackTables, FiniteBirack};
use crate::error::Error;

/// Largest order [`enumerate_biracks`] accepts; order 3 already means 9! candidates.
pub const MAX_ENUMERATION_ORDER: usize = 3;

/// Rearranges `v` into the next permutation in lexicographic order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&e| e > v[i]).expect("a larger element exists past the pivot");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All biracks on `{0, …, n-1}`.
///
/// Candidates are the bijections of `X × X`, written as the flattened table
/// `(x, y) ↦ B₁(x,y)·n + B₂(x,y)`, visited in lexicographic order of that table.
pub fn enumerate_biracks(n: usize) -> Result<Vec<FiniteBirack>, Error> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeTooLarge(n));
    }
    let mut table: Vec<usize> = (0..n * n).collect();
    let mut out = Vec::new();
    loop {
        let tables = BirackTables::from_fn(n, |x, y| {
            let v = table[x * n + y];
            (v / n, v % n)
        })?;
        if first_violation(&tables).is_none() {
            out.push(FiniteBirack::from_tables(tables)?);
        }
        if !next_permutation(&mut table) {
            break;
        }
    }
    Ok(out)
}
