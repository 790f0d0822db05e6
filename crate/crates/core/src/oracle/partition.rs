use crate::error::{invalid, Result};

/// Checks that `(a, b)` is a 3-PARTITION instance: `3m` items, each strictly
/// between `b/4` and `b/2`, summing to `m * b`. Returns `m`.
pub fn check_three_partition(a: &[u64], b: u64) -> Result<usize> {
    if b == 0 {
        return Err(invalid("3-PARTITION: target B must be positive"));
    }
    if a.is_empty() || !a.len().is_multiple_of(3) {
        return Err(invalid(format!(
            "3-PARTITION: need 3m items with m >= 1, got {}",
            a.len()
        )));
    }
    let m = a.len() / 3;
    if let Some((i, &x)) = a.iter().enumerate().find(|(_, &x)| 4 * x <= b || 2 * x >= b) {
        return Err(invalid(format!(
            "3-PARTITION: item {i} = {x} is not strictly between B/4 and B/2 for B = {b}"
        )));
    }
    let sum: u64 = a.iter().sum();
    if sum != m as u64 * b {
        return Err(invalid(format!(
            "3-PARTITION: items sum to {sum}, expected m * B = {}",
            m as u64 * b
        )));
    }
    Ok(m)
}

/// Splits `a` into triples of sum `b`, reported as index triples in ascending
/// order of their smallest index. `None` when no such split exists.
pub fn three_partition_solve(a: &[u64], b: u64) -> Result<Option<Vec<[usize; 3]>>> {
    let m = check_three_partition(a, b)?;
    let mut used = vec![false; a.len()];
    let mut triples = Vec::with_capacity(m);
    Ok(fill(a, b, &mut used, &mut triples).then_some(triples))
}

fn fill(a: &[u64], b: u64, used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    let Some(i) = used.iter().position(|u| !u) else {
        return true;
    };
    used[i] = true;
    let mut tried_j = Vec::new();
    for j in i + 1..a.len() {
        if used[j] || a[i] + a[j] >= b || tried_j.contains(&a[j]) {
            continue;
        }
        tried_j.push(a[j]);
        used[j] = true;
        let want = b - a[i] - a[j];
        let mut tried_l = Vec::new();
        for l in j + 1..a.len() {
            if used[l] || a[l] != want || tried_l.contains(&a[l]) {
                continue;
            }
            tried_l.push(a[l]);
            used[l] = true;
            triples.push([i, j, l]);
            if fill(a, b, used, triples) {
                return true;
            }
            triples.pop();
            used[l] = false;
        }
        used[j] = false;
    }
    used[i] = false;
    false
}
