//! Fixed-size subset enumeration in colexicographic order.
//!
//! The learners pin their query order to "sizes ascending, then colex within
//! a size" so traces are reproducible; this module is the single place that
//! order is defined.

/// Visits every `k`-element subset of `items` in colex order, passing each
/// as a slice (sorted whenever `items` is sorted). Stops early and returns
/// the closure's value at the first `Some`.
pub fn for_each_combination<T>(
    items: &[u32],
    k: usize,
    f: &mut impl FnMut(&[u32]) -> Option<T>,
) -> Option<T> {
    let m = items.len();
    if k > m {
        return None;
    }
    if k == 0 {
        return f(&[]);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if let Some(out) = f(&buf) {
            return Some(out);
        }
        // Colex successor: bump the lowest index that has room, reset below.
        let mut i = 0;
        loop {
            if i == k {
                return None;
            }
            let limit = if i + 1 < k { idx[i + 1] } else { m };
            if idx[i] + 1 < limit {
                idx[i] += 1;
                for (j, slot) in idx.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        for (j, &pos) in idx.iter().enumerate() {
            buf[j] = items[pos];
        }
    }
}

/// Number of `k`-element subsets of an `m`-element set, saturating.
#[cfg(test)]
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    out
}
