//! Incremental min/max tracking over a multiset of f64 values.
//!
//! Keys are the IEEE-754 bit patterns remapped so that unsigned order agrees
//! with the numeric order, which keeps the map free of float-wrapper types.

use std::collections::BTreeMap;

#[derive(Clone, Debug, Default)]
pub struct OrderedValueIndex {
    counts: BTreeMap<u64, u32>,
    len: usize,
}

fn key(x: f64) -> u64 {
    debug_assert!(!x.is_nan());
    let bits = x.to_bits();
    if bits >> 63 == 0 {
        bits | (1 << 63)
    } else {
        !bits
    }
}

fn unkey(k: u64) -> f64 {
    if k >> 63 == 1 {
        f64::from_bits(k & !(1 << 63))
    } else {
        f64::from_bits(!k)
    }
}

impl OrderedValueIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        let mut idx = Self::new();
        for v in values {
            idx.insert(v);
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, x: f64) {
        *self.counts.entry(key(x)).or_insert(0) += 1;
        self.len += 1;
    }

    /// Removes one occurrence of `x`. Panics if `x` is not present; callers
    /// always pair removals with earlier insertions of the same bit pattern.
    pub fn remove(&mut self, x: f64) {
        let k = key(x);
        let c = self.counts.get_mut(&k).expect("value not present in index");
        *c -= 1;
        if *c == 0 {
            self.counts.remove(&k);
        }
        self.len -= 1;
    }

    pub fn min(&self) -> Option<f64> {
        self.counts.keys().next().map(|&k| unkey(k))
    }

    pub fn max(&self) -> Option<f64> {
        self.counts.keys().next_back().map(|&k| unkey(k))
    }

    /// max − min; 0 for an empty index.
    pub fn oscillation(&self) -> f64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn key_order_matches_float_order() {
        let xs = [-3.5, -0.0, 0.0, 1e-300, 0.25, 1.0, 7e12];
        for w in xs.windows(2) {
            assert!(key(w[0]) <= key(w[1]));
            assert_eq!(unkey(key(w[0])), w[0]);
        }
    }

    #[test]
    fn matches_full_scan_under_random_updates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 40;
        let mut values: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut idx = OrderedValueIndex::from_values(values.iter().copied());
        for _ in 0..10_000 {
            let v = rng.random_range(0..n);
            let x = rng.random_range(-1.0..1.0);
            idx.remove(values[v]);
            idx.insert(x);
            values[v] = x;
            let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(idx.min(), Some(lo));
            assert_eq!(idx.max(), Some(hi));
            assert_eq!(idx.oscillation(), hi - lo);
        }
    }
}
