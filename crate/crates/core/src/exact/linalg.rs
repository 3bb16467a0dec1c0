use std::collections::BTreeMap;

use super::Scalar;

/// Sparse vector over [`Scalar`], keyed by basis labels.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// Adds `c * v` into `acc`, pruning zeros.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Scalar, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let t = c * x;
        match acc.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    acc.insert(k.clone(), t);
                }
            }
        }
    }
}

/// Reduced row-echelon basis of a subspace, built incrementally.
///
/// Pivots are the smallest key of each row; every stored row has pivot
/// coefficient 1 and no other row carries that key.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// Reduces `v` against the basis; the result has no pivot keys.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut out = v.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = out.get(pivot).cloned() {
                axpy(&mut out, &-c, row);
            }
        }
        out
    }

    /// Adds `v` to the span. Returns false when `v` was already in it.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip().expect("nonzero pivot");
        let mut row = SparseVec::new();
        axpy(&mut row, &inv, &r);
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                axpy(other, &-c, &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, Scalar::int(c))).collect()
    }

    #[test]
    fn echelon_reduce() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(&v(&[(0, 1), (1, 2)])));
        assert!(b.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!b.insert(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(b.rank(), 2);
        let r = b.reduce(&v(&[(0, 1)]));
        assert_eq!(r, v(&[(2, 2)]));
        assert_eq!(b.reduce(&r), r);
        assert!(b.contains(&v(&[(0, 2), (1, 4)])));
    }
}
