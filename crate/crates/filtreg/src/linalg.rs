//! Dense exact linear algebra over `Z/p`.
//!
//! Everything here works on row vectors. `RowSpan` maintains a subspace in
//! reduced row echelon form and is the workhorse for piece bases, minimal
//! generator selection and kernel computations.

use std::sync::Arc;

use crate::ring::PolyRing;

/// A subspace of `K^width` kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RowSpan {
    ring: Arc<PolyRing>,
    width: usize,
    /// RREF rows, pivot columns strictly increasing.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(ring: &Arc<PolyRing>, width: usize) -> RowSpan {
        RowSpan {
            ring: ring.clone(),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Canonical basis of the subspace (RREF rows, pivot order).
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the span; the result has zeros in pivot columns.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let r = &self.ring;
        for (row, &pc) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[pc];
            if c != 0 {
                for k in 0..self.width {
                    v[k] = r.sub(v[k], r.mul(c, row[k]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&c| c == 0)
    }

    /// Inserts `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let r = self.ring.clone();
        let inv = r.inv(v[pc]);
        for c in v.iter_mut() {
            *c = r.mul(*c, inv);
        }
        // back-substitute into existing rows to keep full RREF
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                for k in 0..self.width {
                    row[k] = r.sub(row[k], r.mul(c, v[k]));
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        true
    }

    /// Coordinates of `v` in the RREF basis, or `None` if outside the span.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }
}

/// Kernel of the linear map `v -> v * mat` on row vectors, where `mat` has
/// `rows` rows and `cols` columns. Returns an RREF basis of the kernel.
pub fn row_kernel(ring: &Arc<PolyRing>, mat: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let rows = mat.len();
    // augment [mat | I] and row-reduce; rows with zero mat-part give kernel
    let mut work: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut w = mat[i].clone();
            debug_assert_eq!(w.len(), cols);
            w.extend((0..rows).map(|j| u64::from(j == i)));
            w
        })
        .collect();
    let total = cols + rows;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&i| work[i][col] != 0) else {
            continue;
        };
        work.swap(pivot_row, sel);
        let inv = ring.inv(work[pivot_row][col]);
        for k in col..total {
            work[pivot_row][k] = ring.mul(work[pivot_row][k], inv);
        }
        for i in 0..rows {
            if i != pivot_row && work[i][col] != 0 {
                let c = work[i][col];
                for k in col..total {
                    let s = ring.mul(c, work[pivot_row][k]);
                    work[i][k] = ring.sub(work[i][k], s);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let mut span = RowSpan::new(ring, rows);
    for w in work.iter().skip(pivot_row) {
        if w[..cols].iter().all(|&c| c == 0) {
            span.insert(w[cols..].to_vec());
        }
    }
    span.basis().to_vec()
}

/// Rank of a list of row vectors.
pub fn rank(ring: &Arc<PolyRing>, rows: &[Vec<u64>], width: usize) -> usize {
    let mut span = RowSpan::new(ring, width);
    for r in rows {
        span.insert(r.clone());
    }
    span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(101, &["x"]).unwrap()
    }

    #[test]
    fn span_and_coordinates() {
        let r = ring();
        let mut s = RowSpan::new(&r, 3);
        assert!(s.insert(vec![1, 2, 3]));
        assert!(s.insert(vec![0, 1, 1]));
        assert!(!s.insert(vec![1, 3, 4]));
        assert_eq!(s.rank(), 2);
        let v = vec![2, 5, 7]; // 2*(1,2,3) + 1*(0,1,1)
        assert!(s.contains(&v));
        let coords = s.coordinates(&v).unwrap();
        assert_eq!(coords.len(), 2);
        // rebuild from RREF basis
        let mut back = vec![0u64; 3];
        for (c, row) in coords.iter().zip(s.basis()) {
            for k in 0..3 {
                back[k] = r.add(back[k], r.mul(*c, row[k]));
            }
        }
        assert_eq!(back, v);
        assert!(s.coordinates(&[0, 0, 1]).is_none());
    }

    #[test]
    fn kernel_of_map() {
        let r = ring();
        // map K^3 -> K^2 with rows (1,0), (0,1), (1,1); kernel = <(1,1,-1)>
        let mat = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let ker = row_kernel(&r, &mat, 2);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        for col in 0..2 {
            let mut s = 0u64;
            for row in 0..3 {
                s = r.add(s, r.mul(k[row], mat[row][col]));
            }
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn kernel_of_injective_map_is_zero() {
        let r = ring();
        let mat = vec![vec![1, 0, 0], vec![0, 1, 0]];
        assert!(row_kernel(&r, &mat, 3).is_empty());
    }
}
