//! Exact sparse linear algebra over the rationals: rank, kernel, column
//! space, and coordinates in a chosen spanning set. Everything is plain
//! Gaussian elimination on sparse columns; no modular shortcuts.

use num::{BigRational, Zero};

/// A sparse column: strictly increasing row indices with nonzero entries.
pub type Col = Vec<(usize, BigRational)>;

/// Sparse matrix stored by columns.
#[derive(Debug, Clone, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Col>,
}

impl SparseMat {
    pub fn new(rows: usize) -> Self {
        SparseMat {
            rows,
            cols: Vec::new(),
        }
    }

    pub fn push_col(&mut self, mut col: Col) {
        col.sort_by_key(|&(r, _)| r);
        col.retain(|(_, v)| !v.is_zero());
        self.cols.push(col);
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn rank(&self) -> usize {
        Eliminator::new().rank(self.cols.iter())
    }

    /// Basis of `ker(M)` as coordinate vectors over the columns.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let n = self.ncols();
        let mut elim = Eliminator::new();
        let mut kernel = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            // augment with the j-th unit vector to track the combination
            let mut aug = AugCol {
                col: col.clone(),
                trace: vec![(j, BigRational::from_integer(1.into()))],
            };
            elim.reduce_aug(&mut aug);
            if aug.col.is_empty() {
                let mut v = vec![BigRational::zero(); n];
                for (i, c) in aug.trace {
                    v[i] = c;
                }
                kernel.push(v);
            } else {
                elim.insert_aug(aug);
            }
        }
        kernel
    }
}

/// Dense column from a sparse one.
pub fn to_dense(col: &Col, rows: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); rows];
    for (r, c) in col {
        v[*r] = c.clone();
    }
    v
}

fn axpy(dst: &mut Col, coeff: &BigRational, src: &Col) {
    // dst += coeff * src, both sorted by row
    if coeff.is_zero() || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut i = 0;
    let mut j = 0;
    while i < dst.len() || j < src.len() {
        if j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i >= dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, coeff * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + coeff * &src[j].1;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *dst = out;
}

struct AugCol {
    col: Col,
    trace: Vec<(usize, BigRational)>,
}

/// Incremental column echelon form: pivots indexed by leading row, each
/// pivot column normalized to leading coefficient 1.
pub struct Eliminator {
    /// (leading row, column) sorted by leading row.
    pivots: Vec<(usize, Col)>,
    traces: Vec<Vec<(usize, BigRational)>>,
}

impl Default for Eliminator {
    fn default() -> Self {
        Self::new()
    }
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator {
            pivots: Vec::new(),
            traces: Vec::new(),
        }
    }

    pub fn rank_so_far(&self) -> usize {
        self.pivots.len()
    }

    fn find_pivot(&self, row: usize) -> Option<usize> {
        self.pivots.binary_search_by_key(&row, |&(r, _)| r).ok()
    }

    /// Reduce `col` against the current pivots in place.
    pub fn reduce(&self, col: &mut Col) {
        loop {
            let Some(&(lead, _)) = col.first() else {
                return;
            };
            let Some(idx) = self.find_pivot(lead) else {
                return;
            };
            let coeff = -col[0].1.clone();
            axpy(col, &coeff, &self.pivots[idx].1);
        }
    }

    fn reduce_aug(&self, aug: &mut AugCol) {
        loop {
            let Some(&(lead, _)) = aug.col.first() else {
                return;
            };
            let Some(idx) = self.find_pivot(lead) else {
                return;
            };
            let coeff = -aug.col[0].1.clone();
            axpy(&mut aug.col, &coeff, &self.pivots[idx].1);
            axpy(&mut aug.trace, &coeff, &self.traces[idx]);
        }
    }

    /// Insert a (nonzero) reduced column as a new pivot.
    pub fn insert(&mut self, mut col: Col) {
        let inv = col[0].1.clone().recip();
        for (_, v) in col.iter_mut() {
            *v = &*v * &inv;
        }
        let row = col[0].0;
        let pos = self
            .pivots
            .binary_search_by_key(&row, |&(r, _)| r)
            .unwrap_err();
        self.pivots.insert(pos, (row, col));
        self.traces.insert(pos, Vec::new());
    }

    fn insert_aug(&mut self, mut aug: AugCol) {
        let inv = aug.col[0].1.clone().recip();
        for (_, v) in aug.col.iter_mut() {
            *v = &*v * &inv;
        }
        for (_, v) in aug.trace.iter_mut() {
            *v = &*v * &inv;
        }
        let row = aug.col[0].0;
        let pos = self
            .pivots
            .binary_search_by_key(&row, |&(r, _)| r)
            .unwrap_err();
        self.pivots.insert(pos, (row, aug.col));
        self.traces.insert(pos, aug.trace);
    }

    /// Feed a column; returns true when it increased the rank.
    pub fn offer(&mut self, col: &Col) -> bool {
        let mut c = col.clone();
        self.reduce(&mut c);
        if c.is_empty() {
            false
        } else {
            self.insert(c);
            true
        }
    }

    pub fn rank<'a>(mut self, cols: impl Iterator<Item = &'a Col>) -> usize {
        for col in cols {
            self.offer(col);
        }
        self.rank_so_far()
    }
}

/// Express `v` in the span of `basis` (if possible): returns coordinates.
pub fn coordinates_in(basis: &[Col], v: &Col) -> Option<Vec<BigRational>> {
    let mut elim = Eliminator::new();
    for (j, col) in basis.iter().enumerate() {
        let mut aug = AugCol {
            col: col.clone(),
            trace: vec![(j, BigRational::from_integer(1.into()))],
        };
        elim.reduce_aug(&mut aug);
        if !aug.col.is_empty() {
            elim.insert_aug(aug);
        }
    }
    let mut aug = AugCol {
        col: v.clone(),
        trace: Vec::new(),
    };
    elim.reduce_aug(&mut aug);
    if !aug.col.is_empty() {
        return None;
    }
    // v + sum trace_j * basis_j = 0  =>  v = -sum trace_j basis_j
    let mut coords = vec![BigRational::zero(); basis.len()];
    for (j, c) in aug.trace {
        coords[j] = -c;
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn col(entries: &[(usize, i64)]) -> Col {
        entries.iter().map(|&(r, v)| (r, rat(v))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        // columns: (1,0,1), (0,1,1), (1,1,2) -> rank 2, kernel (1,1,-1)
        let mut m = SparseMat::new(3);
        m.push_col(col(&[(0, 1), (2, 1)]));
        m.push_col(col(&[(1, 1), (2, 1)]));
        m.push_col(col(&[(0, 1), (1, 1), (2, 2)]));
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // check M v = 0
        let mut acc = vec![BigRational::zero(); 3];
        for (j, coef) in v.iter().enumerate() {
            for (r, val) in &m.cols[j] {
                acc[*r] += coef * val;
            }
        }
        assert!(acc.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn coordinates() {
        let basis = vec![col(&[(0, 1), (1, 1)]), col(&[(1, 1)])];
        let v = col(&[(0, 2), (1, 3)]);
        let coords = coordinates_in(&basis, &v).unwrap();
        assert_eq!(coords, vec![rat(2), rat(1)]);
        let w = col(&[(2, 1)]);
        assert!(coordinates_in(&basis, &w).is_none());
    }

    #[test]
    fn zero_matrix() {
        let mut m = SparseMat::new(2);
        m.push_col(Vec::new());
        m.push_col(Vec::new());
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 2);
    }
}
