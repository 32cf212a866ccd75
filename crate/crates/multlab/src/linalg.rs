//! Exact linear algebra over the coefficient fields: incremental row
//! elimination for rank tracking, and kernel bases with deterministic
//! normalization.
//!
//! Everything here is exact field arithmetic (BigRational or F_p) with
//! deterministic pivoting — a single rounding error would falsify the audited
//! extremal orders, so no floating point appears anywhere.

use crate::exactnum::{Coeff, Field};

/// Incrementally maintained row-echelon form. Rows are fed one at a time and
/// reduced against the current pivots; rank queries are O(1).
pub struct Eliminator {
    ncols: usize,
    field: Field,
    /// Reduced rows, each normalized to a unit pivot; `pivots[i]` is the pivot
    /// column of `rows[i]`. Kept sorted by pivot column.
    rows: Vec<Vec<Coeff>>,
    pivots: Vec<usize>,
}

impl Eliminator {
    pub fn new(ncols: usize, field: Field) -> Eliminator {
        Eliminator {
            ncols,
            field,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current basis; if a nonzero remainder is left,
    /// absorb it and return true (rank increased).
    pub fn feed(&mut self, mut row: Vec<Coeff>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for j in p..self.ncols {
                    row[j] = row[j].sub(&factor.mul(&r[j]));
                }
            }
        }
        // First nonzero column becomes the pivot (deterministic).
        let Some(p) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero pivot");
        for c in row.iter_mut() {
            *c = c.mul(&inv);
        }
        // Back-substitute into existing rows to keep the form reduced.
        for r in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                for j in 0..self.ncols {
                    r[j] = r[j].sub(&factor.mul(&row[j]));
                }
            }
        }
        let at = self
            .pivots
            .binary_search(&p)
            .expect_err("pivot column must be new");
        self.rows.insert(at, row);
        self.pivots.insert(at, p);
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Kernel basis of the matrix whose rows were fed, one vector per free
    /// column in increasing column order; each vector has coefficient 1 at its
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Coeff>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for j in 0..self.ncols {
            if is_pivot[j] {
                continue;
            }
            let mut v = vec![Coeff::zero(self.field); self.ncols];
            v[j] = Coeff::one(self.field);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = r[j].neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank of the given rows.
pub fn rank(rows: &[Vec<Coeff>], ncols: usize, field: Field) -> usize {
    let mut e = Eliminator::new(ncols, field);
    for r in rows {
        e.feed(r.clone());
    }
    e.rank()
}

/// Kernel basis (right null space) of the matrix with deterministic
/// normalization: one vector per free column, in increasing free-column order.
pub fn kernel_basis(rows: &[Vec<Coeff>], ncols: usize, field: Field) -> Vec<Vec<Coeff>> {
    let mut e = Eliminator::new(ncols, field);
    for r in rows {
        e.feed(r.clone());
    }
    e.kernel_basis()
}

/// Normalize a vector so its first nonzero coordinate is 1.
pub fn normalize_first_one(v: &mut [Coeff]) {
    if let Some(p) = v.iter().position(|c| !c.is_zero()) {
        let inv = v[p].inv().expect("nonzero");
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
    }
}
