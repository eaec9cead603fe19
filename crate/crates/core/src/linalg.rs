//! Dense exact linear algebra over Q(k): reduced row echelon subspaces,
//! kernels of constraint matrices, and membership tests. Block sizes in the
//! module engine stay in the low hundreds, so dense Gaussian elimination with
//! exact scalars is both simple and fast enough.

use crate::scalars::Scalar;

pub type Row = Vec<Scalar>;

fn first_nonzero(v: &[Scalar]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// A subspace of an n-dimensional coordinate space, stored as a reduced row
/// echelon basis. Insertion keeps the basis reduced, so membership reduces to
/// "residual is zero" and dimensions are just row counts.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Reduce `v` against the basis; the result has zeros in every pivot
    /// column of the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Row {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o = &*o - &(&factor * r);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Insert a vector; returns true when the subspace grew. The stored basis
    /// stays in reduced echelon form with pivot entries 1.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut red = self.reduce(v);
        let Some(p) = first_nonzero(&red) else {
            return false;
        };
        let inv = red[p].recip().expect("pivot is nonzero");
        for c in red.iter_mut() {
            *c = &*c * &inv;
        }
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (r, n) in row.iter_mut().zip(&red) {
                *r = &*r - &(&factor * n);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, red);
        true
    }

    pub fn insert_all(&mut self, vs: &[Row]) {
        for v in vs {
            self.insert(v);
        }
    }
}

/// Kernel of the linear map whose rows are constraints on `ncols` unknowns.
/// Returns a deterministic basis (one vector per free column, in column
/// order, with the free coordinate set to 1).
pub fn kernel(ncols: usize, constraints: &[Row]) -> Vec<Row> {
    let mut space = Subspace::new(ncols);
    for c in constraints {
        space.insert(c);
    }
    let mut basis = Vec::new();
    for col in 0..ncols {
        if space.pivots.contains(&col) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[col] = Scalar::one();
        for (row, &p) in space.rows.iter().zip(&space.pivots) {
            if !row[col].is_zero() {
                v[p] = -&row[col];
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn row(vals: &[i64]) -> Row {
        vals.iter().map(|&v| Scalar::from_int(v)).collect()
    }

    #[test]
    fn subspace_membership_and_dim() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&row(&[1, 2, 3])));
        assert!(s.insert(&row(&[0, 1, 1])));
        assert!(!s.insert(&row(&[1, 3, 4])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&row(&[2, 5, 7])));
        assert!(!s.contains(&row(&[0, 0, 1])));
    }

    #[test]
    fn kernel_of_rank_one_map() {
        // x + y + z = 0 has a 2-dimensional kernel
        let basis = kernel(3, &[row(&[1, 1, 1])]);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let sum = v.iter().fold(Scalar::zero(), |a, b| &a + b);
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn kernel_over_symbolic_scalars() {
        // (k+1)x - (k+1)y = 0  =>  x = y
        let k1: Scalar = "(k+1)".parse().unwrap();
        let c = vec![k1.clone(), -&k1];
        let basis = kernel(2, &[c]);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0][0], basis[0][1]);
    }

    #[test]
    fn kernel_of_full_rank_map_is_trivial() {
        let basis = kernel(2, &[row(&[1, 0]), row(&[0, 1])]);
        assert!(basis.is_empty());
    }
}
