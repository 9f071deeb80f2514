//! Deterministic basis extraction for quotients kernel/image over F2.
//!
//! The same machinery backs homology (cycles mod boundaries) and cohomology
//! (cocycles mod coboundaries): echelonize the subspace to quotient by,
//! reduce a kernel basis against it, and echelonize the residue. Pivots
//! follow the lexicographic simplex order of the ambient coordinates, so
//! repeated runs produce identical bases bit-for-bit.

use crate::algebra::gf2::{BitVec, F2Matrix, Rref};

/// A basis of ker(A) / rowspan(B) with a coordinate map on the quotient.
pub struct QuotientBasis {
    /// Echelonized representatives; cycles (resp. cocycles) by construction.
    reps: Vec<BitVec>,
    rep_pivots: Vec<usize>,
    /// Echelon form of the subspace being quotiented out.
    sub: Rref,
    ambient: usize,
}

impl QuotientBasis {
    /// `kernel_of`: the map out of this degree (its kernel is the cycle
    /// space). `image_rows`: rows spanning the subspace to quotient by.
    pub fn new(kernel_of: &F2Matrix, image_rows: &F2Matrix) -> Self {
        let ambient = kernel_of.ncols();
        assert_eq!(image_rows.ncols(), ambient);
        let sub = image_rows.rref();
        let mut residue = F2Matrix::from_rows(
            kernel_of
                .kernel_basis()
                .into_iter()
                .map(|v| sub.reduce(&v))
                .collect(),
            ambient,
        );
        let rep_pivots = residue.rref_in_place();
        let reps: Vec<BitVec> = residue.rows()[..rep_pivots.len()].to_vec();
        Self {
            reps,
            rep_pivots,
            sub,
            ambient,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[BitVec] {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> &BitVec {
        &self.reps[i]
    }

    /// Coordinates of a vector's class in this basis. Returns `None` when
    /// the vector does not lie in the cycle space (so the map kills exactly
    /// the quotiented subspace).
    pub fn coords(&self, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = self.sub.reduce(v);
        let mut out = BitVec::zeros(self.reps.len());
        for (i, rep) in self.reps.iter().enumerate() {
            if w.get(self.rep_pivots[i]) {
                w.xor_assign(rep);
                out.set(i, true);
            }
        }
        w.is_zero().then_some(out)
    }

    /// Rebuild a representative cocycle/cycle from quotient coordinates.
    pub fn from_coords(&self, coords: &BitVec) -> BitVec {
        assert_eq!(coords.len(), self.reps.len());
        let mut out = BitVec::zeros(self.ambient);
        for i in coords.iter_ones() {
            out.xor_assign(&self.reps[i]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_kernel_by_image() {
        // A = [1 1 0; 0 0 0], kernel = span{110, 001}; quotient by span{110}
        let mut a = F2Matrix::zeros(2, 3);
        a.set(0, 0, true);
        a.set(0, 1, true);
        let mut b = F2Matrix::zeros(1, 3);
        b.set(0, 0, true);
        b.set(0, 1, true);
        let q = QuotientBasis::new(&a, &b);
        assert_eq!(q.dim(), 1);
        // the class of 110 is zero
        let v = BitVec::from_indices(3, &[0, 1]);
        assert!(q.coords(&v).unwrap().is_zero());
        // 001 is the generator
        let w = BitVec::from_indices(3, &[2]);
        assert_eq!(q.coords(&w).unwrap().to_bytes(), vec![1]);
        // a non-cycle is rejected
        let bad = BitVec::from_indices(3, &[0]);
        assert!(q.coords(&bad).is_none());
    }
}
