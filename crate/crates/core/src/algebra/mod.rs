//! Exact linear algebra over F2 and the integers, and the homology,
//! cohomology, and twisted homology of simplicial complexes built on it.

pub mod gf2;
pub mod integer;
pub mod quotient;

use crate::complex::{Character, SimplicialComplex};
use crate::error::{Error, Result};
use gf2::{BitVec, F2Matrix};
use integer::{invariant_factors, AbelianGroup};
use quotient::QuotientBasis;

/// Bound on b_1 for character enumeration downstream; 2^{b_1} twists are
/// enumerated, so this keeps the tool desk-scale.
pub const CHARACTER_ENUMERATION_BOUND: usize = 20;

fn degree_check(complex: &SimplicialComplex, k: usize) -> Result<()> {
    if k > complex.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            dim: complex.dim(),
        });
    }
    Ok(())
}

/// The F2 boundary map out of degree k, as a matrix (zero map when k = 0).
fn boundary_or_zero(complex: &SimplicialComplex, k: usize) -> F2Matrix {
    if k == 0 {
        F2Matrix::zeros(0, complex.face_count(0))
    } else if k > complex.dim() {
        F2Matrix::zeros(complex.face_count(k.saturating_sub(1)), 0)
    } else {
        complex
            .boundary_matrix_f2(k)
            .expect("degree checked by caller")
    }
}

/// Basis of H_k(X;Z/2): cycles of degree k modulo boundaries from above.
pub fn homology_basis(complex: &SimplicialComplex, k: usize) -> Result<QuotientBasis> {
    degree_check(complex, k)?;
    let d_out = boundary_or_zero(complex, k);
    let d_in_rows = if k < complex.dim() {
        complex.boundary_matrix_f2(k + 1)?.transpose()
    } else {
        F2Matrix::zeros(0, complex.face_count(k))
    };
    Ok(QuotientBasis::new(&d_out, &d_in_rows))
}

/// Dimension of H_k(X;Z/2) and a cycle basis projecting to a basis of it.
pub fn homology_f2(complex: &SimplicialComplex, k: usize) -> Result<(usize, Vec<BitVec>)> {
    let basis = homology_basis(complex, k)?;
    Ok((basis.dim(), basis.representatives().to_vec()))
}

/// Echelon-form basis of H^k(X;Z/2) with cocycle representatives and a
/// coordinate map that kills exactly the coboundaries.
pub struct CohomologyBasis {
    pub degree: usize,
    quotient: QuotientBasis,
}

impl CohomologyBasis {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Number of k-simplices, the cochain dimension.
    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn representatives(&self) -> &[BitVec] {
        self.quotient.representatives()
    }

    pub fn representative(&self, i: usize) -> &BitVec {
        self.quotient.representative(i)
    }

    /// Coordinates of a cocycle's class; `None` if the input is not a
    /// cocycle.
    pub fn coords(&self, cocycle: &BitVec) -> Option<BitVec> {
        self.quotient.coords(cocycle)
    }

    pub fn from_coords(&self, coords: &BitVec) -> BitVec {
        self.quotient.from_coords(coords)
    }
}

/// Cohomology of degree k over F2, via the coboundary (the transpose of
/// the boundary one degree up).
pub fn cohomology_f2(complex: &SimplicialComplex, k: usize) -> Result<CohomologyBasis> {
    degree_check(complex, k)?;
    // delta_k = transpose of d_{k+1}: C^k -> C^{k+1}
    let delta_out = if k < complex.dim() {
        complex.boundary_matrix_f2(k + 1)?.transpose()
    } else {
        F2Matrix::zeros(0, complex.face_count(k))
    };
    // image of delta_{k-1} = column space of d_k^T = row space of d_k
    let delta_in_rows = boundary_or_zero(complex, k);
    Ok(CohomologyBasis {
        degree: k,
        quotient: QuotientBasis::new(&delta_out, &delta_in_rows),
    })
}

/// Integral homology, optionally with coefficients twisted by a character,
/// computed from twisted integral boundaries via Smith normal form.
pub fn homology_z(
    complex: &SimplicialComplex,
    k: usize,
    twist: Option<&Character>,
) -> Result<AbelianGroup> {
    degree_check(complex, k)?;
    let rank_out = if k == 0 {
        0
    } else {
        invariant_factors(&complex.boundary_matrix_z(k, twist)?)?.rank()
    };
    let factors_in = if k < complex.dim() {
        invariant_factors(&complex.boundary_matrix_z(k + 1, twist)?)?
    } else {
        integer::Snf { factors: vec![] }
    };
    let free_rank = complex.face_count(k) - rank_out - factors_in.rank();
    let torsion: Vec<i64> = factors_in.factors.into_iter().filter(|&d| d > 1).collect();
    Ok(AbelianGroup { free_rank, torsion })
}

/// Cocycle representatives of a basis of H^1(X;Z/2); every character is an
/// F2 combination of these.
pub fn character_basis(complex: &SimplicialComplex) -> Result<Vec<Character>> {
    if !complex.is_connected() {
        return Err(Error::NotConnected);
    }
    if complex.dim() < 1 {
        return Ok(Vec::new());
    }
    let basis = cohomology_f2(complex, 1)?;
    basis
        .representatives()
        .iter()
        .map(|rep| Character::new(complex, rep.clone()))
        .collect()
}

/// All 2^{b_1} characters of a connected complex, the zero character first,
/// in deterministic (mask) order.
pub fn enumerate_characters(complex: &SimplicialComplex) -> Result<Vec<Character>> {
    let basis = character_basis(complex)?;
    let b1 = basis.len();
    if b1 > CHARACTER_ENUMERATION_BOUND {
        return Err(Error::EnumerationBoundExceeded {
            b1,
            bound: CHARACTER_ENUMERATION_BOUND,
        });
    }
    let mut out = Vec::with_capacity(1 << b1);
    for mask in 0u32..(1 << b1) {
        let mut c = Character::zero(complex);
        for (i, basis_char) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                c = c.xor(basis_char);
            }
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn sphere(n: usize) -> SimplicialComplex {
        let verts: Vec<u32> = (0..=(n as u32 + 1)).collect();
        let facets: Vec<Vec<u32>> = (0..verts.len())
            .map(|skip| {
                verts
                    .iter()
                    .copied()
                    .filter(|&v| v as usize != skip)
                    .collect()
            })
            .collect();
        SimplicialComplex::from_facets(format!("s{n}"), &facets, &[]).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            "rp2",
            &[
                vec![0, 1, 3],
                vec![0, 1, 4],
                vec![0, 2, 3],
                vec![0, 2, 5],
                vec![0, 4, 5],
                vec![1, 2, 4],
                vec![1, 2, 5],
                vec![1, 3, 5],
                vec![2, 3, 4],
                vec![3, 4, 5],
            ],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn sphere_homology() {
        let s2 = sphere(2);
        let dims: Vec<usize> = (0..=2).map(|k| homology_f2(&s2, k).unwrap().0).collect();
        assert_eq!(dims, vec![1, 0, 1]);
    }

    /// Dense Gaussian elimination over F2, independent of the bit-packed path.
    fn naive_rank(m: &F2Matrix) -> usize {
        let mut rows: Vec<Vec<u8>> = (0..m.nrows())
            .map(|r| (0..m.ncols()).map(|c| u8::from(m.get(r, c))).collect())
            .collect();
        let mut rank = 0;
        for c in 0..m.ncols() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) {
                rows.swap(rank, p);
                let pivot = rows[rank].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && row[c] == 1 {
                        for (a, b) in row.iter_mut().zip(&pivot) {
                            *a ^= b;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn rp2_homology_and_boundary_ranks() {
        let x = rp2();
        assert_eq!(x.face_count(1), 15);
        assert_eq!(x.face_count(2), 10);
        let d1 = x.boundary_matrix_f2(1).unwrap();
        let d2 = x.boundary_matrix_f2(2).unwrap();
        assert_eq!((d1.rank(), d2.rank()), (5, 9));
        assert_eq!(naive_rank(&d1), 5);
        assert_eq!(naive_rank(&d2), 9);
        let dims: Vec<usize> = (0..=2).map(|k| homology_f2(&x, k).unwrap().0).collect();
        assert_eq!(dims, vec![1, 1, 1]);
    }

    #[test]
    fn klein_bottle_homology_and_characters() {
        let x = &crate::catalog::get("klein").unwrap().complex;
        let dims: Vec<usize> = (0..=2).map(|k| homology_f2(x, k).unwrap().0).collect();
        assert_eq!(dims, vec![1, 2, 1]);
        for (k, &dim) in dims.iter().enumerate() {
            assert_eq!(cohomology_f2(x, k).unwrap().dim(), dim);
        }
        assert_eq!(character_basis(x).unwrap().len(), 2);
        // integral homology separates the Klein bottle from the torus
        assert_eq!(
            homology_z(x, 1, None).unwrap(),
            AbelianGroup {
                free_rank: 1,
                torsion: vec![2]
            }
        );
        assert!(homology_z(x, 2, None).unwrap().is_trivial());
    }

    #[test]
    fn cohomology_matches_homology_dims() {
        for x in [sphere(3), rp2()] {
            for k in 0..=x.dim() {
                assert_eq!(
                    cohomology_f2(&x, k).unwrap().dim(),
                    homology_f2(&x, k).unwrap().0,
                    "degree {k} of {}",
                    x.name()
                );
            }
        }
    }

    #[test]
    fn b0_counts_components() {
        let two =
            SimplicialComplex::from_facets("2pts", &[vec![0, 1, 2], vec![3, 4, 5]], &[]).unwrap();
        assert_eq!(homology_f2(&two, 0).unwrap().0, 2);
        assert!(!two.is_connected());
    }

    #[test]
    fn rp2_integral_homology() {
        let x = rp2();
        let h1 = homology_z(&x, 1, None).unwrap();
        assert_eq!(
            h1,
            AbelianGroup {
                free_rank: 0,
                torsion: vec![2]
            }
        );
        let h2 = homology_z(&x, 2, None).unwrap();
        assert!(h2.is_trivial());
    }

    #[test]
    fn rp2_twisted_top_homology_is_z() {
        let x = rp2();
        let chars = enumerate_characters(&x).unwrap();
        assert_eq!(chars.len(), 2);
        assert!(homology_z(&x, 2, Some(&chars[0])).unwrap().is_trivial());
        let twisted = homology_z(&x, 2, Some(&chars[1])).unwrap();
        assert!(twisted.is_infinite_cyclic());
        // twisted chain axiom
        let a = x.boundary_matrix_z(1, Some(&chars[1])).unwrap();
        let b = x.boundary_matrix_z(2, Some(&chars[1])).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn circle_integral_homology() {
        let s1 = SimplicialComplex::from_facets("s1", &[vec![0, 1], vec![1, 2], vec![0, 2]], &[])
            .unwrap();
        assert!(homology_z(&s1, 0, None).unwrap().is_infinite_cyclic());
        assert!(homology_z(&s1, 1, None).unwrap().is_infinite_cyclic());
    }

    #[test]
    fn character_basis_sizes() {
        assert!(character_basis(&sphere(3)).unwrap().is_empty());
        let basis = character_basis(&rp2()).unwrap();
        assert_eq!(basis.len(), 1);
        // nontrivial on some cycle: pair the cocycle with a homology cycle
        let (dim, cycles) = homology_f2(&rp2(), 1).unwrap();
        assert_eq!(dim, 1);
        assert!(basis[0].values().dot(&cycles[0]));
    }

    #[test]
    fn disconnected_has_no_character_basis() {
        let two = SimplicialComplex::from_facets("2", &[vec![0, 1], vec![2, 3]], &[]).unwrap();
        assert!(matches!(character_basis(&two), Err(Error::NotConnected)));
    }

    #[test]
    fn deterministic_bases() {
        let x = rp2();
        let a = cohomology_f2(&x, 1).unwrap();
        let b = cohomology_f2(&x, 1).unwrap();
        assert_eq!(a.representatives(), b.representatives());
    }

    #[test]
    fn character_enumeration_bound_is_enforced() {
        // a wedge of 21 triangle circles at a hub vertex: b_1 = 21
        let mut facets = Vec::new();
        for i in 0..21u32 {
            let (a, b) = (1 + 2 * i, 2 + 2 * i);
            facets.push(vec![0, a]);
            facets.push(vec![a, b]);
            facets.push(vec![0, b]);
        }
        let x = SimplicialComplex::from_facets("wedge21", &facets, &[]).unwrap();
        assert_eq!(cohomology_f2(&x, 1).unwrap().dim(), 21);
        assert!(matches!(
            enumerate_characters(&x),
            Err(Error::EnumerationBoundExceeded { b1: 21, bound: 20 })
        ));
    }
}
