//! Z/2 Poincare duality verification, orientation characters, fundamental
//! classes, and Wu / Stiefel-Whitney profiles.
//!
//! Duality is certified over Z/2 in every degree by invertibility of the
//! cap matrices against the mod-2 fundamental class; the twisted integral
//! statement is checked at the top degree only, where the orientation
//! character is the unique twist making the top twisted homology infinite
//! cyclic.

use crate::algebra::gf2::{BitVec, F2Matrix};
use crate::algebra::quotient::QuotientBasis;
use crate::algebra::{enumerate_characters, homology_basis, homology_z};
use crate::complex::{Character, SimplicialComplex};
use crate::error::{Error, Result};
use crate::products::{
    cap_cochain, pairing, total_inverse, total_sq, ChainF2, ClassCoords, Cochain, CohomologyRing,
    TotalClass,
};

/// Certificate that a complex satisfies Z/2 Poincare duality, together with
/// its orientation data and the homology bases the cap matrices are
/// written in.
pub struct PDCertificate {
    /// The formal dimension.
    pub n: usize,
    /// Generator of H_n(X;Z/2), as a cycle.
    pub fundamental_cycle_f2: ChainF2,
    /// cap_matrices[k]: the matrix of `- cap [X]_2 : H^k -> H_{n-k}` in the
    /// chosen bases. Every one is square and invertible.
    pub cap_matrices: Vec<F2Matrix>,
    pub orientable: bool,
    /// The orientation character; zero when orientable.
    pub character: Character,
    homology: Vec<QuotientBasis>,
}

impl PDCertificate {
    pub fn betti(&self, k: usize) -> usize {
        self.cap_matrices.get(k).map_or(0, F2Matrix::ncols)
    }

    pub fn homology_basis(&self, k: usize) -> &QuotientBasis {
        &self.homology[k]
    }

    /// Coordinates of the fundamental class in the stored H_n basis.
    pub fn fundamental_coords(&self) -> BitVec {
        self.homology[self.n]
            .coords(&self.fundamental_cycle_f2.values)
            .expect("the fundamental cycle is a cycle")
    }
}

/// Wu and Stiefel-Whitney data of a verified duality complex.
pub struct WuProfile {
    /// Total Wu class v; v_k = 0 for 2k > n by construction.
    pub v: TotalClass,
    /// Total Stiefel-Whitney class w = Sq(v).
    pub w: TotalClass,
    /// Total class of the Spivak normal fibration: the inverse of w.
    pub w_spivak: TotalClass,
}

/// The representative cycle of the unique nonzero class of H_n(X;Z/2).
pub fn fundamental_class_f2(complex: &SimplicialComplex) -> Result<ChainF2> {
    if !complex.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = complex.dim();
    let basis = homology_basis(complex, n)?;
    if basis.dim() != 1 {
        return Err(Error::NoFundamentalClass { found: basis.dim() });
    }
    Ok(ChainF2 {
        degree: n,
        values: basis.representative(0).clone(),
    })
}

/// Enumerate all 2^{b_1} characters and return the unique one under which
/// the top twisted integral homology is infinite cyclic, with the
/// orientable bit (true exactly when that twist is cohomologous to zero).
pub fn orientation_character(complex: &SimplicialComplex) -> Result<(bool, Character)> {
    let characters = enumerate_characters(complex)?;
    let n = complex.dim();
    let mut hits: Vec<usize> = Vec::new();
    for (mask, c) in characters.iter().enumerate() {
        if homology_z(complex, n, Some(c))?.is_infinite_cyclic() {
            hits.push(mask);
        }
    }
    match hits.as_slice() {
        [] => Err(Error::NoOrientationCharacter),
        [mask] => Ok((*mask == 0, characters[*mask].clone())),
        many => Err(Error::AmbiguousCharacter { count: many.len() }),
    }
}

/// Verify Z/2 Poincare duality: build every cap matrix against the
/// fundamental class and demand invertibility; populate orientation data.
pub fn verify_pd(complex: &SimplicialComplex, ring: &CohomologyRing) -> Result<PDCertificate> {
    let fundamental = fundamental_class_f2(complex)?;
    let n = complex.dim();
    let (orientable, character) = orientation_character(complex)?;

    let mut homology = Vec::with_capacity(n + 1);
    for k in 0..=n {
        homology.push(homology_basis(complex, k)?);
    }

    let mut cap_matrices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let b_coh = ring.dim_of(k);
        let b_hom = homology[n - k].dim();
        let mut m = F2Matrix::zeros(b_hom, b_coh);
        for i in 0..b_coh {
            let rep = Cochain {
                degree: k,
                values: ring.bases[k].representative(i).clone(),
            };
            let capped = cap_cochain(complex, &fundamental, &rep)?;
            let coords = homology[n - k]
                .coords(&capped.values)
                .expect("cap of a cycle with a cocycle is a cycle");
            for r in coords.iter_ones() {
                m.set(r, i, true);
            }
        }
        if b_hom != b_coh || !m.is_invertible() {
            let rank = m.rank();
            return Err(Error::DualityFails {
                degree: k,
                deficit: b_coh.max(b_hom) - rank,
            });
        }
        cap_matrices.push(m);
    }

    Ok(PDCertificate {
        n,
        fundamental_cycle_f2: fundamental,
        cap_matrices,
        orientable,
        character,
        homology,
    })
}

/// Kronecker evaluation matrix of degree k: rows are the cohomology basis,
/// columns the homology basis; invertible over a field.
pub fn kronecker_matrix(ring: &CohomologyRing, cert: &PDCertificate, k: usize) -> F2Matrix {
    let b = ring.dim_of(k);
    let hom = cert.homology_basis(k);
    let mut m = F2Matrix::zeros(b, hom.dim());
    for i in 0..b {
        let phi = Cochain {
            degree: k,
            values: ring.bases[k].representative(i).clone(),
        };
        for j in 0..hom.dim() {
            let z = ChainF2 {
                degree: k,
                values: hom.representative(j).clone(),
            };
            m.set(i, j, pairing(&phi, &z));
        }
    }
    m
}

/// Solve for the Wu classes against the nondegenerate cup pairing and
/// derive the Stiefel-Whitney classes of the space and of its Spivak
/// normal fibration.
///
/// For each k with 2k <= n, v_k is the unique solution of
/// `<v_k cup y, [X]> = <Sq^k(y), [X]>` over the basis y of H^{n-k};
/// v_k = 0 above the middle degree. Then w = Sq(v) and w_spivak = w^{-1}.
pub fn wu_profile(
    complex: &SimplicialComplex,
    ring: &CohomologyRing,
    cert: &PDCertificate,
) -> WuProfile {
    assert_eq!(complex.dim(), cert.n, "certificate belongs to this complex");
    let n = cert.n;
    // pairing of the top cohomology basis with the fundamental class
    let top_pairing = {
        let mut p = BitVec::zeros(ring.dim_of(n));
        for i in 0..ring.dim_of(n) {
            let rep = Cochain {
                degree: n,
                values: ring.bases[n].representative(i).clone(),
            };
            p.set(i, pairing(&rep, &cert.fundamental_cycle_f2));
        }
        p
    };
    let class = |d: usize, i: usize, dim: usize| ClassCoords {
        degree: d,
        coords: BitVec::from_indices(dim, &[i]),
    };

    let mut v = TotalClass::one(ring);
    for k in 1..=n / 2 {
        let bk = ring.dim_of(k);
        let bnk = ring.dim_of(n - k);
        let mut gram = F2Matrix::zeros(bnk, bk);
        let mut rhs = BitVec::zeros(bnk);
        for m in 0..bnk {
            let y = class(n - k, m, bnk);
            for j in 0..bk {
                let x = class(k, j, bk);
                let prod = ring.mul(&x, &y);
                gram.set(m, j, prod.coords.dot(&top_pairing));
            }
            let sq = ring.sq(k, &y);
            rhs.set(m, sq.coords.dot(&top_pairing));
        }
        assert!(
            gram.is_invertible(),
            "cup pairing degenerate in degree {k} despite a duality certificate"
        );
        let vk = gram
            .solve(&rhs)
            .expect("invertible pairing admits a unique Wu solution");
        v.components[k] = vk;
    }

    let w = total_sq(ring, &v);
    let w_spivak =
        total_inverse(ring, &w).expect("total Stiefel-Whitney class has unit degree-0 part");
    WuProfile { v, w, w_spivak }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::products::ring_of;

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
            &crate::catalog::data::RP2_FACETS.map(|f| f.to_vec()),
            &[],
        )
        .unwrap()
    }

    #[test]
    fn sphere_fundamental_class_is_all_facets() {
        let s2 = sphere(2);
        let z = fundamental_class_f2(&s2).unwrap();
        assert_eq!(z.values.count_ones(), 4);
    }

    #[test]
    fn rp2_fundamental_class_is_all_ten_triangles() {
        let z = fundamental_class_f2(&rp2()).unwrap();
        assert_eq!(z.values.count_ones(), 10);
    }

    #[test]
    fn solid_simplices_have_no_fundamental_class() {
        for facet in [vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]] {
            let x = SimplicialComplex::from_facets("solid", &[facet], &[]).unwrap();
            assert!(matches!(
                fundamental_class_f2(&x),
                Err(Error::NoFundamentalClass { found: 0 })
            ));
        }
    }

    #[test]
    fn orientation_characters() {
        let (orientable, c) = orientation_character(&sphere(2)).unwrap();
        assert!(orientable);
        assert!(c.is_zero());
        let (orientable, c) = orientation_character(&rp2()).unwrap();
        assert!(!orientable);
        assert!(!c.is_zero());
    }

    #[test]
    fn rp2_duality_certificate() {
        let x = rp2();
        let ring = ring_of(&x).unwrap();
        let cert = verify_pd(&x, &ring).unwrap();
        assert_eq!(cert.n, 2);
        for (k, m) in cert.cap_matrices.iter().enumerate() {
            assert!(m.is_invertible(), "degree {k}");
        }
        assert!(!cert.orientable);
    }

    #[test]
    fn wedge_of_spheres_fails_upstream() {
        // two 4-spheres sharing one vertex: H_4 is 2-dimensional
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for skip in 0..6u32 {
            facets.push((0..6).filter(|&v| v != skip).collect());
        }
        for skip in 0..6u32 {
            facets.push(
                (0..6)
                    .filter(|&v| v != skip)
                    .map(|v| if v == 0 { 0 } else { v + 5 })
                    .collect(),
            );
        }
        let x = SimplicialComplex::from_facets("wedge", &facets, &[]).unwrap();
        assert!(matches!(
            fundamental_class_f2(&x),
            Err(Error::NoFundamentalClass { found: 2 })
        ));
    }

    #[test]
    fn rp2_wu_profile() {
        let x = rp2();
        let ring = ring_of(&x).unwrap();
        let cert = verify_pd(&x, &ring).unwrap();
        let profile = wu_profile(&x, &ring, &cert);
        // v = 1 + a, w = 1 + a + a^2, w(SF) = 1 + a
        assert_eq!(profile.v.to_bytes(), vec![vec![1], vec![1], vec![0]]);
        assert_eq!(profile.w.to_bytes(), vec![vec![1], vec![1], vec![1]]);
        assert_eq!(profile.w_spivak.to_bytes(), vec![vec![1], vec![1], vec![0]]);
    }

    #[test]
    fn sphere_wu_profile_is_trivial() {
        let x = sphere(3);
        let ring = ring_of(&x).unwrap();
        let cert = verify_pd(&x, &ring).unwrap();
        assert!(cert.orientable);
        let profile = wu_profile(&x, &ring, &cert);
        let one = TotalClass::one(&ring);
        assert_eq!(profile.v, one);
        assert_eq!(profile.w, one);
        assert_eq!(profile.w_spivak, one);
    }

    #[test]
    fn kronecker_matrices_are_invertible() {
        let x = rp2();
        let ring = ring_of(&x).unwrap();
        let cert = verify_pd(&x, &ring).unwrap();
        for k in 0..=2 {
            assert!(kronecker_matrix(&ring, &cert, k).is_invertible());
        }
    }

    #[test]
    fn capping_the_fundamental_class_generates_h1_of_rp2() {
        let x = rp2();
        let ring = ring_of(&x).unwrap();
        let z = fundamental_class_f2(&x).unwrap();
        let a = Cochain {
            degree: 1,
            values: ring.bases[1].representative(0).clone(),
        };
        let capped = cap_cochain(&x, &z, &a).unwrap();
        let h1 = crate::algebra::homology_basis(&x, 1).unwrap();
        let coords = h1.coords(&capped.values).expect("cap result is a cycle");
        assert_eq!(coords.to_bytes(), vec![1], "[X] cap a generates H_1");
    }

    #[test]
    fn ambiguous_character_is_surfaced_not_resolved() {
        // wedge of a circle and a 2-sphere: top twisted homology is Z for
        // both characters (the twist never touches the sphere cycle)
        let facets = vec![
            vec![0, 4],
            vec![4, 5],
            vec![0, 5],
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ];
        let x = SimplicialComplex::from_facets("s1_wedge_s2", &facets, &[]).unwrap();
        assert!(matches!(
            orientation_character(&x),
            Err(Error::AmbiguousCharacter { count: 2 })
        ));
    }

    #[test]
    fn no_orientation_character_when_top_homology_vanishes() {
        // the solid simplex has H_3 = 0 and no twists to try (b_1 = 0)
        let x = SimplicialComplex::from_facets("d3", &[vec![0, 1, 2, 3]], &[]).unwrap();
        assert!(matches!(
            orientation_character(&x),
            Err(Error::NoOrientationCharacter)
        ));
    }
}
