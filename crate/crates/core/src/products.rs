//! Cochain-level cup, cup-i, and cap products; Steenrod squares; and the
//! multiplicative structure of H*(X;Z/2) as a finite ring with a chosen
//! basis.
//!
//! Conventions are fixed by the global vertex order: the front face of a
//! simplex is spanned by its lowest vertices, the back face by its highest.
//! The cup-i product is the classical combinatorial formula on ordered
//! simplices: cut the simplex [0..n] at i+1 strictly increasing positions
//! into overlapping intervals (consecutive intervals share their cut
//! vertex), evaluate the first cochain on the union of the even-indexed
//! intervals and the second on the odd-indexed ones. For i = 0 this is the
//! front/back cup product; for i = k it degenerates to the pointwise
//! product, so Sq^0 is the identity already at chain level. The formula is
//! not taken on trust: the axiom suite (Sq^0 = id, top squares, the Cartan
//! formula, Sq^1 Sq^1 = 0, representative independence) pins it down.

use itertools::Itertools;

use crate::algebra::gf2::BitVec;
use crate::algebra::{cohomology_f2, CohomologyBasis};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// A k-cochain over F2: one bit per k-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: BitVec,
}

impl Cochain {
    pub fn zero(complex: &SimplicialComplex, degree: usize) -> Self {
        Self {
            degree,
            values: BitVec::zeros(complex.face_count(degree)),
        }
    }

    /// The unit 0-cochain: 1 on every vertex.
    pub fn unit(complex: &SimplicialComplex) -> Self {
        Self {
            degree: 0,
            values: BitVec::ones(complex.face_count(0)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// Is this cochain a cocycle (killed by the coboundary)?
    pub fn is_cocycle(&self, complex: &SimplicialComplex) -> bool {
        self.coboundary(complex).is_zero()
    }

    /// The coboundary: value on sigma is the sum over its codimension-1
    /// faces.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Cochain {
        let target = self.degree + 1;
        let mut out = Cochain::zero(complex, target);
        if target > complex.dim() {
            return out;
        }
        for (j, s) in complex.faces(target).iter().enumerate() {
            let mut acc = false;
            for i in 0..s.len() {
                let mut sub = s.clone();
                sub.remove(i);
                let idx = complex.face_index(self.degree, &sub).expect("stored face");
                acc ^= self.values.get(idx);
            }
            out.values.set(j, acc);
        }
        out
    }
}

/// An F2 chain: one bit per simplex of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainF2 {
    pub degree: usize,
    pub values: BitVec,
}

impl ChainF2 {
    pub fn zero(complex: &SimplicialComplex, degree: usize) -> Self {
        Self {
            degree,
            values: BitVec::zeros(complex.face_count(degree)),
        }
    }
}

/// Kronecker pairing of a cochain with a chain of the same degree.
pub fn pairing(phi: &Cochain, z: &ChainF2) -> bool {
    assert_eq!(phi.degree, z.degree, "pairing degree mismatch");
    phi.values.dot(&z.values)
}

/// Alexander-Whitney cup product. A degree overflow past the dimension of
/// the complex lands in an empty degree and yields the zero cochain.
pub fn cup_cochain(complex: &SimplicialComplex, phi: &Cochain, psi: &Cochain) -> Cochain {
    let (k, l) = (phi.degree, psi.degree);
    let target = k + l;
    let mut out = Cochain::zero(complex, target);
    for (j, s) in complex.faces(target).iter().enumerate() {
        let front = complex
            .face_index(k, &s[..=k])
            .expect("front face is stored");
        if !phi.values.get(front) {
            continue;
        }
        let back = complex.face_index(l, &s[k..]).expect("back face is stored");
        if psi.values.get(back) {
            out.values.flip(j);
        }
    }
    out
}

/// Evaluate `<phi cup psi, z>` without materializing the product cochain.
pub fn cup_pairing(complex: &SimplicialComplex, phi: &Cochain, psi: &Cochain, z: &ChainF2) -> bool {
    let (k, l) = (phi.degree, psi.degree);
    assert_eq!(z.degree, k + l, "pairing degree mismatch");
    let mut acc = false;
    for j in z.values.iter_ones() {
        let s = &complex.faces(k + l)[j];
        let front = complex.face_index(k, &s[..=k]).expect("stored");
        if !phi.values.get(front) {
            continue;
        }
        let back = complex.face_index(l, &s[k..]).expect("stored");
        acc ^= psi.values.get(back);
    }
    acc
}

/// The classical cup-i product of two k-cochains, landing in degree 2k-i.
pub fn cup_i_cochain(
    complex: &SimplicialComplex,
    phi: &Cochain,
    psi: &Cochain,
    i: usize,
) -> Result<Cochain> {
    let k = phi.degree;
    assert_eq!(psi.degree, k, "cup-i operands must share a degree");
    if i > k {
        return Err(Error::IndexOutOfRange {
            index: i,
            degree: k,
        });
    }
    if i == 0 {
        return Ok(cup_cochain(complex, phi, psi));
    }
    let target = 2 * k - i;
    let mut out = Cochain::zero(complex, target);
    if target > complex.dim() {
        return Ok(out);
    }
    let n = target; // simplex [0..n], cut at i+1 interior positions
    let mut even_part: Vec<u32> = Vec::with_capacity(k + 1);
    let mut odd_part: Vec<u32> = Vec::with_capacity(k + 1);
    for (j, s) in complex.faces(target).iter().enumerate() {
        let mut acc = false;
        for cuts in (0..=n).combinations(i + 1) {
            // overlapping intervals [0..a0], [a0..a1], ..., [ai..n];
            // each cut vertex belongs to both adjacent intervals
            even_part.clear();
            odd_part.clear();
            let mut lo = 0usize;
            for (block, hi) in cuts.iter().copied().chain(std::iter::once(n)).enumerate() {
                let dest = if block % 2 == 0 {
                    &mut even_part
                } else {
                    &mut odd_part
                };
                dest.extend_from_slice(&s[lo..=hi]);
                lo = hi;
            }
            if even_part.len() != k + 1 {
                continue;
            }
            debug_assert_eq!(odd_part.len(), k + 1);
            let a = complex.face_index(k, &even_part).expect("stored face");
            if !phi.values.get(a) {
                continue;
            }
            let b = complex.face_index(k, &odd_part).expect("stored face");
            acc ^= psi.values.get(b);
        }
        out.values.set(j, acc);
    }
    Ok(out)
}

/// Cap product of an n-chain with a k-cochain: per simplex, evaluate the
/// cochain on the back k-face and keep the front (n-k)-face.
pub fn cap_cochain(complex: &SimplicialComplex, z: &ChainF2, phi: &Cochain) -> Result<ChainF2> {
    let n = z.degree;
    let k = phi.degree;
    if k > n {
        return Err(Error::DegreeOutOfRange { degree: k, dim: n });
    }
    let mut out = ChainF2::zero(complex, n - k);
    for j in z.values.iter_ones() {
        let s = &complex.faces(n)[j];
        let back = complex.face_index(k, &s[n - k..]).expect("stored");
        if phi.values.get(back) {
            let front = complex.face_index(n - k, &s[..=n - k]).expect("stored");
            out.values.flip(front);
        }
    }
    Ok(out)
}

/// Coordinates of a homogeneous cohomology class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoords {
    pub degree: usize,
    pub coords: BitVec,
}

/// A total class in H^0 + H^1 + ... + H^n with unit degree-0 part, stored
/// as coordinates per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalClass {
    pub components: Vec<BitVec>,
}

impl TotalClass {
    pub fn one(ring: &CohomologyRing) -> Self {
        let mut components: Vec<BitVec> =
            ring.bases.iter().map(|b| BitVec::zeros(b.dim())).collect();
        components[0] = ring.unit.clone();
        Self { components }
    }

    pub fn component(&self, k: usize) -> &BitVec {
        &self.components[k]
    }

    /// 0/1 coordinate lists per degree, for reports and goldens.
    pub fn to_bytes(&self) -> Vec<Vec<u8>> {
        self.components.iter().map(BitVec::to_bytes).collect()
    }

    pub fn has_unit_part(&self) -> bool {
        self.components[0].to_bytes() == vec![1]
    }
}

/// H*(X;Z/2) with a chosen echelon basis per degree, dense multiplication
/// and Steenrod tables, and the unit.
pub struct CohomologyRing {
    /// bases[k] is the chosen basis of H^k, k = 0..=n.
    pub bases: Vec<CohomologyBasis>,
    /// mult[k][l][i][j]: coordinates of (b^k_i cup b^l_j) in degree k+l.
    mult: Vec<Vec<Vec<Vec<BitVec>>>>,
    /// sq[k][d][i]: coordinates of Sq^k(b^d_i) in degree d+k.
    sq: Vec<Vec<Vec<BitVec>>>,
    /// Coordinates of 1 in H^0.
    pub unit: BitVec,
}

impl CohomologyRing {
    pub fn dim_of(&self, degree: usize) -> usize {
        self.bases.get(degree).map_or(0, CohomologyBasis::dim)
    }

    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn betti(&self) -> Vec<usize> {
        self.bases.iter().map(CohomologyBasis::dim).collect()
    }

    /// Product of two homogeneous classes, by bilinear table lookup.
    pub fn mul(&self, x: &ClassCoords, y: &ClassCoords) -> ClassCoords {
        let target = x.degree + y.degree;
        if target > self.top_degree() {
            return ClassCoords {
                degree: target,
                coords: BitVec::zeros(0),
            };
        }
        let mut coords = BitVec::zeros(self.dim_of(target));
        for i in x.coords.iter_ones() {
            for j in y.coords.iter_ones() {
                coords.xor_assign(&self.mult[x.degree][y.degree][i][j]);
            }
        }
        ClassCoords {
            degree: target,
            coords,
        }
    }

    /// Sq^k of a homogeneous class; zero above the top degree and for
    /// k greater than the degree, per the axioms.
    pub fn sq(&self, k: usize, x: &ClassCoords) -> ClassCoords {
        let target = x.degree + k;
        if target > self.top_degree() || k > x.degree {
            let dim = if target > self.top_degree() {
                0
            } else {
                self.dim_of(target)
            };
            return ClassCoords {
                degree: target,
                coords: BitVec::zeros(dim),
            };
        }
        let mut coords = BitVec::zeros(self.dim_of(target));
        for i in x.coords.iter_ones() {
            coords.xor_assign(&self.sq[k][x.degree][i]);
        }
        ClassCoords {
            degree: target,
            coords,
        }
    }
}

/// Assemble the cohomology ring of a connected complex: bases in every
/// degree, the cup table, and the Steenrod table via cup-i products.
pub fn ring_of(complex: &SimplicialComplex) -> Result<CohomologyRing> {
    if !complex.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = complex.dim();
    let mut bases = Vec::with_capacity(n + 1);
    for k in 0..=n {
        bases.push(cohomology_f2(complex, k)?);
    }

    let rep = |bases: &[CohomologyBasis], d: usize, i: usize| Cochain {
        degree: d,
        values: bases[d].representative(i).clone(),
    };

    // cup table
    let mut mult = vec![vec![Vec::new(); n + 1]; n + 1];
    for k in 0..=n {
        for l in 0..=(n - k) {
            let mut block = Vec::with_capacity(bases[k].dim());
            for i in 0..bases[k].dim() {
                let phi = rep(&bases, k, i);
                let mut row = Vec::with_capacity(bases[l].dim());
                for j in 0..bases[l].dim() {
                    let psi = rep(&bases, l, j);
                    let prod = cup_cochain(complex, &phi, &psi);
                    let coords = bases[k + l]
                        .coords(&prod.values)
                        .expect("cup of cocycles is a cocycle");
                    row.push(coords);
                }
                block.push(row);
            }
            mult[k][l] = block;
        }
    }

    // Steenrod table: Sq^k on degree d via the cup-(d-k) self-product
    let mut sq = vec![vec![Vec::new(); n + 1]; n + 1];
    for k in 0..=n {
        for d in k..=n {
            if d + k > n {
                continue;
            }
            let mut entries = Vec::with_capacity(bases[d].dim());
            for i in 0..bases[d].dim() {
                let phi = rep(&bases, d, i);
                let square = cup_i_cochain(complex, &phi, &phi, d - k)?;
                let coords = bases[d + k]
                    .coords(&square.values)
                    .expect("cup-i self-product of a cocycle is a cocycle");
                entries.push(coords);
            }
            sq[k][d] = entries;
        }
    }

    let unit_coords = bases[0]
        .coords(&Cochain::unit(complex).values)
        .expect("the constant 0-cochain is a cocycle");

    let ring = CohomologyRing {
        bases,
        mult,
        sq,
        unit: unit_coords,
    };
    debug_assert!(ring_tables_consistent(&ring));
    Ok(ring)
}

/// Internal consistency of the assembled tables: unital, commutative,
/// associative multiplication; Sq^0 = id; top squares match cup squares.
fn ring_tables_consistent(ring: &CohomologyRing) -> bool {
    let n = ring.top_degree();
    let class = |d: usize, i: usize| ClassCoords {
        degree: d,
        coords: BitVec::from_indices(ring.dim_of(d), &[i]),
    };
    let one = class(0, 0);
    for d in 0..=n {
        for i in 0..ring.dim_of(d) {
            let x = class(d, i);
            if ring.mul(&one, &x) != x || ring.mul(&x, &one) != x {
                return false;
            }
            if ring.sq(0, &x) != x {
                return false;
            }
            if ring.sq(d, &x) != ring.mul(&x, &x) {
                return false;
            }
            for l in 0..=(n - d) {
                for j in 0..ring.dim_of(l) {
                    let y = class(l, j);
                    if ring.mul(&x, &y) != ring.mul(&y, &x) {
                        return false;
                    }
                    for m in 0..=(n - d - l) {
                        for t in 0..ring.dim_of(m) {
                            let z = class(m, t);
                            if ring.mul(&ring.mul(&x, &y), &z) != ring.mul(&x, &ring.mul(&y, &z)) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Apply Sq^k to class coordinates through the ring's table.
pub fn steenrod_square(ring: &CohomologyRing, k: usize, x: &ClassCoords) -> ClassCoords {
    ring.sq(k, x)
}

/// Total Steenrod square of a total class: sum of Sq^k over all components,
/// collected by target degree.
pub fn total_sq(ring: &CohomologyRing, v: &TotalClass) -> TotalClass {
    let n = ring.top_degree();
    let mut out = TotalClass {
        components: ring.bases.iter().map(|b| BitVec::zeros(b.dim())).collect(),
    };
    for d in 0..=n {
        let x = ClassCoords {
            degree: d,
            coords: v.components[d].clone(),
        };
        if x.coords.is_zero() {
            continue;
        }
        for k in 0..=(n - d) {
            let y = ring.sq(k, &x);
            out.components[d + k].xor_assign(&y.coords);
        }
    }
    out
}

/// Inverse of a total class with unit degree-0 part, by degreewise
/// back-substitution in the truncated ring.
pub fn total_inverse(ring: &CohomologyRing, w: &TotalClass) -> Result<TotalClass> {
    if !w.has_unit_part() {
        return Err(Error::NotInvertible);
    }
    let n = ring.top_degree();
    let mut inv = TotalClass::one(ring);
    for m in 1..=n {
        // u_m = sum_{j=1..m} w_j cup u_{m-j}  (signs vanish over F2)
        let mut acc = BitVec::zeros(ring.dim_of(m));
        for j in 1..=m {
            let wj = ClassCoords {
                degree: j,
                coords: w.components[j].clone(),
            };
            let u = ClassCoords {
                degree: m - j,
                coords: inv.components[m - j].clone(),
            };
            acc.xor_assign(&ring.mul(&wj, &u).coords);
        }
        inv.components[m] = acc;
    }
    Ok(inv)
}

/// Multiply two total classes in the truncated ring.
pub fn total_mul(ring: &CohomologyRing, a: &TotalClass, b: &TotalClass) -> TotalClass {
    let n = ring.top_degree();
    let mut out = TotalClass {
        components: ring
            .bases
            .iter()
            .map(|bs| BitVec::zeros(bs.dim()))
            .collect(),
    };
    for i in 0..=n {
        for j in 0..=(n - i) {
            let x = ClassCoords {
                degree: i,
                coords: a.components[i].clone(),
            };
            let y = ClassCoords {
                degree: j,
                coords: b.components[j].clone(),
            };
            out.components[i + j].xor_assign(&ring.mul(&x, &y).coords);
        }
    }
    out
}
