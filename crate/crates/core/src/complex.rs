//! Finite abstract simplicial complexes and their chain-level boundary data,
//! over F2 and over the integers, optionally twisted by a Z/2 character.
//!
//! Every simplex is stored as a strictly increasing vertex tuple; the global
//! vertex order fixes all orientations and all front/back face conventions
//! used by the cochain product formulas downstream.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::gf2::{BitVec, F2Matrix};
use crate::algebra::integer::IntMatrix;
use crate::error::{Error, Result};

/// Soft limit on the dimension of accepted complexes.
pub const MAX_DIM: usize = 7;
/// Soft limit on the number of faces per degree.
pub const MAX_FACES_PER_DEGREE: usize = 100_000;

pub type Vertex = u32;
/// A simplex: strictly increasing vertex ids.
pub type Simplex = Vec<Vertex>;

/// Caller-supplied assertion tags. They are never inferred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexFlag {
    /// The caller asserts the complex is (homotopy equivalent to) a closed
    /// smooth manifold. Licenses the manifold verdict rule.
    #[serde(rename = "manifold")]
    Manifold,
    /// The caller asserts the input carries a preferred orientation.
    #[serde(rename = "oriented-input")]
    OrientedInput,
}

impl ComplexFlag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "manifold" => Ok(Self::Manifold),
            "oriented-input" => Ok(Self::OrientedInput),
            other => Err(Error::MalformedInput(format!("unknown flag {other:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Manifold => "manifold",
            Self::OrientedInput => "oriented-input",
        }
    }
}

/// A finite abstract simplicial complex with ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    name: String,
    /// faces[k]: all k-simplices, lexicographically sorted, duplicate-free.
    faces: Vec<Vec<Simplex>>,
    /// The maximal simplices, sorted.
    facets: Vec<Simplex>,
    flags: BTreeSet<ComplexFlag>,
}

impl SimplicialComplex {
    /// Build the downward closure of the given facets. Vertex ids are
    /// compacted to `0..V-1` preserving relative order.
    pub fn from_facets(
        name: impl Into<String>,
        facets: &[Vec<Vertex>],
        flags: &[ComplexFlag],
    ) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::MalformedInput("facet list is empty".into()));
        }
        let mut vertex_ids = BTreeSet::new();
        for f in facets {
            if f.is_empty() {
                return Err(Error::MalformedInput("empty facet".into()));
            }
            let distinct: BTreeSet<Vertex> = f.iter().copied().collect();
            if distinct.len() != f.len() {
                return Err(Error::MalformedInput(format!(
                    "facet {f:?} repeats a vertex"
                )));
            }
            if f.len() > MAX_DIM + 1 {
                return Err(Error::SizeBoundExceeded(format!(
                    "facet of dimension {} exceeds the limit {MAX_DIM}",
                    f.len() - 1
                )));
            }
            vertex_ids.extend(distinct);
        }
        let remap: std::collections::BTreeMap<Vertex, Vertex> = vertex_ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as Vertex))
            .collect();

        let mut top: BTreeSet<Simplex> = BTreeSet::new();
        for f in facets {
            let mut s: Simplex = f.iter().map(|v| remap[v]).collect();
            s.sort_unstable();
            top.insert(s);
        }
        // keep only maximal simplices
        let top: Vec<Simplex> = top.iter().cloned().collect();
        let maximal: Vec<Simplex> = top
            .iter()
            .filter(|s| {
                !top.iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()))
            })
            .cloned()
            .collect();

        let dim = maximal.iter().map(|s| s.len() - 1).max().unwrap();
        let mut levels: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim + 1];
        for s in &maximal {
            for mask in 1u32..(1 << s.len()) {
                let sub: Simplex = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                levels[sub.len() - 1].insert(sub);
            }
        }
        let faces: Vec<Vec<Simplex>> = levels
            .into_iter()
            .map(|l| l.into_iter().collect())
            .collect();
        for (k, level) in faces.iter().enumerate() {
            if level.len() > MAX_FACES_PER_DEGREE {
                return Err(Error::SizeBoundExceeded(format!(
                    "{} faces in degree {k} exceed the limit {MAX_FACES_PER_DEGREE}",
                    level.len()
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            faces,
            facets: maximal,
            flags: flags.iter().copied().collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.faces[0].len()
    }

    /// All k-faces, sorted lexicographically; empty beyond the dimension.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn flags(&self) -> impl Iterator<Item = ComplexFlag> + '_ {
        self.flags.iter().copied()
    }

    pub fn has_flag(&self, flag: ComplexFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn with_flag(mut self, flag: ComplexFlag) -> Self {
        self.flags.insert(flag);
        self
    }

    /// Position of a simplex in the sorted face list of its degree.
    pub fn face_index(&self, k: usize, simplex: &[Vertex]) -> Option<usize> {
        self.faces
            .get(k)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    /// Alternating sum of face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, level)| {
                let n = level.len() as i64;
                if k % 2 == 0 {
                    n
                } else {
                    -n
                }
            })
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.faces(1) {
            let (a, b) = (
                find(&mut parent, e[0] as usize),
                find(&mut parent, e[1] as usize),
            );
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (1..n).all(|v| find(&mut parent, v) == root)
    }

    /// Boundary matrix over F2: rows are (k-1)-faces, columns are k-faces.
    pub fn boundary_matrix_f2(&self, k: usize) -> Result<F2Matrix> {
        if k == 0 || k > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                dim: self.dim(),
            });
        }
        let rows = self.face_count(k - 1);
        let mut m = F2Matrix::zeros(rows, self.face_count(k));
        for (j, s) in self.faces(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut sub = s.clone();
                sub.remove(i);
                let r = self
                    .face_index(k - 1, &sub)
                    .expect("face of a stored simplex is stored");
                m.set(r, j, true);
            }
        }
        Ok(m)
    }

    /// Integer boundary matrix, optionally twisted by a character.
    ///
    /// Untwisted entries are the standard signs (-1)^i. With a twist, the
    /// i = 0 face term of [v0,...,vk] is additionally multiplied by
    /// (-1)^{c(v0 v1)}: dropping v0 transports the local-system fiber from
    /// basepoint v0 to basepoint v1; all other faces keep basepoint v0.
    pub fn boundary_matrix_z(&self, k: usize, twist: Option<&Character>) -> Result<IntMatrix> {
        if k == 0 || k > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                dim: self.dim(),
            });
        }
        if let Some(c) = twist {
            c.validate(self)?;
        }
        let mut triplets = Vec::new();
        for (j, s) in self.faces(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut sub = s.clone();
                sub.remove(i);
                let r = self
                    .face_index(k - 1, &sub)
                    .expect("face of a stored simplex is stored");
                let mut sign: i64 = if i % 2 == 0 { 1 } else { -1 };
                if i == 0 {
                    if let Some(c) = twist {
                        if c.on_edge(self, s[0], s[1]) {
                            sign = -sign;
                        }
                    }
                }
                triplets.push((r, j, sign));
            }
        }
        Ok(IntMatrix::from_triplets(
            self.face_count(k - 1),
            self.face_count(k),
            &triplets,
        ))
    }
}

/// An element of H^1(X;Z/2) as an edge-valued 1-cocycle; encodes a twist
/// or the orientation character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    /// One bit per 1-simplex, in the complex's sorted edge order.
    values: BitVec,
}

impl Character {
    /// Wrap edge values, checking the cocycle condition: for every
    /// 2-simplex [a,b,c], c(ab) + c(bc) + c(ac) = 0 over F2.
    pub fn new(complex: &SimplicialComplex, values: BitVec) -> Result<Self> {
        let c = Self { values };
        c.validate(complex)?;
        Ok(c)
    }

    pub fn zero(complex: &SimplicialComplex) -> Self {
        Self {
            values: BitVec::zeros(complex.face_count(1)),
        }
    }

    pub fn validate(&self, complex: &SimplicialComplex) -> Result<()> {
        if self.values.len() != complex.face_count(1) {
            return Err(Error::InvalidCharacter(format!(
                "expected {} edge values, got {}",
                complex.face_count(1),
                self.values.len()
            )));
        }
        for t in complex.faces(2) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let sum = self.on_edge(complex, a, b)
                ^ self.on_edge(complex, b, c)
                ^ self.on_edge(complex, a, c);
            if sum {
                return Err(Error::InvalidCharacter(format!(
                    "cocycle condition fails on triangle {t:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn values(&self) -> &BitVec {
        &self.values
    }

    pub fn on_edge(&self, complex: &SimplicialComplex, a: Vertex, b: Vertex) -> bool {
        let edge = if a < b { [a, b] } else { [b, a] };
        let idx = complex
            .face_index(1, &edge)
            .expect("edge of a stored simplex is stored");
        self.values.get(idx)
    }

    pub fn xor(&self, other: &Character) -> Character {
        let mut values = self.values.clone();
        values.xor_assign(&other.values);
        Character { values }
    }

    /// Edges on which the character is nonzero, for reporting.
    pub fn support(&self, complex: &SimplicialComplex) -> Vec<[Vertex; 2]> {
        self.values
            .iter_ones()
            .map(|i| {
                let e = &complex.faces(1)[i];
                [e[0], e[1]]
            })
            .collect()
    }
}

/// The JSON ingestion document: the only input format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub name: String,
    pub facets: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

impl ComplexDoc {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        let flags: Vec<ComplexFlag> = self
            .flags
            .iter()
            .map(|s| ComplexFlag::parse(s))
            .collect::<Result<_>>()?;
        SimplicialComplex::from_facets(&self.name, &self.facets, &flags)
    }

    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        Self {
            name: complex.name().to_string(),
            facets: complex.facets().to_vec(),
            flags: complex.flags().map(|f| f.as_str().to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn circle() -> SimplicialComplex {
        SimplicialComplex::from_facets("s1", &[vec![0, 1], vec![1, 2], vec![0, 2]], &[]).unwrap()
    }

    #[test]
    fn minimal_circle_closure() {
        let x = circle();
        assert_eq!(x.faces(0), &[vec![0], vec![1], vec![2]]);
        assert_eq!(x.faces(1), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(x.dim(), 1);
    }

    #[test]
    fn solid_3_simplex_closure() {
        let x = SimplicialComplex::from_facets("d3", &[vec![0, 1, 2, 3]], &[]).unwrap();
        assert_eq!(
            (0..=3).map(|k| x.face_count(k)).collect::<Vec<_>>(),
            vec![4, 6, 4, 1]
        );
        assert_eq!(x.dim(), 3);
    }

    #[test]
    fn vertex_ids_are_compacted_in_order() {
        let x = SimplicialComplex::from_facets("gap", &[vec![10, 40], vec![40, 77]], &[]).unwrap();
        assert_eq!(x.vertex_count(), 3);
        assert_eq!(x.faces(1), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(matches!(
            SimplicialComplex::from_facets("e", &[], &[]),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            SimplicialComplex::from_facets("e", &[vec![]], &[]),
            Err(Error::MalformedInput(_))
        ));
        assert!(matches!(
            SimplicialComplex::from_facets("e", &[vec![0, 0, 1]], &[]),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn dimension_bound_enforced() {
        let big: Vec<Vertex> = (0..=(MAX_DIM as Vertex + 1)).collect();
        assert!(matches!(
            SimplicialComplex::from_facets("big", &[big], &[]),
            Err(Error::SizeBoundExceeded(_))
        ));
    }

    #[test]
    fn rebuild_from_facets_is_idempotent() {
        let x = SimplicialComplex::from_facets(
            "w",
            &[vec![0, 1, 2], vec![2, 3], vec![1, 2]],
            &[ComplexFlag::Manifold],
        )
        .unwrap();
        let y = SimplicialComplex::from_facets("w", x.facets(), &x.flags().collect::<Vec<_>>())
            .unwrap();
        assert_eq!(x, y);
        // non-maximal input facet was dropped
        assert_eq!(x.facets().len(), 2);
    }

    #[test]
    fn circle_boundary_matrix() {
        let x = circle();
        let d1 = x.boundary_matrix_f2(1).unwrap();
        assert_eq!((d1.nrows(), d1.ncols()), (3, 3));
        for j in 0..3 {
            let ones = (0..3).filter(|&i| d1.get(i, j)).count();
            assert_eq!(ones, 2);
        }
        assert_eq!(d1.rank(), 2);
    }

    #[test]
    fn degree_out_of_range() {
        let x = circle();
        assert!(matches!(
            x.boundary_matrix_f2(0),
            Err(Error::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            x.boundary_matrix_f2(2),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_character_matches_untwisted() {
        let x = SimplicialComplex::from_facets("t", &[vec![0, 1, 2], vec![1, 2, 3]], &[]).unwrap();
        let c = Character::zero(&x);
        let plain = x.boundary_matrix_z(2, None).unwrap();
        let twisted = x.boundary_matrix_z(2, Some(&c)).unwrap();
        assert_eq!(plain, twisted);
    }

    #[test]
    fn boundary_squares_to_zero_over_z() {
        let x = SimplicialComplex::from_facets("d3", &[vec![0, 1, 2, 3]], &[]).unwrap();
        for k in 1..x.dim() {
            let a = x.boundary_matrix_z(k, None).unwrap();
            let b = x.boundary_matrix_z(k + 1, None).unwrap();
            assert!(a.mul(&b).unwrap().is_zero(), "d{k} d{} != 0", k + 1);
        }
    }

    #[test]
    fn invalid_character_rejected() {
        let x = SimplicialComplex::from_facets("t", &[vec![0, 1, 2]], &[]).unwrap();
        // a single 1 on one edge of a triangle violates the cocycle condition
        let values = BitVec::from_indices(3, &[0]);
        assert!(matches!(
            Character::new(&x, values),
            Err(Error::InvalidCharacter(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_facets() -> impl Strategy<Value = Vec<Vec<Vertex>>> {
            proptest::collection::vec(proptest::collection::btree_set(0u32..8, 1..=4), 1..=6)
                .prop_map(|sets| sets.into_iter().map(|s| s.into_iter().collect()).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn closure_invariants_hold(facets in arb_facets()) {
                let x = SimplicialComplex::from_facets("rand", &facets, &[]).unwrap();
                for k in 0..=x.dim() {
                    let level = x.faces(k);
                    let mut sorted = level.to_vec();
                    sorted.sort();
                    sorted.dedup();
                    prop_assert_eq!(level, sorted.as_slice());
                    for s in level {
                        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
                        prop_assert_eq!(s.len(), k + 1);
                        // every codimension-1 face is stored
                        if k > 0 {
                            for i in 0..s.len() {
                                let mut sub = s.clone();
                                sub.remove(i);
                                prop_assert!(x.face_index(k - 1, &sub).is_some());
                            }
                        }
                    }
                }
                prop_assert!(!x.faces(x.dim()).is_empty());
            }

            #[test]
            fn boundaries_square_to_zero(facets in arb_facets()) {
                let x = SimplicialComplex::from_facets("rand", &facets, &[]).unwrap();
                for k in 1..x.dim() {
                    let f2 = x.boundary_matrix_f2(k).unwrap()
                        .mul(&x.boundary_matrix_f2(k + 1).unwrap());
                    prop_assert!(f2.is_zero());
                    let z = x.boundary_matrix_z(k, None).unwrap()
                        .mul(&x.boundary_matrix_z(k + 1, None).unwrap()).unwrap();
                    prop_assert!(z.is_zero());
                }
            }

            #[test]
            fn rebuilding_is_idempotent(facets in arb_facets()) {
                let x = SimplicialComplex::from_facets("rand", &facets, &[]).unwrap();
                let y = SimplicialComplex::from_facets(
                    "rand",
                    x.facets(),
                    &x.flags().collect::<Vec<_>>(),
                ).unwrap();
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn json_document_roundtrip_and_flags() {
        let doc =
            ComplexDoc::parse(r#"{"facets":[[0,1],[1,2],[0,2]],"name":"c","flags":["manifold"]}"#)
                .unwrap();
        let x = doc.build().unwrap();
        assert!(x.has_flag(ComplexFlag::Manifold));
        let back = ComplexDoc::from_complex(&x);
        let x2 = back.build().unwrap();
        assert_eq!(x, x2);

        let bad = ComplexDoc::parse(r#"{"name":"c","facets":[[0,1]],"flags":["shiny"]}"#).unwrap();
        assert!(matches!(bad.build(), Err(Error::MalformedInput(_))));

        assert!(ComplexDoc::parse(r#"{"name":"c","facets":[[0,1]],"extra":1}"#).is_err());
        assert!(ComplexDoc::parse(r#"{"name":"c","facets":[[0,-1]]}"#).is_err());
    }
}
