//! Built-in triangulations with known invariants, plus the staircase
//! product constructor; together they form the regression corpus.

pub mod data;

use std::collections::BTreeMap;
use std::sync::LazyLock;

use itertools::Itertools;

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::verdict::RuleId;

/// A value with a note on where it comes from.
#[derive(Clone, Debug)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: &'static str,
}

fn tag<T>(value: T, provenance: &'static str) -> Tagged<T> {
    Tagged { value, provenance }
}

/// Expected reducibility outcome of an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpectedVerdict {
    Reducible(RuleId),
    Undetermined,
}

/// Expected invariants of a catalog entry; the regression gate compares
/// them against computed values exactly.
#[derive(Clone, Debug)]
pub struct Expected {
    pub betti_f2: Tagged<Vec<usize>>,
    pub is_pd: Tagged<bool>,
    pub orientable: Option<Tagged<bool>>,
    /// Total Stiefel-Whitney coordinates per degree; only frozen where
    /// every degree has at most one basis class, so the coordinates do not
    /// depend on the choice of echelon basis.
    pub total_w: Option<Tagged<Vec<Vec<u8>>>>,
    pub verdict: Option<Tagged<ExpectedVerdict>>,
}

pub struct CatalogEntry {
    pub key: &'static str,
    pub complex: SimplicialComplex,
    pub expected: Expected,
}

/// The boundary of the (n+1)-simplex: the minimal triangulation of S^n.
fn boundary_sphere(n: usize, name: &str) -> SimplicialComplex {
    let count = n as Vertex + 2;
    let facets: Vec<Vec<Vertex>> = (0..count)
        .map(|skip| (0..count).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::from_facets(name, &facets, &[]).expect("sphere construction")
}

/// Real projective n-space: the antipodal quotient of the barycentric
/// subdivision of the boundary of the (n+1)-dimensional cross-polytope.
/// The subdivision separates every simplex from its antipode, so the
/// quotient of flags by negation is again a simplicial complex.
fn real_projective(n: usize, name: &str) -> SimplicialComplex {
    let m = n + 1; // cross-polytope dimension; vertices +e_i -> i, -e_i -> m+i
    let verts = 2 * m;
    let opp = |v: usize| if v < m { v + m } else { v - m };

    // proper faces: antipodal-free vertex sets of size 1..=m
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << verts) {
        let s: Vec<usize> = (0..verts).filter(|&v| mask >> v & 1 == 1).collect();
        if s.len() > m || s.iter().any(|&v| s.binary_search(&opp(v)).is_ok()) {
            continue;
        }
        faces.push(s);
    }
    faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));

    let antipode = |s: &[usize]| -> Vec<usize> {
        let mut t: Vec<usize> = s.iter().map(|&v| opp(v)).collect();
        t.sort_unstable();
        t
    };
    let canon = |s: &[usize]| -> Vec<usize> {
        let t = antipode(s);
        if t.as_slice() < s {
            t
        } else {
            s.to_vec()
        }
    };
    let rep_ids: BTreeMap<Vec<usize>, Vertex> = {
        let mut reps: Vec<Vec<usize>> = faces.iter().map(|s| canon(s)).collect();
        reps.sort_by_key(|s| (s.len(), s.clone()));
        reps.dedup();
        reps.into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as Vertex))
            .collect()
    };

    // supersets one size up, for flag enumeration
    let mut by_size: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); m + 1];
    for s in &faces {
        by_size[s.len()].push(s);
    }
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    let mut stack: Vec<&Vec<usize>> = Vec::new();
    fn extend<'a>(
        stack: &mut Vec<&'a Vec<usize>>,
        by_size: &[Vec<&'a Vec<usize>>],
        m: usize,
        rep_ids: &BTreeMap<Vec<usize>, Vertex>,
        canon: &dyn Fn(&[usize]) -> Vec<usize>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let top = stack.last().unwrap();
        if top.len() == m {
            let mut facet: Vec<Vertex> = stack.iter().map(|s| rep_ids[&canon(s)]).collect();
            facet.sort_unstable();
            out.push(facet);
            return;
        }
        let next_size = top.len() + 1;
        let candidates: Vec<&Vec<usize>> = by_size[next_size]
            .iter()
            .copied()
            .filter(|s| top.iter().all(|v| s.binary_search(v).is_ok()))
            .collect();
        for s in candidates {
            stack.push(s);
            extend(stack, by_size, m, rep_ids, canon, out);
            stack.pop();
        }
    }
    for s in &by_size[1] {
        stack.push(s);
        extend(&mut stack, &by_size, m, &rep_ids, &canon, &mut facets);
        stack.pop();
    }
    facets.sort();
    facets.dedup();
    SimplicialComplex::from_facets(name, &facets, &[]).expect("projective space construction")
}

/// Staircase triangulation of the cartesian product: vertices are pairs,
/// and each pair of facets contributes one top simplex per monotone
/// lattice path through its grid.
pub fn product(x: &SimplicialComplex, y: &SimplicialComplex) -> Result<SimplicialComplex> {
    let vy = y.vertex_count() as Vertex;
    let pair = |u: Vertex, w: Vertex| u * vy + w;
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for fx in x.facets() {
        for fy in y.facets() {
            let p = fx.len() - 1;
            let q = fy.len() - 1;
            for rights in (0..p + q).combinations(p) {
                let mut i = 0;
                let mut j = 0;
                let mut simplex = Vec::with_capacity(p + q + 1);
                simplex.push(pair(fx[0], fy[0]));
                for step in 0..p + q {
                    if rights.binary_search(&step).is_ok() {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    simplex.push(pair(fx[i], fy[j]));
                }
                facets.push(simplex);
            }
        }
    }
    SimplicialComplex::from_facets(format!("{}x{}", x.name(), y.name()), &facets, &[])
}

fn to_vecs<const N: usize>(facets: &[[u32; N]]) -> Vec<Vec<Vertex>> {
    facets.iter().map(|f| f.to_vec()).collect()
}

fn build_catalog() -> BTreeMap<&'static str, CatalogEntry> {
    let circle = boundary_sphere(1, "s1");
    let klein = SimplicialComplex::from_facets("klein", &to_vecs(&data::KLEIN_FACETS), &[])
        .expect("klein construction");
    let t2 = {
        let p = product(&circle, &circle).expect("t2 product");
        SimplicialComplex::from_facets("t2", p.facets(), &[]).expect("t2")
    };
    let t3 = {
        let p = product(&t2, &circle).expect("t3 product");
        SimplicialComplex::from_facets("t3", p.facets(), &[]).expect("t3")
    };
    let t4 = {
        let p = product(&t3, &circle).expect("t4 product");
        SimplicialComplex::from_facets("t4", p.facets(), &[]).expect("t4")
    };
    let s1_x_klein = {
        let p = product(&circle, &klein).expect("s1 x klein product");
        SimplicialComplex::from_facets("s1_x_klein", p.facets(), &[]).expect("s1_x_klein")
    };

    let sphere_w = |n: usize| {
        let mut w = vec![vec![0u8]; n + 1];
        w[0] = vec![1];
        for slot in w.iter_mut().take(n).skip(1) {
            *slot = vec![];
        }
        w
    };

    let entries = vec![
        CatalogEntry {
            key: "s1",
            complex: circle,
            expected: Expected {
                betti_f2: tag(vec![1, 1], "classical circle homology"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical")),
                total_w: Some(tag(sphere_w(1), "spheres are stably parallelizable")),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "s2",
            complex: boundary_sphere(2, "s2"),
            expected: Expected {
                betti_f2: tag(vec![1, 0, 1], "classical sphere homology"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical")),
                total_w: Some(tag(sphere_w(2), "spheres are stably parallelizable")),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "s3",
            complex: boundary_sphere(3, "s3"),
            expected: Expected {
                betti_f2: tag(vec![1, 0, 0, 1], "classical sphere homology"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical")),
                total_w: Some(tag(sphere_w(3), "spheres are stably parallelizable")),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim3Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "s4",
            complex: boundary_sphere(4, "s4"),
            expected: Expected {
                betti_f2: tag(vec![1, 0, 0, 0, 1], "classical sphere homology"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical")),
                total_w: Some(tag(sphere_w(4), "spheres are stably parallelizable")),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim4OrientedRule),
                    "oriented rule precedes the H_1 rule",
                )),
            },
        },
        CatalogEntry {
            key: "rp2",
            complex: SimplicialComplex::from_facets("rp2", &to_vecs(&data::RP2_FACETS), &[])
                .expect("rp2"),
            expected: Expected {
                betti_f2: tag(
                    vec![1, 1, 1],
                    "rank oracle on the 6-vertex boundary matrices",
                ),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(false, "classical")),
                total_w: Some(tag(
                    vec![vec![1], vec![1], vec![1]],
                    "binomial expansion of (1+a)^3",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "rp3",
            complex: real_projective(3, "rp3"),
            expected: Expected {
                betti_f2: tag(vec![1, 1, 1, 1], "rank oracle on the quotient construction"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical; odd projective spaces orient")),
                total_w: Some(tag(
                    vec![vec![1], vec![0], vec![0], vec![0]],
                    "binomial expansion of (1+a)^4",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim3Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "rp4",
            complex: real_projective(4, "rp4"),
            expected: Expected {
                betti_f2: tag(
                    vec![1, 1, 1, 1, 1],
                    "rank oracle on the quotient construction",
                ),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(
                    false,
                    "classical; even projective spaces do not orient",
                )),
                total_w: Some(tag(
                    vec![vec![1], vec![1], vec![0], vec![0], vec![1]],
                    "binomial expansion of (1+a)^5",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Undetermined,
                    "non-orientable with nonzero H_1 and H_3; no positive rule fires",
                )),
            },
        },
        CatalogEntry {
            key: "cp2",
            complex: SimplicialComplex::from_facets("cp2", &to_vecs(&data::CP2_FACETS), &[])
                .expect("cp2"),
            expected: Expected {
                betti_f2: tag(
                    vec![1, 0, 1, 0, 1],
                    "rank oracle on the 9-vertex triangulation",
                ),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "classical")),
                total_w: Some(tag(
                    vec![vec![1], vec![], vec![1], vec![], vec![1]],
                    "mod-2 reduction of the total Chern class (1+c)^3",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim4OrientedRule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "t2",
            complex: t2,
            expected: Expected {
                betti_f2: tag(vec![1, 2, 1], "Kunneth product of two circles"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "product of orientable factors")),
                total_w: Some(tag(
                    vec![vec![1], vec![0, 0], vec![0]],
                    "tori are parallelizable",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "klein",
            complex: klein,
            expected: Expected {
                betti_f2: tag(vec![1, 2, 1], "rank oracle on the 9-vertex grid quotient"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(false, "classical")),
                total_w: None,
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "surface_genus2",
            complex: SimplicialComplex::from_facets(
                "surface_genus2",
                &to_vecs(&data::GENUS2_FACETS),
                &[],
            )
            .expect("genus2"),
            expected: Expected {
                betti_f2: tag(vec![1, 4, 1], "rank oracle on the glued-tori construction"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "gluing of orientable pieces along a disk")),
                total_w: Some(tag(
                    vec![vec![1], vec![0, 0, 0, 0], vec![0]],
                    "orientable surfaces have trivial total class",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim2Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "t3",
            complex: t3,
            expected: Expected {
                betti_f2: tag(vec![1, 3, 3, 1], "Kunneth product of three circles"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "product of orientable factors")),
                total_w: Some(tag(
                    vec![vec![1], vec![0, 0, 0], vec![0, 0, 0], vec![0]],
                    "tori are parallelizable",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim3Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "t4",
            complex: t4,
            expected: Expected {
                betti_f2: tag(vec![1, 4, 6, 4, 1], "Kunneth product of four circles"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(true, "product of orientable factors")),
                total_w: Some(tag(
                    vec![vec![1], vec![0; 4], vec![0; 6], vec![0; 4], vec![0]],
                    "tori are parallelizable",
                )),
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim4OrientedRule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "s1_x_klein",
            complex: s1_x_klein,
            expected: Expected {
                betti_f2: tag(vec![1, 3, 3, 1], "Kunneth product of circle and Klein"),
                is_pd: tag(true, "closed manifold"),
                orientable: Some(tag(false, "Klein factor is non-orientable")),
                total_w: None,
                verdict: Some(tag(
                    ExpectedVerdict::Reducible(RuleId::Dim3Rule),
                    "rule order",
                )),
            },
        },
        CatalogEntry {
            key: "solid_delta3",
            complex: SimplicialComplex::from_facets("solid_delta3", &[vec![0, 1, 2, 3]], &[])
                .expect("solid simplex"),
            expected: Expected {
                betti_f2: tag(vec![1, 0, 0, 0], "contractible"),
                is_pd: tag(false, "teaching entry: H_3 = 0, no fundamental class"),
                orientable: None,
                total_w: None,
                verdict: None,
            },
        },
    ];
    entries.into_iter().map(|e| (e.key, e)).collect()
}

static CATALOG: LazyLock<BTreeMap<&'static str, CatalogEntry>> = LazyLock::new(build_catalog);

pub fn get(key: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .get(key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))
}

/// Sorted catalog keys.
pub fn list() -> Vec<&'static str> {
    CATALOG.keys().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cohomology_f2;

    #[test]
    fn list_is_sorted_and_complete() {
        let keys = list();
        assert_eq!(keys.len(), 15);
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
        for key in [
            "s1",
            "s2",
            "s3",
            "s4",
            "rp2",
            "rp3",
            "rp4",
            "cp2",
            "t2",
            "klein",
            "surface_genus2",
            "t3",
            "t4",
            "s1_x_klein",
            "solid_delta3",
        ] {
            assert!(keys.contains(&key), "missing {key}");
        }
    }

    #[test]
    fn unknown_key_is_an_error() {
        assert!(matches!(get("nope"), Err(Error::UnknownKey(_))));
    }

    #[test]
    fn face_counts_of_named_entries() {
        let s2 = &get("s2").unwrap().complex;
        assert_eq!((s2.vertex_count(), s2.facets().len()), (4, 4));
        let rp2 = &get("rp2").unwrap().complex;
        assert_eq!((rp2.vertex_count(), rp2.facets().len()), (6, 10));
        assert_eq!(rp2.euler_characteristic(), 1);
        let cp2 = &get("cp2").unwrap().complex;
        assert_eq!((cp2.vertex_count(), cp2.facets().len()), (9, 36));
        assert_eq!(cp2.euler_characteristic(), 3);
        assert_eq!(cp2.face_count(1), 36);
        assert_eq!(cp2.face_count(2), 84);
        assert_eq!(cp2.face_count(3), 90);
    }

    #[test]
    fn product_with_point_relabels_identically() {
        let x = &get("rp2").unwrap().complex;
        let point = SimplicialComplex::from_facets("pt", &[vec![0]], &[]).unwrap();
        let p = product(x, &point).unwrap();
        assert_eq!(p.facets(), x.facets());
        let q = product(&point, x).unwrap();
        assert_eq!(q.facets(), x.facets());
    }

    #[test]
    fn circle_squared_is_the_18_triangle_torus() {
        let t2 = &get("t2").unwrap().complex;
        assert_eq!(t2.vertex_count(), 9);
        assert_eq!(t2.facets().len(), 18);
        assert_eq!(t2.euler_characteristic(), 0);
    }

    /// Kunneth oracle: the F2 Betti numbers of a product are the
    /// convolution of the factors'.
    fn kunneth(a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn betti_of(x: &SimplicialComplex) -> Vec<usize> {
        (0..=x.dim())
            .map(|k| cohomology_f2(x, k).unwrap().dim())
            .collect()
    }

    #[test]
    fn products_satisfy_kunneth() {
        let t3 = &get("t3").unwrap().complex;
        assert_eq!(betti_of(t3), kunneth(&[1, 2, 1], &[1, 1]));
        let sk = &get("s1_x_klein").unwrap().complex;
        assert_eq!(betti_of(sk), kunneth(&[1, 1], &[1, 2, 1]));
    }

    #[test]
    fn product_is_associative_on_betti_numbers() {
        let s1 = &get("s1").unwrap().complex;
        let left = product(&product(s1, s1).unwrap(), s1).unwrap();
        let right = product(s1, &product(s1, s1).unwrap()).unwrap();
        assert_eq!(betti_of(&left), betti_of(&right));
        assert_eq!(left.facets().len(), right.facets().len());
    }

    #[test]
    fn alternate_rp2_triangulation_reproduces_the_invariants() {
        // the quotient construction in dimension 2 gives a 13-vertex
        // projective plane; the pipeline must agree with the minimal one
        use crate::report::{analyze, AnalyzeOptions};
        let big = real_projective(2, "rp2_big");
        assert_eq!(big.vertex_count(), 13);
        assert_eq!(big.euler_characteristic(), 1);
        let report = analyze(&big, &AnalyzeOptions::default()).unwrap().report;
        assert!(report.pd_verified);
        assert_eq!(report.betti_f2, vec![1, 1, 1]);
        assert_eq!(report.orientable, Some(false));
        assert_eq!(report.sw, Some(vec![vec![1], vec![1], vec![1]]));
        assert_eq!(report.sw_spivak, Some(vec![vec![1], vec![1], vec![0]]));
        assert_eq!(
            report.verdict.unwrap().rule,
            Some(crate::verdict::RuleId::Dim2Rule)
        );
    }

    #[test]
    fn fresh_product_three_manifold_satisfies_the_wu_relation() {
        // rp2 x s1 is not a catalog entry; the 3-manifold identity
        // w2 = w1^2 must hold for it all the same
        use crate::duality::{verify_pd, wu_profile};
        use crate::products::{ring_of, ClassCoords};
        let rp2 = &get("rp2").unwrap().complex;
        let s1 = &get("s1").unwrap().complex;
        let x = product(rp2, s1).unwrap();
        assert_eq!(x.dim(), 3);
        let ring = ring_of(&x).unwrap();
        assert_eq!(ring.betti(), vec![1, 2, 2, 1]);
        let cert = verify_pd(&x, &ring).unwrap();
        assert!(!cert.orientable);
        let profile = wu_profile(&x, &ring, &cert);
        let w1 = ClassCoords {
            degree: 1,
            coords: profile.w.components[1].clone(),
        };
        assert_eq!(ring.mul(&w1, &w1).coords, profile.w.components[2]);
        assert!(profile.v.components[2].is_zero());
        let verdict = crate::verdict::reducibility_verdict(&x, &cert);
        assert_eq!(verdict.rule, Some(RuleId::Dim3Rule));
    }

    #[test]
    fn projective_space_construction_counts() {
        let rp3 = &get("rp3").unwrap().complex;
        assert_eq!(rp3.vertex_count(), 40);
        assert_eq!(rp3.facets().len(), 192);
        assert_eq!(rp3.euler_characteristic(), 0);
        let rp4 = &get("rp4").unwrap().complex;
        assert_eq!(rp4.vertex_count(), 121);
        assert_eq!(rp4.facets().len(), 1920);
        assert_eq!(rp4.euler_characteristic(), 1);
    }
}
