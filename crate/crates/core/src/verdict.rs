//! The reducibility verdict engine and the d2 data of the twisted
//! Atiyah-Hirzebruch spectral sequence used in the dimension-4 analysis.
//!
//! The engine only ever answers Reducible (with the rule that certifies it)
//! or Undetermined (with the location of the outstanding obstruction). No
//! computable formula for the degree-3 exotic obstruction class exists, so
//! abstention is the honest third outcome.

use serde::{Deserialize, Serialize};

use crate::algebra::gf2::{BitVec, F2Matrix};
use crate::complex::{ComplexFlag, SimplicialComplex};
use crate::duality::{kronecker_matrix, PDCertificate, WuProfile};
use crate::error::{Error, Result};
use crate::products::{ClassCoords, CohomologyRing};

/// Identifiers of the positive verdict rules, in priority order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    ManifoldRule,
    Dim2Rule,
    Dim3Rule,
    Dim4OrientedRule,
    Dim4H1ZeroRule,
    Dim4H3ZeroRule,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ManifoldRule => "ManifoldRule",
            Self::Dim2Rule => "Dim2Rule",
            Self::Dim3Rule => "Dim3Rule",
            Self::Dim4OrientedRule => "Dim4OrientedRule",
            Self::Dim4H1ZeroRule => "Dim4H1ZeroRule",
            Self::Dim4H3ZeroRule => "Dim4H3ZeroRule",
        }
    }

    /// The theorem each rule certifies, as fixed citation text.
    pub fn citation(self) -> &'static str {
        match self {
            Self::ManifoldRule => {
                "a space homotopy equivalent to a closed smooth manifold is reducible"
            }
            Self::Dim2Rule => {
                "every Poincare duality space of dimension at most 2 is reducible"
            }
            Self::Dim3Rule => "every 3-dimensional Poincare duality space is reducible",
            Self::Dim4OrientedRule => {
                "every oriented 4-dimensional Poincare duality space is reducible"
            }
            Self::Dim4H1ZeroRule => {
                "a 4-dimensional Poincare duality space with H_1(X;Z/2) = 0 has vanishing obstruction group H^3(X;Z/2)"
            }
            Self::Dim4H3ZeroRule => {
                "in dimension 4 the obstruction lies in H^3(X;Z/2), which vanishes here"
            }
        }
    }
}

pub const UNDETERMINED_CITATION: &str =
    "in dimension at most 4 the sole obstruction to reducibility is the exotic class e_1(SF(X)) in H^3(X;Z/2)";

pub const UNDETERMINED_NOTE: &str = "obstruction e_1(SF(X)) in H^3(X;Z/2) not computed";

pub const NONORIENTABLE_DIM4_NOTE: &str =
    "non-orientable 4-dimensional Poincare duality spaces with non-reducible Spivak normal fibration exist (Hambleton-Milgram)";

pub const HIGH_DIMENSION_NOTE: &str =
    "no positive rule applies in dimension 5 and higher, where non-reducible Poincare duality spaces exist";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Reducible,
    Undetermined,
}

/// Outcome of the reducibility engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// The certifying rule; absent when undetermined.
    pub rule: Option<RuleId>,
    pub citation: String,
    pub notes: Option<String>,
}

/// The first rule in priority order whose hypothesis holds, if any.
fn first_matching_rule(
    n: usize,
    manifold_flag: bool,
    orientable: bool,
    b1: usize,
    b3: usize,
) -> Option<RuleId> {
    if manifold_flag {
        return Some(RuleId::ManifoldRule);
    }
    if n <= 2 {
        return Some(RuleId::Dim2Rule);
    }
    if n == 3 {
        return Some(RuleId::Dim3Rule);
    }
    if n == 4 {
        if orientable {
            return Some(RuleId::Dim4OrientedRule);
        }
        if b1 == 0 {
            return Some(RuleId::Dim4H1ZeroRule);
        }
        if b3 == 0 {
            return Some(RuleId::Dim4H3ZeroRule);
        }
    }
    None
}

/// Apply the verdict rules in their fixed priority order.
pub fn reducibility_verdict(complex: &SimplicialComplex, cert: &PDCertificate) -> Verdict {
    let n = cert.n;
    let rule = first_matching_rule(
        n,
        complex.has_flag(ComplexFlag::Manifold),
        cert.orientable,
        cert.betti(1),
        cert.betti(3),
    );
    match rule {
        Some(rule) => Verdict {
            outcome: Outcome::Reducible,
            rule: Some(rule),
            citation: rule.citation().to_string(),
            notes: None,
        },
        None => {
            let mut notes = UNDETERMINED_NOTE.to_string();
            if n == 4 && !cert.orientable {
                notes.push_str("; ");
                notes.push_str(NONORIENTABLE_DIM4_NOTE);
            }
            if n >= 5 {
                notes.push_str("; ");
                notes.push_str(HIGH_DIMENSION_NOTE);
            }
            Verdict {
                outcome: Outcome::Undetermined,
                rule: None,
                citation: UNDETERMINED_CITATION.to_string(),
                notes: Some(notes),
            }
        }
    }
}

/// The degree-2 differential data of the twisted spectral sequence on a
/// 4-dimensional complex.
pub struct D2Data {
    /// Coordinates of w_2 in the H^2 basis.
    pub w2: BitVec,
    /// Matrix of x -> Sq^2(x) + w_2 cup x : H^2 -> H^4.
    pub sq2_w2_matrix: F2Matrix,
    /// Its adjoint under the Kronecker pairings: H_4 -> H_2.
    pub d2_matrix: F2Matrix,
    /// Image of the fundamental class, in H_2 coordinates.
    pub d2_of_fundamental: BitVec,
}

/// Assemble the d2 data: the map `x -> Sq^2(x) + w_2 cup x` on H^2 and its
/// pairing-dual applied to the fundamental class. For orientable inputs the
/// image of the fundamental class vanishes (w_2 = v_2 there), which the
/// test suite asserts.
pub fn ahss_d2(
    complex: &SimplicialComplex,
    ring: &CohomologyRing,
    cert: &PDCertificate,
    profile: &WuProfile,
) -> Result<D2Data> {
    if complex.dim() != 4 || cert.n != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: cert.n.min(complex.dim()),
        });
    }
    let b2 = ring.dim_of(2);
    let b4 = ring.dim_of(4);
    let w2 = profile.w.component(2).clone();
    let w2_class = ClassCoords {
        degree: 2,
        coords: w2.clone(),
    };

    let mut phi = F2Matrix::zeros(b4, b2);
    for j in 0..b2 {
        let x = ClassCoords {
            degree: 2,
            coords: BitVec::from_indices(b2, &[j]),
        };
        let mut image = ring.sq(2, &x).coords;
        image.xor_assign(&ring.mul(&w2_class, &x).coords);
        for r in image.iter_ones() {
            phi.set(r, j, true);
        }
    }

    let d2_matrix = adjoint_under_kronecker(ring, cert, &phi, 2, 4);
    let d2_of_fundamental = d2_matrix.apply(&cert.fundamental_coords());
    Ok(D2Data {
        w2,
        sq2_w2_matrix: phi,
        d2_matrix,
        d2_of_fundamental,
    })
}

/// Adjoint of a cohomology map H^s -> H^t under the Kronecker pairings,
/// as a map H_t -> H_s on coordinates: K_s * M = Phi^T * K_t.
fn adjoint_under_kronecker(
    ring: &CohomologyRing,
    cert: &PDCertificate,
    phi: &F2Matrix,
    s: usize,
    t: usize,
) -> F2Matrix {
    let k_s = kronecker_matrix(ring, cert, s);
    let k_t = kronecker_matrix(ring, cert, t);
    let k_s_inv = k_s
        .inverse()
        .expect("Kronecker evaluation is nondegenerate over a field");
    k_s_inv.mul(&phi.transpose()).mul(&k_t)
}

/// The adjoint of Sq^2 : H^1 -> H^3 as a matrix H_3 -> H_1. Squares vanish
/// above the degree of their argument, so this is the zero matrix on every
/// 4-dimensional input; returned for the caller to inspect.
pub fn d2_h3_check(
    complex: &SimplicialComplex,
    ring: &CohomologyRing,
    cert: &PDCertificate,
) -> Result<F2Matrix> {
    if complex.dim() != 4 || cert.n != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: cert.n.min(complex.dim()),
        });
    }
    let b1 = ring.dim_of(1);
    let b3 = ring.dim_of(3);
    let mut phi = F2Matrix::zeros(b3, b1);
    for j in 0..b1 {
        let x = ClassCoords {
            degree: 1,
            coords: BitVec::from_indices(b1, &[j]),
        };
        let image = ring.sq(2, &x).coords;
        for r in image.iter_ones() {
            phi.set(r, j, true);
        }
    }
    let adj = adjoint_under_kronecker(ring, cert, &phi, 1, 3);
    debug_assert!(adj.is_zero(), "Sq^2 vanishes on degree-1 classes");
    Ok(adj)
}
