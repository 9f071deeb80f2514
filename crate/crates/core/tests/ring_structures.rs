//! The multiplicative structure of the catalog rings, verified through the
//! assembled tables.

use spivak_core::algebra::gf2::BitVec;
use spivak_core::catalog;
use spivak_core::products::{ring_of, ClassCoords};

fn gen(ring: &spivak_core::products::CohomologyRing, d: usize, i: usize) -> ClassCoords {
    ClassCoords {
        degree: d,
        coords: BitVec::from_indices(ring.dim_of(d), &[i]),
    }
}

#[test]
fn rp4_is_a_truncated_polynomial_ring() {
    let x = &catalog::get("rp4").unwrap().complex;
    let ring = ring_of(x).unwrap();
    assert_eq!(ring.betti(), vec![1, 1, 1, 1, 1]);
    let a = gen(&ring, 1, 0);
    let mut power = a.clone();
    for k in 2..=4 {
        power = ring.mul(&power, &a);
        assert_eq!(power.degree, k);
        assert!(!power.coords.is_zero(), "a^{k} must generate H^{k} of rp4");
    }
    let a5 = ring.mul(&power, &a);
    assert!(a5.coords.is_zero(), "a^5 lands above the top degree");
    // Sq^1(a) = a^2 and Sq^2(a^2) = a^4 in the truncated polynomial ring
    let a2 = ring.mul(&a, &a);
    assert_eq!(ring.sq(1, &a), a2);
    let a4 = ring.mul(&a2, &a2);
    assert_eq!(ring.sq(2, &a2), a4);
    assert!(ring.sq(1, &a2).coords.is_zero());
}

#[test]
fn torus_ring_is_exterior_on_two_generators() {
    let x = &catalog::get("t2").unwrap().complex;
    let ring = ring_of(x).unwrap();
    assert_eq!(ring.betti(), vec![1, 2, 1]);
    let a = gen(&ring, 1, 0);
    let b = gen(&ring, 1, 1);
    assert!(ring.mul(&a, &a).coords.is_zero());
    assert!(ring.mul(&b, &b).coords.is_zero());
    let ab = ring.mul(&a, &b);
    assert!(!ab.coords.is_zero(), "ab generates the top");
    assert_eq!(ring.mul(&b, &a), ab);
}

#[test]
fn four_sphere_has_no_products_between_positive_degrees() {
    let x = &catalog::get("s4").unwrap().complex;
    let ring = ring_of(x).unwrap();
    assert_eq!(ring.betti(), vec![1, 0, 0, 0, 1]);
    let top = gen(&ring, 4, 0);
    assert!(ring.mul(&top, &top).coords.is_zero());
    assert!(ring.sq(1, &top).coords.is_zero());
}

#[test]
fn cp2_generator_squares_onto_the_top() {
    let x = &catalog::get("cp2").unwrap().complex;
    let ring = ring_of(x).unwrap();
    let c = gen(&ring, 2, 0);
    let c2 = ring.mul(&c, &c);
    assert!(!c2.coords.is_zero(), "c^2 generates H^4 of cp2");
    assert_eq!(ring.sq(2, &c), c2, "Sq^2 on the middle is the squaring map");
    assert!(ring.sq(1, &c).coords.is_zero());
}
