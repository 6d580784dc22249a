use std::f64::consts::PI;

use hextorus::construct::{type_iii_centers, type_iii_minimal};
use hextorus::geom::{point_segment_distance, Point2, Polygon};
use hextorus::lattice::Modulus;
use hextorus::moduli::*;
use hextorus::validate::{validate, DEFAULT_TOL};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn fig7_tau() -> Modulus {
    Modulus::from_parts(0.0, 0.6).unwrap()
}

#[test]
fn type_i_nonempty_exactly_on_labelled_regions() {
    let tau = fig7_tau();
    let search = BBox::new(p(-4.0, -4.0), p(5.0, 5.0)).unwrap();
    let labelled = [
        (0.5, 0.3),
        (0.45, 0.775),
        (0.5, 1.2),
        (0.45, -0.175),
        (0.5, -0.6),
        (-0.5, 0.3),
        (-0.45, 1.2),
        (-0.45, -0.6),
        (1.5, 0.3),
        (1.55, 0.775),
        (1.6, 1.2),
        (1.55, -0.175),
        (1.6, -0.6),
        (2.25, 0.3),
        (2.3, 1.05),
        (2.3, -0.45),
    ];
    for (x, y) in labelled {
        assert!(type_i_region_nonempty(tau, p(x, y), search, 150).unwrap(), "({x},{y})");
    }
    let unlabelled = [(-0.75, 0.7), (-0.75, -0.1), (2.4, 0.65), (2.4, -0.05), (2.25, 1.45), (2.25, -0.85)];
    for (x, y) in unlabelled {
        assert!(!type_i_region_nonempty(tau, p(x, y), search, 150).unwrap(), "({x},{y})");
    }
}

#[test]
fn type_i_region_zero_is_nonempty() {
    let family = Family::TypeI {
        tau: fig7_tau(),
        initial: p(0.5, 0.3),
    };
    let g = sample_region(&family, family.default_bbox().unwrap(), 128, 128).unwrap();
    assert!(g.count() > 0);
}

#[test]
fn type_ii_component_counts() {
    let y = 2.0 / 3.0;
    for (i, expect) in [(p(0.25, 0.15), 1), (p(0.4, -0.08), 2)] {
        let family = Family::TypeII { y, initial: i };
        let g = sample_region(&family, family.default_bbox().unwrap(), 256, 256).unwrap();
        assert_eq!(connected_components(&g).0, expect, "i = {i}");
    }
}

#[test]
fn type_iii_primary_arc() {
    let arcs = type_iii_boundary(101).unwrap();
    assert_eq!(arcs.len(), 6);
    let [r, _, b] = type_iii_centers();
    let (r, b) = (Point2::from_complex(r), Point2::from_complex(b));
    let g1 = type_iii_g_prime();
    let primary = &arcs[0];
    assert!(primary[0].dist(g1) < 1e-15);
    assert!(primary[100].dist(r) < 1e-15);
    let mid = primary[50];
    assert!((mid.dist(b) - r.dist(b)).abs() < 1e-12);
    for &q in &primary[1..100] {
        let (u, v) = (g1 - q, r - q);
        let angle = u.cross(v).atan2(u.dot(v)).abs();
        assert!((angle - 5.0 * PI / 6.0).abs() < 1e-9);
    }
    // consecutive arcs join up into a closed loop
    for k in 0..6 {
        assert!(arcs[k].last().unwrap().dist(arcs[(k + 1) % 6][0]) < 1e-12);
    }
}

#[test]
fn type_iii_membership_straddles_the_arc() {
    let [_, _, b] = type_iii_centers();
    let b = Point2::from_complex(b);
    let arc = &type_iii_boundary(101).unwrap()[0];
    for &q in &arc[10..91] {
        let out = (q - b) * (1.0 / q.dist(b));
        assert!(membership(&Family::TypeIII, q - out * 1e-4));
        assert!(!membership(&Family::TypeIII, q + out * 1e-4));
    }
}

#[test]
fn type_iii_sampled_region_matches_arcs() {
    let ring = type_iii_boundary_ring(400).unwrap();
    let region = Polygon::new(ring.clone()).unwrap();
    let bbox = BBox::new(p(-1.0, -1.0), p(1.0, 1.0)).unwrap();
    let n = 512;
    let g = sample_region(&Family::TypeIII, bbox, n, n).unwrap();
    let cell = 2.0 / n as f64 * std::f64::consts::SQRT_2;
    for iy in 0..n {
        for ix in 0..n {
            let c = g.cell_center(ix, iy);
            if g.get(ix, iy) == region.contains(c) {
                continue;
            }
            let d = (0..ring.len())
                .map(|k| point_segment_distance(c, ring[k], ring[(k + 1) % ring.len()]))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= cell, "disagreement at {c}, {d} from the boundary");
        }
    }
}

#[test]
fn type_iii_members_validate() {
    let bbox = BBox::new(p(-0.5, -0.7), p(0.8, 0.7)).unwrap();
    let g = sample_region(&Family::TypeIII, bbox, 12, 12).unwrap();
    for iy in 0..12 {
        for ix in 0..12 {
            if g.get(ix, iy) {
                let t = type_iii_minimal(g.cell_center(ix, iy)).unwrap();
                assert!(validate(&t, DEFAULT_TOL).passed);
            }
        }
    }
}

#[test]
fn refinement_is_consistent() {
    let bbox = BBox::new(p(-1.0, -1.0), p(1.0, 1.0)).unwrap();
    let coarse = sample_region(&Family::TypeIII, bbox, 64, 64).unwrap();
    let fine = sample_region(&Family::TypeIII, bbox, 128, 128).unwrap();
    let mut checked = 0;
    for iy in 0..64 {
        for ix in 0..64 {
            let kids = [
                fine.get(2 * ix, 2 * iy),
                fine.get(2 * ix + 1, 2 * iy),
                fine.get(2 * ix, 2 * iy + 1),
                fine.get(2 * ix + 1, 2 * iy + 1),
            ];
            if kids.iter().all(|&k| k == kids[0]) {
                assert_eq!(coarse.get(ix, iy), kids[0]);
                checked += 1;
            }
        }
    }
    assert!(checked > 3900);
}

#[test]
fn sampling_is_deterministic() {
    let family = Family::TypeII {
        y: 1.0,
        initial: p(0.35, 0.05),
    };
    let bbox = family.default_bbox().unwrap();
    let a = sample_region(&family, bbox, 97, 61).unwrap();
    let b = sample_region(&family, bbox, 97, 61).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_pgm(), b.to_pgm());
}

proptest! {
    #[test]
    fn type_i_flip_equivariance(
        ix in -1.0..2.0f64, iy in -1.0..1.0f64, tx in -1.0..2.0f64, ty in -1.0..1.0f64, y in 0.3..1.5f64
    ) {
        let tau = Modulus::from_parts(0.0, y).unwrap();
        let (i, t) = (p(ix, iy), p(tx, ty));
        let a = membership(&Family::TypeI { tau, initial: i }, t);
        let b = membership(&Family::TypeI { tau, initial: type_i_flip(tau, i) }, type_i_flip(tau, t));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn type_iii_region_has_dihedral_symmetry(x in -0.5..0.8f64, y in -0.7..0.7f64) {
        let q = p(x, y).to_complex();
        let turn = num_complex::Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let a = membership(&Family::TypeIII, p(x, y));
        prop_assert_eq!(a, membership(&Family::TypeIII, Point2::from_complex(q * turn)));
        prop_assert_eq!(a, membership(&Family::TypeIII, p(x, -y)));
    }
}
