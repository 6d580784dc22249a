use hextorus::construct::*;
use hextorus::covering::*;
use hextorus::geom::Point2;
use hextorus::lattice::{covering_modulus, lattices_isometric, HnfTriple, Modulus, DEFAULT_SEARCH_BOUND};
use hextorus::validate::{validate, DEFAULT_TOL};

fn target() -> Modulus {
    Modulus::from_parts(0.0, 2.0 * 3f64.sqrt()).unwrap()
}

fn triples(rows: &[CoveringRow]) -> Vec<(u64, u64, u64)> {
    rows.iter().map(|r| (r.triple.m, r.triple.n, r.triple.l)).collect()
}

fn sigma(i: (f64, f64), t: (f64, f64)) -> FreeVector {
    FreeVector::new(Point2::new(i.0, i.1), Point2::new(t.0, t.1)).unwrap()
}

#[test]
fn twelve_tiles_of_the_2_sqrt3_torus() {
    let rows = enumerate_coverings(TilingType::I, target(), 12, DEFAULT_SEARCH_BOUND).unwrap();
    let mut expect = vec![(1, 6, 0), (2, 3, 0), (2, 3, 1), (3, 2, 0), (3, 2, 1), (3, 2, 2)];
    expect.extend((0..6).map(|l| (6, 1, l)));
    assert_eq!(triples(&rows), expect);

    let rows = enumerate_coverings(TilingType::II, target(), 12, DEFAULT_SEARCH_BOUND).unwrap();
    assert_eq!(triples(&rows), vec![(1, 3, 0), (3, 1, 0)]);

    let rows = enumerate_coverings(TilingType::III, target(), 12, DEFAULT_SEARCH_BOUND).unwrap();
    assert_eq!(triples(&rows), vec![(1, 4, 0)]);
}

#[test]
fn enumerated_moduli_round_trip() {
    for kind in [TilingType::I, TilingType::II, TilingType::III, TilingType::Central] {
        for row in enumerate_coverings(kind, target(), 12, DEFAULT_SEARCH_BOUND).unwrap() {
            let back = covering_modulus(row.minimal, row.triple);
            assert!(lattices_isometric(back, target(), 1e-9), "{kind:?} {}", row.triple);
        }
    }
}

#[test]
fn covers_of_minimal_tilings_validate() {
    let ii = type_ii_minimal(2.0 / 3.0_f64.sqrt(), sigma((0.35, 0.05), (0.12, 0.15))).unwrap();
    let c = build_cover(&ii, HnfTriple::new(1, 3, 0).unwrap()).unwrap();
    let r = validate(&c, DEFAULT_TOL);
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.census.f, 12);
    assert!(lattices_isometric(c.modulus(), target(), 1e-9));

    let iii = type_iii_minimal(Point2::new(0.05, 0.22)).unwrap();
    let c = build_cover(&iii, HnfTriple::new(1, 4, 0).unwrap()).unwrap();
    let r = validate(&c, DEFAULT_TOL);
    assert!(r.passed, "{:?}", r.failures);
    assert_eq!(r.census.f, 12);
    assert!(lattices_isometric(c.modulus(), target(), 1e-9));

    let i = type_i_minimal(Modulus::from_parts(0.25, 0.5).unwrap(), sigma((0.95, 0.2), (0.7, 0.25))).unwrap();
    let once = build_cover(&i, HnfTriple::new(2, 1, 1).unwrap()).unwrap();
    let twice = build_cover(&once, HnfTriple::new(3, 1, 2).unwrap()).unwrap();
    assert_eq!(twice.tile_count(), 12);
    assert!(validate(&twice, DEFAULT_TOL).passed);
}
