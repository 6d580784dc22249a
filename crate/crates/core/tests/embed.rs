use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use hextorus::construct::*;
use hextorus::embed::*;
use hextorus::geom::Point2;
use hextorus::lattice::{lattices_isometric, Modulus};
use hextorus::Error;
use num_complex::Complex64;

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

/// First terminal point on a coarse grid that gives a type I tiling.
fn some_type_i(tau: Modulus, initial: Point2) -> TorusTiling {
    for iy in 0..40 {
        for ix in 0..40 {
            let t = p(-1.0 + ix as f64 * 0.075, -1.0 + iy as f64 * 0.1);
            if let Ok(s) = FreeVector::new(initial, t) {
                if let Ok(tiling) = type_i_minimal(tau, s) {
                    return tiling;
                }
            }
        }
    }
    panic!("no type I tiling found near {initial}");
}

fn group_sizes(m: &Mesh3) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for g in &m.groups {
        *out.entry(g.expect("every quad is draped")).or_default() += 1;
    }
    out
}

#[test]
fn rect_conformality_converges_at_second_order() {
    let values: Vec<f64> = [16, 32, 64, 128]
        .iter()
        .map(|&n| conformality(&rect_torus_mesh(1.0, n, n).unwrap()))
        .collect();
    for w in values.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio - 4.0).abs() < 0.2, "{values:?}");
    }
}

#[test]
fn conformality_matches_conformal_factor_prediction() {
    // On a Möbius image of a flat torus the one-ring estimate has anisotropy
    // |(log c)''| δ²/2 to leading order, largest on the outer equator.
    let n = 256;
    let delta = 2.0 * PI / n as f64;
    let s2 = 2f64.sqrt();
    let predicted = delta * delta / 2.0 / (s2 - 1.0);
    let measured = conformality(&rect_torus_mesh(1.0, n, n).unwrap());
    assert!((measured / predicted - 1.0).abs() < 0.01, "{measured} vs {predicted}");
}

#[test]
fn sheared_mesh_is_not_conformal() {
    let m = Mesh3::grid(12, 12, false, |i, j| {
        let (u, v) = (i as f64 / 11.0, j as f64 / 11.0);
        ([u + 0.6 * v, v, 0.0], p(u, v))
    });
    assert!(conformality(&m) > 0.1);
}

#[test]
fn hopf_circle_behaves_like_rect() {
    let c = CurveParams::new(FRAC_PI_2, 0.0, 1).unwrap();
    let values: Vec<f64> = [16, 32, 64]
        .iter()
        .map(|&n| conformality(&hopf_torus_mesh(&c, n, n).unwrap().0))
        .collect();
    assert!((values[0] / values[1] - 4.0).abs() < 0.3, "{values:?}");
    assert!((values[1] / values[2] - 4.0).abs() < 0.3, "{values:?}");
    let (_, tau) = hopf_torus_mesh(&c, 16, 16).unwrap();
    assert!(lattices_isometric(tau, Modulus::from_parts(0.0, 1.0).unwrap(), 1e-9));
}

#[test]
fn hopf_circle_moduli() {
    for a in [0.5, 1.0, FRAC_PI_2] {
        let inv = curve_invariants(&CurveParams::new(a, 0.0, 1).unwrap(), 64).unwrap();
        let expect = Complex64::new(1.0 - a.cos(), a.sin()) / 2.0;
        assert!((inv.modulus.tau() - expect).norm() < 1e-6);
    }
}

#[test]
fn twisted_hopf_torus() {
    let c = CurveParams::new(1.0, 0.3, 3).unwrap();
    let (m, tau) = hopf_torus_mesh(&c, 96, 96).unwrap();
    assert!(tau.re().abs() > 1e-3);
    // the mesh's own flat lattice has the same shape as the invariants say
    assert!(lattices_isometric(m.uv_lattice.unwrap().modulus(), tau, 1e-8));
    assert!(conformality(&m) < 0.05);
    assert!(m.vertices.iter().all(|v| v.iter().all(|x| x.is_finite())));
}

#[test]
fn preset_is_hexagonal() {
    let inv = curve_invariants(&CurveParams::omega3_preset(), 256).unwrap();
    assert!(lattices_isometric(inv.modulus, Modulus::omega3(), 1e-9));
}

#[test]
fn pole_collision_is_reported() {
    let c = CurveParams::new(PI - 1e-13, 0.0, 1).unwrap();
    assert!(matches!(hopf_torus_mesh(&c, 16, 16), Err(Error::Pole { .. })));
}

#[test]
fn drape_type_ii_on_round_torus() {
    let y = 2.0 / 3.0f64.sqrt();
    let s = FreeVector::new(p(0.35, 0.05), p(0.12, 0.15)).unwrap();
    let t = type_ii_minimal(y, s).unwrap();
    let a = hextorus::lattice::sl2_reduce(t.modulus()).0.im();
    let m = drape_tiling(&t, &Embedding::Rect { a }, DrapeOptions::default()).unwrap();
    let sizes = group_sizes(&m);
    assert_eq!(sizes.len(), 4);
    // equal-area tiles cover equal numbers of equal-area quads, up to the
    // quads cut by tile boundaries
    let total = m.quads.len() as f64;
    for &n in sizes.values() {
        assert!((n as f64 / total - 0.25).abs() < 0.03, "{sizes:?}");
    }
    assert_eq!(m.lines.len(), 24);
    assert!(m.lines.iter().all(|(_, pts)| pts.len() > EDGE_SUBDIVISIONS));
}

#[test]
fn drape_type_i_on_rect_two() {
    let tau = Modulus::from_parts(0.0, 2.0).unwrap();
    let t = some_type_i(tau, p(0.3, 0.4));
    let m = drape_tiling(&t, &Embedding::Rect { a: 2.0 }, DrapeOptions::default()).unwrap();
    assert_eq!(group_sizes(&m).len(), 2);
    // tile boundaries lie on the embedded surface
    for (_, pts) in &m.lines {
        for q in pts {
            let rho = (q[0] * q[0] + q[1] * q[1]).sqrt();
            assert!(((rho - 5f64.sqrt()).powi(2) + q[2] * q[2] - 4.0).abs() < 1e-9);
        }
    }
}

#[test]
fn drape_type_iii_on_hopf_preset() {
    let t = type_iii_minimal(p(0.05, 0.22)).unwrap();
    let target = Embedding::Hopf {
        curve: CurveParams::omega3_preset(),
    };
    let opts = DrapeOptions {
        nu: 96,
        nv: 96,
        edge_subdivisions: 32,
    };
    let m = drape_tiling(&t, &target, opts).unwrap();
    assert_eq!(group_sizes(&m).len(), 3);
    // polylines are continuous: doubling the subdivision halves every step
    let fine = drape_tiling(&t, &target, DrapeOptions { edge_subdivisions: 64, ..opts }).unwrap();
    let max_step = |m: &Mesh3| {
        m.lines
            .iter()
            .flat_map(|(_, pts)| pts.windows(2).map(|w| (0..3).map(|k| (w[0][k] - w[1][k]).powi(2)).sum::<f64>().sqrt()))
            .fold(0.0, f64::max)
    };
    let ratio = max_step(&m) / max_step(&fine);
    assert!((ratio - 2.0).abs() < 0.1, "{ratio}");
}

#[test]
fn drape_refuses_mismatched_moduli() {
    let tau = Modulus::from_parts(0.0, 2.0).unwrap();
    let t = some_type_i(tau, p(0.3, 0.4));
    let err = drape_tiling(&t, &Embedding::Rect { a: 1.5 }, DrapeOptions::default()).unwrap_err();
    match err {
        Error::Incompatible { tiling, embedding } => {
            assert!(tiling.contains('2') && embedding.contains("1.5"), "{tiling} / {embedding}");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn obj_export_groups_tiles() {
    let tau = Modulus::from_parts(0.0, 2.0).unwrap();
    let t = some_type_i(tau, p(0.3, 0.4));
    let opts = DrapeOptions {
        nu: 24,
        nv: 24,
        edge_subdivisions: 32,
    };
    let m = drape_tiling(&t, &Embedding::Rect { a: 2.0 }, opts).unwrap();
    let obj = m.to_obj();
    assert!(obj.contains("\ng tile_0\n") && obj.contains("\ng tile_1\n"));
    let faces = obj.lines().filter(|l| l.starts_with("f ")).count();
    assert_eq!(faces, m.quads.len());
    let vcount = obj.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vcount, m.vertices.len() + m.lines.iter().map(|(_, p)| p.len()).sum::<usize>());
    let sample = obj.lines().next().unwrap();
    // nine significant digits
    assert!(sample.split_whitespace().skip(1).all(|x| x.split('e').next().unwrap().trim_start_matches('-').len() == 10));
    assert!(m.to_ply().starts_with("ply\nformat ascii 1.0\n"));
}
