//! Independent checker for torus tilings.
//!
//! Works purely from the lattice and the tile polygons: corners are
//! clustered into vertices modulo the lattice, sides are cut at vertices
//! lying on them and the pieces are matched pairwise in reverse. Nothing
//! here looks at how a tiling was constructed.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::construct::{TorusTiling, AREA_TOL};
use crate::error::{Error, Result};
use crate::geom::{congruent, point_segment_distance, Point2};
use crate::lattice::Lattice;

/// Default clustering tolerance, relative to the square root of the
/// fundamental-domain area.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Factor between the merge tolerance and the edge of the guard band.
pub const GUARD_FACTOR: f64 = 3.0;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCensus {
    pub v: usize,
    pub h: usize,
    pub e: usize,
    pub f: usize,
    /// Full vertices by degree.
    pub full_degrees: BTreeMap<usize, usize>,
    /// Half vertices by degree.
    pub half_degrees: BTreeMap<usize, usize>,
}

impl TilingCensus {
    /// `(v + h) − e + f`, zero for any tiling of a torus.
    pub fn euler(&self) -> i64 {
        (self.v + self.h) as i64 - self.e as i64 + self.f as i64
    }

    /// `6f + h − 2e`, zero when every side piece is matched.
    pub fn side_count_defect(&self) -> i64 {
        6 * self.f as i64 + self.h as i64 - 2 * self.e as i64
    }

    /// `2v + h − 4f`.
    pub fn corner_count_defect(&self) -> i64 {
        2 * self.v as i64 + self.h as i64 - 4 * self.f as i64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    NotHexagon { tile: usize, corners: usize },
    NotSimple { tile: usize },
    UnmatchedSide { tile: usize, side: usize, from: [f64; 2], to: [f64; 2] },
    OvermatchedSide { tile: usize, side: usize, partners: usize },
    BadVertexDegree { at: [f64; 2], degree: usize },
    HalfVertex { at: [f64; 2], degree: usize },
    AngleSum { at: [f64; 2], sum: f64 },
    NonCongruentTile { tile: usize },
    Area { tiles: f64, domain: f64 },
    CensusIdentity { name: String, defect: i64 },
    Clustering { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub census: TilingCensus,
    pub failures: Vec<Failure>,
}

fn arr(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

struct Vertex {
    rep: Point2,
    corners: Vec<(usize, usize)>,
    /// Sides `(tile, stored index)` passing through the vertex.
    through: Vec<(usize, usize)>,
}

struct Piece {
    tile: usize,
    side: usize,
    from: Point2,
    to: Point2,
    v_from: usize,
    v_to: usize,
}

struct Analysis {
    vertices: Vec<Vertex>,
    pieces: Vec<Piece>,
    partners: Vec<Vec<usize>>,
}

impl Analysis {
    fn is_half(&self, v: &Vertex, angle: impl Fn(usize, usize) -> f64) -> bool {
        if !v.through.is_empty() {
            return true;
        }
        // a lone straight corner between two tiles is a half vertex too
        v.corners.len() <= 2 && v.corners.iter().any(|&(t, k)| (angle(t, k) - TAU / 2.0).abs() < 1e-9)
    }
}

/// Closest translate of `p` to the segment `ab`, with its distance.
fn torus_segment(lat: &Lattice, p: Point2, a: Point2, b: Point2) -> (Point2, f64) {
    let base = a.to_complex() + lat.shortest_representative(p.to_complex() - a.to_complex());
    let mut best = (Point2::from_complex(base), f64::INFINITY);
    for j in -1..=1 {
        for k in -1..=1 {
            let q = Point2::from_complex(base + lat.point(j, k));
            let d = point_segment_distance(q, a, b);
            if d < best.1 {
                best = (q, d);
            }
        }
    }
    best
}

fn analyse(t: &TorusTiling, tol: f64) -> Result<(Analysis, Lattice, f64)> {
    let lat = t.lattice.reduced();
    let atol = tol * t.lattice.covolume().sqrt();
    let guard = GUARD_FACTOR * atol;

    // cluster corners into vertices
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vid: Vec<Vec<usize>> = Vec::with_capacity(t.tiles.len());
    for (ti, tile) in t.tiles.iter().enumerate() {
        let mut ids = Vec::with_capacity(tile.len());
        for (k, &c) in tile.corners().iter().enumerate() {
            let mut hit = None;
            for (id, v) in vertices.iter().enumerate() {
                let d = lat.torus_distance(c, v.rep);
                if d <= atol {
                    hit.get_or_insert(id);
                } else if d < guard {
                    return Err(Error::ToleranceAmbiguity {
                        distance: d,
                        tol: atol,
                        guard,
                    });
                }
            }
            let id = hit.unwrap_or_else(|| {
                vertices.push(Vertex {
                    rep: c,
                    corners: Vec::new(),
                    through: Vec::new(),
                });
                vertices.len() - 1
            });
            vertices[id].corners.push((ti, k));
            ids.push(id);
        }
        vid.push(ids);
    }

    // cut sides at vertices on their interior
    let mut pieces = Vec::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        let n = tile.len();
        for k in 0..n {
            let (a, b) = (tile.corner(k), tile.corner(k + 1));
            let (va, vb) = (vid[ti][k], vid[ti][(k + 1) % n]);
            let len = a.dist(b);
            let mut cuts: Vec<(f64, usize, Point2)> = Vec::new();
            for (id, v) in vertices.iter_mut().enumerate() {
                if id == va || id == vb {
                    continue;
                }
                let (q, d) = torus_segment(&lat, v.rep, a, b);
                if d <= atol && q.dist(a) > atol && q.dist(b) > atol {
                    cuts.push(((q - a).dot(b - a) / len, id, q));
                    v.through.push((ti, k));
                } else if d < guard && q.dist(a) > guard && q.dist(b) > guard {
                    return Err(Error::ToleranceAmbiguity {
                        distance: d,
                        tol: atol,
                        guard,
                    });
                }
            }
            cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut from = (a, va);
            for (_, id, q) in cuts.into_iter().chain(std::iter::once((len, vb, b))) {
                pieces.push(Piece {
                    tile: ti,
                    side: k,
                    from: from.0,
                    to: q,
                    v_from: from.1,
                    v_to: id,
                });
                from = (q, id);
            }
        }
    }

    // reversed pieces related by a single lattice translation
    let mut by_ends: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (idx, p) in pieces.iter().enumerate() {
        by_ends.entry((p.v_from, p.v_to)).or_default().push(idx);
    }
    let mut partners = vec![Vec::new(); pieces.len()];
    for (idx, p) in pieces.iter().enumerate() {
        let Some(cands) = by_ends.get(&(p.v_to, p.v_from)) else {
            continue;
        };
        for &c in cands {
            if c == idx {
                continue;
            }
            let q = &pieces[c];
            let shift: Complex64 = q.from.to_complex() - p.to.to_complex();
            let shift2: Complex64 = q.to.to_complex() - p.from.to_complex();
            if (shift - shift2).norm() <= 2.0 * atol {
                partners[idx].push(c);
            }
        }
    }
    Ok((
        Analysis {
            vertices,
            pieces,
            partners,
        },
        lat,
        atol,
    ))
}

fn build_census(t: &TorusTiling, a: &Analysis) -> TilingCensus {
    let angle = |ti: usize, k: usize| t.tiles[ti].corner_angle(k).unwrap_or(f64::NAN);
    let mut census = TilingCensus {
        f: t.tiles.len(),
        ..TilingCensus::default()
    };
    for v in &a.vertices {
        if a.is_half(v, angle) {
            census.h += 1;
            *census.half_degrees.entry(v.corners.len() + v.through.len()).or_default() += 1;
        } else {
            census.v += 1;
            *census.full_degrees.entry(v.corners.len()).or_default() += 1;
        }
    }
    // each matched pair of pieces is one edge; stray pieces count alone
    let mut used = vec![false; a.pieces.len()];
    for idx in 0..a.pieces.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        if let Some(&c) = a.partners[idx].iter().find(|&&c| !used[c]) {
            used[c] = true;
        }
        census.e += 1;
    }
    census
}

/// Counts full and half vertices, edges and faces.
pub fn census(t: &TorusTiling, tol: f64) -> Result<TilingCensus> {
    let (a, _, _) = analyse(t, tol)?;
    Ok(build_census(t, &a))
}

/// Checks that `t` is a side-to-side monohedral hexagonal tiling whose
/// vertices are all full of degree 3.
pub fn validate(t: &TorusTiling, tol: f64) -> ValidationReport {
    let mut failures = Vec::new();
    for (ti, tile) in t.tiles.iter().enumerate() {
        if tile.len() != 6 {
            failures.push(Failure::NotHexagon {
                tile: ti,
                corners: tile.len(),
            });
        }
        if !tile.is_simple(tol * t.lattice.covolume().sqrt()) {
            failures.push(Failure::NotSimple { tile: ti });
        }
    }

    let (analysis, _, atol) = match analyse(t, tol) {
        Ok(x) => x,
        Err(e) => {
            failures.push(Failure::Clustering { message: e.to_string() });
            return ValidationReport {
                passed: false,
                census: TilingCensus {
                    f: t.tiles.len(),
                    ..TilingCensus::default()
                },
                failures,
            };
        }
    };
    let census = build_census(t, &analysis);

    for (idx, piece) in analysis.pieces.iter().enumerate() {
        match analysis.partners[idx].len() {
            1 => {}
            0 => failures.push(Failure::UnmatchedSide {
                tile: piece.tile,
                side: piece.side,
                from: arr(piece.from),
                to: arr(piece.to),
            }),
            k => failures.push(Failure::OvermatchedSide {
                tile: piece.tile,
                side: piece.side,
                partners: k,
            }),
        }
    }

    let angle = |ti: usize, k: usize| t.tiles[ti].corner_angle(k).unwrap_or(f64::NAN);
    for v in &analysis.vertices {
        if analysis.is_half(v, angle) {
            failures.push(Failure::HalfVertex {
                at: arr(v.rep),
                degree: v.corners.len() + v.through.len(),
            });
            continue;
        }
        if v.corners.len() != 3 {
            failures.push(Failure::BadVertexDegree {
                at: arr(v.rep),
                degree: v.corners.len(),
            });
        }
        let sum: f64 = v.corners.iter().map(|&(ti, k)| angle(ti, k)).sum();
        if !((sum - TAU).abs() <= tol.max(1e-12)) {
            failures.push(Failure::AngleSum { at: arr(v.rep), sum });
        }
    }

    if let Some(first) = t.tiles.first() {
        for (ti, tile) in t.tiles.iter().enumerate().skip(1) {
            if congruent(first, tile, atol).is_none() {
                failures.push(Failure::NonCongruentTile { tile: ti });
            }
        }
    }

    let area: f64 = t.tiles.iter().map(|p| p.signed_area().abs()).sum();
    let domain = t.lattice.covolume();
    if ((area - domain) / domain).abs() > AREA_TOL {
        failures.push(Failure::Area { tiles: area, domain });
    }

    for (name, defect) in [
        ("(v+h)-e+f", census.euler()),
        ("6f+h-2e", census.side_count_defect()),
        ("2v+h-4f", census.corner_count_defect()),
    ] {
        if defect != 0 {
            failures.push(Failure::CensusIdentity {
                name: name.into(),
                defect,
            });
        }
    }

    ValidationReport {
        passed: failures.is_empty(),
        census,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::geom::Polygon;
    use crate::lattice::Modulus;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn type_i() -> TorusTiling {
        let tau = Modulus::from_parts(0.25, 0.5).unwrap();
        type_i_minimal(tau, FreeVector::new(p(0.95, 0.2), p(0.7, 0.25)).unwrap()).unwrap()
    }

    #[test]
    fn type_iii_regular_census() {
        let t = type_iii_minimal(Point2::ORIGIN).unwrap();
        let c = census(&t, DEFAULT_TOL).unwrap();
        assert_eq!((c.f, c.v, c.e, c.h), (3, 6, 9, 0));
        assert!(validate(&t, DEFAULT_TOL).passed);
    }

    #[test]
    fn type_i_census() {
        let r = validate(&type_i(), DEFAULT_TOL);
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!((r.census.f, r.census.v, r.census.e, r.census.h), (2, 4, 6, 0));
    }

    #[test]
    fn shifted_tile_fails() {
        let mut t = type_i();
        t.tiles[1] = t.tiles[1].translated(p(0.01, 0.0));
        let r = validate(&t, DEFAULT_TOL);
        assert!(!r.passed);
        assert!(r.census.h > 0 || r.failures.iter().any(|f| matches!(f, Failure::UnmatchedSide { .. })));
    }

    #[test]
    fn translated_instead_of_rotated_fails() {
        let mut t = type_i();
        let shift = t.tiles[1].centroid() - t.tiles[0].centroid();
        t.tiles[1] = t.tiles[0].translated(shift);
        let r = validate(&t, DEFAULT_TOL);
        assert!(!r.passed);
        assert!(r.failures.iter().any(|f| matches!(f, Failure::UnmatchedSide { .. })));
    }

    #[test]
    fn ambiguous_clustering_is_an_error() {
        let mut t = type_i();
        let moved: Vec<Point2> = t.tiles[1]
            .corners()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k == 0 { c + p(2e-9, 0.0) } else { c })
            .collect();
        t.tiles[1] = Polygon::with_labels(moved, t.tiles[1].labels().to_vec()).unwrap();
        assert!(matches!(census(&t, 1e-9), Err(Error::ToleranceAmbiguity { .. })));
        assert!(!validate(&t, 1e-9).passed);
    }

    #[test]
    fn brick_wall_has_half_vertices() {
        // offset rows of rectangles, each split into a degenerate hexagon
        let tiles = vec![
            Polygon::new(vec![p(0.0, 0.0), p(0.5, 0.0), p(1.0, 0.0), p(1.0, 0.5), p(0.5, 0.5), p(0.0, 0.5)]).unwrap(),
            Polygon::new(vec![p(0.25, 0.5), p(0.75, 0.5), p(1.25, 0.5), p(1.25, 1.0), p(0.75, 1.0), p(0.25, 1.0)]).unwrap(),
        ];
        let lat = Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
        let t = TorusTiling::new(lat, tiles, Provenance::External).unwrap();
        let r = validate(&t, DEFAULT_TOL);
        assert!(!r.passed);
        assert!(r.census.h > 0);
    }
}
