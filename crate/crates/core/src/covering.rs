//! Covers of torus tilings by sublattices, minimality, and enumeration of
//! all tilings of a given torus with a given number of tiles.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{cover_tiles, Provenance, TorusTiling};
use crate::error::{Error, Result};
use crate::geom::{Point2, Polygon};
use crate::lattice::{
    covering_modulus, enumerate_hnf, hnf_of_basis, lattices_isometric, rectangular_solve, HnfTriple, IntBasis,
    Lattice, Modulus,
};

/// Tiling types that have a minimal tiling and a covering theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TilingType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "CS")]
    Central,
}

impl TilingType {
    /// Tiles in the minimal tiling.
    pub fn minimal_tiles(self) -> u64 {
        match self {
            TilingType::I => 2,
            TilingType::II => 4,
            TilingType::III => 3,
            TilingType::Central => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TilingType::I => "I",
            TilingType::II => "II",
            TilingType::III => "III",
            TilingType::Central => "CS",
        }
    }
}

impl std::str::FromStr for TilingType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(TilingType::I),
            "ii" | "2" => Ok(TilingType::II),
            "iii" | "3" => Ok(TilingType::III),
            "cs" | "central" => Ok(TilingType::Central),
            _ => Err(Error::Argument(format!("unknown tiling type {s:?}"))),
        }
    }
}

/// The tiling of the sublattice `Λ(m, n; l)` made of `m·n` copies of `t`.
pub fn build_cover(t: &TorusTiling, h: HnfTriple) -> Result<TorusTiling> {
    let h = HnfTriple::new(h.m, h.n, h.l)?;
    if h == HnfTriple::IDENTITY {
        return Ok(t.clone());
    }
    TorusTiling::new(
        t.lattice.sublattice(h),
        cover_tiles(t, h),
        Provenance::Cover {
            m: h.m,
            n: h.n,
            l: h.l,
            base: Box::new(t.provenance.clone()),
        },
    )
}

/// Whether `a + shift` and `b` have the same corners, up to a lattice vector.
fn same_tile_mod(lat: &Lattice, a: &Polygon, shift: Point2, b: &Polygon, tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let d = b.centroid() - (a.centroid() + shift);
    let rep = Point2::from_complex(lat.shortest_representative(d.to_complex()));
    if rep.norm() > tol {
        return false;
    }
    let lattice_shift = shift + (d - rep);
    let n = a.len();
    (0..n).any(|k| (0..n).all(|j| (a.corner(j) + lattice_shift).dist(b.corner(j + k)) <= tol))
}

/// True when no translation outside the lattice maps the tile set onto
/// itself modulo the lattice.
pub fn is_minimal(t: &TorusTiling, tol: f64) -> bool {
    let lat = t.lattice.reduced();
    let atol = tol * t.lattice.covolume().sqrt();
    let first = &t.tiles[0];
    t.tiles.iter().skip(1).all(|cand| {
        let shift = cand.centroid() - first.centroid();
        let rep = lat.shortest_representative(shift.to_complex());
        if rep.norm() <= atol {
            // coincides with tile 0 mod the lattice; not a symmetry witness
            return true;
        }
        let maps_all = t
            .tiles
            .iter()
            .all(|a| t.tiles.iter().any(|b| same_tile_mod(&lat, a, shift, b, atol)));
        !maps_all
    })
}

/// Image of the sublattice `Λ(m, n; l)` of `Z + Zω₃` under multiplication
/// by `ω₃`.
pub fn rotate_hexagonal(h: HnfTriple) -> HnfTriple {
    // a + bω ↦ aω + b(−1 − ω)
    let rot = |a: i64, b: i64| (-b, a - b);
    let (u, v) = (rot(h.m as i64, 0), rot(h.l as i64, h.n as i64));
    hnf_of_basis(IntBasis::new(u.0, u.1, v.0, v.1)).expect("rotation preserves the index")
}

/// Smallest triple in the orbit of `h` under the three-fold rotation.
fn hexagonal_representative(h: HnfTriple) -> HnfTriple {
    let r1 = rotate_hexagonal(h);
    h.min(r1).min(rotate_hexagonal(r1))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringRow {
    pub triple: HnfTriple,
    /// Modulus of the minimal tiling whose cover by `triple` is the target.
    pub minimal: Modulus,
}

/// All `(m, n; l)` with `f₀·mn = tile_count` such that a minimal tiling of
/// the given type covers the target torus via that triple.
///
/// The type III minimal tiling is invariant under the three-fold rotation of
/// its hexagonal lattice, so sublattices related by that rotation give
/// congruent covers; only the smallest triple of each orbit is listed.
pub fn enumerate_coverings(
    kind: TilingType,
    target: Modulus,
    tile_count: u64,
    bound: i64,
) -> Result<Vec<CoveringRow>> {
    let f0 = kind.minimal_tiles();
    if tile_count == 0 || !tile_count.is_multiple_of(f0) {
        return Err(Error::Argument(format!(
            "type {} tilings have a multiple of {f0} tiles, not {tile_count}",
            kind.name()
        )));
    }
    let triples = enumerate_hnf(tile_count / f0);
    let rows = triples
        .par_iter()
        .filter_map(|&h| {
            let minimal = match kind {
                TilingType::I | TilingType::Central => {
                    Modulus::new((target.tau() * h.m as f64 - h.l as f64) / h.n as f64).ok()
                }
                TilingType::II => rectangular_solve(target, h, bound),
                TilingType::III => {
                    let w = Modulus::omega3();
                    let canonical = hexagonal_representative(h) == h;
                    (canonical && lattices_isometric(covering_modulus(w, h), target, 1e-9)).then_some(w)
                }
            }?;
            Some(CoveringRow { triple: h, minimal })
        })
        .collect();
    Ok(rows)
}

/// Aligned text table, one line per `(m, n)` with its admissible `l`.
pub fn format_table(kind: TilingType, rows: &[CoveringRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<5} {:<8} {:<12} minimal modulus", "type", "(m,n)", "l");
    let mut k = 0;
    while k < rows.len() {
        let (m, n) = (rows[k].triple.m, rows[k].triple.n);
        let group: Vec<&CoveringRow> = rows[k..]
            .iter()
            .take_while(|r| r.triple.m == m && r.triple.n == n)
            .collect();
        let ls = group.iter().map(|r| r.triple.l.to_string()).collect::<Vec<_>>().join(",");
        let moduli = group.iter().map(|r| r.minimal.to_string()).collect::<Vec<_>>().join("; ");
        let _ = writeln!(out, "{:<5} {:<8} {:<12} {}", kind.name(), format!("({m},{n})"), ls, moduli);
        k += group.len();
    }
    if rows.is_empty() {
        let _ = writeln!(out, "{:<5} none", kind.name());
    }
    out
}
