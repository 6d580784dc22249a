//! Moduli spaces of minimal tilings: membership, sampled regions and their
//! connected components, and the analytic boundary of the type III region.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{
    central_minimal, type_i_minimal, type_ii_minimal, type_iii_centers, type_iii_minimal, FreeVector,
};
use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::lattice::{Lattice, Modulus};

/// Default sampling resolution per axis.
pub const DEFAULT_RESOLUTION: usize = 512;

/// A family of minimal tilings with everything but one point fixed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Family {
    /// Free point: the terminal point `t` of the free vector.
    #[serde(rename = "i")]
    TypeI { tau: Modulus, initial: Point2 },
    /// Free point: the terminal point `t`; the lattice is `Z + iyZ`.
    #[serde(rename = "ii")]
    TypeII { y: f64, initial: Point2 },
    /// Free point: the corner `P`.
    #[serde(rename = "iii")]
    TypeIII,
    /// Free point: the corner `u`.
    #[serde(rename = "cs")]
    Central { alpha: Complex64, beta: Complex64 },
}

impl Family {
    /// Lattice on which the family lives.
    pub fn lattice(&self) -> Result<Lattice> {
        match *self {
            Family::TypeI { tau, .. } => Ok(Lattice::standard(tau)),
            Family::TypeII { y, .. } => Ok(Lattice::standard(Modulus::from_parts(0.0, y)?)),
            Family::TypeIII => Ok(Lattice::standard(Modulus::omega3())),
            Family::Central { alpha, beta } => Lattice::new(alpha, beta),
        }
    }

    /// Bounding box of the fundamental domain grown by 1.5 domains each way.
    pub fn default_bbox(&self) -> Result<BBox> {
        let lat = self.lattice()?;
        let (a, b) = (lat.alpha, lat.beta);
        let mut corners = vec![Complex64::new(0.0, 0.0), a, b, a + b];
        if let Family::TypeII { .. } = self {
            // the rectangle is centred on the origin
            corners = corners.iter().map(|&z| z - (a + b) / 2.0).collect();
        }
        let xs = corners.iter().map(|z| z.re);
        let ys = corners.iter().map(|z| z.im);
        let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
        let (y0, y1) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
        let (w, h) = (x1 - x0, y1 - y0);
        BBox::new(
            Point2::new(x0 - 1.5 * w, y0 - 1.5 * h),
            Point2::new(x1 + 1.5 * w, y1 + 1.5 * h),
        )
    }
}

/// Whether the family's construction succeeds at `free` with a simple tile.
pub fn membership(family: &Family, free: Point2) -> bool {
    let built = match *family {
        Family::TypeI { tau, initial } => {
            FreeVector::new(initial, free).and_then(|s| type_i_minimal(tau, s)).map(drop)
        }
        Family::TypeII { y, initial } => {
            FreeVector::new(initial, free).and_then(|s| type_ii_minimal(y, s)).map(drop)
        }
        Family::TypeIII => type_iii_minimal(free).map(drop),
        Family::Central { alpha, beta } => central_minimal(alpha, beta, free).map(drop),
    };
    built.is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn new(min: Point2, max: Point2) -> Result<Self> {
        if !(min.x < max.x && min.y < max.y) || !min.is_finite() || !max.is_finite() {
            return Err(Error::Argument(format!("degenerate box {min} – {max}")));
        }
        Ok(BBox { min, max })
    }
}

/// Occupancy of a rectangular grid of cells; row `0` is at the bottom.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub bbox: BBox,
    pub nx: usize,
    pub ny: usize,
    pub bits: Vec<bool>,
}

impl RegionGrid {
    pub fn cell_center(&self, ix: usize, iy: usize) -> Point2 {
        cell_center(&self.bbox, self.nx, self.ny, ix, iy)
    }

    pub fn get(&self, ix: usize, iy: usize) -> bool {
        self.bits[iy * self.nx + ix]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Binary PGM (P5), top row first, 255 for members.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.nx, self.ny).into_bytes();
        for iy in (0..self.ny).rev() {
            out.extend((0..self.nx).map(|ix| if self.get(ix, iy) { 255u8 } else { 0 }));
        }
        out
    }
}

fn cell_center(b: &BBox, nx: usize, ny: usize, ix: usize, iy: usize) -> Point2 {
    Point2::new(
        b.min.x + (ix as f64 + 0.5) * (b.max.x - b.min.x) / nx as f64,
        b.min.y + (iy as f64 + 0.5) * (b.max.y - b.min.y) / ny as f64,
    )
}

/// Evaluates `pred` at every cell centre. Rows are computed in parallel.
pub fn sample_with(bbox: BBox, nx: usize, ny: usize, pred: impl Fn(Point2) -> bool + Sync) -> Result<RegionGrid> {
    if nx < 2 || ny < 2 {
        return Err(Error::Argument(format!("grid {nx}×{ny} is below 2×2")));
    }
    let bits = (0..ny)
        .into_par_iter()
        .flat_map_iter(|iy| {
            let pred = &pred;
            (0..nx).map(move |ix| pred(cell_center(&bbox, nx, ny, ix, iy)))
        })
        .collect();
    Ok(RegionGrid { bbox, nx, ny, bits })
}

/// Membership sampled at cell centres.
pub fn sample_region(family: &Family, bbox: BBox, nx: usize, ny: usize) -> Result<RegionGrid> {
    family.lattice()?;
    sample_with(bbox, nx, ny, |p| membership(family, p))
}

/// 4-connected components of the member cells. Labels are `0` for
/// non-members and `1..=count` in scan order otherwise.
pub fn connected_components(g: &RegionGrid) -> (usize, Vec<u32>) {
    let mut labels = vec![0u32; g.bits.len()];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..g.bits.len() {
        if !g.bits[start] || labels[start] != 0 {
            continue;
        }
        count += 1;
        labels[start] = count;
        queue.push_back(start);
        while let Some(k) = queue.pop_front() {
            let (ix, iy) = (k % g.nx, k / g.nx);
            let mut visit = |j: usize| {
                if g.bits[j] && labels[j] == 0 {
                    labels[j] = count;
                    queue.push_back(j);
                }
            };
            if ix > 0 {
                visit(k - 1);
            }
            if ix + 1 < g.nx {
                visit(k + 1);
            }
            if iy > 0 {
                visit(k - g.nx);
            }
            if iy + 1 < g.ny {
                visit(k + g.nx);
            }
        }
    }
    (count as usize, labels)
}

/// Whether some terminal point in `bbox` gives a type I tiling with the
/// given initial point, searched on an `n × n` grid.
pub fn type_i_region_nonempty(tau: Modulus, initial: Point2, bbox: BBox, n: usize) -> Result<bool> {
    let family = Family::TypeI { tau, initial };
    Ok(sample_region(&family, bbox, n, n)?.count() > 0)
}

/// The vertical flip `z ↦ z̄ + τ` relating the type I moduli pictures of a
/// rectangular torus.
pub fn type_i_flip(tau: Modulus, z: Point2) -> Point2 {
    Point2::from_complex(z.to_complex().conj() + tau.tau())
}

/// `G′ = 2/3`, the corner of the type III hexagon opposite `P`.
pub fn type_iii_g_prime() -> Point2 {
    Point2::new(2.0 / 3.0, 0.0)
}

/// The six arcs bounding the type III moduli region, in order around it,
/// each sampled with `samples` points (consecutive arcs share endpoints).
///
/// The first is the arc from `G′` to `R` centred at `B`; every point on it
/// sees `G′` and `R` at an angle of 5π/6. The second is its mirror image in
/// the line through `0` and `R`, running from `R` to `ω₃G′`; the remaining
/// four are rotations of these two by `±2π/3` about the origin.
pub fn type_iii_boundary(samples: usize) -> Result<Vec<Vec<Point2>>> {
    if samples < 2 {
        return Err(Error::Argument("need at least two samples per arc".into()));
    }
    let [r, _, b] = type_iii_centers();
    let g1 = type_iii_g_prime().to_complex();
    let (a0, a1) = ((g1 - b).arg(), (r - b).arg());
    let rad = (g1 - b).norm();
    let primary: Vec<Complex64> = (0..samples)
        .map(|k| match k {
            0 => g1,
            k if k + 1 == samples => r,
            k => b + Complex64::from_polar(rad, a0 + (a1 - a0) * k as f64 / (samples - 1) as f64),
        })
        .collect();
    let turn = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let mirror: Vec<Complex64> = primary.iter().rev().map(|z| turn * z.conj()).collect();
    let mut out = Vec::with_capacity(6);
    for rot in [Complex64::new(1.0, 0.0), turn, turn * turn] {
        for arc in [&primary, &mirror] {
            out.push(arc.iter().map(|z| Point2::from_complex(rot * z)).collect());
        }
    }
    Ok(out)
}

/// Closed polygon through the sampled boundary arcs of the type III region.
pub fn type_iii_boundary_ring(samples: usize) -> Result<Vec<Point2>> {
    Ok(type_iii_boundary(samples)?
        .into_iter()
        .flat_map(|arc| arc.into_iter().skip(1))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_iii_points() {
        assert!(membership(&Family::TypeIII, Point2::ORIGIN));
        assert!(!membership(&Family::TypeIII, type_iii_g_prime()));
    }

    #[test]
    fn components_of_trivial_grids() {
        let bbox = BBox::new(Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
        let empty = sample_with(bbox, 4, 3, |_| false).unwrap();
        assert_eq!(connected_components(&empty).0, 0);
        let full = sample_with(bbox, 4, 3, |_| true).unwrap();
        assert_eq!(connected_components(&full).0, 1);
        let stripes = sample_with(bbox, 5, 5, |p| p.x < 0.35 || p.x > 0.65).unwrap();
        let (n, labels) = connected_components(&stripes);
        assert_eq!(n, 2);
        assert_eq!(labels[0], 1);
        assert_eq!(labels[4], 2);
    }

    #[test]
    fn pgm_layout() {
        let bbox = BBox::new(Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
        let g = sample_with(bbox, 2, 2, |p| p.y > 0.5 && p.x < 0.5).unwrap();
        let pgm = g.to_pgm();
        let header = b"P5\n2 2\n255\n";
        assert_eq!(&pgm[..header.len()], header);
        // top-left cell comes first
        assert_eq!(&pgm[header.len()..], &[255, 0, 0, 0]);
    }

    #[test]
    fn small_grids_rejected() {
        let bbox = BBox::new(Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
        assert!(sample_region(&Family::TypeIII, bbox, 1, 5).is_err());
        assert!(BBox::new(Point2::new(0.0, 0.0), Point2::new(0.0, 1.0)).is_err());
    }
}
