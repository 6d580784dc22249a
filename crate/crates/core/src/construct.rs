//! Minimal torus tilings for each tiling type, strip tilings, and planar
//! patches.
//!
//! Corner formulas are written in complex arithmetic. Every constructor
//! labels the corners of its designated tile `0..5` in formula order;
//! [`Polygon`] stores them counterclockwise whatever the input orientation.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Isometry, Point2, Polygon, MERGE_TOL};
use crate::hexagon::{classify, spec_from_polygon, CLASSIFY_TOL};
use crate::lattice::{HnfTriple, Lattice, Modulus};

/// Relative tolerance of the tile-area invariant.
pub const AREA_TOL: f64 = 1e-6;

/// Initial and terminal point of the free vector `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreeVector {
    pub initial: Point2,
    pub terminal: Point2,
}

impl FreeVector {
    pub fn new(initial: Point2, terminal: Point2) -> Result<Self> {
        if !initial.is_finite() || !terminal.is_finite() {
            return Err(Error::Argument("free vector has non-finite coordinates".into()));
        }
        if initial.dist(terminal) <= MERGE_TOL {
            return Err(Error::moduli("free vector has zero length"));
        }
        Ok(FreeVector { initial, terminal })
    }

    fn i(&self) -> Complex64 {
        self.initial.to_complex()
    }

    fn t(&self) -> Complex64 {
        self.terminal.to_complex()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Parses a word over `+` and `-` (the Unicode minus is accepted too).
pub fn parse_signs(word: &str) -> Result<Vec<Sign>> {
    let signs = word
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' | '−' => Ok(Sign::Minus),
            other => Err(Error::Argument(format!("unexpected sign {other:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if signs.is_empty() {
        return Err(Error::Argument("sign word is empty".into()));
    }
    Ok(signs)
}

pub fn format_signs(signs: &[Sign]) -> String {
    signs
        .iter()
        .map(|s| match s {
            Sign::Plus => '+',
            Sign::Minus => '-',
        })
        .collect()
}

/// Shortest prefix whose repetition gives `signs`.
pub fn primitive_period(signs: &[Sign]) -> &[Sign] {
    let n = signs.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|k| signs[k] == signs[k - p]))
        .map_or(signs, |p| &signs[..p])
}

/// Which construction produced a tiling, with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "parameters", rename_all = "snake_case")]
pub enum Provenance {
    #[serde(rename = "i")]
    TypeI {
        tau: [f64; 2],
        initial: [f64; 2],
        terminal: [f64; 2],
    },
    #[serde(rename = "ii")]
    TypeII {
        y: f64,
        initial: [f64; 2],
        terminal: [f64; 2],
    },
    #[serde(rename = "iii")]
    TypeIII { p: [f64; 2] },
    #[serde(rename = "cs")]
    Central {
        alpha: [f64; 2],
        beta: [f64; 2],
        u: [f64; 2],
    },
    Strip {
        h: f64,
        w: f64,
        s: f64,
        initial: [f64; 2],
        terminal: [f64; 2],
        signs: String,
    },
    Cover {
        m: u64,
        n: u64,
        l: u64,
        base: Box<Provenance>,
    },
    External,
}

fn xy(p: Point2) -> [f64; 2] {
    [p.x, p.y]
}

fn cxy(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// A tiling of `C / (Zα + Zβ)`: labelled tiles, each a representative of
/// its orbit under the lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusTiling {
    pub lattice: Lattice,
    pub tiles: Vec<Polygon>,
    pub provenance: Provenance,
}

impl TorusTiling {
    pub fn new(lattice: Lattice, tiles: Vec<Polygon>, provenance: Provenance) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::Argument("a tiling needs at least one tile".into()));
        }
        let area: f64 = tiles.iter().map(|t| t.signed_area()).sum();
        let cov = lattice.covolume();
        if ((area - cov) / cov).abs() > AREA_TOL {
            return Err(Error::moduli(format!(
                "tiles cover area {area}, fundamental domain has area {cov}"
            )));
        }
        Ok(TorusTiling {
            lattice,
            tiles,
            provenance,
        })
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.lattice.modulus()
    }
}

/// Side label of the side from stored corner `k` to `k + 1`.
fn side_label(p: &Polygon, k: usize) -> usize {
    let n = p.len();
    let (a, b) = (p.labels()[k % n], p.labels()[(k + 1) % n]);
    if b == (a + 1) % n {
        a
    } else {
        b
    }
}

/// Builds a tile from corners labelled in order, reporting degeneracies and
/// self-intersections as moduli violations.
fn tile(corners: &[Complex64]) -> Result<Polygon> {
    let pts: Vec<Point2> = corners.iter().map(|&z| Point2::from_complex(z)).collect();
    let poly = Polygon::new(pts).map_err(|e| match e {
        Error::Degenerate(msg) => Error::moduli(msg),
        other => other,
    })?;
    if let Some((a, b)) = poly.first_crossing(MERGE_TOL).map_err(|e| Error::moduli(e.to_string()))? {
        let (a, b) = (side_label(&poly, a), side_label(&poly, b));
        return Err(Error::ModuliViolation {
            reason: format!("sides {a} and {b} intersect"),
            crossing: Some((a.min(b), a.max(b))),
        });
    }
    Ok(poly)
}

fn type_i_pair(lattice: &Lattice, sigma: &FreeVector) -> Result<[Polygon; 2]> {
    let (a, b) = (lattice.alpha, lattice.beta);
    let (i, t) = (sigma.i(), sigma.t());
    let t1 = tile(&[b, i - a, Complex64::new(0.0, 0.0), i - t, t, i - t + b])?;
    let half_turn = Isometry::rotation(Point2::from_complex(i / 2.0), PI);
    let t2 = t1.transformed(&half_turn);
    Ok([t1, t2])
}

/// Two-tile tiling of `Z + Zτ` determined by the free vector.
pub fn type_i_minimal(tau: Modulus, sigma: FreeVector) -> Result<TorusTiling> {
    let lattice = Lattice::standard(tau);
    let [t1, t2] = type_i_pair(&lattice, &sigma)?;
    TorusTiling::new(
        lattice,
        vec![t1, t2],
        Provenance::TypeI {
            tau: cxy(tau.tau()),
            initial: xy(sigma.initial),
            terminal: xy(sigma.terminal),
        },
    )
}

/// Four-tile tiling of the rectangular lattice `Z + iyZ`.
pub fn type_ii_minimal(y: f64, sigma: FreeVector) -> Result<TorusTiling> {
    let tau = Modulus::from_parts(0.0, y)?;
    let lattice = Lattice::standard(tau);
    let rho = Isometry::rotation(Point2::ORIGIN, PI);
    let gamma = Isometry::glide(Point2::new(0.25, 0.0), Point2::new(0.0, 1.0), y / 2.0);
    let gamma_inv = gamma.invert();
    let (i, t) = (sigma.initial, sigma.terminal);
    let corners = [
        t,
        rho.apply(t),
        gamma_inv.apply(i),
        gamma_inv.apply(t),
        rho.apply(i) + Point2::new(1.0, 0.0),
        i,
    ];
    let t2 = tile(&corners.map(Point2::to_complex))?;
    let tiles = vec![
        t2.transformed(&rho),
        t2.clone(),
        t2.transformed(&gamma),
        t2.transformed(&rho.compose(&gamma)),
    ];
    TorusTiling::new(
        lattice,
        tiles,
        Provenance::TypeII {
            y,
            initial: xy(i),
            terminal: xy(t),
        },
    )
}

/// Centres of the three-fold rotations: `R`, `G`, `B` at distance 1/3 from 0.
pub fn type_iii_centers() -> [Complex64; 3] {
    [
        Complex64::from_polar(1.0 / 3.0, PI / 3.0),
        Complex64::new(-1.0 / 3.0, 0.0),
        Complex64::from_polar(1.0 / 3.0, -PI / 3.0),
    ]
}

/// The designated hexagon `[P, R, P_R, G′, P_B, B]` of the type III tiling.
pub fn type_iii_hexagon(p: Point2) -> Result<Polygon> {
    let [r, g, b] = type_iii_centers();
    let p = p.to_complex();
    let turn = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let p_r = r + turn * (p - r);
    let p_b = b + turn.conj() * (p - b);
    tile(&[p, r, p_r, g + 1.0, p_b, b])
}

/// Three-tile tiling of `Z + Zω₃` with a corner of the hexagon at `p`.
pub fn type_iii_minimal(p: Point2) -> Result<TorusTiling> {
    let hex = type_iii_hexagon(p)?;
    let r = Point2::from_complex(type_iii_centers()[0]);
    let third = 2.0 * PI / 3.0;
    let tiles = vec![
        hex.clone(),
        hex.transformed(&Isometry::rotation(r, third)),
        hex.transformed(&Isometry::rotation(r, -third)),
    ];
    TorusTiling::new(
        Lattice::standard(Modulus::omega3()),
        tiles,
        Provenance::TypeIII { p: xy(p) },
    )
}

/// Single centrally symmetric tile on `Zα + Zβ`.
pub fn central_minimal(alpha: Complex64, beta: Complex64, u: Point2) -> Result<TorusTiling> {
    let lattice = Lattice::new(alpha, beta)?;
    let u_c = u.to_complex();
    let hex = tile(&[u_c, beta - u_c, u_c - alpha, -u_c, u_c - beta, alpha - u_c])?;
    TorusTiling::new(
        lattice,
        vec![hex],
        Provenance::Central {
            alpha: cxy(alpha),
            beta: cxy(beta),
            u: xy(u),
        },
    )
}

/// Geometry of a strip tiling. Strips run vertically with period `h`;
/// neighbouring strips are offset by `(w, s)` after a `+` and `(w, −s)`
/// after a `−`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripFrame {
    pub h: f64,
    pub w: f64,
    pub s: f64,
}

impl StripFrame {
    pub fn new(h: f64, w: f64, s: f64) -> Result<Self> {
        if !(h > 0.0 && w > 0.0 && s.is_finite() && h.is_finite() && w.is_finite()) {
            return Err(Error::Argument(format!("strip frame needs h > 0, w > 0 (got h={h}, w={w}, s={s})")));
        }
        Ok(StripFrame { h, w, s })
    }

    fn period(&self) -> Complex64 {
        Complex64::new(0.0, self.h)
    }

    fn step(&self) -> Complex64 {
        Complex64::new(self.w, self.s)
    }

    /// Terminal point height that makes sides 3̄ and 4̄ equal for a free
    /// vector starting at `initial`.
    pub fn terminal_height(&self, initial: Point2) -> f64 {
        (initial.y + self.h / 2.0) / 2.0
    }

    /// Torus spanned by the strip period and the offset of a full period of
    /// `p` pluses and `q` minuses.
    pub fn lattice(&self, p: usize, q: usize) -> Result<Lattice> {
        let across = Complex64::new((p + q) as f64 * self.w, (p as f64 - q as f64) * self.s);
        Lattice::new(across, self.period())
    }
}

/// Places strips for a word of signs. Returns the tiles of each strip at its
/// offset and the offset after the last strip.
fn strip_tiles(frame: &StripFrame, sigma: &FreeVector, signs: &[Sign]) -> Result<(Vec<Polygon>, Complex64)> {
    let scale = frame.h.max(frame.w);
    let gap = (sigma.terminal.y - frame.terminal_height(sigma.initial)).abs();
    if gap > 1e-9 * scale {
        return Err(Error::moduli(format!(
            "sides 3 and 4 differ: terminal point must have y = {}",
            frame.terminal_height(sigma.initial)
        )));
    }
    // one strip: the type I pair on the lattice (step, period)
    let base = Lattice {
        alpha: frame.step(),
        beta: frame.period(),
    };
    let [gray, white] = type_i_pair(&base, sigma)?;
    // W sits on the far side of side 0̄ so the strip is connected
    let white = white.translated(Point2::from_complex(-base.alpha));
    // mirror across the horizontal line through corner 3 of the white tile
    let pivot = sigma.terminal - Point2::from_complex(base.alpha);
    let mirror = Isometry::reflection(pivot, Point2::new(1.0, 0.0));
    let flipped = [gray.transformed(&mirror), white.transformed(&mirror)];

    let mut tiles = Vec::with_capacity(2 * signs.len());
    let mut offset = Complex64::new(0.0, 0.0);
    for sign in signs {
        let v = Point2::from_complex(offset);
        let (pair, step) = match sign {
            Sign::Plus => ([&gray, &white], frame.step()),
            Sign::Minus => ([&flipped[0], &flipped[1]], frame.step().conj()),
        };
        tiles.extend(pair.iter().map(|t| t.translated(v)));
        offset += step;
    }
    Ok((tiles, offset))
}

/// Minimal torus tiling by strips whose directions follow the primitive
/// period of `signs`. The prototile is the type I hexagon of `sigma` on the
/// single-strip lattice, which must have `|3̄| = |4̄|`.
pub fn strip_tiling(frame: StripFrame, sigma: FreeVector, signs: &[Sign]) -> Result<TorusTiling> {
    if signs.is_empty() {
        return Err(Error::Argument("sign word is empty".into()));
    }
    let word = primitive_period(signs);
    let p = word.iter().filter(|s| **s == Sign::Plus).count();
    let q = word.len() - p;
    let (tiles, _) = strip_tiles(&frame, &sigma, word)?;
    TorusTiling::new(
        frame.lattice(p, q)?,
        tiles,
        Provenance::Strip {
            h: frame.h,
            w: frame.w,
            s: frame.s,
            initial: xy(sigma.initial),
            terminal: xy(sigma.terminal),
            signs: format_signs(word),
        },
    )
}

/// Finite piece of a tiling of the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarPatch {
    pub tiles: Vec<Polygon>,
}

impl PlanarPatch {
    /// Number of tiles with a corner within `tol` of `p`.
    pub fn degree_at(&self, p: Point2, tol: f64) -> usize {
        self.tiles
            .iter()
            .filter(|t| t.corners().iter().any(|c| c.dist(p) <= tol))
            .count()
    }

    /// Whether `p` lies in the relative interior of some tile side.
    pub fn on_side_interior(&self, p: Point2, tol: f64) -> bool {
        self.tiles.iter().any(|t| {
            let n = t.len();
            (0..n).any(|k| {
                let (a, b) = (t.corner(k), t.corner(k + 1));
                a.dist(p) > tol && b.dist(p) > tol && crate::geom::point_segment_distance(p, a, b) <= tol
            })
        })
    }
}

/// All translates `kα + jβ` with `|k|, |j| ≤ extent`, ordered by `k`, then
/// `j`, then tile.
pub fn planar_patch(t: &TorusTiling, extent: u32) -> PlanarPatch {
    let e = extent as i64;
    let mut tiles = Vec::with_capacity(t.tiles.len() * ((2 * e + 1) * (2 * e + 1)) as usize);
    for k in -e..=e {
        for j in -e..=e {
            let v = Point2::from_complex(t.lattice.point(k, j));
            tiles.extend(t.tiles.iter().map(|tile| tile.translated(v)));
        }
    }
    PlanarPatch { tiles }
}

/// Strips for an arbitrary sign word, each repeated `rows` times up and down
/// its period. The word need not be periodic.
pub fn strip_patch(frame: StripFrame, sigma: FreeVector, signs: &[Sign], rows: u32) -> Result<PlanarPatch> {
    if signs.is_empty() {
        return Err(Error::Argument("sign word is empty".into()));
    }
    let (base, _) = strip_tiles(&frame, &sigma, signs)?;
    let r = rows as i64;
    let mut tiles = Vec::with_capacity(base.len() * (2 * r as usize + 1));
    for j in -r..=r {
        let v = Point2::new(0.0, j as f64 * frame.h);
        tiles.extend(base.iter().map(|t| t.translated(v)));
    }
    Ok(PlanarPatch { tiles })
}

/// Sublattice cover: translates of every tile by coset representatives of
/// `Λ(m, n; l)` in the tiling's lattice.
pub fn cover_tiles(t: &TorusTiling, h: HnfTriple) -> Vec<Polygon> {
    let mut tiles = Vec::with_capacity(t.tiles.len() * h.index() as usize);
    for k in 0..h.n as i64 {
        for j in 0..h.m as i64 {
            let v = Point2::from_complex(t.lattice.point(j, k));
            tiles.extend(t.tiles.iter().map(|tile| tile.translated(v)));
        }
    }
    tiles
}

/// Human-readable notes for constructed tilings whose prototile misses the
/// genericity conditions of its type. Such tilings are still valid.
pub fn genericity_warnings(t: &TorusTiling) -> Vec<String> {
    let Some(tile) = t.tiles.first() else {
        return Vec::new();
    };
    let Ok(spec) = spec_from_polygon(tile) else {
        return vec!["first tile is not a simple hexagon".into()];
    };
    let report = classify(&spec, CLASSIFY_TOL);
    let mut kind = &t.provenance;
    while let Provenance::Cover { base, .. } = kind {
        kind = base;
    }
    let (name, check) = match kind {
        Provenance::TypeI { .. } => ("type I", &report.type_i),
        Provenance::TypeII { .. } => ("type II", &report.type_ii),
        Provenance::TypeIII { .. } => ("type III", &report.type_iii),
        Provenance::Central { .. } => ("centrally symmetric", &report.central),
        Provenance::Strip { .. } => ("strip", &report.strip),
        _ => return Vec::new(),
    };
    if check.generic {
        Vec::new()
    } else {
        vec![format!("prototile is not generic for {name} tilings")]
    }
}
