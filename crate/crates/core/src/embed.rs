//! Conformal embeddings of flat tori in R³ and tilings draped over them.
//!
//! Two surfaces are supported: the round torus of a rectangular lattice,
//! and Hopf tori — preimages of a spherical curve under the Hopf map,
//! stereographically projected — which realise arbitrary moduli.
//!
//! Every mesh carries the flat coordinate of each vertex, normalised so the
//! flat lattice is `Z + Zτ` for the embedding's own `τ`.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::TorusTiling;
use crate::error::{Error, Result};
use crate::geom::{Point2, Polygon};
use crate::lattice::{sl2_match, sl2_reduce, Lattice, Modulus};

pub type Point3 = [f64; 3];

/// Tolerance when matching a tiling's modulus with an embedding's.
pub const MODULUS_MATCH_TOL: f64 = 1e-6;

/// Closest approach to the projection pole before projecting is refused.
pub const POLE_TOL: f64 = 1e-6;

/// Minimum number of subdivisions of each tile side in a draped mesh.
pub const EDGE_SUBDIVISIONS: usize = 32;

/// Conformal embedding of the rectangular torus with periods `1` and `a`
/// as a round torus: radii `√(a²+1)` and `a` about the z-axis.
pub fn rect_embed(a: f64, u: f64, v: f64) -> Point3 {
    let (su, cu) = (TAU * u).sin_cos();
    let (sv, cv) = (TAU * v / a).sin_cos();
    let d = (a * a + 1.0).sqrt() - a * cv;
    [cu / d, su / d, a * sv / d]
}

/// The spherical curve `γ(θ) = (sin α e^{iθ}, cos α)`, `α = a + b sin kθ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveParams {
    pub a: f64,
    pub b: f64,
    pub k: u32,
}

impl CurveParams {
    pub fn new(a: f64, b: f64, k: u32) -> Result<Self> {
        if !(a - b.abs() > 0.0 && a + b.abs() < PI) || k == 0 {
            return Err(Error::Argument(format!(
                "curve (a={a}, b={b}, k={k}) must keep a ± b inside (0, π) with k ≥ 1"
            )));
        }
        Ok(CurveParams { a, b, k })
    }

    /// A curve whose Hopf torus has modulus equivalent to `ω₃`.
    pub fn omega3_preset() -> Self {
        CurveParams {
            a: OMEGA3_PRESET.0,
            b: OMEGA3_PRESET.1,
            k: OMEGA3_PRESET.2,
        }
    }

    fn alpha(&self, theta: f64) -> f64 {
        self.a + self.b * (self.k as f64 * theta).sin()
    }

    fn alpha_prime(&self, theta: f64) -> f64 {
        let k = self.k as f64;
        self.b * k * (k * theta).cos()
    }

    /// Half the spherical speed of `γ`: the rate of the flat coordinate
    /// across the fibres.
    fn half_speed(&self, theta: f64) -> f64 {
        let (al, ap) = (self.alpha(theta), self.alpha_prime(theta));
        0.5 * (ap * ap + al.sin().powi(2)).sqrt()
    }

    /// Rate of the fibre phase shift, `cos²(α/2)`.
    fn twist(&self, theta: f64) -> f64 {
        (self.alpha(theta) / 2.0).cos().powi(2)
    }
}

// With a = π/2 the enclosed area is 2π, so Re τ = 1/2; b is solved for
// L = 2π√3, making τ = e^{iπ/3}.
const OMEGA3_PRESET: (f64, f64, u32) = (std::f64::consts::FRAC_PI_2, 0.7634380089627043, 3);

/// Length, enclosed area and Hopf-torus modulus of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub length: f64,
    pub area: f64,
    /// `(A + iL)/(4π)`.
    pub modulus: Modulus,
}

/// Periodic trapezoid rule, doubled until the relative change drops below
/// 1e-13.
fn periodic_integral(f: impl Fn(f64) -> f64, min_samples: usize) -> Result<f64> {
    let mut n = min_samples.max(16);
    let mut prev = f64::NAN;
    let mut last_change = f64::INFINITY;
    while n <= 1 << 20 {
        let h = TAU / n as f64;
        let sum: f64 = (0..n).map(|j| f(j as f64 * h)).sum::<f64>() * h;
        if prev.is_finite() {
            last_change = ((sum - prev) / sum.abs().max(1e-300)).abs();
            if last_change < 1e-13 {
                return Ok(sum);
            }
        }
        prev = sum;
        n *= 2;
    }
    if last_change <= 1e-10 {
        Ok(prev)
    } else {
        Err(Error::Accuracy(format!("quadrature relative change {last_change:e} after refinement")))
    }
}

pub fn curve_invariants(c: &CurveParams, quad_samples: usize) -> Result<CurveInvariants> {
    let c = CurveParams::new(c.a, c.b, c.k)?;
    let length = 2.0 * periodic_integral(|t| c.half_speed(t), quad_samples)?;
    let area = periodic_integral(|t| 1.0 - c.alpha(t).cos(), quad_samples)?;
    let modulus = Modulus::from_parts(area / (4.0 * PI), length / (4.0 * PI))?;
    Ok(CurveInvariants { length, area, modulus })
}

/// Simpson integral of `f` over `[a, b]` with `n` (even) panels.
fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for j in 1..n {
        s += f(a + j as f64 * h) * if j % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Flat chart of a Hopf torus: cumulative arclength `s(θ)` and twist
/// `∫cos²(α/2)` tabulated on a fine grid.
struct HopfChart {
    curve: CurveParams,
    thetas: Vec<f64>,
    s: Vec<f64>,
    twist: Vec<f64>,
    /// Flat lattice `Z + Zτ` of the normalised coordinate.
    tau: Complex64,
}

const CHART_STEPS: usize = 4096;

impl HopfChart {
    fn new(curve: CurveParams) -> Self {
        let h = TAU / CHART_STEPS as f64;
        let mut thetas = Vec::with_capacity(CHART_STEPS + 1);
        let mut s = Vec::with_capacity(CHART_STEPS + 1);
        let mut twist = Vec::with_capacity(CHART_STEPS + 1);
        let (mut acc_s, mut acc_t) = (0.0, 0.0);
        for j in 0..=CHART_STEPS {
            let t = j as f64 * h;
            if j > 0 {
                acc_s += simpson(&|x| curve.half_speed(x), t - h, t, 8);
                acc_t += simpson(&|x| curve.twist(x), t - h, t, 8);
            }
            thetas.push(t);
            s.push(acc_s);
            twist.push(acc_t);
        }
        // ζ = −(φ + twist) + i s, normalised by 2π
        let tau = Complex64::new(-acc_t, acc_s) / TAU;
        HopfChart {
            curve,
            thetas,
            s,
            twist,
            tau,
        }
    }

    /// `(s(θ), twist(θ))` for any `θ ∈ [0, 2π]`.
    fn at(&self, theta: f64) -> (f64, f64) {
        let h = TAU / CHART_STEPS as f64;
        let j = ((theta / h).floor() as usize).min(CHART_STEPS - 1);
        let t0 = self.thetas[j];
        let c = &self.curve;
        (
            self.s[j] + simpson(&|x| c.half_speed(x), t0, theta, 8),
            self.twist[j] + simpson(&|x| c.twist(x), t0, theta, 8),
        )
    }

    /// Normalised flat coordinate of the fibre point `(θ, φ)`.
    fn flat(&self, theta: f64, phi: f64) -> Complex64 {
        let (s, tw) = self.at(theta);
        Complex64::new(-(phi + tw), s) / TAU
    }

    /// Inverse of [`HopfChart::flat`], any `w` (reduced mod the lattice).
    fn fibre_point(&self, w: Complex64) -> (f64, f64) {
        let k = (w.im / self.tau.im).floor();
        let w = w - self.tau * k;
        let target = w.im * TAU;
        let j = self.s.partition_point(|&x| x <= target).clamp(1, CHART_STEPS) - 1;
        let (s0, s1) = (self.s[j], self.s[j + 1]);
        let mut theta = self.thetas[j] + (target - s0) / (s1 - s0) * (self.thetas[j + 1] - self.thetas[j]);
        for _ in 0..4 {
            let (s, _) = self.at(theta);
            theta -= (s - target) / self.curve.half_speed(theta);
        }
        let (_, tw) = self.at(theta);
        (theta, -w.re * TAU - tw)
    }
}

/// Point of S³ ⊂ C² over `γ(θ)` with fibre phase `φ`.
fn hopf_lift(c: &CurveParams, theta: f64, phi: f64) -> [f64; 4] {
    let half = c.alpha(theta) / 2.0;
    let z1 = Complex64::from_polar(half.cos(), theta + phi);
    let z2 = Complex64::from_polar(half.sin(), phi);
    [z1.re, z1.im, z2.re, z2.im]
}

/// Stereographic projection from `(0, 0, 0, 1)`.
fn stereo(x: [f64; 4]) -> Result<Point3> {
    let gap = ((x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) + (1.0 - x[3]).powi(2)).sqrt();
    if gap < POLE_TOL {
        return Err(Error::Pole {
            distance: gap,
            suggestion: "rotate the curve on S² (change a) so it stays away from the south pole".into(),
        });
    }
    let d = 1.0 - x[3];
    Ok([x[0] / d, x[1] / d, x[2] / d])
}

/// Quad mesh with flat-coordinate preimages.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh3 {
    pub vertices: Vec<Point3>,
    pub quads: Vec<[usize; 4]>,
    /// Tile id per quad (`None` for undraped meshes).
    pub groups: Vec<Option<usize>>,
    /// Flat coordinate of every vertex.
    pub uv: Vec<Point2>,
    /// Lattice of the flat coordinates, when the mesh closes up on a torus.
    pub uv_lattice: Option<Lattice>,
    /// Tile side polylines: `(tile, points)`.
    pub lines: Vec<(usize, Vec<Point3>)>,
}

impl Mesh3 {
    /// Quad grid with `nu × nv` vertices, wrapping in both directions when
    /// `periodic`.
    pub fn grid(nu: usize, nv: usize, periodic: bool, f: impl Fn(usize, usize) -> (Point3, Point2) + Sync) -> Mesh3 {
        let cells: Vec<(Point3, Point2)> = (0..nv)
            .into_par_iter()
            .flat_map_iter(|j| {
                let f = &f;
                (0..nu).map(move |i| f(i, j))
            })
            .collect();
        let (vertices, uv) = cells.into_iter().unzip();
        let (qu, qv) = if periodic { (nu, nv) } else { (nu - 1, nv - 1) };
        let mut quads = Vec::with_capacity(qu * qv);
        for j in 0..qv {
            for i in 0..qu {
                let idx = |i: usize, j: usize| (j % nv) * nu + (i % nu);
                quads.push([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]);
            }
        }
        let groups = vec![None; quads.len()];
        Mesh3 {
            vertices,
            quads,
            groups,
            uv,
            uv_lattice: None,
            lines: Vec::new(),
        }
    }

    fn check(&self) -> Result<()> {
        for q in &self.quads {
            if q.iter().any(|&k| k >= self.vertices.len()) {
                return Err(Error::Argument("quad index out of range".into()));
            }
            let [a, b, c, d] = q.map(|k| self.vertices[k]);
            let area = 0.5 * (norm(cross(sub(c, a), sub(d, b))));
            if !(area > 1e-12) {
                return Err(Error::Degenerate(format!("quad {q:?} has area {area:e}")));
            }
        }
        Ok(())
    }

    /// Wavefront OBJ: vertices, then per tile group its quads and side
    /// polylines. Coordinates use 9 significant digits.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        let fmt = |x: f64| format!("{:.8e}", x);
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", fmt(v[0]), fmt(v[1]), fmt(v[2]));
        }
        let mut line_start = Vec::with_capacity(self.lines.len());
        let mut next = self.vertices.len() + 1;
        for (_, pts) in &self.lines {
            line_start.push(next);
            for v in pts {
                let _ = writeln!(out, "v {} {} {}", fmt(v[0]), fmt(v[1]), fmt(v[2]));
            }
            next += pts.len();
        }
        let mut ids: Vec<Option<usize>> = self.groups.clone();
        ids.extend(self.lines.iter().map(|(g, _)| Some(*g)));
        ids.sort();
        ids.dedup();
        for id in ids {
            match id {
                Some(g) => {
                    let _ = writeln!(out, "g tile_{g}");
                }
                None => {
                    let _ = writeln!(out, "g surface");
                }
            }
            for (q, _) in self.quads.iter().zip(&self.groups).filter(|(_, g)| **g == id) {
                let _ = writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
            }
            for (k, (g, pts)) in self.lines.iter().enumerate() {
                if Some(*g) == id {
                    let idx: Vec<String> = (0..pts.len()).map(|j| (line_start[k] + j).to_string()).collect();
                    let _ = writeln!(out, "l {}", idx.join(" "));
                }
            }
        }
        out
    }

    /// ASCII PLY with one colour per tile group.
    pub fn to_ply(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ply\nformat ascii 1.0");
        let _ = writeln!(out, "element vertex {}", self.vertices.len());
        let _ = writeln!(out, "property float x\nproperty float y\nproperty float z");
        let _ = writeln!(out, "element face {}", self.quads.len());
        let _ = writeln!(out, "property list uchar int vertex_indices");
        let _ = writeln!(out, "property uchar red\nproperty uchar green\nproperty uchar blue");
        let _ = writeln!(out, "end_header");
        for v in &self.vertices {
            let _ = writeln!(out, "{:.8e} {:.8e} {:.8e}", v[0], v[1], v[2]);
        }
        for (q, g) in self.quads.iter().zip(&self.groups) {
            let [r, gr, b] = group_colour(*g);
            let _ = writeln!(out, "4 {} {} {} {} {r} {gr} {b}", q[0], q[1], q[2], q[3]);
        }
        out
    }
}

fn group_colour(g: Option<usize>) -> [u8; 3] {
    const PALETTE: [[u8; 3]; 8] = [
        [230, 159, 0],
        [86, 180, 233],
        [0, 158, 115],
        [240, 228, 66],
        [0, 114, 178],
        [213, 94, 0],
        [204, 121, 167],
        [153, 153, 153],
    ];
    g.map_or([200, 200, 200], |g| PALETTE[g % PALETTE.len()])
}

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: Point3) -> f64 {
    dot(a, a).sqrt()
}

/// Round-torus mesh of the rectangular torus with periods `1` and `a`.
pub fn rect_torus_mesh(a: f64, nu: usize, nv: usize) -> Result<Mesh3> {
    if !(a > 0.0) || nu < 3 || nv < 3 {
        return Err(Error::Argument(format!("rect torus needs a > 0 and ≥ 3 samples (a={a})")));
    }
    let mut m = Mesh3::grid(nu, nv, true, |i, j| {
        let (u, v) = (i as f64 / nu as f64, a * j as f64 / nv as f64);
        (rect_embed(a, u, v), Point2::new(u, v))
    });
    m.uv_lattice = Some(Lattice::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, a))?);
    m.check()?;
    Ok(m)
}

/// Hopf torus over the curve, sampled on an `n_theta × n_phi` grid of base
/// angle and fibre phase. Also returns the modulus from the curve
/// invariants.
pub fn hopf_torus_mesh(c: &CurveParams, n_theta: usize, n_phi: usize) -> Result<(Mesh3, Modulus)> {
    let c = CurveParams::new(c.a, c.b, c.k)?;
    if n_theta < 8 || n_phi < 8 {
        return Err(Error::Argument("Hopf mesh needs at least 8 samples each way".into()));
    }
    let inv = curve_invariants(&c, 256)?;
    let chart = HopfChart::new(c);
    let lifts: Vec<(usize, usize, [f64; 4])> = (0..n_phi)
        .flat_map(|j| (0..n_theta).map(move |i| (i, j)))
        .map(|(i, j)| {
            let (theta, phi) = (TAU * i as f64 / n_theta as f64, TAU * j as f64 / n_phi as f64);
            (i, j, hopf_lift(&c, theta, phi))
        })
        .collect();
    for (_, _, x) in &lifts {
        stereo(*x)?;
    }
    let mut m = Mesh3::grid(n_theta, n_phi, true, |i, j| {
        let (theta, phi) = (TAU * i as f64 / n_theta as f64, TAU * j as f64 / n_phi as f64);
        let x = lifts[j * n_theta + i].2;
        let w = chart.flat(theta, phi);
        (stereo(x).expect("checked above"), Point2::from_complex(w))
    });
    m.uv_lattice = Some(Lattice::new(Complex64::new(1.0, 0.0), chart.tau)?);
    m.check()?;
    Ok((m, inv.modulus))
}

/// Largest `σmax/σmin − 1` of the least-squares Jacobian of the mesh map
/// over the stars of interior vertices.
pub fn conformality(m: &Mesh3) -> f64 {
    let n = m.vertices.len();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edge_use: std::collections::HashMap<(usize, usize), usize> = std::collections::HashMap::new();
    for q in &m.quads {
        for k in 0..4 {
            let (a, b) = (q[k], q[(k + 1) % 4]);
            if !nbrs[a].contains(&b) {
                nbrs[a].push(b);
            }
            if !nbrs[b].contains(&a) {
                nbrs[b].push(a);
            }
            *edge_use.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let lat = m.uv_lattice.map(|l| l.reduced());
    (0..n)
        .into_par_iter()
        .filter_map(|v| {
            let star = &nbrs[v];
            if star.len() < 3 || star.iter().any(|&w| edge_use[&(v.min(w), v.max(w))] != 2) {
                return None;
            }
            let (mut a, mut b) = ([[0.0; 2]; 3], [[0.0; 2]; 2]);
            for &w in star {
                let mut d = m.uv[w] - m.uv[v];
                if let Some(l) = &lat {
                    d = Point2::from_complex(l.shortest_representative(d.to_complex()));
                }
                let dx = sub(m.vertices[w], m.vertices[v]);
                for r in 0..3 {
                    a[r][0] += dx[r] * d.x;
                    a[r][1] += dx[r] * d.y;
                }
                b[0][0] += d.x * d.x;
                b[0][1] += d.x * d.y;
                b[1][1] += d.y * d.y;
            }
            b[1][0] = b[0][1];
            let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
            if det.abs() < 1e-300 {
                return None;
            }
            let inv = [[b[1][1] / det, -b[0][1] / det], [-b[1][0] / det, b[0][0] / det]];
            let mut j = [[0.0; 2]; 3];
            for r in 0..3 {
                for c in 0..2 {
                    j[r][c] = a[r][0] * inv[0][c] + a[r][1] * inv[1][c];
                }
            }
            // singular values from the 2×2 Gram matrix
            let g00: f64 = (0..3).map(|r| j[r][0] * j[r][0]).sum();
            let g11: f64 = (0..3).map(|r| j[r][1] * j[r][1]).sum();
            let g01: f64 = (0..3).map(|r| j[r][0] * j[r][1]).sum();
            let tr = g00 + g11;
            let disc = ((g00 - g11).powi(2) + 4.0 * g01 * g01).sqrt();
            let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
            if !(l2 > 0.0) {
                return Some(f64::INFINITY);
            }
            Some((l1 / l2).sqrt() - 1.0)
        })
        .reduce(|| 0.0, f64::max)
}

/// Which surface to drape a tiling on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Embedding {
    /// Round torus of `Z + iaZ`.
    Rect { a: f64 },
    /// Hopf torus over a spherical curve.
    Hopf { curve: CurveParams },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrapeOptions {
    pub nu: usize,
    pub nv: usize,
    pub edge_subdivisions: usize,
}

impl Default for DrapeOptions {
    fn default() -> Self {
        DrapeOptions {
            nu: 128,
            nv: 128,
            edge_subdivisions: EDGE_SUBDIVISIONS,
        }
    }
}

enum Surface {
    Rect(f64),
    Hopf(CurveParams, HopfChart),
}

impl Surface {
    fn eval(&self, w: Complex64) -> Result<Point3> {
        match self {
            Surface::Rect(a) => Ok(rect_embed(*a, w.re, w.im)),
            Surface::Hopf(c, chart) => {
                let (theta, phi) = chart.fibre_point(w);
                stereo(hopf_lift(c, theta, phi))
            }
        }
    }
}

/// Maps the tile boundaries of `t` onto an embedded torus of the same
/// shape, grouping surface quads by the tile under their centre.
pub fn drape_tiling(t: &TorusTiling, target: &Embedding, opts: DrapeOptions) -> Result<Mesh3> {
    let (mut mesh, surface) = match *target {
        Embedding::Rect { a } => (rect_torus_mesh(a, opts.nu, opts.nv)?, Surface::Rect(a)),
        Embedding::Hopf { curve } => {
            let (m, _) = hopf_torus_mesh(&curve, opts.nu, opts.nv)?;
            (m, Surface::Hopf(curve, HopfChart::new(curve)))
        }
    };
    let flat = mesh.uv_lattice.expect("torus meshes carry their lattice");
    let tau_e = flat.modulus();
    let tau_t = t.lattice.modulus();
    let mu = sl2_match(tau_t, tau_e, MODULUS_MATCH_TOL).ok_or_else(|| Error::Incompatible {
        tiling: sl2_reduce(tau_t).0.to_string(),
        embedding: sl2_reduce(tau_e).0.to_string(),
    })?;
    let rebased = t.lattice.rebased(&mu);
    let to_flat = |p: Point2| -> Complex64 {
        let (x, y) = rebased.coords(p.to_complex());
        flat.alpha * x + flat.beta * y
    };

    let tiles: Vec<Polygon> = t
        .tiles
        .iter()
        .map(|tile| {
            let pts = tile.corners().iter().map(|&p| Point2::from_complex(to_flat(p))).collect();
            Polygon::new(pts)
        })
        .collect::<Result<_>>()?;
    let centroids: Vec<Point2> = tiles.iter().map(Polygon::centroid).collect();
    let red = flat.reduced();
    let locate = |c: Point2| -> usize {
        let mut best = (0, f64::INFINITY);
        for (k, tile) in tiles.iter().enumerate() {
            let base = centroids[k].to_complex() + red.shortest_representative(c.to_complex() - centroids[k].to_complex());
            for dj in -1..=1 {
                for dk in -1..=1 {
                    let q = Point2::from_complex(base + red.point(dj, dk));
                    if tile.contains(q) {
                        return k;
                    }
                    let d = q.dist(centroids[k]);
                    if d < best.1 {
                        best = (k, d);
                    }
                }
            }
        }
        best.0
    };
    let groups: Vec<Option<usize>> = mesh
        .quads
        .par_iter()
        .map(|q| {
            let base = mesh.uv[q[0]];
            let mut acc = Point2::ORIGIN;
            for &k in q {
                let d = red.shortest_representative((mesh.uv[k] - base).to_complex());
                acc = acc + Point2::from_complex(d);
            }
            Some(locate(base + acc * 0.25))
        })
        .collect();
    mesh.groups = groups;

    let subdiv = opts.edge_subdivisions.max(EDGE_SUBDIVISIONS);
    for (k, tile) in tiles.iter().enumerate() {
        for s in 0..tile.len() {
            let (a, b) = (tile.corner(s), tile.corner(s + 1));
            let pts = (0..=subdiv)
                .map(|j| surface.eval(a.lerp(b, j as f64 / subdiv as f64).to_complex()))
                .collect::<Result<Vec<_>>>()?;
            mesh.lines.push((k, pts));
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_embed_lies_on_round_torus() {
        for a in [0.5, 1.0, 7.0 / 6.0, 2.0] {
            let (big, small) = ((a * a + 1.0f64).sqrt(), a);
            for (u, v) in [(0.0, 0.0), (0.3, 0.1), (0.77, 0.9 * a), (0.5, 0.5 * a)] {
                let p = rect_embed(a, u, v);
                let rho = (p[0] * p[0] + p[1] * p[1]).sqrt();
                assert!(((rho - big).powi(2) + p[2] * p[2] - small * small).abs() < 1e-9);
                let q = rect_embed(a, u + 1.0, v + a);
                assert!(norm(sub(p, q)) < 1e-12);
            }
        }
    }

    #[test]
    fn rect_embed_values() {
        let s = 2f64.sqrt();
        let p = rect_embed(1.0, 0.0, 0.0);
        assert!(norm(sub(p, [1.0 / (s - 1.0), 0.0, 0.0])) < 1e-12);
        let p = rect_embed(1.0, 0.5, 0.5);
        assert!(norm(sub(p, [-1.0 / (s + 1.0), 0.0, 0.0])) < 1e-12);
    }

    #[test]
    fn circle_invariants() {
        for a in [0.5, 1.0, PI / 2.0, 2.5] {
            let inv = curve_invariants(&CurveParams::new(a, 0.0, 1).unwrap(), 64).unwrap();
            assert!((inv.length - TAU * a.sin()).abs() < 1e-10);
            assert!((inv.area - TAU * (1.0 - a.cos())).abs() < 1e-10);
            let expect = Complex64::new(1.0 - a.cos(), a.sin()) / 2.0;
            assert!((inv.modulus.tau() - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn curve_range_is_enforced() {
        assert!(CurveParams::new(0.0, 0.0, 1).is_err());
        assert!(CurveParams::new(0.3, 0.4, 1).is_err());
        assert!(CurveParams::new(3.0, 0.2, 1).is_err());
        assert!(CurveParams::new(1.0, 0.2, 0).is_err());
    }

    #[test]
    fn chart_round_trip() {
        let c = CurveParams::new(1.0, 0.3, 3).unwrap();
        let chart = HopfChart::new(c);
        for (theta, phi) in [(0.1, 0.2), (2.0, -1.0), (5.5, 3.0)] {
            let w = chart.flat(theta, phi);
            let (t2, p2) = chart.fibre_point(w);
            let x = hopf_lift(&c, theta, phi);
            let y = hopf_lift(&c, t2, p2);
            let d: f64 = (0..4).map(|k| (x[k] - y[k]).powi(2)).sum::<f64>().sqrt();
            assert!(d < 1e-9, "{d}");
        }
    }

    #[test]
    fn hopf_lift_is_on_the_sphere() {
        let c = CurveParams::new(1.0, 0.3, 3).unwrap();
        for j in 0..50 {
            let x = hopf_lift(&c, j as f64 * 0.37, j as f64 * 1.1);
            let n: f64 = x.iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }
}
