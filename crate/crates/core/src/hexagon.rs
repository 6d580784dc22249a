//! Prototile metadata: corner angles `[i]` and side lengths `|ī|` of a
//! labelled hexagon, and classification against the tiling types.
//!
//! Side `ī` joins corners `i` and `i + 1` (indices mod 6). Classification
//! tries all twelve relabelings (six rotations, two reflections) so the
//! result never depends on how the input corners were numbered.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point2, Polygon, MERGE_TOL};

const THIRD_TURN: f64 = 2.0 * PI / 3.0;

/// Default classification tolerance (radians, and relative length).
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HexagonSpec {
    /// `[i]`, the interior angle at corner `i`.
    pub angles: [f64; 6],
    /// `|ī|`, the length of the side from corner `i` to corner `i + 1`.
    pub lengths: [f64; 6],
}

impl HexagonSpec {
    pub fn new(angles: [f64; 6], lengths: [f64; 6]) -> Result<Self> {
        let spec = HexagonSpec { angles, lengths };
        if let Some(k) = angles.iter().position(|a| !(*a > 0.0 && *a < TAU)) {
            return Err(Error::Degenerate(format!("angle [{k}] = {} is outside (0, 2π)", angles[k])));
        }
        if let Some(k) = lengths.iter().position(|l| !(*l > MERGE_TOL)) {
            return Err(Error::Degenerate(format!("side {k} has length {}", lengths[k])));
        }
        let sum: f64 = angles.iter().sum();
        if (sum - 2.0 * TAU).abs() > 1e-9 {
            return Err(Error::Degenerate(format!("angle sum {sum} differs from 4π")));
        }
        let gap = spec.closure_gap();
        if gap > 1e-9 * spec.mean_length() {
            return Err(Error::Degenerate(format!("sides do not close up (gap {gap:e})")));
        }
        Ok(spec)
    }

    pub fn mean_length(&self) -> f64 {
        self.lengths.iter().sum::<f64>() / 6.0
    }

    /// Side vectors obtained by walking the sides in label order, turning by
    /// `π − [i]` at each corner.
    pub fn side_vectors(&self) -> [Point2; 6] {
        let mut heading = 0.0f64;
        let mut out = [Point2::ORIGIN; 6];
        for (i, v) in out.iter_mut().enumerate() {
            *v = Point2::new(heading.cos(), heading.sin()) * self.lengths[i];
            heading += PI - self.angles[(i + 1) % 6];
        }
        out
    }

    fn closure_gap(&self) -> f64 {
        self.side_vectors().iter().fold(Point2::ORIGIN, |acc, &v| acc + v).norm()
    }

    /// Corner coordinates rebuilt from angles and lengths, corner 0 at the
    /// origin and side 0 along the positive x-axis.
    pub fn corners(&self) -> [Point2; 6] {
        let mut out = [Point2::ORIGIN; 6];
        let sides = self.side_vectors();
        for i in 1..6 {
            out[i] = out[i - 1] + sides[i - 1];
        }
        out
    }

    /// The spec seen through another labelling: new corner `j` is old corner
    /// `offset + j` (or `offset − j` when `reflected`).
    pub fn relabeled(&self, offset: usize, reflected: bool) -> HexagonSpec {
        let mut angles = [0.0; 6];
        let mut lengths = [0.0; 6];
        for j in 0..6 {
            let old = if reflected { (offset + 6 - j) % 6 } else { (offset + j) % 6 };
            angles[j] = self.angles[old];
            // new side j joins old corners old and old∓1
            lengths[j] = if reflected { self.lengths[(old + 5) % 6] } else { self.lengths[old] };
        }
        HexagonSpec { angles, lengths }
    }
}

/// Reads `[i]` and `|ī|` off a labelled hexagon.
pub fn spec_from_polygon(p: &Polygon) -> Result<HexagonSpec> {
    if p.len() != 6 {
        return Err(Error::Arity(p.len()));
    }
    if !p.is_simple(MERGE_TOL) {
        return Err(Error::NotSimple);
    }
    let mut angles = [0.0; 6];
    let mut lengths = [0.0; 6];
    for i in 0..6 {
        let k = p
            .index_of_label(i)
            .ok_or_else(|| Error::Argument(format!("corner label {i} missing")))?;
        let k_next = p
            .index_of_label((i + 1) % 6)
            .ok_or_else(|| Error::Argument(format!("corner label {} missing", (i + 1) % 6)))?;
        if (k + 1) % 6 != k_next && (k_next + 1) % 6 != k {
            return Err(Error::Argument(format!("corners {i} and {} are not adjacent", (i + 1) % 6)));
        }
        angles[i] = p.corner_angle(k)?;
        lengths[i] = p.corner(k).dist(p.corner(k_next));
    }
    HexagonSpec::new(angles, lengths)
}

/// Result of testing one tiling type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeCheck {
    pub flag: bool,
    /// Worst violation of the type conditions under the best labelling.
    pub residual: f64,
    /// Best labelling: `(offset, reflected)`, see [`HexagonSpec::relabeled`].
    pub labeling: (usize, bool),
    /// Whether the genericity conditions of the matching theorem hold under
    /// some labelling that satisfies the type.
    pub generic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeReport {
    pub type_i: TypeCheck,
    pub type_ii: TypeCheck,
    pub type_iii: TypeCheck,
    pub central: TypeCheck,
    /// Type I with `|3̄| = |4̄|` and sides 0̄, 1̄ distinct from the rest.
    pub strip: TypeCheck,
}

impl TypeReport {
    pub fn flags(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, check) in [
            ("I", &self.type_i),
            ("II", &self.type_ii),
            ("III", &self.type_iii),
            ("CS", &self.central),
        ] {
            if check.flag {
                out.push(name);
            }
        }
        out
    }
}

struct Rel<'a> {
    s: &'a HexagonSpec,
    scale: f64,
    tol: f64,
}

impl Rel<'_> {
    fn a(&self, i: usize) -> f64 {
        self.s.angles[i % 6]
    }
    fn l(&self, i: usize) -> f64 {
        self.s.lengths[i % 6]
    }
    fn dl(&self, i: usize, j: usize) -> f64 {
        (self.l(i) - self.l(j)).abs() / self.scale
    }
    fn same_len(&self, i: usize, j: usize) -> bool {
        self.dl(i, j) <= self.tol
    }
    /// Side `i` differs in length from all the other five.
    fn unique_len(&self, i: usize) -> bool {
        (0..6).filter(|&j| j != i).all(|j| !self.same_len(i, j))
    }
    fn angle_is(&self, i: usize, v: f64) -> bool {
        (self.a(i) - v).abs() <= self.tol
    }
}

fn residual_i(r: &Rel) -> f64 {
    (r.a(0) + r.a(1) + r.a(2) - TAU)
        .abs()
        .max((r.a(3) + r.a(4) + r.a(5) - TAU).abs())
        .max(r.dl(2, 5))
}

fn residual_ii(r: &Rel) -> f64 {
    (r.a(0) + r.a(1) + r.a(3) - TAU)
        .abs()
        .max((r.a(2) + r.a(4) + r.a(5) - TAU).abs())
        .max(r.dl(1, 3))
        .max(r.dl(2, 5))
}

fn residual_iii(r: &Rel) -> f64 {
    [1, 3, 5]
        .iter()
        .map(|&i| (r.a(i) - THIRD_TURN).abs())
        .fold(0.0, f64::max)
        .max(r.dl(0, 1))
        .max(r.dl(2, 3))
        .max(r.dl(4, 5))
}

fn residual_central(s: &HexagonSpec, scale: f64) -> f64 {
    let v = s.side_vectors();
    (0..3).map(|i| (v[i] + v[i + 3]).norm() / scale).fold(0.0, f64::max)
}

fn generic_i(r: &Rel) -> bool {
    r.unique_len(0) && r.unique_len(1) && !r.same_len(3, 4)
}

fn generic_ii(r: &Rel) -> bool {
    r.unique_len(0) && r.unique_len(4) && !r.same_len(1, 2) && (r.a(2) - r.a(3)).abs() > r.tol
}

fn generic_iii(r: &Rel) -> bool {
    // even corners and even sides
    !r.same_len(0, 2)
        && !r.same_len(2, 4)
        && !r.same_len(0, 4)
        && !r.angle_is(2, THIRD_TURN)
        && !r.angle_is(4, THIRD_TURN)
        && !r.angle_is(0, THIRD_TURN)
}

fn generic_central(r: &Rel) -> bool {
    !r.same_len(0, 1) && !r.same_len(1, 2) && !r.same_len(0, 2)
}

fn generic_strip(r: &Rel) -> bool {
    r.unique_len(0) && r.unique_len(1) && r.same_len(3, 4)
}

fn check_type(
    spec: &HexagonSpec,
    tol: f64,
    residual: impl Fn(&Rel) -> f64,
    generic: impl Fn(&Rel) -> bool,
) -> TypeCheck {
    let scale = spec.mean_length();
    let mut best = TypeCheck {
        flag: false,
        residual: f64::INFINITY,
        labeling: (0, false),
        generic: false,
    };
    for reflected in [false, true] {
        for offset in 0..6 {
            let s = spec.relabeled(offset, reflected);
            let r = Rel { s: &s, scale, tol };
            let res = residual(&r);
            if res < best.residual {
                best.residual = res;
                best.labeling = (offset, reflected);
            }
            if res <= tol && generic(&r) {
                best.generic = true;
            }
        }
    }
    best.flag = best.residual <= tol;
    best
}

/// Tests the hexagon against types I, II, III and central symmetry, plus the
/// genericity conditions of the corresponding uniqueness theorems.
pub fn classify(spec: &HexagonSpec, tol: f64) -> TypeReport {
    let scale = spec.mean_length();
    let cs_res = residual_central(spec, scale);
    let central = {
        let r = Rel { s: spec, scale, tol };
        TypeCheck {
            flag: cs_res <= tol,
            residual: cs_res,
            labeling: (0, false),
            generic: cs_res <= tol && generic_central(&r),
        }
    };
    TypeReport {
        type_i: check_type(spec, tol, residual_i, generic_i),
        type_ii: check_type(spec, tol, residual_ii, generic_ii),
        type_iii: check_type(spec, tol, residual_iii, generic_iii),
        central,
        strip: check_type(spec, tol, residual_i, generic_strip),
    }
}
