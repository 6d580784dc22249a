//! Moduli of flat tori.
//!
//! A torus is `C / (Zα + Zβ)`. Up to rotation and scaling it is `T_τ` with
//! `τ = β/α` in the upper half plane, and two moduli give isometric tori iff
//! they differ by the action `τ ↦ (c + dτ)/(a + bτ)` of an integer matrix of
//! determinant one. Sublattices of `Z + Zτ` are written in Hermite normal
//! form `Zm + Z(l + nτ)` with `0 ≤ l < m`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point2;

/// Boundary band used to identify edge points of the reduced domain.
const REDUCE_EPS: f64 = 1e-10;

/// A point of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Complex64", into = "Complex64")]
pub struct Modulus(Complex64);

impl Modulus {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::Argument(format!("modulus {tau} is not in the upper half plane")));
        }
        Ok(Modulus(tau))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// The primitive cube root of unity `(-1 + √3 i)/2`.
    pub fn omega3() -> Self {
        Modulus(Complex64::new(-0.5, 3f64.sqrt() / 2.0))
    }

    pub fn tau(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn dist(self, other: Modulus) -> f64 {
        (self.0 - other.0).norm()
    }
}

impl TryFrom<Complex64> for Modulus {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        Modulus::new(z)
    }
}

impl From<Modulus> for Complex64 {
    fn from(m: Modulus) -> Self {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.12}{:+.12}i", self.0.re, self.0.im)
    }
}

/// Integer basis of a sublattice: generators `a + bτ` and `c + dτ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntBasis {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntBasis {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntBasis { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }
}

/// Hermite normal form `(m, n; l)` of the sublattice `Zm + Z(l + nτ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HnfTriple {
    pub m: u64,
    pub n: u64,
    pub l: u64,
}

impl HnfTriple {
    pub const IDENTITY: HnfTriple = HnfTriple { m: 1, n: 1, l: 0 };

    pub fn new(m: u64, n: u64, l: u64) -> Result<Self> {
        if m == 0 || n == 0 || l >= m {
            return Err(Error::Argument(format!(
                "({m},{n};{l}) is not a Hermite normal form: need m,n ≥ 1 and 0 ≤ l < m"
            )));
        }
        Ok(HnfTriple { m, n, l })
    }

    /// Index of the sublattice.
    pub fn index(&self) -> u64 {
        self.m * self.n
    }

    pub fn basis(&self) -> IntBasis {
        IntBasis::new(self.m as i64, 0, self.l as i64, self.n as i64)
    }
}

impl fmt::Display for HnfTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.m, self.n, self.l)
    }
}

/// `τ ↦ (c + dτ)/(a + bτ)` with `ad − bc = 1`.
///
/// The matrix acts on the column `(1, τ)`, so composition is the matrix product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap { a: 1, b: 0, c: 0, d: 1 };
    /// `τ ↦ −1/τ`.
    pub const INVERSION: UnimodularMap = UnimodularMap { a: 0, b: 1, c: -1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::Argument(format!("({a},{b},{c},{d}) does not have determinant 1")));
        }
        Ok(UnimodularMap { a, b, c, d })
    }

    /// `τ ↦ τ + k`.
    pub fn shift(k: i64) -> Self {
        UnimodularMap { a: 1, b: 0, c: k, d: 1 }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        UnimodularMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn height(&self) -> i64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn apply(&self, tau: Complex64) -> Complex64 {
        let num = Complex64::new(self.c as f64, 0.0) + tau * self.d as f64;
        let den = Complex64::new(self.a as f64, 0.0) + tau * self.b as f64;
        num / den
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Hermite normal form of the sublattice spanned by `a + bτ` and `c + dτ`.
pub fn hnf_of_basis(basis: IntBasis) -> Result<HnfTriple> {
    let det = (basis.a as i128) * (basis.d as i128) - (basis.b as i128) * (basis.c as i128);
    if det == 0 {
        return Err(Error::SingularBasis);
    }
    // Column operations on the τ-coefficients: Euclid until one vector is real.
    let (mut u, mut v) = ((basis.a as i128, basis.b as i128), (basis.c as i128, basis.d as i128));
    while v.1 != 0 {
        let q = u.1.div_euclid(v.1);
        u = (u.0 - q * v.0, u.1 - q * v.1);
        std::mem::swap(&mut u, &mut v);
    }
    // now v = (m', 0), u = (l', ±n)
    let (real, mixed) = (v, u);
    let m = real.0.abs();
    let (l, n) = if mixed.1 < 0 { (-mixed.0, -mixed.1) } else { mixed };
    debug_assert_eq!(m * n, det.abs());
    Ok(HnfTriple {
        m: m as u64,
        n: n as u64,
        l: l.rem_euclid(m) as u64,
    })
}

/// All sublattices of index `index`, ordered by `m` then `l`.
pub fn enumerate_hnf(index: u64) -> Vec<HnfTriple> {
    let mut out = Vec::new();
    for m in 1..=index {
        if !index.is_multiple_of(m) {
            continue;
        }
        let n = index / m;
        for l in 0..m {
            out.push(HnfTriple { m, n, l });
        }
    }
    out
}

/// Modulus `(l + nτ)/m` of the covering torus.
pub fn covering_modulus(tau: Modulus, h: HnfTriple) -> Modulus {
    let z = (Complex64::new(h.l as f64, 0.0) + tau.tau() * h.n as f64) / h.m as f64;
    Modulus(z)
}

pub fn sl2_apply(mu: UnimodularMap, tau: Modulus) -> Modulus {
    let z = mu.apply(tau.tau());
    // determinant one keeps Im > 0 up to round-off
    Modulus(Complex64::new(z.re, z.im.max(f64::MIN_POSITIVE)))
}

/// Reduced representative: `Re ∈ [−1/2, 1/2)`, `|τ| ≥ 1`, and `Re ≤ 0` when
/// `|τ| = 1`. Returns the map carrying the input to it.
pub fn sl2_reduce(tau: Modulus) -> (Modulus, UnimodularMap) {
    let mut z = tau.tau();
    let mut mu = UnimodularMap::IDENTITY;
    for _ in 0..100_000 {
        let k = (z.re + 0.5).floor();
        if k != 0.0 {
            let shift = UnimodularMap::shift(-(k as i64));
            z = Complex64::new(z.re - k, z.im);
            mu = shift.compose(&mu);
        }
        if z.norm_sqr() < 1.0 - REDUCE_EPS {
            z = -z.inv();
            mu = UnimodularMap::INVERSION.compose(&mu);
        } else {
            break;
        }
    }
    if z.re >= 0.5 - REDUCE_EPS {
        z = Complex64::new(z.re - 1.0, z.im);
        mu = UnimodularMap::shift(-1).compose(&mu);
    }
    if (z.norm_sqr() - 1.0).abs() <= REDUCE_EPS && z.re > REDUCE_EPS {
        z = -z.inv();
        mu = UnimodularMap::INVERSION.compose(&mu);
        if z.re < -0.5 - REDUCE_EPS {
            z = Complex64::new(z.re + 1.0, z.im);
            mu = UnimodularMap::shift(1).compose(&mu);
        }
    }
    (Modulus(z), mu)
}

/// Whether the tori of two moduli are isometric up to scaling (orientation
/// preserving isometries only).
pub fn lattices_isometric(tau1: Modulus, tau2: Modulus, tol: f64) -> bool {
    let (r1, _) = sl2_reduce(tau1);
    let (r2, _) = sl2_reduce(tau2);
    let z2 = r2.tau();
    // edge points of the reduced domain are glued; compare against all images
    let candidates = [z2, z2 + 1.0, z2 - 1.0, -z2.inv(), -z2.inv() + 1.0, -z2.inv() - 1.0];
    candidates.iter().any(|c| (r1.tau() - c).norm() <= tol)
}

/// A map `μ` with `μ(τ₁) ≈ τ₂`, if the two tori are isometric.
pub fn sl2_match(tau1: Modulus, tau2: Modulus, tol: f64) -> Option<UnimodularMap> {
    let (r1, m1) = sl2_reduce(tau1);
    let (r2, m2) = sl2_reduce(tau2);
    let s = UnimodularMap::INVERSION;
    let glue = [
        UnimodularMap::IDENTITY,
        UnimodularMap::shift(1),
        UnimodularMap::shift(-1),
        s,
        UnimodularMap::shift(1).compose(&s),
        UnimodularMap::shift(-1).compose(&s),
    ];
    glue.iter()
        .find(|g| (g.apply(r1.tau()) - r2.tau()).norm() <= tol)
        .map(|g| m2.inverse().compose(&g.compose(&m1)))
}

/// Default search bound for [`rectangular_solve`].
pub const DEFAULT_SEARCH_BOUND: i64 = 64;

/// Looks for a purely imaginary minimal modulus `τ` whose `(m, n; l)` cover is
/// isometric to `target`, i.e. `(m·μ(target) − l)/n ∈ iR₊` for some `μ` with
/// entries bounded by `bound`. `None` means none up to the bound.
pub fn rectangular_solve(target: Modulus, h: HnfTriple, bound: i64) -> Option<Modulus> {
    let candidate = |mu: &UnimodularMap| -> Option<Modulus> {
        let w = mu.apply(target.tau());
        let z = (w * h.m as f64 - h.l as f64) / h.n as f64;
        let scale = z.norm().max(1.0);
        (z.im > 0.0 && z.re.abs() <= 1e-9 * scale).then(|| Modulus(Complex64::new(0.0, z.im)))
    };
    if let Some(found) = candidate(&UnimodularMap::IDENTITY) {
        return Some(found);
    }
    let mut best: Option<(i64, UnimodularMap, Modulus)> = None;
    let mut consider = |mu: UnimodularMap| {
        if let Some(found) = candidate(&mu) {
            let key = mu.height();
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, mu, found));
            }
        }
    };
    for a in -bound..=bound {
        for b in -bound..=bound {
            if gcd(a, b) != 1 {
                continue;
            }
            if a == 0 {
                // b = ±1, c = −b, d free
                for d in -bound..=bound {
                    consider(UnimodularMap { a, b, c: -b, d });
                }
                continue;
            }
            for c in -bound..=bound {
                let num = 1 + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d.abs() <= bound {
                        consider(UnimodularMap { a, b, c, d });
                    }
                }
            }
        }
    }
    best.map(|(_, _, m)| m)
}

/// A lattice `Zα + Zβ ⊂ C` with `Im(β/α) > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl Lattice {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let lat = Lattice { alpha, beta };
        if !(lat.covolume() > 0.0) || !(alpha.norm() > 0.0) {
            return Err(Error::Argument(format!(
                "generators {alpha}, {beta} are not a positively oriented basis"
            )));
        }
        Ok(lat)
    }

    /// `Z + Zτ`.
    pub fn standard(tau: Modulus) -> Self {
        Lattice {
            alpha: Complex64::new(1.0, 0.0),
            beta: tau.tau(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        Modulus(self.beta / self.alpha)
    }

    /// Area of a fundamental parallelogram.
    pub fn covolume(&self) -> f64 {
        (self.alpha.conj() * self.beta).im
    }

    pub fn point(&self, j: i64, k: i64) -> Complex64 {
        self.alpha * j as f64 + self.beta * k as f64
    }

    /// Real coordinates `(x, y)` with `z = xα + yβ`.
    pub fn coords(&self, z: Complex64) -> (f64, f64) {
        let det = self.covolume();
        let x = (z.conj() * self.beta).im / det;
        let y = (self.alpha.conj() * z).im / det;
        (x, y)
    }

    /// Basis `(aα + bβ, cα + dβ)` for a unimodular change of basis.
    pub fn rebased(&self, mu: &UnimodularMap) -> Lattice {
        Lattice {
            alpha: self.alpha * mu.a as f64 + self.beta * mu.b as f64,
            beta: self.alpha * mu.c as f64 + self.beta * mu.d as f64,
        }
    }

    /// Sublattice `Λ(m, n; l)` spanned by `mα` and `lα + nβ`.
    pub fn sublattice(&self, h: HnfTriple) -> Lattice {
        Lattice {
            alpha: self.alpha * h.m as f64,
            beta: self.alpha * h.l as f64 + self.beta * h.n as f64,
        }
    }

    /// Gauss–Lagrange reduced basis of the same lattice, same orientation.
    pub fn reduced(&self) -> Lattice {
        let (mut u, mut v) = (self.alpha, self.beta);
        if u.norm_sqr() > v.norm_sqr() {
            std::mem::swap(&mut u, &mut v);
        }
        for _ in 0..10_000 {
            let q = ((u.conj() * v).re / u.norm_sqr()).round();
            v -= u * q;
            if v.norm_sqr() < u.norm_sqr() {
                std::mem::swap(&mut u, &mut v);
            } else {
                break;
            }
        }
        if (u.conj() * v).im < 0.0 {
            v = -v;
        }
        Lattice { alpha: u, beta: v }
    }

    /// Representative of `z` modulo the lattice with the smallest norm.
    /// Expects `self` to be reduced.
    pub fn shortest_representative(&self, z: Complex64) -> Complex64 {
        let (x, y) = self.coords(z);
        let (x0, y0) = (x.round(), y.round());
        let base = z - self.alpha * x0 - self.beta * y0;
        let mut best = base;
        for dj in -1..=1 {
            for dk in -1..=1 {
                let w = base - self.point(dj, dk);
                if w.norm_sqr() < best.norm_sqr() {
                    best = w;
                }
            }
        }
        best
    }

    /// Distance between `p` and `q` on the torus. Expects `self` to be reduced.
    pub fn torus_distance(&self, p: Point2, q: Point2) -> f64 {
        self.shortest_representative(p.to_complex() - q.to_complex()).norm()
    }
}
