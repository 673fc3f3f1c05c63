//! Moebius transformations of the Riemann sphere.
//!
//! Maps are stored as 2x2 complex matrices normalized to determinant one.
//! A map and its negative act identically, so equality always compares both
//! sign choices. The point at infinity is a first-class value, never a large
//! float.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for chordal comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Tolerance on trace^2 used by the classifier.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Smallest determinant magnitude accepted by the normalizing constructor.
pub const MIN_DET: f64 = 1e-300;

/// A point of the Riemann sphere: a finite complex number or infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub const INFINITY: SpherePoint = SpherePoint::Infinity;

    pub fn finite(re: f64, im: f64) -> SpherePoint {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Embedding into the unit sphere of R^3 (stereographic from the north
    /// pole; infinity maps to (0,0,1)).
    pub fn to_unit_sphere(&self) -> [f64; 3] {
        match self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let n = z.norm_sqr();
                if !n.is_finite() {
                    return [0.0, 0.0, 1.0];
                }
                let d = 1.0 + n;
                [2.0 * z.re / d, 2.0 * z.im / d, (n - 1.0) / d]
            }
        }
    }

    pub fn from_unit_sphere(p: [f64; 3]) -> SpherePoint {
        let denom = 1.0 - p[2];
        if denom <= 1e-15 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(Complex64::new(p[0] / denom, p[1] / denom))
        }
    }

    /// Chordal distance, the Euclidean distance between the R^3 embeddings.
    /// Bounded by 2, with antipodes (e.g. 0 and infinity) at exactly 2.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        let p = self.to_unit_sphere();
        let q = other.to_unit_sphere();
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        let dz = p[2] - q[2];
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn close_to(&self, other: &SpherePoint, tol: f64) -> bool {
        self.chordal_distance(other) <= tol
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl std::fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => write!(f, "{} {}", z.re, z.im),
        }
    }
}

/// Conjugacy type of a normalized Moebius map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

impl std::fmt::Display for MapClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MapClass::Identity => "identity",
            MapClass::Elliptic => "elliptic",
            MapClass::Parabolic => "parabolic",
            MapClass::Loxodromic => "loxodromic",
        };
        write!(f, "{s}")
    }
}

/// A Moebius transformation z -> (az+b)/(cz+d), normalized to ad-bc = 1.
#[derive(Debug, Clone, Copy)]
pub struct Moebius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Moebius {
    /// Normalizing constructor. Divides by a square root of the determinant;
    /// rejects numerically singular input.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Moebius> {
        let det = a * d - b * c;
        if !det.is_finite() || det.norm() < MIN_DET {
            return Err(Error::SingularMatrix(det.norm()));
        }
        let s = det.sqrt();
        Ok(Moebius {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn from_reals(entries: [f64; 8]) -> Result<Moebius> {
        Moebius::new(
            Complex64::new(entries[0], entries[1]),
            Complex64::new(entries[2], entries[3]),
            Complex64::new(entries[4], entries[5]),
            Complex64::new(entries[6], entries[7]),
        )
    }

    /// Row-major, re/im interleaved entry list.
    pub fn to_reals(&self) -> [f64; 8] {
        [
            self.a.re, self.a.im, self.b.re, self.b.im, self.c.re, self.c.im, self.d.re, self.d.im,
        ]
    }

    pub fn identity() -> Moebius {
        Moebius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// z -> z + t.
    pub fn translation(t: Complex64) -> Moebius {
        Moebius::new(
            Complex64::new(1.0, 0.0),
            t,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        )
        .expect("translation is invertible")
    }

    /// z -> k z for k != 0.
    pub fn scaling(k: Complex64) -> Result<Moebius> {
        Moebius::new(k, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Moebius {
        // det is one, so the adjugate is the inverse.
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Matrix product; the right factor acts first on points.
    pub fn compose(&self, rhs: &Moebius) -> Moebius {
        let m = Moebius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        };
        // Renormalize to absorb rounding drift in long products.
        let s = m.det().sqrt();
        Moebius {
            a: m.a / s,
            b: m.b / s,
            c: m.c / s,
            d: m.d / s,
        }
    }

    /// Conjugation g self g^{-1}.
    pub fn conjugate_by(&self, g: &Moebius) -> Moebius {
        g.compose(self).compose(&g.inverse())
    }

    pub fn apply(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Infinity => {
                if self.c.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == 0.0 {
                    return SpherePoint::Infinity;
                }
                let w = (self.a * z + self.b) / den;
                if w.re.is_finite() && w.im.is_finite() {
                    SpherePoint::Finite(w)
                } else {
                    SpherePoint::Infinity
                }
            }
        }
    }

    /// Largest entrywise distance to another map, minimized over the sign
    /// ambiguity.
    pub fn entry_distance(&self, other: &Moebius) -> f64 {
        let plus = (self.a - other.a)
            .norm()
            .max((self.b - other.b).norm())
            .max((self.c - other.c).norm())
            .max((self.d - other.d).norm());
        let minus = (self.a + other.a)
            .norm()
            .max((self.b + other.b).norm())
            .max((self.c + other.c).norm())
            .max((self.d + other.d).norm());
        plus.min(minus)
    }

    pub fn approx_eq(&self, other: &Moebius, tol: f64) -> bool {
        self.entry_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Moebius::identity(), tol)
    }

    /// Trace criterion with tolerance on trace^2.
    pub fn classify(&self) -> MapClass {
        if self.is_identity(CLASSIFY_TOL) {
            return MapClass::Identity;
        }
        let t2 = self.trace() * self.trace();
        if (t2 - Complex64::new(4.0, 0.0)).norm() < CLASSIFY_TOL {
            return MapClass::Parabolic;
        }
        if t2.im.abs() < CLASSIFY_TOL && t2.re >= -CLASSIFY_TOL && t2.re < 4.0 {
            return MapClass::Elliptic;
        }
        MapClass::Loxodromic
    }

    /// Fixed points; loxodromic maps list the attracting point first.
    pub fn fixed_points(&self) -> Result<Vec<SpherePoint>> {
        let class = self.classify();
        if class == MapClass::Identity {
            return Err(Error::IdentityInput);
        }
        let tiny = 1e-14;
        if self.c.norm() < tiny {
            // Affine: infinity is fixed.
            let diff = self.a - self.d;
            if diff.norm() < tiny {
                // Translation: only infinity.
                return Ok(vec![SpherePoint::Infinity]);
            }
            let other = SpherePoint::Finite(self.b / diff);
            if class == MapClass::Loxodromic {
                // Multiplier at infinity is (d/a)^-... attracting iff |a| > |d|.
                if self.a.norm() > self.d.norm() {
                    return Ok(vec![SpherePoint::Infinity, other]);
                }
                return Ok(vec![other, SpherePoint::Infinity]);
            }
            return Ok(vec![SpherePoint::Infinity, other]);
        }
        let disc = self.trace() * self.trace() - Complex64::new(4.0, 0.0);
        if class == MapClass::Parabolic {
            return Ok(vec![SpherePoint::Finite((self.a - self.d) / (2.0 * self.c))]);
        }
        let s = disc.sqrt();
        let z1 = (self.a - self.d + s) / (2.0 * self.c);
        let z2 = (self.a - self.d - s) / (2.0 * self.c);
        let p1 = SpherePoint::Finite(z1);
        let p2 = SpherePoint::Finite(z2);
        if class == MapClass::Loxodromic {
            // Attracting iff |m'(z)| < 1, i.e. |cz+d| > 1.
            let m1 = (self.c * z1 + self.d).norm();
            if m1 > 1.0 {
                Ok(vec![p1, p2])
            } else {
                Ok(vec![p2, p1])
            }
        } else {
            Ok(vec![p1, p2])
        }
    }

    /// Norm of the derivative with respect to the round sphere metric.
    ///
    /// For det-one matrices this is (1+|z|^2)/(|az+b|^2 + |cz+d|^2), which is
    /// finite and positive everywhere, including at poles and infinity.
    pub fn spherical_derivative(&self, z: SpherePoint) -> f64 {
        match z {
            SpherePoint::Infinity => 1.0 / (self.a.norm_sqr() + self.c.norm_sqr()),
            SpherePoint::Finite(z) => {
                let num = self.a * z + self.b;
                let den = self.c * z + self.d;
                let nn = num.norm_sqr();
                let dd = den.norm_sqr();
                if nn.is_finite() && dd.is_finite() && z.norm_sqr().is_finite() {
                    (1.0 + z.norm_sqr()) / (nn + dd)
                } else {
                    // Fall back to the limit at infinity.
                    1.0 / (self.a.norm_sqr() + self.c.norm_sqr())
                }
            }
        }
    }

    /// The multiplier of a loxodromic or elliptic map: derivative at the
    /// repelling (second listed) fixed point... inverse of the derivative at
    /// the attracting one. For z -> kz this returns k.
    pub fn multiplier(&self) -> Result<Complex64> {
        let fps = self.fixed_points()?;
        if fps.len() != 2 {
            return Err(Error::NotLoxodromic("parabolic"));
        }
        // Conjugate so the fixed points are 0 and infinity; the diagonal model
        // is then (sqrt(k), 1/sqrt(k)) with k the multiplier at the repelling
        // point, i.e. the model map is z -> kz with the attracting point at
        // infinity when |k| > 1.
        let t = map_zero_inf(fps[1], fps[0])?;
        let m = t.inverse().compose(self).compose(&t);
        // m is diagonal: a/d = k.
        Ok(m.a / m.d)
    }
}

/// A Moebius map sending 0 to `zero_to` and infinity to `inf_to`.
pub fn map_zero_inf(zero_to: SpherePoint, inf_to: SpherePoint) -> Result<Moebius> {
    if zero_to.chordal_distance(&inf_to) < 1e-14 {
        return Err(Error::CoincidentFixedPoints);
    }
    match (zero_to, inf_to) {
        (SpherePoint::Finite(p), SpherePoint::Finite(q)) => Moebius::new(
            q,
            p,
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
        ),
        (SpherePoint::Infinity, SpherePoint::Finite(q)) => Moebius::new(
            q,
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ),
        (SpherePoint::Finite(p), SpherePoint::Infinity) => Moebius::new(
            Complex64::new(1.0, 0.0),
            p,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ),
        (SpherePoint::Infinity, SpherePoint::Infinity) => Err(Error::CoincidentFixedPoints),
    }
}

/// The loxodromic with the given attracting/repelling fixed points,
/// translation length and rotation angle. Rejects non-positive lengths.
pub fn loxodromic_from_axis(
    attract: SpherePoint,
    repel: SpherePoint,
    length: f64,
    rotation: f64,
) -> Result<Moebius> {
    if !(length > 0.0) {
        return Err(Error::NonPositiveLength(length));
    }
    if attract.chordal_distance(&repel) < 1e-14 {
        return Err(Error::CoincidentFixedPoints);
    }
    let half = Complex64::new(length / 2.0, rotation / 2.0).exp();
    let model = Moebius {
        a: half,
        b: Complex64::new(0.0, 0.0),
        c: Complex64::new(0.0, 0.0),
        d: 1.0 / half,
    };
    // Conjugate the model (repelling 0, attracting infinity) to the target axis.
    let t = map_zero_inf(repel, attract)?;
    Ok(model.conjugate_by(&t))
}

/// Loxodromic with real translation fixing p2 and p3, with spherical
/// derivative 1/lambda at p2 and lambda at p3.
pub fn c_lambda(p2: SpherePoint, p3: SpherePoint, lambda: f64) -> Result<Moebius> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveLength(lambda));
    }
    if p2.chordal_distance(&p3) < 1e-14 {
        return Err(Error::CoincidentFixedPoints);
    }
    let t = map_zero_inf(p2, p3)?;
    let model = Moebius::scaling(Complex64::new(1.0 / lambda, 0.0))?;
    Ok(model.conjugate_by(&t))
}

/// The unique Moebius map sending one ordered triple of distinct points to
/// another.
pub fn triple_transitive(src: [SpherePoint; 3], dst: [SpherePoint; 3]) -> Result<Moebius> {
    let to_standard = |t: &[SpherePoint; 3]| -> Result<Moebius> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if t[i].chordal_distance(&t[j]) < 1e-13 {
                    return Err(Error::RepeatedTriplePoint);
                }
            }
        }
        // Map (z1, z2, z3) -> (0, 1, infinity).
        let one = Complex64::new(1.0, 0.0);
        let m = match (t[0], t[1], t[2]) {
            (SpherePoint::Infinity, SpherePoint::Finite(z2), SpherePoint::Finite(z3)) => {
                Moebius::new(Complex64::new(0.0, 0.0), -(z2 - z3), -one, z3)
            }
            (SpherePoint::Finite(z1), SpherePoint::Infinity, SpherePoint::Finite(z3)) => {
                Moebius::new(one, -z1, one, -z3)
            }
            (SpherePoint::Finite(z1), SpherePoint::Finite(z2), SpherePoint::Infinity) => {
                Moebius::new(-one, z1, Complex64::new(0.0, 0.0), -(z2 - z1))
            }
            (SpherePoint::Finite(z1), SpherePoint::Finite(z2), SpherePoint::Finite(z3)) => {
                Moebius::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
            }
            _ => return Err(Error::RepeatedTriplePoint),
        }?;
        Ok(m)
    };
    let ms = to_standard(&src)?;
    let md = to_standard(&dst)?;
    Ok(md.inverse().compose(&ms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> SpherePoint {
        SpherePoint::finite(re, im)
    }

    fn scaling(k: f64) -> Moebius {
        Moebius::scaling(Complex64::new(k, 0.0)).unwrap()
    }

    #[test]
    fn compose_identity_and_inverse() {
        let m = scaling(4.0);
        assert!(Moebius::identity().compose(&m).approx_eq(&m, 1e-12));
        assert!(m.compose(&m.inverse()).is_identity(1e-12));
    }

    #[test]
    fn compose_two_scalings() {
        let m = scaling(4.0).compose(&scaling(4.0));
        // Checked by applying to sample points 1 and i.
        for p in [z(1.0, 0.0), z(0.0, 1.0)] {
            let got = m.apply(p);
            let want = match p {
                SpherePoint::Finite(w) => SpherePoint::Finite(16.0 * w),
                _ => unreachable!(),
            };
            assert!(got.close_to(&want, 1e-12));
        }
    }

    #[test]
    fn apply_infinity_conventions() {
        let shift = Moebius::translation(Complex64::new(1.0, 0.0));
        assert!(shift.apply(SpherePoint::Infinity).is_infinite());
        let inv = Moebius::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        assert!(inv.apply(z(0.0, 0.0)).is_infinite());
        assert!(scaling(4.0).apply(z(2.0, 0.0)).close_to(&z(8.0, 0.0), 1e-12));
    }

    #[test]
    fn classify_basic() {
        assert_eq!(Moebius::identity().classify(), MapClass::Identity);
        assert_eq!(
            Moebius::translation(Complex64::new(1.0, 0.0)).classify(),
            MapClass::Parabolic
        );
        // trace 2.5 after normalization: loxodromic, confirmed by the orbit
        // of 1 converging to the attracting fixed point at infinity.
        let m = scaling(4.0);
        assert_eq!(m.classify(), MapClass::Loxodromic);
        let mut p = z(1.0, 0.0);
        for _ in 0..60 {
            p = m.apply(p);
        }
        assert!(p.chordal_distance(&SpherePoint::Infinity) < 1e-9);
    }

    #[test]
    fn fixed_points_scaling_and_translation() {
        let fps = scaling(4.0).fixed_points().unwrap();
        assert_eq!(fps.len(), 2);
        assert!(fps[0].is_infinite(), "|4|>1 pushes toward infinity");
        assert!(fps[1].close_to(&z(0.0, 0.0), 1e-12));

        let fps = Moebius::translation(Complex64::new(1.0, 0.0))
            .fixed_points()
            .unwrap();
        assert_eq!(fps.len(), 1);
        assert!(fps[0].is_infinite());
    }

    #[test]
    fn fixed_points_inversion() {
        // z -> 1/z fixes +1 and -1 (solve z^2 = 1).
        let inv = Moebius::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let fps = inv.fixed_points().unwrap();
        assert_eq!(fps.len(), 2);
        let mut found = [false, false];
        for p in &fps {
            if p.close_to(&z(1.0, 0.0), 1e-12) {
                found[0] = true;
            }
            if p.close_to(&z(-1.0, 0.0), 1e-12) {
                found[1] = true;
            }
        }
        assert!(found[0] && found[1]);
    }

    #[test]
    fn spherical_derivative_values() {
        let m = scaling(4.0);
        assert!((m.spherical_derivative(z(0.0, 0.0)) - 4.0).abs() < 1e-12);
        assert!((Moebius::identity().spherical_derivative(z(3.0, -2.0)) - 1.0).abs() < 1e-12);
        let inv = Moebius::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        // Inversion is a chordal isometry on the unit circle.
        assert!((inv.spherical_derivative(z(1.0, 0.0)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn loxodromic_from_axis_model_case() {
        let m = loxodromic_from_axis(SpherePoint::Infinity, z(0.0, 0.0), 4.0f64.ln(), 0.0).unwrap();
        assert!(m.approx_eq(&scaling(4.0), 1e-12));
        assert!(loxodromic_from_axis(z(1.0, 0.0), z(-1.0, 0.0), 0.0, std::f64::consts::PI).is_err());
    }

    #[test]
    fn loxodromic_from_axis_conjugated() {
        let m = loxodromic_from_axis(z(1.0, 0.0), z(-1.0, 0.0), 4.0f64.ln(), 0.0).unwrap();
        assert_eq!(m.classify(), MapClass::Loxodromic);
        let fps = m.fixed_points().unwrap();
        assert!(fps[0].close_to(&z(1.0, 0.0), 1e-9));
        assert!(fps[1].close_to(&z(-1.0, 0.0), 1e-9));
        // Multiplier by evaluation: derivative norm at the repelling point is 4.
        assert!((m.spherical_derivative(fps[1]) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn c_lambda_post_condition() {
        let m = c_lambda(z(0.0, 0.0), SpherePoint::Infinity, 2.0).unwrap();
        assert!(m.approx_eq(&scaling(0.5), 1e-12));
        let id = c_lambda(z(0.0, 0.0), SpherePoint::Infinity, 1.0).unwrap();
        assert!(id.is_identity(1e-12));
        let m = c_lambda(z(1.0, 0.0), z(-1.0, 0.0), 2.0).unwrap();
        assert!((m.spherical_derivative(z(1.0, 0.0)) - 0.5).abs() < 1e-10);
        assert!((m.spherical_derivative(z(-1.0, 0.0)) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn triple_transitive_cases() {
        let id = triple_transitive(
            [z(0.0, 0.0), z(1.0, 0.0), SpherePoint::Infinity],
            [z(0.0, 0.0), z(1.0, 0.0), SpherePoint::Infinity],
        )
        .unwrap();
        assert!(id.is_identity(1e-12));

        let m = triple_transitive(
            [z(0.0, 0.0), z(1.0, 0.0), SpherePoint::Infinity],
            [SpherePoint::Infinity, z(1.0, 0.0), z(0.0, 0.0)],
        )
        .unwrap();
        for (p, q) in [
            (z(0.0, 0.0), SpherePoint::Infinity),
            (z(1.0, 0.0), z(1.0, 0.0)),
            (SpherePoint::Infinity, z(0.0, 0.0)),
            (z(2.0, 0.0), z(0.5, 0.0)),
        ] {
            assert!(m.apply(p).close_to(&q, 1e-10));
        }

        let m = triple_transitive(
            [z(0.0, 0.0), z(1.0, 0.0), SpherePoint::Infinity],
            [z(1.0, 0.0), z(2.0, 0.0), SpherePoint::Infinity],
        )
        .unwrap();
        assert!(m.approx_eq(&Moebius::translation(Complex64::new(1.0, 0.0)), 1e-10));

        assert!(triple_transitive(
            [z(0.0, 0.0), z(0.0, 0.0), SpherePoint::Infinity],
            [z(1.0, 0.0), z(2.0, 0.0), SpherePoint::Infinity],
        )
        .is_err());
    }

    #[test]
    fn chordal_distances() {
        assert!((z(0.0, 0.0).chordal_distance(&SpherePoint::Infinity) - 2.0).abs() < 1e-12);
        assert!(z(0.0, 0.0).chordal_distance(&z(0.0, 0.0)) < 1e-15);
        let d = z(1.0, 0.0).chordal_distance(&z(0.0, 1.0));
        assert!((d - 2.0f64.sqrt()).abs() < 1e-12);
    }
}
