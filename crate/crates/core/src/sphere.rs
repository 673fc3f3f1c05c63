//! Round circles and disks on the Riemann sphere.
//!
//! A generalized circle is stored as a Hermitian form
//! `A|z|^2 + 2 Re(conj(B) z) + D = 0` with `A`, `D` real, normalized so the
//! discriminant `|B|^2 - AD` equals one. Under the stereographic embedding
//! the circle becomes a plane section of the unit sphere, so every disk is a
//! spherical cap. All metric predicates (diameter, tangency, disjointness,
//! containment margins) are computed exactly on caps, which keeps them
//! uniform in the point at infinity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moebius::{map_zero_inf, MapClass, Moebius, SpherePoint};

/// Default chordal margin for strict containments.
pub const DEFAULT_MARGIN: f64 = 1e-6;
/// Smallest admissible circle discriminant.
pub const MIN_DISC: f64 = 1e-14;

/// Which complementary component of a circle a disk selects: the side where
/// the Hermitian form is positive or the side where it is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }
}

/// A round circle on the sphere (Euclidean circle or line in the plane).
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub a: f64,
    pub b: Complex64,
    pub d: f64,
}

impl Circle {
    /// Normalizing constructor; scales so the discriminant is one.
    pub fn new(a: f64, b: Complex64, d: f64) -> Result<Circle> {
        let disc = b.norm_sqr() - a * d;
        if !(disc > MIN_DISC) || !disc.is_finite() {
            return Err(Error::DegenerateCircle(disc));
        }
        let s = disc.sqrt();
        Ok(Circle {
            a: a / s,
            b: b / s,
            d: d / s,
        })
    }

    /// Euclidean circle |z - center| = radius. Built directly in normalized
    /// form (discriminant one), with |center|^2 - radius^2 factored to avoid
    /// cancellation for circles through the origin.
    pub fn from_center_radius(center: Complex64, radius: f64) -> Result<Circle> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::DegenerateCircle(radius));
        }
        let d = (center.norm() - radius) * (center.norm() + radius) / radius;
        Ok(Circle {
            a: 1.0 / radius,
            b: -center / radius,
            d,
        })
    }

    /// The line Re(conj(direction_normal) z) = offset, where `direction_normal`
    /// is a unit vector normal to the line pointing to the positive side.
    pub fn line(normal: Complex64, offset: f64) -> Result<Circle> {
        Circle::new(0.0, normal, -2.0 * offset)
    }

    pub fn value(&self, z: SpherePoint) -> f64 {
        match z {
            SpherePoint::Infinity => self.a,
            SpherePoint::Finite(z) => {
                let n = z.norm_sqr();
                if n.is_finite() {
                    self.a * n + 2.0 * (self.b.conj() * z).re + self.d
                } else {
                    self.a
                }
            }
        }
    }

    /// Entrywise distance between normalized forms. The form is only
    /// determined up to sign (negating A, B, D keeps the circle and the
    /// discriminant), so both sign choices are compared.
    pub fn form_distance(&self, other: &Circle) -> f64 {
        let direct = (self.a - other.a)
            .abs()
            .max((self.b - other.b).norm())
            .max((self.d - other.d).abs());
        let negated = (self.a + other.a)
            .abs()
            .max((self.b + other.b).norm())
            .max((self.d + other.d).abs());
        direct.min(negated)
    }

    /// Entrywise distance to the other form with the matching sign
    /// convention (no sign minimization).
    fn signed_form_distance(&self, other: &Circle, negate_other: bool) -> f64 {
        let s = if negate_other { -1.0 } else { 1.0 };
        (self.a - s * other.a)
            .abs()
            .max((self.b - s * other.b).norm())
            .max((self.d - s * other.d).abs())
    }
}

/// A spherical cap {P : u . P > h} with |u| = 1 and |h| < 1. Internal metric
/// representation of a disk.
#[derive(Debug, Clone, Copy)]
pub struct Cap {
    pub u: [f64; 3],
    pub h: f64,
}

impl Cap {
    /// Angular radius in (0, pi).
    pub fn theta(&self) -> f64 {
        self.h.clamp(-1.0, 1.0).acos()
    }

    /// Angle between cap centers, via atan2 of cross and dot products so
    /// that tiny and near-pi angles keep full precision.
    pub fn center_angle(&self, other: &Cap) -> f64 {
        angle_between(self.u, other.u)
    }

    /// Point of the sphere at angle `ang` from this cap's center along the
    /// arc toward the other cap's center.
    pub fn point_toward(&self, other: &Cap, ang: f64) -> [f64; 3] {
        let psi = self.center_angle(other);
        let s = psi.sin();
        if s < 1e-12 {
            // Centers aligned: any meridian direction works; pick one
            // deterministically orthogonal to u.
            let u = self.u;
            let ref_axis = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let mut v = [
                u[1] * ref_axis[2] - u[2] * ref_axis[1],
                u[2] * ref_axis[0] - u[0] * ref_axis[2],
                u[0] * ref_axis[1] - u[1] * ref_axis[0],
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            for x in v.iter_mut() {
                *x /= n;
            }
            return [
                ang.cos() * u[0] + ang.sin() * v[0],
                ang.cos() * u[1] + ang.sin() * v[1],
                ang.cos() * u[2] + ang.sin() * v[2],
            ];
        }
        let c1 = (psi - ang).sin() / s;
        let c2 = ang.sin() / s;
        [
            c1 * self.u[0] + c2 * other.u[0],
            c1 * self.u[1] + c2 * other.u[1],
            c1 * self.u[2] + c2 * other.u[2],
        ]
    }
}

/// Angle between two unit vectors, stable at both 0 and pi.
fn angle_between(a: [f64; 3], b: [f64; 3]) -> f64 {
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    let dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    cross_norm.atan2(dot)
}

/// A round open disk: a circle plus the side bit selecting one complementary
/// component.
#[derive(Debug, Clone, Copy)]
pub struct Disk {
    pub circle: Circle,
    pub side: Side,
}

impl Disk {
    pub fn new(circle: Circle, side: Side) -> Disk {
        Disk { circle, side }
    }

    /// Euclidean disk |z - center| < radius.
    pub fn from_center_radius(center: Complex64, radius: f64) -> Result<Disk> {
        let c = Circle::from_center_radius(center, radius)?;
        // The form value at the center is -radius^2 (after scaling), negative.
        Ok(Disk::new(c, Side::Negative))
    }

    /// Half-plane {Re(conj(normal) z) > offset} for a unit normal.
    pub fn half_plane(normal: Complex64, offset: f64) -> Result<Disk> {
        Ok(Disk::new(Circle::line(normal, offset)?, Side::Positive))
    }

    pub fn complement(&self) -> Disk {
        Disk::new(self.circle, self.side.flip())
    }

    /// Cap representation with interior {u . P > h}.
    pub fn cap(&self) -> Cap {
        let c = &self.circle;
        let n = [2.0 * c.b.re, 2.0 * c.b.im, c.a - c.d];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let mut u = [n[0] / len, n[1] / len, n[2] / len];
        let mut h = -(c.a + c.d) / len;
        if self.side == Side::Negative {
            u = [-u[0], -u[1], -u[2]];
            h = -h;
        }
        Cap { u, h }
    }

    /// Disk from a cap.
    pub fn from_cap(cap: Cap) -> Result<Disk> {
        let den = 2.0 / (1.0 - cap.h * cap.h).sqrt();
        let b = Complex64::new(cap.u[0], cap.u[1]) * (den / 2.0);
        let a = (cap.u[2] - cap.h) * (den / 2.0);
        let d = (-cap.u[2] - cap.h) * (den / 2.0);
        Ok(Disk::new(Circle::new(a, b, d)?, Side::Positive))
    }

    /// A point in the interior: the cap center projected back to the plane.
    pub fn interior_point(&self) -> SpherePoint {
        SpherePoint::from_unit_sphere(self.cap().u)
    }

    pub fn contains(&self, z: &SpherePoint) -> bool {
        self.signed_depth(z) > 0.0
    }

    /// Chordal distance from the point to the boundary circle, positive
    /// inside the open disk and negative outside.
    pub fn signed_depth(&self, z: &SpherePoint) -> f64 {
        let cap = self.cap();
        let ang = angle_between(cap.u, z.to_unit_sphere());
        2.0 * ((cap.theta() - ang) / 2.0).sin()
    }

    /// Largest chordal distance between two points of the closed disk.
    pub fn chordal_diameter(&self) -> f64 {
        let cap = self.cap();
        if cap.h >= 0.0 {
            2.0 * (1.0 - cap.h * cap.h).sqrt()
        } else {
            2.0
        }
    }

    /// Signed chordal gap between two closed disks: positive when disjoint,
    /// negative when overlapping, about zero at tangency.
    pub fn chordal_gap(&self, other: &Disk) -> f64 {
        let c1 = self.cap();
        let c2 = other.cap();
        let psi = c1.center_angle(&c2);
        let gap = psi - c1.theta() - c2.theta();
        2.0 * (gap.clamp(-std::f64::consts::PI, std::f64::consts::PI) / 2.0).sin()
    }

    /// Signed chordal margin by which this disk sits inside `other`
    /// (positive when contained with room to spare).
    pub fn containment_margin(&self, other: &Disk) -> f64 {
        let inner = self.cap();
        let outer = other.cap();
        let psi = inner.center_angle(&outer);
        let slack = outer.theta() - inner.theta() - psi;
        2.0 * (slack.clamp(-std::f64::consts::PI, std::f64::consts::PI) / 2.0).sin()
    }

    /// Entrywise distance between disks as oriented regions: negating a form
    /// swaps its sides, so the comparison matches the sign convention to the
    /// side bits.
    pub fn form_distance(&self, other: &Disk) -> f64 {
        self.circle
            .signed_form_distance(&other.circle, self.side != other.side)
    }
}

/// True when the closed disks are at least `margin` apart in the chordal
/// metric.
pub fn disjoint(d1: &Disk, d2: &Disk, margin: f64) -> bool {
    d1.chordal_gap(d2) >= margin
}

/// The single common point of two closed disks that are tangent within
/// `tol`; `None` when they overlap or are separated by more than `tol`.
pub fn tangency(d1: &Disk, d2: &Disk, tol: f64) -> Option<SpherePoint> {
    let c1 = d1.cap();
    let c2 = d2.cap();
    let psi = c1.center_angle(&c2);
    let gap = psi - c1.theta() - c2.theta();
    if (2.0 * (gap / 2.0).sin()).abs() > tol {
        return None;
    }
    let p = c1.point_toward(&c2, c1.theta());
    Some(SpherePoint::from_unit_sphere(p))
}

/// Chordal distance between two points (module-level name for the metric).
pub fn chordal_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    p.chordal_distance(q)
}

/// Orthonormal tangent frame at a unit vector, chosen deterministically.
fn tangent_frame(u: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let ref_axis = if u[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut e1 = [
        u[1] * ref_axis[2] - u[2] * ref_axis[1],
        u[2] * ref_axis[0] - u[0] * ref_axis[2],
        u[0] * ref_axis[1] - u[1] * ref_axis[0],
    ];
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    for x in e1.iter_mut() {
        *x /= n;
    }
    let e2 = [
        u[1] * e1[2] - u[2] * e1[1],
        u[2] * e1[0] - u[0] * e1[2],
        u[0] * e1[1] - u[1] * e1[0],
    ];
    (e1, e2)
}

/// Boundary point of a cap at the given meridian angle.
fn cap_boundary_point(cap: &Cap, phi: f64) -> SpherePoint {
    let (e1, e2) = tangent_frame(cap.u);
    let st = (1.0 - cap.h * cap.h).max(0.0).sqrt();
    let p = [
        cap.h * cap.u[0] + st * (phi.cos() * e1[0] + phi.sin() * e2[0]),
        cap.h * cap.u[1] + st * (phi.cos() * e1[1] + phi.sin() * e2[1]),
        cap.h * cap.u[2] + st * (phi.cos() * e1[2] + phi.sin() * e2[2]),
    ];
    SpherePoint::from_unit_sphere(p)
}

/// Circle through three plane points, fitted in centroid-local coordinates
/// so that tiny circles far from the origin keep full relative precision.
fn circle_through(q1: Complex64, q2: Complex64, q3: Complex64) -> Result<Circle> {
    let z0 = (q1 + q2 + q3) / 3.0;
    let w1 = q1 - z0;
    let w2 = q2 - z0;
    let w3 = q3 - z0;
    let u = w2 - w1;
    let v = w3 - w1;
    let cross = u.re * v.im - u.im * v.re;
    let scale = u.norm().max(v.norm());
    if scale < 1e-300 {
        return Err(Error::DegenerateCircle(0.0));
    }
    if cross.abs() <= 1e-14 * scale * scale {
        // Collinear: a line through q1 with direction u (or v if u vanishes).
        let dir = if u.norm() > v.norm() { u } else { v };
        let normal = Complex64::new(0.0, 1.0) * dir / dir.norm();
        let offset = (normal.conj() * q1).re;
        return Circle::line(normal, offset);
    }
    let uu = u.norm_sqr();
    let vv = v.norm_sqr();
    let cx = w1.re + (v.im * uu - u.im * vv) / (2.0 * cross);
    let cy = w1.im + (u.re * vv - v.re * uu) / (2.0 * cross);
    let center_local = Complex64::new(cx, cy);
    let radius = (center_local - w1).norm();
    Circle::from_center_radius(z0 + center_local, radius)
}

/// Image of a disk under a Moebius map.
///
/// The image circle is fitted through three mapped boundary points (Moebius
/// maps send round circles to round circles) and the side is chosen so that
/// the image of an interior point lies inside. The three boundary samples
/// are re-chosen when the map squashes them together.
pub fn image_disk(m: &Moebius, d: &Disk) -> Disk {
    let cap = d.cap();
    let mut best: Option<([SpherePoint; 3], f64)> = None;
    for attempt in 0..4 {
        let base = attempt as f64 * std::f64::consts::PI / 6.0;
        let pts = [
            m.apply(cap_boundary_point(&cap, base)),
            m.apply(cap_boundary_point(&cap, base + 2.0 * std::f64::consts::PI / 3.0)),
            m.apply(cap_boundary_point(&cap, base + 4.0 * std::f64::consts::PI / 3.0)),
        ];
        let d01 = pts[0].chordal_distance(&pts[1]);
        let d02 = pts[0].chordal_distance(&pts[2]);
        let d12 = pts[1].chordal_distance(&pts[2]);
        let quality = d01.min(d02).min(d12);
        if best.as_ref().map_or(true, |(_, q)| quality > *q) {
            best = Some((pts, quality));
        }
        if quality > 0.1 {
            break;
        }
    }
    let (pts, _) = best.expect("at least one sample attempt");
    let circle = match (pts[0].as_finite(), pts[1].as_finite(), pts[2].as_finite()) {
        (Some(q1), Some(q2), Some(q3)) => {
            circle_through(q1, q2, q3).expect("Moebius images of circles are circles")
        }
        // One point at infinity: the image is a line through the other two.
        (None, Some(q2), Some(q3)) => line_through(q2, q3),
        (Some(q1), None, Some(q3)) => line_through(q1, q3),
        (Some(q1), Some(q2), None) => line_through(q1, q2),
        _ => unreachable!("a circle passes through infinity at most once"),
    };
    // Pick the side containing the image of an interior point. The signed
    // depth is computed on caps, which keeps its sign reliable even when the
    // image circle is tiny and the raw form value would cancel away.
    let positive = Disk::new(circle, Side::Positive);
    let sample = m.apply(d.interior_point());
    if positive.signed_depth(&sample) >= 0.0 {
        positive
    } else {
        positive.complement()
    }
}

fn line_through(q1: Complex64, q2: Complex64) -> Circle {
    let dir = q2 - q1;
    let normal = Complex64::new(0.0, 1.0) * dir / dir.norm();
    let offset = (normal.conj() * q1).re;
    Circle::line(normal, offset).expect("two distinct points span a line")
}

/// True when g maps the disk onto itself within `tol` (normalized form
/// comparison).
pub fn invariant_disk_check(g: &Moebius, d: &Disk, tol: f64) -> bool {
    image_disk(g, d).form_distance(d) <= tol
}

/// A sampled invariant arc of a loxodromic map: the orbit spiral
/// {g^t(seed), t real} joining the repelling fixed point to the attracting
/// one. Stores two fundamental periods of samples so consecutive-period
/// samples can be compared directly.
#[derive(Debug, Clone)]
pub struct InvariantArc {
    pub gamma: Moebius,
    /// Maps the model picture (repelling 0, attracting infinity) to the
    /// original coordinates.
    pub conjugator: Moebius,
    /// Model multiplier, |mu| > 1.
    pub multiplier: Complex64,
    /// Seed in model coordinates (on the spiral at parameter t = 0).
    pub model_seed: Complex64,
    pub samples_per_period: usize,
    /// Samples at t = k / samples_per_period for k = 0 ..= 2*samples_per_period.
    pub samples: Vec<SpherePoint>,
    /// (repelling, attracting) fixed points: ideal endpoints of the arc.
    pub endpoints: (SpherePoint, SpherePoint),
}

impl InvariantArc {
    /// Point of the arc at parameter t (t = 0 is the seed, t = 1 its image
    /// under gamma).
    pub fn point_at(&self, t: f64) -> SpherePoint {
        let log_mu = Complex64::new(self.multiplier.norm().ln(), self.multiplier.arg());
        let w = self.model_seed * (log_mu * t).exp();
        self.conjugator.apply(SpherePoint::Finite(w))
    }
}

/// Constructs the invariant spiral arc of `g` through `seed`.
pub fn invariant_arc(g: &Moebius, seed: SpherePoint, samples_per_period: usize) -> Result<InvariantArc> {
    if g.classify() != MapClass::Loxodromic {
        return Err(Error::NotLoxodromic("invariant_arc input"));
    }
    let fps = g.fixed_points()?;
    let (attract, repel) = (fps[0], fps[1]);
    if seed.chordal_distance(&attract) < 1e-12 || seed.chordal_distance(&repel) < 1e-12 {
        return Err(Error::SeedAtFixedPoint);
    }
    let t = map_zero_inf(repel, attract)?;
    let model = t.inverse().compose(g).compose(&t);
    let mut mu = model.a / model.d;
    if mu.norm() < 1.0 {
        mu = 1.0 / mu;
    }
    let s = t
        .inverse()
        .apply(seed)
        .as_finite()
        .ok_or(Error::SeedAtFixedPoint)?;
    let n = samples_per_period.max(1);
    let log_mu = Complex64::new(mu.norm().ln(), mu.arg());
    let mut samples = Vec::with_capacity(2 * n + 1);
    for k in 0..=(2 * n) {
        let tpar = k as f64 / n as f64;
        let w = s * (log_mu * tpar).exp();
        samples.push(t.apply(SpherePoint::Finite(w)));
    }
    Ok(InvariantArc {
        gamma: *g,
        conjugator: t,
        multiplier: mu,
        model_seed: s,
        samples_per_period: n,
        samples,
        endpoints: (repel, attract),
    })
}

/// An invariant strip around a core arc: the set of points whose model
/// angular offset from the core spiral is less than `halfwidth`.
#[derive(Debug, Clone)]
pub struct InvariantStrip {
    pub gamma: Moebius,
    pub conjugator: Moebius,
    pub multiplier: Complex64,
    pub model_seed: Complex64,
    pub halfwidth: f64,
    pub walls: (InvariantArc, InvariantArc),
}

impl InvariantStrip {
    /// Angular offset of a point from the core spiral, in (-pi, pi].
    pub fn angular_offset(&self, z: &SpherePoint) -> Option<f64> {
        let w = self.conjugator.inverse().apply(*z).as_finite()?;
        if w.norm() == 0.0 {
            return None;
        }
        let zeta = w / self.model_seed;
        let log_mu = Complex64::new(self.multiplier.norm().ln(), self.multiplier.arg());
        let t = zeta.norm().ln() / log_mu.re;
        let mut phi = zeta.arg() - t * log_mu.im;
        while phi > std::f64::consts::PI {
            phi -= 2.0 * std::f64::consts::PI;
        }
        while phi <= -std::f64::consts::PI {
            phi += 2.0 * std::f64::consts::PI;
        }
        Some(phi)
    }

    pub fn contains(&self, z: &SpherePoint) -> bool {
        match self.angular_offset(z) {
            Some(phi) => phi.abs() < self.halfwidth,
            None => false,
        }
    }
}

/// Builds the strip of the given angular half-width around a core arc and
/// checks that it stays inside `ambient` (sampled along the walls, chordal
/// margin `DEFAULT_MARGIN`).
pub fn invariant_strip(
    g: &Moebius,
    core: &InvariantArc,
    halfwidth: f64,
    ambient: &Disk,
) -> Result<InvariantStrip> {
    if !(halfwidth > 0.0) || halfwidth >= std::f64::consts::PI {
        return Err(Error::StripMargin {
            halfwidth,
            margin: 0.0,
        });
    }
    let rot = Complex64::new(0.0, halfwidth).exp();
    let w1 = core.model_seed * rot;
    let w2 = core.model_seed / rot;
    let s1 = core.conjugator.apply(SpherePoint::Finite(w1));
    let s2 = core.conjugator.apply(SpherePoint::Finite(w2));
    let wall1 = invariant_arc(g, s1, core.samples_per_period)?;
    let wall2 = invariant_arc(g, s2, core.samples_per_period)?;
    let mut min_margin = f64::INFINITY;
    for wall in [&wall1, &wall2] {
        for p in &wall.samples {
            min_margin = min_margin.min(ambient.signed_depth(p));
        }
    }
    if min_margin < DEFAULT_MARGIN {
        return Err(Error::StripMargin {
            halfwidth,
            margin: min_margin,
        });
    }
    Ok(InvariantStrip {
        gamma: *g,
        conjugator: core.conjugator,
        multiplier: core.multiplier,
        model_seed: core.model_seed,
        halfwidth,
        walls: (wall1, wall2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_disk() -> Disk {
        Disk::from_center_radius(Complex64::new(0.0, 0.0), 1.0).unwrap()
    }

    fn right_half_plane() -> Disk {
        Disk::half_plane(Complex64::new(1.0, 0.0), 0.0).unwrap()
    }

    fn pt(re: f64, im: f64) -> SpherePoint {
        SpherePoint::finite(re, im)
    }

    #[test]
    fn membership_and_sides() {
        let d = unit_disk();
        assert!(d.contains(&pt(0.0, 0.0)));
        assert!(!d.contains(&pt(2.0, 0.0)));
        assert!(!d.contains(&SpherePoint::Infinity));
        assert!(d.complement().contains(&SpherePoint::Infinity));
        let h = right_half_plane();
        assert!(h.contains(&pt(1.0, 5.0)));
        assert!(!h.contains(&pt(-1.0, 0.0)));
    }

    #[test]
    fn diameters() {
        // The unit circle is a great circle.
        assert!((unit_disk().chordal_diameter() - 2.0).abs() < 1e-12);
        assert!((right_half_plane().chordal_diameter() - 2.0).abs() < 1e-12);
        // Shrinking disks have diameter 4r/(1+r^2) -> 0, monotonically.
        let mut last = 3.0;
        for k in 1..10 {
            let r = 1.0 / (k as f64);
            let d = Disk::from_center_radius(Complex64::new(0.0, 0.0), r)
                .unwrap()
                .chordal_diameter();
            let expect = 4.0 * r / (1.0 + r * r);
            assert!((d - expect).abs() < 1e-12);
            assert!(d < last);
            last = d;
        }
    }

    #[test]
    fn tangency_and_disjointness() {
        let d1 = Disk::from_center_radius(Complex64::new(1.5, 0.0), 0.5).unwrap();
        let d2 = Disk::from_center_radius(Complex64::new(2.5, 0.0), 0.5).unwrap();
        let p = tangency(&d1, &d2, 1e-9).expect("tangent disks");
        assert!(p.close_to(&pt(2.0, 0.0), 1e-9));
        assert_eq!(tangency(&d2, &d1, 1e-9).map(|q| q.close_to(&p, 1e-9)), Some(true));

        let far1 = unit_disk();
        let far2 = Disk::from_center_radius(Complex64::new(5.0, 0.0), 1.0).unwrap();
        assert!(tangency(&far1, &far2, 1e-9).is_none());
        assert!(disjoint(&far1, &far2, 1e-9));

        let o1 = unit_disk();
        let o2 = Disk::from_center_radius(Complex64::new(1.0, 0.0), 1.0).unwrap();
        assert!(tangency(&o1, &o2, 1e-9).is_none());
        assert!(!disjoint(&o1, &o2, 1e-9));
        assert!(!disjoint(&d1, &d2, 1e-9));
    }

    #[test]
    fn horodisk_tangency_at_infinity() {
        let up = Disk::half_plane(Complex64::new(0.0, 1.0), 1.0).unwrap();
        let down = Disk::half_plane(Complex64::new(0.0, -1.0), 1.0).unwrap();
        let p = tangency(&up, &down, 1e-9).expect("tangent at infinity");
        assert!(p.is_infinite());
    }

    #[test]
    fn image_disk_basic() {
        let m = Moebius::identity();
        let d = unit_disk();
        assert!(image_disk(&m, &d).form_distance(&d) < 1e-12);

        let m2 = Moebius::scaling(Complex64::new(2.0, 0.0)).unwrap();
        let want = Disk::from_center_radius(Complex64::new(0.0, 0.0), 2.0).unwrap();
        assert!(image_disk(&m2, &d).form_distance(&want) < 1e-12);
    }

    #[test]
    fn image_disk_inversion_fit() {
        // z -> 1/z applied to |z-3| < 1; checked by mapping 20 boundary
        // samples, fitting the image circle through them, and sampling sides.
        let inv = Moebius::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let d = Disk::from_center_radius(Complex64::new(3.0, 0.0), 1.0).unwrap();
        let img = image_disk(&inv, &d);
        assert!(img.contains(&pt(1.0 / 3.0, 0.0)));
        assert!(!img.contains(&pt(0.0, 0.0)));
        for k in 0..20 {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / 20.0;
            let z = Complex64::new(3.0 + ang.cos(), ang.sin());
            let w = inv.apply(SpherePoint::Finite(z));
            assert!(img.signed_depth(&w).abs() < 1e-10);
        }
    }

    #[test]
    fn invariance_checks() {
        let scale = Moebius::scaling(Complex64::new(4.0, 0.0)).unwrap();
        assert!(invariant_disk_check(&scale, &right_half_plane(), 1e-9));
        assert!(!invariant_disk_check(&scale, &unit_disk(), 1e-9));
        let shift = Moebius::translation(Complex64::new(1.0, 0.0));
        let upper = Disk::half_plane(Complex64::new(0.0, 1.0), 0.0).unwrap();
        assert!(invariant_disk_check(&shift, &upper, 1e-9));
    }

    #[test]
    fn invariant_arc_rays_and_spirals() {
        let g = Moebius::scaling(Complex64::new(4.0, 0.0)).unwrap();
        let arc = invariant_arc(&g, pt(1.0, 0.0), 8).unwrap();
        // Positive real ray: samples real in [1, 16], endpoints 0 and inf.
        for s in &arc.samples {
            let z = s.as_finite().unwrap();
            assert!(z.im.abs() < 1e-12 && z.re >= 1.0 - 1e-12 && z.re <= 16.0 + 1e-9);
        }
        assert!(arc.endpoints.0.close_to(&pt(0.0, 0.0), 1e-12));
        assert!(arc.endpoints.1.is_infinite());

        let arc_i = invariant_arc(&g, pt(0.0, 1.0), 8).unwrap();
        for s in &arc_i.samples {
            let z = s.as_finite().unwrap();
            assert!(z.re.abs() < 1e-12 && z.im > 0.0);
        }

        // Genuine spiral: one period forward equals applying g.
        let gs = Moebius::scaling(Complex64::new(4.0, 0.0) * Complex64::new(0.0, std::f64::consts::PI / 6.0).exp())
            .unwrap();
        let spiral = invariant_arc(&gs, pt(1.0, 0.0), 16).unwrap();
        let n = spiral.samples_per_period;
        for k in 0..=n {
            let moved = gs.apply(spiral.samples[k]);
            assert!(moved.close_to(&spiral.samples[k + n], 1e-8));
        }
        assert!(invariant_arc(&g, pt(0.0, 0.0), 8).is_err());
    }

    #[test]
    fn strip_sector_case() {
        let g = Moebius::scaling(Complex64::new(4.0, 0.0)).unwrap();
        let core = invariant_arc(&g, pt(1.0, 0.0), 8).unwrap();
        let strip = invariant_strip(&g, &core, 0.3, &right_half_plane()).unwrap();
        // Sector |arg z| < 0.3.
        assert!(strip.contains(&pt(1.0, 0.1)));
        assert!(!strip.contains(&pt(0.0, 1.0)));
        let off = strip.angular_offset(&pt(2.0, 0.0)).unwrap();
        assert!(off.abs() < 1e-12);

        // Half-width too large for the ambient half-plane.
        assert!(invariant_strip(&g, &core, 1.6, &right_half_plane()).is_err());

        // Imaginary-axis core inside the upper half-plane.
        let upper = Disk::half_plane(Complex64::new(0.0, 1.0), 0.0).unwrap();
        let core_i = invariant_arc(&g, pt(0.0, 1.0), 8).unwrap();
        let strip_i = invariant_strip(&g, &core_i, 0.1, &upper).unwrap();
        assert!(strip_i.contains(&pt(0.0, 2.0)));
        assert!(!strip_i.contains(&pt(2.0, 0.01)));
    }
}
