//! Condition checkers for combining Kleinian groups along cyclic subgroups:
//! precise invariance, amalgamation over a common cyclic subgroup, HNN
//! extension by a conjugating map, and invariant tangent-disk data at
//! parabolic fixed points.
//!
//! All orbit conditions are verified to a finite word depth and the reports
//! say which depth was used; acceptance is a depth-indexed certificate, not
//! a proof.

use crate::error::{Error, Result};
use crate::group::{DomainSpec, MarkedGroup, Verdict, Word, WORD_BUDGET};
use crate::moebius::{map_zero_inf, MapClass, Moebius, SpherePoint};
use crate::sphere::{image_disk, invariant_disk_check, tangency, Circle, Disk};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Margin below which a strict disjointness/containment condition fails.
pub const CONDITION_MARGIN: f64 = 1e-9;
/// Tolerance for form-level disk comparisons in data invariants.
pub const DATA_TOL: f64 = 1e-8;

/// One verified hypothesis with the margin it achieved.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub name: String,
    pub margin: f64,
    pub depth: usize,
    pub witness: Option<String>,
    pub passed: bool,
}

/// Certificate for a combination check: per-condition margins plus the
/// merged group on success.
#[derive(Debug, Clone)]
pub struct CombinationCertificate {
    pub verdict: Verdict,
    pub depth: usize,
    pub conditions: Vec<ConditionReport>,
    pub group: Option<MarkedGroup>,
    pub domain: Option<DomainSpec>,
    pub truncated: bool,
}

impl CombinationCertificate {
    fn reject(depth: usize, conditions: Vec<ConditionReport>, truncated: bool) -> Self {
        CombinationCertificate {
            verdict: Verdict::Reject,
            depth,
            conditions,
            group: None,
            domain: None,
            truncated,
        }
    }
}

/// Report of a precise-invariance check of a disk under a cyclic subgroup.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub verdict: Verdict,
    /// Containment margin of h(B) in B (about zero for an invariant disk).
    pub containment_margin: f64,
    /// Smallest chordal gap between B and a competing translate.
    pub min_gap: f64,
    pub depth: usize,
    pub words_checked: usize,
    pub truncated: bool,
    pub violation: Option<Word>,
}

fn precisely_invariant_impl(
    disk: &Disk,
    h: Option<&Word>,
    group: &MarkedGroup,
    depth: usize,
    margin: f64,
) -> Result<InvarianceReport> {
    let containment_margin = match h {
        Some(h) => {
            let hm = group.evaluate(h)?;
            image_disk(&hm, disk).containment_margin(disk)
        }
        None => 0.0,
    };
    let mut min_gap = f64::INFINITY;
    let mut violation: Option<Word> = None;
    let mut words_checked = 0usize;
    let outcome = group.walk_words(depth, WORD_BUDGET, |letters, m| {
        if letters.is_empty() {
            return true;
        }
        if let Some(h) = h {
            if letters.len() % h.len().max(1) == 0 && Word::from_letters(letters).is_power_of(h) {
                return true;
            }
        }
        words_checked += 1;
        let translate = image_disk(m, disk);
        let gap = translate.chordal_gap(disk);
        if gap < min_gap {
            min_gap = gap;
        }
        if gap < margin {
            violation = Some(Word::from_letters(letters));
            return false;
        }
        true
    })?;
    let verdict = if violation.is_some() {
        Verdict::Reject
    } else if containment_margin < -CONDITION_MARGIN {
        Verdict::Reject
    } else if outcome.truncated {
        Verdict::Indeterminate
    } else {
        Verdict::Accept
    };
    Ok(InvarianceReport {
        verdict,
        containment_margin,
        min_gap,
        depth,
        words_checked,
        truncated: outcome.truncated,
        violation,
    })
}

/// Checks that `disk` is precisely invariant under the cyclic subgroup
/// generated by `h`: h(B) stays in B, and every other word of length at
/// most `depth` moves B chordally off itself by at least `margin`.
pub fn precisely_invariant(
    disk: &Disk,
    h: &Word,
    group: &MarkedGroup,
    depth: usize,
    margin: f64,
) -> Result<InvarianceReport> {
    if h.is_empty() {
        return Err(Error::DegenerateInput(
            "precise invariance needs a nontrivial subgroup word".into(),
        ));
    }
    precisely_invariant_impl(disk, Some(h), group, depth, margin)
}

/// Input data for an amalgamation over a common cyclic subgroup: the two
/// groups with their fundamental-domain specs, matching subgroup words, and
/// the two complementary sides of the common boundary circle. By
/// convention disk `b1` is the side set aside for the second group (the
/// first group's translates must respect it), and vice versa.
#[derive(Debug, Clone)]
pub struct AmalgamData {
    pub g1: MarkedGroup,
    pub d1: DomainSpec,
    pub h1: Word,
    pub g2: MarkedGroup,
    pub d2: DomainSpec,
    pub h2: Word,
    pub b1: Disk,
    pub b2: Disk,
    pub j: Circle,
}

impl AmalgamData {
    /// Validates the structural invariants: the subgroup words evaluate to
    /// the same map, and b1, b2 are the two complementary sides of j.
    pub fn validate(&self) -> Result<()> {
        if self.h1.is_empty() || self.h2.is_empty() {
            return Err(Error::DataInvariant(
                "amalgamation subgroup words must be nontrivial".into(),
            ));
        }
        let m1 = self.g1.evaluate(&self.h1)?;
        let m2 = self.g2.evaluate(&self.h2)?;
        if !m1.approx_eq(&m2, 1e-9) {
            return Err(Error::DataInvariant(
                "subgroup words evaluate to different maps".into(),
            ));
        }
        if self.b1.circle.form_distance(&self.j) > DATA_TOL
            || self.b2.circle.form_distance(&self.j) > DATA_TOL
        {
            return Err(Error::DataInvariant(
                "b1, b2 must share the boundary circle j".into(),
            ));
        }
        if self.b1.form_distance(&self.b2.complement()) > DATA_TOL {
            return Err(Error::DataInvariant(
                "b1, b2 must be opposite sides of j".into(),
            ));
        }
        Ok(())
    }
}

/// Deterministic search for a point inside `inside` (with margin) that also
/// lies in the interiors of both domain specs.
fn witness_point(
    inside: &Disk,
    specs: [&DomainSpec; 2],
    margin: f64,
) -> Option<(SpherePoint, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x77697464);
    let mut best: Option<(SpherePoint, f64)> = None;
    for _ in 0..20_000 {
        let zc: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - zc * zc).sqrt();
        let p = SpherePoint::from_unit_sphere([r * phi.cos(), r * phi.sin(), zc]);
        let mut m = inside.signed_depth(&p);
        for spec in specs {
            for d in &spec.disks {
                m = m.min(-d.signed_depth(&p));
            }
        }
        if m >= margin {
            return Some((p, m));
        }
        if best.as_ref().map_or(true, |(_, bm)| m > *bm) {
            best = Some((p, m));
        }
    }
    best.filter(|(_, m)| *m >= margin)
}

/// Finite-depth check of the cyclic amalgamation hypotheses. On success the
/// certificate carries the merged group and glued domain.
pub fn amalgamate(data: &AmalgamData, depth: usize) -> Result<CombinationCertificate> {
    data.validate()?;
    data.d1.validate()?;
    data.d2.validate()?;
    let mut conditions = Vec::new();
    let mut truncated = false;

    // Invariance of each side under the common cyclic subgroup.
    let h1m = data.g1.evaluate(&data.h1)?;
    let h2m = data.g2.evaluate(&data.h2)?;
    for (idx, (hm, b)) in [(h1m, &data.b1), (h2m, &data.b2)].iter().enumerate() {
        let dist = image_disk(hm, b).form_distance(b);
        let margin = DATA_TOL - dist;
        let passed = margin >= 0.0;
        conditions.push(ConditionReport {
            name: format!("B{} invariant under H", idx + 1),
            margin,
            depth: 0,
            witness: None,
            passed,
        });
        if !passed {
            return Ok(CombinationCertificate::reject(depth, conditions, false));
        }
    }

    // Orbit condition: every translate of B_j under G_j either stays inside
    // B_j or lands inside a single deleted disk of D_j (so it misses the
    // fundamental domain).
    for (idx, (group, spec, b)) in [
        (&data.g1, &data.d1, &data.b1),
        (&data.g2, &data.d2, &data.b2),
    ]
    .iter()
    .enumerate()
    {
        let mut worst = f64::INFINITY;
        let mut violation: Option<String> = None;
        let outcome = group.walk_words(depth, WORD_BUDGET, |letters, m| {
            if letters.is_empty() {
                return true;
            }
            let t = image_disk(m, b);
            let in_b = t.containment_margin(b);
            let mut best = in_b;
            let ok_b = in_b >= -CONDITION_MARGIN;
            let mut ok_disk = false;
            if !ok_b {
                for d in &spec.disks {
                    let m_in = t.containment_margin(d);
                    if m_in > best {
                        best = m_in;
                    }
                    if m_in >= CONDITION_MARGIN {
                        ok_disk = true;
                        break;
                    }
                }
            }
            if best < worst {
                worst = best;
            }
            if ok_b || ok_disk {
                true
            } else {
                violation = Some(Word::from_letters(letters).display(group));
                false
            }
        })?;
        truncated |= outcome.truncated;
        let passed = violation.is_none();
        conditions.push(ConditionReport {
            name: format!("orbit of B{} meets D{} only inside B{}", idx + 1, idx + 1, idx + 1),
            margin: worst,
            depth,
            witness: violation.clone(),
            passed,
        });
        if !passed {
            return Ok(CombinationCertificate::reject(depth, conditions, truncated));
        }
    }

    // Interior witnesses for D1' cap D2 and D1 cap D2'.
    for (idx, b) in [&data.b1, &data.b2].iter().enumerate() {
        match witness_point(b, [&data.d1, &data.d2], 1e-6) {
            Some((p, m)) => conditions.push(ConditionReport {
                name: format!("interior witness in B{} of the glued domain", idx + 1),
                margin: m,
                depth: 0,
                witness: Some(p.to_string()),
                passed: true,
            }),
            None => {
                conditions.push(ConditionReport {
                    name: format!("interior witness in B{} of the glued domain", idx + 1),
                    margin: f64::NEG_INFINITY,
                    depth: 0,
                    witness: None,
                    passed: false,
                });
                return Ok(CombinationCertificate::reject(depth, conditions, truncated));
            }
        }
    }

    let group = data.g1.merge(&data.g2, 1e-9)?;
    let domain = data.d1.merged_with(&data.d2, 1e-9)?;
    Ok(CombinationCertificate {
        verdict: if truncated {
            Verdict::Indeterminate
        } else {
            Verdict::Accept
        },
        depth,
        conditions,
        group: Some(group),
        domain: Some(domain),
        truncated,
    })
}

/// Input data for an HNN extension: a base group with domain, two cyclic
/// subgroup words (possibly trivial), the conjugating map, and the paired
/// disks.
#[derive(Debug, Clone)]
pub struct HnnData {
    pub g0: MarkedGroup,
    pub d0: DomainSpec,
    /// Word generating H1; empty for the trivial subgroup.
    pub h1: Word,
    /// Word generating H2; empty for the trivial subgroup.
    pub h2: Word,
    pub a: Moebius,
    pub a_name: String,
    pub b1: Disk,
    pub b2: Disk,
}

impl HnnData {
    pub fn validate(&self) -> Result<()> {
        let m1 = self.g0.evaluate(&self.h1)?;
        let m2 = self.g0.evaluate(&self.h2)?;
        let conj = self.a.compose(&m1).compose(&self.a.inverse());
        if !conj.approx_eq(&m2, 1e-9) && !conj.approx_eq(&m2.inverse(), 1e-9) {
            return Err(Error::DataInvariant(
                "A H1 A^-1 must equal H2 (up to inversion)".into(),
            ));
        }
        Ok(())
    }
}

/// Finite-depth check of the HNN-extension hypotheses. On success the
/// certificate carries the base group extended by the new generator.
pub fn hnn_extend(data: &HnnData, depth: usize) -> Result<CombinationCertificate> {
    data.validate()?;
    data.d0.validate()?;
    let mut conditions = Vec::new();
    let mut truncated = false;

    // Precise invariance of each disk under its subgroup.
    for (idx, (h, b)) in [(&data.h1, &data.b1), (&data.h2, &data.b2)]
        .iter()
        .enumerate()
    {
        let h_opt = if h.is_empty() { None } else { Some(*h) };
        let report = precisely_invariant_impl(b, h_opt, &data.g0, depth, CONDITION_MARGIN)?;
        truncated |= report.truncated;
        let passed = report.verdict != Verdict::Reject;
        conditions.push(ConditionReport {
            name: format!("B{} precisely invariant under H{}", idx + 1, idx + 1),
            margin: report.min_gap.min(report.containment_margin + 1.0),
            depth,
            witness: report.violation.as_ref().map(|w| w.display(&data.g0)),
            passed,
        });
        if !passed {
            return Ok(CombinationCertificate::reject(depth, conditions, truncated));
        }
    }

    // The conjugator pairs the outside of B1 with B2.
    let dist = image_disk(&data.a, &data.b1).form_distance(&data.b2.complement());
    let pair_margin = DATA_TOL - dist;
    let passed = pair_margin >= 0.0;
    conditions.push(ConditionReport {
        name: "A carries B1 onto the complement of B2".into(),
        margin: pair_margin,
        depth: 0,
        witness: None,
        passed,
    });
    if !passed {
        return Ok(CombinationCertificate::reject(depth, conditions, truncated));
    }

    // No base-group translate of B1 may touch B2 (the identity included).
    let mut min_gap = f64::INFINITY;
    let mut violation: Option<String> = None;
    let outcome = data.g0.walk_words(depth, WORD_BUDGET, |letters, m| {
        let t = image_disk(m, &data.b1);
        let gap = t.chordal_gap(&data.b2);
        if gap < min_gap {
            min_gap = gap;
        }
        if gap < CONDITION_MARGIN {
            violation = Some(Word::from_letters(letters).display(&data.g0));
            return false;
        }
        true
    })?;
    truncated |= outcome.truncated;
    let passed = violation.is_none();
    conditions.push(ConditionReport {
        name: "translates of B1 avoid B2".into(),
        margin: min_gap,
        depth,
        witness: violation.clone(),
        passed,
    });
    if !passed {
        return Ok(CombinationCertificate::reject(depth, conditions, truncated));
    }

    // Interior of D0 away from every translate of B1 and B2.
    let mut translates: Vec<Disk> = Vec::new();
    let outcome = data.g0.walk_words(depth, WORD_BUDGET, |_letters, m| {
        translates.push(image_disk(m, &data.b1));
        translates.push(image_disk(m, &data.b2));
        true
    })?;
    truncated |= outcome.truncated;
    let mut rng = ChaCha8Rng::seed_from_u64(0x686e6e77);
    let mut found: Option<(SpherePoint, f64)> = None;
    for _ in 0..20_000 {
        let zc: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = (1.0 - zc * zc).sqrt();
        let p = SpherePoint::from_unit_sphere([r * phi.cos(), r * phi.sin(), zc]);
        if !data.d0.contains_interior(&p, 1e-6) {
            continue;
        }
        let mut m = f64::INFINITY;
        for t in &translates {
            m = m.min(-t.signed_depth(&p));
        }
        if m >= 1e-6 {
            found = Some((p, m));
            break;
        }
    }
    match found {
        Some((p, m)) => conditions.push(ConditionReport {
            name: "interior witness of D0 off the B-orbits".into(),
            margin: m,
            depth,
            witness: Some(p.to_string()),
            passed: true,
        }),
        None => {
            conditions.push(ConditionReport {
                name: "interior witness of D0 off the B-orbits".into(),
                margin: f64::NEG_INFINITY,
                depth,
                witness: None,
                passed: false,
            });
            return Ok(CombinationCertificate::reject(depth, conditions, truncated));
        }
    }

    let mut group = data.g0.clone();
    group.push(data.a_name.clone(), data.a)?;
    Ok(CombinationCertificate {
        verdict: if truncated {
            Verdict::Indeterminate
        } else {
            Verdict::Accept
        },
        depth,
        conditions,
        group: Some(group),
        domain: None,
        truncated,
    })
}

/// Two disjoint invariant open round disks tangent to each other exactly at
/// the fixed point of a parabolic map, each with chordal diameter at most
/// `size`.
pub fn parabolic_tangent_disks(p: &Moebius, size: f64) -> Result<(Disk, Disk)> {
    if p.classify() != MapClass::Parabolic {
        return Err(Error::NotParabolic("parabolic_tangent_disks input"));
    }
    if !(size > 0.0 && size <= 2.0) {
        return Err(Error::DegenerateInput(format!(
            "size must lie in (0, 2], got {size}"
        )));
    }
    let q = p.fixed_points()?[0];
    let t = match q {
        SpherePoint::Infinity => Moebius::identity(),
        SpherePoint::Finite(qz) => Moebius::new(
            qz,
            num_complex::Complex64::new(1.0, 0.0),
            num_complex::Complex64::new(1.0, 0.0),
            num_complex::Complex64::new(0.0, 0.0),
        )?,
    };
    let n = t.inverse().compose(p).compose(&t);
    // n is a translation z -> z + tau.
    let tau = n.b / n.d;
    if tau.norm() < 1e-14 || n.c.norm() > 1e-10 {
        return Err(Error::NotParabolic("conjugated map is not a translation"));
    }
    let normal = num_complex::Complex64::new(0.0, 1.0) * tau / tau.norm();
    let mut out: Vec<Disk> = Vec::with_capacity(2);
    for sign in [1.0, -1.0] {
        let disk_at = |c: f64| -> Result<Disk> {
            let h = Disk::half_plane(normal * sign, c * tau.norm())?;
            Ok(image_disk(&t, &h))
        };
        // The diameter decreases monotonically in the offset; double then
        // bisect to the requested size.
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        let mut guard = 0;
        while disk_at(hi)?.chordal_diameter() > size {
            lo = hi;
            hi *= 2.0;
            guard += 1;
            if guard > 500 {
                return Err(Error::DegenerateInput("tangent disk size unreachable".into()));
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if disk_at(mid)?.chordal_diameter() > size {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(disk_at(hi)?);
    }
    let d_plus = out[0];
    let d_minus = out[1];
    match tangency(&d_plus, &d_minus, 1e-9) {
        Some(pt) if pt.close_to(&q, 1e-9) => Ok((d_plus, d_minus)),
        _ => Err(Error::DegenerateInput(
            "tangent disks failed the tangency post-check".into(),
        )),
    }
}

/// Conjugates an amalgamation datum by a fixed Moebius map (used for the
/// covariance property checks).
pub fn conjugate_amalgam(data: &AmalgamData, g: &Moebius) -> Result<AmalgamData> {
    let conj_group = |grp: &MarkedGroup| -> Result<MarkedGroup> {
        MarkedGroup::new(
            grp.generators()
                .iter()
                .map(|(n, m)| (n.clone(), m.conjugate_by(g)))
                .collect(),
        )
    };
    let conj_spec = |spec: &DomainSpec| -> Result<DomainSpec> {
        DomainSpec::new(
            spec.disks.iter().map(|d| image_disk(g, d)).collect(),
            spec.pairs
                .iter()
                .map(|p| crate::group::DiskPair {
                    name: p.name.clone(),
                    map: p.map.conjugate_by(g),
                    src: p.src,
                    dst: p.dst,
                })
                .collect(),
        )
    };
    let jdisk = image_disk(g, &Disk::new(data.j, crate::sphere::Side::Positive));
    Ok(AmalgamData {
        g1: conj_group(&data.g1)?,
        d1: conj_spec(&data.d1)?,
        h1: data.h1.clone(),
        g2: conj_group(&data.g2)?,
        d2: conj_spec(&data.d2)?,
        h2: data.h2.clone(),
        b1: image_disk(g, &data.b1),
        b2: image_disk(g, &data.b2),
        j: jdisk.circle,
    })
}

// A helper kept here because both amalgamate tests and the handle pipeline
// need it: the standard conjugation of a full marked group.
pub fn conjugate_group(group: &MarkedGroup, g: &Moebius) -> Result<MarkedGroup> {
    MarkedGroup::new(
        group
            .generators()
            .iter()
            .map(|(n, m)| (n.clone(), m.conjugate_by(g)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moebius::triple_transitive;
    use num_complex::Complex64;

    fn scaling(k: f64) -> Moebius {
        Moebius::scaling(Complex64::new(k, 0.0)).unwrap()
    }

    fn pt(re: f64, im: f64) -> SpherePoint {
        SpherePoint::finite(re, im)
    }

    /// Pairing map carrying the exterior of the src circle onto the interior
    /// of the dst circle (both Euclidean).
    fn pairing_map(src_c: Complex64, src_r: f64, dst_c: Complex64, dst_r: f64) -> Moebius {
        let i = Complex64::new(0.0, 1.0);
        triple_transitive(
            [
                SpherePoint::Finite(src_c - src_r),
                SpherePoint::Finite(src_c - i * src_r),
                SpherePoint::Finite(src_c + src_r),
            ],
            [
                SpherePoint::Finite(dst_c + dst_r),
                SpherePoint::Finite(dst_c - i * dst_r),
                SpherePoint::Finite(dst_c - dst_r),
            ],
        )
        .unwrap()
    }

    fn annulus_spec(name: &str, gamma: Moebius) -> DomainSpec {
        let inner = Disk::from_center_radius(Complex64::new(0.0, 0.0), 1.0).unwrap();
        let outer = Disk::from_center_radius(Complex64::new(0.0, 0.0), 4.0)
            .unwrap()
            .complement();
        DomainSpec::new(
            vec![inner, outer],
            vec![crate::group::DiskPair {
                name: name.into(),
                map: gamma,
                src: 0,
                dst: 1,
            }],
        )
        .unwrap()
    }

    fn amalgam_example() -> AmalgamData {
        let gamma = scaling(4.0);
        // Factor one acts in the left half-plane, factor two in the right;
        // each keeps the opposite side precisely for the other.
        let u = pairing_map(
            Complex64::new(-2.5, 0.0),
            0.35,
            Complex64::new(-1.6, 0.0),
            0.35,
        );
        let v = pairing_map(
            Complex64::new(2.5, 0.0),
            0.35,
            Complex64::new(1.6, 0.0),
            0.35,
        );
        let mut d1 = annulus_spec("g", gamma);
        d1.disks
            .push(Disk::from_center_radius(Complex64::new(-2.5, 0.0), 0.35).unwrap());
        d1.disks
            .push(Disk::from_center_radius(Complex64::new(-1.6, 0.0), 0.35).unwrap());
        d1.pairs.push(crate::group::DiskPair {
            name: "u".into(),
            map: u,
            src: 2,
            dst: 3,
        });
        let mut d2 = annulus_spec("g", gamma);
        d2.disks
            .push(Disk::from_center_radius(Complex64::new(2.5, 0.0), 0.35).unwrap());
        d2.disks
            .push(Disk::from_center_radius(Complex64::new(1.6, 0.0), 0.35).unwrap());
        d2.pairs.push(crate::group::DiskPair {
            name: "v".into(),
            map: v,
            src: 2,
            dst: 3,
        });
        let g1 = d1.group().unwrap();
        let g2 = d2.group().unwrap();
        let j = Circle::line(Complex64::new(1.0, 0.0), 0.0).unwrap();
        AmalgamData {
            g1,
            d1,
            h1: Word::single(1),
            g2,
            d2,
            h2: Word::single(1),
            b1: Disk::half_plane(Complex64::new(1.0, 0.0), 0.0).unwrap(),
            b2: Disk::half_plane(Complex64::new(-1.0, 0.0), 0.0).unwrap(),
            j,
        }
    }

    #[test]
    fn precise_invariance_of_half_plane() {
        let g = MarkedGroup::new(vec![("g".into(), scaling(4.0))]).unwrap();
        let b = Disk::half_plane(Complex64::new(1.0, 0.0), 0.0).unwrap();
        let report = precisely_invariant(&b, &Word::single(1), &g, 5, 1e-9).unwrap();
        assert_eq!(report.verdict, Verdict::Accept);
        assert_eq!(report.words_checked, 0, "all words are powers of g");
        assert!(report.containment_margin.abs() < 1e-9);
    }

    #[test]
    fn precise_invariance_rejects_pairing_disk() {
        // A Schottky generator maps the complement of its source disk onto
        // the partner disk, so the source disk is not carried into itself.
        let src = Disk::from_center_radius(Complex64::new(-3.0, 0.0), 1.0).unwrap();
        let dst = Disk::from_center_radius(Complex64::new(3.0, 0.0), 1.0).unwrap();
        let a = pairing_map(
            Complex64::new(-3.0, 0.0),
            1.0,
            Complex64::new(3.0, 0.0),
            1.0,
        );
        let spec = DomainSpec::new(
            vec![src, dst],
            vec![crate::group::DiskPair {
                name: "a".into(),
                map: a,
                src: 0,
                dst: 1,
            }],
        )
        .unwrap();
        let g = spec.group().unwrap();
        let report = precisely_invariant(&src, &Word::single(1), &g, 3, 1e-9).unwrap();
        assert_eq!(report.verdict, Verdict::Reject);

        let empty = Word::empty();
        assert!(precisely_invariant(&src, &empty, &g, 3, 1e-9).is_err());
    }

    #[test]
    fn amalgamate_accepts_the_worked_pair() {
        let data = amalgam_example();
        let cert = amalgamate(&data, 4).unwrap();
        assert_eq!(cert.verdict, Verdict::Accept, "{:?}", cert.conditions);
        let merged = cert.group.unwrap();
        assert_eq!(merged.len(), 3, "g, u, v after deduplication");
        // Deeper acceptance implies shallower acceptance.
        for d in 1..4 {
            assert_eq!(amalgamate(&data, d).unwrap().verdict, Verdict::Accept);
        }
    }

    #[test]
    fn amalgamate_rejects_bad_data() {
        let mut data = amalgam_example();
        data.b2 = data.b1;
        assert!(matches!(amalgamate(&data, 3), Err(Error::DataInvariant(_))));

        let mut data = amalgam_example();
        data.h2 = Word::single(2);
        assert!(matches!(amalgamate(&data, 3), Err(Error::DataInvariant(_))));
    }

    #[test]
    fn amalgamate_is_conjugation_covariant() {
        let data = amalgam_example();
        let conj = Moebius::new(
            Complex64::new(1.0, 0.3),
            Complex64::new(0.2, -0.1),
            Complex64::new(0.05, 0.02),
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let moved = conjugate_amalgam(&data, &conj).unwrap();
        let cert0 = amalgamate(&data, 3).unwrap();
        let cert1 = amalgamate(&moved, 3).unwrap();
        assert_eq!(cert0.verdict, cert1.verdict);
        let g0 = cert0.group.unwrap();
        let g1 = cert1.group.unwrap();
        for i in 0..g0.len() {
            let want = g0.map(i).conjugate_by(&conj);
            assert!(g1.map(i).approx_eq(&want, 1e-7));
        }
    }

    #[test]
    fn parabolic_tangent_disk_shapes() {
        let shift = Moebius::translation(Complex64::new(1.0, 0.0));
        let (d1, d2) = parabolic_tangent_disks(&shift, 0.5).unwrap();
        // Horizontal half-planes tangent at infinity.
        let p = tangency(&d1, &d2, 1e-9).unwrap();
        assert!(p.is_infinite());
        assert!(invariant_disk_check(&shift, &d1, 1e-9));
        assert!(invariant_disk_check(&shift, &d2, 1e-9));
        assert!(d1.chordal_diameter() <= 0.5 + 1e-9);
        assert!(d2.chordal_diameter() <= 0.5 + 1e-9);
        assert!(d1.circle.a.abs() < 1e-9, "half-planes have A = 0");

        // Conjugate fixing 0.
        let w = Moebius::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let par0 = shift.conjugate_by(&w);
        let (e1, e2) = parabolic_tangent_disks(&par0, 0.4).unwrap();
        let p = tangency(&e1, &e2, 1e-9).unwrap();
        assert!(p.close_to(&pt(0.0, 0.0), 1e-9));
        assert!(invariant_disk_check(&par0, &e1, 1e-8));
        assert!(invariant_disk_check(&par0, &e2, 1e-8));

        assert!(parabolic_tangent_disks(&scaling(4.0), 0.5).is_err());
    }

    fn schottky_genus2(sep: f64) -> DomainSpec {
        let i = Complex64::new(0.0, 1.0);
        let c = [
            Complex64::new(-sep, 0.0),
            Complex64::new(sep, 0.0),
            -i * sep,
            i * sep,
        ];
        let disks: Vec<Disk> = c
            .iter()
            .map(|&z| Disk::from_center_radius(z, 1.0).unwrap())
            .collect();
        DomainSpec::new(
            disks,
            vec![
                crate::group::DiskPair {
                    name: "a".into(),
                    map: pairing_map(c[0], 1.0, c[1], 1.0),
                    src: 0,
                    dst: 1,
                },
                crate::group::DiskPair {
                    name: "b".into(),
                    map: pairing_map(c[2], 1.0, c[3], 1.0),
                    src: 2,
                    dst: 3,
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn hnn_free_handle_accepts() {
        let d0 = schottky_genus2(3.0);
        let g0 = d0.group().unwrap();
        let b1 = Disk::from_center_radius(Complex64::new(8.0, 0.0), 0.7).unwrap();
        let b2 = Disk::from_center_radius(Complex64::new(-8.0, 0.0), 0.7).unwrap();
        let a = pairing_map(Complex64::new(8.0, 0.0), 0.7, Complex64::new(-8.0, 0.0), 0.7);
        let data = HnnData {
            g0,
            d0,
            h1: Word::empty(),
            h2: Word::empty(),
            a,
            a_name: "t".into(),
            b1,
            b2,
        };
        let cert = hnn_extend(&data, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::Accept, "{:?}", cert.conditions);
        assert_eq!(cert.group.unwrap().len(), 3);
    }

    #[test]
    fn hnn_rejects_overlapping_pairing() {
        let d0 = schottky_genus2(3.0);
        let g0 = d0.group().unwrap();
        // A carries B1 onto the complement of a disk that is not B2.
        let b1 = Disk::from_center_radius(Complex64::new(8.0, 0.0), 0.7).unwrap();
        let b2 = Disk::from_center_radius(Complex64::new(-8.0, 0.0), 0.7).unwrap();
        let a = pairing_map(Complex64::new(8.0, 0.0), 0.7, Complex64::new(-7.5, 0.0), 0.9);
        let data = HnnData {
            g0,
            d0,
            h1: Word::empty(),
            h2: Word::empty(),
            a,
            a_name: "t".into(),
            b1,
            b2,
        };
        let cert = hnn_extend(&data, 2).unwrap();
        assert_eq!(cert.verdict, Verdict::Reject);
        assert!(cert
            .conditions
            .last()
            .unwrap()
            .name
            .contains("A carries B1"));
    }

    #[test]
    fn hnn_rejects_translate_hit_at_depth_three() {
        let d0 = schottky_genus2(3.0);
        let g0 = d0.group().unwrap();
        let b1 = Disk::from_center_radius(Complex64::new(8.0, 0.0), 0.7).unwrap();
        // Place B2 exactly on the depth-3 translate a a a (B1), and build
        // the conjugator as the exterior-to-interior pairing of b1 with b2
        // through matched boundary triples (the image triple is reversed to
        // swap sides).
        let aaa = g0.evaluate(&Word::from_letters(&[1, 1, 1])).unwrap();
        let b2 = image_disk(&aaa, &b1);
        let c1 = Complex64::new(8.0, 0.0);
        let r1 = 0.7;
        let q0 = aaa.apply(pt(8.0 - 0.7, 0.0));
        let q1 = aaa.apply(pt(8.0, -0.7));
        let q2 = aaa.apply(pt(8.0 + 0.7, 0.0));
        let a = triple_transitive(
            [
                SpherePoint::Finite(c1 - r1),
                SpherePoint::Finite(c1 - Complex64::new(0.0, r1)),
                SpherePoint::Finite(c1 + r1),
            ],
            [q2, q1, q0],
        )
        .unwrap();
        let data = HnnData {
            g0,
            d0,
            h1: Word::empty(),
            h2: Word::empty(),
            a,
            a_name: "t".into(),
            b1,
            b2,
        };
        let cert = hnn_extend(&data, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::Reject);
        let last = cert.conditions.last().unwrap();
        assert!(last.name.contains("translates of B1 avoid B2"), "{last:?}");
        assert_eq!(last.witness.as_deref(), Some("a a a"));
    }
}
