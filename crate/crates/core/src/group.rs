//! Marked groups of Moebius transformations: reduced-word enumeration,
//! evaluation, ping-pong verification, finite-depth freeness oracles,
//! limit-set sampling, upper-half-space geometry, and collar estimates.
//!
//! Everything that quantifies over a group does so to a finite word depth
//! and says so in its report. Enumeration order is fixed (length, then
//! lexicographic in generator order with each generator preceding its
//! inverse), which makes all derived outputs deterministic.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::moebius::{map_zero_inf, MapClass, Moebius, SpherePoint};
use crate::sphere::{image_disk, Disk};

/// Hard cap on enumeration depth.
pub const MAX_WORD_DEPTH: usize = 30;
/// Hard cap on the number of enumerated words per operation.
pub const WORD_BUDGET: usize = 10_000_000;
/// Interior margin used when sampling fundamental-domain test points.
pub const INTERIOR_MARGIN: f64 = 1e-4;

/// Verdict of a finite-depth check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    /// The word budget truncated the search before any violation was found.
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::Indeterminate => "indeterminate",
        };
        write!(f, "{s}")
    }
}

/// A finite list of named generators.
#[derive(Debug, Clone)]
pub struct MarkedGroup {
    gens: Vec<(String, Moebius)>,
}

impl MarkedGroup {
    pub fn new(gens: Vec<(String, Moebius)>) -> Result<MarkedGroup> {
        let mut names: Vec<&str> = Vec::new();
        for (name, map) in &gens {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('\'') {
                return Err(Error::BadGeneratorName(name.clone()));
            }
            if names.contains(&name.as_str()) {
                return Err(Error::BadGeneratorName(name.clone()));
            }
            names.push(name);
            if map.is_identity(1e-12) {
                return Err(Error::IdentityGenerator(name.clone()));
            }
        }
        Ok(MarkedGroup { gens })
    }

    pub fn empty() -> MarkedGroup {
        MarkedGroup { gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[(String, Moebius)] {
        &self.gens
    }

    pub fn name(&self, index: usize) -> &str {
        &self.gens[index].0
    }

    pub fn map(&self, index: usize) -> &Moebius {
        &self.gens[index].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    /// Adds a generator, keeping names unique.
    pub fn push(&mut self, name: String, map: Moebius) -> Result<()> {
        if self.index_of(&name).is_some() {
            return Err(Error::BadGeneratorName(name));
        }
        let mut gens = std::mem::take(&mut self.gens);
        gens.push((name, map));
        *self = MarkedGroup::new(gens)?;
        Ok(())
    }

    /// Replaces the map of one generator.
    pub fn replace_map(&mut self, index: usize, map: Moebius) -> Result<()> {
        if map.is_identity(1e-12) {
            return Err(Error::IdentityGenerator(self.gens[index].0.clone()));
        }
        self.gens[index].1 = map;
        Ok(())
    }

    /// Merges another group's generators into this one. A name collision is
    /// accepted when the maps agree (up to sign) within `tol`; otherwise it
    /// is an error.
    pub fn merge(&self, other: &MarkedGroup, tol: f64) -> Result<MarkedGroup> {
        let mut gens = self.gens.clone();
        for (name, map) in &other.gens {
            match self.index_of(name) {
                Some(i) => {
                    if !self.gens[i].1.approx_eq(map, tol) {
                        return Err(Error::BadGeneratorName(format!(
                            "{name} bound to two different maps"
                        )));
                    }
                }
                None => gens.push((name.clone(), *map)),
            }
        }
        MarkedGroup::new(gens)
    }

    /// Signed-letter map: positive letters are generators, negative their
    /// inverses.
    pub fn letter_map(&self, letter: i32) -> Result<Moebius> {
        let idx = letter.unsigned_abs() as usize;
        if idx == 0 || idx > self.gens.len() {
            return Err(Error::WordIndexOutOfRange(idx));
        }
        let m = self.gens[idx - 1].1;
        Ok(if letter > 0 { m } else { m.inverse() })
    }

    /// Left-to-right composition of the word's letters (the rightmost letter
    /// acts first on points). The empty word evaluates to the identity.
    pub fn evaluate(&self, w: &Word) -> Result<Moebius> {
        let mut m = Moebius::identity();
        for &l in w.letters() {
            m = m.compose(&self.letter_map(l)?);
        }
        Ok(m)
    }

    /// All reduced words of length at most `depth`, in length-then-lex order.
    pub fn enumerate_words(&self, depth: usize) -> Result<WordIter> {
        if depth > MAX_WORD_DEPTH {
            return Err(Error::DepthBudget(depth, MAX_WORD_DEPTH));
        }
        Ok(WordIter::new(self.gens.len(), depth))
    }

    /// Closed-form count of reduced words of length at most `depth` over
    /// this group's alphabet.
    pub fn reduced_word_count(&self, depth: usize) -> u128 {
        let k = self.gens.len() as u128;
        if k == 0 {
            return 1;
        }
        if k == 1 {
            return 1 + 2 * depth as u128;
        }
        let base = 2 * k - 1;
        let mut pow = 1u128;
        for _ in 0..depth {
            pow = pow.saturating_mul(base);
        }
        1 + 2 * k * (pow - 1) / (2 * k - 2)
    }

    /// Visits every reduced word of length <= depth (the empty word included)
    /// in canonical order, carrying the evaluated map along. Stops early when
    /// the visitor returns `false` or the word budget is reached.
    pub(crate) fn walk_words<F>(
        &self,
        depth: usize,
        budget: usize,
        mut visit: F,
    ) -> Result<WalkOutcome>
    where
        F: FnMut(&[i32], &Moebius) -> bool,
    {
        if depth > MAX_WORD_DEPTH {
            return Err(Error::DepthBudget(depth, MAX_WORD_DEPTH));
        }
        let k2 = 2 * self.gens.len();
        let mut rank_maps = Vec::with_capacity(k2);
        for i in 0..self.gens.len() {
            rank_maps.push(self.gens[i].1);
            rank_maps.push(self.gens[i].1.inverse());
        }
        let mut outcome = WalkOutcome {
            visited: 0,
            truncated: false,
            stopped: false,
        };
        if budget == 0 {
            outcome.truncated = true;
            return Ok(outcome);
        }
        outcome.visited += 1;
        if !visit(&[], &Moebius::identity()) {
            outcome.stopped = true;
            return Ok(outcome);
        }
        if k2 == 0 {
            return Ok(outcome);
        }
        // Iterative deepening: one pass per exact length, ranks in lex order,
        // partial products maintained on a stack.
        for target in 1..=depth {
            let mut ranks: Vec<usize> = Vec::with_capacity(target);
            let mut prods: Vec<Moebius> = Vec::with_capacity(target);
            let mut letters: Vec<i32> = Vec::with_capacity(target);
            'dfs: loop {
                while ranks.len() < target {
                    let forbidden = ranks.last().map(|&r| r ^ 1);
                    let r = if forbidden == Some(0) { 1 } else { 0 };
                    Self::push_rank(&rank_maps, &mut ranks, &mut prods, &mut letters, r);
                }
                if outcome.visited >= budget {
                    outcome.truncated = true;
                    break;
                }
                outcome.visited += 1;
                let m = prods.last().copied().unwrap_or_else(Moebius::identity);
                if !visit(&letters, &m) {
                    outcome.stopped = true;
                    break;
                }
                // Advance to the next word of the same length.
                loop {
                    let Some(cur) = ranks.last().copied() else {
                        break 'dfs;
                    };
                    ranks.pop();
                    prods.pop();
                    letters.pop();
                    let forbidden = ranks.last().map(|&r| r ^ 1);
                    let mut next = cur + 1;
                    if Some(next) == forbidden {
                        next += 1;
                    }
                    if next < k2 {
                        Self::push_rank(&rank_maps, &mut ranks, &mut prods, &mut letters, next);
                        break;
                    }
                }
            }
            if outcome.truncated || outcome.stopped {
                break;
            }
        }
        Ok(outcome)
    }

    fn push_rank(
        rank_maps: &[Moebius],
        ranks: &mut Vec<usize>,
        prods: &mut Vec<Moebius>,
        letters: &mut Vec<i32>,
        r: usize,
    ) {
        let prev = prods.last().copied().unwrap_or_else(Moebius::identity);
        prods.push(prev.compose(&rank_maps[r]));
        ranks.push(r);
        letters.push(rank_to_letter(r));
    }
}

fn rank_to_letter(r: usize) -> i32 {
    let idx = (r / 2 + 1) as i32;
    if r % 2 == 0 {
        idx
    } else {
        -idx
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct WalkOutcome {
    pub visited: usize,
    pub truncated: bool,
    #[allow(dead_code)]
    pub stopped: bool,
}

/// A reduced word in the generators: signed 1-based indices, no adjacent
/// cancellation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    /// Builds a word, freely reducing adjacent inverse pairs.
    pub fn from_letters(letters: &[i32]) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for &l in letters {
            assert!(l != 0, "letters are signed 1-based indices");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn single(letter: i32) -> Word {
        Word::from_letters(&[letter])
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_letters(&letters)
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// True when this word equals h^k for some integer k (as reduced words,
    /// which in a free group is equality of group elements).
    pub fn is_power_of(&self, h: &Word) -> bool {
        if h.is_empty() {
            return self.is_empty();
        }
        if self.is_empty() {
            return true;
        }
        if self.len() % h.len() != 0 {
            return false;
        }
        let k = (self.len() / h.len()) as i32;
        *self == h.pow(k) || *self == h.pow(-k)
    }

    /// Renders the word with generator names; inverses carry a prime suffix.
    pub fn display(&self, group: &MarkedGroup) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let name = group.name(l.unsigned_abs() as usize - 1);
            if l > 0 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}'"));
            }
        }
        parts.join(" ")
    }
}

/// Iterator over reduced words of length <= depth in length-then-lex order.
pub struct WordIter {
    num_gens: usize,
    depth: usize,
    target: usize,
    ranks: Vec<usize>,
    emitted_empty: bool,
    done: bool,
}

impl WordIter {
    fn new(num_gens: usize, depth: usize) -> WordIter {
        WordIter {
            num_gens,
            depth,
            target: 0,
            ranks: Vec::new(),
            emitted_empty: false,
            done: false,
        }
    }

    fn fill_min(&mut self) {
        while self.ranks.len() < self.target {
            let forbidden = self.ranks.last().map(|&r| r ^ 1);
            let r = if forbidden == Some(0) { 1 } else { 0 };
            self.ranks.push(r);
        }
    }

    fn advance_same_len(&mut self) -> bool {
        let k2 = 2 * self.num_gens;
        loop {
            let Some(cur) = self.ranks.pop() else {
                return false;
            };
            let forbidden = self.ranks.last().map(|&r| r ^ 1);
            let mut next = cur + 1;
            if Some(next) == forbidden {
                next += 1;
            }
            if next < k2 {
                self.ranks.push(next);
                self.fill_min();
                return true;
            }
        }
    }
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if !self.emitted_empty {
            self.emitted_empty = true;
            if self.depth == 0 || self.num_gens == 0 {
                self.done = true;
            }
            return Some(Word::empty());
        }
        if self.target == 0 {
            self.target = 1;
            self.ranks.clear();
            self.fill_min();
        } else if !self.advance_same_len() {
            self.target += 1;
            if self.target > self.depth {
                self.done = true;
                return None;
            }
            self.ranks.clear();
            self.fill_min();
        }
        Some(Word {
            letters: self.ranks.iter().map(|&r| rank_to_letter(r)).collect(),
        })
    }
}

/// One Schottky-style pairing: `map` carries the exterior of disk `src` onto
/// the interior of disk `dst`, contributing one named generator.
#[derive(Debug, Clone)]
pub struct DiskPair {
    pub name: String,
    pub map: Moebius,
    pub src: usize,
    pub dst: usize,
}

/// A fundamental-domain candidate: the complement of a finite union of open
/// disks, with optional pairings between them.
#[derive(Debug, Clone, Default)]
pub struct DomainSpec {
    pub disks: Vec<Disk>,
    pub pairs: Vec<DiskPair>,
}

/// Tolerance used when checking pairing maps against their disks.
pub const PAIRING_TOL: f64 = 1e-8;

impl DomainSpec {
    pub fn new(disks: Vec<Disk>, pairs: Vec<DiskPair>) -> Result<DomainSpec> {
        let spec = DomainSpec { disks, pairs };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks pairing well-formedness: indices in range, no disk claimed
    /// twice, and each map carrying the exterior of its source disk onto its
    /// destination disk within `PAIRING_TOL`.
    pub fn validate(&self) -> Result<()> {
        let mut used = vec![false; self.disks.len()];
        let mut names: Vec<&str> = Vec::new();
        for pair in &self.pairs {
            if pair.name.is_empty() || names.contains(&pair.name.as_str()) {
                return Err(Error::MalformedPairing(format!(
                    "duplicate or empty pairing name {:?}",
                    pair.name
                )));
            }
            names.push(&pair.name);
            if pair.src >= self.disks.len() || pair.dst >= self.disks.len() {
                return Err(Error::MalformedPairing(format!(
                    "pair {:?} references a disk out of range",
                    pair.name
                )));
            }
            if pair.src == pair.dst {
                return Err(Error::MalformedPairing(format!(
                    "pair {:?} pairs a disk with itself",
                    pair.name
                )));
            }
            for idx in [pair.src, pair.dst] {
                if used[idx] {
                    return Err(Error::MalformedPairing(format!(
                        "disk {idx} appears in more than one pair"
                    )));
                }
                used[idx] = true;
            }
            let image = image_disk(&pair.map, &self.disks[pair.src].complement());
            let dist = image.form_distance(&self.disks[pair.dst]);
            if !(dist <= PAIRING_TOL) {
                return Err(Error::MalformedPairing(format!(
                    "map {:?} does not carry the exterior of disk {} onto disk {} (form distance {dist:e})",
                    pair.name, pair.src, pair.dst
                )));
            }
        }
        Ok(())
    }

    /// The marked group generated by the pairing maps.
    pub fn group(&self) -> Result<MarkedGroup> {
        MarkedGroup::new(
            self.pairs
                .iter()
                .map(|p| (p.name.clone(), p.map))
                .collect(),
        )
    }

    /// True when `z` lies in the open fundamental domain with at least the
    /// given chordal margin from every deleted disk.
    pub fn contains_interior(&self, z: &SpherePoint, margin: f64) -> bool {
        self.disks.iter().all(|d| d.signed_depth(z) <= -margin)
    }

    /// True when `z` lies in some deleted closed disk.
    pub fn in_deleted_disk(&self, z: &SpherePoint) -> bool {
        self.disks.iter().any(|d| d.signed_depth(z) >= 0.0)
    }

    /// Deterministic sample of interior points with the given margin.
    pub fn sample_interior(&self, count: usize, margin: f64) -> Result<Vec<SpherePoint>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b6c65696e);
        let mut points = Vec::with_capacity(count);
        let budget = 200 * count + 1000;
        for _ in 0..budget {
            if points.len() == count {
                break;
            }
            let zc: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - zc * zc).sqrt();
            let p = SpherePoint::from_unit_sphere([r * phi.cos(), r * phi.sin(), zc]);
            if self.contains_interior(&p, margin) {
                points.push(p);
            }
        }
        if points.len() < count {
            return Err(Error::DomainSampling {
                wanted: count,
                found: points.len(),
            });
        }
        Ok(points)
    }

    /// Union of two specs (disks concatenated, pair indices shifted), with
    /// disks that coincide within `tol` deduplicated.
    pub fn merged_with(&self, other: &DomainSpec, tol: f64) -> Result<DomainSpec> {
        let mut disks = self.disks.clone();
        let mut remap = Vec::with_capacity(other.disks.len());
        for d in &other.disks {
            match disks.iter().position(|e| e.form_distance(d) <= tol) {
                Some(i) => remap.push(i),
                None => {
                    disks.push(*d);
                    remap.push(disks.len() - 1);
                }
            }
        }
        let mut pairs = self.pairs.clone();
        for p in &other.pairs {
            if pairs
                .iter()
                .any(|q| q.name == p.name && q.map.approx_eq(&p.map, tol.max(1e-9)))
            {
                continue;
            }
            pairs.push(DiskPair {
                name: p.name.clone(),
                map: p.map,
                src: remap[p.src],
                dst: remap[p.dst],
            });
        }
        DomainSpec::new(disks, pairs)
    }
}

/// Outcome of the ping-pong check between two domain specs.
#[derive(Debug, Clone)]
pub struct PingPongCertificate {
    pub verdict: Verdict,
    /// Smallest chordal gap between a disk of one spec and a disk of the
    /// other; must be at least the margin for acceptance.
    pub min_gap: f64,
    pub margin: f64,
    /// On rejection: the failed inclusion and the witnessing disk pair
    /// (index in spec 1, index in spec 2).
    pub violation: Option<(String, usize, usize)>,
    pub merged_group: Option<MarkedGroup>,
    pub merged_domain: Option<DomainSpec>,
}

/// Checks the mutual-inclusion conditions for a free (ping-pong)
/// combination: the complement of each domain must land in the interior of
/// the other. For deleted-disk domains this holds exactly when every disk of
/// one spec is chordally separated from every disk of the other by `margin`.
pub fn pingpong_verify(
    d1: &DomainSpec,
    d2: &DomainSpec,
    margin: f64,
) -> Result<PingPongCertificate> {
    d1.validate()?;
    d2.validate()?;
    let mut min_gap = f64::INFINITY;
    let mut violation = None;
    'outer: for (j, db) in d2.disks.iter().enumerate() {
        for (i, da) in d1.disks.iter().enumerate() {
            let gap = da.chordal_gap(db);
            if gap < min_gap {
                min_gap = gap;
            }
            if gap < margin {
                violation = Some(("complement(D2) inside int(D1)".to_string(), i, j));
                break 'outer;
            }
        }
    }
    if let Some(v) = violation {
        return Ok(PingPongCertificate {
            verdict: Verdict::Reject,
            min_gap,
            margin,
            violation: Some(v),
            merged_group: None,
            merged_domain: None,
        });
    }
    let merged_group = d1.group()?.merge(&d2.group()?, 1e-9)?;
    let merged_domain = d1.merged_with(d2, 1e-12)?;
    Ok(PingPongCertificate {
        verdict: Verdict::Accept,
        min_gap,
        margin,
        violation: None,
        merged_group: Some(merged_group),
        merged_domain: Some(merged_domain),
    })
}

/// Report of the finite-depth freeness oracle.
#[derive(Debug, Clone)]
pub struct FreenessReport {
    pub verdict: Verdict,
    pub depth: usize,
    pub testpoints: usize,
    pub nontrivial_words: usize,
    pub truncated: bool,
    /// On rejection: the violating word, the test point, and its image.
    pub violation: Option<(Word, SpherePoint, SpherePoint)>,
}

/// For every nontrivial reduced word of length <= depth and every sampled
/// interior point z, asserts that w(z) leaves the fundamental domain (lands
/// in some deleted disk).
pub fn freeness_oracle(
    group: &MarkedGroup,
    domain: &DomainSpec,
    depth: usize,
    testpoints: usize,
) -> Result<FreenessReport> {
    domain.validate()?;
    let points = domain.sample_interior(testpoints, INTERIOR_MARGIN)?;
    let mut nontrivial = 0usize;
    let mut violation: Option<(Word, SpherePoint, SpherePoint)> = None;
    let outcome = group.walk_words(depth, WORD_BUDGET, |letters, m| {
        if letters.is_empty() {
            return true;
        }
        nontrivial += 1;
        for z in &points {
            let w = m.apply(*z);
            if !domain.in_deleted_disk(&w) {
                violation = Some((Word::from_letters(letters), *z, w));
                return false;
            }
        }
        true
    })?;
    let verdict = if violation.is_some() {
        Verdict::Reject
    } else if outcome.truncated {
        Verdict::Indeterminate
    } else {
        Verdict::Accept
    };
    Ok(FreenessReport {
        verdict,
        depth,
        testpoints,
        nontrivial_words: nontrivial,
        truncated: outcome.truncated,
        violation,
    })
}

/// How limit-set points are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMethod {
    /// Attracting fixed points of loxodromic words (non-loxodromic words are
    /// skipped).
    AttractingFixedPoints,
    /// Orbit of the first generator's attracting (or parabolic) fixed point.
    OrbitOfPoint,
}

impl std::fmt::Display for SampleMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SampleMethod::AttractingFixedPoints => "attracting-fixed-points",
            SampleMethod::OrbitOfPoint => "orbit-of-point",
        };
        write!(f, "{s}")
    }
}

/// A deterministic finite sample of the limit set.
#[derive(Debug, Clone)]
pub struct LimitSetSample {
    pub depth: usize,
    pub method: SampleMethod,
    pub points: Vec<SpherePoint>,
    pub truncated: bool,
}

pub fn limit_set_sample(
    group: &MarkedGroup,
    depth: usize,
    method: SampleMethod,
) -> Result<LimitSetSample> {
    let mut points: Vec<SpherePoint> = Vec::new();
    let mut seen: std::collections::BTreeSet<(bool, u64, u64)> = std::collections::BTreeSet::new();
    let mut push = |p: SpherePoint, points: &mut Vec<SpherePoint>| {
        let key = match p {
            SpherePoint::Infinity => (true, 0, 0),
            SpherePoint::Finite(z) => (false, z.re.to_bits(), z.im.to_bits()),
        };
        if seen.insert(key) {
            points.push(p);
        }
    };
    let truncated;
    match method {
        SampleMethod::AttractingFixedPoints => {
            let outcome = group.walk_words(depth, WORD_BUDGET, |letters, m| {
                if letters.is_empty() {
                    return true;
                }
                if m.classify() == MapClass::Loxodromic {
                    if let Ok(fps) = m.fixed_points() {
                        push(fps[0], &mut points);
                    }
                }
                true
            })?;
            truncated = outcome.truncated;
        }
        SampleMethod::OrbitOfPoint => {
            if group.is_empty() {
                return Err(Error::DegenerateInput(
                    "orbit sampling needs at least one generator".into(),
                ));
            }
            let first = group.map(0);
            let seed = match first.classify() {
                MapClass::Loxodromic | MapClass::Parabolic => first.fixed_points()?[0],
                other => {
                    return Err(Error::DegenerateInput(format!(
                        "orbit seed needs a loxodromic or parabolic first generator, got {other}"
                    )))
                }
            };
            let outcome = group.walk_words(depth, WORD_BUDGET, |_letters, m| {
                push(m.apply(seed), &mut points);
                true
            })?;
            truncated = outcome.truncated;
        }
    }
    Ok(LimitSetSample {
        depth,
        method,
        points,
        truncated,
    })
}

/// A point of upper half-space: boundary coordinate z and height t > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub z: Complex64,
    pub t: f64,
}

impl HPoint {
    pub fn new(z: Complex64, t: f64) -> Result<HPoint> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::DegenerateInput(format!(
                "height must be positive, got {t}"
            )));
        }
        Ok(HPoint { z, t })
    }
}

/// Hyperbolic distance in the upper half-space model.
pub fn hyperbolic_distance(p: &HPoint, q: &HPoint) -> f64 {
    let dz = (p.z - q.z).norm_sqr();
    let dt = (p.t - q.t) * (p.t - q.t);
    let arg = 1.0 + (dz + dt) / (2.0 * p.t * q.t);
    arg.max(1.0).acosh()
}

/// Poincare extension of the boundary action to upper half-space.
pub fn apply_isometry(m: &Moebius, p: &HPoint) -> HPoint {
    let den = (m.c * p.z + m.d).norm_sqr() + m.c.norm_sqr() * p.t * p.t;
    let zc = (m.a * p.z + m.b) * (m.c * p.z + m.d).conj() + m.a * m.c.conj() * p.t * p.t;
    HPoint {
        z: zc / den,
        t: p.t / den,
    }
}

/// Hyperbolic distance from the vertical geodesic over 0 to the geodesic
/// with ideal endpoints u, v (0 when they meet or share an endpoint).
pub fn distance_from_vertical_axis(u: &SpherePoint, v: &SpherePoint) -> f64 {
    let origin = SpherePoint::finite(0.0, 0.0);
    let inf = SpherePoint::Infinity;
    for e in [u, v] {
        if e.chordal_distance(&origin) < 1e-12 || e.chordal_distance(&inf) < 1e-12 {
            return 0.0;
        }
    }
    let (uf, vf) = match (u.as_finite(), v.as_finite()) {
        (Some(a), Some(b)) => (a, b),
        // One endpoint at infinity: a vertical line, sharing the ideal point
        // at infinity with the axis.
        _ => return 0.0,
    };
    let c = (uf + vf) / 2.0;
    let chord = vf - uf;
    let r = chord.norm() / 2.0;
    if r < 1e-300 {
        return f64::INFINITY;
    }
    let dir = chord / chord.norm();
    let p = c.norm_sqr();
    let s = (c.conj() * dir).re;
    let x = if s.abs() < 1e-15 {
        0.0
    } else {
        // Stable small root of s r x^2 + (r^2 + p) x + s r = 0; the other
        // root is its reciprocal.
        let b = r * r + p;
        let disc = (b * b - 4.0 * s * s * r * r).max(0.0).sqrt();
        -2.0 * s * r / (b + disc)
    };
    let x = x.clamp(-1.0, 1.0);
    let num = p + 2.0 * s * r * x + r * r * x * x;
    let den = r * r * (1.0 - x * x);
    if den <= 0.0 {
        return 0.0;
    }
    let f = (num / den).max(0.0);
    f.sqrt().asinh()
}

/// Hyperbolic distance between the axes of two loxodromic maps.
pub fn axis_distance(g1: &Moebius, g2: &Moebius) -> Result<f64> {
    for g in [g1, g2] {
        if g.classify() != MapClass::Loxodromic {
            return Err(Error::NotLoxodromic("axis_distance input"));
        }
    }
    let f1 = g1.fixed_points()?;
    let f2 = g2.fixed_points()?;
    let t = map_zero_inf(f1[1], f1[0])?;
    let u = t.inverse().apply(f2[0]);
    let v = t.inverse().apply(f2[1]);
    Ok(distance_from_vertical_axis(&u, &v))
}

/// Finite-depth collar estimate around the geodesic of a group element.
#[derive(Debug, Clone)]
pub struct CollarEstimate {
    /// Half the minimum distance between the axis and its competing
    /// translates; infinite when no translate competes.
    pub value: f64,
    pub depth: usize,
    pub competitors: usize,
    pub truncated: bool,
    pub minimizing_word: Option<Word>,
}

/// Half of the minimum, over nontrivial reduced words w of length <= depth
/// that do not stabilize the axis, of the distance between the axis of
/// `gamma` and its w-translate. A depth-indexed estimate, not a proof.
pub fn collar_estimate(group: &MarkedGroup, gamma: &Word, depth: usize) -> Result<CollarEstimate> {
    let g = group.evaluate(gamma)?;
    if g.classify() != MapClass::Loxodromic {
        return Err(Error::NotLoxodromic("collar_estimate gamma"));
    }
    let fps = g.fixed_points()?;
    let (att, rep) = (fps[0], fps[1]);
    let t_inv = map_zero_inf(rep, att)?.inverse();
    let mut min_dist = f64::INFINITY;
    let mut competitors = 0usize;
    let mut min_word: Option<Word> = None;
    let outcome = group.walk_words(depth, WORD_BUDGET, |letters, m| {
        if letters.is_empty() {
            return true;
        }
        let wa = m.apply(att);
        let wr = m.apply(rep);
        let same = (wa.chordal_distance(&att) < 1e-9 && wr.chordal_distance(&rep) < 1e-9)
            || (wa.chordal_distance(&rep) < 1e-9 && wr.chordal_distance(&att) < 1e-9);
        if same {
            return true;
        }
        competitors += 1;
        let d = distance_from_vertical_axis(&t_inv.apply(wa), &t_inv.apply(wr));
        if d < min_dist {
            min_dist = d;
            min_word = Some(Word::from_letters(letters));
        }
        true
    })?;
    Ok(CollarEstimate {
        value: min_dist / 2.0,
        depth,
        competitors,
        truncated: outcome.truncated,
        minimizing_word: min_word,
    })
}
