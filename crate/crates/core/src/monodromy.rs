//! Monodromy of motions with a single moving point.
//!
//! A motion of `E = {0, 1, inf, z0, z1, ..., zn}` over an annulus that fixes
//! everything but `z0` is determined, up to homotopy, by the loop traced by
//! `z0` around the annulus generator. That loop is carried as a [`Word`] in
//! the free group `pi_1(C \ {0, 1, z1, ..., zn}, z0)`, so triviality questions
//! are decided exactly by free reduction.
//!
//! Generator assignment: `g0` encircles `0`, `g1` encircles `1`, and `g{j+1}`
//! encircles `z_j`. All loops are counterclockwise; the loop around infinity
//! is `(g0 g1 ... g{n+1})^-1`. Triviality results do not depend on the
//! orientation choice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{substitute_relator, Word, WordError};

#[derive(Debug, Error)]
pub enum MonodromyError {
    #[error("invalid point configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("word rank {got} does not match n + 2 = {expected}")]
    WordRank { got: usize, expected: usize },
    #[error("the moving point z0 must be kept")]
    MovingPointDropped,
    #[error("point {0} is not part of the configuration")]
    UnknownPoint(Point),
    #[error("expected 4 distinct points, got {0}")]
    BadQuadruple(usize),
    #[error("cannot parse point label `{0}`")]
    BadPointLabel(String),
    #[error("malformed spec file: {0}")]
    Json(#[from] serde_json::Error),
}

/// A marked point of `E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Moving,
    Zero,
    One,
    /// `z_j`, `1 <= j <= n`.
    Marked(usize),
    Infinity,
}

impl Point {
    /// Index of the loop generator encircling this point, if it is a finite
    /// fixed puncture.
    pub fn generator(self) -> Option<usize> {
        match self {
            Point::Zero => Some(0),
            Point::One => Some(1),
            Point::Marked(j) => Some(j + 1),
            Point::Moving | Point::Infinity => None,
        }
    }

    pub fn is_fixed(self) -> bool {
        self != Point::Moving
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Moving => f.write_str("z0"),
            Point::Zero => f.write_str("0"),
            Point::One => f.write_str("1"),
            Point::Marked(j) => write!(f, "z{j}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Point {
    type Err = MonodromyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z0" => Ok(Point::Moving),
            "0" => Ok(Point::Zero),
            "1" => Ok(Point::One),
            "inf" | "infinity" => Ok(Point::Infinity),
            _ => s
                .strip_prefix('z')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&j| j >= 1)
                .map(Point::Marked)
                .ok_or_else(|| MonodromyError::BadPointLabel(s.to_string())),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `E = {0, 1, inf, z0, z1, ..., zn}` with coordinates for the finite points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    z0: Complex64,
    points: Vec<Complex64>,
}

impl PointConfig {
    pub fn new(z0: Complex64, points: Vec<Complex64>) -> Result<Self, MonodromyError> {
        let mut finite = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        finite.extend_from_slice(&points);
        for (i, a) in finite.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(MonodromyError::InvalidConfig(format!("non-finite coordinate {a}")));
            }
            if finite[..i].contains(a) {
                return Err(MonodromyError::InvalidConfig(format!("duplicate point {a}")));
            }
        }
        if finite.contains(&z0) {
            return Err(MonodromyError::InvalidConfig(format!("z0 = {z0} coincides with a fixed point")));
        }
        Ok(Self { z0, points })
    }

    /// `z_j = j + 2` on the real axis and `z0 = -1`.
    pub fn default_for(n: usize) -> Self {
        let points = (1..=n).map(|j| Complex64::new(j as f64 + 2.0, 0.0)).collect();
        Self { z0: Complex64::new(-1.0, 0.0), points }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn z0(&self) -> Complex64 {
        self.z0
    }

    pub fn marked(&self) -> &[Complex64] {
        &self.points
    }

    /// All points of `E`, in canonical order.
    pub fn all_points(&self) -> Vec<Point> {
        let mut v = vec![Point::Moving, Point::Zero, Point::One];
        v.extend((1..=self.n()).map(Point::Marked));
        v.push(Point::Infinity);
        v
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Marked(j) => j >= 1 && j <= self.n(),
            _ => true,
        }
    }

    /// Coordinates of a finite point.
    pub fn coordinate(&self, p: Point) -> Option<Complex64> {
        match p {
            Point::Moving => Some(self.z0),
            Point::Zero => Some(Complex64::new(0.0, 0.0)),
            Point::One => Some(Complex64::new(1.0, 0.0)),
            Point::Marked(j) if j >= 1 && j <= self.n() => Some(self.points[j - 1]),
            _ => None,
        }
    }
}

/// A one-moving-point motion over an annulus, described by the trace word of
/// `z0` around the annulus core.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringMotionSpec {
    config: PointConfig,
    word: Word,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecFile {
    pub n: usize,
    pub z0: [f64; 2],
    pub points: Vec<[f64; 2]>,
    pub word: String,
}

impl CoveringMotionSpec {
    pub fn new(config: PointConfig, word: Word) -> Result<Self, MonodromyError> {
        let expected = config.n() + 2;
        if word.rank() != expected {
            return Err(MonodromyError::WordRank { got: word.rank(), expected });
        }
        Ok(Self { config, word })
    }

    pub fn from_file(file: &SpecFile) -> Result<Self, MonodromyError> {
        if file.points.len() != file.n {
            return Err(MonodromyError::InvalidConfig(format!(
                "`points` has {} entries but `n` is {}",
                file.points.len(),
                file.n
            )));
        }
        let c = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        let config = PointConfig::new(c(file.z0), file.points.iter().copied().map(c).collect())?;
        let word = Word::parse(file.n + 2, &file.word)?;
        Self::new(config, word)
    }

    pub fn from_json(text: &str) -> Result<Self, MonodromyError> {
        let file: SpecFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SpecFile {
        let c = |z: Complex64| [z.re, z.im];
        SpecFile {
            n: self.config.n(),
            z0: c(self.config.z0),
            points: self.config.points.iter().copied().map(c).collect(),
            word: self.word.to_string(),
        }
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }
}

/// The trace word seen after forgetting the points outside `kept`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetRestriction {
    pub kept: BTreeSet<Point>,
    /// Reduced word, indexed like the original generators; it lies in the
    /// subgroup spanned by the generators that survive the restriction.
    pub word: Word,
}

/// Kra criterion: the motion has trivial monodromy iff the trace loop is
/// null-homotopic.
pub fn monodromy_is_trivial(spec: &CoveringMotionSpec) -> bool {
    spec.word.is_trivial()
}

/// Unordered pair of points, smaller label first.
pub type PointPair = (Point, Point);

/// Winding turn counts of `phi(., z) - phi(., z')` around the annulus core.
pub fn chirka_numbers(spec: &CoveringMotionSpec) -> BTreeMap<PointPair, i64> {
    let sums = spec.word.exponent_sums();
    let pts = spec.config.all_points();
    let mut out = BTreeMap::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let turns = match (lo, hi) {
                (Point::Moving, p) => p.generator().map_or(0, |g| sums[g]),
                _ => 0,
            };
            out.insert((lo, hi), turns);
        }
    }
    out
}

pub fn restrict_to_subset(
    spec: &CoveringMotionSpec,
    kept: &BTreeSet<Point>,
) -> Result<SubsetRestriction, MonodromyError> {
    if let Some(&p) = kept.iter().find(|p| !spec.config.contains(**p)) {
        return Err(MonodromyError::UnknownPoint(p));
    }
    if !kept.contains(&Point::Moving) {
        return Err(MonodromyError::MovingPointDropped);
    }
    let rank = spec.word.rank();
    let surviving: Vec<usize> = spec
        .config
        .all_points()
        .into_iter()
        .filter(|p| kept.contains(p))
        .filter_map(Point::generator)
        .collect();
    let letters: Vec<_> = spec
        .word
        .letters()
        .iter()
        .copied()
        .filter(|l| surviving.contains(&l.generator))
        .collect();
    let mut word = Word::from_letters(rank, letters)?.reduce();
    if !kept.contains(&Point::Infinity) {
        // the product of the surviving loops now bounds a disk
        word = match surviving.split_last() {
            None => Word::identity(rank),
            Some((&last, rest)) => Word::from_letters(rank, substitute_relator(word.letters(), last, rest))?.reduce(),
        };
    }
    Ok(SubsetRestriction { kept: kept.clone(), word })
}

/// Monodromy of the restriction of the motion to four points of `E`.
pub fn trace_monodromy_trivial(spec: &CoveringMotionSpec, quadruple: &[Point]) -> Result<bool, MonodromyError> {
    let set: BTreeSet<Point> = quadruple.iter().copied().collect();
    if set.len() != 4 || quadruple.len() != 4 {
        return Err(MonodromyError::BadQuadruple(set.len()));
    }
    if let Some(&p) = set.iter().find(|p| !spec.config.contains(**p)) {
        return Err(MonodromyError::UnknownPoint(p));
    }
    if !set.contains(&Point::Moving) {
        return Ok(true);
    }
    Ok(restrict_to_subset(spec, &set)?.word.is_empty())
}

/// All 4-point subsets of `E`, in lexicographic order of the canonical listing.
pub fn quadruples(config: &PointConfig) -> Vec<[Point; 4]> {
    let pts = config.all_points();
    let m = pts.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    out.push([pts[a], pts[b], pts[c], pts[d]]);
                }
            }
        }
    }
    out
}

/// Trace word `[g1, g0]` of the Chirka-condition counterexample.
pub fn build_chirka_word(n: usize) -> Word {
    let rank = n + 2;
    let g0 = Word::generator(rank, 0).expect("rank >= 2");
    let g1 = Word::generator(rank, 1).expect("rank >= 2");
    Word::commutator(&g1, &g0).expect("equal ranks")
}

pub fn build_chirka_counterexample(n: usize) -> CoveringMotionSpec {
    CoveringMotionSpec { config: PointConfig::default_for(n), word: build_chirka_word(n) }
}

/// `[beta, t_{n+1}]` with `beta = g0 ... g{n+1}`, `t_1 = [g0, g1]` and
/// `t_j = [g_j, t_{j-1}]`. For `n = 0` this falls back to the Chirka word.
pub fn build_trace_word(n: usize) -> Word {
    if n == 0 {
        return build_chirka_word(0);
    }
    let rank = n + 2;
    let g = |j| Word::generator(rank, j).expect("index below rank");
    let mut tower = Word::commutator(&g(0), &g(1)).expect("equal ranks");
    for j in 2..=n + 1 {
        tower = Word::commutator(&g(j), &tower).expect("equal ranks");
    }
    let beta = (0..rank).fold(Word::identity(rank), |acc, j| acc.concat(&g(j)).expect("equal ranks"));
    Word::commutator(&beta, &tower).expect("equal ranks")
}

pub fn build_trace_counterexample(n: usize) -> CoveringMotionSpec {
    if n == 0 {
        return build_chirka_counterexample(0);
    }
    CoveringMotionSpec { config: PointConfig::default_for(n), word: build_trace_word(n) }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCase {
    pub case: String,
    pub trivial: bool,
    pub expected_trivial: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyAReport {
    pub n: usize,
    pub word: String,
    pub word_length: usize,
    pub exponent_sums: Vec<i64>,
    pub cases: Vec<PropertyCase>,
}

impl PropertyAReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

/// Checks that the trace word is nontrivial but dies when any single
/// generator is killed or when infinity is filled in.
pub fn verify_property_a(n: usize) -> PropertyAReport {
    let word = build_trace_word(n).reduce();
    let mut cases = Vec::new();
    let mut push = |case: String, trivial: bool, expected_trivial: bool| {
        cases.push(PropertyCase { case, trivial, expected_trivial, pass: trivial == expected_trivial });
    };
    push("full word".into(), word.is_trivial(), false);
    for j in 0..word.rank() {
        let t = word.delete_generator(j).expect("index below rank").is_trivial();
        push(format!("delete g{j}"), t, true);
    }
    push("fill infinity".into(), word.fill_infinity().is_trivial(), true);
    PropertyAReport {
        n,
        word: word.to_string(),
        word_length: word.len(),
        exponent_sums: word.exponent_sums(),
        cases,
    }
}
