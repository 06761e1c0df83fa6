//! Affine line arrangements over exact rationals and the covectors of their
//! cell complexes.
//!
//! Every pair of lines must cross in exactly one point: identical and
//! parallel lines are rejected.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sign::{Sign, SignVector};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    fn offset(&self, direction: &Point, scale: &Rational) -> Point {
        Point {
            x: &self.x + &direction.x * scale,
            y: &self.y + &direction.y * scale,
        }
    }

    fn midpoint(&self, other: &Point) -> Point {
        let two = Rational::from_integer(2.into());
        Point {
            x: (&self.x + &other.x) / &two,
            y: (&self.y + &other.y) / &two,
        }
    }
}

/// The line `a X + b Y + c = 0`, `(a, b) != (0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Line { a, b, c }
    }

    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    /// Direction vector `(-b, a)`.
    fn direction(&self) -> Point {
        Point::new(-self.b.clone(), self.a.clone())
    }

    fn cross(&self, other: &Line) -> Rational {
        &self.a * &other.b - &other.a * &self.b
    }

    /// Intersection point, if the lines are not parallel.
    pub fn intersection(&self, other: &Line) -> Option<Point> {
        let det = self.cross(other);
        if det.is_zero() {
            return None;
        }
        let x = (&self.b * &other.c - &other.b * &self.c) / &det;
        let y = (&other.a * &self.c - &self.a * &other.c) / &det;
        Some(Point::new(x, y))
    }

    fn is_proportional(&self, other: &Line) -> bool {
        self.cross(other).is_zero()
            && (&self.a * &other.c - &other.a * &self.c).is_zero()
            && (&self.b * &other.c - &other.b * &self.c).is_zero()
    }
}

/// Which side of a line is `+`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `+` where `a x + b y + c > 0`.
    Positive,
    /// `+` where `a x + b y + c < 0`.
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn apply(self, s: Sign) -> Sign {
        match self {
            Orientation::Positive => s,
            Orientation::Negative => -s,
        }
    }
}

/// An ordered list of pairwise crossing lines, each with an orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
    orientations: Vec<Orientation>,
}

impl Arrangement {
    pub fn new(lines: Vec<(Line, Orientation)>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        for (i, (l, _)) in lines.iter().enumerate() {
            if l.a.is_zero() && l.b.is_zero() {
                return Err(Error::DegenerateLine(i));
            }
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (p, q) = (&lines[i].0, &lines[j].0);
                if p.is_proportional(q) {
                    return Err(Error::IdenticalLines(i, j));
                }
                if p.cross(q).is_zero() {
                    return Err(Error::ParallelLines(i, j));
                }
            }
        }
        let (lines, orientations) = lines.into_iter().unzip();
        Ok(Arrangement {
            lines,
            orientations,
        })
    }

    /// All lines with the default orientation.
    pub fn from_lines(lines: Vec<Line>) -> Result<Self> {
        Self::new(lines.into_iter().map(|l| (l, Orientation::Positive)).collect())
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Line, Orientation)> {
        self.lines.iter().zip(self.orientations.iter().copied())
    }

    /// Line `i` scaled by its orientation, so that `+` is where the returned
    /// line evaluates positive.
    pub fn oriented_line(&self, i: usize) -> Line {
        let l = &self.lines[i];
        match self.orientations[i] {
            Orientation::Positive => l.clone(),
            Orientation::Negative => Line::new(-l.a.clone(), -l.b.clone(), -l.c.clone()),
        }
    }

    /// Flips the orientation of every listed line.
    pub fn reoriented(&self, flip: &[usize]) -> Result<Arrangement> {
        let mut out = self.clone();
        for &i in flip {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: self.len(),
                });
            }
            out.orientations[i] = self.orientations[i].flipped();
        }
        Ok(out)
    }

    pub fn covector_at(&self, p: &Point) -> SignVector {
        SignVector::new(
            self.iter()
                .map(|(l, o)| o.apply(Sign::of(&l.eval(p))))
                .collect(),
        )
        .expect("arrangements are nonempty")
    }

    /// Distinct pairwise intersection points.
    pub fn vertices(&self) -> BTreeSet<Point> {
        let mut out = BTreeSet::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                out.insert(
                    self.lines[i]
                        .intersection(&self.lines[j])
                        .expect("no parallel lines"),
                );
            }
        }
        out
    }

    /// True iff no point lies on three or more lines.
    pub fn is_uniform(&self) -> bool {
        self.vertices().iter().all(|v| {
            self.lines.iter().filter(|l| l.eval(v).is_zero()).count() <= 2
        })
    }
}

/// Covectors of the 0-, 1- and 2-cells of an arrangement, classified by
/// their number of zeros, with one sample point per covector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovectorSet {
    pub n: usize,
    /// At least two zeros (vertices).
    pub c0: BTreeSet<SignVector>,
    /// Exactly one zero (edges).
    pub c1: BTreeSet<SignVector>,
    /// No zeros (regions).
    pub c2: BTreeSet<SignVector>,
    pub samples: BTreeMap<SignVector, Point>,
}

impl CovectorSet {
    /// All cell covectors, `c0 ∪ c1 ∪ c2`.
    pub fn cells(&self) -> BTreeSet<SignVector> {
        self.c0
            .iter()
            .chain(&self.c1)
            .chain(&self.c2)
            .cloned()
            .collect()
    }

    /// The full covector set: the cell covectors plus the all-zero vector.
    pub fn all(&self) -> BTreeSet<SignVector> {
        let mut all = self.cells();
        all.insert(SignVector::zeros(self.n));
        all
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.c0.len(), self.c1.len(), self.c2.len())
    }

    fn insert(&mut self, covector: SignVector, point: Point) {
        match covector.zero_count() {
            0 => self.c2.insert(covector.clone()),
            1 => self.c1.insert(covector.clone()),
            _ => self.c0.insert(covector.clone()),
        };
        self.samples.entry(covector).or_insert(point);
    }
}

/// Total order of directions by angle in `[0, 2 pi)`.
fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    let half = |p: &Point| -> u8 {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = &u.x * &v.y - &u.y * &v.x;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Enumerates the covectors of every cell of the subdivision of the plane.
///
/// Vertices are the pairwise intersections. Edges are sampled at midpoints
/// of consecutive vertices along each line and one step beyond each end.
/// Every region touches a vertex (lines pairwise cross), so regions are
/// sampled by stepping from each vertex into each angular sector between
/// consecutive incident rays, by `eps = delta / 2` scaled to the step
/// direction, where `delta = min |l(v)| / (|a| + |b|)` over the lines `l`
/// missing the vertex bounds the distance to them from below.
pub fn enumerate_covectors(arr: &Arrangement) -> CovectorSet {
    let n = arr.len();
    let mut out = CovectorSet {
        n,
        c0: BTreeSet::new(),
        c1: BTreeSet::new(),
        c2: BTreeSet::new(),
        samples: BTreeMap::new(),
    };
    let lines = arr.lines();

    if n == 1 {
        let l = &lines[0];
        let on = if l.b.is_zero() {
            Point::new(-&l.c / &l.a, Rational::zero())
        } else {
            Point::new(Rational::zero(), -&l.c / &l.b)
        };
        let normal = Point::new(l.a.clone(), l.b.clone());
        for p in [
            on.clone(),
            on.offset(&normal, &Rational::one()),
            on.offset(&normal, &-Rational::one()),
        ] {
            out.insert(arr.covector_at(&p), p);
        }
        return out;
    }

    let vertices = arr.vertices();
    for v in &vertices {
        out.insert(arr.covector_at(v), v.clone());
    }

    for l in lines {
        let d = l.direction();
        let param = |p: &Point| &d.x * &p.x + &d.y * &p.y;
        let mut on_line: Vec<&Point> = vertices.iter().filter(|v| l.eval(v).is_zero()).collect();
        on_line.sort_by_key(|p| param(p));
        let mut samples: Vec<Point> = on_line.windows(2).map(|w| w[0].midpoint(w[1])).collect();
        let first = on_line.first().expect("every line meets another");
        let last = on_line.last().expect("every line meets another");
        samples.push(first.offset(&d, &-Rational::one()));
        samples.push(last.offset(&d, &Rational::one()));
        for p in samples {
            out.insert(arr.covector_at(&p), p);
        }
    }

    for v in &vertices {
        let (incident, others): (Vec<&Line>, Vec<&Line>) =
            lines.iter().partition(|l| l.eval(v).is_zero());
        let delta = others
            .iter()
            .map(|l| l.eval(v).abs() / (l.a.abs() + l.b.abs()))
            .min();
        let mut rays: Vec<Point> = incident
            .iter()
            .flat_map(|l| {
                let d = l.direction();
                let back = Point::new(-d.x.clone(), -d.y.clone());
                [d, back]
            })
            .collect();
        rays.sort_by(angle_cmp);
        for k in 0..rays.len() {
            let (r0, r1) = (&rays[k], &rays[(k + 1) % rays.len()]);
            let u = Point::new(&r0.x + &r1.x, &r0.y + &r1.y);
            let norm = u.x.abs() + u.y.abs();
            let eps = match &delta {
                Some(delta) => delta / (Rational::from_integer(2.into()) * norm),
                None => Rational::one(),
            };
            let p = v.offset(&u, &eps);
            out.insert(arr.covector_at(&p), p);
        }
    }
    out
}
