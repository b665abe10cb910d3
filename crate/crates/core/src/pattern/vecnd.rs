use crate::exact::{format_rat, Rat};
use crate::{Error, Result};
use num::{BigInt, Integer, Signed, Zero};
use std::fmt;

/// An integer vector with arbitrary-precision coordinates; used for
/// lattice pattern points and hyperplane normals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector {
    coords: Vec<BigInt>,
}

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall { got: 0, min: 1 });
        }
        Ok(IntVector { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn get(&self, c: usize) -> &BigInt {
        &self.coords[c]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The parallel vector with coordinate gcd 1 and first nonzero
    /// coordinate positive.
    pub fn primitive(&self) -> Result<IntVector> {
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return Err(Error::ZeroNormal);
        }
        if self
            .coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative())
        {
            g = -g;
        }
        IntVector::new(self.coords.iter().map(|c| c / &g).collect())
    }

    /// Exact inner product with a rational point of the same dimension.
    pub fn dot(&self, p: &PointND) -> Rat {
        debug_assert_eq!(self.dim(), p.dim());
        let mut acc = Rat::zero();
        for (c, x) in self.coords.iter().zip(p.coords()) {
            acc += Rat::from_integer(c.clone()) * x;
        }
        acc
    }

    /// Exact inner product with another integer vector.
    pub fn dot_int(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = BigInt::zero();
        for (c, x) in self.coords.iter().zip(other.coords()) {
            acc += c * x;
        }
        acc
    }

    pub fn to_point(&self) -> PointND {
        PointND::new(
            self.coords
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
        .expect("an integer vector is never zero-dimensional")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point with exact rational coordinates in dimension ≥ 1. Ordering is
/// lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointND {
    coords: Vec<Rat>,
}

impl PointND {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionTooSmall { got: 0, min: 1 });
        }
        Ok(PointND { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| crate::exact::rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, c: usize) -> &Rat {
        &self.coords[c]
    }

    /// The image of this point under `x ↦ x + λ·v`.
    pub fn offset_by(&self, v: &IntVector, lambda: &Rat) -> PointND {
        debug_assert_eq!(self.dim(), v.dim());
        PointND {
            coords: self
                .coords
                .iter()
                .zip(v.coords())
                .map(|(x, c)| x + lambda * Rat::from_integer(c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for PointND {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, ")")
    }
}

/// A finite set of integer lattice points of a common dimension, with a
/// name tag. Points are kept sorted and must be pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    dim: usize,
    points: Vec<IntVector>,
}

impl Pattern {
    pub fn new(name: impl Into<String>, points: Vec<IntVector>) -> Result<Self> {
        let name = name.into();
        let dim = match points.first() {
            Some(p) => p.dim(),
            None => return Err(Error::EmptySet("pattern")),
        };
        for p in &points {
            if p.dim() != dim {
                return Err(Error::PatternDimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        let mut points = points;
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePatternPoint);
        }
        Ok(Pattern { name, dim, points })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(|p| p.is_zero())
    }

    /// The distinct values taken by coordinate `c` across the pattern,
    /// ascending.
    pub fn coordinate_values(&self, c: usize) -> Vec<BigInt> {
        let mut vals: Vec<BigInt> = self.points.iter().map(|p| p.get(c).clone()).collect();
        vals.sort();
        vals.dedup();
        vals
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.name)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
