//! Full and partial transformations of `{0, …, n-1}`.
//!
//! Maps act on the right: `x(ab) = (xa)b`, so `a.compose(&b)` applies `a`
//! first and then `b`. Many libraries use the opposite convention.
//!
//! A partial transformation stores an undefined image as the sentinel value
//! `n`. Reading that sentinel as an extra absorbing point gives exactly the
//! embedding of `P(X)` into `T(X ∪ {⊥})`, which several routines exploit.

use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::MAX_DEGREE;

/// Whether a semigroup consists of full or partial transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Full,
    Partial,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Full => "full",
            Kind::Partial => "partial",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Common interface of [`Transformation`] and [`PartialTransformation`].
///
/// The arithmetic methods assume equal degrees and panic otherwise; the
/// inherent `compose` methods are the checked entry points.
pub trait Element:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: Kind;

    fn degree(&self) -> usize;

    /// Raw image array. For partial maps undefined points hold `degree`.
    fn images(&self) -> &[u8];

    /// Image of `x`; for partial maps `x` may be the sentinel `degree`,
    /// which is fixed.
    fn apply(&self, x: usize) -> usize;

    /// Number of points `apply` accepts: `degree`, plus one for the sentinel.
    fn point_count(&self) -> usize;

    fn identity(degree: usize) -> Self;

    fn mul(&self, other: &Self) -> Self;

    fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        (0..self.point_count()).all(|x| other.apply(self.apply(x)) == self.apply(other.apply(x)))
    }

    fn is_idempotent(&self) -> bool {
        (0..self.point_count()).all(|x| self.apply(self.apply(x)) == self.apply(x))
    }

    /// The unique idempotent power of `self`.
    fn omega_power(&self) -> Self;

    /// True iff the map is a total bijection.
    fn is_permutation(&self) -> bool;
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::ZeroDegree)
    } else if n > MAX_DEGREE {
        Err(Error::DegreeTooLarge(n))
    } else {
        Ok(())
    }
}

/// Idempotent power of the full map `img`, computed point by point: for
/// each `x`, the orbit `x, xa, xa², …` has a tail of length `t` and a cycle
/// of length `p`; the idempotent sends `x` to the orbit element at the least
/// multiple of `p` that is at least `t`.
#[allow(clippy::needless_range_loop)]
fn omega_images(img: &[u8]) -> Vec<u8> {
    let n = img.len();
    let mut out = vec![0u8; n];
    let mut visited = vec![usize::MAX; n];
    let mut path = Vec::with_capacity(n);
    for x in 0..n {
        path.clear();
        let mut y = x;
        while visited[y] == usize::MAX {
            visited[y] = path.len();
            path.push(y);
            y = img[y] as usize;
        }
        let tail = visited[y];
        let period = path.len() - tail;
        let steps = tail.div_ceil(period) * period;
        out[x] = path[steps] as u8;
        for &p in &path {
            visited[p] = usize::MAX;
        }
    }
    out
}

/// A total self-map of `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transformation {
    img: Box<[u8]>,
}

impl Transformation {
    pub fn new(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        check_degree(n)?;
        if let Some((point, &value)) = img.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::ImageOutOfRange {
                point,
                value,
                degree: n,
            });
        }
        Ok(Self::from_raw(img.into_iter().map(|v| v as u8).collect()))
    }

    /// Builds from 1-based images, as maps are written in the literature.
    pub fn from_one_based(img: &[usize]) -> Result<Self> {
        let zero_based = img
            .iter()
            .enumerate()
            .map(|(point, &v)| {
                v.checked_sub(1).ok_or(Error::ImageOutOfRange {
                    point,
                    value: v,
                    degree: img.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    pub(crate) fn from_raw(img: Vec<u8>) -> Self {
        Self {
            img: img.into_boxed_slice(),
        }
    }

    pub fn constant(degree: usize, value: usize) -> Result<Self> {
        check_degree(degree)?;
        if value >= degree {
            return Err(Error::PointOutOfRange {
                point: value,
                degree,
            });
        }
        Ok(Self::from_raw(vec![value as u8; degree]))
    }

    pub fn get(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize).collect()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// `im a` as an ascending list.
    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        for &v in self.img.iter() {
            seen[v as usize] = true;
        }
        (0..self.degree()).filter(|&x| seen[x]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// Restriction to `subset`, re-indexed over the subset in ascending order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Self> {
        let points = normalise_subset(subset, self.degree())?;
        let mut index = vec![usize::MAX; self.degree()];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut img = Vec::with_capacity(points.len());
        for &p in &points {
            let image = self.get(p);
            if index[image] == usize::MAX {
                return Err(Error::NotInvariant { point: p, image });
            }
            img.push(index[image] as u8);
        }
        Ok(Self::from_raw(img))
    }

    /// Writes an idempotent as blocks `⟨A_i, x_i⟩` with `A_i = x_i e⁻¹`.
    pub fn idempotent_decomposition(&self) -> Result<IdempotentDecomposition> {
        if !self.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        let blocks = self
            .image()
            .into_iter()
            .map(|rep| Block {
                points: (0..self.degree()).filter(|&x| self.get(x) == rep).collect(),
                representative: rep,
            })
            .collect();
        Ok(IdempotentDecomposition {
            degree: self.degree(),
            blocks,
        })
    }

    /// Decides `eb = be` through the block criterion: every representative
    /// `x_i` must go to some representative `x_j` with `A_i b ⊆ A_j`.
    pub fn commutes_with_idempotent(e: &Self, b: &Self) -> Result<bool> {
        if e.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                left: e.degree(),
                right: b.degree(),
            });
        }
        let decomposition = e.idempotent_decomposition()?;
        // Block of a point is identified by its representative, `x e`.
        for block in &decomposition.blocks {
            let target = b.get(block.representative);
            if e.get(target) != target {
                return Ok(false);
            }
            if block.points.iter().any(|&x| e.get(b.get(x)) != target) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl Element for Transformation {
    const KIND: Kind = Kind::Full;

    fn degree(&self) -> usize {
        self.img.len()
    }

    fn images(&self) -> &[u8] {
        &self.img
    }

    #[inline]
    fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    fn point_count(&self) -> usize {
        self.img.len()
    }

    fn identity(degree: usize) -> Self {
        Self::from_raw((0..degree).map(|x| x as u8).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self::from_raw(self.img.iter().map(|&x| other.img[x as usize]).collect())
    }

    #[inline]
    fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let (a, b) = (&self.img, &other.img);
        a.iter()
            .zip(b.iter())
            .all(|(&ax, &bx)| b[ax as usize] == a[bx as usize])
    }

    fn omega_power(&self) -> Self {
        Self::from_raw(omega_images(&self.img))
    }

    fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{:?}", self.to_vec())
    }
}

/// 1-based display, e.g. `[1,7,4,4,4,4,7]`.
impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &v) in self.img.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v as usize + 1)?;
        }
        f.write_str("]")
    }
}

/// A partial self-map of `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialTransformation {
    img: Box<[u8]>,
}

impl PartialTransformation {
    pub fn new(img: Vec<Option<usize>>) -> Result<Self> {
        let n = img.len();
        check_degree(n)?;
        let mut raw = Vec::with_capacity(n);
        for (point, v) in img.into_iter().enumerate() {
            match v {
                Some(value) if value >= n => {
                    return Err(Error::ImageOutOfRange {
                        point,
                        value,
                        degree: n,
                    })
                }
                Some(value) => raw.push(value as u8),
                None => raw.push(n as u8),
            }
        }
        Ok(Self::from_raw(raw))
    }

    pub(crate) fn from_raw(img: Vec<u8>) -> Self {
        Self {
            img: img.into_boxed_slice(),
        }
    }

    /// The empty map `∅`.
    pub fn empty(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self::from_raw(vec![degree as u8; degree]))
    }

    /// `id_Y`: identity on `subset`, undefined elsewhere.
    pub fn partial_identity(degree: usize, subset: &[usize]) -> Result<Self> {
        check_degree(degree)?;
        let mut img = vec![degree as u8; degree];
        for &y in subset {
            if y >= degree {
                return Err(Error::PointOutOfRange { point: y, degree });
            }
            img[y] = y as u8;
        }
        Ok(Self::from_raw(img))
    }

    /// A total map viewed as a partial one.
    pub fn from_total(t: &Transformation) -> Self {
        Self::from_raw(t.images().to_vec())
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        let v = self.img[x] as usize;
        (v != self.degree()).then_some(v)
    }

    pub fn to_vec(&self) -> Vec<Option<usize>> {
        (0..self.degree()).map(|x| self.get(x)).collect()
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.get(x).is_some())
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        for x in 0..self.degree() {
            if let Some(v) = self.get(x) {
                seen[v] = true;
            }
        }
        (0..self.degree()).filter(|&x| seen[x]).collect()
    }

    pub fn is_total(&self) -> bool {
        self.img.iter().all(|&v| (v as usize) < self.degree())
    }

    /// Partial composition: defined at `x` iff `x ∈ dom a` and `xa ∈ dom b`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul(other))
    }

    /// `β⊥`: the full map of degree `n + 1` in which point `n` plays `⊥`.
    pub fn embed(&self) -> Transformation {
        let n = self.degree();
        let mut img = self.img.to_vec();
        img.push(n as u8);
        Transformation::from_raw(img)
    }

    /// Inverse of [`embed`](Self::embed); the last point must be fixed.
    pub fn from_embedded(t: &Transformation) -> Result<Self> {
        let n = t.degree() - 1;
        if n == 0 || t.get(n) != n {
            return Err(Error::invalid("embedded map must fix its last point"));
        }
        Ok(Self::from_raw(t.images()[..n].to_vec()))
    }
}

impl Element for PartialTransformation {
    const KIND: Kind = Kind::Partial;

    fn degree(&self) -> usize {
        self.img.len()
    }

    fn images(&self) -> &[u8] {
        &self.img
    }

    #[inline]
    fn apply(&self, x: usize) -> usize {
        if x == self.img.len() {
            x
        } else {
            self.img[x] as usize
        }
    }

    fn point_count(&self) -> usize {
        self.img.len() + 1
    }

    fn identity(degree: usize) -> Self {
        Self::from_raw((0..degree).map(|x| x as u8).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self::from_raw(
            self.img
                .iter()
                .map(|&x| other.apply(x as usize) as u8)
                .collect(),
        )
    }

    fn omega_power(&self) -> Self {
        let mut img = omega_images(&self.embed().img);
        img.pop();
        Self::from_raw(img)
    }

    fn is_permutation(&self) -> bool {
        self.is_total() && self.image().len() == self.degree()
    }
}

impl fmt::Debug for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.to_vec())
    }
}

/// 1-based display with `-` for undefined points, e.g. `[2,-]`.
impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for x in 0..self.degree() {
            if x > 0 {
                f.write_str(",")?;
            }
            match self.get(x) {
                Some(v) => write!(f, "{}", v + 1)?,
                None => f.write_str("-")?,
            }
        }
        f.write_str("]")
    }
}

/// One block `⟨A, x⟩` of an idempotent: every point of `A` goes to `x ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub points: Vec<usize>,
    pub representative: usize,
}

/// An idempotent written as `⟨A_1, x_1⟩⋯⟨A_k, x_k⟩`, blocks ordered by
/// representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentDecomposition {
    pub degree: usize,
    pub blocks: Vec<Block>,
}

impl IdempotentDecomposition {
    pub fn to_transformation(&self) -> Transformation {
        let mut img = vec![0u8; self.degree];
        for block in &self.blocks {
            for &x in &block.points {
                img[x] = block.representative as u8;
            }
        }
        Transformation::from_raw(img)
    }
}

/// Sorted, deduplicated, range-checked copy of a nonempty subset.
pub(crate) fn normalise_subset(subset: &[usize], degree: usize) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut points = subset.to_vec();
    points.sort_unstable();
    points.dedup();
    if let Some(&point) = points.iter().find(|&&p| p >= degree) {
        return Err(Error::PointOutOfRange { point, degree });
    }
    Ok(points)
}
