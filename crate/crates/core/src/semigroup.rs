//! Finite sets of transformations viewed as semigroups.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transform::{normalise_subset, Element, Kind, PartialTransformation, Transformation};

/// A duplicate-free, canonically sorted set of (partial) transformations of
/// one degree. Closure and commutativity are computed lazily and cached.
#[derive(Debug, Clone)]
pub struct SemigroupSet<E> {
    degree: usize,
    elements: Vec<E>,
    closed: OnceLock<bool>,
    commutative: OnceLock<bool>,
}

impl<E: Element> PartialEq for SemigroupSet<E> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl<E: Element> Eq for SemigroupSet<E> {}

/// Isomorphism type of a small group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupClass {
    C1,
    C2,
    C3,
    C4,
    C2xC2,
    Other,
}

impl GroupClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GroupClass::C1 => "C1",
            GroupClass::C2 => "C2",
            GroupClass::C3 => "C3",
            GroupClass::C4 => "C4",
            GroupClass::C2xC2 => "C2xC2",
            GroupClass::Other => "OTHER",
        }
    }
}

/// Safety caps for enumerating whole semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub full: usize,
    pub partial: usize,
    pub sym: usize,
    pub force: bool,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            full: 7,
            partial: 5,
            sym: 8,
            force: false,
        }
    }
}

impl EnumerationCaps {
    fn check(&self, what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > cap && !self.force {
            return Err(Error::CapExceeded { what, n, cap });
        }
        Ok(())
    }
}

/// Minimum-size members of `C(S, X)`, the nonempty proper subsets `I` whose
/// complement is mapped into itself by every element of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub minimal: Vec<usize>,
    pub all_minimal: Vec<Vec<usize>>,
    /// For `|I| ≥ 2`: an element acting on `minimal` as a product of
    /// disjoint cycles, all of one length `≥ 2`.
    pub witness_cycle_element: Option<Transformation>,
}

/// Subset enumeration is used up to this degree; above it, backward closures.
const SUBSET_ENUMERATION_MAX: usize = 20;

impl<E: Element> SemigroupSet<E> {
    /// Sorts and deduplicates `elements`; no closure is performed.
    pub fn from_elements(degree: usize, elements: Vec<E>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("a semigroup set needs at least one element"));
        }
        if let Some(bad) = elements.iter().find(|e| e.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        Ok(Self::from_sorted(degree, elements))
    }

    pub(crate) fn from_sorted(degree: usize, elements: Vec<E>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self {
            degree,
            elements,
            closed: OnceLock::new(),
            commutative: OnceLock::new(),
        }
    }

    pub(crate) fn with_flags(self, closed: Option<bool>, commutative: Option<bool>) -> Self {
        if let Some(c) = closed {
            let _ = self.closed.set(c);
        }
        if let Some(c) = commutative {
            let _ = self.commutative.set(c);
        }
        self
    }

    /// The subsemigroup generated by `generators`.
    pub fn closure(generators: &[E]) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let mut gens = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();

        let mut seen: HashSet<E> = gens.iter().cloned().collect();
        let mut queue: VecDeque<E> = gens.iter().cloned().collect();
        while let Some(s) = queue.pop_front() {
            for g in &gens {
                let product = s.mul(g);
                if seen.insert(product.clone()) {
                    queue.push_back(product);
                }
            }
        }
        let mut elements: Vec<E> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Self::from_sorted(degree, elements).with_flags(Some(true), None))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> Kind {
        E::KIND
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<E> {
        self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.elements.iter()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index_of(e).is_some()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// Zero `z` such that every product of two elements equals `z`, if any.
    ///
    /// Runs in `O(|S|·n²)`: `ab = z` for all `a, b` iff every `b` sends each
    /// column `{xa : a ∈ S}` to `xz`.
    fn null_product(elements: &[E]) -> Option<E> {
        let first = elements.first()?;
        let z = first.mul(first);
        let points = first.point_count();
        let mut column = Vec::with_capacity(elements.len().min(points));
        for x in 0..points {
            column.clear();
            let mut hit = vec![false; points];
            for a in elements {
                let v = a.apply(x);
                if !hit[v] {
                    hit[v] = true;
                    column.push(v);
                }
            }
            let zx = z.apply(x);
            if elements
                .iter()
                .any(|b| column.iter().any(|&u| b.apply(u) != zx))
            {
                return None;
            }
        }
        Some(z)
    }

    /// The non-identity part is a null semigroup whose zero lies in the set.
    /// Such a set is closed and commutative.
    fn null_with_identity(&self) -> bool {
        let identity = E::identity(self.degree);
        let rest: Vec<E> = self
            .elements
            .iter()
            .filter(|e| **e != identity)
            .cloned()
            .collect();
        match Self::null_product(&rest) {
            Some(z) => self.contains(&z),
            None => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        *self.closed.get_or_init(|| {
            self.null_with_identity()
                || self
                    .elements
                    .par_iter()
                    .all(|a| self.elements.iter().all(|b| self.contains(&a.mul(b))))
        })
    }

    pub fn is_commutative(&self) -> bool {
        *self.commutative.get_or_init(|| {
            self.null_with_identity()
                || self
                    .elements
                    .par_iter()
                    .enumerate()
                    .all(|(i, a)| self.elements[i + 1..].iter().all(|b| a.commutes_with(b)))
        })
    }

    fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::NotClosed)
        }
    }

    /// `Z(S)`: the elements commuting with everything in `S`. May be empty.
    pub fn center(&self) -> Result<Self> {
        self.require_closed()?;
        if self.is_commutative() {
            return Ok(self.clone());
        }
        let central: Vec<E> = self
            .elements
            .par_iter()
            .filter(|a| self.elements.iter().all(|b| a.commutes_with(b)))
            .cloned()
            .collect();
        Ok(Self::from_sorted(self.degree, central).with_flags(Some(true), Some(true)))
    }

    pub fn idempotents(&self) -> Vec<E> {
        self.elements
            .iter()
            .filter(|e| e.is_idempotent())
            .cloned()
            .collect()
    }

    pub fn has_unique_idempotent(&self) -> bool {
        self.elements.iter().filter(|e| e.is_idempotent()).count() == 1
    }

    /// Two-sided zero of the set, if one exists.
    pub fn zero(&self) -> Option<E> {
        self.elements
            .iter()
            .find(|z| {
                self.elements
                    .iter()
                    .all(|s| z.mul(s) == **z && s.mul(z) == **z)
            })
            .cloned()
    }

    /// `Some(z)` iff every product equals the zero `z`.
    pub fn is_null(&self) -> Result<Option<E>> {
        self.require_closed()?;
        Ok(Self::null_product(&self.elements))
    }

    /// `S` has a zero `z` and the chain `S ⊇ S² ⊇ …` reaches `{z}`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        self.require_closed()?;
        let Some(z) = self.zero() else {
            return Ok(false);
        };
        let mut current: BTreeSet<E> = self.elements.iter().cloned().collect();
        for _ in 0..self.len() {
            if current.len() == 1 && current.contains(&z) {
                return Ok(true);
            }
            let next: BTreeSet<E> = current
                .iter()
                .flat_map(|a| self.elements.iter().map(move |b| a.mul(b)))
                .collect();
            if next == current {
                return Ok(false);
            }
            current = next;
        }
        Ok(current.len() == 1 && current.contains(&z))
    }

    fn group_identity(&self) -> Option<&E> {
        let u = self.elements.iter().find(|u| {
            self.elements
                .iter()
                .all(|s| u.mul(s) == *s && s.mul(u) == *s)
        })?;
        let invertible = self.elements.iter().all(|s| {
            self.elements
                .iter()
                .any(|t| s.mul(t) == *u && t.mul(s) == *u)
        });
        invertible.then_some(u)
    }

    pub fn is_group(&self) -> bool {
        self.is_closed() && self.group_identity().is_some()
    }

    /// Isomorphism type for groups of order at most four; `None` for
    /// non-groups.
    pub fn classify_small_abelian_group(&self) -> Option<GroupClass> {
        if !self.is_closed() {
            return None;
        }
        let u = self.group_identity()?;
        let order_of = |s: &E| {
            let mut k = 1;
            let mut power = s.clone();
            while power != *u {
                power = power.mul(s);
                k += 1;
            }
            k
        };
        let max_order = self.elements.iter().map(order_of).max().unwrap_or(1);
        Some(match (self.len(), max_order) {
            (1, _) => GroupClass::C1,
            (2, _) => GroupClass::C2,
            (3, _) => GroupClass::C3,
            (4, 4) => GroupClass::C4,
            (4, _) => GroupClass::C2xC2,
            _ => GroupClass::Other,
        })
    }

    /// Union of the images (defined values only, for partial maps).
    pub fn image_union(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        for e in &self.elements {
            for &v in e.images() {
                if (v as usize) < self.degree {
                    seen[v as usize] = true;
                }
            }
        }
        (0..self.degree).filter(|&x| seen[x]).collect()
    }

    /// Every element is a total bijection.
    pub fn is_within_sym(&self) -> bool {
        self.elements.iter().all(|e| e.is_permutation())
    }
}

impl SemigroupSet<Transformation> {
    /// `{α|_Y : α ∈ S}`, each restriction re-indexed over `Y` ascending.
    pub fn restrict_set(&self, subset: &[usize]) -> Result<Self> {
        let restricted = self
            .elements
            .iter()
            .map(|a| a.restrict(subset))
            .collect::<Result<Vec<_>>>()?;
        let y = normalise_subset(subset, self.degree)?;
        let out = Self::from_elements(y.len(), restricted)?;
        // Restriction is a homomorphism onto its image.
        let closed = self.closed.get().copied().filter(|&c| c);
        let commutative = self.commutative.get().copied().filter(|&c| c);
        Ok(out.with_flags(closed, commutative))
    }

    /// All minimum-size `I ∈ C(S, X)`, plus the cycle witness when `|I| ≥ 2`.
    pub fn minimal_invariant_complement(&self) -> Result<InvariantReport> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        if self.is_within_sym() {
            return Err(Error::ContainedInSym);
        }
        let all_minimal = if self.degree <= SUBSET_ENUMERATION_MAX {
            self.minimal_complements_by_subsets()
        } else {
            self.minimal_complements_by_closures()
        };
        let minimal = all_minimal
            .first()
            .cloned()
            .ok_or(Error::EmptyInvariantClass)?;
        let witness_cycle_element = if minimal.len() >= 2 {
            let w = self.equal_cycle_witness(&minimal);
            if w.is_none() {
                return Err(Error::internal(format!(
                    "no equal-length cycle witness on minimal set {minimal:?}"
                )));
            }
            w
        } else {
            None
        };
        Ok(InvariantReport {
            minimal,
            all_minimal,
            witness_cycle_element,
        })
    }

    /// `reach[x]`: bitmask of `{xβ : β ∈ S}`.
    fn one_step_reach(&self) -> Vec<u64> {
        let mut reach = vec![0u64; self.degree];
        for a in &self.elements {
            for (x, r) in reach.iter_mut().enumerate() {
                *r |= 1 << a.get(x);
            }
        }
        reach
    }

    pub(crate) fn minimal_complements_by_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let reach = self.one_step_reach();
        let full: u64 = (1u64 << n) - 1;
        let mut best = usize::MAX;
        let mut found: Vec<u64> = Vec::new();
        for i_mask in 1..full {
            let size = i_mask.count_ones() as usize;
            if size > best {
                continue;
            }
            let w = full & !i_mask;
            let invariant = (0..n)
                .filter(|&x| w >> x & 1 == 1)
                .all(|x| reach[x] & !w == 0);
            if invariant {
                if size < best {
                    best = size;
                    found.clear();
                }
                found.push(i_mask);
            }
        }
        let mut sets: Vec<Vec<usize>> = found
            .into_iter()
            .map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect())
            .collect();
        sets.sort();
        sets
    }

    /// A minimum-size member of `C(S, X)` containing `y` must contain every
    /// point that reaches `y`; so the minimum members are exactly the
    /// smallest proper backward closures of single points.
    pub(crate) fn minimal_complements_by_closures(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.elements {
            for x in 0..n {
                preimages[a.get(x)].push(x);
            }
        }
        for p in preimages.iter_mut() {
            p.sort_unstable();
            p.dedup();
        }
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        for y in 0..n {
            let mut inside = vec![false; n];
            inside[y] = true;
            let mut stack = vec![y];
            while let Some(z) = stack.pop() {
                for &x in &preimages[z] {
                    if !inside[x] {
                        inside[x] = true;
                        stack.push(x);
                    }
                }
            }
            let set: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
            if set.len() < n {
                candidates.insert(set);
            }
        }
        let Some(best) = candidates.iter().map(Vec::len).min() else {
            return Vec::new();
        };
        candidates.into_iter().filter(|s| s.len() == best).collect()
    }

    /// An element permuting `subset` fixed-point-freely with all cycles of
    /// one length.
    pub fn equal_cycle_witness(&self, subset: &[usize]) -> Option<Transformation> {
        self.elements
            .iter()
            .find(|a| equal_cycles_on(a, subset))
            .cloned()
    }
}

fn equal_cycles_on(a: &Transformation, subset: &[usize]) -> bool {
    let n = a.degree();
    let mut member = vec![false; n];
    for &x in subset {
        member[x] = true;
    }
    let mut hit = vec![false; n];
    for &x in subset {
        let y = a.get(x);
        if !member[y] || hit[y] || y == x {
            return false;
        }
        hit[y] = true;
    }
    let mut length = None;
    let mut done = vec![false; n];
    for &x in subset {
        if done[x] {
            continue;
        }
        let mut len = 0;
        let mut y = x;
        loop {
            done[y] = true;
            len += 1;
            y = a.get(y);
            if y == x {
                break;
            }
        }
        match length {
            None => length = Some(len),
            Some(l) if l != len => return false,
            _ => {}
        }
    }
    true
}

/// Lexicographic odometer over `digits^n`; yields arrays in ascending order.
fn odometer(n: usize, digits: usize) -> impl Iterator<Item = Vec<u8>> {
    let mut current = Some(vec![0u8; n]);
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = current.as_mut().unwrap();
        let mut i = n;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if (next[i] as usize) + 1 < digits {
                next[i] += 1;
                break;
            }
            next[i] = 0;
        }
        Some(out)
    })
}

/// `T_n`, in canonical order.
pub fn enumerate_full(n: usize) -> Result<SemigroupSet<Transformation>> {
    enumerate_full_with(n, &EnumerationCaps::default())
}

pub fn enumerate_full_with(
    n: usize,
    caps: &EnumerationCaps,
) -> Result<SemigroupSet<Transformation>> {
    caps.check("T_n", n, caps.full)?;
    let elements = odometer(n, n).map(Transformation::from_raw).collect();
    Ok(SemigroupSet::from_sorted(n, elements).with_flags(Some(true), Some(n == 1)))
}

/// `P_n`, in canonical order (undefined sorts last).
pub fn enumerate_partial(n: usize) -> Result<SemigroupSet<PartialTransformation>> {
    enumerate_partial_with(n, &EnumerationCaps::default())
}

pub fn enumerate_partial_with(
    n: usize,
    caps: &EnumerationCaps,
) -> Result<SemigroupSet<PartialTransformation>> {
    caps.check("P_n", n, caps.partial)?;
    let elements = odometer(n, n + 1)
        .map(PartialTransformation::from_raw)
        .collect();
    Ok(SemigroupSet::from_sorted(n, elements).with_flags(Some(true), Some(false)))
}

/// `Sym_n`, in canonical order.
pub fn enumerate_sym(n: usize) -> Result<SemigroupSet<Transformation>> {
    enumerate_sym_with(n, &EnumerationCaps::default())
}

pub fn enumerate_sym_with(
    n: usize,
    caps: &EnumerationCaps,
) -> Result<SemigroupSet<Transformation>> {
    caps.check("Sym_n", n, caps.sym)?;
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut elements = vec![Transformation::from_raw(perm.clone())];
    while next_permutation(&mut perm) {
        elements.push(Transformation::from_raw(perm.clone()));
    }
    Ok(SemigroupSet::from_sorted(n, elements).with_flags(Some(true), Some(n <= 2)))
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
