//! Builders for the extremal commutative semigroups.
//!
//! Each builder returns a closed set whose structural flags are set from the
//! construction; the tests re-derive them from scratch.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::semigroup::SemigroupSet;
use crate::transform::{normalise_subset, Element, PartialTransformation, Transformation};
use crate::xi::alpha;

/// Refuse to materialise sets larger than this.
pub const MAX_CONSTRUCTION_SIZE: u64 = 1 << 24;

fn check_size(what: &str, size: u64) -> Result<()> {
    if size > MAX_CONSTRUCTION_SIZE {
        return Err(Error::invalid(format!(
            "{what} would have {size} elements (limit {MAX_CONSTRUCTION_SIZE})"
        )));
    }
    Ok(())
}

fn check_degree(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::ZeroDegree),
        n if n > crate::MAX_DEGREE => Err(Error::DegreeTooLarge(n)),
        _ => Ok(()),
    }
}

fn distinct_points(points: &[usize], n: usize) -> Result<Vec<usize>> {
    let sorted = normalise_subset(points, n)?;
    if sorted.len() != points.len() {
        return Err(Error::invalid("points must be distinct"));
    }
    Ok(sorted)
}

/// Sizes `choices[i]` per free slot; yields every assignment.
fn assignments(choices: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(choices.len())];
    for slot in choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                slot.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}

fn sorted_set<E: Element>(n: usize, mut elements: Vec<E>) -> SemigroupSet<E> {
    elements.sort_unstable();
    elements.dedup();
    SemigroupSet::from_sorted(n, elements)
}

/// Maps fixing `x` and sending every other `y` to `x` or `y`.
pub fn gamma(n: usize, x: usize) -> Result<SemigroupSet<Transformation>> {
    check_degree(n)?;
    if x >= n {
        return Err(Error::PointOutOfRange {
            point: x,
            degree: n,
        });
    }
    check_size("gamma", 1u64.checked_shl(n as u32 - 1).unwrap_or(u64::MAX))?;
    let choices: Vec<Vec<u8>> = (0..n)
        .map(|y| {
            if y == x {
                vec![x as u8]
            } else {
                vec![x as u8, y as u8]
            }
        })
        .collect();
    let elements = assignments(&choices)
        .into_iter()
        .map(Transformation::from_raw)
        .collect();
    Ok(sorted_set(n, elements).with_flags(Some(true), Some(true)))
}

/// Maps sending each `points[i]` to `points[0]` and everything into `points`.
/// Null with zero the constant map to `points[0]`; any number of points.
pub fn null_semigroup(n: usize, points: &[usize]) -> Result<SemigroupSet<Transformation>> {
    check_degree(n)?;
    if points.is_empty() {
        return Err(Error::EmptySubset);
    }
    let members = distinct_points(points, n)?;
    let t = members.len() as u64;
    check_size(
        "null semigroup",
        t.checked_pow((n - members.len()) as u32)
            .unwrap_or(u64::MAX),
    )?;
    let head = points[0] as u8;
    let targets: Vec<u8> = points.iter().map(|&p| p as u8).collect();
    let choices: Vec<Vec<u8>> = (0..n)
        .map(|y| {
            if members.binary_search(&y).is_ok() {
                vec![head]
            } else {
                targets.clone()
            }
        })
        .collect();
    let elements = assignments(&choices)
        .into_iter()
        .map(Transformation::from_raw)
        .collect();
    Ok(sorted_set(n, elements).with_flags(Some(true), Some(true)))
}

/// [`null_semigroup`] with exactly `α(n)` points, of size `ξ(n)`.
pub fn null_max(n: usize, points: &[usize]) -> Result<SemigroupSet<Transformation>> {
    check_degree(n)?;
    let t = alpha(n)?;
    if points.len() != t {
        return Err(Error::invalid(format!(
            "expected alpha({n}) = {t} points, got {}",
            points.len()
        )));
    }
    null_semigroup(n, points)
}

/// `N ∪ {id}`: commutative, of size `ξ(n) + 1`.
pub fn null_plus_identity(n: usize, points: &[usize]) -> Result<SemigroupSet<Transformation>> {
    let null = null_max(n, points)?;
    let mut elements = null.into_elements();
    elements.push(Transformation::identity(n));
    Ok(sorted_set(n, elements).with_flags(Some(true), Some(true)))
}

/// Partial maps with domain in `X∖B` and image in `B`; any size of `B`.
pub fn partial_null_semigroup(
    n: usize,
    b: &[usize],
) -> Result<SemigroupSet<PartialTransformation>> {
    check_degree(n)?;
    if n >= crate::MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let members = distinct_points(b, n)?;
    let k = members.len() as u64;
    check_size(
        "partial null semigroup",
        (k + 1)
            .checked_pow((n - members.len()) as u32)
            .unwrap_or(u64::MAX),
    )?;
    let undefined = n as u8;
    let mut targets: Vec<u8> = members.iter().map(|&p| p as u8).collect();
    targets.push(undefined);
    let choices: Vec<Vec<u8>> = (0..n)
        .map(|y| {
            if members.binary_search(&y).is_ok() {
                vec![undefined]
            } else {
                targets.clone()
            }
        })
        .collect();
    let elements = assignments(&choices)
        .into_iter()
        .map(PartialTransformation::from_raw)
        .collect();
    Ok(sorted_set(n, elements).with_flags(Some(true), Some(true)))
}

/// [`partial_null_semigroup`] with `|B| = α(n+1) − 1`, of size `ξ(n+1)`.
pub fn omega_pn(n: usize, b: &[usize]) -> Result<SemigroupSet<PartialTransformation>> {
    check_degree(n)?;
    let expected = alpha(n + 1)? - 1;
    if b.len() != expected {
        return Err(Error::invalid(format!(
            "expected |B| = alpha({}) - 1 = {expected}, got {}",
            n + 1,
            b.len()
        )));
    }
    partial_null_semigroup(n, b)
}

/// All partial identities `id_Y`, `Y ⊆ X`.
pub fn e_ix(n: usize) -> Result<SemigroupSet<PartialTransformation>> {
    check_degree(n)?;
    if n >= crate::MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    check_size("E(I(X))", 1u64.checked_shl(n as u32).unwrap_or(u64::MAX))?;
    let choices: Vec<Vec<u8>> = (0..n).map(|y| vec![y as u8, n as u8]).collect();
    let elements = assignments(&choices)
        .into_iter()
        .map(PartialTransformation::from_raw)
        .collect();
    Ok(sorted_set(n, elements).with_flags(Some(true), Some(true)))
}

/// `3^k`, `4·3^(k−1)` or `2·3^k` for `n = 3k, 3k+1, 3k+2`.
pub fn max_abelian_subgroup_order(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::invalid("abelian subgroup order needs n >= 2"));
    }
    let three = BigUint::from(3u32);
    let k = (n / 3) as u32;
    Ok(match n % 3 {
        0 => three.pow(k),
        1 => three.pow(k - 1) * 4u32,
        _ => three.pow(k) * 2u32,
    })
}

/// Cycle lengths used by [`abelian_witness`], in index order.
pub fn abelian_witness_cycles(n: usize) -> Result<Vec<usize>> {
    if n < 2 {
        return Err(Error::invalid("abelian witness needs n >= 2"));
    }
    let (threes, tail) = match n % 3 {
        0 => (n / 3, None),
        1 => (n / 3 - 1, Some(4)),
        _ => (n / 3, Some(2)),
    };
    let mut cycles = vec![3; threes];
    cycles.extend(tail);
    Ok(cycles)
}

/// Direct product of disjoint cycles: 3-cycles from index 0, then one
/// 4-cycle or 2-cycle on the last indices.
pub fn abelian_witness(n: usize) -> Result<SemigroupSet<Transformation>> {
    check_degree(n)?;
    let cycles = abelian_witness_cycles(n)?;
    let order = max_abelian_subgroup_order(n)?;
    check_size("abelian witness", u64::try_from(&order).unwrap_or(u64::MAX))?;
    let mut start = 0;
    let mut generators = Vec::with_capacity(cycles.len());
    for len in cycles {
        let mut img: Vec<u8> = (0..n as u8).collect();
        for i in 0..len {
            img[start + i] = (start + (i + 1) % len) as u8;
        }
        generators.push(Transformation::from_raw(img));
        start += len;
    }
    Ok(SemigroupSet::closure(&generators)?.with_flags(None, Some(true)))
}

/// `(α1, α2)`: the constant map to point 0, and the map sending the last
/// point to 1 and everything else to 0.
pub fn knit_witness(n: usize) -> Result<(Transformation, Transformation)> {
    check_degree(n)?;
    if n < 3 {
        return Err(Error::invalid("knit witness needs n >= 3"));
    }
    let a1 = Transformation::constant(n, 0)?;
    let mut img = vec![0u8; n];
    img[n - 1] = 1;
    Ok((a1, Transformation::from_raw(img)))
}
