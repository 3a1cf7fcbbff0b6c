//! Exhaustive maximum searches over whole transformation semigroups.
//!
//! Each question "largest commutative subsemigroup with property P" becomes
//! a maximum-clique problem on a commuting graph restricted to suitable
//! vertices. Every clique reported is re-checked to be a subsemigroup with
//! the property; a failed check is an error carrying the offending set.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clique::{all_max_cliques, max_clique, Graph};
use crate::commgraph::CommGraph;
use crate::constructions::{
    e_ix, gamma, null_plus_identity, null_semigroup, partial_null_semigroup,
};
use crate::error::{Error, Result};
use crate::semigroup::{
    enumerate_full_with, enumerate_partial_with, enumerate_sym_with, EnumerationCaps, GroupClass,
    SemigroupSet,
};
use crate::transform::{Element, Kind, PartialTransformation, Transformation};
use crate::xi::alpha;

/// Recognised form of a maximizer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Maps fixing `point` and sending every other point to itself or `point`.
    Gamma {
        point: usize,
    },
    /// All partial identities.
    PartialIdentities,
    Group {
        class: GroupClass,
        within_sym: bool,
    },
    /// Maps collapsing `points` onto `points[0]`, image inside `points`.
    Null {
        points: Vec<usize>,
    },
    /// Partial maps with domain avoiding `b` and image inside `b`.
    NullPartial {
        b: Vec<usize>,
    },
    Other,
}

fn one_based(points: &[usize]) -> String {
    points
        .iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Gamma { point } => write!(f, "Gamma_{}", point + 1),
            Shape::PartialIdentities => f.write_str("E(I(X))"),
            Shape::Group { class, within_sym } => {
                write!(
                    f,
                    "{}{}",
                    class.as_str(),
                    if *within_sym { " in Sym" } else { "" }
                )
            }
            Shape::Null { points } => write!(f, "N_{{{}}}", one_based(points)),
            Shape::NullPartial { b } => write!(f, "Omega_{{{}}}", one_based(b)),
            Shape::Other => f.write_str("other"),
        }
    }
}

/// A full or partial transformation type the oracle can search over.
pub trait Family: Element {
    fn universe(n: usize, caps: &EnumerationCaps) -> Result<SemigroupSet<Self>>;
    fn classify(s: &SemigroupSet<Self>) -> Shape;
}

fn classify_group<E: Element>(s: &SemigroupSet<E>) -> Option<Shape> {
    s.classify_small_abelian_group().map(|class| Shape::Group {
        class,
        within_sym: s.is_within_sym(),
    })
}

impl Family for Transformation {
    fn universe(n: usize, caps: &EnumerationCaps) -> Result<SemigroupSet<Self>> {
        enumerate_full_with(n, caps)
    }

    fn classify(s: &SemigroupSet<Self>) -> Shape {
        let n = s.degree();
        if s.is_within_sym() {
            if let Some(shape) = classify_group(s) {
                return shape;
            }
        }
        if n < usize::BITS as usize && s.len() == 1 << (n - 1) {
            let fixed = (0..n).find(|&x| s.iter().all(|a| a.get(x) == x));
            if let Some(point) = fixed {
                if gamma(n, point).is_ok_and(|g| g == *s) {
                    return Shape::Gamma { point };
                }
            }
        }
        if let Ok(Some(zero)) = s.is_null() {
            if zero.rank() == 1 {
                let head = zero.get(0);
                let mut points = vec![head];
                points.extend(s.image_union().into_iter().filter(|&x| x != head));
                if null_semigroup(n, &points).is_ok_and(|m| m == *s) {
                    return Shape::Null { points };
                }
            }
        }
        classify_group(s).unwrap_or(Shape::Other)
    }
}

impl Family for PartialTransformation {
    fn universe(n: usize, caps: &EnumerationCaps) -> Result<SemigroupSet<Self>> {
        enumerate_partial_with(n, caps)
    }

    fn classify(s: &SemigroupSet<Self>) -> Shape {
        let n = s.degree();
        if e_ix(n).is_ok_and(|e| e == *s) {
            return Shape::PartialIdentities;
        }
        if s.is_within_sym() {
            if let Some(shape) = classify_group(s) {
                return shape;
            }
        }
        if let Ok(Some(zero)) = s.is_null() {
            if zero == PartialTransformation::empty(n).unwrap() {
                let b = s.image_union();
                if partial_null_semigroup(n, &b).is_ok_and(|m| m == *s) {
                    return Shape::NullPartial { b };
                }
            }
        }
        classify_group(s).unwrap_or(Shape::Other)
    }
}

/// Which maximum a search computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Commutative,
    Idempotent,
    UniqueIdempotent,
    Null,
    AbelianSubgroup,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::Commutative => "comm-max",
            Claim::Idempotent => "idem-max",
            Claim::UniqueIdempotent => "unique-idem-max",
            Claim::Null => "null-max",
            Claim::AbelianSubgroup => "abelian-max",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Maximizer<E> {
    pub set: SemigroupSet<E>,
    pub shape: Shape,
}

#[derive(Debug, Clone)]
pub struct OracleResult<E> {
    pub claim: Claim,
    pub n: usize,
    pub kind: Kind,
    pub size: usize,
    /// Sorted by shape, then by elements.
    pub maximizers: Vec<Maximizer<E>>,
    /// Cliques re-checked to be subsemigroups with the required property.
    pub closure_checks: usize,
    /// Clique number of the graph searched (for the commutative maximum,
    /// of the commuting graph proper).
    pub clique_number: usize,
    /// Size of the center, for the commutative maximum.
    pub center_size: usize,
}

/// Exhaustive-search limits: full degree, partial degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub full: usize,
    pub partial: usize,
    pub force: bool,
}

impl OracleLimits {
    fn check<E: Element>(&self, n: usize) -> Result<EnumerationCaps> {
        let (cap, what) = match E::KIND {
            Kind::Full => (self.full, "full transformation oracle"),
            Kind::Partial => (self.partial, "partial transformation oracle"),
        };
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        if n > cap && !self.force {
            return Err(Error::CapExceeded { what, n, cap });
        }
        Ok(EnumerationCaps {
            force: self.force,
            ..EnumerationCaps::default()
        })
    }
}

/// Degrees the exhaustive searches accept without `force`.
pub fn default_limits(claim: Claim) -> OracleLimits {
    let (full, partial) = match claim {
        Claim::Idempotent => (6, 5),
        _ => (5, 4),
    };
    OracleLimits {
        full,
        partial,
        force: false,
    }
}

fn finish<E: Family>(
    claim: Claim,
    n: usize,
    size: usize,
    sets: Vec<SemigroupSet<E>>,
    closure_checks: usize,
    clique_number: usize,
    center_size: usize,
) -> OracleResult<E> {
    let mut maximizers: Vec<Maximizer<E>> = sets
        .into_par_iter()
        .map(|set| {
            let shape = E::classify(&set);
            Maximizer { set, shape }
        })
        .collect();
    maximizers.sort_by(|a, b| {
        a.shape
            .cmp(&b.shape)
            .then_with(|| a.set.elements().cmp(b.set.elements()))
    });
    OracleResult {
        claim,
        n,
        kind: E::KIND,
        size,
        maximizers,
        closure_checks,
        clique_number,
        center_size,
    }
}

fn unsound<E: Element>(what: &str, set: &[E]) -> Error {
    let listing: Vec<String> = set.iter().map(|e| e.to_string()).collect();
    Error::internal(format!("{what}: {}", listing.join(" ")))
}

/// Largest commutative subsemigroups: maximum cliques of the commuting graph
/// together with the center.
pub fn max_commutative<E: Family>(n: usize) -> Result<OracleResult<E>> {
    max_commutative_with(n, &default_limits(Claim::Commutative))
}

pub fn max_commutative_with<E: Family>(n: usize, limits: &OracleLimits) -> Result<OracleResult<E>> {
    let caps = limits.check::<E>(n)?;
    let s = E::universe(n, &caps)?;
    if s.is_commutative() {
        let size = s.len();
        return Ok(finish(Claim::Commutative, n, size, vec![s], 1, 0, size));
    }
    let g = CommGraph::build(&s)?;
    let (omega, cliques) = all_max_cliques(g.graph());
    let center = g.center().to_vec();
    let sets = cliques
        .par_iter()
        .map(|k| {
            let mut members: Vec<E> = k.iter().map(|&v| g.elements()[v].clone()).collect();
            members.extend(center.iter().cloned());
            let t = SemigroupSet::from_elements(n, members)?;
            if !t.is_closed() || !t.is_commutative() || t.len() - center.len() != omega {
                return Err(unsound(
                    "maximum clique plus center is not a commutative subsemigroup",
                    t.elements(),
                ));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let checks = sets.len();
    Ok(finish(
        Claim::Commutative,
        n,
        omega + center.len(),
        sets,
        checks,
        omega,
        center.len(),
    ))
}

/// Maximum cliques of the commuting graph on `vertices` under `adjacent`,
/// each checked by `verify`.
fn cliques_on<E: Element>(
    n: usize,
    vertices: &[E],
    adjacent: impl Fn(&E, &E) -> bool + Sync,
    verify: impl Fn(&SemigroupSet<E>) -> bool + Sync,
    what: &str,
) -> Result<(usize, Vec<SemigroupSet<E>>)> {
    if vertices.is_empty() {
        return Ok((0, Vec::new()));
    }
    let g = Graph::from_fn(vertices.len(), |i, j| adjacent(&vertices[i], &vertices[j]));
    let (size, cliques) = all_max_cliques(&g);
    let sets = cliques
        .iter()
        .map(|k| {
            let t =
                SemigroupSet::from_elements(n, k.iter().map(|&v| vertices[v].clone()).collect())?;
            if verify(&t) {
                Ok(t)
            } else {
                Err(unsound(what, t.elements()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((size, sets))
}

/// Keeps only the largest groups of candidate sets.
fn merge_best<E: Element>(
    groups: Vec<(usize, Vec<SemigroupSet<E>>)>,
) -> (usize, Vec<SemigroupSet<E>>, usize) {
    let checks = groups.iter().map(|(_, sets)| sets.len()).sum();
    let best = groups.iter().map(|(size, _)| *size).max().unwrap_or(0);
    let mut sets: Vec<SemigroupSet<E>> = groups
        .into_iter()
        .filter(|(size, _)| *size == best)
        .flat_map(|(_, sets)| sets)
        .collect();
    sets.sort_by(|a, b| a.elements().cmp(b.elements()));
    sets.dedup();
    (best, sets, checks)
}

/// Largest commutative subsemigroups consisting of idempotents.
pub fn max_commutative_idempotent<E: Family>(n: usize) -> Result<OracleResult<E>> {
    max_commutative_idempotent_with(n, &default_limits(Claim::Idempotent))
}

pub fn max_commutative_idempotent_with<E: Family>(
    n: usize,
    limits: &OracleLimits,
) -> Result<OracleResult<E>> {
    let caps = limits.check::<E>(n)?;
    let s = E::universe(n, &caps)?;
    let idempotents = s.idempotents();
    let (size, sets) = cliques_on(
        n,
        &idempotents,
        |a, b| a.commutes_with(b),
        |t| t.is_closed() && t.is_commutative() && t.iter().all(|e| e.is_idempotent()),
        "commuting idempotents do not form a subsemigroup",
    )?;
    let checks = sets.len();
    Ok(finish(Claim::Idempotent, n, size, sets, checks, size, 0))
}

/// Largest commutative subsemigroups with exactly one idempotent: for each
/// idempotent `e`, cliques among the elements whose idempotent power is `e`.
pub fn max_unique_idempotent<E: Family>(n: usize) -> Result<OracleResult<E>> {
    max_unique_idempotent_with(n, &default_limits(Claim::UniqueIdempotent))
}

pub fn max_unique_idempotent_with<E: Family>(
    n: usize,
    limits: &OracleLimits,
) -> Result<OracleResult<E>> {
    let caps = limits.check::<E>(n)?;
    let s = E::universe(n, &caps)?;
    let powers: Vec<E> = s.elements().par_iter().map(|a| a.omega_power()).collect();
    let groups = s
        .idempotents()
        .par_iter()
        .map(|e| {
            let vertices: Vec<E> = s
                .iter()
                .zip(&powers)
                .filter(|(_, p)| *p == e)
                .map(|(a, _)| a.clone())
                .collect();
            cliques_on(
                n,
                &vertices,
                |a, b| a.commutes_with(b),
                |t| t.is_closed() && t.is_commutative() && t.idempotents() == [e.clone()],
                "clique over one idempotent is not a subsemigroup with that idempotent",
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let (size, sets, checks) = merge_best(groups);
    Ok(finish(
        Claim::UniqueIdempotent,
        n,
        size,
        sets,
        checks,
        size,
        0,
    ))
}

/// Largest null subsemigroups: for each candidate zero `z`, cliques among
/// `{α : α² = z, αz = zα = z}` where adjacency means `αβ = βα = z`.
///
/// Also checks that the largest commutative nilpotent subsemigroups are no
/// larger, by a clique search among the elements with idempotent power `z`
/// that absorb `z`.
pub fn max_null<E: Family>(n: usize) -> Result<OracleResult<E>> {
    max_null_with(n, &default_limits(Claim::Null))
}

pub fn max_null_with<E: Family>(n: usize, limits: &OracleLimits) -> Result<OracleResult<E>> {
    let caps = limits.check::<E>(n)?;
    let s = E::universe(n, &caps)?;
    let powers: Vec<E> = s.elements().par_iter().map(|a| a.omega_power()).collect();
    let outcomes = s
        .idempotents()
        .par_iter()
        .map(|z| {
            let absorbs = |a: &E| a.mul(z) == *z && z.mul(a) == *z;
            let null_vertices: Vec<E> = s
                .iter()
                .filter(|a| a.mul(a) == *z && absorbs(a))
                .cloned()
                .collect();
            let null = cliques_on(
                n,
                &null_vertices,
                |a, b| a.mul(b) == *z && b.mul(a) == *z,
                |t| t.is_closed() && t.is_null().ok().flatten().as_ref() == Some(z),
                "null clique is not a null subsemigroup",
            )?;
            let nilpotent_vertices: Vec<E> = s
                .iter()
                .zip(&powers)
                .filter(|(a, p)| *p == z && absorbs(a))
                .map(|(a, _)| a.clone())
                .collect();
            let g = Graph::from_fn(nilpotent_vertices.len(), |i, j| {
                nilpotent_vertices[i].commutes_with(&nilpotent_vertices[j])
            });
            let witness = max_clique(&g).witness;
            let t = SemigroupSet::from_elements(
                n,
                witness
                    .iter()
                    .map(|&v| nilpotent_vertices[v].clone())
                    .collect(),
            )?;
            if !t.is_closed() || !t.is_nilpotent()? {
                return Err(unsound(
                    "nilpotent clique is not a nilpotent subsemigroup",
                    t.elements(),
                ));
            }
            Ok((null, t.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let nilpotent_best = outcomes.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let checks_nilpotent = outcomes.len();
    let (size, sets, checks) = merge_best(outcomes.into_iter().map(|(g, _)| g).collect());
    if nilpotent_best != size {
        return Err(Error::internal(format!(
            "largest commutative nilpotent subsemigroup has {nilpotent_best} elements, largest null {size}"
        )));
    }
    Ok(finish(
        Claim::Null,
        n,
        size,
        sets,
        checks + checks_nilpotent,
        size,
        0,
    ))
}

/// Largest abelian subgroups of `Sym_n`, via cliques of its commuting graph
/// (identity included).
pub fn max_abelian_subgroup(n: usize) -> Result<OracleResult<Transformation>> {
    if !(2..=6).contains(&n) {
        return Err(Error::CapExceeded {
            what: "abelian subgroup oracle",
            n,
            cap: 6,
        });
    }
    let sym = enumerate_sym_with(n, &EnumerationCaps::default())?;
    let g = Graph::from_fn(sym.len(), |i, j| {
        sym.elements()[i].commutes_with(&sym.elements()[j])
    });
    let clique = max_clique(&g);
    let t = SemigroupSet::from_elements(
        n,
        clique
            .witness
            .iter()
            .map(|&v| sym.elements()[v].clone())
            .collect(),
    )?;
    if !t.is_closed() || !t.is_group() || !t.is_commutative() {
        return Err(unsound(
            "commuting permutations do not form a group",
            t.elements(),
        ));
    }
    Ok(finish(
        Claim::AbelianSubgroup,
        n,
        clique.size,
        vec![t],
        1,
        clique.size,
        0,
    ))
}

/// A closed commutative semigroup of degree `n` with exactly one idempotent,
/// which is not the identity. The same seed always gives the same set.
pub fn random_commutative_unique_idem(n: usize, seed: u64) -> Result<SemigroupSet<Transformation>> {
    if n < 2 {
        return Err(Error::invalid("need n >= 2 for a non-identity idempotent"));
    }
    if n > crate::MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_map = |rng: &mut ChaCha8Rng| {
        Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
    };
    const ATTEMPTS: usize = 1000;
    for _ in 0..ATTEMPTS {
        let first = random_map(&mut rng);
        if first.is_permutation() {
            continue;
        }
        let e = first.omega_power();
        let fits = |b: &Transformation, gens: &[Transformation]| {
            b.omega_power() == e && gens.iter().all(|g| g.commutes_with(b))
        };
        let mut generators = vec![first];
        let extra = rng.gen_range(0..=3);
        if n <= 6 {
            let universe = enumerate_full_with(n, &EnumerationCaps::default())?;
            let mut pool: Vec<&Transformation> =
                universe.iter().filter(|b| fits(b, &generators)).collect();
            for _ in 0..extra {
                pool.retain(|b| fits(b, &generators));
                if pool.is_empty() {
                    break;
                }
                let pick = pool[rng.gen_range(0..pool.len())].clone();
                generators.push(pick);
            }
        } else {
            for _ in 0..extra * 500 {
                let b = random_map(&mut rng);
                if fits(&b, &generators) {
                    generators.push(b);
                    if generators.len() > extra {
                        break;
                    }
                }
            }
        }
        let s = SemigroupSet::closure(&generators)?;
        if s.is_commutative() && s.idempotents() == [e.clone()] && e != Transformation::identity(n)
        {
            return Ok(s);
        }
    }
    Err(Error::internal(format!(
        "no commutative semigroup with one non-identity idempotent after {ATTEMPTS} attempts"
    )))
}

/// `N ∪ {id}` of size `ξ(n) + 1`: a lower bound for the largest commutative
/// subsemigroup once exhaustive search is out of reach. Not a maximality
/// claim.
pub fn conjecture_lower_bound(n: usize) -> Result<(usize, SemigroupSet<Transformation>)> {
    if n < 7 {
        return Err(Error::invalid("the lower bound construction is for n >= 7"));
    }
    let points: Vec<usize> = (0..alpha(n)?).collect();
    let s = null_plus_identity(n, &points)?;
    Ok((s.len(), s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes<E: Element>(r: &OracleResult<E>) -> Vec<String> {
        r.maximizers.iter().map(|m| m.shape.to_string()).collect()
    }

    #[test]
    fn commutative_full_small() {
        let r = max_commutative::<Transformation>(3).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(shapes(&r), ["Gamma_1", "Gamma_2", "Gamma_3"]);
        let r = max_commutative::<Transformation>(2).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(shapes(&r), ["Gamma_1", "Gamma_2", "C2 in Sym"]);
        let r = max_commutative::<Transformation>(1).unwrap();
        assert_eq!(r.size, 1);
    }

    #[test]
    fn commutative_partial_small() {
        let r = max_commutative::<PartialTransformation>(3).unwrap();
        assert_eq!(r.size, 8);
        assert_eq!(shapes(&r), ["E(I(X))"]);
    }

    #[test]
    fn idempotent_examples() {
        let r = max_commutative_idempotent::<Transformation>(4).unwrap();
        assert_eq!(r.size, 8);
        assert_eq!(r.maximizers.len(), 4);
        assert_eq!(
            max_commutative_idempotent::<Transformation>(1)
                .unwrap()
                .size,
            1
        );
        let r = max_commutative_idempotent::<PartialTransformation>(3).unwrap();
        assert_eq!((r.size, shapes(&r)), (8, vec!["E(I(X))".to_string()]));
    }

    #[test]
    fn unique_idempotent_small() {
        let r = max_unique_idempotent::<Transformation>(3).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(shapes(&r), ["C3 in Sym"]);
    }

    #[test]
    fn null_small() {
        let r = max_null::<Transformation>(2).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(shapes(&r), ["C1 in Sym", "N_{1}", "N_{2}"]);
        let r = max_null::<PartialTransformation>(3).unwrap();
        assert_eq!(r.size, 4);
        assert!(r
            .maximizers
            .iter()
            .all(|m| matches!(&m.shape, Shape::NullPartial { b } if b.len() == 1)));
        assert_eq!(r.maximizers.len(), 3);
    }

    #[test]
    fn abelian_examples() {
        for (n, size) in [(2, 2), (3, 3), (4, 4), (5, 6)] {
            assert_eq!(max_abelian_subgroup(n).unwrap().size, size);
        }
        assert!(max_abelian_subgroup(7).is_err());
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            max_commutative::<Transformation>(6),
            Err(Error::CapExceeded { .. })
        ));
        assert!(max_null::<PartialTransformation>(5).is_err());
    }

    #[test]
    fn random_generator_contract() {
        for seed in 0..20 {
            let n = 2 + (seed as usize % 5);
            let s = random_commutative_unique_idem(n, seed).unwrap();
            assert!(s.is_closed() && s.is_commutative() && s.has_unique_idempotent());
            assert_ne!(s.idempotents()[0], Transformation::identity(n));
            assert_eq!(s, random_commutative_unique_idem(n, seed).unwrap());
        }
        assert!(random_commutative_unique_idem(1, 0).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(conjecture_lower_bound(7).unwrap().0, 82);
        assert_eq!(conjecture_lower_bound(8).unwrap().0, 257);
        assert_eq!(conjecture_lower_bound(7).unwrap().1.idempotents().len(), 2);
        assert!(conjecture_lower_bound(6).is_err());
    }
}
