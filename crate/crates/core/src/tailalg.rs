//! The algebra `A ⊂ R^ω` of eventually constant sequences, the shift
//! endomorphism `η` and the permutations that make it n-local.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{Ring, RingElem};

/// `a = Σ s_i e_i + a* Σ_{i ≥ n(a)} e_i`, kept canonical: the last prefix
/// entry differs from the tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailVector {
    prefix: Vec<RingElem>,
    tail: RingElem,
}

impl TailVector {
    pub fn new(mut prefix: Vec<RingElem>, tail: RingElem) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        TailVector { prefix, tail }
    }

    pub fn constant(c: RingElem) -> Self {
        TailVector { prefix: Vec::new(), tail: c }
    }

    pub fn zero() -> Self {
        Self::constant(RingElem::ZERO)
    }

    pub fn one() -> Self {
        Self::constant(RingElem::ONE)
    }

    /// The idempotent `e_i`.
    pub fn unit_vector(i: usize) -> Self {
        let mut prefix = alloc::vec![RingElem::ZERO; i + 1];
        prefix[i] = RingElem::ONE;
        TailVector { prefix, tail: RingElem::ZERO }
    }

    pub fn prefix(&self) -> &[RingElem] {
        &self.prefix
    }

    pub fn tail(&self) -> RingElem {
        self.tail
    }

    /// Number of prefix positions; coordinates from here on equal the tail.
    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn get(&self, i: usize) -> RingElem {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    pub fn check(&self, ring: &Ring) -> Result<()> {
        for &c in self.prefix.iter().chain(core::iter::once(&self.tail)) {
            ring.check(c)?;
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(RingElem, RingElem) -> RingElem) -> Self {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len).map(|i| f(self.get(i), other.get(i))).collect();
        TailVector::new(prefix, f(self.tail, other.tail))
    }

    pub fn add(&self, ring: &Ring, other: &Self) -> Self {
        self.zip_with(other, |a, b| ring.add(a, b))
    }

    pub fn sub(&self, ring: &Ring, other: &Self) -> Self {
        self.zip_with(other, |a, b| ring.sub(a, b))
    }

    pub fn mul(&self, ring: &Ring, other: &Self) -> Self {
        self.zip_with(other, |a, b| ring.mul(a, b))
    }

    pub fn scale(&self, ring: &Ring, c: RingElem) -> Self {
        TailVector::new(self.prefix.iter().map(|&s| ring.mul(c, s)).collect(), ring.mul(c, self.tail))
    }
}

impl fmt::Display for TailVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.prefix.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        if !self.prefix.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "| {}]", self.tail)
    }
}

impl FromStr for TailVector {
    type Err = Error;

    /// `[s0,s1,...,sk | t]`; values are integer codes checked later
    /// against a ring.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("malformed tail vector literal `{s}`, expected `[s0,...,sk | t]`"));
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (head, tail) = inner.split_once('|').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<i64>().map(RingElem::from_canonical).map_err(|_| bad());
        let prefix = if head.trim().is_empty() {
            Vec::new()
        } else {
            head.split(',').map(num).collect::<Result<Vec<_>>>()?
        };
        Ok(TailVector::new(prefix, num(tail)?))
    }
}

/// `η(a) = a* e_0 + Σ_i a_i e_{i+1}`.
pub fn eta(a: &TailVector) -> TailVector {
    let mut prefix = Vec::with_capacity(a.prefix.len() + 1);
    prefix.push(a.tail);
    prefix.extend_from_slice(&a.prefix);
    TailVector::new(prefix, a.tail)
}

/// Solves `η(x) = target`. Coordinate 0 forces `x* = target_0` while the
/// tail forces `x* = target*`, so a solution exists iff they agree.
pub fn preimage(target: &TailVector) -> core::result::Result<TailVector, PreimageObstruction> {
    let head = target.get(0);
    if head != target.tail {
        return Err(PreimageObstruction { position_zero: head, tail: target.tail });
    }
    let rest = target.prefix.get(1..).unwrap_or(&[]).to_vec();
    Ok(TailVector::new(rest, target.tail))
}

/// Why `η(x) = t` has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PreimageObstruction {
    pub position_zero: RingElem,
    pub tail: RingElem,
}

impl fmt::Display for PreimageObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coordinate 0 forces x* = {} but coordinates beyond the prefix force x* = {}",
            self.position_zero, self.tail
        )
    }
}

/// A map `ω -> ω` given by finitely many exceptions and `i ↦ i + offset`
/// elsewhere. Not necessarily injective or surjective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualMap {
    exceptions: BTreeMap<usize, usize>,
    offset: i64,
}

impl EventualMap {
    /// Fails if some non-exceptional `i` would map below 0.
    pub fn new(exceptions: impl IntoIterator<Item = (usize, usize)>, offset: i64) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j) in exceptions {
            if map.insert(i, j).is_some_and(|old| old != j) {
                return Err(Error::Precondition(format!("position {i} has two images")));
            }
        }
        for i in 0..offset.unsigned_abs() as usize {
            if offset < 0 && !map.contains_key(&i) {
                return Err(Error::Precondition(format!("position {i} maps below 0")));
            }
        }
        map.retain(|&i, &mut j| j as i64 != i as i64 + offset);
        Ok(EventualMap { exceptions: map, offset })
    }

    pub fn identity() -> Self {
        EventualMap { exceptions: BTreeMap::new(), offset: 0 }
    }

    pub fn shift(offset: u64) -> Self {
        EventualMap { exceptions: BTreeMap::new(), offset: offset as i64 }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.exceptions.iter().map(|(&i, &j)| (i, j))
    }

    pub fn apply(&self, i: usize) -> usize {
        match self.exceptions.get(&i) {
            Some(&j) => j,
            None => (i as i64 + self.offset) as usize,
        }
    }

    /// Beyond this bound the map is the plain shift on inputs and outputs.
    fn bound(&self) -> usize {
        let top = self.exceptions.iter().map(|(&i, &j)| i.max(j) + 1).max().unwrap_or(0);
        top + self.offset.unsigned_abs() as usize + 1
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    fn collision(&self) -> Option<(usize, usize)> {
        let mut seen = BTreeMap::new();
        for i in 0..self.bound() {
            if let Some(first) = seen.insert(self.apply(i), i) {
                return Some((first, i));
            }
        }
        None
    }

    /// First point of `ω` not in the image, if any.
    pub fn missed_point(&self) -> Option<usize> {
        let b = self.bound();
        let mut hit = alloc::vec![false; b];
        for i in 0..b {
            let j = self.apply(i);
            if j < b {
                hit[j] = true;
            }
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.missed_point().is_none()
    }

    /// `ρ̂(a) = Σ a_i e_{ρ(i)}`; positions outside the image get 0.
    pub fn transport(&self, a: &TailVector) -> Result<TailVector> {
        if let Some((i, j)) = self.collision() {
            return Err(Error::NotBijective(format!("positions {i} and {j} share the image {}", self.apply(i))));
        }
        let len = self.bound() + a.prefix_len() + self.offset.unsigned_abs() as usize;
        let mut out = alloc::vec![RingElem::ZERO; len];
        for i in 0..len {
            let j = self.apply(i);
            if j < len {
                out[j] = a.get(i);
            }
        }
        Ok(TailVector::new(out, a.tail()))
    }
}

impl fmt::Display for EventualMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.exceptions() {
            write!(f, "{i}->{j}, ")?;
        }
        if self.offset == 0 {
            f.write_str("i->i otherwise")
        } else {
            write!(f, "i->i{:+} otherwise", self.offset)
        }
    }
}

/// An [`EventualMap`] verified to be a bijection of `ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualPermutation(EventualMap);

impl EventualPermutation {
    pub fn new(map: EventualMap) -> Result<Self> {
        if let Some((i, j)) = map.collision() {
            return Err(Error::NotBijective(format!("positions {i} and {j} share the image {}", map.apply(i))));
        }
        if let Some(y) = map.missed_point() {
            return Err(Error::NotBijective(format!("{y} is not in the image")));
        }
        Ok(EventualPermutation(map))
    }

    pub fn identity() -> Self {
        EventualPermutation(EventualMap::identity())
    }

    pub fn from_exceptions(exceptions: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(EventualMap::new(exceptions, 0)?)
    }

    pub fn map(&self) -> &EventualMap {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0.apply(i)
    }

    pub fn transport(&self, a: &TailVector) -> TailVector {
        self.0.transport(a).expect("validated bijection")
    }
}

impl fmt::Display for EventualPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn apply_perm(rho: &EventualPermutation, a: &TailVector) -> TailVector {
    rho.transport(a)
}

/// `i ↦ i+1` for `i ≠ m` and `m ↦ 0`, taken literally. Its image misses
/// `m + 1`.
pub fn literal_example_map(m: usize) -> EventualMap {
    EventualMap::new([(m, 0)], 1).expect("offset is nonnegative")
}

/// The cycle `0 ↦ 1 ↦ … ↦ m ↦ 0`, identity beyond `m`.
pub fn witness_permutation(m: usize) -> EventualPermutation {
    let cycle = (0..m).map(|i| (i, i + 1)).chain(core::iter::once((m, 0)));
    EventualPermutation::from_exceptions(cycle).expect("a cycle is a bijection")
}

/// A permutation `ρ` with `ρ̂(a_j) = η(a_j)` for every tuple member:
/// the cycle on `0..=m` where `m` is the longest prefix.
pub fn verify_n_local(tuple: &[TailVector]) -> Result<EventualPermutation> {
    if tuple.is_empty() {
        return Err(Error::Precondition("tuple must be nonempty".into()));
    }
    let m = tuple.iter().map(TailVector::prefix_len).max().unwrap_or(0);
    let rho = witness_permutation(m);
    for (j, a) in tuple.iter().enumerate() {
        let (lhs, rhs) = (eta(a), rho.transport(a));
        if lhs != rhs {
            return Err(Error::Discrepancy(format!(
                "tuple member {j}: eta gives {lhs} but the permutation gives {rhs}"
            )));
        }
    }
    Ok(rho)
}

/// For finite `X` with complement `Y = {y_0 < y_1 < …}`: `ρ(x) = x + 1` on
/// `X`, `ρ(y_0) = 0` and `ρ(y_i) = y_{i-1} + 1`.
pub fn sigma_gives_rho(xs: &[usize]) -> Result<EventualPermutation> {
    let in_x = |i: usize| xs.contains(&i);
    let bound = xs.iter().max().map_or(1, |&m| m + 2);
    let mut exceptions = Vec::new();
    let mut previous_y: Option<usize> = None;
    for i in 0..bound {
        if in_x(i) {
            exceptions.push((i, i + 1));
        } else {
            exceptions.push((i, previous_y.map_or(0, |y| y + 1)));
            previous_y = Some(i);
        }
    }
    EventualPermutation::from_exceptions(exceptions)
        .map_err(|e| Error::Discrepancy(format!("construction for X = {xs:?} is not a bijection: {e}")))
}

/// Reads a sorted duplicate-free list `{i,j,...}` of positions.
pub fn parse_position_set(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Precondition(format!("malformed position set `{s}`, expected `{{i,j,...}}`"));
    let inner = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(bad)?;
    let mut out: Vec<usize> = if inner.trim().is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn format_positions(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tv(prefix: &[i64], tail: i64) -> TailVector {
        TailVector::new(prefix.iter().map(|&v| RingElem::from_canonical(v)).collect(), RingElem::from_canonical(tail))
    }

    fn random_tv<R: Rng>(ring: &Ring, rng: &mut R, max_prefix: usize) -> TailVector {
        let q = ring.order().unwrap() as i64;
        let len = rng.gen_range(0..=max_prefix);
        let prefix: Vec<i64> = (0..len).map(|_| rng.gen_range(0..q)).collect();
        tv(&prefix, rng.gen_range(0..q))
    }

    #[test]
    fn canonical_form_and_literals() {
        assert_eq!(tv(&[1, 0, 0], 0), tv(&[1], 0));
        assert_eq!(tv(&[1, 1], 1), TailVector::one());
        assert_eq!(TailVector::unit_vector(0).to_string(), "[1 | 0]");
        assert_eq!(TailVector::one().to_string(), "[| 1]");
        for s in ["[1,0,2 | 1]", "[| 0]", "[0 | 1]"] {
            assert_eq!(s.parse::<TailVector>().unwrap().to_string(), s);
        }
        assert_eq!("[ 1 , 0 |0 ]".parse::<TailVector>().unwrap(), tv(&[1], 0));
        assert!("1,0 | 0".parse::<TailVector>().is_err());
        assert!("[1,0]".parse::<TailVector>().is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&TailVector::one()), TailVector::one());
        assert_eq!(eta(&TailVector::unit_vector(0)), TailVector::unit_vector(1));
        let obstruction = preimage(&TailVector::unit_vector(0)).unwrap_err();
        assert_eq!((obstruction.position_zero, obstruction.tail), (RingElem::ONE, RingElem::ZERO));
        assert_eq!(preimage(&TailVector::unit_vector(3)), Ok(TailVector::unit_vector(2)));
    }

    #[test]
    fn eta_is_an_injective_unital_homomorphism() {
        let ring = Ring::parse("Z3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let a = random_tv(&ring, &mut rng, 6);
            let b = random_tv(&ring, &mut rng, 6);
            let c = RingElem::from_canonical(rng.gen_range(0..3));
            assert_eq!(eta(&a.add(&ring, &b)), eta(&a).add(&ring, &eta(&b)));
            assert_eq!(eta(&a.mul(&ring, &b)), eta(&a).mul(&ring, &eta(&b)));
            assert_eq!(eta(&a.scale(&ring, c)), eta(&a).scale(&ring, c));
            assert_eq!(preimage(&eta(&a)), Ok(a.clone()));
            assert_eq!(eta(&a) == eta(&b), a == b);
        }
    }

    #[test]
    fn witness_permutations() {
        let rho = witness_permutation(2);
        assert_eq!((0..5).map(|i| rho.apply(i)).collect::<Vec<_>>(), [1, 2, 0, 3, 4]);
        assert_eq!(witness_permutation(0), EventualPermutation::identity());
        for m in 0..6 {
            let literal = literal_example_map(m);
            assert!(literal.is_injective());
            assert_eq!(literal.missed_point(), Some(m + 1));
            assert!(EventualPermutation::new(literal).is_err());
        }
    }

    #[test]
    fn transport_examples() {
        let a = tv(&[2, 0, 1], 1);
        assert_eq!(apply_perm(&EventualPermutation::identity(), &a), a);
        let shift = EventualMap::shift(1);
        assert!(!shift.is_bijective());
        assert_eq!(shift.transport(&TailVector::unit_vector(0)), Ok(TailVector::unit_vector(1)));
        for m in 0..5 {
            assert_eq!(apply_perm(&witness_permutation(m), &TailVector::one()), TailVector::one());
        }
        let folding = EventualMap::new([(0, 0)], 0).unwrap();
        assert!(folding.is_bijective());
        let collide = EventualMap::new([(0, 1)], 0).unwrap();
        assert!(!collide.is_injective() && collide.transport(&a).is_err());
        assert!(EventualMap::new([], -1).is_err());
        let back = EventualMap::new([(0, 5)], -1).unwrap();
        assert!(!back.is_injective());
    }

    #[test]
    fn validation_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..2000 {
            let offset = rng.gen_range(-2..=2i64);
            let k = rng.gen_range(0..5);
            let mut ex: Vec<(usize, usize)> = (0..k).map(|_| (rng.gen_range(0..6), rng.gen_range(0..8))).collect();
            for i in 0..offset.unsigned_abs() as usize {
                if offset < 0 {
                    ex.push((i, rng.gen_range(0..8)));
                }
            }
            ex.sort();
            ex.dedup_by_key(|e| e.0);
            let Ok(map) = EventualMap::new(ex.clone(), offset) else { continue };
            // Window large enough for every exception and its shift partners.
            let w = 40usize;
            let f = |i: usize| ex.iter().find(|e| e.0 == i).map_or((i as i64 + offset) as usize, |e| e.1);
            let images: Vec<usize> = (0..w).map(f).collect();
            let mut sorted = images.clone();
            sorted.sort();
            sorted.dedup();
            let injective = sorted.len() == w;
            let covers_low = (0..w - 5).all(|y| images.contains(&y));
            assert_eq!(map.is_injective(), injective, "{ex:?} {offset}");
            assert_eq!(map.is_bijective(), injective && covers_low, "{ex:?} {offset}");
            if map.is_bijective() {
                assert_eq!(offset, 0);
            }
        }
    }

    #[test]
    fn verify_n_local_examples() {
        let rho = verify_n_local(&[TailVector::one()]).unwrap();
        assert_eq!(rho.transport(&TailVector::one()), TailVector::one());
        let rho = verify_n_local(&[TailVector::unit_vector(0)]).unwrap();
        assert_eq!(rho.apply(0), 1);
        assert!(verify_n_local(&[]).is_err());
    }

    #[test]
    fn verify_n_local_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["Z2", "Z3"] {
            let ring = Ring::parse(spec).unwrap();
            for _ in 0..1000 {
                let n = rng.gen_range(1..=8);
                let tuple: Vec<TailVector> = (0..n).map(|_| random_tv(&ring, &mut rng, 6)).collect();
                let rho = verify_n_local(&tuple).unwrap();
                for a in &tuple {
                    assert_eq!(rho.transport(a), eta(a));
                }
            }
        }
    }

    #[test]
    fn sigma_gives_rho_examples() {
        assert_eq!(sigma_gives_rho(&[]).unwrap(), EventualPermutation::identity());
        let rho = sigma_gives_rho(&[0]).unwrap();
        assert_eq!((0..5).map(|i| rho.apply(i)).collect::<Vec<_>>(), [1, 0, 2, 3, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..300 {
            let xs: Vec<usize> = (0..10).filter(|_| rng.gen_bool(0.4)).collect();
            let rho = sigma_gives_rho(&xs).unwrap();
            for &x in &xs {
                assert_eq!(rho.apply(x), x + 1);
            }
            let window = 20;
            let mut ys: Vec<usize> = (0..window).filter(|i| !xs.contains(i)).map(|y| rho.apply(y)).collect();
            ys.sort();
            let mut expected: Vec<usize> =
                core::iter::once(0).chain((0..window).filter(|i| !xs.contains(i)).map(|y| y + 1)).collect();
            expected.sort();
            expected.pop();
            assert_eq!(ys, expected);
        }
        assert_eq!(parse_position_set("{3, 1,1}").unwrap(), [1, 3]);
        assert_eq!(format_positions(&[1, 3]), "{1,3}");
    }
}
