//! The cartesian product `Π = R^P` of a finite set of copies of the ring.
//!
//! Linear self-maps of `Π` are [`PiMap`]s (stored by the images of the unit
//! vectors `e_x`). Over `Z/2`, `Π` is the power set of `P` under symmetric
//! difference and intersection; arbitrary (not necessarily additive) maps of
//! that power set are [`SetMap`]s.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fialg::{IncidenceAlgebra, LinearMap};
use crate::linalg;
use crate::poset::OrderMap;
use crate::ring::{Ring, RingElem, RingSpec};

/// Default size limit for permutation sweeps over `P`.
pub const DEFAULT_PERMUTATION_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiElement {
    coords: Vec<RingElem>,
}

impl PiElement {
    pub fn new(coords: Vec<RingElem>) -> Self {
        PiElement { coords }
    }

    pub fn zero(n: usize) -> Self {
        PiElement { coords: vec![RingElem::ZERO; n] }
    }

    /// `e_X`.
    pub fn indicator(n: usize, xs: &[usize]) -> Self {
        let mut a = Self::zero(n);
        for &x in xs {
            a.coords[x] = RingElem::ONE;
        }
        a
    }

    pub fn unit_vector(n: usize, x: usize) -> Self {
        Self::indicator(n, &[x])
    }

    pub fn coords(&self) -> &[RingElem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, ring: &Ring, other: &PiElement) -> PiElement {
        PiElement { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| ring.add(a, b)).collect() }
    }

    pub fn sub(&self, ring: &Ring, other: &PiElement) -> PiElement {
        PiElement { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| ring.sub(a, b)).collect() }
    }

    pub fn mul(&self, ring: &Ring, other: &PiElement) -> PiElement {
        PiElement { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| ring.mul(a, b)).collect() }
    }

    pub fn scale(&self, ring: &Ring, c: RingElem) -> PiElement {
        PiElement { coords: self.coords.iter().map(|&a| ring.mul(c, a)).collect() }
    }

    /// Coordinate transport `sum a_x e_rho(x)` along an injective `rho`.
    pub fn transport(&self, rho: &OrderMap) -> PiElement {
        let mut out = Self::zero(self.len());
        for (x, &v) in self.coords.iter().enumerate() {
            out.coords[rho.apply(x)] = v;
        }
        out
    }
}

/// A linear self-map of `Π`, given by `images[x] = η(e_x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiMap {
    images: Vec<PiElement>,
}

impl PiMap {
    pub fn from_images(images: Vec<PiElement>) -> Result<Self> {
        let n = images.len();
        if images.iter().any(|a| a.len() != n) {
            return Err(Error::Mismatch("every image must have one coordinate per point"));
        }
        Ok(PiMap { images })
    }

    pub fn identity(n: usize) -> Self {
        PiMap { images: (0..n).map(|x| PiElement::unit_vector(n, x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, x: usize) -> &PiElement {
        &self.images[x]
    }

    pub fn apply(&self, ring: &Ring, a: &PiElement) -> PiElement {
        let mut out = PiElement::zero(self.len());
        for (x, &c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(ring, &self.images[x].scale(ring, c));
            }
        }
        out
    }

    pub fn compose(&self, ring: &Ring, inner: &PiMap) -> PiMap {
        PiMap { images: inner.images.iter().map(|a| self.apply(ring, a)).collect() }
    }

    pub fn determinant(&self, ring: &Ring) -> RingElem {
        let n = self.len();
        let rows: Vec<Vec<RingElem>> = (0..n).map(|r| (0..n).map(|c| self.images[c].coords[r]).collect()).collect();
        linalg::determinant(ring, &rows)
    }

    pub fn is_injective(&self, ring: &Ring) -> bool {
        let det = self.determinant(ring);
        if ring.is_finite() {
            ring.is_unit(det)
        } else {
            !det.is_zero()
        }
    }

    /// Multiplicativity, checked on the unit vectors (exact for linear maps).
    pub fn is_multiplicative(&self, ring: &Ring) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = if x == y { self.images[x].clone() } else { PiElement::zero(n) };
                lhs == self.images[x].mul(ring, &self.images[y])
            })
        })
    }

    /// The same map viewed on `FI` of an antichain, where `FI(P) = Π`.
    pub fn to_linear_map(&self, alg: &IncidenceAlgebra) -> Result<LinearMap> {
        check_antichain(alg, self.len())?;
        alg.map_from_images(self.images.iter().map(|a| alg.lift_pi(a)).collect())
    }

    pub fn from_linear_map(alg: &IncidenceAlgebra, m: &LinearMap) -> Result<Self> {
        check_antichain(alg, alg.poset().len())?;
        alg.check_map(m)?;
        Ok(PiMap { images: m.images().iter().map(|a| alg.quotient_to_pi(a)).collect() })
    }
}

fn check_antichain(alg: &IncidenceAlgebra, n: usize) -> Result<()> {
    let p = alg.poset();
    if p.len() != n || p.pairs().len() != p.len() {
        return Err(Error::Mismatch("Π maps correspond to FI of an antichain of the same size"));
    }
    Ok(())
}

/// `ρ̂` for a bijection `ρ` of `P`.
pub fn aut_from_permutation(rho: &OrderMap) -> Result<PiMap> {
    if !rho.is_bijective() {
        return Err(Error::NotBijective(format!("{:?}", rho.as_slice())));
    }
    let n = rho.len();
    Ok(PiMap { images: (0..n).map(|x| PiElement::unit_vector(n, rho.apply(x))).collect() })
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize, limit: usize) -> Result<Vec<OrderMap>> {
    if n > limit {
        return Err(Error::SizeGuard { what: "point set", size: n as u64, limit: limit as u64 });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<OrderMap>) {
        if current.len() == n {
            out.push(OrderMap(current.clone()));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    Ok(out)
}

/// Every automorphism of `Π`: exactly the `n!` maps `ρ̂`.
pub fn all_pi_automorphisms(n: usize) -> Result<Vec<PiMap>> {
    permutations(n, DEFAULT_PERMUTATION_LIMIT)?.iter().map(aut_from_permutation).collect()
}

/// Pairwise disjoint subsets `A_x ⊆ P`, one for each point `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DisjointFamily {
    sets: Vec<Vec<usize>>,
}

impl DisjointFamily {
    /// Sets are sorted and deduplicated.
    pub fn new(sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = sets.len();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        let mut clean = Vec::with_capacity(n);
        for (x, mut set) in sets.into_iter().enumerate() {
            set.sort_unstable();
            set.dedup();
            for &z in &set {
                if z >= n {
                    return Err(Error::UnknownElement(z.to_string()));
                }
                if let Some(first) = owner[z] {
                    return Err(Error::OverlappingFamily {
                        element: z.to_string(),
                        first: first.to_string(),
                        second: x.to_string(),
                    });
                }
                owner[z] = Some(x);
            }
            clean.push(set);
        }
        Ok(DisjointFamily { sets: clean })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, x: usize) -> &[usize] {
        &self.sets[x]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn covers_all(&self) -> bool {
        self.sets.iter().map(Vec::len).sum::<usize>() == self.len()
    }
}

/// `η(a) = sum_x a_x e_{A_x}`.
pub fn induced_endo(fam: &DisjointFamily) -> PiMap {
    let n = fam.len();
    PiMap { images: fam.sets.iter().map(|s| PiElement::indicator(n, s)).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRecovery {
    pub family: DisjointFamily,
    /// The sets `A_x` cover `P`.
    pub covers_all: bool,
    /// `η` is the endomorphism induced by `family`.
    pub induced: bool,
}

/// Reads `A_x` from `η(e_x) = e_{A_x}`. When the sets cover `P` the map is
/// certified induced directly; otherwise `η = η_A ⊕ η_B` with `A` the union
/// of the sets, and `η` is induced iff the `B` part vanishes.
pub fn recover_family(ring: &Ring, eta: &PiMap) -> Result<FamilyRecovery> {
    let n = eta.len();
    if !eta.is_multiplicative(ring) {
        return Err(Error::NotEndomorphism("η(e_x) η(e_y) differs from η(e_x e_y) for some unit vectors".into()));
    }
    let mut sets = Vec::with_capacity(n);
    for x in 0..n {
        let img = eta.image(x);
        let mut set = Vec::new();
        for (z, &c) in img.coords().iter().enumerate() {
            if c == RingElem::ONE {
                set.push(z);
            } else if !c.is_zero() {
                return Err(Error::NotEndomorphism(format!(
                    "η(e_{x}) has coordinate {c} at {z}; expected an indicator e_A"
                )));
            }
        }
        sets.push(set);
    }
    let family = DisjointFamily::new(sets)?;
    if family.covers_all() {
        return Ok(FamilyRecovery { family, covers_all: true, induced: true });
    }
    let mut in_a = vec![false; n];
    for s in family.sets() {
        for &z in s {
            in_a[z] = true;
        }
    }
    let b_part_vanishes = (0..n).all(|x| (0..n).all(|z| in_a[z] || eta.image(x).coords()[z].is_zero()));
    let reference = induced_endo(&family);
    let induced = b_part_vanishes && reference == *eta;
    Ok(FamilyRecovery { family, covers_all: false, induced })
}

/// An arbitrary self-map of the power set of `0..n` (`n <= 5`), subsets
/// encoded as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetMap {
    n: usize,
    images: Vec<u32>,
}

pub const MAX_SET_MAP_POINTS: usize = 5;

impl SetMap {
    pub fn new(n: usize, images: Vec<u32>) -> Result<Self> {
        if n > MAX_SET_MAP_POINTS {
            return Err(Error::SizeGuard { what: "set-map point set", size: n as u64, limit: MAX_SET_MAP_POINTS as u64 });
        }
        if images.len() != 1 << n {
            return Err(Error::Mismatch("a set map needs one image per subset"));
        }
        if images.iter().any(|&m| m >> n != 0) {
            return Err(Error::Mismatch("image is not a subset of P"));
        }
        Ok(SetMap { n, images })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    /// Number of set maps on `n` points, `(2^n)^(2^n)`, if it fits in `u64`.
    pub fn count(n: usize) -> Option<u64> {
        (1u64 << n).checked_pow(1 << n)
    }

    /// The `index`-th set map: the image of subset `X` is base-`2^n` digit `X`.
    pub fn at(n: usize, mut index: u64) -> Self {
        let base = 1u64 << n;
        let images = (0..1usize << n)
            .map(|_| {
                let d = index % base;
                index /= base;
                d as u32
            })
            .collect();
        SetMap { n, images }
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }
}

fn require_z2(ring: &Ring) -> Result<()> {
    match ring.spec() {
        RingSpec::IntegersMod(2) | RingSpec::GaloisField { p: 2, k: 1 } => Ok(()),
        _ => Err(Error::UnsupportedRing {
            ring: ring.to_string(),
            reason: "the power-set model needs R = Z2".into(),
        }),
    }
}

/// Local-automorphism test by cardinalities alone:
/// `|η(X)| = |X|` and `|P \ η(X)| = |P \ X|` for every `X`.
pub fn boolean_local_check(ring: &Ring, eta: &SetMap) -> Result<bool> {
    require_z2(ring)?;
    let n = eta.n as u32;
    Ok((0..1u32 << n).all(|x| {
        let y = eta.apply(x);
        y.count_ones() == x.count_ones() && n - y.count_ones() == n - x.count_ones()
    }))
}

/// The definition itself: for every `X` some permutation `ρ` has `ρ(X) = η(X)`.
/// Permutations are tried one by one; [`PermutationMatcher`] memoizes the
/// same search per `(X, Y)`.
pub fn boolean_local_by_definition(ring: &Ring, eta: &SetMap) -> Result<bool> {
    require_z2(ring)?;
    let perms = permutations(eta.n, MAX_SET_MAP_POINTS)?;
    Ok((0..1u32 << eta.n).all(|x| perms.iter().any(|rho| image_of_subset(rho, x) == eta.apply(x))))
}

fn image_of_subset(rho: &OrderMap, x: u32) -> u32 {
    (0..rho.len()).filter(|&i| x >> i & 1 == 1).fold(0, |acc, i| acc | 1 << rho.apply(i))
}

/// Brute-force table: `matches[X][Y]` iff some permutation maps `X` onto `Y`.
#[derive(Debug, Clone)]
pub struct PermutationMatcher {
    n: usize,
    matches: Vec<bool>,
}

impl PermutationMatcher {
    pub fn new(n: usize) -> Result<Self> {
        let perms = permutations(n, MAX_SET_MAP_POINTS)?;
        let size = 1usize << n;
        let mut matches = vec![false; size * size];
        for x in 0..size as u32 {
            for rho in &perms {
                matches[x as usize * size + image_of_subset(rho, x) as usize] = true;
            }
        }
        Ok(PermutationMatcher { n, matches })
    }

    pub fn is_local(&self, eta: &SetMap) -> bool {
        debug_assert_eq!(eta.n, self.n);
        let size = 1usize << self.n;
        eta.images.iter().enumerate().all(|(x, &y)| self.matches[x * size + y as usize])
    }
}
