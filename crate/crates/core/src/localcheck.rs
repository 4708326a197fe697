//! (n-)local automorphisms of `FI(P)`: a linear map `η` is n-local when every
//! n-tuple of elements has some automorphism agreeing with `η` on it.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::cartprod::PiElement;
use crate::error::{Error, Result};
use crate::fialg::{FiElement, IncidenceAlgebra, LinearMap};
use crate::ring::{Ring, RingElem};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Index into the automorphism list that agrees on the probe.
    Matched { aut: usize },
    NoMatch,
}

/// How far a verdict reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictScope {
    /// Every tuple of algebra elements was probed.
    Exhaustive,
    /// Randomly generated probes only.
    Sampled { trials: usize },
    /// A caller-supplied probe list.
    Listed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCheckReport {
    pub verdict: bool,
    pub scope: VerdictScope,
    pub outcomes: Vec<ProbeOutcome>,
}

impl LocalCheckReport {
    pub fn failing_probes(&self) -> impl Iterator<Item = usize> + '_ {
        self.outcomes.iter().enumerate().filter(|(_, o)| **o == ProbeOutcome::NoMatch).map(|(i, _)| i)
    }
}

/// Checks each probe tuple against `auts`. Exact when `auts` is all of
/// `Aut(FI(P))` and `probes` covers every tuple.
pub fn is_n_local(
    alg: &IncidenceAlgebra,
    eta: &LinearMap,
    n: usize,
    probes: &[Vec<FiElement>],
    auts: &[LinearMap],
) -> Result<LocalCheckReport> {
    alg.check_map(eta)?;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if probes.is_empty() {
        return Err(Error::Precondition("at least one probe is required".into()));
    }
    for m in auts {
        alg.check_map(m)?;
    }
    let mut outcomes = Vec::with_capacity(probes.len());
    for tuple in probes {
        if tuple.len() != n {
            return Err(Error::Mismatch("probe tuple length differs from n"));
        }
        for a in tuple {
            alg.check(a)?;
        }
        let targets: Vec<FiElement> = tuple.iter().map(|a| alg.apply(eta, a)).collect();
        let hit = auts
            .iter()
            .position(|phi| tuple.iter().zip(&targets).all(|(a, t)| alg.apply(phi, a) == *t));
        outcomes.push(hit.map_or(ProbeOutcome::NoMatch, |aut| ProbeOutcome::Matched { aut }));
    }
    let verdict = outcomes.iter().all(|o| *o != ProbeOutcome::NoMatch);
    Ok(LocalCheckReport { verdict, scope: VerdictScope::Listed, outcomes })
}

/// Every n-element multiset of algebra elements, as sorted tuples. Order and
/// repetition inside a tuple do not affect agreement.
pub fn exhaustive_probes(alg: &IncidenceAlgebra, n: usize, limit: u64) -> Result<Vec<Vec<FiElement>>> {
    let count = alg.element_count().ok_or_else(|| Error::NotEnumerable(alg.ring().to_string()))?;
    let tuples = multiset_count(count, n);
    if tuples.is_none_or(|t| t > limit) {
        return Err(Error::SizeGuard { what: "probe tuples", size: tuples.unwrap_or(u64::MAX), limit });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(alg: &IncidenceAlgebra, count: u64, n: usize, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<FiElement>>) {
        if cur.len() == n {
            out.push(cur.iter().map(|&i| alg.element_at(i)).collect());
            return;
        }
        for i in start..count {
            cur.push(i);
            rec(alg, count, n, i, cur, out);
            cur.pop();
        }
    }
    rec(alg, count, n, 0, &mut current, &mut out);
    Ok(out)
}

fn multiset_count(items: u64, n: usize) -> Option<u64> {
    // C(items + n - 1, n)
    let mut acc: u128 = 1;
    for i in 0..n as u128 {
        acc = acc * (items as u128 + i) / (i + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Default cap on exhaustive probe tuples.
pub const DEFAULT_PROBE_LIMIT: u64 = 1 << 20;

pub fn check_exhaustive(
    alg: &IncidenceAlgebra,
    eta: &LinearMap,
    n: usize,
    auts: &[LinearMap],
) -> Result<LocalCheckReport> {
    let probes = exhaustive_probes(alg, n, DEFAULT_PROBE_LIMIT)?;
    let mut r = is_n_local(alg, eta, n, &probes, auts)?;
    r.scope = VerdictScope::Exhaustive;
    Ok(r)
}

/// Probe pool biased toward idempotents: basis elements, every `e_X` (up to
/// 10 points), sums of two basis elements, and random `e_X + z`.
pub fn probe_pool<R: Rng + ?Sized>(alg: &IncidenceAlgebra, rng: &mut R, perturbations: usize) -> Vec<FiElement> {
    let d = alg.dim();
    let npts = alg.poset().len();
    let mut pool: Vec<FiElement> = (0..d).map(|i| alg.basis_at(i)).collect();
    if npts <= 10 {
        for mask in 0u32..1 << npts {
            let xs: Vec<usize> = (0..npts).filter(|&x| mask >> x & 1 == 1).collect();
            pool.push(alg.subset_idempotent(&xs));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            pool.push(alg.add(&alg.basis_at(i), &alg.basis_at(j)));
        }
    }
    for _ in 0..perturbations {
        let xs = sample::subset(npts, rng);
        pool.push(alg.add(&alg.subset_idempotent(&xs), &sample::z_element(alg, rng)));
    }
    pool
}

/// `trials` random n-tuples drawn from [`probe_pool`] and uniform elements.
pub fn sampled_probes<R: Rng + ?Sized>(alg: &IncidenceAlgebra, n: usize, trials: usize, rng: &mut R) -> Vec<Vec<FiElement>> {
    let pool = probe_pool(alg, rng, trials.min(64));
    (0..trials)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(0.75) { sample::choose(&pool, rng).clone() } else { sample::element(alg, rng) })
                .collect()
        })
        .collect()
}

pub fn check_sampled<R: Rng + ?Sized>(
    alg: &IncidenceAlgebra,
    eta: &LinearMap,
    n: usize,
    auts: &[LinearMap],
    trials: usize,
    rng: &mut R,
) -> Result<LocalCheckReport> {
    let probes = sampled_probes(alg, n, trials.max(1), rng);
    let mut r = is_n_local(alg, eta, n, &probes, auts)?;
    r.scope = VerdictScope::Sampled { trials: probes.len() };
    Ok(r)
}

/// Exhaustive sweep over every linear self-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSweep {
    pub total_maps: u64,
    /// Indices (in [`IncidenceAlgebra::map_at`] order) of the n-local maps.
    pub local: Vec<u64>,
}

/// Default cap on the number of linear maps swept.
pub const DEFAULT_SWEEP_LIMIT: u64 = 1 << 16;

/// Agreement tables: `table[k][a]` is the index of `auts[k](a)`.
struct AgreementTables {
    elements: Vec<FiElement>,
    table: Vec<Vec<u64>>,
}

impl AgreementTables {
    fn new(alg: &IncidenceAlgebra, auts: &[LinearMap], limit: u64) -> Result<Self> {
        let elements = alg.elements(limit)?;
        let table = auts
            .iter()
            .map(|phi| elements.iter().map(|a| alg.element_index(&alg.apply(phi, a))).collect())
            .collect();
        Ok(AgreementTables { elements, table })
    }

    /// Some automorphism agrees with `images` on every n-multiset.
    fn is_n_local(&self, images: &[u64], n: usize) -> bool {
        let all: Vec<usize> = (0..self.table.len()).collect();
        self.extend(images, n, 0, &all)
    }

    fn extend(&self, images: &[u64], depth: usize, start: usize, candidates: &[usize]) -> bool {
        if depth == 0 {
            return true;
        }
        for a in start..self.elements.len() {
            let keep: Vec<usize> =
                candidates.iter().copied().filter(|&k| self.table[k][a] == images[a]).collect();
            if keep.is_empty() || !self.extend(images, depth - 1, a, &keep) {
                return false;
            }
        }
        true
    }
}

pub fn sweep_local_maps(alg: &IncidenceAlgebra, n: usize, auts: &[LinearMap], limit: u64) -> Result<LocalSweep> {
    sweep_local_maps_where(alg, n, auts, limit, |_| true)
}

/// As [`sweep_local_maps`], restricted to maps accepted by `keep`.
pub fn sweep_local_maps_where(
    alg: &IncidenceAlgebra,
    n: usize,
    auts: &[LinearMap],
    limit: u64,
    keep: impl Fn(&LinearMap) -> bool,
) -> Result<LocalSweep> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let total = alg.map_count().ok_or_else(|| Error::NotEnumerable(alg.ring().to_string()))?;
    if total > limit {
        return Err(Error::SizeGuard { what: "linear maps", size: total, limit });
    }
    let tables = AgreementTables::new(alg, auts, limit)?;
    let mut local = Vec::new();
    for idx in 0..total {
        let eta = alg.map_at(idx);
        if !keep(&eta) {
            continue;
        }
        let images: Vec<u64> =
            tables.elements.iter().map(|a| alg.element_index(&alg.apply(&eta, a))).collect();
        if tables.is_n_local(&images, n) {
            local.push(idx);
        }
    }
    Ok(LocalSweep { total_maps: total, local })
}

/// All n-local linear maps, found by backtracking over basis images.
/// Every candidate for the image of a basis element is one of its
/// automorphic images, and each partial assignment is checked for
/// 1-locality on the elements it already determines. Covers every linear
/// map, so the result equals the filtered output of [`sweep_local_maps`]
/// while visiting far fewer maps.
pub fn search_local_maps(alg: &IncidenceAlgebra, n: usize, auts: &[LinearMap], limit: u64) -> Result<Vec<LinearMap>> {
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let tables = AgreementTables::new(alg, auts, limit)?;
    let q = alg.ring().order().expect("enumerable ring") as usize;
    let mut found = Vec::new();
    let mut chosen: Vec<FiElement> = Vec::with_capacity(alg.dim());
    let mut images: Vec<FiElement> = alloc::vec![alg.zero()];

    struct Ctx<'a> {
        alg: &'a IncidenceAlgebra,
        tables: &'a AgreementTables,
        q: usize,
        n: usize,
    }

    fn rec(ctx: &Ctx<'_>, chosen: &mut Vec<FiElement>, images: &mut Vec<FiElement>, found: &mut Vec<LinearMap>) {
        let alg = ctx.alg;
        let k = chosen.len();
        if k == alg.dim() {
            let idx: Vec<u64> = images.iter().map(|a| alg.element_index(a)).collect();
            if ctx.tables.is_n_local(&idx, ctx.n) {
                found.push(alg.map_from_images(chosen.clone()).expect("images lie in the algebra"));
            }
            return;
        }
        let base = images.len();
        let mut candidates: Vec<u64> = ctx.tables.table.iter().map(|t| t[base]).collect();
        candidates.sort_unstable();
        candidates.dedup();
        'cand: for c in candidates {
            let image = alg.element_at(c);
            for t in 1..ctx.q {
                let scaled = alg.scale(RingElem::from_canonical(t as i64), &image);
                for j in 0..base {
                    let img = alg.add(&images[j], &scaled);
                    let target = alg.element_index(&img);
                    let a = t * base + j;
                    if !ctx.tables.table.iter().any(|row| row[a] == target) {
                        images.truncate(base);
                        continue 'cand;
                    }
                    images.push(img);
                }
            }
            chosen.push(image);
            rec(ctx, chosen, images, found);
            chosen.pop();
            images.truncate(base);
        }
    }

    let ctx = Ctx { alg, tables: &tables, q, n };
    rec(&ctx, &mut chosen, &mut images, &mut found);
    found.sort();
    Ok(found)
}

/// Whether `target` lies in the image of `eta`, by enumerating the algebra.
pub fn image_contains(alg: &IncidenceAlgebra, eta: &LinearMap, target: &FiElement, limit: u64) -> Result<bool> {
    alg.check(target)?;
    Ok(alg.elements(limit)?.iter().any(|a| alg.apply(eta, a) == *target))
}

/// Necessary conditions for membership in `LAut`; any `false` certifies
/// that `eta` is not a local automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProperties {
    pub injective: bool,
    pub preserves_idempotents: bool,
    pub preserves_primitive_idempotents: bool,
    pub idempotents_checked: usize,
    pub exhaustive: bool,
}

impl BasicProperties {
    pub fn passes(&self) -> bool {
        self.injective && self.preserves_idempotents && self.preserves_primitive_idempotents
    }
}

/// Nonzero idempotent whose diagonal is a single `e_x`.
pub fn is_primitive_idempotent(alg: &IncidenceAlgebra, a: &FiElement) -> bool {
    if !alg.is_idempotent(a) {
        return false;
    }
    let diag = alg.quotient_to_pi(a);
    diag.coords().iter().filter(|c| !c.is_zero()).count() == 1
}

/// Idempotents are enumerated when the algebra has at most `limit`
/// elements and generated (`e_X`, conjugates, repaired perturbations)
/// otherwise.
pub fn basic_properties<R: Rng + ?Sized>(
    alg: &IncidenceAlgebra,
    eta: &LinearMap,
    limit: u64,
    samples: usize,
    rng: &mut R,
) -> Result<BasicProperties> {
    alg.check_map(eta)?;
    let injective = alg.is_injective(eta);
    let (idempotents, exhaustive) = match alg.elements(limit) {
        Ok(all) => (all.into_iter().filter(|a| alg.is_idempotent(a)).collect::<Vec<_>>(), true),
        Err(_) => {
            let npts = alg.poset().len();
            let mut v = Vec::new();
            for _ in 0..samples.max(1) {
                let xs = sample::subset(npts, rng);
                v.push(alg.subset_idempotent(&xs));
                v.push(sample::conjugated_idempotent(alg, &xs, rng));
                v.push(sample::perturbed_idempotent(alg, &xs, rng));
            }
            (v, false)
        }
    };
    let mut preserves_idempotents = true;
    let mut preserves_primitive = true;
    for a in &idempotents {
        let img = alg.apply(eta, a);
        if !alg.is_idempotent(&img) {
            preserves_idempotents = false;
        }
        if is_primitive_idempotent(alg, a) && !is_primitive_idempotent(alg, &img) {
            preserves_primitive = false;
        }
    }
    Ok(BasicProperties {
        injective,
        preserves_idempotents,
        preserves_primitive_idempotents: preserves_primitive,
        idempotents_checked: idempotents.len(),
        exhaustive,
    })
}

/// `η(e_x) η(e_y) = 0` for all `x != y`, for a map inducing the identity on
/// `FI(P)/Z`.
pub fn orthogonality_check(alg: &IncidenceAlgebra, eta: &LinearMap) -> Result<bool> {
    alg.check_map(eta)?;
    for i in 0..alg.dim() {
        let moved = alg.sub(eta.image(i), &alg.basis_at(i));
        if !alg.in_z(&moved) {
            return Err(Error::Precondition(format!(
                "map does not induce the identity on FI(P)/Z (basis element {i})"
            )));
        }
    }
    let p = alg.poset();
    let images: Vec<&FiElement> = (0..p.len()).map(|x| eta.image(p.diagonal_index(x))).collect();
    Ok((0..p.len()).all(|x| (0..p.len()).all(|y| x == y || alg.mul(images[x], images[y]).is_zero())))
}

/// `a_x != a_y` for every `x != y`.
pub fn distinct_at(a: &PiElement, y: usize) -> bool {
    let c = a.coords();
    (0..c.len()).all(|x| x == y || c[x] != c[y])
}

/// Splits `a = b + c` with both summands distinct at `y`: `b_y = 0` and
/// `b_x` the smallest element outside `{0, a_x - a_y}`.
pub fn witness_split(ring: &Ring, a: &PiElement, y: usize) -> Result<(PiElement, PiElement)> {
    if ring.order().is_some_and(|q| q < 3) {
        return Err(Error::UnsupportedRing {
            ring: ring.to_string(),
            reason: "the split needs at least three ring elements".into(),
        });
    }
    if y >= a.len() {
        return Err(Error::UnknownElement(y.to_string()));
    }
    for &c in a.coords() {
        ring.check(c)?;
    }
    let coords = a.coords();
    let b: Vec<RingElem> = (0..a.len())
        .map(|x| {
            if x == y {
                return RingElem::ZERO;
            }
            let forbidden = ring.sub(coords[x], coords[y]);
            smallest_outside(ring, &[RingElem::ZERO, forbidden])
        })
        .collect();
    let b = PiElement::new(b);
    let c = a.sub(ring, &b);
    Ok((b, c))
}

fn smallest_outside(ring: &Ring, forbidden: &[RingElem]) -> RingElem {
    match ring.order() {
        Some(q) => (0..q as i64).map(RingElem::from_canonical).find(|v| !forbidden.contains(v)).expect("|R| >= 3"),
        None => (1..).map(RingElem::from_canonical).find(|v| !forbidden.contains(v)).unwrap(),
    }
}

/// Size guards for [`gamma_nonexistence_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaLimits {
    pub max_ring: u64,
    pub max_points: usize,
}

impl Default for GammaLimits {
    fn default() -> Self {
        GammaLimits { max_ring: 3, max_points: 2 }
    }
}

/// `true` iff no linear `γ: R^P -> R` has `γ(e_x) = 0` for all `x` and
/// `γ(a) ∈ {a_x}` for all `a`.
pub fn gamma_nonexistence_search(ring: &Ring, points: usize, limits: GammaLimits) -> Result<bool> {
    let q = ring.order().ok_or_else(|| Error::NotEnumerable(ring.to_string()))?;
    if q > limits.max_ring {
        return Err(Error::SizeGuard { what: "ring", size: q, limit: limits.max_ring });
    }
    if points > limits.max_points {
        return Err(Error::SizeGuard { what: "point set", size: points as u64, limit: limits.max_points as u64 });
    }
    let elems = ring.elements()?;
    let vectors: Vec<Vec<RingElem>> = (0..q.pow(points as u32))
        .map(|mut i| {
            (0..points)
                .map(|_| {
                    let c = elems[(i % q) as usize];
                    i /= q;
                    c
                })
                .collect()
        })
        .collect();
    let eval = |g: &[RingElem], a: &[RingElem]| {
        g.iter().zip(a).fold(RingElem::ZERO, |acc, (&gx, &ax)| ring.add(acc, ring.mul(gx, ax)))
    };
    let exists = vectors.iter().any(|g| {
        let kills_points = (0..points).all(|x| {
            let mut ex = vec![RingElem::ZERO; points];
            ex[x] = RingElem::ONE;
            eval(g, &ex).is_zero()
        });
        kills_points && vectors.iter().all(|a| a.contains(&eval(g, a)))
    });
    Ok(!exists)
}
