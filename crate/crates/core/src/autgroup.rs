//! Inner automorphisms, Schur multiplications and order-automorphism lifts
//! of `FI(P)`, the enumeration of `Aut(FI(P))` for small instances, and the
//! decomposition `φ = ψ_f ∘ M_σ ∘ ρ̂` of a given automorphism.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fialg::{FiElement, IncidenceAlgebra, LinearMap};
use crate::poset::OrderMap;
use crate::ring::RingElem;

/// Unit values `σ_xy` on comparable pairs with `σ_xx = 1` and
/// `σ_xz = σ_xy σ_yz`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchurCoeffs {
    values: Vec<RingElem>,
}

impl SchurCoeffs {
    pub fn ones(alg: &IncidenceAlgebra) -> Self {
        SchurCoeffs { values: alloc::vec![RingElem::ONE; alg.dim()] }
    }

    /// Validates a full assignment given in pair order.
    pub fn new(alg: &IncidenceAlgebra, values: Vec<RingElem>) -> Result<Self> {
        if values.len() != alg.dim() {
            return Err(Error::Mismatch("one Schur coefficient per comparable pair"));
        }
        for &v in &values {
            alg.ring().check(v)?;
        }
        let s = SchurCoeffs { values };
        s.validate(alg)?;
        Ok(s)
    }

    /// Extends free unit values on the covering pairs (in [`Poset::covers`]
    /// order) multiplicatively along chains, rejecting path-dependent data.
    ///
    /// [`Poset::covers`]: crate::poset::Poset::covers
    pub fn from_cover_values(alg: &IncidenceAlgebra, cover_values: &[RingElem]) -> Result<Self> {
        let p = alg.poset();
        let ring = alg.ring();
        if cover_values.len() != p.covers().len() {
            return Err(Error::Mismatch("one value per covering pair"));
        }
        let mut values: Vec<Option<RingElem>> = alloc::vec![None; alg.dim()];
        for x in 0..p.len() {
            values[p.diagonal_index(x)] = Some(ring.one());
        }
        for (&(x, y), &v) in p.covers().iter().zip(cover_values) {
            ring.check(v)?;
            values[p.pair_index(x, y).unwrap()] = Some(v);
        }
        // longer intervals after shorter ones; split at a cover x ⋖ z
        let mut order: Vec<usize> = (0..alg.dim()).collect();
        order.sort_by_key(|&i| {
            let (x, y) = p.pairs()[i];
            p.interval(x, y).map(|v| v.len()).unwrap_or(0)
        });
        for i in order {
            if values[i].is_some() {
                continue;
            }
            let (x, y) = p.pairs()[i];
            let &(_, z) = p
                .covers()
                .iter()
                .find(|&&(a, b)| a == x && p.leq(b, y))
                .expect("a non-cover pair has a cover below it");
            let left = values[p.pair_index(x, z).unwrap()].expect("cover assigned");
            let right = values[p.pair_index(z, y).unwrap()].expect("shorter interval assigned");
            values[i] = Some(ring.mul(left, right));
        }
        let s = SchurCoeffs { values: values.into_iter().map(|v| v.unwrap()).collect() };
        s.validate(alg)?;
        Ok(s)
    }

    fn validate(&self, alg: &IncidenceAlgebra) -> Result<()> {
        let p = alg.poset();
        let ring = alg.ring();
        let label = |x: usize| p.label(x);
        for x in 0..p.len() {
            if self.values[p.diagonal_index(x)] != ring.one() {
                return Err(Error::InvalidSchur(format!("σ at ({0}, {0}) must be 1", label(x))));
            }
        }
        for (i, &(x, y)) in p.pairs().iter().enumerate() {
            if !ring.is_unit(self.values[i]) {
                return Err(Error::InvalidSchur(format!(
                    "σ at ({}, {}) = {} is not a unit",
                    label(x),
                    label(y),
                    self.values[i]
                )));
            }
        }
        for &(x, y) in p.pairs() {
            for z in 0..p.len() {
                if !p.leq(y, z) {
                    continue;
                }
                let lhs = self.value(alg, x, z);
                let rhs = ring.mul(self.value(alg, x, y), self.value(alg, y, z));
                if lhs != rhs {
                    return Err(Error::InvalidSchur(format!(
                        "σ({0},{2}) = {3} but σ({0},{1}) σ({1},{2}) = {4}",
                        label(x),
                        label(y),
                        label(z),
                        lhs,
                        rhs
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, alg: &IncidenceAlgebra, x: usize, y: usize) -> RingElem {
        self.values[alg.poset().pair_index(x, y).expect("comparable pair")]
    }

    pub fn values(&self) -> &[RingElem] {
        &self.values
    }

    /// Values on the covering pairs, which determine the whole system.
    pub fn cover_values(&self, alg: &IncidenceAlgebra) -> Vec<RingElem> {
        alg.poset().covers().iter().map(|&(x, y)| self.value(alg, x, y)).collect()
    }

    pub fn inverse(&self, alg: &IncidenceAlgebra) -> Self {
        SchurCoeffs {
            values: self.values.iter().map(|&v| alg.ring().inverse_unit(v).expect("units")).collect(),
        }
    }

    /// `σ'` with `σ'_{ρ(x)ρ(y)} = σ_xy`, so that `ρ̂ M_σ ρ̂⁻¹ = M_σ'`.
    pub fn transport(&self, alg: &IncidenceAlgebra, rho: &OrderMap) -> Self {
        let p = alg.poset();
        let mut values = self.values.clone();
        for (i, &(x, y)) in p.pairs().iter().enumerate() {
            values[p.pair_index(rho.apply(x), rho.apply(y)).expect("order automorphism")] = self.values[i];
        }
        SchurCoeffs { values }
    }
}

/// `(ρ, σ, f)` standing for `ψ_f ∘ M_σ ∘ ρ̂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutDecomposition {
    pub rho: OrderMap,
    pub sigma: SchurCoeffs,
    pub f: FiElement,
}

impl AutDecomposition {
    pub fn identity(alg: &IncidenceAlgebra) -> Self {
        AutDecomposition {
            rho: OrderMap::identity(alg.poset().len()),
            sigma: SchurCoeffs::ones(alg),
            f: alg.one(),
        }
    }

    /// The composite `ψ_f ∘ M_σ ∘ ρ̂`.
    pub fn to_map(&self, alg: &IncidenceAlgebra) -> Result<LinearMap> {
        let lift = order_lift(alg, &self.rho)?;
        let m = schur(alg, &self.sigma);
        let inn = inner(alg, &self.f)?;
        Ok(alg.compose(&inn, &alg.compose(&m, &lift)))
    }
}

/// `ψ_f : a ↦ f⁻¹ a f`.
pub fn inner(alg: &IncidenceAlgebra, f: &FiElement) -> Result<LinearMap> {
    let f_inv = alg.inverse(f)?;
    Ok(alg.map_from_fn(|b| alg.mul(&alg.mul(&f_inv, b), f)))
}

/// `M_σ : e_xy ↦ σ_xy e_xy`.
pub fn schur(alg: &IncidenceAlgebra, sigma: &SchurCoeffs) -> LinearMap {
    let images = (0..alg.dim()).map(|i| alg.scale(sigma.values[i], &alg.basis_at(i))).collect();
    alg.map_from_images(images).expect("dimensions match")
}

/// `ρ̂ : e_xy ↦ e_{ρ(x)ρ(y)}`.
pub fn order_lift(alg: &IncidenceAlgebra, rho: &OrderMap) -> Result<LinearMap> {
    let p = alg.poset();
    rho.check_order_automorphism(p)?;
    let images = p
        .pairs()
        .iter()
        .map(|&(x, y)| alg.basis_at(p.pair_index(rho.apply(x), rho.apply(y)).unwrap()))
        .collect();
    alg.map_from_images(images)
}

/// Size guards for [`enumerate_automorphisms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_pairs: usize,
    pub max_ring: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_pairs: 6, max_ring: 5 }
    }
}

/// Every Schur system, one per path-independent unit assignment on the covers.
pub fn all_schur(alg: &IncidenceAlgebra) -> Result<Vec<SchurCoeffs>> {
    let units = alg.ring().units()?;
    let covers = alg.poset().covers().len();
    let mut out = Vec::new();
    let total = (units.len() as u64).pow(covers as u32);
    for mut idx in 0..total {
        let vals: Vec<RingElem> = (0..covers)
            .map(|_| {
                let u = units[(idx % units.len() as u64) as usize];
                idx /= units.len() as u64;
                u
            })
            .collect();
        if let Ok(s) = SchurCoeffs::from_cover_values(alg, &vals) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Every unit of `FI(P)`: unit diagonal, arbitrary off-diagonal part.
pub fn all_units(alg: &IncidenceAlgebra) -> Result<Vec<FiElement>> {
    let ring = alg.ring();
    let units = ring.units()?;
    let elems = ring.elements()?;
    let p = alg.poset();
    let radices: Vec<&[RingElem]> =
        p.pairs().iter().map(|&(x, y)| if x == y { units.as_slice() } else { elems.as_slice() }).collect();
    let total: u64 = radices.iter().map(|r| r.len() as u64).product();
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let coeffs = radices
            .iter()
            .map(|r| {
                let c = r[(idx % r.len() as u64) as usize];
                idx /= r.len() as u64;
                c
            })
            .collect();
        out.push(alg.from_coeffs(coeffs)?);
    }
    Ok(out)
}

/// `Aut(FI(P))` with one generating triple per map, sorted by the map's
/// coefficient table.
pub fn enumerate_automorphisms_with_witnesses(
    alg: &IncidenceAlgebra,
    limits: EnumerationLimits,
) -> Result<Vec<(LinearMap, AutDecomposition)>> {
    let q = alg.ring().order().ok_or_else(|| Error::NotEnumerable(alg.ring().to_string()))?;
    if alg.dim() > limits.max_pairs {
        return Err(Error::SizeGuard { what: "comparable pairs", size: alg.dim() as u64, limit: limits.max_pairs as u64 });
    }
    if q > limits.max_ring {
        return Err(Error::SizeGuard { what: "ring", size: q, limit: limits.max_ring });
    }
    let rhos = alg.poset().order_automorphisms()?;
    let sigmas = all_schur(alg)?;
    // distinct inner automorphisms, keeping the first f that produced each
    let mut inners: BTreeMap<LinearMap, FiElement> = BTreeMap::new();
    for f in all_units(alg)? {
        let m = inner(alg, &f)?;
        inners.entry(m).or_insert(f);
    }
    let mut out: BTreeMap<LinearMap, AutDecomposition> = BTreeMap::new();
    for rho in &rhos {
        let lift = order_lift(alg, rho)?;
        for sigma in &sigmas {
            let ms = alg.compose(&schur(alg, sigma), &lift);
            for (inn, f) in &inners {
                let phi = alg.compose(inn, &ms);
                out.entry(phi).or_insert_with(|| AutDecomposition {
                    rho: rho.clone(),
                    sigma: sigma.clone(),
                    f: f.clone(),
                });
            }
        }
    }
    Ok(out.into_iter().collect())
}

pub fn enumerate_automorphisms(alg: &IncidenceAlgebra, limits: EnumerationLimits) -> Result<Vec<LinearMap>> {
    Ok(enumerate_automorphisms_with_witnesses(alg, limits)?.into_iter().map(|(m, _)| m).collect())
}

fn step_err(step: u8, detail: String) -> Error {
    Error::Decomposition { step, detail }
}

fn pair_label(alg: &IncidenceAlgebra, i: usize) -> String {
    let (x, y) = alg.poset().pairs()[i];
    format!("e({},{})", alg.poset().label(x), alg.poset().label(y))
}

/// Splits an automorphism into `(ρ, σ, f)` with
/// `inner(f) ∘ schur(σ) ∘ order_lift(ρ) = phi`.
///
/// Step 0 validates the input (multiplicative, unital, bijective). Step 1
/// reads `ρ` from `phi(e_x) mod Z` and sets `η = phi ∘ ρ̂⁻¹`. Step 2 forms
/// `β = Σ e_x η(e_x)` and replaces `η` by `ψ_β⁻¹ ∘ η`, which fixes every
/// `e_x`. Step 3 reads `η(e_xy) = σ_xy e_xy` and strips `M_σ`. Step 4 checks
/// that what is left is the identity. Only `ρ` is canonical; `σ` and `β` are
/// whatever these steps produce.
pub fn decompose(alg: &IncidenceAlgebra, phi: &LinearMap) -> Result<AutDecomposition> {
    alg.check_map(phi)?;
    let p = alg.poset();
    let ring = alg.ring();
    let n = p.len();

    if let Some((i, j)) = alg.multiplicativity_failure(phi) {
        return Err(step_err(
            0,
            format!("not multiplicative on {} · {}", pair_label(alg, i), pair_label(alg, j)),
        ));
    }
    if !alg.is_unital(phi) {
        return Err(step_err(0, "does not map e to e".into()));
    }
    if !alg.is_bijective(phi) {
        return Err(step_err(0, format!("not bijective: determinant {} is not a unit", alg.determinant(phi))));
    }

    // Step 1
    let mut rho = Vec::with_capacity(n);
    for x in 0..n {
        let diag = alg.quotient_to_pi(phi.image(p.diagonal_index(x)));
        let ones: Vec<usize> = (0..n).filter(|&y| diag.coords()[y] == ring.one()).collect();
        let clean = diag.coords().iter().all(|c| c.is_zero() || *c == ring.one());
        if ones.len() != 1 || !clean {
            return Err(step_err(
                1,
                format!("image of e({0},{0}) is not congruent to a single e_y modulo Z", p.label(x)),
            ));
        }
        rho.push(ones[0]);
    }
    let rho = OrderMap(rho);
    if !rho.is_bijective() {
        return Err(step_err(1, format!("induced point map {:?} is not a permutation", rho.as_slice())));
    }
    for x in 0..n {
        if p.heights()[rho.apply(x)] != p.heights()[x] {
            return Err(step_err(
                1,
                format!("ρ moves `{}` (height {}) to height {}", p.label(x), p.heights()[x], p.heights()[rho.apply(x)]),
            ));
        }
    }
    rho.check_order_automorphism(p).map_err(|e| step_err(1, format!("{e}")))?;
    let rho_inv_lift = order_lift(alg, &rho.inverse()?)?;
    let eta = alg.compose(phi, &rho_inv_lift);

    // Step 2
    let mut beta = alg.zero();
    for x in 0..n {
        let ex = alg.point(x);
        beta = alg.add(&beta, &alg.mul(&ex, eta.image(p.diagonal_index(x))));
    }
    if !alg.is_unit(&beta) {
        return Err(step_err(2, "β = Σ e_x η(e_x) is not a unit".into()));
    }
    let beta_inv = alg.inverse(&beta)?;
    let eta = alg.compose(&inner(alg, &beta_inv)?, &eta);
    for x in 0..n {
        if *eta.image(p.diagonal_index(x)) != alg.point(x) {
            return Err(step_err(2, format!("e({0},{0}) is not fixed after removing ψ_β", p.label(x))));
        }
    }

    // Step 3
    let mut values = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        let img = eta.image(i);
        let c = img.coeffs()[i];
        if *img != alg.scale(c, &alg.basis_at(i)) {
            return Err(step_err(3, format!("image of {} is not a multiple of it", pair_label(alg, i))));
        }
        if !ring.is_unit(c) {
            return Err(step_err(3, format!("coefficient {c} at {} is not a unit", pair_label(alg, i))));
        }
        values.push(c);
    }
    let sigma = SchurCoeffs::new(alg, values).map_err(|e| step_err(3, format!("{e}")))?;
    let eta = alg.compose(&schur(alg, &sigma.inverse(alg)), &eta);

    // Step 4
    if let Some(i) = (0..alg.dim()).find(|&i| *eta.image(i) != alg.basis_at(i)) {
        return Err(step_err(4, format!("remainder moves {}", pair_label(alg, i))));
    }

    let out = AutDecomposition { rho, sigma, f: beta };
    if out.to_map(alg)? != *phi {
        return Err(Error::Discrepancy("recomposed map differs from the input".into()));
    }
    Ok(out)
}
