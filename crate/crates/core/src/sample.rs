//! Random generators for elements, units, idempotents and automorphism
//! data. Used by the randomized checks and by the command line.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::autgroup::SchurCoeffs;
use crate::cartprod::PiElement;
use crate::fialg::{FiElement, IncidenceAlgebra};
use crate::poset::OrderMap;
use crate::ring::{Ring, RingElem};

/// Coefficient range used for `Z`.
const INTEGER_SPAN: i64 = 3;

pub fn ring_element<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> RingElem {
    match ring.order() {
        Some(q) => RingElem::from_canonical(rng.gen_range(0..q as i64)),
        None => RingElem::from_canonical(rng.gen_range(-INTEGER_SPAN..=INTEGER_SPAN)),
    }
}

pub fn ring_unit<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> RingElem {
    loop {
        let c = match ring.order() {
            Some(_) => ring_element(ring, rng),
            None => RingElem::from_canonical(if rng.gen() { 1 } else { -1 }),
        };
        if ring.is_unit(c) {
            return c;
        }
    }
}

pub fn element<R: Rng + ?Sized>(alg: &IncidenceAlgebra, rng: &mut R) -> FiElement {
    let coeffs = (0..alg.dim()).map(|_| ring_element(alg.ring(), rng)).collect();
    alg.from_coeffs(coeffs).expect("sampled coefficients are canonical")
}

/// Random element of the ideal `Z`.
pub fn z_element<R: Rng + ?Sized>(alg: &IncidenceAlgebra, rng: &mut R) -> FiElement {
    let p = alg.poset();
    let coeffs = p
        .pairs()
        .iter()
        .map(|&(x, y)| if x == y { RingElem::ZERO } else { ring_element(alg.ring(), rng) })
        .collect();
    alg.from_coeffs(coeffs).unwrap()
}

/// Random unit: unit diagonal, arbitrary off-diagonal part.
pub fn unit<R: Rng + ?Sized>(alg: &IncidenceAlgebra, rng: &mut R) -> FiElement {
    let p = alg.poset();
    let coeffs = p
        .pairs()
        .iter()
        .map(|&(x, y)| if x == y { ring_unit(alg.ring(), rng) } else { ring_element(alg.ring(), rng) })
        .collect();
    alg.from_coeffs(coeffs).unwrap()
}

/// Idempotent in `e_x + Z` of the form `u^{-1} b e_x b` with `u = b_x^2`,
/// `b` random with unit diagonal at `x`.
pub fn primitive_idempotent<R: Rng + ?Sized>(alg: &IncidenceAlgebra, x: usize, rng: &mut R) -> FiElement {
    let mut b = element(alg, rng);
    let i = alg.poset().diagonal_index(x);
    let mut coeffs = b.coeffs().to_vec();
    coeffs[i] = ring_unit(alg.ring(), rng);
    b = alg.from_coeffs(coeffs).unwrap();
    let a = alg.mul(&alg.mul(&b, &alg.point(x)), &b);
    let ax = alg.diagonal(&a, x);
    let inv = alg.ring().inverse_unit(ax).expect("square of a unit");
    alg.scale(inv, &a)
}

/// Idempotent in `e_X + Z` obtained by conjugating `e_X` with a random unit.
pub fn conjugated_idempotent<R: Rng + ?Sized>(alg: &IncidenceAlgebra, xs: &[usize], rng: &mut R) -> FiElement {
    let g = unit(alg, rng);
    let g_inv = alg.inverse(&g).unwrap();
    alg.mul(&alg.mul(&g_inv, &alg.subset_idempotent(xs)), &g)
}

/// Idempotent in `e_X + Z` from a random perturbation `e_X + z`, repaired by
/// iterating `a -> 3a^2 - 2a^3` until it is fixed (finitely many steps since
/// `Z` is nilpotent).
pub fn perturbed_idempotent<R: Rng + ?Sized>(alg: &IncidenceAlgebra, xs: &[usize], rng: &mut R) -> FiElement {
    let ring = alg.ring();
    let (three, two) = (ring.from_int(3), ring.from_int(2));
    let mut a = alg.add(&alg.subset_idempotent(xs), &z_element(alg, rng));
    loop {
        let sq = alg.mul(&a, &a);
        if sq == a {
            return a;
        }
        let cube = alg.mul(&sq, &a);
        a = alg.sub(&alg.scale(three, &sq), &alg.scale(two, &cube));
    }
}

/// Uniformly random subset, as a sorted index list.
pub fn subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.gen()).collect()
}

pub fn pi_element<R: Rng + ?Sized>(ring: &Ring, n: usize, rng: &mut R) -> PiElement {
    PiElement::new((0..n).map(|_| ring_element(ring, rng)).collect())
}

pub fn choose<'a, T, R: Rng + ?Sized>(items: &'a [T], rng: &mut R) -> &'a T {
    items.choose(rng).expect("nonempty")
}

/// Random multiplicative unit system: free unit values on the covers,
/// resampled until path independent.
pub fn schur<R: Rng + ?Sized>(alg: &IncidenceAlgebra, rng: &mut R) -> SchurCoeffs {
    let covers = alg.poset().covers().len();
    loop {
        let values: Vec<RingElem> = (0..covers).map(|_| ring_unit(alg.ring(), rng)).collect();
        if let Ok(s) = SchurCoeffs::from_cover_values(alg, &values) {
            return s;
        }
    }
}

pub fn order_automorphism<R: Rng + ?Sized>(auts: &[OrderMap], rng: &mut R) -> OrderMap {
    choose(auts, rng).clone()
}
