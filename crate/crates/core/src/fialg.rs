//! The finitary incidence algebra `FI(P)` of a finite poset over a ring.
//!
//! An element is a dense coefficient vector over the comparable pairs of the
//! poset, in [`Poset::pairs`] order. Linear self-maps are stored by the images
//! of the basis elements `e_xy`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::cartprod::PiElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poset::Poset;
use crate::ring::{Ring, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiElement {
    coeffs: Vec<RingElem>,
}

impl FiElement {
    /// Coefficients in pair order.
    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero coefficients as `(pair index, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, RingElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c))
    }
}

/// A linear self-map of `FI(P)`, given by the image of every basis element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearMap {
    images: Vec<FiElement>,
}

impl LinearMap {
    /// Image of the `i`-th basis element.
    pub fn image(&self, i: usize) -> &FiElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[FiElement] {
        &self.images
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceAlgebra {
    ring: Ring,
    poset: Poset,
    /// For each pair `(x, y)`: the pairs `((x, z), (z, y))` with `x <= z <= y`.
    products: Vec<Vec<(usize, usize)>>,
}

impl IncidenceAlgebra {
    pub fn new(ring: Ring, poset: Poset) -> Self {
        let products = poset
            .pairs()
            .iter()
            .map(|&(x, y)| {
                (0..poset.len())
                    .filter(|&z| poset.leq(x, z) && poset.leq(z, y))
                    .map(|z| (poset.pair_index(x, z).unwrap(), poset.pair_index(z, y).unwrap()))
                    .collect()
            })
            .collect();
        IncidenceAlgebra { ring, poset, products }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Number of comparable pairs, the rank of `FI(P)` as a free module.
    pub fn dim(&self) -> usize {
        self.poset.pairs().len()
    }

    pub fn check(&self, a: &FiElement) -> Result<()> {
        if a.coeffs.len() != self.dim() {
            return Err(Error::Mismatch("element belongs to a different poset"));
        }
        for &c in &a.coeffs {
            self.ring.check(c)?;
        }
        Ok(())
    }

    pub fn check_map(&self, m: &LinearMap) -> Result<()> {
        if m.images.len() != self.dim() {
            return Err(Error::Mismatch("map belongs to a different poset"));
        }
        m.images.iter().try_for_each(|a| self.check(a))
    }

    pub fn from_coeffs(&self, coeffs: Vec<RingElem>) -> Result<FiElement> {
        let a = FiElement { coeffs };
        self.check(&a)?;
        Ok(a)
    }

    /// Sum of `value * e_xy` over the given terms; repeated pairs add up.
    pub fn from_terms(&self, terms: &[((usize, usize), RingElem)]) -> Result<FiElement> {
        let mut a = self.zero();
        for &((x, y), v) in terms {
            let i = self.pair(x, y)?;
            self.ring.check(v)?;
            a.coeffs[i] = self.ring.add(a.coeffs[i], v);
        }
        Ok(a)
    }

    fn pair(&self, x: usize, y: usize) -> Result<usize> {
        if x >= self.poset.len() || y >= self.poset.len() {
            return Err(Error::UnknownElement(format!("{}", x.max(y))));
        }
        self.poset.pair_index(x, y).ok_or_else(|| {
            Error::NotComparable(self.poset.label(x).into(), self.poset.label(y).into())
        })
    }

    pub fn zero(&self) -> FiElement {
        FiElement { coeffs: vec![RingElem::ZERO; self.dim()] }
    }

    /// The identity `e = sum_x e_x`.
    pub fn one(&self) -> FiElement {
        let all: Vec<usize> = (0..self.poset.len()).collect();
        self.subset_idempotent(&all)
    }

    pub fn basis_at(&self, i: usize) -> FiElement {
        let mut a = self.zero();
        a.coeffs[i] = self.ring.one();
        a
    }

    /// `e_xy`, defined for `x <= y`.
    pub fn basis(&self, x: usize, y: usize) -> Result<FiElement> {
        Ok(self.basis_at(self.pair(x, y)?))
    }

    /// `e_x = e_xx`.
    pub fn point(&self, x: usize) -> FiElement {
        self.basis_at(self.poset.diagonal_index(x))
    }

    /// `e_X = sum_{x in X} e_x`.
    pub fn subset_idempotent(&self, xs: &[usize]) -> FiElement {
        let mut a = self.zero();
        for &x in xs {
            a.coeffs[self.poset.diagonal_index(x)] = self.ring.one();
        }
        a
    }

    /// Coefficient at `(x, y)`; zero for incomparable pairs.
    pub fn coeff(&self, a: &FiElement, x: usize, y: usize) -> RingElem {
        self.poset.pair_index(x, y).map_or(RingElem::ZERO, |i| a.coeffs[i])
    }

    pub fn diagonal(&self, a: &FiElement, x: usize) -> RingElem {
        a.coeffs[self.poset.diagonal_index(x)]
    }

    pub fn add(&self, a: &FiElement, b: &FiElement) -> FiElement {
        FiElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.ring.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &FiElement, b: &FiElement) -> FiElement {
        FiElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.ring.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &FiElement) -> FiElement {
        FiElement { coeffs: a.coeffs.iter().map(|&x| self.ring.neg(x)).collect() }
    }

    pub fn scale(&self, c: RingElem, a: &FiElement) -> FiElement {
        FiElement { coeffs: a.coeffs.iter().map(|&x| self.ring.mul(c, x)).collect() }
    }

    /// Convolution product `(ab)_xy = sum_{x<=z<=y} a_xz b_zy`.
    pub fn mul(&self, a: &FiElement, b: &FiElement) -> FiElement {
        assert_eq!(a.coeffs.len(), self.dim());
        assert_eq!(b.coeffs.len(), self.dim());
        let coeffs = self
            .products
            .iter()
            .map(|terms| {
                let mut s = RingElem::ZERO;
                for &(l, r) in terms {
                    let (x, y) = (a.coeffs[l], b.coeffs[r]);
                    if !x.is_zero() && !y.is_zero() {
                        s = self.ring.add(s, self.ring.mul(x, y));
                    }
                }
                s
            })
            .collect();
        FiElement { coeffs }
    }

    /// [`mul`](Self::mul) with operand validation.
    pub fn multiply(&self, a: &FiElement, b: &FiElement) -> Result<FiElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &FiElement, k: u32) -> FiElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Units are exactly the elements whose diagonal consists of ring units.
    pub fn is_unit(&self, a: &FiElement) -> bool {
        (0..self.poset.len()).all(|x| self.ring.is_unit(self.diagonal(a, x)))
    }

    /// Writes `a = d (e + n)` with `d` diagonal and `n` in `Z`, and returns
    /// `(sum_{k < c} (-n)^k) d^{-1}` where `c` is the longest chain length.
    pub fn inverse(&self, a: &FiElement) -> Result<FiElement> {
        self.check(a)?;
        let mut d_inv = self.zero();
        for x in 0..self.poset.len() {
            let v = self.diagonal(a, x);
            let inv = self.ring.inverse_unit(v).map_err(|_| Error::NonUnitDiagonal {
                element: self.poset.label(x).into(),
                value: v.value(),
            })?;
            d_inv.coeffs[self.poset.diagonal_index(x)] = inv;
        }
        let n = self.sub(&self.mul(&d_inv, a), &self.one());
        let minus_n = self.neg(&n);
        let mut series = self.one();
        let mut term = self.one();
        for _ in 1..self.poset.longest_chain() {
            term = self.mul(&term, &minus_n);
            series = self.add(&series, &term);
        }
        Ok(self.mul(&series, &d_inv))
    }

    /// Membership in the ideal `Z` of elements with vanishing diagonal.
    pub fn in_z(&self, a: &FiElement) -> bool {
        (0..self.poset.len()).all(|x| self.diagonal(a, x).is_zero())
    }

    /// The image in `FI(P)/Z = prod_x R e_x`: the diagonal.
    pub fn quotient_to_pi(&self, a: &FiElement) -> PiElement {
        PiElement::new((0..self.poset.len()).map(|x| self.diagonal(a, x)).collect())
    }

    /// The diagonal element `sum_x a_x e_x` lifting a product element.
    pub fn lift_pi(&self, a: &PiElement) -> FiElement {
        let mut out = self.zero();
        for (x, &v) in a.coords().iter().enumerate() {
            out.coeffs[self.poset.diagonal_index(x)] = v;
        }
        out
    }

    pub fn is_idempotent(&self, a: &FiElement) -> bool {
        self.mul(a, a) == *a
    }

    fn in_subset_coset(&self, a: &FiElement, xs: &[usize]) -> bool {
        (0..self.poset.len()).all(|x| {
            let want = if xs.contains(&x) { self.ring.one() } else { RingElem::ZERO };
            self.diagonal(a, x) == want
        })
    }

    /// For an idempotent `a` in `e_X + Z`: every nonzero `a_yz` has some
    /// `x` in `X` with `y <= x <= z`.
    pub fn idempotent_support_check(&self, a: &FiElement, xs: &[usize]) -> Result<bool> {
        self.check(a)?;
        if xs.iter().any(|&x| x >= self.poset.len()) {
            return Err(Error::UnknownElement("subset member out of range".into()));
        }
        if !self.in_subset_coset(a, xs) || !self.is_idempotent(a) {
            return Err(Error::Precondition("expected an idempotent in e_X + Z".into()));
        }
        let pairs = self.poset.pairs();
        Ok(a.support().all(|(i, _)| {
            let (y, z) = pairs[i];
            xs.iter().any(|&x| self.poset.leq(y, x) && self.poset.leq(x, z))
        }))
    }

    /// For an idempotent `a` in `e_x + Z`: `a_uv = a_ux a_xv` when
    /// `u <= x <= v`, `a_uv = 0` otherwise, and `a = a e_x a`.
    pub fn primitive_idempotent_checks(&self, a: &FiElement, x: usize) -> Result<bool> {
        self.check(a)?;
        if x >= self.poset.len() {
            return Err(Error::UnknownElement(format!("{x}")));
        }
        if !self.in_subset_coset(a, &[x]) || !self.is_idempotent(a) {
            return Err(Error::Precondition("expected an idempotent in e_x + Z".into()));
        }
        let factorizes = self.poset.pairs().iter().enumerate().all(|(i, &(u, v))| {
            let expected = if self.poset.leq(u, x) && self.poset.leq(x, v) {
                self.ring.mul(self.coeff(a, u, x), self.coeff(a, x, v))
            } else {
                RingElem::ZERO
            };
            a.coeffs[i] == expected
        });
        let sandwich = self.mul(&self.mul(a, &self.point(x)), a) == *a;
        Ok(factorizes && sandwich)
    }

    /// `(b e_x c)^2 = (b e_x c)_x (b e_x c)` for arbitrary `b`, `c`.
    pub fn square_law_holds(&self, b: &FiElement, c: &FiElement, x: usize) -> bool {
        let a = self.mul(&self.mul(b, &self.point(x)), c);
        self.mul(&a, &a) == self.scale(self.diagonal(&a, x), &a)
    }

    /// Membership in `L_uv`: all coefficients inside `[u, v]` vanish.
    pub fn in_l(&self, a: &FiElement, u: usize, v: usize) -> Result<bool> {
        self.pair(u, v)?;
        Ok(self.poset.pairs().iter().enumerate().all(|(i, &(x, y))| {
            !(self.poset.leq(u, x) && self.poset.leq(y, v)) || a.coeffs[i].is_zero()
        }))
    }

    /// `|R|^dim`, or `None` for infinite rings or overflow.
    pub fn element_count(&self) -> Option<u64> {
        let q = self.ring.order()?;
        q.checked_pow(self.dim() as u32)
    }

    /// The `index`-th element in mixed-radix order (first coordinate fastest).
    pub fn element_at(&self, mut index: u64) -> FiElement {
        let q = self.ring.order().expect("finite ring");
        let coeffs = (0..self.dim())
            .map(|_| {
                let c = index % q;
                index /= q;
                RingElem::from_canonical(c as i64)
            })
            .collect();
        FiElement { coeffs }
    }

    /// Inverse of [`element_at`](Self::element_at).
    pub fn element_index(&self, a: &FiElement) -> u64 {
        let q = self.ring.order().expect("finite ring");
        a.coeffs.iter().rev().fold(0u64, |acc, c| acc * q + c.value() as u64)
    }

    /// Every element, guarded by `limit` on the count.
    pub fn elements(&self, limit: u64) -> Result<Vec<FiElement>> {
        let count = self.element_count().ok_or_else(|| Error::NotEnumerable(self.ring.to_string()))?;
        if count > limit {
            return Err(Error::SizeGuard { what: "algebra", size: count, limit });
        }
        Ok((0..count).map(|i| self.element_at(i)).collect())
    }

    pub fn identity_map(&self) -> LinearMap {
        LinearMap { images: (0..self.dim()).map(|i| self.basis_at(i)).collect() }
    }

    pub fn zero_map(&self) -> LinearMap {
        LinearMap { images: vec![self.zero(); self.dim()] }
    }

    pub fn map_from_images(&self, images: Vec<FiElement>) -> Result<LinearMap> {
        let m = LinearMap { images };
        self.check_map(&m)?;
        Ok(m)
    }

    /// The linear extension of `f` on the basis.
    pub fn map_from_fn(&self, f: impl Fn(&FiElement) -> FiElement) -> LinearMap {
        LinearMap { images: (0..self.dim()).map(|i| f(&self.basis_at(i))).collect() }
    }

    pub fn apply(&self, m: &LinearMap, a: &FiElement) -> FiElement {
        let mut out = self.zero();
        for (i, c) in a.support() {
            for (j, &v) in m.images[i].coeffs.iter().enumerate() {
                if !v.is_zero() {
                    out.coeffs[j] = self.ring.add(out.coeffs[j], self.ring.mul(c, v));
                }
            }
        }
        out
    }

    /// Validated [`apply`](Self::apply).
    pub fn try_apply(&self, m: &LinearMap, a: &FiElement) -> Result<FiElement> {
        self.check_map(m)?;
        self.check(a)?;
        Ok(self.apply(m, a))
    }

    /// `outer ∘ inner`.
    pub fn compose(&self, outer: &LinearMap, inner: &LinearMap) -> LinearMap {
        LinearMap { images: inner.images.iter().map(|a| self.apply(outer, a)).collect() }
    }

    pub fn map_equals(&self, m: &LinearMap, n: &LinearMap) -> bool {
        m == n
    }

    /// First basis pair `(i, j)` with `m(e_i e_j) != m(e_i) m(e_j)`.
    /// Multiplicativity on basis pairs is multiplicativity everywhere.
    pub fn multiplicativity_failure(&self, m: &LinearMap) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.apply(m, &self.mul(&self.basis_at(i), &self.basis_at(j)));
                if lhs != self.mul(&m.images[i], &m.images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_multiplicative(&self, m: &LinearMap) -> bool {
        self.multiplicativity_failure(m).is_none()
    }

    pub fn is_unital(&self, m: &LinearMap) -> bool {
        self.apply(m, &self.one()) == self.one()
    }

    /// Determinant of the basis matrix (columns are images).
    pub fn determinant(&self, m: &LinearMap) -> RingElem {
        let d = self.dim();
        let rows: Vec<Vec<RingElem>> =
            (0..d).map(|r| (0..d).map(|c| m.images[c].coeffs[r]).collect()).collect();
        linalg::determinant(&self.ring, &rows)
    }

    pub fn is_bijective(&self, m: &LinearMap) -> bool {
        self.ring.is_unit(self.determinant(m))
    }

    /// Trivial kernel. Over a finite ring this coincides with bijectivity.
    pub fn is_injective(&self, m: &LinearMap) -> bool {
        let det = self.determinant(m);
        if self.ring.is_finite() {
            self.ring.is_unit(det)
        } else {
            !det.is_zero()
        }
    }

    /// `|R|^(dim^2)`, the number of linear self-maps.
    pub fn map_count(&self) -> Option<u64> {
        let q = self.ring.order()?;
        q.checked_pow((self.dim() * self.dim()) as u32)
    }

    /// The `index`-th linear map: basis image `i` is element number
    /// `(index / |R|^(dim*i)) mod |R|^dim`.
    pub fn map_at(&self, mut index: u64) -> LinearMap {
        let per = self.element_count().expect("finite ring");
        let images = (0..self.dim())
            .map(|_| {
                let a = self.element_at(index % per);
                index /= per;
                a
            })
            .collect();
        LinearMap { images }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn el(v: i64) -> RingElem {
        RingElem::from_canonical(v)
    }

    fn alg(ring: &str, poset: Poset) -> IncidenceAlgebra {
        IncidenceAlgebra::new(Ring::parse(ring).unwrap(), poset)
    }

    fn family() -> Vec<Poset> {
        vec![
            Poset::chain(1),
            Poset::chain(2),
            Poset::chain(3),
            Poset::chain(4),
            Poset::antichain(2),
            Poset::vee(),
            Poset::lambda(),
            Poset::diamond(),
        ]
    }

    #[test]
    fn basis_products() {
        let a = alg("Z5", Poset::chain(3));
        let e = |x, y| a.basis(x, y).unwrap();
        assert_eq!(a.mul(&e(0, 1), &e(1, 2)), e(0, 2));
        assert_eq!(a.mul(&e(0, 1), &e(0, 2)), a.zero());
        assert_eq!(a.mul(&e(1, 2), &e(0, 1)), a.zero());
        assert!(a.basis(1, 0).is_err());
        assert!(a.multiply(&e(0, 1), &alg("Z5", Poset::chain(2)).one()).is_err());
    }

    #[test]
    fn square_of_idempotent_example() {
        let a = alg("Z7", Poset::chain(2));
        for c in 0..7 {
            let x = a.from_terms(&[((0, 0), el(1)), ((0, 1), el(c))]).unwrap();
            assert_eq!(a.mul(&x, &x), x);
            assert!(a.is_idempotent(&x));
        }
    }

    #[test]
    fn inverse_examples() {
        let a = alg("Z3", Poset::chain(3));
        let e = a.one();
        let e01 = a.basis(0, 1).unwrap();
        let e12 = a.basis(1, 2).unwrap();
        let e02 = a.basis(0, 2).unwrap();
        assert_eq!(a.inverse(&a.add(&e, &e01)).unwrap(), a.sub(&e, &e01));
        let x = a.add(&a.add(&e, &e01), &e12);
        let expected = a.add(&a.sub(&a.sub(&e, &e01), &e12), &e02);
        assert_eq!(a.inverse(&x).unwrap(), expected);
        assert_eq!(a.mul(&x, &expected), e);

        let z4 = alg("Z4", Poset::chain(2));
        let y = z4.from_terms(&[((0, 0), el(2)), ((1, 1), el(1))]).unwrap();
        assert!(!z4.is_unit(&y));
        assert_eq!(z4.inverse(&y), Err(Error::NonUnitDiagonal { element: "1".into(), value: 2 }));
    }

    #[test]
    fn z_and_quotient_examples() {
        let a = alg("Z4", Poset::diamond());
        assert!(a.in_z(&a.basis(0, 3).unwrap()));
        assert!(!a.in_z(&a.point(1)));
        assert_eq!(a.quotient_to_pi(&a.one()).coords(), &[el(1); 4]);
    }

    #[test]
    fn idempotent_examples() {
        let a = alg("Z4", Poset::chain(2));
        assert!(a.is_idempotent(&a.subset_idempotent(&[0, 1])));
        assert!(a.is_idempotent(&a.subset_idempotent(&[1])));
        assert!(!a.is_idempotent(&a.scale(el(2), &a.point(0))));
        let x = a.from_terms(&[((0, 0), el(1)), ((0, 1), el(3))]).unwrap();
        assert_eq!(a.idempotent_support_check(&x, &[0]), Ok(true));
        assert!(matches!(a.idempotent_support_check(&x, &[1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn interval_avoiding_sum_is_not_idempotent() {
        // x = 0, [u, v] = [1, 2] in the chain 0 < 1 < 2: 0 is outside [1, 2]
        let a = alg("Z3", Poset::chain(3));
        let x = a.add(&a.point(0), &a.basis(1, 2).unwrap());
        assert_ne!(a.mul(&x, &x), x);
        assert!(a.idempotent_support_check(&x, &[0]).is_err());
    }

    #[test]
    fn primitive_idempotent_examples() {
        let a = alg("Z7", Poset::chain(3));
        assert_eq!(a.primitive_idempotent_checks(&a.point(1), 1), Ok(true));
        // u = 0 < x = 1 < v = 2, and 6 = 2 * 3
        let x = a
            .from_terms(&[((1, 1), el(1)), ((0, 1), el(2)), ((1, 2), el(3)), ((0, 2), el(6))])
            .unwrap();
        assert!(a.is_idempotent(&x));
        assert_eq!(a.primitive_idempotent_checks(&x, 1), Ok(true));
        let e = a.one();
        assert!(a.square_law_holds(&e, &e, 1));
        assert_eq!(a.mul(&a.mul(&e, &a.point(1)), &e), a.point(1));
        let bad = a.from_terms(&[((1, 1), el(1)), ((0, 1), el(2)), ((1, 2), el(3)), ((0, 2), el(5))]).unwrap();
        assert!(a.primitive_idempotent_checks(&bad, 1).is_err());
    }

    #[test]
    fn l_ideal_examples() {
        let a = alg("Z3", Poset::chain(3));
        assert_eq!(a.in_l(&a.point(0), 1, 2), Ok(true));
        assert_eq!(a.in_l(&a.basis(1, 2).unwrap(), 1, 2), Ok(false));
        assert!(matches!(a.in_l(&a.zero(), 2, 1), Err(Error::NotComparable(..))));
    }

    #[test]
    fn l_is_a_two_sided_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in family() {
            let a = alg("Z3", p.clone());
            for &(u, v) in p.pairs() {
                for _ in 0..50 {
                    let mut x = sample::element(&a, &mut rng);
                    for (i, &(s, t)) in p.pairs().iter().enumerate() {
                        if p.leq(u, s) && p.leq(t, v) {
                            x.coeffs[i] = RingElem::ZERO;
                        }
                    }
                    assert_eq!(a.in_l(&x, u, v), Ok(true));
                    let g = sample::element(&a, &mut rng);
                    assert_eq!(a.in_l(&a.mul(&g, &x), u, v), Ok(true));
                    assert_eq!(a.in_l(&a.mul(&x, &g), u, v), Ok(true));
                }
            }
        }
    }

    #[test]
    fn map_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = alg("Z5", Poset::diamond());
        let id = a.identity_map();
        let x = sample::element(&a, &mut rng);
        assert_eq!(a.apply(&id, &x), x);
        // all-ones diagonal scaling fixes every e_X
        let s = a.map_from_fn(|b| b.clone());
        assert_eq!(a.apply(&s, &a.subset_idempotent(&[0, 2])), a.subset_idempotent(&[0, 2]));
        for _ in 0..50 {
            let f = a.map_at(rand::Rng::gen_range(&mut rng, 0..u64::MAX));
            let g = a.map_from_images((0..a.dim()).map(|_| sample::element(&a, &mut rng)).collect()).unwrap();
            let x = sample::element(&a, &mut rng);
            assert_eq!(a.apply(&a.compose(&f, &g), &x), a.apply(&f, &a.apply(&g, &x)));
        }
        assert!(a.map_from_images(vec![a.zero()]).is_err());
    }

    #[test]
    fn algebra_laws_exhaustive_small() {
        for ring in ["Z2", "Z3"] {
            for p in [Poset::chain(1), Poset::chain(2), Poset::antichain(2)] {
                let a = alg(ring, p);
                let els = a.elements(1 << 12).unwrap();
                for x in &els {
                    assert_eq!(a.mul(x, &a.one()), *x);
                    assert_eq!(a.mul(&a.one(), x), *x);
                    for y in &els {
                        for z in &els {
                            assert_eq!(a.mul(&a.mul(x, y), z), a.mul(x, &a.mul(y, z)));
                            assert_eq!(a.mul(x, &a.add(y, z)), a.add(&a.mul(x, y), &a.mul(x, z)));
                            assert_eq!(a.mul(&a.add(y, z), x), a.add(&a.mul(y, x), &a.mul(z, x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_laws_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for ring in ["Z4", "GF(4)", "Z9"] {
            for p in family() {
                let a = alg(ring, p);
                for _ in 0..100 {
                    let (x, y, z) = (sample::element(&a, &mut rng), sample::element(&a, &mut rng), sample::element(&a, &mut rng));
                    assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
                    assert_eq!(a.mul(&x, &a.add(&y, &z)), a.add(&a.mul(&x, &y), &a.mul(&x, &z)));
                }
            }
        }
    }

    #[test]
    fn inverse_is_two_sided_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for ring in ["Z2", "Z4", "GF(9)", "Z"] {
            for p in family() {
                let a = alg(ring, p);
                for _ in 0..60 {
                    let u = sample::unit(&a, &mut rng);
                    let inv = a.inverse(&u).unwrap();
                    assert_eq!(a.mul(&u, &inv), a.one());
                    assert_eq!(a.mul(&inv, &u), a.one());
                    assert_eq!(a.inverse(&inv).unwrap(), u);
                }
            }
        }
    }

    #[test]
    fn z_is_an_ideal_and_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for p in family() {
            let a = alg("Z4", p);
            let c = a.poset().longest_chain() as u32;
            for _ in 0..100 {
                let z = sample::z_element(&a, &mut rng);
                let x = sample::element(&a, &mut rng);
                assert!(a.in_z(&z));
                assert!(a.in_z(&a.mul(&x, &z)));
                assert!(a.in_z(&a.mul(&z, &x)));
                assert!(a.pow(&z, c).is_zero());
            }
        }
    }

    #[test]
    fn quotient_is_a_surjective_ring_map_with_kernel_z() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for p in family() {
            let a = alg("Z3", p);
            for _ in 0..100 {
                let (x, y) = (sample::element(&a, &mut rng), sample::element(&a, &mut rng));
                let (qx, qy) = (a.quotient_to_pi(&x), a.quotient_to_pi(&y));
                assert_eq!(a.quotient_to_pi(&a.mul(&x, &y)), qx.mul(a.ring(), &qy));
                assert_eq!(a.quotient_to_pi(&a.add(&x, &y)), qx.add(a.ring(), &qy));
                assert_eq!(a.quotient_to_pi(&a.lift_pi(&qx)), qx);
                assert_eq!(a.quotient_to_pi(&x).is_zero(), a.in_z(&x));
            }
        }
    }

    #[test]
    fn bijectivity_via_determinant() {
        let a = alg("Z4", Poset::chain(2));
        assert!(a.is_bijective(&a.identity_map()));
        assert!(!a.is_injective(&a.zero_map()));
        let doubled = a.map_from_fn(|b| a.scale(el(2), b));
        assert!(!a.is_bijective(&doubled));
        let z = alg("Z", Poset::chain(2));
        let tripled = z.map_from_fn(|b| z.scale(el(3), b));
        assert!(z.is_injective(&tripled) && !z.is_bijective(&tripled));
    }

    #[test]
    fn enumeration_indices_round_trip() {
        let a = alg("Z3", Poset::vee());
        for i in [0, 1, 17, 242] {
            assert_eq!(a.element_index(&a.element_at(i)), i);
        }
        assert_eq!(alg("Z2", Poset::chain(2)).map_count(), Some(512));
    }
}
