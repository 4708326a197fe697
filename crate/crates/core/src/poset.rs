//! Finite posets with a precomputed order relation.
//!
//! Elements are indices `0..len()` in declaration order; labels are kept for
//! diagnostics and IO. Comparable pairs `x <= y` are numbered in
//! lexicographic order of `(x, y)`, and that numbering is the coordinate
//! order used by every incidence-algebra element built on the poset.

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default size limit for permutation enumeration.
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
    heights: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    pair_index: Vec<Option<usize>>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds a poset from a full relation matrix, `leq[x][y]` meaning `x <= y`.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels)?;
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Mismatch("relation matrix must be square over the elements"));
        }
        let flat: Vec<bool> = leq.into_iter().flatten().collect();
        let at = |x: usize, y: usize| flat[x * n + y];
        for x in 0..n {
            if !at(x, x) {
                return Err(Error::NotReflexive(labels[x].clone()));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if at(x, y) && at(y, x) {
                    return Err(Error::NotAntisymmetric(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !at(x, y) {
                    continue;
                }
                for z in 0..n {
                    if at(y, z) && !at(x, z) {
                        return Err(Error::NotTransitive(
                            labels[x].clone(),
                            labels[y].clone(),
                            labels[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Self::assemble(labels, flat))
    }

    /// Builds a poset from generating pairs `x < y` (normally the Hasse
    /// diagram). The reflexive-transitive closure is taken; a cycle among the
    /// pairs is reported as an antisymmetry violation.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        check_labels(&labels)?;
        let mut rel = vec![false; n * n];
        for x in 0..n {
            rel[x * n + x] = true;
        }
        for &(x, y) in covers {
            if x >= n || y >= n {
                return Err(Error::UnknownElement(x.max(y).to_string()));
            }
            rel[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !rel[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
        let rows = rel.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
        Self::from_relation(labels, rows)
    }

    /// Convenience constructor from string labels.
    pub fn from_labeled_covers(labels: &[&str], covers: &[(&str, &str)]) -> Result<Self> {
        let owned: Vec<String> = labels.iter().map(|s| (*s).to_owned()).collect();
        let find = |s: &str| {
            labels.iter().position(|l| *l == s).ok_or_else(|| Error::UnknownElement(s.into()))
        };
        let idx = covers
            .iter()
            .map(|&(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_covers(owned, &idx)
    }

    /// `1 < 2 < ... < n`.
    pub fn chain(n: usize) -> Self {
        let labels = (1..=n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers).expect("chain is a poset")
    }

    /// `n` pairwise incomparable elements labelled `a, b, c, ...` (then `a26`, ...).
    pub fn antichain(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| {
                if i < 26 {
                    char::from(b'a' + i as u8).to_string()
                } else {
                    alloc::format!("a{i}")
                }
            })
            .collect();
        Self::from_covers(labels, &[]).expect("antichain is a poset")
    }

    /// `0 < a, b < 1`.
    pub fn diamond() -> Self {
        Self::from_labeled_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .expect("diamond is a poset")
    }

    /// `0 < a`, `0 < b`.
    pub fn vee() -> Self {
        Self::from_labeled_covers(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).expect("V is a poset")
    }

    /// `a < 1`, `b < 1`.
    pub fn lambda() -> Self {
        Self::from_labeled_covers(&["a", "b", "1"], &[("a", "1"), ("b", "1")]).expect("Λ is a poset")
    }

    fn assemble(labels: Vec<String>, leq: Vec<bool>) -> Self {
        let n = labels.len();
        let mut pairs = Vec::new();
        let mut pair_index = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                if leq[x * n + y] {
                    pair_index[x * n + y] = Some(pairs.len());
                    pairs.push((x, y));
                }
            }
        }
        let lt = |x: usize, y: usize| x != y && leq[x * n + y];
        let mut covers = Vec::new();
        for &(x, y) in &pairs {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                covers.push((x, y));
            }
        }
        // height(x) = 1 + max height below x; elements with fewer predecessors first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&z| lt(z, x)).count());
        let mut heights = vec![0; n];
        for &x in &order {
            heights[x] = 1 + (0..n).filter(|&z| lt(z, x)).map(|z| heights[z]).max().unwrap_or(0);
        }
        Poset { labels, leq, heights, pairs, pair_index, covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.into()))
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(x.to_string()))
        }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `[x, y]` in declaration order; empty when `x` is not below `y`.
    pub fn interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok((0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect())
    }

    /// Size of a largest chain with maximal element `x`.
    pub fn height(&self, x: usize) -> Result<usize> {
        self.check_element(x)?;
        Ok(self.heights[x])
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Length of the longest chain (0 for the empty poset).
    pub fn longest_chain(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// All comparable pairs `(x, y)`, `x <= y`, in coordinate order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_index(&self, x: usize, y: usize) -> Option<usize> {
        if x < self.len() && y < self.len() {
            self.pair_index[x * self.len() + y]
        } else {
            None
        }
    }

    /// Coordinate of the diagonal pair `(x, x)`.
    pub fn diagonal_index(&self, x: usize) -> usize {
        self.pair_index[x * self.len() + x].expect("reflexive")
    }

    /// Covering pairs `x < y` with nothing strictly in between.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn order_automorphisms(&self) -> Result<Vec<OrderMap>> {
        self.order_automorphisms_with_limit(DEFAULT_AUTOMORPHISM_LIMIT)
    }

    /// Every order automorphism, in lexicographic order of the image list.
    /// Candidates for `x` are restricted to elements of the same height.
    pub fn order_automorphisms_with_limit(&self, limit: usize) -> Result<Vec<OrderMap>> {
        let n = self.len();
        if n > limit {
            return Err(Error::SizeGuard { what: "poset", size: n as u64, limit: limit as u64 });
        }
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_automorphism(0, &mut image, &mut used, &mut out);
        Ok(out)
    }

    fn extend_automorphism(
        &self,
        x: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<OrderMap>,
    ) {
        let n = self.len();
        if x == n {
            out.push(OrderMap(image.clone()));
            return;
        }
        for candidate in 0..n {
            if used[candidate] || self.heights[candidate] != self.heights[x] {
                continue;
            }
            let consistent = (0..x).all(|w| {
                self.leq(w, x) == self.leq(image[w], candidate)
                    && self.leq(x, w) == self.leq(candidate, image[w])
            });
            if !consistent {
                continue;
            }
            image[x] = candidate;
            used[candidate] = true;
            self.extend_automorphism(x + 1, image, used, out);
            used[candidate] = false;
        }
        image[x] = usize::MAX;
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateElement(l.clone()));
        }
    }
    Ok(())
}

/// A total self-map of `0..n`, written as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderMap(pub Vec<usize>);

impl OrderMap {
    pub fn identity(n: usize) -> Self {
        OrderMap((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        for &v in &self.0 {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_bijective() {
            return Err(Error::NotBijective(alloc::format!("{:?}", self.0)));
        }
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Ok(OrderMap(inv))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &OrderMap) -> Self {
        OrderMap(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn is_order_automorphism(&self, poset: &Poset) -> bool {
        self.check_order_automorphism(poset).is_ok()
    }

    pub fn check_order_automorphism(&self, poset: &Poset) -> Result<()> {
        if self.len() != poset.len() || !self.is_bijective() {
            return Err(Error::NotOrderAutomorphism(alloc::format!(
                "{:?} is not a permutation of the {} elements",
                self.0,
                poset.len()
            )));
        }
        for x in 0..poset.len() {
            for y in 0..poset.len() {
                if poset.leq(x, y) != poset.leq(self.0[x], self.0[y]) {
                    return Err(Error::NotOrderAutomorphism(alloc::format!(
                        "`{}` <= `{}` is {} but their images `{}` <= `{}` is {}",
                        poset.label(x),
                        poset.label(y),
                        poset.leq(x, y),
                        poset.label(self.0[x]),
                        poset.label(self.0[y]),
                        !poset.leq(x, y)
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every bijection passing the order test, by plain permutation filtering.
    fn brute_force_automorphisms(p: &Poset) -> Vec<OrderMap> {
        let n = p.len();
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |q| {
            let m = OrderMap(q.to_vec());
            if (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == p.leq(q[x], q[y]))) {
                out.push(m);
            }
        });
        out.sort();
        out
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    fn family() -> Vec<Poset> {
        vec![
            Poset::chain(1),
            Poset::chain(2),
            Poset::chain(3),
            Poset::antichain(2),
            Poset::antichain(3),
            Poset::vee(),
            Poset::lambda(),
            Poset::diamond(),
            Poset::from_labeled_covers(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap(),
            Poset::from_labeled_covers(&["x", "y", "z", "w", "v"], &[("x", "y"), ("z", "w")]).unwrap(),
        ]
    }

    #[test]
    fn interval_examples() {
        let c = Poset::chain(3);
        assert_eq!(c.interval(0, 2).unwrap(), vec![0, 1, 2]);
        let a = Poset::antichain(2);
        assert_eq!(a.interval(0, 1).unwrap(), Vec::<usize>::new());
        let d = Poset::diamond();
        assert_eq!(d.interval(0, 3).unwrap(), vec![0, 1, 2, 3]);
        assert!(matches!(c.interval(0, 7), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn height_examples() {
        assert_eq!(Poset::chain(3).height(2), Ok(3));
        let a = Poset::antichain(4);
        assert!((0..4).all(|x| a.height(x) == Ok(1)));
        let d = Poset::diamond();
        assert_eq!(d.height(d.index_of("1").unwrap()), Ok(3));
        assert!(d.height(9).is_err());
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(Poset::antichain(3).order_automorphisms().unwrap().len(), 6);
        assert_eq!(Poset::chain(3).order_automorphisms().unwrap(), vec![OrderMap::identity(3)]);
        let d = Poset::diamond();
        assert_eq!(
            d.order_automorphisms().unwrap(),
            vec![OrderMap(vec![0, 1, 2, 3]), OrderMap(vec![0, 2, 1, 3])]
        );
        assert!(matches!(
            Poset::antichain(9).order_automorphisms(),
            Err(Error::SizeGuard { size: 9, limit: 8, .. })
        ));
        assert_eq!(Poset::antichain(9).order_automorphisms_with_limit(9).unwrap().len(), 362_880);
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for p in family() {
            assert_eq!(p.order_automorphisms().unwrap(), brute_force_automorphisms(&p));
        }
    }

    #[test]
    fn automorphisms_preserve_height_and_form_a_group() {
        for p in family() {
            let auts = p.order_automorphisms().unwrap();
            for r in &auts {
                for x in 0..p.len() {
                    assert_eq!(p.height(r.apply(x)), p.height(x));
                }
                assert!(auts.contains(&r.inverse().unwrap()));
                for s in &auts {
                    assert!(auts.contains(&r.compose(s)));
                }
            }
        }
    }

    #[test]
    fn invalid_relations_report_a_witness() {
        let labels = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let cyc = Poset::from_covers(labels(), &[(0, 1), (1, 0)]);
        assert_eq!(cyc, Err(Error::NotAntisymmetric("a".into(), "b".into())));
        let t = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert_eq!(
            Poset::from_relation(labels(), t),
            Err(Error::NotTransitive("a".into(), "b".into(), "c".into()))
        );
        let r = vec![vec![true, false, false], vec![false, false, false], vec![false, false, true]];
        assert_eq!(Poset::from_relation(labels(), r), Err(Error::NotReflexive("b".into())));
        let dup = vec!["a".to_string(), "a".to_string()];
        assert_eq!(Poset::from_covers(dup, &[]), Err(Error::DuplicateElement("a".into())));
    }

    #[test]
    fn covers_are_recomputed_from_the_closure() {
        let p = Poset::from_labeled_covers(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p.pairs().len(), 6);
        assert_eq!(Poset::diamond().pairs().len(), 9);
        assert_eq!(Poset::diamond().longest_chain(), 3);
    }
}
