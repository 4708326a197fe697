use alloc::vec;
use alloc::vec::Vec;

use crate::ring::{Ring, RingElem};

/// Determinant over a commutative ring by the division-free Berkowitz
/// recursion. `rows[i][j]` is the entry in row `i`, column `j`.
pub(crate) fn determinant(ring: &Ring, rows: &[Vec<RingElem>]) -> RingElem {
    let n = rows.len();
    // coefficients of det(tI - A_r), leading coefficient first
    let mut poly = vec![ring.one()];
    for r in 0..n {
        let a = rows[r][r];
        // toeplitz column: 1, -a, -R C, -R M C, ..., -R M^{r-1} C
        let mut col: Vec<RingElem> = Vec::with_capacity(r + 2);
        col.push(ring.one());
        col.push(ring.neg(a));
        let mut v: Vec<RingElem> = (0..r).map(|i| rows[i][r]).collect();
        for _ in 0..r {
            let mut dot = ring.zero();
            for (j, &vj) in v.iter().enumerate() {
                dot = ring.add(dot, ring.mul(rows[r][j], vj));
            }
            col.push(ring.neg(dot));
            v = (0..r)
                .map(|i| {
                    let mut s = ring.zero();
                    for (j, &vj) in v.iter().enumerate() {
                        s = ring.add(s, ring.mul(rows[i][j], vj));
                    }
                    s
                })
                .collect();
        }
        let mut next = vec![ring.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut s = ring.zero();
            for (j, &pj) in poly.iter().enumerate() {
                if i >= j {
                    s = ring.add(s, ring.mul(col[i - j], pj));
                }
            }
            *slot = s;
        }
        poly = next;
    }
    let c = poly[n];
    if n.is_multiple_of(2) {
        c
    } else {
        ring.neg(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cofactor(ring: &Ring, m: &[Vec<RingElem>]) -> RingElem {
        let n = m.len();
        if n == 0 {
            return ring.one();
        }
        let mut acc = ring.zero();
        for j in 0..n {
            let minor: Vec<Vec<RingElem>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let term = ring.mul(m[0][j], cofactor(ring, &minor));
            acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
        }
        acc
    }

    #[test]
    fn matches_cofactor_expansion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for spec in ["Z4", "Z7", "GF(8)", "Z9", "Z"] {
            let ring = Ring::parse(spec).unwrap();
            for n in 0..6 {
                for _ in 0..40 {
                    let m: Vec<Vec<RingElem>> = (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| match ring.order() {
                                    Some(q) => RingElem::from_canonical(rng.gen_range(0..q as i64)),
                                    None => RingElem::from_canonical(rng.gen_range(-3..4)),
                                })
                                .collect()
                        })
                        .collect();
                    assert_eq!(determinant(&ring, &m), cofactor(&ring, &m), "{spec} {m:?}");
                }
            }
        }
    }
}
