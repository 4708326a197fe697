//! Coefficient rings: `Z/p^k`, `GF(p^k)` and `Z`.
//!
//! Elements are stored as a single canonical integer. For `Z/n` that is the
//! residue in `0..n`; for `GF(p^k)` it is the base-`p` encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of the polynomial
//! `c_0 + c_1 t + ... + c_{k-1} t^{k-1}` modulo a fixed irreducible polynomial.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Which ring a [`Ring`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    IntegersMod(u64),
    GaloisField { p: u64, k: u32 },
    Integers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElem(i64);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0);
    pub const ONE: RingElem = RingElem(1);

    /// The canonical integer; no reduction is applied.
    pub const fn from_canonical(value: i64) -> Self {
        RingElem(value)
    }

    pub const fn value(self) -> i64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingSpec {
    /// Number of elements, `None` for `Z`.
    pub fn order(&self) -> Option<u64> {
        match *self {
            RingSpec::IntegersMod(n) => Some(n),
            RingSpec::GaloisField { p, k } => Some(p.pow(k)),
            RingSpec::Integers => None,
        }
    }

    /// All `x` with `x^2 = x`. Works on decomposable `Z/n` too, which
    /// [`Ring::new`] refuses to build.
    pub fn idempotents(&self) -> Result<Vec<RingElem>> {
        match *self {
            RingSpec::IntegersMod(n) => {
                if n == 0 {
                    return Err(Error::InvalidRingSpec("Z0".into()));
                }
                let n128 = n as u128;
                Ok((0..n)
                    .filter(|&x| (x as u128 * x as u128) % n128 == x as u128)
                    .map(|x| RingElem(x as i64))
                    .collect())
            }
            RingSpec::GaloisField { .. } => {
                let ring = Ring::new(*self)?;
                let mut out = Vec::new();
                for x in ring.elements()? {
                    if ring.mul(x, x) == x {
                        out.push(x);
                    }
                }
                Ok(out)
            }
            RingSpec::Integers => Ok(alloc::vec![RingElem::ZERO, RingElem::ONE]),
        }
    }

    pub fn is_indecomposable(&self) -> bool {
        match self.idempotents() {
            Ok(ids) => ids == [RingElem::ZERO, RingElem::ONE],
            Err(_) => false,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingSpec::IntegersMod(n) => write!(f, "Z{n}"),
            RingSpec::GaloisField { p, k } => write!(f, "GF({})", p.pow(k)),
            RingSpec::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRingSpec(s.to_string());
        let digits = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u64>().map_err(|_| bad())
        };
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
            let q = digits(inner)?;
            let (p, k) = prime_power(q).ok_or_else(bad)?;
            return Ok(RingSpec::GaloisField { p, k });
        }
        if let Some(n) = s.strip_prefix('Z') {
            return Ok(RingSpec::IntegersMod(digits(n)?));
        }
        Err(bad())
    }
}

/// A constructed coefficient ring. Construction checks indecomposability.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    spec: RingSpec,
    /// `GF(p^k)` only: non-leading coefficients `c_0..c_{k-1}` of the monic modulus.
    modulus: Vec<u64>,
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        match spec {
            RingSpec::IntegersMod(n) => {
                if n < 2 {
                    return Err(Error::InvalidRingSpec(format!("Z{n}")));
                }
                if n > i64::MAX as u64 / 4 {
                    return Err(Error::UnsupportedRing {
                        ring: spec.to_string(),
                        reason: "modulus too large".into(),
                    });
                }
                if prime_power(n).is_none() {
                    return Err(Error::DecomposableRing {
                        modulus: n,
                        idempotent: nontrivial_idempotent(n),
                    });
                }
                Ok(Ring { spec, modulus: Vec::new() })
            }
            RingSpec::GaloisField { p, k } => {
                if k == 0 || !is_prime(p) {
                    return Err(Error::InvalidRingSpec(spec.to_string()));
                }
                if p.checked_pow(k).is_none_or(|q| q > 1 << 31) {
                    return Err(Error::UnsupportedRing {
                        ring: spec.to_string(),
                        reason: "field too large".into(),
                    });
                }
                let modulus = if k == 1 { Vec::new() } else { smallest_irreducible(p, k as usize) };
                Ok(Ring { spec, modulus })
            }
            RingSpec::Integers => Ok(Ring { spec, modulus: Vec::new() }),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ring::new(s.parse()?)
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn order(&self) -> Option<u64> {
        self.spec.order()
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Non-leading coefficients `c_0..c_{k-1}` of the modulus `t^k + ... + c_0`
    /// used for `GF(p^k)`, `k > 1`.
    pub fn modulus_polynomial(&self) -> Option<&[u64]> {
        if self.modulus.is_empty() {
            None
        } else {
            Some(&self.modulus)
        }
    }

    /// Human-readable description, including the modulus polynomial for
    /// extension fields.
    pub fn describe(&self) -> String {
        match (self.spec, self.modulus_polynomial()) {
            (RingSpec::GaloisField { p, k }, Some(m)) => {
                let mut poly = format!("t^{k}");
                for i in (0..m.len()).rev() {
                    if m[i] == 0 {
                        continue;
                    }
                    let c = if m[i] == 1 && i > 0 { String::new() } else { m[i].to_string() };
                    match i {
                        0 => poly.push_str(&format!(" + {}", m[i])),
                        1 => poly.push_str(&format!(" + {c}t")),
                        _ => poly.push_str(&format!(" + {c}t^{i}")),
                    }
                }
                format!("{} = F{p}[t]/({poly})", self.spec)
            }
            _ => self.spec.to_string(),
        }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    pub fn one(&self) -> RingElem {
        RingElem::ONE
    }

    /// Image of an integer under `Z -> R`.
    pub fn from_int(&self, v: i64) -> RingElem {
        match self.spec {
            RingSpec::IntegersMod(n) => RingElem(v.rem_euclid(n as i64)),
            RingSpec::GaloisField { p, .. } => RingElem(v.rem_euclid(p as i64)),
            RingSpec::Integers => RingElem(v),
        }
    }

    pub fn contains(&self, a: RingElem) -> bool {
        match self.order() {
            Some(q) => a.0 >= 0 && (a.0 as u64) < q,
            None => true,
        }
    }

    pub fn check(&self, a: RingElem) -> Result<RingElem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ForeignElement { value: a.0, ring: self.spec.to_string() })
        }
    }

    /// Checked arithmetic: both operands must be canonical elements of this ring.
    pub fn arith(&self, op: ArithOp, a: RingElem, b: RingElem) -> Result<RingElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        })
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        debug_assert!(self.contains(a) && self.contains(b));
        match self.spec {
            RingSpec::IntegersMod(n) => {
                let s = a.0 + b.0;
                RingElem(if s >= n as i64 { s - n as i64 } else { s })
            }
            RingSpec::GaloisField { p, k } => {
                if k == 1 {
                    let s = a.0 + b.0;
                    return RingElem(if s >= p as i64 { s - p as i64 } else { s });
                }
                self.digitwise(a, b, |x, y| (x + y) % p)
            }
            RingSpec::Integers => RingElem(a.0.checked_add(b.0).expect("integer overflow")),
        }
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        debug_assert!(self.contains(a));
        match self.spec {
            RingSpec::IntegersMod(n) => RingElem(if a.0 == 0 { 0 } else { n as i64 - a.0 }),
            RingSpec::GaloisField { p, k } => {
                if k == 1 {
                    return RingElem(if a.0 == 0 { 0 } else { p as i64 - a.0 });
                }
                self.digitwise(a, RingElem::ZERO, |x, _| (p - x) % p)
            }
            RingSpec::Integers => RingElem(a.0.checked_neg().expect("integer overflow")),
        }
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        debug_assert!(self.contains(a) && self.contains(b));
        match self.spec {
            RingSpec::IntegersMod(n) => {
                RingElem(((a.0 as u128 * b.0 as u128) % n as u128) as i64)
            }
            RingSpec::GaloisField { p, k } => {
                if k == 1 {
                    return RingElem(((a.0 as u128 * b.0 as u128) % p as u128) as i64);
                }
                self.poly_mul(a, b)
            }
            RingSpec::Integers => RingElem(a.0.checked_mul(b.0).expect("integer overflow")),
        }
    }

    pub fn pow(&self, a: RingElem, mut e: u64) -> RingElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        match self.spec {
            RingSpec::IntegersMod(n) => {
                let (p, _) = prime_power(n).expect("checked at construction");
                !(a.0 as u64).is_multiple_of(p)
            }
            RingSpec::GaloisField { .. } => a.0 != 0,
            RingSpec::Integers => a.0 == 1 || a.0 == -1,
        }
    }

    pub fn inverse_unit(&self, a: RingElem) -> Result<RingElem> {
        self.check(a)?;
        if !self.is_unit(a) {
            return Err(Error::NotAUnit { value: a.0, ring: self.spec.to_string() });
        }
        Ok(match self.spec {
            RingSpec::IntegersMod(n) => RingElem(mod_inverse(a.0, n as i64)),
            RingSpec::GaloisField { p, k } => self.pow(a, p.pow(k) - 2),
            RingSpec::Integers => a,
        })
    }

    /// Elements in ascending canonical order.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        match self.order() {
            Some(q) => Ok((0..q as i64).map(RingElem).collect()),
            None => Err(Error::NotEnumerable(self.spec.to_string())),
        }
    }

    pub fn units(&self) -> Result<Vec<RingElem>> {
        Ok(self.elements()?.into_iter().filter(|&a| self.is_unit(a)).collect())
    }

    pub fn idempotents(&self) -> Result<Vec<RingElem>> {
        self.spec.idempotents()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.spec.is_indecomposable()
    }

    fn digits(&self, a: RingElem) -> Vec<u64> {
        let RingSpec::GaloisField { p, k } = self.spec else { unreachable!() };
        let mut v = a.0 as u64;
        (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> RingElem {
        let RingSpec::GaloisField { p, .. } = self.spec else { unreachable!() };
        RingElem(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d) as i64)
    }

    fn digitwise(&self, a: RingElem, b: RingElem, f: impl Fn(u64, u64) -> u64) -> RingElem {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| f(x, y)).collect();
        self.encode(&out)
    }

    fn poly_mul(&self, a: RingElem, b: RingElem) -> RingElem {
        let RingSpec::GaloisField { p, k } = self.spec else { unreachable!() };
        let k = k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = alloc::vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // t^k = -(c_0 + ... + c_{k-1} t^{k-1})
        for deg in (k..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
            }
        }
        self.encode(&prod[..k])
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` with `n = p^k`, `k >= 1`.
fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        return Some((n, 1));
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// For non-prime-power `n`: the CRT idempotent that is 1 modulo the power of
/// the smallest prime factor and 0 modulo the cofactor.
fn nontrivial_idempotent(n: u64) -> u64 {
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    let mut m1 = 1;
    while n.is_multiple_of(m1 * p) {
        m1 *= p;
    }
    let m2 = n / m1;
    let inv = mod_inverse((m2 % m1) as i64, m1 as i64) as u128;
    ((m2 as u128 * inv) % n as u128) as u64
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let (mut r0, mut r1) = (n as i128, a.rem_euclid(n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(n as i128) as i64
}

/// Monic irreducible of degree `k` over `F_p` whose non-leading coefficients
/// have the smallest base-`p` code.
fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let total = p.pow(k as u32);
    for code in 0..total {
        let coeffs = to_digits(code, p, k);
        let mut poly = coeffs.clone();
        poly.push(1);
        if is_irreducible(&poly, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn to_digits(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut div = to_digits(code, p, d);
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], monic: &[u64], p: u64) -> bool {
    let mut r = num.to_vec();
    let dd = monic.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (i, &m) in monic.iter().enumerate() {
            let idx = top - dd + i;
            r[idx] = (r[idx] + (p - (c * m) % p)) % p;
        }
    }
    r.iter().all(|&c| c == 0)
}
