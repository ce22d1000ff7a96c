//! Finite local commutative rings: `Z/p^k`, `GF(p^k)` and truncated
//! polynomial rings `GF(q)[x]/(x^m)`.
//!
//! Elements are addressed by a [`Code`], a bijective integer encoding in
//! `0..size`. For `Z/p^k` the code is the residue itself; for the polynomial
//! kinds it is the little-endian digit string of the coefficients (base `p`
//! for Galois fields, base `q` for truncated rings, where each base-`q` digit
//! is itself a `GF(q)` code).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{checked_pow, is_prime, prime_power};

pub type Code = u32;

/// Largest ring order accepted for a single local factor.
pub const MAX_LOCAL_SIZE: u64 = 1 << 24;

const TABLE_LIMIT: u32 = 256;

/// Largest non-prime field order given log/antilog tables.
const LOG_TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalKind {
    /// `Z/p^k`.
    IntegerModPrimePower { p: u32, k: u32 },
    /// `GF(p^k)` with the lexicographically smallest monic irreducible modulus.
    GaloisField { p: u32, k: u32 },
    /// `GF(q)[x]/(x^m)`.
    TruncatedPoly { q: u32, m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// Powers of a primitive element and their inverse map.
#[derive(Debug, PartialEq, Eq)]
struct LogTables {
    /// `exp[i] = g^i` for `i < 2(q - 1)`, doubled so sums of logs need no reduction.
    exp: Vec<Code>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// `GF(p^k)` arithmetic on little-endian base-`p` codes.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PrimeExtension {
    p: u32,
    k: u32,
    order: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    logs: Option<Arc<LogTables>>,
}

impl PrimeExtension {
    fn new(p: u32, k: u32) -> Self {
        let order = checked_pow(p as u64, k).expect("order checked by caller") as u32;
        let modulus = smallest_irreducible(p, k);
        let mut field = PrimeExtension {
            p,
            k,
            order,
            modulus,
            logs: None,
        };
        if k > 1 && order <= LOG_TABLE_LIMIT {
            field.logs = Some(Arc::new(field.log_tables()));
        }
        field
    }

    fn log_tables(&self) -> LogTables {
        let units = (self.order - 1) as usize;
        for g in 2..self.order {
            let mut exp = Vec::with_capacity(2 * units);
            let mut x: Code = 1;
            loop {
                exp.push(x);
                x = self.mul_poly(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == units {
                let mut log = vec![0; self.order as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                exp.extend_from_within(..);
                return LogTables { exp, log };
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn inverse(&self, a: Code) -> Option<Code> {
        let t = self.logs.as_ref()?;
        let units = self.order - 1;
        Some(t.exp[((units - t.log[a as usize]) % units) as usize])
    }

    fn digits(&self, mut a: Code) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn encode_digits(&self, digits: &[u32]) -> Code {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: Code, b: Code) -> Code {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg(&self, a: Code) -> Code {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        if self.p == 2 {
            return a;
        }
        let (mut a, mut place, mut out) = (a, 1, 0);
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: Code, b: Code) -> Code {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Code;
        }
        match &self.logs {
            Some(_) if a == 0 || b == 0 => 0,
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: Code, b: Code) -> Code {
        let p = self.p as u64;
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        reduce_monic(&mut prod, &self.modulus, p);
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.encode_digits(&low)
    }
}

/// Reduces `poly` (low degree first) modulo a monic `modulus` in place.
fn reduce_monic(poly: &mut [u64], modulus: &[u32], p: u64) {
    let k = modulus.len() - 1;
    for i in (k..poly.len()).rev() {
        let c = poly[i];
        if c == 0 {
            continue;
        }
        for j in 0..k {
            let sub = c * modulus[j] as u64 % p;
            poly[i - k + j] = (poly[i - k + j] + p - sub) % p;
        }
        poly[i] = 0;
    }
}

/// True when the monic `divisor` divides `poly` over `Z/p`.
fn divides(divisor: &[u32], poly: &[u32], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    reduce_monic(&mut rem, divisor, p);
    rem.iter().all(|&c| c == 0)
}

/// Monic polynomial `x^deg + (low part encoded by t)`, low degree first.
fn monic_from_index(p: u32, deg: u32, mut t: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        out.push((t % p as u64) as u32);
        t /= p as u64;
    }
    out.push(1);
    out
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = (poly.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = checked_pow(p as u64, d).unwrap();
        for t in 0..count {
            if divides(&monic_from_index(p, d, t), poly, p as u64) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k` over `Z/p`,
/// coefficients compared from the highest degree down. Iterating the low part
/// as an ascending base-`p` integer visits candidates in exactly that order.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = checked_pow(p as u64, k).unwrap();
    (0..count)
        .map(|t| monic_from_index(p, k, t))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[derive(Clone)]
pub struct LocalRing {
    kind: LocalKind,
    size: u32,
    radical_size: u32,
    residue_field_size: u32,
    /// Residue field arithmetic (`Z/p` for integer rings, the ring itself for
    /// Galois fields, the coefficient field for truncated rings).
    field: PrimeExtension,
    mul_table: Option<Arc<[Code]>>,
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalRing")
            .field("kind", &self.kind)
            .field("size", &self.size)
            .field("radical_size", &self.radical_size)
            .field("residue_field_size", &self.residue_field_size)
            .finish()
    }
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for LocalRing {}

impl LocalRing {
    pub fn new(kind: LocalKind) -> Result<Self> {
        let (size, radical_size, residue_field_size, field) = match kind {
            LocalKind::IntegerModPrimePower { p, k } => {
                check_prime(p)?;
                let size = checked_size(p, k)?;
                (size, size / p, p, PrimeExtension::new(p, 1))
            }
            LocalKind::GaloisField { p, k } => {
                check_prime(p)?;
                let size = checked_size(p, k)?;
                (size, 1, size, PrimeExtension::new(p, k))
            }
            LocalKind::TruncatedPoly { q, m } => {
                let (p, kq) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
                let size = checked_size(q, m)?;
                (size, size / q, q, PrimeExtension::new(p as u32, kq))
            }
        };
        let mut ring = LocalRing {
            kind,
            size,
            radical_size,
            residue_field_size,
            field,
            mul_table: None,
        };
        if matches!(kind, LocalKind::TruncatedPoly { .. }) && size <= TABLE_LIMIT {
            let table: Vec<Code> = (0..size * size)
                .map(|i| ring.mul_direct(i / size, i % size))
                .collect();
            ring.mul_table = Some(table.into());
        }
        Ok(ring)
    }

    /// `Z/p^k`.
    pub fn integer_mod(p: u32, k: u32) -> Result<Self> {
        Self::new(LocalKind::IntegerModPrimePower { p, k })
    }

    /// `GF(p^k)`.
    pub fn galois(p: u32, k: u32) -> Result<Self> {
        Self::new(LocalKind::GaloisField { p, k })
    }

    /// `GF(q)[x]/(x^m)`.
    pub fn truncated(q: u32, m: u32) -> Result<Self> {
        Self::new(LocalKind::TruncatedPoly { q, m })
    }

    pub fn kind(&self) -> LocalKind {
        self.kind
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the maximal ideal.
    pub fn radical_size(&self) -> u32 {
        self.radical_size
    }

    pub fn residue_field_size(&self) -> u32 {
        self.residue_field_size
    }

    pub fn is_field(&self) -> bool {
        self.radical_size == 1
    }

    /// Modulus of the Galois field behind the ring (low degree first).
    pub fn modulus(&self) -> &[u32] {
        &self.field.modulus
    }

    pub fn contains(&self, a: Code) -> bool {
        a < self.size
    }

    pub fn zero(&self) -> Code {
        0
    }

    pub fn one(&self) -> Code {
        1
    }

    pub fn minus_one(&self) -> Code {
        self.neg(1)
    }

    fn check(&self, a: Code) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::CodeOutOfRange {
                code: a,
                size: self.size,
            })
        }
    }

    /// Checked arithmetic entry point; `b` is ignored for [`ArithOp::Neg`].
    pub fn arith(&self, op: ArithOp, a: Code, b: Code) -> Result<Code> {
        self.check(a)?;
        if op != ArithOp::Neg {
            self.check(b)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    pub fn add(&self, a: Code, b: Code) -> Code {
        match self.kind {
            LocalKind::IntegerModPrimePower { .. } => {
                ((a as u64 + b as u64) % self.size as u64) as Code
            }
            LocalKind::GaloisField { .. } => self.field.add(a, b),
            LocalKind::TruncatedPoly { q, m } => {
                let (da, db) = (base_digits(a, q, m), base_digits(b, q, m));
                let sum: Vec<Code> = da.iter().zip(&db).map(|(&x, &y)| self.field.add(x, y)).collect();
                from_base_digits(&sum, q)
            }
        }
    }

    pub fn neg(&self, a: Code) -> Code {
        match self.kind {
            LocalKind::IntegerModPrimePower { .. } => (self.size - a) % self.size,
            LocalKind::GaloisField { .. } => self.field.neg(a),
            LocalKind::TruncatedPoly { q, m } => {
                let d: Vec<Code> = base_digits(a, q, m).iter().map(|&x| self.field.neg(x)).collect();
                from_base_digits(&d, q)
            }
        }
    }

    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Code, b: Code) -> Code {
        match &self.mul_table {
            Some(table) => table[(a * self.size + b) as usize],
            None => self.mul_direct(a, b),
        }
    }

    fn mul_direct(&self, a: Code, b: Code) -> Code {
        match self.kind {
            LocalKind::IntegerModPrimePower { .. } => {
                ((a as u64 * b as u64) % self.size as u64) as Code
            }
            LocalKind::GaloisField { .. } => self.field.mul(a, b),
            LocalKind::TruncatedPoly { q, m } => {
                let (da, db) = (base_digits(a, q, m), base_digits(b, q, m));
                let m = m as usize;
                let mut prod = vec![0; m];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().take(m - i).enumerate() {
                        prod[i + j] = self.field.add(prod[i + j], self.field.mul(x, y));
                    }
                }
                from_base_digits(&prod, q)
            }
        }
    }

    pub fn pow(&self, a: Code, mut e: u64) -> Code {
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

    /// Image of `a` in the residue field, as a code of [`Self::residue_field`].
    pub fn residue_class(&self, a: Code) -> Code {
        match self.kind {
            LocalKind::IntegerModPrimePower { p, .. } => a % p,
            LocalKind::GaloisField { .. } => a,
            LocalKind::TruncatedPoly { q, .. } => a % q,
        }
    }

    pub fn in_maximal_ideal(&self, a: Code) -> bool {
        self.residue_class(a) == 0
    }

    pub fn is_unit(&self, a: Code) -> bool {
        !self.in_maximal_ideal(a)
    }

    /// Code of `-1` in the residue field.
    pub fn residue_minus_one(&self) -> Code {
        self.field.p - 1
    }

    pub fn unit_count(&self) -> u32 {
        self.size - self.radical_size
    }

    pub fn inverse(&self, a: Code) -> Result<Code> {
        self.check(a)?;
        if !self.is_unit(a) {
            return Err(Error::NotUnit(a));
        }
        if let LocalKind::GaloisField { .. } = self.kind {
            if let Some(inv) = self.field.inverse(a) {
                return Ok(inv);
            }
        }
        Ok(self.pow(a, self.unit_count() as u64 - 1))
    }

    /// The residue field as a ring of its own. Prime fields come back as `Z/p`.
    pub fn residue_field(&self) -> LocalRing {
        let (p, k) = match self.kind {
            LocalKind::IntegerModPrimePower { p, .. } => (p, 1),
            LocalKind::GaloisField { .. } => return self.clone(),
            LocalKind::TruncatedPoly { .. } => (self.field.p, self.field.k),
        };
        let kind = if k == 1 {
            LocalKind::IntegerModPrimePower { p, k: 1 }
        } else {
            LocalKind::GaloisField { p, k }
        };
        LocalRing::new(kind).expect("residue field of a valid ring is valid")
    }

    /// Codes of the maximal ideal, ascending.
    /// Elements with residue class `r`, ascending.
    pub fn fiber(&self, r: Code) -> impl Iterator<Item = Code> + '_ {
        (0..self.radical_size).map(move |t| r + t * self.residue_field_size)
    }

    pub fn maximal_ideal(&self) -> Vec<Code> {
        (0..self.size).filter(|&a| self.in_maximal_ideal(a)).collect()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

fn checked_size(base: u32, exp: u32) -> Result<u32> {
    if exp == 0 {
        return Err(Error::TrivialRing);
    }
    match checked_pow(base as u64, exp) {
        Some(n) if n <= MAX_LOCAL_SIZE => Ok(n as u32),
        Some(n) => Err(Error::TooLarge(n)),
        None => Err(Error::TooLarge(u64::MAX)),
    }
}

fn base_digits(mut a: Code, q: u32, m: u32) -> Vec<Code> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(a % q);
        a /= q;
    }
    out
}

fn from_base_digits(digits: &[Code], q: u32) -> Code {
    digits.iter().rev().fold(0, |acc, &d| acc * q + d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog_up_to(n: u32) -> Vec<LocalRing> {
        let mut out = Vec::new();
        for q in 2..=n {
            let Some((p, k)) = prime_power(q as u64) else { continue };
            let (p, k) = (p as u32, k);
            out.push(LocalRing::integer_mod(p, k).unwrap());
            if k >= 2 {
                out.push(LocalRing::galois(p, k).unwrap());
            }
            for m in 2..=k {
                if k % m == 0 {
                    out.push(LocalRing::truncated(p.pow(k / m), m).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn structure_of_order_four_rings() {
        let z4 = LocalRing::integer_mod(2, 2).unwrap();
        assert_eq!((z4.size(), z4.radical_size(), z4.residue_field_size()), (4, 2, 2));
        let gf4 = LocalRing::galois(2, 2).unwrap();
        assert_eq!((gf4.size(), gf4.radical_size(), gf4.residue_field_size()), (4, 1, 4));
        assert_eq!(gf4.modulus(), &[1, 1, 1]);
        let dual = LocalRing::truncated(2, 2).unwrap();
        assert_eq!((dual.size(), dual.radical_size(), dual.residue_field_size()), (4, 2, 2));
    }

    #[test]
    fn smallest_moduli() {
        // x^3 + x + 1 precedes x^3 + x^2 + 1 when compared from the top.
        assert_eq!(LocalRing::galois(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        // x^2 + 1 is irreducible over Z/3 and is the first candidate without a root.
        assert_eq!(LocalRing::galois(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(LocalRing::galois(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = LocalRing::integer_mod(2, 2).unwrap();
        assert_eq!(z4.arith(ArithOp::Mul, 2, 3), Ok(2));
        let gf4 = LocalRing::galois(2, 2).unwrap();
        assert_eq!(gf4.arith(ArithOp::Mul, 2, 2), Ok(3));
        let dual = LocalRing::truncated(2, 2).unwrap();
        assert_eq!(dual.arith(ArithOp::Mul, 2, 2), Ok(0));
        assert_eq!(
            z4.arith(ArithOp::Add, 4, 0),
            Err(Error::CodeOutOfRange { code: 4, size: 4 })
        );
        // b is ignored for negation
        assert_eq!(z4.arith(ArithOp::Neg, 1, 99), Ok(3));
    }

    /// Polynomial reduction oracle for GF(4): a = x, a^2 = x^2 = x + 1 mod x^2+x+1.
    #[test]
    fn gf4_matches_hand_reduction() {
        let gf4 = LocalRing::galois(2, 2).unwrap();
        // codes: 0, 1, x=2, x+1=3
        let expected = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(gf4.mul(a, b), expected[a as usize][b as usize], "{a}*{b}");
            }
        }
    }

    #[test]
    fn units_and_inverses() {
        let z4 = LocalRing::integer_mod(2, 2).unwrap();
        assert!(z4.is_unit(3));
        assert_eq!(z4.inverse(3), Ok(3));
        assert_eq!(z4.inverse(2), Err(Error::NotUnit(2)));
        let dual = LocalRing::truncated(2, 2).unwrap();
        assert!(!dual.is_unit(2));
        let z9 = LocalRing::integer_mod(3, 2).unwrap();
        assert_eq!(z9.inverse(2), Ok(5));
    }

    #[test]
    fn residue_classes() {
        let z4 = LocalRing::integer_mod(2, 2).unwrap();
        assert_eq!(z4.residue_class(3), 1);
        let dual = LocalRing::truncated(2, 2).unwrap();
        assert_eq!(dual.residue_class(3), 1);
        let gf4 = LocalRing::galois(2, 2).unwrap();
        assert_eq!(gf4.residue_class(2), 2);
        assert_eq!(LocalRing::truncated(4, 2).unwrap().residue_field(), gf4);
        assert_eq!(z4.residue_field(), LocalRing::integer_mod(2, 1).unwrap());
        for ring in catalog_up_to(32) {
            assert_eq!(ring.residue_minus_one(), ring.residue_field().minus_one());
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(LocalRing::integer_mod(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(LocalRing::galois(2, 0).unwrap_err(), Error::TrivialRing);
        assert_eq!(LocalRing::truncated(6, 2).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(LocalRing::truncated(2, 0).unwrap_err(), Error::TrivialRing);
        assert!(matches!(LocalRing::integer_mod(2, 40), Err(Error::TooLarge(_))));
    }

    #[test]
    fn ring_axioms_exhaustive_up_to_32() {
        for ring in catalog_up_to(32) {
            let n = ring.size();
            for a in 0..n {
                assert_eq!(ring.add(a, ring.neg(a)), 0, "{ring:?}");
                assert_eq!(ring.mul(a, 1), a, "{ring:?}");
                for b in 0..n {
                    assert_eq!(ring.add(a, b), ring.add(b, a), "{ring:?}");
                    assert_eq!(ring.mul(a, b), ring.mul(b, a), "{ring:?}");
                    for c in 0..n {
                        assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
                        assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
                        assert_eq!(
                            ring.mul(a, ring.add(b, c)),
                            ring.add(ring.mul(a, b), ring.mul(a, c)),
                            "{ring:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fibers_are_residue_classes() {
        for ring in catalog_up_to(128) {
            let q = ring.residue_field_size();
            for r in 0..q {
                let direct: Vec<Code> = (0..ring.size()).filter(|&a| ring.residue_class(a) == r).collect();
                assert_eq!(ring.fiber(r).collect::<Vec<_>>(), direct, "{ring:?} r={r}");
            }
        }
    }

    #[test]
    fn units_are_exactly_invertible_elements() {
        for ring in catalog_up_to(64) {
            let n = ring.size();
            let mut units = 0;
            for a in 0..n {
                let invertible = (0..n).any(|b| ring.mul(a, b) == 1);
                assert_eq!(ring.is_unit(a), invertible, "{ring:?} a={a}");
                assert_eq!(ring.is_unit(a), ring.residue_class(a) != 0);
                if invertible {
                    units += 1;
                    assert_eq!(ring.mul(a, ring.inverse(a).unwrap()), 1);
                }
            }
            let q = ring.residue_field_size();
            assert_eq!(units * q, n * (q - 1), "{ring:?}");
            assert_eq!(ring.maximal_ideal().len() as u32, n / q);
        }
    }

    #[test]
    fn residue_map_is_a_homomorphism() {
        for ring in catalog_up_to(32) {
            let field = ring.residue_field();
            assert!(field.is_field());
            for a in 0..ring.size() {
                for b in 0..ring.size() {
                    let (ra, rb) = (ring.residue_class(a), ring.residue_class(b));
                    assert_eq!(ring.residue_class(ring.add(a, b)), field.add(ra, rb));
                    assert_eq!(ring.residue_class(ring.mul(a, b)), field.mul(ra, rb));
                }
            }
        }
    }

    #[test]
    fn galois_fields_have_no_zero_divisors() {
        for (p, k) in [(2, 5), (3, 3), (5, 2), (7, 2)] {
            let f = LocalRing::galois(p, k).unwrap();
            for a in 1..f.size() {
                assert_eq!(f.mul(a, f.inverse(a).unwrap()), 1);
            }
        }
    }
}
