//! Finite fields `GF(p^k)` in the polynomial basis, plus the norm map onto a subfield.
//!
//! Elements are identified with their canonical index `sum coeffs[i] * p^i`, which is also
//! the vertex label used by every construction in this crate. Multiplication goes through
//! lazily built exp/log tables; the fields used here are tiny (at most `2^20` elements).

use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

/// Largest field order accepted by [`make_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the cap of {MAX_FIELD_ORDER} elements")]
    TooLarge { p: u32, k: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element index {index} out of range for a field of order {order}")]
    IndexOutOfRange { index: u64, order: u32 },
    #[error("field of order {actual} is not GF(q^(s-1)) for q = {q}, s = {s}")]
    OrderMismatch { actual: u32, q: u32, s: u32 },
    #[error("norm exponent s must be at least 2, got {0}")]
    InvalidNormDegree(u32),
}

pub fn is_prime(n: u64) -> bool {
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

/// Splits `q` into `(p, k)` with `q = p^k`, `p` prime.
pub fn prime_power(q: u64) -> Result<(u32, u32), FieldError> {
    if q < 2 {
        return Err(FieldError::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(FieldError::NotPrimePower(q));
    }
    Ok((p as u32, k))
}

// Dense polynomials over GF(p), constant term first, no trailing zeros.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p) as u64;
    while r.len() > df {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for (i, &fc) in f.iter().enumerate() {
            let j = dr - df + i;
            let sub = c * fc as u64 % p as u64;
            r[j] = ((r[j] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, f, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Irreducibility of a monic `f` of degree `k >= 1` over GF(p): no roots in GF(p) and
/// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= k/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    for c in 0..p as u64 {
        let mut acc = 0u64;
        for &coef in f.iter().rev() {
            acc = (acc * c + coef as u64) % p as u64;
        }
        if acc == 0 {
            return false;
        }
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u32];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

struct MulTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `GF(p^k)` with a fixed monic irreducible modulus.
pub struct FieldDescriptor {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    tables: OnceLock<MulTables>,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds `GF(p^k)` using the smallest monic irreducible modulus, polynomials compared by
/// their value `Σ c_i p^i` (equivalently, lexicographically from the leading coefficient
/// down), which gives `x^2 + 1` over `GF(3)` and `x^3 + x + 1` over `GF(2)`.
pub fn make_field(p: u32, k: u32) -> Result<Arc<FieldDescriptor>, FieldError> {
    FieldDescriptor::new(p, k).map(Arc::new)
}

impl FieldDescriptor {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if k < 1 {
            return Err(FieldError::ZeroDegree);
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= MAX_FIELD_ORDER);
        let order = order.ok_or(FieldError::TooLarge { p, k })? as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, k as usize)
        };
        Ok(Self {
            p,
            k,
            order,
            modulus,
            tables: OnceLock::new(),
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the modulus, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coeffs(&self, index: u32) -> Vec<u32> {
        let mut rest = index;
        (0..self.k)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn index_of(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn tables(&self) -> &MulTables {
        self.tables.get_or_init(|| self.build_tables())
    }

    fn poly_mul_index(&self, a: u32, b: u32) -> u32 {
        let pa = self.coeffs(a);
        let pb = self.coeffs(b);
        let mut pa = pa;
        let mut pb = pb;
        trim(&mut pa);
        trim(&mut pb);
        self.index_of(&poly_mulmod(&pa, &pb, &self.modulus, self.p))
    }

    fn build_tables(&self) -> MulTables {
        let group = self.order - 1;
        let primes: Vec<u32> = (2..=group)
            .filter(|&d| group.is_multiple_of(d) && is_prime(d as u64))
            .collect();
        let slow_pow = |base: u32, mut e: u32| {
            let mut acc = 1;
            let mut b = base;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.poly_mul_index(acc, b);
                }
                b = self.poly_mul_index(b, b);
                e >>= 1;
            }
            acc
        };
        let generator = (1..self.order)
            .find(|&g| primes.iter().all(|&r| slow_pow(g, group / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1;
        for i in 0..group {
            exp.push(x);
            log[x as usize] = i;
            x = self.poly_mul_index(x, generator);
        }
        MulTables { exp, log }
    }

    /// The multiplicative generator used by the internal tables (smallest index).
    pub fn generator(&self) -> u32 {
        let t = self.tables();
        if t.exp.len() > 1 {
            t.exp[1]
        } else {
            1
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        let group = self.order as u64 - 1;
        let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % group;
        t.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = self.tables();
        let group = self.order - 1;
        Some(t.exp[((group - t.log[a as usize]) % group) as usize])
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1`.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element(self: &Arc<Self>, index: u32) -> Result<FieldElement, FieldError> {
        if index >= self.order {
            return Err(FieldError::IndexOutOfRange {
                index: index as u64,
                order: self.order,
            });
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            index,
        })
    }
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    // Counter over (c_0, ..., c_{k-1}) with c_0 the least significant digit.
    let total = (p as u64).pow(k as u32);
    for code in 0..total {
        let mut f = vec![0u32; k + 1];
        let mut rest = code;
        for c in f.iter_mut().take(k) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[k] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element of a specific field; arithmetic checks that both operands share a field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<FieldDescriptor>,
    index: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{})[{:?}]",
            self.field.p,
            self.field.k,
            self.field.coeffs(self.index)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.index)
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    fn with_index(&self, index: u32) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            index,
        }
    }

    fn check_same(&self, other: &FieldElement) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        Ok(self.with_index(self.field.add(self.index, other.index)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        Ok(self.with_index(self.field.mul(self.index, other.index)))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        let i = self.field.inv(self.index).ok_or(FieldError::ZeroInverse)?;
        Ok(self.with_index(i))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with_index(self.field.pow(self.index, e))
    }
}

/// Single entry point mirroring the four field operations. `b` is required for
/// `Add` and `Mul` and ignored otherwise.
pub fn arith(op: ArithOp, a: &FieldElement, b: Option<&FieldElement>) -> Result<FieldElement, FieldError> {
    match op {
        ArithOp::Add => a.add(b.ok_or(FieldError::DescriptorMismatch)?),
        ArithOp::Mul => a.mul(b.ok_or(FieldError::DescriptorMismatch)?),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow(e) => Ok(a.pow(e)),
    }
}

/// The norm `N(x) = x^(1 + q + ... + q^(s-2))` from `GF(q^(s-1))` onto `GF(q)`.
///
/// The image lands in the fixed field of the `q`-power Frobenius. It is re-expressed in the
/// standalone `GF(q)` descriptor through the embedding that sends the standalone generator
/// `t` to the smallest-index root of the `GF(q)` modulus inside the fixed field.
pub struct NormMap {
    big: Arc<FieldDescriptor>,
    small: Arc<FieldDescriptor>,
    q: u32,
    s: u32,
    /// `table[x]` = canonical index in `GF(q)` of `N(x)`.
    table: Vec<u32>,
    /// `embed[y]` = index in the big field of the standalone element `y`.
    embed: Vec<u32>,
}

impl fmt::Debug for NormMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormMap")
            .field("q", &self.q)
            .field("s", &self.s)
            .finish()
    }
}

impl NormMap {
    pub fn new(q: u32, s: u32) -> Result<Self, FieldError> {
        if s < 2 {
            return Err(FieldError::InvalidNormDegree(s));
        }
        let (p, kq) = prime_power(q as u64)?;
        let big = make_field(p, kq * (s - 1))?;
        Self::with_field(big, q, s)
    }

    /// Uses an existing descriptor for `GF(q^(s-1))`.
    pub fn with_field(big: Arc<FieldDescriptor>, q: u32, s: u32) -> Result<Self, FieldError> {
        if s < 2 {
            return Err(FieldError::InvalidNormDegree(s));
        }
        let (p, kq) = prime_power(q as u64)?;
        if big.p != p || big.k != kq * (s - 1) {
            return Err(FieldError::OrderMismatch {
                actual: big.order,
                q,
                s,
            });
        }
        let small = make_field(p, kq)?;
        let embed = subfield_embedding(&big, &small, q);
        let mut back = vec![u32::MAX; big.order as usize];
        for (y, &x) in embed.iter().enumerate() {
            back[x as usize] = y as u32;
        }
        let exponent = ((q as u64).pow(s - 1) - 1) / (q as u64 - 1);
        let table = (0..big.order)
            .map(|x| {
                let nx = big.pow(x, exponent);
                let y = back[nx as usize];
                debug_assert!(y != u32::MAX, "norm must land in the subfield");
                y
            })
            .collect();
        Ok(Self {
            big,
            small,
            q,
            s,
            table,
            embed,
        })
    }

    pub fn big_field(&self) -> &Arc<FieldDescriptor> {
        &self.big
    }

    pub fn small_field(&self) -> &Arc<FieldDescriptor> {
        &self.small
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Norm of a big-field index, as a `GF(q)` index.
    #[inline]
    pub fn norm_index(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Big-field index of the image of a `GF(q)` element under the subfield embedding.
    pub fn embed_index(&self, y: u32) -> u32 {
        self.embed[y as usize]
    }

    pub fn norm(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if *x.field != *self.big {
            return Err(FieldError::OrderMismatch {
                actual: x.field.order,
                q: self.q,
                s: self.s,
            });
        }
        self.small.element(self.norm_index(x.index))
    }

    /// Number of `x` in `GF(q^(s-1))` with `N(x) = y`, by enumeration.
    pub fn preimage_count(&self, y: &FieldElement) -> Result<u64, FieldError> {
        if *y.field != *self.small {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(self.table.iter().filter(|&&v| v == y.index).count() as u64)
    }
}

fn subfield_embedding(big: &FieldDescriptor, small: &FieldDescriptor, q: u32) -> Vec<u32> {
    let p = small.p;
    if small.k == 1 {
        // Constants embed as themselves.
        return (0..p).collect();
    }
    let fixed: Vec<u32> = (0..big.order).filter(|&z| big.pow(z, q as u64) == z).collect();
    let root = fixed
        .iter()
        .copied()
        .find(|&z| {
            let mut acc = 0;
            for &c in small.modulus.iter().rev() {
                acc = big.add(big.mul(acc, z), c);
            }
            acc == 0
        })
        .expect("the subfield contains a root of its own modulus");
    (0..small.order)
        .map(|y| {
            let mut acc = 0;
            for &c in small.coeffs(y).iter().rev() {
                acc = big.add(big.mul(acc, root), c);
            }
            acc
        })
        .collect()
}

/// `N(x)` for an element of `GF(q^(s-1))`, returned as an element of the standalone `GF(q)`.
pub fn norm(x: &FieldElement, q: u32, s: u32) -> Result<FieldElement, FieldError> {
    NormMap::with_field(Arc::clone(&x.field), q, s)?.norm(x)
}

/// Exact size of the fiber `{x : N(x) = y}`.
pub fn norm_preimage_count(q: u32, s: u32, y: &FieldElement) -> Result<u64, FieldError> {
    NormMap::new(q, s)?.preimage_count(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn smallest_modulus_matches_exhaustive_scan() {
        // Oracle: a monic polynomial of degree <= 3 is irreducible iff it has no root.
        for p in [2u32, 3, 5] {
            for k in 2..=3usize {
                let mut best = None;
                let total = (p as u64).pow(k as u32);
                for code in 0..total {
                    let mut f = vec![0u32; k + 1];
                    let mut rest = code;
                    for c in f.iter_mut().take(k) {
                        *c = (rest % p as u64) as u32;
                        rest /= p as u64;
                    }
                    f[k] = 1;
                    let has_root = (0..p as u64)
                        .any(|c| f.iter().rev().fold(0u64, |acc, &co| (acc * c + co as u64) % p as u64) == 0);
                    if !has_root {
                        best = Some(f);
                        break;
                    }
                }
                assert_eq!(make_field(p, k as u32).unwrap().modulus(), best.unwrap().as_slice());
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(FieldError::TooLarge { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn small_arithmetic_examples() {
        let f3 = make_field(3, 1).unwrap();
        let one = f3.element(1).unwrap();
        let two = f3.element(2).unwrap();
        assert_eq!(one.add(&two).unwrap().index(), 0);

        let f9 = make_field(3, 2).unwrap();
        let x = f9.element(f9.index_of(&[0, 1])).unwrap();
        assert_eq!(x.mul(&x).unwrap().coeffs(), vec![2, 0]);
        assert_eq!(x.inv().unwrap().coeffs(), vec![0, 2]);
        assert_eq!(arith(ArithOp::Pow(4), &x, None).unwrap().index(), 1);
    }

    #[test]
    fn arithmetic_errors() {
        let f9 = make_field(3, 2).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let a = f9.element(1).unwrap();
        let b = f3.element(1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), FieldError::DescriptorMismatch);
        assert_eq!(f9.element(0).unwrap().inv().unwrap_err(), FieldError::ZeroInverse);
        // Equal descriptors built separately are interchangeable.
        let other9 = make_field(3, 2).unwrap();
        assert!(a.mul(&other9.element(5).unwrap()).is_ok());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (2, 4), (2, 5)] {
            let f = FieldDescriptor::new(p, k).unwrap();
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // mul agrees with direct polynomial multiplication
                    assert_eq!(f.mul(a, b), f.poly_mul_index(a, b));
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples_over_gf9() {
        let map = NormMap::new(3, 3).unwrap();
        let big = map.big_field().clone();
        assert_eq!(big.order(), 9);
        assert_eq!(map.norm(&big.element(1).unwrap()).unwrap().index(), 1);
        assert_eq!(map.norm(&big.element(0).unwrap()).unwrap().index(), 0);
        let g = big.element(big.generator()).unwrap();
        assert_eq!(map.norm(&g).unwrap().index(), 2);
        // any generator, not just the table's
        for x in 1..9 {
            let order = (1..=8u64).find(|&e| big.pow(x, e) == 1).unwrap();
            if order == 8 {
                assert_eq!(map.norm_index(x), 2);
            }
        }
    }

    #[test]
    fn preimage_counts_gf9() {
        let map = NormMap::new(3, 3).unwrap();
        let small = map.small_field().clone();
        let counts: Vec<u64> = (0..3)
            .map(|y| map.preimage_count(&small.element(y).unwrap()).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 4, 4]);
        assert_eq!(norm_preimage_count(3, 3, &small.element(1).unwrap()).unwrap(), 4);
    }

    #[test]
    fn norm_errors() {
        assert_eq!(NormMap::new(3, 1).unwrap_err(), FieldError::InvalidNormDegree(1));
        assert_eq!(NormMap::new(6, 2).unwrap_err(), FieldError::NotPrimePower(6));
        let f27 = make_field(3, 3).unwrap();
        assert!(matches!(
            norm(&f27.element(1).unwrap(), 3, 3),
            Err(FieldError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        for (q, s) in [(4u32, 3u32), (8, 3), (9, 2), (4, 2)] {
            let map = NormMap::new(q, s).unwrap();
            let (big, small) = (map.big_field(), map.small_field());
            for a in 0..q {
                for b in 0..q {
                    let ea = map.embed_index(a);
                    let eb = map.embed_index(b);
                    assert_eq!(map.embed_index(small.add(a, b)), big.add(ea, eb));
                    assert_eq!(map.embed_index(small.mul(a, b)), big.mul(ea, eb));
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert_eq!(prime_power(49).unwrap(), (7, 2));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }
}
