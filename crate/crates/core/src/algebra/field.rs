use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A field element, encoded as an integer in `0..q`.
///
/// For `q = p^e` with `e > 1` the integer is the base-`p` digit encoding of
/// the polynomial representative: digit `i` is the coefficient of `x^i`.
pub type Elem = u16;

/// Irreducible moduli for the prime powers we can build without help,
/// coefficients listed from the constant term up to the (monic) leading term.
const BUILTIN_MODULI: &[(u64, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[1, 0, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 0, 1]),
    (27, &[1, 2, 0, 1]),
];

const MAX_ORDER: u64 = 1 << 16;
const TABLE_LIMIT: u32 = 256;

/// Arithmetic context for `F_q`, `q = p^e`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    /// Builds `F_q`, using the built-in modulus table for proper prime powers.
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            return Self::build(p, 1, Vec::new());
        }
        match BUILTIN_MODULI.iter().find(|(order, _)| *order == q) {
            Some((_, m)) => Self::build(p, e, m.to_vec()),
            None => Err(Error::NoBuiltinModulus(q)),
        }
    }

    /// Builds `F_q` from an explicit modulus (`e + 1` coefficients, constant
    /// term first, monic). For prime `q` the modulus must be empty.
    pub fn with_modulus(q: u64, modulus: &[u32]) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        if e == 1 {
            if !modulus.is_empty() {
                return Err(Error::InvalidModulus(format!("prime field F_{q} takes no modulus")));
            }
            return Self::build(p, 1, Vec::new());
        }
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients for degree {e}, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient {c} is not in F_{p}")));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over F_{p}")));
        }
        Self::build(p, e, modulus.to_vec())
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(e);
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: Vec::new(),
        };
        field.neg = (0..q).map(|a| field.slow_neg(a) as Elem).collect();
        if q <= TABLE_LIMIT {
            field.add = (0..q * q).map(|i| field.slow_add(i / q, i % q) as Elem).collect();
        }
        let generator = (1..q)
            .find(|&g| field.slow_order(g) == q - 1)
            .expect("the multiplicative group of a field is cyclic");
        let order = (q - 1) as usize;
        let mut exp = vec![0 as Elem; 2 * order];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            *slot = x as Elem;
            log[x as usize] = i as u32;
            x = field.slow_mul(x, generator);
        }
        for i in 0..order {
            exp[order + i] = exp[i];
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The modulus coefficients (empty for a prime field).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    /// Validates an integer as a field element.
    pub fn element(&self, a: u32) -> Result<Elem> {
        if a < self.q {
            Ok(a as Elem)
        } else {
            Err(Error::NotAnElement(a))
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a as u32 + b as u32;
            return if s >= self.p { (s - self.p) as Elem } else { s as Elem };
        }
        if !self.add.is_empty() {
            return self.add[a as usize * self.q as usize + b as usize];
        }
        self.slow_add(a as u32, b as u32) as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.recip(a))
    }

    /// Inverse of a known nonzero element.
    #[inline]
    pub(crate) fn recip(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.e as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn slow_neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
        let reduced = poly_rem(&prod, &self.modulus, self.p);
        let mut d = vec![0u32; self.e as usize];
        d[..reduced.len()].copy_from_slice(&reduced);
        self.undigits(&d)
    }

    fn slow_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut order = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            order += 1;
            if order > self.q {
                // only reachable for a zero divisor, which a valid modulus excludes
                return 0;
            }
        }
        order
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

fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::InvalidQ(q));
    }
    if q > MAX_ORDER {
        return Err(Error::FieldTooLarge(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a monic `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let deg_m = m.len() - 1;
    while r.len() > deg_m {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg_m;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(m, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_arithmetic() {
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.mul(2, 2), 3);
        let f5 = FiniteField::new(5).unwrap();
        assert_eq!(f5.inv(2), Ok(3));
        let f2 = FiniteField::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f5.inv(0), Err(Error::ZeroInverse));
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(FiniteField::new(6), Err(Error::NotPrimePower(6)));
        assert_eq!(FiniteField::new(1), Err(Error::InvalidQ(1)));
        assert_eq!(FiniteField::new(32), Err(Error::NoBuiltinModulus(32)));
        assert_eq!(FiniteField::new(1 << 17), Err(Error::FieldTooLarge(1 << 17)));
    }

    #[test]
    fn user_modulus() {
        // x^5 + x^2 + 1 is irreducible over F_2
        let f32 = FiniteField::with_modulus(32, &[1, 0, 1, 0, 0, 1]).unwrap();
        assert_eq!(f32.q(), 32);
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(FiniteField::with_modulus(4, &[1, 0, 1]), Err(Error::InvalidModulus(_))));
        assert!(matches!(FiniteField::with_modulus(4, &[1, 1]), Err(Error::InvalidModulus(_))));
        assert!(matches!(FiniteField::with_modulus(5, &[1, 1]), Err(Error::InvalidModulus(_))));
        // large order exercises the untabulated addition path
        let big = FiniteField::with_modulus(1024, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        for a in [1u16, 2, 77, 513, 1023] {
            assert_eq!(big.mul(a, big.inv(a).unwrap()), 1);
            assert_eq!(big.add(a, big.neg(a)), 0);
        }
    }

    fn check_axioms(field: &FiniteField) {
        let q = field.q() as Elem;
        for a in 0..q {
            assert_eq!(field.add(a, 0), a);
            assert_eq!(field.mul(a, 1), a);
            assert_eq!(field.add(a, field.neg(a)), 0);
            if a != 0 {
                assert_eq!(field.mul(a, field.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert!(field.add(a, b) < q && field.mul(a, b) < q);
                assert_eq!(field.add(a, b), field.add(b, a));
                assert_eq!(field.mul(a, b), field.mul(b, a));
                if a != 0 && b != 0 {
                    assert_ne!(field.mul(a, b), 0);
                }
                for c in 0..q {
                    assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
                    assert_eq!(field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)));
                    assert_eq!(
                        field.mul(a, field.add(b, c)),
                        field.add(field.mul(a, b), field.mul(a, c))
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 31, 37] {
            check_axioms(&FiniteField::new(q).unwrap());
        }
        check_axioms(&FiniteField::with_modulus(32, &[1, 0, 1, 0, 0, 1]).unwrap());
        check_axioms(&FiniteField::with_modulus(49, &[3, 1, 1]).unwrap());
        check_axioms(&FiniteField::with_modulus(64, &[1, 1, 0, 0, 0, 0, 1]).unwrap());
    }
}
