//! Arithmetic in F_p and F_{p^2} = F_p[t]/(t^2 - nu).
//!
//! All supersingular j-invariants in characteristic p live in F_{p^2}, so a
//! single quadratic extension is the only field tower the crate needs. The
//! modulus is capped at 2^31 so that products of canonical representatives
//! fit in 64-bit intermediates.

pub mod poly;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound (exclusive) on the characteristic.
pub const MAX_P: u64 = 1 << 31;

/// Element a + b*t of F_{p^2}, stored with canonical representatives
/// 0 <= a, b < p. Equality and ordering are component-wise on (a, b); the
/// lexicographic `Ord` is the canonical vertex order used everywhere.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub const ZERO: Fp2 = Fp2 { a: 0, b: 0 };

    pub fn new(a: u64, b: u64) -> Self {
        Fp2 { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the element lies in the prime field F_p.
    pub fn in_base_field(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*t", self.a, self.b)
    }
}

impl FromStr for Fp2 {
    type Err = Error;

    /// Accepts `"a"` or `"a+b*t"` with decimal a, b.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid F_p^2 element `{s}`"));
        let s = s.trim();
        match s.split_once('+') {
            None => {
                let a = s.parse::<u64>().map_err(|_| bad())?;
                Ok(Fp2::new(a, 0))
            }
            Some((a_str, rest)) => {
                let a = a_str.trim().parse::<u64>().map_err(|_| bad())?;
                let b_str = rest.trim().strip_suffix("*t").ok_or_else(bad)?;
                let b = b_str.trim().parse::<u64>().map_err(|_| bad())?;
                Ok(Fp2::new(a, b))
            }
        }
    }
}

/// Field context: the prime p and the non-residue nu with t^2 = nu.
///
/// nu is always the smallest positive quadratic non-residue mod p, so the
/// representation of F_{p^2} is reproducible across runs and machines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    nu: u64,
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_P {
            return Err(Error::Overflow(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::PTooSmall(p));
        }
        let nu = (2..p)
            .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
            .ok_or(Error::NotFound)?;
        Ok(FieldCtx { p, nu })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    // ---- F_p helpers -----------------------------------------------------

    #[inline]
    pub(crate) fn addp(&self, x: u64, y: u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn subp(&self, x: u64, y: u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x + self.p - y
        }
    }

    #[inline]
    pub(crate) fn mulp(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    pub(crate) fn invp(&self, x: u64) -> u64 {
        debug_assert!(x % self.p != 0, "inverse of zero in F_p");
        pow_mod(x, self.p - 2, self.p)
    }

    /// Reduce an unsigned integer into F_p <= F_{p^2}.
    pub fn embed(&self, n: u64) -> Fp2 {
        Fp2::new(n % self.p, 0)
    }

    /// Canonicalize raw coordinates.
    pub fn elem(&self, a: u64, b: u64) -> Fp2 {
        Fp2::new(a % self.p, b % self.p)
    }

    /// Parse and reduce an element written as `"a"` or `"a+b*t"`.
    pub fn parse_elem(&self, s: &str) -> Result<Fp2> {
        let raw: Fp2 = s.parse()?;
        Ok(self.elem(raw.a, raw.b))
    }

    // ---- F_{p^2} arithmetic ----------------------------------------------

    #[inline]
    pub fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2::new(self.addp(x.a, y.a), self.addp(x.b, y.b))
    }

    #[inline]
    pub fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2::new(self.subp(x.a, y.a), self.subp(x.b, y.b))
    }

    #[inline]
    pub fn neg(&self, x: Fp2) -> Fp2 {
        Fp2::new(if x.a == 0 { 0 } else { self.p - x.a }, if x.b == 0 { 0 } else { self.p - x.b })
    }

    /// (a1 + b1 t)(a2 + b2 t) = (a1 a2 + nu b1 b2) + (a1 b2 + a2 b1) t.
    #[inline]
    pub fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let a = self.addp(self.mulp(x.a, y.a), self.mulp(self.nu, self.mulp(x.b, y.b)));
        let b = self.addp(self.mulp(x.a, y.b), self.mulp(x.b, y.a));
        Fp2::new(a, b)
    }

    /// Multiply by a base-field scalar.
    #[inline]
    pub fn scale(&self, c: u64, x: Fp2) -> Fp2 {
        Fp2::new(self.mulp(c, x.a), self.mulp(c, x.b))
    }

    /// Multiplicative inverse; `None` for zero. Uses the norm map:
    /// (a + bt)^-1 = (a - bt) / (a^2 - nu b^2).
    pub fn inv(&self, x: Fp2) -> Option<Fp2> {
        if x.is_zero() {
            return None;
        }
        let norm = self.subp(self.mulp(x.a, x.a), self.mulp(self.nu, self.mulp(x.b, x.b)));
        let ninv = self.invp(norm);
        Some(Fp2::new(self.mulp(x.a, ninv), self.mulp(if x.b == 0 { 0 } else { self.p - x.b }, ninv)))
    }

    pub fn pow(&self, x: Fp2, mut e: u64) -> Fp2 {
        let mut base = x;
        let mut acc = Fp2::new(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// The p-power Frobenius x -> x^p. Since t^p = -t, this is conjugation:
    /// a + bt -> a - bt.
    #[inline]
    pub fn frobenius(&self, x: Fp2) -> Fp2 {
        Fp2::new(x.a, if x.b == 0 { 0 } else { self.p - x.b })
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u128(mut a: u64, mut e: u64, m: u64) -> u64 {
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, a, m);
        }
        a = mul_mod_u128(a, a, m);
        e >>= 1;
    }
    acc
}

/// pow for moduli below 2^31 (products fit in u64).
fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_init_examples() {
        // 2 and 3 are quadratic residues mod 73; 5 is not
        let ctx = FieldCtx::new(73).unwrap();
        assert_eq!(ctx.nu(), 5);
        assert_eq!(pow_mod(5, 36, 73), 72);
        // squares mod 7 are {1, 2, 4}
        assert_eq!(FieldCtx::new(7).unwrap().nu(), 3);
    }

    #[test]
    fn field_init_errors() {
        assert!(matches!(FieldCtx::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::new(3), Err(Error::PTooSmall(3))));
        assert!(matches!(FieldCtx::new(2), Err(Error::PTooSmall(2))));
        assert!(matches!(FieldCtx::new(1 << 31), Err(Error::Overflow(_))));
        // 2^31 - 1 is prime and admissible
        assert!(FieldCtx::new((1 << 31) - 1).is_ok());
    }

    #[test]
    fn nu_is_smallest_nonresidue() {
        for p in [5u64, 7, 11, 13, 73, 101, 199] {
            let ctx = FieldCtx::new(p).unwrap();
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            let smallest = (1..p).find(|n| !squares.contains(n)).unwrap();
            assert_eq!(ctx.nu(), smallest, "p = {p}");
        }
    }

    #[test]
    fn frobenius_fixes_base_field_only() {
        let ctx = FieldCtx::new(73).unwrap();
        for a in 0..73 {
            for b in 0..73 {
                let x = Fp2::new(a, b);
                let fx = ctx.frobenius(x);
                assert_eq!(ctx.frobenius(fx), x);
                assert_eq!(fx == x, b == 0);
                if b != 0 {
                    assert_eq!(fx, Fp2::new(a, 73 - b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_pth_power() {
        let ctx = FieldCtx::new(41).unwrap();
        for a in 0..41 {
            for b in 0..41 {
                let x = Fp2::new(a, b);
                assert_eq!(ctx.frobenius(x), ctx.pow(x, 41));
            }
        }
    }

    #[test]
    fn inverse_and_norm() {
        let ctx = FieldCtx::new(73).unwrap();
        assert_eq!(ctx.inv(Fp2::ZERO), None);
        for a in 0..73u64 {
            for b in 0..73u64 {
                let x = Fp2::new(a, b);
                if let Some(xi) = ctx.inv(x) {
                    assert_eq!(ctx.mul(x, xi), Fp2::new(1, 0));
                }
            }
        }
    }

    #[test]
    fn element_string_round_trip() {
        let ctx = FieldCtx::new(73).unwrap();
        let x = Fp2::new(47, 5);
        assert_eq!(x.to_string(), "47+5*t");
        assert_eq!(ctx.parse_elem("47+5*t").unwrap(), x);
        assert_eq!(ctx.parse_elem("1728").unwrap(), Fp2::new(1728 % 73, 0));
        assert!(ctx.parse_elem("nope").is_err());
    }
}
