//! Univariate polynomials over F_{p^2} and root extraction with
//! multiplicities.
//!
//! The root finder splits off the F_{p^2}-rational part of f with
//! gcd(f, X^(p^2) - X), isolates the distinct roots by randomized
//! equal-degree splitting, and recovers multiplicities by repeated exact
//! division of the original polynomial. The randomness only steers the
//! splitting recursion; the returned root multiset is deterministic and
//! sorted canonically.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FieldCtx, Fp2};
use crate::error::{Error, Result};

/// Dense polynomial over F_{p^2}, coefficients lowest degree first.
/// Invariant: the last coefficient is nonzero (the zero polynomial is the
/// empty vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Fp2>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Fp2::new(1, 0))
    }

    pub fn constant(c: Fp2) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// X - r
    pub fn linear_root(r: Fp2, ctx: &FieldCtx) -> Self {
        Poly::from_coeffs(vec![ctx.neg(r), Fp2::new(1, 0)])
    }

    pub fn from_coeffs(mut coeffs: Vec<Fp2>) -> Self {
        while coeffs.last().is_some_and(Fp2::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fp2] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Fp2 {
        self.coeffs.get(i).copied().unwrap_or(Fp2::ZERO)
    }

    pub fn leading(&self) -> Fp2 {
        self.coeffs.last().copied().unwrap_or(Fp2::ZERO)
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.sub(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let p = ctx.p() as u128;
        let nu = ctx.nu() as u128;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = Vec::with_capacity(n);
        // accumulate cross terms in u128; (p-1)^2 < 2^62 leaves plenty of
        // headroom for the degrees this crate ever sees
        for k in 0..n {
            let mut acc_a: u128 = 0;
            let mut acc_b: u128 = 0;
            let lo = k.saturating_sub(other.coeffs.len() - 1);
            let hi = k.min(self.coeffs.len() - 1);
            for i in lo..=hi {
                let x = self.coeffs[i];
                let y = other.coeffs[k - i];
                acc_a += x.a as u128 * y.a as u128 + nu * ((x.b as u128 * y.b as u128) % p);
                acc_b += x.a as u128 * y.b as u128 + x.b as u128 * y.a as u128;
                if acc_a >= 1 << 120 {
                    acc_a %= p;
                }
                if acc_b >= 1 << 120 {
                    acc_b %= p;
                }
            }
            out.push(Fp2::new((acc_a % p) as u64, (acc_b % p) as u64));
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: Fp2, ctx: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&x| ctx.mul(c, x)).collect())
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            l if l.is_zero() => Poly::zero(),
            l if l == Fp2::new(1, 0) => self.clone(),
            l => self.scale(ctx.inv(l).expect("nonzero leading coefficient"), ctx),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, ctx: &FieldCtx) -> (Poly, Poly) {
        let d = divisor.degree().expect("division by zero polynomial");
        if self.is_zero() || self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = ctx.inv(divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fp2::ZERO; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let q = ctx.mul(rem[k], lead_inv);
            if q.is_zero() {
                continue;
            }
            quot[k - d] = q;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - d + i] = ctx.sub(rem[k - d + i], ctx.mul(q, dc));
            }
        }
        rem.truncate(d);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        self.divrem(modulus, ctx).1
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.scale(i as u64 % ctx.p(), c))
            .collect();
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: Fp2, ctx: &FieldCtx) -> Fp2 {
        let mut acc = Fp2::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// self^e modulo `modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly, ctx: &FieldCtx) -> Poly {
        let mut base = self.rem(modulus, ctx);
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx).rem(modulus, ctx);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ctx).rem(modulus, ctx);
            }
        }
        acc
    }
}

/// Monic gcd via the Euclidean algorithm.
pub fn poly_gcd(f: &Poly, g: &Poly, ctx: &FieldCtx) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = a.rem(&b, ctx);
        a = b;
        b = r;
    }
    Ok(a.monic(ctx))
}

/// All roots of f in F_{p^2}, with exact multiplicities, sorted by the
/// canonical (a, b) order. The seed steers only internal branching.
pub fn roots_in_fp2(f: &Poly, ctx: &FieldCtx, seed: u64) -> Vec<(Fp2, u32)> {
    assert!(!f.is_zero(), "roots of the zero polynomial");
    if f.degree() == Some(0) {
        return Vec::new();
    }
    let monic_f = f.monic(ctx);

    // rational part: gcd(f, X^(p^2) - X)
    let q = ctx.p() * ctx.p();
    let x = Poly::from_coeffs(vec![Fp2::ZERO, Fp2::new(1, 0)]);
    let xq = x.pow_mod(q, &monic_f, ctx);
    let linear_part = poly_gcd(&xq.sub(&x, ctx), &monic_f, ctx).expect("f nonzero");

    // gcd(f, X^(p^2) - X) is squarefree and splits into distinct linear factors
    let mut distinct = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_into_roots(&linear_part, ctx, &mut rng, &mut distinct);

    let mut out: Vec<(Fp2, u32)> = Vec::with_capacity(distinct.len());
    for r in distinct {
        let lin = Poly::linear_root(r, ctx);
        let mut m = 0u32;
        let mut rest = monic_f.clone();
        loop {
            let (quot, rem) = rest.divrem(&lin, ctx);
            if !rem.is_zero() {
                break;
            }
            m += 1;
            rest = quot;
        }
        debug_assert!(m > 0);
        out.push((r, m));
    }
    out.sort_unstable_by_key(|&(r, _)| r);
    out
}

/// Equal-degree splitting of a squarefree product of distinct linear factors.
fn split_into_roots(g: &Poly, ctx: &FieldCtx, rng: &mut ChaCha8Rng, out: &mut Vec<Fp2>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let g = g.monic(ctx);
            out.push(ctx.neg(g.coeff(0)));
            return;
        }
        _ => {}
    }
    let exp = (ctx.p() * ctx.p() - 1) / 2;
    let deg = g.degree().unwrap();
    loop {
        let coeffs: Vec<Fp2> = (0..deg)
            .map(|_| Fp2::new(rng.gen_range(0..ctx.p()), rng.gen_range(0..ctx.p())))
            .collect();
        let a = Poly::from_coeffs(coeffs);
        if a.is_zero() {
            continue;
        }
        // a may share roots with g outright
        let shared = poly_gcd(&a, g, ctx).unwrap();
        if let Some(d) = shared.degree() {
            if d > 0 && d < deg {
                let (quot, _) = g.divrem(&shared, ctx);
                split_into_roots(&shared, ctx, rng, out);
                split_into_roots(&quot, ctx, rng, out);
                return;
            }
        }
        let h = a.pow_mod(exp, g, ctx);
        let h_minus_1 = h.sub(&Poly::one(), ctx);
        if h_minus_1.is_zero() {
            continue;
        }
        let d = poly_gcd(&h_minus_1, g, ctx).unwrap();
        if let Some(dd) = d.degree() {
            if dd > 0 && dd < deg {
                let (quot, _) = g.divrem(&d, ctx);
                split_into_roots(&d, ctx, rng, out);
                split_into_roots(&quot, ctx, rng, out);
                return;
            }
        }
    }
}
