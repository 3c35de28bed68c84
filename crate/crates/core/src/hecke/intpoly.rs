//! Exact polynomials over Z, the carrier for characteristic polynomials.
//!
//! The gcd machinery uses primitive pseudo-remainder sequences with positive
//! multipliers only, so remainders keep the signs the Sturm theory needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer-coefficient polynomial, lowest degree first; the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// (X - r1)(X - r2)... from integer roots, for tests and oracles.
    pub fn from_roots(roots: &[i64]) -> Self {
        let mut f = Self::one();
        for &r in roots {
            f = f.mul(&Self::from_i64(&[-r, 1]));
        }
        f
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// h(X) = f(-X)
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Synthetic division by X - r: returns (quotient, remainder).
    pub fn divide_by_linear(&self, r: &BigInt) -> (Self, BigInt) {
        if self.is_zero() {
            return (Self::zero(), BigInt::zero());
        }
        let n = self.coeffs.len();
        let mut quot = vec![BigInt::zero(); n - 1];
        let mut carry = BigInt::zero();
        for k in (0..n).rev() {
            let b = &self.coeffs[k] + &carry * r;
            if k == 0 {
                return (Self::from_coeffs(quot), b);
            }
            quot[k - 1] = b.clone();
            carry = b;
        }
        unreachable!()
    }

    /// Exact polynomial division; `None` unless divisor * quotient == self
    /// over Z.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let d = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[k - d] = q.clone();
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - d + i] -= t;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and force a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divide out the (positive) content, preserving the sign pattern.
    /// This is the normalization Sturm chains need.
    pub fn divide_content(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder with a positive multiplier: some m > 0 with
    /// m * self = q * g + r, so r carries the sign of the true remainder.
    pub fn pseudo_rem_positive(&self, g: &Self) -> Self {
        let dg = g.degree().expect("pseudo-division by zero");
        let lead_abs = g.leading().abs();
        let lead_sign_neg = g.leading().is_negative();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            // r <- |lc(g)| * r - t X^(dr-dg) g with t chosen to cancel
            let t = if lead_sign_neg { -r.leading() } else { r.leading() };
            let mut out = vec![BigInt::zero(); dr + 1];
            for (i, c) in r.coeffs.iter().enumerate() {
                out[i] = c * &lead_abs;
            }
            for (i, c) in g.coeffs.iter().enumerate() {
                out[dr - dg + i] -= &t * c;
            }
            r = Self::from_coeffs(out);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem_positive(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// f / gcd(f, f'): same roots, multiplicity one. Exact over Z.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.exact_div(&g)
            .expect("gcd(f, f') divides f")
            .primitive_part()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }
}
