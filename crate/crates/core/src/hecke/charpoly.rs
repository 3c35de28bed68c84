//! Exact characteristic polynomials of integer matrices.
//!
//! Two independent routes: the division-free Berkowitz algorithm over Z
//! (the default), and a CRT reconstruction from Hessenberg characteristic
//! polynomials mod word-size primes with a rigorous coefficient bound. The
//! two must agree bit-exactly; tests enforce it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::intpoly::IntPolynomial;
use crate::field::is_prime_u64;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, entries: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize) -> &BigInt {
        &self.entries[i * self.n + k]
    }

    pub fn get_mut(&mut self, i: usize, k: usize) -> &mut BigInt {
        &mut self.entries[i * self.n + k]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let mut out = IntMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let mut acc = BigInt::zero();
                for j in 0..self.n {
                    acc += self.get(i, j) * other.get(j, k);
                }
                *out.get_mut(i, k) = acc;
            }
        }
        out
    }
}

/// det(X I - M) by the Berkowitz algorithm: division-free, exact.
pub fn charpoly_exact(m: &IntMatrix) -> IntPolynomial {
    let n = m.n;
    if n == 0 {
        return IntPolynomial::one();
    }
    // coefficients in descending order, starting with the 1x1 block
    let mut poly = vec![BigInt::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // Toeplitz column for the (r+1)x(r+1) leading block:
        // c_0 = 1, c_1 = -a_rr, c_k = -(R . M^(k-2) . S)
        let mut col = Vec::with_capacity(r + 2);
        col.push(BigInt::one());
        col.push(-m.get(r, r).clone());
        let mut v: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for k in 2..=(r + 1) {
            if k > 2 {
                let mut next = vec![BigInt::zero(); r];
                for i in 0..r {
                    let mut acc = BigInt::zero();
                    for (j, vj) in v.iter().enumerate() {
                        acc += m.get(i, j) * vj;
                    }
                    next[i] = acc;
                }
                v = next;
            }
            let mut dot = BigInt::zero();
            for (j, vj) in v.iter().enumerate() {
                dot += m.get(r, j) * vj;
            }
            col.push(-dot);
        }
        let mut next_poly = vec![BigInt::zero(); r + 2];
        for (i, slot) in next_poly.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (k, ck) in col.iter().enumerate().take(i + 1) {
                if let Some(pj) = poly.get(i - k) {
                    acc += ck * pj;
                }
            }
            *slot = acc;
        }
        poly = next_poly;
    }
    poly.reverse();
    IntPolynomial::from_coeffs(poly)
}

/// det(X I - M) by CRT over word-size primes, with a Hadamard-style bound
/// selecting how many primes are needed. Must agree with `charpoly_exact`.
pub fn charpoly_crt(m: &IntMatrix) -> IntPolynomial {
    let n = m.n;
    if n == 0 {
        return IntPolynomial::one();
    }
    // |c_{n-k}| = |sum of k x k principal minors| <= C(n,k) * prod of the k
    // largest row norms; bound everything by 2^n * prod max(ceil||row||, 1)
    let mut bound = BigInt::one() << n;
    for i in 0..n {
        let norm_sq: BigInt = (0..n).map(|k| m.get(i, k) * m.get(i, k)).sum();
        let norm: BigInt = norm_sq.sqrt() + 1;
        bound *= norm.max(BigInt::one());
    }
    let target = bound * 2 + 1;

    let mut primes = Vec::new();
    let mut prod = BigInt::one();
    let mut candidate = (1u64 << 62) - 57;
    while prod < target {
        while !is_prime_u64(candidate) {
            candidate -= 2;
        }
        primes.push(candidate);
        prod *= BigInt::from(candidate);
        candidate -= 2;
    }

    let residues: Vec<Vec<u64>> = primes.iter().map(|&q| charpoly_mod(m, q)).collect();

    // balanced CRT lift, coefficient by coefficient
    let mut coeffs = Vec::with_capacity(n + 1);
    for idx in 0..=n {
        let mut x = BigInt::zero();
        let mut mprod = BigInt::one();
        for (res, &q) in residues.iter().zip(&primes) {
            let qb = BigInt::from(q);
            let cur = x.mod_floor(&qb).to_u64().unwrap();
            let want = res[idx];
            let diff = (want + q - cur) % q;
            let minv = mod_inverse(&mprod, q);
            let t = (diff as u128 * minv as u128 % q as u128) as u64;
            x += &mprod * BigInt::from(t);
            mprod *= qb;
        }
        if &x * 2 > mprod {
            x -= &mprod;
        }
        coeffs.push(x);
    }
    IntPolynomial::from_coeffs(coeffs)
}

fn mod_inverse(a: &BigInt, q: u64) -> u64 {
    let a = a.mod_floor(&BigInt::from(q)).to_u64().unwrap();
    pow_mod_u64(a, q - 2, q)
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial mod q via Hessenberg reduction; coefficients
/// ascending, length n+1.
fn charpoly_mod(m: &IntMatrix, q: u64) -> Vec<u64> {
    let n = m.n;
    let qb = BigInt::from(q);
    let mut h = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            h[i][k] = m.get(i, k).mod_floor(&qb).to_u64().unwrap();
        }
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % q as u128) as u64;
    let sub = |a: u64, b: u64| (a + q - b) % q;

    // similarity-reduce to upper Hessenberg form
    for j in 0..n.saturating_sub(2) {
        let pivot = (j + 1..n).find(|&i| h[i][j] != 0);
        let Some(pivot) = pivot else { continue };
        if pivot != j + 1 {
            h.swap(pivot, j + 1);
            for row in h.iter_mut() {
                row.swap(pivot, j + 1);
            }
        }
        let inv = pow_mod_u64(h[j + 1][j], q - 2, q);
        for i in j + 2..n {
            if h[i][j] == 0 {
                continue;
            }
            let t = mul(h[i][j], inv);
            for k in 0..n {
                let delta = mul(t, h[j + 1][k]);
                h[i][k] = sub(h[i][k], delta);
            }
            for r in 0..n {
                let delta = mul(t, h[r][i]);
                h[r][j + 1] = (h[r][j + 1] + delta) % q;
            }
        }
    }

    // p_m(X) = (X - h[m-1][m-1]) p_{m-1}(X)
    //          - sum_i h[m-1-i][m-1] (prod subdiagonals) p_{m-1-i}(X)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        let prev = &polys[mm - 1];
        let d = h[mm - 1][mm - 1];
        let mut cur = vec![0u64; mm + 1];
        for (i, &c) in prev.iter().enumerate() {
            cur[i + 1] = (cur[i + 1] + c) % q;
            cur[i] = sub(cur[i], mul(d, c));
        }
        let mut subprod = 1u64;
        for i in 1..mm {
            subprod = mul(subprod, h[mm - i][mm - i - 1]);
            if subprod == 0 {
                break;
            }
            let factor = mul(h[mm - 1 - i][mm - 1], subprod);
            if factor == 0 {
                continue;
            }
            for (idx, &c) in polys[mm - 1 - i].iter().enumerate() {
                cur[idx] = sub(cur[idx], mul(factor, c));
            }
        }
        polys.push(cur);
    }
    polys.pop().unwrap()
}
