//! Sturm sequences: exact real-root counting over Q.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::intpoly::IntPolynomial;

/// Signed remainder sequence of f. Remainders are computed with positive
/// pseudo-division multipliers and content-normalized, so every chain entry
/// is a positive multiple of the rational Sturm remainder and all sign
/// counts are exact.
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(f: &IntPolynomial) -> Self {
        assert!(!f.is_zero(), "Sturm chain of the zero polynomial");
        // content removal must keep signs; primitive_part would flip them
        let mut chain = vec![f.divide_content()];
        let d = f.derivative();
        if !d.is_zero() {
            chain.push(d.divide_content());
            loop {
                let len = chain.len();
                let r = chain[len - 2].pseudo_rem_positive(&chain[len - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().divide_content());
            }
        }
        SturmChain { chain }
    }

    fn variations<F: Fn(&IntPolynomial) -> i8>(&self, sign_of: F) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for f in &self.chain {
            let s = sign_of(f);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, num: &BigInt, den: &BigInt) -> usize {
        debug_assert!(den.is_positive());
        self.variations(|f| {
            // sign of f(num/den) via homogenized integer evaluation
            let n = match f.degree() {
                None => return 0,
                Some(n) => n,
            };
            let mut acc = BigInt::zero();
            let mut den_pow = BigInt::from(1);
            // sum c_k num^k den^(n-k), evaluated Horner-style in num
            for k in (0..=n).rev() {
                acc = acc * num + f.coeff(k) * &den_pow;
                if k > 0 {
                    den_pow *= den;
                }
            }
            sign(&acc)
        })
    }

    fn variations_at_pos_inf(&self) -> usize {
        self.variations(|f| sign(&f.leading()))
    }

    fn variations_at_neg_inf(&self) -> usize {
        self.variations(|f| {
            let s = sign(&f.leading());
            if f.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        })
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Number of distinct real roots in the open interval (num/den, +inf).
    /// Exact when num/den is not itself a root; with den > 1 in lowest terms
    /// this is automatic for the monic integer polynomials used here.
    pub fn count_roots_above(&self, num: &BigInt, den: &BigInt) -> usize {
        self.variations_at(num, den) - self.variations_at_pos_inf()
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_roots_of_product_of_linears() {
        let f = IntPolynomial::from_roots(&[-3, 0, 2, 7]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_real_roots(), 4);
        let above = |n: i64, d: i64| chain.count_roots_above(&BigInt::from(n), &BigInt::from(d));
        assert_eq!(above(1, 2), 2);
        assert_eq!(above(-7, 2), 4);
        assert_eq!(above(-5, 2), 3);
        assert_eq!(above(15, 2), 0);
        assert_eq!(above(13, 2), 1);
    }

    #[test]
    fn no_real_roots() {
        let f = IntPolynomial::from_i64(&[1, 0, 1]); // X^2 + 1
        assert_eq!(SturmChain::new(&f).count_real_roots(), 0);
    }

    #[test]
    fn mixed_real_and_complex() {
        // (X^2 + 1)(X - 1)
        let f = IntPolynomial::from_i64(&[1, 0, 1]).mul(&IntPolynomial::from_i64(&[-1, 1]));
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_real_roots(), 1);
        assert_eq!(chain.count_roots_above(&BigInt::from(1), &BigInt::from(2)), 1);
    }

    #[test]
    fn tight_rational_endpoints() {
        // roots at 0 and 3; golden-ratio-free check of half-open semantics
        let f = IntPolynomial::from_roots(&[0, 3]);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_roots_above(&BigInt::from(5), &BigInt::from(2)), 1);
        assert_eq!(chain.count_roots_above(&BigInt::from(7), &BigInt::from(2)), 0);
    }
}
