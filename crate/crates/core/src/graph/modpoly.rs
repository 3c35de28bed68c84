//! Classical modular polynomials Phi_l(X, Y) reduced mod p.
//!
//! Input is the Sutherland database text format: one line `[i,k] c` per
//! unordered monomial pair, with an arbitrary-precision decimal coefficient
//! c. Coefficients are reduced mod p while streaming the digits, so files
//! with hundred-digit entries parse without big-integer arithmetic.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{poly::Poly, FieldCtx, Fp2};

/// Phi_l(X, Y) mod p as a dense symmetric coefficient table.
#[derive(Clone, Debug)]
pub struct ModPoly {
    l: u64,
    p: u64,
    /// row-major (l+2) x (l+2): entry(i, k) = coefficient of X^i Y^k
    entries: Vec<u64>,
}

impl ModPoly {
    pub fn load(path: &Path, l: u64, ctx: &FieldCtx) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, l, ctx).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str, l: u64, ctx: &FieldCtx) -> Result<Self> {
        let p = ctx.p();
        let dim = (l + 2) as usize;
        let mut seen: HashMap<(usize, usize), u64> = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (i, k, c) = parse_line(line, p)
                .ok_or_else(|| Error::Parse(format!("line {}: malformed entry `{line}`", lineno + 1)))?;
            if i >= dim || k >= dim {
                return Err(Error::WrongLevel { want: dim - 1, got: i.max(k) });
            }
            if let Some(&prev) = seen.get(&(i, k)) {
                if prev != c {
                    return Err(Error::NotSymmetric(i, k));
                }
            }
            seen.insert((i, k), c);
        }

        let mut entries = vec![0u64; dim * dim];
        for (&(i, k), &c) in &seen {
            // complete the symmetry; conflicting mirror entries are rejected
            if let Some(&mirror) = seen.get(&(k, i)) {
                if mirror != c {
                    return Err(Error::NotSymmetric(i, k));
                }
            }
            entries[i * dim + k] = c;
            entries[k * dim + i] = c;
        }

        let phi = ModPoly { l, p, entries };
        // monic of X-degree exactly l+1, and no X^(l+1) Y^(l+1) term
        if phi.coeff(dim - 1, 0) != 1 {
            return Err(Error::WrongLevel { want: dim - 1, got: phi.x_degree() });
        }
        if phi.coeff(dim - 1, dim - 1) != 0 {
            return Err(Error::WrongLevel { want: dim - 1, got: dim - 1 });
        }
        Ok(phi)
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeff(&self, i: usize, k: usize) -> u64 {
        self.entries[i * (self.l as usize + 2) + k]
    }

    fn x_degree(&self) -> usize {
        let dim = self.l as usize + 2;
        (0..dim)
            .rev()
            .find(|&i| (0..dim).any(|k| self.coeff(i, k) != 0))
            .unwrap_or(0)
    }

    /// Specialize Y := j, giving the degree-(l+1) polynomial Phi_l(X, j)
    /// over F_{p^2}.
    pub fn specialize_y(&self, j: Fp2, ctx: &FieldCtx) -> Poly {
        let dim = self.l as usize + 2;
        let mut jpow = Vec::with_capacity(dim);
        let mut acc = Fp2::new(1, 0);
        for _ in 0..dim {
            jpow.push(acc);
            acc = ctx.mul(acc, j);
        }
        let coeffs = (0..dim)
            .map(|i| {
                let mut s = Fp2::ZERO;
                for (k, &jp) in jpow.iter().enumerate() {
                    let c = self.coeff(i, k);
                    if c != 0 {
                        s = ctx.add(s, ctx.scale(c, jp));
                    }
                }
                s
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

/// Parse one `[i,k] c` line, reducing c mod p digit by digit.
fn parse_line(line: &str, p: u64) -> Option<(usize, usize, u64)> {
    let rest = line.strip_prefix('[')?;
    let (i_str, rest) = rest.split_once(',')?;
    let (k_str, rest) = rest.split_once(']')?;
    let i = i_str.trim().parse::<usize>().ok()?;
    let k = k_str.trim().parse::<usize>().ok()?;
    let c_str = rest.trim();
    if c_str.is_empty() {
        return None;
    }
    let (neg, digits) = match c_str.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, c_str),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut acc = 0u64;
    for b in digits.bytes() {
        acc = (acc * 10 + (b - b'0') as u64) % p;
    }
    if neg && acc != 0 {
        acc = p - acc;
    }
    Some((i, k, acc))
}
