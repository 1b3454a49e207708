//! Gaussian (q-binomial) polynomials and generalized multi-group products.
//!
//! `G(n, m; t)` is computed by exact integer polynomial division of
//! `prod_{i=1}^{n+m} (1 - t^i)` by `prod_{j=1}^{n} (1 - t^j) * prod_{k=1}^{m} (1 - t^k)`;
//! the division is checked to leave a zero remainder. Its coefficient at
//! `t^s` is the conformal partition number `P_n^m(s)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::partition::{restricted_row, DEFAULT_ORACLE_CEILING};
use crate::{BigCount, Error, Result};

/// Dense coefficient sequence of a polynomial in `t`, indexed from
/// degree 0. Gaussian polynomials are palindromic: `coeffs[s] == coeffs[order - s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffSeq {
    pub coeffs: Vec<BigCount>,
}

impl CoeffSeq {
    /// Highest degree carried by the sequence.
    pub fn order(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    /// Coefficient at `t^s`; zero beyond the carried order.
    pub fn get(&self, s: u64) -> BigCount {
        self.coeffs
            .get(s as usize)
            .cloned()
            .unwrap_or_else(BigCount::zero)
    }

    pub fn is_palindromic(&self) -> bool {
        let k = self.coeffs.len();
        (0..k / 2).all(|i| self.coeffs[i] == self.coeffs[k - 1 - i])
    }

    /// Sum of all coefficients, i.e. the value at `t = 1`.
    pub fn coefficient_sum(&self) -> BigCount {
        self.coeffs.iter().cloned().sum()
    }
}

// prod_{i=1}^{k} (1 - t^i) as a dense signed polynomial.
fn falling_product(k: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for i in 1..=k as usize {
        let mut next = vec![BigInt::zero(); p.len() + i];
        for (j, c) in p.iter().enumerate() {
            next[j] += c;
            next[j + i] -= c;
        }
        p = next;
    }
    p
}

// Exact long division; errors if the remainder is nonzero.
fn divide_exact(mut num: Vec<BigInt>, den: &[BigInt]) -> Result<Vec<BigInt>> {
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(
        lead.abs().is_one(),
        "divisor must have unit leading coefficient"
    );
    if num.len() < den.len() {
        return Err(Error::Internal("quotient degree would be negative".into()));
    }
    let qd = num.len() - den.len();
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = &num[k + dd] / &lead;
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                let sub = d * &c;
                num[k + j] -= sub;
            }
        }
        quot[k] = c;
    }
    if num.iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal(
            "Gaussian polynomial division left a nonzero remainder".into(),
        ));
    }
    Ok(quot)
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The Gaussian polynomial `G(n, m; t)` of order `nm`. Its coefficients
/// are the conformal partition numbers `P_n^m(s)`, `s = 0..=nm`.
pub fn gaussian_poly(n: u32, m: u32) -> Result<CoeffSeq> {
    assert!(n >= 1 && m >= 1, "gaussian_poly requires n, m >= 1");
    let num = falling_product(n + m);
    let den = poly_mul(&falling_product(n), &falling_product(m));
    let quot = divide_exact(num, &den)?;
    let mut coeffs = Vec::with_capacity(quot.len());
    for c in quot {
        if c.is_negative() {
            return Err(Error::Internal(
                "Gaussian polynomial produced a negative coefficient".into(),
            ));
        }
        let (_, digits) = c.into_parts();
        coeffs.push(digits);
    }
    Ok(CoeffSeq { coeffs })
}

/// Checks the generating-function identity
/// `G(n, m; t) * M(n+m, t) = M(n, t) * M(m, t)` coefficient-wise up to
/// degree `truncation`.
pub fn gaussian_ratio_check(n: u32, m: u32, truncation: u64) -> Result<bool> {
    let g = gaussian_poly(n, m)?;
    let wn = restricted_row(n, truncation).values;
    let wm = restricted_row(m, truncation).values;
    let wnm = restricted_row(n + m, truncation).values;
    for degree in 0..=truncation as usize {
        let mut lhs = BigCount::zero();
        for s in 0..=degree.min(g.coeffs.len() - 1) {
            lhs += &g.coeffs[s] * &wnm[degree - s];
        }
        let mut rhs = BigCount::zero();
        for s in 0..=degree {
            rhs += &wn[s] * &wm[degree - s];
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two-group conformal partition number
/// `P[(m1,m2);(n1,n2)](s) = sum_{s1} P_{n1}^{m1}(s1) * P_{n2}^{m2}(s - s1)`.
pub fn convolve_conformal(n1: u32, m1: u32, n2: u32, m2: u32, s: u64) -> Result<BigCount> {
    let a = gaussian_poly(n1, m1)?;
    let b = gaussian_poly(n2, m2)?;
    let mut total = BigCount::zero();
    for s1 in 0..=s.min(a.order()) {
        total += a.get(s1) * b.get(s - s1);
    }
    Ok(total)
}

/// Product Gaussian polynomial `prod_j G(n_j, m_j; t)` of order
/// `sum_j n_j * m_j`. Coefficient at `t^s` counts solutions of the
/// system with one Diophantine equation and `k` inequalities.
pub fn product_gaussian(pairs: &[(u32, u32)]) -> Result<CoeffSeq> {
    assert!(
        !pairs.is_empty(),
        "product_gaussian requires at least one pair"
    );
    let mut acc = vec![BigCount::one()];
    for &(n, m) in pairs {
        let g = gaussian_poly(n, m)?;
        let mut next = vec![BigCount::zero(); acc.len() + g.coeffs.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    Ok(CoeffSeq { coeffs: acc })
}

// Enumerate group j's tuple, then recurse into the remaining groups with
// the leftover s. Visits are counted against the ceiling.
fn product_oracle_rec(
    pairs: &[(u32, u32)],
    r: u64,
    cap: u64,
    s: u64,
    visited: &mut u64,
    ceiling: u64,
) -> Result<BigCount> {
    *visited += 1;
    if *visited > ceiling {
        return Err(Error::ResourceCeiling { ceiling });
    }
    if r == 0 {
        // group exhausted: move to the next one
        return match pairs.split_first() {
            None => Ok(if s == 0 {
                BigCount::one()
            } else {
                BigCount::zero()
            }),
            Some((&(n, m), rest)) => {
                product_oracle_rec(rest, n as u64, m as u64, s, visited, ceiling)
            }
        };
    }
    let mut total = BigCount::zero();
    let max_mult = (s / r).min(cap);
    for x in 0..=max_mult {
        total += product_oracle_rec(pairs, r - 1, cap - x, s - x * r, visited, ceiling)?;
    }
    Ok(total)
}

/// Brute-force count of nonnegative solutions of
/// `sum_j sum_{r} r * x_{j,r} = s` with `sum_r x_{j,r} <= m_j` for each
/// group `j`. Ground truth for [`product_gaussian`] at small sizes.
pub fn product_count_oracle(pairs: &[(u32, u32)], s: u64) -> Result<BigCount> {
    product_count_oracle_with_ceiling(pairs, s, DEFAULT_ORACLE_CEILING)
}

/// Same as [`product_count_oracle`] with an explicit visit ceiling.
pub fn product_count_oracle_with_ceiling(
    pairs: &[(u32, u32)],
    s: u64,
    ceiling: u64,
) -> Result<BigCount> {
    assert!(!pairs.is_empty());
    assert!(pairs.iter().all(|&(n, m)| n >= 1 && m >= 1));
    let mut visited = 0u64;
    product_oracle_rec(pairs, 0, 0, s, &mut visited, ceiling)
}
