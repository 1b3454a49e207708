//! Triangular Toeplitz convolution solver.
//!
//! Solves `P(g) = T(g) + sum_{s=0}^{g-1} P(s) * U(g-s)`, `P(0) = T(0)`,
//! three ways: by the forward recursion, by the closed form
//! `P(g) = sum_{r=0}^{g-1} [T(g-r) + U(g-r)] * Phi_r(U)`, and (for tests)
//! with `Phi_r` expanded over partitions of `r` with multinomial
//! coefficients. Instantiating `T` as the `W_n * W_m` convolution and
//! `U(s) = -W_{n+m}(s)` yields the conformal partition numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::partition::{restricted_row, unrestricted_count};
use crate::{BigCount, Error, Result};

/// Known sequences of a triangular Toeplitz convolution problem.
/// `U[0]` is carried for indexing convenience but never read by the
/// recursion.
#[derive(Debug, Clone)]
pub struct ConvolutionProblem {
    pub t: Vec<BigInt>,
    pub u: Vec<BigInt>,
}

impl ConvolutionProblem {
    pub fn new(t: Vec<BigInt>, u: Vec<BigInt>) -> Self {
        ConvolutionProblem { t, u }
    }

    fn check_defined(&self, gmax: u64) -> Result<()> {
        if self.t.len() as u64 <= gmax || self.u.len() as u64 <= gmax {
            return Err(Error::InvalidParameter(format!(
                "problem sequences must be defined up to index {gmax}"
            )));
        }
        Ok(())
    }
}

/// One term of `Phi_r(U)`: multiplicities `q_l` of each `U(l)` with
/// `sum l*q_l = r`, and the multinomial coefficient `q!/(q_1!...q_r!)`
/// where `q = sum q_l`. For fixed `r >= 1` the coefficients sum to
/// `2^{r-1}` and the number of terms is the partition number `P(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTerm {
    pub multiplicities: Vec<u32>,
    pub coefficient: BigCount,
}

/// `P(0..=gmax)` by the forward recursion.
pub fn solve_forward(problem: &ConvolutionProblem, gmax: u64) -> Result<Vec<BigInt>> {
    problem.check_defined(gmax)?;
    let mut p = Vec::with_capacity(gmax as usize + 1);
    p.push(problem.t[0].clone());
    for g in 1..=gmax as usize {
        let mut v = problem.t[g].clone();
        for s in 0..g {
            v += &p[s] * &problem.u[g - s];
        }
        p.push(v);
    }
    Ok(p)
}

/// `Phi_0(U), ..., Phi_rmax(U)` by the convolution recurrence
/// `Phi_r = sum_{j=1}^{r} U(j) * Phi_{r-j}`, `Phi_0 = 1`.
pub fn phi_all(rmax: u64, u: &[BigInt]) -> Result<Vec<BigInt>> {
    if (u.len() as u64) <= rmax {
        return Err(Error::InvalidParameter(format!(
            "U must be defined up to index {rmax}"
        )));
    }
    let mut phi = Vec::with_capacity(rmax as usize + 1);
    phi.push(BigInt::one());
    for r in 1..=rmax as usize {
        let mut v = BigInt::zero();
        for j in 1..=r {
            v += &u[j] * &phi[r - j];
        }
        phi.push(v);
    }
    Ok(phi)
}

/// `Phi_r(U)` for a single `r`.
pub fn phi_eval(r: u64, u: &[BigInt]) -> Result<BigInt> {
    Ok(phi_all(r, u)?.pop().unwrap())
}

fn factorial(k: u64) -> BigCount {
    (1..=k)
        .map(BigCount::from)
        .product::<BigCount>()
        .max(BigCount::one())
}

fn phi_terms_rec(r: u32, largest: u32, mults: &mut [u32], out: &mut Vec<PhiTerm>) {
    if r == 0 {
        let q: u64 = mults.iter().map(|&q| q as u64).sum();
        let mut coeff = factorial(q);
        for &ql in mults.iter() {
            if ql > 1 {
                coeff /= factorial(ql as u64);
            }
        }
        let mut multiplicities = mults.to_vec();
        while multiplicities.last() == Some(&0) {
            multiplicities.pop();
        }
        out.push(PhiTerm {
            multiplicities,
            coefficient: coeff,
        });
        return;
    }
    for part in (1..=largest.min(r)).rev() {
        mults[part as usize - 1] += 1;
        phi_terms_rec(r - part, part, mults, out);
        mults[part as usize - 1] -= 1;
    }
}

/// All terms of `Phi_r(U)` as explicit partition data. Test oracle for
/// [`phi_eval`]; one term per partition of `r`.
pub fn phi_terms(r: u32) -> Vec<PhiTerm> {
    if r == 0 {
        return vec![PhiTerm {
            multiplicities: vec![],
            coefficient: BigCount::one(),
        }];
    }
    let mut out = Vec::new();
    let mut mults = vec![0u32; r as usize];
    phi_terms_rec(r, r, &mut mults, &mut out);
    out
}

/// `Phi_r(U)` evaluated from the explicit multinomial formula.
pub fn phi_eval_multinomial(r: u32, u: &[BigInt]) -> Result<BigInt> {
    if (u.len() as u64) <= r as u64 {
        return Err(Error::InvalidParameter(format!(
            "U must be defined up to index {r}"
        )));
    }
    let mut total = BigInt::zero();
    for term in phi_terms(r) {
        let mut prod = BigInt::from(term.coefficient.clone());
        for (idx, &ql) in term.multiplicities.iter().enumerate() {
            for _ in 0..ql {
                prod *= &u[idx + 1];
            }
        }
        total += prod;
    }
    Ok(total)
}

/// `P(g)` by the closed form; equals [`solve_forward`] at index `g`.
///
/// The general form is `sum_{r=0}^{g-1} [T(g-r) + T(0)*U(g-r)] * Phi_r(U)`:
/// unrolling the recursion leaves a `P(0) = T(0)` factor on the `U` part,
/// which only disappears when `T(0) = 1` (as it does in the conformal
/// instantiation, where `T(0) = W_n(0) W_m(0)`).
pub fn solve_closed(problem: &ConvolutionProblem, g: u64) -> Result<BigInt> {
    problem.check_defined(g)?;
    if g == 0 {
        return Ok(problem.t[0].clone());
    }
    let phi = phi_all(g - 1, &problem.u)?;
    let t0 = &problem.t[0];
    let mut total = BigInt::zero();
    for r in 0..g as usize {
        let idx = g as usize - r;
        total += (&problem.t[idx] + t0 * &problem.u[idx]) * &phi[r];
    }
    Ok(total)
}

/// `P_n^m(s)` through the Toeplitz closed form, with
/// `T(g) = sum_j W_n(j) W_m(g-j)` and `U(j) = -W_{n+m}(j)`.
pub fn conformal_via_toeplitz(n: u32, m: u32, s: u64) -> Result<BigCount> {
    assert!(n >= 1 && m >= 1);
    if s > (n as u64) * (m as u64) {
        return Ok(BigCount::zero());
    }
    let wn = restricted_row(n, s).values;
    let wm = restricted_row(m, s).values;
    let wnm = restricted_row(n + m, s).values;
    let t: Vec<BigInt> = (0..=s as usize)
        .map(|g| {
            let mut acc = BigCount::zero();
            for j in 0..=g {
                acc += &wn[j] * &wm[g - j];
            }
            BigInt::from(acc)
        })
        .collect();
    let u: Vec<BigInt> = wnm.iter().map(|w| -BigInt::from(w.clone())).collect();
    let value = solve_closed(&ConvolutionProblem::new(t, u), s)?;
    if value.is_negative() {
        return Err(Error::Internal(format!(
            "Toeplitz closed form gave a negative count for (n={n}, m={m}, s={s})"
        )));
    }
    let (_, digits) = value.into_parts();
    Ok(digits)
}

/// Number of terms of `Phi_r` must equal the unrestricted partition
/// number `P(r)`.
pub fn phi_term_count_matches_partitions(r: u32) -> bool {
    BigCount::from(phi_terms(r).len() as u64) == unrestricted_count(r as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfunc::gaussian_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn forward_with_zero_u_returns_t() {
        let t: Vec<BigInt> = (0..10).map(int).collect();
        let u = vec![BigInt::zero(); 10];
        let problem = ConvolutionProblem::new(t.clone(), u);
        assert_eq!(solve_forward(&problem, 9).unwrap(), t);
        assert_eq!(solve_closed(&problem, 7).unwrap(), int(7));
    }

    #[test]
    fn closed_form_first_indices() {
        // g = 0 gives T(0); g = 1 gives T(1) + U(1)*T(0) with T(0) = 1
        let problem = ConvolutionProblem::new(vec![int(1), int(5)], vec![int(0), int(3)]);
        assert_eq!(solve_closed(&problem, 0).unwrap(), int(1));
        assert_eq!(solve_closed(&problem, 1).unwrap(), int(8));
    }

    #[test]
    fn phi_explicit_small_cases() {
        let u = vec![int(0), int(7), int(11), int(13)];
        assert_eq!(phi_eval(0, &u).unwrap(), int(1));
        assert_eq!(phi_eval(1, &u).unwrap(), int(7));
        // Phi_2 = U(2) + U(1)^2
        assert_eq!(phi_eval(2, &u).unwrap(), int(11 + 49));
        // Phi_3 = U(3) + 2 U(2) U(1) + U(1)^3
        assert_eq!(phi_eval(3, &u).unwrap(), int(13 + 2 * 11 * 7 + 343));
    }

    #[test]
    fn phi_coefficient_sums_are_powers_of_two() {
        // with all U(l) = 1 the value of Phi_r is the coefficient sum
        let ones = vec![BigInt::one(); 16];
        for r in 1..=10u64 {
            assert_eq!(phi_eval(r, &ones).unwrap(), int(1) << (r - 1) as usize);
            let sum: BigCount = phi_terms(r as u32)
                .iter()
                .map(|t| t.coefficient.clone())
                .sum();
            assert_eq!(BigInt::from(sum), int(1) << (r - 1) as usize);
        }
        assert_eq!(phi_eval(6, &ones).unwrap(), int(32));
    }

    #[test]
    fn phi_term_counts_are_partition_numbers() {
        for r in 0..=12 {
            assert!(phi_term_count_matches_partitions(r), "r = {r}");
        }
    }

    #[test]
    fn phi_multinomial_matches_recurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x70EB);
        for _ in 0..50 {
            let u: Vec<BigInt> = (0..12).map(|_| int(rng.gen_range(-100..=100))).collect();
            for r in 0..=10u32 {
                assert_eq!(
                    phi_eval_multinomial(r, &u).unwrap(),
                    phi_eval(r as u64, &u).unwrap(),
                    "r = {r}, u = {u:?}"
                );
            }
        }
    }

    #[test]
    fn closed_equals_forward_on_random_problems() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0A11);
        for _ in 0..60 {
            let gmax = rng.gen_range(1..=20u64);
            let t: Vec<BigInt> = (0..=gmax).map(|_| int(rng.gen_range(-100..=100))).collect();
            let u: Vec<BigInt> = (0..=gmax).map(|_| int(rng.gen_range(-100..=100))).collect();
            let problem = ConvolutionProblem::new(t, u);
            let forward = solve_forward(&problem, gmax).unwrap();
            for g in 0..=gmax {
                assert_eq!(solve_closed(&problem, g).unwrap(), forward[g as usize]);
            }
        }
    }

    #[test]
    fn conformal_instantiation_matches_gaussian() {
        for n in 1..=6 {
            for m in 1..=6 {
                let g = gaussian_poly(n, m).unwrap();
                for s in 0..=g.order() {
                    assert_eq!(
                        conformal_via_toeplitz(n, m, s).unwrap(),
                        g.get(s),
                        "(n={n}, m={m}, s={s})"
                    );
                }
            }
        }
        assert_eq!(
            conformal_via_toeplitz(2, 2, 2).unwrap(),
            BigCount::from(2u32)
        );
        assert_eq!(
            conformal_via_toeplitz(3, 4, 6).unwrap(),
            BigCount::from(5u32)
        );
        for n in 1..=4 {
            for m in 1..=4 {
                assert_eq!(
                    conformal_via_toeplitz(n, m, 0).unwrap(),
                    BigCount::from(1u32)
                );
            }
        }
    }
}
