//! Restricted, unrestricted and conformal partition counting.
//!
//! - [`restricted_count`]: `W_n(s)`, partitions of `s` into parts `<= n`,
//!   via the recurrence `W_r(s) = W_{r-1}(s) + W_r(s - r)` over a shared
//!   memoized table.
//! - [`unrestricted_count`]: `P(s) = W_s(s)`.
//! - [`conformal_count_oracle`]: ground-truth enumeration of the
//!   Diophantine system `sum r*x_r = s`, `sum x_r <= m`.
//! - [`conformal_count_dp`]: the same count by dynamic programming over
//!   partitions of `s` into at most `m` parts, each `<= n`.
//! - [`molien_series`]: coefficients of `prod 1/(1 - t^{d_r})`.
//!
//! All counts are exact [`BigCount`] values; binomial-sized quantities
//! overflow machine words long before the sizes of interest here.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::genfunc::CoeffSeq;
use crate::{BigCount, Error, Result};

/// Default ceiling on states visited by the brute-force enumerators.
pub const DEFAULT_ORACLE_CEILING: u64 = 100_000_000;

/// Row of restricted partition numbers `W_n(s)` for `s = 0..=order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    pub n: u32,
    pub values: Vec<BigCount>,
}

// W_r rows grown on demand. rows[r][s] = W_r(s); row 0 is the unit series.
// Published entries are never mutated, only extended.
struct WTable {
    rows: Vec<Vec<BigCount>>,
}

impl WTable {
    fn new() -> Self {
        WTable {
            rows: vec![vec![BigCount::one()]],
        }
    }

    fn ensure(&mut self, n: usize, s: usize) {
        while self.rows.len() <= n {
            self.rows.push(Vec::new());
        }
        if self.rows[0].len() <= s {
            let mut row0 = vec![BigCount::zero(); s + 1];
            row0[0] = BigCount::one();
            self.rows[0] = row0;
        }
        for r in 1..=n {
            let start = self.rows[r].len();
            for j in start..=s {
                let mut v = self.rows[r - 1][j].clone();
                if j >= r {
                    v += self.rows[r][j - r].clone();
                }
                self.rows[r].push(v);
            }
        }
    }

    fn get(&mut self, n: usize, s: usize) -> BigCount {
        // W_n(s) = W_s(s) for n >= s, so the table never grows past row s.
        let n_eff = n.min(s);
        self.ensure(n_eff, s);
        self.rows[n_eff][s].clone()
    }
}

static W_TABLE: Lazy<Mutex<WTable>> = Lazy::new(|| Mutex::new(WTable::new()));

/// `W_n(s)`: the number of partitions of `s` into parts none of which
/// exceeds `n`. Memoized; safe to call from multiple threads.
pub fn restricted_count(n: u32, s: u64) -> BigCount {
    assert!(n >= 1, "restricted_count requires n >= 1");
    W_TABLE.lock().unwrap().get(n as usize, s as usize)
}

/// `P(s)`: the unrestricted partition number, computed as `W_s(s)` with
/// `P(0) = 1`.
pub fn unrestricted_count(s: u64) -> BigCount {
    if s == 0 {
        return BigCount::one();
    }
    W_TABLE.lock().unwrap().get(s as usize, s as usize)
}

/// Restricted partition numbers `W_n(s)` for `s = 0..=order` as one row.
pub fn restricted_row(n: u32, order: u64) -> PartitionTable {
    assert!(n >= 1);
    let mut table = W_TABLE.lock().unwrap();
    let values = (0..=order)
        .map(|s| table.get(n as usize, s as usize))
        .collect();
    PartitionTable { n, values }
}

fn oracle_ceiling_guard(visited: &mut u64, ceiling: u64) -> Result<()> {
    *visited += 1;
    if *visited > ceiling {
        return Err(Error::ResourceCeiling { ceiling });
    }
    Ok(())
}

// Count tuples (x_1..x_r) >= 0 with sum r*x_r = s and sum x_r <= cap,
// choosing multiplicities for part r downward.
fn oracle_rec(r: u64, s: u64, cap: u64, visited: &mut u64, ceiling: u64) -> Result<BigCount> {
    oracle_ceiling_guard(visited, ceiling)?;
    if s == 0 {
        return Ok(BigCount::one());
    }
    if r == 0 || s > cap * r {
        return Ok(BigCount::zero());
    }
    if r == 1 {
        // x_1 = s, admissible iff it fits the weight cap
        return Ok(if s <= cap {
            BigCount::one()
        } else {
            BigCount::zero()
        });
    }
    let mut total = BigCount::zero();
    let max_mult = (s / r).min(cap);
    for x in 0..=max_mult {
        total += oracle_rec(r - 1, s - x * r, cap - x, visited, ceiling)?;
    }
    Ok(total)
}

/// Ground-truth count of solutions of `sum_{r=1}^{n} r*x_r = s`,
/// `sum x_r <= m` by exhaustive enumeration. Intended for small `n*m`;
/// the visit counter aborts with [`Error::ResourceCeiling`] rather than
/// run unbounded.
pub fn conformal_count_oracle(n: u32, m: u32, s: u64) -> Result<BigCount> {
    conformal_count_oracle_with_ceiling(n, m, s, DEFAULT_ORACLE_CEILING)
}

/// Same as [`conformal_count_oracle`] with an explicit visit ceiling.
pub fn conformal_count_oracle_with_ceiling(
    n: u32,
    m: u32,
    s: u64,
    ceiling: u64,
) -> Result<BigCount> {
    assert!(n >= 1 && m >= 1, "conformal counts require n, m >= 1");
    let mut visited = 0u64;
    oracle_rec(n as u64, s, m as u64, &mut visited, ceiling)
}

// Memo for the DP. Keyed by (n, m, s); entries are immutable once inserted.
static DP_MEMO: Lazy<Mutex<HashMap<(u32, u32, u64), BigCount>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn dp(n: u32, m: u32, s: u64) -> BigCount {
    if s == 0 {
        return BigCount::one();
    }
    if n == 0 || m == 0 || s > (n as u64) * (m as u64) {
        return BigCount::zero();
    }
    if let Some(v) = DP_MEMO.lock().unwrap().get(&(n, m, s)) {
        return v.clone();
    }
    // Partitions of s into <= m parts each <= n: either no part equals n
    // (all parts <= n-1), or remove one part equal to n.
    let mut v = dp(n - 1, m, s);
    if s >= n as u64 {
        v += dp(n, m - 1, s - n as u64);
    }
    DP_MEMO.lock().unwrap().insert((n, m, s), v.clone());
    v
}

/// `P_n^m(s)`: partitions of `s` into at most `m` parts, each `<= n`,
/// by dynamic programming. Agrees with [`conformal_count_oracle`]
/// everywhere.
pub fn conformal_count_dp(n: u32, m: u32, s: u64) -> BigCount {
    assert!(n >= 1 && m >= 1, "conformal counts require n, m >= 1");
    dp(n, m, s)
}

/// Coefficients of the Molien series `prod_r 1/(1 - t^{d_r})` up to
/// degree `truncation`, by exact series multiplication.
pub fn molien_series(degrees: &[u32], truncation: u64) -> CoeffSeq {
    assert!(degrees.iter().all(|&d| d >= 1), "all degrees must be >= 1");
    let len = truncation as usize + 1;
    let mut coeffs = vec![BigCount::zero(); len];
    coeffs[0] = BigCount::one();
    for &d in degrees {
        // in-place multiply by 1/(1 - t^d)
        let d = d as usize;
        for s in d..len {
            let prev = coeffs[s - d].clone();
            coeffs[s] += prev;
        }
    }
    CoeffSeq { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn restricted_boundary_values() {
        // W_n(0) = W_n(1) = 1 for any n
        for n in 1..=9 {
            assert_eq!(restricted_count(n, 0), big(1));
            assert_eq!(restricted_count(n, 1), big(1));
        }
        // only partition into parts <= 1 is 1+1+...+1
        for s in 0..40 {
            assert_eq!(restricted_count(1, s), big(1));
        }
        // {2+2, 2+1+1, 1+1+1+1}
        assert_eq!(restricted_count(2, 4), big(3));
    }

    #[test]
    fn restricted_nondecreasing_in_n() {
        for s in 0..25u64 {
            for n in 1..12u32 {
                assert!(restricted_count(n + 1, s) >= restricted_count(n, s));
            }
        }
    }

    #[test]
    fn unrestricted_small_values() {
        assert_eq!(unrestricted_count(0), big(1));
        assert_eq!(unrestricted_count(5), big(7));
        // P(s) = W_s(s): parts of s never exceed s
        for s in 1..30 {
            assert_eq!(unrestricted_count(s), restricted_count(s as u32, s));
        }
        // classical value, needs exactness
        assert_eq!(unrestricted_count(100).to_string(), "190569292");
    }

    #[test]
    fn oracle_examples() {
        for n in 1..=5 {
            for m in 1..=5 {
                // P_n^m(0) = 1 and P_n^m(nm + 1) = 0
                assert_eq!(conformal_count_oracle(n, m, 0).unwrap(), big(1));
                let nm = (n as u64) * (m as u64);
                assert_eq!(
                    conformal_count_oracle(n, m, nm + 1).unwrap(),
                    BigCount::zero()
                );
            }
        }
        // tuples (x_1, x_2) in {(2,0), (0,1)}
        assert_eq!(conformal_count_oracle(2, 2, 2).unwrap(), big(2));
    }

    #[test]
    fn oracle_ceiling_is_enforced() {
        let err = conformal_count_oracle_with_ceiling(8, 8, 40, 10).unwrap_err();
        match err {
            Error::ResourceCeiling { ceiling } => assert_eq!(ceiling, 10),
            other => panic!("expected ResourceCeiling, got {other:?}"),
        }
    }

    #[test]
    fn dp_examples() {
        // {4, 3+1, 2+2}
        assert_eq!(conformal_count_dp(4, 2, 4), big(3));
        // {2+2, 2+1+1}
        assert_eq!(conformal_count_dp(2, 3, 4), big(2));
    }

    #[test]
    fn dp_matches_oracle_and_symmetries() {
        for n in 1..=6u32 {
            for m in 1..=6u32 {
                let nm = (n as u64) * (m as u64);
                for s in 0..=nm {
                    let dp = conformal_count_dp(n, m, s);
                    assert_eq!(
                        dp,
                        conformal_count_oracle(n, m, s).unwrap(),
                        "oracle (n={n}, m={m}, s={s})"
                    );
                    assert_eq!(dp, conformal_count_dp(m, n, s), "index swap");
                    assert_eq!(dp, conformal_count_dp(n, m, nm - s), "palindrome");
                }
                // unimodality on the rising half
                for s in 1..=nm / 2 {
                    assert!(conformal_count_dp(n, m, s) >= conformal_count_dp(n, m, s - 1));
                }
            }
        }
    }

    #[test]
    fn dp_dominated_by_restricted() {
        for n in 1..=6u32 {
            for m in 1..=6u32 {
                for s in 0..=(n as u64) * (m as u64) {
                    assert!(conformal_count_dp(n, m, s) <= restricted_count(n, s));
                    if (m as u64) >= s {
                        assert_eq!(conformal_count_dp(n, m, s), restricted_count(n, s));
                    }
                }
            }
        }
    }

    #[test]
    fn molien_examples() {
        assert_eq!(
            molien_series(&[1], 5).coeffs,
            vec![big(1), big(1), big(1), big(1), big(1), big(1)]
        );
        assert_eq!(
            molien_series(&[1, 2], 4).coeffs,
            vec![big(1), big(1), big(2), big(2), big(3)]
        );
        // degrees 1..n reproduce W_n(s)
        for n in 1..=6u32 {
            let degrees: Vec<u32> = (1..=n).collect();
            let series = molien_series(&degrees, 20);
            for s in 0..=20u64 {
                assert_eq!(
                    series.coeffs[s as usize],
                    restricted_count(n, s),
                    "n={n}, s={s}"
                );
            }
        }
    }
}
