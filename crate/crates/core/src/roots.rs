//! Numeric evaluation of skew equations with nonnegative coefficients:
//! positive-root bisection, classical mean chains, and the universal
//! root bounds.

use rand::Rng;

use crate::invariant::{enumerate_alpha, term_minus, term_plus};
use crate::{Error, Result};

/// Point with strictly positive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Point> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint(
                "point needs at least one coordinate".into(),
            ));
        }
        if coords.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(Error::InvalidPoint(format!(
                "coordinates must be finite and strictly positive: {coords:?}"
            )));
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn n(&self) -> u32 {
        self.coords.len() as u32
    }
}

/// One-pass product recurrence for `I_{n,0}..I_{n,n}`, no validation.
pub fn elementary_symmetric_unchecked(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut e = vec![0.0; n + 1];
    e[0] = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        for r in (1..=i + 1).rev() {
            e[r] += xi * e[r - 1];
        }
    }
    e
}

/// Elementary symmetric invariants `I_{n,0}..I_{n,n}` of the point.
pub fn elementary_symmetric(x: &Point) -> Result<Vec<f64>> {
    let e = elementary_symmetric_unchecked(x.coords());
    if e.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(
            "computing elementary symmetric invariants",
        ));
    }
    Ok(e)
}

fn binom_f64(n: u32, r: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..r.min(n - r) {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Harmonic and arithmetic means: the universal bracket for the positive
/// root of any nonnegative-coefficient skew equation.
pub fn bounds_basic(x: &Point) -> (f64, f64) {
    let n = x.coords.len() as f64;
    let harmonic = n / x.coords.iter().map(|v| 1.0 / v).sum::<f64>();
    let arithmetic = x.coords.iter().sum::<f64>() / n;
    (harmonic, arithmetic)
}

/// The full descending chain of `2n - 1` classical means:
/// `(I_r / C(n,r))^{1/r}` for `r = 1..n` down to the geometric mean,
/// then `(C(n,r) I_n / I_{n-r})^{1/r}` for `r = n-1..1` down to the
/// harmonic mean. Monotonicity is asserted with `1e-12` relative slack.
pub fn mean_chain(x: &Point) -> Result<Vec<f64>> {
    let n = x.n();
    let inv = elementary_symmetric(x)?;
    let mut chain = Vec::with_capacity(2 * n as usize - 1);
    for r in 1..=n {
        chain.push((inv[r as usize] / binom_f64(n, r)).powf(1.0 / r as f64));
    }
    for r in (1..n).rev() {
        let v = binom_f64(n, r) * inv[n as usize] / inv[(n - r) as usize];
        chain.push(v.powf(1.0 / r as f64));
    }
    for i in 1..chain.len() {
        if chain[i] > chain[i - 1] * (1.0 + 1e-12) {
            return Err(Error::MeanChainViolation {
                index: i,
                previous: chain[i - 1],
                current: chain[i],
            });
        }
    }
    Ok(chain)
}

/// Enhanced bracket, derived only for `n = 3` and `n = 4`.
pub fn bounds_enhanced(n: u32, x: &Point) -> Result<(f64, f64)> {
    if x.n() != n {
        return Err(Error::InvalidPoint(format!(
            "point has {} coordinates, expected {n}",
            x.n()
        )));
    }
    let inv = elementary_symmetric(x)?;
    let (a, b) = match n {
        3 => (inv[2] / inv[1], (inv[3] * inv[1] / inv[2]).sqrt()),
        4 => ((inv[3] / inv[1]).sqrt(), (inv[4] * inv[1] / inv[3]).sqrt()),
        other => return Err(Error::UnsupportedBoundOrder(other)),
    };
    let (lo, hi) = (a.min(b), a.max(b));
    let (basic_lo, basic_hi) = bounds_basic(x);
    if lo < basic_lo * (1.0 - 1e-12) || hi > basic_hi * (1.0 + 1e-12) {
        return Err(Error::Internal(format!(
            "enhanced bracket [{lo}, {hi}] does not nest inside basic [{basic_lo}, {basic_hi}]"
        )));
    }
    Ok((lo, hi))
}

/// True iff the invariants satisfy all pairing identities
/// `I_{n,n}^{1/n} = (I_{n,n-r}/I_{n,r})^{1/(n-2r)}` (for `2r < n`) to
/// relative tolerance `tol`. Trivially true for `n <= 2`.
pub fn pairing_condition_check(x: &Point, tol: f64) -> bool {
    let n = x.n();
    if n <= 2 {
        return true;
    }
    let inv = elementary_symmetric_unchecked(x.coords());
    let root = inv[n as usize].powf(1.0 / n as f64);
    for r in 1..n {
        if 2 * r >= n {
            break;
        }
        let rhs = (inv[(n - r) as usize] / inv[r as usize]).powf(1.0 / (n - 2 * r) as f64);
        let rel = (root - rhs).abs() / root.max(rhs);
        if rel > tol {
            return false;
        }
    }
    true
}

/// Nonnegative coefficient bindings for a monic skew equation:
/// `values[s][l-1] = C_{s,l}` over the coefficient slots `s <= mn/2`.
#[derive(Debug, Clone)]
pub struct SkewCoeffs {
    pub n: u32,
    pub m: u32,
    pub values: Vec<Vec<f64>>,
}

impl SkewCoeffs {
    pub fn new(n: u32, m: u32, values: Vec<Vec<f64>>) -> Result<SkewCoeffs> {
        let mn = (n as u64) * (m as u64);
        if values.len() as u64 != mn / 2 + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected coefficient rows for s = 0..={}, got {}",
                mn / 2,
                values.len()
            )));
        }
        for (s, row) in values.iter().enumerate() {
            let expected = enumerate_alpha(n, m, s as u64).len();
            if row.len() != expected {
                return Err(Error::InvalidParameter(format!(
                    "row s = {s} must have {expected} coefficients, got {}",
                    row.len()
                )));
            }
            if row.iter().any(|c| !c.is_finite() || *c < 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "coefficients must be finite and nonnegative, row s = {s}: {row:?}"
                )));
            }
        }
        if (values[0][0] - 1.0).abs() > f64::EPSILON {
            return Err(Error::InvalidParameter(format!(
                "equation must be monic: C_{{0,1}} = {}",
                values[0][0]
            )));
        }
        Ok(SkewCoeffs { n, m, values })
    }

    /// All coefficients equal to one.
    pub fn ones(n: u32, m: u32) -> SkewCoeffs {
        let mn = (n as u64) * (m as u64);
        let values = (0..=mn / 2)
            .map(|s| vec![1.0; enumerate_alpha(n, m, s).len()])
            .collect();
        SkewCoeffs { n, m, values }
    }

    /// Seeded random nonnegative coefficients with `C_{0,1} = 1`.
    pub fn random(n: u32, m: u32, rng: &mut impl Rng) -> SkewCoeffs {
        let mn = (n as u64) * (m as u64);
        let mut values: Vec<Vec<f64>> = (0..=mn / 2)
            .map(|s| {
                (0..enumerate_alpha(n, m, s).len())
                    .map(|_| rng.gen_range(0.0..4.0))
                    .collect()
            })
            .collect();
        values[0][0] = 1.0;
        SkewCoeffs { n, m, values }
    }

    // Signed (coefficient, lambda power) pairs of the skew equation at a
    // fixed point x.
    fn lambda_terms(&self, x: &[f64]) -> Vec<(f64, u32)> {
        let inv = elementary_symmetric_unchecked(x);
        let mn = (self.n as u64) * (self.m as u64);
        let mut terms = Vec::new();
        for (s, row) in self.values.iter().enumerate() {
            let s = s as u64;
            let alphas = enumerate_alpha(self.n, self.m, s);
            for (l0, &c) in row.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let alpha = &alphas[l0];
                let plus = term_plus(alpha, self.m);
                let minus = term_minus(alpha, self.m);
                if 2 * s == mn && plus == minus {
                    continue; // annihilated middle pair
                }
                let eval = |mono: &crate::invariant::InvMonomial| {
                    mono.inv_exponents
                        .iter()
                        .enumerate()
                        .map(|(r0, &e)| inv[r0 + 1].powi(e as i32))
                        .product::<f64>()
                };
                terms.push((c * eval(&plus), plus.lambda_power));
                terms.push((-c * eval(&minus), minus.lambda_power));
            }
        }
        terms
    }
}

/// Converged positive root with its final bracket and a normalized
/// residual (`f(lambda)` over the sum of absolute term magnitudes).
#[derive(Debug, Clone, Copy)]
pub struct RootResult {
    pub lambda: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
}

fn eval_terms(terms: &[(f64, u32)], lambda: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut scale = 0.0;
    for &(c, p) in terms {
        let v = c * lambda.powi(p as i32);
        value += v;
        scale += v.abs();
    }
    (value, scale)
}

/// Unique positive root of the monic skew equation with nonnegative
/// coefficients, by bisection. The initial bracket `[m_h/2, 2 m_a]`
/// doubles outward up to 60 times if it fails to capture the sign
/// change; the converged root is checked against the harmonic/arithmetic
/// bound before returning.
pub fn positive_root(coeffs: &SkewCoeffs, x: &Point, tol: f64) -> Result<RootResult> {
    if x.n() != coeffs.n {
        return Err(Error::InvalidPoint(format!(
            "point has {} coordinates, equation has n = {}",
            x.n(),
            coeffs.n
        )));
    }
    let (harmonic, arithmetic) = bounds_basic(x);
    if coeffs.n == 1 {
        // monic skew forces lambda = x_1
        let lambda = x.coords()[0];
        return Ok(RootResult {
            lambda,
            residual: 0.0,
            bracket: (lambda, lambda),
            iterations: 0,
        });
    }
    let terms = coeffs.lambda_terms(x.coords());
    let f = |lambda: f64| eval_terms(&terms, lambda).0;

    let mut lo = harmonic / 2.0;
    let mut hi = 2.0 * arithmetic;
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    let mut expansions = 0u32;
    while f_lo > 0.0 && expansions < 60 {
        lo /= 2.0;
        f_lo = f(lo);
        expansions += 1;
    }
    while f_hi < 0.0 && expansions < 60 {
        hi *= 2.0;
        f_hi = f(hi);
        expansions += 1;
    }
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::BracketFailure {
            lo,
            hi,
            f_lo,
            f_hi,
            expansions,
        });
    }
    let mut iterations = 0u32;
    while hi - lo > tol * hi.abs() && iterations < 500 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket collapsed to adjacent floats
        }
        let fm = f(mid);
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let lambda = 0.5 * (lo + hi);
    let (value, scale) = eval_terms(&terms, lambda);
    let residual = if scale > 0.0 { value / scale } else { 0.0 };
    let slack = 1e-9;
    if lambda < harmonic * (1.0 - slack) || lambda > arithmetic * (1.0 + slack) {
        return Err(Error::Internal(format!(
            "root {lambda} escapes the universal bracket [{harmonic}, {arithmetic}]"
        )));
    }
    Ok(RootResult {
        lambda,
        residual,
        bracket: (lo, hi),
        iterations,
    })
}

/// Both roots of a duality experiment, kept for reporting.
#[derive(Debug, Clone, Copy)]
pub struct DualityReport {
    pub pass: bool,
    pub root: f64,
    pub inverse_root: f64,
    pub product: f64,
}

/// Solves at `x` and at the componentwise inverse point; the two roots
/// must multiply to 1 within `tol`.
pub fn root_duality_check(coeffs: &SkewCoeffs, x: &Point, tol: f64) -> Result<DualityReport> {
    let direct = positive_root(coeffs, x, 1e-13)?;
    let inverted = Point::new(x.coords().iter().map(|v| 1.0 / v).collect())?;
    let mirror = positive_root(coeffs, &inverted, 1e-13)?;
    let product = direct.lambda * mirror.lambda;
    Ok(DualityReport {
        pass: (product - 1.0).abs() <= tol,
        root: direct.lambda,
        inverse_root: mirror.lambda,
        product,
    })
}

/// Dense `lambda`-power coefficient list of the skew equation at `x`
/// (index = power). Useful for sign-structure inspection.
pub fn lambda_coefficients(coeffs: &SkewCoeffs, x: &Point) -> Result<Vec<f64>> {
    if x.n() != coeffs.n {
        return Err(Error::InvalidPoint("dimension mismatch".into()));
    }
    let mn = (coeffs.n as usize) * (coeffs.m as usize);
    let mut dense = vec![0.0; mn + 1];
    for (c, p) in coeffs.lambda_terms(x.coords()) {
        dense[p as usize] += c;
    }
    Ok(dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn point(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn elementary_symmetric_examples() {
        // expand (t+1)(t+2)(t+3)
        let e = elementary_symmetric(&point(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(e, vec![1.0, 6.0, 11.0, 6.0]);
        // equal variables give binomial coefficients times powers
        let e = elementary_symmetric(&point(&[2.0; 4])).unwrap();
        for r in 0..=4u32 {
            assert!((e[r as usize] - binom_f64(4, r) * 2.0f64.powi(r as i32)).abs() < 1e-12);
        }
        // I_{n,n-1} = I_{n,n} * sum 1/x_i
        let x = point(&[1.5, 2.25, 0.75, 4.0]);
        let e = elementary_symmetric(&x).unwrap();
        let expected = e[4] * x.coords().iter().map(|v| 1.0 / v).sum::<f64>();
        assert!((e[3] - expected).abs() < 1e-12 * expected.abs());
    }

    #[test]
    fn invalid_points_are_rejected() {
        assert!(Point::new(vec![]).is_err());
        assert!(Point::new(vec![1.0, -2.0]).is_err());
        assert!(Point::new(vec![1.0, 0.0]).is_err());
        assert!(Point::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn basic_bounds_examples() {
        assert_eq!(bounds_basic(&point(&[1.0, 1.0])), (1.0, 1.0));
        let (lo, hi) = bounds_basic(&point(&[1.0, 4.0]));
        assert!((lo - 1.6).abs() < 1e-15 && (hi - 2.5).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let x = point(&(0..n).map(|_| rng.gen_range(0.1..10.0)).collect::<Vec<_>>());
            let (lo, hi) = bounds_basic(&x);
            assert!(lo <= hi * (1.0 + 1e-12));
        }
    }

    #[test]
    fn mean_chain_examples() {
        let chain = mean_chain(&point(&[2.0; 5])).unwrap();
        assert_eq!(chain.len(), 9);
        for v in &chain {
            assert!((v - 2.0).abs() < 1e-12);
        }
        let chain = mean_chain(&point(&[1.0, 2.0, 4.0])).unwrap();
        assert!((chain[0] - 7.0 / 3.0).abs() < 1e-12);
        assert!((chain[2] - 2.0).abs() < 1e-12);
        assert!((chain[4] - 12.0 / 7.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let n = rng.gen_range(1..=8);
            let x = point(
                &(0..n)
                    .map(|_| rng.gen_range(0.05..20.0))
                    .collect::<Vec<_>>(),
            );
            mean_chain(&x).unwrap(); // sortedness is checked internally
        }
    }

    #[test]
    fn enhanced_bounds_examples() {
        let (lo, hi) = bounds_enhanced(3, &point(&[1.0, 1.0, 1.0])).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        // x = (1,2,4) satisfies the pairing condition, so both candidate
        // expressions collapse onto the root 2
        let (lo, hi) = bounds_enhanced(3, &point(&[1.0, 2.0, 4.0])).unwrap();
        assert!((lo - 2.0).abs() < 1e-12 && (hi - 2.0).abs() < 1e-12);
        assert!(matches!(
            bounds_enhanced(5, &point(&[1.0; 5])),
            Err(Error::UnsupportedBoundOrder(5))
        ));
    }

    #[test]
    fn pairing_condition_examples() {
        // x_1^2 = x_2 x_3 up to permutation
        assert!(pairing_condition_check(&point(&[2.0, 1.0, 4.0]), 1e-9));
        assert!(pairing_condition_check(&point(&[1.0, 4.0, 2.0, 2.0]), 1e-9));
        assert!(!pairing_condition_check(&point(&[1.0, 2.0, 5.0]), 1e-9));
        assert!(!pairing_condition_check(
            &point(&[1.0, 3.0, 4.0, 5.0]),
            1e-9
        ));
        // n <= 2 has no constraints
        assert!(pairing_condition_check(&point(&[3.0, 7.0]), 1e-9));
    }

    #[test]
    fn root_n2_is_geometric_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=4u32 {
            for _ in 0..20 {
                let coeffs = SkewCoeffs::random(2, m, &mut rng);
                let x = point(&[rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0)]);
                let root = positive_root(&coeffs, &x, 1e-13).unwrap();
                let expected = (x.coords()[0] * x.coords()[1]).sqrt();
                assert!(
                    (root.lambda - expected).abs() <= 1e-12 * expected,
                    "m={m}: {} vs {expected}",
                    root.lambda
                );
            }
        }
        // the worked bracket example
        let root = positive_root(&SkewCoeffs::ones(2, 3), &point(&[1.0, 4.0]), 1e-13).unwrap();
        assert!((root.lambda - 2.0).abs() < 1e-12);
    }

    #[test]
    fn root_equal_variables_and_n1() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=5u32 {
            for m in 1..=3u32 {
                let c = rng.gen_range(0.3..4.0);
                let coeffs = SkewCoeffs::random(n, m, &mut rng);
                let x = point(&vec![c; n as usize]);
                let root = positive_root(&coeffs, &x, 1e-13).unwrap();
                assert!(
                    (root.lambda - c).abs() <= 1e-12 * c,
                    "(n={n}, m={m}): {} vs {c}",
                    root.lambda
                );
            }
        }
    }

    #[test]
    fn root_pairing_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // (1,4,2,2): 1*4 = 2*2, so lambda = I_{4,4}^{1/4} = 2
        let coeffs = SkewCoeffs::random(4, 2, &mut rng);
        let root = positive_root(&coeffs, &point(&[1.0, 4.0, 2.0, 2.0]), 1e-13).unwrap();
        assert!((root.lambda - 2.0).abs() < 1e-9);
        // n = 3 pairing x_1^2 = x_2 x_3
        let coeffs = SkewCoeffs::random(3, 3, &mut rng);
        let root = positive_root(&coeffs, &point(&[2.0, 1.0, 4.0]), 1e-13).unwrap();
        assert!((root.lambda - 2.0).abs() < 1e-9);
    }

    #[test]
    fn root_respects_bounds_and_brackets() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let n = rng.gen_range(2..=6u32);
            let m = rng.gen_range(1..=3u32);
            let coeffs = SkewCoeffs::random(n, m, &mut rng);
            let x = point(&(0..n).map(|_| rng.gen_range(0.1..10.0)).collect::<Vec<_>>());
            let root = positive_root(&coeffs, &x, 1e-13).unwrap();
            let (lo, hi) = bounds_basic(&x);
            assert!(root.lambda >= lo * (1.0 - 1e-9) && root.lambda <= hi * (1.0 + 1e-9));
            assert!(root.bracket.0 <= root.lambda && root.lambda <= root.bracket.1);
            assert!(root.residual.abs() < 1e-9);
            if n == 3 || n == 4 {
                let (elo, ehi) = bounds_enhanced(n, &x).unwrap();
                assert!(
                    root.lambda >= elo * (1.0 - 1e-9) && root.lambda <= ehi * (1.0 + 1e-9),
                    "enhanced bracket [{elo}, {ehi}] missed {}",
                    root.lambda
                );
            }
        }
    }

    #[test]
    fn root_homogeneity_and_permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(2..=5u32);
            let coeffs = SkewCoeffs::random(n, 2, &mut rng);
            let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..5.0)).collect();
            let root = positive_root(&coeffs, &point(&coords), 1e-13)
                .unwrap()
                .lambda;
            let k = rng.gen_range(0.1..10.0);
            let scaled: Vec<f64> = coords.iter().map(|v| k * v).collect();
            let scaled_root = positive_root(&coeffs, &point(&scaled), 1e-13)
                .unwrap()
                .lambda;
            assert!((scaled_root - k * root).abs() <= 1e-9 * (k * root));
            let mut permuted = coords.clone();
            permuted.reverse();
            let permuted_root = positive_root(&coeffs, &point(&permuted), 1e-13)
                .unwrap()
                .lambda;
            assert!((permuted_root - root).abs() <= 1e-10 * root);
        }
    }

    #[test]
    fn duality_of_roots() {
        let report =
            root_duality_check(&SkewCoeffs::ones(2, 2), &point(&[1.0, 4.0]), 1e-9).unwrap();
        assert!(report.pass);
        assert!((report.root - 2.0).abs() < 1e-10);
        assert!((report.inverse_root - 0.5).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5u32);
            let m = rng.gen_range(1..=3u32);
            let coeffs = SkewCoeffs::random(n, m, &mut rng);
            let x = point(&(0..n).map(|_| rng.gen_range(0.2..5.0)).collect::<Vec<_>>());
            let report = root_duality_check(&coeffs, &x, 1e-9).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn skew_coeffs_validation() {
        assert!(SkewCoeffs::new(2, 1, vec![vec![1.0], vec![0.5]]).is_ok());
        // wrong row length
        assert!(SkewCoeffs::new(2, 1, vec![vec![1.0], vec![0.5, 0.5]]).is_err());
        // negative coefficient
        assert!(SkewCoeffs::new(2, 1, vec![vec![1.0], vec![-0.5]]).is_err());
        // not monic
        assert!(SkewCoeffs::new(2, 1, vec![vec![2.0], vec![0.5]]).is_err());
    }
}
