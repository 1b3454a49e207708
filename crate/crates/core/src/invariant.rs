//! Symbolic reciprocal and skew-reciprocal polynomials over the
//! elementary symmetric invariants `I_{n,1}..I_{n,n}` and `lambda`.
//!
//! A polynomial of parameters `(n, m)` is assembled from counter-partner
//! monomial pairs indexed by solutions `alpha` of the Diophantine system
//! `sum r*alpha_r = s`, `sum alpha_r <= m`:
//!
//! ```text
//! T+ = prod I_{n,r}^{alpha_r} * lambda^{mn - s}
//! T- = I_{n,n}^{m - sum alpha_r} * prod I_{n,n-r}^{alpha_r} * lambda^{s}
//! ```
//!
//! The reciprocal kind pairs them with equal signs, the skew kind with
//! opposite signs (and drops the symbolically identical middle pairs).
//! Multiplication re-expresses the expanded product in the same basis and
//! checks the structural invariants of the predicted kind on the way.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::roots::elementary_symmetric_unchecked;
use crate::{BigCount, Error, Result};

/// Solution of the defining Diophantine system: `entries[r-1]` is the
/// multiplicity `alpha_r` of the degree-`r` invariant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlphaTuple {
    pub entries: Vec<u32>,
}

impl AlphaTuple {
    pub fn n(&self) -> u32 {
        self.entries.len() as u32
    }

    /// `s = sum r * alpha_r`, the degree carried by the invariants.
    pub fn s(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * a as u64)
            .sum()
    }

    /// `sum alpha_r`, bounded by `m`.
    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Counter-partner image: `T-(alpha)` equals `T+(dual(alpha))` at the
    /// mirrored degree `mn - s`.
    pub fn dual(&self, m: u32) -> AlphaTuple {
        let n = self.entries.len();
        let mut entries = Vec::with_capacity(n);
        for r in 1..n {
            entries.push(self.entries[n - r - 1]);
        }
        entries.push(m - self.weight());
        AlphaTuple { entries }
    }
}

fn enumerate_alpha_rec(
    r: u32,
    n: u32,
    rem_weight: u32,
    rem_s: u64,
    current: &mut Vec<u32>,
    out: &mut Vec<AlphaTuple>,
) {
    if rem_s > rem_weight as u64 * n as u64 {
        return;
    }
    if r > n {
        if rem_s == 0 {
            out.push(AlphaTuple {
                entries: current.clone(),
            });
        }
        return;
    }
    let max_mult = (rem_weight as u64).min(rem_s / r as u64) as u32;
    for a in 0..=max_mult {
        current.push(a);
        enumerate_alpha_rec(
            r + 1,
            n,
            rem_weight - a,
            rem_s - (a as u64) * (r as u64),
            current,
            out,
        );
        current.pop();
    }
}

/// All solutions of `sum r*alpha_r = s`, `sum alpha_r <= m` in ascending
/// lexicographic order of `(alpha_1..alpha_n)`. The coefficient index `l`
/// is the 1-based position in this list; its length is `P_n^m(s)`.
pub fn enumerate_alpha(n: u32, m: u32, s: u64) -> Vec<AlphaTuple> {
    assert!(n >= 1 && m >= 1);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    enumerate_alpha_rec(1, n, m, s, &mut current, &mut out);
    out
}

/// Monomial over the invariants:
/// `prod I_{n,r}^{inv_exponents[r-1]} * lambda^{lambda_power}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvMonomial {
    pub inv_exponents: Vec<u32>,
    pub lambda_power: u32,
}

impl InvMonomial {
    /// Degree in the `x`-grading, counting `lambda` as degree 1 and
    /// `I_{n,r}` as degree `r`. Every assembled term has degree `mn`.
    pub fn total_degree(&self) -> u64 {
        self.lambda_power as u64
            + self
                .inv_exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| (i as u64 + 1) * e as u64)
                .sum::<u64>()
    }
}

/// `T+`: the high-lambda counter-partner of `alpha`.
pub fn term_plus(alpha: &AlphaTuple, m: u32) -> InvMonomial {
    let n = alpha.n();
    let mn = (m as u64) * (n as u64);
    InvMonomial {
        inv_exponents: alpha.entries.clone(),
        lambda_power: (mn - alpha.s()) as u32,
    }
}

/// `T-`: the low-lambda counter-partner of `alpha`.
pub fn term_minus(alpha: &AlphaTuple, m: u32) -> InvMonomial {
    let n = alpha.n() as usize;
    let mut exps = vec![0u32; n];
    for r in 1..n {
        // I_{n,n-r} picks up alpha_r; r = n contributes I_{n,0} = 1
        exps[n - r - 1] += alpha.entries[r - 1];
    }
    exps[n - 1] += m - alpha.weight();
    InvMonomial {
        inv_exponents: exps,
        lambda_power: alpha.s() as u32,
    }
}

/// Verifies the constitutive relation
/// `T+ * T- = I_{n,n}^{m-w} * prod (I_{n,r} I_{n,n-r})^{alpha_r} * lambda^{mn}`
/// by exponent-vector arithmetic.
pub fn constitutive_check(alpha: &AlphaTuple, m: u32) -> bool {
    let n = alpha.n() as usize;
    let plus = term_plus(alpha, m);
    let minus = term_minus(alpha, m);
    let mut product = vec![0u32; n];
    for i in 0..n {
        product[i] = plus.inv_exponents[i] + minus.inv_exponents[i];
    }
    let lambda = plus.lambda_power + minus.lambda_power;

    let mut expected = vec![0u32; n];
    expected[n - 1] += m - alpha.weight();
    for r in 1..=n {
        expected[r - 1] += alpha.entries[r - 1];
        if n - r >= 1 {
            expected[n - r - 1] += alpha.entries[r - 1];
        }
    }
    product == expected && lambda as u64 == (m as u64) * (n as u64)
}

/// Reciprocal polynomials keep counter-partners with equal signs; skew
/// ones flip the mirrored half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    Reciprocal,
    Skew,
}

impl PolyKind {
    /// Multiplication rule: like kinds give reciprocal, unlike give skew.
    pub fn product(self, other: PolyKind) -> PolyKind {
        if self == other {
            PolyKind::Reciprocal
        } else {
            PolyKind::Skew
        }
    }

    pub fn mirror_sign(self) -> i8 {
        match self {
            PolyKind::Reciprocal => 1,
            PolyKind::Skew => -1,
        }
    }
}

/// One assembled term: coefficient symbol `(s, l)`, a sign, and the
/// monomial it multiplies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTerm {
    pub s: u64,
    pub l: u32,
    pub sign: i8,
    pub monomial: InvMonomial,
}

/// Coefficient bindings: exact rational value per `(s, l)` symbol.
pub type CoeffBindings = BTreeMap<(u64, u32), BigRational>;

/// Assembled reciprocal or skew-reciprocal polynomial. Symbolic when
/// `bindings` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfDualPoly {
    pub n: u32,
    pub m: u32,
    pub kind: PolyKind,
    pub terms: Vec<PolyTerm>,
    pub bindings: Option<CoeffBindings>,
}

/// All coefficient slots `(s, l)` of an `(n, m)` polynomial: `s` up to
/// `mn/2` inclusive, `l = 1..=P_n^m(s)`.
pub fn coefficient_slots(n: u32, m: u32) -> Vec<(u64, u32)> {
    let mn = (n as u64) * (m as u64);
    let mut slots = Vec::new();
    for s in 0..=mn / 2 {
        for l in 1..=enumerate_alpha(n, m, s).len() as u32 {
            slots.push((s, l));
        }
    }
    slots
}

/// Builds the four-part decomposition. `bindings`, when present, must
/// cover every slot from [`coefficient_slots`].
pub fn assemble(n: u32, m: u32, kind: PolyKind, bindings: Option<CoeffBindings>) -> SelfDualPoly {
    assert!(n >= 1 && m >= 1);
    if let Some(b) = &bindings {
        for slot in coefficient_slots(n, m) {
            assert!(
                b.contains_key(&slot),
                "missing coefficient binding for {slot:?}"
            );
        }
    }
    let mn = (n as u64) * (m as u64);
    let mut terms = Vec::new();
    // T1 (high half) and its mirror T4
    for s in 0..=(mn - 1) / 2 {
        for (l0, alpha) in enumerate_alpha(n, m, s).iter().enumerate() {
            let l = l0 as u32 + 1;
            terms.push(PolyTerm {
                s,
                l,
                sign: 1,
                monomial: term_plus(alpha, m),
            });
            terms.push(PolyTerm {
                s,
                l,
                sign: kind.mirror_sign(),
                monomial: term_minus(alpha, m),
            });
        }
    }
    // middle block, present only for even mn
    if mn % 2 == 0 {
        let s_star = mn / 2;
        for (l0, alpha) in enumerate_alpha(n, m, s_star).iter().enumerate() {
            let l = l0 as u32 + 1;
            let plus = term_plus(alpha, m);
            let minus = term_minus(alpha, m);
            if kind == PolyKind::Skew && plus == minus {
                // counter-partners annihilate; the coefficient never appears
                continue;
            }
            terms.push(PolyTerm {
                s: s_star,
                l,
                sign: 1,
                monomial: plus,
            });
            terms.push(PolyTerm {
                s: s_star,
                l,
                sign: kind.mirror_sign(),
                monomial: minus,
            });
        }
    }
    terms.sort_by(|a, b| {
        b.monomial
            .lambda_power
            .cmp(&a.monomial.lambda_power)
            .then_with(|| a.monomial.inv_exponents.cmp(&b.monomial.inv_exponents))
            .then_with(|| (a.s, a.l).cmp(&(b.s, b.l)))
    });
    SelfDualPoly {
        n,
        m,
        kind,
        terms,
        bindings,
    }
}

impl SelfDualPoly {
    pub fn symbolic(n: u32, m: u32, kind: PolyKind) -> Self {
        assemble(n, m, kind, None)
    }

    /// All coefficients bound to 1 (monic: the slot `(0, 1)` is 1).
    pub fn monic(n: u32, m: u32, kind: PolyKind) -> Self {
        let bindings = coefficient_slots(n, m)
            .into_iter()
            .map(|slot| (slot, BigRational::one()))
            .collect();
        assemble(n, m, kind, Some(bindings))
    }

    pub fn order(&self) -> u64 {
        (self.n as u64) * (self.m as u64)
    }

    fn bindings_ref(&self) -> Result<&CoeffBindings> {
        self.bindings.as_ref().ok_or(Error::SymbolicCoefficients)
    }

    /// Dense expansion keyed by `(lambda_power, inv_exponents)`. Zero
    /// coefficients are dropped.
    pub fn expand(&self) -> Result<BTreeMap<(u32, Vec<u32>), BigRational>> {
        let bindings = self.bindings_ref()?;
        let mut out: BTreeMap<(u32, Vec<u32>), BigRational> = BTreeMap::new();
        for term in &self.terms {
            let c = &bindings[&(term.s, term.l)];
            let signed = if term.sign >= 0 {
                c.clone()
            } else {
                -c.clone()
            };
            let key = (
                term.monomial.lambda_power,
                term.monomial.inv_exponents.clone(),
            );
            let entry = out.entry(key).or_insert_with(BigRational::zero);
            *entry += signed;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Numeric evaluation at `lambda` and a positive point `x`.
    pub fn evaluate_f64(&self, lambda: f64, x: &[f64]) -> Result<f64> {
        let bindings = self.bindings_ref()?;
        if x.len() != self.n as usize {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.n,
                x.len()
            )));
        }
        let inv = elementary_symmetric_unchecked(x);
        let mut total = 0.0;
        for term in &self.terms {
            let c = rational_to_f64(&bindings[&(term.s, term.l)]) * term.sign as f64;
            let mut v = c * lambda.powi(term.monomial.lambda_power as i32);
            for (r0, &e) in term.monomial.inv_exponents.iter().enumerate() {
                if e > 0 {
                    v *= inv[r0 + 1].powi(e as i32);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact evaluation at rational arguments.
    pub fn evaluate_rational(
        &self,
        lambda: &BigRational,
        x: &[BigRational],
    ) -> Result<BigRational> {
        let bindings = self.bindings_ref()?;
        if x.len() != self.n as usize {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.n,
                x.len()
            )));
        }
        // elementary symmetric values by the one-pass recurrence
        let n = x.len();
        let mut inv = vec![BigRational::zero(); n + 1];
        inv[0] = BigRational::one();
        for (i, xi) in x.iter().enumerate() {
            for r in (1..=i + 1).rev() {
                let add = &inv[r - 1] * xi;
                inv[r] += add;
            }
        }
        let mut total = BigRational::zero();
        for term in &self.terms {
            let c = &bindings[&(term.s, term.l)];
            let mut v = if term.sign >= 0 {
                c.clone()
            } else {
                -c.clone()
            };
            for _ in 0..term.monomial.lambda_power {
                v *= lambda;
            }
            for (r0, &e) in term.monomial.inv_exponents.iter().enumerate() {
                for _ in 0..e {
                    v *= &inv[r0 + 1];
                }
            }
            total += v;
        }
        Ok(total)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let numer = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let denom = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    numer / denom
}

fn half(v: &BigRational) -> BigRational {
    v / BigRational::from_integer(BigInt::from(2))
}

// Re-express an expanded product in the (n, m, kind) basis, checking on
// the way that every monomial sits where a polynomial of that kind may
// put it. This is the structural test behind the semigroup law.
fn refold(
    n: u32,
    m: u32,
    kind: PolyKind,
    expansion: &BTreeMap<(u32, Vec<u32>), BigRational>,
) -> Result<SelfDualPoly> {
    let mn = (n as u64) * (m as u64);
    let mut bindings: CoeffBindings = BTreeMap::new();
    let mut consumed: BTreeSet<(u32, Vec<u32>)> = BTreeSet::new();
    let lookup = |key: &(u32, Vec<u32>)| {
        expansion
            .get(key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    };

    for s in 0..=(mn - 1) / 2 {
        for (l0, alpha) in enumerate_alpha(n, m, s).iter().enumerate() {
            let l = l0 as u32 + 1;
            let plus = term_plus(alpha, m);
            let minus = term_minus(alpha, m);
            let key_p = (plus.lambda_power, plus.inv_exponents);
            let key_m = (minus.lambda_power, minus.inv_exponents);
            let c = lookup(&key_p);
            let c_mirror = lookup(&key_m);
            let expected = if kind.mirror_sign() >= 0 {
                c.clone()
            } else {
                -c.clone()
            };
            if c_mirror != expected {
                return Err(Error::Internal(format!(
                    "mirror coefficient mismatch at (s={s}, l={l}): {c_mirror} vs {expected}"
                )));
            }
            consumed.insert(key_p);
            consumed.insert(key_m);
            bindings.insert((s, l), c);
        }
    }
    if mn % 2 == 0 {
        let s_star = mn / 2;
        let alphas = enumerate_alpha(n, m, s_star);
        for (l0, alpha) in alphas.iter().enumerate() {
            let l = l0 as u32 + 1;
            let dual = alpha.dual(m);
            let plus = term_plus(alpha, m);
            let key = (plus.lambda_power, plus.inv_exponents);
            if dual == *alpha {
                let v = lookup(&key);
                consumed.insert(key);
                match kind {
                    PolyKind::Reciprocal => {
                        bindings.insert((s_star, l), half(&v));
                    }
                    PolyKind::Skew => {
                        if !v.is_zero() {
                            return Err(Error::Internal(format!(
                                "self-paired middle monomial must cancel in a skew product (l={l})"
                            )));
                        }
                        bindings.insert((s_star, l), BigRational::zero());
                    }
                }
            } else if *alpha < dual {
                let l_dual = alphas.iter().position(|a| *a == dual).ok_or_else(|| {
                    Error::Internal("dual alpha missing from middle enumeration".into())
                })? as u32
                    + 1;
                let plus_dual = term_plus(&dual, m);
                let key_dual = (plus_dual.lambda_power, plus_dual.inv_exponents);
                let v = lookup(&key);
                let v_dual = lookup(&key_dual);
                let expected = if kind.mirror_sign() >= 0 {
                    v.clone()
                } else {
                    -v.clone()
                };
                if v_dual != expected {
                    return Err(Error::Internal(format!(
                        "middle pair coefficient mismatch at (s={s_star}, l={l}): {v_dual} vs {expected}"
                    )));
                }
                consumed.insert(key);
                consumed.insert(key_dual);
                bindings.insert((s_star, l), half(&v));
                let mirrored = if kind.mirror_sign() >= 0 {
                    half(&v)
                } else {
                    -half(&v)
                };
                bindings.insert((s_star, l_dual), mirrored);
            }
        }
    }
    for (key, value) in expansion {
        if !value.is_zero() && !consumed.contains(key) {
            return Err(Error::Internal(format!(
                "monomial lambda^{} * I^{:?} is outside the self-dual support",
                key.0, key.1
            )));
        }
    }
    Ok(assemble(n, m, kind, Some(bindings)))
}

/// Semigroup product. Both factors need numeric bindings and the same
/// `n`; the result has `m = m1 + m2` and the kind given by the sign rule.
pub fn multiply(p: &SelfDualPoly, q: &SelfDualPoly) -> Result<SelfDualPoly> {
    if p.n != q.n {
        return Err(Error::MismatchedN(p.n, q.n));
    }
    let ep = p.expand()?;
    let eq = q.expand()?;
    let mut product: BTreeMap<(u32, Vec<u32>), BigRational> = BTreeMap::new();
    for ((l1, e1), v1) in &ep {
        for ((l2, e2), v2) in &eq {
            let mut exps = e1.clone();
            for (i, e) in e2.iter().enumerate() {
                exps[i] += e;
            }
            let key = (l1 + l2, exps);
            let entry = product.entry(key).or_insert_with(BigRational::zero);
            *entry += v1 * v2;
        }
    }
    product.retain(|_, v| !v.is_zero());
    refold(p.n, p.m + q.m, p.kind.product(q.kind), &product)
}

/// Outcome of a conformal-duality evaluation, with both side values kept
/// for reporting.
#[derive(Debug, Clone, Copy)]
pub struct TransformReport {
    pub pass: bool,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
}

/// Checks `p(1/lambda, 1/x) = sign * lambda^{-mn} * I_{n,n}^{-m} * p(lambda, x)`
/// with `+` for reciprocal and `-` for skew kinds.
pub fn conformal_transform_check(
    p: &SelfDualPoly,
    x: &[f64],
    lambda: f64,
    tol: f64,
) -> Result<TransformReport> {
    if x.iter().any(|&v| v <= 0.0) || lambda <= 0.0 {
        return Err(Error::InvalidPoint(
            "transform check needs strictly positive inputs".into(),
        ));
    }
    let inverted: Vec<f64> = x.iter().map(|v| 1.0 / v).collect();
    let lhs = p.evaluate_f64(1.0 / lambda, &inverted)?;
    let i_nn: f64 = x.iter().product();
    let mn = (p.n as i32) * (p.m as i32);
    let prefactor = lambda.powi(-mn) * i_nn.powi(-(p.m as i32));
    let rhs = (p.kind.mirror_sign() as f64) * prefactor * p.evaluate_f64(lambda, x)?;
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::NonFinite("evaluating the conformal transform"));
    }
    let scale = lhs.abs().max(rhs.abs());
    let rel_err = if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    };
    Ok(TransformReport {
        pass: rel_err <= tol,
        lhs,
        rhs,
        rel_err,
    })
}

// Count equivalence classes of coefficient symbols: two symbols are
// dependent iff their monomial vectors are proportional; zero vectors do
// not count.
fn count_independent<K: Ord + Clone>(vectors: Vec<BTreeMap<K, i64>>) -> u64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut classes: BTreeSet<Vec<(K, i64)>> = BTreeSet::new();
    for vec in vectors {
        let entries: Vec<(K, i64)> = vec.into_iter().filter(|(_, v)| *v != 0).collect();
        if entries.is_empty() {
            continue;
        }
        let mut g = 0i64;
        for (_, v) in &entries {
            g = gcd(g, *v);
        }
        let sign = if entries[0].1 < 0 { -1 } else { 1 };
        let normalized: Vec<(K, i64)> = entries
            .into_iter()
            .map(|(k, v)| (k, v / (g * sign)))
            .collect();
        classes.insert(normalized);
    }
    classes.len() as u64
}

/// Unimodality index by direct counting: the number of independent
/// coefficients surviving in the assembled symbolic polynomial.
pub fn mu_by_count(n: u32, m: u32, kind: PolyKind) -> u64 {
    let poly = SelfDualPoly::symbolic(n, m, kind);
    let mut vectors: BTreeMap<(u64, u32), BTreeMap<(u32, Vec<u32>), i64>> = BTreeMap::new();
    for term in &poly.terms {
        let key = (
            term.monomial.lambda_power,
            term.monomial.inv_exponents.clone(),
        );
        *vectors
            .entry((term.s, term.l))
            .or_default()
            .entry(key)
            .or_insert(0) += term.sign as i64;
    }
    count_independent(vectors.into_values().collect())
}

/// Number of annihilating counter-partner pairs at the middle degree,
/// `Q(n, m)`: zero when `mn` is odd, otherwise a single binomial
/// coefficient. `Q(n, 0) = Q(0, m) = 1` by convention.
pub fn q_closed(n: u64, m: u64) -> BigCount {
    if n == 0 || m == 0 {
        return BigCount::one();
    }
    if n % 2 == 1 && m % 2 == 1 {
        return BigCount::zero();
    }
    binomial(n / 2 + m / 2, m / 2)
}

fn halve_exact(v: BigCount, what: &str) -> BigCount {
    assert!((&v % 2u32).is_zero(), "{what} must be even, got {v}");
    v / 2u32
}

/// Closed-form unimodality index: `(C(m+n, n) +- Q(n, m)) / 2` for even
/// `mn`, `C(m+n, n) / 2` for odd.
pub fn mu_closed(n: u32, m: u32, kind: PolyKind) -> BigCount {
    assert!(n >= 1 && m >= 1);
    let total = binomial((n + m) as u64, n as u64);
    if (n as u64 * m as u64) % 2 == 1 {
        return halve_exact(total, "C(m+n, n) with odd mn");
    }
    let q = q_closed(n as u64, m as u64);
    match kind {
        PolyKind::Reciprocal => halve_exact(total + q, "C(m+n, n) + Q"),
        PolyKind::Skew => halve_exact(total - q, "C(m+n, n) - Q"),
    }
}

/// Unimodality index of the product-group polynomial:
/// `(prod C(m_j+n_j, n_j) +- prod Q(n_j, m_j)) / 2`, the `Q`-product
/// vanishing as soon as one `n_j * m_j` is odd.
pub fn mu_product_closed(pairs: &[(u32, u32)], kind: PolyKind) -> BigCount {
    assert!(!pairs.is_empty());
    let mut prod_binom = BigCount::one();
    for &(n, m) in pairs {
        prod_binom *= binomial((n + m) as u64, n as u64);
    }
    let prod_q = if pairs.iter().any(|&(n, m)| (n as u64 * m as u64) % 2 == 1) {
        BigCount::zero()
    } else {
        let mut q = BigCount::one();
        for &(n, m) in pairs {
            q *= q_closed(n as u64, m as u64);
        }
        q
    };
    match kind {
        PolyKind::Reciprocal => halve_exact(prod_binom + prod_q, "binomial product + Q product"),
        PolyKind::Skew => halve_exact(prod_binom - prod_q, "binomial product - Q product"),
    }
}

/// Coefficient-slot counts of the four-part decomposition:
/// `(T1, T2+T3 middle, T4)`. Their sum is `C(m+n, n)`.
pub fn slot_partition(n: u32, m: u32) -> (u64, u64, u64) {
    let mn = (n as u64) * (m as u64);
    let mut t1 = 0u64;
    for s in 0..=(mn - 1) / 2 {
        t1 += enumerate_alpha(n, m, s).len() as u64;
    }
    let middle = if mn % 2 == 0 {
        enumerate_alpha(n, m, mn / 2).len() as u64
    } else {
        0
    };
    (t1, middle, t1)
}

/// Number of self-paired middle solutions, i.e. the skew cancellation
/// count. Matches [`q_closed`] for even `mn`.
pub fn middle_self_dual_count(n: u32, m: u32) -> u64 {
    let mn = (n as u64) * (m as u64);
    if mn % 2 != 0 {
        return 0;
    }
    enumerate_alpha(n, m, mn / 2)
        .iter()
        .filter(|a| a.dual(m) == **a)
        .count() as u64
}

// ---------------------------------------------------------------------
// Product-group polynomials
// ---------------------------------------------------------------------

/// Term of a product-group polynomial: one exponent vector per factor
/// group plus a shared lambda power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductTerm {
    pub s: u64,
    pub coeff_id: u32,
    pub sign: i8,
    pub lambda_power: u32,
    pub group_exponents: Vec<Vec<u32>>,
}

/// Self-dual polynomial over a direct product of symmetric groups. In
/// symmetrized mode, coefficient symbols are merged across admissible
/// permutations of the factor groups.
#[derive(Debug, Clone)]
pub struct ProductPoly {
    pub pairs: Vec<(u32, u32)>,
    pub kind: PolyKind,
    pub symmetrized: bool,
    pub terms: Vec<ProductTerm>,
    pub coeff_count: u32,
}

/// All tuples of per-group alpha solutions with total degree `s`.
pub fn enumerate_combined(pairs: &[(u32, u32)], s: u64) -> Vec<Vec<AlphaTuple>> {
    fn rec(
        pairs: &[(u32, u32)],
        s: u64,
        prefix: &mut Vec<AlphaTuple>,
        out: &mut Vec<Vec<AlphaTuple>>,
    ) {
        match pairs.split_first() {
            None => {
                if s == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&(n, m), rest)) => {
                let cap = (n as u64) * (m as u64);
                for s1 in 0..=s.min(cap) {
                    for alpha in enumerate_alpha(n, m, s1) {
                        prefix.push(alpha);
                        rec(rest, s - s1, prefix, out);
                        prefix.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(pairs, s, &mut Vec::new(), &mut out);
    out
}

// Re-shape an exponent vector for a group of size target_n; valid only
// when the dropped tail is zero and the weight fits the target cap.
fn fit_alpha(alpha: &AlphaTuple, target_n: u32, target_m: u32) -> Option<AlphaTuple> {
    let tn = target_n as usize;
    if alpha.entries.len() > tn && alpha.entries[tn..].iter().any(|&e| e != 0) {
        return None;
    }
    let mut entries = alpha.entries.clone();
    entries.resize(tn, 0);
    let fitted = AlphaTuple { entries };
    if fitted.weight() > target_m {
        return None;
    }
    Some(fitted)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![0]];
    }
    let mut out = Vec::new();
    for smaller in permutations(k - 1) {
        for pos in 0..k {
            let mut perm = smaller.clone();
            perm.insert(pos, k - 1);
            out.push(perm);
        }
    }
    out
}

// Canonical representative (as group exponent vectors) of a combined
// tuple under admissible factor permutations.
fn orbit_key(combo: &[AlphaTuple], pairs: &[(u32, u32)], perms: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let identity: Vec<Vec<u32>> = combo.iter().map(|a| a.entries.clone()).collect();
    let mut best = identity;
    for perm in perms {
        // position j receives the alpha previously at perm[j]
        let mut candidate = Vec::with_capacity(combo.len());
        let mut ok = true;
        for (j, &src) in perm.iter().enumerate() {
            match fit_alpha(&combo[src], pairs[j].0, pairs[j].1) {
                Some(fitted) => candidate.push(fitted.entries),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && candidate < best {
            best = candidate;
        }
    }
    best
}

/// Assembles the product-group polynomial. The coefficient-symbol count
/// per degree `s` equals the convolved conformal partition number; the
/// symmetrized variant merges symbols over factor-permutation orbits.
pub fn assemble_product(pairs: &[(u32, u32)], kind: PolyKind, symmetrized: bool) -> ProductPoly {
    assert!(
        pairs.len() >= 2,
        "product polynomials need at least two factor groups"
    );
    let total: u64 = pairs.iter().map(|&(n, m)| (n as u64) * (m as u64)).sum();
    let perms = permutations(pairs.len());
    let mut coeff_ids: BTreeMap<(u64, Vec<Vec<u32>>), u32> = BTreeMap::new();
    let mut terms: Vec<ProductTerm> = Vec::new();
    let mut next_id = 0u32;

    let mut emit = |s: u64, combo: &[AlphaTuple], skip_self_dual: bool| {
        let plus: Vec<InvMonomial> = combo
            .iter()
            .zip(pairs)
            .map(|(a, &(_, m))| term_plus(a, m))
            .collect();
        let minus: Vec<InvMonomial> = combo
            .iter()
            .zip(pairs)
            .map(|(a, &(_, m))| term_minus(a, m))
            .collect();
        if skip_self_dual && plus == minus {
            return;
        }
        let key = if symmetrized {
            orbit_key(combo, pairs, &perms)
        } else {
            combo.iter().map(|a| a.entries.clone()).collect()
        };
        let id = *coeff_ids.entry((s, key)).or_insert_with(|| {
            let id = next_id;
            next_id += 1;
            id
        });
        let lambda_plus: u32 = plus.iter().map(|p| p.lambda_power).sum();
        let lambda_minus: u32 = minus.iter().map(|p| p.lambda_power).sum();
        terms.push(ProductTerm {
            s,
            coeff_id: id,
            sign: 1,
            lambda_power: lambda_plus,
            group_exponents: plus.into_iter().map(|p| p.inv_exponents).collect(),
        });
        terms.push(ProductTerm {
            s,
            coeff_id: id,
            sign: kind.mirror_sign(),
            lambda_power: lambda_minus,
            group_exponents: minus.into_iter().map(|p| p.inv_exponents).collect(),
        });
    };

    for s in 0..=(total - 1) / 2 {
        for combo in enumerate_combined(pairs, s) {
            emit(s, &combo, false);
        }
    }
    if total % 2 == 0 {
        let s_star = total / 2;
        for combo in enumerate_combined(pairs, s_star) {
            emit(s_star, &combo, kind == PolyKind::Skew);
        }
    }
    ProductPoly {
        pairs: pairs.to_vec(),
        kind,
        symmetrized,
        terms,
        coeff_count: next_id,
    }
}

/// Independent-coefficient count of an assembled product polynomial.
pub fn mu_product_by_count(pairs: &[(u32, u32)], kind: PolyKind, symmetrized: bool) -> u64 {
    let poly = assemble_product(pairs, kind, symmetrized);
    let mut vectors: BTreeMap<u32, BTreeMap<(u32, Vec<Vec<u32>>), i64>> = BTreeMap::new();
    for term in &poly.terms {
        let key = (term.lambda_power, term.group_exponents.clone());
        *vectors
            .entry(term.coeff_id)
            .or_default()
            .entry(key)
            .or_insert(0) += term.sign as i64;
    }
    count_independent(vectors.into_values().collect())
}

// ---------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    s: u64,
    l: u32,
    sign: i8,
    lambda: u32,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SelfDualPolyJson {
    schema: u32,
    n: u32,
    m: u32,
    kind: PolyKind,
    terms: Vec<TermJson>,
    bindings: Option<BTreeMap<String, String>>,
}

impl SelfDualPoly {
    /// Stable JSON form: exponent vectors plus coefficient symbols, with
    /// rational bindings as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|t| TermJson {
                s: t.s,
                l: t.l,
                sign: t.sign,
                lambda: t.monomial.lambda_power,
                exponents: t.monomial.inv_exponents.clone(),
            })
            .collect();
        let bindings = self.bindings.as_ref().map(|b| {
            b.iter()
                .map(|((s, l), v)| (format!("{s},{l}"), v.to_string()))
                .collect()
        });
        serde_json::to_value(SelfDualPolyJson {
            schema: 1,
            n: self.n,
            m: self.m,
            kind: self.kind,
            terms,
            bindings,
        })
        .expect("serialization cannot fail")
    }

    /// Rebuilds a polynomial from its JSON form, re-assembling the term
    /// structure from `(n, m, kind)` and verifying it matches.
    pub fn from_json(value: &serde_json::Value) -> Result<SelfDualPoly> {
        let parsed: SelfDualPolyJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Serialization(e.to_string()))?;
        let bindings = match parsed.bindings {
            None => None,
            Some(raw) => {
                let mut map = CoeffBindings::new();
                for (key, val) in raw {
                    let (s, l) = key
                        .split_once(',')
                        .ok_or_else(|| Error::Serialization(format!("bad binding key {key}")))?;
                    let s: u64 = s
                        .parse()
                        .map_err(|_| Error::Serialization(format!("bad s in {key}")))?;
                    let l: u32 = l
                        .parse()
                        .map_err(|_| Error::Serialization(format!("bad l in {key}")))?;
                    let v: BigRational = val
                        .parse()
                        .map_err(|_| Error::Serialization(format!("bad rational {val}")))?;
                    map.insert((s, l), v);
                }
                Some(map)
            }
        };
        let rebuilt = assemble(parsed.n, parsed.m, parsed.kind, bindings);
        let matches = rebuilt.terms.len() == parsed.terms.len()
            && rebuilt.terms.iter().zip(&parsed.terms).all(|(a, b)| {
                a.s == b.s
                    && a.l == b.l
                    && a.sign == b.sign
                    && a.monomial.lambda_power == b.lambda
                    && a.monomial.inv_exponents == b.exponents
            });
        if !matches {
            return Err(Error::Serialization(
                "serialized terms do not match the canonical assembly".into(),
            ));
        }
        Ok(rebuilt)
    }
}

/// Seeded random coefficient bindings. With `nonnegative`, values are
/// drawn from `{0..=9}/{1..=9}` and the leading slot is forced to 1
/// (monic), matching the assumptions of the root solver.
pub fn random_bindings(
    n: u32,
    m: u32,
    rng: &mut impl rand::Rng,
    nonnegative: bool,
) -> CoeffBindings {
    let mut bindings = CoeffBindings::new();
    for slot in coefficient_slots(n, m) {
        let numer: i64 = if nonnegative {
            rng.gen_range(0..=9)
        } else {
            rng.gen_range(-9..=9)
        };
        let denom: i64 = rng.gen_range(1..=9);
        bindings.insert(
            slot,
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
        );
    }
    if nonnegative {
        bindings.insert((0, 1), BigRational::one());
    }
    bindings
}
