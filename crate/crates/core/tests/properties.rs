//! Property tests over randomized inputs.

use num_bigint::BigInt;
use proptest::prelude::*;

use conformal_core::genfunc::gaussian_poly;
use conformal_core::invariant::{enumerate_alpha, mu_closed, q_closed, PolyKind};
use conformal_core::partition::{
    conformal_count_dp, conformal_count_oracle, restricted_count, unrestricted_count,
};
use conformal_core::roots::{bounds_basic, mean_chain, positive_root, Point, SkewCoeffs};
use conformal_core::toeplitz::{solve_closed, solve_forward, ConvolutionProblem};
use conformal_core::{binomial, BigCount};

proptest! {
    #[test]
    fn dp_agrees_with_oracle(n in 1u32..=6, m in 1u32..=6, s in 0u64..=36) {
        prop_assume!(s <= (n as u64) * (m as u64));
        prop_assert_eq!(conformal_count_dp(n, m, s), conformal_count_oracle(n, m, s).unwrap());
    }

    #[test]
    fn gaussian_palindrome_and_swap(n in 1u32..=6, m in 1u32..=6) {
        let g = gaussian_poly(n, m).unwrap();
        let swapped = gaussian_poly(m, n).unwrap();
        prop_assert!(g.is_palindromic());
        prop_assert_eq!(g.coeffs, swapped.coeffs);
    }

    #[test]
    fn restricted_counts_monotone_in_n(n in 1u32..=12, s in 0u64..=40) {
        prop_assert!(restricted_count(n + 1, s) >= restricted_count(n, s));
        prop_assert!(restricted_count(n, s) <= unrestricted_count(s));
    }

    #[test]
    fn toeplitz_closed_equals_forward(
        t in prop::collection::vec(-100i64..=100, 1..=21),
        u in prop::collection::vec(-100i64..=100, 1..=21),
    ) {
        let gmax = (t.len().min(u.len()) - 1) as u64;
        let problem = ConvolutionProblem::new(
            t.into_iter().map(BigInt::from).collect(),
            u.into_iter().map(BigInt::from).collect(),
        );
        let forward = solve_forward(&problem, gmax).unwrap();
        for g in 0..=gmax {
            prop_assert_eq!(solve_closed(&problem, g).unwrap(), forward[g as usize].clone());
        }
    }

    #[test]
    fn alpha_enumeration_counts_and_order(n in 1u32..=5, m in 1u32..=5, s in 0u64..=25) {
        prop_assume!(s <= (n as u64) * (m as u64));
        let alphas = enumerate_alpha(n, m, s);
        prop_assert_eq!(BigCount::from(alphas.len() as u64), conformal_count_dp(n, m, s));
        for pair in alphas.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn mu_indices_sum_to_binomial_plus_q(n in 1u32..=8, m in 1u32..=8) {
        // mu{R} + mu{S} recovers the full coefficient count, and the gap
        // is the annihilation count (zero when mn is odd)
        let r = mu_closed(n, m, PolyKind::Reciprocal);
        let s = mu_closed(n, m, PolyKind::Skew);
        prop_assert_eq!(&r + &s, binomial((n + m) as u64, n as u64));
        let gap = r - s;
        if (n as u64 * m as u64) % 2 == 1 {
            prop_assert_eq!(gap, BigCount::from(0u32));
        } else {
            prop_assert_eq!(gap, q_closed(n as u64, m as u64));
        }
    }

    #[test]
    fn root_stays_inside_means(
        seed in any::<u64>(),
        n in 2u32..=5,
        m in 1u32..=2,
        coords in prop::collection::vec(0.1f64..10.0, 2..=5),
    ) {
        prop_assume!(coords.len() == n as usize);
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let coeffs = SkewCoeffs::random(n, m, &mut rng);
        let x = Point::new(coords).unwrap();
        let root = positive_root(&coeffs, &x, 1e-12).unwrap();
        let (lo, hi) = bounds_basic(&x);
        prop_assert!(root.lambda >= lo * (1.0 - 1e-9));
        prop_assert!(root.lambda <= hi * (1.0 + 1e-9));
        let chain = mean_chain(&x).unwrap();
        prop_assert!(chain.first().unwrap() >= chain.last().unwrap());
    }
}
