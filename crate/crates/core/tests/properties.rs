use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcplab::cvar::{cvar_exact, upper_cvar_exact, DiscreteDistribution};
use vcplab::densesim::gates::{clifford_permutation_of, random_clifford_unitary};
use vcplab::io::{read_channel, write_channel};
use vcplab::pauli::{xor_convolve_bruteforce, PauliChannel};
use vcplab::regions::q_effective;
use vcplab::vcp::{alpha_level, purify};

fn channel(n: usize) -> impl Strategy<Value = PauliChannel> {
    prop::collection::vec(0.0f64..1.0, 1usize << (2 * n)).prop_filter_map("zero weights", move |w| {
        PauliChannel::from_weights(n, w).ok()
    })
}

fn dominant(n: usize) -> impl Strategy<Value = PauliChannel> {
    channel(n).prop_map(move |c| {
        let mut w = c.into_probs();
        let max = w.iter().cloned().fold(0.0, f64::max);
        w[0] = max + w[0];
        PauliChannel::from_weights(n, w).unwrap()
    })
}

fn distribution() -> impl Strategy<Value = DiscreteDistribution> {
    prop::collection::vec((-1.0f64..1.0, 0.01f64..1.0), 1..10)
        .prop_filter_map("merged to nothing", |pairs| DiscreteDistribution::from_weights(pairs).ok())
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #[test]
    fn compose_is_commutative_and_matches_bruteforce(a in channel(2), b in channel(2)) {
        let ab = a.compose(&b).unwrap();
        prop_assert!(close(ab.probs(), b.compose(&a).unwrap().probs(), 1e-15));
        let brute = xor_convolve_bruteforce(a.probs(), b.probs()).unwrap();
        prop_assert!(close(ab.probs(), &brute, 1e-15));
    }

    #[test]
    fn compose_is_associative(a in channel(1), b in channel(1), c in channel(1)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(close(left.probs(), right.probs(), 1e-15));
    }

    #[test]
    fn purification_levels(c in dominant(2)) {
        prop_assert_eq!(purify(&c, 1).unwrap(), c.clone());
        let mut prev = 0.0;
        for l in 1..=6 {
            let a = alpha_level(&c, l).unwrap();
            prop_assert!(a > 0.0 && a <= 1.0);
            prop_assert!(a >= prev);
            prev = a;
        }
        let p2 = purify(&c, 2).unwrap();
        prop_assert!(close(purify(&p2, 2).unwrap().probs(), purify(&c, 4).unwrap().probs(), 1e-12));
    }

    #[test]
    fn clifford_conjugation_round_trips(c in channel(2), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = clifford_permutation_of(&random_clifford_unitary(2, &mut rng).unwrap(), 2).unwrap();
        let there = c.conjugate(&g).unwrap();
        prop_assert_eq!(there.identity_weight(), c.identity_weight());
        prop_assert_eq!(there.conjugate(&g.inverse()).unwrap(), c);
    }

    #[test]
    fn cvar_brackets_the_mean(d in distribution(), a in 0.01f64..=1.0, b in 0.01f64..=1.0) {
        let (lo, hi) = (a.min(b), a.max(b));
        let mean = d.mean();
        prop_assert!(cvar_exact(&d, lo).unwrap() <= cvar_exact(&d, hi).unwrap() + 1e-12);
        prop_assert!(cvar_exact(&d, hi).unwrap() <= mean + 1e-12);
        prop_assert!(upper_cvar_exact(&d, hi).unwrap() >= mean - 1e-12);
        prop_assert!(upper_cvar_exact(&d, lo).unwrap() >= upper_cvar_exact(&d, hi).unwrap() - 1e-12);
        prop_assert!((cvar_exact(&d, 1.0).unwrap() - mean).abs() <= 1e-12);
    }

    #[test]
    fn effective_depolarizing_composes(q in 0.0f64..0.5, a in 1u64..50, b in 1u64..50) {
        let twice = q_effective(q_effective(q, a), b);
        prop_assert!((twice - q_effective(q, a * b)).abs() <= 1e-12);
    }

    #[test]
    fn channel_text_round_trips(c in channel(2)) {
        let text = write_channel(&c);
        let back = read_channel(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_channel(&back), text);
    }
}
