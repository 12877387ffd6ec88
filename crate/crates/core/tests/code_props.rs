use agcodes::code::{
    channel_weights, code_dimension, hamming, min_distance_bruteforce, nearest_codeword,
    rs_generator, singleton_holds, weight, ChannelSpec, CodeParams, LinearCode,
};
use agcodes::field::{enumerate_field, field_build, field_of_order, FieldElement, FieldSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Reference minimum distance: encode every message from scratch.
fn naive_min_distance(code: &LinearCode) -> usize {
    let q = code.field().order();
    let total = q.pow(code.dimension() as u32);
    (1..total)
        .map(|i| weight(&code.encode(&code.message_at(i)).unwrap()))
        .min()
        .unwrap()
}

fn random_word(f: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    (0..n)
        .map(|_| f.from_index(rng.random_range(0..f.order())))
        .collect()
}

#[test]
fn incremental_enumeration_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = field_of_order(q).unwrap();
        for _ in 0..6 {
            let n = rng.random_range(3..8usize);
            let k = rng.random_range(1..=n.min(4));
            let gen: Vec<Vec<FieldElement>> =
                (0..k).map(|_| random_word(&f, n, &mut rng)).collect();
            let Ok(code) = LinearCode::new(f, gen) else {
                continue;
            };
            assert_eq!(
                min_distance_bruteforce(&code).unwrap(),
                naive_min_distance(&code)
            );
        }
    }
}

#[test]
fn reed_solomon_is_mds() {
    for q in [5u64, 7, 9] {
        let f = field_of_order(q).unwrap();
        let alphas = enumerate_field(&f).unwrap();
        for n in 1..=q as usize {
            for k in 1..=n {
                if q.pow(k as u32) > 1 << 24 {
                    continue;
                }
                let code = rs_generator(&alphas[..n], k).unwrap();
                assert_eq!(code_dimension(code.generator()), k);
                let params = CodeParams::of_code(&code).unwrap();
                assert_eq!(params.d, n - k + 1, "q={q} n={n} k={k}");
                assert!(singleton_holds(&params).unwrap());
            }
        }
    }
}

#[test]
fn reed_solomon_over_scattered_points() {
    // any n distinct points, not just a prefix of the enumeration
    let f = field_build(11, 1).unwrap();
    let pts: Vec<FieldElement> = [3, 9, 1, 10, 6, 4].iter().map(|&c| f.from_int(c)).collect();
    for k in 1..=4 {
        let code = rs_generator(&pts, k).unwrap();
        assert_eq!(min_distance_bruteforce(&code).unwrap(), pts.len() - k + 1);
    }
}

#[test]
fn random_codes_satisfy_singleton() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u64, 3, 5, 7] {
        let f = field_of_order(q).unwrap();
        for _ in 0..20 {
            let n = rng.random_range(2..9usize);
            let k = rng.random_range(1..=n.min(5));
            let gen = (0..k).map(|_| random_word(&f, n, &mut rng)).collect();
            if let Ok(code) = LinearCode::new(f, gen) {
                let p = CodeParams::of_code(&code).unwrap();
                assert!(p.d >= 1 && singleton_holds(&p).unwrap());
            }
        }
    }
}

#[test]
fn rs_corrects_two_errors() {
    let f = field_build(7, 1).unwrap();
    let code = rs_generator(&enumerate_field(&f).unwrap(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2022);
    for _ in 0..100 {
        let msg = random_word(&f, 3, &mut rng);
        let sent = code.encode(&msg).unwrap();
        let mut received = sent.clone();
        let i = rng.random_range(0..7);
        let j = (i + rng.random_range(1..7)) % 7;
        for pos in [i, j] {
            received[pos] = received[pos] + f.from_index(rng.random_range(1..7));
        }
        assert_eq!(hamming(&sent, &received).unwrap(), 2);
        let dec = nearest_codeword(&code, &received).unwrap();
        assert_eq!(dec.codeword, sent);
        assert_eq!(dec.message, msg);
    }
}

#[test]
fn three_errors_still_decode_to_a_minimizer() {
    let f = field_build(7, 1).unwrap();
    let code = rs_generator(&enumerate_field(&f).unwrap(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let sent = code.encode(&random_word(&f, 3, &mut rng)).unwrap();
        let mut received = sent.clone();
        for pos in [0, 3, 5] {
            received[pos] = received[pos] + f.one();
        }
        let dec = nearest_codeword(&code, &received).unwrap();
        // no codeword is strictly closer than the one returned
        assert!(dec.distance <= 3);
        assert_eq!(hamming(&dec.codeword, &received).unwrap(), dec.distance);
    }
}

#[test]
fn channel_mean_weight_within_three_sigma() {
    let f = field_build(7, 1).unwrap();
    let (n, trials, p) = (1000usize, 10_000usize, 0.1);
    let spec = ChannelSpec::new(f, p, 0x5eed).unwrap();
    let w = channel_weights(&spec, n, trials);
    let mean = w.iter().sum::<usize>() as f64 / trials as f64;
    let tol = 3.0 * (n as f64 * p * (1.0 - p) / trials as f64).sqrt();
    assert!(
        (mean - p * n as f64).abs() <= tol,
        "mean {mean}, tolerance {tol}"
    );
}

#[test]
fn nonzero_errors_are_uniform() {
    // conditional on an error, each of the q - 1 shifts is equally likely
    let f = field_build(5, 1).unwrap();
    let spec = ChannelSpec::new(f, 0.5, 1).unwrap();
    let mut sampler = spec.sampler();
    let mut counts = [0usize; 5];
    for e in sampler.sample(200_000) {
        counts[e.index() as usize] += 1;
    }
    let errors: usize = counts[1..].iter().sum();
    let expect = errors as f64 / 4.0;
    for &c in &counts[1..] {
        let sigma = (errors as f64 * 0.25 * 0.75).sqrt();
        assert!((c as f64 - expect).abs() < 5.0 * sigma, "{counts:?}");
    }
}

fn rs_code_strategy() -> impl Strategy<Value = (LinearCode, Vec<u64>)> {
    (1usize..=4).prop_flat_map(|k| {
        let f = field_build(7, 1).unwrap();
        let code = rs_generator(&enumerate_field(&f).unwrap(), k).unwrap();
        (Just(code), prop::collection::vec(0u64..7, k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nearest_codeword_is_idempotent((code, msg) in rs_code_strategy()) {
        let f = *code.field();
        let msg: Vec<_> = msg.into_iter().map(|i| f.from_index(i)).collect();
        let c = code.encode(&msg).unwrap();
        let dec = nearest_codeword(&code, &c).unwrap();
        prop_assert_eq!(&dec.codeword, &c);
        prop_assert_eq!(nearest_codeword(&code, &dec.codeword).unwrap().codeword, c);
    }

    #[test]
    fn hamming_is_a_metric(a in prop::collection::vec(0u64..7, 6),
                           b in prop::collection::vec(0u64..7, 6),
                           c in prop::collection::vec(0u64..7, 6)) {
        let f = field_build(7, 1).unwrap();
        let w = |v: &[u64]| v.iter().map(|&i| f.from_index(i)).collect::<Vec<_>>();
        let (a, b, c) = (w(&a), w(&b), w(&c));
        prop_assert_eq!(hamming(&a, &b).unwrap(), hamming(&b, &a).unwrap());
        prop_assert!(hamming(&a, &c).unwrap() <= hamming(&a, &b).unwrap() + hamming(&b, &c).unwrap());
        prop_assert_eq!(hamming(&a, &a).unwrap(), 0);
        let zero = vec![f.zero(); 6];
        prop_assert_eq!(weight(&a), hamming(&a, &zero).unwrap());
    }
}
