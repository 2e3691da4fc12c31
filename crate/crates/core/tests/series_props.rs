use lcslab_core::series::*;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Counts primitive necklaces by brute force over all words.
fn brute_lyndon_count(n: usize, d: usize) -> u64 {
    let total = n.pow(d as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut w = vec![0usize; d];
        let mut x = idx;
        for slot in w.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        if (1..d).all(|i| {
            let rot: Vec<usize> = w[i..].iter().chain(&w[..i]).copied().collect();
            w < rot
        }) {
            count += 1;
        }
    }
    count
}

fn brute_necklace_count(n: usize, d: usize) -> u64 {
    let total = n.pow(d as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut w = vec![0usize; d];
        let mut x = idx;
        for slot in w.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        if (1..d).all(|i| {
            let rot: Vec<usize> = w[i..].iter().chain(&w[..i]).copied().collect();
            w <= rot
        }) {
            count += 1;
        }
    }
    count
}

#[test]
fn closed_forms_match_enumeration() {
    for n in 2..=3 {
        for d in 1..=9 {
            assert_eq!(witt(n as u64, d), BigInt::from(brute_lyndon_count(n, d)), "witt({n},{d})");
            assert_eq!(necklace(n as u64, d), BigInt::from(brute_necklace_count(n, d)), "necklace({n},{d})");
        }
    }
}

#[test]
fn witt_from_product_identity() {
    // ∏ (1 - t^d)^{witt(n,d)} = 1 - n t
    for n in 2..=3u64 {
        let e = TruncSeries::from_i64s(&[1, -(n as i64)], 30).extract_exponents().unwrap();
        for d in 1..=30 {
            assert_eq!(e[d - 1], witt(n, d), "n={n} d={d}");
        }
    }
}

#[test]
fn necklace_from_product_identity() {
    // ∏ (1 - t^d)^{necklace(n,d)} = ∏_{k ≥ 1} (1 - n t^k)
    for n in 2..=3i64 {
        let mut prod = TruncSeries::one(30);
        for k in 1..=30 {
            let f = &TruncSeries::one(30) - &TruncSeries::monomial(BigInt::from(n), k, 30);
            prod = &prod * &f;
        }
        let e = prod.extract_exponents().unwrap();
        for d in 1..=30 {
            assert_eq!(e[d - 1], necklace(n as u64, d), "n={n} d={d}");
        }
    }
}

#[test]
fn witt_divisor_identity() {
    for n in 2..=3u64 {
        for d in 1..=30usize {
            let s: BigInt = (1..=d).filter(|e| d % e == 0).map(|e| BigInt::from(e) * witt(n, e)).sum();
            assert_eq!(s, num_traits::pow(BigInt::from(n), d));
        }
    }
}

#[test]
fn free_lie_above_degree_one() {
    let f = &TruncSeries::from_i64s(&[1, -2], 24) * &TruncSeries::from_i64s(&[1, -1], 24).pow(-2).unwrap();
    let e = f.extract_exponents().unwrap();
    assert_eq!(e[0], BigInt::from(0));
    for d in 2..=24 {
        assert_eq!(e[d - 1], witt(2, d));
    }
}

#[test]
fn generic_cubic_series_values() {
    let h = quotient_hilbert(2, &[3], 16).unwrap().to_i64s().unwrap();
    // recurrence h_k = 2 h_{k-1} - h_{k-3}
    let mut r = vec![1i64, 2, 4];
    for k in 3..=16 {
        r.push(2 * r[k - 1] - r[k - 3]);
    }
    assert_eq!(h, r);
    let c = c_series(3, 19).unwrap();
    let expected = [4036, 6552, 10615, 17216];
    for (i, v) in expected.iter().enumerate() {
        assert_eq!(c[16 + i], BigInt::from(*v));
    }
    let b = b_series(3, 10).unwrap();
    // h_{A/[A,A]} = 1 + Σ b_i t^i; degree 1 and 2 agree with A itself
    assert_eq!(b[0], BigInt::from(2));
    assert_eq!(b[1], BigInt::from(3));
}

#[test]
fn positivity_search() {
    let p = positivity_threshold(3, 64).unwrap();
    assert_eq!(p.threshold, Some(8));
    assert_eq!(p.witnesses.len(), 7);
    assert!(first_nonpositive(3, 7, 64).unwrap().is_some());
    assert!(first_nonpositive(3, 8, 64).unwrap().is_none());
    assert!(quotient_hilbert(2, &[3], 64).unwrap().coeffs().iter().all(|c| c > &BigInt::from(0)));
}

proptest! {
    #[test]
    fn exponents_round_trip(e in proptest::collection::vec(-5i64..6, 1..12)) {
        let d = 14;
        let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
        let s = TruncSeries::from_exponents(&e, d);
        let back = s.extract_exponents().unwrap();
        for (i, x) in back.iter().enumerate() {
            let want = e.get(i).cloned().unwrap_or_default();
            prop_assert_eq!(x, &want);
        }
    }

    #[test]
    fn inverse_is_inverse(c in proptest::collection::vec(-9i64..10, 1..10)) {
        let mut coeffs = vec![1i64];
        coeffs.extend(c);
        let s = TruncSeries::from_i64s(&coeffs, 20);
        let prod = &s * &s.inverse().unwrap();
        prop_assert_eq!(prod, TruncSeries::one(20));
    }
}
