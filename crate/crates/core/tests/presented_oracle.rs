mod common;

use common::{dense, fp, NaiveBasis};
use lcslab_core::series::quotient_hilbert;
use lcslab_core::{FreePolynomial, GradedQuotient, Presentation};
use proptest::prelude::*;

/// `dim A[d]` from the span of `u f v`, built here without the library.
fn oracle_dims(pres: &Presentation<lcslab_core::Fp>, max_d: usize) -> Vec<usize> {
    let n = pres.ngens();
    (0..=max_d)
        .map(|d| {
            let mut b = NaiveBasis::default();
            for rel in pres.relations() {
                let e = rel.degree().unwrap();
                if e > d {
                    continue;
                }
                for a in 0..=d - e {
                    for u in common::monomials(n, a) {
                        let uf = u.multiply(rel).unwrap();
                        for v in common::monomials(n, d - e - a) {
                            b.insert(dense(&uf.multiply(&v).unwrap(), d));
                        }
                    }
                }
            }
            n.pow(d as u32) - b.rank()
        })
        .collect()
}

#[test]
fn dims_match_direct_ideal() {
    for (degs, seed) in [(vec![3], 1u64), (vec![2], 5), (vec![2, 3], 9), (vec![3, 4], 11)] {
        let (pres, _) = Presentation::random(fp(), 2, &degs, seed).unwrap();
        let q = GradedQuotient::build(pres.clone(), 8).unwrap();
        assert_eq!(q.hilbert_dims(), oracle_dims(&pres, 8), "degrees {degs:?}");
        for d in 0..=8 {
            let ideal = pres.ideal_component(d).unwrap();
            assert_eq!(ideal.rank() + q.dim(d), 1 << d);
        }
    }
}

#[test]
fn generic_cubic_hilbert_series() {
    let (pres, _) = Presentation::random(fp(), 2, &[3], 2).unwrap();
    let q = GradedQuotient::build(pres, 16).unwrap();
    let h = quotient_hilbert(2, &[3], 16).unwrap();
    let expected: Vec<usize> = h.to_i64s().unwrap().into_iter().map(|x| x as usize).collect();
    assert_eq!(q.hilbert_dims(), expected);
    assert_eq!(&expected[14..], &[1596, 2583, 4180]);
}

#[test]
fn commutative_quotient() {
    let rel = FreePolynomial::parse(fp(), 2, "xy - yx").unwrap();
    let q = GradedQuotient::build(Presentation::new(fp(), 2, vec![rel]).unwrap(), 7).unwrap();
    assert_eq!(q.hilbert_dims(), (1..=8).collect::<Vec<_>>());
    let three = FreePolynomial::parse(fp(), 3, "xy - yx").unwrap();
    let rels = vec![three, FreePolynomial::parse(fp(), 3, "xz - zx").unwrap(), FreePolynomial::parse(fp(), 3, "yz - zy").unwrap()];
    let q = GradedQuotient::build(Presentation::new(fp(), 3, rels).unwrap(), 3).unwrap();
    let sym = lcslab_core::freealg::symmetrize3(
        &FreePolynomial::generator(fp(), 3, 0),
        &FreePolynomial::generator(fp(), 3, 1),
        &FreePolynomial::generator(fp(), 3, 2),
    )
    .unwrap();
    assert_eq!(q.nf(&sym).unwrap(), q.nf(&FreePolynomial::parse(fp(), 3, "xyz").unwrap()).unwrap());
}

fn poly_strategy(d: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..1000, 1 << d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_a_projection(coeffs in poly_strategy(6)) {
        let (pres, _) = Presentation::random(fp(), 2, &[3], 3).unwrap();
        let q = GradedQuotient::build(pres.clone(), 6).unwrap();
        let p = FreePolynomial::from_dense(fp(), 2, 6, &coeffs);
        let nf = q.nf(&p).unwrap();
        prop_assert_eq!(q.nf(&nf).unwrap(), nf.clone());
        let diff = p.sub(&nf).unwrap();
        prop_assert!(pres.ideal_component(6).unwrap().contains(&diff.to_dense(6)).unwrap());
    }
}
