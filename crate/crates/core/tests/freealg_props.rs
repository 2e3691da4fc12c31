mod common;

use common::{dense, fp, P};
use lcslab_core::freealg::{left_normed_bracket, symmetrize3};
use lcslab_core::identities::jacobi_sum;
use lcslab_core::{DegreeIndex, Error, Fp, FreePolynomial, Rationals, Word};
use proptest::prelude::*;

fn homogeneous(n: usize, d: usize) -> impl Strategy<Value = FreePolynomial<Fp>> {
    proptest::collection::vec(0u32..(P as u32), n.pow(d as u32)).prop_map(move |v| FreePolynomial::from_dense(fp(), n, d, &v))
}

/// Product by direct index arithmetic on dense vectors.
fn dense_product(n: usize, a: &[u64], da: usize, b: &[u64], db: usize) -> Vec<u64> {
    let shift = n.pow(db as u32);
    let mut out = vec![0u64; a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let k = i * shift + j;
            out[k] = (out[k] + x * y % P) % P;
        }
    }
    let _ = da;
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi(p in homogeneous(2, 1), q in homogeneous(2, 2), r in homogeneous(2, 3)) {
        prop_assert!(jacobi_sum(&p, &q, &r).unwrap().is_zero());
    }

    #[test]
    fn jacobi_three_generators(p in homogeneous(3, 1), q in homogeneous(3, 2), r in homogeneous(3, 2)) {
        prop_assert!(jacobi_sum(&p, &q, &r).unwrap().is_zero());
    }

    #[test]
    fn product_matches_index_arithmetic(p in homogeneous(2, 2), q in homogeneous(2, 3)) {
        let prod = p.multiply(&q).unwrap();
        prop_assert_eq!(prod.degree(), Some(5));
        prop_assert_eq!(dense(&prod, 5), dense_product(2, &dense(&p, 2), 2, &dense(&q, 3), 3));
    }

    #[test]
    fn commutator_is_antisymmetric_and_homogeneous(p in homogeneous(3, 1), q in homogeneous(3, 2)) {
        let c = p.commutator(&q).unwrap();
        prop_assert!(c.is_homogeneous());
        prop_assert_eq!(c.neg(), q.commutator(&p).unwrap());
    }

    #[test]
    fn multidegree_is_additive(u in proptest::collection::vec(0usize..3, 0..6), v in proptest::collection::vec(0usize..3, 0..6)) {
        let (a, b) = (Word::from_letters(&u), Word::from_letters(&v));
        let sum: Vec<usize> = a.multidegree(3).iter().zip(b.multidegree(3)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.concat(&b).multidegree(3), sum);
    }

    #[test]
    fn degree_index_round_trips(idx in 0usize..729) {
        let di = DegreeIndex::new(3, 6);
        prop_assert_eq!(di.index(&di.word(idx)), idx);
    }

    #[test]
    fn display_parses_back(p in homogeneous(2, 3)) {
        let text = p.to_string();
        prop_assert_eq!(FreePolynomial::parse(fp(), 2, &text).unwrap(), p);
    }
}

#[test]
fn small_examples() {
    let q = |s: &str| FreePolynomial::parse(Rationals, 3, s).unwrap();
    let (x, y, z) = (q("x"), q("y"), q("z"));
    assert_eq!(x.multiply(&y).unwrap(), q("xy"));
    assert_eq!(FreePolynomial::one(Rationals, 3).multiply(&x).unwrap(), x);
    assert_eq!(q("x + y").multiply(&q("x - y")).unwrap(), q("xx - xy + yx - yy"));
    assert!(x.commutator(&x).unwrap().is_zero());
    assert_eq!(x.commutator(&x.commutator(&y).unwrap()).unwrap(), q("xxy - 2*xyx + yxx"));
    assert_eq!(left_normed_bracket(std::slice::from_ref(&x)).unwrap(), x);
    assert_eq!(left_normed_bracket(&[x.clone(), y.clone(), z.clone()]).unwrap(), x.commutator(&y.commutator(&z).unwrap()).unwrap());
    assert!(matches!(left_normed_bracket::<Rationals>(&[]), Err(Error::EmptyBracket)));
    assert_eq!(symmetrize3(&x, &x, &x).unwrap(), q("xxx"));
    let one = FreePolynomial::one(Rationals, 3);
    assert_eq!(symmetrize3(&x, &y, &one).unwrap(), q("1/2*xy + 1/2*yx"));
}

#[test]
fn symmetrization_needs_six_invertible() {
    for p in [2u32, 3] {
        let f = Fp::new(p).unwrap();
        let x = FreePolynomial::generator(f, 2, 0);
        assert!(matches!(symmetrize3(&x, &x, &x), Err(Error::UnsupportedCharacteristic { .. })));
    }
}
