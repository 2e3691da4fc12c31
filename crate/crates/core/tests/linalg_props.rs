mod common;

use common::{fp, NaiveBasis, P};
use lcslab_core::linalg::{left_kernel, rank};
use lcslab_core::{Field, Fp, FreePolynomial, Rationals, Subspace};
use proptest::prelude::*;

const DIM: usize = 7;

/// Low-rank-biased random row sets: combinations of a few seed rows.
fn rows() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..5, proptest::collection::vec(proptest::collection::vec(0u32..5, DIM), 1..5), proptest::collection::vec(0u32..(P as u32), 0..40)).prop_map(
        |(k, seeds, mix)| {
            let f = fp();
            let m = mix.len() / k.max(1);
            (0..m)
                .map(|r| {
                    let mut v = vec![0u32; DIM];
                    for (s, seed) in seeds.iter().enumerate().take(k) {
                        let c = mix[(r * k + s) % mix.len()];
                        for (x, y) in v.iter_mut().zip(seed) {
                            *x = f.add(x, &f.mul(&c, y));
                        }
                    }
                    v
                })
                .collect()
        },
    )
}

fn span(rows: &[Vec<u32>]) -> Subspace<Fp> {
    Subspace::span(fp(), DIM, rows.iter().map(|r| r.as_slice())).unwrap()
}

fn naive_rank(rows: &[Vec<u32>]) -> usize {
    let mut b = NaiveBasis::default();
    for r in rows {
        b.insert(r.iter().map(|&x| x as u64).collect());
    }
    b.rank()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_naive_elimination(a in rows()) {
        let s = span(&a);
        prop_assert_eq!(s.rank(), naive_rank(&a));
        let flat: Vec<u32> = a.concat();
        prop_assert_eq!(rank(&fp(), &flat, DIM).unwrap(), s.rank());
        for r in &a {
            prop_assert!(s.contains(r).unwrap());
        }
    }

    #[test]
    fn span_is_idempotent_and_order_free(a in rows()) {
        let s = span(&a);
        let again = Subspace::span(fp(), DIM, s.rows()).unwrap();
        prop_assert_eq!(&again, &s);
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(span(&rev), s);
    }

    #[test]
    fn dimension_formula(a in rows(), b in rows()) {
        let (u, w) = (span(&a), span(&b));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.rank() + cap.rank(), u.rank() + w.rank());
        prop_assert!(cap.is_subspace_of(&u).unwrap() && cap.is_subspace_of(&w).unwrap());
        prop_assert_eq!(Subspace::quotient_dim(&sum, &u).unwrap(), w.rank() - cap.rank());
    }

    #[test]
    fn modular_law(a in rows(), b in rows(), c in rows()) {
        // W ⊆ U implies U ∩ (W + X) = W + (U ∩ X)
        let x = span(&c);
        let w = span(&b);
        let u = span(&a).sum(&w).unwrap();
        let lhs = u.intersect(&w.sum(&x).unwrap()).unwrap();
        let rhs = w.sum(&u.intersect(&x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_kernel_annihilates(a in rows()) {
        let f = fp();
        let flat: Vec<u32> = a.concat();
        let k = left_kernel(&f, &flat, DIM).unwrap();
        prop_assert_eq!(k.rank() + span(&a).rank(), a.len());
        for x in k.rows() {
            let mut acc = vec![0u32; DIM];
            for (c, row) in x.iter().zip(&a) {
                for (s, r) in acc.iter_mut().zip(row) {
                    *s = f.add(s, &f.mul(c, r));
                }
            }
            prop_assert!(acc.iter().all(|&v| v == 0));
        }
    }
}

#[test]
fn small_examples() {
    let q = Rationals;
    assert_eq!(Subspace::<Rationals>::span(q, 3, std::iter::empty()).unwrap().rank(), 0);
    let one = q.one();
    let zero = q.zero();
    let e1 = vec![one.clone(), zero.clone()];
    let e12 = vec![one.clone(), one.clone()];
    assert_eq!(Subspace::span(q, 2, [e1.as_slice(), e12.as_slice()]).unwrap(), Subspace::full(q, 2));
    let g = |s: &str| FreePolynomial::parse(q, 2, s).unwrap();
    let (x, y) = (g("x"), g("y"));
    let brackets = [x.commutator(&y).unwrap(), y.commutator(&x).unwrap(), x.commutator(&x).unwrap(), y.commutator(&y).unwrap()];
    let vecs: Vec<_> = brackets.iter().map(|b| b.to_dense(2)).collect();
    assert_eq!(Subspace::span(q, 4, vecs.iter().map(|v| v.as_slice())).unwrap().rank(), 1);
    assert!(Subspace::span(q, 2, [[one.clone()].as_slice()]).is_err());
}
