mod common;

use common::{fp, FreeOracle};
use lcslab_core::{FreeAlgebra, Lcs, Rationals};

#[test]
fn free_lower_series_matches_definition() {
    for (n, max_d, i_max) in [(2, 6, 4), (3, 4, 3)] {
        let oracle = FreeOracle::new(n, max_d, i_max);
        let alg = FreeAlgebra::new(fp(), n, max_d).unwrap();
        let mut lcs = Lcs::new(&alg);
        for i in 1..=i_max {
            for d in 0..=max_d {
                assert_eq!(lcs.lower_dim(i, d).unwrap(), oracle.lower_dim(i, d), "n={n} L_{i}[{d}]");
            }
        }
        for i in 1..=i_max {
            for d in 0..=max_d {
                assert_eq!(lcs.ideal_dim(i, d).unwrap(), oracle.ideal(i, d).rank(), "n={n} M_{i}[{d}]");
            }
        }
    }
}

#[test]
fn free_a2_small_values() {
    // frozen from the oracle above
    let alg = FreeAlgebra::new(fp(), 2, 6).unwrap();
    let mut lcs = Lcs::new(&alg);
    let t = lcs.table(4, 6).unwrap();
    assert!(t.consistent());
    assert_eq!(t.b[1], vec![0, 0, 1, 2, 3, 4, 5]);
    assert_eq!(t.b[2][4], 4);
    assert_eq!(t.lower[2][4], 7);
    assert_eq!(t.lower[3][4], 3);
    assert_eq!(t.ideal[1][3], 4);
    assert_eq!(t.ideal[2][3], 2);
}

#[test]
fn exact_and_modular_tables_agree() {
    let a = FreeAlgebra::new(Rationals, 2, 6).unwrap();
    let b = FreeAlgebra::new(fp(), 2, 6).unwrap();
    let ta = Lcs::new(&a).table(3, 6).unwrap();
    let tb = Lcs::new(&b).table(3, 6).unwrap();
    assert_eq!(ta, tb);
}

#[test]
fn intersection_of_l2_and_m3() {
    let alg = FreeAlgebra::new(fp(), 2, 7).unwrap();
    for (d, equal, cap, l3) in Lcs::new(&alg).l2_cap_m3(7).unwrap() {
        assert!(equal, "degree {d}: {cap} vs {l3}");
    }
}
