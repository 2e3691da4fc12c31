#![allow(dead_code)]

use lcslab_core::{Field, FieldSpec, Fp, FreePolynomial};

pub const P: u64 = FieldSpec::DEFAULT_PRIME as u64;

pub fn fp() -> Fp {
    Fp::new(FieldSpec::DEFAULT_PRIME).unwrap()
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Plain Gaussian elimination mod `P`, kept deliberately simple.
#[derive(Clone, Default)]
pub struct NaiveBasis {
    rows: Vec<(usize, Vec<u64>)>,
}

impl NaiveBasis {
    pub fn reduce(&self, v: &mut [u64]) {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (P - c) * r) % P;
                }
            }
        }
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(v[piv], P - 2, P);
        for x in v.iter_mut() {
            *x = *x * inv % P;
        }
        self.rows.push((piv, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

/// Dense coordinates of a homogeneous polynomial over `fp()` in degree `d`.
pub fn dense(p: &FreePolynomial<Fp>, d: usize) -> Vec<u64> {
    p.to_dense(d).into_iter().map(|x| x as u64).collect()
}

pub fn from_dense(n: usize, d: usize, v: &[u64]) -> FreePolynomial<Fp> {
    let f = fp();
    let elems: Vec<u32> = v.iter().map(|&x| f.from_i64(x as i64)).collect();
    FreePolynomial::from_dense(f, n, d, &elems)
}

/// Every word of degree `d` over `n` letters as a polynomial.
pub fn monomials(n: usize, d: usize) -> Vec<FreePolynomial<Fp>> {
    let total = n.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            let mut letters = vec![0usize; d];
            for slot in letters.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
            let w = lcslab_core::Word::from_letters(&letters);
            FreePolynomial::monomial(fp(), n, w, 1)
        })
        .collect()
}

/// `L_i[d]` and `M_i[d]` of the free algebra, from the definitions.
pub struct FreeOracle {
    pub n: usize,
    pub max_degree: usize,
    /// `lower[i][d]`, `i >= 1`.
    pub lower: Vec<Vec<NaiveBasis>>,
}

impl FreeOracle {
    pub fn new(n: usize, max_degree: usize, i_max: usize) -> Self {
        let mut lower = vec![Vec::new()];
        let all: Vec<NaiveBasis> = (0..=max_degree)
            .map(|d| {
                let mut b = NaiveBasis::default();
                for m in monomials(n, d) {
                    b.insert(dense(&m, d));
                }
                b
            })
            .collect();
        lower.push(all);
        for i in 1..i_max {
            let prev = &lower[i];
            let mut next = Vec::new();
            for d in 0..=max_degree {
                let mut b = NaiveBasis::default();
                for a in 1..d {
                    for w in monomials(n, a) {
                        for v in prev[d - a].vectors() {
                            let v = from_dense(n, d - a, v);
                            b.insert(dense(&w.commutator(&v).unwrap(), d));
                        }
                    }
                }
                next.push(b);
            }
            lower.push(next);
        }
        FreeOracle { n, max_degree, lower }
    }

    pub fn lower_dim(&self, i: usize, d: usize) -> usize {
        self.lower[i][d].rank()
    }

    /// `A L_i A` in degree `d`.
    pub fn ideal(&self, i: usize, d: usize) -> NaiveBasis {
        let n = self.n;
        let mut b = NaiveBasis::default();
        for e in 0..=d {
            for l in self.lower[i][e].vectors() {
                let l = from_dense(n, e, l);
                for a in 0..=d - e {
                    for u in monomials(n, a) {
                        let ul = u.multiply(&l).unwrap();
                        for v in monomials(n, d - e - a) {
                            b.insert(dense(&ul.multiply(&v).unwrap(), d));
                        }
                    }
                }
            }
        }
        b
    }
}
