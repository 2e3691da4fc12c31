//! Lower central series `L_1 = A`, `L_{i+1} = [A, L_i]`, the ideals
//! `M_i = A L_i`, their successive quotients `B_i = L_i / L_{i+1}` and
//! `N_i = M_i / M_{i+1}`, and inclusion checks between them.
//!
//! Everything is computed block by block. Subspaces are memoised per
//! `(i, key)`, so asking for `L_5` of some degree computes the lower terms
//! it depends on exactly once.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FreeAlgebra, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::FreePolynomial;
use crate::linalg::{apply_map, Echelon, Subspace};

/// Memoising engine over a graded algebra.
pub struct Lcs<'a, F: Field, A: GradedAlgebra<F>> {
    alg: &'a A,
    lower: BTreeMap<(usize, A::Key), Arc<Subspace<F>>>,
    ideal: BTreeMap<(usize, A::Key), Arc<Subspace<F>>>,
}

impl<'a, F: Field, A: GradedAlgebra<F>> Lcs<'a, F, A> {
    pub fn new(alg: &'a A) -> Self {
        Lcs { alg, lower: BTreeMap::new(), ideal: BTreeMap::new() }
    }

    pub fn algebra(&self) -> &'a A {
        self.alg
    }

    fn check(&self, i: usize, key: &A::Key) -> Result<()> {
        if i == 0 {
            return Err(Error::Unsupported("filtration index 0".into()));
        }
        let d = self.alg.degree(key);
        if d > self.alg.max_degree() {
            return Err(Error::Truncation { degree: d, max: self.alg.max_degree() });
        }
        Ok(())
    }

    fn trivial(&self, i: usize, key: &A::Key) -> Option<Subspace<F>> {
        let f = self.alg.field().clone();
        let dim = self.alg.dim(key);
        if i == 1 {
            Some(Subspace::full(f, dim))
        } else if self.alg.degree(key) < i {
            Some(Subspace::zero(f, dim))
        } else {
            None
        }
    }

    /// `L_i` in block `key`.
    pub fn lower(&mut self, i: usize, key: &A::Key) -> Result<Arc<Subspace<F>>> {
        self.check(i, key)?;
        if let Some(s) = self.lower.get(&(i, key.clone())) {
            return Ok(s.clone());
        }
        let s = match self.trivial(i, key) {
            Some(s) => s,
            None => {
                let mut ech = Echelon::new(self.alg.field().clone(), self.alg.dim(key));
                for (a, b) in self.alg.splits(key) {
                    let prev = self.lower(i - 1, &b)?;
                    if prev.is_zero() {
                        continue;
                    }
                    ech.push_rows(&basis_brackets(self.alg, &a, &b, prev.matrix()))?;
                }
                ech.finish()
            }
        };
        let s = Arc::new(s);
        self.lower.insert((i, key.clone()), s.clone());
        Ok(s)
    }

    /// `M_i = A L_i` in block `key`, built as `L_i + V M_i`.
    pub fn ideal(&mut self, i: usize, key: &A::Key) -> Result<Arc<Subspace<F>>> {
        self.check(i, key)?;
        if let Some(s) = self.ideal.get(&(i, key.clone())) {
            return Ok(s.clone());
        }
        let s = match self.trivial(i, key) {
            Some(s) => s,
            None => {
                let base = self.lower(i, key)?;
                let mut ech = Echelon::from_subspace(&base);
                for (a, b) in self.alg.splits(key) {
                    if self.alg.degree(&a) != 1 {
                        continue;
                    }
                    let prev = self.ideal(i, &b)?;
                    if prev.is_zero() {
                        continue;
                    }
                    ech.push_rows(&self.alg.left_products(&a, &b, prev.matrix()))?;
                }
                ech.finish()
            }
        };
        let s = Arc::new(s);
        self.ideal.insert((i, key.clone()), s.clone());
        Ok(s)
    }

    pub fn lower_dim(&mut self, i: usize, d: usize) -> Result<usize> {
        let mut total = 0;
        for key in self.keys_checked(d)? {
            total += self.lower(i, &key)?.rank();
        }
        Ok(total)
    }

    pub fn ideal_dim(&mut self, i: usize, d: usize) -> Result<usize> {
        let mut total = 0;
        for key in self.keys_checked(d)? {
            total += self.ideal(i, &key)?.rank();
        }
        Ok(total)
    }

    fn keys_checked(&self, d: usize) -> Result<Vec<A::Key>> {
        if d > self.alg.max_degree() {
            return Err(Error::Truncation { degree: d, max: self.alg.max_degree() });
        }
        Ok(self.alg.keys(d))
    }

    /// Dimensions of `L_i`, `M_i`, `B_i`, `N_i` for `1 <= i <= i_max`,
    /// `0 <= d <= max_degree`.
    pub fn table(&mut self, i_max: usize, max_degree: usize) -> Result<FiltrationTable> {
        let mut lower = Vec::with_capacity(i_max + 1);
        let mut ideal = Vec::with_capacity(i_max + 1);
        for i in 1..=i_max + 1 {
            let mut l = Vec::with_capacity(max_degree + 1);
            let mut m = Vec::with_capacity(max_degree + 1);
            for d in 0..=max_degree {
                l.push(self.lower_dim(i, d)?);
                m.push(self.ideal_dim(i, d)?);
            }
            lower.push(l);
            ideal.push(m);
        }
        let diff = |v: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            (0..i_max).map(|i| v[i].iter().zip(&v[i + 1]).map(|(a, b)| a - b).collect()).collect()
        };
        let b = diff(&lower);
        let n = diff(&ideal);
        lower.truncate(i_max);
        ideal.truncate(i_max);
        Ok(FiltrationTable { i_max, max_degree, lower, ideal, b, n })
    }

    /// Per degree, the dimension of `(M_i M_j + M_target) / M_target`.
    pub fn product_defects(&mut self, i: usize, j: usize, target: usize, max_degree: usize) -> Result<Vec<(usize, usize)>> {
        // M_i M_j = M_i A L_j = M_i L_j
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut defect = 0;
            for key in self.keys_checked(d)? {
                let t = self.ideal(target, &key)?;
                let mut ech = Echelon::from_subspace(&t);
                for (a, b) in self.alg.splits(&key) {
                    let x = self.ideal(i, &a)?;
                    let y = self.lower(j, &b)?;
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    ech.push_rows(&products(self.alg, &a, x.matrix(), &b, y.matrix()))?;
                }
                defect += ech.rank() - t.rank();
            }
            out.push((d, defect));
        }
        Ok(out)
    }

    /// Per degree, the dimension of `(M_2^r + M_3) / M_3`.
    pub fn m2_power_defects(&mut self, r: usize, max_degree: usize) -> Result<Vec<(usize, usize)>> {
        if r == 0 {
            return Err(Error::Unsupported("zeroth power".into()));
        }
        // P_1 = M_2 and P_t = M_2 P_{t-1} = A (L_2 P_{t-1}), block by block
        let mut power: BTreeMap<A::Key, Subspace<F>> = BTreeMap::new();
        for d in 0..=max_degree {
            for key in self.keys_checked(d)? {
                power.insert(key.clone(), (*self.ideal(2, &key)?).clone());
            }
        }
        for _ in 1..r {
            let mut next: BTreeMap<A::Key, Subspace<F>> = BTreeMap::new();
            for d in 0..=max_degree {
                for key in self.alg.keys(d) {
                    let mut ech = Echelon::new(self.alg.field().clone(), self.alg.dim(&key));
                    for (a, b) in self.alg.splits(&key) {
                        let x = self.lower(2, &a)?;
                        let y = &power[&b];
                        if !x.is_zero() && !y.is_zero() {
                            ech.push_rows(&products(self.alg, &a, x.matrix(), &b, y.matrix()))?;
                        }
                        if self.alg.degree(&a) == 1 {
                            let z = &next[&b];
                            if !z.is_zero() {
                                ech.push_rows(&self.alg.left_products(&a, &b, z.matrix()))?;
                            }
                        }
                    }
                    next.insert(key, ech.finish());
                }
            }
            power = next;
        }
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut defect = 0;
            for key in self.alg.keys(d) {
                let t = self.ideal(3, &key)?;
                defect += t.sum(&power[&key])?.rank() - t.rank();
            }
            out.push((d, defect));
        }
        Ok(out)
    }

    /// Per degree, `(dim L_{m+1}, dim ([A_{<=2}, L_m] + L_{m+2}))`; the
    /// generation statement holds where the two agree.
    pub fn b_generation(&mut self, m: usize, max_degree: usize) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let (mut lhs, mut rhs) = (0, 0);
            for key in self.keys_checked(d)? {
                let target = self.lower(m + 1, &key)?;
                let base = self.lower(m + 2, &key)?;
                let mut ech = Echelon::from_subspace(&base);
                for (a, b) in self.alg.splits(&key) {
                    if self.alg.degree(&a) > 2 {
                        continue;
                    }
                    let l = self.lower(m, &b)?;
                    if !l.is_zero() {
                        ech.push_rows(&basis_brackets(self.alg, &a, &b, l.matrix()))?;
                    }
                }
                let generated = ech.finish();
                if !generated.is_subspace_of(&target)? {
                    return Err(Error::NotContained { small: generated.rank(), big: target.rank() });
                }
                lhs += target.rank();
                rhs += generated.rank();
            }
            out.push((d, lhs, rhs));
        }
        Ok(out)
    }

    /// Per degree, whether `L_2 ∩ M_3 = L_3` holds as subspaces, with the
    /// dimensions of both sides.
    pub fn l2_cap_m3(&mut self, max_degree: usize) -> Result<Vec<(usize, bool, usize, usize)>> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let (mut equal, mut cap, mut l3) = (true, 0, 0);
            for key in self.keys_checked(d)? {
                let m3 = self.ideal(3, &key)?;
                let c = self.lower(2, &key)?.intersect(&m3)?;
                let t = self.lower(3, &key)?;
                equal &= c == *t;
                cap += c.rank();
                l3 += t.rank();
            }
            out.push((d, equal, cap, l3));
        }
        Ok(out)
    }

    /// Per degree, the dimension of `([M_3, L_j] + L_{j+2}) / L_{j+2}`.
    pub fn m3_bracket_defects(&mut self, j: usize, max_degree: usize) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut defect = 0;
            for key in self.keys_checked(d)? {
                let t = self.lower(j + 2, &key)?;
                let mut ech = Echelon::from_subspace(&t);
                for (a, b) in self.alg.splits(&key) {
                    let x = self.ideal(3, &a)?;
                    let y = self.lower(j, &b)?;
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    ech.push_rows(&brackets(self.alg, &a, x.matrix(), &b, y.matrix()))?;
                }
                defect += ech.rank() - t.rank();
            }
            out.push((d, defect));
        }
        Ok(out)
    }

    /// Per degree, the dimension of `(M_i V + M_i) / M_i`, which is zero
    /// when `A L_i` is also a right ideal.
    pub fn right_stability_defects(&mut self, i: usize, max_degree: usize) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            let mut defect = 0;
            for key in self.keys_checked(d)? {
                let t = self.ideal(i, &key)?;
                let mut ech = Echelon::from_subspace(&t);
                for (a, b) in self.alg.splits(&key) {
                    if self.alg.degree(&a) != 1 {
                        continue;
                    }
                    let m = self.ideal(i, &b)?;
                    if !m.is_zero() {
                        ech.push_rows(&self.alg.right_products(&a, &b, m.matrix()))?;
                    }
                }
                defect += ech.rank() - t.rank();
            }
            out.push((d, defect));
        }
        Ok(out)
    }
}

/// `[u, v]` for every basis monomial `u` of block `a` and row `v` of `rows`.
fn basis_brackets<F: Field, A: GradedAlgebra<F>>(alg: &A, a: &A::Key, b: &A::Key, rows: &[F::Elem]) -> Vec<F::Elem> {
    let f = alg.field();
    let mut lp = alg.left_products(a, b, rows);
    let rp = alg.right_products(a, b, rows);
    for (x, y) in lp.iter_mut().zip(&rp) {
        *x = f.sub(x, y);
    }
    lp
}

/// All products `x y` with `x` a row of `xs` (block `a`) and `y` a row of
/// `ys` (block `b`).
fn products<F: Field, A: GradedAlgebra<F>>(alg: &A, a: &A::Key, xs: &[F::Elem], b: &A::Key, ys: &[F::Elem]) -> Vec<F::Elem> {
    combine_rows(alg, a, xs, b, ys, &alg.left_products(a, b, ys))
}

/// All commutators `[x, y]`, same layout as [`products`].
fn brackets<F: Field, A: GradedAlgebra<F>>(alg: &A, a: &A::Key, xs: &[F::Elem], b: &A::Key, ys: &[F::Elem]) -> Vec<F::Elem> {
    combine_rows(alg, a, xs, b, ys, &basis_brackets(alg, a, b, ys))
}

/// Given `per_basis[u][k]` = (basis monomial `u`) op (row `k` of `ys`),
/// returns `x op y_k = sum_u x_u per_basis[u][k]` for every row `x`.
fn combine_rows<F: Field, A: GradedAlgebra<F>>(
    alg: &A,
    a: &A::Key,
    xs: &[F::Elem],
    b: &A::Key,
    ys: &[F::Elem],
    per_basis: &[F::Elem],
) -> Vec<F::Elem> {
    let f = alg.field();
    let (da, db) = (alg.dim(a), alg.dim(b));
    let dg = alg.dim(&alg.combine(a, b));
    let r2 = ys.len() / db;
    let mut out = Vec::with_capacity((xs.len() / da) * r2 * dg);
    let mut gathered = vec![f.zero(); da * dg];
    for k in 0..r2 {
        for u in 0..da {
            gathered[u * dg..(u + 1) * dg].clone_from_slice(&per_basis[(u * r2 + k) * dg..(u * r2 + k + 1) * dg]);
        }
        out.extend(apply_map(f, xs, da, &gathered, dg));
    }
    out
}

/// Dimensions of the filtrations, indexed `[i - 1][d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationTable {
    pub i_max: usize,
    pub max_degree: usize,
    pub lower: Vec<Vec<usize>>,
    pub ideal: Vec<Vec<usize>>,
    pub b: Vec<Vec<usize>>,
    pub n: Vec<Vec<usize>>,
}

impl FiltrationTable {
    /// Checks the nesting and difference relations between the rows.
    pub fn consistent(&self) -> bool {
        let nested = |v: &Vec<Vec<usize>>| v.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| a >= b));
        let below = self.lower.iter().zip(&self.ideal).all(|(l, m)| l.iter().zip(m).all(|(a, b)| a <= b));
        let vanish = self.lower.iter().enumerate().skip(1).all(|(i, row)| row.iter().take(i + 1).all(|&x| x == 0));
        nested(&self.lower) && nested(&self.ideal) && below && vanish
    }
}

/// Top nonzero degrees of `B_m` and `N_m` for a quotient by one relation of
/// degree `d`, against the proven and the conjectured vanishing bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingRow {
    pub m: usize,
    pub top_b: Option<usize>,
    pub top_n: Option<usize>,
    /// `B_m[r] = 0` for `r >= 2d + 2m - 5` (within the computed range).
    pub b_bound: usize,
    pub b_bound_holds: bool,
    /// `N_m[r] = 0` for `r >= 2d + 2m - 4`.
    pub n_bound: usize,
    pub n_bound_holds: bool,
    /// Conjectural: both vanish for `r >= 2d + m - 3`.
    pub conjectured: usize,
    pub conjecture_holds: bool,
}

pub fn vanishing_report(table: &FiltrationTable, relation_degree: usize, m_max: usize) -> Vec<VanishingRow> {
    let d = relation_degree;
    (2..=m_max.min(table.i_max))
        .map(|m| {
            let b = &table.b[m - 1];
            let n = &table.n[m - 1];
            let top = |row: &Vec<usize>| row.iter().rposition(|&x| x != 0);
            let zero_from = |row: &Vec<usize>, r0: usize| row.iter().skip(r0).all(|&x| x == 0);
            let b_bound = 2 * d + 2 * m - 5;
            let n_bound = 2 * d + 2 * m - 4;
            let conjectured = 2 * d + m - 3;
            VanishingRow {
                m,
                top_b: top(b),
                top_n: top(n),
                b_bound,
                b_bound_holds: zero_from(b, b_bound),
                n_bound,
                n_bound_holds: zero_from(n, n_bound),
                conjectured,
                conjecture_holds: zero_from(b, conjectured) && zero_from(n, conjectured),
            }
        })
        .collect()
}

/// Membership of `[x [y, z, u], v]` in `L_3` and `L_4` of the free algebra
/// on five generators, inside its polylinear block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylinearReport {
    pub characteristic: u64,
    pub in_l3: bool,
    pub in_l4: bool,
    pub l3_dim: usize,
    pub l4_dim: usize,
}

pub fn polylinear_identities<F: Field>(field: F) -> Result<PolylinearReport> {
    let alg = FreeAlgebra::new(field.clone(), 5, 5)?;
    let g = |i| FreePolynomial::generator(field.clone(), 5, i);
    let (x, y, z, u, v) = (g(0), g(1), g(2), g(3), g(4));
    let inner = y.commutator(&z.commutator(&u)?)?;
    let elem = x.multiply(&inner)?.commutator(&v)?;
    let key = vec![1u8; 5];
    let coords = alg.coordinates(&elem)?.remove(&key).unwrap_or_else(|| vec![field.zero(); 120]);
    let mut lcs = Lcs::new(&alg);
    let l3 = lcs.lower(3, &key)?;
    let l4 = lcs.lower(4, &key)?;
    Ok(PolylinearReport {
        characteristic: field.characteristic(),
        in_l3: l3.contains(&coords)?,
        in_l4: l4.contains(&coords)?,
        l3_dim: l3.rank(),
        l4_dim: l4.rank(),
    })
}
