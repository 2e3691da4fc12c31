//! Polynomial differential forms on affine `n`-space, the star product
//! `a * b = a ∧ b + ½ da ∧ db`, and the comparison of `A_n / M_3` with
//! even forms.
//!
//! A term is `c · x^e · dx_S` with `S` a set of indices stored as a
//! bitmask. Both `x_i` and `dx_i` have degree 1, so the map `phi` sending
//! generators to coordinate functions preserves degree and multidegree:
//! a form of multidegree `μ` is determined by its mask, the exponent being
//! `μ` minus the mask.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{FreeAlgebra, GradedAlgebra, MultiDegree};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{FreePolynomial, Word};
use crate::lcs::Lcs;
use crate::linalg::{left_kernel, Echelon, Subspace};

/// Exponent vector and index mask of a basis form.
pub type FormKey = (Vec<u16>, u32);

#[derive(Clone, PartialEq)]
pub struct DifferentialForm<F: Field> {
    n: usize,
    field: F,
    terms: BTreeMap<FormKey, F::Elem>,
}

fn sign_of_merge(s: u32, t: u32) -> bool {
    // number of pairs (i in s, j in t) with i > j, mod 2
    let mut odd = false;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = s >> (j + 1);
        odd ^= above.count_ones() % 2 == 1;
    }
    odd
}

impl<F: Field> DifferentialForm<F> {
    pub fn zero(field: F, n: usize) -> Self {
        assert!(n <= 32, "forms support at most 32 variables");
        DifferentialForm { n, field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: F, n: usize, exps: Vec<u16>, mask: u32, c: F::Elem) -> Self {
        let mut out = Self::zero(field, n);
        out.add_term((exps, mask), c);
        out
    }

    pub fn constant(field: F, n: usize, c: F::Elem) -> Self {
        Self::monomial(field, n, vec![0; n], 0, c)
    }

    /// The coordinate function `x_i`.
    pub fn coordinate(field: F, n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let one = field.one();
        Self::monomial(field, n, e, 0, one)
    }

    /// The one-form `dx_i`.
    pub fn differential(field: F, n: usize, i: usize) -> Self {
        let one = field.one();
        Self::monomial(field, n, vec![0; n], 1 << i, one)
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16], mask: u32) -> F::Elem {
        self.terms.get(&(exps.to_vec(), mask)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every term has even form rank.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|(_, m)| m.count_ones() % 2 == 0)
    }

    /// The part of form rank `k`.
    pub fn rank_component(&self, k: u32) -> Self {
        let mut out = Self::zero(self.field.clone(), self.n);
        for (key, c) in &self.terms {
            if key.1.count_ones() == k {
                out.terms.insert(key.clone(), c.clone());
            }
        }
        out
    }

    pub fn add_term(&mut self, key: FormKey, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch("variable counts"));
        }
        if self.field != other.field {
            return Err(Error::Mismatch("coefficient fields"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.field.clone(), self.n);
        for (k, a) in &self.terms {
            out.add_term(k.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n);
        for ((ea, sa), ca) in &self.terms {
            for ((eb, sb), cb) in &other.terms {
                if sa & sb != 0 {
                    continue;
                }
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let mut c = f.mul(ca, cb);
                if sign_of_merge(*sa, *sb) {
                    c = f.neg(&c);
                }
                out.add_term((exps, sa | sb), c);
            }
        }
        Ok(out)
    }

    /// The de Rham differential.
    pub fn de_rham(&self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n);
        for ((e, s), c) in &self.terms {
            for i in 0..self.n {
                if e[i] == 0 || s & (1 << i) != 0 {
                    continue;
                }
                let mut exps = e.clone();
                exps[i] -= 1;
                let mut coeff = f.mul(c, &f.from_i64(e[i] as i64));
                if (s & ((1u32 << i) - 1)).count_ones() % 2 == 1 {
                    coeff = f.neg(&coeff);
                }
                out.add_term((exps, s | (1 << i)), coeff);
            }
        }
        out
    }

    /// `a ∧ b + ½ da ∧ db`.
    pub fn star(&self, other: &Self) -> Result<Self> {
        let f = &self.field;
        let half = f.inv(&f.from_i64(2)).ok_or(Error::UnsupportedCharacteristic {
            characteristic: f.characteristic(),
            needs: 2,
        })?;
        let correction = self.de_rham().wedge(&other.de_rham())?.scale(&half);
        self.wedge(other)?.add(&correction)
    }

    /// `a * b - b * a`.
    pub fn star_commutator(&self, other: &Self) -> Result<Self> {
        self.star(other)?.sub(&other.star(self)?)
    }

    /// Coordinates in the basis of forms of multidegree `key` whose masks
    /// are listed in `masks`.
    pub fn coordinates(&self, key: &[u8], masks: &[u32]) -> Vec<F::Elem> {
        masks.iter().map(|&m| self.coefficient(&exponents(key, m), m)).collect()
    }
}

impl<F: Field> fmt::Debug for DifferentialForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((e, s), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.field.format(c))?;
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, " x{}^{}", j + 1, k)?;
                }
            }
            for j in 0..self.n {
                if s & (1 << j) != 0 {
                    write!(f, " dx{}", j + 1)?;
                }
            }
        }
        Ok(())
    }
}

fn exponents(key: &[u8], mask: u32) -> Vec<u16> {
    key.iter().enumerate().map(|(i, &k)| k as u16 - ((mask >> i) & 1) as u16).collect()
}

/// Masks of the basis forms of multidegree `key`, ascending, restricted to
/// even or odd form rank when `parity` is given.
pub fn masks(key: &[u8], parity: Option<u32>) -> Vec<u32> {
    let support: u32 = key.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| 1u32 << i).sum();
    let mut out = Vec::new();
    let mut m = 0u32;
    loop {
        if parity.is_none_or(|p| m.count_ones() % 2 == p) {
            out.push(m);
        }
        if m == support {
            break;
        }
        m = (m.wrapping_sub(support)) & support;
    }
    out.sort_unstable();
    out
}

/// The algebra map `A_n -> (Ω^even, *)` sending `x_i` to `x_i`.
pub fn phi<F: Field>(p: &FreePolynomial<F>) -> Result<DifferentialForm<F>> {
    let mut memo = BTreeMap::new();
    let f = p.field().clone();
    let mut out = DifferentialForm::zero(f.clone(), p.ngens());
    for (w, c) in p.terms() {
        out = out.add(&phi_word(&f, p.ngens(), w, &mut memo)?.scale(c))?;
    }
    Ok(out)
}

fn phi_word<F: Field>(f: &F, n: usize, w: &Word, memo: &mut BTreeMap<Word, DifferentialForm<F>>) -> Result<DifferentialForm<F>> {
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let v = match w.last() {
        None => DifferentialForm::constant(f.clone(), n, f.one()),
        Some(z) => phi_word(f, n, &w.prefix(), memo)?.star(&DifferentialForm::coordinate(f.clone(), n, z))?,
    };
    memo.insert(w.clone(), v.clone());
    Ok(v)
}

/// Matrix of `phi` on the block `key` of the free algebra, with columns
/// indexed by the even masks of `key`.
pub fn phi_matrix<F: Field>(alg: &FreeAlgebra<F>, key: &MultiDegree) -> Result<Vec<F::Elem>> {
    let f = alg.field().clone();
    let n = alg.ngens();
    let even = masks(key, Some(0));
    let mut memo = BTreeMap::new();
    let mut out = Vec::with_capacity(alg.dim(key) * even.len());
    for w in alg.words(key) {
        out.extend(phi_word(&f, n, w, &mut memo)?.coordinates(key, &even));
    }
    Ok(out)
}

/// Matrix of `d` from the forms of multidegree `key` with the given masks
/// to all forms of that multidegree (columns: every mask).
fn de_rham_matrix<F: Field>(f: &F, n: usize, key: &[u8], rows: &[u32]) -> Vec<F::Elem> {
    let all = masks(key, None);
    let mut out = Vec::with_capacity(rows.len() * all.len());
    for &m in rows {
        let form = DifferentialForm::monomial(f.clone(), n, exponents(key, m), m, f.one());
        out.extend(form.de_rham().coordinates(key, &all));
    }
    out
}

/// Per-degree outcome of comparing `A_n` with even forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsDegree {
    pub degree: usize,
    pub dim_a: usize,
    pub dim_even: usize,
    pub dim_m3: usize,
    /// `ker phi = M_3` and `phi` onto even forms.
    pub part1: bool,
    /// `phi(M_2)` is the even forms of positive rank.
    pub part2: bool,
    /// `phi(L_2)` is the exact even forms.
    pub part4: bool,
    pub dim_exact: usize,
    /// `dim A / (M_3 + L_2)`, the dimension of `B_1` modulo the image of `M_3`.
    pub part5_lhs: usize,
    /// `dim Ω^even - dim Ω^even_exact`.
    pub part5_rhs: usize,
}

impl FsDegree {
    pub fn holds(&self) -> bool {
        self.part1 && self.part2 && self.part4 && self.part5_lhs == self.part5_rhs
    }
}

/// Compares `A_n` with `(Ω^even, *)` in every degree up to `max_degree`.
pub fn check_fs_parts<F: Field>(field: F, n: usize, max_degree: usize) -> Result<Vec<FsDegree>> {
    let alg = FreeAlgebra::new(field.clone(), n, max_degree)?;
    let mut lcs = Lcs::new(&alg);
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let mut row = FsDegree {
            degree: d,
            dim_a: 0,
            dim_even: 0,
            dim_m3: 0,
            part1: true,
            part2: true,
            part4: true,
            dim_exact: 0,
            part5_lhs: 0,
            part5_rhs: 0,
        };
        for key in alg.keys(d) {
            let even = masks(&key, Some(0));
            let ne = even.len();
            let dim = alg.dim(&key);
            let map = phi_matrix(&alg, &key)?;
            let kernel = left_kernel(&field, &map, ne)?;
            let image = Subspace::span_rows(field.clone(), ne, &map)?;
            let m3 = lcs.ideal(3, &key)?;
            let m2 = lcs.ideal(2, &key)?;
            let l2 = lcs.lower(2, &key)?;
            row.part1 &= kernel == *m3 && image.rank() == ne;

            let positive = unit_span(&field, ne, even.iter().map(|&m| m != 0));
            row.part2 &= m2.image(&map, ne)? == positive;

            let exact = exact_even(&field, n, &key, &even)?;
            row.part4 &= l2.image(&map, ne)? == exact;

            row.dim_a += dim;
            row.dim_even += ne;
            row.dim_m3 += m3.rank();
            row.dim_exact += exact.rank();
            row.part5_lhs += dim - m3.sum(&l2)?.rank();
            row.part5_rhs += ne - exact.rank();
        }
        out.push(row);
    }
    Ok(out)
}

fn unit_span<F: Field>(f: &F, dim: usize, select: impl Iterator<Item = bool>) -> Subspace<F> {
    let mut ech = Echelon::new(f.clone(), dim);
    for (i, keep) in select.enumerate() {
        if keep {
            let mut v = vec![f.zero(); dim];
            v[i] = f.one();
            ech.push(&v).expect("length matches");
        }
    }
    ech.finish()
}

/// Closed even forms of positive rank in multidegree `key`, in the
/// coordinates of the even masks `even`. By the polynomial Poincaré lemma
/// these are exactly the exact even forms.
fn exact_even<F: Field>(f: &F, n: usize, key: &[u8], even: &[u32]) -> Result<Subspace<F>> {
    let positive: Vec<u32> = even.iter().copied().filter(|&m| m != 0).collect();
    let all = masks(key, None).len();
    let closed = left_kernel(f, &de_rham_matrix(f, n, key, &positive), all)?;
    let mut ech = Echelon::new(f.clone(), even.len());
    let place: Vec<usize> = positive.iter().map(|m| even.iter().position(|e| e == m).expect("subset")).collect();
    for row in closed.rows() {
        let mut v = vec![f.zero(); even.len()];
        for (c, &p) in row.iter().zip(&place) {
            v[p] = c.clone();
        }
        ech.push(&v)?;
    }
    Ok(ech.finish())
}

/// Per multidegree `μ` of total degree `d`, whether the kernel of
/// `ζ(Σ a_i ⊗ e_i) = Σ da_i ∧ dx_i` on `⊕_i Ω[μ - e_i] ⊗ e_i` is spanned by
/// (1) closed forms times `e_i`, (2) `β ∧ dx_i ⊗ e_i` and
/// `β ∧ dx_j ⊗ e_i + β ∧ dx_i ⊗ e_j`, (3) `Σ ∂f/∂x_i ⊗ e_i`.
/// Returns `(d, all blocks agree, total kernel dimension)`.
pub fn zeta_kernel_check<F: Field>(field: F, n: usize, max_degree: usize) -> Result<Vec<(usize, bool, usize)>> {
    let f = &field;
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let mut ok = true;
        let mut total = 0;
        for key in crate::algebra::compositions(d, n) {
            // summands: (i, masks of Ω[key - e_i])
            let mut parts: Vec<(usize, MultiDegree, Vec<u32>, usize)> = Vec::new();
            let mut offset = 0;
            for i in 0..n {
                if key[i] == 0 {
                    continue;
                }
                let mut sub = key.clone();
                sub[i] -= 1;
                let ms = masks(&sub, None);
                let len = ms.len();
                parts.push((i, sub, ms, offset));
                offset += len;
            }
            let width = offset;
            let target = masks(&key, None);
            let mut zeta = Vec::with_capacity(width * target.len());
            for (i, sub, ms, _) in &parts {
                let dxi = DifferentialForm::differential(f.clone(), n, *i);
                for &m in ms {
                    let a = DifferentialForm::monomial(f.clone(), n, exponents(sub, m), m, f.one());
                    zeta.extend(a.de_rham().wedge(&dxi)?.coordinates(&key, &target));
                }
            }
            let kernel = left_kernel(f, &zeta, target.len())?;

            let mut ech = Echelon::new(f.clone(), width);
            let slot = |i: usize, m: u32| -> Option<usize> {
                parts.iter().find(|p| p.0 == i).and_then(|p| p.2.iter().position(|&x| x == m).map(|k| p.3 + k))
            };
            // (1) closed forms in each summand
            for (_, sub, ms, off) in &parts {
                let dmat = de_rham_matrix(f, n, sub, ms);
                let closed = left_kernel(f, &dmat, masks(sub, None).len())?;
                for row in closed.rows() {
                    let mut v = vec![f.zero(); width];
                    v[*off..*off + ms.len()].clone_from_slice(row);
                    ech.push(&v)?;
                }
            }
            // (2) β ∧ dx_i ⊗ e_i and β ∧ dx_j ⊗ e_i + β ∧ dx_i ⊗ e_j, β a basis form
            for i in 0..n {
                for j in i..n {
                    let mut beta_key = key.clone();
                    if beta_key[i] == 0 {
                        continue;
                    }
                    beta_key[i] -= 1;
                    if beta_key[j] == 0 {
                        continue;
                    }
                    beta_key[j] -= 1;
                    for m in masks(&beta_key, None) {
                        let beta = DifferentialForm::monomial(f.clone(), n, exponents(&beta_key, m), m, f.one());
                        let mut v = vec![f.zero(); width];
                        let mut add = |slot_i: usize, form: DifferentialForm<F>| {
                            for ((_, mask), c) in form.terms() {
                                let k = slot(slot_i, *mask).expect("multidegree matches");
                                v[k] = f.add(&v[k], c);
                            }
                        };
                        add(i, beta.wedge(&DifferentialForm::differential(f.clone(), n, j))?);
                        if i != j {
                            add(j, beta.wedge(&DifferentialForm::differential(f.clone(), n, i))?);
                        }
                        ech.push(&v)?;
                    }
                }
            }
            // (3) gradients of functions
            let func = DifferentialForm::monomial(f.clone(), n, key.iter().map(|&k| k as u16).collect(), 0, f.one());
            let mut v = vec![f.zero(); width];
            for ((e, mask), c) in func.de_rham().terms() {
                let i = mask.trailing_zeros() as usize;
                let k = slot(i, 0).expect("function summand");
                debug_assert_eq!(e, &exponents(&parts.iter().find(|p| p.0 == i).expect("summand").1, 0));
                v[k] = f.add(&v[k], c);
            }
            ech.push(&v)?;

            let spanned = ech.finish();
            ok &= spanned == kernel;
            total += kernel.rank();
        }
        out.push((d, ok, total));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    type Form = DifferentialForm<Rationals>;

    fn x(i: usize) -> Form {
        Form::coordinate(Rationals, 2, i)
    }

    fn dx(i: usize) -> Form {
        Form::differential(Rationals, 2, i)
    }

    fn half() -> num_rational::BigRational {
        Rationals.from_ratio(&1.into(), &2.into()).unwrap()
    }

    #[test]
    fn wedge_signs() {
        assert!(dx(0).wedge(&dx(0)).unwrap().is_zero());
        assert_eq!(dx(0).wedge(&dx(1)).unwrap(), dx(1).wedge(&dx(0)).unwrap().scale(&Rationals.from_i64(-1)));
        let lhs = x(0).wedge(&dx(1)).unwrap().wedge(&x(1).wedge(&dx(0)).unwrap()).unwrap();
        let rhs = Form::monomial(Rationals, 2, vec![1, 1], 0b11, Rationals.from_i64(-1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential() {
        let x2 = x(0).wedge(&x(0)).unwrap();
        assert_eq!(x2.de_rham(), x(0).wedge(&dx(0)).unwrap().scale(&Rationals.from_i64(2)));
        assert_eq!(x(0).wedge(&dx(1)).unwrap().de_rham(), dx(0).wedge(&dx(1)).unwrap());
        assert!(dx(0).wedge(&dx(1)).unwrap().de_rham().is_zero());
    }

    #[test]
    fn star_products() {
        let xy = x(0).wedge(&x(1)).unwrap();
        let dxdy = dx(0).wedge(&dx(1)).unwrap();
        assert_eq!(x(0).star(&x(1)).unwrap(), xy.add(&dxdy.scale(&half())).unwrap());
        assert_eq!(x(0).star_commutator(&x(1)).unwrap(), dxdy);
        assert!(x(0).star_commutator(&dxdy).unwrap().is_zero());
    }

    #[test]
    fn phi_examples() {
        let p = |s: &str| FreePolynomial::parse(Rationals, 2, s).unwrap();
        let dxdy = dx(0).wedge(&dx(1)).unwrap();
        let xy = x(0).wedge(&x(1)).unwrap();
        assert_eq!(phi(&p("xy")).unwrap(), xy.add(&dxdy.scale(&half())).unwrap());
        assert_eq!(phi(&p("xy - yx")).unwrap(), dxdy);
        assert!(phi(&p("xxy - 2*xyx + yxx")).unwrap().is_zero());
    }

    #[test]
    fn mask_enumeration() {
        assert_eq!(masks(&[2, 0, 1], None), vec![0, 1, 4, 5]);
        assert_eq!(masks(&[2, 0, 1], Some(0)), vec![0, 5]);
        assert_eq!(masks(&[1, 1, 1], Some(1)), vec![1, 2, 4, 7]);
    }

    #[test]
    fn small_fs_check() {
        for row in check_fs_parts(Rationals, 2, 4).unwrap() {
            assert!(row.holds(), "{row:?}");
            if row.degree > 0 {
                assert_eq!(row.dim_a - row.dim_m3, 2 * row.degree);
            }
        }
    }

    #[test]
    fn zeta_kernel_spanned() {
        for n in 2..=3 {
            for (d, ok, _) in zeta_kernel_check(Rationals, n, 4).unwrap() {
                assert!(ok, "n = {n}, d = {d}");
            }
        }
    }
}
