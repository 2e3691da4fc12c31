//! Exact linear algebra on coordinate spaces `F^n`.
//!
//! A [`Subspace`] is stored in reduced row echelon form with rows sorted by
//! pivot column. That form is unique for a given subspace, so equality of
//! subspaces is equality of the stored matrices and the result never depends
//! on the order in which spanning vectors arrived.
//!
//! [`Echelon`] is the streaming builder: vectors are buffered, reduced in
//! batches against the current basis (a matrix product, which is where the
//! time goes for large ranks) and then folded in.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

const NO_PIVOT: u32 = u32::MAX;
const BATCH: usize = 64;

/// Streaming reduced-echelon builder.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<F::Elem>,
    pivots: Vec<usize>,
    pivot_row: Vec<u32>,
    pending: Vec<F::Elem>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![NO_PIVOT; dim],
            pending: Vec::new(),
        }
    }

    /// Starts from the basis of an existing subspace.
    pub fn from_subspace(s: &Subspace<F>) -> Self {
        let mut pivot_row = vec![NO_PIVOT; s.dim];
        for (r, &c) in s.pivots.iter().enumerate() {
            pivot_row[c] = r as u32;
        }
        Echelon {
            field: s.field.clone(),
            dim: s.dim,
            rows: s.rows.clone(),
            pivots: s.pivots.clone(),
            pivot_row,
            pending: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Queues a vector; it is folded in at the next batch boundary.
    pub fn push(&mut self, v: &[F::Elem]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: v.len() });
        }
        if self.dim == 0 {
            return Ok(());
        }
        if v.iter().all(|x| self.field.is_zero(x)) {
            return Ok(());
        }
        self.pending.extend_from_slice(v);
        if self.pending.len() >= BATCH * self.dim || self.rank_is_full() {
            self.flush();
        }
        Ok(())
    }

    /// Queues every row of a row-major matrix.
    pub fn push_rows(&mut self, rows: &[F::Elem]) -> Result<()> {
        if self.dim == 0 {
            return Ok(());
        }
        if rows.len() % self.dim != 0 {
            return Err(Error::LengthMismatch { expected: self.dim, got: rows.len() % self.dim });
        }
        for row in rows.chunks(self.dim) {
            if self.rank_is_full() {
                break;
            }
            self.push(row)?;
        }
        Ok(())
    }

    fn rank_is_full(&self) -> bool {
        self.pivots.len() == self.dim
    }

    pub fn rank(&mut self) -> usize {
        self.flush();
        self.pivots.len()
    }

    /// Reduces every pending vector and adds the survivors to the basis.
    pub fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let f = self.field.clone();
        let n = self.dim;
        let mut batch = core::mem::take(&mut self.pending);
        if self.rank_is_full() {
            return;
        }
        let nb = batch.len() / n;
        let r = self.pivots.len();
        if r > 0 {
            let mut coeffs = Vec::with_capacity(nb * r);
            for b in 0..nb {
                for &c in &self.pivots {
                    coeffs.push(batch[b * n + c].clone());
                }
            }
            f.sub_product(&mut batch, n, &coeffs, &self.rows);
        }

        // eliminate inside the batch, keeping the new rows mutually reduced
        let mut new_rows: Vec<F::Elem> = Vec::new();
        let mut new_pivots: Vec<usize> = Vec::new();
        for b in 0..nb {
            let mut v: Vec<F::Elem> = batch[b * n..(b + 1) * n].to_vec();
            for (k, &q) in new_pivots.iter().enumerate() {
                let c = v[q].clone();
                if !f.is_zero(&c) {
                    f.axpy(&mut v, &f.neg(&c), &new_rows[k * n..(k + 1) * n]);
                }
            }
            let Some(q) = v.iter().position(|x| !f.is_zero(x)) else {
                continue;
            };
            let inv = f.inv(&v[q]).expect("nonzero pivot");
            f.scale(&mut v, &inv);
            for k in 0..new_pivots.len() {
                let c = new_rows[k * n + q].clone();
                if !f.is_zero(&c) {
                    f.axpy(&mut new_rows[k * n..(k + 1) * n], &f.neg(&c), &v);
                }
            }
            new_rows.extend(v);
            new_pivots.push(q);
        }
        if new_pivots.is_empty() {
            return;
        }

        // clear the new pivot columns from the old rows
        if r > 0 {
            let k = new_pivots.len();
            let mut coeffs = Vec::with_capacity(r * k);
            let mut any = false;
            for row in 0..r {
                for &q in &new_pivots {
                    let c = self.rows[row * n + q].clone();
                    any |= !f.is_zero(&c);
                    coeffs.push(c);
                }
            }
            if any {
                f.sub_product(&mut self.rows, n, &coeffs, &new_rows);
            }
        }
        for &q in &new_pivots {
            self.pivot_row[q] = self.pivots.len() as u32;
            self.pivots.push(q);
        }
        self.rows.extend(new_rows);
    }

    /// Reduces `v` against the current basis (pending vectors are flushed first).
    pub fn reduce(&mut self, v: &mut [F::Elem]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: v.len() });
        }
        self.flush();
        reduce_against(&self.field, &self.rows, &self.pivots, v);
        Ok(())
    }

    /// Adds `v` immediately; returns whether the rank went up.
    pub fn insert(&mut self, v: &[F::Elem]) -> Result<bool> {
        let before = self.rank();
        self.push(v)?;
        Ok(self.rank() > before)
    }

    /// The basis rows in insertion order, without sorting.
    pub fn into_rows(mut self) -> Vec<F::Elem> {
        self.flush();
        self.rows
    }

    pub fn finish(mut self) -> Subspace<F> {
        self.flush();
        let n = self.dim;
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut pivots = Vec::with_capacity(order.len());
        for &i in &order {
            rows.extend_from_slice(&self.rows[i * n..(i + 1) * n]);
            pivots.push(self.pivots[i]);
        }
        Subspace { field: self.field, dim: n, rows, pivots }
    }
}

fn reduce_against<F: Field>(f: &F, rows: &[F::Elem], pivots: &[usize], v: &mut [F::Elem]) {
    if pivots.is_empty() {
        return;
    }
    let coeffs: Vec<F::Elem> = pivots.iter().map(|&c| v[c].clone()).collect();
    if coeffs.iter().all(|c| f.is_zero(c)) {
        return;
    }
    f.sub_product(v, v.len(), &coeffs, rows);
}

/// A linear subspace of `F^dim`, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<F::Elem>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, dim: usize) -> Self {
        Subspace { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, dim: usize) -> Self {
        let mut rows = vec![field.zero(); dim * dim];
        for i in 0..dim {
            rows[i * dim + i] = field.one();
        }
        Subspace { field, dim, rows, pivots: (0..dim).collect() }
    }

    /// Row-reduced span of the given vectors.
    pub fn span<'a, I>(field: F, dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [F::Elem]>,
        F::Elem: 'a,
    {
        let mut e = Echelon::new(field, dim);
        for v in vectors {
            e.push(v)?;
        }
        Ok(e.finish())
    }

    /// Span of the rows of a row-major matrix with `dim` columns.
    pub fn span_rows(field: F, dim: usize, rows: &[F::Elem]) -> Result<Self> {
        let mut e = Echelon::new(field, dim);
        e.push_rows(rows)?;
        Ok(e.finish())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows as one row-major matrix.
    pub fn matrix(&self) -> &[F::Elem] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.rows[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F::Elem]> + '_ {
        (0..self.rank()).map(move |i| self.row(i))
    }

    /// Remainder of `v` after reduction; zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_len(v.len())?;
        let mut out = v.to_vec();
        reduce_against(&self.field, &self.rows, &self.pivots, &mut out);
        Ok(out)
    }

    /// Reduces every row of a row-major matrix in place.
    pub fn reduce_rows(&self, rows: &mut [F::Elem]) -> Result<()> {
        if self.dim == 0 || self.pivots.is_empty() {
            return Ok(());
        }
        if rows.len() % self.dim != 0 {
            return Err(Error::LengthMismatch { expected: self.dim, got: rows.len() % self.dim });
        }
        let nb = rows.len() / self.dim;
        let mut coeffs = Vec::with_capacity(nb * self.rank());
        for b in 0..nb {
            for &c in &self.pivots {
                coeffs.push(rows[b * self.dim + c].clone());
            }
        }
        self.field.sub_product(rows, self.dim, &coeffs, &self.rows);
        Ok(())
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|x| self.field.is_zero(x)))
    }

    /// Whether every basis row of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_same(other)?;
        if self.rank() > other.rank() {
            return Ok(false);
        }
        let mut rows = self.rows.clone();
        other.reduce_rows(&mut rows)?;
        Ok(rows.iter().all(|x| self.field.is_zero(x)))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Self> {
        self.check_same(other)?;
        let (big, small) = if self.rank() >= other.rank() { (self, other) } else { (other, self) };
        let mut e = Echelon::from_subspace(big);
        e.push_rows(&small.rows)?;
        Ok(e.finish())
    }

    /// Intersection via one joint elimination of the stacked rows
    /// `[a | a]` and `[b | 0]`: rows whose left half vanishes span `A ∩ B`.
    pub fn intersect(&self, other: &Subspace<F>) -> Result<Self> {
        self.check_same(other)?;
        let n = self.dim;
        let f = &self.field;
        let mut e = Echelon::new(f.clone(), 2 * n);
        let mut buf = vec![f.zero(); 2 * n];
        for row in self.rows() {
            buf[..n].clone_from_slice(row);
            buf[n..].clone_from_slice(row);
            e.push(&buf)?;
        }
        for row in other.rows() {
            buf[..n].clone_from_slice(row);
            for x in buf[n..].iter_mut() {
                *x = f.zero();
            }
            e.push(&buf)?;
        }
        let joint = e.finish();
        let mut out = Echelon::new(f.clone(), n);
        for (i, &p) in joint.pivots.iter().enumerate() {
            if p >= n {
                out.push(&joint.row(i)[n..])?;
            }
        }
        Ok(out.finish())
    }

    /// `rank(big) - rank(small)`, after checking `small ⊆ big`.
    pub fn quotient_dim(big: &Subspace<F>, small: &Subspace<F>) -> Result<usize> {
        if !small.is_subspace_of(big)? {
            return Err(Error::NotContained { small: small.rank(), big: big.rank() });
        }
        Ok(big.rank() - small.rank())
    }

    /// Image of the subspace under the linear map whose matrix has one row
    /// per input coordinate (`map` is `dim x out_dim`, row-major).
    pub fn image(&self, map: &[F::Elem], out_dim: usize) -> Result<Self> {
        if map.len() != self.dim * out_dim {
            return Err(Error::LengthMismatch { expected: self.dim * out_dim, got: map.len() });
        }
        Ok(Subspace::span_rows(self.field.clone(), out_dim, &apply_map(&self.field, &self.rows, self.dim, map, out_dim))?)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: len });
        }
        Ok(())
    }

    fn check_same(&self, other: &Subspace<F>) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch { expected: self.dim, got: other.dim });
        }
        if self.field != other.field {
            return Err(Error::Mismatch("fields"));
        }
        Ok(())
    }
}

/// `rows * map` for a row-major `rows` (m x dim) and `map` (dim x out_dim).
pub fn apply_map<F: Field>(f: &F, rows: &[F::Elem], dim: usize, map: &[F::Elem], out_dim: usize) -> Vec<F::Elem> {
    if dim == 0 {
        return Vec::new();
    }
    let m = rows.len() / dim;
    let mut out = vec![f.zero(); m * out_dim];
    let neg: Vec<F::Elem> = rows.iter().map(|x| f.neg(x)).collect();
    f.sub_product(&mut out, out_dim, &neg, map);
    out
}

/// Left kernel of a row-major `m x n` matrix: all `x` with `x * M = 0`.
pub fn left_kernel<F: Field>(f: &F, matrix: &[F::Elem], n: usize) -> Result<Subspace<F>> {
    let m = if n == 0 { 0 } else { matrix.len() / n };
    if n == 0 {
        return Ok(Subspace::full(f.clone(), m));
    }
    let mut e = Echelon::new(f.clone(), n + m);
    let mut buf = vec![f.zero(); n + m];
    for i in 0..m {
        buf[..n].clone_from_slice(&matrix[i * n..(i + 1) * n]);
        for x in buf[n..].iter_mut() {
            *x = f.zero();
        }
        buf[n + i] = f.one();
        e.push(&buf)?;
    }
    let joint = e.finish();
    let mut out = Echelon::new(f.clone(), m);
    for (i, &p) in joint.pivots.iter().enumerate() {
        if p >= n {
            out.push(&joint.row(i)[n..])?;
        }
    }
    Ok(out.finish())
}

/// Rank of a row-major matrix with `n` columns.
pub fn rank<F: Field>(f: &F, matrix: &[F::Elem], n: usize) -> Result<usize> {
    let mut e = Echelon::new(f.clone(), n);
    e.push_rows(matrix)?;
    Ok(e.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    fn fp() -> Fp {
        Fp::new(101).unwrap()
    }

    #[test]
    fn span_of_nothing_is_zero() {
        let s = Subspace::span(fp(), 3, core::iter::empty()).unwrap();
        assert_eq!(s.rank(), 0);
        assert!(s.contains(&[0, 0, 0]).unwrap());
    }

    #[test]
    fn span_basics() {
        let s = Subspace::span(fp(), 2, [&[1u32, 0][..], &[1, 1][..]]).unwrap();
        assert_eq!(s, Subspace::full(fp(), 2));
        let e1 = Subspace::span(fp(), 2, [&[1u32, 0][..]]).unwrap();
        assert!(!e1.contains(&[0, 1]).unwrap());
        assert!(e1.contains(&[5, 0]).unwrap());
        assert!(matches!(e1.contains(&[1]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn intersect_and_quotient() {
        let f = fp();
        let e1 = Subspace::span(f, 2, [&[1u32, 0][..]]).unwrap();
        let e2 = Subspace::span(f, 2, [&[0u32, 1][..]]).unwrap();
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(Subspace::quotient_dim(&Subspace::full(f, 2), &e1).unwrap(), 1);
        assert!(matches!(
            Subspace::quotient_dim(&e1, &e2),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn kernel_of_small_matrix() {
        let q = Rationals;
        let m: Vec<_> = [1, 2, 2, 4, 0, 1].iter().map(|&v| q.from_i64(v)).collect();
        let k = left_kernel(&q, &m, 2).unwrap();
        assert_eq!(k.rank(), 1);
        let v = k.row(0);
        // v = (2, -1, 0) up to scaling
        assert_eq!(q.mul(&v[0], &q.from_i64(-1)), q.mul(&v[1], &q.from_i64(2)));
        assert!(q.is_zero(&v[2]));
    }

    #[test]
    fn large_batches_agree_with_single_insertion() {
        let f = Fp::new(crate::field::FieldSpec::DEFAULT_PRIME).unwrap();
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 90;
        // rank-deficient family: 200 combinations of 70 random vectors
        let base: Vec<Vec<u32>> = (0..70).map(|_| (0..n).map(|_| f.random(&mut rng)).collect()).collect();
        let vecs: Vec<Vec<u32>> = (0..200)
            .map(|_| {
                let mut v = vec![0u32; n];
                for b in &base {
                    let c = f.random(&mut rng) % 3;
                    f.axpy(&mut v, &c, b);
                }
                v
            })
            .collect();
        let batched = Subspace::span(f, n, vecs.iter().map(|v| v.as_slice())).unwrap();
        let mut one = Echelon::new(f, n);
        for v in vecs.iter().rev() {
            one.insert(v).unwrap();
        }
        let single = one.finish();
        assert_eq!(batched.rank(), 70);
        assert_eq!(batched, single);
    }
}
