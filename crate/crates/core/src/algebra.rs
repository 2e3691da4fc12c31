//! Graded algebras as the lower central series engine sees them: a family
//! of finite-dimensional blocks indexed by keys, with a fixed monomial
//! basis in every block and multiplication by basis elements.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{FreePolynomial, Word};

/// A graded algebra split into blocks. Every block has a monomial basis;
/// the product of two blocks lands in the block of the combined key.
pub trait GradedAlgebra<F: Field> {
    type Key: Clone + Ord + Debug + Send + Sync;

    fn field(&self) -> &F;
    fn ngens(&self) -> usize;
    /// Largest total degree for which blocks are available.
    fn max_degree(&self) -> usize;
    /// Keys of total degree `d`, in a fixed order.
    fn keys(&self, d: usize) -> Vec<Self::Key>;
    fn degree(&self, key: &Self::Key) -> usize;
    fn dim(&self, key: &Self::Key) -> usize;
    fn combine(&self, a: &Self::Key, b: &Self::Key) -> Self::Key;
    /// All `(a, b)` with `combine(a, b) == key` and both of positive degree.
    fn splits(&self, key: &Self::Key) -> Vec<(Self::Key, Self::Key)>;
    fn basis_word(&self, key: &Self::Key, i: usize) -> Word;

    /// For every basis monomial `u` of block `a` (outer loop) and every row
    /// `v` of `rows` (a matrix over block `b`): the product `u v`.
    fn left_products(&self, a: &Self::Key, b: &Self::Key, rows: &[F::Elem]) -> Vec<F::Elem>;
    /// Same layout as [`GradedAlgebra::left_products`] with `v u` instead.
    fn right_products(&self, a: &Self::Key, b: &Self::Key, rows: &[F::Elem]) -> Vec<F::Elem>;

    /// Product of two block elements.
    fn product(&self, a: &Self::Key, x: &[F::Elem], b: &Self::Key, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let key = self.combine(a, b);
        let dim = self.dim(&key);
        let prods = self.left_products(a, b, y);
        let coeffs: Vec<F::Elem> = x.iter().map(|c| f.neg(c)).collect();
        let mut out = vec![f.zero(); dim];
        f.sub_product(&mut out, dim, &coeffs, &prods);
        out
    }

    /// Coordinates of the image of `p`, block by block (zero blocks omitted).
    fn coordinates(&self, p: &FreePolynomial<F>) -> Result<BTreeMap<Self::Key, Vec<F::Elem>>>;

    /// Element of block `key` as a polynomial in basis monomials.
    fn to_polynomial(&self, key: &Self::Key, v: &[F::Elem]) -> FreePolynomial<F> {
        let f = self.field();
        FreePolynomial::from_terms(
            f.clone(),
            self.ngens(),
            v.iter().enumerate().map(|(i, c)| (self.basis_word(key, i), c.clone())),
        )
    }

    /// Commutator of two block elements.
    fn bracket(&self, a: &Self::Key, x: &[F::Elem], b: &Self::Key, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut xy = self.product(a, x, b, y);
        let yx = self.product(b, y, a, x);
        for (s, t) in xy.iter_mut().zip(&yx) {
            *s = f.sub(s, t);
        }
        xy
    }
}

/// Multidegree of a monomial: how often each generator occurs.
pub type MultiDegree = Vec<u8>;

const MAX_FREE_DEGREE: usize = 30;

/// The free algebra `A_n` truncated at a total degree, split into
/// multidegree blocks. Block bases are the words of that multidegree in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct FreeAlgebra<F: Field> {
    field: F,
    n: usize,
    max_degree: usize,
    blocks: BTreeMap<MultiDegree, Vec<Word>>,
    factorial: Vec<u128>,
}

impl<F: Field> FreeAlgebra<F> {
    pub fn new(field: F, n: usize, max_degree: usize) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::Unsupported(alloc::format!("{n} generators")));
        }
        if max_degree > MAX_FREE_DEGREE {
            return Err(Error::Truncation { degree: max_degree, max: MAX_FREE_DEGREE });
        }
        let mut factorial = vec![1u128; MAX_FREE_DEGREE + 1];
        for i in 1..=MAX_FREE_DEGREE {
            factorial[i] = factorial[i - 1] * i as u128;
        }
        let mut blocks = BTreeMap::new();
        for d in 0..=max_degree {
            for md in compositions(d, n) {
                let mut words = Vec::new();
                let mut counts = md.clone();
                let mut cur = Word::empty();
                words_of(&mut counts, d, &mut cur, &mut words);
                blocks.insert(md, words);
            }
        }
        Ok(FreeAlgebra { field, n, max_degree, blocks, factorial })
    }

    pub fn words(&self, key: &MultiDegree) -> &[Word] {
        &self.blocks[key]
    }

    fn multinomial(&self, counts: &[u8]) -> u128 {
        let total: usize = counts.iter().map(|&c| c as usize).sum();
        counts.iter().fold(self.factorial[total], |acc, &c| acc / self.factorial[c as usize])
    }

    /// Position of the first word of block `key` that starts with `prefix`.
    fn prefix_offset(&self, prefix: &Word, key: &MultiDegree) -> usize {
        let mut counts = key.clone();
        let mut rank = 0u128;
        for &x in prefix.letters() {
            for c in 0..x as usize {
                if counts[c] > 0 {
                    counts[c] -= 1;
                    rank += self.multinomial(&counts);
                    counts[c] += 1;
                }
            }
            counts[x as usize] -= 1;
        }
        rank as usize
    }

    /// Position of `w` inside its multidegree block.
    pub fn position(&self, w: &Word) -> usize {
        self.prefix_offset(w, &to_key(w.multidegree(self.n)))
    }

    fn offsets(&self, part: &MultiDegree, whole: &MultiDegree) -> Vec<usize> {
        self.blocks[part].iter().map(|w| self.prefix_offset(w, whole)).collect()
    }

    fn block_key(&self, w: &Word) -> MultiDegree {
        to_key(w.multidegree(self.n))
    }
}

fn to_key(m: Vec<usize>) -> MultiDegree {
    m.into_iter().map(|c| c as u8).collect()
}

/// All multidegrees of total `d` over `n` generators, lexicographically
/// descending in the first coordinate.
pub fn compositions(d: usize, n: usize) -> Vec<MultiDegree> {
    fn rec(d: usize, n: usize, cur: &mut MultiDegree, out: &mut Vec<MultiDegree>) {
        if n == 1 {
            cur.push(d as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=d).rev() {
            cur.push(first as u8);
            rec(d - first, n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, &mut Vec::with_capacity(n), &mut out);
    out
}

fn words_of(counts: &mut MultiDegree, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for x in 0..counts.len() {
        if counts[x] > 0 {
            counts[x] -= 1;
            cur.push(x);
            words_of(counts, left - 1, cur, out);
            cur.pop();
            counts[x] += 1;
        }
    }
}

impl<F: Field> GradedAlgebra<F> for FreeAlgebra<F> {
    type Key = MultiDegree;

    fn field(&self) -> &F {
        &self.field
    }

    fn ngens(&self) -> usize {
        self.n
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn keys(&self, d: usize) -> Vec<MultiDegree> {
        if d > self.max_degree {
            return Vec::new();
        }
        compositions(d, self.n)
    }

    fn degree(&self, key: &MultiDegree) -> usize {
        key.iter().map(|&c| c as usize).sum()
    }

    fn dim(&self, key: &MultiDegree) -> usize {
        self.blocks.get(key).map_or(0, |b| b.len())
    }

    fn combine(&self, a: &MultiDegree, b: &MultiDegree) -> MultiDegree {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn splits(&self, key: &MultiDegree) -> Vec<(MultiDegree, MultiDegree)> {
        let total = self.degree(key);
        let mut out = Vec::new();
        let mut a = vec![0u8; key.len()];
        loop {
            let da: usize = a.iter().map(|&c| c as usize).sum();
            if da > 0 && da < total {
                let b: MultiDegree = key.iter().zip(&a).map(|(k, x)| k - x).collect();
                out.push((a.clone(), b));
            }
            // odometer over 0..=key[i]
            let mut i = 0;
            loop {
                if i == key.len() {
                    return out;
                }
                if a[i] < key[i] {
                    a[i] += 1;
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }

    fn basis_word(&self, key: &MultiDegree, i: usize) -> Word {
        self.blocks[key][i].clone()
    }

    fn left_products(&self, a: &MultiDegree, b: &MultiDegree, rows: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let (da, db) = (self.dim(a), self.dim(b));
        let key = self.combine(a, b);
        let dg = self.dim(&key);
        let r = if db == 0 { 0 } else { rows.len() / db };
        let offs = self.offsets(a, &key);
        let mut out = vec![f.zero(); da * r * dg];
        for (i, &off) in offs.iter().enumerate() {
            for k in 0..r {
                let dst = (i * r + k) * dg + off;
                out[dst..dst + db].clone_from_slice(&rows[k * db..(k + 1) * db]);
            }
        }
        out
    }

    fn right_products(&self, a: &MultiDegree, b: &MultiDegree, rows: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let (da, db) = (self.dim(a), self.dim(b));
        let key = self.combine(a, b);
        let dg = self.dim(&key);
        let r = if db == 0 { 0 } else { rows.len() / db };
        let offs = self.offsets(b, &key);
        let mut out = vec![f.zero(); da * r * dg];
        for i in 0..da {
            for k in 0..r {
                let base = (i * r + k) * dg + i;
                for (j, c) in rows[k * db..(k + 1) * db].iter().enumerate() {
                    out[base + offs[j]] = c.clone();
                }
            }
        }
        out
    }

    fn product(&self, a: &MultiDegree, x: &[F::Elem], b: &MultiDegree, y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let key = self.combine(a, b);
        let mut out = vec![f.zero(); self.dim(&key)];
        let offs = self.offsets(a, &key);
        for (i, xi) in x.iter().enumerate() {
            if !f.is_zero(xi) {
                f.axpy(&mut out[offs[i]..offs[i] + y.len()], xi, y);
            }
        }
        out
    }

    fn coordinates(&self, p: &FreePolynomial<F>) -> Result<BTreeMap<MultiDegree, Vec<F::Elem>>> {
        if p.ngens() != self.n {
            return Err(Error::Mismatch("generator counts"));
        }
        let mut out: BTreeMap<MultiDegree, Vec<F::Elem>> = BTreeMap::new();
        for (w, c) in p.terms() {
            if w.degree() > self.max_degree {
                return Err(Error::Truncation { degree: w.degree(), max: self.max_degree });
            }
            let key = self.block_key(w);
            let dim = self.dim(&key);
            let pos = self.position(w);
            out.entry(key).or_insert_with(|| vec![self.field.zero(); dim])[pos] = c.clone();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn blocks_are_lex_sorted_and_ranked() {
        let a = FreeAlgebra::new(Rationals, 3, 5).unwrap();
        for d in 0..=5 {
            let mut total = 0;
            for key in a.keys(d) {
                let words = a.words(&key);
                assert!(words.windows(2).all(|w| w[0] < w[1]));
                for (i, w) in words.iter().enumerate() {
                    assert_eq!(a.position(w), i);
                }
                total += words.len();
            }
            assert_eq!(total, 3usize.pow(d as u32));
        }
    }

    #[test]
    fn block_products_match_concatenation() {
        let a = FreeAlgebra::new(Rationals, 2, 6).unwrap();
        let (ka, kb) = (vec![1u8, 1], vec![2u8, 1]);
        let f = Rationals;
        let da = a.dim(&ka);
        let db = a.dim(&kb);
        let x: Vec<_> = (0..da).map(|i| f.from_i64(i as i64 + 1)).collect();
        let y: Vec<_> = (0..db).map(|i| f.from_i64(2 * i as i64 - 1)).collect();
        let px = a.to_polynomial(&ka, &x);
        let py = a.to_polynomial(&kb, &y);
        let expect = px.multiply(&py).unwrap();
        let got = a.to_polynomial(&vec![3, 2], &a.product(&ka, &x, &kb, &y));
        assert_eq!(got, expect);
        let lp = a.left_products(&ka, &kb, &y);
        let rp = a.right_products(&ka, &kb, &y);
        let dg = a.dim(&vec![3, 2]);
        for i in 0..da {
            let u = FreePolynomial::monomial(f, 2, a.basis_word(&ka, i), f.one());
            assert_eq!(a.to_polynomial(&vec![3, 2], &lp[i * dg..(i + 1) * dg]), u.multiply(&py).unwrap());
            assert_eq!(a.to_polynomial(&vec![3, 2], &rp[i * dg..(i + 1) * dg]), py.multiply(&u).unwrap());
        }
    }

    #[test]
    fn splits_cover_all_proper_subkeys() {
        let a = FreeAlgebra::new(Rationals, 2, 6).unwrap();
        let s = a.splits(&vec![2, 1]);
        assert_eq!(s.len(), 3 * 2 - 2);
        assert!(s.iter().all(|(x, y)| a.combine(x, y) == vec![2, 1]));
    }
}
