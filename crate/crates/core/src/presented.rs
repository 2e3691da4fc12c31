//! Finitely presented graded algebras `A_n / <f_1, ..., f_m>` built degree
//! by degree.
//!
//! Degree `k` of the quotient is computed from degree `k - 1`: every
//! element of `A[k]` is a combination of products `w z` with `w` a basis
//! monomial of `A[k-1]` and `z` a generator, and the only new linear
//! relations among these products are the left multiples `u f` of the
//! defining relations that end exactly at degree `k`. Reducing those to
//! echelon form picks out the basis (the non-pivot products) and gives the
//! rewriting rule for the rest.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{DegreeIndex, FreePolynomial, Word};
use crate::linalg::{apply_map, Echelon, Subspace};

/// Generators, coefficient field and homogeneous defining relations.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    n: usize,
    field: F,
    relations: Vec<FreePolynomial<F>>,
    seed: Option<u64>,
}

impl<F: Field> Presentation<F> {
    pub fn new(field: F, n: usize, relations: Vec<FreePolynomial<F>>) -> Result<Self> {
        for r in &relations {
            if r.ngens() != n {
                return Err(Error::Mismatch("generator counts"));
            }
            if r.field() != &field {
                return Err(Error::Mismatch("coefficient fields"));
            }
            if !r.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("{r}")));
            }
            if r.degree() == Some(0) {
                return Err(Error::ConstantRelation);
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Presentation { n, field, relations, seed: None })
    }

    pub fn free(field: F, n: usize) -> Self {
        Presentation { n, field, relations: Vec::new(), seed: None }
    }

    /// One random relation per entry of `degrees`, each resampled until its
    /// abelianization is squarefree. Relation `i` draws from its own stream
    /// seeded by the `i`-th output of a generator seeded with `seed`.
    pub fn random(field: F, n: usize, degrees: &[usize], seed: u64) -> Result<(Self, Vec<usize>)> {
        let mut master = ChaCha8Rng::seed_from_u64(seed);
        let mut relations = Vec::with_capacity(degrees.len());
        let mut resamples = Vec::with_capacity(degrees.len());
        for &d in degrees {
            let mut rng = ChaCha8Rng::seed_from_u64(master.next_u64());
            let (p, tries) = random_relation(&field, n, d, &mut rng)?;
            relations.push(p);
            resamples.push(tries);
        }
        let mut pres = Presentation::new(field, n, relations)?;
        pres.seed = Some(seed);
        Ok((pres, resamples))
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn relations(&self) -> &[FreePolynomial<F>] {
        &self.relations
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.relations.iter().map(|r| r.degree().unwrap_or(0)).collect()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }

    /// The degree-`d` part of the two-sided ideal, in the coordinates of
    /// `A_n[d]` ([`DegreeIndex`] order), spanned by all `u f v`.
    pub fn ideal_component(&self, d: usize) -> Result<Subspace<F>> {
        let f = &self.field;
        let idx = DegreeIndex::new(self.n, d);
        let mut ech = Echelon::new(f.clone(), idx.len());
        for du in 0..=d {
            for rel in &self.relations {
                let e = rel.degree().unwrap_or(0);
                if du + e > d {
                    continue;
                }
                let dv = d - du - e;
                let dense = rel.to_dense(e);
                let (iu, iv) = (DegreeIndex::new(self.n, du), DegreeIndex::new(self.n, dv));
                let (nv, ne) = (iv.len(), dense.len());
                for u in 0..iu.len() {
                    for v in 0..nv {
                        let mut vec = vec![f.zero(); idx.len()];
                        for (w, c) in dense.iter().enumerate() {
                            vec[(u * ne + w) * nv + v] = c.clone();
                        }
                        ech.push(&vec)?;
                    }
                }
            }
        }
        Ok(ech.finish())
    }
}

/// Warning text when `field` is too small for a degree-`d` relation to be
/// generic with reasonable probability.
pub fn small_field_warning<F: Field>(field: &F, d: usize) -> Option<String> {
    let c = field.characteristic();
    (c != 0 && c <= d as u64).then(|| format!("characteristic {c} is at most the relation degree {d}; squarefree draws may be rare"))
}

/// A uniformly random homogeneous polynomial of degree `d`, redrawn until
/// its abelianization is squarefree. Returns the number of redraws.
pub fn random_relation<F: Field>(field: &F, n: usize, d: usize, rng: &mut dyn RngCore) -> Result<(FreePolynomial<F>, usize)> {
    if d < 2 {
        return Err(Error::Unsupported(format!("random relations need degree >= 2, got {d}")));
    }
    if n != 2 {
        return Err(Error::Unsupported(format!("squarefree test for {n} generators")));
    }
    let idx = DegreeIndex::new(n, d);
    let mut tries = 0;
    loop {
        let coeffs: Vec<F::Elem> = (0..idx.len()).map(|_| field.random(rng)).collect();
        let p = FreePolynomial::from_dense(field.clone(), n, d, &coeffs);
        if abelianization_squarefree(&p)? {
            return Ok((p, tries));
        }
        tries += 1;
        if tries > 10_000 {
            return Err(Error::Unsupported("no squarefree relation after 10000 draws".into()));
        }
    }
}

/// For a homogeneous `p` in two generators: whether its image in the
/// polynomial ring factors into pairwise distinct linear forms.
pub fn abelianization_squarefree<F: Field>(p: &FreePolynomial<F>) -> Result<bool> {
    if p.ngens() != 2 {
        return Err(Error::Unsupported(format!("squarefree test for {} generators", p.ngens())));
    }
    if !p.is_homogeneous() {
        return Err(Error::Inhomogeneous(format!("{p}")));
    }
    let f = p.field();
    let Some(d) = p.degree() else {
        return Ok(false);
    };
    // coefficient of x^a y^(d-a), read as a polynomial in t = x/y
    let mut g = vec![f.zero(); d + 1];
    for (w, c) in p.terms() {
        let a = w.letters().iter().filter(|&&x| x == 0).count();
        g[a] = f.add(&g[a], c);
    }
    if f.is_zero(&g[d]) && (d == 0 || f.is_zero(&g[d - 1])) {
        return Ok(false);
    }
    trim(f, &mut g);
    let dg: Vec<F::Elem> = (1..g.len()).map(|i| f.mul(&f.from_i64(i as i64), &g[i])).collect();
    let h = poly_gcd(f, g, dg);
    Ok(h.len() == 1)
}

fn trim<F: Field>(f: &F, g: &mut Vec<F::Elem>) {
    while g.last().is_some_and(|c| f.is_zero(c)) {
        g.pop();
    }
}

fn poly_gcd<F: Field>(f: &F, mut a: Vec<F::Elem>, mut b: Vec<F::Elem>) -> Vec<F::Elem> {
    trim(f, &mut a);
    trim(f, &mut b);
    while !b.is_empty() {
        // a mod b
        let lead = f.inv(b.last().expect("nonempty")).expect("nonzero leading coefficient");
        while a.len() >= b.len() {
            let c = f.mul(a.last().expect("nonempty"), &lead);
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[shift + i] = f.sub(&a[shift + i], &f.mul(&c, bi));
            }
            trim(f, &mut a);
            if a.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

/// Where a product `w z` (basis monomial of degree `k - 1` times a
/// generator) goes in `A[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Image {
    /// It is itself a basis monomial, at this position.
    Basis(u32),
    /// It is rewritten by this row of the letter's reducer matrix.
    Reduced(u32),
}

/// Degree-truncated quotient algebra with normal-form reduction.
#[derive(Clone, Debug)]
pub struct GradedQuotient<F: Field> {
    pres: Presentation<F>,
    max_degree: usize,
    /// Basis monomials per degree, lexicographically sorted.
    normal: Vec<Vec<Word>>,
    /// `images[k][j * n + z]`: the product of basis monomial `j` of degree
    /// `k - 1` with generator `z` (index 0 unused).
    images: Vec<Vec<Image>>,
    /// `reducers[k][z]`: row-major rewriting rules in `A[k]` coordinates.
    reducers: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> GradedQuotient<F> {
    pub fn build(pres: Presentation<F>, max_degree: usize) -> Result<Self> {
        let f = pres.field.clone();
        let n = pres.n;
        let mut q = GradedQuotient {
            pres,
            max_degree,
            normal: vec![vec![Word::empty()]],
            images: vec![Vec::new()],
            reducers: vec![Vec::new()],
        };
        for k in 1..=max_degree {
            let prev = q.normal[k - 1].len();
            let width = prev * n;
            let mut ech = Echelon::new(f.clone(), width);
            for rel in q.pres.relations.clone() {
                let e = rel.degree().expect("nonzero relation");
                if e > k {
                    continue;
                }
                ech.push_rows(&q.left_multiples(&rel, k - e)?)?;
            }
            let ideal = ech.finish();
            let pivots = ideal.pivots();
            let mut images = vec![Image::Basis(0); width];
            let mut is_pivot = vec![false; width];
            for &c in pivots {
                is_pivot[c] = true;
            }
            let mut words = Vec::with_capacity(width - pivots.len());
            let mut nonpivot = Vec::with_capacity(width - pivots.len());
            for c in 0..width {
                if !is_pivot[c] {
                    images[c] = Image::Basis(words.len() as u32);
                    words.push(q.normal[k - 1][c / n].concat(&Word::letter(c % n)));
                    nonpivot.push(c);
                }
            }
            let mut reducers: Vec<Vec<F::Elem>> = vec![Vec::new(); n];
            let mut counts = vec![0u32; n];
            for (r, &c) in pivots.iter().enumerate() {
                let z = c % n;
                images[c] = Image::Reduced(counts[z]);
                counts[z] += 1;
                let row = ideal.row(r);
                reducers[z].extend(nonpivot.iter().map(|&j| f.neg(&row[j])));
            }
            q.normal.push(words);
            q.images.push(images);
            q.reducers.push(reducers);
        }
        Ok(q)
    }

    /// Rows `u f` for every basis monomial `u` of degree `du`, written in
    /// the product coordinates of degree `du + deg f` (basis monomial of one
    /// degree less, then a generator).
    fn left_multiples(&self, rel: &FreePolynomial<F>, du: usize) -> Result<Vec<F::Elem>> {
        let f = &self.pres.field;
        let n = self.pres.n;
        let e = rel.degree().expect("nonzero relation");
        let k = du + e;
        let rows = self.normal[du].len();
        let prev = self.normal[k - 1].len();
        let width = prev * n;
        let mut out = vec![f.zero(); rows * width];
        let mut memo: BTreeMap<Word, Vec<F::Elem>> = BTreeMap::new();
        memo.insert(Word::empty(), identity(f, rows));
        for (w, c) in rel.terms() {
            let z = w.last().expect("positive degree");
            let chain = self.chain_from(&mut memo, du, &w.prefix());
            for u in 0..rows {
                for j in 0..prev {
                    let x = &chain[u * prev + j];
                    if !f.is_zero(x) {
                        let slot = &mut out[u * width + j * n + z];
                        *slot = f.add(slot, &f.mul(c, x));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `rows * word`, using and filling a memo of prefixes. `rows` is the
    /// memo entry of the empty word and lives in degree `base`.
    fn chain_from(&self, memo: &mut BTreeMap<Word, Vec<F::Elem>>, base: usize, word: &Word) -> Vec<F::Elem> {
        if let Some(v) = memo.get(word) {
            return v.clone();
        }
        let z = word.last().expect("empty word is memoised");
        let prefix = word.prefix();
        let before = self.chain_from(memo, base, &prefix);
        let out = self.apply_right(base + prefix.degree(), z, &before);
        memo.insert(word.clone(), out.clone());
        out
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.pres
    }

    pub fn field(&self) -> &F {
        &self.pres.field
    }

    pub fn ngens(&self) -> usize {
        self.pres.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, d: usize) -> usize {
        self.normal.get(d).map_or(0, |w| w.len())
    }

    pub fn hilbert_dims(&self) -> Vec<usize> {
        self.normal.iter().map(|w| w.len()).collect()
    }

    pub fn normal_words(&self, d: usize) -> &[Word] {
        &self.normal[d]
    }

    /// Right multiplication by generator `z` on a row-major matrix over
    /// `A[k]`; the result is over `A[k + 1]`.
    pub fn apply_right(&self, k: usize, z: usize, rows: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.pres.field;
        let n = self.pres.n;
        let (din, dout) = (self.dim(k), self.dim(k + 1));
        let r = if din == 0 { 0 } else { rows.len() / din };
        let mut out = vec![f.zero(); r * dout];
        if dout == 0 {
            return out;
        }
        let red = &self.reducers[k + 1][z];
        let nred = if dout == 0 { 0 } else { red.len() / dout };
        let mut coeffs = vec![f.zero(); r * nred];
        let mut any = false;
        for j in 0..din {
            match self.images[k + 1][j * n + z] {
                Image::Basis(pos) => {
                    for i in 0..r {
                        out[i * dout + pos as usize] = rows[i * din + j].clone();
                    }
                }
                Image::Reduced(idx) => {
                    for i in 0..r {
                        let x = &rows[i * din + j];
                        if !f.is_zero(x) {
                            coeffs[i * nred + idx as usize] = f.neg(x);
                            any = true;
                        }
                    }
                }
            }
        }
        if any {
            f.sub_product(&mut out, dout, &coeffs, red);
        }
        out
    }

    /// Rows `start..end` of the matrix of right multiplication by `z`,
    /// `A[k] -> A[k + 1]`.
    pub fn right_map_rows(&self, k: usize, z: usize, start: usize, end: usize) -> Vec<F::Elem> {
        let f = &self.pres.field;
        let n = self.pres.n;
        let dout = self.dim(k + 1);
        let red = &self.reducers[k + 1][z];
        let mut out = vec![f.zero(); (end - start) * dout];
        for j in start..end {
            let row = &mut out[(j - start) * dout..(j - start + 1) * dout];
            match self.images[k + 1][j * n + z] {
                Image::Basis(pos) => row[pos as usize] = f.one(),
                Image::Reduced(idx) => {
                    let i = idx as usize;
                    row.clone_from_slice(&red[i * dout..(i + 1) * dout]);
                }
            }
        }
        out
    }

    /// Matrices of left multiplication by each generator, `A[k] -> A[k+1]`
    /// for `k = 0, 1, ...`, produced one degree at a time.
    pub fn left_maps(&self) -> LeftMaps<'_, F> {
        LeftMaps { q: self, k: 0, current: Vec::new() }
    }

    /// Normal-form coordinates of `p`, degree by degree (zero degrees omitted).
    pub fn coordinates(&self, p: &FreePolynomial<F>) -> Result<BTreeMap<usize, Vec<F::Elem>>> {
        let f = &self.pres.field;
        if p.ngens() != self.pres.n {
            return Err(Error::Mismatch("generator counts"));
        }
        if let Some(d) = p.degree() {
            if d > self.max_degree {
                return Err(Error::Truncation { degree: d, max: self.max_degree });
            }
        }
        let mut memo: BTreeMap<Word, Vec<F::Elem>> = BTreeMap::new();
        memo.insert(Word::empty(), vec![f.one()]);
        let mut out: BTreeMap<usize, Vec<F::Elem>> = BTreeMap::new();
        for (w, c) in p.terms() {
            let v = self.chain_from(&mut memo, 0, w);
            let d = w.degree();
            let slot = out.entry(d).or_insert_with(|| vec![f.zero(); self.dim(d)]);
            f.axpy(slot, c, &v);
        }
        out.retain(|_, v| v.iter().any(|x| !f.is_zero(x)));
        Ok(out)
    }

    /// The normal form: the unique representative supported on basis monomials.
    pub fn nf(&self, p: &FreePolynomial<F>) -> Result<FreePolynomial<F>> {
        let mut out = FreePolynomial::zero(self.pres.field.clone(), self.pres.n);
        for (d, v) in self.coordinates(p)? {
            for (i, c) in v.into_iter().enumerate() {
                out.add_term(self.normal[d][i].clone(), c);
            }
        }
        Ok(out)
    }

    pub fn to_polynomial(&self, d: usize, v: &[F::Elem]) -> FreePolynomial<F> {
        FreePolynomial::from_terms(
            self.pres.field.clone(),
            self.pres.n,
            v.iter().enumerate().map(|(i, c)| (self.normal[d][i].clone(), c.clone())),
        )
    }
}

fn identity<F: Field>(f: &F, m: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); m * m];
    for i in 0..m {
        out[i * m + i] = f.one();
    }
    out
}

/// Iterator over left multiplication matrices; see [`GradedQuotient::left_maps`].
pub struct LeftMaps<'a, F: Field> {
    q: &'a GradedQuotient<F>,
    k: usize,
    current: Vec<Vec<F::Elem>>,
}

impl<F: Field> Iterator for LeftMaps<'_, F> {
    /// One row-major `dim A[k] x dim A[k+1]` matrix per generator.
    type Item = Vec<Vec<F::Elem>>;

    fn next(&mut self) -> Option<Self::Item> {
        self.advance().map(|m| m.to_vec())
    }
}

impl<F: Field> LeftMaps<'_, F> {
    /// Degree `k` of the maps returned by the next call to `advance`.
    pub fn degree(&self) -> usize {
        self.k
    }

    /// Like `next`, but lends the maps instead of copying them.
    pub fn advance(&mut self) -> Option<&[Vec<F::Elem>]> {
        let q = self.q;
        let n = q.pres.n;
        let k = self.k;
        if k >= q.max_degree {
            return None;
        }
        let next: Vec<Vec<F::Elem>> = if k == 0 {
            (0..n).map(|x| q.apply_right(0, x, &[q.pres.field.one()])).collect()
        } else {
            // x (w z) = (x w) z for the basis monomial w z of degree k
            let f = &q.pres.field;
            let (dk, dnext) = (q.dim(k), q.dim(k + 1));
            let mut by_letter: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
            for (c, img) in q.images[k].iter().enumerate() {
                if let Image::Basis(pos) = img {
                    by_letter[c % n].push((*pos as usize, c / n));
                }
            }
            (0..n)
                .map(|x| {
                    let prev = &self.current[x];
                    let mut out = vec![f.zero(); dk * dnext];
                    for (z, list) in by_letter.iter().enumerate() {
                        if list.is_empty() {
                            continue;
                        }
                        let mut gathered = Vec::with_capacity(list.len() * dk);
                        for &(_, j) in list {
                            gathered.extend_from_slice(&prev[j * dk..(j + 1) * dk]);
                        }
                        let moved = q.apply_right(k, z, &gathered);
                        for (t, &(pos, _)) in list.iter().enumerate() {
                            out[pos * dnext..(pos + 1) * dnext].clone_from_slice(&moved[t * dnext..(t + 1) * dnext]);
                        }
                    }
                    out
                })
                .collect()
        };
        self.current = next;
        self.k += 1;
        Some(&self.current)
    }
}

/// A [`GradedQuotient`] with all left multiplication maps materialised,
/// graded by total degree, as input for the lower central series engine.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Field> {
    q: GradedQuotient<F>,
    left: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn new(q: GradedQuotient<F>) -> Self {
        let left = q.left_maps().collect();
        QuotientAlgebra { q, left }
    }

    pub fn build(pres: Presentation<F>, max_degree: usize) -> Result<Self> {
        Ok(Self::new(GradedQuotient::build(pres, max_degree)?))
    }

    pub fn quotient(&self) -> &GradedQuotient<F> {
        &self.q
    }

    /// Left multiplication by generator `x` as a matrix `A[k] -> A[k+1]`.
    pub fn left_map(&self, k: usize, x: usize) -> &[F::Elem] {
        &self.left[k][x]
    }

    pub fn apply_left(&self, k: usize, x: usize, rows: &[F::Elem]) -> Vec<F::Elem> {
        apply_map(self.q.field(), rows, self.q.dim(k), &self.left[k][x], self.q.dim(k + 1))
    }
}

impl<F: Field> GradedAlgebra<F> for QuotientAlgebra<F> {
    type Key = usize;

    fn field(&self) -> &F {
        self.q.field()
    }

    fn ngens(&self) -> usize {
        self.q.ngens()
    }

    fn max_degree(&self) -> usize {
        self.q.max_degree
    }

    fn keys(&self, d: usize) -> Vec<usize> {
        if d <= self.q.max_degree {
            vec![d]
        } else {
            Vec::new()
        }
    }

    fn degree(&self, key: &usize) -> usize {
        *key
    }

    fn dim(&self, key: &usize) -> usize {
        self.q.dim(*key)
    }

    fn combine(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn splits(&self, key: &usize) -> Vec<(usize, usize)> {
        (1..*key).map(|e| (e, key - e)).collect()
    }

    fn basis_word(&self, key: &usize, i: usize) -> Word {
        self.q.normal[*key][i].clone()
    }

    fn left_products(&self, a: &usize, b: &usize, rows: &[F::Elem]) -> Vec<F::Elem> {
        // u v for u = u_1 ... u_e is u_1 (u_2 (... (u_e v))): build suffixes
        let mut memo: BTreeMap<Word, Vec<F::Elem>> = BTreeMap::new();
        memo.insert(Word::empty(), rows.to_vec());
        let mut out = Vec::new();
        for u in &self.q.normal[*a] {
            let letters = u.letters();
            for start in (0..letters.len()).rev() {
                let suffix = Word::from_letters(&letters[start..].iter().map(|&x| x as usize).collect::<Vec<_>>());
                if memo.contains_key(&suffix) {
                    continue;
                }
                let tail = Word::from_letters(&letters[start + 1..].iter().map(|&x| x as usize).collect::<Vec<_>>());
                let prod = self.apply_left(b + tail.degree(), letters[start] as usize, &memo[&tail]);
                memo.insert(suffix, prod);
            }
            out.extend_from_slice(&memo[u]);
        }
        out
    }

    fn right_products(&self, a: &usize, b: &usize, rows: &[F::Elem]) -> Vec<F::Elem> {
        let mut memo: BTreeMap<Word, Vec<F::Elem>> = BTreeMap::new();
        memo.insert(Word::empty(), rows.to_vec());
        let mut out = Vec::new();
        for u in &self.q.normal[*a] {
            out.extend(self.q.chain_from(&mut memo, *b, u));
        }
        out
    }

    fn coordinates(&self, p: &FreePolynomial<F>) -> Result<BTreeMap<usize, Vec<F::Elem>>> {
        self.q.coordinates(p)
    }
}

/// Human-readable summary used in reports.
pub fn describe<F: Field>(p: &Presentation<F>) -> String {
    if p.is_free() {
        return format!("free algebra on {} generators over {}", p.n, p.field.spec());
    }
    format!("{} generators, relation degrees {:?}, over {}", p.n, p.degrees(), p.field.spec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Fp, Rationals};

    fn cubic(field: Fp, seed: u64) -> Presentation<Fp> {
        Presentation::random(field, 2, &[3], seed).unwrap().0
    }

    #[test]
    fn free_quotient_is_free() {
        let q = GradedQuotient::build(Presentation::free(Rationals, 2), 6).unwrap();
        assert_eq!(q.hilbert_dims(), vec![1, 2, 4, 8, 16, 32, 64]);
        let p = FreePolynomial::parse(Rationals, 2, "xyx - 2*yy + 3").unwrap();
        assert_eq!(q.nf(&p).unwrap(), p);
    }

    #[test]
    fn generic_cubic_dims() {
        let f = Fp::new(FieldSpec::DEFAULT_PRIME).unwrap();
        let q = GradedQuotient::build(cubic(f, 7), 10).unwrap();
        assert_eq!(q.hilbert_dims(), vec![1, 2, 4, 7, 12, 20, 33, 54, 88, 143, 232]);
    }

    #[test]
    fn relations_reduce_to_zero() {
        let f = Fp::new(FieldSpec::DEFAULT_PRIME).unwrap();
        let pres = cubic(f, 3);
        let rel = pres.relations()[0].clone();
        let q = GradedQuotient::build(pres, 6).unwrap();
        assert!(q.nf(&rel).unwrap().is_zero());
        let x = FreePolynomial::generator(f, 2, 0);
        assert!(q.nf(&x.multiply(&rel).unwrap()).unwrap().is_zero());
        assert!(q.nf(&rel.multiply(&x).unwrap().multiply(&x).unwrap()).unwrap().is_zero());
        for w in q.normal_words(5) {
            let m = FreePolynomial::monomial(f, 2, w.clone(), 1);
            assert_eq!(q.nf(&m).unwrap(), m);
        }
    }

    #[test]
    fn commutative_quotient() {
        let rel = FreePolynomial::parse(Rationals, 2, "xy - yx").unwrap();
        let q = GradedQuotient::build(Presentation::new(Rationals, 2, vec![rel]).unwrap(), 6).unwrap();
        assert_eq!(q.hilbert_dims(), vec![1, 2, 3, 4, 5, 6, 7]);
        let p = FreePolynomial::parse(Rationals, 2, "yxy").unwrap();
        // the rewriting keeps the lexicographically largest arrangement
        assert_eq!(q.nf(&p).unwrap(), FreePolynomial::parse(Rationals, 2, "yyx").unwrap());
    }

    #[test]
    fn squarefree_examples() {
        let cube = FreePolynomial::parse(Rationals, 2, "xxx").unwrap();
        assert!(!abelianization_squarefree(&cube).unwrap());
        let split = FreePolynomial::parse(Rationals, 2, "xyx + xyy").unwrap();
        assert!(abelianization_squarefree(&split).unwrap());
        let at_infinity = FreePolynomial::parse(Rationals, 2, "xyy + yyy").unwrap();
        assert!(!abelianization_squarefree(&at_infinity).unwrap());
        let three = FreePolynomial::parse(Rationals, 3, "xyz").unwrap();
        assert!(matches!(abelianization_squarefree(&three), Err(Error::Unsupported(_))));
    }

    #[test]
    fn inhomogeneous_relations_are_rejected() {
        let p = FreePolynomial::parse(Rationals, 2, "xy + x").unwrap();
        assert!(matches!(Presentation::new(Rationals, 2, vec![p]), Err(Error::Inhomogeneous(_))));
        let c = FreePolynomial::parse(Rationals, 2, "3").unwrap();
        assert!(matches!(Presentation::new(Rationals, 2, vec![c]), Err(Error::ConstantRelation)));
    }

    #[test]
    fn left_maps_agree_with_normal_forms() {
        let f = Fp::new(1_000_003).unwrap();
        let q = QuotientAlgebra::build(cubic(f, 11), 6).unwrap();
        for k in 0..5 {
            for x in 0..2 {
                let m = q.left_map(k, x);
                let dn = q.dim(&(k + 1));
                for (j, w) in q.quotient().normal_words(k).iter().enumerate() {
                    let prod = FreePolynomial::monomial(f, 2, Word::letter(x).concat(w), 1);
                    let expect = q.quotient().coordinates(&prod).unwrap().remove(&(k + 1)).unwrap_or(vec![0; dn]);
                    assert_eq!(&m[j * dn..(j + 1) * dn], &expect[..]);
                }
            }
        }
    }
}
