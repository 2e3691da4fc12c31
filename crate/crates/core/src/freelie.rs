//! Lyndon bases of free Lie algebras and the map `ψ` from the free Lie
//! algebra (degrees ≥ 2) into the commutator space `[A, A]` of a quotient.
//!
//! The image of `ψ` in degree `d` is `L_d[d]`, which is spanned by
//! `[x, v]` with `x` a generator and `v` in the image of degree `d - 1`.
//! The runner builds it that way, one degree at a time, with
//! `[x, v] = v (L_x - R_x)` on coordinate rows. `[A, A][d]` is spanned by the
//! rows of `L_x - R_x` on `A[d - 1]`, since `[uv, w] = [u, vw] + [v, wu]`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{FreePolynomial, Word};
use crate::linalg::{apply_map, Echelon};
use crate::presented::GradedQuotient;
use crate::series;

/// A bracketing of generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracket {
    Letter(u8),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn degree(&self) -> usize {
        match self {
            Bracket::Letter(_) => 1,
            Bracket::Pair(a, b) => a.degree() + b.degree(),
        }
    }

    /// The associative expansion in the free algebra on `n` generators.
    pub fn expand<F: Field>(&self, field: &F, n: usize) -> FreePolynomial<F> {
        match self {
            Bracket::Letter(x) => FreePolynomial::generator(field.clone(), n, *x as usize),
            Bracket::Pair(a, b) => {
                let (a, b) = (a.expand(field, n), b.expand(field, n));
                a.commutator(&b).expect("shared generators and field")
            }
        }
    }

    /// The word read off the leaves.
    pub fn word(&self) -> Word {
        match self {
            Bracket::Letter(x) => Word::letter(*x as usize),
            Bracket::Pair(a, b) => a.word().concat(&b.word()),
        }
    }

    pub fn render(&self, n: usize) -> String {
        match self {
            Bracket::Letter(x) => Word::letter(*x as usize).render(n),
            Bracket::Pair(a, b) => format!("[{},{}]", a.render(n), b.render(n)),
        }
    }
}

/// A Lyndon word with its standard bracketing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonElement {
    word: Word,
    bracket: Bracket,
}

impl LyndonElement {
    pub fn new(word: Word) -> Result<Self> {
        if !is_lyndon(&word) {
            return Err(Error::Unsupported(format!("{:?} is not a Lyndon word", word.letters())));
        }
        let bracket = standard_bracketing(&word);
        Ok(LyndonElement { word, bracket })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn bracket(&self) -> &Bracket {
        &self.bracket
    }

    pub fn degree(&self) -> usize {
        self.word.degree()
    }
}

impl fmt::Display for LyndonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.word.letters().iter().max().map_or(2, |&m| (m as usize + 1).max(2));
        f.write_str(&self.bracket.render(n))
    }
}

/// Whether `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &Word) -> bool {
    let s = w.letters();
    if s.is_empty() {
        return false;
    }
    (1..s.len()).all(|i| {
        let rotated = s[i..].iter().chain(&s[..i]);
        s.iter().lt(rotated)
    })
}

/// `w = u v` with `v` the longest proper Lyndon suffix; `None` for letters.
pub fn standard_factorization(w: &Word) -> Option<(Word, Word)> {
    let s = w.letters();
    (1..s.len()).find_map(|i| {
        let v = Word::from_bytes(s[i..].to_vec());
        is_lyndon(&v).then(|| (Word::from_bytes(s[..i].to_vec()), v))
    })
}

fn standard_bracketing(w: &Word) -> Bracket {
    match standard_factorization(w) {
        None => Bracket::Letter(w.letters()[0]),
        Some((u, v)) => Bracket::Pair(Box::new(standard_bracketing(&u)), Box::new(standard_bracketing(&v))),
    }
}

/// Calls `visit` on every Lyndon word of length `d` over `n` letters, in
/// lexicographic order (Duval's generation algorithm).
pub fn for_each_lyndon(n: usize, d: usize, mut visit: impl FnMut(&[u8])) {
    if d == 0 || n == 0 {
        return;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == d {
            visit(&w);
        }
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
}

pub fn lyndon_words(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_lyndon(n, d, |w| out.push(Word::from_bytes(w.to_vec())));
    out
}

pub fn lyndon_count(n: usize, d: usize) -> u64 {
    let mut count = 0;
    for_each_lyndon(n, d, |_| count += 1);
    count
}

/// Lyndon words of length `d` with their standard bracketings.
pub fn lyndon_basis(n: usize, d: usize) -> Vec<LyndonElement> {
    lyndon_words(n, d)
        .into_iter()
        .map(|w| {
            let bracket = standard_bracketing(&w);
            LyndonElement { word: w, bracket }
        })
        .collect()
}

pub fn expand_bracket<F: Field>(field: &F, n: usize, el: &LyndonElement) -> FreePolynomial<F> {
    el.bracket.expand(field, n)
}

/// One degree of a `ψ` measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRow {
    pub degree: usize,
    /// Dimension of the free Lie algebra in this degree.
    pub a: BigInt,
    /// `dim [A, A][d]`, when measured.
    pub c: Option<usize>,
    pub rank: usize,
    /// `c - rank`, when `c` was measured.
    pub coker: Option<usize>,
}

/// Settings for [`psi_ranks`].
#[derive(Clone, Debug)]
pub struct PsiOptions {
    /// Degrees to report; the image is carried through every lower degree.
    pub min_degree: usize,
    pub max_degree: usize,
    /// Whether to measure `dim [A, A][d]` for each reported degree.
    pub measure_c: bool,
    /// Compare measured `c_d` with the series formula; needs two generators
    /// and one relation.
    pub series_check: bool,
}

const CHUNK: usize = 256;

/// Ranks of `ψ` on `q` for the requested degrees.
pub fn psi_ranks<F: Field>(q: &GradedQuotient<F>, opts: &PsiOptions) -> Result<Vec<PsiRow>> {
    psi_ranks_with(q, opts, |_| {})
}

/// [`psi_ranks`] with a callback invoked after each reported degree.
pub fn psi_ranks_with<F: Field>(q: &GradedQuotient<F>, opts: &PsiOptions, mut progress: impl FnMut(&PsiRow)) -> Result<Vec<PsiRow>> {
    let f = q.field().clone();
    let n = q.ngens();
    if opts.max_degree > q.max_degree() {
        return Err(Error::Truncation { degree: opts.max_degree, max: q.max_degree() });
    }
    if opts.min_degree < 2 || opts.min_degree > opts.max_degree {
        return Err(Error::Unsupported(format!("degree range {}..={}", opts.min_degree, opts.max_degree)));
    }
    let series_c = if opts.series_check && opts.measure_c {
        let degs = q.presentation().degrees();
        if n != 2 || degs.len() != 1 {
            return Err(Error::Unsupported("the series route needs two generators and one relation".into()));
        }
        Some(series::c_series(degs[0], opts.max_degree)?)
    } else {
        None
    };

    // image in degree 1: the generators themselves
    let d1 = q.dim(1);
    let mut image: Vec<F::Elem> = vec![f.zero(); d1 * d1];
    for i in 0..d1 {
        image[i * d1 + i] = f.one();
    }
    let mut out = Vec::new();
    let mut maps = q.left_maps();
    // skip A[0] -> A[1]
    maps.advance();
    while maps.degree() < opts.max_degree {
        let k = maps.degree();
        let d = k + 1;
        let (din, dout) = (q.dim(k), q.dim(d));
        let left = maps.advance().expect("degree below the truncation");
        let report = d >= opts.min_degree;

        let c = if report && opts.measure_c {
            let mut ech = Echelon::new(f.clone(), dout);
            for (x, lx) in left.iter().enumerate() {
                for start in (0..din).step_by(CHUNK) {
                    let end = (start + CHUNK).min(din);
                    let mut rows = lx[start * dout..end * dout].to_vec();
                    let right = q.right_map_rows(k, x, start, end);
                    for (a, b) in rows.iter_mut().zip(&right) {
                        *a = f.sub(a, b);
                    }
                    ech.push_rows(&rows)?;
                }
            }
            Some(ech.rank())
        } else {
            None
        };

        let r = if din == 0 { 0 } else { image.len() / din };
        let mut ech = Echelon::new(f.clone(), dout);
        for (x, lx) in left.iter().enumerate() {
            for start in (0..r).step_by(CHUNK) {
                let end = (start + CHUNK).min(r);
                let chunk = &image[start * din..end * din];
                let mut rows = apply_map(&f, chunk, din, lx, dout);
                let right = q.apply_right(k, x, chunk);
                for (a, b) in rows.iter_mut().zip(&right) {
                    *a = f.sub(a, b);
                }
                ech.push_rows(&rows)?;
            }
        }
        drop(core::mem::take(&mut image));
        let rank = ech.rank();
        if d < opts.max_degree {
            image = ech.into_rows();
        }

        if report {
            if let (Some(sc), Some(c)) = (&series_c, c) {
                if BigInt::from(c) != sc[d] {
                    return Err(Error::CrossCheck(format!("degree {d}: measured dim [A,A] = {c}, series gives {}", sc[d])));
                }
            }
            let row = PsiRow { degree: d, a: series::witt(n as u64, d), c, rank, coker: c.map(|c| c - rank) };
            progress(&row);
            out.push(row);
        }
    }
    Ok(out)
}

/// Rank of `ψ` in degree `d` from the expanded Lyndon basis reduced to
/// normal form; quadratic in the expansion size, so for small `d`.
pub fn psi_rank_lyndon<F: Field>(q: &GradedQuotient<F>, d: usize) -> Result<usize> {
    let f = q.field().clone();
    let mut ech = Echelon::new(f.clone(), q.dim(d));
    for el in lyndon_basis(q.ngens(), d) {
        let p = expand_bracket(&f, q.ngens(), &el);
        if let Some(v) = q.coordinates(&p)?.remove(&d) {
            ech.push(&v)?;
        }
    }
    Ok(ech.rank())
}

/// Per-degree measurements across several `(seed, prime)` runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableRow {
    pub degree: usize,
    pub a: BigInt,
    pub c: Option<usize>,
    pub rank: usize,
    pub coker: Option<usize>,
    /// Whether every run agreed on `c` and `rank`.
    pub stable: bool,
    /// `(seed, prime, rank)` for every run.
    pub runs: Vec<(u64, u64, usize)>,
}

/// Merges runs labelled by `(seed, prime)`; rows are reported from the
/// first run and flagged unless all agree.
pub fn merge_runs(runs: &[((u64, u64), Vec<PsiRow>)]) -> Vec<StableRow> {
    let Some((_, first)) = runs.first() else {
        return Vec::new();
    };
    let mut by_degree: BTreeMap<usize, StableRow> = BTreeMap::new();
    for row in first {
        by_degree.insert(
            row.degree,
            StableRow { degree: row.degree, a: row.a.clone(), c: row.c, rank: row.rank, coker: row.coker, stable: true, runs: Vec::new() },
        );
    }
    for ((seed, prime), rows) in runs {
        for row in rows {
            if let Some(s) = by_degree.get_mut(&row.degree) {
                s.stable &= s.rank == row.rank && s.c == row.c;
                s.runs.push((*seed, *prime, row.rank));
            }
        }
    }
    for s in by_degree.values_mut() {
        s.stable &= s.runs.len() == runs.len();
    }
    by_degree.into_values().collect()
}

/// Outcome of the two-consecutive-degrees criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoConsecutive {
    /// The hypotheses fail; the reason is attached.
    NotApplicable(String),
    /// `ψ` is onto in degrees `m - 1` and `m`; `confirmed` lists every
    /// measured degree `ℓ ≥ m - 1` and whether `ψ` is onto there, which
    /// gives `[A,A][ℓ] = L_ℓ[ℓ]` and `B_s[ℓ] = 0` for `2 ≤ s < ℓ`.
    Applies { m: usize, confirmed: Vec<(usize, bool)> },
}

/// Checks the two-consecutive-surjective-degrees criterion on measured rows.
/// `q_top` is a degree from which `B_2` vanishes.
pub fn twocon_check(rows: &[PsiRow], q_top: usize, m: usize) -> TwoConsecutive {
    if q_top < 3 || m < q_top + 1 {
        return TwoConsecutive::NotApplicable(format!("need q ≥ 3 and m ≥ q + 1, got q = {q_top}, m = {m}"));
    }
    let onto = |d: usize| rows.iter().find(|r| r.degree == d).and_then(|r| r.coker).map(|c| c == 0);
    for d in [m - 1, m] {
        match onto(d) {
            None => return TwoConsecutive::NotApplicable(format!("degree {d} was not measured")),
            Some(false) => return TwoConsecutive::NotApplicable(format!("ψ is not onto in degree {d}")),
            Some(true) => {}
        }
    }
    let confirmed = rows.iter().filter(|r| r.degree >= m - 1).filter_map(|r| r.coker.map(|c| (r.degree, c == 0))).collect();
    TwoConsecutive::Applies { m, confirmed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Fp, Rationals};
    use crate::presented::Presentation;
    use alloc::string::ToString;

    #[test]
    fn lyndon_small() {
        let words: Vec<String> = lyndon_basis(2, 3).iter().map(|e| e.to_string()).collect();
        assert_eq!(words, vec!["[x,[x,y]]", "[[x,y],y]"]);
        assert_eq!(lyndon_basis(2, 2)[0].to_string(), "[x,y]");
        assert_eq!(lyndon_words(2, 1).len(), 2);
        for d in 1..=12 {
            assert_eq!(BigInt::from(lyndon_words(2, d).len()), series::witt(2, d));
            assert_eq!(BigInt::from(lyndon_words(3, d.min(8)).len()), series::witt(3, d.min(8)));
        }
    }

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&Word::from_letters(&[0, 0, 1])));
        assert!(!is_lyndon(&Word::from_letters(&[0, 1, 0])));
        assert!(!is_lyndon(&Word::from_letters(&[0, 1, 0, 1])));
        assert!(LyndonElement::new(Word::from_letters(&[1, 0])).is_err());
    }

    #[test]
    fn expansions() {
        let el = &lyndon_basis(2, 3)[0];
        let p = expand_bracket(&Rationals, 2, el);
        assert_eq!(p, FreePolynomial::parse(Rationals, 2, "xxy - 2*xyx + yxx").unwrap());
    }

    #[test]
    fn free_algebra_is_injective() {
        let f = Fp::new(FieldSpec::DEFAULT_PRIME).unwrap();
        let q = GradedQuotient::build(Presentation::free(f, 2), 8).unwrap();
        let opts = PsiOptions { min_degree: 2, max_degree: 8, measure_c: true, series_check: false };
        for row in psi_ranks(&q, &opts).unwrap() {
            assert_eq!(BigInt::from(row.rank), row.a);
            assert_eq!(row.c, Some((1usize << row.degree) - series::necklace(2, row.degree).try_into().unwrap_or(0usize)));
        }
    }

    #[test]
    fn routes_agree_on_generic_cubic() {
        let f = Fp::new(FieldSpec::DEFAULT_PRIME).unwrap();
        let (pres, _) = Presentation::random(f, 2, &[3], 7).unwrap();
        let q = GradedQuotient::build(pres, 10).unwrap();
        let opts = PsiOptions { min_degree: 2, max_degree: 10, measure_c: true, series_check: true };
        let rows = psi_ranks(&q, &opts).unwrap();
        for row in &rows {
            assert_eq!(row.rank, psi_rank_lyndon(&q, row.degree).unwrap(), "degree {}", row.degree);
            assert!(row.rank <= row.c.unwrap());
        }
    }

    #[test]
    fn two_consecutive() {
        let row = |degree, c, rank| PsiRow { degree, a: BigInt::from(0), c: Some(c), rank, coker: Some(c - rank) };
        let rows = vec![row(6, 5, 5), row(7, 4, 4), row(8, 3, 3)];
        assert_eq!(twocon_check(&rows, 5, 7), TwoConsecutive::Applies { m: 7, confirmed: vec![(6, true), (7, true), (8, true)] });
        assert!(matches!(twocon_check(&[row(6, 5, 4), row(7, 4, 4)], 5, 7), TwoConsecutive::NotApplicable(_)));
        assert!(matches!(twocon_check(&rows, 5, 5), TwoConsecutive::NotApplicable(_)));
    }
}
