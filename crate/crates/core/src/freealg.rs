//! Words and noncommutative polynomials in the free algebra `A_n`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;

/// A monomial: a finite sequence of generator indices.
///
/// Words compare first by length and then lexicographically, which for a
/// fixed length is the order of [`DegreeIndex`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: usize) -> Self {
        Word(vec![x as u8])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&x| x as u8).collect())
    }

    pub fn from_bytes(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, x: usize) {
        self.0.push(x as u8);
    }

    pub fn pop(&mut self) -> Option<usize> {
        self.0.pop().map(|x| x as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&x| x as usize)
    }

    /// The word without its last letter.
    pub fn prefix(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn multidegree(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for &x in &self.0 {
            m[x as usize] += 1;
        }
        m
    }

    /// Letters rendered with the generator names used in relation files.
    pub fn render(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for &x in &self.0 {
            if n <= 3 {
                s.push(['x', 'y', 'z'][x as usize]);
            } else {
                s.push('x');
                s.push_str(&(x as usize + 1).to_string());
            }
        }
        s
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.iter().map(|&x| x as usize + 1).max().unwrap_or(0).max(3);
        write!(f, "{}", self.render(n))
    }
}

/// Bijection between words of length `d` over `n` letters and `0..n^d`
/// (base-`n` value, leftmost letter most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeIndex {
    pub n: usize,
    pub d: usize,
}

impl DegreeIndex {
    pub fn new(n: usize, d: usize) -> Self {
        DegreeIndex { n, d }
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, w: &Word) -> usize {
        debug_assert_eq!(w.degree(), self.d);
        w.0.iter().fold(0usize, |acc, &x| acc * self.n + x as usize)
    }

    pub fn word(&self, mut idx: usize) -> Word {
        let mut letters = vec![0u8; self.d];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % self.n) as u8;
            idx /= self.n;
        }
        Word(letters)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |i| self.word(i))
    }
}

/// An element of `A_n = F<x_1, ..., x_n>`: a finite map from words to
/// nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct FreePolynomial<F: Field> {
    n: usize,
    field: F,
    terms: BTreeMap<Word, F::Elem>,
}

impl<F: Field> FreePolynomial<F> {
    pub fn zero(field: F, n: usize) -> Self {
        FreePolynomial { n, field, terms: BTreeMap::new() }
    }

    pub fn one(field: F, n: usize) -> Self {
        Self::monomial(field.clone(), n, Word::empty(), field.one())
    }

    pub fn generator(field: F, n: usize, x: usize) -> Self {
        assert!(x < n, "generator {x} out of range for n = {n}");
        Self::monomial(field.clone(), n, Word::letter(x), field.one())
    }

    pub fn monomial(field: F, n: usize, w: Word, c: F::Elem) -> Self {
        let mut p = Self::zero(field, n);
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, F::Elem)>>(field: F, n: usize, terms: I) -> Self {
        let mut p = Self::zero(field, n);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Homogeneous polynomial from a coordinate vector in [`DegreeIndex`] order.
    pub fn from_dense(field: F, n: usize, d: usize, v: &[F::Elem]) -> Self {
        let idx = DegreeIndex::new(n, d);
        let mut p = Self::zero(field, n);
        for (i, c) in v.iter().enumerate() {
            p.add_term(idx.word(i), c.clone());
        }
        p
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> F::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|w| w.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self::from_terms(
            self.field.clone(),
            self.n,
            self.terms.iter().filter(|(w, _)| w.degree() == d).map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Coordinates of the degree-`d` component in [`DegreeIndex`] order.
    pub fn to_dense(&self, d: usize) -> Vec<F::Elem> {
        let idx = DegreeIndex::new(self.n, d);
        let mut v = vec![self.field.zero(); idx.len()];
        for (w, c) in &self.terms {
            if w.degree() == d {
                v[idx.index(w)] = c.clone();
            }
        }
        v
    }

    pub fn add_term(&mut self, w: Word, c: F::Elem) {
        debug_assert!(w.0.iter().all(|&x| (x as usize) < self.n));
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch("generator counts"));
        }
        if self.field != other.field {
            return Err(Error::Mismatch("coefficient fields"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::from_terms(
            self.field.clone(),
            self.n,
            self.terms.iter().map(|(w, a)| (w.clone(), self.field.mul(a, c))),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Concatenation product, extended bilinearly.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// `[p, q] = pq - qp`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// `a * b = (ab + ba) / 2`
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        let half = self.field.inv(&self.field.from_i64(2)).ok_or(Error::UnsupportedCharacteristic {
            characteristic: self.field.characteristic(),
            needs: 2,
        })?;
        Ok(self.multiply(other)?.add(&other.multiply(self)?)?.scale(&half))
    }

    /// Applies the algebra map sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[FreePolynomial<F>]) -> Result<FreePolynomial<F>> {
        if images.len() != self.n {
            return Err(Error::Mismatch("substitution arity"));
        }
        let target_n = images.first().map(|p| p.n).unwrap_or(self.n);
        let mut out = FreePolynomial::zero(self.field.clone(), target_n);
        for (w, c) in &self.terms {
            let mut term = FreePolynomial::one(self.field.clone(), target_n);
            for &x in &w.0 {
                term = term.multiply(&images[x as usize])?;
            }
            out = out.add(&term.scale(c))?;
        }
        Ok(out)
    }

    /// Parses `3*xxy - 2*yxy + xyy` style input. Generators are `x1..xn`;
    /// for `n <= 3` the letters `x, y, z` are accepted as aliases.
    /// Coefficients are integers or fractions `a/b`.
    pub fn parse(field: F, n: usize, text: &str) -> Result<Self> {
        Parser { s: text.as_bytes(), pos: 0, n }.polynomial(field)
    }
}

impl<F: Field> fmt::Debug for FreePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for FreePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = self.field.is_negative(c);
            let mag = if neg { self.field.neg(c) } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", self.field.format(&mag))?;
            } else if self.field.is_one(&mag) {
                write!(f, "{}", w.render(self.n))?;
            } else {
                write!(f, "{}*{}", self.field.format(&mag), w.render(self.n))?;
            }
        }
        Ok(())
    }
}

/// Right-nested iterated commutator `[a_1, [a_2, ..., [a_{m-1}, a_m]]]`.
pub fn left_normed_bracket<F: Field>(args: &[FreePolynomial<F>]) -> Result<FreePolynomial<F>> {
    let (last, rest) = args.split_last().ok_or(Error::EmptyBracket)?;
    let mut acc = last.clone();
    for a in rest.iter().rev() {
        acc = a.commutator(&acc)?;
    }
    Ok(acc)
}

/// Average of the six ordered products of `a, b, c`.
pub fn symmetrize3<F: Field>(a: &FreePolynomial<F>, b: &FreePolynomial<F>, c: &FreePolynomial<F>) -> Result<FreePolynomial<F>> {
    let f = a.field.clone();
    let sixth = f.inv(&f.from_i64(6)).ok_or(Error::UnsupportedCharacteristic {
        characteristic: f.characteristic(),
        needs: 6,
    })?;
    let mut sum = FreePolynomial::zero(f.clone(), a.n);
    for (p, q, r) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
        sum = sum.add(&p.multiply(q)?.multiply(r)?)?;
    }
    Ok(sum.scale(&sixth))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn polynomial<F: Field>(&mut self, field: F) -> Result<FreePolynomial<F>> {
        let mut p = FreePolynomial::zero(field.clone(), self.n);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (mut c, w) = self.term(&field)?;
            if sign < 0 {
                c = field.neg(&c);
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    fn term<F: Field>(&mut self, field: &F) -> Result<(F::Elem, Word)> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coefficient(field)?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    let w = self.word()?;
                    Ok((c, w))
                } else {
                    Ok((c, Word::empty()))
                }
            }
            Some(b'x' | b'y' | b'z') => Ok((field.one(), self.word()?)),
            _ => self.err("expected a coefficient or a word"),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("digits parse"))
    }

    fn coefficient<F: Field>(&mut self, field: &F) -> Result<F::Elem> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            match field.from_ratio(&num, &den) {
                Some(c) => Ok(c),
                None => self.err("denominator is zero in this field"),
            }
        } else {
            Ok(field.from_bigint(&num))
        }
    }

    fn word(&mut self) -> Result<Word> {
        self.skip_ws();
        let mut w = Word::empty();
        while self.pos < self.s.len() {
            let b = self.s[self.pos];
            let x = match b {
                b'x' => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if start == self.pos {
                        0
                    } else {
                        let digits = core::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                        let i: usize = match digits.parse() {
                            Ok(i) => i,
                            Err(_) => return self.err("generator index too large"),
                        };
                        if i == 0 || i > self.n {
                            return self.err("generator index out of range");
                        }
                        w.push(i - 1);
                        continue;
                    }
                }
                b'y' => {
                    self.pos += 1;
                    1
                }
                b'z' => {
                    self.pos += 1;
                    2
                }
                _ => break,
            };
            if self.n > 3 || x >= self.n {
                self.pos -= 1;
                return self.err("letter alias not available for this generator count");
            }
            w.push(x);
        }
        if w.is_empty() {
            return self.err("expected a word");
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rationals};

    fn q(s: &str) -> FreePolynomial<Rationals> {
        FreePolynomial::parse(Rationals, 2, s).unwrap()
    }

    #[test]
    fn degree_index_round_trip() {
        let idx = DegreeIndex::new(3, 4);
        for i in 0..idx.len() {
            assert_eq!(idx.index(&idx.word(i)), i);
        }
        assert_eq!(idx.word(5).letters(), &[0, 0, 1, 2]);
    }

    #[test]
    fn products_and_units() {
        let x = q("x");
        let y = q("y");
        assert_eq!(x.multiply(&y).unwrap(), q("xy"));
        let one = FreePolynomial::one(Rationals, 2);
        assert_eq!(one.multiply(&q("3*xy - yx")).unwrap(), q("3*xy - yx"));
        let prod = q("x + y").multiply(&q("x - y")).unwrap();
        assert_eq!(prod, q("xx - xy + yx - yy"));
    }

    #[test]
    fn commutators() {
        let x = q("x");
        let y = q("y");
        assert!(x.commutator(&x).unwrap().is_zero());
        assert_eq!(x.commutator(&y).unwrap(), q("xy - yx"));
        let xxy = x.commutator(&x.commutator(&y).unwrap()).unwrap();
        assert_eq!(xxy, q("xxy - 2*xyx + yxx"));
    }

    #[test]
    fn brackets() {
        let (x, y) = (q("x"), q("y"));
        assert!(matches!(left_normed_bracket::<Rationals>(&[]), Err(Error::EmptyBracket)));
        assert_eq!(left_normed_bracket(&[x.clone()]).unwrap(), x);
        assert_eq!(left_normed_bracket(&[x.clone(), y.clone()]).unwrap(), q("xy - yx"));
        let f3 = FreePolynomial::parse(Rationals, 3, "x").unwrap();
        let g3 = FreePolynomial::parse(Rationals, 3, "y").unwrap();
        let h3 = FreePolynomial::parse(Rationals, 3, "z").unwrap();
        let nested = f3.commutator(&g3.commutator(&h3).unwrap()).unwrap();
        assert_eq!(left_normed_bracket(&[f3, g3, h3]).unwrap(), nested);
    }

    #[test]
    fn symmetrization() {
        let x = q("x");
        assert_eq!(symmetrize3(&x, &x, &x).unwrap(), q("xxx"));
        // six-term expansion of S(x, y, 1): orders xy1, x1y, yx1, y1x, 1xy, 1yx
        let one = FreePolynomial::one(Rationals, 2);
        assert_eq!(symmetrize3(&x, &q("y"), &one).unwrap(), q("1/2*xy + 1/2*yx"));
        let f3 = Fp::new(3).unwrap();
        let x3 = FreePolynomial::generator(f3, 2, 0);
        assert!(matches!(
            symmetrize3(&x3, &x3, &x3),
            Err(Error::UnsupportedCharacteristic { characteristic: 3, .. })
        ));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = FreePolynomial::generator(Rationals, 2, 0);
        let b = FreePolynomial::generator(Rationals, 3, 0);
        assert!(matches!(a.multiply(&b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn parse_and_print() {
        let p = FreePolynomial::parse(Rationals, 2, "3*xxy - 2*yxy + xyy").unwrap();
        assert_eq!(p.to_string(), "3*xxy + xyy - 2*yxy");
        let p4 = FreePolynomial::parse(Rationals, 4, "x1x4 - 1/2*x2x3 + 5").unwrap();
        assert_eq!(p4.to_string(), "5 + x1x4 - 1/2*x2x3");
        assert!(FreePolynomial::parse(Rationals, 4, "xy").is_err());
        assert!(FreePolynomial::parse(Rationals, 2, "x5").is_err());
        assert!(FreePolynomial::parse(Rationals, 2, "xz").is_err());
        let m = FreePolynomial::parse(Fp::new(7).unwrap(), 2, "-1*xy + 15*yx").unwrap();
        assert_eq!(m.to_string(), "6*xy + yx");
    }

    #[test]
    fn dense_round_trip() {
        let p = q("xxy - 2*xyx + yxx");
        let v = p.to_dense(3);
        assert_eq!(FreePolynomial::from_dense(Rationals, 2, 3, &v), p);
    }
}
