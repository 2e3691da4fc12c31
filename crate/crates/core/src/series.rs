//! Truncated integer power series, infinite-product exponents, necklace and
//! Witt counts, and the Hilbert series of one-relator quotients of `A_2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 64;

/// `Σ_{i ≤ D} c_i t^i`, exact through degree `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    /// Pads or truncates `coeffs` to degree `max_degree`.
    pub fn new(mut coeffs: Vec<BigInt>, max_degree: usize) -> Self {
        coeffs.resize(max_degree + 1, BigInt::zero());
        TruncSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], max_degree: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), max_degree)
    }

    pub fn zero(max_degree: usize) -> Self {
        Self::new(Vec::new(), max_degree)
    }

    pub fn one(max_degree: usize) -> Self {
        Self::monomial(BigInt::one(), 0, max_degree)
    }

    pub fn monomial(c: BigInt, k: usize, max_degree: usize) -> Self {
        let mut s = Self::zero(max_degree);
        if k <= max_degree {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::new(self.coeffs.clone(), max_degree)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect()
    }

    /// Multiplicative inverse; the constant term must be `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::Series(format!("constant term {c0} is not a unit")));
        }
        let d = self.max_degree();
        let mut out = vec![BigInt::zero(); d + 1];
        out[0] = c0.clone();
        for k in 1..=d {
            let mut s = BigInt::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -(s * c0);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Integer power, negative exponents through `inverse`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.max_degree());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(out)
    }

    /// `(1 - t^k)^e` through degree `max_degree`, by the binomial series.
    pub fn one_minus_power(k: usize, e: &BigInt, max_degree: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(max_degree);
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while j * k <= max_degree {
            out.coeffs[j * k] = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            binom = binom * (e - BigInt::from(j)) / BigInt::from(j + 1);
            j += 1;
        }
        out
    }

    /// The unique `e_1, …, e_D` with `∏ (1 - t^i)^{e_i} ≡ self`.
    pub fn extract_exponents(&self) -> Result<Vec<BigInt>> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Series(format!("constant term {} is not 1", self.coeffs[0])));
        }
        let d = self.max_degree();
        let mut rest = self.clone();
        let mut out = Vec::with_capacity(d);
        for k in 1..=d {
            let e = -rest.coeffs[k].clone();
            let factor = Self::one_minus_power(k, &-e.clone(), d);
            rest = &rest * &factor;
            if !rest.coeffs[k].is_zero() {
                return Err(Error::Series(format!("exponent at degree {k} is not an integer")));
            }
            out.push(e);
        }
        Ok(out)
    }

    /// `∏_{i ≥ 1} (1 - t^i)^{e_i}` through degree `max_degree`.
    pub fn from_exponents(exponents: &[BigInt], max_degree: usize) -> Self {
        let mut out = Self::one(max_degree);
        for (i, e) in exponents.iter().enumerate() {
            if !e.is_zero() && i < max_degree {
                out = &out * &Self::one_minus_power(i + 1, e, max_degree);
            }
        }
        out
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;

    fn mul(self, other: &TruncSeries) -> TruncSeries {
        let d = self.max_degree().min(other.max_degree());
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;

    fn add(self, other: &TruncSeries) -> TruncSeries {
        let d = self.max_degree().min(other.max_degree());
        TruncSeries { coeffs: (0..=d).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;

    fn sub(self, other: &TruncSeries) -> TruncSeries {
        let d = self.max_degree().min(other.max_degree());
        TruncSeries { coeffs: (0..=d).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;

    fn neg(self) -> TruncSeries {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Möbius function on `0..=n` (index 0 unused).
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    mu[0] = 0;
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for m in (p..=n).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        let sq = p.saturating_mul(p);
        for m in (sq..=n).step_by(sq.max(1)) {
            mu[m] = 0;
        }
    }
    mu
}

/// Euler's totient on `0..=n`.
pub fn totient_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

fn divisor_sum(n: u64, d: usize, weight: impl Fn(usize) -> BigInt) -> BigInt {
    assert!(d >= 1);
    let base = BigInt::from(n);
    let mut s = BigInt::zero();
    for e in 1..=d {
        if d % e == 0 {
            let w = weight(e);
            if !w.is_zero() {
                s += w * num_traits::pow(base.clone(), d / e);
            }
        }
    }
    let (q, r) = s.div_rem(&BigInt::from(d));
    debug_assert!(r.is_zero());
    q
}

/// Necklaces of length `d` over `n` letters, `(1/d) Σ_{e|d} φ(e) n^{d/e}`.
pub fn necklace(n: u64, d: usize) -> BigInt {
    let phi = totient_sieve(d);
    divisor_sum(n, d, |e| BigInt::from(phi[e]))
}

/// Dimension of the degree-`d` part of the free Lie algebra on `n` generators,
/// `(1/d) Σ_{e|d} μ(e) n^{d/e}`.
pub fn witt(n: u64, d: usize) -> BigInt {
    let mu = mobius_sieve(d);
    divisor_sum(n, d, |e| BigInt::from(mu[e]))
}

/// `h_A = 1 / (1 - n t + Σ_j t^{d_j})`.
pub fn quotient_hilbert(n: u64, degrees: &[usize], max_degree: usize) -> Result<TruncSeries> {
    let mut denom = TruncSeries::one(max_degree);
    denom = &denom - &TruncSeries::monomial(BigInt::from(n), 1, max_degree);
    for &d in degrees {
        denom = &denom + &TruncSeries::monomial(BigInt::one(), d, max_degree);
    }
    denom.inverse()
}

/// `b_1, …, b_D` with `∏ (1 - t^i)^{b_i} = ∏_s (1 - 2 t^s + t^{d s})`: the
/// Hilbert series of `A/[A,A]` for one generic relation of degree `d` in two
/// generators is `1 + Σ b_i t^i`.
pub fn b_series(d: usize, max_degree: usize) -> Result<Vec<BigInt>> {
    let mut prod = TruncSeries::one(max_degree);
    for s in 1..=max_degree {
        let mut factor = TruncSeries::one(max_degree);
        factor = &factor - &TruncSeries::monomial(BigInt::from(2), s, max_degree);
        factor = &factor + &TruncSeries::monomial(BigInt::one(), d * s, max_degree);
        prod = &prod * &factor;
    }
    prod.extract_exponents()
}

/// `c_0, …, c_D`, the Hilbert series of `[A,A]` for one generic relation of
/// degree `d` in two generators.
pub fn c_series(d: usize, max_degree: usize) -> Result<Vec<BigInt>> {
    let h = quotient_hilbert(2, &[d], max_degree)?;
    let b = b_series(d, max_degree)?;
    let mut out = vec![BigInt::zero(); max_degree + 1];
    for i in 1..=max_degree {
        out[i] = h.coeff(i) - &b[i - 1];
    }
    Ok(out)
}

/// Outcome of the positivity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    /// Smallest exponent whose series is positive through the truncation.
    pub threshold: Option<usize>,
    /// For each smaller exponent, the first degree with a non-positive coefficient.
    pub witnesses: Vec<(usize, usize)>,
}

/// First degree where `1 / (1 - 2t + t^d + t^k)` has a non-positive coefficient.
pub fn first_nonpositive(d: usize, k: usize, max_degree: usize) -> Result<Option<usize>> {
    let mut denom = TruncSeries::from_i64s(&[1, -2], max_degree);
    denom = &denom + &TruncSeries::monomial(BigInt::one(), d, max_degree);
    denom = &denom + &TruncSeries::monomial(BigInt::one(), k, max_degree);
    let inv = denom.inverse()?;
    Ok(inv.coeffs().iter().position(|c| !c.is_positive()))
}

/// Smallest `k ≥ 1` for which `1 / (1 - 2t + t^d + t^k)` has positive
/// coefficients through `max_degree`.
pub fn positivity_threshold(d: usize, max_degree: usize) -> Result<Positivity> {
    let mut witnesses = Vec::new();
    for k in 1..=max_degree + 1 {
        match first_nonpositive(d, k, max_degree)? {
            Some(deg) => witnesses.push((k, deg)),
            None => return Ok(Positivity { threshold: Some(k), witnesses }),
        }
    }
    Ok(Positivity { threshold: None, witnesses })
}

/// Which filtration quotient a dimension row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    B,
    N,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationality {
    /// Coefficients of `(1 - t)^n Σ dims[d] t^d` through the input length.
    pub numerator: Vec<BigInt>,
    /// Degree of the numerator, `None` when it vanishes.
    pub degree: Option<usize>,
    pub nonnegative: bool,
    /// Degree bound for `m ≥ 3`.
    pub bound: Option<usize>,
    pub within_bound: Option<bool>,
}

impl Rationality {
    pub fn holds(&self) -> bool {
        self.nonnegative && self.within_bound != Some(false)
    }
}

/// Multiplies a dimension row of `B_m` or `N_m` of `A_n` by `(1 - t)^n` and
/// compares the numerator with `2m - 3 + 2⌊(n-2)/2⌋` (one more for `N_m`).
pub fn rationality_check(dims: &[u64], n: usize, m: usize, which: Quotient) -> Rationality {
    if dims.is_empty() {
        return Rationality { numerator: Vec::new(), degree: None, nonnegative: true, bound: None, within_bound: None };
    }
    let d = dims.len() - 1;
    let series = TruncSeries::new(dims.iter().map(|&x| BigInt::from(x)).collect(), d);
    let factor = TruncSeries::from_i64s(&[1, -1], d).pow(n as i64).expect("nonnegative power");
    let numerator = (&series * &factor).coeffs;
    let degree = numerator.iter().rposition(|c| !c.is_zero());
    let nonnegative = numerator.iter().all(|c| !c.is_negative());
    let bound = (m >= 3).then(|| {
        let base = 2 * m - 3 + 2 * ((n.max(2) - 2) / 2);
        if which == Quotient::N {
            base + 1
        } else {
            base
        }
    });
    let within_bound = bound.map(|b| degree.is_none_or(|deg| deg <= b));
    Rationality { numerator, degree, nonnegative, bound, within_bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.to_i64s().unwrap()
    }

    #[test]
    fn inverses() {
        let s = TruncSeries::from_i64s(&[1, -2], 10).inverse().unwrap();
        assert_eq!(ints(&s), (0..=10).map(|k| 1i64 << k).collect::<Vec<_>>());
        let s = TruncSeries::from_i64s(&[1, -2, 0, 1], 8).inverse().unwrap();
        assert_eq!(ints(&s), vec![1, 2, 4, 7, 12, 20, 33, 54, 88]);
        assert!(TruncSeries::from_i64s(&[2, 1], 4).inverse().is_err());
    }

    #[test]
    fn b2_of_free_a2() {
        let inv = TruncSeries::from_i64s(&[1, -1], 8).pow(-2).unwrap();
        let s = &inv * &TruncSeries::monomial(BigInt::one(), 2, 8);
        assert_eq!(ints(&s), vec![0, 0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn exponents_of_free_algebra() {
        let e = TruncSeries::from_i64s(&[1, -2], 8).extract_exponents().unwrap();
        let e: Vec<i64> = e.iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(e, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    }

    #[test]
    fn sieves() {
        assert_eq!(mobius_sieve(12), vec![0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        assert_eq!(totient_sieve(10), vec![0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
    }

    #[test]
    fn counts() {
        assert_eq!(necklace(2, 2), BigInt::from(3));
        assert_eq!(necklace(2, 6), BigInt::from(14));
        assert_eq!(witt(2, 16), BigInt::from(4080));
        assert_eq!(witt(3, 4), BigInt::from(18));
    }

    #[test]
    fn commutator_series() {
        let c = c_series(3, 19).unwrap();
        assert_eq!(c[2], BigInt::one());
        assert_eq!(c[16], BigInt::from(4036));
    }

    #[test]
    fn positivity() {
        let p = positivity_threshold(3, 64).unwrap();
        assert_eq!(p.threshold, Some(8));
        assert!(p.witnesses.iter().any(|&(k, _)| k == 7));
    }

    #[test]
    fn rationality() {
        let dims: Vec<u64> = (0..=10).map(|d: u64| d.saturating_sub(1)).collect();
        let r = rationality_check(&dims, 2, 2, Quotient::B);
        assert_eq!(r.degree, Some(2));
        assert_eq!(r.numerator[2], BigInt::one());
        assert!(r.holds());
        let r = rationality_check(&[0; 6], 2, 3, Quotient::B);
        assert_eq!(r.degree, None);
        assert!(r.holds());
    }
}
