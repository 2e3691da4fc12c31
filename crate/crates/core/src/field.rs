//! Coefficient fields: exact rationals and prime fields `F_p`.
//!
//! Everything above this module is generic over [`Field`]. Elements are plain
//! values owned by the caller; the field value itself carries the runtime
//! parameters (the modulus for `F_p`).

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

use crate::error::FieldError;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

impl FieldSpec {
    /// Largest prime below `2^30`, the default modulus for rank computations.
    pub const DEFAULT_PRIME: u32 = 1_073_741_789;
    /// Second default modulus used for cross-checking.
    pub const SECOND_PRIME: u32 = 1_073_741_783;

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }

    /// Checks the standing hypothesis that 6 is invertible, unless the
    /// caller explicitly asks for a small characteristic.
    pub fn validate(&self, allow_small_characteristic: bool) -> Result<(), FieldError> {
        match *self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => {
                if !is_prime(p as u64) {
                    return Err(FieldError::NotPrime(p as u64));
                }
                if p as u64 >= Fp::MAX_MODULUS {
                    return Err(FieldError::ModulusTooLarge(p as u64));
                }
                if p <= 3 && !allow_small_characteristic {
                    return Err(FieldError::SmallCharacteristic(p as u64));
                }
                Ok(())
            }
        }
    }
}

impl core::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "exact"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Deterministic primality test for 64-bit integers (Miller-Rabin with the
/// standard witness set).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A commutative field with the row kernels used by the echelon code.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Uniformly random element (for `Q`, a small integer).
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Textual form without sign handling: `-3/2`, `17`.
    fn format(&self, a: &Self::Elem) -> String;
    /// Whether the element prints with a leading minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        self.div(&self.from_bigint(num), &self.from_bigint(den))
    }

    /// `y += a * x`
    fn axpy(&self, y: &mut [Self::Elem], a: &Self::Elem, x: &[Self::Elem]) {
        if self.is_zero(a) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(a, xi));
            }
        }
    }

    fn scale(&self, y: &mut [Self::Elem], a: &Self::Elem) {
        for yi in y.iter_mut() {
            *yi = self.mul(yi, a);
        }
    }

    /// For row-major `targets` (t x width), `coeffs` (t x r) and `rows`
    /// (r x width): `targets -= coeffs * rows`.
    fn sub_product(
        &self,
        targets: &mut [Self::Elem],
        width: usize,
        coeffs: &[Self::Elem],
        rows: &[Self::Elem],
    ) {
        if width == 0 {
            return;
        }
        let nr = rows.len() / width;
        for (b, target) in targets.chunks_mut(width).enumerate() {
            for r in 0..nr {
                let c = &coeffs[b * nr + r];
                if !self.is_zero(c) {
                    self.axpy(target, &self.neg(c), &rows[r * width..(r + 1) * width]);
                }
            }
        }
    }
}

/// The prime field `Z/pZ` for `p < 2^30`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// Products of two reduced elements stay below `2^60`, which the lazy
    /// accumulation in [`Fp::sub_product`] relies on.
    pub const MAX_MODULUS: u64 = 1 << 30;

    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p as u64));
        }
        if p as u64 >= Self::MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p as u64));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut base = a as u64 % p;
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r as u32
    }

    #[inline]
    fn shoup(&self, a: u32) -> (u64, u64) {
        (a as u64, ((a as u64) << 32) / self.p as u64)
    }

    fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

// Number of pending products folded at once; 8 * 2^60 + 2^62 < 2^64.
const FOLD_EVERY: usize = 8;

/// `a * x mod p` for a fixed `a` with precomputed `a_shoup = floor(a 2^32 / p)`.
#[inline(always)]
fn mul_shoup(a: u64, a_shoup: u64, x: u32, p: u32) -> u32 {
    let q = (a_shoup * x as u64) >> 32;
    let r = (a * x as u64).wrapping_sub(q * p as u64) as u32;
    if r >= p {
        r - p
    } else {
        r
    }
}
const TILE_COLS: usize = 256;
const TILE_ROWS: usize = 16;

impl Field for Fp {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("reduced residue fits")
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        // rejection sampling keeps the distribution exactly uniform
        let p = self.p as u64;
        let zone = u64::MAX - (u64::MAX % p);
        loop {
            let v = rng.next_u64();
            if v < zone {
                return (v % p) as u32;
            }
        }
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }

    fn axpy(&self, y: &mut [u32], a: &u32, x: &[u32]) {
        if *a == 0 {
            return;
        }
        let p = self.p;
        let (a, a_shoup) = self.shoup(*a);
        for (yi, &xi) in y.iter_mut().zip(x) {
            let s = *yi + mul_shoup(a, a_shoup, xi, p);
            *yi = if s >= p { s - p } else { s };
        }
    }

    fn scale(&self, y: &mut [u32], a: &u32) {
        let p = self.p;
        let (a, a_shoup) = self.shoup(*a);
        for yi in y.iter_mut() {
            *yi = mul_shoup(a, a_shoup, *yi, p);
        }
    }

    fn sub_product(&self, targets: &mut [u32], width: usize, coeffs: &[u32], rows: &[u32]) {
        if width == 0 || targets.is_empty() || rows.is_empty() {
            return;
        }
        let nt = targets.len() / width;
        let nr = rows.len() / width;
        debug_assert_eq!(coeffs.len(), nt * nr);
        let p = self.p as u64;
        let fold = (1u64 << 32) % p;
        // negated coefficients so that everything is an addition
        let neg: alloc::vec::Vec<u32> = coeffs
            .iter()
            .map(|&c| if c == 0 { 0 } else { (p - c as u64) as u32 })
            .collect();
        let mut acc = alloc::vec![0u64; TILE_ROWS * TILE_COLS];
        for t0 in (0..nt).step_by(TILE_ROWS) {
            let t1 = (t0 + TILE_ROWS).min(nt);
            // skip blocks of targets with nothing to do
            if neg[t0 * nr..t1 * nr].iter().all(|&c| c == 0) {
                continue;
            }
            for j0 in (0..width).step_by(TILE_COLS) {
                let j1 = (j0 + TILE_COLS).min(width);
                let w = j1 - j0;
                for b in t0..t1 {
                    let a = &mut acc[(b - t0) * TILE_COLS..(b - t0) * TILE_COLS + w];
                    for (ai, &ti) in a.iter_mut().zip(&targets[b * width + j0..b * width + j1]) {
                        *ai = ti as u64;
                    }
                }
                // four source rows per pass, folded every second pass
                let mut pending = 0;
                let mut r = 0;
                while r < nr {
                    let k = (nr - r).min(4);
                    let mut src: [&[u32]; 4] = [&[]; 4];
                    for (q, s) in src.iter_mut().enumerate().take(k) {
                        *s = &rows[(r + q) * width + j0..(r + q) * width + j1];
                    }
                    let mut touched = false;
                    for b in t0..t1 {
                        let c = &neg[b * nr + r..b * nr + r + k];
                        if c.iter().all(|&x| x == 0) {
                            continue;
                        }
                        touched = true;
                        let a = &mut acc[(b - t0) * TILE_COLS..(b - t0) * TILE_COLS + w];
                        if k == 4 {
                            let (c0, c1, c2, c3) = (c[0] as u64, c[1] as u64, c[2] as u64, c[3] as u64);
                            let (s0, s1, s2, s3) = (&src[0][..w], &src[1][..w], &src[2][..w], &src[3][..w]);
                            for j in 0..w {
                                a[j] += c0 * s0[j] as u64 + c1 * s1[j] as u64 + c2 * s2[j] as u64 + c3 * s3[j] as u64;
                            }
                        } else {
                            for (q, &cq) in c.iter().enumerate() {
                                for (ai, &x) in a.iter_mut().zip(src[q]) {
                                    *ai += cq as u64 * x as u64;
                                }
                            }
                        }
                    }
                    r += k;
                    if touched {
                        pending += 1;
                        if pending == FOLD_EVERY / 4 {
                            for ai in acc[..(t1 - t0) * TILE_COLS].iter_mut() {
                                *ai = (*ai >> 32) * fold + (*ai & 0xffff_ffff);
                            }
                            pending = 0;
                        }
                    }
                }
                for b in t0..t1 {
                    let a = &acc[(b - t0) * TILE_COLS..(b - t0) * TILE_COLS + w];
                    for (ti, &ai) in targets[b * width + j0..b * width + j1].iter_mut().zip(a) {
                        *ti = (ai % p) as u32;
                    }
                }
            }
        }
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let v = (rng.next_u32() % 19) as i64 - 9;
        self.from_i64(v)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn default_primes_are_prime() {
        assert!(is_prime(FieldSpec::DEFAULT_PRIME as u64));
        assert!(is_prime(FieldSpec::SECOND_PRIME as u64));
        assert!(FieldSpec::DEFAULT_PRIME as u64 > (1 << 29));
        assert!(!is_prime(1_073_741_787));
        assert!(!is_prime(1));
        assert!(is_prime(2));
    }

    #[test]
    fn small_characteristic_needs_opt_in() {
        assert!(FieldSpec::Prime(3).validate(false).is_err());
        assert!(FieldSpec::Prime(3).validate(true).is_ok());
        assert!(FieldSpec::Prime(5).validate(false).is_ok());
        assert!(FieldSpec::Prime(9).validate(true).is_err());
    }

    #[test]
    fn fp_inverse_and_negatives() {
        let f = Fp::new(101).unwrap();
        for a in 1..101u32 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        assert_eq!(f.from_i64(-1), 100);
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)), Some(51));
    }

    #[test]
    fn lazy_kernel_matches_naive() {
        let f = Fp::new(FieldSpec::DEFAULT_PRIME).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        use rand::SeedableRng;
        let (nt, nr, w) = (21, 37, 300);
        let mut targets: Vec<u32> = (0..nt * w).map(|_| f.random(&mut rng)).collect();
        let coeffs: Vec<u32> = (0..nt * nr)
            .map(|i| if i % 5 == 0 { 0 } else { f.random(&mut rng) })
            .collect();
        let rows: Vec<u32> = (0..nr * w).map(|_| f.random(&mut rng)).collect();
        let mut naive = targets.clone();
        for b in 0..nt {
            for r in 0..nr {
                for j in 0..w {
                    let prod = f.mul(&coeffs[b * nr + r], &rows[r * w + j]);
                    naive[b * w + j] = f.sub(&naive[b * w + j], &prod);
                }
            }
        }
        f.sub_product(&mut targets, w, &coeffs, &rows);
        assert_eq!(targets, naive);
    }

    #[test]
    fn rationals_format() {
        let q = Rationals;
        let half = q.from_ratio(&BigInt::from(-1), &BigInt::from(2)).unwrap();
        assert_eq!(q.format(&half), "-1/2");
        assert!(q.is_negative(&half));
        let mut y = vec![q.one(), q.zero()];
        q.axpy(&mut y, &half, &[q.one(), q.one()]);
        assert_eq!(q.format(&y[0]), "1/2");
    }
}
