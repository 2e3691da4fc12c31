//! Exact polynomial identities in free algebras, checked by expansion.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::freealg::{left_normed_bracket, FreePolynomial};

type Poly<F> = FreePolynomial<F>;

fn gens<F: Field>(field: &F, n: usize) -> Vec<Poly<F>> {
    (0..n).map(|i| Poly::generator(field.clone(), n, i)).collect()
}

fn ratio<F: Field>(field: &F, num: i64, den: i64) -> Result<F::Elem> {
    field.from_ratio(&BigInt::from(num), &BigInt::from(den)).ok_or(Error::UnsupportedCharacteristic {
        characteristic: field.characteristic(),
        needs: den as u64,
    })
}

fn br<F: Field>(args: &[&Poly<F>]) -> Result<Poly<F>> {
    let owned: Vec<Poly<F>> = args.iter().map(|p| (*p).clone()).collect();
    left_normed_bracket(&owned)
}

/// `[p,[q,r]] + [q,[r,p]] + [r,[p,q]]`.
pub fn jacobi_sum<F: Field>(p: &Poly<F>, q: &Poly<F>, r: &Poly<F>) -> Result<Poly<F>> {
    let a = p.commutator(&q.commutator(r)?)?;
    let b = q.commutator(&r.commutator(p)?)?;
    let c = r.commutator(&p.commutator(q)?)?;
    a.add(&b)?.add(&c)
}

/// Both sides of
/// `[u³,[v,w]] = 3[u²,[uv,w]] - 3[u,[u²v,w]] + 3/2 [u²,[v,[u,w]]] - 3/2 [u,[v,[u²,w]]]
///  + [u,[u,[u,[v,w]]]] - 3/2 [u,[u,[v,[u,w]]]] + 3/2 [u,[v,[u,[u,w]]]]`
/// on the generators of `A_3`.
pub fn cube_commutator_sides<F: Field>(field: &F) -> Result<(Poly<F>, Poly<F>)> {
    let g = gens(field, 3);
    let (u, v, w) = (&g[0], &g[1], &g[2]);
    let u2 = u.multiply(u)?;
    let u3 = u2.multiply(u)?;
    let uv = u.multiply(v)?;
    let u2v = u2.multiply(v)?;
    let lhs = br(&[&u3, v, w])?;
    let terms: [(i64, i64, Poly<F>); 7] = [
        (3, 1, br(&[&u2, &uv, w])?),
        (-3, 1, br(&[u, &u2v, w])?),
        (3, 2, br(&[&u2, v, u, w])?),
        (-3, 2, br(&[u, v, &u2, w])?),
        (1, 1, br(&[u, u, u, v, w])?),
        (-3, 2, br(&[u, u, v, u, w])?),
        (3, 2, br(&[u, v, u, u, w])?),
    ];
    let mut rhs = Poly::zero(field.clone(), 3);
    for (num, den, t) in terms {
        rhs = rhs.add(&t.scale(&ratio(field, num, den)?))?;
    }
    Ok((lhs, rhs))
}

/// Sign-weighted sum over `S_3` on the generators `x, y, v` and `S_2` on
/// `z, u` of `f(x, y, z, u, v)`.
fn alternate<F: Field>(field: &F, f: impl Fn(&[Poly<F>]) -> Result<Poly<F>>) -> Result<Poly<F>> {
    let g = gens(field, 5);
    // slots: x = 0, y = 1, z = 2, u = 3, v = 4
    let three: [([usize; 3], bool); 6] =
        [([0, 1, 4], false), ([1, 0, 4], true), ([4, 1, 0], true), ([0, 4, 1], true), ([1, 4, 0], false), ([4, 0, 1], false)];
    let two: [([usize; 2], bool); 2] = [([2, 3], false), ([3, 2], true)];
    let mut out = Poly::zero(field.clone(), 5);
    for (p3, s3) in three {
        for (p2, s2) in two {
            let mut args = vec![g[0].clone(); 5];
            args[0] = g[p3[0]].clone();
            args[1] = g[p3[1]].clone();
            args[4] = g[p3[2]].clone();
            args[2] = g[p2[0]].clone();
            args[3] = g[p2[1]].clone();
            let term = f(&args)?;
            out = if s3 ^ s2 { out.sub(&term)? } else { out.add(&term)? };
        }
    }
    Ok(out)
}

/// Both sides of `Alt[x*[y,z,u],v] = Alt(4[z*x,y,v,u] - 2[x,z,y,u*v])` in
/// `A_5` with `a*b = (ab+ba)/2`.
pub fn alternation_sides<F: Field>(field: &F) -> Result<(Poly<F>, Poly<F>)> {
    let lhs = alternate(field, |a| {
        let (x, y, z, u, v) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
        br(&[&x.jordan(&br(&[y, z, u])?)?, v])
    })?;
    let four = field.from_i64(4);
    let two = field.from_i64(2);
    let rhs = alternate(field, |a| {
        let (x, y, z, u, v) = (&a[0], &a[1], &a[2], &a[3], &a[4]);
        let first = br(&[&z.jordan(x)?, y, v, u])?.scale(&four);
        let second = br(&[x, z, y, &u.jordan(v)?])?.scale(&two);
        first.sub(&second)
    })?;
    Ok((lhs, rhs))
}

/// Both sides of the Leibniz expansion
/// `[c_1,…,c_n,ab] = Σ_j Σ_σ [c_σ(1),…,c_σ(j),a][c_σ(j+1),…,c_σ(n),b]`,
/// `σ` running over shuffles of `{1..n}` into an increasing head of length
/// `j` and an increasing tail, on the generators `c_1, …, c_n, a, b` of
/// `A_{n+2}`.
pub fn leibniz_sides<F: Field>(field: &F, n: usize) -> Result<(Poly<F>, Poly<F>)> {
    let g = gens(field, n + 2);
    let (a, b) = (&g[n], &g[n + 1]);
    let mut args: Vec<&Poly<F>> = g[..n].iter().collect();
    let ab = a.multiply(b)?;
    args.push(&ab);
    let lhs = br(&args)?;
    let mut rhs = Poly::zero(field.clone(), n + 2);
    for mask in 0u32..(1 << n) {
        let mut head: Vec<&Poly<F>> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &g[i]).collect();
        let mut tail: Vec<&Poly<F>> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| &g[i]).collect();
        head.push(a);
        tail.push(b);
        rhs = rhs.add(&br(&head)?.multiply(&br(&tail)?)?)?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn jacobi_on_generators() {
        let g = gens(&Rationals, 3);
        assert!(jacobi_sum(&g[0], &g[1], &g[2]).unwrap().is_zero());
    }

    #[test]
    fn cube_commutator() {
        let (l, r) = cube_commutator_sides(&Rationals).unwrap();
        assert!(!l.is_zero());
        assert_eq!(l, r);
    }

    #[test]
    fn alternation() {
        let (l, r) = alternation_sides(&Rationals).unwrap();
        assert!(!l.is_zero());
        assert_eq!(l, r);
    }

    #[test]
    fn leibniz() {
        for n in 1..=3 {
            let (l, r) = leibniz_sides(&Rationals, n).unwrap();
            assert_eq!(l, r, "n = {n}");
        }
    }
}
