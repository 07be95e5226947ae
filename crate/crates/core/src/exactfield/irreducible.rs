//! Irreducibility over ℚ for small degrees: rational roots, then Kronecker's
//! interpolation search for factors of degree 2 and 3.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::Q;

/// Values above this are not factored when picking Kronecker points.
const MAX_FACTORABLE: u64 = 1_000_000_000_000;

/// Primitive integer multiple of `f` (positive leading coefficient).
fn integer_primitive(f: &Poly) -> Vec<BigInt> {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn positive_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_rational_root(f: &[BigInt]) -> bool {
    let a0 = &f[0];
    if a0.is_zero() {
        return true;
    }
    let an = f.last().expect("nonempty");
    let (Some(p0), Some(pn)) = (a0.abs().to_u64(), an.abs().to_u64()) else {
        return false;
    };
    let poly = Poly::new(f.iter().map(|c| Q::from_integer(c.clone())).collect());
    for p in positive_divisors(p0) {
        for q in positive_divisors(pn) {
            let r = Q::new(BigInt::from(p), BigInt::from(q));
            if poly.eval(&r).is_zero() || poly.eval(&-r).is_zero() {
                return true;
            }
        }
    }
    false
}

/// Lagrange interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> Poly {
    let mut out = Poly::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::one();
        let mut denom = Q::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::new(vec![Q::from_integer((-xj).into()), Q::one()]));
                denom *= Q::from_integer((xi - xj).into());
            }
        }
        out = out.add(&basis.scale(&(Q::from_integer(yi.clone()) / denom)));
    }
    out
}

/// Searches for a factor of exact degree `m` by Kronecker's method.
fn has_factor_of_degree(f: &[BigInt], m: usize) -> bool {
    let poly = Poly::new(f.iter().map(|c| Q::from_integer(c.clone())).collect());
    // Candidate points ordered by how few divisors the value has.
    let mut points: Vec<(usize, i64, u64)> = Vec::new();
    for x in -12i64..=12 {
        let v = poly.eval(&Q::from_integer(x.into())).to_integer();
        if v.is_zero() {
            return true;
        }
        if let Some(a) = v.abs().to_u64().filter(|&a| a <= MAX_FACTORABLE) {
            points.push((positive_divisors(a).len(), x, a));
        }
    }
    if points.len() <= m {
        return false;
    }
    points.sort();
    let chosen = &points[..=m];
    let xs: Vec<i64> = chosen.iter().map(|p| p.1).collect();
    let divs: Vec<Vec<u64>> = chosen.iter().map(|p| positive_divisors(p.2)).collect();
    let mut idx = vec![0usize; m + 1];
    let mut signs = vec![false; m + 1];
    loop {
        let ys: Vec<BigInt> = (0..=m)
            .map(|i| {
                let d = BigInt::from(divs[i][idx[i]]);
                if signs[i] {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(m) && g.coeffs().iter().all(|c| c.is_integer()) && poly.rem(&g).is_zero() {
            return true;
        }
        // Advance the mixed-radix counter; the first sign stays fixed since
        // g and -g are interchangeable.
        let mut k = 0;
        loop {
            if k > m {
                return false;
            }
            if k > 0 && !signs[k] {
                signs[k] = true;
                break;
            }
            signs[k] = false;
            idx[k] += 1;
            if idx[k] < divs[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Decides irreducibility over ℚ for degrees 1 through 6.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(deg) = f.degree() else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let ints = integer_primitive(f);
    debug_assert!(ints.last().map(BigInt::sign) == Some(Sign::Plus));
    if has_rational_root(&ints) {
        return false;
    }
    (2..=deg / 2).all(|m| !has_factor_of_degree(&ints, m))
}
