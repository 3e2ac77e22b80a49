//! Dense univariate polynomials over a finite field, coefficients low to high.

use super::Gf;

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn add(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add_e(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub(crate) fn neg(f: &Gf, a: &[u64]) -> Vec<u64> {
    a.iter().map(|&c| f.neg_e(c)).collect()
}

pub(crate) fn sub(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Gf, a: &[u64], c: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| f.mul_e(x, c)).collect())
}

pub(crate) fn mul(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add_e(out[i + j], f.mul_e(x, y));
            }
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &Gf, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = deg(b).expect("division by zero polynomial");
    let lead_inv = f.inv_e(b[db]);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u64; r.len() - db];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = f.mul_e(r[dr], lead_inv);
        quot[dr - db] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + j;
            r[idx] = f.sub_e(r[idx], f.mul_e(c, bj));
        }
        r = trim(r);
    }
    (trim(quot), r)
}

pub(crate) fn rem(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(f, a, b).1
}

pub(crate) fn monic(f: &Gf, a: &[u64]) -> Vec<u64> {
    match deg(a) {
        None => Vec::new(),
        Some(d) => scale(f, a, f.inv_e(a[d])),
    }
}

pub(crate) fn gcd(f: &Gf, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub(crate) fn mulmod(f: &Gf, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(f, &mul(f, a, b), m)
}

pub(crate) fn powmod(f: &Gf, a: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a polynomial of degree `e ≥ 1` over the finite field `f`.
pub(crate) fn is_irreducible(f: &Gf, poly: &[u64]) -> bool {
    let Some(e) = deg(poly) else { return false };
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    let q = f.q() as u128;
    let x = vec![0, 1];
    // x^(q^k) mod poly, computed by repeated q-th powers.
    let frob = |k: usize| {
        let mut y = x.clone();
        for _ in 0..k {
            y = powmod(f, &y, q, poly);
        }
        y
    };
    if sub(f, &frob(e), &x) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_factors(e as u64) {
        let y = frob(e / l as usize);
        let g = gcd(f, &sub(f, &y, &x), poly);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f2() {
        let f = Gf::prime(2).unwrap();
        assert!(is_irreducible(&f, &[1, 1, 1]));
        assert!(!is_irreducible(&f, &[1, 0, 1]));
        assert!(is_irreducible(&f, &[1, 1, 0, 1]));
        assert!(!is_irreducible(&f, &[1, 1, 1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Gf::prime(3).unwrap();
        let a = vec![2, 0, 1, 1, 2];
        let b = vec![1, 2, 1];
        let (qt, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &qt, &b), &r), trim(a));
        assert!(r.len() < 3);
    }
}
