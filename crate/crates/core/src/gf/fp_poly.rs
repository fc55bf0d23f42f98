//! Dense polynomials over a prime field `F_p`, used to validate moduli and
//! to build the log/exp tables of an extension field.
//!
//! Coefficients are stored constant term first and kept trimmed (no
//! trailing zeros); the zero polynomial is the empty vector.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub(crate) type FpPoly = Vec<u32>;

pub(crate) fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine.
    pow_mod(a, p as u64 - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = base as u64 % p as u64;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out.push((a + p - b) % p);
    }
    trim(out)
}

pub(crate) fn mul(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

pub(crate) fn rem(f: &[u32], m: &[u32], p: u32) -> FpPoly {
    assert!(!m.is_empty(), "reduction by the zero polynomial");
    let mut r: Vec<u32> = f.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] as u64 * lead_inv as u64 % p as u64;
        if c != 0 {
            let shift = top - dm;
            for (i, &mc) in m.iter().enumerate() {
                let t = c * mc as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

pub(crate) fn mulmod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> FpPoly {
    rem(&mul(f, g, p), m, p)
}

pub(crate) fn powmod(f: &[u32], mut e: u64, m: &[u32], p: u32) -> FpPoly {
    let mut acc: FpPoly = rem(&[1], m, p);
    let mut b = rem(f, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(f: &[u32], g: &[u32], p: u32) -> FpPoly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = (*c as u64 * inv as u64 % p as u64) as u32;
        }
    }
    a
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Rabin's test: `f` of degree k is irreducible iff `x^(p^k) = x mod f`
/// and `gcd(x^(p^(k/r)) - x, f) = 1` for every prime r dividing k.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let k = (f.len() - 1) as u32;
    let x: FpPoly = vec![0, 1];
    let x_pow_pj = |j: u32| -> FpPoly {
        let mut acc = rem(&x, &f, p);
        for _ in 0..j {
            acc = powmod(&acc, p as u64, &f, p);
        }
        acc
    };
    if sub(&x_pow_pj(k), &rem(&x, &f, p), p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = sub(&x_pow_pj(k / r as u32), &x, p);
        if gcd(&h, &f, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Whether `g` generates the multiplicative group of `F_p[x]/(m)`, whose
/// order is `q - 1`.
pub(crate) fn is_generator(g: &[u32], m: &[u32], p: u32, q: u64) -> bool {
    let one: FpPoly = vec![1];
    if powmod(g, q - 1, m, p) != one {
        return false;
    }
    prime_factors(q - 1)
        .into_iter()
        .all(|r| powmod(g, (q - 1) / r, m, p) != one)
}

fn conway_cache() -> &'static Mutex<HashMap<(u32, u32), FpPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FpPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn eval_at(f: &[u32], x: &[u32], m: &[u32], p: u32) -> FpPoly {
    // Horner in F_p[x]/(m).
    let mut acc: FpPoly = Vec::new();
    for &c in f.iter().rev() {
        acc = mulmod(&acc, x, m, p);
        acc = trim({
            let mut a = acc.clone();
            if a.is_empty() {
                a.push(0);
            }
            a[0] = (a[0] + c) % p;
            a
        });
    }
    acc
}

/// The Conway polynomial of degree `k` over `F_p`: the first primitive
/// polynomial in Conway's ordering whose roots are norm-compatible with the
/// Conway polynomials of every proper subfield.
pub(crate) fn conway(p: u32, k: u32) -> FpPoly {
    if let Some(f) = conway_cache().lock().unwrap().get(&(p, k)) {
        return f.clone();
    }
    let q = (p as u64).pow(k);
    let divisors: Vec<u32> = (1..k).filter(|d| k % d == 0).collect();
    let subs: Vec<(u32, FpPoly)> = divisors.iter().map(|&d| (d, conway(p, d))).collect();
    // Candidates are indexed by (a_{k-1}, ..., a_0) read as a base-p number,
    // most significant first; the coefficient of x^i is (-1)^(k-i) a_i.
    let total = q;
    let mut found = None;
    for idx in 0..total {
        let mut digits = vec![0u32; k as usize];
        let mut t = idx;
        for i in 0..k as usize {
            digits[i] = (t % p as u64) as u32;
            t /= p as u64;
        }
        // digits[0] is a_0 (least significant), matching the ordering.
        if digits[0] == 0 {
            continue;
        }
        let mut f: FpPoly = Vec::with_capacity(k as usize + 1);
        for i in 0..k as usize {
            let a = digits[i];
            let c = if (k as usize - i) % 2 == 0 { a } else { (p - a) % p };
            f.push(c);
        }
        f.push(1);
        let x: FpPoly = rem(&[0, 1], &f, p);
        if !is_generator(&x, &f, p, q) {
            continue;
        }
        let compatible = subs.iter().all(|(d, c)| {
            let e = (q - 1) / ((p as u64).pow(*d) - 1);
            let y = powmod(&x, e, &f, p);
            eval_at(c, &y, &f, p).is_empty()
        });
        if compatible {
            found = Some(f);
            break;
        }
    }
    let f = found.expect("a Conway polynomial exists for every (p, k)");
    conway_cache().lock().unwrap().insert((p, k), f.clone());
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_conway_polynomials() {
        assert_eq!(conway(2, 1), vec![1, 1]);
        assert_eq!(conway(2, 2), vec![1, 1, 1]);
        assert_eq!(conway(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(conway(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(conway(3, 1), vec![1, 1]);
        assert_eq!(conway(3, 2), vec![2, 2, 1]);
        assert_eq!(conway(5, 1), vec![3, 1]);
        assert_eq!(conway(5, 2), vec![2, 4, 1]);
        assert_eq!(conway(2, 6), vec![1, 1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn rabin_test() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive over F_2.
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2));
        assert!(!is_generator(&[0, 1], &[1, 1, 1, 1, 1], 2, 16));
    }
}
