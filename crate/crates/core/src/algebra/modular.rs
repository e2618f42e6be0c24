//! Arithmetic in Z/pZ for word-sized primes and dense univariate polynomials over it.

use std::sync::OnceLock;

/// Number of primes kept available for modular algorithms.
const PRIME_COUNT: usize = 64;

/// Large primes just below 2^62, in decreasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn neg_mod(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Small deterministic generator for evaluation points.
#[derive(Clone, Debug)]
pub struct SplitMix(u64);

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish nonzero residue in `[1, p)`.
    pub fn residue(&mut self, p: u64) -> u64 {
        1 + self.next_u64() % (p - 1)
    }
}

/// Dense univariate polynomial over Z/pZ, index = degree, no trailing zeros.
pub type UPoly = Vec<u64>;

pub fn trim(p: &mut UPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn eval(p: &UPoly, x: u64, m: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, m), c, m))
}

pub fn add(a: &UPoly, b: &UPoly, m: u64) -> UPoly {
    let mut out: UPoly = (0..a.len().max(b.len()))
        .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), m))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &UPoly, c: u64, m: u64) -> UPoly {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| mul_mod(x, c, m)).collect()
}

pub fn mul(a: &UPoly, b: &UPoly, m: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, m), m);
        }
    }
    trim(&mut out);
    out
}

/// Multiplies by the linear factor `(x - alpha)`.
pub fn mul_linear(a: &UPoly, alpha: u64, m: u64) -> UPoly {
    let mut out = vec![0u64; a.len() + 1];
    for (i, &c) in a.iter().enumerate() {
        out[i + 1] = add_mod(out[i + 1], c, m);
        out[i] = sub_mod(out[i], mul_mod(c, alpha, m), m);
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &UPoly, b: &UPoly, m: u64) -> (UPoly, UPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv_lc = inv_mod(b[db], m);
    let mut rem = a.clone();
    let mut quot = vec![0u64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = mul_mod(rem[i + db], inv_lc, m);
        quot[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] = sub_mod(rem[i + j], mul_mod(c, bj, m), m);
        }
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn monic(a: &UPoly, m: u64) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, m), m),
    }
}

/// Monic gcd (zero only when both inputs are zero).
pub fn gcd(a: &UPoly, b: &UPoly, m: u64) -> UPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, m);
        x = y;
        y = r;
    }
    monic(&x, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_large() {
        let ps = primes();
        assert_eq!(ps.len(), PRIME_COUNT);
        assert!(ps.iter().all(|&p| p > (1 << 61) && is_prime(p)));
        assert!(!is_prime((1u64 << 62) - 3 * 5));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn univariate_gcd() {
        let p = primes()[0];
        // (x-1)(x-2) and (x-1)(x-3)
        let f = mul_linear(&mul_linear(&vec![1], 1, p), 2, p);
        let g = mul_linear(&mul_linear(&vec![1], 1, p), 3, p);
        assert_eq!(gcd(&f, &g, p), vec![p - 1, 1]);
        let (q, r) = divrem(&f, &vec![p - 1, 1], p);
        assert!(r.is_empty());
        assert_eq!(q, vec![p - 2, 1]);
        assert_eq!(eval(&f, 2, p), 0);
    }
}
