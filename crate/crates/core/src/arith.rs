//! Small-integer number theory used by the group constructors.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `1 = p^0` counts as a prime power.
pub fn is_prime_power(n: u64) -> bool {
    n >= 1 && factorize(n).len() <= 1
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> usize {
    factorize(n).len()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    ds.sort_unstable();
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    divisors(phi).into_iter().find(|&d| mod_pow(a, d, m) == 1)
}

pub fn smallest_primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    (1..p).find(|&g| multiplicative_order(g, p) == Some(p - 1))
}

/// Inverse of `a` modulo `m`.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(7) && is_prime(13) && !is_prime(1) && !is_prime(21));
        assert!(is_prime_power(1) && is_prime_power(8) && is_prime_power(9));
        assert!(!is_prime_power(6) && !is_prime_power(21));
        assert_eq!(factorize(126), vec![(2, 1), (3, 2), (7, 1)]);
        assert_eq!(omega(15), 2);
        assert_eq!(euler_phi(110), 40);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(smallest_primitive_root(7), Some(3));
        assert_eq!(smallest_primitive_root(13), Some(2));
        assert_eq!(smallest_primitive_root(11), Some(2));
        assert_eq!(multiplicative_order(4, 7), Some(3));
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_pow(10, 4, 21), 4);
    }
}
