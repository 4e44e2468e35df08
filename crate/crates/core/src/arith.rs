//! Integer helpers: primality, factorization and prime-power recognition.
//!
//! Numbers up to `u128` are supported. Small factors are removed by trial
//! division; whatever survives is split with Pollard–Brent and certified with
//! a deterministic Miller–Rabin test.

use std::collections::BTreeMap;

const TRIAL_LIMIT: u64 = 1 << 12;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for any `u128`.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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
    // The first twelve primes are a deterministic witness set below 3.3e24;
    // above that the extra bases make a false positive astronomically unlikely.
    let bases: &[u128] = if n < 3_317_044_064_679_887_385_961_981 {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    } else {
        &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    };
    'witness: for &a in bases {
        let mut x = pow_mod(a, d, n);
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

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn pollard_brent(n: u128, seed: u128) -> Option<u128> {
    let f = |x: u128| add_mod(mul_mod(x, x, n), seed, n);
    let (mut y, m) = (2u128, 64u32);
    let (mut g, mut r, mut q) = (1u128, 1u64, 1u128);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min((r - k) as u32) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m as u64;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split(n: u128, out: &mut BTreeMap<u128, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let mut seed = 1u128;
    loop {
        if let Some(d) = pollard_brent(n, seed) {
            split(d, out);
            split(n / d, out);
            return;
        }
        seed += 1;
    }
}

/// Prime factorization as an ordered map prime -> exponent. `factor(1)` is empty.
pub fn factor(mut n: u128) -> BTreeMap<u128, u32> {
    assert!(n > 0, "cannot factor zero");
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && (d as u128) * (d as u128) <= n {
        while n % d as u128 == 0 {
            *out.entry(d as u128).or_insert(0) += 1;
            n /= d as u128;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split(n, &mut out);
    out
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u128) -> Vec<u128> {
    factor(n).into_keys().collect()
}

/// Returns `(p, f)` with `n = p^f` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let fac = factor(n as u128);
    if fac.len() == 1 {
        let (&p, &e) = fac.iter().next().unwrap();
        Some((p as u64, e))
    } else {
        None
    }
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut big: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&e| e * e != n).collect();
    out.append(&mut big);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u128) -> bool {
        n >= 2 && (2..).take_while(|d: &u128| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u128 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factorization_reconstructs() {
        for n in [1u128, 2, 12, 255, 65535, 4_294_967_297, (1u128 << 64) + 1, 1_000_000_007 * 998_244_353] {
            let prod: u128 = factor(n).iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
            assert!(factor(n).keys().all(|&p| is_prime(p)));
        }
        assert_eq!(prime_divisors(4_294_967_297), vec![641, 6_700_417]);
    }

    #[test]
    fn prime_powers_and_divisors() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
    }
}
