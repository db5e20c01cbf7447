//! Small exact-integer helpers shared by the scans.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Largest odd divisor of `x`. `odd_part(0)` is 0.
pub fn odd_part(x: &BigUint) -> BigUint {
    match x.trailing_zeros() {
        Some(tz) => x >> tz,
        None => BigUint::zero(),
    }
}

pub fn odd_part_u64(x: u64) -> u64 {
    if x == 0 {
        0
    } else {
        x >> x.trailing_zeros()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Decomposes `q = p^f` with `p` prime, or `None` if `q` is not a prime power.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut f = 0u32;
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
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

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `ceil(sqrt(n))` for big integers.
pub fn ceil_sqrt(n: &BigUint) -> BigUint {
    let s = n.sqrt();
    if &s * &s == *n {
        s
    } else {
        s + 1u32
    }
}

/// `a / b` if exact.
pub fn exact_div_u128(a: u128, b: u128) -> Option<u128> {
    (b != 0 && a % b == 0).then(|| a / b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
