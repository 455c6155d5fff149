//! Primary decomposition view: invariant factors split into prime powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::FgAbGroup;

/// Prime factorization of `n >= 2` as (prime, exponent) pairs, ascending.
///
/// Trial division followed by Pollard's rho; fine for the integer sizes
/// this library produces.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(*n >= BigInt::from(2), "factor expects n >= 2");
    let mut factors: Vec<BigInt> = Vec::new();
    let mut stack = vec![n.clone()];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            factors.push(m);
            continue;
        }
        if let Some(d) = small_divisor(&m) {
            stack.push(&m / &d);
            stack.push(d);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    factors.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in factors {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn small_divisor(n: &BigInt) -> Option<BigInt> {
    let two = BigInt::from(2);
    if (n % &two).is_zero() {
        return Some(two);
    }
    let mut d = BigInt::from(3);
    let limit = BigInt::from(1u64 << 16);
    while &d * &d <= *n && d <= limit {
        if (n % &d).is_zero() {
            return Some(d);
        }
        d += 2;
    }
    None
}

/// Miller-Rabin with fixed bases; deterministic well past 2^64.
fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(small);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    // n is odd, composite, with no small factors at this point
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && d != *n {
            return d;
        }
        c += &one;
    }
}

/// The primary (prime-power) cyclic decomposition, sorted by prime then
/// exponent. Display-only view: the canonical form stays invariant-factor.
pub fn primary_decomposition(g: &FgAbGroup) -> Vec<BigInt> {
    let mut parts: Vec<(BigInt, u32)> = Vec::new();
    for d in g.torsion() {
        parts.extend(factor(d));
    }
    parts.sort();
    parts
        .into_iter()
        .map(|(p, e)| p.pow(e))
        .collect()
}
