//! 64-bit number theory: primality, factorisation, divisors and primitive
//! prime divisors.

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `p^d` if it is at most `2^63`.
pub fn checked_prime_power(p: u64, d: u32) -> Option<u64> {
    p.checked_pow(d).filter(|&q| q <= 1u64 << 63)
}

/// Deterministic Miller-Rabin; the first twelve primes as bases decide
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
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

/// Prime factors with multiplicity, ascending. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
    }
    // Wheel over 6k +- 1 up to a small limit, then Pollard rho.
    let mut f = 7u64;
    let mut step = 4u64;
    while f <= 1000 && f * f <= n {
        while n.is_multiple_of(f) {
            out.push(f);
            n /= f;
        }
        f += step;
        step = 6 - step;
    }
    if n > 1 {
        split(n, &mut out);
    }
    out.sort_unstable();
    out
}

fn split(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = pollard_brent(n, c) {
            break d;
        }
        c += 1;
    };
    split(d, out);
    split(n / d, out);
}

/// One Brent cycle-finding run of Pollard's rho with `x^2 + c`.
fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let m = 128;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
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

pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    let mut f = factorize(n);
    f.dedup();
    f
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    let f = factorize(n);
    let mut i = 0;
    while i < f.len() {
        let p = f[i];
        let mut e = 0;
        while i < f.len() && f[i] == p {
            e += 1;
            i += 1;
        }
        let current = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(current.iter().map(|&d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// `(p, d)` with `n = p^d`, `p` prime.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    let p = *f.first()?;
    f.iter().all(|&x| x == p).then_some((p, f.len() as u32))
}

/// Multiplicative order of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m <= 1 || gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for q in distinct_prime_factors(phi) {
        while ord.is_multiple_of(q) && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    Some(ord)
}

fn euler_phi(m: u64) -> u64 {
    distinct_prime_factors(m)
        .iter()
        .fold(m, |acc, &p| acc / p * (p - 1))
}

/// `t` is prime, divides `p^d - 1`, and divides no `p^i - 1` with `i < d`;
/// equivalently `p` has order `d` modulo the prime `t`.
pub fn is_primitive_prime_divisor(t: u64, p: u64, d: u32) -> bool {
    if d == 0 || !is_prime(t) || p.is_multiple_of(t) {
        return false;
    }
    multiplicative_order(p, t) == Some(d as u64)
}
