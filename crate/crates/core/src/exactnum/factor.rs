//! Integer factorization, used to keep radicands squarefree.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u32 = 1 << 12;

/// Splits `n > 0` as `square_root^2 * squarefree`.
pub fn squarefree_decomposition(n: &BigUint) -> (BigUint, BigUint) {
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    for (p, e) in factorize(n) {
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
    }
    (root, free)
}

/// Prime factorization of `n`, sorted by prime. `factorize(1)` is empty.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut found: Vec<BigUint> = Vec::new();
    let mut rest = n.clone();

    let mut p = 2u32;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            found.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        split_large(rest, &mut found);
    }

    found.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for f in found {
        match out.last_mut() {
            Some((q, e)) if *q == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

// `n` has no prime factor below TRIAL_LIMIT.
fn split_large(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    let limit = BigUint::from(TRIAL_LIMIT);
    if &limit * &limit > n || is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_large(r.clone(), out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(&n);
    split_large(n.clone() / &d, out);
    split_large(d, out);
}

/// Miller-Rabin with the first twelve prime bases: deterministic below 3.3e24,
/// probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let bp = BigUint::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; `n` is odd, composite and not a perfect square.
fn pollard_brent(n: &BigUint) -> BigUint {
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Largest integer whose square does not exceed `n`.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}
