//! Exact norms `N(e, a, b) = prod over primitive e-th roots z of (z^a - z^b + 1)`.
//!
//! The norm equals `res(Phi_e, x^a - x^b + 1)`. It is computed modulo primes
//! `p = 1 (mod e)`, where `Phi_e` splits into linear factors and the product
//! over roots becomes a product over powers of a primitive root of unity in
//! `F_p`. Enough primes are used to exceed `2 * 3^phi(e)`, which bounds the
//! absolute value, so the symmetric CRT lift is exact.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

const PRIME_CEILING: u64 = 1 << 62;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct PrimeRoot {
    p: u64,
    /// primitive e-th root of unity mod p
    root: u64,
}

/// Primes and roots of unity for one order `e`.
#[derive(Debug)]
pub(crate) struct NormBasis {
    e: usize,
    coprime: Vec<bool>,
    primes: Vec<PrimeRoot>,
    /// `prod p` and Garner constants `inv(p_0 ... p_{i-1}) mod p_i`
    modulus: BigUint,
    garner_inv: Vec<u64>,
    /// bit length of the bound `2 * 3^phi(e)`
    bound_bits: u64,
}

impl NormBasis {
    fn new(e: usize) -> Self {
        assert!(e >= 1, "order must be positive");
        let coprime: Vec<bool> = (0..e).map(|i| i.gcd(&e) == 1).collect();
        let phi = coprime.iter().filter(|&&c| c).count();

        let bound = BigUint::from(3u32).pow(phi as u32) * 2u32;
        let e64 = e as u64;
        let factors = prime_factors(e64);
        let mut primes = Vec::new();
        let mut modulus = BigUint::one();
        let mut t = (PRIME_CEILING - 1) / e64;
        while modulus <= bound {
            let p = 1 + t * e64;
            t -= 1;
            if !is_prime_u64(p) {
                continue;
            }
            let root = (2..)
                .map(|g| pow_mod(g, (p - 1) / e64, p))
                .find(|&w| factors.iter().all(|&q| pow_mod(w, e64 / q, p) != 1))
                .expect("multiplicative group is cyclic");
            primes.push(PrimeRoot { p, root });
            modulus *= p;
        }

        let garner_inv = primes
            .iter()
            .enumerate()
            .map(|(i, pr)| {
                let prefix = primes[..i]
                    .iter()
                    .fold(1u64, |acc, q| mul_mod(acc, q.p % pr.p, pr.p));
                pow_mod(prefix, pr.p - 2, pr.p)
            })
            .collect();

        NormBasis {
            e,
            coprime,
            primes,
            modulus,
            garner_inv,
            bound_bits: bound.bits(),
        }
    }

    /// Cheap test on the first prime: true when the norm is certainly nonzero
    /// and not a signed power of two, because its residue differs from every
    /// `+-2^m` with `2^m` below the bound.
    pub(crate) fn surely_not_dyadic(&self, a: usize, b: usize) -> bool {
        let pr = self.primes[0];
        let r = self.residue(pr, a % self.e, b % self.e);
        if r == 0 {
            return false;
        }
        let neg = pr.p - r;
        let mut pow = 1u64;
        for _ in 0..self.bound_bits {
            if pow == r || pow == neg {
                return false;
            }
            pow = mul_mod(pow, 2, pr.p);
        }
        true
    }

    fn residue(&self, pr: PrimeRoot, a: usize, b: usize) -> u64 {
        let p = pr.p;
        let ra = pow_mod(pr.root, a as u64, p);
        let rb = pow_mod(pr.root, b as u64, p);
        let (mut za, mut zb) = (1u64, 1u64);
        let mut acc = 1u64;
        for i in 0..self.e {
            if self.coprime[i] {
                // 1 + z^a - z^b
                let term = (1 + za + (p - zb)) % p;
                acc = mul_mod(acc, term, p);
                if acc == 0 {
                    return 0;
                }
            }
            za = mul_mod(za, ra, p);
            zb = mul_mod(zb, rb, p);
        }
        acc
    }

    /// Exact norm for exponents reduced mod `e`.
    pub(crate) fn norm(&self, a: usize, b: usize) -> BigInt {
        let (a, b) = (a % self.e, b % self.e);
        let residues: Vec<u64> = self.primes.iter().map(|&pr| self.residue(pr, a, b)).collect();
        if residues.iter().all(|&r| r == 0) {
            return BigInt::zero();
        }
        self.lift(&residues)
    }

    /// Garner mixed-radix reconstruction, then the symmetric representative.
    fn lift(&self, residues: &[u64]) -> BigInt {
        let mut digits: Vec<u64> = Vec::with_capacity(residues.len());
        for (i, (&r, pr)) in residues.iter().zip(&self.primes).enumerate() {
            let p = pr.p;
            // value of the partial mixed-radix sum mod p
            let mut partial = 0u64;
            let mut radix = 1u64;
            for (d, q) in digits.iter().zip(&self.primes[..i]) {
                partial = (partial + mul_mod(*d % p, radix, p)) % p;
                radix = mul_mod(radix, q.p % p, p);
            }
            let diff = (r + p - partial) % p;
            digits.push(mul_mod(diff, self.garner_inv[i], p));
        }
        let mut value = BigUint::zero();
        for (d, pr) in digits.iter().zip(&self.primes).rev() {
            value = value * pr.p + *d;
        }
        let half = &self.modulus >> 1;
        if value > half {
            BigInt::from(value) - BigInt::from(self.modulus.clone())
        } else {
            BigInt::from(value)
        }
    }
}

fn registry() -> &'static RwLock<HashMap<usize, Arc<NormBasis>>> {
    static REGISTRY: OnceLock<RwLock<HashMap<usize, Arc<NormBasis>>>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

/// Shared, lazily built basis for order `e`.
pub(crate) fn basis(e: usize) -> Arc<NormBasis> {
    if let Some(b) = registry().read().expect("norm registry poisoned").get(&e) {
        return Arc::clone(b);
    }
    let built = Arc::new(NormBasis::new(e));
    let mut map = registry().write().expect("norm registry poisoned");
    Arc::clone(map.entry(e).or_insert(built))
}

/// `prod over primitive e-th roots of unity z of (z^a - z^b + 1)`, exactly.
pub fn cyclotomic_norm(e: usize, a: usize, b: usize) -> BigInt {
    basis(e).norm(a, b)
}
