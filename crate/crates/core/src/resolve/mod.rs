//! Resultants and the dyadic-resolvability predicate.
//!
//! Two independent routes compute trinomial resultants:
//!
//! * [`resultant`] runs the subresultant remainder sequence on expanded
//!   integer polynomials and works for any pair of nonzero polynomials.
//! * [`trinomial_resultant`] uses the trinomial structure. With
//!   `f = x^n - x^k + 1`, `g = x^n - x^j + 1` and `k > j`,
//!   `g(r) = r^j (r^(k-j) - 1)` at every root `r` of `f`, which gives
//!   `res(f, g) = (-1)^(nk) * prod_{w^d = 1} f(w)` with `d = k - j`. The product
//!   over `d`-th roots of unity splits into cyclotomic norms
//!   `N(e, n mod e, k mod e)` over the divisors `e` of `d`.
//!
//! Signs are exact on both routes; dyadic decisions only look at magnitudes.

mod norm;
mod subresultant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bigpoly::{IntPoly, Trinomial};

pub use norm::cyclotomic_norm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("resultant of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("trinomials have different degrees ({0} and {1})")]
    MismatchedDegree(usize, usize),
    #[error("trinomials are identical (k = {0})")]
    EqualMiddleExponent(usize),
    #[error("argument must be positive")]
    NonPositive,
}

/// An exact resultant value. Zero exactly when the inputs share a factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Resultant(pub BigInt);

impl Resultant {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn magnitude(&self) -> BigUint {
        self.0.magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn verdict(&self) -> DyadicVerdict {
        DyadicVerdict::from_value(&self.0)
    }
}

/// Whether a resultant is a signed power of two, with its odd part as a
/// diagnostic. For a zero resultant the odd part is reported as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicVerdict {
    pub resolves: bool,
    pub exponent: Option<u64>,
    pub odd_part: BigInt,
}

impl DyadicVerdict {
    pub fn from_value(v: &BigInt) -> Self {
        if v.is_zero() {
            return DyadicVerdict {
                resolves: false,
                exponent: None,
                odd_part: BigInt::zero(),
            };
        }
        let twos = v.trailing_zeros().unwrap_or(0);
        let odd_part = v.abs() >> twos;
        let resolves = odd_part.is_one();
        DyadicVerdict {
            resolves,
            exponent: resolves.then_some(twos),
            odd_part,
        }
    }
}

/// Generic resultant over the rationals of two nonzero integer polynomials.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<Resultant, ResolveError> {
    if f.is_zero() || g.is_zero() {
        return Err(ResolveError::ZeroPolynomial);
    }
    Ok(Resultant(subresultant::subresultant(f, g)))
}

pub(crate) fn divisors(d: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= d {
        if d.is_multiple_of(i) {
            small.push(i);
            if i * i != d {
                large.push(d / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `prod over w^d = 1 of (w^n - w^k + 1)`, i.e. `res(x^d - 1, x^n - x^k + 1)`.
fn product_over_roots_of_unity(n: usize, k: usize, d: usize) -> BigInt {
    divisors(d)
        .into_iter()
        .map(|e| cyclotomic_norm(e, n % e, k % e))
        .fold(BigInt::one(), |acc, v| acc * v)
}

fn signed(negate: bool, v: BigInt) -> BigInt {
    if negate {
        -v
    } else {
        v
    }
}

/// `res(x^n - x^k + 1, x^n - x^j + 1)` through cyclotomic norms.
pub fn trinomial_resultant(t1: Trinomial, t2: Trinomial) -> Result<Resultant, ResolveError> {
    let n = t1.n();
    if t2.n() != n {
        return Err(ResolveError::MismatchedDegree(n, t2.n()));
    }
    let (k, j) = (t1.k(), t2.k());
    if k == j {
        return Err(ResolveError::EqualMiddleExponent(k));
    }
    let value = if k > j {
        let prod = product_over_roots_of_unity(n, k, k - j);
        signed(n * k % 2 == 1, prod)
    } else {
        let prod = product_over_roots_of_unity(n, k, j - k);
        signed(n * (j + 1) % 2 == 1, prod)
    };
    Ok(Resultant(value))
}

/// `res(x^n - x^k + 1, x^d - 1)`.
///
/// The trinomial is reduced modulo `x^d - 1` (exponents mod `d`) and the
/// product over `d`-th roots of unity is taken as a product of cyclotomic
/// norms, each an exact integer resultant.
pub fn resultant_with_xd_minus_1(t: Trinomial, d: usize) -> Result<Resultant, ResolveError> {
    if d == 0 {
        return Err(ResolveError::NonPositive);
    }
    let prod = product_over_roots_of_unity(t.n(), t.k(), d);
    Ok(Resultant(signed(t.n() * d % 2 == 1, prod)))
}

/// Dyadic verdict for a trinomial pair of equal degree. Identical trinomials
/// have a zero resultant and never resolve.
pub fn dyadically_resolve(t1: Trinomial, t2: Trinomial) -> Result<DyadicVerdict, ResolveError> {
    match trinomial_resultant(t1, t2) {
        Ok(r) => Ok(r.verdict()),
        Err(ResolveError::EqualMiddleExponent(_)) => Ok(DyadicVerdict::from_value(&BigInt::zero())),
        Err(e) => Err(e),
    }
}

/// 2-adic valuation of a positive integer.
pub fn nu2(n: u64) -> Result<u32, ResolveError> {
    if n == 0 {
        return Err(ResolveError::NonPositive);
    }
    Ok(n.trailing_zeros())
}

/// `|res(x^n + 2, x^(2^j) + 1)| = |((-2)^(2^j / g) - (-1)^(n / g))^g|` with
/// `g = gcd(2^j, n)`.
pub fn swan_binomial_resultant(n: usize, j: u32) -> Result<BigUint, ResolveError> {
    if n == 0 {
        return Err(ResolveError::NonPositive);
    }
    let two_j = 1usize << j;
    let g = two_j.gcd(&n);
    let base = num_traits::pow(BigInt::from(-2), two_j / g)
        - if (n / g).is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
    Ok(num_traits::pow(base.magnitude().clone(), g))
}

/// Whether the binomial resultant above is a power of two, which happens
/// exactly when `nu2(n) == j`.
pub fn swan_is_power_of_two(n: usize, j: u32) -> Result<bool, ResolveError> {
    let v = swan_binomial_resultant(n, j)?;
    Ok(v.count_ones() == 1)
}

/// The cyclotomic polynomial `Phi_e` by exact division of `x^e - 1`.
pub fn cyclotomic_polynomial(e: usize) -> IntPoly {
    assert!(e >= 1, "cyclotomic order must be positive");
    let mut num = IntPoly::from_terms([(e, BigInt::one()), (0, -BigInt::one())]).to_rational();
    for d in divisors(e).into_iter().filter(|&d| d < e) {
        let (q, r) = num
            .div_rem(&cyclotomic_polynomial(d).to_rational())
            .expect("cyclotomic polynomials are nonzero");
        debug_assert!(r.is_zero());
        num = q;
    }
    num.to_integer().expect("cyclotomic polynomials are integral")
}

/// Per-degree classification of trinomial pairs with cached cyclotomic norms.
///
/// For a fixed `n` the norm `N(e, n mod e, k mod e)` depends only on `e` and
/// `k mod e`, so each value is computed once and shared by every pair whose
/// difference is a multiple of `e`.
pub(crate) struct PairClassifier {
    n: usize,
    divisors: Vec<Vec<usize>>,
    cells: Vec<Vec<std::sync::OnceLock<NormClass>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NormClass {
    Zero,
    PowerOfTwo,
    Other,
}

/// Coprimality and dyadic resolution of one trinomial pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PairClass {
    pub coprime: bool,
    pub resolves: bool,
}

impl PairClassifier {
    pub(crate) fn new(n: usize) -> Self {
        let max_d = n.saturating_sub(2);
        let divisors = (0..=max_d)
            .map(|d| if d == 0 { Vec::new() } else { divisors(d) })
            .collect();
        let cells = (0..=max_d)
            .map(|e| (0..e).map(|_| std::sync::OnceLock::new()).collect())
            .collect();
        PairClassifier { n, divisors, cells }
    }

    fn class(&self, e: usize, k: usize) -> NormClass {
        *self.cells[e][k % e].get_or_init(|| {
            let basis = norm::basis(e);
            if basis.surely_not_dyadic(self.n, k) {
                return NormClass::Other;
            }
            let v = basis.norm(self.n, k);
            if v.is_zero() {
                NormClass::Zero
            } else if crate::bigpoly::is_power_of_two(&v.abs()) {
                NormClass::PowerOfTwo
            } else {
                NormClass::Other
            }
        })
    }

    /// Dyadic verdict only; stops at the first factor that is not `±2^m`.
    pub(crate) fn resolves(&self, k: usize, j: usize) -> bool {
        let (hi, lo) = if k > j { (k, j) } else { (j, k) };
        if hi == lo {
            return false;
        }
        self.divisors[hi - lo]
            .iter()
            .all(|&e| self.class(e, hi) == NormClass::PowerOfTwo)
    }

    pub(crate) fn classify(&self, k: usize, j: usize) -> PairClass {
        let (hi, lo) = if k > j { (k, j) } else { (j, k) };
        if hi == lo {
            return PairClass {
                coprime: false,
                resolves: false,
            };
        }
        let mut coprime = true;
        let mut resolves = true;
        for &e in &self.divisors[hi - lo] {
            match self.class(e, hi) {
                NormClass::Zero => {
                    coprime = false;
                    resolves = false;
                    break;
                }
                NormClass::Other => resolves = false,
                NormClass::PowerOfTwo => {}
            }
        }
        PairClass { coprime, resolves }
    }
}
