//! Dense exact polynomials over arbitrary-precision integers and rationals.
//!
//! Coefficients are stored lowest degree first and kept normalized: no
//! trailing zeros, so the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial has a zero constant term; reversal would drop the degree")]
    ZeroConstantTerm,
    #[error("invalid trinomial x^{n} - x^{k} + 1: need 0 < k < n")]
    InvalidTrinomial { n: usize, k: usize },
    #[error("power substitution needs a positive exponent")]
    ZeroExponent,
}

/// Degree of a polynomial. The zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficient ring usable by [`Poly`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

macro_rules! impl_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
        }
    };
}

impl_coeff!(BigInt);
impl_coeff!(BigRational);

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: T, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from sparse `(exponent, coefficient)` terms.
    pub fn from_terms<I: IntoIterator<Item = (usize, T)>>(terms: I) -> Self {
        let mut coeffs: Vec<T> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, T::zero());
            }
            coeffs[e] = coeffs[e].add_ref(&c);
        }
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Returns `f(x^a)`.
    pub fn substitute_power(&self, a: usize) -> Result<Self, PolyError> {
        if a == 0 {
            return Err(PolyError::ZeroExponent);
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * a + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * a] = c.clone();
        }
        Ok(Poly { coeffs })
    }

    /// Returns `x^deg(f) * f(1/x)`.
    pub fn reverse_coeffs(&self) -> Result<Self, PolyError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Ok(Poly { coeffs })
            }
            _ => Err(PolyError::ZeroConstantTerm),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul_ref(v).add_ref(c))
    }

    pub fn map<U: Coeff, F: Fn(&T) -> U>(&self, f: F) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    fn zip_with<F: Fn(&T, &T) -> T>(&self, rhs: &Self, f: F) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Poly::new(coeffs)
    }

    fn convolve(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Poly::new(coeffs)
    }

    /// `self - c * x^shift * rhs`, skipping zero coefficients of `rhs`.
    fn sub_scaled_shifted(&mut self, rhs: &Self, c: &T, shift: usize) {
        if rhs.coeffs.len() + shift > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len() + shift, T::zero());
        }
        for (i, b) in rhs.coeffs.iter().enumerate() {
            if !b.is_zero() {
                let slot = &mut self.coeffs[i + shift];
                *slot = slot.sub_ref(&b.mul_ref(c));
            }
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl<T: Coeff> Add<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        self.zip_with(rhs, T::add_ref)
    }
}

impl<T: Coeff> Sub<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        self.zip_with(rhs, T::sub_ref)
    }
}

impl<T: Coeff> Mul<&Poly<T>> for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        self.convolve(rhs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Coeff> $tr<Poly<T>> for Poly<T>
        {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Exact value of the polynomial at an integer.
    pub fn eval_at(&self, v: &BigInt) -> BigInt {
        self.eval(v)
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides every coefficient by `d`; the caller guarantees exactness.
    pub fn div_exact(&self, d: &BigInt) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c / d).collect())
    }

    /// Pseudo-remainder: `lc(g)^(deg f - deg g + 1) * f mod g`.
    pub fn pseudo_rem(&self, g: &IntPoly) -> Result<IntPoly, PolyError> {
        let gd = g.degree().finite().ok_or(PolyError::DivisionByZero)?;
        let Some(fd) = self.degree().finite() else {
            return Ok(Poly::zero());
        };
        if fd < gd {
            return Ok(self.clone());
        }
        let lc = g.leading_coeff().expect("nonzero divisor");
        let mut r = self.clone();
        let mut steps = fd - gd + 1;
        while let Some(rd) = r.degree().finite() {
            if rd < gd {
                break;
            }
            let top = r.coeffs[rd].clone();
            r = r.scale(lc);
            r.sub_scaled_shifted(g, &top, rd - gd);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lc.clone(), steps));
        }
        Ok(r)
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl RatPoly {
    /// Euclidean division `self = g * q + r` with `deg r < deg g`.
    pub fn div_rem(&self, g: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
        let gd = g.degree().finite().ok_or(PolyError::DivisionByZero)?;
        let Some(fd) = self.degree().finite() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if fd < gd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc_inv = g.leading_coeff().expect("nonzero divisor").recip();
        let mut q = vec![BigRational::zero(); fd - gd + 1];
        let mut r = self.clone();
        while let Some(rd) = r.degree().finite() {
            if rd < gd {
                break;
            }
            let t = &r.coeffs[rd] * &lc_inv;
            r.sub_scaled_shifted(g, &t, rd - gd);
            q[rd - gd] = t;
        }
        Ok((Poly::new(q), r))
    }

    /// Least common multiple of the (reduced) coefficient denominators; 1 for
    /// the zero polynomial.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(Poly::new)
    }

    /// True when every denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        self.coeffs.iter().all(|c| is_power_of_two(c.denom()))
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }
}

pub(crate) fn is_power_of_two(v: &BigInt) -> bool {
    v.is_positive() && v.trailing_zeros() == Some(v.bits() - 1)
}

/// The trinomial `x^n - x^k + 1` with `0 < k < n`, and through it the modulus
/// family `2^(cn) - 2^(ck) + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trinomial {
    n: usize,
    k: usize,
}

impl Trinomial {
    pub fn new(n: usize, k: usize) -> Result<Self, PolyError> {
        if k == 0 || k >= n {
            return Err(PolyError::InvalidTrinomial { n, k });
        }
        Ok(Trinomial { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn to_poly(&self) -> IntPoly {
        Poly::from_terms([
            (self.n, BigInt::one()),
            (self.k, -BigInt::one()),
            (0, BigInt::one()),
        ])
    }

    /// `x^(an) - x^(ak) + 1`.
    pub fn scaled(&self, a: usize) -> Result<Self, PolyError> {
        if a == 0 {
            return Err(PolyError::ZeroExponent);
        }
        Trinomial::new(self.n * a, self.k * a)
    }

    /// `x^n - x^(n-k) + 1`, the coefficient reversal.
    pub fn reflected(&self) -> Self {
        Trinomial {
            n: self.n,
            k: self.n - self.k,
        }
    }

    /// `2^(cn) - 2^(ck) + 1`.
    pub fn modulus(&self, c: usize) -> num_bigint::BigUint {
        let one = num_bigint::BigUint::one();
        (&one << (c * self.n)) - (&one << (c * self.k)) + one
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} - x^{} + 1", self.n, self.k)
    }
}
