//! Scalable inverse polynomials for a pair of trinomials.
//!
//! For `f = x^n - x^k + 1` and `g = x^n - x^j + 1`, a polynomial `a` with
//! dyadic coefficients, an integer constant term, a positive leading
//! coefficient and degree at most `n` is a scalable inverse of `f` modulo `g`
//! when `f(2^c) a(2^c) = 1 (mod g(2^c))` for all large `c`. Starting from the
//! Bezout identity `a f + b g = 1`:
//!
//! 1. `a <- a - s g`, `b <- b + s f` with `s` the fractional part of `a(0)`;
//!    since `f(0) = g(0) = 1` both constant terms become integers.
//! 2. `a <- a + c' g`, `b <- b - c' f` with the least positive `c'` making the
//!    leading coefficient of `a` positive, when it is not already.
//!
//! The inverse of `g` modulo `f` is built by the same steps with the roles
//! swapped.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{bezout_cofactors, CofactorError};
use crate::bigpoly::{IntPoly, RatPoly, Trinomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalableInversePair {
    pub n: usize,
    pub k: usize,
    pub j: usize,
    /// inverse of `x^n - x^k + 1` modulo `x^n - x^j + 1`
    pub a: RatPoly,
    /// inverse of `x^n - x^j + 1` modulo `x^n - x^k + 1`
    pub b: RatPoly,
    pub reduced_resultant: BigInt,
    pub resultant: BigInt,
}

fn check_identity(a: &RatPoly, f: &RatPoly, b: &RatPoly, g: &RatPoly, step: &'static str) -> Result<(), CofactorError> {
    if &(a * f) + &(b * g) == RatPoly::one() {
        Ok(())
    } else {
        Err(CofactorError::IdentityBroken(step))
    }
}

/// Adjusts the `f`-cofactor of `a f + b g = 1` into a scalable inverse of `f`
/// modulo `g`, keeping the identity exact after each step.
fn orient(mut a: RatPoly, mut b: RatPoly, f: &RatPoly, g: &RatPoly) -> Result<RatPoly, CofactorError> {
    let a0 = a.constant_term();
    let s = &a0 - a0.floor();
    if !s.is_zero() {
        a = &a - &g.scale(&s);
        b = &b + &f.scale(&s);
        check_identity(&a, f, &b, g, "constant-term adjustment")?;
    }

    let n = g.degree().finite().expect("g has positive degree");
    let lc = a.leading_coeff().cloned().unwrap_or_else(BigRational::zero);
    if !lc.is_positive() {
        let shift = if a.degree().finite() == Some(n) {
            (-lc).floor() + BigRational::one()
        } else {
            BigRational::one()
        };
        a = &a + &g.scale(&shift);
        b = &b - &f.scale(&shift);
        check_identity(&a, f, &b, g, "leading-coefficient adjustment")?;
    }
    Ok(a)
}

/// Scalable inverses for the pair `(n, k)`, `(n, j)`. Fails unless the
/// Bezout cofactors are dyadic.
pub fn scalable_inverse_pair(n: usize, k: usize, j: usize) -> Result<ScalableInversePair, CofactorError> {
    let f = Trinomial::new(n, k)?.to_poly();
    let g = Trinomial::new(n, j)?.to_poly();
    let cert = bezout_cofactors(&f, &g)?;
    if !cert.is_dyadic() {
        return Err(CofactorError::NotDyadic(cert.reduced_resultant));
    }
    let (fr, gr) = (f.to_rational(), g.to_rational());
    let a = orient(cert.a.clone(), cert.b.clone(), &fr, &gr)?;
    let b = orient(cert.b, cert.a, &gr, &fr)?;
    Ok(ScalableInversePair {
        n,
        k,
        j,
        a,
        b,
        reduced_resultant: cert.reduced_resultant,
        resultant: cert.resultant,
    })
}

impl ScalableInversePair {
    pub fn f(&self) -> Result<IntPoly, CofactorError> {
        Ok(Trinomial::new(self.n, self.k)?.to_poly())
    }

    pub fn g(&self) -> Result<IntPoly, CofactorError> {
        Ok(Trinomial::new(self.n, self.j)?.to_poly())
    }

    /// Dyadic coefficients, integer constant term, positive leading
    /// coefficient and degree at most `n`, for both polynomials.
    pub fn has_required_shape(&self) -> bool {
        [&self.a, &self.b].iter().all(|p| {
            p.is_dyadic()
                && p.constant_term().is_integer()
                && p.leading_coeff().is_some_and(|c| c.is_positive())
                && p.degree().finite().is_some_and(|d| d <= self.n)
        })
    }
}

/// Value of `p` at `2^c` reduced modulo `m`, or `None` when it is not an integer.
pub(crate) fn eval_mod(p: &RatPoly, c: u32, m: &BigUint) -> Option<BigUint> {
    let x = BigRational::from_integer(BigInt::one() << c);
    let v = p.eval(&x);
    v.is_integer()
        .then(|| v.to_integer().mod_floor(&BigInt::from(m.clone())))
        .map(|r| r.to_biguint().expect("mod_floor is nonnegative"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleOutcome {
    Holds,
    /// the polynomial is not integral at `2^c`
    NonIntegral,
    /// integral, but not an inverse modulo the other modulus
    Mismatch,
}

fn probe(p: &RatPoly, own: &Trinomial, other: &Trinomial, c: u32) -> ScaleOutcome {
    let m = other.modulus(c as usize);
    match eval_mod(p, c, &m) {
        None => ScaleOutcome::NonIntegral,
        Some(v) if (&v * own.modulus(c as usize)) % &m == BigUint::one() => ScaleOutcome::Holds,
        Some(_) => ScaleOutcome::Mismatch,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalabilityReport {
    pub shape_ok: bool,
    /// `a f = 1 (mod g)` over the rationals
    pub identity_a: bool,
    /// `b g = 1 (mod f)` over the rationals
    pub identity_b: bool,
    /// `(c, outcome for a, outcome for b)`
    pub outcomes: Vec<(u32, ScaleOutcome, ScaleOutcome)>,
}

impl ScalabilityReport {
    pub fn identities_hold(&self) -> bool {
        self.shape_ok && self.identity_a && self.identity_b
    }

    pub fn passed(&self) -> bool {
        self.identities_hold()
            && self
                .outcomes
                .iter()
                .all(|&(_, a, b)| a == ScaleOutcome::Holds && b == ScaleOutcome::Holds)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.outcomes
            .iter()
            .find(|&&(_, a, b)| a != ScaleOutcome::Holds || b != ScaleOutcome::Holds)
            .map(|&(c, _, _)| c)
    }

    /// Failing scales while the polynomial identities hold: below the point
    /// where scalability sets in, not errors.
    pub fn below_threshold(&self) -> Vec<u32> {
        if !self.identities_hold() {
            return Vec::new();
        }
        self.outcomes
            .iter()
            .filter(|&&(_, a, b)| a != ScaleOutcome::Holds || b != ScaleOutcome::Holds)
            .map(|&(c, _, _)| c)
            .collect()
    }

    /// Least tested `c` from which every larger tested scale holds.
    pub fn threshold(&self) -> Option<u32> {
        if !self.identities_hold() {
            return None;
        }
        let mut t = None;
        for &(c, a, b) in self.outcomes.iter().rev() {
            if a == ScaleOutcome::Holds && b == ScaleOutcome::Holds {
                t = Some(c);
            } else {
                break;
            }
        }
        t
    }
}

fn congruent_to_one(p: &RatPoly, f: &RatPoly, g: &RatPoly) -> bool {
    match (&(p * f) - &RatPoly::one()).div_rem(g) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => false,
    }
}

/// Checks the exact identities and probes the integer congruences at every
/// `c` in `c_range`.
pub fn verify_scalability(pair: &ScalableInversePair, c_range: RangeInclusive<u32>) -> ScalabilityReport {
    let (Ok(tf), Ok(tg)) = (Trinomial::new(pair.n, pair.k), Trinomial::new(pair.n, pair.j)) else {
        return ScalabilityReport {
            shape_ok: false,
            identity_a: false,
            identity_b: false,
            outcomes: Vec::new(),
        };
    };
    let (f, g) = (tf.to_poly().to_rational(), tg.to_poly().to_rational());
    let outcomes = c_range
        .map(|c| (c, probe(&pair.a, &tf, &tg, c), probe(&pair.b, &tg, &tf, c)))
        .collect();
    ScalabilityReport {
        shape_ok: pair.has_required_shape(),
        identity_a: congruent_to_one(&pair.a, &f, &g),
        identity_b: congruent_to_one(&pair.b, &g, &f),
        outcomes,
    }
}

fn write_coeffs(p: &RatPoly) -> String {
    let parts: Vec<String> = p
        .coeffs()
        .iter()
        .map(|c| format!("{}/{}", c.numer(), c.denom()))
        .collect();
    parts.join(",")
}

/// Text certificate:
///
/// ```text
/// SCALABLE 1
/// n=<n> k=<k> j=<j>
/// a=<num/den,...>          coefficients from degree 0 upward
/// b=<num/den,...>
/// reduced_resultant=<integer>
/// resultant=<integer>
/// verified_c=<lo>..<hi>
/// ```
pub fn write_certificate(pair: &ScalableInversePair, c_range: &RangeInclusive<u32>) -> String {
    let mut s = String::from("SCALABLE 1\n");
    let _ = writeln!(s, "n={} k={} j={}", pair.n, pair.k, pair.j);
    let _ = writeln!(s, "a={}", write_coeffs(&pair.a));
    let _ = writeln!(s, "b={}", write_coeffs(&pair.b));
    let _ = writeln!(s, "reduced_resultant={}", pair.reduced_resultant);
    let _ = writeln!(s, "resultant={}", pair.resultant);
    let _ = writeln!(s, "verified_c={}..{}", c_range.start(), c_range.end());
    s
}

fn malformed(m: impl Into<String>) -> CofactorError {
    CofactorError::Malformed(m.into())
}

fn parse_coeffs(list: &str) -> Result<RatPoly, CofactorError> {
    if list.is_empty() {
        return Ok(RatPoly::zero());
    }
    let coeffs = list
        .split(',')
        .map(|t| {
            let (n, d) = t.split_once('/').ok_or_else(|| malformed(format!("bad coefficient {t:?}")))?;
            let n: BigInt = n.parse().map_err(|_| malformed(format!("bad numerator {n:?}")))?;
            let d: BigInt = d.parse().map_err(|_| malformed(format!("bad denominator {d:?}")))?;
            if d.is_zero() {
                return Err(malformed("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatPoly::new(coeffs))
}

fn value<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, CofactorError> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix('='))
        .ok_or_else(|| malformed(format!("expected {key}=...")))
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CofactorError> {
    s.parse().map_err(|_| malformed(format!("bad {what} {s:?}")))
}

/// Parses a certificate written by [`write_certificate`].
pub fn parse_certificate(text: &str) -> Result<(ScalableInversePair, RangeInclusive<u32>), CofactorError> {
    let mut lines = text.lines();
    if lines.next() != Some("SCALABLE 1") {
        return Err(malformed("expected header `SCALABLE 1`"));
    }
    let head = lines.next().ok_or_else(|| malformed("missing n= k= j= line"))?;
    let mut it = head.split(' ');
    let n = parse_num(value(it.next(), "n")?, "n")?;
    let k = parse_num(value(it.next(), "k")?, "k")?;
    let j = parse_num(value(it.next(), "j")?, "j")?;
    let a = parse_coeffs(value(lines.next(), "a")?)?;
    let b = parse_coeffs(value(lines.next(), "b")?)?;
    let reduced_resultant = parse_num(value(lines.next(), "reduced_resultant")?, "reduced resultant")?;
    let resultant = parse_num(value(lines.next(), "resultant")?, "resultant")?;
    let range = value(lines.next(), "verified_c")?;
    let (lo, hi) = range.split_once("..").ok_or_else(|| malformed("expected verified_c=<lo>..<hi>"))?;
    let (lo, hi): (u32, u32) = (parse_num(lo, "scale")?, parse_num(hi, "scale")?);
    if lo == 0 || lo > hi {
        return Err(malformed("verified_c must be a nonempty range of positive scales"));
    }
    if lines.any(|l| !l.is_empty()) {
        return Err(malformed("trailing data"));
    }
    let pair = ScalableInversePair {
        n,
        k,
        j,
        a,
        b,
        reduced_resultant,
        resultant,
    };
    Ok((pair, lo..=hi))
}
