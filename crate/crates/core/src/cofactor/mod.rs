//! Bezout cofactors of monic integer polynomials over the rationals, the
//! reduced resultant, and scalable inverse polynomials for trinomial pairs.

mod scalable;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::bigpoly::{IntPoly, PolyError, RatPoly};
use crate::resolve::resultant;

pub(crate) use scalable::eval_mod;
pub use scalable::{
    parse_certificate, scalable_inverse_pair, verify_scalability, write_certificate, ScalabilityReport,
    ScalableInversePair, ScaleOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CofactorError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomials share a common factor of degree {0}")]
    CommonFactor(usize),
    #[error("polynomials must have positive degree")]
    Constant,
    #[error("cofactors are not dyadic (reduced resultant {0})")]
    NotDyadic(BigInt),
    #[error("Bezout identity failed after {0}")]
    IdentityBroken(&'static str),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Unique `a, b` with `a f + b g = 1`, `deg a < deg g`, `deg b < deg f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub f: IntPoly,
    pub g: IntPoly,
    pub a: RatPoly,
    pub b: RatPoly,
    /// lcm of the reduced denominators of `a` and `b`
    pub reduced_resultant: BigInt,
    pub resultant: BigInt,
}

impl BezoutCertificate {
    /// Every coefficient denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        self.a.is_dyadic() && self.b.is_dyadic()
    }
}

fn degree_of(p: &IntPoly) -> Result<usize, CofactorError> {
    match p.degree().finite() {
        Some(0) | None => Err(CofactorError::Constant),
        Some(d) if p.is_monic() => Ok(d),
        Some(_) => Err(CofactorError::NotMonic),
    }
}

/// `s` with `s f = gcd(f, g) (mod g)`, gcd made monic, by the extended
/// Euclidean algorithm over the rationals.
fn euclid_cofactor(f: &RatPoly, g: &RatPoly) -> Result<(RatPoly, RatPoly), PolyError> {
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        // keep the remainder monic; coefficients stay smaller
        if let Some(lc) = r1.leading_coeff().cloned() {
            let inv = lc.recip();
            r1 = r1.scale(&inv);
            s1 = s1.scale(&inv);
        }
    }
    let inv = r0.leading_coeff().expect("f is nonzero").recip();
    Ok((r0.scale(&inv), s0.scale(&inv)))
}

/// Bezout cofactors of two monic coprime polynomials, verified by exact
/// multiplication before return.
pub fn bezout_cofactors(f: &IntPoly, g: &IntPoly) -> Result<BezoutCertificate, CofactorError> {
    let df = degree_of(f)?;
    let dg = degree_of(g)?;
    let (fr, gr) = (f.to_rational(), g.to_rational());
    let (gcd, s) = euclid_cofactor(&fr, &gr)?;
    let gd = gcd.degree().finite().expect("gcd is monic");
    if gd > 0 {
        return Err(CofactorError::CommonFactor(gd));
    }
    let (_, a) = s.div_rem(&gr)?;
    let (b, rem) = (&RatPoly::one() - &(&a * &fr)).div_rem(&gr)?;
    if !rem.is_zero() || &(&a * &fr) + &(&b * &gr) != RatPoly::one() {
        return Err(CofactorError::IdentityBroken("extended Euclid"));
    }
    debug_assert!(a.degree().finite().is_none_or(|d| d < dg));
    debug_assert!(b.degree().finite().is_none_or(|d| d < df));

    let reduced_resultant = a.denominator_lcm().lcm(&b.denominator_lcm());
    let resultant = resultant(f, g).expect("nonzero inputs").0;
    Ok(BezoutCertificate {
        f: f.clone(),
        g: g.clone(),
        a,
        b,
        reduced_resultant,
        resultant,
    })
}

/// Smallest positive integer in the ideal `(f, g)` of `Z[x]`.
pub fn reduced_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, CofactorError> {
    Ok(bezout_cofactors(f, g)?.reduced_resultant)
}

/// True when both cofactors have only power-of-two denominators.
pub fn dyadic_cofactor_check(f: &IntPoly, g: &IntPoly) -> Result<bool, CofactorError> {
    Ok(bezout_cofactors(f, g)?.is_dyadic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::Trinomial;
    use crate::resolve::dyadically_resolve;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Generator of `(f, g) ∩ Z` from the row lattice of the Sylvester matrix:
    /// eliminate every non-constant column by integer row operations; the
    /// rows left over span the constants.
    fn ideal_constant_generator(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (m, n) = (f.degree().finite().unwrap(), g.degree().finite().unwrap());
        let width = m + n;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (poly, shifts) in [(f, n), (g, m)] {
            for s in 0..shifts {
                let mut row = vec![BigInt::zero(); width];
                for (i, c) in poly.coeffs().iter().enumerate() {
                    row[i + s] = c.clone();
                }
                rows.push(row);
            }
        }
        for col in (1..width).rev() {
            loop {
                let mut live: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
                if live.len() <= 1 {
                    if let Some(&r) = live.first() {
                        rows.remove(r);
                    }
                    break;
                }
                live.sort_by_key(|&r| rows[r][col].abs());
                let pivot = rows[live[0]].clone();
                for &r in &live[1..] {
                    let t = &rows[r][col] / &pivot[col];
                    for (x, y) in rows[r].iter_mut().zip(&pivot) {
                        *x -= &t * y;
                    }
                }
            }
        }
        rows.iter().fold(BigInt::zero(), |acc, r| acc.gcd(&r[0]))
    }

    /// Strips from `v` every prime that divides `by`.
    fn strip_primes_of(mut v: BigInt, by: &BigInt) -> BigInt {
        loop {
            let d = v.gcd(by);
            if d.is_one() {
                return v.abs();
            }
            v /= d;
        }
    }

    #[test]
    fn worked_example() {
        let c = bezout_cofactors(&p(&[-1, 0, 1]), &p(&[3, 0, 1])).unwrap();
        assert_eq!(c.a, RatPoly::constant(q(-1, 4)));
        assert_eq!(c.b, RatPoly::constant(q(1, 4)));
        assert_eq!(c.reduced_resultant, BigInt::from(4));
        assert_eq!(c.resultant, BigInt::from(16));
        assert!(c.is_dyadic());
    }

    #[test]
    fn consecutive_linears() {
        let c = bezout_cofactors(&p(&[0, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(c.a, RatPoly::constant(q(-1, 1)));
        assert_eq!(c.b, RatPoly::one());
        assert_eq!(c.reduced_resultant, BigInt::one());
    }

    #[test]
    fn pair_20_12_4_is_dyadic() {
        let f = Trinomial::new(20, 12).unwrap().to_poly();
        let g = Trinomial::new(20, 4).unwrap().to_poly();
        let c = bezout_cofactors(&f, &g).unwrap();
        assert!(c.is_dyadic());
        assert_eq!(c.a, IntPoly::from_terms([(8, BigInt::one()), (0, BigInt::one())]).to_rational());
    }

    #[test]
    fn errors() {
        assert_eq!(
            bezout_cofactors(&p(&[-1, 0, 1]), &p(&[-1, 1])),
            Err(CofactorError::CommonFactor(1))
        );
        assert_eq!(bezout_cofactors(&p(&[1, 2]), &p(&[1, 1])), Err(CofactorError::NotMonic));
        assert_eq!(bezout_cofactors(&p(&[1]), &p(&[1, 1])), Err(CofactorError::Constant));
    }

    #[test]
    fn agrees_with_resultant_verdicts_small() {
        for n in 2..=16 {
            for k in 1..n {
                for j in k + 1..n {
                    let t = |e| Trinomial::new(n, e).unwrap();
                    let v = dyadically_resolve(t(k), t(j)).unwrap();
                    match dyadic_cofactor_check(&t(k).to_poly(), &t(j).to_poly()) {
                        Ok(d) => assert_eq!(d, v.resolves, "n={n} k={k} j={j}"),
                        Err(CofactorError::CommonFactor(_)) => assert!(v.odd_part.is_zero()),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_oracle_on_example() {
        assert_eq!(ideal_constant_generator(&p(&[-1, 0, 1]), &p(&[3, 0, 1])), BigInt::from(4));
    }

    fn monic(max_deg: usize) -> impl Strategy<Value = IntPoly> {
        (1..=max_deg).prop_flat_map(|d| {
            prop::collection::vec(-4i64..=4, d).prop_map(|mut c| {
                c.push(1);
                IntPoly::from_i64s(&c)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reduced_resultant_matches_lattice(f in monic(6), g in monic(6)) {
            match bezout_cofactors(&f, &g) {
                Ok(c) => {
                    prop_assert_eq!(&c.reduced_resultant, &ideal_constant_generator(&f, &g));
                    prop_assert!((&c.resultant % &c.reduced_resultant).is_zero());
                    prop_assert!(strip_primes_of(c.resultant.clone(), &c.reduced_resultant).is_one());
                    prop_assert!(strip_primes_of(c.reduced_resultant.clone(), &c.resultant).is_one());
                }
                Err(CofactorError::CommonFactor(_)) => {
                    prop_assert!(resultant(&f, &g).unwrap().is_zero());
                }
                Err(e) => prop_assert!(false, "{}", e),
            }
        }

        #[test]
        fn shares_primes_with_resultant(f in monic(8), g in monic(8)) {
            if let Ok(c) = bezout_cofactors(&f, &g) {
                prop_assert!((&c.resultant % &c.reduced_resultant).is_zero());
                prop_assert!(strip_primes_of(c.resultant.clone(), &c.reduced_resultant).is_one());
            }
        }
    }
}
