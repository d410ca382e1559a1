//! Resultants of integer polynomials by the subresultant remainder sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigpoly::IntPoly;

fn pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

/// `res(f, g)` over the rationals for nonzero integer polynomials.
///
/// Follows the classical subresultant algorithm with content removal, so
/// intermediate coefficients stay bounded by the subresultant determinants.
pub(crate) fn subresultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(df), Some(dg)) = (f.degree().finite(), g.degree().finite()) else {
        return BigInt::zero();
    };
    if df == 0 {
        return pow(&f.coeffs()[0], dg);
    }
    if dg == 0 {
        return pow(&g.coeffs()[0], df);
    }

    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -sign;
        }
    }

    let ca = a.content();
    let cb = b.content();
    let da = a.degree().finite().unwrap();
    let db = b.degree().finite().unwrap();
    let scale = pow(&ca, db) * pow(&cb, da);
    a = a.div_exact(&ca);
    b = b.div_exact(&cb);

    let mut g_acc = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().finite().unwrap();
        let db = b.degree().finite().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b).expect("divisor is nonzero");
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let divisor = &g_acc * pow(&h, delta);
        b = r.div_exact(&divisor);
        g_acc = a.leading_coeff().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow(&g_acc, delta) / pow(&h, delta - 1)
        };
        let db = b.degree().finite().unwrap();
        if db == 0 {
            let da = a.degree().finite().unwrap();
            let lb = b.leading_coeff().unwrap();
            // h <- lc(b)^deg(a) / h^(deg(a) - 1)
            let tail = if da == 0 {
                h.clone()
            } else {
                pow(lb, da) / pow(&h, da - 1)
            };
            return sign * scale * tail;
        }
    }
}

/// Determinant of the Sylvester matrix by fraction-free elimination. Kept as an
/// independent oracle for the subresultant path.
#[cfg(test)]
pub(crate) fn sylvester_determinant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(m), Some(n)) = (f.degree().finite(), g.degree().finite()) else {
        return BigInt::zero();
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    // rows hold coefficients from the leading term down
    for i in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        let Some(piv) = (k..size).find(|&r| !mat[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            mat.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
