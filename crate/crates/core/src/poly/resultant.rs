//! Resultants of multivariate polynomials with respect to one variable,
//! via the Sylvester matrix and fraction-free (Bareiss) elimination. All
//! divisions along the way are exact, so coefficients stay in Z.

use super::gcd::exact_div;
use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Resultant of `f` and `g` with respect to variable `i`, eliminating it.
/// Zero iff f and g share a factor of positive degree in that variable
/// (both viewed over the fraction field of the remaining variables).
pub fn resultant(f: &MPoly, g: &MPoly, i: usize) -> Result<MPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let m = f.degree_in(i).unwrap() as usize;
    let n = g.degree_in(i).unwrap() as usize;
    if m == 0 && n == 0 {
        return Ok(MPoly::one(&vars));
    }
    if m == 0 {
        return Ok(f.pow(n as u32));
    }
    if n == 0 {
        return Ok(g.pow(m as u32));
    }
    let fc = f.coeffs_in(i);
    let gc = g.coeffs_in(i);
    let size = m + n;
    let zero = MPoly::zero(&vars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for (r, row) in mat.iter_mut().enumerate().take(n) {
        for (k, c) in fc.iter().enumerate() {
            row[r + m - k] = c.clone();
        }
    }
    for (r, row) in mat.iter_mut().enumerate().skip(n) {
        let r = r - n;
        for (k, c) in gc.iter().enumerate() {
            row[r + n - k] = c.clone();
        }
    }
    bareiss_det(mat, &zero)
}

/// Discriminant-style overlap test: resultant of f and its derivative.
pub fn discriminant(f: &MPoly, i: usize) -> Result<MPoly> {
    resultant(f, &f.derivative(i), i)
}

/// Fraction-free determinant. Each elimination step divides exactly by
/// the previous pivot, keeping entries polynomial.
fn bareiss_det(mut m: Vec<Vec<MPoly>>, zero: &MPoly) -> Result<MPoly> {
    let n = m.len();
    let vars: Vec<&str> = zero.vars().iter().map(String::as_str).collect();
    let mut sign = 1i32;
    let mut prev = MPoly::one(&vars);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(zero.clone()),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let t = m[k][k]
                    .mul(&m[r][c])?
                    .sub(&m[r][k].mul(&m[k][c])?)?;
                m[r][c] = exact_div(&t, &prev).expect("Bareiss division is exact");
            }
            m[r][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::gcd::divides;

    fn p(text: &str) -> MPoly {
        MPoly::parse(text, &["a", "b", "c"]).unwrap()
    }

    #[test]
    fn shared_root_gives_zero() {
        // both vanish on b = a
        let f = p("b^2 - a^2");
        let g = p("b - a");
        assert!(resultant(&f, &g, 1).unwrap().is_zero());
    }

    #[test]
    fn eliminates_a_variable() {
        // b = a^2 and b = a + 2 meet where a^2 - a - 2 = 0
        let f = p("b - a^2");
        let g = p("b - a - 2");
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r.primitive_part(), p("a^2 - a - 2").primitive_part());
    }

    #[test]
    fn univariate_matches_root_product() {
        // res(x^2 - 1, x - 2) = (2^2 - 1) = 3 up to sign
        let f = p("a^2 - 1");
        let g = p("a - 2");
        let r = resultant(&f, &g, 0).unwrap();
        assert_eq!(r, p("3"));
    }

    #[test]
    fn multiplicative_in_each_argument() {
        let f = p("a*b + 1");
        let g = p("b^2 + a");
        let h = p("b - a + 2");
        let lhs = resultant(&f.mul(&g).unwrap(), &h, 1).unwrap();
        let rf = resultant(&f, &h, 1).unwrap();
        let rg = resultant(&g, &h, 1).unwrap();
        assert_eq!(lhs, rf.mul(&rg).unwrap());
    }

    #[test]
    fn degree_zero_arguments() {
        let f = p("a + 1");
        let g = p("b^2 + b + a");
        let r = resultant(&f, &g, 1).unwrap();
        assert_eq!(r, p("(a + 1)^2"));
    }

    #[test]
    fn repeated_root_kills_discriminant() {
        let f = p("(b - a)^2 * (b + 1)");
        assert!(discriminant(&f, 1).unwrap().is_zero());
        let sep = p("(b - a) * (b + 1)");
        let d = discriminant(&sep, 1).unwrap();
        assert!(!d.is_zero());
        // vanishes exactly where the two roots collide: a = -1
        assert!(divides(&p("a + 1"), &d));
    }
}
