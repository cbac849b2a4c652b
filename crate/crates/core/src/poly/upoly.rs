//! Dense univariate polynomials over the integers and rationals, with
//! exact real-root counting via Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::mpoly::MPoly;

/// Integer univariate polynomial; `coeffs[i]` multiplies x^i, leading
/// coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> UPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UPoly {
        UPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> UPoly {
        UPoly { coeffs: vec![] }
    }

    /// Extracts the univariate polynomial from an MPoly that uses only
    /// variable `var`.
    pub fn from_mpoly(f: &MPoly, var: usize) -> Result<UPoly> {
        let mut coeffs = vec![BigInt::zero(); f.degree_in(var).unwrap_or(0) as usize + 1];
        for (e, c) in f.terms() {
            if e.iter().enumerate().any(|(i, &x)| i != var && x > 0) {
                return Err(Error::ArityMismatch);
            }
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(UPoly::new(coeffs))
    }

    pub fn to_mpoly(&self, vars: &[&str], var: usize) -> MPoly {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; vars.len()];
            e[var] = i as u32;
            terms.push((e, c.clone()));
        }
        MPoly::from_terms(vars, terms).expect("consistent arity")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UPoly::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn to_rational(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    /// Primitive gcd over the integers.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let g = self.to_rational().gcd(&other.to_rational());
        g.clear_denominators().primitive_part()
    }

    /// The squarefree part, primitive with positive lead.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() || self.degree() == Some(0) {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let q = self
            .to_rational()
            .div_rem(&g.to_rational())
            .0
            .clear_denominators();
        q.primitive_part()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly(&["x"], 0))
    }
}

/// Rational univariate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> QPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> QPoly {
        QPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); rem.len() - dd];
        let lead = divisor.leading();
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lead;
            if q.is_zero() {
                continue;
            }
            quo[i - dd] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let d = &q * c;
                rem[i - dd + j] -= d;
            }
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading();
            a.scale(&lead.recip())
        }
    }

    /// Extended gcd: returns (g, s, t) monic with s*self + t*other = g.
    pub fn extended_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead = r0.leading().recip();
        (
            r0.scale(&lead),
            s0.scale(&lead),
            t0.scale(&lead),
        )
    }

    /// Multiplies through by the lcm of the denominators.
    pub fn clear_denominators(&self) -> UPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = num_integer::lcm(l, c.denom().clone());
        }
        UPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
    }

    /// Sign of the polynomial at +infinity (or -infinity).
    fn sign_at_infinity(&self, positive: bool) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let lead = self.leading();
        let mut s: i8 = if lead.is_positive() { 1 } else { -1 };
        if !positive && self.degree().unwrap() % 2 == 1 {
            s = -s;
        }
        s
    }
}

/// An interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

fn sign_variations(signs: &[i8]) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Exact count of distinct real roots of `u` in (lo, hi], via a Sturm
/// chain on the squarefree part.
pub fn sturm_real_roots(u: &UPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = u.squarefree_part().to_rational();
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let [.., p0, p1] = chain.as_slice() else {
            unreachable!()
        };
        if p1.is_zero() {
            chain.pop();
            break;
        }
        let r = p0.div_rem(p1).1.neg();
        chain.push(r);
    }
    let signs_at = |b: &Bound| -> Vec<i8> {
        chain
            .iter()
            .map(|p| match b {
                Bound::NegInf => p.sign_at_infinity(false),
                Bound::PosInf => p.sign_at_infinity(true),
                Bound::Finite(x) => {
                    let v = p.eval(x);
                    if v.is_zero() {
                        0
                    } else if v.is_positive() {
                        1
                    } else {
                        -1
                    }
                }
            })
            .collect()
    };
    let vl = sign_variations(&signs_at(lo));
    let vh = sign_variations(&signs_at(hi));
    Ok(vl.saturating_sub(vh))
}

/// Distinct real roots over the whole line.
pub fn real_root_count(u: &UPoly) -> Result<usize> {
    sturm_real_roots(u, &Bound::NegInf, &Bound::PosInf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn golden_ratio_like_quadratic_has_two_real_roots() {
        // roots (1 +- sqrt(5))/4
        let u = UPoly::from_ints(&[-1, -2, 4]);
        assert_eq!(real_root_count(&u).unwrap(), 2);
    }

    #[test]
    fn no_real_roots() {
        let u = UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(real_root_count(&u).unwrap(), 0);
    }

    #[test]
    fn interval_semantics_are_half_open() {
        // c*(c-1): roots 0 and 1
        let u = UPoly::from_ints(&[0, -1, 1]);
        assert_eq!(real_root_count(&u).unwrap(), 2);
        assert_eq!(
            sturm_real_roots(&u, &Bound::Finite(q(0, 1)), &Bound::Finite(q(1, 1))).unwrap(),
            1
        );
        assert_eq!(
            sturm_real_roots(&u, &Bound::Finite(q(-1, 1)), &Bound::Finite(q(1, 2))).unwrap(),
            1
        );
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-2)^2 * (x+1)
        let u = UPoly::from_ints(&[-2, 1])
            .mul(&UPoly::from_ints(&[-2, 1]))
            .mul(&UPoly::from_ints(&[1, 1]));
        assert_eq!(real_root_count(&u).unwrap(), 2);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = UPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let g = UPoly::from_ints(&[1, 1]); // x + 1
        assert_eq!(f.gcd(&g), g);
        let sq = UPoly::from_ints(&[1, 1]).mul(&UPoly::from_ints(&[1, 1])).mul(&UPoly::from_ints(&[-1, 1]));
        assert_eq!(sq.squarefree_part(), f);
    }

    #[test]
    fn qpoly_division() {
        let f = UPoly::from_ints(&[-1, 0, 0, 1]).to_rational(); // x^3 - 1
        let g = UPoly::from_ints(&[-1, 1]).to_rational(); // x - 1
        let (q1, r) = f.div_rem(&g);
        assert!(r.is_zero());
        assert_eq!(q1, UPoly::from_ints(&[1, 1, 1]).to_rational());
    }

    #[test]
    fn extended_gcd_is_bezout() {
        let f = UPoly::from_ints(&[-1, 0, 1]).to_rational();
        let g = UPoly::from_ints(&[2, 1]).to_rational();
        let (d, s, t) = f.extended_gcd(&g);
        assert_eq!(d, QPoly::one());
        assert_eq!(s.mul(&f).add(&t.mul(&g)), QPoly::one());
    }

    #[test]
    fn mpoly_round_trip() {
        let f = MPoly::parse("5*b^2 + 8*b + 2", &["a", "b"]).unwrap();
        let u = UPoly::from_mpoly(&f, 1).unwrap();
        assert_eq!(u, UPoly::from_ints(&[2, 8, 5]));
        assert_eq!(u.to_mpoly(&["a", "b"], 1), f);
        assert!(UPoly::from_mpoly(&f, 0).is_err());
    }
}
