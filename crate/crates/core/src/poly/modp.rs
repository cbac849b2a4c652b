//! Univariate arithmetic over prime fields: irreducibility testing and
//! Berlekamp factorization for small primes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

use super::upoly::UPoly;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial over F_p; leading coefficient nonzero, coefficients
/// in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> FpPoly {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> FpPoly {
        FpPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn from_upoly(u: &UPoly, p: u64) -> FpPoly {
        let bp = BigInt::from(p);
        FpPoly::new(
            p,
            u.coeffs()
                .iter()
                .map(|c| (((c % &bp) + &bp) % &bp).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * (x % self.p) + c) % self.p;
        }
        acc
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + other.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, coeffs)
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|&k| k * (c % self.p) % self.p).collect())
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // Fermat: p prime
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv_mod(self.leading()))
    }

    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!divisor.is_zero(), "division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv_lead = self.inv_mod(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i] * inv_lead % self.p;
            if q == 0 {
                continue;
            }
            quo[i - dd] = q;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = (rem[i - dd + j] + self.p - q * c % self.p) % self.p;
            }
        }
        (FpPoly::new(self.p, quo), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s*self + t*other = g, g monic.
    pub fn extended_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::constant(self.p, 1), FpPoly::zero(self.p));
        let (mut t0, mut t1) = (FpPoly::zero(self.p), FpPoly::constant(self.p, 1));
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
        let inv = self.inv_mod(r0.leading());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * (i as u64 % self.p) % self.p)
                .collect(),
        )
    }

    /// base^e mod self
    fn pow_mod(&self, base: &FpPoly, mut e: u64) -> FpPoly {
        let mut result = FpPoly::constant(self.p, 1);
        let mut b = base.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        result
    }

    /// x^(p^k) mod self, by k-fold Frobenius
    fn frobenius_power(&self, k: usize) -> FpPoly {
        let mut out = FpPoly::x(self.p).rem(self);
        for _ in 0..k {
            out = self.pow_mod(&out, self.p);
        }
        out
    }

    /// Rabin's test: irreducible iff x^(p^n) = x mod f and for every prime
    /// divisor q of n the gcd of x^(p^(n/q)) - x with f is constant.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let x = FpPoly::x(self.p);
        let mut m = n;
        let mut prime_divs = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                prime_divs.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        for q in prime_divs {
            let h = self.frobenius_power(n / q).sub(&x);
            if self.gcd(&h).degree() != Some(0) {
                return false;
            }
        }
        self.frobenius_power(n).sub(&x).rem(self).is_zero()
    }

    /// Complete monic factorization of a squarefree monic input, by
    /// Berlekamp's algorithm. Requires small p (the split scans F_p).
    pub fn berlekamp_factor(&self) -> Vec<FpPoly> {
        let f = self.monic();
        let n = match f.degree() {
            None | Some(0) => return vec![],
            Some(1) => return vec![f],
            Some(n) => n,
        };
        debug_assert_eq!(f.gcd(&f.derivative()).degree(), Some(0), "input squarefree");
        // rows of Q - I: coefficients of x^(ip) mod f minus e_i
        let mut m: Vec<Vec<u64>> = Vec::with_capacity(n);
        for i in 0..n {
            let xi = f.pow_mod(&FpPoly::x(self.p), (i as u64) * self.p);
            let mut row: Vec<u64> = (0..n).map(|j| xi.coeff(j)).collect();
            row[i] = (row[i] + self.p - 1) % self.p;
            m.push(row);
        }
        let basis = nullspace(&m, self.p);
        let mut factors = vec![f];
        let target = basis.len();
        for v in &basis {
            if factors.len() == target {
                break;
            }
            let vp = FpPoly::new(self.p, v.clone());
            if vp.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut next = Vec::new();
            for w in factors {
                if w.degree() == Some(1) {
                    next.push(w);
                    continue;
                }
                let mut pieces = vec![w];
                for s in 0..self.p {
                    let mut split = Vec::new();
                    for piece in pieces {
                        let d = piece.gcd(&vp.sub(&FpPoly::constant(self.p, s)));
                        match d.degree() {
                            Some(k) if k > 0 && k < piece.degree().unwrap() => {
                                let (q, _) = piece.div_rem(&d);
                                split.push(d);
                                split.push(q.monic());
                            }
                            _ => split.push(piece),
                        }
                    }
                    pieces = split;
                }
                next.extend(pieces);
            }
            factors = next;
        }
        factors.sort();
        factors
    }
}

/// Left nullspace basis of the matrix over F_p (vectors v with v*M = 0).
fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    // transpose so we solve M^T x = 0 by column reduction
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| m[i][j]).collect())
        .collect();
    let inv = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut rank_rows = Vec::new();
    for col in 0..n {
        let Some(r) = (0..n)
            .find(|&r| a[r][col] != 0 && !rank_rows.contains(&r))
        else {
            continue;
        };
        let iv = inv(a[r][col]);
        for c in 0..n {
            a[r][c] = a[r][c] * iv % p;
        }
        for rr in 0..n {
            if rr != r && a[rr][col] != 0 {
                let f = a[rr][col];
                for c in 0..n {
                    a[rr][c] = (a[rr][c] + p - f * a[r][c] % p) % p;
                }
            }
        }
        pivot_col_of_row[r] = Some(col);
        rank_rows.push(r);
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.iter().flatten().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, pc) in pivot_col_of_row.iter().enumerate() {
            if let Some(pc) = pc {
                // x_pc = -a[r][free]
                v[*pc] = (p - a[r][free]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// True iff `h` reduces mod `p` to an irreducible polynomial of positive
/// degree. Errors when p is not prime.
pub fn fp_irreducible(h: &UPoly, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(FpPoly::from_upoly(h, p).is_irreducible())
}

/// Centered representative in (-m/2, m/2].
pub fn centered(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = ((c % m) + m) % m;
    if &r * 2 > *m {
        r -= m;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flagship_quadratic_is_irreducible_mod_7() {
        let h = UPoly::from_ints(&[2, 8, 5]);
        assert!(fp_irreducible(&h, 7).unwrap());
        // brute force agreement: no roots mod 7
        let f = FpPoly::from_upoly(&h, 7);
        assert!((0..7).all(|x| f.eval(x) != 0));
    }

    #[test]
    fn squares_and_roots_are_reducible() {
        assert!(!fp_irreducible(&UPoly::from_ints(&[0, 0, 1]), 7).unwrap()); // b^2
        assert!(!fp_irreducible(&UPoly::from_ints(&[1, 0, 1]), 5).unwrap()); // roots +-2
        assert!(fp_irreducible(&UPoly::from_ints(&[1, 0, 1]), 7).unwrap());
    }

    #[test]
    fn non_prime_modulus_is_an_error() {
        assert!(fp_irreducible(&UPoly::from_ints(&[1, 1]), 6).is_err());
        assert!(is_prime(9973));
        assert!(!is_prime(1));
    }

    #[test]
    fn rabin_agrees_with_exhaustive_divisor_search() {
        // all monic cubics mod 3 against trial division by monic linears
        // and quadratics
        let p = 3;
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let f = FpPoly::new(p, vec![c, b, a, 1]);
                    let mut has_factor = false;
                    for d1 in 0..p {
                        if f.rem(&FpPoly::new(p, vec![d1, 1])).is_zero() {
                            has_factor = true;
                        }
                    }
                    assert_eq!(f.is_irreducible(), !has_factor, "{:?}", f.coeffs());
                }
            }
        }
    }

    #[test]
    fn berlekamp_splits_a_product() {
        // (x^2+1)(x+2)(x+6) mod 7, squarefree
        let p = 7;
        let f = FpPoly::new(p, vec![1, 0, 1])
            .mul(&FpPoly::new(p, vec![2, 1]))
            .mul(&FpPoly::new(p, vec![6, 1]));
        let factors = f.berlekamp_factor();
        assert_eq!(factors.len(), 3);
        let product = factors
            .iter()
            .fold(FpPoly::constant(p, 1), |acc, g| acc.mul(g));
        assert_eq!(product, f.monic());
        assert!(factors.iter().all(|g| g.is_irreducible()));
    }

    #[test]
    fn berlekamp_on_irreducible_returns_self() {
        let p = 5;
        let f = FpPoly::new(p, vec![2, 1, 1]); // x^2+x+2, no roots mod 5
        assert!((0..5).all(|x| f.eval(x) != 0));
        let factors = f.berlekamp_factor();
        assert_eq!(factors, vec![f]);
    }

    #[test]
    fn centered_representatives() {
        let m = BigInt::from(7);
        assert_eq!(centered(&BigInt::from(5), &m), BigInt::from(-2));
        assert_eq!(centered(&BigInt::from(3), &m), BigInt::from(3));
        assert_eq!(centered(&BigInt::from(-9), &m), BigInt::from(-2));
    }
}
