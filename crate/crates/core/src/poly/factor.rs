//! Factorization of univariate integer polynomials into rational
//! irreducibles: squarefree (Yun) decomposition, monic reduction, modular
//! factorization, Hensel lifting, and subset recombination. Degrees are
//! capped at desk scale.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::modp::{centered, is_prime, FpPoly};
use super::upoly::UPoly;

const DEGREE_CAP: usize = 12;

/// Complete factorization into primitive irreducible integer polynomials
/// with positive leading coefficients; repeated factors appear
/// repeatedly. The product equals the input up to a rational unit.
pub fn rational_factors(u: &UPoly) -> Result<Vec<UPoly>> {
    let deg = u.degree().ok_or(Error::ZeroPolynomial)?;
    if deg > DEGREE_CAP {
        return Err(Error::DegreeBoundExceeded(deg));
    }
    let mut out = Vec::new();
    let mut f = u.primitive_part();
    // powers of x
    let shift = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        f = UPoly::new(f.coeffs()[shift..].to_vec());
        for _ in 0..shift {
            out.push(UPoly::from_ints(&[0, 1]));
        }
    }
    for (g, mult) in yun_squarefree(&f) {
        for irr in factor_squarefree(&g)? {
            for _ in 0..mult {
                out.push(irr.clone());
            }
        }
    }
    out.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    Ok(out)
}

/// Yun's algorithm: list of (squarefree factor, multiplicity).
fn yun_squarefree(f: &UPoly) -> Vec<(UPoly, u32)> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = exact_quotient(f, &a0);
    let mut c = exact_quotient(&df, &a0);
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative());
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_part(), i));
        }
        b = exact_quotient(&b, &a);
        c = exact_quotient(&d, &a);
        i += 1;
    }
    out
}

/// quotient of an exact division; the divisions in Yun's recurrence are
/// integral by Gauss's lemma, so no content is stripped
fn exact_quotient(f: &UPoly, g: &UPoly) -> UPoly {
    let (q, r) = f.to_rational().div_rem(&g.to_rational());
    debug_assert!(r.is_zero(), "division must be exact");
    q.clear_denominators()
}

/// Factor a primitive squarefree polynomial with nonzero constant term.
fn factor_squarefree(f: &UPoly) -> Result<Vec<UPoly>> {
    let n = match f.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(1) => return Ok(vec![f.primitive_part()]),
        Some(n) => n,
    };
    // monic reduction: g(x) = lc^(n-1) f(x/lc) is monic over Z
    let lc = f.leading();
    let g = monicize(f, n);
    let factors = factor_monic_squarefree(&g)?;
    // map back through x -> lc*x and strip contents
    let out = factors
        .into_iter()
        .map(|h| {
            UPoly::new(
                h.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * lc.pow(i as u32))
                    .collect(),
            )
            .primitive_part()
        })
        .collect();
    Ok(out)
}

/// g(x) = lc^(n-1) * f(x / lc), monic with integer coefficients
fn monicize(f: &UPoly, n: usize) -> UPoly {
    let lc = f.leading();
    UPoly::new(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == n {
                    BigInt::one()
                } else {
                    c * lc.pow((n - 1 - i) as u32)
                }
            })
            .collect(),
    )
}

/// Zassenhaus on a monic squarefree integer polynomial.
fn factor_monic_squarefree(g: &UPoly) -> Result<Vec<UPoly>> {
    let n = g.degree().expect("nonzero");
    // prime with squarefree reduction
    let p = (3u64..200)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let gp = FpPoly::from_upoly(g, p);
            gp.degree() == Some(n) && gp.gcd(&gp.derivative()).degree() == Some(0)
        })
        .expect("squarefree polynomial has a good small prime");
    let gp = FpPoly::from_upoly(g, p).monic();
    let modular = gp.berlekamp_factor();
    if modular.len() == 1 {
        return Ok(vec![g.clone()]);
    }
    // lift to p^k beyond twice the Mignotte-style bound on factor
    // coefficients
    let norm: BigInt = g
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound: BigInt = (BigInt::one() << n) * norm * (n as i64 + 1);
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus *= BigInt::from(p);
    }
    let lifted = hensel_lift_list(g, &modular, p, &modulus);
    // subset recombination
    let mut remaining: Vec<ZpPoly> = lifted;
    let mut current = g.clone();
    let mut out = Vec::new();
    'outer: loop {
        let r = remaining.len();
        for size in 1..=r / 2 {
            for subset in subsets(r, size) {
                let mut prod = ZpPoly::one(&modulus);
                for &i in &subset {
                    prod = prod.mul(&remaining[i]);
                }
                let cand = prod.to_centered_upoly();
                if let Some(q) = monic_exact_div(&current, &cand) {
                    out.push(cand);
                    current = q;
                    let mut keep = Vec::new();
                    for (i, f) in remaining.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(f);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
        }
        break;
    }
    if current.degree().unwrap_or(0) > 0 {
        out.push(current);
    }
    Ok(out)
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(size).collect()
}

/// exact division when the divisor is monic; None if not exact
fn monic_exact_div(f: &UPoly, d: &UPoly) -> Option<UPoly> {
    if d.degree()? > f.degree()? || !d.leading().is_one() {
        return None;
    }
    let mut rem = f.coeffs().to_vec();
    let dd = d.degree()?;
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = rem[i].clone();
        if q.is_zero() {
            continue;
        }
        quo[i - dd] = q.clone();
        for (j, c) in d.coeffs().iter().enumerate() {
            rem[i - dd + j] -= &q * c;
        }
    }
    rem.iter().all(|c| c.is_zero()).then(|| UPoly::new(quo))
}

/// dense polynomial mod m (m = p^k), monic workflows only
#[derive(Debug, Clone)]
struct ZpPoly {
    m: BigInt,
    coeffs: Vec<BigInt>,
}

impl ZpPoly {
    fn new(m: &BigInt, mut coeffs: Vec<BigInt>) -> ZpPoly {
        for c in coeffs.iter_mut() {
            *c = ((&*c % m) + m) % m;
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        ZpPoly {
            m: m.clone(),
            coeffs,
        }
    }

    fn one(m: &BigInt) -> ZpPoly {
        ZpPoly::new(m, vec![BigInt::one()])
    }

    fn from_upoly(u: &UPoly, m: &BigInt) -> ZpPoly {
        ZpPoly::new(m, u.coeffs().to_vec())
    }

    fn from_fp(f: &FpPoly, m: &BigInt) -> ZpPoly {
        ZpPoly::new(m, f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, o: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZpPoly::new(
            &self.m,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    fn sub(&self, o: &ZpPoly) -> ZpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZpPoly::new(
            &self.m,
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
        )
    }

    fn mul(&self, o: &ZpPoly) -> ZpPoly {
        if self.is_zero() || o.is_zero() {
            return ZpPoly::new(&self.m, vec![]);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZpPoly::new(&self.m, coeffs)
    }

    /// division by a monic divisor
    fn div_rem_monic(&self, d: &ZpPoly) -> (ZpPoly, ZpPoly) {
        let dd = match d.degree() {
            Some(dd) => dd,
            None => panic!("division by zero"),
        };
        debug_assert!(d.coeffs[dd].is_one());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ZpPoly::new(&self.m, vec![]), self.clone());
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = ((&rem[i] % &self.m) + &self.m) % &self.m;
            if q.is_zero() {
                continue;
            }
            quo[i - dd] = q.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[i - dd + j] -= t;
            }
            rem[i] = BigInt::zero();
        }
        (ZpPoly::new(&self.m, quo), ZpPoly::new(&self.m, rem))
    }

    fn with_modulus(&self, m: &BigInt) -> ZpPoly {
        ZpPoly::new(m, self.coeffs.clone())
    }

    fn to_centered_upoly(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| centered(c, &self.m)).collect())
    }
}

/// Lifts a monic modular factorization of monic `f` from mod p to mod
/// `modulus` (a power of p), recursively pairing halves.
fn hensel_lift_list(f: &UPoly, factors: &[FpPoly], p: u64, modulus: &BigInt) -> Vec<ZpPoly> {
    let fm = ZpPoly::from_upoly(f, modulus);
    lift_split(&fm, factors, p, modulus)
}

fn lift_split(f: &ZpPoly, factors: &[FpPoly], p: u64, modulus: &BigInt) -> Vec<ZpPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let pm = BigInt::from(p);
    let g0 = left
        .iter()
        .fold(FpPoly::constant(p, 1), |acc, x| acc.mul(x));
    let h0 = right
        .iter()
        .fold(FpPoly::constant(p, 1), |acc, x| acc.mul(x));
    let (one, s0, t0) = g0.extended_gcd(&h0);
    debug_assert_eq!(one.degree(), Some(0));
    let (g, h) = hensel_pair(
        f,
        &ZpPoly::from_fp(&g0, &pm),
        &ZpPoly::from_fp(&h0, &pm),
        &ZpPoly::from_fp(&s0, &pm),
        &ZpPoly::from_fp(&t0, &pm),
        &pm,
        modulus,
    );
    let mut out = lift_split(&g, left, p, modulus);
    out.extend(lift_split(&h, right, p, modulus));
    out
}

/// Quadratic Hensel: from f = g*h (mod m) with s*g + t*h = 1 (mod m),
/// climbs to the target modulus.
fn hensel_pair(
    f: &ZpPoly,
    g: &ZpPoly,
    h: &ZpPoly,
    s: &ZpPoly,
    t: &ZpPoly,
    m: &BigInt,
    target: &BigInt,
) -> (ZpPoly, ZpPoly) {
    let mut m = m.clone();
    let mut g = g.clone();
    let mut h = h.clone();
    let mut s = s.clone();
    let mut t = t.clone();
    while m < *target {
        let m2 = (&m * &m).min(target.clone());
        let fg = f.with_modulus(&m2);
        let gg = g.with_modulus(&m2);
        let hh = h.with_modulus(&m2);
        let ss = s.with_modulus(&m2);
        let tt = t.with_modulus(&m2);
        let e = fg.sub(&gg.mul(&hh));
        let (q, r) = ss.mul(&e).div_rem_monic(&hh);
        let g1 = gg.add(&tt.mul(&e)).add(&q.mul(&gg));
        let h1 = hh.add(&r);
        // refresh the Bezout pair
        let b = ss
            .mul(&g1)
            .add(&tt.mul(&h1))
            .sub(&ZpPoly::one(&m2));
        let (c, d) = ss.mul(&b).div_rem_monic(&h1);
        let s1 = ss.sub(&d);
        let t1 = tt.sub(&tt.mul(&b)).sub(&c.mul(&g1));
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = m2;
    }
    (g, h)
}
