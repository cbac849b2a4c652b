//! Exact multivariate division and gcd over the integers, via primitive
//! pseudo-remainder sequences. All arithmetic stays in Z: Gauss's lemma
//! keeps contents and primitive parts separable.

use num_bigint::BigInt;
use num_traits::Zero;

use super::mpoly::MPoly;

/// Exact quotient `f / g` when `g` divides `f`, by graded-lex leading-term
/// elimination; None when the division is not exact.
pub fn exact_div(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    assert!(!g.is_zero(), "division by zero polynomial");
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let mut rem = f.clone();
    let mut quo = MPoly::zero(&vars);
    let (ge, gc) = {
        let (e, c) = g.leading_term()?;
        (e.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (re, rc) = {
            let (e, c) = rem.leading_term()?;
            (e.clone(), c.clone())
        };
        if re.iter().zip(&ge).any(|(a, b)| a < b) {
            return None;
        }
        if (&rc % &gc) != BigInt::zero() {
            return None;
        }
        let qe: Vec<u32> = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
        let qt = MPoly::from_terms(&vars, vec![(qe, &rc / &gc)]).ok()?;
        quo = quo.add(&qt).ok()?;
        rem = rem.sub(&qt.mul(g).ok()?).ok()?;
    }
    Some(quo)
}

pub fn divides(g: &MPoly, f: &MPoly) -> bool {
    f.is_zero() || (!g.is_zero() && exact_div(f, g).is_some())
}

/// last variable occurring in either polynomial, if any
fn main_var(f: &MPoly, g: &MPoly) -> Option<usize> {
    (0..f.arity())
        .rev()
        .find(|&i| f.uses_var(i) || g.uses_var(i))
}

fn from_coeffs(vars: &[&str], i: usize, coeffs: &[MPoly]) -> MPoly {
    let x = MPoly::var(vars, i);
    let mut out = MPoly::zero(vars);
    for (k, c) in coeffs.iter().enumerate() {
        out = out.add(&c.mul(&x.pow(k as u32)).unwrap()).unwrap();
    }
    out
}

/// content of `f` viewed as a univariate polynomial in variable `i` over
/// the ring of polynomials in the remaining variables
fn content_in(f: &MPoly, i: usize) -> MPoly {
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let mut g = MPoly::zero(&vars);
    for c in f.coeffs_in(i) {
        g = mv_gcd(&g, &c);
    }
    g
}

/// pseudo-remainder of f by g in variable i: lc(g)^(df-dg+1) * f mod g
fn pseudo_rem(f: &MPoly, g: &MPoly, i: usize) -> MPoly {
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let dg = g.degree_in(i).expect("nonzero divisor") as usize;
    let gc = g.coeffs_in(i);
    let lead_g = &gc[dg];
    let mut fc = f.coeffs_in(i);
    while fc.len() > dg && !fc.iter().all(MPoly::is_zero) {
        while fc.last().map(|c| c.is_zero()).unwrap_or(false) {
            fc.pop();
        }
        if fc.len() <= dg {
            break;
        }
        let df = fc.len() - 1;
        let lead_f = fc[df].clone();
        for c in fc.iter_mut() {
            *c = c.mul(lead_g).unwrap();
        }
        for k in 0..=dg {
            let t = gc[k].mul(&lead_f).unwrap();
            fc[df - dg + k] = fc[df - dg + k].sub(&t).unwrap();
        }
        fc.pop();
    }
    from_coeffs(&vars, i, &fc)
}

fn normalized(f: &MPoly) -> MPoly {
    use num_traits::Signed;
    match f.leading_term() {
        Some((_, c)) if c.is_negative() => f.neg(),
        _ => f.clone(),
    }
}

/// Multivariate gcd over Z, normalized to positive leading coefficient.
pub fn mv_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return normalized(g);
    }
    if g.is_zero() {
        return normalized(f);
    }
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    match main_var(f, g) {
        None => MPoly::constant(&vars, num_integer::gcd(f.content(), g.content())),
        Some(i) => {
            let cf = content_in(f, i);
            let cg = content_in(g, i);
            let cont = mv_gcd(&cf, &cg);
            let mut a = exact_div(f, &cf).expect("content divides");
            let mut b = exact_div(g, &cg).expect("content divides");
            if a.degree_in(i) < b.degree_in(i) {
                std::mem::swap(&mut a, &mut b);
            }
            while !b.is_zero() {
                let r = pseudo_rem(&a, &b, i);
                let r = if r.is_zero() {
                    r
                } else {
                    exact_div(&r, &content_in(&r, i)).expect("content divides")
                };
                a = b;
                b = r;
            }
            // a degree-0 tail means the primitive parts are coprime in var i
            if !a.uses_var(i) {
                return cont;
            }
            let a = exact_div(&a, &content_in(&a, i)).expect("content divides");
            cont.mul(&a).unwrap()
        }
    }
}

/// Squarefree part: f divided by the gcd of f and all its partials.
pub fn squarefree_part(f: &MPoly) -> MPoly {
    if f.is_zero() || f.is_constant() {
        return f.primitive_part();
    }
    let mut d = MPoly::zero(&f.vars().iter().map(String::as_str).collect::<Vec<_>>());
    for i in 0..f.arity() {
        if f.uses_var(i) {
            d = mv_gcd(&d, &f.derivative(i));
        }
    }
    let d = mv_gcd(f, &d);
    exact_div(f, &d).expect("gcd divides").primitive_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> MPoly {
        MPoly::parse(text, &["a", "b", "c"]).unwrap()
    }

    #[test]
    fn exact_division_recovers_factors() {
        let f = p("(a^2 - b^2) * (a*b + 3)");
        assert_eq!(exact_div(&f, &p("a + b")).unwrap(), p("(a - b)*(a*b + 3)"));
        assert_eq!(exact_div(&f, &p("a + b + 1")), None);
        assert!(divides(&p("a - b"), &f));
        assert!(!divides(&p("a + 2"), &f));
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = p("(a + b)^2 * (a - c)");
        let g = p("(a + b) * (b + c)");
        assert_eq!(mv_gcd(&f, &g), p("a + b"));
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        let f = p("a^2 + b");
        let g = p("a + c");
        assert_eq!(mv_gcd(&f, &g), p("1"));
    }

    #[test]
    fn gcd_includes_integer_content() {
        let f = p("6*a + 6*b");
        let g = p("4*a + 4*b");
        assert_eq!(mv_gcd(&f, &g), p("2*a + 2*b"));
        assert_eq!(mv_gcd(&p("12"), &p("18")), p("6"));
    }

    #[test]
    fn gcd_with_zero() {
        let f = p("-3*a*b");
        assert_eq!(mv_gcd(&f, &MPoly::zero(&["a", "b", "c"])), p("3*a*b"));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let f = p("(a + b)^3 * (a - b)");
        assert_eq!(squarefree_part(&f), p("(a + b)*(a - b)"));
        assert_eq!(squarefree_part(&p("a^2*b^2")), p("a*b"));
    }
}
