//! Reduction and classification of moduli presentations: strip degenerate
//! factors from the constraints, then decide emptiness, irreducibility,
//! component counts, and the complex-conjugation quotient count.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{
    absolutely_irreducible, exact_div, mv_gcd, rational_factors, real_root_count, resultant,
    squarefree_part, AbsIrredVerdict, MPoly, QPoly, UPoly,
};

use super::build::ModuliPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Empty,
    Irreducible { dim: usize },
    Reducible { components: usize, components_mod_conj: usize, dim: usize },
    FinitePoints { count: usize, count_mod_conj: usize },
    Unknown(String),
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Classification::Empty => serde_json::json!({"verdict": "empty"}),
            Classification::Irreducible { dim } => {
                serde_json::json!({"verdict": "irreducible", "dim": dim})
            }
            Classification::Reducible { components, components_mod_conj, dim } => serde_json::json!({
                "verdict": "reducible",
                "components": components,
                "components_mod_conjugation": components_mod_conj,
                "dim": dim,
            }),
            Classification::FinitePoints { count, count_mod_conj } => serde_json::json!({
                "verdict": "finite",
                "count": count,
                "count_mod_conjugation": count_mod_conj,
            }),
            Classification::Unknown(reason) => {
                serde_json::json!({"verdict": "unknown", "reason": reason})
            }
        }
    }

    /// Summary column label used by census reports.
    pub fn tally_key(&self) -> &'static str {
        match self {
            Classification::Empty => "empty",
            Classification::Irreducible { .. } => "irreducible",
            Classification::Reducible { components_mod_conj: 1, .. } => "reducible-conj-irreducible",
            Classification::Reducible { .. } => "reducible",
            Classification::FinitePoints { count: 1, .. } => "irreducible",
            Classification::FinitePoints { count_mod_conj: 1, .. } => "reducible-conj-irreducible",
            Classification::FinitePoints { .. } => "reducible",
            Classification::Unknown(_) => "unknown",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::Empty => write!(f, "empty"),
            Classification::Irreducible { dim } => write!(f, "irreducible (dim {dim})"),
            Classification::Reducible { components, components_mod_conj, dim } => write!(
                f,
                "reducible: {components} components ({components_mod_conj} mod conjugation), dim {dim}"
            ),
            Classification::FinitePoints { count, count_mod_conj } => {
                write!(f, "finite: {count} points ({count_mod_conj} mod conjugation)")
            }
            Classification::Unknown(reason) => write!(f, "unknown: {reason}"),
        }
    }
}

/// Equality up to sign and a permutation of the parameter names.
pub fn matches_up_to_unit_and_renaming(f: &MPoly, target: &MPoly) -> bool {
    use itertools::Itertools;
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    for perm in (0..vars.len()).permutations(vars.len()) {
        let map: BTreeMap<usize, MPoly> = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, MPoly::var(&vars, j)))
            .collect();
        if let Ok(renamed) = f.substitute(&map) {
            if renamed == *target || renamed.neg() == *target {
                return true;
            }
        }
    }
    false
}

/// Strips every constraint factor that is forced nonzero by some
/// nondegeneracy polynomial, collapses repeated factors, and deduplicates.
/// A constraint reduced to a nonzero constant is kept: it witnesses a
/// contradiction and the classification downstream is Empty.
pub fn reduce(m: &ModuliPresentation) -> ModuliPresentation {
    let mut out = m.clone();
    let mut reduced: Vec<MPoly> = Vec::new();
    for f in &m.constraints {
        if f.is_zero() {
            continue;
        }
        let mut h = if f.is_constant() { f.clone() } else { squarefree_part(f) };
        'strip: while !h.is_constant() {
            for g in &m.nondegeneracy {
                let d = mv_gcd(&h, g);
                if !d.is_constant() {
                    h = exact_div(&h, &d).expect("gcd divides");
                    continue 'strip;
                }
            }
            break;
        }
        if !reduced.contains(&h) {
            reduced.push(h);
        }
    }
    // a unit constraint contradicts everything else
    if reduced.iter().any(|h| h.is_constant()) {
        reduced.retain(|h| h.is_constant());
        reduced.truncate(1);
    }
    out.reduced = reduced;
    out
}

fn used_vars(hs: &[MPoly]) -> Vec<usize> {
    (0..3).filter(|&i| hs.iter().any(|h| h.uses_var(i))).collect()
}

pub fn classify(m: &ModuliPresentation) -> Classification {
    let m = if m.reduced.is_empty() && !m.constraints.is_empty() {
        reduce(m)
    } else {
        m.clone()
    };
    if m.forced_degenerate {
        return Classification::Empty;
    }
    let r = m.params.len();
    if m.reduced.iter().any(|h| h.is_constant()) {
        return Classification::Empty;
    }
    if m.reduced.is_empty() {
        return Classification::Irreducible { dim: r };
    }
    if m.reduced.len() == 1 {
        classify_single(&m.reduced[0], r, &m.nondegeneracy)
    } else {
        classify_system(&m.reduced, r, &m.nondegeneracy)
    }
}

/// Component census of a squarefree univariate constraint: each root is
/// one component (a point when no parameters remain free).
fn univariate_components(h: &MPoly, var: usize, r: usize) -> Classification {
    let u = match UPoly::from_mpoly(h, var) {
        Ok(u) => u,
        Err(_) => return Classification::Unknown("constraint conversion failed".into()),
    };
    let factors = match rational_factors(&u) {
        Ok(f) => f,
        Err(e) => return Classification::Unknown(format!("factorization failed: {e}")),
    };
    let count: usize = factors.iter().map(|q| q.degree().unwrap_or(0)).sum();
    let mut real = 0usize;
    for q in &factors {
        match real_root_count(q) {
            Ok(n) => real += n,
            Err(e) => return Classification::Unknown(format!("root counting failed: {e}")),
        }
    }
    let conj = real + (count - real) / 2;
    let dim = r - 1;
    if dim == 0 {
        Classification::FinitePoints { count, count_mod_conj: conj }
    } else if count == 1 {
        Classification::Irreducible { dim }
    } else {
        Classification::Reducible { components: count, components_mod_conj: conj, dim }
    }
}

fn classify_single(h: &MPoly, r: usize, gs: &[MPoly]) -> Classification {
    let used = used_vars(std::slice::from_ref(h));
    if used.len() == 1 {
        return univariate_components(h, used[0], r);
    }
    match absolutely_irreducible(h) {
        AbsIrredVerdict::Certified | AbsIrredVerdict::CertifiedViaModP(_) => {
            return Classification::Irreducible { dim: r - 1 };
        }
        AbsIrredVerdict::Unknown => {}
    }
    quadratic_split(h, r, gs, &used)
        .unwrap_or_else(|| Classification::Unknown("single constraint not certified".into()))
}

/// Splitting `h` as a quadratic in one variable with constant leading
/// coefficient: when its discriminant is d times a square for a constant
/// d, the two root branches are the irreducible components.
fn quadratic_split(h: &MPoly, r: usize, gs: &[MPoly], used: &[usize]) -> Option<Classification> {
    for &v in used {
        if h.degree_in(v) != Some(2) {
            continue;
        }
        let cs = h.coeffs_in(v);
        if !cs[2].is_constant() {
            continue;
        }
        let disc = cs[1]
            .mul(&cs[1])
            .ok()?
            .sub(&cs[2].mul(&cs[0]).ok()?.scale(&BigInt::from(4)))
            .ok()?;
        if disc.is_zero() {
            continue;
        }
        let (d, s) = constant_square_split(&disc)?;
        let dim = r - 1;
        let mut conj = if d.is_positive() { 2 } else { 1 };
        // components meet exactly where the square part vanishes on the
        // curve; a surviving intersection point joins them into one
        // Euclidean-connected class
        if !s.is_constant() {
            let other: Vec<usize> = used.iter().copied().filter(|&u| u != v).collect();
            if other.len() != 1 {
                return Some(Classification::Unknown(
                    "component intersection needs more than two variables".into(),
                ));
            }
            let system = vec![h.clone(), s.clone()];
            match solve_finite(&system, gs, other[0], v) {
                Ok((n, _)) => {
                    if n > 0 {
                        conj = 1;
                    }
                }
                Err(reason) => {
                    return Some(Classification::Unknown(format!(
                        "component intersection undecided: {reason}"
                    )))
                }
            }
        }
        return Some(Classification::Reducible {
            components: 2,
            components_mod_conj: conj,
            dim,
        });
    }
    None
}

/// Writes `f` as `d * s^2` with `d` a squarefree integer, if possible.
fn constant_square_split(f: &MPoly) -> Option<(BigInt, MPoly)> {
    let vars: Vec<&str> = f.vars().iter().map(String::as_str).collect();
    let content = f.content();
    let negative = f
        .leading_term()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false);
    // polynomial part: peel multiplicity levels; every prime factor must
    // appear an even number of times
    let mut rem = f.primitive_part();
    let mut s_poly = MPoly::one(&vars);
    while !rem.is_constant() {
        let w = squarefree_part(&rem);
        let rem1 = exact_div(&rem, &w)?;
        let rem2 = exact_div(&rem1, &w)?;
        s_poly = s_poly.mul(&w).ok()?;
        rem = rem2;
    }
    let leftover = rem.content();
    // integer part: d0 * s0^2
    let total = content * leftover * if negative { -BigInt::one() } else { BigInt::one() };
    let (d, s0) = int_square_split(&total);
    let s = s_poly.scale(&s0);
    Some((d, s))
}

/// n = d * s^2 with d squarefree (carrying the sign of n).
fn int_square_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut d = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut s = BigInt::one();
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut k = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        if k % 2 == 1 {
            d *= &p;
        }
        s *= p.pow(k / 2);
        p += 1;
    }
    // leftover m is prime (or 1), multiplicity one
    d *= m;
    (d, s)
}

fn classify_system(hs: &[MPoly], r: usize, gs: &[MPoly]) -> Classification {
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if !mv_gcd(&hs[i], &hs[j]).is_constant() {
                return Classification::Unknown("constraints share a factor".into());
            }
        }
    }
    let used = used_vars(hs);
    match used.len() {
        1 => {
            // coprime univariate constraints have no common root
            Classification::Empty
        }
        2 => {
            let (x, y) = (used[0], used[1]);
            let outcome = solve_finite(hs, gs, x, y)
                .or_else(|_| solve_finite(hs, gs, y, x));
            let (count, real) = match outcome {
                Ok(o) => o,
                Err(reason) => return Classification::Unknown(reason),
            };
            if count == 0 {
                return Classification::Empty;
            }
            let real = match real {
                Some(n) => n,
                None => {
                    return Classification::Unknown(
                        "real point count undecided for algebraic coordinates".into(),
                    )
                }
            };
            let conj = real + (count - real) / 2;
            let dim = r - 2;
            if dim == 0 {
                Classification::FinitePoints { count, count_mod_conj: conj }
            } else if count == 1 {
                Classification::Irreducible { dim }
            } else {
                Classification::Reducible { components: count, components_mod_conj: conj, dim }
            }
        }
        _ => Classification::Unknown("system uses three variables".into()),
    }
}

/// Common zero locus of a 0-dimensional bivariate system, eliminating `y`
/// first: returns (number of points over C, number of real points when
/// decidable), after discarding points on the degenerate locus.
fn solve_finite(
    hs: &[MPoly],
    gs: &[MPoly],
    x: usize,
    y: usize,
) -> std::result::Result<(usize, Option<usize>), String> {
    let pivot = hs
        .iter()
        .position(|h| h.degree_in(y).map(|d| d > 0).unwrap_or(false))
        .ok_or_else(|| "no constraint uses the elimination variable".to_string())?;
    let h1 = &hs[pivot];
    let mut elim = UPoly::from_ints(&[0]);
    for (i, h) in hs.iter().enumerate() {
        if i == pivot {
            continue;
        }
        let rx = if h.degree_in(y).map(|d| d > 0).unwrap_or(false) {
            resultant(h1, h, y).map_err(|e| e.to_string())?
        } else {
            h.clone()
        };
        let rx = UPoly::from_mpoly(&rx, x).map_err(|e| e.to_string())?;
        if rx.is_zero() {
            return Err("vanishing resultant".into());
        }
        elim = elim.gcd(&rx);
    }
    let elim = elim.squarefree_part();
    if elim.degree().unwrap_or(0) == 0 {
        return Ok((0, Some(0)));
    }
    let factors = rational_factors(&elim).map_err(|e| e.to_string())?;
    let mut count = 0usize;
    let mut real = Some(0usize);
    'factor: for q in &factors {
        let nf = Nf::new(q.to_rational());
        // a nondegeneracy polynomial in x alone vanishing on these roots
        // kills the whole block; polynomials touching other parameters
        // are generically nonzero and skipped
        let outside = |g: &MPoly| (0..3).any(|v| v != x && v != y && g.uses_var(v));
        for g in gs {
            if outside(g) || g.uses_var(y) || !g.uses_var(x) {
                continue;
            }
            let gx = UPoly::from_mpoly(g, x).map_err(|e| e.to_string())?;
            if nf.reduce_upoly(&gx).is_zero() {
                continue 'factor;
            }
        }
        // partner polynomial in y over Q[x]/(q)
        let mut partner: Option<Vec<QPoly>> = None;
        let mut all_zero = true;
        for h in hs {
            let p = nf.mpoly_in(h, x, y).map_err(|e| e.to_string())?;
            if nf_is_zero(&p) {
                continue;
            }
            all_zero = false;
            partner = Some(match partner {
                None => p,
                Some(cur) => nf.gcd(&cur, &p),
            });
        }
        if all_zero {
            return Err("positive-dimensional fiber over a root".into());
        }
        let mut p = partner.unwrap();
        if nf_deg(&p) == 0 {
            continue; // spurious root of the eliminant
        }
        // squarefree over the field
        let d = nf.gcd(&p, &nf_derivative(&p));
        if nf_deg(&d) > 0 {
            p = nf.div_exact(&p, &d);
        }
        // strip partner values on the degenerate locus
        for g in gs {
            if outside(g) || !g.uses_var(y) {
                continue;
            }
            let gq = nf.mpoly_in(g, x, y).map_err(|e| e.to_string())?;
            if nf_is_zero(&gq) {
                continue 'factor;
            }
            loop {
                let d = nf.gcd(&p, &gq);
                if nf_deg(&d) == 0 {
                    break;
                }
                p = nf.div_exact(&p, &d);
                if nf_deg(&p) == 0 {
                    break;
                }
            }
            if nf_deg(&p) == 0 {
                continue 'factor;
            }
        }
        let qdeg = q.degree().unwrap_or(0);
        let pdeg = nf_deg(&p);
        count += qdeg * pdeg;
        if pdeg == 1 {
            // the partner is a rational expression in the root: real
            // exactly when the root is real
            if let Some(total) = real.as_mut() {
                *total += real_root_count(q).map_err(|e| e.to_string())?;
            }
        } else if qdeg == 1 {
            // rational root: substitute and count real partners exactly
            let alpha = -q.to_rational().coeff(0) / q.to_rational().leading();
            let n = real_partners_at(hs, gs, x, y, &alpha)?;
            if let Some(total) = real.as_mut() {
                *total += n;
            }
        } else {
            real = None;
        }
    }
    Ok((count, real))
}

/// Real partner count at a rational x-value, after degeneracy filtering.
fn real_partners_at(
    hs: &[MPoly],
    gs: &[MPoly],
    x: usize,
    y: usize,
    alpha: &num_rational::BigRational,
) -> std::result::Result<usize, String> {
    let eval = |f: &MPoly| -> std::result::Result<QPoly, String> {
        let cs = f.coeffs_in(y);
        let mut coeffs = Vec::new();
        for c in cs {
            let u = UPoly::from_mpoly(&c, x).map_err(|e| e.to_string())?;
            coeffs.push(u.to_rational().eval(alpha));
        }
        Ok(QPoly::new(coeffs))
    };
    let mut hy: Option<QPoly> = None;
    for h in hs {
        let p = eval(h)?;
        if p.is_zero() {
            continue;
        }
        hy = Some(match hy {
            None => p,
            Some(cur) => cur.gcd(&p),
        });
    }
    let mut hy = hy.ok_or_else(|| "positive-dimensional fiber".to_string())?;
    for g in gs {
        if (0..3).any(|v| v != x && v != y && g.uses_var(v)) {
            continue;
        }
        let gq = eval(g)?;
        if gq.is_zero() {
            return Ok(0);
        }
        loop {
            let d = hy.gcd(&gq);
            if d.degree().unwrap_or(0) == 0 {
                break;
            }
            hy = hy.div_rem(&d).0;
        }
    }
    if hy.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let u = hy.clear_denominators();
    real_root_count(&u).map_err(|e| e.to_string())
}

/// Arithmetic in Q[x]/(q) and for polynomials in y over that field.
struct Nf {
    q: QPoly,
}

fn nf_trim(mut v: Vec<QPoly>) -> Vec<QPoly> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn nf_is_zero(p: &[QPoly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn nf_deg(p: &[QPoly]) -> usize {
    p.len().saturating_sub(1)
}

fn nf_derivative(p: &[QPoly]) -> Vec<QPoly> {
    nf_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&num_rational::BigRational::from(BigInt::from(i))))
            .collect(),
    )
}

impl Nf {
    fn new(q: QPoly) -> Nf {
        let lead = q.leading();
        Nf { q: q.scale(&lead.recip()) }
    }

    fn red(&self, f: &QPoly) -> QPoly {
        f.div_rem(&self.q).1
    }

    fn reduce_upoly(&self, u: &UPoly) -> QPoly {
        self.red(&u.to_rational())
    }

    fn inv(&self, a: &QPoly) -> QPoly {
        let (g, s, _t) = a.extended_gcd(&self.q);
        debug_assert_eq!(g.degree(), Some(0), "nonunit in a field");
        self.red(&s.scale(&g.leading().recip()))
    }

    /// `h` viewed as a polynomial in y with coefficients reduced mod q.
    fn mpoly_in(&self, h: &MPoly, x: usize, y: usize) -> crate::error::Result<Vec<QPoly>> {
        let mut out = Vec::new();
        for c in h.coeffs_in(y) {
            let u = UPoly::from_mpoly(&c, x)?;
            out.push(self.reduce_upoly(&u));
        }
        Ok(nf_trim(out))
    }

    fn mul_elem(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.red(&a.mul(b))
    }

    fn div_rem(&self, a: &[QPoly], b: &[QPoly]) -> (Vec<QPoly>, Vec<QPoly>) {
        assert!(!nf_is_zero(b), "division by zero");
        let db = nf_deg(b);
        let lead_inv = self.inv(&b[db]);
        let mut rem: Vec<QPoly> = nf_trim(a.to_vec());
        if nf_is_zero(&rem) || nf_deg(&rem) < db {
            return (vec![], rem);
        }
        let mut quo = vec![QPoly::zero(); nf_deg(&rem) + 1 - db];
        for i in (db..rem.len()).rev() {
            let qc = self.mul_elem(&rem[i], &lead_inv);
            if qc.is_zero() {
                continue;
            }
            quo[i - db] = qc.clone();
            for (j, c) in b.iter().enumerate() {
                let t = self.mul_elem(&qc, c);
                rem[i - db + j] = rem[i - db + j].sub(&t);
            }
        }
        (nf_trim(quo), nf_trim(rem))
    }

    fn gcd(&self, a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
        let mut a = nf_trim(a.to_vec());
        let mut b = nf_trim(b.to_vec());
        while !nf_is_zero(&b) {
            let r = self.div_rem(&a, &b).1;
            a = b;
            b = r;
        }
        if !nf_is_zero(&a) {
            // monic normalization
            let inv = self.inv(&a[nf_deg(&a)]);
            a = nf_trim(a.iter().map(|c| self.mul_elem(c, &inv)).collect());
        }
        a
    }

    fn div_exact(&self, a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
        let (q, r) = self.div_rem(a, b);
        debug_assert!(nf_is_zero(&r), "division must be exact");
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::build::PARAM_NAMES;

    fn p(text: &str) -> MPoly {
        MPoly::parse(text, &PARAM_NAMES).unwrap()
    }

    fn presentation(
        params: usize,
        constraints: Vec<MPoly>,
        nondegeneracy: Vec<MPoly>,
    ) -> ModuliPresentation {
        ModuliPresentation {
            params: PARAM_NAMES[..params].iter().map(|s| s.to_string()).collect(),
            constraints,
            nondegeneracy,
            reduced: Vec::new(),
            plan: super::super::plan::ConstructionPlan { steps: vec![] },
            forced_degenerate: false,
            coords: Default::default(),
            line_coords: Vec::new(),
        }
    }

    #[test]
    fn renaming_matcher() {
        let f = p("a^2*b + b - 1");
        let g = p("b^2*a + a - 1");
        assert!(matches_up_to_unit_and_renaming(&f, &g));
        assert!(matches_up_to_unit_and_renaming(&f, &g.neg()));
        assert!(!matches_up_to_unit_and_renaming(&f, &p("a^2*b + b + 1")));
    }

    #[test]
    fn reduce_strips_degenerate_factors() {
        let f = p("c * (4*c^2 - 2*a*c - a^2)");
        let m = presentation(2, vec![f], vec![p("c")]);
        let m = reduce(&m);
        assert_eq!(m.reduced, vec![p("a^2 + 2*a*c - 4*c^2")]);
    }

    #[test]
    fn reduce_keeps_coprime_constraints() {
        let m = presentation(2, vec![p("a + b")], vec![p("a - b")]);
        assert_eq!(reduce(&m).reduced, vec![p("a + b")]);
    }

    #[test]
    fn fully_degenerate_constraint_means_empty() {
        let m = presentation(2, vec![p("a*b")], vec![p("a"), p("b")]);
        assert_eq!(classify(&m), Classification::Empty);
    }

    #[test]
    fn no_constraints_is_irreducible_of_full_dimension() {
        let m = presentation(2, vec![], vec![p("a")]);
        assert_eq!(classify(&m), Classification::Irreducible { dim: 2 });
    }

    #[test]
    fn golden_ratio_conic_splits_into_two_real_components() {
        // roots c = a(1 +- sqrt(5))/4: two components, both real
        let m = presentation(2, vec![p("4*c^2 - 2*a*c - a^2")], vec![p("a"), p("c")]);
        assert_eq!(
            classify(&m),
            Classification::Reducible { components: 2, components_mod_conj: 2, dim: 1 }
        );
    }

    #[test]
    fn complex_pair_collapses_mod_conjugation() {
        // c^2 + a^2: conjugate components over Q(i)
        let m = presentation(2, vec![p("c^2 + a^2")], vec![p("a"), p("c")]);
        assert_eq!(
            classify(&m),
            Classification::Reducible { components: 2, components_mod_conj: 1, dim: 1 }
        );
    }

    #[test]
    fn certified_irreducible_constraint() {
        let f = p("a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1");
        let m = presentation(2, vec![f], vec![]);
        assert_eq!(classify(&m), Classification::Irreducible { dim: 1 });
    }

    #[test]
    fn finite_system_with_two_real_galois_points() {
        // a^2 - 3ab + b^2 = 0 with b = 1 forced: a = (3 +- sqrt(5))/2
        let m = presentation(
            2,
            vec![p("a^2 - 3*a*b + b^2"), p("b - 1")],
            vec![p("a"), p("b")],
        );
        assert_eq!(
            classify(&m),
            Classification::FinitePoints { count: 2, count_mod_conj: 2 }
        );
    }

    #[test]
    fn finite_system_with_conjugate_pair() {
        let m = presentation(2, vec![p("a^2 + 1"), p("b - a")], vec![]);
        assert_eq!(
            classify(&m),
            Classification::FinitePoints { count: 2, count_mod_conj: 1 }
        );
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let m = presentation(2, vec![p("a + b"), p("a + b + 1")], vec![]);
        assert_eq!(classify(&m), Classification::Empty);
    }

    #[test]
    fn degenerate_points_are_discarded() {
        // solutions (0, 0) and (1, 1); a != 0 kills the first
        let m = presentation(2, vec![p("b - a^2"), p("b - a")], vec![p("a")]);
        assert_eq!(
            classify(&m),
            Classification::FinitePoints { count: 1, count_mod_conj: 1 }
        );
    }

    #[test]
    fn mixed_algebraic_points() {
        // b^2 = 2 and a = b: two real points over Q(sqrt 2)
        let m = presentation(2, vec![p("b^2 - 2"), p("a - b")], vec![]);
        assert_eq!(
            classify(&m),
            Classification::FinitePoints { count: 2, count_mod_conj: 2 }
        );
    }

    #[test]
    fn square_splits() {
        let (d, s) = int_square_split(&BigInt::from(20));
        assert_eq!((d, s), (BigInt::from(5), BigInt::from(2)));
        let (d, s) = int_square_split(&BigInt::from(-18));
        assert_eq!((d, s), (BigInt::from(-2), BigInt::from(3)));
        let (d, s) = constant_square_split(&p("20*a^2")).unwrap();
        assert_eq!(d, BigInt::from(5));
        assert_eq!(s, p("2*a"));
        assert!(constant_square_split(&p("a^3 + 1")).is_none() || {
            let (d, _) = constant_square_split(&p("a^3 + 1")).unwrap();
            d != BigInt::one()
        });
    }
}
