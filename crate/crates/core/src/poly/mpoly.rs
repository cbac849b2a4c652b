//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients. Terms map exponent vectors (fixed arity) to nonzero
//! coefficients; printing orders terms graded-lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> MPoly {
        MPoly {
            vars: vars.iter().map(|s| (*s).to_owned()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> MPoly {
        let mut f = MPoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            f.terms.insert(vec![0; f.vars.len()], c);
        }
        f
    }

    pub fn one(vars: &[&str]) -> MPoly {
        MPoly::constant(vars, 1)
    }

    pub fn var(vars: &[&str], i: usize) -> MPoly {
        let mut f = MPoly::zero(vars);
        assert!(i < f.vars.len());
        let mut e = vec![0; f.vars.len()];
        e[i] = 1;
        f.terms.insert(e, BigInt::one());
        f
    }

    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, BigInt)>) -> Result<MPoly> {
        let mut f = MPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != f.vars.len() {
                return Err(Error::ArityMismatch);
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(BigInt::zero),
            )
        } else {
            None
        }
    }

    /// Total degree; -1 is represented as None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// True iff variable `i` occurs.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::ArityMismatch)
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_compatible(other)?;
        let mut out = MPoly::zero(&self.vars.iter().map(String::as_str).collect::<Vec<_>>());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut out = MPoly::one(&vars);
        for _ in 0..n {
            out = out.mul(self).expect("same vars");
        }
        out
    }

    /// Substitutes polynomials for the assigned variable indices; the
    /// variable list is unchanged, but assigned variables no longer occur.
    pub fn substitute(&self, assignment: &BTreeMap<usize, MPoly>) -> Result<MPoly> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        for g in assignment.values() {
            self.check_compatible(g)?;
        }
        let mut out = MPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(&vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let factor = match assignment.get(&i) {
                    Some(g) => g.pow(exp),
                    None => MPoly::var(&vars, i).pow(exp),
                };
                term = term.mul(&factor)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn substitute_ints(&self, assignment: &BTreeMap<usize, BigInt>) -> Result<MPoly> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let map = assignment
            .iter()
            .map(|(&i, c)| (i, MPoly::constant(&vars, c.clone())))
            .collect();
        self.substitute(&map)
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.vars.len() {
            return Err(Error::ArityMismatch);
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                t *= point[i].pow(exp);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c * BigInt::from(e[i]));
        }
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Coefficients of `self` as polynomials in the remaining variables,
    /// indexed by the power of variable `i` (length deg+1).
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![
            MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new()
            };
            deg + 1
        ];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// gcd of all coefficients, nonnegative
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    /// Divides out the content; sign normalized so the graded-lex leading
    /// coefficient is positive.
    pub fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self
            .terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()))
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            g = -g;
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c / &g)).collect(),
        }
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms
            .iter()
            .max_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()))
    }

    /// Reduction mod a prime applied to every coefficient (wraps into
    /// [0, p)); zero coefficients drop out.
    pub fn mod_p(&self, p: u64) -> MPoly {
        let bp = BigInt::from(p);
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = ((c % &bp) + &bp) % &bp;
                (!r.is_zero()).then(|| (e.clone(), r))
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| serde_json::json!([e, c.to_string()]))
            .collect();
        serde_json::json!({ "vars": self.vars, "terms": terms })
    }

    /// graded-lex descending
    fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(e1, _), (e2, _)| {
            let d1: u32 = e1.iter().sum();
            let d2: u32 = e2.iter().sum();
            (d2, *e2).cmp(&(d1, *e1))
        });
        terms
    }

    /// Parses ASCII math over the given variables: integer coefficients,
    /// `+ - * ^` and parentheses.
    pub fn parse(text: &str, vars: &[&str]) -> Result<MPoly> {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            vars,
        }
        .parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<MPoly> {
        let f = self.expr()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(Error::PolyParse(format!(
                "trailing input at offset {}",
                self.pos
            )));
        }
        Ok(f)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            if self.peek() == Some('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?)?;
                }
                // juxtaposition: a variable or open paren directly follows
                Some(c) if c == '(' || c.is_ascii_alphabetic() => {
                    acc = acc.mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.number()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| Error::PolyParse("exponent out of range".into()))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::PolyParse("expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(MPoly::constant(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric()
                        || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::PolyParse(format!("unknown variable {name}")))?;
                Ok(MPoly::var(self.vars, i))
            }
            other => Err(Error::PolyParse(format!("unexpected input: {other:?}"))),
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::PolyParse("expected a number".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::PolyParse("number out of range".into()))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let trivial = e.iter().all(|&x| x == 0);
            if !mag.is_one() || trivial {
                parts.push(mag.to_string());
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => parts.push(self.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars[i], exp)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
