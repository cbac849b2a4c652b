//! Executes a construction plan over the parameter ring, producing a
//! moduli presentation: collinearity constraints f_i (leftover incidence
//! determinants) and nondegeneracy polynomials g_j (non-incidences and
//! non-concurrencies that must stay nonzero).

use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::poly::{mv_gcd, MPoly};

use super::plan::{ConstructionPlan, Elem, Step};

pub const PARAM_NAMES: [&str; 3] = ["a", "b", "c"];

type Triple = [MPoly; 3];

#[derive(Debug, Clone)]
pub struct ModuliPresentation {
    pub params: Vec<String>,
    pub constraints: Vec<MPoly>,
    pub nondegeneracy: Vec<MPoly>,
    pub reduced: Vec<MPoly>,
    pub plan: ConstructionPlan,
    /// Some required nondegeneracy polynomial vanished identically: the
    /// plan forces a degenerate realization, so the moduli space is empty.
    pub forced_degenerate: bool,
    pub coords: BTreeMap<String, Triple>,
    pub line_coords: Vec<Triple>,
}

fn cross(u: &Triple, v: &Triple) -> Result<Triple> {
    Ok([
        u[1].mul(&v[2])?.sub(&u[2].mul(&v[1])?)?,
        u[2].mul(&v[0])?.sub(&u[0].mul(&v[2])?)?,
        u[0].mul(&v[1])?.sub(&u[1].mul(&v[0])?)?,
    ])
}

fn dot(u: &Triple, v: &Triple) -> Result<MPoly> {
    u[0].mul(&v[0])?
        .add(&u[1].mul(&v[1])?)?
        .add(&u[2].mul(&v[2])?)
}

/// Strips the common polynomial content of a coordinate triple; the
/// content is nonzero on the nondegenerate locus, so scaling it away
/// keeps the projective element and prevents coefficient blowup.
fn normalize(t: Triple) -> Result<Triple> {
    if t.iter().all(MPoly::is_zero) {
        return Err(Error::Plan("element collapsed to zero coordinates".into()));
    }
    let g = mv_gcd(&mv_gcd(&t[0], &t[1]), &t[2]);
    let vars: Vec<&str> = t[0].vars().iter().map(String::as_str).collect();
    if g == MPoly::one(&vars) {
        return Ok(t);
    }
    let div = |x: &MPoly| {
        if x.is_zero() {
            Ok(x.clone())
        } else {
            crate::poly::exact_div(x, &g)
                .ok_or_else(|| Error::Plan("content division failed".into()))
        }
    };
    Ok([div(&t[0])?, div(&t[1])?, div(&t[2])?])
}

struct Builder<'a> {
    a: &'a Arrangement,
    vars: Vec<&'static str>,
    points: BTreeMap<String, Triple>,
    lines: BTreeMap<usize, Triple>,
    used: BTreeSet<(String, usize)>,
    next_param: usize,
    order: Vec<Elem>,
    basis: Vec<Elem>,
}

impl<'a> Builder<'a> {
    fn coords_of(&self, e: &Elem) -> Result<Triple> {
        match e {
            Elem::Point(p) => self.points.get(p).cloned(),
            Elem::Line(i) => self.lines.get(i).cloned(),
        }
        .ok_or_else(|| Error::Plan(format!("step references unplaced element {e}")))
    }

    fn fresh_param(&mut self) -> Result<MPoly> {
        if self.next_param >= PARAM_NAMES.len() {
            return Err(Error::Plan("plan needs more than three parameters".into()));
        }
        let v = MPoly::var(&self.vars, self.next_param);
        self.next_param += 1;
        Ok(v)
    }

    fn place(&mut self, e: &Elem, t: Triple) -> Result<()> {
        let t = normalize(t)?;
        let fresh = match e {
            Elem::Point(p) => self.points.insert(p.clone(), t).is_none(),
            Elem::Line(i) => self.lines.insert(*i, t).is_none(),
        };
        if !fresh {
            return Err(Error::Plan(format!("element {e} placed twice")));
        }
        self.order.push(e.clone());
        Ok(())
    }

    fn placed_at(&self, e: &Elem) -> usize {
        self.order.iter().position(|x| x == e).unwrap_or(usize::MAX)
    }

    fn mark_used(&mut self, e: &Elem, x: &Elem) -> Result<()> {
        let (p, l) = match (e, x) {
            (Elem::Point(p), Elem::Line(l)) | (Elem::Line(l), Elem::Point(p)) => (p.clone(), *l),
            _ => return Err(Error::Plan(format!("{e} and {x} cannot be incident"))),
        };
        if !self.a.has_point(l, &p) {
            return Err(Error::Plan(format!("{e} is not incident to {x}")));
        }
        self.used.insert((p, l));
        Ok(())
    }

    /// Incident placed elements of `e`, in index order.
    fn placed_partners(&self, e: &Elem) -> Vec<Elem> {
        match e {
            Elem::Point(p) => self
                .a
                .lines_through(p)
                .into_iter()
                .filter(|l| self.lines.contains_key(l))
                .map(Elem::Line)
                .collect(),
            Elem::Line(i) => self
                .a
                .line(*i)
                .iter()
                .filter(|p| self.points.contains_key(*p))
                .map(|p| Elem::Point(p.clone()))
                .collect(),
        }
    }

    /// Pencil chart u + t*v through one placed pivot. The span is taken
    /// from placed geometry: for a free line through a placed point, the
    /// first two placed lines through that point (in placement order), or
    /// one such line together with the join to the first basis point off
    /// it; dually for a free point on a placed line. Falling back to the
    /// cross products with two coordinate axes keeps the chart total.
    fn through_one(&mut self, e: &Elem, pivot_elem: &Elem) -> Result<Triple> {
        let pivot = self.coords_of(pivot_elem)?;
        let (u, v) = self.pencil_span(e, pivot_elem, &pivot)?;
        let t = self.fresh_param()?;
        Ok([
            u[0].add(&t.mul(&v[0])?)?,
            u[1].add(&t.mul(&v[1])?)?,
            u[2].add(&t.mul(&v[2])?)?,
        ])
    }

    fn pencil_span(
        &self,
        e: &Elem,
        pivot_elem: &Elem,
        pivot: &Triple,
    ) -> Result<(Triple, Triple)> {
        // placed elements of the opposite kind lying on the pivot, in
        // placement order, skipping e itself
        let mut on_pivot: Vec<(usize, Triple)> = Vec::new();
        for x in &self.order {
            if x == e || x.is_point() == pivot_elem.is_point() {
                continue;
            }
            let t = self.coords_of(x)?;
            if dot(&t, pivot)?.is_zero() {
                on_pivot.push((self.placed_at(x), t));
            }
        }
        on_pivot.sort_by_key(|(at, _)| *at);
        if on_pivot.len() >= 2 {
            return Ok((on_pivot[0].1.clone(), on_pivot[1].1.clone()));
        }
        if let (Some((_, u)), Elem::Point(_)) = (on_pivot.first(), pivot_elem) {
            // one placed line through the pivot point: complete the span
            // with the join to the first basis point off that line
            for b in &self.basis {
                let bc = self.coords_of(b)?;
                if !dot(&u.clone(), &bc)?.is_zero() {
                    return Ok((u.clone(), cross(&bc, pivot)?));
                }
            }
        }
        // coordinate-axes fallback: cross products with the two axes
        // avoiding the pivot's first nonvanishing coordinate
        let k = pivot
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero coordinates");
        let axes: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let unit = |i: usize| {
            let mut t = [
                MPoly::zero(&self.vars),
                MPoly::zero(&self.vars),
                MPoly::zero(&self.vars),
            ];
            t[i] = MPoly::one(&self.vars);
            t
        };
        Ok((cross(pivot, &unit(axes[0]))?, cross(pivot, &unit(axes[1]))?))
    }

    fn run(&mut self, plan: &ConstructionPlan) -> Result<()> {
        let mut basis_seen = 0usize;
        for step in &plan.steps {
            match step {
                Step::Basis(e, c) => {
                    let t = [
                        MPoly::constant(&self.vars, num_bigint::BigInt::from(c[0])),
                        MPoly::constant(&self.vars, num_bigint::BigInt::from(c[1])),
                        MPoly::constant(&self.vars, num_bigint::BigInt::from(c[2])),
                    ];
                    self.place(e, t)?;
                    self.basis.push(e.clone());
                    basis_seen += 1;
                }
                Step::Meet(e, x, y) | Step::Join(e, x, y) => {
                    if matches!(step, Step::Meet(..)) != e.is_point() {
                        return Err(Error::Plan(format!("{e} has the wrong kind for its step")));
                    }
                    // earlier-placed argument first fixes the orientation
                    // of the cross product, so parameter signs are stable
                    // under rewording of the plan text
                    let (x, y) = if self.placed_at(x) <= self.placed_at(y) {
                        (x, y)
                    } else {
                        (y, x)
                    };
                    let t = cross(&self.coords_of(x)?, &self.coords_of(y)?)?;
                    self.place(e, t)?;
                    self.mark_used(e, x)?;
                    self.mark_used(e, y)?;
                }
                Step::Free(e, k) => {
                    let t = match k {
                        2 => {
                            let s = self.fresh_param()?;
                            let t = self.fresh_param()?;
                            [MPoly::one(&self.vars), s, t]
                        }
                        _ => {
                            let partner = self
                                .placed_partners(e)
                                .into_iter()
                                .next()
                                .ok_or_else(|| {
                                    Error::Plan(format!("{e} has no placed incident element"))
                                })?;
                            let t = self.through_one(e, &partner)?;
                            self.mark_used(e, &partner)?;
                            self.place(e, t)?;
                            continue;
                        }
                    };
                    self.place(e, t)?;
                }
            }
        }
        if basis_seen != 4 {
            return Err(Error::Plan("plan must fix exactly four basis elements".into()));
        }
        for i in 0..self.a.num_lines() {
            if !self.lines.contains_key(&i) {
                return Err(Error::Plan(format!("plan does not place L{}", i + 1)));
            }
        }
        for p in self.a.points() {
            if !self.points.contains_key(&p) {
                return Err(Error::Plan(format!("plan does not place point {p}")));
            }
        }
        Ok(())
    }
}

/// Builds the presentation: leftover incidences become constraints, and
/// every non-incidence plus every non-concurrent line triple becomes a
/// nondegeneracy polynomial.
pub fn build(a: &Arrangement, plan: &ConstructionPlan) -> Result<ModuliPresentation> {
    let vars: Vec<&'static str> = PARAM_NAMES.to_vec();
    let mut b = Builder {
        a,
        vars: vars.clone(),
        points: BTreeMap::new(),
        lines: BTreeMap::new(),
        used: BTreeSet::new(),
        next_param: 0,
        order: Vec::new(),
        basis: Vec::new(),
    };
    b.run(plan)?;

    let mut constraints = Vec::new();
    for i in 0..a.num_lines() {
        for p in a.line(i) {
            if b.used.contains(&(p.clone(), i)) {
                continue;
            }
            let f = dot(&b.points[p], &b.lines[&i])?;
            if f.is_zero() {
                continue;
            }
            let f = f.primitive_part();
            if !constraints.contains(&f) {
                constraints.push(f);
            }
        }
    }

    let mut nondegeneracy = Vec::new();
    let mut forced = false;
    let mut push_g = |g: MPoly| {
        if g.is_zero() {
            forced = true;
        } else if !g.is_constant() {
            let g = g.primitive_part();
            if !nondegeneracy.contains(&g) {
                nondegeneracy.push(g);
            }
        }
    };
    // degeneracies are exactly the violated non-incidences: a labeled
    // point falling onto a line it does not belong to. Coincidence of two
    // labeled elements always violates some non-incidence in a (n_3)-style
    // arrangement, and concurrencies at unlabeled points are not excluded:
    // realizations only have to respect the labeled incidence structure.
    let points = a.points();
    for i in 0..a.num_lines() {
        for p in &points {
            if !a.has_point(i, p) {
                push_g(dot(&b.points[p], &b.lines[&i])?);
            }
        }
    }

    let line_coords: Vec<Triple> = (0..a.num_lines()).map(|i| b.lines[&i].clone()).collect();
    let params: Vec<String> = PARAM_NAMES[..b.next_param]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(ModuliPresentation {
        params,
        constraints,
        nondegeneracy,
        reduced: Vec::new(),
        plan: plan.clone(),
        forced_degenerate: forced,
        coords: b.points,
        line_coords,
    })
}

impl ModuliPresentation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "params": self.params,
            "constraints": self.constraints.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "nondegeneracy": self.nondegeneracy.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "reduced": self.reduced.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            "plan": self.plan.emit().lines().collect::<Vec<_>>(),
        })
    }
}

/// The published 24-step construction for the arrangement tested in
/// `published_ano_plan_reproduces_the_flagship_constraint`.
#[cfg(test)]
pub const ANO_PLAN: &str = "\
basis P9 [1:0:0]
basis P2 [0:1:0]
basis P0 [0:0:1]
basis PO [1:1:1]
join L10 = P0 + PO
join L8 = P9 + PO
join L7 = P2 + P9
join L4 = P9 + P0
meet P5 = L7 ^ L10
free L1 1
meet PA = L1 ^ L4
join L11 = PA + PO
meet PN = L7 ^ L11
join L9 = P0 + PN
meet P3 = L1 ^ L9
meet P6 = L8 ^ L9
free L2 1
meet P1 = L1 ^ L2
meet P4 = L2 ^ L8
join L3 = P1 + P6
join L5 = P2 + P4
meet P8 = L4 ^ L5
meet P7 = L3 ^ L10
join L6 = P3 + P7
";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::moduli::plan::auto_plan;

    fn triangle() -> Arrangement {
        Arrangement::from_lines(vec![
            vec!["x", "y", "p"],
            vec!["y", "z", "q"],
            vec!["z", "x", "r"],
            vec!["p", "q", "r"],
        ])
        .unwrap()
    }

    #[test]
    fn triangle_has_no_constraints() {
        let a = triangle();
        let plan = auto_plan(&a).unwrap();
        let m = build(&a, &plan).unwrap();
        assert!(m.params.is_empty());
        // the one leftover incidence of the fourth line is forced: every
        // constraint evaluates to zero and is dropped
        assert!(m.constraints.is_empty() || m.constraints.iter().all(|f| f.is_zero()));
        assert!(!m.forced_degenerate);
    }

    #[test]
    fn fano_leaves_a_constant_contradiction() {
        let fano = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7\n1 1 1 2 2 3 3\n2 4 6 4 5 4 5\n3 5 7 6 7 7 6",
        )
        .unwrap();
        let plan = auto_plan(&fano).unwrap();
        assert_eq!(plan.num_params(), 0);
        let m = build(&fano, &plan).unwrap();
        assert!(m
            .constraints
            .iter()
            .any(|f| f.is_constant() && !f.is_zero()));
    }

    #[test]
    fn published_ano_plan_reproduces_the_flagship_constraint() {
        let cat = Catalog::bundled();
        let a = cat.build_named("(10_3)_5.ANO").unwrap();
        let plan = ConstructionPlan::parse(ANO_PLAN).unwrap();
        let m = build(&a, &plan).unwrap();
        assert_eq!(m.params, vec!["a", "b"]);
        assert_eq!(m.constraints.len(), 1);
        let target = MPoly::parse(
            "a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1",
            &PARAM_NAMES,
        )
        .unwrap();
        assert!(super::super::classify::matches_up_to_unit_and_renaming(
            &m.constraints[0],
            &target
        ));
    }

}
