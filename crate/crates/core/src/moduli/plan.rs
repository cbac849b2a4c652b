//! Construction plans: an ordered recipe that places the points and lines
//! of an arrangement in the projective plane, starting from a fixed basis
//! of four points. Determined steps cost nothing; free steps introduce
//! parameters. Plans round-trip through a one-step-per-line text format.

use std::collections::BTreeSet;
use std::fmt;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};

/// A point (by label) or a line (by zero-based index) of the arrangement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Elem {
    Point(String),
    Line(usize),
}

impl Elem {
    pub fn is_point(&self) -> bool {
        matches!(self, Elem::Point(_))
    }

    fn parse(token: &str) -> Result<Elem> {
        if let Some(rest) = token.strip_prefix('L') {
            if let Ok(n) = rest.parse::<usize>() {
                if n == 0 {
                    return Err(Error::Plan("line numbers start at 1".into()));
                }
                return Ok(Elem::Line(n - 1));
            }
        }
        let label = token.strip_prefix('P').unwrap_or(token);
        if label.is_empty() {
            return Err(Error::Plan(format!("bad element token {token:?}")));
        }
        Ok(Elem::Point(label.to_string()))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Point(p) => write!(f, "P{p}"),
            Elem::Line(i) => write!(f, "L{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Basis point with fixed integer coordinates.
    Basis(Elem, [i64; 3]),
    /// Point determined as the intersection of two placed lines.
    Meet(Elem, Elem, Elem),
    /// Line determined as the span of two placed points.
    Join(Elem, Elem, Elem),
    /// Element introducing 1 or 2 fresh parameters; a 1-parameter step
    /// pivots on one placed incident element, found at build time.
    Free(Elem, usize),
}

impl Step {
    pub fn elem(&self) -> &Elem {
        match self {
            Step::Basis(e, _) | Step::Meet(e, _, _) | Step::Join(e, _, _) | Step::Free(e, _) => e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionPlan {
    pub steps: Vec<Step>,
}

impl ConstructionPlan {
    /// Number of fresh parameters the plan introduces.
    pub fn num_params(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Free(_, k) => *k,
                _ => 0,
            })
            .sum()
    }

    /// One step per line: `basis P9 [1:0:0]`, `meet PO = L8 ^ L10`,
    /// `join L11 = PA + PN`, `free P5 2`. Point labels may also appear
    /// bare (without the `P` prefix) on input.
    pub fn parse(text: &str) -> Result<ConstructionPlan> {
        let mut steps = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Plan(format!("bad plan line {line:?}"));
            match toks[0] {
                "basis" => {
                    if toks.len() != 3 {
                        return Err(bad());
                    }
                    let coords = toks[2]
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    let parts: Vec<i64> = coords
                        .split(':')
                        .map(|c| c.parse().map_err(|_| bad()))
                        .collect::<Result<_>>()?;
                    if parts.len() != 3 {
                        return Err(bad());
                    }
                    steps.push(Step::Basis(
                        Elem::parse(toks[1])?,
                        [parts[0], parts[1], parts[2]],
                    ));
                }
                "meet" | "join" => {
                    let op = if toks[0] == "meet" { "^" } else { "+" };
                    if toks.len() != 6 || toks[2] != "=" || toks[4] != op {
                        return Err(bad());
                    }
                    let e = Elem::parse(toks[1])?;
                    let x = Elem::parse(toks[3])?;
                    let y = Elem::parse(toks[5])?;
                    steps.push(if toks[0] == "meet" {
                        Step::Meet(e, x, y)
                    } else {
                        Step::Join(e, x, y)
                    });
                }
                "free" => {
                    if toks.len() != 3 {
                        return Err(bad());
                    }
                    let k: usize = toks[2].parse().map_err(|_| bad())?;
                    if !(1..=2).contains(&k) {
                        return Err(bad());
                    }
                    steps.push(Step::Free(Elem::parse(toks[1])?, k));
                }
                _ => return Err(bad()),
            }
        }
        Ok(ConstructionPlan { steps })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            match s {
                Step::Basis(e, c) => {
                    out.push_str(&format!("basis {e} [{}:{}:{}]\n", c[0], c[1], c[2]))
                }
                Step::Meet(e, x, y) => out.push_str(&format!("meet {e} = {x} ^ {y}\n")),
                Step::Join(e, x, y) => out.push_str(&format!("join {e} = {x} + {y}\n")),
                Step::Free(e, k) => out.push_str(&format!("free {e} {k}\n")),
            }
        }
        out
    }
}

const BASIS_COORDS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

/// Incidence count of an element against a placed set.
fn placed_incidences(a: &Arrangement, e: &Elem, placed: &BTreeSet<Elem>) -> usize {
    match e {
        Elem::Point(p) => a
            .lines_through(p)
            .iter()
            .filter(|&&l| placed.contains(&Elem::Line(l)))
            .count(),
        Elem::Line(i) => a
            .line(*i)
            .iter()
            .filter(|p| placed.contains(&Elem::Point((*p).to_string())))
            .count(),
    }
}

fn partners(a: &Arrangement, e: &Elem, placed: &BTreeSet<Elem>) -> Vec<Elem> {
    match e {
        Elem::Point(p) => a
            .lines_through(p)
            .into_iter()
            .map(Elem::Line)
            .filter(|l| placed.contains(l))
            .collect(),
        Elem::Line(i) => a
            .line(*i)
            .iter()
            .map(|p| Elem::Point(p.clone()))
            .filter(|p| placed.contains(p))
            .collect(),
    }
}

/// Greedy plan from a given basis: place everything determined first,
/// then the cheapest free element (most placed incidences, lowest index),
/// repeating until the arrangement is covered.
fn greedy_plan(a: &Arrangement, basis: &[String; 4]) -> ConstructionPlan {
    let mut steps: Vec<Step> = basis
        .iter()
        .zip(BASIS_COORDS.iter())
        .map(|(p, c)| Step::Basis(Elem::Point(p.clone()), *c))
        .collect();
    let mut placed: BTreeSet<Elem> = basis.iter().map(|p| Elem::Point(p.clone())).collect();
    let mut todo: Vec<Elem> = (0..a.num_lines())
        .map(Elem::Line)
        .chain(a.points().into_iter().map(Elem::Point))
        .filter(|e| !placed.contains(e))
        .collect();
    while !todo.is_empty() {
        // determined elements first
        let pick = todo
            .iter()
            .position(|e| placed_incidences(a, e, &placed) >= 2)
            .or_else(|| {
                // cheapest free element: prefer one placed incidence
                let best = todo
                    .iter()
                    .enumerate()
                    .max_by_key(|(i, e)| (placed_incidences(a, e, &placed), usize::MAX - i));
                best.map(|(i, _)| i)
            })
            .unwrap();
        let e = todo.remove(pick);
        let inc = partners(a, &e, &placed);
        steps.push(match inc.len() {
            0 => Step::Free(e.clone(), 2),
            1 => Step::Free(e.clone(), 1),
            _ => {
                if e.is_point() {
                    Step::Meet(e.clone(), inc[0].clone(), inc[1].clone())
                } else {
                    Step::Join(e.clone(), inc[0].clone(), inc[1].clone())
                }
            }
        });
        placed.insert(e);
    }
    ConstructionPlan { steps }
}

/// Number of leftover incidence constraints a plan produces.
fn constraint_count(a: &Arrangement, plan: &ConstructionPlan) -> usize {
    let mut total: usize = (0..a.num_lines()).map(|i| a.line(i).len()).sum();
    for s in &plan.steps {
        total -= match s {
            Step::Basis(..) => 0,
            Step::Meet(..) | Step::Join(..) => 2,
            Step::Free(_, k) => 2 - k,
        };
    }
    total
}

/// Four points, no three on a common line.
fn basis_ok(a: &Arrangement, basis: &[String; 4]) -> bool {
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                let common = (0..a.num_lines()).any(|l| {
                    a.has_point(l, &basis[i]) && a.has_point(l, &basis[j]) && a.has_point(l, &basis[k])
                });
                if common {
                    return false;
                }
            }
        }
    }
    true
}

/// All greedy plans over valid bases with at most three parameters,
/// sorted by (constraints, params) and then by basis scan order.
/// Deterministic: bases are scanned in lexicographic order.
pub fn plan_candidates(a: &Arrangement) -> Result<Vec<ConstructionPlan>> {
    use itertools::Itertools;
    let points = a.points();
    if points.len() < 4 {
        return Err(Error::Plan("need at least four points for a basis".into()));
    }
    let mut scored: Vec<(usize, usize, usize, ConstructionPlan)> = Vec::new();
    for (rank, combo) in points.iter().combinations(4).enumerate() {
        let basis = [
            combo[0].clone(),
            combo[1].clone(),
            combo[2].clone(),
            combo[3].clone(),
        ];
        if !basis_ok(a, &basis) {
            continue;
        }
        let plan = greedy_plan(a, &basis);
        let r = plan.num_params();
        if r > 3 {
            continue;
        }
        let m = constraint_count(a, &plan);
        scored.push((m, r, rank, plan));
    }
    if scored.is_empty() {
        return Err(Error::Plan("no usable basis found".into()));
    }
    scored.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    Ok(scored.into_iter().map(|(_, _, _, p)| p).collect())
}

/// The best-scoring greedy plan, minimizing (constraints, params).
pub fn auto_plan(a: &Arrangement) -> Result<ConstructionPlan> {
    Ok(plan_candidates(a)?.swap_remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_text_round_trip() {
        let text = "basis P9 [1:0:0]\nbasis P2 [0:1:0]\nbasis P0 [0:0:1]\nbasis PO [1:1:1]\njoin L10 = P0 + PO\nfree L1 1\nmeet P5 = L7 ^ L10\nfree P6 2\n";
        let plan = ConstructionPlan::parse(text).unwrap();
        assert_eq!(plan.emit(), text);
        assert_eq!(plan.num_params(), 3);
    }

    #[test]
    fn bare_point_labels_accepted() {
        let plan = ConstructionPlan::parse("meet O = L8 ^ L10\n").unwrap();
        assert_eq!(
            plan.steps[0],
            Step::Meet(
                Elem::Point("O".into()),
                Elem::Line(7),
                Elem::Line(9)
            )
        );
    }

    #[test]
    fn malformed_lines_are_errors() {
        assert!(ConstructionPlan::parse("basis P9 1:0:0\n").is_err());
        assert!(ConstructionPlan::parse("free P5 3\n").is_err());
        assert!(ConstructionPlan::parse("meet O = L8 + L10\n").is_err());
        assert!(ConstructionPlan::parse("widen O\n").is_err());
    }

    #[test]
    fn triangle_auto_plan_has_no_parameters() {
        // three lines pairwise meeting in named points plus a fourth
        // point per line keeps every point above the deletion threshold
        let a = Arrangement::from_lines(vec![
            vec!["x", "y", "p"],
            vec!["y", "z", "q"],
            vec!["z", "x", "r"],
            vec!["p", "q", "r"],
        ])
        .unwrap();
        let plan = auto_plan(&a).unwrap();
        assert_eq!(plan.num_params(), 0);
    }
}
