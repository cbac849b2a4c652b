//! Newton polytopes of polynomials in up to three variables: exact
//! extreme points, Minkowski sums, and the coprime-vertex criterion.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::mpoly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytope {
    dim: usize,
    vertices: BTreeSet<Vec<i64>>,
}

impl NewtonPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The extreme points, sorted.
    pub fn vertices(&self) -> Vec<Vec<i64>> {
        self.vertices.iter().cloned().collect()
    }

    fn from_points(dim: usize, points: BTreeSet<Vec<i64>>) -> NewtonPolytope {
        let all: Vec<&Vec<i64>> = points.iter().collect();
        let vertices = all
            .iter()
            .filter(|v| {
                let others: Vec<&Vec<i64>> = all.iter().filter(|u| u != v).copied().collect();
                !in_convex_hull(v, &others)
            })
            .map(|v| (*v).clone())
            .collect();
        NewtonPolytope { dim, vertices }
    }
}

/// Exact feasibility: is `v` a convex combination of `points`? Phase-one
/// simplex over rationals with Bland's rule.
fn in_convex_hull(v: &[i64], points: &[&Vec<i64>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let m = v.len() + 1;
    let n = points.len();
    // constraints: sum_j lambda_j * u_j = v (per coordinate), sum lambda = 1
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for c in 0..v.len() {
        let mut row: Vec<BigRational> = points
            .iter()
            .map(|u| BigRational::from(BigInt::from(u[c])))
            .collect();
        row.push(BigRational::from(BigInt::from(v[c])));
        rows.push(row);
    }
    let mut row: Vec<BigRational> = (0..n).map(|_| BigRational::one()).collect();
    row.push(BigRational::one());
    rows.push(row);
    // make right-hand sides nonnegative
    for row in &mut rows {
        if row[n] < BigRational::zero() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    // tableau with artificial variables; minimize their sum
    let total = n + m;
    let mut t: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row[..n].to_vec();
            for j in 0..m {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r.push(row[n].clone());
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective row: sum of artificial rows (cost of artificials is 1)
    let mut obj: Vec<BigRational> = vec![BigRational::zero(); total + 1];
    for r in &t {
        for (j, x) in r.iter().enumerate() {
            obj[j] += x;
        }
    }
    for j in n..n + m {
        obj[j] = BigRational::zero();
    }
    loop {
        // Bland: entering = first column with positive reduced cost
        let Some(enter) = (0..total).find(|&j| obj[j] > BigRational::zero() && !basis.contains(&j))
        else {
            break;
        };
        // leaving: min ratio, ties by smallest basis index
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter] > BigRational::zero() {
                let ratio = &r[total] / &r[enter];
                match &leave {
                    Some((li, lr))
                        if *lr < ratio || (*lr == ratio && basis[*li] < basis[i]) => {}
                    _ => leave = Some((i, ratio)),
                }
            }
        }
        let Some((li, _)) = leave else {
            break;
        };
        // pivot
        let piv = t[li][enter].clone();
        for x in t[li].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for i in 0..m {
            if i == li {
                continue;
            }
            let f = t[i][enter].clone();
            if !f.is_zero() {
                for j in 0..=total {
                    let d = &f * &t[li][j];
                    t[i][j] -= d;
                }
            }
        }
        let f = obj[enter].clone();
        if !f.is_zero() {
            for j in 0..=total {
                let d = &f * &t[li][j];
                obj[j] -= d;
            }
        }
        basis[li] = enter;
    }
    // feasible iff the artificial objective reached zero
    obj[total].is_zero()
}

/// The convex hull of the exponent support. Arity at most 3.
pub fn newton_polytope(f: &MPoly) -> Result<NewtonPolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.arity() > 3 {
        return Err(Error::ArityTooLarge(f.arity()));
    }
    let points: BTreeSet<Vec<i64>> = f
        .terms()
        .map(|(e, _)| e.iter().map(|&x| x as i64).collect())
        .collect();
    Ok(NewtonPolytope::from_points(f.arity(), points))
}

/// Hull of pairwise vertex sums.
pub fn minkowski_sum(p: &NewtonPolytope, q: &NewtonPolytope) -> Result<NewtonPolytope> {
    if p.dim != q.dim {
        return Err(Error::ArityMismatch);
    }
    let sums: BTreeSet<Vec<i64>> = p
        .vertices
        .iter()
        .flat_map(|a| {
            q.vertices
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
        })
        .collect();
    Ok(NewtonPolytope::from_points(p.dim, sums))
}

/// True iff the gcd of all hull-vertex coordinates is 1.
pub fn gao_coprime_test(f: &MPoly) -> Result<bool> {
    let hull = newton_polytope(f)?;
    let mut g: i64 = 0;
    for v in &hull.vertices {
        for &c in v {
            g = num_integer::gcd(g, c);
        }
    }
    Ok(g == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(text: &str) -> MPoly {
        MPoly::parse(text, &["a", "b"]).unwrap()
    }

    #[test]
    fn flagship_polytope_vertices() {
        let f = p2("a^4*b^2 + a^4*b - 3*a^3*b^2 - 3*a^3*b + a^2*b^2 + 2*a^2*b - 2*a*b - a + 1");
        let hull = newton_polytope(&f).unwrap();
        assert_eq!(
            hull.vertices(),
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![2, 2],
                vec![4, 1],
                vec![4, 2],
            ]
        );
        assert!(gao_coprime_test(&f).unwrap());
    }

    #[test]
    fn monomial_is_a_point() {
        let hull = newton_polytope(&p2("a^2*b^3")).unwrap();
        assert_eq!(hull.vertices(), vec![vec![2, 3]]);
    }

    #[test]
    fn simplex_hull() {
        let hull = newton_polytope(&p2("a + b + 1")).unwrap();
        assert_eq!(hull.vertices(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn interior_and_edge_points_are_dropped() {
        // (1,1) interior, (1,0) and (0,1) on edges of the 2x2 square
        let f = p2("1 + a^2 + b^2 + a^2*b^2 + a*b + a + b");
        let hull = newton_polytope(&f).unwrap();
        assert_eq!(
            hull.vertices(),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
    }

    #[test]
    fn minkowski_product_rule() {
        let f = p2("a + 1");
        let g = p2("b + 1");
        let sum = minkowski_sum(
            &newton_polytope(&f).unwrap(),
            &newton_polytope(&g).unwrap(),
        )
        .unwrap();
        let prod = newton_polytope(&f.mul(&g).unwrap()).unwrap();
        assert_eq!(sum, prod);
        assert_eq!(sum.vertices().len(), 4);
    }

    #[test]
    fn gao_fails_on_doubled_monomial() {
        assert!(!gao_coprime_test(&p2("a^2*b^2")).unwrap());
        assert!(gao_coprime_test(&p2("a + 1")).unwrap());
    }

    #[test]
    fn three_dimensional_hull() {
        let f = MPoly::parse("1 + a^2 + b^2 + c^2 + a*b*c", &["a", "b", "c"]).unwrap();
        let hull = newton_polytope(&f).unwrap();
        // every other point has coordinate sum <= 2, so (1,1,1) is extreme
        let verts = hull.vertices();
        assert_eq!(verts.len(), 5);
        assert!(verts.contains(&vec![1, 1, 1]));
        assert!(verts.contains(&vec![0, 0, 0]));
        assert!(verts.contains(&vec![2, 0, 0]));
        let zero_poly = MPoly::zero(&["a"]);
        assert!(newton_polytope(&zero_poly).is_err());
    }
}
