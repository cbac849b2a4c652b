//! Isomorphism testing, automorphism groups, canonical forms, and orbit
//! machinery over arrangements.
//!
//! An isomorphism is a pair of bijections (points, lines) preserving
//! incidence. Points on two or more lines are determined by the line
//! bijection, so the search runs over line assignments with fingerprint
//! pruning; points on a single line are matched in sorted order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arrangement::{Arrangement, DoublePoint, ExtensionLine};
use crate::error::{Error, Result};

/// An arrangement isomorphism witness. `line_map[i]` is the image of
/// line `i`; `point_map` covers every point of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrangementMap {
    pub point_map: BTreeMap<String, String>,
    pub line_map: Vec<usize>,
}

impl ArrangementMap {
    pub fn identity(a: &Arrangement) -> ArrangementMap {
        ArrangementMap {
            point_map: a.points().into_iter().map(|p| (p.clone(), p)).collect(),
            line_map: (0..a.num_lines()).collect(),
        }
    }

    /// Independent check that the map is a pair of incidence-preserving
    /// bijections from `a` to `b`.
    pub fn verify(&self, a: &Arrangement, b: &Arrangement) -> bool {
        if a.num_lines() != b.num_lines() || self.line_map.len() != a.num_lines() {
            return false;
        }
        let mut seen_lines = vec![false; b.num_lines()];
        for &img in &self.line_map {
            if img >= b.num_lines() || seen_lines[img] {
                return false;
            }
            seen_lines[img] = true;
        }
        let a_points = a.points();
        if self.point_map.len() != a_points.len() || a_points.len() != b.num_points() {
            return false;
        }
        let images: BTreeSet<&String> = self.point_map.values().collect();
        if images.len() != self.point_map.len() {
            return false;
        }
        for (i, &img) in self.line_map.iter().enumerate() {
            if a.line(i).len() != b.line(img).len() {
                return false;
            }
            for p in a.line(i) {
                match self.point_map.get(p) {
                    Some(q) if b.has_point(img, q) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Composition `other ∘ self` (apply `self` first).
    pub fn then(&self, other: &ArrangementMap) -> ArrangementMap {
        ArrangementMap {
            point_map: self
                .point_map
                .iter()
                .map(|(p, q)| (p.clone(), other.point_map[q].clone()))
                .collect(),
            line_map: self.line_map.iter().map(|&i| other.line_map[i]).collect(),
        }
    }
}

/// fingerprint a line by its size and the sorted multiplicities of its
/// points; isomorphisms preserve both
fn line_fingerprint(a: &Arrangement, i: usize) -> (usize, Vec<usize>) {
    let mut mults: Vec<usize> = a.line(i).iter().map(|p| a.multiplicity(p)).collect();
    mults.sort();
    (a.line(i).len(), mults)
}

struct IsoSearch<'a> {
    a: &'a Arrangement,
    b: &'a Arrangement,
    a_prints: Vec<(usize, Vec<usize>)>,
    b_prints: Vec<(usize, Vec<usize>)>,
    /// collect every complete map instead of stopping at the first
    all: bool,
    found: Vec<ArrangementMap>,
}

impl<'a> IsoSearch<'a> {
    fn new(a: &'a Arrangement, b: &'a Arrangement, all: bool) -> Self {
        IsoSearch {
            a,
            b,
            a_prints: (0..a.num_lines()).map(|i| line_fingerprint(a, i)).collect(),
            b_prints: (0..b.num_lines()).map(|i| line_fingerprint(b, i)).collect(),
            all,
            found: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<ArrangementMap> {
        let n = self.a.num_lines();
        if n != self.b.num_lines() || self.a.num_points() != self.b.num_points() {
            return Vec::new();
        }
        let mut a_sorted = self.a_prints.clone();
        let mut b_sorted = self.b_prints.clone();
        a_sorted.sort();
        b_sorted.sort();
        if a_sorted != b_sorted {
            return Vec::new();
        }
        let mut line_map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.assign(0, &mut line_map, &mut used);
        self.found
    }

    fn assign(&mut self, i: usize, line_map: &mut Vec<usize>, used: &mut Vec<bool>) {
        let n = self.a.num_lines();
        if i == n {
            if let Some(map) = self.complete(line_map) {
                self.found.push(map);
            }
            return;
        }
        for img in 0..n {
            if used[img] || self.a_prints[i] != self.b_prints[img] {
                continue;
            }
            if !self.compatible(i, img, line_map) {
                continue;
            }
            line_map[i] = img;
            used[img] = true;
            self.assign(i + 1, line_map, used);
            used[img] = false;
            line_map[i] = usize::MAX;
            if !self.all && !self.found.is_empty() {
                return;
            }
        }
    }

    /// intersection pattern against all previously assigned lines, with
    /// shared-point consistency (concurrent triples must stay concurrent)
    fn compatible(&self, i: usize, img: usize, line_map: &[usize]) -> bool {
        for j in 0..i {
            let p = self.a.common_point(j, i);
            let q = self.b.common_point(line_map[j], img);
            match (p, q) {
                (None, None) => {}
                (Some(p), Some(q)) => {
                    // p and q must meet the same earlier assigned lines
                    for k in 0..i {
                        if k == j {
                            continue;
                        }
                        if self.a.has_point(k, p) != self.b.has_point(line_map[k], q) {
                            return false;
                        }
                    }
                }
                _ => return false,
            }
        }
        true
    }

    fn complete(&self, line_map: &[usize]) -> Option<ArrangementMap> {
        let mut point_map = BTreeMap::new();
        for p in self.a.points() {
            let through = self.a.lines_through(&p);
            if through.len() >= 2 {
                let q = self
                    .b
                    .common_point(line_map[through[0]], line_map[through[1]])?
                    .clone();
                point_map.insert(p, q);
            }
        }
        // points on a single line carry no structure: match them per line
        // in sorted order
        for i in 0..self.a.num_lines() {
            let mut a_priv: Vec<&String> = self
                .a
                .line(i)
                .iter()
                .filter(|p| self.a.lines_through(p).len() == 1)
                .collect();
            let mut b_priv: Vec<&String> = self
                .b
                .line(line_map[i])
                .iter()
                .filter(|q| self.b.lines_through(q).len() == 1)
                .collect();
            if a_priv.len() != b_priv.len() {
                return None;
            }
            a_priv.sort();
            b_priv.sort();
            for (p, q) in a_priv.into_iter().zip(b_priv) {
                point_map.insert(p.clone(), q.clone());
            }
        }
        let map = ArrangementMap {
            point_map,
            line_map: line_map.to_vec(),
        };
        map.verify(self.a, self.b).then_some(map)
    }
}

/// Finds an isomorphism witness from `a` to `b`, if any.
pub fn find_isomorphism(a: &Arrangement, b: &Arrangement) -> Option<ArrangementMap> {
    IsoSearch::new(a, b, false).run().into_iter().next()
}

/// Brute-force reference: tries every line bijection. Exponential; meant
/// for cross-checking on small inputs.
pub fn find_isomorphism_exhaustive(a: &Arrangement, b: &Arrangement) -> Option<ArrangementMap> {
    use itertools::Itertools;
    let n = a.num_lines();
    if n != b.num_lines() {
        return None;
    }
    let search = IsoSearch::new(a, b, false);
    for perm in (0..n).permutations(n) {
        let ok = (0..n).all(|i| {
            (0..i).all(|j| {
                match (a.common_point(j, i), b.common_point(perm[j], perm[i])) {
                    (None, None) => true,
                    (Some(p), Some(q)) => (0..n).all(|k| {
                        k == i || k == j || a.has_point(k, p) == b.has_point(perm[k], q)
                    }),
                    _ => false,
                }
            })
        });
        if ok {
            if let Some(map) = search.complete(&perm) {
                return Some(map);
            }
        }
    }
    None
}

/// A permutation group acting on an arrangement.
#[derive(Debug, Clone, Serialize)]
pub struct PermGroup {
    pub generators: Vec<ArrangementMap>,
    pub order: usize,
    /// element order -> number of elements of that order
    pub element_order_histogram: BTreeMap<usize, usize>,
    elements: Vec<ArrangementMap>,
}

impl PermGroup {
    pub fn elements(&self) -> &[ArrangementMap] {
        &self.elements
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|g| {
            self.generators
                .iter()
                .all(|h| g.then(h).line_map == h.then(g).line_map)
        })
    }
}

fn perm_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// closure of a generating set of line permutations
fn close_perms(n: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let identity: Vec<usize> = (0..n).collect();
    let mut closed: BTreeSet<Vec<usize>> = BTreeSet::new();
    closed.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if closed.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    closed
}

/// Computes the full automorphism group of `a` by exhaustive backtracking,
/// with a greedy generator reduction verified by closure enumeration.
pub fn automorphism_group(a: &Arrangement) -> PermGroup {
    let mut elements = IsoSearch::new(a, a, true).run();
    elements.sort_by(|x, y| x.line_map.cmp(&y.line_map));
    let order = elements.len();
    // for these groups the element order equals the line permutation
    // order: the point map is determined by the line map
    let mut histogram = BTreeMap::new();
    for e in &elements {
        *histogram.entry(perm_order(&e.line_map)).or_insert(0) += 1;
    }
    let n = a.num_lines();
    let mut generators: Vec<ArrangementMap> = Vec::new();
    let mut gen_perms: Vec<Vec<usize>> = Vec::new();
    let mut closed: BTreeSet<Vec<usize>> = close_perms(n, &gen_perms);
    let mut candidates: Vec<&ArrangementMap> = elements.iter().collect();
    candidates.sort_by_key(|e| std::cmp::Reverse(perm_order(&e.line_map)));
    for e in candidates {
        if closed.len() == order {
            break;
        }
        if !closed.contains(&e.line_map) {
            gen_perms.push(e.line_map.clone());
            generators.push(e.clone());
            closed = close_perms(n, &gen_perms);
        }
    }
    assert_eq!(closed.len(), order, "generator closure mismatch");
    PermGroup {
        generators,
        order,
        element_order_histogram: histogram,
        elements,
    }
}

/// A serialization constant across the isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Per-position code segment under a line ordering. Position k emits one
/// token per pair (0,k)..(k-1,k) (0 for disjoint, else 1 + discovery index
/// of the shared point) followed by the line size. The whole code
/// determines the arrangement up to isomorphism, and each segment depends
/// only on the ordering prefix, enabling branch-and-bound minimization.
struct CanonSearch<'a> {
    a: &'a Arrangement,
    n: usize,
    best: Option<Vec<u8>>,
}

impl<'a> CanonSearch<'a> {
    fn segment(
        &self,
        order: &[usize],
        k: usize,
        point_ids: &mut BTreeMap<String, u8>,
    ) -> Vec<u8> {
        let mut seg = Vec::with_capacity(k + 1);
        for j in 0..k {
            match self.a.common_point(order[j], order[k]) {
                None => seg.push(0),
                Some(p) => {
                    let next = point_ids.len() as u8;
                    let id = *point_ids.entry(p.clone()).or_insert(next);
                    seg.push(1 + id);
                }
            }
        }
        seg.push(self.a.line(order[k]).len() as u8);
        seg
    }

    /// Branch and bound. Invariant: whenever `best` is set at a node, the
    /// current code equals the best code's prefix, so segments compare
    /// positionally. A strictly smaller segment obsoletes the incumbent
    /// entirely (every completion beats it), so it is dropped and the
    /// subtree installs its own minimum.
    fn descend(
        &mut self,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        code: &mut Vec<u8>,
        point_ids: &BTreeMap<String, u8>,
    ) {
        let k = order.len();
        if k == self.n {
            if self.best.is_none() {
                self.best = Some(code.clone());
            }
            return;
        }
        let mut cands: Vec<(Vec<u8>, usize, BTreeMap<String, u8>)> = Vec::new();
        for cand in 0..self.n {
            if used[cand] {
                continue;
            }
            order.push(cand);
            let mut ids = point_ids.clone();
            let seg = self.segment(order, k, &mut ids);
            order.pop();
            cands.push((seg, cand, ids));
        }
        cands.sort();
        let base = code.len();
        for (seg, cand, ids) in cands {
            if let Some(best) = &self.best {
                match seg.as_slice().cmp(&best[base..base + seg.len()]) {
                    // candidates are sorted, later ones are no better
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                    std::cmp::Ordering::Less => self.best = None,
                }
            }
            code.extend_from_slice(&seg);
            order.push(cand);
            used[cand] = true;
            self.descend(order, used, code, &ids);
            used[cand] = false;
            order.pop();
            code.truncate(base);
        }
    }
}

/// Computes the lexicographically minimal incidence code over all line
/// orderings. Equal forms iff isomorphic.
pub fn canonical_form(a: &Arrangement) -> CanonicalForm {
    let n = a.num_lines();
    assert!(n <= 120, "code tokens are single bytes");
    let mut search = CanonSearch { a, n, best: None };
    search.descend(
        &mut Vec::new(),
        &mut vec![false; n],
        &mut Vec::new(),
        &BTreeMap::new(),
    );
    let mut bytes = vec![n as u8];
    bytes.extend(search.best.expect("nonempty arrangement"));
    CanonicalForm { bytes }
}

fn apply_to_extension(map_line: &[usize], ext: &ExtensionLine) -> Result<ExtensionLine> {
    ExtensionLine::new(
        ext.doubles()
            .iter()
            .map(|d| DoublePoint::new(map_line[d.a], map_line[d.b]))
            .collect(),
    )
}

/// One representative per orbit of `g` on `s`: the lexicographically least
/// member. Errors if some map moves a member outside `s`.
pub fn orbit_representatives(g: &PermGroup, s: &[ExtensionLine]) -> Result<Vec<ExtensionLine>> {
    let members: BTreeSet<&ExtensionLine> = s.iter().collect();
    let mut seen: BTreeSet<ExtensionLine> = BTreeSet::new();
    let mut reps = Vec::new();
    let mut sorted: Vec<&ExtensionLine> = s.iter().collect();
    sorted.sort();
    for ext in sorted {
        if seen.contains(ext) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for e in g.elements() {
            let img = apply_to_extension(&e.line_map, ext)?;
            if !members.contains(&img) {
                return Err(Error::UnstableAction);
            }
            orbit.insert(img);
        }
        reps.push(orbit.first().expect("orbit nonempty").clone());
        seen.extend(orbit);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn fano() -> Arrangement {
        Arrangement::from_lines(vec![
            vec!["1", "2", "3"],
            vec!["1", "4", "5"],
            vec!["1", "6", "7"],
            vec!["2", "4", "6"],
            vec!["2", "5", "7"],
            vec!["3", "4", "7"],
            vec!["3", "5", "6"],
        ])
        .unwrap()
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let a = fano();
        let id = ArrangementMap::identity(&a);
        assert!(id.verify(&a, &a));
        let found = find_isomorphism(&a, &a).unwrap();
        assert!(found.verify(&a, &a));
    }

    #[test]
    fn published_witness_for_bdl_bik_verifies() {
        let cat = Catalog::bundled();
        let bdl = cat.build_named("(10_3)_5.BDL").unwrap();
        let bik = cat.build_named("(10_3)_5.BIK").unwrap();
        let point_map: BTreeMap<String, String> = [
            ("0", "8"),
            ("1", "6"),
            ("2", "I"),
            ("3", "7"),
            ("4", "B"),
            ("5", "9"),
            ("6", "3"),
            ("7", "0"),
            ("8", "K"),
            ("9", "2"),
            ("B", "1"),
            ("D", "4"),
            ("L", "5"),
        ]
        .into_iter()
        .map(|(p, q)| (p.to_owned(), q.to_owned()))
        .collect();
        let line_map = vec![2, 7, 8, 4, 10, 9, 6, 0, 5, 3, 1];
        let map = ArrangementMap {
            point_map,
            line_map,
        };
        assert!(map.verify(&bdl, &bik));
    }

    #[test]
    fn finds_witness_between_isomorphic_extensions() {
        let cat = Catalog::bundled();
        let bdl = cat.build_named("(10_3)_5.BDL").unwrap();
        let bik = cat.build_named("(10_3)_5.BIK").unwrap();
        let map = find_isomorphism(&bdl, &bik).unwrap();
        assert!(map.verify(&bdl, &bik));

        let aem = cat.build_named("(10_3)_1.AEM").unwrap();
        let klo = cat.build_named("(10_3)_6.KLO").unwrap();
        let map = find_isomorphism(&aem, &klo).unwrap();
        assert!(map.verify(&aem, &klo));
    }

    #[test]
    fn distinguishes_non_isomorphic_configurations() {
        let cat = Catalog::bundled();
        let names: Vec<String> = cat.ten3().map(|e| e.name.clone()).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let a = &cat.get(&names[i]).unwrap().arrangement;
                let b = &cat.get(&names[j]).unwrap().arrangement;
                assert!(
                    find_isomorphism(a, b).is_none(),
                    "{} vs {}",
                    names[i],
                    names[j]
                );
            }
        }
    }

    #[test]
    fn matches_exhaustive_search_on_small_inputs() {
        let cat = Catalog::bundled();
        let f = fano();
        let nine: Vec<&Arrangement> = cat.nine3().map(|e| &e.arrangement).collect();
        // 8-line inputs from deleting a line of a (9_3)
        let del1 = nine[0].remove_line(0).unwrap();
        let del2 = nine[1].remove_line(4).unwrap();
        let del3 = nine[2].remove_line(8).unwrap();
        let pool = [&f, &del1, &del2, &del3];
        for a in pool {
            for b in pool {
                assert_eq!(
                    find_isomorphism(a, b).is_some(),
                    find_isomorphism_exhaustive(a, b).is_some()
                );
            }
        }
    }

    #[test]
    fn fano_automorphism_group_has_order_168() {
        let g = automorphism_group(&fano());
        assert_eq!(g.order, 168);
        assert!(!g.is_abelian());
    }

    #[test]
    fn ten3_automorphism_orders() {
        let cat = Catalog::bundled();
        let want = [120, 12, 4, 24, 2, 6, 3, 3, 4, 10];
        for (e, w) in cat.ten3().zip(want) {
            let g = automorphism_group(&e.arrangement);
            assert_eq!(g.order, w, "{}", e.name);
        }
    }

    #[test]
    fn ten3_1_histogram_matches_s5() {
        let cat = Catalog::bundled();
        let g = automorphism_group(&cat.get("(10_3)_1").unwrap().arrangement);
        let want: BTreeMap<usize, usize> =
            [(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)].into();
        assert_eq!(g.element_order_histogram, want);
        assert!(!g.is_abelian());
    }

    #[test]
    fn nine3_1_automorphism_group_has_order_108() {
        let cat = Catalog::bundled();
        let g = automorphism_group(&cat.get("(9_3)_1").unwrap().arrangement);
        assert_eq!(g.order, 108);
    }

    #[test]
    fn canonical_form_is_relabel_invariant() {
        let cat = Catalog::bundled();
        let a = cat.build_named("(10_3)_7.ADO").unwrap();
        let base = canonical_form(&a);
        // a nontrivial relabeling and a line shuffle
        let points = a.points();
        let map: BTreeMap<String, String> = points
            .iter()
            .zip(points.iter().rev())
            .map(|(p, q)| (p.clone(), format!("x{q}")))
            .collect();
        let shuffled = a.relabel(&map).permute_lines(&[3, 1, 4, 0, 9, 2, 6, 5, 8, 7, 10]);
        assert_eq!(canonical_form(&shuffled), base);
    }

    #[test]
    fn canonical_form_identifies_published_pairs() {
        let cat = Catalog::bundled();
        let bdl = cat.build_named("(10_3)_5.BDL").unwrap();
        let bik = cat.build_named("(10_3)_5.BIK").unwrap();
        assert_eq!(canonical_form(&bdl), canonical_form(&bik));

        let cdg = cat.build_named("(9_3)_1.CDG").unwrap();
        let cdh = cat.build_named("(9_3)_1.CDH").unwrap();
        let cfg = cat.build_named("(9_3)_1.CFG").unwrap();
        assert_eq!(canonical_form(&cdg), canonical_form(&cdh));
        assert_eq!(canonical_form(&cdh), canonical_form(&cfg));

        let ado = cat.build_named("(10_3)_7.ADO").unwrap();
        assert_ne!(canonical_form(&ado), canonical_form(&bdl));
    }

    #[test]
    fn canonical_form_separates_the_ten3s() {
        let cat = Catalog::bundled();
        let forms: BTreeSet<CanonicalForm> = cat
            .ten3()
            .map(|e| canonical_form(&e.arrangement))
            .collect();
        assert_eq!(forms.len(), 10);
    }

    #[test]
    fn canonical_form_hex_is_lowercase() {
        let hex = canonical_form(&fano()).to_hex();
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
    }

    #[test]
    fn orbits_under_trivial_group_are_singletons() {
        let cat = Catalog::bundled();
        let a = &cat.get("(10_3)_5").unwrap().arrangement;
        let trivial = PermGroup {
            generators: vec![],
            order: 1,
            element_order_histogram: [(1, 1)].into(),
            elements: vec![ArrangementMap::identity(a)],
        };
        let s: Vec<ExtensionLine> = a
            .doubles()
            .into_iter()
            .map(|d| ExtensionLine::new(vec![d]).unwrap())
            .collect();
        assert_eq!(orbit_representatives(&trivial, &s).unwrap(), s);
    }
}
