//! Combinatorial line arrangements: lines as sets of point labels, double
//! points, one-line extension and deletion surgery, and the text table format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of line indices whose lines have empty intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoublePoint {
    pub a: usize,
    pub b: usize,
}

impl DoublePoint {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            DoublePoint { a, b }
        } else {
            DoublePoint { a: b, b: a }
        }
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.a == i || self.b == i
    }
}

impl fmt::Display for DoublePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{L{}, L{}}}", self.a + 1, self.b + 1)
    }
}

/// A candidate new line: a set of double points, no two sharing a line index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExtensionLine {
    doubles: Vec<DoublePoint>,
}

impl ExtensionLine {
    /// Builds an extension line from a set of doubles, rejecting repeated
    /// members and members that share a line index.
    pub fn new(mut doubles: Vec<DoublePoint>) -> Result<Self> {
        doubles.sort();
        doubles.dedup();
        for (i, d) in doubles.iter().enumerate() {
            for e in &doubles[i + 1..] {
                if d.contains_line(e.a) || d.contains_line(e.b) {
                    return Err(Error::ExtensionSharesLine {
                        a0: d.a,
                        a1: d.b,
                        b0: e.a,
                        b1: e.b,
                    });
                }
            }
        }
        Ok(ExtensionLine { doubles })
    }

    pub fn doubles(&self) -> &[DoublePoint] {
        &self.doubles
    }

    pub fn len(&self) -> usize {
        self.doubles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubles.is_empty()
    }
}

/// A combinatorial line arrangement: an ordered list of named lines, each a
/// set of point labels. Two distinct lines share at most one label.
///
/// The "every point on at least three lines" convention is checked by
/// [`Arrangement::validate`], not by constructors, so intermediate surgery
/// states are representable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Arrangement {
    names: Vec<String>,
    lines: Vec<Vec<String>>,
}

impl PartialEq for Arrangement {
    /// Label-sensitive incidence equality: same number of lines, same point
    /// sets per line position. Line names and within-line order are
    /// presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.lines.len() == other.lines.len()
            && self
                .lines
                .iter()
                .zip(&other.lines)
                .all(|(a, b)| sorted(a) == sorted(b))
    }
}

impl Eq for Arrangement {}

fn sorted(v: &[String]) -> Vec<&String> {
    let mut s: Vec<&String> = v.iter().collect();
    s.sort();
    s
}

impl Arrangement {
    /// Builds an arrangement from named lines, checking the two structural
    /// invariants (distinct labels within a line, pairwise intersections of
    /// size at most one).
    pub fn new(names: Vec<String>, lines: Vec<Vec<String>>) -> Result<Self> {
        assert_eq!(names.len(), lines.len());
        for (name, line) in names.iter().zip(&lines) {
            let mut seen = BTreeSet::new();
            for p in line {
                if !seen.insert(p) {
                    return Err(Error::DuplicatePointInLine {
                        line: name.clone(),
                        point: p.clone(),
                    });
                }
            }
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let common = lines[i].iter().filter(|p| lines[j].contains(p)).count();
                if common > 1 {
                    return Err(Error::LinesShareTwoPoints {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
            }
        }
        Ok(Arrangement { names, lines })
    }

    pub fn from_lines(lines: Vec<Vec<&str>>) -> Result<Self> {
        let names = (1..=lines.len()).map(|i| format!("L{i}")).collect();
        let lines = lines
            .into_iter()
            .map(|l| l.into_iter().map(str::to_owned).collect())
            .collect();
        Arrangement::new(names, lines)
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, i: usize) -> &[String] {
        &self.lines[i]
    }

    pub fn line_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn line_index_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// All point labels, sorted.
    pub fn points(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.lines.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    pub fn num_points(&self) -> usize {
        self.points().len()
    }

    pub fn has_point(&self, i: usize, p: &str) -> bool {
        self.lines[i].iter().any(|q| q == p)
    }

    /// Indices of the lines through `p`, in line order.
    pub fn lines_through(&self, p: &str) -> Vec<usize> {
        (0..self.lines.len())
            .filter(|&i| self.has_point(i, p))
            .collect()
    }

    pub fn multiplicity(&self, p: &str) -> usize {
        self.lines_through(p).len()
    }

    /// The common point of lines `i` and `j`, if any.
    pub fn common_point(&self, i: usize, j: usize) -> Option<&String> {
        self.lines[i].iter().find(|p| self.lines[j].contains(p))
    }

    /// Checks the "every point on at least three lines" convention.
    pub fn validate(&self) -> Result<()> {
        for p in self.points() {
            if self.multiplicity(&p) < 3 {
                return Err(Error::UnderincidentPoint(p));
            }
        }
        Ok(())
    }

    /// All double points: unordered line pairs with empty intersection,
    /// in lexicographic order by line index.
    pub fn doubles(&self) -> Vec<DoublePoint> {
        let n = self.lines.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.common_point(i, j).is_none() {
                    out.push(DoublePoint::new(i, j));
                }
            }
        }
        out
    }

    /// Default letter labels for the doubles: `A`, `B`, `C`, ... assigned in
    /// lexicographic double order, skipping letters already used as point
    /// labels. Reproduces the published label tables for the ten (10_3)
    /// configurations.
    pub fn double_labels(&self) -> BTreeMap<DoublePoint, String> {
        let used: BTreeSet<String> = self.points().into_iter().collect();
        let mut labels = BTreeMap::new();
        let mut next = fresh_labels(&used);
        for d in self.doubles() {
            labels.insert(d, next.next().expect("label supply exhausted"));
        }
        labels
    }

    /// One-line extension by `ext`: each consumed double point becomes a
    /// fresh point label on both of its lines and on the new line. Labels
    /// are taken from [`Arrangement::double_labels`].
    pub fn add_line(&self, ext: &ExtensionLine) -> Result<Arrangement> {
        let labels = self.double_labels();
        let assigned: Vec<(DoublePoint, String)> = ext
            .doubles()
            .iter()
            .map(|d| {
                labels
                    .get(d)
                    .map(|s| (*d, s.clone()))
                    .ok_or(Error::NotADouble { a: d.a, b: d.b })
            })
            .collect::<Result<_>>()?;
        self.add_line_with_labels(&assigned)
    }

    /// One-line extension with caller-supplied labels for the consumed
    /// doubles (used by the catalogs, whose labels follow the literature).
    pub fn add_line_with_labels(&self, assigned: &[(DoublePoint, String)]) -> Result<Arrangement> {
        let doubles: BTreeSet<DoublePoint> = self.doubles().into_iter().collect();
        ExtensionLine::new(assigned.iter().map(|(d, _)| *d).collect())?;
        let mut names = self.names.clone();
        let mut lines = self.lines.clone();
        let mut new_line = Vec::new();
        for (d, label) in assigned {
            if !doubles.contains(d) {
                return Err(Error::NotADouble { a: d.a, b: d.b });
            }
            lines[d.a].push(label.clone());
            lines[d.b].push(label.clone());
            new_line.push(label.clone());
        }
        new_line.sort();
        names.push(format!("L{}", lines.len() + 1));
        lines.push(new_line);
        Arrangement::new(names, lines)
    }

    /// Deletes line `i`; any point left on at most two lines is unnamed
    /// (it has become a double point or vanished entirely).
    pub fn remove_line(&self, i: usize) -> Result<Arrangement> {
        if i >= self.lines.len() {
            return Err(Error::LineIndexOutOfRange(i));
        }
        let mut names = self.names.clone();
        let mut lines = self.lines.clone();
        names.remove(i);
        lines.remove(i);
        let demoted: BTreeSet<String> = lines
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|p| lines.iter().filter(|l| l.contains(p)).count() <= 2)
            .collect();
        for line in &mut lines {
            line.retain(|p| !demoted.contains(p));
        }
        Arrangement::new(names, lines)
    }

    /// True iff some line carries at most two point labels.
    pub fn is_reductive(&self) -> bool {
        self.lines.iter().any(|l| l.len() <= 2)
    }

    /// True iff the arrangement is an (n_3) configuration: as many points as
    /// lines, three points per line, three lines per point.
    pub fn is_n3_configuration(&self) -> bool {
        let points = self.points();
        points.len() == self.lines.len()
            && self.lines.iter().all(|l| l.len() == 3)
            && points.iter().all(|p| self.multiplicity(p) == 3)
    }

    /// Applies a point relabeling; `map` must cover every point.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Arrangement {
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|p| map[p].clone()).collect())
            .collect();
        Arrangement {
            names: self.names.clone(),
            lines,
        }
    }

    /// Reorders the lines by `perm`, where `perm[new] = old`.
    pub fn permute_lines(&self, perm: &[usize]) -> Arrangement {
        Arrangement {
            names: perm.iter().map(|&o| self.names[o].clone()).collect(),
            lines: perm.iter().map(|&o| self.lines[o].clone()).collect(),
        }
    }

    /// Parses the arrangement-table text format: a header row of line names,
    /// then rows giving the points of each line positionally. `.` and `-`
    /// mark empty cells; a row may stop early once all its remaining cells
    /// are empty.
    pub fn parse_table(text: &str) -> Result<Arrangement> {
        let mut rows = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<String> = rows
            .next()
            .ok_or(Error::EmptyTable)?
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        if header.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut lines: Vec<Vec<String>> = vec![Vec::new(); header.len()];
        for row in rows {
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() > header.len() {
                return Err(Error::RowTooWide {
                    got: cells.len(),
                    expected: header.len(),
                });
            }
            for (i, cell) in cells.iter().enumerate() {
                if *cell != "." && *cell != "-" {
                    lines[i].push((*cell).to_owned());
                }
            }
        }
        Arrangement::new(header, lines)
    }

    /// Emits the arrangement-table text format; round-trips with
    /// [`Arrangement::parse_table`].
    pub fn emit_table(&self) -> String {
        let depth = self.lines.iter().map(Vec::len).max().unwrap_or(0);
        let width = self
            .names
            .iter()
            .map(String::len)
            .chain(self.lines.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let mut push_row = |cells: Vec<String>| {
            let row: Vec<String> = cells.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(row.join(" ").trim_end());
            out.push('\n');
        };
        push_row(self.names.clone());
        for r in 0..depth {
            push_row(
                self.lines
                    .iter()
                    .map(|l| l.get(r).cloned().unwrap_or_else(|| ".".to_owned()))
                    .collect(),
            );
        }
        out
    }

    /// JSON projection `{"names": [...], "lines": [[...], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "names": self.names, "lines": self.lines })
    }
}

/// Infinite supply of fresh labels `A`..`Z`, `AA`, `AB`, ... skipping any in
/// `used`.
fn fresh_labels(used: &BTreeSet<String>) -> impl Iterator<Item = String> + '_ {
    (0u32..).filter_map(move |n| {
        let label = alpha_label(n);
        (!used.contains(&label)).then_some(label)
    })
}

fn alpha_label(mut n: u32) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    const FANO: &str = "L1 L2 L3 L4 L5 L6 L7
P1 P1 P1 P2 P2 P3 P3
P2 P4 P6 P4 P5 P4 P5
P3 P5 P7 P6 P7 P7 P6";

    #[test]
    fn parse_fano() {
        let a = Arrangement::parse_table(FANO).unwrap();
        assert_eq!(a.num_lines(), 7);
        assert!(a.lines.iter().all(|l| l.len() == 3));
        assert!(a.is_n3_configuration());
        a.validate().unwrap();
    }

    #[test]
    fn parse_single_column() {
        let a = Arrangement::parse_table("L1\nP1\nP2\nP3").unwrap();
        assert_eq!(a.num_lines(), 1);
        assert_eq!(a.line(0), &["P1", "P2", "P3"]);
        // the >=3-lines convention is a separate validation pass
        assert!(a.validate().is_err());
    }

    #[test]
    fn parse_rejects_duplicate_point_in_column() {
        let err = Arrangement::parse_table("L1\nP1\nP1").unwrap_err();
        assert!(matches!(err, Error::DuplicatePointInLine { .. }));
    }

    #[test]
    fn parse_rejects_repeated_intersection() {
        let err = Arrangement::parse_table("L1 L2\nP1 P1\nP2 P2\nP3 P4").unwrap_err();
        assert!(matches!(err, Error::LinesShareTwoPoints { .. }));
    }

    #[test]
    fn parse_rejects_empty() {
        assert!(matches!(
            Arrangement::parse_table("  \n "),
            Err(Error::EmptyTable)
        ));
    }

    #[test]
    fn table_round_trip() {
        let a = Arrangement::parse_table(FANO).unwrap();
        let emitted = a.emit_table();
        let b = Arrangement::parse_table(&emitted).unwrap();
        assert_eq!(a, b);
        assert_eq!(emitted, Arrangement::parse_table(&emitted).unwrap().emit_table());
    }

    #[test]
    fn fano_has_no_doubles() {
        let a = Arrangement::parse_table(FANO).unwrap();
        // brute force over all 21 line pairs
        let mut count = 0;
        for i in 0..7 {
            for j in i + 1..7 {
                if a.common_point(i, j).is_none() {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 0);
        assert!(a.doubles().is_empty());
    }

    #[test]
    fn doubles_finds_disjoint_pair() {
        let a = Arrangement::from_lines(vec![
            vec!["1", "2", "3"],
            vec!["4", "5", "6"],
            vec!["1", "4", "7"],
        ])
        .unwrap();
        assert!(a.doubles().contains(&DoublePoint::new(0, 1)));
    }

    #[test]
    fn ten3_each_has_fifteen_doubles() {
        let cat = Catalog::bundled();
        for entry in cat.ten3() {
            assert_eq!(entry.arrangement.doubles().len(), 15, "{}", entry.name);
        }
    }

    #[test]
    fn add_line_ano_matches_published_table() {
        let cat = Catalog::bundled();
        let base = cat.get("(10_3)_5").unwrap();
        let ext = base.extension_by_letters("ANO").unwrap();
        let got = base.arrangement.add_line(&ext.1).unwrap();
        let want = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10 L11
             1  1  1  8  2  3  2  4  3  5   A
             2  4  6  9  4  7  5  6  6  7   N
             3  5  7  0  8  8  9  9  0  0   O
             A  .  .  A  .  .  N  O  N  O   .",
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn add_line_ado_matches_published_table() {
        let cat = Catalog::bundled();
        let base = cat.get("(10_3)_7").unwrap();
        let ext = base.extension_by_letters("ADO").unwrap();
        let got = base.arrangement.add_line(&ext.1).unwrap();
        let want = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10 L11
             1  1  1  2  4  6  5  3  7  2   A
             2  4  6  8  8  9  7  5  3  4   D
             3  5  7  9  0  0  8  9  0  6   O
             A  D  .  D  A  .  .  .  O  O   .",
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn add_empty_line_is_reductive() {
        let cat = Catalog::bundled();
        let base = &cat.get("(10_3)_5").unwrap().arrangement;
        let ext = ExtensionLine::new(vec![]).unwrap();
        let got = base.add_line(&ext).unwrap();
        assert_eq!(got.num_lines(), 11);
        assert!(got.line(10).is_empty());
        assert!(got.is_reductive());
    }

    #[test]
    fn remove_line_undoes_extension() {
        let cat = Catalog::bundled();
        let base = &cat.get("(10_3)_5").unwrap().arrangement;
        let ext = cat.get("(10_3)_5").unwrap().extension_by_letters("ANO").unwrap().1;
        let bigger = base.add_line(&ext).unwrap();
        let back = bigger.remove_line(10).unwrap();
        // fresh labels disappear with the new line, so this is equality
        assert_eq!(&back, base);
    }

    #[test]
    fn remove_line_drops_new_doubles() {
        let cat = Catalog::bundled();
        let a = &cat.get("(10_3)_1").unwrap().arrangement;
        let b = a.remove_line(0).unwrap();
        assert_eq!(b.num_lines(), 9);
        for p in ["1", "2", "3"] {
            assert!(!b.points().iter().any(|q| q == p), "point {p} should be gone");
        }
    }

    #[test]
    fn remove_line_keeps_quadruple_points() {
        // three concurrent pencils through each point of a "quadrilateral":
        // build a small arrangement where one line's points all have
        // multiplicity 4, then delete it.
        let a = Arrangement::from_lines(vec![
            vec!["p", "q"],
            vec!["p", "a1"],
            vec!["p", "a2"],
            vec!["p", "a3"],
            vec!["q", "b1"],
            vec!["q", "b2"],
            vec!["q", "b3"],
        ])
        .unwrap();
        let b = a.remove_line(0).unwrap();
        assert!(b.points().iter().any(|x| x == "p"));
        assert!(b.points().iter().any(|x| x == "q"));
        assert_eq!(b.multiplicity("p"), 3);
    }

    #[test]
    fn reductive_checks() {
        let cat = Catalog::bundled();
        let one = &cat.get("(10_3)_1").unwrap().arrangement;
        assert!(!one.is_reductive());
        let five = cat.get("(10_3)_5").unwrap();
        let ano = five
            .arrangement
            .add_line(&five.extension_by_letters("ANO").unwrap().1)
            .unwrap();
        assert!(!ano.is_reductive());
    }

    #[test]
    fn n3_checks() {
        let cat = Catalog::bundled();
        for entry in cat.ten3() {
            assert!(entry.arrangement.is_n3_configuration(), "{}", entry.name);
        }
        let five = cat.get("(10_3)_5").unwrap();
        let ano = five
            .arrangement
            .add_line(&five.extension_by_letters("ANO").unwrap().1)
            .unwrap();
        assert!(!ano.is_n3_configuration());
    }

    #[test]
    fn add_line_preserves_existing_incidence() {
        let cat = Catalog::bundled();
        let base = &cat.get("(10_3)_3").unwrap().arrangement;
        let ext = ExtensionLine::new(vec![base.doubles()[0], base.doubles()[14]]).unwrap();
        let bigger = base.add_line(&ext).unwrap();
        for i in 0..base.num_lines() {
            for j in i + 1..base.num_lines() {
                let old: BTreeSet<_> = base.line(i).iter().filter(|p| base.line(j).contains(p)).collect();
                let new: BTreeSet<_> = bigger
                    .line(i)
                    .iter()
                    .filter(|p| bigger.line(j).contains(p) && base.points().contains(p))
                    .collect();
                assert_eq!(old, new);
            }
        }
    }

    #[test]
    fn alpha_labels_extend_past_z() {
        assert_eq!(alpha_label(0), "A");
        assert_eq!(alpha_label(25), "Z");
        assert_eq!(alpha_label(26), "AA");
    }
}
