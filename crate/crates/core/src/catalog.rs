//! The bundled (9_3) and (10_3) configuration catalogs: arrangement tables
//! and the letter labels of their double points, as published.

use std::collections::BTreeMap;

use crate::arrangement::{Arrangement, DoublePoint, ExtensionLine};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub arrangement: Arrangement,
    /// Letter label of each double point.
    pub labels: BTreeMap<DoublePoint, String>,
}

impl CatalogEntry {
    pub fn double_by_letter(&self, letter: &str) -> Option<DoublePoint> {
        self.labels
            .iter()
            .find_map(|(d, l)| (l == letter).then_some(*d))
    }

    pub fn letter_of(&self, d: &DoublePoint) -> Option<&str> {
        self.labels.get(d).map(String::as_str)
    }

    /// Resolves a letter string like "ANO" into labeled doubles and the
    /// extension line they define.
    pub fn extension_by_letters(
        &self,
        letters: &str,
    ) -> Result<(Vec<(DoublePoint, String)>, ExtensionLine)> {
        let mut assigned = Vec::new();
        for ch in letters.chars() {
            let s = ch.to_string();
            let d = self
                .double_by_letter(&s)
                .ok_or_else(|| Error::UnknownCatalogEntry(format!("{}.{}", self.name, s)))?;
            assigned.push((d, s));
        }
        assigned.sort();
        let ext = ExtensionLine::new(assigned.iter().map(|(d, _)| *d).collect())?;
        Ok((assigned, ext))
    }

    /// Builds the named one-line extension, e.g. `extend("ANO")`.
    pub fn extend(&self, letters: &str) -> Result<Arrangement> {
        let (assigned, _) = self.extension_by_letters(letters)?;
        self.arrangement.add_line_with_labels(&assigned)
    }

    /// The published name of an extension, letters sorted ascending.
    pub fn extension_name(&self, ext: &ExtensionLine) -> Result<String> {
        let mut letters: Vec<&str> = ext
            .doubles()
            .iter()
            .map(|d| {
                self.letter_of(d)
                    .ok_or(Error::UnlabeledDouble { a: d.a, b: d.b })
            })
            .collect::<Result<_>>()?;
        letters.sort();
        Ok(format!("{}.{}", self.name, letters.concat()))
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn bundled() -> Catalog {
        let mut entries = Vec::new();
        for (i, table) in NINE3_TABLES.iter().enumerate() {
            let arrangement = Arrangement::parse_table(table).expect("bundled table");
            let labels = explicit_labels(&arrangement, NINE3_LABELS[i]);
            entries.push(CatalogEntry {
                name: format!("(9_3)_{}", i + 1),
                arrangement,
                labels,
            });
        }
        for (i, table) in TEN3_TABLES.iter().enumerate() {
            let arrangement = Arrangement::parse_table(table).expect("bundled table");
            let labels = explicit_labels(&arrangement, TEN3_LABELS[i]);
            entries.push(CatalogEntry {
                name: format!("(10_3)_{}", i + 1),
                arrangement,
                labels,
            });
        }
        Catalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn ten3(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.name.starts_with("(10_3)"))
    }

    pub fn nine3(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.name.starts_with("(9_3)"))
    }

    /// Resolves `"(10_3)_7.ADO"` style names into the built arrangement.
    pub fn build_named(&self, name: &str) -> Result<Arrangement> {
        match name.rsplit_once('.') {
            None => self
                .get(name)
                .map(|e| e.arrangement.clone())
                .ok_or_else(|| Error::UnknownCatalogEntry(name.to_owned())),
            Some((base, letters)) => {
                let entry = self
                    .get(base)
                    .ok_or_else(|| Error::UnknownCatalogEntry(base.to_owned()))?;
                entry.extend(letters)
            }
        }
    }
}

/// Pairs catalog labels with doubles; 1-indexed line pairs in the tables.
fn explicit_labels(
    a: &Arrangement,
    spec: &[(&str, usize, usize)],
) -> BTreeMap<DoublePoint, String> {
    let doubles = a.doubles();
    let mut out = BTreeMap::new();
    for (letter, i, j) in spec {
        let d = DoublePoint::new(i - 1, j - 1);
        assert!(doubles.contains(&d), "label {letter} is not a double");
        out.insert(d, (*letter).to_owned());
    }
    assert_eq!(out.len(), doubles.len(), "label table incomplete");
    out
}

const NINE3_TABLES: [&str; 3] = [
    "L1 L2 L3 L4 L5 L6 L7 L8 L9
     1  1  1  2  3  5  0  0  0
     2  4  6  4  6  7  4  2  3
     3  5  7  8  8  8  6  7  5",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9
     1  1  1  8  8  8  4  3  2
     2  4  6  4  2  3  7  5  5
     3  5  7  6  7  9  9  6  9",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9
     1  1  1  8  8  8  9  9  9
     2  4  6  2  5  3  2  4  3
     3  5  7  4  6  7  5  7  6",
];

/// Double-point labels of the (9_3) configurations. The letters that name
/// published extensions are fixed by the literature; the remaining letters
/// fill the unnamed doubles in lexicographic order.
const NINE3_LABELS: [&[(&str, usize, usize)]; 3] = [
    &[
        ("A", 1, 7),
        ("B", 3, 9),
        ("C", 1, 6),
        ("D", 4, 9),
        ("E", 6, 7),
        ("F", 3, 4),
        ("G", 5, 8),
        ("H", 2, 5),
        ("I", 2, 8),
    ],
    &[
        ("A", 1, 7),
        ("B", 2, 6),
        ("C", 5, 8),
        ("D", 2, 5),
        ("E", 3, 9),
        ("F", 3, 6),
        ("G", 7, 8),
        ("H", 4, 9),
        ("I", 1, 4),
    ],
    &[
        ("A", 4, 9),
        ("B", 3, 4),
        ("C", 3, 7),
        ("D", 6, 7),
        ("E", 2, 6),
        ("F", 2, 9),
        ("G", 1, 5),
        ("H", 1, 8),
        ("I", 5, 8),
    ],
];

const TEN3_TABLES: [&str; 10] = [
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  3  4  5
     2  4  6  9  4  5  6  7  6  7
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  3  4  5
     2  4  6  9  4  7  6  5  6  7
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  3  4  5
     2  4  6  9  4  6  7  5  6  7
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  3  4  5
     2  4  6  9  4  6  5  7  6  7
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  4  3  5
     2  4  6  9  4  7  5  6  6  7
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  8  2  3  2  5  3  4
     2  4  6  9  4  7  6  7  5  6
     3  5  7  0  8  8  9  9  0  0",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  2  4  6  5  3  7  2
     2  4  6  8  8  9  7  5  3  4
     3  5  7  9  0  0  8  9  0  6",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  3  5  7  2  6  4  2
     2  4  6  8  8  9  7  5  3  4
     3  5  7  9  0  0  8  9  0  6",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  2  4  6  5  3  2  3
     2  4  6  8  8  9  7  5  7  4
     3  5  7  9  0  0  8  9  0  6",
    "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
     1  1  1  3  2  7  5  6  4  2
     2  4  6  8  8  9  7  5  3  4
     3  5  7  9  0  0  8  9  0  6",
];

/// The published double-point label tables for the ten (10_3)
/// configurations.
const TEN3_LABELS: [&[(&str, usize, usize)]; 10] = [
    &[
        ("A", 1, 4), ("B", 1, 9), ("C", 1, 10), ("D", 2, 4), ("E", 2, 7),
        ("F", 2, 8), ("G", 3, 4), ("H", 3, 5), ("I", 3, 6), ("J", 5, 8),
        ("K", 5, 10), ("L", 6, 7), ("M", 6, 9), ("N", 7, 10), ("O", 8, 9),
    ],
    &[
        ("A", 1, 4), ("B", 1, 9), ("C", 1, 10), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 7), ("G", 3, 4), ("H", 3, 5), ("I", 3, 8), ("J", 5, 8),
        ("K", 5, 10), ("L", 6, 7), ("M", 6, 9), ("N", 7, 10), ("O", 8, 9),
    ],
    &[
        ("A", 1, 4), ("B", 1, 9), ("C", 1, 10), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 7), ("G", 3, 4), ("H", 3, 5), ("I", 3, 8), ("J", 5, 8),
        ("K", 5, 10), ("L", 6, 7), ("M", 6, 10), ("N", 7, 9), ("O", 8, 9),
    ],
    &[
        ("A", 1, 4), ("B", 1, 9), ("C", 1, 10), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 8), ("G", 3, 4), ("H", 3, 5), ("I", 3, 7), ("J", 5, 8),
        ("K", 5, 10), ("L", 6, 7), ("M", 6, 10), ("N", 7, 9), ("O", 8, 9),
    ],
    &[
        ("A", 1, 4), ("B", 1, 8), ("C", 1, 10), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 9), ("G", 3, 4), ("H", 3, 5), ("I", 3, 7), ("J", 5, 9),
        ("K", 5, 10), ("L", 6, 7), ("M", 6, 8), ("N", 7, 9), ("O", 8, 10),
    ],
    &[
        ("A", 1, 4), ("B", 1, 8), ("C", 1, 10), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 7), ("G", 3, 4), ("H", 3, 5), ("I", 3, 9), ("J", 5, 8),
        ("K", 5, 9), ("L", 6, 7), ("M", 6, 10), ("N", 7, 9), ("O", 8, 10),
    ],
    &[
        ("A", 1, 5), ("B", 1, 6), ("C", 1, 7), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 9), ("G", 3, 4), ("H", 3, 5), ("I", 3, 8), ("J", 4, 9),
        ("K", 5, 8), ("L", 6, 7), ("M", 7, 10), ("N", 8, 10), ("O", 9, 10),
    ],
    &[
        ("A", 1, 5), ("B", 1, 6), ("C", 1, 8), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 7), ("G", 3, 4), ("H", 3, 5), ("I", 3, 9), ("J", 4, 10),
        ("K", 5, 10), ("L", 6, 10), ("M", 7, 8), ("N", 7, 9), ("O", 8, 9),
    ],
    &[
        ("A", 1, 5), ("B", 1, 6), ("C", 1, 7), ("D", 2, 4), ("E", 2, 6),
        ("F", 2, 9), ("G", 3, 4), ("H", 3, 5), ("I", 3, 8), ("J", 4, 10),
        ("K", 5, 8), ("L", 6, 7), ("M", 7, 10), ("N", 8, 9), ("O", 9, 10),
    ],
    &[
        ("A", 1, 6), ("B", 1, 7), ("C", 1, 8), ("D", 2, 4), ("E", 2, 5),
        ("F", 2, 6), ("G", 3, 4), ("H", 3, 5), ("I", 3, 9), ("J", 4, 10),
        ("K", 5, 8), ("L", 6, 10), ("M", 7, 9), ("N", 7, 10), ("O", 8, 9),
    ],
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries_are_n3() {
        let cat = Catalog::bundled();
        assert_eq!(cat.entries().len(), 13);
        for e in cat.entries() {
            assert!(e.arrangement.is_n3_configuration(), "{}", e.name);
            e.arrangement.validate().unwrap();
        }
    }

    #[test]
    fn ten3_labels_follow_lexicographic_order() {
        // the published (10_3) label tables coincide with labeling the
        // doubles A..O in lexicographic line-pair order
        let cat = Catalog::bundled();
        for e in cat.ten3() {
            assert_eq!(e.labels, e.arrangement.double_labels(), "{}", e.name);
        }
    }

    #[test]
    fn ten3_double_label_spot_checks() {
        let cat = Catalog::bundled();
        let one = cat.get("(10_3)_1").unwrap();
        assert_eq!(one.double_by_letter("A"), Some(DoublePoint::new(0, 3)));
        assert_eq!(one.double_by_letter("O"), Some(DoublePoint::new(7, 8)));
        let seven = cat.get("(10_3)_7").unwrap();
        assert_eq!(seven.double_by_letter("A"), Some(DoublePoint::new(0, 4)));
        assert_eq!(seven.double_by_letter("D"), Some(DoublePoint::new(1, 3)));
        assert_eq!(seven.double_by_letter("O"), Some(DoublePoint::new(8, 9)));
    }

    #[test]
    fn build_named_round_trip() {
        let cat = Catalog::bundled();
        let a = cat.build_named("(10_3)_7.ADO").unwrap();
        assert_eq!(a.num_lines(), 11);
        assert!(cat.build_named("(10_3)_7.XYZ").is_err());
        assert!(cat.build_named("(12_3)_1").is_err());
    }

    #[test]
    fn nine3_extension_tables_match_published() {
        let cat = Catalog::bundled();
        let cfh = cat.build_named("(9_3)_1.CFH").unwrap();
        let want = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
             1  1  1  2  3  5  0  0  0  C
             2  4  6  4  6  7  4  2  3  F
             3  5  7  8  8  8  6  7  5  H
             C  H  F  F  H  C  .  .  .  .",
        )
        .unwrap();
        assert_eq!(cfh, want);

        let dfi = cat.build_named("(9_3)_2.DFI").unwrap();
        let want = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
             1  1  1  8  8  8  4  3  2  D
             2  4  6  4  2  3  7  5  5  F
             3  5  7  6  7  9  9  6  9  I
             I  D  F  I  D  F  .  .  .  .",
        )
        .unwrap();
        assert_eq!(dfi, want);

        let bdf = cat.build_named("(9_3)_3.BDF").unwrap();
        let want = Arrangement::parse_table(
            "L1 L2 L3 L4 L5 L6 L7 L8 L9 L10
             1  1  1  8  8  8  9  9  9  B
             2  4  6  2  5  3  2  4  3  D
             3  5  7  4  6  7  5  7  6  F
             .  F  B  B  .  D  D  .  F  .",
        )
        .unwrap();
        assert_eq!(bdf, want);
    }
}
