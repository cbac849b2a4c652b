//! The one-line-extension census: enumerate all ways to add a line
//! through k double points of each cataloged configuration, quotient by
//! the automorphism group, and identify the isomorphic survivors.
//!
//! Only flagged arrangements (those where deleting some original line
//! leaves an (n_3) configuration) can be isomorphic to another census
//! member; the exchange lemmas reduce deduplication to that set.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::arrangement::{Arrangement, DoublePoint, ExtensionLine};
use crate::catalog::{Catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::symmetry::{automorphism_group, canonical_form, find_isomorphism, ArrangementMap};

/// True iff the doubles pairwise share no line, so a new line through
/// all of them keeps the structure a line arrangement.
pub fn valid_extension(a: &Arrangement, doubles: &[DoublePoint]) -> bool {
    let all = a.doubles();
    doubles.iter().all(|d| all.contains(d))
        && doubles
            .iter()
            .tuple_combinations()
            .all(|(x, y)| x.a != y.a && x.a != y.b && x.b != y.a && x.b != y.b)
}

/// Orbit representatives of all valid k-subsets of the doubles under the
/// automorphism group. Representatives are lexicographic orbit minima,
/// returned in sorted order.
pub fn ol_ext(k: usize, a: &Arrangement) -> Result<Vec<ExtensionLine>> {
    let doubles = a.doubles();
    let valid: Vec<ExtensionLine> = doubles
        .iter()
        .copied()
        .combinations(k)
        .filter(|c| valid_extension(a, c))
        .map(|c| ExtensionLine::new(c))
        .collect::<Result<_>>()?;
    let g = automorphism_group(a);
    crate::symmetry::orbit_representatives(&g, &valid)
}

/// A pair of isomorphic census members; `removed` is dropped in favor of
/// `kept`, with a verified witness.
#[derive(Debug, Clone, Serialize)]
pub struct IdentifiedPair {
    pub kept: String,
    pub removed: String,
    pub witness: ArrangementMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub k: usize,
    pub config_names: Vec<String>,
    /// orbit representatives per configuration, before any identification
    pub raw_counts: Vec<usize>,
    /// after same-configuration identification
    pub per_config_counts: Vec<usize>,
    pub subtotal: usize,
    /// same-configuration identifications (exchange within one host)
    pub self_pairs: Vec<IdentifiedPair>,
    /// cross-configuration identifications
    pub identified_pairs: Vec<IdentifiedPair>,
    pub total: usize,
    /// names of the pairwise non-isomorphic survivors, sorted
    pub survivors: Vec<String>,
    /// verdict name -> count, filled by the moduli layer
    pub classification_tallies: BTreeMap<String, usize>,
}

struct Member {
    config: usize,
    name: String,
    arrangement: Arrangement,
    flagged: bool,
}

fn census_members(k: usize, entries: &[&CatalogEntry]) -> Result<(Vec<Member>, Vec<usize>)> {
    let mut members = Vec::new();
    let mut raw_counts = Vec::new();
    for (ci, entry) in entries.iter().enumerate() {
        let reps = ol_ext(k, &entry.arrangement)?;
        raw_counts.push(reps.len());
        let original = entry.arrangement.num_lines();
        for ext in reps {
            let name = entry.extension_name(&ext)?;
            let arrangement = entry.extend(&name[name.rfind('.').unwrap() + 1..])?;
            // flagged iff deleting some original line of the extension
            // yields an (n_3) configuration again
            let flagged = (0..original).any(|i| {
                arrangement
                    .remove_line(i)
                    .map(|r| r.is_n3_configuration())
                    .unwrap_or(false)
            });
            members.push(Member {
                config: ci,
                name,
                arrangement,
                flagged,
            });
        }
    }
    Ok((members, raw_counts))
}

fn census_over(k: usize, entries: &[&CatalogEntry]) -> Result<CensusReport> {
    let (members, raw_counts) = census_members(k, entries)?;
    let mut groups: BTreeMap<_, Vec<&Member>> = BTreeMap::new();
    for m in &members {
        if m.flagged {
            groups
                .entry(canonical_form(&m.arrangement))
                .or_default()
                .push(m);
        }
    }
    let witness_between = |kept: &Member, removed: &Member| -> Result<IdentifiedPair> {
        let witness = find_isomorphism(&removed.arrangement, &kept.arrangement)
            .ok_or(Error::UnstableAction)?;
        Ok(IdentifiedPair {
            kept: kept.name.clone(),
            removed: removed.name.clone(),
            witness,
        })
    };
    let mut self_pairs = Vec::new();
    let mut identified_pairs = Vec::new();
    let mut removed_per_config = vec![0usize; entries.len()];
    let mut survivors: Vec<String> = members
        .iter()
        .filter(|m| !m.flagged)
        .map(|m| m.name.clone())
        .collect();
    for group in groups.values() {
        let mut sorted: Vec<&&Member> = group.iter().collect();
        sorted.sort_by_key(|m| (m.config, &m.name));
        // within each configuration the first member stands for the rest
        let mut config_reps: Vec<&&Member> = Vec::new();
        for m in &sorted {
            match config_reps.iter().find(|r| r.config == m.config) {
                Some(rep) => {
                    self_pairs.push(witness_between(rep, m)?);
                    removed_per_config[m.config] += 1;
                }
                None => config_reps.push(m),
            }
        }
        let kept = config_reps[0];
        for other in &config_reps[1..] {
            identified_pairs.push(witness_between(kept, other)?);
        }
        survivors.push(kept.name.clone());
    }
    survivors.sort();
    let per_config_counts: Vec<usize> = raw_counts
        .iter()
        .zip(&removed_per_config)
        .map(|(r, d)| r - d)
        .collect();
    let subtotal = per_config_counts.iter().sum();
    Ok(CensusReport {
        k,
        config_names: entries.iter().map(|e| e.name.clone()).collect(),
        raw_counts,
        per_config_counts,
        subtotal,
        self_pairs,
        identified_pairs,
        total: survivors.len(),
        survivors,
        classification_tallies: BTreeMap::new(),
    })
}

/// Runs the census over the ten (10_3) configurations.
pub fn enumerate_census(k: usize, catalog: &Catalog) -> Result<CensusReport> {
    let entries: Vec<&CatalogEntry> = catalog.ten3().collect();
    census_over(k, &entries)
}

/// The k=3 census over the three (9_3) configurations.
pub fn nine3_census(catalog: &Catalog) -> Result<CensusReport> {
    let entries: Vec<&CatalogEntry> = catalog.nine3().collect();
    census_over(3, &entries)
}

/// The published name of a configuration extension, letters ascending.
pub fn name_arrangement(catalog: &Catalog, config_name: &str, ext: &ExtensionLine) -> Result<String> {
    let entry = catalog
        .get(config_name)
        .ok_or_else(|| Error::UnknownCatalogEntry(config_name.to_owned()))?;
    entry.extension_name(ext)
}

impl CensusReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Plain-text summary table: one column per host configuration plus
    /// subtotal and total, classification tally rows when present.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        let short: Vec<String> = (1..=self.config_names.len()).map(|j| j.to_string()).collect();
        rows.push((
            "j".to_owned(),
            short
                .iter()
                .cloned()
                .chain(["Subtotal".to_owned(), "Total".to_owned()])
                .collect(),
        ));
        rows.push((
            "# arrangements constructed".to_owned(),
            self.per_config_counts
                .iter()
                .map(|c| c.to_string())
                .chain([self.subtotal.to_string(), self.total.to_string()])
                .collect(),
        ));
        for (verdict, count) in &self.classification_tallies {
            rows.push((
                format!("# {verdict}"),
                vec![String::new(); self.config_names.len()]
                    .into_iter()
                    .chain([String::new(), count.to_string()])
                    .collect(),
            ));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let ncols = rows[0].1.len();
        let col_w: Vec<usize> = (0..ncols)
            .map(|c| rows.iter().map(|(_, r)| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (label, cells) in &rows {
            out.push_str(&format!("{label:<label_w$}"));
            for (c, cell) in cells.iter().enumerate() {
                out.push_str(&format!("  {:>w$}", cell, w = col_w[c]));
            }
            out.push('\n');
        }
        out
    }
}
