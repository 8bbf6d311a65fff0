//! Catalogs of saturated families, duality classes and golden files.
//!
//! A golden file lists one family per line by its off-chain members in the
//! shorthand (`2,3,1235,1245`); `C♭` is implied. An optional second column
//! after `|` gives the dual family, or `Itself`. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::lattice::{dual, parse_sets, render_off_chain, Family};
use crate::{Error, Result};

/// A family and its dual, by index into [`Catalog::families`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityClass {
    pub representative: usize,
    /// Equal to `representative` for a self-dual family.
    pub partner: usize,
}

impl DualityClass {
    pub fn is_self_dual(&self) -> bool {
        self.representative == self.partner
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalog {
    pub n: usize,
    pub size: usize,
    /// Sorted, each containing `C♭`.
    pub families: Vec<Family>,
    pub classes: Vec<DualityClass>,
}

impl Catalog {
    pub fn self_dual_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_self_dual()).count()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogIn {
    n: usize,
    size: usize,
    families: Vec<Family>,
    #[serde(default)]
    classes: Option<Vec<DualityClass>>,
}

impl<'de> Deserialize<'de> for Catalog {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CatalogIn::deserialize(deserializer)?;
        let catalog = group_by_duality(raw.n, raw.size, raw.families).map_err(D::Error::custom)?;
        if let Some(classes) = raw.classes {
            if classes != catalog.classes {
                return Err(D::Error::custom(
                    "stored classes disagree with the families",
                ));
            }
        }
        Ok(catalog)
    }
}

/// Sorts `families` and pairs each with its dual.
///
/// Every family must contain `C♭`, have `size` members and have its dual in
/// the list; anything else is an [`Error::Integrity`].
pub fn group_by_duality(n: usize, size: usize, mut families: Vec<Family>) -> Result<Catalog> {
    families.sort();
    families.dedup();
    for f in &families {
        if f.n() != n || f.len() != size || !f.contains_canonical_chain() {
            return Err(Error::Integrity(format!(
                "{f:?} does not belong in a size-{size} catalog over [{n}] containing the chain"
            )));
        }
    }
    let mut classes = Vec::new();
    for (i, f) in families.iter().enumerate() {
        let d = dual(f);
        let j = families.binary_search(&d).map_err(|_| {
            Error::Integrity(format!(
                "dual {} of {} is missing from the catalog",
                render_off_chain(&d),
                render_off_chain(f)
            ))
        })?;
        if i <= j {
            classes.push(DualityClass {
                representative: i,
                partner: j,
            });
        }
    }
    Ok(Catalog {
        n,
        size,
        families,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualColumn {
    Itself,
    Family(Family),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    /// 1-based line number.
    pub line: usize,
    pub family: Family,
    pub dual: Option<DualColumn>,
}

pub fn parse_golden(text: &str, n: usize) -> Result<Vec<GoldenEntry>> {
    let mut entries = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let wrap = |e: Error| Error::Golden {
            line,
            source: Box::new(e),
        };
        let mut columns = body.split('|');
        let first = columns.next().unwrap_or("");
        let family = Family::with_chain(n, parse_sets(first, n).map_err(wrap)?).map_err(wrap)?;
        let dual = match columns.next().map(str::trim) {
            None => None,
            Some(t) if t.eq_ignore_ascii_case("itself") => Some(DualColumn::Itself),
            Some(t) => Some(DualColumn::Family(
                Family::with_chain(n, parse_sets(t, n).map_err(wrap)?).map_err(wrap)?,
            )),
        };
        if columns.next().is_some() {
            return Err(wrap(Error::Parse {
                position: 0,
                message: "more than two columns".into(),
            }));
        }
        entries.push(GoldenEntry { line, family, dual });
    }
    Ok(entries)
}

/// A dual column that is not the dual of its row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMismatch {
    pub line: usize,
    pub family: Family,
    pub stated: Family,
    pub computed: Family,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogDiff {
    /// In the golden file but not the catalog.
    pub missing_from_catalog: Vec<Family>,
    /// In the catalog but not the golden file.
    pub missing_from_golden: Vec<Family>,
    pub dual_mismatches: Vec<DualMismatch>,
}

impl CatalogDiff {
    pub fn is_empty(&self) -> bool {
        self.missing_from_catalog.is_empty()
            && self.missing_from_golden.is_empty()
            && self.dual_mismatches.is_empty()
    }
}

impl fmt::Display for CatalogDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "no differences");
        }
        for fam in &self.missing_from_catalog {
            writeln!(f, "- {{{}}} listed but not found", render_off_chain(fam))?;
        }
        for fam in &self.missing_from_golden {
            writeln!(f, "+ {{{}}} found but not listed", render_off_chain(fam))?;
        }
        for m in &self.dual_mismatches {
            writeln!(
                f,
                "! line {}: dual of {{{}}} is {{{}}}, listed as {{{}}}",
                m.line,
                render_off_chain(&m.family),
                render_off_chain(&m.computed),
                render_off_chain(&m.stated)
            )?;
        }
        Ok(())
    }
}

/// Compares a catalog with a golden file, counting both columns of the file.
pub fn catalog_diff(catalog: &Catalog, golden_text: &str) -> Result<CatalogDiff> {
    let entries = parse_golden(golden_text, catalog.n)?;
    let mut golden = BTreeSet::new();
    let mut dual_mismatches = Vec::new();
    for e in entries {
        let computed = dual(&e.family);
        let stated = match e.dual {
            None => None,
            Some(DualColumn::Itself) => Some(e.family.clone()),
            Some(DualColumn::Family(d)) => Some(d),
        };
        if let Some(stated) = stated {
            if stated != computed {
                dual_mismatches.push(DualMismatch {
                    line: e.line,
                    family: e.family.clone(),
                    stated: stated.clone(),
                    computed,
                });
            }
            golden.insert(stated);
        }
        golden.insert(e.family);
    }
    let found: BTreeSet<Family> = catalog.families.iter().cloned().collect();
    Ok(CatalogDiff {
        missing_from_catalog: golden.difference(&found).cloned().collect(),
        missing_from_golden: found.difference(&golden).cloned().collect(),
        dual_mismatches,
    })
}
