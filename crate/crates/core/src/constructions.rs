//! The two known infinite families of saturated families of size `2n`.
//!
//! `Singletons`: `C♭` plus `{2}, …, {n}`.
//! `FStar { i }`: `C♭` plus `{2}, …, {i}` and the anti-singletons
//! `[n]∖{i}, …, [n]∖{n-1}`.

use serde::{Deserialize, Serialize};

use crate::freeness::{certify, Certificate};
use crate::lattice::{check_ground_size, Family, SetWord};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionKind {
    Singletons,
    FStar { i: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    #[serde(flatten)]
    pub kind: ConstructionKind,
    pub n: usize,
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Family> {
        match self.kind {
            ConstructionKind::Singletons => build_singletons(self.n),
            ConstructionKind::FStar { i } => build_f_star(self.n, i),
        }
    }
}

fn singleton(e: usize) -> SetWord {
    SetWord(1 << (e - 1))
}

pub fn build_singletons(n: usize) -> Result<Family> {
    check_ground_size(n)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the singleton construction needs n >= 2, got {n}"
        )));
    }
    Family::with_chain(n, (2..=n).map(singleton))
}

pub fn build_f_star(n: usize, i: usize) -> Result<Family> {
    check_ground_size(n)?;
    if i < 2 || i + 1 > n {
        return Err(Error::IndexOutOfRange {
            what: "F* parameter",
            index: i,
            n,
        });
    }
    let singletons = (2..=i).map(singleton);
    let anti = (i..n).map(|e| singleton(e).complement(n));
    Family::with_chain(n, singletons.chain(anti))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub spec: ConstructionSpec,
    pub family: Family,
    pub certificate: Certificate,
}

/// Builds the family and runs the generic saturation check on it.
pub fn verify_construction(spec: &ConstructionSpec) -> Result<ConstructionReport> {
    let family = spec.build()?;
    let certificate = certify(&family);
    Ok(ConstructionReport {
        spec: *spec,
        family,
        certificate,
    })
}
