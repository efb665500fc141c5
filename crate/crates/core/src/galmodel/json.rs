//! `galmodel.v1` and `splitting.v1` documents.

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::number::{PrimeSplitting, SplittingDatum};
use super::GaloisCategory;
use crate::error::Result;
use crate::fincat::json::CategoryJson;
use crate::fincat::FinPoset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalModelJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<usize>,
    pub category: CategoryJson,
    /// Object labels.
    pub labels: Vec<String>,
    pub points: Vec<String>,
    /// Pairs `a ≤ b` of points, reflexive pairs included.
    pub order: Vec<(usize, usize)>,
    /// Point under each object.
    pub projection: Vec<usize>,
}

impl From<&GaloisCategory> for GalModelJson {
    fn from(g: &GaloisCategory) -> Self {
        GalModelJson {
            level: g.level(),
            category: g.category().as_ref().into(),
            labels: g.labels().to_vec(),
            points: g.point_labels().to_vec(),
            order: g.zariski().relation(),
            projection: g.projection().object_map().to_vec(),
        }
    }
}

impl GalModelJson {
    pub fn to_gal(&self) -> Result<GaloisCategory> {
        GaloisCategory::new(
            self.category.to_category()?,
            FinPoset::new(self.points.len(), &self.order)?,
            &self.projection,
            self.level,
            self.labels.clone(),
            self.points.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub elements: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeJson {
    pub label: String,
    pub decomposition: Vec<String>,
    pub inertia: Vec<String>,
    pub frobenius: String,
}

/// Subgroups and Frobenius are written with element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<usize>,
    pub group: GroupJson,
    pub primes: Vec<PrimeJson>,
}

impl From<&SplittingDatum> for SplittingJson {
    fn from(s: &SplittingDatum) -> Self {
        let g = &s.group;
        let names = |v: &[usize]| v.iter().map(|&a| g.label(a).to_string()).collect();
        SplittingJson {
            modulus: s.modulus,
            group: GroupJson {
                elements: g.labels().to_vec(),
                table: g.table(),
            },
            primes: s
                .primes
                .iter()
                .map(|p| PrimeJson {
                    label: p.label.clone(),
                    decomposition: names(&p.decomposition),
                    inertia: names(&p.inertia),
                    frobenius: g.label(p.frobenius).to_string(),
                })
                .collect(),
        }
    }
}

impl SplittingJson {
    pub fn to_datum(&self) -> Result<SplittingDatum> {
        let group = FiniteGroup::from_table(self.group.elements.clone(), &self.group.table)?;
        let ids = |v: &[String]| -> Result<Vec<usize>> { v.iter().map(|l| group.element_named(l)).collect() };
        let primes = self
            .primes
            .iter()
            .map(|p| {
                Ok(PrimeSplitting {
                    label: p.label.clone(),
                    decomposition: ids(&p.decomposition)?,
                    inertia: ids(&p.inertia)?,
                    frobenius: group.element_named(&p.frobenius)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SplittingDatum::new(group, primes, self.modulus)
    }
}
