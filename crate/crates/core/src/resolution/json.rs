use serde::{Deserialize, Serialize};

use super::{AlgMatrix, ComplexKind, FreeComplex};
use crate::error::{Error, Result};
use crate::qalgebra::Algebra;
use crate::scalars::Field;

/// On-disk form of a complex. Entries are algebra elements in the text
/// syntax accepted by [`Algebra::parse`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub n: usize,
    pub field: String,
    #[serde(default)]
    pub minimal: bool,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub labels: Option<Vec<Vec<String>>>,
    /// `differentials[k]` is `∂_(k+1)` as a list of rows.
    pub differentials: Vec<Vec<Vec<String>>>,
}

pub fn complex_to_json<F: Field>(alg: &Algebra<F>, c: &FreeComplex<F::Elem>) -> Result<String> {
    let doc = ComplexDocument {
        n: alg.n(),
        field: alg.field().spec().to_string(),
        minimal: c.is_minimal(),
        ranks: c.ranks().to_vec(),
        labels: Some((0..=c.top_degree()).map(|k| c.labels(k).to_vec()).collect()),
        differentials: (1..=c.top_degree())
            .map(|k| {
                let d = c.differential(k);
                (0..d.rows()).map(|i| d.row(i).iter().map(|e| alg.render(e)).collect()).collect()
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn complex_from_json<F: Field>(alg: &Algebra<F>, text: &str) -> Result<FreeComplex<F::Elem>> {
    let doc: ComplexDocument = serde_json::from_str(text)?;
    if doc.n != alg.n() {
        return Err(Error::InvalidSpec(format!("complex is for N = {}, algebra has N = {}", doc.n, alg.n())));
    }
    if doc.ranks.first() != Some(&1) {
        return Err(Error::InvalidSpec("P_0 must have rank 1".into()));
    }
    let labels = match doc.labels {
        Some(l) => l,
        None => doc.ranks.iter().map(|&r| (0..r).map(|i| format!("e{i}")).collect()).collect(),
    };
    if labels.len() != doc.ranks.len() || labels.iter().zip(&doc.ranks).any(|(l, &r)| l.len() != r) {
        return Err(Error::DimensionMismatch("labels do not match ranks".into()));
    }
    let mut diffs = Vec::with_capacity(doc.differentials.len());
    for (k, rows) in doc.differentials.iter().enumerate() {
        let cols = doc.ranks.get(k).copied().unwrap_or(0);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| alg.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        diffs.push(AlgMatrix::from_rows(cols, parsed)?);
    }
    FreeComplex::new(ComplexKind::Custom, labels, diffs, doc.minimal)
}
