//! JSON input format: actions as generator images given by polynomial
//! strings, modules as generator matrices. Serialization is canonical
//! (fixed key order, rendered polynomials) so documents round-trip
//! byte-identically.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::action::AlgebraAction;
use crate::error::Error;
use crate::field::PrimeField;
use crate::group::{GroupTable, Subgroup};
use crate::linalg::Matrix;
use crate::modules::KGModule;
use crate::poly::{parse_poly, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub p: u64,
    pub variables: Vec<String>,
    pub group: GroupSpec,
    pub action_by_generator: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDocument {
    pub p: u64,
    pub group: GroupSpec,
    pub generator_matrices: Vec<Vec<Vec<u64>>>,
}

pub fn build_group(spec: &GroupSpec) -> Result<Arc<GroupTable>, Error> {
    match (&spec.generators, &spec.table) {
        (Some(gens), None) => GroupTable::from_permutations(gens, crate::group::DEFAULT_CLOSURE_CAP),
        (None, Some(table)) => GroupTable::from_table(table.clone()),
        _ => Err(Error::Invalid(
            "group needs exactly one of \"generators\" or \"table\"".to_string(),
        )),
    }
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<SpecDocument, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn build(&self) -> Result<(AlgebraAction, Option<Subgroup>), Error> {
        let field = PrimeField::new(self.p)?;
        let group = build_group(&self.group)?;
        let images: Vec<Vec<Polynomial>> = self
            .action_by_generator
            .iter()
            .map(|per_var| {
                per_var
                    .iter()
                    .map(|s| parse_poly(s, &self.variables, field))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let action = AlgebraAction::make_action(field, self.variables.clone(), group.clone(), &images)?;
        let subgroup = match &self.subgroup {
            Some(elems) => Some(Subgroup::new(group, elems.clone())?),
            None => None,
        };
        Ok((action, subgroup))
    }

    /// Canonical document for an existing action: the group as a full
    /// multiplication table, images rendered per generator letter.
    pub fn from_action(a: &AlgebraAction, subgroup: Option<&Subgroup>) -> SpecDocument {
        let group = a.group();
        let table = (0..group.order())
            .map(|g| (0..group.order()).map(|h| group.mult(g, h)).collect())
            .collect();
        // table groups treat every non-identity element as a generator, so
        // emit images for all of them
        let action_by_generator = (1..group.order())
            .map(|g| {
                (0..a.num_vars())
                    .map(|v| a.image(g, v).render(a.vars()))
                    .collect()
            })
            .collect();
        SpecDocument {
            p: a.field().p(),
            variables: a.vars().to_vec(),
            group: GroupSpec {
                generators: None,
                table: Some(table),
            },
            action_by_generator,
            subgroup: subgroup.map(|s| s.elements().to_vec()),
            metadata: None,
        }
    }
}

impl ModuleDocument {
    pub fn parse(text: &str) -> Result<ModuleDocument, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn build(&self) -> Result<KGModule, Error> {
        let field = PrimeField::new(self.p)?;
        let group = build_group(&self.group)?;
        let mats: Vec<Matrix> = self
            .generator_matrices
            .iter()
            .map(|rows| Matrix::from_rows(field, rows.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        KGModule::make_module(group, field, &mats)
    }
}

/// Human-readable shape of the accepted documents.
pub fn schema_text() -> &'static str {
    r#"{
  "action": {
    "p": "prime",
    "variables": ["x1", "..."],
    "group": {"generators": [["image array per point"]]}
             or {"table": [["full multiplication table"]]},
    "action_by_generator": [["polynomial string per variable"]],
    "subgroup": ["element indices (optional)"],
    "metadata": "free-form (optional)"
  },
  "module": {
    "p": "prime",
    "group": {"generators": [...]} or {"table": [...]},
    "generator_matrices": [[["row-major entries"]]]
  }
}"#
}
