//! Split metacyclic p-groups, bi-Cayley graphs over them, and the tools to
//! check their symmetry exactly.

pub mod bicayley;
pub mod graph;
pub mod havt;
pub mod metacyclic;
pub mod residue;
pub mod symmetry;
pub mod verify;

use thiserror::Error;

pub use bicayley::{BiCayleyError, BiCayleyGraph, BiCayleySpec, GraphAutMap};
pub use graph::{Graph, GraphError};
pub use havt::{construct_havt, havt_witnesses, HavtConstruction, HavtError, HavtParams, Sign};
pub use metacyclic::{GroupAut, GroupElem, GroupError, GroupParams, MetacyclicGroup};
pub use residue::{PrimePowerModulus, Residue, ResidueError};
pub use symmetry::{PermGroup, Permutation, SymmetryError, SymmetryReport};

/// Name of the environment variable that overrides the search guards.
pub const MAX_VERTICES_ENV: &str = "BICAYLEY_MAX_VERTICES";

/// Size guards for the exhaustive parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph handed to the automorphism search.
    pub max_vertices: usize,
    /// Largest group whose automorphisms are enumerated.
    pub max_group_order: u64,
    /// Largest group for the connection-set survey.
    pub survey_group_order: u64,
    /// Largest permutation group listed element by element.
    pub brute_force_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 5000,
            max_group_order: 243,
            survey_group_order: 125,
            brute_force_elements: 1_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with `BICAYLEY_MAX_VERTICES=V` setting the vertex guard to
    /// `V` and both group guards to `V / 2`.
    pub fn from_env() -> Result<Limits, Error> {
        match std::env::var(MAX_VERTICES_ENV) {
            Ok(raw) => Limits::with_max_vertices(&raw),
            Err(std::env::VarError::NotPresent) => Ok(Limits::default()),
            Err(std::env::VarError::NotUnicode(_)) => Err(Error::InvalidEnv("value is not unicode".into())),
        }
    }

    fn with_max_vertices(raw: &str) -> Result<Limits, Error> {
        let v: usize = raw
            .trim()
            .parse()
            .map_err(|_| Error::InvalidEnv(format!("{MAX_VERTICES_ENV}={raw:?} is not a vertex count")))?;
        Ok(Limits {
            max_vertices: v,
            max_group_order: (v / 2) as u64,
            survey_group_order: (v / 2) as u64,
            ..Limits::default()
        })
    }
}

/// Any error from the library, named `module::Variant` by [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    BiCayley(#[from] BiCayleyError),
    #[error(transparent)]
    Havt(#[from] HavtError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("invalid environment: {0}")]
    InvalidEnv(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    pub fn name(&self) -> String {
        match self {
            Error::Residue(e) => format!("residue::{}", e.name()),
            Error::Group(e) => group_name(e),
            Error::Graph(GraphError::SelfLoop(_)) => "graph::SelfLoop".into(),
            Error::Graph(GraphError::VertexOutOfRange { .. }) => "graph::VertexOutOfRange".into(),
            Error::BiCayley(BiCayleyError::Group(e)) => group_name(e),
            Error::BiCayley(e) => format!("bicayley::{}", e.name()),
            Error::Havt(HavtError::Group(e)) => group_name(e),
            Error::Havt(HavtError::Residue(e)) => format!("residue::{}", e.name()),
            Error::Havt(e) => format!("havt::{}", e.name()),
            Error::Symmetry(SymmetryError::Group(e)) => group_name(e),
            Error::Symmetry(e) => format!("symmetry::{}", e.name()),
            Error::InvalidEnv(_) => "limits::InvalidEnv".into(),
            Error::UnknownSuite(_) => "verify::UnknownSuite".into(),
        }
    }
}

fn group_name(e: &GroupError) -> String {
    match e {
        GroupError::Residue(r) => format!("residue::{}", r.name()),
        other => format!("metacyclic::{}", other.name()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_override() {
        let l = Limits::with_max_vertices("600").unwrap();
        assert_eq!((l.max_vertices, l.max_group_order, l.survey_group_order), (600, 300, 300));
        assert_eq!(Limits::with_max_vertices("lots").unwrap_err().name(), "limits::InvalidEnv");
    }

    #[test]
    fn error_names() {
        let e: Error = HavtError::Unsolvable { ratio: 2, half: 1 }.into();
        assert_eq!(e.name(), "havt::Unsolvable");
        let e: Error = GroupError::Residue(ResidueError::ZeroExponent).into();
        assert_eq!(e.name(), "residue::ZeroExponent");
        let e: Error = SymmetryError::NotASubgroup.into();
        assert_eq!(e.name(), "symmetry::NotASubgroup");
    }
}
