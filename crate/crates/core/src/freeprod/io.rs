//! JSON descriptions of groups and constructions. Finite groups are stored
//! as named multiplication tables; embeddings as generator images, plus the
//! transversal whenever the target is finite.

use serde::{Deserialize, Serialize};

use super::amalgam::Amalgam;
use super::embed::Embedding;
use super::group::{FiniteGroup, FreeAbelianGroup, FreeGroup, GroupOracle};
use super::hnn::Hnn;
use super::FreeProdError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Finite {
        name: String,
        elements: Vec<String>,
        table: Vec<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    Free {
        name: String,
        generators: Vec<String>,
    },
    FreeAbelian {
        name: String,
        generators: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub images: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Amalgam {
        name: String,
        subgroup: GroupSpec,
        factors: [GroupSpec; 2],
        embeddings: [EmbeddingSpec; 2],
    },
    Hnn {
        name: String,
        base: GroupSpec,
        subgroup: GroupSpec,
        alpha: EmbeddingSpec,
        beta: EmbeddingSpec,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Loaded {
    Amalgam(Amalgam),
    Hnn(Hnn),
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupOracle, FreeProdError> {
        Ok(match self {
            GroupSpec::Finite { name, elements, table, generators } => {
                let idx = |s: &String| {
                    elements
                        .iter()
                        .position(|e| e == s)
                        .ok_or_else(|| FreeProdError::InvalidData(format!("unknown element `{s}` in {name}")))
                };
                let table = table
                    .iter()
                    .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let gens = generators.as_ref().map(|g| g.iter().map(idx).collect::<Result<Vec<_>, _>>()).transpose()?;
                GroupOracle::Finite(FiniteGroup::from_table(name.clone(), elements.clone(), table, gens)?)
            }
            GroupSpec::Free { name, generators } => {
                GroupOracle::Free(FreeGroup { name: name.clone(), generators: generators.clone() })
            }
            GroupSpec::FreeAbelian { name, generators } => {
                GroupOracle::FreeAbelian(FreeAbelianGroup { name: name.clone(), generators: generators.clone() })
            }
        })
    }

    pub fn from_group(g: &GroupOracle) -> Self {
        match g {
            GroupOracle::Finite(f) => GroupSpec::Finite {
                name: f.name.clone(),
                elements: f.names().to_vec(),
                table: f.table().iter().map(|r| r.iter().map(|&i| f.names()[i].clone()).collect()).collect(),
                generators: Some(f.generator_indices().iter().map(|&i| f.names()[i].clone()).collect()),
            },
            GroupOracle::Free(f) => GroupSpec::Free { name: f.name.clone(), generators: f.generators.clone() },
            GroupOracle::FreeAbelian(f) => {
                GroupSpec::FreeAbelian { name: f.name.clone(), generators: f.generators.clone() }
            }
        }
    }
}

impl EmbeddingSpec {
    pub fn build(&self, source: &GroupOracle, target: &GroupOracle) -> Result<Embedding, FreeProdError> {
        let images = self.images.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>, _>>()?;
        let transversal =
            self.transversal.as_ref().map(|t| t.iter().map(|s| target.parse(s)).collect::<Result<Vec<_>, _>>()).transpose()?;
        Embedding::new(source, target, &images, transversal.as_deref())
    }

    pub fn from_embedding(e: &Embedding) -> Self {
        let t = e.target();
        EmbeddingSpec {
            images: e.generator_images().iter().map(|g| t.render(g)).collect(),
            transversal: match t {
                GroupOracle::Finite(_) => e.transversal().map(|r| r.iter().map(|g| t.render(g)).collect()),
                _ => None,
            },
        }
    }
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Loaded, FreeProdError> {
        Ok(match self {
            ConstructionSpec::Amalgam { name, subgroup, factors, embeddings } => {
                let c = subgroup.build()?;
                let g1 = factors[0].build()?;
                let g2 = factors[1].build()?;
                let e1 = embeddings[0].build(&c, &g1)?;
                let e2 = embeddings[1].build(&c, &g2)?;
                Loaded::Amalgam(Amalgam::new(name.clone(), c, [g1, g2], [e1, e2])?)
            }
            ConstructionSpec::Hnn { name, base, subgroup, alpha, beta } => {
                let (a, c) = (base.build()?, subgroup.build()?);
                let (ea, eb) = (alpha.build(&c, &a)?, beta.build(&c, &a)?);
                Loaded::Hnn(Hnn::new(name.clone(), a, c, ea, eb)?)
            }
        })
    }

    pub fn from_amalgam(a: &Amalgam) -> Self {
        ConstructionSpec::Amalgam {
            name: a.name.clone(),
            subgroup: GroupSpec::from_group(&a.subgroup),
            factors: [GroupSpec::from_group(&a.factors[0]), GroupSpec::from_group(&a.factors[1])],
            embeddings: [EmbeddingSpec::from_embedding(&a.embeddings[0]), EmbeddingSpec::from_embedding(&a.embeddings[1])],
        }
    }

    pub fn from_hnn(h: &Hnn) -> Self {
        ConstructionSpec::Hnn {
            name: h.name.clone(),
            base: GroupSpec::from_group(&h.base),
            subgroup: GroupSpec::from_group(&h.subgroup),
            alpha: EmbeddingSpec::from_embedding(&h.alpha),
            beta: EmbeddingSpec::from_embedding(&h.beta),
        }
    }
}

pub fn load_construction(json: &str) -> Result<Loaded, FreeProdError> {
    let spec: ConstructionSpec = serde_json::from_str(json).map_err(|e| FreeProdError::Parse(e.to_string()))?;
    spec.build()
}

pub fn load_group(json: &str) -> Result<GroupOracle, FreeProdError> {
    let spec: GroupSpec = serde_json::from_str(json).map_err(|e| FreeProdError::Parse(e.to_string()))?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeprod::samples;

    #[test]
    fn constructions_round_trip() {
        for a in [samples::infinite_dihedral(), samples::s3_amalgam()] {
            let spec = ConstructionSpec::from_amalgam(&a);
            let json = serde_json::to_string_pretty(&spec).unwrap();
            assert_eq!(load_construction(&json).unwrap(), Loaded::Amalgam(a));
            let again: ConstructionSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(again, spec);
        }
        let h = samples::bs12();
        let json = serde_json::to_string(&ConstructionSpec::from_hnn(&h)).unwrap();
        assert_eq!(load_construction(&json).unwrap(), Loaded::Hnn(h));
    }

    #[test]
    fn bad_files_rejected() {
        assert!(load_group("{\"kind\": \"finite\", \"name\": \"x\", \"elements\": [\"e\"], \"table\": [[\"q\"]]}").is_err());
        assert!(load_group("not json").is_err());
    }
}
