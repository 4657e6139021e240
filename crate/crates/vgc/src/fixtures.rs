//! Shipped JSON fixtures: the generator matrices of the two distinguished
//! groups and the reference list of eighteen small-orbit points.
//!
//! A fixture is looked up in an explicitly given directory first, then in
//! the directory named by the `VGC_FIXTURES` environment variable, and
//! falls back to the copies embedded at compile time.  Matrix entries are
//! cyclotomic numbers serialized as `{"n": conductor, "coeffs":
//! ["p/q", ...]}` against the reduced power basis of the conductor-n field.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclo::{lcm, parse_rat, CycError, CycNum};
use crate::matgroup::{GroupElement, Mat3, MatGroupError};
use crate::surface::{FactorVal, Orbit, ProjPoint};

pub const S4_RHO_FILE: &str = "s4_rho.json";
pub const G216_FILE: &str = "g216.json";
pub const LEMMA13_POINTS_FILE: &str = "lemma13_points.json";

const S4_RHO_EMBEDDED: &str = include_str!("../fixtures/s4_rho.json");
const G216_EMBEDDED: &str = include_str!("../fixtures/g216.json");
const LEMMA13_POINTS_EMBEDDED: &str = include_str!("../fixtures/lemma13_points.json");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The wrapped serde error carries the line and column of the defect.
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid fixture data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error(transparent)]
    Group(#[from] MatGroupError),
}

// ---------------------------------------------------------------------------
// Serialized forms
// ---------------------------------------------------------------------------

/// A cyclotomic number: conductor and power-basis coefficients as exact
/// rational strings.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct CycJson {
    pub n: u32,
    pub coeffs: Vec<String>,
}

impl CycJson {
    pub fn from_cyc(c: &CycNum) -> CycJson {
        CycJson {
            n: c.conductor(),
            coeffs: c.coeffs().iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn to_cyc(&self) -> Result<CycNum, CycError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::new(self.n, coeffs)
    }
}

pub type MatJson = [[CycJson; 3]; 3];

/// A finite matrix group given by generators.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct GroupJson {
    pub name: String,
    pub projective: bool,
    pub cyclotomic_order: u32,
    pub labels: Vec<String>,
    pub generators: Vec<MatJson>,
}

impl GroupJson {
    pub fn from_generators(name: &str, generators: &[(String, GroupElement)]) -> GroupJson {
        let projective = generators
            .first()
            .is_some_and(|(_, g)| g.is_projective());
        let mut cyclotomic_order = 1;
        for (_, g) in generators {
            for i in 0..3 {
                for j in 0..3 {
                    cyclotomic_order = lcm(cyclotomic_order, g.mat().entry(i, j).conductor());
                }
            }
        }
        GroupJson {
            name: name.to_string(),
            projective,
            cyclotomic_order,
            labels: generators.iter().map(|(n, _)| n.clone()).collect(),
            generators: generators
                .iter()
                .map(|(_, g)| {
                    std::array::from_fn(|i| {
                        std::array::from_fn(|j| CycJson::from_cyc(g.mat().entry(i, j)))
                    })
                })
                .collect(),
        }
    }

    /// Reconstruct labeled group elements, validating label count and that
    /// every entry lives in the declared cyclotomic field.
    pub fn generator_pairs(&self) -> Result<Vec<(String, GroupElement)>, FixtureError> {
        if self.labels.len() != self.generators.len() {
            return Err(FixtureError::Invalid(format!(
                "{} labels for {} generators",
                self.labels.len(),
                self.generators.len()
            )));
        }
        self.labels
            .iter()
            .zip(&self.generators)
            .map(|(label, mat)| {
                let mut entries: Vec<CycNum> = Vec::with_capacity(9);
                for row in mat {
                    for cell in row {
                        let value = cell.to_cyc()?;
                        if self.cyclotomic_order % value.conductor() != 0 {
                            return Err(FixtureError::Invalid(format!(
                                "entry of conductor {} outside the declared Q(zeta_{})",
                                value.conductor(),
                                self.cyclotomic_order
                            )));
                        }
                        entries.push(value);
                    }
                }
                let mut it = entries.into_iter();
                let mat = Mat3::from_fn(|_, _| it.next().expect("nine entries"));
                Ok((label.clone(), GroupElement::new(mat, self.projective)?))
            })
            .collect()
    }
}

/// One projective coordinate: a cyclotomic value or the point at infinity,
/// written `"oo"`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(untagged)]
pub enum FactorJson {
    Finite(CycJson),
    Infinity(String),
}

impl FactorJson {
    pub fn from_factor(f: &FactorVal) -> FactorJson {
        match f {
            FactorVal::Finite(c) => FactorJson::Finite(CycJson::from_cyc(c)),
            FactorVal::Infinity => FactorJson::Infinity("oo".to_string()),
        }
    }

    pub fn to_factor(&self) -> Result<FactorVal, FixtureError> {
        match self {
            FactorJson::Finite(c) => Ok(FactorVal::Finite(c.to_cyc()?)),
            FactorJson::Infinity(s) if s == "oo" => Ok(FactorVal::Infinity),
            FactorJson::Infinity(s) => Err(FixtureError::Invalid(format!(
                "unknown coordinate token {s:?}"
            ))),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct OrbitJson {
    pub label: String,
    pub stabilizer_order: usize,
    pub points: Vec<[FactorJson; 3]>,
}

/// The reference small-orbit list: every orbit of size strictly below the
/// bound, with stabilizer orders and full point coordinates.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PointsJson {
    pub bound: usize,
    pub orbits: Vec<OrbitJson>,
}

impl PointsJson {
    pub fn from_orbits(bound: usize, orbits: &[Orbit]) -> PointsJson {
        PointsJson {
            bound,
            orbits: orbits
                .iter()
                .map(|orbit| OrbitJson {
                    label: orbit.label.clone(),
                    stabilizer_order: orbit.stabilizer_order,
                    points: orbit
                        .points
                        .iter()
                        .map(|p| std::array::from_fn(|i| FactorJson::from_factor(p.factor(i))))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_orbits(&self) -> Result<Vec<Orbit>, FixtureError> {
        self.orbits
            .iter()
            .map(|orbit| {
                let points = orbit
                    .points
                    .iter()
                    .map(|factors| {
                        let [x, y, z] = factors;
                        Ok(ProjPoint::new([
                            x.to_factor()?,
                            y.to_factor()?,
                            z.to_factor()?,
                        ]))
                    })
                    .collect::<Result<Vec<_>, FixtureError>>()?;
                Ok(Orbit {
                    points,
                    stabilizer_order: orbit.stabilizer_order,
                    label: orbit.label.clone(),
                })
            })
            .collect()
    }

    pub fn total_points(&self) -> usize {
        self.orbits.iter().map(|o| o.points.len()).sum()
    }
}

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, FixtureError> {
    serde_json::from_str(text).map_err(|source| FixtureError::Json {
        path: origin.to_string(),
        source,
    })
}

/// Where fixture files come from; `None` means the embedded copies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureSource {
    dir: Option<PathBuf>,
}

impl FixtureSource {
    pub fn embedded() -> FixtureSource {
        FixtureSource::default()
    }

    pub fn directory(dir: impl Into<PathBuf>) -> FixtureSource {
        FixtureSource {
            dir: Some(dir.into()),
        }
    }

    /// Resolution order: explicit directory, then `VGC_FIXTURES`, then the
    /// embedded copies.
    pub fn resolve(explicit: Option<PathBuf>) -> FixtureSource {
        FixtureSource {
            dir: explicit.or_else(|| std::env::var_os("VGC_FIXTURES").map(PathBuf::from)),
        }
    }

    pub fn is_embedded(&self) -> bool {
        self.dir.is_none()
    }

    /// Where the data comes from, for echoing in reports.
    pub fn describe(&self) -> String {
        match &self.dir {
            Some(dir) => dir.display().to_string(),
            None => "embedded".to_string(),
        }
    }

    fn read(&self, file: &str, embedded: &'static str) -> Result<String, FixtureError> {
        match &self.dir {
            Some(dir) => {
                let path = dir.join(file);
                fs::read_to_string(&path).map_err(|source| FixtureError::Io {
                    path: path.display().to_string(),
                    source,
                })
            }
            None => Ok(embedded.to_string()),
        }
    }

    pub fn s4_rho(&self) -> Result<GroupJson, FixtureError> {
        parse_json(&self.read(S4_RHO_FILE, S4_RHO_EMBEDDED)?, S4_RHO_FILE)
    }

    pub fn g216(&self) -> Result<GroupJson, FixtureError> {
        parse_json(&self.read(G216_FILE, G216_EMBEDDED)?, G216_FILE)
    }

    pub fn lemma13_points(&self) -> Result<PointsJson, FixtureError> {
        parse_json(
            &self.read(LEMMA13_POINTS_FILE, LEMMA13_POINTS_EMBEDDED)?,
            LEMMA13_POINTS_FILE,
        )
    }
}

/// Load a group definition from an explicit file path.
pub fn load_group_file(path: &Path) -> Result<GroupJson, FixtureError> {
    let text = fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_json(&text, &path.display().to_string())
}

// ---------------------------------------------------------------------------
