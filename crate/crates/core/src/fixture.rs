//! The JSON fixture format for externally sourced groups:
//! `{"name": ..., "degree": n, "generators": [[...], ...]}` with 1-based
//! image lists.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

const BUILTIN: &[(&str, &str)] = &[
    (
        "smallgroup_324_160",
        include_str!("../fixtures/smallgroup_324_160.json"),
    ),
    ("a2_order32", include_str!("../fixtures/a2_order32.json")),
    ("a2_order64", include_str!("../fixtures/a2_order64.json")),
    ("a2_order243", include_str!("../fixtures/a2_order243.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let f: Fixture =
            serde_json::from_str(text).map_err(|e| Error::MalformedFixture(e.to_string()))?;
        if f.degree == 0 {
            return Err(Error::MalformedFixture("degree must be positive".into()));
        }
        for (i, g) in f.generators.iter().enumerate() {
            if g.len() != f.degree {
                return Err(Error::MalformedFixture(format!(
                    "generator {} has {} entries, expected {}",
                    i + 1,
                    g.len(),
                    f.degree
                )));
            }
        }
        Ok(f)
    }

    pub fn from_group(g: &FiniteGroup) -> Fixture {
        Fixture {
            name: g.label().to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images()).collect(),
        }
    }

    /// Serializes in the same layout the export script writes, so that
    /// parse/serialize is byte-stable.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let name = serde_json::to_string(&self.name).expect("string serializes");
        write!(
            out,
            "{{\"name\": {}, \"degree\": {}, \"generators\": [",
            name, self.degree
        )
        .unwrap();
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for (j, v) in g.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                write!(out, "{v}").unwrap();
            }
            out.push(']');
        }
        out.push_str("]}\n");
        out
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::from_images(g))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_generators(self.degree, &gens, self.name.clone())
    }
}

pub fn from_fixture_str(text: &str) -> Result<FiniteGroup> {
    Fixture::parse(text)?.build()
}

pub fn from_fixture_path(path: &Path) -> Result<FiniteGroup> {
    from_fixture_str(&std::fs::read_to_string(path)?)
}

pub fn builtin_fixture(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Looks for `<dir>/<name>.json` first, then the fixtures compiled into the
/// library.
pub fn load_named(name: &str, dir: Option<&Path>) -> Result<FiniteGroup> {
    if let Some(d) = dir {
        let path = d.join(format!("{name}.json"));
        if path.exists() {
            return from_fixture_path(&path);
        }
    }
    builtin_fixture(name)
        .ok_or_else(|| Error::UnknownSource(format!("fixture:{name}")))
        .and_then(from_fixture_str)
}
