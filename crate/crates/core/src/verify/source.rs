use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::{self, HSpec};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::perm::Permutation;

pub const DEFAULT_MANIFEST: &str = include_str!("../../manifests/default.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub source: String,
    pub primes: Vec<u64>,
    /// Candidate supplements, each given by generators in cycle notation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weakly_pronormal_witnesses: Vec<Vec<String>>,
}

impl ManifestEntry {
    pub fn witnesses(&self, g: &FiniteGroup) -> Result<Vec<Subgroup>> {
        self.weakly_pronormal_witnesses
            .iter()
            .map(|gens| {
                let perms = gens
                    .iter()
                    .map(|c| Permutation::parse_cycles(g.degree(), c))
                    .collect::<Result<Vec<_>>>()?;
                g.subgroup_from_generators(&perms)
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let entries: Vec<ManifestEntry> =
            serde_json::from_str(text).map_err(|e| Error::MalformedManifest(e.to_string()))?;
        for e in &entries {
            e.source.parse::<Source>()?;
            if let Some(&p) = e.primes.iter().find(|&&p| !crate::lattice::is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(Manifest { entries })
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        Manifest::parse(&std::fs::read_to_string(path)?)
    }

    pub fn default_corpus() -> Manifest {
        Manifest::parse(DEFAULT_MANIFEST).expect("the bundled manifest parses")
    }
}

/// `name` or `name(arg, ..)`, where arguments are integers or expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuilderExpr {
    Int(u64),
    Call {
        name: String,
        args: Vec<BuilderExpr>,
    },
}

impl fmt::Display for BuilderExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuilderExpr::Int(n) => write!(f, "{n}"),
            BuilderExpr::Call { name, args } if args.is_empty() => write!(f, "{name}"),
            BuilderExpr::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::UnknownSource(format!("{what} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn expr(&mut self) -> Result<BuilderExpr> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
        if !digits.is_empty() {
            return digits
                .parse()
                .map(BuilderExpr::Int)
                .map_err(|_| self.err("integer out of range"));
        }
        let name = self
            .take_while(|c| c.is_ascii_alphanumeric() || c == '_')
            .to_string();
        if name.is_empty() {
            return Err(self.err("expected a name or an integer"));
        }
        let mut args = Vec::new();
        if self.eat('(') {
            if !self.eat(')') {
                loop {
                    args.push(self.expr()?);
                    if self.eat(')') {
                        break;
                    }
                    if !self.eat(',') {
                        return Err(self.err("expected ',' or ')'"));
                    }
                }
            }
        }
        Ok(BuilderExpr::Call { name, args })
    }
}

pub fn parse_builder(text: &str) -> Result<BuilderExpr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Fixture(String),
    Builder(BuilderExpr),
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Source> {
        if let Some(name) = s.strip_prefix("fixture:") {
            if name.is_empty() {
                return Err(Error::UnknownSource(s.to_string()));
            }
            Ok(Source::Fixture(name.to_string()))
        } else if let Some(expr) = s.strip_prefix("builder:") {
            Ok(Source::Builder(parse_builder(expr)?))
        } else {
            Err(Error::UnknownSource(s.to_string()))
        }
    }
}

impl Source {
    pub fn build(&self, fixture_dir: Option<&Path>) -> Result<FiniteGroup> {
        match self {
            Source::Fixture(name) => construct::from_fixture(name, fixture_dir),
            Source::Builder(e) => build(e, fixture_dir),
        }
    }
}

pub fn load_source(source: &str, fixture_dir: Option<&Path>) -> Result<FiniteGroup> {
    source.parse::<Source>()?.build(fixture_dir)
}

fn ints(name: &str, args: &[BuilderExpr], n: usize) -> Result<Vec<u64>> {
    let bad = || Error::UnknownSource(format!("{name} expects {n} integer argument(s)"));
    if args.len() != n {
        return Err(bad());
    }
    args.iter()
        .map(|a| match a {
            BuilderExpr::Int(k) => Ok(*k),
            _ => Err(bad()),
        })
        .collect()
}

fn small(k: u64) -> Result<u32> {
    u32::try_from(k).map_err(|_| Error::ParameterOutOfRange(k.to_string()))
}

pub fn build(expr: &BuilderExpr, fixture_dir: Option<&Path>) -> Result<FiniteGroup> {
    let BuilderExpr::Call { name, args } = expr else {
        return Err(Error::UnknownSource(format!("{expr} is not a group")));
    };
    let name = name.as_str();
    let one = |args: &[BuilderExpr]| ints(name, args, 1).map(|v| v[0]);
    let two = |args: &[BuilderExpr]| ints(name, args, 2).map(|v| (v[0], v[1]));
    match name {
        "cyclic" => construct::cyclic(one(args)? as usize),
        "elementary_abelian" => {
            let (p, k) = two(args)?;
            construct::elementary_abelian(p, k as usize)
        }
        "dihedral" => construct::dihedral(one(args)? as usize),
        "quaternion8" => {
            ints(name, args, 0)?;
            construct::quaternion8()
        }
        "symmetric" => construct::symmetric(one(args)? as usize),
        "alternating" => construct::alternating(one(args)? as usize),
        "gl" => {
            let (n, p) = two(args)?;
            construct::gl(n as usize, small(p)?)
        }
        "sl2" => construct::sl2(small(one(args)?)?),
        "unitriangular" => {
            let (n, p) = two(args)?;
            construct::unitriangular(n as usize, small(p)?)
        }
        "unitriangular3" => construct::unitriangular3(small(one(args)?)?),
        "extraspecial" => construct::extraspecial_p3_exponent_p(small(one(args)?)?),
        "affine" => {
            let bad = || Error::UnknownSource("affine expects (p, SL2|GL2)".into());
            let [BuilderExpr::Int(p), BuilderExpr::Call {
                name: h,
                args: hargs,
            }] = args.as_slice()
            else {
                return Err(bad());
            };
            let spec = match (h.as_str(), hargs.is_empty()) {
                ("SL2", true) => HSpec::SL2,
                ("GL2", true) => HSpec::GL2,
                _ => return Err(bad()),
            };
            Ok(construct::affine_model(small(*p)?, spec)?.group)
        }
        "direct_product" => {
            let [a, b] = args.as_slice() else {
                return Err(Error::UnknownSource(
                    "direct_product expects two groups".into(),
                ));
            };
            let (a, b) = (build(a, fixture_dir)?, build(b, fixture_dir)?);
            Ok(FiniteGroup::direct_product(&a, &b)?.group().clone())
        }
        "fixture" => match args.as_slice() {
            [BuilderExpr::Call { name, args }] if args.is_empty() => {
                construct::from_fixture(name, fixture_dir)
            }
            _ => Err(Error::UnknownSource("fixture expects a name".into())),
        },
        _ => Err(Error::UnknownSource(name.to_string())),
    }
}
