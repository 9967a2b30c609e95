//! TOML group datum files.
//!
//! ```toml
//! name = "90"
//! dim = 3
//! elements = ["e", "a", ...]          # identity first
//! mult = [["e", "a", ...], ...]       # row x, column y holds x·y
//! relators = ["(b^-1 a)^2", ...]
//! n_generators = ["a b^2 a^-1", ...]  # words for the lattice basis
//! [action]      # element = integer matrix M_d
//! [section]     # element = translation t_d, components "p/q"
//! [generators]  # letter = { point = "a", lattice = [0, 0, 0] }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::crystal::{Anchor, CrystalGroup, GroupParts, IntMatrix, Issue, PointGroup, PointGroupIssue};
use crate::error::{Error, Result};
use crate::numerics::{parse_rational, Q};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    elements: Vec<String>,
    mult: Vec<Vec<String>>,
    #[serde(default)]
    inv: Option<Vec<String>>,
    #[serde(default)]
    relators: Vec<String>,
    n_generators: Vec<String>,
    action: BTreeMap<String, Vec<Vec<i64>>>,
    section: BTreeMap<String, Vec<RawNumber>>,
    generators: BTreeMap<String, RawGenerator>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    point: String,
    #[serde(default)]
    lattice: Option<Vec<i64>>,
}

/// A parsed but not yet validated datum; verification can inspect it even when it fails to build.
#[derive(Clone, Debug)]
pub struct GroupDatum {
    pub file: String,
    pub text: String,
    pub name: String,
    pub dim: usize,
    pub elements: Vec<String>,
    pub mult: Vec<Vec<usize>>,
    pub inv: Option<Vec<usize>>,
    pub action: Vec<IntMatrix>,
    pub section: Vec<Vec<Q>>,
    pub generators: Vec<(String, Vec<i64>, usize)>,
    pub relators: Vec<String>,
    pub n_generators: Vec<String>,
}

/// The group-90 datum shipped with the crate.
pub const GROUP90_TOML: &str = include_str!("../data/g90.toml");

impl GroupDatum {
    pub fn parse(text: &str, file: &str) -> Result<GroupDatum> {
        let raw: RawDatum = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |s| line_of_offset(text, s.start));
            Error::Datum { file: file.into(), line, msg: e.message().trim().to_string() }
        })?;
        let at = |anchor: Anchor, msg: String| Error::Datum { file: file.into(), line: locate(text, &anchor), msg };
        let key = |k: &str| Anchor::Key(k.into());
        let entry = |t: &str, k: &str| Anchor::Entry(t.into(), k.into());

        let elements = raw.elements.clone();
        if elements.is_empty() {
            return Err(at(key("elements"), "no elements".into()));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(at(key("elements"), format!("duplicate element '{e}'")));
            }
        }
        let index = |name: &str, anchor: Anchor| {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| at(anchor, format!("unknown element '{name}'")))
        };
        if raw.dim == 0 {
            return Err(at(key("dim"), "dimension must be positive".into()));
        }
        if raw.mult.len() != elements.len() {
            return Err(at(key("mult"), format!("expected {} rows", elements.len())));
        }
        let mut mult = Vec::new();
        for row in &raw.mult {
            if row.len() != elements.len() {
                return Err(at(key("mult"), format!("expected {} columns in every row", elements.len())));
            }
            mult.push(row.iter().map(|x| index(x, key("mult"))).collect::<Result<Vec<_>>>()?);
        }
        let inv = match &raw.inv {
            None => None,
            Some(v) if v.len() != elements.len() => {
                return Err(at(key("inv"), format!("expected {} entries", elements.len())))
            }
            Some(v) => Some(v.iter().map(|x| index(x, key("inv"))).collect::<Result<Vec<_>>>()?),
        };

        let mut action = Vec::new();
        let mut section = Vec::new();
        for e in &elements {
            let m = raw.action.get(e).ok_or_else(|| at(key("action"), format!("missing action matrix for '{e}'")))?;
            let m = IntMatrix::from_rows(m)
                .filter(|m| m.dim() == raw.dim)
                .ok_or_else(|| at(entry("action", e), format!("expected a {0}x{0} integer matrix", raw.dim)))?;
            action.push(m);
            let t = raw.section.get(e).ok_or_else(|| at(key("section"), format!("missing translation for '{e}'")))?;
            if t.len() != raw.dim {
                return Err(at(entry("section", e), format!("expected {} components", raw.dim)));
            }
            let t = t
                .iter()
                .map(|x| match x {
                    RawNumber::Int(i) => Ok(Q::from_integer(*i as i128)),
                    RawNumber::Text(s) => parse_rational(s).map_err(|err| at(entry("section", e), err.to_string())),
                })
                .collect::<Result<Vec<_>>>()?;
            section.push(t);
        }
        for k in raw.action.keys() {
            index(k, entry("action", k))?;
        }
        for k in raw.section.keys() {
            index(k, entry("section", k))?;
        }

        let mut generators = Vec::new();
        for (g, spec) in &raw.generators {
            let d = index(&spec.point, entry("generators", g))?;
            let n = spec.lattice.clone().unwrap_or_else(|| vec![0; raw.dim]);
            generators.push((g.clone(), n, d));
        }

        Ok(GroupDatum {
            file: file.into(),
            text: text.into(),
            name: raw.name.unwrap_or_default(),
            dim: raw.dim,
            elements,
            mult,
            inv,
            action,
            section,
            generators,
            relators: raw.relators,
            n_generators: raw.n_generators,
        })
    }

    pub fn read(path: &Path) -> Result<GroupDatum> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        GroupDatum::parse(&text, &path.display().to_string())
    }

    pub fn group90() -> GroupDatum {
        GroupDatum::parse(GROUP90_TOML, "g90.toml").expect("bundled datum parses")
    }

    fn fail(&self, issue: Issue) -> Error {
        Error::Datum { file: self.file.clone(), line: locate(&self.text, &issue.anchor), msg: issue.msg }
    }

    /// Validate everything except the relators and build the group.
    pub fn build(&self) -> Result<CrystalGroup> {
        let point = PointGroup::new(self.elements.clone(), self.mult.clone(), self.action.clone()).map_err(|i| {
            self.fail(match i {
                PointGroupIssue::Table(m) => Issue { anchor: Anchor::Key("mult".into()), msg: m },
                PointGroupIssue::Action(d, m) => {
                    Issue { anchor: Anchor::Entry("action".into(), self.elements[d].clone()), msg: m }
                }
            })
        })?;
        if let Some(inv) = &self.inv {
            for (d, &i) in inv.iter().enumerate() {
                if point.inv(d) != i {
                    return Err(self.fail(Issue {
                        anchor: Anchor::Key("inv".into()),
                        msg: format!("inverse of '{}' is '{}', not '{}'", self.elements[d], point.name(point.inv(d)), self.elements[i]),
                    }));
                }
            }
        }
        CrystalGroup::new(GroupParts {
            name: self.name.clone(),
            point,
            section: self.section.clone(),
            generators: self.generators.clone(),
            relators: self.relators.clone(),
            n_generators: self.n_generators.clone(),
        })
        .map_err(|i| self.fail(i))
    }
}

/// Load and validate a datum file; `@g90` selects the bundled group-90 datum.
pub fn load_group(path: &str) -> Result<CrystalGroup> {
    if path == "@g90" {
        return GroupDatum::group90().build();
    }
    GroupDatum::read(Path::new(path))?.build()
}

/// Read a datum without validating it; `@g90` selects the bundled datum.
pub fn read_datum(path: &str) -> Result<GroupDatum> {
    if path == "@g90" {
        return Ok(GroupDatum::group90());
    }
    GroupDatum::read(Path::new(path))
}

/// The bundled group-90 crystal group.
pub fn group90() -> CrystalGroup {
    GroupDatum::group90().build().expect("bundled datum validates")
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn key_matches(line: &str, key: &str) -> bool {
    let t = line.trim_start();
    let rest = match t.strip_prefix('"') {
        Some(quoted) => quoted.strip_prefix(key).and_then(|r| r.strip_prefix('"')),
        None => t.strip_prefix(key),
    };
    rest.is_some_and(|r| r.trim_start().starts_with('='))
}

/// 1-based line of an anchor in the source text; line 1 when not found.
pub fn locate(text: &str, anchor: &Anchor) -> usize {
    let lines: Vec<&str> = text.lines().collect();
    match anchor {
        Anchor::Key(k) => lines
            .iter()
            .position(|l| key_matches(l, k) || l.trim() == format!("[{k}]"))
            .map_or(1, |i| i + 1),
        Anchor::Entry(table, k) => {
            let header = format!("[{table}]");
            let Some(start) = lines.iter().position(|l| l.trim() == header) else {
                return 1;
            };
            lines[start + 1..]
                .iter()
                .take_while(|l| !l.trim_start().starts_with('['))
                .position(|l| key_matches(l, k))
                .map_or(start + 1, |i| start + i + 2)
        }
    }
}
