//! TOML input files.
//!
//! ```toml
//! [ring]
//! components = [3, 3, 3, 3]
//!
//! [group]
//! kind = "cyclic"
//! order = 4
//!
//! [action]
//! kind = "restricted-global"
//! generator_perms = [[1, 2, 3, 0]]
//! idempotent = [1, 1, 1, 0]
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::finring::{Idem, Ring, RingElem};
use crate::group::FiniteGroup;
use crate::paction::{PartialAction, Twisting};
use crate::sequence::SequenceInput;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub ring: RingSpec,
    pub group: GroupSpec,
    pub action: ActionSpec,
    pub twist: Option<TwistSpec>,
    pub coordinates: Option<CoordinateSpec>,
    pub options: Option<OptionsSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    /// Moduli `p^k` of the factors `Z/p^k`.
    pub components: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic { order: usize },
    Product { orders: Vec<usize> },
    Table { table: Vec<Vec<usize>> },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionSpec {
    /// A global action by component permutations, optionally restricted to
    /// the ideal generated by `idempotent`.
    #[serde(alias = "global")]
    RestrictedGlobal {
        perms: Option<Vec<Vec<usize>>>,
        generator_perms: Option<Vec<Vec<usize>>>,
        idempotent: Option<Vec<u8>>,
    },
    /// `support[g]` is `1_g` as a 0/1 vector and `map[g][j]` the image of
    /// component `j` under `alpha_g`, or -1 outside `D_{g^-1}`.
    Explicit { support: Vec<Vec<u8>>, map: Vec<Vec<i64>> },
}

#[derive(Debug, Deserialize, Clone)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistEntry {
    pub g: ElementRef,
    pub h: ElementRef,
    pub value: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub entries: Vec<TwistEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordinateSpec {
    pub xs: Vec<Vec<i64>>,
    pub ys: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    pub seed: Option<u64>,
}

/// A parsed and structurally checked input.
#[derive(Clone, Debug)]
pub struct Input {
    pub action: PartialAction,
    pub twist: Option<Twisting>,
    pub coordinates: Option<(Vec<RingElem>, Vec<RingElem>)>,
    pub seed: Option<u64>,
}

impl Input {
    pub fn sequence_input(&self, seed: Option<u64>) -> SequenceInput {
        SequenceInput {
            action: self.action.clone(),
            twist: self.twist.clone(),
            coordinates: self.coordinates.clone(),
            seed: seed.or(self.seed).unwrap_or(0),
        }
    }
}

fn field(name: &str, e: Error) -> Error {
    Error::Input(format!("{name}: {e}"))
}

fn bits(name: &str, v: &[u8], c: usize) -> Result<Idem> {
    if v.len() != c {
        return Err(field(name, Error::Arity { expected: c, got: v.len() }));
    }
    v.iter()
        .map(|b| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Input(format!("{name}: entries must be 0 or 1"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Idem)
}

fn element(name: &str, grp: &FiniteGroup, e: &ElementRef) -> Result<usize> {
    match e {
        ElementRef::Index(k) if *k < grp.order() => Ok(*k),
        ElementRef::Index(k) => Err(Error::Input(format!("{name}: no group element {k}"))),
        ElementRef::Name(s) => grp.parse_element(s).map_err(|e| field(name, e)),
    }
}

fn ring_elem(name: &str, ring: &Ring, v: &[i64]) -> Result<RingElem> {
    ring.elem(v).map_err(|e| field(name, e))
}

impl InputFile {
    pub fn build(&self) -> Result<Input> {
        let ring = Ring::parse(&self.ring.components).map_err(|e| field("ring.components", e))?;
        let c = ring.len();
        let group = match &self.group {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic { order } => FiniteGroup::cyclic(*order),
            GroupSpec::Product { orders } => FiniteGroup::product(orders),
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()),
        }
        .map_err(|e| field("group", e))?;
        let action = match &self.action {
            ActionSpec::RestrictedGlobal { perms, generator_perms, idempotent } => {
                let global = match (perms, generator_perms) {
                    (Some(p), None) => PartialAction::global(ring.clone(), group.clone(), p.clone())
                        .map_err(|e| field("action.perms", e))?,
                    (None, Some(p)) => {
                        PartialAction::global_from_generators(ring.clone(), group.clone(), p.clone())
                            .map_err(|e| field("action.generator_perms", e))?
                    }
                    _ => {
                        return Err(Error::Input(
                            "action: give exactly one of perms and generator_perms".into(),
                        ))
                    }
                };
                match idempotent {
                    Some(bv) => {
                        let e = bits("action.idempotent", bv, c)?;
                        global.restrict_global(&e).map_err(|e| field("action.idempotent", e))?
                    }
                    None => global,
                }
            }
            ActionSpec::Explicit { support, map } => {
                let ones = support
                    .iter()
                    .enumerate()
                    .map(|(g, v)| bits(&format!("action.support[{g}]"), v, c))
                    .collect::<Result<Vec<_>>>()?;
                let maps = map
                    .iter()
                    .enumerate()
                    .map(|(g, row)| {
                        if row.len() != c {
                            return Err(field(
                                &format!("action.map[{g}]"),
                                Error::Arity { expected: c, got: row.len() },
                            ));
                        }
                        row.iter()
                            .map(|&t| match t {
                                -1 => Ok(None),
                                t if t >= 0 && (t as usize) < c => Ok(Some(t as usize)),
                                t => Err(Error::Input(format!("action.map[{g}]: no component {t}"))),
                            })
                            .collect()
                    })
                    .collect::<Result<Vec<_>>>()?;
                PartialAction::new(ring.clone(), group.clone(), ones, maps)
                    .map_err(|e| field("action", e))?
            }
        };
        // twist values and coordinates live in the acting ring, which is the
        // restriction `Re` for restricted-global actions
        let ring = action.ring().clone();
        let twist = match &self.twist {
            Some(t) => {
                let entries = t
                    .entries
                    .iter()
                    .enumerate()
                    .map(|(k, e)| {
                        let name = format!("twist.entries[{k}]");
                        Ok((
                            element(&name, &group, &e.g)?,
                            element(&name, &group, &e.h)?,
                            ring_elem(&name, &ring, &e.value)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Twisting::with_entries(&action, &entries).map_err(|e| field("twist", e))?)
            }
            None => None,
        };
        let coordinates = match &self.coordinates {
            Some(cs) => {
                if cs.xs.len() != cs.ys.len() {
                    return Err(Error::Input("coordinates: xs and ys differ in length".into()));
                }
                let conv = |name: &str, v: &[Vec<i64>]| {
                    v.iter()
                        .enumerate()
                        .map(|(k, x)| ring_elem(&format!("coordinates.{name}[{k}]"), &ring, x))
                        .collect::<Result<Vec<_>>>()
                };
                Some((conv("xs", &cs.xs)?, conv("ys", &cs.ys)?))
            }
            None => None,
        };
        Ok(Input { action, twist, coordinates, seed: self.options.as_ref().and_then(|o| o.seed) })
    }
}

pub fn parse_input(text: &str) -> Result<Input> {
    let file: InputFile = toml::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    file.build()
}

pub fn load_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const FIX_B: &str = r#"
[ring]
components = [3, 3, 3, 3]

[group]
kind = "cyclic"
order = 4

[action]
kind = "restricted-global"
generator_perms = [[1, 2, 3, 0]]
idempotent = [1, 1, 1, 0]
"#;

    #[test]
    fn parses_fixture_b() {
        let input = parse_input(FIX_B).unwrap();
        let b = fixtures::fix_b();
        assert_eq!(input.action.ones(), b.ones());
        for g in 0..4 {
            assert_eq!(input.action.map(g), b.map(g));
        }
    }

    #[test]
    fn explicit_and_twist() {
        let text = r#"
[ring]
components = [3, 3]
[group]
kind = "cyclic"
order = 2
[action]
kind = "explicit"
support = [[1, 1], [1, 1]]
map = [[0, 1], [1, 0]]
[twist]
entries = [{ g = "g1", h = 1, value = [2, 2] }]
[coordinates]
xs = [[1, 0], [0, 1]]
ys = [[1, 0], [0, 1]]
[options]
seed = 5
"#;
        let input = parse_input(text).unwrap();
        assert_eq!(input.twist.unwrap(), fixtures::fix_a_twist([2, 2]));
        assert_eq!(input.seed, Some(5));
        assert_eq!(input.coordinates.unwrap().0.len(), 2);
    }

    #[test]
    fn errors_name_fields() {
        let e = parse_input("[ring]\ncomponents = [3]\n[group]\nkind = \"cyclic\"\norder = 2\n[action]\nkind = \"global\"\nperms = [[0], [0]]\n[twist]\nentries = [{ g = \"g7\", h = 1, value = [1] }]\n")
            .unwrap_err();
        assert!(e.to_string().contains("twist.entries[0]"), "{e}");
        let e = parse_input("[ring]\ncomponents = [3]\n[group]\nkind = \"cyclic\"\norder = 2\n[action]\nkind = \"global\"\nperms = [[0, 1], [0]]\n").unwrap_err();
        assert!(e.to_string().contains("action.perms"), "{e}");
        let e = parse_input("[ring]\ncomponents = [3]\nextra = 1\n").unwrap_err();
        assert!(e.to_string().contains("line"), "{e}");
    }
}
