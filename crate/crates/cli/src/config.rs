//! The config document: a line-oriented, sectioned text format.
//!
//! ```text
//! # comments run to the end of the line
//! [graph]
//! vertices = 1
//! edges = 0-0, 0-0
//! base = 0
//!
//! [groups]
//! Z2 = cyclic 2
//! K4 = product Z2 Z2
//! S3 = perm 1 0 2; perm 0 2 1
//! T = table 0 1 / 1 0
//! E = trivial
//!
//! [cover]
//! group = S3
//! images = perm 1 0 2, perm 0 2 1
//! subgroup = perm 0 1 2, perm 1 0 2
//!
//! [tower]
//! level = Z2 | 1
//! level = Z4 | 1 | mod
//! level = Z8 | 1 | table 0 1 2 3 0 1 2 3
//! ```
//!
//! A document has either a `[cover]` or a `[tower]` section. The tower
//! section may instead hold the single line `solenoid p=2 depth=3`, which
//! expands to cyclic levels `Z2 ← Z4 ← Z8` over a circle.
//!
//! Element literals are indices, `(x, y)` tuples for products, or
//! `perm …` image lists for permutation groups. The parsed document keeps
//! only indices, so [`render`] writes indices back.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use liftspace::complex::BaseGraph;
use liftspace::covers::CoverSpec;
use liftspace::groups::{Elem, FiniteGroup, Subgroup};
use liftspace::tower::TowerSpec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("duplicate section [{0}]")]
    DuplicateSection(String),
    #[error("{0}")]
    Structure(String),
    #[error("invalid document: {0}")]
    Invalid(#[from] liftspace::Error),
}

type Result<T> = std::result::Result<T, ConfigError>;

fn syntax(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Syntax { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSection {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub base: usize,
}

impl GraphSection {
    pub fn circle() -> Self {
        GraphSection { vertices: 1, edges: vec![(0, 0)], base: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDef {
    Trivial,
    Cyclic(usize),
    Product(String, String),
    Table(Vec<Vec<Elem>>),
    /// Generators in image notation.
    Permutations(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BondDef {
    /// Reduction modulo the lower order, componentwise on products.
    Mod,
    Table(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDef {
    pub group: String,
    pub images: Vec<Elem>,
    /// Absent exactly on the first level.
    pub bond: Option<BondDef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSection {
    pub group: String,
    pub images: Vec<Elem>,
    /// Elements of `K`; empty means trivial.
    pub subgroup: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSection {
    Cover(CoverSection),
    Tower(Vec<LevelDef>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigDocument {
    pub graph: GraphSection,
    pub groups: Vec<(String, GroupDef)>,
    pub model: ModelSection,
}

/// What a document describes, built and validated.
#[derive(Clone, Debug)]
pub enum Model {
    Cover(CoverSpec),
    Tower(TowerSpec),
}

/// Shape information kept next to each built group, for element literals
/// and `mod` bonds.
#[derive(Clone, Debug)]
enum Shape {
    Trivial,
    Cyclic(usize),
    Product(Box<Built>, Box<Built>),
    Perm(Vec<Vec<usize>>),
    Table,
}

#[derive(Clone, Debug)]
struct Built {
    group: FiniteGroup,
    shape: Shape,
}

type Registry = BTreeMap<String, Built>;

fn build_groups(defs: &[(String, GroupDef)], lines: &[usize]) -> Result<Registry> {
    let mut registry = Registry::new();
    for (k, (name, def)) in defs.iter().enumerate() {
        let line = lines.get(k).copied().unwrap_or(0);
        let lookup = |n: &String| registry.get(n).cloned().ok_or_else(|| ConfigError::UnknownReference(n.clone()));
        let built = match def {
            GroupDef::Trivial => {
                Built { group: FiniteGroup::trivial().relabeled(name.clone(), &[0])?, shape: Shape::Trivial }
            }
            GroupDef::Cyclic(0) => return Err(syntax(line, "cyclic order must be positive")),
            GroupDef::Cyclic(n) => {
                let g = FiniteGroup::cyclic(*n);
                let relabel: Vec<Elem> = g.elements().collect();
                Built { group: g.relabeled(name.clone(), &relabel)?, shape: Shape::Cyclic(*n) }
            }
            GroupDef::Product(a, b) => {
                let (a, b) = (lookup(a)?, lookup(b)?);
                let g = FiniteGroup::direct_product(&a.group, &b.group);
                let relabel: Vec<Elem> = g.elements().collect();
                Built { group: g.relabeled(name.clone(), &relabel)?, shape: Shape::Product(Box::new(a), Box::new(b)) }
            }
            GroupDef::Table(rows) => Built { group: FiniteGroup::from_table(name.clone(), rows)?, shape: Shape::Table },
            GroupDef::Permutations(gens) => {
                let degree = gens.first().map_or(0, Vec::len);
                if gens.iter().any(|p| p.len() != degree) {
                    return Err(syntax(line, "permutations of different degrees"));
                }
                let (group, perms) = FiniteGroup::from_permutations(name.clone(), degree, gens)?;
                Built { group, shape: Shape::Perm(perms) }
            }
        };
        registry.insert(name.clone(), built);
    }
    Ok(registry)
}

/// Splits on commas outside parentheses.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out
}

fn parse_usize(line: usize, text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| syntax(line, format!("expected a number, found `{}`", text.trim())))
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace().map(|t| parse_usize(line, t)).collect()
}

fn parse_element(line: usize, text: &str, built: &Built) -> Result<Elem> {
    let text = text.trim();
    let order = built.group.order();
    let check = |x: Elem| {
        if x < order {
            Ok(x)
        } else {
            Err(syntax(line, format!("element {x} out of range for {} of order {order}", built.group.name())))
        }
    };
    if let Ok(x) = text.parse::<usize>() {
        return check(x);
    }
    if let Some(images) = text.strip_prefix("perm") {
        let Shape::Perm(perms) = &built.shape else {
            return Err(syntax(line, format!("`{text}`: {} is not a permutation group", built.group.name())));
        };
        let p = parse_numbers(line, images)?;
        return perms
            .iter()
            .position(|q| *q == p)
            .ok_or_else(|| syntax(line, format!("`{text}` is not in {}", built.group.name())));
    }
    if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let Shape::Product(a, b) = &built.shape else {
            return Err(syntax(line, format!("`{text}`: {} is not a product", built.group.name())));
        };
        let parts = split_top(inner);
        if parts.len() != 2 {
            return Err(syntax(line, format!("`{text}`: expected a pair")));
        }
        let x = parse_element(line, parts[0], a)?;
        let y = parse_element(line, parts[1], b)?;
        return check(x * b.group.order() + y);
    }
    Err(syntax(line, format!("cannot read element `{text}`")))
}

fn parse_elements(line: usize, text: &str, built: &Built) -> Result<Vec<Elem>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top(text).into_iter().map(|t| parse_element(line, t, built)).collect()
}

/// The `mod` bond between two levels, by shape.
fn mod_bond(upper: &Shape, lower: &Shape, x: Elem) -> Option<Elem> {
    match (upper, lower) {
        (_, Shape::Trivial) => Some(0),
        (Shape::Cyclic(n), Shape::Cyclic(m)) if n % m == 0 => Some(x % m),
        (Shape::Product(ua, ub), Shape::Product(la, lb)) => {
            let (un, ln) = (ub.group.order(), lb.group.order());
            Some(mod_bond(&ua.shape, &la.shape, x / un)? * ln + mod_bond(&ub.shape, &lb.shape, x % un)?)
        }
        _ => None,
    }
}

struct Section {
    line: usize,
    entries: Vec<(usize, String)>,
}

fn split_key(line: usize, text: &str) -> Result<(String, String)> {
    let (k, v) = text.split_once('=').ok_or_else(|| syntax(line, format!("expected `key = value`, found `{text}`")))?;
    let k = k.trim();
    if k.is_empty() || !k.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
        return Err(syntax(line, format!("bad key `{k}`")));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

/// Parses and validates a document: references resolve, the model builds.
pub fn parse_config(text: &str) -> Result<ConfigDocument> {
    let mut sections: BTreeMap<String, Section> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !["graph", "groups", "cover", "tower"].contains(&name.as_str()) {
                return Err(syntax(line, format!("unknown section [{name}]")));
            }
            if sections.contains_key(&name) {
                return Err(ConfigError::DuplicateSection(name));
            }
            sections.insert(name.clone(), Section { line, entries: Vec::new() });
            current = Some(name);
            continue;
        }
        let Some(name) = &current else {
            return Err(syntax(line, "content before the first section"));
        };
        sections.get_mut(name).expect("current section exists").entries.push((line, content.to_string()));
    }

    let (cover, tower) = (sections.remove("cover"), sections.remove("tower"));
    let solenoid = match &tower {
        Some(s) => s.entries.iter().find(|(_, t)| t.starts_with("solenoid")).cloned(),
        None => None,
    };

    let graph = match sections.remove("graph") {
        Some(s) => parse_graph(s)?,
        None if solenoid.is_some() => GraphSection::circle(),
        None => return Err(ConfigError::Structure("missing [graph] section".into())),
    };

    let mut groups = Vec::new();
    let mut group_lines = Vec::new();
    if let Some(s) = sections.remove("groups") {
        for (line, text) in s.entries {
            let (name, def) = split_key(line, &text)?;
            if groups.iter().any(|(n, _)| *n == name) {
                return Err(syntax(line, format!("group `{name}` defined twice")));
            }
            groups.push((name, parse_group_def(line, &def)?));
            group_lines.push(line);
        }
    }

    let model = match (cover, tower) {
        (Some(_), Some(_)) => {
            return Err(ConfigError::Structure("a document has a [cover] or a [tower] section, not both".into()))
        }
        (None, None) => return Err(ConfigError::Structure("missing [cover] or [tower] section".into())),
        (Some(s), None) => {
            let registry = build_groups(&groups, &group_lines)?;
            ModelSection::Cover(parse_cover(s, &registry)?)
        }
        (None, Some(s)) => {
            if let Some((line, text)) = solenoid {
                if s.entries.len() != 1 {
                    return Err(syntax(line, "`solenoid` must be the only line of [tower]"));
                }
                expand_solenoid(line, &text, &mut groups, &mut group_lines)?
            } else {
                let registry = build_groups(&groups, &group_lines)?;
                ModelSection::Tower(parse_tower(s, &registry)?)
            }
        }
    };
    let doc = ConfigDocument { graph, groups, model };
    doc.build()?;
    Ok(doc)
}

fn parse_graph(s: Section) -> Result<GraphSection> {
    let (mut vertices, mut edges, mut base) = (None, None, None);
    for (line, text) in s.entries {
        let (key, value) = split_key(line, &text)?;
        let slot_taken = match key.as_str() {
            "vertices" => vertices.replace(parse_usize(line, &value)?).is_some(),
            "base" => base.replace(parse_usize(line, &value)?).is_some(),
            "edges" => {
                let mut list = Vec::new();
                if !value.is_empty() {
                    for e in value.split(',') {
                        let (u, v) =
                            e.split_once('-').ok_or_else(|| syntax(line, format!("bad edge `{}`", e.trim())))?;
                        list.push((parse_usize(line, u)?, parse_usize(line, v)?));
                    }
                }
                edges.replace(list).is_some()
            }
            _ => return Err(syntax(line, format!("unknown key `{key}` in [graph]"))),
        };
        if slot_taken {
            return Err(syntax(line, format!("`{key}` given twice")));
        }
    }
    let missing = |k: &str| syntax(s.line, format!("[graph] needs `{k}`"));
    Ok(GraphSection {
        vertices: vertices.ok_or_else(|| missing("vertices"))?,
        edges: edges.ok_or_else(|| missing("edges"))?,
        base: base.unwrap_or(0),
    })
}

fn parse_group_def(line: usize, text: &str) -> Result<GroupDef> {
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    match head {
        "trivial" if rest.is_empty() => Ok(GroupDef::Trivial),
        "cyclic" => Ok(GroupDef::Cyclic(parse_usize(line, rest)?)),
        "product" => match rest.split_whitespace().collect::<Vec<_>>()[..] {
            [a, b] => Ok(GroupDef::Product(a.to_string(), b.to_string())),
            _ => Err(syntax(line, "`product` takes two group names")),
        },
        "table" => Ok(GroupDef::Table(rest.split('/').map(|row| parse_numbers(line, row)).collect::<Result<_>>()?)),
        "perm" => Ok(GroupDef::Permutations(
            text.split(';')
                .map(|p| {
                    let p = p.trim();
                    p.strip_prefix("perm")
                        .map(|q| parse_numbers(line, q))
                        .unwrap_or_else(|| Err(syntax(line, format!("expected `perm …`, found `{p}`"))))
                })
                .collect::<Result<_>>()?,
        )),
        _ => Err(syntax(line, format!("unknown group construction `{text}`"))),
    }
}

fn get<'a>(registry: &'a Registry, name: &str) -> Result<&'a Built> {
    registry.get(name).ok_or_else(|| ConfigError::UnknownReference(name.to_string()))
}

fn parse_cover(s: Section, registry: &Registry) -> Result<CoverSection> {
    let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (line, text) in s.entries {
        let (key, value) = split_key(line, &text)?;
        if !["group", "images", "subgroup"].contains(&key.as_str()) {
            return Err(syntax(line, format!("unknown key `{key}` in [cover]")));
        }
        if fields.insert(key.clone(), (line, value)).is_some() {
            return Err(syntax(line, format!("`{key}` given twice")));
        }
    }
    let (_, group) = fields.remove("group").ok_or_else(|| syntax(s.line, "[cover] needs `group`"))?;
    let built = get(registry, &group)?;
    let (iline, images) = fields.remove("images").unwrap_or((s.line, String::new()));
    let images = parse_elements(iline, &images, built)?;
    let subgroup = match fields.remove("subgroup") {
        Some((line, text)) => parse_elements(line, &text, built)?,
        None => Vec::new(),
    };
    Ok(CoverSection { group, images, subgroup })
}

fn parse_tower(s: Section, registry: &Registry) -> Result<Vec<LevelDef>> {
    let mut levels = Vec::new();
    for (line, text) in s.entries {
        let (key, value) = split_key(line, &text)?;
        if key != "level" {
            return Err(syntax(line, format!("unknown key `{key}` in [tower]")));
        }
        let parts: Vec<&str> = value.split('|').map(str::trim).collect();
        let first = levels.is_empty();
        let (group, images, bond) = match (parts.len(), first) {
            (2, true) => (parts[0], parts[1], None),
            (3, false) => (parts[0], parts[1], Some(parts[2])),
            (_, true) => return Err(syntax(line, "the first level is `group | images`")),
            (_, false) => return Err(syntax(line, "a level is `group | images | bond`")),
        };
        let built = get(registry, group)?;
        let images = parse_elements(line, images, built)?;
        let bond = match bond {
            None => None,
            Some("mod") => Some(BondDef::Mod),
            Some(b) => match b.strip_prefix("table") {
                Some(t) => Some(BondDef::Table(parse_numbers(line, t)?)),
                None => return Err(syntax(line, format!("bond is `mod` or `table …`, found `{b}`"))),
            },
        };
        levels.push(LevelDef { group: group.to_string(), images, bond });
    }
    if levels.is_empty() {
        return Err(syntax(s.line, "[tower] has no levels"));
    }
    Ok(levels)
}

fn expand_solenoid(
    line: usize,
    text: &str,
    groups: &mut Vec<(String, GroupDef)>,
    group_lines: &mut Vec<usize>,
) -> Result<ModelSection> {
    let (mut p, mut depth) = (None, None);
    for token in text.split_whitespace().skip(1) {
        match token.split_once('=') {
            Some(("p", v)) => p = Some(parse_usize(line, v)?),
            Some(("depth", v)) => depth = Some(parse_usize(line, v)?),
            _ => return Err(syntax(line, format!("unknown solenoid parameter `{token}`"))),
        }
    }
    let (p, depth) = match (p, depth) {
        (Some(p), Some(d)) if p >= 2 && d >= 1 => (p, d),
        _ => return Err(syntax(line, "solenoid needs p ≥ 2 and depth ≥ 1")),
    };
    let mut levels = Vec::new();
    let mut order = 1usize;
    for k in 0..depth {
        order = order.checked_mul(p).ok_or_else(|| syntax(line, "solenoid order overflows"))?;
        let name = format!("Z{order}");
        if groups.iter().any(|(n, _)| *n == name) {
            return Err(syntax(line, format!("solenoid level `{name}` clashes with a defined group")));
        }
        groups.push((name.clone(), GroupDef::Cyclic(order)));
        group_lines.push(line);
        levels.push(LevelDef { group: name, images: vec![1], bond: (k > 0).then_some(BondDef::Mod) });
    }
    Ok(ModelSection::Tower(levels))
}

impl ConfigDocument {
    pub fn base_graph(&self) -> Result<BaseGraph> {
        Ok(BaseGraph::from_edges(self.graph.vertices, &self.graph.edges, self.graph.base)?)
    }

    /// Builds the cover or tower the document describes.
    pub fn build(&self) -> Result<Model> {
        let registry = build_groups(&self.groups, &[])?;
        let base = self.base_graph()?;
        match &self.model {
            ModelSection::Cover(c) => {
                let built = get(&registry, &c.group)?;
                let k = if c.subgroup.is_empty() {
                    Subgroup::trivial(&built.group)
                } else {
                    Subgroup::new(&built.group, &c.subgroup)?
                };
                Ok(Model::Cover(CoverSpec::new(base, built.group.clone(), c.images.clone(), k)?))
            }
            ModelSection::Tower(levels) => {
                let mut groups = Vec::new();
                let mut bonds = Vec::new();
                let mut images = Vec::new();
                for (i, level) in levels.iter().enumerate() {
                    let built = get(&registry, &level.group)?;
                    match (&level.bond, i) {
                        (None, 0) => {}
                        (Some(BondDef::Table(t)), i) if i > 0 => bonds.push(t.clone()),
                        (Some(BondDef::Mod), i) if i > 0 => {
                            let lower = get(&registry, &levels[i - 1].group)?;
                            let table = built
                                .group
                                .elements()
                                .map(|x| mod_bond(&built.shape, &lower.shape, x))
                                .collect::<Option<Vec<_>>>()
                                .ok_or_else(|| {
                                    ConfigError::Structure(format!(
                                        "level {}: `mod` needs cyclic levels (or products of them) with dividing orders",
                                        i + 1
                                    ))
                                })?;
                            bonds.push(table);
                        }
                        _ => return Err(ConfigError::Structure(format!("level {}: misplaced bond", i + 1))),
                    }
                    groups.push(built.group.clone());
                    images.push(level.images.clone());
                }
                Ok(Model::Tower(TowerSpec::new(base, groups, bonds, images)?))
            }
        }
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Writes a document back in the config format; elements become indices.
pub fn render(doc: &ConfigDocument) -> String {
    let mut out = String::new();
    let g = &doc.graph;
    let edges: Vec<String> = g.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let _ = writeln!(out, "[graph]\nvertices = {}\nedges = {}\nbase = {}", g.vertices, edges.join(", "), g.base);
    if !doc.groups.is_empty() {
        out.push_str("\n[groups]\n");
        for (name, def) in &doc.groups {
            let def = match def {
                GroupDef::Trivial => "trivial".to_string(),
                GroupDef::Cyclic(n) => format!("cyclic {n}"),
                GroupDef::Product(a, b) => format!("product {a} {b}"),
                GroupDef::Table(rows) => {
                    format!("table {}", rows.iter().map(|r| join(r, " ")).collect::<Vec<_>>().join(" / "))
                }
                GroupDef::Permutations(gens) => {
                    gens.iter().map(|p| format!("perm {}", join(p, " "))).collect::<Vec<_>>().join("; ")
                }
            };
            let _ = writeln!(out, "{name} = {def}");
        }
    }
    match &doc.model {
        ModelSection::Cover(c) => {
            let _ = writeln!(out, "\n[cover]\ngroup = {}\nimages = {}", c.group, join(&c.images, ", "));
            if !c.subgroup.is_empty() {
                let _ = writeln!(out, "subgroup = {}", join(&c.subgroup, ", "));
            }
        }
        ModelSection::Tower(levels) => {
            out.push_str("\n[tower]\n");
            for level in levels {
                let _ = write!(out, "level = {} | {}", level.group, join(&level.images, ", "));
                match &level.bond {
                    None => {}
                    Some(BondDef::Mod) => out.push_str(" | mod"),
                    Some(BondDef::Table(t)) => {
                        let _ = write!(out, " | table {}", join(t, " "));
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}
