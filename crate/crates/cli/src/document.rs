//! Graph and cocycle documents: JSON text with sorted keys, parsed strictly and emitted in one
//! canonical form so that emit, parse, emit is the identity on bytes.

use std::sync::Arc;

use kgraph::bridge::{c_phi, Cat1Cochain, Cat2Cocycle};
use kgraph::cubical::{cubes, CubicalCochain, EdgeFunctor};
use kgraph::{validate, CoeffGroup, GroupElem, KGraph, Morphism, Skeleton, SquareTable};
use serde_json::{Map, Value};

use crate::CliError;

/// A validated graph, with the block choice if the document overrides it.
#[derive(Clone, Debug)]
pub struct GraphDocument {
    pub graph: Arc<KGraph>,
    pub blocks: Option<Vec<Morphism>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    /// A function on squares.
    Cubical2,
    /// `δb` for `b` summed along preferred words from edge values.
    CatCoboundary,
    /// A functor given by its edge values.
    Functor1,
}

impl CocycleKind {
    fn name(self) -> &'static str {
        match self {
            CocycleKind::Cubical2 => "cubical2",
            CocycleKind::CatCoboundary => "cat-coboundary",
            CocycleKind::Functor1 => "functor1",
        }
    }

    fn rank(self) -> usize {
        match self {
            CocycleKind::Cubical2 => 2,
            _ => 1,
        }
    }
}

/// Values on squares (`cubical2`) or edges (the other kinds), stored as a cubical cochain.
#[derive(Clone, Debug)]
pub struct CocycleDocument {
    pub kind: CocycleKind,
    pub table: CubicalCochain,
}

impl CocycleDocument {
    pub fn group(&self) -> &CoeffGroup {
        self.table.group()
    }

    /// The categorical 2-cocycle the document describes.
    pub fn categorical(&self) -> Result<Cat2Cocycle, CliError> {
        match self.kind {
            CocycleKind::Cubical2 => Ok(c_phi(&self.table)?),
            CocycleKind::CatCoboundary => Ok(Cat2Cocycle::coboundary(&Cat1Cochain::preferred_sum(&self.table))),
            CocycleKind::Functor1 => Err(CliError::Usage("a functor1 document does not describe a 2-cocycle".into())),
        }
    }

    pub fn functor(&self) -> Result<EdgeFunctor, CliError> {
        let g = self.table.graph();
        let values = g.edge_ids().map(|e| self.table.at(&g.edge_morphism(e)).clone()).collect();
        Ok(EdgeFunctor::from_edge_values(g.clone(), self.group().clone(), values)?)
    }
}

fn parse_err(line: Option<usize>, reason: impl Into<String>) -> CliError {
    CliError::Parse { line, reason: reason.into() }
}

/// 1-based line of the first occurrence of `needle` at or after `from`.
fn line_of(text: &str, needle: &str, from: usize) -> Option<usize> {
    let at = from + text.get(from..)?.find(needle)?;
    Some(text[..at].matches('\n').count() + 1)
}

fn section_start(text: &str, key: &str) -> usize {
    text.find(&format!("\"{key}\"")).unwrap_or(0)
}

fn parse_json(text: &str) -> Result<Map<String, Value>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_err(Some(e.line()), e.to_string()))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(parse_err(Some(1), "expected a JSON object")),
    }
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], text: &str) -> Result<(), CliError> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(line_of(text, &format!("\"{k}\""), 0), format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    map.get(key).ok_or_else(|| parse_err(None, format!("missing field `{key}`")))
}

fn ident(value: &Value, what: &str, text: &str) -> Result<String, CliError> {
    let s = value.as_str().ok_or_else(|| parse_err(None, format!("{what} must be a string, found {value}")))?;
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(parse_err(
            line_of(text, &format!("\"{s}\""), 0),
            format!("{what} `{s}` must be nonempty without whitespace"),
        ));
    }
    Ok(s.to_string())
}

fn array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    value.as_array().ok_or_else(|| parse_err(None, format!("`{what}` must be an array")))
}

pub fn parse_graph(text: &str) -> Result<GraphDocument, CliError> {
    let map = parse_json(text)?;
    check_keys(&map, &["k", "vertices", "edges", "squares", "blocks"], text)?;
    let k =
        field(&map, "k")?.as_u64().ok_or_else(|| parse_err(line_of(text, "\"k\"", 0), "`k` must be a nonnegative integer"))?;
    let k = k as usize;
    let mut skeleton = Skeleton::new(k);
    let vstart = section_start(text, "vertices");
    for v in array(field(&map, "vertices")?, "vertices")? {
        let name = ident(v, "vertex id", text)?;
        skeleton
            .add_vertex(name.as_str())
            .map_err(|e| parse_err(line_of(text, &format!("\"{name}\""), vstart), e.to_string()))?;
    }
    let estart = section_start(text, "edges");
    for e in array(field(&map, "edges")?, "edges")? {
        let obj = e.as_object().ok_or_else(|| parse_err(None, "each edge must be an object"))?;
        let id = ident(field(obj, "id")?, "edge id", text)?;
        let line = line_of(text, &format!("\"{id}\""), estart);
        if let Some(extra) = obj.keys().find(|key| !["id", "colour", "source", "range"].contains(&key.as_str())) {
            return Err(parse_err(line, format!("edge `{id}` has unknown field `{extra}`")));
        }
        let colour = field(obj, "colour")?.as_u64().unwrap_or(0) as usize;
        if colour == 0 || colour > k {
            return Err(parse_err(line, format!("edge `{id}` has colour {}, outside 1..={k}", field(obj, "colour")?)));
        }
        let source = ident(field(obj, "source")?, "vertex id", text)?;
        let range = ident(field(obj, "range")?, "vertex id", text)?;
        skeleton.add_edge(id.as_str(), colour, &source, &range).map_err(|err| parse_err(line, err.to_string()))?;
    }
    let mut table = SquareTable::new();
    for sq in array(field(&map, "squares")?, "squares")? {
        let names = array(sq, "squares")?;
        if names.len() != 4 {
            return Err(parse_err(None, format!("square {sq} must list four edge ids")));
        }
        let n: Vec<String> = names.iter().map(|v| ident(v, "edge id", text)).collect::<Result<_, _>>()?;
        table.push(&n[0], &n[1], &n[2], &n[3]);
    }
    let graph = Arc::new(validate(skeleton, &table).map_err(CliError::Validation)?);
    let blocks = match map.get("blocks") {
        None => None,
        Some(b) => Some(parse_blocks(&graph, b, text)?),
    };
    Ok(GraphDocument { graph, blocks })
}

fn parse_blocks(g: &KGraph, value: &Value, text: &str) -> Result<Vec<Morphism>, CliError> {
    let obj = value.as_object().ok_or_else(|| parse_err(None, "`blocks` must map vertex ids to edge-id lists"))?;
    let start = section_start(text, "blocks");
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in g.vertex_ids() {
        let name = g.vertex_name(v);
        let word = obj.get(name).ok_or_else(|| parse_err(None, format!("no block given for vertex `{name}`")))?;
        let ids = array(word, "blocks")?
            .iter()
            .map(|e| ident(e, "edge id", text).and_then(|id| g.edge(&id).map_err(CliError::Validation)))
            .collect::<Result<Vec<_>, _>>()?;
        let line = line_of(text, &format!("\"{name}\""), start);
        let m = g.morphism_from_word(&ids).map_err(|e| parse_err(line, e.to_string()))?;
        out.push(m);
    }
    if let Some(extra) = obj.keys().find(|k| g.vertex(k).is_err()) {
        return Err(parse_err(line_of(text, &format!("\"{extra}\""), start), format!("block for unknown vertex `{extra}`")));
    }
    Ok(out)
}

fn names(g: &KGraph, m: &Morphism) -> Value {
    Value::Array(g.word_names(m.word()).into_iter().map(Value::String).collect())
}

/// The canonical document for a graph.
pub fn emit_graph(doc: &GraphDocument) -> String {
    let g = &doc.graph;
    let mut map = Map::new();
    map.insert("k".into(), Value::from(g.rank()));
    map.insert("vertices".into(), Value::Array(g.vertex_ids().map(|v| Value::from(g.vertex_name(v))).collect()));
    let edges = g
        .edge_ids()
        .map(|e| {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(g.edge_name(e)));
            m.insert("colour".into(), Value::from(g.colour(e)));
            m.insert("source".into(), Value::from(g.vertex_name(g.source(e))));
            m.insert("range".into(), Value::from(g.vertex_name(g.range(e))));
            Value::Object(m)
        })
        .collect();
    map.insert("edges".into(), Value::Array(edges));
    let squares = g
        .squares()
        .iter()
        .map(|sq| Value::Array(g.word_names(&[sq.f, sq.g, sq.g2, sq.f2]).into_iter().map(Value::String).collect()))
        .collect();
    map.insert("squares".into(), Value::Array(squares));
    if let Some(blocks) = &doc.blocks {
        let b = g.vertex_ids().zip(blocks).map(|(v, m)| (g.vertex_name(v).to_string(), names(g, m))).collect();
        map.insert("blocks".into(), Value::Object(b));
    }
    pretty(&Value::Object(map))
}

pub(crate) fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}

fn parse_value(group: &CoeffGroup, value: &Value, key: &str, line: Option<usize>) -> Result<GroupElem, CliError> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(parse_err(line, format!("value for `{key}` must be a number or a fraction string"))),
    };
    group.parse_elem(&text).map_err(|e| parse_err(line, format!("value for `{key}`: {e}")))
}

/// JSON form of a group element: integers for `Z` and `Z/n`, reduced fractions for `Q/Z`.
pub fn elem_value(x: &GroupElem) -> Value {
    match x {
        GroupElem::Circle(_) => Value::String(x.to_string()),
        _ => x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| Value::String(x.to_string())),
    }
}

/// Parses a cocycle document over `graph`. Tables must list every square (or edge) exactly once.
pub fn parse_cocycle(text: &str, graph: &Arc<KGraph>) -> Result<CocycleDocument, CliError> {
    let map = parse_json(text)?;
    check_keys(&map, &["coeff", "kind", "values"], text)?;
    let coeff = field(&map, "coeff")?.as_str().ok_or_else(|| parse_err(None, "`coeff` must be a string"))?;
    let group: CoeffGroup = coeff.parse().map_err(|e: kgraph::Error| parse_err(line_of(text, "\"coeff\"", 0), e.to_string()))?;
    let kind = match field(&map, "kind")?.as_str() {
        Some("cubical2") => CocycleKind::Cubical2,
        Some("cat-coboundary") => CocycleKind::CatCoboundary,
        Some("functor1") => CocycleKind::Functor1,
        other => return Err(parse_err(line_of(text, "\"kind\"", 0), format!("unknown cocycle kind {other:?}"))),
    };
    let values = field(&map, "values")?.as_object().ok_or_else(|| parse_err(None, "`values` must be an object"))?;
    let start = section_start(text, "values");
    let set = cubes(graph, kind.rank());
    let mut table = Vec::with_capacity(set.len());
    for cube in set.cubes() {
        let key = graph.describe(cube);
        let value = values.get(&key).ok_or_else(|| parse_err(None, format!("no value for `{key}`; tables must be total")))?;
        table.push(parse_value(&group, value, &key, line_of(text, &format!("\"{key}\""), start))?);
    }
    if values.len() != set.len() {
        let known: Vec<String> = set.cubes().iter().map(|c| graph.describe(c)).collect();
        let extra = values.keys().find(|k| !known.contains(k)).expect("more keys than cubes");
        return Err(parse_err(
            line_of(text, &format!("\"{extra}\""), start),
            format!("`{extra}` is not a {}", if kind.rank() == 2 { "square" } else { "edge" }),
        ));
    }
    let table = CubicalCochain::new(graph.clone(), kind.rank(), group, table)?;
    Ok(CocycleDocument { kind, table })
}

pub fn emit_cocycle(doc: &CocycleDocument) -> String {
    let g = doc.table.graph();
    let mut map = Map::new();
    map.insert("coeff".into(), Value::from(doc.group().to_string()));
    map.insert("kind".into(), Value::from(doc.kind.name()));
    let values = doc.table.cubes().cubes().iter().zip(doc.table.values()).map(|(c, v)| (g.describe(c), elem_value(v))).collect();
    map.insert("values".into(), Value::Object(values));
    pretty(&Value::Object(map))
}

/// Keyed by square or edge id.
pub fn cochain_value(table: &CubicalCochain) -> Value {
    let g = table.graph();
    Value::Object(table.cubes().cubes().iter().zip(table.values()).map(|(c, v)| (g.describe(c), elem_value(v))).collect())
}
