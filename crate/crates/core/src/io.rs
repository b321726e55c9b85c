//! Text formats: graph documents ("p thin" header, 0-based ids),
//! representation documents, ordering/partition token files, problem
//! instance files, and the JSON problem-spec document.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::nonbetween::{NonBetweennessError, NonBetweennessInstance};
use crate::proper::{NbBound, NeighborhoodBounds};
use crate::rep::{Mode, Ordering, Partition, RepError, ThinRepresentation};
use crate::spec::{
    combination_from_indices, combination_to_indices, Matrix, MatrixEntry, ProblemSpec, Sense,
    SetFamilyBound, UpperBound,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    NonBetweenness(#[from] NonBetweennessError),
    #[error("spec document: {0}")]
    Spec(String),
}

fn bad(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

/// A graph plus its optional vertex-name table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: Graph,
    pub names: Option<Vec<String>>,
}

/// Parses the "p thin n m" dialect: `e u v` edge lines, `v id name` name
/// lines, `#` comments, 0-based ids. Returns the document and any warnings
/// (duplicate edges are deduplicated with a warning).
pub fn parse_graph(text: &str) -> Result<(GraphDocument, Vec<String>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut names: Vec<(usize, String)> = Vec::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(bad(line_no, "second header line"));
                }
                if tokens.next() != Some("thin") {
                    return Err(bad(line_no, "expected header 'p thin <n> <m>'"));
                }
                let n = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad(line_no, "bad vertex count in header"))?;
                let m = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad(line_no, "bad edge count in header"))?;
                if tokens.next().is_some() {
                    return Err(bad(line_no, "trailing tokens after header"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| bad(line_no, "edge before header"))?;
                let u = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad(line_no, "bad edge endpoint"))?;
                let v = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad(line_no, "bad edge endpoint"))?;
                if tokens.next().is_some() {
                    return Err(bad(line_no, "trailing tokens after edge"));
                }
                if u >= n || v >= n {
                    return Err(bad(
                        line_no,
                        format!("edge ({u}, {v}) out of range for n = {n}"),
                    ));
                }
                if u == v {
                    return Err(bad(line_no, format!("loop edge at vertex {u}")));
                }
                if edges.contains(&(u.min(v), u.max(v))) {
                    warnings.push(format!("line {line_no}: duplicate edge ({u}, {v}) ignored"));
                } else {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            Some("v") => {
                let (n, _) = header.ok_or_else(|| bad(line_no, "name before header"))?;
                let id = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad(line_no, "bad vertex id in name line"))?;
                if id >= n {
                    return Err(bad(line_no, format!("vertex id {id} out of range")));
                }
                let name = tokens.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(bad(line_no, "empty vertex name"));
                }
                names.push((id, name));
            }
            Some(other) => {
                return Err(bad(line_no, format!("unknown line type {other:?}")));
            }
            None => unreachable!("empty lines are skipped"),
        }
    }
    let (n, m) = header.ok_or_else(|| bad(0, "missing 'p thin' header"))?;
    if edges.len() != m {
        warnings.push(format!(
            "header announces {m} edges, found {} distinct",
            edges.len()
        ));
    }
    let graph = Graph::new(n, &edges)?;
    let names = if names.is_empty() {
        None
    } else {
        let mut table = vec![String::new(); n];
        for (id, name) in names {
            table[id] = name;
        }
        Some(table)
    };
    Ok((GraphDocument { graph, names }, warnings))
}

pub fn write_graph(graph: &Graph, names: Option<&[String]>) -> String {
    let mut out = format!("p thin {} {}\n", graph.n(), graph.m());
    for (u, v) in graph.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    if let Some(names) = names {
        for (id, name) in names.iter().enumerate() {
            if !name.is_empty() {
                out.push_str(&format!("v {id} {name}\n"));
            }
        }
    }
    out
}

/// `mode weak|strong`, `order <ids...>`, `classes <class per vertex>`.
pub fn parse_representation(text: &str, g: &Graph) -> Result<ThinRepresentation, ParseError> {
    let mut mode: Option<Mode> = None;
    let mut order: Option<Vec<usize>> = None;
    let mut classes: Option<Vec<usize>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("mode") => {
                mode = Some(match tokens.next() {
                    Some("weak") => Mode::Weak,
                    Some("strong") => Mode::Strong,
                    _ => return Err(bad(line_no, "mode must be 'weak' or 'strong'")),
                });
            }
            Some("order") => {
                order = Some(parse_usize_tokens(tokens, line_no)?);
            }
            Some("classes") => {
                classes = Some(parse_usize_tokens(tokens, line_no)?);
            }
            Some(other) => return Err(bad(line_no, format!("unknown line type {other:?}"))),
            None => unreachable!(),
        }
    }
    let mode = mode.ok_or_else(|| bad(0, "missing 'mode' line"))?;
    let order = order.ok_or_else(|| bad(0, "missing 'order' line"))?;
    let classes = classes.ok_or_else(|| bad(0, "missing 'classes' line"))?;
    let ordering = Ordering::new(order)?;
    let partition = Partition::new(classes)?;
    Ok(ThinRepresentation::new(g, ordering, partition, mode)?)
}

pub fn write_representation(rep: &ThinRepresentation) -> String {
    let mode = match rep.mode() {
        Mode::Weak => "weak",
        Mode::Strong => "strong",
    };
    format!(
        "mode {}\norder {}\nclasses {}\n",
        mode,
        join_usize(rep.ordering().sequence()),
        join_usize(rep.partition().assignment()),
    )
}

fn parse_usize_tokens<'a>(
    tokens: impl Iterator<Item = &'a str>,
    line_no: usize,
) -> Result<Vec<usize>, ParseError> {
    tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| bad(line_no, format!("bad number {t:?}")))
        })
        .collect()
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whitespace-separated vertex ids; an optional leading `order` keyword and
/// `#` comments are allowed.
pub fn parse_ordering(text: &str, n: usize) -> Result<Ordering, ParseError> {
    let values = parse_bare_numbers(text, "order")?;
    if values.len() != n {
        return Err(bad(0, format!("expected {n} ids, found {}", values.len())));
    }
    Ok(Ordering::new(values)?)
}

/// Whitespace-separated class ids, vertex-indexed; optional leading
/// `classes` keyword.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition, ParseError> {
    let values = parse_bare_numbers(text, "classes")?;
    if values.len() != n {
        return Err(bad(
            0,
            format!("expected {n} class ids, found {}", values.len()),
        ));
    }
    Ok(Partition::new(values)?)
}

fn parse_bare_numbers(text: &str, keyword: &str) -> Result<Vec<usize>, ParseError> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for (pos, token) in line.split_whitespace().enumerate() {
            if pos == 0 && token == keyword {
                continue;
            }
            values.push(
                token
                    .parse::<usize>()
                    .map_err(|_| bad(idx + 1, format!("bad number {token:?}")))?,
            );
        }
    }
    Ok(values)
}

/// `elements <names...>` then one `triple x y z` line per ordered triple.
pub fn parse_nb_instance(text: &str) -> Result<NonBetweennessInstance, ParseError> {
    let mut elements: Option<Vec<String>> = None;
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("elements") => {
                elements = Some(tokens.map(str::to_string).collect());
            }
            Some("triple") => {
                let mut take = || {
                    tokens
                        .next()
                        .map(str::to_string)
                        .ok_or_else(|| bad(line_no, "triple needs three elements"))
                };
                triples.push((take()?, take()?, take()?));
            }
            Some(other) => return Err(bad(line_no, format!("unknown line type {other:?}"))),
            None => unreachable!(),
        }
    }
    let elements = elements.ok_or_else(|| bad(0, "missing 'elements' line"))?;
    Ok(NonBetweennessInstance::new(elements, &triples)?)
}

pub fn write_nb_instance(inst: &NonBetweennessInstance) -> String {
    let mut out = format!("elements {}\n", inst.elements().join(" "));
    for t in inst.triples() {
        out.push_str(&format!(
            "triple {} {} {}\n",
            inst.elements()[t[0]],
            inst.elements()[t[1]],
            inst.elements()[t[2]]
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct BoundDoc {
    i: usize,
    #[serde(rename = "J")]
    sets: Vec<usize>,
    l: u64,
    u: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct NbBoundDoc {
    i: usize,
    j: usize,
    kind: String,
    l: u64,
    u: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct SpecDoc {
    r: usize,
    sense: String,
    #[serde(default)]
    weights: Vec<Vec<u64>>,
    #[serde(default)]
    c: Vec<Vec<u64>>,
    #[serde(default)]
    b: Vec<Vec<u64>>,
    #[serde(default)]
    q: u64,
    lists: Vec<Vec<Vec<usize>>>,
    matrix: Vec<Vec<serde_json::Value>>,
    #[serde(default, rename = "capBounds")]
    cap_bounds: Vec<BoundDoc>,
    #[serde(default, rename = "cupBounds")]
    cup_bounds: Vec<BoundDoc>,
    #[serde(default, rename = "neighborhoodBounds")]
    neighborhood_bounds: Vec<NbBoundDoc>,
}

fn upper_from_value(value: &serde_json::Value) -> Result<UpperBound, ParseError> {
    match value {
        serde_json::Value::String(s) if s == "inf" => Ok(UpperBound::Unbounded),
        serde_json::Value::Number(n) => n
            .as_u64()
            .map(UpperBound::Finite)
            .ok_or_else(|| ParseError::Spec("upper bound must be a nonnegative integer".into())),
        _ => Err(ParseError::Spec(
            "upper bound must be a number or \"inf\"".into(),
        )),
    }
}

fn upper_to_value(upper: UpperBound) -> serde_json::Value {
    match upper {
        UpperBound::Finite(u) => serde_json::Value::from(u),
        UpperBound::Unbounded => serde_json::Value::from("inf"),
    }
}

fn bound_from_doc(doc: &BoundDoc) -> Result<SetFamilyBound, ParseError> {
    Ok(SetFamilyBound {
        weight: doc.i,
        sets: combination_from_indices(&doc.sets),
        lower: doc.l,
        upper: upper_from_value(&doc.u)?,
    })
}

fn bound_to_doc(bound: &SetFamilyBound) -> BoundDoc {
    BoundDoc {
        i: bound.weight,
        sets: combination_to_indices(bound.sets),
        l: bound.lower,
        u: upper_to_value(bound.upper),
    }
}

/// Parses the JSON problem document into a spec plus optional neighborhood
/// bounds. Set and weight indices are 0-based, matrix entries are 0, 1 or
/// "*", upper bounds take "inf".
pub fn parse_spec(text: &str) -> Result<(ProblemSpec, Option<NeighborhoodBounds>), ParseError> {
    let doc: SpecDoc =
        serde_json::from_str(text).map_err(|e| ParseError::Spec(e.to_string()))?;
    let sense = match doc.sense.as_str() {
        "minimize" => Sense::Minimize,
        "maximize" => Sense::Maximize,
        other => {
            return Err(ParseError::Spec(format!(
                "sense must be minimize or maximize, got {other:?}"
            )))
        }
    };
    let mut rows = Vec::with_capacity(doc.matrix.len());
    for row in &doc.matrix {
        let mut entries = Vec::with_capacity(row.len());
        for cell in row {
            let entry = match cell {
                serde_json::Value::Number(n) if n.as_u64() == Some(0) => MatrixEntry::Zero,
                serde_json::Value::Number(n) if n.as_u64() == Some(1) => MatrixEntry::One,
                serde_json::Value::String(s) if s == "*" => MatrixEntry::Any,
                other => {
                    return Err(ParseError::Spec(format!(
                        "matrix entries are 0, 1 or \"*\", got {other}"
                    )))
                }
            };
            entries.push(entry);
        }
        rows.push(entries);
    }
    let matrix = Matrix::from_rows(rows).map_err(|e| ParseError::Spec(e.to_string()))?;
    let lists = doc
        .lists
        .iter()
        .map(|per_vertex| {
            per_vertex
                .iter()
                .map(|combo| combination_from_indices(combo))
                .collect()
        })
        .collect();
    let spec = ProblemSpec {
        num_sets: doc.r,
        sense,
        objective_weights: doc.weights,
        coefficients: doc.c,
        bounded_weights: doc.b,
        weight_cap: doc.q,
        lists,
        matrix,
        cap_bounds: doc
            .cap_bounds
            .iter()
            .map(bound_from_doc)
            .collect::<Result<_, _>>()?,
        cup_bounds: doc
            .cup_bounds
            .iter()
            .map(bound_from_doc)
            .collect::<Result<_, _>>()?,
    };
    let neighborhood = if doc.neighborhood_bounds.is_empty() {
        None
    } else {
        let mut nb = NeighborhoodBounds::none(doc.r);
        for entry in &doc.neighborhood_bounds {
            if entry.i >= doc.r || entry.j >= doc.r {
                return Err(ParseError::Spec(format!(
                    "neighborhood bound indices ({}, {}) out of range",
                    entry.i, entry.j
                )));
            }
            if entry.l > 1 {
                return Err(ParseError::Spec(
                    "neighborhood lower bounds are 0 or 1".into(),
                ));
            }
            let upper = upper_from_value(&entry.u)?;
            let upper_one = match upper {
                UpperBound::Finite(1) => true,
                UpperBound::Unbounded => false,
                UpperBound::Finite(other) => {
                    return Err(ParseError::Spec(format!(
                        "neighborhood upper bounds are 1 or \"inf\", got {other}"
                    )))
                }
            };
            let bound = NbBound {
                lower_one: entry.l == 1,
                upper_one,
            };
            match entry.kind.as_str() {
                "open" => nb.set_open(entry.i, entry.j, bound),
                "closed" => nb.set_closed(entry.i, entry.j, bound),
                other => {
                    return Err(ParseError::Spec(format!(
                        "neighborhood bound kind is open or closed, got {other:?}"
                    )))
                }
            }
        }
        Some(nb)
    };
    Ok((spec, neighborhood))
}

pub fn write_spec(spec: &ProblemSpec, nb: Option<&NeighborhoodBounds>) -> String {
    let matrix = (0..spec.matrix.size())
        .map(|i| {
            (0..spec.matrix.size())
                .map(|j| match spec.matrix.get(i, j) {
                    MatrixEntry::Zero => serde_json::Value::from(0),
                    MatrixEntry::One => serde_json::Value::from(1),
                    MatrixEntry::Any => serde_json::Value::from("*"),
                })
                .collect()
        })
        .collect();
    let mut neighborhood_bounds = Vec::new();
    if let Some(nb) = nb {
        for i in 0..nb.size() {
            for j in 0..nb.size() {
                for (kind, bound) in [("open", nb.open(i, j)), ("closed", nb.closed(i, j))] {
                    if bound.is_trivial() {
                        continue;
                    }
                    neighborhood_bounds.push(NbBoundDoc {
                        i,
                        j,
                        kind: kind.to_string(),
                        l: u64::from(bound.lower_one),
                        u: if bound.upper_one {
                            serde_json::Value::from(1)
                        } else {
                            serde_json::Value::from("inf")
                        },
                    });
                }
            }
        }
    }
    let doc = SpecDoc {
        r: spec.num_sets,
        sense: match spec.sense {
            Sense::Minimize => "minimize".to_string(),
            Sense::Maximize => "maximize".to_string(),
        },
        weights: spec.objective_weights.clone(),
        c: spec.coefficients.clone(),
        b: spec.bounded_weights.clone(),
        q: spec.weight_cap,
        lists: spec
            .lists
            .iter()
            .map(|per_vertex| per_vertex.iter().map(|&c| combination_to_indices(c)).collect())
            .collect(),
        matrix,
        cap_bounds: spec.cap_bounds.iter().map(bound_to_doc).collect(),
        cup_bounds: spec.cup_bounds.iter().map(bound_to_doc).collect(),
        neighborhood_bounds,
    };
    serde_json::to_string_pretty(&doc).expect("spec document serializes")
}
