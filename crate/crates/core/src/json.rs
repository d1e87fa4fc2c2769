//! JSON codecs for the engine's interchange formats.
//!
//! Operators: `{vars, top, floor | "exact", components: {degree: symbol-text}}`.
//! Groups: `{elements, table}` (table entries are indices or labels) or a
//! name `"Z/n" | "S3" | "D4" | "1"`. Crossed modules: `{g1, g0, d, action}`
//! with `action` an explicit map, `"trivial"`, or `"conjugation"`. Covers:
//! `{opens, doubles, triples}`. Descent data: `{g, h}` keyed by open and
//! `"i,j"` doubles. Round trips are exact: parsing our own output
//! reconstructs the value, and re-serializing reproduces the bytes.

use crate::crossed::CrossedModule;
use crate::descent::{Classification, Cover, DescentDatum};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::operator::{Floor, Operator, TruncationContext};
use crate::star::StarCertificate;
use crate::symbol::HomogeneousSymbol;
use crate::text;
use serde_json::{json, Map, Value};

fn bad(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn as_obj<'v>(v: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn get<'v>(obj: &'v Map<String, Value>, key: &str, what: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| bad(format!("{what} is missing field '{key}'")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("{what} must be an integer")))
}

pub fn operator_to_json(op: &Operator) -> Value {
    let mut components = Map::new();
    for (d, s) in op.components() {
        components.insert(d.to_string(), Value::String(s.to_string()));
    }
    let floor = match op.floor() {
        Floor::Exact => Value::String("exact".into()),
        Floor::At(f) => Value::from(f),
    };
    json!({
        "vars": op.vars(),
        "top": op.top(),
        "floor": floor,
        "components": Value::Object(components),
    })
}

/// Reads an operator document. The truncation default floor is evaluation
/// configuration rather than data, so the caller supplies it.
pub fn operator_from_json(v: &Value, default_floor: i64) -> Result<Operator> {
    let obj = as_obj(v, "operator")?;
    let vars = as_usize(get(obj, "vars", "operator")?, "vars")?;
    if vars == 0 {
        return Err(bad("operator needs at least one variable"));
    }
    let floor = match get(obj, "floor", "operator")? {
        Value::String(s) if s == "exact" => Floor::Exact,
        v => Floor::At(as_i64(v, "floor")?),
    };
    let comps = as_obj(get(obj, "components", "operator")?, "components")?;
    let mut parts = Vec::new();
    for (key, val) in comps {
        let degree: i64 =
            key.parse().map_err(|_| bad(format!("component key '{key}' is not a degree")))?;
        let txt = val
            .as_str()
            .ok_or_else(|| bad(format!("component {key} must be symbol text")))?;
        let sym = HomogeneousSymbol::from_terms(vars, degree, text::parse_terms(txt, vars)?)?;
        parts.push(sym);
    }
    let ctx = TruncationContext::new(vars, default_floor);
    let op = Operator::new(ctx, floor, parts)?;
    // `top` is redundant but validated for honesty.
    let top = as_i64(get(obj, "top", "operator")?, "top")?;
    if !op.components().is_empty() && op.top() > top {
        return Err(bad(format!("component above declared top {top}")));
    }
    Ok(op)
}

pub fn certificate_to_json(cert: &StarCertificate) -> Value {
    let mut obj = Map::new();
    obj.insert("ok".into(), Value::Bool(cert.ok));
    if let Some(d) = cert.first_defect_degree {
        obj.insert("first_defect_degree".into(), Value::from(d));
    }
    if let Some(s) = &cert.defect_symbol {
        obj.insert("defect_symbol".into(), Value::String(s.to_string()));
    }
    Value::Object(obj)
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({
        "elements": g.labels(),
        "table": g.table(),
    })
}

/// Accepts `"Z/n" | "S3" | "D4" | "1"` or `{elements, table}`; table entries
/// may be element indices or labels.
pub fn group_from_json(v: &Value) -> Result<FiniteGroup> {
    if let Some(name) = v.as_str() {
        return FiniteGroup::named(name);
    }
    let obj = as_obj(v, "group")?;
    let elements: Vec<String> = get(obj, "elements", "group")?
        .as_array()
        .ok_or_else(|| bad("elements must be an array"))?
        .iter()
        .map(|e| e.as_str().map(str::to_string).ok_or_else(|| bad("element labels must be strings")))
        .collect::<Result<_>>()?;
    let rows = get(obj, "table", "group")?
        .as_array()
        .ok_or_else(|| bad("table must be an array of rows"))?;
    let idx = |cell: &Value| -> Result<usize> {
        match cell {
            Value::Number(_) => as_usize(cell, "table entry"),
            Value::String(s) => elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| bad(format!("unknown element label '{s}' in table"))),
            _ => Err(bad("table entries must be indices or labels")),
        }
    };
    let table: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("table rows must be arrays"))?
                .iter()
                .map(idx)
                .collect()
        })
        .collect::<Result<_>>()?;
    FiniteGroup::new(elements, table)
}

pub fn crossed_module_to_json(cm: &CrossedModule) -> Value {
    let g1 = cm.g_minus1();
    let g0 = cm.g_zero();
    let mut d = Map::new();
    for h in 0..g1.size() {
        d.insert(g1.label(h).to_string(), Value::String(g0.label(cm.d(h)).to_string()));
    }
    let mut action = Map::new();
    for g in 0..g0.size() {
        let mut row = Map::new();
        for h in 0..g1.size() {
            row.insert(g1.label(h).to_string(), Value::String(g1.label(cm.act(g, h)).to_string()));
        }
        action.insert(g0.label(g).to_string(), Value::Object(row));
    }
    json!({
        "g1": group_to_json(g1),
        "g0": group_to_json(g0),
        "d": Value::Object(d),
        "action": Value::Object(action),
    })
}

/// Reads `{g1, g0, d, action}`. `d` maps g1 labels to g0 labels; `action` is
/// `"trivial"`, `"conjugation"` (g1 and g0 must then agree), or a nested map
/// of labels.
pub fn crossed_module_from_json(v: &Value) -> Result<CrossedModule> {
    let obj = as_obj(v, "crossed module")?;
    let g1 = group_from_json(get(obj, "g1", "crossed module")?)?;
    let g0 = group_from_json(get(obj, "g0", "crossed module")?)?;
    let d_obj = as_obj(get(obj, "d", "crossed module")?, "d")?;
    let mut d = vec![usize::MAX; g1.size()];
    for (from, to) in d_obj {
        let h = g1
            .index_of(from)
            .ok_or_else(|| bad(format!("d maps unknown g1 element '{from}'")))?;
        let to = to.as_str().ok_or_else(|| bad("d values must be labels"))?;
        d[h] = g0.index_of(to).ok_or_else(|| bad(format!("d hits unknown g0 element '{to}'")))?;
    }
    if d.contains(&usize::MAX) {
        return Err(bad("d must be defined on every element of g1"));
    }
    match get(obj, "action", "crossed module")? {
        Value::String(s) if s == "trivial" => {
            let action = vec![(0..g1.size()).collect::<Vec<_>>(); g0.size()];
            CrossedModule::new(g1, g0, d, action)
        }
        Value::String(s) if s == "conjugation" => {
            if g1 != g0 {
                return Err(bad("conjugation action needs g1 and g0 to be the same group"));
            }
            let action = (0..g0.size())
                .map(|g| (0..g1.size()).map(|h| g1.conj(g, h)).collect())
                .collect();
            CrossedModule::new(g1, g0, d, action)
        }
        v => {
            let action_obj = as_obj(v, "action")?;
            let mut action = vec![vec![usize::MAX; g1.size()]; g0.size()];
            for (gl, row) in action_obj {
                let g = g0
                    .index_of(gl)
                    .ok_or_else(|| bad(format!("action row for unknown g0 element '{gl}'")))?;
                let row = as_obj(row, "action row")?;
                for (hl, img) in row {
                    let h = g1
                        .index_of(hl)
                        .ok_or_else(|| bad(format!("action on unknown g1 element '{hl}'")))?;
                    let img = img.as_str().ok_or_else(|| bad("action values must be labels"))?;
                    action[g][h] = g1
                        .index_of(img)
                        .ok_or_else(|| bad(format!("action hits unknown g1 element '{img}'")))?;
                }
            }
            if action.iter().any(|row| row.contains(&usize::MAX)) {
                return Err(bad("action must be total"));
            }
            CrossedModule::new(g1, g0, d, action)
        }
    }
}

pub fn cover_to_json(cover: &Cover) -> Value {
    json!({
        "opens": cover.opens(),
        "doubles": cover.doubles().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "triples": cover.triples().iter().map(|&(a, b, c)| vec![a, b, c]).collect::<Vec<_>>(),
    })
}

pub fn cover_from_json(v: &Value) -> Result<Cover> {
    let obj = as_obj(v, "cover")?;
    let opens: Vec<usize> = get(obj, "opens", "cover")?
        .as_array()
        .ok_or_else(|| bad("opens must be an array"))?
        .iter()
        .map(|x| as_usize(x, "open"))
        .collect::<Result<_>>()?;
    let pair = |v: &Value| -> Result<(usize, usize)> {
        let arr = v.as_array().ok_or_else(|| bad("doubles must be pairs"))?;
        if arr.len() != 2 {
            return Err(bad("doubles must be pairs"));
        }
        Ok((as_usize(&arr[0], "double")?, as_usize(&arr[1], "double")?))
    };
    let triple = |v: &Value| -> Result<(usize, usize, usize)> {
        let arr = v.as_array().ok_or_else(|| bad("triples must have three entries"))?;
        if arr.len() != 3 {
            return Err(bad("triples must have three entries"));
        }
        Ok((
            as_usize(&arr[0], "triple")?,
            as_usize(&arr[1], "triple")?,
            as_usize(&arr[2], "triple")?,
        ))
    };
    let doubles = get(obj, "doubles", "cover")?
        .as_array()
        .ok_or_else(|| bad("doubles must be an array"))?
        .iter()
        .map(pair)
        .collect::<Result<_>>()?;
    let triples = match obj.get("triples") {
        None => Vec::new(),
        Some(v) => v
            .as_array()
            .ok_or_else(|| bad("triples must be an array"))?
            .iter()
            .map(triple)
            .collect::<Result<_>>()?,
    };
    Cover::new(opens, doubles, triples)
}

pub fn descent_datum_to_json(cover: &Cover, cm: &CrossedModule, d: &DescentDatum) -> Value {
    let mut g = Map::new();
    for (pos, &open) in cover.opens().iter().enumerate() {
        g.insert(open.to_string(), Value::String(cm.g_zero().label(d.g[pos]).to_string()));
    }
    let mut h = Map::new();
    for (pos, &(a, b)) in cover.doubles().iter().enumerate() {
        h.insert(format!("{a},{b}"), Value::String(cm.g_minus1().label(d.h[pos]).to_string()));
    }
    json!({ "g": Value::Object(g), "h": Value::Object(h) })
}

pub fn classification_to_json(
    cover: &Cover,
    cm: &CrossedModule,
    c: &Classification,
    include_reps: bool,
) -> Value {
    let mut obj = Map::new();
    obj.insert("classes".into(), Value::from(c.class_count));
    obj.insert("pointed_class_index".into(), Value::from(c.pointed_class_index));
    obj.insert("class_sizes".into(), json!(c.class_sizes));
    obj.insert("automorphism_counts".into(), json!(c.automorphism_counts));
    obj.insert("search_size".into(), Value::String(c.search_size.to_string()));
    if include_reps {
        obj.insert(
            "representatives".into(),
            Value::Array(
                c.representatives.iter().map(|d| descent_datum_to_json(cover, cm, d)).collect(),
            ),
        );
    }
    Value::Object(obj)
}
