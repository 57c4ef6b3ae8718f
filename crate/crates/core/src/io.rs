//! JSON documents for the core types.
//!
//! Instance: `{"agents": [{"name"?, "weight"}], "items": count | [names], "utilities": [[..]]}`
//! with every number either an integer or a `"p/q"` string.
//! Allocation: `{"bundles": [[item, ..], ..]}`. Sequence: `{"turns": [agent, ..]}`.
//! All indices in files are 1-based.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, PickingSequence};
use crate::rational::{self, Rational};

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(name, "missing required field"))
}

fn as_object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::parse(what, "expected a JSON object"))
}

fn as_array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::parse(what, "expected a JSON array"))
}

fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse("document", e.to_string()))
}

pub fn instance_from_value(doc: &Value) -> Result<Instance> {
    let obj = as_object(doc, "document")?;
    let agents = as_array(field(obj, "agents")?, "agents")?;
    let mut weights = Vec::with_capacity(agents.len());
    let mut agent_names = Vec::with_capacity(agents.len());
    for (i, agent) in agents.iter().enumerate() {
        let path = format!("agents[{}]", i + 1);
        let agent = as_object(agent, &path)?;
        let weight_path = format!("{path}.weight");
        let weight = agent
            .get("weight")
            .ok_or_else(|| Error::parse(&weight_path, "missing required field"))?;
        weights.push(rational::from_json(weight, &weight_path)?);
        agent_names.push(match agent.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::parse(format!("{path}.name"), "expected a string")),
        });
    }
    let (item_count, item_names) = match field(obj, "items")? {
        Value::Number(n) => {
            let count = n
                .as_u64()
                .ok_or_else(|| Error::parse("items", "item count must be a non-negative integer"))?;
            (count as usize, None)
        }
        Value::Array(names) => {
            let names = names
                .iter()
                .enumerate()
                .map(|(g, v)| match v {
                    Value::String(s) => Ok(s.clone()),
                    _ => Err(Error::parse(format!("items[{}]", g + 1), "expected a string")),
                })
                .collect::<Result<Vec<_>>>()?;
            (names.len(), Some(names))
        }
        _ => return Err(Error::parse("items", "expected an item count or a list of names")),
    };
    let rows = as_array(field(obj, "utilities")?, "utilities")?;
    let mut utilities = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let path = format!("utilities[{}]", i + 1);
        let row = as_array(row, &path)?;
        utilities.push(
            row.iter()
                .enumerate()
                .map(|(g, u)| rational::from_json(u, &format!("{path}[{}]", g + 1)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let named = agent_names.iter().any(Option::is_some) || item_names.is_some();
    let instance = Instance::new(weights, utilities, item_count)?;
    if named {
        instance.with_names(agent_names, item_names)
    } else {
        Ok(instance)
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    instance_from_value(&parse_document(text)?)
}

pub fn instance_to_value(instance: &Instance) -> Value {
    let agents: Vec<Value> = (0..instance.n())
        .map(|i| {
            let mut agent = Map::new();
            if let Some(name) = &instance.agent_names()[i] {
                agent.insert("name".into(), Value::String(name.clone()));
            }
            agent.insert("weight".into(), rational::to_json(instance.weight(i)));
            Value::Object(agent)
        })
        .collect();
    let items = match instance.item_names() {
        Some(names) => json!(names),
        None => json!(instance.m()),
    };
    let utilities: Vec<Value> = instance
        .utilities()
        .iter()
        .map(|row| Value::Array(row.iter().map(rational::to_json).collect()))
        .collect();
    json!({ "agents": agents, "items": items, "utilities": utilities })
}

/// Canonical text form: sorted keys, two-space indentation, trailing newline.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&instance_to_value(instance)).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn index_list(value: &Value, path: &str) -> Result<Vec<usize>> {
    as_array(value, path)?
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.as_u64()
                .filter(|&x| x >= 1)
                .map(|x| x as usize - 1)
                .ok_or_else(|| Error::parse(format!("{path}[{}]", k + 1), "expected a 1-based index"))
        })
        .collect()
}

/// Reads `{"bundles": [[..]]}`; validated as a partition of `item_count` items.
pub fn parse_allocation(text: &str, item_count: usize) -> Result<Allocation> {
    let doc = parse_document(text)?;
    let obj = as_object(&doc, "document")?;
    let bundles = as_array(field(obj, "bundles")?, "bundles")?
        .iter()
        .enumerate()
        .map(|(i, b)| index_list(b, &format!("bundles[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Allocation::new(bundles, item_count).map_err(|e| Error::parse("bundles", e.to_string()))
}

pub fn allocation_to_value(allocation: &Allocation) -> Value {
    let bundles: Vec<Vec<usize>> = allocation
        .bundles()
        .iter()
        .map(|b| b.iter().map(|g| g + 1).collect())
        .collect();
    json!({ "bundles": bundles })
}

/// Reads `{"turns": [..]}` or a bare JSON array of 1-based agents.
pub fn parse_sequence(text: &str) -> Result<PickingSequence> {
    let doc = parse_document(text)?;
    let turns = match &doc {
        Value::Array(_) => index_list(&doc, "turns")?,
        Value::Object(obj) => index_list(field(obj, "turns")?, "turns")?,
        _ => return Err(Error::parse("document", "expected {\"turns\": [..]}")),
    };
    Ok(PickingSequence::new(turns))
}

pub fn sequence_to_value(sequence: &PickingSequence) -> Value {
    json!({ "turns": sequence.one_based() })
}

/// Parses a comma- or whitespace-separated list of rationals, e.g. `1,2,1/3`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| rational::parse_rational(s.trim_matches('"')))
        .collect()
}
