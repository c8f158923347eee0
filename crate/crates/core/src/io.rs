//! JSON instance files.
//!
//! ```json
//! {"n": 4, "edges": [[0, 1], [1, 2, 3], [2, 3, "1/2"]], "root": 0, "groups": [[3]]}
//! ```
//!
//! Edge costs may be integers, decimals or `"p/q"` strings and default to 1.
//! Unknown fields are rejected.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Cost, Graph, GstInstance, KTreeInstance, NodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Option<Cost>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<NodeId>,
    #[serde(default)]
    pub groups: Vec<Vec<NodeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<Vec<NodeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_threshold: Option<usize>,
}

fn parse_cost_str(s: &str) -> Option<Cost> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Cost::new(p, q));
    }
    let (int, frac) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if frac.len() > 15 || s.contains(['e', 'E']) {
        return None;
    }
    let negative = int.starts_with('-');
    let digits: i64 = format!("{}{}", int.trim_start_matches('-'), frac).parse().ok()?;
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let c = Cost::new(digits, denom);
    Some(if negative { -c } else { c })
}

fn cost_from_json(value: &serde_json::Value) -> Option<Cost> {
    match value {
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Some(Cost::from_integer(i))
            } else {
                parse_cost_str(&num.as_f64()?.to_string())
            }
        }
        serde_json::Value::String(s) => parse_cost_str(s),
        _ => None,
    }
}

impl<'de> Deserialize<'de> for EdgeSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(deserializer)?;
        if raw.len() != 2 && raw.len() != 3 {
            return Err(de::Error::custom("edge must be [u, v] or [u, v, cost]"));
        }
        let node = |v: &serde_json::Value| {
            v.as_u64().map(|x| x as usize).ok_or_else(|| de::Error::custom("edge endpoint must be a nonnegative integer"))
        };
        let u = node(&raw[0])?;
        let v = node(&raw[1])?;
        let cost = match raw.get(2) {
            Some(c) => Some(cost_from_json(c).ok_or_else(|| de::Error::custom(format!("bad edge cost {c}")))?),
            None => None,
        };
        Ok(EdgeSpec { u, v, cost })
    }
}

impl Serialize for EdgeSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = if self.cost.is_some() { 3 } else { 2 };
        let mut seq = serializer.serialize_seq(Some(len))?;
        seq.serialize_element(&self.u)?;
        seq.serialize_element(&self.v)?;
        if let Some(c) = &self.cost {
            if c.is_integer() {
                seq.serialize_element(&c.to_integer())?;
            } else {
                seq.serialize_element(&format!("{}/{}", c.numer(), c.denom()))?;
            }
        }
        seq.end()
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance file serializes")
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(
            self.n,
            self.edges.iter().map(|e| (e.u, e.v, e.cost.unwrap_or_else(|| Cost::from_integer(1)))),
        )
    }

    pub fn to_gst(&self) -> Result<GstInstance> {
        let mut inst = GstInstance::new(self.graph()?, self.groups.clone());
        inst.root = self.root;
        inst.bounds = self.bounds.clone();
        if let Some(q) = self.cover_threshold {
            inst.cover_threshold = q;
        }
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_ktree(&self) -> Result<KTreeInstance> {
        let terminals = self
            .terminals
            .clone()
            .ok_or_else(|| Error::InvalidParameter("k-tree instance needs \"terminals\"".into()))?;
        let k = self.k.ok_or_else(|| Error::InvalidParameter("k-tree instance needs \"k\"".into()))?;
        let inst = KTreeInstance::new(self.graph()?, terminals, k);
        inst.validate()?;
        Ok(inst)
    }

    fn edges_of(graph: &Graph) -> Vec<EdgeSpec> {
        graph
            .edges()
            .iter()
            .map(|e| EdgeSpec { u: e.u, v: e.v, cost: (e.cost != Cost::from_integer(1)).then_some(e.cost) })
            .collect()
    }

    pub fn from_gst(inst: &GstInstance) -> Self {
        InstanceFile {
            n: inst.graph.node_count(),
            edges: Self::edges_of(&inst.graph),
            root: inst.root,
            groups: inst.groups.clone(),
            bounds: inst.bounds.clone(),
            terminals: None,
            k: None,
            cover_threshold: (inst.cover_threshold != inst.groups.len()).then_some(inst.cover_threshold),
        }
    }

    pub fn from_ktree(inst: &KTreeInstance) -> Self {
        InstanceFile {
            n: inst.graph.node_count(),
            edges: Self::edges_of(&inst.graph),
            root: None,
            groups: Vec::new(),
            bounds: None,
            terminals: Some(inst.terminals.clone()),
            k: Some(inst.k),
            cover_threshold: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_costs_in_every_form() {
        let f = InstanceFile::parse(r#"{"n":4,"edges":[[0,1],[1,2,3],[2,3,"1/2"],[0,3,0.25]],"groups":[[3]]}"#).unwrap();
        let g = f.graph().unwrap();
        let cost = |u, v| g.edge(g.edge_id(u, v).unwrap()).cost;
        assert_eq!(cost(0, 1), Cost::from_integer(1));
        assert_eq!(cost(1, 2), Cost::from_integer(3));
        assert_eq!(cost(2, 3), Cost::new(1, 2));
        assert_eq!(cost(0, 3), Cost::new(1, 4));
    }

    #[test]
    fn rejects_unknown_fields() {
        assert!(InstanceFile::parse(r#"{"n":2,"edges":[[0,1]],"groups":[[1]],"colour":3}"#).is_err());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(InstanceFile::parse(r#"{"n":2,"edges":[[0]],"groups":[[1]]}"#).is_err());
        assert!(InstanceFile::parse(r#"{"n":2,"edges":[[0,1,"x"]],"groups":[[1]]}"#).is_err());
    }

    #[test]
    fn gst_round_trip_is_canonical() {
        let text = r#"{"n":3,"edges":[[1,2,"3/2"],[0,1]],"root":0,"groups":[[2,1,2]]}"#;
        let inst = InstanceFile::parse(text).unwrap().to_gst().unwrap();
        assert_eq!(inst.groups, vec![vec![1, 2]]);
        let out = InstanceFile::from_gst(&inst).to_json();
        assert_eq!(out, r#"{"n":3,"edges":[[0,1],[1,2,"3/2"]],"root":0,"groups":[[1,2]]}"#);
        let again = InstanceFile::parse(&out).unwrap().to_gst().unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn validation_errors_surface() {
        let f = InstanceFile::parse(r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"groups":[[9]]}"#).unwrap();
        let err = f.to_gst().unwrap_err();
        assert!(err.to_string().contains("node out of range"));
        let f = InstanceFile::parse(r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"terminals":[0,1,2],"k":5}"#).unwrap();
        assert!(f.to_ktree().unwrap_err().to_string().contains("k exceeds terminal count"));
    }
}
