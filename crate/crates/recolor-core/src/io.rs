//! JSON interchange formats.
//!
//! Every document carries a `"schema"` field naming its format and version so
//! consumers can reject mismatched files. Formats:
//!
//! * instance: `{"schema": "instance/1", "n": 5, "edges": [[0,1], ...],
//!   "lists": {"0": [1,2,3], ...}}` — `lists` optional;
//! * colouring: `{"schema": "colouring/1", "colours": {"0": 3, ...}}`;
//! * plan: `{"schema": "plan/1", "steps": [{"vertex": 0, "colour": 2}, ...],
//!   "trace": [{"lemma": "key-lemma", "vertices": [0,1]}, ...]}`;
//! * summary: `{"schema": "summary/1", "total": ..., "frozen": ...,
//!   "components": [{"size": ..., "diameter": ...}, ...]}`;
//! * cover: `{"schema": "cover/1", "n": 4, "fold": 4,
//!   "edges": {"0-1": [[0,1], ...], ...}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::correspondence::Cover;
use crate::error::{Error, Result};
use crate::graph::{build_graph, Colour, Colouring, Graph, ListAssignment, Vertex};
use crate::kernel::{RecolourPlan, RecolourStep};
use crate::oracle::ReconfSummary;
use crate::planner::TraceEntry;

pub const INSTANCE_SCHEMA: &str = "instance/1";
pub const COLOURING_SCHEMA: &str = "colouring/1";
pub const PLAN_SCHEMA: &str = "plan/1";
pub const SUMMARY_SCHEMA: &str = "summary/1";
pub const COVER_SCHEMA: &str = "cover/1";
pub const CENSUS_SCHEMA: &str = "census/1";

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::precondition(format!(
            "schema mismatch: found {found:?}, expected {expected:?}"
        )));
    }
    Ok(())
}

/// A graph instance, optionally with explicit colour lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub schema: String,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<BTreeMap<String, Vec<Colour>>>,
}

impl InstanceDoc {
    pub fn new(g: &Graph, l: Option<&ListAssignment>) -> Self {
        InstanceDoc {
            schema: INSTANCE_SCHEMA.into(),
            n: g.n(),
            edges: g.edges().to_vec(),
            lists: l.map(|l| {
                (0..g.n())
                    .map(|v| (v.to_string(), l.list(v).to_vec()))
                    .collect()
            }),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        check_schema(&self.schema, INSTANCE_SCHEMA)?;
        build_graph(self.n, &self.edges)
    }

    /// The explicit lists, if present.
    pub fn to_lists(&self) -> Result<Option<ListAssignment>> {
        let Some(map) = &self.lists else {
            return Ok(None);
        };
        let mut lists = vec![Vec::new(); self.n];
        for (k, v) in map {
            let idx: usize = k
                .parse()
                .map_err(|_| Error::precondition(format!("bad list key {k:?}")))?;
            if idx >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: idx,
                    n: self.n,
                });
            }
            lists[idx] = v.clone();
        }
        ListAssignment::new(lists).map(Some)
    }
}

/// A colouring as a vertex → colour map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColouringDoc {
    pub schema: String,
    pub colours: BTreeMap<String, Colour>,
}

impl ColouringDoc {
    pub fn new(c: &Colouring) -> Self {
        ColouringDoc {
            schema: COLOURING_SCHEMA.into(),
            colours: (0..c.n()).map(|v| (v.to_string(), c.get(v))).collect(),
        }
    }

    pub fn to_colouring(&self, n: usize) -> Result<Colouring> {
        check_schema(&self.schema, COLOURING_SCHEMA)?;
        let mut out = vec![None; n];
        for (k, &col) in &self.colours {
            let idx: usize = k
                .parse()
                .map_err(|_| Error::precondition(format!("bad colouring key {k:?}")))?;
            if idx >= n {
                return Err(Error::VertexOutOfRange { vertex: idx, n });
            }
            out[idx] = Some(col);
        }
        let full: Option<Vec<Colour>> = out.into_iter().collect();
        full.map(Colouring::new)
            .ok_or_else(|| Error::precondition("colouring does not cover every vertex"))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepDoc {
    pub vertex: Vertex,
    pub colour: Colour,
}

/// A recolouring plan with its per-lemma trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanDoc {
    pub schema: String,
    pub steps: Vec<StepDoc>,
    #[serde(default)]
    pub trace: Vec<TraceEntry>,
}

impl PlanDoc {
    pub fn new(plan: &RecolourPlan, trace: &[TraceEntry]) -> Self {
        PlanDoc {
            schema: PLAN_SCHEMA.into(),
            steps: plan
                .steps
                .iter()
                .map(|s| StepDoc {
                    vertex: s.vertex,
                    colour: s.new_colour,
                })
                .collect(),
            trace: trace.to_vec(),
        }
    }

    pub fn to_plan(&self) -> Result<RecolourPlan> {
        check_schema(&self.schema, PLAN_SCHEMA)?;
        Ok(RecolourPlan {
            steps: self
                .steps
                .iter()
                .map(|s| RecolourStep {
                    vertex: s.vertex,
                    new_colour: s.colour,
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u64>,
}

/// A reconfiguration-graph census.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub schema: String,
    pub total: u64,
    pub frozen: u64,
    pub components: Vec<ComponentDoc>,
}

impl SummaryDoc {
    pub fn new(s: &ReconfSummary) -> Self {
        SummaryDoc {
            schema: SUMMARY_SCHEMA.into(),
            total: s.total_colourings,
            frozen: s.frozen_count,
            components: s
                .components
                .iter()
                .map(|&(size, diameter)| ComponentDoc { size, diameter })
                .collect(),
        }
    }
}

/// A correspondence cover: `edges` keyed `"u-v"` with `u < v`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverDoc {
    pub schema: String,
    pub n: usize,
    pub fold: usize,
    pub edges: BTreeMap<String, Vec<(usize, usize)>>,
}

impl CoverDoc {
    /// Requires a uniform fold, which all covers in this library have.
    pub fn new(c: &Cover) -> Result<Self> {
        let fold = *c
            .list_sizes
            .first()
            .ok_or_else(|| Error::precondition("empty cover"))?;
        if c.list_sizes.iter().any(|&s| s != fold) {
            return Err(Error::precondition(
                "cover file format requires a uniform fold",
            ));
        }
        Ok(CoverDoc {
            schema: COVER_SCHEMA.into(),
            n: c.base.n(),
            fold,
            edges: c
                .cross_edges
                .iter()
                .map(|(&(u, v), pairs)| (format!("{u}-{v}"), pairs.clone()))
                .collect(),
        })
    }

    pub fn to_cover(&self) -> Result<Cover> {
        check_schema(&self.schema, COVER_SCHEMA)?;
        let mut cross_edges = BTreeMap::new();
        let mut base_edges = Vec::new();
        for (k, pairs) in &self.edges {
            let (u, v) = k
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .ok_or_else(|| Error::precondition(format!("bad edge key {k:?}")))?;
            base_edges.push((u, v));
            cross_edges.insert((u, v), pairs.clone());
        }
        Ok(Cover {
            base: build_graph(self.n, &base_edges)?,
            list_sizes: vec![self.fold; self.n],
            cross_edges,
        })
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("serialization cannot fail");
    out.push('\n');
    out
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::precondition(format!("malformed JSON: {e}")))
}
