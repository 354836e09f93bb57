//! Local transformations: every selected cubic vertex is replaced by a copy
//! of a gadget, its three edges re-attached to the ports.
//!
//! Original edges survive one-to-one, so mid-edges of the source patch can
//! still be addressed in the rewritten one through `original_edge_map`.

use std::ops::Range;

use num_bigint::BigUint;
use serde::Serialize;

use crate::enumerate::{EndFilter, MidEdgeQuery};
use crate::error::{Error, Result};
use crate::gadget::Gadget;
use crate::graph::{Colour, Depth, EdgeId, FinitePatch, VertexId};

/// Result of rewriting a patch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformedPatch {
    pub patch: FinitePatch,
    /// New id of every original edge.
    pub original_edge_map: Vec<EdgeId>,
    /// Block of new vertices standing for each original vertex; a single
    /// vertex when the original was left in place.
    pub site_map: Vec<Range<VertexId>>,
    /// Original vertices that were not replaced.
    pub untouched: Vec<VertexId>,
}

impl TransformedPatch {
    /// Image of an original vertex that was left in place.
    pub fn untouched_image(&self, v: VertexId) -> Option<VertexId> {
        self.untouched
            .binary_search(&v)
            .ok()
            .map(|_| self.site_map[v as usize].start)
    }

    pub fn is_replaced(&self, v: VertexId) -> bool {
        self.untouched.binary_search(&v).is_err()
    }

    /// Images of the given original edges.
    pub fn map_edges(&self, edges: &[EdgeId]) -> Vec<EdgeId> {
        edges.iter().map(|e| self.original_edge_map[e.index()]).collect()
    }

    /// The original vertex whose block contains `w`.
    pub fn site_of(&self, w: VertexId) -> VertexId {
        let i = self.site_map.partition_point(|r| r.end <= w);
        i as VertexId
    }

    /// Collapse every gadget copy to one vertex, discarding internal edges.
    pub fn contract(&self) -> Result<FinitePatch> {
        let edges: Vec<_> = self
            .original_edge_map
            .iter()
            .map(|&e| {
                let (u, v) = self.patch.edge(e);
                (self.site_of(u), self.site_of(v))
            })
            .collect();
        let origin = self.site_of(self.patch.origin());
        FinitePatch::new(self.site_map.len(), &edges, None, origin)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transformed patch serialization cannot fail")
    }
}

/// Core rewriting. `choose` names the gadget for each vertex, or `None` to
/// keep it. Boundary vertices (depth 0) are never replaced.
fn rewrite<'g>(
    patch: &FinitePatch,
    choose: impl Fn(VertexId) -> Option<&'g Gadget>,
    on_bad_degree: impl Fn(VertexId, usize) -> Error,
) -> Result<TransformedPatch> {
    let n = patch.vertex_count();
    let mut chosen: Vec<Option<&Gadget>> = Vec::with_capacity(n);
    for v in 0..n as VertexId {
        let g = match patch.depth(v) {
            Depth::Finite(0) => None,
            _ => choose(v),
        };
        if g.is_some() && patch.degree(v) != 3 {
            return Err(on_bad_degree(v, patch.degree(v)));
        }
        chosen.push(g);
    }

    let mut site_map = Vec::with_capacity(n);
    let mut untouched = Vec::new();
    let mut next: VertexId = 0;
    for (v, g) in chosen.iter().enumerate() {
        let size = g.map_or(1, |g| g.vertex_count()) as VertexId;
        site_map.push(next..next + size);
        if g.is_none() {
            untouched.push(v as VertexId);
        }
        next += size;
    }
    let total = next as usize;

    let mut edges = Vec::new();
    for (v, g) in chosen.iter().enumerate() {
        if let Some(g) = g {
            let base = site_map[v].start;
            edges.extend(g.graph().edges().iter().map(|&(a, b)| (base + a, base + b)));
        }
    }

    // endpoint of original edge `e` on the side of original vertex `v`
    let endpoint = |v: VertexId, e: EdgeId| -> VertexId {
        match chosen[v as usize] {
            None => site_map[v as usize].start,
            Some(g) => {
                let mut inc = patch.incident_edges(v).to_vec();
                inc.sort_unstable();
                let k = inc.iter().position(|&f| f == e).expect("edge is incident");
                site_map[v as usize].start + g.ports()[k]
            }
        }
    };
    let mut images = Vec::with_capacity(patch.edge_count());
    for (i, &(u, v)) in patch.edges().iter().enumerate() {
        let e = EdgeId(i as u32);
        let pair = (endpoint(u, e), endpoint(v, e));
        images.push(pair);
        edges.push(pair);
    }

    let o = patch.origin();
    let origin = match chosen[o as usize] {
        None => site_map[o as usize].start,
        Some(g) => site_map[o as usize].start + g.ports()[0],
    };
    let mut incomplete = vec![false; total];
    for &v in &untouched {
        if patch.depth(v) == Depth::Finite(0) {
            incomplete[site_map[v as usize].start as usize] = true;
        }
    }
    let new_patch = FinitePatch::new(total, &edges, None, origin)?.with_boundary(&incomplete);
    let original_edge_map = images
        .iter()
        .map(|&(a, b)| new_patch.edge_between(a, b).expect("mapped edge present"))
        .collect();
    Ok(TransformedPatch {
        patch: new_patch,
        original_edge_map,
        site_map,
        untouched,
    })
}

/// Replace every interior vertex by a copy of `gadget`.
pub fn transform_all(patch: &FinitePatch, gadget: &Gadget) -> Result<TransformedPatch> {
    rewrite(patch, |_| Some(gadget), |vertex, degree| Error::NonCubicInterior { vertex, degree })
}

/// Replace the interior black vertices by `black`, and the white ones by
/// `white` when given.
pub fn transform_colour_class(
    patch: &FinitePatch,
    black: &Gadget,
    white: Option<&Gadget>,
) -> Result<TransformedPatch> {
    let colours = patch.colours().ok_or(Error::NotBipartite)?;
    rewrite(
        patch,
        |v| match colours[v as usize] {
            Colour::Black => Some(black),
            Colour::White => white,
        },
        |vertex, degree| Error::NonCubicClass {
            vertex,
            degree,
            colour: colours[vertex as usize].name(),
        },
    )
}

/// Mid-edge walk counts refined by the number of black and white vertices
/// visited: `counts[b][w]`, defined for `b + w <= max_vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColourRefinedSeries {
    pub max_vertices: usize,
    #[serde(serialize_with = "decimal_table")]
    pub counts: Vec<Vec<BigUint>>,
}

fn decimal_table<S: serde::Serializer>(
    t: &[Vec<BigUint>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = t
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    strings.serialize(s)
}

impl ColourRefinedSeries {
    pub fn get(&self, black: usize, white: usize) -> BigUint {
        self.counts
            .get(black)
            .and_then(|row| row.get(white))
            .cloned()
            .unwrap_or_default()
    }

    /// Plain counts by total number of visited vertices.
    pub fn marginal(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::default(); self.max_vertices + 1];
        for (b, row) in self.counts.iter().enumerate() {
            for (w, c) in row.iter().enumerate().take(self.max_vertices + 1 - b) {
                out[b + w] += c;
            }
        }
        out
    }
}

/// Colour-refined mid-edge walks from `start_edges`, any end.
pub fn count_colour_refined(
    patch: &FinitePatch,
    start_edges: &[EdgeId],
    max_vertices: usize,
) -> Result<ColourRefinedSeries> {
    count_colour_refined_with(&MidEdgeQuery::new(start_edges, &EndFilter::Any, max_vertices), patch)
}

/// As [`count_colour_refined`] with full query control.
pub fn count_colour_refined_with(
    query: &MidEdgeQuery<'_>,
    patch: &FinitePatch,
) -> Result<ColourRefinedSeries> {
    let colours = patch.colours().ok_or(Error::NotBipartite)?;
    let (mut engine, _) = query.engine(patch)?;
    engine.colours = Some(colours);
    let tally = engine.run();
    let m = query.max_vertices;
    let mut counts = vec![vec![BigUint::default(); m + 1]; m + 1];
    for len in 0..=m {
        for black in 0..=len {
            let c = tally.counts[len * tally.width + black];
            counts[black][len - black] = BigUint::from(c);
        }
    }
    Ok(ColourRefinedSeries {
        max_vertices: m,
        counts,
    })
}
