//! Finite simple graphs standing in for balls of infinite lattices.
//!
//! A [`FinitePatch`] stores a simple undirected graph in compressed adjacency
//! form together with the bookkeeping that exact walk counting needs:
//!
//! * every edge has a stable [`EdgeId`] (edges are kept in lexicographic order
//!   of `(min endpoint, max endpoint)`), which is where mid-edges live;
//! * an optional proper 2-colouring;
//! * a per-vertex [`Depth`], the graph distance to the nearest vertex whose
//!   neighbourhood in the infinite lattice is incomplete.
//!
//! Walks that only ever stand on vertices of depth at least one see exactly
//! the neighbourhoods they would see in the infinite lattice, which is what
//! makes finite counts exact up to a horizon.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Index of an edge in the canonical edge list of a patch.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

impl Colour {
    pub fn other(self) -> Colour {
        match self {
            Colour::Black => Colour::White,
            Colour::White => Colour::Black,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Black => "black",
            Colour::White => "white",
        }
    }
}

/// Distance to the lattice boundary; `Infinite` for graphs with no boundary
/// at all (gadget interiors).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Depth {
    Finite(u32),
    Infinite,
}

impl Depth {
    pub fn is_finite(self) -> bool {
        matches!(self, Depth::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }

    pub fn saturating_sub(self, k: u32) -> Depth {
        match self {
            Depth::Finite(d) => Depth::Finite(d.saturating_sub(k)),
            Depth::Infinite => Depth::Infinite,
        }
    }

    /// Whether a length `n` fits under this horizon.
    pub fn admits(self, n: usize) -> bool {
        match self {
            Depth::Finite(d) => n <= d as usize,
            Depth::Infinite => true,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Depth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<u32>::deserialize(d)? {
            Some(v) => Depth::Finite(v),
            None => Depth::Infinite,
        })
    }
}

/// Immutable finite simple graph with mid-edge, colour and boundary metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PatchJson", try_from = "PatchJson")]
pub struct FinitePatch {
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
    neighbours: Vec<VertexId>,
    incident: Vec<EdgeId>,
    colours: Option<Vec<Colour>>,
    depth: Vec<Depth>,
    origin: VertexId,
}

/// Validate and build a patch. Depths start out infinite.
pub fn build_patch(
    vertex_count: usize,
    edge_list: &[(VertexId, VertexId)],
    colours: Option<Vec<Colour>>,
    origin: VertexId,
) -> Result<FinitePatch> {
    FinitePatch::new(vertex_count, edge_list, colours, origin)
}

impl FinitePatch {
    pub fn new(
        vertex_count: usize,
        edge_list: &[(VertexId, VertexId)],
        colours: Option<Vec<Colour>>,
        origin: VertexId,
    ) -> Result<Self> {
        if origin as usize >= vertex_count {
            return Err(Error::OriginOutOfRange {
                origin,
                count: vertex_count,
            });
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w as usize >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut degree = vec![0usize; vertex_count];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..vertex_count].to_vec();
        let mut slots = vec![(0 as VertexId, EdgeId(0)); 2 * edges.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let id = EdgeId(i as u32);
            slots[fill[u as usize]] = (v, id);
            fill[u as usize] += 1;
            slots[fill[v as usize]] = (u, id);
            fill[v as usize] += 1;
        }
        for v in 0..vertex_count {
            slots[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let (neighbours, incident) = slots.into_iter().unzip();

        let patch = FinitePatch {
            edges,
            offsets,
            neighbours,
            incident,
            colours: None,
            depth: vec![Depth::Infinite; vertex_count],
            origin,
        };
        match colours {
            Some(c) => patch.with_colours(c),
            None => Ok(patch),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.depth.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    /// Canonically ordered edge list; position `i` is `EdgeId(i)`.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    pub fn edge_checked(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges
            .get(e.index())
            .copied()
            .ok_or(Error::EdgeOutOfRange(e.index()))
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbours(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbours[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`FinitePatch::neighbours`].
    #[inline]
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.incident[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let pos = self.neighbours(u).binary_search(&v).ok()?;
        Some(self.incident_edges(u)[pos])
    }

    pub fn colours(&self) -> Option<&[Colour]> {
        self.colours.as_deref()
    }

    pub fn colour(&self, v: VertexId) -> Option<Colour> {
        self.colours.as_ref().map(|c| c[v as usize])
    }

    pub fn depth(&self, v: VertexId) -> Depth {
        self.depth[v as usize]
    }

    pub fn depths(&self) -> &[Depth] {
        &self.depth
    }

    /// Largest walk length from the origin guaranteed to match the infinite
    /// lattice: `depth(origin) - 1`, saturating at zero.
    pub fn safe_walk_length(&self) -> Depth {
        self.depth(self.origin).saturating_sub(1)
    }

    /// Horizon for mid-edge walks leaving `start_edges`: every visited vertex
    /// lies within `len - 1` steps of an endpoint of a start edge, so the
    /// minimum endpoint depth bounds the admissible number of visits.
    pub fn midedge_horizon(&self, start_edges: &[EdgeId]) -> Depth {
        start_edges
            .iter()
            .flat_map(|&e| {
                let (u, v) = self.edge(e);
                [self.depth(u), self.depth(v)]
            })
            .min()
            .unwrap_or(Depth::Infinite)
    }

    pub fn with_origin(mut self, origin: VertexId) -> Result<Self> {
        if origin as usize >= self.vertex_count() {
            return Err(Error::OriginOutOfRange {
                origin,
                count: self.vertex_count(),
            });
        }
        self.origin = origin;
        Ok(self)
    }

    pub fn with_colours(mut self, colours: Vec<Colour>) -> Result<Self> {
        if colours.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                what: "colours",
                got: colours.len(),
                expected: self.vertex_count(),
            });
        }
        if let Some(&(u, v)) = self
            .edges
            .iter()
            .find(|&&(u, v)| colours[u as usize] == colours[v as usize])
        {
            return Err(Error::ImproperColouring(u, v));
        }
        self.colours = Some(colours);
        Ok(self)
    }

    pub fn without_colours(mut self) -> Self {
        self.colours = None;
        self
    }

    /// Install explicit depths, checking the Lipschitz condition along edges.
    pub fn with_depths(mut self, depth: Vec<Depth>) -> Result<Self> {
        if depth.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                what: "boundary_depth",
                got: depth.len(),
                expected: self.vertex_count(),
            });
        }
        for &(u, v) in &self.edges {
            let (a, b) = (depth[u as usize], depth[v as usize]);
            let ok = match (a, b) {
                (Depth::Infinite, Depth::Infinite) => true,
                (Depth::Finite(x), Depth::Finite(y)) => x.abs_diff(y) <= 1,
                _ => false,
            };
            if !ok {
                return Err(Error::InconsistentDepth(u, v));
            }
        }
        self.depth = depth;
        Ok(self)
    }

    /// Recompute depths by multi-source BFS from the vertices flagged as
    /// having an incomplete lattice neighbourhood.
    pub fn with_boundary(mut self, incomplete: &[bool]) -> Self {
        assert_eq!(incomplete.len(), self.vertex_count());
        let sources: Vec<VertexId> = (0..self.vertex_count() as VertexId)
            .filter(|&v| incomplete[v as usize])
            .collect();
        let dist = self.bfs(&sources);
        self.depth = dist
            .into_iter()
            .map(|d| d.map_or(Depth::Infinite, Depth::Finite))
            .collect();
        self
    }

    /// Multi-source BFS distances; `None` when unreachable.
    pub fn bfs(&self, sources: &[VertexId]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s as usize].is_none() {
                dist[s as usize] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &w in self.neighbours(u) {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distances_from(&self, v: VertexId) -> Vec<Option<u32>> {
        self.bfs(&[v])
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest finite eccentricity; meaningful for connected graphs.
    pub fn diameter(&self) -> u32 {
        (0..self.vertex_count() as VertexId)
            .map(|v| self.distances_from(v).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count() as VertexId)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Proper 2-colouring by BFS with the origin's component starting black.
    pub fn two_colouring(&self) -> Result<Vec<Colour>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<Colour>> = vec![None; n];
        let order = std::iter::once(self.origin).chain(0..n as VertexId);
        for root in order {
            if colour[root as usize].is_some() {
                continue;
            }
            colour[root as usize] = Some(Colour::Black);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u as usize].unwrap();
                for &w in self.neighbours(u) {
                    match colour[w as usize] {
                        None => {
                            colour[w as usize] = Some(cu.other());
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return Err(Error::NotBipartite),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("patch serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// On-disk patch layout.
#[derive(Serialize, Deserialize)]
struct PatchJson {
    vertices: usize,
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colours: Option<Vec<Colour>>,
    origin: VertexId,
    boundary_depth: Vec<Depth>,
}

impl From<FinitePatch> for PatchJson {
    fn from(p: FinitePatch) -> Self {
        PatchJson {
            vertices: p.vertex_count(),
            edges: p.edges.iter().map(|&(u, v)| [u, v]).collect(),
            colours: p.colours,
            origin: p.origin,
            boundary_depth: p.depth,
        }
    }
}

impl TryFrom<PatchJson> for FinitePatch {
    type Error = Error;

    fn try_from(j: PatchJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        FinitePatch::new(j.vertices, &edges, j.colours, j.origin)?.with_depths(j.boundary_depth)
    }
}

/// A self-avoiding walk between two mid-edges, length = vertices visited.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MidEdgeWalk {
    pub start_edge: EdgeId,
    pub vertices: Vec<VertexId>,
    pub end_edge: EdgeId,
}

impl MidEdgeWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks every mid-edge walk invariant against `patch`.
    pub fn is_valid_in(&self, patch: &FinitePatch) -> bool {
        let (Ok(s), Ok(t)) = (
            patch.edge_checked(self.start_edge),
            patch.edge_checked(self.end_edge),
        ) else {
            return false;
        };
        let Some((&first, &last)) = self.vertices.first().zip(self.vertices.last()) else {
            return self.start_edge == self.end_edge;
        };
        if first != s.0 && first != s.1 || last != t.0 && last != t.1 {
            return false;
        }
        let mut mids = vec![self.start_edge];
        for w in self.vertices.windows(2) {
            match patch.edge_between(w[0], w[1]) {
                Some(e) => mids.push(e),
                None => return false,
            }
        }
        mids.push(self.end_edge);
        let mut seen_v = self.vertices.clone();
        seen_v.sort_unstable();
        seen_v.dedup();
        mids.sort_unstable();
        mids.dedup();
        seen_v.len() == self.vertices.len() && mids.len() == self.vertices.len() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Vec<(u32, u32)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn triangle_builds() {
        let p = build_patch(3, &cycle(3), None, 0).unwrap();
        assert_eq!(p.edge_count(), 3);
        assert_eq!(p.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(p.edge_between(2, 0), Some(EdgeId(1)));
        assert_eq!(p.safe_walk_length(), Depth::Infinite);
    }

    #[test]
    fn multi_edge_rejected() {
        let err = build_patch(2, &[(0, 1), (1, 0)], None, 0).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(0, 1)));
    }

    #[test]
    fn self_loop_and_origin_rejected() {
        assert!(matches!(
            build_patch(2, &[(1, 1)], None, 0),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            build_patch(2, &[(0, 1)], None, 2),
            Err(Error::OriginOutOfRange { .. })
        ));
    }

    #[test]
    fn even_cycle_colouring() {
        use Colour::*;
        let p = build_patch(4, &cycle(4), Some(vec![Black, White, Black, White]), 0).unwrap();
        assert_eq!(p.colour(1), Some(White));
        let bad = build_patch(4, &cycle(4), Some(vec![Black, Black, White, White]), 0);
        assert!(matches!(bad, Err(Error::ImproperColouring(..))));
        assert!(build_patch(3, &cycle(3), None, 0)
            .unwrap()
            .two_colouring()
            .is_err());
    }

    #[test]
    fn origin_on_boundary_has_zero_horizon() {
        let p = build_patch(3, &[(0, 1), (1, 2)], None, 0)
            .unwrap()
            .with_boundary(&[true, false, false]);
        assert_eq!(p.safe_walk_length(), Depth::Finite(0));
        assert_eq!(p.depth(2), Depth::Finite(2));
    }

    #[test]
    fn inconsistent_depths_rejected() {
        let p = build_patch(2, &[(0, 1)], None, 0).unwrap();
        assert!(p
            .clone()
            .with_depths(vec![Depth::Finite(0), Depth::Finite(2)])
            .is_err());
        assert!(p
            .with_depths(vec![Depth::Finite(0), Depth::Infinite])
            .is_err());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let p = build_patch(4, &cycle(4), None, 1)
            .unwrap()
            .with_boundary(&[true, false, false, false]);
        let s = p.to_json();
        let q = FinitePatch::from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, q.to_json());
    }

    #[test]
    fn midedge_walk_validity() {
        // star: centre 0, leaves 1..=3
        let p = build_patch(4, &[(0, 1), (0, 2), (0, 3)], None, 0).unwrap();
        let e = |u, v| p.edge_between(u, v).unwrap();
        let ok = MidEdgeWalk {
            start_edge: e(0, 1),
            vertices: vec![0],
            end_edge: e(0, 2),
        };
        assert!(ok.is_valid_in(&p));
        let back = MidEdgeWalk {
            start_edge: e(0, 1),
            vertices: vec![0],
            end_edge: e(0, 1),
        };
        assert!(!back.is_valid_in(&p));
        let empty = MidEdgeWalk {
            start_edge: e(0, 1),
            vertices: vec![],
            end_edge: e(0, 1),
        };
        assert!(empty.is_valid_in(&p));
    }
}
