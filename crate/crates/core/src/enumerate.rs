//! Exact self-avoiding walk enumeration.
//!
//! Two length conventions are in play and are kept apart at the type level:
//!
//! * [`EdgeSteps`]: walks from a vertex, length = number of edges;
//! * [`VerticesVisited`]: walks between mid-edges, length = number of
//!   vertices visited. The empty walk (start and end at the same mid-edge)
//!   has length 0.
//!
//! The engine is a depth-first backtracking search with a visited set. The
//! search tree is expanded serially down to a fixed prefix depth; the
//! resulting subtrees are counted independently on the rayon pool and their
//! tallies added. Addition of integers commutes, so results do not depend on
//! scheduling or thread count.

use std::marker::PhantomData;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::Gadget;
use crate::graph::{Colour, Depth, EdgeId, FinitePatch, VertexId};
use crate::poly::CountPolynomial;

/// Default number of edge-steps expanded serially before splitting.
pub const DEFAULT_PREFIX_DEPTH: usize = 3;

pub trait Convention: Copy + Default + Send + Sync + 'static {
    const TAG: &'static str;
}

/// Walks from a vertex; length counts edges.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeSteps;

/// Walks between mid-edges; length counts visited vertices.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct VerticesVisited;

impl Convention for EdgeSteps {
    const TAG: &'static str = "edge-steps";
}

impl Convention for VerticesVisited {
    const TAG: &'static str = "vertices-visited";
}

/// Exact walk counts per length, tagged with their length convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SeriesJson", try_from = "SeriesJson")]
#[serde(bound = "")]
pub struct SawSeries<C: Convention> {
    counts: Vec<BigUint>,
    moments2: Option<Vec<BigUint>>,
    safe_up_to: Depth,
    convention: PhantomData<C>,
}

impl<C: Convention> SawSeries<C> {
    pub fn new(counts: Vec<BigUint>, moments2: Option<Vec<BigUint>>, safe_up_to: Depth) -> Self {
        SawSeries {
            counts,
            moments2,
            safe_up_to,
            convention: PhantomData,
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Sum over walks of the squared graph distance between endpoints.
    pub fn moments2(&self) -> Option<&[BigUint]> {
        self.moments2.as_deref()
    }

    pub fn safe_up_to(&self) -> Depth {
        self.safe_up_to
    }

    /// Largest length present.
    pub fn max_len(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    /// Mean squared end-to-end distance at length `n`.
    pub fn mean_square_distance(&self, n: usize) -> Option<f64> {
        use num_traits::{ToPrimitive, Zero};
        let m = self.moments2.as_ref()?.get(n)?;
        let c = self.counts.get(n)?;
        if c.is_zero() {
            return None;
        }
        Some(m.to_f64()? / c.to_f64()?)
    }

    pub fn as_polynomial(&self) -> CountPolynomial {
        CountPolynomial::new(self.counts.clone())
    }

    pub fn convention(&self) -> &'static str {
        C::TAG
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("series serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    convention: String,
    counts: Vec<String>,
    moments2: Option<Vec<String>>,
    safe_up_to: Depth,
}

impl<C: Convention> From<SawSeries<C>> for SeriesJson {
    fn from(s: SawSeries<C>) -> Self {
        let strings = |v: &[BigUint]| v.iter().map(ToString::to_string).collect();
        SeriesJson {
            convention: C::TAG.to_string(),
            counts: strings(&s.counts),
            moments2: s.moments2.as_deref().map(strings),
            safe_up_to: s.safe_up_to,
        }
    }
}

impl<C: Convention> TryFrom<SeriesJson> for SawSeries<C> {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.convention != C::TAG {
            return Err(Error::WrongConvention {
                got: j.convention,
                expected: C::TAG,
            });
        }
        let parse = |v: &[String]| -> Result<Vec<BigUint>> {
            v.iter()
                .map(|s| {
                    s.parse()
                        .map_err(|_| Error::InvalidPolynomial(format!("bad count {s:?}")))
                })
                .collect()
        };
        let moments2 = j.moments2.as_deref().map(parse).transpose()?;
        Ok(SawSeries::new(parse(&j.counts)?, moments2, j.safe_up_to))
    }
}

/// Which mid-edges a walk may end at.
#[derive(Clone, Debug)]
pub enum EndFilter {
    Any,
    Nothing,
    /// Indexed by edge id.
    Only(Vec<bool>),
}

impl EndFilter {
    pub fn edges(patch: &FinitePatch, allowed: &[EdgeId]) -> Self {
        let mut mask = vec![false; patch.edge_count()];
        for e in allowed {
            mask[e.index()] = true;
        }
        EndFilter::Only(mask)
    }

    #[inline]
    fn accepts(&self, e: EdgeId) -> bool {
        match self {
            EndFilter::Any => true,
            EndFilter::Nothing => false,
            EndFilter::Only(mask) => mask[e.index()],
        }
    }
}

// ---------------------------------------------------------------------------
// visited sets

trait VisitSet: Clone + Send + Sync {
    fn empty(n: usize) -> Self;
    fn contains(&self, v: VertexId) -> bool;
    fn insert(&mut self, v: VertexId);
    fn remove(&mut self, v: VertexId);
}

impl VisitSet for u64 {
    fn empty(_: usize) -> Self {
        0
    }
    #[inline(always)]
    fn contains(&self, v: VertexId) -> bool {
        *self >> v & 1 == 1
    }
    #[inline(always)]
    fn insert(&mut self, v: VertexId) {
        *self |= 1 << v;
    }
    #[inline(always)]
    fn remove(&mut self, v: VertexId) {
        *self &= !(1 << v);
    }
}

impl VisitSet for u128 {
    fn empty(_: usize) -> Self {
        0
    }
    #[inline(always)]
    fn contains(&self, v: VertexId) -> bool {
        *self >> v & 1 == 1
    }
    #[inline(always)]
    fn insert(&mut self, v: VertexId) {
        *self |= 1 << v;
    }
    #[inline(always)]
    fn remove(&mut self, v: VertexId) {
        *self &= !(1 << v);
    }
}

#[derive(Clone)]
struct ByteSet(Vec<u8>);

impl VisitSet for ByteSet {
    fn empty(n: usize) -> Self {
        ByteSet(vec![0; n])
    }
    #[inline(always)]
    fn contains(&self, v: VertexId) -> bool {
        self.0[v as usize] != 0
    }
    #[inline(always)]
    fn insert(&mut self, v: VertexId) {
        self.0[v as usize] = 1;
    }
    #[inline(always)]
    fn remove(&mut self, v: VertexId) {
        self.0[v as usize] = 0;
    }
}

// ---------------------------------------------------------------------------
// engine

#[derive(Clone, Copy)]
enum Mode<'a> {
    /// Count every node of the search tree; length = vertices - 1.
    FromVertex { origin: VertexId },
    /// Count admissible end mid-edges at every node; length = vertices.
    MidEdge {
        start_edges: &'a [EdgeId],
        end_filter: &'a EndFilter,
    },
}

/// Raw per-cell tallies. Counts are indexed by `len * width + black`, where
/// `black` is the number of black vertices visited (always 0 unless colour
/// refinement is on). `u64` suffices: every increment is by one.
#[derive(Clone, Debug)]
pub(crate) struct Tally {
    pub(crate) width: usize,
    pub(crate) counts: Vec<u64>,
    pub(crate) moments: Vec<u128>,
}

impl Tally {
    fn new(max_len: usize, width: usize, moments: bool) -> Self {
        Tally {
            width,
            counts: vec![0; (max_len + 1) * width],
            moments: if moments { vec![0; max_len + 1] } else { Vec::new() },
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        for (a, b) in self.moments.iter_mut().zip(other.moments) {
            *a += b;
        }
        self
    }

    /// Counts per length, summed over colour cells.
    pub(crate) fn marginal(&self) -> Vec<BigUint> {
        self.counts
            .chunks(self.width)
            .map(|row| BigUint::from(row.iter().sum::<u64>()))
            .collect()
    }
}

struct Task<S> {
    visited: S,
    at: VertexId,
    arrival: Option<EdgeId>,
    start: Option<EdgeId>,
    len: usize,
    black: usize,
}

pub(crate) struct Engine<'a> {
    pub(crate) patch: &'a FinitePatch,
    mode: Mode<'a>,
    /// Maximum length in the mode's own convention.
    pub(crate) max_len: usize,
    pub(crate) blocked: &'a [VertexId],
    pub(crate) colours: Option<&'a [Colour]>,
    pub(crate) distances: Option<Vec<u32>>,
    pub(crate) check_boundary: bool,
    pub(crate) prefix_depth: usize,
}

impl<'a> Engine<'a> {
    fn new(patch: &'a FinitePatch, mode: Mode<'a>, max_len: usize) -> Self {
        Engine {
            patch,
            mode,
            max_len,
            blocked: &[],
            colours: None,
            distances: None,
            check_boundary: false,
            prefix_depth: DEFAULT_PREFIX_DEPTH,
        }
    }

    pub(crate) fn from_vertex(patch: &'a FinitePatch, origin: VertexId, max_steps: usize) -> Self {
        Self::new(patch, Mode::FromVertex { origin }, max_steps)
    }

    pub(crate) fn mid_edge(
        patch: &'a FinitePatch,
        start_edges: &'a [EdgeId],
        end_filter: &'a EndFilter,
        max_vertices: usize,
    ) -> Self {
        Self::new(
            patch,
            Mode::MidEdge {
                start_edges,
                end_filter,
            },
            max_vertices,
        )
    }

    pub(crate) fn run(&self) -> Tally {
        let n = self.patch.vertex_count();
        if n <= 64 {
            self.run_with::<u64>()
        } else if n <= 128 {
            self.run_with::<u128>()
        } else {
            self.run_with::<ByteSet>()
        }
    }

    fn width(&self) -> usize {
        if self.colours.is_some() {
            self.max_len + 1
        } else {
            1
        }
    }

    /// Vertices visited at which the serial expansion stops.
    fn split_len(&self) -> usize {
        self.prefix_depth + 1
    }

    fn run_with<S: VisitSet>(&self) -> Tally {
        let mut tally = Tally::new(self.max_len, self.width(), self.distances.is_some());
        let mut tasks: Vec<Task<S>> = Vec::new();
        let mut visited = S::empty(self.patch.vertex_count());
        for &b in self.blocked {
            visited.insert(b);
        }

        match self.mode {
            Mode::FromVertex { origin } => {
                self.node(origin, None, None, 1, 0, &mut visited, &mut tally, Some(&mut tasks));
            }
            Mode::MidEdge {
                start_edges,
                end_filter,
            } => {
                for &e in start_edges {
                    if end_filter.accepts(e) {
                        tally.counts[0] += 1;
                    }
                    if self.max_len == 0 {
                        continue;
                    }
                    let (a, b) = self.patch.edge(e);
                    for first in [a, b] {
                        if !visited.contains(first) {
                            self.node(first, Some(e), Some(e), 1, 0, &mut visited, &mut tally, Some(&mut tasks));
                        }
                    }
                }
            }
        }

        tasks
            .into_par_iter()
            .map(|mut task| {
                let mut local = Tally::new(self.max_len, self.width(), self.distances.is_some());
                self.children(
                    task.at,
                    task.arrival,
                    task.start,
                    task.len,
                    task.black,
                    &mut task.visited,
                    &mut local,
                    None,
                );
                local
            })
            .reduce(
                || Tally::new(self.max_len, self.width(), self.distances.is_some()),
                Tally::merge,
            )
            .merge(tally)
    }

    /// Visit `v` as the `len`-th vertex of the walk: record, then descend.
    #[allow(clippy::too_many_arguments)]
    fn node<S: VisitSet>(
        &self,
        v: VertexId,
        arrival: Option<EdgeId>,
        start: Option<EdgeId>,
        len: usize,
        black: usize,
        visited: &mut S,
        tally: &mut Tally,
        tasks: Option<&mut Vec<Task<S>>>,
    ) {
        if self.check_boundary && self.patch.depth(v) == Depth::Finite(0) {
            panic!("walk reached boundary vertex {v} inside the safe horizon");
        }
        let black = black + self.colours.map_or(0, |c| (c[v as usize] == Colour::Black) as usize);
        visited.insert(v);
        match self.mode {
            Mode::FromVertex { .. } => {
                let steps = len - 1;
                tally.counts[steps * tally.width + black] += 1;
                if let Some(d) = &self.distances {
                    let d = d[v as usize] as u128;
                    tally.moments[steps] += d * d;
                }
            }
            Mode::MidEdge { end_filter, .. } => {
                let mut ends = 0;
                for &f in self.patch.incident_edges(v) {
                    if Some(f) != arrival && Some(f) != start && end_filter.accepts(f) {
                        ends += 1;
                    }
                }
                tally.counts[len * tally.width + black] += ends;
            }
        }
        match tasks {
            Some(tasks) if len == self.split_len() => tasks.push(Task {
                visited: visited.clone(),
                at: v,
                arrival,
                start,
                len,
                black,
            }),
            tasks => self.children(v, arrival, start, len, black, visited, tally, tasks),
        }
        visited.remove(v);
    }

    #[allow(clippy::too_many_arguments)]
    fn children<S: VisitSet>(
        &self,
        v: VertexId,
        _arrival: Option<EdgeId>,
        start: Option<EdgeId>,
        len: usize,
        black: usize,
        visited: &mut S,
        tally: &mut Tally,
        mut tasks: Option<&mut Vec<Task<S>>>,
    ) {
        let steps_taken = match self.mode {
            Mode::FromVertex { .. } => len - 1,
            Mode::MidEdge { .. } => len,
        };
        if steps_taken >= self.max_len {
            return;
        }
        let nbrs = self.patch.neighbours(v);
        let edges = self.patch.incident_edges(v);
        for (&w, &f) in nbrs.iter().zip(edges) {
            // the start mid-edge may not be crossed again
            if visited.contains(w) || Some(f) == start {
                continue;
            }
            self.node(w, Some(f), start, len + 1, black, visited, tally, tasks.as_deref_mut());
        }
    }
}

// ---------------------------------------------------------------------------
// public operations

/// Options for walks from a single vertex.
#[derive(Clone, Debug)]
pub struct VertexQuery {
    pub origin: VertexId,
    pub max_steps: usize,
    pub moments: bool,
    pub allow_boundary: bool,
    pub prefix_depth: usize,
}

impl VertexQuery {
    pub fn new(origin: VertexId, max_steps: usize) -> Self {
        VertexQuery {
            origin,
            max_steps,
            moments: false,
            allow_boundary: false,
            prefix_depth: DEFAULT_PREFIX_DEPTH,
        }
    }

    pub fn run(&self, patch: &FinitePatch) -> Result<SawSeries<EdgeSteps>> {
        if self.origin as usize >= patch.vertex_count() {
            return Err(Error::OriginOutOfRange {
                origin: self.origin,
                count: patch.vertex_count(),
            });
        }
        let horizon = patch.depth(self.origin).saturating_sub(1);
        if !self.allow_boundary && !horizon.admits(self.max_steps) {
            return Err(Error::BoundaryUnsafe {
                requested: self.max_steps,
                horizon: horizon.finite().unwrap_or(u32::MAX) as usize,
            });
        }
        let mut engine = Engine::from_vertex(patch, self.origin, self.max_steps);
        engine.check_boundary = !self.allow_boundary;
        engine.prefix_depth = self.prefix_depth;
        if self.moments {
            engine.distances = Some(
                patch
                    .distances_from(self.origin)
                    .into_iter()
                    .map(|d| d.unwrap_or(0))
                    .collect(),
            );
        }
        let tally = engine.run();
        let moments2 = self
            .moments
            .then(|| tally.moments.iter().map(|&m| BigUint::from(m)).collect());
        Ok(SawSeries::new(tally.marginal(), moments2, horizon))
    }
}

/// Exact `sigma_n(origin)` for `0 <= n <= max_steps`.
pub fn count_saws_from_vertex(
    patch: &FinitePatch,
    origin: VertexId,
    max_steps: usize,
) -> Result<SawSeries<EdgeSteps>> {
    VertexQuery::new(origin, max_steps).run(patch)
}

/// As [`count_saws_from_vertex`], also summing squared end-to-end distances.
pub fn endpoint_moments(
    patch: &FinitePatch,
    origin: VertexId,
    max_steps: usize,
) -> Result<SawSeries<EdgeSteps>> {
    VertexQuery {
        moments: true,
        ..VertexQuery::new(origin, max_steps)
    }
    .run(patch)
}

/// Options for walks between mid-edges.
#[derive(Clone, Debug)]
pub struct MidEdgeQuery<'a> {
    pub start_edges: &'a [EdgeId],
    pub end_filter: &'a EndFilter,
    pub max_vertices: usize,
    /// Vertices the walk may never enter.
    pub blocked: &'a [VertexId],
    pub allow_boundary: bool,
    pub prefix_depth: usize,
}

impl<'a> MidEdgeQuery<'a> {
    pub fn new(start_edges: &'a [EdgeId], end_filter: &'a EndFilter, max_vertices: usize) -> Self {
        MidEdgeQuery {
            start_edges,
            end_filter,
            max_vertices,
            blocked: &[],
            allow_boundary: false,
            prefix_depth: DEFAULT_PREFIX_DEPTH,
        }
    }

    pub(crate) fn engine(&self, patch: &'a FinitePatch) -> Result<(Engine<'a>, Depth)> {
        if self.start_edges.is_empty() {
            return Err(Error::EmptyStartEdges);
        }
        for &e in self.start_edges {
            patch.edge_checked(e)?;
        }
        let horizon = patch.midedge_horizon(self.start_edges);
        if !self.allow_boundary && !horizon.admits(self.max_vertices) {
            return Err(Error::BoundaryUnsafe {
                requested: self.max_vertices,
                horizon: horizon.finite().unwrap_or(u32::MAX) as usize,
            });
        }
        let mut engine = Engine::mid_edge(patch, self.start_edges, self.end_filter, self.max_vertices);
        engine.blocked = self.blocked;
        engine.check_boundary = !self.allow_boundary;
        engine.prefix_depth = self.prefix_depth;
        Ok((engine, horizon))
    }

    pub fn run(&self, patch: &FinitePatch) -> Result<SawSeries<VerticesVisited>> {
        let (engine, horizon) = self.engine(patch)?;
        Ok(SawSeries::new(engine.run().marginal(), None, horizon))
    }
}

/// Mid-edge walks from `start_edges` ending at mid-edges accepted by
/// `end_filter`, counted by vertices visited.
pub fn count_midedge_saws(
    patch: &FinitePatch,
    start_edges: &[EdgeId],
    end_filter: &EndFilter,
    max_vertices: usize,
) -> Result<SawSeries<VerticesVisited>> {
    MidEdgeQuery::new(start_edges, end_filter, max_vertices).run(patch)
}

/// Two-port series of a gadget: walks from the external edge at port 0 to
/// the external edge at port 1 that stay inside the gadget.
pub fn gadget_genfun(g: &Gadget) -> Result<CountPolynomial> {
    gadget_genfun_between(g, 0, 1)
}

/// [`gadget_genfun`] for an arbitrary ordered pair of port positions.
pub fn gadget_genfun_between(g: &Gadget, from: usize, to: usize) -> Result<CountPolynomial> {
    if from >= 3 || to >= 3 || from == to {
        return Err(Error::InvalidGadget(format!("bad port pair ({from}, {to})")));
    }
    let pend = g.with_pendants();
    let filter = EndFilter::edges(&pend.patch, &[pend.pendant_edges[to]]);
    let query = MidEdgeQuery {
        blocked: &pend.leaves,
        allow_boundary: true,
        ..MidEdgeQuery::new(&pend.pendant_edges[from..=from], &filter, g.vertex_count())
    };
    Ok(query.run(&pend.patch)?.as_polynomial())
}

/// Walks from a leaf edge at `v1` to a leaf edge at `v2` inside `h`.
pub fn two_terminal_series(h: &FinitePatch, v1: VertexId, v2: VertexId) -> Result<CountPolynomial> {
    let n = h.vertex_count();
    for v in [v1, v2] {
        if v as usize >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: n,
            });
        }
    }
    if v1 == v2 {
        return Err(Error::IdenticalTerminals);
    }
    let (l1, l2) = (n as VertexId, n as VertexId + 1);
    let mut edges = h.edges().to_vec();
    edges.extend([(v1, l1), (v2, l2)]);
    let augmented = FinitePatch::new(n + 2, &edges, None, v1)?;
    let e1 = augmented.edge_between(v1, l1).expect("leaf edge");
    let e2 = augmented.edge_between(v2, l2).expect("leaf edge");
    let filter = EndFilter::edges(&augmented, &[e2]);
    let starts = [e1];
    let query = MidEdgeQuery {
        blocked: &[l1, l2],
        allow_boundary: true,
        ..MidEdgeQuery::new(&starts, &filter, n)
    };
    Ok(query.run(&augmented)?.as_polynomial())
}

/// The three edges of the origin, the usual mid-edge starting set.
pub fn origin_edges(patch: &FinitePatch) -> Vec<EdgeId> {
    patch.incident_edges(patch.origin()).to_vec()
}
