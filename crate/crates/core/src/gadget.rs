//! Three-port gadgets: the replacement graphs of a local transformation.
//!
//! A gadget is a finite connected graph with three distinguished ports. It
//! is admissible when some group of automorphisms fixes the port set and acts
//! transitively on it; [`validate_gadget`] finds all automorphisms by
//! backtracking and checks exactly that.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, FinitePatch, VertexId};
use crate::poly::CountPolynomial;

pub type Permutation = Vec<VertexId>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GadgetJson", try_from = "GadgetJson")]
pub struct Gadget {
    graph: FinitePatch,
    ports: [VertexId; 3],
    witnesses: Vec<Permutation>,
}

impl Gadget {
    pub fn new(graph: FinitePatch, ports: [VertexId; 3]) -> Result<Self> {
        let n = graph.vertex_count();
        for &p in &ports {
            if p as usize >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: p,
                    count: n,
                });
            }
        }
        if ports[0] == ports[1] || ports[1] == ports[2] || ports[0] == ports[2] {
            return Err(Error::PortsNotDistinct);
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let graph = graph.with_boundary(&vec![false; n]);
        Ok(Gadget {
            graph,
            ports,
            witnesses: Vec::new(),
        })
    }

    /// Attach a known automorphism; validation checks it independently.
    pub fn with_witness(mut self, perm: Permutation) -> Self {
        self.witnesses.push(perm);
        self
    }

    pub fn graph(&self) -> &FinitePatch {
        &self.graph
    }

    pub fn ports(&self) -> [VertexId; 3] {
        self.ports
    }

    pub fn witnesses(&self) -> &[Permutation] {
        &self.witnesses
    }

    /// Same graph and witnesses, ports reordered.
    pub fn with_port_order(&self, ports: [VertexId; 3]) -> Result<Self> {
        let mut sorted_new = ports;
        let mut sorted_old = self.ports;
        sorted_new.sort_unstable();
        sorted_old.sort_unstable();
        if sorted_new != sorted_old {
            return Err(Error::InvalidGadget("port reorder must permute the ports".into()));
        }
        Ok(Gadget {
            ports,
            ..self.clone()
        })
    }

    /// `N`: number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `D`: maximum degree inside the gadget.
    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    /// `Δ`: diameter of the gadget.
    pub fn diameter(&self) -> u32 {
        self.graph.diameter()
    }

    /// The gadget with a pendant leaf hung off each port, as it sits inside a
    /// cubic host. Leaves are boundary vertices (depth 0).
    pub fn with_pendants(&self) -> Pendants {
        let n = self.vertex_count() as VertexId;
        let mut edges = self.graph.edges().to_vec();
        edges.extend(self.ports.iter().enumerate().map(|(i, &p)| (p, n + i as VertexId)));
        let mut incomplete = vec![false; n as usize + 3];
        incomplete[n as usize..].fill(true);
        let patch = FinitePatch::new(n as usize + 3, &edges, None, self.ports[0])
            .expect("pendant attachment keeps the graph simple")
            .with_boundary(&incomplete);
        let leaves = [n, n + 1, n + 2];
        let pendant_edges = [0, 1, 2].map(|i| {
            patch
                .edge_between(self.ports[i], leaves[i])
                .expect("pendant edge exists")
        });
        Pendants {
            patch,
            leaves,
            pendant_edges,
        }
    }
}

/// A gadget with one external edge per port.
#[derive(Clone, Debug)]
pub struct Pendants {
    pub patch: FinitePatch,
    pub leaves: [VertexId; 3],
    pub pendant_edges: [EdgeId; 3],
}

#[derive(Serialize, Deserialize)]
struct GadgetJson {
    #[serde(flatten)]
    graph: FinitePatch,
    ports: [VertexId; 3],
}

impl From<Gadget> for GadgetJson {
    fn from(g: Gadget) -> Self {
        GadgetJson {
            graph: g.graph,
            ports: g.ports,
        }
    }
}

impl TryFrom<GadgetJson> for Gadget {
    type Error = Error;

    fn try_from(j: GadgetJson) -> Result<Self> {
        Gadget::new(j.graph, j.ports)
    }
}

/// Outcome of [`validate_gadget`].
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub max_degree: usize,
    pub diameter: u32,
    pub automorphism_count: usize,
    /// Indices into `automorphisms` of the maps fixing the port set.
    pub port_stabiliser: Vec<usize>,
    pub port_transitive: bool,
    /// A transitive group on three points contains a 3-cycle and hence is
    /// transitive on unordered pairs, so `g(x)` is the same for every port pair.
    pub pair_symmetric: bool,
    pub witnesses_valid: bool,
    pub automorphisms: Vec<Permutation>,
}

impl ValidationReport {
    /// Port transitive, with every recorded witness a genuine automorphism.
    pub fn accepted(&self) -> bool {
        self.port_transitive && self.witnesses_valid
    }
}

pub fn validate_gadget(g: &Gadget) -> Result<ValidationReport> {
    let ports = g.ports;
    if ports[0] == ports[1] || ports[1] == ports[2] || ports[0] == ports[2] {
        return Err(Error::PortsNotDistinct);
    }
    if !g.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let automorphisms = automorphisms(&g.graph);
    let port_stabiliser: Vec<usize> = automorphisms
        .iter()
        .enumerate()
        .filter(|(_, a)| ports.iter().all(|&p| ports.contains(&a[p as usize])))
        .map(|(i, _)| i)
        .collect();
    let orbit: Vec<VertexId> = port_stabiliser
        .iter()
        .map(|&i| automorphisms[i][ports[0] as usize])
        .collect();
    let port_transitive = ports.iter().all(|p| orbit.contains(p));
    let witnesses_valid = g.witnesses.iter().all(|w| is_automorphism(&g.graph, w));
    Ok(ValidationReport {
        vertex_count: g.vertex_count(),
        max_degree: g.max_degree(),
        diameter: g.diameter(),
        automorphism_count: automorphisms.len(),
        port_stabiliser,
        port_transitive,
        pair_symmetric: port_transitive,
        witnesses_valid,
        automorphisms,
    })
}

pub fn is_automorphism(graph: &FinitePatch, perm: &[VertexId]) -> bool {
    let n = graph.vertex_count();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
            return false;
        }
    }
    graph
        .edges()
        .iter()
        .all(|&(u, v)| graph.edge_between(perm[u as usize], perm[v as usize]).is_some())
}

/// All automorphisms of a small graph.
///
/// Vertices are assigned images in BFS order, so every vertex after the
/// first of its component has an already-mapped neighbour and its image must
/// be a neighbour of that neighbour's image. Candidates must also match
/// degree and sorted neighbour-degree signature, and preserve adjacency and
/// non-adjacency against every earlier assignment.
pub fn automorphisms(graph: &FinitePatch) -> Vec<Permutation> {
    let n = graph.vertex_count();
    if n == 0 {
        return vec![Vec::new()];
    }
    let signature: Vec<(usize, Vec<usize>)> = (0..n as VertexId)
        .map(|v| {
            let mut nd: Vec<usize> = graph.neighbours(v).iter().map(|&w| graph.degree(w)).collect();
            nd.sort_unstable();
            (graph.degree(v), nd)
        })
        .collect();

    let mut order = Vec::with_capacity(n);
    let mut anchor = vec![None; n];
    let mut placed = vec![false; n];
    for root in 0..n as VertexId {
        if placed[root as usize] {
            continue;
        }
        placed[root as usize] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in graph.neighbours(u) {
                if !placed[w as usize] {
                    placed[w as usize] = true;
                    anchor[w as usize] = Some(u);
                    order.push(w);
                }
            }
        }
    }

    let mut search = AutSearch {
        graph,
        signature: &signature,
        order: &order,
        anchor: &anchor,
        image: vec![VertexId::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.extend(0);
    search.found
}

struct AutSearch<'a> {
    graph: &'a FinitePatch,
    signature: &'a [(usize, Vec<usize>)],
    order: &'a [VertexId],
    anchor: &'a [Option<VertexId>],
    image: Vec<VertexId>,
    used: Vec<bool>,
    found: Vec<Permutation>,
}

impl AutSearch<'_> {
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found.push(self.image.clone());
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<VertexId> = match self.anchor[v as usize] {
            Some(a) => self.graph.neighbours(self.image[a as usize]).to_vec(),
            None => (0..self.graph.vertex_count() as VertexId).collect(),
        };
        for c in candidates {
            if self.used[c as usize] || self.signature[c as usize] != self.signature[v as usize] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let iu = self.image[u as usize];
                self.graph.edge_between(v, u).is_some() == self.graph.edge_between(c, iu).is_some()
            });
            if !consistent {
                continue;
            }
            self.image[v as usize] = c;
            self.used[c as usize] = true;
            self.extend(depth + 1);
            self.used[c as usize] = false;
            self.image[v as usize] = VertexId::MAX;
        }
    }
}

/// `K_N` with the first three vertices as ports.
pub fn complete_gadget(n: usize) -> Result<Gadget> {
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    let edges: Vec<_> = (0..n as VertexId)
        .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
        .collect();
    let graph = FinitePatch::new(n, &edges, None, 0)?;
    let mut rotate: Permutation = (0..n as VertexId).collect();
    rotate[..3].copy_from_slice(&[1, 2, 0]);
    Ok(Gadget::new(graph, [0, 1, 2])?.with_witness(rotate))
}

/// The triangle gadget.
pub fn fisher() -> Gadget {
    complete_gadget(3).expect("N = 3 is valid")
}

/// Closed form of the `K_N` two-port series:
/// `sum_{m=2}^{N} (N-2)!/(N-m)! x^m`.
pub fn kn_genfun_closed_form(n: usize) -> Result<CountPolynomial> {
    if n < 3 {
        return Err(Error::NTooSmall(n));
    }
    let mut coeffs = vec![BigUint::default(); n + 1];
    let mut falling = BigUint::from(1u32);
    for m in 2..=n {
        coeffs[m] = falling.clone();
        // a_{m+1} = a_m * (N - m)
        falling *= BigUint::from(n - m);
    }
    Ok(CountPolynomial::new(coeffs))
}

/// Three copies of `h` glued in a cycle, `v2` of copy `i` identified with
/// `v1` of copy `i + 1`. Ports are the identified vertices (indices 0, 1, 2);
/// copy `i` joins port `i` to port `i + 1`. The copy rotation is attached as
/// a witness automorphism.
pub fn generalized_fisher(h: &FinitePatch, v1: VertexId, v2: VertexId) -> Result<Gadget> {
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
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let inner = n as VertexId - 2;
    let rank = |x: VertexId| x - (x > v1) as VertexId - (x > v2) as VertexId;
    let place = |copy: VertexId, x: VertexId| -> VertexId {
        if x == v1 {
            copy
        } else if x == v2 {
            (copy + 1) % 3
        } else {
            3 + copy * inner + rank(x)
        }
    };
    let total = 3 * n - 3;
    let edges: Vec<_> = (0..3)
        .flat_map(|c| h.edges().iter().map(move |&(a, b)| (place(c, a), place(c, b))))
        .collect();
    let graph = FinitePatch::new(total, &edges, None, 0)?;
    let rotate: Permutation = (0..total as VertexId)
        .map(|v| {
            if v < 3 {
                (v + 1) % 3
            } else {
                let (copy, r) = ((v - 3) / inner, (v - 3) % inner);
                3 + ((copy + 1) % 3) * inner + r
            }
        })
        .collect();
    Ok(Gadget::new(graph, [0, 1, 2])?.with_witness(rotate))
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<FinitePatch> {
    let edges: Vec<_> = (1..n as VertexId).map(|v| (v - 1, v)).collect();
    FinitePatch::new(n, &edges, None, 0)
}

/// Cycle on `n >= 3` vertices in cyclic order.
pub fn cycle_graph(n: usize) -> Result<FinitePatch> {
    let edges: Vec<_> = (0..n as VertexId).map(|v| (v, (v + 1) % n as VertexId)).collect();
    FinitePatch::new(n, &edges, None, 0)
}

/// The gadget of the composite transformation: `inner` applied at every
/// vertex of `outer`, whose vertices must be cubic once the three external
/// edges are counted.
pub fn compose_gadgets(outer: &Gadget, inner: &Gadget) -> Result<Gadget> {
    let pend = outer.with_pendants();
    let tp = crate::transform::transform_all(&pend.patch, inner)?;
    // the rewritten graph minus the three leaves is the composite gadget
    let leaves: Vec<VertexId> = pend
        .leaves
        .iter()
        .map(|&l| tp.untouched_image(l).expect("leaves are never replaced"))
        .collect();
    let keep: Vec<VertexId> = (0..tp.patch.vertex_count() as VertexId)
        .filter(|v| !leaves.contains(v))
        .collect();
    let mut relabel = vec![VertexId::MAX; tp.patch.vertex_count()];
    for (i, &v) in keep.iter().enumerate() {
        relabel[v as usize] = i as VertexId;
    }
    let edges: Vec<_> = tp
        .patch
        .edges()
        .iter()
        .filter(|(u, v)| !leaves.contains(u) && !leaves.contains(v))
        .map(|&(u, v)| (relabel[u as usize], relabel[v as usize]))
        .collect();
    let ports = [0, 1, 2].map(|i| {
        let leaf = leaves[i];
        let port = tp.patch.neighbours(leaf)[0];
        relabel[port as usize]
    });
    Gadget::new(FinitePatch::new(keep.len(), &edges, None, 0)?, ports)
}
