//! Reference implementations used as oracles. Everything here is written
//! from the definitions, as plainly as possible, and shares no code with the
//! library beyond reading a patch's vertex and edge lists.

#![allow(dead_code)]

use std::collections::VecDeque;

use sawgadget::{FinitePatch, Gadget};

pub type Adj = Vec<Vec<usize>>;

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adj {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn patch_edges(p: &FinitePatch) -> Vec<(usize, usize)> {
    p.edges().iter().map(|&(u, v)| (u as usize, v as usize)).collect()
}

pub fn patch_adj(p: &FinitePatch) -> Adj {
    adjacency(p.vertex_count(), &patch_edges(p))
}

/// sigma_n(origin) for n = 0..=nmax, by extending a path one vertex at a
/// time and scanning it for repeats.
pub fn naive_sigma(adj: &Adj, origin: usize, nmax: usize) -> Vec<u64> {
    fn go(adj: &Adj, path: &mut Vec<usize>, nmax: usize, out: &mut [u64]) {
        out[path.len() - 1] += 1;
        if path.len() - 1 == nmax {
            return;
        }
        let here = *path.last().unwrap();
        for &w in &adj[here] {
            if !path.contains(&w) {
                path.push(w);
                go(adj, path, nmax, out);
                path.pop();
            }
        }
    }
    let mut out = vec![0; nmax + 1];
    go(adj, &mut vec![origin], nmax, &mut out);
    out
}

/// Sum of squared BFS distances of walk endpoints, by length.
pub fn naive_moments(adj: &Adj, origin: usize, nmax: usize) -> Vec<u64> {
    let dist = bfs(adj, &[origin]);
    fn go(adj: &Adj, dist: &[Option<usize>], path: &mut Vec<usize>, nmax: usize, out: &mut [u64]) {
        let here = *path.last().unwrap();
        let d = dist[here].unwrap() as u64;
        out[path.len() - 1] += d * d;
        if path.len() - 1 == nmax {
            return;
        }
        for &w in &adj[here] {
            if !path.contains(&w) {
                path.push(w);
                go(adj, dist, path, nmax, out);
                path.pop();
            }
        }
    }
    let mut out = vec![0; nmax + 1];
    go(adj, &dist, &mut vec![origin], nmax, &mut out);
    out
}

/// A mid-edge walk as an explicit object: start edge, vertices, end edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub vertices: Vec<usize>,
    pub end: usize,
}

/// Every mid-edge self-avoiding walk, found as a self-avoiding path in the
/// subdivided graph (one node per vertex, one per edge midpoint) that starts
/// at a start midpoint and stops at any midpoint accepted by `end_ok`.
/// Vertex nodes in `blocked` are never entered.
pub fn subdivided_walks(
    n: usize,
    edges: &[(usize, usize)],
    starts: &[usize],
    end_ok: &dyn Fn(usize) -> bool,
    blocked: &[usize],
    max_vertices: usize,
) -> Vec<Walk> {
    // node ids: vertices 0..n, midpoints n..n+m
    let mut sub = vec![Vec::new(); n + edges.len()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        for w in [u, v] {
            sub[w].push(n + i);
            sub[n + i].push(w);
        }
    }
    struct Search<'a> {
        n: usize,
        sub: &'a Adj,
        end_ok: &'a dyn Fn(usize) -> bool,
        blocked: &'a [usize],
        max_vertices: usize,
        found: Vec<Walk>,
    }
    impl Search<'_> {
        fn go(&mut self, path: &mut Vec<usize>) {
            let here = *path.last().unwrap();
            let vertices: Vec<usize> = path.iter().copied().filter(|&x| x < self.n).collect();
            if here >= self.n {
                if (self.end_ok)(here - self.n) {
                    self.found.push(Walk {
                        start: path[0] - self.n,
                        vertices: vertices.clone(),
                        end: here - self.n,
                    });
                }
                if vertices.len() == self.max_vertices {
                    return;
                }
            }
            for &next in &self.sub[here] {
                if path.contains(&next) || self.blocked.contains(&next) {
                    continue;
                }
                path.push(next);
                self.go(path);
                path.pop();
            }
        }
    }
    let mut search = Search {
        n,
        sub: &sub,
        end_ok,
        blocked,
        max_vertices,
        found: Vec::new(),
    };
    for &s in starts {
        search.go(&mut vec![n + s]);
    }
    search.found
}

pub fn count_by_len(walks: &[Walk], max_vertices: usize) -> Vec<u64> {
    let mut out = vec![0; max_vertices + 1];
    for w in walks {
        out[w.vertices.len()] += 1;
    }
    out
}

/// Two-port series of a gadget: self-avoiding paths in the subdivided gadget
/// from an external midpoint hanging off port `a` to one hanging off `b`.
pub fn naive_two_port(g: &Gadget, a: usize, b: usize) -> Vec<u64> {
    let n = g.vertex_count();
    let ports = g.ports().map(|p| p as usize);
    let mut edges = patch_edges(g.graph());
    // external edges run to fresh, blocked leaves
    edges.push((ports[a], n));
    edges.push((ports[b], n + 1));
    let (ea, eb) = (edges.len() - 2, edges.len() - 1);
    let walks = subdivided_walks(n + 2, &edges, &[ea], &|e| e == eb, &[n, n + 1], n);
    count_by_len(&walks, n)
}

pub fn bfs(adj: &Adj, sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(dist[u].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All automorphisms by trying every permutation.
pub fn brute_automorphisms(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if (0..n).all(|u| (0..n).all(|v| adj[u][v] == adj[p[u]][p[v]])) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// integer polynomials on plain vectors

pub fn pmul(a: &[i128], b: &[i128], max_deg: usize) -> Vec<i128> {
    let mut out = vec![0; max_deg + 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if i + j <= max_deg {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `outer(inner(x))` through `max_deg`, by summing powers.
pub fn pcompose(outer: &[i128], inner: &[i128], max_deg: usize) -> Vec<i128> {
    let mut out = vec![0; max_deg + 1];
    let mut power = vec![0; max_deg + 1];
    power[0] = 1;
    for &c in outer {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += c * p;
        }
        power = pmul(&power, inner, max_deg);
    }
    out
}

pub fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn as_i128(p: &sawgadget::CountPolynomial) -> Vec<i128> {
    p.coeffs().iter().map(|c| c.to_string().parse().unwrap()).collect()
}

// ---------------------------------------------------------------------------
// lattices from plane geometry

/// Points of a unit-edge planar tiling near the origin, joined when exactly
/// one edge length apart.
pub struct Geometric {
    pub points: Vec<(f64, f64)>,
    pub adj: Adj,
}

fn join_unit(points: Vec<(f64, f64)>, edge: f64) -> Geometric {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = ((points[i].0 - points[j].0).powi(2) + (points[i].1 - points[j].1).powi(2)).sqrt();
            if (d - edge).abs() < 1e-6 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Geometric { points, adj }
}

fn within(points: Vec<(f64, f64)>, r: f64) -> Vec<(f64, f64)> {
    points.into_iter().filter(|p| p.0.hypot(p.1) <= r).collect()
}

fn honeycomb_points(extent: i32) -> Vec<(f64, f64)> {
    let s3 = 3f64.sqrt();
    let mut pts = Vec::new();
    for i in -extent..=extent {
        for j in -extent..=extent {
            let (x, y) = (i as f64 * s3 + j as f64 * s3 / 2.0, j as f64 * 1.5);
            pts.push((x, y));
            pts.push((x, y + 1.0));
        }
    }
    pts
}

/// The tiling named by its face sizes, cut to a disc of radius `r` around
/// a vertex at the origin.
pub fn geometric_lattice(name: &str, r: f64) -> Geometric {
    let extent = (r as i32) + 4;
    match name {
        "6,6,6" => join_unit(within(honeycomb_points(extent), r), 1.0),
        "3,12,12" => {
            // shrink each honeycomb vertex into a triangle
            let hex = join_unit(within(honeycomb_points(extent), r + 2.0), 1.0);
            let t = 1.0 / (2.0 + 3f64.sqrt());
            let mut pts = Vec::new();
            for (v, nb) in hex.adj.iter().enumerate() {
                if nb.len() < 3 {
                    continue;
                }
                let (vx, vy) = hex.points[v];
                for &u in nb {
                    let (ux, uy) = hex.points[u];
                    pts.push((vx + t * (ux - vx), vy + t * (uy - vy)));
                }
            }
            // recentre on a vertex
            let (ox, oy) = pts
                .iter()
                .copied()
                .min_by(|a, b| a.0.hypot(a.1).total_cmp(&b.0.hypot(b.1)))
                .unwrap();
            let pts = pts.into_iter().map(|(x, y)| (x - ox, y - oy)).collect();
            join_unit(within(pts, r), 1.0 - 2.0 * t)
        }
        "4,6,12" => {
            // a hexagon on every honeycomb vertex, squares across the
            // honeycomb edges
            let d = 1.0 + 3f64.sqrt();
            let mut pts = Vec::new();
            for (cx, cy) in honeycomb_points(extent) {
                for k in 0..6 {
                    let th = (60.0 * k as f64).to_radians();
                    pts.push((d * cx + th.cos(), d * cy + th.sin()));
                }
            }
            let pts = pts.into_iter().map(|(x, y)| (x - 1.0, y)).collect();
            join_unit(within(pts, r), 1.0)
        }
        "4,8,8" => {
            let l = 1.0 + 2f64.sqrt();
            let h = 2f64.sqrt() / 2.0;
            let mut pts = Vec::new();
            for i in -extent..=extent {
                for j in -extent..=extent {
                    let (cx, cy) = (l * i as f64, l * j as f64);
                    pts.extend([(cx + h, cy), (cx - h, cy), (cx, cy + h), (cx, cy - h)]);
                }
            }
            let pts = pts.into_iter().map(|(x, y)| (x - h, y)).collect();
            join_unit(within(pts, r), 1.0)
        }
        "4,4,inf" => {
            let mut pts = Vec::new();
            for i in -(2 * extent)..=2 * extent {
                pts.push((i as f64, 0.0));
                pts.push((i as f64, 1.0));
            }
            join_unit(within(pts, r), 1.0)
        }
        other => panic!("no geometric model for {other}"),
    }
}

/// Isomorphism invariants of a graph ball.
#[derive(Debug, PartialEq, Eq)]
pub struct BallProfile {
    pub shells: Vec<usize>,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub depths: Vec<usize>,
}

/// Ball of graph radius `radius` around `origin` in a lattice of degree 3;
/// vertices with fewer than three neighbours inside are its boundary.
pub fn ball_profile(adj: &Adj, origin: usize, radius: usize) -> BallProfile {
    let dist = bfs(adj, &[origin]);
    let keep: Vec<usize> = (0..adj.len())
        .filter(|&v| dist[v].is_some_and(|d| d <= radius))
        .collect();
    let mut index = vec![usize::MAX; adj.len()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let mut edges = Vec::new();
    for &v in &keep {
        for &w in &adj[v] {
            if index[w] != usize::MAX && v < w {
                edges.push((index[v], index[w]));
            }
        }
    }
    let ball = adjacency(keep.len(), &edges);
    profile_of(&ball, index[origin], &|v| ball[v].len() < 3)
}

pub fn profile_of(adj: &Adj, origin: usize, incomplete: &dyn Fn(usize) -> bool) -> BallProfile {
    let dist = bfs(adj, &[origin]);
    let mut shells = vec![0; dist.iter().flatten().max().unwrap() + 1];
    for d in dist.iter().flatten() {
        shells[*d] += 1;
    }
    let sources: Vec<usize> = (0..adj.len()).filter(|&v| incomplete(v)).collect();
    let mut depths: Vec<usize> = bfs(adj, &sources).into_iter().map(|d| d.unwrap()).collect();
    depths.sort_unstable();
    let mut degrees: Vec<usize> = adj.iter().map(Vec::len).collect();
    degrees.sort_unstable();
    BallProfile {
        shells,
        edges: adj.iter().map(Vec::len).sum::<usize>() / 2,
        degrees,
        depths,
    }
}

/// The same invariants read off a generated patch.
pub fn patch_profile(p: &FinitePatch) -> BallProfile {
    let adj = patch_adj(p);
    profile_of(&adj, p.origin() as usize, &|v| {
        p.depth(v as u32) == sawgadget::Depth::Finite(0)
    })
}

pub fn origin_of(g: &Geometric) -> usize {
    (0..g.points.len())
        .min_by(|&a, &b| {
            let (pa, pb) = (g.points[a], g.points[b]);
            pa.0.hypot(pa.1).total_cmp(&pb.0.hypot(pb.1))
        })
        .unwrap()
}

// ---------------------------------------------------------------------------
// small named graphs

pub fn petersen() -> (usize, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    (10, e)
}

pub fn prism(k: usize) -> (usize, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, (i + 1) % k));
        e.push((k + i, k + (i + 1) % k));
        e.push((i, k + i));
    }
    (2 * k, e)
}

pub fn heawood() -> (usize, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    for i in 0..14 {
        e.push((i, (i + 1) % 14));
    }
    for i in (0..14).step_by(2) {
        e.push((i, (i + 5) % 14));
    }
    (14, e)
}

pub fn complete(n: usize) -> (usize, Vec<(usize, usize)>) {
    let e = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (n, e)
}

pub fn grid(w: usize, h: usize) -> (usize, Vec<(usize, usize)>) {
    let mut e = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                e.push((v, v + 1));
            }
            if y + 1 < h {
                e.push((v, v + w));
            }
        }
    }
    (w * h, e)
}

pub fn to_patch(n: usize, edges: &[(usize, usize)]) -> FinitePatch {
    let e: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (u as u32, v as u32)).collect();
    FinitePatch::new(n, &e, None, 0).unwrap()
}
