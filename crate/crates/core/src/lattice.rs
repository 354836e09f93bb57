//! Balls of the five Euclidean transitive cubic planar lattices.
//!
//! Each lattice is described as a periodic net: a unit cell holding a few
//! vertices plus a list of bonds `(k, k', di, dj)` joining vertex `k` of cell
//! `(i, j)` to vertex `k'` of cell `(i + di, j + dj)`. The ladder uses the same
//! machinery with `j` pinned to zero. A ball is grown by BFS over the
//! `(i, j, k)` coordinates and then re-indexed densely in BFS order, so the
//! origin (vertex 0 of cell `(0, 0)`) always gets index 0.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{FinitePatch, VertexId};

/// Size of a face around a vertex; `Infinite` for the ladder's outer faces.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceSize {
    Finite(u32),
    Infinite,
}

impl FaceSize {
    fn reciprocal(self) -> Ratio<i64> {
        match self {
            FaceSize::Finite(a) => Ratio::new(1, a as i64),
            FaceSize::Infinite => Ratio::from_integer(0),
        }
    }
}

impl fmt::Display for FaceSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceSize::Finite(a) => write!(f, "{a}"),
            FaceSize::Infinite => f.write_str("inf"),
        }
    }
}

/// Face sizes `<a, b, c>` around a vertex, stored sorted.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeVector([FaceSize; 3]);

impl TypeVector {
    pub fn new(a: FaceSize, b: FaceSize, c: FaceSize) -> Result<Self> {
        let mut faces = [a, b, c];
        for face in faces {
            if let FaceSize::Finite(s) = face {
                if s < 3 {
                    return Err(Error::InvalidFaceSize(s));
                }
            }
        }
        faces.sort();
        Ok(TypeVector(faces))
    }

    pub fn finite(a: u32, b: u32, c: u32) -> Result<Self> {
        Self::new(FaceSize::Finite(a), FaceSize::Finite(b), FaceSize::Finite(c))
    }

    pub fn faces(&self) -> [FaceSize; 3] {
        self.0
    }

    /// `1/a + 1/b + 1/c` with `1/inf = 0`.
    pub fn angle_sum(&self) -> Ratio<i64> {
        self.0.iter().map(|f| f.reciprocal()).sum()
    }

    pub fn hexagonal() -> Self {
        Self::finite(6, 6, 6).unwrap()
    }

    pub fn square_octagon() -> Self {
        Self::finite(4, 8, 8).unwrap()
    }

    pub fn ladder() -> Self {
        Self::new(FaceSize::Finite(4), FaceSize::Finite(4), FaceSize::Infinite).unwrap()
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for TypeVector {
    type Err = Error;

    /// Parses `a,b,c`, with `inf` (or `∞`) for an infinite face.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::TypeVectorSyntax(s.to_string()));
        }
        let mut faces = [FaceSize::Infinite; 3];
        for (slot, part) in faces.iter_mut().zip(&parts) {
            *slot = match *part {
                "inf" | "∞" => FaceSize::Infinite,
                n => FaceSize::Finite(
                    n.parse()
                        .map_err(|_| Error::TypeVectorSyntax(s.to_string()))?,
                ),
            };
        }
        TypeVector::new(faces[0], faces[1], faces[2])
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// Spherical, Euclidean or hyperbolic according as the angle sum exceeds,
/// equals or falls below one half (exact rational comparison).
pub fn classify(tv: &TypeVector) -> Geometry {
    let half = Ratio::new(1, 2);
    match tv.angle_sum().cmp(&half) {
        std::cmp::Ordering::Greater => Geometry::Spherical,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Less => Geometry::Hyperbolic,
    }
}

/// Periodic description of a lattice.
struct Net {
    cell_size: u8,
    /// `(k, k', di, dj)`: vertex `k` at cell `c` joins vertex `k'` at `c + (di, dj)`.
    bonds: &'static [(u8, u8, i32, i32)],
}

// Unit cells with unit edge length, bonds found by distance from
// explicit coordinates. Honeycomb: A=(0,0), B=(0,1), a1=(√3,0), a2=(√3/2,3/2).
const HEXAGONAL: Net = Net {
    cell_size: 2,
    bonds: &[(0, 1, 0, -1), (0, 1, 0, 0), (0, 1, 1, -1)],
};

// Each honeycomb vertex becomes a triangle (vertices 0..3 from A, 3..6 from B).
const TRUNCATED_HEXAGONAL: Net = Net {
    cell_size: 6,
    bonds: &[
        (0, 1, 0, 0),
        (0, 2, 0, 0),
        (0, 4, 0, -1),
        (1, 2, 0, 0),
        (1, 5, 1, -1),
        (2, 3, 0, 0),
        (3, 4, 0, 0),
        (3, 5, 0, 0),
        (4, 5, 0, 0),
    ],
};

// Each honeycomb vertex becomes a hexagon, each honeycomb edge a square.
const TRUNCATED_TRIHEXAGONAL: Net = Net {
    cell_size: 12,
    bonds: &[
        (0, 1, 0, 0),
        (0, 5, 0, 0),
        (0, 9, 0, -1),
        (1, 2, 0, 0),
        (1, 8, 0, -1),
        (2, 3, 0, 0),
        (2, 11, 1, -1),
        (3, 4, 0, 0),
        (3, 10, 1, -1),
        (4, 5, 0, 0),
        (4, 7, 0, 0),
        (5, 6, 0, 0),
        (6, 7, 0, 0),
        (6, 11, 0, 0),
        (7, 8, 0, 0),
        (8, 9, 0, 0),
        (9, 10, 0, 0),
        (10, 11, 0, 0),
    ],
};

// A diamond (N, E, S, W) at every site of Z².
const TRUNCATED_SQUARE: Net = Net {
    cell_size: 4,
    bonds: &[
        (0, 1, 0, 0),
        (0, 2, 0, 1),
        (0, 3, 0, 0),
        (1, 2, 0, 0),
        (1, 3, 1, 0),
        (2, 3, 0, 0),
    ],
};

// Two rails (k = 0, 1) joined by rungs.
const LADDER: Net = Net {
    cell_size: 2,
    bonds: &[(0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)],
};

type Site = (i32, i32, u8);

impl Net {
    fn for_type(tv: &TypeVector) -> Result<&'static Net> {
        use FaceSize::{Finite as F, Infinite};
        Ok(match tv.faces() {
            [F(6), F(6), F(6)] => &HEXAGONAL,
            [F(3), F(12), F(12)] => &TRUNCATED_HEXAGONAL,
            [F(4), F(8), F(8)] => &TRUNCATED_SQUARE,
            [F(4), F(6), F(12)] => &TRUNCATED_TRIHEXAGONAL,
            [F(4), F(4), Infinite] => &LADDER,
            _ => return Err(Error::UnsupportedTypeVector(tv.to_string())),
        })
    }

    fn neighbours(&self, (i, j, k): Site) -> impl Iterator<Item = Site> + '_ {
        // a bond with a == b (ladder rails) contributes in both directions
        self.bonds.iter().flat_map(move |&(a, b, di, dj)| {
            let fwd = (a == k).then_some((i + di, j + dj, b));
            let back = (b == k).then_some((i - di, j - dj, a));
            fwd.into_iter().chain(back)
        })
    }
}

/// Ball of graph radius `radius` around the origin of the lattice with type
/// vector `tv`.
///
/// Boundary depths are exact: a vertex is on the boundary when one of its
/// lattice neighbours lies outside the ball. Bipartite lattices get the BFS
/// 2-colouring with the origin black.
pub fn generate_lattice(tv: &TypeVector, radius: u32) -> Result<FinitePatch> {
    if radius == 0 {
        return Err(Error::InvalidRadius);
    }
    let net = Net::for_type(tv)?;
    debug_assert!(net.bonds.iter().all(|b| b.0 < net.cell_size && b.1 < net.cell_size));

    let origin: Site = (0, 0, 0);
    let mut index: HashMap<Site, VertexId> = HashMap::from([(origin, 0)]);
    let mut sites = vec![origin];
    let mut dist = vec![0u32];
    let mut queue = VecDeque::from([origin]);
    while let Some(s) = queue.pop_front() {
        let d = dist[index[&s] as usize];
        if d == radius {
            continue;
        }
        for t in net.neighbours(s) {
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(t) {
                slot.insert(sites.len() as VertexId);
                sites.push(t);
                dist.push(d + 1);
                queue.push_back(t);
            }
        }
    }

    let mut edges = Vec::new();
    let mut incomplete = vec![false; sites.len()];
    for (u, &s) in sites.iter().enumerate() {
        for t in net.neighbours(s) {
            match index.get(&t) {
                Some(&v) if (u as VertexId) < v => edges.push((u as VertexId, v)),
                Some(_) => {}
                None => incomplete[u] = true,
            }
        }
    }

    let patch = FinitePatch::new(sites.len(), &edges, None, 0)?.with_boundary(&incomplete);
    Ok(match patch.two_colouring() {
        Ok(colours) => patch.with_colours(colours)?,
        Err(_) => patch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Depth;

    #[test]
    fn classification() {
        assert_eq!(classify(&TypeVector::hexagonal()), Geometry::Euclidean);
        assert_eq!(classify(&TypeVector::ladder()), Geometry::Euclidean);
        assert_eq!(
            classify(&TypeVector::finite(7, 7, 7).unwrap()),
            Geometry::Hyperbolic
        );
        assert_eq!(
            classify(&TypeVector::finite(3, 3, 3).unwrap()),
            Geometry::Spherical
        );
        assert_eq!(
            classify(&TypeVector::finite(3, 7, 42).unwrap()),
            Geometry::Euclidean
        );
    }

    #[test]
    fn parsing() {
        let tv: TypeVector = "12,3,12".parse().unwrap();
        assert_eq!(tv, TypeVector::finite(3, 12, 12).unwrap());
        assert_eq!(tv.to_string(), "<3,12,12>");
        assert_eq!("4,inf,4".parse::<TypeVector>().unwrap(), TypeVector::ladder());
        assert!(matches!(
            "2,6,6".parse::<TypeVector>(),
            Err(Error::InvalidFaceSize(2))
        ));
        assert!("6,6".parse::<TypeVector>().is_err());
    }

    #[test]
    fn unsupported_types() {
        for tv in ["5,5,5", "3,7,42", "7,7,7"] {
            let tv: TypeVector = tv.parse().unwrap();
            assert!(matches!(
                generate_lattice(&tv, 2),
                Err(Error::UnsupportedTypeVector(_))
            ));
        }
        assert!(matches!(
            generate_lattice(&TypeVector::hexagonal(), 0),
            Err(Error::InvalidRadius)
        ));
    }

    #[test]
    fn hexagonal_radius_twelve_horizon() {
        let p = generate_lattice(&TypeVector::hexagonal(), 12).unwrap();
        assert_eq!(p.safe_walk_length(), Depth::Finite(11));
        assert!(p.colours().is_some());
    }

    #[test]
    fn truncated_hexagonal_is_not_bipartite() {
        let p = generate_lattice(&TypeVector::finite(3, 12, 12).unwrap(), 4).unwrap();
        assert!(p.colours().is_none());
        assert!(p.two_colouring().is_err());
    }
}
