//! Dart-based multigraphs and covering maps.
//!
//! A dart is a directed edge end; a fixed-point-free involution pairs darts
//! into edges, so loops and parallel edges (ubiquitous in quotient graphs of
//! trees) are represented without special cases. A loop is two distinct darts
//! at one vertex.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The dart involution has a fixed point or is not an involution.
    BadInvolution,
    /// A dart references a vertex outside the range.
    DartVertexOutOfRange,
    /// Some vertex has no darts.
    IsolatedVertex(u32),
    /// Maps must assign every vertex and dart.
    MapShape,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::BadInvolution => write!(f, "dart pairing is not a fixed-point-free involution"),
            GraphError::DartVertexOutOfRange => write!(f, "dart attached to a missing vertex"),
            GraphError::IsolatedVertex(v) => write!(f, "vertex {v} has no darts"),
            GraphError::MapShape => write!(f, "map arrays do not match the graphs"),
        }
    }
}

/// A finite multigraph: vertices `0..num_vertices`, darts `0..num_darts`,
/// each dart attached to a vertex and paired with its partner dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DartMultigraph {
    num_vertices: u32,
    dart_vertex: Vec<u32>,
    partner: Vec<u32>,
}

impl DartMultigraph {
    pub fn new(
        num_vertices: u32,
        dart_vertex: Vec<u32>,
        partner: Vec<u32>,
    ) -> Result<Self, GraphError> {
        if partner.len() != dart_vertex.len() {
            return Err(GraphError::BadInvolution);
        }
        let d = dart_vertex.len() as u32;
        for (i, &j) in partner.iter().enumerate() {
            let i = i as u32;
            if j >= d || j == i || partner[j as usize] != i {
                return Err(GraphError::BadInvolution);
            }
        }
        if dart_vertex.iter().any(|&v| v >= num_vertices) {
            return Err(GraphError::DartVertexOutOfRange);
        }
        let mut seen = vec![false; num_vertices as usize];
        for &v in &dart_vertex {
            seen[v as usize] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(GraphError::IsolatedVertex(v as u32));
        }
        Ok(Self { num_vertices, dart_vertex, partner })
    }

    /// A single vertex with `k` loops.
    pub fn bouquet(k: u32) -> Self {
        let darts = 2 * k;
        let dart_vertex = vec![0u32; darts as usize];
        let partner = (0..darts).map(|d| d ^ 1).collect();
        Self::new(1, dart_vertex, partner).expect("bouquet is well formed")
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn num_darts(&self) -> u32 {
        self.dart_vertex.len() as u32
    }

    pub fn num_edges(&self) -> u32 {
        self.num_darts() / 2
    }

    #[inline]
    pub fn dart_vertex(&self, d: u32) -> u32 {
        self.dart_vertex[d as usize]
    }

    #[inline]
    pub fn partner(&self, d: u32) -> u32 {
        self.partner[d as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.dart_vertex.iter().filter(|&&w| w == v).count() as u32
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.num_vertices).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Darts attached to `v`, in dart order.
    pub fn star(&self, v: u32) -> Vec<u32> {
        (0..self.num_darts()).filter(|&d| self.dart_vertex(d) == v).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.num_vertices as usize];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for d in self.star(v) {
                let w = self.dart_vertex(self.partner(d));
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// First Betti number `E - V + 1` of a connected graph: the rank of the
    /// fundamental group.
    pub fn cycle_rank(&self) -> u32 {
        self.num_edges() + 1 - self.num_vertices
    }

    /// Darts of a breadth-first spanning tree rooted at `root` (both darts of
    /// every tree edge are included).
    pub fn spanning_tree_darts(&self, root: u32) -> Vec<bool> {
        let mut in_tree = vec![false; self.num_darts() as usize];
        let mut seen = vec![false; self.num_vertices as usize];
        seen[root as usize] = true;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for d in self.star(v) {
                let w = self.dart_vertex(self.partner(d));
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    in_tree[d as usize] = true;
                    in_tree[self.partner(d) as usize] = true;
                    queue.push(w);
                }
            }
        }
        in_tree
    }
}

/// A vertex-and-dart map between two multigraphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMap {
    pub vertex_map: Vec<u32>,
    pub dart_map: Vec<u32>,
}

impl GraphMap {
    pub fn identity(g: &DartMultigraph) -> Self {
        Self {
            vertex_map: (0..g.num_vertices()).collect(),
            dart_map: (0..g.num_darts()).collect(),
        }
    }

    /// Composition `second ∘ first`.
    pub fn compose(first: &GraphMap, second: &GraphMap) -> Self {
        Self {
            vertex_map: first.vertex_map.iter().map(|&v| second.vertex_map[v as usize]).collect(),
            dart_map: first.dart_map.iter().map(|&d| second.dart_map[d as usize]).collect(),
        }
    }
}

/// Checks that `map` is a covering map `source -> target`: it commutes with
/// the dart-vertex assignment and the involution, and restricts to a
/// bijection on every vertex star.
pub fn is_covering(source: &DartMultigraph, target: &DartMultigraph, map: &GraphMap) -> bool {
    if map.vertex_map.len() != source.num_vertices() as usize
        || map.dart_map.len() != source.num_darts() as usize
    {
        return false;
    }
    if map.vertex_map.iter().any(|&v| v >= target.num_vertices())
        || map.dart_map.iter().any(|&d| d >= target.num_darts())
    {
        return false;
    }
    for d in 0..source.num_darts() {
        let image = map.dart_map[d as usize];
        if target.dart_vertex(image) != map.vertex_map[source.dart_vertex(d) as usize] {
            return false;
        }
        if map.dart_map[source.partner(d) as usize] != target.partner(image) {
            return false;
        }
    }
    // Star bijectivity: the images of the star of v are pairwise distinct and
    // fill the star of the image vertex.
    for v in 0..source.num_vertices() {
        let star = source.star(v);
        let image_vertex = map.vertex_map[v as usize];
        if star.len() != target.star(image_vertex).len() {
            return false;
        }
        let mut images: Vec<u32> = star.iter().map(|&d| map.dart_map[d as usize]).collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != star.len() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bouquet_shape() {
        let b = DartMultigraph::bouquet(2);
        assert_eq!(b.num_vertices(), 1);
        assert_eq!(b.num_darts(), 4);
        assert_eq!(b.degree(0), 4);
        assert!(b.is_connected());
        assert_eq!(b.cycle_rank(), 2);
    }

    #[test]
    fn involution_validation() {
        assert_eq!(
            DartMultigraph::new(1, vec![0, 0], vec![0, 1]),
            Err(GraphError::BadInvolution)
        );
        assert_eq!(
            DartMultigraph::new(2, vec![0, 0], vec![1, 0]),
            Err(GraphError::IsolatedVertex(1))
        );
    }

    #[test]
    fn identity_is_covering() {
        let b = DartMultigraph::bouquet(3);
        assert!(is_covering(&b, &b, &GraphMap::identity(&b)));
    }

    /// Connected double cover of the 2-bouquet with monodromy ((12), (12)).
    pub fn double_cover_of_bouquet2() -> (DartMultigraph, GraphMap) {
        // Vertices 0,1 = the two sheets. Darts (d, sheet) indexed d*2+sheet.
        // Both loops cross between the sheets.
        let dart_vertex = vec![0, 1, 0, 1, 0, 1, 0, 1];
        // Dart (0, s) pairs with (1, s^1); dart (2, s) pairs with (3, s^1).
        let partner = vec![3, 2, 1, 0, 7, 6, 5, 4];
        let x = DartMultigraph::new(2, dart_vertex, partner).unwrap();
        let map = GraphMap {
            vertex_map: vec![0, 0],
            dart_map: vec![0, 0, 1, 1, 2, 2, 3, 3],
        };
        (x, map)
    }

    #[test]
    fn explicit_double_cover_is_covering() {
        let y = DartMultigraph::bouquet(2);
        let (x, map) = double_cover_of_bouquet2();
        assert!(x.is_connected());
        assert!(is_covering(&x, &y, &map));
    }

    #[test]
    fn collapsing_a_loop_is_not_a_covering() {
        // Bouquet of 2 loops mapped onto bouquet of 1 loop: star sizes differ.
        let x = DartMultigraph::bouquet(2);
        let y = DartMultigraph::bouquet(1);
        let map = GraphMap { vertex_map: vec![0], dart_map: vec![0, 1, 0, 1] };
        assert!(!is_covering(&x, &y, &map));
    }
}
