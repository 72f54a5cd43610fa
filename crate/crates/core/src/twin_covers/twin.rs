//! Twin covers of a pointed base graph and their classification.
//!
//! A twin cover is a connected pointed graph with two covering maps of equal
//! degree to the base. The first map is pointed; the second is unconstrained.
//! Connected pointed covers are rigid (the only pointed deck transformation
//! is the identity), so an isomorphism of twin covers over the same pointed
//! first map is unique when it exists, and isomorphism classes of twin covers
//! are exactly pairs (pointed cover class, second map).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::enumerate::{enumerate_pointed_covers, enumerate_second_covers};
use super::graph::{is_covering, DartMultigraph, GraphMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwinError {
    /// One of the two maps fails the covering check.
    NotCovering,
    /// The first map does not send the basepoint to the base's basepoint.
    BasepointMismatch,
    /// The vertex count of the cover is not a multiple of the base's.
    DegreeMismatch,
    /// A base vertex has degree below 3.
    BaseDegreeTooSmall(u32),
    /// The request exceeds the enumeration budget; completed degrees are
    /// carried along.
    BudgetExceeded { requested: u32, allowed: u32, partial: Vec<DegreeCount> },
    /// The automorphism bound formula needs at least two vertices.
    AutBoundNeedsTwoVertices,
    /// The bound parameter is below the actual maximum degree.
    AutBoundBelowMaxDegree { b: u32, max_degree: u32 },
}

impl fmt::Display for TwinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwinError::NotCovering => write!(f, "map is not a covering"),
            TwinError::BasepointMismatch => write!(f, "first map must be basepoint preserving"),
            TwinError::DegreeMismatch => write!(f, "cover size is not a multiple of the base size"),
            TwinError::BaseDegreeTooSmall(v) => {
                write!(f, "base vertex {v} has degree < 3")
            }
            TwinError::BudgetExceeded { requested, allowed, .. } => {
                write!(f, "degree {requested} exceeds the budget of {allowed}")
            }
            TwinError::AutBoundNeedsTwoVertices => {
                write!(f, "automorphism bound is stated only for graphs with >= 2 vertices")
            }
            TwinError::AutBoundBelowMaxDegree { b, max_degree } => {
                write!(f, "bound parameter {b} below maximum degree {max_degree}")
            }
        }
    }
}

/// `(X, x0, f1, f2)` over the pointed base `(y, y0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinCover {
    pub x: DartMultigraph,
    pub x0: u32,
    pub y: DartMultigraph,
    pub y0: u32,
    pub f1: GraphMap,
    pub f2: GraphMap,
}

impl TwinCover {
    pub fn new(
        x: DartMultigraph,
        x0: u32,
        y: DartMultigraph,
        y0: u32,
        f1: GraphMap,
        f2: GraphMap,
    ) -> Result<Self, TwinError> {
        if !is_covering(&x, &y, &f1) || !is_covering(&x, &y, &f2) {
            return Err(TwinError::NotCovering);
        }
        if f1.vertex_map[x0 as usize] != y0 {
            return Err(TwinError::BasepointMismatch);
        }
        if x.num_vertices() % y.num_vertices() != 0 {
            return Err(TwinError::DegreeMismatch);
        }
        Ok(Self { x, x0, y, y0, f1, f2 })
    }

    pub fn degree(&self) -> u32 {
        self.x.num_vertices() / self.y.num_vertices()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: u32) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.parent[a as usize] != a {
            let grand = self.parent[self.parent[a as usize] as usize];
            self.parent[a as usize] = grand;
            a = grand;
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }

    fn class_count(&mut self) -> u32 {
        let n = self.parent.len() as u32;
        (0..n).filter(|&i| self.find(i) == i).count() as u32
    }
}

enum Merge {
    Vertices(u32, u32),
    Darts(u32, u32),
}

/// The smallest congruence on `t.x` identifying `t.x0` with `seed`, built by
/// matching stars along f1 and propagating partners. Returns the number of
/// vertex classes of the quotient if the quotient is again a twin cover
/// (second map constant on classes, induced involution fixed-point-free),
/// otherwise `None`.
fn seeded_quotient_vertex_classes(t: &TwinCover, seed: u32) -> Option<u32> {
    let x = &t.x;
    let mut vertices = UnionFind::new(x.num_vertices());
    let mut darts = UnionFind::new(x.num_darts());
    let mut work = vec![Merge::Vertices(t.x0, seed)];
    while let Some(item) = work.pop() {
        match item {
            Merge::Vertices(a, b) => {
                if !vertices.union(a, b) {
                    continue;
                }
                // f1 is star-bijective, so each dart at a pairs with the
                // unique dart at b over the same base dart.
                for d in x.star(a) {
                    let target = t.f1.dart_map[d as usize];
                    let mate = x
                        .star(b)
                        .into_iter()
                        .find(|&d2| t.f1.dart_map[d2 as usize] == target)
                        .expect("covering stars match the base star");
                    work.push(Merge::Darts(d, mate));
                }
            }
            Merge::Darts(d, e) => {
                if !darts.union(d, e) {
                    continue;
                }
                work.push(Merge::Darts(x.partner(d), x.partner(e)));
                work.push(Merge::Vertices(
                    x.dart_vertex(x.partner(d)),
                    x.dart_vertex(x.partner(e)),
                ));
            }
        }
    }
    // The quotient is a twin cover only if f2 descends and no dart collapses
    // onto its partner.
    for d in 0..x.num_darts() {
        let rep = darts.find(d);
        if t.f2.dart_map[d as usize] != t.f2.dart_map[rep as usize] {
            return None;
        }
        if darts.find(d) == darts.find(x.partner(d)) {
            return None;
        }
    }
    for v in 0..x.num_vertices() {
        let rep = vertices.find(v);
        if t.f2.vertex_map[v as usize] != t.f2.vertex_map[rep as usize] {
            return None;
        }
    }
    Some(vertices.class_count())
}

/// True iff every morphism out of `t` is an isomorphism or has full degree.
///
/// A proper intermediate morphism identifies `x0` with some other vertex of
/// the f1-fiber over `y0`, and conversely the smallest congruence generated
/// by such a pair is itself a morphism congruence when consistent. So it
/// suffices to scan the fiber.
pub fn is_minimal(t: &TwinCover) -> bool {
    for v in 0..t.x.num_vertices() {
        if v == t.x0 || t.f1.vertex_map[v as usize] != t.y0 {
            continue;
        }
        if let Some(classes) = seeded_quotient_vertex_classes(t, v) {
            // classes == |Y| is the full-degree morphism onto the base,
            // which minimality allows.
            if classes > t.y.num_vertices() {
                return false;
            }
        }
    }
    true
}

/// Rigid propagation of the unique candidate isomorphism `t1.x -> t2.x`
/// commuting with the first maps and preserving basepoints.
fn pointed_f1_iso(t1: &TwinCover, t2: &TwinCover) -> Option<GraphMap> {
    if t1.y != t2.y || t1.y0 != t2.y0 || t1.degree() != t2.degree() {
        return None;
    }
    let x1 = &t1.x;
    let x2 = &t2.x;
    if x1.num_vertices() != x2.num_vertices() || x1.num_darts() != x2.num_darts() {
        return None;
    }
    let mut vertex_map: Vec<Option<u32>> = vec![None; x1.num_vertices() as usize];
    let mut dart_map: Vec<Option<u32>> = vec![None; x1.num_darts() as usize];
    vertex_map[t1.x0 as usize] = Some(t2.x0);
    let mut queue = vec![(t1.x0, t2.x0)];
    while let Some((a, b)) = queue.pop() {
        for d in x1.star(a) {
            let target = t1.f1.dart_map[d as usize];
            let image = x2
                .star(b)
                .into_iter()
                .find(|&e| t2.f1.dart_map[e as usize] == target)?;
            match dart_map[d as usize] {
                Some(existing) if existing != image => return None,
                Some(_) => continue,
                None => dart_map[d as usize] = Some(image),
            }
            let pd = x1.partner(d);
            let pe = x2.partner(image);
            match dart_map[pd as usize] {
                Some(existing) if existing != pe => return None,
                _ => dart_map[pd as usize] = Some(pe),
            }
            let pv = x1.dart_vertex(pd);
            let pw = x2.dart_vertex(pe);
            match vertex_map[pv as usize] {
                Some(existing) if existing != pw => return None,
                Some(_) => {}
                None => {
                    vertex_map[pv as usize] = Some(pw);
                    queue.push((pv, pw));
                }
            }
        }
    }
    // Connectivity of t1.x means the propagation reached everything.
    let vertex_map: Vec<u32> = vertex_map.into_iter().collect::<Option<_>>()?;
    let dart_map: Vec<u32> = dart_map.into_iter().collect::<Option<_>>()?;
    let map = GraphMap { vertex_map, dart_map };
    let mut images = map.vertex_map.clone();
    images.sort_unstable();
    images.dedup();
    if images.len() != x2.num_vertices() as usize {
        return None;
    }
    Some(map)
}

/// True iff a basepoint-preserving isomorphism commuting with both covering
/// maps exists. There is at most one candidate, forced by the first maps.
pub fn twin_iso(t1: &TwinCover, t2: &TwinCover) -> bool {
    let map = match pointed_f1_iso(t1, t2) {
        Some(map) => map,
        None => return false,
    };
    for d in 0..t1.x.num_darts() {
        if t2.f2.dart_map[map.dart_map[d as usize] as usize] != t1.f2.dart_map[d as usize] {
            return false;
        }
    }
    for v in 0..t1.x.num_vertices() {
        if t2.f2.vertex_map[map.vertex_map[v as usize] as usize] != t1.f2.vertex_map[v as usize] {
            return false;
        }
    }
    true
}

/// Per-degree enumeration totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCount {
    pub degree: u32,
    pub pointed_covers: u64,
    pub twin_covers: u64,
    pub minimal_classes: u64,
}

/// Caps on the enumeration; growth is superexponential in the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_degree: u32,
    pub max_base_vertices: u32,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self { max_degree: 5, max_base_vertices: 2 }
    }
}

/// Counts isomorphism classes of minimal twin covers of `(y, y0)` for every
/// degree `1..=n`. By rigidity each class is one (pointed cover, second map)
/// pair, so no cross-pair merging occurs; `twin_iso` is exercised separately
/// in tests. With `skip_minimality` the minimality filter is disabled, which
/// must not change prime-degree counts.
pub fn count_comm_classes(
    y: &DartMultigraph,
    y0: u32,
    n: u32,
    budget: EnumerationBudget,
    skip_minimality: bool,
) -> Result<Vec<DegreeCount>, TwinError> {
    for v in 0..y.num_vertices() {
        if y.degree(v) < 3 {
            return Err(TwinError::BaseDegreeTooSmall(v));
        }
    }
    if y.num_vertices() > budget.max_base_vertices {
        return Err(TwinError::BudgetExceeded {
            requested: n,
            allowed: 0,
            partial: Vec::new(),
        });
    }
    let reachable = n.min(budget.max_degree);
    let mut counts = Vec::new();
    for m in 1..=reachable {
        let pointed = enumerate_pointed_covers(y, y0, m);
        let mut twin_total = 0u64;
        let mut classes = 0u64;
        for cover in &pointed {
            let seconds = enumerate_second_covers(&cover.x, y);
            twin_total += seconds.len() as u64;
            for f2 in seconds {
                let t = TwinCover::new(
                    cover.x.clone(),
                    cover.x0,
                    y.clone(),
                    y0,
                    cover.f1.clone(),
                    f2,
                )
                .expect("enumerated pair is a twin cover");
                if skip_minimality || is_minimal(&t) {
                    classes += 1;
                }
            }
        }
        counts.push(DegreeCount {
            degree: m,
            pointed_covers: pointed.len() as u64,
            twin_covers: twin_total,
            minimal_classes: classes,
        });
    }
    if reachable < n {
        return Err(TwinError::BudgetExceeded {
            requested: n,
            allowed: budget.max_degree,
            partial: counts,
        });
    }
    Ok(counts)
}

/// The bound `|V(X)| * b^{|V(X)|-1}` on the number of vertex permutations
/// induced by automorphisms of a connected graph with maximum degree at most
/// `b`: the image of one vertex, then at most `b` choices per spanning-tree
/// step. Dart-level automorphisms fixing every vertex (loop flips, parallel
/// edge swaps) are not bounded by it. Degenerate at one vertex, so that case
/// is rejected.
pub fn aut_bound(x: &DartMultigraph, b: u32) -> Result<u128, TwinError> {
    if x.num_vertices() < 2 {
        return Err(TwinError::AutBoundNeedsTwoVertices);
    }
    let max_degree = x.max_degree();
    if b < max_degree {
        return Err(TwinError::AutBoundBelowMaxDegree { b, max_degree });
    }
    Ok(x.num_vertices() as u128 * (b as u128).pow(x.num_vertices() - 1))
}
