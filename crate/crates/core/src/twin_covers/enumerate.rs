//! Enumeration of covers of a pointed base graph.
//!
//! Pointed degree-m covers correspond to monodromy tuples: one permutation of
//! the m sheets per edge outside a spanning tree, taken up to relabeling of
//! the non-basepoint sheets. The count equals the number of index-m subgroups
//! of the free group of the base's cycle rank, which the Hall recursion
//! computes independently.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::graph::{is_covering, DartMultigraph, GraphMap};

/// A connected pointed cover `f1: (X, x0) -> (Y, y0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedCover {
    pub x: DartMultigraph,
    pub x0: u32,
    pub f1: GraphMap,
}

fn all_permutations(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(m: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(i as u8);
                rec(m, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(m, &mut current, &mut used, &mut out);
    out
}

/// Sheet relabelings fixing sheet 0, as permutations of `0..m`.
fn basepoint_fixing_relabelings(m: usize) -> Vec<Vec<u8>> {
    if m == 0 {
        return vec![vec![]];
    }
    all_permutations(m - 1)
        .into_iter()
        .map(|tail| {
            let mut rho = Vec::with_capacity(m);
            rho.push(0u8);
            rho.extend(tail.iter().map(|&x| x + 1));
            rho
        })
        .collect()
}

fn conjugate_tuple(tuple: &[u8], rho: &[u8], r: usize, m: usize) -> Vec<u8> {
    // (rho sigma rho^-1)[rho[i]] = rho[sigma[i]], per tuple slot.
    let mut out = vec![0u8; r * m];
    for e in 0..r {
        let sigma = &tuple[e * m..(e + 1) * m];
        let image = &mut out[e * m..(e + 1) * m];
        for i in 0..m {
            image[rho[i] as usize] = rho[sigma[i] as usize];
        }
    }
    out
}

fn is_transitive(tuple: &[u8], r: usize, m: usize) -> bool {
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(s) = stack.pop() {
        for e in 0..r {
            let sigma = &tuple[e * m..(e + 1) * m];
            let forward = sigma[s] as usize;
            if !seen[forward] {
                seen[forward] = true;
                count += 1;
                stack.push(forward);
            }
            let backward = sigma.iter().position(|&x| x as usize == s).unwrap();
            if !seen[backward] {
                seen[backward] = true;
                count += 1;
                stack.push(backward);
            }
        }
    }
    count == m
}

/// Builds the degree-m cover of `y` determined by one sheet permutation per
/// non-tree edge; tree edges stay within their sheet. Vertex `(v, s)` has
/// index `v*m + s`, dart `(d, s)` index `d*m + s`.
fn cover_from_monodromy(
    y: &DartMultigraph,
    y0: u32,
    m: u32,
    nontree_positive: &[u32],
    tuple: &[u8],
) -> PointedCover {
    let nd = y.num_darts();
    let mut dart_vertex = Vec::with_capacity((nd * m) as usize);
    let mut partner = vec![0u32; (nd * m) as usize];
    for d in 0..nd {
        for s in 0..m {
            dart_vertex.push(y.dart_vertex(d) * m + s);
        }
    }
    let mut edge_perm = vec![None; nd as usize];
    for (e, &d) in nontree_positive.iter().enumerate() {
        edge_perm[d as usize] = Some(e);
    }
    for d in 0..nd {
        let pd = y.partner(d);
        for s in 0..m {
            let target_sheet = if let Some(e) = edge_perm[d as usize] {
                tuple[e * m as usize + s as usize] as u32
            } else if let Some(e) = edge_perm[pd as usize] {
                // Negative dart of a non-tree edge: cross by the inverse.
                let sigma = &tuple[e * m as usize..(e + 1) * m as usize];
                sigma.iter().position(|&x| x as u32 == s).unwrap() as u32
            } else {
                s
            };
            partner[(d * m + s) as usize] = pd * m + target_sheet;
        }
    }
    let x = DartMultigraph::new(y.num_vertices() * m, dart_vertex, partner)
        .expect("monodromy cover is well formed");
    let f1 = GraphMap {
        vertex_map: (0..x.num_vertices()).map(|v| v / m).collect(),
        dart_map: (0..x.num_darts()).map(|d| d / m).collect(),
    };
    PointedCover { x, x0: y0 * m, f1 }
}

/// All connected degree-m pointed covers of `(y, y0)` up to pointed
/// isomorphism over the covering map.
///
/// Tuples are scanned in lexicographic order; each emitted tuple is the least
/// in its relabeling orbit because the whole orbit is marked as seen when its
/// least member is reached.
pub fn enumerate_pointed_covers(y: &DartMultigraph, y0: u32, m: u32) -> Vec<PointedCover> {
    assert!(m >= 1, "degree must be positive");
    assert!(y.is_connected(), "base graph must be connected");
    let m_us = m as usize;
    let in_tree = y.spanning_tree_darts(y0);
    let nontree_positive: Vec<u32> = (0..y.num_darts())
        .filter(|&d| !in_tree[d as usize] && d < y.partner(d))
        .collect();
    let r = nontree_positive.len();

    let perms = all_permutations(m_us);
    let relabelings = basepoint_fixing_relabelings(m_us);
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut covers = Vec::new();

    let mut indices = vec![0usize; r];
    loop {
        let mut tuple = Vec::with_capacity(r * m_us);
        for &i in &indices {
            tuple.extend_from_slice(&perms[i]);
        }
        if !seen.contains(&tuple) && is_transitive(&tuple, r, m_us) {
            covers.push(cover_from_monodromy(y, y0, m, &nontree_positive, &tuple));
            for rho in &relabelings {
                seen.insert(conjugate_tuple(&tuple, rho, r, m_us));
            }
        }
        // Odometer over permutation indices; empty tuple runs exactly once.
        let mut pos = r;
        loop {
            if pos == 0 {
                return covers;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < perms.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

/// The number of index-m subgroups of the free group of rank k, by the
/// recursion a_m = m (m!)^{k-1} - sum_{i<m} ((m-i)!)^{k-1} a_i.
pub fn hall_count(k: u32, m: u32) -> u128 {
    assert!(k >= 1 && m >= 1);
    let mut a = vec![0u128; m as usize + 1];
    for j in 1..=m as u64 {
        let mut value = j as u128 * factorial(j).pow(k - 1);
        for i in 1..j {
            value -= factorial(j - i).pow(k - 1) * a[i as usize];
        }
        a[j as usize] = value;
    }
    a[m as usize]
}

/// All covering maps `x -> y`, with no basepoint constraint. Built by
/// backtracking over star bijections with partner propagation; distinct
/// choice sequences yield distinct maps, and a set dedupes defensively.
pub fn enumerate_second_covers(x: &DartMultigraph, y: &DartMultigraph) -> Vec<GraphMap> {
    let mut found: BTreeSet<GraphMap> = BTreeSet::new();
    let mut vertex_map: Vec<Option<u32>> = vec![None; x.num_vertices() as usize];
    let mut dart_map: Vec<Option<u32>> = vec![None; x.num_darts() as usize];
    extend_cover(x, y, &mut vertex_map, &mut dart_map, &mut found);
    found.into_iter().collect()
}

fn extend_cover(
    x: &DartMultigraph,
    y: &DartMultigraph,
    vertex_map: &mut Vec<Option<u32>>,
    dart_map: &mut Vec<Option<u32>>,
    found: &mut BTreeSet<GraphMap>,
) {
    // Prefer a dart whose vertex already has an image; the star of the image
    // constrains the choices.
    let next_dart = (0..x.num_darts()).find(|&d| {
        dart_map[d as usize].is_none() && vertex_map[x.dart_vertex(d) as usize].is_some()
    });
    let d = match next_dart {
        Some(d) => d,
        None => {
            match (0..x.num_vertices()).find(|&v| vertex_map[v as usize].is_none()) {
                Some(v) => {
                    // Unreached component: branch over every seed image.
                    for w in 0..y.num_vertices() {
                        vertex_map[v as usize] = Some(w);
                        extend_cover(x, y, vertex_map, dart_map, found);
                        vertex_map[v as usize] = None;
                    }
                }
                None => {
                    let map = GraphMap {
                        vertex_map: vertex_map.iter().map(|v| v.unwrap()).collect(),
                        dart_map: dart_map.iter().map(|d| d.unwrap()).collect(),
                    };
                    if is_covering(x, y, &map) {
                        found.insert(map);
                    }
                }
            }
            return;
        }
    };

    let v = x.dart_vertex(d);
    let image_vertex = vertex_map[v as usize].unwrap();
    for e in y.star(image_vertex) {
        // Injectivity on the star of v.
        let taken = x
            .star(v)
            .into_iter()
            .any(|d2| d2 != d && dart_map[d2 as usize] == Some(e));
        if taken {
            continue;
        }
        let pd = x.partner(d);
        let pe = y.partner(e);
        let pv = x.dart_vertex(pd);
        if let Some(assigned) = dart_map[pd as usize] {
            if assigned != pe {
                continue;
            }
        }
        if let Some(assigned) = vertex_map[pv as usize] {
            if assigned != y.dart_vertex(pe) {
                continue;
            }
        }
        let old_pd = dart_map[pd as usize];
        let old_pv = vertex_map[pv as usize];
        dart_map[d as usize] = Some(e);
        dart_map[pd as usize] = Some(pe);
        vertex_map[pv as usize] = Some(y.dart_vertex(pe));
        extend_cover(x, y, vertex_map, dart_map, found);
        dart_map[d as usize] = None;
        dart_map[pd as usize] = old_pd;
        vertex_map[pv as usize] = old_pv;
    }
}

/// Graph automorphisms of `g`: degree-1 self-coverings.
pub fn automorphisms(g: &DartMultigraph) -> Vec<GraphMap> {
    enumerate_second_covers(g, g)
        .into_iter()
        .filter(|map| {
            let mut images: Vec<u32> = map.vertex_map.clone();
            images.sort_unstable();
            images.dedup();
            images.len() == g.num_vertices() as usize
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_count_examples() {
        for m in 1..=6 {
            assert_eq!(hall_count(1, m), 1);
        }
        let rank2 = [1u128, 3, 13, 71, 461, 3447];
        for (m, &expected) in rank2.iter().enumerate() {
            assert_eq!(hall_count(2, m as u32 + 1), expected);
        }
        assert_eq!(hall_count(2, 4), 4 * 24 - (6 * 1 + 2 * 3 + 1 * 13));
        assert_eq!(hall_count(3, 4), 2143);
    }

    #[test]
    fn pointed_cover_counts_match_hall() {
        for k in [2u32, 3] {
            let y = DartMultigraph::bouquet(k);
            let max_m = if k == 2 { 6 } else { 4 };
            for m in 1..=max_m {
                let covers = enumerate_pointed_covers(&y, 0, m);
                assert_eq!(covers.len() as u128, hall_count(k, m), "k={k}, m={m}");
            }
        }
    }

    #[test]
    fn pointed_covers_are_coverings() {
        let y = DartMultigraph::bouquet(2);
        for m in 1..=4 {
            for cover in enumerate_pointed_covers(&y, 0, m) {
                assert!(cover.x.is_connected());
                assert!(is_covering(&cover.x, &y, &cover.f1));
                assert_eq!(cover.x.num_vertices(), m);
                assert_eq!(cover.f1.vertex_map[cover.x0 as usize], 0);
            }
        }
    }

    #[test]
    fn degree_one_cover_is_the_base() {
        let y = DartMultigraph::bouquet(3);
        let covers = enumerate_pointed_covers(&y, 0, 1);
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].x, y);
    }

    #[test]
    fn pointed_covers_of_a_two_vertex_base() {
        // Theta graph: two vertices joined by three parallel edges. Its cycle
        // rank is 2, so counts again follow the rank-2 Hall numbers.
        let theta = DartMultigraph::new(
            2,
            alloc::vec![0, 1, 0, 1, 0, 1],
            alloc::vec![1, 0, 3, 2, 5, 4],
        )
        .unwrap();
        for m in 1..=4 {
            let covers = enumerate_pointed_covers(&theta, 0, m);
            assert_eq!(covers.len() as u128, hall_count(2, m), "m={m}");
            for cover in covers {
                assert!(is_covering(&cover.x, &theta, &cover.f1));
            }
        }
    }

    #[test]
    fn bouquet_self_covers_are_its_automorphisms() {
        // Two loop swaps times two orientation flips each.
        let y = DartMultigraph::bouquet(2);
        let maps = enumerate_second_covers(&y, &y);
        assert_eq!(maps.len(), 8);
        assert_eq!(automorphisms(&y).len(), 8);
    }

    #[test]
    fn second_covers_from_double_cover() {
        let y = DartMultigraph::bouquet(2);
        for cover in enumerate_pointed_covers(&y, 0, 2) {
            let maps = enumerate_second_covers(&cover.x, &y);
            assert!(!maps.is_empty());
            for map in maps {
                assert!(is_covering(&cover.x, &y, &map));
            }
        }
    }

    #[test]
    fn wrong_degree_sequence_gives_no_covers() {
        let x = DartMultigraph::bouquet(1);
        let y = DartMultigraph::bouquet(2);
        assert!(enumerate_second_covers(&x, &y).is_empty());
    }

    #[test]
    fn four_cycle_automorphism_count_is_dihedral() {
        let c4 = DartMultigraph::new(
            4,
            alloc::vec![0, 1, 1, 2, 2, 3, 3, 0],
            alloc::vec![1, 0, 3, 2, 5, 4, 7, 6],
        )
        .unwrap();
        assert_eq!(automorphisms(&c4).len(), 8);
    }
}
