//! Brute-force commensurizer computations in explicit finite groups.
//!
//! Groups are multiplication tables, subgroups are materialized element sets,
//! and `c_n` orbit counts use explicit left-multiplication orbits of the
//! normalizer. Oracle simplicity beats scale here; everything is exact.

mod affine;
pub mod random;

pub use affine::{build_affine_group, growth_floor_demo, DEFAULT_SIZE_CAP};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dirichlet::{Coeff, TruncatedDirichletSeries};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Table length or entry range does not match the declared order.
    TableShape,
    /// Element 0 is not a two-sided identity.
    IdentityNotZero,
    /// Some element has no two-sided inverse.
    MissingInverse(u32),
    /// Associativity failed at the given triple.
    NotAssociative(u32, u32, u32),
    ElementOutOfRange(u32),
    /// A claimed subgroup is not closed under the operations.
    SubgroupNotClosed,
    /// Construction would exceed the configured element cap.
    SizeCapExceeded { required: u128, cap: u128 },
    /// The growth-floor construction failed to dominate the target at `index`.
    FloorNotDominated { index: u64 },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::TableShape => write!(f, "malformed multiplication table"),
            GroupError::IdentityNotZero => write!(f, "element 0 is not the identity"),
            GroupError::MissingInverse(x) => write!(f, "element {x} has no inverse"),
            GroupError::NotAssociative(a, b, c) => {
                write!(f, "associativity fails at ({a}, {b}, {c})")
            }
            GroupError::ElementOutOfRange(x) => write!(f, "element {x} out of range"),
            GroupError::SubgroupNotClosed => write!(f, "element set is not a subgroup"),
            GroupError::SizeCapExceeded { required, cap } => {
                write!(f, "group of order {required} exceeds cap {cap}")
            }
            GroupError::FloorNotDominated { index } => {
                write!(f, "partial sums fail to dominate the target at n = {index}")
            }
        }
    }
}

/// A finite group given by an explicit multiplication table. Element 0 is the
/// identity. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// A subgroup materialized as a sorted set of element indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl FiniteGroupTable {
    /// Builds and validates a group from a raw row-major table.
    ///
    /// Identity and inverse laws are checked on all elements. Associativity is
    /// checked via Light's test over a greedily found generating set for
    /// orders up to 2000, and on sampled triples above that.
    pub fn from_mul_table(
        order: usize,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        if order == 0 || mul.len() != order * order {
            return Err(GroupError::TableShape);
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(GroupError::TableShape);
        }
        if let Some(ref l) = labels {
            if l.len() != order {
                return Err(GroupError::TableShape);
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::IdentityNotZero);
            }
        }
        let mut inv = vec![u32::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(GroupError::MissingInverse(x as u32)),
            }
        }
        let g = Self { order, mul, inv, labels };
        g.check_associativity()?;
        Ok(g)
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        if self.order <= 2000 {
            // Light's test: with every element a table-product of the
            // generators, associativity on (x, g, y) for generators g implies
            // associativity everywhere.
            let gens = self.greedy_generators();
            for &g in &gens {
                for a in 0..self.order as u32 {
                    for b in 0..self.order as u32 {
                        if self.mul(a, self.mul(g, b)) != self.mul(self.mul(a, g), b) {
                            return Err(GroupError::NotAssociative(a, g, b));
                        }
                    }
                }
            }
        } else {
            // Sampled triples, deterministic.
            let n = self.order as u64;
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..30_000 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = ((state >> 33) % n) as u32;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let b = ((state >> 33) % n) as u32;
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let c = ((state >> 33) % n) as u32;
                if self.mul(a, self.mul(b, c)) != self.mul(self.mul(a, b), c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut closure = BTreeSet::from([0u32]);
        for x in 1..self.order as u32 {
            if !closure.contains(&x) {
                gens.push(x);
                closure = self.closure_of(&gens);
            }
        }
        gens
    }

    fn closure_of(&self, seed: &[u32]) -> BTreeSet<u32> {
        let mut set = BTreeSet::from([0u32]);
        let mut frontier: Vec<u32> = Vec::new();
        for &s in seed {
            if set.insert(s) {
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            for &s in seed {
                for y in [self.mul(x, s), self.mul(s, x), self.inv(x)] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        set
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn label(&self, x: u32) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x as usize].as_str())
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { elements: (0..self.order as u32).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// Validates an element set as a subgroup (identity, closure, inverses).
    pub fn subgroup_from_elements(&self, elements: &[u32]) -> Result<Subgroup, GroupError> {
        let mut elems: Vec<u32> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&x| x as usize >= self.order) {
            return Err(GroupError::ElementOutOfRange(*elems.last().unwrap()));
        }
        if elems.binary_search(&0).is_err() {
            return Err(GroupError::SubgroupNotClosed);
        }
        for &a in &elems {
            if elems.binary_search(&self.inv(a)).is_err() {
                return Err(GroupError::SubgroupNotClosed);
            }
            for &b in &elems {
                if elems.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::SubgroupNotClosed);
                }
            }
        }
        Ok(Subgroup { elements: elems })
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup_generated(&self, generators: &[u32]) -> Subgroup {
        let set = self.closure_of(generators);
        Subgroup { elements: set.into_iter().collect() }
    }

    pub fn index_of(&self, a: &Subgroup) -> u64 {
        (self.order / a.len()) as u64
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elements =
            a.elements.iter().copied().filter(|&x| b.contains(x)).collect();
        Subgroup { elements }
    }

    /// The conjugate subgroup `A^g = { g^{-1} a g }`.
    pub fn conjugate(&self, a: &Subgroup, g: u32) -> Subgroup {
        let gi = self.inv(g);
        let mut elements: Vec<u32> =
            a.elements.iter().map(|&x| self.mul(self.mul(gi, x), g)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// `chi_{A,G}(g) = [A : A ∩ A^g]`.
    pub fn chi(&self, a: &Subgroup, g: u32) -> u64 {
        let conj = self.conjugate(a, g);
        let common = self.intersection(a, &conj);
        (a.len() / common.len()) as u64
    }

    /// The normalizer `N_G(A) = { g : A^g = A }`.
    pub fn normalizer(&self, a: &Subgroup) -> Subgroup {
        let elements = (0..self.order as u32)
            .filter(|&g| self.conjugate(a, g).elements == a.elements)
            .collect();
        Subgroup { elements }
    }

    /// Commensurizer class counts: partitions `G` by the value of `chi` and
    /// counts left `N_G(A)`-orbits (explicit `h * g` orbits) in each class.
    /// Returns `n -> c_n`; `c_1 = 1` always.
    pub fn comm_classes(&self, a: &Subgroup) -> BTreeMap<u64, u64> {
        let normalizer = self.normalizer(a);
        let mut visited = vec![false; self.order];
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for g in 0..self.order as u32 {
            if visited[g as usize] {
                continue;
            }
            // chi is constant on the orbit: A^{hg} = A^g for h in N_G(A).
            for &h in &normalizer.elements {
                visited[self.mul(h, g) as usize] = true;
            }
            *counts.entry(self.chi(a, g)).or_insert(0) += 1;
        }
        counts
    }

    /// The commensurizer zeta polynomial `Z_{A,G}(s) = Σ c_n n^{-s}`,
    /// packaged as a series truncated at `|A|` (chi never exceeds `|A|`).
    pub fn zeta_polynomial(&self, a: &Subgroup) -> TruncatedDirichletSeries {
        let mut series = TruncatedDirichletSeries::zero(a.len() as u64)
            .expect("subgroup is nonempty");
        for (n, c) in self.comm_classes(a) {
            series
                .set_coeff(n, Coeff::from_integer(BigInt::from(c)))
                .expect("chi bounded by |A|");
        }
        series
    }

    /// Direct product `G x H`; element `(x, y)` has index `x * |H| + y`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let order = self.order * other.order;
        let mut mul = vec![0u32; order * order];
        let mut inv = vec![0u32; order];
        let idx = |x: u32, y: u32| x as usize * other.order + y as usize;
        for x1 in 0..self.order as u32 {
            for y1 in 0..other.order as u32 {
                inv[idx(x1, y1)] = idx(self.inv(x1), other.inv(y1)) as u32;
                for x2 in 0..self.order as u32 {
                    for y2 in 0..other.order as u32 {
                        mul[idx(x1, y1) * order + idx(x2, y2)] =
                            idx(self.mul(x1, x2), other.mul(y1, y2)) as u32;
                    }
                }
            }
        }
        Self { order, mul, inv, labels: None }
    }

    /// The subgroup `A x B` of `self x other` (indices per `direct_product`).
    pub fn product_subgroup(&self, other: &Self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut elements = Vec::with_capacity(a.len() * b.len());
        for &x in &a.elements {
            for &y in &b.elements {
                elements.push(x * other.order as u32 + y);
            }
        }
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// Builds the closure of permutation generators in `S_degree` as a table,
    /// aborting once `max_order` is exceeded. Element 0 is the identity.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<u8>],
        max_order: usize,
    ) -> Result<Self, GroupError> {
        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut elems: Vec<Vec<u8>> = vec![identity.clone()];
        let mut index: BTreeMap<Vec<u8>, u32> = BTreeMap::from([(identity, 0)]);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in generators {
                let composed: Vec<u8> = elems[i].iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&composed) {
                    if elems.len() >= max_order {
                        return Err(GroupError::SizeCapExceeded {
                            required: elems.len() as u128 + 1,
                            cap: max_order as u128,
                        });
                    }
                    index.insert(composed.clone(), elems.len() as u32);
                    elems.push(composed);
                    frontier.push(elems.len() - 1);
                }
            }
        }
        let order = elems.len();
        let mut mul = vec![0u32; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let composed: Vec<u8> = a.iter().map(|&x| b[x as usize]).collect();
                mul[i * order + j] = index[&composed];
            }
        }
        Self::from_mul_table(order, mul, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// S_3 as a permutation group table.
    fn s3() -> FiniteGroupTable {
        FiniteGroupTable::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], 10).unwrap()
    }

    fn find_perm(g: &FiniteGroupTable, degree: usize, target: &[u8]) -> u32 {
        // Recover element indices by rebuilding the closure in the same order.
        let gens = [vec![1u8, 0, 2], vec![1u8, 2, 0]];
        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut elems = vec![identity.clone()];
        let mut index = BTreeMap::from([(identity, 0u32)]);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for gen in &gens {
                let composed: Vec<u8> =
                    elems[i].iter().map(|&x| gen[x as usize]).collect();
                if !index.contains_key(&composed) {
                    index.insert(composed.clone(), elems.len() as u32);
                    elems.push(composed);
                    frontier.push(elems.len() - 1);
                }
            }
        }
        assert_eq!(elems.len(), g.order());
        index[target]
    }

    #[test]
    fn s3_has_order_6() {
        assert_eq!(s3().order(), 6);
    }

    #[test]
    fn conjugate_transposition_in_s3() {
        // <(12)> conjugated by (123) is <(23)>, by hand computation in S_3.
        let g = s3();
        let t12 = find_perm(&g, 3, &[1, 0, 2]);
        let cyc = find_perm(&g, 3, &[1, 2, 0]);
        let a = g.subgroup_generated(&[t12]);
        let conj = g.conjugate(&a, cyc);
        let t = conj.elements().iter().copied().find(|&x| x != 0).unwrap();
        // The image is one of the other two transpositions.
        let t02 = find_perm(&g, 3, &[2, 1, 0]);
        let t01 = find_perm(&g, 3, &[0, 2, 1]);
        assert!(t == t02 || t == t01);
        assert_ne!(t, t12);
        assert_eq!(conj.len(), 2);
    }

    #[test]
    fn conjugation_by_identity_and_normality() {
        let g = s3();
        let t12 = find_perm(&g, 3, &[1, 0, 2]);
        let a = g.subgroup_generated(&[t12]);
        assert_eq!(g.conjugate(&a, 0), a);
        // A_3 is normal in S_3.
        let cyc = find_perm(&g, 3, &[1, 2, 0]);
        let a3 = g.subgroup_generated(&[cyc]);
        for x in 0..g.order() as u32 {
            assert_eq!(g.conjugate(&a3, x), a3);
        }
    }

    #[test]
    fn chi_basics() {
        let g = s3();
        let t12 = find_perm(&g, 3, &[1, 0, 2]);
        let a = g.subgroup_generated(&[t12]);
        assert_eq!(g.chi(&a, 0), 1);
        for x in 0..g.order() as u32 {
            assert_eq!(g.chi(&a, x), g.chi(&a, g.inv(x)));
        }
    }

    #[test]
    fn normalizer_edges() {
        let g = s3();
        let full = g.full_subgroup();
        assert_eq!(g.normalizer(&full), full);
        let trivial = g.trivial_subgroup();
        assert_eq!(g.normalizer(&trivial), full);
    }

    #[test]
    fn comm_classes_of_full_group() {
        let g = s3();
        let classes = g.comm_classes(&g.full_subgroup());
        assert_eq!(classes, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn subgroup_validation() {
        let g = s3();
        let t12 = find_perm(&g, 3, &[1, 0, 2]);
        assert!(g.subgroup_from_elements(&[0, t12]).is_ok());
        assert_eq!(
            g.subgroup_from_elements(&[t12]),
            Err(GroupError::SubgroupNotClosed)
        );
    }

    #[test]
    fn rejects_non_group_tables() {
        // Left shift is not a group table (no identity at 0).
        let mul = vec![1, 0, 0, 1];
        assert_eq!(
            FiniteGroupTable::from_mul_table(2, mul, None),
            Err(GroupError::IdentityNotZero)
        );
        // Non-associative magma with identity: x*y defined ad hoc.
        let mul = vec![
            0, 1, 2, //
            1, 2, 2, //
            2, 2, 1,
        ];
        assert!(matches!(
            FiniteGroupTable::from_mul_table(3, mul, None),
            Err(GroupError::MissingInverse(_)) | Err(GroupError::NotAssociative(..))
        ));
    }

    #[test]
    fn zeta_polynomial_of_product_is_series_mul() {
        // Lemma on products, finite case: Z_{AxB, GxH} = Z_{A,G} * Z_{B,H}.
        let g = s3();
        let t12 = find_perm(&g, 3, &[1, 0, 2]);
        let a = g.subgroup_generated(&[t12]);
        let h = FiniteGroupTable::from_permutations(4, &[vec![1, 2, 3, 0]], 10).unwrap();
        let b = h.subgroup_generated(&[h.mul(1, 1)]); // index-2 subgroup of C_4

        let prod = g.direct_product(&h);
        let ab = prod
            .subgroup_from_elements(g.product_subgroup(&h, &a, &b).elements())
            .unwrap();

        let lhs = prod.zeta_polynomial(&ab);
        let n = ab.len() as u64;
        let za = g.zeta_polynomial(&a).resized(n).unwrap();
        let zb = h.zeta_polynomial(&b).resized(n).unwrap();
        let rhs = za.series_mul(&zb).unwrap();
        assert_eq!(lhs, rhs);
    }
}
