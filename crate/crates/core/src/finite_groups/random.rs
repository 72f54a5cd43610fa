//! Random small groups and subgroups for property testing.
//!
//! Groups are generated as closures of random permutation sets in `S_d`,
//! `d <= 8`, rejected until the order fits the requested bound.

use alloc::vec::Vec;

use rand::Rng;

use super::{FiniteGroupTable, Subgroup};

fn random_permutation<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Vec<u8> {
    let mut perm: Vec<u8> = (0..degree as u8).collect();
    for i in (1..degree).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

/// A random permutation group of order at most `max_order`.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: usize) -> FiniteGroupTable {
    loop {
        let degree = rng.gen_range(2..=8usize);
        let count = rng.gen_range(1..=2usize);
        let gens: Vec<Vec<u8>> =
            (0..count).map(|_| random_permutation(rng, degree)).collect();
        if let Ok(table) = FiniteGroupTable::from_permutations(degree, &gens, max_order) {
            return table;
        }
    }
}

/// A random subgroup, generated by a few random elements of the group.
pub fn random_subgroup<R: Rng + ?Sized>(rng: &mut R, group: &FiniteGroupTable) -> Subgroup {
    let count = rng.gen_range(0..=2usize);
    let gens: Vec<u32> =
        (0..count).map(|_| rng.gen_range(0..group.order() as u32)).collect();
    group.subgroup_generated(&gens)
}

/// A random subgroup of `outer`, so the pair is nested.
pub fn random_nested_subgroup<R: Rng + ?Sized>(
    rng: &mut R,
    group: &FiniteGroupTable,
    outer: &Subgroup,
) -> Subgroup {
    let count = rng.gen_range(0..=2usize);
    let gens: Vec<u32> = (0..count)
        .map(|_| outer.elements()[rng.gen_range(0..outer.len())])
        .collect();
    group.subgroup_generated(&gens)
}
