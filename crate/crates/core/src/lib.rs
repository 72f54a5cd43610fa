//! Commensurizer growth computations.
//!
//! For a group `G` and a subgroup `A`, the n-th commensurizer consists of the
//! elements `g` with `[A : A ∩ A^g] = n`; counting its left normalizer orbits
//! gives the growth sequence `c_n(A, G)` and the associated Dirichlet series
//! `Z_{A,G}(s) = Σ c_n n^{-s}`.
//!
//! The crate provides exact truncated Dirichlet series arithmetic
//! ([`dirichlet`]), brute-force commensurizer computations in explicit finite
//! groups ([`finite_groups`]), the local and global zeta functions of the
//! p-adic Heisenberg group ([`heisenberg`]) and of arithmetic `PGL_2` lattices
//! ([`pgl2`]), and twin-cover enumeration for uniform tree lattices
//! ([`twin_covers`]). Every closed-form count is paired with an independent
//! enumeration oracle.
//!
//! The crate is `no_std` (with `alloc`); all I/O lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dirichlet;
pub mod finite_groups;
pub mod heisenberg;
pub mod pgl2;
pub mod primes;
pub mod twin_covers;
