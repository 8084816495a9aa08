//! Symmetric-group machinery: enumeration, parity, canonical transposition
//! decomposition, and the action on product states.
//!
//! A permutation moves slot *contents*: `apply` puts the content of slot `i`
//! into slot `mapping[i]`.  Slots themselves are never relabelled.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::state::ProductState;

/// Default cap on the particle count for `N!` enumerations (7! = 5040).
pub const DEFAULT_ENUM_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

/// A bijection on slot indices `{0..N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { mapping: (0..n).collect() }
    }

    pub fn from_mapping(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &j in &mapping {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation(mapping));
            }
            seen[j] = true;
        }
        Ok(Permutation { mapping })
    }

    /// The transposition exchanging slots `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::NotATransposition(i));
        }
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(i, j);
        Permutation::from_mapping(mapping)
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Image of slot `i` under the content move.
    pub fn image(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { mapping: inv }
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation { mapping: other.mapping.iter().map(|&j| self.mapping[j]).collect() }
    }

    /// Cycles of length >= 2, each starting at its minimum element, listed in
    /// increasing order of that minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.mapping[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.mapping[next];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Parity and transposition count, via cycle structure (`k = N - #cycles`).
    pub fn parity(&self) -> (Parity, usize) {
        let k: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        (if k % 2 == 0 { Parity::Even } else { Parity::Odd }, k)
    }
}

/// An ordered sequence of slot transpositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionSeq {
    pub steps: Vec<(usize, usize)>,
}

impl TranspositionSeq {
    /// Compose the steps (applied left to right as content swaps).
    pub fn recompose(&self, n: usize) -> Result<Permutation> {
        // contents[slot] = original index currently at that slot
        let mut contents: Vec<usize> = (0..n).collect();
        for &(i, j) in &self.steps {
            if i == j {
                return Err(Error::NotATransposition(i));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidPermutation(vec![i, j]));
            }
            contents.swap(i, j);
        }
        let mut mapping = vec![0; n];
        for (slot, &orig) in contents.iter().enumerate() {
            mapping[orig] = slot;
        }
        Permutation::from_mapping(mapping)
    }
}

/// All `N!` permutations in lexicographic order of their mapping, identity first.
pub fn enumerate_all(n: usize) -> Result<Vec<Permutation>> {
    enumerate_all_capped(n, DEFAULT_ENUM_CAP)
}

pub fn enumerate_all_capped(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok((0..n)
        .permutations(n)
        .map(|mapping| Permutation { mapping })
        .collect())
}

/// Cycle-walk decomposition: for each cycle `(c0, c1, ..., cL)` with `c0` the
/// cycle minimum, emit `(c0, c1), (c0, c2), ..., (c0, cL)`.  Applying the
/// steps as content swaps, left to right, reproduces the permutation.
pub fn decompose_canonical(p: &Permutation) -> TranspositionSeq {
    let mut steps = Vec::new();
    for cycle in p.cycles() {
        for &next in &cycle[1..] {
            steps.push((cycle[0], next));
        }
    }
    TranspositionSeq { steps }
}

/// Permute whole slot contents (orbital, spin, chi) by `p`.
pub fn apply_full(p: &Permutation, psi: &ProductState) -> Result<ProductState> {
    if p.n() != psi.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation on {} slots applied to {}-slot state",
            p.n(),
            psi.n()
        )));
    }
    let mut slots = psi.slots.clone();
    for (i, slot) in psi.slots.iter().enumerate() {
        slots[p.image(i)] = slot.clone();
    }
    ProductState::new(psi.coeff, slots)
}

/// Permute orbitals and spin components by `p` while every chi stays attached
/// to its slot position.
pub fn apply_params_only(p: &Permutation, psi: &ProductState) -> Result<ProductState> {
    if p.n() != psi.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation on {} slots applied to {}-slot state",
            p.n(),
            psi.n()
        )));
    }
    let mut slots = psi.slots.clone();
    for (i, slot) in psi.slots.iter().enumerate() {
        let j = p.image(i);
        slots[j].orbital = slot.orbital.clone();
        slots[j].spin = slot.spin;
        // slots[j].chi keeps slot j's original angle
    }
    ProductState::new(psi.coeff, slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::SpinLabel;
    use crate::state::{Chi, SingleParticleState};
    use num_complex::Complex64;

    fn slot(two_m: i32, chi: f64, k: usize) -> SingleParticleState {
        SingleParticleState::basis(2, k, SpinLabel::new(1, two_m).unwrap(), Chi::new(chi)).unwrap()
    }

    fn state3() -> ProductState {
        ProductState::new(
            Complex64::new(1.0, 0.0),
            vec![slot(1, 0.3, 0), slot(-1, 2.0, 1), slot(1, 1.1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn enumerate_n1_is_identity() {
        let ps = enumerate_all(1).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].is_identity());
    }

    #[test]
    fn enumerate_n3_has_six() {
        let ps = enumerate_all(3).unwrap();
        assert_eq!(ps.len(), 6);
        assert!(ps[0].is_identity());
    }

    #[test]
    fn enumerate_n5_distinct() {
        let ps = enumerate_all(5).unwrap();
        assert_eq!(ps.len(), 120);
        for i in 0..ps.len() {
            for j in (i + 1)..ps.len() {
                assert_ne!(ps[i], ps[j]);
            }
        }
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(enumerate_all(8).is_err());
        assert!(enumerate_all_capped(8, 8).is_ok());
        assert!(enumerate_all(0).is_err());
    }

    #[test]
    fn parity_identity() {
        let (par, k) = Permutation::identity(4).parity();
        assert_eq!(par, Parity::Even);
        assert_eq!(k, 0);
    }

    #[test]
    fn parity_single_swap() {
        let p = Permutation::transposition(2, 0, 1).unwrap();
        let (par, k) = p.parity();
        assert_eq!(par, Parity::Odd);
        assert_eq!(k, 1);
    }

    #[test]
    fn parity_three_cycle() {
        let p = Permutation::from_mapping(vec![1, 2, 0]).unwrap();
        let (par, k) = p.parity();
        assert_eq!(par, Parity::Even);
        assert_eq!(k, 2);
    }

    #[test]
    fn decompose_identity_empty() {
        assert!(decompose_canonical(&Permutation::identity(4)).steps.is_empty());
    }

    #[test]
    fn decompose_swap() {
        let p = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(decompose_canonical(&p).steps, vec![(1, 2)]);
    }

    #[test]
    fn decompose_three_cycle() {
        let p = Permutation::from_mapping(vec![1, 2, 0]).unwrap();
        let seq = decompose_canonical(&p);
        assert_eq!(seq.steps, vec![(0, 1), (0, 2)]);
        assert_eq!(seq.recompose(3).unwrap(), p);
    }

    #[test]
    fn recompose_all_n5() {
        for p in enumerate_all(5).unwrap() {
            let seq = decompose_canonical(&p);
            assert_eq!(seq.recompose(5).unwrap(), p);
            assert_eq!(seq.steps.len() % 2 == 0, p.parity().0 == Parity::Even);
        }
    }

    #[test]
    fn sign_homomorphism_exhaustive_n4() {
        for n in 2..=4 {
            let all = enumerate_all(n).unwrap();
            for p in &all {
                for q in &all {
                    let lhs = p.compose(q).parity().0.sign();
                    let rhs = p.parity().0.sign() * q.parity().0.sign();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn even_count_is_half() {
        for n in 2..=5 {
            let even = enumerate_all(n)
                .unwrap()
                .iter()
                .filter(|p| p.parity().0 == Parity::Even)
                .count();
            let fact: usize = (1..=n).product();
            assert_eq!(even, fact / 2);
        }
    }

    #[test]
    fn apply_full_identity_and_involution() {
        let psi = state3();
        let id = Permutation::identity(3);
        assert_eq!(apply_full(&id, &psi).unwrap(), psi);

        let swap = Permutation::transposition(3, 0, 2).unwrap();
        let once = apply_full(&swap, &psi).unwrap();
        assert_ne!(once, psi);
        assert_eq!(apply_full(&swap, &once).unwrap(), psi);
    }

    #[test]
    fn apply_full_then_inverse_restores() {
        let psi = state3();
        for p in enumerate_all(3).unwrap() {
            let moved = apply_full(&p, &psi).unwrap();
            assert_eq!(apply_full(&p.inverse(), &moved).unwrap(), psi);
        }
    }

    #[test]
    fn apply_full_composition() {
        let psi = state3();
        let all = enumerate_all(3).unwrap();
        for p in &all {
            for q in &all {
                let seq = apply_full(p, &apply_full(q, &psi).unwrap()).unwrap();
                let comp = apply_full(&p.compose(q), &psi).unwrap();
                assert_eq!(seq, comp);
            }
        }
    }

    #[test]
    fn apply_params_only_keeps_chi_at_slots() {
        let psi = ProductState::new(
            Complex64::new(1.0, 0.0),
            vec![slot(1, 0.3, 0), slot(-1, 2.0, 1)],
        )
        .unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        let moved = apply_params_only(&swap, &psi).unwrap();
        // orbitals and m swap, chi values stay put
        assert_eq!(moved.slots[0].spin.two_m(), -1);
        assert_eq!(moved.slots[1].spin.two_m(), 1);
        assert!((moved.slots[0].chi.angle() - 0.3).abs() < 1e-15);
        assert!((moved.slots[1].chi.angle() - 2.0).abs() < 1e-15);
        let full = apply_full(&swap, &psi).unwrap();
        assert!((full.slots[0].chi.angle() - 2.0).abs() < 1e-15);
        assert!((full.slots[1].chi.angle() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn apply_params_only_equals_full_for_equal_chi() {
        let psi = ProductState::new(
            Complex64::new(1.0, 0.0),
            vec![slot(1, 0.8, 0), slot(-1, 0.8, 1)],
        )
        .unwrap();
        let swap = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(
            apply_params_only(&swap, &psi).unwrap(),
            apply_full(&swap, &psi).unwrap()
        );
    }

    #[test]
    fn shape_mismatch_errors() {
        let psi = state3();
        let p = Permutation::identity(2);
        assert!(apply_full(&p, &psi).is_err());
        assert!(apply_params_only(&p, &psi).is_err());
    }
}
