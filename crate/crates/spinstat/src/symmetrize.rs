//! Permutation superpositions and the standard symmetrizer/antisymmetrizer.
//!
//! `build_superposed` sums the original state and all its rotation-exchanged
//! images with the eta factors; `apply_projector` is the plain quantum
//! mechanics operator without any chi rotations.  Superposition outputs are
//! never normalized here.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exchange::{eta, RotationSense};
use crate::perm::{apply_full, apply_params_only, enumerate_all_capped, Parity, DEFAULT_ENUM_CAP};
use crate::state::{superposition_inner, Chi, ProductState, SingleParticleState, Superposition};

/// Which statistics governs the standard projector form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Bose,
    Fermi,
    /// Statistics implied by the total spin: Bose for even `two_s`, Fermi for odd.
    SpinDerived(i32),
    /// General eta-weighted exchange; no projector form exists for this.
    GeneralEta,
}

impl Statistics {
    /// Reduce to Bose or Fermi where possible.
    pub fn reduced(self) -> Result<Statistics> {
        match self {
            Statistics::Bose | Statistics::Fermi => Ok(self),
            Statistics::SpinDerived(two_s) => Ok(if two_s % 2 == 0 {
                Statistics::Bose
            } else {
                Statistics::Fermi
            }),
            Statistics::GeneralEta => Err(Error::NoStandardForm),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projector {
    Symmetric,
    Antisymmetric,
}

/// Sum over all parameter permutations with the angles pinned to their slots
/// (no rotation factors, unit weights).
pub fn symmetrize_prime(psi: &ProductState) -> Result<Superposition> {
    symmetrize_prime_capped(psi, DEFAULT_ENUM_CAP)
}

pub fn symmetrize_prime_capped(psi: &ProductState, cap: usize) -> Result<Superposition> {
    let mut out = Superposition::empty(psi.n(), psi.dim(), psi.two_s());
    for p in enumerate_all_capped(psi.n(), cap)? {
        out.push(apply_params_only(&p, psi)?)?;
    }
    Ok(out)
}

/// The rotation-exchanged superposition: the term for each permutation is the
/// fully permuted state weighted by its eta factor.
pub fn build_superposed(psi: &ProductState, sense: RotationSense) -> Result<Superposition> {
    build_superposed_capped(psi, sense, DEFAULT_ENUM_CAP)
}

pub fn build_superposed_capped(
    psi: &ProductState,
    sense: RotationSense,
    cap: usize,
) -> Result<Superposition> {
    let mut out = Superposition::empty(psi.n(), psi.dim(), psi.two_s());
    for p in enumerate_all_capped(psi.n(), cap)? {
        let (factor, state) = eta(&p, psi, sense)?;
        out.push(state.scaled(factor))?;
    }
    Ok(out)
}

/// Termwise `build_superposed` over a general superposition.
pub fn build_superposed_general(
    phi: &Superposition,
    sense: RotationSense,
) -> Result<Superposition> {
    build_superposed_general_capped(phi, sense, DEFAULT_ENUM_CAP)
}

pub fn build_superposed_general_capped(
    phi: &Superposition,
    sense: RotationSense,
    cap: usize,
) -> Result<Superposition> {
    let mut out = Superposition::empty(phi.n(), phi.dim(), phi.two_s());
    for term in phi.terms() {
        for t in build_superposed_capped(term, sense, cap)?.terms() {
            out.push(t.clone())?;
        }
    }
    Ok(out)
}

/// The standard symmetrizer `S = (1/N!) sum P` or antisymmetrizer
/// `A = (1/N!) sum (-1)^k P`, applied termwise.  No chi rotations.
pub fn apply_projector(phi: &Superposition, which: Projector) -> Result<Superposition> {
    apply_projector_capped(phi, which, DEFAULT_ENUM_CAP)
}

pub fn apply_projector_capped(
    phi: &Superposition,
    which: Projector,
    cap: usize,
) -> Result<Superposition> {
    let perms = enumerate_all_capped(phi.n(), cap)?;
    let weight = 1.0 / perms.len() as f64;
    let mut out = Superposition::empty(phi.n(), phi.dim(), phi.two_s());
    for p in &perms {
        let sign = match which {
            Projector::Symmetric => 1.0,
            Projector::Antisymmetric => p.parity().0.sign() as f64,
        };
        let factor = Complex64::new(sign * weight, 0.0);
        for term in phi.terms() {
            out.push(apply_full(p, term)?.scaled(factor))?;
        }
    }
    Ok(out)
}

/// Pull the common `exp(i m sum(chi))` phase out of an equal-component
/// superposition.
///
/// Returns the phase of the first term and the superposition rewritten with
/// every chi set to zero; each term's coefficient absorbs its own chi phase
/// relative to the extracted one, so `phase x reduced` reconstructs the input
/// termwise.  Errors when the slots carry mixed spin components, where no
/// common factor exists.
pub fn extract_overall_phase(phi: &Superposition) -> Result<(Complex64, Superposition)> {
    let terms = phi.terms();
    let first = terms
        .first()
        .ok_or_else(|| Error::ShapeMismatch("cannot extract phase from empty superposition".into()))?;
    let two_m = first.slots[0].spin.two_m();
    for t in terms {
        for s in &t.slots {
            if s.spin.two_m() != two_m {
                return Err(Error::MixedSpinComponents);
            }
        }
    }
    let m = f64::from(two_m) / 2.0;
    let term_phase = |t: &ProductState| {
        let total: f64 = t.slots.iter().map(|s| s.chi.angle()).sum();
        Complex64::from_polar(1.0, m * total)
    };
    let phase = term_phase(first);
    let mut out = Superposition::empty(phi.n(), phi.dim(), phi.two_s());
    for t in terms {
        let rel = term_phase(t) / phase;
        let mut slots = t.slots.clone();
        for s in &mut slots {
            s.chi = Chi::ZERO;
        }
        out.push(ProductState::new(t.coeff * rel, slots)?)?;
    }
    Ok((phase, out))
}

fn probe_states(n: usize, dim: usize, two_s: i32, count: usize) -> Vec<ProductState> {
    use rand::{Rng, SeedableRng};
    // fixed internal seed so symmetry checks are reproducible
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
        0x5eed_0000 ^ (n as u64) << 16 ^ (dim as u64) << 8 ^ two_s as u64,
    );
    let mut probes = Vec::with_capacity(count);
    for _ in 0..count {
        let slots: Vec<SingleParticleState> = (0..n)
            .map(|_| {
                let mut orbital: Vec<Complex64> = (0..dim)
                    .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                    .collect();
                let norm: f64 = orbital.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                for c in &mut orbital {
                    *c /= norm;
                }
                let comps: Vec<i32> = crate::spin::SpinLabel::components(two_s).collect();
                let two_m = comps[rng.gen_range(0..comps.len())];
                SingleParticleState::new(
                    orbital,
                    crate::spin::SpinLabel::new(two_s, two_m).unwrap(),
                    Chi::new(rng.gen::<f64>() * TAU),
                )
                .unwrap()
            })
            .collect();
        probes.push(ProductState::new(Complex64::new(1.0, 0.0), slots).unwrap());
    }
    probes
}

fn symmetry_check(phi: &Superposition, want_sign: impl Fn(Parity) -> f64) -> Result<bool> {
    let tol = 1e-10;
    let scale = 1.0 + phi.norm();
    let probes = probe_states(phi.n(), phi.dim(), phi.two_s(), 12);
    for p in enumerate_all_capped(phi.n(), DEFAULT_ENUM_CAP)? {
        let sign = want_sign(p.parity().0);
        let mut permuted = Superposition::empty(phi.n(), phi.dim(), phi.two_s());
        for t in phi.terms() {
            permuted.push(apply_full(&p, t)?)?;
        }
        for probe in &probes {
            let bra = Superposition::from_product(probe.clone());
            let lhs = superposition_inner(&bra, &permuted)?;
            let rhs = superposition_inner(&bra, phi)? * sign;
            if (lhs - rhs).norm() > tol * scale {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when every permutation leaves the state unchanged, compared through
/// inner products against a fixed random spanning set.
pub fn is_symmetric(phi: &Superposition) -> Result<bool> {
    symmetry_check(phi, |_| 1.0)
}

/// True when every permutation multiplies the state by its parity sign.
pub fn is_antisymmetric(phi: &Superposition) -> Result<bool> {
    symmetry_check(phi, |parity| parity.sign() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::SpinLabel;
    use RotationSense::Counterclockwise;

    fn slot(two_s: i32, two_m: i32, chi: f64, k: usize) -> SingleParticleState {
        SingleParticleState::basis(2, k, SpinLabel::new(two_s, two_m).unwrap(), Chi::new(chi))
            .unwrap()
    }

    fn product(slots: Vec<SingleParticleState>) -> ProductState {
        ProductState::new(Complex64::new(1.0, 0.0), slots).unwrap()
    }

    #[test]
    fn symmetrize_prime_single_slot_is_input() {
        let psi = product(vec![slot(1, 1, 0.4, 0)]);
        let out = symmetrize_prime(&psi).unwrap();
        assert_eq!(out.terms(), &[psi]);
    }

    #[test]
    fn symmetrize_prime_two_slots_keeps_angles_fixed() {
        let psi = product(vec![slot(1, 1, 0.4, 0), slot(1, 1, 2.2, 1)]);
        let out = symmetrize_prime(&psi).unwrap();
        assert_eq!(out.terms().len(), 2);
        for t in out.terms() {
            assert!((t.slots[0].chi.angle() - 0.4).abs() < 1e-15);
            assert!((t.slots[1].chi.angle() - 2.2).abs() < 1e-15);
        }
        assert_ne!(out.terms()[0], out.terms()[1]);
    }

    #[test]
    fn symmetrize_prime_equal_angles_matches_plain_sum() {
        let psi = product(vec![
            slot(1, 1, 1.0, 0),
            slot(1, 1, 1.0, 1),
            slot(1, -1, 1.0, 0),
        ]);
        let prime = symmetrize_prime(&psi).unwrap();
        assert_eq!(prime.terms().len(), 6);
        for (p, t) in crate::perm::enumerate_all(3).unwrap().iter().zip(prime.terms()) {
            assert_eq!(t, &apply_full(p, &psi).unwrap());
        }
    }

    #[test]
    fn build_superposed_two_fermions_relative_sign() {
        let psi = product(vec![slot(1, 1, 0.7, 0), slot(1, 1, 2.9, 1)]);
        let out = build_superposed(&psi, Counterclockwise).unwrap();
        assert_eq!(out.terms().len(), 2);
        let c0 = out.terms()[0].coeff;
        let c1 = out.terms()[1].coeff;
        assert!((c0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((c1 + Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn build_superposed_scalar_bosons_symmetric_sum() {
        let psi = product(vec![slot(0, 0, 0.1, 0), slot(0, 0, 5.0, 1)]);
        let out = build_superposed(&psi, Counterclockwise).unwrap();
        for t in out.terms() {
            assert!((t.coeff - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn build_superposed_coefficients_match_parity() {
        let psi = product(vec![
            slot(1, 1, 0.7, 0),
            slot(1, 1, 2.9, 1),
            slot(1, 1, 4.0, 0),
        ]);
        let out = build_superposed(&psi, Counterclockwise).unwrap();
        for (p, t) in crate::perm::enumerate_all(3).unwrap().iter().zip(out.terms()) {
            let expected = p.parity().0.sign() as f64;
            assert!((t.coeff - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn build_superposed_general_term_count() {
        let a = product(vec![slot(1, 1, 0.7, 0), slot(1, 1, 2.9, 1)]);
        let b = a.scaled(Complex64::new(0.0, 0.5));
        let phi = Superposition::from_terms(vec![a, b]).unwrap();
        let out = build_superposed_general(&phi, Counterclockwise).unwrap();
        assert_eq!(out.terms().len(), 4);
    }

    #[test]
    fn projector_annihilates_duplicate_fermion_slots() {
        let dup = slot(1, 1, 0.9, 0);
        let psi = product(vec![dup.clone(), dup]);
        let out = apply_projector(&Superposition::from_product(psi), Projector::Antisymmetric)
            .unwrap();
        assert!(out.norm() < 1e-12);
    }

    #[test]
    fn projector_symmetric_idempotent_on_symmetric_state() {
        let psi = product(vec![slot(0, 0, 0.0, 0), slot(0, 0, 0.0, 1)]);
        let sym = apply_projector(&Superposition::from_product(psi), Projector::Symmetric).unwrap();
        let again = apply_projector(&sym, Projector::Symmetric).unwrap();
        // compare via inner products against the original
        let base = Superposition::from_product(product(vec![
            slot(0, 0, 0.0, 0),
            slot(0, 0, 0.0, 1),
        ]));
        let a = superposition_inner(&base, &sym).unwrap();
        let b = superposition_inner(&base, &again).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn extract_phase_all_zero_angles() {
        let psi = product(vec![slot(1, 1, 0.0, 0), slot(1, 1, 0.0, 1)]);
        let sup = build_superposed(&psi, Counterclockwise).unwrap();
        let (phase, reduced) = extract_overall_phase(&sup).unwrap();
        assert_eq!(phase, Complex64::new(1.0, 0.0));
        assert_eq!(reduced, sup);
    }

    #[test]
    fn extract_phase_two_particles() {
        use std::f64::consts::PI;
        let psi = product(vec![slot(1, 1, PI / 2.0, 0), slot(1, 1, PI, 1)]);
        let sup = build_superposed(&psi, Counterclockwise).unwrap();
        let (phase, reduced) = extract_overall_phase(&sup).unwrap();
        let expected = Complex64::from_polar(1.0, 0.5 * (PI / 2.0 + PI));
        assert!((phase - expected).norm() < 1e-12);
        // termwise reconstruction: phase * reduced term equals the original
        // term as a vector; check via inner products with a probe
        for (orig, red) in sup.terms().iter().zip(reduced.terms()) {
            let probe = product(vec![slot(1, 1, 1.1, 0), slot(1, 1, 0.3, 1)]);
            let bra = Superposition::from_product(probe);
            let lhs = superposition_inner(&bra, &Superposition::from_product(orig.clone())).unwrap();
            let rhs = superposition_inner(&bra, &Superposition::from_product(red.clone())).unwrap()
                * phase;
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn extract_phase_rejects_mixed_components() {
        let psi = product(vec![slot(1, 1, 0.2, 0), slot(1, -1, 0.4, 1)]);
        let sup = Superposition::from_product(psi);
        assert!(matches!(
            extract_overall_phase(&sup),
            Err(Error::MixedSpinComponents)
        ));
    }

    #[test]
    fn spin_statistics_dichotomy_small() {
        for &two_s in &[0, 1, 2, 3] {
            let psi = product(vec![
                slot(two_s, two_s, 0.4, 0),
                slot(two_s, two_s, 2.0, 1),
            ]);
            let out = build_superposed(&psi, Counterclockwise).unwrap();
            if two_s % 2 == 0 {
                assert!(is_symmetric(&out).unwrap(), "two_s={two_s}");
                assert!(!is_antisymmetric(&out).unwrap(), "two_s={two_s}");
            } else {
                assert!(is_antisymmetric(&out).unwrap(), "two_s={two_s}");
                assert!(!is_symmetric(&out).unwrap(), "two_s={two_s}");
            }
        }
    }

    #[test]
    fn generic_product_is_neither() {
        let psi = product(vec![slot(1, 1, 0.4, 0), slot(1, -1, 2.0, 1)]);
        let sup = Superposition::from_product(psi);
        assert!(!is_symmetric(&sup).unwrap());
        assert!(!is_antisymmetric(&sup).unwrap());
    }

    #[test]
    fn statistics_reduction() {
        assert_eq!(Statistics::SpinDerived(2).reduced().unwrap(), Statistics::Bose);
        assert_eq!(Statistics::SpinDerived(3).reduced().unwrap(), Statistics::Fermi);
        assert!(Statistics::GeneralEta.reduced().is_err());
    }

    #[test]
    fn compaction_merges_identical_slots() {
        let a = product(vec![slot(1, 1, 0.9, 0), slot(1, 1, 0.9, 1)]);
        let phi = Superposition::from_terms(vec![a.clone(), a.scaled(Complex64::new(-1.0, 0.0))])
            .unwrap();
        let compact = phi.compacted();
        assert_eq!(compact.terms().len(), 1);
        assert!(compact.terms()[0].coeff.norm() < 1e-15);
    }
}
