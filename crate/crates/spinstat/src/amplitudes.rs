//! Transition amplitudes in the superposed-final-state form and the standard
//! projector form, term-level evaluation with spin-component case analysis,
//! and chained amplitudes through intermediate states.
//!
//! Only the bra is summed over permutations in the superposed form; the ket
//! stays as given and no normalization factors appear.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::{eta, RotationSense};
use crate::perm::{enumerate_all_capped, DEFAULT_ENUM_CAP};
use crate::state::{product_inner, superposition_inner, ProductState, Superposition};
use crate::symmetrize::{apply_projector_capped, Projector, Statistics};

/// Which formula produced an amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Feynman,
    Standard,
}

/// Classification of a bra-term/ket-term pair by its spin components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermCase {
    /// Every slot carries the same component.
    AllEqualM,
    /// All components distinct; a single permutation member survives.
    AllDistinctM,
    /// Both repeated and distinct components present.
    Mixed,
    /// The bra and ket component multisets differ; the term vanishes.
    Zero,
}

#[derive(Debug, Clone, Serialize)]
pub struct AmplitudeResult {
    pub f: Complex64,
    pub probability: f64,
    pub method: Method,
    pub case_tags: Vec<TermCase>,
}

impl AmplitudeResult {
    fn new(f: Complex64, method: Method, case_tags: Vec<TermCase>) -> Self {
        AmplitudeResult { f, probability: f.norm_sqr(), method, case_tags }
    }
}

/// Classify a term pair by the spin components of its slots.
pub fn classify(bra: &ProductState, ket: &ProductState) -> TermCase {
    let mut bm = bra.two_ms();
    let mut km = ket.two_ms();
    bm.sort_unstable();
    km.sort_unstable();
    if bm != km {
        return TermCase::Zero;
    }
    let distinct = {
        let mut v = bm.clone();
        v.dedup();
        v.len()
    };
    if distinct == 1 {
        TermCase::AllEqualM
    } else if distinct == bm.len() {
        TermCase::AllDistinctM
    } else {
        TermCase::Mixed
    }
}

/// One term of the amplitude: the permutation sum of slotwise scalar products
/// with conjugated eta weights, `sum_p eta_p^* <P_p bra, ket>`.
pub fn t_term(
    bra: &ProductState,
    ket: &ProductState,
    sense: RotationSense,
) -> Result<(Complex64, TermCase)> {
    t_term_capped(bra, ket, sense, DEFAULT_ENUM_CAP)
}

pub fn t_term_capped(
    bra: &ProductState,
    ket: &ProductState,
    sense: RotationSense,
    cap: usize,
) -> Result<(Complex64, TermCase)> {
    bra.same_shape(ket)?;
    let case = classify(bra, ket);
    if case == TermCase::Zero {
        // no permutation can match the component multisets
        return Ok((Complex64::new(0.0, 0.0), case));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for p in enumerate_all_capped(bra.n(), cap)? {
        let (factor, permuted) = eta(&p, bra, sense)?;
        acc += factor.conj() * product_inner(&permuted, ket)?;
    }
    Ok((acc, case))
}

/// Transition amplitude with only the bra side symmetrized:
/// `f = <sum_p eta_p P_p Phi_b, Phi_a>`.
pub fn feynman_amplitude(
    phi_b: &Superposition,
    phi_a: &Superposition,
    sense: RotationSense,
) -> Result<AmplitudeResult> {
    feynman_amplitude_capped(phi_b, phi_a, sense, DEFAULT_ENUM_CAP)
}

pub fn feynman_amplitude_capped(
    phi_b: &Superposition,
    phi_a: &Superposition,
    sense: RotationSense,
    cap: usize,
) -> Result<AmplitudeResult> {
    phi_b.same_shape(phi_a)?;
    let mut f = Complex64::new(0.0, 0.0);
    let mut tags = Vec::new();
    for bra in phi_b.terms() {
        for ket in phi_a.terms() {
            let (value, case) = t_term_capped(bra, ket, sense, cap)?;
            f += value;
            tags.push(case);
        }
    }
    Ok(AmplitudeResult::new(f, Method::Feynman, tags))
}

/// Standard amplitude `f = <sqrt(N!) proj Phi_b, sqrt(N!) proj Phi_a>` with
/// the symmetrizer or antisymmetrizer chosen by the statistics.
pub fn standard_amplitude(
    phi_b: &Superposition,
    phi_a: &Superposition,
    stats: Statistics,
) -> Result<AmplitudeResult> {
    standard_amplitude_capped(phi_b, phi_a, stats, DEFAULT_ENUM_CAP)
}

pub fn standard_amplitude_capped(
    phi_b: &Superposition,
    phi_a: &Superposition,
    stats: Statistics,
    cap: usize,
) -> Result<AmplitudeResult> {
    phi_b.same_shape(phi_a)?;
    let which = match stats.reduced()? {
        Statistics::Bose => Projector::Symmetric,
        Statistics::Fermi => Projector::Antisymmetric,
        _ => unreachable!(),
    };
    let proj_b = apply_projector_capped(phi_b, which, cap)?;
    let proj_a = apply_projector_capped(phi_a, which, cap)?;
    let factorial: f64 = (1..=phi_b.n()).product::<usize>() as f64;
    let f = superposition_inner(&proj_b, &proj_a)? * factorial;
    let mut tags = Vec::new();
    for bra in phi_b.terms() {
        for ket in phi_a.terms() {
            tags.push(classify(bra, ket));
        }
    }
    Ok(AmplitudeResult::new(f, Method::Standard, tags))
}

/// Result of chaining amplitudes through intermediate states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainedResult {
    /// Unobserved intermediates: the summed amplitude product.
    Amplitude(Complex64),
    /// Observed intermediates: the summed probability product.
    Probability(f64),
}

/// Chain `Phi_a -> Phi_l -> Phi_b` through unit-norm intermediates.
///
/// With unobserved intermediates the amplitudes are summed,
/// `sum_l <Phi_bS, Phi_l><Phi_l, Phi_a>`; with observed ones the respective
/// probabilities are.
pub fn chained_amplitude(
    phi_b: &Superposition,
    intermediates: &[Superposition],
    phi_a: &Superposition,
    sense: RotationSense,
    observed: bool,
) -> Result<ChainedResult> {
    chained_amplitude_capped(phi_b, intermediates, phi_a, sense, observed, DEFAULT_ENUM_CAP)
}

pub fn chained_amplitude_capped(
    phi_b: &Superposition,
    intermediates: &[Superposition],
    phi_a: &Superposition,
    sense: RotationSense,
    observed: bool,
    cap: usize,
) -> Result<ChainedResult> {
    if intermediates.is_empty() {
        return Err(Error::EmptyIntermediates);
    }
    phi_b.same_shape(phi_a)?;
    for l in intermediates {
        phi_b.same_shape(l)?;
        let norm = l.norm();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NonUnitIntermediate(norm));
        }
    }
    let sym_b = crate::symmetrize::build_superposed_general_capped(phi_b, sense, cap)?;
    if observed {
        let mut total = 0.0;
        for l in intermediates {
            let first = superposition_inner(&sym_b, l)?.norm_sqr();
            let second = superposition_inner(l, phi_a)?.norm_sqr();
            total += first * second;
        }
        Ok(ChainedResult::Probability(total))
    } else {
        let mut total = Complex64::new(0.0, 0.0);
        for l in intermediates {
            total += superposition_inner(&sym_b, l)? * superposition_inner(l, phi_a)?;
        }
        Ok(ChainedResult::Amplitude(total))
    }
}
