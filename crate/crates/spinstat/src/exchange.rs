//! Sense-controlled chi rotations with exact winding bookkeeping, two-slot
//! exchange factors `F` and `F_chi`, and the general permutation factor eta.
//!
//! The phase of a half-integral-spin state at a target angle depends on the
//! rotation path, so the path is the data here: windings are decided by exact
//! angle comparison, never by comparing floating phases.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::{decompose_canonical, Permutation};
use crate::spin::SpinLabel;
use crate::state::{Chi, ProductState, SingleParticleState};

/// The single rotation sense used for every exchange in a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationSense {
    Counterclockwise,
    Clockwise,
}

impl RotationSense {
    /// Path length from `source` to `target` along this sense, in `[0, 2*pi)`.
    pub fn path_len(self, source: Chi, target: Chi) -> f64 {
        let diff = match self {
            RotationSense::Counterclockwise => target.angle() - source.angle(),
            RotationSense::Clockwise => source.angle() - target.angle(),
        };
        let mut d = diff.rem_euclid(TAU);
        if d >= TAU {
            d = 0.0;
        }
        d
    }

    /// Whether the path from `source` to `target` crosses the 0/2pi seam,
    /// decided by exact comparison of the canonical angles.
    pub fn crosses_seam(self, source: Chi, target: Chi) -> bool {
        match self {
            RotationSense::Counterclockwise => target.angle() < source.angle(),
            RotationSense::Clockwise => target.angle() > source.angle(),
        }
    }

    /// Signed phase sign of a rotation along this sense: chi increases for
    /// counterclockwise, decreases for clockwise.
    pub fn phase_sign(self) -> f64 {
        match self {
            RotationSense::Counterclockwise => 1.0,
            RotationSense::Clockwise => -1.0,
        }
    }
}

/// Outcome of rotating a single-particle state's spin part to a new angle.
#[derive(Debug, Clone)]
pub struct RotationResult {
    /// The input state with chi replaced by the target angle.
    pub state: SingleParticleState,
    /// Accumulated rotation phase `exp(+- i m delta)`.
    pub factor: Complex64,
    /// 1 when the path crossed the 0/2pi seam, else 0.
    pub winding: u32,
}

/// Rotate the spin part of `s` from its current angle to `target` along the
/// given sense, tracking the traversed path exactly.
pub fn rotate_chi(s: &SingleParticleState, target: Chi, sense: RotationSense) -> RotationResult {
    let delta = sense.path_len(s.chi, target);
    let winding = if delta > 0.0 && sense.crosses_seam(s.chi, target) { 1 } else { 0 };
    let m = f64::from(s.spin.two_m()) / 2.0;
    let factor = Complex64::from_polar(1.0, sense.phase_sign() * m * delta);
    let mut state = s.clone();
    state.chi = target;
    RotationResult { state, factor, winding }
}

/// `F = (-1)^{2s}`: +1 for integral spin, -1 for half-integral, exact.
pub fn exchange_factor_f(two_s: i32) -> f64 {
    if two_s % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `F_chi = (-1)^{2s} exp(-i (m_a - m_b)(chi_a - chi_b))`, the two-slot
/// exchange factor for possibly different spin components.
pub fn exchange_factor_f_chi(
    two_s: i32,
    two_m_a: i32,
    two_m_b: i32,
    chi_a: Chi,
    chi_b: Chi,
) -> Result<Complex64> {
    SpinLabel::new(two_s, two_m_a)?;
    SpinLabel::new(two_s, two_m_b)?;
    let dm = f64::from(two_m_a - two_m_b) / 2.0;
    let dchi = chi_a.angle() - chi_b.angle();
    Ok(exchange_factor_f(two_s) * Complex64::from_polar(1.0, -dm * dchi))
}

/// Exchange slots `i` and `j` of a product state by two sense-controlled
/// rotations, returning the fully exchanged state and the exchange factor.
///
/// The two rotation paths always sum to exactly `2*pi`; at `chi_i == chi_j`
/// the split is `0` and `2*pi`, which keeps the factor continuous and equal
/// to `(-1)^{2s}` for equal components.
pub fn transpose_pair(
    psi: &ProductState,
    i: usize,
    j: usize,
    sense: RotationSense,
) -> Result<(ProductState, Complex64)> {
    if i == j {
        return Err(Error::NotATransposition(i));
    }
    let n = psi.n();
    if i >= n || j >= n {
        return Err(Error::ShapeMismatch(format!("slot index out of range for N={n}")));
    }
    let m_i = f64::from(psi.slots[i].spin.two_m()) / 2.0;
    let m_j = f64::from(psi.slots[j].spin.two_m()) / 2.0;
    // Slot i's new occupant (carrying m_j) rotates from chi_i to chi_j; the
    // return rotation carries m_i over the complementary path.
    let d1 = sense.path_len(psi.slots[i].chi, psi.slots[j].chi);
    let d2 = TAU - d1;
    // The factor multiplies the exchanged state, so the rotation phases enter
    // inverted: exp(-i m delta) for counterclockwise paths.
    let theta = -sense.phase_sign() * (m_j * d1 + m_i * d2);
    let factor = Complex64::from_polar(1.0, theta);

    let mut slots = psi.slots.clone();
    slots.swap(i, j);
    Ok((ProductState::new(psi.coeff, slots)?, factor))
}

/// The slot-transposition sequence eta is accumulated over, canonical for the
/// permutation and the state's spin-component assignment.
///
/// The permutation is split as `p = sigma . p_rep` where `p_rep` is the
/// order-preserving representative of `p` modulo permutations within equal-m
/// classes, and `sigma = p . p_rep^{-1}` only moves equal-m contents.  The
/// factor picked up by the `sigma` steps is then exactly `(-1)^{2s}` per
/// step, so eta's chi-dependent phase depends only on how `p` transports the
/// spin components, not on which equal-m slot went where.
pub fn eta_steps(p: &Permutation, two_ms: &[i32]) -> Result<Vec<(usize, usize)>> {
    let n = p.n();
    if two_ms.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{} spin components for permutation on {} slots",
            two_ms.len(),
            n
        )));
    }
    // Order-preserving coset representative: within each m-class, sorted
    // sources go to sorted targets.
    let mut rep_mapping = vec![0usize; n];
    let mut values: Vec<i32> = two_ms.to_vec();
    values.sort_unstable();
    values.dedup();
    for v in values {
        let sources: Vec<usize> = (0..n).filter(|&u| two_ms[u] == v).collect();
        let mut targets: Vec<usize> = sources.iter().map(|&u| p.image(u)).collect();
        targets.sort_unstable();
        for (&u, &t) in sources.iter().zip(&targets) {
            rep_mapping[u] = t;
        }
    }
    let p_rep = Permutation::from_mapping(rep_mapping)?;
    let sigma = p.compose(&p_rep.inverse());

    let mut steps = decompose_canonical(&p_rep).steps;
    steps.extend(decompose_canonical(&sigma).steps);
    Ok(steps)
}

/// The permutation exchange factor `eta` and the permuted state, built by
/// applying `eta_steps` one transposition at a time on the evolving state.
///
/// For all-equal spin components this is exactly `(-1)^{2s k}` with `k` the
/// transposition count; in every case `|eta| = 1`.
pub fn eta(
    p: &Permutation,
    psi: &ProductState,
    sense: RotationSense,
) -> Result<(Complex64, ProductState)> {
    if p.n() != psi.n() {
        return Err(Error::ShapeMismatch(format!(
            "permutation on {} slots applied to {}-slot state",
            p.n(),
            psi.n()
        )));
    }
    let steps = eta_steps(p, &psi.two_ms())?;
    let mut state = psi.clone();
    let mut factor = Complex64::new(1.0, 0.0);
    for (i, j) in steps {
        let (next, f) = transpose_pair(&state, i, j, sense)?;
        state = next;
        factor *= f;
    }
    Ok((factor, state))
}
