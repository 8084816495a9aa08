//! Finite-dimensional one- and many-particle states with azimuthal spin phases.
//!
//! A single-particle state is an orbital amplitude vector over an abstract
//! orthonormal basis, a spin label `(s, m)`, and an azimuthal angle chi.  The
//! chi dependence enters the numeric value only through the phase factor
//! `exp(i m chi)`; the angle itself is carried as a parameter.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin::SpinLabel;

/// Azimuthal spin angle, canonicalized into `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chi(f64);

impl Chi {
    pub fn new(angle: f64) -> Self {
        let mut a = angle.rem_euclid(TAU);
        // rem_euclid can round up to exactly TAU for tiny negative inputs
        if a >= TAU {
            a = 0.0;
        }
        Chi(a)
    }

    pub const ZERO: Chi = Chi(0.0);

    pub fn angle(self) -> f64 {
        self.0
    }
}

/// The phase `exp(i * m * chi)` with `m = two_m / 2`.
pub fn phase_factor(two_m: i32, chi: Chi) -> Complex64 {
    Complex64::from_polar(1.0, f64::from(two_m) / 2.0 * chi.angle())
}

/// One particle: orbital amplitudes, spin label, azimuthal angle.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleParticleState {
    pub orbital: Vec<Complex64>,
    pub spin: SpinLabel,
    pub chi: Chi,
}

impl SingleParticleState {
    pub fn new(orbital: Vec<Complex64>, spin: SpinLabel, chi: Chi) -> Result<Self> {
        if orbital.is_empty() {
            return Err(Error::ShapeMismatch("orbital dimension must be >= 1".into()));
        }
        Ok(SingleParticleState { orbital, spin, chi })
    }

    /// Unit basis orbital `e_k` of dimension `dim`.
    pub fn basis(dim: usize, k: usize, spin: SpinLabel, chi: Chi) -> Result<Self> {
        let mut orbital = vec![Complex64::new(0.0, 0.0); dim];
        orbital[k] = Complex64::new(1.0, 0.0);
        SingleParticleState::new(orbital, spin, chi)
    }

    pub fn dim(&self) -> usize {
        self.orbital.len()
    }
}

/// Scalar product of two single-particle states, conjugate-linear in the bra.
///
/// States with different spin components are orthogonal whatever their
/// orbitals and angles, so the result carries a Kronecker delta in `m`.
pub fn single_inner(bra: &SingleParticleState, ket: &SingleParticleState) -> Result<Complex64> {
    if bra.dim() != ket.dim() {
        return Err(Error::DimensionMismatch { left: bra.dim(), right: ket.dim() });
    }
    if bra.spin.two_s() != ket.spin.two_s() {
        return Err(Error::ShapeMismatch(format!(
            "total spin mismatch: two_s {} vs {}",
            bra.spin.two_s(),
            ket.spin.two_s()
        )));
    }
    if bra.spin.two_m() != ket.spin.two_m() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let orb: Complex64 = bra
        .orbital
        .iter()
        .zip(&ket.orbital)
        .map(|(b, k)| b.conj() * k)
        .sum();
    let two_m = bra.spin.two_m();
    Ok(phase_factor(two_m, bra.chi).conj() * phase_factor(two_m, ket.chi) * orb)
}

/// A complex-weighted tensor product of `N` single-particle states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    pub coeff: Complex64,
    pub slots: Vec<SingleParticleState>,
}

impl ProductState {
    pub fn new(coeff: Complex64, slots: Vec<SingleParticleState>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::ShapeMismatch("product state needs at least one slot".into()));
        }
        let dim = slots[0].dim();
        let two_s = slots[0].spin.two_s();
        for s in &slots {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: s.dim() });
            }
            if s.spin.two_s() != two_s {
                return Err(Error::ShapeMismatch(format!(
                    "slots carry different total spins: two_s {} vs {}",
                    two_s,
                    s.spin.two_s()
                )));
            }
        }
        Ok(ProductState { coeff, slots })
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn dim(&self) -> usize {
        self.slots[0].dim()
    }

    pub fn two_s(&self) -> i32 {
        self.slots[0].spin.two_s()
    }

    pub fn scaled(&self, factor: Complex64) -> ProductState {
        ProductState { coeff: self.coeff * factor, slots: self.slots.clone() }
    }

    /// Spin components per slot, as twice-values.
    pub fn two_ms(&self) -> Vec<i32> {
        self.slots.iter().map(|s| s.spin.two_m()).collect()
    }

    pub fn same_shape(&self, other: &ProductState) -> Result<()> {
        if self.n() != other.n() || self.dim() != other.dim() || self.two_s() != other.two_s() {
            return Err(Error::ShapeMismatch(format!(
                "(N={}, D={}, two_s={}) vs (N={}, D={}, two_s={})",
                self.n(),
                self.dim(),
                self.two_s(),
                other.n(),
                other.dim(),
                other.two_s()
            )));
        }
        Ok(())
    }
}

/// Slot-by-slot scalar product of two product states.
pub fn product_inner(bra: &ProductState, ket: &ProductState) -> Result<Complex64> {
    bra.same_shape(ket)?;
    let mut acc = bra.coeff.conj() * ket.coeff;
    for (b, k) in bra.slots.iter().zip(&ket.slots) {
        acc *= single_inner(b, k)?;
    }
    Ok(acc)
}

/// A finite sum of product states with shared `(N, D, two_s)` shape.
///
/// The empty term list is a valid (zero) superposition; its shape is kept
/// explicitly so shape checks still work.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    terms: Vec<ProductState>,
    n: usize,
    dim: usize,
    two_s: i32,
}

impl Superposition {
    pub fn empty(n: usize, dim: usize, two_s: i32) -> Self {
        Superposition { terms: Vec::new(), n, dim, two_s }
    }

    pub fn from_terms(terms: Vec<ProductState>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::ShapeMismatch("cannot infer shape from empty term list; use Superposition::empty".into()))?;
        let (n, dim, two_s) = (first.n(), first.dim(), first.two_s());
        for t in &terms {
            if t.n() != n || t.dim() != dim || t.two_s() != two_s {
                return Err(Error::ShapeMismatch("superposition terms disagree in shape".into()));
            }
        }
        Ok(Superposition { terms, n, dim, two_s })
    }

    pub fn from_product(term: ProductState) -> Self {
        let (n, dim, two_s) = (term.n(), term.dim(), term.two_s());
        Superposition { terms: vec![term], n, dim, two_s }
    }

    pub fn terms(&self) -> &[ProductState] {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn two_s(&self) -> i32 {
        self.two_s
    }

    pub fn push(&mut self, term: ProductState) -> Result<()> {
        if term.n() != self.n || term.dim() != self.dim || term.two_s() != self.two_s {
            return Err(Error::ShapeMismatch("term shape disagrees with superposition".into()));
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn same_shape(&self, other: &Superposition) -> Result<()> {
        if self.n != other.n || self.dim != other.dim || self.two_s != other.two_s {
            return Err(Error::ShapeMismatch(format!(
                "(N={}, D={}, two_s={}) vs (N={}, D={}, two_s={})",
                self.n, self.dim, self.two_s, other.n, other.dim, other.two_s
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, factor: Complex64) -> Superposition {
        Superposition {
            terms: self.terms.iter().map(|t| t.scaled(factor)).collect(),
            n: self.n,
            dim: self.dim,
            two_s: self.two_s,
        }
    }

    /// Merge terms whose slots agree exactly (bitwise) by adding coefficients.
    pub fn compacted(&self) -> Superposition {
        let mut out: Vec<ProductState> = Vec::new();
        for t in &self.terms {
            if let Some(existing) = out.iter_mut().find(|o| o.slots == t.slots) {
                existing.coeff += t.coeff;
            } else {
                out.push(t.clone());
            }
        }
        Superposition { terms: out, n: self.n, dim: self.dim, two_s: self.two_s }
    }

    pub fn norm(&self) -> f64 {
        superposition_inner(self, self).map(|v| v.re.max(0.0).sqrt()).unwrap_or(0.0)
    }
}

/// Bilinear expansion of the scalar product over term pairs.
pub fn superposition_inner(bra: &Superposition, ket: &Superposition) -> Result<Complex64> {
    bra.same_shape(ket)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for b in bra.terms() {
        for k in ket.terms() {
            acc += product_inner(b, k)?;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Fixture (de)serialization
//
// ProductState: {"coeff":[re,im],"slots":[{"orbital":[[re,im],...],
//               "two_s":int,"two_m":int,"chi":float},...]}
// Superposition: {"terms":[ProductState,...]}
// Angles are radians; loading canonicalizes chi into [0, 2*pi).
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RawSlot {
    orbital: Vec<[f64; 2]>,
    two_s: i32,
    two_m: i32,
    chi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawProduct {
    coeff: [f64; 2],
    slots: Vec<RawSlot>,
}

#[derive(Serialize, Deserialize)]
struct RawSuperposition {
    terms: Vec<RawProduct>,
}

impl RawProduct {
    fn into_product(self) -> Result<ProductState> {
        let mut slots = Vec::with_capacity(self.slots.len());
        for s in self.slots {
            let spin = SpinLabel::new(s.two_s, s.two_m)?;
            let orbital = s.orbital.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            slots.push(SingleParticleState::new(orbital, spin, Chi::new(s.chi))?);
        }
        ProductState::new(Complex64::new(self.coeff[0], self.coeff[1]), slots)
    }

    fn from_product(p: &ProductState) -> RawProduct {
        RawProduct {
            coeff: [p.coeff.re, p.coeff.im],
            slots: p
                .slots
                .iter()
                .map(|s| RawSlot {
                    orbital: s.orbital.iter().map(|c| [c.re, c.im]).collect(),
                    two_s: s.spin.two_s(),
                    two_m: s.spin.two_m(),
                    chi: s.chi.angle(),
                })
                .collect(),
        }
    }
}

impl ProductState {
    pub fn from_json(json: &str) -> Result<ProductState> {
        let raw: RawProduct =
            serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
        raw.into_product()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RawProduct::from_product(self)).expect("serialize")
    }
}

impl Superposition {
    pub fn from_json(json: &str) -> Result<Superposition> {
        let raw: RawSuperposition =
            serde_json::from_str(json).map_err(|e| Error::Fixture(e.to_string()))?;
        let terms: Result<Vec<_>> = raw.terms.into_iter().map(RawProduct::into_product).collect();
        Superposition::from_terms(terms?)
    }

    pub fn to_json(&self) -> String {
        let raw = RawSuperposition {
            terms: self.terms.iter().map(RawProduct::from_product).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("serialize")
    }

    /// Parse either a superposition fixture or a bare product-state fixture.
    pub fn from_fixture_json(json: &str) -> Result<Superposition> {
        Superposition::from_json(json)
            .or_else(|_| ProductState::from_json(json).map(Superposition::from_product))
    }
}
