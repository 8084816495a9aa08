//! Brute-force reference implementations: dense state vectors in the full
//! tensor-product basis, dense permutation and projector matrices built by an
//! independent permutation generator, and step-by-step rotation accumulation.
//!
//! Everything here trades efficiency for independence from the structured
//! code paths, so agreement between the two is meaningful.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exchange::RotationSense;
use crate::perm::Parity;
use crate::state::{ProductState, Superposition};

/// Largest dense dimension the oracle will materialize.
pub const DENSE_CAP: usize = 4096;

/// A state vector in the slot-major tensor-product basis. Within each slot
/// the index runs orbital-major, spin-minor: `orb_index * (2s+1) + spin_index`
/// with `spin_index = (two_m + two_s) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    pub entries: Vec<Complex64>,
    pub n: usize,
    pub per_slot: usize,
}

impl DenseVector {
    pub fn zeros(n: usize, per_slot: usize) -> Result<Self> {
        let dim = per_slot.checked_pow(n as u32).ok_or(Error::DenseTooLarge {
            dim: usize::MAX,
            cap: DENSE_CAP,
        })?;
        if dim > DENSE_CAP {
            return Err(Error::DenseTooLarge { dim, cap: DENSE_CAP });
        }
        Ok(DenseVector { entries: vec![Complex64::new(0.0, 0.0); dim], n, per_slot })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn dot(&self, other: &DenseVector) -> Result<Complex64> {
        if self.dim() != other.dim() || self.n != other.n {
            return Err(Error::ShapeMismatch(format!(
                "dense dot of dim {} against {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn add_scaled(&mut self, coeff: Complex64, other: &DenseVector) {
        for (dst, src) in self.entries.iter_mut().zip(&other.entries) {
            *dst += coeff * src;
        }
    }
}

/// Expand a product state into the dense basis. The spin-phase factor
/// `exp(i m chi)` multiplies the occupied spin component of each slot.
pub fn densify(psi: &ProductState) -> Result<DenseVector> {
    let d = psi.dim();
    let two_s = psi.two_s();
    let per_slot = d * ((two_s as usize) + 1);
    let mut out = DenseVector::zeros(psi.n(), per_slot)?;
    // slot vectors first, then the n-fold Kronecker product
    let mut slot_vecs = Vec::with_capacity(psi.n());
    for s in &psi.slots {
        let mut v = vec![Complex64::new(0.0, 0.0); per_slot];
        let spin_index = ((s.spin.two_m() + two_s) / 2) as usize;
        let phase = Complex64::from_polar(1.0, s.spin.two_m() as f64 / 2.0 * s.chi.angle());
        for (o, amp) in s.orbital.iter().enumerate() {
            v[o * ((two_s as usize) + 1) + spin_index] = amp * phase;
        }
        slot_vecs.push(v);
    }
    for (idx, entry) in out.entries.iter_mut().enumerate() {
        // decode idx into per-slot digits, slot 0 most significant
        let mut rem = idx;
        let mut val = psi.coeff;
        for slot in (0..psi.n()).rev() {
            let digit = rem % per_slot;
            rem /= per_slot;
            val *= slot_vecs[slot][digit];
        }
        *entry = val;
    }
    Ok(out)
}

/// Expand a superposition by summing its densified terms.
pub fn densify_superposition(phi: &Superposition) -> Result<DenseVector> {
    let mut terms = phi.terms().iter();
    let first = terms.next().ok_or_else(|| {
        Error::ShapeMismatch("cannot densify an empty superposition".into())
    })?;
    let mut out = densify(first)?;
    for t in terms {
        let d = densify(t)?;
        out.add_scaled(Complex64::new(1.0, 0.0), &d);
    }
    Ok(out)
}

/// Dense permutation action: the digit in slot `i` moves to slot `mapping[i]`.
/// Represented directly as an index remapping rather than a matrix product.
pub fn dense_permute(v: &DenseVector, mapping: &[usize]) -> Result<DenseVector> {
    if mapping.len() != v.n {
        return Err(Error::InvalidPermutation(mapping.to_vec()));
    }
    let per_slot = v.per_slot;
    let mut out = DenseVector::zeros(v.n, per_slot)?;
    for (idx, amp) in v.entries.iter().enumerate() {
        // decode digits, slot 0 most significant
        let mut digits = vec![0usize; v.n];
        let mut rem = idx;
        for slot in (0..v.n).rev() {
            digits[slot] = rem % per_slot;
            rem /= per_slot;
        }
        let mut new_digits = vec![0usize; v.n];
        for i in 0..v.n {
            new_digits[mapping[i]] = digits[i];
        }
        let mut new_idx = 0usize;
        for slot in 0..v.n {
            new_idx = new_idx * per_slot + new_digits[slot];
        }
        out.entries[new_idx] += amp;
    }
    Ok(out)
}

/// All permutations of `0..n`, generated recursively by insertion. This is a
/// deliberate second implementation, independent of the enumeration used by
/// the structured code.
fn all_mappings(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let shorter = all_mappings(n - 1);
    let mut out = Vec::new();
    for base in shorter {
        for pos in 0..n {
            let mut m = base.clone();
            m.insert(pos, n - 1);
            out.push(m);
        }
    }
    out
}

/// Transposition count parity of a mapping, computed by cycle lengths.
fn mapping_parity(mapping: &[usize]) -> Parity {
    let n = mapping.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = mapping[cur];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Dense symmetrizer or antisymmetrizer applied to a vector,
/// `(1/N!) sum_p (+/-1)^p P_p v`.
pub fn dense_projector_apply(v: &DenseVector, antisymmetric: bool) -> Result<DenseVector> {
    let mappings = all_mappings(v.n);
    let factorial = mappings.len() as f64;
    let mut out = DenseVector::zeros(v.n, v.per_slot)?;
    for m in &mappings {
        let sign = if antisymmetric {
            mapping_parity(m).sign() as f64
        } else {
            1.0
        };
        let permuted = dense_permute(v, m)?;
        out.add_scaled(Complex64::new(sign / factorial, 0.0), &permuted);
    }
    Ok(out)
}

/// Dense projector as an explicit matrix (column-major application of
/// `dense_projector_apply` to basis vectors), for norm checks on the
/// projector itself.
pub fn dense_projector_matrix(
    n: usize,
    per_slot: usize,
    antisymmetric: bool,
) -> Result<Vec<Vec<Complex64>>> {
    let probe = DenseVector::zeros(n, per_slot)?;
    let dim = probe.dim();
    let mut cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = DenseVector::zeros(n, per_slot)?;
        e.entries[j] = Complex64::new(1.0, 0.0);
        cols.push(dense_projector_apply(&e, antisymmetric)?.entries);
    }
    Ok(cols)
}

/// Weighted dense operator `(1/N!) sum_p w_p P_p` as a matrix, columns given
/// by application to basis vectors. The weights are indexed in the order of
/// `all_mappings(n)` exposed by `weighted_mappings`.
pub fn dense_weighted_operator(
    n: usize,
    per_slot: usize,
    weights: &[(Vec<usize>, Complex64)],
) -> Result<Vec<Vec<Complex64>>> {
    let probe = DenseVector::zeros(n, per_slot)?;
    let dim = probe.dim();
    let factorial: f64 = (1..=n).product::<usize>() as f64;
    let mut cols = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut e = DenseVector::zeros(n, per_slot)?;
        e.entries[j] = Complex64::new(1.0, 0.0);
        let mut acc = DenseVector::zeros(n, per_slot)?;
        for (mapping, w) in weights {
            let permuted = dense_permute(&e, mapping)?;
            acc.add_scaled(*w / factorial, &permuted);
        }
        cols.push(acc.entries);
    }
    Ok(cols)
}

/// The oracle's own permutation listing, exposed so weighted operators can be
/// built against it.
pub fn weighted_mappings(n: usize) -> Vec<Vec<usize>> {
    all_mappings(n)
}

/// Max absolute entry of the matrix difference `A*A - A`, columns as returned
/// by the matrix builders.
pub fn idempotence_defect(matrix: &[Vec<Complex64>]) -> f64 {
    let dim = matrix.len();
    let mut worst = 0.0f64;
    for j in 0..dim {
        for i in 0..dim {
            // (A*A)[i][j] = sum_k A[i][k] A[k][j]; columns are matrix[j]
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += matrix[k][i] * matrix[j][k];
            }
            let defect = (acc - matrix[j][i]).norm();
            if defect > worst {
                worst = defect;
            }
        }
    }
    worst
}

/// Accumulate a rotation of the spin-phase parameter from `source` to
/// `target` in `steps` equal increments along the path selected by `sense`.
/// Returns the accumulated phase factor.
pub fn incremental_rotation(
    two_m: i32,
    source: f64,
    target: f64,
    sense: RotationSense,
    steps: usize,
) -> Complex64 {
    let path = sense.path_len(crate::state::Chi::new(source), crate::state::Chi::new(target));
    incremental_path(two_m, path, sense, steps)
}

/// Accumulate a rotation over an explicit path length, allowing full turns
/// that source/target pairs cannot express.
pub fn incremental_path(two_m: i32, path_len: f64, sense: RotationSense, steps: usize) -> Complex64 {
    let m = two_m as f64 / 2.0;
    let delta = path_len / steps as f64;
    let step_factor = Complex64::from_polar(1.0, sense.phase_sign() * m * delta);
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..steps {
        acc *= step_factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{apply_full, enumerate_all, Permutation};
    use crate::spin::SpinLabel;
    use crate::state::{product_inner, Chi, SingleParticleState};
    use RotationSense::{Clockwise, Counterclockwise};

    fn slot(two_s: i32, two_m: i32, chi: f64, orbital: Vec<Complex64>) -> SingleParticleState {
        SingleParticleState {
            orbital,
            spin: SpinLabel::new(two_s, two_m).unwrap(),
            chi: Chi::new(chi),
        }
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_state() -> ProductState {
        ProductState::new(
            c(0.8, -0.3),
            vec![
                slot(1, 1, 0.7, vec![c(0.6, 0.1), c(-0.2, 0.5)]),
                slot(1, -1, 2.1, vec![c(0.3, -0.4), c(0.7, 0.2)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn densify_matches_product_inner() {
        let a = sample_state();
        let b = ProductState::new(
            c(0.2, 0.9),
            vec![
                slot(1, 1, 1.3, vec![c(0.1, 0.0), c(0.9, -0.3)]),
                slot(1, -1, 0.4, vec![c(-0.5, 0.2), c(0.3, 0.3)]),
            ],
        )
        .unwrap();
        let lhs = product_inner(&a, &b).unwrap();
        let rhs = densify(&a).unwrap().dot(&densify(&b).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn densify_orthogonal_spins() {
        let a = sample_state();
        let mut flipped = a.clone();
        flipped.slots[0].spin = SpinLabel::new(1, -1).unwrap();
        flipped.slots[1].spin = SpinLabel::new(1, 1).unwrap();
        let v = densify(&a).unwrap().dot(&densify(&flipped).unwrap()).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn dense_permute_matches_apply_full() {
        for mapping in [vec![1, 0], vec![0, 1]] {
            let p = Permutation::from_mapping(mapping.clone()).unwrap();
            let a = sample_state();
            let via_struct = densify(&apply_full(&p, &a).unwrap()).unwrap();
            let via_dense = dense_permute(&densify(&a).unwrap(), &mapping).unwrap();
            for (x, y) in via_struct.entries.iter().zip(&via_dense.entries) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dense_permute_three_cycle() {
        let psi = ProductState::new(
            c(1.0, 0.0),
            vec![
                slot(0, 0, 0.0, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
                slot(0, 0, 0.0, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
                slot(0, 0, 0.0, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            ],
        )
        .unwrap();
        let mapping = vec![1, 2, 0];
        let p = Permutation::from_mapping(mapping.clone()).unwrap();
        let via_struct = densify(&apply_full(&p, &psi).unwrap()).unwrap();
        let via_dense = dense_permute(&densify(&psi).unwrap(), &mapping).unwrap();
        assert_eq!(via_struct, via_dense);
    }

    #[test]
    fn generator_counts_and_parities() {
        for n in 1..=5usize {
            let ms = all_mappings(n);
            let factorial: usize = (1..=n).product();
            assert_eq!(ms.len(), factorial);
            let evens = ms.iter().filter(|m| mapping_parity(m) == Parity::Even).count();
            if n >= 2 {
                assert_eq!(evens, factorial / 2);
            }
            // cross-check against the structured enumeration
            let mut sorted_a: Vec<_> = ms.clone();
            sorted_a.sort();
            let sorted_b: Vec<_> = enumerate_all(n)
                .unwrap()
                .into_iter()
                .map(|p| p.mapping().to_vec())
                .collect();
            assert_eq!(sorted_a, sorted_b);
            for m in &ms {
                let p = Permutation::from_mapping(m.clone()).unwrap();
                assert_eq!(p.parity().0, mapping_parity(m));
            }
        }
    }

    #[test]
    fn projector_idempotent_and_complementary_at_n2() {
        // spinless, d = 2, N = 2: S + A = I and both are idempotent
        let s = dense_projector_matrix(2, 2, false).unwrap();
        let a = dense_projector_matrix(2, 2, true).unwrap();
        assert!(idempotence_defect(&s) < 1e-14);
        assert!(idempotence_defect(&a) < 1e-14);
        for j in 0..4 {
            for i in 0..4 {
                let sum = s[j][i] + a[j][i];
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((sum - c(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn antisymmetric_trace_counts_pairs() {
        // trace of A at N = 2 equals d(d-1)/2
        for d in 2..=4usize {
            let a = dense_projector_matrix(2, d, true).unwrap();
            let trace: Complex64 = (0..d * d).map(|i| a[i][i]).sum();
            let expected = (d * (d - 1) / 2) as f64;
            assert!((trace - c(expected, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn single_slot_projectors_are_identity() {
        for anti in [false, true] {
            let m = dense_projector_matrix(1, 3, anti).unwrap();
            for j in 0..3 {
                for i in 0..3 {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((m[j][i] - c(expected, 0.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn dense_cap_enforced() {
        assert!(matches!(
            DenseVector::zeros(4, 16),
            Err(Error::DenseTooLarge { .. })
        ));
    }

    #[test]
    fn incremental_rotation_converges() {
        let direct = Complex64::from_polar(1.0, 0.5 * (2.4 - 0.7));
        let inc = incremental_rotation(1, 0.7, 2.4, Counterclockwise, 1000);
        assert!((inc - direct).norm() < 1e-9);
    }

    #[test]
    fn full_turn_half_integer_gives_minus_one() {
        let acc = incremental_path(1, std::f64::consts::TAU, Counterclockwise, 1000);
        assert!((acc - c(-1.0, 0.0)).norm() < 1e-9);
        let acc_cw = incremental_path(1, std::f64::consts::TAU, Clockwise, 1000);
        assert!((acc_cw - c(-1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn full_turn_integer_gives_plus_one() {
        let acc = incremental_path(2, std::f64::consts::TAU, Counterclockwise, 1000);
        assert!((acc - c(1.0, 0.0)).norm() < 1e-9);
    }
}
