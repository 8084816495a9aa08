//! The verification suites behind `spinstat verify`.
//!
//! Each suite draws reproducible random instances from a per-trial seeded
//! generator and reduces every property to pass/fail checks with a recorded
//! numeric defect.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use spinstat::exchange::{exchange_factor_f, exchange_factor_f_chi, transpose_pair};
use spinstat::oracle::{
    dense_projector_matrix, dense_weighted_operator, idempotence_defect, incremental_path,
    incremental_rotation, weighted_mappings, DENSE_CAP,
};
use spinstat::symmetrize::{apply_projector_capped, Projector, Statistics};
use spinstat::{
    apply_full, chained_amplitude, enumerate_all_capped, eta, feynman_amplitude, Chi, ChainedResult,
    Permutation, ProductState, RotationSense, SingleParticleState, SpinLabel, Superposition,
};

use crate::report::CheckResult;

#[derive(Debug, Clone, Copy)]
pub struct SuiteParams {
    pub particles: usize,
    pub two_s: i32,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub sense: RotationSense,
    pub cap: usize,
}

pub const SUITE_NAMES: &[&str] = &[
    "projectors",
    "exchange-factor",
    "sense-invariance",
    "equivalence",
    "chi-independence",
    "exclusion",
    "case-analysis",
    "breakdown",
    "chained",
];

pub fn run_suite(name: &str, params: &SuiteParams) -> Option<Vec<CheckResult>> {
    match name {
        "projectors" => Some(projectors(params)),
        "exchange-factor" => Some(exchange_factor(params)),
        "sense-invariance" => Some(sense_invariance(params)),
        "equivalence" => Some(equivalence(params)),
        "chi-independence" => Some(chi_independence(params)),
        "exclusion" => Some(exclusion(params)),
        "case-analysis" => Some(case_analysis(params)),
        "breakdown" => Some(breakdown(params)),
        "chained" => Some(chained(params)),
        _ => None,
    }
}

fn trial_rng(params: &SuiteParams, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(params.seed ^ trial as u64)
}

fn random_orbital(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

fn random_slot(rng: &mut ChaCha8Rng, dim: usize, two_s: i32, two_m: i32) -> SingleParticleState {
    SingleParticleState::new(
        random_orbital(rng, dim),
        SpinLabel::new(two_s, two_m).expect("valid spin"),
        Chi::new(rng.gen::<f64>() * TAU),
    )
    .expect("valid slot")
}

fn random_two_m(rng: &mut ChaCha8Rng, two_s: i32) -> i32 {
    let comps: Vec<i32> = SpinLabel::components(two_s).collect();
    comps[rng.gen_range(0..comps.len())]
}

/// A spin-component assignment that is guaranteed mixed when the spin allows.
fn mixed_two_ms(rng: &mut ChaCha8Rng, n: usize, two_s: i32) -> Vec<i32> {
    let mut ms: Vec<i32> = (0..n).map(|_| random_two_m(rng, two_s)).collect();
    if two_s > 0 && n >= 2 && ms.iter().all(|&m| m == ms[0]) {
        let other = if ms[0] == two_s { two_s - 2 } else { two_s };
        ms[0] = other;
    }
    ms
}

fn random_product(
    rng: &mut ChaCha8Rng,
    dim: usize,
    two_s: i32,
    two_ms: &[i32],
) -> ProductState {
    let slots = two_ms
        .iter()
        .map(|&m| random_slot(rng, dim, two_s, m))
        .collect();
    ProductState::new(Complex64::new(1.0, 0.0), slots).expect("valid product")
}

fn check(name: String, passed: bool, defect: f64, tol: f64) -> CheckResult {
    CheckResult::new(name, passed, format!("defect {defect:.3e} (tol {tol:.1e})"))
}

/// Dense orbital dimension that keeps `(d * (2s+1))^n` under the oracle cap.
fn dense_dim(dim: usize, two_s: i32, n: usize) -> Option<usize> {
    (1..=dim)
        .rev()
        .find(|&d| (d * (two_s as usize + 1)).pow(n as u32) <= DENSE_CAP)
}

fn projectors(params: &SuiteParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let tol = 1e-12;
    let top = params.particles.clamp(2, 4);
    for n in 2..=top {
        let Some(d) = dense_dim(params.dim, params.two_s, n) else {
            out.push(CheckResult::new(
                format!("projectors/n{n}/fits-dense-cap"),
                false,
                "no orbital dimension fits under the dense cap".to_string(),
            ));
            continue;
        };
        let per_slot = d * (params.two_s as usize + 1);
        let s = dense_projector_matrix(n, per_slot, false).expect("dense S");
        let a = dense_projector_matrix(n, per_slot, true).expect("dense A");
        let ds = idempotence_defect(&s);
        let da = idempotence_defect(&a);
        out.push(check(format!("projectors/n{n}/S-idempotent"), ds < tol, ds, tol));
        out.push(check(format!("projectors/n{n}/A-idempotent"), da < tol, da, tol));
        // S A = 0 in matrix form
        let dim = s.len();
        let mut worst = 0.0f64;
        for j in 0..dim {
            for i in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += s[k][i] * a[j][k];
                }
                worst = worst.max(acc.norm());
            }
        }
        out.push(check(format!("projectors/n{n}/S-A-orthogonal"), worst < tol, worst, tol));
        if n == 2 {
            let mut worst = 0.0f64;
            for j in 0..dim {
                for i in 0..dim {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((s[j][i] + a[j][i] - Complex64::new(expect, 0.0)).norm());
                }
            }
            out.push(check("projectors/n2/S-plus-A-is-identity".into(), worst < tol, worst, tol));
            let trace_a: Complex64 = (0..dim).map(|i| a[i][i]).sum();
            let expect = (per_slot * (per_slot - 1) / 2) as f64;
            let defect = (trace_a - Complex64::new(expect, 0.0)).norm();
            out.push(check("projectors/n2/A-trace-counts-pairs".into(), defect < tol, defect, tol));
        }
    }
    out
}

fn exchange_factor(params: &SuiteParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let tol = 1e-12;
    let mut worst_equal = 0.0f64;
    let mut worst_mixed = 0.0f64;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let two_m = random_two_m(&mut rng, params.two_s);
        for sense in [RotationSense::Counterclockwise, RotationSense::Clockwise] {
            let psi = random_product(&mut rng, params.dim, params.two_s, &[two_m, two_m]);
            let (_, f) = transpose_pair(&psi, 0, 1, sense).expect("transpose");
            let expect = Complex64::new(exchange_factor_f(params.two_s), 0.0);
            worst_equal = worst_equal.max((f - expect).norm());
        }
        if params.two_s > 0 {
            let ma = params.two_s;
            let mb = params.two_s - 2;
            let psi = random_product(&mut rng, params.dim, params.two_s, &[ma, mb]);
            for sense in [RotationSense::Counterclockwise, RotationSense::Clockwise] {
                let (_, f) = transpose_pair(&psi, 0, 1, sense).expect("transpose");
                let expect = exchange_factor_f_chi(
                    params.two_s,
                    ma,
                    mb,
                    psi.slots[0].chi,
                    psi.slots[1].chi,
                )
                .expect("formula");
                worst_mixed = worst_mixed.max((f - expect).norm());
            }
        }
    }
    out.push(check(
        "exchange-factor/equal-components-spin-sign".into(),
        worst_equal < tol,
        worst_equal,
        tol,
    ));
    if params.two_s > 0 {
        out.push(check(
            "exchange-factor/mixed-components-formula".into(),
            worst_mixed < tol,
            worst_mixed,
            tol,
        ));
    }
    // step-by-step rotation oracle agrees with the closed form
    let otol = 1e-9;
    let inc = incremental_rotation(1, 0.7, 2.4, RotationSense::Counterclockwise, 1000);
    let direct = Complex64::from_polar(1.0, 0.5 * (2.4 - 0.7));
    let d1 = (inc - direct).norm();
    out.push(check("exchange-factor/incremental-converges".into(), d1 < otol, d1, otol));
    let full = incremental_path(1, TAU, params.sense, 1000);
    let d2 = (full - Complex64::new(-1.0, 0.0)).norm();
    out.push(check("exchange-factor/full-turn-half-integral".into(), d2 < otol, d2, otol));
    out
}

fn sense_invariance(params: &SuiteParams) -> Vec<CheckResult> {
    let n = params.particles.clamp(2, 3);
    let mut worst = 0.0f64;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let ms = mixed_two_ms(&mut rng, n, params.two_s.max(1));
        let two_s = params.two_s.max(1);
        let bra = random_product(&mut rng, params.dim, two_s, &ms);
        let mut ket_ms = ms.clone();
        ket_ms.shuffle(&mut rng);
        let ket = random_product(&mut rng, params.dim, two_s, &ket_ms);
        let pb = Superposition::from_product(bra);
        let pa = Superposition::from_product(ket);
        let ccw = feynman_amplitude(&pb, &pa, RotationSense::Counterclockwise).expect("ccw");
        let cw = feynman_amplitude(&pb, &pa, RotationSense::Clockwise).expect("cw");
        worst = worst.max((ccw.probability - cw.probability).abs());
    }
    vec![check(
        "sense-invariance/probability-matches".into(),
        worst < params.tol,
        worst,
        params.tol,
    )]
}

fn equivalence(params: &SuiteParams) -> Vec<CheckResult> {
    let n = params.particles.clamp(2, params.cap.min(4));
    let mut worst = 0.0f64;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let two_m = random_two_m(&mut rng, params.two_s);
        let ms = vec![two_m; n];
        let bra = random_product(&mut rng, params.dim, params.two_s, &ms);
        let ket = random_product(&mut rng, params.dim, params.two_s, &ms);
        let pb = Superposition::from_product(bra);
        let pa = Superposition::from_product(ket);
        let fey = feynman_amplitude(&pb, &pa, params.sense).expect("feynman");
        let std =
            spinstat::standard_amplitude(&pb, &pa, Statistics::SpinDerived(params.two_s))
                .expect("standard");
        worst = worst.max((fey.f - std.f).norm());
    }
    vec![check(
        "equivalence/superposed-equals-projected".into(),
        worst < params.tol,
        worst,
        params.tol,
    )]
}

fn chi_independence(params: &SuiteParams) -> Vec<CheckResult> {
    let n = params.particles.clamp(2, 3);
    let two_s = params.two_s.max(1);
    let mut worst = 0.0f64;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let ms = mixed_two_ms(&mut rng, n, two_s);
        let mut ket_ms = ms.clone();
        ket_ms.shuffle(&mut rng);
        let mut bra = random_product(&mut rng, params.dim, two_s, &ms);
        let mut ket = random_product(&mut rng, params.dim, two_s, &ket_ms);
        let base = feynman_amplitude(
            &Superposition::from_product(bra.clone()),
            &Superposition::from_product(ket.clone()),
            params.sense,
        )
        .expect("base");
        // resample every angle; the probability must not move
        for s in bra.slots.iter_mut().chain(ket.slots.iter_mut()) {
            s.chi = Chi::new(rng.gen::<f64>() * TAU);
        }
        let moved = feynman_amplitude(
            &Superposition::from_product(bra),
            &Superposition::from_product(ket),
            params.sense,
        )
        .expect("moved");
        worst = worst.max((base.probability - moved.probability).abs());
    }
    vec![check(
        "chi-independence/probability-invariant".into(),
        worst < params.tol,
        worst,
        params.tol,
    )]
}

fn exclusion(params: &SuiteParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let odd = if params.two_s % 2 == 1 { params.two_s } else { params.two_s + 1 };
    let even = if params.two_s % 2 == 0 { params.two_s } else { params.two_s + 1 };
    let mut worst_amp = 0.0f64;
    let mut worst_proj = 0.0f64;
    let mut boson_min = f64::INFINITY;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let dup = random_slot(&mut rng, params.dim, odd, odd);
        let extra = random_slot(&mut rng, params.dim, odd, odd);
        let psi = ProductState::new(
            Complex64::new(1.0, 0.0),
            vec![dup.clone(), dup.clone(), extra],
        )
        .expect("state");
        let phi = Superposition::from_product(psi);
        let amp = feynman_amplitude(&phi, &phi, params.sense).expect("amplitude");
        worst_amp = worst_amp.max(amp.f.norm());
        let projected =
            apply_projector_capped(&phi, Projector::Antisymmetric, params.cap).expect("project");
        worst_proj = worst_proj.max(projected.norm());

        let bdup = random_slot(&mut rng, params.dim, even, even);
        let bpsi = ProductState::new(Complex64::new(1.0, 0.0), vec![bdup.clone(), bdup])
            .expect("boson state");
        let bphi = Superposition::from_product(bpsi);
        let bamp = feynman_amplitude(&bphi, &bphi, params.sense).expect("boson amplitude");
        boson_min = boson_min.min(bamp.f.norm());
    }
    out.push(check(
        "exclusion/duplicate-half-integral-amplitude-vanishes".into(),
        worst_amp < params.tol,
        worst_amp,
        params.tol,
    ));
    out.push(check(
        "exclusion/antisymmetrizer-annihilates-duplicates".into(),
        worst_proj < params.tol,
        worst_proj,
        params.tol,
    ));
    out.push(CheckResult::new(
        "exclusion/duplicate-integral-amplitude-survives",
        boson_min > 0.5,
        format!("smallest duplicate-boson amplitude modulus {boson_min:.3e}"),
    ));
    out
}

fn case_analysis(params: &SuiteParams) -> Vec<CheckResult> {
    let n = params.particles.clamp(3, 4);
    let two_s = params.two_s.max(1);
    let tol = 1e-12;
    let mut worst_preserving = 0.0f64;
    let mut worst_coset = 0.0f64;
    for trial in 0..params.trials {
        let mut rng = trial_rng(params, trial);
        let ms = mixed_two_ms(&mut rng, n, two_s);
        let psi = random_product(&mut rng, params.dim, two_s, &ms);
        let perms = enumerate_all_capped(n, params.cap).expect("enumerate");
        // group permutations by where they send the component assignment
        let mut groups: Vec<(Vec<i32>, Vec<(Complex64, f64)>)> = Vec::new();
        for p in &perms {
            let moved = apply_full(p, &psi).expect("move").two_ms();
            let (factor, _) = eta(p, &psi, params.sense).expect("eta");
            let sign = f64::from(p.parity().0.sign());
            match groups.iter_mut().find(|(k, _)| *k == moved) {
                Some((_, v)) => v.push((factor, sign)),
                None => groups.push((moved, vec![(factor, sign)])),
            }
        }
        for (moved, members) in &groups {
            if *moved == ms {
                // assignment-preserving members carry a pure exchange sign
                for (factor, sign) in members {
                    let expect = if two_s % 2 == 1 {
                        Complex64::new(*sign, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0)
                    };
                    worst_preserving = worst_preserving.max((factor - expect).norm());
                }
            }
            // within any group the eta factors share one chi phase
            let (f0, s0) = members[0];
            let base = f0 * if two_s % 2 == 1 { s0 } else { 1.0 };
            for (factor, sign) in members {
                let reduced = factor * if two_s % 2 == 1 { *sign } else { 1.0 };
                worst_coset = worst_coset.max((reduced - base).norm());
            }
        }
    }
    vec![
        check(
            "case-analysis/assignment-preserving-eta-is-sign".into(),
            worst_preserving < tol,
            worst_preserving,
            tol,
        ),
        check(
            "case-analysis/common-phase-within-groups".into(),
            worst_coset < tol,
            worst_coset,
            tol,
        ),
    ]
}

fn breakdown(params: &SuiteParams) -> Vec<CheckResult> {
    // an eta-weighted permutation average on a mixed-component state is not a
    // projector, unlike the plain antisymmetrizer it generalizes
    let n = 3;
    let two_s = if params.two_s % 2 == 1 { params.two_s } else { 1 };
    let d = dense_dim(params.dim, two_s, n).unwrap_or(1);
    let per_slot = d * (two_s as usize + 1);
    let mut rng = trial_rng(params, 0);
    let ms = vec![two_s, two_s, two_s - 2];
    let psi = random_product(&mut rng, d, two_s, &ms);
    let weights: Vec<(Vec<usize>, Complex64)> = weighted_mappings(n)
        .into_iter()
        .map(|mapping| {
            let p = Permutation::from_mapping(mapping.clone()).expect("mapping");
            let (factor, _) = eta(&p, &psi, params.sense).expect("eta");
            // in the equal-component limit these weights reduce to parity
            // signs and the operator to the antisymmetrizer
            (mapping, factor)
        })
        .collect();
    let weighted = dense_weighted_operator(n, per_slot, &weights).expect("weighted operator");
    let defect = idempotence_defect(&weighted);
    let control = idempotence_defect(&dense_projector_matrix(n, per_slot, true).expect("dense A"));
    vec![
        CheckResult::new(
            "breakdown/eta-weighted-average-not-idempotent",
            defect > 1e-6,
            format!("idempotence defect {defect:.3e} (must exceed 1e-6)"),
        ),
        check("breakdown/antisymmetrizer-control".into(), control < 1e-12, control, 1e-12),
    ]
}

fn chained(params: &SuiteParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = trial_rng(params, 0);
    let two_s = params.two_s.max(1);
    let ms = [two_s, two_s - 2];
    let a = Superposition::from_product(random_product(&mut rng, 2, two_s, &ms));
    let b = Superposition::from_product(random_product(&mut rng, 2, two_s, &ms));
    // a complete orthonormal set of product intermediates
    let mut basis = Vec::new();
    for k1 in 0..2 {
        for &m1 in &[two_s, two_s - 2] {
            for k2 in 0..2 {
                for &m2 in &[two_s, two_s - 2] {
                    let slots = vec![
                        SingleParticleState::basis(2, k1, SpinLabel::new(two_s, m1).unwrap(), Chi::ZERO)
                            .unwrap(),
                        SingleParticleState::basis(2, k2, SpinLabel::new(two_s, m2).unwrap(), Chi::ZERO)
                            .unwrap(),
                    ];
                    basis.push(Superposition::from_product(
                        ProductState::new(Complex64::new(1.0, 0.0), slots).unwrap(),
                    ));
                }
            }
        }
    }
    let chained = chained_amplitude(&b, &basis, &a, params.sense, false).expect("chained");
    let direct = feynman_amplitude(&b, &a, params.sense).expect("direct");
    let defect = match chained {
        ChainedResult::Amplitude(v) => (v - direct.f).norm(),
        ChainedResult::Probability(_) => f64::INFINITY,
    };
    out.push(check(
        "chained/complete-intermediates-recover-direct".into(),
        defect < params.tol,
        defect,
        params.tol,
    ));

    let observed = chained_amplitude(&b, &basis, &a, params.sense, true).expect("observed");
    let sum_probs = match observed {
        ChainedResult::Probability(p) => p,
        ChainedResult::Amplitude(_) => f64::NAN,
    };
    out.push(CheckResult::new(
        "chained/observed-path-returns-probability",
        sum_probs.is_finite() && sum_probs >= 0.0,
        format!("summed path probability {sum_probs:.6e}"),
    ));

    let empty: Vec<Superposition> = Vec::new();
    let rejects_empty = chained_amplitude(&b, &empty, &a, params.sense, false).is_err();
    out.push(CheckResult::new(
        "chained/rejects-empty-intermediates",
        rejects_empty,
        "empty intermediate list must error".to_string(),
    ));
    let fat = a.scaled(Complex64::new(2.0, 0.0));
    let rejects_fat = chained_amplitude(&b, &[fat], &a, params.sense, false).is_err();
    out.push(CheckResult::new(
        "chained/rejects-non-unit-intermediates",
        rejects_fat,
        "non-unit intermediate must error".to_string(),
    ));
    out
}
