use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bell::{bell_product, classify, random_subspace_state, BellLabel, LabelVector};
use crate::scalar::cre;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn in_subspace_channels_teleport_perfectly() {
    let mut r = rng(1);
    for sites in [2, 4, 6] {
        for label in BellLabel::ALL {
            let channel = random_subspace_state::<f64, _>(sites, label, &mut r).unwrap();
            let targets = default_targets::<f64, _>(&mut r).unwrap();
            let profile = channel_fidelity_profile(&channel, &targets, label).unwrap();
            assert!(profile.min > 1.0 - 1e-10, "L={sites} {label}: {}", profile.min);
            assert!((profile.mean - 1.0).abs() < 1e-10);
            let o = o_parameter(&channel).unwrap();
            assert!((o.value - 3.0).abs() < 1e-10 && (fidelity_bound(&o) - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn branch_probabilities_sum_to_one() {
    let mut r = rng(2);
    let channel = State::<f64>::random_haar(2, 4, &mut r).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    let total: f64 = branch_residuals(&channel, &target)
        .unwrap()
        .iter()
        .map(|(_, v)| v.iter().map(|a| a.norm_sqr()).sum::<f64>())
        .sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn sequential_projection_matches_one_shot_contraction() {
    let mut r = rng(3);
    let channel = State::<f64>::random_haar(2, 4, &mut r).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    for (labels, residual) in branch_residuals(&channel, &target).unwrap() {
        let out = teleport_branch(&channel, &target, &labels, BellLabel::PLUS_PLUS).unwrap();
        let p: f64 = residual.iter().map(|a| a.norm_sqr()).sum();
        assert!((out.probability - p).abs() < 1e-13);
        let q = out.output_qubit.unwrap();
        let overlap = q.inner(&State::normalized(2, 1, residual).unwrap()).unwrap().norm_sqr();
        assert!((overlap - 1.0).abs() < 1e-12);
    }
}

#[test]
fn circuit_route_reproduces_branch_probabilities() {
    let mut r = rng(4);
    let channel = State::<f64>::random_haar(2, 2, &mut r).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    let full = target.tensor(&channel).unwrap();
    for label in BellLabel::ALL {
        let (_, p) = bell_measure_via_circuit(&full, (1, 2), label).unwrap();
        let out = teleport_branch(&channel, &target, &LabelVector::new(vec![label]).unwrap(), label).unwrap();
        assert!((p - out.probability).abs() < 1e-13);
    }
}

#[test]
fn zero_probability_branches_are_flagged() {
    // a maximally entangled channel gives every outcome probability 1/4
    let channel = bell_product::<f64>(&LabelVector::uniform(BellLabel::PLUS_PLUS, 1).unwrap());
    let target = State::up();
    let mut flagged = 0;
    for labels in LabelVector::enumerate(1) {
        let out = teleport_branch(&channel, &target, &labels, BellLabel::PLUS_PLUS).unwrap();
        if out.is_flagged() {
            flagged += 1;
            assert!(out.output_qubit.is_none() && out.probability < 1e-12);
        }
    }
    assert_eq!(flagged, 0);
    // |↓⟩ ⊗ |↑↑⟩: the measured pair has odd parity, so both z = + outcomes vanish
    let channel = State::<f64>::product(2, &[0, 0]).unwrap();
    let flagged = LabelVector::enumerate(1)
        .filter(|l| teleport_branch(&channel, &State::down(), l, BellLabel::PLUS_PLUS).unwrap().is_flagged())
        .count();
    assert_eq!(flagged, 2);
}

#[test]
fn sampled_outcome_frequencies_follow_born_rule() {
    let mut r = rng(5);
    let channel = State::<f64>::random_haar(2, 4, &mut r).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    let exact: Vec<(LabelVector, f64)> = branch_residuals(&channel, &target)
        .unwrap()
        .into_iter()
        .map(|(l, v)| (l, v.iter().map(|a| a.norm_sqr()).sum()))
        .collect();
    let shots = 20_000;
    let mut counts = vec![0usize; exact.len()];
    for _ in 0..shots {
        let out = teleport_sample(&channel, &target, BellLabel::PLUS_PLUS, &mut r).unwrap();
        let k = out.outcomes.iter().fold(0, |acc, l| acc * 4 + l.index());
        counts[k] += 1;
        assert!(out.probability > 0.0);
    }
    for ((labels, p), &n) in exact.iter().zip(&counts) {
        let freq = n as f64 / shots as f64;
        let sigma = (p * (1.0 - p) / shots as f64).sqrt();
        assert!((freq - p).abs() < 5.0 * sigma + 1e-3, "{labels}: {freq} vs {p}");
    }
}

#[test]
fn o_parameter_of_bell_products() {
    for labels in LabelVector::enumerate(2) {
        let s = bell_product::<f64>(&labels);
        let o = o_parameter(&s).unwrap();
        assert!((o.value - 3.0).abs() < 1e-12);
        let product = labels.product();
        assert!((o.components[0] - product.x.value::<f64>()).abs() < 1e-12);
        assert!((o.components[2] - product.z.value::<f64>()).abs() < 1e-12);
    }
}

#[test]
fn o_parameter_dominates_subspace_weight() {
    let mut r = rng(6);
    for _ in 0..50 {
        let s = State::<f64>::random_haar(2, 4, &mut r).unwrap();
        let w = classify(&s).unwrap().max_weight();
        assert!(o_parameter(&s).unwrap().value >= 4.0 * w - 1.0 - 1e-12);
    }
}

#[test]
fn mixing_toward_a_subspace_raises_fidelity() {
    let mut r = rng(7);
    let haar = State::<f64>::random_haar(2, 4, &mut r).unwrap();
    let sub = random_subspace_state::<f64, _>(4, BellLabel::PLUS_PLUS, &mut r).unwrap();
    let targets = axis_targets::<f64>();
    let near = haar.combine(cre(0.05), &sub, cre(1.0)).unwrap().renormalized().unwrap();
    let f = channel_fidelity_profile(&near, &targets, BellLabel::PLUS_PLUS).unwrap();
    assert!(f.mean > 0.99);
}

#[test]
fn sweep_is_deterministic_and_round_trips_through_csv() {
    let a = sweep_experiment::<f64>(6, 4, 11, Sampler::Biased).unwrap();
    let b = sweep_experiment::<f64>(6, 4, 11, Sampler::Biased).unwrap();
    assert_eq!(a, b);
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, &a).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("channel_id,O,Sx,Sy,Sz,w_mm,w_mp,w_pm,w_pp,F_min,F_mean,bound\n"));
    let back = read_sweep_csv(buf.as_slice()).unwrap();
    assert_eq!(back.len(), 6);
    for (x, y) in a.iter().zip(&back) {
        assert_eq!(x.channel_id, y.channel_id);
        assert!((x.o.value - y.o.value).abs() <= 1e-14 * x.o.value.abs().max(1.0));
        assert!((x.fidelity_min - y.fidelity_min).abs() <= 1e-14);
    }
}

#[test]
fn rejects_odd_chains_and_bad_targets() {
    let odd = State::<f64>::product(2, &[0, 0, 0]).unwrap();
    assert!(o_parameter(&odd).is_err());
    let even = State::<f64>::product(2, &[0, 0]).unwrap();
    assert!(teleport_branch(&even, &even, &LabelVector::uniform(BellLabel::SINGLET, 1).unwrap(), BellLabel::SINGLET).is_err());
    assert!("gauss".parse::<Sampler>().is_err());
}

fn singlet() -> State<f64> {
    bell_product::<f64>(&LabelVector::uniform(BellLabel::SINGLET, 1).unwrap())
}

#[test]
fn singlet_channel_outcomes_are_equiprobable() {
    let mut r = rng(12);
    let target = State::random_haar(2, 1, &mut r).unwrap();
    for labels in LabelVector::enumerate(1) {
        let out = teleport_branch(&singlet(), &target, &labels, BellLabel::SINGLET).unwrap();
        assert!((out.probability - 0.25).abs() < 1e-14);
        assert!((out.fidelity.unwrap() - 1.0).abs() < 1e-12);
    }
    let two = bell_product::<f64>(&LabelVector::uniform(BellLabel::SINGLET, 2).unwrap());
    for labels in LabelVector::enumerate(2) {
        let out = teleport_branch(&two, &State::up(), &labels, classify(&two).unwrap().argmax()).unwrap();
        assert!((out.fidelity.unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn product_channel_against_dense_oracle() {
    // |↑↓⟩ channel, |+⟩ target, qubit order (target, 1, 2)
    let channel = State::<f64>::product(2, &[0, 1]).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let target = State::from_amplitudes(2, 1, vec![cre(h), cre(h)]).unwrap();
    let full: Vec<f64> = (0..8).map(|i| if i & 0b011 == 0b001 { h } else { 0.0 }).collect();
    let assumed = classify(&channel).unwrap().argmax();
    assert_eq!(assumed, BellLabel::SINGLET);
    for labels in LabelVector::enumerate(1) {
        let bell: Vec<f64> = crate::bell::bell_state::<f64>(labels.labels()[0]).amplitudes().iter().map(|a| a.re).collect();
        let residual: Vec<f64> = (0..2).map(|k| (0..4).map(|i| bell[i] * full[i * 2 + k]).sum()).collect();
        let p: f64 = residual.iter().map(|x| x * x).sum();
        let c = crate::bell::subspace_correction(assumed, &labels).inverse().matrix::<f64>();
        let norm = p.sqrt();
        let corrected: Vec<_> = (0..2)
            .map(|row| (0..2).fold(cre(0.0), |acc, col| acc + c.get(row, col) * (residual[col] / norm)))
            .collect();
        let f = (corrected[0] * h + corrected[1] * h).norm_sqr();
        let out = teleport_branch(&channel, &target, &labels, assumed).unwrap();
        assert!((out.probability - p).abs() < 1e-14);
        assert!((out.fidelity.unwrap() - f).abs() < 1e-14);
        assert!((f - 0.5).abs() < 1e-14);
    }
}

#[test]
fn sampling_a_singlet_and_replaying_seeds() {
    let mut r = rng(13);
    let mut counts = [0usize; 4];
    for _ in 0..10_000 {
        let out = teleport_sample(&singlet(), &State::up(), BellLabel::SINGLET, &mut r).unwrap();
        counts[out.outcomes.labels()[0].index()] += 1;
    }
    for n in counts {
        assert!((n as f64 / 1e4 - 0.25).abs() < 0.02);
    }
    let mg = crate::channels::majumdar_ghosh_state::<f64>(6).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    let sub = classify(&mg).unwrap().argmax();
    let a = teleport_sample(&mg, &target, sub, &mut rng(14)).unwrap();
    let b = teleport_sample(&mg, &target, sub, &mut rng(14)).unwrap();
    assert_eq!(a.outcomes, b.outcomes);
    assert_eq!(a.probability, b.probability);
    for _ in 0..200 {
        let out = teleport_sample(&mg, &target, sub, &mut r).unwrap();
        assert!((out.fidelity.unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn o_parameter_examples_and_bound_values() {
    let o = o_parameter(&singlet()).unwrap();
    assert!(o.components.iter().all(|c| (c + 1.0).abs() < 1e-14));
    let o = o_parameter(&State::<f64>::product(2, &[0, 1]).unwrap()).unwrap();
    assert!(o.components[0].abs() < 1e-15 && o.components[1].abs() < 1e-15);
    assert!((o.components[2] + 1.0).abs() < 1e-15 && (o.value - 1.0).abs() < 1e-15);
    for (v, b) in [(3.0, 1.0), (1.0, 0.0), (0.0, -0.5)] {
        assert_eq!(fidelity_bound(&OParameter { value: v, components: [0.0; 3] }), b);
    }
}

#[test]
fn circuit_on_singlet_is_certain() {
    let (branch, p) = bell_measure_via_circuit(&singlet(), (1, 2), BellLabel::SINGLET).unwrap();
    assert!((p - 1.0).abs() < 1e-14);
    assert!((singlet().inner(&branch).unwrap().norm() - 1.0).abs() < 1e-14);
    assert!(bell_measure_via_circuit(&singlet(), (1, 3), BellLabel::SINGLET).is_err());
}

#[test]
fn correction_sign_does_not_change_fidelity() {
    let mut r = rng(15);
    let channel = State::<f64>::random_haar(2, 2, &mut r).unwrap();
    let target = State::random_haar(2, 1, &mut r).unwrap();
    for labels in LabelVector::enumerate(1) {
        let out = teleport_branch(&channel, &target, &labels, BellLabel::PLUS_PLUS).unwrap();
        let q = out.output_qubit.unwrap();
        let flipped = crate::bell::SignedCorrection::new(out.applied_correction.sign.flip(), out.applied_correction.index);
        let moved = State::from_amplitudes(2, 1, flipped.matrix::<f64>().apply(q.amplitudes()).unwrap()).unwrap();
        assert!((target.inner(&moved).unwrap().norm_sqr() - out.fidelity.unwrap()).abs() < 1e-14);
    }
}

#[test]
fn empty_sweep() {
    assert!(sweep_experiment::<f64>(0, 4, 1, Sampler::Haar).unwrap().is_empty());
    assert!(sweep_experiment::<f64>(1, 3, 1, Sampler::Haar).is_err());
}
