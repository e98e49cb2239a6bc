use std::io::{Read, Write};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{channel_fidelity_profile, default_targets, fidelity_bound, o_parameter, OParameter};
use crate::bell::{classify, random_subspace_state, BellLabel, SubspaceWeights};
use crate::error::{Error, Result};
use crate::qstate::State;
use crate::scalar::{cre, Real};

pub const SWEEP_HEADER: [&str; 12] =
    ["channel_id", "O", "Sx", "Sy", "Sz", "w_mm", "w_mp", "w_pm", "w_pp", "F_min", "F_mean", "bound"];

/// How random channels are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampler {
    /// Haar-random chain states.
    Haar,
    /// `√(1−t)·haar + √t·in-subspace`, renormalized, with `t ~ U[0,1]` and a
    /// uniformly drawn subspace. Spreads `𝒪` over its whole range.
    Biased,
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(Sampler::Haar),
            "biased" => Ok(Sampler::Biased),
            other => Err(Error::Parse(format!("unknown sampler {other:?} (haar|biased)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord<T> {
    pub channel_id: usize,
    pub o: OParameter<T>,
    pub weights: SubspaceWeights<T>,
    pub fidelity_min: T,
    pub fidelity_mean: T,
    pub bound: T,
}

fn draw_channel<T: Real, R: Rng + ?Sized>(sites: usize, sampler: Sampler, rng: &mut R) -> Result<State<T>> {
    let haar = State::random_haar(2, sites, rng)?;
    match sampler {
        Sampler::Haar => Ok(haar),
        Sampler::Biased => {
            let t: f64 = rng.random();
            let label = BellLabel::from_index(rng.random_range(0..4));
            let sub = random_subspace_state(sites, label, rng)?;
            haar.combine(cre(T::lit((1.0 - t).sqrt())), &sub, cre(T::lit(t.sqrt())))?.renormalized()
        }
    }
}

fn run_channel<T: Real>(channel_id: usize, sites: usize, seed: u64, sampler: Sampler) -> Result<SweepRecord<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(channel_id as u64);
    let channel = draw_channel::<T, _>(sites, sampler, &mut rng)?;
    let targets = default_targets::<T, _>(&mut rng)?;
    let weights = classify(&channel)?;
    let o = o_parameter(&channel)?;
    let profile = channel_fidelity_profile(&channel, &targets, weights.argmax())?;
    Ok(SweepRecord {
        channel_id,
        o,
        weights,
        fidelity_min: profile.min,
        fidelity_mean: profile.mean,
        bound: fidelity_bound(&o),
    })
}

/// Draws `channels` random chains of `sites` qubits and records `𝒪`, the
/// subspace weights, and the fidelity profile of each, assuming the dominant
/// subspace. Channel `i` uses its own ChaCha stream `i` under `seed`, so the
/// output does not depend on thread scheduling.
pub fn sweep_experiment<T: Real>(channels: usize, sites: usize, seed: u64, sampler: Sampler) -> Result<Vec<SweepRecord<T>>> {
    if sites == 0 || sites % 2 == 1 {
        return Err(Error::OddLength(sites));
    }
    (0..channels).into_par_iter().map(|id| run_channel(id, sites, seed, sampler)).collect()
}

fn fmt<T: Real>(x: T) -> String {
    format!("{:.15e}", x.as_f64())
}

pub fn write_sweep_csv<T: Real, W: Write>(out: W, records: &[SweepRecord<T>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for r in records {
        let mut row = vec![r.channel_id.to_string(), fmt(r.o.value)];
        row.extend(r.o.components.iter().map(|&c| fmt(c)));
        row.extend(BellLabel::ALL.iter().map(|&l| fmt(r.weights.get(l))));
        row.extend([fmt(r.fidelity_min), fmt(r.fidelity_mean), fmt(r.bound)]);
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(input: R) -> Result<Vec<SweepRecord<f64>>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(SWEEP_HEADER.iter().copied()) {
        return Err(Error::Parse(format!("unexpected sweep header {header:?}")));
    }
    let mut records = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let f = |i: usize| -> Result<f64> {
            row[i].parse().map_err(|_| Error::Parse(format!("bad number {:?} in column {}", &row[i], SWEEP_HEADER[i])))
        };
        let channel_id = row[0].parse().map_err(|_| Error::Parse(format!("bad channel id {:?}", &row[0])))?;
        records.push(SweepRecord {
            channel_id,
            o: OParameter { value: f(1)?, components: [f(2)?, f(3)?, f(4)?] },
            weights: SubspaceWeights { w: [f(5)?, f(6)?, f(7)?, f(8)?] },
            fidelity_min: f(9)?,
            fidelity_mean: f(10)?,
            bound: f(11)?,
        });
    }
    Ok(records)
}
