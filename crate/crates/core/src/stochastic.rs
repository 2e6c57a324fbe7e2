//! Monte Carlo checks of the average-case behaviour of inflation.
//!
//! Intervals are drawn digit by digit in the generic form
//! `0.x₁…x_{j−1}[y_j…y_{j+k}, z_j…z_{j+k}]`: the prefix has `x₁ ≠ 0`, the
//! first bracket digits satisfy `y_j < z_j` (by rejection) and every other
//! digit is uniform on `0..=9`.
//!
//! # Reproducibility
//!
//! Sample `i` draws from ChaCha8 keyed by `seed` (through
//! `ChaCha8Rng::seed_from_u64`) on stream `i`. Samples are folded in fixed
//! chunks of [`CHUNK`] in index order, so a report depends only on
//! `(j, k, samples, seed)` and not on how many threads ran it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::decimal::{ExactDecimal, Sign};
use crate::error::{Error, Result};
use crate::info::{information_loss, scientific_parts};
use crate::interval::DecimalInterval;
use crate::transform;

/// Samples per reduction chunk.
pub const CHUNK: u64 = 4096;

/// Number of `(s, t)` cells with `0 ≤ s < t ≤ 9`.
pub const PAIR_CELLS: usize = 45;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationConfig {
    /// Position of the first differing digit.
    pub j: u32,
    /// Bracket digits retained after one inflation; each bound carries
    /// `k + 1` bracket digits.
    pub k: u32,
    pub samples: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn new(j: u32, k: u32, samples: u64, seed: u64) -> Result<Self> {
        let c = SimulationConfig {
            j,
            k,
            samples,
            seed,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=1000).contains(&self.j) {
            return Err(Error::InvalidArgument(format!(
                "j must be in 1..=1000, got {}",
                self.j
            )));
        }
        if !(2..=1000).contains(&self.k) {
            return Err(Error::InvalidArgument(format!(
                "k must be in 2..=1000, got {}",
                self.k
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be positive".into()));
        }
        Ok(())
    }
}

/// Digits of one generic interval before assembly.
struct Draw {
    prefix: Vec<u8>,
    first: (u8, u8),
    lo_tail: Vec<u8>,
    hi_tail: Vec<u8>,
}

impl Draw {
    fn interval(&self) -> DecimalInterval {
        let bound = |first: u8, tail: &[u8]| {
            let mut digits = self.prefix.clone();
            digits.push(first);
            digits.extend_from_slice(tail);
            ExactDecimal::from_parts(Sign::Positive, digits, 0).expect("decimal digits")
        };
        DecimalInterval::new(
            bound(self.first.0, &self.lo_tail),
            bound(self.first.1, &self.hi_tail),
        )
        .expect("y_j < z_j orders the bounds")
    }
}

fn digit<R: Rng + ?Sized>(rng: &mut R) -> u8 {
    rng.random_range(0..10u8)
}

fn draw<R: Rng + ?Sized>(config: &SimulationConfig, rng: &mut R) -> Draw {
    let mut prefix = Vec::with_capacity(config.j as usize - 1);
    if config.j > 1 {
        prefix.push(rng.random_range(1..10u8));
        prefix.extend((2..config.j).map(|_| digit(rng)));
    }
    let first = loop {
        let (y, z) = (digit(rng), digit(rng));
        if y < z {
            break (y, z);
        }
    };
    let lo_tail = (0..config.k).map(|_| digit(rng)).collect();
    let hi_tail = (0..config.k).map(|_| digit(rng)).collect();
    Draw {
        prefix,
        first,
        lo_tail,
        hi_tail,
    }
}

/// Draws one interval of the generic form.
pub fn sample_generic_interval<R: Rng + ?Sized>(
    config: &SimulationConfig,
    rng: &mut R,
) -> DecimalInterval {
    draw(config, rng).interval()
}

/// The generator for sample `index`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn pair_index(s: u8, t: u8) -> usize {
    // cells ordered (0,1), (0,2), …, (0,9), (1,2), …
    let s = s as usize;
    let t = t as usize;
    s * 9 - s * (s.saturating_sub(1)) / 2 + (t - s - 1)
}

/// Width of `interval` in units of `10^-j`.
fn width_units(interval: &DecimalInterval, j: u32) -> f64 {
    let w = interval.width();
    let (m, e) = scientific_parts(&w);
    m * 10f64.powi(e + j as i32)
}

#[derive(Clone, Debug, Default)]
struct Tally {
    n: u64,
    width: f64,
    width_sq: f64,
    loss: Vec<f64>,
    loss_sq: Vec<f64>,
    /// `loss[i] · loss[i + 1]`
    loss_cross: Vec<f64>,
    pairs: Vec<u64>,
}

impl Tally {
    fn new(steps: usize) -> Self {
        Tally {
            loss: vec![0.0; steps],
            loss_sq: vec![0.0; steps],
            loss_cross: vec![0.0; steps.saturating_sub(1)],
            pairs: vec![0; PAIR_CELLS],
            ..Tally::default()
        }
    }

    fn merge(mut self, other: &Tally) -> Tally {
        self.n += other.n;
        self.width += other.width;
        self.width_sq += other.width_sq;
        for (a, b) in self.loss.iter_mut().zip(&other.loss) {
            *a += b;
        }
        for (a, b) in self.loss_sq.iter_mut().zip(&other.loss_sq) {
            *a += b;
        }
        for (a, b) in self.loss_cross.iter_mut().zip(&other.loss_cross) {
            *a += b;
        }
        for (a, b) in self.pairs.iter_mut().zip(&other.pairs) {
            *a += b;
        }
        self
    }
}

/// Runs every sample through `steps` successive inflations.
fn simulate(config: &SimulationConfig, steps: usize) -> Tally {
    let chunks = config.samples.div_ceil(CHUNK);
    let base = ChaCha8Rng::seed_from_u64(config.seed);
    let partial: Vec<Tally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::new(steps);
            let end = ((c + 1) * CHUNK).min(config.samples);
            let mut losses = vec![0.0; steps];
            for index in c * CHUNK..end {
                let mut rng = base.clone();
                rng.set_stream(index);
                let d = draw(config, &mut rng);
                tally.pairs[pair_index(d.first.0, d.first.1)] += 1;
                let mut current = d.interval();
                let w = width_units(&current, config.j);
                tally.n += 1;
                tally.width += w;
                tally.width_sq += w * w;
                for loss in losses.iter_mut() {
                    let next = transform::inflate(&current)
                        .expect("bounds with two or more digits always inflate");
                    *loss = information_loss(&current, &next);
                    current = next;
                }
                for (i, &l) in losses.iter().enumerate() {
                    tally.loss[i] += l;
                    tally.loss_sq[i] += l * l;
                    if i + 1 < steps {
                        tally.loss_cross[i] += l * losses[i + 1];
                    }
                }
            }
            tally
        })
        .collect();
    partial.iter().fold(Tally::new(steps), Tally::merge)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DigitLoss {
    /// Bracket digits left after the inflation step.
    pub retained: u32,
    pub mean_loss: f64,
    pub stderr: f64,
}

/// `loss(retained + 1) / loss(retained)` with a delta-method 95% interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LossRatio {
    pub retained: u32,
    pub ratio: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub samples_used: u64,
    pub mean_width: f64,
    /// Mean width in units of `10^-j`.
    pub mean_width_in_units: f64,
    /// Standard deviation of the width in units of `10^-j`.
    pub sample_stddev: f64,
    pub stderr_in_units: f64,
    /// Mean loss of the first inflation, `k + 1 → k` bracket digits.
    pub mean_info_loss_per_inflation: f64,
    /// Enumerated expectation of the width, for `k ≤ 3`.
    pub exact_expected_width: Option<f64>,
    /// `(4/5)·10^-j`
    pub lower_bound: f64,
    /// `10^(1-j)`
    pub upper_bound: f64,
    pub digit_losses: Vec<DigitLoss>,
    pub loss_ratios: Vec<LossRatio>,
    /// Counts of `(y_j, z_j)`, cells ordered `(0,1), (0,2), …, (8,9)`.
    pub pair_counts: Vec<u64>,
    pub pair_chi_square: f64,
    pub pair_p_value: f64,
}

impl SimulationReport {
    pub const TSV_HEADER: &'static str =
        "j\tk\tsamples\tseed\tmean_width_units\tstddev_units\tmean_loss\tchi_square\tp_value";

    pub fn within_bounds(&self) -> bool {
        self.mean_width >= self.lower_bound && self.mean_width < self.upper_bound
    }

    /// One summary line matching [`Self::TSV_HEADER`].
    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{:.9}\t{:.9}\t{:.9e}\t{:.6}\t{:.6}",
            self.config.j,
            self.config.k,
            self.samples_used,
            self.config.seed,
            self.mean_width_in_units,
            self.sample_stddev,
            self.mean_info_loss_per_inflation,
            self.pair_chi_square,
            self.pair_p_value
        )
    }
}

fn chi_square(counts: &[u64]) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    let stat = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).expect("positive degrees of freedom");
    (stat, dist.sf(stat))
}

fn report(config: &SimulationConfig, tally: &Tally) -> SimulationReport {
    let n = tally.n as f64;
    let mean_units = tally.width / n;
    let var = if tally.n > 1 {
        ((tally.width_sq - n * mean_units * mean_units) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    let scale = 10f64.powi(-(config.j as i32));
    let mean_loss: Vec<f64> = tally.loss.iter().map(|s| s / n).collect();
    let loss_var: Vec<f64> = tally
        .loss_sq
        .iter()
        .zip(&mean_loss)
        .map(|(sq, m)| {
            if tally.n > 1 {
                ((sq - n * m * m) / (n - 1.0)).max(0.0)
            } else {
                0.0
            }
        })
        .collect();
    let digit_losses = mean_loss
        .iter()
        .zip(&loss_var)
        .enumerate()
        .map(|(step, (&m, &v))| DigitLoss {
            retained: config.k - step as u32,
            mean_loss: m,
            stderr: (v / n).sqrt(),
        })
        .collect();
    let loss_ratios = (0..tally.loss_cross.len())
        .map(|i| {
            // loss(retained + 1) is step i, loss(retained) is step i + 1
            let (a, b) = (mean_loss[i], mean_loss[i + 1]);
            let cov = if tally.n > 1 {
                (tally.loss_cross[i] - n * a * b) / (n - 1.0)
            } else {
                0.0
            };
            let r = a / b;
            let var_r = (loss_var[i] + r * r * loss_var[i + 1] - 2.0 * r * cov) / (b * b * n);
            let half = 1.96 * var_r.max(0.0).sqrt();
            LossRatio {
                retained: config.k - (i as u32 + 1),
                ratio: r,
                ci_low: r - half,
                ci_high: r + half,
            }
        })
        .collect();
    let (pair_chi_square, pair_p_value) = chi_square(&tally.pairs);
    SimulationReport {
        config: *config,
        samples_used: tally.n,
        mean_width: mean_units * scale,
        mean_width_in_units: mean_units,
        sample_stddev: var.sqrt(),
        stderr_in_units: (var / n).sqrt(),
        mean_info_loss_per_inflation: mean_loss.first().copied().unwrap_or(0.0),
        exact_expected_width: (config.k <= 3)
            .then(|| exact_expected_width(config.j, config.k).ok())
            .flatten(),
        lower_bound: 0.8 * scale,
        upper_bound: 10f64.powi(1 - config.j as i32),
        digit_losses,
        loss_ratios,
        pair_counts: tally.pairs.clone(),
        pair_chi_square,
        pair_p_value,
    }
}

/// Monte Carlo mean width, with one inflation per sample for the mean loss.
pub fn estimate_average_width(config: &SimulationConfig) -> Result<SimulationReport> {
    config.validate()?;
    Ok(report(config, &simulate(config, 1)))
}

/// Mean loss of each inflation from `k + 1` down to 2 retained bracket
/// digits, and the ratios between neighbouring digit counts.
pub fn measure_rule_of_one_tenth(config: &SimulationConfig) -> Result<SimulationReport> {
    config.validate()?;
    if config.k < 3 {
        return Err(Error::InvalidArgument(
            "k must be at least 3 to compare successive digits".into(),
        ));
    }
    Ok(report(config, &simulate(config, config.k as usize - 1)))
}

/// Exact mean width, in units of `10^-j`, as a reduced fraction, found by
/// enumerating every pair of bracket digit strings of length `k + 1` with
/// `y_j < z_j`.
pub fn exact_expected_width_units(k: u32) -> Result<(u128, u128)> {
    if k > 3 {
        return Err(Error::InvalidArgument(format!(
            "enumeration is limited to k <= 3, got {k}"
        )));
    }
    let tail = 10u128.pow(k);
    let mut total: i128 = 0;
    let mut count: u128 = 0;
    for s in 0..10i128 {
        for t in s + 1..10 {
            for y in 0..tail as i128 {
                for z in 0..tail as i128 {
                    total += (t - s) * tail as i128 + z - y;
                }
            }
            count += tail * tail;
        }
    }
    let numerator = total as u128;
    let denominator = count * tail;
    let g = gcd(numerator, denominator);
    Ok((numerator / g, denominator / g))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// [`exact_expected_width_units`] scaled by `10^-j`.
pub fn exact_expected_width(j: u32, k: u32) -> Result<f64> {
    let (num, den) = exact_expected_width_units(k)?;
    Ok(num as f64 / den as f64 * 10f64.powi(-(j as i32)))
}
