//! Benchmark harness for the word-problem solvers: seeded word
//! generation, wall-clock timing, and per-doubling growth ratios.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use freesolv::{wp_metabelian, wp_solvable, Word};

use crate::words::random_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Metabelian word problem (class 2, single-pass derivatives).
    Metabelian,
    /// Solvable word problem at the configured class (partition chain).
    Solvable,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Metabelian => "metabelian",
            Suite::Solvable => "solvable",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    /// Mean over seeds of the per-word best-of-`repeats` time.
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchReport {
    pub suite: String,
    pub rank: usize,
    pub class: usize,
    pub seed: u64,
    pub seeds: u64,
    pub repeats: usize,
    pub rows: Vec<BenchRow>,
    /// Ratio of consecutive row times.
    pub ratios: Vec<f64>,
}

impl BenchReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite={} rank={} class={} seed={} seeds={} repeats={}\n",
            self.suite, self.rank, self.class, self.seed, self.seeds, self.repeats
        ));
        out.push_str("size\tseconds\n");
        for row in &self.rows {
            out.push_str(&format!("{}\t{:.6}\n", row.size, row.seconds));
        }
        if !self.ratios.is_empty() {
            let rendered: Vec<String> = self.ratios.iter().map(|r| format!("{r:.3}")).collect();
            out.push_str(&format!("growth ratios: {}\n", rendered.join(", ")));
        }
        out
    }
}

pub struct BenchConfig {
    pub suite: Suite,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub rank: usize,
    pub class: usize,
    /// Distinct random words per size.
    pub seeds: u64,
    /// Timing repetitions per word; the minimum is kept.
    pub repeats: usize,
}

pub fn run_bench(config: &BenchConfig) -> BenchReport {
    let mut rows = Vec::with_capacity(config.sizes.len());
    for &size in &config.sizes {
        let mut total = 0.0;
        for seed_index in 0..config.seeds {
            let word = bench_word(config.rank, size, config.seed, seed_index);
            total += time_solver(config, &word);
        }
        rows.push(BenchRow {
            size,
            seconds: total / config.seeds.max(1) as f64,
        });
    }
    let ratios = rows
        .windows(2)
        .map(|pair| {
            if pair[0].seconds > 0.0 {
                pair[1].seconds / pair[0].seconds
            } else {
                f64::INFINITY
            }
        })
        .collect();
    BenchReport {
        suite: config.suite.name().to_string(),
        rank: config.rank,
        class: config.class,
        seed: config.seed,
        seeds: config.seeds,
        repeats: config.repeats,
        rows,
        ratios,
    }
}

fn time_solver(config: &BenchConfig, word: &Word) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..config.repeats.max(1) {
        let start = Instant::now();
        let verdict = match config.suite {
            Suite::Metabelian => wp_metabelian(word),
            Suite::Solvable => wp_solvable(word, config.class),
        };
        let elapsed = start.elapsed().as_secs_f64();
        std::hint::black_box(verdict);
        best = best.min(elapsed);
    }
    best
}

/// The word timed for (`size`, `seed_index`); derived deterministically
/// from the base seed.
pub fn bench_word(rank: usize, size: usize, seed: u64, seed_index: u64) -> Word {
    let mixed = mix(seed, mix(size as u64, seed_index));
    random_word(rank, size, mixed)
}

fn mix(a: u64, b: u64) -> u64 {
    let mut x = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
