//! Line-parallel batch processing.
//!
//! Sentences are independent, so batches fan out over rayon when the
//! `parallel` feature is enabled. Results always come back in input order.
//! Without the feature, [`Execution::Parallel`] runs sequentially.

use crate::analyzer::canonical;
use crate::inverter::InvertError;
use crate::pipeline::{generate_sentence, Engine, GenerateError, Transduction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True if this build can actually run batches in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

fn map_ordered<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn transduce_lines<S: AsRef<str> + Sync>(
    lines: &[S],
    engine: &Engine,
    exec: Execution,
) -> Vec<Transduction> {
    map_ordered(lines, exec, |line| engine.transduce(line.as_ref()))
}

pub fn invert_lines<S: AsRef<str> + Sync>(
    lines: &[S],
    engine: &Engine,
    exec: Execution,
) -> Vec<Result<String, InvertError>> {
    map_ordered(lines, exec, |line| engine.invert(line.as_ref()))
}

/// Generates `count` sentences; sentence `i` uses seed `seed + i`.
pub fn generate(
    engine: &Engine,
    seed: u64,
    count: usize,
    max_len: usize,
    exec: Execution,
) -> Result<Vec<String>, GenerateError> {
    let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
    map_ordered(&seeds, exec, |&s| {
        generate_sentence(engine.resources(), s, max_len)
    })
    .into_iter()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripFailure {
    pub source: String,
    pub output: String,
    /// The recovered text, or the inversion error.
    pub recovered: Result<String, InvertError>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundTripReport {
    pub total: usize,
    pub failures: Vec<RoundTripFailure>,
}

impl RoundTripReport {
    pub fn passed(&self) -> usize {
        self.total - self.failures.len()
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `invert(transduce(s)) == s` (canonical spacing) for every sentence.
pub fn roundtrip<S: AsRef<str> + Sync>(
    sentences: &[S],
    engine: &Engine,
    exec: Execution,
) -> RoundTripReport {
    let results = map_ordered(sentences, exec, |s| {
        let source = canonical(s.as_ref());
        let output = engine.transduce(&source).output;
        let recovered = engine.invert(&output);
        match &recovered {
            Ok(r) if *r == source => None,
            _ => Some(RoundTripFailure {
                source,
                output,
                recovered,
            }),
        }
    });
    RoundTripReport {
        total: sentences.len(),
        failures: results.into_iter().flatten().collect(),
    }
}
