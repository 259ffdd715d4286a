//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled every call runs on the calling
//! thread; [`Execution::Parallel`] then behaves like
//! [`Execution::Sequential`]. Results are always returned in input order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `count` independent trials. Trial `t` receives its own generator,
/// seeded from `seed` on stream `t`, so the outcome does not depend on the
/// execution mode or thread scheduling.
pub fn trials<R, F>(exec: Execution, seed: u64, count: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize, &mut ChaCha8Rng) -> R + Sync + Send,
{
    let run = |t: usize| {
        let mut rng = trial_rng(seed, t);
        f(t, &mut rng)
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().map(run).collect(),
        _ => (0..count).map(run).collect(),
    }
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}
