pub mod bessel;
pub mod kernel;
pub mod lemma;
pub mod solve;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::Report;

pub const DEFAULT_SEED: u64 = 20240229;

/// Settings shared by every command.
pub struct Ctx {
    pub seed: u64,
    pub tol: Option<f64>,
    pub pool: rayon::ThreadPool,
}

impl Ctx {
    /// ChaCha8 stream seeded with the run seed. All random case parameters
    /// are drawn from it up front, before any parallel work.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Maps `f` over `cases` on the worker pool, keeping input order.
    pub fn map<T: Sync, R: Send>(&self, cases: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
        self.pool.install(|| cases.par_iter().map(&f).collect())
    }
}

/// A report plus any extra files (name, contents) to write next to it.
pub struct Outcome {
    pub report: Report,
    pub files: Vec<(String, String)>,
}
