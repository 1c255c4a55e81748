//! Seedable random streams.
//!
//! Every Monte Carlo task draws from its own ChaCha8 stream, selected by
//! `(master seed, task index)`. ChaCha is counter based, so streams are
//! independent of each other and of the order in which tasks run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for task `task` under `master_seed`.
pub fn task_rng(master_seed: u64, task: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(task);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn draws(mut rng: StreamRng) -> [u64; 8] {
        core::array::from_fn(|_| rng.random())
    }

    #[test]
    fn same_seed_same_stream() {
        assert_eq!(draws(task_rng(7, 3)), draws(task_rng(7, 3)));
    }

    #[test]
    fn tasks_and_seeds_differ() {
        assert_ne!(draws(task_rng(7, 0)), draws(task_rng(7, 1)));
        assert_ne!(draws(task_rng(7, 0)), draws(task_rng(8, 0)));
    }
}
