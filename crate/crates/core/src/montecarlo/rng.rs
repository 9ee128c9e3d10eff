use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

/// Identifies one trial. The trial's random stream is a pure function of
/// the pair: the master seed picks the ChaCha key and the trial index picks
/// the stream, so trials can be generated in any order on any worker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrialSeed {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl TrialSeed {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        TrialSeed {
            master_seed,
            trial_index,
        }
    }

    pub fn rng(&self) -> TrialRng {
        StreamFactory::new(self.master_seed).rng(self.trial_index)
    }
}

/// Caches the expanded key so per-trial setup is just a stream switch.
#[derive(Clone)]
pub(crate) struct StreamFactory {
    key: <ChaCha8Rng as SeedableRng>::Seed,
}

impl StreamFactory {
    pub(crate) fn new(master_seed: u64) -> Self {
        let mut key = <ChaCha8Rng as SeedableRng>::Seed::default();
        let mut expand = rand_chacha::ChaCha8Rng::seed_from_u64(master_seed);
        rand::RngCore::fill_bytes(&mut expand, &mut key);
        StreamFactory { key }
    }

    pub(crate) fn rng(&self, trial_index: u64) -> TrialRng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(trial_index);
        rng
    }
}
