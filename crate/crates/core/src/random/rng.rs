//! Seeds and counter-split random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Generator used by every sampler.
pub type McRng = ChaCha8Rng;

/// Environment variable consulted for a default seed when none is given.
pub const SEED_ENV: &str = "GRASSMANN_RADON_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Stream `stream` of the generator keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> McRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Independent child seed for a labelled sub-computation.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Parse a seed written in decimal or as `0x`-prefixed hex.
pub fn parse_seed(s: &str) -> Result<u64> {
    let t = s.trim();
    let parsed = if let Some(h) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        u64::from_str_radix(h, 16)
    } else {
        t.parse::<u64>()
    };
    parsed.map_err(|_| Error::Config(format!("invalid seed `{s}`: expected decimal or 0x-prefixed hex u64")))
}

/// Seed from an explicit value, else the environment, else the default.
pub fn resolve_seed(explicit: Option<&str>) -> Result<u64> {
    match explicit {
        Some(s) => parse_seed(s),
        None => match std::env::var(SEED_ENV) {
            Ok(v) => parse_seed(&v),
            Err(_) => Ok(DEFAULT_SEED),
        },
    }
}
