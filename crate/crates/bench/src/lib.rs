//! Fixed inputs shared by the benchmarks in `benches/`.

use wppsg::generate::{generate, GenOptions, InstanceClass};
use wppsg::Instance;

/// Degrees swept by the scaling benchmarks.
pub const DEGREES: [usize; 5] = [200, 400, 800, 1600, 3200];

/// Set counts swept at fixed degree.
pub const SET_COUNTS: [usize; 4] = [8, 16, 32, 64];

/// A seeded YES-instance of the given class.
pub fn yes_instance(class: InstanceClass, n: usize, m: usize) -> Instance {
    generate(&GenOptions {
        n,
        m,
        class,
        yes: true,
        seed: 0x5eed ^ (n as u64) << 16 ^ m as u64,
    })
    .expect("benchmark sizes are valid")
}
