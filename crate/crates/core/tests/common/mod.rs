//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use barrier_core::{Instance, Sensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer coordinates in `[0, 20]`, integer radii in `[1, 4]`, integer
/// barrier length no larger than the total capacity.
pub fn integer_instance(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Instance {
    let n = rng.gen_range(n_min..=n_max);
    let sensors: Vec<Sensor> = (0..n)
        .map(|_| {
            Sensor::new(
                rng.gen_range(0..=20) as f64,
                rng.gen_range(0..=20) as f64,
                rng.gen_range(1..=4) as f64,
            )
        })
        .collect();
    let cap: u32 = sensors.iter().map(|s| 2 * s.r as u32).sum();
    let m = rng.gen_range(1..=cap.min(20)) as f64;
    Instance::new(m, sensors).unwrap()
}

/// Like [`integer_instance`] but every sensor sits on the barrier line, so
/// every reach window has integral endpoints at integral bounds.
pub fn integer_line_instance(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Instance {
    let inst = integer_instance(rng, n_min, n_max);
    let sensors = inst
        .sensors()
        .iter()
        .map(|s| Sensor::on_line(s.x, s.r))
        .collect();
    Instance::new(inst.barrier_length(), sensors).unwrap()
}

/// Real-valued sensors on the line, feasible by capacity.
pub fn real_line_sensors(rng: &mut ChaCha8Rng, n_max: usize) -> (Vec<Sensor>, f64) {
    let n = rng.gen_range(1..=n_max);
    let sensors: Vec<Sensor> = (0..n)
        .map(|_| Sensor::on_line(rng.gen_range(-2.0..22.0), rng.gen_range(0.5..4.0)))
        .collect();
    let cap: f64 = sensors.iter().map(|s| 2.0 * s.r).sum();
    let m = rng.gen_range(0.5..=cap.min(20.0));
    (sensors, m)
}

/// Real-valued planar instance, feasible by capacity.
pub fn real_instance(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> Instance {
    let n = rng.gen_range(n_min..=n_max);
    let sensors: Vec<Sensor> = (0..n)
        .map(|_| {
            Sensor::new(
                rng.gen_range(-2.0..22.0),
                rng.gen_range(-4.0..4.0),
                rng.gen_range(0.3..4.0),
            )
        })
        .collect();
    let cap: f64 = sensors.iter().map(|s| 2.0 * s.r).sum();
    let m = rng.gen_range(0.5..=cap.min(20.0));
    Instance::new(m, sensors).unwrap()
}
