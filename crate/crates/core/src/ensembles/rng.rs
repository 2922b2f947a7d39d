//! Seed derivation and the Gaussian variate source.
//!
//! Stream seeds come from [`sample_seed`]:
//!
//! ```text
//! tag_hash = fnv1a64(spec_tag)
//! mixed    = splitmix64(master_seed ^ splitmix64(tag_hash))
//! seed     = splitmix64(mixed ^ index * 0x9E3779B97F4A7C15)   (wrapping)
//! ```
//!
//! A stream seed is expanded into a 256-bit ChaCha8 key by four successive
//! SplitMix64 outputs (little-endian), and sub-streams are selected with the
//! ChaCha stream id. Standard normals use the basic Box–Muller transform on
//! 53-bit uniforms, with `libm` transcendental functions so the variates do
//! not depend on the platform math library.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const FNV_OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01B3;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

/// Stable per-sample stream seed. For a fixed `(master_seed, spec_tag)` the
/// map `index -> seed` is a bijection, so distinct indices never collide.
pub fn sample_seed(master_seed: u64, spec_tag: &str, index: u64) -> u64 {
    let mixed = splitmix64(master_seed ^ splitmix64(fnv1a64(spec_tag.as_bytes())));
    splitmix64(mixed ^ index.wrapping_mul(GOLDEN_GAMMA))
}

/// Sub-stream ids within one sample seed.
pub(crate) const STREAM_MAIN: u64 = 0;
pub(crate) const STREAM_DIAGONAL: u64 = 1;

/// Standard-normal variates from a ChaCha8 stream via Box–Muller.
#[derive(Debug, Clone)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussianStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = seed;
        for chunk in key.chunks_exact_mut(8) {
            let word = splitmix64(state);
            state = state.wrapping_add(GOLDEN_GAMMA);
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    /// Uniform on [0, 1) with 53 random bits.
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
        let u2 = self.next_uniform();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * libm::sin(angle));
        radius * libm::cos(angle)
    }
}

/// Renders a real like C's `%.17g`: 17 significant digits, trailing zeros
/// stripped, exponent form only outside `1e-4 <= |x| < 1e17`.
pub fn format_real_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = strip_trailing_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let prec = (16 - exp) as usize;
        strip_trailing_zeros(&format!("{x:.prec$}")).to_string()
    }
}

fn strip_trailing_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn seeds_are_deterministic_and_index_distinct() {
        let a = sample_seed(7, "kind=goe,n=10", 0);
        assert_eq!(a, sample_seed(7, "kind=goe,n=10", 0));
        assert_ne!(a, sample_seed(7, "kind=goe,n=10", 1));
    }

    #[test]
    fn seed_mixing_has_no_collisions_on_random_triples() {
        // Brute-force scan: one million random (master, tag, index) triples,
        // each also evaluated with a perturbed tag.
        let mut src = GaussianStream::new(2024, 0);
        let mut seen = HashSet::with_capacity(2_000_000);
        for _ in 0..1_000_000 {
            let master = src.next_u64();
            let index = src.next_u64() % 1_000_000;
            let n = 2 + src.next_u64() % 5000;
            let tag = format!("kind=goe,n={n}");
            let other = format!("kind=gue,n={n}");
            let s1 = sample_seed(master, &tag, index);
            let s2 = sample_seed(master, &other, index);
            assert_ne!(s1, s2);
            assert!(seen.insert(s1), "collision for {master} {tag} {index}");
            assert!(seen.insert(s2), "collision for {master} {other} {index}");
        }
    }

    #[test]
    fn known_seed_values_are_pinned() {
        // Guards the documented mixing function against accidental change.
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(fnv1a64(b""), FNV_OFFSET);
        assert_eq!(fnv1a64(b"a"), 0xAF63_DC4C_8601_EC8C);
    }

    #[test]
    fn gaussian_moments() {
        let mut g = GaussianStream::new(11, 0);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| g.next_gaussian()).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n as f64;
        assert!(m.abs() < 4.0 / (n as f64).sqrt());
        assert!((v - 1.0).abs() < 0.015);
    }

    #[test]
    fn sub_streams_differ() {
        let mut a = GaussianStream::new(5, STREAM_MAIN);
        let mut b = GaussianStream::new(5, STREAM_DIAGONAL);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn g17_formatting() {
        assert_eq!(format_real_g17(0.5), "0.5");
        assert_eq!(format_real_g17(0.7), "0.69999999999999996");
        assert_eq!(format_real_g17(3.0), "3");
        assert_eq!(format_real_g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(format_real_g17(1e20), "1e+20");
        assert_eq!(format_real_g17(0.0), "0");
        assert_eq!(format_real_g17(123.25), "123.25");
    }
}
