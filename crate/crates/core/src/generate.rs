//! Seeded random ultrametrics.
//!
//! A random rooted hierarchy is grown by recursive random partition. Every
//! internal node carries a level value strictly larger than its children's and
//! `d(x, y)` is the level of the lowest common ancestor of `x` and `y`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// Largest fan-out of an internal node.
const MAX_CHILDREN: usize = 4;

pub fn generate_random_ultrametric(
    n_points: usize,
    levels: &[f64],
    seed: u64,
) -> Result<DistanceMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_ultrametric(n_points, levels, &mut rng)
}

/// Same as [`generate_random_ultrametric`] but draws from a caller-owned stream.
pub fn random_ultrametric<R: Rng + ?Sized>(
    n_points: usize,
    levels: &[f64],
    rng: &mut R,
) -> Result<DistanceMatrix> {
    if n_points < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: n_points,
        });
    }
    if levels.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one level value is required".into(),
        ));
    }
    if levels.iter().any(|&l| !(l > 0.0) || !l.is_finite())
        || levels.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::InvalidArgument(format!(
            "level values must be positive and strictly increasing, got {levels:?}"
        )));
    }

    let mut rows = vec![vec![0.0; n_points]; n_points];
    let all: Vec<usize> = (0..n_points).collect();
    split(&all, levels.len() - 1, levels, &mut rows, rng);
    DistanceMatrix::from_rows(rows, None)
}

fn split<R: Rng + ?Sized>(
    members: &[usize],
    level: usize,
    levels: &[f64],
    rows: &mut [Vec<f64>],
    rng: &mut R,
) {
    if members.len() < 2 {
        return;
    }
    let value = levels[level];
    if level == 0 {
        for &a in members {
            for &b in members {
                if a != b {
                    rows[a][b] = value;
                }
            }
        }
        return;
    }

    let mut shuffled = members.to_vec();
    shuffled.shuffle(rng);
    let k = rng.gen_range(2..=members.len().min(MAX_CHILDREN));
    let mut groups: Vec<Vec<usize>> = shuffled[..k].iter().map(|&x| vec![x]).collect();
    for &x in &shuffled[k..] {
        groups[rng.gen_range(0..k)].push(x);
    }

    for (gi, g) in groups.iter().enumerate() {
        for h in &groups[gi + 1..] {
            for &a in g {
                for &b in h {
                    rows[a][b] = value;
                    rows[b][a] = value;
                }
            }
        }
    }
    for g in &groups {
        let child = rng.gen_range(0..level);
        split(g, child, levels, rows, rng);
    }
}
