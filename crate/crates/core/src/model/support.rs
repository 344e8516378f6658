use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use super::seed::rng_from_seed;
use crate::error::{Error, Result};
use crate::linalg::{norm, C64};

/// Sorted set of distinct, zero-based column indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet(Vec::new())
    }

    /// Accepts strictly increasing indices only.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("support indices must be strictly increasing"));
        }
        Ok(SupportSet(indices))
    }

    /// Sorts and deduplicates arbitrary indices.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        SupportSet(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        out.push(x);
                        a.next();
                    } else if y < x {
                        out.push(y);
                        b.next();
                    } else {
                        out.push(x);
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        SupportSet(out)
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// Largest index plus one, or zero when empty.
    pub fn bound(&self) -> usize {
        self.0.last().map_or(0, |&i| i + 1)
    }

    /// Semicolon-joined indices, as written to CSV files.
    pub fn to_joined(&self) -> String {
        self.0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";")
    }
}

impl From<SupportSet> for Vec<usize> {
    fn from(s: SupportSet) -> Self {
        s.0
    }
}

/// A `k`-sparse coefficient vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCoefficients {
    support: SupportSet,
    values: Vec<C64>,
    ambient_dim: usize,
}

impl SparseCoefficients {
    pub fn new(support: SupportSet, values: Vec<C64>, ambient_dim: usize) -> Result<Self> {
        if support.len() != values.len() {
            return Err(Error::invalid("one value per support index is required"));
        }
        if support.bound() > ambient_dim {
            return Err(Error::invalid("support index exceeds ambient dimension"));
        }
        Ok(SparseCoefficients {
            support,
            values,
            ambient_dim,
        })
    }

    /// Keeps the nonzero entries of a dense vector.
    pub fn from_dense(dense: &[C64]) -> Self {
        let (idx, vals): (Vec<usize>, Vec<C64>) = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > 0.0)
            .map(|(i, v)| (i, *v))
            .unzip();
        SparseCoefficients {
            support: SupportSet(idx),
            values: vals,
            ambient_dim: dense.len(),
        }
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.values)
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.ambient_dim];
        for (i, v) in self.support.iter().zip(&self.values) {
            out[i] = *v;
        }
        out
    }
}

/// How the support of a random coefficient vector is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportPattern {
    /// Uniformly random `k`-subset.
    UniformRandom,
    /// At least `min_gap` zeros between consecutive support indices. With
    /// `cyclic`, the last and first index must also be separated when the
    /// index range is read as a circle.
    WellSeparated { min_gap: usize, cyclic: bool },
    /// `k` consecutive indices starting at a uniformly random position.
    ClusteredBlock,
    /// One block of `⌈k/2⌉` consecutive indices plus `⌊k/2⌋` indices that
    /// are separated from each other and from the block by `min_gap` zeros.
    Hybrid { min_gap: usize },
}

/// Distribution of the nonzero values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueField {
    /// Standard real Gaussian.
    Real,
    /// Standard circular complex Gaussian, `E|z|² = 1`.
    Complex,
}

/// Draws a `k`-sparse coefficient vector in `C^d`. Deterministic given `seed`.
pub fn draw_sparse_coefficients(
    d: usize,
    k: usize,
    pattern: SupportPattern,
    field: ValueField,
    seed: u64,
) -> Result<SparseCoefficients> {
    if k > d {
        return Err(Error::invalid(format!("sparsity {k} exceeds dimension {d}")));
    }
    let mut rng = rng_from_seed(seed);
    let support = match pattern {
        SupportPattern::UniformRandom => {
            SupportSet::from_unsorted(sample(&mut rng, d, k).into_vec())
        }
        SupportPattern::WellSeparated { min_gap, cyclic } => {
            separated_support(&mut rng, d, k, min_gap, cyclic)?
        }
        SupportPattern::ClusteredBlock => {
            if k == 0 {
                SupportSet::empty()
            } else {
                let start = rng.random_range(0..=d - k);
                SupportSet((start..start + k).collect())
            }
        }
        SupportPattern::Hybrid { min_gap } => hybrid_support(&mut rng, d, k, min_gap)?,
    };
    let values = (0..k)
        .map(|_| match field {
            ValueField::Real => C64::new(rng.sample(StandardNormal), 0.0),
            ValueField::Complex => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(re * s, im * s)
            }
        })
        .collect();
    SparseCoefficients::new(support, values, d)
}

fn separated_support<R: Rng>(
    rng: &mut R,
    d: usize,
    k: usize,
    min_gap: usize,
    cyclic: bool,
) -> Result<SupportSet> {
    let step = min_gap + 1;
    if k == 0 {
        return Ok(SupportSet::empty());
    }
    if cyclic {
        if k.checked_mul(step).is_none_or(|need| need > d) {
            return Err(Error::invalid(format!(
                "cannot place {k} indices with {min_gap} zeros between them on a cycle of {d}"
            )));
        }
        // Anchor one index at a random rotation and place the others in the
        // remaining arc; each configuration arises from k equally likely anchors.
        let anchor = rng.random_range(0..d);
        if k == 1 {
            return Ok(SupportSet(vec![anchor]));
        }
        let slots = d - 2 * step - (k - 2) * (step - 1) + 1;
        let mut picks = sample(rng, slots, k - 1).into_vec();
        picks.sort_unstable();
        let mut idx: Vec<usize> = vec![anchor];
        for (i, c) in picks.into_iter().enumerate() {
            idx.push((anchor + step + c + i * (step - 1)) % d);
        }
        Ok(SupportSet::from_unsorted(idx))
    } else {
        let span = (k - 1).checked_mul(min_gap).map(|g| g + k);
        if span.is_none_or(|s| s > d) {
            return Err(Error::invalid(format!(
                "cannot place {k} indices with {min_gap} zeros between them in {d} slots"
            )));
        }
        let slots = d - (k - 1) * min_gap;
        let mut picks = sample(rng, slots, k).into_vec();
        picks.sort_unstable();
        Ok(SupportSet(
            picks.into_iter().enumerate().map(|(i, c)| c + i * min_gap).collect(),
        ))
    }
}

fn hybrid_support<R: Rng>(rng: &mut R, d: usize, k: usize, min_gap: usize) -> Result<SupportSet> {
    if k == 0 {
        return Ok(SupportSet::empty());
    }
    let block = k.div_ceil(2);
    let loose = k - block;
    let step = min_gap + 1;
    if block + loose * step > d {
        return Err(Error::invalid("hybrid pattern does not fit the dimension"));
    }
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        let start = rng.random_range(0..=d - block);
        let mut chosen: Vec<usize> = (start..start + block).collect();
        let mut ok = true;
        for _ in 0..loose {
            let mut placed = false;
            for _ in 0..ATTEMPTS {
                let cand = rng.random_range(0..d);
                if chosen.iter().all(|&c| cand.abs_diff(c) >= step) {
                    chosen.push(cand);
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(SupportSet::from_unsorted(chosen));
        }
    }
    Err(Error::invalid("could not place a hybrid support"))
}
