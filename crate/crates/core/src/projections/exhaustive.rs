use crate::error::{Error, Result};
use crate::linalg::{norm, C64};
use crate::model::{Dictionary, SupportSet};

/// Default limit on the number of supports the oracle will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u128 = 2_000_000;

/// `C(d, k)`, saturating at `u128::MAX`.
pub fn count_combinations(d: usize, k: usize) -> u128 {
    if k > d {
        return 0;
    }
    let k = k.min(d - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc · (d − i) / (i + 1) is exact at every step.
        acc = match acc.checked_mul((d - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic iterator over the `k`-subsets of `0..d`.
#[derive(Debug, Clone)]
pub struct Combinations {
    d: usize,
    current: Option<Vec<usize>>,
}

pub fn combinations(d: usize, k: usize) -> Combinations {
    Combinations {
        d,
        current: (k <= d).then(|| (0..k).collect()),
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut()?;
        let k = cur.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if cur[i] < self.d - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Errors unless `C(d, k) ≤ cap`.
pub fn check_cap(d: usize, k: usize, cap: u128) -> Result<()> {
    let combinations = count_combinations(d, k);
    if combinations > cap {
        return Err(Error::InstanceTooLarge { combinations, cap });
    }
    Ok(())
}

/// Best `k`-term support for `z` by full enumeration, together with
/// `P_Λ z`. Supports are visited in lexicographic order and a later support
/// replaces the incumbent only if its residual is smaller by more than
/// `1e-12·‖z‖`.
pub fn optimal_projection_capped(
    dict: &Dictionary,
    z: &[C64],
    k: usize,
    cap: u128,
) -> Result<(SupportSet, Vec<C64>)> {
    if z.len() != dict.n() {
        return Err(Error::invalid("signal length does not match the dictionary"));
    }
    if k == 0 || k > dict.d() {
        return Err(Error::invalid(format!("need 1 <= k <= d, got k={k}, d={}", dict.d())));
    }
    check_cap(dict.d(), k, cap)?;
    let slack = 1e-12 * norm(z);
    let mut best: Option<(f64, SupportSet, Vec<C64>)> = None;
    for idx in combinations(dict.d(), k) {
        let support = SupportSet::new(idx)?;
        let proj = dict.projector(&support)?.apply(z)?;
        let res = crate::linalg::dist(z, &proj);
        let better = match &best {
            None => true,
            Some((r, _, _)) => res < r - slack,
        };
        if better {
            best = Some((res, support, proj));
        }
    }
    let (_, support, proj) = best.ok_or_else(|| Error::invalid("no supports to enumerate"))?;
    Ok((support, proj))
}

/// [`optimal_projection_capped`] with [`DEFAULT_ENUMERATION_CAP`].
pub fn optimal_projection(dict: &Dictionary, z: &[C64], k: usize) -> Result<(SupportSet, Vec<C64>)> {
    optimal_projection_capped(dict, z, k, DEFAULT_ENUMERATION_CAP)
}
