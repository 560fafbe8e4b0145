//! Seeded random sparse instances.
//!
//! The generator is built so its output is always solvable by the matching
//! solver: covering instances are feasible at the all-ones point by
//! construction, packing instances never have a column that could be
//! raised without bound, and the requested sparsity holds row by row
//! (or column by column) rather than merely on average.

use crate::instance::{validate, Sense, SparseIP};
use crate::rational::{rat, rat_int, Bound, Rational};
use num_traits::Zero;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use super::GenError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SparsityMode {
    /// Every row has at most `k` entries.
    RowSparse,
    /// Every column has at most `k` entries.
    ColSparse,
}

/// How multiplicities are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMode {
    AllOne,
    /// Uniform over {1, 2, 3}.
    Small,
    /// Uniform over {1, 2, 3, inf}.
    Mixed,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub seed: u64,
    pub sense: Sense,
    pub nrows: usize,
    pub ncols: usize,
    pub k: usize,
    pub mode: SparsityMode,
    /// Entry denominators are drawn from 1..=bound.
    pub denominator_bound: u32,
    pub d_mode: DMode,
}

fn unit_coeff(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let den = rng.gen_range(1..=bound);
    let num = rng.gen_range(1..=den);
    rat(num, den)
}

/// Generates an instance; the same [`RandomSpec`] always yields the same
/// bytes.
///
/// Covering rows get `b_i = q_i * (row sum)` with `q_i` in (0, 1], so the
/// all-ones point is feasible. Packing rows get `b_i` in [1/2, 2]. Columns
/// that end up empty are defused: cost 0 under covering, multiplicity at
/// most 3 under packing.
pub fn gen_random(spec: &RandomSpec) -> Result<SparseIP, GenError> {
    if spec.nrows == 0 || spec.ncols == 0 {
        return Err(GenError::Parameter("need at least one row and one column".into()));
    }
    if spec.k == 0 {
        return Err(GenError::Parameter("sparsity budget must be at least 1".into()));
    }
    if spec.denominator_bound == 0 {
        return Err(GenError::Parameter("denominator bound must be at least 1".into()));
    }
    match spec.mode {
        SparsityMode::RowSparse if spec.k > spec.ncols => {
            return Err(GenError::Parameter(format!(
                "row budget {} exceeds the {} columns",
                spec.k, spec.ncols
            )));
        }
        SparsityMode::ColSparse if spec.k > spec.nrows => {
            return Err(GenError::Parameter(format!(
                "column budget {} exceeds the {} rows",
                spec.k, spec.nrows
            )));
        }
        _ => {}
    }
    let covering = spec.sense == Sense::Cover;
    if covering && spec.mode == SparsityMode::ColSparse && spec.nrows > spec.ncols * spec.k {
        return Err(GenError::Parameter(format!(
            "{} rows cannot all be covered by {} columns of at most {} entries",
            spec.nrows, spec.ncols, spec.k
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let bound = i64::from(spec.denominator_bound);
    let mut positions: BTreeSet<(usize, usize)> = BTreeSet::new();
    match spec.mode {
        SparsityMode::RowSparse => {
            for i in 0..spec.nrows {
                let s = rng.gen_range(1..=spec.k);
                for j in sample(&mut rng, spec.ncols, s) {
                    positions.insert((i, j));
                }
            }
        }
        SparsityMode::ColSparse => {
            if covering {
                // seed every row first so none is left uncoverable
                for i in 0..spec.nrows {
                    positions.insert((i, i % spec.ncols));
                }
            }
            for j in 0..spec.ncols {
                let used: Vec<usize> =
                    (0..spec.nrows).filter(|&i| !positions.contains(&(i, j))).collect();
                let have = spec.nrows - used.len();
                let extra_cap = (spec.k - have).min(used.len());
                let extra = if covering {
                    rng.gen_range(0..=extra_cap)
                } else {
                    rng.gen_range(1..=spec.k).min(extra_cap)
                };
                for idx in sample(&mut rng, used.len(), extra) {
                    positions.insert((used[idx], j));
                }
            }
        }
    }

    let entries: Vec<(usize, usize, Rational)> = positions
        .iter()
        .map(|&(i, j)| (i, j, unit_coeff(&mut rng, bound)))
        .collect();

    let mut row_sum = vec![Rational::zero(); spec.nrows];
    let mut col_used = vec![false; spec.ncols];
    for (i, j, a) in &entries {
        row_sum[*i] += a;
        col_used[*j] = true;
    }

    let b: Vec<Rational> = (0..spec.nrows)
        .map(|i| {
            if covering {
                unit_coeff(&mut rng, bound) * &row_sum[i]
            } else {
                let den = rng.gen_range(1..=bound);
                let num = rng.gen_range((den + 1) / 2..=2 * den);
                rat(num, den)
            }
        })
        .collect();

    let c: Vec<Rational> = (0..spec.ncols)
        .map(|j| {
            let cost = rat_int(rng.gen_range(1..=10));
            if covering && !col_used[j] {
                Rational::zero()
            } else {
                cost
            }
        })
        .collect();

    let d: Vec<Bound> = (0..spec.ncols)
        .map(|j| {
            let dj = match spec.d_mode {
                DMode::AllOne => Bound::Finite(rat_int(1)),
                DMode::Small => Bound::Finite(rat_int(rng.gen_range(1..=3))),
                DMode::Mixed => match rng.gen_range(0..4i64) {
                    3 => Bound::Infinite,
                    v => Bound::Finite(rat_int(v + 1)),
                },
                DMode::Unbounded => Bound::Infinite,
            };
            if !covering && !col_used[j] && dj == Bound::Infinite {
                Bound::Finite(rat_int(3))
            } else {
                dj
            }
        })
        .collect();

    let inst =
        SparseIP::new(spec.sense, spec.nrows, spec.ncols, entries, b, c, d);
    debug_assert!(validate(&inst).is_empty());
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{check_solution, serialize_instance};
    use num_bigint::BigInt;
    use num_traits::{One, Signed};

    fn spec(seed: u64, sense: Sense, mode: SparsityMode) -> RandomSpec {
        RandomSpec {
            seed,
            sense,
            nrows: 6,
            ncols: 7,
            k: 2,
            mode,
            denominator_bound: 4,
            d_mode: DMode::Mixed,
        }
    }

    #[test]
    fn same_seed_reproduces_bytes() {
        let s = spec(11, Sense::Cover, SparsityMode::RowSparse);
        let a = serialize_instance(&gen_random(&s).unwrap());
        let b = serialize_instance(&gen_random(&s).unwrap());
        assert_eq!(a, b);
        let other = gen_random(&spec(12, Sense::Cover, SparsityMode::RowSparse)).unwrap();
        assert_ne!(a, serialize_instance(&other));
    }

    #[test]
    fn sparsity_budgets_hold() {
        for seed in 0..10 {
            let col = gen_random(&spec(seed, Sense::Pack, SparsityMode::ColSparse)).unwrap();
            assert!(col.col_sparsity() <= 2);
            let row = gen_random(&spec(seed, Sense::Cover, SparsityMode::RowSparse)).unwrap();
            assert!(row.row_sparsity() <= 2);
        }
    }

    #[test]
    fn denominators_stay_bounded() {
        let inst = gen_random(&spec(3, Sense::Pack, SparsityMode::RowSparse)).unwrap();
        assert!(!inst.entries.is_empty());
        for (_, _, a) in &inst.entries {
            assert!(*a.denom() <= BigInt::from(4));
            assert!(a.is_positive());
        }
    }

    #[test]
    fn output_always_validates() {
        for seed in 0..15 {
            for sense in [Sense::Cover, Sense::Pack] {
                for mode in [SparsityMode::RowSparse, SparsityMode::ColSparse] {
                    for d_mode in [DMode::AllOne, DMode::Small, DMode::Mixed, DMode::Unbounded] {
                        let mut s = spec(seed, sense, mode);
                        s.d_mode = d_mode;
                        let inst = gen_random(&s).unwrap();
                        assert!(validate(&inst).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn covering_output_is_feasible_at_ones() {
        for seed in 0..10 {
            for mode in [SparsityMode::RowSparse, SparsityMode::ColSparse] {
                let inst = gen_random(&spec(seed, Sense::Cover, mode)).unwrap();
                let ones = vec![BigInt::one(); inst.ncols];
                assert!(check_solution(&inst, &ones).is_empty());
            }
        }
    }

    #[test]
    fn packing_output_is_never_unbounded() {
        for seed in 0..10 {
            let mut s = spec(seed, Sense::Pack, SparsityMode::RowSparse);
            s.d_mode = DMode::Unbounded;
            let inst = gen_random(&s).unwrap();
            assert!(crate::pack::iterate::check_bounded(&inst).is_ok());
        }
    }

    #[test]
    fn impossible_parameters_are_rejected() {
        let mut s = spec(0, Sense::Cover, SparsityMode::ColSparse);
        s.k = 0;
        assert!(gen_random(&s).is_err());
        s.k = 7;
        assert!(gen_random(&s).is_err(), "column budget above row count");
        let mut t = spec(0, Sense::Cover, SparsityMode::ColSparse);
        t.nrows = 20;
        t.ncols = 3;
        t.k = 2;
        assert!(gen_random(&t).is_err(), "rows cannot all be covered");
    }
}
