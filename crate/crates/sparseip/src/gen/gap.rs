//! Two one-row covering fixtures whose integrality gap against the naive
//! relaxation is exactly a chosen coefficient `M`.
//!
//! They pin down why covering needs strengthened relaxations: scaling a
//! single coefficient, or capping a cheap column's multiplicity, already
//! forces the naive bound off by an unbounded factor.

use num_bigint::BigInt;

use crate::gen::GenError;
use crate::instance::{validate, Sense, SparseIP};
use crate::rational::{rat_int, Bound, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapFixture {
    /// `M x >= 1` with unit cost and unbounded `x`. The relaxation pays
    /// `1/M`; any integral cover pays `1`.
    NaiveM,
    /// `M x1 + M x2 >= M + 1` where `x1` is free but capped at one. The
    /// relaxation tops up with `x2 = 1/M`; integrally `x2 >= 1`, so the
    /// gap survives even though every single coefficient is harmless.
    MultiplicityM,
}

pub fn gen_gap_fixture(which: GapFixture, m: u64) -> Result<SparseIP, GenError> {
    if m == 0 {
        return Err(GenError::Parameter("gap coefficient must be positive".into()));
    }
    let big = Rational::from_integer(BigInt::from(m));
    let inst = match which {
        GapFixture::NaiveM => SparseIP::new(
            Sense::Cover,
            1,
            1,
            vec![(0, 0, big)],
            vec![rat_int(1)],
            vec![rat_int(1)],
            vec![Bound::Infinite],
        ),
        GapFixture::MultiplicityM => SparseIP::new(
            Sense::Cover,
            1,
            2,
            vec![(0, 0, big.clone()), (0, 1, big.clone())],
            vec![&big + rat_int(1)],
            vec![rat_int(0), rat_int(1)],
            vec![Bound::Finite(rat_int(1)), Bound::Infinite],
        ),
    };
    debug_assert!(validate(&inst).is_empty());
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::solve_cover;
    use crate::lp;
    use crate::oracle::{solve_exact, OracleOutcome, DEFAULT_BUDGET};
    use crate::rational::rat;

    fn naive_value(inst: &SparseIP) -> Rational {
        lp::solve(&inst.naive_lp()).optimal().unwrap().value
    }

    fn opt_value(inst: &SparseIP) -> Rational {
        match solve_exact(inst, DEFAULT_BUDGET) {
            OracleOutcome::Optimal(s) => s.objective,
            other => panic!("expected an optimum, got {:?}", other),
        }
    }

    #[test]
    fn scaled_row_gap_is_the_coefficient() {
        let inst = gen_gap_fixture(GapFixture::NaiveM, 5).unwrap();
        assert_eq!(naive_value(&inst), rat(1, 5));
        assert_eq!(opt_value(&inst), rat_int(1));
    }

    #[test]
    fn multiplicity_cap_blocks_the_cheap_column() {
        let inst = gen_gap_fixture(GapFixture::MultiplicityM, 3).unwrap();
        assert_eq!(naive_value(&inst), rat(1, 3));
        assert_eq!(opt_value(&inst), rat_int(1));
        // The cover solver closes this gap completely.
        let (sol, _) = solve_cover(&inst).unwrap();
        assert_eq!(sol.objective, rat_int(1));
    }

    #[test]
    fn unit_coefficient_leaves_no_gap() {
        for which in [GapFixture::NaiveM, GapFixture::MultiplicityM] {
            let inst = gen_gap_fixture(which, 1).unwrap();
            assert_eq!(naive_value(&inst), rat_int(1));
            assert_eq!(opt_value(&inst), rat_int(1));
        }
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        assert!(matches!(
            gen_gap_fixture(GapFixture::NaiveM, 0),
            Err(GenError::Parameter(_))
        ));
        assert!(matches!(
            gen_gap_fixture(GapFixture::MultiplicityM, 0),
            Err(GenError::Parameter(_))
        ));
    }
}
