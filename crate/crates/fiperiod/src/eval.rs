//! Range evaluation driver: per-level work fans out to the rayon pool and
//! results come back ordered by level. A dimension guard refuses levels whose
//! ambient space exceeds the cap instead of thrashing.

use std::fmt;

use rayon::prelude::*;

use fiperiod_core::cohomology::{h1_dim, invariants_dim};
use fiperiod_core::fimod::FIPresentation;

pub const DEFAULT_DIM_CAP: u64 = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum What {
    Dims,
    H0,
    H1,
}

#[derive(Debug)]
pub enum EvalError {
    Infeasible { n: usize, ambient: u64, cap: u64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Infeasible { n, ambient, cap } => write!(
                f,
                "level {n} needs ambient dimension {ambient}, above the cap {cap} \
                 (override with FIPERIOD_DIM_CAP)"
            ),
        }
    }
}

impl std::error::Error for EvalError {}

pub fn dim_cap_from_env() -> u64 {
    std::env::var("FIPERIOD_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

pub fn eval_range(
    pres: &FIPresentation,
    from: usize,
    to: usize,
    what: What,
    cap: u64,
) -> Result<Vec<(usize, u64)>, EvalError> {
    for n in from..=to {
        let ambient = pres.ambient_dim(n);
        if ambient > cap {
            return Err(EvalError::Infeasible { n, ambient, cap });
        }
    }
    Ok((from..=to)
        .collect::<Vec<usize>>()
        .par_iter()
        .map(|&n| {
            let level = pres.evaluate(n);
            let value = match what {
                What::Dims => level.dim() as u64,
                What::H0 => invariants_dim(&level) as u64,
                What::H1 => h1_dim(&level) as u64,
            };
            (n, value)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modspec::builtin;

    #[test]
    fn intro_kernel_h0_row() {
        let pres = builtin("intro-kernel", None).unwrap();
        let rows = eval_range(&pres, 2, 10, What::H0, DEFAULT_DIM_CAP).unwrap();
        let values: Vec<u64> = rows.iter().map(|&(_, v)| v).collect();
        assert_eq!(values, vec![1, 0, 1, 0, 1, 0, 1, 0, 1]);
        // ordered by level
        let levels: Vec<usize> = rows.iter().map(|&(n, _)| n).collect();
        assert_eq!(levels, (2..=10).collect::<Vec<_>>());
    }

    #[test]
    fn dims_of_free_module() {
        let pres = builtin("example1", Some(3)).unwrap();
        let rows = eval_range(&pres, 0, 4, What::Dims, DEFAULT_DIM_CAP).unwrap();
        // ambient 1 + n(n-1)(n-2) minus one relation orbit per 3-subset
        assert_eq!(rows[0], (0, 1));
        assert_eq!(rows[3], (3, 1 + 6 - 1));
    }

    #[test]
    fn cap_refuses_oversized_levels() {
        let pres = builtin("example1", Some(5)).unwrap();
        let err = eval_range(&pres, 5, 20, What::Dims, 1000).unwrap_err();
        let EvalError::Infeasible { n, ambient, cap } = err;
        assert_eq!(cap, 1000);
        assert!(ambient > 1000);
        assert!(n >= 6);
    }
}
