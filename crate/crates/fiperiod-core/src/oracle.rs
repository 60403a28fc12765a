//! Closed-form reference series used as independent ground truth against the
//! direct evaluations, and as inputs to period detection: the two-generator
//! quotient family over F_2, the coordinate-sum kernel, the 2-sphere
//! configuration-space degree-1 series, and digit-product binomials mod p.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fimod::{
    DimensionSeries, Element, FIMorphism, FIPresentation, FreeShape, InjSpec, Provenance,
};
use crate::linalg::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    DegreeTooSmall { d: usize },
    LevelBelowDegree { d: usize, n: usize },
    NotPrime(u64),
    BadLevel(usize),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DegreeTooSmall { d } => {
                write!(f, "the quotient family needs degree d >= 3, got {d}")
            }
            OracleError::LevelBelowDegree { d, n } => {
                write!(f, "level n = {n} below generator degree d = {d}")
            }
            OracleError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            OracleError::BadLevel(n) => write!(f, "level must be >= 1, got {n}"),
        }
    }
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// C(n, k) mod p by base-p digit products.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    assert!(is_prime(p), "modulus {p} is not prime");
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * (binomial_u64(nd, kd) % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Invariant dimension of the quotient of M(0) + M(d) by the symmetrized
/// degree-d relation, over F_2: 1 or 2 according to the parity pattern of
/// C(n-2, d-2) (and C(n-1, d-1) when d is even). The even-d branch covers
/// d = 4 as well, where the index-two-subgroup argument backs the formula.
pub fn example1_dim(d: usize, n: usize) -> Result<u64, OracleError> {
    if d < 3 {
        return Err(OracleError::DegreeTooSmall { d });
    }
    if n < d {
        return Err(OracleError::LevelBelowDegree { d, n });
    }
    let (n, d) = (n as u64, d as u64);
    let two = if d % 2 == 1 {
        binom_mod_p(n - 2, d - 2, 2) == 0
    } else {
        binom_mod_p(n - 2, d - 2, 2) == 0 && binom_mod_p(n - 1, d - 1, 2) == 0
    };
    Ok(if two { 2 } else { 1 })
}

/// The presentation behind `example1_dim`: generators in degrees 0 and d and
/// the single degree-d relation (generator 0) + (sum of all injections).
pub fn example1_presentation(d: usize) -> Result<FIPresentation, OracleError> {
    if d < 3 {
        return Err(OracleError::DegreeTooSmall { d });
    }
    let shape = FreeShape::new(2, vec![0, d]).expect("valid shape");
    let relation = Element::new(
        &shape,
        d,
        vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
    )
    .expect("valid relation");
    Ok(FIPresentation::presented(shape, vec![relation]))
}

pub fn example1_series(d: usize, start: usize, end: usize) -> Result<DimensionSeries, OracleError> {
    let values = (start..=end)
        .map(|n| example1_dim(d, n))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(DimensionSeries {
        start,
        values,
        provenance: Provenance::Oracle,
    })
}

/// Invariants of the coordinate-sum kernel over F_2: 1 exactly at even
/// levels n >= 2.
pub fn intro_kernel_h0(n: usize) -> u64 {
    u64::from(n >= 2 && n % 2 == 0)
}

/// The kernel-form module behind `intro_kernel_h0`.
pub fn intro_kernel_presentation() -> FIPresentation {
    let src = FIPresentation::free(FreeShape::new(2, vec![1]).unwrap());
    let tshape = FreeShape::new(2, vec![0]).unwrap();
    let tgt = FIPresentation::free(tshape.clone());
    let img = Element::new(&tshape, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
    FIPresentation::kernel_of(FIMorphism::new(src, tgt, vec![img]).expect("sum map"))
}

pub fn intro_kernel_h0_series(start: usize, end: usize) -> DimensionSeries {
    DimensionSeries {
        start,
        values: (start..=end).map(intro_kernel_h0).collect(),
        provenance: Provenance::Oracle,
    }
}

/// dim H^1 with trivial coefficients: homomorphisms to Z/p factor through
/// the abelianization Z/2, so the answer is 1 exactly when p = 2 and n >= 2.
pub fn trivial_h1(p: u64, n: usize) -> Result<u64, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    Ok(u64::from(p == 2 && n >= 2))
}

pub fn trivial_h1_series(p: u64, start: usize, end: usize) -> Result<DimensionSeries, OracleError> {
    let values = (start..=end)
        .map(|n| trivial_h1(p, n))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(DimensionSeries {
        start,
        values,
        provenance: Provenance::Oracle,
    })
}

/// Degree-1 mod-p dimension for unordered configurations on the 2-sphere:
/// 1 when p divides 2n-2, else 0.
pub fn sphere_h1(p: u64, n: usize) -> Result<u64, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    if n < 1 {
        return Err(OracleError::BadLevel(n));
    }
    Ok(u64::from((2 * n as u64 - 2) % p == 0))
}

pub fn sphere_h1_series(p: u64, start: usize, end: usize) -> Result<DimensionSeries, OracleError> {
    let values = (start..=end)
        .map(|n| sphere_h1(p, n))
        .collect::<Result<Vec<u64>, _>>()?;
    Ok(DimensionSeries {
        start,
        values,
        provenance: Provenance::Oracle,
    })
}
