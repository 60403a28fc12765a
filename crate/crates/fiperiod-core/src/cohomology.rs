//! Cohomology dimensions in degrees 0 and 1 from evaluated levels, plus the
//! product assembly for induced modules and the trivial-coefficient
//! stabilization window.
//!
//! Degree 1 uses the crossed-homomorphism model over the adjacent
//! transposition presentation: a cocycle is determined by its generator
//! values, one linear condition block per defining relation word, and the
//! principal ones have dimension dim V - dim V^G.

use alloc::vec::Vec;
use alloc::collections::BTreeMap;
use core::fmt;

use crate::fimod::LevelData;
use crate::linalg::{Eliminator, GFMatrix};
use crate::perm::{coxeter_presentation, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohomError {
    MissingEntry { m: usize, t: usize },
}

impl fmt::Display for CohomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomError::MissingEntry { m, t } => {
                write!(f, "table has no entry for degree {t} over level {m}")
            }
        }
    }
}

/// Dimension of the invariant subspace. The fixed space of any generating
/// set equals the fixed space of the whole group, so quotient-form levels
/// use the two-element generating set {adjacent transposition, full cycle},
/// which keeps the stacked elimination near-minimal at large dimensions;
/// kernel-form levels (small) stack all adjacent transpositions.
pub fn invariants_dim(level: &LevelData) -> usize {
    let n = level.n();
    if n <= 1 || level.dim() == 0 {
        return level.dim();
    }
    let gens: Vec<Permutation> = if level.is_quotient_form() {
        let mut g = alloc::vec![Permutation::adjacent_transposition(n, 0)];
        if n > 2 {
            g.push(Permutation::full_cycle(n));
        }
        g
    } else {
        (0..n - 1)
            .map(|i| Permutation::adjacent_transposition(n, i))
            .collect()
    };
    level.fixed_space_dim(&gens)
}

/// dim H^1 as crossed homomorphisms modulo principal ones.
pub fn h1_dim(level: &LevelData) -> usize {
    let n = level.n();
    let q = level.dim();
    let k = n.saturating_sub(1);
    if k == 0 || q == 0 {
        return 0;
    }
    let p = level.p();
    let actions: Vec<GFMatrix> = (0..k).map(|i| level.generator_action(i)).collect();
    let pres = coxeter_presentation(n);
    // unknowns: generator values v_0..v_{k-1}, each of dimension q.
    // a relation word w = g_{i_1}..g_{i_L} contributes the condition
    //   sum_j (g_{i_1}..g_{i_{j-1}}) v_{i_j} = 0.
    let mut elim = Eliminator::new(p, k * q);
    for word in &pres.relations {
        let mut block = GFMatrix::zero(p, q, k * q);
        let mut prefix = GFMatrix::identity(p, q);
        for (j, &g) in word.iter().enumerate() {
            for r in 0..q {
                for c in 0..q {
                    let v = prefix.get(r, c);
                    if v != 0 {
                        let col = g * q + c;
                        let cur = block.get(r, col);
                        block.set(r, col, (cur + v) % p);
                    }
                }
            }
            if j + 1 < word.len() {
                prefix = prefix.mul(&actions[g]);
            }
        }
        for r in 0..q {
            elim.push(block.row(r).clone());
        }
    }
    let z1 = k * q - elim.rank();
    let b1 = q - invariants_dim(level);
    debug_assert!(z1 >= b1);
    z1 - b1
}

/// dim H^t(S_m, W) keyed by (m, t) for one coefficient module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl CohomologyTable {
    pub fn new() -> CohomologyTable {
        CohomologyTable::default()
    }

    pub fn insert(&mut self, m: usize, t: usize, dim: u64) {
        self.entries.insert((m, t), dim);
    }

    pub fn get(&self, m: usize, t: usize) -> Option<u64> {
        self.entries.get(&(m, t)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(m, t), &d)| (m, t, d))
    }
}

/// dim H^t of the induced module at level n from the factor tables:
/// sum over a+b=t of dim H^a(S_m, W) dim H^b(S_{n-m}, k).
pub fn induced_cohomology_dims(
    w_table: &CohomologyTable,
    triv_table: &CohomologyTable,
    m: usize,
    n: usize,
    t: usize,
) -> Result<u64, CohomError> {
    let mut acc = 0;
    for a in 0..=t {
        let b = t - a;
        let wa = w_table.get(m, a).ok_or(CohomError::MissingEntry { m, t: a })?;
        let kb = triv_table
            .get(n - m, b)
            .ok_or(CohomError::MissingEntry { m: n - m, t: b })?;
        acc += wa * kb;
    }
    Ok(acc)
}

/// The trivial-coefficient stabilization window: degree-t groups agree with
/// the previous level once n > 2t.
pub fn nakaoka_window(t: usize) -> impl Fn(usize) -> bool {
    move |n| n > 2 * t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fimod::{Element, FIMorphism, FIPresentation, FreeShape, InjSpec};

    fn shape(p: u64, degrees: &[usize]) -> FreeShape {
        FreeShape::new(p, degrees.to_vec()).unwrap()
    }

    fn trivial_module(p: u64) -> FIPresentation {
        FIPresentation::free(shape(p, &[0]))
    }

    fn intro_kernel() -> FIPresentation {
        let src = FIPresentation::free(shape(2, &[1]));
        let tgt = FIPresentation::free(shape(2, &[0]));
        let tshape = shape(2, &[0]);
        let img = Element::new(&tshape, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        FIPresentation::kernel_of(FIMorphism::new(src, tgt, vec![img]).unwrap())
    }

    #[test]
    fn invariants_of_trivial_and_permutation_modules() {
        for p in [2u64, 3, 5] {
            let triv = trivial_module(p);
            for n in 0..7 {
                assert_eq!(invariants_dim(&triv.evaluate(n)), 1);
            }
            // the all-ones line in the permutation module
            let m1 = FIPresentation::free(shape(p, &[1]));
            for n in 1..7 {
                assert_eq!(invariants_dim(&m1.evaluate(n)), 1);
            }
        }
    }

    #[test]
    fn intro_kernel_invariants_alternate() {
        let k = intro_kernel();
        for n in 2..=10 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            assert_eq!(invariants_dim(&k.evaluate(n)), expect, "n = {n}");
        }
    }

    #[test]
    fn h1_of_trivial_module() {
        // abelianization detects exactly F_2
        for n in 2..=7 {
            assert_eq!(h1_dim(&trivial_module(2).evaluate(n)), 1, "p=2 n={n}");
        }
        for p in [3u64, 5] {
            for n in 2..=7 {
                assert_eq!(h1_dim(&trivial_module(p).evaluate(n)), 0, "p={p} n={n}");
            }
        }
        // no generators below degree 2
        assert_eq!(h1_dim(&trivial_module(2).evaluate(1)), 0);
    }

    #[test]
    fn h1_of_permutation_module_over_f2() {
        let m1 = FIPresentation::free(shape(2, &[1]));
        for n in 3..=7 {
            assert_eq!(h1_dim(&m1.evaluate(n)), 1, "n = {n}");
        }
    }

    #[test]
    fn kunneth_assembly_examples() {
        let mut w = CohomologyTable::new();
        w.insert(1, 0, 1);
        w.insert(1, 1, 0);
        let mut triv = CohomologyTable::new();
        for j in 2..8 {
            triv.insert(j, 0, 1);
            triv.insert(j, 1, 1); // F_2 values
        }
        // t = 0: product of the degree-0 dims
        assert_eq!(induced_cohomology_dims(&w, &triv, 1, 5, 0).unwrap(), 1);
        // t = 1 at p = 2: 1*1 + 0*1 = 1
        assert_eq!(induced_cohomology_dims(&w, &triv, 1, 5, 1).unwrap(), 1);
        // all-zero coefficient table
        let mut zero = CohomologyTable::new();
        zero.insert(1, 0, 0);
        zero.insert(1, 1, 0);
        assert_eq!(induced_cohomology_dims(&zero, &triv, 1, 5, 1).unwrap(), 0);
        // missing entries are an error
        assert!(induced_cohomology_dims(&w, &triv, 1, 20, 1).is_err());
    }

    #[test]
    fn kunneth_matches_direct_solve_for_induced_module() {
        // H^1(S_n, M(1)_n) via cocycles equals the assembly from the factors
        for p in [2u64, 3] {
            let m1 = FIPresentation::free(shape(p, &[1]));
            let triv = trivial_module(p);
            let mut w = CohomologyTable::new();
            let s1 = triv.evaluate(1);
            w.insert(1, 0, invariants_dim(&s1) as u64);
            w.insert(1, 1, h1_dim(&s1) as u64);
            let mut tt = CohomologyTable::new();
            for j in 2..8 {
                let lvl = triv.evaluate(j);
                tt.insert(j, 0, invariants_dim(&lvl) as u64);
                tt.insert(j, 1, h1_dim(&lvl) as u64);
            }
            for n in 3..=8 {
                let direct = h1_dim(&m1.evaluate(n)) as u64;
                let assembled = induced_cohomology_dims(&w, &tt, 1, n, 1).unwrap();
                assert_eq!(direct, assembled, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn nakaoka_window_predicate() {
        let w0 = nakaoka_window(0);
        assert!((1..10).all(&w0));
        let w1 = nakaoka_window(1);
        assert!(!w1(2) && w1(3));
        let w3 = nakaoka_window(3);
        assert!(!w3(6) && w3(7));
    }

    #[test]
    fn h1_constant_inside_window() {
        for p in [2u64, 3, 5] {
            let triv = trivial_module(p);
            let vals: Vec<usize> = (3..=7).map(|n| h1_dim(&triv.evaluate(n))).collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]), "p = {p}: {vals:?}");
        }
    }

    #[test]
    fn shapiro_degree_zero_for_induced_modules() {
        // invariants of the induced module at any level equal invariants of
        // the inducing module, for presented W = M(m)/U
        for p in [2u64, 3] {
            for m in 1..=3usize {
                let sh = shape(p, &[m]);
                // W = trivial: quotient by (sigma - 1) for the Coxeter gens
                let mut rels = Vec::new();
                for i in 0..m.saturating_sub(1) {
                    let mut tr: Vec<usize> = (0..m).collect();
                    tr.swap(i, i + 1);
                    rels.push(
                        Element::new(
                            &sh,
                            m,
                            vec![
                                (0, InjSpec::Seq(tr), 1),
                                (0, InjSpec::Seq((0..m).collect()), -1),
                            ],
                        )
                        .unwrap(),
                    );
                }
                let mw = FIPresentation::presented(sh, rels);
                let at_m = invariants_dim(&mw.evaluate(m));
                for n in m.max(3)..=8 {
                    assert_eq!(invariants_dim(&mw.evaluate(n)), at_m, "p={p} m={m} n={n}");
                }
            }
        }
    }
}
