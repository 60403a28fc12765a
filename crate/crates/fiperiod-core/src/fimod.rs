//! Finitely presented FI-modules and their per-level evaluation.
//!
//! A module is either a quotient of a free module `M(m_1) + .. + M(m_d)` by
//! the sub-FI-module generated by finitely many relation elements, the kernel
//! of a morphism between two such quotients, or a level shift of one of
//! those. Evaluation at level n produces the quotient (or kernel) dimension,
//! a deterministic basis, the reduction rule into that basis, and the
//! symmetric-group generator actions on it.
//!
//! The free basis at level n for a generator of degree m is the set of
//! injections [m] -> [n], ordered by (generator index, lexicographic image
//! sequence) and addressed by rank/unrank so no index table is materialized.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{is_prime, Eliminator, GFMatrix, GFVector, QuotientMap, ReducedUnit};
use crate::perm::{coxeter_presentation, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FimodError {
    NotPrime(u64),
    NoGenerators,
    BadGenerator(usize),
    BadInjection,
    DegreeMismatch { expected: usize, got: usize },
    PrimeMismatch { expected: u64, got: u64 },
    ImageCount { expected: usize, got: usize },
    IllDefined { relation: usize },
    NotPresented,
    ShiftZero,
}

impl fmt::Display for FimodError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FimodError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            FimodError::NoGenerators => write!(f, "a shape needs at least one generator"),
            FimodError::BadGenerator(i) => write!(f, "no generator with index {i}"),
            FimodError::BadInjection => write!(f, "injection images must be distinct and in range"),
            FimodError::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {expected}, got {got}")
            }
            FimodError::PrimeMismatch { expected, got } => {
                write!(f, "prime mismatch: expected {expected}, got {got}")
            }
            FimodError::ImageCount { expected, got } => {
                write!(f, "morphism needs {expected} generator images, got {got}")
            }
            FimodError::IllDefined { relation } => {
                write!(f, "morphism does not kill source relation {relation}")
            }
            FimodError::NotPresented => {
                write!(f, "operation requires a presented (non-kernel, non-shifted) module")
            }
            FimodError::ShiftZero => write!(f, "shift amount must be at least 1"),
        }
    }
}

/// Number of injections [m] -> [n]: the falling factorial n (n-1) .. (n-m+1).
pub fn falling(n: u64, m: u64) -> u64 {
    if m > n {
        return 0;
    }
    (0..m).map(|i| n - i).product()
}

/// Lexicographic rank of an injection among all injections [m] -> [n] with
/// the same arity, ordered by image sequence.
fn rank_injection(n: usize, image: &[usize]) -> u64 {
    let m = image.len();
    let mut rank = 0u64;
    for (j, &v) in image.iter().enumerate() {
        let smaller = v - image[..j].iter().filter(|&&w| w < v).count();
        rank += smaller as u64 * falling((n - j - 1) as u64, (m - j - 1) as u64);
    }
    rank
}

fn unrank_injection(n: usize, m: usize, mut rank: u64) -> Vec<usize> {
    let mut used = vec![false; n];
    let mut image = Vec::with_capacity(m);
    for j in 0..m {
        let block = falling((n - j - 1) as u64, (m - j - 1) as u64);
        let c = (rank / block) as usize;
        rank %= block;
        let mut free = 0;
        for (v, &taken) in used.iter().enumerate() {
            if !taken {
                if free == c {
                    image.push(v);
                    used[v] = true;
                    break;
                }
                free += 1;
            }
        }
    }
    image
}

fn all_injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    let count = falling(n as u64, m as u64);
    (0..count).map(|r| unrank_injection(n, m, r)).collect()
}

/// Ordered generator degrees of a free module over F_p; the order is part of
/// the data (it is the cover ordering the bound calculators read).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeShape {
    p: u64,
    degrees: Vec<usize>,
}

impl FreeShape {
    pub fn new(p: u64, degrees: Vec<usize>) -> Result<FreeShape, FimodError> {
        if !is_prime(p) {
            return Err(FimodError::NotPrime(p));
        }
        if degrees.is_empty() {
            return Err(FimodError::NoGenerators);
        }
        Ok(FreeShape { p, degrees })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        *self.degrees.iter().max().unwrap()
    }

    pub fn level_dim(&self, n: usize) -> u64 {
        self.degrees
            .iter()
            .map(|&m| falling(n as u64, m as u64))
            .sum()
    }

    fn offset(&self, n: usize, gen: usize) -> u64 {
        self.degrees[..gen]
            .iter()
            .map(|&m| falling(n as u64, m as u64))
            .sum()
    }

    /// Position of the basis element (gen, image sequence) at level n.
    pub fn basis_index(&self, n: usize, gen: usize, image: &[usize]) -> usize {
        debug_assert_eq!(image.len(), self.degrees[gen]);
        (self.offset(n, gen) + rank_injection(n, image)) as usize
    }

    /// Inverse of `basis_index`.
    pub fn basis_tuple(&self, n: usize, pos: usize) -> (usize, Vec<usize>) {
        let mut rest = pos as u64;
        for (gen, &m) in self.degrees.iter().enumerate() {
            let count = falling(n as u64, m as u64);
            if rest < count {
                return (gen, unrank_injection(n, m, rest));
            }
            rest -= count;
        }
        panic!("basis position {pos} out of range at level {n}");
    }
}

/// Injection field of a raw term: an explicit image sequence, or the sum of
/// all injections of the generator's arity into the element's level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InjSpec {
    Seq(Vec<usize>),
    All,
}

/// A finitely supported element of the free module at one level, kept in
/// canonical form: terms sorted by (generator, image sequence), coefficients
/// nonzero mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    degree: usize,
    terms: Vec<(usize, Vec<usize>, u64)>,
}

impl Element {
    pub fn new(
        shape: &FreeShape,
        degree: usize,
        raw: Vec<(usize, InjSpec, i64)>,
    ) -> Result<Element, FimodError> {
        let p = shape.p();
        let mut acc: BTreeMap<(usize, Vec<usize>), u64> = BTreeMap::new();
        for (gen, inj, c) in raw {
            if gen >= shape.degrees().len() {
                return Err(FimodError::BadGenerator(gen));
            }
            let m = shape.degrees()[gen];
            let c = c.rem_euclid(p as i64) as u64;
            match inj {
                InjSpec::Seq(image) => {
                    if image.len() != m {
                        return Err(FimodError::DegreeMismatch {
                            expected: m,
                            got: image.len(),
                        });
                    }
                    let mut seen = vec![false; degree];
                    for &v in &image {
                        if v >= degree || seen[v] {
                            return Err(FimodError::BadInjection);
                        }
                        seen[v] = true;
                    }
                    let e = acc.entry((gen, image)).or_insert(0);
                    *e = (*e + c) % p;
                }
                InjSpec::All => {
                    for image in all_injections(m, degree) {
                        let e = acc.entry((gen, image)).or_insert(0);
                        *e = (*e + c) % p;
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|((g, i), c)| (g, i, c))
            .collect();
        Ok(Element { degree, terms })
    }

    /// The basis element (gen, identity injection).
    pub fn generator(shape: &FreeShape, gen: usize) -> Element {
        let m = shape.degrees()[gen];
        Element {
            degree: m,
            terms: vec![(gen, (0..m).collect(), 1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(usize, Vec<usize>, u64)] {
        &self.terms
    }

    /// Push forward along an injection given by its image sequence into [n].
    pub fn pushforward(&self, inj: &[usize], n: usize) -> Element {
        assert_eq!(inj.len(), self.degree, "pushforward degree mismatch");
        assert!(inj.iter().all(|&v| v < n));
        let mut terms: Vec<(usize, Vec<usize>, u64)> = self
            .terms
            .iter()
            .map(|(g, image, c)| (*g, image.iter().map(|&v| inj[v]).collect(), *c))
            .collect();
        terms.sort();
        Element { degree: n, terms }
    }

    /// Sparse coordinates in the free basis at the element's own level.
    pub fn sparse(&self, shape: &FreeShape) -> Vec<(usize, u64)> {
        self.terms
            .iter()
            .map(|(g, image, c)| (shape.basis_index(self.degree, *g, image), *c))
            .collect()
    }
}

/// Integer series over a contiguous level range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSeries {
    pub start: usize,
    pub values: Vec<u64>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Oracle,
}

impl DimensionSeries {
    pub fn end(&self) -> usize {
        self.start + self.values.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i))
            .copied()
    }
}

/// A finitely presented module, the kernel of a morphism, or a level shift.
#[derive(Clone, Debug)]
pub enum FIPresentation {
    Presented {
        shape: FreeShape,
        relations: Vec<Element>,
    },
    Kernel(Box<FIMorphism>),
    Shifted { base: Box<FIPresentation>, a: usize },
}

impl FIPresentation {
    pub fn free(shape: FreeShape) -> FIPresentation {
        FIPresentation::Presented {
            shape,
            relations: Vec::new(),
        }
    }

    pub fn presented(shape: FreeShape, relations: Vec<Element>) -> FIPresentation {
        FIPresentation::Presented { shape, relations }
    }

    pub fn kernel_of(morphism: FIMorphism) -> FIPresentation {
        FIPresentation::Kernel(Box::new(morphism))
    }

    pub fn shift(self, a: usize) -> Result<FIPresentation, FimodError> {
        if a == 0 {
            return Err(FimodError::ShiftZero);
        }
        Ok(match self {
            FIPresentation::Shifted { base, a: b } => FIPresentation::Shifted { base, a: a + b },
            other => FIPresentation::Shifted {
                base: Box::new(other),
                a,
            },
        })
    }

    pub fn p(&self) -> u64 {
        match self {
            FIPresentation::Presented { shape, .. } => shape.p(),
            FIPresentation::Kernel(m) => m.source.p(),
            FIPresentation::Shifted { base, .. } => base.p(),
        }
    }

    /// Size of the largest ambient space touched when evaluating at level n;
    /// the upstream feasibility guard compares against this.
    pub fn ambient_dim(&self, n: usize) -> u64 {
        match self {
            FIPresentation::Presented { shape, .. } => shape.level_dim(n),
            FIPresentation::Kernel(m) => m.source.ambient_dim(n).max(m.target.ambient_dim(n)),
            FIPresentation::Shifted { base, a } => base.ambient_dim(n + a),
        }
    }

    /// Extend an FI-injection [from] -> [to] through the shift structure to
    /// the underlying free levels (added points map to added points).
    fn level_injection(&self, from: usize, to: usize, inj: &[usize]) -> Vec<usize> {
        match self {
            FIPresentation::Shifted { base, a } => {
                let mut ext: Vec<usize> = inj.to_vec();
                ext.extend((0..*a).map(|j| to + j));
                base.level_injection(from + a, to + a, &ext)
            }
            _ => inj.to_vec(),
        }
    }

    pub fn evaluate(&self, n: usize) -> LevelData {
        let p = self.p();
        match self {
            FIPresentation::Presented { shape, relations } => {
                let map = presented_quotient(shape, relations, n);
                LevelData {
                    n,
                    p,
                    dim: map.dim(),
                    kind: LevelKind::Quotient {
                        shape: shape.clone(),
                        level: n,
                        map,
                    },
                }
            }
            FIPresentation::Kernel(morphism) => {
                let src = morphism.source.evaluate(n);
                let tgt = morphism.target.evaluate(n);
                let basis = morphism.matrix_between(&src, &tgt).kernel_basis();
                kernel_level(n, p, src, basis)
            }
            FIPresentation::Shifted { base, a } => {
                let inner = base.evaluate(n + a);
                LevelData {
                    n,
                    p,
                    dim: inner.dim,
                    kind: inner.kind,
                }
            }
        }
    }

    pub fn dim_series(&self, start: usize, end: usize) -> DimensionSeries {
        DimensionSeries {
            start,
            values: (start..=end).map(|n| self.evaluate(n).dim as u64).collect(),
            provenance: Provenance::Computed,
        }
    }

    /// Matrix of the functorial map V_from -> V_to induced by an injection
    /// [from] -> [to] (image sequence), in the evaluated bases.
    pub fn pushforward_matrix(&self, from: &LevelData, to: &LevelData, inj: &[usize]) -> GFMatrix {
        assert_eq!(inj.len(), from.n);
        let full = self.level_injection(from.n, to.n, inj);
        self.pushforward_on_levels(from, to, &full)
    }

    fn pushforward_on_levels(&self, from: &LevelData, to: &LevelData, full: &[usize]) -> GFMatrix {
        let p = self.p();
        match self {
            FIPresentation::Shifted { base, .. } => base.pushforward_on_levels(from, to, full),
            FIPresentation::Presented { .. } => {
                let (shape, l_from, m_from) = match &from.kind {
                    LevelKind::Quotient { shape, level, map } => (shape, *level, map),
                    _ => unreachable!("presented module evaluates to a quotient level"),
                };
                let (l_to, m_to) = match &to.kind {
                    LevelKind::Quotient { level, map, .. } => (*level, map),
                    _ => unreachable!(),
                };
                debug_assert_eq!(full.len(), l_from);
                let mut cols = Vec::with_capacity(from.dim);
                for j in 0..from.dim {
                    let (gen, image) = shape.basis_tuple(l_from, m_from.complement_col(j));
                    let moved: Vec<usize> = image.iter().map(|&v| full[v]).collect();
                    let target = shape.basis_index(l_to, gen, &moved);
                    cols.push(m_to.reduce_terms(&[(target, 1)]));
                }
                columns_to_matrix(p, to.dim, cols)
            }
            FIPresentation::Kernel(morphism) => {
                let (kf, kt) = match (&from.kind, &to.kind) {
                    (LevelKind::Kernel(a), LevelKind::Kernel(b)) => (a, b),
                    _ => unreachable!("kernel module evaluates to kernel levels"),
                };
                let inner =
                    morphism
                        .source
                        .pushforward_on_levels(&kf.source, &kt.source, full);
                let mut cols = Vec::with_capacity(from.dim);
                for j in 0..from.dim {
                    let moved = inner.apply(&kf.basis[j]);
                    cols.push(kt.coords(&moved));
                }
                columns_to_matrix(p, to.dim, cols)
            }
        }
    }

    /// Dimension of the kernel of the natural map V_n -> V_{n+a} induced by
    /// the inclusion [n] -> [n+a].
    pub fn torsion_kernel_dim(&self, a: usize, n: usize) -> usize {
        assert!(a >= 1);
        let from = self.evaluate(n);
        let to = self.evaluate(n + a);
        let inj: Vec<usize> = (0..n).collect();
        let m = self.pushforward_matrix(&from, &to, &inj);
        m.cols() - m.rank()
    }

    /// Matrix of the transfer into level n: source basis indexed by
    /// (order-preserving m-subset f of [n], basis of V_m), each block the
    /// pushforward along f.
    pub fn transfer_matrix(&self, m: usize, n: usize) -> GFMatrix {
        assert!(m <= n);
        let p = self.p();
        let at_m = self.evaluate(m);
        let at_n = self.evaluate(n);
        let mut cols = Vec::new();
        for f in crate::perm::OrderedSubset::all(m, n) {
            let block = self.pushforward_matrix(&at_m, &at_n, f.elements());
            for j in 0..at_m.dim {
                let mut col = GFVector::zero(p, at_n.dim);
                for r in 0..at_n.dim {
                    let v = block.get(r, j);
                    if v != 0 {
                        col.set(r, v);
                    }
                }
                cols.push(col);
            }
        }
        columns_to_matrix(p, at_n.dim, cols)
    }
}

fn columns_to_matrix(p: u64, rows: usize, cols: Vec<GFVector>) -> GFMatrix {
    let mut m = GFMatrix::zero(p, rows, cols.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.support() {
            m.set(i, j, c);
        }
    }
    m
}

/// Relation span at one level: pushforwards of every relation under every
/// injection of its degree into the level, streamed into the eliminator.
fn presented_quotient(shape: &FreeShape, relations: &[Element], level: usize) -> QuotientMap {
    let ambient = shape.level_dim(level);
    let ambient = usize::try_from(ambient).expect("ambient dimension overflows usize");
    let mut elim = Eliminator::new(shape.p(), ambient);
    for rel in relations {
        for inj in all_injections(rel.degree(), level) {
            let pushed = rel.pushforward(&inj, level);
            let mut row = GFVector::zero(shape.p(), ambient);
            for (pos, c) in pushed.sparse(shape) {
                row.add_unit(pos, c);
            }
            elim.push(row);
        }
    }
    elim.into_quotient_map(ambient)
}

fn kernel_level(n: usize, p: u64, src: LevelData, basis: Vec<GFVector>) -> LevelData {
    // kernel vectors from the reduced form are parameterized by the free
    // (non-pivot) columns: each vector is 1 at its own free column and 0 at
    // the others, so coordinates in the kernel basis can be read off there
    let mut free_cols = Vec::with_capacity(basis.len());
    for (i, v) in basis.iter().enumerate() {
        let col = v
            .support()
            .into_iter()
            .find(|&(c, x)| {
                x == 1 && basis.iter().enumerate().all(|(j, w)| j == i || w.get(c) == 0)
            })
            .map(|(c, _)| c)
            .expect("kernel basis vector without a free coordinate");
        free_cols.push(col);
    }
    let dim = basis.len();
    LevelData {
        n,
        p,
        dim,
        kind: LevelKind::Kernel(KernelLevel {
            source: Box::new(src),
            basis,
            free_cols,
        }),
    }
}

/// A morphism between presented modules, determined by generator images.
/// Well-definedness (every source relation maps into the target's relation
/// span at its own degree) is checked at construction; the single-degree
/// check suffices because pushforward commutes with the induced map.
#[derive(Clone, Debug)]
pub struct FIMorphism {
    source: FIPresentation,
    target: FIPresentation,
    images: Vec<Element>,
}

impl FIMorphism {
    pub fn new(
        source: FIPresentation,
        target: FIPresentation,
        images: Vec<Element>,
    ) -> Result<FIMorphism, FimodError> {
        let (src_shape, src_relations) = match &source {
            FIPresentation::Presented { shape, relations } => (shape, relations),
            _ => return Err(FimodError::NotPresented),
        };
        let tgt_shape = match &target {
            FIPresentation::Presented { shape, .. } => shape,
            _ => return Err(FimodError::NotPresented),
        };
        if src_shape.p() != tgt_shape.p() {
            return Err(FimodError::PrimeMismatch {
                expected: src_shape.p(),
                got: tgt_shape.p(),
            });
        }
        if images.len() != src_shape.degrees().len() {
            return Err(FimodError::ImageCount {
                expected: src_shape.degrees().len(),
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.degree() != src_shape.degrees()[i] {
                return Err(FimodError::DegreeMismatch {
                    expected: src_shape.degrees()[i],
                    got: img.degree(),
                });
            }
        }
        let src_relations = src_relations.clone();
        let morphism = FIMorphism {
            source,
            target,
            images,
        };
        for (k, rel) in src_relations.iter().enumerate() {
            let image = morphism.apply_element(rel);
            let level = morphism.target.evaluate(rel.degree());
            let reduced = match &level.kind {
                LevelKind::Quotient { shape, map, .. } => map.reduce_terms(&image.sparse(shape)),
                _ => unreachable!(),
            };
            if !reduced.is_zero() {
                return Err(FimodError::IllDefined { relation: k });
            }
        }
        Ok(morphism)
    }

    pub fn source(&self) -> &FIPresentation {
        &self.source
    }

    pub fn target(&self) -> &FIPresentation {
        &self.target
    }

    /// Image of a free source element in the target's free module.
    fn apply_element(&self, e: &Element) -> Element {
        let tgt_shape = match &self.target {
            FIPresentation::Presented { shape, .. } => shape,
            _ => unreachable!(),
        };
        let n = e.degree();
        let mut raw: Vec<(usize, InjSpec, i64)> = Vec::new();
        for (gen, inj, c) in e.terms() {
            let pushed = self.images[*gen].pushforward(inj, n);
            for (g2, i2, c2) in pushed.terms() {
                raw.push((*g2, InjSpec::Seq(i2.clone()), (*c * c2) as i64));
            }
        }
        Element::new(tgt_shape, n, raw).expect("image element is well-formed")
    }

    /// The induced matrix V_n -> W_n in the evaluated bases.
    pub fn matrix(&self, n: usize) -> GFMatrix {
        self.matrix_between(&self.source.evaluate(n), &self.target.evaluate(n))
    }

    fn matrix_between(&self, src: &LevelData, tgt: &LevelData) -> GFMatrix {
        let p = self.source.p();
        let (src_shape, src_map, level) = match &src.kind {
            LevelKind::Quotient { shape, map, level } => (shape, map, *level),
            _ => unreachable!(),
        };
        let tgt_map = match &tgt.kind {
            LevelKind::Quotient { map, .. } => map,
            _ => unreachable!(),
        };
        let tgt_shape = match &self.target {
            FIPresentation::Presented { shape, .. } => shape,
            _ => unreachable!(),
        };
        let mut cols = Vec::with_capacity(src.dim);
        for j in 0..src.dim {
            let (gen, image) = src_shape.basis_tuple(level, src_map.complement_col(j));
            let pushed = self.images[gen].pushforward(&image, level);
            cols.push(tgt_map.reduce_terms(&pushed.sparse(tgt_shape)));
        }
        columns_to_matrix(p, tgt.dim, cols)
    }
}

/// Evaluation of a module at one level.
#[derive(Clone, Debug)]
pub struct LevelData {
    n: usize,
    p: u64,
    dim: usize,
    kind: LevelKind,
}

#[derive(Clone, Debug)]
enum LevelKind {
    Quotient {
        shape: FreeShape,
        /// Underlying free level (n plus accumulated shifts).
        level: usize,
        map: QuotientMap,
    },
    Kernel(KernelLevel),
}

#[derive(Clone, Debug)]
struct KernelLevel {
    source: Box<LevelData>,
    /// Kernel basis vectors in source-quotient coordinates.
    basis: Vec<GFVector>,
    /// One coordinate per basis vector where only that vector is nonzero.
    free_cols: Vec<usize>,
}

impl KernelLevel {
    /// Coordinates of a vector known to lie in the kernel span.
    fn coords(&self, v: &GFVector) -> GFVector {
        let p = self.source.p;
        let mut out = GFVector::zero(p, self.basis.len());
        for (j, &c) in self.free_cols.iter().enumerate() {
            let x = v.get(c);
            if x != 0 {
                out.set(j, x);
            }
        }
        if cfg!(debug_assertions) {
            let mut rec = GFVector::zero(p, v.len());
            for (j, b) in self.basis.iter().enumerate() {
                rec.add_scaled(b, out.get(j));
            }
            debug_assert_eq!(&rec, v, "vector not in the kernel span");
        }
        out
    }
}

/// Image of one quotient basis vector under a permutation: either another
/// basis vector or a dense reduced vector.
enum ActionImage<'a> {
    Unit(usize),
    Dense(&'a GFVector),
}

/// Permutation action on a quotient level in column form: basis vectors map
/// to basis vectors except where the moved free coordinate is a pivot of the
/// relation span.
struct CompactAction {
    dim: usize,
    unit: Vec<Option<usize>>,
    dense: BTreeMap<usize, GFVector>,
}

impl CompactAction {
    fn column(&self, j: usize) -> ActionImage<'_> {
        match self.unit[j] {
            Some(k) => ActionImage::Unit(k),
            None => ActionImage::Dense(&self.dense[&j]),
        }
    }

    fn apply(&self, v: &GFVector, p: u64) -> GFVector {
        let mut out = GFVector::zero(p, self.dim);
        for (j, c) in v.support() {
            match self.column(j) {
                ActionImage::Unit(k) => out.add_unit(k, c),
                ActionImage::Dense(col) => out.add_scaled(col, c),
            }
        }
        out
    }

    /// Row k of (A - 1), read off the inverted unit map plus the k-th entry
    /// of each dense column.
    fn row_minus_identity(&self, k: usize, unit_inv: &[Option<usize>], p: u64) -> GFVector {
        let mut row = GFVector::zero(p, self.dim);
        if let Some(j) = unit_inv[k] {
            row.add_unit(j, 1);
        }
        for (&j, col) in &self.dense {
            let c = col.get(k);
            if c != 0 {
                row.add_unit(j, c);
            }
        }
        row.add_unit(k, p - 1);
        row
    }

    fn unit_inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.dim];
        for (j, u) in self.unit.iter().enumerate() {
            if let Some(k) = *u {
                inv[k] = Some(j);
            }
        }
        inv
    }

    fn to_dense(&self, p: u64) -> GFMatrix {
        let mut m = GFMatrix::zero(p, self.dim, self.dim);
        for j in 0..self.dim {
            match self.column(j) {
                ActionImage::Unit(k) => m.set(k, j, 1),
                ActionImage::Dense(col) => {
                    for (i, c) in col.support() {
                        m.set(i, j, c);
                    }
                }
            }
        }
        m
    }
}

impl LevelData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.n.saturating_sub(1)
    }

    /// True for presented and shifted modules, whose levels carry the
    /// permutation-with-exceptions action structure; false for kernels.
    pub fn is_quotient_form(&self) -> bool {
        matches!(self.kind, LevelKind::Quotient { .. })
    }

    fn compact_action(&self, sigma: &Permutation) -> CompactAction {
        match &self.kind {
            LevelKind::Quotient { shape, level, map } => {
                let sigma = sigma.extend(*level);
                let mut unit = Vec::with_capacity(self.dim);
                let mut dense = BTreeMap::new();
                for j in 0..self.dim {
                    let (gen, image) = shape.basis_tuple(*level, map.complement_col(j));
                    let moved: Vec<usize> = image.iter().map(|&v| sigma.apply(v)).collect();
                    let target = shape.basis_index(*level, gen, &moved);
                    match map.reduce_unit(target) {
                        ReducedUnit::Complement(k) => unit.push(Some(k)),
                        ReducedUnit::Pivot(v) => {
                            dense.insert(j, v.clone());
                            unit.push(None);
                        }
                    }
                }
                CompactAction {
                    dim: self.dim,
                    unit,
                    dense,
                }
            }
            LevelKind::Kernel(_) => unreachable!("kernel levels use dense actions"),
        }
    }

    /// Dense matrix of the i-th adjacent transposition (0-based, i < n-1).
    pub fn generator_action(&self, i: usize) -> GFMatrix {
        assert!(i + 1 < self.n);
        match &self.kind {
            LevelKind::Quotient { .. } => {
                let sigma = Permutation::adjacent_transposition(self.n, i);
                self.compact_action(&sigma).to_dense(self.p)
            }
            LevelKind::Kernel(k) => {
                let src_action = k.source.generator_action(i);
                let mut cols = Vec::with_capacity(self.dim);
                for b in &k.basis {
                    cols.push(k.coords(&src_action.apply(b)));
                }
                columns_to_matrix(self.p, self.dim, cols)
            }
        }
    }

    /// Dense matrix of an arbitrary permutation of [n] on this level.
    pub fn permutation_action(&self, sigma: &Permutation) -> GFMatrix {
        assert_eq!(sigma.degree(), self.n);
        match &self.kind {
            LevelKind::Quotient { .. } => self.compact_action(sigma).to_dense(self.p),
            LevelKind::Kernel(_) => {
                // write sigma as a word in adjacent transpositions
                let mut word = Vec::new();
                let mut imgs = sigma.images().to_vec();
                for target in 0..self.n {
                    let at = imgs.iter().position(|&v| v == target).unwrap();
                    for j in (target..at).rev() {
                        imgs.swap(j, j + 1);
                        word.push(j);
                    }
                }
                // the recorded swaps bring sigma to the identity from the
                // left, so sigma is their product in reverse order
                let mut m = GFMatrix::identity(self.p, self.dim);
                for &j in word.iter().rev() {
                    m = m.mul(&self.generator_action(j));
                }
                m
            }
        }
    }

    /// Dimension of the common fixed space of the given permutations, via the
    /// rank of the stacked (action - 1) rows.
    pub fn fixed_space_dim(&self, gens: &[Permutation]) -> usize {
        let mut elim = Eliminator::new(self.p, self.dim);
        match &self.kind {
            LevelKind::Quotient { .. } => {
                for sigma in gens {
                    let act = self.compact_action(sigma);
                    let inv = act.unit_inverse();
                    for k in 0..self.dim {
                        elim.push(act.row_minus_identity(k, &inv, self.p));
                    }
                }
            }
            LevelKind::Kernel(_) => {
                for sigma in gens {
                    let a = self.permutation_action(sigma).minus_identity();
                    for r in 0..a.rows() {
                        elim.push(a.row(r).clone());
                    }
                }
            }
        }
        self.dim - elim.rank()
    }

    /// Verify that every defining relation word of the Coxeter presentation
    /// acts as the identity on this level.
    pub fn check_coxeter_relations(&self) -> bool {
        let pres = coxeter_presentation(self.n);
        match &self.kind {
            LevelKind::Quotient { .. } => {
                let actions: Vec<CompactAction> = (0..self.generator_count())
                    .map(|i| self.compact_action(&Permutation::adjacent_transposition(self.n, i)))
                    .collect();
                for word in &pres.relations {
                    for j in 0..self.dim {
                        // stay sparse until a dense column is hit
                        let mut unit: Option<usize> = Some(j);
                        let mut dense: Option<GFVector> = None;
                        for &g in word.iter().rev() {
                            match (unit, &dense) {
                                (Some(k), _) => match actions[g].column(k) {
                                    ActionImage::Unit(k2) => unit = Some(k2),
                                    ActionImage::Dense(col) => {
                                        unit = None;
                                        dense = Some(col.clone());
                                    }
                                },
                                (None, Some(v)) => dense = Some(actions[g].apply(v, self.p)),
                                _ => unreachable!(),
                            }
                        }
                        let ok = match (unit, dense) {
                            (Some(k), _) => k == j,
                            (None, Some(v)) => {
                                let mut e = GFVector::zero(self.p, self.dim);
                                e.set(j, 1);
                                v == e
                            }
                            _ => unreachable!(),
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
                true
            }
            LevelKind::Kernel(_) => {
                let actions: Vec<GFMatrix> = (0..self.generator_count())
                    .map(|i| self.generator_action(i))
                    .collect();
                pres.relations.iter().all(|word| {
                    let mut acc = GFMatrix::identity(self.p, self.dim);
                    for &g in word {
                        acc = acc.mul(&actions[g]);
                    }
                    acc.is_identity()
                })
            }
        }
    }
}

/// Interpolating integer-valued polynomial in the binomial basis anchored at
/// `base`: P(n) = sum_j delta_j C(n - base, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    base: usize,
    deltas: Vec<i128>,
}

impl IntPolynomial {
    pub fn degree(&self) -> usize {
        self.deltas.iter().rposition(|&d| d != 0).unwrap_or(0)
    }

    pub fn eval(&self, n: usize) -> i128 {
        let x = n as i128 - self.base as i128;
        let mut acc = 0i128;
        for (j, &d) in self.deltas.iter().enumerate() {
            let mut binom = 1i128;
            for i in 0..j as i128 {
                binom = binom * (x - i) / (i + 1);
            }
            acc += d * binom;
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FitError {
    WindowTooShort { needed: usize, got: usize },
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::WindowTooShort { needed, got } => {
                write!(f, "window of {got} points is too short; need at least {needed}")
            }
        }
    }
}

/// Interpolate through the last max_degree+1 points of the window and
/// validate against every point; None when some point disagrees.
pub fn fit_polynomial(
    s: &DimensionSeries,
    max_degree: usize,
) -> Result<Option<IntPolynomial>, FitError> {
    let needed = max_degree + 2;
    if s.values.len() < needed {
        return Err(FitError::WindowTooShort {
            needed,
            got: s.values.len(),
        });
    }
    let w = max_degree + 1;
    let tail_start = s.values.len() - w;
    // forward differences at the start of the tail
    let mut deltas = Vec::with_capacity(w);
    let mut row: Vec<i128> = s.values[tail_start..].iter().map(|&v| v as i128).collect();
    while !row.is_empty() {
        deltas.push(row[0]);
        row = row.windows(2).map(|p| p[1] - p[0]).collect();
    }
    let poly = IntPolynomial {
        base: s.start + tail_start,
        deltas,
    };
    let ok = (0..s.values.len()).all(|i| poly.eval(s.start + i) == s.values[i] as i128);
    Ok(ok.then_some(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{split_block, OrderedSubset};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shape(p: u64, degrees: &[usize]) -> FreeShape {
        FreeShape::new(p, degrees.to_vec()).unwrap()
    }

    fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    fn random_injection(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        v.truncate(m);
        v
    }

    #[test]
    fn falling_and_free_dims() {
        assert_eq!(falling(4, 2), 12);
        assert_eq!(falling(3, 5), 0);
        let m0 = shape(2, &[0]);
        for n in 0..6 {
            assert_eq!(m0.level_dim(n), 1);
        }
        assert_eq!(shape(2, &[2]).level_dim(4), 12);
        assert_eq!(shape(2, &[1, 3]).level_dim(3), 3 + 6);
    }

    #[test]
    fn injection_rank_roundtrip_and_order() {
        for n in 0..6usize {
            for m in 0..=n {
                let count = falling(n as u64, m as u64);
                let all: Vec<Vec<usize>> = (0..count).map(|r| unrank_injection(n, m, r)).collect();
                for (r, img) in all.iter().enumerate() {
                    assert_eq!(rank_injection(n, img), r as u64);
                }
                let mut sorted = all.clone();
                sorted.sort();
                assert_eq!(all, sorted);
            }
        }
    }

    #[test]
    fn element_star_macro_expands() {
        let sh = shape(2, &[0, 3]);
        let e = Element::new(
            &sh,
            3,
            vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
        )
        .unwrap();
        // the free generator plus all 3! bijections
        assert_eq!(e.terms().len(), 7);
    }

    #[test]
    fn element_merges_and_drops_zero_coefficients() {
        let sh = shape(2, &[1]);
        let e = Element::new(
            &sh,
            2,
            vec![
                (0, InjSpec::Seq(vec![0]), 1),
                (0, InjSpec::Seq(vec![0]), 1),
                (0, InjSpec::Seq(vec![1]), 3),
            ],
        )
        .unwrap();
        assert_eq!(e.terms(), &[(0, vec![1], 1)]);
    }

    #[test]
    fn pushforward_functorial() {
        let sh = shape(3, &[2]);
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let k = 2 + rng.gen_range(0..2);
            let n = k + rng.gen_range(0..3);
            let e = Element::new(&sh, 2, vec![(0, InjSpec::Seq(vec![0, 1]), 2)]).unwrap();
            let h = random_injection(&mut rng, 2, k);
            let g = random_injection(&mut rng, k, n);
            let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
            assert_eq!(e.pushforward(&h, k).pushforward(&g, n), e.pushforward(&gh, n));
        }
    }

    #[test]
    fn free_module_evaluation() {
        let free = FIPresentation::free(shape(2, &[2]));
        for n in 0..6 {
            assert_eq!(free.evaluate(n).dim() as u64, falling(n as u64, 2));
        }
    }

    pub(crate) fn intro_kernel() -> FIPresentation {
        // kernel of the coordinate-sum map M(1) -> M(0)
        let src = FIPresentation::free(shape(2, &[1]));
        let tgt = FIPresentation::free(shape(2, &[0]));
        let tshape = shape(2, &[0]);
        let img = Element::new(&tshape, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        FIPresentation::kernel_of(FIMorphism::new(src, tgt, vec![img]).unwrap())
    }

    #[test]
    fn intro_kernel_dims() {
        let k = intro_kernel();
        assert_eq!(k.dim_series(1, 6).values, vec![0, 1, 2, 3, 4, 5]);
        // kernel of the 1 x 4 all-ones matrix
        assert_eq!(k.evaluate(4).dim(), 3);
    }

    #[test]
    fn sum_morphism_matrix_is_all_ones_row() {
        let src = FIPresentation::free(shape(2, &[1]));
        let tgt = FIPresentation::free(shape(2, &[0]));
        let tshape = shape(2, &[0]);
        let img = Element::new(&tshape, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        let phi = FIMorphism::new(src, tgt, vec![img]).unwrap();
        let m = phi.matrix(3);
        assert_eq!((m.rows(), m.cols()), (1, 3));
        for j in 0..3 {
            assert_eq!(m.get(0, j), 1);
        }
    }

    #[test]
    fn identity_and_zero_morphism_matrices() {
        let sh = shape(3, &[1]);
        let src = FIPresentation::free(sh.clone());
        let phi = FIMorphism::new(
            src.clone(),
            src.clone(),
            vec![Element::generator(&sh, 0)],
        )
        .unwrap();
        assert!(phi.matrix(4).is_identity());

        let zero = Element::new(&sh, 1, vec![]).unwrap();
        let z = FIMorphism::new(src.clone(), src, vec![zero]).unwrap();
        assert_eq!(z.matrix(4), GFMatrix::zero(3, 4, 4));
    }

    #[test]
    fn morphism_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let src = FIPresentation::free(shape(2, &[1]));
        let tgt = FIPresentation::free(shape(2, &[0]));
        let tshape = shape(2, &[0]);
        let img = Element::new(&tshape, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        let phi = FIMorphism::new(src.clone(), tgt.clone(), vec![img]).unwrap();
        for n in 2..6 {
            let m = phi.matrix(n);
            let sl = src.evaluate(n);
            let tl = tgt.evaluate(n);
            for _ in 0..5 {
                let sigma = random_permutation(&mut rng, n);
                let lhs = m.mul(&sl.permutation_action(&sigma));
                let rhs = tl.permutation_action(&sigma).mul(&m);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ill_defined_morphism_rejected() {
        // M(0) mod its level-1 image has V_1 = 0, so the "identity" back to
        // the free module does not kill the relation
        let sh = shape(2, &[0]);
        let rel = Element::new(&sh, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        let quotient = FIPresentation::presented(sh.clone(), vec![rel]);
        let img = Element::generator(&sh, 0);
        let free = FIPresentation::free(sh.clone());
        assert!(matches!(
            FIMorphism::new(quotient, free, vec![img]),
            Err(FimodError::IllDefined { relation: 0 })
        ));
    }

    #[test]
    fn shift_dimensions_decompose() {
        // dim M(m)_{n+1} = dim M(m)_n + m dim M(m-1)_n
        for m in 1..=4usize {
            let free = FIPresentation::free(shape(2, &[m]));
            for n in 0..=10usize {
                let lhs = free.clone().shift(1).unwrap().evaluate(n).dim() as u64;
                let rhs =
                    falling(n as u64, m as u64) + m as u64 * falling(n as u64, m as u64 - 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn shift_composes_additively() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let sh = shape(2, &[0, 2]);
        let rel = Element::new(
            &sh,
            2,
            vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
        )
        .unwrap();
        let pres = FIPresentation::presented(sh, vec![rel]);
        for _ in 0..6 {
            let a = rng.gen_range(1..3);
            let b = rng.gen_range(1..3);
            let n = rng.gen_range(0..5);
            let lhs = pres
                .clone()
                .shift(a)
                .unwrap()
                .shift(b)
                .unwrap()
                .evaluate(n)
                .dim();
            assert_eq!(lhs, pres.clone().shift(a + b).unwrap().evaluate(n).dim());
            assert_eq!(lhs, pres.evaluate(n + a + b).dim());
        }
    }

    #[test]
    fn torsion_free_for_free_and_kernel_modules() {
        let free = FIPresentation::free(shape(2, &[2]));
        for n in 0..5 {
            for a in 1..3 {
                assert_eq!(free.torsion_kernel_dim(a, n), 0);
            }
        }
        let k = intro_kernel();
        for n in 1..5 {
            assert_eq!(k.torsion_kernel_dim(1, n), 0);
        }
    }

    #[test]
    fn torsion_detected_in_truncated_quotient() {
        // M(0) modulo the level-1 image of its generator: V_0 = k, V_1 = 0
        let sh = shape(2, &[0]);
        let rel = Element::new(&sh, 1, vec![(0, InjSpec::Seq(vec![]), 1)]).unwrap();
        let pres = FIPresentation::presented(sh, vec![rel]);
        assert_eq!(pres.evaluate(0).dim(), 1);
        assert_eq!(pres.evaluate(1).dim(), 0);
        assert_eq!(pres.torsion_kernel_dim(1, 0), 1);
    }

    #[test]
    fn transfer_of_trivial_module_is_all_ones_row() {
        let m0 = FIPresentation::free(shape(3, &[0]));
        for (m, n) in [(0usize, 3usize), (1, 4), (2, 5)] {
            let t = m0.transfer_matrix(m, n);
            assert_eq!(t.rows(), 1);
            assert_eq!(
                t.cols() as u64,
                crate::oracle::binomial_u64(n as u64, m as u64)
            );
            for j in 0..t.cols() {
                assert_eq!(t.get(0, j), 1);
            }
        }
    }

    #[test]
    fn transfer_at_top_level_is_identity() {
        let free = FIPresentation::free(shape(2, &[1]));
        assert!(free.transfer_matrix(3, 3).is_identity());
    }

    #[test]
    fn transfer_is_equivariant() {
        // action on the induced side: sigma (gamma_f (x) a) =
        // gamma_{sigma f} (x) (gamma_{sigma f}^{-1} sigma gamma_f) a
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let pres = FIPresentation::free(shape(2, &[1]));
        let (m, n) = (1usize, 4usize);
        let at_m = pres.evaluate(m);
        let at_n = pres.evaluate(n);
        let t = pres.transfer_matrix(m, n);
        let subsets = OrderedSubset::all(m, n);
        let w = at_m.dim();
        for _ in 0..20 {
            let sigma = random_permutation(&mut rng, n);
            let mut induced = GFMatrix::zero(2, t.cols(), t.cols());
            for (fi, f) in subsets.iter().enumerate() {
                let mut moved: Vec<usize> = f.elements().iter().map(|&v| sigma.apply(v)).collect();
                moved.sort_unstable();
                let g = OrderedSubset::new(n, moved).unwrap();
                let gi = subsets.iter().position(|s| *s == g).unwrap();
                let h = g.gamma().inverse().compose(&sigma).compose(&f.gamma());
                let (top, _) = split_block(m, &h);
                let block = at_m.permutation_action(&top);
                for a in 0..w {
                    for b in 0..w {
                        let c = block.get(a, b);
                        if c != 0 {
                            induced.set(gi * w + a, fi * w + b, c);
                        }
                    }
                }
            }
            assert_eq!(t.mul(&induced), at_n.permutation_action(&sigma).mul(&t));
        }
    }

    #[test]
    fn pushforward_matrix_functorial_on_levels() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let sh = shape(2, &[0, 2]);
        let rel = Element::new(
            &sh,
            2,
            vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
        )
        .unwrap();
        let pres = FIPresentation::presented(sh, vec![rel]);
        for _ in 0..10 {
            let k = rng.gen_range(2..4);
            let mid = k + rng.gen_range(0..2);
            let n = mid + rng.gen_range(0..2);
            let h = random_injection(&mut rng, k, mid);
            let g = random_injection(&mut rng, mid, n);
            let gh: Vec<usize> = h.iter().map(|&i| g[i]).collect();
            let lk = pres.evaluate(k);
            let lm = pres.evaluate(mid);
            let ln = pres.evaluate(n);
            let a = pres.pushforward_matrix(&lk, &lm, &h);
            let b = pres.pushforward_matrix(&lm, &ln, &g);
            let c = pres.pushforward_matrix(&lk, &ln, &gh);
            assert_eq!(b.mul(&a), c);
        }
    }

    #[test]
    fn coxeter_relations_hold_on_levels() {
        let sh = shape(2, &[0, 2]);
        let rel = Element::new(
            &sh,
            2,
            vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
        )
        .unwrap();
        let pres = FIPresentation::presented(sh, vec![rel]);
        for n in 0..6 {
            assert!(pres.evaluate(n).check_coxeter_relations());
        }
        let k = intro_kernel();
        for n in 1..6 {
            assert!(k.evaluate(n).check_coxeter_relations());
        }
        let shifted = pres.shift(2).unwrap();
        for n in 0..4 {
            assert!(shifted.evaluate(n).check_coxeter_relations());
        }
    }

    #[test]
    fn shifted_level_dimension_matches_direct() {
        let sh = shape(3, &[1, 2]);
        let pres = FIPresentation::free(sh);
        for a in 1..=3usize {
            let shifted = pres.clone().shift(a).unwrap();
            for n in 0..=6usize {
                assert_eq!(shifted.evaluate(n).dim(), pres.evaluate(n + a).dim());
            }
        }
    }

    #[test]
    fn dim_series_examples() {
        let m1 = FIPresentation::free(shape(2, &[1]));
        assert_eq!(m1.dim_series(0, 5).values, vec![0, 1, 2, 3, 4, 5]);
        let m2 = FIPresentation::free(shape(2, &[2]));
        assert_eq!(m2.dim_series(0, 4).values, vec![0, 0, 2, 6, 12]);
    }

    #[test]
    fn fit_polynomial_examples() {
        let constant = DimensionSeries {
            start: 3,
            values: vec![5, 5, 5, 5],
            provenance: Provenance::Oracle,
        };
        assert_eq!(fit_polynomial(&constant, 1).unwrap().unwrap().degree(), 0);

        let m2 = FIPresentation::free(shape(2, &[2]));
        let s = m2.dim_series(2, 9);
        let p = fit_polynomial(&s, 3).unwrap().unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(20), 20 * 19);

        let not_linear = DimensionSeries {
            start: 0,
            values: vec![0, 0, 2, 6, 12],
            provenance: Provenance::Computed,
        };
        assert_eq!(fit_polynomial(&not_linear, 1).unwrap(), None);
        assert!(matches!(
            fit_polynomial(&not_linear, 4),
            Err(FitError::WindowTooShort { .. })
        ));
    }

    #[test]
    fn generation_degree_caps_polynomial_degree() {
        let sh = shape(2, &[0, 2]);
        let rel = Element::new(
            &sh,
            2,
            vec![(0, InjSpec::Seq(vec![]), 1), (1, InjSpec::All, 1)],
        )
        .unwrap();
        let pres = FIPresentation::presented(sh, vec![rel]);
        let s = pres.dim_series(4, 12);
        let p = fit_polynomial(&s, 4).unwrap().unwrap();
        assert!(p.degree() <= 2);
    }
}
