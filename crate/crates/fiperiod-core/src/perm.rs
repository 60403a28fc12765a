//! Symmetric-group combinatorics: ordered coset representatives, the trace
//! and beta maps, the collision equivalence relation on m-subsets, and the
//! Coxeter presentation by adjacent transpositions.
//!
//! Everything is 0-based internally: `[n]` is `{0, .., n-1}`. The closed-form
//! class-size arithmetic converts to 1-based values where the formulas need
//! them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    NotIncreasing,
    OutOfRange { value: usize, n: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "image sequence is not a bijection"),
            PermError::NotIncreasing => write!(f, "subset elements must be strictly increasing"),
            PermError::OutOfRange { value, n } => write!(f, "value {value} out of range [0,{n})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(PermError::OutOfRange { value: i, n });
            }
            if seen[i] {
                return Err(PermError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// The adjacent transposition swapping i and i+1 (0-based, i < n-1).
    pub fn adjacent_transposition(n: usize, i: usize) -> Permutation {
        assert!(i + 1 < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    /// The n-cycle 0 -> 1 -> .. -> n-1 -> 0.
    pub fn full_cycle(n: usize) -> Permutation {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// self after other (right-to-left composition).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// View inside S_m for m >= degree, fixing the added points.
    pub fn extend(&self, m: usize) -> Permutation {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Permutation { images }
    }
}

/// A size-m subset of [n], stored sorted; doubles as the order-preserving
/// injection [m] -> [n].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct OrderedSubset {
    n: usize,
    elements: Vec<usize>,
}

impl OrderedSubset {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<OrderedSubset, PermError> {
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(PermError::NotIncreasing);
            }
        }
        if let Some(&last) = elements.last() {
            if last >= n {
                return Err(PermError::OutOfRange { value: last, n });
            }
        }
        Ok(OrderedSubset { n, elements })
    }

    /// The initial segment {0, .., m-1}.
    pub fn initial(m: usize, n: usize) -> OrderedSubset {
        assert!(m <= n);
        OrderedSubset {
            n,
            elements: (0..m).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, v: usize) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|v| !self.contains(*v)).collect()
    }

    /// The unique permutation that is order preserving on [m] and on its
    /// complement and maps [m] onto this subset.
    pub fn gamma(&self) -> Permutation {
        let mut images = self.elements.clone();
        images.extend(self.complement());
        Permutation { images }
    }

    /// All m-subsets of [n] in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<OrderedSubset> {
        assert!(m <= n);
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..m).collect();
        loop {
            out.push(OrderedSubset {
                n,
                elements: cur.clone(),
            });
            if m == 0 {
                break;
            }
            // next combination in lex order
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] != i + n - m {
                    break;
                }
            }
            if cur[i] == i + n - m {
                return out;
            }
            cur[i] += 1;
            for j in i + 1..m {
                cur[j] = cur[j - 1] + 1;
            }
        }
        out
    }
}

/// beta^m(sigma) = sigma^{-1}([m]), sorted.
pub fn beta(m: usize, sigma: &Permutation) -> OrderedSubset {
    let n = sigma.degree();
    assert!(m <= n);
    let inv = sigma.inverse();
    let mut elements: Vec<usize> = (0..m).map(|i| inv.apply(i)).collect();
    elements.sort_unstable();
    OrderedSubset { n, elements }
}

/// The block part of sigma: the unique h in S_m x S_{n-m} with
/// sigma = h . gamma_g^{-1} where g = beta^m(sigma). Returned as the pair of
/// restrictions (top in S_m, bottom in S_{n-m}).
pub fn trace(m: usize, sigma: &Permutation) -> (Permutation, Permutation) {
    let h = trace_embedded(m, sigma);
    split_block(m, &h)
}

/// Same as `trace` but as a block permutation inside S_n.
pub fn trace_embedded(m: usize, sigma: &Permutation) -> Permutation {
    let g = beta(m, sigma);
    sigma.compose(&g.gamma())
}

/// Split a block permutation (preserving [m]) into its S_m and S_{n-m} parts.
pub fn split_block(m: usize, h: &Permutation) -> (Permutation, Permutation) {
    let n = h.degree();
    let top = Permutation {
        images: (0..m).map(|i| h.apply(i)).collect(),
    };
    let bottom = Permutation {
        images: (m..n).map(|i| h.apply(i) - m).collect(),
    };
    debug_assert!(top.images.iter().all(|&i| i < m));
    (top, bottom)
}

/// Key of a class of the relation f1 ~ f2 iff f1 and f2 agree inside [n-a]
/// and agree position-wise mod u (1-based values, as in the residue
/// condition f1(j) = f2(j) mod u).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct EquivClassKey {
    pub m: usize,
    pub n: usize,
    pub a: usize,
    pub u: u64,
    /// Elements of the subset lying in [n-a] (0-based values), a prefix of
    /// the sorted subset.
    pub fixed: Vec<usize>,
    /// (value + 1) mod u for each element above n-a, in position order.
    pub residues: Vec<u64>,
}

pub fn equiv_key(f: &OrderedSubset, a: usize, u: u64) -> EquivClassKey {
    assert!(u >= 1);
    let n = f.n();
    let cut = n - a.min(n);
    let fixed: Vec<usize> = f.elements().iter().copied().filter(|&v| v < cut).collect();
    let residues: Vec<u64> = f
        .elements()
        .iter()
        .copied()
        .filter(|&v| v >= cut)
        .map(|v| (v as u64 + 1) % u)
        .collect();
    EquivClassKey {
        m: f.m(),
        n,
        a,
        u,
        fixed,
        residues,
    }
}

/// Partition all m-subsets of [n] into classes of the relation above.
pub fn equiv_classes(
    m: usize,
    n: usize,
    a: usize,
    u: u64,
) -> BTreeMap<EquivClassKey, Vec<OrderedSubset>> {
    assert!(m <= n && a <= n && u >= 1);
    let mut classes: BTreeMap<EquivClassKey, Vec<OrderedSubset>> = BTreeMap::new();
    for f in OrderedSubset::all(m, n) {
        classes.entry(equiv_key(&f, a, u)).or_default().push(f);
    }
    classes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSize {
    pub size: u64,
    /// Number of elements above n-a (class-constant).
    pub b: usize,
    /// Witness from the division-algorithm step of the closed form.
    pub s: u64,
}

fn binomial(top: u64, k: u64) -> u64 {
    if k > top {
        return if k == 0 { 1 } else { 0 };
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Closed-form size of a class: C(floor(a/u) - s + b, b), where s is read off
/// the division-algorithm bracket (s-1)u + t < o - (n-a) <= su + t applied to
/// o = min over the class of max f (1-based), t = a mod u. Classes contained
/// in [n-a] are singletons by definition.
pub fn class_size(key: &EquivClassKey) -> ClassSize {
    let b = key.m - key.fixed.len();
    if b == 0 {
        return ClassSize { size: 1, b: 0, s: 0 };
    }
    let u = key.u;
    let (n, a) = (key.n as u64, key.a as u64);
    let t = a % u;
    // Lexicographically least member: choose each high value minimal, so its
    // last element is o = min over the class of max f. Work 1-based.
    let mut prev = n - a; // values must exceed n-a
    let mut o = 0u64;
    for &r in &key.residues {
        let mut w = prev + 1;
        let rem = w % u;
        if rem != r {
            w += (r + u - rem) % u;
        }
        debug_assert!(w <= n, "class key admits no member");
        o = w;
        prev = w;
    }
    let x = o - (n - a); // in [1, a]
    let s = if x <= t { 0 } else { (x - t).div_ceil(u) };
    debug_assert!(s <= b as u64);
    let top = a / u + b as u64 - s;
    ClassSize {
        size: binomial(top, b as u64),
        b,
        s,
    }
}

/// Generators s_1..s_{n-1} (0-based indices 0..n-2) and the defining relation
/// words: s_i^2, (s_i s_{i+1})^3, and (s_i s_j)^2 for |i-j| >= 2, listed in
/// that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterPresentation {
    pub n: usize,
    pub relations: Vec<Vec<usize>>,
}

impl CoxeterPresentation {
    pub fn generator_count(&self) -> usize {
        self.n.saturating_sub(1)
    }

    pub fn generator(&self, i: usize) -> Permutation {
        Permutation::adjacent_transposition(self.n, i)
    }

    /// Evaluate a relation word to a permutation (left-to-right product).
    pub fn word_permutation(&self, word: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.n);
        for &i in word {
            acc = acc.compose(&self.generator(i));
        }
        acc
    }
}

pub fn coxeter_presentation(n: usize) -> CoxeterPresentation {
    let mut relations = Vec::new();
    let k = n.saturating_sub(1);
    for i in 0..k {
        relations.push(vec![i, i]);
    }
    for i in 0..k.saturating_sub(1) {
        relations.push(vec![i, i + 1, i, i + 1, i, i + 1]);
    }
    for i in 0..k {
        for j in i + 2..k {
            relations.push(vec![i, j, i, j]);
        }
    }
    CoxeterPresentation { n, relations }
}
