//! Dense exact linear algebra over a prime field.
//!
//! Vectors over F_2 are packed 64 entries to a machine word and row
//! operations are word-wise XOR; other primes store one residue per `u32`
//! with arithmetic done in `u64`. Elimination is deterministic throughout:
//! pivots are leftmost nonzero entries and earlier rows win, so echelon
//! forms, complement coordinates and kernel bases are reproducible.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    NotPrime(u64),
    LengthMismatch { expected: usize, got: usize },
    ModulusMismatch { expected: u64, got: u64 },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            LinalgError::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            LinalgError::ModulusMismatch { expected, got } => {
                write!(f, "modulus mismatch: expected {expected}, got {got}")
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    debug_assert!(a % p != 0);
    let mut base = (a % p) as u128;
    let mut exp = p - 2;
    let m = p as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u64
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Store {
    Bits(Vec<u64>),
    Words(Vec<u32>),
}

/// A length-`len` vector of residues mod `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GFVector {
    p: u64,
    len: usize,
    store: Store,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl GFVector {
    pub fn zero(p: u64, len: usize) -> GFVector {
        let store = if p == 2 {
            Store::Bits(vec![0u64; words_for(len)])
        } else {
            Store::Words(vec![0u32; len])
        };
        GFVector { p, len, store }
    }

    pub fn from_residues(p: u64, values: &[u64]) -> GFVector {
        let mut v = GFVector::zero(p, values.len());
        for (i, &c) in values.iter().enumerate() {
            v.set(i, c % p);
        }
        v
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        match &self.store {
            Store::Bits(w) => (w[i / 64] >> (i % 64)) & 1,
            Store::Words(w) => w[i] as u64,
        }
    }

    pub fn set(&mut self, i: usize, c: u64) {
        debug_assert!(i < self.len && c < self.p);
        match &mut self.store {
            Store::Bits(w) => {
                let mask = 1u64 << (i % 64);
                if c == 1 {
                    w[i / 64] |= mask;
                } else {
                    w[i / 64] &= !mask;
                }
            }
            Store::Words(w) => w[i] = c as u32,
        }
    }

    /// self[i] += c
    pub fn add_unit(&mut self, i: usize, c: u64) {
        let v = (self.get(i) + c % self.p) % self.p;
        self.set(i, v);
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits(w) => w.iter().all(|&x| x == 0),
            Store::Words(w) => w.iter().all(|&x| x == 0),
        }
    }

    /// First nonzero position at or after `from`, with its coefficient.
    pub fn leading_from(&self, from: usize) -> Option<(usize, u64)> {
        match &self.store {
            Store::Bits(words) => {
                let mut wi = from / 64;
                if wi >= words.len() {
                    return None;
                }
                let mut w = words[wi] & (!0u64 << (from % 64));
                loop {
                    if w != 0 {
                        let pos = wi * 64 + w.trailing_zeros() as usize;
                        return (pos < self.len).then_some((pos, 1));
                    }
                    wi += 1;
                    if wi >= words.len() {
                        return None;
                    }
                    w = words[wi];
                }
            }
            Store::Words(w) => (from..self.len)
                .find(|&i| w[i] != 0)
                .map(|i| (i, w[i] as u64)),
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &GFVector, c: u64) {
        debug_assert_eq!(self.len, other.len);
        debug_assert_eq!(self.p, other.p);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        match (&mut self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= *y;
                }
            }
            (Store::Words(a), Store::Words(b)) => {
                let p = self.p;
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x = ((*x as u64 + c * *y as u64) % p) as u32;
                }
            }
            _ => unreachable!("mixed stores"),
        }
    }

    pub fn scale(&mut self, c: u64) {
        let c = c % self.p;
        match &mut self.store {
            Store::Bits(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Store::Words(w) => {
                let p = self.p;
                for x in w.iter_mut() {
                    *x = ((*x as u64 * c) % p) as u32;
                }
            }
        }
    }

    pub fn negate(&mut self) {
        let c = self.p - 1;
        self.scale(c);
    }

    pub fn support(&self) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        let mut from = 0;
        while let Some((i, c)) = self.leading_from(from) {
            out.push((i, c));
            from = i + 1;
        }
        out
    }

    pub fn to_residues(&self) -> Vec<u64> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// A dense `rows x cols` matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GFMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<GFVector>,
}

impl GFMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> GFMatrix {
        assert!(is_prime(p), "modulus {p} is not prime");
        GFMatrix {
            p,
            rows,
            cols,
            data: (0..rows).map(|_| GFVector::zero(p, cols)).collect(),
        }
    }

    pub fn identity(p: u64, n: usize) -> GFMatrix {
        let mut m = GFMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: Vec<GFVector>) -> Result<GFMatrix, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        for r in &rows {
            if r.len() != cols {
                return Err(LinalgError::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            if r.p() != p {
                return Err(LinalgError::ModulusMismatch {
                    expected: p,
                    got: r.p(),
                });
            }
        }
        Ok(GFMatrix {
            p,
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Test convenience: build from integer entries (reduced mod p).
    pub fn from_entries(p: u64, entries: &[&[u64]]) -> GFMatrix {
        assert!(is_prime(p));
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut m = GFMatrix::zero(p, rows, cols);
        for (i, r) in entries.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &c) in r.iter().enumerate() {
                m.set(i, j, c % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r].set(c, v % self.p);
    }

    pub fn row(&self, r: usize) -> &GFVector {
        &self.data[r]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut GFVector {
        &mut self.data[r]
    }

    pub fn push_row(&mut self, row: GFVector) {
        assert_eq!(row.len(), self.cols);
        assert_eq!(row.p(), self.p);
        self.data.push(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut out = GFMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for (c, v) in self.data[r].support() {
                out.set(c, r, v);
            }
        }
        out
    }

    pub fn mul(&self, other: &GFMatrix) -> GFMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = GFMatrix::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            let acc = out.row_mut(r);
            for (j, c) in self.data[r].support() {
                acc.add_scaled(other.row(j), c);
            }
        }
        out
    }

    pub fn apply(&self, v: &GFVector) -> GFVector {
        assert_eq!(self.cols, v.len());
        let mut out = GFVector::zero(self.p, self.rows);
        for (j, c) in v.support() {
            for r in 0..self.rows {
                let a = self.get(r, j);
                if a != 0 {
                    out.add_unit(r, a * c % self.p);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == GFMatrix::identity(self.p, self.rows)
    }

    /// self - identity (rows = cols required).
    pub fn minus_identity(&self) -> GFMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = (out.get(i, i) + self.p - 1) % self.p;
            out.set(i, i, v);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.p, self.cols);
        for r in &self.data {
            elim.push(r.clone());
        }
        elim.rank()
    }

    /// Basis of the right kernel { x : Mx = 0 }, one vector per non-pivot
    /// column of the reduced form. Size is always cols - rank.
    pub fn kernel_basis(&self) -> Vec<GFVector> {
        let mut elim = Eliminator::new(self.p, self.cols);
        for r in &self.data {
            elim.push(r.clone());
        }
        let rref = elim.into_rref();
        let pivot_cols: Vec<usize> = rref.keys().copied().collect();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.binary_search(&f).is_ok() {
                continue;
            }
            let mut v = GFVector::zero(self.p, self.cols);
            v.set(f, 1);
            for (&c, row) in &rref {
                let a = row.get(f);
                if a != 0 {
                    v.set(c, (self.p - a) % self.p);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Streaming row eliminator: rows are absorbed one at a time so peak memory
/// is bounded by the rank seen so far times the row width.
pub struct Eliminator {
    p: u64,
    cols: usize,
    rows: BTreeMap<usize, GFVector>,
}

impl Eliminator {
    pub fn new(p: u64, cols: usize) -> Eliminator {
        assert!(is_prime(p), "modulus {p} is not prime");
        Eliminator {
            p,
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the echelon rows without inserting it.
    pub fn reduce(&self, row: &mut GFVector) {
        let mut from = 0;
        while let Some((col, c)) = row.leading_from(from) {
            match self.rows.get(&col) {
                Some(pivot) => row.add_scaled(pivot, self.p - c),
                None => from = col + 1,
            }
        }
    }

    /// Fully reduce and absorb a row; returns its pivot column if it was
    /// independent of everything seen so far.
    pub fn push(&mut self, mut row: GFVector) -> Option<usize> {
        assert_eq!(row.len(), self.cols);
        let mut from = 0;
        loop {
            let (col, c) = row.leading_from(from)?;
            match self.rows.get(&col) {
                Some(pivot) => row.add_scaled(pivot, self.p - c),
                None => {
                    if c != 1 {
                        row.scale(mod_inv(c, self.p));
                    }
                    self.rows.insert(col, row);
                    return Some(col);
                }
            }
            from = col;
        }
    }

    /// Back-substitute to reduced row echelon form, keyed by pivot column.
    pub fn into_rref(self) -> BTreeMap<usize, GFVector> {
        let p = self.p;
        let mut rows = self.rows;
        let cols: Vec<usize> = rows.keys().copied().collect();
        for (i, &c) in cols.iter().enumerate().rev() {
            let mut row = rows.remove(&c).unwrap();
            for &c2 in &cols[i + 1..] {
                let a = row.get(c2);
                if a != 0 {
                    row.add_scaled(&rows[&c2], p - a);
                }
            }
            rows.insert(c, row);
        }
        rows
    }

    pub fn into_quotient_map(self, ambient: usize) -> QuotientMap {
        assert_eq!(ambient, self.cols);
        let p = self.p;
        let rref = self.into_rref();
        let pivots: Vec<usize> = rref.keys().copied().collect();
        let complement: Vec<usize> = (0..ambient)
            .filter(|c| pivots.binary_search(c).is_err())
            .collect();
        let reduced = pivots
            .iter()
            .map(|c| {
                let row = &rref[c];
                let mut v = GFVector::zero(p, complement.len());
                for (j, &cc) in complement.iter().enumerate() {
                    let a = row.get(cc);
                    if a != 0 {
                        // reduce(e_pivot) = -row restricted to the complement
                        v.set(j, (p - a) % p);
                    }
                }
                v
            })
            .collect();
        QuotientMap {
            p,
            ambient,
            pivots,
            complement,
            reduced,
        }
    }
}

/// Image of a single ambient coordinate in the quotient.
pub enum ReducedUnit<'a> {
    /// e_col is itself a complement coordinate (index into the complement).
    Complement(usize),
    /// e_col is a pivot column; its image is this dense complement vector.
    Pivot(&'a GFVector),
}

/// Complement coordinates and rewriting rule for an ambient space modulo the
/// row space of a relation matrix. The quotient basis is the set of non-pivot
/// ("complement") columns of the reduced relation matrix, in column order.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    p: u64,
    ambient: usize,
    pivots: Vec<usize>,
    complement: Vec<usize>,
    reduced: Vec<GFVector>,
}

impl QuotientMap {
    pub fn from_rows<I>(p: u64, ambient: usize, rows: I) -> QuotientMap
    where
        I: IntoIterator<Item = GFVector>,
    {
        let mut elim = Eliminator::new(p, ambient);
        for r in rows {
            elim.push(r);
        }
        elim.into_quotient_map(ambient)
    }

    pub fn from_matrix(m: &GFMatrix) -> QuotientMap {
        QuotientMap::from_rows(m.p(), m.cols(), m.data.iter().cloned())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement_cols(&self) -> &[usize] {
        &self.complement
    }

    /// Ambient column of the j-th quotient basis vector.
    pub fn complement_col(&self, j: usize) -> usize {
        self.complement[j]
    }

    pub fn complement_index(&self, col: usize) -> Option<usize> {
        self.complement.binary_search(&col).ok()
    }

    pub fn reduce_unit(&self, col: usize) -> ReducedUnit<'_> {
        match self.complement.binary_search(&col) {
            Ok(j) => ReducedUnit::Complement(j),
            Err(_) => {
                let k = self.pivots.binary_search(&col).unwrap();
                ReducedUnit::Pivot(&self.reduced[k])
            }
        }
    }

    /// Rewrite a sparse ambient vector into complement coordinates.
    pub fn reduce_terms(&self, terms: &[(usize, u64)]) -> GFVector {
        let mut out = GFVector::zero(self.p, self.dim());
        for &(col, c) in terms {
            let c = c % self.p;
            if c == 0 {
                continue;
            }
            match self.reduce_unit(col) {
                ReducedUnit::Complement(j) => out.add_unit(j, c),
                ReducedUnit::Pivot(v) => out.add_scaled(v, c),
            }
        }
        out
    }

    /// True exactly when the ambient vector lies in the relation row space.
    pub fn in_row_space(&self, terms: &[(usize, u64)]) -> bool {
        self.reduce_terms(terms).is_zero()
    }
}
