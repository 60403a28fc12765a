//! The period/stability calculator suite: the factorial-valuation step
//! operator, the profile-refinement triangle and the derived operators on
//! exponent profiles, transport along sequential wirings, closed-form bounds,
//! and the scalar and vector spectral page recursions over resolution shapes.
//!
//! Everything here is exact integer combinatorics; the inputs are covers
//! (ordered generator-degree tuples, order significant), exponent profiles
//! attached to covers, and wiring data describing degree-preserving partial
//! matchings between covers.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundsError {
    NotPrime(u64),
    EmptyCover,
    ProfileLength { expected: usize, got: usize },
    CoverMismatch,
    BadWiring(String),
    BadShape(String),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            BoundsError::EmptyCover => write!(f, "covers must contain at least one degree"),
            BoundsError::ProfileLength { expected, got } => {
                write!(f, "profile length {got} does not match cover length {expected}")
            }
            BoundsError::CoverMismatch => write!(f, "profile/wiring cover mismatch"),
            BoundsError::BadWiring(msg) => write!(f, "bad wiring: {msg}"),
            BoundsError::BadShape(msg) => write!(f, "bad resolution shape: {msg}"),
        }
    }
}

/// p-adic valuation of k!.
pub fn vp_factorial(k: u64, p: u64) -> u64 {
    let mut acc = 0;
    let mut q = p;
    loop {
        acc += k / q;
        match q.checked_mul(p) {
            Some(next) if q <= k => q = next,
            _ => break,
        }
        if q > k {
            break;
        }
    }
    acc
}

/// The exponent step v_p((b1-b2)!) + 1 for b1 > b2, and 0 otherwise.
pub fn delta_h(b1: u64, b2: u64, p: u64) -> u64 {
    if b1 > b2 {
        vp_factorial(b1 - b2, p) + 1
    } else {
        0
    }
}

/// An ordered tuple of generator degrees with its prime. The order matters:
/// reordering the degrees changes every derived bound.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CoverShape {
    p: u64,
    degrees: Vec<u64>,
}

impl CoverShape {
    pub fn new(p: u64, degrees: Vec<u64>) -> Result<CoverShape, BoundsError> {
        if !is_prime(p) {
            return Err(BoundsError::NotPrime(p));
        }
        if degrees.is_empty() {
            return Err(BoundsError::EmptyCover);
        }
        Ok(CoverShape { p, degrees })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u64 {
        *self.degrees.iter().max().unwrap()
    }

    /// The cover of the r-th filtration stage: the first r degrees.
    pub fn prefix(&self, r: usize) -> CoverShape {
        assert!(r >= 1 && r <= self.len());
        CoverShape {
            p: self.p,
            degrees: self.degrees[..r].to_vec(),
        }
    }
}

/// A tuple of nonnegative period exponents attached to a cover.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodProfile {
    cover: CoverShape,
    exponents: Vec<u64>,
}

impl PeriodProfile {
    pub fn new(cover: CoverShape, exponents: Vec<u64>) -> Result<PeriodProfile, BoundsError> {
        if exponents.len() != cover.len() {
            return Err(BoundsError::ProfileLength {
                expected: cover.len(),
                got: exponents.len(),
            });
        }
        Ok(PeriodProfile { cover, exponents })
    }

    pub fn zero(cover: CoverShape) -> PeriodProfile {
        let exponents = vec![0; cover.len()];
        PeriodProfile { cover, exponents }
    }

    pub fn cover(&self) -> &CoverShape {
        &self.cover
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn max_exponent(&self) -> u64 {
        self.exponents.iter().copied().max().unwrap_or(0)
    }
}

/// The full refinement triangle H^{i,r} for 1 <= i <= r <= d, descending in
/// r from the given top row. Returned as `levels` where `levels[r-1]` holds
/// (H^{1,r}, .., H^{r,r}).
pub fn refine_profile(q: &PeriodProfile) -> Vec<Vec<u64>> {
    let d = q.cover.len();
    let p = q.cover.p();
    let m = q.cover.degrees();
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); d];
    levels[d - 1] = q.exponents.clone();
    for r in (2..=d).rev() {
        let prev = levels[r - 1].clone();
        let h_rr = prev[r - 1];
        let mut next = Vec::with_capacity(r - 1);
        for i in 1..r {
            let h_ir = prev[i - 1];
            let v = if m[r - 1] >= m[i - 1] {
                h_ir.max(h_rr + delta_h(m[r - 1], m[i - 1], p))
            } else {
                h_ir
            };
            next.push(v);
        }
        levels[r - 2] = next;
    }
    levels
}

/// The truncation operator: (H^{i,r})_{i<=r} as a profile on the prefix cover.
pub fn op_dr(q: &PeriodProfile, r: usize) -> PeriodProfile {
    let levels = refine_profile(q);
    PeriodProfile {
        cover: q.cover.prefix(r),
        exponents: levels[r - 1].clone(),
    }
}

/// The diagonal operator: (H^{i,i})_i on the same cover.
pub fn op_d(q: &PeriodProfile) -> PeriodProfile {
    let levels = refine_profile(q);
    let exponents = (1..=q.cover.len()).map(|i| levels[i - 1][i - 1]).collect();
    PeriodProfile {
        cover: q.cover.clone(),
        exponents,
    }
}

/// The collapse operator: max_i (H^{i,i} + step(m_i, 0)).
pub fn op_i(q: &PeriodProfile) -> u64 {
    let levels = refine_profile(q);
    let p = q.cover.p();
    (1..=q.cover.len())
        .map(|i| levels[i - 1][i - 1] + delta_h(q.cover.degrees()[i - 1], 0, p))
        .max()
        .unwrap()
}

pub fn op_i_of_d(q: &PeriodProfile) -> u64 {
    op_i(&op_d(q))
}

/// A degree-preserving partial matching between the indices of two covers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SequentialWiring {
    source: CoverShape,
    target: CoverShape,
    /// (source index, target index), 0-based, injective on both sides.
    pairs: Vec<(usize, usize)>,
}

impl SequentialWiring {
    pub fn new(
        source: CoverShape,
        target: CoverShape,
        pairs: Vec<(usize, usize)>,
    ) -> Result<SequentialWiring, BoundsError> {
        let mut seen_s = vec![false; source.len()];
        let mut seen_t = vec![false; target.len()];
        for &(i, k) in &pairs {
            if i >= source.len() || k >= target.len() {
                return Err(BoundsError::BadWiring(String::from("index out of range")));
            }
            if source.degrees()[i] != target.degrees()[k] {
                return Err(BoundsError::BadWiring(String::from(
                    "paired generators must have equal degrees",
                )));
            }
            if seen_s[i] || seen_t[k] {
                return Err(BoundsError::BadWiring(String::from(
                    "pairing must be injective on both sides",
                )));
            }
            seen_s[i] = true;
            seen_t[k] = true;
        }
        Ok(SequentialWiring {
            source,
            target,
            pairs,
        })
    }

    pub fn empty(source: CoverShape, target: CoverShape) -> SequentialWiring {
        SequentialWiring {
            source,
            target,
            pairs: Vec::new(),
        }
    }

    pub fn identity(cover: CoverShape) -> SequentialWiring {
        let pairs = (0..cover.len()).map(|i| (i, i)).collect();
        SequentialWiring {
            source: cover.clone(),
            target: cover,
            pairs,
        }
    }

    pub fn source(&self) -> &CoverShape {
        &self.source
    }

    pub fn target(&self) -> &CoverShape {
        &self.target
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Transport a profile along a wiring: matched indices carry their exponent,
/// unmatched target indices get 0.
pub fn phi_star(q: &PeriodProfile, w: &SequentialWiring) -> Result<PeriodProfile, BoundsError> {
    if q.cover != w.source {
        return Err(BoundsError::CoverMismatch);
    }
    let mut exponents = vec![0u64; w.target.len()];
    for &(i, k) in &w.pairs {
        exponents[k] = q.exponents[i];
    }
    Ok(PeriodProfile {
        cover: w.target.clone(),
        exponents,
    })
}

/// Componentwise max: the profile of a linear combination of two periodic
/// twists.
pub fn gcd_profiles(a: &PeriodProfile, b: &PeriodProfile) -> Result<PeriodProfile, BoundsError> {
    if a.cover != b.cover {
        return Err(BoundsError::CoverMismatch);
    }
    let exponents = a
        .exponents
        .iter()
        .zip(&b.exponents)
        .map(|(&x, &y)| x.max(y))
        .collect();
    Ok(PeriodProfile {
        cover: a.cover.clone(),
        exponents,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredBounds {
    /// Period divides p^exponent.
    pub exponent: u64,
    /// Stability once n - a reaches this value.
    pub stable_range: u64,
}

/// The one-module bounds: exponent from collapsing the refined zero profile,
/// range 2(t + d - 1) + D.
pub fn filtered_bounds(cover: &CoverShape, t: u64) -> FilteredBounds {
    let exponent = op_i_of_d(&PeriodProfile::zero(cover.clone()));
    let d = cover.len() as u64;
    FilteredBounds {
        exponent,
        stable_range: 2 * (t + d - 1) + cover.max_degree(),
    }
}

/// The three closed-form bounds on the operator outputs for a profile with
/// top exponent D1 on a cover of top degree D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorBounds {
    pub i_value: u64,
    pub i_limit: u64,
    pub d_values: Vec<u64>,
    pub d_limits: Vec<u64>,
    pub id_value: u64,
    pub id_limit: u64,
}

impl OperatorBounds {
    pub fn hold(&self) -> bool {
        self.i_value <= self.i_limit
            && self.id_value <= self.id_limit
            && self
                .d_values
                .iter()
                .zip(&self.d_limits)
                .all(|(v, l)| v <= l)
    }
}

pub fn operator_bounds(q: &PeriodProfile) -> OperatorBounds {
    let d1 = q.max_exponent();
    let dd = q.cover.max_degree();
    let d_values = op_d(q).exponents().to_vec();
    let d_limits = q
        .cover
        .degrees()
        .iter()
        .map(|&m| d1 + dd - m)
        .collect();
    OperatorBounds {
        i_value: op_i(q),
        i_limit: d1 + dd,
        d_values,
        d_limits,
        id_value: op_i_of_d(q),
        id_limit: d1 + 2 * dd,
    }
}

/// Upper bound for the top-degree-t configuration-space period exponent.
pub fn config_bound(t: u64) -> u64 {
    (t + 3) * (2 * t + 2)
}

// ---------------------------------------------------------------------------
// Resolution shapes and the page recursions
// ---------------------------------------------------------------------------

/// One column of a resolution: its rows (covers) bottom-up, the sequential
/// wiring between consecutive rows, an optional exactness-onset constant and
/// an optional generation-degree override.
#[derive(Clone, Debug)]
pub struct ResolutionColumn {
    pub rows: Vec<CoverShape>,
    /// row_wiring[u]: rows[u] -> rows[u+1]; None means the zero map.
    pub row_wiring: Vec<Option<SequentialWiring>>,
    pub onset: Option<u64>,
    pub gen_degree: Option<u64>,
}

impl ResolutionColumn {
    pub fn single(cover: CoverShape) -> ResolutionColumn {
        ResolutionColumn {
            rows: vec![cover],
            row_wiring: Vec::new(),
            onset: None,
            gen_degree: None,
        }
    }
}

/// Horizontal wiring between two consecutive columns, per row; None rows are
/// zero maps.
#[derive(Clone, Debug, Default)]
pub struct ColumnWiring {
    pub per_row: Vec<Option<SequentialWiring>>,
}

#[derive(Clone, Debug)]
pub struct ResolutionShape {
    pub p: u64,
    pub columns: Vec<ResolutionColumn>,
    /// wiring[x]: column x -> column x+1.
    pub wiring: Vec<ColumnWiring>,
}

impl ResolutionShape {
    pub fn validate(&self) -> Result<(), BoundsError> {
        if !is_prime(self.p) {
            return Err(BoundsError::NotPrime(self.p));
        }
        if self.columns.is_empty() {
            return Err(BoundsError::BadShape(String::from("no columns")));
        }
        if self.wiring.len() + 1 < self.columns.len() {
            return Err(BoundsError::BadShape(String::from(
                "missing wiring between consecutive columns",
            )));
        }
        for (x, col) in self.columns.iter().enumerate() {
            if col.rows.is_empty() {
                return Err(BoundsError::BadShape(String::from("column with no rows")));
            }
            for cover in &col.rows {
                if cover.p() != self.p {
                    return Err(BoundsError::BadShape(String::from("cover prime mismatch")));
                }
            }
            if let Some(dx) = col.gen_degree {
                let max = col.rows.iter().map(|c| c.max_degree()).max().unwrap();
                if dx < max {
                    return Err(BoundsError::BadShape(String::from(
                        "declared generation degree below the cover degrees",
                    )));
                }
            }
            for (u, w) in col.row_wiring.iter().enumerate() {
                if let Some(w) = w {
                    if u + 1 >= col.rows.len()
                        || *w.source() != col.rows[u]
                        || *w.target() != col.rows[u + 1]
                    {
                        return Err(BoundsError::BadShape(String::from(
                            "row wiring endpoints do not match the row covers",
                        )));
                    }
                }
            }
            if x + 1 < self.columns.len() {
                let next = &self.columns[x + 1];
                for (u, w) in self.wiring[x].per_row.iter().enumerate() {
                    if let Some(w) = w {
                        if u >= col.rows.len()
                            || u >= next.rows.len()
                            || *w.source() != col.rows[u]
                            || *w.target() != next.rows[u]
                        {
                            return Err(BoundsError::BadShape(String::from(
                                "column wiring endpoints do not match the row covers",
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_scalar(&self) -> bool {
        self.columns.iter().all(|c| c.rows.len() == 1)
    }

    /// Largest onset constant, when every column declares one.
    pub fn onset_max(&self) -> Option<u64> {
        self.columns.iter().map(|c| c.onset).collect::<Option<Vec<u64>>>()?.into_iter().max()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finals {
    /// Period divides p^m_inf.
    pub m_inf: u64,
    /// Stable once n - a >= max(sd_inf, onset).
    pub sd_inf: u64,
    /// Max onset constant when all columns supplied one.
    pub onset: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageCell {
    pub x: usize,
    pub y: usize,
    pub m: u64,
    pub sd: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageTable {
    pub r: usize,
    pub cells: Vec<PageCell>,
}

/// A single chain of covers with wirings between consecutive entries. This is
/// the shape of a one-module resolution, and also of one column of a complex
/// resolution read bottom-up.
struct ChainShape {
    covers: Vec<CoverShape>,
    wirings: Vec<Option<SequentialWiring>>,
    gen_degrees: Vec<u64>,
}

impl ChainShape {
    fn lengths(&self, x: usize) -> u64 {
        self.covers[x].len() as u64
    }
}

/// Memoized scalar page recursion over a chain.
struct ChainRecursion {
    chain: ChainShape,
    /// Per column x: the refined zero profile, its pushes along the chain and
    /// the diagonals; pushed[x][i] lives on cover x+i+1.
    pushed: Vec<Vec<PeriodProfile>>,
    m_memo: BTreeMap<(usize, usize, usize), u64>,
    sd_memo: BTreeMap<(usize, usize, usize), u64>,
}

impl ChainRecursion {
    fn new(chain: ChainShape) -> ChainRecursion {
        let ncols = chain.covers.len();
        let mut pushed = Vec::with_capacity(ncols);
        for x in 0..ncols {
            let mut row = Vec::new();
            let mut q = op_d(&PeriodProfile::zero(chain.covers[x].clone()));
            for i in 0.. {
                if x + i + 1 >= ncols {
                    break;
                }
                let w = match &chain.wirings[x + i] {
                    Some(w) => w.clone(),
                    None => SequentialWiring::empty(
                        chain.covers[x + i].clone(),
                        chain.covers[x + i + 1].clone(),
                    ),
                };
                let p = phi_star(&q, &w).expect("validated wiring");
                q = op_d(&p);
                row.push(p);
            }
            pushed.push(row);
        }
        ChainRecursion {
            chain,
            pushed,
            m_memo: BTreeMap::new(),
            sd_memo: BTreeMap::new(),
        }
    }

    fn in_range(&self, x: isize, y: isize) -> bool {
        x >= 0 && (x as usize) < self.chain.covers.len() && y >= 0
    }

    /// N^{x,y}_r: the divisibility needed for the page-r differential out of
    /// (x,y) to commute with restriction. Chain terms stop where the strip
    /// leaves the first quadrant or the columns run out.
    fn n_val(&self, x: usize, y: usize, r: usize) -> u64 {
        let mut best = op_i(&PeriodProfile::zero(self.chain.covers[x].clone()));
        for i in 0..r {
            if i > y || i >= self.pushed[x].len() {
                break;
            }
            best = best.max(op_i(&self.pushed[x][i]));
        }
        best
    }

    fn m(&mut self, x: usize, y: usize, r: usize) -> u64 {
        if let Some(&v) = self.m_memo.get(&(x, y, r)) {
            return v;
        }
        let v = if r == 1 {
            2 * self.chain.gen_degrees[x]
        } else {
            let s = r - 1;
            let mut best = self.m(x, y, s).max(self.n_val(x, y, s));
            let (xi, yi) = (x as isize, y as isize);
            let (lx, ly) = (xi - s as isize, yi + s as isize - 1);
            if self.in_range(lx, ly) {
                best = best
                    .max(self.m(lx as usize, ly as usize, s))
                    .max(self.n_val(lx as usize, ly as usize, s));
            }
            let (rx, ry) = (xi + s as isize, yi - s as isize + 1);
            if self.in_range(rx, ry) {
                best = best.max(self.m(rx as usize, ry as usize, s));
            }
            best
        };
        self.m_memo.insert((x, y, r), v);
        v
    }

    fn sd(&mut self, x: usize, y: usize, r: usize) -> u64 {
        if let Some(&v) = self.sd_memo.get(&(x, y, r)) {
            return v;
        }
        let v = if r == 1 {
            2 * (y as u64 + self.chain.lengths(x) - 1) + self.chain.gen_degrees[x]
        } else {
            let s = r - 1;
            let mut best = self.sd(x, y, s);
            let (xi, yi) = (x as isize, y as isize);
            let (lx, ly) = (xi - s as isize, yi + s as isize - 1);
            if self.in_range(lx, ly) {
                best = best.max(self.sd(lx as usize, ly as usize, s));
            }
            let (rx, ry) = (xi + s as isize, yi - s as isize + 1);
            if self.in_range(rx, ry) {
                best = best.max(self.sd(rx as usize, ry as usize, s));
            }
            best
        };
        self.sd_memo.insert((x, y, r), v);
        v
    }

    /// Finals over the antidiagonal x + y = t; pages stabilize at r = t + 2.
    fn finals(&mut self, t: u64) -> (u64, u64) {
        let r = t as usize + 2;
        let mut m_inf = 0;
        let mut sd_inf = 0;
        for x in 0..self.chain.covers.len().min(t as usize + 1) {
            let y = t as usize - x;
            m_inf = m_inf.max(self.m(x, y, r));
            sd_inf = sd_inf.max(self.sd(x, y, r));
        }
        (m_inf, sd_inf)
    }

    fn pages(&mut self, t: u64, r_max: usize) -> Vec<PageTable> {
        let mut out = Vec::new();
        for r in 1..=r_max {
            let mut cells = Vec::new();
            for x in 0..self.chain.covers.len().min(t as usize + 1) {
                let y = t as usize - x;
                cells.push(PageCell {
                    x,
                    y,
                    m: self.m(x, y, r),
                    sd: self.sd(x, y, r),
                    n: self.n_val(x, y, r),
                });
            }
            out.push(PageTable { r, cells });
        }
        out
    }
}

fn scalar_chain(shape: &ResolutionShape) -> Result<ChainShape, BoundsError> {
    shape.validate()?;
    if !shape.is_scalar() {
        return Err(BoundsError::BadShape(String::from(
            "shape has multi-row columns; use the vector recursion",
        )));
    }
    let covers: Vec<CoverShape> = shape.columns.iter().map(|c| c.rows[0].clone()).collect();
    let mut wirings = Vec::new();
    for x in 0..covers.len().saturating_sub(1) {
        wirings.push(shape.wiring[x].per_row.first().cloned().flatten());
    }
    let gen_degrees = shape
        .columns
        .iter()
        .map(|c| c.gen_degree.unwrap_or_else(|| c.rows[0].max_degree()))
        .collect();
    Ok(ChainShape {
        covers,
        wirings,
        gen_degrees,
    })
}

fn column_chain(col: &ResolutionColumn) -> ChainShape {
    let mut wirings = Vec::new();
    for u in 0..col.rows.len().saturating_sub(1) {
        wirings.push(col.row_wiring.get(u).cloned().flatten());
    }
    ChainShape {
        covers: col.rows.clone(),
        wirings,
        gen_degrees: col.rows.iter().map(|c| c.max_degree()).collect(),
    }
}

/// Period and stable-range finals for a single-module resolution.
pub fn resolution_finals(shape: &ResolutionShape, t: u64) -> Result<Finals, BoundsError> {
    let mut rec = ChainRecursion::new(scalar_chain(shape)?);
    let (m_inf, sd_inf) = rec.finals(t);
    Ok(Finals {
        m_inf,
        sd_inf,
        onset: shape.onset_max(),
    })
}

/// Per-page tables along the antidiagonal x + y = t.
pub fn resolution_pages(
    shape: &ResolutionShape,
    t: u64,
    r_max: usize,
) -> Result<Vec<PageTable>, BoundsError> {
    let mut rec = ChainRecursion::new(scalar_chain(shape)?);
    Ok(rec.pages(t, r_max))
}

// --- the vector recursion -------------------------------------------------

/// Profiles per row of one column; None marks absent rows.
type RowTuple = Vec<Option<PeriodProfile>>;

struct VectorRecursion<'a> {
    shape: &'a ResolutionShape,
    m_memo: BTreeMap<(usize, usize, usize), u64>,
    sd_memo: BTreeMap<(usize, usize, usize), u64>,
    base_memo: BTreeMap<(usize, usize), (u64, u64)>,
    chain_memo: BTreeMap<(usize, usize), Vec<RowTuple>>,
}

impl<'a> VectorRecursion<'a> {
    fn new(shape: &'a ResolutionShape) -> Result<VectorRecursion<'a>, BoundsError> {
        shape.validate()?;
        Ok(VectorRecursion {
            shape,
            m_memo: BTreeMap::new(),
            sd_memo: BTreeMap::new(),
            base_memo: BTreeMap::new(),
            chain_memo: BTreeMap::new(),
        })
    }

    fn ncols(&self) -> usize {
        self.shape.columns.len()
    }

    fn zero_inputs(&self, x: usize, upto: isize) -> RowTuple {
        let col = &self.shape.columns[x];
        (0..=upto.max(-1))
            .map(|u| {
                col.rows
                    .get(u as usize)
                    .map(|c| PeriodProfile::zero(c.clone()))
            })
            .collect()
    }

    fn row_wiring(&self, x: usize, u: usize) -> SequentialWiring {
        let col = &self.shape.columns[x];
        match col.row_wiring.get(u).cloned().flatten() {
            Some(w) => w,
            None => SequentialWiring::empty(col.rows[u].clone(), col.rows[u + 1].clone()),
        }
    }

    /// The within-column diagonal chain: from inputs on rows 0..=t+1 produce
    /// the refined diagonals on rows 0..=t.
    fn vec_chain(&self, x: usize, t: isize, inputs: &RowTuple) -> RowTuple {
        if t < 0 {
            return Vec::new();
        }
        let col = &self.shape.columns[x];
        let mut out: RowTuple = Vec::with_capacity(t as usize + 1);
        out.push(inputs.first().cloned().flatten().map(|q| op_d(&q)));
        for u in 0..t as usize {
            let next = match (&out[u], col.rows.get(u + 1)) {
                (Some(q), Some(next_cover)) => {
                    let w = self.row_wiring(x, u);
                    let pushed = phi_star(q, &w).expect("validated wiring");
                    let inp = match inputs.get(u + 1).cloned().flatten() {
                        Some(i) => i,
                        None => PeriodProfile::zero(next_cover.clone()),
                    };
                    Some(op_d(&gcd_profiles(&pushed, &inp).expect("same cover")))
                }
                _ => None,
            };
            out.push(next);
        }
        out
    }

    /// The within-column collapse: the divisibility exponent for transporting
    /// a twisted total-complex cycle on column x in total degree t.
    fn vec_i(&self, x: usize, t: isize, inputs: &RowTuple) -> u64 {
        let col = &self.shape.columns[x];
        let mut best = match inputs.first().cloned().flatten() {
            Some(q) => op_i(&q),
            None => return 0,
        };
        if t >= 0 {
            let chain = self.vec_chain(x, t, inputs);
            for (u, entry) in chain.iter().enumerate() {
                if let (Some(q), Some(next_cover)) = (entry, col.rows.get(u + 1)) {
                    let w = self.row_wiring(x, u);
                    let pushed = phi_star(q, &w).expect("validated wiring");
                    let inp = match inputs.get(u + 1).cloned().flatten() {
                        Some(i) => i,
                        None => PeriodProfile::zero(next_cover.clone()),
                    };
                    best = best.max(op_i(&gcd_profiles(&pushed, &inp).expect("same cover")));
                }
            }
        }
        best
    }

    /// Push a row tuple across the horizontal wiring from column x to x+1.
    fn push_columns(&self, x: usize, tuple: &RowTuple) -> RowTuple {
        let next = &self.shape.columns[x + 1];
        tuple
            .iter()
            .enumerate()
            .map(|(u, q)| {
                let target = next.rows.get(u)?;
                let q = q.as_ref()?;
                let w = match self.shape.wiring[x].per_row.get(u).cloned().flatten() {
                    Some(w) => w,
                    None => {
                        SequentialWiring::empty(q.cover().clone(), target.clone())
                    }
                };
                Some(phi_star(q, &w).expect("validated wiring"))
            })
            .collect()
    }

    /// The tuples Q_{i} for the strip starting at (x, y); entry i lives on
    /// column x+i, rows 0..=y-i.
    fn strip_chain(&mut self, x: usize, y: usize) -> Vec<RowTuple> {
        if let Some(c) = self.chain_memo.get(&(x, y)) {
            return c.clone();
        }
        let mut out = Vec::new();
        let zeros = self.zero_inputs(x, y as isize + 1);
        out.push(self.vec_chain(x, y as isize, &zeros));
        for i in 0..y {
            if x + i + 1 >= self.ncols() {
                break;
            }
            let pushed = self.push_columns(x + i, &out[i]);
            out.push(self.vec_chain(x + i + 1, y as isize - i as isize - 1, &pushed));
        }
        self.chain_memo.insert((x, y), out.clone());
        out
    }

    fn n_val(&mut self, x: usize, y: usize, r: usize) -> u64 {
        let zeros = self.zero_inputs(x, y as isize + 1);
        let mut best = self.vec_i(x, y as isize, &zeros);
        let chain = self.strip_chain(x, y);
        for i in 0..r {
            if i > y || x + i + 1 >= self.ncols() || i >= chain.len() {
                break;
            }
            let pushed = self.push_columns(x + i, &chain[i]);
            best = best.max(self.vec_i(x + i + 1, y as isize - i as isize - 1, &pushed));
        }
        best
    }

    /// Base page: the one-column total complex bounds at total degree y.
    fn base(&mut self, x: usize, y: usize) -> (u64, u64) {
        if let Some(&v) = self.base_memo.get(&(x, y)) {
            return v;
        }
        let mut col_rec = ChainRecursion::new(column_chain(&self.shape.columns[x]));
        let (col_m, col_sd) = col_rec.finals(y as u64);
        let zeros = self.zero_inputs(x, y as isize + 1);
        let diag = self.vec_chain(x, y as isize, &zeros);
        let m1 = col_m
            .max(self.vec_i(x, y as isize - 1, &diag))
            .max(self.vec_i(x, y as isize, &zeros));
        let v = (m1, col_sd);
        self.base_memo.insert((x, y), v);
        v
    }

    fn in_range(&self, x: isize, y: isize) -> bool {
        x >= 0 && (x as usize) < self.ncols() && y >= 0
    }

    fn m(&mut self, x: usize, y: usize, r: usize) -> u64 {
        if let Some(&v) = self.m_memo.get(&(x, y, r)) {
            return v;
        }
        let v = if r == 1 {
            self.base(x, y).0
        } else {
            let s = r - 1;
            let mut best = self.m(x, y, s).max(self.n_val(x, y, s));
            let (xi, yi) = (x as isize, y as isize);
            let (lx, ly) = (xi - s as isize, yi + s as isize - 1);
            if self.in_range(lx, ly) {
                best = best
                    .max(self.m(lx as usize, ly as usize, s))
                    .max(self.n_val(lx as usize, ly as usize, s));
            }
            let (rx, ry) = (xi + s as isize, yi - s as isize + 1);
            if self.in_range(rx, ry) {
                best = best.max(self.m(rx as usize, ry as usize, s));
            }
            best
        };
        self.m_memo.insert((x, y, r), v);
        v
    }

    fn sd(&mut self, x: usize, y: usize, r: usize) -> u64 {
        if let Some(&v) = self.sd_memo.get(&(x, y, r)) {
            return v;
        }
        let v = if r == 1 {
            self.base(x, y).1
        } else {
            let s = r - 1;
            let mut best = self.sd(x, y, s);
            let (xi, yi) = (x as isize, y as isize);
            let (lx, ly) = (xi - s as isize, yi + s as isize - 1);
            if self.in_range(lx, ly) {
                best = best.max(self.sd(lx as usize, ly as usize, s));
            }
            let (rx, ry) = (xi + s as isize, yi - s as isize + 1);
            if self.in_range(rx, ry) {
                best = best.max(self.sd(rx as usize, ry as usize, s));
            }
            best
        };
        self.sd_memo.insert((x, y, r), v);
        v
    }
}

/// Finals of the vector recursion over a complex of resolutions.
pub fn vector_finals(shape: &ResolutionShape, t: u64) -> Result<Finals, BoundsError> {
    let mut rec = VectorRecursion::new(shape)?;
    let r = t as usize + 2;
    let mut m_inf = 0;
    let mut sd_inf = 0;
    for x in 0..rec.ncols().min(t as usize + 1) {
        let y = t as usize - x;
        m_inf = m_inf.max(rec.m(x, y, r));
        sd_inf = sd_inf.max(rec.sd(x, y, r));
    }
    Ok(Finals {
        m_inf,
        sd_inf,
        onset: shape.onset_max(),
    })
}

/// Per-page values at one position of the vector recursion.
pub fn vector_pages(
    shape: &ResolutionShape,
    x: usize,
    y: usize,
    r_max: usize,
) -> Result<Vec<PageCell>, BoundsError> {
    let mut rec = VectorRecursion::new(shape)?;
    if x >= rec.ncols() {
        return Err(BoundsError::BadShape(String::from("x beyond last column")));
    }
    Ok((1..=r_max)
        .map(|r| PageCell {
            x,
            y,
            m: rec.m(x, y, r),
            sd: rec.sd(x, y, r),
            n: rec.n_val(x, y, r),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cover(p: u64, degrees: &[u64]) -> CoverShape {
        CoverShape::new(p, degrees.to_vec()).unwrap()
    }

    #[test]
    fn delta_h_values() {
        assert_eq!(delta_h(3, 7, 2), 0);
        assert_eq!(delta_h(4, 4, 5), 0);
        // v_2(120) + 1 = 4
        assert_eq!(delta_h(5, 0, 2), 4);
        // v_3(6) + 1 = 2
        assert_eq!(delta_h(4, 1, 3), 2);
    }

    #[test]
    fn vp_factorial_values() {
        assert_eq!(vp_factorial(5, 2), 3);
        assert_eq!(vp_factorial(10, 2), 8);
        assert_eq!(vp_factorial(9, 3), 4);
        assert_eq!(vp_factorial(0, 7), 0);
    }

    #[test]
    fn refine_on_two_generator_cover() {
        // cover (0, m), zero input: H^{1,1} = step(m, 0)
        let q = PeriodProfile::zero(cover(2, &[0, 5]));
        let levels = refine_profile(&q);
        assert_eq!(levels[1], vec![0, 0]);
        assert_eq!(levels[0], vec![4]);
        assert_eq!(op_d(&q).exponents(), &[4, 0]);
        assert_eq!(op_dr(&q, 1).exponents(), &[4]);
        assert_eq!(op_dr(&q, 2).exponents(), &[0, 0]);
        assert_eq!(op_i(&q), 4);
        assert_eq!(op_i_of_d(&q), 4);
    }

    #[test]
    fn refine_single_generator_is_input() {
        let q = PeriodProfile::new(cover(3, &[2]), vec![7]).unwrap();
        assert_eq!(refine_profile(&q), vec![vec![7]]);
    }

    #[test]
    fn refine_monotone_in_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for p in [2u64, 3, 5] {
            for _ in 0..200 {
                let d = rng.gen_range(1..6);
                let degrees: Vec<u64> = (0..d).map(|_| rng.gen_range(0..7)).collect();
                let exps: Vec<u64> = (0..d).map(|_| rng.gen_range(0..6)).collect();
                let q = PeriodProfile::new(cover(p, &degrees), exps).unwrap();
                let levels = refine_profile(&q);
                for r in 2..=d {
                    for i in 1..r {
                        assert!(levels[r - 2][i - 1] >= levels[r - 1][i - 1]);
                    }
                }
                // deterministic
                assert_eq!(levels, refine_profile(&q));
            }
        }
    }

    #[test]
    fn all_zero_degrees_fix_profile() {
        let q = PeriodProfile::new(cover(3, &[0, 0, 0]), vec![2, 1, 3]).unwrap();
        assert_eq!(op_d(&q).exponents(), &[3, 3, 3]);
        // with equal max entries, collapse is the max exponent
        assert_eq!(op_i(&q), 3);
        let z = PeriodProfile::zero(cover(3, &[0, 0]));
        assert_eq!(op_d(&z), z);
        assert_eq!(op_i(&z), 0);
    }

    #[test]
    fn i_of_d_dominates_i() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for p in [2u64, 3, 5] {
            for _ in 0..300 {
                let d = rng.gen_range(1..6);
                let degrees: Vec<u64> = (0..d).map(|_| rng.gen_range(0..7)).collect();
                let exps: Vec<u64> = (0..d).map(|_| rng.gen_range(0..6)).collect();
                let q = PeriodProfile::new(cover(p, &degrees), exps).unwrap();
                assert!(op_i_of_d(&q) >= op_i(&q));
            }
        }
    }

    #[test]
    fn phi_star_examples() {
        let c2 = cover(2, &[3, 5]);
        let q = PeriodProfile::new(c2.clone(), vec![3, 5]).unwrap();
        let id = SequentialWiring::identity(c2.clone());
        assert_eq!(phi_star(&q, &id).unwrap(), q);

        // pairing {2 -> 1} (1-based) on equal degree 5
        let target = cover(2, &[5, 7]);
        let w = SequentialWiring::new(c2.clone(), target.clone(), vec![(1, 0)]).unwrap();
        assert_eq!(phi_star(&q, &w).unwrap().exponents(), &[5, 0]);

        let empty = SequentialWiring::empty(c2, target);
        assert_eq!(phi_star(&q, &empty).unwrap().exponents(), &[0, 0]);
    }

    #[test]
    fn wiring_rejects_degree_mismatch() {
        let s = cover(2, &[1, 2]);
        let t = cover(2, &[2, 3]);
        assert!(SequentialWiring::new(s.clone(), t.clone(), vec![(0, 0)]).is_err());
        assert!(SequentialWiring::new(s.clone(), t.clone(), vec![(1, 0)]).is_ok());
        assert!(SequentialWiring::new(s, t, vec![(1, 0), (1, 0)]).is_err());
    }

    #[test]
    fn gcd_is_componentwise_max() {
        let c = cover(2, &[0, 1]);
        let a = PeriodProfile::new(c.clone(), vec![1, 2]).unwrap();
        let b = PeriodProfile::new(c.clone(), vec![2, 0]).unwrap();
        assert_eq!(gcd_profiles(&a, &b).unwrap().exponents(), &[2, 2]);
        assert_eq!(gcd_profiles(&a, &PeriodProfile::zero(c)).unwrap(), a);
        assert_eq!(gcd_profiles(&a, &a).unwrap(), a);
    }

    #[test]
    fn phi_star_commutes_with_gcd() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..200 {
            let d1 = rng.gen_range(1..5);
            let d2 = rng.gen_range(1..5);
            let sdeg: Vec<u64> = (0..d1).map(|_| rng.gen_range(0..4)).collect();
            let tdeg: Vec<u64> = (0..d2).map(|_| rng.gen_range(0..4)).collect();
            let s = cover(3, &sdeg);
            let t = cover(3, &tdeg);
            let mut pairs = Vec::new();
            let mut used = vec![false; d2];
            for (i, &deg) in sdeg.iter().enumerate() {
                if let Some(k) = (0..d2).find(|&k| !used[k] && tdeg[k] == deg) {
                    if rng.gen_bool(0.7) {
                        used[k] = true;
                        pairs.push((i, k));
                    }
                }
            }
            let w = SequentialWiring::new(s.clone(), t, pairs).unwrap();
            let qa = PeriodProfile::new(s.clone(), (0..d1).map(|_| rng.gen_range(0..5)).collect())
                .unwrap();
            let qb = PeriodProfile::new(s.clone(), (0..d1).map(|_| rng.gen_range(0..5)).collect())
                .unwrap();
            let lhs = phi_star(&gcd_profiles(&qa, &qb).unwrap(), &w).unwrap();
            let rhs = gcd_profiles(&phi_star(&qa, &w).unwrap(), &phi_star(&qb, &w).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn filtered_bounds_examples() {
        let fb = filtered_bounds(&cover(2, &[0, 5]), 0);
        assert_eq!(fb.exponent, 4);
        assert_eq!(fb.stable_range, 7);

        let fb = filtered_bounds(&cover(5, &[0]), 0);
        assert_eq!(fb.exponent, 0);
        assert_eq!(fb.stable_range, 0);
    }

    #[test]
    fn filtered_exponent_at_most_twice_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for p in [2u64, 3, 5] {
            for _ in 0..300 {
                let d = rng.gen_range(1..6);
                let degrees: Vec<u64> = (0..d).map(|_| rng.gen_range(0..7)).collect();
                let c = cover(p, &degrees);
                assert!(filtered_bounds(&c, 0).exponent <= 2 * c.max_degree());
            }
        }
    }

    #[test]
    fn operator_bounds_hold_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for p in [2u64, 3, 5] {
            for _ in 0..1000 {
                let d = rng.gen_range(1..7);
                let degrees: Vec<u64> = (0..d).map(|_| rng.gen_range(0..8)).collect();
                let exps: Vec<u64> = (0..d).map(|_| rng.gen_range(0..8)).collect();
                let q = PeriodProfile::new(cover(p, &degrees), exps).unwrap();
                let b = operator_bounds(&q);
                assert!(b.hold(), "bound violated for {q:?}: {b:?}");
            }
        }
        // sharp example: zero profile on (0, 5)
        let b = operator_bounds(&PeriodProfile::zero(cover(2, &[0, 5])));
        assert_eq!(b.i_value, 4);
        assert!(b.i_value <= b.i_limit);
        // degree-zero covers: every limit collapses to the top exponent
        let q = PeriodProfile::new(cover(3, &[0, 0]), vec![2, 5]).unwrap();
        let b = operator_bounds(&q);
        assert_eq!(b.i_limit, 5);
        assert_eq!(b.id_limit, 5);
        assert!(b.d_limits.iter().all(|&l| l == 5));
        assert!(b.hold());
    }

    fn single_column_shape(p: u64, degrees: &[u64]) -> ResolutionShape {
        ResolutionShape {
            p,
            columns: vec![ResolutionColumn::single(cover(p, degrees))],
            wiring: Vec::new(),
        }
    }

    #[test]
    fn single_column_recursion_is_base_page() {
        for t in 0..5u64 {
            let f = resolution_finals(&single_column_shape(2, &[0, 3, 3]), t).unwrap();
            assert_eq!(f.m_inf, 6);
            assert_eq!(f.sd_inf, 2 * (t + 3 - 1) + 3);
            assert_eq!(f.onset, None);
        }
        let f = resolution_finals(&single_column_shape(2, &[3]), 1).unwrap();
        assert_eq!(f.m_inf, 6);
    }

    #[test]
    fn pages_monotone_in_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..50 {
            let shape = random_scalar_shape(&mut rng, 2, 5, 4);
            let t = rng.gen_range(0..4u64);
            let pages = resolution_pages(&shape, t, t as usize + 3).unwrap();
            for w in pages.windows(2) {
                for (a, b) in w[0].cells.iter().zip(&w[1].cells) {
                    assert!(b.m >= a.m);
                    assert!(b.sd >= a.sd);
                }
            }
        }
    }

    pub(super) fn random_scalar_shape(
        rng: &mut ChaCha8Rng,
        p: u64,
        max_d: u64,
        max_len: usize,
    ) -> ResolutionShape {
        // Structure-theorem shaped: column x generated in degree <= D - x.
        let dd = rng.gen_range(1..=max_d);
        let ncols = rng.gen_range(1..=(dd as usize + 1).min(5));
        let mut columns = Vec::new();
        for x in 0..ncols {
            let cap = dd.saturating_sub(x as u64);
            let len = rng.gen_range(1..=max_len);
            let degrees: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=cap)).collect();
            columns.push(ResolutionColumn::single(cover(p, &degrees)));
        }
        let mut wiring = Vec::new();
        for x in 0..ncols - 1 {
            let s = columns[x].rows[0].clone();
            let t = columns[x + 1].rows[0].clone();
            wiring.push(ColumnWiring {
                per_row: vec![Some(random_wiring(rng, &s, &t))],
            });
        }
        ResolutionShape {
            p,
            columns,
            wiring,
        }
    }

    pub(super) fn random_wiring(
        rng: &mut ChaCha8Rng,
        s: &CoverShape,
        t: &CoverShape,
    ) -> SequentialWiring {
        let mut pairs = Vec::new();
        let mut used = vec![false; t.len()];
        for i in 0..s.len() {
            if rng.gen_bool(0.6) {
                if let Some(k) =
                    (0..t.len()).find(|&k| !used[k] && t.degrees()[k] == s.degrees()[i])
                {
                    used[k] = true;
                    pairs.push((i, k));
                }
            }
        }
        SequentialWiring::new(s.clone(), t.clone(), pairs).unwrap()
    }

    #[test]
    fn finals_respect_main_bounds_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..120 {
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let shape = random_scalar_shape(&mut rng, p, 6, 4);
            let dd: u64 = shape
                .columns
                .iter()
                .map(|c| c.rows[0].max_degree())
                .max()
                .unwrap();
            let dmax: u64 = shape
                .columns
                .iter()
                .map(|c| c.rows[0].len() as u64)
                .max()
                .unwrap();
            for t in 0..=4u64 {
                let f = resolution_finals(&shape, t).unwrap();
                let m_cap = ((t + 3) * dd).min((2 * dd).max(dd * (dd + 1) / 2));
                assert!(
                    f.m_inf <= m_cap,
                    "m_inf {} > cap {m_cap} (D={dd}, t={t})",
                    f.m_inf
                );
                assert!(f.sd_inf <= 2 * (t + dmax - 1) + dd);
            }
        }
    }

    #[test]
    fn vector_degenerates_to_scalar_on_single_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        for _ in 0..60 {
            let p = [2u64, 3][rng.gen_range(0..2)];
            let shape = random_scalar_shape(&mut rng, p, 5, 3);
            for t in 0..=3u64 {
                let s = resolution_finals(&shape, t).unwrap();
                let v = vector_finals(&shape, t).unwrap();
                assert_eq!(s, v, "degeneracy failed at t={t}");
            }
        }
    }

    #[test]
    fn vector_zero_degree_grid_gives_zero_exponent() {
        // all degrees 0: every step operator vanishes
        let c = cover(2, &[0, 0]);
        let col = ResolutionColumn {
            rows: vec![c.clone(), c.clone()],
            row_wiring: vec![Some(SequentialWiring::identity(c.clone()))],
            onset: None,
            gen_degree: None,
        };
        let shape = ResolutionShape {
            p: 2,
            columns: vec![col.clone(), col],
            wiring: vec![ColumnWiring {
                per_row: vec![
                    Some(SequentialWiring::identity(c.clone())),
                    Some(SequentialWiring::identity(c)),
                ],
            }],
        };
        for t in 0..=3 {
            let f = vector_finals(&shape, t).unwrap();
            assert_eq!(f.m_inf, 0);
        }
    }

    #[test]
    fn vector_config_shape_bound() {
        // columns x <= t+1, row u generated in degree <= D - u with D = 2t+2:
        // the finals must stay under (t+3)(2t+2)
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        for t in 0..=3u64 {
            let dd = 2 * t + 2;
            for _ in 0..25 {
                let p = [2u64, 3][rng.gen_range(0..2)];
                let ncols = t as usize + 2;
                let mut columns = Vec::new();
                for _ in 0..ncols {
                    let nrows = rng.gen_range(1..=(dd as usize + 1).min(3));
                    let mut rows = Vec::new();
                    for u in 0..nrows {
                        let cap = dd.saturating_sub(u as u64);
                        let len = rng.gen_range(1..=3);
                        rows.push(cover(p, &(0..len).map(|_| rng.gen_range(0..=cap)).collect::<Vec<_>>()));
                    }
                    let mut row_wiring = Vec::new();
                    for u in 0..nrows - 1 {
                        let w = random_wiring(&mut rng, &rows[u].clone(), &rows[u + 1].clone());
                        row_wiring.push(Some(w));
                    }
                    columns.push(ResolutionColumn {
                        rows,
                        row_wiring,
                        onset: None,
                        gen_degree: None,
                    });
                }
                let mut wiring = Vec::new();
                for x in 0..ncols - 1 {
                    let rows_here = columns[x].rows.clone();
                    let rows_next = columns[x + 1].rows.clone();
                    let per_row = rows_here
                        .iter()
                        .zip(rows_next.iter())
                        .map(|(s, t)| Some(random_wiring(&mut rng, s, t)))
                        .collect();
                    wiring.push(ColumnWiring { per_row });
                }
                let shape = ResolutionShape {
                    p,
                    columns,
                    wiring,
                };
                let f = vector_finals(&shape, t).unwrap();
                assert!(
                    f.m_inf <= config_bound(t),
                    "t={t}: {} > {}",
                    f.m_inf,
                    config_bound(t)
                );
            }
        }
    }

    #[test]
    fn config_bound_values() {
        assert_eq!(config_bound(0), 6);
        assert_eq!(config_bound(1), 16);
        assert_eq!(config_bound(2), 30);
    }

    #[test]
    fn onset_reporting() {
        let mut shape = single_column_shape(2, &[1]);
        assert_eq!(shape.onset_max(), None);
        shape.columns[0].onset = Some(9);
        assert_eq!(shape.onset_max(), Some(9));
    }
}
