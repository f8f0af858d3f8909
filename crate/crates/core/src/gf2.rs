//! Multilinear polynomials over GF(2) in the choice variables `y[v,c]`,
//! basis extraction for systems `p = 0`, and a dense linear solver.
//!
//! A variable is the index `v * h + c` for cover vertex `v` and color `c`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::colorset::ColorSet;
use crate::error::{Error, Result};

pub fn var_index(vertex: usize, color: usize, h: usize) -> u32 {
    (vertex * h + color) as u32
}

pub fn var_parts(var: u32, h: usize) -> (usize, usize) {
    (var as usize / h, var as usize % h)
}

/// A product of distinct variables, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn new(mut vars: Vec<u32>) -> Monomial {
        vars.sort_unstable();
        vars.dedup();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Multilinear product: `y * y = y`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let next = match (self.0.get(i), other.0.get(j)) {
                (Some(&a), Some(&b)) if a == b => {
                    i += 1;
                    j += 1;
                    a
                }
                (Some(&a), Some(&b)) if a < b => {
                    i += 1;
                    a
                }
                (Some(&a), None) => {
                    i += 1;
                    a
                }
                (_, Some(&b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            v.push(next);
        }
        Monomial(v)
    }

    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Monomial {
        Monomial::new(self.0.iter().map(|&x| f(x)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sum of distinct monomials; the empty set is the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Gf2Poly {
    monomials: BTreeSet<Monomial>,
}

impl Gf2Poly {
    pub fn zero() -> Gf2Poly {
        Gf2Poly::default()
    }

    pub fn one() -> Gf2Poly {
        Gf2Poly::from_monomial(Monomial::one())
    }

    pub fn from_monomial(m: Monomial) -> Gf2Poly {
        Gf2Poly {
            monomials: BTreeSet::from([m]),
        }
    }

    /// A single variable.
    pub fn var(v: u32) -> Gf2Poly {
        Gf2Poly::from_monomial(Monomial(vec![v]))
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Gf2Poly) {
        for m in &other.monomials {
            self.add_monomial(m.clone());
        }
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        for a in &self.monomials {
            for b in &other.monomials {
                out.add_monomial(a.mul(b));
            }
        }
        out
    }

    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        for m in &self.monomials {
            out.add_monomial(m.rename(&f));
        }
        out
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.monomials.iter().flat_map(|m| m.0.iter().copied()).collect()
    }

    pub fn eval(&self, a: &ChoiceAssignment) -> Result<bool> {
        let mut acc = false;
        for m in &self.monomials {
            let mut term = true;
            for &x in &m.0 {
                // keep scanning after a zero factor so unassigned variables
                // are always reported
                term &= a.value(x)?;
            }
            acc ^= term;
        }
        Ok(acc)
    }

    /// Canonical listing `y[v,c]*y[v,c] + ...`, `0` for the zero polynomial.
    pub fn display(&self, h: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| {
                if m.0.is_empty() {
                    return "1".into();
                }
                m.0.iter()
                    .map(|&x| {
                        let (v, c) = var_parts(x, h);
                        format!("y[{v},{c}]")
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        terms.join(" + ")
    }
}

impl FromIterator<Monomial> for Gf2Poly {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut p = Gf2Poly::zero();
        for m in iter {
            p.add_monomial(m);
        }
        p
    }
}

/// The indicator of a coloring of some cover vertices: `y[v,c] = 1` iff
/// `v` is colored `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceAssignment {
    h: usize,
    colors: BTreeMap<usize, usize>,
}

impl ChoiceAssignment {
    pub fn new(h: usize) -> ChoiceAssignment {
        ChoiceAssignment {
            h,
            colors: BTreeMap::new(),
        }
    }

    /// Colors `verts[i]` with `colors[i]`.
    pub fn from_pairs(h: usize, verts: &[usize], colors: &[usize]) -> ChoiceAssignment {
        assert_eq!(verts.len(), colors.len());
        let mut a = ChoiceAssignment::new(h);
        for (&v, &c) in verts.iter().zip(colors) {
            a.set(v, c);
        }
        a
    }

    pub fn set(&mut self, vertex: usize, color: usize) {
        assert!(color < self.h, "color out of range");
        self.colors.insert(vertex, color);
    }

    pub fn color(&self, vertex: usize) -> Option<usize> {
        self.colors.get(&vertex).copied()
    }

    pub fn value(&self, var: u32) -> Result<bool> {
        let (vertex, color) = var_parts(var, self.h);
        match self.colors.get(&vertex) {
            Some(&c) => Ok(c == color),
            None => Err(Error::UnassignedVariable { vertex, color }),
        }
    }
}

/// `∏_{s ∈ S} (y[v_1,s] + ... + y[v_r,s])`: under a choice assignment each
/// factor is the parity of the number of `v_i` colored `s`. With
/// `r = |S| + 1` an odd count other than 1 would need at least three of the
/// `r` vertices, leaving fewer than `|S| - 1` for the other colors, so the
/// product is 1 exactly when every color of `S` appears once.
pub fn poly_local(s: ColorSet, verts: &[usize], h: usize) -> Result<Gf2Poly> {
    if verts.len() != s.len() + 1 {
        return Err(Error::InvalidArgument(format!(
            "poly_local needs |S| + 1 = {} vertices, got {}",
            s.len() + 1,
            verts.len()
        )));
    }
    if verts.iter().collect::<HashSet<_>>().len() != verts.len() {
        return Err(Error::InvalidArgument("poly_local vertices must be distinct".into()));
    }
    if !s.is_subset(ColorSet::full(h)) {
        return Err(Error::InvalidArgument("poly_local colors outside the target".into()));
    }
    ensure_poly_local_verified(s.len(), verts.len(), h)?;
    Ok(parity_product(s, verts, h))
}

fn parity_product(s: ColorSet, verts: &[usize], h: usize) -> Gf2Poly {
    s.iter().fold(Gf2Poly::one(), |acc, c| {
        let factor: Gf2Poly = verts
            .iter()
            .map(|&v| Monomial(vec![var_index(v, c, h)]))
            .collect();
        acc.mul(&factor)
    })
}

fn ensure_poly_local_verified(size: usize, r: usize, h: usize) -> Result<()> {
    static VERIFIED: OnceLock<Mutex<HashSet<(usize, usize, usize)>>> = OnceLock::new();
    let cache = VERIFIED.get_or_init(|| Mutex::new(HashSet::new()));
    if cache.lock().unwrap().contains(&(size, r, h)) {
        return Ok(());
    }
    check_poly_local_contract(size, r, h)?;
    cache.lock().unwrap().insert((size, r, h));
    Ok(())
}

/// Evaluates the parity product for `S = {0..size-1}` on vertices `0..r`
/// against every coloring. Colors outside `S` occur in no variable and are
/// all "not in S", so one representative of them is enough.
pub fn check_poly_local_contract(size: usize, r: usize, h: usize) -> Result<()> {
    let s: ColorSet = (0..size).collect();
    let verts: Vec<usize> = (0..r).collect();
    let p = parity_product(s, &verts, h);
    let alphabet = h.min(size + 1);
    let mut colors = vec![0usize; r];
    loop {
        let a = ChoiceAssignment::from_pairs(h, &verts, &colors);
        let once = (0..size).all(|c| colors.iter().filter(|&&x| x == c).count() == 1);
        if p.eval(&a)? != once {
            return Err(Error::Certification(format!(
                "exactly-once polynomial for |S|={size}, r={r}, h={h} is wrong on coloring {colors:?}"
            )));
        }
        if !next_tuple(&mut colors, alphabet) {
            return Ok(());
        }
    }
}

/// Odometer over `0..base` in every position.
pub fn next_tuple(t: &mut [usize], base: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

/// `Σ_{i ≤ d} C(m, i)`, saturating.
pub fn monomial_space_bound(m: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=d.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Incremental GF(2) row reduction with columns allocated on first sight.
/// Each stored row is keyed by its lowest set column, so a new row only
/// meets the rows whose pivots it contains.
#[derive(Default)]
pub struct RowReducer {
    columns: HashMap<Monomial, usize>,
    pivots: HashMap<usize, Vec<u64>>,
}

impl RowReducer {
    pub fn new() -> RowReducer {
        RowReducer::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `p` and reports whether it was independent of the rows so far.
    pub fn insert(&mut self, p: &Gf2Poly) -> bool {
        let mut row: Vec<u64> = Vec::new();
        for m in p.monomials() {
            let next = self.columns.len();
            let col = *self.columns.entry(m.clone()).or_insert(next);
            if row.len() <= col / 64 {
                row.resize(col / 64 + 1, 0);
            }
            row[col / 64] ^= 1u64 << (col % 64);
        }
        let mut word = 0;
        while word < row.len() {
            if row[word] == 0 {
                word += 1;
                continue;
            }
            let low = word * 64 + row[word].trailing_zeros() as usize;
            match self.pivots.get(&low) {
                Some(b) => {
                    if row.len() < b.len() {
                        row.resize(b.len(), 0);
                    }
                    for (x, y) in row.iter_mut().zip(b).skip(word) {
                        *x ^= y;
                    }
                }
                None => {
                    self.pivots.insert(low, row);
                    return true;
                }
            }
        }
        false
    }
}

/// Indices of a subset of `polys` spanning the same space, earlier indices
/// preferred. Every polynomial must have degree at most `d` and use only
/// variables below `m`; the result size is checked against the monomial
/// space bound.
pub fn extract_basis(polys: &[Gf2Poly], m: usize, d: usize) -> Result<Vec<usize>> {
    let mut reducer = RowReducer::new();
    let mut keep = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        if p.degree() > d {
            return Err(Error::DegreeExceeded {
                index: i,
                degree: p.degree(),
                bound: d,
            });
        }
        if let Some(&x) = p.variables().iter().next_back() {
            if x as usize >= m {
                return Err(Error::InvalidArgument(format!(
                    "polynomial #{i} uses variable {x} outside 0..{m}"
                )));
            }
        }
        if reducer.insert(p) {
            keep.push(i);
        }
    }
    let bound = monomial_space_bound(m, d);
    if keep.len() as u128 > bound {
        return Err(Error::Internal(format!(
            "basis of size {} exceeds the monomial bound {bound}",
            keep.len()
        )));
    }
    Ok(keep)
}

/// Some `x` with `rows · x = rhs` over GF(2), or `None` if inconsistent.
/// Free variables are set to 0.
pub fn solve_linear_system(rows: &[Vec<bool>], rhs: &[bool]) -> Option<Vec<bool>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let n = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == n), "ragged system");
    let words = (n + 1).div_ceil(64);
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut w = vec![0u64; words];
            for (j, _) in r.iter().enumerate().filter(|(_, &x)| x) {
                w[j / 64] |= 1 << (j % 64);
            }
            if b {
                w[n / 64] |= 1 << (n % 64);
            }
            w
        })
        .collect();
    let bit = |w: &[u64], j: usize| w[j / 64] >> (j % 64) & 1 == 1;

    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..n {
        let Some(p) = (top..mat.len()).find(|&r| bit(&mat[r], col)) else {
            continue;
        };
        mat.swap(top, p);
        let pivot_row = mat[top].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != top && bit(row, col) {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    if mat[top..].iter().any(|r| bit(r, n)) {
        return None;
    }
    let mut x = vec![false; n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = bit(&mat[r], n);
    }
    Some(x)
}
