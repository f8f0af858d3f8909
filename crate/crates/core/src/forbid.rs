//! Forbidding polynomials: for cover vertices `v_1..v_r`, lists
//! `F = L_1 × .. × L_r`, a list `L` and a tuple `S0 ∈ F` without a common
//! neighbor in `L`, a GF(2) polynomial that is nonzero when `v_i` is colored
//! `S0[i]` for all `i` and zero whenever the colors of `v_1..v_r` have a
//! common neighbor in `L`. Other colorings are unconstrained.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::generators::{cyclic_dist, gen_cycle_power};
use crate::gf2::{
    next_tuple, poly_local, solve_linear_system, var_index, var_parts, ChoiceAssignment, Gf2Poly, Monomial,
};
use crate::graph::HGraph;
use crate::invariants::{separable_sets, Invariants};

pub const DEFAULT_CERTIFY_BUDGET: u64 = 10_000_000;

/// What the caller knows about how `H` was built. Special constructions are
/// only used when the hint matches `H` exactly (same labelling).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Family {
    #[default]
    Generic,
    Cycle6,
    CyclePower { k: usize, p: usize },
}

impl Family {
    /// `C_k^p`, with `C_6` mapped to its own construction.
    pub fn cycle_power(k: usize, p: usize) -> Family {
        if (k, p) == (6, 1) {
            Family::Cycle6
        } else {
            Family::CyclePower { k, p }
        }
    }

    /// Errors if the hint names a graph different from `hg`.
    pub fn validate(self, hg: &HGraph) -> Result<()> {
        let expected = match self {
            Family::Generic => return Ok(()),
            Family::Cycle6 => gen_cycle_power(6, 1),
            Family::CyclePower { k, p } => {
                if k < 3 || p < 1 {
                    return Err(Error::InvalidArgument(format!("no cycle power C_{k}^{p}")));
                }
                gen_cycle_power(k, p)
            }
        };
        if &expected != hg {
            return Err(Error::InvalidArgument(format!(
                "target graph is not the labelled graph named by {self:?}"
            )));
        }
        Ok(())
    }

    /// A special construction applies to `hg`.
    pub fn is_special(self, hg: &HGraph) -> bool {
        self.validate(hg).is_ok()
            && match self {
                Family::Generic => false,
                Family::Cycle6 => true,
                Family::CyclePower { k, p } => p >= 2 && k > 6 * p,
            }
    }

    pub fn method_name(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Cycle6 => "c6",
            Family::CyclePower { .. } => "cycle-power",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Monomial,
    C6,
    CyclePower,
    LinearSystem,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Monomial => "monomial",
            Method::C6 => "c6",
            Method::CyclePower => "cycle-power",
            Method::LinearSystem => "linear-system",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbidRequest {
    /// `L`.
    pub list: ColorSet,
    /// `L_1..L_r`.
    pub lists: Vec<ColorSet>,
    /// `v_1..v_r`, distinct cover vertices.
    pub verts: Vec<usize>,
    /// `S0`.
    pub tuple: Vec<usize>,
}

impl ForbidRequest {
    pub fn new(hg: &HGraph, list: ColorSet, lists: Vec<ColorSet>, verts: Vec<usize>, tuple: Vec<usize>) -> Result<ForbidRequest> {
        let req = ForbidRequest {
            list,
            lists,
            verts,
            tuple,
        };
        req.validate(hg)?;
        Ok(req)
    }

    pub fn validate(&self, hg: &HGraph) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        let r = self.tuple.len();
        if self.lists.len() != r || self.verts.len() != r {
            return bad(format!(
                "tuple of length {r} needs {r} lists and {r} vertices, got {} and {}",
                self.lists.len(),
                self.verts.len()
            ));
        }
        if self.verts.iter().collect::<HashSet<_>>().len() != r {
            return bad("forbidding vertices must be distinct".into());
        }
        let all = hg.vertices();
        if !self.list.is_subset(all) || self.lists.iter().any(|l| !l.is_subset(all)) {
            return bad("colors outside the target graph".into());
        }
        if !hg.is_incomparable_set(self.list) {
            return bad(format!("L = {:?} is not an incomparable set", self.list));
        }
        for (i, (&s, &l)) in self.tuple.iter().zip(&self.lists).enumerate() {
            if !hg.is_incomparable_set(l) {
                return bad(format!("L_{i} = {l:?} is not an incomparable set"));
            }
            if !l.contains(s) {
                return bad(format!("S0[{i}] = {s} is not in L_{i} = {l:?}"));
            }
        }
        if hg.has_common_neighbor(self.tuple_set(), self.list) {
            return bad(format!("{:?} has a common neighbor in L", self.tuple));
        }
        Ok(())
    }

    pub fn tuple_set(&self) -> ColorSet {
        self.tuple.iter().copied().collect()
    }

    /// Positions of a minimal subsequence of `S0` without a common neighbor
    /// in `L`, dropping the highest removable position first.
    pub fn minimal_positions(&self, hg: &HGraph) -> Vec<usize> {
        let mut keep: Vec<usize> = (0..self.tuple.len()).collect();
        for i in (0..self.tuple.len()).rev() {
            let rest: ColorSet = keep.iter().filter(|&&j| j != i).map(|&j| self.tuple[j]).collect();
            if !hg.has_common_neighbor(rest, self.list) {
                keep.retain(|&j| j != i);
            }
        }
        keep
    }

    /// The request on positions `pos` only.
    pub fn project(&self, pos: &[usize]) -> ForbidRequest {
        ForbidRequest {
            list: self.list,
            lists: pos.iter().map(|&i| self.lists[i]).collect(),
            verts: pos.iter().map(|&i| self.verts[i]).collect(),
            tuple: pos.iter().map(|&i| self.tuple[i]).collect(),
        }
    }

    /// The same request on vertices `0..r`.
    fn abstracted(&self) -> ForbidRequest {
        ForbidRequest {
            verts: (0..self.tuple.len()).collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbidResult {
    pub poly: Gf2Poly,
    pub degree: usize,
    pub method: Method,
}

impl ForbidResult {
    fn new(poly: Gf2Poly, method: Method) -> ForbidResult {
        ForbidResult {
            degree: poly.degree(),
            poly,
            method,
        }
    }
}

/// Checks the forbidding contract over every relevant choice assignment
/// of `v_1..v_r` colored from `F`: `S0` itself, and every tuple with a
/// common neighbor in `L`. At most `budget` tuples are evaluated.
pub fn certify_forbid(hg: &HGraph, req: &ForbidRequest, p: &Gf2Poly, budget: u64) -> Result<bool> {
    let h = hg.h();
    let r = req.tuple.len();
    let pos: HashMap<usize, usize> = req.verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for x in p.variables() {
        let (v, _) = var_parts(x, h);
        if !pos.contains_key(&v) {
            return Err(Error::Certification(format!(
                "polynomial uses vertex {v} outside the forbidding vertices"
            )));
        }
    }
    let eval = Evaluator::new(p, h, &req.verts, &pos);
    if !eval.at(&req.tuple) {
        return Ok(false);
    }
    let mut count = 0u64;
    let mut ok = true;
    // each tuple is visited once, under its smallest common neighbor in L
    for w in req.list.iter() {
        let doms: Vec<Vec<usize>> = req.lists.iter().map(|&l| (l & hg.nbr(w)).to_vec()).collect();
        if doms.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; r];
        let mut t = vec![0usize; r];
        loop {
            for i in 0..r {
                t[i] = doms[i][idx[i]];
            }
            let cn = hg.common_neighbors(t.iter().copied().collect(), req.list);
            if cn.min() == Some(w) {
                count += 1;
                if count > budget {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
                if eval.at(&t) {
                    ok = false;
                    break;
                }
            }
            if !next_mixed(&mut idx, &doms) {
                break;
            }
        }
        if !ok {
            break;
        }
    }
    Ok(ok)
}

fn next_mixed(idx: &mut [usize], doms: &[Vec<usize>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < doms[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Evaluates a polynomial on the choice assignment of a color tuple. A
/// monomial is 1 iff the tuple matches it on the positions it mentions, so
/// when `(h + 1)^r` is small the polynomial becomes a table indexed by a set
/// of positions and the colors there, and a tuple is the parity of its
/// `2^r` entries. Monomials with two colors on one vertex are always 0.
enum Evaluator<'a> {
    Table { h: usize, offsets: Vec<usize>, table: Vec<bool> },
    Generic { h: usize, p: &'a Gf2Poly, verts: &'a [usize] },
}

const TABLE_LIMIT: usize = 1 << 22;

impl<'a> Evaluator<'a> {
    fn new(p: &'a Gf2Poly, h: usize, verts: &'a [usize], pos: &HashMap<usize, usize>) -> Evaluator<'a> {
        let r = verts.len();
        let size = (0..r).try_fold(1usize, |acc, _| acc.checked_mul(h + 1).filter(|&x| x <= TABLE_LIMIT));
        let Some(_) = size else {
            return Evaluator::Generic { h, p, verts };
        };
        let mut offsets = Vec::with_capacity(1 << r);
        let mut total = 0;
        for sub in 0u32..1 << r {
            offsets.push(total);
            total += h.pow(sub.count_ones());
        }
        let mut table = vec![false; total];
        'monomials: for m in p.monomials() {
            let (mut sub, mut colors) = (0u32, [usize::MAX; 32]);
            for &x in m.vars() {
                let (v, c) = var_parts(x, h);
                let i = pos[&v];
                if sub >> i & 1 == 1 {
                    continue 'monomials;
                }
                sub |= 1 << i;
                colors[i] = c;
            }
            let idx = (0..r).filter(|&i| sub >> i & 1 == 1).fold(0, |acc, i| acc * h + colors[i]);
            let slot = &mut table[offsets[sub as usize] + idx];
            *slot = !*slot;
        }
        Evaluator::Table { h, offsets, table }
    }

    fn at(&self, t: &[usize]) -> bool {
        match self {
            Evaluator::Table { h, offsets, table } => {
                // index of a set = index without its highest position, times h, plus that color
                let mut stack = [0usize; 64];
                let mut heap = Vec::new();
                let idx: &mut [usize] = if offsets.len() <= 64 {
                    &mut stack[..offsets.len()]
                } else {
                    heap.resize(offsets.len(), 0);
                    &mut heap
                };
                let mut parity = table[offsets[0]];
                for sub in 1..offsets.len() {
                    let top = usize::BITS - 1 - sub.leading_zeros();
                    idx[sub] = idx[sub ^ 1 << top] * h + t[top as usize];
                    parity ^= table[offsets[sub] + idx[sub]];
                }
                parity
            }
            Evaluator::Generic { h, p, verts } => p
                .eval(&ChoiceAssignment::from_pairs(*h, verts, t))
                .expect("all forbidding vertices are assigned"),
        }
    }
}

/// `∏ y[v_i, S0[i]]`.
pub fn forbid_monomial(hg: &HGraph, req: &ForbidRequest) -> ForbidResult {
    let h = hg.h();
    let m = Monomial::new(
        req.verts
            .iter()
            .zip(&req.tuple)
            .map(|(&v, &s)| var_index(v, s, h))
            .collect(),
    );
    ForbidResult::new(Gf2Poly::from_monomial(m), Method::Monomial)
}

/// Degree-2 construction for `C_6`: a monomial for minimal tuples of
/// length at most 2, else the sum of the exactly-once polynomials over the
/// pairs of `{i, i+2, i+4}`.
pub fn forbid_c6(hg: &HGraph, req: &ForbidRequest) -> Result<ForbidResult> {
    Family::Cycle6.validate(hg)?;
    req.validate(hg)?;
    let pos = req.minimal_positions(hg);
    let sub = req.project(&pos);
    if pos.len() <= 2 {
        return Ok(forbid_monomial(hg, &sub));
    }
    let s = sub.tuple_set();
    let even: ColorSet = [0, 2, 4].into_iter().collect();
    let odd: ColorSet = [1, 3, 5].into_iter().collect();
    if pos.len() != 3 || (s != even && s != odd) {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not a minimal triple of the form {{i, i+2, i+4}}",
            sub.tuple
        )));
    }
    let mut poly = Gf2Poly::zero();
    for x in s.iter() {
        poly.add_assign(&poly_local(s.without(x), &sub.verts, hg.h())?);
    }
    Ok(ForbidResult::new(poly, Method::C6))
}

/// The index set `I` of the cycle-power construction, in lexicographic order.
pub fn cycle_power_index_set(k: usize, p: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let d = cyclic_dist(k, i, j);
            if (2..=2 * p).contains(&d) && d < cyclic_dist(k, i, (j + 1) % k) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `A_{i,j} = {i, j, j+1, .., j+p-2}` (indices mod `k`).
pub fn cycle_power_block(k: usize, p: usize, i: usize, j: usize) -> ColorSet {
    (0..p - 1).map(|t| (j + t) % k).collect::<ColorSet>().with(i)
}

/// Degree-`p` construction for `C_k^p` with `p >= 2` and `k > 6p`.
pub fn forbid_cycle_power(hg: &HGraph, req: &ForbidRequest, k: usize, p: usize) -> Result<ForbidResult> {
    Family::CyclePower { k, p }.validate(hg)?;
    if p < 2 || k <= 6 * p {
        return Err(Error::InvalidArgument(format!(
            "cycle-power construction needs p >= 2 and k > 6p, got k={k}, p={p}"
        )));
    }
    req.validate(hg)?;
    let pos = req.minimal_positions(hg);
    let sub = req.project(&pos);
    if pos.len() <= p {
        return Ok(forbid_monomial(hg, &sub));
    }
    if pos.len() != p + 1 {
        return Err(Error::Internal(format!(
            "minimal tuple of length {} in C_{k}^{p}, above p + 1",
            pos.len()
        )));
    }
    let mut poly = Gf2Poly::zero();
    for (i, j) in cycle_power_index_set(k, p) {
        poly.add_assign(&poly_local(cycle_power_block(k, p, i, j), &sub.verts, hg.h())?);
    }
    Ok(ForbidResult::new(poly, Method::CyclePower))
}

/// Sets of `r` distinct colors realizable as a tuple of `F` and having a
/// common neighbor in `l`.
fn constrained_sets(hg: &HGraph, lists: &[ColorSet], l: ColorSet) -> BTreeSet<ColorSet> {
    let r = lists.len();
    let union = lists.iter().fold(ColorSet::EMPTY, |a, &b| a | b);
    let mut out = BTreeSet::new();
    for w in l.iter() {
        let pool = (hg.nbr(w) & union).to_vec();
        if pool.len() < r {
            continue;
        }
        for_each_combination(&pool, r, &mut |t: &[usize]| {
            let set: ColorSet = t.iter().copied().collect();
            if !out.contains(&set) && realizable(t, lists) {
                out.insert(set);
            }
        });
    }
    out
}

/// Some permutation of `colors` lies in `lists[0] × .. × lists[r-1]`.
fn realizable(colors: &[usize], lists: &[ColorSet]) -> bool {
    fn go(colors: &[usize], lists: &[ColorSet], i: usize, used: u32) -> bool {
        i == lists.len()
            || colors
                .iter()
                .enumerate()
                .any(|(j, &c)| used >> j & 1 == 0 && lists[i].contains(c) && go(colors, lists, i + 1, used | 1 << j))
    }
    go(colors, lists, 0, 0)
}

pub fn for_each_combination(items: &[usize], size: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, size, 0, &mut Vec::with_capacity(size), f);
}

/// Solves for `X` over the shadows: `Σ_{S' ∈ δS} X[S'] = 0` for every
/// constrained set `S`, and `= 1` for `s0`. Returns the chosen shadow sets.
fn solve_shadow_system(constrained: &BTreeSet<ColorSet>, s0: ColorSet) -> Option<Vec<ColorSet>> {
    let shadow = |s: ColorSet| s.iter().map(move |x| s.without(x));
    let mut index: BTreeMap<ColorSet, usize> = BTreeMap::new();
    for &s in constrained.iter().chain(std::iter::once(&s0)) {
        for t in shadow(s) {
            let n = index.len();
            index.entry(t).or_insert(n);
        }
    }
    let n = index.len();
    let row = |s: ColorSet| {
        let mut r = vec![false; n];
        for t in shadow(s) {
            r[index[&t]] = true;
        }
        r
    };
    let mut rows: Vec<Vec<bool>> = constrained.iter().map(|&s| row(s)).collect();
    let mut rhs = vec![false; rows.len()];
    rows.push(row(s0));
    rhs.push(true);
    let x = solve_linear_system(&rows, &rhs)?;
    Some(index.into_iter().filter(|&(_, i)| x[i]).map(|(t, _)| t).collect())
}

/// Degree-`target` polynomial as a sum of exactly-once polynomials over
/// `target`-sets. `None` when the minimal tuple is longer than
/// `target + 1` or the linear system is inconsistent.
pub fn forbid_linear_system(hg: &HGraph, req: &ForbidRequest, target: usize) -> Result<Option<ForbidResult>> {
    req.validate(hg)?;
    let pos = req.minimal_positions(hg);
    let sub = req.project(&pos);
    if pos.len() <= target {
        return Ok(Some(forbid_monomial(hg, &sub)));
    }
    if pos.len() > target + 1 {
        return Ok(None);
    }
    let constrained = constrained_sets(hg, &sub.lists, sub.list);
    let Some(chosen) = solve_shadow_system(&constrained, sub.tuple_set()) else {
        return Ok(None);
    };
    let mut poly = Gf2Poly::zero();
    for t in chosen {
        poly.add_assign(&poly_local(t, &sub.verts, hg.h())?);
    }
    Ok(Some(ForbidResult::new(poly, Method::LinearSystem)))
}

/// Whether every forbidding request with a minimal tuple of length `c*`
/// admits a degree-`d*` solution of the linear system. For a minimal set
/// `T` every admissible `L` is dominated color by color by the reduced
/// list of `V \ CN(T)`, and every `L_i` lies in a maximal incomparable set
/// containing `t_i`; wider lists only add equations, so solvability for
/// those choices covers every narrower request.
pub fn linear_system_covers_all(hg: &HGraph, inv: &Invariants) -> Result<bool> {
    let (c, d) = (inv.c(), inv.d_star);
    if c != d + 1 {
        return Ok(c == d);
    }
    let all = hg.vertices();
    let maximal: Vec<Vec<ColorSet>> = (0..hg.h()).map(|v| maximal_incomparable_sets(hg, v)).collect();
    let sets: Vec<ColorSet> = separable_sets(hg, all, c).into_iter().filter(|s| s.len() == c).collect();
    Ok(sets.iter().all(|&t| {
        let l = hg.reduce_list(all - hg.common_nbrs(t));
        let choices: Vec<&[ColorSet]> = t.iter().map(|x| maximal[x].as_slice()).collect();
        let mut idx = vec![0usize; c];
        loop {
            let lists: Vec<ColorSet> = idx.iter().zip(&choices).map(|(&i, ch)| ch[i]).collect();
            if solve_shadow_system(&constrained_sets(hg, &lists, l), t).is_none() {
                return false;
            }
            let mut pos = 0;
            while pos < c {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == c {
                return true;
            }
        }
    }))
}

/// Maximal incomparable sets containing `v` (Bron-Kerbosch with pivoting on
/// the incomparability relation).
pub fn maximal_incomparable_sets(hg: &HGraph, v: usize) -> Vec<ColorSet> {
    let inc: Vec<ColorSet> = (0..hg.h())
        .map(|u| (0..hg.h()).filter(|&w| w != u && hg.incomparable(u, w)).collect())
        .collect();
    fn go(inc: &[ColorSet], r: ColorSet, mut p: ColorSet, mut x: ColorSet, out: &mut Vec<ColorSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = (p | x).iter().max_by_key(|&u| (inc[u] & p).len()).expect("nonempty");
        for u in (p - inc[pivot]).iter() {
            go(inc, r.with(u), p & inc[u], x & inc[u], out);
            p.remove(u);
            x.insert(u);
        }
    }
    let mut out = Vec::new();
    go(&inc, ColorSet::singleton(v), inc[v], ColorSet::EMPTY, &mut out);
    out.sort_unstable_by_key(|s| s.0);
    out
}

type TemplateKey = (Vec<ColorSet>, ColorSet, Vec<usize>);

/// Synthesizes certified forbidding polynomials for one target graph,
/// caching results for requests that differ only in the cover vertices.
pub struct Forbidder<'a> {
    hg: &'a HGraph,
    family: Family,
    c_star: usize,
    d_star: usize,
    budget: u64,
    cache: Mutex<HashMap<TemplateKey, Arc<ForbidResult>>>,
    /// Cycle-power polynomials on vertices `0..r` by `r`; they do not depend
    /// on the request otherwise.
    cycle_power: Mutex<HashMap<usize, Arc<ForbidResult>>>,
}

impl<'a> Forbidder<'a> {
    pub fn new(hg: &'a HGraph, family: Family) -> Result<Forbidder<'a>> {
        let inv = Invariants::compute(hg)?;
        Forbidder::with_invariants(hg, family, &inv)
    }

    pub fn with_invariants(hg: &'a HGraph, family: Family, inv: &Invariants) -> Result<Forbidder<'a>> {
        family.validate(hg)?;
        Ok(Forbidder {
            hg,
            family,
            c_star: inv.c(),
            d_star: inv.d_star,
            budget: DEFAULT_CERTIFY_BUDGET,
            cache: Mutex::new(HashMap::new()),
            cycle_power: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn c_star(&self) -> usize {
        self.c_star
    }

    pub fn d_star(&self) -> usize {
        self.d_star
    }

    /// Minimal subsequence, then the family construction, then the linear
    /// system at degree `d*`, then a monomial. The polynomial is certified
    /// on the minimal subsequence, which implies the full contract since
    /// it only involves the kept positions.
    pub fn forbid(&self, req: &ForbidRequest) -> Result<ForbidResult> {
        req.validate(self.hg)?;
        let pos = req.minimal_positions(self.hg);
        let sub = req.project(&pos);
        let key = (sub.lists.clone(), sub.list, sub.tuple.clone());
        let cached = self.cache.lock().unwrap().get(&key).cloned();
        let template = match cached {
            Some(t) => t,
            None => {
                let t = self.synthesize(&sub.abstracted())?;
                self.cache.lock().unwrap().insert(key, t.clone());
                t
            }
        };
        let h = self.hg.h();
        let poly = template.poly.rename(|x| {
            let (i, c) = var_parts(x, h);
            var_index(sub.verts[i], c, h)
        });
        Ok(ForbidResult::new(poly, template.method))
    }

    fn synthesize(&self, req: &ForbidRequest) -> Result<Arc<ForbidResult>> {
        let hg = self.hg;
        let r = req.tuple.len();
        let result = if r <= self.d_star {
            Arc::new(forbid_monomial(hg, req))
        } else {
            let special = match self.family {
                Family::Cycle6 if self.family.is_special(hg) => Some(Arc::new(forbid_c6(hg, req)?)),
                Family::CyclePower { k, p } if self.family.is_special(hg) => {
                    let cached = self.cycle_power.lock().unwrap().get(&r).cloned();
                    Some(match cached {
                        Some(res) => res,
                        None => {
                            let res = Arc::new(forbid_cycle_power(hg, req, k, p)?);
                            if res.method == Method::CyclePower {
                                self.cycle_power.lock().unwrap().insert(r, res.clone());
                            }
                            res
                        }
                    })
                }
                _ => None,
            };
            match special {
                Some(res) => res,
                None => Arc::new(
                    forbid_linear_system(hg, req, self.d_star)?.unwrap_or_else(|| forbid_monomial(hg, req)),
                ),
            }
        };
        if result.degree > self.c_star {
            return Err(Error::Internal(format!(
                "forbidding polynomial of degree {} above c* = {}",
                result.degree, self.c_star
            )));
        }
        if !certify_forbid(hg, req, &result.poly, self.budget)? {
            return Err(Error::Certification(format!(
                "{} polynomial fails to forbid {:?} with respect to L = {:?}",
                result.method.name(),
                req.tuple,
                req.list
            )));
        }
        Ok(result)
    }
}

/// One-shot [`Forbidder::forbid`].
pub fn forbid(hg: &HGraph, family: Family, req: &ForbidRequest) -> Result<ForbidResult> {
    Forbidder::new(hg, family)?.forbid(req)
}

/// A maximal incomparable set containing `s`, adding colors greedily in
/// increasing order.
pub fn greedy_incomparable_list(hg: &HGraph, s: usize) -> ColorSet {
    let mut l = ColorSet::singleton(s);
    for c in 0..hg.h() {
        if !l.contains(c) && l.iter().all(|x| hg.incomparable(x, c)) {
            l.insert(c);
        }
    }
    l
}

/// Evaluation on every coloring of `verts` from `lists`, for comparing
/// two polynomials as functions.
pub fn truth_table(p: &Gf2Poly, h: usize, verts: &[usize], lists: &[ColorSet]) -> Vec<bool> {
    let doms: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
    if doms.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut idx = vec![0usize; verts.len()];
    let mut out = Vec::new();
    loop {
        let t: Vec<usize> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        out.push(p.eval(&ChoiceAssignment::from_pairs(h, verts, &t)).expect("assigned"));
        if !next_mixed(&mut idx, &doms) {
            return out;
        }
    }
}

/// All colorings of `r` positions over `0..h`, for exhaustive checks.
pub fn all_tuples(h: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = Some(vec![0usize; r]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        cur = next_tuple(&mut next, h).then_some(next);
        Some(out)
    })
}
