//! The invariants `c*(H)` and `d*(H)` with witnesses, plus the walk witness
//! for non-bi-arc graphs and the strategy classification built on them.
//!
//! Both searches rest on one observation: for a fixed `S`, the best list is
//! `L = V(H) \ CN(S)`, the largest list in which `S` has no common neighbor,
//! since every other requirement is monotone in `L`. So `S` is a minimal set
//! without a common neighbor for *some* `L` iff every `s ∈ S` has a private
//! witness: a vertex adjacent to all of `S - s` but not to `s`. That
//! property is inherited by subsets, so the candidates can be grown by a
//! pruned depth-first search instead of enumerating all `4^h` pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::forbid::{self, Family};
use crate::graph::HGraph;

/// A pair `(L, S)` realizing `c*(H) = |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CStarWitness {
    pub value: usize,
    pub list: ColorSet,
    pub set: ColorSet,
}

impl CStarWitness {
    pub fn verify(&self, hg: &HGraph) -> Result<()> {
        if self.set.len() != self.value {
            return Err(Error::Internal("c* witness has the wrong size".into()));
        }
        if !is_minimal_without_cn(hg, self.set, self.list) {
            return Err(Error::Internal(format!(
                "{:?} is not a minimal set without a common neighbor in {:?}",
                self.set, self.list
            )));
        }
        Ok(())
    }
}

/// `(L, x_1..x_d, x'_1..x'_d)` as in the definition of `d*(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundStructure {
    pub order: usize,
    pub list: ColorSet,
    pub xs: Vec<usize>,
    pub xps: Vec<usize>,
}

impl LowerBoundStructure {
    /// The set obtained by priming the positions in `mask`.
    pub fn pattern(&self, mask: u64) -> ColorSet {
        (0..self.order)
            .map(|i| if mask >> i & 1 == 1 { self.xps[i] } else { self.xs[i] })
            .collect()
    }

    pub fn verify(&self, hg: &HGraph) -> Result<()> {
        let d = self.order;
        let bad = |msg: String| Err(Error::Internal(format!("invalid lower bound structure: {msg}")));
        if self.xs.len() != d || self.xps.len() != d {
            return bad("tuple lengths differ from the order".into());
        }
        let xs: ColorSet = self.xs.iter().copied().collect();
        if xs.len() != d {
            return bad("x_i are not distinct".into());
        }
        for i in 0..d {
            if !hg.incomparable(self.xs[i], self.xps[i]) {
                return bad(format!("x_{i} and x'_{i} are comparable"));
            }
        }
        if hg.has_common_neighbor(xs, self.list) {
            return bad("x_1..x_d have a common neighbor in L".into());
        }
        for mask in 1..(1u64 << d) {
            if !hg.has_common_neighbor(self.pattern(mask), self.list) {
                return bad(format!("replacement pattern {mask:#b} has no common neighbor"));
            }
        }
        Ok(())
    }

    /// The same structure with positions reordered: position `i` of the
    /// result is position `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> LowerBoundStructure {
        LowerBoundStructure {
            order: self.order,
            list: self.list,
            xs: perm.iter().map(|&i| self.xs[i]).collect(),
            xps: perm.iter().map(|&i| self.xps[i]).collect(),
        }
    }
}

/// Vertices `v1..v5` forming a walk as in the necessary condition for a
/// graph not to be bi-arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonBiArcWitness {
    pub walk: [usize; 5],
}

pub fn is_minimal_without_cn(hg: &HGraph, s: ColorSet, l: ColorSet) -> bool {
    !hg.has_common_neighbor(s, l) && s.iter().all(|x| hg.has_common_neighbor(s.without(x), l))
}

/// `s` has a private witness (inside `l`) for each of its elements.
fn separable_in(hg: &HGraph, s: ColorSet, l: ColorSet) -> bool {
    s.iter()
        .all(|x| !((hg.common_nbrs(s.without(x)) - hg.nbr(x)) & l).is_empty())
}

/// All sets `S` that are minimal without a common neighbor in some subset of
/// `l`, in lexicographic order of their sorted elements, with `|S| <= max_size`.
pub fn separable_sets(hg: &HGraph, l: ColorSet, max_size: usize) -> Vec<ColorSet> {
    fn grow(hg: &HGraph, l: ColorSet, cur: ColorSet, next: usize, max: usize, out: &mut Vec<ColorSet>) {
        out.push(cur);
        if cur.len() == max {
            return;
        }
        for t in next..hg.h() {
            let cand = cur.with(t);
            if separable_in(hg, cand, l) {
                grow(hg, l, cand, t + 1, max, out);
            }
        }
    }
    let mut out = Vec::new();
    grow(hg, l, ColorSet::EMPTY, 0, max_size, &mut out);
    out
}

/// `c*(H)` with the lexicographically least witness set of maximum size and
/// `L = V(H) \ CN(S)`.
pub fn compute_c_star(hg: &HGraph) -> CStarWitness {
    let all = hg.vertices();
    let sets = separable_sets(hg, all, hg.h());
    let best = sets
        .iter()
        .copied()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| lex_cmp(*b, *a)))
        .expect("the empty set is always separable");
    CStarWitness {
        value: best.len(),
        list: all - hg.common_nbrs(best),
        set: best,
    }
}

fn lex_cmp(a: ColorSet, b: ColorSet) -> std::cmp::Ordering {
    a.to_vec().cmp(&b.to_vec())
}

/// `c*(H)` by enumerating the list `L` explicitly, optionally only over
/// incomparable lists. Slower than [`compute_c_star`]; it exists to check
/// that the restriction to incomparable lists is harmless.
pub fn c_star_by_lists(hg: &HGraph, incomparable_only: bool) -> CStarWitness {
    let empty = CStarWitness {
        value: 0,
        list: ColorSet::EMPTY,
        set: ColorSet::EMPTY,
    };
    (0..1u64 << hg.h())
        .into_par_iter()
        .map(ColorSet)
        .filter(|&l| !incomparable_only || hg.is_incomparable_set(l))
        .filter_map(|l| {
            let s = separable_sets(hg, l, hg.h())
                .into_iter()
                .filter(|&s| is_minimal_without_cn(hg, s, l))
                .max_by_key(|s| s.len())?;
            Some(CStarWitness {
                value: s.len(),
                list: l,
                set: s,
            })
        })
        .reduce(
            || empty.clone(),
            |a, b| {
                let key = |w: &CStarWitness| (w.value, std::cmp::Reverse(w.list.0));
                if key(&b) > key(&a) {
                    b
                } else {
                    a
                }
            },
        )
}

/// Completes `xs` (sorted, distinct) to a lower bound structure over list
/// `l`, choosing the lexicographically least primed tuple.
pub fn complete_lbs(hg: &HGraph, xs: &[usize], l: ColorSet) -> Option<Vec<usize>> {
    let d = xs.len();
    let xs_set: ColorSet = xs.iter().copied().collect();
    if xs_set.len() != d || hg.has_common_neighbor(xs_set, l) {
        return None;
    }
    // single-replacement patterns already cut the candidates down
    let cands: Vec<Vec<usize>> = (0..d)
        .map(|i| {
            let rest = xs_set.without(xs[i]);
            (0..hg.h())
                .filter(|&y| hg.incomparable(xs[i], y) && hg.has_common_neighbor(rest.with(y), l))
                .collect()
        })
        .collect();
    if cands.iter().any(|c| c.is_empty()) {
        return None;
    }

    fn assign(
        hg: &HGraph,
        xs: &[usize],
        l: ColorSet,
        cands: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        let i = chosen.len();
        if i == xs.len() {
            return true;
        }
        for &y in &cands[i] {
            chosen.push(y);
            // patterns whose highest primed position is i
            let ok = (0..(1u64 << i)).all(|low| {
                let s: ColorSet = (0..xs.len())
                    .map(|j| {
                        if j == i || (j < i && low >> j & 1 == 1) {
                            chosen[j]
                        } else {
                            xs[j]
                        }
                    })
                    .collect();
                hg.has_common_neighbor(s, l)
            });
            if ok && assign(hg, xs, l, cands, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let mut chosen = Vec::with_capacity(d);
    assign(hg, xs, l, &cands, &mut chosen).then_some(chosen)
}

/// A lower bound structure of order exactly `d`, or `None` if `H` has none.
/// The list of the result is incomparable.
pub fn find_lbs(hg: &HGraph, d: usize) -> Option<LowerBoundStructure> {
    assert!(d >= 1, "order must be positive");
    let all = hg.vertices();
    // x_1..x_d is itself a minimal set without a common neighbor in L
    let cands: Vec<ColorSet> = separable_sets(hg, all, d)
        .into_iter()
        .filter(|s| s.len() == d)
        .collect();
    cands.par_iter().find_map_first(|&s| {
        let xs = s.to_vec();
        let widest = all - hg.common_nbrs(s);
        let xps = complete_lbs(hg, &xs, widest)?;
        Some(LowerBoundStructure {
            order: d,
            list: hg.reduce_list(widest),
            xs,
            xps,
        })
    })
}

fn trivial_lbs() -> LowerBoundStructure {
    LowerBoundStructure {
        order: 0,
        list: ColorSet::EMPTY,
        xs: Vec::new(),
        xps: Vec::new(),
    }
}

/// `d*(H)`, trying only `d = c*` and `d = c* - 1` since `c* - 1 <= d* <= c*`.
pub fn compute_d_star_with(hg: &HGraph, c_star: usize) -> Result<(usize, LowerBoundStructure)> {
    for d in [c_star, c_star.saturating_sub(1)] {
        if d == 0 {
            return Ok((0, trivial_lbs()));
        }
        if let Some(lbs) = find_lbs(hg, d) {
            return Ok((d, lbs));
        }
    }
    Err(Error::Internal(format!(
        "no lower bound structure of order {c_star} or {}",
        c_star - 1
    )))
}

pub fn compute_d_star(hg: &HGraph) -> Result<(usize, LowerBoundStructure)> {
    compute_d_star_with(hg, compute_c_star(hg).value)
}

/// Exhaustive search for the walk `v1..v5`.
pub fn find_non_bi_arc_witness(hg: &HGraph) -> Option<NonBiArcWitness> {
    let h = hg.h();
    for v1 in 0..h {
        for v2 in hg.nbr(v1).iter() {
            for v3 in hg.nbr(v2).iter().filter(|&v3| hg.incomparable(v1, v3)) {
                for v4 in (hg.nbr(v3) - hg.nbr(v1)).iter() {
                    let ok5 = hg.nbr(v4) - hg.nbr(v2);
                    if let Some(v5) = ok5.iter().find(|&v5| hg.incomparable(v3, v5)) {
                        return Some(NonBiArcWitness {
                            walk: [v1, v2, v3, v4, v5],
                        });
                    }
                }
            }
        }
    }
    None
}

/// For every maximum-degree `v` there is `u ∈ N(v)` such that any `v'` with
/// `N(v) - u ⊆ N(v')` has `N(v') ⊆ N(v)`.
pub fn max_degree_property_holds(hg: &HGraph) -> bool {
    let delta = hg.max_degree();
    (0..hg.h()).filter(|&v| hg.degree(v) == delta).all(|v| {
        let s = hg.nbr(v);
        s.iter().any(|u| {
            (0..hg.h()).all(|w| !s.without(u).is_subset(hg.nbr(w)) || hg.nbr(w).is_subset(s))
        })
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub c_star: CStarWitness,
    pub d_star: usize,
    pub lbs: LowerBoundStructure,
    pub delta: usize,
}

impl Invariants {
    pub fn compute(hg: &HGraph) -> Result<Invariants> {
        let c_star = compute_c_star(hg);
        let (d_star, lbs) = compute_d_star_with(hg, c_star.value)?;
        Ok(Invariants {
            c_star,
            d_star,
            lbs,
            delta: hg.max_degree(),
        })
    }

    pub fn c(&self) -> usize {
        self.c_star.value
    }

    /// `d* + 1 = c* = Δ`, where a degree-`d*` forbidding polynomial is
    /// guaranteed to come out of the linear system.
    pub fn in_max_degree_regime(&self) -> bool {
        self.c() == self.delta && self.d_star + 1 == self.c()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub c_star: usize,
    pub d_star: usize,
    pub delta: usize,
    pub c_equals_d: bool,
    /// `c* >= Δ`: the bounded-degree regime.
    pub c_at_least_delta: bool,
    pub regime: &'static str,
    /// Every forbidding request of size `c*` admits a degree-`d*` polynomial.
    pub degree_d_synthesis: bool,
    pub synthesis_method: &'static str,
    pub recommended_degree: usize,
    pub lower_bound_exponent: usize,
    pub marking_exponent: usize,
}

pub fn classify(hg: &HGraph, family: Family) -> Result<Classification> {
    let inv = Invariants::compute(hg)?;
    classify_with(hg, family, &inv)
}

pub fn classify_with(hg: &HGraph, family: Family, inv: &Invariants) -> Result<Classification> {
    let (c, d, delta) = (inv.c(), inv.d_star, inv.delta);
    let (synth, method) = if c == d {
        (true, "marking")
    } else if family.is_special(hg) {
        (true, family.method_name())
    } else if forbid::linear_system_covers_all(hg, inv)? {
        (true, "linear-system")
    } else {
        (false, "monomial")
    };
    let regime = if c == d {
        "tight-marking"
    } else if c == delta + 1 {
        "c-equals-delta-plus-1"
    } else if c == delta {
        "c-equals-delta"
    } else {
        "c-below-delta"
    };
    Ok(Classification {
        c_star: c,
        d_star: d,
        delta,
        c_equals_d: c == d,
        c_at_least_delta: c >= delta,
        regime,
        degree_d_synthesis: synth,
        synthesis_method: method,
        recommended_degree: if synth { d } else { c },
        lower_bound_exponent: d,
        marking_exponent: c,
    })
}

/// Outcome of looking for targets with `c* = Δ = d* + 1`.
#[derive(Clone, Debug)]
pub struct RegimeSearch {
    /// All graphs (loops allowed) on up to this many vertices were tried.
    pub exhaustive_up_to: usize,
    /// Random graphs were tried on up to this many vertices.
    pub max_h: usize,
    pub examined: usize,
    /// Found graphs, smallest `h` first, at most `keep` of them.
    pub found: Vec<HGraph>,
    pub found_total: usize,
}

fn in_regime(hg: &HGraph) -> Result<bool> {
    let delta = hg.max_degree();
    let c = compute_c_star(hg).value;
    if c != delta || c == 0 {
        return Ok(false);
    }
    Ok(compute_d_star_with(hg, c)?.0 + 1 == c)
}

fn graph_from_mask(h: usize, pairs: &[(usize, usize)], mask: u64) -> HGraph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    HGraph::from_edges(h, &edges).expect("valid graph")
}

/// Every labelled graph with loops on `1..=exhaustive_up_to` vertices, then
/// `samples_per_h` random graphs for each larger `h <= max_h`.
pub fn search_max_degree_regime(
    exhaustive_up_to: usize,
    max_h: usize,
    samples_per_h: usize,
    seed: u64,
    keep: usize,
) -> Result<RegimeSearch> {
    let mut examined = 0;
    let mut found = Vec::new();
    let mut found_total = 0;
    for h in 1..=exhaustive_up_to.min(max_h) {
        let pairs: Vec<(usize, usize)> = (0..h).flat_map(|u| (u..h).map(move |v| (u, v))).collect();
        let hits: Vec<u64> = (0..1u64 << pairs.len())
            .into_par_iter()
            .filter_map(|m| match in_regime(&graph_from_mask(h, &pairs, m)) {
                Ok(true) => Some(Ok(m)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<Vec<u64>>>()?;
        examined += 1usize << pairs.len();
        found_total += hits.len();
        found.extend(hits.iter().take(keep.saturating_sub(found.len())).map(|&m| graph_from_mask(h, &pairs, m)));
    }
    let mut rng = crate::generators::SplitMix64::new(seed);
    for h in exhaustive_up_to + 1..=max_h {
        let graphs: Vec<HGraph> = (0..samples_per_h)
            .map(|_| {
                let p = 0.2 + 0.6 * rng.next_f64();
                let q = rng.next_f64();
                crate::generators::random_hgraph(h, p, q, &mut rng)
            })
            .collect();
        let flags = graphs.par_iter().map(in_regime).collect::<Result<Vec<bool>>>()?;
        examined += graphs.len();
        for (g, f) in graphs.into_iter().zip(flags) {
            if f {
                found_total += 1;
                if found.len() < keep {
                    found.push(g);
                }
            }
        }
    }
    Ok(RegimeSearch {
        exhaustive_up_to,
        max_h,
        examined,
        found,
        found_total,
    })
}
