//! Exact list-homomorphism oracle: backtracking with smallest-domain-first
//! branching and arc consistency over bit-set domains.

use std::collections::BTreeSet;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{HGraph, Instance};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// `LHOM_NODE_BUDGET` if set to a positive integer, else the default.
pub fn budget_from_env() -> u64 {
    std::env::var("LHOM_NODE_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// A total coloring `phi[v]` is a list homomorphism.
pub fn is_list_hom(inst: &Instance, hg: &HGraph, phi: &[usize]) -> bool {
    phi.len() == inst.vertex_count()
        && phi.iter().zip(&inst.lists).all(|(&c, l)| l.contains(c))
        && inst.graph.edges().all(|(u, v)| hg.adjacent(phi[u], phi[v]))
}

struct Search<'a> {
    inst: &'a Instance,
    hg: &'a HGraph,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, hg: &'a HGraph, budget: u64) -> Search<'a> {
        Search {
            inst,
            hg,
            budget,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        Ok(())
    }

    fn supp(&self, d: ColorSet) -> ColorSet {
        d.iter().fold(ColorSet::EMPTY, |acc, c| acc | self.hg.nbr(c))
    }

    /// Initial domains: lists, restricted to looped colors on looped vertices.
    fn initial_domains(&self) -> Vec<ColorSet> {
        let looped: ColorSet = (0..self.hg.h()).filter(|&c| self.hg.adjacent(c, c)).collect();
        (0..self.inst.vertex_count())
            .map(|v| {
                let l = self.inst.lists[v];
                if self.inst.graph.has_loop(v) {
                    l & looped
                } else {
                    l
                }
            })
            .collect()
    }

    /// Arc consistency from the vertices in `queue`; false on a wipe-out.
    fn propagate(&mut self, dom: &mut [ColorSet], mut queue: Vec<usize>) -> bool {
        let g = &self.inst.graph;
        let mut queued = vec![false; dom.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop() {
            queued[v] = false;
            let s = self.supp(dom[v]);
            for &u in g.neighbors(v) {
                if u == v {
                    continue;
                }
                let nd = dom[u] & s;
                if nd != dom[u] {
                    if nd.is_empty() {
                        return false;
                    }
                    dom[u] = nd;
                    if !queued[u] {
                        queued[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
        true
    }

    fn start(&mut self) -> Option<Vec<ColorSet>> {
        let mut dom = self.initial_domains();
        if dom.iter().any(|d| d.is_empty()) {
            return None;
        }
        let all = (0..dom.len()).collect();
        self.propagate(&mut dom, all).then_some(dom)
    }

    /// Assigns `v := c` and propagates.
    fn assign(&mut self, dom: &[ColorSet], v: usize, c: usize) -> Result<Option<Vec<ColorSet>>> {
        self.tick()?;
        let mut d = dom.to_vec();
        d[v] = ColorSet::singleton(c);
        Ok(self.propagate(&mut d, vec![v]).then_some(d))
    }

    fn solve(&mut self, dom: Vec<ColorSet>) -> Result<Option<Vec<usize>>> {
        let branch = (0..dom.len())
            .filter(|&v| dom[v].len() > 1)
            .min_by_key(|&v| dom[v].len());
        let Some(v) = branch else {
            return Ok(Some(dom.iter().map(|d| ColorSet::min(*d).unwrap()).collect()));
        };
        for c in dom[v].iter() {
            if let Some(d) = self.assign(&dom, v, c)? {
                if let Some(sol) = self.solve(d)? {
                    return Ok(Some(sol));
                }
            }
        }
        Ok(None)
    }
}

/// A list homomorphism if one exists.
pub fn decide(inst: &Instance, hg: &HGraph) -> Result<Option<Vec<usize>>> {
    decide_with_budget(inst, hg, DEFAULT_NODE_BUDGET)
}

pub fn decide_with_budget(inst: &Instance, hg: &HGraph, budget: u64) -> Result<Option<Vec<usize>>> {
    check_target(inst, hg)?;
    let mut s = Search::new(inst, hg, budget);
    match s.start() {
        Some(dom) => s.solve(dom),
        None => Ok(None),
    }
}

fn check_target(inst: &Instance, hg: &HGraph) -> Result<()> {
    if inst.h != hg.h() {
        return Err(Error::InvalidInstance(format!(
            "instance is over {} colors but the target has {}",
            inst.h,
            hg.h()
        )));
    }
    Ok(())
}

/// The set of restrictions of all list homomorphisms to `targets`.
pub fn enumerate_restricted(
    inst: &Instance,
    hg: &HGraph,
    targets: &[usize],
    budget: u64,
) -> Result<BTreeSet<Vec<usize>>> {
    check_target(inst, hg)?;
    let mut s = Search::new(inst, hg, budget);
    let mut out = BTreeSet::new();
    if let Some(dom) = s.start() {
        let mut prefix = Vec::with_capacity(targets.len());
        restrict(&mut s, dom, targets, &mut prefix, &mut out)?;
    }
    Ok(out)
}

fn restrict(
    s: &mut Search,
    dom: Vec<ColorSet>,
    targets: &[usize],
    prefix: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) -> Result<()> {
    let Some((&t, rest)) = targets.split_first() else {
        if s.solve(dom)?.is_some() {
            out.insert(prefix.clone());
        }
        return Ok(());
    };
    for c in dom[t].iter() {
        if let Some(d) = s.assign(&dom, t, c)? {
            prefix.push(c);
            restrict(s, d, rest, prefix, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// `phi` colors exactly the cover vertices (`None` elsewhere). Every other
/// vertex needs a color in its list adjacent to the images of all its
/// neighbors.
pub fn extendable(inst: &Instance, hg: &HGraph, phi: &[Option<usize>]) -> bool {
    (0..inst.vertex_count()).filter(|&v| phi[v].is_none()).all(|v| {
        let images: ColorSet = inst.graph.neighbors(v).iter().map(|&u| image(phi, u)).collect();
        hg.has_common_neighbor(images, inst.lists[v])
    })
}

fn image(phi: &[Option<usize>], u: usize) -> usize {
    phi[u].expect("neighbors of uncolored vertices must be colored")
}

/// As [`extendable`], but only sets of at most `c` neighbors are checked.
pub fn extendable_bounded(inst: &Instance, hg: &HGraph, phi: &[Option<usize>], c: usize) -> bool {
    fn subsets_ok(
        hg: &HGraph,
        imgs: &[usize],
        l: ColorSet,
        start: usize,
        cur: ColorSet,
        left: usize,
    ) -> bool {
        if !hg.has_common_neighbor(cur, l) {
            return false;
        }
        left == 0 || (start..imgs.len()).all(|i| subsets_ok(hg, imgs, l, i + 1, cur.with(imgs[i]), left - 1))
    }
    (0..inst.vertex_count()).filter(|&v| phi[v].is_none()).all(|v| {
        let imgs: Vec<usize> = inst.graph.neighbors(v).iter().map(|&u| image(phi, u)).collect();
        subsets_ok(hg, &imgs, inst.lists[v], 0, ColorSet::EMPTY, c)
    })
}

/// Enumerates list colorings of the cover that respect edges inside it and
/// accepts iff one extends. Needs `inst.cover`.
pub fn decide_two_phase(inst: &Instance, hg: &HGraph, budget: u64) -> Result<bool> {
    check_target(inst, hg)?;
    let cover = inst
        .cover
        .as_ref()
        .ok_or_else(|| Error::InvalidInstance("two-phase search needs a vertex cover".into()))?;
    let mut phi = vec![None; inst.vertex_count()];
    let mut nodes = 0u64;
    color_cover(inst, hg, cover, 0, &mut phi, &mut nodes, budget)
}

fn color_cover(
    inst: &Instance,
    hg: &HGraph,
    cover: &[usize],
    i: usize,
    phi: &mut Vec<Option<usize>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    if i == cover.len() {
        return Ok(extendable(inst, hg, phi));
    }
    let v = cover[i];
    for c in inst.lists[v].iter() {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        let ok = inst.graph.neighbors(v).iter().all(|&u| {
            if u == v {
                hg.adjacent(c, c)
            } else {
                phi[u].is_none_or(|cu| hg.adjacent(c, cu))
            }
        });
        if ok {
            phi[v] = Some(c);
            if color_cover(inst, hg, cover, i + 1, phi, nodes, budget)? {
                phi[v] = None;
                return Ok(true);
            }
            phi[v] = None;
        }
    }
    Ok(false)
}
