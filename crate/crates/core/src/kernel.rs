//! Kernels for list H-coloring parameterized by a vertex cover `X`: the
//! marking kernel with `O(k^{c*})` vertices and edges, and the polynomial
//! kernel that keeps one vertex per equality in a GF(2) basis of the
//! forbidding constraints.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::forbid::{certify_forbid, forbid_monomial, Family, ForbidRequest, Forbidder, DEFAULT_CERTIFY_BUDGET};
use crate::gf2::{monomial_space_bound, var_index, Gf2Poly, RowReducer};
use crate::graph::{HGraph, Instance};
use crate::invariants::{is_minimal_without_cn, Invariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMethod {
    Marking,
    Poly,
}

impl KernelMethod {
    pub fn name(self) -> &'static str {
        match self {
            KernelMethod::Marking => "marking",
            KernelMethod::Poly => "poly",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    #[serde(skip)]
    pub kernel: Instance,
    /// Input vertex of each kernel vertex.
    pub origin: Vec<usize>,
    pub method: KernelMethod,
    pub degree_used: usize,
    pub vertices_in: usize,
    pub edges_in: usize,
    pub vertices_out: usize,
    pub edges_out: usize,
    /// Size of the vertex cover the bounds are stated against.
    pub bound_k: usize,
    pub cover_approx_factor: u32,
    /// Kept vertices outside the cover.
    pub constraint_vertices: usize,
    /// Marking: `(X', L)` types seen. Poly: equalities kept in the basis.
    pub retained_constraints: usize,
    /// Poly only: equalities generated, duplicates included.
    pub equations_total: usize,
    /// Poly only: `k * h` variables.
    pub variable_count: usize,
    pub vertex_bound: u128,
    pub edge_bound: u128,
    pub bound_formula_ok: bool,
    /// The input had an empty list and the kernel is a single such vertex.
    pub trivial_no: bool,
    /// Poly only: how many kept equalities came from each construction.
    pub forbid_methods: BTreeMap<String, usize>,
}

fn pow_sat(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// Keeps `cover` plus `extra` vertices (both in input numbering) and
/// exactly `edges`.
fn assemble(
    inst: &Instance,
    cover: &[usize],
    extra: &[usize],
    edges: &[(usize, usize)],
) -> (Instance, Vec<usize>) {
    let mut keep: Vec<usize> = cover.iter().chain(extra).copied().collect();
    keep.sort_unstable();
    keep.dedup();
    let kernel = inst.subinstance(&keep, edges, Some(cover.to_vec()));
    (kernel, keep)
}

/// Edges of `G[X]`.
fn cover_edges(inst: &Instance, in_cover: &[bool]) -> Vec<(usize, usize)> {
    inst.graph.edges().filter(|&(u, v)| in_cover[u] && in_cover[v]).collect()
}

/// Sets of at most `c` elements of `items` (sorted), smallest first, then
/// lexicographically; the empty set is excluded.
fn small_subsets(items: &[usize], c: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=c.min(items.len()) {
        crate::forbid::for_each_combination(items, size, &mut |s| out.push(s.to_vec()));
    }
    out
}

/// Kernelization for one target graph; reuses invariants and synthesized
/// polynomials across instances.
pub struct Kernelizer<'a> {
    hg: &'a HGraph,
    inv: Invariants,
    forbidder: Forbidder<'a>,
}

impl<'a> Kernelizer<'a> {
    pub fn new(hg: &'a HGraph, family: Family) -> Result<Kernelizer<'a>> {
        let inv = Invariants::compute(hg)?;
        let forbidder = Forbidder::with_invariants(hg, family, &inv)?;
        Ok(Kernelizer { hg, inv, forbidder })
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    fn check(&self, inst: &Instance) -> Result<()> {
        inst.validate()?;
        if inst.h != self.hg.h() {
            return Err(Error::InvalidInstance(format!(
                "instance is over {} colors but the target has {}",
                inst.h,
                self.hg.h()
            )));
        }
        Ok(())
    }

    fn trivial_no(&self, inst: &Instance, method: KernelMethod, k: usize, factor: u32) -> Option<KernelReport> {
        let v = inst.lists.iter().position(|l| l.is_empty())?;
        let kernel = inst.subinstance(&[v], &[], Some(Vec::new()));
        let c = self.inv.c();
        let (vb, eb) = marking_bounds(self.hg.h(), k, c);
        Some(KernelReport {
            kernel,
            origin: vec![v],
            method,
            degree_used: 0,
            vertices_in: inst.vertex_count(),
            edges_in: inst.graph.edge_count(),
            vertices_out: 1,
            edges_out: 0,
            bound_k: k,
            cover_approx_factor: factor,
            constraint_vertices: 1,
            retained_constraints: 0,
            equations_total: 0,
            variable_count: k * self.hg.h(),
            vertex_bound: vb,
            edge_bound: eb,
            bound_formula_ok: 1 <= vb,
            trivial_no: true,
            forbid_methods: BTreeMap::new(),
        })
    }

    /// For every nonempty `X' ⊆ X` with `|X'| <= c*` and every list `L`,
    /// the lowest-index vertex outside `X` with list `L` adjacent to all of
    /// `X'` is kept together with its edges to `X'`.
    pub fn marking(&self, inst: &Instance) -> Result<KernelReport> {
        self.check(inst)?;
        let cert = inst.cover_certificate();
        let (cover, k) = (&cert.cover, cert.cover.len());
        if let Some(r) = self.trivial_no(inst, KernelMethod::Marking, k, cert.approx_factor) {
            return Ok(r);
        }
        let c = self.inv.c();
        let mut in_cover = vec![false; inst.vertex_count()];
        for &x in cover {
            in_cover[x] = true;
        }
        let mut edges = cover_edges(inst, &in_cover);
        let mut types: HashSet<(Vec<usize>, ColorSet)> = HashSet::new();
        let mut kept_edges: BTreeMap<usize, HashSet<usize>> = BTreeMap::new();
        for v in (0..inst.vertex_count()).filter(|&v| !in_cover[v]) {
            let nbrs = inst.graph.neighbors(v);
            for xs in small_subsets(nbrs, c) {
                if types.insert((xs.clone(), inst.lists[v])) {
                    kept_edges.entry(v).or_default().extend(xs);
                }
            }
        }
        for (&v, xs) in &kept_edges {
            edges.extend(xs.iter().map(|&x| (x.min(v), x.max(v))));
        }
        let extra: Vec<usize> = kept_edges.keys().copied().collect();
        let (kernel, origin) = assemble(inst, cover, &extra, &edges);
        let (vb, eb) = marking_bounds(self.hg.h(), k, c);
        let (vo, eo) = (kernel.vertex_count(), kernel.graph.edge_count());
        Ok(KernelReport {
            origin,
            method: KernelMethod::Marking,
            degree_used: c,
            vertices_in: inst.vertex_count(),
            edges_in: inst.graph.edge_count(),
            vertices_out: vo,
            edges_out: eo,
            bound_k: k,
            cover_approx_factor: cert.approx_factor,
            constraint_vertices: extra.len(),
            retained_constraints: types.len(),
            equations_total: 0,
            variable_count: 0,
            vertex_bound: vb,
            edge_bound: eb,
            bound_formula_ok: vo as u128 <= vb && eo as u128 <= eb,
            trivial_no: false,
            forbid_methods: BTreeMap::new(),
            kernel,
        })
    }

    pub fn poly(&self, inst: &Instance) -> Result<KernelReport> {
        self.poly_impl(inst, false)
    }

    /// The polynomial kernel with plain monomials of degree up to `c*`,
    /// for comparison with the marking kernel.
    pub fn poly_monomial(&self, inst: &Instance) -> Result<KernelReport> {
        self.poly_impl(inst, true)
    }

    /// Equalities: `y[v,x] = 0` for cover vertices `v` and colors `x`
    /// outside the reduced list, then for every `v` outside the cover,
    /// every set `U` of at most `c*` neighbors and every tuple `S` from the
    /// reduced lists of `U` that is a minimal set without a common neighbor
    /// in the reduced list of `v`, a polynomial forbidding `S` on `U`.
    /// Non-minimal tuples need no equality of their own: each contains a
    /// minimal one on a subset of `U`. Identical equalities are merged,
    /// keeping the first.
    fn poly_impl(&self, inst: &Instance, monomial_only: bool) -> Result<KernelReport> {
        self.check(inst)?;
        let hg = self.hg;
        let h = hg.h();
        let cert = inst.cover_certificate();
        let (cover, k) = (&cert.cover, cert.cover.len());
        let method = KernelMethod::Poly;
        if let Some(r) = self.trivial_no(inst, method, k, cert.approx_factor) {
            return Ok(r);
        }
        let reduced = inst.reduce_lists(hg);
        let c = self.inv.c();
        let n = inst.vertex_count();
        let mut in_cover = vec![false; n];
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in cover.iter().enumerate() {
            in_cover[x] = true;
            pos[x] = i;
        }

        let m = k * h;
        let mut reducer = RowReducer::new();
        let (mut total, mut d, mut rank) = (0usize, 0usize, 0usize);
        for (i, &x) in cover.iter().enumerate() {
            for col in (hg.vertices() - reduced.lists[x]).iter() {
                total += 1;
                d = d.max(1);
                rank += reducer.insert(&Gf2Poly::var(var_index(i, col, h))) as usize;
            }
        }

        // one job per distinct (U, L(v)): a later vertex with the same pair
        // only repeats equalities
        let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut seen: HashSet<(Vec<usize>, ColorSet)> = HashSet::new();
        for v in (0..n).filter(|&v| !in_cover[v]) {
            for u in small_subsets(reduced.graph.neighbors(v), c) {
                if seen.insert((u.clone(), reduced.lists[v])) {
                    jobs.push((v, u));
                }
            }
        }
        let mut kept: Vec<(usize, Vec<usize>, &'static str)> = Vec::new();
        for chunk in jobs.chunks(64) {
            let generated: Vec<Vec<(Gf2Poly, &'static str)>> = chunk
                .par_iter()
                .map(|(v, u)| self.constraints_of(&reduced, *v, u, &pos, monomial_only))
                .collect::<Result<_>>()?;
            for ((v, u), items) in chunk.iter().zip(generated) {
                for (p, name) in items {
                    total += 1;
                    d = d.max(p.degree());
                    if reducer.insert(&p) {
                        rank += 1;
                        kept.push((*v, u.clone(), name));
                    }
                }
            }
        }
        let b = monomial_space_bound(m, d);
        if rank as u128 > b {
            return Err(Error::Internal(format!("basis of size {rank} exceeds the monomial bound {b}")));
        }

        let mut edges = cover_edges(inst, &in_cover);
        let mut extra = Vec::new();
        let mut retained = 0;
        let mut methods: BTreeMap<String, usize> = BTreeMap::new();
        for (v, u, name) in &kept {
            retained += 1;
            *methods.entry(name.to_string()).or_default() += 1;
            extra.push(*v);
            edges.extend(u.iter().map(|&x| (x.min(*v), x.max(*v))));
        }
        edges.sort_unstable();
        edges.dedup();
        extra.sort_unstable();
        extra.dedup();
        let (kernel, origin) = assemble(inst, cover, &extra, &edges);

        let vb = (k as u128).saturating_add(b);
        let eb = pow_sat(k as u128, 2).saturating_add(b.saturating_mul(c as u128));
        let (vo, eo) = (kernel.vertex_count(), kernel.graph.edge_count());
        Ok(KernelReport {
            origin,
            method,
            degree_used: d,
            vertices_in: n,
            edges_in: inst.graph.edge_count(),
            vertices_out: vo,
            edges_out: eo,
            bound_k: k,
            cover_approx_factor: cert.approx_factor,
            constraint_vertices: extra.len(),
            retained_constraints: retained,
            equations_total: total,
            variable_count: m,
            vertex_bound: vb,
            edge_bound: eb,
            bound_formula_ok: vo as u128 <= vb && eo as u128 <= eb,
            trivial_no: false,
            forbid_methods: methods,
            kernel,
        })
    }

    fn constraints_of(
        &self,
        reduced: &Instance,
        v: usize,
        u: &[usize],
        pos: &[usize],
        monomial_only: bool,
    ) -> Result<Vec<(Gf2Poly, &'static str)>> {
        let hg = self.hg;
        let lv = reduced.lists[v];
        let mut out = Vec::new();
        let lists: Vec<ColorSet> = u.iter().map(|&x| reduced.lists[x]).collect();
        let doms: Vec<Vec<usize>> = lists.iter().map(|l| l.to_vec()).collect();
        if doms.iter().any(Vec::is_empty) {
            return Ok(Vec::new());
        }
        let verts: Vec<usize> = u.iter().map(|&x| pos[x]).collect();
        let mut idx = vec![0usize; u.len()];
        loop {
            let t: Vec<usize> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
            let s: ColorSet = t.iter().copied().collect();
            if s.len() == t.len() && is_minimal_without_cn(hg, s, lv) {
                let req = ForbidRequest {
                    list: lv,
                    lists: lists.clone(),
                    verts: verts.clone(),
                    tuple: t,
                };
                let res = if monomial_only {
                    let res = forbid_monomial(hg, &req);
                    if !certify_forbid(hg, &req, &res.poly, DEFAULT_CERTIFY_BUDGET)? {
                        return Err(Error::Certification("monomial fails to forbid its tuple".into()));
                    }
                    res
                } else {
                    self.forbidder.forbid(&req)?
                };
                out.push((res.poly, res.method.name()));
            }
            if !advance(&mut idx, &doms) {
                break;
            }
        }
        Ok(out)
    }
}

fn advance(idx: &mut [usize], doms: &[Vec<usize>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < doms[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// `k + 2^h k^c` vertices and `k^2 + c 2^h k^c` edges.
pub fn marking_bounds(h: usize, k: usize, c: usize) -> (u128, u128) {
    let t = pow_sat(2, h).saturating_mul(pow_sat(k as u128, c));
    (
        (k as u128).saturating_add(t),
        pow_sat(k as u128, 2).saturating_add(t.saturating_mul(c as u128)),
    )
}

pub fn kernel_marking(inst: &Instance, hg: &HGraph) -> Result<KernelReport> {
    Kernelizer::new(hg, Family::Generic)?.marking(inst)
}

pub fn kernel_poly(inst: &Instance, hg: &HGraph, family: Family) -> Result<KernelReport> {
    Kernelizer::new(hg, family)?.poly(inst)
}

/// The kernel is an edge subgraph of the input on a vertex subset, with
/// the same lists and with all of `G[X]`.
pub fn check_kernel_shape(inst: &Instance, report: &KernelReport) -> Result<()> {
    let bad = |m: &str| Err(Error::Internal(format!("malformed kernel: {m}")));
    let kern = &report.kernel;
    let origin = &report.origin;
    if origin.len() != kern.vertex_count() || origin.windows(2).any(|w| w[0] >= w[1]) {
        return bad("origin map is not increasing");
    }
    for (i, &o) in origin.iter().enumerate() {
        if kern.lists[i] != inst.lists[o] {
            return bad("lists changed");
        }
    }
    for (a, b) in kern.graph.edges() {
        if !inst.graph.has_edge(origin[a], origin[b]) {
            return bad("edge not present in the input");
        }
    }
    if report.trivial_no {
        return Ok(());
    }
    let index: HashMap<usize, usize> = origin.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let cover = inst.cover_certificate().cover;
    for &x in &cover {
        if !index.contains_key(&x) {
            return bad("cover vertex dropped");
        }
    }
    let cover_set: HashSet<usize> = cover.iter().copied().collect();
    for (u, v) in inst.graph.edges() {
        if cover_set.contains(&u) && cover_set.contains(&v) && !kern.graph.has_edge(index[&u], index[&v]) {
            return bad("edge inside the cover dropped");
        }
    }
    Ok(())
}
