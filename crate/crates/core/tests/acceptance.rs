//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Expected values for the invariant table are fixed constants;
//! everything else is checked against brute force or the solver.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lhom_core::colorset::{subsets_of, ColorSet};
use lhom_core::forbid::{certify_forbid, maximal_incomparable_sets, ForbidRequest, Forbidder};
use lhom_core::generators::{
    complete_graph, cycle, gen_cycle_power, gen_instance_with, gen_subdivided_star, random_hgraph, InstanceMode,
    InstanceParams, SplitMix64,
};
use lhom_core::gf2::{extract_basis, monomial_space_bound, poly_local, ChoiceAssignment, Gf2Poly, Monomial};
use lhom_core::invariants::{
    c_star_by_lists, is_minimal_without_cn, max_degree_property_holds, search_max_degree_regime, separable_sets,
};
use lhom_core::kernel::{check_kernel_shape, Kernelizer};
use lhom_core::reduction::{build_comp, build_neq, build_variable_gadget, certify_variable_gadget, reduce_sat, Cnf};
use lhom_core::solver::decide;
use lhom_core::{Family, HGraph, Instance, Invariants};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cn_in(hg: &HGraph, s: ColorSet, l: ColorSet) -> bool {
    l.iter().any(|a| s.iter().all(|x| hg.adjacent(a, x)))
}

struct Named {
    name: &'static str,
    hg: HGraph,
    family: Family,
}

fn corpus() -> Vec<Named> {
    let named = |name, hg, family| Named { name, hg, family };
    vec![
        named("C5", cycle(5), Family::Generic),
        named("C6", cycle(6), Family::Cycle6),
        named("C7", cycle(7), Family::Generic),
        named("C9", cycle(9), Family::Generic),
        named("C13^2", gen_cycle_power(13, 2), Family::cycle_power(13, 2)),
        named("C19^3", gen_cycle_power(19, 3), Family::cycle_power(19, 3)),
        named("star3", gen_subdivided_star(3), Family::Generic),
        named("K3", complete_graph(3), Family::Generic),
        named("K4", complete_graph(4), Family::Generic),
    ]
}

fn find<'a>(c: &'a [Named], name: &str) -> &'a Named {
    c.iter().find(|n| n.name == name).expect("corpus entry")
}

fn criterion_1() -> Outcome {
    let table: [(&str, HGraph, usize, Option<usize>, Option<usize>); 9] = [
        ("C5", cycle(5), 2, Some(2), None),
        ("C6", cycle(6), 3, Some(2), None),
        ("C7", cycle(7), 2, Some(2), None),
        ("C9", cycle(9), 2, Some(2), None),
        ("C13^2", gen_cycle_power(13, 2), 3, None, None),
        ("C19^3", gen_cycle_power(19, 3), 4, None, None),
        ("star3", gen_subdivided_star(3), 2, None, Some(3)),
        ("K4", complete_graph(4), 4, Some(3), None),
        ("K3", complete_graph(3), 3, None, None),
    ];
    let mut slowest = Duration::ZERO;
    let mut rows = Vec::new();
    for (name, hg, c, d, delta) in table {
        let t = Instant::now();
        let inv = Invariants::compute(&hg).map_err(|e| format!("{name}: {e}"))?;
        let el = t.elapsed();
        slowest = slowest.max(el);
        inv.c_star.verify(&hg).map_err(|e| format!("{name}: {e}"))?;
        if inv.d_star > 0 {
            inv.lbs.verify(&hg).map_err(|e| format!("{name}: {e}"))?;
        }
        ensure(inv.c() == c, || format!("{name}: c* = {}, expected {c}", inv.c()))?;
        if let Some(d) = d {
            ensure(inv.d_star == d, || format!("{name}: d* = {}, expected {d}", inv.d_star))?;
        }
        if let Some(delta) = delta {
            ensure(inv.delta == delta, || format!("{name}: max degree {}, expected {delta}", inv.delta))?;
        }
        ensure(el < Duration::from_secs(60), || format!("{name}: took {el:?}"))?;
        rows.push(format!("{name}=({},{})", inv.c(), inv.d_star));
    }
    Ok(format!("{}; slowest {slowest:.2?}", rows.join(" ")))
}

fn criterion_2() -> Outcome {
    let mut graphs: Vec<(String, HGraph)> = corpus().into_iter().map(|n| (n.name.to_string(), n.hg)).collect();
    let mut rng = SplitMix64::new(0x5eed_0002);
    for i in 0..200 {
        let h = 1 + i % 8;
        let p = 0.15 + 0.7 * rng.next_f64();
        let q = rng.next_f64();
        graphs.push((format!("random#{i}"), random_hgraph(h, p, q, &mut rng)));
    }
    for (name, hg) in &graphs {
        let inv = Invariants::compute(hg).map_err(|e| format!("{name}: {e}"))?;
        let (c, d, delta) = (inv.c(), inv.d_star, inv.delta);
        ensure(c <= d + 1 && d <= c, || format!("{name}: c* = {c}, d* = {d}"))?;
        ensure(c <= delta + 1, || format!("{name}: c* = {c} above max degree {delta} + 1"))?;
        let restricted = c_star_by_lists(hg, true);
        ensure(restricted.value == c, || {
            format!("{name}: c* over incomparable lists is {}, not {c}", restricted.value)
        })?;
        ensure(hg.is_incomparable_set(restricted.list), || format!("{name}: witness list is comparable"))?;
        if hg.h() <= 8 {
            let free = c_star_by_lists(hg, false);
            ensure(free.value == c, || format!("{name}: c* over all lists is {}, not {c}", free.value))?;
        }
        if d > 0 {
            inv.lbs.verify(hg).map_err(|e| format!("{name}: {e}"))?;
            ensure(hg.is_incomparable_set(inv.lbs.list), || {
                format!("{name}: d* witness needs a comparable list")
            })?;
        }
    }
    Ok(format!("{} graphs, zero violations", graphs.len()))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    let mut evals = 0u64;
    for h in 1..=7 {
        for s in subsets_of(ColorSet::full(h)).filter(|s| s.len() <= 3) {
            let r = s.len() + 1;
            let verts: Vec<usize> = (0..r).map(|i| 2 * i + 1).collect();
            let p = poly_local(s, &verts, h).map_err(|e| e.to_string())?;
            let mut colors = vec![0usize; r];
            loop {
                let a = ChoiceAssignment::from_pairs(h, &verts, &colors);
                let once = s.iter().all(|c| colors.iter().filter(|&&x| x == c).count() == 1);
                let got = p.eval(&a).map_err(|e| e.to_string())?;
                ensure(got == once, || format!("h={h} S={s:?} coloring {colors:?}: {got}"))?;
                evals += 1;
                if !lhom_core::gf2::next_tuple(&mut colors, h) {
                    break;
                }
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (S, h) cases, {evals} assignments"))
}

fn forbids_exhaustively(hg: &HGraph, req: &ForbidRequest, p: &Gf2Poly) -> bool {
    let doms: Vec<Vec<usize>> = req.lists.iter().map(|l| l.to_vec()).collect();
    let r = doms.len();
    let mut idx = vec![0usize; r];
    loop {
        let t: Vec<usize> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        let v = p.eval(&ChoiceAssignment::from_pairs(hg.h(), &req.verts, &t)).expect("assigned");
        if (t == req.tuple && !v) || (v && cn_in(hg, t.iter().copied().collect(), req.list)) {
            return false;
        }
        let mut i = 0;
        while i < r {
            idx[i] += 1;
            if idx[i] < doms[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == r {
            return true;
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every list tuple `(L_1..L_r)` of incomparable sets with `s_i ∈ L_i`.
fn all_list_tuples(hg: &HGraph, tuple: &[usize]) -> Vec<Vec<ColorSet>> {
    let per: Vec<Vec<ColorSet>> = tuple
        .iter()
        .map(|&s| {
            subsets_of(hg.vertices())
                .filter(|l| l.contains(s) && hg.is_incomparable_set(*l))
                .collect()
        })
        .collect();
    product(&per)
}

fn product(per: &[Vec<ColorSet>]) -> Vec<Vec<ColorSet>> {
    per.iter().fold(vec![Vec::new()], |acc, choices| {
        acc.iter()
            .flat_map(|pre| {
                choices.iter().map(move |&c| {
                    let mut v = pre.clone();
                    v.push(c);
                    v
                })
            })
            .collect()
    })
}

fn criterion_4() -> Outcome {
    let corpus = corpus();
    let mut summary = Vec::new();
    for name in ["C5", "C6", "C13^2", "C19^3", "K3", "K4"] {
        let n = find(&corpus, name);
        let started = Instant::now();
        let hg = &n.hg;
        let h = hg.h();
        let forbidder = Forbidder::new(hg, n.family).map_err(|e| e.to_string())?;
        let c = forbidder.c_star();
        let all = hg.vertices();
        let lists: BTreeSet<ColorSet> = if h <= 6 {
            subsets_of(all).filter(|l| !l.is_empty() && hg.is_incomparable_set(*l)).collect()
        } else {
            separable_sets(hg, all, c)
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|s| hg.reduce_list(all - hg.common_nbrs(s)))
                .collect()
        };
        let maximal: Vec<Vec<ColorSet>> = (0..h).map(|v| maximal_incomparable_sets(hg, v)).collect();
        let mut rng = SplitMix64::new(0x5eed_0004 + h as u64);
        let (mut requests, mut max_degree) = (0usize, 0usize);
        let mut methods: BTreeMap<&str, usize> = BTreeMap::new();
        for &l in &lists {
            for s in separable_sets(hg, l, c) {
                if s.is_empty() || !is_minimal_without_cn(hg, s, l) {
                    continue;
                }
                let base = s.to_vec();
                let orders = if h <= 6 {
                    permutations(&base)
                } else {
                    let mut rev = base.clone();
                    rev.reverse();
                    let mut rot = base.clone();
                    rot.rotate_left(1);
                    vec![base.clone(), rev, rot]
                };
                for tuple in orders {
                    let mut tuples = if h <= 4 {
                        all_list_tuples(hg, &tuple)
                    } else {
                        product(&tuple.iter().map(|&x| maximal[x].clone()).collect::<Vec<_>>())
                    };
                    if h > 4 && h <= 6 {
                        // a few arbitrary incomparable list tuples on top of the maximal ones
                        for _ in 0..4 {
                            tuples.push(
                                tuple
                                    .iter()
                                    .map(|&x| {
                                        let big = maximal[x][rng.below(maximal[x].len())];
                                        big.iter().filter(|&y| y == x || rng.chance(0.5)).collect()
                                    })
                                    .collect(),
                            );
                        }
                    }
                    for fl in tuples {
                        let verts: Vec<usize> = (0..tuple.len()).map(|i| 5 + 3 * i).collect();
                        let req = ForbidRequest::new(hg, l, fl, verts, tuple.clone()).map_err(|e| e.to_string())?;
                        let res = forbidder.forbid(&req).map_err(|e| format!("{name} {req:?}: {e}"))?;
                        let ok = if h <= 6 {
                            forbids_exhaustively(hg, &req, &res.poly)
                        } else {
                            certify_forbid(hg, &req, &res.poly, u64::MAX).map_err(|e| e.to_string())?
                        };
                        ensure(ok, || format!("{name}: polynomial fails for {req:?}"))?;
                        max_degree = max_degree.max(res.degree);
                        *methods.entry(res.method.name()).or_default() += 1;
                        requests += 1;
                    }
                }
            }
        }
        let required = match name {
            "C6" => Some(2),
            "C13^2" => Some(2),
            "C19^3" => Some(3),
            _ => None,
        };
        if let Some(req) = required {
            ensure(max_degree == req, || format!("{name}: maximum degree {max_degree}, required {req}"))?;
        }
        summary.push(format!(
            "{name}: {requests} requests, max degree {max_degree} {methods:?} [{:.1?}]",
            started.elapsed()
        ));
    }
    Ok(summary.join("; "))
}

/// Evaluation at an arbitrary 0/1 point (bit `i` of `x` is variable `i`).
fn eval_bits(p: &Gf2Poly, x: u64) -> bool {
    p.monomials()
        .filter(|m| m.vars().iter().all(|&v| x >> v & 1 == 1))
        .count()
        % 2
        == 1
}

fn criterion_5() -> Outcome {
    let mut rng = SplitMix64::new(0x5eed_0005);
    let mut exhaustive = 0;
    let mut sizes = Vec::new();
    for sys in 0..50 {
        let m = 4 + rng.below(17);
        let d = 1 + rng.below(3);
        let base = 3 + rng.below(20);
        let mut polys: Vec<Gf2Poly> = Vec::new();
        for _ in 0..base {
            let mut p = Gf2Poly::zero();
            for _ in 0..1 + rng.below(5) {
                let deg = rng.below(d + 1);
                let vars: Vec<u32> = (0..deg).map(|_| rng.below(m) as u32).collect();
                let mut vs = vars;
                vs.sort_unstable();
                vs.dedup();
                p.add_monomial(Monomial::new(vs));
            }
            polys.push(p);
        }
        // dependent combinations so the basis has something to drop
        for _ in 0..base {
            let a = &polys[rng.below(polys.len())];
            let b = &polys[rng.below(polys.len())];
            let s = a.add(b);
            polys.push(s);
        }
        let basis = extract_basis(&polys, m, d).map_err(|e| format!("system {sys}: {e}"))?;
        let bound = monomial_space_bound(m, d);
        ensure((basis.len() as u128) <= bound, || format!("system {sys}: basis {} > {bound}", basis.len()))?;
        sizes.push(basis.len());
        if m <= 12 {
            for x in 0..1u64 << m {
                let all_zero = polys.iter().all(|p| !eval_bits(p, x));
                let basis_zero = basis.iter().all(|&i| !eval_bits(&polys[i], x));
                ensure(all_zero == basis_zero, || format!("system {sys}: zero sets differ at {x:#b}"))?;
            }
            exhaustive += 1;
        }
    }
    Ok(format!(
        "50 systems, {exhaustive} checked exhaustively, basis sizes {}..{}",
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap()
    ))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let corpus = corpus();
    let mut lines = Vec::new();
    for name in ["C5", "C6", "K3", "K4", "C13^2"] {
        let n = find(&corpus, name);
        let hg = &n.hg;
        let kz = Kernelizer::new(hg, n.family).map_err(|e| e.to_string())?;
        let c = kz.invariants().c();
        let mut rng = SplitMix64::new(0x5eed_0006 ^ hg.h() as u64);
        let (mut yes, mut total) = (0, 0);
        for i in 0..250 {
            let mode = if i < 200 { InstanceMode::Random } else { InstanceMode::PlantedYes };
            let nv = 6 + rng.below(13);
            let k = 1 + rng.below(6);
            let params = InstanceParams {
                p_cover_edge: 0.1 + 0.4 * rng.next_f64(),
                p_cross_edge: 0.2 + 0.6 * rng.next_f64(),
                p_color: 0.3 + 0.6 * rng.next_f64(),
            };
            let inst = gen_instance_with(hg, nv, k, rng.next_u64(), mode, &params);
            let expect = decide(&inst, hg).map_err(|e| e.to_string())?.is_some();
            if mode == InstanceMode::PlantedYes {
                ensure(expect, || format!("{name} #{i}: planted instance is NO"))?;
            }
            for report in [kz.marking(&inst), kz.poly(&inst)] {
                let report = report.map_err(|e| format!("{name} #{i}: {e}"))?;
                check_kernel_shape(&inst, &report).map_err(|e| format!("{name} #{i}: {e}"))?;
                let got = decide(&report.kernel, hg).map_err(|e| e.to_string())?.is_some();
                ensure(got == expect, || {
                    format!("{name} #{i}: {} kernel says {got}, input says {expect}", report.method.name())
                })?;
            }
            let marking = kz.marking(&inst).map_err(|e| e.to_string())?;
            let kk = inst.cover.as_ref().map_or(0, Vec::len) as u128;
            let bound = kk + (1u128 << hg.h()) * kk.pow(c as u32);
            ensure(marking.trivial_no || marking.vertices_out as u128 <= bound, || {
                format!("{name} #{i}: marking kernel has {} vertices, bound {bound}", marking.vertices_out)
            })?;
            yes += expect as usize;
            total += 1;
        }
        lines.push(format!("{name} {yes}/{total} yes"));
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(600), || format!("took {el:?}"))?;
    Ok(format!("{}; {el:.1?}", lines.join(", ")))
}

/// All maps into the (two-element) lists, checked edge by edge; returns the
/// restrictions to `(u, v)`.
fn brute_restrictions(inst: &Instance, hg: &HGraph) -> BTreeSet<(usize, usize)> {
    let doms: Vec<Vec<usize>> = inst.lists.iter().map(|l| l.to_vec()).collect();
    let n = doms.len();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let phi: Vec<usize> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        if inst.graph.edges().all(|(a, b)| hg.adjacent(phi[a], phi[b])) {
            out.insert((phi[0], phi[1]));
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < doms[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

fn criterion_7() -> Outcome {
    let k4 = complete_graph(4);
    let inv = Invariants::compute(&k4).map_err(|e| e.to_string())?;
    let lbs = &inv.lbs;
    let d = lbs.order;
    ensure(d == 3, || format!("d*(K4) = {d}"))?;
    let (mut neq, mut comp) = (0, 0);
    for i in 0..d {
        let g = build_neq(&k4, lbs, i).map_err(|e| e.to_string())?;
        let (x, y) = (lbs.xs[i], lbs.xps[i]);
        let pair: ColorSet = [x, y].into_iter().collect();
        ensure(g.vertex_count() == 10, || format!("NEQ({i}) has {} vertices", g.vertex_count()))?;
        ensure(g.instance.lists[0] == pair && g.instance.lists[1] == pair, || format!("NEQ({i}) I1"))?;
        let got = brute_restrictions(&g.instance, &k4);
        ensure(got.contains(&(x, y)) && got.contains(&(y, x)), || format!("NEQ({i}) I2: {got:?}"))?;
        ensure(got.iter().all(|&(a, b)| a != b), || format!("NEQ({i}) I3: {got:?}"))?;
        neq += 1;
        for j in (0..d).filter(|&j| j != i) {
            let g = build_comp(&k4, lbs, i, j).map_err(|e| e.to_string())?;
            let (a, ap, b, bp) = (lbs.xs[i], lbs.xps[i], lbs.xs[j], lbs.xps[j]);
            ensure(g.vertex_count() == 10, || format!("Comp({i},{j}) has {} vertices", g.vertex_count()))?;
            ensure(
                g.instance.lists[0] == [a, ap].into_iter().collect::<ColorSet>()
                    && g.instance.lists[1] == [b, bp].into_iter().collect::<ColorSet>(),
                || format!("Comp({i},{j}) C1"),
            )?;
            let got = brute_restrictions(&g.instance, &k4);
            ensure(got.contains(&(a, b)) && got.contains(&(ap, bp)), || format!("Comp({i},{j}) C2: {got:?}"))?;
            ensure(!got.contains(&(a, bp)), || format!("Comp({i},{j}) C3: {got:?}"))?;
            ensure(!got.contains(&(ap, b)), || format!("Comp({i},{j}) C4: {got:?}"))?;
            comp += 1;
        }
    }
    let vg = build_variable_gadget(&k4, lbs).map_err(|e| e.to_string())?;
    let cert = certify_variable_gadget(&k4, &vg).map_err(|e| e.to_string())?;
    let expected: BTreeSet<Vec<usize>> = [vg.phi_false.clone(), vg.phi_true.clone()].into();
    let got: BTreeSet<Vec<usize>> = cert.restrictions.iter().cloned().collect();
    ensure(got == expected, || format!("variable gadget restrictions {got:?}"))?;
    Ok(format!(
        "{neq} NEQ and {comp} Comp gadgets with 10 vertices; variable gadget on {} vertices has 2 restrictions",
        vg.instance.vertex_count()
    ))
}

fn random_cnf(rng: &mut SplitMix64) -> Cnf {
    let vars = 1 + rng.below(6);
    let m = 1 + rng.below(4 * vars + 1);
    let clauses = (0..m)
        .map(|_| {
            let len = if rng.chance(0.8) { 3 } else { 1 + rng.below(2) };
            (0..len)
                .map(|_| {
                    let x = 1 + rng.below(vars) as i64;
                    if rng.chance(0.5) {
                        x
                    } else {
                        -x
                    }
                })
                .collect()
        })
        .collect();
    Cnf { vars, clauses }
}

fn criterion_8() -> Outcome {
    let k4 = complete_graph(4);
    let inv = Invariants::compute(&k4).map_err(|e| e.to_string())?;
    let mut rng = SplitMix64::new(0x5eed_0008);
    let mut sat = 0;
    for f in 0..20 {
        let cnf = random_cnf(&mut rng);
        let expect = (0..1u32 << cnf.vars).any(|m| {
            let a: Vec<bool> = (0..cnf.vars).map(|i| m >> i & 1 == 1).collect();
            cnf.satisfied_by(&a)
        });
        let inst = reduce_sat(&cnf, &k4, &inv.lbs).map_err(|e| e.to_string())?;
        let cover = inst.cover.as_ref().map_or(0, Vec::len);
        ensure(cover == 46 * cnf.vars, || format!("formula {f}: cover {cover} for {} variables", cnf.vars))?;
        ensure(lhom_core::graph::is_vertex_cover(&inst.graph, inst.cover.as_ref().unwrap()), || {
            format!("formula {f}: cover does not cover")
        })?;
        let got = decide(&inst, &k4).map_err(|e| e.to_string())?.is_some();
        ensure(got == expect, || format!("formula {f} {cnf:?}: satisfiable {expect}, instance {got}"))?;
        sat += expect as usize;
    }
    Ok(format!("20 formulas ({sat} satisfiable), cover = 46 per variable"))
}

/// The max-degree property restated from its definition.
fn max_degree_property(hg: &HGraph) -> bool {
    let delta = hg.max_degree();
    (0..hg.h()).filter(|&v| hg.degree(v) == delta).all(|v| {
        let nv = hg.nbr(v);
        nv.iter().any(|u| {
            (0..hg.h()).all(|w| {
                let nw = hg.nbr(w);
                !nv.without(u).iter().all(|x| nw.contains(x)) || nw.iter().all(|x| nv.contains(x))
            })
        })
    })
}

fn criterion_9() -> Outcome {
    let search = search_max_degree_regime(5, 7, 2000, 0x5eed_0009, usize::MAX).map_err(|e| e.to_string())?;
    let mut in_corpus = Vec::new();
    for n in corpus() {
        let inv = Invariants::compute(&n.hg).map_err(|e| e.to_string())?;
        if inv.in_max_degree_regime() {
            in_corpus.push(n.name);
            ensure(max_degree_property(&n.hg), || format!("{} violates the property", n.name))?;
        }
    }
    if search.found.is_empty() && in_corpus.is_empty() {
        return Ok(format!(
            "vacuous: no graph with c* = max degree = d* + 1 among {} graphs (all up to {} vertices, random up to {})",
            search.examined, search.exhaustive_up_to, search.max_h
        ));
    }
    let mut by_delta: BTreeMap<usize, usize> = BTreeMap::new();
    for hg in &search.found {
        ensure(max_degree_property(hg) && max_degree_property_holds(hg), || {
            format!("property fails on {:?}", hg.graph())
        })?;
        *by_delta.entry(hg.max_degree()).or_default() += 1;
    }
    Ok(format!(
        "property holds on all {} regime graphs found among {} (exhaustive up to {} vertices, random up to {}); by max degree {by_delta:?}; corpus members in regime {in_corpus:?}",
        search.found.len(),
        search.examined,
        search.exhaustive_up_to,
        search.max_h
    ))
}

/// Not a criterion: whether the degree-`d*` linear system solves every
/// request, on the corpus and on the regime graphs.
fn report_linear_system() -> String {
    let mut parts = Vec::new();
    for n in corpus() {
        let inv = Invariants::compute(&n.hg).expect("invariants");
        let ok = lhom_core::forbid::linear_system_covers_all(&n.hg, &inv).expect("linear system");
        parts.push(format!("{}={}", n.name, ok));
    }
    let search = search_max_degree_regime(4, 6, 300, 0x5eed_000a, usize::MAX).expect("search");
    let fails = search
        .found
        .iter()
        .filter(|hg| {
            let inv = Invariants::compute(hg).expect("invariants");
            !lhom_core::forbid::linear_system_covers_all(hg, &inv).expect("linear system")
        })
        .count();
    format!(
        "degree-d* linear system covers all requests: {}; regime graphs: {}/{} solved",
        parts.join(" "),
        search.found.len() - fails,
        search.found.len()
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("invariant table", criterion_1),
        ("sanity inequalities", criterion_2),
        ("exactly-once polynomials", criterion_3),
        ("forbidding certification", criterion_4),
        ("basis bound", criterion_5),
        ("kernel equivalence", criterion_6),
        ("gadgets over K4", criterion_7),
        ("SAT reduction", criterion_8),
        ("max-degree property", criterion_9),
    ];
    // optional criterion numbers on the command line select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let el = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{el:.1?}] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{el:.1?}] {detail}", i + 1);
            }
        }
    }
    if only.is_empty() {
        println!("report: {}", report_linear_system());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    if only.is_empty() {
        println!("all {} criteria passed", criteria.len());
    } else {
        println!("all selected criteria passed");
    }
}
