//! From a lower bound structure of order `d >= 3`: inequality and
//! compatibility gadgets, variable gadgets built from them, and the
//! reduction from d-SAT with a vertex cover linear in the number of
//! variables.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, HGraph, Instance};
use crate::invariants::LowerBoundStructure;
use crate::solver::{enumerate_restricted, DEFAULT_NODE_BUDGET};

/// CNF over variables `1..=vars`; a literal `-x` is the negation of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl Cnf {
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > self.vars) {
                return Err(Error::InvalidArgument(format!(
                    "clause {i} has literal {l} outside 1..={}",
                    self.vars
                )));
            }
        }
        Ok(())
    }

    /// Whether `assign[x - 1]` satisfies every clause.
    pub fn satisfied_by(&self, assign: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assign[l.unsigned_abs() as usize - 1] == (l > 0))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GadgetKind {
    /// `NEQ(x_i, x'_i)`, 0-based `i`.
    Neq { i: usize },
    /// `Comp(x_i, x'_i, x_j, x'_j)`, 0-based.
    Comp { i: usize, j: usize },
}

/// A list graph with designated vertices `u = 0` and `v = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub instance: Instance,
    /// The two restrictions to `(u, v)` the gadget must admit, and no other.
    pub expected: BTreeSet<Vec<usize>>,
}

impl Gadget {
    pub const U: usize = 0;
    pub const V: usize = 1;

    pub fn vertex_count(&self) -> usize {
        self.instance.vertex_count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetCertificate {
    pub restrictions: Vec<Vec<usize>>,
    pub expected: Vec<Vec<usize>>,
    pub vertex_count: usize,
    pub ok: bool,
}

/// Exhaustive check: the set of restrictions of all list homomorphisms to
/// `(u, v)` equals the expected pair.
pub fn certify_gadget(hg: &HGraph, g: &Gadget) -> Result<GadgetCertificate> {
    let got = enumerate_restricted(&g.instance, hg, &[Gadget::U, Gadget::V], DEFAULT_NODE_BUDGET)?;
    let lists_ok = g.expected.iter().all(|r| {
        g.instance.lists[Gadget::U].contains(r[0]) && g.instance.lists[Gadget::V].contains(r[1])
    });
    let ok = lists_ok && got == g.expected && g.vertex_count() == 10;
    Ok(GadgetCertificate {
        restrictions: got.into_iter().collect(),
        expected: g.expected.iter().cloned().collect(),
        vertex_count: g.vertex_count(),
        ok,
    })
}

/// Helper colors: `x~'_l` in `∩_{p != l} N(x_p) ∩ N(x'_l) ∩ L` and
/// `x~_l` in `N(x_l) \ N(x'_l)`, lowest index each.
fn helpers(hg: &HGraph, lbs: &LowerBoundStructure) -> Result<(Vec<usize>, Vec<usize>)> {
    let d = lbs.order;
    let mut tp = Vec::with_capacity(d);
    let mut t = Vec::with_capacity(d);
    for l in 0..d {
        let mut cand = hg.nbr(lbs.xps[l]) & lbs.list;
        for p in (0..d).filter(|&p| p != l) {
            cand &= hg.nbr(lbs.xs[p]);
        }
        let a = cand.min().ok_or_else(|| {
            Error::InvalidArgument(format!("lower bound structure has no common neighbor after replacing x_{l}"))
        })?;
        let b = (hg.nbr(lbs.xs[l]) - hg.nbr(lbs.xps[l])).min().ok_or_else(|| {
            Error::InvalidArgument(format!("x_{l} and x'_{l} are not incomparable"))
        })?;
        tp.push(a);
        t.push(b);
    }
    Ok((tp, t))
}

/// Two paths with the given lists; first vertices become `u = 0`, last
/// vertices `v = 1`.
fn join_paths(h: usize, p1: &[[usize; 2]], p2: &[[usize; 2]]) -> Instance {
    let mut g = Graph::new(2);
    let mut lists = vec![pair(p1[0]), pair(p1[p1.len() - 1])];
    for path in [p1, p2] {
        let mut prev = Gadget::U;
        for (idx, l) in path.iter().enumerate().skip(1) {
            let cur = if idx == path.len() - 1 {
                Gadget::V
            } else {
                lists.push(pair(*l));
                g.add_vertex()
            };
            g.add_edge(prev, cur).expect("in range");
            prev = cur;
        }
    }
    Instance::new(h, g, lists, None).expect("gadget lists are in range")
}

fn pair(p: [usize; 2]) -> ColorSet {
    ColorSet::from_iter(p)
}

fn check_order(lbs: &LowerBoundStructure) -> Result<()> {
    if lbs.order < 3 {
        return Err(Error::InvalidArgument(format!(
            "gadgets need a lower bound structure of order at least 3, got {}",
            lbs.order
        )));
    }
    Ok(())
}

/// Positions `first, second, smallest remaining, other remaining..`.
fn order_with(d: usize, first: usize, second: usize) -> Vec<usize> {
    let mut perm = vec![first, second];
    perm.extend((0..d).filter(|&p| p != first && p != second));
    perm
}

/// `NEQ(x_i, x'_i)`, 0-based `i`, certified.
pub fn build_neq(hg: &HGraph, lbs: &LowerBoundStructure, i: usize) -> Result<Gadget> {
    check_order(lbs)?;
    if i >= lbs.order {
        return Err(Error::InvalidArgument(format!("index {i} outside the structure")));
    }
    let second = (0..lbs.order).find(|&p| p != i).unwrap();
    let s = lbs.permuted(&order_with(lbs.order, i, second));
    let (tp, t) = helpers(hg, &s)?;
    let (x, xp) = (&s.xs, &s.xps);
    let p1 = [[xp[0], x[0]], [tp[0], tp[1]], [x[1], x[2]], [tp[2], tp[0]], [x[0], xp[0]]];
    let p2 = [
        [x[0], xp[0]],
        [t[0], tp[0]],
        [x[0], x[1]],
        [tp[1], tp[2]],
        [x[2], x[0]],
        [tp[0], t[0]],
        [xp[0], x[0]],
    ];
    let gadget = Gadget {
        kind: GadgetKind::Neq { i },
        instance: join_paths(hg.h(), &p1, &p2),
        expected: BTreeSet::from([vec![x[0], xp[0]], vec![xp[0], x[0]]]),
    };
    certified(hg, gadget)
}

/// `Comp(x_i, x'_i, x_j, x'_j)`, 0-based, certified.
pub fn build_comp(hg: &HGraph, lbs: &LowerBoundStructure, i: usize, j: usize) -> Result<Gadget> {
    check_order(lbs)?;
    if i == j || i >= lbs.order || j >= lbs.order {
        return Err(Error::InvalidArgument(format!("invalid index pair ({i}, {j})")));
    }
    let s = lbs.permuted(&order_with(lbs.order, i, j));
    let (tp, t) = helpers(hg, &s)?;
    let (x, xp) = (&s.xs, &s.xps);
    let p1 = [
        [x[0], xp[0]],
        [tp[1], tp[0]],
        [x[2], x[1]],
        [tp[0], tp[2]],
        [x[1], x[0]],
        [t[1], tp[1]],
        [x[1], xp[1]],
    ];
    let p2 = [[xp[0], x[0]], [tp[0], t[0]], [x[2], x[0]], [tp[1], tp[2]], [xp[1], x[1]]];
    let gadget = Gadget {
        kind: GadgetKind::Comp { i, j },
        instance: join_paths(hg.h(), &p1, &p2),
        expected: BTreeSet::from([vec![x[0], x[1]], vec![xp[0], xp[1]]]),
    };
    certified(hg, gadget)
}

fn certified(hg: &HGraph, g: Gadget) -> Result<Gadget> {
    let cert = certify_gadget(hg, &g)?;
    if !cert.ok {
        return Err(Error::Certification(format!(
            "{:?}: restrictions {:?}, expected {:?}",
            g.kind, cert.restrictions, cert.expected
        )));
    }
    Ok(g)
}

/// Specials `a_i = i` and `a-bar_i = d + i`; `NEQ(x_i, x'_i)` on
/// `(a_i, a-bar_i)` and `Comp(x_i, x'_i, x_{i+1}, x'_{i+1})` on
/// `(a_i, a_{i+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGadget {
    pub instance: Instance,
    pub a: Vec<usize>,
    pub abar: Vec<usize>,
    /// Restriction of the false assignment to `a` then `abar`.
    pub phi_false: Vec<usize>,
    pub phi_true: Vec<usize>,
}

impl VariableGadget {
    pub fn specials(&self) -> Vec<usize> {
        self.a.iter().chain(&self.abar).copied().collect()
    }
}

fn glue(g: &mut Graph, lists: &mut Vec<ColorSet>, gadget: &Gadget, u: usize, v: usize) {
    let src = &gadget.instance;
    let map: Vec<usize> = (0..src.vertex_count())
        .map(|w| match w {
            Gadget::U => u,
            Gadget::V => v,
            _ => {
                lists.push(src.lists[w]);
                g.add_vertex()
            }
        })
        .collect();
    for (a, b) in src.graph.edges() {
        g.add_edge(map[a], map[b]).expect("in range");
    }
}

pub fn build_variable_gadget(hg: &HGraph, lbs: &LowerBoundStructure) -> Result<VariableGadget> {
    check_order(lbs)?;
    let d = lbs.order;
    let mut g = Graph::new(2 * d);
    let mut lists: Vec<ColorSet> = (0..2 * d)
        .map(|p| pair([lbs.xs[p % d], lbs.xps[p % d]]))
        .collect();
    for i in 0..d {
        glue(&mut g, &mut lists, &build_neq(hg, lbs, i)?, i, d + i);
    }
    for i in 0..d - 1 {
        glue(&mut g, &mut lists, &build_comp(hg, lbs, i, i + 1)?, i, i + 1);
    }
    let instance = Instance::new(hg.h(), g, lists, None)?;
    let phi_false = lbs.xs.iter().chain(&lbs.xps).copied().collect();
    let phi_true = lbs.xps.iter().chain(&lbs.xs).copied().collect();
    Ok(VariableGadget {
        instance,
        a: (0..d).collect(),
        abar: (d..2 * d).collect(),
        phi_false,
        phi_true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VariableGadgetCertificate {
    pub restrictions: Vec<Vec<usize>>,
    pub vertex_count: usize,
    pub ok: bool,
}

pub fn certify_variable_gadget(hg: &HGraph, vg: &VariableGadget) -> Result<VariableGadgetCertificate> {
    let got = enumerate_restricted(&vg.instance, hg, &vg.specials(), DEFAULT_NODE_BUDGET)?;
    let expected = BTreeSet::from([vg.phi_false.clone(), vg.phi_true.clone()]);
    Ok(VariableGadgetCertificate {
        ok: got == expected,
        restrictions: got.into_iter().collect(),
        vertex_count: vg.instance.vertex_count(),
    })
}

/// Every variable gets a copy of the variable gadget; clause `C` gets a
/// vertex with list `L` adjacent to `a_j` (positive) or `a-bar_j`
/// (negative) of the gadget of its `j`-th literal. Clauses shorter than
/// `d` repeat their last literal. The gadget vertices form the cover. An
/// empty clause gives a single vertex with an empty list.
pub fn reduce_sat(cnf: &Cnf, hg: &HGraph, lbs: &LowerBoundStructure) -> Result<Instance> {
    check_order(lbs)?;
    cnf.validate()?;
    let d = lbs.order;
    if let Some(c) = cnf.clauses.iter().find(|c| c.len() > d) {
        return Err(Error::InvalidArgument(format!(
            "clause {c:?} has more than {d} literals"
        )));
    }
    if cnf.clauses.iter().any(Vec::is_empty) {
        return Instance::new(hg.h(), Graph::new(1), vec![ColorSet::EMPTY], Some(Vec::new()));
    }
    let vg = build_variable_gadget(hg, lbs)?;
    let cert = certify_variable_gadget(hg, &vg)?;
    if !cert.ok {
        return Err(Error::Certification(format!(
            "variable gadget admits {:?}",
            cert.restrictions
        )));
    }
    let size = vg.instance.vertex_count();
    let mut g = Graph::new(cnf.vars * size);
    let mut lists = Vec::with_capacity(cnf.vars * size + cnf.clauses.len());
    for x in 0..cnf.vars {
        lists.extend_from_slice(&vg.instance.lists);
        for (a, b) in vg.instance.graph.edges() {
            g.add_edge(x * size + a, x * size + b).expect("in range");
        }
    }
    for clause in &cnf.clauses {
        let c = g.add_vertex();
        lists.push(lbs.list);
        for j in 0..d {
            let lit = clause[j.min(clause.len() - 1)];
            let x = lit.unsigned_abs() as usize - 1;
            let special = if lit > 0 { vg.a[j] } else { vg.abar[j] };
            g.add_edge(c, x * size + special).expect("in range");
        }
    }
    Instance::new(hg.h(), g, lists, Some((0..cnf.vars * size).collect()))
}
