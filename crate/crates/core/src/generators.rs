//! Deterministic graph and instance generators.
//!
//! All randomness comes from [`SplitMix64`] so that a corpus is reproducible
//! from its seed alone, independently of this crate or platform.

use serde::{Deserialize, Serialize};

use crate::colorset::ColorSet;
use crate::graph::{Graph, HGraph, Instance};

/// SplitMix64 (Steele, Lea, Flood 2014). The state advances by the golden
/// gamma `0x9E3779B97F4A7C15`; the output is the usual 30/27/31 mix.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` by the multiply-high method (no rejection step).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Each color of `0..h` independently with probability `p`; resampled
    /// until nonempty.
    pub fn nonempty_subset(&mut self, h: usize, p: f64) -> ColorSet {
        loop {
            let s: ColorSet = (0..h).filter(|_| self.chance(p)).collect();
            if !s.is_empty() {
                return s;
            }
        }
    }
}

/// `C_k^p`: vertices `0..k`, `uv` an edge iff `0 < dist_k(u, v) <= p`.
pub fn gen_cycle_power(k: usize, p: usize) -> HGraph {
    assert!(k >= 3 && p >= 1, "cycle power needs k >= 3 and p >= 1");
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            if cyclic_dist(k, u, v) <= p {
                edges.push((u, v));
            }
        }
    }
    HGraph::from_edges(k, &edges).expect("valid cycle power")
}

pub fn cycle(k: usize) -> HGraph {
    gen_cycle_power(k, 1)
}

/// `dist_k(u, v) = min(|u - v|, k - |u - v|)`.
pub fn cyclic_dist(k: usize, u: usize, v: usize) -> usize {
    let d = u.abs_diff(v) % k;
    d.min(k - d)
}

pub fn complete_graph(q: usize) -> HGraph {
    let mut edges = Vec::new();
    for u in 0..q {
        for v in u + 1..q {
            edges.push((u, v));
        }
    }
    HGraph::from_edges(q, &edges).expect("valid clique")
}

/// The `r`-leaf star with every edge subdivided twice. Vertex 0 is the
/// centre; leg `i` is `3i+1 - 3i+2 - 3i+3` with `3i+1` next to the centre.
pub fn gen_subdivided_star(r: usize) -> HGraph {
    assert!(r >= 1);
    let mut edges = Vec::new();
    for i in 0..r {
        let a = 3 * i + 1;
        edges.push((0, a));
        edges.push((a, a + 1));
        edges.push((a + 1, a + 2));
    }
    HGraph::from_edges(3 * r + 1, &edges).expect("valid star")
}

/// Each edge (loops included) independently.
pub fn random_hgraph(h: usize, p_edge: f64, p_loop: f64, rng: &mut SplitMix64) -> HGraph {
    let mut edges = Vec::new();
    for u in 0..h {
        if rng.chance(p_loop) {
            edges.push((u, u));
        }
        for v in u + 1..h {
            if rng.chance(p_edge) {
                edges.push((u, v));
            }
        }
    }
    HGraph::from_edges(h, &edges).expect("valid random graph")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceMode {
    Random,
    PlantedYes,
}

#[derive(Clone, Copy, Debug)]
pub struct InstanceParams {
    /// Edge probability inside the cover.
    pub p_cover_edge: f64,
    /// Edge probability between the cover and the independent set.
    pub p_cross_edge: f64,
    /// Per-color inclusion probability for lists.
    pub p_color: f64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            p_cover_edge: 0.3,
            p_cross_edge: 0.5,
            p_color: 0.5,
        }
    }
}

pub fn gen_instance(hg: &HGraph, n: usize, k: usize, seed: u64, mode: InstanceMode) -> Instance {
    gen_instance_with(hg, n, k, seed, mode, &InstanceParams::default())
}

/// Random instance whose first `k` vertices form the planted cover; the
/// remaining `n - k` vertices are independent. In planted-yes mode a
/// mapping is drawn first and only consistent edges are kept, and every list
/// contains the planted color.
pub fn gen_instance_with(
    hg: &HGraph,
    n: usize,
    k: usize,
    seed: u64,
    mode: InstanceMode,
    params: &InstanceParams,
) -> Instance {
    assert!(k <= n, "cover larger than the graph");
    let h = hg.h();
    let mut rng = SplitMix64::new(seed);
    let planted: Option<Vec<usize>> = match mode {
        InstanceMode::Random => None,
        InstanceMode::PlantedYes => Some((0..n).map(|_| rng.below(h)).collect()),
    };
    let consistent = |u: usize, v: usize| match &planted {
        Some(phi) => hg.adjacent(phi[u], phi[v]),
        None => true,
    };

    let mut g = Graph::new(n);
    for u in 0..k {
        for v in u + 1..n {
            let p = if v < k { params.p_cover_edge } else { params.p_cross_edge };
            if rng.chance(p) && consistent(u, v) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    let lists = (0..n)
        .map(|v| {
            let l = rng.nonempty_subset(h, params.p_color);
            match &planted {
                Some(phi) => l.with(phi[v]),
                None => l,
            }
        })
        .collect();
    Instance::new(h, g, lists, Some((0..k).collect())).expect("generated instance is valid")
}
