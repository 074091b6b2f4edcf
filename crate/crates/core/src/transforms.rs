//! Graft transformations with a known monotone effect on `μ_α`.
//!
//! Each rewrite is a pure function producing the transformed graph(s);
//! [`Transform`] bundles a rewrite with its parameters and
//! [`TransformOutcome`] evaluates the claimed direction at one `α`.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{automorphism_mapping, Graph};
use crate::report::sig15;
use crate::spectral::spectral_radius;
use crate::{Error, Result, Tolerances};

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn check_vertex(g: &Graph, u: usize) -> Result<()> {
    if u < g.n() {
        Ok(())
    } else {
        Err(hypothesis(format!("vertex {u} out of range for n = {}", g.n())))
    }
}

pub fn is_cut_edge(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && !g.without_edge(u, v).is_connected()
}

/// One endpoint has degree 1.
pub fn is_pendant_edge(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && (g.degree(u) == 1 || g.degree(v) == 1)
}

/// `v` is adjacent to a vertex of degree 1.
pub fn is_quasi_pendant(g: &Graph, v: usize) -> bool {
    g.neighbors(v).iter().any(|&w| g.degree(w) == 1)
}

/// A pendant path `u_0 u_1 … u_r` at `u_0 = v`, listed from `v` outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PendantPath {
    pub vertices: Vec<usize>,
}

impl PendantPath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Pendant paths at `v`: requires `d(v) ≥ 3`, internal vertices of degree 2
/// and an end of degree 1.
pub fn pendant_paths_at(g: &Graph, v: usize) -> Vec<PendantPath> {
    if v >= g.n() || g.degree(v) < 3 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &start in g.neighbors(v) {
        let mut walk = vec![v, start];
        let (mut prev, mut cur) = (v, start);
        while g.degree(cur) == 2 {
            let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).expect("degree 2");
            if next == v {
                break;
            }
            walk.push(next);
            prev = cur;
            cur = next;
        }
        if g.degree(cur) == 1 {
            out.push(PendantPath { vertices: walk });
        }
    }
    out
}

/// `G(u; len)`: a new path of `len` vertices hanging from `u`.
pub fn attach_pendant_path(g: &Graph, u: usize, len: usize) -> Graph {
    assert!(u < g.n(), "vertex {u} out of range");
    let mut out = g.clone();
    let mut prev = u;
    for _ in 0..len {
        let x = out.push_vertex();
        out.insert_edge(prev, x);
        prev = x;
    }
    out
}

/// `G_{uv}`: identify `u` into `v`, then hang `u` from `v` as a leaf.
///
/// Requires `uv` to be a cut edge with neither endpoint a leaf.
pub fn contract_cut_edge_to_pendant(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if !g.has_edge(u, v) {
        return Err(hypothesis(format!("{u}{v} is not an edge")));
    }
    if is_pendant_edge(g, u, v) {
        return Err(hypothesis(format!("{u}{v} is a pendant edge")));
    }
    if !is_cut_edge(g, u, v) {
        return Err(hypothesis(format!("{u}{v} is not a cut edge")));
    }
    let mut out = g.clone();
    for &w in g.neighbors(u) {
        if w != v {
            out.delete_edge(u, w);
            out.insert_edge(v, w);
        }
    }
    Ok(out)
}

/// Cut vertex `u` with branch vertex sets `parts[i]`, each containing `u`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Branches {
    pub u: usize,
    pub parts: Vec<Vec<usize>>,
}

impl Branches {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        check_vertex(g, self.u)?;
        if !g.is_connected() {
            return Err(hypothesis("graph is not connected"));
        }
        if self.parts.len() < 3 {
            return Err(hypothesis(format!("need k >= 3 subgraphs, got {}", self.parts.len())));
        }
        let mut owner = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            if !part.contains(&self.u) {
                return Err(hypothesis(format!("subgraph {} does not contain u", i + 1)));
            }
            if part.len() < 2 {
                return Err(hypothesis(format!("subgraph {} is trivial", i + 1)));
            }
            for &w in part {
                check_vertex(g, w)?;
                if w == self.u {
                    continue;
                }
                if owner[w] != usize::MAX {
                    return Err(hypothesis(format!(
                        "subgraphs {} and {} share a vertex other than u",
                        owner[w] + 1,
                        i + 1
                    )));
                }
                owner[w] = i;
            }
        }
        if let Some(w) = (0..n).find(|&w| w != self.u && owner[w] == usize::MAX) {
            return Err(hypothesis(format!("vertex {w} is in no subgraph")));
        }
        for (a, b) in g.edges() {
            if a != self.u && b != self.u && owner[a] != owner[b] {
                return Err(hypothesis(format!("edge {a}{b} joins two subgraphs")));
            }
        }
        Ok(())
    }
}

/// `G′` and `G″`: the `u`-neighbours inside the subgraphs indexed by `k_set`
/// (0-based, each `≥ 2`) are moved to `v1 ∈ G₁ − u` or to `v2 ∈ G₂ − u`.
pub fn relocate_branches(
    g: &Graph,
    branches: &Branches,
    k_set: &[usize],
    v1: usize,
    v2: usize,
) -> Result<(Graph, Graph)> {
    branches.validate(g)?;
    let k = branches.parts.len();
    if k_set.is_empty() {
        return Err(hypothesis("K is empty"));
    }
    if let Some(&i) = k_set.iter().find(|&&i| i < 2 || i >= k) {
        return Err(hypothesis(format!("K index {i} outside 3..=k (1-based)")));
    }
    let u = branches.u;
    if v1 == u || !branches.parts[0].contains(&v1) {
        return Err(hypothesis("v' is not in V(G1) - u"));
    }
    if v2 == u || !branches.parts[1].contains(&v2) {
        return Err(hypothesis("v'' is not in V(G2) - u"));
    }
    let mut nk = BTreeSet::new();
    for &i in k_set {
        let part = &branches.parts[i];
        nk.extend(g.neighbors(u).iter().copied().filter(|w| part.contains(w)));
    }
    let mut base = g.clone();
    for &w in &nk {
        base.delete_edge(u, w);
    }
    let mut a = base.clone();
    let mut b = base;
    for &w in &nk {
        a.insert_edge(v1, w);
        b.insert_edge(v2, w);
    }
    if !a.is_connected() || !b.is_connected() {
        return Err(hypothesis("a relocated graph is disconnected"));
    }
    Ok((a, b))
}

/// `H_u(p, q)`: paths of lengths `p` then `q` attached at `u`.
pub fn two_paths_at(h: &Graph, u: usize, p: usize, q: usize) -> Graph {
    attach_pendant_path(&attach_pendant_path(h, u, p), u, q)
}

/// `(H_u(p,q), H_u(p+1,q−1))`.
pub fn shift_pendant_path_pair(h: &Graph, u: usize, p: usize, q: usize) -> Result<(Graph, Graph)> {
    check_vertex(h, u)?;
    if h.n() < 2 {
        return Err(hypothesis("H must be nontrivial"));
    }
    if !h.is_connected() {
        return Err(hypothesis("H is not connected"));
    }
    if !(p >= q && q >= 1) {
        return Err(hypothesis(format!("need p >= q >= 1, got p = {p}, q = {q}")));
    }
    Ok((two_paths_at(h, u, p, q), two_paths_at(h, u, p + 1, q - 1)))
}

/// Vertex sets of `G₁ ∋ u`, `G₂ ∋ v`, `G₃ ∋ u, v` with `uv ∈ E(G₃)`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ThreeParts {
    pub u: usize,
    pub v: usize,
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub g3: Vec<usize>,
}

impl ThreeParts {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        let (u, v) = (self.u, self.v);
        check_vertex(g, u)?;
        check_vertex(g, v)?;
        if !g.is_connected() {
            return Err(hypothesis("graph is not connected"));
        }
        let mut owner = vec![Vec::new(); n];
        for (i, part) in [&self.g1, &self.g2, &self.g3].into_iter().enumerate() {
            for &w in part {
                check_vertex(g, w)?;
                if owner[w].contains(&i) {
                    return Err(hypothesis(format!("vertex {w} repeated in G{}", i + 1)));
                }
                owner[w].push(i);
            }
        }
        let in3 = |w: usize| owner[w].contains(&2);
        if !(owner[u] == [0, 2] || owner[u] == [2, 0]) {
            return Err(hypothesis("V(G1) ∩ V(G3) must be {u} with u in no other part"));
        }
        if !(owner[v] == [1, 2] || owner[v] == [2, 1]) {
            return Err(hypothesis("V(G2) ∩ V(G3) must be {v} with v in no other part"));
        }
        for w in 0..n {
            if w == u || w == v {
                continue;
            }
            match owner[w].len() {
                0 => return Err(hypothesis(format!("vertex {w} is in no subgraph"))),
                1 => {}
                _ => return Err(hypothesis(format!("vertex {w} lies in two subgraphs"))),
            }
        }
        let part_of = |w: usize| -> Vec<usize> { owner[w].clone() };
        for (a, b) in g.edges() {
            if !part_of(a).iter().any(|i| part_of(b).contains(i)) {
                return Err(hypothesis(format!("edge {a}{b} joins two subgraphs")));
            }
        }
        if !g.has_edge(u, v) || !in3(u) || !in3(v) {
            return Err(hypothesis("uv is not an edge of G3"));
        }
        if self.g1.len() < 2 {
            return Err(hypothesis("G1 - u is empty"));
        }
        if self.g2.len() < 2 {
            return Err(hypothesis("G2 - v is empty"));
        }
        if self.g3.len() < 3 {
            return Err(hypothesis("G3 - u - v is empty"));
        }
        Ok(())
    }
}

/// `G′` and `G″` of the two-sided neighbour transfer across `uv`.
pub fn transfer_neighbor_sets(
    g: &Graph,
    parts: &ThreeParts,
    u_prime: usize,
    v_prime: usize,
) -> Result<(Graph, Graph)> {
    parts.validate(g)?;
    let (u, v) = (parts.u, parts.v);
    if !(parts.g1.contains(&u_prime) && g.has_edge(u, u_prime)) {
        return Err(hypothesis("u' is not a neighbour of u in G1"));
    }
    if !(parts.g2.contains(&v_prime) && g.has_edge(v, v_prime)) {
        return Err(hypothesis("v' is not a neighbour of v in G2"));
    }
    let in3 = |w: &usize| parts.g3.contains(w);
    let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|w| *w != v && in3(w)).collect();
    let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|w| *w != u && in3(w)).collect();
    let mut h = g.clone();
    for &w in &nu {
        h.delete_edge(u, w);
    }
    for &w in &nv {
        h.delete_edge(v, w);
    }
    let mut a = h.clone();
    let mut b = h;
    for &w in &nu {
        a.insert_edge(u_prime, w);
        b.insert_edge(v, w);
    }
    for &w in &nv {
        a.insert_edge(u, w);
        b.insert_edge(v_prime, w);
    }
    Ok((a, b))
}

/// `H_{u,v}(p, q)`: a path of length `p` at `u` and one of length `q` at `v`.
pub fn paths_at_two_sites(h: &Graph, u: usize, v: usize, p: usize, q: usize) -> Graph {
    attach_pendant_path(&attach_pendant_path(h, u, p), v, q)
}

/// `(H_{u,v}(p,q), H_{u,v}(p+1,q−1))`; needs `uv ∈ E(H)` and an automorphism mapping `u` to `v`.
pub fn shift_two_site_pendant_paths(
    h: &Graph,
    u: usize,
    v: usize,
    p: usize,
    q: usize,
) -> Result<(Graph, Graph)> {
    check_vertex(h, u)?;
    check_vertex(h, v)?;
    if h.n() < 3 {
        return Err(hypothesis("H must have order at least 3"));
    }
    if !h.is_connected() {
        return Err(hypothesis("H is not connected"));
    }
    if !h.has_edge(u, v) {
        return Err(hypothesis(format!("{u}{v} is not an edge of H")));
    }
    if !(p >= q && q >= 1) {
        return Err(hypothesis(format!("need p >= q >= 1, got p = {p}, q = {q}")));
    }
    if automorphism_mapping(h, u, v)?.is_none() {
        return Err(hypothesis(format!("no automorphism of H maps {u} to {v}")));
    }
    Ok((paths_at_two_sites(h, u, v, p, q), paths_at_two_sites(h, u, v, p + 1, q - 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Decrease,
    Increase,
    OneOfTwoIncreases,
}

/// A transformation together with its parameters.
#[derive(Debug, Clone)]
pub enum Transform {
    Contract { u: usize, v: usize },
    Relocate { branches: Branches, k_set: Vec<usize>, v1: usize, v2: usize },
    ShiftPair { u: usize, p: usize, q: usize },
    Transfer { parts: ThreeParts, u_prime: usize, v_prime: usize },
    ShiftTwoSite { u: usize, v: usize, p: usize, q: usize },
}

/// Input and output graphs of one applied transformation.
#[derive(Debug, Clone, Serialize)]
pub struct Applied {
    pub name: &'static str,
    pub claim: Claim,
    pub before: Graph,
    pub after: Vec<Graph>,
    /// The claim's hypothesis holds (always true except for contraction
    /// without a quasi-pendant endpoint).
    pub hypothesis_met: bool,
}

impl Transform {
    pub fn name(&self) -> &'static str {
        match self {
            Transform::Contract { .. } => "contract_cut_edge_to_pendant",
            Transform::Relocate { .. } => "relocate_branches",
            Transform::ShiftPair { .. } => "shift_pendant_path_pair",
            Transform::Transfer { .. } => "transfer_neighbor_sets",
            Transform::ShiftTwoSite { .. } => "shift_two_site_pendant_paths",
        }
    }

    /// For the two path shifts `g` is the base graph `H`.
    pub fn apply(&self, g: &Graph) -> Result<Applied> {
        let name = self.name();
        let applied = |claim, before, after, hypothesis_met| Applied {
            name,
            claim,
            before,
            after,
            hypothesis_met,
        };
        Ok(match self {
            Transform::Contract { u, v } => {
                let out = contract_cut_edge_to_pendant(g, *u, *v)?;
                let met = is_quasi_pendant(g, *u) || is_quasi_pendant(g, *v);
                applied(Claim::Decrease, g.clone(), vec![out], met)
            }
            Transform::Relocate { branches, k_set, v1, v2 } => {
                let (a, b) = relocate_branches(g, branches, k_set, *v1, *v2)?;
                applied(Claim::OneOfTwoIncreases, g.clone(), vec![a, b], true)
            }
            Transform::ShiftPair { u, p, q } => {
                let (before, after) = shift_pendant_path_pair(g, *u, *p, *q)?;
                applied(Claim::Increase, before, vec![after], true)
            }
            Transform::Transfer { parts, u_prime, v_prime } => {
                let (a, b) = transfer_neighbor_sets(g, parts, *u_prime, *v_prime)?;
                applied(Claim::OneOfTwoIncreases, g.clone(), vec![a, b], true)
            }
            Transform::ShiftTwoSite { u, v, p, q } => {
                let (before, after) = shift_two_site_pendant_paths(g, *u, *v, *p, *q)?;
                applied(Claim::Increase, before, vec![after], true)
            }
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformOutcome {
    pub name: &'static str,
    #[serde(serialize_with = "sig15")]
    pub alpha: f64,
    pub before: Graph,
    pub after: Vec<Graph>,
    #[serde(serialize_with = "sig15")]
    pub mu_before: f64,
    #[serde(serialize_with = "crate::report::sig15_vec")]
    pub mu_after: Vec<f64>,
    pub direction_claim: Claim,
    pub hypothesis_met: bool,
    /// Signed gap in the claimed direction; positive means the claim holds.
    #[serde(serialize_with = "sig15")]
    pub margin: f64,
    /// Hypothesis met and margin beyond the strict band.
    pub claim_verified: bool,
}

impl Applied {
    pub fn outcome(&self, alpha: f64, tol: &Tolerances) -> Result<TransformOutcome> {
        let mu_before = spectral_radius(&self.before, alpha, tol)?.mu;
        let mu_after = self
            .after
            .iter()
            .map(|g| spectral_radius(g, alpha, tol).map(|r| r.mu))
            .collect::<Result<Vec<_>>>()?;
        let (margin, reference) = match self.claim {
            Claim::Decrease => (mu_before - mu_after[0], mu_before),
            Claim::Increase => (mu_after[0] - mu_before, mu_after[0]),
            Claim::OneOfTwoIncreases => {
                let best = mu_after.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                (best - mu_before, best)
            }
        };
        Ok(TransformOutcome {
            name: self.name,
            alpha,
            before: self.before.clone(),
            after: self.after.clone(),
            mu_before,
            mu_after,
            direction_claim: self.claim,
            hypothesis_met: self.hypothesis_met,
            margin,
            claim_verified: self.hypothesis_met && margin > tol.strict_band(reference),
        })
    }
}

/// A generated instance: the input graph (or base `H`) and the transformation.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub transform: Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    Contract,
    Relocate,
    ShiftPair,
    Transfer,
    ShiftTwoSite,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Contract,
        TransformKind::Relocate,
        TransformKind::ShiftPair,
        TransformKind::Transfer,
        TransformKind::ShiftTwoSite,
    ];
}

/// Random connected graph on `n` vertices: a random labelled tree plus
/// each remaining pair with probability `extra`.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        let parent = rng.random_range(0..v);
        g.insert_edge(parent, v);
    }
    if extra > 0.0 {
        for (a, b) in g.non_edges() {
            if rng.random_bool(extra) {
                g.insert_edge(a, b);
            }
        }
    }
    g
}

/// Disjoint union; returns the offset of `b`'s vertices.
fn disjoint_union(a: &Graph, b: &Graph) -> (Graph, usize) {
    let mut g = a.clone();
    let off = g.n();
    for _ in 0..b.n() {
        g.push_vertex();
    }
    for (x, y) in b.edges() {
        g.insert_edge(x + off, y + off);
    }
    (g, off)
}

/// Identifies vertex `y` of `b` with vertex `x` of `a`; returns the map from `b`'s labels.
fn glue(a: &Graph, x: usize, b: &Graph, y: usize) -> (Graph, Vec<usize>) {
    let mut g = a.clone();
    let mut map = vec![usize::MAX; b.n()];
    map[y] = x;
    for (w, slot) in map.iter_mut().enumerate() {
        if w != y {
            *slot = g.push_vertex();
        }
    }
    for (p, q) in b.edges() {
        g.insert_edge(map[p], map[q]);
    }
    (g, map)
}

/// Seeded generator of applicable instances with order at most `max_n`.
pub fn random_instances(kind: TransformKind, count: usize, seed: u64, max_n: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (kind as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(inst) = sample(kind, &mut rng, max_n) {
            if inst.transform.apply(&inst.graph).is_ok_and(|a| a.hypothesis_met) {
                out.push(inst);
            }
        }
    }
    out
}

fn sample(kind: TransformKind, rng: &mut ChaCha8Rng, max_n: usize) -> Option<Instance> {
    let extra = *[0.0, 0.0, 0.15, 0.3].choose(rng)?;
    match kind {
        TransformKind::Contract => {
            let n = rng.random_range(4..=max_n);
            let g = random_connected(rng, n, extra);
            let edges: Vec<(usize, usize)> = g
                .edges()
                .filter(|&(a, b)| {
                    !is_pendant_edge(&g, a, b)
                        && is_cut_edge(&g, a, b)
                        && (is_quasi_pendant(&g, a) || is_quasi_pendant(&g, b))
                })
                .collect();
            let &(a, b) = edges.choose(rng)?;
            let (u, v) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
            Some(Instance {
                graph: g,
                transform: Transform::Contract { u, v },
            })
        }
        TransformKind::Relocate => {
            let k = rng.random_range(3..=4usize);
            let budget = max_n - 1;
            if budget < k {
                return None;
            }
            let mut sizes = vec![1usize; k];
            for _ in 0..rng.random_range(0..=budget - k) {
                let i = rng.random_range(0..k);
                sizes[i] += 1;
            }
            let mut g = Graph::empty(1);
            let mut parts = Vec::with_capacity(k);
            for &s in &sizes {
                let piece = random_connected(rng, s + 1, extra);
                let root = rng.random_range(0..=s);
                let (ng, map) = glue(&g, 0, &piece, root);
                g = ng;
                parts.push(map);
            }
            let k_count = rng.random_range(1..=k - 2);
            let mut pool: Vec<usize> = (2..k).collect();
            let mut k_set = Vec::new();
            for _ in 0..k_count {
                let i = rng.random_range(0..pool.len());
                k_set.push(pool.swap_remove(i));
            }
            k_set.sort_unstable();
            let v1 = **parts[0].iter().filter(|&&w| w != 0).collect::<Vec<_>>().choose(rng)?;
            let v2 = **parts[1].iter().filter(|&&w| w != 0).collect::<Vec<_>>().choose(rng)?;
            for p in &mut parts {
                p.sort_unstable();
            }
            Some(Instance {
                graph: g,
                transform: Transform::Relocate {
                    branches: Branches { u: 0, parts },
                    k_set,
                    v1,
                    v2,
                },
            })
        }
        TransformKind::ShiftPair => {
            let h_n = rng.random_range(2..=(max_n - 2).min(8));
            let h = random_connected(rng, h_n, extra);
            let room = max_n - h_n;
            let q = rng.random_range(1..=room / 2);
            let p = rng.random_range(q..=room - q);
            let u = rng.random_range(0..h_n);
            Some(Instance {
                graph: h,
                transform: Transform::ShiftPair { u, p, q },
            })
        }
        TransformKind::Transfer => {
            let n3 = rng.random_range(3..=(max_n - 2).min(7));
            let g3 = random_connected(rng, n3, extra.max(0.2));
            let (u, v) = *g3.edges().collect::<Vec<_>>().choose(rng)?;
            let room = max_n - n3;
            let n1 = rng.random_range(1..room);
            let n2 = rng.random_range(1..=room - n1);
            let a = random_connected(rng, n1 + 1, extra);
            let b = random_connected(rng, n2 + 1, extra);
            let (ra, rb) = (rng.random_range(0..=n1), rng.random_range(0..=n2));
            let (g, map_a) = glue(&g3, u, &a, ra);
            let (g, map_b) = glue(&g, v, &b, rb);
            let mut g1 = map_a.clone();
            let mut g2 = map_b.clone();
            g1.sort_unstable();
            g2.sort_unstable();
            let u_prime = **g.neighbors(u).iter().filter(|w| g1.contains(w)).collect::<Vec<_>>().choose(rng)?;
            let v_prime = **g.neighbors(v).iter().filter(|w| g2.contains(w)).collect::<Vec<_>>().choose(rng)?;
            Some(Instance {
                graph: g,
                transform: Transform::Transfer {
                    parts: ThreeParts {
                        u,
                        v,
                        g1,
                        g2,
                        g3: (0..n3).collect(),
                    },
                    u_prime,
                    v_prime,
                },
            })
        }
        TransformKind::ShiftTwoSite => {
            let (h, u, v) = if rng.random_bool(0.5) {
                let n = rng.random_range(3..=6);
                let h = random_connected(rng, n, extra.max(0.3));
                let (u, v) = *h.edges().collect::<Vec<_>>().choose(rng)?;
                (h, u, v)
            } else {
                symmetric_pair(rng)
            };
            let room = max_n.checked_sub(h.n())?;
            if room < 2 {
                return None;
            }
            let q = rng.random_range(1..=room / 2);
            let p = rng.random_range(q..=room - q);
            Some(Instance {
                graph: h,
                transform: Transform::ShiftTwoSite { u, v, p, q },
            })
        }
    }
}

/// Two copies of a random rooted graph with the roots adjacent, optionally a
/// shared vertex joined to both roots and mirrored cross edges; swapping the
/// copies is an automorphism exchanging the roots.
fn symmetric_pair(rng: &mut ChaCha8Rng) -> (Graph, usize, usize) {
    let s = rng.random_range(1..=3);
    let f = random_connected(rng, s, 0.3);
    let root = rng.random_range(0..s);
    let (mut g, off) = disjoint_union(&f, &f);
    g.insert_edge(root, root + off);
    if s == 1 || rng.random_bool(0.3) {
        let c = g.push_vertex();
        g.insert_edge(root, c);
        g.insert_edge(root + off, c);
    }
    for x in 0..s {
        for y in 0..s {
            if x < y && rng.random_bool(0.15) {
                g.insert_edge(x, y + off);
                g.insert_edge(y, x + off);
            }
        }
    }
    (g, root, root + off)
}
