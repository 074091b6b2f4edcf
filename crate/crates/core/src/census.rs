//! Isomorphism-free censuses of trees, unicyclic graphs and connected graphs.
//!
//! Trees come from canonical level sequences rooted at the centroid:
//! unicentroidal trees are rooted trees whose root branches all have at most
//! `(n−1)/2` vertices, bicentroidal trees are unordered pairs of rooted trees
//! on `n/2` vertices joined at their roots. Unicyclic graphs are trees plus
//! one edge, connected graphs are grown one vertex at a time from the
//! connected census of order `n − 1`; both are deduplicated by canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::graph6::{read_graph6, write_graph6};
use crate::graph::{canonical_form, families, CanonicalForm, Graph};
use crate::par::Exec;
use crate::{Error, Result};

pub const MAX_TREE_ORDER: usize = 12;
pub const MAX_UNICYCLIC_ORDER: usize = 11;
pub const MAX_CONNECTED_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Trees,
    Unicyclic,
    Connected,
    Filtered,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trees" | "tree" => Ok(Family::Trees),
            "unicyclic" => Ok(Family::Unicyclic),
            "connected" => Ok(Family::Connected),
            "filtered" => Ok(Family::Filtered),
            _ => Err(Error::Config(format!(
                "unknown family {s:?} (expected trees, unicyclic or connected)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Trees => "trees",
            Family::Unicyclic => "unicyclic",
            Family::Connected => "connected",
            Family::Filtered => "filtered",
        })
    }
}

/// Census predicate. Text forms: `max_degree=K`, `clique=K`, `odd_cycle`,
/// `exclude=<named graph>` (see [`families::named`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    MaxDegree(usize),
    Clique(usize),
    OddCycle,
    ExcludeIso { spec: String, form: CanonicalForm },
}

impl Filter {
    pub fn exclude(spec: &str) -> Result<Self> {
        let g = families::named(spec)?;
        Ok(Filter::ExcludeIso {
            spec: spec.to_string(),
            form: canonical_form(&g)?,
        })
    }

    pub fn accepts(&self, g: &Graph, form: &CanonicalForm) -> Result<bool> {
        Ok(match self {
            Filter::MaxDegree(k) => g.max_degree() == *k,
            Filter::Clique(k) => clique_number(g)? == *k,
            Filter::OddCycle => g.is_unicyclic() && g.unique_cycle().is_some_and(|c| c.len() % 2 == 1),
            Filter::ExcludeIso { form: f, .. } => f != form,
        })
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad filter {s:?}"));
        match s.split_once('=') {
            None if s == "odd_cycle" => Ok(Filter::OddCycle),
            Some(("max_degree", k)) => k.parse().map(Filter::MaxDegree).map_err(|_| bad()),
            Some(("clique", k)) => k.parse().map(Filter::Clique).map_err(|_| bad()),
            Some(("exclude", spec)) => Filter::exclude(spec),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::MaxDegree(k) => write!(f, "max_degree={k}"),
            Filter::Clique(k) => write!(f, "clique={k}"),
            Filter::OddCycle => f.write_str("odd_cycle"),
            Filter::ExcludeIso { spec, .. } => write!(f, "exclude={spec}"),
        }
    }
}

impl Serialize for Filter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Filter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Non-isomorphic connected graphs of one order, sorted by canonical form.
#[derive(Debug, Clone)]
pub struct Census {
    pub family: Family,
    pub n: usize,
    pub filters: Vec<Filter>,
    pub graphs: Vec<Graph>,
    forms: Vec<CanonicalForm>,
}

impl Census {
    fn from_map(family: Family, n: usize, map: BTreeMap<CanonicalForm, Graph>) -> Self {
        let (forms, graphs) = map.into_iter().unzip();
        Census {
            family,
            n,
            filters: Vec::new(),
            graphs,
            forms,
        }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn forms(&self) -> &[CanonicalForm] {
        &self.forms
    }

    /// Position of the member isomorphic to `g`.
    pub fn position(&self, g: &Graph) -> Result<Option<usize>> {
        let form = canonical_form(g)?;
        Ok(self.forms.binary_search(&form).ok())
    }
}

fn check_order(n: usize, lo: usize, hi: usize, what: &'static str) -> Result<()> {
    if n < lo {
        return Err(Error::Precondition(format!("{what} census needs n >= {lo}, got {n}")));
    }
    if n > hi {
        return Err(Error::TooLarge { n, limit: hi, what });
    }
    Ok(())
}

/// Canonical level sequences (root at level 1) of all rooted trees on `m` vertices.
pub fn rooted_level_sequences(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return Vec::new();
    }
    let mut level: Vec<usize> = (1..=m).collect();
    let mut out = vec![level.clone()];
    loop {
        let Some(p) = (1..m).rev().find(|&i| level[i] != 2) else {
            return out;
        };
        let q = (0..p).rev().find(|&i| level[i] == level[p] - 1).expect("parent level exists");
        let shift = p - q;
        for i in p..m {
            level[i] = level[i - shift];
        }
        out.push(level.clone());
    }
}

fn push_level_sequence(adj: &mut Vec<Vec<usize>>, level: &[usize]) -> usize {
    let offset = adj.len();
    let mut last_at = vec![usize::MAX; level.len() + 2];
    for (i, &l) in level.iter().enumerate() {
        let v = offset + i;
        adj.push(Vec::new());
        if l > 1 {
            let parent = last_at[l - 1];
            adj[parent].push(v);
            adj[v].push(parent);
        }
        last_at[l] = v;
    }
    offset
}

fn graph_from_adj(mut adj: Vec<Vec<usize>>) -> Graph {
    for list in &mut adj {
        list.sort_unstable();
    }
    Graph::from_adjacency_unchecked(adj)
}

/// Sizes of the branches hanging off the root of a level sequence.
fn branch_sizes(level: &[usize]) -> Vec<usize> {
    let mut sizes = Vec::new();
    for &l in &level[1..] {
        if l == 2 {
            sizes.push(0);
        }
        *sizes.last_mut().expect("first non-root vertex is at level 2") += 1;
    }
    sizes
}

pub fn all_trees(n: usize) -> Result<Census> {
    check_order(n, 1, MAX_TREE_ORDER, "tree")?;
    let mut map = BTreeMap::new();
    let mut insert = |g: Graph| -> Result<()> {
        let form = canonical_form(&g)?;
        if map.insert(form, g).is_some() {
            return Err(Error::InvalidGraph("tree generator produced a duplicate".into()));
        }
        Ok(())
    };
    for level in rooted_level_sequences(n) {
        if branch_sizes(&level).iter().all(|&s| 2 * s < n) {
            let mut adj = Vec::with_capacity(n);
            push_level_sequence(&mut adj, &level);
            insert(graph_from_adj(adj))?;
        }
    }
    if n % 2 == 0 {
        let halves = rooted_level_sequences(n / 2);
        for i in 0..halves.len() {
            for j in i..halves.len() {
                let mut adj = Vec::with_capacity(n);
                let a = push_level_sequence(&mut adj, &halves[i]);
                let b = push_level_sequence(&mut adj, &halves[j]);
                adj[a].push(b);
                adj[b].push(a);
                insert(graph_from_adj(adj))?;
            }
        }
    }
    Ok(Census::from_map(Family::Trees, n, map))
}

pub fn all_unicyclic(n: usize) -> Result<Census> {
    all_unicyclic_with(n, Exec::default())
}

pub fn all_unicyclic_with(n: usize, exec: Exec) -> Result<Census> {
    check_order(n, 3, MAX_UNICYCLIC_ORDER, "unicyclic")?;
    let trees = all_trees(n)?;
    let batches = exec.map(&trees.graphs, |t| -> Result<Vec<(CanonicalForm, Graph)>> {
        t.non_edges()
            .into_iter()
            .map(|(u, v)| {
                let g = t.with_edge(u, v);
                Ok((canonical_form(&g)?, g))
            })
            .collect()
    });
    let mut map = BTreeMap::new();
    for batch in batches {
        for (form, g) in batch? {
            map.entry(form).or_insert(g);
        }
    }
    Ok(Census::from_map(Family::Unicyclic, n, map))
}

pub fn all_connected(n: usize) -> Result<Census> {
    all_connected_with(n, Exec::default())
}

/// Every connected graph has a vertex whose removal leaves it connected, so
/// adding a vertex with every nonempty neighbourhood to each member of the
/// order `n − 1` census reaches every isomorphism class of order `n`.
pub fn all_connected_with(n: usize, exec: Exec) -> Result<Census> {
    check_order(n, 1, MAX_CONNECTED_ORDER, "connected")?;
    let mut map = BTreeMap::new();
    let k1 = Graph::empty(1);
    map.insert(canonical_form(&k1)?, k1);
    for _ in 2..=n {
        let parents: Vec<Graph> = std::mem::take(&mut map).into_values().collect();
        let batches = exec.map(&parents, |h| -> Result<Vec<(CanonicalForm, Graph)>> {
            let k = h.n();
            let mut out = Vec::with_capacity((1 << k) - 1);
            let mut local: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
            for mask in 1u32..(1 << k) {
                let mut g = h.clone();
                let x = g.push_vertex();
                for w in 0..k {
                    if mask >> w & 1 == 1 {
                        g.insert_edge(w, x);
                    }
                }
                let form = canonical_form(&g)?;
                if local.insert(form.clone(), ()).is_none() {
                    out.push((form, g));
                }
            }
            Ok(out)
        });
        for batch in batches {
            for (form, g) in batch? {
                map.entry(form).or_insert(g);
            }
        }
    }
    Ok(Census::from_map(Family::Connected, n, map))
}

/// Census of `family` at order `n`.
pub fn census(family: Family, n: usize) -> Result<Census> {
    match family {
        Family::Trees => all_trees(n),
        Family::Unicyclic => all_unicyclic(n),
        Family::Connected => all_connected(n),
        Family::Filtered => Err(Error::Config("a filtered census is derived, not generated".into())),
    }
}

/// Maximum clique size by branch and bound over bitset candidate sets.
pub fn clique_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 64 {
        return Err(Error::TooLarge {
            n,
            limit: 64,
            what: "clique number",
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    fn expand(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            expand(adj, size + 1, cand & adj[v], best);
        }
    }
    let mut best = 0;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(&adj, 0, all, &mut best);
    Ok(best)
}

pub fn filter_census(c: &Census, filter: &Filter) -> Result<Census> {
    let mut graphs = Vec::new();
    let mut forms = Vec::new();
    for (g, form) in c.graphs.iter().zip(&c.forms) {
        if filter.accepts(g, form)? {
            graphs.push(g.clone());
            forms.push(form.clone());
        }
    }
    let mut filters = c.filters.clone();
    filters.push(filter.clone());
    Ok(Census {
        family: Family::Filtered,
        n: c.n,
        filters,
        graphs,
        forms,
    })
}

/// JSON sidecar written next to a census graph6 file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: Family,
    pub n: usize,
    pub filter: Vec<Filter>,
    pub count: usize,
    pub tool_version: String,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

impl Census {
    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            family: self.family,
            n: self.n,
            filter: self.filters.clone(),
            count: self.len(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Writes `path` (graph6, one member per line) and `path.json`.
    pub fn export(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        write_graph6(&mut w, &self.graphs)?;
        w.flush()?;
        let side = File::create(sidecar_path(path))?;
        serde_json::to_writer_pretty(side, &self.sidecar())?;
        Ok(())
    }

    pub fn import(path: &Path) -> Result<Census> {
        let side: Sidecar = serde_json::from_reader(BufReader::new(File::open(sidecar_path(path))?))?;
        let graphs = read_graph6(BufReader::new(File::open(path)?))?;
        if graphs.len() != side.count {
            return Err(Error::Config(format!(
                "sidecar count {} does not match {} graphs",
                side.count,
                graphs.len()
            )));
        }
        let mut pairs = Vec::with_capacity(graphs.len());
        for g in graphs {
            if g.n() != side.n || !g.is_connected() {
                return Err(Error::InvalidGraph("census member has wrong order or is disconnected".into()));
            }
            pairs.push((canonical_form(&g)?, g));
        }
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidGraph("census contains isomorphic members".into()));
        }
        let (forms, graphs) = pairs.into_iter().unzip();
        Ok(Census {
            family: side.family,
            n: side.n,
            filters: side.filter,
            graphs,
            forms,
        })
    }
}
