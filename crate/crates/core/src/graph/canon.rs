//! Isomorphism-invariant canonical forms.
//!
//! Trees and unicyclic graphs get linear-size AHU encodings (see
//! `tree_canon`). Everything else goes through an individualization /
//! refinement search: ordered partitions are refined to equitable ones by
//! neighbour counts, a vertex of the first non-singleton cell is
//! individualized, and the lexicographically largest adjacency certificate
//! over all discrete leaves wins. Leaves equivalent to the first or best
//! leaf yield automorphisms, which are used to abandon equivalent subtrees
//! and to skip children in the same orbit of the pointwise stabilizer.

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use super::{tree_canon, Graph};
use crate::{Error, Result};

/// Default order cap for the general (non-tree, non-unicyclic) canonizer.
pub const DEFAULT_CANON_LIMIT: usize = 10;

/// Hard limit of the bitset representation used by the search.
const MAX_SEARCH_ORDER: usize = 64;

const TAG_TREE: u8 = b'T';
const TAG_UNICYCLIC: u8 = b'U';
const TAG_GENERAL: u8 = b'G';

/// Byte string equal for two graphs exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let hex: String = self.bytes.iter().map(|b| format!("{b:02x}")).collect();
        s.serialize_str(&hex)
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_limit(g, DEFAULT_CANON_LIMIT)
}

/// As [`canonical_form`], with an explicit cap on the general search.
/// Trees and unicyclic graphs are not subject to the cap.
pub fn canonical_form_with_limit(g: &Graph, limit: usize) -> Result<CanonicalForm> {
    let n = g.n();
    let mut bytes = Vec::with_capacity(2 * n + 8);
    if g.is_tree() {
        bytes.push(TAG_TREE);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        tree_canon::tree_code(g, &mut bytes);
    } else if g.is_unicyclic() {
        bytes.push(TAG_UNICYCLIC);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        tree_canon::unicyclic_code(g, &mut bytes);
    } else {
        let cap = limit.min(MAX_SEARCH_ORDER);
        if n > cap {
            return Err(Error::TooLarge {
                n,
                limit: cap,
                what: "general canonical form",
            });
        }
        bytes.push(TAG_GENERAL);
        bytes.extend_from_slice(&(n as u32).to_be_bytes());
        let (cert, _) = search(g, &vec![0; n]);
        for w in cert {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
    }
    Ok(CanonicalForm { bytes })
}

/// Canonical labeling respecting a vertex colouring.
///
/// Returns the certificate and `labeling[v]` = canonical position of `v`.
/// Two coloured graphs with the same colour multiset get equal certificates
/// iff a colour-preserving isomorphism exists.
pub fn canonical_labeling(g: &Graph, colors: &[u32]) -> Result<(Vec<u64>, Vec<usize>)> {
    let n = g.n();
    if colors.len() != n {
        return Err(Error::InvalidGraph(format!(
            "colouring has {} entries for {n} vertices",
            colors.len()
        )));
    }
    if n > MAX_SEARCH_ORDER {
        return Err(Error::TooLarge {
            n,
            limit: MAX_SEARCH_ORDER,
            what: "canonical labeling",
        });
    }
    let (mut cert, order) = search(g, colors);
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    cert.extend(sorted.into_iter().map(u64::from));
    let mut labeling = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        labeling[v] = pos;
    }
    Ok((cert, labeling))
}

/// An automorphism `η` with `η(u) = v`, if one exists.
pub fn automorphism_mapping(g: &Graph, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if u >= n || v >= n {
        return Err(Error::InvalidGraph(format!("vertex out of range for n = {n}")));
    }
    let mark = |x: usize| -> Vec<u32> { (0..n).map(|w| u32::from(w == x)).collect() };
    let (cu, lu) = canonical_labeling(g, &mark(u))?;
    let (cv, lv) = canonical_labeling(g, &mark(v))?;
    if cu != cv {
        return Ok(None);
    }
    let mut inv_v = vec![0; n];
    for (w, &pos) in lv.iter().enumerate() {
        inv_v[pos] = w;
    }
    Ok(Some((0..n).map(|w| inv_v[lu[w]]).collect()))
}

struct Leaf {
    cert: Vec<u64>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

fn search(g: &Graph, colors: &[u32]) -> (Vec<u64>, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect();
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells: Vec<u64> = palette
        .iter()
        .map(|&c| (0..n).filter(|&v| colors[v] == c).fold(0u64, |m, v| m | (1 << v)))
        .collect();
    let mut s = Search {
        n,
        adj,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let mut path = Vec::new();
    s.visit(cells, &mut path);
    let best = s.best.expect("search reaches at least one leaf");
    (best.cert, best.order)
}

impl Search {
    /// Returns `Some(d)` to abandon everything below depth `d + 1` on the current path.
    fn visit(&mut self, mut cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        self.refine(&mut cells);
        let depth = path.len();
        let Some(target_idx) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells, path);
        };
        let target = cells[target_idx];
        let mut explored: Vec<usize> = Vec::new();
        let mut rest = target;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !explored.is_empty() && self.same_orbit(path, v, &explored) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target_idx]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[target_idx + 1..]);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            explored.push(v);
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let cert = self.certificate(&order);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                cert: cert.clone(),
                order: order.clone(),
                path: path.to_vec(),
            };
            self.first = Some(leaf);
            self.best = Some(Leaf {
                cert,
                order,
                path: path.to_vec(),
            });
            return None;
        };
        if cert == first.cert {
            let aut = compose(&first.order, &order, self.n);
            let d = common_prefix(&first.path, path);
            self.automorphisms.push(aut);
            return Some(d);
        }
        let best = self.best.as_ref().expect("best set with first");
        match cert.cmp(&best.cert) {
            Ordering::Equal => {
                let aut = compose(&best.order, &order, self.n);
                let d = common_prefix(&best.path, path);
                self.automorphisms.push(aut);
                Some(d)
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    cert,
                    order,
                    path: path.to_vec(),
                });
                None
            }
            Ordering::Less => None,
        }
    }

    /// Upper-triangle adjacency bits of the relabeled graph, row by row.
    fn certificate(&self, order: &[usize]) -> Vec<u64> {
        let n = self.n;
        let mut words = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
        let mut bit = 0usize;
        for i in 0..n {
            let row = self.adj[order[i]];
            for &w in &order[i + 1..] {
                if row >> w & 1 == 1 {
                    words[bit / 64] |= 1 << (63 - bit % 64);
                }
                bit += 1;
            }
        }
        words
    }

    /// Refine to the coarsest equitable partition finer than `cells`.
    fn refine(&self, cells: &mut Vec<u64>) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < cells.len() {
                let splitter = cells[i];
                let mut j = 0;
                while j < cells.len() {
                    let cell = cells[j];
                    if cell.count_ones() > 1 {
                        if let Some(parts) = self.split(cell, splitter) {
                            let k = parts.len();
                            cells.splice(j..=j, parts);
                            changed = true;
                            j += k;
                            continue;
                        }
                    }
                    j += 1;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
    }

    /// Split `cell` by neighbour count into `splitter`, ascending by count.
    fn split(&self, cell: u64, splitter: u64) -> Option<Vec<u64>> {
        let mut counts: Vec<(u32, usize)> = Vec::new();
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            counts.push(((self.adj[v] & splitter).count_ones(), v));
        }
        let c0 = counts[0].0;
        if counts.iter().all(|&(c, _)| c == c0) {
            return None;
        }
        counts.sort_unstable();
        let mut parts: Vec<u64> = Vec::new();
        let mut last = None;
        for (c, v) in counts {
            if last != Some(c) {
                parts.push(0);
                last = Some(c);
            }
            *parts.last_mut().unwrap() |= 1 << v;
        }
        Some(parts)
    }

    fn same_orbit(&self, path: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if path.iter().all(|&x| aut[x] == x) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, aut[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }
}

/// The map sending `from[i]` to `to[i]`.
fn compose(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut aut = vec![0; n];
    for (&a, &b) in from.iter().zip(to) {
        aut[a] = b;
    }
    aut
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn is_automorphism(g: &Graph, aut: &[usize]) -> bool {
        g.relabel(aut) == *g
    }

    #[test]
    fn path_relabeling_is_invariant() {
        let a = path(4);
        let b = Graph::from_edge_list(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&star(4)).unwrap());
    }

    #[test]
    fn general_form_invariant_under_random_relabels() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let graphs = [
            petersen(),
            complete(8),
            kite(8, 4).unwrap().with_edge(5, 7),
            cycle(6).unwrap().with_edge(0, 3).with_edge(1, 4),
        ];
        for g in &graphs {
            let base = canonical_form(g).unwrap();
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), base);
            }
        }
    }

    #[test]
    fn distinguishes_cospectral_like_pairs() {
        // Two 6-vertex graphs with equal degree sequences (2,2,2,2,2,2) differ.
        let two_triangles = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
            .unwrap();
        let hexagon = cycle(6).unwrap();
        assert_ne!(
            canonical_form(&two_triangles).unwrap(),
            canonical_form(&hexagon).unwrap()
        );
    }

    #[test]
    fn general_cap_enforced() {
        let g = complete(11);
        assert!(matches!(canonical_form(&g), Err(Error::TooLarge { .. })));
        assert!(canonical_form_with_limit(&g, 12).is_ok());
        // Trees bypass the general cap.
        assert!(canonical_form(&path(12)).is_ok());
    }

    #[test]
    fn automorphisms_of_path_and_cycle() {
        let p = path(3);
        assert!(automorphism_mapping(&p, 0, 1).unwrap().is_none());
        let aut = automorphism_mapping(&p, 0, 2).unwrap().unwrap();
        assert_eq!(aut[0], 2);
        assert!(is_automorphism(&p, &aut));
        let c = cycle(7).unwrap();
        for v in 0..7 {
            let aut = automorphism_mapping(&c, 0, v).unwrap().unwrap();
            assert_eq!(aut[0], v);
            assert!(is_automorphism(&c, &aut));
        }
        let pet = petersen();
        for v in 0..10 {
            let aut = automorphism_mapping(&pet, 3, v).unwrap().unwrap();
            assert!(is_automorphism(&pet, &aut));
        }
    }

    #[test]
    fn search_records_valid_automorphisms() {
        for g in [complete(7), petersen(), cycle(8).unwrap()] {
            let n = g.n();
            let adj: Vec<u64> = (0..n)
                .map(|u| g.neighbors(u).iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect();
            let mut s = Search {
                n,
                adj,
                first: None,
                best: None,
                automorphisms: Vec::new(),
            };
            s.visit(vec![(1u64 << n) - 1], &mut Vec::new());
            assert!(!s.automorphisms.is_empty());
            assert!(s.automorphisms.iter().all(|a| is_automorphism(&g, a)));
        }
    }
}
