//! Independent census oracles. Canonical codes here are written from scratch
//! (AHU tree codes, cycle rotations, brute-force permutations) and share
//! nothing with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

pub fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize, blocked: &[bool]) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent && !blocked[w])
        .map(|&w| rooted_code(adj, w, v, blocked))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

pub fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            for &w in &adj[l] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        leaves = next;
    }
    leaves
}

pub fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    let none = vec![false; n];
    centers(&adj)
        .into_iter()
        .map(|c| rooted_code(&adj, c, usize::MAX, &none))
        .min()
        .unwrap()
}

pub fn prufer_trees(n: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        out.insert(tree_code(n, &edges));
        return out;
    }
    let mut seq = vec![0usize; n - 2];
    loop {
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.insert(tree_code(n, &edges));
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Trees of order `n` by attaching a leaf to every vertex of every tree of order `n − 1`.
pub fn leaf_extension_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![vec![]];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..m - 1 {
                let mut e = t.clone();
                e.push((v, m - 1));
                if seen.insert(tree_code(m, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level
}

/// Canonical code of a connected unicyclic graph: rooted tree codes around the
/// cycle, minimised over rotations and reflections.
pub fn unicyclic_code(n: usize, edges: &[(usize, usize)]) -> String {
    let adj = adjacency(n, edges);
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut on_cycle = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        on_cycle[v] = false;
        for &w in &adj[v] {
            if on_cycle[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let start = (0..n).find(|&v| on_cycle[v]).unwrap();
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = *adj[cur].iter().find(|&&w| on_cycle[w] && w != prev).unwrap();
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    let blocked: Vec<bool> = on_cycle.clone();
    let codes: Vec<String> = cycle
        .iter()
        .map(|&c| {
            let mut kids: Vec<String> = adj[c]
                .iter()
                .filter(|&&w| !blocked[w])
                .map(|&w| rooted_code(&adj, w, c, &blocked))
                .collect();
            kids.sort();
            format!("[{}]", kids.concat())
        })
        .collect();
    let k = codes.len();
    let mut best: Option<String> = None;
    for rev in [false, true] {
        for r in 0..k {
            let s: String = (0..k)
                .map(|i| {
                    let j = if rev { (r + k - i) % k } else { (r + i) % k };
                    codes[j].as_str()
                })
                .collect();
            if best.as_ref().is_none_or(|b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap()
}

pub fn unicyclic_oracle(n: usize) -> usize {
    let mut seen = BTreeSet::new();
    for t in leaf_extension_trees(n) {
        let adj = adjacency(n, &t);
        for a in 0..n {
            for b in a + 1..n {
                if adj[a].contains(&b) {
                    continue;
                }
                let mut e = t.clone();
                e.push((a, b));
                seen.insert(unicyclic_code(n, &e));
            }
        }
    }
    seen.len()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn connected_oracle(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut adj = vec![0u32; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        let mut reach = 1u32;
        loop {
            let grown = (0..n).filter(|&v| reach >> v & 1 == 1).fold(reach, |r, v| r | adj[v]);
            if grown == reach {
                break;
            }
            reach = grown;
        }
        if n > 0 && reach != (1 << n) - 1 {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| adj[p[a]] >> p[b] & 1 == 1)
                    .fold(0u32, |m, (i, _)| m | 1 << i)
            })
            .min()
            .unwrap();
        seen.insert(code);
    }
    seen.len()
}
