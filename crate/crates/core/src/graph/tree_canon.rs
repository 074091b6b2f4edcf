//! AHU encodings for trees (rooted at the centre) and unicyclic graphs
//! (trees hanging off the cycle, normalised over rotations and reflections).

use super::Graph;

const OPEN: u8 = b'(';
const CLOSE: u8 = b')';

/// Canonical parenthesis string of the subtree at `root`, not entering `blocked`.
fn rooted_code(g: &Graph, root: usize, blocked: &dyn Fn(usize, usize) -> bool) -> Vec<u8> {
    fn go(
        g: &Graph,
        v: usize,
        parent: usize,
        blocked: &dyn Fn(usize, usize) -> bool,
    ) -> Vec<u8> {
        let mut kids: Vec<Vec<u8>> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != parent && !blocked(v, w))
            .map(|w| go(g, w, v, blocked))
            .collect();
        kids.sort_unstable();
        let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        out.push(OPEN);
        for k in kids {
            out.extend(k);
        }
        out.push(CLOSE);
        out
    }
    go(g, root, usize::MAX, blocked)
}

/// The one or two centres of a tree, by repeated leaf stripping.
pub(crate) fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg = g.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

pub(crate) fn tree_code(g: &Graph, out: &mut Vec<u8>) {
    let centers = tree_centers(g);
    match centers.as_slice() {
        [c] => {
            out.push(b'1');
            out.extend(rooted_code(g, *c, &|_, _| false));
        }
        [a, b] => {
            let (a, b) = (*a, *b);
            let cut = move |x: usize, y: usize| (x == a && y == b) || (x == b && y == a);
            let mut halves = [rooted_code(g, a, &cut), rooted_code(g, b, &cut)];
            halves.sort_unstable();
            out.push(b'2');
            out.extend(halves.concat());
        }
        _ => {}
    }
}

pub(crate) fn unicyclic_code(g: &Graph, out: &mut Vec<u8>) {
    let cycle = g.unique_cycle().expect("caller checked unicyclic");
    let k = cycle.len();
    let mut on_cycle = vec![false; g.n()];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    let blocked = |x: usize, y: usize| on_cycle[x] && on_cycle[y];
    let codes: Vec<Vec<u8>> = cycle.iter().map(|&c| rooted_code(g, c, &blocked)).collect();
    let mut best: Option<Vec<u8>> = None;
    for start in 0..k {
        for dir in [1usize, k - 1] {
            let seq: Vec<u8> = (0..k)
                .flat_map(|i| codes[(start + i * dir) % k].iter().copied())
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    out.extend_from_slice(&(k as u32).to_be_bytes());
    out.extend(best.unwrap_or_default());
}
