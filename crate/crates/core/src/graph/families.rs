//! Named graph families that appear as extremal graphs.
//!
//! Vertex layouts are fixed so tests can refer to specific vertices:
//! stars and brooms use vertex 0 as the hub, kites put the clique on
//! `0..ω` with the tail attached at `ω − 1`.

use super::Graph;
use crate::{Error, Result};

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edge_list(n, &edges).expect("family constructors produce valid edges")
}

/// `K_n`.
pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `P_n` as `0 − 1 − … − (n−1)`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|v| (v - 1, v)))
}

/// `S_n` with centre 0.
pub fn star(n: usize) -> Graph {
    build(n, (1..n).map(|v| (0, v)))
}

/// `C_n`, `n ≥ 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(build(n, (0..n).map(|v| (v, (v + 1) % n))))
}

/// `S_n^+`: the star plus an edge between leaves 1 and 2, `n ≥ 3`.
pub fn star_plus(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition(format!("S_n^+ needs n >= 3, got {n}")));
    }
    Ok(build(n, (1..n).map(|v| (0, v)).chain([(1, 2)])))
}

/// `D_{n,a}`: centres 0 (with `a` leaves) and `a + 1` (with `n − a − 2` leaves)
/// joined by an edge; `1 ≤ a ≤ ⌊(n−2)/2⌋`.
pub fn double_star(n: usize, a: usize) -> Result<Graph> {
    if n < 4 || a < 1 || a > (n - 2) / 2 {
        return Err(Error::Precondition(format!(
            "D_(n,a) needs n >= 4 and 1 <= a <= floor((n-2)/2), got n = {n}, a = {a}"
        )));
    }
    let v = a + 1;
    Ok(build(
        n,
        (1..=a)
            .map(|w| (0, w))
            .chain([(0, v)])
            .chain((v + 1..n).map(move |w| (v, w))),
    ))
}

/// `B_{n,Δ}`: path `0 − 1 − … − (n−Δ)` with `Δ − 1` extra leaves on vertex 0;
/// `2 ≤ Δ ≤ n − 1`.
pub fn broom(n: usize, delta: usize) -> Result<Graph> {
    if delta < 2 || delta + 1 > n {
        return Err(Error::Precondition(format!(
            "B_(n,D) needs 2 <= D <= n-1, got n = {n}, D = {delta}"
        )));
    }
    let spine = n - delta + 1;
    Ok(build(
        n,
        (1..spine)
            .map(|v| (v - 1, v))
            .chain((spine..n).map(|w| (0, w))),
    ))
}

/// `Ki_{n,ω}`: `K_ω` on `0..ω` with a pendant path of `n − ω` vertices at `ω − 1`;
/// `2 ≤ ω ≤ n`.
pub fn kite(n: usize, omega: usize) -> Result<Graph> {
    if omega < 2 || omega > n {
        return Err(Error::Precondition(format!(
            "Ki_(n,w) needs 2 <= w <= n, got n = {n}, w = {omega}"
        )));
    }
    let clique = (0..omega).flat_map(|u| (u + 1..omega).map(move |v| (u, v)));
    let tail = (omega..n).map(|v| (v - 1, v));
    Ok(build(n, clique.chain(tail)))
}

/// The Petersen graph (3-regular, diameter 2).
pub fn petersen() -> Graph {
    build(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
}

/// Parse `name:params`, e.g. `path:5`, `broom:7,3`, `kite:6,4`, `petersen`.
pub fn named(spec: &str) -> Result<Graph> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Precondition(format!("bad parameters in {spec:?}: {e}")))?
    };
    let arity = |k: usize| -> Result<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{name} takes {k} parameter(s), got {spec:?}")))
        }
    };
    match name.trim() {
        "complete" => arity(1).map(|_| complete(nums[0])),
        "path" => arity(1).map(|_| path(nums[0])),
        "star" => arity(1).map(|_| star(nums[0])),
        "cycle" => arity(1).and_then(|_| cycle(nums[0])),
        "star_plus" => arity(1).and_then(|_| star_plus(nums[0])),
        "double_star" => arity(2).and_then(|_| double_star(nums[0], nums[1])),
        "broom" => arity(2).and_then(|_| broom(nums[0], nums[1])),
        "kite" => arity(2).and_then(|_| kite(nums[0], nums[1])),
        "petersen" => arity(0).map(|_| petersen()),
        other => Err(Error::Precondition(format!("unknown graph family {other:?}"))),
    }
}
