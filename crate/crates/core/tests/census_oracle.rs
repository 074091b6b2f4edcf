//! Census counts against independent generation routes.

mod common;

use std::collections::BTreeSet;

use common::*;

use dalpha_core::census::{all_connected, all_trees, all_unicyclic, census, filter_census, Census, Family, Filter};
use dalpha_core::graph::families;
use dalpha_core::graph::graph6::{emit_graph6, parse_graph6};
use dalpha_core::Graph;

const TREES: [usize; 13] = [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
const UNICYCLIC: [usize; 12] = [0, 0, 0, 1, 2, 5, 13, 33, 89, 240, 657, 1806];
const CONNECTED: [usize; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];

fn edges_of(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

#[test]
fn tree_counts_match_prufer_oracle() {
    for n in 1..=8 {
        assert_eq!(all_trees(n).unwrap().len(), prufer_trees(n).len(), "n={n}");
    }
}

#[test]
fn tree_counts_match_leaf_extension_oracle() {
    for n in 1..=10 {
        let c = all_trees(n).unwrap();
        assert_eq!(c.len(), leaf_extension_trees(n).len(), "n={n}");
        assert_eq!(c.len(), TREES[n], "n={n}");
        let codes: BTreeSet<String> = c.graphs.iter().map(|g| tree_code(n, &edges_of(g))).collect();
        assert_eq!(codes.len(), c.len(), "duplicate tree at n={n}");
    }
    assert_eq!(all_trees(12).unwrap().len(), TREES[12]);
}

#[test]
fn unicyclic_counts_match_oracle() {
    for n in 3..=9 {
        let c = all_unicyclic(n).unwrap();
        assert_eq!(c.len(), unicyclic_oracle(n), "n={n}");
        assert_eq!(c.len(), UNICYCLIC[n], "n={n}");
        let codes: BTreeSet<String> = c.graphs.iter().map(|g| unicyclic_code(n, &edges_of(g))).collect();
        assert_eq!(codes.len(), c.len(), "duplicate unicyclic graph at n={n}");
    }
}

#[test]
fn connected_counts_match_brute_force() {
    for n in 1..=6 {
        assert_eq!(all_connected(n).unwrap().len(), connected_oracle(n), "n={n}");
    }
    for n in 1..=8 {
        assert_eq!(all_connected(n).unwrap().len(), CONNECTED[n], "n={n}");
    }
}

#[test]
fn caps_are_enforced() {
    assert!(all_trees(13).is_err());
    assert!(all_unicyclic(12).is_err());
    assert!(all_connected(9).is_err());
    assert!(all_unicyclic(2).is_err());
}

#[test]
fn graph6_round_trip_on_every_member() {
    for (family, ns) in [
        (Family::Trees, 1..=10),
        (Family::Unicyclic, 3..=9),
        (Family::Connected, 1..=7),
    ] {
        for n in ns {
            for g in census(family, n).unwrap().graphs {
                assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
            }
        }
    }
}

fn exactly_once(c: &Census, g: &Graph) {
    let hits = c
        .graphs
        .iter()
        .filter(|h| dalpha_core::graph::canonical_form(h).unwrap() == dalpha_core::graph::canonical_form(g).unwrap())
        .count();
    assert_eq!(hits, 1, "{} in {} n={}", emit_graph6(g), c.family, c.n);
}

#[test]
fn named_families_appear_once() {
    for n in 4..=10 {
        let trees = all_trees(n).unwrap();
        exactly_once(&trees, &families::star(n));
        exactly_once(&trees, &families::path(n));
        for d in 2..n {
            exactly_once(&trees, &families::broom(n, d).unwrap());
        }
        for a in 1..=(n - 2) / 2 {
            exactly_once(&trees, &families::double_star(n, a).unwrap());
        }
    }
    for n in 4..=9 {
        let uni = all_unicyclic(n).unwrap();
        exactly_once(&uni, &families::star_plus(n).unwrap());
        exactly_once(&uni, &families::cycle(n).unwrap());
        exactly_once(&uni, &families::kite(n, 3).unwrap());
    }
    for n in 4..=7 {
        let con = all_connected(n).unwrap();
        for w in 2..=n {
            exactly_once(&con, &families::kite(n, w).unwrap());
        }
    }
}

#[test]
fn filters() {
    let t8 = all_trees(8).unwrap();
    let d3 = filter_census(&t8, &Filter::MaxDegree(3)).unwrap();
    exactly_once(&d3, &families::broom(8, 3).unwrap());
    assert!(d3.graphs.iter().all(|g| g.max_degree() == 3));

    let odd = filter_census(&all_unicyclic(7).unwrap(), &Filter::OddCycle).unwrap();
    assert!(odd.graphs.iter().all(|g| g.unique_cycle().unwrap().len() % 2 == 1));
    assert!(odd.len() < all_unicyclic(7).unwrap().len());

    let c5 = all_connected(5).unwrap();
    let w3 = filter_census(&c5, &Filter::Clique(3)).unwrap();
    assert!(w3.graphs.iter().all(|g| dalpha_core::census::clique_number(g).unwrap() == 3));
    let w_all: usize = (1..=5)
        .map(|w| filter_census(&c5, &Filter::Clique(w)).unwrap().len())
        .sum();
    assert_eq!(w_all, c5.len());

    let no_star = filter_census(&t8, &Filter::exclude("star:8").unwrap()).unwrap();
    assert_eq!(no_star.len(), t8.len() - 1);
}

#[test]
fn export_import_round_trip() {
    let dir = std::env::temp_dir().join(format!("dalpha-census-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t7.g6");
    let c = filter_census(&all_trees(7).unwrap(), &Filter::MaxDegree(3)).unwrap();
    c.export(&path).unwrap();
    let back = Census::import(&path).unwrap();
    assert_eq!(back.graphs, c.graphs);
    assert_eq!(back.filters, c.filters);
    std::fs::remove_dir_all(&dir).unwrap();
}
