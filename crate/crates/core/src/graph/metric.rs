use serde::Serialize;

use super::{Graph, MAX_DENSE_ORDER};
use crate::{Error, Result};

/// Exact all-pairs hop distances and the quantities derived from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    n: usize,
    #[serde(skip)]
    dist: Vec<u32>,
    pub transmissions: Vec<u64>,
    /// Sum of distances over unordered pairs.
    pub sigma: u64,
    pub eccentricities: Vec<u32>,
    pub diameter: u32,
}

impl DistanceProfile {
    /// One BFS per vertex. Errors on disconnected input or `n > MAX_DENSE_ORDER`.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        if n > MAX_DENSE_ORDER {
            return Err(Error::TooLarge {
                n,
                limit: MAX_DENSE_ORDER,
                what: "dense distance storage",
            });
        }
        g.require_connected()?;
        let mut dist = vec![0u32; n * n];
        for u in 0..n {
            for (v, d) in g.bfs_distances(u).into_iter().enumerate() {
                dist[u * n + v] = d.ok_or(Error::Disconnected)?;
            }
        }
        let transmissions: Vec<u64> = (0..n)
            .map(|u| dist[u * n..(u + 1) * n].iter().map(|&d| d as u64).sum())
            .collect();
        let sigma = transmissions.iter().sum::<u64>() / 2;
        let eccentricities: Vec<u32> = (0..n)
            .map(|u| dist[u * n..(u + 1) * n].iter().copied().max().unwrap_or(0))
            .collect();
        let diameter = eccentricities.iter().copied().max().unwrap_or(0);
        Ok(DistanceProfile {
            n,
            dist,
            transmissions,
            sigma,
            eccentricities,
            diameter,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn t_min(&self) -> u64 {
        self.transmissions.iter().copied().min().unwrap_or(0)
    }

    pub fn t_max(&self) -> u64 {
        self.transmissions.iter().copied().max().unwrap_or(0)
    }

    pub fn is_transmission_regular(&self) -> bool {
        self.t_min() == self.t_max()
    }

    /// Vertices attaining the minimum transmission, ascending.
    pub fn argmin_transmission(&self) -> Vec<usize> {
        let t = self.t_min();
        (0..self.n).filter(|&u| self.transmissions[u] == t).collect()
    }

    /// Vertices attaining the maximum transmission, ascending.
    pub fn argmax_transmission(&self) -> Vec<usize> {
        let t = self.t_max();
        (0..self.n).filter(|&u| self.transmissions[u] == t).collect()
    }
}

pub fn is_transmission_regular(g: &Graph) -> Result<bool> {
    Ok(DistanceProfile::new(g)?.is_transmission_regular())
}

/// Some vertex of degree `n − 1` whose deletion leaves a regular graph.
pub fn is_dvdr(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 {
        return false;
    }
    (0..n).filter(|&v| g.degree(v) + 1 == n).any(|v| {
        // In G − v every remaining degree drops by exactly one.
        let mut rest = (0..n).filter(|&w| w != v).map(|w| g.degree(w));
        match rest.next() {
            None => true,
            Some(d0) => rest.all(|d| d == d0),
        }
    })
}

/// Transmission characterisation for non-complete graphs: every vertex except
/// one of degree `n − 1` shares a common transmission.
pub fn is_dvdr_by_transmission(g: &Graph) -> Result<bool> {
    let n = g.n();
    let p = DistanceProfile::new(g)?;
    Ok((0..n).filter(|&v| g.degree(v) + 1 == n).any(|v| {
        let mut rest = (0..n).filter(|&w| w != v).map(|w| p.transmissions[w]);
        match rest.next() {
            None => true,
            Some(t0) => rest.all(|t| t == t0),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn complete_graph_profile() {
        let p = DistanceProfile::new(&complete(4)).unwrap();
        assert_eq!(p.transmissions, vec![3; 4]);
        assert_eq!(p.sigma, 6);
        assert_eq!(p.diameter, 1);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(p.dist(u, v), u32::from(u != v));
            }
        }
    }

    #[test]
    fn path_three_profile() {
        let p = DistanceProfile::new(&path(3)).unwrap();
        assert_eq!(p.transmissions, vec![3, 2, 3]);
        assert_eq!(p.sigma, 4);
        assert_eq!(p.diameter, 2);
        assert_eq!(p.eccentricities, vec![2, 1, 2]);
    }

    #[test]
    fn star_plus_sigma() {
        let p = DistanceProfile::new(&star_plus(8).unwrap()).unwrap();
        assert_eq!(p.sigma, 8 * 8 - 2 * 8);
    }

    #[test]
    fn odd_cycle_transmissions() {
        for k in 1..6u64 {
            let n = (2 * k + 1) as usize;
            let p = DistanceProfile::new(&cycle(n).unwrap()).unwrap();
            assert!(p.transmissions.iter().all(|&t| t == k * (k + 1)));
        }
    }

    #[test]
    fn disconnected_profile_errors() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(DistanceProfile::new(&g), Err(Error::Disconnected));
    }

    #[test]
    fn transmission_regularity() {
        assert!(is_transmission_regular(&cycle(5).unwrap()).unwrap());
        assert!(!is_transmission_regular(&star(4)).unwrap());
        assert!(is_transmission_regular(&complete(6)).unwrap());
    }

    #[test]
    fn dvdr_cases() {
        assert!(is_dvdr(&complete(5)));
        assert!(is_dvdr(&star(5)));
        assert!(is_dvdr(&star(3)));
        assert!(!is_dvdr(&path(4)));
        // Wheel W_5: hub joined to C_5.
        let mut w = cycle(5).unwrap();
        let hub = w.push_vertex();
        for v in 0..5 {
            w.insert_edge(hub, v);
        }
        assert!(is_dvdr(&w));
        assert!(is_dvdr_by_transmission(&w).unwrap());
        // Hub on a path: degrees 1,2,2,1 on the rim.
        let mut fan = path(4);
        let hub = fan.push_vertex();
        for v in 0..4 {
            fan.insert_edge(hub, v);
        }
        assert!(!is_dvdr(&fan));
        assert!(!is_dvdr_by_transmission(&fan).unwrap());
    }
}
