//! Graph corpora: exhaustive sweeps over all labeled mixed graphs of a
//! given order, and seeded random streams.
//!
//! Each vertex pair of a labeled mixed graph is in one of four states:
//! absent, undirected, arc low-to-high, arc high-to-low. The exhaustive
//! stream walks these as base-4 odometers; the random stream draws each
//! graph from a ChaCha8 generator keyed purely by (seed, n, trial), so any
//! single graph can be regenerated without replaying the stream.

use hrank::graph::{EdgeRecord, MixedGraph};
use hrank::Error;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CorpusMode {
    Exhaustive,
    Random,
}

/// Probabilities for the three states of a present edge: undirected, arc
/// along the low-to-high direction, arc against it.
pub type OrientationDistribution = [f64; 3];

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    pub n_lo: usize,
    pub n_hi: usize,
    /// Probability that a vertex pair carries an edge (random mode).
    pub edge_probability: f64,
    pub orientation_distribution: OrientationDistribution,
    /// Graphs per order n (random mode).
    pub trials: u64,
    pub seed: u64,
    /// Largest n the exhaustive mode accepts; 4^(n(n-1)/2) graphs is over a
    /// billion already at n = 6.
    pub exhaustive_cap: usize,
}

impl CorpusSpec {
    pub fn exhaustive(n_lo: usize, n_hi: usize) -> CorpusSpec {
        CorpusSpec {
            mode: CorpusMode::Exhaustive,
            n_lo,
            n_hi,
            edge_probability: 0.0,
            orientation_distribution: [1.0, 0.0, 0.0],
            trials: 1,
            seed: 0,
            exhaustive_cap: 5,
        }
    }

    pub fn random(n_lo: usize, n_hi: usize, trials: u64, seed: u64) -> CorpusSpec {
        CorpusSpec {
            mode: CorpusMode::Random,
            n_lo,
            n_hi,
            edge_probability: 0.3,
            orientation_distribution: [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
            trials,
            seed,
            exhaustive_cap: 5,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.n_lo > self.n_hi {
            return Err(Error::InvalidParameters(format!(
                "empty order range {}..{}",
                self.n_lo, self.n_hi
            )));
        }
        match self.mode {
            CorpusMode::Exhaustive => {
                if self.n_hi > self.exhaustive_cap {
                    return Err(Error::InvalidParameters(format!(
                        "exhaustive mode is capped at n = {}, got {}",
                        self.exhaustive_cap, self.n_hi
                    )));
                }
            }
            CorpusMode::Random => {
                if self.trials == 0 {
                    return Err(Error::InvalidParameters("trials must be at least 1".into()));
                }
                if !(0.0..=1.0).contains(&self.edge_probability) {
                    return Err(Error::InvalidParameters(format!(
                        "edge probability {} outside [0, 1]",
                        self.edge_probability
                    )));
                }
                let sum: f64 = self.orientation_distribution.iter().sum();
                if self.orientation_distribution.iter().any(|&p| p < 0.0)
                    || (sum - 1.0).abs() > 1e-9
                {
                    return Err(Error::InvalidParameters(format!(
                        "orientation probabilities {:?} do not sum to 1",
                        self.orientation_distribution
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn iter(&self) -> Result<CorpusIter, Error> {
        self.validate()?;
        Ok(CorpusIter { spec: self.clone(), n: self.n_lo, cursor: 0, done: false })
    }

    /// Exact stream length.
    pub fn len(&self) -> u64 {
        (self.n_lo..=self.n_hi)
            .map(|n| match self.mode {
                CorpusMode::Exhaustive => 4u64.pow(pair_count(n) as u32),
                CorpusMode::Random => self.trials,
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Decodes one labeled mixed graph from per-pair states in lexicographic
/// pair order: 0 absent, 1 undirected, 2 arc u->v, 3 arc v->u (u < v).
pub fn graph_from_states(n: usize, states: &[u8]) -> MixedGraph {
    assert_eq!(states.len(), pair_count(n));
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            match states[k] {
                0 => {}
                1 => edges.push(EdgeRecord::undirected(u, v)),
                2 => edges.push(EdgeRecord::arc(u, v)),
                3 => edges.push(EdgeRecord::arc(v, u)),
                other => panic!("pair state {other} out of range"),
            }
            k += 1;
        }
    }
    MixedGraph::new(n, edges).expect("states encode a simple mixed graph")
}

/// The `trial`-th random graph of order `n` for a stream seed. A pure
/// function of its arguments.
pub fn random_graph(
    n: usize,
    edge_probability: f64,
    orientation: OrientationDistribution,
    seed: u64,
    trial: u64,
) -> MixedGraph {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(n as u64).to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    key[24..32].copy_from_slice(b"mixedcor");
    let mut rng = ChaCha8Rng::from_seed(key);
    let mut states = vec![0u8; pair_count(n)];
    for s in states.iter_mut() {
        if rng.gen::<f64>() >= edge_probability {
            continue;
        }
        let roll = rng.gen::<f64>();
        *s = if roll < orientation[0] {
            1
        } else if roll < orientation[0] + orientation[1] {
            2
        } else {
            3
        };
    }
    graph_from_states(n, &states)
}

/// One corpus element with its position in the stream.
#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub index: u64,
    pub n: usize,
    /// Base-4 code (exhaustive) or trial number (random) within order n.
    pub local: u64,
    pub graph: MixedGraph,
}

pub struct CorpusIter {
    spec: CorpusSpec,
    n: usize,
    cursor: u64,
    done: bool,
}

impl CorpusIter {
    fn per_n(&self) -> u64 {
        match self.spec.mode {
            CorpusMode::Exhaustive => 4u64.pow(pair_count(self.n) as u32),
            CorpusMode::Random => self.spec.trials,
        }
    }

    fn emitted_before(&self) -> u64 {
        (self.spec.n_lo..self.n)
            .map(|n| match self.spec.mode {
                CorpusMode::Exhaustive => 4u64.pow(pair_count(n) as u32),
                CorpusMode::Random => self.spec.trials,
            })
            .sum()
    }
}

impl Iterator for CorpusIter {
    type Item = CorpusItem;

    fn next(&mut self) -> Option<CorpusItem> {
        if self.done {
            return None;
        }
        while self.cursor >= self.per_n() {
            if self.n == self.spec.n_hi {
                self.done = true;
                return None;
            }
            self.n += 1;
            self.cursor = 0;
        }
        let local = self.cursor;
        self.cursor += 1;
        let graph = match self.spec.mode {
            CorpusMode::Exhaustive => {
                let mut states = vec![0u8; pair_count(self.n)];
                let mut code = local;
                for s in states.iter_mut() {
                    *s = (code % 4) as u8;
                    code /= 4;
                }
                graph_from_states(self.n, &states)
            }
            CorpusMode::Random => random_graph(
                self.n,
                self.spec.edge_probability,
                self.spec.orientation_distribution,
                self.spec.seed,
                local,
            ),
        };
        Some(CorpusItem { index: self.emitted_before() + local, n: self.n, local, graph })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn exhaustive_counts() {
        assert_eq!(CorpusSpec::exhaustive(2, 2).iter().unwrap().count(), 4);
        assert_eq!(CorpusSpec::exhaustive(3, 3).iter().unwrap().count(), 64);
        assert_eq!(CorpusSpec::exhaustive(1, 3).iter().unwrap().count(), 1 + 4 + 64);
        assert_eq!(CorpusSpec::exhaustive(1, 3).len(), 69);
    }

    #[test]
    fn exhaustive_yields_distinct_graphs() {
        let seen: HashSet<Vec<u8>> = CorpusSpec::exhaustive(3, 3)
            .iter()
            .unwrap()
            .map(|item| hrank::canon::labeled_encoding(&item.graph))
            .collect();
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn exhaustive_cap_enforced() {
        assert!(CorpusSpec::exhaustive(6, 6).iter().is_err());
    }

    #[test]
    fn random_streams_are_reproducible() {
        let spec = CorpusSpec::random(5, 6, 20, 99);
        let a: Vec<Vec<u8>> = spec
            .iter()
            .unwrap()
            .map(|item| hrank::canon::labeled_encoding(&item.graph))
            .collect();
        let b: Vec<Vec<u8>> = spec
            .iter()
            .unwrap()
            .map(|item| hrank::canon::labeled_encoding(&item.graph))
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
    }

    #[test]
    fn random_trials_independent_of_stream_position() {
        let spec = CorpusSpec::random(4, 4, 10, 7);
        let from_stream: Vec<MixedGraph> =
            spec.iter().unwrap().map(|item| item.graph).collect();
        for (t, g) in from_stream.iter().enumerate() {
            let direct = random_graph(
                4,
                spec.edge_probability,
                spec.orientation_distribution,
                7,
                t as u64,
            );
            assert_eq!(g, &direct);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut spec = CorpusSpec::random(3, 3, 0, 1);
        assert!(spec.validate().is_err());
        spec.trials = 1;
        spec.orientation_distribution = [0.5, 0.2, 0.2];
        assert!(spec.validate().is_err());
        spec.orientation_distribution = [0.5, 0.25, 0.25];
        spec.edge_probability = 1.5;
        assert!(spec.validate().is_err());
    }
}
