//! Canonical forms for labeled mixed graphs.
//!
//! The canonical encoding is the lexicographically smallest edge-kind
//! adjacency encoding over all vertex permutations, so two graphs have equal
//! canonical encodings exactly when they are isomorphic as mixed graphs.

use std::cmp::Ordering;

use crate::graph::{EdgeKind, EdgeRecord, MixedGraph};

const ABSENT: u8 = 0;
const UNDIRECTED: u8 = 1;
const ARC_FWD: u8 = 2;
const ARC_BWD: u8 = 3;

/// Dense pair-state lookup: `st[a*n+b]` describes the record between `a`
/// and `b` from `a`'s perspective.
fn state_matrix(g: &MixedGraph) -> Vec<u8> {
    let n = g.n();
    let mut st = vec![ABSENT; n * n];
    for e in g.edges() {
        match e.kind {
            EdgeKind::Undirected => {
                st[e.u * n + e.v] = UNDIRECTED;
                st[e.v * n + e.u] = UNDIRECTED;
            }
            EdgeKind::Arc => {
                st[e.u * n + e.v] = ARC_FWD;
                st[e.v * n + e.u] = ARC_BWD;
            }
        }
    }
    st
}

/// Pair states in the fixed order (0,1), (0,2), (1,2), (0,3), ... so the
/// encoding grows by `k` bytes when vertex `k` is appended.
fn encode_body(st: &[u8], n: usize, perm: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            out.push(st[perm[i] * n + perm[j]]);
        }
    }
    out
}

/// Encoding of `g` under the identity labeling, prefixed with the vertex
/// count.
pub fn labeled_encoding(g: &MixedGraph) -> Vec<u8> {
    let n = g.n();
    let perm: Vec<usize> = (0..n).collect();
    let mut out = (n as u32).to_le_bytes().to_vec();
    out.extend(encode_body(&state_matrix(g), n, &perm));
    out
}

struct Search<'a> {
    st: &'a [u8],
    n: usize,
    order: &'a [usize],
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Vec<u8>,
}

impl Search<'_> {
    /// Depth-first minimization. A branch is pruned as soon as its partial
    /// encoding exceeds the matching prefix of the incumbent best.
    fn dfs(&mut self) {
        let k = self.perm.len();
        if k == self.n {
            if self.cur < self.best {
                self.best.clone_from(&self.cur);
            }
            return;
        }
        for idx in 0..self.n {
            let cand = self.order[idx];
            if self.used[cand] {
                continue;
            }
            let off = self.cur.len();
            for i in 0..k {
                self.cur.push(self.st[self.perm[i] * self.n + cand]);
            }
            if self.cur.as_slice().cmp(&self.best[..self.cur.len()]) == Ordering::Greater {
                self.cur.truncate(off);
                continue;
            }
            self.used[cand] = true;
            self.perm.push(cand);
            self.dfs();
            self.perm.pop();
            self.used[cand] = false;
            self.cur.truncate(off);
        }
    }
}

/// Lexicographically smallest encoding over all vertex permutations.
pub fn canonical_encoding(g: &MixedGraph) -> Vec<u8> {
    let n = g.n();
    if n <= 1 {
        return labeled_encoding(g);
    }
    let st = state_matrix(g);
    // Low-degree vertices first tends to reach small encodings early, which
    // strengthens pruning; correctness does not depend on the order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let seed = encode_body(&st, n, &order);
    let mut search = Search {
        st: &st,
        n,
        order: &order,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(seed.len()),
        best: seed,
    };
    search.dfs();
    let mut out = (n as u32).to_le_bytes().to_vec();
    out.extend(search.best);
    out
}

/// Rebuilds the graph described by an encoding produced above.
pub fn decode_encoding(bytes: &[u8]) -> MixedGraph {
    let n = u32::from_le_bytes(bytes[..4].try_into().expect("encoding header")) as usize;
    let body = &bytes[4..];
    let mut edges = Vec::new();
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            match body[pos] {
                ABSENT => {}
                UNDIRECTED => edges.push(EdgeRecord::undirected(i, j)),
                ARC_FWD => edges.push(EdgeRecord::arc(i, j)),
                ARC_BWD => edges.push(EdgeRecord::arc(j, i)),
                other => panic!("invalid state byte {other}"),
            }
            pos += 1;
        }
    }
    MixedGraph::new(n, edges).expect("encoding describes a valid graph")
}

/// Canonical representative: the graph relabeled by its minimizing
/// permutation.
pub fn canonical_graph(g: &MixedGraph) -> MixedGraph {
    decode_encoding(&canonical_encoding(g))
}
