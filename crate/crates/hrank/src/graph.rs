//! Mixed graphs and their structural reductions.
//!
//! A mixed graph has simple undirected edges and arcs on a fixed vertex set
//! `0..n`. All values are immutable after construction; every reduction
//! returns a new graph, so graphs can be shared freely across worker threads.

use crate::error::{Budgets, Error};

/// Kind of a single edge record.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EdgeKind {
    Undirected,
    /// Directed from `u` to `v` of the owning record.
    Arc,
}

/// Orientation request for constructor edge lists, relative to the
/// construction traversal order of each edge.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeOrientation {
    Undirected,
    /// Arc along the traversal direction.
    Forward,
    /// Arc against the traversal direction.
    Backward,
}

/// One edge of a mixed graph. Undirected records are normalized to `u < v`;
/// arc records keep `u` as the tail and `v` as the head.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub kind: EdgeKind,
}

impl EdgeRecord {
    pub fn undirected(u: usize, v: usize) -> EdgeRecord {
        EdgeRecord { u: u.min(v), v: u.max(v), kind: EdgeKind::Undirected }
    }

    /// Arc from `u` to `v`.
    pub fn arc(u: usize, v: usize) -> EdgeRecord {
        EdgeRecord { u, v, kind: EdgeKind::Arc }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn other_endpoint(&self, w: usize) -> usize {
        debug_assert!(self.touches(w));
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    fn sort_key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Simple mixed graph on vertices `0..n`.
///
/// Edge records are sorted by endpoint pair at construction, so two graphs
/// with the same labeled edge set compare equal and edge indices are
/// deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedGraph {
    n: usize,
    edges: Vec<EdgeRecord>,
    adj_off: Vec<u32>,
    adj: Vec<(u32, u32)>,
}

impl MixedGraph {
    pub fn new(n: usize, mut edges: Vec<EdgeRecord>) -> Result<MixedGraph, Error> {
        for e in &mut edges {
            if e.u >= n {
                return Err(Error::VertexOutOfRange { vertex: e.u, n });
            }
            if e.v >= n {
                return Err(Error::VertexOutOfRange { vertex: e.v, n });
            }
            if e.u == e.v {
                return Err(Error::LoopEdge { vertex: e.u });
            }
            if e.kind == EdgeKind::Undirected && e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        edges.sort_by_key(|e| e.sort_key());
        for w in edges.windows(2) {
            if w[0].sort_key() == w[1].sort_key() {
                let (u, v) = w[0].sort_key();
                return Err(Error::DuplicateEdge { u, v });
            }
        }

        let mut adj_off = vec![0u32; n + 1];
        for e in &edges {
            adj_off[e.u + 1] += 1;
            adj_off[e.v + 1] += 1;
        }
        for k in 0..n {
            adj_off[k + 1] += adj_off[k];
        }
        let mut adj = vec![(0u32, 0u32); 2 * edges.len()];
        let mut cursor = adj_off.clone();
        for (idx, e) in edges.iter().enumerate() {
            adj[cursor[e.u] as usize] = (e.v as u32, idx as u32);
            cursor[e.u] += 1;
            adj[cursor[e.v] as usize] = (e.u as u32, idx as u32);
            cursor[e.v] += 1;
        }
        Ok(MixedGraph { n, edges, adj_off, adj })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> MixedGraph {
        MixedGraph::new(n, Vec::new()).expect("edgeless graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        (self.adj_off[v + 1] - self.adj_off[v]) as usize
    }

    /// Iterates `(neighbor, edge index)` pairs of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj[self.adj_off[v] as usize..self.adj_off[v + 1] as usize]
            .iter()
            .map(|&(nb, e)| (nb as usize, e as usize))
    }

    /// Index of the record joining `u` and `v` in either direction, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).find(|&(nb, _)| nb == v).map(|(_, e)| e)
    }

    /// Induced subgraph on `keep` (strictly increasing vertex list).
    /// Returns the subgraph and the map from new index to old index.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (MixedGraph, Vec<usize>) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| old_to_new[e.u] != usize::MAX && old_to_new[e.v] != usize::MAX)
            .map(|e| EdgeRecord { u: old_to_new[e.u], v: old_to_new[e.v], kind: e.kind })
            .collect();
        let g = MixedGraph::new(keep.len(), edges).expect("induced subgraph of a valid graph");
        (g, keep.to_vec())
    }

    /// Induced subgraph after removing the vertices in `remove`.
    pub fn delete_vertices(&self, remove: &[usize]) -> (MixedGraph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Two-colorability of the underlying graph.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = Vec::new();
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push(start);
            while let Some(v) = queue.pop() {
                for (nb, _) in self.neighbors(v) {
                    if color[nb] == u8::MAX {
                        color[nb] = 1 - color[v];
                        queue.push(nb);
                    } else if color[nb] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        component_ids(self).1 <= 1
    }
}

/// A simple cycle of the underlying graph with its traversal data.
///
/// `vertices` lists the traversal order starting at the smallest vertex;
/// `edges[i]` joins `vertices[i]` to `vertices[(i+1) % len]`. `forward` and
/// `backward` count arcs agreeing/disagreeing with that traversal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub forward: usize,
    pub backward: usize,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.len() % 2 == 0
    }

    /// Signature `|forward - backward|`.
    pub fn sigma(&self) -> usize {
        self.forward.abs_diff(self.backward)
    }

    /// Signed arc excess `forward - backward` under the stored traversal.
    pub fn net(&self) -> i64 {
        self.forward as i64 - self.backward as i64
    }

    /// Signature congruent to the length mod 4 (the recurring condition
    /// `sigma(C_q) = q (mod 4)` for even cycles).
    pub fn sigma_congruent_len_mod4(&self) -> bool {
        (self.sigma() % 4) == (self.len() % 4)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertex_mask(&self) -> u64 {
        let mut mask = 0u64;
        for &v in &self.vertices {
            debug_assert!(v < 64);
            mask |= 1 << v;
        }
        mask
    }
}

/// Structural facts gathered in one pass: component count `omega`,
/// cyclomatic number `c`, even-cycle count `kappa`, the full simple-cycle
/// list, and the pendant structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureSummary {
    pub omega: usize,
    pub c: usize,
    pub kappa: usize,
    pub cycles: Vec<Cycle>,
    pub pendant_vertices: Vec<usize>,
    pub pendant_cycles: Vec<Cycle>,
}

impl StructureSummary {
    /// True iff every pair of cycles (restricted to even cycles when
    /// `even_only`) has disjoint vertex sets.
    pub fn cycles_disjoint(&self, even_only: bool) -> bool {
        let mut seen = 0u64;
        for cyc in &self.cycles {
            if even_only && !cyc.is_even() {
                continue;
            }
            let mask = cyc.vertex_mask();
            if seen & mask != 0 {
                return false;
            }
            seen |= mask;
        }
        true
    }
}

fn component_ids(g: &MixedGraph) -> (Vec<usize>, usize) {
    let mut id = vec![usize::MAX; g.n()];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..g.n() {
        if id[start] != usize::MAX {
            continue;
        }
        id[start] = count;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for (nb, _) in g.neighbors(v) {
                if id[nb] == usize::MAX {
                    id[nb] = count;
                    stack.push(nb);
                }
            }
        }
        count += 1;
    }
    (id, count)
}

/// Connected components with their vertex maps (new index -> old index).
pub fn components(g: &MixedGraph) -> Vec<(MixedGraph, Vec<usize>)> {
    let (id, count) = component_ids(g);
    let mut vertex_lists = vec![Vec::new(); count];
    for v in 0..g.n() {
        vertex_lists[id[v]].push(v);
    }
    vertex_lists.into_iter().map(|keep| g.induced_subgraph(&keep)).collect()
}

/// Enumerates every simple cycle of the underlying graph exactly once and
/// feeds it to `emit`. Cycles are rooted at their smallest vertex and
/// direction-normalized by requiring the second vertex to be smaller than
/// the last.
fn for_each_cycle(
    g: &MixedGraph,
    budgets: &Budgets,
    mut emit: impl FnMut(Cycle),
) -> Result<(), Error> {
    let n = g.n();
    let mut path: Vec<usize> = Vec::new();
    let mut path_edges: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];
    let mut found = 0usize;

    // Iterative DFS: each frame remembers which adjacency slot to resume at.
    let mut slots: Vec<usize> = Vec::new();
    for start in 0..n {
        path.clear();
        path_edges.clear();
        path.push(start);
        on_path[start] = true;
        slots.clear();
        slots.push(0);
        while !slots.is_empty() {
            let depth = slots.len() - 1;
            let v = path[depth];
            let slot = slots[depth];
            let adj = &g.adj[g.adj_off[v] as usize..g.adj_off[v + 1] as usize];
            if slot == adj.len() {
                slots.pop();
                on_path[v] = false;
                path.pop();
                path_edges.pop();
                continue;
            }
            slots[depth] += 1;
            let (nb, eidx) = (adj[slot].0 as usize, adj[slot].1 as usize);
            if nb == start && depth >= 2 {
                if path[1] < path[depth] {
                    found += 1;
                    if found > budgets.cycles {
                        return Err(Error::CycleBudgetExceeded { budget: budgets.cycles });
                    }
                    let mut edges = path_edges.clone();
                    edges.push(eidx);
                    emit(build_cycle(g, path.clone(), edges));
                }
            } else if nb > start && !on_path[nb] {
                on_path[nb] = true;
                path.push(nb);
                path_edges.push(eidx);
                slots.push(0);
            }
        }
        on_path[start] = false;
    }
    Ok(())
}

fn build_cycle(g: &MixedGraph, vertices: Vec<usize>, edges: Vec<usize>) -> Cycle {
    let q = vertices.len();
    let mut forward = 0;
    let mut backward = 0;
    for k in 0..q {
        let rec = &g.edges()[edges[k]];
        if rec.kind == EdgeKind::Arc {
            if rec.u == vertices[k] {
                forward += 1;
            } else {
                backward += 1;
            }
        }
    }
    Cycle { vertices, edges, forward, backward }
}

/// Full structural summary of `g`.
pub fn structure_summary(g: &MixedGraph, budgets: &Budgets) -> Result<StructureSummary, Error> {
    let (_, omega) = component_ids(g);
    let mut cycles = Vec::new();
    for_each_cycle(g, budgets, |c| cycles.push(c))?;
    let kappa = cycles.iter().filter(|c| c.is_even()).count();
    let c = g.edge_count() + omega - g.n();
    let pendant_vertices = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    let pendant_cycles = cycles
        .iter()
        .filter(|cyc| {
            let mut deg3 = 0;
            for &v in &cyc.vertices {
                match g.degree(v) {
                    2 => {}
                    3 => deg3 += 1,
                    _ => return false,
                }
            }
            deg3 == 1
        })
        .cloned()
        .collect();
    Ok(StructureSummary { omega, c, kappa, cycles, pendant_vertices, pendant_cycles })
}

/// Recomputes the signature of `cyc` from the live records of `g`.
pub fn signature(g: &MixedGraph, cyc: &Cycle) -> usize {
    let q = cyc.vertices.len();
    let mut forward = 0i64;
    let mut backward = 0i64;
    for k in 0..q {
        let (a, b) = (cyc.vertices[k], cyc.vertices[(k + 1) % q]);
        let eidx = g.edge_between(a, b).expect("cycle edge present in graph");
        let rec = &g.edges()[eidx];
        if rec.kind == EdgeKind::Arc {
            if rec.u == a {
                forward += 1;
            } else {
                backward += 1;
            }
        }
    }
    forward.abs_diff(backward) as usize
}

/// True iff the (even, when flagged) cycles of `g` are pairwise
/// vertex-disjoint.
pub fn cycles_pairwise_disjoint(
    g: &MixedGraph,
    even_only: bool,
    budgets: &Budgets,
) -> Result<bool, Error> {
    Ok(structure_summary(g, budgets)?.cycles_disjoint(even_only))
}

/// Cycles with exactly one vertex of host-degree 3 and the rest of degree 2.
pub fn pendant_cycles(g: &MixedGraph, budgets: &Budgets) -> Result<Vec<Cycle>, Error> {
    Ok(structure_summary(g, budgets)?.pendant_cycles)
}

/// Removes pendant vertex `x` together with its unique neighbor.
pub fn pendant_k2_delete(g: &MixedGraph, x: usize) -> Result<MixedGraph, Error> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
    }
    if g.degree(x) != 1 {
        return Err(Error::NotPendant { vertex: x });
    }
    let (y, _) = g.neighbors(x).next().expect("degree-1 vertex has a neighbor");
    Ok(g.delete_vertices(&[x, y]).0)
}

/// Contracts each cycle to a single cyclic vertex.
///
/// Returns `(T_G, [T_G], cyclic_vertex_ids)` where `[T_G]` is `T_G` minus
/// the cyclic vertices. Requires all cycles pairwise vertex-disjoint.
pub fn contract_cycles(
    g: &MixedGraph,
    budgets: &Budgets,
) -> Result<(MixedGraph, MixedGraph, Vec<usize>), Error> {
    let summary = structure_summary(g, budgets)?;
    if !summary.cycles_disjoint(false) {
        return Err(Error::CyclesNotDisjoint);
    }
    let mut cycle_of = vec![usize::MAX; g.n()];
    for (cidx, cyc) in summary.cycles.iter().enumerate() {
        for &v in &cyc.vertices {
            cycle_of[v] = cidx;
        }
    }
    let plain: Vec<usize> = (0..g.n()).filter(|&v| cycle_of[v] == usize::MAX).collect();
    let mut map = vec![usize::MAX; g.n()];
    for (new, &old) in plain.iter().enumerate() {
        map[old] = new;
    }
    let cyclic_ids: Vec<usize> = (0..summary.cycles.len()).map(|k| plain.len() + k).collect();
    for v in 0..g.n() {
        if cycle_of[v] != usize::MAX {
            map[v] = cyclic_ids[cycle_of[v]];
        }
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        let (mu, mv) = (map[e.u], map[e.v]);
        if mu != mv {
            edges.push(EdgeRecord { u: mu, v: mv, kind: e.kind });
        }
    }
    let t_g = MixedGraph::new(plain.len() + cyclic_ids.len(), edges)
        .expect("disjoint cycles cannot produce parallel contracted edges");
    let bracket = t_g.induced_subgraph(&(0..plain.len()).collect::<Vec<_>>()).0;
    Ok((t_g, bracket, cyclic_ids))
}

fn apply_orientation(u: usize, v: usize, o: EdgeOrientation) -> EdgeRecord {
    match o {
        EdgeOrientation::Undirected => EdgeRecord::undirected(u, v),
        EdgeOrientation::Forward => EdgeRecord::arc(u, v),
        EdgeOrientation::Backward => EdgeRecord::arc(v, u),
    }
}

/// Two cycles `C_p` and `C_q` joined by a path on `l` vertices (`l = 1`
/// shares a single vertex). Orientations follow the construction order:
/// first the `p` edges of `C_p` from its join vertex, then the `l-1` path
/// edges, then the `q` edges of `C_q` from its join vertex.
pub fn construct_infinity(
    p: usize,
    l: usize,
    q: usize,
    orientations: &[EdgeOrientation],
) -> Result<MixedGraph, Error> {
    if p < 3 || q < 3 || l < 1 {
        return Err(Error::InvalidParameters(format!(
            "infinity(p,l,q) needs p,q >= 3 and l >= 1, got ({p},{l},{q})"
        )));
    }
    let edge_count = p + q + l - 1;
    if orientations.len() != edge_count {
        return Err(Error::InvalidParameters(format!(
            "expected {edge_count} orientations, got {}",
            orientations.len()
        )));
    }
    let n = p + q + l - 2;
    let mut pairs = Vec::with_capacity(edge_count);
    // C_p on 0..p, joined at vertex 0.
    for k in 0..p {
        pairs.push((k, (k + 1) % p));
    }
    // Path from vertex 0 to the join vertex of C_q.
    let join_q = if l == 1 {
        0
    } else {
        let mut prev = 0;
        for k in 0..l - 1 {
            let next = p + k;
            pairs.push((prev, next));
            prev = next;
        }
        prev
    };
    // C_q through join_q on fresh vertices.
    let base = p + l - 2;
    let cq: Vec<usize> =
        std::iter::once(join_q).chain((0..q - 1).map(|k| base + 1 + k)).collect();
    for k in 0..q {
        pairs.push((cq[k], cq[(k + 1) % q]));
    }
    let edges = pairs
        .into_iter()
        .zip(orientations)
        .map(|((u, v), &o)| apply_orientation(u, v, o))
        .collect();
    MixedGraph::new(n, edges)
}

/// Three internally disjoint paths on `p`, `l`, `q` vertices joined at both
/// endpoints. Orientations follow the construction order: the edges of
/// `P_p`, then `P_l`, then `P_q`, each walked from hub 0 to hub 1.
pub fn construct_theta(
    p: usize,
    l: usize,
    q: usize,
    orientations: &[EdgeOrientation],
) -> Result<MixedGraph, Error> {
    if p.min(l).min(q) < 2 {
        return Err(Error::InvalidParameters(format!(
            "theta(p,l,q) needs min >= 2, got ({p},{l},{q})"
        )));
    }
    if [p, l, q].iter().filter(|&&s| s == 2).count() > 1 {
        return Err(Error::InvalidParameters(format!(
            "theta(p,l,q) allows at most one of p,l,q to be 2, got ({p},{l},{q})"
        )));
    }
    let n = p + l + q - 4;
    let edge_count = (p - 1) + (l - 1) + (q - 1);
    if orientations.len() != edge_count {
        return Err(Error::InvalidParameters(format!(
            "expected {edge_count} orientations, got {}",
            orientations.len()
        )));
    }
    let mut pairs = Vec::with_capacity(edge_count);
    let mut next_internal = 2;
    for size in [p, l, q] {
        let mut prev = 0;
        for _ in 0..size - 2 {
            pairs.push((prev, next_internal));
            prev = next_internal;
            next_internal += 1;
        }
        pairs.push((prev, 1));
    }
    let edges = pairs
        .into_iter()
        .zip(orientations)
        .map(|((u, v), &o)| apply_orientation(u, v, o))
        .collect();
    MixedGraph::new(n, edges)
}

/// Coalesces vertex `x_h` of `h` with vertex `x_c` of `c` into one vertex.
///
/// The result keeps `h`'s vertex labels; the remaining vertices of `c` are
/// appended after them in order.
pub fn identify_vertex(
    h: &MixedGraph,
    x_h: usize,
    c: &MixedGraph,
    x_c: usize,
) -> Result<MixedGraph, Error> {
    if x_h >= h.n() {
        return Err(Error::VertexOutOfRange { vertex: x_h, n: h.n() });
    }
    if x_c >= c.n() {
        return Err(Error::VertexOutOfRange { vertex: x_c, n: c.n() });
    }
    let n = h.n() + c.n() - 1;
    let mut map = vec![usize::MAX; c.n()];
    map[x_c] = x_h;
    let mut next = h.n();
    for v in 0..c.n() {
        if v != x_c {
            map[v] = next;
            next += 1;
        }
    }
    let mut edges: Vec<EdgeRecord> = h.edges().to_vec();
    edges.extend(
        c.edges().iter().map(|e| EdgeRecord { u: map[e.u], v: map[e.v], kind: e.kind }),
    );
    MixedGraph::new(n, edges).map_err(|err| match err {
        Error::DuplicateEdge { .. } => Error::WouldCreateMultiedge,
        other => other,
    })
}
