//! Slow reference implementations used by the test suites to cross-check
//! the production algorithms. Everything here favors obviousness over
//! speed: blunt include/exclude recursion, cofactor determinants,
//! permutation sweeps, and base-3 odometers. Nothing in the library proper
//! may call into this module.

use crate::gaussian::{GaussianInt, GaussianIntMatrix};
use crate::graph::MixedGraph;

/// Maximum matching size by include/exclude over the edge list.
pub fn brute_max_matching(g: &MixedGraph) -> usize {
    fn rec(pairs: &[(usize, usize)], idx: usize, used: u64) -> usize {
        if idx == pairs.len() {
            return 0;
        }
        let mut best = rec(pairs, idx + 1, used);
        let (u, v) = pairs[idx];
        if used & (1 << u) == 0 && used & (1 << v) == 0 {
            best = best.max(1 + rec(pairs, idx + 1, used | (1 << u) | (1 << v)));
        }
        best
    }
    assert!(g.n() <= 64);
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    rec(&pairs, 0, 0)
}

/// Whether some simple path alternates unmatched/matched edges between two
/// unsaturated vertices. `matching` holds edge indices.
pub fn exists_augmenting_path(g: &MixedGraph, matching: &[usize]) -> bool {
    assert!(g.n() <= 64);
    let mut mate = vec![usize::MAX; g.n()];
    for &e in matching {
        let rec = &g.edges()[e];
        mate[rec.u] = rec.v;
        mate[rec.v] = rec.u;
    }
    fn dfs(g: &MixedGraph, mate: &[usize], v: usize, via_matched: bool, visited: u64) -> bool {
        for (w, _) in g.neighbors(v) {
            if visited & (1 << w) != 0 {
                continue;
            }
            if via_matched {
                if mate[v] == w && dfs(g, mate, w, false, visited | (1 << w)) {
                    return true;
                }
            } else if mate[v] != w {
                if mate[w] == usize::MAX {
                    return true;
                }
                if dfs(g, mate, w, true, visited | (1 << w)) {
                    return true;
                }
            }
        }
        false
    }
    (0..g.n()).any(|v| mate[v] == usize::MAX && dfs(g, &mate, v, false, 1 << v))
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &GaussianIntMatrix) -> GaussianInt {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    if n == 0 {
        return GaussianInt::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut det = GaussianInt::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = GaussianIntMatrix::from_fn(n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j).mul(&det_cofactor(&minor));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank as the largest order of a nonvanishing minor.
pub fn minor_rank(m: &GaussianIntMatrix) -> usize {
    let max = m.rows().min(m.cols());
    assert!(max <= 7, "cofactor minors are only for small matrices");
    for k in (1..=max).rev() {
        for rows in subsets_of_size(m.rows(), k) {
            for cols in subsets_of_size(m.cols(), k) {
                let sub = GaussianIntMatrix::from_fn(k, k, |r, c| {
                    m.get(rows[r], cols[c]).clone()
                });
                if !det_cofactor(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

type Poly = Vec<GaussianInt>;

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![GaussianInt::zero(); a.len().max(b.len())];
    for (k, v) in a.iter().enumerate() {
        out[k] = out[k].add(v);
    }
    for (k, v) in b.iter().enumerate() {
        out[k] = out[k].add(v);
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![GaussianInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn det_poly(mat: &[Vec<Poly>]) -> Poly {
    let n = mat.len();
    if n == 0 {
        return vec![GaussianInt::one()];
    }
    let mut det: Poly = vec![];
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| mat[r][c].clone())
                    .collect()
            })
            .collect();
        let mut term = poly_mul(&mat[0][j], &det_poly(&minor));
        if j % 2 == 1 {
            term = term.iter().map(|v| v.neg()).collect();
        }
        det = poly_add(&det, &term);
    }
    det
}

/// Characteristic polynomial det(xI - M) by cofactor expansion over
/// Gaussian-integer polynomials; coefficients from the leading power down.
pub fn charpoly_cofactor(m: &GaussianIntMatrix) -> Vec<GaussianInt> {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    assert!(n <= 7, "cofactor characteristic polynomials are only for small matrices");
    let mat: Vec<Vec<Poly>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        vec![m.get(r, c).neg(), GaussianInt::one()]
                    } else {
                        vec![m.get(r, c).neg()]
                    }
                })
                .collect()
        })
        .collect();
    let mut asc = det_poly(&mat);
    asc.resize(n + 1, GaussianInt::zero());
    asc.reverse();
    asc
}

/// Every simple cycle by vertex set: returns `(vertex_mask, count)` pairs
/// sorted by mask, counting Hamiltonian cycles of each induced selection by
/// permutation sweep.
pub fn cycle_census(g: &MixedGraph) -> Vec<(u64, usize)> {
    let n = g.n();
    assert!(n <= 10, "permutation census is only for small graphs");
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if verts.len() < 3 {
            continue;
        }
        let count = hamiltonian_cycle_count(g, &verts);
        if count > 0 {
            out.push((mask, count));
        }
    }
    out
}

fn hamiltonian_cycle_count(g: &MixedGraph, verts: &[usize]) -> usize {
    // Anchor at verts[0], walk every permutation of the rest, and halve for
    // the two traversal directions.
    fn rec(g: &MixedGraph, anchor: usize, prev: usize, rest: &mut Vec<usize>, hits: &mut usize) {
        if rest.is_empty() {
            if g.edge_between(prev, anchor).is_some() {
                *hits += 1;
            }
            return;
        }
        for k in 0..rest.len() {
            let v = rest.swap_remove(k);
            if g.edge_between(prev, v).is_some() {
                rec(g, anchor, v, rest, hits);
            }
            rest.push(v);
            let last = rest.len() - 1;
            rest.swap(k, last);
        }
    }
    let mut hits = 0;
    let mut rest = verts[1..].to_vec();
    rec(g, verts[0], verts[0], &mut rest, &mut hits);
    hits / 2
}

/// Doubled fractional matching number via its structure: the best total
/// over a set of vertex-disjoint odd cycles at weight one-half plus a
/// matching on the remaining vertices.
pub fn structural_fractional_doubled(g: &MixedGraph) -> usize {
    let odd_masks: Vec<u64> = cycle_census(g)
        .into_iter()
        .filter(|(mask, _)| mask.count_ones() % 2 == 1)
        .map(|(mask, _)| mask)
        .collect();
    fn rec(g: &MixedGraph, masks: &[u64], idx: usize, used: u64, weight: usize) -> usize {
        if idx == masks.len() {
            let keep: Vec<usize> =
                (0..g.n()).filter(|&v| used & (1 << v) == 0).collect();
            let (rest, _) = g.induced_subgraph(&keep);
            return weight + 2 * brute_max_matching(&rest);
        }
        let mut best = rec(g, masks, idx + 1, used, weight);
        if masks[idx] & used == 0 {
            best = best.max(rec(
                g,
                masks,
                idx + 1,
                used | masks[idx],
                weight + masks[idx].count_ones() as usize,
            ));
        }
        best
    }
    rec(g, &odd_masks, 0, 0, 0)
}

/// All optimal fractional matchings by base-3 sweep over doubled edge
/// weights: maximum total first, then maximum number of weight-1 edges.
/// Returns the doubled optimum and the sorted weight vectors.
pub fn fractional_optima_bruteforce(g: &MixedGraph) -> (usize, Vec<Vec<u8>>) {
    let e = g.edge_count();
    assert!(e <= 13, "base-3 sweep is only for small edge counts");
    let mut best_total = 0usize;
    let mut best_ones = 0usize;
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut w = vec![0u8; e];
    loop {
        let mut loads = vec![0u8; g.n()];
        let mut valid = true;
        for (k, rec) in g.edges().iter().enumerate() {
            loads[rec.u] += w[k];
            loads[rec.v] += w[k];
        }
        for &l in &loads {
            if l > 2 {
                valid = false;
                break;
            }
        }
        if valid {
            let total: usize = w.iter().map(|&x| x as usize).sum();
            let ones = w.iter().filter(|&&x| x == 2).count();
            if total > best_total || (total == best_total && ones > best_ones) {
                best_total = total;
                best_ones = ones;
                out.clear();
            }
            if total == best_total && ones == best_ones {
                out.push(w.clone());
            }
        }
        let mut k = 0;
        while k < e && w[k] == 2 {
            w[k] = 0;
            k += 1;
        }
        if k == e {
            break;
        }
        w[k] += 1;
    }
    out.sort();
    (best_total, out)
}
