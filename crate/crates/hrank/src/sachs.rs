//! Basic-subgraph enumeration and the coefficient formula it feeds, plus
//! the closed-form rank rules for lone cycles and one-vertex coalescences.
//!
//! A basic subgraph is a vertex-disjoint union of single edges and cycles in
//! which every cycle has even signature. The characteristic polynomial
//! coefficient of order `i` is the signed sum `(-1)^(sigma/2 + omega) * 2^beta`
//! over all basic subgraphs covering exactly `i` vertices.

use crate::error::{Budgets, Error};
use crate::graph::{structure_summary, Cycle, MixedGraph};
use crate::int::Int;

#[derive(Clone, Debug)]
pub struct BasicSubgraph {
    /// Edge indices of the K2 components.
    pub k2_edges: Vec<usize>,
    pub cycles: Vec<Cycle>,
    /// Covered vertex count.
    pub order: usize,
    /// Component count.
    pub omega: usize,
    /// Cycle count.
    pub beta: usize,
    /// Sum of per-cycle (forward - backward) under the stored traversals;
    /// always even because each cycle has even signature.
    pub sigma_total: i64,
}

impl BasicSubgraph {
    /// The sign this subgraph contributes to its order's coefficient.
    pub fn sign(&self) -> i64 {
        if (self.sigma_total / 2 + self.omega as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

fn even_sigma_cycles(g: &MixedGraph, budgets: &Budgets) -> Result<Vec<Cycle>, Error> {
    let summary = structure_summary(g, budgets)?;
    Ok(summary.cycles.into_iter().filter(|c| c.sigma() % 2 == 0).collect())
}

/// Core recursion: decide the lowest undecided vertex by skipping it,
/// matching it to an undecided neighbor, or placing it on a cycle of
/// undecided vertices. Each subgraph appears exactly once because a chosen
/// cycle's minimum vertex is necessarily the current vertex.
#[allow(clippy::too_many_arguments)]
fn recurse(
    g: &MixedGraph,
    cycles_at: &[Vec<(usize, u64)>],
    cycle_lens: &[usize],
    decided: u64,
    covered: usize,
    target: Option<usize>,
    k2: &mut Vec<usize>,
    cyc: &mut Vec<usize>,
    emitted: &mut usize,
    budget: usize,
    visit: &mut dyn FnMut(usize, &[usize], &[usize]),
) -> Result<(), Error> {
    let n = g.n();
    if let Some(t) = target {
        let undecided = n - decided.count_ones() as usize;
        if covered > t || covered + undecided < t {
            return Ok(());
        }
        if covered == t {
            if *emitted == budget {
                return Err(Error::EnumerationBudgetExceeded { budget });
            }
            *emitted += 1;
            visit(covered, k2, cyc);
            return Ok(());
        }
    }
    let v = decided.trailing_ones() as usize;
    if v >= n {
        if target.is_none() {
            if *emitted == budget {
                return Err(Error::EnumerationBudgetExceeded { budget });
            }
            *emitted += 1;
            visit(covered, k2, cyc);
        }
        return Ok(());
    }
    let vbit = 1u64 << v;

    recurse(g, cycles_at, cycle_lens, decided | vbit, covered, target, k2, cyc, emitted, budget, visit)?;

    for (w, e) in g.neighbors(v) {
        if decided & (1 << w) == 0 && w != v {
            k2.push(e);
            recurse(
                g,
                cycles_at,
                cycle_lens,
                decided | vbit | (1 << w),
                covered + 2,
                target,
                k2,
                cyc,
                emitted,
                budget,
                visit,
            )?;
            k2.pop();
        }
    }

    for &(ci, mask) in &cycles_at[v] {
        if decided & mask == 0 {
            cyc.push(ci);
            recurse(
                g,
                cycles_at,
                cycle_lens,
                decided | mask,
                covered + cycle_lens[ci],
                target,
                k2,
                cyc,
                emitted,
                budget,
                visit,
            )?;
            cyc.pop();
        }
    }
    Ok(())
}

fn for_each_basic_subgraph(
    g: &MixedGraph,
    cycles: &[Cycle],
    target: Option<usize>,
    budgets: &Budgets,
    visit: &mut dyn FnMut(usize, &[usize], &[usize]),
) -> Result<(), Error> {
    let mut cycles_at: Vec<Vec<(usize, u64)>> = vec![Vec::new(); g.n()];
    for (ci, c) in cycles.iter().enumerate() {
        let min = *c.vertices.iter().min().expect("cycles are nonempty");
        cycles_at[min].push((ci, c.vertex_mask()));
    }
    let cycle_lens: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
    let mut k2 = Vec::new();
    let mut cyc = Vec::new();
    let mut emitted = 0usize;
    recurse(
        g,
        &cycles_at,
        &cycle_lens,
        0,
        0,
        target,
        &mut k2,
        &mut cyc,
        &mut emitted,
        budgets.enumeration,
        visit,
    )
}

/// All basic subgraphs covering exactly `order` vertices.
pub fn enumerate_basic_subgraphs(
    g: &MixedGraph,
    order: usize,
    budgets: &Budgets,
) -> Result<Vec<BasicSubgraph>, Error> {
    assert!(order <= g.n(), "order exceeds the vertex count");
    let cycles = even_sigma_cycles(g, budgets)?;
    let mut out = Vec::new();
    for_each_basic_subgraph(g, &cycles, Some(order), budgets, &mut |_, k2, cyc| {
        let chosen: Vec<Cycle> = cyc.iter().map(|&i| cycles[i].clone()).collect();
        let beta = chosen.len();
        let omega = k2.len() + beta;
        let sigma_total = chosen.iter().map(|c| c.net()).sum();
        out.push(BasicSubgraph { order, omega, beta, sigma_total, k2_edges: k2.to_vec(), cycles: chosen });
    })?;
    Ok(out)
}

/// The exact coefficient of `lambda^(n - order)` in the characteristic
/// polynomial, from the basic-subgraph sum.
pub fn sachs_coefficient(g: &MixedGraph, order: usize, budgets: &Budgets) -> Result<Int, Error> {
    assert!(order <= g.n(), "order exceeds the vertex count");
    Ok(sachs_coefficients_all(g, budgets)?.swap_remove(order))
}

/// All coefficients a_0..a_n in one enumeration pass.
pub fn sachs_coefficients_all(g: &MixedGraph, budgets: &Budgets) -> Result<Vec<Int>, Error> {
    let cycles = even_sigma_cycles(g, budgets)?;
    let nets: Vec<i64> = cycles.iter().map(|c| c.net()).collect();
    let mut acc = vec![0i64; g.n() + 1];
    for_each_basic_subgraph(g, &cycles, None, budgets, &mut |order, k2, cyc| {
        let omega = (k2.len() + cyc.len()) as i64;
        let sigma_total: i64 = cyc.iter().map(|&i| nets[i]).sum();
        let sign: i64 = if (sigma_total / 2 + omega).rem_euclid(2) == 0 { 1 } else { -1 };
        acc[order] += sign << cyc.len();
    })?;
    Ok(acc.into_iter().map(Int::from).collect())
}

/// Rank of a lone mixed cycle from its length and signature.
pub fn cycle_rank_formula(n: usize, sigma: usize) -> usize {
    assert!(n >= 3, "cycles have at least 3 vertices");
    assert!(sigma <= n, "signature cannot exceed the length");
    if n % 2 == 1 {
        if sigma % 2 == 1 {
            n - 1
        } else {
            n
        }
    } else if sigma % 2 == 1 || (n + sigma) % 4 == 2 {
        n
    } else {
        n - 2
    }
}

/// Rank of the graph obtained by identifying one vertex of a cycle of
/// length `n` and signature `sigma` with a vertex `x` of a graph of rank
/// `h_rank`; `f_rank` is the rank after deleting `x`. Returns `None` for
/// the (odd n, even sigma) case, which the formula does not cover.
pub fn identification_rank(
    h_rank: usize,
    f_rank: usize,
    n: usize,
    sigma: usize,
) -> Option<usize> {
    if n % 2 == 1 {
        if sigma % 2 == 1 {
            Some(h_rank + n - 1)
        } else {
            None
        }
    } else if sigma % 2 == 1 || (sigma + n) % 4 == 2 {
        Some(f_rank + n)
    } else {
        Some(h_rank + n - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{charpoly_exact, h_rank, hermitian_adjacency};
    use crate::graph::{construct_theta, identify_vertex, EdgeOrientation, EdgeRecord};

    fn cycle(n: usize) -> MixedGraph {
        let edges = (0..n).map(|k| EdgeRecord::undirected(k, (k + 1) % n)).collect();
        MixedGraph::new(n, edges).unwrap()
    }

    fn budgets() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn c4_has_three_full_order_basic_subgraphs() {
        let subs = enumerate_basic_subgraphs(&cycle(4), 4, &budgets()).unwrap();
        assert_eq!(subs.len(), 3);
        let with_cycle: Vec<_> = subs.iter().filter(|b| b.beta == 1).collect();
        assert_eq!(with_cycle.len(), 1);
        assert_eq!(with_cycle[0].omega, 1);
        assert_eq!(with_cycle[0].sigma_total, 0);
        let matchings: Vec<_> = subs.iter().filter(|b| b.beta == 0).collect();
        assert_eq!(matchings.len(), 2);
        assert!(matchings.iter().all(|b| b.omega == 2 && b.k2_edges.len() == 2));
    }

    #[test]
    fn odd_sigma_cycle_is_not_basic() {
        let mut edges: Vec<EdgeRecord> =
            (1..3).map(|k| EdgeRecord::undirected(k, (k + 1) % 3)).collect();
        edges.push(EdgeRecord::arc(0, 1));
        let g = MixedGraph::new(3, edges).unwrap();
        assert!(enumerate_basic_subgraphs(&g, 3, &budgets()).unwrap().is_empty());
    }

    #[test]
    fn order_zero_is_the_empty_subgraph() {
        let subs = enumerate_basic_subgraphs(&cycle(5), 0, &budgets()).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].omega, 0);
        assert_eq!(subs[0].sign(), 1);
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(sachs_coefficient(&cycle(4), 4, &budgets()).unwrap(), Int::from(0i64));
        assert_eq!(sachs_coefficient(&cycle(4), 2, &budgets()).unwrap(), Int::from(-4i64));
        assert_eq!(sachs_coefficient(&cycle(4), 0, &budgets()).unwrap(), Int::one());
        assert_eq!(sachs_coefficient(&cycle(4), 1, &budgets()).unwrap(), Int::zero());
    }

    #[test]
    fn coefficients_match_charpoly_on_mixed_samples() {
        let theta = construct_theta(
            2,
            3,
            3,
            &[
                EdgeOrientation::Forward,
                EdgeOrientation::Undirected,
                EdgeOrientation::Undirected,
                EdgeOrientation::Undirected,
                EdgeOrientation::Undirected,
            ],
        )
        .unwrap();
        let mut arc_c5: Vec<EdgeRecord> = (0..5).map(|k| EdgeRecord::arc(k, (k + 1) % 5)).collect();
        arc_c5.push(EdgeRecord::undirected(0, 2));
        let samples = vec![
            cycle(4),
            cycle(5),
            theta,
            MixedGraph::new(5, arc_c5).unwrap(),
            MixedGraph::new(1, vec![]).unwrap(),
        ];
        for g in samples {
            let cp = charpoly_exact(&hermitian_adjacency(&g)).unwrap();
            let sachs = sachs_coefficients_all(&g, &budgets()).unwrap();
            assert_eq!(sachs.len(), cp.coeffs.len());
            for i in 0..sachs.len() {
                assert_eq!(sachs[i], cp.coeffs[i], "coefficient {i} disagrees");
            }
        }
    }

    #[test]
    fn sign_is_invariant_under_cycle_traversal_reversal() {
        let b = BasicSubgraph {
            k2_edges: vec![0],
            cycles: vec![],
            order: 6,
            omega: 2,
            beta: 1,
            sigma_total: 2,
        };
        let mut rev = b.clone();
        rev.sigma_total = -2;
        assert_eq!(b.sign(), rev.sign());
    }

    #[test]
    fn cycle_rank_formula_cases() {
        assert_eq!(cycle_rank_formula(3, 1), 2);
        assert_eq!(cycle_rank_formula(3, 0), 3);
        assert_eq!(cycle_rank_formula(4, 0), 2);
        assert_eq!(cycle_rank_formula(4, 1), 4);
        assert_eq!(cycle_rank_formula(4, 2), 4);
        assert_eq!(cycle_rank_formula(4, 4), 2);
        assert_eq!(cycle_rank_formula(5, 0), 5);
        assert_eq!(cycle_rank_formula(6, 0), 6);
        assert_eq!(cycle_rank_formula(8, 0), 6);
        assert_eq!(cycle_rank_formula(8, 2), 8);
    }

    #[test]
    fn identification_rank_cases() {
        assert_eq!(identification_rank(2, 1, 5, 3), Some(6));
        assert_eq!(identification_rank(2, 1, 4, 0), Some(4));
        assert_eq!(identification_rank(2, 1, 4, 1), Some(5));
        assert_eq!(identification_rank(2, 1, 4, 2), Some(5));
        assert_eq!(identification_rank(2, 1, 5, 2), None);
    }

    #[test]
    fn identification_rank_matches_real_coalescence() {
        let p3 = MixedGraph::new(
            3,
            vec![EdgeRecord::undirected(0, 1), EdgeRecord::undirected(1, 2)],
        )
        .unwrap();
        let glued = identify_vertex(&p3, 0, &cycle(4), 0).unwrap();
        assert_eq!(h_rank(&glued), 4);
        assert_eq!(identification_rank(2, 1, 4, 0), Some(h_rank(&glued)));
    }
}
