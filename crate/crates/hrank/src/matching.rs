//! Matching invariants of the underlying graph: the matching number m, the
//! fractional matching number m*, perfect matchings, optimal fractional
//! matchings with maximal integral part, and odd-cycle packings.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Budgets, Error};
use crate::graph::{structure_summary, Cycle, MixedGraph};

/// A set of pairwise non-incident edges, stored as sorted edge indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matching {
    pub edge_refs: Vec<usize>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edge_refs.len()
    }
}

/// Half-integral edge weighting; `weights[e]` is the numerator over 2, so
/// each entry is 0, 1, or 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FractionalMatching {
    pub weights: Vec<u8>,
}

impl FractionalMatching {
    /// Twice the total weight.
    pub fn total_doubled(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    /// Checks the vertex capacity constraint against `g`.
    pub fn is_valid_for(&self, g: &MixedGraph) -> bool {
        if self.weights.len() != g.edge_count() {
            return false;
        }
        (0..g.n()).all(|v| {
            let load: u32 = g.neighbors(v).map(|(_, e)| self.weights[e] as u32).sum();
            load <= 2
        })
    }
}

/// Pairwise vertex-disjoint odd cycles.
#[derive(Clone, Debug)]
pub struct OddCyclePacking {
    pub cycles: Vec<Cycle>,
}

impl OddCyclePacking {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }
}

/// A half-integer stored as its double.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct HalfInt {
    doubled: usize,
}

impl HalfInt {
    pub fn from_doubled(doubled: usize) -> HalfInt {
        HalfInt { doubled }
    }

    pub fn doubled(self) -> usize {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Memoization table for matching sizes keyed by the remaining-vertex
/// bitmask; dense below 2^20 states, hashed above.
enum Memo {
    Dense(Vec<i8>),
    Sparse(HashMap<u64, i8>),
}

impl Memo {
    fn new(n: usize) -> Memo {
        if n <= 20 {
            Memo::Dense(vec![-1; 1usize << n])
        } else {
            Memo::Sparse(HashMap::new())
        }
    }

    fn get(&self, mask: u64) -> Option<i8> {
        match self {
            Memo::Dense(v) => {
                let x = v[mask as usize];
                (x >= 0).then_some(x)
            }
            Memo::Sparse(m) => m.get(&mask).copied(),
        }
    }

    fn set(&mut self, mask: u64, val: i8) {
        match self {
            Memo::Dense(v) => v[mask as usize] = val,
            Memo::Sparse(m) => {
                m.insert(mask, val);
            }
        }
    }
}

fn neighbor_masks(g: &MixedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |acc, (w, _)| acc | (1 << w)))
        .collect()
}

fn matching_size(nb: &[u64], memo: &mut Memo, mask: u64) -> i8 {
    if mask == 0 {
        return 0;
    }
    if let Some(v) = memo.get(mask) {
        return v;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut best = matching_size(nb, memo, rest);
    let mut cands = nb[v] & rest;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        let with = 1 + matching_size(nb, memo, rest & !(1 << w));
        if with > best {
            best = with;
        }
    }
    memo.set(mask, best);
    best
}

/// Maximum matching of the underlying graph with its size. Exact for any
/// graph on at most 63 vertices; intended scale is small.
pub fn max_matching(g: &MixedGraph) -> (Matching, usize) {
    let n = g.n();
    assert!(n <= 63, "matching solver uses 64-bit vertex masks");
    let nb = neighbor_masks(g);
    let mut memo = Memo::new(n);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let total = matching_size(&nb, &mut memo, full);

    // Walk the table again to extract one optimum.
    let mut edges = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        if matching_size(&nb, &mut memo, rest) == matching_size(&nb, &mut memo, mask) {
            mask = rest;
            continue;
        }
        let mut cands = nb[v] & rest;
        loop {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            let next = rest & !(1 << w);
            if 1 + matching_size(&nb, &mut memo, next) == matching_size(&nb, &mut memo, mask) {
                edges.push(g.edge_between(v, w).expect("neighbor mask matches an edge"));
                mask = next;
                break;
            }
        }
    }
    edges.sort_unstable();
    (Matching { edge_refs: edges }, total as usize)
}

/// Every perfect matching. Odd order yields the empty list.
pub fn enumerate_perfect_matchings(
    g: &MixedGraph,
    budgets: &Budgets,
) -> Result<Vec<Matching>, Error> {
    let n = g.n();
    if n % 2 != 0 {
        return Ok(Vec::new());
    }
    assert!(n <= 63, "matching solver uses 64-bit vertex masks");
    let nb = neighbor_masks(g);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        g: &MixedGraph,
        nb: &[u64],
        mask: u64,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matching>,
        cap: usize,
    ) -> Result<(), Error> {
        if mask == 0 {
            if out.len() == cap {
                return Err(Error::EnumerationBudgetExceeded { budget: cap });
            }
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(Matching { edge_refs: edges });
            return Ok(());
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut cands = nb[v] & rest;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            chosen.push(g.edge_between(v, w).expect("neighbor mask matches an edge"));
            go(g, nb, rest & !(1 << w), chosen, out, cap)?;
            chosen.pop();
        }
        Ok(())
    }
    go(g, &nb, full, &mut chosen, &mut out, budgets.enumeration)?;
    Ok(out)
}

/// Fractional matching number m*, computed as half the matching number of
/// the bipartite double cover.
pub fn fractional_matching_number(g: &MixedGraph) -> HalfInt {
    let n = g.n();
    // Double cover: edge {u, v} becomes left-u to right-v and left-v to
    // right-u. Its maximum matching size is twice m*.
    let adj: Vec<Vec<usize>> =
        (0..n).map(|v| g.neighbors(v).map(|(w, _)| w).collect()).collect();
    let mut match_r: Vec<usize> = vec![usize::MAX; n];

    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        match_r: &mut [usize],
        seen: &mut [bool],
    ) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if match_r[r] == usize::MAX || augment(match_r[r], adj, match_r, seen) {
                match_r[r] = l;
                return true;
            }
        }
        false
    }

    let mut size = 0;
    let mut seen = vec![false; n];
    for l in 0..n {
        seen.fill(false);
        if augment(l, &adj, &mut match_r, &mut seen) {
            size += 1;
        }
    }
    HalfInt::from_doubled(size)
}

/// Edges with exactly one endpoint on the cycle.
pub fn e1_boundary(g: &MixedGraph, cyc: &Cycle) -> Vec<usize> {
    let mask = cyc.vertex_mask();
    (0..g.edge_count())
        .filter(|&e| {
            let rec = &g.edges()[e];
            (mask >> rec.u & 1) != (mask >> rec.v & 1)
        })
        .collect()
}

/// Edges carrying weight 1.
pub fn e2_support(f: &FractionalMatching) -> Vec<usize> {
    (0..f.weights.len()).filter(|&e| f.weights[e] == 2).collect()
}

/// Visits every set of pairwise vertex-disjoint cycles drawn from `cycles`
/// (the empty set included), as index lists.
fn for_each_disjoint_set(
    cycles: &[&Cycle],
    idx: usize,
    used: u64,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if idx == cycles.len() {
        f(chosen);
        return;
    }
    for_each_disjoint_set(cycles, idx + 1, used, chosen, f);
    let mask = cycles[idx].vertex_mask();
    if used & mask == 0 {
        chosen.push(idx);
        for_each_disjoint_set(cycles, idx + 1, used | mask, chosen, f);
        chosen.pop();
    }
}

/// A maximum-cardinality set of vertex-disjoint odd cycles and its size ρ.
pub fn max_disjoint_odd_cycles(
    g: &MixedGraph,
    budgets: &Budgets,
) -> Result<(OddCyclePacking, usize), Error> {
    let summary = structure_summary(g, budgets)?;
    let odd: Vec<&Cycle> = summary.cycles.iter().filter(|c| !c.is_even()).collect();
    let mut best: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for_each_disjoint_set(&odd, 0, 0, &mut chosen, &mut |set| {
        if set.len() > best.len() {
            best = set.to_vec();
        }
    });
    let cycles = best.iter().map(|&i| odd[i].clone()).collect();
    let rho = best.len();
    Ok((OddCyclePacking { cycles }, rho))
}

/// Counts matchings of size exactly `need` inside `mask`, saturating at 2.
fn count_matchings_capped(
    nb: &[u64],
    memo: &mut HashMap<(u64, u8), u8>,
    mask: u64,
    need: u8,
    budget: usize,
) -> Result<u8, Error> {
    if need == 0 {
        return Ok(1);
    }
    if mask.count_ones() < 2 * need as u32 {
        return Ok(0);
    }
    if let Some(&v) = memo.get(&(mask, need)) {
        return Ok(v);
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut total = count_matchings_capped(nb, memo, rest, need, budget)?;
    let mut cands = nb[v] & rest;
    while cands != 0 && total < 2 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        total = total
            .saturating_add(count_matchings_capped(nb, memo, rest & !(1 << w), need - 1, budget)?)
            .min(2);
    }
    if memo.len() >= budget {
        return Err(Error::EnumerationBudgetExceeded { budget });
    }
    memo.insert((mask, need), total);
    Ok(total)
}

/// True iff exactly one matching attains the matching number.
pub fn has_unique_max_matching(g: &MixedGraph, budgets: &Budgets) -> Result<bool, Error> {
    let n = g.n();
    assert!(n <= 63, "matching solver uses 64-bit vertex masks");
    let (_, m) = max_matching(g);
    let nb = neighbor_masks(g);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    let count =
        count_matchings_capped(&nb, &mut memo, full, m as u8, budgets.enumeration)?;
    Ok(count == 1)
}

/// All matchings of size exactly `k` avoiding the vertices in `forbidden`.
fn matchings_of_size(
    g: &MixedGraph,
    nb: &[u64],
    forbidden: u64,
    k: usize,
    budget: usize,
) -> Result<Vec<Vec<usize>>, Error> {
    let n = g.n();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        g: &MixedGraph,
        nb: &[u64],
        mask: u64,
        k: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<(), Error> {
        if chosen.len() == k {
            if out.len() == budget {
                return Err(Error::EnumerationBudgetExceeded { budget });
            }
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(edges);
            return Ok(());
        }
        if (mask.count_ones() as usize) < 2 * (k - chosen.len()) {
            return Ok(());
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut cands = nb[v] & rest;
        while cands != 0 {
            let w = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            chosen.push(g.edge_between(v, w).expect("neighbor mask matches an edge"));
            go(g, nb, rest & !(1 << w), k, chosen, out, budget)?;
            chosen.pop();
        }
        // v stays unmatched.
        go(g, nb, rest, k, chosen, out, budget)
    }
    go(g, nb, full & !forbidden, k, &mut chosen, &mut out, budget)?;
    Ok(out)
}

/// All optimal fractional matchings: weightings in {0, ½, 1} with total
/// m*(G) and the maximum possible number of weight-1 edges. By the
/// half-integral structure these are exactly (disjoint odd cycles at ½,
/// matching at 1) combinations minimizing the cycle part.
pub fn optimal_fractional_matchings(
    g: &MixedGraph,
    budgets: &Budgets,
) -> Result<Vec<FractionalMatching>, Error> {
    let summary = structure_summary(g, budgets)?;
    let odd: Vec<&Cycle> = summary.cycles.iter().filter(|c| !c.is_even()).collect();
    let nb = neighbor_masks(g);
    let target = fractional_matching_number(g).doubled();

    // Pass 1: valid cycle sets reach the target with a maximum matching of
    // the remainder; the optimal ones carry minimal total cycle weight.
    let mut candidates: Vec<(Vec<usize>, u64, usize)> = Vec::new();
    let mut chosen = Vec::new();
    let mut err = None;
    for_each_disjoint_set(&odd, 0, 0, &mut chosen, &mut |set| {
        if err.is_some() {
            return;
        }
        let used: u64 = set.iter().map(|&i| odd[i].vertex_mask()).fold(0, |a, b| a | b);
        let cycle_weight: usize = set.iter().map(|&i| odd[i].len()).sum();
        if cycle_weight > target {
            return;
        }
        let (keep, _): (Vec<usize>, Vec<usize>) =
            (0..g.n()).partition(|v| used & (1 << v) == 0);
        let (sub, _) = g.induced_subgraph(&keep);
        let (_, m_rest) = max_matching(&sub);
        if cycle_weight + 2 * m_rest == target {
            if candidates.len() >= budgets.enumeration {
                err = Some(Error::EnumerationBudgetExceeded { budget: budgets.enumeration });
                return;
            }
            candidates.push((set.to_vec(), used, (target - cycle_weight) / 2));
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let min_cycle_weight = candidates
        .iter()
        .map(|(set, _, _)| set.iter().map(|&i| odd[i].len()).sum::<usize>())
        .min()
        .expect("m* is always attained by an odd-cycle/matching combination");

    // Pass 2: expand each minimal candidate into concrete weightings.
    let mut out = Vec::new();
    for (set, used, m_needed) in candidates {
        let w: usize = set.iter().map(|&i| odd[i].len()).sum();
        if w != min_cycle_weight {
            continue;
        }
        for matching in matchings_of_size(g, &nb, used, m_needed, budgets.enumeration)? {
            let mut weights = vec![0u8; g.edge_count()];
            for &ci in &set {
                for &e in &odd[ci].edges {
                    weights[e] = 1;
                }
            }
            for e in matching {
                weights[e] = 2;
            }
            if out.len() >= budgets.enumeration {
                return Err(Error::EnumerationBudgetExceeded { budget: budgets.enumeration });
            }
            out.push(FractionalMatching { weights });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
