//! Crucial subgraphs: the terminal graphs of maximal pendant-deletion
//! sequences.
//!
//! One step removes a pendant vertex together with its unique neighbor.
//! Different deletion orders can reach different terminal graphs, so the
//! search explores every order and reports the terminals without pendant
//! vertices, deduplicated up to isomorphism.

use std::collections::{BTreeMap, HashSet};

use crate::canon::{canonical_encoding, decode_encoding};
use crate::error::{Budgets, Error};
use crate::graph::MixedGraph;

/// All crucial subgraphs of `g`, canonically relabeled and sorted by their
/// canonical encoding. Fails with `SearchBudgetExceeded` when the number of
/// distinct intermediate vertex sets passes `budgets.search`.
pub fn crucial_subgraphs(g: &MixedGraph, budgets: &Budgets) -> Result<Vec<MixedGraph>, Error> {
    let n = g.n();
    assert!(n <= 128, "vertex sets are tracked in a 128-bit mask");
    let full: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let mut visited: HashSet<u128> = HashSet::new();
    let mut stack = vec![full];
    visited.insert(full);
    let mut terminals: BTreeMap<Vec<u8>, ()> = BTreeMap::new();

    while let Some(mask) = stack.pop() {
        let mut any_pendant = false;
        for v in 0..n {
            if mask & (1 << v) == 0 {
                continue;
            }
            let mut in_deg = 0;
            let mut partner = usize::MAX;
            for (w, _) in g.neighbors(v) {
                if mask & (1 << w) != 0 {
                    in_deg += 1;
                    partner = w;
                }
            }
            if in_deg != 1 {
                continue;
            }
            any_pendant = true;
            let next = mask & !(1 << v) & !(1 << partner);
            if visited.insert(next) {
                if visited.len() > budgets.search {
                    return Err(Error::SearchBudgetExceeded { budget: budgets.search });
                }
                stack.push(next);
            }
        }
        if !any_pendant {
            let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let (sub, _) = g.induced_subgraph(&keep);
            terminals.entry(canonical_encoding(&sub)).or_insert(());
        }
    }

    Ok(terminals.into_keys().map(|enc| decode_encoding(&enc)).collect())
}
