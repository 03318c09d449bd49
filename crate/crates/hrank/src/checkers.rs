//! Decision procedures for the rank characterizations: the matching-based
//! triple for r = 2m-2c, the crucial-subgraph conditions for r = 2m-2k and
//! r = 2m-2k+1, the nonsingularity test for bipartite cycle-disjoint
//! graphs, the component family classifier behind them, the consolidated
//! bound report, and the parametric example family hitting both kappa
//! bounds.

use crate::algebra::h_rank;
use crate::crucial::crucial_subgraphs;
use crate::error::{Budgets, Error};
use crate::graph::{
    components, contract_cycles, structure_summary, Cycle, EdgeRecord, MixedGraph,
};
use crate::matching::{
    e1_boundary, e2_support, fractional_matching_number, max_disjoint_odd_cycles, max_matching,
    optimal_fractional_matchings,
};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum FamilyTag {
    EvenCycleCong,
    OddCycleOddSig,
    OddCycleEvenSig,
    X1,
    X2,
    Y1,
    Y2,
    G0,
    F0,
    IsolatedVertex,
    Other,
}

impl FamilyTag {
    /// Member of the family characterizing r = 2m - 2k.
    pub fn in_g2(self) -> bool {
        matches!(self, FamilyTag::G0 | FamilyTag::X1 | FamilyTag::X2 | FamilyTag::OddCycleOddSig)
    }

    /// Member of the family characterizing r = 2m - 2k + 1.
    pub fn in_f2(self) -> bool {
        matches!(self, FamilyTag::F0 | FamilyTag::Y1 | FamilyTag::Y2 | FamilyTag::OddCycleEvenSig)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyLabel {
    pub tag: FamilyTag,
    pub witness: String,
}

impl FamilyLabel {
    fn new(tag: FamilyTag, witness: impl Into<String>) -> FamilyLabel {
        FamilyLabel { tag, witness: witness.into() }
    }
}

/// Consolidated rank facts and tightness flags for one graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    /// Doubled fractional matching number, always integral.
    pub two_m_star: usize,
    pub c: usize,
    pub kappa: usize,
    pub rho: usize,
    pub lower_tight: bool,
    pub lower_plus_one: bool,
    pub upper_tight: bool,
    pub legacy_lower: bool,
    pub forbidden_hit: bool,
}

impl BoundReport {
    /// Broken invariants, by message. The bounds hold for every mixed
    /// graph, so this should always be empty; the harness records rather
    /// than asserts so any counterexample claim ships with its graph.
    pub fn violations(&self) -> Vec<String> {
        let (ri, mi, tmsi) = (self.r as i64, self.m as i64, self.two_m_star as i64);
        let (ci, ki, rhoi) = (self.c as i64, self.kappa as i64, self.rho as i64);
        let mut out = Vec::new();
        // The 2m-2c <= 2m-2k chain link is equivalent to kappa <= c, so it
        // needs no separate check: it holds exactly when its own guard
        // holds, and dense graphs with kappa > c fall outside it.
        if 2 * mi - 2 * ki > ri {
            out.push(format!("lower bound: 2m-2k = {} > r = {ri}", 2 * mi - 2 * ki));
        }
        if ri > tmsi {
            out.push(format!("upper bound: r = {ri} > 2m* = {tmsi}"));
        }
        if tmsi > 2 * mi + rhoi.min(ci) {
            out.push(format!(
                "2m* = {tmsi} > 2m + min(rho, c) = {}",
                2 * mi + rhoi.min(ci)
            ));
        }
        if self.forbidden_hit {
            out.push(format!("excluded value hit: r = 2m - 2c + 1 = {ri}"));
        }
        out
    }
}

fn shared_vertex(cycles: &[Cycle], even_only: bool) -> Option<(usize, usize, usize)> {
    for i in 0..cycles.len() {
        if even_only && !cycles[i].is_even() {
            continue;
        }
        for j in i + 1..cycles.len() {
            if even_only && !cycles[j].is_even() {
                continue;
            }
            let inter = cycles[i].vertex_mask() & cycles[j].vertex_mask();
            if inter != 0 {
                return Some((i, j, inter.trailing_zeros() as usize));
            }
        }
    }
    None
}

/// True iff the rank equals 2m - 2c, decided through the condition triple:
/// (a) all cycles pairwise vertex-disjoint, (b) every cycle's signature is
/// congruent to its length mod 4, (c) contracting the cycles changes no
/// matching number when the cyclic vertices are dropped.
pub fn check_theorem_1_1(g: &MixedGraph, budgets: &Budgets) -> Result<(bool, String), Error> {
    let s = structure_summary(g, budgets)?;
    if let Some((i, j, v)) = shared_vertex(&s.cycles, false) {
        return Ok((false, format!("condition (a) fails: cycles {i} and {j} share vertex {v}")));
    }
    for (k, cyc) in s.cycles.iter().enumerate() {
        // Condition (b) needs every cycle even on top of the congruence: a
        // lone odd cycle has rank at least q-1 > 2m-2c = q-3 whatever its
        // signature, and the sequel derives kappa = c from (a) and (b).
        if !cyc.is_even() || !cyc.sigma_congruent_len_mod4() {
            return Ok((
                false,
                format!(
                    "condition (b) fails: cycle {k} has length {} and signature {}",
                    cyc.len(),
                    cyc.sigma()
                ),
            ));
        }
    }
    let (t_g, bracket, _) = contract_cycles(g, budgets)?;
    let mt = max_matching(&t_g).1;
    let mb = max_matching(&bracket).1;
    if mt != mb {
        Ok((false, format!("condition (c) fails: m(T_G) = {mt} but m([T_G]) = {mb}")))
    } else {
        Ok((true, format!("cycles disjoint, signatures congruent, m(T_G) = m([T_G]) = {mt}")))
    }
}

/// `G - V(C) + x` for a pendant cycle `C` with unique degree-3 vertex `x`.
pub fn split_off_pendant_cycle(g: &MixedGraph, pc: &Cycle) -> MixedGraph {
    let x = pc
        .vertices
        .iter()
        .copied()
        .find(|&v| g.degree(v) == 3)
        .expect("pendant cycle has a degree-3 vertex");
    let remove: Vec<usize> = pc.vertices.iter().copied().filter(|&v| v != x).collect();
    g.delete_vertices(&remove).0
}

/// A connected graph whose every vertex has degree 2 is a lone cycle.
pub fn is_bare_cycle(comp: &MixedGraph) -> bool {
    comp.n() >= 3 && (0..comp.n()).all(|v| comp.degree(v) == 2)
}

/// Crucial-subgraph shape required by the F0 family: all of H's cycles kept
/// as bare components (one odd with even signature, the rest even), plus
/// possibly isolated vertices.
fn f0_crucial_shape(h1: &MixedGraph, c_h: usize, budgets: &Budgets) -> Result<bool, Error> {
    let mut odd = 0;
    let mut even = 0;
    for (comp, _) in components(h1) {
        if comp.n() == 1 {
            continue;
        }
        if !is_bare_cycle(&comp) {
            return Ok(false);
        }
        let cyc = &structure_summary(&comp, budgets)?.cycles[0];
        if cyc.is_even() {
            even += 1;
        } else if cyc.sigma() % 2 == 0 {
            odd += 1;
        } else {
            return Ok(false);
        }
    }
    Ok(odd == 1 && even + odd == c_h)
}

/// Family label of one connected component.
pub fn classify_component(g: &MixedGraph, budgets: &Budgets) -> Result<FamilyLabel, Error> {
    assert!(g.n() >= 1, "components are nonempty");
    debug_assert!(g.is_connected());
    if g.n() == 1 {
        return Ok(FamilyLabel::new(FamilyTag::IsolatedVertex, "single vertex"));
    }
    let s = structure_summary(g, budgets)?;

    if is_bare_cycle(g) {
        let cyc = &s.cycles[0];
        let w = format!("lone cycle of length {} and signature {}", cyc.len(), cyc.sigma());
        let tag = if cyc.is_even() {
            if cyc.sigma_congruent_len_mod4() {
                FamilyTag::EvenCycleCong
            } else {
                FamilyTag::Other
            }
        } else if cyc.sigma() % 2 == 1 {
            FamilyTag::OddCycleOddSig
        } else {
            FamilyTag::OddCycleEvenSig
        };
        return Ok(FamilyLabel::new(tag, w));
    }

    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let deg4 = degrees.iter().filter(|&&d| d == 4).count();
    let deg3 = degrees.iter().filter(|&&d| d == 3).count();
    let deg2 = degrees.iter().filter(|&&d| d == 2).count();

    // Bare two-cycle shape sharing one vertex: X1 / Y1 candidates.
    if deg4 == 1 && deg2 == g.n() - 1 && s.cycles.len() == 2 {
        let (a, b) = (&s.cycles[0], &s.cycles[1]);
        let (even, odd) = if a.is_even() { (a, b) } else { (b, a) };
        if even.is_even() && !odd.is_even() {
            if even.sigma_congruent_len_mod4() {
                let w = format!(
                    "two cycles sharing one vertex; odd cycle signature {}, even cycle length {} signature {}",
                    odd.sigma(),
                    even.len(),
                    even.sigma()
                );
                let tag =
                    if odd.sigma() % 2 == 1 { FamilyTag::X1 } else { FamilyTag::Y1 };
                return Ok(FamilyLabel::new(tag, w));
            }
            return Ok(FamilyLabel::new(
                FamilyTag::Other,
                "shared-vertex bicyclic, but the even cycle signature is not congruent to its length mod 4",
            ));
        }
        return Ok(FamilyLabel::new(
            FamilyTag::Other,
            "shared-vertex bicyclic without an even/odd cycle pair",
        ));
    }

    // Bare three-path shape between two hubs: X2 / Y2 candidates.
    if deg3 == 2 && deg2 == g.n() - 2 && s.cycles.len() == 3 {
        let evens: Vec<&Cycle> = s.cycles.iter().filter(|c| c.is_even()).collect();
        let odds: Vec<&Cycle> = s.cycles.iter().filter(|c| !c.is_even()).collect();
        if evens.len() == 1 && odds.len() == 2 {
            let even = evens[0];
            // Path orders: the two odd cycles share a path on p vertices,
            // with 2p = a + b + 2 - e for odd cycle lengths a, b and even
            // length e. The families take p even and the other two paths
            // odd; the (even, even, odd) path pattern also yields a lone
            // even cycle but lies outside them.
            let p_doubled = odds[0].len() + odds[1].len() + 2 - even.len();
            if p_doubled % 4 != 0 {
                return Ok(FamilyLabel::new(
                    FamilyTag::Other,
                    "theta shape whose odd cycles share an odd-order path",
                ));
            }
            // The even cycle is C_{q+l-2}, so q + l = len + 2.
            let cong = (even.len() + 2 + even.sigma()) % 4 == 2;
            let sigs: Vec<usize> = odds.iter().map(|c| c.sigma()).collect();
            if cong && sigs.iter().all(|&x| x % 2 == 1) {
                return Ok(FamilyLabel::new(
                    FamilyTag::X2,
                    format!("theta shape; odd cycle signatures {sigs:?}, even cycle fits"),
                ));
            }
            if cong && sigs.iter().all(|&x| x % 2 == 0) {
                return Ok(FamilyLabel::new(
                    FamilyTag::Y2,
                    format!("theta shape; odd cycle signatures {sigs:?}, even cycle fits"),
                ));
            }
            return Ok(FamilyLabel::new(
                FamilyTag::Other,
                "theta shape fails the signature conditions",
            ));
        }
        return Ok(FamilyLabel::new(FamilyTag::Other, "theta shape without exactly one even cycle"));
    }

    if s.c >= 1 && s.cycles_disjoint(false) && s.pendant_vertices.is_empty() {
        // G0: a pendant odd cycle with odd signature whose removal (keeping
        // the attachment vertex) leaves a graph passing the rank = 2m - 2c
        // triple.
        for pc in &s.pendant_cycles {
            if pc.len() % 2 == 1 && pc.sigma() % 2 == 1 {
                let h = split_off_pendant_cycle(g, pc);
                let (ok, _) = check_theorem_1_1(&h, budgets)?;
                if ok {
                    return Ok(FamilyLabel::new(
                        FamilyTag::G0,
                        format!(
                            "pendant odd cycle of length {} with signature {}; remainder satisfies the rank triple",
                            pc.len(),
                            pc.sigma()
                        ),
                    ));
                }
            }
        }
        // F0: the unique odd cycle is pendant with even signature, every
        // even cycle fits mod 4, and splitting off a pendant even cycle
        // leaves a graph reducible to its bare cycles.
        if s.c >= 2 {
            let odd_cycles: Vec<&Cycle> = s.cycles.iter().filter(|c| !c.is_even()).collect();
            let evens_fit =
                s.cycles.iter().filter(|c| c.is_even()).all(|c| c.sigma_congruent_len_mod4());
            if odd_cycles.len() == 1 && evens_fit {
                let oc = odd_cycles[0];
                let oc_pendant = s.pendant_cycles.iter().any(|pc| pc.vertices == oc.vertices);
                if oc_pendant && oc.sigma() % 2 == 0 {
                    for pc in &s.pendant_cycles {
                        if !pc.is_even() {
                            continue;
                        }
                        let h = split_off_pendant_cycle(g, pc);
                        let c_h = s.c - 1;
                        for h1 in crucial_subgraphs(&h, budgets)? {
                            if f0_crucial_shape(&h1, c_h, budgets)? {
                                return Ok(FamilyLabel::new(
                                    FamilyTag::F0,
                                    format!(
                                        "pendant odd cycle of length {} with even signature; splitting off the pendant {}-cycle reduces to {} bare cycles",
                                        oc.len(),
                                        pc.len(),
                                        c_h
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    Ok(FamilyLabel::new(FamilyTag::Other, "no family condition matched"))
}

fn component_tags(
    g1: &MixedGraph,
    want_f2: bool,
    budgets: &Budgets,
) -> Result<Option<Vec<FamilyTag>>, Error> {
    let mut special = 0usize;
    let mut tags = Vec::new();
    for (comp, _) in components(g1) {
        let label = classify_component(&comp, budgets)?;
        let is_special = if want_f2 { label.tag.in_f2() } else { label.tag.in_g2() };
        if is_special {
            special += 1;
        } else if !matches!(label.tag, FamilyTag::EvenCycleCong | FamilyTag::IsolatedVertex) {
            return Ok(None);
        }
        tags.push(label.tag);
    }
    let count_ok = if want_f2 { special == 1 } else { special <= 1 };
    Ok(if count_ok { Some(tags) } else { None })
}

fn check_kappa_characterization(
    g: &MixedGraph,
    budgets: &Budgets,
    want_f2: bool,
) -> Result<(bool, String), Error> {
    let s = structure_summary(g, budgets)?;
    if s.kappa + 1 != s.c {
        return Err(Error::NotApplicable(format!(
            "kappa = {} but c - 1 = {}",
            s.kappa,
            s.c as i64 - 1
        )));
    }
    if let Some((i, j, v)) = shared_vertex(&s.cycles, true) {
        return Ok((false, format!("even cycles {i} and {j} share vertex {v}")));
    }
    let candidates = crucial_subgraphs(g, budgets)?;
    let examined = candidates.len();
    for g1 in candidates {
        if structure_summary(&g1, budgets)?.kappa != s.kappa {
            continue;
        }
        if let Some(tags) = component_tags(&g1, want_f2, budgets)? {
            return Ok((
                true,
                format!(
                    "crucial subgraph on {} vertices keeps kappa = {} with components {:?}",
                    g1.n(),
                    s.kappa,
                    tags
                ),
            ));
        }
    }
    Ok((
        false,
        format!("no crucial subgraph (of {examined}) satisfies the component condition"),
    ))
}

/// True iff the rank equals 2m - 2k; requires k = c - 1.
pub fn check_theorem_1_3(g: &MixedGraph, budgets: &Budgets) -> Result<(bool, String), Error> {
    check_kappa_characterization(g, budgets, false)
}

/// True iff the rank equals 2m - 2k + 1; requires k = c - 1.
pub fn check_theorem_1_4(g: &MixedGraph, budgets: &Budgets) -> Result<(bool, String), Error> {
    check_kappa_characterization(g, budgets, true)
}

/// True iff a bipartite cycle-disjoint graph is nonsingular: it must have a
/// perfect (fractional) matching and some optimal fractional matching whose
/// weight-1 edges leave every length-congruent even cycle.
pub fn check_theorem_1_5(g: &MixedGraph, budgets: &Budgets) -> Result<(bool, String), Error> {
    if !g.is_bipartite() {
        return Err(Error::NotApplicable("underlying graph is not bipartite".into()));
    }
    let s = structure_summary(g, budgets)?;
    if !s.cycles_disjoint(false) {
        return Err(Error::NotApplicable("cycles are not pairwise vertex-disjoint".into()));
    }
    let two_m_star = fractional_matching_number(g).doubled();
    if two_m_star != g.n() {
        return Ok((
            false,
            format!("condition (a) fails: 2m* = {two_m_star} but n = {}", g.n()),
        ));
    }
    let targets: Vec<&Cycle> =
        s.cycles.iter().filter(|c| c.is_even() && c.sigma_congruent_len_mod4()).collect();
    if targets.is_empty() {
        return Ok((true, "perfect fractional matching and no length-congruent even cycle".into()));
    }
    let opts = optimal_fractional_matchings(g, budgets)?;
    let hits = |f: &crate::matching::FractionalMatching, cyc: &Cycle| -> bool {
        let e2 = e2_support(f);
        e1_boundary(g, cyc).iter().any(|e| e2.contains(e))
    };
    let exists_forall = opts.iter().any(|f| targets.iter().all(|c| hits(f, c)));
    let forall_exists = targets.iter().all(|c| opts.iter().any(|f| hits(f, c)));
    let mut cert = format!(
        "{} optimal fractional matchings, {} length-congruent even cycles, boundary condition {}",
        opts.len(),
        targets.len(),
        if exists_forall { "holds" } else { "fails" }
    );
    if exists_forall != forall_exists {
        cert.push_str(&format!(
            "; quantifier readings differ (single witness: {exists_forall}, per-cycle witnesses: {forall_exists})"
        ));
    }
    Ok((exists_forall, cert))
}

/// All rank bounds and tightness flags for `g` in one pass.
pub fn bound_report(g: &MixedGraph, budgets: &Budgets) -> Result<BoundReport, Error> {
    let s = structure_summary(g, budgets)?;
    let r = h_rank(g);
    let m = max_matching(g).1;
    let two_m_star = fractional_matching_number(g).doubled();
    let (_, rho) = max_disjoint_odd_cycles(g, budgets)?;
    let (ri, mi, tmsi) = (r as i64, m as i64, two_m_star as i64);
    let (ci, ki) = (s.c as i64, s.kappa as i64);
    Ok(BoundReport {
        n: g.n(),
        r,
        m,
        two_m_star,
        c: s.c,
        kappa: s.kappa,
        rho,
        lower_tight: ri == 2 * mi - 2 * ki,
        lower_plus_one: ri == 2 * mi - 2 * ki + 1,
        upper_tight: ri == tmsi,
        legacy_lower: ri == 2 * mi - 2 * ci,
        forbidden_hit: ri == 2 * mi - 2 * ci + 1,
    })
}

fn build_fig3(kappa: usize, triangle_signature: Parity, chain: bool) -> MixedGraph {
    // Vertex layout: pendant pair u = 0, v = 1; triangle 2,3,4; the j-th
    // square occupies 5+4j .. 8+4j. Squares stay all-undirected so each has
    // signature 0.
    let mut edges = vec![EdgeRecord::undirected(0, 1), EdgeRecord::undirected(1, 2)];
    match triangle_signature {
        Parity::Odd => edges.push(EdgeRecord::arc(2, 3)),
        Parity::Even => edges.push(EdgeRecord::undirected(2, 3)),
    }
    edges.push(EdgeRecord::undirected(3, 4));
    edges.push(EdgeRecord::undirected(2, 4));
    for j in 0..kappa {
        let b = 5 + 4 * j;
        edges.push(EdgeRecord::undirected(b, b + 1));
        edges.push(EdgeRecord::undirected(b + 1, b + 2));
        edges.push(EdgeRecord::undirected(b + 2, b + 3));
        edges.push(EdgeRecord::undirected(b, b + 3));
        if chain {
            let prev = if j == 0 { 4 } else { b - 2 };
            edges.push(EdgeRecord::undirected(prev, b));
        } else {
            edges.push(EdgeRecord::undirected(1, b));
        }
    }
    MixedGraph::new(5 + 4 * kappa, edges).expect("construction is simple by layout")
}

/// A connected graph with one triangle of the requested signature parity,
/// `kappa` vertex-disjoint squares of signature 0, and a pendant edge u-v,
/// built so that m = 2k+2 and r = 2k+4 (odd parity) or 2k+5 (even parity).
///
/// The figure the formulas come from is not available, so the attachment of
/// the squares is not fixed by the text; a chain attachment is tried first
/// and a star attachment (v adjacent to every cycle, matching the stated
/// identity r(G) = r(G - {u,v}) + 2 with G - {u,v} a disjoint cycle union)
/// second, and whichever the exact rank and matching oracles validate is
/// returned.
pub fn fig3_family(kappa: usize, triangle_signature: Parity) -> Result<MixedGraph, Error> {
    if kappa == 0 {
        return Err(Error::InvalidParameters("kappa must be at least 1".into()));
    }
    let m_target = 2 * kappa + 2;
    let r_target = match triangle_signature {
        Parity::Odd => 2 * kappa + 4,
        Parity::Even => 2 * kappa + 5,
    };
    for chain in [true, false] {
        let g = build_fig3(kappa, triangle_signature, chain);
        if max_matching(&g).1 == m_target && h_rank(&g) == r_target {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameters(format!(
        "no attachment realizes m = {m_target} and r = {r_target} for kappa = {kappa}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{construct_infinity, construct_theta, EdgeOrientation};

    fn budgets() -> Budgets {
        Budgets::default()
    }

    fn undirected_cycle(n: usize) -> MixedGraph {
        let edges = (0..n).map(|k| EdgeRecord::undirected(k, (k + 1) % n)).collect();
        MixedGraph::new(n, edges).unwrap()
    }

    fn all_undirected(count: usize) -> Vec<EdgeOrientation> {
        vec![EdgeOrientation::Undirected; count]
    }

    #[test]
    fn rank_triple_on_spec_examples() {
        let c4 = undirected_cycle(4);
        let (ok, _) = check_theorem_1_1(&c4, &budgets()).unwrap();
        assert!(ok);
        assert_eq!(h_rank(&c4), 2);

        let mut edges: Vec<EdgeRecord> =
            (0..4).map(|k| EdgeRecord::undirected(k, (k + 1) % 4)).collect();
        edges.push(EdgeRecord::undirected(0, 4));
        let with_pendant = MixedGraph::new(5, edges).unwrap();
        let (ok, cert) = check_theorem_1_1(&with_pendant, &budgets()).unwrap();
        assert!(!ok);
        assert!(cert.contains("condition (c)"), "{cert}");
        assert_eq!(h_rank(&with_pendant), 4);

        let p4 = MixedGraph::new(
            4,
            (0..3).map(|k| EdgeRecord::undirected(k, k + 1)).collect(),
        )
        .unwrap();
        let (ok, _) = check_theorem_1_1(&p4, &budgets()).unwrap();
        assert!(ok);
        assert_eq!(h_rank(&p4), 2 * max_matching(&p4).1);
    }

    #[test]
    fn rank_triple_reports_shared_cycles() {
        let mut edges: Vec<EdgeRecord> =
            (0..4).map(|k| EdgeRecord::undirected(k, (k + 1) % 4)).collect();
        edges.push(EdgeRecord::undirected(0, 2));
        let g = MixedGraph::new(4, edges).unwrap();
        let (ok, cert) = check_theorem_1_1(&g, &budgets()).unwrap();
        assert!(!ok);
        assert!(cert.contains("condition (a)"), "{cert}");
    }

    #[test]
    fn classifies_theta_as_x2() {
        let mut orient = all_undirected(5);
        orient[0] = EdgeOrientation::Forward;
        let theta = construct_theta(2, 3, 3, &orient).unwrap();
        let label = classify_component(&theta, &budgets()).unwrap();
        assert_eq!(label.tag, FamilyTag::X2, "{}", label.witness);
    }

    #[test]
    fn classifies_infinity_as_y1() {
        let inf = construct_infinity(4, 1, 3, &all_undirected(7)).unwrap();
        let label = classify_component(&inf, &budgets()).unwrap();
        assert_eq!(label.tag, FamilyTag::Y1, "{}", label.witness);
    }

    #[test]
    fn classifies_lone_vertices_and_cycles() {
        let one = MixedGraph::empty(1);
        assert_eq!(classify_component(&one, &budgets()).unwrap().tag, FamilyTag::IsolatedVertex);

        assert_eq!(
            classify_component(&undirected_cycle(4), &budgets()).unwrap().tag,
            FamilyTag::EvenCycleCong
        );
        assert_eq!(
            classify_component(&undirected_cycle(3), &budgets()).unwrap().tag,
            FamilyTag::OddCycleEvenSig
        );

        let mut edges: Vec<EdgeRecord> =
            (1..3).map(|k| EdgeRecord::undirected(k, (k + 1) % 3)).collect();
        edges.push(EdgeRecord::arc(0, 1));
        let arc_c3 = MixedGraph::new(3, edges).unwrap();
        assert_eq!(
            classify_component(&arc_c3, &budgets()).unwrap().tag,
            FamilyTag::OddCycleOddSig
        );

        let mut edges: Vec<EdgeRecord> =
            (1..4).map(|k| EdgeRecord::undirected(k, (k + 1) % 4)).collect();
        edges.push(EdgeRecord::arc(0, 1));
        let arc_c4 = MixedGraph::new(4, edges).unwrap();
        assert_eq!(classify_component(&arc_c4, &budgets()).unwrap().tag, FamilyTag::Other);
    }

    #[test]
    fn classifies_separated_cycles_as_g0_and_f0() {
        // Two cycles joined by a two-edge path; the triangle carries one arc
        // so its signature is odd.
        let mut orient = all_undirected(9);
        orient[0] = EdgeOrientation::Forward;
        let g = construct_infinity(3, 3, 4, &orient).unwrap();
        let label = classify_component(&g, &budgets()).unwrap();
        assert_eq!(label.tag, FamilyTag::G0, "{}", label.witness);

        // All-undirected: the triangle signature becomes even.
        let f = construct_infinity(3, 3, 4, &all_undirected(9)).unwrap();
        let label = classify_component(&f, &budgets()).unwrap();
        assert_eq!(label.tag, FamilyTag::F0, "{}", label.witness);
    }

    #[test]
    fn g0_remainder_rank_cross_check() {
        let mut orient = all_undirected(9);
        orient[0] = EdgeOrientation::Forward;
        let g = construct_infinity(3, 3, 4, &orient).unwrap();
        let s = structure_summary(&g, &budgets()).unwrap();
        let pc = s
            .pendant_cycles
            .iter()
            .find(|c| c.len() == 3)
            .expect("triangle is pendant");
        let h = split_off_pendant_cycle(&g, pc);
        let sh = structure_summary(&h, &budgets()).unwrap();
        assert_eq!(h_rank(&h), 2 * max_matching(&h).1 - 2 * sh.c);
    }

    #[test]
    fn kappa_characterization_on_spec_examples() {
        let mut orient = all_undirected(5);
        orient[0] = EdgeOrientation::Forward;
        let theta = construct_theta(2, 3, 3, &orient).unwrap();
        let (ok, cert) = check_theorem_1_3(&theta, &budgets()).unwrap();
        assert!(ok, "{cert}");
        assert_eq!(h_rank(&theta), 2);

        let inf = construct_infinity(4, 1, 3, &all_undirected(7)).unwrap();
        let (ok, cert) = check_theorem_1_4(&inf, &budgets()).unwrap();
        assert!(ok, "{cert}");
        assert_eq!(h_rank(&inf), 5);
        let (ok13, _) = check_theorem_1_3(&inf, &budgets()).unwrap();
        assert!(!ok13);

        let c3 = undirected_cycle(3);
        let (ok, cert) = check_theorem_1_4(&c3, &budgets()).unwrap();
        assert!(ok, "{cert}");
        assert_eq!(h_rank(&c3), 3);
    }

    #[test]
    fn kappa_characterization_requires_precondition() {
        let inf = construct_infinity(3, 1, 3, &all_undirected(6)).unwrap();
        match check_theorem_1_3(&inf, &budgets()) {
            Err(Error::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
        match check_theorem_1_4(&inf, &budgets()) {
            Err(Error::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn nonsingularity_on_spec_examples() {
        let c4 = undirected_cycle(4);
        let (ok, cert) = check_theorem_1_5(&c4, &budgets()).unwrap();
        assert!(!ok, "{cert}");
        assert_eq!(h_rank(&c4), 2);

        let mut edges: Vec<EdgeRecord> =
            (1..4).map(|k| EdgeRecord::undirected(k, (k + 1) % 4)).collect();
        edges.push(EdgeRecord::arc(0, 1));
        let arc_c4 = MixedGraph::new(4, edges).unwrap();
        let (ok, cert) = check_theorem_1_5(&arc_c4, &budgets()).unwrap();
        assert!(ok, "{cert}");
        assert_eq!(h_rank(&arc_c4), 4);

        let p3 = MixedGraph::new(
            3,
            (0..2).map(|k| EdgeRecord::undirected(k, k + 1)).collect(),
        )
        .unwrap();
        let (ok, cert) = check_theorem_1_5(&p3, &budgets()).unwrap();
        assert!(!ok);
        assert!(cert.contains("condition (a)"), "{cert}");

        match check_theorem_1_5(&undirected_cycle(3), &budgets()) {
            Err(Error::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }

    #[test]
    fn bound_report_flags() {
        let rep = bound_report(&undirected_cycle(4), &budgets()).unwrap();
        assert!(rep.lower_tight && !rep.upper_tight && !rep.forbidden_hit);
        assert_eq!((rep.r, rep.m, rep.two_m_star, rep.kappa), (2, 2, 4, 1));
        assert!(rep.violations().is_empty());

        let rep = bound_report(&undirected_cycle(5), &budgets()).unwrap();
        assert!(rep.upper_tight && !rep.lower_tight);
        assert_eq!((rep.r, rep.two_m_star, rep.rho), (5, 5, 1));

        let p4 = MixedGraph::new(
            4,
            (0..3).map(|k| EdgeRecord::undirected(k, k + 1)).collect(),
        )
        .unwrap();
        let rep = bound_report(&p4, &budgets()).unwrap();
        assert!(rep.lower_tight && rep.upper_tight && rep.legacy_lower);

        // Dense graph where the even-cycle count exceeds the cyclomatic
        // number; the report must not assert the conditional chain link.
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push(EdgeRecord::undirected(u, v));
            }
        }
        let k5 = MixedGraph::new(5, edges).unwrap();
        let rep = bound_report(&k5, &budgets()).unwrap();
        assert!(rep.kappa > rep.c);
        assert_eq!(rep.r, 5);
        assert!(rep.violations().is_empty());
    }

    #[test]
    fn fig3_family_hits_stated_values() {
        for (kappa, parity, r_target) in
            [(1, Parity::Odd, 6), (1, Parity::Even, 7), (3, Parity::Odd, 10)]
        {
            let g = fig3_family(kappa, parity).unwrap();
            assert_eq!(g.n(), 4 * kappa + 5);
            assert_eq!(max_matching(&g).1, 2 * kappa + 2);
            assert_eq!(h_rank(&g), r_target);
        }
        assert!(matches!(fig3_family(0, Parity::Odd), Err(Error::InvalidParameters(_))));
    }
}
