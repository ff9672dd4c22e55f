//! Exhaustive ground truth: the full reconfiguration graph of an instance.
//!
//! A state is a proper list colouring, keyed by the mixed-radix integer of
//! per-vertex list indices (vertex 0 is the least significant digit). Two
//! states are adjacent iff they differ in the colour of exactly one vertex.
//! Everything here is independent of the constructive planners and serves as
//! their oracle in tests.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, ListAssignment, Vertex};
use crate::kernel::{colouring_status, is_vertex_frozen};

/// Default cap on the number of candidate states (product of list sizes).
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Components larger than this get no exact diameter (all-pairs BFS would be
/// too slow); they are reported with `diameter = None`.
pub const DIAMETER_EXACT_LIMIT: usize = 5_000;

/// Census of one reconfiguration graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconfSummary {
    pub total_colourings: u64,
    /// Number of frozen colourings (equivalently, singleton components).
    pub frozen_count: u64,
    /// (size, diameter) per component, sorted by size descending.
    /// `diameter = None` means "not computed" (component too large).
    pub components: Vec<(u64, Option<u64>)>,
    pub non_singleton_count: u64,
}

/// Disjoint swap edges with per-edge witnesses, used to lower-bound the
/// number of unfrozen colourings reachable from any frozen one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSet {
    /// Edges v_i w_i whose closed-neighbourhood unions are pairwise disjoint.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Per-edge witness: a vertex in N[v_i] \ N[w_i].
    pub witnesses: Vec<Vertex>,
}

/// The fully materialised reconfiguration graph of an instance.
pub(crate) struct ReconfGraph<'a> {
    g: &'a Graph,
    l: &'a ListAssignment,
    /// Mixed-radix weight of each vertex digit.
    radix: Vec<u64>,
    /// Sorted state keys of all proper colourings.
    pub states: Vec<u64>,
}

impl<'a> ReconfGraph<'a> {
    /// Enumerates every proper colouring, rejecting instances whose candidate
    /// state space exceeds `budget`.
    pub fn build(g: &'a Graph, l: &'a ListAssignment, budget: u64) -> Result<Self> {
        let n = g.n();
        let mut estimate: u128 = 1;
        for v in 0..n {
            estimate = estimate.saturating_mul(l.list(v).len() as u128);
        }
        if estimate > budget as u128 {
            return Err(Error::BudgetExceeded {
                estimate,
                budget,
            });
        }
        let mut radix = vec![0u64; n];
        let mut w = 1u64;
        for v in 0..n {
            radix[v] = w;
            w *= l.list(v).len() as u64;
        }
        // Enumerate by depth-first extension so improper prefixes are pruned
        // early; the resulting state keys come out in ascending order because
        // vertex 0 is the least significant digit and we fill high digits in
        // the outer loop.
        let mut states = Vec::new();
        let mut digits = vec![0usize; n];
        let mut colours: Vec<Colour> = vec![0; n];
        // Iterative odometer over digits, checking properness against
        // already-assigned smaller-indexed neighbours only.
        let mut v: usize = 0;
        loop {
            if v == n {
                let mut key = 0u64;
                for u in 0..n {
                    key += digits[u] as u64 * radix[u];
                }
                states.push(key);
                // Backtrack to advance.
                v = n - 1;
                loop {
                    digits[v] += 1;
                    if digits[v] < l.list(v).len() {
                        break;
                    }
                    digits[v] = 0;
                    if v == 0 {
                        states.sort_unstable();
                        return Ok(ReconfGraph { g, l, radix, states });
                    }
                    v -= 1;
                }
            }
            colours[v] = l.list(v)[digits[v]];
            let clash = g
                .neighbours(v)
                .iter()
                .any(|&u| u < v && colours[u] == colours[v]);
            if clash {
                // Advance this digit in place.
                loop {
                    digits[v] += 1;
                    if digits[v] < l.list(v).len() {
                        break;
                    }
                    digits[v] = 0;
                    if v == 0 {
                        states.sort_unstable();
                        return Ok(ReconfGraph { g, l, radix, states });
                    }
                    v -= 1;
                }
            } else {
                v += 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn decode(&self, key: u64) -> Colouring {
        let n = self.g.n();
        let mut colours = vec![0; n];
        for v in (0..n).rev() {
            let digit = (key / self.radix[v]) as usize % self.l.list(v).len();
            colours[v] = self.l.list(v)[digit];
        }
        Colouring::new(colours)
    }

    pub fn encode(&self, c: &Colouring) -> Result<u64> {
        let mut key = 0u64;
        for v in 0..self.g.n() {
            let digit = self
                .l
                .list(v)
                .binary_search(&c.get(v))
                .map_err(|_| Error::ColourNotInList {
                    vertex: v,
                    colour: c.get(v),
                })?;
            key += digit as u64 * self.radix[v];
        }
        Ok(key)
    }

    pub fn index_of(&self, key: u64) -> Option<usize> {
        self.states.binary_search(&key).ok()
    }

    /// Indices of all states one recolouring away from state `idx`.
    pub fn moves(&self, idx: usize) -> Vec<usize> {
        let key = self.states[idx];
        let c = self.decode(key);
        let mut out = Vec::new();
        for v in 0..self.g.n() {
            let cur = c.get(v);
            for (digit, &col) in self.l.list(v).iter().enumerate() {
                if col == cur {
                    continue;
                }
                if self.g.neighbours(v).iter().any(|&u| c.get(u) == col) {
                    continue;
                }
                let cur_digit = self.l.list(v).binary_search(&cur).unwrap() as u64;
                let nkey = key + digit as u64 * self.radix[v] - cur_digit * self.radix[v];
                // The target is proper by construction, so it is present.
                out.push(self.index_of(nkey).expect("proper neighbour state"));
            }
        }
        out
    }

    /// Component id per state, by BFS in ascending state order.
    pub fn components(&self) -> Vec<usize> {
        let m = self.len();
        let mut comp = vec![usize::MAX; m];
        let mut next = 0;
        for start in 0..m {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in self.moves(i) {
                    if comp[j] == usize::MAX {
                        comp[j] = next;
                        queue.push_back(j);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Shortest step sequence between two proper colourings, or `None` if
    /// they lie in different components.
    pub fn bfs_plan(
        &self,
        from: &Colouring,
        to: &Colouring,
    ) -> Result<Option<crate::kernel::RecolourPlan>> {
        let a = self
            .index_of(self.encode(from)?)
            .ok_or_else(|| Error::precondition("start colouring is not proper"))?;
        let b = self
            .index_of(self.encode(to)?)
            .ok_or_else(|| Error::precondition("target colouring is not proper"))?;
        let mut parent: Vec<usize> = vec![usize::MAX; self.len()];
        parent[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(i) = queue.pop_front() {
            if i == b {
                break;
            }
            for j in self.moves(i) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        if parent[b] == usize::MAX {
            return Ok(None);
        }
        let mut chain = vec![b];
        let mut i = b;
        while i != a {
            i = parent[i];
            chain.push(i);
        }
        chain.reverse();
        let mut steps = Vec::new();
        for pair in chain.windows(2) {
            let c0 = self.decode(self.states[pair[0]]);
            let c1 = self.decode(self.states[pair[1]]);
            let v = (0..self.g.n())
                .find(|&v| c0.get(v) != c1.get(v))
                .expect("adjacent states differ");
            steps.push(crate::kernel::RecolourStep {
                vertex: v,
                new_colour: c1.get(v),
            });
        }
        Ok(Some(crate::kernel::RecolourPlan { steps }))
    }

    /// Exact diameter of one component, given its member state indices.
    /// Materialises the component-local adjacency once, then runs a flat
    /// BFS from every member.
    fn component_diameter(&self, members: &[usize]) -> u64 {
        let mut local: std::collections::HashMap<usize, u32> =
            std::collections::HashMap::with_capacity(members.len());
        for (li, &gi) in members.iter().enumerate() {
            local.insert(gi, li as u32);
        }
        let adj: Vec<Vec<u32>> = members
            .iter()
            .map(|&gi| self.moves(gi).iter().map(|j| local[j]).collect())
            .collect();
        let mut dist = vec![u32::MAX; members.len()];
        let mut queue: VecDeque<u32> = VecDeque::new();
        let mut best = 0u32;
        for s in 0..members.len() as u32 {
            dist.fill(u32::MAX);
            dist[s as usize] = 0;
            queue.clear();
            queue.push_back(s);
            let mut ecc = 0u32;
            while let Some(i) = queue.pop_front() {
                let d = dist[i as usize];
                ecc = ecc.max(d);
                for &j in &adj[i as usize] {
                    if dist[j as usize] == u32::MAX {
                        dist[j as usize] = d + 1;
                        queue.push_back(j);
                    }
                }
            }
            best = best.max(ecc);
        }
        best as u64
    }
}

/// Builds the full reconfiguration graph and reports its component census.
pub fn explore(g: &Graph, l: &ListAssignment, budget: u64) -> Result<ReconfSummary> {
    let rg = ReconfGraph::build(g, l, budget)?;
    let comp = rg.components();
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (i, &c) in comp.iter().enumerate() {
        members[c].push(i);
    }
    let mut components: Vec<(u64, Option<u64>)> = Vec::with_capacity(ncomp);
    let mut frozen_count = 0u64;
    let mut non_singleton_count = 0u64;
    for m in &members {
        let size = m.len() as u64;
        let diameter = if m.len() == 1 {
            frozen_count += 1;
            Some(0)
        } else if m.len() <= DIAMETER_EXACT_LIMIT {
            non_singleton_count += 1;
            Some(rg.component_diameter(m))
        } else {
            non_singleton_count += 1;
            None
        };
        components.push((size, diameter));
    }
    components.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(ReconfSummary {
        total_colourings: rg.len() as u64,
        frozen_count,
        components,
        non_singleton_count,
    })
}

/// Exact recolouring distance between two proper colourings, or `None` if
/// they lie in different components.
pub fn reconf_distance(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
    budget: u64,
) -> Result<Option<u64>> {
    for c in [alpha, beta] {
        let status = colouring_status(g, l, c);
        if !status.proper {
            return Err(Error::precondition("colouring is not proper"));
        }
    }
    let rg = ReconfGraph::build(g, l, budget)?;
    let a = rg
        .index_of(rg.encode(alpha)?)
        .expect("proper colouring is a state");
    let b = rg
        .index_of(rg.encode(beta)?)
        .expect("proper colouring is a state");
    if a == b {
        return Ok(Some(0));
    }
    let mut dist: Vec<u64> = vec![u64::MAX; rg.len()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(i) = queue.pop_front() {
        for j in rg.moves(i) {
            if dist[j] == u64::MAX {
                dist[j] = dist[i] + 1;
                if j == b {
                    return Ok(Some(dist[j]));
                }
                queue.push_back(j);
            }
        }
    }
    Ok(None)
}

/// Frozen-ratio report: the fraction of frozen colourings against the
/// exponential bound 2^(-n/Delta^4).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrozenCensus {
    pub frozen: u64,
    pub total: u64,
    pub ratio: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Counts frozen colourings exactly and checks the ratio bound. Rejects
/// complete graphs (where the bound does not apply) and non-1-plus lists.
pub fn frozen_census(g: &Graph, l: &ListAssignment, budget: u64) -> Result<FrozenCensus> {
    if g.is_complete() {
        return Err(Error::precondition(
            "frozen-ratio bound does not apply to complete graphs",
        ));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph must be connected"));
    }
    let surplus = crate::graph::check_list_surplus(g, l);
    if !surplus.is_one_plus {
        return Err(Error::precondition(
            "every list must have at least deg(v) + 1 colours",
        ));
    }
    let rg = ReconfGraph::build(g, l, budget)?;
    let mut frozen = 0u64;
    for i in 0..rg.len() {
        if rg.moves(i).is_empty() {
            frozen += 1;
        }
    }
    let total = rg.len() as u64;
    let ratio = if total == 0 {
        0.0
    } else {
        frozen as f64 / total as f64
    };
    let delta = g.max_degree() as f64;
    let bound = (2f64).powf(-(g.n() as f64) / delta.powi(4));
    Ok(FrozenCensus {
        frozen,
        total,
        ratio,
        bound,
        ok: ratio <= bound,
    })
}

/// Exact maximum independent set by branch and bound over bitmasks.
/// Restricted to n <= 64 vertices.
fn maximum_independent_set(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    assert!(n <= 64, "independent-set search is limited to 64 vertices");
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbours(v)
                .iter()
                .fold(0u64, |m, &u| m | (1u64 << u))
        })
        .collect();

    fn solve(cand: u64, adj: &[u64], best: &mut u64, best_count: &mut u32, chosen: u64) {
        if cand == 0 {
            if chosen.count_ones() > *best_count {
                *best_count = chosen.count_ones();
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= *best_count {
            return;
        }
        // Branch on the candidate of maximum degree within the candidate set
        // (least id on ties) to prune quickly.
        let mut pick = cand.trailing_zeros() as usize;
        let mut pick_deg = (adj[pick] & cand).count_ones();
        let mut m = cand & (cand - 1);
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (adj[v] & cand).count_ones();
            if d > pick_deg {
                pick_deg = d;
                pick = v;
            }
        }
        // Include pick.
        solve(
            cand & !adj[pick] & !(1u64 << pick),
            adj,
            best,
            best_count,
            chosen | (1u64 << pick),
        );
        // Exclude pick.
        solve(cand & !(1u64 << pick), adj, best, best_count, chosen);
    }

    let mut best = 0u64;
    let mut best_count = 0u32;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    solve(full, &adj, &mut best, &mut best_count, 0);
    (0..n).filter(|&v| best & (1u64 << v) != 0).collect()
}

fn closed_nbhd(g: &Graph, v: Vertex) -> Vec<Vertex> {
    let mut s = g.neighbours(v).to_vec();
    s.push(v);
    s.sort_unstable();
    s
}

/// Builds a set of swap edges from a maximum independent set of the fourth
/// power of `g`: for each chosen vertex, an incident edge whose endpoints
/// have different closed neighbourhoods, plus a witness vertex seeing only
/// one endpoint. Rejects complete graphs.
pub fn swap_set(g: &Graph) -> Result<SwapSet> {
    if g.is_complete() {
        return Err(Error::precondition(
            "swap sets are undefined for complete graphs",
        ));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph must be connected"));
    }
    if g.n() > 64 {
        return Err(Error::precondition(
            "swap-set construction is limited to 64 vertices",
        ));
    }
    let g4 = g.fourth_power();
    let independent = maximum_independent_set(&g4);
    let mut edges = Vec::new();
    let mut witnesses = Vec::new();
    for &v in &independent {
        let nv = closed_nbhd(g, v);
        // A connected non-complete graph always yields such a neighbour: if
        // every neighbour had the same closed neighbourhood as v, the
        // component of v would be complete.
        let w = g
            .neighbours(v)
            .iter()
            .copied()
            .find(|&w| closed_nbhd(g, w) != nv)
            .ok_or_else(|| {
                Error::precondition(format!(
                    "no swap partner for vertex {v}: component is complete"
                ))
            })?;
        let nw = closed_nbhd(g, w);
        // Orient the edge so the witness lies in N[first] \ N[second].
        let in_first: Vec<Vertex> = nv.iter().copied().filter(|x| !nw.contains(x)).collect();
        if let Some(&x) = in_first.first() {
            edges.push((v, w));
            witnesses.push(x);
        } else {
            let x = *nw
                .iter()
                .find(|x| !nv.contains(x))
                .expect("closed neighbourhoods differ");
            edges.push((w, v));
            witnesses.push(x);
        }
    }
    Ok(SwapSet { edges, witnesses })
}

/// Verifies the swap-injection argument exhaustively: for every frozen
/// colouring and every non-empty subset M of the swap edges, the swapped
/// colouring is proper and unfrozen, and the images over distinct M are
/// pairwise disjoint.
pub fn check_swap_injection(g: &Graph, l: &ListAssignment, s: &SwapSet, budget: u64) -> Result<bool> {
    let rg = ReconfGraph::build(g, l, budget)?;
    let frozen: Vec<usize> = (0..rg.len()).filter(|&i| rg.moves(i).is_empty()).collect();
    if frozen.is_empty() {
        return Ok(true);
    }
    let k = s.edges.len();
    if k >= 20 {
        return Err(Error::precondition(
            "swap set too large for exhaustive subset check",
        ));
    }
    // image key -> subset mask that produced it
    let mut seen: std::collections::HashMap<u64, u32> = std::collections::HashMap::new();
    for &i in &frozen {
        let base = rg.decode(rg.states[i]);
        for mask in 1u32..(1u32 << k) {
            let mut c = base.clone();
            for (e, &(v, w)) in s.edges.iter().enumerate() {
                if mask & (1 << e) != 0 {
                    let cv = c.get(v);
                    let cw = c.get(w);
                    c.set(v, cw);
                    c.set(w, cv);
                }
            }
            // Proper, within lists, and unfrozen?
            let status = colouring_status(g, l, &c);
            if !status.proper || status.is_frozen {
                return Ok(false);
            }
            // Witness-level check: each swapped edge's witness is unfrozen.
            for (e, &x) in s.witnesses.iter().enumerate() {
                if mask & (1 << e) != 0 && is_vertex_frozen(g, l, &c, x) {
                    return Ok(false);
                }
            }
            let key = rg.encode(&c)?;
            if let Some(&other) = seen.get(&key) {
                if other != mask {
                    return Ok(false);
                }
            } else {
                seen.insert(key, mask);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn cycle(n: usize) -> Graph {
        build_graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        build_graph(n, &e).unwrap()
    }

    fn path(n: usize) -> Graph {
        build_graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn uniform(n: usize, cols: &[Colour]) -> ListAssignment {
        ListAssignment::new(vec![cols.to_vec(); n]).unwrap()
    }

    #[test]
    fn explore_c5_three_lists() {
        let summary = explore(&cycle(5), &uniform(5, &[1, 2, 3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(summary.total_colourings, 30);
        assert_eq!(summary.frozen_count, 0);
        assert_eq!(summary.non_singleton_count, 2);
        assert_eq!(summary.components.len(), 2);
        assert_eq!(summary.components[0].0, 15);
        assert_eq!(summary.components[1].0, 15);
    }

    #[test]
    fn explore_k3_all_frozen() {
        let summary = explore(&complete(3), &uniform(3, &[1, 2, 3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(summary.total_colourings, 6);
        assert_eq!(summary.frozen_count, 6);
        assert_eq!(summary.non_singleton_count, 0);
        assert!(summary.components.iter().all(|&(s, d)| s == 1 && d == Some(0)));
    }

    #[test]
    fn explore_shatter_3_2() {
        let (g, l) = crate::graph::gen_shatter_instance(3, 2).unwrap();
        let summary = explore(&g, &l, DEFAULT_BUDGET).unwrap();
        assert_eq!(summary.frozen_count, 0);
        assert_eq!(summary.components.len(), 6);
        assert!(summary.components.iter().all(|&(s, _)| s == 2));
    }

    #[test]
    fn explore_budget_exceeded() {
        let err = explore(&cycle(5), &uniform(5, &[1, 2, 3]), 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { estimate: 243, budget: 100 }));
    }

    #[test]
    fn component_sizes_invariant_under_colour_relabelling() {
        // Swap colours 1 <-> 3 everywhere; component census must not change.
        let g = cycle(5);
        let a = explore(&g, &uniform(5, &[1, 2, 3]), DEFAULT_BUDGET).unwrap();
        let b = explore(&g, &uniform(5, &[3, 2, 1]), DEFAULT_BUDGET).unwrap();
        assert_eq!(a.components, b.components);
    }

    #[test]
    fn distance_zero_and_symmetry() {
        let g = cycle(5);
        let l = uniform(5, &[1, 2, 3]);
        let a = Colouring::new(vec![1, 2, 1, 2, 3]);
        let b = Colouring::new(vec![2, 1, 2, 1, 3]);
        assert_eq!(reconf_distance(&g, &l, &a, &a, DEFAULT_BUDGET).unwrap(), Some(0));
        let d1 = reconf_distance(&g, &l, &a, &b, DEFAULT_BUDGET).unwrap();
        let d2 = reconf_distance(&g, &l, &b, &a, DEFAULT_BUDGET).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn distance_k3_four_lists() {
        let g = complete(3);
        let l = uniform(3, &[1, 2, 3, 4]);
        let a = Colouring::new(vec![1, 2, 3]);
        let b = Colouring::new(vec![2, 1, 3]);
        assert_eq!(
            reconf_distance(&g, &l, &a, &b, DEFAULT_BUDGET).unwrap(),
            Some(3)
        );
    }

    #[test]
    fn distance_across_components_is_none() {
        // C5 windings: (1,2,1,2,3) and its reverse-orientation partner lie in
        // different components.
        let g = cycle(5);
        let l = uniform(5, &[1, 2, 3]);
        let a = Colouring::new(vec![1, 2, 1, 2, 3]);
        let b = Colouring::new(vec![2, 1, 2, 1, 3]);
        let summary = explore(&g, &l, DEFAULT_BUDGET).unwrap();
        assert_eq!(summary.components.len(), 2);
        let d = reconf_distance(&g, &l, &a, &b, DEFAULT_BUDGET).unwrap();
        // a and b might or might not share a component; check consistency by
        // finding some pair across components.
        let _ = d;
        // Exhaustive: count reachable states from a; must be 15.
        let rg = ReconfGraph::build(&g, &l, DEFAULT_BUDGET).unwrap();
        let comp = rg.components();
        let ai = rg.index_of(rg.encode(&a).unwrap()).unwrap();
        let reach = comp.iter().filter(|&&c| c == comp[ai]).count();
        assert_eq!(reach, 15);
        // Any state in the other component is unreachable.
        let other = (0..rg.len()).find(|&i| comp[i] != comp[ai]).unwrap();
        let oc = rg.decode(rg.states[other]);
        assert_eq!(
            reconf_distance(&g, &l, &a, &oc, DEFAULT_BUDGET).unwrap(),
            None
        );
    }

    #[test]
    fn frozen_census_c5() {
        let fc = frozen_census(&cycle(5), &uniform(5, &[1, 2, 3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(fc.frozen, 0);
        assert_eq!(fc.total, 30);
        assert!(fc.ok);
    }

    #[test]
    fn frozen_census_rejects_complete() {
        assert!(frozen_census(&complete(4), &uniform(4, &[1, 2, 3, 4]), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn frozen_census_star() {
        // Star K_{1,3}: centre list {1,2,3,4}, leaves {1,2}.
        let g = build_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = ListAssignment::new(vec![
            vec![1, 2, 3, 4],
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
        ])
        .unwrap();
        let fc = frozen_census(&g, &l, DEFAULT_BUDGET).unwrap();
        // Frozen needs every other centre colour on a leaf: impossible
        // (leaves only carry colours 1 and 2, centre has 3 spare colours).
        // Leaves frozen need their other colour on the centre.
        assert!(fc.total > 0);
        assert!(fc.ok);
    }

    #[test]
    fn mis_path_and_cycle() {
        assert_eq!(maximum_independent_set(&path(5)).len(), 3);
        assert_eq!(maximum_independent_set(&cycle(6)).len(), 3);
        assert_eq!(maximum_independent_set(&complete(4)).len(), 1);
    }

    #[test]
    fn swap_set_p5() {
        let s = swap_set(&path(5)).unwrap();
        assert!(!s.edges.is_empty());
        assert_eq!(s.edges.len(), s.witnesses.len());
        // Disjoint closed-neighbourhood unions.
        let g = path(5);
        let mut seen: Vec<Vertex> = Vec::new();
        for &(v, w) in &s.edges {
            let mut u = closed_nbhd(&g, v);
            u.extend(closed_nbhd(&g, w));
            u.sort_unstable();
            u.dedup();
            for x in &u {
                assert!(!seen.contains(x));
            }
            seen.extend(u);
        }
        // Witness sees only the first endpoint.
        for (&(v, w), &x) in s.edges.iter().zip(&s.witnesses) {
            assert!(closed_nbhd(&g, v).contains(&x));
            assert!(!closed_nbhd(&g, w).contains(&x));
        }
    }

    #[test]
    fn swap_set_petersen() {
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        let g = build_graph(10, &edges).unwrap();
        let s = swap_set(&g).unwrap();
        assert!(!s.edges.is_empty());
    }

    #[test]
    fn swap_set_rejects_complete() {
        assert!(swap_set(&complete(5)).is_err());
    }

    #[test]
    fn swap_injection_no_frozen_is_true() {
        let g = cycle(5);
        let l = uniform(5, &[1, 2, 3]);
        let s = swap_set(&g).unwrap();
        assert!(check_swap_injection(&g, &l, &s, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn swap_injection_with_frozen_colourings() {
        // P3 with tight 1-plus lists has frozen colourings, e.g. (1, 2, 3)
        // under lists {1,2}, {1,2,3}, {2,3}.
        let g = path(3);
        let l = ListAssignment::new(vec![vec![1, 2], vec![1, 2, 3], vec![2, 3]]).unwrap();
        let rg = ReconfGraph::build(&g, &l, DEFAULT_BUDGET).unwrap();
        let frozen = (0..rg.len()).filter(|&i| rg.moves(i).is_empty()).count();
        assert!(frozen >= 1);
        let s = swap_set(&g).unwrap();
        assert_eq!(s.edges.len(), 1);
        assert!(check_swap_injection(&g, &l, &s, DEFAULT_BUDGET).unwrap());
    }
}
