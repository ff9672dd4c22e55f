//! Correspondence (DP) colouring covers.
//!
//! A cover of a base graph assigns each vertex a private list of colour
//! indices and, over each base edge, a matching between the two lists that
//! says which index pairs conflict. A cover colouring picks one index per
//! vertex avoiding every matched pair. Identity matchings everywhere recover
//! ordinary list colouring; twisting the matchings produces state spaces that
//! ordinary list colouring cannot, which is what this module explores.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph, Vertex};
use crate::oracle::ReconfSummary;

/// A correspondence cover: per-vertex list sizes and, for each base edge, the
/// set of conflicting index pairs (a matching between the two lists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub base: Graph,
    /// Number of colour indices available at each vertex (indices 0-based).
    pub list_sizes: Vec<usize>,
    /// Conflicting pairs per base edge, keyed `(u, v)` with `u < v`; a pair
    /// `(i, j)` forbids choosing index `i` at `u` together with `j` at `v`.
    pub cross_edges: BTreeMap<(Vertex, Vertex), Vec<(usize, usize)>>,
}

/// A choice of one colour index per base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverColouring {
    pub choice: Vec<usize>,
}

/// Outcome of [`validate_cover`]: either everything holds, or the first
/// violated condition in reading order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverValidation {
    pub ok: bool,
    pub first_violation: Option<String>,
}

/// Checks the cover axioms: sizes positive, cross edges only over base
/// edges with in-range indices, and each cross set a matching (no repeated
/// endpoint on either side).
pub fn validate_cover(c: &Cover) -> CoverValidation {
    let fail = |msg: String| CoverValidation {
        ok: false,
        first_violation: Some(msg),
    };
    if c.list_sizes.len() != c.base.n() {
        return fail(format!(
            "list_sizes has {} entries for a base graph on {} vertices",
            c.list_sizes.len(),
            c.base.n()
        ));
    }
    if let Some(v) = c.list_sizes.iter().position(|&s| s == 0) {
        return fail(format!("vertex {v} has an empty list"));
    }
    for (&(u, v), pairs) in &c.cross_edges {
        if u >= v {
            return fail(format!("edge key ({u}, {v}) is not ordered u < v"));
        }
        if v >= c.base.n() || !c.base.has_edge(u, v) {
            return fail(format!(
                "cross edges between non-adjacent base vertices {u} and {v}"
            ));
        }
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(i, j) in pairs {
            if i >= c.list_sizes[u] || j >= c.list_sizes[v] {
                return fail(format!(
                    "index pair ({i}, {j}) out of range on edge ({u}, {v})"
                ));
            }
            if !left.insert(i) || !right.insert(j) {
                return fail(format!(
                    "cross pairs on edge ({u}, {v}) are not a matching: endpoint repeated"
                ));
            }
        }
    }
    CoverValidation {
        ok: true,
        first_violation: None,
    }
}

fn conflicts(c: &Cover, u: Vertex, v: Vertex, iu: usize, iv: usize) -> bool {
    let (key, pair) = if u < v { ((u, v), (iu, iv)) } else { ((v, u), (iv, iu)) };
    c.cross_edges
        .get(&key)
        .is_some_and(|ps| ps.contains(&pair))
}

fn state_count(c: &Cover) -> u128 {
    c.list_sizes.iter().map(|&s| s as u128).product()
}

/// Every valid cover colouring, in lexicographic choice order.
pub fn cover_colourings(c: &Cover, budget: u64) -> Result<Vec<CoverColouring>> {
    let val = validate_cover(c);
    if !val.ok {
        return Err(Error::precondition(val.first_violation.unwrap()));
    }
    let estimate = state_count(c);
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget,
        });
    }
    let n = c.base.n();
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    // Depth-first lexicographic enumeration with per-vertex edge checks
    // against already-chosen earlier vertices.
    fn rec(c: &Cover, choice: &mut Vec<usize>, v: usize, out: &mut Vec<CoverColouring>) {
        if v == c.base.n() {
            out.push(CoverColouring {
                choice: choice.clone(),
            });
            return;
        }
        'idx: for i in 0..c.list_sizes[v] {
            for &u in c.base.neighbours(v) {
                if u < v && conflicts(c, u, v, choice[u], i) {
                    continue 'idx;
                }
            }
            choice[v] = i;
            rec(c, choice, v + 1, out);
        }
    }
    rec(c, &mut choice, 0, &mut out);
    Ok(out)
}

/// Component census of the cover reconfiguration graph, whose states are the
/// valid cover colourings and whose moves change one vertex's index.
pub fn cover_reconf(c: &Cover, budget: u64) -> Result<ReconfSummary> {
    let states = cover_colourings(c, budget)?;
    let index: BTreeMap<&Vec<usize>, usize> =
        states.iter().enumerate().map(|(i, s)| (&s.choice, i)).collect();
    let n = c.base.n();
    let neighbours_of = |i: usize| -> Vec<usize> {
        let mut out = Vec::new();
        for v in 0..n {
            for j in 0..c.list_sizes[v] {
                if j == states[i].choice[v] {
                    continue;
                }
                let mut cand = states[i].choice.clone();
                cand[v] = j;
                if c.base
                    .neighbours(v)
                    .iter()
                    .all(|&u| !conflicts(c, u, v, cand[u], j))
                {
                    if let Some(&k) = index.get(&cand) {
                        out.push(k);
                    }
                }
            }
        }
        out
    };
    // Connected components by BFS.
    let m = states.len();
    let mut comp = vec![usize::MAX; m];
    let mut ncomp = 0usize;
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut q = VecDeque::from([s]);
        comp[s] = ncomp;
        while let Some(x) = q.pop_front() {
            for y in neighbours_of(x) {
                if comp[y] == usize::MAX {
                    comp[y] = ncomp;
                    q.push_back(y);
                }
            }
        }
        ncomp += 1;
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for (i, &cix) in comp.iter().enumerate() {
        members[cix].push(i);
    }
    let ecc = |src: usize| -> u64 {
        let mut dist: BTreeMap<usize, u64> = BTreeMap::from([(src, 0)]);
        let mut q = VecDeque::from([src]);
        let mut best = 0;
        while let Some(x) = q.pop_front() {
            let d = dist[&x];
            best = best.max(d);
            for y in neighbours_of(x) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    q.push_back(y);
                }
            }
        }
        best
    };
    let mut components: Vec<(u64, Option<u64>)> = Vec::with_capacity(ncomp);
    let mut frozen_count = 0u64;
    let mut non_singleton_count = 0u64;
    for mem in &members {
        let size = mem.len() as u64;
        let diameter = if mem.len() == 1 {
            frozen_count += 1;
            Some(0)
        } else {
            non_singleton_count += 1;
            Some(mem.iter().map(|&i| ecc(i)).max().unwrap())
        };
        components.push((size, diameter));
    }
    components.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Ok(ReconfSummary {
        total_colourings: m as u64,
        frozen_count,
        components,
        non_singleton_count,
    })
}

fn complete_base(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    build_graph(n, &e).unwrap()
}

fn identity_pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).map(|i| (i, i)).collect()
}

/// Fully straight cover of a graph: identity matchings of the given fold over
/// every edge. Equivalent to list colouring with identical lists.
pub fn make_straight_cover(base: &Graph, fold: usize) -> Cover {
    let cross_edges = base
        .edges()
        .iter()
        .map(|&(u, v)| ((u, v), identity_pairs(fold)))
        .collect();
    Cover {
        base: base.clone(),
        list_sizes: vec![fold; base.n()],
        cross_edges,
    }
}

/// Fold-`n` cover of `K_n` whose first two colour indices are swapped on
/// every edge inside the first `q` vertices and straight elsewhere. Its
/// reconfiguration graph splits into two non-singleton components.
pub fn make_twisted_clique_cover(n: usize, q: usize) -> Result<Cover> {
    if !(2..n).contains(&q) {
        return Err(Error::precondition(format!(
            "q = {q} out of range 2 ..= {} for n = {n}",
            n.saturating_sub(1)
        )));
    }
    let base = complete_base(n);
    let mut cross_edges = BTreeMap::new();
    for &(u, v) in base.edges() {
        let mut pairs: Vec<(usize, usize)> = if v < q {
            vec![(0, 1), (1, 0)]
        } else {
            vec![(0, 0), (1, 1)]
        };
        pairs.extend((2..n).map(|i| (i, i)));
        cross_edges.insert((u, v), pairs);
    }
    Ok(Cover {
        base,
        list_sizes: vec![n; n],
        cross_edges,
    })
}

/// Fold-4 cover of `K_4` whose cross-edge graph is the Möbius–Kantor graph
/// (cubic, bipartite, girth 6 on 16 vertices): straight matchings from the
/// first vertex and cyclic index shifts around the remaining triangle
/// (+1, +1, and +3 so the triangle holonomy is a transposition-free shift).
/// Its reconfiguration graph splits into two components of 24 colourings.
pub fn make_mobius_kantor_cover() -> Cover {
    let base = complete_base(4);
    let mut cross_edges: BTreeMap<(Vertex, Vertex), Vec<(usize, usize)>> = base
        .edges()
        .iter()
        .map(|&(u, v)| ((u, v), identity_pairs(4)))
        .collect();
    let shift = |s: usize| (0..4).map(|i| (i, (i + s) % 4)).collect::<Vec<_>>();
    cross_edges.insert((1, 2), shift(1));
    cross_edges.insert((2, 3), shift(1));
    cross_edges.insert((1, 3), shift(3));
    Cover {
        base,
        list_sizes: vec![4; 4],
        cross_edges,
    }
}

// ---------------------------------------------------------------------------
// Isomorphism and census
// ---------------------------------------------------------------------------

/// All permutations of 0..k in lexicographic order, each as an index map.
fn all_perms(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// A full cover of `K_n` viewed as one permutation per ordered base pair.
/// Returns the `u < v` oriented maps, or `None` if some matching is not a
/// permutation of the full index range.
fn full_cover_perms(c: &Cover, fold: usize) -> Option<BTreeMap<(Vertex, Vertex), Vec<usize>>> {
    if c.list_sizes.iter().any(|&s| s != fold) {
        return None;
    }
    let mut out = BTreeMap::new();
    for &(u, v) in c.base.edges() {
        let pairs = c.cross_edges.get(&(u, v))?;
        if pairs.len() != fold {
            return None;
        }
        let mut m = vec![usize::MAX; fold];
        for &(i, j) in pairs {
            m[i] = j;
        }
        if m.contains(&usize::MAX) {
            return None;
        }
        out.insert((u, v), m);
    }
    Some(out)
}

fn graph_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    all_perms(g.n())
        .into_iter()
        .filter(|p| {
            g.edges()
                .iter()
                .all(|&(u, v)| g.has_edge(p[u], p[v]))
        })
        .collect()
}

/// Cover isomorphism: a base-graph automorphism together with per-vertex
/// index bijections mapping one cross-edge set exactly onto the other.
/// Supports full covers (every matching a permutation of a uniform fold).
pub fn covers_isomorphic(a: &Cover, b: &Cover) -> Result<bool> {
    if a.base.n() != b.base.n() || a.base.edges() != b.base.edges() {
        return Ok(false);
    }
    let fold = a.list_sizes.first().copied().unwrap_or(0);
    let (ma, mb) = match (full_cover_perms(a, fold), full_cover_perms(b, fold)) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            return Err(Error::precondition(
                "cover isomorphism implemented for full covers only",
            ))
        }
    };
    let oriented = |m: &BTreeMap<(Vertex, Vertex), Vec<usize>>, u: Vertex, v: Vertex| -> Vec<usize> {
        if u < v {
            m[&(u, v)].clone()
        } else {
            invert(&m[&(v, u)])
        }
    };
    let n = a.base.n();
    let perms = all_perms(fold);
    for sigma in graph_automorphisms(&a.base) {
        // sigma maps vertices of a to vertices of b. Propagate the index
        // bijections from vertex 0 along a BFS tree, then verify all edges.
        let order: Vec<Vertex> = (0..n).collect();
        for pi0 in &perms {
            let mut pi: Vec<Option<Vec<usize>>> = vec![None; n];
            pi[order[0]] = Some(pi0.clone());
            let mut ok = true;
            // Breadth-first propagation over the base graph.
            let mut q = VecDeque::from([order[0]]);
            let mut seen = vec![false; n];
            seen[order[0]] = true;
            while let Some(u) = q.pop_front() {
                for &v in a.base.neighbours(u) {
                    if !seen[v] {
                        seen[v] = true;
                        // pi_v = m_b(sigma u, sigma v) ∘ pi_u ∘ m_a(u, v)^{-1}
                        let t = compose(
                            &oriented(&mb, sigma[u], sigma[v]),
                            &compose(pi[u].as_ref().unwrap(), &invert(&oriented(&ma, u, v))),
                        );
                        pi[v] = Some(t);
                        q.push_back(v);
                    }
                }
            }
            'edges: {
                for &(u, v) in a.base.edges() {
                    let lhs = compose(
                        pi[v].as_ref().unwrap(),
                        &compose(&oriented(&ma, u, v), &invert(pi[u].as_ref().unwrap())),
                    );
                    if lhs != oriented(&mb, sigma[u], sigma[v]) {
                        ok = false;
                        break 'edges;
                    }
                }
            }
            if ok {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// One isomorphism class of the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverClass {
    pub representative: Cover,
    pub bad: bool,
    pub summary: ReconfSummary,
}

/// Census of full covers of a clique up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCensus {
    pub n: usize,
    pub fold: usize,
    pub total_isomorphism_classes: usize,
    pub bad_classes: usize,
    pub class_reps: Vec<CoverClass>,
}

/// A cover is bad when its reconfiguration graph has two or more
/// non-singleton components: unfrozen colourings that cannot reach each
/// other.
pub fn cover_is_bad(summary: &ReconfSummary) -> bool {
    summary.non_singleton_count >= 2
}

fn cover_from_offtree_perms(
    n: usize,
    fold: usize,
    offtree: &[(Vertex, Vertex)],
    assign: &[Vec<usize>],
) -> Cover {
    let base = complete_base(n);
    let mut cross_edges: BTreeMap<(Vertex, Vertex), Vec<(usize, usize)>> = base
        .edges()
        .iter()
        .map(|&(u, v)| ((u, v), identity_pairs(fold)))
        .collect();
    for (e, m) in offtree.iter().zip(assign) {
        cross_edges.insert(*e, m.iter().enumerate().map(|(i, &j)| (i, j)).collect());
    }
    Cover {
        base,
        list_sizes: vec![fold; n],
        cross_edges,
    }
}

/// Enumerates all full covers of `K_n` with fold `n` up to isomorphism and
/// classifies each class as bad or not. Supported for n in {3, 4}.
pub fn census_covers(n: usize, budget: u64) -> Result<CoverCensus> {
    if !(3..=4).contains(&n) {
        return Err(Error::precondition("census supported for n in {3, 4}"));
    }
    let fold = n;
    let perms = all_perms(fold);
    let np = perms.len();
    let perm_index: BTreeMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // Composition and inverse tables over S_fold.
    let comp: Vec<Vec<usize>> = (0..np)
        .map(|i| {
            (0..np)
                .map(|j| perm_index[&compose(&perms[i], &perms[j])])
                .collect()
        })
        .collect();
    let inv: Vec<usize> = (0..np).map(|i| perm_index[&invert(&perms[i])]).collect();

    // Gauge: per-vertex index bijections can force every star edge (0, v) to
    // the identity, so only edges among 1..n ("off-tree") carry freedom.
    let mut offtree: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 1..n {
        for v in u + 1..n {
            offtree.push((u, v));
        }
    }
    let ne = offtree.len();
    let sigmas = all_perms(n); // Aut(K_n)

    // Canonical key of a star-gauged cover under base automorphisms and the
    // residual re-gauging; edges are oriented maps e[u][v] as permutation ids.
    let id = perm_index[&(0..fold).collect::<Vec<usize>>()];
    let canonical = |assign: &[usize]| -> Vec<usize> {
        // Full oriented matrix of the gauged cover.
        let mut m = vec![vec![id; n]; n];
        for (k, &(u, v)) in offtree.iter().enumerate() {
            m[u][v] = assign[k];
            m[v][u] = inv[assign[k]];
        }
        let mut best: Option<Vec<usize>> = None;
        for sigma in &sigmas {
            // Transformed cover: edge (u, v) of the image carries the map of
            // the preimage edge.
            let si = invert(sigma);
            let mp = |u: usize, v: usize| m[si[u]][si[v]];
            for pi0 in 0..np {
                // Re-gauge to star-identity: pi_v = pi_0 ∘ m'(0, v)^{-1}.
                let pis: Vec<usize> = (0..n)
                    .map(|v| if v == 0 { pi0 } else { comp[pi0][inv[mp(0, v)]] })
                    .collect();
                let key: Vec<usize> = offtree
                    .iter()
                    .map(|&(u, v)| comp[pis[v]][comp[mp(u, v)][inv[pis[u]]]])
                    .collect();
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.unwrap()
    };

    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut assign = vec![0usize; ne];
    loop {
        let key = canonical(&assign);
        classes.entry(key).or_insert_with(|| assign.clone());
        // Mixed-radix increment.
        let mut k = 0;
        while k < ne {
            assign[k] += 1;
            if assign[k] < np {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
        if k == ne {
            break;
        }
    }

    let mut class_reps = Vec::new();
    let mut bad_classes = 0;
    for rep in classes.values() {
        let assign_perms: Vec<Vec<usize>> = rep.iter().map(|&i| perms[i].clone()).collect();
        let cover = cover_from_offtree_perms(n, fold, &offtree, &assign_perms);
        let summary = cover_reconf(&cover, budget)?;
        let bad = cover_is_bad(&summary);
        if bad {
            bad_classes += 1;
        }
        class_reps.push(CoverClass {
            representative: cover,
            bad,
            summary,
        });
    }
    Ok(CoverCensus {
        n,
        fold,
        total_isomorphism_classes: class_reps.len(),
        bad_classes,
        class_reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{explore, DEFAULT_BUDGET};
    use crate::ListAssignment;

    fn k(n: usize) -> Graph {
        complete_base(n)
    }

    #[test]
    fn straight_k3_is_valid_and_has_six_colourings() {
        let c = make_straight_cover(&k(3), 3);
        assert!(validate_cover(&c).ok);
        assert_eq!(cover_colourings(&c, DEFAULT_BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn validation_rejects_broken_matchings_and_stray_edges() {
        let mut c = make_straight_cover(&k(3), 3);
        c.cross_edges
            .get_mut(&(0, 1))
            .unwrap()
            .push((0, 2)); // endpoint 0 repeated on the left
        let v = validate_cover(&c);
        assert!(!v.ok);
        assert!(v.first_violation.unwrap().contains("matching"));

        let mut c2 = make_straight_cover(&crate::graph::build_graph(3, &[(0, 1), (1, 2)]).unwrap(), 2);
        c2.cross_edges.insert((0, 2), vec![(0, 0)]);
        let v2 = validate_cover(&c2);
        assert!(!v2.ok);
        assert!(v2.first_violation.unwrap().contains("non-adjacent"));
    }

    #[test]
    fn fold1_straight_k2_has_no_colourings() {
        let c = make_straight_cover(&k(2), 1);
        assert!(cover_colourings(&c, DEFAULT_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn straight_cover_matches_list_colouring() {
        // Reduction check: a fully straight cover behaves exactly like
        // identical lists {1..fold}.
        let paw = crate::graph::build_graph(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        for (g, fold) in [(k(3), 3), (crate::graph::build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), 3), (paw, 4)] {
            let c = make_straight_cover(&g, fold);
            let cs = cover_reconf(&c, DEFAULT_BUDGET).unwrap();
            let l = ListAssignment::new(vec![(1..=fold as u32).collect(); g.n()]).unwrap();
            let ls = explore(&g, &l, DEFAULT_BUDGET).unwrap();
            assert_eq!(cs, ls);
        }
    }

    #[test]
    fn twisted_clique_two_components() {
        // All-twist cover of K4 (q = n - 1 is isomorphic to q = n): exactly
        // two non-singleton components holding the two all-equal choices.
        let c = make_twisted_clique_cover(4, 3).unwrap();
        assert!(validate_cover(&c).ok);
        let s = cover_reconf(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.non_singleton_count, 2);

        let q2 = make_twisted_clique_cover(4, 2).unwrap();
        let s2 = cover_reconf(&q2, DEFAULT_BUDGET).unwrap();
        assert_eq!(s2.non_singleton_count, 2);
        assert!(s2.frozen_count > 0);

        assert!(make_twisted_clique_cover(4, 1).is_err());
        assert!(make_twisted_clique_cover(4, 4).is_err());
    }

    #[test]
    fn all_zero_and_all_one_lie_in_different_components() {
        // Everywhere-twist cover of K4 (q = n in the twist rule): the
        // all-index-0 and all-index-1 choices are both valid but separated.
        let mut c = make_straight_cover(&k(4), 4);
        for (_, pairs) in c.cross_edges.iter_mut() {
            pairs[0] = (0, 1);
            pairs[1] = (1, 0);
        }
        let states = cover_colourings(&c, DEFAULT_BUDGET).unwrap();
        assert!(states.iter().any(|s| s.choice == vec![0, 0, 0, 0]));
        assert!(states.iter().any(|s| s.choice == vec![1, 1, 1, 1]));
        let s = cover_reconf(&c, DEFAULT_BUDGET).unwrap();
        // Two equal halves: each non-singleton component must contain exactly
        // one of the all-equal states, so the component sizes are equal and
        // no path exists between them (checked by a direct BFS).
        let idx = |ch: &[usize]| states.iter().position(|s| s.choice == ch).unwrap();
        let (a, b) = (idx(&[0, 0, 0, 0]), idx(&[1, 1, 1, 1]));
        // BFS from a, expect never to reach b.
        let mut seen = vec![false; states.len()];
        let mut q = std::collections::VecDeque::from([a]);
        seen[a] = true;
        while let Some(x) = q.pop_front() {
            for v in 0..4 {
                for j in 0..4 {
                    if j == states[x].choice[v] {
                        continue;
                    }
                    let mut cand = states[x].choice.clone();
                    cand[v] = j;
                    if (0..4).all(|u| u == v || !conflicts(&c, u, v, cand[u], j)) {
                        if let Some(y) = states.iter().position(|s| s.choice == cand) {
                            if !seen[y] {
                                seen[y] = true;
                                q.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        assert!(!seen[b]);
        assert_eq!(s.components[0].0, s.components[1].0);
    }

    #[test]
    fn mobius_kantor_cover_components_and_signature() {
        let c = make_mobius_kantor_cover();
        assert!(validate_cover(&c).ok);
        assert_eq!(cover_colourings(&c, DEFAULT_BUDGET).unwrap().len(), 48);
        let s = cover_reconf(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.non_singleton_count, 2);
        assert_eq!(s.components[0].0, 24);
        assert_eq!(s.components[1].0, 24);

        // Cross-edge graph signature: cubic on 16 vertices with girth 6.
        let idx = |v: usize, i: usize| v * 4 + i;
        let mut adj = vec![vec![false; 16]; 16];
        for (&(u, v), pairs) in &c.cross_edges {
            for &(i, j) in pairs {
                adj[idx(u, i)][idx(v, j)] = true;
                adj[idx(v, j)][idx(u, i)] = true;
            }
        }
        for row in &adj {
            assert_eq!(row.iter().filter(|&&b| b).count(), 3);
        }
        // Girth via BFS from every vertex.
        let mut girth = usize::MAX;
        for s0 in 0..16 {
            let mut dist = vec![usize::MAX; 16];
            let mut parent = vec![usize::MAX; 16];
            dist[s0] = 0;
            let mut q = std::collections::VecDeque::from([s0]);
            while let Some(x) = q.pop_front() {
                for y in 0..16 {
                    if !adj[x][y] {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        q.push_back(y);
                    } else if parent[x] != y {
                        girth = girth.min(dist[x] + dist[y] + 1);
                    }
                }
            }
        }
        assert_eq!(girth, 6);
    }

    #[test]
    fn isomorphism_basics() {
        let c = make_twisted_clique_cover(4, 3).unwrap();
        assert!(covers_isomorphic(&c, &c).unwrap());
        // q = n - 1 twist vs the everywhere-twist cover.
        let mut all_twist = make_straight_cover(&k(4), 4);
        for (_, pairs) in all_twist.cross_edges.iter_mut() {
            pairs[0] = (0, 1);
            pairs[1] = (1, 0);
        }
        assert!(covers_isomorphic(&c, &all_twist).unwrap());
        let straight = make_straight_cover(&k(3), 3);
        let t32 = make_twisted_clique_cover(3, 2).unwrap();
        assert!(!covers_isomorphic(&straight, &t32).unwrap());
    }

    #[test]
    fn census_k3() {
        let census = census_covers(3, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.total_isomorphism_classes, 3);
        assert_eq!(census.bad_classes, 1);
        // The bad class is the twisted clique.
        let bad: Vec<&CoverClass> = census.class_reps.iter().filter(|c| c.bad).collect();
        let t32 = make_twisted_clique_cover(3, 2).unwrap();
        assert!(covers_isomorphic(&bad[0].representative, &t32).unwrap());
        // The straight cover is never bad.
        let straight = make_straight_cover(&k(3), 3);
        let s = cover_reconf(&straight, DEFAULT_BUDGET).unwrap();
        assert!(!cover_is_bad(&s));
    }

    #[test]
    fn census_k3_matches_unpruned_enumeration() {
        // Cross-check the star-gauge pruning: enumerate all 6^3 covers with
        // every edge free and reduce by pairwise isomorphism.
        let perms = all_perms(3);
        let base = k(3);
        let edges = base.edges();
        let mut reps: Vec<Cover> = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                for d in 0..6 {
                    let assign = [&perms[a], &perms[b], &perms[d]];
                    let mut cross = BTreeMap::new();
                    for (e, m) in edges.iter().zip(assign) {
                        cross.insert(
                            *e,
                            m.iter().enumerate().map(|(i, &j)| (i, j)).collect::<Vec<_>>(),
                        );
                    }
                    let c = Cover {
                        base: base.clone(),
                        list_sizes: vec![3; 3],
                        cross_edges: cross,
                    };
                    if !reps.iter().any(|r| covers_isomorphic(r, &c).unwrap()) {
                        reps.push(c);
                    }
                }
            }
        }
        assert_eq!(reps.len(), 3);
    }

    #[test]
    fn census_k4() {
        let census = census_covers(4, DEFAULT_BUDGET).unwrap();
        assert_eq!(census.total_isomorphism_classes, 75);
        assert_eq!(census.bad_classes, 3);
        // The three bad classes are exactly the two twisted cliques and the
        // Möbius–Kantor cover.
        let targets = [
            make_twisted_clique_cover(4, 2).unwrap(),
            make_twisted_clique_cover(4, 3).unwrap(),
            make_mobius_kantor_cover(),
        ];
        let bad: Vec<&CoverClass> = census.class_reps.iter().filter(|c| c.bad).collect();
        for t in &targets {
            assert_eq!(
                bad.iter()
                    .filter(|c| covers_isomorphic(&c.representative, t).unwrap())
                    .count(),
                1
            );
        }
    }

    #[test]
    fn census_rejects_unsupported_sizes() {
        assert!(census_covers(2, DEFAULT_BUDGET).is_err());
        assert!(census_covers(5, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn summaries_invariant_under_isomorphic_relabelling() {
        // Relabel the twisted K4 cover by a vertex swap and an index swap;
        // colouring count and component multiset must not change.
        let c = make_twisted_clique_cover(4, 2).unwrap();
        let mut d = c.clone();
        // Swap indices 2 and 3 at vertex 0.
        let swap = |i: usize| match i {
            2 => 3,
            3 => 2,
            x => x,
        };
        for (&(u, v), pairs) in c.cross_edges.iter() {
            if u == 0 {
                d.cross_edges
                    .insert((u, v), pairs.iter().map(|&(i, j)| (swap(i), j)).collect());
            }
        }
        assert!(validate_cover(&d).ok);
        assert!(covers_isomorphic(&c, &d).unwrap());
        let sc = cover_reconf(&c, DEFAULT_BUDGET).unwrap();
        let sd = cover_reconf(&d, DEFAULT_BUDGET).unwrap();
        assert_eq!(sc.total_colourings, sd.total_colourings);
        assert_eq!(sc.components, sd.components);
    }
}
