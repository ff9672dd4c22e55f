//! Constructive recolouring planners.
//!
//! Every planner returns an explicit step sequence transforming one proper
//! colouring into another, together with a trace naming the procedure that
//! handled each (sub)graph. Plans always verify under
//! [`crate::kernel::verify_plan`]; step-count bounds are per procedure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    build_graph, check_list_surplus, shortest_path, Colour, Colouring, Graph, ListAssignment,
    Vertex,
};
use crate::kernel::{
    colouring_status, fix_leaf, free_colour, is_vertex_frozen, verify_plan, RecolourPlan,
    RecolourStep,
};

/// One trace record: which procedure handled which vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub lemma: String,
    pub vertices: Vec<Vertex>,
}

/// A complete planning result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanOutcome {
    pub plan: RecolourPlan,
    pub end: Colouring,
    pub lemma_trace: Vec<TraceEntry>,
}

fn trace(lemma: &str, vertices: impl Into<Vec<Vertex>>) -> TraceEntry {
    TraceEntry {
        lemma: lemma.to_string(),
        vertices: vertices.into(),
    }
}

// ---------------------------------------------------------------------------
// Plan composition helpers
// ---------------------------------------------------------------------------

/// Accumulates steps over the full graph, tracking the current colouring and
/// validating every step as it is appended.
pub(crate) struct Composer<'a> {
    g: &'a Graph,
    l: &'a ListAssignment,
    pub cur: Colouring,
    steps: Vec<RecolourStep>,
}

impl<'a> Composer<'a> {
    pub fn new(g: &'a Graph, l: &'a ListAssignment, start: &Colouring) -> Self {
        Composer {
            g,
            l,
            cur: start.clone(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: RecolourStep) -> Result<()> {
        self.cur = crate::kernel::apply_step(self.g, self.l, &self.cur, step)?;
        self.steps.push(step);
        Ok(())
    }

    pub fn extend(&mut self, plan: &RecolourPlan) -> Result<()> {
        for step in &plan.steps {
            self.push(step.clone())?;
        }
        Ok(())
    }

    /// Appends a plan expressed on a subgraph, translating vertex ids via
    /// `map` (subgraph id -> full-graph id).
    pub fn extend_lifted(&mut self, plan: &RecolourPlan, map: &[Vertex]) -> Result<()> {
        for step in &plan.steps {
            self.push(RecolourStep {
                vertex: map[step.vertex],
                new_colour: step.new_colour,
            })?;
        }
        Ok(())
    }

    pub fn recolour(&mut self, v: Vertex, colour: Colour) -> Result<()> {
        self.push(RecolourStep {
            vertex: v,
            new_colour: colour,
        })
    }

    /// Recolours `v` with its least free colour.
    pub fn recolour_least(&mut self, v: Vertex) -> Result<Colour> {
        let col = free_colour(self.g, self.l, &self.cur, v)
            .ok_or_else(|| Error::precondition(format!("vertex {v} is frozen")))?;
        self.recolour(v, col)?;
        Ok(col)
    }

    pub fn finish(self) -> (RecolourPlan, Colouring) {
        (RecolourPlan { steps: self.steps }, self.cur)
    }
}

/// Reverses a plan valid from `start`: inverting step order and restoring
/// each vertex's prior colour yields a valid plan from the plan's endpoint
/// back to `start`.
pub(crate) fn reverse_plan(start: &Colouring, plan: &RecolourPlan) -> RecolourPlan {
    let mut c = start.clone();
    let mut prior = Vec::with_capacity(plan.steps.len());
    for step in &plan.steps {
        prior.push(c.get(step.vertex));
        c.set(step.vertex, step.new_colour);
    }
    let steps = plan
        .steps
        .iter()
        .zip(prior)
        .rev()
        .map(|(step, old)| RecolourStep {
            vertex: step.vertex,
            new_colour: old,
        })
        .collect();
    RecolourPlan { steps }
}

/// Completes a partial colouring greedily: uncoloured vertices get the least
/// list colour unused on their already-coloured neighbours, in ascending id
/// order.
pub(crate) fn greedy_extend(
    g: &Graph,
    l: &ListAssignment,
    partial: &[Option<Colour>],
) -> Result<Colouring> {
    let mut out: Vec<Option<Colour>> = partial.to_vec();
    for v in 0..g.n() {
        if out[v].is_some() {
            continue;
        }
        let col = l
            .list(v)
            .iter()
            .copied()
            .find(|&col| {
                g.neighbours(v)
                    .iter()
                    .all(|&u| out[u] != Some(col))
            })
            .ok_or_else(|| {
                Error::precondition(format!("cannot extend partial colouring at vertex {v}"))
            })?;
        out[v] = Some(col);
    }
    Ok(Colouring::new(out.into_iter().map(Option::unwrap).collect()))
}

/// A plan making `v` unfrozen by pushing unfrozenness from the nearest
/// unfrozen vertex along a lexicographically-least shortest path. Empty if
/// `v` is already unfrozen.
pub(crate) fn move_unfrozen(
    g: &Graph,
    l: &ListAssignment,
    c: &Colouring,
    v: Vertex,
) -> Result<RecolourPlan> {
    if !is_vertex_frozen(g, l, c, v) {
        return Ok(RecolourPlan::default());
    }
    let dist = g.bfs_distances(v);
    let z = (0..g.n())
        .filter(|&z| dist[z] != usize::MAX && !is_vertex_frozen(g, l, c, z))
        .min_by_key(|&z| (dist[z], z))
        .ok_or_else(|| Error::precondition("every vertex is frozen"))?;
    let path = shortest_path(g, z, v)?;
    crate::kernel::push_unfreeze(g, l, c, &path)
}

// ---------------------------------------------------------------------------
// Key Lemma planner
// ---------------------------------------------------------------------------

/// Plans `alpha -> beta` on a connected graph whose lists all have at least
/// deg(v)+1 colours and where some vertex has at least deg(v)+2. Fixes
/// vertices in order of non-increasing distance from such a root, deleting
/// each fixed vertex and pruning its colour from its neighbours' lists.
/// The plan has at most (3n^2 + 5n)/2 steps.
pub fn plan_key_lemma(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    if !g.is_connected() {
        return Err(Error::precondition("graph must be connected"));
    }
    let surplus = check_list_surplus(g, l);
    if !surplus.is_one_plus {
        return Err(Error::precondition(format!(
            "list of vertex {} has fewer than deg+1 colours",
            surplus.nonpositive.first().copied().unwrap_or(0)
        )));
    }
    let root = (0..g.n())
        .find(|&v| surplus.surplus[v] >= 2)
        .ok_or_else(|| Error::precondition("no vertex with list surplus >= 2"))?;
    for c in [alpha, beta] {
        if !colouring_status(g, l, c).proper {
            return Err(Error::precondition("colouring is not proper"));
        }
    }

    let mut composer = Composer::new(g, l, alpha);
    // Shrinking sub-instance: graph, lists, colouring, and a map from
    // sub-instance ids to original ids.
    let mut gi = g.clone();
    let mut li = l.clone();
    let mut ci = alpha.clone();
    let mut map: Vec<Vertex> = (0..g.n()).collect();
    let mut ri = root;

    while gi.n() > 1 {
        let dist = gi.bfs_distances(ri);
        let w = (0..gi.n())
            .filter(|&u| u != ri)
            .max_by_key(|&u| (dist[u], std::cmp::Reverse(u)))
            .unwrap();
        let target = beta.get(map[w]);
        let sub_plan = fix_leaf(&gi, &li, &ci, ri, w, target)?;
        composer.extend_lifted(&sub_plan, &map)?;
        ci = verify_plan(&gi, &li, &ci, &sub_plan).end;
        debug_assert_eq!(ci.get(w), target);

        // Delete w; prune its (now final) colour from its neighbours' lists.
        let keep: Vec<Vertex> = (0..gi.n()).filter(|&u| u != w).collect();
        let mut new_lists: Vec<Vec<Colour>> = Vec::with_capacity(keep.len());
        for &u in &keep {
            let mut lu = li.list(u).to_vec();
            if gi.has_edge(u, w) {
                lu.retain(|&col| col != target);
            }
            new_lists.push(lu);
        }
        let (g2, submap) = gi.induced_subgraph(&keep)?;
        let new_map: Vec<Vertex> = submap.iter().map(|&u| map[u]).collect();
        let new_colours: Vec<Colour> = submap.iter().map(|&u| ci.get(u)).collect();
        ri = submap.iter().position(|&u| u == ri).unwrap();
        gi = g2;
        li = ListAssignment::new(new_lists)?;
        ci = Colouring::new(new_colours);
        map = new_map;
    }
    // Only the root remains; it has no neighbours left in the sub-instance,
    // but its final colour must still respect the full graph. Every deleted
    // neighbour already wears its beta colour, so beta(root) is safe.
    let orig_root = map[ri];
    if composer.cur.get(orig_root) != beta.get(orig_root) {
        composer.recolour(orig_root, beta.get(orig_root))?;
    }

    let (plan, end) = composer.finish();
    debug_assert_eq!(&end, beta);
    Ok(PlanOutcome {
        plan,
        end,
        lemma_trace: vec![trace("key-lemma", (0..g.n()).collect::<Vec<_>>())],
    })
}

// ---------------------------------------------------------------------------
// Clique planner
// ---------------------------------------------------------------------------

/// Plans `alpha -> beta` on the complete graph K_n when the lists jointly
/// contain more than n colours. The digraph whose arcs point from each
/// vertex to the holder of its desired colour splits into paths and cycles;
/// paths drain sink-first, good cycles open by borrowing an unused colour,
/// and all bad cycles are unlocked at once through a correctly-coloured
/// vertex with a spare colour. At most 3n/2 + 2 steps.
pub fn plan_clique(
    n: usize,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    if n < 2 {
        return Err(Error::precondition("clique planner needs n >= 2"));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    let g = build_graph(n, &edges)?;
    let surplus = check_list_surplus(&g, l);
    if !surplus.is_one_plus {
        return Err(Error::precondition("every list needs at least n colours"));
    }
    let universe = l.colour_universe();
    if universe.len() == n {
        return Err(Error::precondition(
            "the lists contain only n colours, so every colouring is frozen",
        ));
    }
    for c in [alpha, beta] {
        if !colouring_status(&g, l, c).proper {
            return Err(Error::precondition("colouring is not proper"));
        }
    }

    let mut composer = Composer::new(&g, l, alpha);
    let mut locked: Option<Vertex> = None;
    let mut unlocked_once = false;

    // Drains every vertex whose desired colour is currently unused
    // (ascending, repeatedly), skipping the locked unlock-vertex.
    fn drain(composer: &mut Composer, beta: &Colouring, n: usize, locked: Option<Vertex>) -> Result<()> {
        loop {
            let used: Vec<Colour> = (0..n).map(|v| composer.cur.get(v)).collect();
            let next = (0..n).find(|&v| {
                Some(v) != locked
                    && composer.cur.get(v) != beta.get(v)
                    && !used.contains(&beta.get(v))
            });
            match next {
                Some(v) => composer.recolour(v, beta.get(v))?,
                None => return Ok(()),
            }
        }
    }

    // Cycles of the desired-colour digraph on the current colouring.
    fn cycles(cur: &Colouring, beta: &Colouring, n: usize, locked: Option<Vertex>) -> Vec<Vec<Vertex>> {
        // successor(v) = holder of beta(v); wrong vertices (after draining)
        // form disjoint cycles.
        let mut out = Vec::new();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] || Some(s) == locked || cur.get(s) == beta.get(s) {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let mut v = s;
            loop {
                let w = (0..n).find(|&w| cur.get(w) == beta.get(v)).unwrap();
                if w == s {
                    break;
                }
                seen[w] = true;
                cyc.push(w);
                v = w;
            }
            out.push(cyc);
        }
        out
    }

    loop {
        drain(&mut composer, beta, n, locked)?;
        let cyc = cycles(&composer.cur, beta, n, locked);
        if cyc.is_empty() {
            break;
        }
        let used: Vec<Colour> = (0..n).map(|v| composer.cur.get(v)).collect();
        // A good cycle has a vertex with an unused list colour.
        let opener = cyc
            .iter()
            .flat_map(|c| c.iter().copied())
            .filter_map(|v| {
                l.list(v)
                    .iter()
                    .copied()
                    .find(|col| !used.contains(col))
                    .map(|col| (v, col))
            })
            .min();
        if let Some((v, col)) = opener {
            composer.recolour(v, col)?;
            continue;
        }
        // Only bad cycles remain: unlock through a correctly-coloured vertex
        // holding a spare colour, which frees its own colour for the cycles.
        if unlocked_once {
            return Err(Error::precondition("bad cycles remained locked"));
        }
        let (w, col) = (0..n)
            .filter(|&w| composer.cur.get(w) == beta.get(w))
            .filter_map(|w| {
                l.list(w)
                    .iter()
                    .copied()
                    .find(|col| !used.contains(col))
                    .map(|col| (w, col))
            })
            .min()
            .ok_or_else(|| Error::precondition("no unlock vertex with a spare colour"))?;
        composer.recolour(w, col)?;
        locked = Some(w);
        unlocked_once = true;
    }
    if let Some(w) = locked {
        composer.recolour(w, beta.get(w))?;
    }

    let (plan, end) = composer.finish();
    debug_assert_eq!(&end, beta);
    Ok(PlanOutcome {
        plan,
        end,
        lemma_trace: vec![trace("clique-lemma", (0..n).collect::<Vec<_>>())],
    })
}

// ---------------------------------------------------------------------------
// Winding number of cycle 3-colourings
// ---------------------------------------------------------------------------

/// Winding number of a proper 3-colouring of the cycle v_0 v_1 ... v_{n-1}:
/// each forward edge scores +1 on the transitions (1,2), (2,3), (3,1) and
/// -1 on their reverses; the total is divisible by 3 and f = total / 3.
pub fn winding_number(c: &Colouring) -> Result<i64> {
    let n = c.n();
    if n < 3 {
        return Err(Error::precondition("cycle needs at least 3 vertices"));
    }
    let mut sum: i64 = 0;
    for i in 0..n {
        let a = c.get(i);
        let b = c.get((i + 1) % n);
        if !(1..=3).contains(&a) || !(1..=3).contains(&b) {
            return Err(Error::precondition("colours must lie in {1, 2, 3}"));
        }
        sum += match (a, b) {
            (1, 2) | (2, 3) | (3, 1) => 1,
            (2, 1) | (3, 2) | (1, 3) => -1,
            _ => {
                return Err(Error::precondition(format!(
                    "colouring is improper on edge {}-{}",
                    i,
                    (i + 1) % n
                )))
            }
        };
    }
    debug_assert_eq!(sum % 3, 0);
    Ok(sum / 3)
}

/// Lower bound on the number of components of the reconfiguration graph of
/// 3-colourings of C_n: floor((n+4)/6) distinct winding classes.
pub fn reconf_lower_bound_classes(n: usize) -> u64 {
    ((n + 4) / 6) as u64
}


// ---------------------------------------------------------------------------
// Small-instance search helpers
// ---------------------------------------------------------------------------

/// Cap on the candidate state space of exhaustive searches inside planners;
/// these only run on constant-size sub-instances.
const LOCAL_SEARCH_BUDGET: u64 = 200_000;

/// Exact shortest plan on a small instance by breadth-first search.
fn bfs_plan_exact(
    g: &Graph,
    l: &ListAssignment,
    from: &Colouring,
    to: &Colouring,
) -> Result<RecolourPlan> {
    let rg = crate::oracle::ReconfGraph::build(g, l, LOCAL_SEARCH_BUDGET)?;
    rg.bfs_plan(from, to)?
        .ok_or_else(|| Error::precondition("endgame colourings are not connected"))
}

/// Breadth-first search over colourings that may only differ from `from` on
/// `active` vertices, stopping at the first colouring satisfying `goal`.
fn bfs_goal_local(
    g: &Graph,
    l: &ListAssignment,
    from: &Colouring,
    active: &[Vertex],
    goal: impl Fn(&Colouring) -> bool,
) -> Result<RecolourPlan> {
    use std::collections::{HashMap, VecDeque};
    if goal(from) {
        return Ok(RecolourPlan::default());
    }
    let mut parent: HashMap<Vec<Colour>, (Vec<Colour>, RecolourStep)> = HashMap::new();
    let key = |c: &Colouring| c.colours().to_vec();
    let mut queue = VecDeque::from([from.clone()]);
    let mut seen: std::collections::HashSet<Vec<Colour>> =
        std::collections::HashSet::from([key(from)]);
    while let Some(c) = queue.pop_front() {
        for &v in active {
            for &col in l.list(v) {
                let step = RecolourStep {
                    vertex: v,
                    new_colour: col,
                };
                let Ok(next) = crate::kernel::apply_step(g, l, &c, step) else {
                    continue;
                };
                let k = key(&next);
                if seen.contains(&k) {
                    continue;
                }
                seen.insert(k.clone());
                parent.insert(k.clone(), (key(&c), step));
                if goal(&next) {
                    // Reconstruct.
                    let mut steps = Vec::new();
                    let mut cur = k;
                    while cur != key(from) {
                        let (prev, step) = parent[&cur].clone();
                        steps.push(step);
                        cur = prev;
                    }
                    steps.reverse();
                    return Ok(RecolourPlan { steps });
                }
                if seen.len() as u64 > LOCAL_SEARCH_BUDGET {
                    return Err(Error::precondition("local search budget exceeded"));
                }
                queue.push_back(next);
            }
        }
    }
    Err(Error::precondition("local search goal unreachable"))
}

/// Plays out a restricted endgame: `cur` and `target` agree outside `w`, and
/// the restricted instance (lists pruned by outside colours) is searched
/// exhaustively. Returns a plan on the full graph.
fn restricted_endgame(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    target: &Colouring,
    w: &[Vertex],
) -> Result<RecolourPlan> {
    let r = crate::kernel::restrict(g, l, cur, w)?;
    let to = Colouring::new(r.map.iter().map(|&v| target.get(v)).collect());
    let sub = bfs_plan_exact(&r.graph, &r.lists, &r.colouring, &to)?;
    Ok(RecolourPlan {
        steps: sub
            .steps
            .iter()
            .map(|s| RecolourStep {
                vertex: r.map[s.vertex],
                new_colour: s.new_colour,
            })
            .collect(),
    })
}

/// Runs the Key Lemma on the sub-instance induced by `keep` (lists pruned by
/// the colours `cur` uses outside), towards the restricted image of
/// `target`. Returns the lifted plan.
fn key_lemma_on_restriction(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    target_on_keep: &[(Vertex, Colour)],
    keep: &[Vertex],
) -> Result<RecolourPlan> {
    let r = crate::kernel::restrict(g, l, cur, keep)?;
    let mut to = r.colouring.clone();
    for &(v, col) in target_on_keep {
        let idx = r
            .map
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::precondition("target vertex outside restriction"))?;
        to.set(idx, col);
    }
    let out = plan_key_lemma(&r.graph, &r.lists, &r.colouring, &to)?;
    Ok(RecolourPlan {
        steps: out
            .plan
            .steps
            .iter()
            .map(|s| RecolourStep {
                vertex: r.map[s.vertex],
                new_colour: s.new_colour,
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Shape recognition for the small cases
// ---------------------------------------------------------------------------

/// The graph shapes handled by `plan_small_case`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum SmallShape {
    /// Vertices in cyclic order.
    Cycle(Vec<Vertex>),
    /// Vertices in path order, starting at the least-id endpoint.
    Path(Vec<Vertex>),
    /// Centre, two leaf branches, and the path from the centre to the far
    /// leaf (starting with the centre's third neighbour).
    SubdividedClaw {
        centre: Vertex,
        leaves: (Vertex, Vertex),
        tail: Vec<Vertex>,
    },
    /// Triangle centre + two mutually-adjacent neighbours, and the pendant
    /// path (starting with the centre's third neighbour).
    SubdividedPaw {
        centre: Vertex,
        triangle: (Vertex, Vertex),
        tail: Vec<Vertex>,
    },
}

fn walk_path_from(g: &Graph, start: Vertex, first: Vertex) -> Vec<Vertex> {
    // Follows degree-2 vertices from `first` away from `start` until a leaf.
    let mut path = vec![first];
    let mut prev = start;
    let mut cur = first;
    while g.degree(cur) == 2 {
        let next = g
            .neighbours(cur)
            .iter()
            .copied()
            .find(|&u| u != prev)
            .unwrap();
        prev = cur;
        cur = next;
        path.push(cur);
    }
    path
}

fn recognise_small_shape(g: &Graph) -> Option<SmallShape> {
    let n = g.n();
    if n < 3 || !g.is_connected() {
        return None;
    }
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    if degs.iter().all(|&d| d == 2) {
        // Cycle: walk from vertex 0 towards its least neighbour.
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = g.neighbours(0)[0];
        while cur != 0 {
            order.push(cur);
            let next = g
                .neighbours(cur)
                .iter()
                .copied()
                .find(|&u| u != prev)
                .unwrap();
            prev = cur;
            cur = next;
        }
        return Some(SmallShape::Cycle(order));
    }
    if degs.iter().all(|&d| d <= 2) {
        let ends: Vec<Vertex> = (0..n).filter(|&v| degs[v] == 1).collect();
        if ends.len() != 2 {
            return None;
        }
        let start = ends[0];
        let mut order = vec![start];
        order.extend(walk_path_from(g, start, g.neighbours(start)[0]));
        return Some(SmallShape::Path(order));
    }
    // One degree-3 vertex, everything else degree <= 2.
    let threes: Vec<Vertex> = (0..n).filter(|&v| degs[v] == 3).collect();
    if threes.len() != 1 || degs.iter().any(|&d| d > 3) {
        return None;
    }
    let v = threes[0];
    let nbrs = g.neighbours(v).to_vec();
    let m = g.edges().len();
    if m == n - 1 {
        // Tree: subdivided claw needs exactly two branches of length 1.
        let leaves_at_v: Vec<Vertex> = nbrs.iter().copied().filter(|&u| degs[u] == 1).collect();
        let branches: Vec<Vec<Vertex>> = nbrs
            .iter()
            .map(|&u| walk_path_from(g, v, u))
            .collect();
        // All vertices accounted for and exactly one branch longer than 1?
        let long: Vec<&Vec<Vertex>> = branches.iter().filter(|b| b.len() > 1).collect();
        if long.len() > 1 {
            return None;
        }
        let (leaves, tail) = if long.is_empty() {
            // K_{1,3}: the two least leaves; tail = remaining leaf.
            (
                (leaves_at_v[0], leaves_at_v[1]),
                vec![leaves_at_v[2]],
            )
        } else {
            ((leaves_at_v[0], leaves_at_v[1]), long[0].clone())
        };
        if 1 + 2 + tail.len() != n {
            return None;
        }
        return Some(SmallShape::SubdividedClaw {
            centre: v,
            leaves,
            tail,
        });
    }
    if m == n {
        // Unicyclic: need a triangle through v on two degree-2 neighbours.
        let tri: Vec<Vertex> = nbrs
            .iter()
            .copied()
            .filter(|&u| degs[u] == 2 && g.neighbours(u).iter().all(|&z| z == v || nbrs.contains(&z)))
            .collect();
        if tri.len() != 2 || !g.has_edge(tri[0], tri[1]) {
            return None;
        }
        let w3 = nbrs.iter().copied().find(|u| !tri.contains(u))?;
        let tail = walk_path_from(g, v, w3);
        if 1 + 2 + tail.len() != n {
            return None;
        }
        return Some(SmallShape::SubdividedPaw {
            centre: v,
            triangle: (tri[0], tri[1]),
            tail,
        });
    }
    None
}

// ---------------------------------------------------------------------------
// Small-case planners
// ---------------------------------------------------------------------------

fn check_unfrozen_pair(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<()> {
    for c in [alpha, beta] {
        let st = colouring_status(g, l, c);
        if !st.proper {
            return Err(Error::precondition("colouring is not proper"));
        }
        if st.is_frozen {
            return Err(Error::precondition("colouring is frozen"));
        }
    }
    Ok(())
}

/// Cycle planner: 3-lists, not all identical (identical lists are rejected,
/// since the winding number then splits the colourings into several
/// components).
fn plan_cycle(
    g: &Graph,
    l: &ListAssignment,
    order: &[Vertex],
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecolourPlan> {
    let n = order.len();
    if (0..g.n()).any(|v| l.list(v).len() != 3) {
        return Err(Error::precondition("cycle planner needs 3-lists"));
    }
    if (1..g.n()).all(|v| l.list(v) == l.list(0)) {
        return Err(Error::precondition(
            "identical lists on a cycle: colourings split into winding classes",
        ));
    }
    check_unfrozen_pair(g, l, alpha, beta)?;

    // Case 1 helper: drive `start` to `target` given target(o[i]) is not in
    // the list of o[i+1].
    let case1 = |i: usize, start: &Colouring, target: &Colouring| -> Result<RecolourPlan> {
        let vi = order[i];
        let vnext = order[(i + 1) % n];
        debug_assert!(!l.contains(vnext, target.get(vi)));
        let mut composer = Composer::new(g, l, start);
        if composer.cur.get(vi) != target.get(vi) {
            let vprev = order[(i + n - 1) % n];
            if composer.cur.get(vprev) == target.get(vi) {
                // Push unfrozenness forward around the cycle until the
                // predecessor of v_i is unfrozen, then move it off the
                // desired colour.
                let j = (0..n)
                    .filter(|&j| {
                        !is_vertex_frozen(g, l, &composer.cur, order[j])
                    })
                    .min_by_key(|&j| (i + n - 1 + n - j) % n)
                    .ok_or_else(|| Error::precondition("colouring is frozen"))?;
                let mut k = j;
                while order[k] != vprev {
                    let succ = order[(k + 1) % n];
                    if is_vertex_frozen(g, l, &composer.cur, succ) {
                        composer.recolour_least(order[k])?;
                    }
                    k = (k + 1) % n;
                }
                composer.recolour_least(vprev)?;
            }
            composer.recolour(vi, target.get(vi))?;
        }
        // Key Lemma on the remaining path (the neighbour after v_i keeps
        // full list size, giving it surplus 2).
        let keep: Vec<Vertex> = (0..g.n()).filter(|&v| v != vi).collect();
        let targets: Vec<(Vertex, Colour)> = keep
            .iter()
            .map(|&v| (v, target.get(v)))
            .collect();
        let lifted = key_lemma_on_restriction(g, l, &composer.cur, &targets, &keep)?;
        composer.extend(&lifted)?;
        debug_assert_eq!(&composer.cur, target);
        Ok(composer.finish().0)
    };

    // Case 1 directly?
    if let Some(i) = (0..n).find(|&i| !l.contains(order[(i + 1) % n], beta.get(order[i]))) {
        return case1(i, alpha, beta);
    }
    // Case 2: build an intermediate colouring wearing, on some vertex, a
    // colour missing from its successor's list; route both ends through it.
    let i = (0..n)
        .find(|&i| {
            l.list(order[i])
                .iter()
                .any(|col| !l.contains(order[(i + 1) % n], *col))
        })
        .ok_or_else(|| Error::precondition("lists admit no distinguishing colour"))?;
    let vi = order[i];
    let c = l
        .list(vi)
        .iter()
        .copied()
        .find(|&col| !l.contains(order[(i + 1) % n], col))
        .unwrap();
    let mut partial: Vec<Option<Colour>> = vec![None; g.n()];
    partial[vi] = Some(c);
    // Extend around the cycle away from v_i so every vertex sees at most one
    // coloured neighbour when chosen.
    let mut gamma_partial = partial;
    for k in 1..n {
        let v = order[(i + k) % n];
        let col = l
            .list(v)
            .iter()
            .copied()
            .find(|&col| {
                g.neighbours(v)
                    .iter()
                    .all(|&u| gamma_partial[u] != Some(col))
            })
            .ok_or_else(|| Error::precondition("cannot extend cycle colouring"))?;
        gamma_partial[v] = Some(col);
    }
    let gamma = Colouring::new(gamma_partial.into_iter().map(Option::unwrap).collect());
    let to_gamma_from_alpha = case1(i, alpha, &gamma)?;
    let to_gamma_from_beta = case1(i, beta, &gamma)?;
    let mut steps = to_gamma_from_alpha.steps;
    steps.extend(reverse_plan(beta, &to_gamma_from_beta).steps);
    Ok(RecolourPlan { steps })
}

/// P3 planner: the instance is constant-size (at most five unfrozen
/// colourings when lists are tight), so it is searched exhaustively.
fn plan_p3(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecolourPlan> {
    check_unfrozen_pair(g, l, alpha, beta)?;
    if check_list_surplus(g, l).surplus_ge2.first().is_some() {
        return Ok(plan_key_lemma(g, l, alpha, beta)?.plan);
    }
    bfs_plan_exact(g, l, alpha, beta)
}

/// Path planner: needs a colour universe of size at least 4 (or a vertex
/// with surplus 2, which short-circuits to the Key Lemma).
fn plan_path(
    g: &Graph,
    l: &ListAssignment,
    order: &[Vertex],
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecolourPlan> {
    check_unfrozen_pair(g, l, alpha, beta)?;
    if check_list_surplus(g, l).surplus_ge2.first().is_some() {
        return Ok(plan_key_lemma(g, l, alpha, beta)?.plan);
    }
    if order.len() == 3 {
        return plan_p3(g, l, alpha, beta);
    }
    if l.colour_universe().len() < 4 {
        return Err(Error::precondition(
            "path lists span fewer than 4 colours; endpoint classes may be disconnected",
        ));
    }
    let n = order.len();
    // Lists are tight. Find an incomparable adjacent pair.
    let i = (0..n - 1)
        .find(|&i| {
            let a = l.list(order[i]);
            let b = l.list(order[i + 1]);
            a.iter().any(|c| !b.contains(c)) && b.iter().any(|c| !a.contains(c))
        })
        .ok_or_else(|| Error::precondition("no incomparable adjacent lists on the path"))?;
    let vi = order[i];
    let vnext = order[i + 1];

    let has_blocking_pair = |c: &Colouring| -> bool {
        !l.contains(vnext, c.get(vi)) && !l.contains(vi, c.get(vnext))
    };

    // Core procedure: from a colouring with the blocking pair on (v_i,
    // v_{i+1}), reach any unfrozen target.
    let core = |start: &Colouring, target: &Colouring| -> Result<RecolourPlan> {
        debug_assert!(has_blocking_pair(start));
        // Target side: make v_i unfrozen in the target.
        let q = move_unfrozen(g, l, target, vi)?;
        let t2 = verify_plan(g, l, target, &q).end;
        let suffix = reverse_plan(target, &q);

        let mut composer = Composer::new(g, l, start);
        // Fix the suffix beyond i+2: v_{i+1} has surplus 2 once v_i wears a
        // colour outside its list.
        if i + 3 <= n - 1 {
            let keep: Vec<Vertex> = (i + 1..n).map(|k| order[k]).collect();
            let mut targets: Vec<(Vertex, Colour)> = (i + 3..n)
                .map(|k| (order[k], t2.get(order[k])))
                .collect();
            targets.push((vnext, composer.cur.get(vnext)));
            // v_{i+2}: keep any proper choice; try candidates.
            let mut done = false;
            for &cand in l.list(order[i + 2]) {
                if cand == t2.get(order[i + 3]) || cand == composer.cur.get(vnext) {
                    continue;
                }
                let mut t = targets.clone();
                t.push((order[i + 2], cand));
                if let Ok(lifted) = key_lemma_on_restriction(g, l, &composer.cur, &t, &keep) {
                    composer.extend(&lifted)?;
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(Error::precondition("path suffix fix failed"));
            }
        }
        // Fix the prefix below i-2 symmetrically: v_i has surplus 2 while
        // v_{i+1} wears its colour outside L(v_i).
        if i >= 2 {
            let keep: Vec<Vertex> = (0..=i).map(|k| order[k]).collect();
            let mut targets: Vec<(Vertex, Colour)> = (0..=i.saturating_sub(2))
                .map(|k| (order[k], t2.get(order[k])))
                .collect();
            targets.push((vi, composer.cur.get(vi)));
            let mut done = false;
            for &cand in l.list(order[i - 1]) {
                if cand == t2.get(order[i - 2]) || cand == composer.cur.get(vi) {
                    continue;
                }
                let mut t = targets.clone();
                t.push((order[i - 1], cand));
                if let Ok(lifted) = key_lemma_on_restriction(g, l, &composer.cur, &t, &keep) {
                    composer.extend(&lifted)?;
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(Error::precondition("path prefix fix failed"));
            }
        }
        // Endgame on the 4-vertex window (clamped at the ends).
        let lo = i.saturating_sub(1);
        let hi = (i + 2).min(n - 1);
        let window: Vec<Vertex> = (lo..=hi).map(|k| order[k]).collect();
        let endgame = restricted_endgame(g, l, &composer.cur, &t2, &window)?;
        composer.extend(&endgame)?;
        debug_assert_eq!(&composer.cur, &t2);
        let mut plan = composer.finish().0;
        plan.steps.extend(suffix.steps);
        Ok(plan)
    };

    if has_blocking_pair(alpha) {
        return core(alpha, beta);
    }
    // Build an intermediate colouring with the blocking pair and route both
    // endpoints through it.
    let ci = l
        .list(vi)
        .iter()
        .copied()
        .find(|&col| !l.contains(vnext, col))
        .unwrap();
    let cnext = l
        .list(vnext)
        .iter()
        .copied()
        .find(|&col| !l.contains(vi, col))
        .unwrap();
    let mut partial: Vec<Option<Colour>> = vec![None; g.n()];
    partial[vi] = Some(ci);
    partial[vnext] = Some(cnext);
    let gamma = greedy_extend(g, l, &partial)?;
    let to_alpha = core(&gamma, alpha)?;
    let to_beta = core(&gamma, beta)?;
    let mut steps = reverse_plan(&gamma, &to_alpha).steps;
    steps.extend(to_beta.steps);
    Ok(RecolourPlan { steps })
}


/// Tries every completion of `fixed` targets over `free_vertices` (ascending
/// colour products): runs the Key Lemma towards the completed target on
/// `keep`, then the exhaustive endgame on `window`. Commits the first
/// combination whose full pipeline succeeds.
#[allow(clippy::too_many_arguments)]
fn key_lemma_then_endgame(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    target: &Colouring,
    fixed: &[(Vertex, Colour)],
    free_vertices: &[Vertex],
    keep: &[Vertex],
    window: &[Vertex],
) -> Result<RecolourPlan> {
    // Enumerate assignments for the free vertices.
    let mut assignments: Vec<Vec<(Vertex, Colour)>> = vec![Vec::new()];
    for &v in free_vertices {
        let mut next = Vec::new();
        for a in &assignments {
            for &col in l.list(v) {
                let mut b = a.clone();
                b.push((v, col));
                next.push(b);
            }
        }
        assignments = next;
    }
    for extra in &assignments {
        let mut targets = fixed.to_vec();
        targets.extend(extra.iter().copied());
        let Ok(mid_plan) = key_lemma_on_restriction(g, l, cur, &targets, keep) else {
            continue;
        };
        let mid = verify_plan(g, l, cur, &mid_plan).end;
        let Ok(endgame) = restricted_endgame(g, l, &mid, target, window) else {
            continue;
        };
        let mut steps = mid_plan.steps;
        steps.extend(endgame.steps);
        return Ok(RecolourPlan { steps });
    }
    Err(Error::precondition(
        "no target completion admits the planned reduction",
    ))
}

/// Subdivided-claw planner: centre `v` with leaf neighbours `w1`, `w2` and a
/// pendant path starting at `w3`. The pendant path is matched to the target
/// via the Key Lemma once `v` wears a colour outside the list of `w3`, then
/// the 4-vertex core is finished exhaustively.
#[allow(clippy::too_many_arguments)]
fn plan_claw(
    g: &Graph,
    l: &ListAssignment,
    v: Vertex,
    w1: Vertex,
    w2: Vertex,
    tail: &[Vertex],
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecolourPlan> {
    check_unfrozen_pair(g, l, alpha, beta)?;
    if check_list_surplus(g, l).surplus_ge2.first().is_some() {
        return Ok(plan_key_lemma(g, l, alpha, beta)?.plan);
    }
    if g.n() == 4 {
        return bfs_plan_exact(g, l, alpha, beta);
    }
    let w3 = tail[0];
    // Target side: make the centre unfrozen; undo at the very end.
    let q = move_unfrozen(g, l, beta, v)?;
    let beta2 = verify_plan(g, l, beta, &q).end;
    let suffix = reverse_plan(beta, &q);

    let mut composer = Composer::new(g, l, alpha);
    let unfreeze = move_unfrozen(g, l, &composer.cur, v)?;
    composer.extend(&unfreeze)?;
    let c = l
        .list(v)
        .iter()
        .copied()
        .find(|&col| !l.contains(w3, col))
        .ok_or_else(|| Error::precondition("centre list inside pendant list"))?;

    let window = [v, w1, w2, w3];
    let fixed: Vec<(Vertex, Colour)> = tail[1..]
        .iter()
        .map(|&u| (u, beta2.get(u)))
        .collect();

    // Preferred route: put c on the centre (searching only the 3-vertex star
    // around it), then run the Key Lemma on the pendant path.
    let star_route = (|| -> Result<RecolourPlan> {
        let pre = bfs_goal_local(g, l, &composer.cur, &[v, w1, w2], |cc| cc.get(v) == c)?;
        let mid = verify_plan(g, l, &composer.cur, &pre).end;
        let keep: Vec<Vertex> = (0..g.n()).filter(|&u| u != v && u != w1 && u != w2).collect();
        let rest = key_lemma_then_endgame(g, l, &mid, &beta2, &fixed, &[w3], &keep, &window)?;
        let mut steps = pre.steps;
        steps.extend(rest.steps);
        Ok(RecolourPlan { steps })
    })();
    let tail_plan = match star_route {
        Ok(p) => p,
        Err(_) => {
            // Fallback (the colour c sits on both leaves and cannot be moved
            // onto the centre): leave the leaves alone and run the Key Lemma
            // on everything except them.
            let keep: Vec<Vertex> = (0..g.n()).filter(|&u| u != w1 && u != w2).collect();
            key_lemma_then_endgame(
                g,
                l,
                &composer.cur,
                &beta2,
                &fixed,
                &[v, w3],
                &keep,
                &window,
            )?
        }
    };
    composer.extend(&tail_plan)?;
    debug_assert_eq!(&composer.cur, &beta2);
    let mut plan = composer.finish().0;
    plan.steps.extend(suffix.steps);
    Ok(plan)
}

/// Subdivided-paw planner: triangle `v, w1, w2` with a pendant path starting
/// at `w3`. Reductions mirror the claw planner, with the extra strategies
/// allowed by the triangle (moving a triangle vertex onto a colour outside
/// another triangle list).
#[allow(clippy::too_many_arguments)]
fn plan_paw(
    g: &Graph,
    l: &ListAssignment,
    v: Vertex,
    w1: Vertex,
    w2: Vertex,
    tail: &[Vertex],
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<RecolourPlan> {
    check_unfrozen_pair(g, l, alpha, beta)?;
    if check_list_surplus(g, l).surplus_ge2.first().is_some() {
        return Ok(plan_key_lemma(g, l, alpha, beta)?.plan);
    }
    if g.n() == 4 {
        return bfs_plan_exact(g, l, alpha, beta);
    }
    let w3 = tail[0];
    let q = move_unfrozen(g, l, beta, v)?;
    let beta2 = verify_plan(g, l, beta, &q).end;
    let suffix = reverse_plan(beta, &q);

    let mut composer = Composer::new(g, l, alpha);
    let unfreeze = move_unfrozen(g, l, &composer.cur, v)?;
    composer.extend(&unfreeze)?;

    let window = [v, w1, w2, w3];
    let fixed: Vec<(Vertex, Colour)> = tail[1..]
        .iter()
        .map(|&u| (u, beta2.get(u)))
        .collect();

    // Each strategy: a local goal on the triangle, then the Key Lemma on
    // `keep` (which the goal has given a surplus-2 vertex), then the
    // 4-vertex endgame.
    struct Strategy {
        goal_vertex: Vertex,
        goal_colours: Vec<Colour>,
        keep_removes: Vec<Vertex>,
        free: Vec<Vertex>,
    }
    let mut strategies = Vec::new();
    for (a, other) in [(w1, w2), (w2, w1)] {
        // Colour of `a` outside L(v): the centre gains surplus 2 in G - a.
        let outside_v: Vec<Colour> = l
            .list(a)
            .iter()
            .copied()
            .filter(|col| !l.contains(v, *col))
            .collect();
        if !outside_v.is_empty() {
            strategies.push(Strategy {
                goal_vertex: a,
                goal_colours: outside_v,
                keep_removes: vec![a],
                free: vec![v, other, w3],
            });
        }
        // Colour of `a` outside L(other): `other` gains surplus 2 in G - a.
        let outside_o: Vec<Colour> = l
            .list(a)
            .iter()
            .copied()
            .filter(|col| !l.contains(other, *col))
            .collect();
        if !outside_o.is_empty() {
            strategies.push(Strategy {
                goal_vertex: a,
                goal_colours: outside_o,
                keep_removes: vec![a],
                free: vec![v, other, w3],
            });
        }
    }
    // Centre coloured outside L(w3): the pendant path alone gets surplus 2
    // at w3.
    let outside_w3: Vec<Colour> = l
        .list(v)
        .iter()
        .copied()
        .filter(|col| !l.contains(w3, *col))
        .collect();
    if !outside_w3.is_empty() {
        strategies.push(Strategy {
            goal_vertex: v,
            goal_colours: outside_w3,
            keep_removes: vec![v, w1, w2],
            free: vec![w3],
        });
    }

    let mut tail_plan: Option<RecolourPlan> = None;
    'outer: for st in &strategies {
        for &goal_col in &st.goal_colours {
            let Ok(pre) = bfs_goal_local(g, l, &composer.cur, &[v, w1, w2], |cc| {
                cc.get(st.goal_vertex) == goal_col
            }) else {
                continue;
            };
            let mid = verify_plan(g, l, &composer.cur, &pre).end;
            let keep: Vec<Vertex> = (0..g.n())
                .filter(|u| !st.keep_removes.contains(u))
                .collect();
            let Ok(rest) =
                key_lemma_then_endgame(g, l, &mid, &beta2, &fixed, &st.free, &keep, &window)
            else {
                continue;
            };
            let mut steps = pre.steps;
            steps.extend(rest.steps);
            tail_plan = Some(RecolourPlan { steps });
            break 'outer;
        }
    }
    let tail_plan =
        tail_plan.ok_or_else(|| Error::precondition("no paw reduction strategy applies"))?;
    composer.extend(&tail_plan)?;
    debug_assert_eq!(&composer.cur, &beta2);
    let mut plan = composer.finish().0;
    plan.steps.extend(suffix.steps);
    Ok(plan)
}

/// Dispatcher for the low-degree special cases: cycles with non-identical
/// 3-lists, paths spanning at least 4 colours, P3, subdivided claws, and
/// subdivided paws. Both colourings must be proper and unfrozen.
pub fn plan_small_case(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    let shape = recognise_small_shape(g)
        .ok_or_else(|| Error::precondition("graph matches no small case"))?;
    let (plan, lemma) = match &shape {
        SmallShape::Cycle(order) => (plan_cycle(g, l, order, alpha, beta)?, "cycle-lemma"),
        SmallShape::Path(order) => {
            if order.len() == 3 {
                (plan_p3(g, l, alpha, beta)?, "p3-lemma")
            } else {
                (plan_path(g, l, order, alpha, beta)?, "path-lemma")
            }
        }
        SmallShape::SubdividedClaw {
            centre,
            leaves,
            tail,
        } => (
            plan_claw(g, l, *centre, leaves.0, leaves.1, tail, alpha, beta)?,
            "claw-lemma",
        ),
        SmallShape::SubdividedPaw {
            centre,
            triangle,
            tail,
        } => (
            plan_paw(g, l, *centre, triangle.0, triangle.1, tail, alpha, beta)?,
            "paw-lemma",
        ),
    };
    let check = verify_plan(g, l, alpha, &plan);
    if !check.ok || &check.end != beta {
        return Err(Error::precondition("internal: small-case plan invalid"));
    }
    Ok(PlanOutcome {
        end: check.end,
        plan,
        lemma_trace: vec![trace(lemma, (0..g.n()).collect::<Vec<_>>())],
    })
}



// ---------------------------------------------------------------------------
// 2-connected planner with a distinguishing edge
// ---------------------------------------------------------------------------

/// Least edge (v, w) with a colour in L(v) missing from L(w) and G - v still
/// connected. Such an edge lets the whole graph minus v be recoloured by the
/// Key Lemma once v wears that colour.
fn find_distinguishing_edge(g: &Graph, l: &ListAssignment) -> Option<(Vertex, Vertex)> {
    for v in 0..g.n() {
        let connected = g
            .delete_vertices(&[v])
            .map(|(h, _)| h.is_connected())
            .unwrap_or(false);
        if !connected {
            continue;
        }
        for &w in g.neighbours(v) {
            if l.list(v).iter().any(|col| !l.contains(w, *col)) {
                return Some((v, w));
            }
        }
    }
    None
}

/// Planner for graphs with a distinguishing edge (v, w): reach a colouring
/// with a colour of L(v) \ L(w) on v, recolour G - v by the Key Lemma, and
/// repair the neighbourhood of v by a case split on how many neighbours wear
/// v's colour on the target side.
pub fn plan_two_connected(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    let report = check_list_surplus(g, l);
    if !report.is_one_plus {
        return Err(Error::precondition("lists must exceed degrees"));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph must be connected"));
    }
    check_unfrozen_pair(g, l, alpha, beta)?;
    if report.surplus_ge2.first().is_some() {
        let mut out = plan_key_lemma(g, l, alpha, beta)?;
        out.lemma_trace = vec![trace("two-connected-lemma", (0..g.n()).collect::<Vec<_>>())];
        return Ok(out);
    }
    let (v, w) = find_distinguishing_edge(g, l)
        .ok_or_else(|| Error::precondition("no distinguishing edge"))?;

    let plan = if l.contains(w, alpha.get(v)) {
        // Route through a colouring wearing a distinguishing colour on v.
        let c = l
            .list(v)
            .iter()
            .copied()
            .find(|&col| !l.contains(w, col))
            .unwrap();
        let mut partial: Vec<Option<Colour>> = vec![None; g.n()];
        partial[v] = Some(c);
        let gamma = greedy_extend(g, l, &partial)?;
        let to_alpha = two_connected_core(g, l, &gamma, alpha, v, w)?;
        let to_beta = two_connected_core(g, l, &gamma, beta, v, w)?;
        let mut steps = reverse_plan(&gamma, &to_alpha).steps;
        steps.extend(to_beta.steps);
        RecolourPlan { steps }
    } else {
        two_connected_core(g, l, alpha, beta, v, w)?
    };
    let check = verify_plan(g, l, alpha, &plan);
    if !check.ok || &check.end != beta {
        return Err(Error::precondition("internal: two-connected plan invalid"));
    }
    Ok(PlanOutcome {
        end: check.end,
        plan,
        lemma_trace: vec![trace("two-connected-lemma", (0..g.n()).collect::<Vec<_>>())],
    })
}

/// Core of the 2-connected planner. Requires a(v) outside L(w) and b
/// unfrozen.
fn two_connected_core(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    v: Vertex,
    w: Vertex,
) -> Result<RecolourPlan> {
    let av = a.get(v);
    debug_assert!(!l.contains(w, av));

    // Target side: make v unfrozen.
    let q = move_unfrozen(g, l, b, v)?;
    let b_v = verify_plan(g, l, b, &q).end;
    let suffix1 = reverse_plan(b, &q);

    // If exactly one neighbour of v wears a(v) on the target side and it is
    // frozen, nudge v to unfreeze it.
    let set_of = |c: &Colouring| -> Vec<Vertex> {
        g.neighbours(v)
            .iter()
            .copied()
            .filter(|&z| c.get(z) == av)
            .collect()
    };
    let mut adj = Composer::new(g, l, &b_v);
    {
        let set = set_of(&adj.cur);
        if set.len() == 1 && is_vertex_frozen(g, l, &adj.cur, set[0]) {
            adj.recolour_least(v)?;
        }
    }
    let (adj_plan, b0) = adj.finish();
    let suffix0 = reverse_plan(&b_v, &adj_plan);
    let set = set_of(&b0);

    // b1: v wears a(v); each target-side neighbour wearing a(v) is moved to
    // a colour clashing with nothing around it.
    let mut b1 = b0.clone();
    b1.set(v, av);
    for &z in &set {
        let col = l
            .list(z)
            .iter()
            .copied()
            .find(|&col| {
                col != av
                    && g.neighbours(z)
                        .iter()
                        .all(|&y| y == v || b0.get(y) != col)
            })
            .ok_or_else(|| Error::precondition("no replacement colour near v"))?;
        b1.set(z, col);
    }

    // a -> b1: Key Lemma on G - v with a(v) pruned from the lists around v;
    // w keeps its full list there, giving it surplus 2.
    let keep: Vec<Vertex> = (0..g.n()).filter(|&u| u != v).collect();
    let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&u| (u, b1.get(u))).collect();
    let mut steps = key_lemma_on_restriction(g, l, a, &targets, &keep)?.steps;

    // b1 -> b0 by the size of the clashing neighbour set.
    let mut comp = Composer::new(g, l, &b1);
    match set.len() {
        0 => {
            if b0.get(v) != av {
                comp.recolour(v, b0.get(v))?;
            }
        }
        1 => {
            let x = set[0];
            let window = {
                let mut t = vec![v, w, x];
                t.sort_unstable();
                t
            };
            let r = crate::kernel::restrict(g, l, &comp.cur, &window)?;
            let from = r.colouring.clone();
            let mut to = from.clone();
            for (idx, &orig) in r.map.iter().enumerate() {
                to.set(idx, b0.get(orig));
            }
            let local = if r.graph.is_complete() {
                plan_clique(3, &r.lists, &from, &to)?.plan
            } else {
                plan_p3(&r.graph, &r.lists, &from, &to)?
            };
            comp.extend_lifted(&local, &r.map)?;
        }
        _ => {
            if is_vertex_frozen(g, l, &comp.cur, v) {
                comp.recolour_least(w)?;
            }
            comp.recolour_least(v)?;
            for &z in &set {
                comp.recolour(z, av)?;
            }
            let bw = b0.get(w);
            if comp.cur.get(v) == bw {
                let col = l
                    .list(v)
                    .iter()
                    .copied()
                    .find(|&col| {
                        col != bw
                            && col != comp.cur.get(v)
                            && g.neighbours(v).iter().all(|&y| comp.cur.get(y) != col)
                    })
                    .ok_or_else(|| Error::precondition("cannot steer v off w's colour"))?;
                comp.recolour(v, col)?;
            }
            if comp.cur.get(w) != bw {
                comp.recolour(w, bw)?;
            }
            if comp.cur.get(v) != b0.get(v) {
                comp.recolour(v, b0.get(v))?;
            }
        }
    }
    debug_assert_eq!(&comp.cur, &b0);
    steps.extend(comp.finish().0.steps);
    steps.extend(suffix0.steps);
    steps.extend(suffix1.steps);
    Ok(RecolourPlan { steps })
}

// ---------------------------------------------------------------------------
// Good pairs and the regular 2-connected planner
// ---------------------------------------------------------------------------

/// Two same-coloured, non-adjacent neighbours of a centre vertex. The pair is
/// *very good* when deleting it keeps the graph connected, which is what lets
/// the Key Lemma recolour everything else around it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoodPair {
    pub centre: Vertex,
    pub pair: (Vertex, Vertex),
    pub very_good: bool,
}

/// Lexicographically least good pair for `v` under `c`, preferring very good
/// pairs.
pub fn find_very_good_pair(g: &Graph, c: &Colouring, v: Vertex) -> Option<GoodPair> {
    let nb = g.neighbours(v);
    let mut first_good: Option<GoodPair> = None;
    for (i, &w1) in nb.iter().enumerate() {
        for &w2 in &nb[i + 1..] {
            if g.has_edge(w1, w2) || c.get(w1) != c.get(w2) {
                continue;
            }
            let very_good = g
                .delete_vertices(&[w1, w2])
                .map(|(h, _)| h.is_connected())
                .unwrap_or(false);
            if very_good {
                return Some(GoodPair {
                    centre: v,
                    pair: (w1, w2),
                    very_good: true,
                });
            }
            if first_good.is_none() {
                first_good = Some(GoodPair {
                    centre: v,
                    pair: (w1, w2),
                    very_good: false,
                });
            }
        }
    }
    first_good
}

/// Recolour `cur` to `target` without ever touching `w1` or `w2`, which wear
/// one shared colour in both colourings and whose deletion keeps the graph
/// connected. The deleted pair's shared colour is pruned from the lists of
/// their neighbours, and the Key Lemma handles the rest of the graph.
fn twomatch(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    target: &Colouring,
    w1: Vertex,
    w2: Vertex,
) -> Result<RecolourPlan> {
    let shared = cur.get(w1);
    if cur.get(w2) != shared || target.get(w1) != shared || target.get(w2) != shared {
        return Err(Error::precondition(
            "pair must wear one shared colour in both colourings",
        ));
    }
    let keep: Vec<Vertex> = (0..g.n()).filter(|&u| u != w1 && u != w2).collect();
    let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&u| (u, target.get(u))).collect();
    let plan = key_lemma_on_restriction(g, l, cur, &targets, &keep)?;
    debug_assert!(plan.steps.iter().all(|s| s.vertex != w1 && s.vertex != w2));
    Ok(plan)
}

/// Bridge `alpha` to `beta` via intermediate colourings that pin one
/// same-coloured pair at a time, alternating between the two given very good
/// pairs (two hops when the pair colours differ, four when they coincide).
fn twomatch_chain(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
    px: (Vertex, Vertex),
    py: (Vertex, Vertex),
) -> Result<RecolourPlan> {
    let n = g.n();
    let ca = alpha.get(px.0);
    let cb = beta.get(py.0);
    if alpha.get(px.1) != ca || beta.get(py.1) != cb {
        return Err(Error::precondition("pair members wear different colours"));
    }
    for a in [px.0, px.1] {
        for b in [py.0, py.1] {
            if a == b {
                return Err(Error::precondition("pairs must be disjoint"));
            }
        }
    }
    let extend_with = |pins: &[(Vertex, Colour)]| -> Result<Colouring> {
        let mut partial: Vec<Option<Colour>> = vec![None; n];
        for &(v, col) in pins {
            partial[v] = Some(col);
        }
        greedy_extend(g, l, &partial)
    };
    let mut steps = Vec::new();
    if ca != cb {
        let gamma = extend_with(&[(px.0, ca), (px.1, ca), (py.0, cb), (py.1, cb)])?;
        steps.extend(twomatch(g, l, alpha, &gamma, px.0, px.1)?.steps);
        steps.extend(twomatch(g, l, &gamma, beta, py.0, py.1)?.steps);
    } else {
        // Shared colour: hop through three pinned colourings, changing one
        // pair's colour per hop.
        let c1 = ca;
        let c2 = l
            .list(py.0)
            .iter()
            .copied()
            .find(|&col| col != c1 && l.contains(py.1, col))
            .ok_or_else(|| Error::precondition("no spare colour for second pair"))?;
        let c3 = l
            .list(px.0)
            .iter()
            .copied()
            .find(|&col| col != c1 && col != c2 && l.contains(px.1, col))
            .ok_or_else(|| Error::precondition("no spare colour for first pair"))?;
        let g12 = extend_with(&[(px.0, c1), (px.1, c1), (py.0, c2), (py.1, c2)])?;
        let g32 = extend_with(&[(px.0, c3), (px.1, c3), (py.0, c2), (py.1, c2)])?;
        let g31 = extend_with(&[(px.0, c3), (px.1, c3), (py.0, c1), (py.1, c1)])?;
        steps.extend(twomatch(g, l, alpha, &g12, px.0, px.1)?.steps);
        steps.extend(twomatch(g, l, &g12, &g32, py.0, py.1)?.steps);
        steps.extend(twomatch(g, l, &g32, &g31, px.0, px.1)?.steps);
        steps.extend(twomatch(g, l, &g31, beta, py.0, py.1)?.steps);
    }
    Ok(RecolourPlan { steps })
}

fn graph_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut comps = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn is_two_connected(g: &Graph) -> bool {
    if g.n() < 3 || !g.is_connected() {
        return false;
    }
    (0..g.n()).all(|v| {
        g.delete_vertices(&[v])
            .map(|(h, _)| h.is_connected())
            .unwrap_or(false)
    })
}

/// Planner for 2-connected regular graphs with the uniform palette
/// {1, ..., degree+1}: 3-connected graphs go through one twomatch chain; a
/// graph with a 2-cut gets the cut-based case analysis.
pub fn plan_regular_two_connected(
    g: &Graph,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    let delta = g.max_degree();
    if delta < 3 || (0..g.n()).any(|v| g.degree(v) != delta) {
        return Err(Error::precondition("graph must be regular of degree >= 3"));
    }
    if !is_two_connected(g) {
        return Err(Error::precondition("graph must be 2-connected"));
    }
    let palette: Vec<Colour> = (1..=(delta as u32 + 1)).collect();
    let l = ListAssignment::new(vec![palette.clone(); g.n()])?;
    check_unfrozen_pair(g, &l, alpha, beta)?;

    // Enumerate 2-cuts; remember the one leaving the biggest component.
    let mut best_cut: Option<((Vertex, Vertex), Vec<Vec<Vertex>>)> = None;
    for z1 in 0..g.n() {
        for z2 in z1 + 1..g.n() {
            let (h, map) = g.delete_vertices(&[z1, z2])?;
            if h.is_connected() {
                continue;
            }
            let comps: Vec<Vec<Vertex>> = graph_components(&h)
                .into_iter()
                .map(|c| c.into_iter().map(|u| map[u]).collect())
                .collect();
            let size = comps.iter().map(Vec::len).max().unwrap();
            let better = match &best_cut {
                None => true,
                Some((_, bc)) => size > bc.iter().map(Vec::len).max().unwrap(),
            };
            if better {
                best_cut = Some(((z1, z2), comps));
            }
        }
    }

    let core_plan = match best_cut {
        None => {
            // 3-connected: one very good pair on each side, bridged directly.
            let v = (0..g.n())
                .find(|&v| !is_vertex_frozen(g, &l, alpha, v))
                .unwrap();
            let pa = find_very_good_pair(g, alpha, v)
                .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
            debug_assert!(pa.very_good);
            let (w1, _) = pa.pair;
            let q = move_unfrozen(g, &l, beta, w1)?;
            let beta2 = verify_plan(g, &l, beta, &q).end;
            let suffix = reverse_plan(beta, &q);
            let pb = find_very_good_pair(g, &beta2, w1)
                .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
            debug_assert!(pb.very_good);
            let mut steps = twomatch_chain(g, &l, alpha, &beta2, pa.pair, pb.pair)?.steps;
            steps.extend(suffix.steps);
            RecolourPlan { steps }
        }
        Some(((z1, z2), comps)) => {
            plan_two_cut_regular(g, &l, alpha, beta, z1, z2, &comps)?
        }
    };
    let check = verify_plan(g, &l, alpha, &core_plan);
    if !check.ok || &check.end != beta {
        return Err(Error::precondition("internal: regular planner plan invalid"));
    }
    Ok(PlanOutcome {
        end: check.end,
        plan: core_plan,
        lemma_trace: vec![trace(
            "regular-two-connected",
            (0..g.n()).collect::<Vec<_>>(),
        )],
    })
}

/// The 2-cut case of the regular planner. `comps` are the components of
/// G - {z1, z2}; the biggest is protected, and the analysis happens around a
/// smaller one.
fn plan_two_cut_regular(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
    z1: Vertex,
    z2: Vertex,
    comps: &[Vec<Vertex>],
) -> Result<RecolourPlan> {
    let h1 = comps.iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0]))).unwrap();
    let h2 = comps.iter().find(|c| c != &h1).unwrap();
    let in_s = |u: Vertex| u == z1 || u == z2;

    let exceptional = h2
        .iter()
        .all(|&u| g.has_edge(u, z1) && g.has_edge(u, z2));
    if exceptional {
        return plan_two_cut_exceptional(g, l, alpha, beta, z1, z2, h1, h2);
    }
    // General case: some vertex of the small component misses part of the
    // cut; every good pair of such a vertex is very good.
    let v = *h2
        .iter()
        .find(|&&u| !(g.has_edge(u, z1) && g.has_edge(u, z2)))
        .unwrap();
    let prefix = move_unfrozen(g, l, alpha, v)?;
    let alpha2 = verify_plan(g, l, alpha, &prefix).end;
    let q = move_unfrozen(g, l, beta, v)?;
    let beta2 = verify_plan(g, l, beta, &q).end;
    let suffix = reverse_plan(beta, &q);
    let pa = find_very_good_pair(g, &alpha2, v)
        .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
    let pb = find_very_good_pair(g, &beta2, v)
        .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;

    let pa_hits_s = in_s(pa.pair.0) || in_s(pa.pair.1);
    let pb_hits_s = in_s(pb.pair.0) || in_s(pb.pair.1);

    let mut steps = prefix.steps.clone();
    if pa_hits_s {
        // The pair's non-cut member sees only part of the cut, so its own
        // good pair (on the target side) is very good and disjoint.
        let w2 = if in_s(pa.pair.0) { pa.pair.1 } else { pa.pair.0 };
        let q2 = move_unfrozen(g, l, &beta2, w2)?;
        let beta3 = verify_plan(g, l, &beta2, &q2).end;
        let suffix2 = reverse_plan(&beta2, &q2);
        let pw = find_very_good_pair(g, &beta3, w2)
            .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
        steps.extend(twomatch_chain(g, l, &alpha2, &beta3, pa.pair, pw.pair)?.steps);
        steps.extend(suffix2.steps);
    } else if pb_hits_s {
        let w2 = if in_s(pb.pair.0) { pb.pair.1 } else { pb.pair.0 };
        let q2 = move_unfrozen(g, l, &alpha2, w2)?;
        let alpha3 = verify_plan(g, l, &alpha2, &q2).end;
        let pw = find_very_good_pair(g, &alpha3, w2)
            .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
        steps.extend(q2.steps);
        steps.extend(twomatch_chain(g, l, &alpha3, &beta2, pw.pair, pb.pair)?.steps);
    } else {
        // Both pairs avoid the cut: pin one shared colour on the cut pair,
        // recolour the small component with the Key Lemma in between.
        let root = h2
            .iter()
            .copied()
            .find(|&u| g.has_edge(u, z1) && g.has_edge(u, z2));
        if g.has_edge(z1, z2) || root.is_none() {
            // Fall back to bridging through the pair member directly.
            let (w1, _) = pa.pair;
            let q2 = move_unfrozen(g, l, &beta2, w1)?;
            let beta3 = verify_plan(g, l, &beta2, &q2).end;
            let suffix2 = reverse_plan(&beta2, &q2);
            let pw = find_very_good_pair(g, &beta3, w1)
                .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?;
            steps.extend(twomatch_chain(g, l, &alpha2, &beta3, pa.pair, pw.pair)?.steps);
            steps.extend(suffix2.steps);
        } else {
            let ca = alpha2.get(pa.pair.0);
            let cb = beta2.get(pb.pair.0);
            let c = l
                .list(z1)
                .iter()
                .copied()
                .find(|&col| col != ca && col != cb)
                .ok_or_else(|| Error::precondition("no spare colour for the cut"))?;
            let mut partial: Vec<Option<Colour>> = vec![None; g.n()];
            partial[pa.pair.0] = Some(ca);
            partial[pa.pair.1] = Some(ca);
            partial[z1] = Some(c);
            partial[z2] = Some(c);
            let gamma1 = greedy_extend(g, l, &partial)?;
            // Second pinned colouring: agree with the first outside the
            // small component.
            let mut partial2: Vec<Option<Colour>> = (0..g.n())
                .map(|u| {
                    if h2.contains(&u) {
                        None
                    } else {
                        Some(gamma1.get(u))
                    }
                })
                .collect();
            partial2[pb.pair.0] = Some(cb);
            partial2[pb.pair.1] = Some(cb);
            let gamma2 = greedy_extend(g, l, &partial2)?;
            steps.extend(twomatch(g, l, &alpha2, &gamma1, pa.pair.0, pa.pair.1)?.steps);
            let targets: Vec<(Vertex, Colour)> =
                h2.iter().map(|&u| (u, gamma2.get(u))).collect();
            steps.extend(key_lemma_on_restriction(g, l, &gamma1, &targets, h2)?.steps);
            steps.extend(twomatch(g, l, &gamma2, &beta2, pb.pair.0, pb.pair.1)?.steps);
        }
    }
    steps.extend(suffix.steps);
    Ok(RecolourPlan { steps })
}

/// Exceptional 2-cut shape: the small component plus the cut induces a
/// complete graph minus the cut edge. Good pairs straddle the cut's single
/// neighbours in the big component.
#[allow(clippy::too_many_arguments)]
fn plan_two_cut_exceptional(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
    z1: Vertex,
    z2: Vertex,
    h1: &[Vertex],
    h2: &[Vertex],
) -> Result<RecolourPlan> {
    let prefix = move_unfrozen(g, l, alpha, z1)?;
    let alpha2 = verify_plan(g, l, alpha, &prefix).end;
    let q = move_unfrozen(g, l, beta, z2)?;
    let mut beta2 = verify_plan(g, l, beta, &q).end;
    let mut suffix = reverse_plan(beta, &q);

    let orient = |p: (Vertex, Vertex)| -> (Vertex, Vertex) {
        if h1.contains(&p.0) {
            p
        } else {
            (p.1, p.0)
        }
    };
    let px = orient(
        find_very_good_pair(g, &alpha2, z1)
            .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?
            .pair,
    );
    let mut py = orient(
        find_very_good_pair(g, &beta2, z2)
            .ok_or_else(|| Error::precondition("no good pair at an unfrozen vertex"))?
            .pair,
    );
    if px.1 == py.1 {
        // Shift the repeated colour onto a different clique vertex on the
        // target side.
        let shared = beta2.get(py.1);
        let mut comp = Composer::new(g, l, &beta2);
        if is_vertex_frozen(g, l, &comp.cur, py.1) {
            comp.recolour_least(z2)?;
        }
        comp.recolour_least(py.1)?;
        let w = h2
            .iter()
            .copied()
            .find(|&u| u != py.1)
            .ok_or_else(|| Error::precondition("clique component too small"))?;
        comp.recolour(w, shared)?;
        let (adjust, beta3) = comp.finish();
        let mut new_suffix = reverse_plan(&beta2, &adjust);
        new_suffix.steps.extend(suffix.steps);
        suffix = new_suffix;
        beta2 = beta3;
        py = (py.0, w);
    }
    let mut steps = prefix.steps;
    steps.extend(twomatch_chain(g, l, &alpha2, &beta2, px, py)?.steps);
    steps.extend(suffix.steps);
    Ok(RecolourPlan { steps })
}


// ---------------------------------------------------------------------------
// Main planner: block induction
// ---------------------------------------------------------------------------

const MAIN_RECURSION_LIMIT: usize = 64;

/// Restrict to `keep`, overlay the target colours, recurse into the main
/// planner, and lift the plan back.
fn main_rec_on_restriction(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    target_on_keep: &[(Vertex, Colour)],
    keep: &[Vertex],
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    let r = crate::kernel::restrict(g, l, cur, keep)?;
    let mut to = r.colouring.clone();
    for &(v, col) in target_on_keep {
        let idx = r
            .map
            .iter()
            .position(|&u| u == v)
            .ok_or_else(|| Error::precondition("target vertex outside restriction"))?;
        to.set(idx, col);
    }
    let local = main_rec(&r.graph, &r.lists, &r.colouring, &to, tr, depth + 1)?;
    let steps = local
        .steps
        .iter()
        .map(|s| RecolourStep {
            vertex: r.map[s.vertex],
            new_colour: s.new_colour,
        })
        .collect();
    Ok(RecolourPlan { steps })
}

fn restriction_is_unfrozen(
    g: &Graph,
    l: &ListAssignment,
    cur: &Colouring,
    keep: &[Vertex],
) -> bool {
    crate::kernel::restrict(g, l, cur, keep)
        .map(|r| !colouring_status(&r.graph, &r.lists, &r.colouring).is_frozen)
        .unwrap_or(false)
}

/// Identical-list regular graphs may use any palette; the regular planner
/// works over {1, ..., degree+1}, so translate colours both ways.
fn plan_regular_relabelled(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
) -> Result<RecolourPlan> {
    let palette = l.list(0).to_vec();
    if (1..g.n()).any(|v| l.list(v) != palette.as_slice()) {
        return Err(Error::precondition("lists are not identical"));
    }
    let encode = |c: &Colouring| -> Result<Colouring> {
        let mut out = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let pos = palette
                .iter()
                .position(|&col| col == c.get(v))
                .ok_or_else(|| Error::ColourNotInList {
                    vertex: v,
                    colour: c.get(v),
                })?;
            out.push(pos as u32 + 1);
        }
        Ok(Colouring::new(out))
    };
    let out = plan_regular_two_connected(g, &encode(a)?, &encode(b)?)?;
    let steps = out
        .plan
        .steps
        .iter()
        .map(|s| RecolourStep {
            vertex: s.vertex,
            new_colour: palette[(s.new_colour - 1) as usize],
        })
        .collect();
    Ok(RecolourPlan { steps })
}

/// Leaf-block endblock to reduce: prefer one bigger than an edge (so the
/// clique/cycle reductions fire before pendant-path stripping), tie-break on
/// the least contained vertex.
fn choose_endblock(bt: &crate::graph::BlockTree) -> usize {
    let leaves = bt.leaf_blocks();
    *leaves
        .iter()
        .min_by_key(|&&i| (bt.blocks[i].len() <= 2, bt.blocks[i][0]))
        .unwrap()
}

fn main_rec(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    if depth > MAIN_RECURSION_LIMIT {
        return Err(Error::precondition("recursion limit exceeded"));
    }
    if a == b {
        return Ok(RecolourPlan::default());
    }
    let report = check_list_surplus(g, l);
    if !report.is_one_plus {
        return Err(Error::precondition("lists must exceed degrees"));
    }
    check_unfrozen_pair(g, l, a, b)?;
    if report.surplus_ge2.first().is_some() {
        tr.push(trace("key-lemma", (0..g.n()).collect::<Vec<_>>()));
        return Ok(plan_key_lemma(g, l, a, b)?.plan);
    }
    if g.n() <= 3 {
        tr.push(trace("exhaustive-search", (0..g.n()).collect::<Vec<_>>()));
        return bfs_plan_exact(g, l, a, b);
    }
    if recognise_small_shape(g).is_some() {
        let out = plan_small_case(g, l, a, b)?;
        tr.extend(out.lemma_trace);
        return Ok(out.plan);
    }
    if g.is_complete() {
        tr.push(trace("clique-lemma", (0..g.n()).collect::<Vec<_>>()));
        return Ok(plan_clique(g.n(), l, a, b)?.plan);
    }
    if find_distinguishing_edge(g, l).is_some() {
        let out = plan_two_connected(g, l, a, b)?;
        tr.extend(out.lemma_trace);
        return Ok(out.plan);
    }
    if is_two_connected(g) {
        // No distinguishing edge on a 2-connected graph forces identical
        // tight lists, hence a regular graph.
        tr.push(trace(
            "regular-two-connected",
            (0..g.n()).collect::<Vec<_>>(),
        ));
        return plan_regular_relabelled(g, l, a, b);
    }

    let bt = crate::graph::block_decomposition(g)?;
    let hi = choose_endblock(&bt);
    let hset = bt.blocks[hi].clone();
    let v = bt
        .leaf_cut_vertex(hi)
        .ok_or_else(|| Error::precondition("endblock without cut vertex"))?;
    let (hsub, hmap) = g.induced_subgraph(&hset)?;
    if hset.len() == 2 {
        return strip_pendant(g, l, a, b, v, tr, depth);
    }
    if hsub.is_complete() {
        tr.push(trace("endblock-clique", hset.clone()));
        return reduce_clique_endblock(g, l, a, b, &hset, v, tr, depth);
    }
    if (0..hsub.n()).all(|u| hsub.degree(u) == 2) {
        tr.push(trace("endblock-cycle", hset.clone()));
        return reduce_cycle_endblock(g, l, a, b, &hset, v, tr, depth);
    }
    // Clique with one subdivided edge (the subdivision point is v)?
    let vh = hmap.iter().position(|&u| u == v).unwrap();
    if hsub.degree(vh) == 2 {
        let nb = hsub.neighbours(vh);
        let (x, y) = (nb[0], nb[1]);
        let others: Vec<usize> = (0..hsub.n()).filter(|&u| u != vh).collect();
        let minus_edge = !hsub.has_edge(x, y)
            && others.iter().all(|&p| {
                others
                    .iter()
                    .all(|&q| p == q || (p, q) == (x, y) || (p, q) == (y, x) || hsub.has_edge(p, q))
            });
        if minus_edge {
            tr.push(trace("endblock-subdivided-clique", hset.clone()));
            return reduce_subdivided_clique_endblock(g, l, a, b, hmap[x], hmap[y]);
        }
    }
    tr.push(trace("endblock-reduction", hset.clone()));
    reduce_general_endblock(g, l, a, b, &hset, v, tr, depth)
}

/// General endblock: find a distance-2 pair whose removal keeps the block
/// connected, pin a shared colour on it on both sides, recolour the block by
/// recursion and bridge the two pinned colourings without touching the pair.
#[allow(clippy::too_many_arguments)]
fn reduce_general_endblock(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    hset: &[Vertex],
    v: Vertex,
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    let (hsub, hmap) = g.induced_subgraph(hset)?;
    let vh = hmap.iter().position(|&u| u == v).unwrap();
    let mut pair: Option<(Vertex, Vertex)> = None;
    'outer: for p in 0..hsub.n() {
        for q in p + 1..hsub.n() {
            if p == vh || q == vh || hsub.has_edge(p, q) {
                continue;
            }
            if !hsub
                .neighbours(p)
                .iter()
                .any(|&z| hsub.has_edge(z, q))
            {
                continue;
            }
            if l.list(hmap[p]) != l.list(hmap[q]) {
                continue;
            }
            let ok = hsub
                .delete_vertices(&[p, q])
                .map(|(h, _)| h.is_connected())
                .unwrap_or(false);
            if ok {
                pair = Some((hmap[p], hmap[q]));
                break 'outer;
            }
        }
    }
    let (x, y) = pair.ok_or_else(|| {
        Error::precondition("no distance-2 separating-safe pair in the endblock")
    })?;

    let pa = move_unfrozen(g, l, a, v)?;
    let a1 = verify_plan(g, l, a, &pa).end;
    let pb = move_unfrozen(g, l, b, v)?;
    let b1 = verify_plan(g, l, b, &pb).end;
    let suffix_mv = reverse_plan(b, &pb);

    let c = l.list(x)[0];
    let pin = |base: &Colouring| -> Result<Colouring> {
        let mut partial: Vec<Option<Colour>> = (0..g.n())
            .map(|u| {
                if hset.contains(&u) {
                    None
                } else {
                    Some(base.get(u))
                }
            })
            .collect();
        partial[x] = Some(c);
        partial[y] = Some(c);
        greedy_extend(g, l, &partial)
    };
    let gamma1 = pin(&a1)?;
    let gamma2 = pin(&b1)?;
    let t1: Vec<(Vertex, Colour)> = hset.iter().map(|&u| (u, gamma1.get(u))).collect();
    let t2: Vec<(Vertex, Colour)> = hset.iter().map(|&u| (u, gamma2.get(u))).collect();

    let mut steps = pa.steps;
    steps.extend(main_rec_on_restriction(g, l, &a1, &t1, hset, tr, depth)?.steps);
    steps.extend(twomatch(g, l, &gamma1, &gamma2, x, y)?.steps);
    let p_back = main_rec_on_restriction(g, l, &b1, &t2, hset, tr, depth)?;
    steps.extend(reverse_plan(&b1, &p_back).steps);
    steps.extend(suffix_mv.steps);
    Ok(RecolourPlan { steps })
}

/// Endblock formed from a clique by subdividing one edge: align the two
/// subdivision neighbours to one colour, then plan on the graph with them
/// merged, where the subdivision vertex has surplus 2.
fn reduce_subdivided_clique_endblock(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    x: Vertex,
    y: Vertex,
) -> Result<RecolourPlan> {
    let align = |c: &Colouring| -> Result<(RecolourPlan, Colouring)> {
        let mut comp = Composer::new(g, l, c);
        if comp.cur.get(y) != comp.cur.get(x) {
            comp.recolour(y, comp.cur.get(x))?;
        }
        Ok(comp.finish())
    };
    let (pa, a1) = align(a)?;
    let (pb, b1) = align(b)?;
    let suffix = reverse_plan(b, &pb);

    let (gm, map) = g.delete_vertices(&[y])?;
    let lm = ListAssignment::new(map.iter().map(|&u| l.list(u).to_vec()).collect())?;
    let restrict_c = |c: &Colouring| Colouring::new(map.iter().map(|&u| c.get(u)).collect());
    let out = plan_key_lemma(&gm, &lm, &restrict_c(&a1), &restrict_c(&b1))?;
    let mut steps = pa.steps;
    for s in &out.plan.steps {
        let orig = map[s.vertex];
        steps.push(RecolourStep {
            vertex: orig,
            new_colour: s.new_colour,
        });
        if orig == x {
            // The merged vertex stands for both subdivision neighbours; they
            // share all neighbours, so the move repeats on the twin.
            steps.push(RecolourStep {
                vertex: y,
                new_colour: s.new_colour,
            });
        }
    }
    steps.extend(suffix.steps);
    Ok(RecolourPlan { steps })
}

/// Clique endblock: copy the target's colours onto the clique (via the
/// clique planner on its pruned lists), keeping the cut vertex and one
/// sacrificial vertex flexible, then recurse on the graph without the
/// already-correct clique interior.
#[allow(clippy::too_many_arguments)]
fn reduce_clique_endblock(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    hset: &[Vertex],
    v: Vertex,
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    let u = g
        .neighbours(v)
        .iter()
        .copied()
        .find(|w| !hset.contains(w))
        .ok_or_else(|| Error::precondition("cut vertex has no outside neighbour"))?;
    let pa = move_unfrozen(g, l, a, u)?;
    let a1 = verify_plan(g, l, a, &pa).end;
    let pb = move_unfrozen(g, l, b, u)?;
    let b1 = verify_plan(g, l, b, &pb).end;
    let suffix = reverse_plan(b, &pb);
    let mut steps = pa.steps;

    // The clique planner needs more colours than vertices across the pruned
    // lists; recolouring the outside anchor u can widen the cut vertex's
    // pruned list.
    let universe_size = |cur: &Colouring| -> usize {
        crate::kernel::restrict(g, l, cur, hset)
            .map(|r| r.lists.colour_universe().len())
            .unwrap_or(0)
    };
    let mut a2 = a1.clone();
    if universe_size(&a2) <= hset.len() {
        let found = l
            .list(u)
            .iter()
            .copied()
            .find(|&col| {
                col != a2.get(u)
                    && g.neighbours(u).iter().all(|&z| a2.get(z) != col)
                    && {
                        let mut t = a2.clone();
                        t.set(u, col);
                        universe_size(&t) > hset.len()
                    }
            });
        let col =
            found.ok_or_else(|| Error::precondition("cannot widen the clique's colour range"))?;
        steps.push(RecolourStep {
            vertex: u,
            new_colour: col,
        });
        a2.set(u, col);
    }

    // Target colours on the clique: everything follows b1 except the cut
    // vertex, and one vertex x that absorbs the clash with the cut vertex's
    // current colour.
    let hn: Vec<Vertex> = hset.iter().copied().filter(|&h| h != v).collect();
    let x = hn
        .iter()
        .copied()
        .find(|&h| b1.get(h) == a2.get(v))
        .unwrap_or(hn[0]);
    let mut target_h: Vec<(Vertex, Colour)> = Vec::new();
    let mut used: Vec<Colour> = vec![a2.get(v)];
    for &h in &hn {
        if h != x {
            target_h.push((h, b1.get(h)));
            used.push(b1.get(h));
        }
    }
    target_h.push((v, a2.get(v)));
    let cx = l
        .list(x)
        .iter()
        .copied()
        .find(|col| !used.contains(col))
        .ok_or_else(|| Error::precondition("no colour left for the absorbing vertex"))?;
    target_h.push((x, cx));

    let r = crate::kernel::restrict(g, l, &a2, hset)?;
    let mut to = r.colouring.clone();
    for &(w, col) in &target_h {
        let idx = r.map.iter().position(|&z| z == w).unwrap();
        to.set(idx, col);
    }
    let local = plan_clique(r.graph.n(), &r.lists, &r.colouring, &to)?;
    for s in &local.plan.steps {
        steps.push(RecolourStep {
            vertex: r.map[s.vertex],
            new_colour: s.new_colour,
        });
    }
    let mut a3 = a2.clone();
    for &(w, col) in &target_h {
        a3.set(w, col);
    }

    // Drop the clique interior (except the cut vertex and x); re-admit one
    // vertex if the remainder would degenerate below maximum degree 3.
    let mut removed: Vec<Vertex> = hn.iter().copied().filter(|&h| h != x).collect();
    let mut keep: Vec<Vertex> = (0..g.n()).filter(|z| !removed.contains(z)).collect();
    let (sub, _) = g.induced_subgraph(&keep)?;
    if sub.max_degree() < 3 {
        let back = removed[0];
        removed.retain(|&z| z != back);
        keep = (0..g.n()).filter(|z| !removed.contains(z)).collect();
    }
    let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&z| (z, b1.get(z))).collect();
    steps.extend(main_rec_on_restriction(g, l, &a3, &targets, &keep, tr, depth)?.steps);
    steps.extend(suffix.steps);
    Ok(RecolourPlan { steps })
}

/// Cycle endblock of length at least four: rewrite the cycle interior to the
/// target's colours (cycle planner on the pruned lists), shuttle unfrozenness
/// next to the cut vertex on both sides in lockstep, then recurse with the
/// cycle interior removed.
#[allow(clippy::too_many_arguments)]
fn reduce_cycle_endblock(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    hset: &[Vertex],
    v: Vertex,
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    let u = g
        .neighbours(v)
        .iter()
        .copied()
        .find(|w| !hset.contains(w))
        .ok_or_else(|| Error::precondition("cut vertex has no outside neighbour"))?;
    let pa = move_unfrozen(g, l, a, u)?;
    let a1 = verify_plan(g, l, a, &pa).end;
    let pb = move_unfrozen(g, l, b, u)?;
    let b1 = verify_plan(g, l, b, &pb).end;
    let mut steps = pa.steps;

    // Widen the cycle's pruned colour range to at least four colours if the
    // outside anchor u allows it.
    let universe_size = |cur: &Colouring| -> usize {
        crate::kernel::restrict(g, l, cur, hset)
            .map(|r| r.lists.colour_universe().len())
            .unwrap_or(0)
    };
    let mut a2 = a1.clone();
    if universe_size(&a2) < 4 {
        if let Some(col) = l.list(u).iter().copied().find(|&col| {
            col != a2.get(u)
                && g.neighbours(u).iter().all(|&z| a2.get(z) != col)
                && {
                    let mut t = a2.clone();
                    t.set(u, col);
                    universe_size(&t) >= 4
                }
        }) {
            steps.push(RecolourStep {
                vertex: u,
                new_colour: col,
            });
            a2.set(u, col);
        }
    }

    // Cycle target: the interior follows b1; the cut vertex takes the least
    // colour compatible with everything around it.
    let mut target_h: Vec<(Vertex, Colour)> = hset
        .iter()
        .copied()
        .filter(|&h| h != v)
        .map(|h| (h, b1.get(h)))
        .collect();
    let cv = l
        .list(v)
        .iter()
        .copied()
        .find(|&col| {
            g.neighbours(v).iter().all(|&z| {
                if hset.contains(&z) && z != v {
                    b1.get(z) != col
                } else {
                    a2.get(z) != col
                }
            })
        })
        .ok_or_else(|| Error::precondition("no colour for the cut vertex on the cycle"))?;
    target_h.push((v, cv));
    steps.extend(main_rec_on_restriction(g, l, &a2, &target_h, hset, tr, depth)?.steps);
    let mut a3 = a2.clone();
    for &(w, col) in &target_h {
        a3.set(w, col);
    }

    // Cycle order around the endblock starting at the cut vertex.
    let mut order = vec![v];
    let mut prev = v;
    let mut cur = *g
        .neighbours(v)
        .iter()
        .find(|&&z| hset.contains(&z))
        .unwrap();
    while cur != v {
        order.push(cur);
        let next = *g
            .neighbours(cur)
            .iter()
            .find(|&&z| hset.contains(&z) && z != prev)
            .unwrap();
        prev = cur;
        cur = next;
    }
    let m = order.len();

    // Push unfrozenness next to the cut vertex, mirrored on both sides so
    // the dropped interior keeps agreeing.
    let mut b2 = b1.clone();
    let mut push_steps: Vec<RecolourStep> = Vec::new();
    {
        let near_v = [order[1], order[m - 1]];
        let frozen_near = |c: &Colouring| {
            is_vertex_frozen(g, l, c, v)
                && near_v.iter().all(|&z| is_vertex_frozen(g, l, c, z))
        };
        if frozen_near(&a3) {
            let j = (2..m - 1)
                .find(|&j| !is_vertex_frozen(g, l, &a3, order[j]))
                .ok_or_else(|| Error::precondition("cycle endblock is frozen"))?;
            // Walk the unfrozen slot towards the nearer cycle neighbour of v.
            let towards_low = j <= m - j;
            let mut k = j;
            let mut comp = Composer::new(g, l, &a3);
            loop {
                let nxt = if towards_low { k - 1 } else { k + 1 };
                if (towards_low && nxt < 2) || (!towards_low && nxt > m - 2) {
                    break;
                }
                if is_vertex_frozen(g, l, &comp.cur, order[nxt]) {
                    comp.recolour_least(order[k])?;
                }
                k = nxt;
            }
            // One final nudge so the neighbour of v itself unfreezes.
            let boundary = if towards_low { order[1] } else { order[m - 1] };
            if is_vertex_frozen(g, l, &comp.cur, boundary) {
                comp.recolour_least(order[k])?;
            }
            let (pp, _) = comp.finish();
            push_steps = pp.steps;
            // Mirror on the target side; interior vertices see identical
            // closed neighbourhoods, so the same steps stay legal.
            let mirrored = RecolourPlan {
                steps: push_steps.clone(),
            };
            let chk = verify_plan(g, l, &b2, &mirrored);
            if !chk.ok {
                return Err(Error::precondition("mirrored cycle push is illegal"));
            }
            b2 = chk.end;
        }
    }
    let a4 = verify_plan(
        g,
        l,
        &a3,
        &RecolourPlan {
            steps: push_steps.clone(),
        },
    )
    .end;
    steps.extend(push_steps.clone());

    // Keep the cut vertex and one adjacent cycle vertex (an unfrozen one if
    // the cut vertex is frozen); recurse without the rest of the cycle.
    let z = {
        let near = [order[1], order[m - 1]];
        if is_vertex_frozen(g, l, &a4, v) {
            near.iter()
                .copied()
                .filter(|&z| !is_vertex_frozen(g, l, &a4, z))
                .min()
                .ok_or_else(|| Error::precondition("no unfrozen vertex beside the cut"))?
        } else {
            near.into_iter().min().unwrap()
        }
    };
    let keep: Vec<Vertex> = (0..g.n())
        .filter(|&w| !hset.contains(&w) || w == v || w == z)
        .collect();
    let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&w| (w, b2.get(w))).collect();
    steps.extend(main_rec_on_restriction(g, l, &a4, &targets, &keep, tr, depth)?.steps);

    // Unwind the mirrored push and the target-side unfreezing.
    steps.extend(reverse_plan(&b1, &RecolourPlan { steps: push_steps }).steps);
    steps.extend(reverse_plan(b, &pb).steps);
    Ok(RecolourPlan { steps })
}

/// Pendant-edge endblock: strip the attached degree-2 path down to one edge
/// with the claw/paw planners, put the target colour on the pendant
/// neighbour (unfreezing the rest locally if needed), and recurse without it.
fn strip_pendant(
    g: &Graph,
    l: &ListAssignment,
    a: &Colouring,
    b: &Colouring,
    cut: Vertex,
    tr: &mut Vec<TraceEntry>,
    depth: usize,
) -> Result<RecolourPlan> {
    // Maximal pendant path: leaf, interior degree-2 vertices, branch vertex.
    let leaf = if g.degree(cut) == 1 {
        cut
    } else {
        *g.neighbours(cut).iter().find(|&&z| g.degree(z) == 1).ok_or_else(|| {
            Error::precondition("pendant endblock without a leaf")
        })?
    };
    let mut path = vec![leaf];
    let mut prev = usize::MAX;
    let mut cur = leaf;
    while g.degree(cur) <= 2 {
        let next = *g
            .neighbours(cur)
            .iter()
            .find(|&&z| z != prev)
            .ok_or_else(|| Error::precondition("pendant path ends early"))?;
        prev = cur;
        cur = next;
        path.push(cur);
    }
    path.reverse(); // branch vertex first
    let v = path[0];
    let y = path[1];
    debug_assert!(g.degree(v) >= 3);

    // Two companions of the branch vertex outside the path: prefer a
    // non-adjacent pair, then a pair led by a cut vertex.
    let cands: Vec<Vertex> = g
        .neighbours(v)
        .iter()
        .copied()
        .filter(|&z| z != y)
        .collect();
    let bt = crate::graph::block_decomposition(g)?;
    let mut pick: Option<(Vertex, Vertex)> = None;
    'nonadj: for (i, &w) in cands.iter().enumerate() {
        for &x in &cands[i + 1..] {
            if !g.has_edge(w, x) {
                pick = Some((w, x));
                break 'nonadj;
            }
        }
    }
    if pick.is_none() {
        'cutled: for &w in &cands {
            if bt.cut_vertices.contains(&w) {
                for &x in &cands {
                    if x != w {
                        pick = Some((w, x));
                        break 'cutled;
                    }
                }
            }
        }
    }
    let (w, x) = pick.unwrap_or((cands[0], cands[1]));

    let pa = move_unfrozen(g, l, a, w)?;
    let a1 = verify_plan(g, l, a, &pa).end;
    let pb = move_unfrozen(g, l, b, w)?;
    let b1 = verify_plan(g, l, b, &pb).end;
    let suffix = reverse_plan(b, &pb);
    let mut steps = pa.steps;

    if path.len() > 2 {
        // Rewrite the far end of the path to the target's colours via the
        // claw/paw planner on the local subgraph, then recurse without it.
        let mut j: Vec<Vertex> = path.clone();
        j.push(w);
        j.push(x);
        j.sort_unstable();
        let mut aprime = a1.clone();
        for &p in &path[2..] {
            aprime.set(p, b1.get(p));
        }
        let cy = l
            .list(y)
            .iter()
            .copied()
            .find(|&col| {
                g.neighbours(y)
                    .iter()
                    .all(|&z| aprime.get(z) != col || z == y)
            })
            .ok_or_else(|| Error::precondition("no colour for the path neighbour"))?;
        aprime.set(y, cy);
        let r = crate::kernel::restrict(g, l, &a1, &j)?;
        let mut to = r.colouring.clone();
        for (idx, &orig) in r.map.iter().enumerate() {
            to.set(idx, aprime.get(orig));
        }
        let local = plan_small_case(&r.graph, &r.lists, &r.colouring, &to)?;
        for s in &local.plan.steps {
            steps.push(RecolourStep {
                vertex: r.map[s.vertex],
                new_colour: s.new_colour,
            });
        }
        let keep: Vec<Vertex> = (0..g.n()).filter(|z| !path[2..].contains(z)).collect();
        let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&z| (z, b1.get(z))).collect();
        steps.extend(main_rec_on_restriction(g, l, &aprime, &targets, &keep, tr, depth)?.steps);
        steps.extend(suffix.steps);
        return Ok(RecolourPlan { steps });
    }

    // Single pendant edge: search the 4-vertex neighbourhood for a state
    // with the target colour on the pendant vertex and the rest unfrozen
    // (this realises the explicit unfreezing gadgets).
    let mut j = vec![v, y, w, x];
    j.sort_unstable();
    let keep: Vec<Vertex> = (0..g.n()).filter(|&z| z != y).collect();
    let goal_colour = b1.get(y);
    let local = bfs_goal_local(g, l, &a1, &j, |cc| {
        cc.get(y) == goal_colour && restriction_is_unfrozen(g, l, cc, &keep)
    })?;
    let a2 = verify_plan(g, l, &a1, &local).end;
    steps.extend(local.steps);
    let targets: Vec<(Vertex, Colour)> = keep.iter().map(|&z| (z, b1.get(z))).collect();
    steps.extend(main_rec_on_restriction(g, l, &a2, &targets, &keep, tr, depth)?.steps);
    steps.extend(suffix.steps);
    Ok(RecolourPlan { steps })
}

/// Main planner: connected graphs with maximum degree at least 3 and lists
/// exceeding degrees, between unfrozen colourings. Dispatches by precedence
/// (spare list room, small shapes, a distinguishing edge, 2-connectivity)
/// and otherwise peels endblocks off the block tree.
pub fn plan_main(
    g: &Graph,
    l: &ListAssignment,
    alpha: &Colouring,
    beta: &Colouring,
) -> Result<PlanOutcome> {
    if !g.is_connected() {
        return Err(Error::precondition("graph must be connected"));
    }
    if g.max_degree() < 3 {
        return Err(Error::precondition(
            "maximum degree below 3: use the small-case planner",
        ));
    }
    let mut tr = Vec::new();
    let plan = main_rec(g, l, alpha, beta, &mut tr, 0)?;
    let check = verify_plan(g, l, alpha, &plan);
    if !check.ok || &check.end != beta {
        return Err(Error::precondition("internal: main plan invalid"));
    }
    if tr.is_empty() {
        tr.push(trace("identity", Vec::<Vertex>::new()));
    }
    Ok(PlanOutcome {
        end: check.end,
        plan,
        lemma_trace: tr,
    })
}
