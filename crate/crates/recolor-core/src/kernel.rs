//! Single-step recolouring semantics, frozen-vertex detection, subgraph
//! restriction, and the three lemma procedures that the quadratic-diameter
//! planner composes: push-unfreeze along a shortest path, clearing the bad
//! neighbours of a target vertex, and fixing a leaf vertex at its target
//! colour.

use crate::error::{Error, Result};
use crate::graph::{Colour, Colouring, Graph, ListAssignment, Vertex};

/// One recolouring move: `vertex` takes `new_colour`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecolourStep {
    pub vertex: Vertex,
    pub new_colour: Colour,
}

/// Ordered sequence of steps; replaying from the declared start colouring
/// must keep every intermediate colouring proper.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RecolourPlan {
    pub steps: Vec<RecolourStep>,
}

impl RecolourPlan {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Vertices touched by the plan, ascending and deduplicated.
    pub fn touched_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.steps.iter().map(|s| s.vertex).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Result of `colouring_status`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouringStatus {
    pub proper: bool,
    /// Vertices with no legal recolour, ascending.
    pub frozen_vertices: Vec<Vertex>,
    /// True iff every vertex is frozen.
    pub is_frozen: bool,
}

/// True iff every colour of `L(v) \ {c(v)}` appears on a neighbour of `v`.
pub fn is_vertex_frozen(g: &Graph, l: &ListAssignment, c: &Colouring, v: Vertex) -> bool {
    free_colour(g, l, c, v).is_none()
}

/// Least colour in `L(v)` that differs from `c(v)` and is unused on `N(v)`,
/// if any. This is the deterministic reading of "recolour arbitrarily".
pub fn free_colour(g: &Graph, l: &ListAssignment, c: &Colouring, v: Vertex) -> Option<Colour> {
    l.list(v)
        .iter()
        .copied()
        .find(|&col| col != c.get(v) && !g.neighbours(v).iter().any(|&w| c.get(w) == col))
}

pub fn colouring_status(g: &Graph, l: &ListAssignment, c: &Colouring) -> ColouringStatus {
    let in_lists = (0..g.n()).all(|v| l.contains(v, c.get(v)));
    let no_conflict = g.edges().iter().all(|&(u, v)| c.get(u) != c.get(v));
    let frozen_vertices: Vec<Vertex> = (0..g.n())
        .filter(|&v| is_vertex_frozen(g, l, c, v))
        .collect();
    let is_frozen = frozen_vertices.len() == g.n();
    ColouringStatus {
        proper: in_lists && no_conflict,
        frozen_vertices,
        is_frozen,
    }
}

/// Applies one step, validating it; rejected steps leave no observable state.
pub fn apply_step(
    g: &Graph,
    l: &ListAssignment,
    c: &Colouring,
    s: RecolourStep,
) -> Result<Colouring> {
    if s.vertex >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: s.vertex,
            n: g.n(),
        });
    }
    if !l.contains(s.vertex, s.new_colour) {
        return Err(Error::ColourNotInList {
            vertex: s.vertex,
            colour: s.new_colour,
        });
    }
    if s.new_colour == c.get(s.vertex) {
        return Err(Error::NoOpStep { vertex: s.vertex });
    }
    if let Some(&nb) = g
        .neighbours(s.vertex)
        .iter()
        .find(|&&w| c.get(w) == s.new_colour)
    {
        return Err(Error::ColourOnNeighbour {
            vertex: s.vertex,
            colour: s.new_colour,
            neighbour: nb,
        });
    }
    let mut next = c.clone();
    next.set(s.vertex, s.new_colour);
    Ok(next)
}

/// Result of `verify_plan`; failure is encoded, not raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub end: Colouring,
    pub failing_index: Option<usize>,
}

pub fn verify_plan(
    g: &Graph,
    l: &ListAssignment,
    start: &Colouring,
    plan: &RecolourPlan,
) -> VerifyOutcome {
    let mut cur = start.clone();
    for (i, &s) in plan.steps.iter().enumerate() {
        match apply_step(g, l, &cur, s) {
            Ok(next) => cur = next,
            Err(_) => {
                return VerifyOutcome {
                    ok: false,
                    end: cur,
                    failing_index: Some(i),
                }
            }
        }
    }
    VerifyOutcome {
        ok: true,
        end: cur,
        failing_index: None,
    }
}

/// Restriction of an instance onto `G[W]`: lists lose the colours that the
/// ambient colouring uses on outside neighbours.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub colouring: Colouring,
    /// New id `i` corresponds to original vertex `map[i]` (order-preserving).
    pub map: Vec<Vertex>,
}

pub fn restrict(g: &Graph, l: &ListAssignment, c: &Colouring, w: &[Vertex]) -> Result<Restriction> {
    if w.is_empty() {
        return Err(Error::precondition("restriction onto an empty vertex set"));
    }
    let (graph, map) = g.induced_subgraph(w)?;
    let in_w = {
        let mut flags = vec![false; g.n()];
        for &v in &map {
            flags[v] = true;
        }
        flags
    };
    let mut lists = Vec::with_capacity(map.len());
    for &v in &map {
        let list: Vec<Colour> = l
            .list(v)
            .iter()
            .copied()
            .filter(|&col| {
                !g.neighbours(v)
                    .iter()
                    .any(|&u| !in_w[u] && c.get(u) == col)
            })
            .collect();
        if list.is_empty() {
            return Err(Error::precondition(format!(
                "restriction empties the list of vertex {v}"
            )));
        }
        lists.push(list);
    }
    let colouring = Colouring::new(map.iter().map(|&v| c.get(v)).collect());
    Ok(Restriction {
        graph,
        lists: ListAssignment::new(lists)?,
        colouring,
        map,
    })
}

/// Internal simulator: applies validated steps to a working colouring while
/// recording them.
pub(crate) struct Sim<'a> {
    pub g: &'a Graph,
    pub l: &'a ListAssignment,
    pub c: Colouring,
    pub steps: Vec<RecolourStep>,
}

impl<'a> Sim<'a> {
    pub fn new(g: &'a Graph, l: &'a ListAssignment, c: &Colouring) -> Self {
        Sim {
            g,
            l,
            c: c.clone(),
            steps: Vec::new(),
        }
    }

    pub fn recolour(&mut self, v: Vertex, col: Colour) -> Result<()> {
        let step = RecolourStep {
            vertex: v,
            new_colour: col,
        };
        self.c = apply_step(self.g, self.l, &self.c, step)?;
        self.steps.push(step);
        Ok(())
    }

    /// Recolours `v` with the least available colour; `v` must be unfrozen.
    pub fn recolour_least(&mut self, v: Vertex) -> Result<Colour> {
        let col = free_colour(self.g, self.l, &self.c, v)
            .ok_or_else(|| Error::precondition(format!("vertex {v} is frozen")))?;
        self.recolour(v, col)?;
        Ok(col)
    }

    pub fn unfrozen(&self, v: Vertex) -> bool {
        !is_vertex_frozen(self.g, self.l, &self.c, v)
    }

    pub fn into_plan(self) -> (RecolourPlan, Colouring) {
        (RecolourPlan { steps: self.steps }, self.c)
    }
}

fn validate_path(g: &Graph, path: &[Vertex]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::precondition("empty path"));
    }
    for pair in path.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::precondition(format!(
                "path step {}-{} is not an edge",
                pair[0], pair[1]
            )));
        }
    }
    let dist = g.bfs_distances(path[0]);
    if dist[*path.last().unwrap()] + 1 != path.len() {
        return Err(Error::precondition("path is not a shortest path"));
    }
    Ok(())
}

/// Pushes unfrozenness from `path[0]` to the far endpoint of the path.
///
/// Precondition: `path` is a shortest path and its start is unfrozen. The
/// returned plan has at most `len(path) - 1` steps, touches only
/// `path \ {last}`, and leaves the far endpoint unfrozen. If the start has
/// list surplus >= 2 it also stays unfrozen.
pub fn push_unfreeze(
    g: &Graph,
    l: &ListAssignment,
    c: &Colouring,
    path: &[Vertex],
) -> Result<RecolourPlan> {
    validate_path(g, path)?;
    let mut sim = Sim::new(g, l, c);
    if !sim.unfrozen(path[0]) {
        return Err(Error::precondition(format!(
            "path start {} is frozen",
            path[0]
        )));
    }
    let d = path.len() - 1;
    push_unfreeze_sim(&mut sim, path, d)?;
    Ok(sim.into_plan().0)
}

/// Core push loop on a simulator; at most `d` recolourings, none at the
/// final path vertex.
pub(crate) fn push_unfreeze_sim(sim: &mut Sim, path: &[Vertex], d: usize) -> Result<()> {
    for _ in 0..=d {
        let i = (0..=d)
            .rev()
            .find(|&i| sim.unfrozen(path[i]))
            .ok_or_else(|| Error::precondition("no unfrozen vertex on path"))?;
        if i == d {
            return Ok(());
        }
        sim.recolour_least(path[i])?;
    }
    Err(Error::precondition(
        "push did not converge within the path length",
    ))
}

/// Result of `clear_bad_neighbours`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClearOutcome {
    pub plan: RecolourPlan,
    /// True iff the target vertex ends up with the target colour.
    pub achieved: bool,
    /// On failure: the unique frozen neighbour still holding the target
    /// colour (with the target vertex frozen as well).
    pub blocker: Option<Vertex>,
}

/// Tries to recolour `w` with `target` by first recolouring the neighbours
/// of `w` that use `target`. Fails only in the unique-frozen-bad-neighbour
/// configuration. The plan has at most `deg(w) + 2` steps, with equality
/// only when achieved.
pub fn clear_bad_neighbours(
    g: &Graph,
    l: &ListAssignment,
    c: &Colouring,
    w: Vertex,
    target: Colour,
) -> Result<ClearOutcome> {
    if !l.contains(w, target) {
        return Err(Error::ColourNotInList {
            vertex: w,
            colour: target,
        });
    }
    let mut sim = Sim::new(g, l, c);
    let achieved = clear_bad_neighbours_sim(&mut sim, w, target)?;
    let blocker = if achieved {
        None
    } else {
        sim.g
            .neighbours(w)
            .iter()
            .copied()
            .find(|&x| sim.c.get(x) == target)
    };
    Ok(ClearOutcome {
        plan: sim.into_plan().0,
        achieved,
        blocker,
    })
}

pub(crate) fn clear_bad_neighbours_sim(sim: &mut Sim, w: Vertex, target: Colour) -> Result<bool> {
    if sim.c.get(w) == target {
        return Ok(true);
    }
    // Recolour unfrozen bad neighbours, ascending, rechecking as freezing
    // statuses evolve; each bad neighbour is recoloured at most once.
    loop {
        let next = sim
            .g
            .neighbours(w)
            .iter()
            .copied()
            .find(|&x| sim.c.get(x) == target && sim.unfrozen(x));
        match next {
            Some(x) => {
                // The new colour differs from the current colour (target),
                // so x stops being a bad neighbour.
                sim.recolour_least(x)?;
            }
            None => break,
        }
    }
    let frozen_bad: Vec<Vertex> = sim
        .g
        .neighbours(w)
        .iter()
        .copied()
        .filter(|&x| sim.c.get(x) == target)
        .collect();
    if frozen_bad.is_empty() {
        sim.recolour(w, target)?;
        return Ok(true);
    }
    if sim.unfrozen(w) {
        // An intermediate recolour of w releases its colour to every frozen
        // bad neighbour; target is on N(w), so it is never chosen here.
        sim.recolour_least(w)?;
        for x in frozen_bad {
            sim.recolour_least(x)?;
        }
        sim.recolour(w, target)?;
        return Ok(true);
    }
    // w frozen with at least one frozen bad neighbour: the lemma guarantees
    // the bad neighbour is unique here.
    if frozen_bad.len() != 1 {
        return Err(Error::precondition(format!(
            "unexpected: frozen vertex {w} with {} frozen bad neighbours",
            frozen_bad.len()
        )));
    }
    Ok(false)
}

/// Recolours so that `w` uses `target` while keeping `v` unfrozen, where
/// `v` has list surplus >= 2. Touches only the shortest `v,w`-path and the
/// neighbours of `w` using `target`; at most `deg(w) + 2 + 2|V(P)|` steps.
pub fn fix_leaf(
    g: &Graph,
    l: &ListAssignment,
    c: &Colouring,
    v: Vertex,
    w: Vertex,
    target: Colour,
) -> Result<RecolourPlan> {
    let surplus = l.list(v).len() as i64 - g.degree(v) as i64;
    if surplus < 2 {
        return Err(Error::precondition(format!(
            "vertex {v} has surplus {surplus} < 2"
        )));
    }
    if !l.contains(w, target) {
        return Err(Error::ColourNotInList {
            vertex: w,
            colour: target,
        });
    }
    let mut sim = Sim::new(g, l, c);
    fix_leaf_sim(&mut sim, v, w, target)?;
    Ok(sim.into_plan().0)
}

pub(crate) fn fix_leaf_sim(sim: &mut Sim, v: Vertex, w: Vertex, target: Colour) -> Result<()> {
    if clear_bad_neighbours_sim(sim, w, target)? {
        return Ok(());
    }
    // Unique frozen bad neighbour x, with w frozen too.
    let x = sim
        .g
        .neighbours(w)
        .iter()
        .copied()
        .find(|&y| sim.c.get(y) == target)
        .expect("failed clear leaves a bad neighbour");
    let path = crate::graph::shortest_path(sim.g, v, w)?;
    let d = path.len() - 1;
    debug_assert!(d >= 1, "w frozen implies w != v");

    // Sub-case 1: x is (or can replace) the penultimate path vertex. Push
    // unfrozenness up to x, move x off the target colour, then colour w.
    let mut prefix: Option<Vec<Vertex>> = None;
    if path[d - 1] == x {
        prefix = Some(path[..d].to_vec());
    } else if d >= 2 && sim.g.has_edge(path[d - 2], x) {
        let mut alt = path[..d - 1].to_vec();
        alt.push(x);
        prefix = Some(alt);
    }
    if let Some(pref) = prefix {
        push_unfreeze_sim(sim, &pref, pref.len() - 1)?;
        sim.recolour_least(x)?;
        sim.recolour(w, target)?;
        return Ok(());
    }

    let w_prime = path[d - 1];
    if sim.g.has_edge(w_prime, x) {
        // Sub-case 2: x hangs off the penultimate vertex. Unfreeze and
        // recolour w'; this releases its colour to x (and the new colour of
        // w' avoids target, which sits on its neighbour x).
        let pref = &path[..d];
        push_unfreeze_sim(sim, pref, pref.len() - 1)?;
        sim.recolour_least(w_prime)?;
        sim.recolour_least(x)?;
        sim.recolour(w, target)?;
        return Ok(());
    }

    // Sub-case 3: x has no neighbour on the path other than w. Unfreeze w
    // itself, move w aside, then move x off the target colour.
    push_unfreeze_sim(sim, &path, d)?;
    sim.recolour_least(w)?;
    sim.recolour_least(x)?;
    if !sim.g.neighbours(w).iter().any(|&y| sim.c.get(y) == target) {
        sim.recolour(w, target)?;
        return Ok(());
    }
    // target can only have moved onto w', the path neighbour of w.
    debug_assert_eq!(sim.c.get(w_prime), target);
    if !sim.unfrozen(w_prime) {
        let pref = &path[..d];
        push_unfreeze_sim(sim, pref, pref.len() - 1)?;
    }
    sim.recolour_least(w_prime)?;
    sim.recolour(w, target)?;
    Ok(())
}
