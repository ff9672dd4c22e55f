//! Graph representation, structural decompositions, list-assignment
//! validation, and instance generators.
//!
//! Vertices are dense integers `0..n`; colours are arbitrary non-negative
//! integers. All neighbour lists are kept sorted ascending so that every
//! iteration order downstream is deterministic.

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Colour = u32;

/// Simple undirected graph over dense integer vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Normalized edge set: pairs `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// BFS distances from `v`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        !self.bfs_distances(0).contains(&usize::MAX)
    }

    /// Representatives (least vertex) of every connected component, ascending.
    pub fn component_representatives(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut reps = Vec::new();
        for v in 0..self.n {
            if seen[v] {
                continue;
            }
            reps.push(v);
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reps
    }

    /// Induced subgraph on `keep` (any order; deduplicated), together with
    /// the sorted list of original ids: new id `i` corresponds to `map[i]`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut map: Vec<Vertex> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        if let Some(&v) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut inv = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            inv[v] = i;
        }
        let edges: Vec<(Vertex, Vertex)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| inv[u] != usize::MAX && inv[v] != usize::MAX)
            .map(|&(u, v)| (inv[u], inv[v]))
            .collect();
        let g = build_graph(map.len(), &edges)?;
        Ok((g, map))
    }

    /// The graph with the listed vertices removed, plus the id map.
    pub fn delete_vertices(&self, remove: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let keep: Vec<Vertex> = (0..self.n).filter(|v| !remove.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Fourth power: edge between distinct vertices at distance at most 4.
    pub fn fourth_power(&self) -> Graph {
        let mut edges = Vec::new();
        for v in 0..self.n {
            let dist = self.bfs_distances(v);
            for w in v + 1..self.n {
                if dist[w] <= 4 {
                    edges.push((v, w));
                }
            }
        }
        build_graph(self.n, &edges).expect("power graph edges are in range")
    }
}

/// Builds a normalized graph: validates vertex ranges, rejects self-loops,
/// deduplicates parallel edges, and sorts adjacency lists.
pub fn build_graph(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Graph> {
    let mut edges = Vec::with_capacity(edge_list.len());
    for &(u, v) in edge_list {
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph { n, edges, adj })
}

/// Per-vertex colour lists (sorted ascending, deduplicated, non-empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Colour>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Colour>>) -> Result<Self> {
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(Error::precondition(format!("empty list at vertex {v}")));
            }
        }
        Ok(ListAssignment { lists })
    }

    pub fn n(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, v: Vertex) -> &[Colour] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Colour>] {
        &self.lists
    }

    pub fn contains(&self, v: Vertex, c: Colour) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    /// Union of all lists, sorted ascending.
    pub fn colour_universe(&self) -> Vec<Colour> {
        let mut all: Vec<Colour> = self.lists.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// Total map vertex -> colour. Properness is checked, never assumed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    colours: Vec<Colour>,
}

impl Colouring {
    pub fn new(colours: Vec<Colour>) -> Self {
        Colouring { colours }
    }

    pub fn n(&self) -> usize {
        self.colours.len()
    }

    pub fn get(&self, v: Vertex) -> Colour {
        self.colours[v]
    }

    pub fn set(&mut self, v: Vertex, c: Colour) {
        self.colours[v] = c;
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }
}

/// Surplus report for a (graph, list-assignment) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurplusReport {
    /// `|L(v)| - deg(v)` per vertex.
    pub surplus: Vec<i64>,
    /// True iff every vertex has surplus >= 1.
    pub is_one_plus: bool,
    /// Vertices with surplus >= 2, ascending.
    pub surplus_ge2: Vec<Vertex>,
    /// Vertices with surplus <= 0, ascending.
    pub nonpositive: Vec<Vertex>,
}

pub fn check_list_surplus(g: &Graph, l: &ListAssignment) -> SurplusReport {
    let surplus: Vec<i64> = (0..g.n())
        .map(|v| l.list(v).len() as i64 - g.degree(v) as i64)
        .collect();
    SurplusReport {
        is_one_plus: surplus.iter().all(|&s| s >= 1),
        surplus_ge2: (0..g.n()).filter(|&v| surplus[v] >= 2).collect(),
        nonpositive: (0..g.n()).filter(|&v| surplus[v] <= 0).collect(),
        surplus,
    }
}

/// Shortest `v,w`-path; among all shortest paths, the lexicographically
/// least vertex sequence.
pub fn shortest_path(g: &Graph, v: Vertex, w: Vertex) -> Result<Vec<Vertex>> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if w >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
    }
    let dist_w = g.bfs_distances(w);
    if dist_w[v] == usize::MAX {
        return Err(Error::Unreachable { v, w });
    }
    // Walk from v towards w, always taking the least neighbour that makes
    // progress; this yields the lexicographically least shortest path.
    let mut path = vec![v];
    let mut cur = v;
    while cur != w {
        let next = *g
            .neighbours(cur)
            .iter()
            .find(|&&u| dist_w[u] + 1 == dist_w[cur])
            .expect("a shortest path always has a descending neighbour");
        path.push(next);
        cur = next;
    }
    Ok(path)
}

/// Block-cut decomposition of a connected graph.
///
/// Blocks are maximal 2-connected subgraphs or bridge edges; isolated
/// vertices yield no blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    /// Vertex sets, each sorted; blocks ordered lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    /// Cut vertices, ascending.
    pub cut_vertices: Vec<Vertex>,
    /// Incidence pairs `(block index, cut vertex)`.
    pub block_adjacency: Vec<(usize, Vertex)>,
}

impl BlockTree {
    /// Indices of leaf blocks (blocks containing at most one cut vertex).
    pub fn leaf_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| {
                self.block_adjacency
                    .iter()
                    .filter(|&&(bi, _)| bi == b)
                    .count()
                    <= 1
            })
            .collect()
    }

    /// The unique cut vertex of a leaf block, if the block has one.
    pub fn leaf_cut_vertex(&self, block: usize) -> Option<Vertex> {
        self.block_adjacency
            .iter()
            .find(|&&(bi, _)| bi == block)
            .map(|&(_, v)| v)
    }
}

/// Biconnected-components decomposition (iterative Tarjan with an edge
/// stack). Requires `g` connected.
pub fn block_decomposition(g: &Graph) -> Result<BlockTree> {
    let reps = g.component_representatives();
    if reps.len() > 1 {
        return Err(Error::Disconnected {
            a: reps[0],
            b: reps[1],
        });
    }
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut raw_blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut timer = 0usize;

    // Explicit DFS stack: (vertex, index into its adjacency list).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while !stack.is_empty() {
            let (u, idx) = *stack.last().unwrap();
            if idx < g.neighbours(u).len() {
                stack.last_mut().unwrap().1 += 1;
                let w = g.neighbours(u)[idx];
                if disc[w] == usize::MAX {
                    parent[w] = u;
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, 0));
                } else if w != parent[u] && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        // Pop the block delimited by tree edge (p, u).
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (p, u) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        raw_blocks.push(verts);
                    }
                }
            }
        }
    }

    let mut blocks = raw_blocks;
    blocks.sort();
    let mut in_blocks = vec![0usize; n];
    for block in &blocks {
        for &v in block {
            in_blocks[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| in_blocks[v] >= 2).collect();
    let mut block_adjacency = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        for &v in block {
            if in_blocks[v] >= 2 {
                block_adjacency.push((bi, v));
            }
        }
    }
    Ok(BlockTree {
        blocks,
        cut_vertices,
        block_adjacency,
    })
}

/// `K_n` with lists `{1..n}` plus a pendant vertex `n` attached to vertex 0
/// with list `{n+1, .., n+p}`.
pub fn gen_shatter_instance(n: usize, p: usize) -> Result<(Graph, ListAssignment)> {
    if n < 3 {
        return Err(Error::precondition(format!("clique size {n} < 3")));
    }
    if p < 2 {
        return Err(Error::precondition(format!("pendant list size {p} < 2")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    edges.push((0, n));
    let g = build_graph(n + 1, &edges)?;
    let clique_list: Vec<Colour> = (1..=n as Colour).collect();
    let mut lists = vec![clique_list; n];
    lists.push((n as Colour + 1..=(n + p) as Colour).collect());
    Ok((g, ListAssignment::new(lists)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build_graph(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        build_graph(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        build_graph(n, &edges).unwrap()
    }

    #[test]
    fn build_c5() {
        let g = cycle(5);
        assert_eq!(g.n(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn build_k4() {
        let g = complete(4);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(g.edges().len(), 6);
        assert!(g.is_complete());
    }

    #[test]
    fn build_dedup_and_isolated() {
        let g = build_graph(3, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn build_rejections() {
        assert_eq!(
            build_graph(2, &[(0, 0)]),
            Err(Error::SelfLoop { vertex: 0 })
        );
        assert_eq!(
            build_graph(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        for g in [cycle(7), complete(5), path(4)] {
            let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            assert_eq!(total, 2 * g.edges().len());
        }
    }

    #[test]
    fn shortest_path_c5() {
        assert_eq!(shortest_path(&cycle(5), 0, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn shortest_path_lex_tiebreak_c4() {
        assert_eq!(shortest_path(&cycle(4), 0, 2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn shortest_path_adjacent_k4() {
        assert_eq!(shortest_path(&complete(4), 1, 3).unwrap(), vec![1, 3]);
    }

    #[test]
    fn shortest_path_matches_bfs_distance() {
        for g in [cycle(9), path(6), complete(5)] {
            for v in 0..g.n() {
                let dist = g.bfs_distances(v);
                for w in 0..g.n() {
                    let p = shortest_path(&g, v, w).unwrap();
                    assert_eq!(p.len() - 1, dist[w]);
                    assert!(p.windows(2).all(|e| g.has_edge(e[0], e[1])));
                }
            }
        }
    }

    #[test]
    fn shortest_path_unreachable() {
        let g = build_graph(3, &[(0, 1)]).unwrap();
        assert_eq!(shortest_path(&g, 0, 2), Err(Error::Unreachable { v: 0, w: 2 }));
    }

    #[test]
    fn blocks_c5_single() {
        let bt = block_decomposition(&cycle(5)).unwrap();
        assert_eq!(bt.blocks, vec![vec![0, 1, 2, 3, 4]]);
        assert!(bt.cut_vertices.is_empty());
    }

    #[test]
    fn blocks_p4_three_edges() {
        let bt = block_decomposition(&path(4)).unwrap();
        assert_eq!(bt.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(bt.cut_vertices, vec![1, 2]);
    }

    #[test]
    fn blocks_paw_pendant() {
        // Triangle 0-1-2 plus pendant 3 attached at 0.
        let g = build_graph(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let bt = block_decomposition(&g).unwrap();
        assert_eq!(bt.blocks, vec![vec![0, 1, 2], vec![0, 3]]);
        assert_eq!(bt.cut_vertices, vec![0]);
    }

    #[test]
    fn blocks_cover_each_edge_once() {
        let g = build_graph(
            7,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (4, 6)],
        )
        .unwrap();
        let bt = block_decomposition(&g).unwrap();
        let mut covered = Vec::new();
        for block in &bt.blocks {
            let (sub, map) = g.induced_subgraph(block).unwrap();
            for &(u, v) in sub.edges() {
                covered.push((map[u], map[v]));
            }
        }
        covered.sort_unstable();
        assert_eq!(covered, g.edges());
    }

    #[test]
    fn blocks_disconnected_rejected() {
        let g = build_graph(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            block_decomposition(&g),
            Err(Error::Disconnected { a: 0, b: 2 })
        );
    }

    #[test]
    fn surplus_c5_uniform() {
        let g = cycle(5);
        let l = ListAssignment::new(vec![vec![1, 2, 3]; 5]).unwrap();
        let report = check_list_surplus(&g, &l);
        assert!(report.surplus.iter().all(|&s| s == 1));
        assert!(report.is_one_plus);
        assert!(report.surplus_ge2.is_empty());
    }

    #[test]
    fn surplus_k3_one_bigger_list() {
        let g = complete(3);
        let l =
            ListAssignment::new(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3, 4]]).unwrap();
        let report = check_list_surplus(&g, &l);
        assert_eq!(report.surplus, vec![1, 1, 2]);
        assert_eq!(report.surplus_ge2, vec![2]);
    }

    #[test]
    fn surplus_shatter_attachment_is_zero() {
        let (g, l) = gen_shatter_instance(4, 2).unwrap();
        let report = check_list_surplus(&g, &l);
        assert_eq!(report.surplus[0], 0); // attachment vertex of the pendant
        assert_eq!(report.surplus[4], 1); // pendant x itself
        assert_eq!(report.nonpositive, vec![0]);
    }

    #[test]
    fn shatter_rejects_small_parameters() {
        assert!(gen_shatter_instance(2, 2).is_err());
        assert!(gen_shatter_instance(3, 1).is_err());
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let g = cycle(5);
        let (sub, map) = g.induced_subgraph(&[1, 2, 4]).unwrap();
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(sub.edges(), &[(0, 1)]); // only edge 1-2 survives
    }

    #[test]
    fn block_tree_relabelling_invariance() {
        // Relabelling vertices yields an isomorphic block structure
        // (same multiset of block sizes and cut-vertex count).
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (3, 5)]).unwrap();
        let perm = [5, 3, 0, 1, 4, 2];
        let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let h = build_graph(6, &edges).unwrap();
        let bt_g = block_decomposition(&g).unwrap();
        let bt_h = block_decomposition(&h).unwrap();
        let mut sizes_g: Vec<_> = bt_g.blocks.iter().map(Vec::len).collect();
        let mut sizes_h: Vec<_> = bt_h.blocks.iter().map(Vec::len).collect();
        sizes_g.sort_unstable();
        sizes_h.sort_unstable();
        assert_eq!(sizes_g, sizes_h);
        assert_eq!(bt_g.cut_vertices.len(), bt_h.cut_vertices.len());
    }
}
