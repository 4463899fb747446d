//! Breadth-first reachability and Dijkstra shortest paths over the enabled
//! edges of a symbolic graph.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::SymbolicGraph;

/// Result of a single-source search: visited nodes and the tree edge used
/// to first reach each one.
#[derive(Clone, Debug)]
pub struct SearchTree {
    pub visited: Vec<bool>,
    pub parent: Vec<Option<usize>>,
    pub dist: Vec<u64>,
}

impl SearchTree {
    fn new(n: usize) -> SearchTree {
        SearchTree {
            visited: vec![false; n],
            parent: vec![None; n],
            dist: vec![u64::MAX; n],
        }
    }

    /// Tree edges from the source to `target`, in path order.
    pub fn path_to(&self, g: &SymbolicGraph, target: usize) -> Option<Vec<usize>> {
        if !self.visited[target] {
            return None;
        }
        let mut path = Vec::new();
        let mut node = target;
        while let Some(e) = self.parent[node] {
            path.push(e);
            node = g.head_from(e, node);
        }
        path.reverse();
        Some(path)
    }
}

/// BFS from `source`, expanding lower node ids first. Stops early once
/// `stop_at` is reached.
pub fn bfs(
    g: &SymbolicGraph,
    enabled: &[bool],
    source: usize,
    stop_at: Option<usize>,
) -> SearchTree {
    let mut tree = SearchTree::new(g.num_nodes());
    let mut queue = VecDeque::new();
    tree.visited[source] = true;
    tree.dist[source] = 0;
    queue.push_back(source);
    while let Some(node) = queue.pop_front() {
        if Some(node) == stop_at {
            break;
        }
        for &e in g.out_edges(node) {
            if !enabled[e] {
                continue;
            }
            let next = g.head_from(e, node);
            if !tree.visited[next] {
                tree.visited[next] = true;
                tree.parent[next] = Some(e);
                tree.dist[next] = tree.dist[node] + 1;
                queue.push_back(next);
            }
        }
    }
    tree
}

pub fn reaches(g: &SymbolicGraph, enabled: &[bool], u: usize, v: usize) -> bool {
    bfs(g, enabled, u, Some(v)).visited[v]
}

/// Dijkstra from `source`; among equal tentative distances the lower node
/// id is settled first. Nodes farther than `limit` are not settled.
pub fn dijkstra(
    g: &SymbolicGraph,
    enabled: &[bool],
    source: usize,
    stop_at: Option<usize>,
    limit: u64,
) -> SearchTree {
    let mut tree = SearchTree::new(g.num_nodes());
    let mut heap = BinaryHeap::new();
    tree.dist[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, node))) = heap.pop() {
        if tree.visited[node] || d > tree.dist[node] {
            continue;
        }
        if d > limit {
            break;
        }
        tree.visited[node] = true;
        if Some(node) == stop_at {
            break;
        }
        for &e in g.out_edges(node) {
            if !enabled[e] {
                continue;
            }
            let next = g.head_from(e, node);
            if tree.visited[next] {
                continue;
            }
            let nd = d.saturating_add(g.edge(e).weight);
            if nd < tree.dist[next] {
                tree.dist[next] = nd;
                tree.parent[next] = Some(e);
                heap.push(Reverse((nd, next)));
            }
        }
    }
    tree
}

/// Shortest-path distance from `u` to `v`, if `v` is reachable.
pub fn distance(g: &SymbolicGraph, enabled: &[bool], u: usize, v: usize) -> Option<u64> {
    let tree = dijkstra(g, enabled, u, Some(v), u64::MAX);
    tree.visited[v].then(|| tree.dist[v])
}

/// Disabled edges leaving the node set `visited`. Every path out of a
/// closed-under-enabled-edges set must use one of them.
pub fn disabled_frontier(g: &SymbolicGraph, enabled: &[bool], visited: &[bool]) -> Vec<usize> {
    let mut cut = Vec::new();
    for (node, _) in visited.iter().enumerate().filter(|(_, &v)| v) {
        for &e in g.out_edges(node) {
            if !enabled[e] && g.edge(e).u != g.edge(e).v {
                cut.push(e);
            }
        }
    }
    cut.sort_unstable();
    cut.dedup();
    cut
}
