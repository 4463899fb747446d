//! Reference evaluators built on different algorithms from the theory
//! solvers, used as ground truth.

use crate::frontend::{GraphDecl, TaskDecl};
use crate::graph::{GraphPredicate, MstBound};

fn neighbours<'a>(
    g: &'a GraphDecl,
    enabled: &'a [bool],
    x: usize,
) -> impl Iterator<Item = usize> + 'a {
    let directed = g.directed;
    g.edges.iter().enumerate().filter_map(move |(i, e)| {
        if !enabled[i] {
            None
        } else if e.u == x {
            Some(e.v)
        } else if !directed && e.v == x {
            Some(e.u)
        } else {
            None
        }
    })
}

/// Iterative depth-first reachability.
pub fn dfs_reach(g: &GraphDecl, enabled: &[bool], from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.nodes];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for y in neighbours(g, enabled, x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    false
}

/// Bellman–Ford single-source distances.
pub fn bellman_ford(g: &GraphDecl, enabled: &[bool], from: usize) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; g.nodes];
    dist[from] = Some(0);
    for _ in 1..g.nodes.max(1) {
        let mut changed = false;
        for (i, e) in g.edges.iter().enumerate() {
            if !enabled[i] {
                continue;
            }
            let Some(du) = dist[e.u] else { continue };
            let cand = du + e.weight;
            if dist[e.v].is_none_or(|dv| cand < dv) {
                dist[e.v] = Some(cand);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Number of connected components, counting isolated nodes, by DFS labeling.
pub fn dfs_components(g: &GraphDecl, enabled: &[bool]) -> usize {
    let mut label = vec![usize::MAX; g.nodes];
    let mut count = 0;
    for s in 0..g.nodes {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for (i, e) in g.edges.iter().enumerate() {
                if !enabled[i] {
                    continue;
                }
                let y = if e.u == x {
                    e.v
                } else if e.v == x {
                    e.u
                } else {
                    continue;
                };
                if label[y] == usize::MAX {
                    label[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    count
}

/// Ford–Fulkerson with depth-first augmenting paths over a residual
/// capacity matrix. `None` when source and sink coincide.
pub fn ford_fulkerson(g: &GraphDecl, enabled: &[bool], s: usize, t: usize) -> Option<u64> {
    if s == t {
        return None;
    }
    let n = g.nodes;
    let mut cap = vec![vec![0u64; n]; n];
    for (i, e) in g.edges.iter().enumerate() {
        if enabled[i] && e.u != e.v {
            cap[e.u][e.v] += e.weight;
        }
    }
    let mut total = 0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            if x == t {
                break;
            }
            for y in 0..n {
                if cap[x][y] > 0 && prev[y] == usize::MAX {
                    prev[y] = x;
                    stack.push(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            return Some(total);
        }
        let mut push = u64::MAX;
        let mut y = t;
        while y != s {
            push = push.min(cap[prev[y]][y]);
            y = prev[y];
        }
        let mut y = t;
        while y != s {
            cap[prev[y]][y] -= push;
            cap[y][prev[y]] += push;
            y = prev[y];
        }
        total += push;
    }
}

/// Prim's algorithm grown from the lowest unreached node of each tree,
/// choosing the minimum crossing edge by (weight, index). Returns the
/// forest membership of each edge, its weight and whether it spans a
/// single tree.
pub fn prim(g: &GraphDecl, enabled: &[bool]) -> (Vec<bool>, u64, bool) {
    let mut in_tree = vec![false; g.edges.len()];
    let mut reached = vec![false; g.nodes];
    let mut weight = 0u64;
    let mut trees = 0;
    for s in 0..g.nodes {
        if reached[s] {
            continue;
        }
        trees += 1;
        reached[s] = true;
        loop {
            let best = g
                .edges
                .iter()
                .enumerate()
                .filter(|&(i, e)| enabled[i] && reached[e.u] != reached[e.v])
                .min_by_key(|&(i, e)| (e.weight, i));
            let Some((i, e)) = best else { break };
            in_tree[i] = true;
            weight += e.weight;
            reached[e.u] = true;
            reached[e.v] = true;
        }
    }
    (in_tree, weight, trees <= 1)
}

/// Processor-demand criterion: a task set is preemptively schedulable on
/// one processor iff every window [a, d] can hold the tasks that arrive
/// in it and are due by its end.
pub fn demand_feasible(tasks: &[&TaskDecl]) -> bool {
    for a in tasks.iter().map(|t| t.arrival) {
        for d in tasks.iter().map(|t| t.deadline) {
            let demand: u64 = tasks
                .iter()
                .filter(|t| t.arrival >= a && t.deadline <= d)
                .map(|t| t.length)
                .sum();
            if demand > 0 && (d < a || demand > d - a) {
                return false;
            }
        }
    }
    true
}

pub fn graph_predicate_holds(g: &GraphDecl, pred: &GraphPredicate, enabled: &[bool]) -> bool {
    match *pred {
        GraphPredicate::Reach { from, to } => dfs_reach(g, enabled, from, to),
        GraphPredicate::DistanceLeq { from, to, bound } => {
            bellman_ford(g, enabled, from)[to].is_some_and(|d| d <= bound)
        }
        GraphPredicate::ComponentsLeq { bound } => dfs_components(g, enabled) as u64 <= bound,
        GraphPredicate::MaxFlowGeq {
            source,
            sink,
            bound,
        } => ford_fulkerson(g, enabled, source, sink).is_none_or(|f| f >= bound),
        GraphPredicate::MstWeightLeq { bound } => {
            let (_, w, connected) = prim(g, enabled);
            connected
                && match bound {
                    MstBound::Finite(c) => w <= c,
                    MstBound::Infinite => true,
                }
        }
        GraphPredicate::MstEdge { edge } => !enabled[edge] || prim(g, enabled).0[edge],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::EdgeDecl;

    fn g(directed: bool, nodes: usize, edges: &[(usize, usize, u64)]) -> GraphDecl {
        GraphDecl {
            id: 0,
            directed,
            nodes,
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v, weight))| EdgeDecl {
                    u,
                    v,
                    var: i as u32 + 1,
                    weight,
                })
                .collect(),
            predicates: Vec::new(),
        }
    }

    #[test]
    fn reference_values() {
        let tri = g(true, 3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]);
        assert_eq!(bellman_ford(&tri, &[true; 3], 0)[2], Some(2));
        assert!(dfs_reach(&tri, &[false, true, true], 0, 2));
        let two = g(true, 4, &[(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]);
        assert_eq!(ford_fulkerson(&two, &[true; 4], 0, 3), Some(2));
        let ut = g(false, 3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert_eq!(prim(&ut, &[true; 3]), (vec![true, true, false], 3, true));
        assert_eq!(dfs_components(&ut, &[false; 3]), 3);
    }

    #[test]
    fn demand_examples() {
        let t = |arrival, length, deadline| TaskDecl {
            arrival,
            length,
            deadline,
            var: 1,
        };
        assert!(demand_feasible(&[&t(0, 2, 2)]));
        assert!(!demand_feasible(&[&t(0, 2, 2), &t(0, 2, 3)]));
        assert!(!demand_feasible(&[&t(3, 1, 2)]));
    }
}
