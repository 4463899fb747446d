//! Connected components and minimum spanning forests of undirected graphs.

use super::unionfind::UnionFind;
use super::SymbolicGraph;

#[derive(Clone, Debug)]
pub struct Components {
    pub count: usize,
    /// Representative of each node's component.
    pub label: Vec<usize>,
    /// A spanning forest, chosen greedily in edge id order.
    pub forest: Vec<usize>,
}

/// Components of the enabled subgraph; isolated nodes are components too.
pub fn components(g: &SymbolicGraph, enabled: &[bool]) -> Components {
    let mut uf = UnionFind::new(g.num_nodes());
    let mut forest = Vec::new();
    for e in g.edges() {
        if enabled[e.id] && uf.union(e.u, e.v) {
            forest.push(e.id);
        }
    }
    let label = (0..g.num_nodes()).map(|x| uf.find(x)).collect();
    Components {
        count: uf.sets(),
        label,
        forest,
    }
}

/// Disabled edges whose endpoints carry different labels.
pub fn crossing_disabled(g: &SymbolicGraph, enabled: &[bool], label: &[usize]) -> Vec<usize> {
    g.edges()
        .iter()
        .filter(|e| !enabled[e.id] && label[e.u] != label[e.v])
        .map(|e| e.id)
        .collect()
}

/// The unique minimum spanning forest under the (weight, id) edge order,
/// rooted at the lowest node id of each tree.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    pub in_tree: Vec<bool>,
    pub tree_edges: Vec<usize>,
    /// Total weight, saturating.
    pub weight: u64,
    pub trees: usize,
    pub root: Vec<usize>,
    /// Edge to the parent node, `None` at roots.
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    children: Vec<Vec<usize>>,
}

pub fn kruskal(g: &SymbolicGraph, enabled: &[bool]) -> SpanningForest {
    let n = g.num_nodes();
    let mut uf = UnionFind::new(n);
    let mut in_tree = vec![false; g.num_edges()];
    let mut tree_edges = Vec::new();
    let mut weight = 0u64;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in g.weight_order() {
        let spec = g.edge(e);
        if enabled[e] && uf.union(spec.u, spec.v) {
            in_tree[e] = true;
            tree_edges.push(e);
            weight = weight.saturating_add(spec.weight);
            adj[spec.u].push(e);
            adj[spec.v].push(e);
        }
    }
    let mut root = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut children = vec![Vec::new(); n];
    let mut stack = Vec::new();
    for r in 0..n {
        if root[r] != usize::MAX {
            continue;
        }
        root[r] = r;
        stack.push(r);
        while let Some(x) = stack.pop() {
            for &e in &adj[x] {
                let y = g.head_from(e, x);
                if root[y] == usize::MAX {
                    root[y] = r;
                    parent[y] = Some(e);
                    depth[y] = depth[x] + 1;
                    children[x].push(y);
                    stack.push(y);
                }
            }
        }
    }
    SpanningForest {
        in_tree,
        tree_edges,
        weight,
        trees: uf.sets(),
        root,
        parent,
        depth,
        children,
    }
}

impl SpanningForest {
    pub fn connected(&self) -> bool {
        self.trees <= 1
    }

    pub fn same_tree(&self, a: usize, b: usize) -> bool {
        self.root[a] == self.root[b]
    }

    /// Tree edges on the path between `a` and `b`.
    pub fn path(&self, g: &SymbolicGraph, a: usize, b: usize) -> Option<Vec<usize>> {
        if !self.same_tree(a, b) {
            return None;
        }
        let (mut a, mut b) = (a, b);
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[a] > self.depth[b] {
            let e = self.parent[a].unwrap();
            left.push(e);
            a = g.head_from(e, a);
        }
        while self.depth[b] > self.depth[a] {
            let e = self.parent[b].unwrap();
            right.push(e);
            b = g.head_from(e, b);
        }
        while a != b {
            let ea = self.parent[a].unwrap();
            let eb = self.parent[b].unwrap();
            left.push(ea);
            right.push(eb);
            a = g.head_from(ea, a);
            b = g.head_from(eb, b);
        }
        right.reverse();
        left.extend(right);
        Some(left)
    }

    /// Whether some tree edge between `x` and its ancestor `top` is heavier
    /// (by weight alone) than `w`.
    fn heavier_on_climb(&self, g: &SymbolicGraph, mut x: usize, top: usize, w: u64) -> bool {
        while x != top {
            let e = self.parent[x].unwrap();
            if g.edge(e).weight > w {
                return true;
            }
            x = g.head_from(e, x);
        }
        false
    }

    /// Lowest common ancestors for a batch of node pairs (Tarjan's offline
    /// algorithm). Pairs in different trees get `None`.
    pub fn lca_offline(&self, queries: &[(usize, usize)]) -> Vec<Option<usize>> {
        let n = self.root.len();
        let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (qi, &(a, b)) in queries.iter().enumerate() {
            if self.same_tree(a, b) {
                at[a].push((b, qi));
                at[b].push((a, qi));
            }
        }
        let mut answer = vec![None; queries.len()];
        let mut uf = UnionFind::new(n);
        let mut ancestor: Vec<usize> = (0..n).collect();
        let mut done = vec![false; n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for r in 0..n {
            if self.root[r] != r {
                continue;
            }
            stack.push((r, 0));
            while let Some(top) = stack.last_mut() {
                let (x, i) = *top;
                if i < self.children[x].len() {
                    top.1 += 1;
                    stack.push((self.children[x][i], 0));
                    continue;
                }
                stack.pop();
                done[x] = true;
                for &(y, qi) in &at[x] {
                    if done[y] {
                        answer[qi] = Some(ancestor[uf.find(y)]);
                    }
                }
                if let Some(&(p, _)) = stack.last() {
                    uf.union(p, x);
                    let rep = uf.find(p);
                    ancestor[rep] = p;
                }
            }
        }
        answer
    }

    /// Disabled edges that would lower the forest weight if enabled alone:
    /// those whose tree cycle contains a strictly heavier edge.
    pub fn improving_disabled(&self, g: &SymbolicGraph, enabled: &[bool]) -> Vec<usize> {
        let candidates: Vec<usize> = g
            .edges()
            .iter()
            .filter(|e| !enabled[e.id] && e.u != e.v && self.same_tree(e.u, e.v))
            .map(|e| e.id)
            .collect();
        let queries: Vec<(usize, usize)> = candidates
            .iter()
            .map(|&e| (g.edge(e).u, g.edge(e).v))
            .collect();
        let lcas = self.lca_offline(&queries);
        candidates
            .into_iter()
            .zip(lcas)
            .filter(|&(e, l)| {
                let spec = g.edge(e);
                let l = l.expect("same tree");
                self.heavier_on_climb(g, spec.u, l, spec.weight)
                    || self.heavier_on_climb(g, spec.v, l, spec.weight)
            })
            .map(|(e, _)| e)
            .collect()
    }

    /// The smallest set of disabled edges with exactly one endpoint in a
    /// single tree; keeping them disabled keeps that tree cut off.
    pub fn smallest_tree_cut(&self, g: &SymbolicGraph, enabled: &[bool]) -> Vec<usize> {
        let n = self.root.len();
        let mut cuts: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in g.edges() {
            if !enabled[e.id] && self.root[e.u] != self.root[e.v] {
                cuts[self.root[e.u]].push(e.id);
                cuts[self.root[e.v]].push(e.id);
            }
        }
        (0..n)
            .filter(|&r| self.root[r] == r)
            .map(|r| std::mem::take(&mut cuts[r]))
            .min_by_key(|c| c.len())
            .unwrap_or_default()
    }

    /// Nodes on the far side of tree edge `e` from the tree root.
    pub fn below(&self, g: &SymbolicGraph, e: usize) -> Vec<bool> {
        let spec = g.edge(e);
        let low = if self.parent[spec.u] == Some(e) {
            spec.u
        } else {
            spec.v
        };
        let mut mark = vec![false; self.root.len()];
        let mut stack = vec![low];
        mark[low] = true;
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                mark[c] = true;
                stack.push(c);
            }
        }
        mark
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lit::Var;

    fn triangle(w: [u64; 3]) -> SymbolicGraph {
        let mut g = SymbolicGraph::new(0, false, 3);
        g.add_edge(0, 1, Var(0), w[0]).unwrap();
        g.add_edge(1, 2, Var(1), w[1]).unwrap();
        g.add_edge(0, 2, Var(2), w[2]).unwrap();
        g
    }

    #[test]
    fn kruskal_skips_heaviest_cycle_edge() {
        let g = triangle([1, 2, 3]);
        let f = kruskal(&g, &[true; 3]);
        assert_eq!(f.tree_edges, vec![0, 1]);
        assert_eq!(f.weight, 3);
        assert!(f.connected());
        assert_eq!(f.path(&g, 0, 2), Some(vec![0, 1]));
    }

    #[test]
    fn equal_weights_resolve_by_id() {
        let g = triangle([4, 4, 4]);
        let f = kruskal(&g, &[true; 3]);
        assert_eq!(f.tree_edges, vec![0, 1]);
    }

    #[test]
    fn components_count_isolated_nodes() {
        let mut g = SymbolicGraph::new(0, false, 4);
        g.add_edge(0, 1, Var(0), 1).unwrap();
        g.add_edge(2, 3, Var(1), 1).unwrap();
        let c = components(&g, &[true, false]);
        assert_eq!(c.count, 3);
        assert_eq!(crossing_disabled(&g, &[true, false], &c.label), vec![1]);
    }

    #[test]
    fn offline_lca_matches_climbing() {
        // Path 0-1-2-3 with a pendant 4 off node 1, plus a separate node 5.
        let mut g = SymbolicGraph::new(0, false, 6);
        for (i, (u, v)) in [(0, 1), (1, 2), (2, 3), (1, 4)].into_iter().enumerate() {
            g.add_edge(u, v, Var(i as u32), 1).unwrap();
        }
        let f = kruskal(&g, &[true; 4]);
        let q = [(3, 4), (2, 3), (0, 0), (4, 5), (3, 0)];
        assert_eq!(
            f.lca_offline(&q),
            vec![Some(1), Some(2), Some(0), None, Some(0)]
        );
    }

    #[test]
    fn improving_edges() {
        let g = triangle([5, 5, 1]);
        let on = [true, true, false];
        let f = kruskal(&g, &on);
        assert_eq!(f.improving_disabled(&g, &on), vec![2]);
        let g = triangle([1, 1, 1]);
        let f = kruskal(&g, &on);
        assert!(f.improving_disabled(&g, &on).is_empty());
    }
}
