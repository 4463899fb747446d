//! Edmonds–Karp maximum flow on the enabled edges of a directed graph,
//! with edge weights as capacities.

use std::collections::VecDeque;

use super::SymbolicGraph;

#[derive(Clone, Debug)]
pub struct FlowResult {
    /// Flow value; `u64::MAX` when source and sink coincide.
    pub value: u64,
    /// Flow on each edge, indexed by edge id.
    pub flow: Vec<u64>,
}

#[derive(Clone, Copy)]
enum Step {
    Forward(usize),
    Backward(usize),
}

/// Nodes reachable from `s` in the residual graph of `flow`.
pub fn residual_reachable(
    g: &SymbolicGraph,
    enabled: &[bool],
    flow: &[u64],
    s: usize,
) -> Vec<bool> {
    residual_search(g, enabled, flow, s, None).0
}

fn residual_search(
    g: &SymbolicGraph,
    enabled: &[bool],
    flow: &[u64],
    s: usize,
    t: Option<usize>,
) -> (Vec<bool>, Vec<Option<Step>>) {
    let n = g.num_nodes();
    let mut seen = vec![false; n];
    let mut via = vec![None; n];
    let mut queue = VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    while let Some(node) = queue.pop_front() {
        if Some(node) == t {
            break;
        }
        for &e in g.out_edges(node) {
            let spec = g.edge(e);
            if enabled[e] && flow[e] < spec.weight && !seen[spec.v] {
                seen[spec.v] = true;
                via[spec.v] = Some(Step::Forward(e));
                queue.push_back(spec.v);
            }
        }
        for &e in g.in_edges(node) {
            let spec = g.edge(e);
            if flow[e] > 0 && !seen[spec.u] {
                seen[spec.u] = true;
                via[spec.u] = Some(Step::Backward(e));
                queue.push_back(spec.u);
            }
        }
    }
    (seen, via)
}

/// Maximum `s`-`t` flow. With `limit`, augmentation stops as soon as the
/// flow value reaches it, and the returned flow never exceeds it.
pub fn max_flow(
    g: &SymbolicGraph,
    enabled: &[bool],
    s: usize,
    t: usize,
    limit: Option<u64>,
) -> FlowResult {
    let mut flow = vec![0u64; g.num_edges()];
    if s == t {
        return FlowResult {
            value: u64::MAX,
            flow,
        };
    }
    let limit = limit.unwrap_or(u64::MAX);
    let mut value = 0u64;
    while value < limit {
        let (seen, via) = residual_search(g, enabled, &flow, s, Some(t));
        if !seen[t] {
            break;
        }
        let mut push = limit - value;
        let mut node = t;
        while node != s {
            match via[node].expect("path step") {
                Step::Forward(e) => {
                    push = push.min(g.edge(e).weight - flow[e]);
                    node = g.edge(e).u;
                }
                Step::Backward(e) => {
                    push = push.min(flow[e]);
                    node = g.edge(e).v;
                }
            }
        }
        let mut node = t;
        while node != s {
            match via[node].expect("path step") {
                Step::Forward(e) => {
                    flow[e] += push;
                    node = g.edge(e).u;
                }
                Step::Backward(e) => {
                    flow[e] -= push;
                    node = g.edge(e).v;
                }
            }
        }
        value = value.saturating_add(push);
    }
    FlowResult { value, flow }
}
