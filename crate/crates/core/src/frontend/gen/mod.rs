//! Seeded instance generators. The same parameters and seed always produce
//! a byte-identical document.

mod flow;
mod grids;
mod maze;
mod sched;

pub use flow::{gen_flow, CapacityMode, FlowParams};
pub use grids::{gen_reach_grid, gen_weighted_grid};
pub use maze::{gen_maze, MazeLayout, MazeParams};
pub use sched::{gen_sched, group_size, SchedParams, HORIZON};

use super::doc::GnfDocument;

/// The variable named by a `c bound atom N` comment, if any.
pub fn bound_atom(doc: &GnfDocument) -> Option<u32> {
    doc.comments
        .iter()
        .find_map(|c| c.strip_prefix("bound atom ")?.trim().parse().ok())
}

/// Grid neighbour pairs of a `w` x `h` grid with node id `y * w + x`: for
/// each node in id order, the edge to its right then the edge below it.
pub fn grid_edges(w: usize, h: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let n = y * w + x;
            if x + 1 < w {
                edges.push((n, n + 1));
            }
            if y + 1 < h {
                edges.push((n, n + w));
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_edge_count() {
        assert_eq!(grid_edges(2, 2), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(grid_edges(8, 8).len(), 2 * 8 * 7);
    }

    #[test]
    fn generators_are_deterministic() {
        let maze = |seed| {
            gen_maze(&MazeParams {
                width: 4,
                height: 3,
                seed,
                bound_atom: true,
            })
            .to_string()
        };
        assert_eq!(maze(7), maze(7));
        assert_ne!(maze(7), maze(8));
        let flow = |seed| {
            gen_flow(&FlowParams {
                width: 3,
                height: 3,
                mode: CapacityMode::Random,
                demand: None,
                seed,
            })
            .to_string()
        };
        assert_eq!(flow(1), flow(1));
        let sched = |seed| {
            gen_sched(&SchedParams {
                tasks: 12,
                processors: 3,
                slack: 40,
                seed,
            })
            .to_string()
        };
        assert_eq!(sched(2), sched(2));
        assert_eq!(
            gen_reach_grid(4, 4, 3).to_string(),
            gen_reach_grid(4, 4, 3).to_string()
        );
        assert_eq!(
            gen_weighted_grid(3, 3, 3).to_string(),
            gen_weighted_grid(3, 3, 3).to_string()
        );
    }

    #[test]
    fn generated_documents_validate() {
        let docs = [
            gen_maze(&MazeParams {
                width: 3,
                height: 2,
                seed: 0,
                bound_atom: true,
            }),
            gen_flow(&FlowParams {
                width: 2,
                height: 2,
                mode: CapacityMode::Unit,
                demand: None,
                seed: 0,
            }),
            gen_sched(&SchedParams {
                tasks: 6,
                processors: 2,
                slack: 10,
                seed: 0,
            }),
            gen_reach_grid(3, 3, 0),
            gen_weighted_grid(3, 3, 0),
        ];
        for d in &docs {
            d.validate().unwrap();
        }
        assert!(bound_atom(&docs[0]).is_some());
        assert_eq!(bound_atom(&docs[1]), None);
        assert!(bound_atom(&docs[4]).is_some());
        assert_eq!(MazeLayout::from_doc(&docs[0]).unwrap().finish, 5);
    }

    #[test]
    fn sched_group_sizes() {
        assert_eq!(group_size(3), 1);
        assert_eq!(group_size(10), 1);
        assert_eq!(group_size(100), 10);
        assert_eq!(group_size(1000), 10);
    }
}
