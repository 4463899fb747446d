use std::collections::HashMap;

use thiserror::Error;

use super::doc::GnfDocument;
use super::gen::MazeLayout;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("document has no `c maze` layout comment")]
    NotAMaze,
    #[error("maze graph {0} is not declared")]
    MissingGraph(u32),
    #[error("model has {got} values, document has {expected} variables")]
    ModelLength { expected: usize, got: usize },
}

/// Draws a generated maze as a `(2h+1) x (2w+1)` character grid. Cells are
/// at odd coordinates; the space between two cells is open when either
/// direction of their corridor edge is true. `#` is wall, `S` and `F` mark
/// the start and finish.
pub fn render_ascii(doc: &GnfDocument, model: &[bool]) -> Result<String, RenderError> {
    let layout = MazeLayout::from_doc(doc).ok_or(RenderError::NotAMaze)?;
    if model.len() != doc.num_vars as usize {
        return Err(RenderError::ModelLength {
            expected: doc.num_vars as usize,
            got: model.len(),
        });
    }
    let g2 = doc
        .graph(layout.g2)
        .ok_or(RenderError::MissingGraph(layout.g2))?;
    let mut open: HashMap<(usize, usize), bool> = HashMap::new();
    for e in &g2.edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        *open.entry(key).or_default() |= model[e.var as usize - 1];
    }
    let (w, h) = (layout.width, layout.height);
    let mut grid = vec![vec!['#'; 2 * w + 1]; 2 * h + 1];
    for y in 0..h {
        for x in 0..w {
            let n = y * w + x;
            grid[2 * y + 1][2 * x + 1] = if n == layout.start {
                'S'
            } else if n == layout.finish {
                'F'
            } else {
                ' '
            };
            if x + 1 < w && open.get(&(n, n + 1)).copied().unwrap_or(false) {
                grid[2 * y + 1][2 * x + 2] = ' ';
            }
            if y + 1 < h && open.get(&(n, n + w)).copied().unwrap_or(false) {
                grid[2 * y + 2][2 * x + 1] = ' ';
            }
        }
    }
    let mut out = String::with_capacity((2 * w + 2) * (2 * h + 1));
    for row in grid {
        out.extend(row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::gen::{gen_maze, MazeParams};

    fn maze2() -> GnfDocument {
        gen_maze(&MazeParams {
            width: 2,
            height: 2,
            seed: 0,
            bound_atom: false,
        })
    }

    #[test]
    fn two_by_two_layout() {
        let doc = maze2();
        let mut model = vec![false; doc.num_vars as usize];
        // Open the corridor 0 -> 1 only.
        let e = doc.graph(2).unwrap().edges[0].var;
        model[e as usize - 1] = true;
        let text = render_ascii(&doc, &model).unwrap();
        assert_eq!(text, "#####\n#S  #\n#####\n# #F#\n#####\n");
    }

    #[test]
    fn rejects_wrong_inputs() {
        let doc = maze2();
        assert_eq!(
            render_ascii(&doc, &[true]),
            Err(RenderError::ModelLength {
                expected: doc.num_vars as usize,
                got: 1
            })
        );
        assert_eq!(
            render_ascii(&GnfDocument::new(0), &[]),
            Err(RenderError::NotAMaze)
        );
    }
}
