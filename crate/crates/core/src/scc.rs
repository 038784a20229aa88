//! Strong components (iterative Tarjan) with the condensation in topological order.

use serde::{Deserialize, Serialize};

use crate::graph::{Digraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccDecomposition {
    /// Component index of each vertex; indexes into `components`.
    pub component_of: Vec<usize>,
    /// Components in a topological order of the condensation (sources first).
    /// Vertices inside a component are sorted.
    pub components: Vec<Vec<Vertex>>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components that contain at least one cycle (size ≥ 2, since there are no loops).
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<Vertex>> {
        self.components.iter().filter(|c| c.len() >= 2)
    }

    /// Edges whose endpoints lie in the same component.
    pub fn internal_edges<'a>(&'a self, g: &'a Digraph) -> impl Iterator<Item = (Vertex, Vertex)> + 'a {
        g.edges()
            .filter(move |&(u, v)| self.component_of[u] == self.component_of[v])
    }
}

pub fn strong_components(g: &Digraph) -> SccDecomposition {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut found: Vec<Vec<Vertex>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(Vertex, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(u, pos)) = call.last() {
            let out = g.out_neighbors(u);
            if pos < out.len() {
                call.last_mut().unwrap().1 += 1;
                let w = out[pos];
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[u]);
            }
            if low[u] == index[u] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == u {
                        break;
                    }
                }
                comp.sort_unstable();
                found.push(comp);
            }
        }
    }

    // Tarjan emits sink components first.
    found.reverse();
    let mut component_of = vec![0; n];
    for (i, comp) in found.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    SccDecomposition {
        component_of,
        components: found,
    }
}

/// True when every vertex of `vertices` reaches and is reached by the first one
/// inside the induced subgraph.
pub fn is_strong_set(g: &Digraph, vertices: &[Vertex]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let (h, _) = g.induced(vertices);
    let scc = strong_components(&h);
    scc.len() == 1
}
