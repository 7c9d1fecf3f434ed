//! Mutation graphs on injections `[m] -> [n]`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::category::{compose_images, hom_set, CategoryId, HomKind, Morphism};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationGraph {
    pub category: CategoryId,
    pub m: usize,
    pub n: usize,
    pub vertices: Vec<Morphism>,
    pub edges: Vec<(usize, usize)>,
    /// Component id per vertex, numbered by least vertex.
    pub components: Vec<usize>,
    /// Present when `n = m + 1`.
    pub signs: Option<Vec<i8>>,
    /// Every edge witness `h` made `h ∘ f` injective.
    pub witnesses_injective: bool,
}

impl MutationGraph {
    pub fn component_count(&self) -> usize {
        self.components.iter().max().map_or(0, |c| c + 1)
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.component_count()];
        for &c in &self.components {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

/// Finds `h ∈ C⁻(n, n-1)` with `h ∘ f = h ∘ g`.
pub fn mutation_witness(f: &Morphism, g: &Morphism) -> Option<Morphism> {
    let surj = hom_set(f.category(), f.target(), f.target() - 1, HomKind::Surjective);
    surj.morphisms
        .iter()
        .find(|h| compose_images(h.images(), f.images()) == compose_images(h.images(), g.images()))
        .cloned()
}

/// Builds `Γ_{m,n}`.
pub fn build_mutation_graph(category: CategoryId, m: usize, n: usize) -> Result<MutationGraph> {
    if m >= n || m == 0 {
        return Err(Error::Unsupported(format!("mutation graph needs 1 <= m < n, got {m}, {n}")));
    }
    let vertices = hom_set(category, m, n, HomKind::Injective).morphisms.clone();
    let surj = hom_set(category, n, n - 1, HomKind::Surjective);
    let mut edges = Vec::new();
    let mut witnesses_injective = true;
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let (f, g) = (vertices[a].images(), vertices[b].images());
            if f.iter().zip(g).filter(|(x, y)| x != y).count() != 1 {
                continue;
            }
            let witness = surj
                .morphisms
                .iter()
                .find(|h| compose_images(h.images(), f) == compose_images(h.images(), g));
            if let Some(h) = witness {
                let hf = compose_images(h.images(), f);
                let mut seen = vec![false; n];
                witnesses_injective &= hf.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true));
                edges.push((a, b));
            }
        }
    }
    let mut graph = MutationGraph {
        category,
        m,
        n,
        vertices,
        edges,
        components: Vec::new(),
        signs: None,
        witnesses_injective,
    };
    graph.components = label_components(&graph);
    if n == m + 1 {
        graph.signs = Some(bipartition_and_sign(&graph)?);
    }
    Ok(graph)
}

fn adjacency(graph: &MutationGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); graph.vertices.len()];
    for &(a, b) in &graph.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    adj
}

fn label_components(graph: &MutationGraph) -> Vec<usize> {
    let adj = adjacency(graph);
    let mut comp = vec![usize::MAX; graph.vertices.len()];
    let mut next = 0;
    for start in 0..graph.vertices.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    queue.push_back(w);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Two-coloring by breadth-first search from the least vertex of each component,
/// which gets `+1`. Fails on an odd cycle.
pub fn bipartition_and_sign(graph: &MutationGraph) -> Result<Vec<i8>> {
    let adj = adjacency(graph);
    let mut sign = vec![0i8; graph.vertices.len()];
    for start in 0..graph.vertices.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if sign[w] == 0 {
                    sign[w] = -sign[v];
                    queue.push_back(w);
                } else if sign[w] == sign[v] {
                    return Err(Error::Internal(format!(
                        "odd cycle through {} and {}",
                        graph.vertices[v], graph.vertices[w]
                    )));
                }
            }
        }
    }
    Ok(sign)
}

/// Number of connected components of `Γ_{m,n}`.
pub fn component_count(category: CategoryId, m: usize, n: usize) -> Result<usize> {
    Ok(build_mutation_graph(category, m, n)?.component_count())
}

/// The bound on components: one for FA, OA, CA and at most two for BA, SA.
pub fn component_bound(category: CategoryId) -> usize {
    match category {
        CategoryId::BA | CategoryId::SA => 2,
        _ => 1,
    }
}

const PALETTE: [&str; 6] = ["steelblue", "firebrick", "forestgreen", "darkorange", "purple", "gray40"];

/// Undirected DOT rendering: labels are image tuples, color marks the component and
/// shape marks the sign (box for `+1`, ellipse otherwise).
pub fn export_dot(graph: &MutationGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}_{}_{}\" {{", graph.category, graph.m, graph.n);
    for (i, v) in graph.vertices.iter().enumerate() {
        let label: Vec<String> = v.images().iter().map(|x| x.to_string()).collect();
        let color = PALETTE[graph.components[i] % PALETTE.len()];
        let shape = match &graph.signs {
            Some(s) if s[i] == 1 => "box",
            _ => "ellipse",
        };
        let _ = writeln!(
            out,
            "  v{i} [label=\"({})\", color={color}, shape={shape}];",
            label.join(",")
        );
    }
    for &(a, b) in &graph.edges {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use CategoryId::*;

    #[test]
    fn fa_two_three_is_a_hexagon() {
        let g = build_mutation_graph(FA, 2, 3).unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert_eq!(g.edges.len(), 6);
        assert_eq!(g.component_count(), 1);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn oa_one_two_signs() {
        let g = build_mutation_graph(OA, 1, 2).unwrap();
        assert_eq!(g.edges, vec![(0, 1)]);
        assert_eq!(g.signs, Some(vec![1, -1]));
    }

    #[test]
    fn component_examples() {
        assert_eq!(component_count(CA, 3, 5).unwrap(), 1);
        assert_eq!(component_count(SA, 3, 5).unwrap(), 2);
        assert_eq!(component_count(BA, 1, 3).unwrap(), 1);
        assert_eq!(component_count(OA, 2, 4).unwrap(), 1);
    }

    #[test]
    fn dot_has_one_line_per_vertex_and_edge() {
        let g = build_mutation_graph(FA, 2, 3).unwrap();
        let dot = export_dot(&g);
        assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 6);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 6);
        assert!(dot.starts_with("graph "));
    }

    #[test]
    fn rejects_non_increasing_sizes() {
        assert!(build_mutation_graph(OA, 3, 3).is_err());
    }
}
