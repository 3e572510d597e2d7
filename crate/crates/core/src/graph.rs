//! Simple undirected graphs and the two constructions used here: bi-Cayley
//! graphs over a group and coset graphs `Cos(G, S, g)`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec::Vec;

use crate::group::PermGroup;
use crate::perm::{Permutation, Point};
use crate::Error;

pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;
pub const DEFAULT_COSET_INDEX_BOUND: usize = 100_000;
/// Largest `S` for which double cosets `SgS` are listed element by element.
pub const MAX_COSET_SUBGROUP: u128 = 64;

/// Per-vertex tag recording where a vertex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    /// Element `element` of the base group on side `side` of a bi-Cayley graph.
    Element { side: u8, element: u32 },
    /// A right coset, numbered in discovery order.
    Coset(u32),
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: alloc::vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, Error> {
        let mut adjacency = alloc::vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
            }
            if u == v {
                return Err(Error::AssertionFailed(format!("loop at vertex {u}")));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| (u as u32) < v)
                .map(move |&v| (u as u32, v))
        })
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, |l| l.len());
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Connected components as a label per vertex, and their number.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut comp = alloc::vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if comp[v as usize] == usize::MAX {
                        comp[v as usize] = count;
                        queue.push_back(v as usize);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// A proper 2-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.vertex_count();
        let mut colour = alloc::vec![u8::MAX; n];
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    let v = v as usize;
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    /// Whether `x` maps edges to edges.
    pub fn is_automorphism(&self, x: &Permutation) -> bool {
        x.degree() == self.vertex_count()
            && self.edges().all(|(u, v)| {
                self.is_adjacent(x.image(u) as usize, x.image(v) as usize)
            })
    }
}

/// Bi-Cayley data `BiCay(N, R, L, S)`.
#[derive(Clone, Debug)]
pub struct BiCayleySpec {
    pub group: PermGroup,
    pub r: Vec<Permutation>,
    pub l: Vec<Permutation>,
    pub s: Vec<Permutation>,
}

/// A bi-Cayley graph with the element numbering of its base group. Vertex
/// `h_e` is `e * |N| + index(h)`.
#[derive(Clone, Debug)]
pub struct BiCayley {
    pub graph: Graph,
    elements: Vec<Permutation>,
    index: BTreeMap<Permutation, u32>,
}

impl BiCayley {
    pub fn group_order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn vertex(&self, x: &Permutation, side: u8) -> Option<usize> {
        Some(side as usize * self.elements.len() + self.index_of(x)?)
    }

    /// The vertex permutation `h_e -> (f(h))_(e xor swap)`.
    fn vertex_map(&self, swap: bool, f: impl Fn(&Permutation) -> Permutation) -> Result<Permutation, Error> {
        let n = self.elements.len();
        let mut images = alloc::vec![0 as Point; 2 * n];
        for (i, h) in self.elements.iter().enumerate() {
            let j = self.index_of(&f(h)).ok_or(Error::NotASubgroup)?;
            for side in 0..2 {
                let target = if swap { 1 - side } else { side };
                images[side * n + i] = (target * n + j) as Point;
            }
        }
        Permutation::from_images(images)
    }

    /// Right multiplication by `x`: `h_e -> (hx)_e`.
    pub fn right_multiplication(&self, x: &Permutation) -> Result<Permutation, Error> {
        self.vertex_map(false, |h| h * x)
    }

    /// The permutation induced by the automorphism `h -> h^c` of the base
    /// group, keeping sides (`swap = false`) or exchanging them.
    pub fn automorphism_action(&self, c: &Permutation, swap: bool) -> Result<Permutation, Error> {
        self.vertex_map(swap, |h| h.conjugate_unchecked(c))
    }
}

fn check_connection_set(set: &[Permutation]) -> Result<(), Error> {
    for x in set {
        if x.is_identity() {
            return Err(Error::ContainsIdentity);
        }
        if !set.contains(&x.inverse()) {
            return Err(Error::NotInverseClosed);
        }
    }
    Ok(())
}

/// Builds `BiCay(N, R, L, S)`: spokes `{h_0, g_1}` for `gh^-1` in `S`, right
/// edges `{h_0, g_0}` for `gh^-1` in `R`, left edges `{h_1, g_1}` for `gh^-1`
/// in `L`.
pub fn build_bicayley(spec: &BiCayleySpec, vertex_budget: usize) -> Result<BiCayley, Error> {
    check_connection_set(&spec.r)?;
    check_connection_set(&spec.l)?;
    let order = spec.group.order();
    let needed = order.saturating_mul(2);
    if needed > vertex_budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "vertex",
            needed,
            budget: vertex_budget as u128,
        });
    }
    let elements = spec.group.elements(order)?;
    let index: BTreeMap<Permutation, u32> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), i as u32))
        .collect();
    let n = elements.len();
    let lookup = |x: &Permutation| index.get(x).map(|&i| i as usize).ok_or(Error::NotASubgroup);
    let mut edges = Vec::new();
    for (i, h) in elements.iter().enumerate() {
        for (set, from, to) in [(&spec.s, 0, 1), (&spec.r, 0, 0), (&spec.l, 1, 1)] {
            for x in set.iter() {
                let j = lookup(&(x * h))?;
                edges.push(((from * n + i) as u32, (to * n + j) as u32));
            }
        }
    }
    let labels = (0..2 * n)
        .map(|v| VertexLabel::Element {
            side: (v / n) as u8,
            element: (v % n) as u32,
        })
        .collect();
    let graph = Graph::from_edges(2 * n, &edges)?.with_labels(labels);
    Ok(BiCayley {
        graph,
        elements,
        index,
    })
}

/// Coset-graph data `Cos(G, S, g)`.
#[derive(Clone, Debug)]
pub struct CosetGraphSpec {
    pub group: PermGroup,
    pub subgroup: PermGroup,
    pub g: Permutation,
    pub index_bound: usize,
}

/// Right cosets of `S`, each identified by the lexicographically smallest
/// image list among its elements.
#[derive(Clone, Debug)]
struct CosetKeys {
    s_elements: Vec<Permutation>,
}

impl CosetKeys {
    fn new(spec: &CosetGraphSpec) -> Result<Self, Error> {
        let order = spec.subgroup.order();
        if order > MAX_COSET_SUBGROUP {
            return Err(Error::SubgroupTooLarge {
                order,
                limit: MAX_COSET_SUBGROUP,
            });
        }
        Ok(CosetKeys {
            s_elements: spec.subgroup.elements(MAX_COSET_SUBGROUP)?,
        })
    }

    fn key(&self, x: &Permutation) -> Permutation {
        self.s_elements
            .iter()
            .map(|s| s * x)
            .min()
            .expect("S contains the identity")
    }

    /// Representatives `g^e s x` of the neighbours of `Sx`.
    fn neighbour_reps(&self, x: &Permutation, g: &Permutation, g_inv: &Permutation) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(2 * self.s_elements.len());
        for h in [g, g_inv] {
            for s in &self.s_elements {
                out.push(&(h * s) * x);
            }
        }
        out
    }

    /// Whether `x` lies in `S h S`.
    fn in_double_coset(&self, x: &Permutation, h: &Permutation) -> bool {
        self.s_elements
            .iter()
            .any(|s| self.s_elements.iter().any(|t| &(s * h) * t == *x))
    }
}

/// A coset graph with one representative per vertex.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub graph: Graph,
    pub representatives: Vec<Permutation>,
    keys: CosetKeys,
    index: BTreeMap<Permutation, u32>,
}

impl CosetGraph {
    /// Index of the coset containing `x`.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(&self.keys.key(x)).map(|&i| i as usize)
    }

    /// Right multiplication by `x` on the cosets.
    pub fn action(&self, x: &Permutation) -> Result<Permutation, Error> {
        let images = self
            .representatives
            .iter()
            .map(|r| {
                self.coset_of(&(r * x))
                    .map(|i| i as Point)
                    .ok_or(Error::NotASubgroup)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }

    /// The group acting on the cosets, generated by the images of the
    /// generators of `G`.
    pub fn action_group(&self, group: &PermGroup) -> Result<PermGroup, Error> {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.action(g))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(self.representatives.len(), gens)
    }
}

/// Builds `Cos(G, S, g)`: vertices are the right cosets `Sx`, with `Sx ~ Sy`
/// iff `xy^-1` lies in `SgS` or `Sg^-1S`.
pub fn build_coset_graph(spec: &CosetGraphSpec) -> Result<CosetGraph, Error> {
    let g_order = spec.group.order();
    let s_order = spec.subgroup.order();
    if !spec.group.contains(&spec.g)? || !spec.group.is_supergroup_of(&spec.subgroup)? {
        return Err(Error::NotASubgroup);
    }
    let index = g_order / s_order;
    if index > spec.index_bound as u128 {
        return Err(Error::BudgetExceeded {
            what: "coset index",
            needed: index,
            budget: spec.index_bound as u128,
        });
    }
    let keys = CosetKeys::new(spec)?;
    let (graph, representatives, map) = explore(&keys, &spec.g, usize::MAX, Some(spec.index_bound))?;
    Ok(CosetGraph {
        graph,
        representatives,
        keys,
        index: map,
    })
}

type Explored = (Graph, Vec<Permutation>, BTreeMap<Permutation, u32>);

/// Breadth-first search over cosets from `S`, up to `radius` steps.
fn explore(keys: &CosetKeys, g: &Permutation, radius: usize, bound: Option<usize>) -> Result<Explored, Error> {
    let g_inv = g.inverse();
    let id = Permutation::identity(g.degree());
    let mut index: BTreeMap<Permutation, u32> = BTreeMap::new();
    let mut reps = alloc::vec![id.clone()];
    let mut depth = alloc::vec![0usize];
    index.insert(keys.key(&id), 0);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < reps.len() {
        if depth[i] < radius {
            for nb in keys.neighbour_reps(&reps[i], g, &g_inv) {
                let key = keys.key(&nb);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = reps.len() as u32;
                        if let Some(b) = bound {
                            if j as usize >= b {
                                return Err(Error::BudgetExceeded {
                                    what: "coset index",
                                    needed: j as u128 + 1,
                                    budget: b as u128,
                                });
                            }
                        }
                        index.insert(key, j);
                        reps.push(nb);
                        depth.push(depth[i] + 1);
                        j
                    }
                };
                if j as usize != i {
                    edges.push((i as u32, j));
                }
            }
        }
        i += 1;
    }
    let n = reps.len();
    let labels = (0..n as u32).map(VertexLabel::Coset).collect();
    let graph = Graph::from_edges(n, &edges)?.with_labels(labels);
    Ok((graph, reps, index))
}

/// The ball of given radius around the coset `S`.
#[derive(Clone, Debug)]
pub struct LocalNeighbourhood {
    pub graph: Graph,
    pub root_degree: usize,
    /// Whether `g^-1` lies in `SgS`, i.e. whether `g` reverses an edge at the root.
    pub inverse_in_double_coset: bool,
}

pub const MAX_LOCAL_RADIUS: usize = 4;

/// Explores cosets near `S` without enumerating the whole coset space.
/// Edges between two vertices at the outer radius are not listed.
pub fn local_coset_neighbourhood(spec: &CosetGraphSpec, radius: usize) -> Result<LocalNeighbourhood, Error> {
    if radius > MAX_LOCAL_RADIUS {
        return Err(Error::Inadmissible(format!(
            "radius {radius} exceeds {MAX_LOCAL_RADIUS}"
        )));
    }
    let keys = CosetKeys::new(spec)?;
    let (graph, _, _) = explore(&keys, &spec.g, radius, None)?;
    let root_degree = if radius == 0 {
        let (g1, _, _) = explore(&keys, &spec.g, 1, None)?;
        g1.degree(0)
    } else {
        graph.degree(0)
    };
    Ok(LocalNeighbourhood {
        graph,
        root_degree,
        inverse_in_double_coset: keys.in_double_coset(&spec.g.inverse(), &spec.g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn edge_list_basics() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.regular_degree(), Some(2));
        assert!(g.is_connected());
        assert!(g.bipartition().is_some());
        assert!(g.is_automorphism(&p(4, "(0 1 2 3)")));
        assert!(!g.is_automorphism(&p(4, "(0 1)")));
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn bicayley_over_z5() {
        let n = zoo::cyclic(5);
        let b = zoo::long_cycle(5);
        let s = [1u64, 4, 2, 3].iter().map(|&k| b.pow(k)).collect();
        let bc = build_bicayley(
            &BiCayleySpec {
                group: n,
                r: Vec::new(),
                l: Vec::new(),
                s,
            },
            DEFAULT_VERTEX_BUDGET,
        )
        .unwrap();
        assert_eq!(bc.graph.vertex_count(), 10);
        assert_eq!(bc.graph.regular_degree(), Some(4));
        assert!(bc.graph.is_connected());
        let rm = bc.right_multiplication(&b).unwrap();
        assert!(bc.graph.is_automorphism(&rm));
    }

    #[test]
    fn empty_connection_sets_give_edgeless_graph() {
        let bc = build_bicayley(
            &BiCayleySpec {
                group: zoo::cyclic(3),
                r: Vec::new(),
                l: Vec::new(),
                s: Vec::new(),
            },
            100,
        )
        .unwrap();
        assert_eq!((bc.graph.vertex_count(), bc.graph.edge_count()), (6, 0));
    }

    #[test]
    fn bicayley_rejects_bad_sets() {
        let b = zoo::long_cycle(5);
        let spec = |r: Vec<Permutation>| BiCayleySpec {
            group: zoo::cyclic(5),
            r,
            l: Vec::new(),
            s: Vec::new(),
        };
        assert_eq!(
            build_bicayley(&spec(alloc::vec![b.clone()]), 100).unwrap_err(),
            Error::NotInverseClosed
        );
        assert_eq!(
            build_bicayley(&spec(alloc::vec![Permutation::identity(5)]), 100).unwrap_err(),
            Error::ContainsIdentity
        );
        assert!(matches!(
            build_bicayley(&spec(Vec::new()), 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn coset_graph_of_whole_group_is_a_point() {
        let s4 = zoo::symmetric(4);
        let spec = CosetGraphSpec {
            group: s4.clone(),
            subgroup: s4.clone(),
            g: p(4, "(0 1)"),
            index_bound: 10,
        };
        assert_eq!(build_coset_graph(&spec).unwrap().graph.vertex_count(), 1);
        let small = CosetGraphSpec {
            group: zoo::cyclic(3),
            subgroup: zoo::cyclic(3),
            g: zoo::long_cycle(3),
            index_bound: 10,
        };
        assert_eq!(build_coset_graph(&small).unwrap().graph.vertex_count(), 1);
    }

    #[test]
    fn coset_graph_of_trivial_subgroup_is_cayley_graph() {
        let spec = CosetGraphSpec {
            group: zoo::cyclic(7),
            subgroup: PermGroup::trivial(7),
            g: zoo::long_cycle(7),
            index_bound: 100,
        };
        let cg = build_coset_graph(&spec).unwrap();
        assert_eq!(cg.graph.vertex_count(), 7);
        assert_eq!(cg.graph.regular_degree(), Some(2));
        let act = cg.action(&zoo::long_cycle(7)).unwrap();
        assert!(cg.graph.is_automorphism(&act));
        let ball = local_coset_neighbourhood(&spec, 0).unwrap();
        assert_eq!((ball.graph.vertex_count(), ball.root_degree), (1, 2));
        assert!(!ball.inverse_in_double_coset);
        assert!(local_coset_neighbourhood(&spec, 5).is_err());
    }

    #[test]
    fn coset_index_guard() {
        let spec = CosetGraphSpec {
            group: zoo::symmetric(6),
            subgroup: PermGroup::trivial(6),
            g: p(6, "(0 1)"),
            index_bound: 100,
        };
        assert!(matches!(
            build_coset_graph(&spec),
            Err(Error::BudgetExceeded { needed: 720, .. })
        ));
    }
}
