//! Orientation, arc orbits and oriented s-arcs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::group::PermGroup;
use crate::perm::{Permutation, Point};
use crate::union_find::UnionFind;
use crate::Error;

/// A graph together with a group acting on its vertices by automorphisms.
#[derive(Clone, Debug)]
pub struct OrientedPair {
    pub graph: Graph,
    pub group: PermGroup,
    /// Part of each vertex, if the graph is bipartite.
    pub bipartition: Option<Vec<u8>>,
    /// The subgroup preserving both parts, when known.
    pub g_plus: Option<PermGroup>,
    pub orientation: Option<Orientation>,
}

impl OrientedPair {
    /// Checks that every generator is an automorphism of `graph`.
    pub fn new(graph: Graph, group: PermGroup) -> Result<Self, Error> {
        if group.degree() != graph.vertex_count() {
            return Err(Error::DegreeMismatch {
                left: group.degree(),
                right: graph.vertex_count(),
            });
        }
        if !group.generators().iter().all(|g| graph.is_automorphism(g)) {
            return Err(Error::NotAutomorphism);
        }
        let bipartition = graph.bipartition();
        Ok(OrientedPair {
            graph,
            group,
            bipartition,
            g_plus: None,
            orientation: None,
        })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = Some(orientation);
        self
    }

    /// The subgroup fixing both parts of the bipartition, from Schreier
    /// generators for the kernel of the action on the two parts.
    pub fn part_stabilizer(&self) -> Result<PermGroup, Error> {
        if let Some(g) = &self.g_plus {
            return Ok(g.clone());
        }
        let parts = self.bipartition.as_ref().ok_or(Error::NotBiquasiprimitive)?;
        let swaps = |g: &Permutation| {
            parts[g.image(0) as usize] != parts[0]
        };
        let gens = self.group.generators();
        let mut out = Vec::new();
        let t = gens.iter().find(|g| swaps(g));
        for g in gens {
            // Schreier generators r g (r')^-1 for the transversal {1, t}.
            match (swaps(g), t) {
                (false, _) => {
                    out.push(g.clone());
                    if let Some(t) = t {
                        out.push(&(t * g) * &t.inverse());
                    }
                }
                (true, Some(t)) => {
                    out.push(g * &t.inverse());
                    out.push(t * g);
                }
                (true, None) => unreachable!("t exists when some generator swaps"),
            }
        }
        out.retain(|x| !x.is_identity());
        out.sort();
        out.dedup();
        let mut gp = PermGroup::new(self.group.degree(), out)?;
        if t.is_some() {
            gp = gp.with_order_upper_bound(self.group.order() / 2);
        } else {
            gp = gp.with_order_upper_bound(self.group.order());
        }
        Ok(gp)
    }
}

/// One of the two arc orbits of a G-oriented graph, as a flag per arc.
/// Arc `(v, w)` has index `offset(v) + position of w in neighbours(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    offsets: Vec<usize>,
    forward: Vec<bool>,
    neighbours: Vec<u32>,
}

impl Orientation {
    pub fn out_neighbours(&self, v: usize) -> Vec<u32> {
        self.side(v, true)
    }

    pub fn in_neighbours(&self, v: usize) -> Vec<u32> {
        self.side(v, false)
    }

    fn side(&self, v: usize, forward: bool) -> Vec<u32> {
        (self.offsets[v]..self.offsets[v + 1])
            .filter(|&a| self.forward[a] == forward)
            .map(|a| self.neighbours[a])
            .collect()
    }

    pub fn is_forward(&self, v: usize, w: usize) -> Option<bool> {
        let range = self.offsets[v]..self.offsets[v + 1];
        let slot = self.neighbours[range.clone()].binary_search(&(w as u32)).ok()?;
        Some(self.forward[range.start + slot])
    }

    /// The other arc orbit.
    pub fn reversed(&self) -> Orientation {
        Orientation {
            offsets: self.offsets.clone(),
            forward: self.forward.iter().map(|f| !f).collect(),
            neighbours: self.neighbours.clone(),
        }
    }

    /// Arcs `(v, w)` in the orientation, in increasing order.
    pub fn arcs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for v in 0..self.offsets.len() - 1 {
            for w in self.out_neighbours(v) {
                out.push((v as u32, w));
            }
        }
        out
    }
}

struct ArcIndex {
    offsets: Vec<usize>,
    neighbours: Vec<u32>,
}

impl ArcIndex {
    fn new(graph: &Graph) -> Self {
        let mut offsets = alloc::vec![0];
        let mut neighbours = Vec::new();
        for v in 0..graph.vertex_count() {
            neighbours.extend_from_slice(graph.neighbours(v));
            offsets.push(neighbours.len());
        }
        ArcIndex {
            offsets,
            neighbours,
        }
    }

    fn len(&self) -> usize {
        self.neighbours.len()
    }

    fn arc(&self, v: usize, w: u32) -> Option<usize> {
        let range = self.offsets[v]..self.offsets[v + 1];
        let slot = self.neighbours[range.clone()].binary_search(&w).ok()?;
        Some(range.start + slot)
    }

    fn tail(&self, arc: usize) -> usize {
        self.offsets.partition_point(|&o| o <= arc) - 1
    }
}

/// Orbits of the group generated by `generators` on the arcs of `graph`,
/// as a label per arc (in [`Orientation`] order) and the number of orbits.
pub fn arc_orbits(graph: &Graph, generators: &[Permutation]) -> Result<(Vec<usize>, usize), Error> {
    let index = ArcIndex::new(graph);
    let mut uf = UnionFind::new(index.len());
    for g in generators {
        for v in 0..graph.vertex_count() {
            let gv = g.image(v as Point) as usize;
            for &w in graph.neighbours(v) {
                let a = index.arc(v, w).expect("listed arc");
                let b = index.arc(gv, g.image(w)).ok_or(Error::NotAutomorphism)?;
                uf.union(a, b);
            }
        }
    }
    let count = uf.class_count();
    Ok((uf.labels(), count))
}

/// Outcome of [`check_oriented`].
#[derive(Clone, Debug)]
pub struct OrientedReport {
    pub is_in_og4: bool,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_orbit_count: usize,
    /// Each arc orbit contains exactly one of the two arcs of every edge.
    pub orbits_split_edges: bool,
    /// The arc orbit containing the arc from vertex 0 to its smallest neighbour.
    pub orientation: Option<Orientation>,
    /// Orbits of the stabilizer of vertex 0 on its neighbours.
    pub stabilizer_orbits: Vec<Vec<u32>>,
}

/// Decides whether the pair is in OG(4): the graph is connected and
/// 4-valent, and the group is transitive on vertices and edges with exactly
/// two arc orbits that are reverses of each other.
pub fn check_oriented(pair: &OrientedPair) -> Result<OrientedReport, Error> {
    let graph = &pair.graph;
    if graph.regular_degree() != Some(4) {
        return Err(Error::NotFourValent);
    }
    if !graph.is_connected() {
        return Err(Error::NotConnected);
    }
    let gens = pair.group.generators();
    let vertex_transitive = pair.group.is_transitive();
    let (labels, arc_orbit_count) = arc_orbits(graph, gens)?;
    let index = ArcIndex::new(graph);
    let mut edge_uf = UnionFind::new(arc_orbit_count);
    let mut orbits_split_edges = true;
    for a in 0..index.len() {
        let v = index.tail(a);
        let w = index.neighbours[a];
        let rev = index.arc(w as usize, v as u32).expect("symmetric adjacency");
        edge_uf.union(labels[a], labels[rev]);
        if labels[a] == labels[rev] {
            orbits_split_edges = false;
        }
    }
    let edge_transitive = edge_uf.class_count() == 1;
    let is_in_og4 = vertex_transitive && edge_transitive && arc_orbit_count == 2 && orbits_split_edges;
    let orientation = is_in_og4.then(|| {
        let chosen = labels[0];
        Orientation {
            offsets: index.offsets.clone(),
            forward: labels.iter().map(|&l| l == chosen).collect(),
            neighbours: index.neighbours.clone(),
        }
    });
    let stab = pair.group.pointwise_stabilizer(&[0])?;
    let mut stabilizer_orbits = Vec::new();
    let mut seen = BTreeSet::new();
    for &w in graph.neighbours(0) {
        if seen.contains(&w) {
            continue;
        }
        let mut orb = stab.orbit(w)?;
        orb.sort_unstable();
        seen.extend(orb.iter().copied());
        stabilizer_orbits.push(orb);
    }
    Ok(OrientedReport {
        is_in_og4,
        vertex_transitive,
        edge_transitive,
        arc_orbit_count,
        orbits_split_edges,
        orientation,
        stabilizer_orbits,
    })
}

/// Oriented s-arc statistics of a G-oriented pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SArcReport {
    /// Largest s for which the group is transitive on oriented s-arcs.
    pub s: usize,
    /// Number of oriented t-arcs for t = 0..=s+1, counted by walking the orientation.
    pub arc_counts: Vec<u128>,
    /// Size of the orbit of the base t-arc for t = 0..=s+1.
    pub orbit_sizes: Vec<u128>,
    pub group_order: u128,
    /// The number of oriented s-arcs equals the group order.
    pub regular: bool,
    /// `|G_(v_0, .., v_(s-i))|` for i = 0..=s.
    pub stabilizer_orders: Vec<u128>,
    /// Every entry of `stabilizer_orders` is `2^i`.
    pub stabilizer_chain_ok: bool,
}

/// Finds the largest s with the group transitive on oriented s-arcs, checks
/// that it acts regularly on them, and that along the base s-arc
/// `(v_0, .., v_s)` the stabilizers of `v_0 .. v_(s-i)` have order `2^i`.
/// The base arc starts at vertex 0 and always moves to the smallest
/// out-neighbour.
pub fn s_arc_report(pair: &OrientedPair) -> Result<SArcReport, Error> {
    let orientation = pair.orientation.as_ref().ok_or(Error::NotOriented)?;
    let n = pair.graph.vertex_count();
    let group_order = pair.group.order();
    let gens = pair.group.generators();

    let mut base: Vec<u32> = alloc::vec![0];
    let mut arc_counts = alloc::vec![n as u128];
    let mut orbit_sizes = alloc::vec![pair.group.orbit(0)?.len() as u128];
    let mut paths = alloc::vec![1u128; n];
    let mut s = 0;
    loop {
        let next: Vec<u128> = (0..n)
            .map(|v| {
                orientation
                    .out_neighbours(v)
                    .iter()
                    .map(|&w| paths[w as usize])
                    .sum()
            })
            .collect();
        paths = next;
        let count: u128 = paths.iter().sum();
        let last = *base.last().expect("nonempty");
        let step = *orientation
            .out_neighbours(last as usize)
            .first()
            .ok_or(Error::NotOriented)?;
        base.push(step);
        arc_counts.push(count);
        let size = orbit_of_walk(&base, gens, orientation, group_order.min(count) + 1)?;
        orbit_sizes.push(size);
        if size != count {
            break;
        }
        s += 1;
        if count > group_order {
            return Err(Error::AssertionFailed(alloc::format!(
                "transitive on {count} oriented arcs but |G| = {group_order}"
            )));
        }
    }
    base.truncate(s + 1);
    let regular = s >= 1 && arc_counts[s] == group_order;
    let mut stabilizer_orders = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let prefix: Vec<Point> = base[..=s - i].to_vec();
        stabilizer_orders.push(pair.group.pointwise_stabilizer(&prefix)?.order());
    }
    let stabilizer_chain_ok = stabilizer_orders
        .iter()
        .enumerate()
        .all(|(i, &o)| o == 1u128 << i);
    Ok(SArcReport {
        s,
        arc_counts,
        orbit_sizes,
        group_order,
        regular,
        stabilizer_orders,
        stabilizer_chain_ok,
    })
}

/// Size of the orbit of a vertex sequence under the generators, stopping
/// once it reaches `cap`. Images must again follow the orientation.
fn orbit_of_walk(walk: &[u32], gens: &[Permutation], orientation: &Orientation, cap: u128) -> Result<u128, Error> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    seen.insert(walk.to_vec());
    let mut queue = alloc::vec![walk.to_vec()];
    while let Some(w) = queue.pop() {
        for g in gens {
            let image: Vec<u32> = w.iter().map(|&x| g.image(x)).collect();
            if seen.contains(&image) {
                continue;
            }
            if image
                .windows(2)
                .any(|e| orientation.is_forward(e[0] as usize, e[1] as usize) != Some(true))
            {
                return Err(Error::NotOriented);
            }
            seen.insert(image.clone());
            if seen.len() as u128 >= cap {
                return Ok(seen.len() as u128);
            }
            queue.push(image);
        }
    }
    Ok(seen.len() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn cycle_graph(n: u32) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn four_cycle_with_dihedral_group_is_rejected() {
        let pair = OrientedPair::new(cycle_graph(4), zoo::dihedral(4)).unwrap();
        assert_eq!(check_oriented(&pair).unwrap_err(), Error::NotFourValent);
        let (_, orbits) = arc_orbits(&pair.graph, pair.group.generators()).unwrap();
        assert_eq!(orbits, 1);
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let g = PermGroup::new(4, alloc::vec![Permutation::parse_cycles(4, "(0 1)").unwrap()]).unwrap();
        assert_eq!(
            OrientedPair::new(cycle_graph(4), g).unwrap_err(),
            Error::NotAutomorphism
        );
    }

    #[test]
    fn orientation_reversal() {
        // The circulant C_8(1, 3) with rotations only has two arc orbits.
        let edges: Vec<(u32, u32)> = (0..8).flat_map(|i| [(i, (i + 1) % 8), (i, (i + 3) % 8)]).collect();
        let graph = Graph::from_edges(8, &edges).unwrap();
        let pair = OrientedPair::new(graph, zoo::cyclic(8)).unwrap();
        let report = check_oriented(&pair).unwrap();
        assert!(report.vertex_transitive);
        assert_eq!(report.arc_orbit_count, 4);
        assert!(!report.is_in_og4);
    }
}
