//! Graph-to-hypergraph lifting constructions and their projections.
//!
//! Both lifts replace each vertex of a rank-2 graph with a block of copies
//! and each graph edge with a single hyperedge over the two blocks. The
//! projections map weak maximal independent sets of the lift back to
//! maximal independent sets of the original graph.

use crate::verify;

use super::{Hypergraph, HypergraphError, VertexId, VertexSet};

/// A lifted hypergraph with the maps between original and copied vertices.
#[derive(Debug, Clone)]
pub struct Lift {
    pub hypergraph: Hypergraph,
    copies_of: Vec<Vec<VertexId>>,
    origin_of: Vec<VertexId>,
}

impl Lift {
    /// The copies of original vertex `v`, in ascending ID order.
    pub fn copies_of(&self, v: VertexId) -> &[VertexId] {
        &self.copies_of[v as usize]
    }

    /// The original vertex a lifted vertex came from.
    pub fn origin_of(&self, lifted: VertexId) -> VertexId {
        self.origin_of[lifted as usize]
    }
}

fn require_rank2(g: &Hypergraph) -> Result<(), HypergraphError> {
    for (index, edge) in g.edges().iter().enumerate() {
        if edge.len() != 2 {
            return Err(HypergraphError::NotRank2 {
                index,
                size: edge.len(),
            });
        }
    }
    Ok(())
}

fn build_lift(g: &Hypergraph, copies: usize) -> Lift {
    let n = g.vertex_count();
    let mut copies_of = Vec::with_capacity(n);
    let mut origin_of = Vec::with_capacity(n * copies);
    for v in 0..n {
        let block: Vec<VertexId> = (0..copies).map(|c| (v * copies + c) as VertexId).collect();
        copies_of.push(block);
        for _ in 0..copies {
            origin_of.push(v as VertexId);
        }
    }
    let edges: Vec<Vec<VertexId>> = g
        .edges()
        .iter()
        .map(|e| {
            let mut members = copies_of[e[0] as usize].clone();
            members.extend_from_slice(&copies_of[e[1] as usize]);
            members
        })
        .collect();
    let hypergraph = Hypergraph::new(n * copies, edges).expect("lift edges are valid");
    Lift {
        hypergraph,
        copies_of,
        origin_of,
    }
}

/// Lift a rank-2 graph to a hypergraph of even rank `target_rank`: each
/// vertex becomes `target_rank / 2` copies and each graph edge one
/// hyperedge over all copies of its endpoints.
pub fn lift_graph_even_rank(g: &Hypergraph, target_rank: usize) -> Result<Lift, HypergraphError> {
    require_rank2(g)?;
    if target_rank < 2 || !target_rank.is_multiple_of(2) {
        return Err(HypergraphError::BadLiftParameter(format!(
            "target rank must be even and at least 2, got {target_rank}"
        )));
    }
    Ok(build_lift(g, target_rank / 2))
}

/// Lift a rank-2 graph to a hypergraph of rank `2k` for odd `k`: each
/// vertex becomes `k` copies.
pub fn lift_graph_k_copies(g: &Hypergraph, k: usize) -> Result<Lift, HypergraphError> {
    require_rank2(g)?;
    if k < 1 || k.is_multiple_of(2) {
        return Err(HypergraphError::BadLiftParameter(format!(
            "copy count must be odd and at least 1, got {k}"
        )));
    }
    Ok(build_lift(g, k))
}

/// Project a 1-weak MIS of an even-rank lift back to `g`: a vertex is
/// selected when any of its copies is. The input is checked; the output is
/// asserted to be an MIS of `g`.
pub fn project_even_rank_mis(
    g: &Hypergraph,
    lift: &Lift,
    lifted_set: &VertexSet,
) -> Result<VertexSet, HypergraphError> {
    let report = verify::is_k_weak_maximal(&lift.hypergraph, lifted_set, 1);
    if !report.pass {
        return Err(HypergraphError::InvalidInput(
            "lifted set is not a 1-weak MIS of the lift".into(),
        ));
    }
    let members = (0..g.vertex_count() as VertexId)
        .filter(|&v| lift.copies_of(v).iter().any(|&c| lifted_set.contains(c)));
    let projected = VertexSet::from_members(g.vertex_count(), members, "project_even_rank_mis");
    assert!(
        verify::is_k_weak_maximal(g, &projected, 1).pass,
        "projection of a valid 1-weak MIS must be an MIS of the base graph"
    );
    Ok(projected)
}

/// Project a k-weak MIS of a k-copies lift back to `g` by majority: a
/// vertex is selected when strictly more than `k/2` of its copies are in
/// the set. The input is checked; the output is asserted to be an MIS.
pub fn project_k_weak_majority(
    g: &Hypergraph,
    lift: &Lift,
    lifted_set: &VertexSet,
    k: usize,
) -> Result<VertexSet, HypergraphError> {
    let report = verify::is_k_weak_maximal(&lift.hypergraph, lifted_set, k);
    if !report.pass {
        return Err(HypergraphError::InvalidInput(
            "lifted set is not a k-weak MIS of the lift".into(),
        ));
    }
    let members = (0..g.vertex_count() as VertexId).filter(|&v| {
        let in_set = lift
            .copies_of(v)
            .iter()
            .filter(|&&c| lifted_set.contains(c))
            .count();
        2 * in_set > k
    });
    let projected = VertexSet::from_members(g.vertex_count(), members, "project_k_weak_majority");
    assert!(
        verify::is_k_weak_maximal(g, &projected, 1).pass,
        "majority projection of a valid k-weak MIS must be an MIS of the base graph"
    );
    Ok(projected)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(VertexId, VertexId)]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|&(u, v)| vec![u, v]).collect()).unwrap()
    }

    #[test]
    fn even_rank_lift_of_single_edge() {
        let g = graph(2, &[(0, 1)]);
        let lift = lift_graph_even_rank(&g, 4).unwrap();
        // Copies of 0 are {0,1}, copies of 1 are {2,3}; one hyperedge on all.
        assert_eq!(lift.hypergraph.edges(), &[vec![0, 1, 2, 3]]);
        assert_eq!(lift.copies_of(0), &[0, 1]);
        assert_eq!(lift.origin_of(3), 1);
    }

    #[test]
    fn even_rank_lift_with_rank_2_is_identity_up_to_renaming() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let lift = lift_graph_even_rank(&g, 2).unwrap();
        assert_eq!(lift.hypergraph.edges(), g.edges());
    }

    #[test]
    fn even_rank_lift_of_triangle() {
        let g = graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let lift = lift_graph_even_rank(&g, 6).unwrap();
        assert_eq!(lift.hypergraph.vertex_count(), 9);
        assert_eq!(lift.hypergraph.edge_count(), 3);
        assert!(lift.hypergraph.edges().iter().all(|e| e.len() == 6));
    }

    #[test]
    fn even_rank_lift_rejects_bad_parameters() {
        let g = graph(2, &[(0, 1)]);
        assert!(lift_graph_even_rank(&g, 3).is_err());
        assert!(lift_graph_even_rank(&g, 0).is_err());
        let not_graph = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(lift_graph_even_rank(&not_graph, 4).is_err());
    }

    #[test]
    fn k_copies_lift_construction() {
        let g = graph(2, &[(0, 1)]);
        let lift = lift_graph_k_copies(&g, 3).unwrap();
        assert_eq!(lift.hypergraph.edges(), &[vec![0, 1, 2, 3, 4, 5]]);

        // Star with center 0: three hyperedges of size 6 sharing the center's copies.
        let star = graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let lift = lift_graph_k_copies(&star, 3).unwrap();
        assert_eq!(lift.hypergraph.edge_count(), 3);
        assert!(lift.hypergraph.edges().iter().all(|e| e.len() == 6));
        for e in lift.hypergraph.edges() {
            assert!(e.starts_with(&[0, 1, 2]));
        }

        assert!(lift_graph_k_copies(&g, 2).is_err());
    }

    #[test]
    fn k_copies_with_one_copy_matches_even_rank_2() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let a = lift_graph_k_copies(&g, 1).unwrap();
        let b = lift_graph_even_rank(&g, 2).unwrap();
        assert_eq!(a.hypergraph, b.hypergraph);
    }

    #[test]
    fn projection_of_single_edge_lift() {
        let g = graph(2, &[(0, 1)]);
        let lift = lift_graph_even_rank(&g, 4).unwrap();
        // {0} is a 1-weak MIS of the lift: the only edge holds copy 0, and
        // every other copy shares that edge.
        let s = VertexSet::from_members(4, [0], "test");
        let projected = project_even_rank_mis(&g, &lift, &s).unwrap();
        assert_eq!(projected.members(), vec![0]);
    }

    #[test]
    fn projection_rejects_invalid_input() {
        let g = graph(2, &[(0, 1)]);
        let lift = lift_graph_even_rank(&g, 4).unwrap();
        // Two copies in one edge: not 1-weak.
        let s = VertexSet::from_members(4, [0, 2], "test");
        assert!(project_even_rank_mis(&g, &lift, &s).is_err());
        // Empty set: not maximal.
        let empty = VertexSet::empty(4, "test");
        assert!(project_even_rank_mis(&g, &lift, &empty).is_err());
    }

    #[test]
    fn majority_projection_thresholds() {
        let g = graph(2, &[(0, 1)]);
        let lift = lift_graph_k_copies(&g, 3).unwrap();
        // Copies of 0 are {0,1,2}; 2 of 3 copies is a majority, 1 is not.
        let s = VertexSet::from_members(6, [0, 1, 3], "test");
        assert!(verify::is_k_weak_maximal(&lift.hypergraph, &s, 3).pass);
        let projected = project_k_weak_majority(&g, &lift, &s, 3).unwrap();
        assert_eq!(projected.members(), vec![0]);
    }

    #[test]
    fn isolated_vertices_project_through() {
        let g = graph(3, &[(0, 1)]);
        let lift = lift_graph_even_rank(&g, 4).unwrap();
        // Vertex 2 is isolated: its copies {4,5} must all be in any 1-weak
        // MIS of the lift (no edge can saturate for them).
        let s = VertexSet::from_members(6, [0, 4, 5], "test");
        let projected = project_even_rank_mis(&g, &lift, &s).unwrap();
        assert_eq!(projected.members(), vec![0, 2]);
    }
}
