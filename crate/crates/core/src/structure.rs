//! Executable versions of the structural arguments behind the volcano
//! lower bound: the minimum-eccentricity lemmas, the vertex partition
//! relative to a fixed diametral path with its first bound, and the
//! incremental induced-subgraph chain.
//!
//! Throughout, "central" means eccentricity exactly `⌈d/2⌉`, where `d`
//! is the diameter of the host graph, and `C(P)` is the center of the
//! fixed diametral path (one vertex for even `d`, two for odd `d`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, find_diametral_path, profile, DiametralPath, Graph};
use crate::indices::{eci, eci_volcano_closed_form, volcano_increment, EciValue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Lemma1Outcome {
    /// `v` lies on a geodesic between the path endpoints; the witness is
    /// such a geodesic.
    OnDiametralPath {
        witness: Vec<usize>,
    },
    /// Odd diameter only: `v` is adjacent to both centers of the path.
    AdjacentToBothCenters,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Check {
    pub vertex: usize,
    pub eccentricity: usize,
    pub outcome: Lemma1Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub diameter: usize,
    pub path: Vec<usize>,
    pub checks: Vec<Lemma1Check>,
}

impl Lemma1Report {
    pub fn violations(&self) -> impl Iterator<Item = &Lemma1Check> {
        self.checks
            .iter()
            .filter(|c| c.outcome == Lemma1Outcome::Violation)
    }

    pub fn passed(&self) -> bool {
        self.violations().next().is_none()
    }
}

/// Trace `from` back to the root of a BFS layering given by `dist`,
/// always stepping to the lowest-index neighbor one layer closer.
fn descend(g: &Graph, dist: &[usize], from: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut cur = from;
    while dist[cur] > 0 {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dist[w] + 1 == dist[cur])
            .expect("BFS layer has a predecessor");
        out.push(cur);
    }
    out
}

/// Checks every off-path vertex of eccentricity `⌈d/2⌉` against the
/// minimum-eccentricity lemma: it must lie on a geodesic joining the path
/// endpoints or, for odd `d`, be adjacent to both path centers.
pub fn check_lemma1(g: &Graph, path: &DiametralPath) -> Result<Lemma1Report> {
    let path = DiametralPath::new(g, path.vertices().to_vec())?;
    let p = profile(g)?;
    let d = p.diameter;
    let central = p.half_diameter_ceil();
    let from_start = bfs_distances(g, path.start())?;
    let from_end = bfs_distances(g, path.end())?;
    let centers = path.center();

    let checks = (0..g.order())
        .filter(|&v| !path.contains(v) && p.eccentricity[v] == central)
        .map(|v| {
            let outcome = if from_start[v] + from_end[v] == d {
                let mut witness = descend(g, &from_start, v);
                witness.reverse();
                witness.extend(descend(g, &from_end, v).into_iter().skip(1));
                Lemma1Outcome::OnDiametralPath { witness }
            } else if d % 2 == 1 && centers.iter().all(|&c| g.has_edge(v, c)) {
                Lemma1Outcome::AdjacentToBothCenters
            } else {
                Lemma1Outcome::Violation
            };
            Lemma1Check {
                vertex: v,
                eccentricity: p.eccentricity[v],
                outcome,
            }
        })
        .collect();
    Ok(Lemma1Report {
        diameter: d,
        path: path.vertices().to_vec(),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub diameter: usize,
    /// Vertices with eccentricity `⌈d/2⌉`.
    pub checked: Vec<usize>,
    /// Those among them with degree below 2.
    pub violations: Vec<usize>,
}

impl Lemma2Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every vertex of eccentricity `⌈d/2⌉` must have degree at least 2.
pub fn check_lemma2(g: &Graph) -> Result<Lemma2Report> {
    let p = profile(g)?;
    if p.diameter < 2 {
        return Err(Error::input(format!(
            "degree lemma needs diameter >= 2, got {}",
            p.diameter
        )));
    }
    let central = p.half_diameter_ceil();
    let checked: Vec<usize> = (0..g.order())
        .filter(|&v| p.eccentricity[v] == central)
        .collect();
    let violations = checked
        .iter()
        .copied()
        .filter(|&v| p.degree[v] < 2)
        .collect();
    Ok(Lemma2Report {
        diameter: p.diameter,
        checked,
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    OnPathCentral,
    OnPathNoncentral,
    OffPathCentralAdjacent,
    OffPathCentralNonadjacent,
    OffPathNoncentralAdjacent,
    OffPathNoncentralNonadjacent,
}

impl VertexClass {
    pub fn label(self) -> &'static str {
        match self {
            VertexClass::OnPathCentral => "P_c",
            VertexClass::OnPathNoncentral => "P_c'",
            VertexClass::OffPathCentralAdjacent => "P'_cc",
            VertexClass::OffPathCentralNonadjacent => "P'_cc'",
            VertexClass::OffPathNoncentralAdjacent => "P'_c'c",
            VertexClass::OffPathNoncentralNonadjacent => "P'_c'c'",
        }
    }
}

/// Sizes of the off-path classes: `n1` central, `n2` non-central, each
/// split by adjacency to the path center (`*1` adjacent, `*2` not).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PartitionCounts {
    pub n1: usize,
    pub n2: usize,
    pub n11: usize,
    pub n12: usize,
    pub n21: usize,
    pub n22: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiametralPartition {
    pub path: DiametralPath,
    pub order: usize,
    pub diameter: usize,
    pub classes: Vec<VertexClass>,
    pub counts: PartitionCounts,
}

impl DiametralPartition {
    pub fn members(&self, class: VertexClass) -> Vec<usize> {
        (0..self.order)
            .filter(|&v| self.classes[v] == class)
            .collect()
    }

    /// The counting identities `n1 + n2 = n - d - 1`, `n11 + n12 = n1`,
    /// `n21 + n22 = n2`.
    pub fn identities_hold(&self) -> bool {
        let c = &self.counts;
        c.n1 + c.n2 + self.diameter + 1 == self.order
            && c.n11 + c.n12 == c.n1
            && c.n21 + c.n22 == c.n2
    }
}

pub fn partition(g: &Graph, path: &DiametralPath) -> Result<DiametralPartition> {
    let path = DiametralPath::new(g, path.vertices().to_vec())?;
    let p = profile(g)?;
    Ok(partition_unchecked(g, path, &p.eccentricity, p.diameter))
}

/// Partition against the default diametral path of `g`.
pub fn partition_default(g: &Graph) -> Result<DiametralPartition> {
    let p = profile(g)?;
    let path = find_diametral_path(g)?;
    Ok(partition_unchecked(g, path, &p.eccentricity, p.diameter))
}

fn partition_unchecked(
    g: &Graph,
    path: DiametralPath,
    eccentricity: &[usize],
    diameter: usize,
) -> DiametralPartition {
    let central = diameter.div_ceil(2);
    let centers = path.center();
    let mut counts = PartitionCounts::default();
    let classes = (0..g.order())
        .map(|v| {
            let is_central = eccentricity[v] == central;
            if path.contains(v) {
                return if is_central {
                    VertexClass::OnPathCentral
                } else {
                    VertexClass::OnPathNoncentral
                };
            }
            let adjacent = centers.iter().any(|&c| g.has_edge(v, c));
            match (is_central, adjacent) {
                (true, true) => {
                    counts.n1 += 1;
                    counts.n11 += 1;
                    VertexClass::OffPathCentralAdjacent
                }
                (true, false) => {
                    counts.n1 += 1;
                    counts.n12 += 1;
                    VertexClass::OffPathCentralNonadjacent
                }
                (false, true) => {
                    counts.n2 += 1;
                    counts.n21 += 1;
                    VertexClass::OffPathNoncentralAdjacent
                }
                (false, false) => {
                    counts.n2 += 1;
                    counts.n22 += 1;
                    VertexClass::OffPathNoncentralNonadjacent
                }
            }
        })
        .collect();
    DiametralPartition {
        path,
        order: g.order(),
        diameter,
        classes,
        counts,
    }
}

/// First bound of the parity-split estimate, evaluated from the partition
/// counters. Even `d`:
///
/// `3d²/2 + n21·d/2 + (2n1 + n22)(d/2 + 1) + n1·d + n21(d/2 + 1) + n22(d/2 + 1)`
///
/// Odd `d`:
///
/// `3d²/2 + 1/2 + (2n11 + n21)(d+1)/2 + (2n12 + n22)(d+3)/2 + n1·d + n21(d+3)/2 + n22(d+3)/2`
pub fn partition_lower_bound(p: &DiametralPartition) -> Result<EciValue> {
    let d = p.diameter as u64;
    if d < 3 {
        return Err(Error::input(format!(
            "partition bound needs d >= 3, got {d}"
        )));
    }
    let c = p.counts;
    let [n1, n11, n12, n21, n22] = [c.n1, c.n11, c.n12, c.n21, c.n22].map(|x| x as u64);
    let doubled = if d.is_multiple_of(2) {
        3 * d * d + n21 * d + (2 * n1 + n22) * (d + 2) + 2 * n1 * d + (n21 + n22) * (d + 2)
    } else {
        3 * d * d
            + 1
            + (2 * n11 + n21) * (d + 1)
            + (2 * n12 + n22) * (d + 3)
            + 2 * n1 * d
            + (n21 + n22) * (d + 3)
    };
    debug_assert!(doubled % 2 == 0);
    let bound = EciValue(doubled / 2);
    if p.identities_hold() {
        let volcano = eci_volcano_closed_form(p.order as u64, d)?;
        assert!(
            bound >= volcano,
            "partition bound {bound} below volcano value {volcano}"
        );
    }
    Ok(bound)
}

/// One induced subgraph `G_i` in the incremental chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub step_index: usize,
    pub added_vertex: Option<usize>,
    pub subgraph_order: usize,
    pub subgraph_diameter: usize,
    pub subgraph_eci: EciValue,
    pub volcano_reference: EciValue,
    /// `eci(G_i) - eci(G_{i-1})`; absent for `G_0`.
    pub delta: Option<i64>,
}

/// Builds `G_0 ⊂ G_1 ⊂ ... ⊂ G_k = G`: `G_0` is induced by the default
/// diametral path and each step adds the lowest-index vertex adjacent to
/// the current subgraph. Every step is recomputed from scratch.
pub fn build_chain(g: &Graph) -> Result<Vec<ChainStep>> {
    let p = profile(g)?;
    let d = p.diameter;
    if d < 2 {
        return Err(Error::input(format!("chain needs diameter >= 2, got {d}")));
    }
    let path = find_diametral_path(g)?;
    let mut members: Vec<usize> = path.vertices().to_vec();
    let mut inside = vec![false; g.order()];
    for &v in &members {
        inside[v] = true;
    }

    let mut steps = Vec::with_capacity(g.order() - d);
    let record =
        |members: &[usize], added: Option<usize>, steps: &mut Vec<ChainStep>| -> Result<()> {
            let sub = g.induced_subgraph(members)?;
            let sub_eci = eci(&sub)?;
            let delta = steps
                .last()
                .map(|s: &ChainStep| sub_eci.get() as i64 - s.subgraph_eci.get() as i64);
            steps.push(ChainStep {
                step_index: steps.len(),
                added_vertex: added,
                subgraph_order: members.len(),
                subgraph_diameter: profile(&sub)?.diameter,
                subgraph_eci: sub_eci,
                volcano_reference: eci_volcano_closed_form(members.len() as u64, d as u64)?,
                delta,
            });
            Ok(())
        };

    record(&members, None, &mut steps)?;
    while members.len() < g.order() {
        let next = (0..g.order())
            .find(|&v| !inside[v] && g.neighbors(v).iter().any(|&w| inside[w]))
            .expect("connected graph always has a frontier vertex");
        inside[next] = true;
        members.push(next);
        record(&members, Some(next), &mut steps)?;
    }
    Ok(steps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub step_index: usize,
    pub delta: i64,
    pub meets_floor: bool,
    pub matches_volcano_increment: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub diameter: usize,
    /// `⌈d/2⌉ + (⌈d/2⌉ + 1)`, the per-step contribution floor.
    pub floor: i64,
    pub steps: Vec<StepCheck>,
    /// Steps whose delta fell below the floor (diagnostic only).
    pub floor_failures: Vec<usize>,
    pub final_eci: EciValue,
    pub final_reference: EciValue,
    pub final_holds: bool,
    /// Whether the final inequality is asserted (`d >= 3`).
    pub asserted: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        !self.asserted || self.final_holds
    }
}

pub fn check_chain_deltas(chain: &[ChainStep], d: usize) -> Result<ChainReport> {
    let last = chain
        .last()
        .ok_or_else(|| Error::input("chain has no steps"))?;
    let half = d.div_ceil(2) as i64;
    let floor = 2 * half + 1;
    let increment = volcano_increment(d as u64) as i64;
    let steps: Vec<StepCheck> = chain
        .iter()
        .filter_map(|s| {
            s.delta.map(|delta| StepCheck {
                step_index: s.step_index,
                delta,
                meets_floor: delta >= floor,
                matches_volcano_increment: delta == increment,
            })
        })
        .collect();
    let floor_failures = steps
        .iter()
        .filter(|s| !s.meets_floor)
        .map(|s| s.step_index)
        .collect();
    Ok(ChainReport {
        diameter: d,
        floor,
        steps,
        floor_failures,
        final_eci: last.subgraph_eci,
        final_reference: last.volcano_reference,
        final_holds: last.subgraph_eci >= last.volcano_reference,
        asserted: d >= 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_cycle, make_path, make_star, make_volcano};

    /// C8-like: two internally disjoint geodesics 0-1-2-3-4 and
    /// 0-5-6-7-4, plus the chord 2-6 pulling vertex 6 into the middle.
    fn two_geodesics_with_chord() -> Graph {
        Graph::from_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (2, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn lemma1_vacuous_on_c6() {
        let g = make_cycle(6).unwrap();
        let path = find_diametral_path(&g).unwrap();
        let r = check_lemma1(&g, &path).unwrap();
        assert!(r.checks.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn lemma1_finds_second_geodesic() {
        let g = two_geodesics_with_chord();
        let path = find_diametral_path(&g).unwrap();
        assert_eq!(path.vertices(), &[0, 1, 2, 3, 4]);
        let r = check_lemma1(&g, &path).unwrap();
        assert_eq!(r.diameter, 4);
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].vertex, 6);
        assert_eq!(
            r.checks[0].outcome,
            Lemma1Outcome::OnDiametralPath {
                witness: vec![0, 5, 6, 7, 4]
            }
        );
    }

    #[test]
    fn lemma1_vacuous_on_volcano() {
        let g = make_volcano(7, 3, None).unwrap();
        let path = find_diametral_path(&g).unwrap();
        let r = check_lemma1(&g, &path).unwrap();
        assert!(r.checks.is_empty());
    }

    #[test]
    fn lemma1_adjacent_to_both_centers() {
        // P4 plus a vertex joined to both middle vertices
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap();
        let path = find_diametral_path(&g).unwrap();
        let r = check_lemma1(&g, &path).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].outcome, Lemma1Outcome::AdjacentToBothCenters);
    }

    #[test]
    fn lemma1_rejects_non_diametral_path() {
        let g = make_cycle(6).unwrap();
        let short = DiametralPath::new(&make_path(3).unwrap(), vec![0, 1, 2]).unwrap();
        assert!(matches!(check_lemma1(&g, &short), Err(Error::Input(_))));
    }

    #[test]
    fn lemma2_examples() {
        let r = check_lemma2(&make_star(6).unwrap()).unwrap();
        assert_eq!(r.checked, vec![0]);
        assert!(r.passed());
        let r = check_lemma2(&make_path(5).unwrap()).unwrap();
        assert_eq!(r.checked, vec![2]);
        assert!(r.passed());
        assert!(check_lemma2(&make_path(2).unwrap()).is_err());
    }

    #[test]
    fn partition_examples() {
        let v84 = make_volcano(8, 4, None).unwrap();
        let p = partition_default(&v84).unwrap();
        assert_eq!(
            p.counts,
            PartitionCounts {
                n1: 0,
                n2: 3,
                n11: 0,
                n12: 0,
                n21: 3,
                n22: 0
            }
        );
        assert!(p.identities_hold());
        assert_eq!(partition_lower_bound(&p).unwrap(), EciValue(39));
        assert_eq!(partition_lower_bound(&p).unwrap(), eci(&v84).unwrap());

        let p5 = partition_default(&make_path(5).unwrap()).unwrap();
        assert_eq!(p5.counts, PartitionCounts::default());

        let v73 = partition_default(&make_volcano(7, 3, None).unwrap()).unwrap();
        assert_eq!(
            v73.counts,
            PartitionCounts {
                n1: 0,
                n2: 3,
                n11: 0,
                n12: 0,
                n21: 3,
                n22: 0
            }
        );
        assert_eq!(v73.members(VertexClass::OnPathCentral), vec![1, 2]);
    }

    #[test]
    fn partition_bound_of_path_is_its_eci() {
        let p8 = make_path(8).unwrap();
        let p = partition_default(&p8).unwrap();
        assert_eq!(partition_lower_bound(&p).unwrap(), EciValue(74));
        assert_eq!(eci(&p8).unwrap(), EciValue(74));
    }

    // Two leaves hang off a central vertex that is not on the path. Each is
    // charged (d+3)/2 for its edge, but the far end has eccentricity (d+1)/2.
    #[test]
    fn partition_bound_exceeds_eci_on_known_graph() {
        let g =
            Graph::from_edges(7, [(0, 6), (1, 5), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)]).unwrap();
        let p = partition_default(&g).unwrap();
        assert!(p.identities_hold());
        assert_eq!(
            (p.counts.n1, p.counts.n11, p.counts.n2, p.counts.n22),
            (1, 1, 2, 2)
        );
        assert_eq!(eci(&g).unwrap(), EciValue(32));
        assert_eq!(partition_lower_bound(&p).unwrap(), EciValue(33));
        assert_eq!(eci_volcano_closed_form(7, 3).unwrap(), EciValue(29));
    }

    #[test]
    fn partition_bound_rejects_small_diameter() {
        let p = partition_default(&make_star(5).unwrap()).unwrap();
        assert!(partition_lower_bound(&p).is_err());
    }

    #[test]
    fn chain_of_volcano_is_tight() {
        let g = make_volcano(9, 4, None).unwrap();
        let chain = build_chain(&g).unwrap();
        assert_eq!(chain.len(), 5);
        assert!(chain.iter().all(|s| s.subgraph_eci == s.volcano_reference));
        let r = check_chain_deltas(&chain, 4).unwrap();
        assert!(r.steps.iter().all(|s| s.delta == 5 && s.meets_floor));
        assert!(r.passed());
    }

    #[test]
    fn chain_of_path_is_single_step() {
        let chain = build_chain(&make_path(6).unwrap()).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].subgraph_eci, EciValue(38));
        assert_eq!(chain[0].volcano_reference, EciValue(38));
        let r = check_chain_deltas(&chain, 5).unwrap();
        assert!(r.steps.is_empty());
        assert!(r.final_holds);
    }

    #[test]
    fn chain_of_c6() {
        let chain = build_chain(&make_cycle(6).unwrap()).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0].subgraph_order, 4);
        assert_eq!(chain[1].added_vertex, Some(4));
        assert_eq!(chain[1].subgraph_diameter, 4);
        assert_eq!(chain[2].subgraph_eci, EciValue(36));
        assert_eq!(chain[2].volcano_reference, EciValue(24));
        let r = check_chain_deltas(&chain, 3).unwrap();
        assert!(r.final_holds && r.asserted);
    }
}
