use std::ops::ControlFlow;

use super::{is_caterpillar, profile, Graph};
use crate::error::{Error, Result};

/// Outcome of a bounded spanning-tree walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Walk {
    /// Every spanning tree was visited.
    Exhausted { visited: usize },
    /// The budget ran out while trees remained.
    Truncated { visited: usize },
    /// The visitor asked to stop.
    Stopped { visited: usize },
}

#[derive(Debug, Clone)]
pub struct SpanningTrees {
    pub trees: Vec<Graph>,
    pub truncated: bool,
}

struct Search<'a, F> {
    order: usize,
    edges: Vec<(usize, usize)>,
    chosen: Vec<usize>,
    visited: usize,
    limit: usize,
    visit: &'a mut F,
    outcome: Option<Walk>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<F: FnMut(&Graph) -> ControlFlow<()>> Search<'_, F> {
    /// Include/exclude recursion over the edge list: including an edge
    /// contracts it (merges components), excluding it deletes it.
    fn recurse(&mut self, next: usize, comp: &[usize]) {
        if self.outcome.is_some() {
            return;
        }
        let needed = self.order - 1 - self.chosen.len();
        if needed == 0 {
            if self.visited == self.limit {
                self.outcome = Some(Walk::Truncated {
                    visited: self.visited,
                });
                return;
            }
            self.visited += 1;
            let tree = Graph::from_edges(self.order, self.chosen.iter().map(|&i| self.edges[i]))
                .expect("chosen edges are a forest of the host");
            if (self.visit)(&tree).is_break() {
                self.outcome = Some(Walk::Stopped {
                    visited: self.visited,
                });
            }
            return;
        }
        if self.edges.len() - next < needed {
            return;
        }
        let (u, v) = self.edges[next];
        if comp[u] != comp[v] {
            let (keep, drop) = (comp[u], comp[v]);
            let merged: Vec<usize> = comp
                .iter()
                .map(|&c| if c == drop { keep } else { c })
                .collect();
            self.chosen.push(next);
            self.recurse(next + 1, &merged);
            self.chosen.pop();
        }
        if self.still_spannable(next + 1, comp) {
            self.recurse(next + 1, comp);
        }
    }

    fn still_spannable(&self, from: usize, comp: &[usize]) -> bool {
        let mut parent: Vec<usize> = comp.to_vec();
        let mut groups = {
            let mut labels = comp.to_vec();
            labels.sort_unstable();
            labels.dedup();
            labels.len()
        };
        for &(u, v) in &self.edges[from..] {
            let (a, b) = (find(&mut parent, comp[u]), find(&mut parent, comp[v]));
            if a != b {
                parent[a] = b;
                groups -= 1;
            }
        }
        groups == 1
    }
}

/// Visits labeled spanning trees of a connected graph, at most `limit`
/// of them.
pub fn for_each_spanning_tree<F>(g: &Graph, limit: usize, mut visit: F) -> Result<Walk>
where
    F: FnMut(&Graph) -> ControlFlow<()>,
{
    if !g.is_connected() {
        return Err(Error::disconnected());
    }
    let mut search = Search {
        order: g.order(),
        edges: g.edges().collect(),
        chosen: Vec::new(),
        visited: 0,
        limit,
        visit: &mut visit,
        outcome: None,
    };
    let comp: Vec<usize> = (0..g.order()).collect();
    search.recurse(0, &comp);
    Ok(search.outcome.unwrap_or(Walk::Exhausted {
        visited: search.visited,
    }))
}

/// Collects up to `limit` spanning trees; `truncated` is set when more exist.
pub fn spanning_trees(g: &Graph, limit: usize) -> Result<SpanningTrees> {
    let mut trees = Vec::new();
    let walk = for_each_spanning_tree(g, limit, |t| {
        trees.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(SpanningTrees {
        trees,
        truncated: matches!(walk, Walk::Truncated { .. }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaterpillarCheck {
    /// All spanning trees are caterpillars of the requested diameter.
    Holds { trees: usize },
    /// A spanning tree that is not a caterpillar of the requested diameter.
    Fails { witness: Graph },
    /// The budget ran out before a verdict.
    Inconclusive { examined: usize },
}

impl CaterpillarCheck {
    pub fn holds(&self) -> bool {
        matches!(self, CaterpillarCheck::Holds { .. })
    }
}

/// Whether every spanning tree of `g` is a caterpillar of diameter `d`.
/// A truncated walk without a counterexample is inconclusive, never a pass.
pub fn all_spanning_trees_caterpillar_of_diameter(
    g: &Graph,
    d: usize,
    limit: usize,
) -> Result<CaterpillarCheck> {
    let mut witness = None;
    let walk = for_each_spanning_tree(g, limit, |t| {
        let ok = is_caterpillar(t).unwrap_or(false)
            && profile(t).map(|p| p.diameter == d).unwrap_or(false);
        if ok {
            ControlFlow::Continue(())
        } else {
            witness = Some(t.clone());
            ControlFlow::Break(())
        }
    })?;
    Ok(match (walk, witness) {
        (_, Some(witness)) => CaterpillarCheck::Fails { witness },
        (Walk::Exhausted { visited }, None) => CaterpillarCheck::Holds { trees: visited },
        (Walk::Truncated { visited } | Walk::Stopped { visited }, None) => {
            CaterpillarCheck::Inconclusive { examined: visited }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn tree_has_itself_as_only_spanning_tree() {
        let g = star(4);
        let st = spanning_trees(&g, 100).unwrap();
        assert_eq!(st.trees, vec![g]);
        assert!(!st.truncated);
    }

    #[test]
    fn cycle_and_complete_counts() {
        assert_eq!(spanning_trees(&cycle(4), 100).unwrap().trees.len(), 4);
        for n in 3..=5usize {
            let st = spanning_trees(&complete(n), 1000).unwrap();
            assert_eq!(st.trees.len(), n.pow(n as u32 - 2));
            assert!(st.trees.iter().all(Graph::is_tree));
            let mut uniq = st.trees.clone();
            uniq.sort_by_key(|t| t.edges().collect::<Vec<_>>());
            uniq.dedup();
            assert_eq!(uniq.len(), st.trees.len());
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let st = spanning_trees(&complete(4), 10).unwrap();
        assert_eq!(st.trees.len(), 10);
        assert!(st.truncated);
        let exact = spanning_trees(&complete(4), 16).unwrap();
        assert!(!exact.truncated);
    }

    #[test]
    fn caterpillar_hypothesis_examples() {
        assert!(all_spanning_trees_caterpillar_of_diameter(&path(5), 4, 10)
            .unwrap()
            .holds());
        assert!(matches!(
            all_spanning_trees_caterpillar_of_diameter(&cycle(6), 3, 10).unwrap(),
            CaterpillarCheck::Fails { .. }
        ));
        // K4: every spanning tree is P4 or K1,3, diameters 3 and 2
        assert!(matches!(
            all_spanning_trees_caterpillar_of_diameter(&complete(4), 3, 100).unwrap(),
            CaterpillarCheck::Fails { .. }
        ));
    }

    #[test]
    fn truncated_check_is_inconclusive() {
        // every spanning tree of C5 is P5 (diameter 4), so no early failure
        let r = all_spanning_trees_caterpillar_of_diameter(&cycle(5), 4, 3).unwrap();
        assert_eq!(r, CaterpillarCheck::Inconclusive { examined: 3 });
        let r = all_spanning_trees_caterpillar_of_diameter(&cycle(5), 4, 5).unwrap();
        assert_eq!(r, CaterpillarCheck::Holds { trees: 5 });
    }
}
