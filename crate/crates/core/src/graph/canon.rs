//! Canonical forms by exhaustive search over vertex orderings.
//!
//! The certificate is the lexicographically largest upper-triangle bit
//! string (graph6 column order) over all orderings that list vertices by
//! non-increasing degree. Branches are cut when their prefix falls below
//! the best prefix found so far, and interchangeable twins (vertices with
//! the same neighborhood apart from each other) are tried only once per
//! level.

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_CANON_CAP: usize = 10;
const HARD_CAP: usize = 31;

/// Byte string identifying an isomorphism class: the order followed by the
/// canonical upper-triangle bits packed MSB first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalForm {
    certificate: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.certificate
    }

    pub fn order(&self) -> usize {
        self.certificate[0] as usize
    }

    /// The canonically labeled representative of the class.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = self.certificate[1 + bit / 8];
                if byte >> (7 - bit % 8) & 1 == 1 {
                    g.add_edge(i, j)
                        .expect("certificate encodes a simple graph");
                }
                bit += 1;
            }
        }
        g
    }
}

struct Search<'a> {
    n: usize,
    adj: Vec<u32>,
    slot_degree: Vec<usize>,
    degree: &'a [usize],
    cur: Vec<u32>,
    order: Vec<usize>,
    best: Option<Vec<u32>>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    /// Column `level` of the adjacency matrix when `v` is placed there:
    /// bit `31 - i` is set iff `v` is adjacent to the vertex at position `i`.
    fn column(&self, v: usize, level: usize) -> u32 {
        let mut col = 0u32;
        for (i, &u) in self.order[..level].iter().enumerate() {
            if self.adj[v] >> u & 1 == 1 {
                col |= 1 << (31 - i);
            }
        }
        col
    }

    fn prefix_vs_best(&self, level: usize, col: u32) -> std::cmp::Ordering {
        match &self.best {
            None => std::cmp::Ordering::Greater,
            Some(best) => self.cur[..level]
                .iter()
                .chain(std::iter::once(&col))
                .cmp(best[..=level].iter()),
        }
    }

    fn dfs(&mut self, level: usize, placed: u32) {
        if level == self.n {
            if self.best.as_ref().is_none_or(|b| self.cur > *b) {
                self.best = Some(self.cur.clone());
                self.best_order = self.order.clone();
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for v in 0..self.n {
            if placed >> v & 1 == 1 || self.degree[v] != self.slot_degree[level] {
                continue;
            }
            let twin_of_tried = tried.iter().any(|&t| {
                let without_t = self.adj[v] & !(1 << t);
                let without_v = self.adj[t] & !(1 << v);
                without_t == without_v
            });
            if twin_of_tried {
                continue;
            }
            tried.push(v);
            let col = self.column(v, level);
            if self.prefix_vs_best(level, col) == std::cmp::Ordering::Less {
                continue;
            }
            self.cur.push(col);
            self.order.push(v);
            self.dfs(level + 1, placed | 1 << v);
            self.order.pop();
            self.cur.pop();
        }
    }
}

/// Canonical ordering: `result[k]` is the vertex placed at position `k`.
fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let degree = g.degrees();
    let mut slot_degree = degree.clone();
    slot_degree.sort_unstable_by(|a, b| b.cmp(a));
    let adj = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut search = Search {
        n,
        adj,
        slot_degree,
        degree: &degree,
        cur: Vec::with_capacity(n),
        order: Vec::with_capacity(n),
        best: None,
        best_order: Vec::new(),
    };
    search.dfs(0, 0);
    search.best_order
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    let n = g.order();
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::Capacity {
            what: "canonical form order",
            value: n,
            cap,
        });
    }
    let order = canonical_order(g);
    let mut position = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut certificate = vec![0u8; 1 + bits.div_ceil(8)];
    certificate[0] = n as u8;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(order[i], order[j]) {
                certificate[1 + bit / 8] |= 1 << (7 - bit % 8);
            }
            bit += 1;
        }
    }
    Ok(CanonicalForm { certificate })
}
