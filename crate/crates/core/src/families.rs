//! Constructors for the extremal families and a few test fixtures.
//!
//! Labeling is deterministic: path vertices come first (`0..=d` for a
//! volcano, `0..d` for brooms and lollipops), extra vertices follow.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Volcano,
    Broom,
    Lollipop,
    Star,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Path,
        Family::Volcano,
        Family::Broom,
        Family::Lollipop,
        Family::Star,
        Family::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Volcano => "volcano",
            Family::Broom => "broom",
            Family::Lollipop => "lollipop",
            Family::Star => "star",
            Family::Cycle => "cycle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::input(format!("unknown family {s:?}")))
    }
}

/// Parameters naming one member of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub d: Option<usize>,
    pub split: Option<(usize, usize)>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        let need_d = || {
            self.d
                .ok_or_else(|| Error::input(format!("{} needs a diameter parameter", self.family)))
        };
        if self.split.is_some() && self.family != Family::Volcano {
            return Err(Error::input("split only applies to volcano graphs"));
        }
        match self.family {
            Family::Path => make_path(self.n),
            Family::Volcano => make_volcano(self.n, need_d()?, self.split),
            Family::Broom => make_broom(self.n, need_d()?),
            Family::Lollipop => make_lollipop(self.n, need_d()?),
            Family::Star => make_star(self.n),
            Family::Cycle => make_cycle(self.n),
        }
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn make_path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input(format!("path needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Splits `extra` pendant vertices over the path centers. For even `d`
/// there is one center and the split must be absent or `(extra, 0)`; for
/// odd `d` the default puts everything on the lower center.
fn volcano_split(n: usize, d: usize, split: Option<(usize, usize)>) -> Result<(usize, usize)> {
    let extra = n - d - 1;
    match split {
        None => Ok((extra, 0)),
        Some((a, b)) if a + b != extra => Err(Error::input(format!(
            "split ({a}, {b}) must sum to n - d - 1 = {extra}"
        ))),
        Some((a, b)) if d.is_multiple_of(2) && b != 0 => Err(Error::input(format!(
            "even diameter has a single center; split ({a}, {b}) is invalid"
        ))),
        Some(s) => Ok(s),
    }
}

/// Volcano graph: path `v_0 ... v_d` with the remaining `n - d - 1`
/// vertices pendant on the path center(s).
pub fn make_volcano(n: usize, d: usize, split: Option<(usize, usize)>) -> Result<Graph> {
    if d < 2 || n < d + 1 {
        return Err(Error::input(format!(
            "volcano needs d >= 2 and n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    let (low, high) = volcano_split(n, d, split)?;
    let (c_low, c_high) = if d.is_multiple_of(2) {
        (d / 2, d / 2)
    } else {
        ((d - 1) / 2, d.div_ceil(2))
    };
    let mut g = Graph::from_edges(n, (1..=d).map(|i| (i - 1, i)))?;
    let mut next = d + 1;
    for (center, count) in [(c_low, low), (c_high, high)] {
        for _ in 0..count {
            g.add_edge(center, next)?;
            next += 1;
        }
    }
    Ok(g)
}

/// Every split `(a, b)` giving a volcano of order `n` and diameter `d`.
/// Mirror images `(a, b)` and `(b, a)` are both listed.
pub fn volcano_splits(n: usize, d: usize) -> Vec<(usize, usize)> {
    if d < 2 || n < d + 1 {
        return Vec::new();
    }
    let extra = n - d - 1;
    if d.is_multiple_of(2) {
        vec![(extra, 0)]
    } else {
        (0..=extra).map(|a| (a, extra - a)).collect()
    }
}

/// Broom: path on `d` vertices `0 ... d-1` plus `n - d` pendants on
/// vertex `d - 1`, so the diameter is `d`.
pub fn make_broom(n: usize, d: usize) -> Result<Graph> {
    if d < 3 || n <= d {
        return Err(Error::input(format!(
            "broom needs n > d >= 3, got n = {n}, d = {d}"
        )));
    }
    let mut g = Graph::from_edges(n, (1..d).map(|i| (i - 1, i)))?;
    for leaf in d..n {
        g.add_edge(d - 1, leaf)?;
    }
    Ok(g)
}

/// Lollipop: path `0 ... d-1` with vertex 0 joined to every vertex of a
/// clique on `d ... n-1`.
pub fn make_lollipop(n: usize, d: usize) -> Result<Graph> {
    if d < 2 || n <= d {
        return Err(Error::input(format!(
            "lollipop needs n > d >= 2, got n = {n}, d = {d}"
        )));
    }
    let mut g = Graph::from_edges(n, (1..d).map(|i| (i - 1, i)))?;
    for u in d..n {
        g.add_edge(0, u)?;
        for w in u + 1..n {
            g.add_edge(u, w)?;
        }
    }
    Ok(g)
}

/// Star `K_{1,n-1}` with center 0.
pub fn make_star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::input(format!("star needs n >= 2, got {n}")));
    }
    Graph::from_edges(n, (1..n).map(|i| (0, i)))
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}
