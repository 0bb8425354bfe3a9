//! The eccentric connectivity index `ξᶜ(G) = Σ ε(v)·deg(v)` and its closed
//! forms for paths and volcano graphs.
//!
//! Closed forms with half-integer terms are evaluated as `2·ξᶜ` in integer
//! arithmetic and halved only after checking the doubled value is even.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{profile, EccentricityProfile, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EciValue(pub u64);

impl EciValue {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for EciValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `Σ ε(v)·deg(v)` from an already computed profile.
pub fn eci_from_profile(p: &EccentricityProfile) -> EciValue {
    EciValue(
        p.eccentricity
            .iter()
            .zip(&p.degree)
            .map(|(&e, &d)| (e * d) as u64)
            .sum(),
    )
}

/// Eccentric connectivity index of a connected graph with at least two
/// vertices.
pub fn eci(g: &Graph) -> Result<EciValue> {
    if g.order() < 2 {
        return Err(Error::Domain(
            "eccentric connectivity index needs at least two vertices".into(),
        ));
    }
    Ok(eci_from_profile(&profile(g)?))
}

fn halve(doubled: u64) -> EciValue {
    assert!(
        doubled.is_multiple_of(2),
        "closed form produced an odd doubled value {doubled}"
    );
    EciValue(doubled / 2)
}

/// `(3n² − 6n + 4)/2` for even `n`, `3(n − 1)²/2` for odd `n`.
pub fn eci_path_closed_form(n: u64) -> Result<EciValue> {
    if n < 2 {
        return Err(Error::input(format!(
            "path closed form needs n >= 2, got {n}"
        )));
    }
    let doubled = if n.is_multiple_of(2) {
        3 * n * n - 6 * n + 4
    } else {
        3 * (n - 1) * (n - 1)
    };
    Ok(halve(doubled))
}

/// `nd + n + d²/2 − 2d − 1` for even `d`, `nd + 2n + d²/2 − 3d − 3/2` for
/// odd `d`.
pub fn eci_volcano_closed_form(n: u64, d: u64) -> Result<EciValue> {
    if d < 2 || n < d + 1 {
        return Err(Error::input(format!(
            "volcano closed form needs d >= 2 and n >= d + 1, got n = {n}, d = {d}"
        )));
    }
    let doubled = if d.is_multiple_of(2) {
        (2 * n * d + 2 * n + d * d) - (4 * d + 2)
    } else {
        (2 * n * d + 4 * n + d * d) - (6 * d + 3)
    };
    Ok(halve(doubled))
}

/// Increase of the volcano bound when one vertex is added at fixed `d`:
/// `d + 1` for even `d`, `d + 2` for odd `d`.
pub fn volcano_increment(d: u64) -> u64 {
    if d.is_multiple_of(2) {
        d + 1
    } else {
        d + 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn eci_examples() {
        assert_eq!(eci(&path(2)).unwrap(), EciValue(2));
        assert_eq!(eci(&path(4)).unwrap(), EciValue(14));
        assert_eq!(eci(&cycle(4)).unwrap(), EciValue(16));
    }

    #[test]
    fn eci_rejects_degenerate_inputs() {
        assert!(matches!(
            eci(&Graph::new(1).unwrap()),
            Err(Error::Domain(_))
        ));
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(eci(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn path_closed_form_examples() {
        assert_eq!(eci_path_closed_form(2).unwrap(), EciValue(2));
        assert_eq!(eci_path_closed_form(5).unwrap(), EciValue(24));
        assert_eq!(eci_path_closed_form(8).unwrap(), EciValue(74));
        assert_eq!(eci_path_closed_form(9).unwrap(), EciValue(96));
        assert!(eci_path_closed_form(1).is_err());
    }

    #[test]
    fn volcano_closed_form_reference_values() {
        for (n, v) in [(16, 146), (17, 155), (18, 164), (19, 173)] {
            assert_eq!(eci_volcano_closed_form(n, 7).unwrap(), EciValue(v));
        }
        assert_eq!(eci_volcano_closed_form(7, 6).unwrap(), EciValue(54));
        assert_eq!(
            eci_volcano_closed_form(7, 6).unwrap(),
            eci_path_closed_form(7).unwrap()
        );
        assert_eq!(eci_volcano_closed_form(8, 4).unwrap(), EciValue(39));
        assert_eq!(eci_volcano_closed_form(6, 3).unwrap(), EciValue(24));
        assert_eq!(eci_volcano_closed_form(5, 2).unwrap(), EciValue(12));
    }

    #[test]
    fn volcano_closed_form_rejects_bad_parameters() {
        assert!(eci_volcano_closed_form(5, 1).is_err());
        assert!(eci_volcano_closed_form(4, 4).is_err());
    }

    #[test]
    fn volcano_deltas_are_exact() {
        for d in 2..40u64 {
            for n in d + 1..d + 40 {
                let a = eci_volcano_closed_form(n, d).unwrap().get();
                let b = eci_volcano_closed_form(n + 1, d).unwrap().get();
                assert_eq!(b - a, volcano_increment(d));
            }
        }
    }

    #[test]
    fn path_closed_form_matches_bfs() {
        for n in 2..60 {
            assert_eq!(
                eci(&path(n)).unwrap(),
                eci_path_closed_form(n as u64).unwrap()
            );
        }
    }
}
