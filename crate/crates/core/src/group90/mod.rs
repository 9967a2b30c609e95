//! The dimension-3 crystallographic group 90: action chart, orbit types, subgroup names and
//! the reference tables of irreducible representations.

mod presets;
mod tables;

use std::fmt;

pub use presets::{preset, Preset, PRESETS};
pub use tables::{reference_rows, match_rows, RowMatch, TableRow};

use crate::crystal::{Character, CrystalGroup, IntMatrix, PointSubgroup};
use crate::error::{input, Result};
use crate::numerics::Turn;

pub const ELEMENTS: [&str; 8] = ["e", "a", "a2", "a3", "b", "ab", "a2b", "a3b"];

/// Chart row for d: coordinate i of d·χ is u_src, conjugated when the flag is set.
pub const CHART: [(&str, [(usize, bool); 3]); 8] = [
    ("e", [(0, false), (1, false), (2, false)]),
    ("a", [(1, true), (0, false), (2, false)]),
    ("a2", [(0, true), (1, true), (2, false)]),
    ("a3", [(1, false), (0, true), (2, false)]),
    ("b", [(0, true), (1, false), (2, true)]),
    ("ab", [(1, true), (0, true), (2, true)]),
    ("a2b", [(0, false), (1, true), (2, true)]),
    ("a3b", [(1, false), (0, false), (2, true)]),
];

/// Named proper nontrivial subgroups.
pub const SUBGROUPS: [(&str, &[&str]); 8] = [
    ("D1", &["e", "a2", "b", "a2b"]),
    ("D2", &["e", "a", "a2", "a3"]),
    ("D3", &["e", "a2", "ab", "a3b"]),
    ("D4", &["e", "a2b"]),
    ("D5", &["e", "b"]),
    ("D6", &["e", "a2"]),
    ("D7", &["e", "ab"]),
    ("D8", &["e", "a3b"]),
];

/// One character per orbit type, with the ± variants of the small orbits.
pub const REPRESENTATIVES: [&str; 14] = [
    "(1,1,1)",
    "(1,1,-1)",
    "(-1,-1,1)",
    "(-1,-1,-1)",
    "(1,-1,1)",
    "(-1,1,1)",
    "(-1,-1,1/5)",
    "(i,i,1)",
    "(i,i,-1)",
    "(i,-i,1)",
    "(1/5,1,1)",
    "(-1,1/5,1)",
    "(1,-1,1/5)",
    "(0.13,0.29,0.41)",
];

/// Images of a and b under the bundled action; used to recognise the datum.
fn expected_action(name: &str) -> Option<IntMatrix> {
    match name {
        "a" => IntMatrix::from_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
        "b" => IntMatrix::from_rows(&[vec![-1, 0, 0], vec![0, 1, 0], vec![0, 0, -1]]),
        _ => None,
    }
}

/// True when the group carries the group-90 point group, action and generator names.
pub fn is_group90(g: &CrystalGroup) -> bool {
    let p = g.point();
    g.dim() == 3
        && p.names().iter().map(String::as_str).eq(ELEMENTS)
        && ["a", "b"].iter().all(|n| Some(p.action(p.index_of(n).unwrap_or(0))) == expected_action(n).as_ref())
        && ["a", "b", "c"].iter().all(|n| g.generator(n).is_some())
}

fn require(g: &CrystalGroup) -> Result<()> {
    if is_group90(g) {
        Ok(())
    } else {
        Err(input(format!("group '{}' is not the group-90 datum", g.name())))
    }
}

/// Exponent of M_{d⁻¹} in column i, i.e. the monomial giving coordinate i of d·χ.
pub fn chart_monomial(inv_action: &IntMatrix, i: usize) -> Vec<i64> {
    (0..inv_action.dim()).map(|j| inv_action.get(j, i)).collect()
}

/// Rows of the chart that the action matrices fail to reproduce, with a description.
pub fn chart_mismatches(names: &[String], inv_actions: &[IntMatrix]) -> Vec<(String, String)> {
    let mut bad = Vec::new();
    for (name, row) in CHART {
        let Some(d) = names.iter().position(|n| n == name) else {
            bad.push((name.to_string(), "element missing".into()));
            continue;
        };
        for (i, &(src, conj)) in row.iter().enumerate() {
            let mut want = vec![0; 3];
            want[src] = if conj { -1 } else { 1 };
            if inv_actions[d].dim() != 3 || chart_monomial(&inv_actions[d], i) != want {
                bad.push((name.to_string(), format!("coordinate u{} of {name}·χ is wrong", i + 1)));
            }
        }
    }
    bad
}

/// Name of a point subgroup: D, D1..D8 or {e}.
pub fn subgroup_label(g: &CrystalGroup, k: &PointSubgroup) -> String {
    if k.order() == g.point().order() {
        return "D".into();
    }
    if k.order() == 1 {
        return "{e}".into();
    }
    let names: Vec<&str> = k.elements().iter().map(|&d| g.point().name(d)).collect();
    SUBGROUPS
        .iter()
        .find(|(_, els)| els.len() == names.len() && els.iter().all(|e| names.contains(e)))
        .map_or_else(|| k.to_string(), |(l, _)| l.to_string())
}

/// Orbit size and type number of a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    One(u8),
    Two(u8),
    Four(u8),
    Eight,
}

impl OrbitType {
    pub fn orbit_size(&self) -> usize {
        match self {
            OrbitType::One(_) => 1,
            OrbitType::Two(_) => 2,
            OrbitType::Four(_) => 4,
            OrbitType::Eight => 8,
        }
    }

    /// Label of the stabilizer of characters matching the type's formula.
    pub fn stabilizer_label(&self) -> &'static str {
        match self {
            OrbitType::One(_) => "D",
            OrbitType::Two(3) => "D2",
            OrbitType::Two(_) => "D1",
            OrbitType::Four(1) => "D8",
            OrbitType::Four(2) => "D7",
            OrbitType::Four(3) => "D4",
            OrbitType::Four(4) => "D5",
            OrbitType::Four(_) => "D6",
            OrbitType::Eight => "{e}",
        }
    }

    pub fn label(&self) -> String {
        match self {
            OrbitType::One(t) => format!("1-T{t}"),
            OrbitType::Two(t) => format!("2-T{t}"),
            OrbitType::Four(t) => format!("4-T{t}"),
            OrbitType::Eight => "8".into(),
        }
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// +1 or −1 when the coordinate is real.
pub(crate) fn real_sign(t: &Turn) -> Option<i8> {
    if t.coincides(&Turn::zero()) {
        Some(1)
    } else if t.coincides(&Turn::ratio(1, 2)) {
        Some(-1)
    } else {
        None
    }
}

/// Orbit type of χ by the formula it matches.
pub fn classify_orbit_type_90(g: &CrystalGroup, chi: &Character) -> Result<OrbitType> {
    require(g)?;
    if chi.dim() != 3 {
        return Err(input("group-90 characters have three coordinates"));
    }
    let (u1, u2) = (chi.u[0], chi.u[1]);
    let s = [real_sign(&u1), real_sign(&u2), real_sign(&chi.u[2])];
    Ok(match s {
        [Some(a), Some(b), Some(_)] if a == b => OrbitType::One(if a == 1 { 1 } else { 2 }),
        [Some(a), Some(_), Some(_)] => OrbitType::Two(if a == 1 { 1 } else { 2 }),
        [Some(a), Some(b), None] if a == b => OrbitType::Two(3),
        [Some(_), Some(_), None] => OrbitType::Four(5),
        [None, None, Some(_)] if u1.coincides(&u2) => OrbitType::Four(1),
        [None, None, Some(_)] if u1.coincides(&u2.conj()) => OrbitType::Four(2),
        [None, Some(_), Some(_)] => OrbitType::Four(3),
        [Some(_), None, Some(_)] => OrbitType::Four(4),
        _ => OrbitType::Eight,
    })
}
