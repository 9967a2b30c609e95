use crate::error::{input, Result};
use crate::topology::CharacterPath;

/// A named degenerating path and the decomposition of each branch's limit, in table row order.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub path: &'static str,
    pub expected: &'static [&'static [usize]],
}

impl Preset {
    pub fn path(&self) -> CharacterPath {
        self.path.parse().expect("preset paths parse")
    }
}

pub const PRESETS: [Preset; 6] = [
    Preset { name: "8to4T4", path: "(1/4+1/4*t, 1/5, 1/8-1/8*t)", expected: &[&[1, 1]] },
    Preset { name: "8to2T3", path: "(1/4-1/4*t, 1/8-1/8*t, 1/5)", expected: &[&[1, 1, 1, 1]] },
    Preset { name: "8to1T1", path: "(1/4-1/4*t, 1/8-1/8*t, 1/16-1/16*t)", expected: &[&[1, 1, 1, 1, 2]] },
    Preset { name: "4T3to2T1", path: "(1/4-1/4*t, 1/2, 0)", expected: &[&[1], &[1]] },
    Preset { name: "4T3to1T2", path: "(1/4+1/4*t, 1/2, 0)", expected: &[&[0, 0, 1, 1, 1], &[1, 1, 0, 0, 1]] },
    Preset {
        name: "2T3to1T2",
        path: "(1/2, 1/2, 1/4-1/4*t)",
        expected: &[&[0, 1, 1, 0, 0], &[1, 0, 0, 1, 0], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 1]],
    },
];

pub fn preset(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        input(format!("unknown preset '{name}' (known: {})", names.join(", ")))
    })
}
