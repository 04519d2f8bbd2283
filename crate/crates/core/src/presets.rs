//! The three concrete settings studied here: the perfect code over `Z_5`
//! and the two diameter perfect codes over `Z_8`, with their symmetry groups.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lee::{
    construct_diameter_code, construct_perfect_code, default_core_offset, enumerate_diameter_codes,
    enumerate_perfect_codes, Code, Point,
};
use crate::palette::{palette_from_diameter, palette_from_perfect, PaletteGrid};
use crate::symmetry::{diameter_generators, generate_group, perfect_generators, DiameterCase, RigidMotion, SymmetryGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    /// `(2,2) + span[3 1]` over `Z_5`.
    Z5,
    /// `span[[2,2],[0,4]]` over `Z_8`.
    Z8CaseI,
    /// `span[1 3]` over `Z_8`.
    Z8CaseII,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::Z5, Setting::Z8CaseI, Setting::Z8CaseII];

    pub fn name(self) -> &'static str {
        match self {
            Setting::Z5 => "z5",
            Setting::Z8CaseI => "z8-i",
            Setting::Z8CaseII => "z8-ii",
        }
    }

    pub fn n(self) -> u32 {
        match self {
            Setting::Z5 => 5,
            _ => 8,
        }
    }

    pub fn code(self) -> Code {
        match self {
            Setting::Z5 => construct_perfect_code(1, Point::new(2, 2, 5).unwrap(), true),
            Setting::Z8CaseI => construct_diameter_code(1, 0, Point::origin(8)),
            Setting::Z8CaseII => construct_diameter_code(1, 1, Point::origin(8)),
        }
        .expect("preset parameters are valid")
    }

    pub fn palette(self) -> PaletteGrid {
        let code = self.code();
        match self {
            Setting::Z5 => palette_from_perfect(&code),
            _ => palette_from_diameter(&code, default_core_offset(8)),
        }
        .expect("preset codes tile")
    }

    /// The subgroups tabulated for this setting, last one being the full
    /// group. Each comes with a short key for command-line use.
    pub fn groups(self) -> Vec<(&'static str, SymmetryGroup)> {
        let code = self.code();
        let gen = |words: &[RigidMotion], label: &str| {
            generate_group(words).expect("rigid motions close").named(label)
        };
        match self {
            Setting::Z5 => {
                let [phi, tr] = perfect_generators(code.offset, 3, 1);
                vec![
                    ("rot", gen(&[phi], "<r>")),
                    ("trans", gen(&[tr], "<t1^3 t2>")),
                    ("full", gen(&[phi, tr], "<r, t1^3 t2>")),
                ]
            }
            Setting::Z8CaseI => {
                let g = diameter_generators(DiameterCase::I, code.offset, 1, 0, 0);
                let [lat1, lat2, refl, half] = [g[0], g[1], g[2], g[3]];
                vec![
                    ("rot2", gen(&[half], "<t1^2 t2 r^2>")),
                    ("refl", gen(&[refl], "<t2 s>")),
                    ("trans", gen(&[lat1, lat2], "<t1^2 t2^2, t2^4>")),
                    ("full", gen(&g, "<t1^2 t2^2, t2^4, t2 s, t1^2 t2 r^2>")),
                ]
            }
            Setting::Z8CaseII => {
                let g = diameter_generators(DiameterCase::II, code.offset, 1, 1, 3);
                vec![
                    ("rot2", gen(&[g[1]], "<t1^2 t2 r^2>")),
                    ("trans", gen(&[g[0]], "<t1 t2^3>")),
                    ("full", gen(&g, "<t1 t2^3, t1^2 t2 r^2>")),
                ]
            }
        }
    }

    pub fn group(self, key: &str) -> Result<SymmetryGroup> {
        self.groups()
            .into_iter()
            .find(|(k, _)| *k == key)
            .map(|(_, g)| g)
            .ok_or_else(|| {
                let keys: Vec<_> = self.groups().iter().map(|(k, _)| *k).collect();
                Error::InvalidGrid(format!("unknown group {key:?} for {self}; expected one of {keys:?}"))
            })
    }

    pub fn full_group(self) -> SymmetryGroup {
        self.groups().pop().expect("non-empty").1
    }

    /// Palettes of every code in the family used for special grids: all
    /// perfect codes over `Z_5`, or all diameter perfect codes over `Z_8`
    /// with the `(1, 0)` core.
    pub fn family(self) -> Vec<PaletteGrid> {
        match self {
            Setting::Z5 => enumerate_perfect_codes(5, 1)
                .expect("valid modulus")
                .iter()
                .map(|c| palette_from_perfect(c).expect("enumerated codes tile"))
                .collect(),
            _ => enumerate_diameter_codes(8, 1, default_core_offset(8))
                .expect("valid modulus")
                .iter()
                .map(|c| palette_from_diameter(c, default_core_offset(8)).expect("enumerated codes tile"))
                .collect(),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Setting::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidPalette(format!("unknown setting {s:?} (z5, z8-i, z8-ii)")))
    }
}
