//! Puzzle bundles for the browser player: puzzles plus a region coloring
//! in which edge-adjacent regions never share a color.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::palette::PaletteGrid;
use crate::puzzle::{Puzzle, PuzzleFile};

pub const BUNDLE_VERSION: u32 = 1;

/// Pastel swatches; greedy coloring of these palettes never needs more.
pub const SWATCHES: [&str; 8] = [
    "#f4c7c3", "#c6e2b5", "#bcd4f6", "#fbe7a1", "#d9c2ec", "#b8e6e1", "#f6d0a8", "#e0e0e0",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleEntry {
    #[serde(flatten)]
    pub puzzle: PuzzleFile,
    /// Swatch index per region (region `k` has symbol `k + 1`).
    pub region_colors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub version: u32,
    pub colors: Vec<String>,
    pub puzzles: Vec<BundleEntry>,
}

/// Regions sharing an edge in the flat (non-wrapping) drawing.
pub fn region_adjacency(palette: &PaletteGrid) -> Vec<BTreeSet<usize>> {
    let n = palette.n();
    let mut adj = vec![BTreeSet::new(); n];
    for r in 0..n {
        for c in 0..n {
            let a = palette.get(r, c) as usize - 1;
            let mut link = |b: u8| {
                let b = b as usize - 1;
                if a != b {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            };
            if r + 1 < n {
                link(palette.get(r + 1, c));
            }
            if c + 1 < n {
                link(palette.get(r, c + 1));
            }
        }
    }
    adj
}

/// Largest-degree-first greedy coloring.
pub fn color_regions(palette: &PaletteGrid) -> Vec<usize> {
    let adj = region_adjacency(palette);
    let mut order: Vec<usize> = (0..adj.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut color = vec![usize::MAX; adj.len()];
    for v in order {
        let used: BTreeSet<usize> = adj[v].iter().map(|&u| color[u]).collect();
        color[v] = (0..).find(|c| !used.contains(c)).unwrap();
    }
    color
}

impl Bundle {
    pub fn new(puzzles: &[Puzzle]) -> Result<Self> {
        let entries = puzzles
            .iter()
            .map(|p| {
                let region_colors = color_regions(p.palette());
                if let Some(&c) = region_colors.iter().max() {
                    if c >= SWATCHES.len() {
                        return Err(Error::InvalidPalette(format!("coloring needs {} colors", c + 1)));
                    }
                }
                Ok(BundleEntry {
                    puzzle: p.to_file(),
                    region_colors,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let bundle = Bundle {
            version: BUNDLE_VERSION,
            colors: SWATCHES.iter().map(|s| s.to_string()).collect(),
            puzzles: entries,
        };
        bundle.validate()?;
        Ok(bundle)
    }

    /// Checks every puzzle parses and every coloring is proper.
    pub fn validate(&self) -> Result<()> {
        if self.version != BUNDLE_VERSION {
            return Err(Error::PuzzleFormat(format!("unsupported bundle version {}", self.version)));
        }
        if self.colors.len() < 4 {
            return Err(Error::PuzzleFormat("a bundle needs at least four colors".into()));
        }
        for (i, entry) in self.puzzles.iter().enumerate() {
            let p = Puzzle::from_file(&entry.puzzle).map_err(|e| Error::PuzzleFormat(format!("puzzle {i}: {e}")))?;
            let n = p.n();
            if entry.region_colors.len() != n || entry.region_colors.iter().any(|&c| c >= self.colors.len()) {
                return Err(Error::PuzzleFormat(format!("puzzle {i}: bad region colors")));
            }
            for (a, nbrs) in region_adjacency(p.palette()).iter().enumerate() {
                if nbrs.iter().any(|&b| entry.region_colors[a] == entry.region_colors[b]) {
                    return Err(Error::PuzzleFormat(format!("puzzle {i}: adjacent regions share a color")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let b: Bundle = serde_json::from_str(s)?;
        b.validate()?;
        Ok(b)
    }
}
