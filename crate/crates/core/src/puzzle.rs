//! Hinted puzzles and their JSON exchange format.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SudokuGrid;
use crate::palette::{PaletteGrid, Provenance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    Easy,
    Medium,
    Hard,
}

impl Level {
    /// Easy at exactly zero, Medium up to 10, Hard above.
    pub fn from_score(score: f64) -> Level {
        if score <= 0.0 {
            Level::Easy
        } else if score <= 10.0 {
            Level::Medium
        } else {
            Level::Hard
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Easy => "easy",
            Level::Medium => "medium",
            Level::Hard => "hard",
        })
    }
}

/// Rating summary stored alongside a puzzle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Difficulty {
    pub score: f64,
    pub level: Level,
    pub runs: u32,
    pub base_seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PuzzleMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub difficulty: Option<Difficulty>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub r: usize,
    pub c: usize,
    pub v: u8,
}

/// On-disk form of a [`Puzzle`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PuzzleFile {
    pub version: u32,
    pub n: usize,
    pub palette: Vec<Vec<u8>>,
    pub hints: Vec<Hint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<Vec<u8>>>,
    pub meta: PuzzleMeta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Puzzle {
    palette: PaletteGrid,
    /// Row-major, 0 for blank.
    givens: Vec<u8>,
    solution: Option<SudokuGrid>,
    pub meta: PuzzleMeta,
}

impl Puzzle {
    pub fn new(palette: PaletteGrid, givens: Vec<u8>, solution: Option<SudokuGrid>) -> Result<Self> {
        let n = palette.n();
        if givens.len() != n * n {
            return Err(Error::PuzzleFormat(format!("expected {} cells, got {}", n * n, givens.len())));
        }
        if let Some(&bad) = givens.iter().find(|&&v| v as usize > n) {
            return Err(Error::PuzzleFormat(format!("hint {bad} outside 1..={n}")));
        }
        if let Some(s) = &solution {
            if s.n() != n {
                return Err(Error::OrderMismatch { left: n, right: s.n() });
            }
            if givens.iter().zip(s.cells()).any(|(&g, &v)| g != 0 && g != v) {
                return Err(Error::PuzzleFormat("hints disagree with the solution".into()));
            }
        }
        let k = givens.iter().filter(|&&v| v != 0).count();
        Ok(Self {
            palette,
            givens,
            solution,
            meta: PuzzleMeta { k, ..PuzzleMeta::default() },
        })
    }

    /// The cells of `solution` selected by `mask` (bit `i` = cell `i`).
    pub fn from_mask(palette: PaletteGrid, solution: &SudokuGrid, mask: u64) -> Result<Self> {
        let givens = solution
            .cells()
            .iter()
            .enumerate()
            .map(|(i, &v)| if mask >> i & 1 == 1 { v } else { 0 })
            .collect();
        Self::new(palette, givens, Some(solution.clone()))
    }

    pub fn n(&self) -> usize {
        self.palette.n()
    }

    pub fn palette(&self) -> &PaletteGrid {
        &self.palette
    }

    pub fn givens(&self) -> &[u8] {
        &self.givens
    }

    pub fn solution(&self) -> Option<&SudokuGrid> {
        self.solution.as_ref()
    }

    pub fn k(&self) -> usize {
        self.givens.iter().filter(|&&v| v != 0).count()
    }

    pub fn blanks(&self) -> usize {
        self.givens.len() - self.k()
    }

    pub fn hints(&self) -> Vec<Hint> {
        let n = self.n();
        self.givens
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| Hint { r: i / n, c: i % n, v })
            .collect()
    }

    pub fn to_file(&self) -> PuzzleFile {
        PuzzleFile {
            version: FORMAT_VERSION,
            n: self.n(),
            palette: self.palette.rows(),
            hints: self.hints(),
            solution: self.solution.as_ref().map(SudokuGrid::rows),
            meta: PuzzleMeta {
                k: self.k(),
                ..self.meta.clone()
            },
        }
    }

    pub fn from_file(file: &PuzzleFile) -> Result<Self> {
        if file.version != FORMAT_VERSION {
            return Err(Error::PuzzleFormat(format!("unsupported version {}", file.version)));
        }
        if file.palette.len() != file.n {
            return Err(Error::PuzzleFormat("palette size disagrees with n".into()));
        }
        let palette = PaletteGrid::from_rows(&file.palette, Provenance::Custom { note: "puzzle file".into() })?;
        let n = file.n;
        let mut givens = vec![0u8; n * n];
        for h in &file.hints {
            if h.r >= n || h.c >= n || h.v == 0 || h.v as usize > n {
                return Err(Error::PuzzleFormat(format!("hint {h:?} out of range")));
            }
            let slot = &mut givens[h.r * n + h.c];
            if *slot != 0 {
                return Err(Error::PuzzleFormat(format!("duplicate hint at ({}, {})", h.r, h.c)));
            }
            *slot = h.v;
        }
        let solution = file.solution.as_deref().map(SudokuGrid::from_rows).transpose()?;
        let mut p = Self::new(palette, givens, solution)?;
        if file.meta.k != p.k() {
            return Err(Error::PuzzleFormat(format!("meta.k = {} but {} hints", file.meta.k, p.k())));
        }
        p.meta = file.meta.clone();
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }
}

impl fmt::Display for Puzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.givens.chunks(self.n()) {
            let line: Vec<String> = row
                .iter()
                .map(|&v| if v == 0 { ".".into() } else { v.to_string() })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
