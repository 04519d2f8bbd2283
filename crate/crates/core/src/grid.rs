use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::palette::PaletteGrid;

/// A filled `n × n` array over `1..=n`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SudokuGrid {
    n: usize,
    cells: Vec<u8>,
}

impl SudokuGrid {
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::InvalidGrid(format!("expected {} cells, got {}", n * n, cells.len())));
        }
        if let Some(&bad) = cells.iter().find(|&&s| s == 0 || s as usize > n) {
            return Err(Error::InvalidGrid(format!("symbol {bad} outside 1..={n}")));
        }
        Ok(Self { n, cells })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGrid("rows are not square".into()));
        }
        Self::from_cells(n, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u8> {
        self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.cells.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    /// Applies the symbol map `sigma[s - 1]` cellwise.
    pub fn relabel(&self, sigma: &[u8]) -> SudokuGrid {
        SudokuGrid {
            n: self.n,
            cells: self.cells.iter().map(|&s| sigma[s as usize - 1]).collect(),
        }
    }
}

impl fmt::Display for SudokuGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(u8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn is_latin(g: &SudokuGrid) -> bool {
    latin_cells(&g.cells, g.n)
}

/// True iff every region of `p` holds each symbol exactly once.
pub fn is_orthogonal(g: &SudokuGrid, p: &PaletteGrid) -> Result<bool> {
    if g.n != p.n() {
        return Err(Error::OrderMismatch {
            left: g.n,
            right: p.n(),
        });
    }
    Ok(orthogonal_cells(&g.cells, p.cells(), g.n))
}

/// Orthogonality on raw cell slices (symbols 1..=n in both).
pub(crate) fn orthogonal_cells(grid: &[u8], palette: &[u8], n: usize) -> bool {
    let mut seen = [0u32; 16];
    for (&s, &r) in grid.iter().zip(palette) {
        let bit = 1 << (s - 1);
        let slot = &mut seen[r as usize - 1];
        if *slot & bit != 0 {
            return false;
        }
        *slot |= bit;
    }
    let full = full_mask(n);
    seen[..n].iter().all(|&m| m == full)
}

pub(crate) fn latin_cells(grid: &[u8], n: usize) -> bool {
    let full = full_mask(n);
    (0..n).all(|i| {
        let (mut row, mut col) = (0u32, 0u32);
        for j in 0..n {
            row |= 1 << (grid[i * n + j] - 1);
            col |= 1 << (grid[j * n + i] - 1);
        }
        row == full && col == full
    })
}

pub(crate) fn full_mask(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// Relabels in place so the first row reads `1, 2, …, n`. Requires the first
/// row to be a permutation.
pub(crate) fn canonicalize_cells(cells: &mut [u8], n: usize) {
    let mut sigma = [0u8; 16];
    for (j, &s) in cells[..n].iter().enumerate() {
        sigma[s as usize - 1] = j as u8 + 1;
    }
    for s in cells.iter_mut() {
        *s = sigma[*s as usize - 1];
    }
}

/// The relabeling-class representative whose first row is `1..=n`.
pub fn canonical_relabel(g: &SudokuGrid) -> SudokuGrid {
    let mut cells = g.cells.clone();
    canonicalize_cells(&mut cells, g.n);
    SudokuGrid { n: g.n, cells }
}
