//! Uniqueness counting, minimal puzzles, the exhaustive minimal-puzzle
//! census over hint subsets, and randomized minimal-puzzle sampling.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerator::{factorial, Board, GridCensus};
use crate::error::{Error, Result};
use crate::grid::SudokuGrid;
use crate::palette::PaletteGrid;
use crate::par;
use crate::puzzle::Puzzle;
use crate::symmetry::OrbitReport;

/// Board with the givens placed, or `None` if two givens clash.
fn seeded(template: &Board, givens: &[u8]) -> Option<Board> {
    let mut board = template.clone();
    for (idx, &v) in givens.iter().enumerate() {
        if v != 0 && !board.try_place(idx, v) {
            return None;
        }
    }
    Some(board)
}

/// Most-constrained-cell backtracking; stops once `found` reaches `cap`.
fn count_from(board: &mut Board, cap: u64, found: &mut u64, first: &mut Option<Vec<u8>>) {
    let mut best = usize::MAX;
    let mut best_count = u32::MAX;
    for idx in 0..board.cells.len() {
        if board.cells[idx] != 0 {
            continue;
        }
        let c = board.candidates(idx).count_ones();
        if c < best_count {
            best = idx;
            best_count = c;
            if c <= 1 {
                break;
            }
        }
    }
    if best == usize::MAX {
        *found += 1;
        if first.is_none() {
            *first = Some(board.cells.clone());
        }
        return;
    }
    let mut avail = board.candidates(best);
    while avail != 0 {
        let s = avail.trailing_zeros() as u8 + 1;
        avail &= avail - 1;
        board.place(best, s);
        count_from(board, cap, found, first);
        board.clear(best);
        if *found >= cap {
            return;
        }
    }
}

/// Solution counter reusable across many hint sets on one palette.
#[derive(Clone)]
pub struct Solver {
    template: Board,
}

impl Solver {
    pub fn new(palette: &PaletteGrid) -> Self {
        Self {
            template: Board::empty(palette),
        }
    }

    /// Number of completions of `givens` (0 = blank), saturated at `cap`.
    pub fn count(&self, givens: &[u8], cap: u64) -> u64 {
        let Some(mut board) = seeded(&self.template, givens) else {
            return 0;
        };
        let mut found = 0;
        count_from(&mut board, cap, &mut found, &mut None);
        found
    }

    pub fn solve(&self, givens: &[u8]) -> Option<Vec<u8>> {
        let mut board = seeded(&self.template, givens)?;
        let (mut found, mut first) = (0, None);
        count_from(&mut board, 1, &mut found, &mut first);
        first
    }

    /// Unique, and every single-hint removal breaks uniqueness.
    pub fn is_minimal(&self, givens: &mut [u8]) -> bool {
        if self.count(givens, 2) != 1 {
            return false;
        }
        for idx in 0..givens.len() {
            let v = givens[idx];
            if v == 0 {
                continue;
            }
            givens[idx] = 0;
            let unique = self.count(givens, 2) == 1;
            givens[idx] = v;
            if unique {
                return false;
            }
        }
        true
    }
}

pub fn count_solutions(p: &Puzzle, cap: u64) -> u64 {
    Solver::new(p.palette()).count(p.givens(), cap)
}

pub fn is_minimal(p: &Puzzle) -> bool {
    Solver::new(p.palette()).is_minimal(&mut p.givens().to_vec())
}

/// Next integer with the same number of set bits (Gosper).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Every `k`-subset of the cells of `solution` that forms a minimal puzzle,
/// as cell bitmasks in increasing numeric order.
pub fn minimal_masks(solution: &SudokuGrid, palette: &PaletteGrid, k: usize) -> Result<Vec<u64>> {
    let cells = solution.n() * solution.n();
    if cells > 64 {
        return Err(Error::InvalidGrid(format!("{cells} cells do not fit a 64-bit mask")));
    }
    if k == 0 || k > cells {
        return Ok(Vec::new());
    }
    let solver = Solver::new(palette);
    let grid = solution.cells();
    // split on the highest chosen cell
    let tops: Vec<usize> = (k - 1..cells).collect();
    let chunks = par::map_ordered(&tops, |&top| {
        let mut out = Vec::new();
        let mut givens = vec![0u8; cells];
        let high = 1u64 << top;
        let mut low = if k == 1 { 0 } else { (1u64 << (k - 1)) - 1 };
        loop {
            if k > 1 && low >> top != 0 {
                break;
            }
            let mask = high | low;
            for (i, g) in givens.iter_mut().enumerate() {
                *g = if mask >> i & 1 == 1 { grid[i] } else { 0 };
            }
            if solver.is_minimal(&mut givens) {
                out.push(mask);
            }
            if k == 1 {
                break;
            }
            low = next_combination(low);
        }
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// One orbit representative with its weight (number of grids it stands for,
/// relabelings included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRep {
    pub grid: SudokuGrid,
    pub orbit_size: usize,
    pub weight: u64,
}

/// Representatives of every orbit in `report`, largest orbits first.
pub fn class_representatives(census: &GridCensus, report: &OrbitReport) -> Vec<ClassRep> {
    let mut reps: Vec<ClassRep> = report
        .representatives
        .iter()
        .map(|&(index, size)| ClassRep {
            grid: census.grid(index),
            orbit_size: size,
            weight: size as u64 * factorial(census.n()) as u64,
        })
        .collect();
    reps.sort_by(|a, b| b.orbit_size.cmp(&a.orbit_size).then_with(|| a.grid.cmp(&b.grid)));
    reps
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalRow {
    pub k: usize,
    pub per_class: Vec<u64>,
    /// Sum over classes of the per-representative counts.
    pub up_to_equivalence: u64,
    /// Sum over classes of count × weight.
    pub total: u64,
}

/// Minimal puzzles with `k` hints on each representative.
pub fn minimal_census(reps: &[ClassRep], palette: &PaletteGrid, k: usize) -> Result<(MinimalRow, Vec<Vec<u64>>)> {
    let masks = reps
        .iter()
        .map(|r| minimal_masks(&r.grid, palette, k))
        .collect::<Result<Vec<_>>>()?;
    let per_class: Vec<u64> = masks.iter().map(|m| m.len() as u64).collect();
    let row = MinimalRow {
        k,
        up_to_equivalence: per_class.iter().sum(),
        total: per_class.iter().zip(reps).map(|(c, r)| c * r.weight).sum(),
        per_class,
    };
    Ok((row, masks))
}

/// Removes hints of `solution` in a seeded random order whenever the rest
/// still has a unique solution. One pass suffices: a hint that could not go
/// earlier cannot go once even fewer hints remain.
pub fn sample_minimal(solution: &SudokuGrid, palette: &PaletteGrid, k_range: RangeInclusive<usize>, seed: u64) -> Result<Puzzle> {
    let solver = Solver::new(palette);
    let mut givens = solution.cells().to_vec();
    if solver.count(&givens, 2) != 1 {
        return Err(Error::InvalidGrid("grid is not a Sudoku grid for this palette".into()));
    }
    let mut order: Vec<usize> = (0..givens.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for idx in order {
        let v = givens[idx];
        givens[idx] = 0;
        if solver.count(&givens, 2) != 1 {
            givens[idx] = v;
        }
    }
    let k = givens.iter().filter(|&&v| v != 0).count();
    if !k_range.contains(&k) {
        return Err(Error::HintRange {
            k,
            lo: *k_range.start(),
            hi: *k_range.end(),
        });
    }
    let mut p = Puzzle::new(palette.clone(), givens, Some(solution.clone()))?;
    p.meta.seed = Some(seed);
    Ok(p)
}

/// Retries [`sample_minimal`] with seeds `seed, seed + 1, …` until the hint
/// count lands in range.
pub fn sample_minimal_retrying(
    solution: &SudokuGrid,
    palette: &PaletteGrid,
    k_range: RangeInclusive<usize>,
    seed: u64,
    attempts: u64,
) -> Result<Puzzle> {
    let mut last = None;
    for s in seed..seed.saturating_add(attempts) {
        match sample_minimal(solution, palette, k_range.clone(), s) {
            Err(e @ Error::HintRange { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap_or(Error::HintRange {
        k: 0,
        lo: *k_range.start(),
        hi: *k_range.end(),
    }))
}
