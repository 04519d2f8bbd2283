//! A deliberately naive human-like solver and the difficulty score built
//! on it.
//!
//! The deterministic phase alternates naked singles (run until exhausted)
//! with one hidden-single sweep over rows, columns and regions, placing as
//! it goes. A digit with nowhere to go in a unit aborts the sweep at once;
//! a cell left without candidates is only noticed when the rules stall.
//! The trial phase then guesses on a most-constrained cell and recurses;
//! failed guesses are undone and the next candidate is tried, unwinding
//! further when a guess point runs out. Every placement counts as an
//! insertion, including those later undone.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumerator::Board;
use crate::palette::PaletteGrid;
use crate::par;
use crate::puzzle::{Difficulty, Level, Puzzle};

/// Some cell has no candidate, or some unit has nowhere left for a digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contradiction;

/// A partially filled board.
#[derive(Clone)]
pub struct SolveState {
    board: Board,
}

impl SolveState {
    pub fn cells(&self) -> &[u8] {
        &self.board.cells
    }

    pub fn blanks(&self) -> usize {
        self.board.cells.iter().filter(|&&v| v == 0).count()
    }

    pub fn is_solved(&self) -> bool {
        self.board.cells.iter().all(|&v| v != 0)
    }

    pub fn candidates(&self, idx: usize) -> u32 {
        self.board.candidates(idx)
    }

    fn has_dead_cell(&self) -> bool {
        (0..self.board.cells.len()).any(|i| self.board.cells[i] == 0 && self.board.candidates(i) == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub insertions: u64,
    pub guesses: u64,
    pub backtracks: u64,
    pub solved: bool,
    pub seed: u64,
    #[serde(skip)]
    pub grid: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DifficultyReport {
    pub id: Option<String>,
    pub k: usize,
    pub runs: u32,
    pub base_seed: u64,
    pub mean_insertions: f64,
    pub blanks: usize,
    pub score: f64,
    pub level: Level,
}

impl DifficultyReport {
    pub fn difficulty(&self) -> Difficulty {
        Difficulty {
            score: self.score,
            level: self.level,
            runs: self.runs,
            base_seed: self.base_seed,
        }
    }
}

/// Seconds a player needs at `seconds_per_insertion` per placed digit.
pub fn estimate_solve_time(rep: &DifficultyReport, seconds_per_insertion: f64) -> f64 {
    (rep.blanks as f64 + rep.score) * seconds_per_insertion
}

pub struct Rater {
    template: Board,
    /// Rows, then columns, then regions.
    units: Vec<Vec<usize>>,
    hidden_singles: bool,
    unit_contradictions: bool,
    eager_cell_check: bool,
}

impl Rater {
    pub fn new(palette: &PaletteGrid) -> Self {
        let n = palette.n();
        let mut units: Vec<Vec<usize>> = (0..n).map(|r| (0..n).map(|c| r * n + c).collect()).collect();
        units.extend((0..n).map(|c| (0..n).map(|r| r * n + c).collect()));
        units.extend(palette.regions().iter().cloned());
        Self {
            template: Board::empty(palette),
            units,
            hidden_singles: true,
            unit_contradictions: true,
            eager_cell_check: false,
        }
    }

    /// Report a dead cell as soon as a naked-single sweep meets it instead
    /// of once the rules stall.
    pub fn eager_cell_check(mut self) -> Self {
        self.eager_cell_check = true;
        self
    }

    /// Only empty cells count as contradictions; a unit with no room left
    /// for a digit goes unnoticed until it empties some cell.
    pub fn cell_contradictions_only(mut self) -> Self {
        self.unit_contradictions = false;
        self
    }

    /// Naked singles only; used to check that the extra rule only helps.
    pub fn without_hidden_singles(mut self) -> Self {
        self.hidden_singles = false;
        self
    }

    /// `None` if two givens clash.
    pub fn state(&self, givens: &[u8]) -> Option<SolveState> {
        let mut board = self.template.clone();
        for (idx, &v) in givens.iter().enumerate() {
            if v != 0 && !board.try_place(idx, v) {
                return None;
            }
        }
        Some(SolveState { board })
    }

    /// One row-major sweep placing every cell left with a single candidate;
    /// fails if a blank cell has no candidate afterwards.
    pub fn naked_single_pass(&self, st: &mut SolveState) -> Result<Vec<(usize, u8)>, Contradiction> {
        let mut placed = Vec::new();
        self.naked(st, &mut placed)?;
        if st.has_dead_cell() {
            return Err(Contradiction);
        }
        Ok(placed)
    }

    /// For each unit and each digit it lacks, places the digit if exactly
    /// one cell of the unit can take it.
    pub fn hidden_single_pass(&self, st: &mut SolveState) -> Result<Vec<(usize, u8)>, Contradiction> {
        let mut placed = Vec::new();
        self.hidden(st, &mut placed).map(|()| placed)
    }

    fn naked(&self, st: &mut SolveState, placed: &mut Vec<(usize, u8)>) -> Result<(), Contradiction> {
        for idx in 0..st.board.cells.len() {
            if st.board.cells[idx] != 0 {
                continue;
            }
            let c = st.board.candidates(idx);
            if c == 0 {
                if self.eager_cell_check {
                    return Err(Contradiction);
                }
                continue;
            }
            if c.count_ones() == 1 {
                let s = c.trailing_zeros() as u8 + 1;
                st.board.place(idx, s);
                placed.push((idx, s));
            }
        }
        Ok(())
    }

    fn hidden(&self, st: &mut SolveState, placed: &mut Vec<(usize, u8)>) -> Result<(), Contradiction> {
        let n = st.board.n;
        for unit in &self.units {
            for d in 0..n as u8 {
                let bit = 1u32 << d;
                let mut spot = None;
                let mut count = 0;
                let mut present = false;
                for &i in unit {
                    let v = st.board.cells[i];
                    if v == d + 1 {
                        present = true;
                        break;
                    }
                    if v == 0 && st.board.candidates(i) & bit != 0 {
                        count += 1;
                        spot = Some(i);
                    }
                }
                if present {
                    continue;
                }
                match (count, spot) {
                    (0, _) if self.unit_contradictions => return Err(Contradiction),
                    (1, Some(i)) => {
                        st.board.place(i, d + 1);
                        placed.push((i, d + 1));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Adds every placement to `insertions`, including those made before a
    /// contradiction surfaced.
    fn fixpoint(&self, st: &mut SolveState, insertions: &mut u64) -> Result<(), Contradiction> {
        let mut placed = Vec::new();
        loop {
            loop {
                placed.clear();
                let r = self.naked(st, &mut placed);
                *insertions += placed.len() as u64;
                r?;
                if placed.is_empty() {
                    break;
                }
            }
            if self.hidden_singles {
                placed.clear();
                let r = self.hidden(st, &mut placed);
                *insertions += placed.len() as u64;
                r?;
                if !placed.is_empty() {
                    continue;
                }
            }
            if st.has_dead_cell() {
                return Err(Contradiction);
            }
            return Ok(());
        }
    }

    /// Runs both rules until neither places anything; returns the number of
    /// placements made.
    pub fn deterministic_fixpoint(&self, st: &mut SolveState) -> Result<u64, Contradiction> {
        let mut total = 0;
        self.fixpoint(st, &mut total).map(|()| total)
    }

    fn search(&self, st: &mut SolveState, rng: &mut ChaCha8Rng, trace: &mut SolveTrace) -> bool {
        if self.fixpoint(st, &mut trace.insertions).is_err() {
            return false;
        }
        if st.is_solved() {
            return true;
        }
        let mut fewest = u32::MAX;
        let mut cells = Vec::new();
        for idx in 0..st.board.cells.len() {
            if st.board.cells[idx] != 0 {
                continue;
            }
            let c = st.board.candidates(idx).count_ones();
            if c < fewest {
                fewest = c;
                cells.clear();
            }
            if c == fewest {
                cells.push(idx);
            }
        }
        let idx = *cells.choose(rng).expect("an unsolved board has a blank cell");
        let mut candidates = st.board.candidates(idx);
        while candidates != 0 {
            let options: Vec<u8> = (0..32).filter(|b| candidates >> b & 1 == 1).map(|b| b as u8 + 1).collect();
            let s = options[rng.gen_range(0..options.len())];
            candidates &= !(1 << (s - 1));
            let saved = st.clone();
            st.board.place(idx, s);
            trace.insertions += 1;
            trace.guesses += 1;
            if self.search(st, rng, trace) {
                return true;
            }
            trace.backtracks += 1;
            *st = saved;
        }
        false
    }

    pub fn trial_solve(&self, givens: &[u8], seed: u64) -> SolveTrace {
        let mut trace = SolveTrace {
            insertions: 0,
            guesses: 0,
            backtracks: 0,
            solved: false,
            seed,
            grid: Vec::new(),
        };
        let Some(mut st) = self.state(givens) else {
            trace.grid = givens.to_vec();
            return trace;
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        trace.solved = self.search(&mut st, &mut rng, &mut trace);
        trace.grid = st.board.cells;
        trace
    }

    /// Whether the deterministic phase alone completes the puzzle.
    pub fn solves_deterministically(&self, givens: &[u8]) -> bool {
        self.state(givens)
            .is_some_and(|mut st| self.deterministic_fixpoint(&mut st).is_ok() && st.is_solved())
    }

    /// Mean insertions over seeds `base_seed..base_seed + runs`, minus the
    /// blank count.
    pub fn difficulty_score(&self, p: &Puzzle, runs: u32, base_seed: u64) -> DifficultyReport {
        let blanks = p.blanks();
        let mean_insertions = if self.solves_deterministically(p.givens()) {
            blanks as f64
        } else {
            let total: u64 = (0..u64::from(runs.max(1)))
                .map(|i| self.trial_solve(p.givens(), base_seed.wrapping_add(i)).insertions)
                .sum();
            total as f64 / f64::from(runs.max(1))
        };
        let score = (mean_insertions - blanks as f64).max(0.0);
        DifficultyReport {
            id: p.meta.id.clone(),
            k: p.k(),
            runs,
            base_seed,
            mean_insertions,
            blanks,
            score,
            level: Level::from_score(score),
        }
    }
}

pub fn difficulty_score(p: &Puzzle, runs: u32, base_seed: u64) -> DifficultyReport {
    Rater::new(p.palette()).difficulty_score(p, runs, base_seed)
}

/// Rates every puzzle; puzzles must share one palette.
pub fn rate_all(puzzles: &[Puzzle], runs: u32, base_seed: u64) -> Vec<DifficultyReport> {
    let Some(first) = puzzles.first() else {
        return Vec::new();
    };
    let rater = Rater::new(first.palette());
    par::map_ordered(puzzles, |p| {
        if p.palette() == first.palette() {
            rater.difficulty_score(p, runs, base_seed)
        } else {
            difficulty_score(p, runs, base_seed)
        }
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub easy: u64,
    pub medium: u64,
    pub hard: u64,
}

impl LevelCounts {
    pub fn total(&self) -> u64 {
        self.easy + self.medium + self.hard
    }

    pub fn add(&mut self, level: Level) {
        match level {
            Level::Easy => self.easy += 1,
            Level::Medium => self.medium += 1,
            Level::Hard => self.hard += 1,
        }
    }

    pub fn percent(&self, level: Level) -> f64 {
        let c = match level {
            Level::Easy => self.easy,
            Level::Medium => self.medium,
            Level::Hard => self.hard,
        };
        if self.total() == 0 {
            0.0
        } else {
            100.0 * c as f64 / self.total() as f64
        }
    }
}

/// Level counts per hint count, plus the largest score seen.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelTable {
    pub rows: BTreeMap<usize, LevelCounts>,
    pub max_score: f64,
}

impl LevelTable {
    pub fn from_reports(reports: &[DifficultyReport]) -> Self {
        let mut t = LevelTable::default();
        for r in reports {
            t.rows.entry(r.k).or_default().add(r.level);
            t.max_score = t.max_score.max(r.score);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,easy,medium,hard,total\n");
        for (k, c) in &self.rows {
            let _ = writeln!(out, "{k},{},{},{},{}", c.easy, c.medium, c.hard, c.total());
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.rows {
            let _ = writeln!(
                out,
                "k={k}: easy {} ({:.2}%), medium {} ({:.2}%), hard {} ({:.2}%), total {}",
                c.easy,
                c.percent(Level::Easy),
                c.medium,
                c.percent(Level::Medium),
                c.hard,
                c.percent(Level::Hard),
                c.total()
            );
        }
        let _ = writeln!(out, "max score {:.2}", self.max_score);
        out
    }
}

pub fn rate_census(puzzles: &[Puzzle], runs: u32, base_seed: u64) -> (Vec<DifficultyReport>, LevelTable) {
    let reports = rate_all(puzzles, runs, base_seed);
    let table = LevelTable::from_reports(&reports);
    (reports, table)
}
