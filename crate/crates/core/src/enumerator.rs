//! Exhaustive enumeration of Sudoku grids for a palette, up to relabeling.
//!
//! Every relabeling class has exactly one member whose first row reads
//! `1..=n`, so the search fixes row 0 and backtracks over the remaining
//! cells in row-major order with ascending candidates. Work is split on the
//! completed second row; per-prefix buffers are concatenated in prefix
//! order, so the census comes out lexicographically sorted regardless of
//! how many workers ran.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::grid::{full_mask, latin_cells, orthogonal_cells, SudokuGrid};
use crate::palette::PaletteGrid;
use crate::par;

const MAGIC: &[u8; 4] = b"CDKU";
const VERSION: u8 = 1;

/// Row/column/region bookkeeping for a backtracking fill.
#[derive(Clone)]
pub(crate) struct Board {
    pub n: usize,
    pub cells: Vec<u8>,
    pub rows: [u32; 16],
    pub cols: [u32; 16],
    pub regs: [u32; 16],
    pub row_of: Vec<u8>,
    pub col_of: Vec<u8>,
    pub reg_of: Vec<u8>,
    pub region_cells: Vec<Vec<u8>>,
}

impl Board {
    pub fn empty(palette: &PaletteGrid) -> Self {
        let n = palette.n();
        Self {
            n,
            cells: vec![0; n * n],
            rows: [0; 16],
            cols: [0; 16],
            regs: [0; 16],
            row_of: (0..n * n).map(|i| (i / n) as u8).collect(),
            col_of: (0..n * n).map(|i| (i % n) as u8).collect(),
            reg_of: palette.region_ids(),
            region_cells: palette
                .regions()
                .iter()
                .map(|r| r.iter().map(|&i| i as u8).collect())
                .collect(),
        }
    }

    #[inline]
    pub fn candidates(&self, idx: usize) -> u32 {
        !(self.rows[self.row_of[idx] as usize]
            | self.cols[self.col_of[idx] as usize]
            | self.regs[self.reg_of[idx] as usize])
            & full_mask(self.n)
    }

    /// Places symbol `s` (1-based) without checking legality.
    #[inline]
    pub fn place(&mut self, idx: usize, s: u8) {
        let bit = 1 << (s - 1);
        self.cells[idx] = s;
        self.rows[self.row_of[idx] as usize] |= bit;
        self.cols[self.col_of[idx] as usize] |= bit;
        self.regs[self.reg_of[idx] as usize] |= bit;
    }

    #[inline]
    pub fn clear(&mut self, idx: usize) {
        let s = self.cells[idx];
        let bit = !(1 << (s - 1));
        self.cells[idx] = 0;
        self.rows[self.row_of[idx] as usize] &= bit;
        self.cols[self.col_of[idx] as usize] &= bit;
        self.regs[self.reg_of[idx] as usize] &= bit;
    }

    /// Places `s` if no row/column/region conflict.
    pub fn try_place(&mut self, idx: usize, s: u8) -> bool {
        if self.candidates(idx) & (1 << (s - 1)) == 0 {
            return false;
        }
        self.place(idx, s);
        true
    }

    /// Rows `first..` are empty: every symbol must still fit somewhere in
    /// each of them, and every region must still be able to take each of
    /// its missing symbols.
    fn rows_feasible(&self, first: usize) -> bool {
        let n = self.n;
        let full = full_mask(n);
        for i in first..n {
            let mut fits = 0;
            for j in 0..n {
                fits |= !(self.cols[j] | self.regs[self.reg_of[i * n + j] as usize]);
            }
            if fits & full != full {
                return false;
            }
        }
        let start = first * n;
        self.region_cells.iter().enumerate().all(|(g, cells)| {
            let missing = full & !self.regs[g];
            let fits = cells
                .iter()
                .filter(|&&c| c as usize >= start)
                .fold(0, |acc, &c| acc | !self.cols[self.col_of[c as usize] as usize]);
            missing & !fits == 0
        })
    }

    /// Visits every completion of cells `idx..` in lexicographic order.
    fn fill(&mut self, idx: usize, visit: &mut dyn FnMut(&[u8])) {
        if idx == self.cells.len() {
            visit(&self.cells);
            return;
        }
        if idx % self.n == 0 && !self.rows_feasible(idx / self.n) {
            return;
        }
        let mut avail = self.candidates(idx);
        while avail != 0 {
            let s = avail.trailing_zeros() as u8 + 1;
            avail &= avail - 1;
            self.place(idx, s);
            self.fill(idx + 1, visit);
            self.clear(idx);
        }
    }
}

/// Boards with row 0 set to `1..=n` and row 1 completed, in lexicographic
/// order of row 1.
fn second_row_prefixes(palette: &PaletteGrid) -> Vec<Board> {
    let n = palette.n();
    let mut board = Board::empty(palette);
    for j in 0..n {
        if !board.try_place(j, j as u8 + 1) {
            // the identity row repeats a symbol within one region
            return Vec::new();
        }
    }
    if n == 1 {
        return vec![board];
    }
    let mut prefixes = Vec::new();
    fn go(board: &mut Board, idx: usize, end: usize, out: &mut Vec<Board>) {
        if idx == end {
            out.push(board.clone());
            return;
        }
        let mut avail = board.candidates(idx);
        while avail != 0 {
            let s = avail.trailing_zeros() as u8 + 1;
            avail &= avail - 1;
            board.place(idx, s);
            go(board, idx + 1, end, out);
            board.clear(idx);
        }
    }
    go(&mut board, n, 2 * n, &mut prefixes);
    prefixes
}

/// Streams every canonical grid of `palette` (sequentially, sorted).
pub fn for_each_canonical(palette: &PaletteGrid, mut visit: impl FnMut(&[u8])) {
    let n = palette.n();
    for mut board in second_row_prefixes(palette) {
        let start = (2 * n).min(n * n);
        board.fill(start, &mut visit);
    }
}

/// Number of canonical grids, without storing them.
pub fn count_canonical(palette: &PaletteGrid) -> u64 {
    let n = palette.n();
    let prefixes = second_row_prefixes(palette);
    par::map_ordered(&prefixes, |board| {
        let mut board = board.clone();
        let mut count = 0u64;
        board.fill((2 * n).min(n * n), &mut |_| count += 1);
        count
    })
    .into_iter()
    .sum()
}

/// All canonical grids of one palette, stored as `n²`-byte records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCensus {
    n: usize,
    palette_digest: [u8; 32],
    records: Vec<u8>,
}

impl GridCensus {
    pub fn from_records(n: usize, palette_digest: [u8; 32], records: Vec<u8>) -> Result<Self> {
        if n == 0 || records.len() % (n * n) != 0 {
            return Err(Error::CensusFormat(format!(
                "{} bytes is not a whole number of {n}×{n} records",
                records.len()
            )));
        }
        Ok(Self {
            n,
            palette_digest,
            records,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn palette_digest(&self) -> &[u8; 32] {
        &self.palette_digest
    }

    pub fn canonical_count(&self) -> u64 {
        (self.records.len() / (self.n * self.n)) as u64
    }

    /// `canonical_count · n!`.
    pub fn total_count(&self) -> u128 {
        u128::from(self.canonical_count()) * factorial(self.n)
    }

    pub fn record(&self, i: usize) -> &[u8] {
        let len = self.n * self.n;
        &self.records[i * len..(i + 1) * len]
    }

    pub fn records(&self) -> impl ExactSizeIterator<Item = &[u8]> {
        self.records.chunks_exact(self.n * self.n)
    }

    pub fn raw(&self) -> &[u8] {
        &self.records
    }

    pub fn grid(&self, i: usize) -> SudokuGrid {
        SudokuGrid::from_cells(self.n, self.record(i).to_vec()).expect("census records are valid grids")
    }

    /// Index of `cells` in the (sorted) census.
    pub fn position(&self, cells: &[u8]) -> Option<usize> {
        let len = self.n * self.n;
        let count = self.canonical_count() as usize;
        let (mut lo, mut hi) = (0usize, count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.record(mid).cmp(&cells[..len]) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, cells: &[u8]) -> bool {
        self.position(cells).is_some()
    }

    /// Checks that this census was built for `palette`.
    pub fn check_palette(&self, palette: &PaletteGrid) -> Result<()> {
        if palette.n() != self.n || palette.digest() != self.palette_digest {
            return Err(Error::CensusFormat("census was built for a different palette".into()));
        }
        Ok(())
    }

    /// Header: magic `CDKU`, version, `n`, little-endian `u64` record count,
    /// 32-byte palette digest; then the records.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&[VERSION, self.n as u8])?;
        w.write_all(&self.canonical_count().to_le_bytes())?;
        w.write_all(&self.palette_digest)?;
        w.write_all(&self.records)?;
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut header = [0u8; 4 + 2 + 8 + 32];
        r.read_exact(&mut header)
            .map_err(|e| Error::CensusFormat(format!("truncated header: {e}")))?;
        if &header[..4] != MAGIC {
            return Err(Error::CensusFormat("bad magic".into()));
        }
        if header[4] != VERSION {
            return Err(Error::CensusFormat(format!("unsupported version {}", header[4])));
        }
        let n = header[5] as usize;
        let count = u64::from_le_bytes(header[6..14].try_into().unwrap());
        let digest: [u8; 32] = header[14..46].try_into().unwrap();
        let len = (count as usize)
            .checked_mul(n * n)
            .ok_or_else(|| Error::CensusFormat("record count overflows".into()))?;
        let mut records = vec![0u8; len];
        r.read_exact(&mut records)
            .map_err(|e| Error::CensusFormat(format!("truncated records: {e}")))?;
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(Error::CensusFormat("trailing bytes after records".into()));
        }
        Self::from_records(n, digest, records)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every canonical grid of `palette`, sorted lexicographically.
pub fn enumerate_canonical(palette: &PaletteGrid) -> GridCensus {
    let n = palette.n();
    let prefixes = second_row_prefixes(palette);
    let chunks = par::map_ordered(&prefixes, |board| {
        let mut board = board.clone();
        let mut out = Vec::new();
        board.fill((2 * n).min(n * n), &mut |cells| out.extend_from_slice(cells));
        out
    });
    let total = chunks.iter().map(Vec::len).sum();
    let mut records = Vec::with_capacity(total);
    for chunk in chunks {
        records.extend_from_slice(&chunk);
    }
    debug_assert!(spot_check(&records, palette));
    GridCensus {
        n,
        palette_digest: palette.digest(),
        records,
    }
}

/// Validates roughly one record in a thousand.
fn spot_check(records: &[u8], palette: &PaletteGrid) -> bool {
    let len = palette.n() * palette.n();
    records
        .chunks_exact(len)
        .step_by(1000)
        .all(|g| latin_cells(g, palette.n()) && orthogonal_cells(g, palette.cells(), palette.n()))
}

/// True iff `g` is a Sudoku grid for every palette in `family`.
pub fn is_special(g: &SudokuGrid, family: &[PaletteGrid]) -> bool {
    latin_cells(g.cells(), g.n())
        && family
            .iter()
            .all(|p| p.n() == g.n() && orthogonal_cells(g.cells(), p.cells(), g.n()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCount {
    /// Census indices of the special canonical grids.
    pub canonical: Vec<usize>,
    /// `canonical.len() · n!`.
    pub total: u128,
}

pub fn count_special(census: &GridCensus, family: &[PaletteGrid]) -> SpecialCount {
    let n = census.n();
    let hits = par::map_blocks(census.canonical_count() as usize, 1 << 14, |range| {
        range
            .filter(|&i| {
                let g = census.record(i);
                family.iter().all(|p| orthogonal_cells(g, p.cells(), n))
            })
            .collect::<Vec<_>>()
    });
    let canonical: Vec<usize> = hits.into_iter().flatten().collect();
    let total = canonical.len() as u128 * factorial(n);
    SpecialCount { canonical, total }
}
