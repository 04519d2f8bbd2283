//! Palette grids: the region structure of a Sudoku variant, derived from a
//! code tiling or given directly.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lee::{anticode, ball, is_diameter_perfect, is_perfect, Code, Point};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Perfect { code: Code },
    Diameter { code: Code, core_offset: Point },
    StandardBox { side: usize },
    Jigsaw,
    Custom { note: String },
}

/// An `n × n` array over `1..=n` where every symbol occupies `n` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaletteGrid {
    n: usize,
    cells: Vec<u8>,
    /// Row-major cell indices per symbol; `regions[k - 1]` holds symbol `k`.
    regions: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl PaletteGrid {
    /// Builds a palette from raw cells, rejecting anything that violates the
    /// palette axioms.
    pub fn from_cells(n: usize, cells: Vec<u8>, provenance: Provenance) -> Result<Self> {
        if !(1..=16).contains(&n) {
            return Err(Error::InvalidPalette(format!("unsupported order {n}")));
        }
        if cells.len() != n * n {
            return Err(Error::InvalidPalette(format!(
                "expected {} cells, got {}",
                n * n,
                cells.len()
            )));
        }
        if !cells_are_palette(n, &cells) {
            return Err(Error::InvalidPalette(
                "every symbol 1..=n must appear exactly n times".into(),
            ));
        }
        let mut regions = vec![Vec::with_capacity(n); n];
        for (idx, &s) in cells.iter().enumerate() {
            regions[s as usize - 1].push(idx);
        }
        Ok(Self {
            n,
            cells,
            regions,
            provenance,
        })
    }

    pub fn from_rows(rows: &[Vec<u8>], provenance: Provenance) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPalette("rows are not square".into()));
        }
        Self::from_cells(n, rows.concat(), provenance)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    /// Cells of symbol `symbol` (1-based), row-major.
    pub fn region(&self, symbol: u8) -> &[usize] {
        &self.regions[symbol as usize - 1]
    }

    pub fn regions(&self) -> &[Vec<usize>] {
        &self.regions
    }

    /// Zero-based region id per cell.
    pub fn region_ids(&self) -> Vec<u8> {
        self.cells.iter().map(|&s| s - 1).collect()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.cells.chunks(self.n).map(<[u8]>::to_vec).collect()
    }

    /// True when both palettes induce the same cell partition.
    pub fn same_partition(&self, other: &PaletteGrid) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut a: Vec<_> = self.regions.clone();
        let mut b: Vec<_> = other.regions.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// SHA-256 over the order and the cells; identifies the partition
    /// together with its symbol numbering.
    pub fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update([self.n as u8]);
        h.update(&self.cells);
        h.finalize().into()
    }
}

/// On-disk form of a [`PaletteGrid`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaletteFile {
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
    pub provenance: Provenance,
}

impl PaletteGrid {
    pub fn to_file(&self) -> PaletteFile {
        PaletteFile {
            n: self.n,
            rows: self.rows(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_file(f: PaletteFile) -> Result<Self> {
        if f.rows.len() != f.n {
            return Err(Error::InvalidPalette(format!("n = {} but {} rows", f.n, f.rows.len())));
        }
        Self::from_rows(&f.rows, f.provenance)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }
}

impl fmt::Display for PaletteGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.n.to_string().len();
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn cells_are_palette(n: usize, cells: &[u8]) -> bool {
    let mut counts = vec![0usize; n + 1];
    for &s in cells {
        if s == 0 || s as usize > n {
            return false;
        }
        counts[s as usize] += 1;
    }
    counts[1..].iter().all(|&c| c == n)
}

/// Checks the palette axiom on a raw square array.
pub fn validate_palette(rows: &[Vec<u8>]) -> bool {
    let n = rows.len();
    rows.iter().all(|r| r.len() == n) && cells_are_palette(n, &rows.concat())
}

fn palette_from_regions(n: u32, regions: &[Vec<Point>], provenance: Provenance) -> Result<PaletteGrid> {
    let n = n as usize;
    let mut cells = vec![0u8; n * n];
    for (i, region) in regions.iter().enumerate() {
        for p in region {
            cells[p.index()] = i as u8 + 1;
        }
    }
    PaletteGrid::from_cells(n, cells, provenance)
}

/// Symbol `i` marks the ball around the `i`-th smallest codeword.
pub fn palette_from_perfect(c: &Code) -> Result<PaletteGrid> {
    if !is_perfect(c) {
        return Err(Error::TilingFailure(format!(
            "balls of radius {} around the code do not tile Z_{}²",
            c.t, c.n
        )));
    }
    let regions: Vec<Vec<Point>> = c
        .codewords
        .iter()
        .map(|&p| ball(p, c.t).members.into_iter().collect())
        .collect();
    palette_from_regions(c.n, &regions, Provenance::Perfect { code: c.clone() })
}

/// Symbol `i` marks the anticode with core `{c_i, c_i + core_offset}`.
pub fn palette_from_diameter(c: &Code, core_offset: Point) -> Result<PaletteGrid> {
    if !is_diameter_perfect(c, core_offset) {
        return Err(Error::TilingFailure(format!(
            "anticodes with core offset {core_offset} do not tile Z_{}²",
            c.n
        )));
    }
    let regions = c
        .codewords
        .iter()
        .map(|&p| Ok(anticode((p, p.add(core_offset)), c.t)?.members.into_iter().collect()))
        .collect::<Result<Vec<Vec<Point>>>>()?;
    palette_from_regions(
        c.n,
        &regions,
        Provenance::Diameter {
            code: c.clone(),
            core_offset,
        },
    )
}

/// Classic `b × b` boxes of an order-`b²` grid.
pub fn standard_palette(b: usize) -> Result<PaletteGrid> {
    if b < 2 {
        return Err(Error::InvalidPalette(format!("box side {b} is too small")));
    }
    let n = b * b;
    let cells = (0..n * n)
        .map(|idx| {
            let (r, c) = (idx / n, idx % n);
            ((r / b) * b + c / b + 1) as u8
        })
        .collect();
    PaletteGrid::from_cells(n, cells, Provenance::StandardBox { side: b })
}

/// The 9 × 9 jigsaw layout, kept as a fixed non-code palette.
pub fn jigsaw_palette() -> PaletteGrid {
    const ROWS: [[u8; 9]; 9] = [
        [1, 1, 1, 1, 2, 2, 3, 3, 3],
        [1, 1, 1, 2, 2, 3, 3, 3, 3],
        [1, 4, 2, 2, 5, 3, 6, 3, 6],
        [1, 4, 2, 5, 5, 5, 6, 6, 6],
        [4, 4, 2, 2, 5, 5, 5, 5, 6],
        [4, 4, 7, 7, 7, 7, 9, 5, 6],
        [4, 4, 7, 8, 7, 7, 9, 6, 6],
        [4, 8, 7, 8, 8, 7, 9, 9, 9],
        [8, 8, 8, 8, 8, 9, 9, 9, 9],
    ];
    PaletteGrid::from_cells(9, ROWS.concat(), Provenance::Jigsaw).expect("jigsaw fixture is a palette")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lee::{construct_diameter_code, construct_perfect_code, default_core_offset};

    fn rows(a: &[&[u8]]) -> Vec<Vec<u8>> {
        a.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn example_perfect_palette() {
        let code = construct_perfect_code(1, Point::origin(5), true).unwrap();
        let palette = palette_from_perfect(&code).unwrap();
        let printed = PaletteGrid::from_rows(
            &rows(&[
                &[1, 1, 2, 5, 1],
                &[1, 2, 2, 2, 3],
                &[3, 4, 2, 3, 3],
                &[4, 4, 4, 5, 3],
                &[1, 4, 5, 5, 5],
            ]),
            Provenance::Custom { note: "printed".into() },
        )
        .unwrap();
        assert!(palette.same_partition(&printed));
        let origin_region: Vec<usize> = {
            let sym = palette.get(0, 0);
            palette.region(sym).to_vec()
        };
        let mut expected: Vec<usize> = ball(Point::origin(5), 1).members.iter().map(|p| p.index()).collect();
        expected.sort();
        assert_eq!(origin_region, expected);
        for (i, cw) in code.codewords.iter().enumerate() {
            let mut b: Vec<usize> = ball(*cw, 1).members.iter().map(|p| p.index()).collect();
            b.sort();
            assert_eq!(palette.region(i as u8 + 1), &b[..]);
        }
    }

    #[test]
    fn example_diameter_palette() {
        let code = construct_diameter_code(1, 1, Point::origin(8)).unwrap();
        let palette = palette_from_diameter(&code, default_core_offset(8)).unwrap();
        let printed = PaletteGrid::from_rows(
            &rows(&[
                &[8, 8, 2, 3, 5, 5, 5, 8],
                &[8, 8, 3, 3, 3, 5, 6, 8],
                &[8, 1, 3, 3, 3, 6, 6, 6],
                &[1, 1, 1, 3, 4, 6, 6, 6],
                &[1, 1, 1, 4, 4, 4, 6, 7],
                &[7, 1, 2, 4, 4, 4, 7, 7],
                &[7, 2, 2, 2, 4, 5, 7, 7],
                &[8, 2, 2, 2, 5, 5, 5, 7],
            ]),
            Provenance::Custom { note: "printed".into() },
        )
        .unwrap();
        assert!(palette.same_partition(&printed));
        for (i, cw) in code.codewords.iter().enumerate() {
            let region = palette.region(i as u8 + 1);
            assert_eq!(region.len(), 8);
            assert!(region.contains(&cw.index()));
            assert!(region.contains(&cw.add(default_core_offset(8)).index()));
        }
    }

    #[test]
    fn palette_requires_a_tiling() {
        let mut code = construct_perfect_code(1, Point::origin(5), false).unwrap();
        code.codewords[0] = Point::new(0, 1, 5).unwrap();
        code.codewords.sort();
        assert!(matches!(palette_from_perfect(&code), Err(Error::TilingFailure(_))));
        let mut code = construct_diameter_code(1, 0, Point::origin(8)).unwrap();
        code.codewords.pop();
        assert!(palette_from_diameter(&code, default_core_offset(8)).is_err());
    }

    #[test]
    fn standard_boxes() {
        let p = standard_palette(3).unwrap();
        let printed: Vec<Vec<u8>> = (0..9)
            .map(|r| {
                let band = (r / 3) as u8 * 3;
                [1, 1, 1, 2, 2, 2, 3, 3, 3].iter().map(|v| v + band).collect()
            })
            .collect();
        assert_eq!(p.rows(), printed);
        let centre: Vec<usize> = (3..6).flat_map(|r| (3..6).map(move |c| r * 9 + c)).collect();
        assert_eq!(p.region(5), &centre[..]);
        assert!(validate_palette(&p.rows()));
        assert_eq!(standard_palette(2).unwrap().region(4), &[10, 11, 14, 15]);
        assert!(standard_palette(1).is_err());
    }

    #[test]
    fn validation() {
        assert!(validate_palette(&jigsaw_palette().rows()));
        assert!(!validate_palette(&vec![vec![1u8; 5]; 5]));
        assert!(!validate_palette(&[vec![1, 2], vec![1]]));
        assert!(PaletteGrid::from_cells(5, vec![1; 25], Provenance::Jigsaw).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = palette_from_diameter(&construct_diameter_code(1, 1, Point::origin(8)).unwrap(), default_core_offset(8)).unwrap();
        let back = PaletteGrid::from_json(&p.to_json().unwrap()).unwrap();
        assert_eq!(back, p);
        let mut f = p.to_file();
        f.rows[0][0] = f.rows[0][1] % 8 + 1;
        f.rows[0][1] = f.rows[0][0];
        assert!(PaletteGrid::from_file(f).is_err());
        assert_eq!(standard_palette(2).unwrap().to_string().lines().next(), Some("1 1 2 2"));
    }
}
