//! Rigid motions of `n × n` torus arrays and orbit classification of
//! canonical grids.
//!
//! A motion is stored as the affine index map it pulls back through: the
//! image array at `p` reads the source at `linear · p + shift (mod n)`.
//! Rotation `r` reads `(−j−1, i)`, reflection `s` reads `(i, −j−1)`, and the
//! translations `τ₁`, `τ₂` read `(i−1, j)` and `(i, j−1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::enumerator::GridCensus;
use crate::error::{Error, Result};
use crate::grid::{canonicalize_cells, orthogonal_cells};
use crate::lee::Point;
use crate::palette::PaletteGrid;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RigidMotion {
    /// Entries are -1, 0 or 1; one of the eight signed permutation matrices.
    linear: [[i8; 2]; 2],
    shift: (u32, u32),
    n: u32,
}

impl RigidMotion {
    pub fn identity(n: u32) -> Self {
        Self {
            linear: [[1, 0], [0, 1]],
            shift: (0, 0),
            n,
        }
    }

    /// Quarter turn clockwise.
    pub fn rotation(n: u32) -> Self {
        Self {
            linear: [[0, -1], [1, 0]],
            shift: (n - 1, 0),
            n,
        }
    }

    /// Mirror in the vertical axis.
    pub fn reflection(n: u32) -> Self {
        Self {
            linear: [[1, 0], [0, -1]],
            shift: (0, n - 1),
            n,
        }
    }

    /// `τ₁^a τ₂^b`: shift down by `a` rows and right by `b` columns.
    pub fn translation(a: i64, b: i64, n: u32) -> Self {
        let p = Point::wrapping(-a, -b, n);
        Self {
            linear: [[1, 0], [0, 1]],
            shift: (p.x, p.y),
            n,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn linear(&self) -> [[i8; 2]; 2] {
        self.linear
    }

    pub fn shift(&self) -> Point {
        Point {
            x: self.shift.0,
            y: self.shift.1,
            n: self.n,
        }
    }

    /// Source index read by the image at `(i, j)`.
    pub fn source(&self, i: u32, j: u32) -> (u32, u32) {
        let n = i64::from(self.n);
        let [[a, b], [c, d]] = self.linear.map(|r| r.map(i64::from));
        let (i, j) = (i64::from(i), i64::from(j));
        let x = (a * i + b * j + i64::from(self.shift.0)).rem_euclid(n);
        let y = (c * i + d * j + i64::from(self.shift.1)).rem_euclid(n);
        (x as u32, y as u32)
    }

    /// The motion "apply `other`, then `self`".
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        debug_assert_eq!(self.n, other.n);
        // pullbacks compose in reverse: p ↦ other(self(p))
        let m1 = self.linear.map(|r| r.map(i64::from));
        let m2 = other.linear.map(|r| r.map(i64::from));
        let mut linear = [[0i8; 2]; 2];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (m2[i][0] * m1[0][j] + m2[i][1] * m1[1][j]) as i8;
            }
        }
        let (sx, sy) = (i64::from(self.shift.0), i64::from(self.shift.1));
        let shift = Point::wrapping(
            m2[0][0] * sx + m2[0][1] * sy + i64::from(other.shift.0),
            m2[1][0] * sx + m2[1][1] * sy + i64::from(other.shift.1),
            self.n,
        );
        RigidMotion {
            linear,
            shift: (shift.x, shift.y),
            n: self.n,
        }
    }

    pub fn pow(&self, k: u32) -> RigidMotion {
        (0..k).fold(RigidMotion::identity(self.n), |acc, _| acc.compose(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == RigidMotion::identity(self.n)
    }

    pub fn order(&self) -> u32 {
        let mut m = *self;
        let mut k = 1;
        while !m.is_identity() {
            m = m.compose(self);
            k += 1;
        }
        k
    }

    /// Source cell index for every target cell, row-major.
    pub fn index_map(&self) -> Vec<u16> {
        let n = self.n;
        (0..n * n)
            .map(|idx| {
                let (x, y) = self.source(idx / n, idx % n);
                (x * n + y) as u16
            })
            .collect()
    }

    /// Parses a word such as `t1^3 t2 r` or `t2s`. Letters: `r`, `s`, `t1`,
    /// `t2`; each may carry `^k`. The rightmost factor acts first.
    pub fn parse_word(word: &str, n: u32) -> Result<RigidMotion> {
        let bad = || Error::InvalidGrid(format!("cannot parse motion word {word:?}"));
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut i = 0;
        let mut out = RigidMotion::identity(n);
        if chars.is_empty() || chars == ['e'] || chars == ['i', 'd'] {
            return Ok(out);
        }
        while i < chars.len() {
            let base = match chars[i] {
                'r' => {
                    i += 1;
                    RigidMotion::rotation(n)
                }
                's' => {
                    i += 1;
                    RigidMotion::reflection(n)
                }
                't' => {
                    let which = chars.get(i + 1).ok_or_else(bad)?;
                    i += 2;
                    match which {
                        '1' => RigidMotion::translation(1, 0, n),
                        '2' => RigidMotion::translation(0, 1, n),
                        _ => return Err(bad()),
                    }
                }
                _ => return Err(bad()),
            };
            let mut exp = 1u32;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                exp = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            }
            out = out.compose(&base.pow(exp));
        }
        Ok(out)
    }
}

impl fmt::Display for RigidMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.linear;
        write!(f, "[[{a},{b}],[{c},{d}]]+({},{})", self.shift.0, self.shift.1)
    }
}

/// Applies `m` to a row-major `n × n` array.
pub fn apply<T: Copy>(m: &RigidMotion, cells: &[T]) -> Vec<T> {
    let n = m.n;
    (0..n * n)
        .map(|idx| {
            let (x, y) = m.source(idx / n, idx % n);
            cells[(x * n + y) as usize]
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub name: String,
    pub generators: Vec<RigidMotion>,
    /// Sorted; contains the identity.
    pub elements: Vec<RigidMotion>,
}

impl SymmetryGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn n(&self) -> u32 {
        self.elements[0].n
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Closure of `gens` under composition.
pub fn generate_group(gens: &[RigidMotion]) -> Result<SymmetryGroup> {
    let n = gens.first().map_or(1, |g| g.n);
    if let Some(g) = gens.iter().find(|g| g.n != n) {
        return Err(Error::ModulusMismatch { left: n, right: g.n });
    }
    let limit = 8 * (n as usize) * (n as usize);
    let mut seen = BTreeSet::from([RigidMotion::identity(n)]);
    let mut frontier = vec![RigidMotion::identity(n)];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let next = m.compose(g);
            if seen.insert(next) {
                if seen.len() > limit {
                    return Err(Error::GroupTooLarge { limit });
                }
                frontier.push(next);
            }
        }
    }
    Ok(SymmetryGroup {
        name: String::new(),
        generators: gens.to_vec(),
        elements: seen.into_iter().collect(),
    })
}

fn word(a: i64, b: i64, tail: Option<RigidMotion>, n: u32) -> RigidMotion {
    let t = RigidMotion::translation(a, b, n);
    match tail {
        Some(m) => t.compose(&m),
        None => t,
    }
}

/// `⟨τ₂^{x₁+x₂+1} τ₁^{x₁−x₂} r, τ₁^a τ₂^b⟩` for the perfect code
/// `x + span[a b]`.
pub fn perfect_generators(x: Point, a: u32, b: u32) -> [RigidMotion; 2] {
    let n = x.n;
    let (x1, x2) = (i64::from(x.x), i64::from(x.y));
    [
        word(x1 - x2, x1 + x2 + 1, Some(RigidMotion::rotation(n)), n),
        RigidMotion::translation(a.into(), b.into(), n),
    ]
}

pub fn group_for_perfect(x: Point, a: u32, b: u32) -> Result<SymmetryGroup> {
    generate_group(&perfect_generators(x, a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiameterCase {
    I,
    II,
}

/// Generators for a translate `x + C₀` of a Case I or Case II code; `(a, b)`
/// is the single generator row in Case II and ignored in Case I.
pub fn diameter_generators(case: DiameterCase, x: Point, t: u32, a: u32, b: u32) -> Vec<RigidMotion> {
    let n = x.n;
    let (x1, x2, t) = (i64::from(x.x), i64::from(x.y), i64::from(t));
    let r2 = RigidMotion::rotation(n).pow(2);
    let half_turn = word(2 * x1 + 2, 2 * x2 + 1, Some(r2), n);
    match case {
        DiameterCase::I => vec![
            RigidMotion::translation(t + 1, t + 1, n),
            RigidMotion::translation(0, 2 * (t + 1), n),
            word(0, 2 * x2 + 1, Some(RigidMotion::reflection(n)), n),
            half_turn,
        ],
        DiameterCase::II => vec![RigidMotion::translation(a.into(), b.into(), n), half_turn],
    }
}

pub fn group_for_diameter(case: DiameterCase, x: Point, t: u32, a: u32, b: u32) -> Result<SymmetryGroup> {
    generate_group(&diameter_generators(case, x, t, a, b))
}

/// Orbit size histogram of a census under a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub group: String,
    pub group_order: usize,
    /// orbit size → number of orbits
    pub histogram: BTreeMap<usize, u64>,
    pub classes: u64,
    /// One `(census index, orbit size)` per orbit: the lexicographically
    /// smallest member.
    #[serde(skip)]
    pub representatives: Vec<(usize, usize)>,
}

impl OrbitReport {
    /// `Σ size · count`, which must equal the census size.
    pub fn mass(&self) -> u64 {
        self.histogram.iter().map(|(&s, &c)| s as u64 * c).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "histogram": self.histogram.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            "classes": self.classes,
        })
    }
}

/// Per-grid outcome: `Some(orbit size)` if the grid is its orbit's smallest
/// member.
fn orbit_of(
    cells: &[u8],
    maps: &[Vec<u16>],
    palette: &[u8],
    n: usize,
    scratch: &mut Vec<u8>,
) -> std::result::Result<Option<usize>, usize> {
    let mut stabilizer = 0;
    let mut smallest = true;
    for (k, map) in maps.iter().enumerate() {
        scratch.clear();
        scratch.extend(map.iter().map(|&src| cells[src as usize]));
        canonicalize_cells(scratch, n);
        if !orthogonal_cells(scratch, palette, n) {
            return Err(k);
        }
        match scratch.as_slice().cmp(cells) {
            std::cmp::Ordering::Less => smallest = false,
            std::cmp::Ordering::Equal => stabilizer += 1,
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(smallest.then(|| maps.len() / stabilizer))
}

/// Partitions the census into orbits of the induced action on relabeling
/// classes (apply the motion, then relabel to the canonical form).
pub fn classify(census: &GridCensus, palette: &PaletteGrid, group: &SymmetryGroup) -> Result<OrbitReport> {
    census.check_palette(palette)?;
    let n = census.n();
    if group.n() as usize != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: group.n() as usize,
        });
    }
    let maps: Vec<Vec<u16>> = group.elements.iter().map(RigidMotion::index_map).collect();
    let blocks = par::map_blocks(census.canonical_count() as usize, 1 << 13, |range| {
        let mut scratch = Vec::with_capacity(n * n);
        let mut reps = Vec::new();
        for i in range {
            match orbit_of(census.record(i), &maps, palette.cells(), n, &mut scratch) {
                Ok(Some(size)) => reps.push((i, size)),
                Ok(None) => {}
                Err(k) => return Err((i, k)),
            }
        }
        Ok(reps)
    });
    let mut representatives = Vec::new();
    for block in blocks {
        match block {
            Ok(reps) => representatives.extend(reps),
            Err((index, k)) => {
                return Err(Error::ClosureViolation {
                    motion: group.elements[k].to_string(),
                    index,
                })
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for &(_, size) in &representatives {
        *histogram.entry(size).or_insert(0) += 1;
    }
    Ok(OrbitReport {
        group: group.name.clone(),
        group_order: group.order(),
        classes: representatives.len() as u64,
        histogram,
        representatives,
    })
}

pub fn subgroup_reports(census: &GridCensus, palette: &PaletteGrid, groups: &[SymmetryGroup]) -> Result<Vec<OrbitReport>> {
    groups.iter().map(|g| classify(census, palette, g)).collect()
}

/// Plain-text table: one row per class size (descending), one column per
/// report, then a totals row.
pub fn render_table(reports: &[OrbitReport]) -> String {
    let sizes: BTreeSet<usize> = reports.iter().flat_map(|r| r.histogram.keys().copied()).collect();
    let mut header = vec!["Class size".to_string()];
    header.extend(reports.iter().map(|r| r.group.clone()));
    let mut rows = vec![header];
    for &size in sizes.iter().rev() {
        let mut row = vec![size.to_string()];
        row.extend(
            reports
                .iter()
                .map(|r| r.histogram.get(&size).map(|c| group_digits(*c)).unwrap_or_default()),
        );
        rows.push(row);
    }
    let mut total = vec!["Total".to_string()];
    total.extend(reports.iter().map(|r| group_digits(r.classes)));
    rows.push(total);

    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:>w$}"))
            .collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

/// `1234567` → `1,234,567`.
pub fn group_digits(v: u64) -> String {
    let s = v.to_string();
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if i > 0 && (s.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerator::enumerate_canonical;
    use crate::grid::{fixtures, is_latin, SudokuGrid};
    use crate::lee::construct_perfect_code;
    use crate::palette::palette_from_perfect;

    fn grid5() -> Vec<u8> {
        fixtures::z5_example().into_cells()
    }

    /// Literal index formulas for the four basic motions.
    fn rotate_by_formula(a: &[u8], n: usize) -> Vec<u8> {
        (0..n * n).map(|p| a[(n - 1 - p % n) * n + p / n]).collect()
    }

    fn reflect_by_formula(a: &[u8], n: usize) -> Vec<u8> {
        (0..n * n).map(|p| a[(p / n) * n + n - 1 - p % n]).collect()
    }

    #[test]
    fn basic_motions_match_index_formulas() {
        let g = grid5();
        assert_eq!(apply(&RigidMotion::rotation(5), &g), rotate_by_formula(&g, 5));
        assert_eq!(apply(&RigidMotion::reflection(5), &g), reflect_by_formula(&g, 5));
        let down = apply(&RigidMotion::translation(1, 0, 5), &g);
        let right = apply(&RigidMotion::translation(0, 1, 5), &g);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(down[i * 5 + j], g[((i + 4) % 5) * 5 + j]);
                assert_eq!(right[i * 5 + j], g[i * 5 + (j + 4) % 5]);
            }
        }
        let (a, b) = (3, 2);
        let moved = apply(&RigidMotion::translation(a, b, 5), &g);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(moved[i * 5 + j], g[((i + 5 - a as usize) % 5) * 5 + (j + 5 - b as usize) % 5]);
            }
        }
    }

    #[test]
    fn motion_orders() {
        for n in [5, 8] {
            let r = RigidMotion::rotation(n);
            let s = RigidMotion::reflection(n);
            assert!(r.pow(4).is_identity());
            assert!(s.pow(2).is_identity());
            assert_eq!(r.order(), 4);
            assert_eq!(s.order(), 2);
            assert_eq!(RigidMotion::translation(1, 0, n).order(), n);
        }
    }

    #[test]
    fn composition_matches_sequential_application() {
        let g = grid5();
        let r = RigidMotion::rotation(5);
        let t = RigidMotion::translation(3, 1, 5);
        let s = RigidMotion::reflection(5);
        let composed = t.compose(&r).compose(&s);
        assert_eq!(apply(&composed, &g), apply(&t, &apply(&r, &apply(&s, &g))));
    }

    #[test]
    fn words() {
        let n = 8;
        let w = RigidMotion::parse_word("t1^2 t2 r^2", n).unwrap();
        let expected = RigidMotion::translation(2, 0, n)
            .compose(&RigidMotion::translation(0, 1, n))
            .compose(&RigidMotion::rotation(n).pow(2));
        assert_eq!(w, expected);
        assert_eq!(RigidMotion::parse_word("t2s", n).unwrap(), RigidMotion::translation(0, 1, n).compose(&RigidMotion::reflection(n)));
        assert!(RigidMotion::parse_word("e", n).unwrap().is_identity());
        assert!(RigidMotion::parse_word("q", n).is_err());
        assert!(RigidMotion::parse_word("t3", n).is_err());
    }

    #[test]
    fn phi_has_order_four() {
        for n in [5u32, 13] {
            for x1 in 0..n {
                for x2 in 0..n {
                    let [phi, _] = perfect_generators(Point::new(x1, x2, n).unwrap(), 1, 3);
                    assert!(phi.pow(4).is_identity());
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(generate_group(&[RigidMotion::rotation(5)]).unwrap().order(), 4);
        assert_eq!(generate_group(&[RigidMotion::translation(3, 1, 5)]).unwrap().order(), 5);
        let g = group_for_perfect(Point::new(2, 2, 5).unwrap(), 3, 1).unwrap();
        let [phi, tr] = perfect_generators(Point::new(2, 2, 5).unwrap(), 3, 1);
        assert_eq!(phi, RigidMotion::rotation(5));
        assert_eq!(tr, RigidMotion::parse_word("t1^3 t2", 5).unwrap());
        assert_eq!(g.order(), 20);

        let case_i = group_for_diameter(DiameterCase::I, Point::origin(8), 1, 0, 0).unwrap();
        assert_eq!(case_i.order(), 32);
        let words = ["t1^2 t2^2", "t2^4", "t2 s", "t1^2 t2 r^2"].map(|w| RigidMotion::parse_word(w, 8).unwrap());
        assert_eq!(case_i.generators, words.to_vec());
        let case_ii = group_for_diameter(DiameterCase::II, Point::origin(8), 1, 1, 3).unwrap();
        assert_eq!(case_ii.order(), 16);
        assert!(generate_group(&[RigidMotion::rotation(5), RigidMotion::rotation(8)]).is_err());
    }

    #[test]
    fn motions_preserve_latin() {
        let g = fixtures::z8_example();
        let group = generate_group(&[RigidMotion::rotation(8), RigidMotion::reflection(8), RigidMotion::translation(1, 0, 8)]).unwrap();
        assert_eq!(group.order(), 8 * 64);
        for m in &group.elements {
            let img = SudokuGrid::from_cells(8, apply(m, g.cells())).unwrap();
            assert!(is_latin(&img));
        }
    }

    #[test]
    fn z5_table() {
        let code = construct_perfect_code(1, Point::new(2, 2, 5).unwrap(), true).unwrap();
        let palette = palette_from_perfect(&code).unwrap();
        let census = enumerate_canonical(&palette);
        let [phi, tr] = perfect_generators(code.offset, 3, 1);
        let groups = [
            generate_group(&[phi]).unwrap().named("rot"),
            generate_group(&[tr]).unwrap().named("trans"),
            group_for_perfect(code.offset, 3, 1).unwrap().named("full"),
        ];
        let reports = subgroup_reports(&census, &palette, &groups).unwrap();
        let hist = |r: &OrbitReport| r.histogram.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>();
        assert_eq!(hist(&reports[0]), vec![(1, 3), (2, 1), (4, 3)]);
        assert_eq!(hist(&reports[1]), vec![(1, 2), (5, 3)]);
        assert_eq!(hist(&reports[2]), vec![(1, 2), (5, 1), (10, 1)]);
        for r in &reports {
            assert_eq!(r.mass(), 17);
            for &size in r.histogram.keys() {
                assert_eq!(r.group_order % size, 0);
            }
        }
        let table = render_table(&reports);
        assert!(table.contains("|      Total |   7 |     5 |    4 |"), "{table}");
    }

    #[test]
    fn classify_rejects_motions_that_leave_the_census() {
        let code = construct_perfect_code(1, Point::new(2, 2, 5).unwrap(), true).unwrap();
        let palette = palette_from_perfect(&code).unwrap();
        let census = enumerate_canonical(&palette);
        let bad = generate_group(&[RigidMotion::reflection(5)]).unwrap();
        assert!(matches!(classify(&census, &palette, &bad), Err(Error::ClosureViolation { .. })));
    }

    #[test]
    fn digits() {
        assert_eq!(group_digits(0), "0");
        assert_eq!(group_digits(999), "999");
        assert_eq!(group_digits(6940096), "6,940,096");
    }
}
