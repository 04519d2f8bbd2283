//! Lee-metric primitives over `Z_n²`: weights and distances, balls and
//! anticodes, the closed-form size formulas, and the length-2 perfect and
//! diameter-perfect code constructions.
//!
//! Points are `(row, column)` pairs; the first coordinate indexes rows, so
//! the offset `(1, 0)` points one row down.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z_n²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: u32,
    pub y: u32,
    pub n: u32,
}

impl Point {
    pub fn new(x: u32, y: u32, n: u32) -> Result<Self> {
        for value in [x, y] {
            if value >= n {
                return Err(Error::ResidueOutOfRange { value, modulus: n });
            }
        }
        Ok(Self { x, y, n })
    }

    /// Builds a point from arbitrary integers, reducing them mod `n`.
    pub fn wrapping(x: i64, y: i64, n: u32) -> Self {
        let m = i64::from(n);
        Self {
            x: x.rem_euclid(m) as u32,
            y: y.rem_euclid(m) as u32,
            n,
        }
    }

    pub fn origin(n: u32) -> Self {
        Self { x: 0, y: 0, n }
    }

    pub fn add(self, other: Point) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            x: (self.x + other.x) % self.n,
            y: (self.y + other.y) % self.n,
            n: self.n,
        }
    }

    pub fn neg(self) -> Self {
        Self {
            x: (self.n - self.x) % self.n,
            y: (self.n - self.y) % self.n,
            n: self.n,
        }
    }

    pub fn sub(self, other: Point) -> Self {
        self.add(other.neg())
    }

    pub fn scale(self, k: u32) -> Self {
        let n = u64::from(self.n);
        let k = u64::from(k) % n;
        Self {
            x: (u64::from(self.x) * k % n) as u32,
            y: (u64::from(self.y) * k % n) as u32,
            n: self.n,
        }
    }

    pub fn swapped(self) -> Self {
        Self {
            x: self.y,
            y: self.x,
            n: self.n,
        }
    }

    /// Row-major cell index in an `n × n` array.
    pub fn index(self) -> usize {
        (self.x * self.n + self.y) as usize
    }

    pub fn weight(self) -> u32 {
        residue_weight(self.x, self.n) + residue_weight(self.y, self.n)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[inline]
fn residue_weight(u: u32, n: u32) -> u32 {
    u.min(n - u)
}

/// Lee weight of a vector over `Z_n`.
pub fn lee_weight(u: &[u32], n: u32) -> Result<u32> {
    u.iter().try_fold(0, |acc, &value| {
        if value >= n {
            Err(Error::ResidueOutOfRange { value, modulus: n })
        } else {
            Ok(acc + residue_weight(value, n))
        }
    })
}

pub fn lee_distance(u: Point, v: Point) -> Result<u32> {
    if u.n != v.n {
        return Err(Error::ModulusMismatch {
            left: u.n,
            right: v.n,
        });
    }
    Ok(u.sub(v).weight())
}

/// A subset of `Z_n²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub n: u32,
    pub members: BTreeSet<Point>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.members.contains(p)
    }

    /// Largest pairwise Lee distance.
    pub fn diameter(&self) -> u32 {
        let pts: Vec<_> = self.members.iter().copied().collect();
        let mut best = 0;
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                best = best.max(a.sub(b).weight());
            }
        }
        best
    }
}

/// Offsets `(dx, dy)` with `|dx| + |dy| <= t`.
fn diamond(t: u32) -> impl Iterator<Item = (i64, i64)> {
    let t = i64::from(t);
    (-t..=t).flat_map(move |dx| {
        let rest = t - dx.abs();
        (-rest..=rest).map(move |dy| (dx, dy))
    })
}

pub fn ball(center: Point, t: u32) -> PointSet {
    let members = diamond(t)
        .map(|(dx, dy)| Point::wrapping(i64::from(center.x) + dx, i64::from(center.y) + dy, center.n))
        .collect();
    PointSet {
        n: center.n,
        members,
    }
}

/// All points within distance `t` of an adjacent pair.
pub fn anticode(core: (Point, Point), t: u32) -> Result<PointSet> {
    let distance = lee_distance(core.0, core.1)?;
    if distance != 1 {
        return Err(Error::NonAdjacentCore { distance });
    }
    let mut set = ball(core.0, t);
    set.members.extend(ball(core.1, t).members);
    Ok(set)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Size of the maximum anticode of diameter `2t + 1` in `Z_n^m`.
pub fn anticode_size_formula(m: u32, t: u32) -> u64 {
    let (m, t) = (u64::from(m), u64::from(t));
    (0..=(m - 1).min(t))
        .map(|i| (1u64 << (i + 1)) * binomial(m - 1, i) * binomial(t + 1, i + 1))
        .sum()
}

/// Size of a Lee ball of radius `t` in `Z_n^m` (valid while `2t < n`).
pub fn ball_size_formula(m: u32, t: u32) -> u64 {
    let (m, t) = (u64::from(m), u64::from(t));
    (0..=m.min(t))
        .map(|i| (1u64 << i) * binomial(m, i) * binomial(t, i))
        .sum()
}

pub fn perfect_modulus(t: u32) -> u32 {
    2 * t * t + 2 * t + 1
}

pub fn diameter_modulus(t: u32) -> u32 {
    2 * (t + 1) * (t + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Perfect,
    /// Translates of codes equivalent to the span of `G_0`.
    DiameterCaseI,
    /// Translates of codes equivalent to a single-row generator `[a b]`.
    DiameterCaseII,
}

impl Family {
    pub fn is_diameter(self) -> bool {
        !matches!(self, Family::Perfect)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Perfect => "perfect",
            Family::DiameterCaseI => "diameter-I",
            Family::DiameterCaseII => "diameter-II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Code {
    pub n: u32,
    pub t: u32,
    pub family: Family,
    /// Sorted, duplicate-free.
    pub codewords: Vec<Point>,
    pub offset: Point,
    pub generator: Vec<(u32, u32)>,
}

impl Code {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.codewords.binary_search(p).is_ok()
    }

    /// Coordinate swap of every codeword (and of the generator rows).
    pub fn swapped(&self) -> Code {
        let mut codewords: Vec<_> = self.codewords.iter().map(|p| p.swapped()).collect();
        codewords.sort_unstable();
        Code {
            codewords,
            offset: self.offset.swapped(),
            generator: self.generator.iter().map(|&(a, b)| (b, a)).collect(),
            ..self.clone()
        }
    }

    /// The translate `shift + C`.
    pub fn translated(&self, shift: Point) -> Code {
        let mut codewords: Vec<_> = self.codewords.iter().map(|p| p.add(shift)).collect();
        codewords.sort_unstable();
        Code {
            codewords,
            offset: self.offset.add(shift),
            ..self.clone()
        }
    }
}

/// Additive subgroup of `Z_n²` generated by `rows`, sorted.
pub fn span(rows: &[(u32, u32)], n: u32) -> Vec<Point> {
    let gens: Vec<Point> = rows
        .iter()
        .map(|&(a, b)| Point::wrapping(i64::from(a), i64::from(b), n))
        .collect();
    let mut seen = BTreeSet::from([Point::origin(n)]);
    let mut frontier = vec![Point::origin(n)];
    while let Some(p) = frontier.pop() {
        for &g in &gens {
            let q = p.add(g);
            if seen.insert(q) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn minimum_distance(c: &Code) -> Result<u32> {
    if c.codewords.len() < 2 {
        return Err(Error::TooFewCodewords(c.codewords.len()));
    }
    let mut best = u32::MAX;
    for (i, &a) in c.codewords.iter().enumerate() {
        for &b in &c.codewords[i + 1..] {
            best = best.min(a.sub(b).weight());
        }
    }
    Ok(best)
}

/// `offset + {k·(1, 2t+1)}`, optionally with coordinates swapped before
/// translating.
pub fn construct_perfect_code(t: u32, offset: Point, swap_coords: bool) -> Result<Code> {
    let n = perfect_modulus(t);
    if offset.n != n {
        return Err(Error::BadModulus {
            family: "perfect",
            t,
            got: offset.n,
            expected: n,
        });
    }
    let row = if swap_coords { (2 * t + 1, 1) } else { (1, 2 * t + 1) };
    let mut codewords: Vec<_> = span(&[row], n).into_iter().map(|p| p.add(offset)).collect();
    codewords.sort_unstable();
    Ok(Code {
        n,
        t,
        family: Family::Perfect,
        codewords,
        offset,
        generator: vec![row],
    })
}

/// Generator matrix `G_i = [[t+1+i, t+1-i], [i, 2(t+1)-i]]`.
pub fn diameter_generator(t: u32, i: u32) -> [(u32, u32); 2] {
    [(t + 1 + i, t + 1 - i), (i, 2 * (t + 1) - i)]
}

/// Translate of the row span of `G_i`. Index 0 gives Case I; every other
/// index is reported as Case II.
pub fn construct_diameter_code(t: u32, i: u32, offset: Point) -> Result<Code> {
    let n = diameter_modulus(t);
    if offset.n != n {
        return Err(Error::BadModulus {
            family: "diameter",
            t,
            got: offset.n,
            expected: n,
        });
    }
    if i > t {
        return Err(Error::MatrixIndex { index: i, t });
    }
    let generator = diameter_generator(t, i).to_vec();
    let mut codewords: Vec<_> = span(&generator, n).into_iter().map(|p| p.add(offset)).collect();
    codewords.sort_unstable();
    Ok(Code {
        n,
        t,
        family: if i == 0 {
            Family::DiameterCaseI
        } else {
            Family::DiameterCaseII
        },
        codewords,
        offset,
        generator,
    })
}

/// Coverage count of every cell by the given regions; `None` on overlap.
fn tile_cover<I>(n: u32, regions: I) -> Option<Vec<u8>>
where
    I: IntoIterator<Item = PointSet>,
{
    let mut cover = vec![0u8; (n * n) as usize];
    for region in regions {
        for p in region.members {
            let slot = &mut cover[p.index()];
            if *slot != 0 {
                return None;
            }
            *slot = 1;
        }
    }
    Some(cover)
}

pub fn is_perfect(c: &Code) -> bool {
    if c.family != Family::Perfect || c.codewords.iter().any(|p| p.n != c.n) {
        return false;
    }
    tile_cover(c.n, c.codewords.iter().map(|&p| ball(p, c.t)))
        .is_some_and(|cover| cover.iter().all(|&v| v == 1))
}

/// Default core direction: one row down.
pub fn default_core_offset(n: u32) -> Point {
    Point { x: 1 % n, y: 0, n }
}

pub fn is_diameter_perfect(c: &Code, core_offset: Point) -> bool {
    if !c.family.is_diameter() || core_offset.n != c.n || core_offset.weight() != 1 {
        return false;
    }
    let regions = c
        .codewords
        .iter()
        .map(|&p| anticode((p, p.add(core_offset)), c.t));
    let Ok(regions) = regions.collect::<Result<Vec<_>>>() else {
        return false;
    };
    tile_cover(c.n, regions).is_some_and(|cover| cover.iter().all(|&v| v == 1))
}

/// Backtracking tiling search: the lowest uncovered cell is always covered
/// next, by a translate of `shape` (offsets relative to the anchor).
fn enumerate_tilings(n: u32, shape: &[(i64, i64)]) -> Vec<Vec<Point>> {
    let cells = (n * n) as usize;
    // Every anchor's footprint as cell indices.
    let footprint: Vec<Vec<usize>> = (0..cells)
        .map(|idx| {
            let (x, y) = ((idx as u32 / n) as i64, (idx as u32 % n) as i64);
            let mut f: Vec<usize> = shape
                .iter()
                .map(|&(dx, dy)| Point::wrapping(x + dx, y + dy, n).index())
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    let self_overlapping: Vec<bool> = footprint.iter().map(|f| f.windows(2).any(|w| w[0] == w[1])).collect();
    // anchors whose footprint contains a given cell
    let mut covering: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (anchor, f) in footprint.iter().enumerate() {
        if self_overlapping[anchor] {
            continue;
        }
        for &cell in f {
            covering[cell].push(anchor);
        }
    }

    fn go(
        covered: &mut [bool],
        anchors: &mut Vec<usize>,
        footprint: &[Vec<usize>],
        covering: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(first) = covered.iter().position(|&c| !c) else {
            out.push(anchors.clone());
            return;
        };
        for &anchor in &covering[first] {
            if footprint[anchor].iter().any(|&c| covered[c]) {
                continue;
            }
            for &c in &footprint[anchor] {
                covered[c] = true;
            }
            anchors.push(anchor);
            go(covered, anchors, footprint, covering, out);
            anchors.pop();
            for &c in &footprint[anchor] {
                covered[c] = false;
            }
        }
    }

    let mut out = Vec::new();
    go(
        &mut vec![false; cells],
        &mut Vec::new(),
        &footprint,
        &covering,
        &mut out,
    );
    let mut tilings: Vec<Vec<Point>> = out
        .into_iter()
        .map(|anchors| {
            let mut pts: Vec<Point> = anchors
                .into_iter()
                .map(|a| Point {
                    x: a as u32 / n,
                    y: a as u32 % n,
                    n,
                })
                .collect();
            pts.sort_unstable();
            pts
        })
        .collect();
    tilings.sort();
    tilings
}

/// If `points - points[0]` is an additive subgroup, returns a small
/// generating set for it.
fn subgroup_generators(points: &[Point]) -> Option<Vec<(u32, u32)>> {
    let n = points.first()?.n;
    let base = points[0];
    let mut shifted: Vec<Point> = points.iter().map(|p| p.sub(base)).collect();
    shifted.sort_unstable();
    let contains = |p: &Point| shifted.binary_search(p).is_ok();
    for &a in &shifted {
        for &b in &shifted {
            if !contains(&a.add(b)) {
                return None;
            }
        }
    }
    let mut gens = Vec::new();
    let mut spanned = vec![Point::origin(n)];
    for &p in &shifted {
        if !spanned.contains(&p) {
            gens.push((p.x, p.y));
            spanned = span(&gens, n);
        }
        if spanned.len() == shifted.len() {
            break;
        }
    }
    // Prefer a single generator when the group is cyclic.
    if gens.len() > 1 {
        if let Some(g) = shifted
            .iter()
            .find(|g| span(&[(g.x, g.y)], n).len() == shifted.len())
        {
            gens = vec![(g.x, g.y)];
        }
    }
    Some(gens)
}

/// Every perfect code of radius `t` over `Z_n²`, as ball tilings.
pub fn enumerate_perfect_codes(n: u32, t: u32) -> Result<Vec<Code>> {
    let expected = perfect_modulus(t);
    if n != expected {
        return Err(Error::BadModulus {
            family: "perfect",
            t,
            got: n,
            expected,
        });
    }
    let shape: Vec<_> = diamond(t).collect();
    Ok(enumerate_tilings(n, &shape)
        .into_iter()
        .map(|codewords| {
            let generator = subgroup_generators(&codewords).unwrap_or_default();
            Code {
                n,
                t,
                family: Family::Perfect,
                offset: codewords[0],
                codewords,
                generator,
            }
        })
        .collect())
}

/// Every code whose core-anchored anticodes tile `Z_n²` and whose minimum
/// distance is at least `2t + 2`.
pub fn enumerate_diameter_codes(n: u32, t: u32, core_offset: Point) -> Result<Vec<Code>> {
    let expected = diameter_modulus(t);
    if n != expected {
        return Err(Error::BadModulus {
            family: "diameter",
            t,
            got: n,
            expected,
        });
    }
    let core = (Point::origin(n), core_offset);
    anticode(core, t)?;
    let (cx, cy) = (i64::from(core_offset.x), i64::from(core_offset.y));
    let (cx, cy) = (
        if cx > i64::from(n) / 2 { cx - i64::from(n) } else { cx },
        if cy > i64::from(n) / 2 { cy - i64::from(n) } else { cy },
    );
    let mut shape: Vec<(i64, i64)> = diamond(t).collect();
    shape.extend(diamond(t).map(|(dx, dy)| (dx + cx, dy + cy)));
    shape.sort_unstable();
    shape.dedup();
    let mut codes = Vec::new();
    for codewords in enumerate_tilings(n, &shape) {
        let probe = Code {
            n,
            t,
            family: Family::DiameterCaseI,
            offset: codewords[0],
            codewords,
            generator: Vec::new(),
        };
        if minimum_distance(&probe)? < 2 * t + 2 {
            continue;
        }
        let generator = subgroup_generators(&probe.codewords).unwrap_or_default();
        let family = if generator.len() == 1 {
            Family::DiameterCaseII
        } else {
            Family::DiameterCaseI
        };
        codes.push(Code {
            family,
            generator,
            ..probe
        });
    }
    Ok(codes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32, y: u32, n: u32) -> Point {
        Point::new(x, y, n).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(lee_weight(&[0, 0], 5).unwrap(), 0);
        assert_eq!(lee_weight(&[3, 1], 5).unwrap(), 3);
        assert_eq!(lee_weight(&[4, 4], 8).unwrap(), 8);
        assert!(lee_weight(&[5, 0], 5).is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(lee_distance(p(2, 3, 5), p(2, 3, 5)).unwrap(), 0);
        assert_eq!(lee_distance(p(0, 0, 5), p(3, 1, 5)).unwrap(), 3);
        assert_eq!(lee_distance(p(0, 0, 8), p(1, 3, 8)).unwrap(), 4);
        assert!(matches!(
            lee_distance(p(0, 0, 5), p(0, 0, 8)),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn minimum_distance_of_small_codes() {
        let pair = Code {
            n: 5,
            t: 1,
            family: Family::Perfect,
            codewords: vec![p(0, 0, 5), p(0, 1, 5)],
            offset: p(0, 0, 5),
            generator: vec![],
        };
        assert_eq!(minimum_distance(&pair).unwrap(), 1);
        let single = Code {
            codewords: vec![p(0, 0, 5)],
            ..pair
        };
        assert!(matches!(minimum_distance(&single), Err(Error::TooFewCodewords(1))));
    }

    #[test]
    fn radius_one_ball() {
        let b = ball(p(0, 0, 5), 1);
        let expected: BTreeSet<_> = [(0, 0), (1, 0), (4, 0), (0, 1), (0, 4)]
            .into_iter()
            .map(|(x, y)| p(x, y, 5))
            .collect();
        assert_eq!(b.members, expected);
        assert_eq!(ball(p(3, 3, 5), 0).len(), 1);
    }

    #[test]
    fn anticode_examples() {
        let core = (p(0, 0, 8), p(1, 0, 8));
        assert_eq!(anticode(core, 0).unwrap().len(), 2);
        let a = anticode(core, 1).unwrap();
        let expected: BTreeSet<_> = [(0, 0), (1, 0), (7, 0), (2, 0), (0, 1), (0, 7), (1, 1), (1, 7)]
            .into_iter()
            .map(|(x, y)| p(x, y, 8))
            .collect();
        assert_eq!(a.members, expected);
        assert_eq!(a.diameter(), 3);
        assert!(matches!(
            anticode((p(0, 0, 8), p(2, 0, 8)), 1),
            Err(Error::NonAdjacentCore { distance: 2 })
        ));
    }

    #[test]
    fn size_formulas() {
        assert_eq!(anticode_size_formula(2, 1), 8);
        assert_eq!(anticode_size_formula(2, 2), 18);
        assert_eq!(anticode_size_formula(1, 0), 2);
        assert_eq!(ball_size_formula(2, 1), 5);
        assert_eq!(ball_size_formula(2, 2), 13);
        for m in 1..6 {
            assert_eq!(ball_size_formula(m, 0), 1);
        }
        for t in 0..=16 {
            assert_eq!(anticode_size_formula(2, t), u64::from(diameter_modulus(t)));
            assert_eq!(ball_size_formula(2, t), u64::from(perfect_modulus(t)));
        }
    }

    #[test]
    fn example_perfect_code() {
        let c = construct_perfect_code(1, Point::origin(5), true).unwrap();
        let mut expected: Vec<_> = [(0, 0), (3, 1), (1, 2), (4, 3), (2, 4)]
            .into_iter()
            .map(|(x, y)| p(x, y, 5))
            .collect();
        expected.sort();
        assert_eq!(c.codewords, expected);
        assert_eq!(minimum_distance(&c).unwrap(), 3);
        assert!(is_perfect(&c));

        let shifted = construct_perfect_code(1, p(2, 2, 5), true).unwrap();
        assert_eq!(shifted, c.translated(p(2, 2, 5)));

        let c13 = construct_perfect_code(2, Point::origin(13), false).unwrap();
        assert_eq!(c13.len(), 13);
        assert_eq!(minimum_distance(&c13).unwrap(), 5);
        assert!(is_perfect(&c13));

        assert!(matches!(
            construct_perfect_code(1, Point::origin(8), false),
            Err(Error::BadModulus { .. })
        ));
    }

    #[test]
    fn column_code_is_not_perfect() {
        let c = Code {
            n: 5,
            t: 1,
            family: Family::Perfect,
            codewords: (0..5).map(|x| p(x, 0, 5)).collect(),
            offset: Point::origin(5),
            generator: vec![(1, 0)],
        };
        assert!(!is_perfect(&c));
    }

    #[test]
    fn example_diameter_codes() {
        let c2 = construct_diameter_code(1, 1, Point::origin(8)).unwrap();
        let mut expected: Vec<_> = [(0, 0), (3, 1), (6, 2), (1, 3), (4, 4), (7, 5), (2, 6), (5, 7)]
            .into_iter()
            .map(|(x, y)| p(x, y, 8))
            .collect();
        expected.sort();
        assert_eq!(c2.codewords, expected);
        assert_eq!(minimum_distance(&c2).unwrap(), 4);
        assert_eq!(c2.family, Family::DiameterCaseII);
        assert!(is_diameter_perfect(&c2, default_core_offset(8)));

        let c1 = construct_diameter_code(1, 0, Point::origin(8)).unwrap();
        let mut expected: Vec<_> = [(0, 0), (2, 2), (4, 4), (6, 6), (0, 4), (2, 6), (4, 0), (6, 2)]
            .into_iter()
            .map(|(x, y)| p(x, y, 8))
            .collect();
        expected.sort();
        assert_eq!(c1.codewords, expected);
        assert_eq!(c1.family, Family::DiameterCaseI);
        assert!(is_diameter_perfect(&c1, default_core_offset(8)));

        // first row of G_1 lies in the span of its second row
        let [first, second] = diameter_generator(1, 1);
        assert!(span(&[second], 8).contains(&Point::wrapping(first.0.into(), first.1.into(), 8)));

        assert!(matches!(
            construct_diameter_code(1, 2, Point::origin(8)),
            Err(Error::MatrixIndex { .. })
        ));
        assert!(construct_diameter_code(1, 0, Point::origin(5)).is_err());
    }

    #[test]
    fn close_codewords_do_not_tile() {
        let mut c = construct_diameter_code(1, 0, Point::origin(8)).unwrap();
        c.codewords[1] = p(0, 2, 8);
        c.codewords.sort();
        assert!(!is_diameter_perfect(&c, default_core_offset(8)));
    }

    #[test]
    fn perfect_codes_over_z5() {
        let codes = enumerate_perfect_codes(5, 1).unwrap();
        assert_eq!(codes.len(), 10);
        for c in &codes {
            assert!(is_perfect(c));
            let mut rows: Vec<_> = c.codewords.iter().map(|p| p.x).collect();
            rows.sort();
            assert_eq!(rows, vec![0, 1, 2, 3, 4]);
            assert!(codes.iter().any(|d| d.codewords == c.swapped().codewords));
        }
        assert!(enumerate_perfect_codes(8, 1).is_err());
    }
}
