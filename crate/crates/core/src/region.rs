//! Aztec diamonds with removed cells and exact tiling counts.
//!
//! [`count_tilings`] is a column-sweep broken-profile dynamic program: cells
//! are visited column by column, bottom to top, and the frontier bitmask has
//! one bit per row recording whether that cell is already covered by a
//! domino sticking out of the previous column (or, for rows above the
//! current cell, by a vertical domino started just below). Removed cells are
//! never offered to a domino.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default order cap for the exact oracle.
pub const DEFAULT_ORACLE_CAP: u32 = 12;

/// A unit cell named by its lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Cell {
    pub i: i64,
    pub j: i64,
}

impl From<(i64, i64)> for Cell {
    fn from((i, j): (i64, i64)) -> Cell {
        Cell { i, j }
    }
}

impl From<Cell> for (i64, i64) {
    fn from(c: Cell) -> (i64, i64) {
        (c.i, c.j)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl Cell {
    pub const fn new(i: i64, j: i64) -> Cell {
        Cell { i, j }
    }

    /// `|i + 1/2| + |j + 1/2| ≤ n`.
    pub fn in_diamond(self, n: u32) -> bool {
        (2 * self.i + 1).abs() + (2 * self.j + 1).abs() <= 2 * i64::from(n)
    }

    /// Black iff `i + j ≡ n (mod 2)`; the left cell of the top row is black.
    pub fn is_black(self, n: u32) -> bool {
        (self.i + self.j - i64::from(n)).rem_euclid(2) == 0
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        (self.i - other.i).abs() + (self.j - other.j).abs() == 1
    }

    /// Mirror in the vertical axis.
    pub fn reflect(self) -> Cell {
        Cell::new(-1 - self.i, self.j)
    }

    /// Quarter turn (clockwise) about the centre.
    pub fn rotate90(self) -> Cell {
        Cell::new(self.j, -1 - self.i)
    }

    pub fn rotate180(self) -> Cell {
        Cell::new(-1 - self.i, -1 - self.j)
    }

    pub fn offset(self, di: i64, dj: i64) -> Cell {
        Cell::new(self.i + di, self.j + dj)
    }
}

/// All cells of the order-`n` diamond in lexicographic order.
pub fn diamond_cells(n: u32) -> Vec<Cell> {
    let n = i64::from(n);
    let mut out = Vec::new();
    for i in -n..n {
        for j in -n..n {
            let c = Cell::new(i, j);
            if c.in_diamond(n as u32) {
                out.push(c);
            }
        }
    }
    out
}

/// An Aztec diamond with a set of removed cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RegionJson", into = "RegionJson")]
pub struct Region {
    order: u32,
    removed: BTreeSet<Cell>,
}

#[derive(Serialize, Deserialize)]
struct RegionJson {
    order: u32,
    removed: Vec<Cell>,
}

impl TryFrom<RegionJson> for Region {
    type Error = Error;
    fn try_from(r: RegionJson) -> Result<Region> {
        Region::new(r.order, r.removed)
    }
}

impl From<Region> for RegionJson {
    fn from(r: Region) -> RegionJson {
        RegionJson {
            order: r.order,
            removed: r.removed.into_iter().collect(),
        }
    }
}

impl Region {
    pub fn new<I: IntoIterator<Item = Cell>>(order: u32, removed: I) -> Result<Region> {
        let mut set = BTreeSet::new();
        for c in removed {
            if !c.in_diamond(order) {
                return Err(Error::OutsideDiamond(c.i, c.j, order));
            }
            if !set.insert(c) {
                return Err(Error::DuplicateCell(c.i, c.j));
            }
        }
        Ok(Region {
            order,
            removed: set,
        })
    }

    pub fn full(order: u32) -> Region {
        Region {
            order,
            removed: BTreeSet::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn removed(&self) -> &BTreeSet<Cell> {
        &self.removed
    }

    /// A copy of this region with more cells removed.
    pub fn without<I: IntoIterator<Item = Cell>>(&self, cells: I) -> Result<Region> {
        Region::new(self.order, self.removed.iter().copied().chain(cells))
    }

    /// Whether `c` is in the diamond and not removed.
    pub fn contains(&self, c: Cell) -> bool {
        c.in_diamond(self.order) && !self.removed.contains(&c)
    }

    /// Removed black cells minus removed white cells.
    pub fn balance(&self) -> i64 {
        self.removed
            .iter()
            .map(|c| if c.is_black(self.order) { 1 } else { -1 })
            .sum()
    }

    /// Applies a cell symmetry of the diamond to the removed set.
    pub fn map(&self, f: impl Fn(Cell) -> Cell) -> Region {
        Region {
            order: self.order,
            removed: self.removed.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("region serializes")
    }

    pub fn from_json(s: &str) -> Result<Region> {
        serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))
    }
}

/// A domino as an ordered pair of adjacent cells, smaller cell first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(Cell, Cell)", into = "(Cell, Cell)")]
pub struct Domino {
    a: Cell,
    b: Cell,
}

impl Domino {
    pub fn new(x: Cell, y: Cell) -> Result<Domino> {
        if !x.is_adjacent(y) {
            return Err(Error::NotAdjacent(x.i, x.j, y.i, y.j));
        }
        Ok(if x < y {
            Domino { a: x, b: y }
        } else {
            Domino { a: y, b: x }
        })
    }

    pub fn cells(self) -> (Cell, Cell) {
        (self.a, self.b)
    }

    pub fn is_horizontal(self) -> bool {
        self.a.j == self.b.j
    }
}

impl TryFrom<(Cell, Cell)> for Domino {
    type Error = Error;
    fn try_from((x, y): (Cell, Cell)) -> Result<Domino> {
        Domino::new(x, y)
    }
}

impl From<Domino> for (Cell, Cell) {
    fn from(d: Domino) -> (Cell, Cell) {
        (d.a, d.b)
    }
}

/// A tiling, kept with its dominoes sorted so that equal tilings compare and
/// serialize identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tiling {
    order: u32,
    dominoes: Vec<Domino>,
}

impl Tiling {
    pub fn new(order: u32, mut dominoes: Vec<Domino>) -> Tiling {
        dominoes.sort_unstable();
        Tiling { order, dominoes }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dominoes(&self) -> &[Domino] {
        &self.dominoes
    }

    pub fn contains(&self, d: Domino) -> bool {
        self.dominoes.binary_search(&d).is_ok()
    }

    /// Checks that every cell of `region` is covered exactly once and nothing
    /// else is covered.
    pub fn validate(&self, region: &Region) -> Result<()> {
        if self.order != region.order {
            return Err(Error::InvalidTiling(format!(
                "tiling has order {}, region has order {}",
                self.order, region.order
            )));
        }
        let mut seen = BTreeSet::new();
        for d in &self.dominoes {
            for c in [d.a, d.b] {
                if !region.contains(c) {
                    return Err(Error::InvalidTiling(format!("{c} is not in the region")));
                }
                if !seen.insert(c) {
                    return Err(Error::InvalidTiling(format!("{c} is covered twice")));
                }
            }
        }
        let expected = diamond_cells(region.order).len() - region.removed.len();
        if seen.len() != expected {
            return Err(Error::InvalidTiling(format!(
                "{} of {expected} cells covered",
                seen.len()
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tiling serializes")
    }

    pub fn from_json(s: &str) -> Result<Tiling> {
        let t: Tiling = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(Tiling::new(t.order, t.dominoes))
    }
}

/// Exact number of domino tilings, using the default order cap.
pub fn count_tilings(region: &Region) -> Result<BigUint> {
    count_tilings_capped(region, DEFAULT_ORACLE_CAP)
}

pub fn count_tilings_capped(region: &Region, cap: u32) -> Result<BigUint> {
    let n = region.order;
    // the frontier mask holds 2n bits
    if n > cap.min(31) {
        return Err(Error::OracleTooLarge { order: n, cap });
    }
    if region.balance() != 0 {
        return Ok(BigUint::zero());
    }
    let n = i64::from(n);
    let mut states: HashMap<u64, BigUint> = HashMap::from([(0, BigUint::one())]);
    for i in -n..n {
        let half = n - (2 * i + 1).abs().div_euclid(2) - 1;
        // rows j with |2j + 1| ≤ 2n − |2i + 1|
        for j in (-half - 1)..=half {
            let cell = Cell::new(i, j);
            let bit = 1u64 << (j + n);
            let mut next: HashMap<u64, BigUint> = HashMap::with_capacity(states.len() * 2);
            let mut push = |mask: u64, cnt: &BigUint| {
                *next.entry(mask).or_default() += cnt;
            };
            let free = region.contains(cell);
            let right = region.contains(cell.offset(1, 0));
            let up = region.contains(cell.offset(0, 1));
            for (&mask, cnt) in &states {
                if mask & bit != 0 {
                    push(mask & !bit, cnt);
                } else if !free {
                    push(mask, cnt);
                } else {
                    if right {
                        push(mask | bit, cnt);
                    }
                    if up && mask & (bit << 1) == 0 {
                        push(mask | (bit << 1), cnt);
                    }
                }
            }
            states = next;
            if states.is_empty() {
                return Ok(BigUint::zero());
            }
        }
    }
    Ok(states.remove(&0).unwrap_or_default())
}

/// All tilings of `region`, failing once more than `limit` are found.
pub fn enumerate_tilings(region: &Region, limit: usize) -> Result<Vec<Tiling>> {
    let cells: Vec<Cell> = diamond_cells(region.order)
        .into_iter()
        .filter(|&c| region.contains(c))
        .collect();
    let mut covered: BTreeSet<Cell> = BTreeSet::new();
    let mut current = Vec::new();
    let mut out = Vec::new();
    enumerate_rec(
        region,
        &cells,
        0,
        &mut covered,
        &mut current,
        &mut out,
        limit,
    )?;
    Ok(out)
}

fn enumerate_rec(
    region: &Region,
    cells: &[Cell],
    mut idx: usize,
    covered: &mut BTreeSet<Cell>,
    current: &mut Vec<Domino>,
    out: &mut Vec<Tiling>,
    limit: usize,
) -> Result<()> {
    while idx < cells.len() && covered.contains(&cells[idx]) {
        idx += 1;
    }
    if idx == cells.len() {
        if out.len() == limit {
            return Err(Error::TooManyTilings(limit));
        }
        out.push(Tiling::new(region.order, current.clone()));
        return Ok(());
    }
    let c = cells[idx];
    for partner in [c.offset(0, 1), c.offset(1, 0)] {
        if region.contains(partner) && !covered.contains(&partner) {
            covered.insert(c);
            covered.insert(partner);
            current.push(Domino::new(c, partner).expect("adjacent"));
            let res = enumerate_rec(region, cells, idx + 1, covered, current, out, limit);
            current.pop();
            covered.remove(&partner);
            covered.remove(&c);
            res?;
        }
    }
    Ok(())
}

/// Checks Kuo's condensation identity for the 2×2 block `a, b, c, d` (listed
/// cyclically) inside `region`:
///
/// ```text
/// M(G) M(G−abcd) = M(G−ab) M(G−cd) − M(G−ac) M(G−bd) + M(G−ad) M(G−bc)
/// ```
pub fn kuo_check(region: &Region, a: Cell, b: Cell, c: Cell, d: Cell) -> Result<bool> {
    let block = [a, b, c, d];
    let cyclic = (0..4).all(|k| block[k].is_adjacent(block[(k + 1) % 4]));
    let distinct = block.iter().collect::<BTreeSet<_>>().len() == 4;
    if !cyclic || !distinct {
        return Err(Error::NotABlock);
    }
    for x in block {
        if !region.contains(x) {
            return Err(Error::OutsideDiamond(x.i, x.j, region.order));
        }
    }
    let m = |cells: &[Cell]| -> Result<BigInt> {
        Ok(BigInt::from(count_tilings(
            &region.without(cells.iter().copied())?,
        )?))
    };
    let lhs = m(&[])? * m(&block)?;
    let rhs = m(&[a, b])? * m(&[c, d])? - m(&[a, c])? * m(&[b, d])? + m(&[a, d])? * m(&[b, c])?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central_block() -> [Cell; 4] {
        [
            Cell::new(-1, -1),
            Cell::new(-1, 0),
            Cell::new(0, -1),
            Cell::new(0, 0),
        ]
    }

    #[test]
    fn diamond_membership() {
        assert_eq!(diamond_cells(1).len(), 4);
        assert_eq!(diamond_cells(3).len(), 24);
        assert!(Cell::new(-1, 0).in_diamond(1));
        assert!(!Cell::new(1, 0).in_diamond(1));
        // top row of the order-2 diamond is cells (−1, 1), (0, 1); left is black
        assert!(Cell::new(-1, 1).is_black(2));
        assert!(!Cell::new(0, 1).is_black(2));
    }

    #[test]
    fn full_diamond_counts() {
        assert_eq!(
            count_tilings(&Region::full(3)).unwrap(),
            BigUint::from(64u32)
        );
    }

    #[test]
    fn holey_counts() {
        let r = Region::new(6, central_block()).unwrap();
        assert_eq!(count_tilings(&r).unwrap(), BigUint::from(262_144u32));
        let r = Region::new(7, central_block()).unwrap();
        assert_eq!(count_tilings(&r).unwrap(), BigUint::from(33_554_432u32));
        let r = Region::new(1, [Cell::new(-1, 0), Cell::new(0, 0)]).unwrap();
        assert_eq!(count_tilings(&r).unwrap(), BigUint::one());
    }

    #[test]
    fn unbalanced_region_has_no_tilings() {
        let r = Region::new(3, [Cell::new(0, 0), Cell::new(1, 1)]).unwrap();
        assert_ne!(r.balance(), 0);
        assert_eq!(count_tilings(&r).unwrap(), BigUint::zero());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            count_tilings_capped(&Region::full(5), 4),
            Err(Error::OracleTooLarge { order: 5, cap: 4 })
        );
    }

    #[test]
    fn region_validation() {
        assert!(matches!(
            Region::new(2, [Cell::new(2, 0)]),
            Err(Error::OutsideDiamond(2, 0, 2))
        ));
        assert!(matches!(
            Region::new(2, [Cell::new(0, 0), Cell::new(0, 0)]),
            Err(Error::DuplicateCell(0, 0))
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_tilings(&Region::full(1), 10).unwrap().len(), 2);
        assert_eq!(enumerate_tilings(&Region::full(2), 10).unwrap().len(), 8);
        let r = Region::new(2, [Cell::new(-1, 1), Cell::new(0, 1)]).unwrap();
        let tilings = enumerate_tilings(&r, 10).unwrap();
        assert_eq!(tilings.len(), 6);
        for t in &tilings {
            t.validate(&r).unwrap();
        }
        assert_eq!(
            enumerate_tilings(&Region::full(3), 10),
            Err(Error::TooManyTilings(10))
        );
    }

    #[test]
    fn kuo_examples() {
        let [d, a, c, b] = central_block();
        assert!(kuo_check(&Region::full(4), a, b, c, d).unwrap());
        let blk = [
            Cell::new(0, 0),
            Cell::new(1, 0),
            Cell::new(1, 1),
            Cell::new(0, 1),
        ];
        assert!(kuo_check(&Region::full(5), blk[0], blk[1], blk[2], blk[3]).unwrap());
        assert_eq!(
            kuo_check(&Region::full(4), a, c, b, d),
            Err(Error::NotABlock)
        );
    }

    #[test]
    fn json_shapes() {
        let r = Region::new(3, [Cell::new(0, 0), Cell::new(-1, 0)]).unwrap();
        assert_eq!(r.to_json(), r#"{"order":3,"removed":[[-1,0],[0,0]]}"#);
        assert_eq!(Region::from_json(&r.to_json()).unwrap(), r);
        let t = Tiling::new(
            1,
            vec![
                Domino::new(Cell::new(0, 0), Cell::new(-1, 0)).unwrap(),
                Domino::new(Cell::new(-1, -1), Cell::new(0, -1)).unwrap(),
            ],
        );
        assert_eq!(
            t.to_json(),
            r#"{"order":1,"dominoes":[[[-1,-1],[0,-1]],[[-1,0],[0,0]]]}"#
        );
        assert_eq!(Tiling::from_json(&t.to_json()).unwrap(), t);
        assert!(Region::from_json(r#"{"order":1,"removed":[[5,5]]}"#).is_err());
    }
}
