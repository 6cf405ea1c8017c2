//! Uniform random tilings by domino shuffling.
//!
//! One step grows a tiling of the order-`n−1` diamond into one of order `n`:
//!
//! 1. **destruction**: every 2×2 block holding two parallel dominoes that
//!    are about to move into each other is emptied;
//! 2. **sliding**: every other domino moves one unit. A horizontal domino
//!    moves north if its left cell is black and south otherwise; a vertical
//!    domino moves east if its bottom cell is black and west otherwise
//!    (colours taken in the order-`n−1` diamond);
//! 3. **creation**: the uncovered part of the order-`n` diamond splits into
//!    2×2 blocks. They are visited in row-major order of their lower-left
//!    cell (rows bottom to top, cells left to right) and each consumes one
//!    coin: heads fills it with two horizontal dominoes, tails with two
//!    vertical ones.
//!
//! [`CoinSource`] draws 64-bit words from ChaCha8 seeded with `seed` on
//! stream `stream` and hands out their bits least-significant first.

use std::fmt::Write as _;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::region::{Cell, Domino, Region, Tiling};

/// A source of fair coin flips.
pub trait Coins {
    /// `true` is heads.
    fn flip(&mut self) -> bool;
}

/// Seeded, reproducible coin stream.
#[derive(Clone, Debug)]
pub struct CoinSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
    word: u64,
    bits_left: u32,
}

impl CoinSource {
    pub fn new(seed: u64) -> CoinSource {
        Self::with_stream(seed, 0)
    }

    /// Independent stream `stream` for the same seed; sample `k` of a batch
    /// uses stream `k`.
    pub fn with_stream(seed: u64, stream: u64) -> CoinSource {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        CoinSource {
            seed,
            stream,
            rng,
            word: 0,
            bits_left: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl Coins for CoinSource {
    fn flip(&mut self) -> bool {
        if self.bits_left == 0 {
            self.word = self.rng.next_u64();
            self.bits_left = 64;
        }
        let bit = self.word & 1 == 1;
        self.word >>= 1;
        self.bits_left -= 1;
        bit
    }
}

/// Always lands the same way.
#[derive(Clone, Copy, Debug)]
pub struct ConstantCoins(pub bool);

impl Coins for ConstantCoins {
    fn flip(&mut self) -> bool {
        self.0
    }
}

impl<F: FnMut() -> bool> Coins for F {
    fn flip(&mut self) -> bool {
        self()
    }
}

/// Movement direction of a domino during a shuffle step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    /// Direction of `d` in a tiling of the order-`n` diamond.
    pub fn of(d: Domino, n: u32) -> Direction {
        let (lo, _) = d.cells();
        match (d.is_horizontal(), lo.is_black(n)) {
            (true, true) => Direction::North,
            (true, false) => Direction::South,
            (false, true) => Direction::East,
            (false, false) => Direction::West,
        }
    }

    fn delta(self) -> (i64, i64) {
        match self {
            Direction::North => (0, 1),
            Direction::South => (0, -1),
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
        }
    }
}

/// Where a cell's partner sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Right,
    Left,
    Up,
    Down,
}

/// Dense tiling of the order-`n` diamond.
#[derive(Clone, Debug)]
struct Board {
    order: u32,
    cells: Vec<Option<Link>>,
}

impl Board {
    fn empty(order: u32) -> Board {
        let side = 2 * order as usize;
        Board {
            order,
            cells: vec![None; side * side],
        }
    }

    fn index(&self, c: Cell) -> Option<usize> {
        if !c.in_diamond(self.order) {
            return None;
        }
        let n = i64::from(self.order);
        Some(((c.j + n) * 2 * n + (c.i + n)) as usize)
    }

    fn get(&self, c: Cell) -> Option<Link> {
        self.index(c).and_then(|k| self.cells[k])
    }

    fn is_free(&self, c: Cell) -> bool {
        self.index(c).is_some_and(|k| self.cells[k].is_none())
    }

    fn place(&mut self, d: Domino) -> Result<()> {
        let (lo, hi) = d.cells();
        let (a, b) = if d.is_horizontal() {
            (Link::Right, Link::Left)
        } else {
            (Link::Up, Link::Down)
        };
        for c in [lo, hi] {
            if !self.is_free(c) {
                return Err(Error::InvalidTiling(format!(
                    "cannot place a domino on {c}"
                )));
            }
        }
        let (ilo, ihi) = (self.index(lo).unwrap(), self.index(hi).unwrap());
        self.cells[ilo] = Some(a);
        self.cells[ihi] = Some(b);
        Ok(())
    }

    fn remove(&mut self, d: Domino) {
        let (lo, hi) = d.cells();
        for c in [lo, hi] {
            let k = self.index(c).unwrap();
            self.cells[k] = None;
        }
    }

    /// The domino whose lower/left cell is `c`, if any.
    fn domino_at(&self, c: Cell) -> Option<Domino> {
        let partner = match self.get(c)? {
            Link::Right => c.offset(1, 0),
            Link::Up => c.offset(0, 1),
            _ => return None,
        };
        Some(Domino::new(c, partner).expect("adjacent"))
    }

    fn has(&self, d: Domino) -> bool {
        let (lo, _) = d.cells();
        self.domino_at(lo) == Some(d)
    }

    /// Cells of the diamond in row-major order.
    fn cells_row_major(order: u32) -> impl Iterator<Item = Cell> {
        let n = i64::from(order);
        (-n..n).flat_map(move |j| {
            let half = n - (2 * j + 1).abs().div_euclid(2);
            (-half..half).map(move |i| Cell::new(i, j))
        })
    }

    fn dominoes(&self) -> Vec<Domino> {
        Self::cells_row_major(self.order)
            .filter_map(|c| self.domino_at(c))
            .collect()
    }

    fn from_tiling(t: &Tiling) -> Result<Board> {
        let mut b = Board::empty(t.order());
        for &d in t.dominoes() {
            b.place(d)?;
        }
        Ok(b)
    }

    fn to_tiling(&self) -> Tiling {
        Tiling::new(self.order, self.dominoes())
    }

    fn step<C: Coins + ?Sized>(&self, coins: &mut C) -> Result<Board> {
        let old = self.order;
        let mut survivors = self.clone();
        for c in Self::cells_row_major(old) {
            let (right, up, diag) = (c.offset(1, 0), c.offset(0, 1), c.offset(1, 1));
            let pairs = [
                (
                    Domino::new(c, right),
                    Domino::new(up, diag),
                    Direction::North,
                ),
                (
                    Domino::new(c, up),
                    Domino::new(right, diag),
                    Direction::East,
                ),
            ];
            for (first, second, dir) in pairs {
                let (first, second) = (first.unwrap(), second.unwrap());
                if survivors.has(first)
                    && survivors.has(second)
                    && Direction::of(first, old) == dir
                    && Direction::of(second, old) != dir
                {
                    survivors.remove(first);
                    survivors.remove(second);
                }
            }
        }

        let mut next = Board::empty(old + 1);
        for d in survivors.dominoes() {
            let (di, dj) = Direction::of(d, old).delta();
            let (lo, hi) = d.cells();
            next.place(Domino::new(lo.offset(di, dj), hi.offset(di, dj))?)?;
        }

        for c in Self::cells_row_major(old + 1) {
            if !next.is_free(c) {
                continue;
            }
            let (right, up, diag) = (c.offset(1, 0), c.offset(0, 1), c.offset(1, 1));
            if !(next.is_free(right) && next.is_free(up) && next.is_free(diag)) {
                return Err(Error::InvalidTiling(format!(
                    "uncovered cell {c} does not start an empty 2x2 block"
                )));
            }
            let pair = if coins.flip() {
                [Domino::new(c, right)?, Domino::new(up, diag)?]
            } else {
                [Domino::new(c, up)?, Domino::new(right, diag)?]
            };
            for d in pair {
                next.place(d)?;
            }
        }
        Ok(next)
    }
}

/// A full tiling of the order-`order` diamond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleState {
    order: u32,
    tiling: Tiling,
}

impl ShuffleState {
    /// The empty tiling of the order-0 diamond.
    pub fn empty() -> ShuffleState {
        ShuffleState {
            order: 0,
            tiling: Tiling::new(0, Vec::new()),
        }
    }

    pub fn new(tiling: Tiling) -> Result<ShuffleState> {
        tiling.validate(&Region::full(tiling.order()))?;
        Ok(ShuffleState {
            order: tiling.order(),
            tiling,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn into_tiling(self) -> Tiling {
        self.tiling
    }
}

/// One shuffling step: order `n−1` to order `n`.
pub fn shuffle_step<C: Coins + ?Sized>(
    state: &ShuffleState,
    coins: &mut C,
) -> Result<ShuffleState> {
    state.tiling.validate(&Region::full(state.order))?;
    let next = Board::from_tiling(&state.tiling)?.step(coins)?;
    Ok(ShuffleState {
        order: next.order,
        tiling: next.to_tiling(),
    })
}

fn sample_board<C: Coins + ?Sized>(n: u32, coins: &mut C) -> Board {
    let mut board = Board::empty(0);
    for _ in 0..n {
        board = board.step(coins).expect("shuffling preserves validity");
    }
    board
}

/// A tiling of the order-`n` diamond built by `n` shuffling steps from the
/// empty diamond; uniform over all tilings when the coins are fair.
pub fn sample<C: Coins + ?Sized>(n: u32, coins: &mut C) -> Tiling {
    sample_board(n, coins).to_tiling()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub hits: u64,
    pub samples: u64,
    pub frequency: f64,
    pub stderr: f64,
}

/// Fraction of `samples` shuffled tilings containing the domino `{a, b}`.
/// Sample `k` uses `CoinSource::with_stream(seed, k)`, so the result does not
/// depend on how the work is scheduled.
pub fn mc_estimate(n: u32, a: Cell, b: Cell, samples: u64, seed: u64) -> Result<McEstimate> {
    for c in [a, b] {
        if !c.in_diamond(n) {
            return Err(Error::OutsideDiamond(c.i, c.j, n));
        }
    }
    let target = Domino::new(a, b)?;
    if samples == 0 {
        return Err(Error::Invalid("samples must be positive".into()));
    }
    let hits = (0..samples)
        .into_par_iter()
        .filter(|&k| sample_board(n, &mut CoinSource::with_stream(seed, k)).has(target))
        .count() as u64;
    let frequency = hits as f64 / samples as f64;
    Ok(McEstimate {
        hits,
        samples,
        frequency,
        stderr: (frequency * (1.0 - frequency) / samples as f64).sqrt(),
    })
}

/// Static SVG picture of a tiling, one colour per movement class.
pub fn render_svg(tiling: &Tiling, cell_px: u32) -> String {
    let n = i64::from(tiling.order());
    let px = i64::from(cell_px);
    let side = 2 * n * px;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    for &d in tiling.dominoes() {
        let (lo, _) = d.cells();
        let (w, h) = if d.is_horizontal() { (2, 1) } else { (1, 2) };
        let colour = match Direction::of(d, tiling.order()) {
            Direction::North => "#d62728",
            Direction::South => "#1f77b4",
            Direction::East => "#2ca02c",
            Direction::West => "#ffbf00",
        };
        let x = (lo.i + n) * px;
        let y = (n - lo.j - h) * px;
        let _ = writeln!(
            out,
            r#"  <rect x="{x}" y="{y}" width="{}" height="{}" fill="{colour}" stroke="black" stroke-width="1"/>"#,
            w * px,
            h * px
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_is_one_block() {
        let s = shuffle_step(&ShuffleState::empty(), &mut ConstantCoins(true)).unwrap();
        let expected = Tiling::new(
            1,
            vec![
                Domino::new(Cell::new(-1, -1), Cell::new(0, -1)).unwrap(),
                Domino::new(Cell::new(-1, 0), Cell::new(0, 0)).unwrap(),
            ],
        );
        assert_eq!(s.tiling(), &expected);
        let v = shuffle_step(&ShuffleState::empty(), &mut ConstantCoins(false)).unwrap();
        assert!(v.tiling().dominoes().iter().all(|d| !d.is_horizontal()));
    }

    #[test]
    fn all_heads_is_reproducible() {
        let a = sample(2, &mut ConstantCoins(true));
        let b = sample(2, &mut ConstantCoins(true));
        assert_eq!(a, b);
        a.validate(&Region::full(2)).unwrap();
        assert_eq!(
            sample(5, &mut CoinSource::new(9)),
            sample(5, &mut CoinSource::new(9))
        );
    }

    #[test]
    fn steps_stay_valid() {
        for seed in 0..20 {
            let mut coins = CoinSource::new(seed);
            let mut state = ShuffleState::empty();
            for n in 1..=8 {
                state = shuffle_step(&state, &mut coins).unwrap();
                assert_eq!(state.order(), n);
                state.tiling().validate(&Region::full(n)).unwrap();
            }
        }
    }

    #[test]
    fn invalid_input_rejected() {
        let bad = Tiling::new(
            1,
            vec![Domino::new(Cell::new(-1, -1), Cell::new(0, -1)).unwrap()],
        );
        assert!(ShuffleState::new(bad).is_err());
    }

    #[test]
    fn coin_bits_are_lsb_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let word = rng.next_u64();
        let mut coins = CoinSource::new(5);
        for k in 0..64 {
            assert_eq!(coins.flip(), (word >> k) & 1 == 1);
        }
    }

    #[test]
    fn mc_rejects_bad_cells() {
        assert!(mc_estimate(3, Cell::new(0, 0), Cell::new(1, 1), 10, 0).is_err());
        assert!(mc_estimate(1, Cell::new(0, 0), Cell::new(1, 0), 10, 0).is_err());
    }

    #[test]
    fn svg_has_one_rect_per_domino() {
        let t = sample(3, &mut CoinSource::new(1));
        let svg = render_svg(&t, 10);
        assert_eq!(svg.matches("<rect").count(), t.dominoes().len());
    }
}
