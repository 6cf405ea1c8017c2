//! Batch identity checks, grouped into suites.
//!
//! Every check recomputes its values from scratch and reports a single
//! pass/fail line with a short detail string.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holes::{ciucu_count, hole_count, hole_symbolic, HoleSpec};
use crate::kravchuk::{
    binomial, growth_g, krav_by_expansion, krav_eval, krav_symmetry_factor, GrowthKey,
};
use crate::placement::{
    asymptotic_prob, cr_symbolic, creation_rate, f_symbolic, prefactor, prob_general, prob_numeric,
    Alpha, Position,
};
use crate::ratfunc::RationalFunction;
use crate::region::{count_tilings, diamond_cells, enumerate_tilings, kuo_check, Cell, Region};
use crate::shuffle::{mc_estimate, sample, shuffle_step, CoinSource, ShuffleState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kravchuk,
    Placement,
    Oracle,
    Shuffle,
    Holes,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Kravchuk,
        Suite::Placement,
        Suite::Oracle,
        Suite::Shuffle,
        Suite::Holes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kravchuk => "kravchuk",
            Suite::Placement => "placement",
            Suite::Oracle => "oracle",
            Suite::Shuffle => "shuffle",
            Suite::Holes => "holes",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{mark} {}/{}: {}", self.suite, self.name, self.detail)
    }
}

type Outcome = std::result::Result<String, String>;

fn check(suite: Suite, name: &'static str, body: impl FnOnce() -> Outcome) -> Check {
    let (passed, detail) = match body() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        suite,
        name,
        passed,
        detail,
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn al(v: u8) -> Alpha {
    Alpha::new(i64::from(v)).expect("alpha in range")
}

fn rf(s: &str) -> RationalFunction {
    s.parse().expect("literal parses")
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Kravchuk => kravchuk_suite(),
        Suite::Placement => placement_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::Shuffle => shuffle_suite(),
        Suite::Holes => holes_suite(),
        Suite::All => Suite::EACH.into_iter().flat_map(run).collect(),
    }
}

/// The twelve tabulated growth functions `g_{a,b,α}` for
/// `(a, b) ∈ {(0,0), (1,0), (1,1)}`.
pub fn growth_table() -> Vec<(GrowthKey, RationalFunction)> {
    let rows: [((i64, i64), [&str; 4]); 3] = [
        ((0, 0), ["1", "2", "2", "2/(p+1)"]),
        ((1, 0), ["-1", "0", "2", "4"]),
        ((1, 1), ["(3-2*p)/(-1+2*p)", "-2", "-2", "0"]),
    ];
    rows.iter()
        .flat_map(|&((a, b), cols)| {
            (0..4u8).map(move |v| (GrowthKey::new(a, b, al(v)), rf(cols[usize::from(v)])))
        })
        .collect()
}

/// The worked values `f_{l,m,α}(p)`.
pub fn f_examples() -> Vec<((i64, i64, u8), RationalFunction)> {
    [
        ((0, 0, 1), "2"),
        ((1, 1, 1), "2"),
        ((2, 0, 1), "2"),
        ((1, -1, 1), "-2"),
        ((0, -2, 1), "-2"),
        ((0, 0, 3), "0"),
        ((1, -1, 3), "0"),
        ((0, -1, 2), "0"),
        ((1, 0, 2), "0"),
        ((0, -2, 3), "-4*(1+2*p)^2/(1+p)^2"),
        ((3, 1, 3), "8*(1+2*p)/(1+p)"),
        ((0, -4, 1), "-2*(5+6*p+3*p^2)/(1+p)^2"),
        ((0, -1, 0), "-1"),
        ((2, 3, 2), "4*(-1+6*p+8*p^2)/((1+p)*(-1+2*p))"),
        ((4, -3, 0), "(1-3*p-6*p^2)/((1+p)*(-1+2*p))"),
        (
            (7, 6, 0),
            "(-90 + 441*p + 756*p^2 - 497*p^3 - 462*p^4 + 84*p^5 + 56*p^6)\
             /((1+p)*(2+p)*(3+p)*(-5+2*p)*(-3+2*p)*(-1+2*p))",
        ),
    ]
    .into_iter()
    .map(|(k, s)| (k, rf(s)))
    .collect()
}

fn growth_rhs(key: GrowthKey, p: i64) -> std::result::Result<BigRational, String> {
    let g = growth_g(key).eval_int(p).map_err(|e| e.to_string())?;
    let sign = if p % 2 == 0 { 1 } else { -1 };
    Ok(BigRational::from_integer(binomial(2 * p - 1, p) * sign) * g)
}

fn growth_lhs(key: GrowthKey, p: i64) -> BigRational {
    let n = 4 * p + key.alpha.as_i64() - 1;
    BigRational::from_integer(krav_eval(key.a + 2 * p, key.b + 2 * p, n as u32))
}

fn kravchuk_suite() -> Vec<Check> {
    let s = Suite::Kravchuk;
    vec![
        check(s, "sum-vs-expansion", || {
            for n in 0..=14u32 {
                for a in 0..=i64::from(n) {
                    for b in 0..=i64::from(n) {
                        if krav_eval(a, b, n) != krav_by_expansion(a, b, n) {
                            return Err(format!("K({a},{b};{n}) disagrees"));
                        }
                    }
                }
            }
            Ok("n <= 14".into())
        }),
        check(s, "table-entries", || {
            for (key, expected) in growth_table() {
                let got = growth_g(key);
                if got != expected {
                    return Err(format!("g({},{},{}) = {got}", key.a, key.b, key.alpha));
                }
            }
            Ok("12 entries".into())
        }),
        check(s, "table-growth-identity", || {
            for (key, _) in growth_table() {
                for p in 1..=6 {
                    if growth_lhs(key, p) != growth_rhs(key, p)? {
                        return Err(format!("({},{},{}) at p = {p}", key.a, key.b, key.alpha));
                    }
                }
            }
            Ok("12 keys, p = 1..6".into())
        }),
        check(s, "growth-identity", || {
            let mut count = 0;
            for alpha in Alpha::ALL {
                for a in -6..=6 {
                    for b in -6..=6 {
                        let key = GrowthKey::new(a, b, alpha);
                        for p in key.min_p().max(2)..=8 {
                            if growth_lhs(key, p) != growth_rhs(key, p)? {
                                return Err(format!("({a},{b},{alpha}) at p = {p}"));
                            }
                            count += 1;
                        }
                    }
                }
            }
            Ok(format!("{count} points with |a|,|b| <= 6, p <= 8"))
        }),
        check(s, "symmetry-factor", || {
            for alpha in Alpha::ALL {
                for a in -3..=3i64 {
                    for b in -3..=3i64 {
                        let sym = krav_symmetry_factor(a, b, alpha);
                        let lo = GrowthKey::new(a, b, alpha).min_p().max(2);
                        for p in lo..=6 {
                            let n = (4 * p + alpha.as_i64() - 1) as u32;
                            let kab = krav_eval(a + 2 * p, b + 2 * p, n);
                            let kba = krav_eval(b + 2 * p, a + 2 * p, n);
                            let s = sym.eval_int(p).map_err(|e| e.to_string())?;
                            if BigRational::from_integer(kba) != s * BigRational::from_integer(kab)
                            {
                                return Err(format!("({a},{b},{alpha}) at p = {p}"));
                            }
                        }
                    }
                }
            }
            Ok("|a|,|b| <= 3".into())
        }),
        check(s, "factorial-symmetry", || {
            let fact = |x: i64| binomial(x, x) * (1..=x).product::<BigInt>();
            for n in 0..=12u32 {
                let nn = i64::from(n);
                for a in 0..=nn {
                    for b in 0..=nn {
                        let lhs = fact(b) * fact(nn - b) * krav_eval(b, a, n);
                        let rhs = fact(a) * fact(nn - a) * krav_eval(a, b, n);
                        if lhs != rhs {
                            return Err(format!("({a},{b};{n})"));
                        }
                    }
                }
            }
            Ok("n <= 12".into())
        }),
        check(s, "three-term-recurrence", || {
            for n in 2..=12u32 {
                let nn = i64::from(n);
                for b in 0..=nn {
                    for a in 1..nn {
                        let lhs = krav_eval(a + 1, b, n) * (a + 1);
                        let rhs = krav_eval(a, b, n) * (nn - 2 * b)
                            - krav_eval(a - 1, b, n) * (nn - a + 1);
                        if lhs != rhs {
                            return Err(format!("({a},{b};{n})"));
                        }
                    }
                }
            }
            Ok("n <= 12".into())
        }),
    ]
}

fn placement_suite() -> Vec<Check> {
    let s = Suite::Placement;
    vec![
        check(s, "origin-values", || {
            for n in [3, 7, 11] {
                if *prob_numeric(0, 0, n).value() != q(1, 4) {
                    return Err(format!("P(0,0;{n}) != 1/4"));
                }
            }
            for (n, v) in [(5, q(5, 16)), (9, q(73, 256))] {
                if *prob_numeric(0, 0, n).value() != v {
                    return Err(format!("P(0,0;{n}) != {v}"));
                }
            }
            Ok("n = 3, 5, 7, 9, 11".into())
        }),
        check(s, "worked-examples", || {
            let cases = f_examples();
            for ((l, m, a), expected) in &cases {
                match f_symbolic(*l, *m, al(*a)).f {
                    Some(got) if got == *expected => {}
                    other => return Err(format!("f({l},{m},{a}) = {other:?}")),
                }
            }
            Ok(format!("{} values", cases.len()))
        }),
        check(s, "creation-rate-telescoping", || {
            for n in 1..=12u32 {
                for l in -6..=6 {
                    for m in -6..=6 {
                        let lhs = prob_numeric(l, m, n).into_inner()
                            - prob_numeric(l, m - 1, n - 1).into_inner();
                        if lhs != creation_rate(l, m, n) / BigInt::from(2) {
                            return Err(format!("({l},{m};{n})"));
                        }
                    }
                }
            }
            Ok("|l|,|m| <= 6, n <= 12".into())
        }),
        check(s, "reflection", || reflection_identity(2..=12)),
        check(s, "mirror-symmetry", || {
            for n in 1..=10 {
                for l in -5..=5 {
                    for m in -5..=5 {
                        if prob_numeric(l, m, n) != prob_numeric(-l, m, n) {
                            return Err(format!("({l},{m};{n})"));
                        }
                    }
                }
            }
            Ok("n <= 10".into())
        }),
        check(s, "parity-zeros", || {
            for n in 1..=10u32 {
                for l in -5..=5i64 {
                    for m in -5..=5i64 {
                        let black = (l + m - i64::from(n) - 1).rem_euclid(2) == 0;
                        if !black && !prob_numeric(l, m, n).value().is_zero() {
                            return Err(format!("({l},{m};{n}) is white-left"));
                        }
                    }
                }
            }
            Ok("n <= 10".into())
        }),
        check(s, "orientation-partition", || {
            for n in 1..=8u32 {
                for c in diamond_cells(n) {
                    let mut total = BigRational::zero();
                    for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                        let o = c.offset(di, dj);
                        if o.in_diamond(n) {
                            total += prob_general(c, o, n)
                                .map_err(|e| e.to_string())?
                                .into_inner();
                        }
                    }
                    if !total.is_one() {
                        return Err(format!("cell {c} in order {n}: {total}"));
                    }
                }
            }
            Ok("every cell, n <= 8".into())
        }),
        check(s, "symbolic-vs-numeric", || {
            let mut count = 0;
            for alpha in Alpha::ALL {
                for l in -5..=5i64 {
                    for m in -5..=5i64 {
                        let sym = f_symbolic(l, m, alpha);
                        for p in 2..=6u32 {
                            let n = 4 * p + u32::from(alpha.get());
                            if i64::from(n) < l.abs() + m.abs() + 2 {
                                continue;
                            }
                            let v = sym.probability_at(p).map_err(|e| e.to_string())?;
                            if v != prob_numeric(l, m, n).into_inner() {
                                return Err(format!("({l},{m}) alpha = {alpha} p = {p}"));
                            }
                            count += 1;
                        }
                    }
                }
            }
            Ok(format!("{count} points"))
        }),
        check(s, "cr-symbolic-vs-numeric", || {
            let mut count = 0;
            for alpha in Alpha::ALL {
                for l in -5..=5i64 {
                    for m in -5..=5i64 {
                        let h = cr_symbolic(l, m, alpha);
                        for p in 2..=6u32 {
                            let n = 4 * p + u32::from(alpha.get());
                            if i64::from(n) < l.abs() + m.abs() + 2 {
                                continue;
                            }
                            let closed = match &h {
                                None => BigRational::zero(),
                                Some(h) => {
                                    let v = h.eval_int(i64::from(p)).map_err(|e| e.to_string())?;
                                    prefactor(p, alpha) * v * BigInt::from(2)
                                }
                            };
                            if closed != creation_rate(l, m, n) {
                                return Err(format!("({l},{m}) alpha = {alpha} p = {p}"));
                            }
                            count += 1;
                        }
                    }
                }
            }
            Ok(format!("{count} points"))
        }),
        check(s, "approach-to-quarter", || {
            for alpha in [al(1), al(3)] {
                let gap = |p: u32| {
                    let n = 4 * p + u32::from(alpha.get());
                    let d = prob_numeric(0, 0, n).into_inner() - q(1, 4);
                    if d < BigRational::zero() {
                        -d
                    } else {
                        d
                    }
                };
                for p in 4..=8 {
                    if gap(p) > gap(p - 1) {
                        return Err(format!("alpha = {alpha}, p = {p}"));
                    }
                }
            }
            Ok("origin, p = 3..8".into())
        }),
        check(s, "asymptotic-density", asymptotic_grid),
    ]
}

/// `asymptotic_prob` on a 101×101 grid over `[−1, 1]²`: frozen outside the
/// circle, strictly between 0 and 1 inside, symmetric in `x`, above 1/2
/// exactly when `y > 1/2`, and inverting to `2y − 1` through the arctangent.
pub fn asymptotic_grid() -> Outcome {
    if (asymptotic_prob(0.0, 0.0) - 0.25).abs() > 4.0 * f64::EPSILON {
        return Err(format!("P(0,0) = {}", asymptotic_prob(0.0, 0.0)));
    }
    let coord = |k: i32| -1.0 + 2.0 * f64::from(k) / 100.0;
    let mut inside = 0;
    for i in 0..=100 {
        for j in 0..=100 {
            let (x, y) = (coord(i), coord(j));
            let v = asymptotic_prob(x, y);
            if x * x + y * y >= 0.5 {
                let want = if y < 0.5 { 0.0 } else { 1.0 };
                if v != want {
                    return Err(format!("({x}, {y}) outside: {v}"));
                }
                continue;
            }
            inside += 1;
            if !(0.0 < v && v < 1.0) {
                return Err(format!("({x}, {y}) inside: {v}"));
            }
            if (v - asymptotic_prob(-x, y)).abs() > 1e-12 {
                return Err(format!("({x}, {y}) not mirror symmetric"));
            }
            let back =
                (std::f64::consts::PI * (v - 0.5)).tan() * (1.0 - 2.0 * (x * x + y * y)).sqrt();
            if (back - (2.0 * y - 1.0)).abs() > 1e-6 * (1.0 + back.abs()) {
                return Err(format!("({x}, {y}) does not invert"));
            }
            if (y - 0.5).abs() < 1e-12 && (v - 0.5).abs() > 1e-12 {
                return Err(format!("({x}, {y}) off 1/2 on y = 1/2"));
            }
            if (v > 0.5) != (y > 0.5) && (y - 0.5).abs() > 1e-12 {
                return Err(format!("({x}, {y}) on the wrong side of 1/2"));
            }
        }
    }
    Ok(format!("101x101 grid, {inside} interior points"))
}

/// The two dominoes that cover the cell right of the origin from the east
/// and from the south always carry total probability 1/2. For even `n` both
/// are black-left and the statement reads
/// `P(1, 0; n) + P(0, −1; n) = 1/2`; for odd `n` both are white-left, so
/// `prob_numeric` is 0 by parity and the sum is taken orientation-free.
pub fn reflection_identity(orders: impl IntoIterator<Item = u32>) -> Outcome {
    let half = q(1, 2);
    for n in orders {
        let general = [Position::new(1, 0), Position::new(0, -1)]
            .into_iter()
            .map(|pos| {
                let (a, b) = pos.cells();
                prob_general(a, b, n).map(|p| p.into_inner())
            })
            .sum::<Result<BigRational>>()
            .map_err(|e| e.to_string())?;
        if general != half {
            return Err(format!("n = {n}: {general} orientation-free"));
        }
        let numeric = prob_numeric(1, 0, n).into_inner() + prob_numeric(0, -1, n).into_inner();
        let want = if n % 2 == 0 {
            half.clone()
        } else {
            BigRational::zero()
        };
        if numeric != want {
            return Err(format!("n = {n}: P(1,0) + P(0,-1) = {numeric}"));
        }
    }
    Ok("1/2 for every order, black-left form for even orders".into())
}

fn oracle_suite() -> Vec<Check> {
    let s = Suite::Oracle;
    vec![
        check(s, "aztec-count", || {
            for n in 1..=8u32 {
                let got = count_tilings(&Region::full(n)).map_err(|e| e.to_string())?;
                if got != BigUint::one() << (n * (n + 1) / 2) {
                    return Err(format!("n = {n}: {got}"));
                }
            }
            Ok("n = 1..8".into())
        }),
        check(s, "placement-vs-oracle", || {
            for n in 1..=7u32 {
                let full = BigRational::from_integer(
                    count_tilings(&Region::full(n))
                        .map_err(|e| e.to_string())?
                        .into(),
                );
                let cells = diamond_cells(n);
                for &a in &cells {
                    for b in [a.offset(1, 0), a.offset(0, 1)] {
                        if !b.in_diamond(n) {
                            continue;
                        }
                        let holed = Region::full(n).without([a, b]).map_err(|e| e.to_string())?;
                        let cnt = count_tilings(&holed).map_err(|e| e.to_string())?;
                        let oracle = BigRational::from_integer(cnt.into()) / &full;
                        let exact = prob_general(a, b, n).map_err(|e| e.to_string())?;
                        if oracle != exact.into_inner() {
                            return Err(format!("domino {a}-{b} in order {n}"));
                        }
                    }
                }
            }
            Ok("every domino, n <= 7".into())
        }),
        check(s, "enumeration-vs-count", || {
            for n in 1..=4u32 {
                let tilings =
                    enumerate_tilings(&Region::full(n), 1 << 12).map_err(|e| e.to_string())?;
                if BigUint::from(tilings.len()) != BigUint::one() << (n * (n + 1) / 2) {
                    return Err(format!("n = {n}: {} tilings", tilings.len()));
                }
            }
            Ok("n <= 4".into())
        }),
        check(s, "symmetry-invariance", || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..20 {
                let region = random_region(&mut rng, 5);
                let base = count_tilings(&region).map_err(|e| e.to_string())?;
                for image in [
                    region.map(Cell::reflect),
                    region.map(Cell::rotate90),
                    region.map(Cell::rotate180),
                ] {
                    if count_tilings(&image).map_err(|e| e.to_string())? != base {
                        return Err(format!("region {}", region.to_json()));
                    }
                }
            }
            Ok("20 random regions".into())
        }),
        check(s, "colour-balance", || {
            for n in 1..=5u32 {
                let cells = diamond_cells(n);
                for (k, &a) in cells.iter().enumerate() {
                    for &b in &cells[k + 1..] {
                        if a.is_black(n) != b.is_black(n) {
                            continue;
                        }
                        let region = Region::full(n).without([a, b]).map_err(|e| e.to_string())?;
                        if region.balance() == 0 {
                            return Err(format!("{a}, {b} removed in order {n} looks balanced"));
                        }
                        if !count_tilings(&region).map_err(|e| e.to_string())?.is_zero() {
                            return Err(format!("{a}, {b} removed in order {n} has tilings"));
                        }
                    }
                }
            }
            Ok("same-colour pairs removed, n <= 5".into())
        }),
        check(s, "kuo-condensation", || kuo_instances(50, 0x006b_756f)),
    ]
}

fn pick(rng: &mut ChaCha8Rng, len: usize) -> usize {
    (rng.next_u64() % len as u64) as usize
}

/// The full diamond of a random order in `2..=max_n` with a random domino's
/// worth of cells removed.
fn random_region(rng: &mut ChaCha8Rng, max_n: u32) -> Region {
    let n = 2 + (rng.next_u64() % u64::from(max_n - 1)) as u32;
    let cells = diamond_cells(n);
    let c = cells[pick(rng, cells.len())];
    let nbrs: Vec<Cell> = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .into_iter()
        .map(|(di, dj)| c.offset(di, dj))
        .filter(|o| o.in_diamond(n))
        .collect();
    let o = nbrs[pick(rng, nbrs.len())];
    Region::full(n)
        .without([c, o])
        .expect("cells lie in the diamond")
}

/// Kuo condensation on `count` random 2×2 blocks inside random regions of
/// order at most 6.
pub fn kuo_instances(count: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let region = if rng.next_u64() % 2 == 0 {
            let n = 2 + (rng.next_u64() % 5) as u32;
            Region::full(n)
        } else {
            random_region(&mut rng, 6)
        };
        let cells: Vec<Cell> = diamond_cells(region.order())
            .into_iter()
            .filter(|&c| region.contains(c))
            .collect();
        let base = cells[pick(&mut rng, cells.len())];
        let block = [
            base.offset(0, 1),
            base.offset(1, 1),
            base.offset(1, 0),
            base,
        ];
        if !block.iter().all(|&c| region.contains(c)) {
            continue;
        }
        let ok = kuo_check(&region, block[0], block[1], block[2], block[3])
            .map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!("block at {base} in {}", region.to_json()));
        }
        done += 1;
    }
    Ok(format!("{count} instances"))
}

/// Chi-square statistic of `samples` shuffled order-`n` tilings against the
/// uniform law on all tilings, with the number of tilings.
pub fn chi_square(n: u32, samples: u64, seed: u64) -> std::result::Result<(f64, usize), String> {
    let all = enumerate_tilings(&Region::full(n), 1 << 12).map_err(|e| e.to_string())?;
    let index: HashMap<_, usize> = all
        .iter()
        .cloned()
        .enumerate()
        .map(|(k, t)| (t, k))
        .collect();
    let mut counts = vec![0u64; all.len()];
    for k in 0..samples {
        let t = sample(n, &mut CoinSource::with_stream(seed, k));
        let slot = index
            .get(&t)
            .ok_or_else(|| format!("sample {k} is not a tiling of order {n}"))?;
        counts[*slot] += 1;
    }
    let expected = samples as f64 / all.len() as f64;
    let stat = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    Ok((stat, all.len()))
}

/// Upper 10⁻³ quantile of the chi-square law with `k` degrees of freedom,
/// for the two cases used here.
pub fn chi_square_critical(dof: usize) -> Option<f64> {
    match dof {
        7 => Some(24.322),
        63 => Some(103.442),
        _ => None,
    }
}

/// Chi-square test of the order-`n` sampler at level 10⁻³.
pub fn uniformity(n: u32, samples: u64, seed: u64) -> Outcome {
    let (stat, cells) = chi_square(n, samples, seed)?;
    let crit = chi_square_critical(cells - 1).ok_or("no tabulated quantile")?;
    let detail = format!("order {n}: statistic {stat:.2} vs critical {crit}, {cells} tilings");
    if stat < crit {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Monte Carlo frequencies of `count` random dominoes in order 8 against the
/// exact probabilities. Returns `(within 4σ, total)`.
pub fn mc_agreement(
    count: usize,
    samples: u64,
    seed: u64,
) -> std::result::Result<(usize, usize), String> {
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = diamond_cells(n);
    let mut good = 0;
    let mut total = 0;
    while total < count {
        let c = cells[pick(&mut rng, cells.len())];
        let (di, dj) = [(1, 0), (0, 1)][pick(&mut rng, 2)];
        let o = c.offset(di, dj);
        if !o.in_diamond(n) {
            continue;
        }
        let exact = prob_general(c, o, n).map_err(|e| e.to_string())?.to_f64();
        let est = mc_estimate(n, c, o, samples, seed.wrapping_add(total as u64))
            .map_err(|e| e.to_string())?;
        let sigma = (exact * (1.0 - exact) / samples as f64).sqrt();
        if (est.frequency - exact).abs() <= 4.0 * sigma {
            good += 1;
        }
        total += 1;
    }
    Ok((good, total))
}

fn shuffle_suite() -> Vec<Check> {
    let s = Suite::Shuffle;
    vec![
        check(s, "valid-after-each-step", || {
            for seed in 0..100 {
                let mut coins = CoinSource::new(seed);
                let mut state = ShuffleState::empty();
                for _ in 0..10 {
                    state = shuffle_step(&state, &mut coins).map_err(|e| e.to_string())?;
                    let n = state.order();
                    state
                        .tiling()
                        .validate(&Region::full(n))
                        .map_err(|e| format!("order {n}, seed {seed}: {e}"))?;
                }
            }
            Ok("orders 1..10, 100 seeds".into())
        }),
        check(s, "deterministic", || {
            let a = sample(12, &mut CoinSource::new(99));
            let b = sample(12, &mut CoinSource::new(99));
            if a == b {
                Ok("same seed, same tiling".into())
            } else {
                Err("two runs with seed 99 differ".into())
            }
        }),
        check(s, "chi-square-order-2", || uniformity(2, 8_000, 2023)),
        check(s, "chi-square-order-3", || uniformity(3, 100_000, 2024)),
        check(s, "monte-carlo-order-8", || mc_order8(50_000, 31)),
    ]
}

/// At least 9 of 10 random order-8 dominoes within 4 stderr; a failed round
/// is repeated once with a fresh seed.
pub fn mc_order8(samples: u64, seed: u64) -> Outcome {
    let mut details = Vec::new();
    for round in 0..2 {
        let (good, total) = mc_agreement(10, samples, seed + 1000 * round)?;
        details.push(format!("{good}/{total} within 4 stderr"));
        if good >= 9 {
            return Ok(details.join(", then "));
        }
    }
    Err(details.join(", then "))
}

fn holes_suite() -> Vec<Check> {
    let s = Suite::Holes;
    vec![
        check(s, "ciucu-constants", || {
            for (n, e) in [(2u32, 0u32), (3, 3), (6, 18), (7, 25)] {
                let want = BigUint::one() << e;
                let spec = HoleSpec::new(0, 0, n).map_err(|e| e.to_string())?;
                let closed = hole_count(&spec).map_err(|e| e.to_string())?;
                let oracle = holed_count(&spec)?;
                let ciucu = ciucu_count(n).map_err(|e| e.to_string())?;
                if closed != want || oracle != want || ciucu != want {
                    return Err(format!("n = {n}: {closed}, {oracle}, {ciucu}"));
                }
            }
            Ok("orders 2, 3, 6, 7".into())
        }),
        check(s, "central-hole", || {
            let mut parts = Vec::new();
            for n in 2..=9u32 {
                let spec = HoleSpec::new(0, 0, n).map_err(|e| e.to_string())?;
                let closed = hole_count(&spec).map_err(|e| e.to_string())?;
                let oracle = holed_count(&spec)?;
                if closed != oracle {
                    return Err(format!("n = {n}: {closed} vs oracle {oracle}"));
                }
                parts.push(format!("{n}:{closed}"));
            }
            Ok(parts.join(" "))
        }),
        check(s, "every-hole-centre", || {
            let mut count = 0;
            for n in 1..=7u32 {
                let r = i64::from(n);
                for l in -r..=r {
                    for m in -r..=r {
                        let Ok(spec) = HoleSpec::new(l, m, n) else {
                            continue;
                        };
                        let closed = hole_count(&spec).map_err(|e| e.to_string())?;
                        if closed != holed_count(&spec)? {
                            return Err(format!("({l},{m}) in order {n}"));
                        }
                        count += 1;
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            let mut random = 0;
            while random < 20 {
                let l = (rng.next_u64() % 17) as i64 - 8;
                let m = (rng.next_u64() % 17) as i64 - 8;
                let Ok(spec) = HoleSpec::new(l, m, 8) else {
                    continue;
                };
                let closed = hole_count(&spec).map_err(|e| e.to_string())?;
                if closed != holed_count(&spec)? {
                    return Err(format!("({l},{m}) in order 8"));
                }
                random += 1;
            }
            Ok(format!("{count} holes for n <= 7, 20 random for n = 8"))
        }),
        check(s, "symbolic-hole-counts", || {
            let mut count = 0;
            for alpha in Alpha::ALL {
                for l in -2..=2 {
                    for m in -2..=2 {
                        let sym = match hole_symbolic(l, m, alpha) {
                            Ok(s) => s,
                            Err(Error::DegenerateHole(_)) => continue,
                            Err(e) => return Err(e.to_string()),
                        };
                        for p in sym.p_min()..=3 {
                            let n = 4 * p + u32::from(alpha.get());
                            let spec = HoleSpec::new(l, m, n).map_err(|e| e.to_string())?;
                            let exact = hole_count(&spec).map_err(|e| e.to_string())?;
                            let closed = sym.count_at(p).map_err(|e| e.to_string())?;
                            if closed != BigRational::from_integer(exact.into()) {
                                return Err(format!("({l},{m}) alpha = {alpha} p = {p}"));
                            }
                            count += 1;
                        }
                    }
                }
            }
            Ok(format!("{count} points"))
        }),
    ]
}

fn holed_count(spec: &HoleSpec) -> std::result::Result<BigUint, String> {
    let region = Region::full(spec.order)
        .without(spec.cells())
        .map_err(|e| e.to_string())?;
    count_tilings(&region).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        for c in run(Suite::Kravchuk) {
            assert!(c.passed, "{c}");
        }
    }
}
